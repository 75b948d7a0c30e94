//! Construction and exact verification of networks that stay connected
//! after any `N_f` node failures.
//!
//! The crate is organised as follows:
//!
//! * [`graph`]: append-only simple graphs and the ring order used to
//!   define neighbour-distance wiring.
//! * [`verify`]: exact robustness checks (subset enumeration and
//!   vertex connectivity via node-split max-flow) plus the structural side
//!   conditions the constructions rely on.
//! * [`construct`]: static optimal networks (circulant, two-halves and
//!   2m-set builds) and the reference adjacency fixtures.
//! * [`growth`]: online builders that only ever add links and emit a
//!   replayable growth trace.
//! * [`export`]: canonical JSON, DOT and JSONL serialization.

pub mod construct;
pub mod error;
pub mod export;
pub mod factor;
pub mod graph;
pub mod growth;
pub mod verify;

pub use construct::{
    build_circulant, build_cycle, build_halves_f, build_halves_f1, build_msets, circulant_on_ring,
    fixture_matrix, optimal_links, StaticMethod, StaticSpec,
};
pub use error::{Error, Result};
pub use factor::Factor;
pub use graph::{Graph, NodeId, RingOrder};
pub use growth::{
    contains_static_circulant, reconcile_ring, savings_ratio, GrowthBuilder, GrowthTrace, InsertionStrategy,
    RobustnessPolicy, TraceEvent,
};
pub use verify::{
    check_link_constraint, half_expansion_check, is_connected, is_robust, robust_brute_force,
    robust_by_connectivity, vertex_connectivity, ExpansionReport, Method, VerificationReport, VerifyOptions,
    DEFAULT_BUDGET,
};
