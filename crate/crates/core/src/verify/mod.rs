//! Exact robustness verification.
//!
//! A graph is `N_f`-robust when it stays connected after removing any `N_f`
//! of its nodes. Residual graphs with at most one node count as connected,
//! so every graph is trivially robust for `N_f >= N - 1`. For
//! `N_f <= N - 2` robustness is equivalent to `κ >= N_f + 1`, which gives
//! two independent routes: subset enumeration and node-split max-flow.

mod brute;
mod kappa;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub use brute::{binomial, lex_rank};
pub use kappa::connectivity_with_cut;

/// Default cap on the number of subsets enumerated by brute force.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: u64,
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BruteForce,
    VertexConnectivity,
    MinDegreeShortcut,
}

/// Outcome of a robustness check. `witness` is present exactly when
/// `robust` is false and always disconnects the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub robust: bool,
    pub nf: usize,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<NodeId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked_subsets: Option<u128>,
}

/// Reusable BFS buffers for repeated masked connectivity checks.
pub(crate) struct Scratch {
    blocked: Vec<bool>,
    seen: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Scratch {
            blocked: vec![false; n],
            seen: vec![false; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    pub(crate) fn connected_without(&mut self, g: &Graph, removed: &[usize]) -> bool {
        let n = g.node_count();
        self.blocked.fill(false);
        self.seen.fill(false);
        let mut alive = n;
        for &r in removed {
            if r < n && !self.blocked[r] {
                self.blocked[r] = true;
                alive -= 1;
            }
        }
        if alive <= 1 {
            return true;
        }
        let start = (0..n).find(|&v| !self.blocked[v]).expect("alive node");
        self.seen[start] = true;
        self.queue.clear();
        self.queue.push_back(start);
        let mut reached = 1;
        while let Some(x) = self.queue.pop_front() {
            for &y in g.adj(x) {
                let y = y.0;
                if !self.blocked[y] && !self.seen[y] {
                    self.seen[y] = true;
                    reached += 1;
                    self.queue.push_back(y);
                }
            }
        }
        reached == alive
    }
}

/// True iff the subgraph induced on the nodes outside `removed` is
/// connected. Empty and single-node residuals are connected.
pub fn is_connected(g: &Graph, removed: &[NodeId]) -> bool {
    let removed: Vec<usize> = removed.iter().map(|u| u.0).collect();
    Scratch::new(g.node_count()).connected_without(g, &removed)
}

/// Decides robustness by enumerating every `nf`-subset in lexicographic
/// order. The witness is the first disconnecting subset.
pub fn robust_brute_force(g: &Graph, nf: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = g.node_count();
    let total = binomial(n, nf);
    if nf + 1 >= n {
        return Ok(VerificationReport {
            robust: true,
            nf,
            method: Method::BruteForce,
            kappa: None,
            witness: None,
            checked_subsets: Some(total),
        });
    }
    if total > opts.budget as u128 {
        return Err(Error::ResourceLimit {
            needed: total,
            budget: opts.budget,
        });
    }
    let failure = brute::first_failure(g, nf, opts.jobs);
    Ok(match failure {
        None => VerificationReport {
            robust: true,
            nf,
            method: Method::BruteForce,
            kappa: None,
            witness: None,
            checked_subsets: Some(total),
        },
        Some(w) => {
            let idx: Vec<usize> = w.iter().map(|u| u.0).collect();
            VerificationReport {
                robust: false,
                nf,
                method: Method::BruteForce,
                kappa: None,
                witness: Some(w),
                checked_subsets: Some(lex_rank(&idx, n) + 1),
            }
        }
    })
}

/// Exact node connectivity `κ`. Complete graphs give `N - 1`, disconnected
/// graphs and graphs with fewer than two nodes give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    connectivity_with_cut(g).0
}

/// Robustness at `nf`, choosing the cheapest exact method: the minimum
/// degree shortcut, then enumeration within budget, then `κ >= nf + 1`.
pub fn is_robust(g: &Graph, nf: usize, opts: &VerifyOptions) -> VerificationReport {
    let n = g.node_count();
    if nf + 1 >= n {
        return robust_brute_force(g, nf, opts).expect("trivial case never enumerates");
    }
    // Removing the whole neighbourhood of a low-degree node isolates it.
    if let Some((u, d)) = g.min_degree() {
        if d <= nf {
            return VerificationReport {
                robust: false,
                nf,
                method: Method::MinDegreeShortcut,
                kappa: None,
                witness: Some(g.adj(u.0).iter().copied().collect()),
                checked_subsets: None,
            };
        }
    }
    if binomial(n, nf) <= opts.budget as u128 {
        return robust_brute_force(g, nf, opts).expect("within budget");
    }
    robust_by_connectivity(g, nf)
}

/// Decides robustness from the vertex connectivity alone; the witness is a
/// minimum cut when the check fails.
pub fn robust_by_connectivity(g: &Graph, nf: usize) -> VerificationReport {
    let (kappa, cut) = connectivity_with_cut(g);
    let robust = kappa > nf || nf + 1 >= g.node_count();
    VerificationReport {
        robust,
        nf,
        method: Method::VertexConnectivity,
        kappa: Some(kappa),
        witness: if robust { None } else { cut },
        checked_subsets: None,
    }
}

/// Result of [`half_expansion_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub ok: bool,
    /// Number of subsets examined (both directions).
    pub checks: u128,
    /// First subset whose cross-neighbourhood failed to expand.
    pub violation: Option<Vec<NodeId>>,
}

/// Checks that every non-empty `S` in one half with `|S| < limit` has more
/// than `|S|` neighbours in the other half, in both directions.
pub fn half_expansion_check(
    g: &Graph,
    half_a: &[NodeId],
    half_b: &[NodeId],
    limit: usize,
    budget: u64,
) -> Result<ExpansionReport> {
    let n = g.node_count();
    if half_a.len() != half_b.len() || half_a.len() + half_b.len() != n {
        return Err(Error::invalid("halves must be equal-sized and cover every node"));
    }
    let mut side = vec![None; n];
    for (k, half) in [half_a, half_b].into_iter().enumerate() {
        for &u in half {
            if u.0 >= n || side[u.0].is_some() {
                return Err(Error::invalid("halves must partition the node set"));
            }
            side[u.0] = Some(k);
        }
    }
    let h = half_a.len();
    let max_size = limit.saturating_sub(1).min(h);
    let needed: u128 = 2 * (1..=max_size).map(|k| binomial(h, k)).sum::<u128>();
    if needed > budget as u128 {
        return Err(Error::ResourceLimit { needed, budget });
    }

    let mut checks = 0u128;
    for (from, to) in [(half_a, half_b), (half_b, half_a)] {
        let index_in_to: std::collections::HashMap<NodeId, usize> =
            to.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let words = h.div_ceil(64);
        let masks: Vec<Vec<u64>> = from
            .iter()
            .map(|&u| {
                let mut m = vec![0u64; words];
                for v in g.adj(u.0) {
                    if let Some(&i) = index_in_to.get(v) {
                        m[i / 64] |= 1 << (i % 64);
                    }
                }
                m
            })
            .collect();
        let mut union = vec![0u64; words];
        for size in 1..=max_size {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                checks += 1;
                union.fill(0);
                for &c in &combo {
                    for (w, m) in union.iter_mut().zip(&masks[c]) {
                        *w |= m;
                    }
                }
                let reach: u32 = union.iter().map(|w| w.count_ones()).sum();
                if reach as usize <= size {
                    return Ok(ExpansionReport {
                        ok: false,
                        checks,
                        violation: Some(combo.iter().map(|&c| from[c]).collect()),
                    });
                }
                if !brute::next_combination(&mut combo, h) {
                    break;
                }
            }
        }
    }
    Ok(ExpansionReport {
        ok: true,
        checks,
        violation: None,
    })
}

/// Link constraint `L <= N^2/4 + N - 2`.
pub fn check_link_constraint(g: &Graph) -> bool {
    let n = g.node_count() as i128;
    4 * g.link_count() as i128 <= n * n + 4 * n - 8
}
