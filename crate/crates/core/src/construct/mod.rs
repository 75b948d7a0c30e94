//! Static network constructions with the minimal (or near-minimal) number
//! of links for a given robustness.
//!
//! All even-`N` builders here produce `(N_f + 1)`-regular graphs, which
//! meets the minimum-degree floor every `N_f`-robust graph must satisfy and
//! therefore certifies optimality of the link count.

mod fixtures;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::graph::{canonical, Graph, NodeId, RingOrder};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StaticMethod {
    Circulant,
    HalvesF1,
    HalvesF,
    Msets,
}

impl StaticMethod {
    pub fn name(self) -> &'static str {
        match self {
            StaticMethod::Circulant => "circulant",
            StaticMethod::HalvesF1 => "halves-f1",
            StaticMethod::HalvesF => "halves-f",
            StaticMethod::Msets => "msets",
        }
    }
}

impl fmt::Display for StaticMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StaticMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circulant" => Ok(StaticMethod::Circulant),
            "halves-f1" => Ok(StaticMethod::HalvesF1),
            "halves-f" => Ok(StaticMethod::HalvesF),
            "msets" => Ok(StaticMethod::Msets),
            other => Err(Error::invalid(format!("unknown static method '{other}'"))),
        }
    }
}

/// Parameters of a static build. `nf` may be left unset for methods that
/// determine it (`halves-f1`: `N/2`, `halves-f`: `N/(2f)`, `msets`: `N/(2m)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticSpec {
    pub n: usize,
    pub nf: Option<usize>,
    pub method: StaticMethod,
    pub f: Option<Factor>,
    pub m: Option<usize>,
}

impl StaticSpec {
    /// Checks the method's preconditions and returns the effective `N_f`.
    pub fn resolve_nf(&self) -> Result<usize> {
        let n = self.n;
        let nf = match self.method {
            StaticMethod::Circulant => self.nf.ok_or_else(|| Error::invalid("circulant needs --nf"))?,
            StaticMethod::HalvesF1 => {
                if let Some(nf) = self.nf.filter(|&nf| nf != n / 2) {
                    return Err(Error::invalid(format!(
                        "halves-f1 is robust at N/2 = {}, not {nf}",
                        n / 2
                    )));
                }
                n / 2
            }
            StaticMethod::HalvesF => {
                let from_f = match self.f {
                    Some(f) => {
                        if !f.is_greater_than_one() {
                            return Err(Error::invalid("halves-f needs f > 1"));
                        }
                        Some(f.exact_fraction(n, 2).ok_or_else(|| {
                            Error::invalid(format!("N/(2f) = {n}/(2*{f}) is not an integer"))
                        })?)
                    }
                    None => None,
                };
                match (from_f, self.nf) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(Error::invalid(format!("--nf {b} disagrees with N/(2f) = {a}")))
                    }
                    (Some(a), _) => a,
                    (None, Some(b)) => b,
                    (None, None) => return Err(Error::invalid("halves-f needs --f or --nf")),
                }
            }
            StaticMethod::Msets => {
                let m = self.m.ok_or_else(|| Error::invalid("msets needs --m"))?;
                if m < 2 || !n.is_multiple_of(2 * m) {
                    return Err(Error::invalid(format!(
                        "msets needs m > 1 and N divisible by 2m (N={n}, m={m})"
                    )));
                }
                let nf = n / (2 * m);
                if let Some(b) = self.nf.filter(|&b| b != nf) {
                    return Err(Error::invalid(format!("--nf {b} disagrees with N/(2m) = {nf}")));
                }
                nf
            }
        };
        if nf == 0 {
            return Err(Error::invalid("N_f must be at least 1"));
        }
        Ok(nf)
    }

    pub fn build(&self) -> Result<Graph> {
        let nf = self.resolve_nf()?;
        match self.method {
            StaticMethod::Circulant => build_circulant(self.n, nf),
            StaticMethod::HalvesF1 => build_halves_f1(self.n),
            StaticMethod::HalvesF => build_halves_f(self.n, nf),
            StaticMethod::Msets => build_msets(self.n, self.m.expect("checked")),
        }
    }
}

/// The `n`-cycle `0 - 1 - ... - (n-1) - 0` and its ring order.
pub fn build_cycle(n: usize) -> Result<(Graph, RingOrder)> {
    if n < 3 {
        return Err(Error::invalid(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?;
    Ok((g, RingOrder::identity(n)))
}

/// Edges of the circulant build for robustness `nf` laid out on `ring`.
///
/// With `t = nf + 1`: every member is joined to the ring neighbours within
/// `t/2` hops when `t` is even. When `t` is odd the reach is `(t-1)/2` plus
/// long links: all diametric pairs on an even ring, or on an odd ring a
/// clockwise sweep from position 0 where each member still lacking a link
/// `(r-1)/2` away gets the clockwise one. Exactly one member of an odd ring
/// ends up with `t + 1` links.
pub fn circulant_on_ring(ring: &[NodeId], nf: usize) -> Vec<(NodeId, NodeId)> {
    let r = ring.len();
    let t = nf + 1;
    let ring = RingOrder::new(ring.to_vec()).expect("distinct ring members");
    let mut edges = std::collections::BTreeSet::new();
    let reach = if t.is_multiple_of(2) { t / 2 } else { (t - 1) / 2 };
    for pos in 0..r {
        let u = ring.at(pos);
        for v in ring.neighbors_within_pos(pos, reach) {
            edges.insert(canonical(u, v));
        }
    }
    if t % 2 == 1 && r >= 2 {
        if r.is_multiple_of(2) {
            for pos in 0..r / 2 {
                edges.insert(canonical(ring.at(pos), ring.at(pos + r / 2)));
            }
        } else {
            let d = (r - 1) / 2;
            let mut has_long = vec![false; r];
            for pos in 0..r {
                if has_long[pos] {
                    continue;
                }
                let other = (pos + d) % r;
                edges.insert(canonical(ring.at(pos), ring.at(other)));
                has_long[pos] = true;
                has_long[other] = true;
            }
        }
    }
    edges.into_iter().collect()
}

/// Circulant network on `0..n` robust to `nf` failures; `(nf+1)`-regular
/// for even `n`.
pub fn build_circulant(n: usize, nf: usize) -> Result<Graph> {
    if nf == 0 || nf + 1 >= n {
        return Err(Error::invalid(format!(
            "circulant needs 1 <= N_f and N_f + 1 < N (N={n}, N_f={nf})"
        )));
    }
    let ring = RingOrder::identity(n);
    let mut g = Graph::new(n);
    for (u, v) in circulant_on_ring(ring.members(), nf) {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Two complete halves `A = 0..n/2`, `B = n/2..n` with cross links
/// `A_i - B_i` and `A_i - B_{(i+1) mod n/2}`. Robust at `n/2` with
/// `n^2/4 + n/2` links.
pub fn build_halves_f1(n: usize) -> Result<Graph> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::invalid(format!("halves-f1 needs even N >= 6, got {n}")));
    }
    let h = n / 2;
    let mut g = Graph::new(n);
    for base in [0, h] {
        for i in 0..h {
            for j in i + 1..h {
                g.add_edge(NodeId(base + i), NodeId(base + j))?;
            }
        }
    }
    for i in 0..h {
        g.add_edge(NodeId(i), NodeId(h + i))?;
        g.add_edge(NodeId(i), NodeId(h + (i + 1) % h))?;
    }
    Ok(g)
}

/// Two halves, each wired as a circulant robust to `nf - 1`, joined by the
/// matching `A_i - B_i`. When the halves carry an extra-degree node (odd half
/// size with odd `nf`) those two nodes are left unmatched, so every node
/// ends with degree exactly `nf + 1`.
pub fn build_halves_f(n: usize, nf: usize) -> Result<Graph> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::invalid(format!("halves-f needs even N >= 6, got {n}")));
    }
    let h = n / 2;
    if nf < 2 || nf + 1 > h {
        return Err(Error::invalid(format!(
            "halves-f needs 2 <= N_f < N/2 (N={n}, N_f={nf})"
        )));
    }
    let mut g = Graph::new(n);
    let ring: Vec<NodeId> = (0..h).map(NodeId).collect();
    for (u, v) in circulant_on_ring(&ring, nf - 1) {
        g.add_edge(u, v)?;
        g.add_edge(NodeId(u.0 + h), NodeId(v.0 + h))?;
    }
    for i in 0..h {
        if g.degree(NodeId(i))? == nf + 1 {
            continue;
        }
        g.add_edge(NodeId(i), NodeId(h + i))?;
    }
    Ok(g)
}

/// `2m` complete sets of `s = n/(2m)` nodes plus `s` transversal cycles of
/// length `2m`; cycle `c` visits member `c` of every set in set order.
pub fn build_msets(n: usize, m: usize) -> Result<Graph> {
    if m < 2 || !n.is_multiple_of(2 * m) || n / (2 * m) < 2 {
        return Err(Error::invalid(format!(
            "msets needs m > 1 and N divisible by 2m with N/(2m) >= 2 (N={n}, m={m})"
        )));
    }
    let sets = 2 * m;
    let s = n / sets;
    let node = |set: usize, member: usize| NodeId(set * s + member);
    let mut g = Graph::new(n);
    for set in 0..sets {
        for i in 0..s {
            for j in i + 1..s {
                g.add_edge(node(set, i), node(set, j))?;
            }
        }
    }
    for c in 0..s {
        for set in 0..sets {
            g.add_edge(node(set, c), node((set + 1) % sets, c))?;
        }
    }
    Ok(g)
}

/// Minimum link count of an `nf`-robust network on `n` nodes implied by the
/// degree floor, `ceil(n (nf + 1) / 2)`. For even `n` this equals the
/// optimum `n^2/4 + n/2 - n(n/2 - nf)/2`.
pub fn optimal_links(n: usize, nf: usize) -> usize {
    (n * (nf + 1)).div_ceil(2)
}

/// Reference matrices for the optimal `f = 1` network, `n` in {8, 10, 12}.
pub fn fixture_matrix(n: usize) -> Result<Graph> {
    let rows: &[&str] = match n {
        8 => &fixtures::OPT_F1_8,
        10 => &fixtures::OPT_F1_10,
        12 => &fixtures::OPT_F1_12,
        _ => return Err(Error::invalid(format!("no fixture for N={n}; use 8, 10 or 12"))),
    };
    let mut g = Graph::new(n);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.bytes().enumerate() {
            let mirrored = rows[j].as_bytes()[i];
            debug_assert_eq!(c, mirrored, "fixture must be symmetric");
            if c == b'1' && i < j {
                g.add_edge(NodeId(i), NodeId(j))?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests;
