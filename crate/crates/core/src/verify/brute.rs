//! Exhaustive removal-set enumeration in lexicographic order.

use rayon::prelude::*;

use super::Scratch;
use crate::graph::{Graph, NodeId};

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Zero-based position of a sorted `k`-subset of `0..n` in lexicographic order.
pub fn lex_rank(subset: &[usize], n: usize) -> u128 {
    let k = subset.len();
    let mut rank = 0u128;
    let mut prev = 0usize;
    for (i, &c) in subset.iter().enumerate() {
        for skipped in prev..c {
            rank += binomial(n - skipped - 1, k - i - 1);
        }
        prev = c + 1;
    }
    rank
}

/// Advances `combo` to the next `k`-subset of `0..n`; false when exhausted.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// First subset (lexicographically) among those whose smallest element is
/// `first`, whose removal disconnects `g`.
fn first_failure_with_head(g: &Graph, nf: usize, first: usize) -> Option<Vec<usize>> {
    let n = g.node_count();
    let mut scratch = Scratch::new(n);
    if nf == 1 {
        return (!scratch.connected_without(g, &[first])).then(|| vec![first]);
    }
    // tail ranges over (nf-1)-subsets of first+1..n
    let span = n - first - 1;
    let mut tail: Vec<usize> = (0..nf - 1).collect();
    let mut removed = vec![0usize; nf];
    removed[0] = first;
    loop {
        for (slot, &t) in removed[1..].iter_mut().zip(&tail) {
            *slot = first + 1 + t;
        }
        if !scratch.connected_without(g, &removed) {
            return Some(removed);
        }
        if !next_combination(&mut tail, span) {
            return None;
        }
    }
}

/// Lexicographically first disconnecting `nf`-subset, if any. Work is
/// partitioned by the subset's smallest element when `jobs > 1`; the merged
/// result is identical to a sequential scan.
pub fn first_failure(g: &Graph, nf: usize, jobs: usize) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    let to_ids = |v: Vec<usize>| v.into_iter().map(NodeId).collect::<Vec<_>>();
    if nf == 0 {
        let mut scratch = Scratch::new(n);
        return (!scratch.connected_without(g, &[])).then(Vec::new);
    }
    let heads = 0..=(n - nf);
    if jobs <= 1 {
        return heads
            .into_iter()
            .find_map(|h| first_failure_with_head(g, nf, h))
            .map(to_ids);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        heads
            .into_par_iter()
            .filter_map(|h| first_failure_with_head(g, nf, h))
            .min()
    })
    .map(to_ids)
}
