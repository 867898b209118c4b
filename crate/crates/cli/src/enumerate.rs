//! Exhaustive generation of small graphs with maximum degree 3, one
//! representative per isomorphism class.
//!
//! Graphs on n vertices are grown from the n-1 representatives by attaching
//! a fresh vertex to every subset of at most three vertices that still have
//! degree slack; deleting any vertex of an n-vertex graph lands back in the
//! n-1 classes, so the augmentation reaches every class. Deduplication is
//! by minimum adjacency bitstring over all vertex permutations, found by a
//! branch-and-bound prefix search.

use squarecheck_core::Graph;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration is limited to n <= 10, got {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumFilter {
    /// Drop graphs containing a 4-cycle or a 5-cycle.
    pub no_c4_c5: bool,
    /// Keep only planar graphs (decided by exhaustive rotation search).
    pub planar: bool,
}

/// Upper-triangle adjacency bits, minimized over all vertex permutations.
/// Equal keys mean isomorphic graphs; used for dedup and output order.
pub fn canonical_key(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 11, "key packs the upper triangle into 64 bits");
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search_key(g, n, &mut perm, &mut used, 0, &mut best);
    best
}

/// Extends the permutation one position at a time, keeping the bits fixed
/// so far; abandons any branch whose prefix already exceeds the best key.
fn search_key(
    g: &Graph,
    n: usize,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    prefix: u64,
    best: &mut u64,
) {
    let k = perm.len();
    if k == n {
        if prefix < *best {
            *best = prefix;
        }
        return;
    }
    // bits contributed by placing a vertex at position k: its adjacency to
    // positions 0..k, at bit offsets after the pairs among those positions
    let base_shift = k * (k.saturating_sub(1)) / 2;
    for v in 0..n {
        if used[v] {
            continue;
        }
        let mut bits = prefix;
        for (i, &u) in perm.iter().enumerate() {
            if g.has_edge(u, v) {
                bits |= 1u64 << (base_shift + i);
            }
        }
        // remaining pairs sit at higher bit offsets, so every completion of
        // this branch is at least `bits`: nothing below `best` down here
        if bits >= *best {
            continue;
        }
        used[v] = true;
        perm.push(v);
        search_key(g, n, perm, used, bits, best);
        perm.pop();
        used[v] = false;
    }
}

fn has_c4_or_c5(g: &Graph) -> bool {
    let cycles = g
        .girth_and_cycles(5)
        .expect("k_max 5 is within the enumeration bound")
        .1;
    !cycles[4].is_empty() || !cycles[5].is_empty()
}

/// All connected graphs with max degree 3 on at most `n_max` vertices, one
/// per isomorphism class, optionally filtered; ordered by vertex count and
/// then by canonical key.
pub fn enumerate_subcubic(n_max: usize, filter: EnumFilter) -> Result<Vec<Graph>, EnumError> {
    if n_max > 10 {
        return Err(EnumError::TooLarge(n_max));
    }
    let mut out = Vec::new();
    // reps[k] holds all subcubic classes on exactly k vertices, connected
    // or not, because augmentation must pass through disconnected stages
    let mut reps: Vec<Graph> = vec![Graph::build(1, &[]).unwrap()];
    for n in 1..=n_max {
        if n > 1 {
            let mut next = Vec::new();
            let mut seen = HashSet::new();
            for g in &reps {
                let slack: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) < 3).collect();
                for attach in subsets_up_to_3(&slack) {
                    let mut edges = g.edges().to_vec();
                    edges.extend(attach.iter().map(|&v| (v, n - 1)));
                    let h = Graph::build(n, &edges).expect("degree slack was checked");
                    if seen.insert(canonical_key(&h)) {
                        next.push(h);
                    }
                }
            }
            reps = next;
        }
        let mut batch: Vec<(u64, Graph)> = reps
            .iter()
            .filter(|g| g.is_connected())
            .filter(|g| !filter.no_c4_c5 || !has_c4_or_c5(g))
            .map(|g| (canonical_key(g), g.clone()))
            .collect();
        batch.sort_by_key(|(k, _)| *k);
        for (_, g) in batch {
            if filter.planar
                && squarecheck_core::find_planar_embedding(&g)
                    .expect("subcubic graphs fit the rotation search")
                    .is_none()
            {
                continue;
            }
            out.push(g);
        }
    }
    Ok(out)
}

/// The empty set plus all subsets of size 1..=3, in lexicographic order.
fn subsets_up_to_3(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..items.len() {
        out.push(vec![items[i]]);
        for j in i + 1..items.len() {
            out.push(vec![items[i], items[j]]);
            for k in j + 1..items.len() {
                out.push(vec![items[i], items[j], items[k]]);
            }
        }
    }
    out
}
