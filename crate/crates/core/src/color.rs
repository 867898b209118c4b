//! Proper colorings of conflict graphs from color lists: the backtracking
//! list-coloring solver, exact chromatic number, and greedy extension.
//!
//! Conflict graphs are always explicit; callers square their graph first if
//! that is what they mean. Colors are opaque identifiers compared only by
//! equality. Everything here is deterministic: lowest color first, lowest
//! vertex breaks ties.

use thiserror::Error;

use crate::graph::Graph;

/// Per-vertex lists of allowed colors, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<u32>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColorError {
    #[error("list for vertex {0} is empty")]
    EmptyList(usize),
    #[error("expected {expected} lists, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("graph too large for exact search (n = {0})")]
    TooLarge(usize),
    #[error("order must cover exactly the uncolored vertices")]
    OrderMismatch,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<u32>>) -> Result<Self, ColorError> {
        let mut lists = lists;
        for (v, list) in lists.iter_mut().enumerate() {
            if list.is_empty() {
                return Err(ColorError::EmptyList(v));
            }
            list.sort_unstable();
            list.dedup();
        }
        Ok(ListAssignment { lists })
    }

    /// The same list `0..k` for every vertex.
    pub fn uniform(n: usize, k: u32) -> Self {
        ListAssignment {
            lists: vec![(0..k).collect(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[u32] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.lists.iter().map(|l| l.len()).collect()
    }
}

/// A partial proper coloring: `None` entries are uncolored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Option<u32>>,
}

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring {
            colors: vec![None; n],
        }
    }

    pub fn total(colors: Vec<u32>) -> Self {
        Coloring {
            colors: colors.into_iter().map(Some).collect(),
        }
    }

    pub fn from_partial(colors: Vec<Option<u32>>) -> Self {
        Coloring { colors }
    }

    pub fn get(&self, v: usize) -> Option<u32> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, c: u32) {
        self.colors[v] = Some(c);
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    pub fn colors(&self) -> &[Option<u32>] {
        &self.colors
    }
}

/// True iff no conflict edge joins equal colors and, when lists are given,
/// every colored vertex uses a color from its own list.
pub fn check_proper(conflict: &Graph, coloring: &Coloring, lists: Option<&ListAssignment>) -> bool {
    for &(u, v) in conflict.edges() {
        if let (Some(a), Some(b)) = (coloring.get(u), coloring.get(v)) {
            if a == b {
                return false;
            }
        }
    }
    if let Some(lists) = lists {
        for v in 0..conflict.vertex_count() {
            if let Some(c) = coloring.get(v) {
                if !lists.list(v).contains(&c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Backtracking list-coloring with most-constrained-vertex-first ordering.
/// Returns a total proper coloring from the lists, or `None` when none
/// exists. Deterministic: the vertex with the fewest remaining colors is
/// branched next (lowest vertex on ties), lowest color tried first.
pub fn solve_list_coloring(conflict: &Graph, lists: &ListAssignment) -> Option<Coloring> {
    let n = conflict.vertex_count();
    assert_eq!(lists.len(), n, "list assignment must cover every vertex");
    let mut colors: Vec<Option<u32>> = vec![None; n];
    if solve_rec(conflict, lists, &mut colors) {
        Some(Coloring::from_partial(colors))
    } else {
        None
    }
}

fn available(conflict: &Graph, lists: &ListAssignment, colors: &[Option<u32>], v: usize) -> Vec<u32> {
    lists
        .list(v)
        .iter()
        .copied()
        .filter(|&c| {
            conflict
                .neighbors(v)
                .iter()
                .all(|&u| colors[u] != Some(c))
        })
        .collect()
}

fn solve_rec(conflict: &Graph, lists: &ListAssignment, colors: &mut Vec<Option<u32>>) -> bool {
    // pick the uncolored vertex with the fewest usable colors
    let mut pick: Option<(usize, Vec<u32>)> = None;
    for v in 0..colors.len() {
        if colors[v].is_some() {
            continue;
        }
        let avail = available(conflict, lists, colors, v);
        let better = match &pick {
            None => true,
            Some((_, best)) => avail.len() < best.len(),
        };
        if better {
            let empty = avail.is_empty();
            pick = Some((v, avail));
            if empty {
                break;
            }
        }
    }
    let Some((v, avail)) = pick else {
        return true; // everything colored
    };
    for c in avail {
        colors[v] = Some(c);
        if solve_rec(conflict, lists, colors) {
            return true;
        }
        colors[v] = None;
    }
    colors[v] = None;
    false
}

/// Exact chromatic number by incremental `k` with a clique lower bound.
pub fn chromatic_number(conflict: &Graph) -> Result<u32, ColorError> {
    let n = conflict.vertex_count();
    if n > 30 {
        return Err(ColorError::TooLarge(n));
    }
    if n == 0 {
        return Ok(0);
    }
    let lower = greedy_clique_bound(conflict).max(1);
    for k in lower as u32.. {
        let lists = ListAssignment::uniform(n, k);
        if solve_list_coloring(conflict, &lists).is_some() {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}

/// Size of a greedily grown clique, a lower bound on the chromatic number.
fn greedy_clique_bound(g: &Graph) -> usize {
    let mut best = 0;
    for start in 0..g.vertex_count() {
        let mut clique = vec![start];
        for v in 0..g.vertex_count() {
            if clique.iter().all(|&u| u != v && g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Outcome of [`greedy_extend`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    Extended(Coloring),
    FailedAt(usize),
}

/// Colors each vertex of `order` with the lowest list color unused by its
/// already-colored conflict neighbors. `order` must cover exactly the
/// uncolored vertices of `partial`.
pub fn greedy_extend(
    conflict: &Graph,
    partial: &Coloring,
    order: &[usize],
    lists: &ListAssignment,
) -> Result<GreedyOutcome, ColorError> {
    let n = conflict.vertex_count();
    let mut in_order = vec![false; n];
    for &v in order {
        if v >= n || in_order[v] {
            return Err(ColorError::OrderMismatch);
        }
        in_order[v] = true;
    }
    for v in 0..n {
        if in_order[v] == partial.get(v).is_some() {
            return Err(ColorError::OrderMismatch);
        }
    }
    let mut coloring = partial.clone();
    for &v in order {
        let mut chosen = None;
        for &c in lists.list(v) {
            let clash = conflict
                .neighbors(v)
                .iter()
                .any(|&u| coloring.get(u) == Some(c));
            if !clash {
                chosen = Some(c);
                break;
            }
        }
        match chosen {
            Some(c) => coloring.set(v, c),
            None => return Ok(GreedyOutcome::FailedAt(v)),
        }
    }
    Ok(GreedyOutcome::Extended(coloring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn lists(ls: &[&[u32]]) -> ListAssignment {
        ListAssignment::new(ls.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn check_proper_basics() {
        let k3 = complete(3);
        assert!(check_proper(&k3, &Coloring::total(vec![1, 2, 3]), None));
        assert!(!check_proper(&k3, &Coloring::total(vec![1, 1, 2]), None));
        let edge = complete(2);
        let l = lists(&[&[1], &[1, 2]]);
        assert!(check_proper(&edge, &Coloring::total(vec![1, 2]), Some(&l)));
        assert!(!check_proper(&edge, &Coloring::total(vec![2, 1]), Some(&l)));
    }

    #[test]
    fn solve_list_coloring_basics() {
        let k3 = complete(3);
        assert_eq!(
            solve_list_coloring(&k3, &lists(&[&[1, 2], &[1, 2], &[1, 2]])),
            None
        );
        let c = solve_list_coloring(&k3, &lists(&[&[1], &[2], &[3]])).unwrap();
        assert_eq!(c.colors(), &[Some(1), Some(2), Some(3)]);

        let sq = cycle(7).square();
        let l = ListAssignment::new(vec![vec![1, 2, 3, 4]; 7]).unwrap();
        let c = solve_list_coloring(&sq, &l).expect("square(C7) is 4-colorable");
        assert!(check_proper(&sq, &c, Some(&l)));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&cycle(7).square()).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(6).square()).unwrap(), 3);
        assert_eq!(chromatic_number(&complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&path(1)).unwrap(), 1);
    }

    #[test]
    fn greedy_extend_basics() {
        let k3 = complete(3);
        let l = lists(&[&[1], &[1, 2], &[1, 2, 3]]);
        let out = greedy_extend(&k3, &Coloring::empty(3), &[0, 1, 2], &l).unwrap();
        assert_eq!(
            out,
            GreedyOutcome::Extended(Coloring::total(vec![1, 2, 3]))
        );

        let l = lists(&[&[1], &[1], &[1, 2]]);
        let out = greedy_extend(&k3, &Coloring::empty(3), &[0, 1, 2], &l).unwrap();
        assert_eq!(out, GreedyOutcome::FailedAt(1));

        // empty order over a total coloring is the identity
        let total = Coloring::total(vec![1, 2, 3]);
        let out = greedy_extend(&k3, &total, &[], &lists(&[&[1], &[2], &[3]])).unwrap();
        assert_eq!(out, GreedyOutcome::Extended(total));

        assert_eq!(
            greedy_extend(&k3, &Coloring::empty(3), &[0, 0, 1], &l),
            Err(ColorError::OrderMismatch)
        );
        assert_eq!(
            greedy_extend(&k3, &Coloring::empty(3), &[0, 1], &l),
            Err(ColorError::OrderMismatch)
        );
    }
}
