//! Complete decision procedure for f-choosability of small conflict graphs.
//!
//! The searcher enumerates candidate bad assignments as multisets of color
//! supports, where a support is a connected vertex subset of the conflict
//! graph and every vertex `v` lies in exactly `f(v)` supports. Each
//! candidate is decided by list coloring with support identifiers as
//! colors; an uncolorable candidate is a bad assignment, and if every
//! candidate is colorable the graph is f-choosable.
//!
//! The restriction to connected supports is lossless: in a minimal bad
//! assignment every color class can be assumed to have a connected support,
//! because a color with a disconnected support can be split into fresh
//! per-component colors without changing any list size or creating a proper
//! coloring. This reduction is cross-validated against the naive oracle
//! [`naive_f_choosable`], which enumerates raw list assignments.

use thiserror::Error;

use crate::color::{solve_list_coloring, ListAssignment};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChooseError {
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("search budget exceeded after {examined} candidates")]
    BudgetExceeded { examined: u64 },
}

/// Per-vertex required list sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeVector {
    sizes: Vec<usize>,
}

impl SizeVector {
    pub fn new(sizes: Vec<usize>) -> Result<Self, ChooseError> {
        if sizes.iter().any(|&s| s == 0) {
            return Err(ChooseError::TooLarge(
                "size vector entries must be at least 1".into(),
            ));
        }
        Ok(SizeVector { sizes })
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.sizes[v]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// A list assignment meeting the sizes exactly that admits no proper
/// coloring, re-checked against the solver before emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadAssignmentWitness {
    pub lists: ListAssignment,
    pub candidates_examined: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    pub candidates_examined: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChooseOutcome {
    Choosable(SearchStats),
    Bad(BadAssignmentWitness),
}

impl ChooseOutcome {
    pub fn is_choosable(&self) -> bool {
        matches!(self, ChooseOutcome::Choosable(_))
    }
}

/// Search knobs for [`is_f_choosable_with`].
#[derive(Debug, Clone)]
pub struct ChooseOptions {
    /// Abort with [`ChooseError::BudgetExceeded`] after this many complete
    /// candidates.
    pub budget: Option<u64>,
    /// Skip candidates that are not minimal in their orbit under conflict
    /// graph automorphisms fixing `f`. Off by default; verdicts must not
    /// depend on it.
    pub automorphism_pruning: bool,
    /// Guardrails, overridable for experiments.
    pub max_vertices: usize,
    pub max_total_size: usize,
}

impl Default for ChooseOptions {
    fn default() -> Self {
        ChooseOptions {
            budget: None,
            automorphism_pruning: false,
            max_vertices: 8,
            max_total_size: 28,
        }
    }
}

pub fn is_f_choosable(conflict: &Graph, f: &SizeVector) -> Result<ChooseOutcome, ChooseError> {
    is_f_choosable_with(conflict, f, &ChooseOptions::default())
}

pub fn is_f_choosable_with(
    conflict: &Graph,
    f: &SizeVector,
    opts: &ChooseOptions,
) -> Result<ChooseOutcome, ChooseError> {
    let n = conflict.vertex_count();
    if f.len() != n {
        return Err(ChooseError::TooLarge(
            "size vector length differs from vertex count".into(),
        ));
    }
    if n > opts.max_vertices {
        return Err(ChooseError::TooLarge(format!(
            "n = {n} exceeds the guardrail {}",
            opts.max_vertices
        )));
    }
    if f.total() > opts.max_total_size {
        return Err(ChooseError::TooLarge(format!(
            "total list size {} exceeds the guardrail {}",
            f.total(),
            opts.max_total_size
        )));
    }
    if n == 0 {
        return Ok(ChooseOutcome::Choosable(SearchStats {
            candidates_examined: 0,
        }));
    }
    let mut search = Search::new(conflict, f, opts);
    search.run()
}

struct Search<'a> {
    conflict: &'a Graph,
    n: usize,
    adj_mask: Vec<u32>,
    /// Connected subset masks, ascending by mask value. The enumeration
    /// index of a support doubles as its canonical order.
    supports: Vec<u32>,
    /// Vertices by decreasing conflict degree, lowest index on ties.
    pivot_order: Vec<usize>,
    /// Non-identity automorphisms fixing `f`, as vertex maps.
    automorphisms: Vec<Vec<usize>>,
    budget: Option<u64>,
    // search state
    resid: Vec<u32>,
    chosen: Vec<(usize, u32)>, // (support index, support mask), one entry per color
    list_mask: Vec<u64>,       // per-vertex mask over color positions
    examined: u64,
}

impl<'a> Search<'a> {
    fn new(conflict: &'a Graph, f: &SizeVector, opts: &ChooseOptions) -> Self {
        let n = conflict.vertex_count();
        let mut adj_mask = vec![0u32; n];
        for v in 0..n {
            for &u in conflict.neighbors(v) {
                adj_mask[v] |= 1 << u;
            }
        }
        let supports: Vec<u32> = (1u32..1 << n)
            .filter(|&m| mask_connected(m, &adj_mask))
            .collect();
        let mut pivot_order: Vec<usize> = (0..n).collect();
        pivot_order.sort_by_key(|&v| (std::cmp::Reverse(conflict.degree(v)), v));
        let automorphisms = if opts.automorphism_pruning {
            graph_automorphisms(conflict, f.sizes())
        } else {
            Vec::new()
        };
        Search {
            conflict,
            n,
            adj_mask,
            supports,
            pivot_order,
            automorphisms,
            budget: opts.budget,
            resid: f.sizes().iter().map(|&s| s as u32).collect(),
            chosen: Vec::new(),
            list_mask: vec![0u64; n],
            examined: 0,
        }
    }

    fn run(&mut self) -> Result<ChooseOutcome, ChooseError> {
        match self.recurse(0, usize::MAX)? {
            Some(witness) => Ok(ChooseOutcome::Bad(witness)),
            None => Ok(ChooseOutcome::Choosable(SearchStats {
                candidates_examined: self.examined,
            })),
        }
    }

    /// Extends the candidate with one more support. `lb` is the smallest
    /// admissible support index while the pivot vertex stays unchanged,
    /// which makes the supports chosen for one pivot nondecreasing and every
    /// multiset enumerated exactly once.
    fn recurse(
        &mut self,
        lb: usize,
        last_pivot: usize,
    ) -> Result<Option<BadAssignmentWitness>, ChooseError> {
        let pivot = self
            .pivot_order
            .iter()
            .copied()
            .find(|&v| self.resid[v] > 0);
        let Some(pivot) = pivot else {
            return self.leaf();
        };
        let lb = if pivot == last_pivot { lb } else { 0 };
        let mut alive = 0u32;
        for v in 0..self.n {
            if self.resid[v] > 0 {
                alive |= 1 << v;
            }
        }
        let pivot_bit = 1u32 << pivot;
        for idx in lb..self.supports.len() {
            let s = self.supports[idx];
            if s & pivot_bit == 0 || s & !alive != 0 {
                continue;
            }
            self.push(idx, s);
            let hit = self.recurse(idx, pivot)?;
            self.pop(s);
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }

    fn push(&mut self, idx: usize, s: u32) {
        let color = self.chosen.len();
        let bit = 1u64 << color;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            self.resid[v] -= 1;
            self.list_mask[v] |= bit;
        }
        self.chosen.push((idx, s));
    }

    fn pop(&mut self, s: u32) {
        self.chosen.pop();
        let bit = 1u64 << self.chosen.len();
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            self.resid[v] += 1;
            self.list_mask[v] &= !bit;
        }
    }

    fn leaf(&mut self) -> Result<Option<BadAssignmentWitness>, ChooseError> {
        if !self.automorphisms.is_empty() && !self.orbit_minimal() {
            return Ok(None);
        }
        self.examined += 1;
        if let Some(budget) = self.budget {
            if self.examined > budget {
                return Err(ChooseError::BudgetExceeded {
                    examined: self.examined,
                });
            }
        }
        if greedy_colorable(&self.list_mask, &self.adj_mask)
            || backtrack_colorable(&mut self.list_mask.clone(), &self.adj_mask, 0)
        {
            return Ok(None);
        }
        // uncolorable candidate: materialize the lists and re-verify with
        // the general solver before emitting the witness
        let lists: Vec<Vec<u32>> = (0..self.n)
            .map(|v| {
                self.chosen
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, s))| s & (1 << v) != 0)
                    .map(|(color, _)| color as u32)
                    .collect()
            })
            .collect();
        let lists = ListAssignment::new(lists).expect("every vertex has f(v) >= 1 colors");
        assert!(
            solve_list_coloring(self.conflict, &lists).is_none(),
            "bitmask solver and list solver disagree on a candidate"
        );
        Ok(Some(BadAssignmentWitness {
            lists,
            candidates_examined: self.examined,
        }))
    }

    /// True when no automorphism image of the chosen multiset compares
    /// lower; the minimum of each orbit is always kept.
    fn orbit_minimal(&self) -> bool {
        let mut original: Vec<u32> = self.chosen.iter().map(|&(_, s)| s).collect();
        original.sort_unstable();
        for auto in &self.automorphisms {
            let mut image: Vec<u32> = self
                .chosen
                .iter()
                .map(|&(_, s)| map_mask(s, auto))
                .collect();
            image.sort_unstable();
            if image < original {
                return false;
            }
        }
        true
    }
}

fn map_mask(s: u32, auto: &[usize]) -> u32 {
    let mut out = 0u32;
    let mut m = s;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << auto[v];
    }
    out
}

fn mask_connected(m: u32, adj_mask: &[u32]) -> bool {
    let first = m.trailing_zeros() as usize;
    let mut seen = 1u32 << first;
    loop {
        let mut grown = seen;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            grown |= adj_mask[v] & m;
        }
        if grown == seen {
            break;
        }
        seen = grown;
    }
    seen == m
}

/// One pass of most-constrained-first greedy coloring on bitmask lists.
/// Success proves colorability; failure proves nothing.
fn greedy_colorable(list_mask: &[u64], adj_mask: &[u32]) -> bool {
    let n = list_mask.len();
    let mut avail: [u64; 32] = [0; 32];
    avail[..n].copy_from_slice(list_mask);
    let mut uncolored: u32 = (1u32 << n) - 1;
    while uncolored != 0 {
        let mut best = usize::MAX;
        let mut best_count = u32::MAX;
        let mut m = uncolored;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let count = avail[v].count_ones();
            if count < best_count {
                best = v;
                best_count = count;
            }
        }
        if best_count == 0 {
            return false;
        }
        let c = avail[best] & avail[best].wrapping_neg(); // lowest color bit
        uncolored &= !(1u32 << best);
        let mut nb = adj_mask[best] & uncolored;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            avail[u] &= !c;
        }
    }
    true
}

/// Exact backtracking on bitmask lists, most-constrained vertex first.
fn backtrack_colorable(avail: &mut [u64], adj_mask: &[u32], colored: u32) -> bool {
    let n = avail.len();
    let mut best = usize::MAX;
    let mut best_count = u32::MAX;
    for v in 0..n {
        if colored & (1 << v) != 0 {
            continue;
        }
        let count = avail[v].count_ones();
        if count < best_count {
            best = v;
            best_count = count;
        }
    }
    if best == usize::MAX {
        return true;
    }
    if best_count == 0 {
        return false;
    }
    let choices = avail[best];
    let mut m = choices;
    while m != 0 {
        let c = m & m.wrapping_neg();
        m &= m - 1;
        let saved: Vec<u64> = avail.to_vec();
        let mut nb = adj_mask[best] & !colored;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            avail[u] &= !c;
        }
        avail[best] = c;
        if backtrack_colorable(avail, adj_mask, colored | (1 << best)) {
            return true;
        }
        avail.copy_from_slice(&saved);
    }
    false
}

/// All permutations preserving adjacency and fixing the size vector,
/// identity excluded.
fn graph_automorphisms(g: &Graph, sizes: &[usize]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let fixes_f = (0..n).all(|v| sizes[perm[v]] == sizes[v]);
        if fixes_f {
            let preserves = g
                .edges()
                .iter()
                .all(|&(u, v)| g.has_edge(perm[u], perm[v]));
            if preserves && perm.iter().enumerate().any(|(i, &p)| i != p) {
                out.push(perm.clone());
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Independent oracle: enumerates every list assignment with lists drawn
/// from `{0..pool}`, canonicalized up to color renaming by first-occurrence
/// relabeling, and decides each with the solver. Exhaustive for
/// `pool >= total(f)`.
pub fn naive_f_choosable(
    conflict: &Graph,
    f: &SizeVector,
    pool: usize,
) -> Result<ChooseOutcome, ChooseError> {
    let n = conflict.vertex_count();
    if f.len() != n {
        return Err(ChooseError::TooLarge(
            "size vector length differs from vertex count".into(),
        ));
    }
    if n > 4 {
        return Err(ChooseError::TooLarge(format!(
            "naive oracle is limited to n <= 4, got {n}"
        )));
    }
    if pool > f.total() || pool > 8 {
        return Err(ChooseError::TooLarge(format!(
            "pool {pool} exceeds the enumeration bound"
        )));
    }
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut examined = 0u64;
    let hit = naive_rec(conflict, f, pool, 0, 0, &mut lists, &mut examined);
    match hit {
        Some(witness) => Ok(ChooseOutcome::Bad(witness)),
        None => Ok(ChooseOutcome::Choosable(SearchStats {
            candidates_examined: examined,
        })),
    }
}

fn naive_rec(
    conflict: &Graph,
    f: &SizeVector,
    pool: usize,
    v: usize,
    max_used: u32,
    lists: &mut Vec<Vec<u32>>,
    examined: &mut u64,
) -> Option<BadAssignmentWitness> {
    let n = conflict.vertex_count();
    if v == n {
        *examined += 1;
        let assignment = ListAssignment::new(lists.clone()).expect("lists are nonempty");
        if solve_list_coloring(conflict, &assignment).is_none() {
            return Some(BadAssignmentWitness {
                lists: assignment,
                candidates_examined: *examined,
            });
        }
        return None;
    }
    // first-occurrence canonical form: colors above max_used must be taken
    // consecutively from max_used upward
    let k = f.get(v);
    let mut subset: Vec<u32> = Vec::with_capacity(k);
    naive_subsets(pool as u32, k, 0, max_used, &mut subset, &mut |chosen, new_max| {
        lists[v] = chosen.to_vec();
        naive_rec(conflict, f, pool, v + 1, new_max, lists, examined)
    })
}

fn naive_subsets(
    pool: u32,
    k: usize,
    from: u32,
    max_used: u32,
    subset: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32], u32) -> Option<BadAssignmentWitness>,
) -> Option<BadAssignmentWitness> {
    if subset.len() == k {
        let new_max = max_used.max(subset.last().map_or(0, |&c| c + 1));
        return emit(subset, new_max);
    }
    // next color: any unused existing color, or exactly the next fresh one
    let fresh_cap = max_used.max(subset.last().map_or(0, |&c| c + 1));
    let upper = (fresh_cap + 1).min(pool);
    for c in from..upper {
        subset.push(c);
        let hit = naive_subsets(pool, k, c + 1, max_used, subset, emit);
        subset.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Searches all vertex orders for one where every vertex has strictly
/// fewer earlier conflict neighbors than `f(v)`. Such an order proves
/// f-choosability for any lists. `None` only means greedy alone is
/// insufficient.
pub fn greedy_order_certificate(
    conflict: &Graph,
    f: &SizeVector,
) -> Result<Option<Vec<usize>>, ChooseError> {
    let n = conflict.vertex_count();
    if f.len() != n {
        return Err(ChooseError::TooLarge(
            "size vector length differs from vertex count".into(),
        ));
    }
    if n > 10 {
        return Err(ChooseError::TooLarge(format!(
            "order search is limited to n <= 10, got {n}"
        )));
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    if order_dfs(conflict, f, &mut order, &mut placed) {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

fn order_dfs(conflict: &Graph, f: &SizeVector, order: &mut Vec<usize>, placed: &mut [bool]) -> bool {
    if order.len() == placed.len() {
        return true;
    }
    for v in 0..placed.len() {
        if placed[v] {
            continue;
        }
        let back = conflict
            .neighbors(v)
            .iter()
            .filter(|&&u| placed[u])
            .count();
        if back >= f.get(v) {
            continue;
        }
        placed[v] = true;
        order.push(v);
        if order_dfs(conflict, f, order, placed) {
            return true;
        }
        order.pop();
        placed[v] = false;
    }
    false
}
