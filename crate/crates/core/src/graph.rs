//! Simple undirected graphs on dense integer vertices, with the handful of
//! structural queries the rest of the crate is built on: BFS distances, the
//! square operator, bounded cycle enumeration, and articulation points.

use std::collections::VecDeque;

use thiserror::Error;

/// Largest cycle length [`Graph::girth_and_cycles`] will enumerate.
pub const MAX_CYCLE_LEN: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("empty vertex set")]
    EmptySet,
    #[error("k_max {0} exceeds the enumeration bound {MAX_CYCLE_LEN}")]
    KMaxTooLarge(usize),
}

/// A simple undirected graph. Vertices are `0..n`; no loops, no parallel
/// edges. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// A BFS distance: finite, or unreachable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinity,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinity => None,
        }
    }
}

impl Graph {
    /// Builds a normalized graph from an edge list. Duplicate edges are an
    /// error, not a silent merge.
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= n {
                return Err(GraphError::IndexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinity; self.n];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite().unwrap();
            for &v in &self.adj[u] {
                if dist[v] == Distance::Infinity {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::IndexOutOfRange { vertex: x, n: self.n });
            }
        }
        Ok(self.distances_from(u)[v])
    }

    /// Minimum distance between two nonempty vertex sets. Overlapping sets
    /// are at distance 0.
    pub fn set_distance(&self, a: &[usize], b: &[usize]) -> Result<Distance, GraphError> {
        if a.is_empty() || b.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for &x in a.iter().chain(b) {
            if x >= self.n {
                return Err(GraphError::IndexOutOfRange { vertex: x, n: self.n });
            }
        }
        // multi-source BFS from a
        let mut dist = vec![Distance::Infinity; self.n];
        let mut queue = VecDeque::new();
        for &x in a {
            if dist[x] == Distance::Infinity {
                dist[x] = Distance::Finite(0);
                queue.push_back(x);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite().unwrap();
            for &v in &self.adj[u] {
                if dist[v] == Distance::Infinity {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(b.iter().map(|&x| dist[x]).min().unwrap())
    }

    /// The square `G²`: same vertices, an edge between every pair at
    /// distance 1 or 2.
    pub fn square(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            let mut reach: Vec<usize> = self.adj[u].to_vec();
            for &v in &self.adj[u] {
                reach.extend(self.adj[v].iter().copied());
            }
            reach.sort_unstable();
            reach.dedup();
            for w in reach {
                if w > u {
                    edges.push((u, w));
                }
            }
        }
        Graph::build(self.n, &edges).expect("square of a valid graph is valid")
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.distances_from(0)
            .iter()
            .all(|d| *d != Distance::Infinity)
    }

    pub fn connected_component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// Exact girth (any cycle length), `Infinity` for forests.
    ///
    /// BFS from each vertex; a non-tree edge seen at depth d closes a cycle
    /// of length at most 2d+1 through the root.
    pub fn girth(&self) -> Distance {
        let mut best = usize::MAX;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Distance::Infinity
        } else {
            Distance::Finite(best)
        }
    }

    /// Girth plus every cycle of length `3..=k_max` as a canonical vertex
    /// sequence (lowest vertex first, lower of its two cycle-neighbors
    /// second). All cycles are listed, induced or not.
    pub fn girth_and_cycles(
        &self,
        k_max: usize,
    ) -> Result<(Distance, Vec<Vec<Vec<usize>>>), GraphError> {
        if k_max > MAX_CYCLE_LEN {
            return Err(GraphError::KMaxTooLarge(k_max));
        }
        // cycles[k] holds the k-cycles; indices below 3 stay empty
        let mut cycles: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k_max + 1];
        let mut path = Vec::with_capacity(k_max);
        let mut on_path = vec![false; self.n];
        for start in 0..self.n {
            path.push(start);
            on_path[start] = true;
            self.cycle_dfs(start, k_max, &mut path, &mut on_path, &mut cycles);
            on_path[start] = false;
            path.pop();
        }
        Ok((self.girth(), cycles))
    }

    fn cycle_dfs(
        &self,
        start: usize,
        k_max: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        cycles: &mut [Vec<Vec<usize>>],
    ) {
        let last = *path.last().unwrap();
        for &next in &self.adj[last] {
            if next == start && path.len() >= 3 {
                // canonical direction: second vertex below last vertex
                if path[1] < path[path.len() - 1] {
                    cycles[path.len()].push(path.clone());
                }
            }
            // only vertices above the start may continue the path
            if next <= start || on_path[next] || path.len() == k_max {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            self.cycle_dfs(start, k_max, path, on_path, cycles);
            on_path[next] = false;
            path.pop();
        }
    }

    /// Vertices whose removal increases the number of connected components.
    pub fn articulation_points(&self) -> Vec<usize> {
        // iterative lowpoint DFS over every component
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_ap = vec![false; n];
        let mut timer = 0usize;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut root_children = 0usize;
            // stack of (vertex, parent, neighbor index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let v = self.adj[u][*idx];
                    *idx += 1;
                    if v == parent {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            is_ap[p] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_ap[root] = true;
            }
        }
        (0..n).filter(|&v| is_ap[v]).collect()
    }

    /// Induced subgraph on `keep` (in the given order); vertex `i` of the
    /// result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
            }
        }
        Graph::build(keep.len(), &edges).expect("induced subgraph of a valid graph is valid")
    }
}

/// Convenience constructors used all over the test suites.
pub mod families {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::build(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer pentagon
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        Graph::build(10, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::build(3, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::build(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::build(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::build(2, &[(0, 2)]),
            Err(GraphError::IndexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn build_normalizes() {
        let g = Graph::build(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        let k1 = Graph::build(1, &[]).unwrap();
        assert_eq!(k1.vertex_count(), 1);
        assert_eq!(k1.edge_count(), 0);
    }

    #[test]
    fn square_of_p3_is_triangle() {
        let sq = path(3).square();
        assert_eq!(sq.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn square_of_c6_is_4_regular() {
        let sq = cycle(6).square();
        for v in 0..6 {
            assert_eq!(sq.degree(v), 4);
            for d in [1usize, 2] {
                assert!(sq.has_edge(v, (v + d) % 6));
                assert!(sq.has_edge(v, (v + 6 - d) % 6));
            }
        }
    }

    #[test]
    fn square_of_k1_is_k1() {
        let sq = Graph::build(1, &[]).unwrap().square();
        assert_eq!(sq.vertex_count(), 1);
        assert_eq!(sq.edge_count(), 0);
    }

    #[test]
    fn distances() {
        let c7 = cycle(7);
        assert_eq!(c7.distance(0, 3).unwrap(), Distance::Finite(3));
        assert_eq!(c7.distance(4, 4).unwrap(), Distance::Finite(0));
        let two = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.distance(0, 3).unwrap(), Distance::Infinity);
        assert!(c7.distance(0, 7).is_err());
    }

    #[test]
    fn set_distances() {
        let c7 = cycle(7);
        assert_eq!(
            c7.set_distance(&[0, 1], &[1, 2]).unwrap(),
            Distance::Finite(0)
        );
        assert_eq!(
            c7.set_distance(&[0], &[3, 4]).unwrap(),
            Distance::Finite(3)
        );
        assert_eq!(c7.set_distance(&[], &[0]), Err(GraphError::EmptySet));
    }

    #[test]
    fn girth_and_cycle_lists() {
        let c7 = cycle(7);
        let (girth, cycles) = c7.girth_and_cycles(7).unwrap();
        assert_eq!(girth, Distance::Finite(7));
        for k in 3..7 {
            assert!(cycles[k].is_empty());
        }
        assert_eq!(cycles[7], vec![vec![0, 1, 2, 3, 4, 5, 6]]);

        let k4 = complete(4);
        let (girth, cycles) = k4.girth_and_cycles(4).unwrap();
        assert_eq!(girth, Distance::Finite(3));
        assert_eq!(cycles[3].len(), 4);
        assert_eq!(cycles[4].len(), 3);

        let tree = path(5);
        let (girth, cycles) = tree.girth_and_cycles(8).unwrap();
        assert_eq!(girth, Distance::Infinity);
        assert!(cycles.iter().all(|c| c.is_empty()));

        assert_eq!(c7.girth_and_cycles(9), Err(GraphError::KMaxTooLarge(9)));
    }

    #[test]
    fn girth_beyond_enumeration_bound() {
        let c9 = cycle(9);
        assert_eq!(c9.girth(), Distance::Finite(9));
        let (girth, cycles) = c9.girth_and_cycles(8).unwrap();
        assert_eq!(girth, Distance::Finite(9));
        assert!(cycles.iter().all(|c| c.is_empty()));
    }

    #[test]
    fn articulation_points_basics() {
        assert_eq!(path(3).articulation_points(), vec![1]);
        assert!(cycle(6).articulation_points().is_empty());
        let bowtie =
            Graph::build(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        assert_eq!(bowtie.articulation_points(), vec![0]);
    }

    #[test]
    fn induced_subgraph() {
        let k4 = complete(4);
        let tri = k4.induced(&[0, 2, 3]);
        assert_eq!(tri.vertex_count(), 3);
        assert_eq!(tri.edge_count(), 3);
    }
}
