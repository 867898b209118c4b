//! Rotation systems and the faces they induce. A face is a closed walk of
//! directed edges, traced by the next-edge rule; an embedding is planar
//! exactly when the face count satisfies Euler's formula.

use thiserror::Error;

use crate::graph::Graph;

/// Upper bound on the rotation-system search in [`find_planar_embedding`].
const ROTATION_SEARCH_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    InvalidRotation(usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("rotation system has genus > 0: {faces} faces where Euler needs {expected}")]
    NotPlanarEmbedding { faces: usize, expected: usize },
    #[error("graph too large for rotation search: {0}")]
    TooLarge(String),
}

/// A plane embedding: a graph, a cyclic neighbor order at every vertex, and
/// the derived face walks. Every directed edge lies on exactly one walk.
#[derive(Debug, Clone)]
pub struct PlaneEmbedding {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    faces: Vec<Vec<(usize, usize)>>,
}

/// Per-face incidence data feeding the discharging rules.
#[derive(Debug, Clone)]
pub struct FaceStats {
    pub faces: Vec<FaceInfo>,
}

#[derive(Debug, Clone)]
pub struct FaceInfo {
    /// Number of directed edges on the walk (vertices may repeat at cut
    /// vertices, so this is not always the number of distinct vertices).
    pub length: usize,
    /// Distinct 2-vertices lying on the walk, sorted.
    pub two_vertices: Vec<usize>,
    /// 3-cycles of the graph sharing at least one edge with the walk, as
    /// canonical vertex triples.
    pub adjacent_triangles: Vec<Vec<usize>>,
}

impl PlaneEmbedding {
    /// Builds the embedding for the given rotation system and verifies
    /// Euler's formula. `g` must be connected.
    pub fn build(g: Graph, rotation: Vec<Vec<usize>>) -> Result<PlaneEmbedding, EmbedError> {
        if !g.is_connected() {
            return Err(EmbedError::NotConnected);
        }
        if rotation.len() != g.vertex_count() {
            return Err(EmbedError::InvalidRotation(rotation.len()));
        }
        for v in 0..g.vertex_count() {
            let mut sorted = rotation[v].clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(EmbedError::InvalidRotation(v));
            }
        }
        let faces = trace_faces(&g, &rotation);
        let expected = 2 + g.edge_count() - g.vertex_count();
        if faces.len() != expected {
            return Err(EmbedError::NotPlanarEmbedding {
                faces: faces.len(),
                expected,
            });
        }
        Ok(PlaneEmbedding {
            graph: g,
            rotation,
            faces,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// Face walks as sequences of directed edges.
    pub fn faces(&self) -> &[Vec<(usize, usize)>] {
        &self.faces
    }

    pub fn face_len(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Length, 2-vertex, and triangle-adjacency data for every face.
    pub fn face_stats(&self) -> FaceStats {
        let g = &self.graph;
        let (_, cycles) = g
            .girth_and_cycles(3)
            .expect("k_max 3 is within the enumeration bound");
        let triangles = &cycles[3];
        let tri_edges: Vec<Vec<(usize, usize)>> = triangles
            .iter()
            .map(|t| {
                let mut es: Vec<(usize, usize)> = (0..3)
                    .map(|i| {
                        let (a, b) = (t[i], t[(i + 1) % 3]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                es.sort_unstable();
                es
            })
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|walk| {
                let mut two_vertices: Vec<usize> = walk
                    .iter()
                    .map(|&(u, _)| u)
                    .filter(|&u| g.degree(u) == 2)
                    .collect();
                two_vertices.sort_unstable();
                two_vertices.dedup();
                let mut walk_edges: Vec<(usize, usize)> =
                    walk.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                walk_edges.sort_unstable();
                walk_edges.dedup();
                // a triangle coinciding with the face itself is not
                // "adjacent" to it
                let adjacent_triangles = triangles
                    .iter()
                    .zip(&tri_edges)
                    .filter(|(_, es)| {
                        **es != walk_edges
                            && es.iter().any(|e| walk_edges.binary_search(e).is_ok())
                    })
                    .map(|(t, _)| t.clone())
                    .collect();
                FaceInfo {
                    length: walk.len(),
                    two_vertices,
                    adjacent_triangles,
                }
            })
            .collect();
        FaceStats { faces }
    }
}

/// Traces all face walks of the rotation system. At the head of directed
/// edge `(u, v)` the walk continues with the neighbor following `u` in
/// `v`'s rotation. An edgeless single vertex yields one empty face.
fn trace_faces(g: &Graph, rotation: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    if g.edge_count() == 0 {
        return vec![Vec::new()];
    }
    let n = g.vertex_count();
    // position of u within v's rotation
    let mut pos = vec![std::collections::HashMap::new(); n];
    for v in 0..n {
        for (i, &u) in rotation[v].iter().enumerate() {
            pos[v].insert(u, i);
        }
    }
    let mut darts: Vec<(usize, usize)> = Vec::with_capacity(2 * g.edge_count());
    for &(u, v) in g.edges() {
        darts.push((u, v));
        darts.push((v, u));
    }
    darts.sort_unstable();
    let mut used = vec![false; darts.len()];
    let dart_index = |d: (usize, usize)| darts.binary_search(&d).unwrap();
    let mut faces = Vec::new();
    for start in 0..darts.len() {
        if used[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut dart = darts[start];
        loop {
            let idx = dart_index(dart);
            if used[idx] {
                break;
            }
            used[idx] = true;
            walk.push(dart);
            let (u, v) = dart;
            let i = pos[v][&u];
            let next = rotation[v][(i + 1) % rotation[v].len()];
            dart = (v, next);
        }
        faces.push(walk);
    }
    faces
}

/// Exhaustive rotation-system search for a planar embedding. Returns the
/// embedding with the lexicographically lowest rotation system, or `None`
/// when no rotation system of `g` is planar (for a connected graph this is
/// exactly non-planarity).
pub fn find_planar_embedding(g: &Graph) -> Result<Option<PlaneEmbedding>, EmbedError> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(EmbedError::TooLarge(format!("n = {n} exceeds 16")));
    }
    if !g.is_connected() {
        return Err(EmbedError::NotConnected);
    }
    // candidate cyclic orders per vertex: fix the smallest neighbor first,
    // permute the rest in lexicographic order
    let mut candidates: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    let mut total: u64 = 1;
    for v in 0..n {
        let nbrs = g.neighbors(v);
        let cands = if nbrs.len() <= 2 {
            vec![nbrs.to_vec()]
        } else {
            let mut rest: Vec<usize> = nbrs[1..].to_vec();
            let mut out = Vec::new();
            permutations(&mut rest, 0, &mut |perm| {
                let mut rot = Vec::with_capacity(nbrs.len());
                rot.push(nbrs[0]);
                rot.extend_from_slice(perm);
                out.push(rot);
            });
            out.sort_unstable();
            out
        };
        total = total.saturating_mul(cands.len() as u64);
        candidates.push(cands);
    }
    if total > ROTATION_SEARCH_BUDGET {
        return Err(EmbedError::TooLarge(format!(
            "{total} rotation systems exceed the search budget"
        )));
    }
    let expected = 2 + g.edge_count() - g.vertex_count();
    let mut choice = vec![0usize; n];
    loop {
        let rotation: Vec<Vec<usize>> = (0..n).map(|v| candidates[v][choice[v]].clone()).collect();
        if trace_faces(g, &rotation).len() == expected {
            return Ok(Some(
                PlaneEmbedding::build(g.clone(), rotation).expect("face count already verified"),
            ));
        }
        // odometer step, most significant vertex first so the first hit is
        // the lexicographically lowest rotation system
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(None);
            }
            v -= 1;
            choice[v] += 1;
            if choice[v] < candidates[v].len() {
                break;
            }
            choice[v] = 0;
        }
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, emit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, emit);
        items.swap(k, i);
    }
}
