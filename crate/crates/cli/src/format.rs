//! Plain-text graph files: a "n m" header, m edge lines, and optional
//! "rot" (cyclic neighbor orders) and "lists" (per-vertex colors)
//! sections. `#` starts a comment anywhere; parse and serialize are
//! mutually inverse.

use squarecheck_core::{EmbedError, Graph, GraphError, ListAssignment, PlaneEmbedding};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub embedding: Option<PlaneEmbedding>,
    pub lists: Option<ListAssignment>,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    // non-empty lines with comments stripped, tagged with 1-based numbers
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut it = lines.into_iter();

    let (hline, header) = it.next().ok_or_else(|| syntax(1, "missing header"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| syntax(hline, "header must be \"n m\""))?;
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| syntax(hline, "header must be \"n m\""))?;
    if parts.next().is_some() {
        return Err(syntax(hline, "header must be \"n m\""));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = it
            .next()
            .ok_or_else(|| syntax(hline, format!("expected {m} edge lines")))?;
        let mut ps = l.split_whitespace();
        let u: usize = ps
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| syntax(ln, "edge line must be \"u v\""))?;
        let v: usize = ps
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| syntax(ln, "edge line must be \"u v\""))?;
        if ps.next().is_some() {
            return Err(syntax(ln, "edge line must be \"u v\""));
        }
        edges.push((u, v));
    }
    let graph = Graph::build(n, &edges).map_err(|source| ParseError::Graph {
        line: hline,
        source,
    })?;

    let mut rotation: Option<Vec<Vec<usize>>> = None;
    let mut lists: Option<Vec<Vec<u32>>> = None;
    while let Some((ln, l)) = it.next() {
        match l {
            "rot" => {
                if rotation.is_some() {
                    return Err(syntax(ln, "duplicate rot section"));
                }
                let mut rows = Vec::with_capacity(n);
                for v in 0..n {
                    let (rln, rl) = it
                        .next()
                        .ok_or_else(|| syntax(ln, format!("rot section needs {n} lines")))?;
                    let row: Result<Vec<usize>, _> =
                        rl.split_whitespace().map(|s| s.parse()).collect();
                    rows.push(row.map_err(|_| {
                        syntax(rln, format!("rot line for vertex {v} must list neighbors"))
                    })?);
                }
                rotation = Some(rows);
            }
            "lists" => {
                if lists.is_some() {
                    return Err(syntax(ln, "duplicate lists section"));
                }
                let mut rows = vec![Vec::new(); n];
                let mut seen = vec![false; n];
                for _ in 0..n {
                    let (lln, ll) = it
                        .next()
                        .ok_or_else(|| syntax(ln, format!("lists section needs {n} lines")))?;
                    let (head, rest) = ll
                        .split_once(':')
                        .ok_or_else(|| syntax(lln, "list line must be \"v: c1 c2 ...\""))?;
                    let v: usize = head
                        .trim()
                        .parse()
                        .map_err(|_| syntax(lln, "list line must start with a vertex"))?;
                    if v >= n || seen[v] {
                        return Err(syntax(lln, format!("bad or repeated vertex {v}")));
                    }
                    seen[v] = true;
                    let colors: Result<Vec<u32>, _> =
                        rest.split_whitespace().map(|s| s.parse()).collect();
                    rows[v] = colors.map_err(|_| syntax(lln, "colors must be naturals"))?;
                }
                lists = Some(rows);
            }
            other => return Err(syntax(ln, format!("unknown section \"{other}\""))),
        }
    }

    let embedding = match rotation {
        Some(rot) => Some(PlaneEmbedding::build(graph.clone(), rot)?),
        None => None,
    };
    let lists = match lists {
        Some(rows) => Some(ListAssignment::new(rows).map_err(|e| syntax(0, e.to_string()))?),
        None => None,
    };
    Ok(GraphFile {
        graph,
        embedding,
        lists,
    })
}

pub fn serialize_graph_file(file: &GraphFile) -> String {
    let g = &file.graph;
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    if let Some(e) = &file.embedding {
        out.push_str("rot\n");
        for row in e.rotation() {
            let words: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
    }
    if let Some(lists) = &file.lists {
        out.push_str("lists\n");
        for v in 0..lists.len() {
            let words: Vec<String> = lists.list(v).iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("{v}: {}\n", words.join(" ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_graph() {
        let f = parse_graph_file("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(f.graph.vertex_count(), 3);
        assert_eq!(f.graph.edges(), &[(0, 1), (1, 2)]);
        assert!(f.embedding.is_none());
        assert!(f.lists.is_none());
    }

    #[test]
    fn parses_lists_and_comments() {
        let text = "# a path\n3 2\n0 1\n1 2\nlists\n0: 1\n1: 1 2\n2: 1 2 3\n";
        let f = parse_graph_file(text).unwrap();
        let lists = f.lists.unwrap();
        assert_eq!(lists.sizes(), vec![1, 2, 3]);
    }

    #[test]
    fn parses_rotation_into_embedding() {
        let text = "3 3\n0 1\n0 2\n1 2\nrot\n1 2\n0 2\n0 1\n";
        let f = parse_graph_file(text).unwrap();
        let e = f.embedding.unwrap();
        assert_eq!(e.face_count(), 2);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_graph_file("").is_err());
        // header promises 2 edges but 3 follow: the third is an unknown section
        assert!(parse_graph_file("3 2\n0 1\n1 2\n0 2\n").is_err());
        assert!(parse_graph_file("3 2\n0 1\n").is_err());
        assert!(parse_graph_file("3 2\n0 1\n1 2\nnonsense\n").is_err());
        assert!(parse_graph_file("2 1\n0 5\n").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "4 4\n0 1\n0 3\n1 2\n2 3\nrot\n1 3\n0 2\n1 3\n0 2\nlists\n0: 0 1\n1: 2\n2: 0 3\n3: 1\n";
        let f = parse_graph_file(text).unwrap();
        assert_eq!(serialize_graph_file(&f), text);
    }
}
