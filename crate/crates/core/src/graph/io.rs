//! Line-based graph format: a header `n m`, then `m` lines `u v` with
//! 0-based indices. Lines starting with `#` and blank lines are ignored.

use super::{Graph, GraphError, Vertex};

/// Non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_numbers(line: usize, s: &str) -> Result<Vec<usize>, GraphError> {
    s.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| GraphError::Parse {
                line,
                msg: format!("`{t}` is not a nonnegative integer"),
            })
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_numbers(hl, header)?[..] else {
        return Err(GraphError::Parse { line: hl, msg: "header must be `n m`".into() });
    };
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    let mut last = hl;
    for (ln, l) in lines {
        let [u, v] = parse_numbers(ln, l)?[..] else {
            return Err(GraphError::Parse { line: ln, msg: "edge line must be `u v`".into() });
        };
        edges.push((u, v));
        last = ln;
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: last,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::hypercube;

    #[test]
    fn round_trip() {
        let g = hypercube(3).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_graph("# triangle\n3 3\n0 1\n\n1 2\n# closing edge\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph("2 1\n0 x\n"), Err(GraphError::Parse { line: 2, .. })));
        assert_eq!(parse_graph("3 1\n0 1\n"), Err(GraphError::Disconnected(0, 2)));
    }
}
