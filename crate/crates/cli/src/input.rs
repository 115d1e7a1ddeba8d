//! Readers for the permutation, edge-list and layered file formats.

use std::path::Path;

use permpat::{CircleLayeredMultigraph, DirectedGraph, LayeredEdge, Permutation, UndirectedGraph};

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_permutation(path: &Path) -> Result<Permutation, CliError> {
    let text = read_text(path)?;
    permpat::parse_permutation(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A graph file of any of the three kinds, told apart by its header.
#[derive(Clone, Debug)]
pub enum GraphInput {
    Undirected(UndirectedGraph),
    Directed(DirectedGraph),
    Layered(CircleLayeredMultigraph),
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn field<T: std::str::FromStr>(
    line: usize,
    token: Option<&str>,
    what: &str,
) -> Result<T, CliError> {
    let token = token.ok_or_else(|| CliError::Input(format!("line {line}: missing {what}")))?;
    token
        .parse()
        .map_err(|_| CliError::Input(format!("line {line}: `{token}` is not a valid {what}")))
}

fn no_more(line: usize, mut rest: std::str::SplitWhitespace) -> Result<(), CliError> {
    match rest.next() {
        None => Ok(()),
        Some(t) => Err(CliError::Input(format!("line {line}: unexpected `{t}`"))),
    }
}

/// Parses an edge list (`nodes N` header) or a layered file (`layers a b c d`
/// header). `directed` selects the digraph reading of an edge list.
pub fn parse_graph(text: &str, directed: bool) -> Result<GraphInput, CliError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| CliError::Input("empty graph file".into()))?;
    let mut head = header.split_whitespace();
    match head.next() {
        Some("nodes") => {
            let n: usize = field(hl, head.next(), "node count")?;
            no_more(hl, head)?;
            let mut pairs = Vec::new();
            for (ln, line) in lines {
                let mut t = line.split_whitespace();
                let u: usize = field(ln, t.next(), "node id")?;
                let v: usize = field(ln, t.next(), "node id")?;
                no_more(ln, t)?;
                pairs.push((ln, u, v));
            }
            let located = |e: permpat::Error| {
                // point at the first line involved in the rejected edge set
                let bad = pairs.iter().find(|&&(_, u, v)| u >= n || v >= n || u == v);
                match bad {
                    Some(&(ln, _, _)) => CliError::Input(format!("line {ln}: {e}")),
                    None => CliError::Input(format!("{e}")),
                }
            };
            let edges: Vec<(usize, usize)> = pairs.iter().map(|&(_, u, v)| (u, v)).collect();
            if directed {
                DirectedGraph::new(n, edges)
                    .map(GraphInput::Directed)
                    .map_err(located)
            } else {
                UndirectedGraph::new(n, edges)
                    .map(GraphInput::Undirected)
                    .map_err(located)
            }
        }
        Some("layers") => {
            let mut sizes = [0usize; 4];
            for s in &mut sizes {
                *s = field(hl, head.next(), "layer size")?;
            }
            no_more(hl, head)?;
            let mut edges = Vec::new();
            for (ln, line) in lines {
                let mut t = line.split_whitespace();
                let l: u8 = field(ln, t.next(), "layer index")?;
                let u: u32 = field(ln, t.next(), "node id")?;
                let v: u32 = field(ln, t.next(), "node id")?;
                let mult: u64 = match t.next() {
                    None => 1,
                    tok => field(ln, tok, "multiplicity")?,
                };
                no_more(ln, t)?;
                let e = LayeredEdge::new(l, u, v, mult);
                // validate one record at a time to report its line
                CircleLayeredMultigraph::new(sizes, vec![e])
                    .map_err(|err| CliError::Input(format!("line {ln}: {err}")))?;
                edges.push(e);
            }
            let g = CircleLayeredMultigraph::new(sizes, edges)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(GraphInput::Layered(g))
        }
        _ => Err(CliError::Input(format!(
            "line {hl}: expected a `nodes N` or `layers a b c d` header"
        ))),
    }
}

pub fn read_graph(path: &Path, directed: bool) -> Result<GraphInput, CliError> {
    let text = read_text(path)?;
    parse_graph(&text, directed).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_permutation(p: &Permutation) -> String {
    let mut s = p.to_string();
    s.push('\n');
    s
}

pub fn write_edges(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("nodes {n}\n");
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn write_layered(g: &CircleLayeredMultigraph) -> String {
    let [a, b, c, d] = g.sizes();
    let mut s = format!("layers {a} {b} {c} {d}\n");
    for e in g.edges() {
        if e.mult == 1 {
            s.push_str(&format!("{} {} {}\n", e.layer, e.from, e.to));
        } else {
            s.push_str(&format!("{} {} {} {}\n", e.layer, e.from, e.to, e.mult));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists() {
        let g = parse_graph("nodes 4\n0 1\n1 2\n# comment\n2 3\n3 0\n", false).unwrap();
        let GraphInput::Undirected(g) = g else {
            panic!()
        };
        assert_eq!(g.edges().len(), 4);
        let g = parse_graph("nodes 2\n0 1\n1 0\n", true).unwrap();
        assert!(matches!(g, GraphInput::Directed(_)));
        assert!(parse_graph("nodes 2\n0 1\n1 0\n", false).is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph("nodes 3\n0 1\n1 x\n", false).unwrap_err();
        assert_eq!(e.to_string(), "line 3: `x` is not a valid node id");
        let e = parse_graph("nodes 3\n0 1\n1 5\n", false).unwrap_err();
        assert!(e.to_string().starts_with("line 3:"), "{e}");
        let e = parse_graph("layers 1 1 1 1\n0 0 0\n4 0 0\n", false).unwrap_err();
        assert!(e.to_string().starts_with("line 3:"), "{e}");
        let e = parse_graph("edges\n", false).unwrap_err();
        assert!(e.to_string().starts_with("line 1:"), "{e}");
    }

    #[test]
    fn layered_round_trip() {
        let g = parse_graph("layers 1 1 1 1\n0 0 0 3\n1 0 0\n2 0 0\n3 0 0\n", false).unwrap();
        let GraphInput::Layered(g) = g else { panic!() };
        assert_eq!(g.max_mult(), 3);
        let again = parse_graph(&write_layered(&g), false).unwrap();
        let GraphInput::Layered(again) = again else {
            panic!()
        };
        assert_eq!(again, g);
    }
}
