use std::path::Path;

use permpat::{
    binomial, brute_count_c4, count_4partite, count_c4_layered, count_c4_undirected,
    count_pattern4, count_small_pattern, directed_c4_through_chain, directed_to_layered,
    full_profile4, layered_c4_by_splitting, layered_c4_through_patterns, layered_to_undirected,
    undirected_c4_through_chain, undirected_to_directed, CircleLayeredMultigraph, Count,
    DirectedGraph, Generator, Pattern, PlaneDivision, PointSet,
};

use crate::input::{
    read_graph, read_permutation, write_edges, write_layered, write_permutation, GraphInput,
};
use crate::{C4Algo, CliError, GenKind, Report};

pub fn parse_pattern(s: &str) -> Result<Pattern, CliError> {
    s.parse()
        .map_err(|e: permpat::Error| CliError::Usage(e.to_string()))
}

pub fn profile(input: &Path, r: &mut Report) -> Result<(), CliError> {
    let perm = read_permutation(input)?;
    let prof = full_profile4(&perm)?;
    let n = perm.len();
    r.text(format!("n = {n}"));
    r.record("n", n);
    for (p, c) in prof.iter() {
        r.text(format!("#{p} = {c}"));
        r.record(&p.to_string(), c);
    }
    let expected = binomial(n as u64, 4);
    r.text(format!("sum = {} = C({n},4) ok", prof.total()));
    r.record("sum", prof.total());
    r.record("binomial", expected);
    Ok(())
}

pub fn count_pattern(pattern: &str, input: &Path, r: &mut Report) -> Result<(), CliError> {
    let p = parse_pattern(pattern)?;
    let perm = read_permutation(input)?;
    let count = if p.len() == 4 {
        count_pattern4(&perm, &p)?
    } else {
        count_small_pattern(&perm, &p)?
    };
    r.text(format!("#{p} = {count}"));
    r.record("n", perm.len());
    r.record(&p.to_string(), count);
    Ok(())
}

pub fn count_small(pattern: &str, input: &Path, r: &mut Report) -> Result<(), CliError> {
    let p = parse_pattern(pattern)?;
    if p.len() > 3 {
        return Err(CliError::Usage(format!(
            "count-small takes patterns of length 1 to 3, got {p}; use count-pattern"
        )));
    }
    let perm = read_permutation(input)?;
    let count = count_small_pattern(&perm, &p)?;
    r.text(format!("#{p} = {count}"));
    r.record("n", perm.len());
    r.record(&p.to_string(), count);
    Ok(())
}

fn four_partite_1324(ps: &PointSet, div: &PlaneDivision) -> Count {
    let p: Pattern = "1324".parse().expect("valid pattern");
    count_4partite(ps, div, &p).expect("embedded instances are valid")
}

fn layered_via_patterns(g: &CircleLayeredMultigraph) -> Count {
    layered_c4_by_splitting(g, |h| {
        layered_c4_through_patterns(h, four_partite_1324).expect("split parts are simple")
    })
}

fn directed_via_patterns(g: &DirectedGraph) -> Count {
    let (layered, correction) = directed_to_layered(g);
    (layered_via_patterns(&layered) - correction) / 4
}

/// 4-cycles of `g` by the chosen route.
pub fn c4_count(g: &GraphInput, algo: C4Algo) -> Count {
    match (g, algo) {
        (GraphInput::Undirected(g), C4Algo::Brute) => brute_count_c4(g),
        (GraphInput::Undirected(g), C4Algo::Codegree) => count_c4_undirected(g),
        (GraphInput::Undirected(g), C4Algo::ViaReductions) => {
            undirected_c4_through_chain(g, count_c4_undirected)
        }
        (GraphInput::Undirected(g), C4Algo::ViaPattern) => {
            directed_via_patterns(&undirected_to_directed(g)) / 2
        }
        (GraphInput::Directed(g), C4Algo::Brute) => brute_count_c4(g),
        (GraphInput::Directed(g), C4Algo::Codegree) => {
            let (layered, correction) = directed_to_layered(g);
            (count_c4_layered(&layered) - correction) / 4
        }
        (GraphInput::Directed(g), C4Algo::ViaReductions) => {
            directed_c4_through_chain(g, count_c4_undirected)
        }
        (GraphInput::Directed(g), C4Algo::ViaPattern) => directed_via_patterns(g),
        (GraphInput::Layered(g), C4Algo::Brute) => brute_count_c4(g),
        (GraphInput::Layered(g), C4Algo::Codegree) => count_c4_layered(g),
        (GraphInput::Layered(g), C4Algo::ViaReductions) => layered_c4_by_splitting(g, |h| {
            layered_to_undirected(h)
                .expect("split parts are simple")
                .layered_count(count_c4_undirected)
        }),
        (GraphInput::Layered(g), C4Algo::ViaPattern) => layered_via_patterns(g),
    }
}

fn kind_name(g: &GraphInput) -> &'static str {
    match g {
        GraphInput::Undirected(_) => "undirected",
        GraphInput::Directed(_) => "directed",
        GraphInput::Layered(_) => "layered",
    }
}

fn algo_name(algo: C4Algo) -> &'static str {
    match algo {
        C4Algo::Brute => "brute",
        C4Algo::Codegree => "codegree",
        C4Algo::ViaPattern => "via-pattern",
        C4Algo::ViaReductions => "via-reductions",
    }
}

pub fn count_c4(
    input: &Path,
    algo: C4Algo,
    directed: bool,
    r: &mut Report,
) -> Result<(), CliError> {
    let g = read_graph(input, directed)?;
    let count = c4_count(&g, algo);
    r.text(format!(
        "4-cycles = {count} ({} graph, {})",
        kind_name(&g),
        algo_name(algo)
    ));
    r.record("graph", kind_name(&g));
    r.record("algo", algo_name(algo));
    r.record("cycles", count);
    Ok(())
}

pub fn tau_star(input: &Path, r: &mut Report) -> Result<(), CliError> {
    let perm = read_permutation(input)?;
    let tau = permpat::tau_star(&perm)?;
    r.text(format!("tau* = {tau}"));
    r.record("n", perm.len());
    r.record("tau_star", tau);
    Ok(())
}

/// A random digraph: the edges of `G(n, m)`, each oriented one way or the
/// other or both, uniformly.
pub fn random_digraph(gen: &mut Generator, n: usize, m: usize) -> DirectedGraph {
    let g = gen.graph(n, m);
    let mut arcs = Vec::new();
    for &(u, v) in g.edges() {
        match gen.upto(2) {
            0 => arcs.push((u, v)),
            1 => arcs.push((v, u)),
            _ => arcs.extend([(u, v), (v, u)]),
        }
    }
    DirectedGraph::new(n, arcs).expect("distinct arcs")
}

pub fn gen(
    kind: GenKind,
    n: usize,
    seed: u64,
    m: Option<usize>,
    directed: bool,
    max_mult: u64,
    r: &mut Report,
) -> Result<(), CliError> {
    let mut gen = Generator::new(seed);
    let text = match kind {
        GenKind::Perm => write_permutation(&gen.permutation(n)),
        GenKind::Graph => {
            let m = m.unwrap_or(2 * n);
            if directed {
                let d = random_digraph(&mut gen, n, m);
                write_edges(n, d.arcs())
            } else {
                write_edges(n, gen.graph(n, m).edges())
            }
        }
        GenKind::Layered => {
            if n == 0 || max_mult == 0 {
                return Err(CliError::Usage(
                    "layered graphs need --n and --max-mult of at least 1".into(),
                ));
            }
            let (sizes, num) = gen.layered_shape(n);
            write_layered(&gen.layered(sizes, num, 8, max_mult))
        }
    };
    r.raw(&text);
    Ok(())
}
