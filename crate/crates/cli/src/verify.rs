//! Cross-checks of the fast routes against exhaustive counting.

use itertools::Itertools;
use permpat::{
    binomial, brute_count_c4, brute_count_shape, brute_profile, brute_shape_table,
    codegree_pair_sum, count_4partite, count_c4_layered, count_c4_undirected, count_shape,
    directed_c4_through_chain, full_profile4, layered_c4_by_splitting, layered_c4_through_patterns,
    normalize_to_1324, pattern_instance_to_multigraph, Count, Generator, Pattern, Permutation,
    PlaneDivision, PointSet, Shape, UndirectedGraph,
};

use crate::commands::random_digraph;
use crate::input::{write_edges, write_layered};
use crate::{CliError, Report, VerifyMode};

/// A mismatch, ranked by instance size.
struct Failure {
    size: usize,
    instance: String,
    detail: String,
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(
        &mut self,
        ok: bool,
        size: usize,
        instance: impl FnOnce() -> String,
        detail: impl FnOnce() -> String,
    ) {
        if !ok {
            self.failures.push(Failure {
                size,
                instance: instance(),
                detail: detail(),
            });
        }
    }
}

fn describe(ps: &PointSet, div: &PlaneDivision) -> String {
    let pts: Vec<String> = ps
        .points()
        .iter()
        .map(|q| format!("({},{})", q.x, q.y))
        .collect();
    format!(
        "points {} divided at x2={} y2={}",
        pts.join(" "),
        div.v2,
        div.h2
    )
}

fn profile_one(t: &mut Tally, perm: &Permutation) {
    t.checked += 1;
    let expected = brute_profile(perm.values(), 4);
    match full_profile4(perm) {
        Ok(prof) => {
            if let Some((p, c)) = prof
                .iter()
                .zip(&expected)
                .find(|((_, c), e)| c != *e)
                .map(|(pc, _)| pc)
            {
                t.check(
                    false,
                    perm.len(),
                    || perm.to_string(),
                    || format!("#{p} = {c}, brute force gives {}", expected[p.index()]),
                );
            }
        }
        Err(e) => t.check(false, perm.len(), || perm.to_string(), || e.to_string()),
    }
}

fn shapes_one(t: &mut Tally, ps: &PointSet, div: &PlaneDivision) {
    t.checked += 1;
    let table = brute_shape_table(ps, div).expect("points avoid the lines");
    for shape in Shape::all().filter(|s| s.is_proper()) {
        let expected = table
            .iter()
            .find(|(s, _)| *s == shape)
            .map_or([0; 24], |(_, c)| *c);
        for p in Pattern::all(4) {
            let got = if shape.is_four_partite() {
                if p.is_trivial() {
                    continue;
                }
                count_4partite(ps, div, &p)
            } else {
                count_shape(ps, div, &p, &shape)
            };
            let got = got.expect("valid instance");
            let want = expected[p.index()];
            if got != want {
                t.check(
                    false,
                    ps.len(),
                    || describe(ps, div),
                    || format!("shape {shape}, pattern {p}: {got}, brute force gives {want}"),
                );
                return;
            }
        }
    }
}

/// Every simple graph on `n` labelled nodes.
fn all_graphs(n: usize) -> impl Iterator<Item = UndirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        UndirectedGraph::new(n, edges).expect("distinct pairs")
    })
}

fn undirected_routes(t: &mut Tally, g: &UndirectedGraph) {
    t.checked += 1;
    let brute = brute_count_c4(g);
    let fast = count_c4_undirected(g);
    let pair_sum = codegree_pair_sum(g);
    t.check(
        fast == brute && pair_sum == 2 * brute,
        g.node_count(),
        || write_edges(g.node_count(), g.edges()),
        || format!("degree-ordered {fast}, pair sum {pair_sum}, brute force {brute}"),
    );
}

fn chain_one(t: &mut Tally, g: &UndirectedGraph) {
    t.checked += 1;
    let brute = brute_count_c4(g);
    let chained = permpat::undirected_c4_through_chain(g, count_c4_undirected);
    t.check(
        chained == brute,
        g.node_count(),
        || write_edges(g.node_count(), g.edges()),
        || format!("reduction chain {chained}, brute force {brute}"),
    );
}

fn four_partite_1324(ps: &PointSet, div: &PlaneDivision) -> Count {
    let p: Pattern = "1324".parse().expect("valid pattern");
    count_4partite(ps, div, &p).expect("valid instance")
}

fn default_n(mode: VerifyMode, exhaustive: bool) -> usize {
    match (mode, exhaustive) {
        (VerifyMode::Profile, true) => 7,
        (VerifyMode::Profile, false) => 100,
        (VerifyMode::Shapes, true) => 5,
        (VerifyMode::Shapes, false) => 40,
        (VerifyMode::Reductions, true) => 5,
        (VerifyMode::Reductions, false) => 25,
        (VerifyMode::Cycles, true) => 5,
        (VerifyMode::Cycles, false) => 30,
    }
}

pub fn run(
    mode: VerifyMode,
    n: Option<usize>,
    exhaustive: bool,
    seeds: Option<u64>,
    seed: u64,
    r: &mut Report,
) -> Result<(), CliError> {
    let n = n.unwrap_or_else(|| default_n(mode, exhaustive));
    let seeds = seeds.unwrap_or(100);
    let graph_modes = matches!(mode, VerifyMode::Reductions | VerifyMode::Cycles);
    if exhaustive && graph_modes && n > 6 {
        return Err(CliError::Usage(format!(
            "exhaustive graph checks go up to 6 nodes, got {n}"
        )));
    }
    if !exhaustive && matches!(mode, VerifyMode::Shapes) && n < 4 {
        return Err(CliError::Usage(
            "seeded shape checks need --n of at least 4".into(),
        ));
    }
    let mut t = Tally::default();
    match (mode, exhaustive) {
        (VerifyMode::Profile, true) => {
            for values in (1..=n as u32).permutations(n) {
                profile_one(&mut t, &Permutation::new(values).expect("a permutation"));
            }
        }
        (VerifyMode::Profile, false) => {
            for k in 0..seeds {
                profile_one(&mut t, &Generator::new(seed + k).permutation(n));
            }
        }
        (VerifyMode::Shapes, true) => {
            for values in (1..=n as u32).permutations(n) {
                let ps = Permutation::new(values).expect("a permutation").points();
                for v in 0..=n as i64 {
                    for h in 0..=n as i64 {
                        shapes_one(&mut t, &ps, &PlaneDivision::after(v, h));
                    }
                }
            }
        }
        (VerifyMode::Shapes, false) => {
            for k in 0..seeds {
                let mut gen = Generator::new(seed + k);
                let s = 4 + gen.upto(n as u64 - 4) as usize;
                let (ps, div) = gen.divided(s);
                shapes_one(&mut t, &ps, &div);
            }
        }
        (VerifyMode::Reductions, true) => {
            for g in all_graphs(n) {
                chain_one(&mut t, &g);
            }
        }
        (VerifyMode::Reductions, false) => {
            for k in 0..seeds {
                let mut gen = Generator::new(seed + k);
                let nn = 1 + gen.upto(n.max(1) as u64 - 1) as usize;
                let m = gen.upto(binomial(nn as u64, 2) as u64) as usize;
                chain_one(&mut t, &gen.graph(nn, m));

                t.checked += 1;
                let d = random_digraph(&mut gen, nn, m);
                let (brute, chained) = (
                    brute_count_c4(&d),
                    directed_c4_through_chain(&d, count_c4_undirected),
                );
                t.check(
                    chained == brute,
                    nn,
                    || write_edges(nn, d.arcs()),
                    || format!("directed chain {chained}, brute force {brute}"),
                );

                t.checked += 1;
                let (sizes, num) = gen.layered_shape(8);
                let g = gen.layered(sizes, num, 8, 7);
                let (brute, split) = (
                    brute_count_c4(&g),
                    layered_c4_by_splitting(&g, brute_count_c4),
                );
                t.check(
                    split == brute,
                    g.edges().len(),
                    || write_layered(&g),
                    || format!("split sum {split}, brute force {brute}"),
                );

                t.checked += 1;
                let s = 4 + gen.upto(36) as usize;
                let (ps, div) = gen.divided_inner(s);
                let p = Pattern::all(4)
                    .filter(|p| !p.is_trivial())
                    .nth(gen.upto(15) as usize)
                    .expect("16 patterns");
                let (norm, ndiv) = normalize_to_1324(&ps, &div, &p).expect("valid instance");
                let via = count_c4_layered(
                    &pattern_instance_to_multigraph(&norm, &ndiv).expect("valid instance"),
                );
                let four = Shape::new(1, 1, 1, 1).expect("a shape");
                let brute = brute_count_shape(&ps, &div, &p, &four).expect("valid instance");
                t.check(
                    via == brute,
                    s,
                    || describe(&ps, &div),
                    || format!("pattern {p}: multigraph {via}, brute force {brute}"),
                );

                t.checked += 1;
                let (sizes, num) = gen.layered_shape(6);
                let g = gen.layered(sizes, num, 8, 1);
                let brute = brute_count_c4(&g);
                let embedded =
                    layered_c4_through_patterns(&g, four_partite_1324).expect("a simple graph");
                t.check(
                    embedded == brute,
                    g.edges().len(),
                    || write_layered(&g),
                    || format!("signed pattern sum {embedded}, brute force {brute}"),
                );
            }
        }
        (VerifyMode::Cycles, true) => {
            for g in all_graphs(n) {
                undirected_routes(&mut t, &g);
            }
        }
        (VerifyMode::Cycles, false) => {
            for k in 0..seeds {
                let mut gen = Generator::new(seed + k);
                let nn = 1 + gen.upto(n.max(1) as u64 - 1) as usize;
                let num = 1 + gen.upto(6);
                undirected_routes(&mut t, &gen.erdos_renyi(nn, num, 8));

                t.checked += 1;
                let (sizes, num) = gen.layered_shape(8);
                let g = gen.layered(sizes, num, 8, 7);
                let (brute, fast) = (brute_count_c4(&g), count_c4_layered(&g));
                t.check(
                    fast == brute,
                    g.edges().len(),
                    || write_layered(&g),
                    || format!("path composition {fast}, brute force {brute}"),
                );
            }
        }
    }
    let name = format!("{mode:?}").to_lowercase();
    r.record("mode", &name);
    r.record("checked", t.checked);
    r.record("failures", t.failures.len());
    let Some(min) = t.failures.iter().min_by_key(|f| f.size) else {
        r.text(format!("verify {name}: PASS ({} checks)", t.checked));
        r.record("result", "PASS");
        return Ok(());
    };
    r.text(format!(
        "verify {name}: FAIL ({} of {} checks)",
        t.failures.len(),
        t.checked
    ));
    r.text("minimal failing instance:");
    r.text(min.instance.trim_end());
    r.text(&min.detail);
    r.record("result", "FAIL");
    r.record("minimal", min.instance.trim_end().replace('\n', "; "));
    r.record("detail", &min.detail);
    Err(CliError::Verification(format!(
        "{} mismatches",
        t.failures.len()
    )))
}
