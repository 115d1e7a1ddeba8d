use itertools::Itertools;
use proptest::prelude::*;

use permpat::{
    binomial, brute_count_c4, brute_count_pattern, brute_count_shape, brute_profile,
    codegree_pair_sum, count_4partite, count_c4_layered, count_c4_undirected, count_patterns4_with,
    count_small_pattern, full_profile4, layered_to_pattern_instances, normalize_to_1324,
    pattern_instance_to_multigraph, CircleLayeredMultigraph, Count, LayeredEdge, Pattern,
    Permutation, PlaneDivision, PointSet, ProfileOptions, RangeCounter, Shape, UndirectedGraph,
    WeightedPoint,
};

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

fn divided(max: usize) -> impl Strategy<Value = (PointSet, PlaneDivision)> {
    permutation(max).prop_flat_map(|p| {
        let n = p.len() as i64;
        (Just(p), 0..=n, 0..=n).prop_map(|(p, v, h)| (p.points(), PlaneDivision::after(v, h)))
    })
}

fn graph(max: usize) -> impl Strategy<Value = UndirectedGraph> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &b)| b)
                .map(|(&e, _)| e)
                .collect();
            UndirectedGraph::new(n, edges).unwrap()
        })
    })
}

fn layered(max: usize, max_mult: u64) -> impl Strategy<Value = CircleLayeredMultigraph> {
    proptest::array::uniform4(1..=max).prop_flat_map(move |sizes| {
        let slots: Vec<(u8, u32, u32)> = (0..4u8)
            .flat_map(|l| {
                let (a, b) = (sizes[l as usize], sizes[(l as usize + 1) % 4]);
                (0..a as u32).flat_map(move |u| (0..b as u32).map(move |v| (l, u, v)))
            })
            .collect();
        let k = slots.len();
        proptest::collection::vec(0..=max_mult, k).prop_map(move |mults| {
            let edges = slots
                .iter()
                .zip(&mults)
                .filter(|(_, &m)| m > 0)
                .map(|(&(l, u, v), &m)| LayeredEdge::new(l, u, v, m))
                .collect();
            CircleLayeredMultigraph::new(sizes, edges).unwrap()
        })
    })
}

type Relabel = fn(&Pattern) -> Pattern;

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn inversions(p: &Permutation) -> Count {
    let v = p.values();
    (0..v.len())
        .tuple_combinations()
        .filter(|&(i, j)| v[i] > v[j])
        .count() as Count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_sums_to_binomial(p in permutation(60)) {
        let prof = full_profile4(&p).unwrap();
        prop_assert_eq!(prof.total(), binomial(p.len() as u64, 4));
    }

    #[test]
    fn profile_matches_brute_force(p in permutation(24)) {
        let prof = full_profile4(&p).unwrap();
        prop_assert_eq!(prof.counts.to_vec(), brute_profile(p.values(), 4));
    }

    #[test]
    fn general_and_direct_routes_agree(p in permutation(50)) {
        let all: Vec<Pattern> = Pattern::all(4).collect();
        let general = count_patterns4_with(&p, &all, &ProfileOptions { direct_below: 0 }).unwrap();
        let direct = count_patterns4_with(&p, &all, &ProfileOptions { direct_below: usize::MAX }).unwrap();
        prop_assert_eq!(general, direct);
    }

    #[test]
    fn inversions_are_21_occurrences(p in permutation(80)) {
        let inv = count_small_pattern(&p, &pat("21")).unwrap();
        prop_assert_eq!(inv, inversions(&p));
        prop_assert_eq!(inv + count_small_pattern(&p, &pat("12")).unwrap(), binomial(p.len() as u64, 2));
    }

    #[test]
    fn short_patterns_match_brute_force(p in permutation(30)) {
        for k in 1..=3 {
            for q in Pattern::all(k) {
                prop_assert_eq!(count_small_pattern(&p, &q).unwrap(), brute_count_pattern(&p, &q), "{}", q);
            }
        }
    }

    #[test]
    fn monotone_subsequences_are_unavoidable(p in permutation(30)) {
        // any sequence longer than 9 has a monotone subsequence of length 4
        let mono = |a: &str, b: &str| {
            count_small_pattern(&p, &pat(a)).unwrap_or_else(|_| brute_count_pattern(&p, &pat(a)))
                + count_small_pattern(&p, &pat(b)).unwrap_or_else(|_| brute_count_pattern(&p, &pat(b)))
        };
        if p.len() >= 5 {
            prop_assert!(mono("123", "321") > 0);
        }
        if p.len() >= 10 {
            let prof = full_profile4(&p).unwrap();
            prop_assert!(prof.get(&pat("1234")) + prof.get(&pat("4321")) > 0);
        }
    }

    #[test]
    fn symmetries_permute_the_profile(p in permutation(40)) {
        let prof = full_profile4(&p).unwrap();
        let maps: [(Permutation, Relabel); 3] = [
            (p.reversed(), |q| q.reversed()),
            (p.complemented(), |q| q.complemented()),
            (p.inverse(), |q| q.inverse()),
        ];
        for (image, f) in maps {
            let moved = full_profile4(&image).unwrap();
            for q in Pattern::all(4) {
                prop_assert_eq!(moved.get(&f(&q)), prof.get(&q));
            }
        }
    }

    #[test]
    fn range_sums_are_translation_invariant_and_additive(
        pts in proptest::collection::btree_map(-50i64..50, (-50i64..50, 0u64..5), 0..40),
        dx in -1000i64..1000,
        dy in -1000i64..1000,
        q in (-60i64..60, -60i64..60, -60i64..60, -60i64..60, -60i64..60),
    ) {
        // distinct x from the map keys, distinct y by dropping repeats
        let mut seen = std::collections::BTreeSet::new();
        let base: Vec<WeightedPoint> = pts
            .iter()
            .filter(|(_, (y, _))| seen.insert(*y))
            .map(|(&x, &(y, w))| WeightedPoint::new(x, y, w))
            .collect();
        let moved: Vec<WeightedPoint> = base.iter().map(|p| WeightedPoint::new(p.x + dx, p.y + dy, p.w)).collect();
        let a = RangeCounter::new(&base).unwrap();
        let b = RangeCounter::new(&moved).unwrap();
        let (x0, x1, y0, y1, cut) = q;
        let (xlo, xhi) = (x0.min(x1), x0.max(x1));
        let (ylo, yhi) = (y0.min(y1), y0.max(y1));
        let s = a.rect_sum(xlo, xhi, ylo, yhi).unwrap();
        prop_assert_eq!(s, b.rect_sum(xlo + dx, xhi + dx, ylo + dy, yhi + dy).unwrap());
        let naive: Count = base
            .iter()
            .filter(|p| (xlo..=xhi).contains(&p.x) && (ylo..=yhi).contains(&p.y))
            .map(|p| p.w as Count)
            .sum();
        prop_assert_eq!(s, naive);
        if (xlo..xhi).contains(&cut) {
            let split = a.rect_sum(xlo, cut, ylo, yhi).unwrap() + a.rect_sum(cut + 1, xhi, ylo, yhi).unwrap();
            prop_assert_eq!(s, split);
        }
        prop_assert!(a.rect_sum(xlo, xhi + 1, ylo, yhi).unwrap() >= s);
    }

    #[test]
    fn undirected_counters_agree(g in graph(9)) {
        let brute = brute_count_c4(&g);
        prop_assert_eq!(count_c4_undirected(&g), brute);
        let pairs = codegree_pair_sum(&g);
        prop_assert_eq!(pairs % 2, 0);
        prop_assert_eq!(pairs, 2 * brute);
        let padded = g.with_isolated(3);
        prop_assert_eq!(count_c4_undirected(&padded), brute);
        prop_assert_eq!(brute_count_c4(&padded), brute);
    }

    #[test]
    fn layered_counter_matches_brute_force(g in layered(5, 4)) {
        prop_assert_eq!(count_c4_layered(&g), brute_count_c4(&g));
    }

    #[test]
    fn normalization_preserves_four_partite_counts((ps, div) in divided(14)) {
        let four = Shape::new(1, 1, 1, 1).unwrap();
        for p in Pattern::all(4).filter(|p| !p.is_trivial()) {
            let before = brute_count_shape(&ps, &div, &p, &four).unwrap();
            let (moved, d) = normalize_to_1324(&ps, &div, &p).unwrap();
            prop_assert_eq!(brute_count_shape(&moved, &d, &pat("1324"), &four).unwrap(), before);
            prop_assert_eq!(count_4partite(&ps, &div, &p).unwrap(), before);
        }
    }

    #[test]
    fn multigraph_edge_budget((ps, div) in divided(64)) {
        let g = pattern_instance_to_multigraph(&ps, &div).unwrap();
        let s = ps.len() as u64;
        // floor(log2 s) + 1
        let log = (64 - s.leading_zeros()) as u64;
        let contributions: u64 = g.edges().iter().map(|e| e.mult).sum();
        prop_assert!(contributions <= s * log * log, "{} > {}", contributions, s * log * log);
    }

    #[test]
    fn embedded_coordinates_are_distinct(g in layered(5, 1)) {
        for t in layered_to_pattern_instances(&g).unwrap() {
            let pts = t.points.points();
            prop_assert_eq!(pts.len(), g.edges().len());
            prop_assert!(pts.iter().map(|q| q.x).all_unique());
            prop_assert!(pts.iter().map(|q| q.y).all_unique());
            prop_assert!(pts.iter().all(|q| q.x != 0 && q.y != 0));
        }
    }
}
