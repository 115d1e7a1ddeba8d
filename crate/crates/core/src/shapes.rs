//! Counting occurrences of 4-patterns by shape in a divided instance, for
//! every proper shape except the 4-partite one.
//!
//! The eighteen shapes fall into three families:
//!
//! * product shapes (`3001`, `2002` and their images), where the points sit in
//!   two diagonal regions and the count factorises;
//! * the `1102` family (eight orientations), counted by one canonical routine
//!   on the eight transformed instances;
//! * the `1201` family (four orientations), whose canonical form is fixed by
//!   the transpose, so the four transpose-free symmetries suffice.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::instance::{Instance, Orientation};
use crate::perm::{order_index, Count, Pattern, PlaneDivision, PointSet, Shape};
use crate::range::Fenwick;
use crate::small::{small_profile_with, weighted_pair_matrix_with, SmallProfile};

const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;

pub const CANONICAL_1102: Shape = Shape::of([1, 1, 0, 2]);
pub const CANONICAL_1201: Shape = Shape::of([1, 2, 0, 1]);

/// The six product shapes.
pub const PRODUCT_SHAPES: [Shape; 6] = [
    Shape::of([3, 0, 0, 1]),
    Shape::of([2, 0, 0, 2]),
    Shape::of([1, 0, 0, 3]),
    Shape::of([0, 3, 1, 0]),
    Shape::of([0, 2, 2, 0]),
    Shape::of([0, 1, 3, 0]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeFamily {
    Product,
    Cross1102,
    Cross1201,
    FourPartite,
}

/// Family of a proper shape, with an orientation taking it to the family's
/// canonical member. `None` for non-proper shapes.
pub fn family_of(shape: &Shape) -> Option<(ShapeFamily, Orientation)> {
    if !shape.is_proper() {
        return None;
    }
    if shape.is_four_partite() {
        return Some((ShapeFamily::FourPartite, Orientation::IDENTITY));
    }
    if PRODUCT_SHAPES.contains(shape) {
        return Some((ShapeFamily::Product, Orientation::IDENTITY));
    }
    for o in Orientation::all() {
        let t = o.apply_shape(shape);
        if t == CANONICAL_1102 {
            return Some((ShapeFamily::Cross1102, o));
        }
        if t == CANONICAL_1201 {
            return Some((ShapeFamily::Cross1201, o));
        }
    }
    unreachable!("every proper shape belongs to a family")
}

/// Reusable buffers for the per-instance counters.
#[derive(Debug, Default)]
pub struct ShapeScratch {
    region_by_y: Vec<u8>,
    rank_by_y: Vec<u32>,
    tl_below: Vec<u32>,
    seq: [Vec<u32>; 4],
    prefix: [Vec<u64>; 2],
    suffix: [Vec<u64>; 2],
    feats: Vec<[u64; 4]>,
    fw: Fenwick<u32>,
    fw4: Fenwick<[u64; 4]>,
    moved: Instance,
}

impl ShapeScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Per-region rank tables and the region sequences in `x` order.
    fn prepare(&mut self, inst: &Instance) {
        let s = inst.len();
        self.region_by_y.resize(s, 0);
        self.rank_by_y.resize(s, 0);
        self.tl_below.resize(s, 0);
        for i in 0..s {
            self.region_by_y[inst.ys[i] as usize] = inst.region(i).slot() as u8;
        }
        let mut cnt = [0u32; 4];
        for y in 0..s {
            let r = self.region_by_y[y] as usize;
            self.tl_below[y] = cnt[TL];
            self.rank_by_y[y] = cnt[r];
            cnt[r] += 1;
        }
        for v in &mut self.seq {
            v.clear();
        }
        for &y in &inst.ys {
            let y = y as usize;
            self.seq[self.region_by_y[y] as usize].push(self.rank_by_y[y]);
        }
    }
}

fn pattern_tables() -> &'static [[usize; 24]; 8] {
    static TABLES: OnceLock<[[usize; 24]; 8]> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut t = [[0; 24]; 8];
        for (k, o) in Orientation::all().enumerate() {
            t[k] = o.pattern_table();
        }
        t
    })
}

/// Adds the product-shape counts of all 24 patterns. Expects `prepare`.
fn product_counts(sc: &mut ShapeScratch, out: &mut [Count; 24], only: Option<&Shape>) {
    let prof: [SmallProfile; 4] =
        std::array::from_fn(|r| small_profile_with(&sc.seq[r], &mut sc.fw));
    for (idx, p) in Pattern::all(4).enumerate() {
        let v = p.values();
        for k in 1..4usize {
            // TL holds the first k positions and the top k values
            if v[..k].iter().all(|&x| x as usize > 4 - k) {
                let shape = Shape::of([k as u8, 0, 0, 4 - k as u8]);
                if only.is_none_or(|s| *s == shape) {
                    out[idx] += prof[TL].get(&v[..k]) * prof[BR].get(&v[k..]);
                }
            }
            // BL holds the first k positions and the bottom k values
            if v[..k].iter().all(|&x| x as usize <= k) {
                let shape = Shape::of([0, 4 - k as u8, k as u8, 0]);
                if only.is_none_or(|s| *s == shape) {
                    out[idx] += prof[BL].get(&v[..k]) * prof[TR].get(&v[k..]);
                }
            }
        }
    }
}

/// Occurrences with one point in TL, one in TR and two in BR, by pattern of
/// `inst`. Expects `prepare(inst)`.
fn canonical_1102(inst: &Instance, sc: &mut ShapeScratch, out: &mut [Count; 24]) {
    let br = &sc.seq[BR];
    let m = br.len();
    let tl_total = sc.seq[TL].len() as u64;
    if m < 2 || tl_total == 0 || sc.seq[TR].is_empty() {
        return;
    }
    sc.fw.reset(m);
    for v in sc.prefix.iter_mut().chain(sc.suffix.iter_mut()) {
        v.clear();
        v.resize(m + 1, 0);
    }
    // pairs inside the first j BR points (prefix) and the last m-j (suffix),
    // split by orientation 12 / 21
    for (j, &r) in br.iter().enumerate() {
        let lu = sc.fw.prefix(r as usize) as u64;
        sc.fw.add(r as usize, 1);
        let ld = j as u64 - lu;
        let rd = r as u64 - lu;
        let ru = (m - 1 - j) as u64 - rd;
        sc.prefix[0][j + 1] = sc.prefix[0][j] + lu;
        sc.prefix[1][j + 1] = sc.prefix[1][j] + ld;
        sc.suffix[0][j] = ru;
        sc.suffix[1][j] = rd;
    }
    for o in 0..2 {
        for j in (0..m).rev() {
            sc.suffix[o][j] += sc.suffix[o][j + 1];
        }
    }
    let total = [sc.prefix[0][m], sc.prefix[1][m]];
    // acc[q above p][orientation][p left of pair, p between, p right of pair]
    let mut acc = [[[0 as Count; 3]; 2]; 2];
    let mut seen_br = 0usize;
    for i in inst.nl..inst.len() {
        let y = inst.ys[i] as usize;
        if y < inst.nb {
            seen_br += 1;
            continue;
        }
        let below = sc.tl_below[y] as u64;
        let q = [below, tl_total - below];
        for o in 0..2 {
            let left = sc.prefix[o][seen_br];
            let right = sc.suffix[o][seen_br];
            let pairs = [right, total[o] - left - right, left];
            for a in 0..2 {
                for c in 0..3 {
                    acc[a][o][c] += q[a] as Count * pairs[c] as Count;
                }
            }
        }
    }
    for (a, (qv, pv)) in [(3u8, 4u8), (4, 3)].into_iter().enumerate() {
        for (o, (cv, dv)) in [(1u8, 2u8), (2, 1)].into_iter().enumerate() {
            let seqs = [[qv, pv, cv, dv], [qv, cv, pv, dv], [qv, cv, dv, pv]];
            for (c, w) in seqs.iter().enumerate() {
                out[order_index(w)] += acc[a][o][c];
            }
        }
    }
}

/// Occurrences with one point in TL, two in TR and one in BR, by pattern of
/// `inst`. Expects `prepare(inst)`.
fn canonical_1201(inst: &Instance, sc: &mut ShapeScratch, out: &mut [Count; 24]) {
    let tl = sc.seq[TL].len() as i128;
    let brn = sc.seq[BR].len() as i128;
    if tl == 0 || brn == 0 || sc.seq[TR].len() < 2 {
        return;
    }
    sc.feats.clear();
    let mut seen_br = 0u64;
    for i in inst.nl..inst.len() {
        let y = inst.ys[i] as usize;
        if y < inst.nb {
            seen_br += 1;
        } else {
            let q = sc.tl_below[y] as u64;
            sc.feats.push([1, q, seen_br, q * seen_br]);
        }
    }
    let m = weighted_pair_matrix_with(&sc.seq[TR], &sc.feats, &mut sc.fw4);
    const ONE: usize = 0;
    const Q: usize = 1;
    const R: usize = 2;
    const QR: usize = 3;
    for (o, mo) in m.iter().enumerate() {
        let s = |u: usize, v: usize| mo[u][v] as i128;
        // (below | between | above) x (r left | between | right), see the
        // factorisations q(lo, hi) * r(a, b)
        let mut c = [[0i128; 3]; 3];
        if o == 0 {
            // a is the lower point
            c[0][0] = s(QR, ONE);
            c[0][1] = s(Q, R) - s(QR, ONE);
            c[0][2] = brn * s(Q, ONE) - s(Q, R);
            c[1][0] = s(R, Q) - s(QR, ONE);
            c[1][2] = brn * (s(ONE, Q) - s(Q, ONE)) - s(ONE, QR) + s(Q, R);
            c[2][0] = tl * s(R, ONE) - s(R, Q);
            c[2][1] = tl * (s(ONE, R) - s(R, ONE)) - s(ONE, QR) + s(R, Q);
            c[2][2] = tl * brn * s(ONE, ONE) - tl * s(ONE, R) - brn * s(ONE, Q) + s(ONE, QR);
        } else {
            // b is the lower point
            c[0][0] = s(R, Q);
            c[0][1] = s(ONE, QR) - s(R, Q);
            c[0][2] = brn * s(ONE, Q) - s(ONE, QR);
            c[1][0] = s(QR, ONE) - s(R, Q);
            c[1][2] = brn * (s(Q, ONE) - s(ONE, Q)) - s(Q, R) + s(ONE, QR);
            c[2][0] = tl * s(R, ONE) - s(QR, ONE);
            c[2][1] = tl * (s(ONE, R) - s(R, ONE)) - s(Q, R) + s(QR, ONE);
            c[2][2] = tl * brn * s(ONE, ONE) - tl * s(ONE, R) - brn * s(Q, ONE) + s(Q, R);
        }
        let rest: i128 = c.iter().flatten().sum();
        c[1][1] = tl * brn * s(ONE, ONE) - rest;
        debug_assert_eq!(
            c[1][1],
            if o == 0 {
                s(ONE, QR) - s(R, Q) - s(Q, R) + s(QR, ONE)
            } else {
                s(Q, R) - s(QR, ONE) - s(ONE, QR) + s(R, Q)
            }
        );
        for (qc, (qv, lo, hi)) in [(2u8, 3u8, 4u8), (3, 2, 4), (4, 2, 3)]
            .into_iter()
            .enumerate()
        {
            let (av, bv) = if o == 0 { (lo, hi) } else { (hi, lo) };
            let seqs = [[qv, 1, av, bv], [qv, av, 1, bv], [qv, av, bv, 1]];
            for (rc, w) in seqs.iter().enumerate() {
                debug_assert!(c[qc][rc] >= 0);
                out[order_index(w)] += c[qc][rc] as Count;
            }
        }
    }
}

/// Adds, for all 24 patterns, the number of occurrences in `inst` whose
/// shape is proper and not 4-partite.
pub fn easy_profile_into(inst: &Instance, sc: &mut ShapeScratch, out: &mut [Count; 24]) {
    sc.prepare(inst);
    product_counts(sc, out, None);
    let tables = pattern_tables();
    let mut moved = std::mem::take(&mut sc.moved);
    for (k, o) in Orientation::all().enumerate() {
        inst.transform_into(o, &mut moved);
        sc.prepare(&moved);
        let mut local = [0 as Count; 24];
        canonical_1102(&moved, sc, &mut local);
        if !o.transpose {
            canonical_1201(&moved, sc, &mut local);
        }
        for p in 0..24 {
            out[p] += local[tables[k][p]];
        }
    }
    sc.moved = moved;
}

/// All 24 easy-shape counts of a divided point set.
pub fn easy_profile(ps: &PointSet, div: &PlaneDivision) -> Result<[Count; 24]> {
    let inst = Instance::from_divided(ps, div)?;
    let mut out = [0; 24];
    easy_profile_into(&inst, &mut ShapeScratch::new(), &mut out);
    Ok(out)
}

fn require_four(p: &Pattern) -> Result<()> {
    if p.len() != 4 {
        return Err(Error::PatternLength {
            expected: "4",
            got: p.len(),
        });
    }
    Ok(())
}

fn oriented_count(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
    o: Orientation,
    counter: fn(&Instance, &mut ShapeScratch, &mut [Count; 24]),
) -> Result<Count> {
    require_four(p)?;
    let inst = Instance::from_divided(ps, div)?.transformed(o);
    let mut sc = ShapeScratch::new();
    sc.prepare(&inst);
    let mut out = [0; 24];
    counter(&inst, &mut sc, &mut out);
    Ok(out[o.apply_pattern(p).index()])
}

/// Occurrences of `p` with one of the six product shapes.
pub fn count_product_shape(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
    shape: &Shape,
) -> Result<Count> {
    require_four(p)?;
    if !PRODUCT_SHAPES.contains(shape) {
        return Err(Error::IncompatibleShape {
            shape: *shape,
            family: "product",
        });
    }
    let inst = Instance::from_divided(ps, div)?;
    let mut sc = ShapeScratch::new();
    sc.prepare(&inst);
    let mut out = [0; 24];
    product_counts(&mut sc, &mut out, Some(shape));
    Ok(out[p.index()])
}

/// Occurrences of `p` with `shape`, an orientation of `1102`.
pub fn count_shape_1102(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
    shape: &Shape,
) -> Result<Count> {
    match family_of(shape) {
        Some((ShapeFamily::Cross1102, o)) => oriented_count(ps, div, p, o, canonical_1102),
        _ => Err(Error::IncompatibleShape {
            shape: *shape,
            family: "1102",
        }),
    }
}

/// Occurrences of `p` with `shape`, an orientation of `1201`.
pub fn count_shape_1201(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
    shape: &Shape,
) -> Result<Count> {
    match family_of(shape) {
        Some((ShapeFamily::Cross1201, o)) => oriented_count(ps, div, p, o, canonical_1201),
        _ => Err(Error::IncompatibleShape {
            shape: *shape,
            family: "1201",
        }),
    }
}

/// Occurrences of `p` with any proper shape other than `1111`.
pub fn count_shape(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
    shape: &Shape,
) -> Result<Count> {
    match family_of(shape) {
        Some((ShapeFamily::Product, _)) => count_product_shape(ps, div, p, shape),
        Some((ShapeFamily::Cross1102, _)) => count_shape_1102(ps, div, p, shape),
        Some((ShapeFamily::Cross1201, _)) => count_shape_1201(ps, div, p, shape),
        _ => Err(Error::IncompatibleShape {
            shape: *shape,
            family: "easy",
        }),
    }
}

/// Σ over every proper shape other than `1111` of the occurrences of `p`.
pub fn count_all_easy_shapes(ps: &PointSet, div: &PlaneDivision, p: &Pattern) -> Result<Count> {
    require_four(p)?;
    Ok(easy_profile(ps, div)?[p.index()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{brute_count_shape, brute_shape_table, Permutation};

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn divided(v: &[u32], x: i64, y: i64) -> (PointSet, PlaneDivision) {
        (
            Permutation::new(v.to_vec()).unwrap().points(),
            PlaneDivision::after(x, y),
        )
    }

    #[test]
    fn families_cover_proper_shapes() {
        let mut counts = [0; 4];
        for s in Shape::all() {
            if let Some((f, o)) = family_of(&s) {
                counts[f as usize] += 1;
                match f {
                    ShapeFamily::Cross1102 => assert_eq!(o.apply_shape(&s), CANONICAL_1102),
                    ShapeFamily::Cross1201 => assert_eq!(o.apply_shape(&s), CANONICAL_1201),
                    _ => {}
                }
            }
        }
        assert_eq!(counts, [6, 8, 4, 1]);
    }

    #[test]
    fn product_examples() {
        let (ps, div) = divided(&[2, 1, 4, 3], 2, 2);
        let s = Shape::of([0, 2, 2, 0]);
        assert_eq!(count_product_shape(&ps, &div, &pat("2143"), &s).unwrap(), 1);
        assert_eq!(count_product_shape(&ps, &div, &pat("1234"), &s).unwrap(), 0);
        let (ps, div) = divided(&[1, 2, 3, 4, 5, 6, 7, 8], 4, 4);
        let s = Shape::of([0, 3, 1, 0]);
        assert_eq!(
            count_product_shape(&ps, &div, &pat("1234"), &s).unwrap(),
            16
        );
        assert!(count_product_shape(&ps, &div, &pat("1234"), &CANONICAL_1102).is_err());
    }

    #[test]
    fn minimal_witnesses() {
        // 2413 split after x = 1 and y = 2
        let (ps, div) = divided(&[2, 4, 1, 3], 1, 2);
        let table = brute_shape_table(&ps, &div).unwrap();
        assert_eq!(table.len(), 1);
        let (shape, counts) = table[0];
        assert_eq!(shape, Shape::of([0, 2, 1, 1]));
        assert_eq!(
            count_shape_1102(&ps, &div, &pat("2413"), &shape).unwrap(),
            counts[pat("2413").index()]
        );
        assert_eq!(
            count_shape_1102(&ps, &div, &pat("2413"), &shape).unwrap(),
            1
        );

        // q and r both between a and b
        let (ps, div) = divided(&[3, 4, 1, 2], 1, 1);
        let shape = Shape::of([1, 2, 0, 1]);
        assert_eq!(
            count_shape_1201(&ps, &div, &pat("3412"), &shape).unwrap(),
            1
        );
        assert_eq!(
            brute_count_shape(&ps, &div, &pat("3412"), &shape).unwrap(),
            1
        );
    }

    #[test]
    fn empty_region_gives_zero() {
        let (ps, div) = divided(&[1, 2, 3, 4, 5], 3, 3);
        for s in Shape::all().filter(|s| s.is_proper() && !s.is_four_partite()) {
            for p in Pattern::all(4) {
                let got = count_shape(&ps, &div, &p, &s).unwrap();
                assert_eq!(got, brute_count_shape(&ps, &div, &p, &s).unwrap());
            }
        }
        let (ps, div) = divided(&[1, 3, 2, 4], 2, 2);
        assert_eq!(count_all_easy_shapes(&ps, &div, &pat("1324")).unwrap(), 0);
        let (ps, div) = divided(&[1, 3, 2, 4], 0, 0);
        assert_eq!(easy_profile(&ps, &div).unwrap(), [0; 24]);
    }

    #[test]
    fn every_shape_matches_brute_force_on_all_small_permutations() {
        use itertools::Itertools;
        for n in 4..=7u32 {
            for v in (1..=n).permutations(n as usize) {
                let perm = Permutation::new(v).unwrap();
                let ps = perm.points();
                let mid = n as i64 / 2;
                let div = PlaneDivision::after(mid, (n as i64 + 1) / 2);
                let easy = easy_profile(&ps, &div).unwrap();
                let mut expect = [0; 24];
                for (shape, counts) in brute_shape_table(&ps, &div).unwrap() {
                    if shape.is_proper() && !shape.is_four_partite() {
                        for i in 0..24 {
                            expect[i] += counts[i];
                        }
                    }
                }
                assert_eq!(easy, expect, "{perm}");
            }
        }
    }
}
