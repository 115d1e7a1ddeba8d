//! Counting 4-patterns over the relevant pairs of base ranges.
//!
//! Every occurrence of a 4-pattern has a minimum base range on each axis;
//! dividing that pair of ranges at the midpoints of their children gives the
//! occurrence a proper shape. Summing the easy-shape counts and the 4-partite
//! counts over all relevant pairs counts every occurrence exactly once.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{count_c4_parts, LayeredScratch};
use crate::instance::Instance;
use crate::perm::{
    binomial, Count, Pattern, Permutation, PlaneDivision, Point, PointSet, Region, SignedCount,
};
use crate::reductions::MultigraphScratch;
use crate::shapes::{easy_profile_into, ShapeScratch};

/// An interval `lo..=hi` (1-based) covered by one node of the full binary
/// tree over the padded universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseRange {
    pub lo: usize,
    pub hi: usize,
}

impl BaseRange {
    /// The node at height `h` whose leftmost leaf is `c << h` (0-based).
    pub fn node(h: u32, c: usize) -> Self {
        BaseRange {
            lo: (c << h) + 1,
            hi: (c + 1) << h,
        }
    }

    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Doubled coordinate of the line between the two children.
    pub fn split2(&self) -> i64 {
        (2 * (self.lo + self.len() / 2) - 1) as i64
    }
}

/// A pair of base ranges with the points they jointly contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantPair {
    pub rx: BaseRange,
    pub ry: BaseRange,
    pub pts: PointSet,
}

impl RelevantPair {
    /// The division at the children midpoints of both ranges.
    pub fn division(&self) -> PlaneDivision {
        PlaneDivision::doubled(self.rx.split2(), self.ry.split2())
    }
}

fn tree_depth(n: usize) -> u32 {
    n.max(1).next_power_of_two().trailing_zeros()
}

/// All pairs of base ranges holding at least one point, ordered by
/// `(x node, y node)`. Every point lies in `(log2 n' + 1)^2` pairs.
pub fn relevant_pairs(perm: &Permutation) -> Vec<RelevantPair> {
    let depth = tree_depth(perm.len());
    let mut groups: BTreeMap<(u32, usize, u32, usize), Vec<Point>> = BTreeMap::new();
    for (i, &v) in perm.values().iter().enumerate() {
        let (x, y) = (i, v as usize - 1);
        for hx in 0..=depth {
            for hy in 0..=depth {
                groups
                    .entry((hx, x >> hx, hy, y >> hy))
                    .or_default()
                    .push(Point::new(x as i64 + 1, y as i64 + 1));
            }
        }
    }
    groups
        .into_iter()
        .map(|((hx, cx, hy, cy), pts)| RelevantPair {
            rx: BaseRange::node(hx, cx),
            ry: BaseRange::node(hy, cy),
            pts: PointSet::from_sorted_unchecked(pts),
        })
        .collect()
}

/// Streams the divided instances of a permutation: relevant pairs with at
/// least four points whose division puts points on both sides of both lines.
/// Works one `x` node at a time, splitting its points by `y` halves in the
/// manner of a wavelet tree, so memory stays linear.
#[derive(Debug, Default)]
struct Enumerator {
    xs: Vec<u32>,
    ys: Vec<u32>,
    ranks: Vec<u32>,
    tmp: Vec<(u32, u32, u32)>,
    inst: Instance,
}

impl Enumerator {
    fn x_nodes(n: usize) -> Vec<(u32, usize)> {
        let depth = tree_depth(n);
        let mut nodes = Vec::new();
        for h in (2..=depth).rev() {
            for c in 0..=(n.saturating_sub(1) >> h) {
                let lo = c << h;
                if n.min((c + 1) << h) - lo >= 4 {
                    nodes.push((h, c));
                }
            }
        }
        nodes
    }

    fn run_x(
        &mut self,
        ranks: &[u32],
        (h, c): (u32, usize),
        f: &mut dyn FnMut(BaseRange, BaseRange, &Instance),
    ) {
        let depth = tree_depth(ranks.len());
        let lo = c << h;
        let hi = ranks.len().min((c + 1) << h);
        self.xs.clear();
        self.xs.extend(lo as u32..hi as u32);
        self.ys.clear();
        self.ys.extend_from_slice(&ranks[lo..hi]);
        let mut order: Vec<u32> = (0..self.ys.len() as u32).collect();
        order.sort_unstable_by_key(|&i| self.ys[i as usize]);
        self.ranks.clear();
        self.ranks.resize(order.len(), 0);
        for (r, &i) in order.iter().enumerate() {
            self.ranks[i as usize] = r as u32;
        }
        let rx = BaseRange::node(h, c);
        let xmid = (lo + (1 << (h - 1))) as u32;
        self.split_y(rx, xmid, 0, self.xs.len(), depth, 0, f);
    }

    #[allow(clippy::too_many_arguments)]
    fn split_y(
        &mut self,
        rx: BaseRange,
        xmid: u32,
        a: usize,
        b: usize,
        hy: u32,
        cy: usize,
        f: &mut dyn FnMut(BaseRange, BaseRange, &Instance),
    ) {
        let s = b - a;
        if s < 4 || hy == 0 {
            return;
        }
        let ymid = ((cy << hy) + (1 << (hy - 1))) as u32;
        let nb = self.ys[a..b].iter().filter(|&&y| y < ymid).count();
        let nl = self.xs[a..b].partition_point(|&x| x < xmid);
        if nl > 0 && nl < s && nb > 0 && nb < s {
            self.inst.ys.clear();
            self.inst.ys.extend_from_slice(&self.ranks[a..b]);
            self.inst.nl = nl;
            self.inst.nb = nb;
            f(rx, BaseRange::node(hy, cy), &self.inst);
        }
        if nb >= 4 || s - nb >= 4 {
            // stable partition by the y half, rebasing upper ranks
            self.tmp.clear();
            for k in a..b {
                if self.ys[k] < ymid {
                    self.tmp.push((self.xs[k], self.ys[k], self.ranks[k]));
                }
            }
            for k in a..b {
                if self.ys[k] >= ymid {
                    self.tmp
                        .push((self.xs[k], self.ys[k], self.ranks[k] - nb as u32));
                }
            }
            for (k, &(x, y, r)) in (a..b).zip(self.tmp.iter()) {
                self.xs[k] = x;
                self.ys[k] = y;
                self.ranks[k] = r;
            }
            self.split_y(rx, xmid, a, a + nb, hy - 1, 2 * cy, f);
            self.split_y(rx, xmid, a + nb, b, hy - 1, 2 * cy + 1, f);
        }
    }
}

/// Calls `f` on every divided instance of `perm` that can host a
/// proper-shape occurrence, in a fixed order.
pub fn for_each_instance(perm: &Permutation, mut f: impl FnMut(BaseRange, BaseRange, &Instance)) {
    let ranks = perm.ranks();
    let mut en = Enumerator::default();
    for node in Enumerator::x_nodes(ranks.len()) {
        en.run_x(&ranks, node, &mut f);
    }
}

/// Part reversals that carry 4-partite occurrences of `1324` to those of a
/// non-trivial pattern (and back; each is an involution).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Reversals {
    pub left: bool,
    pub right: bool,
    pub bottom: bool,
    pub top: bool,
}

impl Reversals {
    /// Effect on a pattern: `left` swaps its first two entries, `right` the
    /// last two, `bottom` the values 1 and 2, `top` the values 3 and 4.
    pub fn apply_pattern(&self, p: &Pattern) -> Pattern {
        let mut v = [0u8; 4];
        v.copy_from_slice(p.values());
        if self.left {
            v.swap(0, 1);
        }
        if self.right {
            v.swap(2, 3);
        }
        for x in &mut v {
            *x = match *x {
                1 | 2 if self.bottom => 3 - *x,
                3 | 4 if self.top => 7 - *x,
                o => o,
            };
        }
        Pattern::new(&v).expect("still a permutation")
    }

    /// Reverses parts of a rank-space instance into `out`.
    #[cfg(test)]
    pub(crate) fn apply_instance(&self, inst: &Instance, out: &mut Instance) {
        let (s, nl, nb) = (inst.len(), inst.nl, inst.nb);
        out.ys.clear();
        out.ys.extend_from_slice(&inst.ys);
        out.nl = nl;
        out.nb = nb;
        if self.left {
            out.ys[..nl].reverse();
        }
        if self.right {
            out.ys[nl..].reverse();
        }
        if self.bottom || self.top {
            let (nb32, s32) = (nb as u32, s as u32);
            for y in &mut out.ys {
                if *y < nb32 {
                    if self.bottom {
                        *y = nb32 - 1 - *y;
                    }
                } else if self.top {
                    *y = nb32 + s32 - 1 - *y;
                }
            }
        }
    }
}

/// The reversals relating a non-trivial pattern to `1324`.
pub fn reversals_for(p: &Pattern) -> Result<Reversals> {
    if p.len() != 4 {
        return Err(Error::PatternLength {
            expected: "4",
            got: p.len(),
        });
    }
    if p.is_trivial() {
        return Err(Error::TrivialPattern(*p));
    }
    let v = p.values();
    let (low, high) = if v[0] <= 2 {
        (v[0], v[1])
    } else {
        (v[1], v[0])
    };
    Ok(Reversals {
        bottom: low == 2,
        top: high == 4,
        left: v[0] >= 3,
        right: v[2] >= 3,
    })
}

/// Reverses parts of the divided point set so that 4-partite occurrences of
/// `1324` in the result correspond one to one to those of `p` in the input.
/// Reversing the left part maps `(x, y)` to `(x1 + x2 − x, y)` where `x1`
/// and `x2` are the extreme `x` values of that part, and likewise for the
/// others.
pub fn normalize_to_1324(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
) -> Result<(PointSet, PlaneDivision)> {
    let rev = reversals_for(p)?;
    div.check(ps)?;
    let left = |q: &Point| 2 * q.x < div.v2;
    let bottom = |q: &Point| 2 * q.y < div.h2;
    let span = |it: &mut dyn Iterator<Item = i64>| -> i64 {
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for v in it {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        lo.wrapping_add(hi)
    };
    let pts = ps.points();
    let xl = span(&mut pts.iter().filter(|q| left(q)).map(|q| q.x));
    let xr = span(&mut pts.iter().filter(|q| !left(q)).map(|q| q.x));
    let yb = span(&mut pts.iter().filter(|q| bottom(q)).map(|q| q.y));
    let yt = span(&mut pts.iter().filter(|q| !bottom(q)).map(|q| q.y));
    let moved = pts
        .iter()
        .map(|q| {
            let x = match (left(q), rev.left, rev.right) {
                (true, true, _) => xl - q.x,
                (false, _, true) => xr - q.x,
                _ => q.x,
            };
            let y = match (bottom(q), rev.bottom, rev.top) {
                (true, true, _) => yb - q.y,
                (false, _, true) => yt - q.y,
                _ => q.y,
            };
            Point::new(x, y)
        })
        .collect();
    Ok((PointSet::new(moved)?, *div))
}

/// Reusable buffers for per-instance counting.
#[derive(Debug, Default)]
pub struct CountScratch {
    shapes: ShapeScratch,
    graph: MultigraphScratch,
    cycles: LayeredScratch,
}

impl Reversals {
    /// Which variant of each layer of the multigraph realises these
    /// reversals: bit 0 reverses the layer's from part, bit 1 its to part.
    fn layer_variants(&self) -> [usize; 4] {
        let b = |x: bool| x as usize;
        [
            b(self.top) | b(self.right) << 1,
            b(self.right) | b(self.bottom) << 1,
            b(self.bottom) | b(self.left) << 1,
            b(self.left) | b(self.top) << 1,
        ]
    }
}

/// Number of 4-partite occurrences of the non-trivial pattern with the given
/// reversals in a rank-space instance loaded into `sc.graph`.
fn four_partite_loaded(rev: &Reversals, sc: &mut CountScratch) -> Count {
    let variants = rev.layer_variants();
    for (l, &v) in variants.iter().enumerate() {
        sc.graph.ensure(l, v);
    }
    count_c4_parts(sc.graph.sizes(), sc.graph.parts(variants), &mut sc.cycles)
}

/// 4-partite occurrences of a non-trivial pattern, through the layered
/// multigraph of the normalized instance.
pub fn count_4partite(ps: &PointSet, div: &PlaneDivision, p: &Pattern) -> Result<Count> {
    let rev = reversals_for(p)?;
    let inst = Instance::from_divided(ps, div)?;
    let mut sc = CountScratch::default();
    sc.graph.load(&inst);
    Ok(four_partite_loaded(&rev, &mut sc))
}

/// 4-partite occurrences of `p` by inclusion-exclusion over the regions:
/// `Σ_S (−1)^|S| · counter(points in the union of S)`. The term for all
/// four regions is positive and the empty union contributes nothing.
pub fn four_partite_by_inclusion_exclusion(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
    counter: impl Fn(&PointSet, &Pattern) -> Count,
) -> Result<Count> {
    div.check(ps)?;
    let mut acc: SignedCount = 0;
    for subset in 1u8..16 {
        let sub = ps.filter(|q| {
            let r: Region = div.region_of(q).expect("checked");
            subset >> r.slot() & 1 == 1
        });
        let term = counter(&sub, p) as SignedCount;
        acc += if subset.count_ones() % 2 == 0 {
            term
        } else {
            -term
        };
    }
    debug_assert!(acc >= 0);
    Ok(acc as Count)
}

/// Tuning for [`count_patterns4_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Instances with fewer points are counted by enumerating their 4-point
    /// subsets instead of through the shape counters and multigraphs. Zero
    /// sends every instance through the general route.
    pub direct_below: usize,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions { direct_below: 16 }
    }
}

/// Lexicographic index of the pattern of four distinct values.
#[inline]
fn index4(a: u32, b: u32, c: u32, d: u32) -> usize {
    let l = |x: u32, y: u32| (x < y) as usize;
    (l(b, a) + l(c, a) + l(d, a)) * 6 + (l(c, b) + l(d, b)) * 2 + l(d, c)
}

/// Proper-shape occurrences in an instance by enumeration of its 4-point
/// subsets; 4-partite occurrences count only for patterns in `wanted`.
fn direct_instance(inst: &Instance, wanted: &[bool; 24], acc: &mut [Count; 24]) {
    let (s, nl, nb) = (inst.len(), inst.nl, inst.nb as u32);
    let ys = &inst.ys;
    // only subsets starting on the left and ending on the right are proper
    for i in 0..nl {
        for j in i + 1..s {
            for k in j + 1..s {
                for l in (k + 1).max(nl)..s {
                    let (a, b, c, d) = (ys[i], ys[j], ys[k], ys[l]);
                    let low = a.min(b).min(c.min(d));
                    let high = a.max(b).max(c.max(d));
                    if low >= nb || high < nb {
                        continue;
                    }
                    let idx = index4(a, b, c, d);
                    // one point in each region
                    let quartered =
                        j < nl && k >= nl && (a < nb) != (b < nb) && (c < nb) != (d < nb);
                    if !quartered || wanted[idx] {
                        acc[idx] += 1;
                    }
                }
            }
        }
    }
}

/// Counts of all 24 patterns restricted to the given ones: easy shapes are
/// counted for every pattern at once, the 4-partite term only for the
/// requested non-trivial patterns.
fn accumulate_instance(
    inst: &Instance,
    nontrivial: &[(usize, Reversals)],
    wanted: &[bool; 24],
    opts: &ProfileOptions,
    sc: &mut CountScratch,
    acc: &mut [Count; 24],
) {
    if inst.len() < opts.direct_below {
        direct_instance(inst, wanted, acc);
        return;
    }
    easy_profile_into(inst, &mut sc.shapes, acc);
    if nontrivial.is_empty() {
        return;
    }
    sc.graph.load(inst);
    for (idx, rev) in nontrivial {
        acc[*idx] += four_partite_loaded(rev, sc);
    }
}

fn wanted_of(nontrivial: &[(usize, Reversals)]) -> [bool; 24] {
    let mut w = [false; 24];
    for (i, _) in nontrivial {
        w[*i] = true;
    }
    w
}

/// Per-instance counts (easy shapes plus requested 4-partite terms) for one
/// divided instance. Exposed for instrumented checks.
pub fn instance_profile(inst: &Instance, patterns: &[Pattern]) -> Result<[Count; 24]> {
    let nontrivial = nontrivial_of(patterns)?;
    let mut acc = [0; 24];
    let opts = ProfileOptions { direct_below: 0 };
    accumulate_instance(
        inst,
        &nontrivial,
        &wanted_of(&nontrivial),
        &opts,
        &mut CountScratch::default(),
        &mut acc,
    );
    Ok(acc)
}

fn nontrivial_of(patterns: &[Pattern]) -> Result<Vec<(usize, Reversals)>> {
    let mut out = Vec::new();
    for p in patterns {
        if p.len() != 4 {
            return Err(Error::PatternLength {
                expected: "4",
                got: p.len(),
            });
        }
        if !p.is_trivial() && !out.iter().any(|(i, _)| *i == p.index()) {
            out.push((p.index(), reversals_for(p)?));
        }
    }
    Ok(out)
}

/// Counts several 4-patterns in one pass over the divided instances.
/// Entries of the result follow `patterns`.
pub fn count_patterns4(perm: &Permutation, patterns: &[Pattern]) -> Result<Vec<Count>> {
    count_patterns4_with(perm, patterns, &ProfileOptions::default())
}

/// [`count_patterns4`] with explicit tuning.
pub fn count_patterns4_with(
    perm: &Permutation,
    patterns: &[Pattern],
    opts: &ProfileOptions,
) -> Result<Vec<Count>> {
    let nontrivial = nontrivial_of(patterns)?;
    let wanted = wanted_of(&nontrivial);
    let ranks = perm.ranks();
    let nodes = Enumerator::x_nodes(ranks.len());
    let totals = nodes
        .par_iter()
        .map_init(
            || (Enumerator::default(), CountScratch::default()),
            |(en, sc), &node| {
                let mut acc = [0 as Count; 24];
                en.run_x(&ranks, node, &mut |_, _, inst| {
                    accumulate_instance(inst, &nontrivial, &wanted, opts, sc, &mut acc)
                });
                acc
            },
        )
        .reduce(
            || [0; 24],
            |mut a, b| {
                for i in 0..24 {
                    a[i] += b[i];
                }
                a
            },
        );
    Ok(patterns.iter().map(|p| totals[p.index()]).collect())
}

/// Number of occurrences of one 4-pattern.
pub fn count_pattern4(perm: &Permutation, p: &Pattern) -> Result<Count> {
    Ok(count_patterns4(perm, std::slice::from_ref(p))?[0])
}

/// Occurrence counts of all 24 patterns of length 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile4 {
    pub n: usize,
    /// Indexed by [`Pattern::index`].
    pub counts: [Count; 24],
}

impl Profile4 {
    pub fn get(&self, p: &Pattern) -> Count {
        self.counts[p.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pattern, Count)> + '_ {
        Pattern::all(4).zip(self.counts.iter().copied())
    }

    pub fn total(&self) -> Count {
        self.counts.iter().sum()
    }
}

/// The full 4-profile. Fails only if the counts do not add up to `C(n, 4)`,
/// which would indicate a bug.
pub fn full_profile4(perm: &Permutation) -> Result<Profile4> {
    let all: Vec<Pattern> = Pattern::all(4).collect();
    let counts = count_patterns4(perm, &all)?;
    let mut arr = [0; 24];
    arr.copy_from_slice(&counts);
    let profile = Profile4 {
        n: perm.len(),
        counts: arr,
    };
    let expected = binomial(perm.len() as u64, 4);
    if profile.total() != expected {
        return Err(Error::InconsistentProfile {
            sum: profile.total(),
            expected,
        });
    }
    Ok(profile)
}

/// The eight trivial patterns.
pub fn trivial_patterns() -> Vec<Pattern> {
    Pattern::all(4).filter(|p| p.is_trivial()).collect()
}

/// `(Σ trivial counts) / C(n, 4) − 1/3`, exactly.
pub fn bergsma_dassios(profile: &Profile4, n: usize) -> Result<Ratio<i128>> {
    let trivial: Count = trivial_patterns().iter().map(|p| profile.get(p)).sum();
    tau_from_trivial(trivial, n)
}

/// The statistic of a permutation, counting only the trivial patterns.
pub fn tau_star(perm: &Permutation) -> Result<Ratio<i128>> {
    if perm.len() < 4 {
        return Err(Error::TooShort(perm.len()));
    }
    let trivial: Count = count_patterns4(perm, &trivial_patterns())?.iter().sum();
    tau_from_trivial(trivial, perm.len())
}

fn tau_from_trivial(trivial: Count, n: usize) -> Result<Ratio<i128>> {
    if n < 4 {
        return Err(Error::TooShort(n));
    }
    let total = binomial(n as u64, 4);
    Ok(Ratio::new(trivial as i128, total as i128) - Ratio::new(1, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{brute_count_pattern, brute_count_shape, brute_profile, Shape};

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn relevant_pairs_of_tiny_inputs() {
        let pairs = relevant_pairs(&perm(&[1]));
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].pts.len(), 1);
        let pairs = relevant_pairs(&Permutation::identity(4));
        assert_eq!(pairs.len(), 27);
        assert_eq!(pairs.iter().map(|p| p.pts.len()).sum::<usize>(), 36);
        for rp in &pairs {
            assert!(rp
                .pts
                .points()
                .iter()
                .all(|q| rp.rx.contains(q.x as usize) && rp.ry.contains(q.y as usize)));
        }
    }

    #[test]
    fn streaming_matches_relevant_pairs() {
        let p = perm(&[5, 2, 4, 6, 1, 7, 3, 9, 12, 8, 11, 10, 13]);
        let mut streamed = Vec::new();
        for_each_instance(&p, |rx, ry, inst| streamed.push((rx, ry, inst.clone())));
        let mut expected = Vec::new();
        for rp in relevant_pairs(&p) {
            if rp.pts.len() < 4 {
                continue;
            }
            let inst = Instance::from_divided(&rp.pts, &rp.division()).unwrap();
            if inst.nl > 0 && inst.nl < inst.len() && inst.nb > 0 && inst.nb < inst.len() {
                expected.push((rp.rx, rp.ry, inst));
            }
        }
        streamed.sort_by_key(|(rx, ry, _)| (*rx, *ry));
        expected.sort_by_key(|(rx, ry, _)| (*rx, *ry));
        assert_eq!(streamed, expected);
    }

    #[test]
    fn reversal_table_is_a_bijection() {
        let base = pat("1324");
        let mut seen = Vec::new();
        for p in Pattern::all(4).filter(|p| !p.is_trivial()) {
            let rev = reversals_for(&p).unwrap();
            assert_eq!(rev.apply_pattern(&base), p, "{p}");
            seen.push(rev);
        }
        for (i, a) in seen.iter().enumerate() {
            assert!(seen[i + 1..].iter().all(|b| b != a));
        }
        assert_eq!(reversals_for(&base).unwrap(), Reversals::default());
        assert!(matches!(
            reversals_for(&pat("2143")),
            Err(Error::TrivialPattern(_))
        ));
    }

    #[test]
    fn normalizing_3142() {
        let ps = perm(&[3, 1, 4, 2]).points();
        let div = PlaneDivision::after(2, 2);
        let (moved, d) = normalize_to_1324(&ps, &div, &pat("3142")).unwrap();
        let four = Shape::new(1, 1, 1, 1).unwrap();
        assert_eq!(
            brute_count_shape(&moved, &d, &pat("1324"), &four).unwrap(),
            1
        );
        assert_eq!(moved.to_permutation(), perm(&[1, 3, 2, 4]));
    }

    #[test]
    fn four_partite_examples() {
        let div = PlaneDivision::after(2, 2);
        let ps = perm(&[1, 3, 2, 4]).points();
        assert_eq!(count_4partite(&ps, &div, &pat("1324")).unwrap(), 1);
        let ps = perm(&[2, 1, 4, 3]).points();
        assert_eq!(count_4partite(&ps, &div, &pat("1324")).unwrap(), 0);
        assert!(count_4partite(&ps, &div, &pat("1234")).is_err());
        let brute = |q: &PointSet, p: &Pattern| brute_count_pattern(&q.to_permutation(), p);
        let ps = perm(&[1, 3, 2, 4]).points();
        assert_eq!(
            four_partite_by_inclusion_exclusion(&ps, &div, &pat("1324"), brute).unwrap(),
            1
        );
        let ps = perm(&[1, 2, 3, 4]).points();
        assert_eq!(
            four_partite_by_inclusion_exclusion(
                &ps,
                &PlaneDivision::after(1, 3),
                &pat("1234"),
                brute
            )
            .unwrap(),
            0
        );
    }

    #[test]
    fn four_partite_methods_agree_on_a_fixed_instance() {
        let ps = perm(&[5, 2, 4, 6, 1, 7, 3, 9, 12, 8, 11, 10, 13]).points();
        let brute = |q: &PointSet, p: &Pattern| brute_count_pattern(&q.to_permutation(), p);
        let four = Shape::new(1, 1, 1, 1).unwrap();
        for (x, y) in [(6, 6), (4, 9), (9, 3)] {
            let div = PlaneDivision::after(x, y);
            for p in Pattern::all(4) {
                let ie = four_partite_by_inclusion_exclusion(&ps, &div, &p, brute).unwrap();
                assert_eq!(ie, brute_count_shape(&ps, &div, &p, &four).unwrap());
                if !p.is_trivial() {
                    assert_eq!(count_4partite(&ps, &div, &p).unwrap(), ie, "{p} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn profiles_of_small_inputs() {
        let id = full_profile4(&Permutation::identity(6)).unwrap();
        assert_eq!(id.get(&pat("1234")), 15);
        assert_eq!(id.total(), 15);
        let p = full_profile4(&perm(&[2, 1, 4, 3])).unwrap();
        assert_eq!(p.get(&pat("2143")), 1);
        assert_eq!(p.total(), 1);
        for q in Pattern::all(4) {
            let prof = full_profile4(
                &Permutation::new(q.values().iter().map(|&v| v as u32).collect()).unwrap(),
            )
            .unwrap();
            for r in Pattern::all(4) {
                assert_eq!(prof.get(&r), (r == q) as Count);
            }
        }
        let p = perm(&[5, 2, 4, 6, 1, 7, 3]);
        assert_eq!(count_pattern4(&p, &pat("3124")).unwrap(), 2);
        let prof = full_profile4(&p).unwrap();
        assert_eq!(prof.counts.to_vec(), brute_profile(p.values(), 4));
        assert_eq!(full_profile4(&perm(&[])).unwrap().total(), 0);
        assert_eq!(full_profile4(&perm(&[2, 1, 3])).unwrap().total(), 0);
    }

    #[test]
    fn shared_layers_match_reversed_instances() {
        use crate::graph::count_c4_layered;
        use crate::reductions::instance_to_multigraph;
        let mut gen = crate::generate::Generator::new(11);
        let mut sc = CountScratch::default();
        for _ in 0..40 {
            let (ps, div) = gen.divided_inner(14);
            let inst = Instance::from_divided(&ps, &div).unwrap();
            sc.graph.load(&inst);
            for p in Pattern::all(4).filter(|p| !p.is_trivial()) {
                let rev = reversals_for(&p).unwrap();
                let mut moved = Instance::default();
                rev.apply_instance(&inst, &mut moved);
                let g = instance_to_multigraph(&moved, &mut MultigraphScratch::default());
                assert_eq!(
                    four_partite_loaded(&rev, &mut sc),
                    count_c4_layered(&g),
                    "{p}"
                );
            }
        }
    }

    #[test]
    fn direct_route_matches_general_route() {
        let mut gen = crate::generate::Generator::new(12);
        let some: Vec<Pattern> = ["1324", "3142", "1234", "4231"]
            .iter()
            .map(|s| pat(s))
            .collect();
        let all: Vec<Pattern> = Pattern::all(4).collect();
        for n in [4, 9, 17, 40] {
            let p = gen.permutation(n);
            for pats in [&some, &all] {
                let general =
                    count_patterns4_with(&p, pats, &ProfileOptions { direct_below: 0 }).unwrap();
                let direct = count_patterns4_with(
                    &p,
                    pats,
                    &ProfileOptions {
                        direct_below: usize::MAX,
                    },
                )
                .unwrap();
                assert_eq!(general, direct);
                let expected: Vec<Count> =
                    pats.iter().map(|q| brute_count_pattern(&p, q)).collect();
                assert_eq!(general, expected);
            }
        }
    }

    #[test]
    fn statistic_values() {
        let id = full_profile4(&Permutation::identity(4)).unwrap();
        assert_eq!(bergsma_dassios(&id, 4).unwrap(), Ratio::new(2, 3));
        let p = full_profile4(&perm(&[2, 1, 4, 3])).unwrap();
        assert_eq!(bergsma_dassios(&p, 4).unwrap(), Ratio::new(2, 3));
        let p = full_profile4(&perm(&[2, 1, 3])).unwrap();
        assert_eq!(bergsma_dassios(&p, 3), Err(Error::TooShort(3)));
        assert_eq!(tau_star(&perm(&[2, 1, 4, 3])).unwrap(), Ratio::new(2, 3));
        let q = perm(&[5, 2, 4, 6, 1, 7, 3, 9, 12, 8, 11, 10, 13]);
        assert_eq!(
            tau_star(&q).unwrap(),
            bergsma_dassios(&full_profile4(&q).unwrap(), q.len()).unwrap()
        );
    }
}
