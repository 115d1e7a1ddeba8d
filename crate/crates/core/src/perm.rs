//! Permutations, patterns, planar point sets and the exhaustive oracle.
//!
//! A permutation of length `n` is stored with 1-based values; its point set is
//! `{(i, π(i))}`. Patterns are permutations of length 1 to 4. Every counter in
//! the crate is checked against [`brute_count_pattern`] / [`brute_profile`],
//! which enumerate all index subsets.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact occurrence or cycle count.
pub type Count = u128;
/// Signed count, used where inclusion-exclusion passes through negative terms.
pub type SignedCount = i128;

const FACTORIAL: [usize; 5] = [1, 1, 2, 6, 24];

/// Binomial coefficient `C(n, k)`, exact.
pub fn binomial(n: u64, k: u64) -> Count {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: Count = 1;
    for i in 0..k {
        acc = acc * (n - i) as Count / (i + 1) as Count;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from 1-based values, checking the bijection.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (i, &v) in values.iter().enumerate() {
            let ok = v >= 1 && (v as usize) <= n && !seen[v as usize];
            if !ok {
                return Err(Error::NotABijection {
                    line: 1,
                    position: i + 1,
                    value: v as i64,
                    len: n,
                });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { values })
    }

    /// Builds a permutation from 0-based ranks that are known to be a bijection.
    pub(crate) fn from_ranks_unchecked(ranks: &[u32]) -> Self {
        Permutation {
            values: ranks.iter().map(|&r| r + 1).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The values `π(1), …, π(n)`.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Values as 0-based ranks.
    pub fn ranks(&self) -> Vec<u32> {
        self.values.iter().map(|&v| v - 1).collect()
    }

    /// Reads the positions right to left.
    pub fn reversed(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// Replaces every value `v` with `n + 1 - v`.
    pub fn complemented(&self) -> Self {
        let n = self.len() as u32;
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = i as u32 + 1;
        }
        Permutation { values }
    }

    /// The point set `{(i, π(i))}`, in ascending `x`.
    pub fn points(&self) -> PointSet {
        points_of(self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

/// Parses whitespace-separated 1-based values. Errors carry the 1-based line
/// and the 1-based token position within the whole input.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let mut tokens = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            let position = tokens.len() + 1;
            let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
                line: line_no + 1,
                position,
                token: token.to_string(),
            })?;
            tokens.push((line_no + 1, value));
        }
    }
    let n = tokens.len();
    let mut seen = vec![false; n + 1];
    let mut values = Vec::with_capacity(n);
    for (i, &(line, value)) in tokens.iter().enumerate() {
        if value < 1 || value as u64 > n as u64 || seen[value as usize] {
            return Err(Error::NotABijection {
                line,
                position: i + 1,
                value,
                len: n,
            });
        }
        seen[value as usize] = true;
        values.push(value as u32);
    }
    Ok(Permutation { values })
}

/// A permutation of length 1 to 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    len: u8,
    vals: [u8; 4],
}

impl Pattern {
    pub fn new(values: &[u8]) -> Result<Self> {
        let k = values.len();
        let bad = || Error::InvalidPattern(values.iter().map(|v| v.to_string()).collect());
        if !(1..=4).contains(&k) {
            return Err(bad());
        }
        let mut vals = [0u8; 4];
        let mut seen = [false; 5];
        for (i, &v) in values.iter().enumerate() {
            if v < 1 || v as usize > k || seen[v as usize] {
                return Err(bad());
            }
            seen[v as usize] = true;
            vals[i] = v;
        }
        Ok(Pattern { len: k as u8, vals })
    }

    /// The `index`-th pattern of length `k` in lexicographic order.
    pub fn from_index(k: usize, index: usize) -> Self {
        assert!((1..=4).contains(&k) && index < FACTORIAL[k]);
        let mut pool: Vec<u8> = (1..=k as u8).collect();
        let mut vals = [0u8; 4];
        let mut rest = index;
        for (i, slot) in vals.iter_mut().take(k).enumerate() {
            let f = FACTORIAL[k - 1 - i];
            *slot = pool.remove(rest / f);
            rest %= f;
        }
        Pattern { len: k as u8, vals }
    }

    /// All `k!` patterns of length `k`, lexicographically.
    pub fn all(k: usize) -> impl Iterator<Item = Pattern> {
        (0..FACTORIAL[k]).map(move |i| Pattern::from_index(k, i))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u8] {
        &self.vals[..self.len as usize]
    }

    /// Lexicographic rank among the patterns of the same length.
    pub fn index(&self) -> usize {
        order_index(self.values())
    }

    pub fn reversed(&self) -> Self {
        let mut p = *self;
        p.vals[..self.len()].reverse();
        p
    }

    pub fn complemented(&self) -> Self {
        let mut p = *self;
        for v in &mut p.vals[..self.len()] {
            *v = self.len + 1 - *v;
        }
        p
    }

    pub fn inverse(&self) -> Self {
        let mut p = *self;
        for (i, &v) in self.values().iter().enumerate() {
            p.vals[v as usize - 1] = i as u8 + 1;
        }
        p
    }

    /// A 4-pattern is trivial when no division puts its four points in
    /// four distinct quadrants, i.e. when its first two values lie on the
    /// same side of 2.5.
    pub fn is_trivial(&self) -> bool {
        self.len == 4 && ((self.vals[0] <= 2) == (self.vals[1] <= 2))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.values() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Option<Vec<u8>> = s
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect();
        match digits {
            Some(d) => Pattern::new(&d).map_err(|_| Error::InvalidPattern(s.to_string())),
            None => Err(Error::InvalidPattern(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternClass {
    Trivial,
    NonTrivial,
}

pub fn classify_pattern(p: &Pattern) -> Result<PatternClass> {
    if p.len() != 4 {
        return Err(Error::PatternLength {
            expected: "4",
            got: p.len(),
        });
    }
    Ok(if p.is_trivial() {
        PatternClass::Trivial
    } else {
        PatternClass::NonTrivial
    })
}

/// Lexicographic index of the pattern order-isomorphic to `window`
/// (its Lehmer code), for up to 4 distinct values.
#[inline]
pub(crate) fn order_index<T: Ord>(window: &[T]) -> usize {
    let k = window.len();
    let mut idx = 0;
    for i in 0..k {
        let smaller = window[i + 1..].iter().filter(|v| **v < window[i]).count();
        idx += smaller * FACTORIAL[k - 1 - i];
    }
    idx
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// Points with pairwise distinct `x` and pairwise distinct `y`, kept in
/// ascending `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(mut points: Vec<Point>) -> Result<Self> {
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0].x == w[1].x) {
            return Err(Error::DuplicateCoordinate {
                axis: 'x',
                value: w[0].x,
            });
        }
        let mut ys: Vec<i64> = points.iter().map(|p| p.y).collect();
        ys.sort_unstable();
        if let Some(w) = ys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCoordinate {
                axis: 'y',
                value: w[0],
            });
        }
        Ok(PointSet { points })
    }

    /// Caller guarantees sorted `x` and distinct coordinates.
    pub(crate) fn from_sorted_unchecked(points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0].x < w[1].x));
        PointSet { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The `y` values read in ascending `x`: the permutation this set encodes.
    pub fn y_sequence(&self) -> Vec<i64> {
        self.points.iter().map(|p| p.y).collect()
    }

    /// Rank-reduces the set to a permutation.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_ranks_unchecked(&rank_reduce(&self.y_sequence()))
    }

    /// The subset of points satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Point) -> bool) -> PointSet {
        PointSet {
            points: self.points.iter().copied().filter(|p| keep(p)).collect(),
        }
    }
}

/// Replaces distinct values by their 0-based ranks.
pub(crate) fn rank_reduce<T: Ord + Copy>(values: &[T]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..values.len() as u32).collect();
    order.sort_unstable_by_key(|&i| values[i as usize]);
    let mut ranks = vec![0u32; values.len()];
    for (r, &i) in order.iter().enumerate() {
        ranks[i as usize] = r as u32;
    }
    ranks
}

pub fn points_of(perm: &Permutation) -> PointSet {
    PointSet {
        points: perm
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| Point::new(i as i64 + 1, v as i64))
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Region {
    pub const ALL: [Region; 4] = [
        Region::TopLeft,
        Region::TopRight,
        Region::BottomLeft,
        Region::BottomRight,
    ];

    /// Position in the `(tl, tr, bl, br)` ordering used by [`Shape`].
    pub fn slot(self) -> usize {
        self as usize
    }

    pub fn is_left(self) -> bool {
        matches!(self, Region::TopLeft | Region::BottomLeft)
    }

    pub fn is_top(self) -> bool {
        matches!(self, Region::TopLeft | Region::TopRight)
    }
}

/// A vertical line `x = v` and a horizontal line `y = h`. Both are stored
/// doubled so that half-integer lines stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlaneDivision {
    pub v2: i64,
    pub h2: i64,
}

impl PlaneDivision {
    /// Lines at `x = v2 / 2` and `y = h2 / 2`.
    pub const fn doubled(v2: i64, h2: i64) -> Self {
        PlaneDivision { v2, h2 }
    }

    /// Lines at `x = x + 0.5` and `y = y + 0.5`.
    pub const fn after(x: i64, y: i64) -> Self {
        PlaneDivision {
            v2: 2 * x + 1,
            h2: 2 * y + 1,
        }
    }

    pub fn region_of(&self, p: &Point) -> Result<Region> {
        let (x2, y2) = (2 * p.x, 2 * p.y);
        if x2 == self.v2 || y2 == self.h2 {
            return Err(Error::PointOnDivision { x: p.x, y: p.y });
        }
        Ok(match (x2 < self.v2, y2 > self.h2) {
            (true, true) => Region::TopLeft,
            (false, true) => Region::TopRight,
            (true, false) => Region::BottomLeft,
            (false, false) => Region::BottomRight,
        })
    }

    /// Fails if some point lies on a line.
    pub fn check(&self, ps: &PointSet) -> Result<()> {
        ps.points()
            .iter()
            .try_for_each(|p| self.region_of(p).map(|_| ()))
    }
}

/// Number of points in TL, TR, BL and BR.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub tl: u8,
    pub tr: u8,
    pub bl: u8,
    pub br: u8,
}

impl Shape {
    pub fn new(tl: u8, tr: u8, bl: u8, br: u8) -> Result<Self> {
        if tl as u32 + tr as u32 + bl as u32 + br as u32 != 4 {
            return Err(Error::InvalidShape([tl, tr, bl, br]));
        }
        Ok(Shape { tl, tr, bl, br })
    }

    pub(crate) const fn of(c: [u8; 4]) -> Self {
        Shape {
            tl: c[0],
            tr: c[1],
            bl: c[2],
            br: c[3],
        }
    }

    pub fn counts(&self) -> [u8; 4] {
        [self.tl, self.tr, self.bl, self.br]
    }

    /// Both lines separate the four points.
    pub fn is_proper(&self) -> bool {
        self.tl + self.tr >= 1
            && self.bl + self.br >= 1
            && self.tl + self.bl >= 1
            && self.tr + self.br >= 1
    }

    pub fn is_four_partite(&self) -> bool {
        self.counts() == [1, 1, 1, 1]
    }

    /// Reflection across the vertical line.
    pub fn mirror_x(&self) -> Self {
        Shape::of([self.tr, self.tl, self.br, self.bl])
    }

    /// Reflection across the horizontal line.
    pub fn mirror_y(&self) -> Self {
        Shape::of([self.bl, self.br, self.tl, self.tr])
    }

    /// Swapping the axes sends TL to BR and fixes TR and BL.
    pub fn transpose(&self) -> Self {
        Shape::of([self.br, self.tr, self.bl, self.tl])
    }

    /// All 35 shapes.
    pub fn all() -> impl Iterator<Item = Shape> {
        (0..=4u8).flat_map(|a| {
            (0..=4 - a).flat_map(move |b| {
                (0..=4 - a - b).map(move |c| Shape::of([a, b, c, 4 - a - b - c]))
            })
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.tl, self.tr, self.bl, self.br)
    }
}

/// Per-region tally of four points.
pub fn shape_of(quad: &[Point; 4], div: &PlaneDivision) -> Result<Shape> {
    let mut c = [0u8; 4];
    for p in quad {
        c[div.region_of(p)?.slot()] += 1;
    }
    Ok(Shape::of(c))
}

/// Counts every pattern of length `k` in `values` by enumerating all
/// `C(n, k)` index subsets. The result is indexed by [`Pattern::index`].
pub fn brute_profile<T: Ord + Copy>(values: &[T], k: usize) -> Vec<Count> {
    assert!((1..=4).contains(&k), "pattern length must be 1..=4");
    let n = values.len();
    let mut counts = vec![0 as Count; FACTORIAL[k]];
    match k {
        1 => counts[0] = n as Count,
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    counts[(values[j] < values[i]) as usize] += 1;
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i + 1..n {
                    for l in j + 1..n {
                        counts[order_index(&[values[i], values[j], values[l]])] += 1;
                    }
                }
            }
        }
        _ => {
            for i in 0..n {
                let a = values[i];
                for j in i + 1..n {
                    let b = values[j];
                    let ab = (b < a) as usize;
                    for l in j + 1..n {
                        let c = values[l];
                        let lt_ab = ((c < a) as usize, (c < b) as usize);
                        for &d in &values[l + 1..] {
                            let idx = (ab + lt_ab.0 + (d < a) as usize) * 6
                                + (lt_ab.1 + (d < b) as usize) * 2
                                + (d < c) as usize;
                            counts[idx] += 1;
                        }
                    }
                }
            }
        }
    }
    counts
}

/// Exact number of occurrences of `p` in `perm` by exhaustive enumeration.
/// Returns 0 when `perm` is shorter than `p`.
pub fn brute_count_pattern(perm: &Permutation, p: &Pattern) -> Count {
    if perm.len() < p.len() {
        return 0;
    }
    brute_profile(perm.values(), p.len())[p.index()]
}

/// Occurrences of `p` among `ps` whose four points form `shape` under `div`.
/// Exhaustive; used as the oracle for the shape counters.
pub fn brute_count_shape(
    ps: &PointSet,
    div: &PlaneDivision,
    p: &Pattern,
    shape: &Shape,
) -> Result<Count> {
    div.check(ps)?;
    Ok(brute_shape_table(ps, div)?
        .into_iter()
        .filter(|(s, _)| s == shape)
        .map(|(_, t)| t[p.index()])
        .sum())
}

/// For every shape that occurs, the 24 per-pattern occurrence counts.
pub fn brute_shape_table(ps: &PointSet, div: &PlaneDivision) -> Result<Vec<(Shape, [Count; 24])>> {
    let pts = ps.points();
    let regions: Vec<Region> = pts
        .iter()
        .map(|p| div.region_of(p))
        .collect::<Result<_>>()?;
    let mut table: Vec<(Shape, [Count; 24])> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let mut c = [0u8; 4];
                    for &t in &[i, j, k, l] {
                        c[regions[t].slot()] += 1;
                    }
                    let shape = Shape::of(c);
                    let idx = order_index(&[pts[i].y, pts[j].y, pts[k].y, pts[l].y]);
                    match table.iter_mut().find(|(s, _)| *s == shape) {
                        Some((_, t)) => t[idx] += 1,
                        None => {
                            let mut t = [0; 24];
                            t[idx] = 1;
                            table.push((shape, t));
                        }
                    }
                }
            }
        }
    }
    Ok(table)
}
