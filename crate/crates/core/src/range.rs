//! Static weighted orthogonal range counting and a small Fenwick tree.
//!
//! [`RangeCounter`] is a wavelet matrix over rank-compressed coordinates:
//! points are laid out by `x`, the bit planes of their `y` rank are
//! stably partitioned level by level, and each level keeps prefix sums of
//! the weights in partitioned order. A rectangle query walks the levels
//! once, so it costs `O(log n)`.

use crate::error::{Error, Result};
use crate::perm::Count;

/// Values a [`Fenwick`] tree can accumulate.
pub trait Accum: Copy {
    const ZERO: Self;
    fn accumulate(&mut self, other: Self);
}

macro_rules! scalar_accum {
    ($($t:ty),*) => {$(
        impl Accum for $t {
            const ZERO: Self = 0;
            #[inline]
            fn accumulate(&mut self, other: Self) {
                *self += other;
            }
        }
    )*};
}
scalar_accum!(u32, u64, u128, i64, i128);

impl<T: Accum, const C: usize> Accum for [T; C] {
    const ZERO: Self = [T::ZERO; C];
    #[inline]
    fn accumulate(&mut self, other: Self) {
        for (a, b) in self.iter_mut().zip(other) {
            a.accumulate(b);
        }
    }
}

/// Binary indexed tree over `0..n` with prefix sums.
#[derive(Clone, Debug)]
pub struct Fenwick<T> {
    tree: Vec<T>,
}

impl<T: Accum> Default for Fenwick<T> {
    fn default() -> Self {
        Fenwick::new(0)
    }
}

impl<T: Accum> Fenwick<T> {
    pub fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![T::ZERO; n + 1],
        }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Resets to all zeros over `0..n`, reusing the allocation.
    pub fn reset(&mut self, n: usize) {
        self.tree.clear();
        self.tree.resize(n + 1, T::ZERO);
    }

    #[inline]
    pub fn add(&mut self, i: usize, v: T) {
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i].accumulate(v);
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over `0..i`.
    #[inline]
    pub fn prefix(&self, i: usize) -> T {
        let mut acc = T::ZERO;
        let mut i = i;
        while i > 0 {
            acc.accumulate(self.tree[i]);
            i &= i - 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedPoint {
    pub x: i64,
    pub y: i64,
    pub w: u64,
}

impl WeightedPoint {
    pub const fn new(x: i64, y: i64, w: u64) -> Self {
        WeightedPoint { x, y, w }
    }
}

#[derive(Clone, Debug)]
struct BitLevel {
    words: Vec<u64>,
    // popcount of words[..i]
    cum: Vec<u32>,
    zeros: usize,
    // prefix weights of the sequence after this level's partition
    weights: Option<Vec<u128>>,
}

impl BitLevel {
    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let (w, b) = (i >> 6, i & 63);
        let mask = (1u64 << b).wrapping_sub(1);
        self.cum[w] as usize + (self.words[w] & mask).count_ones() as usize
    }

    #[inline]
    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }
}

/// Immutable structure answering weighted rectangle sums.
#[derive(Clone, Debug)]
pub struct RangeCounter {
    xs: Vec<i64>,
    ys: Vec<i64>,
    levels: Vec<BitLevel>,
    total: Count,
}

/// Builds a [`RangeCounter`]. Coordinates must be distinct on each axis.
pub fn build_range_counter(pts: &[WeightedPoint]) -> Result<RangeCounter> {
    RangeCounter::new(pts)
}

impl RangeCounter {
    pub fn new(pts: &[WeightedPoint]) -> Result<Self> {
        let mut by_x: Vec<WeightedPoint> = pts.to_vec();
        by_x.sort_unstable_by_key(|p| p.x);
        if let Some(w) = by_x.windows(2).find(|w| w[0].x == w[1].x) {
            return Err(Error::DuplicateCoordinate {
                axis: 'x',
                value: w[0].x,
            });
        }
        let mut ys: Vec<i64> = by_x.iter().map(|p| p.y).collect();
        ys.sort_unstable();
        if let Some(w) = ys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCoordinate {
                axis: 'y',
                value: w[0],
            });
        }
        let xs: Vec<i64> = by_x.iter().map(|p| p.x).collect();
        let ranks: Vec<u32> = by_x
            .iter()
            .map(|p| ys.binary_search(&p.y).unwrap() as u32)
            .collect();
        let weights: Vec<u64> = by_x.iter().map(|p| p.w).collect();
        let unit = weights.iter().all(|&w| w == 1);
        let total = weights.iter().map(|&w| w as Count).sum();
        let levels = Self::build_levels(ranks, weights, unit);
        Ok(RangeCounter {
            xs,
            ys,
            levels,
            total,
        })
    }

    /// Unit-weight counter over the point set of a permutation given as
    /// 0-based ranks; point `i` sits at `(i, ranks[i])`.
    pub(crate) fn from_ranks(ranks: &[u32]) -> Self {
        let n = ranks.len();
        let levels = Self::build_levels(ranks.to_vec(), vec![1; n], true);
        RangeCounter {
            xs: (0..n as i64).collect(),
            ys: (0..n as i64).collect(),
            levels,
            total: n as Count,
        }
    }

    fn build_levels(mut seq: Vec<u32>, mut w: Vec<u64>, unit: bool) -> Vec<BitLevel> {
        let n = seq.len();
        let depth = (usize::BITS - n.saturating_sub(1).leading_zeros()).max(1) as usize;
        let mut levels = Vec::with_capacity(depth);
        let mut next = vec![0u32; n];
        let mut next_w = vec![0u64; if unit { 0 } else { n }];
        for l in (0..depth).rev() {
            let mut words = vec![0u64; n / 64 + 1];
            for (i, &v) in seq.iter().enumerate() {
                if v >> l & 1 == 1 {
                    words[i >> 6] |= 1 << (i & 63);
                }
            }
            let mut cum = Vec::with_capacity(words.len());
            let mut acc = 0u32;
            for word in &words {
                cum.push(acc);
                acc += word.count_ones();
            }
            let zeros = n - acc as usize;
            // stable partition: zeros first, then ones
            let (mut z, mut o) = (0, zeros);
            for i in 0..n {
                let slot = if seq[i] >> l & 1 == 0 {
                    z += 1;
                    z - 1
                } else {
                    o += 1;
                    o - 1
                };
                next[slot] = seq[i];
                if !unit {
                    next_w[slot] = w[i];
                }
            }
            std::mem::swap(&mut seq, &mut next);
            let weights = if unit {
                None
            } else {
                std::mem::swap(&mut w, &mut next_w);
                let mut pre = Vec::with_capacity(n + 1);
                let mut s: u128 = 0;
                pre.push(0);
                for &x in &w {
                    s += x as u128;
                    pre.push(s);
                }
                Some(pre)
            };
            levels.push(BitLevel {
                words,
                cum,
                zeros,
                weights,
            });
        }
        levels
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Total weight of all points.
    pub fn total(&self) -> Count {
        self.total
    }

    /// Weight of points with `x` index in `a..b` and `y` rank below `t`.
    #[inline]
    pub(crate) fn below(&self, mut a: usize, mut b: usize, t: usize) -> Count {
        if a >= b || t == 0 {
            return 0;
        }
        let depth = self.levels.len();
        if t >> depth != 0 {
            return self.weight_of_span(a, b);
        }
        let mut acc: Count = 0;
        for (k, lv) in self.levels.iter().enumerate() {
            let l = depth - 1 - k;
            let (a0, b0) = (lv.rank0(a), lv.rank0(b));
            if t >> l & 1 == 1 {
                acc += match &lv.weights {
                    Some(w) => w[b0] - w[a0],
                    None => (b0 - a0) as Count,
                };
                a = lv.zeros + (a - a0);
                b = lv.zeros + (b - b0);
            } else {
                a = a0;
                b = b0;
            }
            if a >= b {
                break;
            }
        }
        acc
    }

    fn weight_of_span(&self, a: usize, b: usize) -> Count {
        // Weights are only kept in partitioned order, so sum via a full-range query
        // on the top level: everything in a..b maps to contiguous zero/one blocks.
        let lv = &self.levels[0];
        let (a0, b0) = (lv.rank0(a), lv.rank0(b));
        match &lv.weights {
            None => (b - a) as Count,
            Some(w) => {
                let (a1, b1) = (lv.zeros + a - a0, lv.zeros + b - b0);
                (w[b0] - w[a0]) + (w[b1] - w[a1])
            }
        }
    }

    /// Sum of weights over `xlo <= x <= xhi`, `ylo <= y <= yhi`. Use
    /// `i64::MIN` / `i64::MAX` for unbounded sides.
    pub fn rect_sum(&self, xlo: i64, xhi: i64, ylo: i64, yhi: i64) -> Result<Count> {
        if xlo > xhi || ylo > yhi {
            return Err(Error::InvertedBounds);
        }
        let a = self.xs.partition_point(|&x| x < xlo);
        let b = self.xs.partition_point(|&x| x <= xhi);
        let lo = self.ys.partition_point(|&y| y < ylo);
        let hi = self.ys.partition_point(|&y| y <= yhi);
        Ok(self.below(a, b, hi) - self.below(a, b, lo))
    }
}
