//! Divided point sets in rank space and the eight symmetries of the square.
//!
//! An [`Instance`] stores `s` points as a permutation of `0..s` read in
//! ascending `x`, together with the number of points left of the vertical
//! line (`nl`) and below the horizontal line (`nb`). Every divided point
//! set reduces to one without changing any pattern or shape count.

use crate::error::Result;
use crate::perm::{rank_reduce, Pattern, PlaneDivision, Point, PointSet, Region, Shape};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub ys: Vec<u32>,
    pub nl: usize,
    pub nb: usize,
}

impl Instance {
    pub fn new(ys: Vec<u32>, nl: usize, nb: usize) -> Self {
        debug_assert!(nl <= ys.len() && nb <= ys.len());
        Instance { ys, nl, nb }
    }

    /// Rank-reduces a divided point set. Fails if a point lies on a line.
    pub fn from_divided(ps: &PointSet, div: &PlaneDivision) -> Result<Self> {
        div.check(ps)?;
        let pts = ps.points();
        let ys = rank_reduce(&ps.y_sequence());
        let nl = pts.iter().filter(|p| 2 * p.x < div.v2).count();
        let nb = pts.iter().filter(|p| 2 * p.y < div.h2).count();
        Ok(Instance { ys, nl, nb })
    }

    /// The instance as points `(i + 1, ys[i] + 1)` with its division.
    pub fn to_divided(&self) -> (PointSet, PlaneDivision) {
        let pts = self
            .ys
            .iter()
            .enumerate()
            .map(|(i, &y)| Point::new(i as i64 + 1, y as i64 + 1))
            .collect();
        (
            PointSet::from_sorted_unchecked(pts),
            PlaneDivision::after(self.nl as i64, self.nb as i64),
        )
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    #[inline]
    pub fn region(&self, i: usize) -> Region {
        match (i < self.nl, (self.ys[i] as usize) >= self.nb) {
            (true, true) => Region::TopLeft,
            (false, true) => Region::TopRight,
            (true, false) => Region::BottomLeft,
            (false, false) => Region::BottomRight,
        }
    }

    /// Point counts per region in `(tl, tr, bl, br)` order.
    pub fn region_sizes(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for i in 0..self.len() {
            c[self.region(i).slot()] += 1;
        }
        c
    }

    pub fn transformed(&self, o: Orientation) -> Instance {
        let mut out = Instance::default();
        self.transform_into(o, &mut out);
        out
    }

    /// Writes the image of `self` under `o` into `out`, reusing its buffer.
    pub fn transform_into(&self, o: Orientation, out: &mut Instance) {
        let s = self.len();
        out.ys.clear();
        out.ys.resize(s, 0);
        let (mut nl, mut nb) = (self.nl, self.nb);
        if o.transpose {
            for (i, &y) in self.ys.iter().enumerate() {
                out.ys[y as usize] = i as u32;
            }
            std::mem::swap(&mut nl, &mut nb);
        } else {
            out.ys.copy_from_slice(&self.ys);
        }
        if o.flip_x {
            out.ys.reverse();
            nl = s - nl;
        }
        if o.flip_y {
            let top = s as u32;
            for y in &mut out.ys {
                *y = top - 1 - *y;
            }
            nb = s - nb;
        }
        out.nl = nl;
        out.nb = nb;
    }
}

/// A symmetry of the square: an optional transpose followed by optional
/// reflections across the vertical and the horizontal line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub transpose: bool,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl Orientation {
    pub const IDENTITY: Orientation = Orientation {
        transpose: false,
        flip_x: false,
        flip_y: false,
    };

    pub const fn new(transpose: bool, flip_x: bool, flip_y: bool) -> Self {
        Orientation {
            transpose,
            flip_x,
            flip_y,
        }
    }

    /// All eight symmetries.
    pub fn all() -> impl Iterator<Item = Orientation> {
        (0..8u8).map(|b| Orientation::new(b & 4 != 0, b & 2 != 0, b & 1 != 0))
    }

    /// The image of a pattern: occurrences of `p` in an instance are exactly
    /// the occurrences of `apply_pattern(p)` in the transformed instance.
    pub fn apply_pattern(&self, p: &Pattern) -> Pattern {
        let mut q = *p;
        if self.transpose {
            q = q.inverse();
        }
        if self.flip_x {
            q = q.reversed();
        }
        if self.flip_y {
            q = q.complemented();
        }
        q
    }

    pub fn apply_shape(&self, s: &Shape) -> Shape {
        let mut t = *s;
        if self.transpose {
            t = t.transpose();
        }
        if self.flip_x {
            t = t.mirror_x();
        }
        if self.flip_y {
            t = t.mirror_y();
        }
        t
    }

    /// `table[p] = apply_pattern(p).index()` over the 24 patterns of length 4.
    pub fn pattern_table(&self) -> [usize; 24] {
        let mut t = [0; 24];
        for (i, p) in Pattern::all(4).enumerate() {
            t[i] = self.apply_pattern(&p).index();
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{brute_shape_table, Permutation};

    #[test]
    fn round_trip_through_points() {
        let perm = Permutation::new(vec![5, 2, 4, 6, 1, 7, 3]).unwrap();
        let inst = Instance::from_divided(&perm.points(), &PlaneDivision::after(3, 4)).unwrap();
        assert_eq!(inst.ys, vec![4, 1, 3, 5, 0, 6, 2]);
        assert_eq!((inst.nl, inst.nb), (3, 4));
        let (ps, div) = inst.to_divided();
        assert_eq!(Instance::from_divided(&ps, &div).unwrap(), inst);
        assert_eq!(inst.region_sizes(), [1, 2, 2, 2]);
    }

    #[test]
    fn symmetries_transport_shape_tables() {
        let perm = Permutation::new(vec![5, 2, 4, 6, 1, 7, 3, 9, 8]).unwrap();
        let inst = Instance::from_divided(&perm.points(), &PlaneDivision::after(4, 3)).unwrap();
        let (ps, div) = inst.to_divided();
        let base = brute_shape_table(&ps, &div).unwrap();
        for o in Orientation::all() {
            let t = inst.transformed(o);
            let (ps2, div2) = t.to_divided();
            let image = brute_shape_table(&ps2, &div2).unwrap();
            let table = o.pattern_table();
            for (shape, counts) in &base {
                let moved = o.apply_shape(shape);
                let (_, other) = image.iter().find(|(s, _)| *s == moved).unwrap();
                for p in 0..24 {
                    assert_eq!(counts[p], other[table[p]], "{o:?} {shape}");
                }
            }
        }
    }
}
