//! Seeded random instances.
//!
//! All generators draw from PCG64 (XSL-RR output over a 128-bit LCG) started
//! at `state = seed` on the reference default stream, and use only
//! `random_range` draws in a fixed order, so a seed names the same instance
//! on every platform.

use rand::RngExt;
use rand_pcg::Pcg64;

use crate::graph::{CircleLayeredMultigraph, LayeredEdge, UndirectedGraph};
use crate::perm::{Permutation, PlaneDivision, PointSet};

const STREAM: u128 = 0x0a02_bdbf_7bb3_c0a7_ac28_fa16_a64a_bf96;

/// Seeded source of random instances.
#[derive(Clone, Debug)]
pub struct Generator {
    rng: Pcg64,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: Pcg64::new(seed as u128, STREAM),
        }
    }

    /// Uniform in `0..=hi`.
    pub fn upto(&mut self, hi: u64) -> u64 {
        self.rng.random_range(0..=hi)
    }

    /// Uniform permutation of length `n` by Fisher–Yates, swapping position
    /// `i` with a uniform `j <= i` for `i = n-1` down to 1.
    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut v: Vec<u32> = (1..=n as u32).collect();
        for i in (1..n).rev() {
            let j = self.upto(i as u64) as usize;
            v.swap(i, j);
        }
        Permutation::new(v).expect("a shuffle is a bijection")
    }

    /// Uniform graph with `n` nodes and `m` distinct edges (`G(n, m)`);
    /// `m` is capped at `C(n, 2)`.
    pub fn graph(&mut self, n: usize, m: usize) -> UndirectedGraph {
        let all = n * n.saturating_sub(1) / 2;
        let m = m.min(all);
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(all);
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        // partial Fisher–Yates from the front
        for i in 0..m {
            let j = i + self.upto((all - 1 - i) as u64) as usize;
            pairs.swap(i, j);
        }
        pairs.truncate(m);
        UndirectedGraph::new(n, pairs).expect("distinct pairs")
    }

    /// Graph where each of the `C(n, 2)` pairs is an edge with probability
    /// `num / den`.
    pub fn erdos_renyi(&mut self, n: usize, num: u64, den: u64) -> UndirectedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.upto(den - 1) < num {
                    edges.push((u, v));
                }
            }
        }
        UndirectedGraph::new(n, edges).expect("distinct pairs")
    }

    /// Layered multigraph: each possible edge between consecutive layers is
    /// present with probability `num / den`, with multiplicity uniform in
    /// `1..=max_mult`.
    pub fn layered(
        &mut self,
        sizes: [usize; 4],
        num: u64,
        den: u64,
        max_mult: u64,
    ) -> CircleLayeredMultigraph {
        let mut edges = Vec::new();
        for l in 0..4 {
            for u in 0..sizes[l] {
                for v in 0..sizes[(l + 1) % 4] {
                    if self.upto(den - 1) < num {
                        let mult = 1 + self.upto(max_mult.max(1) - 1);
                        edges.push(LayeredEdge::new(l as u8, u as u32, v as u32, mult));
                    }
                }
            }
        }
        CircleLayeredMultigraph::new(sizes, edges).expect("valid by construction")
    }

    /// Layer sizes in `1..=max` and a density in `1/8..=7/8`.
    pub fn layered_shape(&mut self, max: usize) -> ([usize; 4], u64) {
        let sizes = std::array::from_fn(|_| 1 + self.upto(max as u64 - 1) as usize);
        (sizes, 1 + self.upto(6))
    }

    /// A random permutation of length `s` with lines after uniform positions
    /// in `0..=s` on both axes.
    pub fn divided(&mut self, s: usize) -> (PointSet, PlaneDivision) {
        let ps = self.permutation(s).points();
        let v = self.upto(s as u64) as i64;
        let h = self.upto(s as u64) as i64;
        (ps, PlaneDivision::after(v, h))
    }

    /// Like [`Generator::divided`] but with both lines strictly inside, so
    /// that every region can be non-empty.
    pub fn divided_inner(&mut self, s: usize) -> (PointSet, PlaneDivision) {
        let ps = self.permutation(s).points();
        let v = 1 + self.upto(s.saturating_sub(2) as u64) as i64;
        let h = 1 + self.upto(s.saturating_sub(2) as u64) as i64;
        (ps, PlaneDivision::after(v, h))
    }
}
