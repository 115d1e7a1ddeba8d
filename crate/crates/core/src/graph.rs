//! Graphs and exact 4-cycle counting.
//!
//! Counting conventions: in an undirected graph a 4-cycle is a 4-node cycle
//! subgraph; in a directed or layered graph it is a directed cyclic node
//! sequence up to rotation. Multigraph cycles are weighted by the product of
//! their edge multiplicities.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Count;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    /// Rejects self-loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            seen.push((u.min(v), u.max(v)));
        }
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(UndirectedGraph { n, edges })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// The subgraph induced by the nodes with `keep` set; node ids are kept.
    pub fn induced(&self, keep: &[bool]) -> UndirectedGraph {
        UndirectedGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&(u, v)| keep[u] && keep[v])
                .collect(),
        }
    }

    /// Adds `k` isolated nodes.
    pub fn with_isolated(&self, k: usize) -> UndirectedGraph {
        UndirectedGraph {
            n: self.n + k,
            edges: self.edges.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &arcs {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        let mut sorted = arcs.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(DirectedGraph { n, arcs })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            adj[u].push(v);
        }
        adj
    }
}

fn check_node(u: usize, n: usize) -> Result<()> {
    if u >= n {
        return Err(Error::NodeOutOfRange { node: u, nodes: n });
    }
    Ok(())
}

/// An edge from node `from` of layer `layer` to node `to` of layer
/// `(layer + 1) % 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayeredEdge {
    pub layer: u8,
    pub from: u32,
    pub to: u32,
    pub mult: u64,
}

impl LayeredEdge {
    pub const fn new(layer: u8, from: u32, to: u32, mult: u64) -> Self {
        LayeredEdge {
            layer,
            from,
            to,
            mult,
        }
    }
}

/// Four node layers with multi-edges from each layer to the next, cyclically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CircleLayeredMultigraph {
    sizes: [usize; 4],
    edges: Vec<LayeredEdge>,
}

impl CircleLayeredMultigraph {
    /// Validates the edges; repeated records of one edge are merged by
    /// summing their multiplicities.
    pub fn new(sizes: [usize; 4], mut edges: Vec<LayeredEdge>) -> Result<Self> {
        for e in &edges {
            let l = e.layer as usize;
            if l >= 4 {
                return Err(Error::LayerOutOfRange(l));
            }
            check_node(e.from as usize, sizes[l])?;
            check_node(e.to as usize, sizes[(l + 1) % 4])?;
            if e.mult == 0 {
                return Err(Error::ZeroMultiplicity);
            }
        }
        Ok(Self::merged(sizes, &mut edges))
    }

    /// Caller guarantees valid layers, endpoints and positive multiplicities.
    pub(crate) fn merged(sizes: [usize; 4], edges: &mut Vec<LayeredEdge>) -> Self {
        edges.sort_unstable_by_key(|e| (e.layer, e.from, e.to));
        let mut out: Vec<LayeredEdge> = Vec::with_capacity(edges.len());
        for e in edges.drain(..) {
            match out.last_mut() {
                Some(last) if (last.layer, last.from, last.to) == (e.layer, e.from, e.to) => {
                    last.mult += e.mult
                }
                _ => out.push(e),
            }
        }
        CircleLayeredMultigraph { sizes, edges: out }
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    /// Distinct edges, sorted by `(layer, from, to)`.
    pub fn edges(&self) -> &[LayeredEdge] {
        &self.edges
    }

    pub fn max_mult(&self) -> u64 {
        self.edges.iter().map(|e| e.mult).max().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.mult == 1)
    }

    /// Fails with the first edge whose multiplicity is not 1.
    pub fn require_simple(&self) -> Result<()> {
        match self.edges.iter().find(|e| e.mult != 1) {
            None => Ok(()),
            Some(e) => Err(Error::NonUnitMultiplicity {
                layer: e.layer as usize,
                from: e.from as usize,
                to: e.to as usize,
                mult: e.mult,
            }),
        }
    }

    /// Global node id offsets per layer; the last entry is the node count.
    pub fn offsets(&self) -> [usize; 5] {
        let mut o = [0; 5];
        for l in 0..4 {
            o[l + 1] = o[l] + self.sizes[l];
        }
        o
    }
}

/// Exhaustive 4-cycle counting under the conventions of this module.
pub trait BruteCycles {
    fn brute_count_c4(&self) -> Count;
}

/// Exhaustive 4-cycle count; see [`BruteCycles`].
pub fn brute_count_c4<G: BruteCycles + ?Sized>(g: &G) -> Count {
    g.brute_count_c4()
}

impl BruteCycles for UndirectedGraph {
    /// Every 4-cycle is seen as 8 closed node sequences.
    fn brute_count_c4(&self) -> Count {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for &(u, v) in &self.edges {
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        let mut walks: Count = 0;
        for a in 0..n {
            for b in 0..n {
                if b == a || !adj[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if c == a || c == b || !adj[b * n + c] {
                        continue;
                    }
                    for d in 0..n {
                        if d != a && d != b && d != c && adj[c * n + d] && adj[d * n + a] {
                            walks += 1;
                        }
                    }
                }
            }
        }
        walks / 8
    }
}

impl BruteCycles for DirectedGraph {
    /// Every directed 4-cycle is seen as 4 closed node sequences.
    fn brute_count_c4(&self) -> Count {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for &(u, v) in &self.arcs {
            adj[u * n + v] = true;
        }
        let mut walks: Count = 0;
        for a in 0..n {
            for b in 0..n {
                if b == a || !adj[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if c == a || c == b || !adj[b * n + c] {
                        continue;
                    }
                    for d in 0..n {
                        if d != a && d != b && d != c && adj[c * n + d] && adj[d * n + a] {
                            walks += 1;
                        }
                    }
                }
            }
        }
        walks / 4
    }
}

impl BruteCycles for CircleLayeredMultigraph {
    /// Every cycle passes each layer once, so it has a unique start in layer 0.
    fn brute_count_c4(&self) -> Count {
        let mult: HashMap<(u8, u32, u32), u64> = self
            .edges
            .iter()
            .map(|e| ((e.layer, e.from, e.to), e.mult))
            .collect();
        let m = |l: u8, a: usize, b: usize| -> Count {
            mult.get(&(l, a as u32, b as u32)).copied().unwrap_or(0) as Count
        };
        let s = self.sizes;
        let mut total: Count = 0;
        for a in 0..s[0] {
            for b in 0..s[1] {
                let ab = m(0, a, b);
                if ab == 0 {
                    continue;
                }
                for c in 0..s[2] {
                    let bc = m(1, b, c);
                    if bc == 0 {
                        continue;
                    }
                    for d in 0..s[3] {
                        total += ab * bc * m(2, c, d) * m(3, d, a);
                    }
                }
            }
        }
        total
    }
}

/// Compressed adjacency: neighbours of `v` are `targets[start[v]..start[v + 1]]`.
#[derive(Debug, Default)]
struct Csr {
    start: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<u64>,
}

impl Csr {
    /// Groups arcs by source, keeping input order within a group.
    fn group(&mut self, n: usize, arcs: impl Iterator<Item = (u32, u32, u64)> + Clone) {
        self.start.clear();
        self.start.resize(n + 1, 0);
        let mut m = 0;
        for (u, _, _) in arcs.clone() {
            self.start[u as usize + 1] += 1;
            m += 1;
        }
        for i in 0..n {
            self.start[i + 1] += self.start[i];
        }
        self.targets.resize(m, 0);
        self.weights.resize(m, 0);
        for (u, v, w) in arcs {
            let k = &mut self.start[u as usize];
            self.targets[*k] = v;
            self.weights[*k] = w;
            *k += 1;
        }
        self.start.rotate_right(1);
        self.start[0] = 0;
    }

    /// Groups arcs by source with each group in ascending rank of the
    /// target, where `order` lists the nodes by rank. Linear time.
    fn build(&mut self, n: usize, arcs: &[(u32, u32, u64)], order: &[u32], tmp: &mut Csr) {
        tmp.group(n, arcs.iter().map(|&(u, v, w)| (v, u, w)));
        self.start.clear();
        self.start.resize(n + 1, 0);
        for &(u, _, _) in arcs {
            self.start[u as usize + 1] += 1;
        }
        for i in 0..n {
            self.start[i + 1] += self.start[i];
        }
        self.targets.resize(arcs.len(), 0);
        self.weights.resize(arcs.len(), 0);
        for &t in order {
            for (u, w) in tmp.neighbours(t as usize) {
                let k = &mut self.start[u];
                self.targets[*k] = t;
                self.weights[*k] = w;
                *k += 1;
            }
        }
        self.start.rotate_right(1);
        self.start[0] = 0;
    }

    #[inline]
    fn neighbours(&self, v: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let (a, b) = (self.start[v], self.start[v + 1]);
        self.targets[a..b]
            .iter()
            .zip(&self.weights[a..b])
            .map(|(&t, &w)| (t as usize, w))
    }
}

/// Orders nodes by `(degree, id)` with a counting sort; fills `order` with
/// the nodes by rank and `rank` with its inverse.
fn degree_order(degree: &[usize], order: &mut Vec<u32>, rank: &mut Vec<u32>) {
    let n = degree.len();
    let max = degree.iter().copied().max().unwrap_or(0);
    let mut start = vec![0usize; max + 2];
    for &d in degree {
        start[d + 1] += 1;
    }
    for d in 0..=max {
        start[d + 1] += start[d];
    }
    order.resize(n, 0);
    rank.resize(n, 0);
    for (v, &d) in degree.iter().enumerate() {
        rank[v] = start[d] as u32;
        order[start[d]] = v as u32;
        start[d] += 1;
    }
}

/// Exact 4-cycle count of a simple undirected graph in `O(m^1.5)`. Each
/// cycle is charged to its highest-ranked node `v` under the degree order:
/// with `cnt[w]` the number of 2-paths `v - a - w` through lower-ranked `a`
/// and `w`, the cycles at `v` are `Σ_w C(cnt[w], 2)`.
pub fn count_c4_undirected(g: &UndirectedGraph) -> Count {
    let n = g.n;
    let mut degree = vec![0usize; n];
    for &(u, v) in &g.edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let (mut order, mut rank) = (Vec::new(), Vec::new());
    degree_order(&degree, &mut order, &mut rank);
    let arcs: Vec<(u32, u32, u64)> = g
        .edges
        .iter()
        .flat_map(|&(u, v)| [(u as u32, v as u32, 1), (v as u32, u as u32, 1)])
        .collect();
    let mut adj = Csr::default();
    adj.build(n, &arcs, &order, &mut Csr::default());
    let mut cnt = vec![0u64; n];
    let mut touched = Vec::new();
    let mut total: Count = 0;
    for v in 0..n {
        let rv = rank[v];
        for (a, _) in adj.neighbours(v) {
            if rank[a] >= rv {
                break;
            }
            for (w, _) in adj.neighbours(a) {
                if rank[w] >= rv {
                    break;
                }
                if cnt[w] == 0 {
                    touched.push(w);
                }
                cnt[w] += 1;
            }
        }
        for &w in &touched {
            let c = cnt[w] as Count;
            total += c * (c - 1) / 2;
            cnt[w] = 0;
        }
        touched.clear();
    }
    total
}

/// `Σ C(codeg(u, w), 2)` over unordered node pairs. Every 4-cycle is counted
/// once per diagonal, so the sum is twice the cycle count.
pub fn codegree_pair_sum(g: &UndirectedGraph) -> Count {
    let adj = g.adjacency();
    let mut cnt = vec![0u64; g.n];
    let mut touched = Vec::new();
    let mut total: Count = 0;
    for u in 0..g.n {
        for &a in &adj[u] {
            for &w in &adj[a] {
                if w > u {
                    if cnt[w] == 0 {
                        touched.push(w);
                    }
                    cnt[w] += 1;
                }
            }
        }
        for &w in &touched {
            let c = cnt[w] as Count;
            total += c * (c - 1) / 2;
            cnt[w] = 0;
        }
        touched.clear();
    }
    total
}

/// Reusable buffers for [`count_c4_layered_with`].
#[derive(Debug, Default)]
pub struct LayeredScratch {
    fwd64: Vec<u64>,
    bwd64: Vec<u64>,
    fwd128: Vec<u128>,
    bwd128: Vec<u128>,
    touched: Vec<usize>,
    degree: Vec<usize>,
    order: Vec<u32>,
    rank: Vec<u32>,
    arcs: Vec<(u32, u32, u64)>,
    rev: Vec<(u32, u32, u64)>,
    out: Csr,
    inn: Csr,
    tmp: Csr,
}

/// Weighted 4-cycle count of a layered multigraph, equal to
/// `Σ_{v0, v2} W02(v0, v2) · W20(v2, v0)` where `W` sums multiplicity
/// products of 2-paths. Each cycle is charged to its highest-ranked node
/// under the degree order, giving `O(m^1.5)` time.
pub fn count_c4_layered(g: &CircleLayeredMultigraph) -> Count {
    count_c4_layered_with(g, &mut LayeredScratch::default())
}

pub fn count_c4_layered_with(g: &CircleLayeredMultigraph, sc: &mut LayeredScratch) -> Count {
    let edges = g.edges();
    let mut parts: [&[LayeredEdge]; 4] = [&[]; 4];
    let mut rest = edges;
    for (l, part) in parts.iter_mut().enumerate() {
        let k = rest.partition_point(|e| e.layer as usize == l);
        (*part, rest) = rest.split_at(k);
    }
    count_c4_parts(g.sizes(), parts, sc)
}

/// [`count_c4_layered_with`] on a graph given as one edge list per layer;
/// the `layer` fields are ignored.
pub(crate) fn count_c4_parts(
    sizes: [usize; 4],
    parts: [&[LayeredEdge]; 4],
    sc: &mut LayeredScratch,
) -> Count {
    let mut off = [0; 5];
    for l in 0..4 {
        off[l + 1] = off[l] + sizes[l];
    }
    let n = off[4];
    sc.degree.clear();
    sc.degree.resize(n, 0);
    sc.arcs.clear();
    sc.rev.clear();
    let mut max_mult = 0;
    for (l, part) in parts.iter().enumerate() {
        for e in *part {
            let u = off[l] + e.from as usize;
            let v = off[(l + 1) % 4] + e.to as usize;
            sc.degree[u] += 1;
            sc.degree[v] += 1;
            max_mult = max_mult.max(e.mult);
            sc.arcs.push((u as u32, v as u32, e.mult));
            sc.rev.push((v as u32, u as u32, e.mult));
        }
    }
    degree_order(&sc.degree, &mut sc.order, &mut sc.rank);
    sc.out.build(n, &sc.arcs, &sc.order, &mut sc.tmp);
    sc.inn.build(n, &sc.rev, &sc.order, &mut sc.tmp);
    // a path sum is at most max_mult² times a degree
    let max_degree = sc.degree.iter().copied().max().unwrap_or(0) as u64;
    let narrow = max_mult
        .checked_mul(max_mult)
        .and_then(|m| m.checked_mul(max_degree))
        .is_some();
    if narrow {
        sc.fwd64.clear();
        sc.fwd64.resize(n, 0);
        sc.bwd64.clear();
        sc.bwd64.resize(n, 0);
        charge(
            &sc.out,
            &sc.inn,
            &sc.rank,
            &mut sc.fwd64,
            &mut sc.bwd64,
            &mut sc.touched,
        )
    } else {
        sc.fwd128.clear();
        sc.fwd128.resize(n, 0);
        sc.bwd128.clear();
        sc.bwd128.resize(n, 0);
        charge(
            &sc.out,
            &sc.inn,
            &sc.rank,
            &mut sc.fwd128,
            &mut sc.bwd128,
            &mut sc.touched,
        )
    }
}

/// Path-sum accumulator, `u64` when products provably fit.
trait PathSum:
    Copy + Default + PartialEq + std::ops::AddAssign + std::ops::Mul<Output = Self> + Into<u128>
{
    fn of(m: u64) -> Self;
}

impl PathSum for u64 {
    #[inline]
    fn of(m: u64) -> Self {
        m
    }
}

impl PathSum for u128 {
    #[inline]
    fn of(m: u64) -> Self {
        m as u128
    }
}

fn charge<T: PathSum>(
    out: &Csr,
    inn: &Csr,
    rank: &[u32],
    fwd: &mut [T],
    bwd: &mut [T],
    touched: &mut Vec<usize>,
) -> Count {
    let zero = T::default();
    let mut total: Count = 0;
    for v in 0..rank.len() {
        let rv = rank[v];
        for (a, ma) in out.neighbours(v) {
            if rank[a] >= rv {
                break;
            }
            let ma = T::of(ma);
            for (w, mw) in out.neighbours(a) {
                if rank[w] >= rv {
                    break;
                }
                if fwd[w] == zero {
                    touched.push(w);
                }
                fwd[w] += ma * T::of(mw);
            }
        }
        if touched.is_empty() {
            continue;
        }
        for (b, mb) in inn.neighbours(v) {
            if rank[b] >= rv {
                break;
            }
            let mb = T::of(mb);
            for (w, mw) in inn.neighbours(b) {
                if rank[w] >= rv {
                    break;
                }
                bwd[w] += mb * T::of(mw);
            }
        }
        for &w in touched.iter() {
            total += fwd[w].into() * bwd[w].into();
            fwd[w] = zero;
        }
        touched.clear();
        // bwd entries outside `touched` are cleared by a second pass
        for (b, _) in inn.neighbours(v) {
            if rank[b] >= rv {
                break;
            }
            for (w, _) in inn.neighbours(b) {
                if rank[w] >= rv {
                    break;
                }
                bwd[w] = zero;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> UndirectedGraph {
        UndirectedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k4() -> UndirectedGraph {
        UndirectedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn layered_cycle(m0: u64) -> CircleLayeredMultigraph {
        CircleLayeredMultigraph::new(
            [1, 1, 1, 1],
            (0..4)
                .map(|l| LayeredEdge::new(l, 0, 0, if l == 0 { m0 } else { 1 }))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn fixed_counts() {
        assert_eq!(brute_count_c4(&cycle4()), 1);
        assert_eq!(brute_count_c4(&k4()), 3);
        assert_eq!(count_c4_undirected(&cycle4()), 1);
        assert_eq!(count_c4_undirected(&k4()), 3);
        assert_eq!(codegree_pair_sum(&k4()), 6);
        assert_eq!(brute_count_c4(&layered_cycle(3)), 3);
        assert_eq!(count_c4_layered(&layered_cycle(3)), 3);
        let empty_v1 =
            CircleLayeredMultigraph::new([2, 0, 2, 2], vec![LayeredEdge::new(2, 0, 1, 1)]).unwrap();
        assert_eq!(count_c4_layered(&empty_v1), 0);
    }

    #[test]
    fn validation() {
        assert_eq!(
            UndirectedGraph::new(3, vec![(1, 1)]),
            Err(Error::SelfLoop(1))
        );
        assert!(matches!(
            UndirectedGraph::new(3, vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            UndirectedGraph::new(2, vec![(0, 2)]),
            Err(Error::NodeOutOfRange { node: 2, .. })
        ));
        assert!(DirectedGraph::new(2, vec![(0, 1), (1, 0)]).is_ok());
        assert!(DirectedGraph::new(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(
            CircleLayeredMultigraph::new([1, 1, 1, 1], vec![LayeredEdge::new(4, 0, 0, 1)]).is_err()
        );
        assert!(
            CircleLayeredMultigraph::new([1, 1, 1, 1], vec![LayeredEdge::new(0, 0, 0, 0)]).is_err()
        );
        assert!(
            CircleLayeredMultigraph::new([1, 0, 1, 1], vec![LayeredEdge::new(0, 0, 0, 1)]).is_err()
        );
    }

    #[test]
    fn repeated_records_merge() {
        let g = CircleLayeredMultigraph::new(
            [1, 1, 1, 1],
            vec![
                LayeredEdge::new(0, 0, 0, 1),
                LayeredEdge::new(1, 0, 0, 1),
                LayeredEdge::new(0, 0, 0, 2),
                LayeredEdge::new(2, 0, 0, 1),
                LayeredEdge::new(3, 0, 0, 1),
            ],
        )
        .unwrap();
        assert_eq!(g.edges().len(), 4);
        assert_eq!(g.max_mult(), 3);
        assert_eq!(count_c4_layered(&g), 3);
        assert!(g.require_simple().is_err());
    }

    #[test]
    fn directed_cycle() {
        let g = DirectedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(brute_count_c4(&g), 1);
        let both = DirectedGraph::new(
            4,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (1, 0),
                (2, 1),
                (3, 2),
                (0, 3),
            ],
        )
        .unwrap();
        assert_eq!(brute_count_c4(&both), 2);
    }
}
