//! Instance transformations between graph classes, between multigraphs and
//! simple graphs, and between 4-partite pattern occurrences and 4-cycles.

use crate::error::Result;
use crate::graph::{CircleLayeredMultigraph, DirectedGraph, LayeredEdge, UndirectedGraph};
use crate::instance::Instance;
use crate::perm::{Count, PlaneDivision, Point, PointSet, SignedCount};

/// Replaces every edge by two opposite arcs. The digraph has exactly twice
/// as many 4-cycles.
pub fn undirected_to_directed(g: &UndirectedGraph) -> DirectedGraph {
    let arcs = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    DirectedGraph::new(g.node_count(), arcs).expect("a simple graph yields a simple digraph")
}

/// Copies every node into each of the four layers and every arc between each
/// pair of consecutive layers. Returns the layered graph and the number of
/// its cycles that are not simple in the digraph,
/// `Σ_u 4·C(b(u), 2) + b(u)` with `b(u)` the number of nodes joined to `u`
/// in both directions. The digraph has `(layered − correction) / 4` cycles.
pub fn directed_to_layered(g: &DirectedGraph) -> (CircleLayeredMultigraph, Count) {
    let n = g.node_count();
    let mut edges = Vec::with_capacity(4 * g.arcs().len());
    for &(u, v) in g.arcs() {
        for l in 0..4 {
            edges.push(LayeredEdge::new(l, u as u32, v as u32, 1));
        }
    }
    let mut arcs = g.arcs().to_vec();
    arcs.sort_unstable();
    let mut both = vec![0u64; n];
    for &(u, v) in g.arcs() {
        if arcs.binary_search(&(v, u)).is_ok() {
            both[u] += 1;
        }
    }
    let correction = both
        .iter()
        .map(|&b| 4 * (b as Count * b.saturating_sub(1) as Count / 2) + b as Count)
        .sum();
    (
        CircleLayeredMultigraph::merged([n; 4], &mut edges),
        correction,
    )
}

/// The undirected union of a simple layered graph together with the
/// induced subgraphs on two and three consecutive layers. Node `u` of layer
/// `l` becomes node `offsets[l] + u`.
#[derive(Clone, Debug)]
pub struct UndirectedLayering {
    pub graph: UndirectedGraph,
    /// `pairs[i]` is induced by layers `i, i+1`.
    pub pairs: [UndirectedGraph; 4],
    /// `triples[i]` is induced by layers `i, i+1, i+2`.
    pub triples: [UndirectedGraph; 4],
}

impl UndirectedLayering {
    /// Layered cycle count from an undirected counter:
    /// `C(G) + Σ_i [C(G[V_i ∪ V_i+1]) − C(G[V_i ∪ V_i+1 ∪ V_i+2])]`.
    pub fn layered_count(&self, counter: impl Fn(&UndirectedGraph) -> Count) -> Count {
        let mut acc = counter(&self.graph) as SignedCount;
        for i in 0..4 {
            acc += counter(&self.pairs[i]) as SignedCount;
            acc -= counter(&self.triples[i]) as SignedCount;
        }
        debug_assert!(acc >= 0);
        acc as Count
    }
}

/// Forgets edge directions. Undirected 4-cycles through all four layers are
/// exactly the layered cycles; the rest live inside two or three consecutive
/// layers and are removed by inclusion-exclusion.
pub fn layered_to_undirected(g: &CircleLayeredMultigraph) -> Result<UndirectedLayering> {
    g.require_simple()?;
    let off = g.offsets();
    let n = off[4];
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let l = e.layer as usize;
            (off[l] + e.from as usize, off[(l + 1) % 4] + e.to as usize)
        })
        .collect();
    let graph = UndirectedGraph::new(n, edges)?;
    let layer_of = |v: usize| (0..4).find(|&l| v < off[l + 1]).unwrap();
    let layers: Vec<usize> = (0..n).map(layer_of).collect();
    let induced = |span: usize, i: usize| {
        let keep: Vec<bool> = layers.iter().map(|&l| (l + 4 - i) % 4 < span).collect();
        graph.induced(&keep)
    };
    let pairs = std::array::from_fn(|i| induced(2, i));
    let triples = std::array::from_fn(|i| induced(3, i));
    Ok(UndirectedLayering {
        graph,
        pairs,
        triples,
    })
}

/// Splits a multigraph into simple layered graphs, one per bit quadruple
/// `(p0, p1, p2, p3)` with `p_i ≤ ⌊log2 U⌋`. Instance `p` keeps the layer-`i`
/// edges whose multiplicity has bit `p_i` set and carries weight
/// `2^(p0+p1+p2+p3)`. Instances are produced lazily.
pub fn split_multigraph(
    g: &CircleLayeredMultigraph,
) -> impl Iterator<Item = (CircleLayeredMultigraph, Count)> + '_ {
    let max = g.max_mult().max(1);
    let bits = (64 - max.leading_zeros()) as usize;
    (0..bits.pow(4)).map(move |k| {
        let p = [
            k % bits,
            k / bits % bits,
            k / bits / bits % bits,
            k / bits / bits / bits,
        ];
        let edges: Vec<LayeredEdge> = g
            .edges()
            .iter()
            .filter(|e| e.mult >> p[e.layer as usize] & 1 == 1)
            .map(|e| LayeredEdge { mult: 1, ..*e })
            .collect();
        let weight: Count = 1 << p.iter().sum::<usize>();
        (
            CircleLayeredMultigraph::new(g.sizes(), edges).expect("subset of a valid graph"),
            weight,
        )
    })
}

/// Bottom-up tree over `k` leaves: node ids of a leaf's ancestors.
#[derive(Clone, Copy, Debug, Default)]
struct PartTree {
    depth: u32,
}

impl PartTree {
    fn over(k: usize) -> Self {
        PartTree {
            depth: k.max(1).next_power_of_two().trailing_zeros(),
        }
    }

    fn nodes(&self) -> usize {
        1 << self.depth
    }

    /// Ancestor at height `h >= 1` of leaf `c`.
    #[inline]
    fn node(&self, c: u32, h: u32) -> u32 {
        ((1u32 << self.depth) + c) >> h
    }
}

/// Per-layer edge lists of an instance's multigraph, built on demand for
/// each of the four ways of reversing the two parts a layer connects.
#[derive(Debug, Default)]
pub(crate) struct MultigraphScratch {
    /// `(from, to)` leaf coordinates of the points behind each layer.
    coords: [Vec<(u32, u32)>; 4],
    trees: [PartTree; 4],
    /// Leaves of each tree: the sizes of the top, right, bottom, left parts.
    leaves: [u32; 4],
    keys: Vec<u64>,
    variants: [[Vec<LayeredEdge>; 4]; 4],
    built: [[bool; 4]; 4],
}

/// Required low bit of the from / to coordinate at the chosen height: TR
/// joins the top half of a T node to the right half of an R node, BR the
/// left half of an R node to the top half of a B node, BL the bottom half
/// of a B node to the left half of an L node, TL the right half of an L node
/// to the bottom half of a T node.
const FROM_BIT: [u32; 4] = [1, 0, 0, 1];
const TO_BIT: [u32; 4] = [1, 1, 0, 0];

impl MultigraphScratch {
    /// Layers are the trees over the top part's `y` (layer 0), the right
    /// part's `x` (1), the bottom part's `y` (2) and the left part's `x` (3).
    pub(crate) fn load(&mut self, inst: &Instance) {
        let s = inst.len();
        let (nl, nb) = (inst.nl, inst.nb);
        self.trees = [
            PartTree::over(s - nb),
            PartTree::over(s - nl),
            PartTree::over(nb),
            PartTree::over(nl),
        ];
        self.leaves = [(s - nb) as u32, (s - nl) as u32, nb as u32, nl as u32];
        for c in &mut self.coords {
            c.clear();
        }
        self.built = [[false; 4]; 4];
        for (i, &y) in inst.ys.iter().enumerate() {
            let (xl, xr) = (i as u32, i.wrapping_sub(nl) as u32);
            let (yb, yt) = (y, y.wrapping_sub(nb as u32));
            match (i < nl, y as usize >= nb) {
                (false, true) => self.coords[0].push((yt, xr)),
                (false, false) => self.coords[1].push((xr, yb)),
                (true, false) => self.coords[2].push((yb, xl)),
                (true, true) => self.coords[3].push((xl, yt)),
            }
        }
    }

    pub(crate) fn sizes(&self) -> [usize; 4] {
        std::array::from_fn(|l| self.trees[l].nodes())
    }

    /// Builds layer `l` with its from coordinates reversed when bit 0 of
    /// `variant` is set and its to coordinates when bit 1 is.
    pub(crate) fn ensure(&mut self, l: usize, variant: usize) {
        if self.built[l][variant] {
            return;
        }
        self.built[l][variant] = true;
        let (a, b) = (self.trees[l], self.trees[(l + 1) % 4]);
        let (ka, kb) = (self.leaves[l], self.leaves[(l + 1) % 4]);
        let (fa, fb) = (variant & 1 == 1, variant & 2 == 2);
        self.keys.clear();
        for &(fc, tc) in &self.coords[l] {
            let fc = if fa { ka - 1 - fc } else { fc };
            let tc = if fb { kb - 1 - tc } else { tc };
            for hf in 1..=a.depth {
                if (fc >> (hf - 1)) & 1 != FROM_BIT[l] {
                    continue;
                }
                let from = (a.node(fc, hf) as u64) << 32;
                for ht in 1..=b.depth {
                    if (tc >> (ht - 1)) & 1 == TO_BIT[l] {
                        self.keys.push(from | b.node(tc, ht) as u64);
                    }
                }
            }
        }
        self.keys.sort_unstable();
        let out = &mut self.variants[l][variant];
        out.clear();
        for run in self.keys.chunk_by(|x, y| x == y) {
            let key = run[0];
            out.push(LayeredEdge::new(
                l as u8,
                (key >> 32) as u32,
                key as u32,
                run.len() as u64,
            ));
        }
    }

    /// The edge lists of the chosen variants, one per layer.
    pub(crate) fn parts(&self, variants: [usize; 4]) -> [&[LayeredEdge]; 4] {
        std::array::from_fn(|l| self.variants[l][variants[l]].as_slice())
    }
}

/// Builds the layered multigraph of a rank-space instance.
pub(crate) fn instance_to_multigraph(
    inst: &Instance,
    sc: &mut MultigraphScratch,
) -> CircleLayeredMultigraph {
    sc.load(inst);
    let mut edges = Vec::new();
    for l in 0..4 {
        sc.ensure(l, 0);
        edges.extend_from_slice(&sc.variants[l][0]);
    }
    CircleLayeredMultigraph::merged(sc.sizes(), &mut edges)
}

/// The layered multigraph whose weighted 4-cycle count equals the number of
/// 4-partite occurrences of `1324` in the divided point set.
pub fn pattern_instance_to_multigraph(
    ps: &PointSet,
    div: &PlaneDivision,
) -> Result<CircleLayeredMultigraph> {
    let inst = Instance::from_divided(ps, div)?;
    Ok(instance_to_multigraph(
        &inst,
        &mut MultigraphScratch::default(),
    ))
}

/// One of the sixteen point sets built from a layered graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltedInstance {
    pub points: PointSet,
    pub division: PlaneDivision,
    /// `(−1)^|S|`.
    pub sign: i8,
    /// Bit `k` set when part `k` of `[left, top, right, bottom]` is in `S`.
    pub subset: u8,
}

/// Embeds a simple layered graph as sixteen point sets, one per subset `S`
/// of the four parts. Node `u` of layers 0 to 3 sits at distance `u + 1` on
/// the negative `x`, positive `y`, positive `x` and negative `y` half-axes;
/// an edge becomes the corner point sharing one coordinate with each end.
/// All coordinates are scaled by `10N` (`N` = largest layer + 1), each part
/// is tilted by `±2N` (`+` when the part is in `S`) and skewed by the other
/// coordinate, which makes coordinates distinct. Then
/// `Σ_S (−1)^|S| · #1324₄(instance_S)` is the number of 4-cycles.
pub fn layered_to_pattern_instances(g: &CircleLayeredMultigraph) -> Result<Vec<TiltedInstance>> {
    g.require_simple()?;
    let big = *g.sizes().iter().max().unwrap() as i64 + 1;
    let scale = 10 * big;
    let tilt = 2 * big;
    let mut out = Vec::with_capacity(16);
    for subset in 0u8..16 {
        let delta = |k: u8| if subset >> k & 1 == 1 { tilt } else { -tilt };
        let (dl, dt, dr, db) = (delta(0), delta(1), delta(2), delta(3));
        let pts: Vec<Point> = g
            .edges()
            .iter()
            .map(|e| {
                let (u, v) = (e.from as i64 + 1, e.to as i64 + 1);
                match e.layer {
                    // V0 -> V1: top-left corner
                    0 => {
                        let (x, y) = (-u, v);
                        Point::new(scale * x + y + dl, scale * y + x)
                    }
                    // V1 -> V2: top-right corner
                    1 => {
                        let (x, y) = (v, u);
                        Point::new(scale * x + y, scale * y + x + dt)
                    }
                    // V2 -> V3: bottom-right corner
                    2 => {
                        let (x, y) = (u, -v);
                        Point::new(scale * x + y - dr, scale * y + x)
                    }
                    // V3 -> V0: bottom-left corner
                    _ => {
                        let (x, y) = (-v, -u);
                        Point::new(scale * x + y, scale * y + x - db)
                    }
                }
            })
            .collect();
        out.push(TiltedInstance {
            points: PointSet::new(pts)?,
            division: PlaneDivision::doubled(0, 0),
            sign: if subset.count_ones() % 2 == 0 { 1 } else { -1 },
            subset,
        });
    }
    Ok(out)
}

/// 4-cycles of a simple undirected graph through the whole chain: double
/// the edges, copy the digraph into four layers, forget directions again and
/// count the final undirected graphs with `counter`.
pub fn undirected_c4_through_chain(
    g: &UndirectedGraph,
    counter: impl Fn(&UndirectedGraph) -> Count,
) -> Count {
    directed_c4_through_chain(&undirected_to_directed(g), counter) / 2
}

/// 4-cycles of a simple digraph through its layered copy and the undirected
/// graphs of that copy, counted with `counter`.
pub fn directed_c4_through_chain(
    g: &DirectedGraph,
    counter: impl Fn(&UndirectedGraph) -> Count,
) -> Count {
    let (layered, correction) = directed_to_layered(g);
    let u = layered_to_undirected(&layered).expect("copies of a digraph have unit multiplicities");
    (u.layered_count(counter) - correction) / 4
}

/// Weighted 4-cycles of a layered multigraph as `Σ weight · counter(part)`
/// over the simple parts of [`split_multigraph`].
pub fn layered_c4_by_splitting(
    g: &CircleLayeredMultigraph,
    mut counter: impl FnMut(&CircleLayeredMultigraph) -> Count,
) -> Count {
    split_multigraph(g).map(|(h, w)| w * counter(&h)).sum()
}

/// 4-cycles of a simple layered graph as the signed sum over the sixteen
/// embedded point sets, with `four_partite` counting 4-partite occurrences
/// of `1324` in a divided point set.
pub fn layered_c4_through_patterns(
    g: &CircleLayeredMultigraph,
    four_partite: impl Fn(&PointSet, &PlaneDivision) -> Count,
) -> Result<Count> {
    let mut acc: SignedCount = 0;
    for t in layered_to_pattern_instances(g)? {
        acc += t.sign as SignedCount * four_partite(&t.points, &t.division) as SignedCount;
    }
    debug_assert!(acc >= 0);
    Ok(acc as Count)
}
