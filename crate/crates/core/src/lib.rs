//! Exact counting of length-4 patterns in permutations, through a
//! decomposition into divided point sets whose hardest part is a weighted
//! 4-cycle count, and the converse embedding of 4-cycle counting into
//! pattern counting.
//!
//! ```
//! use permpat::{full_profile4, Pattern, Permutation};
//!
//! let perm: Permutation = "5 2 4 6 1 7 3".parse().unwrap();
//! let profile = full_profile4(&perm).unwrap();
//! let p: Pattern = "3124".parse().unwrap();
//! assert_eq!(profile.get(&p), 2);
//! assert_eq!(profile.total(), 35);
//! ```

pub mod error;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod perm;
pub mod profile;
pub mod range;
pub mod reductions;
pub mod shapes;
pub mod small;

pub use error::{Error, Result};
pub use generate::Generator;
pub use graph::{
    brute_count_c4, codegree_pair_sum, count_c4_layered, count_c4_undirected, BruteCycles,
    CircleLayeredMultigraph, DirectedGraph, LayeredEdge, UndirectedGraph,
};
pub use instance::{Instance, Orientation};
pub use perm::{
    binomial, brute_count_pattern, brute_count_shape, brute_profile, brute_shape_table,
    classify_pattern, parse_permutation, points_of, shape_of, Count, Pattern, PatternClass,
    Permutation, PlaneDivision, Point, PointSet, Region, Shape, SignedCount,
};
pub use profile::{
    bergsma_dassios, count_4partite, count_pattern4, count_patterns4, count_patterns4_with,
    four_partite_by_inclusion_exclusion, full_profile4, normalize_to_1324, relevant_pairs,
    tau_star, trivial_patterns, BaseRange, Profile4, ProfileOptions, RelevantPair,
};
pub use range::{build_range_counter, RangeCounter, WeightedPoint};
pub use reductions::{
    directed_c4_through_chain, directed_to_layered, layered_c4_by_splitting,
    layered_c4_through_patterns, layered_to_pattern_instances, layered_to_undirected,
    pattern_instance_to_multigraph, split_multigraph, undirected_c4_through_chain,
    undirected_to_directed, TiltedInstance, UndirectedLayering,
};
pub use shapes::{
    count_all_easy_shapes, count_product_shape, count_shape, count_shape_1102, count_shape_1201,
};
pub use small::{count_small_pattern, symmetry_closure, Symmetry};
