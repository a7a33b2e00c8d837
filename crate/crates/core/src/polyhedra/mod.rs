//! Linear systems over the co-2-plex polytope and tools to inspect them.

pub mod builders;
pub mod facets;
pub mod lp_format;
pub mod system;
pub mod vertices;
pub mod witness;

pub use builders::*;
pub use facets::{co2plex_polytope_dimension, is_facet, is_valid_inequality, polytope_dimension, FacetChecker};
pub use lp_format::to_cplex_lp;
pub use system::{LinearInequality, LinearSystem, Space};
pub use vertices::{
    enumerate_vertices, enumerate_vertices_by_bases, enumerate_vertices_with_caps, is_extreme_point,
    is_integer_polytope, RationalPoint, VertexCaps,
};
pub use witness::{
    c4_witness, certify_c4_witness, certify_characpolytope_witness, characpolytope_witness, membership_via_extension,
};
