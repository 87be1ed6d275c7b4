//! Torus-fixed loci of relative maps to a rigid or rubber line, encoded as
//! decorated bipartite graphs, with enumeration, automorphism counts and
//! the inverse Euler class contributions of each graph.

pub mod canonical;
pub mod contribution;
pub mod dimension;
pub mod enumerate;
pub mod graph;
pub mod oracle;
pub mod principal;
pub mod shape;

pub use canonical::{aut_group_order, canonical_form, graph_automorphisms};
pub use contribution::{
    case_i_denominator, classify_case, contribution, degenerate_over, euler_inverse, multiplicity, vertex_term, Case,
    GraphContribution,
};
pub use dimension::{
    hurwitz_condition, omega_dimension_check, vdim_parameterized, vdim_unparameterized, OmegaDimensionReport,
    OmegaInstance,
};
pub use enumerate::{enumerate_graphs, enumerate_graphs_within, EnumerationBounds};
pub use graph::{validate_graph, Edge, LocalizationGraph, Refinement, Validation, Vertex, Violation, ViolationKind};
pub use oracle::oracle_graphs;
pub use principal::{classify_principal, PrincipalLayout};
pub use shape::RelativeShape;
