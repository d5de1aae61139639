//! Graph symmetry toolkit.
//!
//! Computes automorphism groups of simple graphs by partition-refinement
//! backtracking, answers symmetry questions (orbits, stabilizers,
//! transitivity levels, local groups, edge types), determines exact
//! distinguishing numbers and indices by pruned exhaustive search, and
//! constructs machine-verified distinguishing 2-colourings of connected
//! 4-valent vertex-transitive graphs, classifying the exceptional ones.

pub mod canon;
pub mod classifier;
pub mod colouring;
pub mod connectivity;
pub mod constructions;
pub mod distinguishing;
pub mod graph;
pub mod group;
pub mod io;
pub mod operators;
pub mod perm;
pub mod symmetry;

pub use canon::{automorphism_group, canonical_form, is_isomorphic};
pub use graph::{Edge, Graph, GraphError, VertexSet};
pub use group::{PermGroup, StabChain};
pub use perm::Perm;
