//! Concrete connectivity systems.

pub mod contraction;
pub mod graph;
pub mod hypergraph;
pub mod linear;
pub mod polymatroid;

pub use contraction::{contract, ContractionSystem};
pub use graph::{cut_matrix, cut_rank, edge_connectivity, matching_connectivity, vertex_connectivity, Graph};
pub use hypergraph::{hypergraph_connectivities, hypergraph_cover_function, Hypergraph};
pub use linear::{gf2_column_rank, vector_connectivity, vector_rank, Gf2Matrix, RationalVectorFamily};
pub use polymatroid::polymatroid_connectivity;
