//! Graphs with involution, graphs of groups with trivial or cyclic edge
//! groups, reduced decorated paths and fundamental group presentations.

mod error;
mod gog;
mod graph;
mod morphism;
mod ops;
mod path;
mod pi1;
mod text;

pub use error::GraphError;
pub use gog::GraphOfGroups;
pub use graph::{reverse_name, Graph};
pub use morphism::GraphMorphism;
pub use ops::{GraphSubdivision, Half, Subdivision};
pub use path::{least_coset_rep, PathWord};
pub use pi1::{Pi1, Pi1Source, SpanningTree};
pub use text::{format_gog, parse_gog};
