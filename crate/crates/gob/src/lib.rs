//! Graphs of bisets: validation, left-fibrancy, products, subdivision, and
//! the fundamental biset computed by lifting paths.

mod error;
mod fibrant;
mod fundamental;
mod gob;
mod morphism;
mod product;
mod subdivide;
mod text;

pub use error::GobError;
pub use fibrant::{Fibrancy, FibrantTable, Lift};
pub use fundamental::{BasisEntry, FundamentalBiset};
pub use gob::{GraphOfBisets, ObjectBiset};
pub use subdivide::GobSubdivision;
pub use text::{format_gob, parse_gob};
