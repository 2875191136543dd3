//! Angled Hubbard tree bundles compiled to graphs of cyclic bisets, with
//! the mating and tuning constructions and a few fixed examples.

mod error;
pub mod fixtures;
mod hubbard;
mod mating;
mod text;
mod tree;
mod tuning;

pub use error::DynamicsError;
pub use fixtures::{fixture, Fixture};
pub use hubbard::{hubbard_gob, hubbard_to_gob, HubbardGob};
pub use mating::{cyclic_congruence, mating, Polynomial};
pub use text::{format_htree, parse_htree};
pub use tree::{derive_ord, frac, validate_bundle, Angle, BundleCheck, HubbardBundle, HubbardTree};
pub use tuning::{identity_piece, tuning, TuningPiece};
