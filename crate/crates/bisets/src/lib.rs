//! Bisets over free products of cyclic groups: wreath recursions, cyclic
//! and finite bisets, products, duals, basis changes and conjugacy lifts.

mod congruence;
mod cyclic;
mod decperm;
mod error;
mod table;
mod text;
mod thurston;
mod wreath;

pub use congruence::Congruence;
pub use cyclic::{cyclic_exponent, cyclic_pow, CyclicBiset};
pub use decperm::{cycles_of, fmt_cycles, parse_cycles, DecPerm};
pub use error::BisetError;
pub use table::TableBiset;
pub use text::{format_wr, parse_decperm, parse_wr, WrFile};
pub use thurston::ThurstonMatrix;
pub use wreath::{Elem, WreathBiset};
