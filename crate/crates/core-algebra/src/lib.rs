//! Free products of cyclic groups: normal forms, conjugacy classes, word
//! enumeration and a small text syntax.

mod conj;
mod enumerate;
mod error;
mod group;
mod hom;
mod parse;
mod report;
mod word;

pub use conj::ConjClass;
pub use enumerate::WordEnumerator;
pub use error::AlgebraError;
pub use group::{CyclicFactor, FpGroup, Order};
pub use hom::Hom;
pub use report::{Issue, Report};
pub use parse::{is_name_char, parse_group, parse_group_decl};
pub use word::{cmp_syllables, Syllable, Word};
