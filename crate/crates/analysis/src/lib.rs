//! Level actions on the tree of tensor powers of a self-biset, bounded
//! tests for combinatorial equivalence, and conjugacy classes of biset
//! elements within a ball.

mod budget;
mod conj;
mod equiv;
mod error;
mod kernel;
mod level;

pub use budget::{Budget, BUDGET_VAR};
pub use conj::{conj_classes_bounded, conjugate, fmt_elem, ClassSummary, ConjClasses, CLASS_NOTE};
pub use equiv::{
    equivalent_upto, Certificate, Direction, EquivalenceVerdict, Evidence, Invariant, Refutation, Rejection, Search,
    Witness,
};
pub use error::AnalysisError;
pub use kernel::{approx_kernel, ball};
pub use level::{
    compose, cycle_type, digits_of, index_of, invert, level_action, level_action_jobs, orbit_count, point_image, project,
    GeneratorLevels, LevelAction, LevelSummary,
};
