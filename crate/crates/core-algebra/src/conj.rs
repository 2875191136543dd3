use std::fmt;

use crate::group::FpGroup;
use crate::word::{cmp_syllables, Word};

/// A conjugacy class, stored by its canonical representative: the
/// shortlex-least rotation of a cyclically reduced conjugate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjClass {
    representative: Word,
}

impl ConjClass {
    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn is_identity(&self) -> bool {
        self.representative.is_identity()
    }
}

impl FpGroup {
    pub fn conj_canonical(&self, w: &Word) -> ConjClass {
        let (r, _) = self.cyclic_reduce(w);
        let s = r.syllables();
        let n = s.len();
        let mut best: Vec<_> = s.to_vec();
        for k in 1..n {
            let rot: Vec<_> = s[k..].iter().chain(&s[..k]).copied().collect();
            if cmp_syllables(&rot, &best).is_lt() {
                best = rot;
            }
        }
        ConjClass { representative: Word::from_normalized(best) }
    }

    /// Conjugacy test in the free product.
    pub fn are_conjugate(&self, u: &Word, v: &Word) -> bool {
        self.conj_canonical(u) == self.conj_canonical(v)
    }

    /// Formats a class as its representative word.
    pub fn fmt_class(&self, c: &ConjClass) -> String {
        self.fmt_word(c.representative())
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.representative.syllables())
    }
}
