use bisetkit_algebra::{FpGroup, Order, Word};

use crate::decperm::DecPerm;
use crate::error::BisetError;
use crate::wreath::{Elem, WreathBiset};

/// The biset `(1/d)Z / nZ`: the left generator adds 1, the right
/// generator adds `1/d` when `right_active` and acts trivially otherwise.
/// Basis element `j` is the point `j/d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicBiset {
    pub n: Order,
    pub d: usize,
    pub right_active: bool,
}

impl CyclicBiset {
    pub fn new(n: Order, d: usize, right_active: bool) -> Self {
        CyclicBiset { n, d, right_active }
    }

    /// The element `x/d`, as `t^q . s_j` with `x = q d + j`.
    pub fn point(&self, left: &FpGroup, x: i64) -> Elem {
        let d = self.d as i64;
        let (q, j) = (x.div_euclid(d), x.rem_euclid(d));
        Elem { h: cyclic_pow(left, q), s: j as usize }
    }

    /// Numerator of the element in `(1/d)Z`; for finite `n` it is taken in `[0, n d)`.
    pub fn numerator(&self, e: &Elem) -> i64 {
        let q = cyclic_exponent(&e.h);
        let x = q * self.d as i64 + e.s as i64;
        match self.n {
            Order::Finite(n) => x.rem_euclid(n as i64 * self.d as i64),
            Order::Infinite => x,
        }
    }

    /// Wreath form over the given groups, each trivial or cyclic.
    pub fn to_wreath(&self, left: &FpGroup, right: &FpGroup) -> Result<WreathBiset, BisetError> {
        let lf = left
            .cyclic_factor()
            .ok_or_else(|| BisetError::GroupMismatch(format!("left group {left} is not cyclic")))?;
        let lorder = lf.map_or(Order::Finite(1), |i| left.order_of_factor(i));
        if lorder != self.n {
            return Err(BisetError::GroupMismatch(format!(
                "cyclic biset has left order {} but group {left} has order {lorder}",
                self.n
            )));
        }
        let rf = right
            .cyclic_factor()
            .ok_or_else(|| BisetError::GroupMismatch(format!("right group {right} is not cyclic")))?;
        let d = self.d;
        let gens = (0..right.rank())
            .map(|i| {
                if Some(i) == rf && self.right_active {
                    let mut dec = vec![Word::identity(); d];
                    dec[d - 1] = cyclic_pow(left, 1);
                    DecPerm { dec, perm: (0..d).map(|j| (j + 1) % d).collect() }
                } else {
                    DecPerm::identity(d)
                }
            })
            .collect();
        WreathBiset::new(left.clone(), right.clone(), d, gens)
    }
}

/// `t^q` in a group that is trivial or cyclic.
pub fn cyclic_pow(g: &FpGroup, q: i64) -> Word {
    match g.cyclic_factor() {
        Some(Some(i)) => g.gen_pow(i, q),
        _ => Word::identity(),
    }
}

/// Exponent `q` with `w = t^q` in a trivial or cyclic group.
pub fn cyclic_exponent(w: &Word) -> i64 {
    w.syllables().iter().map(|s| s.1).sum()
}
