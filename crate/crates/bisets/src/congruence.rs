use bisetkit_algebra::{Hom, Report};

use crate::wreath::{Elem, WreathBiset};

/// A morphism `(psi, beta, phi)` between left-free bisets, with `beta`
/// given on the basis of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub psi: Hom,
    pub phi: Hom,
    pub beta: Vec<Elem>,
}

impl Congruence {
    pub fn identity(b: &WreathBiset) -> Self {
        Congruence {
            psi: Hom::identity(&b.left),
            phi: Hom::identity(&b.right),
            beta: (0..b.degree).map(Elem::basis).collect(),
        }
    }

    /// `(h . s)^beta = psi(h) . beta(s)`
    pub fn apply(&self, tgt: &WreathBiset, x: &Elem) -> Elem {
        tgt.act_left(&self.psi.apply(&tgt.left, &x.h), &self.beta[x.s])
    }

    /// Checks `(s . g)^beta = beta(s) . phi(g)` for every basis element and
    /// right generator.
    pub fn check(&self, src: &WreathBiset, tgt: &WreathBiset) -> Report {
        let mut r = Report::new();
        if self.beta.len() != src.degree {
            r.push("congruence", format!("beta has {} entries, degree is {}", self.beta.len(), src.degree));
            return r;
        }
        if let Err(e) = self.psi.check(&src.left, &tgt.left) {
            r.push("congruence psi", e.to_string());
        }
        if let Err(e) = self.phi.check(&src.right, &tgt.right) {
            r.push("congruence phi", e.to_string());
        }
        if self.beta.iter().any(|e| e.s >= tgt.degree) {
            r.push("congruence beta", "basis index out of range");
        }
        if !r.is_ok() {
            return r;
        }
        for g in 0..src.right.rank() {
            let gw = src.right.gen(g);
            let phig = self.phi.apply(&tgt.right, &gw);
            for s in 0..src.degree {
                let lhs = self.apply(tgt, &src.act(&Elem::basis(s), &gw));
                let rhs = tgt.act(&self.beta[s], &phig);
                if lhs != rhs {
                    r.push(
                        format!("basis {} under {}", s + 1, src.right.factor(g).name),
                        "congruence does not intertwine the right actions",
                    );
                }
            }
        }
        r
    }
}
