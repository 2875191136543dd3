use bisetkit_algebra::{ConjClass, FpGroup, Hom, Order, Report, Word};

use crate::decperm::{check_perm, DecPerm};
use crate::error::BisetError;

/// A basis element `s` decorated on the left: the biset element `h . s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub h: Word,
    pub s: usize,
}

impl Elem {
    pub fn basis(s: usize) -> Self {
        Elem { h: Word::identity(), s }
    }
}

/// A left-free `H`-`G` biset with basis `{0, ..., d-1}` and wreath map
/// given on the generators of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathBiset {
    pub left: FpGroup,
    pub right: FpGroup,
    pub degree: usize,
    pub gens: Vec<DecPerm>,
}

impl WreathBiset {
    pub fn new(left: FpGroup, right: FpGroup, degree: usize, gens: Vec<DecPerm>) -> Result<Self, BisetError> {
        if gens.len() != right.rank() {
            return Err(BisetError::GroupMismatch(format!(
                "{} generator images for a group of rank {}",
                gens.len(),
                right.rank()
            )));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(BisetError::Degree { expected: degree, found: g.degree() });
            }
        }
        Ok(WreathBiset { left, right, degree, gens })
    }

    /// `_G G_G` with basis `{1}`.
    pub fn identity(g: &FpGroup) -> Self {
        let gens = (0..g.rank()).map(|i| DecPerm { dec: vec![g.gen(i)], perm: vec![0] }).collect();
        WreathBiset { left: g.clone(), right: g.clone(), degree: 1, gens }
    }

    /// The right-principal biset `B_phi` of `phi: G -> H`: `s . g = phi(g) . s`.
    pub fn of_hom(right: &FpGroup, left: &FpGroup, phi: &Hom) -> Self {
        let gens = phi.images.iter().map(|w| DecPerm { dec: vec![w.clone()], perm: vec![0] }).collect();
        WreathBiset { left: left.clone(), right: right.clone(), degree: 1, gens }
    }

    /// The regular cyclic biset of `z^d` over `<name:inf>`:
    /// `name = <1, ..., 1, name>(1 2 ... d)`.
    pub fn power_map(name: &str, d: usize) -> Self {
        let g = FpGroup::cyclic(name, Order::Infinite);
        let mut dec = vec![Word::identity(); d];
        dec[d - 1] = g.gen(0);
        let perm = (0..d).map(|i| (i + 1) % d).collect();
        WreathBiset { left: g.clone(), right: g, degree: d, gens: vec![DecPerm { dec, perm }] }
    }

    pub fn is_self_biset(&self) -> bool {
        self.left == self.right
    }

    /// `Phi(w)` for a word in the right group.
    pub fn eval(&self, w: &Word) -> DecPerm {
        let mut acc = DecPerm::identity(self.degree);
        for &(f, e) in w.syllables() {
            acc = acc.mul(&self.left, &self.gens[f].pow(&self.left, e));
        }
        acc
    }

    /// `(h . s) . w`
    pub fn act(&self, x: &Elem, w: &Word) -> Elem {
        let p = self.eval(w);
        Elem { h: self.left.mul(&x.h, &p.dec[x.s]), s: p.perm[x.s] }
    }

    /// `k . (h . s)`
    pub fn act_left(&self, k: &Word, x: &Elem) -> Elem {
        Elem { h: self.left.mul(k, &x.h), s: x.s }
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        if self.gens.len() != self.right.rank() {
            r.push("biset", format!("{} generators for rank {}", self.gens.len(), self.right.rank()));
            return r;
        }
        for (i, g) in self.gens.iter().enumerate() {
            let name = &self.right.factor(i).name;
            if g.degree() != self.degree || g.dec.len() != self.degree {
                r.push(name.as_str(), format!("expected degree {}", self.degree));
                continue;
            }
            if check_perm(&g.perm).is_err() {
                r.push(name.as_str(), "permutation is not a bijection");
                continue;
            }
            for (j, w) in g.dec.iter().enumerate() {
                if let Err(e) = self.left.check(w) {
                    r.push(format!("{name}[{}]", j + 1), e.to_string());
                }
            }
            if let Order::Finite(n) = self.right.order_of_factor(i) {
                let p = g.pow(&self.left, n as i64);
                if !p.is_identity() {
                    r.push(
                        name.as_str(),
                        format!("relation {name}^{n} fails: image is {}", p.fmt_with(&self.left)),
                    );
                }
            }
        }
        r
    }

    /// `B (x) C`, basis `(s, t)` at index `s * deg(C) + t`.
    pub fn tensor(&self, c: &WreathBiset) -> Result<WreathBiset, BisetError> {
        if self.right != c.left {
            return Err(BisetError::GroupMismatch(format!("{} vs {}", self.right, c.left)));
        }
        let (db, dc) = (self.degree, c.degree);
        let gens = c
            .gens
            .iter()
            .map(|phi_c| {
                let mut dec = vec![Word::identity(); db * dc];
                let mut perm = vec![0; db * dc];
                for t in 0..dc {
                    let phi_b = self.eval(&phi_c.dec[t]);
                    for s in 0..db {
                        dec[s * dc + t] = phi_b.dec[s].clone();
                        perm[s * dc + t] = phi_b.perm[s] * dc + phi_c.perm[t];
                    }
                }
                DecPerm { dec, perm }
            })
            .collect();
        Ok(WreathBiset { left: self.left.clone(), right: c.right.clone(), degree: db * dc, gens })
    }

    /// Rewrites the recursion as `w^-1 Phi(g) w`. The new basis is
    /// `t_{pi(i)} = h_i^-1 s_i` for `w = <h_i> pi`.
    pub fn change_basis(&self, w: &DecPerm) -> Result<WreathBiset, BisetError> {
        if w.degree() != self.degree {
            return Err(BisetError::Degree { expected: self.degree, found: w.degree() });
        }
        let gens = self.gens.iter().map(|g| g.conj_by(&self.left, w)).collect();
        Ok(WreathBiset { gens, ..self.clone() })
    }

    /// Replaces both groups through homomorphisms: the result is the
    /// `H'`-`G'` biset with `Phi'(g') = alpha(Phi(beta(g')))`.
    pub fn twist(&self, alpha: &Hom, new_left: &FpGroup, beta: &Hom, new_right: &FpGroup) -> WreathBiset {
        let gens = beta
            .images
            .iter()
            .map(|w| {
                let p = self.eval(w);
                DecPerm { dec: p.dec.iter().map(|h| alpha.apply(new_left, h)).collect(), perm: p.perm }
            })
            .collect();
        WreathBiset { left: new_left.clone(), right: new_right.clone(), degree: self.degree, gens }
    }

    /// Lift of a conjugacy class: one `(cycle length, class of the
    /// product of decorations along the cycle)` per cycle, sorted.
    pub fn lift_conjugacy(&self, c: &ConjClass) -> Vec<(usize, ConjClass)> {
        let p = self.eval(c.representative());
        let mut out: Vec<(usize, ConjClass)> = p
            .cycles()
            .into_iter()
            .map(|cyc| {
                let k = self.left.product(cyc.iter().map(|&i| &p.dec[i]));
                (cyc.len(), self.left.conj_canonical(&k))
            })
            .collect();
        out.sort();
        out
    }

    /// Contragredient of a degree-one biset whose wreath map is an
    /// isomorphism `G -> H`.
    pub fn contragredient(&self) -> Result<WreathBiset, BisetError> {
        if self.degree != 1 {
            return Err(BisetError::NotInvertible(format!(
                "degree {} biset is not biprincipal",
                self.degree
            )));
        }
        let phi = Hom::new(self.gens.iter().map(|g| g.dec[0].clone()).collect());
        let psi = phi
            .invert(&self.right, &self.left)
            .map_err(|e| BisetError::NotInvertible(e.to_string()))?;
        Ok(WreathBiset::of_hom(&self.left, &self.right, &psi))
    }

    pub fn fmt_table(&self) -> String {
        let mut s = String::new();
        for (i, g) in self.gens.iter().enumerate() {
            s.push_str(&format!("{} = {}\n", self.right.factor(i).name, g.fmt_with(&self.left)));
        }
        s
    }
}
