use bisetkit_algebra::{FpGroup, Hom, Report};
use bisetkit_bisets::{Congruence, CyclicBiset, Elem, TableBiset, WreathBiset};
use bisetkit_graphs::{Graph, GraphMorphism, GraphOfGroups};

use crate::error::GobError;

/// The biset attached to one object of the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectBiset {
    Cyclic(CyclicBiset),
    Table(TableBiset),
    Wreath(WreathBiset),
}

impl ObjectBiset {
    pub fn to_wreath(&self, left: &FpGroup, right: &FpGroup) -> Result<WreathBiset, GobError> {
        let w = match self {
            ObjectBiset::Cyclic(c) => c.to_wreath(left, right)?,
            ObjectBiset::Table(t) => {
                if &t.left_group != left || &t.right_group != right {
                    return Err(GobError::Mismatch(format!(
                        "table biset over {} and {}, expected {left} and {right}",
                        t.left_group, t.right_group
                    )));
                }
                t.to_wreath()?
            }
            ObjectBiset::Wreath(w) => {
                if &w.left != left || &w.right != right {
                    return Err(GobError::Mismatch(format!(
                        "wreath biset over {} and {}, expected {left} and {right}",
                        w.left, w.right
                    )));
                }
                w.clone()
            }
        };
        Ok(w)
    }
}

/// A graph of bisets `_Y B _X`. Congruences are stored on the wreath basis
/// of each biset: `minus[z][s]` is the image of basis element `s` of `B_z`
/// in `B_{z^-}`, and `reverse[z][s]` its image in `B_{reverse z}`. On
/// vertices both are the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfBisets {
    pub carrier: Graph,
    pub left: GraphOfGroups,
    pub right: GraphOfGroups,
    pub lambda: GraphMorphism,
    pub rho: GraphMorphism,
    pub bisets: Vec<ObjectBiset>,
    pub minus: Vec<Vec<Elem>>,
    pub reverse: Vec<Vec<Elem>>,
}

pub(crate) fn identity_basis(d: usize) -> Vec<Elem> {
    (0..d).map(Elem::basis).collect()
}

impl GraphOfBisets {
    /// The identity graph of bisets over `gog`: carrier `gog`, both maps the
    /// identity, and `B_z = G_z`.
    pub fn identity(gog: &GraphOfGroups) -> Self {
        let n = gog.graph.len();
        GraphOfBisets {
            carrier: gog.graph.clone(),
            left: gog.clone(),
            right: gog.clone(),
            lambda: GraphMorphism::identity(&gog.graph),
            rho: GraphMorphism::identity(&gog.graph),
            bisets: gog.groups.iter().map(|g| ObjectBiset::Wreath(WreathBiset::identity(g))).collect(),
            minus: vec![identity_basis(1); n],
            reverse: vec![identity_basis(1); n],
        }
    }

    pub fn left_group(&self, z: usize) -> &FpGroup {
        &self.left.groups[self.lambda.apply(z)]
    }

    pub fn right_group(&self, z: usize) -> &FpGroup {
        &self.right.groups[self.rho.apply(z)]
    }

    pub fn wreath(&self, z: usize) -> Result<WreathBiset, GobError> {
        self.bisets[z].to_wreath(self.left_group(z), self.right_group(z))
    }

    pub fn wreaths(&self) -> Result<Vec<WreathBiset>, GobError> {
        (0..self.carrier.len()).map(|z| self.wreath(z)).collect()
    }

    fn homs(&self, z: usize, y: usize) -> Result<(Hom, Hom), GobError> {
        let (lz, ly) = (self.lambda.apply(z), self.lambda.apply(y));
        let (rz, ry) = (self.rho.apply(z), self.rho.apply(y));
        let c = &self.carrier;
        let psi = self.left.hom_between(lz, ly).ok_or_else(|| {
            GobError::Invalid(format!("`{}` -> `{}`: lambda images are not adjacent", c.name(z), c.name(y)))
        })?;
        let phi = self.right.hom_between(rz, ry).ok_or_else(|| {
            GobError::Invalid(format!("`{}` -> `{}`: rho images are not adjacent", c.name(z), c.name(y)))
        })?;
        Ok((psi, phi))
    }

    /// The congruence `B_z -> B_{z^-}`.
    pub fn minus_congruence(&self, z: usize) -> Result<Congruence, GobError> {
        let (psi, phi) = self.homs(z, self.carrier.origin(z))?;
        Ok(Congruence { psi, phi, beta: self.minus[z].clone() })
    }

    /// The congruence `B_z -> B_{reverse z}`.
    pub fn reverse_congruence(&self, z: usize) -> Result<Congruence, GobError> {
        let (psi, phi) = self.homs(z, self.carrier.reverse(z))?;
        Ok(Congruence { psi, phi, beta: self.reverse[z].clone() })
    }

    /// `b^+`, the image of `b` in `B_{z^+}` through the reverse edge.
    pub fn plus_of(&self, wr: &[WreathBiset], z: usize, b: &Elem) -> Result<Elem, GobError> {
        let r = self.reverse_congruence(z)?.apply(&wr[self.carrier.reverse(z)], b);
        Ok(self.minus_congruence(self.carrier.reverse(z))?.apply(&wr[self.carrier.terminus(z)], &r))
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let c = &self.carrier;
        if let Err(e) = c.validate() {
            r.push("carrier", e.to_string());
            return r;
        }
        r.extend("left graph", self.left.validate());
        r.extend("right graph", self.right.validate());
        if let Err(e) = self.lambda.check(c, &self.left.graph) {
            r.push("lambda", e.to_string());
        }
        if let Err(e) = self.rho.check(c, &self.right.graph) {
            r.push("rho", e.to_string());
        }
        let n = c.len();
        if self.bisets.len() != n || self.minus.len() != n || self.reverse.len() != n {
            r.push("graph of bisets", "per-object data has the wrong length");
        }
        if !r.is_ok() {
            return r;
        }
        let mut wr = Vec::with_capacity(n);
        for z in 0..n {
            match self.wreath(z) {
                Ok(w) => {
                    r.extend(&format!("biset {}", c.name(z)), w.validate());
                    wr.push(Some(w));
                }
                Err(e) => {
                    r.push(format!("biset {}", c.name(z)), e.to_string());
                    wr.push(None);
                }
            }
        }
        if !r.is_ok() {
            return r;
        }
        let wr: Vec<WreathBiset> = wr.into_iter().map(Option::unwrap).collect();
        for z in 0..n {
            let name = c.name(z);
            if c.is_vertex(z) {
                let id = identity_basis(wr[z].degree);
                if self.minus[z] != id || self.reverse[z] != id {
                    r.push(name, "vertex congruences are not the identity");
                }
                continue;
            }
            let zb = c.reverse(z);
            match self.minus_congruence(z) {
                Ok(m) => r.extend(&format!("minus {name}"), m.check(&wr[z], &wr[c.origin(z)])),
                Err(e) => r.push(format!("minus {name}"), e.to_string()),
            }
            match self.reverse_congruence(z) {
                Ok(rev) => {
                    let check = rev.check(&wr[z], &wr[zb]);
                    let ok = check.is_ok();
                    r.extend(&format!("reverse {name}"), check);
                    if ok {
                        if let Ok(back) = self.reverse_congruence(zb) {
                            for s in 0..wr[z].degree {
                                let there = rev.apply(&wr[zb], &Elem::basis(s));
                                if back.apply(&wr[z], &there) != Elem::basis(s) {
                                    r.push(format!("reverse {name}"), format!("not involutive at basis {}", s + 1));
                                }
                            }
                        }
                    }
                }
                Err(e) => r.push(format!("reverse {name}"), e.to_string()),
            }
        }
        r
    }

    /// Both maps are graph isomorphisms and every biset is biprincipal.
    pub fn is_biprincipal(&self) -> bool {
        if !self.lambda.is_isomorphism(&self.carrier, &self.left.graph)
            || !self.rho.is_isomorphism(&self.carrier, &self.right.graph)
        {
            return false;
        }
        self.wreaths().is_ok_and(|wr| wr.iter().all(|w| w.degree == 1 && w.contragredient().is_ok()))
    }

    /// Every biset has a single left orbit and `rho` is an isomorphism.
    pub fn is_left_principal(&self) -> bool {
        self.rho.is_isomorphism(&self.carrier, &self.right.graph)
            && self.wreaths().is_ok_and(|wr| wr.iter().all(|w| w.degree == 1))
    }

    /// Carrier vertices over a vertex of the right graph, in index order.
    pub fn fiber(&self, v: usize) -> Vec<usize> {
        self.carrier.vertices().filter(|&z| self.rho.apply(z) == v).collect()
    }

    pub fn degree_over(&self, v: usize) -> Result<usize, GobError> {
        let mut d = 0;
        for z in self.fiber(v) {
            d += self.wreath(z)?.degree;
        }
        Ok(d)
    }
}
