use bisetkit_graphs::{GraphSubdivision, Subdivision};

use crate::error::GobError;
use crate::gob::{identity_basis, GraphOfBisets};

/// A graph of bisets with all three graphs barycentrically subdivided.
#[derive(Clone, Debug)]
pub struct GobSubdivision {
    pub gob: GraphOfBisets,
    pub carrier: GraphSubdivision,
    pub left: Subdivision,
    pub right: Subdivision,
}

impl GraphOfBisets {
    /// Midpoints carry the edge bisets; the half of `e` at `e^-` and the
    /// half at `e^+` carry `B_e` when oriented like `e` and `B_{reverse e}`
    /// otherwise.
    pub fn barycentric(&self) -> Result<GobSubdivision, GobError> {
        let c = &self.carrier;
        let cs = c.barycentric();
        let ls = self.left.barycentric_subdivision();
        let rs = self.right.barycentric_subdivision();
        let lambda = self.lambda.subdivide(c, &cs, &self.left.graph, &ls.graph)?;
        let rho = self.rho.subdivide(c, &cs, &self.right.graph, &rs.graph)?;
        let g = &cs.graph;
        let n = g.len();
        let mut bisets = Vec::with_capacity(n);
        let mut minus = Vec::with_capacity(n);
        let mut reverse = Vec::with_capacity(n);
        for x in 0..n {
            let o = cs.origin_object[x];
            match cs.half_info[x] {
                None => {
                    let d = self.minus[o].len();
                    bisets.push(self.bisets[o].clone());
                    minus.push(identity_basis(d));
                    reverse.push(identity_basis(d));
                }
                Some(h) => {
                    let e = h.edge;
                    let like_e = h.into_mid != h.plus_side;
                    let src = if like_e { e } else { c.reverse(e) };
                    bisets.push(self.bisets[src].clone());
                    reverse.push(self.reverse[src].clone());
                    let at_old_vertex = h.into_mid;
                    minus.push(match (at_old_vertex, like_e) {
                        (true, _) => self.minus[src].clone(),
                        (false, true) => identity_basis(self.minus[src].len()),
                        (false, false) => self.reverse[src].clone(),
                    });
                }
            }
        }
        let gob = GraphOfBisets {
            carrier: g.clone(),
            left: ls.gog.clone(),
            right: rs.gog.clone(),
            lambda,
            rho,
            bisets,
            minus,
            reverse,
        };
        Ok(GobSubdivision { gob, carrier: cs, left: ls, right: rs })
    }
}
