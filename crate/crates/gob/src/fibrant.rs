use std::collections::BTreeMap;

use bisetkit_algebra::Word;

use crate::error::GobError;
use crate::gob::GraphOfBisets;

/// One entry of a decomposition: basis element `s` of `B_v` equals
/// `g . t^-` for the basis element `t` of `B_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub edge: usize,
    pub t: usize,
    pub g: Word,
}

/// For each carrier vertex `v` and right edge `f` starting at `rho(v)`,
/// the decomposition of the basis of `B_v` along the edges over `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FibrantTable {
    pub entries: BTreeMap<(usize, usize), Vec<Lift>>,
}

impl FibrantTable {
    pub fn lift(&self, v: usize, f: usize, s: usize) -> Option<&Lift> {
        self.entries.get(&(v, f)).and_then(|l| l.get(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fibrancy {
    Fibrant(FibrantTable),
    NotFibrant { vertex: usize, edge: usize, reason: String },
}

impl Fibrancy {
    pub fn table(self) -> Option<FibrantTable> {
        match self {
            Fibrancy::Fibrant(t) => Some(t),
            Fibrancy::NotFibrant { .. } => None,
        }
    }
}

impl GraphOfBisets {
    /// Decides left-fibrancy. Every biset is left-free in wreath form, so
    /// the induced map is bijective exactly when the basis elements of the
    /// edge bisets land in distinct left orbits covering `B_v`.
    pub fn is_left_fibrant(&self) -> Result<Fibrancy, GobError> {
        let c = &self.carrier;
        let rg = &self.right.graph;
        for z in 0..c.len() {
            if c.is_vertex(z) != rg.is_vertex(self.rho.apply(z)) {
                return Err(GobError::NotSimplicial(c.name(z).to_string()));
            }
        }
        let wr = self.wreaths()?;
        let mut table = FibrantTable::default();
        for v in c.vertices() {
            let x = self.rho.apply(v);
            for f in rg.star(x) {
                let mut slots: Vec<Option<Lift>> = vec![None; wr[v].degree];
                for e in c.star(v) {
                    if self.rho.apply(e) != f {
                        continue;
                    }
                    for t in 0..wr[e].degree {
                        let b = &self.minus[e][t];
                        if let Some(prev) = &slots[b.s] {
                            let reason = format!(
                                "basis {} is hit by `{}` basis {} and `{}` basis {}",
                                b.s + 1,
                                c.name(prev.edge),
                                prev.t + 1,
                                c.name(e),
                                t + 1
                            );
                            return Ok(Fibrancy::NotFibrant { vertex: v, edge: f, reason });
                        }
                        let g = wr[v].left.inv(&b.h);
                        slots[b.s] = Some(Lift { edge: e, t, g });
                    }
                }
                if let Some(s) = slots.iter().position(Option::is_none) {
                    let reason = format!("basis {} of `{}` is not reached", s + 1, c.name(v));
                    return Ok(Fibrancy::NotFibrant { vertex: v, edge: f, reason });
                }
                table.entries.insert((v, f), slots.into_iter().map(Option::unwrap).collect());
            }
        }
        Ok(Fibrancy::Fibrant(table))
    }
}
