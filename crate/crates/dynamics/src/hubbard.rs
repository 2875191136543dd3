use bisetkit_algebra::{Order, Word};
use bisetkit_bisets::{CyclicBiset, Elem};
use bisetkit_gob::{GobSubdivision, GraphOfBisets, ObjectBiset};

use crate::error::DynamicsError;
use crate::tree::{validate_bundle, Angle, BundleCheck, HubbardBundle};

/// The compiled bundle before and after subdivision.
#[derive(Clone, Debug)]
pub struct HubbardGob {
    pub check: BundleCheck,
    /// Carrier `HT^1` with the weak map `lam`.
    pub weak: GraphOfBisets,
    pub subdivided: GobSubdivision,
}

fn biset_of(b: &HubbardBundle, chk: &BundleCheck, z: usize) -> CyclicBiset {
    let h = &b.base.tree;
    let lz = b.lam.apply(z);
    let n = if h.is_vertex(lz) { b.base.ord[lz] } else { Order::Finite(1) };
    if b.cover.tree.is_vertex(z) {
        CyclicBiset::new(n, b.deg[z], chk.active(z))
    } else {
        CyclicBiset::new(n, 1, false)
    }
}

pub fn hubbard_gob(b: &HubbardBundle) -> Result<HubbardGob, DynamicsError> {
    let check = validate_bundle(b);
    if !check.is_ok() {
        return Err(DynamicsError::InvalidBundle(check.report.to_string()));
    }
    let g = &b.cover.tree;
    let gog = b.base.gog();
    let cyc: Vec<CyclicBiset> = (0..g.len()).map(|z| biset_of(b, &check, z)).collect();
    let mut minus = Vec::with_capacity(g.len());
    let mut reverse = Vec::with_capacity(g.len());
    for z in 0..g.len() {
        if g.is_vertex(z) {
            minus.push((0..cyc[z].d).map(Elem::basis).collect());
            reverse.push((0..cyc[z].d).map(Elem::basis).collect());
            continue;
        }
        let v = g.origin(z);
        let into = if check.active(v) {
            let x = Angle::from(b.deg[v] as i64) * b.cover.angle_of(z) + check.offsets[&v];
            cyc[v].point(&gog.groups[b.lam.apply(v)], x.floor().to_integer())
        } else {
            Elem { h: Word::identity(), s: 0 }
        };
        minus.push(vec![into]);
        reverse.push(vec![Elem::basis(0)]);
    }
    let weak = GraphOfBisets {
        carrier: g.clone(),
        left: gog.clone(),
        right: gog,
        lambda: b.lam.clone(),
        rho: b.p.clone(),
        bisets: cyc.into_iter().map(ObjectBiset::Cyclic).collect(),
        minus,
        reverse,
    };
    let r = weak.validate();
    if !r.is_ok() {
        return Err(DynamicsError::InvalidGob(r.to_string()));
    }
    let subdivided = weak.barycentric()?;
    let r = subdivided.gob.validate();
    if !r.is_ok() {
        return Err(DynamicsError::InvalidGob(r.to_string()));
    }
    Ok(HubbardGob { check, weak, subdivided })
}

/// The graph of cyclic bisets of a bundle, on the barycentric subdivision
/// of the cover.
pub fn hubbard_to_gob(b: &HubbardBundle) -> Result<GraphOfBisets, DynamicsError> {
    Ok(hubbard_gob(b)?.subdivided.gob)
}
