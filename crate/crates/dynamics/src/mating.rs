use bisetkit_algebra::{FpGroup, Order, Word};
use bisetkit_bisets::{cycles_of, CyclicBiset, Elem, WreathBiset};
use bisetkit_gob::{GraphOfBisets, ObjectBiset};
use bisetkit_graphs::{GraphMorphism, GraphOfGroups};

use crate::error::DynamicsError;

/// A self-biset with the loop around infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub biset: WreathBiset,
    pub peripheral: Word,
}

impl Polynomial {
    pub fn new(biset: WreathBiset, peripheral: Word) -> Self {
        Polynomial { biset, peripheral }
    }
}

/// Images `beta_j` of the basis of the regular cyclic biset of degree `d`
/// in `b`, for the congruence sending the edge generator to `left` and
/// `right`. Needs `right` to act as one `d`-cycle whose decorations
/// multiply to `left`.
pub fn cyclic_congruence(b: &WreathBiset, left: &Word, right: &Word, d: usize) -> Result<Vec<Elem>, DynamicsError> {
    if b.degree != d {
        return Err(DynamicsError::Precondition(format!("biset has degree {}, expected {d}", b.degree)));
    }
    let dp = b.eval(right);
    let cycles = cycles_of(&dp.perm);
    if cycles.len() != 1 {
        return Err(DynamicsError::Peripheral(format!(
            "`{}` has {} cycles on the basis, expected one {d}-cycle",
            b.right.fmt_word(right),
            cycles.len()
        )));
    }
    for k in 0..d {
        let mut beta = Vec::with_capacity(d);
        let mut x = Elem::basis(k);
        for _ in 0..d {
            beta.push(x.clone());
            x = b.act(&x, right);
        }
        if x == (Elem { h: left.clone(), s: k }) {
            return Ok(beta);
        }
    }
    Err(DynamicsError::Peripheral(format!(
        "decorations along the cycle of `{}` never multiply to `{}`",
        b.right.fmt_word(right),
        b.left.fmt_word(left)
    )))
}

/// Two vertices `P`, `Q` joined by one edge with group `Z`, carrying the
/// two polynomial bisets and the regular cyclic biset of degree `d` on the
/// edge. The edge generator is the peripheral loop of `P` and the inverse
/// peripheral loop of `Q`.
pub fn mating(p: &Polynomial, q: &Polynomial, d: usize) -> Result<GraphOfBisets, DynamicsError> {
    for (name, x) in [("first", p), ("second", q)] {
        if x.biset.degree != d {
            return Err(DynamicsError::Precondition(format!(
                "{name} biset has degree {}, mating needs {d}",
                x.biset.degree
            )));
        }
        if !x.biset.is_self_biset() {
            return Err(DynamicsError::Precondition(format!("{name} biset is not a self-biset")));
        }
    }
    let pi_q_inv = q.biset.right.inv(&q.peripheral);
    let beta_p = cyclic_congruence(&p.biset, &p.peripheral, &p.peripheral, d)?;
    let beta_q = cyclic_congruence(&q.biset, &pi_q_inv, &pi_q_inv, d)?;

    let mut gog = GraphOfGroups::new();
    let vp = gog.add_vertex("P", p.biset.right.clone())?;
    let vq = gog.add_vertex("Q", q.biset.right.clone())?;
    let e = gog.add_edge("e", vp, vq, FpGroup::cyclic("c", Order::Infinite), vec![p.peripheral.clone()], vec![pi_q_inv])?;
    let g = gog.graph.clone();
    let edge = CyclicBiset::new(Order::Infinite, d, true);
    let mut bisets = vec![ObjectBiset::Cyclic(edge); g.len()];
    bisets[vp] = ObjectBiset::Wreath(p.biset.clone());
    bisets[vq] = ObjectBiset::Wreath(q.biset.clone());
    let id: Vec<Elem> = (0..d).map(Elem::basis).collect();
    let mut minus = vec![id.clone(); g.len()];
    minus[e] = beta_p;
    minus[g.reverse(e)] = beta_q;
    let out = GraphOfBisets {
        carrier: g.clone(),
        left: gog.clone(),
        right: gog,
        lambda: GraphMorphism::identity(&g),
        rho: GraphMorphism::identity(&g),
        bisets,
        minus,
        reverse: vec![id; g.len()],
    };
    let r = out.validate();
    if !r.is_ok() {
        return Err(DynamicsError::InvalidGob(r.to_string()));
    }
    Ok(out)
}
