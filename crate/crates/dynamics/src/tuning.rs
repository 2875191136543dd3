use std::collections::BTreeMap;

use bisetkit_algebra::{FpGroup, Hom, Order, Word};
use bisetkit_bisets::{Congruence, CyclicBiset, Elem, WreathBiset};
use bisetkit_gob::{GraphOfBisets, ObjectBiset};

use crate::error::DynamicsError;
use crate::mating::cyclic_congruence;

/// The biset replacing the regular cyclic biset at one vertex of the
/// cycle: a `G_i`-`G_{i+1}` biset, the peripheral loop in `G_i`, and the
/// congruence from the regular cyclic biset (derived from the peripheral
/// loops when absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuningPiece {
    pub biset: WreathBiset,
    pub peripheral: Word,
    pub beta: Option<Vec<Elem>>,
}

impl TuningPiece {
    pub fn new(biset: WreathBiset, peripheral: Word) -> Self {
        TuningPiece { biset, peripheral, beta: None }
    }
}

fn pre(msg: impl Into<String>) -> DynamicsError {
    DynamicsError::Precondition(msg.into())
}

/// Replaces the bisets along a periodic cycle of carrier vertices `z_i`,
/// with `lambda(z_i) = x_i` and `rho(z_i) = x_{i+1}`, by the given pieces.
/// Bisets over `x_i` on the left are induced up along `t -> pi_i`; bisets
/// over `x_i` on the right must have trivial right action and keep it.
pub fn tuning(gob: &GraphOfBisets, cycle: &[usize], pieces: &[TuningPiece]) -> Result<GraphOfBisets, DynamicsError> {
    let c = &gob.carrier;
    let lg = &gob.left.graph;
    if gob.left != gob.right {
        return Err(pre("left and right graphs of groups differ"));
    }
    if cycle.is_empty() || cycle.len() != pieces.len() {
        return Err(pre(format!("{} cycle vertices but {} pieces", cycle.len(), pieces.len())));
    }
    let n = cycle.len();
    let xs: Vec<usize> = cycle.iter().map(|&z| gob.lambda.apply(z)).collect();
    for (i, &z) in cycle.iter().enumerate() {
        if z >= c.len() || !c.is_vertex(z) {
            return Err(pre(format!("cycle entry {i} is not a carrier vertex")));
        }
        if !lg.is_vertex(xs[i]) || xs[..i].contains(&xs[i]) {
            return Err(pre(format!("`{}` must lie over its own vertex", c.name(z))));
        }
        if gob.rho.apply(z) != xs[(i + 1) % n] {
            return Err(pre(format!("`{}` does not map to the next vertex of the cycle", c.name(z))));
        }
        let grp = &gob.left.groups[xs[i]];
        match grp.cyclic_factor() {
            Some(Some(k)) if grp.order_of_factor(k) == Order::Infinite => {}
            _ => return Err(pre(format!("`{}` has group {grp}, tuning needs ord = inf", lg.name(xs[i])))),
        }
        for e in lg.star(xs[i]) {
            if !gob.left.groups[e].is_trivial() {
                return Err(pre(format!("edge `{}` at the cycle has a nontrivial group", lg.name(e))));
            }
        }
        match &gob.bisets[z] {
            ObjectBiset::Cyclic(b) if b.n == Order::Infinite && b.right_active => {}
            _ => return Err(pre(format!("`{}` does not carry a regular cyclic biset", c.name(z)))),
        }
    }

    let groups: Vec<FpGroup> = pieces.iter().map(|p| p.biset.left.clone()).collect();
    let mut phi = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    for i in 0..n {
        let (z, j) = (cycle[i], (i + 1) % n);
        let piece = &pieces[i];
        let ObjectBiset::Cyclic(cyc) = &gob.bisets[z] else { unreachable!() };
        if piece.biset.degree != cyc.d {
            return Err(pre(format!("piece {i} has degree {}, `{}` has {}", piece.biset.degree, c.name(z), cyc.d)));
        }
        if piece.biset.right != groups[j] {
            return Err(pre(format!("piece {i} acts on the right by {}, the next piece has {}", piece.biset.right, groups[j])));
        }
        groups[i].check(&piece.peripheral)?;
        let old = &gob.left.groups[xs[i]];
        let mut images = vec![Word::identity(); old.rank()];
        if let Some(Some(k)) = old.cyclic_factor() {
            images[k] = piece.peripheral.clone();
        }
        phi.push(Hom::new(images));
        let beta = match &piece.beta {
            Some(b) => b.clone(),
            None => cyclic_congruence(&piece.biset, &piece.peripheral, &pieces[j].peripheral, cyc.d)?,
        };
        betas.push(beta);
    }
    for i in 0..n {
        let j = (i + 1) % n;
        let src = gob.wreath(cycle[i])?;
        let cong = Congruence { psi: phi[i].clone(), phi: phi[j].clone(), beta: betas[i].clone() };
        let r = cong.check(&src, &pieces[i].biset);
        if !r.is_ok() {
            return Err(DynamicsError::Peripheral(format!("piece {i}: {r}")));
        }
    }

    let at: BTreeMap<usize, usize> = xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let slot: BTreeMap<usize, usize> = cycle.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let mut gog = gob.left.clone();
    for (i, &x) in xs.iter().enumerate() {
        gog.groups[x] = groups[i].clone();
        gog.incl[x] = Hom::identity(&groups[i]);
    }
    let old = gob.wreaths()?;
    let mut bisets = Vec::with_capacity(c.len());
    for (z, w) in old.iter().enumerate() {
        if let Some(&i) = slot.get(&z) {
            bisets.push(ObjectBiset::Wreath(pieces[i].biset.clone()));
            continue;
        }
        let (lz, rz) = (gob.lambda.apply(z), gob.rho.apply(z));
        let (alpha, new_left) = match at.get(&lz) {
            Some(&i) => (phi[i].clone(), groups[i].clone()),
            None => (Hom::identity(&w.left), w.left.clone()),
        };
        let (beta, new_right) = match at.get(&rz) {
            Some(&j) => {
                if !w.gens.iter().all(|g| g.is_identity()) {
                    return Err(pre(format!("`{}` lies over the cycle on the right with a nontrivial action", c.name(z))));
                }
                (Hom::trivial(&groups[j]), groups[j].clone())
            }
            None => (Hom::identity(&w.right), w.right.clone()),
        };
        bisets.push(ObjectBiset::Wreath(w.twist(&alpha, &new_left, &beta, &new_right)));
    }
    let push = |target: usize, x: &Elem| -> Elem {
        if let Some(&i) = slot.get(&target) {
            let h = phi[i].apply(&groups[i], &x.h);
            pieces[i].biset.act_left(&h, &betas[i][x.s])
        } else if let Some(&i) = at.get(&gob.lambda.apply(target)) {
            Elem { h: phi[i].apply(&groups[i], &x.h), s: x.s }
        } else {
            x.clone()
        }
    };
    let mut minus = gob.minus.clone();
    let mut reverse = gob.reverse.clone();
    for z in c.edges() {
        minus[z] = gob.minus[z].iter().map(|x| push(c.origin(z), x)).collect();
        reverse[z] = gob.reverse[z].iter().map(|x| push(c.reverse(z), x)).collect();
    }
    let out = GraphOfBisets {
        carrier: c.clone(),
        left: gog.clone(),
        right: gog,
        lambda: gob.lambda.clone(),
        rho: gob.rho.clone(),
        bisets,
        minus,
        reverse,
    };
    let r = out.validate();
    if !r.is_ok() {
        return Err(DynamicsError::InvalidGob(r.to_string()));
    }
    Ok(out)
}

/// The piece that leaves a regular cyclic `left`-`right` biset of degree
/// `d` unchanged.
pub fn identity_piece(left: &FpGroup, right: &FpGroup, d: usize) -> Result<TuningPiece, DynamicsError> {
    let b = CyclicBiset::new(Order::Infinite, d, true).to_wreath(left, right)?;
    Ok(TuningPiece::new(b, left.gen(0)))
}
