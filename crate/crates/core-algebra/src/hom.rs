use crate::error::AlgebraError;
use crate::group::{FpGroup, Order};
use crate::word::Word;

/// A homomorphism out of a free product of cyclic groups, given by the
/// image of each factor generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hom {
    pub images: Vec<Word>,
}

impl Hom {
    pub fn new(images: Vec<Word>) -> Self {
        Hom { images }
    }

    pub fn identity(g: &FpGroup) -> Self {
        Hom { images: (0..g.rank()).map(|i| g.gen(i)).collect() }
    }

    /// The trivial map into any group.
    pub fn trivial(src: &FpGroup) -> Self {
        Hom { images: vec![Word::identity(); src.rank()] }
    }

    pub fn apply(&self, tgt: &FpGroup, w: &Word) -> Word {
        let mut acc = Word::identity();
        for &(f, e) in w.syllables() {
            acc = tgt.mul(&acc, &tgt.pow(&self.images[f], e));
        }
        acc
    }

    /// `self` then `other`: `x -> other(self(x))`, landing in `last`.
    pub fn then(&self, other: &Hom, last: &FpGroup) -> Hom {
        Hom { images: self.images.iter().map(|w| other.apply(last, w)).collect() }
    }

    /// Checks that images live in `tgt` and respect the finite orders of `src`.
    pub fn check(&self, src: &FpGroup, tgt: &FpGroup) -> Result<(), AlgebraError> {
        if self.images.len() != src.rank() {
            return Err(AlgebraError::Parse {
                col: 0,
                msg: format!("homomorphism has {} images, group has rank {}", self.images.len(), src.rank()),
            });
        }
        for (i, img) in self.images.iter().enumerate() {
            tgt.check(img)?;
            if let Order::Finite(n) = src.order_of_factor(i) {
                if !tgt.pow(img, n as i64).is_identity() {
                    return Err(AlgebraError::BadOrder(format!(
                        "image of `{}` does not have order dividing {n}",
                        src.factor(i).name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Inverts an isomorphism `src -> tgt` by Nielsen-style shortening of
    /// the image tuple. Fails if the images cannot be brought to single
    /// syllables on distinct factors.
    pub fn invert(&self, src: &FpGroup, tgt: &FpGroup) -> Result<Hom, AlgebraError> {
        let not_inv = || AlgebraError::BadOrder("homomorphism is not invertible by Nielsen reduction".into());
        let mut pairs: Vec<(Word, Word)> = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, _)| !src.order_of_factor(*i).is_trivial())
            .map(|(i, w)| (w.clone(), src.gen(i)))
            .collect();
        loop {
            let mut improved = false;
            for j in 0..pairs.len() {
                for i in 0..pairs.len() {
                    if i == j || pairs[i].0.is_identity() {
                        continue;
                    }
                    let (ai, pi) = (pairs[i].0.clone(), pairs[i].1.clone());
                    let (ai_inv, pi_inv) = (tgt.inv(&ai), src.inv(&pi));
                    let (aj, pj) = (&pairs[j].0, &pairs[j].1);
                    let cands = [
                        (tgt.mul(&ai, aj), src.mul(&pi, pj)),
                        (tgt.mul(&ai_inv, aj), src.mul(&pi_inv, pj)),
                        (tgt.mul(aj, &ai), src.mul(pj, &pi)),
                        (tgt.mul(aj, &ai_inv), src.mul(pj, &pi_inv)),
                        (tgt.conj(aj, &ai), src.conj(pj, &pi)),
                        (tgt.conj(aj, &ai_inv), src.conj(pj, &pi_inv)),
                    ];
                    let cur = (aj.len(), aj.mass());
                    if let Some(best) = cands.into_iter().min_by_key(|c| (c.0.len(), c.0.mass())) {
                        if (best.0.len(), best.0.mass()) < cur {
                            pairs[j] = best;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                break;
            }
        }
        let mut images = vec![None; tgt.rank()];
        for (img, pre) in &pairs {
            if img.len() != 1 {
                return Err(not_inv());
            }
            let (f, e) = img.syllables()[0];
            let k = match tgt.order_of_factor(f) {
                Order::Infinite if e.abs() == 1 => e,
                Order::Infinite => return Err(not_inv()),
                Order::Finite(n) => mod_inverse(e, n as i64).ok_or_else(not_inv)?,
            };
            if images[f].is_some() {
                return Err(not_inv());
            }
            images[f] = Some(src.pow(pre, k));
        }
        let images: Vec<Word> = images
            .into_iter()
            .enumerate()
            .map(|(f, w)| match w {
                Some(w) => Ok(w),
                None if tgt.order_of_factor(f).is_trivial() => Ok(Word::identity()),
                None => Err(not_inv()),
            })
            .collect::<Result<_, _>>()?;
        let inv = Hom { images };
        for i in 0..src.rank() {
            if inv.apply(src, &self.apply(tgt, &src.gen(i))) != src.gen(i) {
                return Err(not_inv());
            }
        }
        for f in 0..tgt.rank() {
            if self.apply(tgt, &inv.apply(src, &tgt.gen(f))) != tgt.gen(f) {
                return Err(not_inv());
            }
        }
        Ok(inv)
    }
}

fn mod_inverse(e: i64, n: i64) -> Option<i64> {
    (1..n).find(|k| (k * e).rem_euclid(n) == 1 % n)
}
