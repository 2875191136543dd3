use bisetkit_algebra::{FpGroup, Hom, Order, Word};
use bisetkit_bisets::{cyclic_exponent, cyclic_pow, DecPerm, Elem, WreathBiset};
use bisetkit_graphs::{GraphMorphism, GraphOfGroups};

use crate::error::GobError;
use crate::gob::{GraphOfBisets, ObjectBiset};

/// `G_{theta(z)}` as a `G_z`-`G_{theta(z)}` biset, in left-free form.
enum Shape {
    /// `theta_z` is invertible; the inverse is stored.
    Iso(Hom),
    /// Cyclic target `<tau>`; the image of `G_z` is generated by `tau^g`,
    /// which is the image of `src^j`.
    Cyclic { g: i64, j: i64 },
}

struct MorphismBiset {
    src: FpGroup,
    tgt: FpGroup,
    shape: Shape,
}

impl MorphismBiset {
    fn new(theta: &Hom, src: &FpGroup, tgt: &FpGroup) -> Result<Self, GobError> {
        theta.check(src, tgt)?;
        let shape = match (src.cyclic_factor(), tgt.cyclic_factor()) {
            (Some(sf), Some(Some(tf))) => {
                let k = match sf {
                    Some(i) => cyclic_exponent(&theta.images[i]),
                    None => 0,
                };
                let m = sf.map_or(Order::Finite(1), |i| src.order_of_factor(i));
                match tgt.order_of_factor(tf) {
                    Order::Infinite => {
                        if k == 0 || m != Order::Infinite {
                            return Err(GobError::Unsupported(format!("{src} -> {tgt} has infinite index or is not injective")));
                        }
                        Shape::Cyclic { g: k.abs(), j: k.signum() }
                    }
                    Order::Finite(n) => {
                        let n = n as i64;
                        let g = gcd(k.rem_euclid(n), n);
                        if m != Order::Finite((n / g) as u64) {
                            return Err(GobError::Unsupported(format!("{src} -> {tgt} is not injective")));
                        }
                        let j = if g == n { 0 } else { (0..n).find(|j| (j * k - g).rem_euclid(n) == 0).unwrap() };
                        Shape::Cyclic { g, j }
                    }
                }
            }
            (Some(None), Some(None)) => Shape::Iso(Hom::trivial(tgt)),
            _ => {
                let inv = theta.invert(src, tgt).map_err(|_| {
                    GobError::Unsupported(format!("{src} -> {tgt} is neither cyclic of finite index nor invertible"))
                })?;
                Shape::Iso(inv)
            }
        };
        Ok(MorphismBiset { src: src.clone(), tgt: tgt.clone(), shape })
    }

    fn degree(&self) -> usize {
        match self.shape {
            Shape::Iso(_) => 1,
            Shape::Cyclic { g, .. } => g as usize,
        }
    }

    fn wreath(&self) -> Result<WreathBiset, GobError> {
        let d = self.degree();
        let gens = (0..self.tgt.rank())
            .map(|i| match &self.shape {
                Shape::Iso(inv) => DecPerm { dec: vec![inv.images[i].clone()], perm: vec![0] },
                Shape::Cyclic { .. } if self.tgt.order_of_factor(i).is_trivial() => DecPerm::identity(d),
                Shape::Cyclic { j, .. } => {
                    let mut dec = vec![Word::identity(); d];
                    dec[d - 1] = cyclic_pow(&self.src, *j);
                    DecPerm { dec, perm: (0..d).map(|r| (r + 1) % d).collect() }
                }
            })
            .collect();
        Ok(WreathBiset::new(self.src.clone(), self.tgt.clone(), d, gens)?)
    }

    /// The basis representative of index `s` as an element of the target.
    fn rep(&self, s: usize) -> Word {
        match self.shape {
            Shape::Iso(_) => Word::identity(),
            Shape::Cyclic { .. } => cyclic_pow(&self.tgt, s as i64),
        }
    }

    /// Writes an element of the target as `h . s`.
    fn decompose(&self, x: &Word) -> Elem {
        match &self.shape {
            Shape::Iso(inv) => Elem { h: inv.apply(&self.src, x), s: 0 },
            Shape::Cyclic { g, j } => {
                let q = cyclic_exponent(x);
                let r = q.rem_euclid(*g);
                let a = (q - r) / g;
                Elem { h: cyclic_pow(&self.src, j * a), s: r as usize }
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl GraphOfBisets {
    /// The graph of bisets of a morphism `theta: Y -> X` with homomorphisms
    /// `theta_z: G_z -> G_{theta(z)}`: carrier `Y`, `lambda` the identity,
    /// `rho = theta`, and `B_z = G_{theta(z)}` with `G_z` acting through
    /// `theta_z`. Each `theta_z` must be invertible or an injection of
    /// finite index between trivial or cyclic groups.
    pub fn of_morphism(
        left: &GraphOfGroups,
        right: &GraphOfGroups,
        theta: &GraphMorphism,
        homs: &[Hom],
    ) -> Result<GraphOfBisets, GobError> {
        let y = &left.graph;
        theta.check(y, &right.graph)?;
        if homs.len() != y.len() {
            return Err(GobError::Invalid(format!("{} homomorphisms for {} objects", homs.len(), y.len())));
        }
        let mb: Vec<MorphismBiset> = (0..y.len())
            .map(|z| MorphismBiset::new(&homs[z], &left.groups[z], &right.groups[theta.apply(z)]))
            .collect::<Result<_, _>>()?;
        let mut bisets = Vec::with_capacity(y.len());
        for m in &mb {
            bisets.push(ObjectBiset::Wreath(m.wreath()?));
        }
        let image = |z: usize, to: usize| -> Result<Vec<Elem>, GobError> {
            let hom = right.hom_between(theta.apply(z), theta.apply(to)).ok_or_else(|| {
                GobError::Invalid(format!("theta images of `{}` and `{}` are not adjacent", y.name(z), y.name(to)))
            })?;
            Ok((0..mb[z].degree()).map(|s| mb[to].decompose(&hom.apply(&mb[to].tgt, &mb[z].rep(s)))).collect())
        };
        let mut minus = Vec::with_capacity(y.len());
        let mut reverse = Vec::with_capacity(y.len());
        for z in 0..y.len() {
            minus.push(image(z, y.origin(z))?);
            reverse.push(image(z, y.reverse(z))?);
        }
        let gob = GraphOfBisets {
            carrier: y.clone(),
            left: left.clone(),
            right: right.clone(),
            lambda: GraphMorphism::identity(y),
            rho: theta.clone(),
            bisets,
            minus,
            reverse,
        };
        let report = gob.validate();
        if let Some(i) = report.issues.first() {
            return Err(GobError::Invalid(format!("incompatible homomorphisms: {}: {}", i.context, i.message)));
        }
        Ok(gob)
    }
}
