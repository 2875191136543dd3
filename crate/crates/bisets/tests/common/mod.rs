#![allow(dead_code)]

use bisetkit_algebra::{CyclicFactor, FpGroup, Hom, Order, Word};
use bisetkit_bisets::{DecPerm, WreathBiset};
use proptest::prelude::*;

pub fn small_group() -> impl Strategy<Value = FpGroup> {
    prop::collection::vec(prop_oneof![Just(0u64), Just(2), Just(3)], 1..3).prop_map(|ords| {
        FpGroup::new(
            ords.iter()
                .enumerate()
                .map(|(i, &o)| {
                    let ord = if o == 0 { Order::Infinite } else { Order::Finite(o) };
                    CyclicFactor::new(format!("g{i}"), ord)
                })
                .collect(),
        )
        .unwrap()
    })
}

pub fn word_in(g: &FpGroup, raw: &[(usize, i64)]) -> Word {
    let r = g.rank();
    g.normalize(&raw.iter().map(|&(f, e)| (f % r, e)).collect::<Vec<_>>()).unwrap()
}

type RawWord = Vec<(usize, i64)>;

/// Raw material for one random decorated permutation.
#[derive(Clone, Debug)]
pub struct RawGen {
    pub perm_seed: Vec<usize>,
    pub decs: Vec<RawWord>,
}

fn raw_gen(d: usize) -> impl Strategy<Value = RawGen> {
    (
        prop::collection::vec(0usize..16, d),
        prop::collection::vec(prop::collection::vec((0usize..4, -2i64..=2), 0..3), d),
    )
        .prop_map(|(perm_seed, decs)| RawGen { perm_seed, decs })
}

/// Builds a valid decorated permutation for a generator of order `ord`:
/// cycle lengths divide the order, and the product of decorations along
/// each cycle is trivial when the order is finite.
pub fn build_gen(h: &FpGroup, ord: Order, d: usize, raw: &RawGen) -> DecPerm {
    // Fisher-Yates from the seed, then restrict cycle lengths
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        let j = raw.perm_seed[i] % (i + 1);
        perm.swap(i, j);
    }
    if let Order::Finite(n) = ord {
        let cycles = bisetkit_bisets::cycles_of(&perm);
        for c in cycles {
            if n % c.len() as u64 != 0 {
                for &x in &c {
                    perm[x] = x;
                }
            }
        }
    }
    let mut dec: Vec<Word> = raw.decs.iter().map(|r| word_in(h, r)).collect();
    if ord.is_finite() {
        for c in bisetkit_bisets::cycles_of(&perm) {
            let head: Vec<&Word> = c[..c.len() - 1].iter().map(|&i| &dec[i]).collect();
            let prod = h.product(head);
            dec[*c.last().unwrap()] = h.inv(&prod);
        }
    }
    DecPerm { dec, perm }
}

#[derive(Clone, Debug)]
pub struct RawBiset {
    pub degree: usize,
    pub gens: Vec<RawGen>,
}

pub fn raw_biset(max_degree: usize) -> impl Strategy<Value = RawBiset> {
    (1..=max_degree).prop_flat_map(|d| {
        prop::collection::vec(raw_gen(d), 3).prop_map(move |gens| RawBiset { degree: d, gens })
    })
}

pub fn build_biset(h: &FpGroup, g: &FpGroup, raw: &RawBiset) -> WreathBiset {
    let gens = (0..g.rank())
        .map(|i| build_gen(h, g.order_of_factor(i), raw.degree, &raw.gens[i]))
        .collect();
    WreathBiset::new(h.clone(), g.clone(), raw.degree, gens).unwrap()
}

pub fn build_decperm(h: &FpGroup, raw: &RawBiset) -> DecPerm {
    build_gen(h, Order::Infinite, raw.degree, &raw.gens[0])
}

/// Random automorphism of `g` from transvections and conjugations.
pub fn automorphism(g: &FpGroup, moves: &[(usize, usize, u8)]) -> Hom {
    let mut imgs: Vec<Word> = (0..g.rank()).map(|i| g.gen(i)).collect();
    for &(i, j, kind) in moves {
        let (i, j) = (i % g.rank(), j % g.rank());
        if i == j {
            continue;
        }
        let a = imgs[i].clone();
        imgs[j] = match kind % 3 {
            0 if g.order_of_factor(j) == Order::Infinite => g.mul(&a, &imgs[j]),
            1 if g.order_of_factor(j) == Order::Infinite => g.mul(&imgs[j], &g.inv(&a)),
            _ => g.conj(&imgs[j], &a),
        };
    }
    Hom::new(imgs)
}

/// Independent level action of a self-biset: the point `(x_1, ..., x_n)`
/// is acted on letter by letter, `x_1` first, carrying the decoration down.
pub fn level_perm(b: &WreathBiset, g: &Word, n: usize) -> Vec<usize> {
    let d = b.degree;
    let total = d.pow(n as u32);
    let mut out = vec![0; total];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut digits = vec![0; n];
        let mut r = idx;
        for k in (0..n).rev() {
            digits[k] = r % d;
            r /= d;
        }
        let mut cur = g.clone();
        for x in digits.iter_mut() {
            let mut s = *x;
            let mut h = Word::identity();
            for &(f, e) in cur.syllables() {
                for _ in 0..e.unsigned_abs() {
                    let p = &b.gens[f];
                    if e > 0 {
                        h = b.left.mul(&h, &p.dec[s]);
                        s = p.perm[s];
                    } else {
                        let prev = p.perm.iter().position(|&y| y == s).unwrap();
                        h = b.left.mul(&h, &b.left.inv(&p.dec[prev]));
                        s = prev;
                    }
                }
            }
            *x = s;
            cur = h;
        }
        *slot = digits.iter().fold(0, |acc, &x| acc * d + x);
    }
    out
}

pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = bisetkit_bisets::cycles_of(p).iter().map(|c| c.len()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}
