#![allow(dead_code)]

use bisetkit_algebra::Word;
use bisetkit_bisets::{cycles_of, WreathBiset};
use bisetkit_gob::{FundamentalBiset, GraphOfBisets};

pub fn fund(g: &GraphOfBisets) -> FundamentalBiset {
    let t = g.is_left_fibrant().unwrap().table().expect("fibrant");
    let (d, s) = g.default_basepoints().unwrap();
    g.fundamental_biset(d, s, &t).unwrap()
}

pub fn vertex(g: &bisetkit_graphs::Graph, name: &str) -> usize {
    g.index_of(name).unwrap_or_else(|| panic!("no object `{name}`"))
}

/// Independent level action of a self-biset: `x_1` is acted on first and
/// the decoration is carried down; points are indexed lexicographically.
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
    let mut v: Vec<usize> = cycles_of(p).iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

