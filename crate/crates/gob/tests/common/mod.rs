#![allow(dead_code)]

use bisetkit_algebra::{FpGroup, Order, Word};
use bisetkit_bisets::{cycles_of, DecPerm, Elem, WreathBiset};
use bisetkit_gob::{GraphOfBisets, ObjectBiset};
use bisetkit_graphs::{Graph, GraphMorphism, GraphOfGroups};
use proptest::prelude::*;

pub fn lamination() -> GraphOfBisets {
    bisetkit_gob::parse_gob(include_str!("../data/lamination.gob")).unwrap()
}

pub fn power_map(d: usize) -> GraphOfBisets {
    bisetkit_gob::parse_gob(&format!(
        "left_graph {{\n vertex 0 group <t:inf>\n}}\nright_graph = left_graph\ncarrier {{\n vertex z\n}}\n\
         lambda z -> 0\nrho z -> 0\nbiset z = cyclic(n=inf, d={d}, right=active)\n"
    ))
    .unwrap()
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

/// Raw data for a random left-fibrant graph of bisets whose left graph is
/// a single vertex with group `<y:inf>`.
#[derive(Clone, Debug)]
pub struct RawGob {
    pub orders: Vec<u8>,
    pub parents: Vec<usize>,
    pub extra: Vec<(usize, usize)>,
    pub degree: usize,
    pub cuts: Vec<Vec<bool>>,
    pub perm_seeds: Vec<Vec<usize>>,
    pub words: Vec<i64>,
}

pub fn raw_gob(max_v: usize, max_d: usize) -> impl Strategy<Value = RawGob> {
    (1..=max_v, 1..=max_d).prop_flat_map(|(n, d)| {
        (
            prop::collection::vec(0u8..3, n),
            prop::collection::vec(0usize..16, n),
            prop::collection::vec((0usize..16, 0usize..16), 0..3),
            prop::collection::vec(prop::collection::vec(any::<bool>(), d), n),
            prop::collection::vec(prop::collection::vec(0usize..64, 2 * d + 2), n + 3),
            prop::collection::vec(-2i64..=2, 4 * d * (n + 3) + 8),
        )
            .prop_map(move |(orders, parents, extra, cuts, perm_seeds, words)| RawGob {
                orders,
                parents,
                extra,
                degree: d,
                cuts,
                perm_seeds,
                words,
            })
    })
}

fn order(o: u8) -> Order {
    match o {
        0 => Order::Finite(1),
        1 => Order::Finite(2),
        _ => Order::Infinite,
    }
}

fn shuffle(seed: &[usize], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, seed[i] % (i + 1));
    }
    p
}

/// A decorated permutation for a right generator of the given order, with
/// left group `<y:inf>`: cycle lengths divide the order and cycle products
/// are trivial for finite orders.
fn decperm(y: &FpGroup, ord: Order, d: usize, seed: &[usize], words: &mut impl Iterator<Item = i64>) -> DecPerm {
    let mut perm = shuffle(seed, d);
    if let Order::Finite(n) = ord {
        for c in cycles_of(&perm) {
            if n % c.len() as u64 != 0 {
                for &x in &c {
                    perm[x] = x;
                }
            }
        }
    }
    let mut dec: Vec<Word> = (0..d).map(|_| y.gen_pow(0, words.next().unwrap_or(0))).collect();
    if ord.is_finite() {
        for c in cycles_of(&perm) {
            let head: Vec<&Word> = c[..c.len() - 1].iter().map(|&i| &dec[i]).collect();
            let prod = y.product(head);
            dec[*c.last().unwrap()] = y.inv(&prod);
        }
    }
    DecPerm { dec, perm }
}

pub fn right_graph(raw: &RawGob) -> GraphOfGroups {
    let n = raw.orders.len();
    let mut gog = GraphOfGroups::new();
    let mut ids = Vec::new();
    for i in 0..n {
        ids.push(gog.add_vertex(&format!("v{i}"), FpGroup::cyclic(&format!("x{i}"), order(raw.orders[i]))).unwrap());
    }
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (raw.parents[i] % i, i)).collect();
    pairs.extend(raw.extra.iter().map(|&(a, b)| (a % n, b % n)));
    for (k, (a, b)) in pairs.into_iter().enumerate() {
        gog.add_edge(&format!("f{k}"), ids[a], ids[b], FpGroup::trivial(), vec![], vec![]).unwrap();
    }
    gog
}

pub fn left_point() -> GraphOfGroups {
    let mut y = GraphOfGroups::new();
    y.add_vertex("w", FpGroup::cyclic("y", Order::Infinite)).unwrap();
    y
}

/// Builds the random gob over `right`, with `lambda` constant.
pub fn build_over(raw: &RawGob, left: &GraphOfGroups, right: &GraphOfGroups) -> GraphOfBisets {
    let d = raw.degree;
    let ygrp = left.groups[0].clone();
    let xg = &right.graph;
    let mut words = raw.words.iter().copied().cycle();
    let mut carrier = Graph::new();
    let mut bisets = Vec::new();
    let mut rho = Vec::new();
    // per right vertex: list of (carrier vertex, degree), and flattened basis
    let mut flat: Vec<Vec<(usize, usize)>> = vec![Vec::new(); xg.len()];
    for (vi, v) in xg.vertices().enumerate() {
        let g = &right.groups[v];
        let cuts = &raw.cuts[vi % raw.cuts.len()];
        let mut parts = Vec::new();
        let mut cur = 1;
        for &cut in &cuts[1..d] {
            if cut {
                parts.push(cur);
                cur = 1;
            } else {
                cur += 1;
            }
        }
        parts.push(cur);
        for (j, &dj) in parts.iter().enumerate() {
            let z = carrier.add_vertex(&format!("{}.{j}", xg.name(v))).unwrap();
            let seeds = &raw.perm_seeds[(vi + j) % raw.perm_seeds.len()];
            let gens = (0..g.rank()).map(|i| decperm(&ygrp, g.order_of_factor(i), dj, seeds, &mut words)).collect();
            bisets.push(ObjectBiset::Wreath(WreathBiset::new(ygrp.clone(), g.clone(), dj, gens).unwrap()));
            rho.push(v);
            for s in 0..dj {
                flat[v].push((z, s));
            }
        }
    }
    let mut minus: Vec<Vec<Elem>> = Vec::new();
    for v in xg.vertices() {
        let mut counts = std::collections::BTreeMap::new();
        for &(z, _) in &flat[v] {
            *counts.entry(z).or_insert(0) += 1;
        }
        for (_, k) in counts {
            minus.push((0..k).map(Elem::basis).collect());
        }
    }
    let mut reverse = minus.clone();
    let edge_biset = ObjectBiset::Wreath(WreathBiset::new(ygrp.clone(), FpGroup::trivial(), 1, vec![]).unwrap());
    for (fi, f) in xg.positive_edges().enumerate() {
        let (a, b) = (xg.origin(f), xg.terminus(f));
        let pi = shuffle(&raw.perm_seeds[fi % raw.perm_seeds.len()][d..], d);
        for i in 0..d {
            let (za, sa) = flat[a][i];
            let (zb, sb) = flat[b][pi[i]];
            let e = carrier.add_edge(&format!("{}.{i}", xg.name(f)), za, zb).unwrap();
            bisets.push(edge_biset.clone());
            bisets.push(edge_biset.clone());
            rho.push(f);
            rho.push(xg.reverse(f));
            minus.push(vec![Elem { h: ygrp.gen_pow(0, words.next().unwrap()), s: sa }]);
            minus.push(vec![Elem { h: ygrp.gen_pow(0, words.next().unwrap()), s: sb }]);
            reverse.push(vec![Elem::basis(0)]);
            reverse.push(vec![Elem::basis(0)]);
            debug_assert_eq!(e + 2, carrier.len());
        }
    }
    let n = carrier.len();
    GraphOfBisets {
        carrier,
        left: left.clone(),
        right: right.clone(),
        lambda: GraphMorphism { map: vec![0; n] },
        rho: GraphMorphism { map: rho },
        bisets,
        minus,
        reverse,
    }
}

pub fn build_gob(raw: &RawGob) -> GraphOfBisets {
    build_over(raw, &left_point(), &right_graph(raw))
}
