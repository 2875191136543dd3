#![allow(dead_code)]

use bisetkit_algebra::{FpGroup, Order, Word};
use bisetkit_graphs::{GraphOfGroups, PathWord};
use proptest::prelude::*;

/// Raw description of a small connected graph of groups.
#[derive(Clone, Debug)]
pub struct RawGog {
    pub orders: Vec<u8>,
    pub tree_parents: Vec<usize>,
    pub extra: Vec<(usize, usize)>,
    pub edge_kinds: Vec<u8>,
}

pub fn raw_gog(max_v: usize) -> impl Strategy<Value = RawGog> {
    (1..=max_v).prop_flat_map(|n| {
        (
            prop::collection::vec(0u8..4, n),
            prop::collection::vec(0usize..16, n),
            prop::collection::vec((0usize..16, 0usize..16), 0..3),
            prop::collection::vec(0u8..4, n + 3),
        )
            .prop_map(|(orders, tree_parents, extra, edge_kinds)| RawGog { orders, tree_parents, extra, edge_kinds })
    })
}

fn order(o: u8) -> Order {
    match o {
        0 => Order::Finite(1),
        1 => Order::Finite(2),
        2 => Order::Finite(3),
        _ => Order::Infinite,
    }
}

/// Builds the graph of groups; `cyclic_edges` allows nontrivial edge
/// groups between vertices of equal order.
pub fn build_gog(raw: &RawGog, trivial_groups: bool, cyclic_edges: bool) -> GraphOfGroups {
    let n = raw.orders.len();
    let mut gog = GraphOfGroups::new();
    for i in 0..n {
        let g = if trivial_groups { FpGroup::trivial() } else { FpGroup::cyclic(&format!("x{i}"), order(raw.orders[i])) };
        gog.add_vertex(&format!("v{i}"), g).unwrap();
    }
    let ids: Vec<usize> = (0..n).map(|i| gog.graph.index_of(&format!("v{i}")).unwrap()).collect();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (raw.tree_parents[i] % i, i)).collect();
    pairs.extend(raw.extra.iter().map(|&(a, b)| (a % n, b % n)));
    for (k, (a, b)) in pairs.into_iter().enumerate() {
        let (u, v) = (ids[a], ids[b]);
        let kind = raw.edge_kinds.get(k).copied().unwrap_or(0);
        let gu = gog.groups[u].clone();
        let gv = gog.groups[v].clone();
        let same = gu.order_signature() == gv.order_signature() && !gu.is_trivial();
        if cyclic_edges && same && kind > 0 {
            let ord = gu.order_of_factor(0);
            let eg = FpGroup::cyclic("c", ord);
            let p = if ord == Order::Infinite { kind as i64 - 2 } else { 1 };
            let p = if p == 0 { 1 } else { p };
            let (m, q) = if ord == Order::Infinite { (gu.gen_pow(0, p), gv.gen(0)) } else { (gu.gen(0), gv.gen(0)) };
            gog.add_edge(&format!("e{k}"), u, v, eg, vec![m], vec![q]).unwrap();
        } else {
            gog.add_edge(&format!("e{k}"), u, v, FpGroup::trivial(), vec![], vec![]).unwrap();
        }
    }
    gog
}

/// A random walk from `base` driven by `steps`, closed up by retracing.
pub fn random_loop(gog: &GraphOfGroups, base: usize, steps: &[(usize, i64)]) -> PathWord {
    let g = &gog.graph;
    let mut p = PathWord::trivial(base);
    let mut trail = Vec::new();
    for &(choice, e) in steps {
        let at = p.end(gog);
        let grp = &gog.groups[at];
        if grp.rank() > 0 {
            p.push_group(gog, &grp.gen_pow(0, e));
        }
        let star = g.star(at);
        if !star.is_empty() && choice % 3 != 0 {
            let x = star[choice % star.len()];
            p.push_edge(x);
            trail.push(x);
        }
    }
    // walk back, inserting letters to make the return nontrivial
    while let Some(x) = trail.pop() {
        p.push_edge(g.reverse(x));
        let at = p.end(gog);
        if gog.groups[at].rank() > 0 && trail.len() % 2 == 1 {
            p.push_group(gog, &gog.groups[at].gen(0));
        }
    }
    p
}

/// Applies cancellations `(x, g, reverse x)` with `g` in the edge image at
/// positions chosen by `order`, until none remain; then normalizes cosets
/// with `reduce_path` (a no-op on already reduced input).
pub fn reduce_in_order(gog: &GraphOfGroups, p: &PathWord, order: &[usize]) -> PathWord {
    let g = &gog.graph;
    let mut groups = p.groups.clone();
    let mut edges = p.edges.clone();
    let mut k = 0;
    loop {
        let mut cands = Vec::new();
        for i in 0..edges.len().saturating_sub(1) {
            let (e, f) = (edges[i], edges[i + 1]);
            if f != g.reverse(e) {
                continue;
            }
            let mid = &groups[i + 1];
            let at = g.terminus(e);
            let kexp = match gog.edge_generator_image(f) {
                None => mid.is_identity().then_some(0),
                Some(u) => gog.groups[at].is_power_of(mid, &u).unwrap(),
            };
            if let Some(kexp) = kexp {
                cands.push((i, kexp));
            }
        }
        if cands.is_empty() {
            break;
        }
        let (i, kexp) = cands[order.get(k).copied().unwrap_or(0) % cands.len()];
        k += 1;
        let e = edges[i];
        let at = g.origin(e);
        let moved = gog.edge_power(e, kexp);
        let merged = gog.groups[at].product([&groups[i], &moved, &groups[i + 2]]);
        groups.splice(i..i + 3, [merged]);
        edges.drain(i..i + 2);
    }
    let q = PathWord { start: p.start, groups, edges };
    gog.reduce_path(&q).unwrap()
}

pub fn word(g: &FpGroup, s: &str) -> Word {
    g.parse_word(s).unwrap()
}
