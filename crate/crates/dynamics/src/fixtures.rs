use std::collections::BTreeMap;

use bisetkit_algebra::{FpGroup, Order};
use bisetkit_bisets::{parse_wr, WreathBiset};
use bisetkit_gob::{parse_gob, GraphOfBisets};
use bisetkit_graphs::GraphMorphism;

use crate::mating::Polynomial;
use crate::text::parse_htree;
use crate::tree::{HubbardBundle, HubbardTree};

pub const BASILICA_LAMINATION: &str = include_str!("../data/basilica_lamination.gob");
pub const BASILICA_HUBBARD: &str = include_str!("../data/basilica_hubbard.htree");
pub const Z2_PLUS_I_HUBBARD: &str = include_str!("../data/z2_plus_i.htree");
pub const BASILICA_BISET: &str = include_str!("../data/basilica.wr");

pub fn basilica_lamination() -> GraphOfBisets {
    parse_gob(BASILICA_LAMINATION).expect("fixture parses")
}

pub fn basilica_hubbard() -> HubbardBundle {
    parse_htree(BASILICA_HUBBARD).expect("fixture parses")
}

pub fn z2_plus_i_hubbard() -> HubbardBundle {
    parse_htree(Z2_PLUS_I_HUBBARD).expect("fixture parses")
}

/// `z^d`: one vertex `o` with group `<t>` covered once with degree `d`
/// (trivial group when `d = 1`).
pub fn power_map(d: usize) -> HubbardBundle {
    let mut base = HubbardTree::new();
    let ord = if d > 1 { Order::Infinite } else { Order::Finite(1) };
    let o = base.add_vertex("o", ord, Some("t")).unwrap();
    let mut cover = HubbardTree::new();
    let o1 = cover.add_vertex("o1", Order::Finite(1), None).unwrap();
    HubbardBundle {
        base,
        cover,
        p: GraphMorphism { map: vec![o] },
        lam: GraphMorphism { map: vec![o] },
        deg: vec![d],
        embed: BTreeMap::from([(o, o1)]),
    }
}

/// The Basilica recursion with its loop around infinity.
pub fn basilica_biset() -> Polynomial {
    let f = parse_wr(BASILICA_BISET).expect("fixture parses");
    Polynomial::new(f.biset, f.peripheral.expect("fixture has a peripheral word"))
}

/// `t = <1, ..., 1, t>(1 2 ... d)` with peripheral `t`.
pub fn power_biset(d: usize) -> Polynomial {
    let g = FpGroup::cyclic("t", Order::Infinite);
    Polynomial::new(WreathBiset::power_map("t", d), g.gen(0))
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Gob(GraphOfBisets),
    Bundle(HubbardBundle),
    Polynomial(Polynomial),
}

pub const FIXTURE_NAMES: &[&str] = &[
    "basilica_lamination",
    "basilica_hubbard",
    "z2_plus_i_hubbard",
    "power_map_<d>",
    "basilica_biset",
    "power_biset_<d>",
];

/// Looks up a fixture; `power_map_3` and `power_map(3)` both name `z^3`.
pub fn fixture(name: &str) -> Option<Fixture> {
    match name {
        "basilica_lamination" => return Some(Fixture::Gob(basilica_lamination())),
        "basilica_hubbard" => return Some(Fixture::Bundle(basilica_hubbard())),
        "z2_plus_i_hubbard" => return Some(Fixture::Bundle(z2_plus_i_hubbard())),
        "basilica_biset" => return Some(Fixture::Polynomial(basilica_biset())),
        _ => {}
    }
    if let Some(d) = name.strip_prefix("power_biset_") {
        let d: usize = d.parse().ok().filter(|&d| d >= 1)?;
        return Some(Fixture::Polynomial(power_biset(d)));
    }
    let d = name
        .strip_prefix("power_map_")
        .or_else(|| name.strip_prefix("power_map(").and_then(|s| s.strip_suffix(')')))?;
    let d: usize = d.parse().ok().filter(|&d| d >= 1)?;
    Some(Fixture::Bundle(power_map(d)))
}
