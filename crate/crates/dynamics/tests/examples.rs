mod common;

use bisetkit_algebra::Order;
use bisetkit_bisets::{CyclicBiset, Elem, WreathBiset};
use bisetkit_dynamics::fixtures::*;
use bisetkit_dynamics::*;
use bisetkit_gob::{GraphOfBisets, ObjectBiset};
use common::{cycle_type, fund, level_perm, vertex};
use num_rational::Rational64;

fn cover_edge_at(b: &HubbardBundle, v: &str, e: &str) -> usize {
    let g = &b.cover.tree;
    let (v, e) = (vertex(g, v), vertex(g, e));
    if g.origin(e) == v {
        e
    } else {
        g.reverse(e)
    }
}

/// Cycle types of every generator, levels `1..=n`.
fn level_signature(b: &WreathBiset, order: &[usize], n: usize) -> Vec<Vec<Vec<usize>>> {
    order
        .iter()
        .map(|&i| (1..=n).map(|k| cycle_type(&level_perm(b, &b.right.gen(i), k))).collect())
        .collect()
}

#[test]
fn basilica_bundle_is_valid() {
    let b = basilica_hubbard();
    let c = validate_bundle(&b);
    assert!(c.is_ok(), "{}", c.report);
    assert_eq!(c.degree, 2);
    let g = &b.cover.tree;
    let names = |flags: &[bool]| -> Vec<String> {
        g.vertices().filter(|&v| flags[v]).map(|v| g.name(v).to_string()).collect()
    };
    assert_eq!(names(&c.essential), ["y0", "ym1"]);
    assert_eq!(names(&c.critical), ["y0"]);
    assert!(c.offsets.values().all(|a| *a == Rational64::from(0)));
}

#[test]
fn power_map_bundles_are_valid() {
    for d in 1..=6 {
        let c = validate_bundle(&power_map(d));
        assert!(c.is_ok(), "d = {d}: {}", c.report);
        assert_eq!(c.degree, d);
    }
}

#[test]
fn perturbed_angle_breaks_functoriality() {
    let mut b = basilica_hubbard();
    let e = cover_edge_at(&b, "y0", "e2");
    b.cover.set_angle(e, Rational64::new(1, 3));
    let c = validate_bundle(&b);
    assert!(!c.is_ok());
    assert!(c.report.to_string().contains("angle functoriality fails"), "{}", c.report);

    // at the fixed point alpha of z^2 + i the offset is 1/3
    let mut z = z2_plus_i_hubbard();
    assert_eq!(validate_bundle(&z).offsets[&vertex(&z.cover.tree, "al")], Rational64::new(1, 3));
    let e = cover_edge_at(&z, "nal", "c6");
    z.cover.set_angle(e, Rational64::new(5, 6));
    let c = validate_bundle(&z);
    assert!(c.report.to_string().contains("nal: angle functoriality fails"), "{}", c.report);
}

#[test]
fn other_bundle_defects_are_reported() {
    let mut b = basilica_hubbard();
    b.deg[vertex(&b.cover.tree, "y0")] = 3;
    let r = validate_bundle(&b).report.to_string();
    assert!(r.contains("zm1: covered with degree 3 instead of 2"), "{r}");

    let mut b = basilica_hubbard();
    let y1 = vertex(&b.cover.tree, "y1");
    b.lam.map[y1] = vertex(&b.base.tree, "zm1");
    assert!(!validate_bundle(&b).is_ok());

    let mut b = basilica_hubbard();
    b.base.ord[vertex(&b.base.tree, "z0")] = Order::Finite(4);
    let r = validate_bundle(&b).report.to_string();
    assert!(r.contains("z0: ord is 4 but the dynamics give inf"), "{r}");
}

#[test]
fn derived_orders() {
    let b = basilica_hubbard();
    assert_eq!(derive_ord(&b)[vertex(&b.base.tree, "z0")], Order::Infinite);
    assert_eq!(derive_ord(&b)[vertex(&b.base.tree, "zm1")], Order::Infinite);

    let z = z2_plus_i_hubbard();
    let c = validate_bundle(&z);
    assert!(c.is_ok(), "{}", c.report);
    assert_eq!(c.degree, 2);
    let ord = derive_ord(&z);
    let at = |n: &str| ord[vertex(&z.base.tree, n)];
    for n in ["i", "im", "mi"] {
        assert_eq!(at(n), Order::Finite(2), "{n}");
    }
    // alpha is fixed and not postcritical, 0 has no preimage in the tree
    assert_eq!(at("al"), Order::Finite(1));
    assert_eq!(at("c"), Order::Finite(1));
    assert_eq!(derive_ord(&power_map(3))[0], Order::Infinite);
    assert_eq!(derive_ord(&power_map(1))[0], Order::Finite(1));
}

#[test]
fn basilica_middle_vertex() {
    let b = basilica_hubbard();
    let hg = hubbard_gob(&b).unwrap();
    let w = &hg.weak;
    let y0 = vertex(&w.carrier, "y0");
    assert_eq!(w.bisets[y0], ObjectBiset::Cyclic(CyclicBiset::new(Order::Infinite, 2, true)));
    let wr = w.wreath(y0).unwrap();
    assert_eq!(wr.degree, 2);
    assert_eq!(wr.fmt_table(), "b = <1, a>(1 2)\n");
    let e1 = cover_edge_at(&b, "y0", "e1");
    let e2 = cover_edge_at(&b, "y0", "e2");
    let cyc = CyclicBiset::new(Order::Infinite, 2, true);
    let (x1, x2) = (cyc.numerator(&w.minus[e1][0]), cyc.numerator(&w.minus[e2][0]));
    assert_eq!((x1, x2), (0, 1));
    assert_ne!(x1.rem_euclid(2), x2.rem_euclid(2));
    // the images generate the biset on the left: one per left orbit
    let mut seen = vec![w.minus[e1][0].s, w.minus[e2][0].s];
    seen.sort();
    assert_eq!(seen, [0, 1]);
}

#[test]
fn basilica_pipeline() {
    let g = hubbard_to_gob(&basilica_hubbard()).unwrap();
    assert!(g.validate().is_ok());
    assert!(g.wreaths().unwrap().iter().all(|w| w.degree >= 1));
    for v in g.right.graph.vertices() {
        assert_eq!(g.degree_over(v).unwrap(), 2);
    }
    let fb = fund(&g);
    assert_eq!(fb.biset.degree, 2);
    assert_eq!(fb.biset.fmt_table(), "a = <b, 1>()\nb = <1, a>(1 2)\n");
    // against the usual recursion, with a and b swapped
    let std = basilica_biset().biset;
    assert_eq!(level_signature(&fb.biset, &[0, 1], 6), level_signature(&std, &[1, 0], 6));
}

#[test]
fn z2_plus_i_pipeline() {
    let g = hubbard_to_gob(&z2_plus_i_hubbard()).unwrap();
    for v in g.right.graph.vertices() {
        assert_eq!(g.degree_over(v).unwrap(), 2);
    }
    let fb = fund(&g);
    assert_eq!(fb.biset.fmt_table(), "i = <1, 1>(1 2)\nim = <i, mi>()\nmi = <im, 1>()\n");
    let sig: Vec<Order> = fb.right.group.order_signature();
    assert_eq!(sig, vec![Order::Finite(2); 3]);
    assert!(fb.biset.validate().is_ok());
}

#[test]
fn power_map_pipeline() {
    for d in [2usize, 3, 5] {
        let g = hubbard_to_gob(&power_map(d)).unwrap();
        let ones = vec!["1"; d - 1].join(", ");
        let cycle = (1..=d).map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
        assert_eq!(fund(&g).biset.fmt_table(), format!("t = <{ones}, t>({cycle})\n"));
    }
}

#[test]
fn right_fundamental_group_is_free_product_over_essential_vertices() {
    for b in [basilica_hubbard(), z2_plus_i_hubbard(), power_map(4)] {
        let c = validate_bundle(&b);
        let g = hubbard_to_gob(&b).unwrap();
        let (_, star) = g.default_basepoints().unwrap();
        let pi = g.right.pi1_presentation(star, None).unwrap();
        let mut expect: Vec<Order> = b
            .base
            .tree
            .vertices()
            .filter(|v| c.essential[b.embed[v]])
            .map(|v| b.base.ord[v])
            .filter(|o| !o.is_trivial())
            .collect();
        expect.sort();
        assert_eq!(pi.group.order_signature(), expect);
        assert!(pi.relators.is_empty());
    }
}

#[test]
fn lamination_fixture() {
    let g = basilica_lamination();
    assert!(g.validate().is_ok());
    assert_eq!(fund(&g).biset.fmt_table(), "t = <1, t>(1 2)\nu = <u^-1, t>(1 2)\n");
}

#[test]
fn fixture_lookup() {
    assert!(matches!(fixture("basilica_lamination"), Some(Fixture::Gob(_))));
    assert!(matches!(fixture("power_map_3"), Some(Fixture::Bundle(b)) if b.deg == [3]));
    assert!(matches!(fixture("power_map(2)"), Some(Fixture::Bundle(b)) if b.deg == [2]));
    assert!(matches!(fixture("basilica_biset"), Some(Fixture::Polynomial(_))));
    assert!(fixture("power_map_0").is_none());
    assert!(fixture("julia").is_none());
}

#[test]
fn htree_round_trip() {
    for b in [basilica_hubbard(), z2_plus_i_hubbard(), power_map(3)] {
        let text = format_htree(&b);
        assert_eq!(parse_htree(&text).unwrap(), b, "{text}");
    }
    // semicolons and braces on one line
    let one = "base { vertex o ord inf gen t }\ncover { vertex o1 }\nmap p o1 -> o; deg o1 2; embed o -> o1\n";
    assert_eq!(parse_htree(one).unwrap(), power_map(2));
}

#[test]
fn htree_errors_point_at_the_line() {
    let bad = BASILICA_HUBBARD.replace("angle y0 e2 1/2", "angle y0 e2 1/x");
    let line = bad.lines().position(|l| l.contains("1/x")).unwrap() + 1;
    match parse_htree(&bad) {
        Err(DynamicsError::Parse { line: l, col, .. }) => assert_eq!((l, col), (line, 15)),
        other => panic!("{other:?}"),
    }
    let missing = BASILICA_HUBBARD.replace("map p e2 -> E~\n", "");
    let decl = missing.lines().position(|l| l.contains("edge e2")).unwrap() + 1;
    match parse_htree(&missing) {
        Err(DynamicsError::Parse { line, msg, .. }) => {
            assert_eq!(line, decl);
            assert!(msg.contains("`map p` missing for `e2`"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    for (text, needle) in [
        ("base {\n", "unterminated"),
        ("}\n", "unmatched"),
        ("base { vertex a }\n", "both"),
        ("base { vertex a ord 0 }\ncover { }\n", "bad order"),
        ("frob\n", "unknown statement"),
    ] {
        let e = parse_htree(text).unwrap_err().to_string();
        assert!(e.contains(needle), "{text:?}: {e}");
    }
}

#[test]
fn self_mating_of_the_square() {
    let z2 = power_biset(2);
    let g = mating(&z2, &z2, 2).unwrap();
    assert!(g.validate().is_ok());
    for v in g.right.graph.vertices() {
        assert_eq!(g.degree_over(v).unwrap(), 2);
    }
    let fb = fund(&g);
    assert_eq!(fb.biset.degree, 2);
    // one generator for each side, identified along the edge
    assert_eq!(fb.left.group.rank(), 2);
    assert_eq!(fb.left.relators.len(), 1);
}

#[test]
fn basilica_mated_with_the_square() {
    let g = mating(&basilica_biset(), &power_biset(2), 2).unwrap();
    assert!(g.validate().is_ok());
    assert!(g.is_left_fibrant().unwrap().table().is_some());
    let fb = fund(&g);
    assert_eq!(fb.biset.degree, 2);
    assert!(fb.biset.validate().is_ok());
}

#[test]
fn mating_checks_its_input() {
    let e = mating(&power_biset(2), &power_biset(3), 2).unwrap_err();
    assert!(matches!(e, DynamicsError::Precondition(_)), "{e}");
    let mut bas = basilica_biset();
    bas.peripheral = bas.biset.right.gen(0);
    let e = mating(&bas, &power_biset(2), 2).unwrap_err();
    assert!(matches!(e, DynamicsError::Peripheral(_)), "{e}");
    // the peripheral word must permute the basis in one cycle
    bas.peripheral = bas.biset.right.gen(1);
    let e = mating(&bas, &power_biset(2), 2).unwrap_err();
    assert!(e.to_string().contains("2 cycles"), "{e}");
}

#[test]
fn cyclic_congruence_of_the_odometer() {
    let b = WreathBiset::power_map("t", 3);
    let t = b.right.gen(0);
    assert_eq!(cyclic_congruence(&b, &t, &t, 3).unwrap(), (0..3).map(Elem::basis).collect::<Vec<_>>());
    let tt = b.right.gen_pow(0, -1);
    let beta = cyclic_congruence(&b, &tt, &tt, 3).unwrap();
    assert_eq!(beta[0], Elem::basis(0));
    assert_eq!(beta[1], Elem { h: tt.clone(), s: 2 });
}

fn same_objects(a: &GraphOfBisets, b: &GraphOfBisets) {
    assert_eq!(a.carrier, b.carrier);
    assert_eq!(a.left, b.left);
    assert_eq!(a.right, b.right);
    assert_eq!(a.lambda, b.lambda);
    assert_eq!(a.rho, b.rho);
    assert_eq!(a.wreaths().unwrap(), b.wreaths().unwrap());
    assert_eq!(a.minus, b.minus);
    assert_eq!(a.reverse, b.reverse);
}

#[test]
fn identity_tuning_changes_nothing() {
    let g = hubbard_to_gob(&basilica_hubbard()).unwrap();
    let cycle = [vertex(&g.carrier, "y0"), vertex(&g.carrier, "ym1")];
    let pieces: Vec<TuningPiece> = cycle
        .iter()
        .map(|&z| {
            let w = g.wreath(z).unwrap();
            identity_piece(&w.left, &w.right, w.degree).unwrap()
        })
        .collect();
    same_objects(&tuning(&g, &cycle, &pieces).unwrap(), &g);

    for d in [2, 3, 5] {
        let g = hubbard_to_gob(&power_map(d)).unwrap();
        let z = vertex(&g.carrier, "o1");
        let grp = g.left_group(z).clone();
        let t = tuning(&g, &[z], &[identity_piece(&grp, &grp, d).unwrap()]).unwrap();
        same_objects(&t, &g);
    }
}

#[test]
fn tuning_the_square_by_the_basilica() {
    let g = hubbard_to_gob(&power_map(2)).unwrap();
    let z = vertex(&g.carrier, "o1");
    let bas = basilica_biset();
    let t = tuning(&g, &[z], &[TuningPiece::new(bas.biset.clone(), bas.peripheral.clone())]).unwrap();
    let fb = fund(&t);
    assert_eq!(level_signature(&fb.biset, &[0, 1], 6), level_signature(&bas.biset, &[0, 1], 6));
}

#[test]
fn tuning_preconditions() {
    let g = hubbard_to_gob(&z2_plus_i_hubbard()).unwrap();
    let cycle = [vertex(&g.carrier, "q2"), vertex(&g.carrier, "mi")];
    let bas = basilica_biset();
    let piece = TuningPiece::new(bas.biset.clone(), bas.peripheral.clone());
    let e = tuning(&g, &cycle, &[piece.clone(), piece.clone()]).unwrap_err();
    assert!(e.to_string().contains("tuning needs ord = inf"), "{e}");

    let g = hubbard_to_gob(&power_map(3)).unwrap();
    let z = vertex(&g.carrier, "o1");
    let e = tuning(&g, &[z], std::slice::from_ref(&piece)).unwrap_err();
    assert!(e.to_string().contains("degree 2"), "{e}");

    // a congruence that does not intertwine is rejected
    let g = hubbard_to_gob(&power_map(2)).unwrap();
    let mut bad = piece;
    bad.beta = Some(vec![Elem::basis(1), Elem::basis(1)]);
    assert!(matches!(tuning(&g, &[z], &[bad]), Err(DynamicsError::Peripheral(_))));
}
