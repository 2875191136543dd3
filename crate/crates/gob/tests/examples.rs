mod common;

use bisetkit_algebra::Hom;
use bisetkit_bisets::{format_wr, DecPerm, WreathBiset};
use bisetkit_gob::*;
use bisetkit_graphs::{parse_gog, GraphMorphism};
use common::{cycle_type, lamination, level_perm, power_map};

fn fund(g: &GraphOfBisets) -> FundamentalBiset {
    let t = g.is_left_fibrant().unwrap().table().unwrap();
    let (d, s) = g.default_basepoints().unwrap();
    g.fundamental_biset(d, s, &t).unwrap()
}

#[test]
fn lamination_recursion() {
    let g = lamination();
    assert!(g.validate().is_ok(), "{}", g.validate());
    let fb = fund(&g);
    assert_eq!(fb.biset.fmt_table(), "t = <1, t>(1 2)\nu = <u^-1, t>(1 2)\n");
    assert!(fb.biset.validate().is_ok());
    assert_eq!(fb.biset.left.to_string(), "<t:inf, u:inf>");
    // the two basis elements are the two points of the cyclic biset at S
    assert!(fb.basis.iter().all(|b| g.carrier.name(b.vertex) == "S"));
}

#[test]
fn lamination_degree_at_every_star() {
    let g = lamination();
    let t = g.is_left_fibrant().unwrap().table().unwrap();
    for star in g.right.graph.vertices() {
        assert_eq!(g.degree_over(star).unwrap(), 2);
        for dagger in g.left.graph.vertices() {
            let fb = g.fundamental_biset(dagger, star, &t).unwrap();
            assert_eq!(fb.biset.degree, 2);
            assert!(fb.biset.validate().is_ok());
        }
    }
}

#[test]
fn basepoint_changes_keep_level_cycle_types() {
    let g = lamination();
    let t = g.is_left_fibrant().unwrap().table().unwrap();
    let c = g.left.graph.index_of("C").unwrap();
    let a = g.left.graph.index_of("A").unwrap();
    let b1 = g.fundamental_biset(c, c, &t).unwrap().biset;
    let b2 = g.fundamental_biset(a, c, &t).unwrap().biset;
    assert_eq!(b1.left, b2.left);
    for k in 1..=8 {
        for i in 0..b1.right.rank() {
            let w = b1.right.gen(i);
            assert_eq!(cycle_type(&level_perm(&b1, &w, k)), cycle_type(&level_perm(&b2, &w, k)));
        }
    }
}

#[test]
fn power_maps() {
    assert_eq!(fund(&power_map(3)).biset.fmt_table(), "t = <1, 1, t>(1 2 3)\n");
    assert_eq!(fund(&power_map(2)).biset, WreathBiset::power_map("t", 2));
}

#[test]
fn identity_gob_is_identity() {
    let x = parse_gog(
        "vertex p group <a:2>\nvertex q group <b:inf>\nedge e from p to q\nedge s from q to q group <c:inf> into_minus b^2 into_plus b\n",
    )
    .unwrap();
    let i = GraphOfBisets::identity(&x);
    assert!(i.validate().is_ok(), "{}", i.validate());
    let table = i.is_left_fibrant().unwrap().table().unwrap();
    assert!(table.entries.values().all(|l| l.len() == 1));
    assert!(i.is_biprincipal());
    for star in x.graph.vertices() {
        let fb = i.fundamental_biset(star, star, &table).unwrap();
        assert_eq!(fb.biset, WreathBiset::identity(&fb.right.group));
    }
}

#[test]
fn missing_edge_breaks_fibrancy() {
    let text = include_str!("data/lamination.gob")
        .lines()
        .filter(|l| !l.contains("y2"))
        .collect::<Vec<_>>()
        .join("\n");
    let g = parse_gog_text(&text);
    assert!(g.validate().is_ok());
    match g.is_left_fibrant().unwrap() {
        Fibrancy::NotFibrant { vertex, edge, reason } => {
            assert_eq!(g.carrier.name(vertex), "S");
            assert_eq!(g.right.graph.name(edge), "y");
            assert!(reason.contains("basis 2"), "{reason}");
        }
        Fibrancy::Fibrant(_) => panic!("expected a fibrancy failure"),
    }
}

fn parse_gog_text(t: &str) -> GraphOfBisets {
    parse_gob(t).unwrap()
}

#[test]
fn non_involutive_reverse_is_reported() {
    let text = format!("{}reverse y2 -> [t@1]\nreverse y2~ -> [t@1]\n", include_str!("data/lamination.gob"));
    let g = parse_gob(&text).unwrap();
    let r = g.validate();
    assert!(!r.is_ok());
    assert!(r.to_string().contains("not involutive"), "{r}");
}

#[test]
fn gob_text_round_trip() {
    for g in [lamination(), power_map(3), GraphOfBisets::identity(&lamination().left)] {
        let t = format_gob(&g);
        assert_eq!(parse_gob(&t).unwrap(), g, "{t}");
    }
    let err = parse_gob("left_graph {\n vertex a\n edge e from a to b\n}\n").unwrap_err();
    assert!(matches!(err, GobError::Parse { line: 3, .. }), "{err:?}");
    let err = parse_gob("left_graph {\n vertex a\n}\nright_graph = left_graph\ncarrier {\n vertex z\n}\nlambda z -> a\nrho z -> a\nbiset z = cyclic(n=1, d=0)\n").unwrap_err();
    assert!(matches!(err, GobError::Parse { line: 10, .. }), "{err:?}");
}

#[test]
fn product_with_identity() {
    let g = lamination();
    let i = GraphOfBisets::identity(&g.right);
    let p = g.product(&i).unwrap();
    assert!(p.validate().is_ok(), "{}", p.validate());
    assert_eq!(p.carrier.len(), g.carrier.len());
    for z in 0..g.carrier.len() {
        let name = format!("({},{})", g.carrier.name(z), g.right.graph.name(g.rho.apply(z)));
        let pos = g.carrier.positive_of(z);
        let q = p.carrier.index_of(&name).unwrap_or_else(|| {
            let pn = format!("({},{})", g.carrier.name(pos), g.right.graph.name(g.rho.apply(pos)));
            p.carrier.reverse(p.carrier.index_of(&pn).unwrap())
        });
        assert_eq!(p.wreath(q).unwrap(), g.wreath(z).unwrap());
        assert_eq!(p.minus[q], g.minus[z]);
    }
    assert_eq!(fund(&p).biset, fund(&g).biset);
    let q = i.product(&g).unwrap();
    assert_eq!(fund(&q).biset, fund(&g).biset);
}

#[test]
fn disjoint_images_give_empty_product() {
    let x = "left_graph {\n vertex P\n vertex Q\n}\nright_graph = left_graph\ncarrier {\n vertex z\n}\nbiset z = cyclic(n=1, d=1, right=trivial)\n";
    let b = parse_gob(&format!("{x}lambda z -> P\nrho z -> P\n")).unwrap();
    let c = parse_gob(&format!("{x}lambda z -> Q\nrho z -> Q\n")).unwrap();
    assert!(b.product(&c).unwrap().carrier.is_empty());
}

#[test]
fn lamination_square() {
    let g = lamination();
    let p = g.product(&g).unwrap();
    assert!(p.validate().is_ok());
    let t = p.is_left_fibrant().unwrap().table().unwrap();
    let c = p.left.graph.index_of("C").unwrap();
    let fb = p.fundamental_biset(c, c, &t).unwrap().biset;
    let one = fund(&g).biset;
    let sq = one.tensor(&one).unwrap();
    assert_eq!(fb.degree, 4);
    for k in 1..=6 {
        for i in 0..sq.right.rank() {
            let w = sq.right.gen(i);
            assert_eq!(cycle_type(&level_perm(&fb, &w, k)), cycle_type(&level_perm(&sq, &w, k)), "level {k}");
        }
    }
}

#[test]
fn barycentric_subdivision() {
    let g = lamination();
    let sub = g.barycentric().unwrap();
    let b = &sub.gob;
    assert!(b.validate().is_ok(), "{}", b.validate());
    assert_eq!(b.carrier.geometric_edge_count(), 2 * g.carrier.geometric_edge_count());
    assert_eq!(b.carrier.vertex_count(), g.carrier.vertex_count() + g.carrier.geometric_edge_count());
    let t = b.is_left_fibrant().unwrap().table().unwrap();
    let c = g.left.graph.index_of("C").unwrap();
    let before = g.left.pi1_presentation(c, None).unwrap();
    let after_tree = sub.left.lift_tree(&g.left, &before.tree).unwrap();
    let rafter = sub.right.lift_tree(&g.right, &g.right.pi1_presentation(c, None).unwrap().tree).unwrap();
    let c2 = sub.left.graph.vertex_map[c].unwrap();
    let fb = b.fundamental_biset_with_trees(c2, c2, &t, Some(after_tree), Some(rafter)).unwrap().biset;
    let orig = fund(&g).biset;
    assert_eq!(fb, orig);
    for k in 1..=8 {
        for i in 0..orig.right.rank() {
            let w = orig.right.gen(i);
            assert_eq!(level_perm(&fb, &w, k), level_perm(&orig, &w, k));
        }
    }
    let id = GraphOfBisets::identity(&g.left).barycentric().unwrap().gob;
    assert!(id.validate().is_ok());
    assert!(id.is_biprincipal());
}

#[test]
fn morphism_gobs() {
    let y = parse_gog("vertex p group <a:inf>\nvertex q group <b:2>\nedge e from p to q\n").unwrap();
    let id = GraphOfBisets::of_morphism(&y, &y, &GraphMorphism::identity(&y.graph), &y.incl).unwrap();
    assert_eq!(id, GraphOfBisets::identity(&y));

    let one = |g: &str| parse_gog(&format!("vertex v group {g}\n")).unwrap();
    let (ya, xb, wc) = (one("<a:inf>"), one("<b:inf>"), one("<c:inf>"));
    let word = |g: &bisetkit_graphs::GraphOfGroups, s: &str| g.groups[0].parse_word(s).unwrap();
    let id0 = GraphMorphism { map: vec![0] };
    let theta = GraphOfBisets::of_morphism(&ya, &xb, &id0, &[Hom::new(vec![word(&xb, "b^2")])]).unwrap();
    let kappa = GraphOfBisets::of_morphism(&xb, &wc, &id0, &[Hom::new(vec![word(&wc, "c^-3")])]).unwrap();
    let both = GraphOfBisets::of_morphism(&ya, &wc, &id0, &[Hom::new(vec![word(&wc, "c^-6")])]).unwrap();
    let prod = theta.product(&kappa).unwrap();
    // the tensor basis b^s (x) c^t is c^(t - 3s); the last three are a c^(t + 3)
    let a = ya.groups[0].gen(0);
    let one_ = ya.groups[0].identity();
    let w = DecPerm { dec: vec![one_.clone(), one_.clone(), one_, a.clone(), a.clone(), a], perm: (0..6).collect() };
    assert_eq!(prod.wreath(0).unwrap().change_basis(&w).unwrap(), both.wreath(0).unwrap());
    assert_eq!(format_wr(&both.wreath(0).unwrap(), None).lines().nth(3).unwrap(), "c = <1, 1, 1, 1, 1, a^-1>(1 2 3 4 5 6)");

    // finite targets: the trivial group into Z/3 has index 3
    let z3 = one("<c:3>");
    let triv = parse_gog("vertex v\n").unwrap();
    let m = GraphOfBisets::of_morphism(&triv, &z3, &id0, &[Hom::new(vec![])]).unwrap();
    assert_eq!(m.wreath(0).unwrap().degree, 3);
    // a non-injective map is rejected
    let z2 = one("<a:2>");
    assert!(GraphOfBisets::of_morphism(&z2, &xb, &id0, &[Hom::new(vec![word(&xb, "b")])]).is_err());
    // incompatible edge data is rejected
    let bad = Hom::new(vec![word(&xb, "b^2")]);
    let y2 = parse_gog("vertex p group <a:inf>\nvertex q\nedge e from p to q\n").unwrap();
    let x2 = parse_gog("vertex p group <b:inf>\nvertex q\nedge e from p to q\n").unwrap();
    let homs = vec![bad.clone(), Hom::new(vec![]), Hom::new(vec![]), Hom::new(vec![])];
    let g = GraphOfBisets::of_morphism(&y2, &x2, &GraphMorphism::identity(&y2.graph), &homs).unwrap();
    assert!(g.validate().is_ok());
    assert!(!g.is_biprincipal());
}
