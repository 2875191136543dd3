use std::collections::BTreeSet;

use bisetkit_algebra::Word;
use bisetkit_analysis::*;
use bisetkit_bisets::{cycles_of, parse_wr, DecPerm, Elem, WreathBiset};

fn wr(text: &str) -> WreathBiset {
    parse_wr(text).unwrap().biset
}

fn odometer() -> WreathBiset {
    wr("group <t:inf>\ndegree 2\nt = <1, t>(1 2)\n")
}

fn lamination() -> WreathBiset {
    wr("group <t:inf, u:inf>\ndegree 2\nt = <1, t>(1 2)\nu = <u^-1, t>(1 2)\n")
}

fn hubbard() -> WreathBiset {
    wr("group <a:inf, b:inf>\ndegree 2\na = <b, 1>()\nb = <1, a>(1 2)\n")
}

fn basilica() -> WreathBiset {
    wr("group <a:inf, b:inf>\ndegree 2\na = <1, b>(1 2)\nb = <1, a>\n")
}

fn z2_trivial() -> WreathBiset {
    wr("group <a:2>\ndegree 1\na = <1>()\n")
}

// Oracle: points as digit vectors, each generator applied letter by
// letter through the wreath table.
fn oracle_perm(b: &WreathBiset, g: usize, n: usize) -> Vec<usize> {
    let d = b.degree;
    let mut out = Vec::new();
    for idx in 0..d.pow(n as u32) {
        let mut digits: Vec<usize> = (0..n).rev().map(|k| idx / d.pow(k as u32) % d).collect();
        let mut cur = b.right.gen(g);
        for x in digits.iter_mut() {
            let mut h = Word::identity();
            for &(f, e) in cur.syllables() {
                for _ in 0..e {
                    h = b.left.mul(&h, &b.gens[f].dec[*x]);
                    *x = b.gens[f].perm[*x];
                }
                for _ in e..0 {
                    let prev = b.gens[f].perm.iter().position(|&y| y == *x).unwrap();
                    h = b.left.mul(&h, &b.left.inv(&b.gens[f].dec[prev]));
                    *x = prev;
                }
            }
            cur = h;
        }
        out.push(digits.iter().fold(0, |a, &x| a * d + x));
    }
    out
}

fn oracle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut v = Vec::new();
    for s in 0..p.len() {
        let (mut x, mut n) = (s, 0);
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            n += 1;
        }
        if n > 0 {
            v.push(n);
        }
    }
    v.sort_unstable();
    v
}

#[test]
fn odometer_is_one_cycle_on_level_three() {
    let b = odometer();
    let a = level_action(&b, 3, &Budget::default()).unwrap();
    assert_eq!(a.perms[0], oracle_perm(&b, 0, 3));
    assert_eq!(oracle_type(&a.perms[0]), vec![8]);
    assert_eq!(a.cycle_type(0), vec![8]);
    assert_eq!(a.orbits(), 1);
}

#[test]
fn level_zero_is_one_fixed_point() {
    for b in [odometer(), lamination(), z2_trivial()] {
        let a = level_action(&b, 0, &Budget::default()).unwrap();
        assert_eq!(a.points(), 1);
        assert!(a.perms.iter().all(|p| p == &vec![0]));
    }
}

#[test]
fn lamination_recursion_on_level_two() {
    // u swaps the two halves, so it has no fixed points below level 1
    let b = lamination();
    let a = level_action(&b, 2, &Budget::default()).unwrap();
    for g in 0..2 {
        assert_eq!(a.perms[g], oracle_perm(&b, g, 2));
    }
    assert_eq!(oracle_type(&a.perms[0]), vec![4]);
    assert_eq!(oracle_type(&a.perms[1]), vec![2, 2]);
    assert_eq!(a.cycle_type(1), vec![2, 2]);
}

#[test]
fn level_actions_match_the_oracle() {
    for b in [lamination(), hubbard(), basilica()] {
        let a = level_action(&b, 6, &Budget::default()).unwrap();
        for g in 0..2 {
            assert_eq!(a.perms[g], oracle_perm(&b, g, 6));
        }
    }
}

#[test]
fn threads_do_not_change_the_result() {
    let b = lamination();
    let one = level_action(&b, 9, &Budget::default()).unwrap();
    for jobs in [2, 3, 8, 1000] {
        assert_eq!(level_action_jobs(&b, 9, &Budget::default(), jobs).unwrap(), one);
    }
}

#[test]
fn summary_lists_every_level() {
    let s = level_action(&lamination(), 3, &Budget::default()).unwrap().summary();
    assert_eq!(s.orbit_counts, vec![1, 1, 1, 1]);
    assert_eq!(s.generators[0].cycle_types, vec![vec![1], vec![2], vec![4], vec![8]]);
    assert_eq!(s.generators[1].cycle_types[..3], [vec![1], vec![2], vec![2, 2]]);
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<LevelSummary>(&json).unwrap(), s);
}

#[test]
fn budgets_are_named() {
    let b = odometer();
    match level_action(&b, 13, &Budget::default()) {
        Err(AnalysisError::Budget { name: "depth", limit: 12, requested: 13 }) => {}
        other => panic!("{other:?}"),
    }
    let small = Budget::parse("points=100").unwrap();
    match level_action(&b, 7, &small) {
        Err(AnalysisError::Budget { name: "points", limit: 100, requested: 128 }) => {}
        other => panic!("{other:?}"),
    }
    let words = Budget::parse("words=10").unwrap();
    assert!(matches!(approx_kernel(&lamination(), 1, 2, &words), Err(AnalysisError::Budget { name: "words", .. })));
    let m = Budget::parse("matchings=0").unwrap();
    assert!(matches!(
        equivalent_upto(&lamination(), &hubbard(), 3, 2, &m),
        Err(AnalysisError::Budget { name: "matchings", .. })
    ));
}

#[test]
fn budget_settings() {
    let b = Budget::parse(" depth=4, points=99 ,words=7,matchings=3").unwrap();
    assert_eq!(b, Budget { depth: 4, points: 99, words: 7, matchings: 3 });
    assert_eq!(Budget::parse("").unwrap(), Budget::default());
    assert!(Budget::parse("depth").is_err());
    assert!(Budget::parse("depth=x").is_err());
    assert!(Budget::parse("width=3").is_err());
}

#[test]
fn odometer_kernel_is_trivial() {
    let k = approx_kernel(&odometer(), 6, 3, &Budget::default()).unwrap();
    assert_eq!(k, vec![Word::identity()]);
    // oracle: t^k is trivial on level 6 only when 64 divides k
    let g = &odometer().right;
    let ball: Vec<Word> = g.enumerate_words(3).collect();
    assert_eq!(ball.len(), 7);
    let oracle: Vec<&Word> = ball.iter().filter(|w| g.fmt_word(w) == "1").collect();
    assert_eq!(oracle.len(), 1);
}

#[test]
fn trivial_action_has_everything_in_the_kernel() {
    let b = z2_trivial();
    for n in 0..6 {
        let k = approx_kernel(&b, n, 1, &Budget::default()).unwrap();
        let names: Vec<String> = k.iter().map(|w| b.right.fmt_word(w)).collect();
        assert_eq!(names, ["1", "a"]);
    }
}

#[test]
fn level_zero_kernel_is_the_ball() {
    for b in [lamination(), hubbard(), odometer()] {
        let k = approx_kernel(&b, 0, 2, &Budget::default()).unwrap();
        assert_eq!(k, b.right.enumerate_words(2).collect::<Vec<_>>());
    }
}

#[test]
fn a_biset_is_consistent_with_a_change_of_basis() {
    let b = lamination();
    let g = &b.left;
    let w = DecPerm { dec: vec![g.gen(1), g.parse_word("t^2 u").unwrap()], perm: vec![1, 0] };
    let c = b.change_basis(&w).unwrap();
    match equivalent_upto(&b, &c, 6, 2, &Budget::default()).unwrap() {
        EquivalenceVerdict::ConsistentUpTo { depth: 6, wordlen: 2, .. } => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn odometer_and_basilica_are_distinguished() {
    let (z, bas) = (odometer(), basilica());
    let v = equivalent_upto(&z, &bas, 3, 2, &Budget::default()).unwrap();
    let EquivalenceVerdict::Distinguished(cert) = &v else { panic!("{v:?}") };
    cert.verify(&z, &bas).unwrap();
    assert!(cert.evidence.iter().any(|e| matches!(e, Evidence::Groups { .. })));
    // no word of length <= 2 in <t> acts like `a` on levels 1 to 3
    let search = cert
        .evidence
        .iter()
        .find_map(|e| match e {
            Evidence::NoMatching(s) => Some(s),
            _ => None,
        })
        .expect("a refuted search");
    assert_eq!(search.direction, Direction::SecondToFirst);
    assert_eq!(search.ball, 5);
    let against_a: BTreeSet<&str> =
        search.rejected.iter().filter(|r| r.generator == 0).map(|r| r.image.as_str()).collect();
    assert_eq!(against_a, BTreeSet::from(["1", "t", "t^-1", "t^2", "t^-2"]));
    let json = serde_json::to_string(&v).unwrap();
    assert_eq!(serde_json::from_str::<EquivalenceVerdict>(&json).unwrap(), v);
}

#[test]
fn tampered_certificates_fail() {
    let (z, bas) = (odometer(), basilica());
    let EquivalenceVerdict::Distinguished(cert) = equivalent_upto(&z, &bas, 3, 2, &Budget::default()).unwrap() else {
        panic!()
    };
    let mut c = cert.clone();
    c.evidence.retain(|e| matches!(e, Evidence::NoMatching(_)));
    let Evidence::NoMatching(s) = &mut c.evidence[0] else { panic!() };
    // one generator without candidates is enough, so a single dropped
    // rejection leaves a valid certificate
    s.rejected.pop();
    assert!(c.verify(&z, &bas).is_ok());
    let Evidence::NoMatching(s) = &mut c.evidence[0] else { panic!() };
    s.rejected.remove(0);
    assert!(c.verify(&z, &bas).is_err());
    let mut c = cert.clone();
    c.evidence.retain(|e| matches!(e, Evidence::NoMatching(_)));
    let Evidence::NoMatching(s) = &mut c.evidence[0] else { panic!() };
    s.rejected[1].witness.level = 1;
    assert!(c.verify(&z, &bas).is_err());
    // the certificate is about this pair only
    assert!(cert.verify(&bas, &bas).is_err());
}

#[test]
fn lamination_and_hubbard_basilica_agree_to_depth_eight() {
    let (l, h) = (lamination(), hubbard());
    match equivalent_upto(&l, &h, 8, 3, &Budget::default()).unwrap() {
        EquivalenceVerdict::ConsistentUpTo { depth: 8, wordlen: 3, forward, backward } => {
            assert_eq!(forward, ["a*b", "b"]);
            assert_eq!(backward, ["t*u^-1", "u"]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn different_degrees() {
    let b = WreathBiset::power_map("t", 3);
    let EquivalenceVerdict::Distinguished(c) = equivalent_upto(&odometer(), &b, 4, 1, &Budget::default()).unwrap() else {
        panic!()
    };
    assert_eq!(c.evidence, vec![Evidence::Degree { first: 2, second: 3 }]);
    c.verify(&odometer(), &b).unwrap();
}

#[test]
fn non_self_bisets_are_refused() {
    let b = WreathBiset::of_hom(&lamination().right, &odometer().right, &bisetkit_algebra::Hom::trivial(&lamination().right));
    assert!(matches!(level_action(&b, 1, &Budget::default()), Err(AnalysisError::Precondition(_))));
}

// Oracle: closure of each element under one-step conjugation inside the
// ball, by breadth-first search.
fn oracle_classes(b: &WreathBiset, bound: usize) -> BTreeSet<BTreeSet<(String, usize)>> {
    let g = &b.left;
    let ball: Vec<Word> = g.enumerate_words(bound).collect();
    let inside = |h: &Word| ball.contains(h);
    let key = |x: &Elem| (g.fmt_word(&x.h), x.s);
    let mut out = BTreeSet::new();
    for h in &ball {
        for s in 0..b.degree {
            let mut seen = BTreeSet::from([key(&Elem { h: h.clone(), s })]);
            let mut todo = vec![Elem { h: h.clone(), s }];
            while let Some(x) = todo.pop() {
                for c in &ball {
                    // both directions, so the closure is symmetric
                    for k in [c.clone(), g.inv(c)] {
                        let p = b.eval(&g.inv(&k));
                        let y = Elem { h: g.product([&k, &x.h, &p.dec[x.s]]), s: p.perm[x.s] };
                        if inside(&y.h) && seen.insert(key(&y)) {
                            todo.push(y);
                        }
                    }
                }
            }
            out.insert(seen);
        }
    }
    out
}

fn as_sets(b: &WreathBiset, c: &ConjClasses) -> BTreeSet<BTreeSet<(String, usize)>> {
    c.classes.iter().map(|k| k.iter().map(|x| (b.left.fmt_word(&x.h), x.s)).collect()).collect()
}

#[test]
fn odometer_classes_in_the_unit_ball() {
    let b = odometer();
    let c = conj_classes_bounded(&b, 1, &Budget::default()).unwrap();
    assert_eq!(as_sets(&b, &c), oracle_classes(&b, 1));
    assert_eq!(c.classes.len(), 1);
    assert_eq!(c.classes[0].len(), 6);
    let s = c.summary(&b.left);
    assert_eq!(s.classes[0][0], "1.1");
    assert_eq!(s.note, CLASS_NOTE);
}

#[test]
fn class_counts_against_the_oracle() {
    for (b, bound) in [(odometer(), 2), (odometer(), 3), (lamination(), 1), (hubbard(), 1), (basilica(), 2)] {
        let c = conj_classes_bounded(&b, bound, &Budget::default()).unwrap();
        assert_eq!(as_sets(&b, &c), oracle_classes(&b, bound));
    }
}

#[test]
fn abelian_identity_biset_has_singleton_classes() {
    let b = WreathBiset::identity(&bisetkit_algebra::FpGroup::cyclic("a", bisetkit_algebra::Order::Finite(2)));
    for bound in 0..3 {
        let c = conj_classes_bounded(&b, bound, &Budget::default()).unwrap();
        let want = if bound == 0 { 1 } else { 2 };
        assert_eq!(c.classes.len(), want);
        assert!(c.classes.iter().all(|k| k.len() == 1));
    }
}

#[test]
fn cycles_helper_agrees() {
    let p = level_action(&hubbard(), 5, &Budget::default()).unwrap();
    for q in &p.perms {
        let mut v: Vec<usize> = cycles_of(q).iter().map(Vec::len).collect();
        v.sort_unstable();
        assert_eq!(v, oracle_type(q));
    }
}
