use std::collections::{BTreeSet, HashSet};

use bisetkit_algebra::{FpGroup, Hom, Order, Word};
use bisetkit_bisets::WreathBiset;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::AnalysisError;
use crate::kernel::ball;
use crate::level::{compose, cycle_type, invert, level_action, orbit_count, point_image, project, require_self, LevelAction};

/// Outcome of [`equivalent_upto`]. Only `Distinguished` is conclusive, and
/// then only as far as its certificate says.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EquivalenceVerdict {
    /// Some generator matching each way agrees on every test; the images
    /// are written in the other group.
    ConsistentUpTo { depth: usize, wordlen: usize, forward: Vec<String>, backward: Vec<String> },
    Distinguished(Certificate),
}

impl EquivalenceVerdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, EquivalenceVerdict::Distinguished(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub depth: usize,
    pub wordlen: usize,
    pub evidence: Vec<Evidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Degree { first: usize, second: usize },
    /// Orders of the nontrivial free factors, sorted. Free products of
    /// cyclic groups with different lists are not isomorphic.
    Groups { first: Vec<String>, second: Vec<String> },
    /// Every generator matching in the recorded search space fails a test.
    NoMatching(Search),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    FirstToSecond,
    SecondToFirst,
}

/// Images of the source generators range over the whole ball of the
/// target group. Candidates are rejected one generator at a time, and the
/// survivors are tried jointly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Search {
    pub direction: Direction,
    pub generators: Vec<String>,
    pub ball: usize,
    pub rejected: Vec<Rejection>,
    pub matchings: Vec<Refutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub generator: usize,
    pub image: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub images: Vec<String>,
    pub witness: Witness,
}

/// A source word and the level where it and its image disagree. For
/// orbit counts the word is the whole generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub test: String,
    pub level: usize,
    pub invariant: Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Invariant {
    Order { source: String, target: String },
    CycleType { source: Vec<usize>, target: Vec<usize> },
    Orbits { source: usize, target: usize },
}

fn factor_orders(g: &FpGroup) -> Vec<String> {
    let mut v: Vec<Order> = g.order_signature().into_iter().filter(|o| !o.is_trivial()).collect();
    v.sort();
    v.iter().map(Order::to_string).collect()
}

const ALL: &str = "<all generators>";

/// Compares `b` and `c` through level `n`, matching generators to words
/// of syllable length at most `maxlen` in both directions.
pub fn equivalent_upto(
    b: &WreathBiset,
    c: &WreathBiset,
    n: usize,
    maxlen: usize,
    budget: &Budget,
) -> Result<EquivalenceVerdict, AnalysisError> {
    require_self(b)?;
    require_self(c)?;
    let mut evidence = Vec::new();
    if b.degree != c.degree {
        evidence.push(Evidence::Degree { first: b.degree, second: c.degree });
        return Ok(EquivalenceVerdict::Distinguished(Certificate { depth: n, wordlen: maxlen, evidence }));
    }
    let (fb, fc) = (factor_orders(&b.right), factor_orders(&c.right));
    if fb != fc {
        evidence.push(Evidence::Groups { first: fb, second: fc });
    }
    let ab = level_action(b, n, budget)?;
    let ac = level_action(c, n, budget)?;
    let forward = search(b, &ab, c, &ac, maxlen, budget, Direction::FirstToSecond)?;
    let backward = search(c, &ac, b, &ab, maxlen, budget, Direction::SecondToFirst)?;
    match (forward, backward) {
        (Ok(f), Ok(k)) if evidence.is_empty() => Ok(EquivalenceVerdict::ConsistentUpTo {
            depth: n,
            wordlen: maxlen,
            forward: f.iter().map(|w| c.right.fmt_word(w)).collect(),
            backward: k.iter().map(|w| b.right.fmt_word(w)).collect(),
        }),
        (f, k) => {
            evidence.extend([f.err(), k.err()].into_iter().flatten().map(Evidence::NoMatching));
            Ok(EquivalenceVerdict::Distinguished(Certificate { depth: n, wordlen: maxlen, evidence }))
        }
    }
}

// Cycle types on levels 1..=n, read off the level-n permutation.
fn profile(p: &[usize], d: usize, n: usize) -> Vec<Vec<usize>> {
    (1..=n).map(|k| cycle_type(&project(p, d, n, k))).collect()
}

fn orbit_profile(perms: &[Vec<usize>], d: usize, n: usize) -> Vec<usize> {
    (1..=n)
        .map(|k| {
            let ps: Vec<Vec<usize>> = perms.iter().map(|p| project(p, d, n, k)).collect();
            orbit_count(&ps, d.pow(k as u32))
        })
        .collect()
}

fn first_difference(s: &[Vec<usize>], t: &[Vec<usize>]) -> Option<(usize, Invariant)> {
    let k = s.iter().zip(t).position(|(x, y)| x != y)?;
    Some((k + 1, Invariant::CycleType { source: s[k].clone(), target: t[k].clone() }))
}

struct Test {
    word: Word,
    parts: Vec<(usize, bool)>,
    profile: Vec<Vec<usize>>,
}

#[allow(clippy::too_many_arguments)]
fn search(
    src: &WreathBiset,
    sa: &LevelAction,
    tgt: &WreathBiset,
    ta: &LevelAction,
    maxlen: usize,
    budget: &Budget,
    direction: Direction,
) -> Result<Result<Vec<Word>, Search>, AnalysisError> {
    let (d, n) = (src.degree, sa.level);
    let g = &src.right;
    let words = ball(&tgt.right, maxlen, budget)?;
    let mut out = Search {
        direction,
        generators: sa.names.clone(),
        ball: words.len(),
        rejected: Vec::new(),
        matchings: Vec::new(),
    };
    let mut survivors: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(g.rank());
    for i in 0..g.rank() {
        let want = g.order_of_factor(i);
        let prof = profile(&sa.perms[i], d, n);
        let mut keep = Vec::new();
        for (k, w) in words.iter().enumerate() {
            let order = tgt.right.element_order(w);
            let witness = if order != want {
                Some(Witness {
                    test: sa.names[i].clone(),
                    level: 0,
                    invariant: Invariant::Order { source: want.to_string(), target: order.to_string() },
                })
            } else {
                let p = ta.word_perm(w);
                match first_difference(&prof, &profile(&p, d, n)) {
                    Some((level, invariant)) => Some(Witness { test: sa.names[i].clone(), level, invariant }),
                    None => {
                        keep.push((k, p));
                        None
                    }
                }
            };
            if let Some(witness) = witness {
                out.rejected.push(Rejection { generator: i, image: tgt.right.fmt_word(w), witness });
            }
        }
        survivors.push(keep);
    }
    let total = survivors.iter().fold(1u64, |acc, s| acc.saturating_mul(s.len() as u64));
    budget.check("matchings", budget.matchings, total)?;
    if total == 0 {
        return Ok(Err(out));
    }

    let mut tests = Vec::new();
    for i in 0..g.rank() {
        for j in i + 1..g.rank() {
            for inv in [false, true] {
                let pj = if inv { invert(&sa.perms[j]) } else { sa.perms[j].clone() };
                let gj = if inv { g.inv(&g.gen(j)) } else { g.gen(j) };
                tests.push(Test {
                    word: g.mul(&g.gen(i), &gj),
                    parts: vec![(i, false), (j, inv)],
                    profile: profile(&compose(&sa.perms[i], &pj), d, n),
                });
            }
        }
    }
    let src_orbits = orbit_profile(&sa.perms, d, n);

    let mut idx = vec![0usize; g.rank()];
    loop {
        let perms: Vec<&Vec<usize>> = idx.iter().enumerate().map(|(i, &k)| &survivors[i][k].1).collect();
        let mut witness = None;
        for t in &tests {
            let mut p: Vec<usize> = (0..ta.points()).collect();
            for &(i, inv) in &t.parts {
                p = compose(&p, &if inv { invert(perms[i]) } else { perms[i].clone() });
            }
            if let Some((level, invariant)) = first_difference(&t.profile, &profile(&p, d, n)) {
                witness = Some(Witness { test: g.fmt_word(&t.word), level, invariant });
                break;
            }
        }
        if witness.is_none() {
            let owned: Vec<Vec<usize>> = perms.iter().map(|p| (*p).clone()).collect();
            let tgt_orbits = orbit_profile(&owned, d, n);
            if let Some(k) = src_orbits.iter().zip(&tgt_orbits).position(|(x, y)| x != y) {
                witness = Some(Witness {
                    test: ALL.into(),
                    level: k + 1,
                    invariant: Invariant::Orbits { source: src_orbits[k], target: tgt_orbits[k] },
                });
            }
        }
        let images: Vec<&Word> = idx.iter().enumerate().map(|(i, &k)| &words[survivors[i][k].0]).collect();
        match witness {
            None => return Ok(Ok(images.into_iter().cloned().collect())),
            Some(witness) => out.matchings.push(Refutation {
                images: images.iter().map(|w| tgt.right.fmt_word(w)).collect(),
                witness,
            }),
        }
        // next matching
        let mut i = g.rank();
        loop {
            if i == 0 {
                return Ok(Err(out));
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < survivors[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

// Permutation of level `k` by direct walks through the biset.
fn walk_perm(b: &WreathBiset, w: &Word, k: usize) -> Vec<usize> {
    (0..b.degree.pow(k as u32)).map(|p| point_image(b, w, p, k)).collect()
}

impl Certificate {
    /// Rechecks every piece of evidence from scratch, without the level
    /// action tables used to find it.
    pub fn verify(&self, first: &WreathBiset, second: &WreathBiset) -> Result<(), String> {
        if self.evidence.is_empty() {
            return Err("no evidence".into());
        }
        for e in &self.evidence {
            match e {
                Evidence::Degree { first: x, second: y } => {
                    if (first.degree, second.degree) != (*x, *y) || x == y {
                        return Err(format!("degrees are {} and {}", first.degree, second.degree));
                    }
                }
                Evidence::Groups { first: x, second: y } => {
                    if &factor_orders(&first.right) != x || &factor_orders(&second.right) != y || x == y {
                        return Err("factor orders do not match the record".into());
                    }
                }
                Evidence::NoMatching(s) => {
                    let (src, tgt) = match s.direction {
                        Direction::FirstToSecond => (first, second),
                        Direction::SecondToFirst => (second, first),
                    };
                    verify_search(s, src, tgt, self.wordlen)?;
                }
            }
        }
        Ok(())
    }
}

fn check_witness(w: &Witness, src: &WreathBiset, tgt: &WreathBiset, images: &[Word]) -> Result<(), String> {
    let (g, h) = (&src.right, &tgt.right);
    let hom = Hom::new(images.to_vec());
    let found = match &w.invariant {
        Invariant::Order { .. } => {
            let x = g.parse_word(&w.test).map_err(|e| e.to_string())?;
            let y = hom.apply(h, &x);
            Invariant::Order { source: g.element_order(&x).to_string(), target: h.element_order(&y).to_string() }
        }
        Invariant::CycleType { .. } => {
            let x = g.parse_word(&w.test).map_err(|e| e.to_string())?;
            let y = hom.apply(h, &x);
            Invariant::CycleType {
                source: cycle_type(&walk_perm(src, &x, w.level)),
                target: cycle_type(&walk_perm(tgt, &y, w.level)),
            }
        }
        Invariant::Orbits { .. } => {
            let ps: Vec<Vec<usize>> = (0..g.rank()).map(|i| walk_perm(src, &g.gen(i), w.level)).collect();
            let qs: Vec<Vec<usize>> = images.iter().map(|y| walk_perm(tgt, y, w.level)).collect();
            let pts = src.degree.pow(w.level as u32);
            Invariant::Orbits { source: orbit_count(&ps, pts), target: orbit_count(&qs, pts) }
        }
    };
    let differs = match &found {
        Invariant::Order { source, target } => source != target,
        Invariant::CycleType { source, target } => source != target,
        Invariant::Orbits { source, target } => source != target,
    };
    if found != w.invariant || !differs {
        return Err(format!("witness `{}` at level {} does not reproduce: {:?}", w.test, w.level, found));
    }
    Ok(())
}

fn verify_search(s: &Search, src: &WreathBiset, tgt: &WreathBiset, maxlen: usize) -> Result<(), String> {
    let (g, h) = (&src.right, &tgt.right);
    let names: Vec<String> = g.factors().iter().map(|f| f.name.clone()).collect();
    if names != s.generators {
        return Err("generator names differ from the record".into());
    }
    let words: Vec<String> = h.enumerate_words(maxlen).map(|w| h.fmt_word(&w)).collect();
    if words.len() != s.ball {
        return Err(format!("ball has {} words, record says {}", words.len(), s.ball));
    }
    let parse = |t: &str| h.parse_word(t).map_err(|e| e.to_string());
    let mut rejected: Vec<HashSet<&str>> = vec![HashSet::new(); g.rank()];
    for r in &s.rejected {
        if r.generator >= g.rank() || !rejected[r.generator].insert(&r.image) {
            return Err(format!("bad rejection of `{}`", r.image));
        }
        let mut images = vec![Word::identity(); g.rank()];
        images[r.generator] = parse(&r.image)?;
        // a one-generator test word
        let x = g.parse_word(&r.witness.test).map_err(|e| e.to_string())?;
        if x != g.gen(r.generator) {
            return Err(format!("rejection of `{}` tests `{}`", r.image, r.witness.test));
        }
        check_witness(&r.witness, src, tgt, &images)?;
    }
    let open: Vec<Vec<&str>> = rejected
        .iter()
        .map(|rej| words.iter().map(String::as_str).filter(|w| !rej.contains(w)).collect())
        .collect();
    let expected = open.iter().fold(1usize, |acc, o| acc.saturating_mul(o.len()));
    let mut seen = BTreeSet::new();
    for m in &s.matchings {
        if m.images.len() != g.rank() || m.images.iter().zip(&open).any(|(x, o)| !o.contains(&x.as_str())) {
            return Err(format!("matching {:?} is outside the search space", m.images));
        }
        if !seen.insert(m.images.clone()) {
            return Err(format!("matching {:?} recorded twice", m.images));
        }
        let images = m.images.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?;
        check_witness(&m.witness, src, tgt, &images)?;
    }
    if seen.len() != expected {
        return Err(format!("{} matchings refuted out of {expected}", seen.len()));
    }
    Ok(())
}
