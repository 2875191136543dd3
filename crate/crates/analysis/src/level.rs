use std::collections::HashMap;

use bisetkit_algebra::Word;
use bisetkit_bisets::{cycles_of, DecPerm, Elem, WreathBiset};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::AnalysisError;

/// Generator permutations of the `d^n` points on level `n`.
///
/// A point `x_1 ... x_n` stands for `s_{x_n} (x) ... (x) s_{x_1}`: a group
/// element meets `x_1` first and passes its decoration on to `x_2`. Points
/// are numbered lexicographically, `x_1` most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAction {
    pub degree: usize,
    pub level: usize,
    pub names: Vec<String>,
    pub perms: Vec<Vec<usize>>,
}

pub(crate) fn require_self(b: &WreathBiset) -> Result<(), AnalysisError> {
    if !b.is_self_biset() {
        return Err(AnalysisError::Precondition(format!(
            "level actions need a self-biset, got {} on the left and {} on the right",
            b.left, b.right
        )));
    }
    Ok(())
}

pub fn level_action(b: &WreathBiset, n: usize, budget: &Budget) -> Result<LevelAction, AnalysisError> {
    level_action_jobs(b, n, budget, 1)
}

/// [`level_action`] with the points split over `jobs` threads.
pub fn level_action_jobs(b: &WreathBiset, n: usize, budget: &Budget, jobs: usize) -> Result<LevelAction, AnalysisError> {
    require_self(b)?;
    let total = budget.level_size(b.degree, n)?;
    let gens: Vec<Word> = (0..b.right.rank()).map(|i| b.right.gen(i)).collect();
    let jobs = jobs.clamp(1, total.max(1));
    let chunk = total.div_ceil(jobs).max(1);
    let mut perms = vec![vec![0; total]; gens.len()];
    let parts: Vec<(usize, Vec<Vec<usize>>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..total)
            .step_by(chunk)
            .map(|start| {
                let gens = &gens;
                scope.spawn(move || {
                    let mut walk = Walker::new(b);
                    let end = (start + chunk).min(total);
                    let out = gens.iter().map(|g| (start..end).map(|p| walk.image(g, p, n)).collect()).collect();
                    (start, out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("level worker panicked")).collect()
    });
    for (start, out) in parts {
        for (i, v) in out.into_iter().enumerate() {
            perms[i][start..start + v.len()].copy_from_slice(&v);
        }
    }
    Ok(LevelAction { degree: b.degree, level: n, names: b.right.factors().iter().map(|f| f.name.clone()).collect(), perms })
}

// Follows one point down the tree, caching wreath images of sections.
struct Walker<'a> {
    b: &'a WreathBiset,
    cache: HashMap<Word, DecPerm>,
}

impl<'a> Walker<'a> {
    fn new(b: &'a WreathBiset) -> Self {
        Walker { b, cache: HashMap::new() }
    }

    fn image(&mut self, g: &Word, p: usize, n: usize) -> usize {
        let d = self.b.degree;
        let mut digits = digits_of(p, d, n);
        let mut cur = g.clone();
        for x in digits.iter_mut() {
            if cur.is_identity() {
                break;
            }
            let b = self.b;
            let dp = self.cache.entry(cur.clone()).or_insert_with(|| b.eval(&cur));
            let h = dp.dec[*x].clone();
            *x = dp.perm[*x];
            cur = h;
        }
        index_of(&digits, d)
    }
}

pub fn digits_of(mut p: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = p % d;
        p /= d;
    }
    out
}

pub fn index_of(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// Image of one point under `w`, walking the biset directly.
pub fn point_image(b: &WreathBiset, w: &Word, p: usize, n: usize) -> usize {
    let mut digits = digits_of(p, b.degree, n);
    let mut cur = w.clone();
    for x in digits.iter_mut() {
        let e = b.act(&Elem::basis(*x), &cur);
        *x = e.s;
        cur = e.h;
    }
    index_of(&digits, b.degree)
}

/// Cycle lengths, fixed points included, in increasing order.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = cycles_of(perm).iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

/// `p` then `q`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&x| q[x]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[y] = x;
    }
    out
}

/// Restriction of a level-`from` permutation to the first `to` letters.
pub fn project(perm: &[usize], d: usize, from: usize, to: usize) -> Vec<usize> {
    let step = d.pow((from - to) as u32);
    (0..d.pow(to as u32)).map(|p| perm[p * step] / step).collect()
}

/// Orbits of the group generated by `perms` on `points` points.
pub fn orbit_count(perms: &[Vec<usize>], points: usize) -> usize {
    let mut parent: Vec<usize> = (0..points).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut count = points;
    for p in perms {
        for (x, &y) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
    }
    count
}

impl LevelAction {
    pub fn points(&self) -> usize {
        self.degree.pow(self.level as u32)
    }

    /// The action on level `k <= self.level`.
    pub fn project(&self, k: usize) -> LevelAction {
        LevelAction {
            degree: self.degree,
            level: k,
            names: self.names.clone(),
            perms: self.perms.iter().map(|p| project(p, self.degree, self.level, k)).collect(),
        }
    }

    /// Permutation of an element of the acting group.
    pub fn word_perm(&self, w: &Word) -> Vec<usize> {
        let mut acc: Vec<usize> = (0..self.points()).collect();
        for &(f, e) in w.syllables() {
            let p = if e < 0 { invert(&self.perms[f]) } else { self.perms[f].clone() };
            for _ in 0..e.unsigned_abs() {
                acc = compose(&acc, &p);
            }
        }
        acc
    }

    pub fn cycle_type(&self, i: usize) -> Vec<usize> {
        cycle_type(&self.perms[i])
    }

    pub fn orbits(&self) -> usize {
        orbit_count(&self.perms, self.points())
    }

    pub fn summary(&self) -> LevelSummary {
        let levels: Vec<LevelAction> = (0..=self.level).map(|k| self.project(k)).collect();
        LevelSummary {
            degree: self.degree,
            depth: self.level,
            generators: (0..self.names.len())
                .map(|i| GeneratorLevels {
                    name: self.names[i].clone(),
                    cycle_types: levels.iter().map(|l| l.cycle_type(i)).collect(),
                })
                .collect(),
            orbit_counts: levels.iter().map(LevelAction::orbits).collect(),
        }
    }
}

/// Cycle types and orbit counts for every level up to `depth`; entry `k`
/// of each list is level `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub degree: usize,
    pub depth: usize,
    pub generators: Vec<GeneratorLevels>,
    pub orbit_counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorLevels {
    pub name: String,
    pub cycle_types: Vec<Vec<usize>>,
}
