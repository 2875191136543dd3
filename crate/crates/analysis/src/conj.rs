use std::collections::HashMap;

use bisetkit_algebra::FpGroup;
use bisetkit_bisets::{Elem, WreathBiset};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::AnalysisError;
use crate::kernel::ball;
use crate::level::require_self;

pub const CLASS_NOTE: &str =
    "classes are joined only through conjugators and elements inside the ball; larger bounds may merge them";

/// Classes of the elements `h.s` with `|h| <= bound` under `b -> g b g^-1`
/// for `|g| <= bound`. Each class lists its elements in ball order, the
/// first one being the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    pub bound: usize,
    pub classes: Vec<Vec<Elem>>,
}

impl ConjClasses {
    pub fn representatives(&self) -> Vec<&Elem> {
        self.classes.iter().map(|c| &c[0]).collect()
    }

    pub fn class_of(&self, x: &Elem) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(x))
    }

    pub fn summary(&self, g: &FpGroup) -> ClassSummary {
        ClassSummary {
            bound: self.bound,
            count: self.classes.len(),
            classes: self.classes.iter().map(|c| c.iter().map(|x| fmt_elem(g, x)).collect()).collect(),
            note: CLASS_NOTE.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub bound: usize,
    pub count: usize,
    pub classes: Vec<Vec<String>>,
    pub note: String,
}

/// `h.s`, with the basis numbered from 1.
pub fn fmt_elem(g: &FpGroup, x: &Elem) -> String {
    format!("{}.{}", g.fmt_word(&x.h), x.s + 1)
}

/// `g . x . g^-1`
pub fn conjugate(b: &WreathBiset, g: &bisetkit_algebra::Word, x: &Elem) -> Elem {
    b.act(&b.act_left(g, x), &b.right.inv(g))
}

pub fn conj_classes_bounded(b: &WreathBiset, bound: usize, budget: &Budget) -> Result<ConjClasses, AnalysisError> {
    require_self(b)?;
    let words = ball(&b.left, bound, budget)?;
    let elems: Vec<Elem> = words.iter().flat_map(|h| (0..b.degree).map(|s| Elem { h: h.clone(), s })).collect();
    budget.check("words", budget.words, elems.len() as u64)?;
    let index: HashMap<&Elem, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, x) in elems.iter().enumerate() {
        for g in &words {
            if let Some(&j) = index.get(&conjugate(b, g, x)) {
                let (a, c) = (find(&mut parent, i), find(&mut parent, j));
                // keep the earlier element as root
                if a != c {
                    parent[a.max(c)] = a.min(c);
                }
            }
        }
    }
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        let r = find(&mut parent, i);
        let k = *slot.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(x.clone());
    }
    Ok(ConjClasses { bound, classes })
}
