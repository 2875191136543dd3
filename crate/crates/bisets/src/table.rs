use std::collections::VecDeque;

use bisetkit_algebra::{FpGroup, Order, Report, Word};

use crate::decperm::{check_perm, DecPerm};
use crate::error::BisetError;
use crate::wreath::WreathBiset;

/// A finite biset given by the permutation of its elements under each
/// left and each right generator. `right[g][b]` is `b . g`, `left[h][b]`
/// is `h . b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableBiset {
    pub left_group: FpGroup,
    pub right_group: FpGroup,
    pub size: usize,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn perm_pow(p: &[usize], n: u64) -> Vec<usize> {
    let mut cur: Vec<usize> = (0..p.len()).collect();
    for _ in 0..n {
        cur = cur.iter().map(|&x| p[x]).collect();
    }
    cur
}

impl TableBiset {
    /// The one-point biset over any two groups, with trivial actions.
    pub fn point(left_group: FpGroup, right_group: FpGroup) -> Self {
        let left = vec![vec![0]; left_group.rank()];
        let right = vec![vec![0]; right_group.rank()];
        TableBiset { left_group, right_group, size: 1, left, right }
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        if self.left.len() != self.left_group.rank() || self.right.len() != self.right_group.rank() {
            r.push("table", "one table per generator is required");
            return r;
        }
        let sides = [(&self.left, &self.left_group, "left"), (&self.right, &self.right_group, "right")];
        for (tables, grp, side) in sides {
            for (i, t) in tables.iter().enumerate() {
                let name = format!("{side} {}", grp.factor(i).name);
                if t.len() != self.size || check_perm(t).is_err() {
                    r.push(name, "not a permutation of the elements");
                    continue;
                }
                if let Order::Finite(n) = grp.order_of_factor(i) {
                    if perm_pow(t, n).iter().enumerate().any(|(a, &b)| a != b) {
                        r.push(name, format!("generator relation of order {n} fails"));
                    }
                }
            }
        }
        if !r.is_ok() {
            return r;
        }
        for (i, l) in self.left.iter().enumerate() {
            for (j, g) in self.right.iter().enumerate() {
                for b in 0..self.size {
                    if g[l[b]] != l[g[b]] {
                        r.push(
                            format!("element {b}"),
                            format!(
                                "left {} and right {} do not commute",
                                self.left_group.factor(i).name,
                                self.right_group.factor(j).name
                            ),
                        );
                    }
                }
            }
        }
        r
    }

    /// Swaps sides: `g . b~ . h = (h^-1 b g^-1)~`.
    pub fn contragredient(&self) -> TableBiset {
        TableBiset {
            left_group: self.right_group.clone(),
            right_group: self.left_group.clone(),
            size: self.size,
            left: self.right.iter().map(|p| inverse(p)).collect(),
            right: self.left.iter().map(|p| inverse(p)).collect(),
        }
    }

    /// Wreath form, available when the left action is free. Only trivial
    /// and finite cyclic left groups are handled.
    pub fn to_wreath(&self) -> Result<WreathBiset, BisetError> {
        let lg = &self.left_group;
        let (gen, order) = match lg.cyclic_factor() {
            Some(None) => (None, 1u64),
            Some(Some(i)) => match lg.order_of_factor(i) {
                Order::Finite(n) => (Some(i), n),
                Order::Infinite => {
                    return Err(BisetError::Unsupported("infinite left group on a finite biset".into()))
                }
            },
            None => return Err(BisetError::Unsupported(format!("left group {lg} is not cyclic"))),
        };
        // for each element: (basis index, left word reaching it from its basis element)
        let mut pos: Vec<Option<(usize, Word)>> = vec![None; self.size];
        let mut basis = Vec::new();
        for b in 0..self.size {
            if pos[b].is_some() {
                continue;
            }
            let s = basis.len();
            basis.push(b);
            pos[b] = Some((s, Word::identity()));
            let mut q = VecDeque::from([b]);
            let mut count = 1u64;
            while let Some(x) = q.pop_front() {
                if let Some(i) = gen {
                    let y = self.left[i][x];
                    if pos[y].is_none() {
                        let h = lg.mul(&lg.gen(i), &pos[x].as_ref().unwrap().1);
                        pos[y] = Some((s, h));
                        count += 1;
                        q.push_back(y);
                    }
                }
            }
            if count != order {
                return Err(BisetError::Unsupported(format!("left action is not free at element {b}")));
            }
        }
        let pos: Vec<(usize, Word)> = pos.into_iter().map(Option::unwrap).collect();
        let gens = self
            .right
            .iter()
            .map(|g| {
                let (dec, perm) = basis
                    .iter()
                    .map(|&b| {
                        let (s, h) = &pos[g[b]];
                        (h.clone(), *s)
                    })
                    .unzip();
                DecPerm { dec, perm }
            })
            .collect();
        WreathBiset::new(lg.clone(), self.right_group.clone(), basis.len(), gens)
    }
}
