use bisetkit_algebra::ConjClass;
use num_rational::Ratio;

use crate::wreath::WreathBiset;

/// Matrix of the Thurston endomorphism on a chosen list of classes.
/// `entries[k][g]` sums `1/d_j` over lift terms of class `g` landing in
/// class `k`; terms outside the list go to `outside`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThurstonMatrix {
    pub classes: Vec<ConjClass>,
    pub entries: Vec<Vec<Ratio<i64>>>,
    pub outside: Vec<(usize, ConjClass, Ratio<i64>)>,
}

impl WreathBiset {
    pub fn thurston_endomorphism(&self, classes: &[ConjClass]) -> ThurstonMatrix {
        let n = classes.len();
        let mut entries = vec![vec![Ratio::from_integer(0); n]; n];
        let mut outside: Vec<(usize, ConjClass, Ratio<i64>)> = Vec::new();
        for (g, c) in classes.iter().enumerate() {
            for (d, k) in self.lift_conjugacy(c) {
                let w = Ratio::new(1, d as i64);
                match classes.iter().position(|x| *x == k) {
                    Some(row) => entries[row][g] += w,
                    None => match outside.iter_mut().find(|(col, cls, _)| *col == g && *cls == k) {
                        Some(slot) => slot.2 += w,
                        None => outside.push((g, k, w)),
                    },
                }
            }
        }
        ThurstonMatrix { classes: classes.to_vec(), entries, outside }
    }
}
