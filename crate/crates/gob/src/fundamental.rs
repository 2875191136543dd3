use bisetkit_bisets::{DecPerm, Elem, WreathBiset};
use bisetkit_graphs::{PathWord, Pi1, SpanningTree};

use crate::error::GobError;
use crate::fibrant::FibrantTable;
use crate::gob::GraphOfBisets;

/// A basis element `gamma . s` of the fundamental biset, `gamma` the tree
/// path from the left base vertex to `lambda(vertex)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub vertex: usize,
    pub s: usize,
    pub path: PathWord,
}

#[derive(Clone, Debug)]
pub struct FundamentalBiset {
    pub biset: WreathBiset,
    pub basis: Vec<BasisEntry>,
    pub left: Pi1,
    pub right: Pi1,
    /// Longest left path accumulated while lifting a generator.
    pub max_lift_len: usize,
}

impl GraphOfBisets {
    /// Default base points: the first vertex on the right, and the vertex
    /// of the same name on the left (else the first left vertex).
    pub fn default_basepoints(&self) -> Option<(usize, usize)> {
        let star = self.right.graph.vertices().next()?;
        let name = self.right.graph.name(star);
        let dagger = match self.left.graph.index_of(name) {
            Some(v) if self.left.graph.is_vertex(v) => v,
            _ => self.left.graph.vertices().next()?,
        };
        Some((dagger, star))
    }

    /// Lifts a path of the right graph starting at `rho(z)` from the basis
    /// element `s` of `B_z`. Returns the accumulated left path, which starts
    /// at `lambda(z)`, and the final position.
    pub fn lift_path(
        &self,
        wr: &[WreathBiset],
        table: &FibrantTable,
        z: usize,
        s: usize,
        p: &PathWord,
    ) -> Result<(PathWord, usize, usize), GobError> {
        let c = &self.carrier;
        let (mut z, mut s) = (z, s);
        let mut acc = PathWord::trivial(self.lambda.apply(z));
        for (i, w) in p.groups.iter().enumerate() {
            let x = wr[z].act(&Elem::basis(s), w);
            acc.push_group(&self.left, &x.h);
            s = x.s;
            let Some(&f) = p.edges.get(i) else { break };
            let lift = table.lift(z, f, s).ok_or_else(|| {
                GobError::NotFibrant {
                    vertex: c.name(z).to_string(),
                    edge: self.right.graph.name(f).to_string(),
                    reason: "no entry in the fibrant table".into(),
                }
            })?;
            acc.push_group(&self.left, &lift.g);
            let le = self.lambda.apply(lift.edge);
            if self.left.graph.is_edge(le) {
                acc.push_edge(le);
            }
            let plus = self.plus_of(wr, lift.edge, &Elem::basis(lift.t))?;
            z = c.terminus(lift.edge);
            acc.push_group(&self.left, &plus.h);
            s = plus.s;
        }
        Ok((acc, z, s))
    }

    /// The fundamental biset at `dagger` (left) and `star` (right) as a
    /// wreath recursion over the two fundamental group presentations.
    pub fn fundamental_biset(&self, dagger: usize, star: usize, table: &FibrantTable) -> Result<FundamentalBiset, GobError> {
        self.fundamental_biset_with_trees(dagger, star, table, None, None)
    }

    /// As [`GraphOfBisets::fundamental_biset`], with given spanning trees
    /// (breadth-first trees otherwise).
    pub fn fundamental_biset_with_trees(
        &self,
        dagger: usize,
        star: usize,
        table: &FibrantTable,
        left_tree: Option<SpanningTree>,
        right_tree: Option<SpanningTree>,
    ) -> Result<FundamentalBiset, GobError> {
        let c = &self.carrier;
        for v in c.vertices() {
            if !self.left.graph.is_vertex(self.lambda.apply(v)) {
                return Err(GobError::Unsupported(format!(
                    "lambda sends vertex `{}` into an edge; subdivide first",
                    c.name(v)
                )));
            }
        }
        let left = self.left.pi1_presentation(dagger, left_tree)?;
        let right = self.right.pi1_presentation(star, right_tree)?;
        let wr = self.wreaths()?;
        let mut basis = Vec::new();
        let mut index = vec![Vec::new(); c.len()];
        for z in self.fiber(star) {
            let path = left.tree.path_to(&self.left, self.lambda.apply(z));
            for s in 0..wr[z].degree {
                index[z].push(basis.len());
                basis.push(BasisEntry { vertex: z, s, path: path.clone() });
            }
        }
        let d = basis.len();
        if d == 0 {
            return Err(GobError::Invalid(format!(
                "no carrier vertex lies over `{}`",
                self.right.graph.name(star)
            )));
        }
        let mut gens = Vec::with_capacity(right.loops.len());
        let mut max_lift_len = 0;
        for l in &right.loops {
            let mut dec = Vec::with_capacity(d);
            let mut perm = Vec::with_capacity(d);
            for b in &basis {
                let (p, z, s) = self.lift_path(&wr, table, b.vertex, b.s, l)?;
                max_lift_len = max_lift_len.max(p.len());
                let full = b.path.concat(&self.left, &p)?;
                let back = &basis[index[z][s]].path;
                let lp = full.concat(&self.left, &back.inverse(&self.left))?;
                let lp = self.left.reduce_path(&lp)?;
                dec.push(left.loop_to_word(&self.left, &lp)?);
                perm.push(index[z][s]);
            }
            gens.push(DecPerm::new(dec, perm)?);
        }
        let biset = WreathBiset::new(left.group.clone(), right.group.clone(), d, gens)?;
        let expected = self.degree_over(star)?;
        assert_eq!(biset.degree, expected, "fundamental biset degree differs from the fiber degree");
        Ok(FundamentalBiset { biset, basis, left, right, max_lift_len })
    }
}
