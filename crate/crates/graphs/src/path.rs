use bisetkit_algebra::{Order, Word};

use crate::error::GraphError;
use crate::gog::GraphOfGroups;

/// A decorated path `(g_0, x_1, g_1, ..., x_n, g_n)` starting at `start`;
/// `groups[i]` lies in the vertex group at the terminus of `edges[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    pub start: usize,
    pub groups: Vec<Word>,
    pub edges: Vec<usize>,
}

impl PathWord {
    pub fn constant(v: usize, g: Word) -> Self {
        PathWord { start: v, groups: vec![g], edges: Vec::new() }
    }

    pub fn trivial(v: usize) -> Self {
        PathWord::constant(v, Word::identity())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self, gog: &GraphOfGroups) -> usize {
        match self.edges.last() {
            Some(&e) => gog.graph.terminus(e),
            None => self.start,
        }
    }

    pub fn check(&self, gog: &GraphOfGroups) -> Result<(), GraphError> {
        let g = &gog.graph;
        if !g.is_vertex(self.start) {
            return Err(GraphError::InconsistentPath("start is not a vertex".into()));
        }
        if self.groups.len() != self.edges.len() + 1 {
            return Err(GraphError::InconsistentPath("need one group letter per vertex".into()));
        }
        let mut at = self.start;
        for (i, &e) in self.edges.iter().enumerate() {
            gog.groups[at].check(&self.groups[i])?;
            if !g.is_edge(e) || g.origin(e) != at {
                return Err(GraphError::InconsistentPath(format!(
                    "edge {} does not leave `{}`",
                    i + 1,
                    g.name(at)
                )));
            }
            at = g.terminus(e);
        }
        gog.groups[at].check(self.groups.last().unwrap())?;
        Ok(())
    }

    /// Appends a letter of the current end vertex group.
    pub fn push_group(&mut self, gog: &GraphOfGroups, w: &Word) {
        let v = self.end(gog);
        let last = self.groups.last_mut().unwrap();
        *last = gog.groups[v].mul(last, w);
    }

    pub fn push_edge(&mut self, e: usize) {
        self.edges.push(e);
        self.groups.push(Word::identity());
    }

    pub fn concat(&self, gog: &GraphOfGroups, other: &PathWord) -> Result<PathWord, GraphError> {
        if self.end(gog) != other.start {
            return Err(GraphError::InconsistentPath("paths do not compose".into()));
        }
        let mut out = self.clone();
        out.push_group(gog, &other.groups[0]);
        for (i, &e) in other.edges.iter().enumerate() {
            out.edges.push(e);
            out.groups.push(other.groups[i + 1].clone());
        }
        Ok(out)
    }

    pub fn inverse(&self, gog: &GraphOfGroups) -> PathWord {
        let g = &gog.graph;
        let end = self.end(gog);
        let mut groups = Vec::with_capacity(self.groups.len());
        let mut at = end;
        for i in (0..self.groups.len()).rev() {
            groups.push(gog.groups[at].inv(&self.groups[i]));
            if i > 0 {
                at = g.origin(self.edges[i - 1]);
            }
        }
        let edges = self.edges.iter().rev().map(|&e| g.reverse(e)).collect();
        PathWord { start: end, groups, edges }
    }

    pub fn fmt_with(&self, gog: &GraphOfGroups) -> String {
        let g = &gog.graph;
        let mut parts = Vec::new();
        let mut at = self.start;
        for (i, w) in self.groups.iter().enumerate() {
            if !w.is_identity() || self.edges.is_empty() {
                parts.push(gog.groups[at].fmt_word(w));
            }
            if let Some(&e) = self.edges.get(i) {
                parts.push(g.name(e).to_string());
                at = g.terminus(e);
            }
        }
        format!("[{}: {}]", g.name(self.start), parts.join(" "))
    }
}

impl GraphOfGroups {
    /// Britton reduction followed by the choice of shortlex-least coset
    /// representatives `g <u>` from left to right.
    pub fn reduce_path(&self, p: &PathWord) -> Result<PathWord, GraphError> {
        p.check(self)?;
        let g = &self.graph;
        let mut groups: Vec<Word> = vec![p.groups[0].clone()];
        let mut edges: Vec<usize> = Vec::new();
        for (i, &f) in p.edges.iter().enumerate() {
            let mut cancelled = false;
            if let Some(&e) = edges.last() {
                if f == g.reverse(e) {
                    let mid = groups.last().unwrap();
                    if let Some(k) = self.membership(f, mid)? {
                        // (a, e, incl_rev(u^k), rev e, b) -> (a incl_e(u^k) b)
                        groups.pop();
                        edges.pop();
                        let at = g.origin(e);
                        let moved = self.edge_power(e, k);
                        let top = groups.last_mut().unwrap();
                        *top = self.groups[at].mul(top, &moved);
                        cancelled = true;
                    }
                }
            }
            if !cancelled {
                edges.push(f);
                groups.push(Word::identity());
            }
            let at = match edges.last() {
                Some(&e) => g.terminus(e),
                None => p.start,
            };
            let top = groups.last_mut().unwrap();
            *top = self.groups[at].mul(top, &p.groups[i + 1]);
        }
        // coset normal form
        let mut at = p.start;
        for i in 0..edges.len() {
            let e = edges[i];
            if let Some(u) = self.edge_generator_image(e) {
                let grp = &self.groups[at];
                let (best, m) = least_coset_rep(grp, &groups[i], &u, self.edge_order(e));
                if m != 0 {
                    groups[i] = best;
                    let carried = self.edge_power(g.reverse(e), m);
                    let nxt = g.terminus(e);
                    groups[i + 1] = self.groups[nxt].mul(&carried, &groups[i + 1]);
                }
            }
            at = g.terminus(e);
        }
        Ok(PathWord { start: p.start, groups, edges })
    }

    fn edge_order(&self, e: usize) -> Order {
        match self.groups[e].cyclic_factor() {
            Some(Some(i)) => self.groups[e].order_of_factor(i),
            _ => Order::Finite(1),
        }
    }

    /// `incl_e(u^k)` in `G_{e^-}`, where `u` generates the edge group.
    pub fn edge_power(&self, e: usize, k: i64) -> Word {
        match self.edge_generator_image(e) {
            Some(img) => self.groups[self.graph.origin(e)].pow(&img, k),
            None => Word::identity(),
        }
    }

    /// `Some(k)` if `w = incl_x(u^k)` in `G_{x^-}`.
    fn membership(&self, x: usize, w: &Word) -> Result<Option<i64>, GraphError> {
        match self.edge_generator_image(x) {
            None => Ok(w.is_identity().then_some(0)),
            Some(u) => Ok(self.groups[self.graph.origin(x)].is_power_of(w, &u)?),
        }
    }

    pub fn paths_equal(&self, p: &PathWord, q: &PathWord) -> Result<bool, GraphError> {
        Ok(self.reduce_path(p)? == self.reduce_path(q)?)
    }
}

/// Shortlex-least element of `w <u>` and the exponent `m` with
/// `w = best . u^m`. The search window is justified by the linear growth
/// of cyclically reduced powers.
pub fn least_coset_rep(grp: &bisetkit_algebra::FpGroup, w: &Word, u: &Word, ord: Order) -> (Word, i64) {
    let range: Vec<i64> = match ord {
        Order::Finite(n) => (0..n as i64).collect(),
        Order::Infinite => {
            let b = (w.mass() + 2 * u.mass() + 2) as i64;
            (-b..=b).collect()
        }
    };
    let mut best = (w.clone(), 0i64);
    for m in range {
        let cand = grp.mul(w, &grp.pow(u, -m));
        if cand < best.0 || (cand == best.0 && m.abs() < best.1.abs()) {
            best = (cand, m);
        }
    }
    best
}
