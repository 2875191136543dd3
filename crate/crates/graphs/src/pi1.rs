use std::collections::{BTreeSet, VecDeque};

use bisetkit_algebra::{CyclicFactor, FpGroup, Order, Word};

use crate::error::GraphError;
use crate::gog::GraphOfGroups;
use crate::path::PathWord;

/// A spanning tree, recorded as the oriented edge from the parent into
/// each vertex (`None` at the base).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub base: usize,
    pub parent_edge: Vec<Option<usize>>,
}

impl SpanningTree {
    /// Breadth-first from `base`, trying edges in name order.
    pub fn bfs(gog: &GraphOfGroups, base: usize) -> Result<Self, GraphError> {
        let g = &gog.graph;
        if !g.is_vertex(base) {
            return Err(GraphError::NotVertex(g.name(base).to_string()));
        }
        let mut parent_edge = vec![None; g.len()];
        let mut seen = vec![false; g.len()];
        seen[base] = true;
        let mut q = VecDeque::from([base]);
        while let Some(v) = q.pop_front() {
            for e in g.star(v) {
                let w = g.terminus(e);
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = Some(e);
                    q.push_back(w);
                }
            }
        }
        if let Some(v) = g.vertices().find(|&v| !seen[v]) {
            return Err(GraphError::Disconnected(g.name(v).to_string()));
        }
        Ok(SpanningTree { base, parent_edge })
    }

    /// A tree given by its geometric edges (by any orientation).
    pub fn from_edges(gog: &GraphOfGroups, base: usize, edges: &[usize]) -> Result<Self, GraphError> {
        let g = &gog.graph;
        let allowed: BTreeSet<usize> = edges.iter().map(|&e| g.positive_of(e)).collect();
        if allowed.len() + 1 != g.vertex_count() {
            return Err(GraphError::NotSpanning(format!(
                "{} edges for {} vertices",
                allowed.len(),
                g.vertex_count()
            )));
        }
        let mut parent_edge = vec![None; g.len()];
        let mut seen = vec![false; g.len()];
        seen[base] = true;
        let mut q = VecDeque::from([base]);
        while let Some(v) = q.pop_front() {
            for e in g.star(v) {
                if !allowed.contains(&g.positive_of(e)) {
                    continue;
                }
                let w = g.terminus(e);
                if seen[w] {
                    if parent_edge[v].map(|p| g.reverse(p)) != Some(e) {
                        return Err(GraphError::NotSpanning("tree edges contain a cycle".into()));
                    }
                    continue;
                }
                seen[w] = true;
                parent_edge[w] = Some(e);
                q.push_back(w);
            }
        }
        if let Some(v) = g.vertices().find(|&v| !seen[v]) {
            return Err(GraphError::NotSpanning(format!("`{}` not reached", g.name(v))));
        }
        Ok(SpanningTree { base, parent_edge })
    }

    pub fn contains(&self, gog: &GraphOfGroups, e: usize) -> bool {
        let g = &gog.graph;
        let w = g.terminus(e);
        let v = g.origin(e);
        self.parent_edge[w] == Some(e) || self.parent_edge[v] == Some(g.reverse(e))
    }

    /// Positive tree edges, in index order.
    pub fn edges(&self, gog: &GraphOfGroups) -> Vec<usize> {
        let mut v: Vec<usize> = self.parent_edge.iter().flatten().map(|&e| gog.graph.positive_of(e)).collect();
        v.sort_unstable();
        v
    }

    /// The tree path from the base to `v`.
    pub fn path_to(&self, gog: &GraphOfGroups, v: usize) -> PathWord {
        let g = &gog.graph;
        let mut edges = Vec::new();
        let mut at = v;
        while let Some(e) = self.parent_edge[at] {
            edges.push(e);
            at = g.origin(e);
        }
        edges.reverse();
        let groups = vec![Word::identity(); edges.len() + 1];
        PathWord { start: self.base, groups, edges }
    }
}

/// Where a factor of the presentation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1Source {
    Vertex { vertex: usize, factor: usize },
    Stable { edge: usize },
}

/// Presentation of the fundamental group at a base vertex: a free product
/// of the nontrivial vertex factors and one infinite cyclic stable letter
/// per non-tree geometric edge, with relators when edge groups are
/// nontrivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1 {
    pub group: FpGroup,
    pub relators: Vec<(Word, Word)>,
    pub sources: Vec<Pi1Source>,
    /// Each generator as a loop at the base.
    pub loops: Vec<PathWord>,
    pub tree: SpanningTree,
    vertex_factor: Vec<Vec<Option<usize>>>,
    stable_factor: Vec<Option<usize>>,
}

impl Pi1 {
    /// Image of a loop at the base in the free product of vertex factors
    /// and stable letters.
    pub fn loop_to_word(&self, gog: &GraphOfGroups, p: &PathWord) -> Result<Word, GraphError> {
        p.check(gog)?;
        if p.start != self.tree.base || p.end(gog) != self.tree.base {
            return Err(GraphError::InconsistentPath("not a loop at the base".into()));
        }
        let g = &gog.graph;
        let mut raw = Vec::new();
        let mut at = p.start;
        for (i, w) in p.groups.iter().enumerate() {
            for &(f, e) in w.syllables() {
                if let Some(k) = self.vertex_factor[at][f] {
                    raw.push((k, e));
                }
            }
            if let Some(&x) = p.edges.get(i) {
                if !self.tree.contains(gog, x) {
                    let pos = g.positive_of(x);
                    let k = self.stable_factor[pos].expect("non-tree edge has a stable letter");
                    raw.push((k, if x == pos { 1 } else { -1 }));
                }
                at = g.terminus(x);
            }
        }
        Ok(self.group.normalize(&raw)?)
    }

    /// Loop at the base represented by a word in the presentation.
    pub fn word_to_loop(&self, gog: &GraphOfGroups, w: &Word) -> PathWord {
        let mut out = PathWord::trivial(self.tree.base);
        for &(f, e) in w.syllables() {
            let l = if e > 0 { self.loops[f].clone() } else { self.loops[f].inverse(gog) };
            for _ in 0..e.unsigned_abs() {
                out = out.concat(gog, &l).expect("loops compose at the base");
            }
        }
        out
    }

    pub fn vertex_factor(&self, v: usize, f: usize) -> Option<usize> {
        self.vertex_factor[v][f]
    }

    pub fn stable_factor(&self, e: usize) -> Option<usize> {
        self.stable_factor[e]
    }
}

impl GraphOfGroups {
    pub fn pi1_presentation(&self, base: usize, tree: Option<SpanningTree>) -> Result<Pi1, GraphError> {
        let g = &self.graph;
        let tree = match tree {
            Some(t) => t,
            None => SpanningTree::bfs(self, base)?,
        };
        if tree.base != base {
            return Err(GraphError::NotSpanning("tree is rooted elsewhere".into()));
        }
        let mut all_names: Vec<&str> = Vec::new();
        for v in g.vertices() {
            for f in self.groups[v].factors() {
                if !f.order.is_trivial() {
                    all_names.push(&f.name);
                }
            }
        }
        let mut factors = Vec::new();
        let mut sources = Vec::new();
        let mut loops = Vec::new();
        let mut vertex_factor = vec![Vec::new(); g.len()];
        for v in g.vertices() {
            let gamma = tree.path_to(self, v);
            vertex_factor[v] = vec![None; self.groups[v].rank()];
            for (i, f) in self.groups[v].factors().iter().enumerate() {
                if f.order.is_trivial() {
                    continue;
                }
                let unique = all_names.iter().filter(|n| **n == f.name).count() == 1;
                let name = if unique { f.name.clone() } else { format!("{}.{}", g.name(v), f.name) };
                vertex_factor[v][i] = Some(factors.len());
                factors.push(CyclicFactor::new(name, f.order));
                sources.push(Pi1Source::Vertex { vertex: v, factor: i });
                let mut l = gamma.clone();
                l.push_group(self, &self.groups[v].gen(i));
                loops.push(l.concat(self, &gamma.inverse(self))?);
            }
        }
        let mut stable_factor = vec![None; g.len()];
        for e in g.positive_edges() {
            if tree.contains(self, e) {
                continue;
            }
            let mut name = self.stable[e].clone();
            while factors.iter().any(|f: &CyclicFactor| f.name == name) {
                name.push('\'');
            }
            stable_factor[e] = Some(factors.len());
            factors.push(CyclicFactor::new(name, Order::Infinite));
            sources.push(Pi1Source::Stable { edge: e });
            let mut l = tree.path_to(self, g.origin(e));
            l.push_edge(e);
            loops.push(l.concat(self, &tree.path_to(self, g.terminus(e)).inverse(self))?);
        }
        let group = FpGroup::new(factors)?;
        let mut pi = Pi1 { group, relators: Vec::new(), sources, loops, tree, vertex_factor, stable_factor };
        let mut relators = Vec::new();
        for e in g.positive_edges() {
            let Some(um) = self.edge_generator_image(e) else { continue };
            let up = self.edge_generator_image(g.reverse(e)).expect("reverse carries the same group");
            let (v, w) = (g.origin(e), g.terminus(e));
            let minus = map_vertex_word(&pi, v, &um);
            let plus = map_vertex_word(&pi, w, &up);
            match pi.stable_factor[e] {
                None => relators.push((minus, plus)),
                Some(k) => {
                    let s = pi.group.gen(k);
                    relators.push((pi.group.conj(&plus, &s), minus));
                }
            }
        }
        pi.relators = relators;
        Ok(pi)
    }
}

fn map_vertex_word(pi: &Pi1, v: usize, w: &Word) -> Word {
    let raw: Vec<_> = w
        .syllables()
        .iter()
        .filter_map(|&(f, e)| pi.vertex_factor[v][f].map(|k| (k, e)))
        .collect();
    pi.group.normalize(&raw).expect("indices come from the presentation")
}
