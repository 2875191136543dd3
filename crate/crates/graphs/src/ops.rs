use bisetkit_algebra::{FpGroup, Hom, Word};

use crate::error::GraphError;
use crate::gog::GraphOfGroups;
use crate::graph::Graph;
use crate::path::PathWord;
use crate::pi1::SpanningTree;

/// Which half of which old edge a new edge is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Half {
    /// Old positive edge.
    pub edge: usize,
    /// `false` for the half at `e^-`, `true` for the half at `e^+`.
    pub plus_side: bool,
    /// Oriented towards the midpoint.
    pub into_mid: bool,
}

/// A graph with some geometric edges split at a new midpoint `[e]` into
/// `e.0: e^- -> [e]` and `e.1: [e] -> e^+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSubdivision {
    pub graph: Graph,
    /// Old vertex to new vertex.
    pub vertex_map: Vec<Option<usize>>,
    /// Old positive edge to `(mid, e.0, e.1)`, or the copied edge when not split.
    pub halves: Vec<Option<(usize, usize, usize)>>,
    pub copied: Vec<Option<usize>>,
    /// Per new object: the half it represents.
    pub half_info: Vec<Option<Half>>,
    /// Per new object: the old object it comes from (midpoints and halves
    /// map to the old positive edge).
    pub origin_object: Vec<usize>,
}

impl Graph {
    pub fn subdivide(&self, split: &[usize]) -> Result<GraphSubdivision, GraphError> {
        let mut g = Graph::new();
        let n = self.len();
        let mut vertex_map = vec![None; n];
        let mut origin_object = Vec::new();
        for v in self.vertices() {
            vertex_map[v] = Some(g.add_vertex(self.name(v))?);
            origin_object.push(v);
        }
        let mut halves = vec![None; n];
        let mut copied = vec![None; n];
        let mut half_info = Vec::new();
        let split: Vec<usize> = split.iter().map(|&e| self.positive_of(e)).collect();
        for e in self.positive_edges() {
            let (u, w) = (vertex_map[self.origin(e)].unwrap(), vertex_map[self.terminus(e)].unwrap());
            let name = self.name(e);
            if split.contains(&e) {
                let m = g.add_vertex(&format!("[{name}]"))?;
                origin_object.push(e);
                let h0 = g.add_edge(&format!("{name}.0"), u, m)?;
                origin_object.extend([e, e]);
                let h1 = g.add_edge(&format!("{name}.1"), m, w)?;
                origin_object.extend([e, e]);
                halves[e] = Some((m, h0, h1));
            } else {
                let c = g.add_edge(name, u, w)?;
                origin_object.extend([e, self.reverse(e)]);
                copied[e] = Some(c);
                copied[self.reverse(e)] = Some(c + 1);
            }
        }
        half_info.resize(g.len(), None);
        for e in self.positive_edges() {
            if let Some((_, h0, h1)) = halves[e] {
                half_info[h0] = Some(Half { edge: e, plus_side: false, into_mid: true });
                half_info[g.reverse(h0)] = Some(Half { edge: e, plus_side: false, into_mid: false });
                half_info[h1] = Some(Half { edge: e, plus_side: true, into_mid: false });
                half_info[g.reverse(h1)] = Some(Half { edge: e, plus_side: true, into_mid: true });
            }
        }
        Ok(GraphSubdivision { graph: g, vertex_map, halves, copied, half_info, origin_object })
    }

    pub fn barycentric(&self) -> GraphSubdivision {
        let all: Vec<usize> = self.positive_edges().collect();
        self.subdivide(&all).expect("fresh names cannot collide")
    }
}

impl GraphSubdivision {
    /// Midpoint of an old edge (either orientation).
    pub fn mid(&self, old: &Graph, e: usize) -> Option<usize> {
        self.halves[old.positive_of(e)].map(|h| h.0)
    }

    /// New oriented edges replacing an old oriented edge.
    pub fn lift_edge(&self, old: &Graph, x: usize) -> Vec<usize> {
        let pos = old.positive_of(x);
        match self.halves[pos] {
            Some((_, h0, h1)) if x == pos => vec![h0, h1],
            Some((_, h0, h1)) => vec![self.graph.reverse(h1), self.graph.reverse(h0)],
            None => vec![self.copied[x].unwrap()],
        }
    }
}

/// A graph of groups subdivided along some edges, the midpoint carrying
/// the edge group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub gog: GraphOfGroups,
    pub graph: GraphSubdivision,
}

impl GraphOfGroups {
    /// Splits the given geometric edges.
    pub fn subdivide(&self, split: &[usize]) -> Result<Subdivision, GraphError> {
        let old = &self.graph;
        let sub = old.subdivide(split)?;
        let n = sub.graph.len();
        let mut groups = vec![FpGroup::trivial(); n];
        let mut incl = vec![Hom::new(Vec::new()); n];
        let mut stable = vec![String::new(); n];
        for x in 0..n {
            let o = sub.origin_object[x];
            stable[x] = self.stable[o].clone();
            if sub.graph.is_vertex(x) {
                groups[x] = self.groups[o].clone();
                incl[x] = Hom::identity(&groups[x]);
            } else if let Some(h) = sub.half_info[x] {
                let e = h.edge;
                groups[x] = self.groups[e].clone();
                // the end at the old vertex uses the old inclusion, the end at the midpoint is the identity
                let at_old_vertex = h.into_mid;
                incl[x] = if at_old_vertex {
                    let oriented = if h.plus_side { old.reverse(e) } else { e };
                    self.incl[oriented].clone()
                } else {
                    Hom::identity(&groups[x])
                };
            } else {
                groups[x] = self.groups[o].clone();
                incl[x] = self.incl[o].clone();
            }
        }
        let gog = GraphOfGroups { graph: sub.graph.clone(), groups, incl, stable };
        Ok(Subdivision { gog, graph: sub })
    }

    pub fn split_edge(&self, e: usize) -> Result<Subdivision, GraphError> {
        if !self.graph.is_edge(e) {
            return Err(GraphError::NotEdge(self.graph.name(e).to_string()));
        }
        self.subdivide(&[e])
    }

    pub fn barycentric_subdivision(&self) -> Subdivision {
        let all: Vec<usize> = self.graph.positive_edges().collect();
        self.subdivide(&all).expect("fresh names cannot collide")
    }

    /// Attaches a new vertex carrying the cyclic subgroup `<h>` of `G_v`
    /// through a new edge `v -> new_vertex`.
    pub fn add_edge_op(&self, v: usize, h: &Word, new_vertex: &str, new_edge: &str) -> Result<GraphOfGroups, GraphError> {
        if !self.graph.is_vertex(v) {
            return Err(GraphError::NotVertex(self.graph.name(v).to_string()));
        }
        self.groups[v].check(h)?;
        let ord = self.groups[v].element_order(h);
        let hg = FpGroup::cyclic(new_edge, ord);
        let mut out = self.clone();
        let w = out.add_vertex(new_vertex, hg.clone())?;
        out.add_edge(new_edge, v, w, hg.clone(), vec![h.clone()], vec![hg.gen(0)])?;
        Ok(out)
    }
}

impl Subdivision {
    /// The old tree extended by both halves of tree edges and the `e^-`
    /// half of every other split edge.
    pub fn lift_tree(&self, old: &GraphOfGroups, tree: &SpanningTree) -> Result<SpanningTree, GraphError> {
        let og = &old.graph;
        let mut edges = Vec::new();
        for e in og.positive_edges() {
            let in_tree = tree.contains(old, e);
            match self.graph.halves[e] {
                Some((_, h0, h1)) => {
                    edges.push(h0);
                    if in_tree {
                        edges.push(h1);
                    }
                }
                None if in_tree => edges.push(self.graph.copied[e].unwrap()),
                None => {}
            }
        }
        let base = self.graph.vertex_map[tree.base].unwrap();
        SpanningTree::from_edges(&self.gog, base, &edges)
    }

    pub fn lift_path(&self, old: &GraphOfGroups, p: &PathWord) -> PathWord {
        let vm = &self.graph.vertex_map;
        let mut out = PathWord::constant(vm[p.start].unwrap(), p.groups[0].clone());
        for (i, &x) in p.edges.iter().enumerate() {
            for e in self.graph.lift_edge(&old.graph, x) {
                out.push_edge(e);
            }
            out.push_group(&self.gog, &p.groups[i + 1]);
        }
        out
    }

    /// Projects a path between old vertices back to the old graph of
    /// groups; midpoint letters are pushed through the entering half.
    pub fn project_path(&self, old: &GraphOfGroups, p: &PathWord) -> Result<PathWord, GraphError> {
        p.check(&self.gog)?;
        let ng = &self.graph.graph;
        let inv_vertex = |v: usize| -> Result<usize, GraphError> {
            self.graph
                .vertex_map
                .iter()
                .position(|&m| m == Some(v))
                .ok_or_else(|| GraphError::InconsistentPath("path does not start and end at old vertices".into()))
        };
        let mut out = PathWord::constant(inv_vertex(p.start)?, p.groups[0].clone());
        let mut pending: Option<(Half, usize)> = None;
        for (i, &x) in p.edges.iter().enumerate() {
            let g = &p.groups[i + 1];
            match self.graph.half_info[x] {
                Some(h) if h.into_mid => {
                    // carry the midpoint letter back through the entering half
                    let pushed = self.gog.incl[x].apply(&self.gog.groups[ng.origin(x)], g);
                    out.push_group(old, &pushed);
                    pending = Some((h, x));
                }
                Some(h) => {
                    let (enter, _) = pending.take().ok_or_else(|| GraphError::InconsistentPath("path starts at a midpoint".into()))?;
                    if enter.plus_side != h.plus_side {
                        let e = h.edge;
                        out.push_edge(if enter.plus_side { old.graph.reverse(e) } else { e });
                    }
                    out.push_group(old, g);
                }
                None => {
                    let o = self.graph.origin_object[x];
                    out.push_edge(o);
                    out.push_group(old, g);
                }
            }
        }
        if pending.is_some() {
            return Err(GraphError::InconsistentPath("path ends at a midpoint".into()));
        }
        Ok(out)
    }
}
