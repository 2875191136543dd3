use crate::error::GraphError;
use crate::graph::Graph;
use crate::ops::GraphSubdivision;

/// A map on objects commuting with reversal. Edges may be sent to
/// vertices, and vertices into the interior of edges; the morphism is
/// simplicial when it sends vertices to vertices and edges to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub map: Vec<usize>,
}

impl GraphMorphism {
    pub fn identity(g: &Graph) -> Self {
        GraphMorphism { map: (0..g.len()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn check(&self, src: &Graph, tgt: &Graph) -> Result<(), GraphError> {
        if self.map.len() != src.len() {
            return Err(GraphError::Morphism("map has the wrong length".into()));
        }
        for x in 0..src.len() {
            let y = self.map[x];
            if y >= tgt.len() {
                return Err(GraphError::Morphism(format!("`{}` maps outside the target", src.name(x))));
            }
            // a vertex may sit inside an edge of either orientation
            let inside = src.is_vertex(x) && tgt.is_edge(y);
            if !inside && self.map[src.reverse(x)] != tgt.reverse(y) {
                return Err(GraphError::Morphism(format!("`{}`: reversal not preserved", src.name(x))));
            }
            if src.is_edge(x) {
                let o = self.map[src.origin(x)];
                let ok = if tgt.is_edge(y) { o == tgt.origin(y) || o == y || o == tgt.reverse(y) } else { o == y };
                if !ok {
                    return Err(GraphError::Morphism(format!(
                        "`{}`: origin maps to `{}`, not to an end of `{}`",
                        src.name(x),
                        tgt.name(o),
                        tgt.name(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_simplicial(&self, src: &Graph, tgt: &Graph) -> bool {
        (0..src.len()).all(|x| src.is_vertex(x) == tgt.is_vertex(self.map[x]))
            && src.edges().all(|x| self.map[src.origin(x)] == tgt.origin(self.map[x]))
    }

    pub fn is_isomorphism(&self, src: &Graph, tgt: &Graph) -> bool {
        if src.len() != tgt.len() || !self.is_simplicial(src, tgt) {
            return false;
        }
        let mut seen = vec![false; tgt.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn compose(&self, then: &GraphMorphism) -> GraphMorphism {
        GraphMorphism { map: self.map.iter().map(|&y| then.map[y]).collect() }
    }

    /// The induced morphism between barycentric subdivisions; simplicial
    /// whenever the subdivided images are.
    pub fn subdivide(
        &self,
        src: &Graph,
        src_sub: &GraphSubdivision,
        tgt: &Graph,
        tgt_sub: &GraphSubdivision,
    ) -> Result<GraphMorphism, GraphError> {
        let point = |y: usize| -> usize {
            if tgt.is_vertex(y) {
                tgt_sub.vertex_map[y].unwrap()
            } else {
                tgt_sub.mid(tgt, y).expect("target is fully subdivided")
            }
        };
        let sg = &src_sub.graph;
        let tg = &tgt_sub.graph;
        let mut map = vec![usize::MAX; sg.len()];
        for v in src.vertices() {
            map[src_sub.vertex_map[v].unwrap()] = point(self.map[v]);
        }
        for e in src.positive_edges() {
            let (m, h0, h1) = src_sub.halves[e].expect("source is fully subdivided");
            let img = self.map[e];
            let mid_img = point(img);
            map[m] = mid_img;
            for (half, plus_side) in [(h0, false), (h1, true)] {
                let end = if plus_side { src.terminus(e) } else { src.origin(e) };
                let a = point(self.map[end]);
                let y = if a == mid_img {
                    a
                } else {
                    if tgt.is_vertex(img) {
                        return Err(GraphError::Morphism(format!(
                            "`{}` collapses to a vertex but its ends do not",
                            src.name(e)
                        )));
                    }
                    let eps = tgt.positive_of(img);
                    let (_, k0, k1) = tgt_sub.halves[eps].unwrap();
                    let va = tgt_sub.vertex_map[tgt.origin(eps)].unwrap();
                    let vb = tgt_sub.vertex_map[tgt.terminus(eps)].unwrap();
                    let forward = img == eps;
                    // candidates: a half joining `a` to the midpoint in the right direction
                    let cands = if !plus_side {
                        // from `a` into the midpoint
                        [(k0, va), (tg.reverse(k1), vb)]
                    } else {
                        // from the midpoint to `a`
                        [(k1, vb), (tg.reverse(k0), va)]
                    };
                    let ordered = if forward { cands } else { [cands[1], cands[0]] };
                    ordered
                        .iter()
                        .find(|c| c.1 == a)
                        .map(|c| c.0)
                        .ok_or_else(|| {
                            GraphError::Morphism(format!("`{}` does not map onto an edge at its ends", src.name(e)))
                        })?
                };
                map[half] = y;
                map[sg.reverse(half)] = if tg.is_vertex(y) { y } else { tg.reverse(y) };
            }
        }
        Ok(GraphMorphism { map })
    }
}
