use bisetkit_algebra::{FpGroup, Hom, Order, Report, Word};

use crate::error::GraphError;
use crate::graph::Graph;

/// A graph of groups whose edge groups are trivial or cyclic. `incl[x]`
/// maps `G_x` into `G_{x^-}`; it is the identity on vertices, and an edge
/// and its reverse carry the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub graph: Graph,
    pub groups: Vec<FpGroup>,
    pub incl: Vec<Hom>,
    /// Stable-letter name of each object (used for positive edges).
    pub stable: Vec<String>,
}

impl GraphOfGroups {
    pub fn new() -> Self {
        GraphOfGroups { graph: Graph::new(), groups: Vec::new(), incl: Vec::new(), stable: Vec::new() }
    }

    /// Graph of groups with every group trivial.
    pub fn trivial_on(graph: Graph) -> Self {
        let n = graph.len();
        let names = (0..n).map(|x| graph.name(graph.positive_of(x)).to_string()).collect();
        GraphOfGroups {
            graph,
            groups: vec![FpGroup::trivial(); n],
            incl: vec![Hom::new(Vec::new()); n],
            stable: names,
        }
    }

    pub fn add_vertex(&mut self, name: &str, group: FpGroup) -> Result<usize, GraphError> {
        let v = self.graph.add_vertex(name)?;
        self.incl.push(Hom::identity(&group));
        self.groups.push(group);
        self.stable.push(name.to_string());
        Ok(v)
    }

    /// Adds an edge with group `group` (trivial or cyclic) whose generator
    /// maps to `into_minus` in `G_from` and `into_plus` in `G_to`.
    pub fn add_edge(
        &mut self,
        name: &str,
        from: usize,
        to: usize,
        group: FpGroup,
        into_minus: Vec<Word>,
        into_plus: Vec<Word>,
    ) -> Result<usize, GraphError> {
        if group.cyclic_factor().is_none() {
            return Err(GraphError::EdgeGroup(format!("edge `{name}` group {group} is not cyclic")));
        }
        let e = self.graph.add_edge(name, from, to)?;
        self.groups.push(group.clone());
        self.groups.push(group);
        self.incl.push(Hom::new(into_minus));
        self.incl.push(Hom::new(into_plus));
        self.stable.push(name.to_string());
        self.stable.push(name.to_string());
        Ok(e)
    }

    pub fn group(&self, x: usize) -> &FpGroup {
        &self.groups[x]
    }

    /// `G_x -> G_{x^-}` applied to a word.
    pub fn push_minus(&self, x: usize, w: &Word) -> Word {
        let target = self.graph.origin(x);
        self.incl[x].apply(&self.groups[target], w)
    }

    /// Generator image of the edge group at `x^-`, if the edge group is
    /// nontrivial.
    pub fn edge_generator_image(&self, x: usize) -> Option<Word> {
        match self.groups[x].cyclic_factor() {
            Some(Some(i)) => Some(self.incl[x].images[i].clone()),
            _ => None,
        }
    }

    /// The structure map between related objects: the identity when `y` is
    /// `x` or its reverse, `incl_x` when `y = x^-`, `incl_{reverse x}` when
    /// `y = x^+`.
    pub fn hom_between(&self, x: usize, y: usize) -> Option<Hom> {
        let g = &self.graph;
        if x == y || y == g.reverse(x) {
            Some(Hom::identity(&self.groups[x]))
        } else if y == g.origin(x) {
            Some(self.incl[x].clone())
        } else if y == g.terminus(x) {
            Some(self.incl[g.reverse(x)].clone())
        } else {
            None
        }
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        if let Err(e) = self.graph.validate() {
            r.push("graph", e.to_string());
            return r;
        }
        let n = self.graph.len();
        if self.groups.len() != n || self.incl.len() != n || self.stable.len() != n {
            r.push("graph of groups", "per-object data has the wrong length");
            return r;
        }
        for x in 0..n {
            let name = self.graph.name(x);
            if self.graph.is_vertex(x) {
                if self.incl[x] != Hom::identity(&self.groups[x]) {
                    r.push(name, "vertex map is not the identity");
                }
                continue;
            }
            let rev = self.graph.reverse(x);
            if self.groups[x] != self.groups[rev] {
                r.push(name, "edge and reverse carry different groups");
            }
            let target = &self.groups[self.graph.origin(x)];
            if let Err(e) = self.incl[x].check(&self.groups[x], target) {
                r.push(name, e.to_string());
                continue;
            }
            match self.groups[x].cyclic_factor() {
                None => r.push(name, "edge group is not cyclic"),
                Some(None) => {}
                Some(Some(i)) => {
                    let img = &self.incl[x].images[i];
                    let ord = self.groups[x].order_of_factor(i);
                    if target.element_order(img) != ord {
                        r.push(name, format!("edge map is not injective: image has order {}", target.element_order(img)));
                    }
                    if ord == Order::Infinite && img.is_identity() {
                        r.push(name, "edge map kills the generator");
                    }
                }
            }
        }
        r
    }
}

impl Default for GraphOfGroups {
    fn default() -> Self {
        GraphOfGroups::new()
    }
}
