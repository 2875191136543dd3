use crate::error::GraphError;

/// A graph in the sense of objects with an involution `reverse` and a
/// retraction `origin` onto the vertices. Each geometric edge is stored as
/// a positive edge `e` and its reverse `e~`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    names: Vec<String>,
    reverse: Vec<usize>,
    origin: Vec<usize>,
    positive: Vec<bool>,
}

pub fn reverse_name(name: &str) -> String {
    match name.strip_suffix('~') {
        Some(base) => base.to_string(),
        None => format!("{name}~"),
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn check_fresh(&self, name: &str) -> Result<(), GraphError> {
        if name.is_empty() || name.ends_with('~') || self.index_of(name).is_some() {
            return Err(GraphError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        self.check_fresh(name)?;
        let i = self.names.len();
        self.names.push(name.to_string());
        self.reverse.push(i);
        self.origin.push(i);
        self.positive.push(true);
        Ok(i)
    }

    /// Adds `name: from -> to` and its reverse; returns the positive edge.
    pub fn add_edge(&mut self, name: &str, from: usize, to: usize) -> Result<usize, GraphError> {
        self.check_fresh(name)?;
        let rname = reverse_name(name);
        if self.index_of(&rname).is_some() {
            return Err(GraphError::DuplicateName(rname));
        }
        for v in [from, to] {
            if !self.is_vertex(v) {
                return Err(GraphError::NotVertex(self.name(v).to_string()));
            }
        }
        let e = self.names.len();
        self.names.push(name.to_string());
        self.names.push(rname);
        self.reverse.push(e + 1);
        self.reverse.push(e);
        self.origin.push(from);
        self.origin.push(to);
        self.positive.push(true);
        self.positive.push(false);
        Ok(e)
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn lookup(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name).ok_or_else(|| GraphError::UnknownObject(name.to_string()))
    }

    pub fn reverse(&self, x: usize) -> usize {
        self.reverse[x]
    }

    pub fn origin(&self, x: usize) -> usize {
        self.origin[x]
    }

    pub fn terminus(&self, x: usize) -> usize {
        self.origin[self.reverse[x]]
    }

    pub fn is_vertex(&self, x: usize) -> bool {
        x < self.len() && self.origin[x] == x
    }

    pub fn is_edge(&self, x: usize) -> bool {
        x < self.len() && self.origin[x] != x
    }

    pub fn is_positive(&self, x: usize) -> bool {
        self.positive[x]
    }

    /// The positive representative of a geometric edge (identity on vertices).
    pub fn positive_of(&self, x: usize) -> usize {
        if self.positive[x] {
            x
        } else {
            self.reverse[x]
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.is_vertex(x))
    }

    /// All oriented edges.
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.is_edge(x))
    }

    pub fn positive_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.is_edge(x) && self.positive[x])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count()
    }

    pub fn geometric_edge_count(&self) -> usize {
        self.positive_edges().count()
    }

    /// Oriented edges leaving `v`, ordered by the name of their geometric edge
    /// and then positive before negative.
    pub fn star(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.edges().filter(|&e| self.origin[e] == v).collect();
        out.sort_by(|&a, &b| {
            let ka = (self.name(self.positive_of(a)), !self.positive[a]);
            let kb = (self.name(self.positive_of(b)), !self.positive[b]);
            ka.cmp(&kb)
        });
        out
    }

    /// Checks `reverse` is an involution, `origin` lands in vertices, and
    /// `x = origin(x)` iff `x = reverse(x)`.
    pub fn validate(&self) -> Result<(), GraphError> {
        for x in 0..self.len() {
            let r = self.reverse[x];
            if self.reverse[r] != x {
                return Err(GraphError::Morphism(format!("reverse is not an involution at `{}`", self.name(x))));
            }
            let o = self.origin[x];
            if self.origin[o] != o {
                return Err(GraphError::NotVertex(self.name(o).to_string()));
            }
            if (o == x) != (r == x) {
                return Err(GraphError::Morphism(format!("`{}` violates x = x^- iff x = reverse(x)", self.name(x))));
            }
        }
        Ok(())
    }
}
