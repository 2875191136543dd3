use std::collections::{BTreeMap, BTreeSet};

use bisetkit_algebra::{FpGroup, Hom, Order, Report};
use bisetkit_graphs::{Graph, GraphMorphism, GraphOfGroups};
use num_integer::Integer;
use num_rational::Rational64;

/// An angle in `Q/Z`, kept in `[0, 1)`.
pub type Angle = Rational64;

/// Representative of `x` in `[0, 1)`.
pub fn frac(x: Angle) -> Angle {
    x - x.floor()
}

/// An angled tree. `angle[e]` is the angle of the oriented edge `e` at its
/// origin, so every edge object carries the angle at one of its ends.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HubbardTree {
    pub tree: Graph,
    /// Indexed by object; only vertex entries are meaningful.
    pub ord: Vec<Order>,
    /// Generator names of the vertex groups.
    pub gens: Vec<String>,
    pub angle: BTreeMap<usize, Angle>,
}

impl HubbardTree {
    pub fn new() -> Self {
        HubbardTree::default()
    }

    pub fn add_vertex(&mut self, name: &str, ord: Order, gen: Option<&str>) -> Result<usize, bisetkit_graphs::GraphError> {
        let v = self.tree.add_vertex(name)?;
        self.ord.push(ord);
        self.gens.push(gen.unwrap_or(name).to_string());
        Ok(v)
    }

    pub fn add_edge(&mut self, name: &str, from: usize, to: usize) -> Result<usize, bisetkit_graphs::GraphError> {
        let e = self.tree.add_edge(name, from, to)?;
        self.ord.extend([Order::Finite(1), Order::Finite(1)]);
        self.gens.extend([String::new(), String::new()]);
        Ok(e)
    }

    /// Sets the angle of `e` at its origin.
    pub fn set_angle(&mut self, e: usize, a: Angle) {
        self.angle.insert(e, frac(a));
    }

    pub fn angle_of(&self, e: usize) -> Angle {
        self.angle.get(&e).copied().unwrap_or_default()
    }

    /// Connected, acyclic, with distinct angles in `[0, 1)` at each vertex.
    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let g = &self.tree;
        if let Err(e) = g.validate() {
            r.push("tree", e.to_string());
            return r;
        }
        if self.ord.len() != g.len() || self.gens.len() != g.len() {
            r.push("tree", "per-object data has the wrong length");
            return r;
        }
        let nv = g.vertex_count();
        if nv == 0 {
            r.push("tree", "no vertices");
            return r;
        }
        if g.geometric_edge_count() + 1 != nv {
            r.push("tree", format!("{} vertices but {} edges", nv, g.geometric_edge_count()));
        }
        let start = g.vertices().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in g.star(v) {
                if seen.insert(g.terminus(e)) {
                    stack.push(g.terminus(e));
                }
            }
        }
        if seen.len() != nv {
            r.push("tree", "not connected");
        }
        for (&e, &a) in &self.angle {
            if e >= g.len() || !g.is_edge(e) {
                r.push("angles", format!("angle attached to a non-edge object {e}"));
            } else if a < Angle::from(0) || a >= Angle::from(1) {
                r.push(g.name(e), format!("angle {a} outside [0, 1)"));
            }
        }
        for v in g.vertices() {
            let star = g.star(v);
            let mut used = BTreeMap::new();
            for e in star {
                let Some(&a) = self.angle.get(&e) else {
                    r.push(g.name(v), format!("no angle for `{}`", g.name(e)));
                    continue;
                };
                if let Some(other) = used.insert(a, e) {
                    r.push(g.name(v), format!("`{}` and `{}` share the angle {a}", g.name(other), g.name(e)));
                }
            }
        }
        r
    }

    /// Trivial edge groups, and `Z/ord(v)` on each vertex.
    pub fn gog(&self) -> GraphOfGroups {
        let mut gog = GraphOfGroups::trivial_on(self.tree.clone());
        for v in self.tree.vertices() {
            if !self.ord[v].is_trivial() {
                gog.groups[v] = FpGroup::cyclic(&self.gens[v], self.ord[v]);
                gog.incl[v] = Hom::identity(&gog.groups[v]);
            }
        }
        gog
    }
}

/// `HT <-lam- HT^1 -p-> HT` with local degrees and the embedding of the
/// base tree's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubbardBundle {
    pub base: HubbardTree,
    pub cover: HubbardTree,
    pub p: GraphMorphism,
    pub lam: GraphMorphism,
    /// Indexed by cover object; edges have degree 1.
    pub deg: Vec<usize>,
    /// Base vertex to cover vertex.
    pub embed: BTreeMap<usize, usize>,
}

/// The outcome of [`validate_bundle`].
#[derive(Clone, Debug, Default)]
pub struct BundleCheck {
    pub report: Report,
    pub degree: usize,
    /// Offsets `a_v` of the boundary maps, by cover vertex.
    pub offsets: BTreeMap<usize, Angle>,
    pub essential: Vec<bool>,
    pub critical: Vec<bool>,
}

impl BundleCheck {
    pub fn is_ok(&self) -> bool {
        self.report.is_ok()
    }

    /// Vertices whose biset gets the rotating right action.
    pub fn active(&self, z: usize) -> bool {
        self.essential[z] || self.critical[z]
    }
}

pub fn validate_bundle(b: &HubbardBundle) -> BundleCheck {
    let mut out = BundleCheck::default();
    let r = &mut out.report;
    r.extend("base ", b.base.check());
    r.extend("cover ", b.cover.check());
    if !r.is_ok() {
        return out;
    }
    let (g, h) = (&b.cover.tree, &b.base.tree);
    if let Err(e) = b.p.check(g, h) {
        r.push("p", e.to_string());
    } else if !b.p.is_simplicial(g, h) {
        r.push("p", "not simplicial");
    }
    if let Err(e) = b.lam.check(g, h) {
        r.push("lam", e.to_string());
    }
    if b.deg.len() != g.len() {
        r.push("deg", "wrong length");
    }
    if !r.is_ok() {
        return out;
    }
    for z in 0..g.len() {
        if g.is_edge(z) && b.deg[z] != 1 {
            r.push(g.name(z), "edges have degree 1");
        }
        if b.deg[z] == 0 {
            r.push(g.name(z), "degree 0");
        }
    }
    out.essential = vec![false; g.len()];
    out.critical = (0..g.len()).map(|z| g.is_vertex(z) && b.deg[z] > 1).collect();
    for v in h.vertices() {
        match b.embed.get(&v) {
            None => r.push(h.name(v), "not embedded"),
            Some(&z) if z >= g.len() || !g.is_vertex(z) => r.push(h.name(v), "embedded onto a non-vertex"),
            Some(&z) => {
                if std::mem::replace(&mut out.essential[z], true) {
                    r.push(g.name(z), "two base vertices embed here");
                }
                if b.lam.apply(z) != v {
                    r.push(g.name(z), format!("lam should send the embedded vertex to `{}`", h.name(v)));
                }
            }
        }
    }
    if !r.is_ok() {
        return out;
    }

    // total degree over vertices and edges
    let mut over = vec![0usize; h.len()];
    for z in 0..g.len() {
        over[b.p.apply(z)] += b.deg[z];
    }
    let d = over[h.vertices().next().unwrap()];
    out.degree = d;
    for (x, &n) in over.iter().enumerate() {
        if n != d {
            r.push(h.name(x), format!("covered with degree {n} instead of {d}"));
        }
    }
    let excess: usize = g.vertices().map(|v| b.deg[v] - 1).sum();
    if excess + 1 != d {
        r.push("degree", format!("local degrees add up to {} critical points, degree {d} needs {}", excess, d - 1));
    }

    for v in g.vertices() {
        let star = g.star(v);
        let pv = b.p.apply(v);
        for f in h.star(pv) {
            let n = star.iter().filter(|&&e| b.p.apply(e) == f).count();
            if n != b.deg[v] {
                r.push(g.name(v), format!("{n} edges over `{}`, local degree is {}", h.name(f), b.deg[v]));
            }
        }
        // boundary map x -> deg x + a_v
        let dv = Angle::from(b.deg[v] as i64);
        let mut offset: Option<Angle> = None;
        for &e in &star {
            let a = frac(b.base.angle_of(b.p.apply(e)) - dv * b.cover.angle_of(e));
            match offset {
                None => offset = Some(a),
                Some(o) if o != a => {
                    r.push(g.name(v), format!("angle functoriality fails at `{}`", g.name(e)));
                }
                _ => {}
            }
        }
        out.offsets.insert(v, offset.unwrap_or_default());

        let lv = b.lam.apply(v);
        if out.essential[v] {
            for &e in &star {
                let le = b.lam.apply(e);
                if h.is_edge(le) {
                    let at = if h.origin(le) == lv { le } else { h.reverse(le) };
                    if h.origin(at) == lv && b.base.angle_of(at) != b.cover.angle_of(e) {
                        r.push(g.name(v), format!("angle of `{}` differs from its image `{}`", g.name(e), h.name(at)));
                    }
                }
            }
        } else if out.critical[v] {
            if !h.is_edge(lv) {
                r.push(g.name(v), "critical but not essential, so lam must send it into an edge");
            }
        } else {
            for &e in &star {
                if b.lam.apply(e) != lv && b.lam.apply(e) != h.reverse(lv) {
                    r.push(g.name(v), format!("lam moves `{}` off the image of the vertex", g.name(e)));
                }
            }
        }
    }

    let ord = derive_ord(b);
    for v in h.vertices() {
        if ord[v] != b.base.ord[v] {
            r.push(h.name(v), format!("ord is {} but the dynamics give {}", b.base.ord[v], ord[v]));
        }
    }
    for z in g.vertices() {
        if let Order::Finite(n) = b.base.ord[b.p.apply(z)] {
            if n % b.deg[z] as u64 != 0 {
                r.push(g.name(z), format!("local degree {} does not divide ord {n} of the image", b.deg[z]));
            }
        }
    }
    out
}

/// Orders from the dynamics `w -> p(embed w)` on base vertices: infinite on
/// cycles through a critical vertex, and otherwise the least common
/// multiple of `deg * ord` over preimages.
pub fn derive_ord(b: &HubbardBundle) -> Vec<Order> {
    let h = &b.base.tree;
    let n = h.len();
    let mut ord = vec![Order::Finite(1); n];
    let verts: Vec<usize> = h.vertices().collect();
    let f = |w: usize| b.embed.get(&w).map(|&z| (b.p.apply(z), b.deg[z]));
    for &v in &verts {
        // v is periodic when it returns to itself
        let mut x = v;
        let mut critical = false;
        for _ in 0..verts.len() {
            let Some((y, dg)) = f(x) else { break };
            critical |= dg > 1;
            x = y;
            if x == v {
                if critical {
                    ord[v] = Order::Infinite;
                }
                break;
            }
        }
    }
    for _ in 0..(verts.len() + 1) * (verts.len() + 1) {
        let mut changed = false;
        for &v in &verts {
            if ord[v] == Order::Infinite {
                continue;
            }
            let mut acc = Order::Finite(1);
            for &w in &verts {
                let Some((y, dg)) = f(w) else { continue };
                if y != v {
                    continue;
                }
                acc = match (acc, ord[w]) {
                    (Order::Finite(a), Order::Finite(o)) => Order::Finite(a.lcm(&(o * dg as u64))),
                    _ => Order::Infinite,
                };
            }
            let new = match (ord[v], acc) {
                (Order::Finite(a), Order::Finite(c)) => Order::Finite(a.lcm(&c)),
                _ => Order::Infinite,
            };
            if new != ord[v] {
                ord[v] = new;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    ord
}
