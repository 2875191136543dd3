use std::collections::HashMap;

use bisetkit_bisets::{Elem, WreathBiset};
use bisetkit_graphs::{Graph, GraphMorphism};

use crate::error::GobError;
use crate::gob::{GraphOfBisets, ObjectBiset};

impl GraphOfBisets {
    /// The product `B (x) C` over the common middle graph of groups. The
    /// carrier is the fibre product of `rho_B` and `lambda_C`, which must
    /// both send vertices to vertices.
    pub fn product(&self, other: &GraphOfBisets) -> Result<GraphOfBisets, GobError> {
        if self.right != other.left {
            return Err(GobError::Mismatch("right graph of the first factor differs from left graph of the second".into()));
        }
        let (bg, cg) = (&self.carrier, &other.carrier);
        let mid = &self.right.graph;
        for (g, m, which) in [(bg, &self.rho, "rho"), (cg, &other.lambda, "lambda")] {
            if let Some(v) = g.vertices().find(|&v| mid.is_edge(m.apply(v))) {
                return Err(GobError::Unsupported(format!("{which} sends vertex `{}` into an edge", g.name(v))));
            }
        }
        let mut carrier = Graph::new();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = Vec::new();
        for b in bg.vertices() {
            for c in cg.vertices() {
                if self.rho.apply(b) == other.lambda.apply(c) {
                    let v = carrier.add_vertex(&format!("({},{})", bg.name(b), cg.name(c)))?;
                    index.insert((b, c), v);
                    pairs.push((b, c));
                }
            }
        }
        for b in 0..bg.len() {
            for c in 0..cg.len() {
                if bg.is_vertex(b) && cg.is_vertex(c) {
                    continue;
                }
                let x = self.rho.apply(b);
                if x != other.lambda.apply(c) {
                    continue;
                }
                let positive = if bg.is_edge(b) { bg.is_positive(b) } else { cg.is_positive(c) };
                if !positive {
                    continue;
                }
                if bg.is_edge(b) && cg.is_edge(c) && mid.is_vertex(x) {
                    return Err(GobError::Unsupported(format!(
                        "edges `{}` and `{}` both collapse onto `{}`",
                        bg.name(b),
                        cg.name(c),
                        mid.name(x)
                    )));
                }
                let from = index[&(bg.origin(b), cg.origin(c))];
                let to = index[&(bg.terminus(b), cg.terminus(c))];
                let e = carrier.add_edge(&format!("({},{})", bg.name(b), cg.name(c)), from, to)?;
                index.insert((b, c), e);
                index.insert((bg.reverse(b), cg.reverse(c)), e + 1);
                pairs.push((b, c));
                pairs.push((bg.reverse(b), cg.reverse(c)));
            }
        }
        // pairs are in object order
        let n = carrier.len();
        let mut by_obj = vec![(0, 0); n];
        for &(b, c) in &pairs {
            by_obj[index[&(b, c)]] = (b, c);
        }
        let wb = self.wreaths()?;
        let wc = other.wreaths()?;
        let mut bisets = Vec::with_capacity(n);
        let mut tensors: Vec<WreathBiset> = Vec::with_capacity(n);
        for &(b, c) in &by_obj {
            let t = wb[b].tensor(&wc[c])?;
            bisets.push(ObjectBiset::Wreath(t.clone()));
            tensors.push(t);
        }
        let lambda = GraphMorphism { map: by_obj.iter().map(|&(b, _)| self.lambda.apply(b)).collect() };
        let rho = GraphMorphism { map: by_obj.iter().map(|&(_, c)| other.rho.apply(c)).collect() };
        let mut out = GraphOfBisets {
            carrier,
            left: self.left.clone(),
            right: other.right.clone(),
            lambda,
            rho,
            bisets,
            minus: vec![Vec::new(); n],
            reverse: vec![Vec::new(); n],
        };
        for z in 0..n {
            let (b, c) = by_obj[z];
            let dc = wc[c].degree;
            for which in [false, true] {
                let (tb, tc, mb, mc) = if which {
                    (bg.reverse(b), cg.reverse(c), self.reverse_congruence(b)?, other.reverse_congruence(c)?)
                } else {
                    (bg.origin(b), cg.origin(c), self.minus_congruence(b)?, other.minus_congruence(c)?)
                };
                let dct = wc[tc].degree;
                let left = &wb[tb].left;
                let imgs = (0..tensors[z].degree)
                    .map(|i| {
                        let (s, t) = (i / dc, i % dc);
                        let sb = mb.apply(&wb[tb], &Elem::basis(s));
                        let tcm = mc.apply(&wc[tc], &Elem::basis(t));
                        let moved = wb[tb].act(&Elem::basis(sb.s), &tcm.h);
                        Elem { h: left.mul(&sb.h, &moved.h), s: moved.s * dct + tcm.s }
                    })
                    .collect();
                if which {
                    out.reverse[z] = imgs;
                } else {
                    out.minus[z] = imgs;
                }
            }
        }
        Ok(out)
    }
}
