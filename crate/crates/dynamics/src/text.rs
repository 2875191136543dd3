//! The `.htree` format.
//!
//! ```text
//! base {
//!   vertex z0 ord inf gen a
//!   vertex zm1 ord inf gen b; edge E z0 zm1
//!   angle z0 E 0; angle zm1 E 0
//! }
//! cover { ... }
//! map p y0 -> zm1
//! map lam e1 -> E
//! deg y0 2
//! embed z0 -> y0
//! ```
//!
//! Statements end at a newline or `;`, and `#` starts a comment. `angle v e x`
//! is the angle at `v` of the edge `e`. Maps are given on one orientation of
//! each edge; `embed v -> w` also sets `lam w -> v`. Bisets on cover edges
//! always get the trivial right action, including edges at essential vertices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bisetkit_algebra::Order;
use bisetkit_graphs::{Graph, GraphMorphism};

use crate::error::DynamicsError;
use crate::tree::{Angle, HubbardBundle, HubbardTree};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Open,
    Close,
    End,
}

struct Stmt {
    line: usize,
    words: Vec<(String, usize)>,
    open: bool,
    close: bool,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> DynamicsError {
    DynamicsError::Parse { line, col, msg: msg.into() }
}

fn statements(text: &str) -> Vec<Stmt> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks: Vec<(Tok, usize)> = Vec::new();
        let mut cur = String::new();
        let mut start = 0;
        for (j, ch) in body.char_indices() {
            let special = match ch {
                '{' => Some(Tok::Open),
                '}' => Some(Tok::Close),
                ';' => Some(Tok::End),
                c if c.is_whitespace() => Some(Tok::End),
                _ => None,
            };
            match special {
                Some(t) => {
                    if !cur.is_empty() {
                        toks.push((Tok::Word(std::mem::take(&mut cur)), start + 1));
                    }
                    if !(ch.is_whitespace()) {
                        toks.push((t, j + 1));
                    }
                }
                None => {
                    if cur.is_empty() {
                        start = j;
                    }
                    cur.push(ch);
                }
            }
        }
        if !cur.is_empty() {
            toks.push((Tok::Word(cur), start + 1));
        }
        let mut words = Vec::new();
        for (t, col) in toks {
            match t {
                Tok::Word(w) => words.push((w, col)),
                Tok::End => {
                    if !words.is_empty() {
                        out.push(Stmt { line, words: std::mem::take(&mut words), open: false, close: false });
                    }
                }
                Tok::Open => out.push(Stmt { line, words: std::mem::take(&mut words), open: true, close: false }),
                Tok::Close => {
                    if !words.is_empty() {
                        out.push(Stmt { line, words: std::mem::take(&mut words), open: false, close: false });
                    }
                    out.push(Stmt { line, words: vec![], open: false, close: true });
                }
            }
        }
        if !words.is_empty() {
            out.push(Stmt { line, words, open: false, close: false });
        }
    }
    out
}

#[derive(Default)]
struct TreeDraft {
    tree: HubbardTree,
    decl: BTreeMap<usize, usize>,
}

struct MapEntry {
    line: usize,
    col: usize,
    src: String,
    tgt: String,
}

fn parse_angle(s: &str) -> Option<Angle> {
    s.parse::<Angle>().ok().or_else(|| s.parse::<i64>().ok().map(Angle::from))
}

fn section_stmt(d: &mut TreeDraft, st: &Stmt) -> Result<(), DynamicsError> {
    let w: Vec<&str> = st.words.iter().map(|x| x.0.as_str()).collect();
    let col = |i: usize| st.words.get(i).map_or(1, |x| x.1);
    let line = st.line;
    let vertex = |d: &TreeDraft, i: usize| -> Result<usize, DynamicsError> {
        match d.tree.tree.index_of(w[i]) {
            Some(v) if d.tree.tree.is_vertex(v) => Ok(v),
            _ => Err(err(line, col(i), format!("unknown vertex `{}`", w[i]))),
        }
    };
    match w[0] {
        "vertex" => {
            if w.len() < 2 {
                return Err(err(line, col(0), "expected `vertex NAME [ord ORD] [gen NAME]`"));
            }
            let mut ord = Order::Finite(1);
            let mut gen = None;
            let mut i = 2;
            while i < w.len() {
                let Some(val) = w.get(i + 1) else {
                    return Err(err(line, col(i), format!("`{}` needs a value", w[i])));
                };
                match w[i] {
                    "ord" => ord = val.parse().map_err(|_| err(line, col(i + 1), format!("bad order `{val}`")))?,
                    "gen" => gen = Some(*val),
                    other => return Err(err(line, col(i), format!("unknown vertex attribute `{other}`"))),
                }
                i += 2;
            }
            let v = d.tree.add_vertex(w[1], ord, gen).map_err(|e| err(line, col(1), e.to_string()))?;
            d.decl.insert(v, line);
        }
        "edge" => {
            if w.len() != 4 {
                return Err(err(line, col(0), "expected `edge NAME FROM TO`"));
            }
            let (a, b) = (vertex(d, 2)?, vertex(d, 3)?);
            let e = d.tree.add_edge(w[1], a, b).map_err(|e| err(line, col(1), e.to_string()))?;
            d.decl.insert(e, line);
            d.decl.insert(d.tree.tree.reverse(e), line);
        }
        "angle" => {
            if w.len() != 4 {
                return Err(err(line, col(0), "expected `angle VERTEX EDGE VALUE`"));
            }
            let v = vertex(d, 1)?;
            let g = &d.tree.tree;
            let e = match g.index_of(w[2]) {
                Some(e) if g.is_edge(e) => e,
                _ => return Err(err(line, col(2), format!("unknown edge `{}`", w[2]))),
            };
            let e = if g.origin(e) == v {
                e
            } else if g.terminus(e) == v {
                g.reverse(e)
            } else {
                return Err(err(line, col(2), format!("`{}` does not meet `{}`", w[2], w[1])));
            };
            let a = parse_angle(w[3]).ok_or_else(|| err(line, col(3), format!("bad angle `{}`", w[3])))?;
            if d.tree.angle.contains_key(&e) {
                return Err(err(line, col(1), "angle given twice"));
            }
            d.tree.set_angle(e, a);
        }
        other => return Err(err(line, col(0), format!("unknown statement `{other}` in a tree section"))),
    }
    Ok(())
}

fn resolve_map(
    src: &Graph,
    tgt: &Graph,
    entries: &[MapEntry],
    out: &mut [Option<usize>],
) -> Result<(), DynamicsError> {
    for m in entries {
        let x = src.index_of(&m.src).ok_or_else(|| err(m.line, m.col, format!("unknown cover object `{}`", m.src)))?;
        let y = tgt.index_of(&m.tgt).ok_or_else(|| err(m.line, m.col, format!("unknown base object `{}`", m.tgt)))?;
        let pairs = if src.is_vertex(x) { vec![(x, y)] } else { vec![(x, y), (src.reverse(x), tgt.reverse(y))] };
        for (a, b) in pairs {
            match out[a] {
                Some(old) if old != b => {
                    return Err(err(m.line, m.col, format!("`{}` already maps to `{}`", src.name(a), tgt.name(old))))
                }
                _ => out[a] = Some(b),
            }
        }
    }
    Ok(())
}

fn complete(
    name: &str,
    draft: &TreeDraft,
    map: Vec<Option<usize>>,
    fallback_line: usize,
) -> Result<GraphMorphism, DynamicsError> {
    let g = &draft.tree.tree;
    let mut out = Vec::with_capacity(map.len());
    for (x, y) in map.into_iter().enumerate() {
        match y {
            Some(y) => out.push(y),
            None => {
                let line = draft.decl.get(&x).copied().unwrap_or(fallback_line);
                return Err(err(line, 1, format!("`map {name}` missing for `{}`", g.name(x))));
            }
        }
    }
    Ok(GraphMorphism { map: out })
}

pub fn parse_htree(text: &str) -> Result<HubbardBundle, DynamicsError> {
    let mut base = TreeDraft::default();
    let mut cover = TreeDraft::default();
    let mut section: Option<bool> = None;
    let mut seen = [false, false];
    let mut pmaps = Vec::new();
    let mut lmaps = Vec::new();
    let mut degs = Vec::new();
    let mut embeds = Vec::new();
    let mut last_line = 1;
    for st in statements(text) {
        last_line = st.line;
        let line = st.line;
        let col = |i: usize| st.words.get(i).map_or(1, |x| x.1);
        if st.close {
            if section.take().is_none() {
                return Err(err(line, 1, "unmatched `}`"));
            }
            continue;
        }
        if st.open {
            let which = match st.words.iter().map(|x| x.0.as_str()).collect::<Vec<_>>().as_slice() {
                ["base"] => false,
                ["cover"] => true,
                _ => return Err(err(line, col(0), "expected `base {` or `cover {`")),
            };
            if section.is_some() {
                return Err(err(line, col(0), "sections do not nest"));
            }
            if std::mem::replace(&mut seen[which as usize], true) {
                return Err(err(line, col(0), "section given twice"));
            }
            section = Some(which);
            continue;
        }
        if let Some(which) = section {
            section_stmt(if which { &mut cover } else { &mut base }, &st)?;
            continue;
        }
        let w: Vec<&str> = st.words.iter().map(|x| x.0.as_str()).collect();
        match w.as_slice() {
            ["map", kind, a, "->", b] => {
                let e = MapEntry { line, col: col(2), src: a.to_string(), tgt: b.to_string() };
                match *kind {
                    "p" => pmaps.push(e),
                    "lam" => lmaps.push(e),
                    _ => return Err(err(line, col(1), format!("unknown map `{kind}`, expected `p` or `lam`"))),
                }
            }
            ["deg", v, n] => {
                let n: usize = n.parse().ok().filter(|&n| n >= 1).ok_or_else(|| err(line, col(2), format!("bad degree `{n}`")))?;
                degs.push((line, col(1), v.to_string(), n));
            }
            ["embed", v, "->", z] => embeds.push(MapEntry { line, col: col(1), src: z.to_string(), tgt: v.to_string() }),
            _ => return Err(err(line, col(0), format!("unknown statement `{}`", w.join(" ")))),
        }
    }
    if section.is_some() {
        return Err(err(last_line, 1, "unterminated section"));
    }
    if !seen[0] || !seen[1] {
        return Err(err(last_line, 1, "both `base` and `cover` sections are required"));
    }
    let (g, h) = (&cover.tree.tree, &base.tree.tree);
    let mut p = vec![None; g.len()];
    resolve_map(g, h, &pmaps, &mut p)?;
    let mut lam = vec![None; g.len()];
    let mut embed = BTreeMap::new();
    for m in &embeds {
        let v = h.index_of(&m.tgt).filter(|&v| h.is_vertex(v)).ok_or_else(|| err(m.line, m.col, format!("unknown base vertex `{}`", m.tgt)))?;
        let z = g.index_of(&m.src).filter(|&z| g.is_vertex(z)).ok_or_else(|| err(m.line, m.col, format!("unknown cover vertex `{}`", m.src)))?;
        if embed.insert(v, z).is_some() {
            return Err(err(m.line, m.col, format!("`{}` embedded twice", m.tgt)));
        }
    }
    resolve_map(g, h, &embeds, &mut lam)?;
    resolve_map(g, h, &lmaps, &mut lam)?;
    let p = complete("p", &cover, p, last_line)?;
    let lam = complete("lam", &cover, lam, last_line)?;
    let mut deg = vec![1; g.len()];
    for (line, col, v, n) in degs {
        let z = g.index_of(&v).filter(|&z| g.is_vertex(z)).ok_or_else(|| err(line, col, format!("unknown cover vertex `{v}`")))?;
        deg[z] = n;
    }
    Ok(HubbardBundle { base: base.tree, cover: cover.tree, p, lam, deg, embed })
}

fn format_tree(out: &mut String, name: &str, t: &HubbardTree) {
    let g = &t.tree;
    let _ = writeln!(out, "{name} {{");
    for v in g.vertices() {
        let _ = write!(out, "  vertex {}", g.name(v));
        if t.ord[v] != Order::Finite(1) {
            let _ = write!(out, " ord {}", t.ord[v]);
        }
        if t.gens[v] != g.name(v) {
            let _ = write!(out, " gen {}", t.gens[v]);
        }
        out.push('\n');
    }
    for e in g.positive_edges() {
        let _ = writeln!(out, "  edge {} {} {}", g.name(e), g.name(g.origin(e)), g.name(g.terminus(e)));
    }
    for v in g.vertices() {
        for e in g.star(v) {
            if let Some(a) = t.angle.get(&e) {
                let _ = writeln!(out, "  angle {} {} {a}", g.name(v), g.name(g.positive_of(e)));
            }
        }
    }
    out.push_str("}\n");
}

pub fn format_htree(b: &HubbardBundle) -> String {
    let mut out = String::new();
    format_tree(&mut out, "base", &b.base);
    format_tree(&mut out, "cover", &b.cover);
    let (g, h) = (&b.cover.tree, &b.base.tree);
    let objects: Vec<usize> = g.vertices().chain(g.positive_edges()).collect();
    for &x in &objects {
        let _ = writeln!(out, "map p {} -> {}", g.name(x), h.name(b.p.apply(x)));
    }
    for &x in &objects {
        if !b.embed.iter().any(|(&v, &z)| z == x && b.lam.apply(x) == v) {
            let _ = writeln!(out, "map lam {} -> {}", g.name(x), h.name(b.lam.apply(x)));
        }
    }
    for v in g.vertices() {
        if b.deg[v] != 1 {
            let _ = writeln!(out, "deg {} {}", g.name(v), b.deg[v]);
        }
    }
    for (&v, &z) in &b.embed {
        let _ = writeln!(out, "embed {} -> {}", h.name(v), g.name(z));
    }
    out
}
