use bisetkit_algebra::{FpGroup, Order};
use bisetkit_bisets::{parse_decperm, BisetError, CyclicBiset, DecPerm, Elem, TableBiset, WreathBiset};
use bisetkit_graphs::{format_gog, parse_gog, Graph, GraphError, GraphMorphism, GraphOfGroups};

use crate::error::GobError;
use crate::gob::{identity_basis, GraphOfBisets, ObjectBiset};

fn perr(line: usize, col: usize, msg: impl Into<String>) -> GobError {
    GobError::Parse { line, col, msg: msg.into() }
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied();
        self.pos += 1;
        l
    }

    /// Lines up to the matching `}`; returns the block text (with blank
    /// lines keeping the numbering) and its first line.
    fn block(&mut self, open_ln: usize) -> Result<(String, usize), GobError> {
        let mut out = String::new();
        let mut last = open_ln;
        while let Some((ln, l)) = self.next() {
            if l == "}" {
                return Ok((out, open_ln + 1));
            }
            while last + 1 < ln {
                out.push('\n');
                last += 1;
            }
            out.push_str(l);
            out.push('\n');
            last = ln;
        }
        Err(perr(open_ln, 1, "unterminated block"))
    }
}

fn shift(e: GraphError, first: usize) -> GobError {
    match e {
        GraphError::Parse { line: 0, col, msg } => perr(first.saturating_sub(1), col, msg),
        GraphError::Parse { line, col, msg } => perr(line + first - 1, col, msg),
        other => other.into(),
    }
}

fn shift_biset(e: BisetError, ln: usize, col: usize) -> GobError {
    match e {
        BisetError::Parse { msg, .. } => perr(ln, col, msg),
        other => perr(ln, col, other.to_string()),
    }
}

fn parse_cyclic(args: &str, ln: usize, col: usize) -> Result<CyclicBiset, GobError> {
    let mut n = None;
    let mut d = None;
    let mut active = None;
    for part in args.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| perr(ln, col, format!("expected key=value, found `{}`", part.trim())))?;
        match (k.trim(), v.trim()) {
            ("n", v) => n = Some(v.parse::<Order>().map_err(|e| perr(ln, col, e.to_string()))?),
            ("d", v) => d = Some(v.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(|| perr(ln, col, "bad degree"))?),
            ("right", "active") => active = Some(true),
            ("right", "trivial") => active = Some(false),
            (k, v) => return Err(perr(ln, col, format!("unknown setting `{k}={v}`"))),
        }
    }
    Ok(CyclicBiset::new(
        n.ok_or_else(|| perr(ln, col, "missing n"))?,
        d.ok_or_else(|| perr(ln, col, "missing d"))?,
        active.unwrap_or(true),
    ))
}

fn parse_elems(left: &FpGroup, text: &str, ln: usize, col: usize) -> Result<Vec<Elem>, GobError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| perr(ln, col, "expected `[...]`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|item| {
            let item = item.trim();
            let (h, s) = item.rsplit_once('@').unwrap_or(("1", item));
            let h = left.parse_word(h).map_err(|e| perr(ln, col, e.to_string()))?;
            let s: usize = s.trim().parse().ok().filter(|&s| s >= 1).ok_or_else(|| perr(ln, col, format!("bad basis index in `{item}`")))?;
            Ok(Elem { h, s: s - 1 })
        })
        .collect()
}

fn fmt_elems(left: &FpGroup, v: &[Elem]) -> String {
    let items: Vec<String> = v
        .iter()
        .map(|e| if e.h.is_identity() { format!("{}", e.s + 1) } else { format!("{}@{}", left.fmt_word(&e.h), e.s + 1) })
        .collect();
    format!("[{}]", items.join(", "))
}

enum RawBiset {
    Cyclic(CyclicBiset),
    Wreath(usize, String),
    Table(usize, String),
}

fn build_wreath(text: &str, first: usize, left: &FpGroup, right: &FpGroup) -> Result<WreathBiset, GobError> {
    let mut degree = None;
    let mut gens: Vec<Option<DecPerm>> = vec![None; right.rank()];
    for (i, l) in text.lines().enumerate() {
        let ln = first + i;
        if l.trim().is_empty() {
            continue;
        }
        if let Some(d) = l.strip_prefix("degree") {
            degree = Some(d.trim().parse::<usize>().map_err(|_| perr(ln, 8, "bad degree"))?);
            continue;
        }
        let (name, body) = l.split_once('=').ok_or_else(|| perr(ln, 1, "expected `generator = <...>(...)`"))?;
        let g = right.index_of(name.trim()).ok_or_else(|| perr(ln, 1, format!("unknown generator `{}`", name.trim())))?;
        gens[g] = Some(parse_decperm(left, body).map_err(|e| shift_biset(e, ln, name.len() + 2))?);
    }
    let d = degree.or_else(|| gens.iter().flatten().next().map(DecPerm::degree)).ok_or_else(|| perr(first, 1, "missing degree"))?;
    let gens = gens.into_iter().map(|g| g.unwrap_or_else(|| DecPerm::identity(d))).collect();
    WreathBiset::new(left.clone(), right.clone(), d, gens).map_err(|e| shift_biset(e, first, 1))
}

fn build_table(text: &str, first: usize, left: &FpGroup, right: &FpGroup) -> Result<TableBiset, GobError> {
    let mut size = None;
    let mut lt = vec![None; left.rank()];
    let mut rt = vec![None; right.rank()];
    for (i, l) in text.lines().enumerate() {
        let ln = first + i;
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["size", n] => size = Some(n.parse::<usize>().map_err(|_| perr(ln, 6, "bad size"))?),
            [side @ ("left" | "right"), name, "=", rest @ ..] => {
                let grp = if *side == "left" { left } else { right };
                let g = grp.index_of(name).ok_or_else(|| perr(ln, side.len() + 2, format!("unknown generator `{name}`")))?;
                let perm: Vec<usize> = rest
                    .iter()
                    .map(|x| x.parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
                    .collect::<Option<_>>()
                    .ok_or_else(|| perr(ln, 1, "bad permutation entry"))?;
                if *side == "left" {
                    lt[g] = Some(perm);
                } else {
                    rt[g] = Some(perm);
                }
            }
            _ => return Err(perr(ln, 1, "expected `size n` or `left|right gen = images`")),
        }
    }
    let size = size.ok_or_else(|| perr(first, 1, "missing size"))?;
    let id: Vec<usize> = (0..size).collect();
    let t = TableBiset {
        left_group: left.clone(),
        right_group: right.clone(),
        size,
        left: lt.into_iter().map(|p| p.unwrap_or_else(|| id.clone())).collect(),
        right: rt.into_iter().map(|p| p.unwrap_or_else(|| id.clone())).collect(),
    };
    if let Some(i) = t.validate().issues.first() {
        return Err(perr(first, 1, format!("{}: {}", i.context, i.message)));
    }
    Ok(t)
}

/// Parses the `.gob` format:
///
/// ```text
/// left_graph {
///   vertex C group <t:inf>
///   vertex A
///   edge x from C to A
/// }
/// right_graph = left_graph
/// carrier {
///   vertex S
///   ...
/// }
/// lambda S -> C
/// rho S -> C
/// biset S = cyclic(n=inf, d=2, right=active)
/// biset U = wreath {
///   degree 1
///   t = <t>()
/// }
/// minus y2 -> [t^-1@2]
/// reverse y2 -> [1]
/// ```
///
/// Reverse edges inherit maps, bisets and the inverse reverse congruence
/// from their positive edge unless given. Basis indices are 1-based.
pub fn parse_gob(text: &str) -> Result<GraphOfBisets, GobError> {
    let mut lines = Lines::new(text);
    let mut left: Option<GraphOfGroups> = None;
    let mut right: Option<GraphOfGroups> = None;
    let mut carrier: Option<Graph> = None;
    let mut maps: Vec<(usize, bool, String, String)> = Vec::new();
    let mut raw_bisets: Vec<(usize, String, RawBiset)> = Vec::new();
    let mut congr: Vec<(usize, bool, String, String)> = Vec::new();
    while let Some((ln, l)) = lines.next() {
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "left_graph" | "right_graph" | "carrier" => {
                let gog = if rest == "{" {
                    let (body, first) = lines.block(ln)?;
                    parse_gog(&body).map_err(|e| shift(e, first))?
                } else if kw == "right_graph" && rest == "= left_graph" {
                    left.clone().ok_or_else(|| perr(ln, 15, "left_graph is not defined yet"))?
                } else {
                    return Err(perr(ln, kw.len() + 2, "expected `{`"));
                };
                match kw {
                    "left_graph" => left = Some(gog),
                    "right_graph" => right = Some(gog),
                    _ => carrier = Some(gog.graph),
                }
            }
            "lambda" | "rho" | "minus" | "reverse" => {
                let (a, b) = rest.split_once("->").ok_or_else(|| perr(ln, kw.len() + 2, "expected `->`"))?;
                let entry = (ln, kw == "lambda" || kw == "minus", a.trim().to_string(), b.trim().to_string());
                if kw == "lambda" || kw == "rho" {
                    maps.push(entry);
                } else {
                    congr.push(entry);
                }
            }
            "biset" => {
                let (name, spec) = rest.split_once('=').ok_or_else(|| perr(ln, 7, "expected `=`"))?;
                let spec = spec.trim();
                let col = l.find(spec).unwrap_or(0) + 1;
                let raw = if let Some(args) = spec.strip_prefix("cyclic(").and_then(|s| s.strip_suffix(')')) {
                    RawBiset::Cyclic(parse_cyclic(args, ln, col)?)
                } else if spec == "wreath {" {
                    let (body, first) = lines.block(ln)?;
                    RawBiset::Wreath(first, body)
                } else if spec == "table {" {
                    let (body, first) = lines.block(ln)?;
                    RawBiset::Table(first, body)
                } else {
                    return Err(perr(ln, col, "expected `cyclic(...)`, `wreath {` or `table {`"));
                };
                raw_bisets.push((ln, name.trim().to_string(), raw));
            }
            other => return Err(perr(ln, 1, format!("unknown keyword `{other}`"))),
        }
    }
    let left = left.ok_or_else(|| perr(0, 0, "missing left_graph"))?;
    let right = right.ok_or_else(|| perr(0, 0, "missing right_graph"))?;
    let carrier = carrier.ok_or_else(|| perr(0, 0, "missing carrier"))?;
    let n = carrier.len();
    let lookup = |g: &Graph, name: &str, ln: usize| g.index_of(name).ok_or_else(|| perr(ln, 1, format!("unknown object `{name}`")));

    let mut lam = vec![None; n];
    let mut rho = vec![None; n];
    for (ln, is_lambda, a, b) in &maps {
        let z = lookup(&carrier, a, *ln)?;
        let tgt = if *is_lambda { &left.graph } else { &right.graph };
        let y = lookup(tgt, b, *ln)?;
        let slot = if *is_lambda { &mut lam } else { &mut rho };
        slot[z] = Some(y);
        let zr = carrier.reverse(z);
        if zr != z && slot[zr].is_none() {
            slot[zr] = Some(tgt.reverse(y));
        }
    }
    let finish = |m: Vec<Option<usize>>, what: &str| -> Result<GraphMorphism, GobError> {
        let map = m
            .into_iter()
            .enumerate()
            .map(|(z, y)| y.ok_or_else(|| perr(0, 0, format!("{what} is not given on `{}`", carrier.name(z)))))
            .collect::<Result<_, _>>()?;
        Ok(GraphMorphism { map })
    };
    let lambda = finish(lam, "lambda")?;
    let rho = finish(rho, "rho")?;
    lambda.check(&carrier, &left.graph)?;
    rho.check(&carrier, &right.graph)?;

    let mut bisets: Vec<Option<ObjectBiset>> = vec![None; n];
    for (ln, name, raw) in raw_bisets {
        let z = lookup(&carrier, &name, ln)?;
        let (lg, rg) = (&left.groups[lambda.apply(z)], &right.groups[rho.apply(z)]);
        bisets[z] = Some(match raw {
            RawBiset::Cyclic(c) => ObjectBiset::Cyclic(c),
            RawBiset::Wreath(first, body) => ObjectBiset::Wreath(build_wreath(&body, first, lg, rg)?),
            RawBiset::Table(first, body) => ObjectBiset::Table(build_table(&body, first, lg, rg)?),
        });
    }
    for z in carrier.edges() {
        let zr = carrier.reverse(z);
        if bisets[z].is_none() {
            bisets[z] = bisets[zr].clone();
        }
    }
    let bisets: Vec<ObjectBiset> = bisets
        .into_iter()
        .enumerate()
        .map(|(z, b)| b.ok_or_else(|| perr(0, 0, format!("no biset for `{}`", carrier.name(z)))))
        .collect::<Result<_, _>>()?;
    let mut gob = GraphOfBisets {
        carrier,
        left,
        right,
        lambda,
        rho,
        bisets,
        minus: vec![Vec::new(); n],
        reverse: vec![Vec::new(); n],
    };
    let degrees: Vec<usize> = (0..n).map(|z| gob.wreath(z).map(|w| w.degree)).collect::<Result<_, _>>()?;
    let mut minus: Vec<Option<Vec<Elem>>> = vec![None; n];
    let mut reverse: Vec<Option<Vec<Elem>>> = vec![None; n];
    for (ln, is_minus, a, b) in &congr {
        let z = lookup(&gob.carrier, a, *ln)?;
        if gob.carrier.is_vertex(z) {
            return Err(perr(*ln, 1, format!("`{a}` is a vertex; its congruences are the identity")));
        }
        let tgt = if *is_minus { gob.carrier.origin(z) } else { gob.carrier.reverse(z) };
        let v = parse_elems(gob.left_group(tgt), b, *ln, 1)?;
        if v.len() != degrees[z] {
            return Err(perr(*ln, 1, format!("expected {} images, found {}", degrees[z], v.len())));
        }
        if *is_minus {
            minus[z] = Some(v);
        } else {
            reverse[z] = Some(v);
        }
    }
    for z in gob.carrier.edges() {
        let zr = gob.carrier.reverse(z);
        if reverse[z].is_none() {
            if let Some(v) = &reverse[zr] {
                let lg = gob.left_group(z);
                let mut inv = vec![Elem::basis(0); v.len()];
                for (s, e) in v.iter().enumerate() {
                    if e.s < inv.len() {
                        inv[e.s] = Elem { h: lg.inv(&e.h), s };
                    }
                }
                reverse[z] = Some(inv);
            }
        }
    }
    for z in 0..n {
        gob.minus[z] = minus[z].take().unwrap_or_else(|| identity_basis(degrees[z]));
        gob.reverse[z] = reverse[z].take().unwrap_or_else(|| identity_basis(degrees[z]));
    }
    Ok(gob)
}

fn fmt_table(t: &TableBiset) -> String {
    let mut s = format!("  size {}\n", t.size);
    let perm = |p: &[usize]| p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ");
    for (i, p) in t.left.iter().enumerate() {
        s.push_str(&format!("  left {} = {}\n", t.left_group.factor(i).name, perm(p)));
    }
    for (i, p) in t.right.iter().enumerate() {
        s.push_str(&format!("  right {} = {}\n", t.right_group.factor(i).name, perm(p)));
    }
    s
}

fn fmt_biset(b: &ObjectBiset) -> String {
    match b {
        ObjectBiset::Cyclic(c) => format!(
            "cyclic(n={}, d={}, right={})\n",
            c.n,
            c.d,
            if c.right_active { "active" } else { "trivial" }
        ),
        ObjectBiset::Wreath(w) => {
            let mut s = format!("wreath {{\n  degree {}\n", w.degree);
            for (i, g) in w.gens.iter().enumerate() {
                s.push_str(&format!("  {} = {}\n", w.right.factor(i).name, g.fmt_with(&w.left)));
            }
            s.push_str("}\n");
            s
        }
        ObjectBiset::Table(t) => format!("table {{\n{}}}\n", fmt_table(t)),
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

/// Writes the `.gob` format. Reverse edges are written only where they
/// differ from what the parser would infer.
pub fn format_gob(gob: &GraphOfBisets) -> String {
    let c = &gob.carrier;
    let (lg, rg) = (&gob.left.graph, &gob.right.graph);
    let mut s = format!("left_graph {{\n{}}}\n", indent(&format_gog(&gob.left)));
    if gob.right == gob.left {
        s.push_str("right_graph = left_graph\n");
    } else {
        s.push_str(&format!("right_graph {{\n{}}}\n", indent(&format_gog(&gob.right))));
    }
    s.push_str(&format!("carrier {{\n{}}}\n", indent(&format_gog(&GraphOfGroups::trivial_on(c.clone())))));
    for (kw, m, tg) in [("lambda", &gob.lambda, lg), ("rho", &gob.rho, rg)] {
        for z in 0..c.len() {
            let inferred = c.is_edge(z) && !c.is_positive(z) && m.apply(z) == tg.reverse(m.apply(c.reverse(z)));
            if !inferred {
                s.push_str(&format!("{kw} {} -> {}\n", c.name(z), tg.name(m.apply(z))));
            }
        }
    }
    for z in 0..c.len() {
        if c.is_edge(z) && !c.is_positive(z) && gob.bisets[z] == gob.bisets[c.reverse(z)] {
            continue;
        }
        s.push_str(&format!("biset {} = {}", c.name(z), fmt_biset(&gob.bisets[z])));
    }
    for z in c.edges() {
        let d = gob.minus[z].len();
        if gob.minus[z] != identity_basis(d) {
            s.push_str(&format!("minus {} -> {}\n", c.name(z), fmt_elems(gob.left_group(c.origin(z)), &gob.minus[z])));
        }
    }
    for z in c.edges() {
        let zr = c.reverse(z);
        let d = gob.reverse[z].len();
        let skip = if c.is_positive(z) {
            gob.reverse[z] == identity_basis(d) && gob.reverse[zr] == identity_basis(gob.reverse[zr].len())
        } else {
            let pos = &gob.reverse[zr];
            let lgz = gob.left_group(z);
            pos.iter().enumerate().all(|(s, e)| gob.reverse[z].get(e.s) == Some(&Elem { h: lgz.inv(&e.h), s }))
        };
        if !skip {
            s.push_str(&format!("reverse {} -> {}\n", c.name(z), fmt_elems(gob.left_group(zr), &gob.reverse[z])));
        }
    }
    s
}

