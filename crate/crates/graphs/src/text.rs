use bisetkit_algebra::{parse_group, FpGroup, Word};

use crate::error::GraphError;
use crate::gog::GraphOfGroups;

const KEYWORDS: [&str; 6] = ["group", "from", "to", "into_minus", "into_plus", "stable"];

fn perr(line: usize, col: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, col, msg: msg.into() }
}

/// Whitespace tokens of a line with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Splits `kw value... kw value...` into keyword fields.
fn fields<'a>(toks: &[(usize, &'a str)], ln: usize) -> Result<Vec<(&'a str, usize, String)>, GraphError> {
    let mut out: Vec<(&str, usize, String)> = Vec::new();
    for &(col, t) in toks {
        if KEYWORDS.contains(&t) {
            out.push((t, col, String::new()));
        } else {
            let last = out.last_mut().ok_or_else(|| perr(ln, col, format!("unexpected `{t}`")))?;
            if !last.2.is_empty() {
                last.2.push(' ');
            }
            last.2.push_str(t);
        }
    }
    Ok(out)
}

fn field<'a>(fs: &'a [(&str, usize, String)], key: &str) -> Option<&'a (&'a str, usize, String)> {
    fs.iter().find(|f| f.0 == key)
}

/// Parses the `.gog` format:
///
/// ```text
/// vertex v group Z/2
/// edge e from u to v group Z/3 into_minus c^1 into_plus d^2
/// ```
pub fn parse_gog(text: &str) -> Result<GraphOfGroups, GraphError> {
    let mut gog = GraphOfGroups::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap();
        let toks = tokens(line);
        let Some(&(col0, kw)) = toks.first() else { continue };
        let Some(&(ncol, name)) = toks.get(1) else {
            return Err(perr(ln, col0, "missing name"));
        };
        let fs = fields(&toks[2..], ln)?;
        let group_of = |fs: &[(&str, usize, String)]| -> Result<FpGroup, GraphError> {
            match field(fs, "group") {
                Some((_, c, g)) => parse_group(g).map_err(|e| perr(ln, c + 6, e.to_string())),
                None => Ok(FpGroup::trivial()),
            }
        };
        match kw {
            "vertex" => {
                let g = group_of(&fs)?;
                gog.add_vertex(name, g).map_err(|e| perr(ln, ncol, e.to_string()))?;
            }
            "edge" => {
                let endpoint = |key: &str| -> Result<usize, GraphError> {
                    let (_, c, v) = field(&fs, key).ok_or_else(|| perr(ln, col0, format!("missing `{key}`")))?;
                    let idx = gog.graph.index_of(v).ok_or_else(|| perr(ln, c + key.len() + 1, format!("unknown vertex `{v}`")))?;
                    if !gog.graph.is_vertex(idx) {
                        return Err(perr(ln, c + key.len() + 1, format!("`{v}` is not a vertex")));
                    }
                    Ok(idx)
                };
                let (u, v) = (endpoint("from")?, endpoint("to")?);
                let g = group_of(&fs)?;
                let image = |key: &str, at: usize| -> Result<Vec<Word>, GraphError> {
                    match field(&fs, key) {
                        Some((_, c, w)) => {
                            if g.rank() != 1 {
                                return Err(perr(ln, *c, "edge maps need a cyclic edge group"));
                            }
                            let w = gog.groups[at].parse_word(w).map_err(|e| perr(ln, c + key.len() + 1, e.to_string()))?;
                            Ok(vec![w])
                        }
                        None if g.is_trivial() => Ok(vec![Word::identity(); g.rank()]),
                        None => Err(perr(ln, col0, format!("missing `{key}`"))),
                    }
                };
                let (m, p) = (image("into_minus", u)?, image("into_plus", v)?);
                let e = gog.add_edge(name, u, v, g, m, p).map_err(|e| perr(ln, ncol, e.to_string()))?;
                if let Some((_, _, s)) = field(&fs, "stable") {
                    gog.stable[e] = s.clone();
                    gog.stable[e + 1] = s.clone();
                }
            }
            other => return Err(perr(ln, col0, format!("unknown keyword `{other}`"))),
        }
    }
    let report = gog.validate();
    if let Some(i) = report.issues.first() {
        return Err(perr(0, 0, format!("{}: {}", i.context, i.message)));
    }
    Ok(gog)
}

pub fn format_gog(gog: &GraphOfGroups) -> String {
    let g = &gog.graph;
    let mut s = String::new();
    for v in g.vertices() {
        if gog.groups[v].rank() == 0 {
            s.push_str(&format!("vertex {}\n", g.name(v)));
        } else {
            s.push_str(&format!("vertex {} group {}\n", g.name(v), gog.groups[v]));
        }
    }
    for e in g.positive_edges() {
        let (u, v) = (g.origin(e), g.terminus(e));
        s.push_str(&format!("edge {} from {} to {}", g.name(e), g.name(u), g.name(v)));
        let grp = &gog.groups[e];
        if grp.rank() > 0 {
            s.push_str(&format!(" group {}", grp));
            if grp.rank() == 1 {
                s.push_str(&format!(
                    " into_minus {} into_plus {}",
                    gog.groups[u].fmt_word(&gog.incl[e].images[0]),
                    gog.groups[v].fmt_word(&gog.incl[g.reverse(e)].images[0])
                ));
            }
        }
        if gog.stable[e] != g.name(e) {
            s.push_str(&format!(" stable {}", gog.stable[e]));
        }
        s.push('\n');
    }
    s
}
