use bisetkit_algebra::{parse_group, FpGroup, Word};

use crate::decperm::{parse_cycles, DecPerm};
use crate::error::BisetError;
use crate::wreath::WreathBiset;

/// Contents of a `.wr` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrFile {
    pub biset: WreathBiset,
    pub peripheral: Option<Word>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> BisetError {
    BisetError::Parse { line, col, msg: msg.into() }
}

/// Parses `<h_1, ..., h_d>(cycles)`.
pub fn parse_decperm(left: &FpGroup, text: &str) -> Result<DecPerm, BisetError> {
    let t = text.trim();
    let open = t.find('<').ok_or_else(|| perr(0, 1, "expected `<`"))?;
    let close = t.find('>').ok_or_else(|| perr(0, t.len(), "expected `>`"))?;
    if open != 0 || close < open {
        return Err(perr(0, 1, "expected `<...>` decorations"));
    }
    let dec: Vec<Word> = t[1..close]
        .split(',')
        .map(|w| left.parse_word(w))
        .collect::<Result<_, _>>()?;
    let perm = parse_cycles(&t[close + 1..], dec.len())?;
    DecPerm::new(dec, perm)
}

/// Parses a `.wr` recursion:
///
/// ```text
/// group <t:inf>
/// degree 2
/// t = <1, t>(1 2)
/// ```
///
/// `left`/`right` may replace `group`; `peripheral w` is optional.
pub fn parse_wr(text: &str) -> Result<WrFile, BisetError> {
    let mut left = None;
    let mut right = None;
    let mut degree = None;
    let mut lines: Vec<(usize, String, String)> = Vec::new();
    let mut peripheral = None;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let wrap = |e: bisetkit_algebra::AlgebraError| perr(ln, kw.len() + 2, e.to_string());
        match kw {
            "group" => {
                let g = parse_group(rest).map_err(wrap)?;
                left = Some(g.clone());
                right = Some(g);
            }
            "left" => left = Some(parse_group(rest).map_err(wrap)?),
            "right" => right = Some(parse_group(rest).map_err(wrap)?),
            "degree" => {
                degree = Some(rest.parse::<usize>().map_err(|_| perr(ln, kw.len() + 2, "bad degree"))?)
            }
            "peripheral" => peripheral = Some((ln, rest.to_string())),
            _ => {
                let (name, body) =
                    line.split_once('=').ok_or_else(|| perr(ln, 1, format!("unexpected `{kw}`")))?;
                lines.push((ln, name.trim().to_string(), body.to_string()));
            }
        }
    }
    let left = left.ok_or_else(|| perr(0, 0, "missing `group` or `left`"))?;
    let right = right.ok_or_else(|| perr(0, 0, "missing `group` or `right`"))?;
    let mut gens: Vec<Option<DecPerm>> = vec![None; right.rank()];
    for (ln, name, body) in &lines {
        let i = right.index_of(name).ok_or_else(|| perr(*ln, 1, format!("unknown generator `{name}`")))?;
        let col = name.len() + 3;
        let p = parse_decperm(&left, body).map_err(|e| match e {
            BisetError::Parse { msg, .. } => perr(*ln, col, msg),
            other => perr(*ln, col, other.to_string()),
        })?;
        if let Some(d) = degree {
            if p.degree() != d {
                return Err(perr(*ln, col, format!("expected {d} decorations, found {}", p.degree())));
            }
        }
        degree.get_or_insert(p.degree());
        gens[i] = Some(p);
    }
    let d = degree.ok_or_else(|| perr(0, 0, "missing degree"))?;
    let gens: Vec<DecPerm> = gens
        .into_iter()
        .enumerate()
        .map(|(i, g)| match g {
            Some(g) => Ok(g),
            None if right.order_of_factor(i).is_trivial() => Ok(DecPerm::identity(d)),
            None => Err(perr(0, 0, format!("no recursion for `{}`", right.factor(i).name))),
        })
        .collect::<Result<_, _>>()?;
    let peripheral = match peripheral {
        Some((ln, w)) => Some(right.parse_word(&w).map_err(|e| perr(ln, 12, e.to_string()))?),
        None => None,
    };
    let biset = WreathBiset::new(left, right, d, gens)?;
    Ok(WrFile { biset, peripheral })
}

pub fn format_wr(b: &WreathBiset, peripheral: Option<&Word>) -> String {
    let mut s = String::new();
    if b.left == b.right {
        s.push_str(&format!("group {}\n", b.left));
    } else {
        s.push_str(&format!("left {}\nright {}\n", b.left, b.right));
    }
    s.push_str(&format!("degree {}\n", b.degree));
    s.push_str(&b.fmt_table());
    if let Some(p) = peripheral {
        s.push_str(&format!("peripheral {}\n", b.right.fmt_word(p)));
    }
    s
}
