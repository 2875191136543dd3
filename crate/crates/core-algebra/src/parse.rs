use crate::error::AlgebraError;
use crate::group::{CyclicFactor, FpGroup, Order};
use crate::word::Word;

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '[' | ']')
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(is_name_char)
        && !s.starts_with(|c: char| c.is_ascii_digit())
        && s != "inf"
}

fn auto_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

fn perr(col: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { col, msg: msg.into() }
}

/// Parses `Z/2 * Z * Z/3`, `1`, or `<a:2, t:inf>`.
pub fn parse_group(text: &str) -> Result<FpGroup, AlgebraError> {
    let t = text.trim();
    if t == "1" || t.is_empty() {
        return Ok(FpGroup::trivial());
    }
    if let Some(inner) = t.strip_prefix('<') {
        let inner = inner
            .strip_suffix('>')
            .ok_or_else(|| perr(t.len(), "missing `>`"))?;
        let mut factors = Vec::new();
        if inner.trim().is_empty() {
            return Ok(FpGroup::trivial());
        }
        for part in inner.split(',') {
            let (name, ord) = match part.split_once(':') {
                Some((n, o)) => (n.trim(), o.trim().parse::<Order>()?),
                None => (part.trim(), Order::Infinite),
            };
            if !valid_name(name) {
                return Err(AlgebraError::BadName(name.to_string()));
            }
            factors.push(CyclicFactor::new(name, ord));
        }
        return FpGroup::new(factors);
    }
    let mut factors = Vec::new();
    for (i, part) in t.split('*').enumerate() {
        let p = part.trim();
        let ord = if p == "Z" {
            Order::Infinite
        } else if let Some(n) = p.strip_prefix("Z/") {
            n.parse::<Order>()?
        } else if p == "1" {
            Order::Finite(1)
        } else {
            return Err(perr(0, format!("expected `Z` or `Z/n`, found `{p}`")));
        };
        factors.push(CyclicFactor::new(auto_name(i), ord));
    }
    FpGroup::new(factors)
}

/// Parses `group G = ...`, returning the name and the group.
pub fn parse_group_decl(line: &str) -> Result<(String, FpGroup), AlgebraError> {
    let rest = line
        .trim()
        .strip_prefix("group")
        .ok_or_else(|| perr(1, "expected `group`"))?;
    let (name, body) = rest.split_once('=').ok_or_else(|| perr(1, "expected `=`"))?;
    let name = name.trim();
    if !valid_name(name) {
        return Err(AlgebraError::BadName(name.to_string()));
    }
    Ok((name.to_string(), parse_group(body)?))
}

impl FpGroup {
    /// Parses `a*t^-2*c`; `*` and whitespace both separate letters, `1` is
    /// the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlgebraError> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut raw = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() || c == '*' {
                i += 1;
                continue;
            }
            if c == '1' && chars.get(i + 1).is_none_or(|&(_, d)| !is_name_char(d)) {
                i += 1;
                continue;
            }
            if !is_name_char(c) {
                return Err(perr(pos + 1, format!("unexpected `{c}`")));
            }
            let start = i;
            while i < chars.len() && is_name_char(chars[i].1) {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|p| p.1).collect();
            let f = self
                .index_of(&name)
                .ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
            let mut e: i64 = 1;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let s = i;
                if i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[s..i].iter().map(|p| p.1).collect();
                e = num
                    .parse()
                    .map_err(|_| perr(chars.get(s).map_or(text.len(), |p| p.0) + 1, "bad exponent"))?;
            }
            raw.push((f, e));
        }
        self.normalize(&raw)
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        let parts: Vec<String> = w
            .syllables()
            .iter()
            .map(|&(f, e)| {
                let n = &self.factor(f).name;
                if e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}
