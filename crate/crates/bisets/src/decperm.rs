use std::fmt;

use bisetkit_algebra::{FpGroup, Word};

use crate::error::BisetError;

/// A decorated permutation `<h_1, ..., h_d> sigma`, read as
/// `s_i . g = h_i . s_{sigma(i)}`; indices are 0-based internally.
///
/// Products apply the left factor first: for `x = <a_i> sigma` and
/// `y = <b_i> tau`, `x * y = <a_i b_{sigma(i)}> (tau o sigma)`. For example
/// `<1, t>(1 2) * <1, t>(1 2) = <t, t>()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecPerm {
    pub dec: Vec<Word>,
    pub perm: Vec<usize>,
}

impl DecPerm {
    pub fn identity(d: usize) -> Self {
        DecPerm { dec: vec![Word::identity(); d], perm: (0..d).collect() }
    }

    pub fn new(dec: Vec<Word>, perm: Vec<usize>) -> Result<Self, BisetError> {
        if dec.len() != perm.len() {
            return Err(BisetError::Degree { expected: perm.len(), found: dec.len() });
        }
        check_perm(&perm)?;
        Ok(DecPerm { dec, perm })
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.dec.iter().all(Word::is_identity)
    }

    pub fn mul(&self, h: &FpGroup, other: &DecPerm) -> DecPerm {
        let dec = (0..self.degree())
            .map(|i| h.mul(&self.dec[i], &other.dec[self.perm[i]]))
            .collect();
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        DecPerm { dec, perm }
    }

    pub fn inv(&self, h: &FpGroup) -> DecPerm {
        let d = self.degree();
        let mut dec = vec![Word::identity(); d];
        let mut perm = vec![0; d];
        for j in 0..d {
            perm[self.perm[j]] = j;
            dec[self.perm[j]] = h.inv(&self.dec[j]);
        }
        DecPerm { dec, perm }
    }

    pub fn pow(&self, h: &FpGroup, k: i64) -> DecPerm {
        let base = if k < 0 { self.inv(h) } else { self.clone() };
        let mut acc = DecPerm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(h, &base);
        }
        acc
    }

    /// `w^-1 * self * w`
    pub fn conj_by(&self, h: &FpGroup, w: &DecPerm) -> DecPerm {
        w.inv(h).mul(h, self).mul(h, w)
    }

    /// Cycles of the permutation, each starting at its least element, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.perm)
    }

    /// Renders `<h_1, ..., h_d>(cycles)` with 1-based cycle entries.
    pub fn fmt_with(&self, h: &FpGroup) -> String {
        let decs: Vec<String> = self.dec.iter().map(|w| h.fmt_word(w)).collect();
        format!("<{}>{}", decs.join(", "), fmt_cycles(&self.perm))
    }
}

pub(crate) fn check_perm(perm: &[usize]) -> Result<(), BisetError> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(BisetError::NotPermutation(format!("{perm:?}")));
        }
        seen[p] = true;
    }
    Ok(())
}

pub fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut c = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            c.push(j);
            j = perm[j];
        }
        out.push(c);
    }
    out
}

/// Disjoint-cycle notation, fixed points omitted, `()` for the identity.
pub fn fmt_cycles(perm: &[usize]) -> String {
    let parts: Vec<String> = cycles_of(perm)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let xs: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", xs.join(" "))
        })
        .collect();
    if parts.is_empty() {
        "()".to_string()
    } else {
        parts.concat()
    }
}

/// Parses disjoint-cycle notation such as `(1 2)(3 4)` or `()`, 1-based.
pub fn parse_cycles(text: &str, d: usize) -> Result<Vec<usize>, BisetError> {
    let mut perm: Vec<usize> = (0..d).collect();
    let mut seen = vec![false; d];
    let bad = |m: String| BisetError::NotPermutation(m);
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_start = rest.strip_prefix('(').ok_or_else(|| bad(format!("expected `(` in `{text}`")))?;
        let close = inner_start.find(')').ok_or_else(|| bad(format!("unclosed cycle in `{text}`")))?;
        let body = &inner_start[..close];
        let pts: Vec<usize> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad(format!("bad point `{s}`"))))
            .collect::<Result<_, _>>()?;
        for &p in &pts {
            if p == 0 || p > d || seen[p - 1] {
                return Err(bad(format!("point {p} out of range or repeated in `{text}`")));
            }
            seen[p - 1] = true;
        }
        for k in 0..pts.len() {
            perm[pts[k] - 1] = pts[(k + 1) % pts.len()] - 1;
        }
        rest = inner_start[close + 1..].trim_start();
    }
    Ok(perm)
}

impl fmt::Display for DecPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.dec.iter().map(|w| w.syllables().to_vec()).collect::<Vec<_>>(), fmt_cycles(&self.perm))
    }
}
