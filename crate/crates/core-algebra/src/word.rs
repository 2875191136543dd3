use std::cmp::Ordering;

use crate::error::AlgebraError;
use crate::group::{FpGroup, Order};

/// A syllable `x_f^e`: factor index and exponent.
pub type Syllable = (usize, i64);

/// Element of a free product of cyclic groups, stored as a normalized
/// syllable sequence. Words do not carry their group; operations go through
/// the owning [`FpGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Syllable>);

fn syllable_key(s: &Syllable) -> (usize, u64, bool) {
    (s.0, s.1.unsigned_abs(), s.1 < 0)
}

/// Shortlex: fewer syllables first, then lexicographic on
/// `(factor, |exponent|, sign)` with positive before negative.
pub fn cmp_syllables(a: &[Syllable], b: &[Syllable]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let c = syllable_key(x).cmp(&syllable_key(y));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_syllables(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn mass(&self) -> u64 {
        self.0.iter().map(|s| s.1.unsigned_abs()).sum()
    }

    pub(crate) fn from_normalized(v: Vec<Syllable>) -> Self {
        Word(v)
    }
}

fn push(out: &mut Vec<Syllable>, f: usize, e: i64, order: Order) {
    let e = order.reduce(e);
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.0 == f => {
            let ne = order.reduce(last.1 + e);
            if ne == 0 {
                out.pop();
            } else {
                last.1 = ne;
            }
        }
        _ => out.push((f, e)),
    }
}

impl FpGroup {
    pub fn identity(&self) -> Word {
        Word::identity()
    }

    /// The generator of factor `i` (identity if that factor is trivial).
    pub fn gen(&self, i: usize) -> Word {
        self.gen_pow(i, 1)
    }

    pub fn gen_pow(&self, i: usize, e: i64) -> Word {
        let mut v = Vec::new();
        push(&mut v, i, e, self.order_of_factor(i));
        Word(v)
    }

    pub fn normalize(&self, raw: &[Syllable]) -> Result<Word, AlgebraError> {
        let mut out = Vec::with_capacity(raw.len());
        for &(f, e) in raw {
            if f >= self.rank() {
                return Err(AlgebraError::UnknownFactor { index: f, rank: self.rank() });
            }
            push(&mut out, f, e, self.order_of_factor(f));
        }
        Ok(Word(out))
    }

    /// Checks that `w` is a normalized word of this group.
    pub fn check(&self, w: &Word) -> Result<(), AlgebraError> {
        let n = self.normalize(w.syllables())?;
        if &n != w {
            return Err(AlgebraError::Parse { col: 0, msg: "word is not normalized".into() });
        }
        Ok(())
    }

    pub fn mul(&self, u: &Word, v: &Word) -> Word {
        let mut out = u.0.clone();
        for &(f, e) in &v.0 {
            push(&mut out, f, e, self.order_of_factor(f));
        }
        Word(out)
    }

    /// Product of a list of words, left to right.
    pub fn product<'a>(&self, ws: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Vec::new();
        for w in ws {
            for &(f, e) in &w.0 {
                push(&mut out, f, e, self.order_of_factor(f));
            }
        }
        Word(out)
    }

    pub fn inv(&self, u: &Word) -> Word {
        Word(u.0.iter().rev().map(|&(f, e)| (f, self.order_of_factor(f).reduce(-e))).collect())
    }

    pub fn pow(&self, u: &Word, k: i64) -> Word {
        let base = if k < 0 { self.inv(u) } else { u.clone() };
        let mut acc = Word::identity();
        let mut sq = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            n >>= 1;
            if n > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `g u g^-1`
    pub fn conj(&self, u: &Word, g: &Word) -> Word {
        self.product([g, u, &self.inv(g)])
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        u == v
    }

    /// Returns `(r, c)` with `w = c r c^-1` and `r` cyclically reduced.
    pub fn cyclic_reduce(&self, w: &Word) -> (Word, Word) {
        let mut r = w.clone();
        let mut c = Word::identity();
        while r.len() >= 2 && r.0[0].0 == r.0[r.len() - 1].0 {
            let (f, e) = r.0[r.len() - 1];
            let g = self.gen_pow(f, e);
            r = self.conj(&r, &g);
            c = self.mul(&c, &self.inv(&g));
        }
        (r, c)
    }

    pub fn element_order(&self, w: &Word) -> Order {
        let (r, _) = self.cyclic_reduce(w);
        match r.len() {
            0 => Order::Finite(1),
            1 => {
                let (f, e) = r.0[0];
                match self.order_of_factor(f) {
                    Order::Infinite => Order::Infinite,
                    Order::Finite(n) => Order::Finite(n / gcd(n, e.unsigned_abs())),
                }
            }
            _ => Order::Infinite,
        }
    }

    /// Finds `k` with `w = u^k`. For `u` of finite order the least
    /// nonnegative such `k` is returned.
    pub fn is_power_of(&self, w: &Word, u: &Word) -> Result<Option<i64>, AlgebraError> {
        if u.is_identity() {
            return Err(AlgebraError::TrivialBase);
        }
        if w.is_identity() {
            return Ok(Some(0));
        }
        let (r, c) = self.cyclic_reduce(u);
        // conjugate w by the same element so that u becomes r
        let ci = self.inv(&c);
        let w2 = self.product([&ci, w, &c]);
        if r.len() == 1 {
            let (f, e) = r.0[0];
            if w2.len() != 1 || w2.0[0].0 != f {
                return Ok(None);
            }
            let e2 = w2.0[0].1;
            return Ok(match self.order_of_factor(f) {
                Order::Infinite => (e2 % e == 0).then(|| e2 / e),
                Order::Finite(n) => {
                    let ord = self.order_of_factor(f);
                    (1..n as i64).find(|k| ord.reduce(k * e) == e2)
                }
            });
        }
        let l = r.len();
        if !w2.len().is_multiple_of(l) {
            return Ok(None);
        }
        let k = (w2.len() / l) as i64;
        if self.pow(&r, k) == w2 {
            return Ok(Some(k));
        }
        if self.pow(&r, -k) == w2 {
            return Ok(Some(-k));
        }
        Ok(None)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
