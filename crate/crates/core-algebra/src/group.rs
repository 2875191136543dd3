use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;

/// Order of a cyclic factor. `Finite(1)` is the trivial group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_trivial(self) -> bool {
        self == Order::Finite(1)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    /// Canonical exponent: finite orders use the representative in
    /// `(-n/2, n/2]`, so `a^2` in `Z/3` becomes `a^-1` and `a^1` in `Z/2` stays.
    pub fn reduce(self, e: i64) -> i64 {
        match self {
            Order::Infinite => e,
            Order::Finite(n) => {
                let n = n as i64;
                let mut r = e.rem_euclid(n);
                if 2 * r > n {
                    r -= n;
                }
                r
            }
        }
    }

    /// Exponents of the nontrivial powers of a generator, in shortlex
    /// syllable order (`1, -1, 2, -2, ...`). Infinite orders are cut at `bound`.
    pub fn exponents(self, bound: i64) -> Vec<i64> {
        let mut out = Vec::new();
        match self {
            Order::Infinite => {
                for k in 1..=bound {
                    out.push(k);
                    out.push(-k);
                }
            }
            Order::Finite(n) => {
                let n = n as i64;
                for k in 1..=n / 2 {
                    out.push(k);
                    if self.reduce(-k) == -k {
                        out.push(-k);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Order {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" || s == "∞" || s == "oo" {
            return Ok(Order::Infinite);
        }
        match s.parse::<u64>() {
            Ok(n) if n >= 1 => Ok(Order::Finite(n)),
            _ => Err(AlgebraError::BadOrder(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicFactor {
    pub name: String,
    pub order: Order,
}

impl CyclicFactor {
    pub fn new(name: impl Into<String>, order: Order) -> Self {
        CyclicFactor { name: name.into(), order }
    }
}

/// A free product of cyclic groups, one generator per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FpGroup {
    factors: Vec<CyclicFactor>,
}

impl FpGroup {
    pub fn new(factors: Vec<CyclicFactor>) -> Result<Self, AlgebraError> {
        for (i, f) in factors.iter().enumerate() {
            if f.order == Order::Finite(0) {
                return Err(AlgebraError::BadOrder("0".into()));
            }
            if f.name.is_empty() {
                return Err(AlgebraError::BadName(f.name.clone()));
            }
            if factors[..i].iter().any(|g| g.name == f.name) {
                return Err(AlgebraError::DuplicateName(f.name.clone()));
            }
        }
        Ok(FpGroup { factors })
    }

    pub fn trivial() -> Self {
        FpGroup { factors: Vec::new() }
    }

    pub fn cyclic(name: &str, order: Order) -> Self {
        FpGroup { factors: vec![CyclicFactor::new(name, order)] }
    }

    /// Free group on the given generator names.
    pub fn free(names: &[&str]) -> Result<Self, AlgebraError> {
        FpGroup::new(names.iter().map(|n| CyclicFactor::new(*n, Order::Infinite)).collect())
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &CyclicFactor {
        &self.factors[i]
    }

    pub fn order_of_factor(&self, i: usize) -> Order {
        self.factors[i].order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.name == name)
    }

    /// True when every factor is trivial.
    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|f| f.order.is_trivial())
    }

    /// The single nontrivial factor, if the group is cyclic.
    pub fn cyclic_factor(&self) -> Option<Option<usize>> {
        let nontrivial: Vec<usize> =
            (0..self.rank()).filter(|&i| !self.factors[i].order.is_trivial()).collect();
        match nontrivial.len() {
            0 => Some(None),
            1 => Some(Some(nontrivial[0])),
            _ => None,
        }
    }

    /// Orders of the factors, sorted. Two free products of cyclic groups
    /// are isomorphic iff these multisets agree after dropping trivial factors.
    pub fn order_signature(&self) -> Vec<Order> {
        let mut v: Vec<Order> =
            self.factors.iter().map(|f| f.order).filter(|o| !o.is_trivial()).collect();
        v.sort();
        v
    }
}

impl fmt::Display for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", c.name, c.order)?;
        }
        write!(f, ">")
    }
}
