use crate::error::AnalysisError;

/// Environment variable read by [`Budget::from_env`].
pub const BUDGET_VAR: &str = "BISETKIT_BUDGET";

/// Size limits for the bounded searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Deepest level of the tree.
    pub depth: usize,
    /// Points on one level.
    pub points: u64,
    /// Words in one ball.
    pub words: u64,
    /// Generator matchings tried in one direction.
    pub matchings: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { depth: 12, points: 1_000_000, words: 1_000_000, matchings: 1_000_000 }
    }
}

impl Budget {
    /// Overrides of the form `depth=12,points=1000000`; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Budget, AnalysisError> {
        let mut b = Budget::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| AnalysisError::BudgetSpec(format!("`{item}` is not key=value")))?;
            let n: u64 = v
                .trim()
                .parse()
                .map_err(|_| AnalysisError::BudgetSpec(format!("`{}` is not a count", v.trim())))?;
            match k.trim() {
                "depth" => b.depth = n as usize,
                "points" => b.points = n,
                "words" => b.words = n,
                "matchings" => b.matchings = n,
                other => return Err(AnalysisError::BudgetSpec(format!("unknown budget `{other}`"))),
            }
        }
        Ok(b)
    }

    /// The defaults, overridden by `BISETKIT_BUDGET` when set.
    pub fn from_env() -> Result<Budget, AnalysisError> {
        match std::env::var(BUDGET_VAR) {
            Ok(s) => Budget::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub(crate) fn check(&self, name: &'static str, limit: u64, requested: u64) -> Result<(), AnalysisError> {
        if requested > limit {
            return Err(AnalysisError::Budget { name, limit, requested });
        }
        Ok(())
    }

    /// `d^n` points, after checking depth and size.
    pub(crate) fn level_size(&self, d: usize, n: usize) -> Result<usize, AnalysisError> {
        self.check("depth", self.depth as u64, n as u64)?;
        let total = (d as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        self.check("points", self.points, total)?;
        Ok(total as usize)
    }
}
