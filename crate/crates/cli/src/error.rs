use std::fmt;

use bisetkit_algebra::AlgebraError;
use bisetkit_analysis::AnalysisError;
use bisetkit_bisets::BisetError;
use bisetkit_dynamics::DynamicsError;
use bisetkit_gob::GobError;
use bisetkit_graphs::GraphError;

/// Process exit codes.
pub const OK: u8 = 0;
pub const INVALID: u8 = 1;
pub const PARSE: u8 = 2;
pub const BUDGET: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError { code: INVALID, msg: msg.into() }
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        CliError { code: PARSE, msg: msg.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

fn algebra_code(e: &AlgebraError) -> u8 {
    match e {
        AlgebraError::Parse { .. } => PARSE,
        _ => INVALID,
    }
}

fn biset_code(e: &BisetError) -> u8 {
    match e {
        BisetError::Parse { .. } => PARSE,
        BisetError::Algebra(a) => algebra_code(a),
        _ => INVALID,
    }
}

fn graph_code(e: &GraphError) -> u8 {
    match e {
        GraphError::Parse { .. } => PARSE,
        GraphError::Algebra(a) => algebra_code(a),
        _ => INVALID,
    }
}

fn gob_code(e: &GobError) -> u8 {
    match e {
        GobError::Parse { .. } => PARSE,
        GobError::Algebra(a) => algebra_code(a),
        GobError::Biset(b) => biset_code(b),
        GobError::Graph(g) => graph_code(g),
        _ => INVALID,
    }
}

fn dynamics_code(e: &DynamicsError) -> u8 {
    match e {
        DynamicsError::Parse { .. } => PARSE,
        DynamicsError::Algebra(a) => algebra_code(a),
        DynamicsError::Biset(b) => biset_code(b),
        DynamicsError::Graph(g) => graph_code(g),
        DynamicsError::Gob(g) => gob_code(g),
        _ => INVALID,
    }
}

fn analysis_code(e: &AnalysisError) -> u8 {
    match e {
        AnalysisError::Budget { .. } => BUDGET,
        AnalysisError::BudgetSpec(_) => PARSE,
        AnalysisError::Algebra(a) => algebra_code(a),
        _ => INVALID,
    }
}

macro_rules! classify {
    ($($t:ty => $f:ident),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError { code: $f(&e), msg: e.to_string() }
            }
        }
    )*};
}

classify!(
    AlgebraError => algebra_code,
    BisetError => biset_code,
    GraphError => graph_code,
    GobError => gob_code,
    DynamicsError => dynamics_code,
    AnalysisError => analysis_code
);

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}
