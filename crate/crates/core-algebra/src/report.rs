use std::fmt;

/// One validation failure, located by a short human-readable context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub context: String,
    pub message: String,
}

/// Accumulated validation failures; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub issues: Vec<Issue>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, context: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue { context: context.into(), message: message.into() });
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for i in other.issues {
            self.push(format!("{prefix}{}", i.context), i.message);
        }
    }

    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return writeln!(f, "valid");
        }
        for i in &self.issues {
            writeln!(f, "{}: {}", i.context, i.message)?;
        }
        Ok(())
    }
}
