//! Structured validation reports shared by the derivation checkers.

use std::fmt;

/// One schema violation at a node of a derivation tree. The node is
/// addressed by the list of premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckViolation {
    pub node: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for CheckViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "at node [")?;
        for (i, k) in self.node.iter().enumerate() {
            if i > 0 {
                write!(out, ".")?;
            }
            write!(out, "{k}")?;
        }
        write!(out, "]: {}", self.reason)
    }
}

/// Result of checking every node of a derivation against its rule schema.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<CheckViolation>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, node: &[usize], reason: impl Into<String>) {
        self.violations.push(CheckViolation { node: node.to_vec(), reason: reason.into() });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(out, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{v}")?;
            }
            Ok(())
        }
    }
}
