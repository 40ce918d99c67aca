//! Pass/fail reports for identity checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass: true,
            detail: detail.into(),
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass: false,
            detail: detail.into(),
        }
    }

    /// Passes iff `lhs == rhs`; otherwise the detail names the first
    /// differing entry.
    pub fn matrices<T: Ring>(name: &str, lhs: &Matrix<T>, rhs: &Matrix<T>) -> Self {
        match mismatch(lhs, rhs) {
            None => Self::pass(name, "exact equality"),
            Some(detail) => Self::fail(name, detail),
        }
    }
}

/// Describes the first entry where `lhs` and `rhs` differ.
pub fn mismatch<T: Ring>(lhs: &Matrix<T>, rhs: &Matrix<T>) -> Option<String> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Some(format!(
            "shape {}x{} vs {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        ));
    }
    let (r, c) = lhs.first_difference(rhs)?;
    Some(format!(
        "entry ({r},{c}): left {:?}, right {:?}",
        lhs.get(r, c),
        rhs.get(r, c)
    ))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
