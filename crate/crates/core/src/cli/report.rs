use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    /// `pass` is field-exact equality of `expected` and `actual`.
    pub fn new(name: impl Into<String>, params: Value, expected: Value, actual: Value) -> Self {
        let pass = expected == actual;
        Self {
            name: name.into(),
            params,
            expected,
            actual,
            pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            version: REPORT_VERSION,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {} {} expected={} actual={}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.params,
                c.expected,
                c.actual
            )?;
        }
        write!(
            f,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        )
    }
}

/// JSON number when it fits in an `i64`, decimal string otherwise.
pub fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

pub fn uint_value(v: &BigUint) -> Value {
    int_value(&BigInt::from(v.clone()))
}

pub fn int_array<'a>(vs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(vs.into_iter().map(int_value).collect())
}
