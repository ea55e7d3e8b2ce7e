use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::rational::Rational;
use crate::series::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where two sides first disagree: an exponent of `q`, possibly preceded by
/// the exponent tuple of a multivariate coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub position: Vec<usize>,
    pub left: String,
    pub right: String,
}

/// Outcome of one verification case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub details: Option<String>,
}

impl Report {
    pub fn new(identity: impl Into<String>) -> Self {
        Report { identity: identity.into(), params: BTreeMap::new(), status: Status::Pass, witness: None, details: None }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("parameters serialize"));
        self
    }

    pub fn detail(mut self, text: impl Into<String>) -> Self {
        self.details = Some(text.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a failure unless one is already recorded; the first witness wins.
    pub fn fail(&mut self, witness: Witness) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
            self.witness = Some(witness);
        }
    }

    /// Compares two series coefficient-wise; `prefix` locates them inside a larger object.
    pub fn compare_series(&mut self, prefix: &[usize], left: &QSeries, right: &QSeries) {
        if let Some(m) = left.first_mismatch(right) {
            let mut position = prefix.to_vec();
            position.push(m);
            self.fail(Witness { position, left: left.coeff(m).to_string(), right: right.coeff(m).to_string() });
        }
    }

    pub fn compare_rational(&mut self, prefix: &[usize], left: &Rational, right: &Rational) {
        if left != right {
            self.fail(Witness { position: prefix.to_vec(), left: left.to_string(), right: right.to_string() });
        }
    }

    pub fn with_series(mut self, left: &QSeries, right: &QSeries) -> Self {
        self.compare_series(&[], left, right);
        self
    }

    pub fn with_rational(mut self, left: &Rational, right: &Rational) -> Self {
        self.compare_rational(&[], left, right);
        self
    }
}

/// Totals over a list of reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_identity: BTreeMap<String, (usize, usize)>,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.total += 1;
            let e = s.by_identity.entry(r.identity.clone()).or_default();
            if r.passed() {
                s.passed += 1;
                e.0 += 1;
            } else {
                s.failed += 1;
                e.1 += 1;
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}
