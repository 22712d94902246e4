//! GIT semistability of hypersurface forms under `SL_{N+1}`.
//!
//! Three deciders with different reach:
//!
//! - [`torus_semistable`] is exact but only for the diagonal torus of the given
//!   coordinates: a form is torus-unstable iff the barycenter
//!   `(d/(N+1), ..., d/(N+1))` lies outside the Newton polytope of its support.
//! - [`binary_semistable`] is the complete `SL_2` answer for binary forms: a form
//!   is unstable iff some root has multiplicity `> d/2`.
//! - [`criteria_engine`] applies sufficient numeric criteria to singularity data
//!   and may answer [`Status::Unknown`].
//!
//! Weight convention: a diagonal one-parameter subgroup with integer weights `a`
//! (summing to zero) destabilizes `F` iff `min_{m in supp F} <a, m> > 0`.

mod binary;
mod criteria;
pub mod lp;
mod torus;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use binary::{binary_semistable, max_root_multiplicity, RootMultiplicity};
pub use criteria::{criteria_engine, SingularityProfile};
pub use torus::{hm_weight, torus_semistable};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Stable,
    Semistable,
    Unstable,
    Unknown,
}

impl Status {
    /// Stable forms are in particular semistable.
    pub fn is_semistable(self) -> bool {
        matches!(self, Status::Stable | Status::Semistable)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Stable => "stable",
            Status::Semistable => "semistable",
            Status::Unstable => "unstable",
            Status::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Integer weights of a diagonal one-parameter subgroup of `SL_{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidWeight(format!(
                "entries {entries:?} do not sum to zero"
            )));
        }
        Ok(WeightVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[perm[i]] = x;
        }
        WeightVector(out)
    }
}

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

/// Outcome of a semistability decision, with the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: Status,
    /// Destabilizing weights; present only for unstable verdicts.
    pub certificate: Option<WeightVector>,
    pub rule: String,
}

impl StabilityVerdict {
    pub fn new(status: Status, rule: impl Into<String>) -> Self {
        StabilityVerdict {
            status,
            certificate: None,
            rule: rule.into(),
        }
    }

    pub fn unstable_with(certificate: WeightVector, rule: impl Into<String>) -> Self {
        StabilityVerdict {
            status: Status::Unstable,
            certificate: Some(certificate),
            rule: rule.into(),
        }
    }
}
