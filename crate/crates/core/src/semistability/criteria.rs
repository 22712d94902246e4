use serde::{Deserialize, Serialize};

use super::{StabilityVerdict, Status};
use crate::error::{Error, Result};

/// Numerical singularity data of a hypersurface of degree `d` in `P^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SingularityProfile {
    #[serde(rename = "N")]
    pub n: u32,
    pub d: u32,
    /// Largest multiplicity of a point of the hypersurface; 1 when smooth.
    pub delta: u32,
    /// Dimension of the singular locus; -1 when smooth.
    pub s: i32,
    #[serde(default)]
    pub tangent_cone_not_hyperplane_cone: bool,
    #[serde(default)]
    pub semihomogeneous: bool,
    #[serde(default)]
    pub odp_only: bool,
}

impl SingularityProfile {
    pub fn smooth(n: u32, d: u32) -> Self {
        SingularityProfile {
            n,
            d,
            delta: 1,
            s: -1,
            tangent_cone_not_hyperplane_cone: false,
            semihomogeneous: false,
            odp_only: false,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.s == -1
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentProfile(msg));
        if self.n == 0 {
            return bad("N must be at least 1".into());
        }
        if self.d < 2 {
            return bad(format!("d must be at least 2, got {}", self.d));
        }
        if self.delta == 0 || self.delta > self.d {
            return bad(format!("delta must lie in 1..=d, got {}", self.delta));
        }
        if self.s < -1 || self.s > self.n as i32 - 1 {
            return bad(format!(
                "singular locus dimension {} outside -1..={}",
                self.s,
                self.n as i32 - 1
            ));
        }
        if (self.s == -1) != (self.delta == 1) {
            return bad(format!(
                "smooth exactly when delta = 1 and s = -1, got delta = {} and s = {}",
                self.delta, self.s
            ));
        }
        if self.odp_only && (self.delta > 2 || self.s > 0) {
            return bad("ordinary double points force delta <= 2 and s <= 0".into());
        }
        if self.semihomogeneous && self.s > 0 {
            return bad("semihomogeneous singularities are isolated (s <= 0)".into());
        }
        Ok(())
    }
}

/// `min(N + 1, s + 3)`, the dimension factor shared by the multiplicity bounds.
fn dim_factor(p: &SingularityProfile) -> u64 {
    (p.n as i64 + 1).min(p.s as i64 + 3) as u64
}

/// Applies the sufficient numeric criteria for (semi)stability in a fixed order
/// and keeps the strongest conclusion; ties go to the earliest rule. Binary
/// profiles (`N = 1`) are decided exactly by the multiplicity rule.
pub fn criteria_engine(p: &SingularityProfile) -> Result<StabilityVerdict> {
    p.validate()?;
    let (n, d, delta) = (p.n as u64, p.d as u64, p.delta as u64);
    let mut fired: Vec<(Status, String)> = Vec::new();

    if n == 1 {
        let status = match (2 * delta).cmp(&d) {
            std::cmp::Ordering::Less => Status::Stable,
            std::cmp::Ordering::Equal => Status::Semistable,
            std::cmp::Ordering::Greater => Status::Unstable,
        };
        return Ok(StabilityVerdict::new(
            status,
            format!("binary multiplicity rule: 2 delta = {} against d = {d}", 2 * delta),
        ));
    }

    if p.is_smooth() {
        if d >= 3 {
            fired.push((Status::Stable, "smooth with d >= 3 and N >= 2".into()));
        } else {
            fired.push((Status::Semistable, "smooth quadric".into()));
        }
    } else {
        if p.odp_only && d >= 3 {
            fired.push((
                Status::Semistable,
                "only ordinary double points, N >= 2 and d >= 3".into(),
            ));
        }
        let k = dim_factor(p);
        if let Some(status) = compare(d, delta * k) {
            fired.push((status, format!("multiplicity bound: d = {d} against delta min(N+1, s+3) = {}", delta * k)));
        }
        if p.tangent_cone_not_hyperplane_cone {
            if let Some(status) = compare(d, (delta - 1) * k) {
                fired.push((
                    status,
                    format!(
                        "tangent-cone bound: d = {d} against (delta-1) min(N+1, s+3) = {}",
                        (delta - 1) * k
                    ),
                ));
            }
        }
        if p.semihomogeneous {
            if d >= 3 * (delta - 1) {
                fired.push((Status::Semistable, "semihomogeneous with N >= 2 and d >= 3(delta-1)".into()));
            }
            // d >= delta (1 + 1/N)  <=>  N d >= delta (N + 1)
            if d > n && n * d >= delta * (n + 1) {
                fired.push((
                    Status::Semistable,
                    "semihomogeneous with d >= N+1 and d >= delta(1 + 1/N)".into(),
                ));
            }
        }
        if n == 3 && d == 3 && p.odp_only {
            fired.push((Status::Semistable, "cubic surface with only ordinary double points".into()));
        }
    }

    let best = fired
        .iter()
        .find(|(s, _)| *s == Status::Stable)
        .or_else(|| fired.first());
    Ok(match best {
        Some((status, rule)) => StabilityVerdict::new(*status, rule.clone()),
        None => StabilityVerdict::new(Status::Unknown, "no sufficient criterion applies"),
    })
}

/// `Stable` when `d > bound`, `Semistable` when equal, nothing otherwise.
fn compare(d: u64, bound: u64) -> Option<Status> {
    match d.cmp(&bound) {
        std::cmp::Ordering::Greater => Some(Status::Stable),
        std::cmp::Ordering::Equal => Some(Status::Semistable),
        std::cmp::Ordering::Less => None,
    }
}
