//! Pencils of hypersurfaces `H ⊂ P(E) → C`, described combinatorially.
//!
//! A [`PencilDescriptor`] records the numerical data the height formulas depend
//! on: the dimension `N`, the degree `d`, the genus of `C`, `deg E`, `μ_max(E)`,
//! `deg M` (or `ht_int` directly) and the multiplicities of the singular points
//! of the fibers. Every height below is evaluated exactly.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, rat, serde_rational, serde_rational_opt, Rational};
use crate::coeffs;
use crate::error::{Error, Result};

/// A singular point of some fiber, or `count` such points with the same data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SingularFiberRecord {
    pub multiplicity: u32,
    pub semihomogeneous: bool,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub count: u64,
}

fn one() -> u64 {
    1
}

fn is_one(n: &u64) -> bool {
    *n == 1
}

impl SingularFiberRecord {
    pub fn semihomogeneous(multiplicity: u32, count: u64) -> Self {
        SingularFiberRecord {
            multiplicity,
            semihomogeneous: true,
            count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "DescriptorInput")]
pub struct PencilDescriptor {
    #[serde(rename = "N")]
    pub n: u32,
    pub d: u32,
    pub genus: u32,
    pub deg_e: i64,
    #[serde(with = "serde_rational")]
    pub mu_max_e: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg_m: Option<i64>,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none", default)]
    pub ht_int: Option<Rational>,
    #[serde(default)]
    pub singular_points: Vec<SingularFiberRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_fibers_semistable: Option<bool>,
}

/// Descriptor as written in JSON, before defaults are filled in and the
/// invariants are checked by [`PencilDescriptor::try_from`].
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DescriptorInput {
    #[serde(rename = "N")]
    pub n: u32,
    pub d: u32,
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub deg_e: i64,
    #[serde(with = "serde_rational_opt", default)]
    pub mu_max_e: Option<Rational>,
    #[serde(default)]
    pub deg_m: Option<i64>,
    #[serde(with = "serde_rational_opt", default)]
    pub ht_int: Option<Rational>,
    #[serde(default)]
    pub singular_points: Vec<SingularFiberRecord>,
    #[serde(default)]
    pub all_fibers_semistable: Option<bool>,
}

impl TryFrom<DescriptorInput> for PencilDescriptor {
    type Error = Error;

    fn try_from(raw: DescriptorInput) -> Result<Self> {
        // an omitted μ_max(E) means E is slope-semistable
        let mu = rat(raw.deg_e) / rat(raw.n as i64 + 1);
        let p = PencilDescriptor {
            n: raw.n,
            d: raw.d,
            genus: raw.genus,
            deg_e: raw.deg_e,
            mu_max_e: raw.mu_max_e.unwrap_or(mu),
            deg_m: raw.deg_m,
            ht_int: raw.ht_int,
            singular_points: raw.singular_points,
            all_fibers_semistable: raw.all_fibers_semistable,
        };
        p.validate()?;
        Ok(p)
    }
}

fn invalid(field: &'static str, message: impl Into<String>) -> Error {
    Error::InvalidDescriptor {
        field,
        message: message.into(),
    }
}

impl PencilDescriptor {
    /// A pencil over `P^1` with trivial `E` and the given `deg M`.
    pub fn over_line(n: u32, d: u32, deg_m: i64, singular_points: Vec<SingularFiberRecord>) -> Self {
        PencilDescriptor {
            n,
            d,
            genus: 0,
            deg_e: 0,
            mu_max_e: Rational::zero(),
            deg_m: Some(deg_m),
            ht_int: None,
            singular_points,
            all_fibers_semistable: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("N", "must be at least 1"));
        }
        if self.d < 2 {
            return Err(invalid("d", format!("must be at least 2, got {}", self.d)));
        }
        if self.deg_m.is_none() && self.ht_int.is_none() {
            return Err(invalid("degM", "one of degM and htInt is required"));
        }
        if let (Some(m), Some(h)) = (self.deg_m, &self.ht_int) {
            let expected = self.ht_int_from_deg_m(m);
            if &expected != h {
                return Err(invalid(
                    "htInt",
                    format!(
                        "{} disagrees with degM - d degE/(N+1) = {}",
                        rational::to_string(h),
                        rational::to_string(&expected)
                    ),
                ));
            }
        }
        if self.mu_max_e < self.mu() {
            return Err(invalid(
                "muMaxE",
                format!(
                    "{} is below the slope degE/(N+1) = {}",
                    rational::to_string(&self.mu_max_e),
                    rational::to_string(&self.mu())
                ),
            ));
        }
        for (i, r) in self.singular_points.iter().enumerate() {
            if r.multiplicity < 2 {
                return Err(invalid(
                    "singularPoints",
                    format!("record {i}: multiplicity must be at least 2, got {}", r.multiplicity),
                ));
            }
            if r.count == 0 {
                return Err(invalid("singularPoints", format!("record {i}: count must be positive")));
            }
        }
        Ok(())
    }

    /// `μ(E) = deg E / (N + 1)`.
    pub fn mu(&self) -> Rational {
        rat(self.deg_e) / rat(self.n as i64 + 1)
    }

    fn ht_int_from_deg_m(&self, deg_m: i64) -> Rational {
        rat(deg_m) - rat(self.d as i64) * self.mu()
    }

    pub fn all_semihomogeneous(&self) -> bool {
        self.singular_points.iter().all(|r| r.semihomogeneous)
    }

    /// Multiplicities with repetition, expanded from the run-length counts.
    pub fn multiplicities(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.singular_points.iter().map(|r| (r.multiplicity, r.count))
    }

    fn require_semihomogeneous(&self) -> Result<()> {
        if self.all_semihomogeneous() {
            Ok(())
        } else {
            Err(Error::OutOfValidityDomain(
                "a singular point is not semihomogeneous".into(),
            ))
        }
    }
}

/// `ht_int = deg M - d deg E / (N + 1)`, or the override when given.
pub fn ht_int(p: &PencilDescriptor) -> Result<Rational> {
    p.validate()?;
    Ok(match (&p.ht_int, p.deg_m) {
        (Some(h), _) => h.clone(),
        (None, Some(m)) => p.ht_int_from_deg_m(m),
        (None, None) => unreachable!("validated"),
    })
}

/// Both sides of `sum_P (δ_P - 1)^N = (N+1)(d-1)^N ht_int`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityBudget {
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

impl SingularityBudget {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn singularity_budget(p: &PencilDescriptor) -> Result<SingularityBudget> {
    p.require_semihomogeneous()?;
    let h = ht_int(p)?;
    let n = p.n;
    let lhs = p
        .multiplicities()
        .map(|(delta, count)| rational::pow(&rat(delta as i64 - 1), n) * rat(count as i64))
        .fold(Rational::zero(), |a, b| a + b);
    let rhs = rat(n as i64 + 1) * rational::pow(&rat(p.d as i64 - 1), n) * h;
    Ok(SingularityBudget { lhs, rhs })
}

/// Whether the singular points use up exactly the vanishing-cycle budget.
pub fn singularity_budget_check(p: &PencilDescriptor) -> Result<bool> {
    Ok(singularity_budget(p)?.holds())
}

/// `ht_GK,stab = -(N+1) w_{N,d} ht_int + sum_P w_{N,δ_P}`.
///
/// Evaluated even when the budget check fails; [`full_report`] flags that case.
pub fn ht_gk_stab(p: &PencilDescriptor) -> Result<Rational> {
    p.require_semihomogeneous()?;
    let h = ht_int(p)?;
    let mut total = -(rat(p.n as i64 + 1) * coeffs::w(p.n, p.d)? * h);
    for (delta, count) in p.multiplicities() {
        total += coeffs::w(p.n, delta)? * rat(count as i64);
    }
    Ok(total)
}

/// `(F_stab(d, N) ht_int, equality case)`. When the budget holds, checks
/// `ht_GK,stab <= bound` with equality exactly in the equality case.
pub fn upper_bound_verdict(p: &PencilDescriptor) -> Result<(Rational, bool)> {
    let gk = ht_gk_stab(p)?;
    let bound = coeffs::f_stab(p.d, p.n)? * ht_int(p)?;
    let deltas: Vec<u32> = p.multiplicities().map(|(delta, _)| delta).collect();
    let equality = coeffs::classify_equality_case(p.n, &deltas)?;
    if singularity_budget_check(p)? {
        assert!(gk <= bound, "stable Griffiths height {gk} exceeds the bound {bound}");
        assert_eq!(gk == bound, equality, "equality case misclassified for {p:?}");
    }
    Ok((bound, equality))
}

/// `(2g - 2)~`: `2g - 2` for `g > 0`, and `-1` for `g = 0`.
pub fn two_g_minus_two_tilde(genus: u32) -> i64 {
    if genus == 0 {
        -1
    } else {
        2 * genus as i64 - 2
    }
}

/// `ht_int > (2g-2)~ + d (μ_max(E) - μ(E))`.
pub fn generization_condition(p: &PencilDescriptor) -> Result<bool> {
    let rhs = rat(two_g_minus_two_tilde(p.genus)) + rat(p.d as i64) * (&p.mu_max_e - p.mu());
    Ok(ht_int(p)? > rhs)
}

/// `deg M > 2g - 1 + d μ_max(E)`.
pub fn genericity_bound(p: &PencilDescriptor) -> Result<bool> {
    p.validate()?;
    let m = p
        .deg_m
        .ok_or_else(|| invalid("degM", "the genericity bound needs degM"))?;
    Ok(rat(m) > rat(2 * p.genus as i64 - 1) + rat(p.d as i64) * &p.mu_max_e)
}

/// Every height and verdict for one descriptor. Fields that only make sense for
/// semihomogeneous singularities, or only when `deg M` is known, are `None`
/// outside that domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HeightReport {
    #[serde(with = "serde_rational")]
    pub ht_int: Rational,
    #[serde(rename = "htGKStab", with = "serde_rational_opt")]
    pub ht_gk_stab: Option<Rational>,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    pub equality_case: Option<bool>,
    pub singularity_budget_ok: Option<bool>,
    pub generization_condition_ok: bool,
    pub genericity_bound_ok: Option<bool>,
}

pub fn full_report(p: &PencilDescriptor) -> Result<HeightReport> {
    let h = ht_int(p)?;
    let bound = coeffs::f_stab(p.d, p.n)? * &h;
    let (ht_gk, equality, budget) = if p.all_semihomogeneous() {
        let (_, equality) = upper_bound_verdict(p)?;
        (Some(ht_gk_stab(p)?), Some(equality), Some(singularity_budget_check(p)?))
    } else {
        (None, None, None)
    };
    Ok(HeightReport {
        ht_int: h,
        ht_gk_stab: ht_gk,
        bound,
        equality_case: equality,
        singularity_budget_ok: budget,
        generization_condition_ok: generization_condition(p)?,
        genericity_bound_ok: p.deg_m.map(|_| genericity_bound(p)).transpose()?,
    })
}

impl HeightReport {
    /// Two-column `name  value` table.
    pub fn to_table(&self) -> String {
        let opt_q = |q: &Option<Rational>| q.as_ref().map_or("n/a".to_string(), rational::to_string);
        let opt_b = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
        let rows = [
            ("htInt", rational::to_string(&self.ht_int)),
            ("htGKStab", opt_q(&self.ht_gk_stab)),
            ("bound", rational::to_string(&self.bound)),
            ("equalityCase", opt_b(self.equality_case)),
            ("singularityBudgetOk", opt_b(self.singularity_budget_ok)),
            ("generizationConditionOk", self.generization_condition_ok.to_string()),
            ("genericityBoundOk", opt_b(self.genericity_bound_ok)),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}
