use num_traits::{Signed, ToPrimitive};

use super::lp::{LpOutcome, StandardLp};
use super::{StabilityVerdict, Status, WeightVector};
use crate::algebra::rational::{self, rat, Rational};
use crate::algebra::MultiForm;
use crate::error::{Error, Result};

/// `min_{m in supp F} <a, m>`.
pub fn hm_weight(form: &MultiForm<Rational>, a: &WeightVector) -> Result<i64> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    if a.entries().len() != form.num_vars() {
        return Err(Error::InvalidWeight(format!(
            "{} weights for a form in {} variables",
            a.entries().len(),
            form.num_vars()
        )));
    }
    Ok(form
        .terms()
        .map(|(m, _)| pairing(a.entries(), m))
        .min()
        .expect("nonzero form"))
}

fn pairing(a: &[i64], m: &[u32]) -> i64 {
    a.iter().zip(m).map(|(&x, &k)| x * k as i64).sum()
}

/// Semistability with respect to the diagonal torus of the given coordinates.
///
/// Decides whether the barycenter `b = (d/(N+1), ..., d/(N+1))` lies in the convex
/// hull of the support with one exact program in the convex weights `λ_m`:
/// writing `λ_m = μ_m + τ`, maximize `τ` subject to `sum λ_m m = b` and
/// `μ, τ >= 0`. Infeasibility puts `b` outside the hull, and the Farkas
/// certificate of the program turns into a destabilizing weight. A positive
/// optimum makes `b` a strictly positive combination of the whole support, i.e. a
/// relative interior point; it is interior when the support also spans.
pub fn torus_semistable(form: &MultiForm<Rational>) -> Result<StabilityVerdict> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = form.num_vars();
    let d = form.degree() as i64;
    let support = form.support();
    // coordinates scaled by N+1 so the barycenter is the integer vector (d, ..., d)
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut row: Vec<i64> = support.iter().map(|m| n as i64 * m[j] as i64).collect();
            row.push(row.iter().sum());
            row
        })
        .collect();
    let mut objective = vec![0; support.len() + 1];
    objective[support.len()] = 1;
    let lp = StandardLp::new(rows, vec![d; n], objective);
    match lp.solve() {
        LpOutcome::Infeasible { farkas } => {
            // y.m >= 0 on the support and sum y < 0; recentre y to sum zero
            let mean: Rational = farkas.iter().sum::<Rational>() / rat(n as i64);
            let a: Vec<Rational> = farkas.iter().map(|y| y - &mean).collect();
            let certificate = to_weight_vector(&a)?;
            let weight = hm_weight(form, &certificate)?;
            assert!(weight > 0, "unsound certificate {certificate:?} for {form:?}");
            Ok(StabilityVerdict::unstable_with(
                certificate,
                "torus: barycenter outside the Newton polytope",
            ))
        }
        LpOutcome::Optimal { value, rank, .. } => {
            if value.is_positive() && rank == n {
                Ok(StabilityVerdict::new(
                    Status::Stable,
                    "torus: barycenter interior to the Newton polytope",
                ))
            } else {
                Ok(StabilityVerdict::new(
                    Status::Semistable,
                    "torus: barycenter on the boundary of the Newton polytope",
                ))
            }
        }
        LpOutcome::Unbounded => Err(Error::Lp("hull program cannot be unbounded".into())),
    }
}

fn to_weight_vector(a: &[Rational]) -> Result<WeightVector> {
    let ints = rational::primitive_integer_vector(a);
    let entries = ints
        .iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Lp(format!("certificate entry {x} overflows i64")))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightVector::new(entries)
}
