//! Closed-form coefficients of the height comparisons.
//!
//! `f_stab(d, N)` is the proportionality constant between the stable Griffiths
//! height and the intersection height for pencils with non-degenerate critical
//! points; `w(N, δ)` is the contribution of a semihomogeneous singular point of
//! multiplicity `δ`; `g(N, δ) = 12 w(N, δ) / (δ - 1)^N` is its normalized form.
//! `f_stab` and `w` always lie in `(1/12)Z`, and both calculators check that
//! before returning.

use crate::algebra::rational::{self, rat, Rational};
use crate::error::{Error, Result};

fn check_positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn twelfths(label: String, q: Rational) -> Result<Rational> {
    if rational::in_twelfths(&q) {
        Ok(q)
    } else {
        Err(Error::NotInTwelfths(format!("{label} = {}", rational::to_string(&q))))
    }
}

/// `F_stab(d, N)`, with separate closed forms for odd and even `N`.
pub fn f_stab(d: u32, n: u32) -> Result<Rational> {
    check_positive("d", d)?;
    check_positive("N", n)?;
    let (dq, nq) = (rat(d as i64), rat(n as i64));
    let d2 = &dq * &dq;
    let lead = rational::pow(&(&dq - rat(1)), n);
    let bracket = if n % 2 == 1 {
        lead * (&d2 * &nq - &d2 - rat(2) * &dq * &nq - rat(2)) + rat(2) * (&d2 - rat(1))
    } else {
        lead * (&d2 * &nq + rat(2) * &d2 - rat(2) * &dq * &nq - rat(2)) - rat(2) * (&d2 - rat(1))
    };
    let value = (&nq + rat(1)) / (rat(24) * &d2) * bracket;
    twelfths(format!("F_stab({d}, {n})"), value)
}

/// `w_{N,δ} = (δ-1) [(Nδ+1)(δ-1)^(N-1) + (-1)^N (δ+1)] / (12 δ^2)`.
pub fn w(n: u32, delta: u32) -> Result<Rational> {
    check_positive("N", n)?;
    check_positive("delta", delta)?;
    let (nq, dq) = (rat(n as i64), rat(delta as i64));
    let dm1 = &dq - rat(1);
    let bracket = (&nq * &dq + rat(1)) * rational::pow(&dm1, n - 1)
        + rational::sign_pow(n) * (&dq + rat(1));
    let value = dm1 * bracket / (rat(12) * &dq * &dq);
    twelfths(format!("w({n}, {delta})"), value)
}

/// `g_N(δ) = 12 w_{N,δ} / (δ-1)^N`, defined for `δ >= 2`.
pub fn g(n: u32, delta: u32) -> Result<Rational> {
    if delta < 2 {
        return Err(Error::InvalidArgument(format!(
            "g(N, delta) needs delta >= 2, got {delta}"
        )));
    }
    let w = w(n, delta)?;
    Ok(rat(12) * w / rational::pow(&rat(delta as i64 - 1), n))
}

/// `g_N(2) = (2N + 1 + 3(-1)^N) / 4`, the largest value of `g_N`.
pub fn g_at_two(n: u32) -> Rational {
    (rat(2 * n as i64 + 1) + rat(3) * rational::sign_pow(n)) / rat(4)
}

/// Left-hand side of the identity checked by [`check_f_equals_fstab`]:
/// `-(N+1) w_{N,d} + (N+1)(d-1)^N (2N + 1 + 3(-1)^N) / 48`.
pub fn f_from_upper_bound(d: u32, n: u32) -> Result<Rational> {
    let np1 = rat(n as i64 + 1);
    let lead = rational::pow(&rat(d as i64 - 1), n);
    Ok(-(&np1 * w(n, d)?) + np1 * lead * (rat(2 * n as i64 + 1) + rat(3) * rational::sign_pow(n)) / rat(48))
}

/// Machine check that bounding every `w_{N,δ_P}` by its value at `δ = 2` turns
/// the semihomogeneous height formula into exactly `F_stab(d, N) ht_int`.
pub fn check_f_equals_fstab(d: u32, n: u32) -> Result<bool> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d must be at least 2, got {d}")));
    }
    Ok(f_from_upper_bound(d, n)? == f_stab(d, n)?)
}

/// Whether the upper bound on the stable Griffiths height is attained for the
/// given multiplicities of singular points.
pub fn classify_equality_case(n: u32, multiplicities: &[u32]) -> Result<bool> {
    check_positive("N", n)?;
    if let Some(bad) = multiplicities.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidArgument(format!(
            "singular point multiplicities are at least 2, got {bad}"
        )));
    }
    Ok(match n {
        1 => true,
        3 => multiplicities.iter().all(|&m| m == 2 || m == 3),
        _ => multiplicities.iter().all(|&m| m == 2),
    })
}
