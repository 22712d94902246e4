//! Classical invariants of binary cubics and quartics.
//!
//! Coefficients are indexed as everywhere else: `c[j]` multiplies
//! `X_0^j X_1^(d-j)`. Both formulas are symmetric under `c[j] <-> c[d-j]`, so the
//! orientation does not matter.

use num_traits::Zero;

use crate::algebra::rational::{ratio, Rational};
use crate::algebra::{CoeffRing, MultiForm};
use crate::error::{Error, Result};

fn wrong_shape(op: &'static str, expected: u32, got: usize) -> Error {
    Error::WrongShape {
        op,
        expected,
        got: got.saturating_sub(1) as u32,
        vars: 2,
    }
}

/// `(I, J)` of `sum_j c[j] X_0^j X_1^(4-j)`, in any coefficient ring.
///
/// Writing the quartic as `a0 x^4 + 4 a1 x^3 y + 6 a2 x^2 y^2 + 4 a3 x y^3 + a4 y^4`,
/// `I = a0 a4 - 4 a1 a3 + 3 a2^2` and
/// `J = a0 a2 a4 + 2 a1 a2 a3 - a2^3 - a0 a3^2 - a1^2 a4`.
pub fn quartic_invariants_of<R: CoeffRing>(c: &[R]) -> Result<(R, R)> {
    if c.len() != 5 {
        return Err(wrong_shape("invariants_quartic", 4, c.len()));
    }
    let a0 = c[4].clone();
    let a1 = c[3].scale(&ratio(1, 4));
    let a2 = c[2].scale(&ratio(1, 6));
    let a3 = c[1].scale(&ratio(1, 4));
    let a4 = c[0].clone();
    let i = a0
        .mul(&a4)
        .sub(&a1.mul(&a3).scale(&ratio(4, 1)))
        .add(&a2.mul(&a2).scale(&ratio(3, 1)));
    let j = a0
        .mul(&a2)
        .mul(&a4)
        .add(&a1.mul(&a2).mul(&a3).scale(&ratio(2, 1)))
        .sub(&a2.mul(&a2).mul(&a2))
        .sub(&a0.mul(&a3).mul(&a3))
        .sub(&a1.mul(&a1).mul(&a4));
    Ok((i, j))
}

/// Discriminant of `sum_j c[j] X_0^j X_1^(3-j)`:
/// `c2^2 c1^2 - 4 c3 c1^3 - 4 c2^3 c0 - 27 c3^2 c0^2 + 18 c3 c2 c1 c0`.
pub fn cubic_discriminant_of<R: CoeffRing>(c: &[R]) -> Result<R> {
    if c.len() != 4 {
        return Err(wrong_shape("invariant_cubic_disc", 3, c.len()));
    }
    let (c0, c1, c2, c3) = (&c[0], &c[1], &c[2], &c[3]);
    Ok(c2
        .mul(c2)
        .mul(c1)
        .mul(c1)
        .sub(&c3.mul(c1).mul(c1).mul(c1).scale(&ratio(4, 1)))
        .sub(&c2.mul(c2).mul(c2).mul(c0).scale(&ratio(4, 1)))
        .sub(&c3.mul(c3).mul(c0).mul(c0).scale(&ratio(27, 1)))
        .add(&c3.mul(c2).mul(c1).mul(c0).scale(&ratio(18, 1))))
}

fn binary_coeffs_of(form: &MultiForm<Rational>, op: &'static str, d: u32) -> Result<Vec<Rational>> {
    if form.num_vars() != 2 || form.degree() != d {
        return Err(Error::WrongShape {
            op,
            expected: d,
            got: form.degree(),
            vars: form.num_vars(),
        });
    }
    form.binary_coeffs(&Rational::zero())
}

/// `(I, J)` of a rational binary quartic.
pub fn invariants_quartic(form: &MultiForm<Rational>) -> Result<(Rational, Rational)> {
    quartic_invariants_of(&binary_coeffs_of(form, "invariants_quartic", 4)?)
}

/// Discriminant of a rational binary cubic.
pub fn invariant_cubic_disc(form: &MultiForm<Rational>) -> Result<Rational> {
    cubic_discriminant_of(&binary_coeffs_of(form, "invariant_cubic_disc", 3)?)
}

/// Homogeneous resultant of two binary quadratics `q[i] X_0^i X_1^(2-i)`:
/// `(a0 b2 - a2 b0)^2 - (a0 b1 - a1 b0)(a1 b2 - a2 b1)`. It vanishes exactly when
/// the two forms share a root on the projective line, or one of them is zero.
pub fn quadratic_resultant<R: CoeffRing>(a: &[R; 3], b: &[R; 3]) -> R {
    let x = a[0].mul(&b[2]).sub(&a[2].mul(&b[0]));
    let y = a[0].mul(&b[1]).sub(&a[1].mul(&b[0]));
    let z = a[1].mul(&b[2]).sub(&a[2].mul(&b[1]));
    x.mul(&x).sub(&y.mul(&z))
}
