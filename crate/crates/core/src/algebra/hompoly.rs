//! Homogeneous polynomials in two variables `(s, t)`, i.e. sections of `O(m)` on
//! the projective line. Points of the line are `[s : t]`; the point at infinity of
//! the affine chart `s = 1` is `[0 : 1]`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational, RationalText};
use super::unipoly::{self, UniPoly};
use crate::error::{Error, Result};

/// `sum_i c_i s^(m-i) t^i`, stored through its affine chart `s = 1`.
///
/// Invariant: the affine polynomial has degree at most `degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly2 {
    degree: u32,
    affine: UniPoly,
}

/// A point `[s : t]` of the projective line with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    /// `[1 : t]`
    Affine(Rational),
    /// `[0 : 1]`
    Infinity,
}

impl HomPoly2 {
    pub fn zero(degree: u32) -> Self {
        HomPoly2 {
            degree,
            affine: UniPoly::zero(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        HomPoly2 {
            degree: 0,
            affine: UniPoly::constant(c),
        }
    }

    /// Builds `sum c * s^i t^j` from `(i, j, c)` triples, all with `i + j = degree`.
    pub fn from_terms(degree: u32, terms: &[(u32, u32, Rational)]) -> Result<Self> {
        let mut coeffs = vec![Rational::zero(); degree as usize + 1];
        for (i, j, c) in terms {
            if i + j != degree {
                return Err(Error::InvalidPencil(format!(
                    "monomial s^{i} t^{j} does not have degree {degree}"
                )));
            }
            coeffs[*j as usize] += c;
        }
        Ok(HomPoly2 {
            degree,
            affine: UniPoly::new(coeffs),
        })
    }

    /// Pads `f(t)` with powers of `s` up to degree `m`.
    pub fn homogenize(f: &UniPoly, m: u32) -> Result<Self> {
        if let Some(actual) = f.degree() {
            if actual > m {
                return Err(Error::DegreeTooSmall { declared: m, actual });
            }
        }
        Ok(HomPoly2 {
            degree: m,
            affine: f.clone(),
        })
    }

    /// Sets `s = 1`.
    pub fn dehomogenize(&self) -> UniPoly {
        self.affine.clone()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.affine.is_zero()
    }

    /// Coefficient of `s^(m-j) t^j`.
    pub fn coeff_t(&self, j: u32) -> Rational {
        self.affine.coeff(j)
    }

    /// `(s_exp, t_exp, coeff)` for every nonzero term, by increasing `t` exponent.
    pub fn terms(&self) -> Vec<(u32, u32, Rational)> {
        self.affine
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (self.degree - j as u32, j as u32, c.clone()))
            .collect()
    }

    /// Order of vanishing at `[0 : 1]`, i.e. the power of `s` dividing `self`.
    /// `None` for the zero polynomial.
    pub fn order_at_infinity(&self) -> Option<u32> {
        self.affine.degree().map(|k| self.degree - k)
    }

    pub fn eval(&self, p: &ProjPoint) -> Rational {
        match p {
            ProjPoint::Affine(t) => self.affine.eval(t),
            ProjPoint::Infinity => self.affine.coeff(self.degree),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HomPoly2 {
            degree: self.degree,
            affine: self.affine.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&UniPoly, &UniPoly) -> UniPoly) -> Self {
        // zero of any degree is absorbed; nonzero summands must agree
        let degree = if self.degree == other.degree || other.is_zero() {
            self.degree
        } else if self.is_zero() {
            other.degree
        } else {
            panic!(
                "adding homogeneous polynomials of degrees {} and {}",
                self.degree, other.degree
            )
        };
        HomPoly2 {
            degree,
            affine: op(&self.affine, &other.affine),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        HomPoly2 {
            degree: self.degree + other.degree,
            affine: &self.affine * &other.affine,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        HomPoly2 {
            degree: self.degree * e,
            affine: self.affine.pow(e),
        }
    }

    /// Exact quotient; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() || other.degree > self.degree {
            return None;
        }
        if self.is_zero() {
            return Some(HomPoly2::zero(self.degree - other.degree));
        }
        let degree = self.degree - other.degree;
        let q = self.affine.exact_div(&other.affine)?;
        (q.degree().unwrap_or(0) <= degree).then_some(HomPoly2 { degree, affine: q })
    }

    /// Affine part made monic, with the same total degree.
    pub fn normalize(&self) -> Self {
        HomPoly2 {
            degree: self.degree,
            affine: self.affine.monic(),
        }
    }
}

/// Bihomogeneous gcd, normalized so its affine part is monic. Its total degree is
/// the number of common zeros on the projective line, counted with multiplicity,
/// including the point at infinity.
pub fn gcd(a: &HomPoly2, b: &HomPoly2) -> Result<HomPoly2> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(Error::GcdOfZero),
        (true, false) => Ok(b.normalize()),
        (false, true) => Ok(a.normalize()),
        (false, false) => {
            let affine = unipoly::gcd(&a.affine, &b.affine)?;
            let inf = a
                .order_at_infinity()
                .unwrap()
                .min(b.order_at_infinity().unwrap());
            Ok(HomPoly2 {
                degree: affine.degree().unwrap() + inf,
                affine,
            })
        }
    }
}

impl fmt::Display for HomPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .rev()
            .map(|(i, j, c)| format!("{}*s^{i}*t^{j}", rational::to_string(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HomPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly2[{}]({self})", self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct HomPoly2Json {
    degree: u32,
    /// `[s_exp, t_exp, "coeff"]`
    terms: Vec<(u32, u32, RationalText)>,
}

impl Serialize for HomPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HomPoly2Json {
            degree: self.degree,
            terms: self
                .terms()
                .into_iter()
                .map(|(i, j, c)| (i, j, RationalText(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HomPoly2Json::deserialize(d)?;
        let terms: Vec<_> = raw.terms.into_iter().map(|(i, j, c)| (i, j, c.0)).collect();
        HomPoly2::from_terms(raw.degree, &terms).map_err(serde::de::Error::custom)
    }
}
