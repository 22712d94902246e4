//! Exact arithmetic: rationals, univariate and bivariate homogeneous polynomials,
//! sparse multivariate forms.

pub mod form;
pub mod hompoly;
pub mod linalg;
pub mod rational;
pub mod unipoly;

use std::fmt::Debug;

pub use form::{FormInput, MultiForm};
pub use hompoly::{HomPoly2, ProjPoint};
pub use rational::Rational;
pub use unipoly::UniPoly;

/// Commutative ring of form coefficients: the rationals, or homogeneous
/// polynomials on the base line for pencils.
pub trait CoeffRing: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl CoeffRing for Rational {
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl CoeffRing for HomPoly2 {
    fn is_zero(&self) -> bool {
        HomPoly2::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        HomPoly2::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        HomPoly2::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        HomPoly2::mul(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        HomPoly2::scale(self, c)
    }
}
