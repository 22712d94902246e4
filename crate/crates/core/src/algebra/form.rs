//! Sparse homogeneous forms in `N + 1` variables.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hompoly::{HomPoly2, ProjPoint};
use super::rational::{rat, Rational, RationalText};
use super::CoeffRing;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Homogeneous form of degree `degree` in `num_vars` variables `X_0, ..., X_N`.
///
/// Every stored exponent vector sums to `degree` and no stored coefficient is
/// zero. The empty term map is the zero form; operations that need a nonzero
/// form reject it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiForm<R> {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, R>,
}

impl<R: CoeffRing> MultiForm<R> {
    pub fn new(
        num_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, R)>,
    ) -> Result<Self> {
        if num_vars < 2 {
            return Err(Error::InvalidForm(format!(
                "need at least 2 variables, got {num_vars}"
            )));
        }
        if degree < 1 {
            return Err(Error::InvalidForm("degree must be at least 1".into()));
        }
        let mut map: BTreeMap<Exponent, R> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::InvalidForm(format!(
                    "exponent {e:?} has {} entries, expected {num_vars}",
                    e.len()
                )));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidForm(format!(
                    "exponent {e:?} does not sum to {degree}"
                )));
            }
            match map.get_mut(&e) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiForm {
            num_vars,
            degree,
            terms: map,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `N` in `P^N`.
    pub fn dim(&self) -> usize {
        self.num_vars - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &R)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&R> {
        self.terms.get(e)
    }

    /// Renames `X_i` to `X_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.num_vars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = vec![0; e.len()];
            for (i, &k) in e.iter().enumerate() {
                f[perm[i]] = k;
            }
            (f, c.clone())
        });
        MultiForm::new(self.num_vars, self.degree, terms).expect("permutation keeps shape")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a.scale(c)));
        MultiForm::new(self.num_vars, self.degree, terms).expect("scaling keeps shape")
    }

    fn require_binary(&self, op: &'static str) -> Result<()> {
        if self.num_vars != 2 {
            return Err(Error::WrongShape {
                op,
                expected: self.degree,
                got: self.degree,
                vars: self.num_vars,
            });
        }
        Ok(())
    }

    /// For a binary form, `c[j]` is the coefficient of `X_0^j X_1^(d-j)`.
    /// Missing coefficients are filled with `zero`.
    pub fn binary_coeffs(&self, zero: &R) -> Result<Vec<R>> {
        self.require_binary("binary_coeffs")?;
        Ok((0..=self.degree)
            .map(|j| {
                self.terms
                    .get(&vec![j, self.degree - j])
                    .cloned()
                    .unwrap_or_else(|| zero.clone())
            })
            .collect())
    }

    /// Binary form from coefficients `c[j]` of `X_0^j X_1^(d-j)`.
    pub fn from_binary_coeffs(coeffs: Vec<R>) -> Result<Self> {
        let d = coeffs.len() as u32 - 1;
        MultiForm::new(
            2,
            d,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(j, c)| (vec![j as u32, d - j as u32], c)),
        )
    }
}

impl MultiForm<Rational> {
    /// `F(a X_0 + b X_1, c X_0 + e X_1)` for a binary form `F` and `g = [[a, b], [c, e]]`.
    pub fn compose_binary(&self, g: [[Rational; 2]; 2]) -> Result<Self> {
        let d = self.degree as usize;
        let coeffs = self.binary_coeffs(&Rational::zero())?;
        // polynomials in (X_0, X_1) stored as X_0-exponent -> coefficient
        let x_image = vec![g[0][1].clone(), g[0][0].clone()];
        let y_image = vec![g[1][1].clone(), g[1][0].clone()];
        let mut out = vec![Rational::zero(); d + 1];
        for (j, c) in coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let mut prod = vec![c.clone()];
            for _ in 0..j {
                prod = convolve(&prod, &x_image);
            }
            for _ in 0..d - j {
                prod = convolve(&prod, &y_image);
            }
            for (k, v) in prod.into_iter().enumerate() {
                out[k] += v;
            }
        }
        MultiForm::from_binary_coeffs(out)
    }

    /// Binary form from integer coefficients of `X_0^j X_1^(d-j)`, `j = 0..=d`.
    pub fn from_binary_ints(coeffs: &[i64]) -> Self {
        MultiForm::from_binary_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
            .expect("at least one coefficient")
    }

    pub fn monomial(exponent: Exponent) -> Self {
        let d = exponent.iter().sum();
        MultiForm::new(exponent.len(), d, [(exponent, rat(1))]).expect("monomial shape")
    }

    /// `X_0^d + ... + X_N^d`
    pub fn fermat(num_vars: usize, d: u32) -> Self {
        let terms = (0..num_vars).map(|i| {
            let mut e = vec![0; num_vars];
            e[i] = d;
            (e, rat(1))
        });
        MultiForm::new(num_vars, d, terms).expect("fermat shape")
    }
}

impl MultiForm<HomPoly2> {
    /// Specializes every coefficient at a point of the base line.
    pub fn specialize(&self, p: &ProjPoint) -> MultiForm<Rational> {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.eval(p)));
        MultiForm::new(self.num_vars, self.degree, terms).expect("specialization keeps shape")
    }
}

fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// JSON shape of a form: `{"numVars": 3, "degree": 2, "terms": [[[1, 1, 0], "1/2"], ...]}`.
/// Parses without checking the shape; [`MultiForm::try_from`] validates.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FormInput {
    pub num_vars: usize,
    pub degree: u32,
    pub terms: Vec<(Exponent, RationalText)>,
}

impl TryFrom<FormInput> for MultiForm<Rational> {
    type Error = Error;
    fn try_from(raw: FormInput) -> Result<Self> {
        MultiForm::new(raw.num_vars, raw.degree, raw.terms.into_iter().map(|(e, c)| (e, c.0)))
    }
}

impl Serialize for MultiForm<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormInput {
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), RationalText(c.clone())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiForm<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MultiForm::try_from(FormInput::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
