use num_traits::Zero;

use super::{StabilityVerdict, Status, WeightVector};
use crate::algebra::unipoly::{self, UniPoly};
use crate::algebra::{MultiForm, Rational};
use crate::error::{Error, Result};

/// Where the root of largest multiplicity of a binary form sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootMultiplicity {
    /// Root `[0 : 1]`, i.e. a power of `X_0` divides the form.
    AtX0Zero(u32),
    /// Root `[1 : 0]`, i.e. a power of `X_1` divides the form.
    AtX1Zero(u32),
    /// Roots of a monic squarefree factor of `F(x, 1)` away from `x = 0`.
    Affine(u32, UniPoly),
}

impl RootMultiplicity {
    pub fn multiplicity(&self) -> u32 {
        match self {
            RootMultiplicity::AtX0Zero(k)
            | RootMultiplicity::AtX1Zero(k)
            | RootMultiplicity::Affine(k, _) => *k,
        }
    }
}

/// Largest root multiplicity of a nonzero binary form, over the algebraic closure.
///
/// The two coordinate points are read from the lowest and highest `X_0` degree in
/// the support; the remaining roots come from a squarefree decomposition of the
/// dehomogenization `F(x, 1)` with the power of `x` removed. Ties prefer the
/// coordinate points.
pub fn max_root_multiplicity(form: &MultiForm<Rational>) -> Result<RootMultiplicity> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let coeffs = form.binary_coeffs(&Rational::zero())?;
    let d = form.degree();
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap() as u32;
    let high = coeffs.iter().rposition(|c| !c.is_zero()).unwrap() as u32;
    let mut best = RootMultiplicity::AtX0Zero(low);
    if d - high > best.multiplicity() {
        best = RootMultiplicity::AtX1Zero(d - high);
    }
    let affine = UniPoly::new(coeffs[low as usize..].to_vec());
    for (factor, k) in unipoly::squarefree_decomposition(&affine)? {
        if k > best.multiplicity() {
            best = RootMultiplicity::Affine(k, factor);
        }
    }
    Ok(best)
}

/// `SL_2`-semistability of a binary form: unstable iff a root has multiplicity
/// `> d/2`, stable iff every root has multiplicity `< d/2`.
pub fn binary_semistable(form: &MultiForm<Rational>) -> Result<StabilityVerdict> {
    if form.num_vars() != 2 {
        return Err(Error::WrongShape {
            op: "binary_semistable",
            expected: form.degree(),
            got: form.degree(),
            vars: form.num_vars(),
        });
    }
    let top = max_root_multiplicity(form)?;
    let k = top.multiplicity();
    let d = form.degree();
    let rule = format!("binary: largest root multiplicity {k} against d/2 = {d}/2");
    if 2 * k > d {
        // a coordinate root is destabilized by the torus of these coordinates
        let certificate = match top {
            RootMultiplicity::AtX0Zero(_) => Some(vec![1, -1]),
            RootMultiplicity::AtX1Zero(_) => Some(vec![-1, 1]),
            RootMultiplicity::Affine(..) => None,
        };
        Ok(StabilityVerdict {
            status: Status::Unstable,
            certificate: certificate.map(|c| WeightVector::new(c).expect("sums to zero")),
            rule,
        })
    } else if 2 * k == d {
        Ok(StabilityVerdict::new(Status::Semistable, rule))
    } else {
        Ok(StabilityVerdict::new(Status::Stable, rule))
    }
}
