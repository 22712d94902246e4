use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::invariants::{cubic_discriminant_of, quadratic_resultant, quartic_invariants_of};
use crate::algebra::hompoly::{self, HomPoly2, ProjPoint};
use crate::algebra::rational::{rat, ratio, serde_rational, Rational};
use crate::algebra::unipoly::{self, UniPoly};
use crate::algebra::MultiForm;
use crate::error::{Error, Result};
use crate::semistability::{binary_semistable, StabilityVerdict, Status};

/// `F = sum_j c_j(s, t) X_0^j X_1^(d-j)` with every `c_j` of degree `m`: a pencil
/// of binary cubics or quartics over the projective line with trivial `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BinaryPencilInput", into = "BinaryPencilInput")]
pub struct BinaryPencil {
    d: u32,
    m: u32,
    coeffs: Vec<HomPoly2>,
}

/// JSON shape of a pencil: `coefficients` maps `j` to the coefficient of
/// `X_0^j X_1^(d-j)`; absent indices are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryPencilInput {
    pub d: u32,
    pub m: u32,
    pub coefficients: BTreeMap<u32, HomPoly2>,
}

impl TryFrom<BinaryPencilInput> for BinaryPencil {
    type Error = Error;
    fn try_from(raw: BinaryPencilInput) -> Result<Self> {
        if let Some(&j) = raw.coefficients.keys().find(|&&j| j > raw.d) {
            return Err(Error::InvalidPencil(format!(
                "coefficient index {j} exceeds d = {}",
                raw.d
            )));
        }
        let coeffs = (0..=raw.d)
            .map(|j| {
                raw.coefficients
                    .get(&j)
                    .cloned()
                    .unwrap_or_else(|| HomPoly2::zero(raw.m))
            })
            .collect();
        BinaryPencil::new(raw.d, raw.m, coeffs)
    }
}

impl From<BinaryPencil> for BinaryPencilInput {
    fn from(p: BinaryPencil) -> Self {
        BinaryPencilInput {
            d: p.d,
            m: p.m,
            coefficients: p
                .coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as u32, c))
                .collect(),
        }
    }
}

impl BinaryPencil {
    /// `coeffs[j]` multiplies `X_0^j X_1^(d-j)`; zero coefficients may have any degree.
    pub fn new(d: u32, m: u32, coeffs: Vec<HomPoly2>) -> Result<Self> {
        if d != 3 && d != 4 {
            return Err(Error::InvalidPencil(format!("d must be 3 or 4, got {d}")));
        }
        if coeffs.len() != d as usize + 1 {
            return Err(Error::InvalidPencil(format!(
                "expected {} coefficients, got {}",
                d + 1,
                coeffs.len()
            )));
        }
        let mut normalized = Vec::with_capacity(coeffs.len());
        for (j, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                normalized.push(HomPoly2::zero(m));
            } else if c.degree() != m {
                return Err(Error::InvalidPencil(format!(
                    "coefficient {j} has degree {}, expected m = {m}",
                    c.degree()
                )));
            } else {
                normalized.push(c);
            }
        }
        if normalized.iter().all(HomPoly2::is_zero) {
            return Err(Error::InvalidPencil("all coefficients vanish".into()));
        }
        Ok(BinaryPencil {
            d,
            m,
            coeffs: normalized,
        })
    }

    /// Builds a pencil from affine coefficients `c_j(t)`, homogenized to degree `m`.
    pub fn from_affine(d: u32, m: u32, coeffs: &[UniPoly]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|c| HomPoly2::homogenize(c, m))
            .collect::<Result<Vec<_>>>()?;
        BinaryPencil::new(d, m, coeffs)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[HomPoly2] {
        &self.coeffs
    }

    /// The pencil as a binary form over the coefficient ring.
    pub fn form(&self) -> MultiForm<HomPoly2> {
        MultiForm::from_binary_coeffs(self.coeffs.clone()).expect("binary shape")
    }

    /// The fiber over a point of the base; may be the zero form.
    pub fn fiber(&self, p: &ProjPoint) -> MultiForm<Rational> {
        self.form().specialize(p)
    }

    /// `δ`: 6 for quartics, whose degree-6 invariants `I^3, J^2` span the
    /// degree-6 piece; 4 for cubics, whose invariant ring is generated by `Disc`.
    pub fn delta(&self) -> u32 {
        if self.d == 4 {
            6
        } else {
            4
        }
    }

    /// The generators of the degree-`δ` invariants evaluated on the pencil:
    /// `[I^3, J^2]` for quartics and `[Disc]` for cubics, each of degree `δ m`.
    pub fn invariant_tuple(&self) -> Vec<HomPoly2> {
        let zero = HomPoly2::zero(self.delta() * self.m);
        let pad = |h: HomPoly2| if h.is_zero() { zero.clone() } else { h };
        if self.d == 4 {
            let (i, j) = quartic_invariants_of(&self.coeffs).expect("quartic");
            vec![pad(i.pow(3)), pad(j.pow(2))]
        } else {
            vec![pad(cubic_discriminant_of(&self.coeffs).expect("cubic"))]
        }
    }

    /// Whether the form over the function field of the base is semistable, i.e.
    /// some invariant of the generic fiber is nonzero.
    pub fn generic_fiber_semistable(&self) -> bool {
        self.invariant_tuple().iter().any(|h| !h.is_zero())
    }

    /// Fibers that are not semistable: the common zeros of the second
    /// derivatives (quartics: a root of multiplicity at least 3) or of the first
    /// derivatives (cubics: a repeated root). Computed without the invariants.
    pub fn unstable_locus(&self) -> Result<HomPoly2> {
        let mut generators = Vec::new();
        if self.d == 4 {
            let [a, b, c] = self.second_derivatives();
            for (p, q, r) in [(&a, &b, &c), (&c, &b, &a), (&b, &a, &c)] {
                generators.extend(lambda_coefficients(p, q, r));
            }
        } else {
            let (fx, fy) = self.first_derivatives();
            generators.push(quadratic_resultant(&fx, &fy));
        }
        let mut acc: Option<HomPoly2> = None;
        for g in generators.into_iter().filter(|g| !g.is_zero()) {
            acc = Some(match acc {
                None => g.normalize(),
                Some(a) => hompoly::gcd(&a, &g)?,
            });
        }
        acc.ok_or(Error::GenericFiberUnstable)
    }

    /// `∂F/∂X_0`, `∂F/∂X_1` of a cubic, as quadratics in `X_0^i X_1^(2-i)`.
    fn first_derivatives(&self) -> ([HomPoly2; 3], [HomPoly2; 3]) {
        let c = &self.coeffs;
        let fx = [0, 1, 2].map(|i| c[i + 1].scale(&rat(i as i64 + 1)));
        let fy = [0, 1, 2].map(|i| c[i].scale(&rat(3 - i as i64)));
        (fx, fy)
    }

    /// `F_xx, F_xy, F_yy` of a quartic, as quadratics in `X_0^i X_1^(2-i)`.
    fn second_derivatives(&self) -> [[HomPoly2; 3]; 3] {
        let c = &self.coeffs;
        let coef = |j: usize, k: i64| c[j].scale(&rat(k));
        // X_0^j X_1^(4-j): d^2/dX_0^2 -> j(j-1) X_0^(j-2) X_1^(4-j)
        let fxx = [0, 1, 2].map(|i| coef(i + 2, ((i + 2) * (i + 1)) as i64));
        let fxy = [0, 1, 2].map(|i| coef(i + 1, ((i + 1) * (3 - i)) as i64));
        let fyy = [0, 1, 2].map(|i| coef(i, ((4 - i) * (3 - i)) as i64));
        [fxx, fxy, fyy]
    }
}

/// Coefficients in `λ` of `Res(p, q + λ r)`, a quadratic polynomial in `λ`.
fn lambda_coefficients(p: &[HomPoly2; 3], q: &[HomPoly2; 3], r: &[HomPoly2; 3]) -> [HomPoly2; 3] {
    let shifted = |sign: i64| -> [HomPoly2; 3] {
        [0, 1, 2].map(|i| q[i].add(&r[i].scale(&rat(sign))))
    };
    let r0 = quadratic_resultant(p, q);
    let r1 = quadratic_resultant(p, &shifted(1));
    let rm = quadratic_resultant(p, &shifted(-1));
    let half = ratio(1, 2);
    let c2 = r1.add(&rm).scale(&half).sub(&r0);
    let c1 = r1.sub(&rm).scale(&half);
    [r0, c1, c2]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GitHeightReport {
    #[serde(rename = "htGIT", with = "serde_rational")]
    pub ht_git: Rational,
    #[serde(with = "serde_rational")]
    pub ht_int: Rational,
    pub contact_length: u64,
    pub delta: u32,
    pub all_fibers_semistable: bool,
}

/// GIT height of the pencil against the descended line bundle `O(1)^(1/δ)`.
///
/// The invariant tuple defines a rational map from the base to the projective
/// space of degree-`δ` invariants; clearing its base locus (the gcd of the tuple)
/// leaves a morphism of degree `δ m - deg gcd`. For cubics the target is a point
/// and the height is 0.
pub fn git_height(p: &BinaryPencil) -> Result<GitHeightReport> {
    if !p.generic_fiber_semistable() {
        return Err(Error::GenericFiberUnstable);
    }
    let delta = p.delta();
    let full = (delta * p.m) as u64;
    let contact = base_locus_degree(&p.invariant_tuple())? as u64;
    let ht_git = if p.d == 4 {
        ratio((full - contact) as i64, delta as i64)
    } else {
        Rational::zero()
    };
    let locus = p.unstable_locus()?;
    Ok(GitHeightReport {
        ht_git,
        ht_int: rat(p.m as i64),
        contact_length: contact,
        delta,
        all_fibers_semistable: locus.degree() == 0,
    })
}

/// Degree of the gcd of the nonzero members of the tuple.
fn base_locus_degree(tuple: &[HomPoly2]) -> Result<u32> {
    let mut acc: Option<HomPoly2> = None;
    for h in tuple.iter().filter(|h| !h.is_zero()) {
        acc = Some(match acc {
            None => h.normalize(),
            Some(a) => hompoly::gcd(&a, h)?,
        });
    }
    Ok(acc.ok_or(Error::GenericFiberUnstable)?.degree())
}

/// Length of the preimage of the unstable locus, summed point by point over the
/// unstable fibers: at a point where the generators vanish to orders `v_k`, the
/// local length is `min_k v_k`. The points come from [`BinaryPencil::unstable_locus`],
/// the orders from the invariant tuple.
pub fn contact_length_by_valuations(p: &BinaryPencil) -> Result<u64> {
    if !p.generic_fiber_semistable() {
        return Err(Error::GenericFiberUnstable);
    }
    let tuple = p.invariant_tuple();
    let locus = p.unstable_locus()?;
    let mut total = 0u64;
    if locus.order_at_infinity().unwrap_or(0) > 0 {
        total += tuple
            .iter()
            .filter_map(HomPoly2::order_at_infinity)
            .min()
            .expect("nonzero tuple") as u64;
    }
    let affine = locus.dehomogenize();
    if !affine.is_constant() {
        // split the radical so that every generator has a constant order along each piece
        let mut pieces: Vec<(UniPoly, Vec<Option<u32>>)> = vec![(unipoly::radical(&affine)?, Vec::new())];
        for h in &tuple {
            let mut next = Vec::new();
            for (piece, orders) in pieces {
                for (part, v) in split_by_order(&piece, &h.dehomogenize())? {
                    let mut orders = orders.clone();
                    orders.push(v);
                    next.push((part, orders));
                }
            }
            pieces = next;
        }
        for (piece, orders) in pieces {
            let v = orders.iter().flatten().min().expect("nonzero tuple");
            total += piece.degree().unwrap() as u64 * *v as u64;
        }
    }
    Ok(total)
}

/// Splits a squarefree `b` into factors on whose roots `h` has a constant order
/// of vanishing; `None` stands for `h = 0`.
fn split_by_order(b: &UniPoly, h: &UniPoly) -> Result<Vec<(UniPoly, Option<u32>)>> {
    if h.is_zero() {
        return Ok(vec![(b.clone(), None)]);
    }
    let mut out = Vec::new();
    let (mut cur, mut rest, mut k) = (b.clone(), h.clone(), 0);
    while !cur.is_constant() {
        let g = unipoly::gcd(&cur, &rest)?;
        let exact = cur.exact_div(&g).expect("gcd divides");
        if !exact.is_constant() {
            out.push((exact, Some(k)));
        }
        rest = rest.exact_div(&g).expect("gcd divides");
        cur = g;
        k += 1;
    }
    Ok(out)
}

/// Machine check of `ht_int = ht_GIT + contact / δ`, of the point-by-point
/// contact length against the base-locus degree, and of `ht_GIT = ht_int` exactly
/// when every fiber is semistable.
pub fn verify_contact_identity(p: &BinaryPencil) -> Result<bool> {
    let r = git_height(p)?;
    let sum = &r.ht_git + ratio(r.contact_length as i64, r.delta as i64);
    let by_points = contact_length_by_valuations(p)?;
    Ok(sum == r.ht_int
        && by_points == r.contact_length
        && (r.ht_git == r.ht_int) == r.all_fibers_semistable
        && r.ht_git <= r.ht_int
        && r.ht_git >= Rational::zero())
}

/// A non-semistable fiber, or a family of them over the roots of `locus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRecord {
    /// Squarefree factor of the unstable locus; `s` is the point at infinity.
    pub locus: HomPoly2,
    pub verdict: StabilityVerdict,
}

/// Lists the fibers where semistability fails. Linear factors and the point at
/// infinity are decided by specializing and applying the binary rule; higher
/// degree factors of the unstable locus are reported without specializing.
pub fn fiber_semistability_profile(p: &BinaryPencil) -> Result<Vec<FiberRecord>> {
    let locus = match p.unstable_locus() {
        Ok(l) => l,
        Err(Error::GenericFiberUnstable) => {
            return Ok(vec![FiberRecord {
                locus: HomPoly2::constant(rat(0)),
                verdict: StabilityVerdict::new(Status::Unstable, "every fiber is unstable"),
            }])
        }
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    let affine = locus.dehomogenize();
    if !affine.is_constant() {
        for (factor, _) in unipoly::squarefree_decomposition(&affine)? {
            if factor.is_constant() {
                continue;
            }
            let verdict = if factor.degree() == Some(1) {
                let root = -factor.coeff(0) / factor.coeff(1);
                fiber_verdict(&p.fiber(&ProjPoint::Affine(root)))?
            } else {
                StabilityVerdict::new(
                    Status::Unstable,
                    "unstable locus: repeated root of excess multiplicity",
                )
            };
            let degree = factor.degree().unwrap();
            out.push(FiberRecord {
                locus: HomPoly2::homogenize(&factor, degree)?,
                verdict,
            });
        }
    }
    if locus.order_at_infinity().unwrap_or(0) > 0 {
        out.push(FiberRecord {
            locus: HomPoly2::from_terms(1, &[(1, 0, rat(1))])?,
            verdict: fiber_verdict(&p.fiber(&ProjPoint::Infinity))?,
        });
    }
    Ok(out)
}

fn fiber_verdict(f: &MultiForm<Rational>) -> Result<StabilityVerdict> {
    if f.is_zero() {
        Ok(StabilityVerdict::new(Status::Unstable, "zero fiber"))
    } else {
        binary_semistable(f)
    }
}
