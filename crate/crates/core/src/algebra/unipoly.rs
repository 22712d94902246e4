//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::linalg::determinant;
use super::rational::{self, rat, Rational};
use crate::error::{Error, Result};

/// Polynomial in one variable `t`; `coeffs[i]` multiplies `t^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Rational, k: u32) -> Self {
        let mut coeffs = vec![Rational::zero(); k as usize + 1];
        coeffs[k as usize] = c;
        Self::new(coeffs)
    }

    /// The linear polynomial `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), rat(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() as u32 - 1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Largest `k` with `t^k` dividing `self`; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| k as u32)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial") as usize;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient of an exact division, `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Multiplicity of `factor` (non-constant) in `self` (nonzero).
    pub fn valuation(&self, factor: &Self) -> u32 {
        assert!(!factor.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Substitutes `t -> t + shift`.
    pub fn shift(&self, shift: &Rational) -> Self {
        let lin = Self::new(vec![shift.clone(), rat(1)]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }
}

/// Monic gcd over Q.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        // keep the remainder sequence monic so coefficients stay small
        y = r.monic();
    }
    Ok(x.monic())
}

/// Yun's squarefree decomposition: monic, pairwise coprime squarefree factors with
/// their multiplicities, whose product is `f / lc(f)`.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::SquarefreeOfZero);
    }
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = gcd(f, &df)?;
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let mut c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d)?;
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides b");
        c = d.exact_div(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Squarefree part (product of the distinct monic irreducible factors).
pub fn radical(f: &UniPoly) -> Result<UniPoly> {
    Ok(squarefree_decomposition(f)?
        .into_iter()
        .fold(UniPoly::one(), |acc, (p, _)| &acc * &p))
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), written with
/// descending coefficients: n shifted rows of `f`, then m shifted rows of `g`.
pub fn sylvester_matrix(f: &[Rational], m: usize, g: &[Rational], n: usize) -> Vec<Vec<Rational>> {
    // f, g given high-to-low with formal degrees m, n
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in f.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in g.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Classical resultant `Res(f, g) = lc(f)^deg g * prod_{f(a)=0} g(a)`, computed as
/// the Sylvester determinant.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Rational> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m as usize, n as usize),
        _ => return Err(Error::ResultantOfZero),
    };
    if m == 0 && n == 0 {
        return Ok(rat(1));
    }
    let fr: Vec<Rational> = f.coeffs.iter().rev().cloned().collect();
    let gr: Vec<Rational> = g.coeffs.iter().rev().cloned().collect();
    Ok(determinant(sylvester_matrix(&fr, m, &gr, n)))
}

/// Discriminant of a polynomial of degree `n >= 1`:
/// `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant(f: &UniPoly) -> Result<Rational> {
    let n = f.degree().ok_or(Error::ResultantOfZero)?;
    if n == 0 {
        return Err(Error::InvalidArgument("discriminant of a constant".into()));
    }
    if n == 1 {
        return Ok(rat(1));
    }
    let res = resultant(f, &f.derivative())?;
    let sign = rational::sign_pow(n * (n - 1) / 2);
    Ok(sign * res / f.leading_coeff().unwrap())
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n as u32).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n as u32).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rational::to_string(c))?,
                _ if c.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{}*t^{k}", rational::to_string(c))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn zero_has_sentinel_degree() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn gcd_examples() {
        // (t^2 - 1, t - 1) -> t - 1
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        // (t^3, t^2) -> t^2
        assert_eq!(gcd(&p(&[0, 0, 0, 1]), &p(&[0, 0, 1])).unwrap(), p(&[0, 0, 1]));
        // (t^2 + 1, t^2 + t) -> 1
        assert_eq!(gcd(&p(&[1, 0, 1]), &p(&[0, 1, 1])).unwrap(), p(&[1]));
        assert_eq!(gcd(&UniPoly::zero(), &UniPoly::zero()), Err(Error::GcdOfZero));
        assert_eq!(gcd(&UniPoly::zero(), &p(&[2, 4])).unwrap(), p(&[1, 2]).monic());
    }

    #[test]
    fn squarefree_examples() {
        // (t-1)^2 (t+2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(
            squarefree_decomposition(&f).unwrap(),
            vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&p(&[0, 0, 0, 0, 0, 1])).unwrap(),
            vec![(p(&[0, 1]), 5)]
        );
        // t^4 - 2t^2 + 1 = (t^2 - 1)^2
        assert_eq!(
            squarefree_decomposition(&p(&[1, 0, -2, 0, 1])).unwrap(),
            vec![(p(&[-1, 0, 1]), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&UniPoly::zero()),
            Err(Error::SquarefreeOfZero)
        );
        // non-monic input: factors are monic, constant dropped
        let g = p(&[0, 0, 6]);
        assert_eq!(squarefree_decomposition(&g).unwrap(), vec![(p(&[0, 1]), 2)]);
    }

    #[test]
    fn resultant_examples() {
        // Res(t - 1, t - 3) = (t - 3) evaluated at 1
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-3, 1])).unwrap(), rat(-2));
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[-1, 1])).unwrap(), rat(2));
        assert_eq!(resultant(&p(&[0, 0, 1]), &p(&[1, 1])).unwrap(), rat(1));
        let f = p(&[3, -1, 0, 2]);
        assert_eq!(resultant(&f, &f).unwrap(), rat(0));
        assert_eq!(resultant(&UniPoly::zero(), &f), Err(Error::ResultantOfZero));
        // constants: Res(c, g) = c^deg g
        assert_eq!(resultant(&p(&[2]), &p(&[1, 0, 1])).unwrap(), rat(4));
    }

    #[test]
    fn discriminants() {
        // t^2 + bt + c -> b^2 - 4c
        assert_eq!(discriminant(&p(&[3, 5, 1])).unwrap(), rat(13));
        // t^4 + a -> 256 a^3
        assert_eq!(discriminant(&p(&[-1, 0, 0, 0, 1])).unwrap(), rat(-256));
        assert_eq!(discriminant(&p(&[2, 3, 1]).pow(2)).unwrap(), rat(0));
    }

    #[test]
    fn division_and_shift() {
        let f = p(&[1, 2, 3, 4]);
        let g = p(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(&(&q * &g) + &r, f);
        assert_eq!(p(&[0, 0, 1]).shift(&rat(1)), p(&[1, 2, 1]));
        assert_eq!(f.eval(&ratio(1, 2)), ratio(13, 4));
        assert_eq!(p(&[0, 0, 4, 4]).valuation(&p(&[0, 1])), 2);
    }
}
