//! Exact simplex for small standard-form programs with integer data.
//!
//! `maximize c.x subject to A x = b, x >= 0`, solved with Bland's rule on a
//! fraction-free tableau: every entry is an integer multiple of `1/det`, where
//! `det` is the current basis determinant, and each pivot divides exactly by the
//! previous one. The arithmetic runs in checked `i64`, then `i128`, then `BigInt`,
//! moving up whenever something overflows, so results are always exact.
//!
//! Infeasible programs come with a Farkas certificate `y`: `y.A_j >= 0` for every
//! column and `y.b < 0`.

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use crate::algebra::Rational;

/// `maximize objective.x` subject to `rows x = rhs`, `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardLp {
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub objective: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
        /// Rank of the constraint matrix.
        rank: usize,
    },
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
}

trait Scalar:
    Clone + Ord + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv + From<i64> + Into<BigInt>
{
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

/// `None` stands for an overflow of the scalar type.
type Step<T> = Option<T>;

impl StandardLp {
    pub fn new(rows: Vec<Vec<i64>>, rhs: Vec<i64>, objective: Vec<i64>) -> Self {
        assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
        for r in &rows {
            assert_eq!(r.len(), objective.len(), "row width must match the objective");
        }
        StandardLp {
            rows,
            rhs,
            objective,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::<i64>::solve(self)
            .or_else(|| Tableau::<i128>::solve(self))
            .or_else(|| Tableau::<BigInt>::solve(self))
            .expect("BigInt arithmetic cannot overflow")
    }
}

fn to_rational<T: Scalar>(num: &T, den: &T) -> Rational {
    Rational::new(num.clone().into(), den.clone().into())
}

struct Tableau<T> {
    /// `m` constraint rows; columns are the `n` variables, `m` artificials, rhs
    t: Vec<Vec<T>>,
    z: Vec<T>,
    basis: Vec<usize>,
    det: T,
    n: usize,
    m: usize,
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.n + self.m
    }

    /// Sign of the represented value `x / det`.
    fn sign(&self, x: &T) -> i32 {
        let s = if x.is_zero() {
            0
        } else if x.is_positive() {
            1
        } else {
            -1
        };
        if self.det.is_negative() {
            -s
        } else {
            s
        }
    }

    fn pivot(&mut self, r: usize, c: usize) -> Step<()> {
        let p = self.t[r][c].clone();
        let pivot_row = self.t[r].clone();
        let update = |row: &mut Vec<T>, det: &T| -> Step<()> {
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let num = x.checked_mul(&p)?.checked_sub(&f.checked_mul(y)?)?;
                *x = num.checked_div(det)?;
            }
            Some(())
        };
        for i in 0..self.m {
            if i != r {
                update(&mut self.t[i], &self.det)?;
            }
        }
        update(&mut self.z, &self.det)?;
        self.det = p;
        self.basis[r] = c;
        Some(())
    }

    /// Bland's rule on columns `< limit`. `Some(false)` means unbounded.
    fn optimize(&mut self, limit: usize) -> Step<bool> {
        loop {
            let Some(c) = (0..limit).find(|&j| self.sign(&self.z[j]) < 0) else {
                return Some(true);
            };
            let rhs = self.width();
            let mut leave: Option<usize> = None;
            for i in 0..self.m {
                if self.sign(&self.t[i][c]) <= 0 {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(k) => {
                        // t[i][rhs] / t[i][c] against t[k][rhs] / t[k][c]; both divisors share a sign
                        let lhs = self.t[i][rhs].checked_mul(&self.t[k][c])?;
                        let rhs_ = self.t[k][rhs].checked_mul(&self.t[i][c])?;
                        let ord = if self.t[i][c].is_positive() == self.t[k][c].is_positive() {
                            lhs.cmp(&rhs_)
                        } else {
                            rhs_.cmp(&lhs)
                        };
                        ord.is_lt() || (ord.is_eq() && self.basis[i] < self.basis[k])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            match leave {
                Some(r) => self.pivot(r, c)?,
                None => return Some(false),
            }
        }
    }

    fn solve(lp: &StandardLp) -> Step<LpOutcome> {
        let (m, n) = (lp.rows.len(), lp.num_vars());
        // rows with negative rhs are negated so the artificial basis is feasible
        let signs: Vec<i64> = lp.rhs.iter().map(|&b| if b < 0 { -1 } else { 1 }).collect();
        let mut t = Vec::with_capacity(m);
        for (i, row) in lp.rows.iter().enumerate() {
            let mut r: Vec<T> = row.iter().map(|&x| T::from(x * signs[i])).collect();
            r.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            r.push(T::from(lp.rhs[i] * signs[i]));
            t.push(r);
        }
        // phase 1: maximize -sum(artificials); reduced costs are -column sums
        let mut z: Vec<T> = vec![T::zero(); n + m + 1];
        for (j, zj) in z.iter_mut().enumerate() {
            if (n..n + m).contains(&j) {
                continue;
            }
            let mut s = T::zero();
            for row in &t {
                s = s.checked_sub(&row[j])?;
            }
            *zj = s;
        }
        let mut tab = Tableau {
            t,
            z,
            basis: (n..n + m).collect(),
            det: T::one(),
            n,
            m,
        };
        tab.optimize(n + m)?;
        let rhs = n + m;
        if !tab.z[rhs].is_zero() {
            // y_i = r_{a_i} - 1, where r is the reduced cost of artificial i
            let farkas = (0..m)
                .map(|i| {
                    let num = tab.z[n + i].checked_sub(&tab.det)?;
                    Some(to_rational(&num, &tab.det) * Rational::from_integer(signs[i].into()))
                })
                .collect::<Option<Vec<_>>>()?;
            return Some(LpOutcome::Infeasible { farkas });
        }
        // drive artificials out of the basis; rows where that fails are redundant
        let mut redundant = 0;
        for r in 0..m {
            if tab.basis[r] < n {
                continue;
            }
            match (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                Some(c) => tab.pivot(r, c)?,
                None => redundant += 1,
            }
        }
        // phase 2 reduced costs: det * (c_B B^-1 A - c)
        let mut z = vec![T::zero(); n + m + 1];
        for (j, zj) in z.iter_mut().enumerate() {
            let mut s = if j < n {
                T::zero().checked_sub(&T::from(lp.objective[j]).checked_mul(&tab.det)?)?
            } else {
                T::zero()
            };
            for (row, &b) in tab.t.iter().zip(&tab.basis) {
                if b < n && lp.objective[b] != 0 {
                    s = s.checked_add(&T::from(lp.objective[b]).checked_mul(&row[j])?)?;
                }
            }
            *zj = s;
        }
        tab.z = z;
        if !tab.optimize(n)? {
            return Some(LpOutcome::Unbounded);
        }
        let mut point = vec![Rational::zero(); n];
        for (row, &b) in tab.t.iter().zip(&tab.basis) {
            if b < n {
                point[b] = to_rational(&row[rhs], &tab.det);
            }
        }
        Some(LpOutcome::Optimal {
            value: to_rational(&tab.z[rhs], &tab.det),
            point,
            rank: m - redundant,
        })
    }
}
