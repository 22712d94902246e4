//! One-call re-verification of the closed-form identities, the monotonicity of
//! `g_N`, the Griffiths height reduction and the GIT contact identity.
//!
//! Randomized suites take a seed and are reproducible: the same seed always
//! generates the same descriptors and pencils.

use std::fmt;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, rat, ratio, Rational};
use crate::algebra::{HomPoly2, UniPoly};
use crate::coeffs;
use crate::error::Result;
use crate::git_binary::{self, BinaryPencil};
use crate::pencils::{self, PencilDescriptor, SingularFiberRecord};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Outcome of one suite: how many checks ran, which failed, and remarks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {} ({} checks)", self.name, self.checks)?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for failure in self.failures.iter().take(20) {
            writeln!(f, "  failed: {failure}")?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  ... {} more failures", self.failures.len() - 20)?;
        }
        Ok(())
    }
}

/// Integrality of `12 F_stab` and `12 w`, vanishing of `F_stab(d, 1)` and
/// `F_stab(3, 3)`, and `F(d, N) = F_stab(d, N)` on the grid.
pub fn identities(ns: RangeInclusive<u32>, ds: RangeInclusive<u32>) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("identities");
    for n in ns.clone() {
        for d in ds.clone() {
            // the calculators reject values outside (1/12)Z
            let f = coeffs::f_stab(d, n);
            r.check(f.is_ok(), || format!("12 F_stab({d}, {n}) is not an integer"));
            let w = coeffs::w(n, d);
            r.check(w.is_ok(), || format!("12 w({n}, {d}) is not an integer"));
            if n == 1 {
                r.check(f.as_ref().is_ok_and(|v| *v == rat(0)), || format!("F_stab({d}, 1) != 0"));
            }
            if d >= 2 {
                let same = coeffs::check_f_equals_fstab(d, n)?;
                r.check(same, || format!("F({d}, {n}) != F_stab({d}, {n})"));
            }
        }
    }
    if ns.contains(&3) && ds.contains(&3) {
        r.check(coeffs::f_stab(3, 3)? == rat(0), || "F_stab(3, 3) != 0".into());
    }
    Ok(r)
}

/// `g_N` is non-increasing in `δ`, strictly for `N = 2` and `N >= 4`; for `N = 3`
/// it is flat between 2 and 3 and strictly decreasing afterwards; `g_1 = 0`.
pub fn monotonicity(ns: RangeInclusive<u32>, deltas: RangeInclusive<u32>) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("monotonicity");
    let lo = (*deltas.start()).max(2);
    let hi = *deltas.end();
    for n in ns {
        let values: Vec<Rational> = (lo..=hi).map(|delta| coeffs::g(n, delta)).collect::<Result<_>>()?;
        for (k, pair) in values.windows(2).enumerate() {
            let (delta, a, b) = (lo + k as u32, &pair[0], &pair[1]);
            r.check(a >= b, || format!("g_{n}({delta}) < g_{n}({})", delta + 1));
            let strict_expected = match n {
                1 => false,
                3 => delta >= 3,
                _ => true,
            };
            if strict_expected {
                r.check(a > b, || format!("g_{n}({delta}) = g_{n}({}) but strict decrease expected", delta + 1));
            } else {
                r.check(a == b, || format!("g_{n}({delta}) != g_{n}({}) but a plateau is expected", delta + 1));
            }
        }
        if n == 3 && lo <= 2 && hi >= 3 {
            let plateau = values[0] == rat(1) && values[1] == rat(1);
            r.check(plateau, || "g_3(2) = g_3(3) = 1 fails".into());
            r.notes.push("N=3 plateau: g_3(2) = g_3(3) = 1, strictly decreasing from delta = 3 on".into());
        }
    }
    Ok(r)
}

/// Budget-consistent descriptor over a curve of small genus, with `deg E` and
/// `μ_max(E)` drawn at random. When `double_points_only`, every singular point
/// has multiplicity 2; otherwise the budget is split into parts `(δ-1)^N`.
pub fn random_descriptor(rng: &mut impl Rng, double_points_only: bool) -> PencilDescriptor {
    let n = rng.gen_range(1..=10u32);
    let d = rng.gen_range(2..=12u32);
    random_descriptor_with(rng, n, d, double_points_only)
}

pub fn random_descriptor_with(
    rng: &mut impl Rng,
    n: u32,
    d: u32,
    double_points_only: bool,
) -> PencilDescriptor {
    let deg_e = rng.gen_range(-6..=6i64);
    let mu = ratio(deg_e, n as i64 + 1);
    // smallest deg M with ht_int >= 0, plus a little
    let floor = (rat(d as i64) * &mu).ceil().to_integer();
    let deg_m = i64::try_from(floor).expect("small") + rng.gen_range(0..=3);
    let ht = rat(deg_m) - rat(d as i64) * &mu;
    let budget = rat(n as i64 + 1) * rational::pow(&rat(d as i64 - 1), n) * ht;
    let mut remaining: u128 = budget.to_integer().try_into().expect("non-negative budget");
    let mut points = Vec::new();
    if !double_points_only {
        while remaining > 0 && rng.gen_bool(0.7) {
            let delta = rng.gen_range(2..=d);
            let part = (delta as u128 - 1).pow(n);
            if part > remaining {
                continue;
            }
            let max_count = (remaining / part).min(1 << 40) as u64;
            let cap = rng.gen_range(1..=4u64);
            let count = rng.gen_range(1..=max_count.min(cap));
            points.push(SingularFiberRecord::semihomogeneous(delta, count));
            remaining -= part * count as u128;
        }
    }
    if remaining > 0 {
        points.push(SingularFiberRecord::semihomogeneous(2, remaining as u64));
    }
    points.shuffle(rng);
    PencilDescriptor {
        n,
        d,
        genus: rng.gen_range(0..=3),
        deg_e,
        mu_max_e: &mu + ratio(rng.gen_range(0..=4), rng.gen_range(1..=3)),
        deg_m: Some(deg_m),
        ht_int: None,
        singular_points: points,
        all_fibers_semistable: None,
    }
}

/// Double points only: `ht_GK,stab = F_stab ht_int`. Mixed multiplicities:
/// `ht_GK,stab <= F_stab ht_int`, with equality exactly in the equality cases.
pub fn griffiths_reduction(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("griffiths");
    let mut equalities = 0;
    for _ in 0..count {
        let p = random_descriptor(&mut rng, true);
        let gk = pencils::ht_gk_stab(&p)?;
        let expected = coeffs::f_stab(p.d, p.n)? * pencils::ht_int(&p)?;
        r.check(pencils::singularity_budget_check(&p)?, || format!("budget fails for {p:?}"));
        r.check(gk == expected, || format!("N={} d={}: ht_GK,stab != F_stab ht_int", p.n, p.d));
    }
    for _ in 0..count {
        let p = random_descriptor(&mut rng, false);
        let gk = pencils::ht_gk_stab(&p)?;
        let bound = coeffs::f_stab(p.d, p.n)? * pencils::ht_int(&p)?;
        let deltas: Vec<u32> = p.multiplicities().map(|(delta, _)| delta).collect();
        let equality = coeffs::classify_equality_case(p.n, &deltas)?;
        equalities += equality as usize;
        r.check(pencils::singularity_budget_check(&p)?, || format!("budget fails for {p:?}"));
        r.check(gk <= bound, || format!("N={} d={}: ht_GK,stab exceeds the bound", p.n, p.d));
        r.check((gk == bound) == equality, || {
            format!("N={} d={} multiplicities {deltas:?}: equality misclassified", p.n, p.d)
        });
    }
    r.notes.push(format!("{equalities} of {count} mixed descriptors are equality cases"));
    Ok(r)
}

fn random_hompoly(rng: &mut impl Rng, m: u32) -> HomPoly2 {
    let coeffs: Vec<i64> = (0..=m).map(|_| rng.gen_range(-3..=3)).collect();
    HomPoly2::homogenize(&UniPoly::from_ints(&coeffs), m).expect("degree m")
}

/// `t - r s` for a small integer `r`, or `s` (the point at infinity).
fn random_point_form(rng: &mut impl Rng) -> HomPoly2 {
    if rng.gen_bool(0.25) {
        HomPoly2::homogenize(&UniPoly::from_ints(&[1]), 1).expect("degree 1")
    } else {
        HomPoly2::homogenize(&UniPoly::from_ints(&[-rng.gen_range(-3..=3), 1]), 1).expect("degree 1")
    }
}

/// Random pencil of binary forms of degree `d` with coefficients of degree `m`
/// and a semistable generic fiber. Besides generic pencils, this plants fibers
/// with a root of high multiplicity and produces isotrivial pencils `A(s,t) G`.
pub fn random_binary_pencil(rng: &mut impl Rng, d: u32, m: u32) -> BinaryPencil {
    loop {
        let kind = if m == 0 { 0 } else { rng.gen_range(0..3) };
        let coeffs: Vec<HomPoly2> = match kind {
            0 => (0..=d).map(|_| random_hompoly(rng, m)).collect(),
            1 => {
                // A * X0^d-ish unstable form plus L^k * R
                let k = rng.gen_range(1..=m);
                let a = random_hompoly(rng, m);
                let l = random_point_form(rng).pow(k);
                let top = if rng.gen_bool(0.5) { d } else { d - 1 };
                (0..=d)
                    .map(|j| {
                        let planted = if j == top { a.clone() } else { HomPoly2::zero(m) };
                        planted.add(&l.mul(&random_hompoly(rng, m - k)))
                    })
                    .collect()
            }
            _ => {
                let a = random_hompoly(rng, m);
                (0..=d)
                    .map(|_| a.scale(&rat(rng.gen_range(-3..=3))))
                    .collect()
            }
        };
        if let Ok(p) = BinaryPencil::new(d, m, coeffs) {
            if p.generic_fiber_semistable() {
                return p;
            }
        }
    }
}

/// `ht_int = ht_GIT + contact / δ` on random quartic and cubic pencils, cubic
/// pencils with `ht_GIT = 0` and contact `4m`.
pub fn contact(seed: u64, quartics: usize, cubics: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("contact");
    let mut degenerate = 0;
    for _ in 0..quartics {
        let m = rng.gen_range(0..=4);
        let p = random_binary_pencil(&mut rng, 4, m);
        let ok = git_binary::verify_contact_identity(&p)?;
        degenerate += !git_binary::git_height(&p)?.all_fibers_semistable as usize;
        r.check(ok, || format!("contact identity fails for {}", json(&p)));
    }
    for _ in 0..cubics {
        let m = rng.gen_range(0..=3);
        let p = random_binary_pencil(&mut rng, 3, m);
        let report = git_binary::git_height(&p)?;
        r.check(git_binary::verify_contact_identity(&p)?, || format!("contact identity fails for {}", json(&p)));
        r.check(report.ht_git == rat(0) && report.contact_length == 4 * m as u64, || {
            format!("cubic pencil with ht_GIT {:?}, contact {}", report.ht_git, report.contact_length)
        });
    }
    r.notes.push(format!("{degenerate} of {quartics} quartic pencils have a non-semistable fiber"));
    Ok(r)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| format!("<{e}>"))
}

/// A row of the `(d, N)` coefficient table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: u32,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "fStab", with = "rational::serde_rational")]
    pub f_stab: Rational,
    /// `w_{N,δ}` at `δ = d`.
    #[serde(with = "rational::serde_rational")]
    pub w: Rational,
}

pub fn sweep(ds: RangeInclusive<u32>, ns: RangeInclusive<u32>) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for d in ds {
        for n in ns.clone() {
            rows.push(SweepRow {
                d,
                n,
                f_stab: coeffs::f_stab(d, n)?,
                w: coeffs::w(n, d)?,
            });
        }
    }
    Ok(rows)
}
