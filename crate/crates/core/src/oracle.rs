//! Brute-force real Z-eigenpairs at desk scale.
//!
//! Two independent solvers: an angle sweep that is complete (up to tangential
//! roots) for `n = 2`, and Newton's method on the unit sphere with seeded
//! random restarts for general `n`. Both feed [`verify_inclusion`], which
//! checks the found eigenvalues against the inclusion regions and the
//! `Ω_max` bound.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::bounds::bound_omega_max;
use crate::regions::{region_k, region_m, region_omega};
use crate::tensor::{DenseTensor, TensorError};
use crate::STRUCTURE_TOL;

/// Tolerance for membership and bound checks in [`verify_inclusion`].
pub const INCLUSION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    Tensor(TensorError),
    /// `‖x‖₂` is not 1 within `1e-9`.
    NotUnit { norm: f64 },
    /// The angle sweep only handles dimension 2.
    SweepDimension(usize),
    GridTooSmall(usize),
    InvalidConfig(&'static str),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Tensor(e) => write!(f, "{e}"),
            OracleError::NotUnit { norm } => write!(f, "vector is not unit length (norm {norm})"),
            OracleError::SweepDimension(n) => {
                write!(f, "angle sweep requires dimension 2, tensor has dimension {n}")
            }
            OracleError::GridTooSmall(g) => write!(f, "sweep grid must have at least 100 points, got {g}"),
            OracleError::InvalidConfig(what) => write!(f, "invalid oracle configuration: {what}"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<TensorError> for OracleError {
    fn from(e: TensorError) -> Self {
        OracleError::Tensor(e)
    }
}

/// A real Z-eigenpair `A x^{m-1} = λ x`, `‖x‖₂ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub lambda: f64,
    pub x: Vec<f64>,
    /// `‖A x^{m-1} − λ x‖₂`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub restarts: usize,
    pub max_iter: usize,
    pub residual_tol: f64,
    pub dedupe_tol_lambda: f64,
    pub dedupe_tol_x: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            restarts: 1000,
            max_iter: 200,
            residual_tol: 1e-12,
            dedupe_tol_lambda: 1e-8,
            dedupe_tol_x: 1e-6,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.restarts == 0 {
            return Err(OracleError::InvalidConfig("restarts must be at least 1"));
        }
        let tols = [self.residual_tol, self.dedupe_tol_lambda, self.dedupe_tol_x];
        if tols.iter().any(|&t| t.is_nan() || t <= 0.0) {
            return Err(OracleError::InvalidConfig("tolerances must be positive"));
        }
        Ok(())
    }
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|a| a * a).sum())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn distance(a: &[f64], b: &[f64], sign: f64) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(p, q)| (p - sign * q) * (p - sign * q)).sum())
}

/// Residual with the Rayleigh value `λ = x · A x^{m-1}`.
fn rayleigh(t: &DenseTensor, x: &[f64]) -> (f64, f64) {
    let y = t.apply(x).expect("vector length checked by caller");
    let lambda = dot(x, &y);
    let res = libm::sqrt(y.iter().zip(x).map(|(a, b)| (a - lambda * b) * (a - lambda * b)).sum());
    (lambda, res)
}

/// `‖A x^{m-1} − λ x‖₂` for a unit vector `x`.
pub fn residual(t: &DenseTensor, lambda: f64, x: &[f64]) -> Result<f64, OracleError> {
    let y = t.apply(x)?;
    let nx = norm(x);
    if (nx - 1.0).abs() > 1e-9 {
        return Err(OracleError::NotUnit { norm: nx });
    }
    Ok(libm::sqrt(y.iter().zip(x).map(|(a, b)| (a - lambda * b) * (a - lambda * b)).sum()))
}

/// Sign-flips `x` so its first non-negligible component is positive. Only
/// valid for even order, where `(λ, x)` and `(λ, −x)` are both eigenpairs.
fn canonical_sign(x: &mut [f64]) {
    if let Some(&lead) = x.iter().find(|v| v.abs() > 1e-9) {
        if lead < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Descending by `λ`, then by the first differing component of `x`
/// (descending).
fn eigen_order(a: &Eigenpair, b: &Eigenpair) -> Ordering {
    b.lambda.total_cmp(&a.lambda).then_with(|| {
        a.x.iter()
            .zip(&b.x)
            .map(|(p, q)| q.total_cmp(p))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Deduplicates in input order and sorts.
///
/// Two pairs coincide when `|λ − λ'| <= tol_lambda` and
/// `min(‖x − x'‖, ‖x + x'‖) <= tol_x`. For odd order `(λ, x)` and
/// `(−λ, −x)` differ in `λ` and are both kept.
pub fn merge_eigenpairs(pairs: Vec<Eigenpair>, tol_lambda: f64, tol_x: f64) -> Vec<Eigenpair> {
    let mut kept: Vec<Eigenpair> = Vec::new();
    for p in pairs {
        let dup = kept.iter().any(|k| {
            (k.lambda - p.lambda).abs() <= tol_lambda
                && distance(&k.x, &p.x, 1.0).min(distance(&k.x, &p.x, -1.0)) <= tol_x
        });
        if !dup {
            kept.push(p);
        }
    }
    kept.sort_by(eigen_order);
    kept
}

/// Eigenvalues only, deduplicated within `tol` and sorted descending.
pub fn distinct_eigenvalues(pairs: &[Eigenpair], tol: f64) -> Vec<f64> {
    let mut vals: Vec<f64> = pairs.iter().map(|p| p.lambda).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals.dedup_by(|a, b| (*a - *b).abs() <= tol);
    vals
}

/// `g(θ) = (A x^{m-1})₁ sin θ − (A x^{m-1})₂ cos θ` at `x = (cos θ, sin θ)`;
/// zero exactly when `A x^{m-1}` is parallel to `x`.
fn sweep_gap(t: &DenseTensor, theta: f64) -> f64 {
    let (s, c) = libm::sincos(theta);
    let y = t.apply(&[c, s]).expect("dimension 2");
    y[0] * s - y[1] * c
}

/// Bisects a sign-change bracket down to adjacent floats and returns the
/// visited angle with the smallest `|g|`.
fn bisect(t: &DenseTensor, mut a: f64, mut b: f64, mut ga: f64) -> f64 {
    let mut best = (ga.abs(), a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = sweep_gap(t, mid);
        if gm.abs() < best.0 {
            best = (gm.abs(), mid);
        }
        if gm == 0.0 {
            break;
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    let gb = sweep_gap(t, b).abs();
    if gb < best.0 {
        best = (gb, b);
    }
    best.1
}

fn eigenpair_at(t: &DenseTensor, x: Vec<f64>) -> Eigenpair {
    let (lambda, residual) = rayleigh(t, &x);
    Eigenpair { lambda, x, residual }
}

/// Real Z-eigenpairs of a dimension-2 tensor by sign changes of the angular
/// gap function on a uniform grid over `[0, 2π)`, refined by bisection.
pub fn z_eigs_sweep_n2(t: &DenseTensor, grid: usize) -> Result<Vec<Eigenpair>, OracleError> {
    if t.dim() != 2 {
        return Err(OracleError::SweepDimension(t.dim()));
    }
    if grid < 100 {
        return Err(OracleError::GridTooSmall(grid));
    }
    let step = 2.0 * PI / grid as f64;
    let gaps: Vec<f64> = (0..grid).map(|k| sweep_gap(t, k as f64 * step)).collect();
    let mut found = Vec::new();
    for k in 0..grid {
        let (ga, gb) = (gaps[k], gaps[(k + 1) % grid]);
        let a = k as f64 * step;
        let theta = if ga == 0.0 {
            a
        } else if gb != 0.0 && (ga < 0.0) != (gb < 0.0) {
            bisect(t, a, a + step, ga)
        } else {
            continue;
        };
        let (s, c) = libm::sincos(theta);
        let mut x = vec![c, s];
        if t.order().is_multiple_of(2) {
            canonical_sign(&mut x);
        }
        found.push(eigenpair_at(t, x));
    }
    let cfg = OracleConfig::default();
    Ok(merge_eigenpairs(found, cfg.dedupe_tol_lambda, cfg.dedupe_tol_x))
}

/// Solves `a · z = b` in place by Gaussian elimination with partial
/// pivoting; `a` is row-major `k × k`. Returns false if singular.
fn solve_dense(a: &mut [f64], b: &mut [f64]) -> bool {
    let k = b.len();
    let scale = a.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    if scale == 0.0 {
        return false;
    }
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&r, &s| a[r * k + col].abs().total_cmp(&a[s * k + col].abs()))
            .unwrap_or(col);
        if a[piv * k + col].abs() <= scale * 1e-14 {
            return false;
        }
        if piv != col {
            for c in 0..k {
                a.swap(piv * k + c, col * k + c);
            }
            b.swap(piv, col);
        }
        for row in col + 1..k {
            let f = a[row * k + col] / a[col * k + col];
            if f != 0.0 {
                for c in col..k {
                    a[row * k + c] -= f * a[col * k + c];
                }
                b[row] -= f * b[col];
            }
        }
    }
    for row in (0..k).rev() {
        let tail: f64 = (row + 1..k).map(|c| a[row * k + c] * b[c]).sum();
        b[row] = (b[row] - tail) / a[row * k + row];
    }
    b.iter().all(|v| v.is_finite())
}

/// Uniform point on the unit sphere for one restart. Each restart gets its
/// own ChaCha stream keyed by the restart index, so results do not depend
/// on evaluation order.
pub fn restart_start(dim: usize, seed: u64, restart: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    loop {
        let mut x: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let nx = norm(&x);
        if nx > 1e-12 {
            x.iter_mut().for_each(|v| *v /= nx);
            return x;
        }
    }
}

/// One Newton run on `F(x, λ) = (A x^{m-1} − λ x, xᵀx − 1)` from the
/// restart's random start. Returns the accepted eigenpair, if any.
pub fn newton_restart(t: &DenseTensor, cfg: &OracleConfig, restart: usize) -> Option<Eigenpair> {
    let n = t.dim();
    let k = n + 1;
    let mut x = restart_start(n, cfg.seed, restart);
    let (mut lambda, _) = rayleigh(t, &x);
    let mut jac = vec![0.0; k * k];
    let mut rhs = vec![0.0; k];
    for _ in 0..=cfg.max_iter {
        let (_, res) = rayleigh(t, &x);
        if res <= cfg.residual_tol {
            let mut x = x;
            if t.order().is_multiple_of(2) {
                canonical_sign(&mut x);
            }
            let pair = eigenpair_at(t, x);
            return (pair.residual <= cfg.residual_tol).then_some(pair);
        }
        let y = t.apply(&x).ok()?;
        let ja = t.apply_jacobian(&x).ok()?;
        for r in 0..n {
            for c in 0..n {
                jac[r * k + c] = ja[r * n + c];
            }
            jac[r * k + r] -= lambda;
            jac[r * k + n] = -x[r];
            jac[n * k + r] = 2.0 * x[r];
            rhs[r] = -(y[r] - lambda * x[r]);
        }
        jac[n * k + n] = 0.0;
        rhs[n] = -(dot(&x, &x) - 1.0);
        if !solve_dense(&mut jac, &mut rhs) {
            return None;
        }
        for (xi, d) in x.iter_mut().zip(&rhs) {
            *xi += d;
        }
        lambda += rhs[n];
        let nx = norm(&x);
        if nx.is_nan() || nx <= 1e-300 || !lambda.is_finite() {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= nx);
    }
    None
}

/// Real Z-eigenpairs from `cfg.restarts` seeded Newton runs, deduplicated
/// and sorted by `λ` descending. Non-converged restarts are dropped.
pub fn z_eigs_newton(t: &DenseTensor, cfg: &OracleConfig) -> Result<Vec<Eigenpair>, OracleError> {
    cfg.validate()?;
    let found = (0..cfg.restarts).filter_map(|r| newton_restart(t, cfg, r)).collect();
    Ok(merge_eigenpairs(found, cfg.dedupe_tol_lambda, cfg.dedupe_tol_x))
}

/// Inclusion outcome for one eigenpair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCheck {
    pub lambda: f64,
    pub in_omega: bool,
    pub in_m: bool,
    pub in_k: bool,
    /// `|λ| <= Ω_max + tol`; `None` when the tensor is not weakly symmetric
    /// and nonnegative, so the bound makes no claim.
    pub under_omega_max: Option<bool>,
}

impl PairCheck {
    pub fn passed(&self) -> bool {
        self.in_omega && self.in_m && self.in_k && self.under_omega_max != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InclusionReport {
    pub checks: Vec<PairCheck>,
    pub omega_max: f64,
    /// Whether the tensor is weakly symmetric and nonnegative.
    pub certified: bool,
}

impl InclusionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(PairCheck::passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &PairCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Checks every eigenvalue magnitude against the closures of `Ω`, `M` and
/// `K` and, for weakly symmetric nonnegative tensors, against `Ω_max`.
pub fn verify_inclusion(t: &DenseTensor, pairs: &[Eigenpair]) -> InclusionReport {
    let agg = t.aggregates();
    let (omega, m, k) = (region_omega(&agg), region_m(&agg), region_k(&agg));
    let omega_max = bound_omega_max(&agg).expect("tensor dimension is at least 2").value;
    let certified = t.is_nonnegative() && t.is_weakly_symmetric(STRUCTURE_TOL);
    let checks = pairs
        .iter()
        .map(|p| {
            let r = p.lambda.abs();
            PairCheck {
                lambda: p.lambda,
                in_omega: omega.contains(r, INCLUSION_TOL),
                in_m: m.contains(r, INCLUSION_TOL),
                in_k: k.contains(r, INCLUSION_TOL),
                under_omega_max: certified.then_some(r <= omega_max + INCLUSION_TOL),
            }
        })
        .collect();
    InclusionReport { checks, omega_max, certified }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> DenseTensor {
        let mut t = DenseTensor::filled(4, 2, 1.0 / 3.0).unwrap();
        t.set(&[1, 1, 1, 1], 0.5).unwrap();
        t.set(&[2, 2, 2, 2], 3.0).unwrap();
        t
    }

    #[test]
    fn residual_cases() {
        let d = DenseTensor::diagonal(3, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(residual(&d, 2.0, &[0.0, 1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(residual(&d, 2.0, &[1.0, 0.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(residual(&d, 2.0, &[1.0, 1.0, 0.0]), Err(OracleError::NotUnit { .. })));
        assert!(matches!(residual(&d, 2.0, &[1.0, 0.0]), Err(OracleError::Tensor(_))));
        let x0 = [0.6, 0.8];
        let r1 = DenseTensor::rank_one(4, &x0).unwrap();
        assert!(residual(&r1, 1.0, &x0).unwrap() < 1e-15);
    }

    #[test]
    fn sweep_finds_axis_and_rank_one_pairs() {
        let d = DenseTensor::diagonal(4, &[2.0, 5.0]).unwrap();
        let vals = distinct_eigenvalues(&z_eigs_sweep_n2(&d, 1000).unwrap(), 1e-8);
        assert!(vals.iter().any(|v| (v - 2.0).abs() < 1e-10));
        assert!(vals.iter().any(|v| (v - 5.0).abs() < 1e-10));

        let r1 = DenseTensor::rank_one(4, &[0.6, 0.8]).unwrap();
        let pairs = z_eigs_sweep_n2(&r1, 1000).unwrap();
        let top = &pairs[0];
        assert!((top.lambda - 1.0).abs() < 1e-12);
        assert!((top.x[0] - 0.6).abs() < 1e-9 && (top.x[1] - 0.8).abs() < 1e-9);
    }

    #[test]
    fn sweep_preconditions() {
        let t3 = DenseTensor::zeros(3, 3).unwrap();
        assert_eq!(z_eigs_sweep_n2(&t3, 1000), Err(OracleError::SweepDimension(3)));
        assert_eq!(z_eigs_sweep_n2(&example1(), 10), Err(OracleError::GridTooSmall(10)));
    }

    #[test]
    fn example1_sweep_inside_omega() {
        let t = example1();
        let pairs = z_eigs_sweep_n2(&t, 100_000).unwrap();
        assert!(!pairs.is_empty());
        assert!(pairs.iter().all(|p| p.residual <= 1e-12));
        let rep = verify_inclusion(&t, &pairs);
        assert!(rep.certified);
        assert!(rep.all_passed());
    }

    #[test]
    fn newton_on_diagonal() {
        let d = DenseTensor::diagonal(3, &[1.0, 2.0, 3.0]).unwrap();
        let cfg = OracleConfig { restarts: 300, seed: 11, ..OracleConfig::default() };
        let vals = distinct_eigenvalues(&z_eigs_newton(&d, &cfg).unwrap(), 1e-8);
        for target in [3.0, 2.0, 1.0, -1.0, -2.0, -3.0] {
            assert!(vals.iter().any(|v| (v - target).abs() < 1e-10), "missing {target}: {vals:?}");
        }
    }

    #[test]
    fn config_validation() {
        let bad = OracleConfig { restarts: 0, ..OracleConfig::default() };
        assert!(bad.validate().is_err());
        let bad = OracleConfig { residual_tol: 0.0, ..OracleConfig::default() };
        assert!(bad.validate().is_err());
        assert!(OracleConfig::default().validate().is_ok());
    }

    #[test]
    fn zero_tensor_passes() {
        let z = DenseTensor::zeros(3, 2).unwrap();
        let pair = Eigenpair { lambda: 0.0, x: vec![1.0, 0.0], residual: 0.0 };
        assert!(verify_inclusion(&z, &[pair]).all_passed());
    }

    #[test]
    fn escaped_eigenvalue_fails() {
        let t = example1();
        let pair = Eigenpair { lambda: 60.0, x: vec![1.0, 0.0], residual: 1.0 };
        let rep = verify_inclusion(&t, &[pair]);
        assert!(!rep.all_passed());
        assert_eq!(rep.violations().count(), 1);
    }
}
