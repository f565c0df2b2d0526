//! Closed-form upper bounds on the Z-spectral radius.
//!
//! The bounds certify `ρ(A)` only for weakly symmetric nonnegative tensors.
//! They are still computed for any tensor, in which case [`compare_report`]
//! attaches warnings.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use crate::regions::radial_roots;
use crate::tensor::{DenseTensor, RowAggregates, TensorError};
use crate::STRUCTURE_TOL;

/// Slack allowed when checking `Ω_max <= chain middle <= max R_i`.
pub const CHAIN_SLACK: f64 = 1e-12;

fn check_pair(agg: &RowAggregates, i: usize, j: usize) -> Result<(), TensorError> {
    let n = agg.dim();
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(TensorError::IndexOutOfRange { index: k, dim: n });
        }
    }
    if i == j {
        return Err(TensorError::SameIndex(i));
    }
    Ok(())
}

fn delta_unchecked(agg: &RowAggregates, i: usize, j: usize) -> f64 {
    let c = agg.excluded(i, j) * agg.excluded(j, i);
    radial_roots(agg.partial(i, j), agg.partial(j, i), c).r_plus
}

/// `Δ_{i,j}`: the larger root of
/// `(r − P_i^j)(r − P_j^i) = (R_i − P_i^j)(R_j − P_j^i)`.
pub fn delta(agg: &RowAggregates, i: usize, j: usize) -> Result<f64, TensorError> {
    check_pair(agg, i, j)?;
    Ok(delta_unchecked(agg, i, j))
}

/// `Λ_{i,j} = (R_i − |a_{ij..j}| − P_j^i)² + 4 |a_{ij..j}| (R_j − P_j^i)`.
pub fn lambda_coef(agg: &RowAggregates, i: usize, j: usize) -> Result<f64, TensorError> {
    check_pair(agg, i, j)?;
    let a = agg.diag_like(i, j);
    let d = agg.row_sum(i) - a - agg.partial(j, i);
    Ok(d * d + 4.0 * a * agg.excluded(j, i))
}

/// `Ω_max` together with its two halves and the attaining pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaMax {
    pub hat: f64,
    pub tilde: f64,
    pub value: f64,
    /// 1-based `(i, j)`; ties go to the lexicographically smallest pair.
    pub pair: (usize, usize),
}

/// Strict lexicographic-first argmax over the ordered pairs.
fn argmax(agg: &RowAggregates, f: impl Fn(usize, usize) -> f64) -> (f64, (usize, usize)) {
    let mut best = (f64::NEG_INFINITY, (1, 2));
    for (i, j) in agg.pairs() {
        let v = f(i, j);
        if v > best.0 {
            best = (v, (i, j));
        }
    }
    best
}

/// `Ω_max = max(max min(P_i^j, P_j^i), max min(R_i, Δ_{i,j}))`.
pub fn bound_omega_max(agg: &RowAggregates) -> Result<OmegaMax, TensorError> {
    if agg.dim() < 2 {
        return Err(TensorError::DimTooSmall(agg.dim()));
    }
    let (hat, hat_pair) = argmax(agg, |i, j| agg.partial(i, j).min(agg.partial(j, i)));
    let (tilde, tilde_pair) = argmax(agg, |i, j| agg.row_sum(i).min(delta_unchecked(agg, i, j)));
    let (value, pair) = if hat > tilde {
        (hat, hat_pair)
    } else if tilde > hat {
        (tilde, tilde_pair)
    } else {
        (hat, hat_pair.min(tilde_pair))
    };
    Ok(OmegaMax { hat, tilde, value, pair })
}

/// Middle term of the comparison chain: the maximum over ordered pairs of
/// `max{(R_i − a + P_j^i + sqrt(Λ_{i,j}))/2, R_i − a, P_j^i}` with
/// `a = |a_{ij..j}|`.
pub fn bound_chain_middle(agg: &RowAggregates) -> Result<f64, TensorError> {
    if agg.dim() < 2 {
        return Err(TensorError::DimTooSmall(agg.dim()));
    }
    let (v, _) = argmax(agg, |i, j| {
        let a = agg.diag_like(i, j);
        let first = agg.row_sum(i) - a;
        let second = agg.partial(j, i);
        // The half-sum term is the larger root of the Brauer quadratic.
        let root = radial_roots(first, second, a * agg.excluded(j, i)).r_plus;
        root.max(first).max(second)
    });
    Ok(v)
}

/// `max_i R_i`.
pub fn bound_gershgorin(agg: &RowAggregates) -> f64 {
    agg.row_sums().iter().fold(0.0f64, |m, &r| m.max(r))
}

/// All bounds for one tensor plus structural warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub omega_max: f64,
    pub omega_hat_max: f64,
    pub omega_tilde_max: f64,
    pub chain_middle: f64,
    pub gershgorin: f64,
    pub attaining_pair: (usize, usize),
    pub warnings: Vec<String>,
    /// False when `Ω_max <= chain middle <= gershgorin` failed beyond
    /// [`CHAIN_SLACK`].
    pub chain_holds: bool,
}

impl BoundReport {
    /// Whether the bounds certify the Z-spectral radius.
    pub fn is_certified(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Runs the structural checks and computes every bound.
pub fn compare_report(t: &DenseTensor) -> BoundReport {
    let agg = t.aggregates();
    let mut warnings = Vec::new();
    if !t.is_nonnegative() {
        warnings.push(String::from(
            "tensor has negative entries; bounds are not certified spectral-radius bounds",
        ));
    }
    if !t.is_weakly_symmetric(STRUCTURE_TOL) {
        warnings.push(String::from(
            "tensor is not weakly symmetric; bounds are not certified spectral-radius bounds",
        ));
    }
    // dim >= 2 is guaranteed by DenseTensor.
    let omega = bound_omega_max(&agg).expect("tensor dimension is at least 2");
    let chain_middle = bound_chain_middle(&agg).expect("tensor dimension is at least 2");
    let gershgorin = bound_gershgorin(&agg);
    let chain_holds =
        omega.value <= chain_middle + CHAIN_SLACK && chain_middle <= gershgorin + CHAIN_SLACK;
    if !chain_holds {
        warnings.push(format!(
            "internal error: chain violated (omega_max {}, chain_middle {}, gershgorin {})",
            omega.value, chain_middle, gershgorin
        ));
    }
    BoundReport {
        omega_max: omega.value,
        omega_hat_max: omega.hat,
        omega_tilde_max: omega.tilde,
        chain_middle,
        gershgorin,
        attaining_pair: omega.pair,
        warnings,
        chain_holds,
    }
}
