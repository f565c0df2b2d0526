//! Z-eigenvalue inclusion regions as unions of radius intervals.
//!
//! Every inclusion set here constrains an eigenvalue `z` only through `|z|`,
//! so each set is stored as its trace on the half-line `r = |z| >= 0`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::tensor::RowAggregates;

/// One interval on the radius axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: false }
    }

    /// `[lo, hi)`.
    pub fn right_open(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: true }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    fn contains(&self, r: f64, tol: f64) -> bool {
        if tol > 0.0 {
            return r >= self.lo - tol && r <= self.hi + tol;
        }
        let above = if self.lo_open { r > self.lo } else { r >= self.lo };
        let below = if self.hi_open { r < self.hi } else { r <= self.hi };
        above && below
    }
}

/// Roots of `(r − p)(r − q) = c` with `c >= 0`, i.e. of
/// `r² − (p+q) r + (pq − c) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticRootPair {
    pub r_minus: f64,
    pub r_plus: f64,
}

/// Raised when the radial quadratic is given a negative constant term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativeConstant(pub f64);

impl fmt::Display for NegativeConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "radial quadratic constant must be nonnegative, got {}", self.0)
    }
}

impl core::error::Error for NegativeConstant {}

/// Solves `(r − p)(r − q) = c` without cancellation.
///
/// With `D = sqrt((p−q)² + 4c)` the roots are `max(p,q) + δ` and
/// `min(p,q) − δ` where `δ = 2c / (|p−q| + D)`; this equals
/// `((p+q) ± D) / 2` and is exact when `c = 0`.
pub fn solve_radial_quadratic(p: f64, q: f64, c: f64) -> Result<QuadraticRootPair, NegativeConstant> {
    if c < 0.0 || c.is_nan() {
        return Err(NegativeConstant(c));
    }
    Ok(radial_roots(p, q, c))
}

/// Root kernel for call sites whose constant is nonnegative by construction
/// of the aggregates.
pub(crate) fn radial_roots(p: f64, q: f64, c: f64) -> QuadraticRootPair {
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    let gap = hi - lo;
    let disc = libm::sqrt(gap * gap + 4.0 * c);
    let denom = gap + disc;
    let shift = if denom > 0.0 { 2.0 * c / denom } else { 0.0 };
    QuadraticRootPair { r_minus: lo - shift, r_plus: hi + shift }
}

/// A normalized union of radius intervals: sorted, disjoint, no empties.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialRegion {
    intervals: Vec<Interval>,
}

fn start_order(a: &Interval, b: &Interval) -> Ordering {
    a.lo.total_cmp(&b.lo).then(a.lo_open.cmp(&b.lo_open))
}

impl RadialRegion {
    pub fn empty() -> Self {
        RadialRegion::default()
    }

    /// Builds a region from arbitrary intervals, dropping empties and
    /// merging overlaps and compatible touches.
    pub fn from_intervals(parts: impl IntoIterator<Item = Interval>) -> Self {
        let mut parts: Vec<Interval> = parts.into_iter().filter(|iv| !iv.is_empty()).collect();
        parts.sort_by(start_order);
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            if let Some(last) = out.last_mut() {
                // Touching at a point merges unless both sides exclude it.
                let joins = iv.lo < last.hi || (iv.lo == last.hi && !(last.hi_open && iv.lo_open));
                if joins {
                    match iv.hi.total_cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = iv.hi;
                            last.hi_open = iv.hi_open;
                        }
                        Ordering::Equal => last.hi_open &= iv.hi_open,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        RadialRegion { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Largest right endpoint, or 0 for the empty region.
    pub fn supremum(&self) -> f64 {
        self.intervals.last().map_or(0.0, |iv| iv.hi)
    }

    /// Membership of radius `r`. With `tol > 0` the closure is queried and
    /// endpoints are relaxed outward by `tol`.
    pub fn contains(&self, r: f64, tol: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(r, tol))
    }

    /// Multiplies every endpoint by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        RadialRegion {
            intervals: self
                .intervals
                .iter()
                .map(|iv| Interval { lo: iv.lo * c, hi: iv.hi * c, ..*iv })
                .collect(),
        }
    }
}

/// Geršgorin-type set: the union of `|z| <= R_i`, i.e. `[0, max R_i]`.
pub fn region_k(agg: &RowAggregates) -> RadialRegion {
    let top = agg.row_sums().iter().fold(0.0f64, |m, &r| m.max(r));
    RadialRegion::from_intervals([Interval::closed(0.0, top)])
}

/// Brauer-type set: union over ordered pairs of the quadratic set `M_{i,j}`
/// and the strict box `H_{i,j}`.
pub fn region_m(agg: &RowAggregates) -> RadialRegion {
    let mut parts = Vec::new();
    for (i, j) in agg.pairs() {
        let a = agg.diag_like(i, j);
        let first = agg.row_sum(i) - a;
        let second = agg.partial(j, i);
        let roots = radial_roots(first, second, a * agg.excluded(j, i));
        parts.push(Interval::closed(roots.r_minus.max(0.0), roots.r_plus));
        parts.push(Interval::right_open(0.0, first.min(second)));
    }
    RadialRegion::from_intervals(parts)
}

/// Pairwise set: union over ordered pairs of the strict box
/// `|z| < min(P_i^j, P_j^i)` and the quadratic set intersected with
/// `|z| <= R_i`.
pub fn region_omega(agg: &RowAggregates) -> RadialRegion {
    let mut parts = Vec::new();
    for (i, j) in agg.pairs() {
        let pij = agg.partial(i, j);
        let pji = agg.partial(j, i);
        parts.push(Interval::right_open(0.0, pij.min(pji)));
        let roots = radial_roots(pij, pji, agg.excluded(i, j) * agg.excluded(j, i));
        parts.push(Interval::closed(roots.r_minus.max(0.0), roots.r_plus.min(agg.row_sum(i))));
    }
    RadialRegion::from_intervals(parts)
}
