//! Dense real tensors of order `m` and dimension `n`.
//!
//! Entries are stored row-major with the last index varying fastest. All
//! public index arguments are 1-based; offsets are 0-based internally.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by tensor construction and element access.
#[derive(Debug, Clone, PartialEq)]
pub enum TensorError {
    OrderTooSmall(usize),
    DimTooSmall(usize),
    /// `dim^order` does not fit in memory addressing.
    TooLarge { order: usize, dim: usize },
    LengthMismatch { expected: usize, found: usize },
    NonFinite { offset: usize },
    IndexOutOfRange { index: usize, dim: usize },
    WrongArity { expected: usize, found: usize },
    /// An operation defined only for `i != j` got `i == j`.
    SameIndex(usize),
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::OrderTooSmall(m) => write!(f, "order must be at least 2, got {m}"),
            TensorError::DimTooSmall(n) => write!(f, "dimension must be at least 2, got {n}"),
            TensorError::TooLarge { order, dim } => {
                write!(f, "tensor with order {order} and dimension {dim} is too large")
            }
            TensorError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} values, found {found}")
            }
            TensorError::NonFinite { offset } => write!(f, "non-finite value at offset {offset}"),
            TensorError::IndexOutOfRange { index, dim } => {
                write!(f, "index {index} out of range [1, {dim}]")
            }
            TensorError::WrongArity { expected, found } => {
                write!(f, "expected {expected} indices, found {found}")
            }
            TensorError::SameIndex(i) => write!(f, "indices must differ, both are {i}"),
            TensorError::DimensionMismatch { expected, found } => {
                write!(f, "vector length {found} does not match dimension {expected}")
            }
        }
    }
}

impl core::error::Error for TensorError {}

/// Mixed-radix counter over `{0..base}^len`, last digit fastest.
pub(crate) struct Odometer {
    digits: Vec<usize>,
    base: usize,
}

impl Odometer {
    pub(crate) fn new(len: usize, base: usize) -> Self {
        Odometer { digits: vec![0; len], base }
    }

    pub(crate) fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// Steps to the next tuple; returns false after wrapping past the last.
    pub(crate) fn advance(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                return true;
            }
            *d = 0;
        }
        false
    }
}

/// Row-major offset of a 0-based tuple.
fn offset_of(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &d| acc * base + d)
}

/// Offset of the tuple after sorting its components.
fn sorted_offset(tuple: &[usize], scratch: &mut Vec<usize>, base: usize) -> usize {
    scratch.clear();
    scratch.extend_from_slice(tuple);
    scratch.sort_unstable();
    offset_of(scratch, base)
}

/// Threshold for "equal within `tol` relative to `scale`", with an absolute
/// fallback when the scale is zero.
fn threshold(tol: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        tol * scale
    } else {
        tol
    }
}

/// An order-`m`, dimension-`n` real tensor with dense row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    values: Vec<f64>,
}

impl DenseTensor {
    /// Number of entries `dim^order`, validating both sizes.
    pub fn entry_count(order: usize, dim: usize) -> Result<usize, TensorError> {
        if order < 2 {
            return Err(TensorError::OrderTooSmall(order));
        }
        if dim < 2 {
            return Err(TensorError::DimTooSmall(dim));
        }
        u32::try_from(order)
            .ok()
            .and_then(|m| dim.checked_pow(m))
            .ok_or(TensorError::TooLarge { order, dim })
    }

    pub fn new(order: usize, dim: usize, values: Vec<f64>) -> Result<Self, TensorError> {
        let expected = Self::entry_count(order, dim)?;
        if values.len() != expected {
            return Err(TensorError::LengthMismatch { expected, found: values.len() });
        }
        if let Some(offset) = values.iter().position(|v| !v.is_finite()) {
            return Err(TensorError::NonFinite { offset });
        }
        Ok(DenseTensor { order, dim, values })
    }

    /// Tensor with every entry equal to `fill`.
    pub fn filled(order: usize, dim: usize, fill: f64) -> Result<Self, TensorError> {
        let len = Self::entry_count(order, dim)?;
        Self::new(order, dim, vec![fill; len])
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self, TensorError> {
        Self::filled(order, dim, 0.0)
    }

    /// Diagonal tensor with `a_{i..i} = d_i`.
    pub fn diagonal(order: usize, d: &[f64]) -> Result<Self, TensorError> {
        let mut t = Self::zeros(order, d.len())?;
        for (i, &di) in d.iter().enumerate() {
            let off = t.diag_offset(i);
            t.values[off] = di;
        }
        t.check_finite()?;
        Ok(t)
    }

    /// Rank-one symmetric tensor `x ⊗ x ⊗ ... ⊗ x`.
    pub fn rank_one(order: usize, x: &[f64]) -> Result<Self, TensorError> {
        let len = Self::entry_count(order, x.len())?;
        let mut values = Vec::with_capacity(len);
        let mut odo = Odometer::new(order, x.len());
        loop {
            values.push(odo.digits().iter().map(|&k| x[k]).product());
            if !odo.advance() {
                break;
            }
        }
        Self::new(order, x.len(), values)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat row-major storage.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of entries per row, `n^(m-1)`.
    fn row_len(&self) -> usize {
        self.values.len() / self.dim
    }

    fn diag_offset(&self, i: usize) -> usize {
        (0..self.order).fold(0, |acc, _| acc * self.dim + i)
    }

    /// Offset of `a_{i j .. j}` (0-based `i`, `j`).
    fn diag_like_offset(&self, i: usize, j: usize) -> usize {
        (1..self.order).fold(i, |acc, _| acc * self.dim + j)
    }

    fn check_finite(&self) -> Result<(), TensorError> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(offset) => Err(TensorError::NonFinite { offset }),
            None => Ok(()),
        }
    }

    fn check_index(&self, i: usize) -> Result<usize, TensorError> {
        if i == 0 || i > self.dim {
            Err(TensorError::IndexOutOfRange { index: i, dim: self.dim })
        } else {
            Ok(i - 1)
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(usize, usize), TensorError> {
        let a0 = self.check_index(a)?;
        let b0 = self.check_index(b)?;
        if a0 == b0 {
            return Err(TensorError::SameIndex(a));
        }
        Ok((a0, b0))
    }

    fn check_vector(&self, x: &[f64]) -> Result<(), TensorError> {
        if x.len() != self.dim {
            return Err(TensorError::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    /// Row-major offset of a 1-based index tuple.
    pub fn offset(&self, idx: &[usize]) -> Result<usize, TensorError> {
        if idx.len() != self.order {
            return Err(TensorError::WrongArity { expected: self.order, found: idx.len() });
        }
        let mut off = 0;
        for &i in idx {
            off = off * self.dim + self.check_index(i)?;
        }
        Ok(off)
    }

    /// The entry `a_{i_1 .. i_m}` for a 1-based index tuple.
    pub fn entry(&self, idx: &[usize]) -> Result<f64, TensorError> {
        Ok(self.values[self.offset(idx)?])
    }

    /// Overwrites one entry; `value` must be finite.
    pub fn set(&mut self, idx: &[usize], value: f64) -> Result<(), TensorError> {
        let off = self.offset(idx)?;
        if !value.is_finite() {
            return Err(TensorError::NonFinite { offset: off });
        }
        self.values[off] = value;
        Ok(())
    }

    fn row(&self, i0: usize) -> &[f64] {
        let len = self.row_len();
        &self.values[i0 * len..(i0 + 1) * len]
    }

    /// `R_i`: sum of the absolute values of row `i`.
    pub fn row_sum(&self, i: usize) -> Result<f64, TensorError> {
        let i0 = self.check_index(i)?;
        Ok(self.row(i0).iter().map(|v| v.abs()).sum())
    }

    /// `P_j^i`: sum of `|a_{j i_2 .. i_m}|` over tails that avoid index `i`.
    pub fn partial_row_sum(&self, j: usize, i: usize) -> Result<f64, TensorError> {
        let (j0, i0) = self.check_pair(j, i)?;
        let mut odo = Odometer::new(self.order - 1, self.dim);
        let mut sum = 0.0;
        for &v in self.row(j0) {
            if !odo.digits().contains(&i0) {
                sum += v.abs();
            }
            odo.advance();
        }
        Ok(sum)
    }

    /// `|a_{i j .. j}|`.
    pub fn diag_like(&self, i: usize, j: usize) -> Result<f64, TensorError> {
        let (i0, j0) = self.check_pair(i, j)?;
        Ok(self.values[self.diag_like_offset(i0, j0)].abs())
    }

    /// All row sums, partial row sums and `|a_{ij..j}|` values in one pass
    /// per row.
    pub fn aggregates(&self) -> RowAggregates {
        let n = self.dim;
        let mut r = vec![0.0; n];
        let mut p = vec![0.0; n * n];
        let mut diag = vec![0.0; n * n];
        let mut present = vec![false; n];
        for j0 in 0..n {
            let mut odo = Odometer::new(self.order - 1, n);
            // R and P accumulate in the same order, so P <= R holds in
            // floating point as well.
            for &v in self.row(j0) {
                let a = v.abs();
                present.iter_mut().for_each(|f| *f = false);
                for &k in odo.digits() {
                    present[k] = true;
                }
                r[j0] += a;
                for i0 in 0..n {
                    if !present[i0] {
                        p[j0 * n + i0] += a;
                    }
                }
                odo.advance();
            }
            for i0 in 0..n {
                if i0 != j0 {
                    diag[j0 * n + i0] = self.values[self.diag_like_offset(j0, i0)].abs();
                }
            }
        }
        RowAggregates { dim: n, r, p, diag }
    }

    /// `A x^{m-1}`, the vector with components
    /// `sum a_{i i_2 .. i_m} x_{i_2} .. x_{i_m}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, TensorError> {
        self.check_vector(x)?;
        let n = self.dim;
        // Contract the trailing index m-1 times.
        let mut cur: Vec<f64> = self.values.clone();
        while cur.len() > n {
            cur = cur
                .chunks_exact(n)
                .map(|c| c.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect();
        }
        Ok(cur)
    }

    /// The homogeneous form `A x^m = x · A x^{m-1}`.
    pub fn poly_value(&self, x: &[f64]) -> Result<f64, TensorError> {
        let y = self.apply(x)?;
        Ok(y.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    /// Jacobian of `x ↦ A x^{m-1}`, row-major `n × n`; entry `(i, k)` is
    /// `∂(A x^{m-1})_i / ∂x_k`. Assembled by enumerating every tail tuple, so
    /// no symmetry is assumed.
    pub fn apply_jacobian(&self, x: &[f64]) -> Result<Vec<f64>, TensorError> {
        self.check_vector(x)?;
        let n = self.dim;
        let tail = self.order - 1;
        let mut jac = vec![0.0; n * n];
        let mut prefix = vec![1.0; tail + 1];
        let mut suffix = vec![1.0; tail + 1];
        for i0 in 0..n {
            let mut odo = Odometer::new(tail, n);
            for &a in self.row(i0) {
                if a != 0.0 {
                    let t = odo.digits();
                    for q in 0..tail {
                        prefix[q + 1] = prefix[q] * x[t[q]];
                    }
                    for q in (0..tail).rev() {
                        suffix[q] = suffix[q + 1] * x[t[q]];
                    }
                    for (p, &k) in t.iter().enumerate() {
                        jac[i0 * n + k] += a * prefix[p] * suffix[p + 1];
                    }
                }
                odo.advance();
            }
        }
        Ok(jac)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// True iff every entry agrees with all its index permutations within
    /// `tol` relative to the largest absolute entry.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let thresh = threshold(tol, self.max_abs());
        let mut odo = Odometer::new(self.order, self.dim);
        let mut scratch = Vec::with_capacity(self.order);
        for &v in &self.values {
            let rep = self.values[sorted_offset(odo.digits(), &mut scratch, self.dim)];
            if (v - rep).abs() > thresh {
                return false;
            }
            odo.advance();
        }
        true
    }

    /// True iff `∇(A x^m) = m A x^{m-1}` holds coefficient-wise.
    ///
    /// Both sides are expanded into their degree-`(m-1)` monomial
    /// coefficients (monomials keyed by sorted index tuples) and compared
    /// within `tol` relative to the largest coefficient.
    pub fn is_weakly_symmetric(&self, tol: f64) -> bool {
        let n = self.dim;
        let m = self.order;
        let row_len = self.row_len();
        let mut grad = vec![0.0; n * row_len];
        let mut lin = vec![0.0; n * row_len];
        let mut odo = Odometer::new(m, n);
        let mut scratch = Vec::with_capacity(m);
        let mut rest = Vec::with_capacity(m - 1);
        for &a in &self.values {
            if a != 0.0 {
                let t = odo.digits();
                let key = sorted_offset(&t[1..], &mut scratch, n);
                lin[t[0] * row_len + key] += m as f64 * a;
                for p in 0..m {
                    rest.clear();
                    rest.extend(t.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &k)| k));
                    let key = sorted_offset(&rest, &mut scratch, n);
                    grad[t[p] * row_len + key] += a;
                }
            }
            odo.advance();
        }
        let scale = grad.iter().chain(&lin).fold(0.0f64, |s, v| s.max(v.abs()));
        let thresh = threshold(tol, scale);
        grad.iter().zip(&lin).all(|(g, l)| (g - l).abs() <= thresh)
    }

    /// `c · A`.
    pub fn scaled(&self, c: f64) -> Self {
        DenseTensor {
            order: self.order,
            dim: self.dim,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Relabels indices: entry `a_{i_1..i_m}` moves to
    /// `b_{π(i_1)..π(i_m)}`, where `perm[i-1] = π(i)` is 1-based.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, TensorError> {
        self.check_vector_len(perm.len())?;
        let mut seen = vec![false; self.dim];
        for &p in perm {
            let p0 = self.check_index(p)?;
            if seen[p0] {
                return Err(TensorError::SameIndex(p));
            }
            seen[p0] = true;
        }
        let mut values = vec![0.0; self.values.len()];
        let mut odo = Odometer::new(self.order, self.dim);
        for &v in &self.values {
            let off = odo.digits().iter().fold(0, |acc, &k| acc * self.dim + perm[k] - 1);
            values[off] = v;
            odo.advance();
        }
        Ok(DenseTensor { order: self.order, dim: self.dim, values })
    }

    fn check_vector_len(&self, len: usize) -> Result<(), TensorError> {
        if len != self.dim {
            return Err(TensorError::DimensionMismatch { expected: self.dim, found: len });
        }
        Ok(())
    }
}

/// Precomputed `R_i`, `P_j^i` and `|a_{ij..j}|` for every index pair.
///
/// Accessors take 1-based indices and panic when out of range.
#[derive(Debug, Clone, PartialEq)]
pub struct RowAggregates {
    dim: usize,
    r: Vec<f64>,
    /// `p[j*n + i] = P_j^i`.
    p: Vec<f64>,
    /// `diag[i*n + j] = |a_{ij..j}|`.
    diag: Vec<f64>,
}

impl RowAggregates {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `R_i`.
    pub fn row_sum(&self, i: usize) -> f64 {
        self.r[i - 1]
    }

    pub fn row_sums(&self) -> &[f64] {
        &self.r
    }

    /// `P_j^i`: row `j` restricted to tails avoiding `i`.
    pub fn partial(&self, j: usize, i: usize) -> f64 {
        self.p[(j - 1) * self.dim + (i - 1)]
    }

    /// `|a_{ij..j}|`.
    pub fn diag_like(&self, i: usize, j: usize) -> f64 {
        self.diag[(i - 1) * self.dim + (j - 1)]
    }

    /// `R_j − P_j^i`: the part of row `j` whose tails contain `i`.
    pub(crate) fn excluded(&self, j: usize, i: usize) -> f64 {
        (self.row_sum(j) - self.partial(j, i)).max(0.0)
    }

    /// Ordered pairs `(i, j)`, `i != j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.dim;
        (1..=n).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
    }
}
