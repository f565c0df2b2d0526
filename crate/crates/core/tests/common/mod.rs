#![allow(clippy::needless_range_loop)]
#![allow(dead_code)]

use proptest::prelude::*;
use zloc_core::DenseTensor;

/// All 0-based tuples of `len` digits in `0..base`, last digit fastest.
pub fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |d| {
                    let mut t = t.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
    }
    out
}

fn one_based(t: &[usize]) -> Vec<usize> {
    t.iter().map(|k| k + 1).collect()
}

/// `(R, P, D)` by direct enumeration through `entry`, 0-based tables with
/// `p[j][i] = P_j^i` and `d[i][j] = |a_{ij..j}|`.
pub fn brute_aggregates(t: &DenseTensor) -> (Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let (m, n) = (t.order(), t.dim());
    let mut r = vec![0.0; n];
    let mut p = vec![vec![0.0; n]; n];
    let mut d = vec![vec![0.0; n]; n];
    for j in 0..n {
        for tail in tuples(m - 1, n) {
            let mut idx = vec![j];
            idx.extend(&tail);
            let a = t.entry(&one_based(&idx)).unwrap().abs();
            r[j] += a;
            for i in 0..n {
                if !tail.contains(&i) {
                    p[j][i] += a;
                }
            }
        }
        for i in 0..n {
            let mut idx = vec![j];
            idx.extend(std::iter::repeat_n(i, m - 1));
            d[j][i] = t.entry(&one_based(&idx)).unwrap().abs();
        }
    }
    (r, p, d)
}

/// Membership by the defining inequalities of each set, pair by pair.
pub struct BruteRegions {
    r: Vec<f64>,
    p: Vec<Vec<f64>>,
    d: Vec<Vec<f64>>,
}

impl BruteRegions {
    pub fn new(t: &DenseTensor) -> Self {
        let (r, p, d) = brute_aggregates(t);
        BruteRegions { r, p, d }
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.r.len();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
    }

    pub fn in_k(&self, z: f64) -> bool {
        self.r.iter().any(|&ri| z <= ri)
    }

    pub fn in_m(&self, z: f64) -> bool {
        self.pairs().any(|(i, j)| {
            let a = self.d[i][j];
            let quad = (z - (self.r[i] - a)) * (z - self.p[j][i]) <= a * (self.r[j] - self.p[j][i]);
            let boxed = z < self.r[i] - a && z < self.p[j][i];
            quad || boxed
        })
    }

    pub fn in_omega(&self, z: f64) -> bool {
        self.pairs().any(|(i, j)| {
            let (pij, pji) = (self.p[i][j], self.p[j][i]);
            let boxed = z < pij && z < pji;
            let quad = (z - pij) * (z - pji) <= (self.r[i] - pij) * (self.r[j] - pji);
            boxed || (quad && z <= self.r[i])
        })
    }

    pub fn max_r(&self) -> f64 {
        self.r.iter().cloned().fold(0.0, f64::max)
    }
}

/// Averages each entry over its permutation orbit.
pub fn symmetrize(t: &DenseTensor) -> DenseTensor {
    let (m, n) = (t.order(), t.dim());
    let all = tuples(m, n);
    let key = |tp: &Vec<usize>| {
        let mut s = tp.clone();
        s.sort();
        s
    };
    let mut sums = std::collections::HashMap::<Vec<usize>, (f64, usize)>::new();
    for tp in &all {
        let e = sums.entry(key(tp)).or_insert((0.0, 0));
        e.0 += t.entry(&one_based(tp)).unwrap();
        e.1 += 1;
    }
    let values = all
        .iter()
        .map(|tp| {
            let (s, c) = sums[&key(tp)];
            s / c as f64
        })
        .collect();
    DenseTensor::new(m, n, values).unwrap()
}

pub fn tensor_strategy(
    orders: std::ops::RangeInclusive<usize>,
    dims: std::ops::RangeInclusive<usize>,
    lo: f64,
    hi: f64,
) -> impl Strategy<Value = DenseTensor> {
    (orders, dims).prop_flat_map(move |(m, n)| {
        let len = n.pow(m as u32);
        proptest::collection::vec(lo..hi, len)
            .prop_map(move |v| DenseTensor::new(m, n, v).unwrap())
    })
}
