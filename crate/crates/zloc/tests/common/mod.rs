#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zloc_core::DenseTensor;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_fixture(name: &str) -> DenseTensor {
    zloc::parse_tensor(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn random_tensor(rng: &mut ChaCha8Rng, order: usize, dim: usize, lo: f64, hi: f64) -> DenseTensor {
    let len = dim.pow(order as u32);
    let values = (0..len).map(|_| rng.random_range(lo..hi)).collect();
    DenseTensor::new(order, dim, values).unwrap()
}

/// Averages every entry over its index-permutation orbit.
pub fn symmetrize(t: &DenseTensor) -> DenseTensor {
    let (m, n) = (t.order(), t.dim());
    let keys: Vec<Vec<usize>> = (0..t.values().len())
        .map(|mut off| {
            let mut idx = vec![0; m];
            for slot in idx.iter_mut().rev() {
                *slot = off % n;
                off /= n;
            }
            idx.sort_unstable();
            idx
        })
        .collect();
    let mut orbit: HashMap<&[usize], (f64, usize)> = HashMap::new();
    for (k, &v) in keys.iter().zip(t.values()) {
        let e = orbit.entry(k.as_slice()).or_insert((0.0, 0));
        e.0 += v;
        e.1 += 1;
    }
    let values = keys
        .iter()
        .map(|k| {
            let (s, c) = orbit[k.as_slice()];
            s / c as f64
        })
        .collect();
    DenseTensor::new(m, n, values).unwrap()
}
