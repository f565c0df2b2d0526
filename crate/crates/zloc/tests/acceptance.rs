//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p zloc --test acceptance -- --nocapture` to see them.

mod common;

use std::time::Instant;

use common::{load_fixture, random_tensor, symmetrize};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zloc::cli::newton_eigenpairs;
use zloc_core::bounds::{bound_chain_middle, bound_gershgorin, bound_omega_max};
use zloc_core::oracle::{distinct_eigenvalues, restart_start, z_eigs_sweep_n2};
use zloc_core::regions::{region_k, region_m, region_omega};
use zloc_core::{DenseTensor, Eigenpair, OracleConfig};

fn report(id: u32, name: &str, start: Instant, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] criterion {id}: {name} ({:.2} s, {} failure(s))",
        start.elapsed().as_secs_f64(),
        failures.len()
    );
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {}", failures[0]);
}

/// m ∈ {3,4}, n ∈ {2..5}.
fn ensemble(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<DenseTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.random_range(3..=4);
            let n = rng.random_range(2..=5);
            random_tensor(&mut rng, m, n, lo, hi)
        })
        .collect()
}

#[test]
fn criterion_1_example1_golden() {
    let start = Instant::now();
    let agg = load_fixture("example1.json").aggregates();
    let omega = bound_omega_max(&agg).unwrap().value;
    let gersh = bound_gershgorin(&agg);
    let mut failures = Vec::new();
    if (omega - 4.3971).abs() > 1e-4 {
        failures.push(format!("omega_max {omega} vs 4.3971"));
    }
    if (gersh - 5.3333).abs() > 1e-4 {
        failures.push(format!("gershgorin {gersh} vs 5.3333"));
    }
    report(1, "example 1 golden values", start, &failures);
}

#[test]
fn criterion_2_example2_golden() {
    let start = Instant::now();
    let agg = load_fixture("example2.json").aggregates();
    let omega = bound_omega_max(&agg).unwrap().value;
    let gersh = bound_gershgorin(&agg);
    let mut failures = Vec::new();
    if (omega - 11.7268).abs() > 5e-4 {
        failures.push(format!("omega_max {omega} vs 11.7268"));
    }
    if (gersh - 14.5).abs() > 1e-12 {
        failures.push(format!("gershgorin {gersh} vs 14.5"));
    }
    report(2, "example 2 golden values", start, &failures);
}

#[test]
fn criterion_3_chain_inequality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (k, t) in ensemble(3, 1000, 0.0, 1.0).iter().enumerate() {
        let agg = t.aggregates();
        let om = bound_omega_max(&agg).unwrap().value;
        let mid = bound_chain_middle(&agg).unwrap();
        let g = bound_gershgorin(&agg);
        if !(om <= mid + 1e-12 && mid <= g + 1e-12) {
            failures.push(format!("tensor {k}: {om} <= {mid} <= {g} fails"));
        }
    }
    report(3, "chain omega_max <= middle <= gershgorin on 1000 tensors", start, &failures);
}

#[test]
fn criterion_4_region_nesting() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tensors = ensemble(4, 1000, 0.0, 1.0).into_iter().chain(ensemble(40, 1000, -1.0, 1.0));
    for (k, t) in tensors.enumerate() {
        let agg = t.aggregates();
        let (om, m, kk) = (region_omega(&agg), region_m(&agg), region_k(&agg));
        let top = 1.1 * bound_gershgorin(&agg);
        for s in 0..100 {
            let r = top * s as f64 / 99.0;
            if om.contains(r, 0.0) && !m.contains(r, 0.0) {
                failures.push(format!("tensor {k}: r={r} in Omega but not M"));
            }
            if m.contains(r, 0.0) && !kk.contains(r, 0.0) {
                failures.push(format!("tensor {k}: r={r} in M but not K"));
            }
        }
        if om.supremum() > m.supremum() + 1e-12 || m.supremum() > kk.supremum() + 1e-12 {
            failures.push(format!(
                "tensor {k}: suprema {} {} {} not nested",
                om.supremum(),
                m.supremum(),
                kk.supremum()
            ));
        }
    }
    report(4, "region nesting Omega ⊆ M ⊆ K on 2000 tensors", start, &failures);
}

#[test]
fn criterion_5_region_bound_duality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tensors = ensemble(5, 100, 0.0, 1.0).into_iter().chain(ensemble(50, 100, -1.0, 1.0));
    for (k, t) in tensors.enumerate() {
        let agg = t.aggregates();
        let pairs = [
            ("Omega", region_omega(&agg).supremum(), bound_omega_max(&agg).unwrap().value),
            ("M", region_m(&agg).supremum(), bound_chain_middle(&agg).unwrap()),
            ("K", region_k(&agg).supremum(), bound_gershgorin(&agg)),
        ];
        for (name, sup, bound) in pairs {
            if (sup - bound).abs() > 1e-10 {
                failures.push(format!("tensor {k}: sup {name} = {sup} vs bound {bound}"));
            }
        }
    }
    report(5, "region suprema equal closed-form bounds", start, &failures);
}

fn inclusion_failures(label: &str, t: &DenseTensor, pairs: &[Eigenpair], failures: &mut Vec<String>) {
    let agg = t.aggregates();
    let omega = region_omega(&agg);
    let omega_max = bound_omega_max(&agg).unwrap().value;
    for p in pairs {
        let r = p.lambda.abs();
        if !omega.contains(r, 1e-8) {
            failures.push(format!("{label}: |lambda| = {r} outside Omega"));
        }
        if r > omega_max + 1e-8 {
            failures.push(format!("{label}: |lambda| = {r} exceeds omega_max {omega_max}"));
        }
    }
}

#[test]
fn criterion_6_oracle_inclusion() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let e1 = load_fixture("example1.json");
    let sweep = z_eigs_sweep_n2(&e1, 100_000).unwrap();
    if sweep.is_empty() {
        failures.push("example 1: sweep found no eigenpairs".into());
    }
    inclusion_failures("example 1", &e1, &sweep, &mut failures);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut found = sweep.len();
    for k in 0..100 {
        let m = rng.random_range(3..=4);
        let n = rng.random_range(2..=3);
        let t = symmetrize(&random_tensor(&mut rng, m, n, 0.0, 1.0));
        let cfg = OracleConfig { restarts: 1000, seed: k, ..OracleConfig::default() };
        let pairs = newton_eigenpairs(&t, &cfg, 1).unwrap();
        if pairs.is_empty() {
            failures.push(format!("tensor {k}: Newton found no eigenpairs"));
        }
        found += pairs.len();
        inclusion_failures(&format!("tensor {k}"), &t, &pairs, &mut failures);
    }
    println!("    {found} eigenpairs checked");
    report(6, "oracle eigenvalues inside Omega and below omega_max", start, &failures);
}

#[test]
fn criterion_7_diagonal_exactness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..50 {
        let m = rng.random_range(3..=5);
        let n = rng.random_range(2..=5);
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
        let t = DenseTensor::diagonal(m, &d).unwrap();
        let expect = d.iter().fold(0.0f64, |s, v| s.max(v.abs()));
        let got = bound_omega_max(&t.aggregates()).unwrap().value;
        if got != expect {
            failures.push(format!("diagonal {k}: omega_max {got} != {expect}"));
        }
    }
    report(7, "diagonal omega_max = max |d_i| exactly", start, &failures);
}

#[test]
fn criterion_8_oracle_self_consistency() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..20 {
        let m = rng.random_range(3..=4);
        let t = symmetrize(&random_tensor(&mut rng, m, 2, -1.0, 1.0));
        let sweep = distinct_eigenvalues(&z_eigs_sweep_n2(&t, 100_000).unwrap(), 1e-8);
        let cfg = OracleConfig { seed: 100 + k, ..OracleConfig::default() };
        let newton = distinct_eigenvalues(&newton_eigenpairs(&t, &cfg, 1).unwrap(), 1e-8);
        let agree = sweep.len() == newton.len()
            && sweep.iter().zip(&newton).all(|(a, b)| (a - b).abs() <= 1e-8);
        if !agree {
            failures.push(format!("tensor {k}: sweep {sweep:?} vs newton {newton:?}"));
        }
    }

    // Jacobian against central differences with step 1e-6.
    for k in 0..20u64 {
        let m = rng.random_range(2..=4);
        let n = rng.random_range(2..=4);
        let t = random_tensor(&mut rng, m, n, -1.0, 1.0);
        for point in 0..10 {
            let x = restart_start(n, k, point);
            let jac = t.apply_jacobian(&x).unwrap();
            let scale = jac.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(1e-12);
            let h = 1e-6;
            for c in 0..n {
                let (mut xp, mut xm) = (x.clone(), x.clone());
                xp[c] += h;
                xm[c] -= h;
                let (yp, ym) = (t.apply(&xp).unwrap(), t.apply(&xm).unwrap());
                for r in 0..n {
                    let fd = (yp[r] - ym[r]) / (2.0 * h);
                    if (fd - jac[r * n + c]).abs() > 1e-5 * scale {
                        failures.push(format!("tensor {k}: J[{r},{c}] {} vs fd {fd}", jac[r * n + c]));
                    }
                }
            }
        }
    }
    report(8, "sweep/Newton agreement and Jacobian finite differences", start, &failures);
}
