//! Serializable report documents.

use serde::{Deserialize, Serialize};
use zloc_core::oracle::{InclusionReport, PairCheck};
use zloc_core::regions::RadialRegion;
use zloc_core::{BoundReport, DenseTensor, Eigenpair, STRUCTURE_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReportDoc {
    pub omega_max: f64,
    pub omega_hat_max: f64,
    pub omega_tilde_max: f64,
    pub chain_middle: f64,
    pub gershgorin: f64,
    pub attaining_pair: [usize; 2],
    pub warnings: Vec<String>,
}

impl From<&BoundReport> for BoundReportDoc {
    fn from(r: &BoundReport) -> Self {
        BoundReportDoc {
            omega_max: r.omega_max,
            omega_hat_max: r.omega_hat_max,
            omega_tilde_max: r.omega_tilde_max,
            chain_middle: r.chain_middle,
            gershgorin: r.gershgorin,
            attaining_pair: [r.attaining_pair.0, r.attaining_pair.1],
            warnings: r.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenpairDoc {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub residual: f64,
}

impl From<&Eigenpair> for EigenpairDoc {
    fn from(p: &Eigenpair) -> Self {
        EigenpairDoc { lambda: p.lambda, x: p.x.clone(), residual: p.residual }
    }
}

impl From<EigenpairDoc> for Eigenpair {
    fn from(d: EigenpairDoc) -> Self {
        Eigenpair { lambda: d.lambda, x: d.x, residual: d.residual }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalDoc {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionDoc {
    pub set: String,
    pub supremum: f64,
    pub empty: bool,
    pub intervals: Vec<IntervalDoc>,
}

impl RegionDoc {
    pub fn new(set: &str, region: &RadialRegion) -> Self {
        RegionDoc {
            set: set.to_string(),
            supremum: region.supremum(),
            empty: region.is_empty(),
            intervals: region
                .intervals()
                .iter()
                .map(|iv| IntervalDoc { lo: iv.lo, hi: iv.hi, lo_open: iv.lo_open, hi_open: iv.hi_open })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoDoc {
    pub order: usize,
    pub dim: usize,
    pub entries: usize,
    pub nonzero_entries: usize,
    pub nonnegative: bool,
    pub symmetric: bool,
    pub weakly_symmetric: bool,
    pub row_sums: Vec<f64>,
}

impl InfoDoc {
    pub fn new(t: &DenseTensor) -> Self {
        InfoDoc {
            order: t.order(),
            dim: t.dim(),
            entries: t.values().len(),
            nonzero_entries: t.values().iter().filter(|&&v| v != 0.0).count(),
            nonnegative: t.is_nonnegative(),
            symmetric: t.is_symmetric(STRUCTURE_TOL),
            weakly_symmetric: t.is_weakly_symmetric(STRUCTURE_TOL),
            row_sums: t.aggregates().row_sums().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCheckDoc {
    pub lambda: f64,
    pub in_omega: bool,
    pub in_m: bool,
    pub in_k: bool,
    /// Absent when the tensor is not weakly symmetric and nonnegative.
    pub under_omega_max: Option<bool>,
}

impl From<&PairCheck> for PairCheckDoc {
    fn from(c: &PairCheck) -> Self {
        PairCheckDoc {
            lambda: c.lambda,
            in_omega: c.in_omega,
            in_m: c.in_m,
            in_k: c.in_k,
            under_omega_max: c.under_omega_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    /// `sweep`, `newton` or `file`.
    pub method: String,
    pub seed: Option<u64>,
    pub eigenpairs: usize,
    pub omega_max: f64,
    pub certified: bool,
    pub passed: bool,
    pub checks: Vec<PairCheckDoc>,
}

impl VerifyDoc {
    pub fn new(method: &str, seed: Option<u64>, report: &InclusionReport) -> Self {
        VerifyDoc {
            method: method.to_string(),
            seed,
            eigenpairs: report.checks.len(),
            omega_max: report.omega_max,
            certified: report.certified,
            passed: report.all_passed(),
            checks: report.checks.iter().map(PairCheckDoc::from).collect(),
        }
    }
}
