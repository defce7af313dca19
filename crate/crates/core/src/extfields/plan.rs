//! Decision table for when the norm principle is known to hold over a
//! tower `F = K_0 < K_1 < ... < K_n = K`.
//!
//! Galois-ness is declared by the caller, never computed.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// The kind of form the norm principle is asked about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FormKind {
    /// Norm of a separable field extension of prime degree `p`.
    PrimeFieldNorm {
        p: u64,
    },
    /// Nondegenerate cubic form permitting composition that is not the norm
    /// of a cubic field extension.
    CubicCompositionNonNorm,
    /// Reduced norm of a central simple algebra (division or split).
    CentralSimpleNorm {
        degree: u64,
    },
    /// `N_{L/F}` with `F < F' < L`, `[L:F'] = p` and `F'/F` Galois of degree
    /// `base_degree`.
    TransferredFieldNorm {
        p: u64,
        base_degree: u64,
    },
    /// `N_{F'/F}(phi0)` with `phi0` of prime degree `p`, round over every
    /// extension of `F'`, and `[F':F] = base_degree`.
    TransferredRoundForm {
        p: u64,
        base_degree: u64,
    },
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepVerdict {
    PPower,
    Coprime,
    Galois,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    SnpGuaranteed,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub form: FormKind,
    /// `[K_{i+1} : K_i]`
    pub steps: Vec<u64>,
    /// `K/F` is Galois.
    #[serde(default)]
    pub galois: bool,
    /// `K_{i+1}/K_i` is Galois; missing entries mean no.
    #[serde(default)]
    pub step_galois: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerPlan {
    pub steps: Vec<u64>,
    pub verdicts: Vec<StepVerdict>,
    pub overall: Overall,
    pub reason: String,
}

fn is_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn step_verdict(m: u64, p: u64, galois: bool) -> StepVerdict {
    if p >= 2 && is_power_of(m, p) {
        StepVerdict::PPower
    } else if p >= 2 && m.gcd(&p) == 1 {
        StepVerdict::Coprime
    } else if galois {
        StepVerdict::Galois
    } else {
        StepVerdict::Unknown
    }
}

pub fn tower_plan(spec: &TowerSpec) -> TowerPlan {
    let total: u64 = spec.steps.iter().product();
    let p = match spec.form {
        FormKind::PrimeFieldNorm { p }
        | FormKind::TransferredFieldNorm { p, .. }
        | FormKind::TransferredRoundForm { p, .. } => p,
        FormKind::CubicCompositionNonNorm => 3,
        FormKind::CentralSimpleNorm { degree } => degree,
        FormKind::Other => 0,
    };
    let verdicts: Vec<StepVerdict> = spec
        .steps
        .iter()
        .enumerate()
        .map(|(i, &m)| step_verdict(m, p, spec.step_galois.get(i).copied().unwrap_or(false)))
        .collect();
    let all_known = verdicts.iter().all(|v| *v != StepVerdict::Unknown);
    let (overall, reason) = match spec.form {
        FormKind::PrimeFieldNorm { .. } if spec.galois => (
            Overall::SnpGuaranteed,
            format!("Galois of degree {total}: split into a {p}-power step over a coprime step"),
        ),
        FormKind::PrimeFieldNorm { .. } if all_known => (
            Overall::SnpGuaranteed,
            format!("every step is a power of {p}, coprime to {p}, or Galois"),
        ),
        FormKind::PrimeFieldNorm { .. } => (
            Overall::Unknown,
            format!("a non-Galois step is neither a power of {p} nor coprime to {p}"),
        ),
        FormKind::CubicCompositionNonNorm => (
            Overall::SnpGuaranteed,
            "cubic composition form that is not a cubic field norm: every separable extension"
                .into(),
        ),
        FormKind::CentralSimpleNorm { .. } => (
            Overall::SnpGuaranteed,
            "reduced norm of a central simple algebra: every finite extension".into(),
        ),
        FormKind::TransferredFieldNorm { base_degree, .. } => {
            if spec.galois && total.gcd(&base_degree) == 1 {
                (
                    Overall::SnpGuaranteed,
                    format!("Galois of degree {total} coprime to [F':F] = {base_degree}"),
                )
            } else if total.gcd(&(p * base_degree)) == 1 {
                (
                    Overall::SnpGuaranteed,
                    format!("degree {total} coprime to [L:F] = {}", p * base_degree),
                )
            } else {
                (
                    Overall::Unknown,
                    "needs a Galois extension of degree coprime to [F':F], or degree coprime to [L:F]"
                        .into(),
                )
            }
        }
        FormKind::TransferredRoundForm { base_degree, .. } => {
            if is_power_of(total, p) && total.gcd(&base_degree) == 1 {
                (
                    Overall::SnpGuaranteed,
                    format!("degree {total} a power of {p} coprime to [F':F] = {base_degree}"),
                )
            } else {
                (
                    Overall::Unknown,
                    format!("needs degree a power of {p} coprime to [F':F] = {base_degree}"),
                )
            }
        }
        FormKind::Other => (Overall::Unknown, "no criterion for this form".into()),
    };
    TowerPlan {
        steps: spec.steps.clone(),
        verdicts,
        overall,
        reason,
    }
}
