use serde::{Deserialize, Serialize};

use crate::exactalg::Rational;

/// How a form was built, as far as the triviality classifier cares.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FormOrigin {
    Diagonal {
        coeffs: Vec<Rational>,
        degree: u32,
    },
    /// `det` on `size x size` matrices.
    Determinant {
        size: u32,
    },
    /// `phi(a + u) = a * phi0(u)` with `phi0` of degree `inner_degree`.
    LinearTimesForm {
        inner_degree: u32,
        characteristic: u64,
    },
    FieldNorm {
        degree: u32,
    },
    Other,
}

/// Whether the similarity group alone makes the norm principle trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TrivialSnp {
    /// `G_K = K^x` for every extension `K`.
    AllUnits {
        clause: String,
    },
    /// `G_K = K^{x d}` for every extension `K`.
    DthPowers {
        clause: String,
    },
    NotClassified,
}

pub fn classify_trivial_snp(origin: &FormOrigin) -> TrivialSnp {
    match origin {
        FormOrigin::Diagonal { coeffs, degree } if *degree >= 3 && !coeffs.is_empty() => {
            let d = *degree as usize;
            let n = coeffs.len();
            if coeffs.iter().all(|c| *c == coeffs[0]) {
                return TrivialSnp::DthPowers {
                    clause: "diagonal form <a, ..., a> of degree >= 3".into(),
                };
            }
            if n == 1 || (n + 1) % d == 0 || (n > d && (n - 1) % d == 0) {
                return TrivialSnp::DthPowers {
                    clause: format!(
                        "diagonal form of degree {d} and dimension {n} in {{1, sd-1, sd+1}}"
                    ),
                };
            }
            TrivialSnp::NotClassified
        }
        FormOrigin::Determinant { .. } => TrivialSnp::AllUnits {
            clause: "determinant of square matrices".into(),
        },
        FormOrigin::LinearTimesForm {
            inner_degree,
            characteristic,
        } if *characteristic == 0 || *characteristic > *inner_degree as u64 + 1 => {
            TrivialSnp::AllUnits {
                clause: "linear coordinate times a form, phi(a + u) = a phi0(u)".into(),
            }
        }
        _ => TrivialSnp::NotClassified,
    }
}
