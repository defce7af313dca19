use serde::{Deserialize, Serialize};

use super::{ExtError, SimpleExt};
use crate::exactalg::{AlgError, FieldDescriptor, Fp, Rational, Scalar};

/// On-disk simple extension (JSON).
///
/// ```json
/// {"base": {"kind": "rationals"}, "minpoly": ["-2", "0", "0", "1"], "generator": "alpha"}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtFile {
    pub base: FieldDescriptor,
    /// Coefficients from the constant term up, as exact `"p/q"` strings.
    pub minpoly: Vec<String>,
    #[serde(default = "default_generator")]
    pub generator: String,
}

fn default_generator() -> String {
    "alpha".into()
}

impl ExtFile {
    pub fn parse(text: &str) -> Result<Self, ExtError> {
        serde_json::from_str(text).map_err(|e| ExtError::File(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("extension files serialize")
    }

    fn coeffs<C: Scalar>(&self, sample: &C) -> Result<Vec<C>, ExtError> {
        self.minpoly
            .iter()
            .map(|c| {
                let r: Rational = c
                    .parse()
                    .map_err(|e: AlgError| ExtError::File(e.to_string()))?;
                sample.from_rational(&r).ok_or_else(|| {
                    ExtError::File(format!("coefficient {c} not defined over {}", self.base))
                })
            })
            .collect()
    }

    pub fn to_rational_ext(&self) -> Result<SimpleExt<Rational>, ExtError> {
        match self.base {
            FieldDescriptor::Rationals => {
                SimpleExt::new(self.coeffs(&Rational::zero())?, &self.generator)
            }
            _ => Err(ExtError::File(format!(
                "expected base Q, found {}",
                self.base
            ))),
        }
    }

    pub fn to_prime_ext(&self) -> Result<SimpleExt<Fp>, ExtError> {
        match self.base {
            FieldDescriptor::PrimeField { p } => {
                FieldDescriptor::prime(p)?;
                SimpleExt::new(self.coeffs(&Fp::new(0, p))?, &self.generator)
            }
            _ => Err(ExtError::File(format!(
                "expected a prime field base, found {}",
                self.base
            ))),
        }
    }

    pub fn from_ext<C: Scalar>(ext: &SimpleExt<C>) -> Result<Self, ExtError> {
        Ok(ExtFile {
            base: ext.base().clone(),
            minpoly: ext
                .constant_minpoly()?
                .iter()
                .map(ToString::to_string)
                .collect(),
            generator: ext.generator_name().to_string(),
        })
    }
}
