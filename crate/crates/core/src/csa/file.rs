use serde::{Deserialize, Serialize};

use super::{CsaError, Quaternion, QuaternionAlgebra};
use crate::exactalg::Rational;
use crate::extfields::{ExtFile, SimpleExt};

/// Coordinate bound for the search for a zero of the norm form run on
/// every loaded algebra. A zero found there overrides `declared_division`.
pub const DIVISION_SEARCH_HEIGHT: u64 = 100;

/// Quaternion algebra, extension and element `Delta` (JSON).
///
/// ```json
/// {"a": "-1", "b": "-1", "declared_division": false,
///  "k": {"base": {"kind": "rationals"}, "minpoly": ["-2", "0", "1"]},
///  "delta": [["0", "1", "0", "0"], ["0", "0", "1", "0"]]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuatFile {
    pub a: Rational,
    pub b: Rational,
    #[serde(default)]
    pub declared_division: bool,
    pub k: ExtFile,
    /// One quaternion `(t, x, y, z)` per power-basis element of `K`.
    pub delta: Vec<[Rational; 4]>,
}

impl QuatFile {
    pub fn parse(text: &str) -> Result<Self, CsaError> {
        serde_json::from_str(text).map_err(|e| CsaError::File(e.to_string()))
    }

    pub fn build(
        &self,
    ) -> Result<
        (
            QuaternionAlgebra,
            SimpleExt<Rational>,
            Vec<Quaternion<Rational>>,
        ),
        CsaError,
    > {
        let mut alg = QuaternionAlgebra::new(self.a.clone(), self.b.clone())?
            .certify_by_search(DIVISION_SEARCH_HEIGHT);
        if self.declared_division {
            alg = alg.declare_division();
        }
        let k = self.k.to_rational_ext()?;
        let delta = self.delta.iter().map(|c| alg.elem(c.clone())).collect();
        Ok((alg, k, delta))
    }
}
