use serde::{Deserialize, Serialize};

use super::{default_names, Form, FormError};
use crate::exactalg::{var_list, FieldDescriptor, Fp, Rational, Scalar, SparsePoly};

/// One `(coefficient, exponents)` pair; the coefficient is an exact `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord(pub String, pub Vec<u32>);

/// On-disk form description (JSON).
///
/// ```json
/// {"degree": 2, "dim": 2, "field": {"kind": "rationals"},
///  "terms": [["1", [2, 0]], ["1", [0, 2]]]}
/// ```
///
/// `vars` defaults to `x1..xn`; `params` names extra symbolic variables,
/// whose exponents follow the form variables in each term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormFile {
    pub degree: u32,
    pub dim: usize,
    pub field: FieldDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    pub terms: Vec<TermRecord>,
}

/// A parsed form over either supported coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyForm {
    Rational(Form<Rational>),
    Prime(Form<Fp>),
}

impl FormFile {
    pub fn parse(text: &str) -> Result<Self, FormError> {
        serde_json::from_str(text).map_err(|e| FormError::File(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("form files serialize")
    }

    fn names(&self) -> Result<Vec<String>, FormError> {
        let mut names = match &self.vars {
            Some(v) if v.len() != self.dim => {
                return Err(FormError::File(format!(
                    "{} variable names for dimension {}",
                    v.len(),
                    self.dim
                )))
            }
            Some(v) => v.clone(),
            None => default_names("x", self.dim),
        };
        names.extend(self.params.iter().cloned());
        Ok(names)
    }

    fn build<C: Scalar>(&self, sample: &C) -> Result<Form<C>, FormError> {
        let vars = var_list(&self.names()?);
        let terms = self
            .terms
            .iter()
            .map(|TermRecord(c, e)| {
                let r: Rational = c
                    .parse()
                    .map_err(|e: crate::exactalg::AlgError| FormError::File(e.to_string()))?;
                let v = sample.from_rational(&r).ok_or_else(|| {
                    FormError::File(format!("coefficient {c} not defined in {}", self.field))
                })?;
                Ok((e.clone(), v))
            })
            .collect::<Result<Vec<_>, FormError>>()?;
        let poly = SparsePoly::from_terms(vars, sample, terms)?;
        Form::new(poly, self.dim, self.degree)
    }

    pub fn to_form(&self) -> Result<AnyForm, FormError> {
        self.field.validate()?;
        match self.field {
            FieldDescriptor::Rationals => Ok(AnyForm::Rational(self.build(&Rational::zero())?)),
            FieldDescriptor::PrimeField { p } => Ok(AnyForm::Prime(self.build(&Fp::new(0, p))?)),
            FieldDescriptor::SimpleExtension { .. } => Err(FormError::File(
                "forms over extension fields are given by their transfer".into(),
            )),
        }
    }

    pub fn from_form<C: Scalar>(phi: &Form<C>) -> Self {
        let terms = phi
            .poly()
            .terms()
            .rev()
            .map(|(m, c)| TermRecord(c.to_string(), m.exps().to_vec()))
            .collect();
        FormFile {
            degree: phi.degree(),
            dim: phi.dim(),
            field: phi.field().clone(),
            vars: Some(phi.var_names().to_vec()),
            params: phi.params().to_vec(),
            terms,
        }
    }
}

impl AnyForm {
    pub fn degree(&self) -> u32 {
        match self {
            AnyForm::Rational(f) => f.degree(),
            AnyForm::Prime(f) => f.degree(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"degree": 3, "dim": 3, "field": {"kind": "rationals"},
            "terms": [["1", [3,0,0]], ["2", [0,3,0]], ["4", [0,0,3]], ["-6", [1,1,1]]]}"#;
        let f = FormFile::parse(text).unwrap();
        let AnyForm::Rational(phi) = f.to_form().unwrap() else {
            panic!("rational form expected")
        };
        assert_eq!(
            phi.value(&vec![Rational::one(); 3]).unwrap(),
            Rational::one()
        );
        let again = FormFile::parse(&FormFile::from_form(&phi).to_json()).unwrap();
        assert_eq!(again.to_form().unwrap(), AnyForm::Rational(phi));
    }

    #[test]
    fn prime_field_coefficients_reduce() {
        let text = r#"{"degree": 2, "dim": 1, "field": {"kind": "prime-field", "p": 5},
            "terms": [["1/2", [2]]]}"#;
        let AnyForm::Prime(phi) = FormFile::parse(text).unwrap().to_form().unwrap() else {
            panic!()
        };
        assert_eq!(phi.value(&[Fp::new(1, 5)]).unwrap(), Fp::new(3, 5));
    }

    #[test]
    fn malformed_files() {
        assert!(FormFile::parse("{\"degree\": 2}").is_err());
        let bad =
            r#"{"degree": 2, "dim": 1, "field": {"kind": "rationals"}, "terms": [["x", [2]]]}"#;
        assert!(FormFile::parse(bad).unwrap().to_form().is_err());
        let inhom =
            r#"{"degree": 2, "dim": 1, "field": {"kind": "rationals"}, "terms": [["1", [3]]]}"#;
        assert!(FormFile::parse(inhom).unwrap().to_form().is_err());
    }
}
