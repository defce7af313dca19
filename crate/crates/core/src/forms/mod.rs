//! Forms of degree `d`: homogeneous polynomials with their polarization,
//! value sets, similarity witnesses and composition checks.
//!
//! A [`Form`] stores one [`SparsePoly`] whose first `dim` variables are the
//! form variables. Any further variables are symbolic parameters living in
//! the coefficients (for example the `c` of a norm form of `x^d - c`).

mod classify;
mod file;
mod polar;
mod structure;
mod values;

use std::sync::Arc;

use thiserror::Error;

pub use classify::{classify_trivial_snp, FormOrigin, TrivialSnp};
pub use file::{AnyForm, FormFile, TermRecord};
pub use polar::{polarize, radical, MultilinearMap};
pub use structure::{isometry_witness_check, permits_composition_check, AlgebraStructure};
pub use values::{generated_subgroup, value_set, ValueSet, DEFAULT_BUDGET};

use crate::exactalg::{var_list, AlgError, FieldDescriptor, Ring, Scalar, SparsePoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("polynomial is not homogeneous of degree {0} in the form variables")]
    NotHomogeneous(u32),
    #[error("characteristic {characteristic} does not exceed degree {degree}")]
    Characteristic { characteristic: u64, degree: u32 },
    #[error("coefficient or scalar must be nonzero")]
    Zero,
    #[error("matrix is singular")]
    Singular,
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operation needs a form without symbolic parameters")]
    HasParameters,
    #[error("malformed form file: {0}")]
    File(String),
}

/// Homogeneous polynomial of degree `degree` in its first `dim` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<C: Ring> {
    degree: u32,
    dim: usize,
    poly: SparsePoly<C>,
    field: FieldDescriptor,
}

/// Default names `x1, ..., xn`.
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<C: Scalar> Form<C> {
    /// Wraps `poly`, checking homogeneity and the characteristic.
    ///
    /// Linear forms (`degree == 1`) are accepted because transfers take
    /// them as input.
    pub fn new(poly: SparsePoly<C>, dim: usize, degree: u32) -> Result<Self, FormError> {
        if dim == 0 || dim > poly.nvars() {
            return Err(FormError::Dimension(format!(
                "dimension {dim} with {} variables",
                poly.nvars()
            )));
        }
        if degree == 0 {
            return Err(FormError::NotHomogeneous(0));
        }
        let field = poly.coeff_sample().descriptor();
        if !field.allows_degree(degree) {
            return Err(FormError::Characteristic {
                characteristic: field.characteristic(),
                degree,
            });
        }
        if !poly.is_homogeneous_in(0..dim, degree) {
            return Err(FormError::NotHomogeneous(degree));
        }
        Ok(Form {
            degree,
            dim,
            poly,
            field,
        })
    }

    /// `sum a_i x_i^d` over variables `x1..xn`.
    pub fn diagonal(coeffs: &[C], degree: u32) -> Result<Self, FormError> {
        let sample = coeffs
            .first()
            .ok_or_else(|| FormError::Dimension("empty coefficient list".into()))?;
        if coeffs.iter().any(Ring::is_zero) {
            return Err(FormError::Zero);
        }
        let n = coeffs.len();
        let vars = var_list(&default_names("x", n));
        let poly = SparsePoly::from_terms(
            vars,
            sample,
            coeffs.iter().enumerate().map(|(i, a)| {
                let mut e = vec![0; n];
                e[i] = degree;
                (e, a.clone())
            }),
        )?;
        Form::new(poly, n, degree)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn poly(&self) -> &SparsePoly<C> {
        &self.poly
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn sample(&self) -> &C {
        self.poly.coeff_sample()
    }

    pub fn var_names(&self) -> &[String] {
        &self.poly.vars()[..self.dim]
    }

    pub fn params(&self) -> &[String] {
        &self.poly.vars()[self.dim..]
    }

    pub fn has_params(&self) -> bool {
        self.poly.nvars() > self.dim
    }

    /// The form variables as polynomials of the form's own ring.
    pub fn var_polys(&self) -> Vec<SparsePoly<C>> {
        (0..self.dim)
            .map(|i| SparsePoly::var_in(self.poly.vars().clone(), i, self.sample()))
            .collect()
    }

    /// `phi(images)`, with parameters left symbolic.
    pub fn substitute(&self, images: &[SparsePoly<C>]) -> Result<SparsePoly<C>, FormError> {
        if images.len() != self.dim {
            return Err(AlgError::Arity {
                expected: self.dim,
                got: images.len(),
            }
            .into());
        }
        let params: Arc<[String]> = var_list(self.params());
        let mut point = images.to_vec();
        for i in 0..params.len() {
            point.push(SparsePoly::var_in(params.clone(), i, self.sample()));
        }
        let sample = SparsePoly::zero_in(params, self.sample());
        Ok(self.poly.eval_with_sample(&sample, &point))
    }

    /// Value at a point of the base field; the form must be parameter free.
    pub fn value(&self, point: &[C]) -> Result<C, FormError> {
        if self.has_params() {
            return Err(FormError::HasParameters);
        }
        if point.len() != self.dim {
            return Err(AlgError::Arity {
                expected: self.dim,
                got: point.len(),
            }
            .into());
        }
        Ok(self.poly.eval_with_sample(self.sample(), point))
    }

    /// Replace a parameter by a constant; it is dropped from the variable list.
    pub fn specialize_param(&self, name: &str, value: &C) -> Result<Self, FormError> {
        let idx = self
            .params()
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| FormError::Dimension(format!("no parameter {name}")))?
            + self.dim;
        let p = self.poly.specialize(idx, value);
        let keep: Vec<String> = self
            .poly
            .vars()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let p = p.with_vars(keep.into())?;
        Form::new(p, self.dim, self.degree)
    }

    /// `a * phi`.
    pub fn scale(&self, a: &C) -> Result<Self, FormError> {
        if a.is_zero() {
            return Err(FormError::Zero);
        }
        Ok(Form {
            poly: self.poly.scale(a),
            ..self.clone()
        })
    }

    /// `phi^m`, of degree `m * d`.
    pub fn power(&self, m: u32) -> Result<Self, FormError> {
        if m < 2 {
            return Err(FormError::Dimension(format!("power {m} < 2")));
        }
        Form::new(self.poly.pow_usize(m), self.dim, self.degree * m)
    }

    /// `phi1(u1) * phi2(u2)` on the direct sum; the form variables of the two
    /// factors must be distinct.
    pub fn product(&self, other: &Self) -> Result<Self, FormError> {
        if self
            .var_names()
            .iter()
            .any(|v| other.poly.vars().contains(v))
            || other
                .var_names()
                .iter()
                .any(|v| self.poly.vars().contains(v))
        {
            return Err(FormError::Dimension(
                "product factors share a variable".into(),
            ));
        }
        let mut names: Vec<String> = self.var_names().to_vec();
        names.extend(other.var_names().iter().cloned());
        for p in self.params().iter().chain(other.params()) {
            if !names.contains(p) {
                names.push(p.clone());
            }
        }
        let vars: Arc<[String]> = names.into();
        let a = self.poly.with_vars(vars.clone())?;
        let b = other.poly.with_vars(vars)?;
        Form::new(a.mul(&b), self.dim + other.dim, self.degree + other.degree)
    }

    /// `phi(t x) - t^d phi(x)` vanishes for a fresh scalar `t`.
    pub fn check_homogeneity(&self) -> bool {
        let t = SparsePoly::var_in(var_list(&["__t"]), 0, self.sample());
        let scaled: Vec<SparsePoly<C>> = self.var_polys().iter().map(|x| x.mul(&t)).collect();
        match self.substitute(&scaled) {
            Ok(lhs) => lhs == t.pow(self.degree as u64).mul(&self.poly),
            Err(_) => false,
        }
    }
}

/// `phi^m` as a free function.
pub fn power_form<C: Scalar>(phi: &Form<C>, m: u32) -> Result<Form<C>, FormError> {
    phi.power(m)
}

/// `phi1(u1) * phi2(u2)` as a free function.
pub fn product_form<C: Scalar>(a: &Form<C>, b: &Form<C>) -> Result<Form<C>, FormError> {
    a.product(b)
}

/// `sum a_i x_i^d`.
pub fn diagonal_form<C: Scalar>(coeffs: &[C], degree: u32) -> Result<Form<C>, FormError> {
    Form::diagonal(coeffs, degree)
}
