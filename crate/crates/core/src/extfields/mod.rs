//! Simple extensions `F(alpha)`, their norm forms and transfers, and the
//! symbolic checks built on them: norm transitivity, the quadratic descent
//! identities, tower norms and the tower planner.

mod descent;
mod file;
mod plan;
mod tower;
mod transitivity;

use std::sync::Arc;

use thiserror::Error;

pub use descent::{
    identity_degree, symbolic_context, verify_pure_descent, verify_trinomial_descent,
    verify_trinomial_descent_at_b_zero, DescentShape, NormDescent, QuadraticContext,
};
pub use file::ExtFile;
pub use plan::{tower_plan, FormKind, Overall, StepVerdict, TowerPlan, TowerSpec};
pub use tower::{absolute_matrix, norm_tower_factor, TowerNorm};
pub use transitivity::{verify_norm_transitivity, TransitivityInstance};

use crate::exactalg::{
    is_irreducible_over, var_list, AlgError, ExtCtx, ExtElem, FieldDescriptor, Matrix, Ring,
    Scalar, SparsePoly,
};
use crate::forms::{default_names, Form, FormError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("minimal polynomial of the generator is reducible over {0}")]
    NotDisjoint(String),
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("A_{0} is not fixed by the conjugation")]
    NotInvariant(usize),
    #[error("extension needs concrete coefficients")]
    HasParameters,
    #[error("name {0} is used twice")]
    NameClash(String),
    #[error("malformed extension file: {0}")]
    File(String),
}

/// `F(alpha) = F[x]/(m)` with `m` monic of degree at least 2.
///
/// The coefficients of `m` may be polynomials in named parameters (`c` in
/// `x^3 - c`); such extensions are never checked for irreducibility.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleExt<C: Ring> {
    base: FieldDescriptor,
    params: Arc<[String]>,
    minpoly: Vec<SparsePoly<C>>,
    generator: String,
}

impl<C: Scalar> SimpleExt<C> {
    /// Concrete extension; `minpoly` must be irreducible over the base.
    pub fn new(minpoly: Vec<C>, generator: &str) -> Result<Self, ExtError> {
        let sample = minpoly
            .first()
            .ok_or_else(|| AlgError::BadMinpoly("empty minimal polynomial".into()))?;
        let base = sample.descriptor();
        FieldDescriptor::extension(
            base.clone(),
            minpoly.iter().map(Scalar::to_rational).collect(),
        )?;
        let params: Arc<[String]> = var_list::<&str>(&[]);
        let minpoly = minpoly
            .into_iter()
            .map(|c| SparsePoly::constant_in(params.clone(), c))
            .collect();
        Ok(SimpleExt {
            base,
            params,
            minpoly,
            generator: generator.to_string(),
        })
    }

    /// Extension with parameter-polynomial coefficients, e.g. `x^d - b x - c`.
    pub fn symbolic<S: AsRef<str>>(
        params: &[S],
        minpoly: Vec<SparsePoly<C>>,
        generator: &str,
    ) -> Result<Self, ExtError> {
        let params = var_list(params);
        if params.iter().any(|p| p == generator) {
            return Err(ExtError::NameClash(generator.to_string()));
        }
        if minpoly.len() < 3 {
            return Err(AlgError::BadMinpoly("degree must be at least 2".into()).into());
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(AlgError::BadMinpoly("not monic".into()).into());
        }
        let minpoly = minpoly
            .iter()
            .map(|m| m.with_vars(params.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SimpleExt {
            base: minpoly[0].coeff_sample().descriptor(),
            params,
            minpoly,
            generator: generator.to_string(),
        })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn generator_name(&self) -> &str {
        &self.generator
    }

    pub fn minpoly(&self) -> &[SparsePoly<C>] {
        &self.minpoly
    }

    pub fn sample(&self) -> &C {
        self.minpoly[0].coeff_sample()
    }

    /// Concrete minimal polynomial coefficients.
    pub fn constant_minpoly(&self) -> Result<Vec<C>, ExtError> {
        if !self.params.is_empty() {
            return Err(ExtError::HasParameters);
        }
        Ok(self.minpoly.iter().map(SparsePoly::constant_term).collect())
    }

    pub fn descriptor(&self) -> Result<FieldDescriptor, ExtError> {
        let m = self.constant_minpoly()?;
        Ok(FieldDescriptor::SimpleExtension {
            base: Box::new(self.base.clone()),
            minpoly: m.iter().map(Scalar::to_rational).collect(),
        })
    }

    /// Arithmetic context of a concrete extension.
    pub fn ctx(&self) -> Result<Arc<ExtCtx<C>>, ExtError> {
        Ok(ExtCtx::new(self.constant_minpoly()?, &self.generator)?)
    }

    /// The extension over a polynomial ring whose variables include the
    /// parameters.
    pub fn ctx_over(&self, vars: Arc<[String]>) -> Result<Arc<ExtCtx<SparsePoly<C>>>, ExtError> {
        let m = self
            .minpoly
            .iter()
            .map(|c| c.with_vars(vars.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExtCtx::new(m, &self.generator)?)
    }

    pub fn element(&self, coords: Vec<C>) -> Result<ExtElem<C>, ExtError> {
        Ok(self.ctx()?.element(coords)?)
    }

    /// Matrix of multiplication by `a` in the basis `1, alpha, ..., alpha^{d-1}`.
    pub fn regular_rep(&self, a: &ExtElem<C>) -> Matrix<C> {
        a.regular_rep()
    }

    pub fn norm(&self, a: &ExtElem<C>) -> C {
        a.norm()
    }

    /// `det(sum z_i rho(alpha^{i-1}))` in variables `z1..zd` followed by the
    /// parameters.
    pub fn norm_form(&self) -> Result<Form<C>, ExtError> {
        self.norm_form_named(&default_names("z", self.degree()))
    }

    pub fn norm_form_named(&self, names: &[String]) -> Result<Form<C>, ExtError> {
        let d = self.degree();
        if names.len() != d {
            return Err(FormError::Dimension("norm form names".into()).into());
        }
        let mut all = names.to_vec();
        for p in self.params.iter() {
            if all.contains(p) {
                return Err(ExtError::NameClash(p.clone()));
            }
            all.push(p.clone());
        }
        let vars = var_list(&all);
        let ctx = self.ctx_over(vars.clone())?;
        let z = ctx.element(
            (0..d)
                .map(|i| SparsePoly::var_in(vars.clone(), i, self.sample()))
                .collect(),
        )?;
        let det = z.regular_rep().det_expansion().with_vars(vars)?;
        Ok(Form::new(det, d, d as u32)?)
    }

    /// The multiplication table of the extension in the power basis.
    pub fn multiplication(&self) -> Result<crate::forms::AlgebraStructure<C>, ExtError> {
        Ok(crate::forms::AlgebraStructure::of_extension(&self.minpoly)?)
    }

    /// Whether the minimal polynomial stays irreducible over `k`, which makes
    /// `k` and `F(alpha)` linearly disjoint.
    pub fn is_disjoint_from(&self, k: &FieldDescriptor) -> Result<bool, ExtError> {
        let m: Vec<_> = self
            .constant_minpoly()?
            .iter()
            .map(Scalar::to_rational)
            .collect();
        Ok(is_irreducible_over(&m, k)?)
    }
}

/// Default coordinate names `{x}_{k}` for the transfer of a form in `x`.
pub fn transfer_names(form_vars: &[String], degree: usize) -> Vec<Vec<String>> {
    (0..degree)
        .map(|k| form_vars.iter().map(|x| format!("{x}_{k}")).collect())
        .collect()
}

/// `N_{F'/F}(phi0)` for `F' = ext`.
///
/// `phi0` has coefficients in `F'`: a parameter of `phi0` named like the
/// generator of `ext` stands for it. Each variable `x_i` becomes
/// `sum_k blocks[k][i] alpha^k`, and the `F'`-valued result is sent to `F`
/// by the determinant of its multiplication matrix. The output variables are
/// the blocks in order, then the remaining parameters.
pub fn transfer_form<C: Scalar>(
    ext: &SimpleExt<C>,
    phi0: &Form<C>,
    blocks: Option<&[Vec<String>]>,
) -> Result<Form<C>, ExtError> {
    let m = ext.degree();
    let n = phi0.dim();
    let default;
    let blocks = match blocks {
        Some(b) => b,
        None => {
            default = transfer_names(phi0.var_names(), m);
            &default
        }
    };
    if blocks.len() != m || blocks.iter().any(|b| b.len() != n) {
        return Err(FormError::Dimension(format!("transfer needs {m} blocks of {n} names")).into());
    }
    let mut names: Vec<String> = Vec::with_capacity(n * m);
    for name in blocks.iter().flatten() {
        if names.contains(name) {
            return Err(ExtError::NameClash(name.clone()));
        }
        names.push(name.clone());
    }
    let outer_params: Vec<String> = phi0
        .params()
        .iter()
        .filter(|p| *p != ext.generator_name())
        .chain(ext.params().iter())
        .cloned()
        .collect();
    for p in outer_params {
        if !names.contains(&p) {
            names.push(p);
        } else if blocks.iter().flatten().any(|b| *b == p) {
            return Err(ExtError::NameClash(p));
        }
    }
    let vars = var_list(&names);
    let ctx = ext.ctx_over(vars.clone())?;
    let sample = phi0.sample();
    let var = |name: &str| {
        SparsePoly::var_in(
            vars.clone(),
            vars.iter().position(|v| v == name).unwrap(),
            sample,
        )
    };
    let mut point: Vec<ExtElem<SparsePoly<C>>> = (0..n)
        .map(|i| ctx.element((0..m).map(|k| var(&blocks[k][i])).collect()))
        .collect::<Result<_, _>>()?;
    for p in phi0.params() {
        point.push(if p == ext.generator_name() {
            ctx.generator()
        } else {
            ctx.from_base(&var(p))
        });
    }
    let value = phi0.poly().eval_with_sample(&ctx.zero(), &point);
    let det = value.regular_rep().det_expansion().with_vars(vars)?;
    Ok(Form::new(det, n * m, phi0.degree() * m as u32)?)
}
