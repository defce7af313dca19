//! Transfers of Pfister forms along `F(sqrt c)` and `F(cbrt c)`.
//!
//! The oracle is the definitional one: the product of the conjugates of
//! `phi0(z)`. The closed formulas are assembled under each reading of their
//! notation and compared against it; mismatches are recorded, not raised.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::exactalg::{
    identity_test, var_list, ExtCtx, ExtElem, IdentityMode, Rational, Ring, SparsePoly,
};
use crate::extfields::{transfer_form, SimpleExt};
use crate::forms::Form;
use crate::report::{Mode, VerifyReport};

/// `<<a>> = <1, -a>` or `<1, a>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PfisterSign {
    Minus,
    Plus,
}

impl PfisterSign {
    pub const ALL: [PfisterSign; 2] = [PfisterSign::Minus, PfisterSign::Plus];

    fn factor(self) -> i64 {
        match self {
            PfisterSign::Minus => -1,
            PfisterSign::Plus => 1,
        }
    }
}

/// Basis order of `<<a_1, ..., a_r, c>>` against the argument list `(u, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingReading {
    /// `phi0 _|_ c phi0`: slots `u_1..u_n` then `w_1..w_n`.
    Blocked,
    /// `<1, c> (x) phi0` in the order `p_1, c p_1, p_2, c p_2, ...`.
    Interleaved,
}

/// Meaning of `phi0(u_1 w_1, ..., u_n w_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductTermReading {
    /// `sum p_i (u_i w_i)^2`.
    ValueAtProducts,
    /// `(sum p_i u_i w_i)^2`.
    BilinearSquare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarticConvention {
    pub sign: PfisterSign,
    pub pairing: PairingReading,
    pub product: ProductTermReading,
}

impl QuarticConvention {
    pub fn all() -> Vec<QuarticConvention> {
        let mut out = Vec::new();
        for sign in PfisterSign::ALL {
            for pairing in [PairingReading::Blocked, PairingReading::Interleaved] {
                for product in [
                    ProductTermReading::ValueAtProducts,
                    ProductTermReading::BilinearSquare,
                ] {
                    out.push(QuarticConvention {
                        sign,
                        pairing,
                        product,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for QuarticConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}",
            label(&self.sign),
            label(&self.pairing),
            label(&self.product)
        )
    }
}

/// Meaning of `(psi)^3(args)` for a quadratic form `psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubeReading {
    /// `psi(args)^3`.
    CubeOfValue,
    /// The diagonal cubic with the coefficients of `psi`: `sum c_i x_i^3`.
    DiagonalCubic,
}

/// How a product argument `v_i w_i` enters a quadratic slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlotReading {
    /// `c_i v_i w_i`, the slot already carries a degree-2 quantity.
    Linear,
    /// `c_i (v_i w_i)^2`.
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SexticReading {
    pub sign: PfisterSign,
    pub cube: CubeReading,
    pub slot: SlotReading,
}

impl SexticReading {
    pub fn all() -> Vec<SexticReading> {
        let mut out = Vec::new();
        for sign in PfisterSign::ALL {
            for cube in [CubeReading::CubeOfValue, CubeReading::DiagonalCubic] {
                for slot in [SlotReading::Linear, SlotReading::Quadratic] {
                    out.push(SexticReading { sign, cube, slot });
                }
            }
        }
        out
    }
}

impl fmt::Display for SexticReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}",
            label(&self.sign),
            label(&self.cube),
            label(&self.slot)
        )
    }
}

fn label<T: Serialize>(x: &T) -> String {
    serde_json::to_value(x)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Parameters of the construction; `None` keeps a parameter symbolic.
pub type Symbolic = Option<Rational>;

pub struct QuarticOutcome {
    pub oracles: Vec<(PfisterSign, Form<Rational>)>,
    pub formulas: Vec<(QuarticConvention, SparsePoly<Rational>, bool)>,
    pub report: VerifyReport,
}

impl QuarticOutcome {
    pub fn oracle(&self, sign: PfisterSign) -> &Form<Rational> {
        &self
            .oracles
            .iter()
            .find(|(s, _)| *s == sign)
            .expect("both signs")
            .1
    }

    pub fn matching(&self) -> Vec<QuarticConvention> {
        self.formulas.iter().filter(|f| f.2).map(|f| f.0).collect()
    }
}

pub struct SexticOutcome {
    pub oracles: Vec<(PfisterSign, Form<Rational>)>,
    pub readings: Vec<(SexticReading, bool)>,
    pub report: VerifyReport,
}

impl SexticOutcome {
    pub fn oracle(&self, sign: PfisterSign) -> &Form<Rational> {
        &self
            .oracles
            .iter()
            .find(|(s, _)| *s == sign)
            .expect("both signs")
            .1
    }

    pub fn matching(&self) -> Vec<SexticReading> {
        self.readings.iter().filter(|r| r.1).map(|r| r.0).collect()
    }
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Polynomial ring over `blocks` followed by `a1..ar, c`.
struct Ring0 {
    vars: Arc<[String]>,
    blocks: Vec<Vec<String>>,
    r: usize,
}

impl Ring0 {
    fn new(prefixes: &[&str], r: usize) -> Self {
        let n = 1 << r;
        let blocks: Vec<Vec<String>> = prefixes.iter().map(|p| names(p, n)).collect();
        let mut all: Vec<String> = blocks.iter().flatten().cloned().collect();
        all.extend(names("a", r));
        all.push("c".into());
        Ring0 {
            vars: var_list(&all),
            blocks,
            r,
        }
    }

    fn var(&self, name: &str) -> SparsePoly<Rational> {
        let i = self
            .vars
            .iter()
            .position(|v| v == name)
            .expect("known variable");
        SparsePoly::var_in(self.vars.clone(), i, &q(0))
    }

    fn block(&self, k: usize) -> Vec<SparsePoly<Rational>> {
        self.blocks[k].iter().map(|v| self.var(v)).collect()
    }

    fn constant(&self, x: i64) -> SparsePoly<Rational> {
        SparsePoly::constant_in(self.vars.clone(), q(x))
    }

    fn c(&self) -> SparsePoly<Rational> {
        self.var("c")
    }

    /// Diagonal coefficients of `<<a_1, ..., a_r>>`.
    fn pfister(&self, sign: PfisterSign) -> Vec<SparsePoly<Rational>> {
        let a: Vec<SparsePoly<Rational>> = names("a", self.r).iter().map(|v| self.var(v)).collect();
        (0..1usize << self.r)
            .map(|idx| {
                (0..self.r)
                    .filter(|j| idx >> j & 1 == 1)
                    .fold(self.constant(1), |acc, j| {
                        acc.mul(&a[j].scale(&q(sign.factor())))
                    })
            })
            .collect()
    }

    /// `phi0` as a form in `x1..xn` with parameters `a1..ar`.
    fn pfister_form(&self, sign: PfisterSign) -> Result<Form<Rational>, VerifyError> {
        let n = 1usize << self.r;
        let mut vs = names("x", n);
        vs.extend(names("a", self.r));
        let vars = var_list(&vs);
        let coeffs = self.pfister(sign);
        let mut poly = SparsePoly::zero_in(vars.clone(), &q(0));
        for (i, c) in coeffs.iter().enumerate() {
            let x = SparsePoly::var_in(vars.clone(), i, &q(0));
            poly = poly.add(&c.with_vars(vars.clone())?.mul(&x.mul(&x)));
        }
        Ok(Form::new(poly, n, 2)?)
    }
}

/// `sum coeffs_i * args_i^2`.
fn diagonal_value(
    coeffs: &[SparsePoly<Rational>],
    args: &[SparsePoly<Rational>],
) -> SparsePoly<Rational> {
    coeffs
        .iter()
        .zip(args)
        .fold(coeffs[0].zero_like(), |acc, (c, x)| {
            acc.add(&c.mul(&x.mul(x)))
        })
}

/// Replace symbolic parameters that were given numeric values.
fn specialize(
    p: &SparsePoly<Rational>,
    a: &[Symbolic],
    c: &Symbolic,
) -> Result<SparsePoly<Rational>, VerifyError> {
    let mut out = p.clone();
    for (i, v) in a.iter().enumerate() {
        if let Some(v) = v {
            out = out.specialize_named(&format!("a{}", i + 1), v)?;
        }
    }
    if let Some(v) = c {
        out = out.specialize_named("c", v)?;
    }
    Ok(out)
}

fn specialize_form(
    f: &Form<Rational>,
    a: &[Symbolic],
    c: &Symbolic,
) -> Result<Form<Rational>, VerifyError> {
    let mut out = f.clone();
    for (i, v) in a.iter().enumerate() {
        if let Some(v) = v {
            out = out.specialize_param(&format!("a{}", i + 1), v)?;
        }
    }
    if let Some(v) = c {
        out = out.specialize_param("c", v)?;
    }
    Ok(out)
}

fn check_args(r: usize, a: &[Symbolic]) -> Result<(), VerifyError> {
    if !(1..=2).contains(&r) {
        return Err(VerifyError::Usage(format!(
            "Pfister fold r = {r} outside 1..=2"
        )));
    }
    if a.len() != r {
        return Err(VerifyError::Usage(format!(
            "expected {r} Pfister parameters, got {}",
            a.len()
        )));
    }
    if a.iter().flatten().any(Rational::is_zero) {
        return Err(VerifyError::Usage(
            "Pfister parameters must be nonzero".into(),
        ));
    }
    Ok(())
}

fn first_difference(
    p: &SparsePoly<Rational>,
    q: &SparsePoly<Rational>,
) -> Result<Option<String>, VerifyError> {
    let r = identity_test(p, q, IdentityMode::Exact)?;
    Ok((!r.pass).then(|| {
        r.witness
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }))
}

fn symbolic_extension(degree: usize, generator: &str) -> Result<SimpleExt<Rational>, VerifyError> {
    let cvars = var_list(&["c"]);
    let c = SparsePoly::var_in(cvars.clone(), 0, &q(0));
    let mut minpoly = vec![c.neg()];
    minpoly.extend((1..degree).map(|_| SparsePoly::zero_in(cvars.clone(), &q(0))));
    minpoly.push(SparsePoly::constant_in(cvars, q(1)));
    Ok(SimpleExt::symbolic(&["c"], minpoly, generator)?)
}

/// Coordinates of `phi0(z)` in the basis `1, t, ..., t^{m-1}` of
/// `F[t]/(t^m - c)`, where the `k`-th coordinate of `z` is block `k`.
fn value_coordinates(
    r0: &Ring0,
    sign: PfisterSign,
    m: usize,
) -> Result<ExtElem<SparsePoly<Rational>>, VerifyError> {
    let c = r0.c();
    let mut minpoly = vec![c.neg()];
    minpoly.extend((1..m).map(|_| r0.constant(0)));
    minpoly.push(r0.constant(1));
    let ctx = ExtCtx::new(minpoly, "t")?;
    let blocks: Vec<Vec<SparsePoly<Rational>>> = (0..m).map(|k| r0.block(k)).collect();
    let coeffs = r0.pfister(sign);
    let mut value = ctx.zero();
    for (i, p) in coeffs.iter().enumerate() {
        let z = ctx.element(blocks.iter().map(|b| b[i].clone()).collect())?;
        value = value.add(&ctx.from_base(p).mul(&z.mul(&z)));
    }
    Ok(value)
}

/// Transfer of `<<a_1, ..., a_r>>` along `F(sqrt c)/F` in the variables
/// `u1..un, w1..wn` with parameters `a1..ar, c`, compared with the closed
/// quartic formula under every convention.
pub fn quartic_pfister_transfer(
    r: usize,
    a: &[Symbolic],
    c: &Symbolic,
) -> Result<QuarticOutcome, VerifyError> {
    check_args(r, a)?;
    let r0 = Ring0::new(&["u", "w"], r);
    let n = 1usize << r;
    let ext = symbolic_extension(2, "s")?;
    let mut report = VerifyReport::new("quartic-transfer", Mode::Exact)
        .anchor("pfister-quadratic-transfer")
        .param("r", r)
        .param("dim", 2 * n)
        .param("degree", 4)
        .param(
            "c",
            c.as_ref().map_or("symbolic".into(), Rational::to_string),
        );
    for (i, v) in a.iter().enumerate() {
        report = report.param(
            &format!("a{}", i + 1),
            v.as_ref().map_or("symbolic".into(), Rational::to_string),
        );
    }
    let mut oracles = Vec::new();
    for sign in PfisterSign::ALL {
        let value = value_coordinates(&r0, sign, 2)?;
        let norm = value.mul(&value.conj_quadratic()?);
        let oracle = norm.coords()[0].clone();
        debug_assert!(norm.coords()[1].is_zero());
        let oracle = specialize_form(&Form::new(oracle, 2 * n, 4)?, a, c)?;
        let transfer = transfer_form(&ext, &r0.pfister_form(sign)?, Some(&r0.blocks))?;
        let transfer = specialize_form(&transfer, a, c)?;
        let mut child = identity_test(oracle.poly(), transfer.poly(), IdentityMode::Exact)?
            .anchor("transfer-form");
        child.identity = format!("oracle-equals-transfer[{}]", label(&sign));
        report.push_child(child);
        oracles.push((sign, oracle));
    }
    let u = r0.block(0);
    let w = r0.block(1);
    let args: Vec<SparsePoly<Rational>> = u.iter().chain(&w).cloned().collect();
    let mut formulas = Vec::new();
    for conv in QuarticConvention::all() {
        let p = r0.pfister(conv.sign);
        let cp: Vec<SparsePoly<Rational>> = p
            .iter()
            .map(|x| x.mul(&r0.c()).scale(&q(conv.sign.factor())))
            .collect();
        let coeffs: Vec<SparsePoly<Rational>> = match conv.pairing {
            PairingReading::Blocked => p.iter().chain(&cp).cloned().collect(),
            PairingReading::Interleaved => p
                .iter()
                .zip(&cp)
                .flat_map(|(x, y)| [x.clone(), y.clone()])
                .collect(),
        };
        let first = diagonal_value(&coeffs, &args);
        let products: Vec<SparsePoly<Rational>> = u.iter().zip(&w).map(|(x, y)| x.mul(y)).collect();
        let second = match conv.product {
            ProductTermReading::ValueAtProducts => diagonal_value(&p, &products),
            ProductTermReading::BilinearSquare => {
                let b = p
                    .iter()
                    .zip(&products)
                    .fold(r0.constant(0), |acc, (x, y)| acc.add(&x.mul(y)));
                b.mul(&b)
            }
        };
        let formula = first.mul(&first).sub(&second.mul(&r0.c()).scale(&q(4)));
        let formula = specialize(&formula, a, c)?;
        let oracle = &oracles.iter().find(|o| o.0 == conv.sign).unwrap().1;
        let diff = first_difference(&formula, oracle.poly())?;
        report = report.convention(
            &conv.to_string(),
            if diff.is_none() { "match" } else { "mismatch" },
        );
        if let Some(d) = &diff {
            report = report.param(&format!("difference[{conv}]"), d);
        }
        formulas.push((conv, formula, diff.is_none()));
    }
    let matching: Vec<String> = formulas
        .iter()
        .filter(|f| f.2)
        .map(|f| f.0.to_string())
        .collect();
    report.note(format!(
        "closed formula matches the oracle under: {}",
        if matching.is_empty() {
            "none".to_string()
        } else {
            matching.join(", ")
        }
    ));
    Ok(QuarticOutcome {
        oracles,
        formulas,
        report,
    })
}

/// `prod_k (y0 + w^k t y1 + w^{2k} t^2 y2)` over `Q(w)`, `w^2 + w + 1 = 0`,
/// rewritten with `t^3 = c`; the result has rational coefficients in
/// `y0, y1, y2, c`.
fn cubic_norm_over_eisenstein() -> Result<SparsePoly<Rational>, VerifyError> {
    let omega_ctx = ExtCtx::new(vec![q(1), q(1), q(1)], "omega")?;
    let zero = omega_ctx.zero();
    let vars = var_list(&["y0", "y1", "y2", "t"]);
    let var = |i: usize| SparsePoly::var_in(vars.clone(), i, &zero);
    let omega = omega_ctx.generator();
    let mut product = SparsePoly::constant_in(vars.clone(), omega_ctx.one());
    for k in 0..3u64 {
        let w1 = SparsePoly::constant_in(vars.clone(), omega.pow(k));
        let w2 = SparsePoly::constant_in(vars.clone(), omega.pow(2 * k));
        let t = var(3);
        let factor = var(0)
            .add(&w1.mul(&t).mul(&var(1)))
            .add(&w2.mul(&t.mul(&t)).mul(&var(2)));
        product = product.mul(&factor);
    }
    let out_vars = var_list(&["y0", "y1", "y2", "c"]);
    let mut terms = Vec::new();
    for (m, coef) in product.terms() {
        let e = m.exps();
        if e[3] % 3 != 0 || !coef.is_base() {
            return Err(VerifyError::Usage(format!(
                "conjugate product not rational at {:?}",
                e
            )));
        }
        terms.push((vec![e[0], e[1], e[2], e[3] / 3], coef.base_part().clone()));
    }
    Ok(SparsePoly::from_terms(out_vars, &q(0), terms)?)
}

/// Transfer of `<<a_1, ..., a_r>>` along `F(cbrt c)/F` for `F` containing a
/// primitive cube root of unity, in the variables `u, v, w` with
/// `z = u + v t + w t^2`, compared with the closed sextic formula under each
/// reading of its notation.
pub fn sextic_pfister_transfer(
    r: usize,
    a: &[Symbolic],
    c: &Symbolic,
) -> Result<SexticOutcome, VerifyError> {
    check_args(r, a)?;
    let r0 = Ring0::new(&["u", "v", "w"], r);
    let n = 1usize << r;
    let ext = symbolic_extension(3, "t")?;
    let norm3 = cubic_norm_over_eisenstein()?;
    let mut report = VerifyReport::new("sextic-transfer", Mode::Exact)
        .anchor("pfister-cubic-transfer")
        .param("r", r)
        .param(
            "c",
            c.as_ref().map_or("symbolic".into(), Rational::to_string),
        )
        .param("conjugates_over", "Q(omega), omega^2 + omega + 1 = 0");
    for (i, v) in a.iter().enumerate() {
        report = report.param(
            &format!("a{}", i + 1),
            v.as_ref().map_or("symbolic".into(), Rational::to_string),
        );
    }
    let mut oracles = Vec::new();
    for sign in PfisterSign::ALL {
        let value = value_coordinates(&r0, sign, 3)?;
        let mut point: Vec<SparsePoly<Rational>> = value.coords().to_vec();
        point.push(r0.c());
        let oracle = norm3.eval_with_sample(&r0.constant(0), &point);
        let oracle = specialize_form(&Form::new(oracle, 3 * n, 6)?, a, c)?;
        let transfer = transfer_form(&ext, &r0.pfister_form(sign)?, Some(&r0.blocks))?;
        let transfer = specialize_form(&transfer, a, c)?;
        let mut child = identity_test(oracle.poly(), transfer.poly(), IdentityMode::Exact)?
            .anchor("transfer-form");
        child.identity = format!("oracle-equals-transfer[{}]", label(&sign));
        report.push_child(child);
        oracles.push((sign, oracle));
    }
    let o = &oracles[0].1;
    report = report.param("degree", o.degree()).param("dim", o.dim());
    let u = r0.block(0);
    let v = r0.block(1);
    let w = r0.block(2);
    let prod =
        |x: &[SparsePoly<Rational>], y: &[SparsePoly<Rational>]| -> Vec<SparsePoly<Rational>> {
            x.iter().zip(y).map(|(a, b)| a.mul(b)).collect()
        };
    let mut readings = Vec::new();
    for reading in SexticReading::all() {
        let p = r0.pfister(reading.sign);
        let scaled = |k: &SparsePoly<Rational>| -> Vec<SparsePoly<Rational>> {
            p.iter().map(|x| x.mul(k)).collect()
        };
        let cv = r0.c();
        let two = r0.constant(2);
        // (plain coefficients, plain args, product coefficients, product args)
        let brackets = [
            (
                p.clone(),
                u.clone(),
                scaled(&two.mul(&cv).scale(&q(reading.sign.factor()))),
                prod(&v, &w),
            ),
            (scaled(&cv), w.clone(), scaled(&two), prod(&u, &v)),
            (p.clone(), v.clone(), scaled(&two), prod(&u, &w)),
        ];
        let mut values = Vec::new();
        let mut cubes = Vec::new();
        for (pc, pa, xc, xa) in &brackets {
            let plain = diagonal_value(pc, pa);
            let slot = match reading.slot {
                SlotReading::Linear => xc
                    .iter()
                    .zip(xa)
                    .fold(r0.constant(0), |acc, (k, y)| acc.add(&k.mul(y))),
                SlotReading::Quadratic => diagonal_value(xc, xa),
            };
            let value = plain.add(&slot);
            let cube = match reading.cube {
                CubeReading::CubeOfValue => value.mul(&value).mul(&value),
                CubeReading::DiagonalCubic => pc
                    .iter()
                    .zip(pa)
                    .chain(xc.iter().zip(xa))
                    .fold(r0.constant(0), |acc, (k, y)| {
                        acc.add(&k.mul(&y.pow_usize(3)))
                    }),
            };
            values.push(value);
            cubes.push(cube);
        }
        let formula = cubes[0]
            .add(&cv.mul(&cubes[1]))
            .add(&cv.mul(&cv).mul(&cubes[2]))
            .sub(
                &cv.scale(&q(3))
                    .mul(&values[0])
                    .mul(&values[1])
                    .mul(&values[2]),
            );
        let formula = specialize(&formula, a, c)?;
        let oracle = &oracles.iter().find(|o| o.0 == reading.sign).unwrap().1;
        let diff = first_difference(&formula, oracle.poly())?;
        report = report.convention(
            &reading.to_string(),
            if diff.is_none() { "match" } else { "mismatch" },
        );
        if let Some(d) = &diff {
            report = report.param(&format!("difference[{reading}]"), d);
        }
        readings.push((reading, diff.is_none()));
    }
    let matching: Vec<String> = readings
        .iter()
        .filter(|r| r.1)
        .map(|r| r.0.to_string())
        .collect();
    report.note(format!(
        "closed formula matches the oracle under: {}",
        if matching.is_empty() {
            "none".to_string()
        } else {
            matching.join(", ")
        }
    ));
    Ok(SexticOutcome {
        oracles,
        readings,
        report,
    })
}
