//! Quadratic descent for norm forms of `x^d - c` and `x^d - b x - c`.
//!
//! `K = F(s)` with `s^2 = e` and `sigma: s -> -s`. For
//! `z = sum z_i alpha^{i-1}` with `z_i = u_i + v_i s`, the product
//! `N_{K/F}(phi_K(z))` equals `phi` evaluated at an explicit vector built
//! from the sums `A_i` of `z_i sigma(z_j)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExtError, SimpleExt};
use crate::exactalg::{
    identity_test, var_list, ExtCtx, ExtElem, Fp, IdentityMode, Rational, Ring, SparsePoly,
};
use crate::report::{FailureBound, Mode, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentShape {
    /// `alpha^d = c`
    Pure,
    /// `alpha^d = b alpha + c`
    Trinomial,
}

impl DescentShape {
    pub fn minpoly_text(self, d: usize) -> String {
        match self {
            DescentShape::Pure => format!("x^{d} - c"),
            DescentShape::Trinomial => format!("x^{d} - b*x - c"),
        }
    }
}

/// A way of writing `N_{K/F}(phi_K(z))` as `phi(vector)`.
///
/// Only the quadratic case is provided; other `[K : F]` would implement
/// this with their own conjugates.
pub trait NormDescent<R: Ring> {
    /// `N_{K/F}(phi_K(z))` computed directly.
    fn norm_of_value(&self) -> Result<R, ExtError>;
    /// The vector `a` with `phi(a) = N_{K/F}(phi_K(z))`.
    fn descent_vector(&self) -> Result<Vec<R>, ExtError>;
}

/// `z_1..z_d` in `R[s]/(s^2 - e)` together with the minimal polynomial data.
#[derive(Clone, Debug)]
pub struct QuadraticContext<R: Ring> {
    shape: DescentShape,
    k: Arc<ExtCtx<R>>,
    c: R,
    b: R,
    z: Vec<ExtElem<R>>,
}

impl<R: Ring> QuadraticContext<R> {
    pub fn new(shape: DescentShape, e: R, c: R, b: R, u: &[R], v: &[R]) -> Result<Self, ExtError> {
        if u.len() != v.len() || u.len() < 2 {
            return Err(crate::exactalg::AlgError::Dimension(
                "need d >= 2 pairs (u_i, v_i)".into(),
            )
            .into());
        }
        let k = ExtCtx::new(vec![e.neg(), e.zero_like(), e.one_like()], "s")?;
        let z = u
            .iter()
            .zip(v)
            .map(|(a, b)| k.element(vec![a.clone(), b.clone()]))
            .collect::<Result<_, _>>()?;
        let b = match shape {
            DescentShape::Pure => e.zero_like(),
            DescentShape::Trinomial => b,
        };
        Ok(QuadraticContext { shape, k, c, b, z })
    }

    pub fn degree(&self) -> usize {
        self.z.len()
    }

    pub fn shape(&self) -> DescentShape {
        self.shape
    }

    pub fn z(&self) -> &[ExtElem<R>] {
        &self.z
    }

    fn sigma(&self, x: &ExtElem<R>) -> ExtElem<R> {
        x.conj_quadratic().expect("s^2 = e")
    }

    /// `A_0, ..., A_{2d-2}`:
    /// `A_{2k} = sum_{i+j=k} z_i sigma(z_j)` and
    /// `A_{2k+1} = sum_{i+j=k+d} z_i sigma(z_j)` (0-based indices).
    pub fn a_values(&self) -> Result<Vec<R>, ExtError> {
        let d = self.degree();
        let conj: Vec<ExtElem<R>> = self.z.iter().map(|x| self.sigma(x)).collect();
        let pair_sum = |total: usize| {
            (0..d)
                .filter(|&i| total >= i && total - i < d)
                .fold(self.k.zero(), |acc, i| {
                    acc.add(&self.z[i].mul(&conj[total - i]))
                })
        };
        let mut out = Vec::with_capacity(2 * d - 1);
        for idx in 0..2 * d - 1 {
            let k = idx / 2;
            let a = if idx % 2 == 0 {
                pair_sum(k)
            } else {
                pair_sum(k + d)
            };
            if !a.is_base() {
                return Err(ExtError::NotInvariant(idx));
            }
            out.push(a.base_part().clone());
        }
        Ok(out)
    }

    fn alpha_ctx(&self) -> Result<Arc<ExtCtx<ExtElem<R>>>, ExtError> {
        let d = self.degree();
        let mut m = vec![self.k.zero(); d + 1];
        m[0] = self.k.from_base(&self.c.neg());
        m[1] = self.k.from_base(&self.b.neg());
        m[d] = self.k.one();
        Ok(ExtCtx::new(m, "alpha")?)
    }

    /// `w = phi_K(z)`, an element of `K`.
    pub fn value_in_k(&self) -> Result<ExtElem<R>, ExtError> {
        let ctx = self.alpha_ctx()?;
        Ok(ctx.element(self.z.clone())?.norm())
    }
}

impl<R: Ring> NormDescent<R> for QuadraticContext<R> {
    fn norm_of_value(&self) -> Result<R, ExtError> {
        let w = self.value_in_k()?;
        let n = w.mul(&self.sigma(&w));
        if !n.is_base() {
            return Err(ExtError::NotInvariant(usize::MAX));
        }
        Ok(n.base_part().clone())
    }

    /// Entry `k` is `A_{2k} + c A_{2k+1} + b A_{2k-1}` where each term exists;
    /// the last entry is `A_{2d-2} + b A_{2d-3}`.
    fn descent_vector(&self) -> Result<Vec<R>, ExtError> {
        let a = self.a_values()?;
        let d = self.degree();
        Ok((0..d)
            .map(|k| {
                let mut x = a[2 * k].clone();
                if k + 1 < d {
                    x = x.add(&self.c.mul(&a[2 * k + 1]));
                }
                if k >= 1 {
                    x = x.add(&self.b.mul(&a[2 * k - 1]));
                }
                x
            })
            .collect())
    }
}

/// The norm form of `x^d - b x - c` (or `x^d - c`) in `z1..zd, c[, b]`.
fn symbolic_norm_form(d: usize, shape: DescentShape) -> Result<SparsePoly<Rational>, ExtError> {
    let params: &[&str] = match shape {
        DescentShape::Pure => &["c"],
        DescentShape::Trinomial => &["c", "b"],
    };
    let p = SparsePoly::variables(params, &Rational::zero());
    let vars = p[0].vars().clone();
    let mut m = vec![SparsePoly::zero_in(vars.clone(), &Rational::zero()); d + 1];
    m[0] = p[0].neg();
    if shape == DescentShape::Trinomial {
        m[1] = p[1].neg();
    }
    m[d] = SparsePoly::constant_in(vars, Rational::one());
    let ext = SimpleExt::symbolic(params, m, "alpha")?;
    Ok(ext.norm_form()?.poly().clone())
}

fn ring_names(d: usize, with_b: bool) -> Vec<String> {
    let mut names: Vec<String> = (1..=d).map(|i| format!("u{i}")).collect();
    names.extend((1..=d).map(|i| format!("v{i}")));
    names.extend(["e".to_string(), "c".to_string()]);
    if with_b {
        names.push("b".to_string());
    }
    names
}

/// Symbolic context over `Q[u, v, e, c(, b)]`.
pub fn symbolic_context(
    d: usize,
    shape: DescentShape,
) -> Result<QuadraticContext<SparsePoly<Rational>>, ExtError> {
    let names = ring_names(d, shape == DescentShape::Trinomial);
    let vars = var_list(&names);
    let x = |name: &str| {
        SparsePoly::var_in(
            vars.clone(),
            vars.iter().position(|v| v == name).unwrap(),
            &Rational::zero(),
        )
    };
    let u: Vec<_> = (1..=d).map(|i| x(&format!("u{i}"))).collect();
    let v: Vec<_> = (1..=d).map(|i| x(&format!("v{i}"))).collect();
    let b = match shape {
        DescentShape::Pure => SparsePoly::zero_in(vars.clone(), &Rational::zero()),
        DescentShape::Trinomial => x("b"),
    };
    QuadraticContext::new(shape, x("e"), x("c"), b, &u, &v)
}

/// Total degree bound `2 d (d + 1)` of both sides, used for the
/// Schwartz-Zippel bound.
pub fn identity_degree(d: usize) -> u32 {
    (2 * d * (d + 1)) as u32
}

/// FNV-1a digest of a polynomial's canonical text, to compare runs.
fn digest(text: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for byte in text.bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn run_descent(
    d: usize,
    shape: DescentShape,
    b_zero: bool,
    mode: IdentityMode,
) -> Result<VerifyReport, ExtError> {
    if d < 2 {
        return Err(
            crate::exactalg::AlgError::Dimension("degree must be at least 2".into()).into(),
        );
    }
    let identity = match shape {
        DescentShape::Pure => "pure-descent",
        DescentShape::Trinomial => "trinomial-descent",
    };
    let phi = symbolic_norm_form(d, shape)?;
    match mode {
        IdentityMode::Exact => {
            let ctx = if b_zero {
                let mut c = symbolic_context(d, DescentShape::Pure)?;
                c.shape = DescentShape::Trinomial;
                c
            } else {
                symbolic_context(d, shape)?
            };
            let lhs = ctx.norm_of_value()?;
            let vector = ctx.descent_vector()?;
            let sample = lhs.zero_like();
            let mut point = vector;
            point.push(ctx.c.clone());
            if shape == DescentShape::Trinomial {
                point.push(ctx.b.clone());
            }
            let rhs = phi.eval_with_sample(&sample, &point);
            let inner = identity_test(&lhs, &rhs, IdentityMode::Exact)?;
            let mut r = VerifyReport::new(identity, Mode::Exact)
                .anchor(identity)
                .param("d", d)
                .param("minpoly", shape.minpoly_text(d))
                .param("lhs_terms", lhs.num_terms())
                .param("lhs_digest", digest(&lhs.to_string()));
            if b_zero {
                r = r.param("b", 0);
            }
            r.pass = inner.pass;
            r.witness = inner.witness;
            Ok(r)
        }
        IdentityMode::Probabilistic {
            prime,
            trials,
            seed,
        } => {
            let degree = identity_degree(d);
            if prime <= degree as u64 {
                return Err(crate::exactalg::AlgError::PrimeTooSmall { prime, degree }.into());
            }
            if !crate::exactalg::is_prime_u64(prime) {
                return Err(crate::exactalg::AlgError::NotPrime(prime).into());
            }
            let zero = Fp::new(0, prime);
            let phi_p = phi.try_map_coeffs(&zero, |c| {
                crate::exactalg::ModPrime::to_fp(c, prime)
                    .ok_or_else(|| crate::exactalg::AlgError::Unreducible(c.to_string(), prime))
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut r = VerifyReport::new(identity, Mode::Probabilistic { prime, trials })
                .anchor(identity)
                .param("d", d)
                .param("minpoly", shape.minpoly_text(d))
                .with_seed(seed);
            if b_zero {
                r = r.param("b", 0);
            }
            for t in 0..trials {
                let mut draw = || Fp::from_u64(rng.gen_range(0..prime), prime);
                let u: Vec<Fp> = (0..d).map(|_| draw()).collect();
                let v: Vec<Fp> = (0..d).map(|_| draw()).collect();
                let e = draw();
                let c = draw();
                let drawn_b = draw();
                let b = if b_zero || shape == DescentShape::Pure {
                    zero
                } else {
                    drawn_b
                };
                let ctx = QuadraticContext::new(DescentShape::Trinomial, e, c, b, &u, &v)?;
                let lhs = ctx.norm_of_value()?;
                let mut point = ctx.descent_vector()?;
                point.push(c);
                if shape == DescentShape::Trinomial {
                    point.push(b);
                }
                let rhs = phi_p.eval_with_sample(&zero, &point);
                r = r
                    .param(&format!("trial{t}.lhs"), lhs)
                    .param(&format!("trial{t}.rhs"), rhs);
                if lhs != rhs && r.pass {
                    let show = |xs: &[Fp]| {
                        xs.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    r.fail([
                        ("trial".to_string(), t.to_string()),
                        ("u".to_string(), show(&u)),
                        ("v".to_string(), show(&v)),
                        ("e".to_string(), e.to_string()),
                        ("c".to_string(), c.to_string()),
                        ("b".to_string(), b.to_string()),
                    ]);
                }
            }
            r.failure_bound = Some(FailureBound::new(degree, prime, trials));
            Ok(r)
        }
    }
}

/// `N_{K/F}(phi_K(z)) = phi(A_0 + c A_1, ..., A_{2d-2})` for `x^d - c`.
pub fn verify_pure_descent(d: usize, mode: IdentityMode) -> Result<VerifyReport, ExtError> {
    run_descent(d, DescentShape::Pure, false, mode)
}

/// The same identity for `x^d - b x - c` with the `b`-shifted vector.
pub fn verify_trinomial_descent(d: usize, mode: IdentityMode) -> Result<VerifyReport, ExtError> {
    run_descent(d, DescentShape::Trinomial, false, mode)
}

/// The trinomial check with `b` specialized to 0; its lhs digest and trial
/// values coincide with those of [`verify_pure_descent`].
pub fn verify_trinomial_descent_at_b_zero(
    d: usize,
    mode: IdentityMode,
) -> Result<VerifyReport, ExtError> {
    run_descent(d, DescentShape::Trinomial, true, mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn first_a_value() {
        let ctx = symbolic_context(3, DescentShape::Pure).unwrap();
        let a = ctx.a_values().unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a[0].to_string(), "-v1^2*e + u1^2");
        // A_3 = z_3 sigma(z_3)
        assert_eq!(a[3].to_string(), "-v3^2*e + u3^2");
    }

    #[test]
    fn zero_v_gives_square() {
        // with v = 0 the vector is the coordinates of (sum u_i alpha^{i-1})^2
        let d = 3;
        let c = q(5);
        let u = vec![q(1), q(2), q(-3)];
        let ctx = QuadraticContext::new(
            DescentShape::Pure,
            q(7),
            c.clone(),
            q(0),
            &u,
            &[q(0), q(0), q(0)],
        )
        .unwrap();
        let vec = ctx.descent_vector().unwrap();
        let alpha = ExtCtx::new(vec![c.neg(), q(0), q(0), q(1)], "alpha").unwrap();
        let x = alpha.element(u).unwrap();
        assert_eq!(vec, x.mul(&x).into_coords());
        assert_eq!(vec.len(), d);
    }

    #[test]
    fn quadratic_case_by_hand() {
        // d = 2: (A_0 + c A_1, A_2) with A_1 = z_2 sigma(z_2), A_2 = z_1 sigma(z_2) + z_2 sigma(z_1)
        let ctx = symbolic_context(2, DescentShape::Pure).unwrap();
        let v = ctx.descent_vector().unwrap();
        assert_eq!(v[0].to_string(), "-v2^2*e*c + u2^2*c - v1^2*e + u1^2");
        assert_eq!(v[1].to_string(), "-2*v1*v2*e + 2*u1*u2");
    }

    #[test]
    fn small_degrees_exact() {
        for d in 2..=3 {
            assert!(verify_pure_descent(d, IdentityMode::Exact).unwrap().pass);
            assert!(
                verify_trinomial_descent(d, IdentityMode::Exact)
                    .unwrap()
                    .pass
            );
        }
    }

    #[test]
    fn b_zero_matches_pure() {
        let a = verify_pure_descent(3, IdentityMode::Exact).unwrap();
        let b = verify_trinomial_descent_at_b_zero(3, IdentityMode::Exact).unwrap();
        assert_eq!(a.parameters["lhs_digest"], b.parameters["lhs_digest"]);
        let mode = IdentityMode::default_probabilistic(11);
        let a = verify_pure_descent(4, mode).unwrap();
        let b = verify_trinomial_descent_at_b_zero(4, mode).unwrap();
        for t in 0..3 {
            let k = format!("trial{t}.lhs");
            assert_eq!(a.parameters[&k], b.parameters[&k]);
        }
        assert!(a.pass && b.pass);
    }

    #[test]
    fn probabilistic_bound() {
        let r = verify_trinomial_descent(4, IdentityMode::default_probabilistic(3)).unwrap();
        assert!(r.pass);
        assert!(r.failure_bound.unwrap().below_pow2(40));
    }

    #[test]
    fn wrong_vector_is_caught() {
        // dropping the c A_1 term breaks the identity
        let ctx = QuadraticContext::new(
            DescentShape::Pure,
            q(3),
            q(2),
            q(0),
            &[q(1), q(1)],
            &[q(1), q(0)],
        )
        .unwrap();
        let a = ctx.a_values().unwrap();
        let phi = symbolic_norm_form(2, DescentShape::Pure).unwrap();
        let good = ctx.descent_vector().unwrap();
        let bad = vec![a[0].clone(), a[2].clone()];
        let eval = |v: &[Rational]| phi.eval(&[v[0].clone(), v[1].clone(), q(2)]).unwrap();
        assert_eq!(eval(&good), ctx.norm_of_value().unwrap());
        assert_ne!(eval(&bad), ctx.norm_of_value().unwrap());
    }
}
