//! Exhaustive norm-principle checks over finite fields.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::VerifyError;
use crate::exactalg::{is_irreducible_over_fp, ExtCtx, ExtElem, Fp, Ring};
use crate::forms::{generated_subgroup, value_set, Form};
use crate::report::{Mode, VerifyReport};

/// `GF(p^m) = F_p[t]/(f)` with `f` the first monic irreducible polynomial of
/// degree `m` in lexicographic order of its coefficients.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    m: usize,
    ctx: Arc<ExtCtx<Fp>>,
}

impl FiniteField {
    pub fn new(p: u64, m: usize) -> Result<Self, VerifyError> {
        if !crate::exactalg::is_prime_u64(p) {
            return Err(crate::exactalg::AlgError::NotPrime(p).into());
        }
        if m == 0 {
            return Err(VerifyError::Usage(
                "extension degree must be positive".into(),
            ));
        }
        let size = (p as u128).checked_pow(m as u32).filter(|&s| s < 1 << 32);
        if size.is_none() {
            return Err(VerifyError::Usage(format!("GF({p}^{m}) is too large")));
        }
        let ctx = ExtCtx::new(first_irreducible(p, m), "t")?;
        Ok(FiniteField { p, m, ctx })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn ctx(&self) -> &Arc<ExtCtx<Fp>> {
        &self.ctx
    }

    /// The element whose base-`p` digits (lowest first) are its coordinates.
    pub fn element(&self, code: u64) -> ExtElem<Fp> {
        let mut c = code;
        let coords = (0..self.m)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                Fp::from_u64(d, self.p)
            })
            .collect();
        self.ctx.element(coords).expect("m coordinates")
    }

    pub fn code(&self, x: &ExtElem<Fp>) -> u64 {
        x.coords()
            .iter()
            .rev()
            .fold(0, |acc, c| acc * self.p + c.value())
    }

    /// `x^{(p^m - 1)/(p - 1)}`, an element of `F_p`.
    pub fn norm_power(&self, x: &ExtElem<Fp>) -> Fp {
        let e = (self.order() - 1) / (self.p - 1);
        let y = x.pow(e);
        debug_assert!(y.is_base());
        *y.base_part()
    }

    /// `det` of the regular representation.
    pub fn norm_det(&self, x: &ExtElem<Fp>) -> Fp {
        x.norm()
    }
}

fn first_irreducible(p: u64, m: usize) -> Vec<Fp> {
    if m == 1 {
        return vec![Fp::new(0, p), Fp::new(1, p)];
    }
    let count = p.pow(m as u32);
    (0..count)
        .map(|code| {
            let mut c = code;
            let mut f: Vec<Fp> = (0..m)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    Fp::from_u64(d, p)
                })
                .collect();
            f.push(Fp::new(1, p));
            f
        })
        .find(|f| is_irreducible_over_fp(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Why `D = G` may be assumed for the form under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionClass {
    PermitsComposition,
    PowerOfComposition,
    ProductOfComposition,
    Undeclared,
}

/// Value sets and norms found by [`snp_bruteforce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnpOutcome {
    /// `D_F(phi)`, residues in `1..p`.
    pub base_values: BTreeSet<u64>,
    /// Subgroup of `F_p^x` generated by `D_F(phi)`.
    pub base_group: BTreeSet<u64>,
    /// `D_K(phi_K)` as element codes.
    pub ext_values: BTreeSet<u64>,
    /// `N_{K/F}(D_K(phi_K))`.
    pub norms: BTreeSet<u64>,
    pub evaluations: u64,
}

fn show(s: &BTreeSet<u64>) -> String {
    let v: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

/// Enumerate `D_K(phi_K)` for `K = GF(p^m)`, map it through the norm and
/// check that every norm lies in the group generated by `D_F(phi)`.
///
/// For forms permitting composition (and powers and products of them)
/// `D = G`, so this decides the norm principle for `K/F`.
pub fn snp_bruteforce(
    phi: &Form<Fp>,
    m: usize,
    class: CompositionClass,
    budget: u64,
) -> Result<(VerifyReport, SnpOutcome), VerifyError> {
    if class == CompositionClass::Undeclared {
        return Err(VerifyError::NotCompositionType);
    }
    let base = value_set(phi, budget)?;
    let k = FiniteField::new(phi.sample().modulus(), m)?;
    let q = k.order();
    let n = phi.dim() as u32;
    let needed = ((q as u128).pow(n) - 1) / (q as u128 - 1);
    if needed > budget as u128 {
        return Err(crate::forms::FormError::Budget { needed, budget }.into());
    }
    let zero = k.ctx().zero();
    // partition by the position of the leading 1 and its first free coordinate
    let parts: Vec<(usize, u64)> = (0..n as usize)
        .flat_map(|lead| {
            let first = if lead + 1 < n as usize { q } else { 1 };
            (0..first).map(move |f| (lead, f))
        })
        .collect();
    let raw: Vec<(BTreeSet<u64>, u64)> = parts
        .par_iter()
        .map(|&(lead, first)| {
            let n = n as usize;
            let mut found = BTreeSet::new();
            let mut evals = 0u64;
            let free = n.saturating_sub(lead + 2);
            let mut point = vec![zero.clone(); n];
            point[lead] = k.ctx().one();
            if lead + 1 < n {
                point[lead + 1] = k.element(first);
            }
            for idx in 0..q.pow(free as u32) {
                let mut r = idx;
                for x in point[n - free..].iter_mut() {
                    *x = k.element(r % q);
                    r /= q;
                }
                let v = phi.poly().eval_with_sample(&zero, &point);
                evals += 1;
                if !v.is_zero() {
                    found.insert(k.code(&v));
                }
            }
            (found, evals)
        })
        .collect();
    let mut raw_values = BTreeSet::new();
    let mut evaluations = base.evaluations;
    for (s, e) in raw {
        raw_values.extend(s);
        evaluations += e;
    }
    let d = phi.degree() as u64;
    let dth: BTreeSet<u64> = (1..q).map(|l| k.code(&k.element(l).pow(d))).collect();
    let ext_values: BTreeSet<u64> = raw_values
        .iter()
        .flat_map(|&v| {
            let x = k.element(v);
            dth.iter()
                .map(|&l| k.code(&x.mul(&k.element(l))))
                .collect::<Vec<_>>()
        })
        .collect();
    let norms: BTreeSet<u64> = ext_values
        .iter()
        .map(|&v| k.norm_power(&k.element(v)).value())
        .collect();
    let base_group = generated_subgroup(&base.values, k.p());
    let mut report = VerifyReport::new(
        "finite-field-norm-principle",
        Mode::Exhaustive { evaluations },
    )
    .anchor("finite-field-norm-principle")
    .param("p", k.p())
    .param("m", m)
    .param("degree", d)
    .param("dim", n)
    .param("base_values", show(&base.values))
    .param("base_group", show(&base_group))
    .param("ext_values", ext_values.len())
    .param("norms", show(&norms));
    if let Some(bad) = norms.iter().find(|x| !base_group.contains(x)) {
        let a = ext_values
            .iter()
            .find(|&&v| k.norm_power(&k.element(v)).value() == *bad)
            .copied()
            .unwrap_or(0);
        report.fail([
            ("a".to_string(), k.element(a).to_string()),
            ("norm".to_string(), bad.to_string()),
        ]);
    }
    Ok((
        report,
        SnpOutcome {
            base_values: base.values,
            base_group,
            ext_values,
            norms,
            evaluations,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::SparsePoly;
    use crate::forms::DEFAULT_BUDGET;

    fn monomial(p: u64, d: u32) -> Form<Fp> {
        let x = SparsePoly::variables(&["x"], &Fp::new(0, p));
        Form::new(x[0].pow_usize(d), 1, d).unwrap()
    }

    #[test]
    fn cubes_over_f7() {
        let (r, out) = snp_bruteforce(
            &monomial(7, 3),
            2,
            CompositionClass::PermitsComposition,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(r.pass);
        assert_eq!(out.base_values, BTreeSet::from([1, 6]));
        assert!(out.norms.iter().all(|x| [1, 6].contains(x)));
        assert_eq!(out.ext_values.len(), 16);
    }

    #[test]
    fn undeclared_is_refused() {
        assert_eq!(
            snp_bruteforce(
                &monomial(5, 2),
                2,
                CompositionClass::Undeclared,
                DEFAULT_BUDGET
            )
            .unwrap_err(),
            VerifyError::NotCompositionType
        );
    }

    #[test]
    fn field_codes_round_trip() {
        let k = FiniteField::new(5, 3).unwrap();
        for code in [0, 1, 7, 124] {
            assert_eq!(k.code(&k.element(code)), code);
        }
        let x = k.element(38);
        assert_eq!(k.norm_power(&x), k.norm_det(&x));
    }
}
