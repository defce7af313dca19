use std::collections::BTreeSet;

use super::{Form, FormError};
use crate::exactalg::{Fp, Ring};

/// Default cap on form evaluations for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// `D(phi)` over a prime field together with the subgroup of `F_p^x` it
/// generates. Elements are residues in `1..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSet {
    pub values: BTreeSet<u64>,
    pub generated: BTreeSet<u64>,
    pub evaluations: u64,
}

/// Closure of `gens` under multiplication mod `p`.
pub fn generated_subgroup(gens: &BTreeSet<u64>, p: u64) -> BTreeSet<u64> {
    let mut group: BTreeSet<u64> = BTreeSet::from([1 % p]);
    let mut frontier: Vec<u64> = vec![1 % p];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = ((x as u128 * g as u128) % p as u128) as u64;
            if group.insert(y) {
                frontier.push(y);
            }
        }
    }
    group
}

/// Exhaustive value set over `F_p`.
///
/// Only projective representatives (first nonzero coordinate 1) are
/// evaluated; the remaining values are `phi(v) * lambda^d`.
pub fn value_set(phi: &Form<Fp>, budget: u64) -> Result<ValueSet, FormError> {
    if phi.has_params() {
        return Err(FormError::HasParameters);
    }
    let p = phi.sample().modulus();
    let n = phi.dim() as u32;
    let needed = ((p as u128).pow(n) - 1) / (p as u128 - 1);
    if needed > budget as u128 {
        return Err(FormError::Budget { needed, budget });
    }
    let d = phi.degree() as u64;
    let dth: BTreeSet<u64> = (1..p).map(|l| Fp::from_u64(l, p).pow(d).value()).collect();
    let mut raw = BTreeSet::new();
    let mut point = vec![Fp::new(0, p); n as usize];
    let mut evaluations = 0u64;
    for lead in 0..n as usize {
        // coordinates before `lead` are 0, `lead` is 1, the rest run freely
        let free = n as usize - lead - 1;
        for (i, x) in point.iter_mut().enumerate() {
            *x = Fp::new((i == lead) as i64, p);
        }
        let count = p.pow(free as u32);
        for idx in 0..count {
            let mut r = idx;
            for x in point[lead + 1..].iter_mut() {
                *x = Fp::from_u64(r % p, p);
                r /= p;
            }
            let v = phi.value(&point)?;
            evaluations += 1;
            if !v.is_zero() {
                raw.insert(v.value());
            }
        }
    }
    let values: BTreeSet<u64> = raw
        .iter()
        .flat_map(|&v| {
            dth.iter()
                .map(move |&l| ((v as u128 * l as u128) % p as u128) as u64)
        })
        .collect();
    let generated = generated_subgroup(&values, p);
    Ok(ValueSet {
        values,
        generated,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::SparsePoly;

    fn fp_form(p: u64, d: u32) -> Form<Fp> {
        let x = SparsePoly::variables(&["x"], &Fp::new(0, p));
        Form::new(x[0].pow_usize(d), 1, d).unwrap()
    }

    #[test]
    fn cubes_mod_seven() {
        let v = value_set(&fp_form(7, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(v.values, BTreeSet::from([1, 6]));
        assert_eq!(v.generated, BTreeSet::from([1, 6]));
    }

    #[test]
    fn squares_mod_five() {
        let v = value_set(&fp_form(5, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(v.values, BTreeSet::from([1, 4]));
    }

    #[test]
    fn budget_is_enforced() {
        let f = Form::diagonal(&[Fp::new(1, 7), Fp::new(1, 7), Fp::new(1, 7)], 3).unwrap();
        assert!(matches!(value_set(&f, 10), Err(FormError::Budget { .. })));
        assert_eq!(value_set(&f, 57).unwrap().evaluations, 57);
    }

    #[test]
    fn subgroup_closure() {
        assert_eq!(
            generated_subgroup(&BTreeSet::from([2]), 7),
            BTreeSet::from([1, 2, 4])
        );
    }
}
