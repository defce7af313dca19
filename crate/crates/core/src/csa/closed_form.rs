//! Closed forms for `N_{K/F}(Nrd(x + y sqrt c))` with an unknown constant
//! `gamma`: `Nrd(y (x y^{-1} x - gamma y))` for quaternions and
//! `det(x y# x - gamma det(y) y) / det(y)^e` for `3 x 3` matrices.
//! Candidate values of `gamma` (and `e`) are swept against the direct
//! computation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CsaError, Quaternion, QuaternionAlgebra};
use crate::exactalg::{ExtCtx, Field, Matrix, Rational, Ring};
use crate::report::{Mode, VerifyReport};

/// A named candidate for `gamma` as a function of `c` and the algebra
/// degree.
#[derive(Clone, Copy)]
pub struct Candidate {
    pub label: &'static str,
    pub value: fn(&Rational, i64) -> Rational,
}

impl std::fmt::Debug for Candidate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label)
    }
}

pub fn default_candidates() -> Vec<Candidate> {
    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }
    vec![
        Candidate {
            label: "c",
            value: |c, _| c.clone(),
        },
        Candidate {
            label: "-c",
            value: |c, _| c.neg(),
        },
        Candidate {
            label: "d",
            value: |_, d| r(d, 1),
        },
        Candidate {
            label: "-d",
            value: |_, d| r(-d, 1),
        },
        Candidate {
            label: "2c",
            value: |c, _| c.add(c),
        },
        Candidate {
            label: "c^2",
            value: |c, _| c.mul(c),
        },
        Candidate {
            label: "1/c",
            value: |c, _| c.inv().unwrap_or_else(Rational::zero),
        },
        Candidate {
            label: "1",
            value: |_, _| r(1, 1),
        },
        Candidate {
            label: "-1",
            value: |_, _| r(-1, 1),
        },
        Candidate {
            label: "1/2",
            value: |_, _| r(1, 2),
        },
        Candidate {
            label: "-1/2",
            value: |_, _| r(-1, 2),
        },
        Candidate {
            label: "0",
            value: |_, _| r(0, 1),
        },
    ]
}

/// `N_{K/F}(Nrd(x + y s))` in `F[s]/(s^2 - c)`.
pub fn quaternion_direct(
    c: &Rational,
    x: &Quaternion<Rational>,
    y: &Quaternion<Rational>,
) -> Result<Rational, CsaError> {
    let k = ExtCtx::new(vec![c.neg(), Rational::zero(), Rational::one()], "s")?;
    let (a, b) = x.params();
    let coords: Vec<_> = (0..4)
        .map(|l| k.element(vec![x.coords()[l].clone(), y.coords()[l].clone()]))
        .collect::<Result<_, _>>()?;
    let z = Quaternion::new(
        k.from_base(a),
        k.from_base(b),
        [
            coords[0].clone(),
            coords[1].clone(),
            coords[2].clone(),
            coords[3].clone(),
        ],
    );
    Ok(z.nrd().norm())
}

/// `Nrd(y (x y^{-1} x - gamma y))`.
pub fn quaternion_closed_form(
    x: &Quaternion<Rational>,
    y: &Quaternion<Rational>,
    gamma: &Rational,
) -> Result<Rational, CsaError> {
    let yi = y.inv().ok_or(CsaError::NotInvertible)?;
    let inner = x.mul(&yi).mul(x).sub(&y.scale(gamma));
    Ok(y.mul(&inner).nrd())
}

/// One instance of the quaternion probe.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionInstance {
    pub c: Rational,
    pub x: Quaternion<Rational>,
    pub y: Quaternion<Rational>,
}

/// One instance of the split cubic probe.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixInstance {
    pub c: Rational,
    pub x: Matrix<Rational>,
    pub y: Matrix<Rational>,
}

const NON_SQUARES: [i64; 8] = [2, 3, 5, 6, 7, 10, -1, -3];

/// Seeded instances with small integer coordinates, `c` a non-square and
/// `y` invertible.
pub fn random_quaternion_instances(
    alg: &QuaternionAlgebra,
    n: usize,
    seed: u64,
) -> Vec<QuaternionInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut coords = || [(); 4].map(|_| rng.gen_range(-5i64..=5));
        let (x, y) = (alg.int(coords()), alg.int(coords()));
        if y.nrd().is_zero() {
            continue;
        }
        let c = Rational::from_int(NON_SQUARES[rng.gen_range(0..NON_SQUARES.len())]);
        out.push(QuaternionInstance { c, x, y });
    }
    out
}

/// Seeded `3 x 3` instances with entries in `-4..=4` and `det(y) != 0`.
pub fn random_matrix_instances(n: usize, seed: u64) -> Vec<MatrixInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut entries = || {
            Matrix::from_rows(
                (0..3)
                    .map(|_| {
                        (0..3)
                            .map(|_| Rational::from_int(rng.gen_range(-4i64..=4)))
                            .collect()
                    })
                    .collect(),
            )
            .expect("3x3")
        };
        let (x, y) = (entries(), entries());
        if y.det_expansion().is_zero() {
            continue;
        }
        let c = Rational::from_int(NON_SQUARES[rng.gen_range(0..NON_SQUARES.len())]);
        out.push(MatrixInstance { c, x, y });
    }
    out
}

/// Labels that matched every instance, and the report listing per-label
/// pass counts and the first failing instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeOutcome {
    pub consistent: Vec<String>,
    pub report: VerifyReport,
}

fn sweep(
    identity: &str,
    labels: Vec<String>,
    n: usize,
    mut check: impl FnMut(usize, usize) -> Result<bool, CsaError>,
) -> Result<ProbeOutcome, CsaError> {
    let mut report = VerifyReport::new(
        identity,
        Mode::Batch {
            instances: n as u64,
        },
    )
    .anchor(identity)
    .param("instances", n);
    let mut consistent = Vec::new();
    for (li, label) in labels.iter().enumerate() {
        let mut passed = 0;
        let mut first_failure = None;
        for i in 0..n {
            if check(li, i)? {
                passed += 1;
            } else if first_failure.is_none() {
                first_failure = Some(i);
            }
        }
        report = report.param(&format!("gamma[{label}]"), format!("{passed}/{n}"));
        match first_failure {
            Some(i) => report = report.param(&format!("gamma[{label}].first_failure"), i),
            None => consistent.push(label.clone()),
        }
    }
    if consistent.is_empty() {
        report.fail([("consistent".to_string(), "none".to_string())]);
    } else {
        report = report.convention("gamma", consistent.join(" | "));
        report.note(format!("resolved constant: {}", consistent.join(" | ")));
    }
    Ok(ProbeOutcome { consistent, report })
}

/// Sweep `gamma` over `candidates` for quaternion instances of `alg`.
pub fn quaternion_gamma_sweep(
    alg: &QuaternionAlgebra,
    instances: &[QuaternionInstance],
    candidates: &[Candidate],
) -> Result<ProbeOutcome, CsaError> {
    let direct: Vec<Rational> = instances
        .iter()
        .map(|t| quaternion_direct(&t.c, &t.x, &t.y))
        .collect::<Result<_, _>>()?;
    let labels = candidates.iter().map(|c| c.label.to_string()).collect();
    let mut out = sweep(
        "quaternion-closed-form",
        labels,
        instances.len(),
        |li, i| {
            let t = &instances[i];
            let g = (candidates[li].value)(&t.c, 2);
            Ok(quaternion_closed_form(&t.x, &t.y, &g)? == direct[i])
        },
    )?;
    out.report = out
        .report
        .param("a", alg.a())
        .param("b", alg.b())
        .param("degree", 2);
    Ok(out)
}

/// `x^2 - T(x) x + S(x) 1` for a `3 x 3` matrix, `S` the sum of principal
/// `2 x 2` minors.
pub fn sharp3<F: Field>(x: &Matrix<F>) -> Result<Matrix<F>, CsaError> {
    if x.rows() != 3 || x.cols() != 3 {
        return Err(CsaError::Dimension("sharp3 needs a 3x3 matrix".into()));
    }
    let t = x.trace();
    let mut s = x.sample().zero_like();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        s = s.add(
            &x.get(i, i)
                .mul(x.get(j, j))
                .sub(&x.get(i, j).mul(x.get(j, i))),
        );
    }
    let id = Matrix::identity(3, x.sample());
    Ok(x.mul(x).sub(&x.scale_left(&t)).add(&id.scale_left(&s)))
}

/// `N_{K/F}(det(x + y s))` with `s^2 = c`.
pub fn split3_direct(
    c: &Rational,
    x: &Matrix<Rational>,
    y: &Matrix<Rational>,
) -> Result<Rational, CsaError> {
    let k = ExtCtx::new(vec![c.neg(), Rational::zero(), Rational::one()], "s")?;
    let rows = (0..x.rows())
        .map(|r| {
            (0..x.cols())
                .map(|col| k.element(vec![x.get(r, col).clone(), y.get(r, col).clone()]))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?.det_expansion().norm())
}

/// `det(x y# x - gamma det(y) y) / det(y)^exponent`.
pub fn split3_closed_form(
    x: &Matrix<Rational>,
    y: &Matrix<Rational>,
    gamma: &Rational,
    exponent: u32,
) -> Result<Rational, CsaError> {
    let ny = y.det_expansion();
    if ny.is_zero() {
        return Err(CsaError::NotInvertible);
    }
    let inner = x
        .mul(&sharp3(y)?)
        .mul(x)
        .sub(&y.scale_left(&gamma.mul(&ny)));
    Ok(inner
        .det_expansion()
        .div(&ny.pow(exponent as u64))
        .expect("nonzero"))
}

/// Sweep `gamma` and the normalizing exponent `e in {1, 2}` over split
/// cubic instances.
pub fn split_cubic_gamma_sweep(
    instances: &[MatrixInstance],
    candidates: &[Candidate],
) -> Result<ProbeOutcome, CsaError> {
    let direct: Vec<Rational> = instances
        .iter()
        .map(|t| split3_direct(&t.c, &t.x, &t.y))
        .collect::<Result<_, _>>()?;
    let grid: Vec<(usize, u32)> = (0..candidates.len())
        .flat_map(|i| [1u32, 2].map(move |e| (i, e)))
        .collect();
    let labels = grid
        .iter()
        .map(|&(i, e)| format!("{}; e={e}", candidates[i].label))
        .collect();
    let mut out = sweep(
        "split-cubic-closed-form",
        labels,
        instances.len(),
        |li, i| {
            let (ci, e) = grid[li];
            let t = &instances[i];
            let g = (candidates[ci].value)(&t.c, 3);
            Ok(split3_closed_form(&t.x, &t.y, &g, e)? == direct[i])
        },
    )?;
    out.report = out.report.param("degree", 3);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: [[i64; 3]; 3]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn scalar_specialization() {
        // y = 1, x = t: both sides are (t^2 - c)^2 exactly when gamma = c
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        let inst = QuaternionInstance {
            c: q(3),
            x: a.int([5, 0, 0, 0]),
            y: a.int([1, 0, 0, 0]),
        };
        assert_eq!(
            quaternion_direct(&inst.c, &inst.x, &inst.y).unwrap(),
            q(22 * 22)
        );
        let out = quaternion_gamma_sweep(&a, &[inst], &default_candidates()).unwrap();
        assert_eq!(out.consistent, vec!["c"]);
        assert!(out.report.pass);
    }

    #[test]
    fn falsification_is_recorded() {
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        let insts = vec![
            QuaternionInstance {
                c: q(2),
                x: a.int([1, 1, 0, 2]),
                y: a.int([0, 1, 1, 0]),
            },
            QuaternionInstance {
                c: q(5),
                x: a.int([2, 0, 1, 1]),
                y: a.int([1, 0, 0, 3]),
            },
        ];
        // with c = 2 the candidates "c" and "d" coincide on the first instance only
        let out = quaternion_gamma_sweep(&a, &insts, &default_candidates()).unwrap();
        assert_eq!(out.consistent, vec!["c"]);
        assert_eq!(out.report.parameters["gamma[d]"], "1/2");
        assert_eq!(out.report.parameters["gamma[d].first_failure"], "1");
        let bad = quaternion_gamma_sweep(&a, &insts, &default_candidates()[1..2]).unwrap();
        assert!(!bad.report.pass);
    }

    #[test]
    fn non_invertible_y() {
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        assert_eq!(
            quaternion_closed_form(&a.int([1, 0, 0, 0]), &a.int([0, 0, 0, 0]), &q(1)).unwrap_err(),
            CsaError::NotInvertible
        );
    }

    #[test]
    fn sharp_is_adjugate() {
        let id = Matrix::identity(3, &q(0));
        assert_eq!(sharp3(&id).unwrap(), id);
        let x = mat([[2, -1, 3], [0, 4, 1], [5, 2, -2]]);
        assert_eq!(sharp3(&x).unwrap(), x.adjugate().unwrap());
        assert_eq!(
            x.mul(&sharp3(&x).unwrap()),
            id.scale_left(&x.det_expansion())
        );
    }

    #[test]
    fn seeded_sweeps_resolve() {
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        let insts = random_quaternion_instances(&a, 30, 7);
        assert_eq!(insts, random_quaternion_instances(&a, 30, 7));
        assert_eq!(
            quaternion_gamma_sweep(&a, &insts, &default_candidates())
                .unwrap()
                .consistent,
            vec!["c"]
        );
        let mats = random_matrix_instances(30, 7);
        assert_eq!(
            split_cubic_gamma_sweep(&mats, &default_candidates())
                .unwrap()
                .consistent,
            vec!["c; e=2"]
        );
    }

    #[test]
    fn split_cubic_diagonal() {
        let inst = MatrixInstance {
            c: q(7),
            x: mat([[1, 0, 0], [0, 2, 0], [0, 0, -3]]),
            y: mat([[2, 0, 0], [0, 1, 0], [0, 0, 5]]),
        };
        let out = split_cubic_gamma_sweep(&[inst], &default_candidates()).unwrap();
        assert!(out.consistent.contains(&"c; e=2".to_string()));
        assert!(!out.consistent.contains(&"c; e=1".to_string()));
    }
}
