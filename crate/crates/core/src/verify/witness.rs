use crate::exactalg::Rational;
use crate::forms::Form;

/// Result of a bounded representation search. `Exhausted` says nothing
/// about representability.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessSearch {
    Found(Vec<Rational>),
    Exhausted { height: u64, points: u64 },
}

/// Integers ordered `0, 1, -1, 2, -2, ...` up to absolute value `h`.
fn small_first(h: u64) -> Vec<i64> {
    let mut out = vec![0];
    for k in 1..=h as i64 {
        out.push(k);
        out.push(-k);
    }
    out
}

/// Odometer step with the last index running fastest.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < base {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Search rational points `v = (n_1, ..., n_k) / q` of height at most `height`
/// for `phi(v) = target`.
///
/// Denominators run upward; for each denominator, points are visited in shells of
/// growing max-numerator, coordinates in the order `0, 1, -1, 2, -2, ...`.
pub fn bounded_witness_search(
    phi: &Form<Rational>,
    target: &Rational,
    height: u64,
) -> WitnessSearch {
    let n = phi.dim();
    let mut points = 0u64;
    for q in 1..=height.max(1) {
        for shell in 0..=height {
            let coords: Vec<i64> = small_first(shell);
            let mut idx = vec![0usize; n];
            loop {
                let top = idx
                    .iter()
                    .map(|&i| coords[i].unsigned_abs())
                    .max()
                    .unwrap_or(0);
                let g = idx.iter().fold(q, |g, &i| gcd(g, coords[i].unsigned_abs()));
                if top == shell && g == 1 {
                    let v: Vec<Rational> = idx
                        .iter()
                        .map(|&i| Rational::new(coords[i], q as i64))
                        .collect();
                    points += 1;
                    if phi.value(&v).is_ok_and(|x| x == *target) {
                        return WitnessSearch::Found(v);
                    }
                }
                if !advance(&mut idx, coords.len()) {
                    break;
                }
            }
        }
    }
    WitnessSearch::Exhausted { height, points }
}
