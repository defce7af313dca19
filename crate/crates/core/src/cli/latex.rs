use std::fmt::Write;

use crate::exactalg::{Rational, Scalar, SparsePoly};
use crate::extfields::DescentShape;
use crate::report::VerifyReport;

/// `u12` -> `u_{12}`, `v1_3` -> `v_{1,3}`, `alpha` -> `\alpha`.
fn var_to_latex(name: &str) -> String {
    let split = name
        .find(|c: char| c.is_ascii_digit() || c == '_')
        .unwrap_or(name.len());
    let (stem, sub) = name.split_at(split);
    let stem = match stem {
        "alpha" | "beta" | "gamma" | "omega" | "theta" => format!("\\{stem}"),
        s => s.to_string(),
    };
    let sub = sub.trim_start_matches('_').replace('_', ",");
    if sub.is_empty() {
        stem
    } else {
        format!("{stem}_{{{sub}}}")
    }
}

fn rational_to_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// The polynomial in LaTeX, highest-degree terms first.
pub fn poly_to_latex<C: Scalar>(p: &SparsePoly<C>) -> String {
    let mut out = String::new();
    for (m, c) in p.terms().rev() {
        let c = c.to_rational();
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = m
            .exps()
            .iter()
            .zip(p.vars().iter())
            .filter(|(e, _)| **e > 0)
            .map(|(&e, v)| {
                let v = var_to_latex(v);
                if e == 1 {
                    v
                } else {
                    format!("{v}^{{{e}}}")
                }
            })
            .collect();
        let one = abs == Rational::one();
        if !one || mono.is_empty() {
            out.push_str(&rational_to_latex(&abs));
            if !mono.is_empty() {
                out.push(' ');
            }
        }
        out.push_str(&mono.join(" "));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('_', "\\_")
        .replace('#', "\\#")
        .replace('^', "\\^{}")
}

pub fn report(r: &VerifyReport) -> String {
    let mut out = String::new();
    write_report(r, &mut out);
    out
}

fn write_report(r: &VerifyReport, out: &mut String) {
    let _ = writeln!(
        out,
        "\\paragraph{{{}}} {} ({})",
        escape(&r.identity),
        if r.pass { "holds" } else { "fails" },
        r.mode.name()
    );
    let rows: Vec<(String, &String)> = r
        .parameters
        .iter()
        .map(|(k, v)| (k.clone(), v))
        .chain(
            r.conventions
                .iter()
                .map(|(k, v)| (format!("convention {k}"), v)),
        )
        .chain(r.witness.iter().map(|(k, v)| (format!("witness {k}"), v)))
        .collect();
    if !rows.is_empty() {
        out.push_str("\\begin{tabular}{ll}\n");
        for (k, v) in rows {
            let _ = writeln!(out, "{} & \\texttt{{{}}} \\\\", escape(&k), escape(v));
        }
        out.push_str("\\end{tabular}\n");
    }
    if let Some(b) = &r.failure_bound {
        let _ = writeln!(
            out,
            "Failure probability at most $({}/{})^{{{}}}$.",
            b.degree, b.prime, b.trials
        );
    }
    let shape = match r.identity.as_str() {
        "pure-descent" => Some(DescentShape::Pure),
        "trinomial-descent" => Some(DescentShape::Trinomial),
        _ => None,
    };
    let d = r.parameters.get("d").and_then(|d| d.parse::<usize>().ok());
    if let (Some(shape), Some(d)) = (shape, d) {
        if let Ok(a) = super::descent_a_values(d, shape) {
            out.push_str("\\begin{align*}\n");
            let lines: Vec<String> = a
                .iter()
                .enumerate()
                .map(|(i, x)| format!("A_{{{i}}} &= {x}"))
                .collect();
            out.push_str(&lines.join(" \\\\\n"));
            out.push_str("\n\\end{align*}\n");
        }
    }
    for c in &r.children {
        write_report(c, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ring;

    #[test]
    fn polynomial_rendering() {
        let x = SparsePoly::variables(&["u1", "v12", "e"], &Rational::zero());
        let p = x[0]
            .mul(&x[0])
            .sub(&x[1].mul(&x[1]).mul(&x[2]))
            .add(&SparsePoly::constant_in(
                x[0].vars().clone(),
                Rational::new(1, 2),
            ));
        assert_eq!(
            poly_to_latex(&p),
            "-v_{12}^{2} e + u_{1}^{2} + \\frac{1}{2}"
        );
        assert_eq!(var_to_latex("v1_3"), "v_{1,3}");
        assert_eq!(var_to_latex("alpha"), "\\alpha");
    }
}
