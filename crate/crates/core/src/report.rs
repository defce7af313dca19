//! Verification report records and their serialized schema.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactalg::Rational;

pub const SCHEMA: &str = "snp-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Probabilistic { prime: u64, trials: u32 },
    Exhaustive { evaluations: u64 },
    Batch { instances: u64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Probabilistic { .. } => "probabilistic",
            Mode::Exhaustive { .. } => "exhaustive",
            Mode::Batch { .. } => "batch",
        }
    }
}

/// Schwartz-Zippel style bound `(degree / prime)^trials`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureBound {
    pub degree: u32,
    pub prime: u64,
    pub trials: u32,
    pub bound: Rational,
    /// `log2(bound)`, absent when the bound is exactly zero.
    pub log2: Option<f64>,
}

impl FailureBound {
    pub fn new(degree: u32, prime: u64, trials: u32) -> Self {
        let ratio = Rational(num_rational::BigRational::new(degree.into(), prime.into()));
        let bound = crate::exactalg::Ring::pow(&ratio, trials as u64);
        let log2 = if degree == 0 {
            None
        } else {
            Some(trials as f64 * ((degree as f64).log2() - (prime as f64).log2()))
        };
        FailureBound {
            degree,
            prime,
            trials,
            bound,
            log2,
        }
    }

    /// True when the bound is strictly below `2^-bits`.
    pub fn below_pow2(&self, bits: u32) -> bool {
        let limit = Rational(num_rational::BigRational::new(
            1.into(),
            num_bigint::BigInt::from(1) << bits,
        ));
        self.bound < limit
    }
}

/// Outcome of one identity check.
///
/// A failing report always carries a nonempty witness (see
/// [`VerifyReport::is_well_formed`]).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub identity: String,
    pub anchors: Vec<String>,
    pub mode: Mode,
    pub parameters: BTreeMap<String, String>,
    pub pass: bool,
    pub witness: BTreeMap<String, String>,
    pub conventions: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub failure_bound: Option<FailureBound>,
    pub notes: Vec<String>,
    pub wall_time_ms: Option<u64>,
    pub children: Vec<VerifyReport>,
}

impl VerifyReport {
    pub fn new(identity: &str, mode: Mode) -> Self {
        VerifyReport {
            schema: SCHEMA.to_string(),
            identity: identity.to_string(),
            anchors: Vec::new(),
            mode,
            parameters: BTreeMap::new(),
            pass: true,
            witness: BTreeMap::new(),
            conventions: BTreeMap::new(),
            seed: None,
            failure_bound: None,
            notes: Vec::new(),
            wall_time_ms: None,
            children: Vec::new(),
        }
    }

    pub fn anchor(mut self, a: &str) -> Self {
        self.anchors.push(a.to_string());
        self
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.parameters.insert(k.to_string(), v.to_string());
        self
    }

    pub fn convention(mut self, k: &str, v: impl ToString) -> Self {
        self.conventions.insert(k.to_string(), v.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn add_witness(&mut self, k: &str, v: impl ToString) {
        self.witness.insert(k.to_string(), v.to_string());
    }

    /// Mark as failed with the given counterexample data.
    pub fn fail(&mut self, witness: impl IntoIterator<Item = (String, String)>) {
        self.pass = false;
        self.witness.extend(witness);
        if self.witness.is_empty() {
            self.witness
                .insert("counterexample".into(), "unspecified".into());
        }
    }

    /// Attach child reports; the parent passes only if all children pass.
    pub fn push_child(&mut self, child: VerifyReport) {
        if !child.pass {
            self.pass = false;
            self.witness
                .entry("failed_child".into())
                .or_insert_with(|| child.identity.clone());
        }
        self.children.push(child);
    }

    pub fn is_well_formed(&self) -> bool {
        self.schema == SCHEMA
            && (self.pass || !self.witness.is_empty())
            && self.children.iter().all(VerifyReport::is_well_formed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let pad = "  ".repeat(depth);
        let _ = writeln!(
            out,
            "{pad}{} [{}] {}",
            self.identity,
            self.mode.name(),
            if self.pass { "PASS" } else { "FAIL" }
        );
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "{pad}  param {k} = {v}");
        }
        for (k, v) in &self.conventions {
            let _ = writeln!(out, "{pad}  convention {k} = {v}");
        }
        for (k, v) in &self.witness {
            let _ = writeln!(out, "{pad}  witness {k} = {v}");
        }
        if let Some(b) = &self.failure_bound {
            let _ = writeln!(
                out,
                "{pad}  failure bound ({}/{})^{} = 2^{:.1}",
                b.degree,
                b.prime,
                b.trials,
                b.log2.unwrap_or(f64::NEG_INFINITY)
            );
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "{pad}  seed {s}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "{pad}  note: {n}");
        }
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }
}
