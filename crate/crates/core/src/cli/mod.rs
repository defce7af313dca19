//! The `snp` command line: argument parsing, command dispatch and output
//! rendering.

mod latex;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csa::{
    default_candidates, quaternion_gamma_sweep, random_matrix_instances,
    random_quaternion_instances, split_cubic_gamma_sweep, verify_reduced_norm_transfer, QuatFile,
    QuaternionAlgebra,
};
use crate::exactalg::{IdentityMode, Rational, Ring, Scalar, MERSENNE_61};
use crate::extfields::{
    symbolic_context, tower_plan, transfer_form, verify_norm_transitivity, verify_pure_descent,
    verify_trinomial_descent, DescentShape, ExtFile, TowerSpec,
};
use crate::forms::{
    permits_composition_check, polarize, AlgebraStructure, AnyForm, Form, FormFile, DEFAULT_BUDGET,
};
use crate::report::VerifyReport;
use crate::verify::{
    quartic_pfister_transfer, sextic_pfister_transfer, snp_bruteforce, CompositionClass,
};

pub use latex::poly_to_latex;

#[derive(Parser, Debug)]
#[command(
    name = "snp",
    version,
    about = "Norm forms, Dieudonne norms and norm-principle identity checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunFlags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    /// Identity-testing mode
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Prime for probabilistic mode [default: 2^61 - 1]
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Evaluation points for probabilistic mode [default: 3]
    #[arg(long, global = true)]
    pub trials: Option<u32>,
    /// Seed for every random choice
    #[arg(long, global = true, env = "SNP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Cap on form evaluations for exhaustive enumeration
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall time in reports
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Probabilistic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the symmetric multilinear form of a form file
    Polarize { form: PathBuf },
    /// Emit the norm form of an extension file as a form file
    Normform { ext: PathBuf },
    /// Emit the transfer of a form along an extension as a form file
    Transfer { ext: PathBuf, form: PathBuf },
    /// Check one of the norm identities
    Verify {
        #[command(subcommand)]
        identity: Identity,
    },
    /// Exhaustive norm-principle check over a finite field
    Snp {
        /// Form file over a prime field
        form: PathBuf,
        /// Degree m of the extension F_{q^m}
        #[arg(long, short = 'm')]
        degree: usize,
        /// Why the value set equals the similarity factors
        #[arg(long, value_enum, default_value_t = ClassArg::PermitsComposition)]
        class: ClassArg,
    },
    /// Decide from a tower description whether the norm principle is known
    Tower {
        /// Tower description (JSON)
        spec: PathBuf,
    },
    /// Sweep candidate constants in the quaternion and split cubic closed forms
    Probe {
        #[arg(value_enum, default_value_t = ProbeTarget::All)]
        target: ProbeTarget,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassArg {
    PermitsComposition,
    Power,
    Product,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeTarget {
    Quaternion,
    SplitCubic,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Identity {
    /// N_K(phi_K(z)) = phi(a) for the norm form phi of F(alpha)
    NormTransitivity {
        /// Extension F(alpha) of Q
        #[arg(long)]
        alpha: PathBuf,
        /// Extension K of Q, linearly disjoint from F(alpha)
        #[arg(long)]
        k: PathBuf,
        /// Coordinates of z as JSON, one list per power of alpha; random if absent
        #[arg(long)]
        z: Option<String>,
        /// Number of random z
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Descent vector for x^d - c
    PureDescent {
        #[arg(long, short = 'd')]
        degree: usize,
    },
    /// Descent vector for x^d - b x - c
    TrinomialDescent {
        #[arg(long, short = 'd')]
        degree: usize,
    },
    /// N_K(Nrd(Delta)) = Nrd(det rho(Delta)) from a quaternion file
    ReducedNormTransfer { input: PathBuf },
    /// Sweep gamma in Nrd(y (x y^-1 x - gamma y))
    QuaternionClosedForm {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        b: Rational,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Sweep gamma and e in det(x y# x - gamma det(y) y) / det(y)^e
    SplitCubicClosedForm {
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Transfer of a Pfister form along F(sqrt c) against the closed quartic
    QuarticTransfer {
        #[command(flatten)]
        pfister: PfisterArgs,
    },
    /// Transfer of a Pfister form along F(cbrt c) against the closed sextic
    SexticTransfer {
        #[command(flatten)]
        pfister: PfisterArgs,
    },
    /// phi(x y) = phi(x) phi(y) for a norm form or a quaternion norm
    Composition {
        /// Extension whose norm form and multiplication are used
        #[arg(long, conflicts_with = "quaternion")]
        ext: Option<PathBuf>,
        /// Quaternion algebra "a,b"
        #[arg(long, allow_hyphen_values = true)]
        quaternion: Option<String>,
        /// Form to check instead of the norm form
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PfisterArgs {
    /// Number of Pfister slots r
    #[arg(long, default_value_t = 1)]
    pub fold: usize,
    /// Pfister parameters a_1,...,a_r; "sym" keeps one symbolic
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// Extension parameter c; symbolic if absent
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
}

/// Input or configuration problem; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Rendered output and whether every check passed.
pub struct Output {
    pub text: String,
    pub pass: bool,
}

/// Parse `args`, run, write the output and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.run.out {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| e.to_string()),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
                Ok(()) if out.pass => 0,
                Ok(()) => 1,
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

impl RunFlags {
    fn identity_mode(&self) -> Result<IdentityMode, UsageError> {
        match self.mode {
            ModeArg::Exact => {
                if self.prime.is_some() || self.trials.is_some() {
                    return Err(UsageError(
                        "--prime and --trials need --mode probabilistic".into(),
                    ));
                }
                Ok(IdentityMode::Exact)
            }
            ModeArg::Probabilistic => Ok(IdentityMode::Probabilistic {
                prime: self.prime.unwrap_or(MERSENNE_61),
                trials: self.trials.unwrap_or(3),
                seed: self.seed,
            }),
        }
    }

    fn exact_only(&self, what: &str) -> Result<(), UsageError> {
        if self.identity_mode()? != IdentityMode::Exact {
            return Err(UsageError(format!("{what} supports only exact mode")));
        }
        Ok(())
    }
}

/// Run a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, UsageError> {
    let run = &cli.run;
    let start = Instant::now();
    let report = match &cli.command {
        Command::Polarize { form } => {
            run.exact_only("polarize")?;
            return polarize_cmd(&read(form)?, run.format);
        }
        Command::Normform { ext } => {
            run.exact_only("normform")?;
            return normform_cmd(&read(ext)?, run.format);
        }
        Command::Transfer { ext, form } => {
            run.exact_only("transfer")?;
            return transfer_cmd(&read(ext)?, &read(form)?, run.format);
        }
        Command::Tower { spec } => {
            run.exact_only("tower")?;
            return tower_cmd(&read(spec)?, run.format);
        }
        Command::Verify { identity } => verify_cmd(identity, run)?,
        Command::Snp {
            form,
            degree,
            class,
        } => {
            run.exact_only("snp")?;
            snp_cmd(&read(form)?, *degree, *class, run.budget)?
        }
        Command::Probe { target, instances } => {
            run.exact_only("probe")?;
            probe_cmd(*target, *instances, run.seed)?
        }
    };
    let mut report = report;
    if report.seed.is_none() {
        report.seed = Some(run.seed);
    }
    if run.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(Output {
        pass: report.pass,
        text: render_report(&report, run.format),
    })
}

pub fn render_report(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
        Format::Latex => latex::report(report),
    }
}

fn polarize_cmd(text: &str, format: Format) -> Result<Output, UsageError> {
    fn go<C: Scalar>(phi: &Form<C>, format: Format) -> Result<String, UsageError> {
        let theta = polarize(phi)?;
        let diag =
            theta.diagonal(phi.var_names())? == phi.poly().with_vars(phi.poly().vars().clone())?;
        Ok(match format {
            Format::Json => {
                serde_json::json!({
                    "arity": theta.arity(),
                    "dim": theta.dim(),
                    "theta": theta.poly().to_string(),
                    "diagonal_restores_form": diag,
                })
                .to_string()
                    + "\n"
            }
            Format::Text => format!(
                "arity {}\ndim {}\ntheta = {}\ndiagonal restores form: {diag}\n",
                theta.arity(),
                theta.dim(),
                theta.poly()
            ),
            Format::Latex => format!("\\[\n\\theta = {}\n\\]\n", poly_to_latex(theta.poly())),
        })
    }
    let text = match FormFile::parse(text)?.to_form()? {
        AnyForm::Rational(phi) => go(&phi, format)?,
        AnyForm::Prime(phi) => go(&phi, format)?,
    };
    Ok(Output { text, pass: true })
}

fn emit_form<C: Scalar>(phi: &Form<C>, format: Format) -> String {
    match format {
        Format::Json => FormFile::from_form(phi).to_json() + "\n",
        Format::Text => format!("{}\n", phi.poly()),
        Format::Latex => format!("\\[\n{}\n\\]\n", poly_to_latex(phi.poly())),
    }
}

fn normform_cmd(text: &str, format: Format) -> Result<Output, UsageError> {
    let file = ExtFile::parse(text)?;
    let text = match file.base {
        crate::exactalg::FieldDescriptor::PrimeField { .. } => {
            emit_form(&file.to_prime_ext()?.norm_form()?, format)
        }
        _ => emit_form(&file.to_rational_ext()?.norm_form()?, format),
    };
    Ok(Output { text, pass: true })
}

fn transfer_cmd(ext: &str, form: &str, format: Format) -> Result<Output, UsageError> {
    let ext = ExtFile::parse(ext)?;
    let text = match FormFile::parse(form)?.to_form()? {
        AnyForm::Rational(phi) => {
            emit_form(&transfer_form(&ext.to_rational_ext()?, &phi, None)?, format)
        }
        AnyForm::Prime(phi) => emit_form(&transfer_form(&ext.to_prime_ext()?, &phi, None)?, format),
    };
    Ok(Output { text, pass: true })
}

fn tower_cmd(text: &str, format: Format) -> Result<Output, UsageError> {
    let spec: TowerSpec = serde_json::from_str(text)?;
    let plan = tower_plan(&spec);
    let verdicts: Vec<String> = plan
        .verdicts
        .iter()
        .map(|v| serde_json::to_value(v).map(|x| x.as_str().unwrap_or_default().to_string()))
        .collect::<Result<_, _>>()?;
    let overall = serde_json::to_value(plan.overall)?;
    let overall = overall.as_str().unwrap_or_default();
    let steps: Vec<String> = plan.steps.iter().map(u64::to_string).collect();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&plan)? + "\n",
        Format::Text => format!(
            "steps {}\nverdicts {}\noverall {overall}\nreason: {}\n",
            steps.join(" "),
            verdicts.join(" "),
            plan.reason
        ),
        Format::Latex => format!(
            "\\begin{{tabular}}{{ll}}\nsteps & ${}$ \\\\\nverdicts & {} \\\\\noverall & {overall} \\\\\n\\end{{tabular}}\n",
            steps.join(", "),
            verdicts.join(", ")
        ),
    };
    Ok(Output { text, pass: true })
}

fn parse_optional(s: &str) -> Result<Option<Rational>, UsageError> {
    if s == "sym" {
        return Ok(None);
    }
    Ok(Some(s.parse()?))
}

fn pfister_params(
    p: &PfisterArgs,
) -> Result<(Vec<Option<Rational>>, Option<Rational>), UsageError> {
    let a = if p.a.is_empty() {
        vec![None; p.fold]
    } else {
        p.a.iter()
            .map(|s| parse_optional(s))
            .collect::<Result<_, _>>()?
    };
    let c = p.c.as_deref().map(parse_optional).transpose()?.flatten();
    Ok((a, c))
}

fn random_z(alpha: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    loop {
        let z: Vec<Vec<Rational>> = (0..alpha)
            .map(|_| {
                (0..k)
                    .map(|_| Rational::from_int(rng.gen_range(-5i64..=5)))
                    .collect()
            })
            .collect();
        if z.iter().flatten().any(|c| !c.is_zero()) {
            return z;
        }
    }
}

fn verify_cmd(identity: &Identity, run: &RunFlags) -> Result<VerifyReport, UsageError> {
    let mode = run.identity_mode()?;
    Ok(match identity {
        Identity::PureDescent { degree } => verify_pure_descent(*degree, mode)?,
        Identity::TrinomialDescent { degree } => verify_trinomial_descent(*degree, mode)?,
        other => {
            run.exact_only("this identity")?;
            verify_exact(other, run)?
        }
    })
}

fn verify_exact(identity: &Identity, run: &RunFlags) -> Result<VerifyReport, UsageError> {
    Ok(match identity {
        Identity::NormTransitivity { alpha, k, z, count } => {
            let alpha = ExtFile::parse(&read(alpha)?)?.to_rational_ext()?;
            let k = ExtFile::parse(&read(k)?)?.to_rational_ext()?;
            let zs: Vec<Vec<Vec<Rational>>> = match z {
                Some(text) => vec![serde_json::from_str(text)?],
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
                    (0..*count)
                        .map(|_| random_z(alpha.degree(), k.degree(), &mut rng))
                        .collect()
                }
            };
            let mut reports = Vec::new();
            for z in &zs {
                reports.push(verify_norm_transitivity(&alpha, &k, z)?.0);
            }
            if reports.len() == 1 {
                reports.pop().expect("one report")
            } else {
                let mut parent = VerifyReport::new(
                    "norm-transitivity",
                    crate::report::Mode::Batch {
                        instances: reports.len() as u64,
                    },
                )
                .anchor("norm-transitivity")
                .with_seed(run.seed);
                for r in reports {
                    parent.push_child(r);
                }
                parent
            }
        }
        Identity::ReducedNormTransfer { input } => {
            let (alg, k, delta) = QuatFile::parse(&read(input)?)?.build()?;
            verify_reduced_norm_transfer(&alg, &k, &delta)?
        }
        Identity::QuaternionClosedForm { a, b, instances } => {
            let alg = QuaternionAlgebra::new(a.clone(), b.clone())?;
            let inst = random_quaternion_instances(&alg, *instances, run.seed);
            quaternion_gamma_sweep(&alg, &inst, &default_candidates())?
                .report
                .with_seed(run.seed)
        }
        Identity::SplitCubicClosedForm { instances } => {
            let inst = random_matrix_instances(*instances, run.seed);
            split_cubic_gamma_sweep(&inst, &default_candidates())?
                .report
                .with_seed(run.seed)
        }
        Identity::QuarticTransfer { pfister } => {
            let (a, c) = pfister_params(pfister)?;
            quartic_pfister_transfer(pfister.fold, &a, &c)?.report
        }
        Identity::SexticTransfer { pfister } => {
            let (a, c) = pfister_params(pfister)?;
            sextic_pfister_transfer(pfister.fold, &a, &c)?.report
        }
        Identity::Composition {
            ext,
            quaternion,
            form,
        } => composition_cmd(ext, quaternion, form)?,
        Identity::PureDescent { .. } | Identity::TrinomialDescent { .. } => {
            unreachable!("handled by verify_cmd")
        }
    })
}

fn composition_cmd(
    ext: &Option<PathBuf>,
    quaternion: &Option<String>,
    form: &Option<PathBuf>,
) -> Result<VerifyReport, UsageError> {
    fn with_form<C: Scalar>(
        default: Form<C>,
        alg: &AlgebraStructure<C>,
        form: Option<Form<C>>,
    ) -> Result<VerifyReport, UsageError> {
        Ok(permits_composition_check(&form.unwrap_or(default), alg)?)
    }
    let given = form
        .as_ref()
        .map(|p| read(p).and_then(|t| Ok(FormFile::parse(&t)?.to_form()?)))
        .transpose()?;
    match (ext, quaternion) {
        (Some(path), None) => {
            let file = ExtFile::parse(&read(path)?)?;
            match (file.base.clone(), given) {
                (crate::exactalg::FieldDescriptor::PrimeField { .. }, g) => {
                    let k = file.to_prime_ext()?;
                    let g = match g {
                        None => None,
                        Some(AnyForm::Prime(f)) => Some(f),
                        Some(_) => {
                            return Err(UsageError("form and extension fields differ".into()))
                        }
                    };
                    with_form(k.norm_form()?, &k.multiplication()?, g)
                }
                (_, g) => {
                    let k = file.to_rational_ext()?;
                    let g = match g {
                        None => None,
                        Some(AnyForm::Rational(f)) => Some(f),
                        Some(_) => {
                            return Err(UsageError("form and extension fields differ".into()))
                        }
                    };
                    with_form(k.norm_form()?, &k.multiplication()?, g)
                }
            }
        }
        (None, Some(ab)) => {
            let parts: Vec<&str> = ab.split(',').collect();
            let [a, b] = parts[..] else {
                return Err(UsageError(format!("expected \"a,b\", got {ab:?}")));
            };
            let alg = QuaternionAlgebra::new(a.trim().parse()?, b.trim().parse()?)?;
            let g = match given {
                None => None,
                Some(AnyForm::Rational(f)) => Some(f),
                Some(_) => return Err(UsageError("quaternion algebras are built over Q".into())),
            };
            with_form(alg.nrd_form(), &alg.structure(), g)
        }
        _ => Err(UsageError(
            "give exactly one of --ext or --quaternion".into(),
        )),
    }
}

fn snp_cmd(text: &str, m: usize, class: ClassArg, budget: u64) -> Result<VerifyReport, UsageError> {
    let AnyForm::Prime(phi) = FormFile::parse(text)?.to_form()? else {
        return Err(UsageError("snp needs a form over a prime field".into()));
    };
    let class = match class {
        ClassArg::PermitsComposition => CompositionClass::PermitsComposition,
        ClassArg::Power => CompositionClass::PowerOfComposition,
        ClassArg::Product => CompositionClass::ProductOfComposition,
    };
    Ok(snp_bruteforce(&phi, m, class, budget)?.0)
}

fn probe_cmd(target: ProbeTarget, instances: usize, seed: u64) -> Result<VerifyReport, UsageError> {
    let quaternion = || -> Result<VerifyReport, UsageError> {
        let alg = QuaternionAlgebra::new(Rational::from_int(-1), Rational::from_int(-1))?;
        let inst = random_quaternion_instances(&alg, instances, seed);
        Ok(quaternion_gamma_sweep(&alg, &inst, &default_candidates())?.report)
    };
    let split = || -> Result<VerifyReport, UsageError> {
        let inst = random_matrix_instances(instances, seed);
        Ok(split_cubic_gamma_sweep(&inst, &default_candidates())?.report)
    };
    Ok(match target {
        ProbeTarget::Quaternion => quaternion()?,
        ProbeTarget::SplitCubic => split()?,
        ProbeTarget::All => {
            let mut r = VerifyReport::new(
                "closed-form-probe",
                crate::report::Mode::Batch {
                    instances: 2 * instances as u64,
                },
            );
            r.push_child(quaternion()?);
            r.push_child(split()?);
            r
        }
    }
    .with_seed(seed))
}

/// `A_0, ..., A_{2d-1}` of the descent vector in `Q[u, v, e, c(, b)]`.
pub fn descent_a_values(d: usize, shape: DescentShape) -> Result<Vec<String>, UsageError> {
    let ctx = symbolic_context(d, shape)?;
    Ok(ctx.a_values()?.iter().map(poly_to_latex).collect())
}
