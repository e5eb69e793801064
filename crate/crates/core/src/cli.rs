//! The `annihil` command line.
//!
//! Every subcommand renders to `text`, `json` or `csv` and is deterministic:
//! the same arguments (including `--seed`) give byte-identical output.
//! Exit codes: 0 success or pass, 1 failed check, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::annihilator_ideals::{
    self as ideals, generic_annihilation_failure, CheckReport, IdealKind,
};
use crate::error::Error;
use crate::pfister_algebra::{expansion_coefficients, shifted_expansion_coefficients};
use crate::polynomial::IntPolynomial;
use crate::stirling::{self, BoundRow};
use crate::witt_models::{verify_annihilation, AnnihilationReport, Family, FieldModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StirlingMethod {
    Recurrence,
    AltSum,
    Compositions,
}

#[derive(Debug, Parser)]
#[command(name = "annihil", version, about = "Stirling numbers, Pfister algebras and annihilating polynomials of Witt rings")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_poly(s: &str) -> Result<IntPolynomial, String> {
    s.parse::<IntPolynomial>().map_err(|e| {
        format!("{e}; expected terms like `2X^4 - 3X^2 + 8X`")
    })
}

fn parse_ideal(s: &str) -> Result<IdealKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> Result<FieldModel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stirling number of the second kind S(n, k).
    Stirling {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: StirlingMethod,
    },
    /// Check nu2(S(n,k)) >= d(k) - d(n) for all 0 < k <= n <= max-n.
    ScanBound {
        #[arg(long)]
        max_n: u64,
    },
    /// k(r), the top half-degree of the ideal generators.
    KOfR {
        #[arg(long)]
        r: u32,
    },
    /// Generator list of an annihilator ideal.
    Generators {
        #[arg(long, value_parser = parse_ideal)]
        ideal: IdealKind,
        #[arg(long)]
        r: u32,
    },
    /// Decide ideal membership of a polynomial.
    Member {
        #[arg(long, value_parser = parse_ideal)]
        ideal: IdealKind,
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_poly)]
        poly: IntPolynomial,
    },
    /// Expansion coefficients A_p of f(Y_1 + ... + Y_n), or of
    /// f(Y_1 + ... + Y_n - n) with --shift-dim.
    Expand {
        #[arg(long, value_parser = parse_poly)]
        poly: IntPolynomial,
        #[arg(long, required_unless_present = "shift_dim", conflicts_with = "shift_dim")]
        n: Option<u32>,
        #[arg(long)]
        shift_dim: Option<u32>,
    },
    /// Does f vanish at every generator sum in B / 2^r B?
    AnnihilateCheck {
        #[arg(long, value_parser = parse_poly)]
        poly: IntPolynomial,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        max_n: u32,
    },
    /// Symbolic check that every generator of J'_{e,r} kills even forms.
    #[command(name = "lemma32-check")]
    Lemma32Check {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
    },
    /// Randomized biconditional between annihilation and J'_{e,r} membership.
    TheoremCheck {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 500)]
        trials: u32,
    },
    /// Coefficient-valuation criterion for q_l.
    QlCheck {
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
    },
    /// Lewis polynomial p_n.
    Lewis {
        #[arg(long)]
        n: u64,
    },
    /// q_l(X) = X (X-2) ... (X-2(l-1)).
    Ql {
        #[arg(long)]
        l: u64,
    },
    /// Evaluate a polynomial on a family of classes of a model Witt ring.
    WittVerify {
        #[arg(long, value_parser = parse_field)]
        field: FieldModel,
        #[arg(long, value_parser = parse_family, default_value = "all")]
        family: Family,
        #[arg(long, value_parser = parse_poly)]
        poly: IntPolynomial,
        #[arg(long, default_value_t = 4)]
        dim_cap: usize,
    },
    /// Integer u, v with u X^{2k} + v (X-1)^{2k} = 1.
    ComaxWitness {
        #[arg(long)]
        k: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingOutput {
    pub n: u64,
    pub k: u64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KOutput {
    pub r: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsOutput {
    pub ideal: String,
    pub r: u32,
    pub k: u32,
    pub generators: Vec<String>,
    pub polynomials: Vec<IntPolynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberOutput {
    pub ideal: String,
    pub r: u32,
    pub poly: String,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilateOutput {
    pub poly: String,
    pub r: u32,
    pub max_n: u32,
    pub passed: bool,
    pub failing_n: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOutput {
    pub k: u32,
    pub u: IntPolynomial,
    pub v: IntPolynomial,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn check(passed: bool, stdout: String) -> Self {
        Self { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn usage(msg: String) -> Self {
        Self { code: 2, stdout: String::new(), stderr: msg }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}

fn render_check(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let cx = report.counterexample.as_ref();
            csv_line(&["name".into(), "passed".into(), "cases".into(), "polynomial".into(), "n".into(), "r".into(), "detail".into()])
                + &csv_line(&[
                    report.name.clone(),
                    report.passed.to_string(),
                    report.cases.to_string(),
                    cx.map(|c| c.polynomial.clone()).unwrap_or_default(),
                    cx.map(|c| c.n.to_string()).unwrap_or_default(),
                    cx.map(|c| c.r.to_string()).unwrap_or_default(),
                    cx.map(|c| c.detail.clone()).unwrap_or_default(),
                ])
        }
        Format::Text => {
            let params: Vec<String> = report
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let mut s = format!(
                "{} {} [{}] cases={}\n",
                if report.passed { "PASS" } else { "FAIL" },
                report.name,
                params.join(" "),
                report.cases
            );
            if let Some(c) = &report.counterexample {
                s += &format!("counterexample: f = {} at n = {} (r = {}): {}\n", c.polynomial, c.n, c.r, c.detail);
            }
            s
        }
    }
}

fn render_poly(f: &IntPolynomial, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", f.to_json()),
        Format::Csv => {
            let mut s = csv_line(&["degree".into(), "coefficient".into()]);
            for (q, c) in f.coeffs().iter().enumerate() {
                s += &csv_line(&[q.to_string(), c.to_string()]);
            }
            s
        }
        Format::Text => format!("{f}\n"),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let format = cli.format;
    Ok(match &cli.command {
        Command::Stirling { n, k, method } => {
            let value = match method {
                StirlingMethod::Recurrence => stirling::stirling2(*n, *k),
                StirlingMethod::AltSum => stirling::stirling2_alt_sum(*n, *k)?,
                StirlingMethod::Compositions => stirling::stirling2_compositions(*n, *k)?,
            };
            let out = StirlingOutput { n: *n, k: *k, value: value.to_string() };
            Outcome::ok(match format {
                Format::Json => json(&out),
                Format::Csv => csv_line(&["n".into(), "k".into(), "value".into()])
                    + &csv_line(&[n.to_string(), k.to_string(), out.value.clone()]),
                Format::Text => format!("S({n},{k}) = {}\n", out.value),
            })
        }
        Command::ScanBound { max_n } => {
            let report = stirling::scan_bound(*max_n)?;
            let body = match format {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Csv => report.to_csv(),
                Format::Text => {
                    let mut s = format!(
                        "rows={} tight={} violations={}\n",
                        report.rows.len(),
                        report.tight_rows,
                        report.violations
                    );
                    if let Some(BoundRow { n, k, nu2, lower, margin }) = report.first_violation() {
                        s += &format!("violation: n={n} k={k} nu2={nu2} lower={lower} margin={margin}\n");
                    }
                    s
                }
            };
            Outcome::check(report.passed(), body)
        }
        Command::KOfR { r } => {
            if *r == 0 {
                return Err(Error::Domain("r must be >= 1".into()));
            }
            let out = KOutput { r: *r, k: ideals::k_of_r(*r) };
            Outcome::ok(match format {
                Format::Json => json(&out),
                Format::Csv => csv_line(&["r".into(), "k".into()]) + &csv_line(&[r.to_string(), out.k.to_string()]),
                Format::Text => format!("{}\n", out.k),
            })
        }
        Command::Generators { ideal, r } => {
            let spec = ideals::generators(*ideal, *r)?;
            let out = GeneratorsOutput {
                ideal: ideal.name().into(),
                r: *r,
                k: spec.k,
                generators: spec.generators.iter().map(ToString::to_string).collect(),
                polynomials: spec.polynomials(),
            };
            Outcome::ok(match format {
                Format::Json => json(&out),
                Format::Csv => {
                    let mut s = csv_line(&["two_exp".into(), "x_power".into(), "shifted_power".into(), "generator".into()]);
                    for g in &spec.generators {
                        s += &csv_line(&[g.two_exp.to_string(), g.x_power.to_string(), g.shifted_power.to_string(), g.to_string()]);
                    }
                    s
                }
                Format::Text => format!("{}\n", spec.generator_text()),
            })
        }
        Command::Member { ideal, r, poly } => {
            let member = ideals::is_member(poly, *ideal, *r)?;
            let out = MemberOutput { ideal: ideal.name().into(), r: *r, poly: poly.to_string(), member };
            Outcome::check(member, match format {
                Format::Json => json(&out),
                Format::Csv => csv_line(&["ideal".into(), "r".into(), "poly".into(), "member".into()])
                    + &csv_line(&[out.ideal.clone(), r.to_string(), out.poly.clone(), member.to_string()]),
                Format::Text => format!(
                    "{} {} J[{}, r={r}]\n",
                    out.poly,
                    if member { "is in" } else { "is not in" },
                    out.ideal
                ),
            })
        }
        Command::Expand { poly, n, shift_dim } => {
            let coeffs = match (n, shift_dim) {
                (_, Some(s)) => shifted_expansion_coefficients(poly, *s)?,
                (Some(n), None) => expansion_coefficients(poly, *n)?,
                (None, None) => return Err(Error::Domain("need --n or --shift-dim".into())),
            };
            Outcome::ok(match format {
                Format::Json => format!("{}\n", coeffs.to_json()),
                Format::Csv => {
                    let mut s = csv_line(&["p".into(), "A".into()]);
                    for (p, a) in coeffs.a.iter().enumerate() {
                        s += &csv_line(&[p.to_string(), a.to_string()]);
                    }
                    s
                }
                Format::Text => coeffs
                    .a
                    .iter()
                    .enumerate()
                    .map(|(p, a)| format!("A_{p} = {a}\n"))
                    .collect(),
            })
        }
        Command::AnnihilateCheck { poly, r, max_n } => {
            let failing_n = generic_annihilation_failure(poly, *r, *max_n)?;
            let out = AnnihilateOutput {
                poly: poly.to_string(),
                r: *r,
                max_n: *max_n,
                passed: failing_n.is_none(),
                failing_n,
            };
            Outcome::check(out.passed, match format {
                Format::Json => json(&out),
                Format::Csv => csv_line(&["poly".into(), "r".into(), "max_n".into(), "passed".into(), "failing_n".into()])
                    + &csv_line(&[
                        out.poly.clone(),
                        r.to_string(),
                        max_n.to_string(),
                        out.passed.to_string(),
                        failing_n.map(|n| n.to_string()).unwrap_or_default(),
                    ]),
                Format::Text => match failing_n {
                    None => format!("PASS {} vanishes mod 2^{r} for n = 1..{max_n}\n", out.poly),
                    Some(n) => format!("FAIL {} is nonzero mod 2^{r} at n = {n}\n", out.poly),
                },
            })
        }
        Command::Lemma32Check { r, max_n } => {
            let report = ideals::lemma_32_check(*r, *max_n)?;
            Outcome::check(report.passed, render_check(&report, format))
        }
        Command::TheoremCheck { r, trials } => {
            let report = ideals::theorem_equivalence_check(*r, *trials, cli.seed)?;
            Outcome::check(report.passed, render_check(&report, format))
        }
        Command::QlCheck { l, max_n } => {
            let report = ideals::ql_sufficient_check(*l, *max_n)?;
            Outcome::check(report.passed, render_check(&report, format))
        }
        Command::Lewis { n } => Outcome::ok(render_poly(&IntPolynomial::lewis(*n)?, format)),
        Command::Ql { l } => Outcome::ok(render_poly(&IntPolynomial::q_family(*l)?, format)),
        Command::WittVerify { field, family, poly, dim_cap } => {
            let report = verify_annihilation(poly, *field, *family, *dim_cap)?;
            Outcome::check(report.pass, render_witt(&report, format))
        }
        Command::ComaxWitness { k } => {
            let (u, v) = ideals::comaximality_witness(*k)?;
            let out = WitnessOutput { k: *k, u, v };
            Outcome::ok(match format {
                Format::Json => json(&out),
                Format::Csv => csv_line(&["k".into(), "u".into(), "v".into()])
                    + &csv_line(&[k.to_string(), out.u.to_string(), out.v.to_string()]),
                Format::Text => format!(
                    "({}) * X^{e} + ({}) * (X-1)^{e} = 1\n",
                    out.u,
                    out.v,
                    e = 2 * k
                ),
            })
        }
    })
}

fn render_witt(report: &AnnihilationReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => format!("{}\n{}\n", AnnihilationReport::CSV_HEADER, report.csv_row()),
        Format::Text => {
            let mut s = format!(
                "{} {} on {} classes of W({}) [{}]\n",
                if report.pass { "PASS" } else { "FAIL" },
                report.polynomial,
                report.classes_checked,
                report.model,
                report.family
            );
            if let Some(c) = &report.counterexample {
                s += &format!("counterexample: {c}\n");
            }
            s
        }
    }
}

/// Parses and executes one invocation without touching the process.
pub fn run_with<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(e.to_string())
                }
                _ => Outcome::usage(e.to_string()),
            }
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

pub fn run() -> ! {
    let out = run_with(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code)
}

