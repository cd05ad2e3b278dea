//! `nilrev`: construct, decide and check reversers from the command line.
//!
//! Exit status is 0 on success, 1 on parse or usage errors and 2 when the
//! input fails a precondition, no reverser exists, or a check is false.

mod output;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nilrev::campaign::{run_campaign, CampaignConfig, Mode};
use nilrev::certificate::{check_document, CertificateDocument, WitnessDocument};
use nilrev::jordan::{jordan_structure, no_unipotent_reverser_certificate};
use nilrev::oracle::{Enumeration, Oracle};
use nilrev::random::rng_for;
use nilrev::reverser::{
    closed_form_reverser, diagonal_parity_reverser, reverse_group_star, reverse_star, ParityOutcome, ProducedBy,
    ReversalCertificate,
};
use nilrev::text::AnyMatrix;
use nilrev::{
    expmap, with_any_matrix, Error, GaussianRational, GroupTag, Level, Matrix, NilpotentUpper, Rational,
    RationalQuaternion, Ring, Scalar, SignedUnipotent,
};

use output::{Failure, Out};

#[derive(Parser)]
#[command(name = "nilrev", version, about = "Exact reversers of nilpotent and unipotent upper-triangular matrices")]
struct Cli {
    /// Print JSON documents.
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,
    /// Print human-readable text (the default).
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find g with g X g^-1 = -X (or g u g^-1 = u^-1) and emit a certificate.
    Reverse(ReverseArgs),
    /// Re-verify a certificate JSON document.
    Check {
        /// Certificate file; stdin when omitted or `-`.
        certificate: Option<PathBuf>,
    },
    /// Exponential of a strictly upper-triangular matrix.
    Exp(InputArgs),
    /// Logarithm of a unipotent matrix.
    Log(InputArgs),
    /// Jordan type and chain basis of a nilpotent matrix.
    Jordan {
        #[command(flatten)]
        input: InputArgs,
        /// Also print the record showing no unipotent reverser exists.
        #[arg(long)]
        witness: bool,
    },
    /// Decide reverser existence by exact linear feasibility.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = GroupArg::SignedUnipotent)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = LevelArg::Algebra)]
        level: LevelArg,
        /// Try all 2^n sign patterns instead of fixing the first sign.
        #[arg(long)]
        full: bool,
    },
    /// Sample signed unipotent matrices and report any that are not real.
    Search {
        #[arg(long, default_value = "rat")]
        ring: Ring,
        #[arg(short, long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a seeded randomized campaign against one of the theorems.
    Campaign {
        #[arg(long, default_value = "thm14")]
        mode: Mode,
        #[arg(long, default_value = "rat")]
        ring: Ring,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file; stdin when omitted or `-`.
    input: Option<PathBuf>,
    /// Matrix given inline, e.g. `0,1;0,0`.
    #[arg(short, long, conflicts_with = "input")]
    matrix: Option<String>,
    /// Scalar ring; a `ring=` header in the input must agree.
    #[arg(long)]
    ring: Option<Ring>,
}

#[derive(Args)]
struct ReverseArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = GroupArg::SignedUnipotent)]
    group: GroupArg,
    #[arg(long, value_enum, default_value_t = LevelArg::Algebra)]
    level: LevelArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Induction)]
    method: MethodArg,
    /// Also write the certificate JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the induction steps.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Unipotent,
    SignedUnipotent,
}

impl From<GroupArg> for GroupTag {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Unipotent => GroupTag::Unipotent,
            GroupArg::SignedUnipotent => GroupTag::SignedUnipotent,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Algebra,
    Group,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Induction,
    Parity,
    Oracle,
    ClosedForm,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out = Out { json: cli.json };
    match run(cli.command, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => out.fail(f),
    }
}

fn run(command: Command, out: &Out) -> Result<(), Failure> {
    let oracle = Oracle::from_env().map_err(Failure::Usage)?;
    match command {
        Command::Reverse(args) => {
            let m = args.input.read()?;
            with_any_matrix!(m, m => reverse(m, &args, &oracle, out))
        }
        Command::Check { certificate } => check(&read_source(certificate.as_ref(), None)?, out),
        Command::Exp(input) => {
            let m = input.read()?;
            with_any_matrix!(m, m => {
                let u = expmap::exp(&NilpotentUpper::new(m)?);
                out.matrix_result(u.as_matrix());
                Ok(())
            })
        }
        Command::Log(input) => {
            let m = input.read()?;
            with_any_matrix!(m, m => {
                let x = expmap::log(&SignedUnipotent::new(m)?)?;
                out.matrix_result(x.as_matrix());
                Ok(())
            })
        }
        Command::Jordan { input, witness } => {
            let m = input.read()?;
            with_any_matrix!(m, m => jordan(m, witness, &oracle, out))
        }
        Command::Oracle { input, group, level, full } => {
            let m = input.read()?;
            let enumeration = if full { Enumeration::Full } else { Enumeration::Normalized };
            with_any_matrix!(m, m => oracle_cmd(m, group.into(), level, enumeration, &oracle, out))
        }
        Command::Search { ring, n, budget, seed } => {
            let mut rng = rng_for(seed, 0);
            let report = match ring {
                Ring::Rat => oracle.nonreal_search::<Rational, _>(n, budget, &mut rng),
                Ring::Gauss => oracle.nonreal_search::<GaussianRational, _>(n, budget, &mut rng),
                Ring::Quat => oracle.nonreal_search::<RationalQuaternion, _>(n, budget, &mut rng),
            }?;
            out.search(&report);
            Ok(())
        }
        Command::Campaign { mode, ring, n_max, trials, seed } => {
            let report = run_campaign(&CampaignConfig { mode, ring, n_max, trials, seed }, &oracle)?;
            out.campaign(&report);
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Silent)
            }
        }
    }
}

impl InputArgs {
    fn read(&self) -> Result<AnyMatrix, Failure> {
        let src = read_source(self.input.as_ref(), self.matrix.as_deref())?;
        Ok(AnyMatrix::parse(&src, self.ring)?)
    }
}

fn read_source(path: Option<&PathBuf>, inline: Option<&str>) -> Result<String, Failure> {
    if let Some(text) = inline {
        return Ok(text.to_string());
    }
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn reverse<S: Scalar>(m: Matrix<S>, args: &ReverseArgs, oracle: &Oracle, out: &Out) -> Result<(), Failure> {
    let group: GroupTag = args.group.into();
    let cert = match args.level {
        LevelArg::Algebra => {
            let x = NilpotentUpper::new(m)?;
            if group == GroupTag::Unipotent && args.method != MethodArg::Oracle {
                if !x.is_zero() {
                    return Err(non_reality(&x, oracle, out));
                }
                let id = SignedUnipotent::identity(x.n());
                ReversalCertificate::new(x.into_matrix(), id, Level::Algebra, ProducedBy::ClosedForm)
            } else {
                match args.method {
                    MethodArg::Induction => {
                        let rev = reverse_star(&x)?;
                        if args.trace {
                            out.trace(&rev.trace);
                        }
                        rev.certificate
                    }
                    MethodArg::Parity => match diagonal_parity_reverser(&x) {
                        ParityOutcome::Reverser { certificate, .. } => certificate,
                        ParityOutcome::Infeasible(cycle) => {
                            out.report(
                                &format!("no diagonal reverser: odd cycle {}", output::edge_list(&cycle.edges())),
                                json!({"status": "infeasible", "method": "parity", "odd_cycle": cycle.edges()}),
                            );
                            return Err(Failure::Silent);
                        }
                    },
                    MethodArg::Oracle => {
                        let result = oracle.reverser_feasible(&x, group)?;
                        match result.reverser() {
                            Some(g) => {
                                ReversalCertificate::new(x.into_matrix(), g.clone(), Level::Algebra, ProducedBy::Oracle)
                            }
                            None => return Err(oracle_infeasible(group, result.patterns_tried, out)),
                        }
                    }
                    MethodArg::ClosedForm => closed_form_reverser(&x)?,
                }
            }
        }
        LevelArg::Group => {
            let u = SignedUnipotent::new(m)?;
            if group == GroupTag::Unipotent && args.method != MethodArg::Oracle {
                if u.as_matrix().is_identity() {
                    let id = SignedUnipotent::identity(u.n());
                    ReversalCertificate::new(u.as_matrix().clone(), id, Level::Group, ProducedBy::ClosedForm)
                } else if u.is_unipotent() {
                    // u = exp(X) is reversed by unipotent g exactly when X is
                    return Err(non_reality(&expmap::log(&u)?, oracle, out));
                } else {
                    return group_oracle(&u, group, oracle, args, out);
                }
            } else {
                match args.method {
                    MethodArg::Induction => reverse_group_star(&u)?,
                    MethodArg::Oracle => return group_oracle(&u, group, oracle, args, out),
                    MethodArg::Parity | MethodArg::ClosedForm => {
                        return Err(Failure::Usage(
                            "--method parity and closed-form apply at the algebra level only".into(),
                        ))
                    }
                }
            }
        }
    };
    emit_certificate(&cert, args.out.as_ref(), out)
}

fn group_oracle<S: Scalar>(
    u: &SignedUnipotent<S>,
    group: GroupTag,
    oracle: &Oracle,
    args: &ReverseArgs,
    out: &Out,
) -> Result<(), Failure> {
    let result = oracle.group_reverser_feasible(u, group)?;
    match result.reverser() {
        Some(g) => {
            let cert = ReversalCertificate::new(u.as_matrix().clone(), g.clone(), Level::Group, ProducedBy::Oracle);
            emit_certificate(&cert, args.out.as_ref(), out)
        }
        None => Err(oracle_infeasible(group, result.patterns_tried, out)),
    }
}

fn emit_certificate<S: Scalar>(
    cert: &ReversalCertificate<S>,
    path: Option<&PathBuf>,
    out: &Out,
) -> Result<(), Failure> {
    let doc = CertificateDocument::from_certificate(cert, None)?;
    if let Some(p) = path {
        fs::write(p, doc.to_json() + "\n").map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    out.certificate(&doc);
    if doc.verified {
        Ok(())
    } else {
        Err(Failure::Silent)
    }
}

fn non_reality<S: Scalar>(x: &NilpotentUpper<S>, oracle: &Oracle, out: &Out) -> Failure {
    let bounded = if x.n() <= oracle.dim_limit() { *oracle } else { Oracle::new(0) };
    match no_unipotent_reverser_certificate(x, &bounded) {
        Ok(record) => {
            out.witness(&WitnessDocument::from_record(x.as_matrix(), &record));
            Failure::Silent
        }
        Err(e) => e.into(),
    }
}

fn oracle_infeasible(group: GroupTag, patterns: usize, out: &Out) -> Failure {
    out.report(
        &format!("INFEASIBLE: no reverser in {group} ({patterns} sign patterns tried)"),
        json!({"status": "infeasible", "method": "oracle", "group": group, "patterns_tried": patterns}),
    );
    Failure::Silent
}

fn check(src: &str, out: &Out) -> Result<(), Failure> {
    let doc = CertificateDocument::from_json(src)?;
    let valid = check_document(&doc)?;
    out.report(
        if valid { "valid" } else { "INVALID: the reversal identity or involution flag does not hold" },
        json!({"valid": valid}),
    );
    if valid {
        Ok(())
    } else {
        Err(Failure::Silent)
    }
}

fn jordan<S: Scalar>(m: Matrix<S>, witness: bool, oracle: &Oracle, out: &Out) -> Result<(), Failure> {
    let x = NilpotentUpper::new(m)?;
    let data = jordan_structure(&x)?;
    out.jordan(&data);
    if witness {
        if x.is_zero() {
            return Err(Error::ZeroInput.into());
        }
        let bounded = if x.n() <= oracle.dim_limit() { *oracle } else { Oracle::new(0) };
        let record = no_unipotent_reverser_certificate(&x, &bounded)?;
        out.witness(&WitnessDocument::from_record(x.as_matrix(), &record));
    }
    Ok(())
}

fn oracle_cmd<S: Scalar>(
    m: Matrix<S>,
    group: GroupTag,
    level: LevelArg,
    enumeration: Enumeration,
    oracle: &Oracle,
    out: &Out,
) -> Result<(), Failure> {
    let result = match level {
        LevelArg::Algebra => oracle.reverser_feasible_with(&NilpotentUpper::new(m)?, group, enumeration)?,
        LevelArg::Group => {
            if enumeration == Enumeration::Full {
                return Err(Failure::Usage("--full applies at the algebra level only".into()));
            }
            oracle.group_reverser_feasible(&SignedUnipotent::new(m)?, group)?
        }
    };
    match result.reverser() {
        Some(g) => {
            out.report(
                &format!("FEASIBLE ({} sign patterns tried)\ng = {}", result.patterns_tried, g.as_matrix()),
                json!({"status": "feasible", "group": group, "level": result.level,
                       "patterns_tried": result.patterns_tried, "g": g.as_matrix().to_text()}),
            );
            Ok(())
        }
        None => Err(oracle_infeasible(group, result.patterns_tried, out)),
    }
}
