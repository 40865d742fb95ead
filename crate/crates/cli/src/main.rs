//! `braidlike`: exact verification of Baxterised R-matrices from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (a witness is
//! printed on stderr), 2 on usage or input errors.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use braidlike_core::baxterisation::baxterise_sigma;
use braidlike_core::catalog::closed_form_r;
use braidlike_core::integrability::{hamiltonian, transfer_matrix, ChainSpec};
use braidlike_core::sampling::{cell_rng, commuting_partner, random_instance};
use braidlike_core::scan::{scan, Execution, ScanConfig, MAX_SCAN_M, MAX_SCAN_N};
use braidlike_core::suite::{rmatrix_for, run_check_on, CheckContext};
use braidlike_core::{Check, CheckReport, Error, Family, Matrix, Relation, Scalar};
use clap::{Args, Parser, Subcommand};

use input::{parse_assignment, GeneratorArgs, Resolved};
use report::{emit_json, print_witness, MatrixWithMeta, TrialResult, VerifyReport};

#[derive(Parser, Debug)]
#[command(name = "braidlike", version, about = "Exact checks for two-parameter Baxterisations of braid-like algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run property checks on one generator.
    Verify(VerifyArgs),
    /// Print the Baxterised R-matrix Ř(x, y).
    Rmatrix(RmatrixArgs),
    /// Print the periodic Hamiltonian of an n-site chain.
    Hamiltonian(ChainArgs),
    /// Print the transfer matrix t(x|z) of an n-site chain.
    Transfer(TransferArgs),
    /// Sweep every check over seeded random instances.
    Scan(ScanArgs),
    /// Print a family generator as a JSON matrix.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    /// Comma-separated checks to run.
    #[arg(long, value_delimiter = ',', default_value = "relation,ybe,unitarity,regularity,locality")]
    checks: Vec<Check>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Hecke parameter for the quadratic relation.
    #[arg(long, default_value = "0")]
    xi: Scalar,
    /// Chain length for transfer and Hamiltonian checks.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// TASEP_T rates for the product check. Derived from random ζ when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_assignment)]
    partner_params: Option<Vec<(String, Scalar)>>,
}

#[derive(Args, Debug)]
struct RmatrixArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long, allow_hyphen_values = true)]
    x: Scalar,
    #[arg(long, allow_hyphen_values = true)]
    y: Scalar,
    /// Use the closed-form constructor and cross-check it against the Baxterisation.
    #[arg(long)]
    closed_form: bool,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long)]
    n: usize,
    /// Homogeneous inhomogeneity.
    #[arg(long, allow_hyphen_values = true)]
    z: Scalar,
}

#[derive(Args, Debug)]
struct TransferArgs {
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long, allow_hyphen_values = true)]
    x: Scalar,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Comma-separated families. All of them when omitted.
    #[arg(long, value_delimiter = ',')]
    families: Option<Vec<Family>>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = MAX_SCAN_M)]
    max_m: usize,
    #[arg(long, default_value_t = MAX_SCAN_N)]
    max_n: usize,
    /// Run cells on the current thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
}

/// A finished command: either everything held or a check failed.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::from_default_env())
        .with_writer(std::io::stderr)
        .init();

    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Rmatrix(args) => cmd_rmatrix(args),
        Command::Hamiltonian(args) => cmd_hamiltonian(args),
        Command::Transfer(args) => cmd_transfer(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Export(args) => cmd_export(args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome, CliError> {
    if args.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()).into());
    }
    let mut checks = args.checks.clone();
    checks.dedup();
    let fixed = args.generator.resolve_optional()?;
    let family = args.generator.family;
    if fixed.is_none() && family.is_none() {
        return Err(CliError::Usage("one of --family, --spec or --matrix is required".into()));
    }
    if let Some(f) = fixed.as_ref().and_then(|r| r.spec.as_ref()).map(|s| s.family).or(family) {
        for check in &checks {
            if !check.applies_to(f) {
                return Err(Error::InvalidParameter(format!("check `{check}` does not apply to {f}")).into());
            }
        }
    }
    let partner_fixed = match &args.partner_params {
        Some(pairs) => {
            let m = fixed.as_ref().map_or(args.generator.m, |r| r.op.m());
            Some(input::instance_from_pairs(Family::TasepT, m, pairs)?)
        }
        None => None,
    };

    let mut results = Vec::new();
    for trial in 0..args.trials {
        let resolved = match &fixed {
            Some(r) => r.clone(),
            None => {
                let family = family.expect("checked above");
                let mut rng = cell_rng(args.seed, &format!("verify/{family}/params/{trial}"));
                Resolved::from_spec(random_instance(family, args.generator.m, &mut rng)?)?
            }
        };
        for &check in &checks {
            let mut rng = cell_rng(args.seed, &format!("verify/{check}/{trial}"));
            let mut ctx = CheckContext { n: args.n, xi: args.xi.clone(), partner: None };
            if check == Check::Product {
                ctx.partner = Some(match &partner_fixed {
                    Some(p) => p.clone(),
                    None => {
                        let spec = resolved.spec.as_ref().ok_or_else(|| {
                            Error::InvalidParameter("product check needs a TASEP_S family instance".into())
                        })?;
                        commuting_partner(spec, &mut rng)?
                    }
                });
            }
            let report: CheckReport =
                run_check_on(check, &resolved.op, resolved.relation, resolved.spec.as_ref(), &ctx, &mut rng)?;
            if let Some(w) = &report.witness {
                print_witness(&format!("{check} (trial {trial})"), w);
            }
            results.push(TrialResult {
                check,
                trial,
                params: if fixed.is_none() { resolved.spec.as_ref().map(|s| s.params.clone()) } else { None },
                passed: report.passed,
                witness: report.witness,
            });
        }
    }

    let failed = results.iter().filter(|r| !r.passed).count();
    let report = VerifyReport {
        source: fixed.as_ref().map_or_else(|| family.expect("checked above").to_string(), |r| r.label()),
        relation: fixed.as_ref().map_or(Relation::Sigma, |r| r.relation),
        m: fixed.as_ref().map_or(args.generator.m, |r| r.op.m()),
        params: fixed.as_ref().and_then(|r| r.spec.as_ref().map(|s| s.params.clone())),
        seed: args.seed,
        trials: args.trials,
        total: results.len(),
        passed: results.len() - failed,
        failed,
        results,
    };
    emit_json(&report)?;
    Ok(if failed == 0 { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_rmatrix(args: RmatrixArgs) -> Result<Outcome, CliError> {
    let resolved = args.generator.resolve()?;
    let baxterised = match rmatrix_for(&resolved.op, resolved.relation, &args.x, &args.y) {
        Ok(r) => r,
        // Name the vanishing factor when a closed form knows it.
        Err(e @ Error::SingularResolvent { .. }) => match &resolved.spec {
            Some(spec) if !spec.family.is_tasep() => {
                return Err(closed_form_r(spec, &args.x, &args.y).err().unwrap_or(e).into())
            }
            _ => return Err(e.into()),
        },
        Err(e) => return Err(e.into()),
    };
    if !args.closed_form {
        emit_json(&baxterised)?;
        return Ok(Outcome::Pass);
    }
    let spec = resolved
        .spec
        .as_ref()
        .filter(|s| !s.family.is_tasep())
        .ok_or_else(|| Error::InvalidParameter("--closed-form needs one of the families S1..S7".into()))?;
    let closed = closed_form_r(spec, &args.x, &args.y)?;
    emit_json(&closed)?;
    let check = CheckReport::from_equality(
        &closed,
        &baxterise_sigma(&resolved.op, &args.x, &args.y)?,
        "closed form ≠ Baxterisation",
    );
    match check.witness {
        Some(w) => {
            print_witness("closed form", &w);
            Ok(Outcome::Fail)
        }
        None => Ok(Outcome::Pass),
    }
}

fn chain_spec(args: &ChainArgs) -> Result<(ChainSpec, usize), CliError> {
    let resolved = args.generator.resolve()?;
    if resolved.relation == Relation::Tau {
        return Err(Error::InvalidParameter("chains are built from σ-type generators".into()).into());
    }
    let m = resolved.op.m();
    Ok((ChainSpec::new(resolved.op, args.n, args.z.clone()), m))
}

fn cmd_hamiltonian(args: ChainArgs) -> Result<Outcome, CliError> {
    let (spec, m) = chain_spec(&args)?;
    let h = hamiltonian(&spec)?;
    emit_json(&MatrixWithMeta { matrix: h, n: args.n, m, z: args.z, x: None })?;
    Ok(Outcome::Pass)
}

fn cmd_transfer(args: TransferArgs) -> Result<Outcome, CliError> {
    let (spec, m) = chain_spec(&args.chain)?;
    let t = transfer_matrix(&spec, &args.x)?;
    emit_json(&MatrixWithMeta { matrix: t, n: args.chain.n, m, z: args.chain.z, x: Some(args.x) })?;
    Ok(Outcome::Pass)
}

fn cmd_scan(args: ScanArgs) -> Result<Outcome, CliError> {
    let config = ScanConfig {
        families: args.families.unwrap_or_else(|| Family::ALL.to_vec()),
        seed: args.seed,
        trials: args.trials,
        max_m: args.max_m,
        max_n: args.max_n,
        execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let summary = scan(&config)?;
    for record in summary.records.iter().filter(|r| !r.passed) {
        let label = format!("{}/{}/m={}/trial {}", record.family, record.check, record.m, record.trial);
        match (&record.witness, &record.error) {
            (Some(w), _) => print_witness(&label, w),
            (None, Some(e)) => eprintln!("{label}: error: {e}"),
            (None, None) => eprintln!("{label}: failed"),
        }
    }
    emit_json(&summary)?;
    Ok(if summary.all_passed() { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_export(args: ExportArgs) -> Result<Outcome, CliError> {
    let resolved = args.generator.resolve()?;
    emit_json::<Matrix>(resolved.op.mat())?;
    Ok(Outcome::Pass)
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}
