//! `splitkit`: splitting types of normal bundles of rational normal curves.
//!
//! Results go to stdout as JSON. Exit codes: 0 success, 1 I/O failure, 2 bad or
//! inadmissible input, 3 a construction or check that failed verification.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use splitkit::{
    balanced_type, census, construct, dim_sigma, construct_quadric_low_corank, enumerate_types,
    phi_codomain_dim, psi_from_poly, quadric_phi_dims, sample_distribution, smooth_along_curve,
    splitting_report, stratum_report, verify_grid_point, CurveContext, Error, FieldSpec, MPoly,
    SampleConfig, SplitType, DEFAULT_PRIME,
};

#[derive(Parser)]
#[command(name = "splitkit", version, about = "Normal bundles of rational normal curves on hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Point {
    /// Ambient dimension of ℙⁿ.
    #[arg(long)]
    n: usize,
    /// Degree of the rational normal curve.
    #[arg(long)]
    e: usize,
    /// Degree of the hypersurface.
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hypersurface with the given splitting type and verify it.
    Construct {
        #[command(flatten)]
        dims: Point,
        /// Target degrees, e.g. "7,6,5".
        #[arg(long = "type")]
        split_type: SplitType,
        /// Quadrics only: reduce the corank of the quadratic form.
        #[arg(long)]
        low_corank: bool,
        /// `q` or `p:PRIME`.
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Splitting type of N_{C/X} for X = V(F).
    Split {
        #[command(flatten)]
        dims: Point,
        /// File holding the polynomial in text form.
        #[arg(long, conflicts_with = "poly_inline", required_unless_present = "poly_inline")]
        poly: Option<PathBuf>,
        /// The polynomial itself, e.g. "x1^2 - x0*x2".
        #[arg(long)]
        poly_inline: Option<String>,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// List the admissible splitting types.
    Enumerate {
        #[command(flatten)]
        dims: Point,
    },
    /// Stratum dimensions for every admissible type, sorted by codimension.
    Census {
        #[command(flatten)]
        dims: Point,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Splitting types of random hypersurfaces over a prime field.
    Sample {
        #[command(flatten)]
        dims: Point,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Worker threads; defaults to SPLITKIT_THREADS, else all cores.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
    /// Dimension formulas, optionally for one splitting type.
    Dims {
        #[command(flatten)]
        dims: Point,
        #[arg(long = "type")]
        split_type: Option<SplitType>,
    },
    /// Construct, split and check smoothness for every admissible type.
    Verify {
        #[command(flatten)]
        dims: Point,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    /// A check ran but did not pass; the report is already printed.
    Unverified,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Lib(err)
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Io(err.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(err: csv::Error) -> Self {
        Failure::Io(err.to_string())
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::VerificationFailed(_)
        | Error::SurgeryVerificationFailed(_)
        | Error::LSearchExhausted(_)
        | Error::ScanIncomplete { .. } => 3,
        _ => 2,
    }
}

fn print(value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).expect("serializable output");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn context(dims: Point, field: FieldSpec) -> Result<CurveContext, Error> {
    if dims.d < 2 {
        return Err(Error::InvalidContext(format!("need d >= 2, got {}", dims.d)));
    }
    CurveContext::new(dims.n, dims.e, field)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { dims, split_type, low_corank, field } => {
            let ctx = context(dims, field)?;
            let rep = if low_corank {
                if dims.d != 2 {
                    return Err(Error::InvalidContext("--low-corank needs d = 2".into()).into());
                }
                construct_quadric_low_corank(&ctx, &split_type)?
            } else {
                construct(&ctx, dims.d, &split_type)?
            };
            print(&rep);
        }
        Command::Split { dims, poly, poly_inline, field } => {
            let ctx = context(dims, field)?;
            let text = match (poly, poly_inline) {
                (Some(path), _) => std::fs::read_to_string(path)?,
                (None, Some(text)) => text,
                (None, None) => unreachable!("clap requires one of --poly, --poly-inline"),
            };
            let f = MPoly::parse(field, dims.n, &text)?;
            if f.degree() as usize != dims.d {
                return Err(Error::DegreeMismatch(f.degree() as i64, dims.d as i64).into());
            }
            let psi = psi_from_poly(&ctx, dims.d, &f)?;
            let rep = splitting_report(&psi)?;
            print(&json!({
                "F": f.to_string(),
                "type": rep.split_type,
                "gcd_degree": rep.gcd_degree,
                "total_degree": rep.total_degree,
                "smooth_along_C": smooth_along_curve(&ctx, &f)?,
                "psi": psi,
            }));
        }
        Command::Enumerate { dims } => {
            let types = enumerate_types(dims.n, dims.e, dims.d)?;
            let list: Vec<&[i64]> = types.iter().map(SplitType::degrees).collect();
            print(&json!({ "n": dims.n, "e": dims.e, "d": dims.d, "count": types.len(), "types": list }));
        }
        Command::Census { dims, csv } => {
            let ctx = context(dims, FieldSpec::Rationals)?;
            let reports = census(&ctx, dims.d)?;
            if let Some(path) = csv {
                let mut w = csv::Writer::from_path(path)?;
                w.write_record(["degrees", "z", "h1_end", "correction", "codim", "dim_phi_stratum"])?;
                for r in &reports {
                    let degrees: Vec<String> = r.split_type.degrees().iter().map(i64::to_string).collect();
                    w.write_record([
                        degrees.join(","),
                        r.z.to_string(),
                        r.h1_end.to_string(),
                        r.correction.to_string(),
                        r.codim_sigma.to_string(),
                        r.dim_phi_stratum.to_string(),
                    ])?;
                }
                w.flush()?;
            }
            print(&reports);
        }
        Command::Sample { dims, trials, seed, threads, prime } => {
            let threads = match threads {
                Some(t) => t,
                None => match std::env::var("SPLITKIT_THREADS") {
                    Ok(v) => v
                        .parse()
                        .map_err(|_| Error::Parse(format!("SPLITKIT_THREADS = '{v}'")))?,
                    Err(_) => 0,
                },
            };
            let ctx = context(dims, FieldSpec::prime(prime)?)?;
            let cfg = SampleConfig::new(ctx, dims.d, trials, seed, threads)?;
            let table = sample_distribution(&cfg)?;
            let balanced = balanced_type(dims.n, dims.e, dims.d)?;
            print(&json!({
                "n": dims.n, "e": dims.e, "d": dims.d, "prime": prime, "seed": seed,
                "balanced": balanced.to_string(),
                "balanced_frequency": table.frequency(&balanced),
                "table": table,
            }));
        }
        Command::Dims { dims, split_type } => {
            let ctx = context(dims, FieldSpec::Rationals)?;
            let mut out = json!({
                "n": dims.n, "e": dims.e, "d": dims.d,
                "dim_sigma": dim_sigma(&ctx, dims.d),
                "phi_codomain_dim": phi_codomain_dim(&ctx, dims.d),
                "balanced": balanced_type(dims.n, dims.e, dims.d)?.to_string(),
            });
            let map = out.as_object_mut().expect("object");
            if dims.d == 2 {
                map.insert("quadric".into(), serde_json::to_value(quadric_phi_dims(&ctx)).expect("json"));
            }
            if let Some(st) = split_type {
                let rep = stratum_report(&ctx, dims.d, &st)?;
                map.insert("stratum".into(), serde_json::to_value(rep).expect("json"));
            }
            print(&out);
        }
        Command::Verify { dims, field } => {
            let ctx = context(dims, field)?;
            let checks = verify_grid_point(&ctx, dims.d)?;
            let failures: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
            print(&json!({
                "n": dims.n, "e": dims.e, "d": dims.d,
                "checked": checks.len(),
                "passed": checks.len() - failures.len(),
                "failures": failures,
            }));
            if !failures.is_empty() {
                return Err(Failure::Unverified);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(err)) => {
            eprintln!("{}", json!({ "error": err.to_string() }));
            ExitCode::from(exit_code(&err))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Unverified) => ExitCode::from(3),
    }
}
