//! Command-line front end.

use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use charpoly_forge_core::boundary::{
    check_quartic_counterexample, normal_form_n, EqualSplitOutcome, EqualSplitProblem,
    QuarticOutcome, DEFAULT_BUDGET,
};
use charpoly_forge_core::linalg::DEFAULT_MAX_DIM;
use charpoly_forge_core::{
    charpoly, decompose, forge, invariant_factors, minpoly, DecompositionKind, Error, FieldSpec,
    ForgeProblem, Matrix, Polynomial,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::json;
use crate::search::{budget_from_env, parallel_search};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "charpoly-forge",
    version,
    about = "Square-zero perturbations with prescribed characteristic polynomial"
)]
struct Cli {
    /// Reject input matrices larger than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find N with N^2 = 0 and charpoly(A + N) = q.
    Forge {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        target: PathBuf,
    },
    /// Check N^2 = 0 and charpoly(A + N) = q. `--nilpotent` may be a
    /// matrix or a certificate from `forge` or `decompose`.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        nilpotent: PathBuf,
        /// Defaults to the "q" entry of the certificate.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Write A as a good matrix plus a square-zero matrix.
    Decompose {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Characteristic and minimal polynomials and invariant factors.
    Canon {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Exhaustive search at n = 2k over GF(p).
    BoundarySearch {
        /// Q or GF:<p>.
        #[arg(long)]
        field: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p22: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        threads: Option<NonZeroUsize>,
    },
    /// Whether x^4 + 1 is reachable from diag(0, 0, C(x^2 + 1)).
    BoundaryQuartic {
        /// Q or GF:<p>.
        #[arg(long)]
        field: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Diagonalizable,
    Invertible,
    Potent,
    Torsion,
}

impl From<Mode> for DecompositionKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Diagonalizable => DecompositionKind::Diagonalizable,
            Mode::Invertible => DecompositionKind::Invertible,
            Mode::Potent => DecompositionKind::Potent,
            Mode::Torsion => DecompositionKind::Torsion,
        }
    }
}

/// Everything that ends a command early.
#[derive(Debug)]
enum Failure {
    /// Unreadable file, malformed input or bad flags.
    Input(String),
    /// A precondition or verification failed.
    Domain(Error),
    /// A check that reported `false`, with its JSON report.
    Rejected(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<json::FormatError> for Failure {
    fn from(e: json::FormatError) -> Self {
        Failure::Input(e.0)
    }
}

type Outcome = Result<Value, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    json::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path, max_dim: usize) -> Result<Matrix, Failure> {
    let m = json::matrix_from_json(&read_json(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    m.check_dimension_cap(max_dim)?;
    Ok(m)
}

fn read_poly(path: &Path) -> Result<Polynomial, Failure> {
    json::poly_from_json(&read_json(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn error_json(e: &Error) -> Value {
    json!({"error": e.code(), "detail": e.to_string()})
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code. Results go to `out` (or `--out`), diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = dispatch(&cli);
    let (value, code) = match result {
        Ok(v) => (v, EXIT_OK),
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INPUT;
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            let code = if matches!(e, Error::InternalVerificationFailed(_)) {
                EXIT_INTERNAL
            } else {
                EXIT_DOMAIN
            };
            (error_json(&e), code)
        }
        Err(Failure::Rejected(v)) => (v, EXIT_DOMAIN),
    };
    let text = json::render(&value);
    match (&cli.out, code) {
        (Some(path), EXIT_OK) => {
            if let Err(e) = fs::write(path, text) {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        _ => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}

fn dispatch(cli: &Cli) -> Outcome {
    let max_dim = cli.max_dim;
    match &cli.command {
        Command::Forge { matrix, k, target } => {
            let a = read_matrix(matrix, max_dim)?;
            let q = read_poly(target)?;
            let cert = forge(&ForgeProblem::new(a, *k, q)?)?;
            Ok(json::forge_certificate_to_json(&cert))
        }
        Command::Verify {
            matrix,
            nilpotent,
            target,
        } => verify(&read_matrix(matrix, max_dim)?, nilpotent, target.as_deref()),
        Command::Decompose { mode, matrix, k } => {
            let a = read_matrix(matrix, max_dim)?;
            let cert = decompose((*mode).into(), &a, *k)?;
            Ok(json::decomposition_to_json(&cert))
        }
        Command::Canon { matrix } => {
            let a = read_matrix(matrix, max_dim)?;
            let inv = invariant_factors(&a)?;
            let p = charpoly(&a)?;
            Ok(json!({
                "charpoly": json::poly_to_json(&p),
                "minpoly": json::poly_to_json(&minpoly(&a)?),
                "invariant_factors": inv.factors().iter().map(json::poly_to_json).collect::<Vec<_>>(),
                "nonderogatory": inv.len() == 1,
                "invertible": !p.constant_term().is_zero(),
            }))
        }
        Command::BoundarySearch {
            field,
            k,
            p22,
            target,
            threads,
        } => {
            let spec = json::field_from_flag(field)?;
            let p22 = read_poly(p22)?;
            let q = read_poly(target)?;
            boundary_search(spec, *k, &p22, &q, max_dim, *threads)
        }
        Command::BoundaryQuartic { field } => {
            let spec = json::field_from_flag(field)?;
            Ok(boundary_quartic(spec))
        }
    }
}

fn verify(a: &Matrix, nilpotent: &Path, target: Option<&Path>) -> Outcome {
    let doc = read_json(nilpotent)?;
    let n = if json::has_key(&doc, "N") {
        json::matrix_from_json(&doc["N"])?
    } else {
        json::matrix_from_json(&doc)?
    };
    let q = match target {
        Some(path) => read_poly(path)?,
        None if json::has_key(&doc, "q") => json::poly_from_json(&doc["q"])?,
        None => {
            return Err(Failure::Input(
                "no --target given and the file has no \"q\" entry".into(),
            ))
        }
    };
    if a.spec() != n.spec() || a.spec() != q.spec() {
        return Err(Error::FieldMismatch.into());
    }
    if a.rows() != n.rows() || a.cols() != n.cols() {
        return Err(Error::DimensionMismatch.into());
    }
    let square_zero = n.is_square_zero()?;
    let achieved = charpoly(&(a + &n))?;
    let matches = achieved == q;
    let mut report = json!({
        "square_zero": square_zero,
        "charpoly_matches": matches,
        "achieved": json::poly_to_json(&achieved),
    });
    let mut ok = square_zero && matches;
    if json::has_key(&doc, "kind") {
        let cert = json::decomposition_from_json(&doc)?;
        let evidence_ok = cert.verify(a).is_ok();
        report["evidence_holds"] = json!(evidence_ok);
        ok &= evidence_ok;
    }
    report["verified"] = json!(ok);
    if ok {
        Ok(report)
    } else {
        report["error"] = json!("VerificationFailed");
        report["detail"] = json!("the perturbation does not satisfy the claimed identities");
        Err(Failure::Rejected(report))
    }
}

fn boundary_search(
    spec: FieldSpec,
    k: usize,
    p22: &Polynomial,
    q: &Polynomial,
    max_dim: usize,
    threads: Option<NonZeroUsize>,
) -> Outcome {
    if !spec.is_finite() {
        return Err(Error::UnsupportedInfiniteField.into());
    }
    if p22.spec() != spec || q.spec() != spec {
        return Err(Error::FieldMismatch.into());
    }
    if p22.degree() != Some(k) || k == 0 {
        return Err(Error::BadShape.into());
    }
    if 2 * k > max_dim {
        return Err(Error::DimensionTooLarge {
            dim: 2 * k,
            cap: max_dim,
        }
        .into());
    }
    let budget = budget_from_env()
        .map_err(Failure::Input)?
        .unwrap_or(DEFAULT_BUDGET);
    let problem = EqualSplitProblem::from_block(p22, q)?;
    let threads = threads
        .or_else(|| std::thread::available_parallelism().ok())
        .unwrap_or(NonZeroUsize::MIN);
    Ok(match parallel_search(&problem, budget, threads)? {
        EqualSplitOutcome::Witness { index, x } => json!({
            "result": "Witness",
            "index": index,
            "X": json::matrix_to_json(&x),
            "N": json::matrix_to_json(&normal_form_n(&x)?),
        }),
        EqualSplitOutcome::Exhausted { candidates } => json!({
            "result": "Exhausted",
            "candidates": candidates,
        }),
    })
}

fn boundary_quartic(spec: FieldSpec) -> Value {
    match check_quartic_counterexample(spec) {
        QuarticOutcome::NoSolution(Some(cert)) => json!({
            "result": "NoSolution",
            "certificate": cert.to_string(),
            "certificate_verified": cert.verify(),
        }),
        QuarticOutcome::NoSolution(None) => json!({"result": "NoSolution"}),
        QuarticOutcome::Witness(x) => json!({
            "result": "Witness",
            "X": json::matrix_to_json(&x),
            "N": json::matrix_to_json(&normal_form_n(&x).expect("2x2")),
        }),
    }
}
