//! Command-line front end for `zakframe`.
//!
//! Every subcommand reads JSON files, emits one JSON document (to stdout
//! or `--out`), and uses three exit codes: `0` success, `1` verification
//! failure, `2` usage or malformed input. Output is byte-identical for
//! identical inputs and seeds; the `ZAKFRAME_THREADS` environment
//! variable caps restart parallelism without changing any result.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use zakframe::constructions::{
    build_affine, build_heisenberg, paley_etf, search_sic_fiducial, verify_sic,
};
use zakframe::io::{
    build_group, vec_from_pairs, ComplexPair, FiberBoundsJson, GroupFunctionJson, GroupSpec,
    MonomialMatrixJson, PaleyEtfJson, SicSearchJson, SicVerdictJson, ZakArrayJson,
};
use zakframe::repn::induced_rep_matrix;
use zakframe::sispace::fiber_frame_bounds;
use zakframe::zak::{zak_inverse, zak_right};
use zakframe::{GroupFunction, SearchConfig};

#[derive(Parser)]
#[command(
    name = "zakframe",
    version,
    about = "Zak transforms, induced representations, invariant spaces, and equiangular line systems on finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a function on G into its character-by-transversal fiber array.
    Zak(ZakCmd),
    /// Reconstruct a function on G from its fiber array.
    InvZak(InvZakCmd),
    /// Monomial matrix of one group element in an induced representation.
    InducedMatrix(InducedMatrixCmd),
    /// Fiber-wise frame bounds of the shift-invariant space of generators.
    SiBounds(SiBoundsCmd),
    /// Build and verify the quadratic-residue equiangular tight frame.
    Paley(PaleyCmd),
    /// Verify a fiducial vector on the degree-d Heisenberg group.
    HeisenbergVerify(HeisenbergVerifyCmd),
    /// Multistart search for a certified fiducial vector.
    SicSearch(SicSearchCmd),
    /// Run the full acceptance-criteria suite.
    Selftest(SelftestCmd),
}

#[derive(Args)]
struct ZakCmd {
    /// Group description JSON file.
    #[arg(long)]
    group: PathBuf,
    /// Function values as [[re,im],...] (or {"values": ...}).
    #[arg(long = "f", alias = "function")]
    f: PathBuf,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvZakCmd {
    /// Group description JSON file.
    #[arg(long)]
    group: PathBuf,
    /// Fiber array as {"rows": [[[re,im],...],...]} (or the bare rows).
    #[arg(long)]
    array: PathBuf,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InducedMatrixCmd {
    /// Group description JSON file.
    #[arg(long)]
    group: PathBuf,
    /// Exponent tuple of the inducing character, comma separated.
    #[arg(long, value_delimiter = ',')]
    character: Vec<u64>,
    /// Index of the group element.
    #[arg(long)]
    element: usize,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SiBoundsCmd {
    /// Group description JSON file.
    #[arg(long)]
    group: PathBuf,
    /// Generator list as [[[re,im],...],...] (or {"generators": ...}).
    #[arg(long)]
    generators: PathBuf,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PaleyCmd {
    /// Prime power q ≡ 3 (mod 4), q > 3.
    #[arg(long)]
    q: u64,
    /// Also write the squared-coherence table |⟨v_i,v_j⟩|² as CSV.
    #[arg(long)]
    coherence_csv: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HeisenbergVerifyCmd {
    /// Heisenberg degree d.
    #[arg(long)]
    d: usize,
    /// Fiducial values as [[re,im],...] (or {"values": ...}).
    #[arg(long)]
    fiducial: PathBuf,
    /// Certification tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SicSearchCmd {
    /// Heisenberg degree d.
    #[arg(long)]
    d: usize,
    /// Seed for the restart streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restart budget.
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Iteration budget per restart.
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    /// Certification tolerance on the quartic deviation.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Optional starting point tried as restart 0, as [[re,im],...].
    #[arg(long)]
    warm_start: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestCmd {
    /// Run a single criterion (1-based) instead of the whole suite.
    #[arg(long)]
    only: Option<usize>,
}

/// Failure modes, ordered by exit code.
enum Failure {
    /// A verification pipeline ran and said no: exit 1.
    Verification(String),
    /// Bad flags, unreadable files, malformed JSON, invalid math input: exit 2.
    Usage(String),
}

impl From<zakframe::Error> for Failure {
    fn from(e: zakframe::Error) -> Self {
        match e {
            zakframe::Error::Verification(_) | zakframe::Error::InternalConsistency(_) => {
                Failure::Verification(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Zak(cmd) => {
            let built = build_group(&read_json::<GroupSpec>(&cmd.group)?)?;
            let f = GroupFunction::new(vec_from_pairs(&read_values(&cmd.f)?));
            let z = zak_right(built.context(), &f)?;
            emit(&cmd.out, &ZakArrayJson::from_array(&z))
        }
        Command::InvZak(cmd) => {
            let built = build_group(&read_json::<GroupSpec>(&cmd.group)?)?;
            let rows: ArrayFile = read_json(&cmd.array)?;
            let z = rows.into_json().to_array(built.context())?;
            let f = zak_inverse(built.context(), &z)?;
            emit(&cmd.out, &GroupFunctionJson::from_function(&f))
        }
        Command::InducedMatrix(cmd) => {
            let built = build_group(&read_json::<GroupSpec>(&cmd.group)?)?;
            let ctx = built.context();
            let alpha = ctx.abelian().character(cmd.character.clone())?;
            let m = induced_rep_matrix(ctx, &alpha, cmd.element)?;
            emit(&cmd.out, &MonomialMatrixJson::from_matrix(&m))
        }
        Command::SiBounds(cmd) => {
            let built = build_group(&read_json::<GroupSpec>(&cmd.group)?)?;
            let gens: Vec<GroupFunction> = read_generators(&cmd.generators)?
                .iter()
                .map(|v| GroupFunction::new(vec_from_pairs(v)))
                .collect();
            let bounds = fiber_frame_bounds(built.context(), &gens)?;
            emit(&cmd.out, &FiberBoundsJson::from_bounds(&bounds))
        }
        Command::Paley(cmd) => {
            let actx = build_affine(cmd.q)?;
            let etf = paley_etf(&actx)?;
            let report = PaleyEtfJson::from_outcome(&etf);
            if let Some(csv) = &cmd.coherence_csv {
                write_coherence_csv(csv, &report)?;
            }
            emit(&cmd.out, &report)
        }
        Command::HeisenbergVerify(cmd) => {
            require_positive_tol(cmd.tol)?;
            let hctx = build_heisenberg(cmd.d)?;
            let fid = vec_from_pairs(&read_values(&cmd.fiducial)?);
            let verdict = verify_sic(&hctx, &fid, cmd.tol)?;
            let certified = verdict.certified;
            emit(&cmd.out, &SicVerdictJson::from_verdict(&verdict))?;
            if certified {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "fiducial not certified at tolerance {}",
                    cmd.tol
                )))
            }
        }
        Command::SicSearch(cmd) => {
            require_positive_tol(cmd.tol)?;
            if cmd.restarts == 0 || cmd.max_iters == 0 {
                return Err(Failure::Usage(
                    "restart and iteration budgets must be at least 1".into(),
                ));
            }
            let mut config = SearchConfig::new(cmd.d);
            config.seed = cmd.seed;
            config.max_restarts = cmd.restarts;
            config.max_iters = cmd.max_iters;
            config.tol = cmd.tol;
            if let Some(path) = &cmd.warm_start {
                config.warm_start = Some(vec_from_pairs(&read_values(path)?));
            }
            let outcome = search_sic_fiducial(&config)?;
            emit(
                &cmd.out,
                &SicSearchJson::from_outcome(cmd.d, cmd.seed, &outcome),
            )
        }
        Command::Selftest(cmd) => {
            let total = zakframe::selftest::CRITERIA.len();
            let ids: Vec<usize> = match cmd.only {
                Some(id) => {
                    if id == 0 || id > total {
                        return Err(Failure::Usage(format!(
                            "criterion id must lie in 1..={total}, got {id}"
                        )));
                    }
                    vec![id]
                }
                None => (1..=total).collect(),
            };
            let mut failures = 0usize;
            for id in ids {
                let result = zakframe::selftest::run_criterion(id);
                println!("{}", result.line());
                if !result.passed {
                    failures += 1;
                }
            }
            if failures == 0 {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "{failures} acceptance criteria failed"
                )))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Input shapes
// ---------------------------------------------------------------------------

/// Function values either bare or wrapped, so `inv-zak` output feeds
/// straight back into `zak`.
#[derive(Deserialize)]
#[serde(untagged)]
enum ValuesFile {
    Bare(Vec<ComplexPair>),
    Wrapped { values: Vec<ComplexPair> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ArrayFile {
    Wrapped { rows: Vec<Vec<ComplexPair>> },
    Bare(Vec<Vec<ComplexPair>>),
}

impl ArrayFile {
    fn into_json(self) -> ZakArrayJson {
        match self {
            ArrayFile::Wrapped { rows } | ArrayFile::Bare(rows) => ZakArrayJson { rows },
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorsFile {
    Bare(Vec<Vec<ComplexPair>>),
    Wrapped { generators: Vec<Vec<ComplexPair>> },
}

fn read_values(path: &Path) -> Result<Vec<ComplexPair>, Failure> {
    Ok(match read_json::<ValuesFile>(path)? {
        ValuesFile::Bare(v) | ValuesFile::Wrapped { values: v } => v,
    })
}

fn read_generators(path: &Path) -> Result<Vec<Vec<ComplexPair>>, Failure> {
    Ok(match read_json::<GeneratorsFile>(path)? {
        GeneratorsFile::Bare(v) | GeneratorsFile::Wrapped { generators: v } => v,
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn require_positive_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "tolerance must be a positive finite number, got {tol}"
        )))
    }
}

/// Serialize one JSON document to `--out` or stdout.
fn emit<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Usage(format!("serialization failed: {e}")))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Squared moduli of the Gram matrix as a plain CSV table.
fn write_coherence_csv(path: &Path, report: &PaleyEtfJson) -> Result<(), Failure> {
    let mut text = String::new();
    for row in &report.report.frame.gram {
        let cells: Vec<String> = row
            .iter()
            .map(|p| format!("{:.16e}", p[0] * p[0] + p[1] * p[1]))
            .collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
