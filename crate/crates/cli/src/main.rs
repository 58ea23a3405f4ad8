use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use quadlie_core::dblext::{
    builtin, double_extend_skew, extract_double_extension, g_of_partition, jordan_type_algebra,
};
use quadlie_core::iso::{decide_iso, quadratic_dimension, quadratic_dimension_formula};
use quadlie_core::json::{qla_from_json, qla_to_json, skew_from_json, skew_to_json};
use quadlie_core::linalg::{char_poly, rank};
use quadlie_core::orbits::{enumerate_pprime, orbit_invariant};
use quadlie_core::{Builtin, Error, JordanKind, Partition, Qla};

/// Exact computations with quadratic Lie algebras over Q(i).
#[derive(Parser)]
#[command(name = "quadlie", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariance, Jacobi, solvability, nilpotency and reducedness.
    Check { file: PathBuf },
    /// dup-number with the dimensions of V_I and W_I.
    Dup { file: PathBuf },
    /// Orbit invariant of the skew map of a solvable singular algebra, or of
    /// a skew-map file.
    Invariant { file: PathBuf },
    /// Quadratic dimension, with the formula check for reduced singular
    /// algebras.
    Qdim { file: PathBuf },
    /// Writes a solvable singular algebra as a double extension.
    Extract { file: PathBuf },
    /// Isomorphism and i-isomorphism of two singular algebras.
    Iso { a: PathBuf, b: PathBuf },
    /// Writes the algebra file of a named, Jordan-type, partition or
    /// skew-map double extension.
    #[command(group(ArgGroup::new("source").required(true).args(["name", "jordan", "partition", "skew"])))]
    Build {
        /// g3:<λ>, g4, g4:<λ>, g5 or g6
        #[arg(long)]
        name: Option<String>,
        /// even:<p>, odd:<p> or scaled:<p>:<λ>
        #[arg(long)]
        jordan: Option<String>,
        /// comma-separated parts, e.g. 3,2,2
        #[arg(long)]
        partition: Option<String>,
        /// skew-map file to double-extend
        #[arg(long)]
        skew: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Admissible partitions of n.
    EnumeratePartitions { n: usize },
}

enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if !e.is_parse() => 1,
            _ => 2,
        }
    }

    fn report(&self) -> Value {
        let (kind, message) = match self {
            Failure::Lib(e) => (e.kind(), e.to_string()),
            Failure::Io(m) => ("IoError", m.clone()),
            Failure::Usage(m) => ("UsageError", m.clone()),
        };
        json!({ "error": kind, "message": message })
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Qla, Failure> {
    Ok(qla_from_json(&read(path)?)?)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn check(g: &Qla) -> Value {
    json!({
        "dim": g.dim(),
        "invariant_form": g.check_invariant_form(),
        "jacobi": g.check_jacobi(),
        "abelian": g.is_abelian(),
        "solvable": g.is_solvable(),
        "nilpotent": g.is_nilpotent(),
        "reduced": g.is_reduced(),
    })
}

fn dup(g: &Qla) -> Outcome {
    let d = g.dup()?;
    Ok(json!({
        "dup": d.value(),
        "kind": to_value(&d.kind),
        "dim_v_i": d.v_i.len(),
        "dim_w_i": d.w_i.len(),
    }))
}

fn invariant(path: &Path) -> Outcome {
    let text = read(path)?;
    let is_skew = serde_json::from_str::<Value>(&text)
        .map(|v| v.get("mat").is_some())
        .unwrap_or(false);
    let cbar = if is_skew {
        skew_from_json(&text)?
    } else {
        extract_double_extension(&qla_from_json(&text)?)?.cbar
    };
    Ok(to_value(&orbit_invariant(&cbar)?))
}

fn qdim(g: &Qla) -> Outcome {
    let q = quadratic_dimension(g);
    let z = g.center().dim();
    let singular = match g.dup() {
        Ok(d) => d.value() > 0,
        Err(Error::Abelian) => false,
        Err(e) => return Err(e.into()),
    };
    let reduced_singular = singular && g.is_reduced();
    let formula = reduced_singular.then(|| quadratic_dimension_formula(z));
    Ok(json!({
        "qdim": q,
        "center_dim": z,
        "reduced_singular": reduced_singular,
        "formula": formula,
        "formula_holds": formula.map(|f| f == q),
    }))
}

fn extract(g: &Qla) -> Outcome {
    let data = extract_double_extension(g)?;
    let cbar: Value = serde_json::from_str(&skew_to_json(&data.cbar)).expect("valid json");
    let poly: Vec<Value> = char_poly(data.cbar.mat())
        .coeffs()
        .iter()
        .map(to_value)
        .collect();
    Ok(json!({
        "dim": g.dim(),
        "core_dim": data.core.dim(),
        "x0": to_value(&data.x0),
        "y0": to_value(&data.y0),
        "cbar": cbar,
        "cbar_rank": rank(data.cbar.mat()),
        "cbar_char_poly": poly,
        "verified": data.verify(),
    }))
}

fn build(
    name: Option<String>,
    jordan: Option<String>,
    partition: Option<String>,
    skew: Option<PathBuf>,
    output: Option<PathBuf>,
) -> Outcome {
    let g = if let Some(n) = name {
        builtin(&n.parse::<Builtin>()?)?
    } else if let Some(j) = jordan {
        jordan_type_algebra(&j.parse::<JordanKind>()?)?
    } else if let Some(p) = partition {
        g_of_partition(&p.parse::<Partition>()?)?
    } else if let Some(path) = skew {
        double_extend_skew(&skew_from_json(&read(&path)?)?)
    } else {
        return Err(Failure::Usage("no algebra source given".into()));
    };
    let text = qla_to_json(&g);
    match output {
        Some(path) => {
            fs::write(&path, format!("{text}\n"))
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(json!({ "dim": g.dim(), "output": path.display().to_string() }))
        }
        None => Ok(serde_json::from_str(&text).expect("valid json")),
    }
}

fn enumerate(n: usize) -> Value {
    let parts = enumerate_pprime(n);
    json!({
        "n": n,
        "count": parts.len(),
        "partitions": parts.iter().map(|d| d.parts().to_vec()).collect::<Vec<_>>(),
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { file } => Ok(check(&load(&file)?)),
        Command::Dup { file } => dup(&load(&file)?),
        Command::Invariant { file } => invariant(&file),
        Command::Qdim { file } => qdim(&load(&file)?),
        Command::Extract { file } => extract(&load(&file)?),
        Command::Iso { a, b } => Ok(to_value(&decide_iso(&load(&a)?, &load(&b)?)?)),
        Command::Build {
            name,
            jordan,
            partition,
            skew,
            output,
        } => build(name, jordan, partition, skew, output),
        Command::EnumeratePartitions { n } => Ok(enumerate(n)),
    }
}

fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = Failure::Usage(e.kind().to_string());
            emit(&f.report().to_string());
            eprint!("{e}");
            return ExitCode::from(f.code());
        }
    };
    match run(cli.command) {
        Ok(v) => {
            emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(f) => {
            emit(&f.report().to_string());
            ExitCode::from(f.code())
        }
    }
}
