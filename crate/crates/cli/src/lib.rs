//! Command-line front end: construction, counting, enumeration,
//! verification, bounds and rendering of `k`-page drawings of `K_{m,n}`.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use clap::{Parser, Subcommand, ValueEnum};
use kpage::bounds::{consistency_scan, evaluate_all};
use kpage::coloring::{conflict_graph, export_cnf, Budget, LayoutLog, PipelineVerdict, VerifyOptions};
use kpage::constructions::{balanced_embedding, block_cyclic, blowup, riskin_drawing};
use kpage::drawings::{count_crossings, BookDrawing, CircularLayout};
use kpage::enumeration::{count_formula, enumerate_classes, MAX_ENUM_LEN};
use kpage::oracle::{brute_force_nu, OracleLimits};
use kpage::render::{render, RenderSpec};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] kpage::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(kpage::Error::Malformed(_)) => EXIT_DATA,
            CliError::Core(kpage::Error::InvalidInput(_)) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(kpage::Error::LimitExceeded(_)) => EXIT_INCONCLUSIVE,
            CliError::Core(_) => EXIT_SOFTWARE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

fn io_err(path: impl AsRef<Path>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.as_ref().display().to_string();
    move |source| CliError::Io { path, source }
}

#[derive(Parser, Debug)]
#[command(name = "kpage", version, about = "k-page book drawings of complete bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of distinct circular drawings of K_{m,n}.
    CountDrawings { m: usize, n: usize },
    /// Canonical layouts of K_{m,n}, one per rotation/reflection class.
    Enumerate {
        m: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Build a drawing and write it as JSON.
    Construct {
        #[command(subcommand)]
        family: Family,
        #[arg(short = 'o', long = "output", global = true)]
        output: Option<PathBuf>,
    },
    /// Crossing counts of a drawing file (`-` reads stdin).
    Crossings {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether every k-page drawing of K_{m,n} has a crossing.
    VerifyPagenumber {
        m: usize,
        n: usize,
        k: usize,
        /// Search nodes per layout.
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
        /// Write one DIMACS file per layout into this directory.
        #[arg(long)]
        export_cnf: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Append each per-layout result to this JSON-lines file.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Reuse finished verdicts from a JSON-lines log.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Closed-form bounds as a JSON table; `--scan` checks lower vs upper
    /// bounds for K_{k+1,1..=n}.
    Bounds {
        k: u64,
        /// `n`, or `m n`; m defaults to k + 1.
        #[arg(num_args = 1..=2, required = true)]
        sizes: Vec<u64>,
        #[arg(long)]
        scan: bool,
        /// With --scan, also build and count the blow-up drawings.
        #[arg(long)]
        drawings: bool,
    },
    /// Brute-force k-page crossing number of a tiny K_{m,n}.
    Oracle {
        m: usize,
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_pages: usize,
    },
    /// Render a drawing file as SVG.
    Render {
        file: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Balanced k-page embedding of K_{k+1, floor((k+1)^2/4)}.
    Balanced { k: usize },
    /// Balanced embedding for k pages blown up to n white vertices.
    Blowup { k: usize, n: usize },
    /// Block-cyclic k-page drawing of K_{m,n}.
    BlockCyclic { m: usize, n: usize, k: usize },
    /// One-page drawing with black vertices spread evenly.
    Riskin { m: usize, n: usize },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(file: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    if file == "-" {
        stdin.read_to_string(&mut text).map_err(io_err("<stdin>"))?;
    } else {
        text = fs::read_to_string(file).map_err(io_err(file))?;
    }
    Ok(text)
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => stdout.write_all(text.as_bytes()).map_err(io_err("<stdout>")),
    }
}

fn out(stdout: &mut dyn Write, text: impl AsRef<str>) -> Result<(), CliError> {
    writeln!(stdout, "{}", text.as_ref()).map_err(io_err("<stdout>"))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn execute(
    command: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    match command {
        Command::CountDrawings { m, n } => {
            let count = count_formula(m, n)?;
            if m + n <= 24 {
                let enumerated = enumerate_classes(m, n)?.count() as u128;
                if enumerated != count {
                    return Err(kpage::Error::Construction(format!(
                        "formula gives {count} but enumeration finds {enumerated}"
                    ))
                    .into());
                }
            }
            out(stdout, count.to_string())?;
        }
        Command::Enumerate { m, n, emit } => {
            if m + n > MAX_ENUM_LEN {
                return Err(CliError::Usage(format!("m + n must be at most {MAX_ENUM_LEN}")));
            }
            let strings: Vec<String> = enumerate_classes(m, n)?.map(|c| c.canonical).collect();
            match emit {
                Emit::Json => out(stdout, serde_json::to_string(&strings).expect("strings serialize"))?,
                Emit::Text => {
                    for s in strings {
                        out(stdout, s)?;
                    }
                }
            }
        }
        Command::Construct { family, output } => {
            let drawing = match family {
                Family::Balanced { k } => balanced_embedding(k)?,
                Family::Blowup { k, n } => blowup(&balanced_embedding(k)?, n)?,
                Family::BlockCyclic { m, n, k } => block_cyclic(m, n, k)?,
                Family::Riskin { m, n } => {
                    let r = riskin_drawing(m, n)?;
                    if !r.even {
                        let _ = writeln!(
                            stderr,
                            "note: {m} does not divide {n}; black vertices spread as evenly as possible"
                        );
                    }
                    r.drawing
                }
            };
            write_output(output.as_deref(), &(drawing.to_json() + "\n"), stdout)?;
        }
        Command::Crossings { file, json } => {
            let drawing = BookDrawing::from_json(&read_input(&file, stdin)?)?;
            let report = count_crossings(&drawing)?;
            if json {
                out(stdout, to_json(&report))?;
            } else {
                out(stdout, format!("total {}", report.total))?;
                for (p, c) in report.per_page.iter().enumerate() {
                    out(stdout, format!("page {p} {c}"))?;
                }
            }
        }
        Command::VerifyPagenumber { m, n, k, budget, export_cnf: cnf_dir, jobs, log, resume } => {
            return verify(m, n, k, budget, cnf_dir, jobs, log, resume, stdout);
        }
        Command::Bounds { k, sizes, scan, drawings } => {
            let (m, n) = match sizes.as_slice() {
                [n] => (k + 1, *n),
                [m, n] => (*m, *n),
                _ => unreachable!("clap enforces one or two sizes"),
            };
            if scan {
                let report = consistency_scan(k..=k, 1..=n, drawings)?;
                out(stdout, to_json(&report))?;
            } else {
                out(stdout, to_json(&evaluate_all(k, m, n)?))?;
            }
        }
        Command::Oracle { m, n, k, max_vertices, max_pages } => {
            let limits = OracleLimits { max_vertices, max_pages, ..OracleLimits::default() };
            out(stdout, to_json(&brute_force_nu(m, n, k, &limits)?))?;
        }
        Command::Render { file, output, labels } => {
            let drawing = BookDrawing::from_json(&read_input(&file, stdin)?)?;
            let svg = render(&drawing, &RenderSpec { show_labels: labels, ..RenderSpec::default() })?;
            write_output(Some(&output), &svg, stdout)?;
        }
    }
    Ok(EXIT_OK)
}

fn read_log(path: &Path) -> Result<Vec<LayoutLog>, CliError> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(path)(e)),
    };
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            serde_json::from_str(l).map_err(|e| kpage::Error::Malformed(format!("{}: {e}", path.display())).into())
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn verify(
    m: usize,
    n: usize,
    k: usize,
    budget: u64,
    cnf_dir: Option<PathBuf>,
    jobs: Option<usize>,
    log: Option<PathBuf>,
    resume: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    if let Some(dir) = &cnf_dir {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        for class in enumerate_classes(m, n)? {
            let layout = CircularLayout::from_bitstring(&class.canonical)?;
            let path = dir.join(format!("K{m}_{n}_k{k}_{}.cnf", class.canonical));
            fs::write(&path, export_cnf(&conflict_graph(&layout), k)).map_err(io_err(&path))?;
        }
    }
    let resume = match &resume {
        Some(path) => read_log(path)?,
        None => Vec::new(),
    };
    let on_result = match &log {
        Some(path) => {
            let file = fs::OpenOptions::new().create(true).append(true).open(path).map_err(io_err(path))?;
            let file = Arc::new(Mutex::new(file));
            let sink: kpage::coloring::LogSink = Arc::new(move |entry: &LayoutLog| {
                let line = serde_json::to_string(entry).expect("log entries serialize");
                let mut f = file.lock().expect("log file lock");
                let _ = writeln!(f, "{line}");
                let _ = f.flush();
            });
            Some(sink)
        }
        None => None,
    };
    let opts = VerifyOptions { budget: Budget::nodes(budget), jobs, resume, on_result };
    let report = kpage::coloring::verify_positive_crossing(m, n, k, &opts)?;
    out(stdout, to_json(&report))?;
    Ok(match report.verdict {
        PipelineVerdict::Proven => EXIT_OK,
        PipelineVerdict::Refuted { .. } => EXIT_REFUTED,
        PipelineVerdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    })
}
