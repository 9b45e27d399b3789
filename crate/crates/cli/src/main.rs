//! `sombor`: greedy trees, Sombor indices, edge-switch descent and exhaustive verification.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use greedy_sombor::scalar::format_significant;
use greedy_sombor::{
    build_greedy, count_trees, descend, enumerate_trees, parse_degree_sequence, pseudo_sombor,
    random_tree, score_assignment, sombor, sombor_spectrum, verify_theorem, DegreeSequence, Error,
    LabeledTree, Report, DEFAULT_CAP, DEFAULT_TOLERANCE,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "sombor", version, about = "Greedy trees and the Sombor index")]
struct Cli {
    /// Significant digits for printed reals.
    #[arg(long, global = true, default_value_t = 10)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the greedy tree for a degree sequence.
    Greedy {
        #[arg(short = 'd', long = "degrees")]
        degrees: String,
        #[arg(long, value_enum, default_value_t = TreeFormat::Edges)]
        format: TreeFormat,
        /// Add degree and level annotations to DOT output.
        #[arg(long)]
        annotate: bool,
    },
    /// Sombor index of a tree file, and the pseudo-Sombor index when `--q` is given.
    Index {
        tree: PathBuf,
        /// `auto` for 1/(2n), or a positive real.
        #[arg(long)]
        q: Option<QArg>,
    },
    /// Exhaustively check that the greedy tree minimizes the Sombor index.
    Verify {
        #[arg(
            short = 'd',
            long = "degrees",
            conflicts_with = "sweep",
            required_unless_present = "sweep"
        )]
        degrees: Option<String>,
        /// Every realizable sequence with 2 <= n <= max-n.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Run the edge-switch descent from a tree to the greedy tree.
    #[command(group = ArgGroup::new("start").required(true).args(["tree", "random"]))]
    Descend {
        /// Tree file (edge list or JSON).
        tree: Option<PathBuf>,
        /// Start from a seeded uniformly random tree with degree sequence `-d`.
        #[arg(long, requires = "degrees")]
        random: bool,
        #[arg(short = 'd', long = "degrees", requires = "random")]
        degrees: Option<String>,
        #[arg(long)]
        q: Option<QArg>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the trace as JSON to this path.
        #[arg(long)]
        trace_json: Option<PathBuf>,
        /// Format for the terminal tree.
        #[arg(long, value_enum, default_value_t = TreeFormat::Edges)]
        format: TreeFormat,
    },
    /// Count the trees with a degree sequence and list their Sombor values.
    Enumerate {
        #[arg(short = 'd', long = "degrees")]
        degrees: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Also print every tree, one JSON document per line.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Edges,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy)]
enum QArg {
    Auto,
    Value(f64),
}

impl std::str::FromStr for QArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(QArg::Auto);
        }
        s.parse::<f64>()
            .map(QArg::Value)
            .map_err(|_| format!("expected `auto` or a real number, got {s:?}"))
    }
}

impl QArg {
    fn resolve(self, n: usize) -> f64 {
        match self {
            QArg::Auto => 1.0 / (2.0 * n as f64),
            QArg::Value(q) => q,
        }
    }
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotRealizable(_) => 3,
            Error::CapExceeded { .. } | Error::CountOverflow => 4,
            Error::NoDecrease { .. } | Error::TerminalNotGreedy { .. } | Error::Invariant(_) => 5,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

type CmdResult = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let digits = cli.digits;
    match cli.command {
        Command::Greedy {
            degrees,
            format,
            annotate,
        } => {
            let d = parse_degrees(&degrees)?;
            let tree = build_greedy(&d)?;
            Ok((render_tree(&tree, format, annotate), 0))
        }
        Command::Index { tree, q } => cmd_index(&read_tree(&tree)?, q, digits),
        Command::Verify {
            degrees,
            sweep,
            max_n,
            tolerance,
            cap,
            format,
        } => {
            if tolerance.is_nan() || tolerance <= 0.0 {
                return Err(input_error(format!(
                    "tolerance must be positive, got {tolerance}"
                )));
            }
            let sequences = match degrees {
                Some(text) if !sweep => vec![parse_degrees(&text)?],
                _ => (2..=max_n)
                    .flat_map(DegreeSequence::all_realizable)
                    .collect(),
            };
            cmd_verify(
                &sequences,
                sweep.then_some(max_n),
                tolerance,
                cap,
                format,
                digits,
            )
        }
        Command::Descend {
            tree,
            degrees,
            q,
            seed,
            trace_json,
            format,
            ..
        } => {
            let tree = match (tree, degrees) {
                (Some(path), _) => read_tree(&path)?,
                (None, Some(text)) => {
                    let d = parse_degrees(&text)?;
                    random_tree(&d, &mut ChaCha8Rng::seed_from_u64(seed))?
                }
                (None, None) => unreachable!("clap requires a start"),
            };
            cmd_descend(&tree, q, trace_json, format, digits)
        }
        Command::Enumerate {
            degrees,
            tolerance,
            cap,
            list,
        } => {
            let d = parse_degrees(&degrees)?;
            cmd_enumerate(&d, tolerance, cap, list, digits)
        }
    }
}

fn parse_degrees(text: &str) -> Result<DegreeSequence, Failure> {
    let parsed = parse_degree_sequence(text)?;
    if !parsed.was_sorted {
        eprintln!("note: degree sequence sorted to {}", parsed.sequence);
    }
    parsed.sequence.ensure_realizable()?;
    Ok(parsed.sequence)
}

fn read_tree(path: &PathBuf) -> Result<LabeledTree, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    Ok(LabeledTree::from_text(&text)?)
}

fn render_tree(tree: &LabeledTree, format: TreeFormat, annotate: bool) -> String {
    match format {
        TreeFormat::Edges => tree.to_edge_list(),
        TreeFormat::Json => tree.to_json() + "\n",
        TreeFormat::Dot => tree.to_dot(annotate),
    }
}

fn cmd_index(tree: &LabeledTree, q: Option<QArg>, digits: usize) -> CmdResult {
    let sig = |x: f64| format_significant(x, digits);
    let mut out = String::new();
    let _ = writeln!(out, "n {}", tree.n());
    let _ = writeln!(out, "SO {}", sig(sombor::<f64>(tree)));
    if let Some(q) = q {
        let scores = score_assignment(tree, q.resolve(tree.n()))?;
        if scores.warning() {
            eprintln!("warning: q exceeds 1/(2n); score monotonicity is not guaranteed");
        }
        let _ = writeln!(out, "q {}", sig(scores.q()));
        let _ = writeln!(out, "pSO {}", sig(pseudo_sombor(tree, &scores)?));
        let _ = writeln!(out, "vertex degree score");
        for u in tree.vertices() {
            let _ = writeln!(
                out,
                "{u} {} {}",
                tree.neighbors(u).len(),
                sig(scores.score(u))
            );
        }
    }
    Ok((out, 0))
}

#[derive(Serialize)]
struct SweepSummary {
    sequences: usize,
    theorem_holds: usize,
    all_checks_hold: usize,
    max_n: Option<usize>,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    reports: &'a [Report],
    summary: SweepSummary,
}

fn cmd_verify(
    sequences: &[DegreeSequence],
    max_n: Option<usize>,
    tolerance: f64,
    cap: u128,
    format: ReportFormat,
    digits: usize,
) -> CmdResult {
    let reports: Vec<Report> = sequences
        .par_iter()
        .map(|d| verify_theorem::<f64>(d, tolerance, cap))
        .collect::<Result<_, _>>()?;
    let summary = SweepSummary {
        sequences: reports.len(),
        theorem_holds: reports.iter().filter(|r| r.theorem_holds).count(),
        all_checks_hold: reports.iter().filter(|r| r.all_hold()).count(),
        max_n,
    };
    let code = if summary.theorem_holds == summary.sequences {
        0
    } else {
        1
    };
    let out = match format {
        ReportFormat::Json => {
            let doc = SweepJson {
                reports: &reports,
                summary,
            };
            serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
        }
        ReportFormat::Text => {
            let mut out = Report::table_header() + "\n";
            for r in &reports {
                out += &r.table_row(digits);
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "summary: {} sequences, theorem holds for {}, all checks hold for {}",
                summary.sequences, summary.theorem_holds, summary.all_checks_hold
            );
            out
        }
    };
    Ok((out, code))
}

fn cmd_descend(
    tree: &LabeledTree,
    q: Option<QArg>,
    trace_json: Option<PathBuf>,
    format: TreeFormat,
    digits: usize,
) -> CmdResult {
    let sig = |x: f64| format_significant(x, digits);
    let q = q.unwrap_or(QArg::Auto).resolve(tree.n());
    let (terminal, trace) = descend(tree, q)?;
    if let Some(path) = trace_json {
        fs::write(&path, trace.to_json() + "\n")
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut out = String::new();
    let _ = writeln!(out, "start {}", tree.to_json());
    let _ = writeln!(out, "q {}", sig(q));
    for (i, s) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "step {} {} switch ({},{},{},{}) pSO {} -> {} SO {} -> {}",
            i + 1,
            s.kind.as_str(),
            s.u,
            s.v,
            s.w,
            s.t,
            sig(s.pso_before),
            sig(s.pso_after),
            sig(s.so_before),
            sig(s.so_after)
        );
    }
    let _ = writeln!(out, "steps {}", trace.steps.len());
    let _ = writeln!(out, "SO {}", sig(sombor::<f64>(&terminal)));
    let _ = writeln!(out, "terminal_is_greedy true");
    let _ = writeln!(out, "terminal");
    out += &render_tree(&terminal, format, false);
    Ok((out, 0))
}

fn cmd_enumerate(
    d: &DegreeSequence,
    tolerance: f64,
    cap: u128,
    list: bool,
    digits: usize,
) -> CmdResult {
    let count = count_trees(d)?;
    if count > cap {
        return Err(Error::CapExceeded { count, cap }.into());
    }
    let spectrum = sombor_spectrum::<f64>(d, tolerance)?;
    let mut out = String::new();
    let _ = writeln!(out, "degrees {d}");
    let _ = writeln!(out, "trees {count}");
    let _ = writeln!(out, "distinct {}", spectrum.len());
    for (v, m) in spectrum.values().iter().zip(spectrum.multiplicities()) {
        let _ = writeln!(out, "value {} x{m}", format_significant(*v, digits));
    }
    if list {
        for t in enumerate_trees(d)? {
            out += &t.to_json();
            out.push('\n');
        }
    }
    Ok((out, 0))
}
