//! Command-line front end for `specmon`.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive it
//! with in-memory streams.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use specmon::analysis::analyze;
use specmon::diophantine::{parse_equations, solve_bounded};
use specmon::generate::{random_overlap_free, sample, OverlapFreeShape, SAMPLES};
use specmon::presentation::parse_presentation;
use specmon::rewrite::{critical_pairs, is_confluent, is_overlap_free, normal_form_traced};
use specmon::units::units_trivial;
use specmon::wp_language::{to_cnf, word_problem_grammar, WpRecognizers};
use specmon::{Error, Limits, SpecialSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "specmon",
    version,
    about = "Analyze special monoid presentations"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Leave out timing fields so output is byte-identical across runs.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Cap for every exhaustive search.
    #[arg(long, global = true, env = "SPECMON_BUDGET", value_name = "N")]
    budget: Option<u64>,

    /// Seed for generated systems.
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    seed: u64,

    /// Exit with status 1 when the system has overlaps.
    #[arg(long, global = true)]
    require_overlap_free: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: overlaps, confluence, units, grammar size.
    Analyze { file: PathBuf },
    /// Normal form of a word.
    Nf { file: PathBuf, word: String },
    /// Overlaps and their critical pairs.
    Pairs { file: PathBuf },
    /// Triviality of the group of units.
    Units { file: PathBuf },
    /// Grammar of the words equal to 1.
    Grammar {
        file: PathBuf,
        /// Convert to Chomsky normal form.
        #[arg(long)]
        cnf: bool,
    },
    /// Whether a word equals 1, and whether it is a prefix or suffix of such a word.
    Member { file: PathBuf, word: String },
    /// Bounded search for solutions of word equations.
    Solve {
        file: PathBuf,
        equations: PathBuf,
        /// Maximum length of each variable's value.
        #[arg(long, default_value_t = 3, value_name = "N")]
        max_len: usize,
    },
    /// Print a built-in presentation, or all of them without a name.
    Sample {
        /// One of bicyclic, z2, z, random.
        name: Option<String>,
        /// Rule count for `random` (drawn from 2..=8 by default).
        #[arg(long, value_name = "N")]
        rules: Option<usize>,
        /// Maximum interior length of `random` relators.
        #[arg(long, default_value_t = 6, value_name = "N")]
        max_len: usize,
    },
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn from_error(context: &str, e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: format!("{context}: {e}"),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

struct Report {
    body: String,
    /// Set when `--require-overlap-free` applies and fails.
    negative: bool,
}

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
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(report) => {
            let _ = out.write_all(report.body.as_bytes());
            if report.negative {
                let _ = writeln!(err, "specmon: system is not overlap-free");
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            }
        }
        Err(f) => {
            let _ = writeln!(err, "specmon: {}", f.message);
            f.code
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    cli.budget.map(Limits::uniform).unwrap_or_default()
}

fn load_system(path: &Path) -> std::result::Result<SpecialSystem, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| Failure::from_error(&path.display().to_string(), e))
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Outcome {
    let limits = limits(cli);
    let (sys, body) = match &cli.command {
        Command::Analyze { file } => {
            let sys = load_system(file)?;
            let report = analyze(&sys, &limits).map_err(|e| Failure::from_error("analyze", e))?;
            let timings = !cli.deterministic;
            let body = if cli.json {
                render_json(&report.to_json(&sys, timings))
            } else {
                report.to_text(&sys, timings)
            };
            (sys, body)
        }
        Command::Nf { file, word } => {
            let sys = load_system(file)?;
            let w = sys
                .parse_word(word)
                .map_err(|e| Failure::from_error("word argument", e))?;
            let (nf, trace) = normal_form_traced(&sys, &w);
            let body = if cli.json {
                render_json(&json!({
                    "word": w.to_json(),
                    "normal_form": nf.to_json(),
                    "steps": trace.iter().map(|(p, r)| json!([p, r])).collect::<Vec<_>>(),
                }))
            } else {
                format!("{}\n", sys.render(&nf))
            };
            (sys, body)
        }
        Command::Pairs { file } => {
            let sys = load_system(file)?;
            let pairs = critical_pairs(&sys);
            let confluent =
                is_confluent(&sys, &limits).map_err(|e| Failure::from_error("confluence", e))?;
            let body = if cli.json {
                render_json(&json!({
                    "overlap_free": pairs.is_empty(),
                    "confluent": confluent,
                    "critical_pairs": pairs.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                }))
            } else {
                let mut s = String::new();
                for p in &pairs {
                    s.push_str(&format!(
                        "{} {} {} {}: {} -> {} | {}\n",
                        p.source.kind,
                        p.source.left_rule,
                        p.source.right_rule,
                        p.source.offset,
                        sys.render(&p.source.word),
                        sys.render(&p.left_reduct),
                        sys.render(&p.right_reduct),
                    ));
                }
                s.push_str(&format!(
                    "{} critical pairs; confluent: {confluent}\n",
                    pairs.len()
                ));
                s
            };
            (sys, body)
        }
        Command::Units { file } => {
            let sys = load_system(file)?;
            let report =
                units_trivial(&sys, &limits).map_err(|e| Failure::from_error("units", e))?;
            let body = if cli.json {
                render_json(&report.to_json())
            } else {
                report.to_text(&sys)
            };
            (sys, body)
        }
        Command::Grammar { file, cnf } => {
            let sys = load_system(file)?;
            let wp = word_problem_grammar(&sys, &limits)
                .map_err(|e| Failure::from_error("grammar", e))?;
            let g = if *cnf {
                to_cnf(&wp.grammar)
            } else {
                wp.grammar.clone()
            };
            let body = if cli.json {
                render_json(&json!({
                    "grammar": g.to_json(),
                    "cnf": cnf,
                    "warning": wp.warning(),
                }))
            } else {
                if let Some(w) = wp.warning() {
                    let _ = writeln!(err, "warning: {w}");
                }
                g.to_text()
            };
            (sys, body)
        }
        Command::Member { file, word } => {
            let sys = load_system(file)?;
            let w = sys
                .parse_word(word)
                .map_err(|e| Failure::from_error("word argument", e))?;
            let confluent =
                is_confluent(&sys, &limits).map_err(|e| Failure::from_error("confluence", e))?;
            let rec = WpRecognizers::new(&sys);
            let (m, p, s) = (
                rec.language.accepts(&w),
                rec.prefixes.accepts(&w),
                rec.suffixes.accepts(&w),
            );
            let warning = (!confluent).then_some(
                "system is not confluent: membership means the word reduces to the empty word",
            );
            let body = if cli.json {
                render_json(&json!({
                    "word": w.to_json(),
                    "member": m,
                    "prefix": p,
                    "suffix": s,
                    "warning": warning,
                }))
            } else {
                if let Some(w) = warning {
                    let _ = writeln!(err, "warning: {w}");
                }
                format!("member: {m}\nprefix: {p}\nsuffix: {s}\n")
            };
            (sys, body)
        }
        Command::Solve {
            file,
            equations,
            max_len,
        } => {
            let sys = load_system(file)?;
            let text = std::fs::read_to_string(equations)
                .map_err(|e| Failure::input(format!("{}: {e}", equations.display())))?;
            let eqs = parse_equations(&sys, &text)
                .map_err(|e| Failure::from_error(&equations.display().to_string(), e))?;
            let outcome = solve_bounded(&sys, &eqs, *max_len, &limits)
                .map_err(|e| Failure::from_error("solve", e))?;
            let body = if cli.json {
                render_json(&outcome.to_json(&sys))
            } else {
                outcome.to_text(&sys)
            };
            (sys, body)
        }
        Command::Sample {
            name,
            rules,
            max_len,
        } => return sample_command(cli, name.as_deref(), *rules, *max_len),
    };
    Ok(Report {
        negative: cli.require_overlap_free && !is_overlap_free(&sys),
        body,
    })
}

fn sample_command(cli: &Cli, name: Option<&str>, rules: Option<usize>, max_len: usize) -> Outcome {
    let systems: Vec<(String, SpecialSystem)> = match name {
        None => SAMPLES
            .iter()
            .map(|(n, _)| (n.to_string(), sample(n).expect("listed sample")))
            .collect(),
        Some("random") => {
            let shape = OverlapFreeShape {
                rules: rules.map_or(2..=8, |r| r..=r),
                interior: 1..=max_len.max(1),
            };
            let sys = random_overlap_free(cli.seed, &shape)
                .map_err(|e| Failure::from_error("sample random", e))?;
            vec![(format!("random seed {}", cli.seed), sys)]
        }
        Some(n) => {
            let sys = sample(n).ok_or_else(|| {
                let names: Vec<&str> = SAMPLES.iter().map(|(n, _)| *n).collect();
                Failure::input(format!(
                    "unknown sample `{n}` (expected one of {}, random)",
                    names.join(", ")
                ))
            })?;
            vec![(n.to_string(), sys)]
        }
    };
    let body = if cli.json {
        let v: Vec<Value> = systems
            .iter()
            .map(|(n, s)| json!({"name": n, "system": s.to_json()}))
            .collect();
        render_json(&if v.len() == 1 {
            v[0].clone()
        } else {
            Value::Array(v)
        })
    } else {
        systems
            .iter()
            .map(|(n, s)| format!("# {n}\n{}", s.to_text()))
            .collect::<Vec<_>>()
            .join("\n")
    };
    Ok(Report {
        negative: cli.require_overlap_free && systems.iter().any(|(_, s)| !is_overlap_free(s)),
        body,
    })
}
