//! The `kirby` command line.
//!
//! Exit codes: 0 when the requested verification or certification succeeds
//! (or a query answers), 1 when it fails, 2 on usage, IO, or schema errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::family::{self, FamilyParams};
use crate::homology::{determinant, first_homology, json_int};
use crate::presentation::SurgeryPresentation;
use crate::script::{verify_script, MoveScript};
use crate::twobridge::{is_hyperbolic, knot_determinant, normalize};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Base,
    Final,
}

/// A family parameter pair written `N,K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamPair(pub i64, pub i64);

impl FromStr for ParamPair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, k) = s.split_once(',').ok_or_else(|| format!("expected N,K, got {s:?}"))?;
        let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
        Ok(ParamPair(parse(n)?, parse(k)?))
    }
}

#[derive(Debug, Parser)]
#[command(name = "kirby", version, about = "Surgery presentations, Kirby move scripts, and certificates")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the base or final presentation of the family link.
    Generate {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value = "final")]
        stage: Stage,
    },
    /// Print the reduction script from the family link to S³.
    Script {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Replay and check a move script.
    Verify { script: PathBuf },
    /// Certify the family properties for (n, k).
    Certify {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// First homology of the manifold a presentation describes.
    Homology { presentation: PathBuf },
    /// Schubert normal form of the 2-bridge knot S(p, q).
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    /// Whether two family links are told apart by their component classes.
    Distinct {
        #[arg(long, allow_negative_numbers = true)]
        a: ParamPair,
        #[arg(long, allow_negative_numbers = true)]
        b: ParamPair,
    },
}

/// A usage-level failure: bad input, unreadable file, schema violation.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Output {
    text: String,
    code: u8,
}

#[derive(Serialize)]
struct ClassifyOutput {
    p: i64,
    q_canonical: i64,
    hyperbolic: bool,
    determinant: i64,
}

#[derive(Serialize)]
struct DistinctOutput {
    a: FamilyParams,
    b: FamilyParams,
    distinct: bool,
}

#[derive(Serialize)]
struct HomologyOutput {
    #[serde(with = "crate::homology::json_int_vec")]
    invariant_factors: Vec<num_bigint::BigInt>,
    #[serde(with = "json_int")]
    determinant: num_bigint::BigInt,
    trivial: bool,
}

fn read_file(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn compact<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("output serializes");
    s.push('\n');
    s
}

fn presentation_table(p: &SurgeryPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "id  | knot           | slope");
    let _ = writeln!(out, "----+----------------+------");
    for c in p.components() {
        let _ = writeln!(out, "{:<4}| {:<15}| {}", c.id.to_string(), c.knot.to_string(), c.slope);
    }
    let _ = writeln!(out, "linking:");
    for row in p.linking() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
        let _ = writeln!(out, "  [{} ]", cells.join(""));
    }
    out
}

fn execute(cli: &Cli) -> Result<Output, UsageError> {
    let ok = |text: String| Output { text, code: EXIT_OK };
    let table = cli.format == Format::Table;
    match &cli.command {
        Command::Generate { n, k, stage } => {
            let params = FamilyParams::new(*n, *k)?;
            let p = match stage {
                Stage::Base => family::base_presentation(params),
                Stage::Final => family::final_presentation(params)?,
            };
            Ok(ok(if table { presentation_table(&p) } else { pretty(&p) }))
        }
        Command::Script { n, k } => {
            let script = family::reduction_script(FamilyParams::new(*n, *k)?)?;
            if table {
                let mut out = presentation_table(&script.initial);
                for (i, m) in script.moves.iter().enumerate() {
                    let _ = writeln!(out, "{:>3}. {m}", i + 1);
                }
                Ok(ok(out))
            } else {
                Ok(ok(pretty(&script)))
            }
        }
        Command::Verify { script } => {
            let script = MoveScript::from_json(&read_file(script)?)?;
            let report = verify_script(&script);
            let text = if table { report.render_table() } else { pretty(&report) };
            Ok(Output {
                text,
                code: if report.ok { EXIT_OK } else { EXIT_FAILED },
            })
        }
        Command::Certify { n, k } => {
            let cert = family::certify(FamilyParams::new(*n, *k)?)?;
            let text = if table { cert.render_table() } else { pretty(&cert) };
            Ok(Output {
                text,
                code: if cert.properties.all_hold() { EXIT_OK } else { EXIT_FAILED },
            })
        }
        Command::Homology { presentation } => {
            let p = SurgeryPresentation::from_json(&read_file(presentation)?)?;
            let h = first_homology(&p)?;
            let det = determinant(&p.generalized_relation_matrix()?)?;
            if table {
                Ok(ok(format!("H1 = {h}\ndet = {det}\n")))
            } else {
                Ok(ok(pretty(&HomologyOutput {
                    trivial: h.is_trivial(),
                    invariant_factors: h.invariant_factors,
                    determinant: det,
                })))
            }
        }
        Command::Classify { p, q } => {
            let c = normalize(*p, *q)?;
            let out = ClassifyOutput {
                p: c.p(),
                q_canonical: c.q_canonical(),
                hyperbolic: is_hyperbolic(&c),
                determinant: knot_determinant(&c),
            };
            if table {
                Ok(ok(format!(
                    "{c}  hyperbolic: {}  determinant: {}\n",
                    out.hyperbolic, out.determinant
                )))
            } else {
                Ok(ok(compact(&out)))
            }
        }
        Command::Distinct { a, b } => {
            let a = FamilyParams::new(a.0, a.1)?;
            let b = FamilyParams::new(b.0, b.1)?;
            let distinct = family::distinct_links(a, b)?;
            if table {
                Ok(ok(format!(
                    "({},{}) vs ({},{}): {}\n",
                    a.n(),
                    a.k(),
                    b.n(),
                    b.k(),
                    if distinct { "distinct" } else { "not distinguished" }
                )))
            } else {
                Ok(ok(compact(&DistinctOutput { a, b, distinct })))
            }
        }
    }
}

/// Parses `argv` (program name first), runs the subcommand, and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if out.write_all(o.text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            o.code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
