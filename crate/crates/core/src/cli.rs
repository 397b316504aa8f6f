//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the input has degenerate contacts
//! (touching or overlapping edges), 2 for usage, parse and other errors.
//! Failures print one line `error[<kind>]: <message>` on stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, Algo, CorpusSpec, Family};
use crate::corrector::correctors;
use crate::error::{Error, Result};
use crate::geom::Axis;
use crate::io::{read_polygon, write_polygon, write_report, Format};
use crate::region_query::{QueryMode, RegionIndex};
use crate::scanline::{major_axis, report_scan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEGENERATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "polyscan",
    version,
    about = "Find and remove polygon self-intersections with a scan-line"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Wkt,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Wkt => Format::Wkt,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    Auto,
    X,
    Y,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Relaxed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every proper crossing.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, value_enum, default_value = "auto")]
        axis: AxisArg,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Remove every crossing by edge reversals.
    Correct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Corrector: scan, v2 or v3.
        #[arg(long, default_value = "scan")]
        oracle: String,
    },
    /// Edges crossing one edge, from the sorted order alone.
    Query {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        #[arg(long)]
        higher_only: bool,
    },
    /// Run a synthetic corpus and write CSV fits and a scatter plot.
    Bench {
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Polygons per size and seed.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "report,correct,query-strict,query-relaxed"
        )]
        algos: Vec<String>,
    },
    /// Write one synthetic polygon.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

fn out_format(path: &Path, explicit: Option<FormatArg>) -> Format {
    explicit
        .map(Format::from)
        .unwrap_or_else(|| Format::from_path(path))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Report {
            input,
            format,
            axis,
            json,
        } => {
            let poly = read_polygon(&input, format.map(Format::from))?;
            let axis = match axis {
                AxisArg::Auto => major_axis(&poly),
                AxisArg::X => Axis::X,
                AxisArg::Y => Axis::Y,
            };
            let rep = report_scan(&poly, axis)?;
            let doc = write_report(rep.axis, &rep.events, &rep.metrics, false)?;
            match json {
                Some(path) => {
                    fs::write(&path, format!("{doc}\n"))?;
                    writeln!(
                        out,
                        "n={} k={} axis={}",
                        poly.len(),
                        rep.events.len(),
                        rep.axis
                    )?;
                }
                None => writeln!(out, "{doc}")?,
            }
        }
        Command::Correct {
            input,
            output,
            format,
            oracle,
        } => {
            let poly = read_polygon(&input, format.map(Format::from))?;
            let reg = correctors();
            let fixed = reg.get(&oracle)?.correct(&poly)?;
            let fmt = Format::from_path(&output);
            fs::write(&output, write_polygon(&fixed.polygon, fmt))?;
            writeln!(out, "corrections={}", fixed.events.len())?;
        }
        Command::Query {
            input,
            edge,
            format,
            mode,
            higher_only,
        } => {
            let poly = read_polygon(&input, format.map(Format::from))?;
            if edge >= poly.len() {
                return Err(Error::IndexOutOfRange {
                    lo: edge,
                    hi: edge,
                    len: poly.len(),
                });
            }
            let mode = match mode {
                ModeArg::Strict => QueryMode::Strict,
                ModeArg::Relaxed => QueryMode::Relaxed,
            };
            let found = RegionIndex::new(&poly).query(edge, mode, higher_only);
            let list: Vec<String> = found.crossings.iter().map(usize::to_string).collect();
            writeln!(out, "{}", list.join(" "))?;
            if let Some(&j) = found.degenerate.first() {
                return Err(Error::DegenerateInput {
                    edge_i: edge.min(j),
                    edge_j: edge.max(j),
                });
            }
        }
        Command::Bench {
            family,
            sizes,
            seeds,
            out: dir,
            count,
            algos,
        } => {
            let family: Family = family.parse()?;
            let algos = algos
                .iter()
                .map(|a| a.parse())
                .collect::<Result<Vec<Algo>>>()?;
            let spec = CorpusSpec::new(family, sizes, seeds, count)?;
            let (rows, fits) = bench::run_to_dir(&spec, &algos, &dir)?;
            writeln!(out, "rows={}", rows.len())?;
            for (f, a, fit) in fits {
                writeln!(
                    out,
                    "{f} {a} constant={} exponent={} correlation={}",
                    fit.constant, fit.exponent, fit.correlation
                )?;
            }
        }
        Command::Gen {
            family,
            n,
            seed,
            output,
            format,
        } => {
            let family: Family = family.parse()?;
            let poly = bench::families().get(family.name())?.generate(n, seed)?;
            fs::write(&output, write_polygon(&poly, out_format(&output, format)))?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "error[usage]: {}", first.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(
                err,
                "error[{}]: {}",
                e.kind(),
                e.to_string().replace('\n', " ")
            );
            if let Error::DegenerateInput { edge_i, edge_j } = e {
                let _ = writeln!(out, "degenerate {edge_i} {edge_j}");
                EXIT_DEGENERATE
            } else {
                EXIT_USAGE
            }
        }
    }
}
