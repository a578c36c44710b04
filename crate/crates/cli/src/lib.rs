//! Command-line front end: single queries, batch plots and table
//! reproduction.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use ziggurat::fringe::{divisors, Side};
use ziggurat::stairstep::{stairstep, StairstepConfig, StairstepProblem};
use ziggurat::{
    abaab_pieces, fringe_length, is_cyclic_rotation, max_rot, prime_pieces, sigma, verify_piece, OracleConfig,
    PositiveWord, Rational, RotationQuery,
};

pub mod output;
pub mod table;

pub use output::{fringe_series, grid, FringeSeries, ZigguratGrid};

#[derive(Debug, Parser)]
#[command(
    name = "ziggurat",
    version,
    about = "Extremal rotation numbers and fringe lengths of positive words"
)]
pub struct Cli {
    /// Worker threads for batch commands (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximal rotation number R(w; r, s).
    RotMax {
        /// Positive word over {a, b}, e.g. abaab.
        word: PositiveWord,
        /// Rotation number of a.
        r: Rational,
        /// Rotation number of b.
        s: Rational,
    },
    /// Least t with R(w; p/q, t) >= c/d.
    Stairstep {
        /// Positive word over {a, b}, e.g. abaab.
        word: PositiveWord,
        /// Rotation number of a, as p/q.
        pq: Rational,
        /// Target rotation number, as c/d.
        cd: Rational,
        /// Bound window lengths by q·β − 1 (valid on fringe targets only).
        #[arg(long)]
        fringe_caps: bool,
        /// Solve every composition instead of branch and bound.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Fringe length at p/q.
    Fringe {
        /// Positive word over {a, b}, e.g. abaab.
        word: PositiveWord,
        /// Rotation number of a, as p/q.
        pq: Rational,
        #[arg(long, default_value = "left")]
        side: Side,
    },
    /// σ(g) for one divisor g of h_a, or for all of them.
    Sigma {
        /// Positive word over {a, b}, e.g. abaab.
        word: PositiveWord,
        /// A divisor of h_a.
        #[arg(long, conflicts_with = "all_divisors")]
        g: Option<u64>,
        /// Every divisor of h_a (the default).
        #[arg(long)]
        all_divisors: bool,
    },
    /// σ(g) for the seven h_a = 6 words, checked against the printed table.
    Table1,
    /// Fringe lengths for every reduced p/q with q <= max-q.
    FringePlot {
        /// Positive word over {a, b}, e.g. abaab.
        word: PositiveWord,
        /// Largest denominator to include.
        #[arg(long)]
        max_q: u64,
        #[arg(long, default_value = "left")]
        side: Side,
        #[arg(long, value_enum, default_value_t = PlotFormat::Csv)]
        format: PlotFormat,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// R(w; r, s) over the grid of reduced fractions with bounded denominators.
    Ziggurat {
        /// Positive word over {a, b}, e.g. abaab.
        word: PositiveWord,
        /// Largest denominator of r and s.
        #[arg(long)]
        max_denom: u64,
        #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
        format: GridFormat,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify the projective self-similarities of the left fringe.
    SelfsimCheck {
        /// Positive word over {a, b}, e.g. abaab.
        word: PositiveWord,
        /// Largest denominator to include.
        #[arg(long)]
        max_q: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridFormat {
    Csv,
    Pgm,
    Svg,
}

#[derive(Debug, Error)]
enum Failure {
    #[error(transparent)]
    Domain(#[from] ziggurat::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl Failure {
    fn name(&self) -> &'static str {
        match self {
            Failure::Domain(e) => e.name(),
            Failure::Io(_) => "IoFailure",
            Failure::ThreadPool(_) => "ThreadPoolFailure",
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns 0 on success, 1 on a domain or I/O error, 2 on a usage error.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()?;
    // Commands render into a buffer so the worker pool never touches `out`.
    let mut buf = Vec::new();
    pool.install(|| dispatch(&cli.command, &mut buf))?;
    out.write_all(&buf)?;
    Ok(())
}

fn emit(text: &str, destination: Option<&PathBuf>, out: &mut Vec<u8>) -> Result<(), Failure> {
    match destination {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(command: &Command, out: &mut Vec<u8>) -> Result<(), Failure> {
    match command {
        Command::RotMax { word, r, s } => {
            let value = max_rot(
                &RotationQuery::new(word.clone(), r.clone(), s.clone()),
                &OracleConfig::default(),
            )?;
            writeln!(out, "{value}")?;
        }
        Command::Stairstep {
            word,
            pq,
            cd,
            fringe_caps,
            exhaustive,
        } => {
            let config = StairstepConfig {
                fringe_caps: *fringe_caps,
                exhaustive: *exhaustive,
                ..Default::default()
            };
            let outcome = stairstep(&StairstepProblem::new(word, pq, cd)?, &config)?;
            writeln!(out, "{}", outcome.u)?;
        }
        Command::Fringe { word, pq, side } => {
            writeln!(out, "{}", fringe_length(word, pq, *side)?)?;
        }
        Command::Sigma {
            word,
            g,
            all_divisors: _,
        } => match g {
            Some(g) => writeln!(out, "{}", sigma(word, *g)?)?,
            None => {
                for g in divisors(word.letter_counts().0) {
                    writeln!(out, "g={g} sigma={}", sigma(word, g)?)?;
                }
            }
        },
        Command::Table1 => {
            out.write_all(table::render(&table::compute()?).as_bytes())?;
        }
        Command::FringePlot {
            word,
            max_q,
            side,
            format,
            output,
        } => {
            let series = fringe_series(word, *max_q, *side)?;
            let text = match format {
                PlotFormat::Csv => series.to_csv(),
                PlotFormat::Svg => series.to_svg(),
            };
            emit(&text, output.as_ref(), out)?;
        }
        Command::Ziggurat {
            word,
            max_denom,
            format,
            output,
        } => {
            let g = grid(word, *max_denom, &OracleConfig::default())?;
            let text = match format {
                GridFormat::Csv => g.to_csv(),
                GridFormat::Pgm => g.to_pgm(),
                GridFormat::Svg => g.to_svg(),
            };
            emit(&text, output.as_ref(), out)?;
        }
        Command::SelfsimCheck { word, max_q } => selfsim_check(word, *max_q, out)?,
    }
    Ok(())
}

/// Checks the abaab decomposition when `word` is a rotation of `abaab`, and
/// the prime decomposition when `h_a` is prime.
fn selfsim_check(word: &PositiveWord, max_q: u64, out: &mut Vec<u8>) -> Result<(), Failure> {
    use rayon::prelude::*;

    let mut pieces = Vec::new();
    let abaab: PositiveWord = "abaab".parse()?;
    if is_cyclic_rotation(word, &abaab) {
        pieces.extend(abaab_pieces().into_iter().map(|p| ("abaab", p)));
    }
    let h_a = word.letter_counts().0;
    match prime_pieces(h_a) {
        Ok(ps) => pieces.extend(ps.into_iter().map(|p| ("prime", p))),
        Err(e) if pieces.is_empty() => return Err(e.into()),
        Err(_) => {}
    }
    let reports = pieces
        .par_iter()
        .map(|(family, piece)| verify_piece(word, piece, max_q).map(|r| (*family, r)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut all = true;
    for (family, report) in &reports {
        let piece = &report.piece;
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        all &= report.passed();
        write!(
            out,
            "{verdict} {family} {} {} -> {}: {} points, {} failed, gcd {}, cancellation {}",
            piece.name,
            piece.source,
            piece.target,
            report.checked(),
            report.failures(),
            if report.gcd_preserved() { "ok" } else { "broken" },
            if report.coprime() { "ok" } else { "broken" },
        )?;
        if let Some(bad) = report.first_counterexample() {
            let expected = bad
                .expected
                .as_ref()
                .map_or_else(|| "outside target".to_string(), Rational::to_string);
            write!(
                out,
                "; first counterexample x={} fr={} image=({}, {}) fr(image)={}",
                bad.x, bad.y, bad.x_image, bad.y_image, expected
            )?;
        }
        writeln!(out)?;
    }
    writeln!(
        out,
        "{}",
        if all {
            "all pieces verified"
        } else {
            "some pieces failed"
        }
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ziggurat").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn single_queries() {
        assert_eq!(run(&["fringe", "abaab", "1/3"]), (0, "1/2\n".into(), String::new()));
        assert_eq!(run(&["fringe", "abaab", "1/2", "--side", "right"]).1, "1/3\n");
        assert_eq!(run(&["sigma", "aaabaaabbbb", "--g", "2"]).1, "5/2\n");
        assert_eq!(run(&["rot-max", "abaab", "1/3", "1/2"]).1, "3/1\n");
        assert_eq!(run(&["stairstep", "abaab", "1/2", "7/2"]).1, "1/2\n");
        assert_eq!(
            run(&["--jobs", "2", "stairstep", "abaab", "1/3", "3", "--fringe-caps"]).1,
            "1/2\n"
        );
    }

    #[test]
    fn sigma_all_divisors() {
        let (code, out, _) = run(&["sigma", "abbaabaaabbbb", "--all-divisors"]);
        assert_eq!(code, 0);
        assert_eq!(out, "g=1 sigma=4/1\ng=2 sigma=3/1\ng=3 sigma=2/1\ng=6 sigma=7/6\n");
        assert_eq!(run(&["sigma", "abbaabaaabbbb"]).1, out);
    }

    #[test]
    fn usage_errors_exit_two() {
        for args in [
            &["fringe", "xyz", "1/2"][..],
            &["fringe", "abaab", "1/0"],
            &["fringe", "abaab", "half"],
            &["fringe", "abaab", "1/2", "--side", "up"],
            &["sigma", "abaab", "--g", "3", "--all-divisors"],
            &["no-such-command"],
            &[],
        ] {
            let (code, out, err) = run(args);
            assert_eq!(code, 2, "{args:?}");
            assert!(out.is_empty());
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn domain_errors_exit_one() {
        let cases = [
            (&["sigma", "abaab", "--g", "2"][..], "NotADivisor"),
            (&["fringe", "aaaa", "1/2"], "PowerOfSingleLetter"),
            (&["fringe", "abaab", "3/2"], "OutOfRange"),
            (&["stairstep", "abaab", "1/2", "1/2"], "NoFeasiblePartition"),
            (&["selfsim-check", "aaaabb", "--max-q", "5"], "NotPrime"),
            (&["rot-max", "ab", "1/40", "1/40"], "EnumerationCapExceeded"),
        ];
        for (args, name) in cases {
            let (code, out, err) = run(args);
            assert_eq!(code, 1, "{args:?}");
            assert!(out.is_empty());
            assert!(err.starts_with(&format!("error: {name}: ")), "{args:?}: {err}");
        }
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, err) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("fringe-plot"));
        assert!(err.is_empty());
    }

    #[test]
    fn output_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fr.csv");
        let (code, out, _) = run(&[
            "fringe-plot",
            "abaab",
            "--max-q",
            "3",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            "p,q,fr_num,fr_den\n0,1,1,1\n1,3,1,2\n1,2,1,2\n2,3,1,2\n"
        );
        let missing = dir.path().join("no/such/dir.csv");
        let (code, _, err) = run(&[
            "fringe-plot",
            "abaab",
            "--max-q",
            "3",
            "--output",
            missing.to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: IoFailure: "));
    }

    #[test]
    fn selfsim_report() {
        let (code, out, _) = run(&["selfsim-check", "abaab", "--max-q", "20"]);
        assert_eq!(code, 0);
        // Six abaab pieces plus three for h_a = 3.
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 9);
        assert!(out.ends_with("all pieces verified\n"));
        let (_, out, _) = run(&["selfsim-check", "ababb", "--max-q", "10"]);
        assert!(out
            .lines()
            .any(|l| l.starts_with("FAIL prime half") && l.contains("first counterexample")));
    }
}
