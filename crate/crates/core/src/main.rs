use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sl2_tilting::charring::{chi, weyl_expand};
use sl2_tilting::decide::{classify, is_tilting_explicit, is_tilting_recursive, necessary_not_tilting};
use sl2_tilting::grid::{GridFormat, GridSpec};
use sl2_tilting::selftest::SelfTest;
use sl2_tilting::tiltchar::{Greedy, TiltingCharacters};
use sl2_tilting::{Error, LaurentChar, Prime};

const TILTING: u8 = 0;
const NOT_TILTING: u8 = 1;
const USAGE: u8 = 2;
const INCONSISTENT: u8 = 3;

/// Decide when ∇(r) ⊗ Δ(s) is a tilting module for SL2 in characteristic p.
#[derive(Parser)]
#[command(name = "sl2-tilting", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a single pair (exit 0 tilting, 1 not tilting).
    Decide {
        #[arg(short, long)]
        p: Prime,
        #[arg(short, long)]
        r: u64,
        #[arg(short, long)]
        s: u64,
        #[arg(long, value_enum, default_value_t = Method::Explicit)]
        method: Method,
        /// Print the derivation trace.
        #[arg(long)]
        trace: bool,
    },
    /// Decompose χ(r)·χ(s) into indecomposable tilting characters.
    Decompose {
        #[arg(short, long)]
        p: Prime,
        #[arg(short, long)]
        r: u64,
        #[arg(short, long)]
        s: u64,
    },
    /// Render the tilting grid for 0 <= r, s <= max.
    Grid {
        #[arg(short, long)]
        p: Prime,
        #[arg(long, default_value_t = 26, value_parser = clap::value_parser!(u64).range(0..=4096))]
        max: u64,
        #[arg(long, default_value = "tsv")]
        format: GridFormat,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every invariant sweep.
    Selftest {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        p_list: Vec<Prime>,
        #[arg(long, default_value_t = 100)]
        max: u64,
    },
    /// Show a character: "chi R", "prod R S" or "tilt M".
    Char {
        #[arg(short, long)]
        p: Prime,
        expr: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Explicit,
    Recursive,
    Both,
}

fn verdict_word(tilting: bool) -> &'static str {
    if tilting {
        "TILTING"
    } else {
        "NOT TILTING"
    }
}

fn verdict_code(tilting: bool) -> u8 {
    if tilting {
        TILTING
    } else {
        NOT_TILTING
    }
}

fn signed(w: u64) -> Result<i64, Error> {
    i64::try_from(w).map_err(|_| Error::InvalidWeight(i64::MAX))
}

fn decide(p: Prime, r: u64, s: u64, method: Method, trace: bool, out: &mut impl Write) -> Result<u8, Error> {
    let explicit = matches!(method, Method::Explicit | Method::Both).then(|| is_tilting_explicit(p, r, s));
    let recursive = match method {
        Method::Recursive | Method::Both => Some(is_tilting_recursive(p, signed(r)?, signed(s)?)?),
        Method::Explicit => None,
    };
    let verdicts: Vec<(&str, _)> = [("explicit", explicit), ("recursive", recursive)]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name, v)))
        .collect();

    let mut answers = verdicts.iter().map(|(_, v)| v.tilting);
    let first = answers.next().expect("at least one method");
    if answers.any(|t| t != first) {
        let _ = writeln!(out, "DISAGREEMENT");
        for (name, v) in &verdicts {
            let _ = writeln!(out, "{name}: {}", verdict_word(v.tilting));
        }
        return Ok(INCONSISTENT);
    }
    let _ = writeln!(out, "{}", verdict_word(first));
    for (name, v) in &verdicts {
        v.replay(p)?;
        if verdicts.len() > 1 {
            let _ = writeln!(out, "{name}: {}", verdict_word(v.tilting));
        }
        if trace {
            let _ = writeln!(out, "{name} trace:");
            let _ = write!(out, "{v}");
        }
    }
    Ok(verdict_code(first))
}

fn decompose(p: Prime, r: u64, s: u64, out: &mut impl Write) -> Result<u8, Error> {
    if !is_tilting_explicit(p, r, s).tilting {
        let _ = writeln!(out, "NOT TILTING");
        if necessary_not_tilting(p, r, s) {
            let c = classify(p, r, s);
            let _ = writeln!(
                out,
                "necessary condition fails: r ≡ {} and s ≡ {} (mod {p}), neither is {} and no band {{np-1, ..., (n+1)p-1}} contains both",
                c.r0,
                c.s0,
                p.get() - 1
            );
        }
        return Ok(NOT_TILTING);
    }
    let product = chi(signed(r)?)?.checked_mul(&chi(signed(s)?)?)?;
    let mut table = TiltingCharacters::new(p);
    match table.greedy_decompose(&product)? {
        Greedy::Decomposed(d) => {
            let dim = table.decomposition_dimension(&d)?;
            if table.reconstruct(&d)? != product || dim != product.dimension() {
                return Err(Error::Inconsistency(format!("decomposition {d} does not reconstruct χ({r})χ({s})")));
            }
            let _ = writeln!(out, "{}", d.to_json());
            let _ = writeln!(out, "dim {dim} = {} x {}", r + 1, s + 1);
            Ok(TILTING)
        }
        Greedy::Failed { weight, .. } => Err(Error::Inconsistency(format!(
            "greedy decomposition of tilting pair ({r}, {s}) failed at weight {weight}"
        ))),
    }
}

fn parse_char_expr(p: Prime, expr: &str) -> Result<LaurentChar, String> {
    let words: Vec<&str> = expr.split_whitespace().collect();
    let weight = |w: &str| {
        w.parse::<i64>()
            .map_err(|e| format!("invalid weight {w:?}: {e}"))
    };
    let result = match words.as_slice() {
        ["chi", r] => chi(weight(r)?),
        ["prod", r, s] => {
            let (r, s) = (weight(r)?, weight(s)?);
            chi(r).and_then(|a| a.checked_mul(&chi(s)?))
        }
        ["tilt", m] => {
            let m = u64::try_from(weight(m)?).map_err(|_| format!("invalid weight {m:?}"))?;
            TiltingCharacters::new(p).character(m).cloned()
        }
        _ => return Err(format!("cannot parse {expr:?}; expected \"chi R\", \"prod R S\" or \"tilt M\"")),
    };
    result.map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Decide { p, r, s, method, trace } => decide(p, r, s, method, trace, &mut out),
        Command::Decompose { p, r, s } => decompose(p, r, s, &mut out),
        Command::Grid { p, max, format, output } => {
            let text = GridSpec { p, max_weight: max, format }.render()?;
            match output {
                None => {
                    let _ = out.write_all(text.as_bytes());
                }
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return Ok(USAGE);
                    }
                }
            }
            Ok(TILTING)
        }
        Command::Selftest { p_list, max } => {
            let report = SelfTest::new(p_list, max).run();
            let _ = write!(out, "{report}");
            Ok(if report.all_passed() { TILTING } else { INCONSISTENT })
        }
        Command::Char { p, expr } => match parse_char_expr(p, &expr) {
            Ok(c) => {
                let _ = writeln!(out, "{c} = {}", weyl_expand(&c)?);
                Ok(TILTING)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(USAGE)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ (Error::Inconsistency(_) | Error::Overflow(_))) => {
            eprintln!("internal error: {e}");
            ExitCode::from(INCONSISTENT)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}
