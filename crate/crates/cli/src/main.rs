//! `pgiso`: construct, check and compare spreads and covering stars of PG(n-1, 2).
//!
//! Design files look like
//!
//! ```text
//! pg 4
//! kind spread 4 2
//! D, BC, BCD
//! C, AB, ABC
//! ...
//! ```
//!
//! with one flat per line and `#` starting a comment. Stars use
//! `kind star <n> <t> <t0>`. Under `--numeric`, points are decimal Yates
//! indices instead of letter words. Any file argument may also name a
//! built-in design as `@psi1`, `@psi2`, `@omega1`, `@omega2`, `@psi3` or
//! `@psi4`.
//!
//! Exit status: 0 for yes/valid, 1 for no, 2 for usage or format errors.

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use pgiso_core::classify::classify;
use pgiso_core::counts::{count_collineations, count_equiv_class, count_naive, count_search_space};
use pgiso_core::design::spread_to_star;
use pgiso_core::field::{cyclic_spread, FieldSpec};
use pgiso_core::fixtures;
use pgiso_core::format::{parse, parse_raw, write, Notation};
use pgiso_core::iso::{iso, verify_witness, IsoOptions};
use pgiso_core::signature::{equivalent, signature};
use pgiso_core::{Design, Error, SignatureMode};

#[derive(Parser)]
#[command(
    name = "pgiso",
    version,
    about = "Spreads and covering stars of PG(n-1, 2)"
)]
struct Cli {
    /// Read and write points as decimal Yates indices.
    #[arg(long, global = true)]
    numeric: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Repr {
    Prime,
    Bitstring,
}

impl From<Repr> for SignatureMode {
    fn from(r: Repr) -> Self {
        match r {
            Repr::Prime => SignatureMode::Prime,
            Repr::Bitstring => SignatureMode::Bitstring,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cyclic spread of P_u from a primitive polynomial, optionally lifted to a star.
    Construct {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        h: usize,
        /// Bitmask of the polynomial, bit i = coefficient of w^i (decimal, 0b.. or 0x..).
        #[arg(long, value_parser = parse_poly)]
        poly: u64,
        /// Use the conjugate root w^(2^k).
        #[arg(long, default_value_t = 0)]
        conjugate: usize,
        /// Lift to a covering star with a nucleus of this dimension.
        #[arg(long, default_value_t = 0)]
        t0: usize,
    },
    /// Lift a spread file to the covering star `psi x <F_(u+1), ..., F_(u+t0)>`.
    Star {
        file: String,
        #[arg(long)]
        t0: usize,
    },
    /// Validate a design file.
    Check { file: String },
    /// Compare two designs up to rearrangement.
    Equiv {
        file1: String,
        file2: String,
        #[arg(long, value_enum, default_value_t = Repr::Prime)]
        repr: Repr,
    },
    /// Decide whether two designs are isomorphic.
    Iso {
        file1: String,
        file2: String,
        /// Search sequentially in canonical order; the witness is then reproducible.
        #[arg(long)]
        deterministic: bool,
        /// Worker threads (default: all cores).
        #[arg(long, env = "PGISO_JOBS")]
        jobs: Option<usize>,
        /// Enumerate every relabelling, including blocks known to be singular.
        #[arg(long)]
        no_prune: bool,
    },
    /// Sizes of the equivalence class, the collineation group and the search spaces.
    Counts {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        t0: usize,
    },
    /// Enumerate all spreads of P_u and sort them into isomorphism classes.
    Classify {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        h: usize,
    },
}

fn parse_poly(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = if let Some(b) = s.strip_prefix("0b") {
        u64::from_str_radix(b, 2)
    } else if let Some(x) = s.strip_prefix("0x") {
        u64::from_str_radix(x, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|e| format!("invalid polynomial `{s}`: {e}"))
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        Failure { code: 2, err }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: 2,
            err: err.into(),
        }
    }
}

/// Text of a design argument and the notation to parse it with; built-in
/// designs are always in letter notation.
fn read_source(arg: &str, notation: Notation) -> anyhow::Result<(String, Notation)> {
    if let Some(name) = arg.strip_prefix('@') {
        let text = fixtures::lookup(name).ok_or_else(|| {
            let names: Vec<&str> = fixtures::CATALOG.iter().map(|(k, _)| *k).collect();
            anyhow!(
                "unknown built-in design `{name}` (known: {})",
                names.join(", ")
            )
        })?;
        return Ok((text.to_string(), Notation::Letters));
    }
    let text = fs::read_to_string(arg).with_context(|| format!("cannot read `{arg}`"))?;
    Ok((text, notation))
}

fn load(arg: &str, notation: Notation) -> anyhow::Result<Design> {
    let (text, notation) = read_source(arg, notation)?;
    parse(&text, notation).with_context(|| format!("in `{arg}`"))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let notation = if cli.numeric {
        Notation::Numeric
    } else {
        Notation::Letters
    };
    match cli.command {
        Command::Construct {
            u,
            h,
            poly,
            conjugate,
            t0,
        } => {
            let spec = FieldSpec::new(u, poly)?;
            let spread = cyclic_spread(&spec, h, conjugate)?;
            let design: Design = if t0 > 0 {
                spread_to_star(&spread, t0)?.into()
            } else {
                spread.into()
            };
            print!("{}", write(&design, notation));
            Ok(0)
        }
        Command::Star { file, t0 } => match load(&file, notation)? {
            Design::Spread(s) => {
                print!("{}", write(&spread_to_star(&s, t0)?.into(), notation));
                Ok(0)
            }
            Design::Star(_) => Err(anyhow!("`{file}` is already a star").into()),
        },
        Command::Check { file } => {
            let (text, notation) = read_source(&file, notation)?;
            let raw = parse_raw(&text, notation).with_context(|| format!("in `{file}`"))?;
            match raw.build() {
                Ok(d) => {
                    println!("VALID {}", d.shape());
                    Ok(0)
                }
                Err(e) => {
                    println!("INVALID: {e}");
                    Ok(1)
                }
            }
        }
        Command::Equiv { file1, file2, repr } => {
            let (a, b) = (load(&file1, notation)?, load(&file2, notation)?);
            let mode = repr.into();
            let same = equivalent(&a, &b, mode)?;
            println!("{}", if same { "EQUIVALENT" } else { "NOT EQUIVALENT" });
            println!("{file1}: {}", signature(&a, mode));
            println!("{file2}: {}", signature(&b, mode));
            Ok(if same { 0 } else { 1 })
        }
        Command::Iso {
            file1,
            file2,
            deterministic,
            jobs,
            no_prune,
        } => {
            let (a, b) = (load(&file1, notation)?, load(&file2, notation)?);
            if jobs == Some(0) {
                return Err(anyhow!("--jobs must be at least 1").into());
            }
            let opts = IsoOptions {
                deterministic,
                jobs,
                prune: !no_prune,
            };
            let res = iso(&a, &b, &opts)?;
            println!("{}", res.verdict);
            if let Some(w) = &res.witness {
                if !verify_witness(w, &a, &b) {
                    return Err(anyhow!("internal error: witness failed verification").into());
                }
                println!("witness (verified):");
                print!("{}", w.to_grid());
                if let Some(idx) = &res.accepted {
                    println!("relabelling: {idx}");
                }
                println!(
                    "image signature: {}",
                    signature(&a.apply(w)?, SignatureMode::Prime)
                );
            }
            println!("relabellings tried: {}", res.relabellings_tried);
            println!("relabellings pruned: {}", res.relabellings_pruned);
            Ok(if res.is_isomorphic() { 0 } else { 1 })
        }
        Command::Counts { n, t, t0 } => {
            if t0 >= t || t > n {
                return Err(anyhow!("need 0 <= t0 < t <= n, got n={n}, t={t}, t0={t0}").into());
            }
            let (u, h) = (n - t0, t - t0);
            println!("equivalence class |E|: {}", count_equiv_class(n, t, t0)?);
            println!("collineations |C_{n}|: {}", count_collineations(n));
            println!("collineations |C_{u}|: {}", count_collineations(u));
            println!("pruned relabellings |D|: {}", count_search_space(u, h)?);
            println!("naive comparisons: {}", count_naive(n, t, t0)?);
            Ok(0)
        }
        Command::Classify { u, h } => {
            let c = classify(u, h, &IsoOptions::default())?;
            println!("spreads: {}", c.total_spreads);
            println!("isomorphism classes: {}", c.classes.len());
            for (i, class) in c.classes.iter().enumerate() {
                println!("# class {} ({} spreads)", i + 1, class.members);
                print!("{}", write(&class.representative.clone().into(), notation));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
