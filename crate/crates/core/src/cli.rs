//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 when the
//! printed result contains an unknown coefficient. A failed verification
//! check exits with 1.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gw::{regime, GwQuery, GwValue, HyperbolaBound};
use crate::quantum::qprod_eta;
use crate::ring::Ambient;
use crate::table::{encode_class, OrderEntry, TableDocument};
use crate::verify::{self, Check};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
/// A verification check failed (a validation error of the computed data).
pub const EXIT_FAILED: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "symprod",
    version,
    about = "Quantum cohomology of symmetric products of curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Assoc,
    Relations,
    Oracle,
    Grading,
    Duality,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantum product et^u * et^v.
    Product {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: u32,
        /// Truncation order (default: every order the regime can make nonzero).
        #[arg(long)]
        qmax: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: ProductFormat,
    },
    /// Three-point invariant <et^u, et^v, th^t et^w>_e.
    Gw {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: u32,
        #[arg(long)]
        w: u32,
    },
    /// Run verification suites; one JSON line per check.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, requires = "d")]
        g: Option<u32>,
        #[arg(long, requires = "g")]
        d: Option<u32>,
        #[arg(long, default_value_t = 6)]
        gmax: u32,
        #[arg(long)]
        qmax: Option<u32>,
    },
    /// Multiplication table of et^u * et^v for u + v <= max.
    Table {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum)]
        format: TableFormat,
        #[arg(long)]
        qmax: Option<u32>,
    },
    /// Regime report: deg q, Brill-Noether numbers, hyperbola bound.
    Info {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        d: u32,
    },
}

/// 5 when `d ≥ g-1`, otherwise the ceiling of the hyperbola bound (at least 1).
pub fn default_qmax(amb: Ambient) -> u32 {
    match regime(amb).hyperbola_bound {
        HyperbolaBound::Infinite => 5,
        HyperbolaBound::Finite(b) => b.ceil().to_integer().to_u32().unwrap_or(0).max(1),
    }
}

fn positive_qmax(qmax: Option<u32>, amb: Ambient) -> Result<u32> {
    match qmax {
        Some(0) => Err(Error::Domain {
            what: "--qmax",
            reason: "must be at least 1".into(),
        }),
        Some(n) => Ok(n),
        None => Ok(default_qmax(amb)),
    }
}

#[derive(Serialize)]
struct ProductJson {
    g: u32,
    d: u32,
    u: u32,
    v: u32,
    qmax: u32,
    text: String,
    product: Vec<OrderEntry>,
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Format(format!("write failed: {e}"))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Product {
            g,
            d,
            u,
            v,
            qmax,
            format,
        } => {
            let amb = Ambient::new(g, d)?;
            let n = positive_qmax(qmax, amb)?;
            let p = qprod_eta(u, v, amb, n);
            match format {
                ProductFormat::Text => writeln!(out, "{p}").map_err(io)?,
                ProductFormat::Json => {
                    let doc = ProductJson {
                        g,
                        d,
                        u,
                        v,
                        qmax: n,
                        text: p.to_string(),
                        product: encode_class(&p),
                    };
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializes")
                    )
                    .map_err(io)?
                }
            }
            Ok(if p.unknown_tail() {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            })
        }
        Command::Gw { g, d, e, u, v, w } => {
            let amb = Ambient::new(g, d)?;
            let query = GwQuery::new(amb, u, v, w, e)?;
            let value = query.value()?;
            writeln!(out, "{query} = {value}").map_err(io)?;
            Ok(if value == GwValue::Unknown {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            })
        }
        Command::Verify {
            suite,
            g,
            d,
            gmax,
            qmax,
        } => {
            let single = match (g, d) {
                (Some(g), Some(d)) => Some(Ambient::new(g, d)?),
                _ => None,
            };
            if qmax == Some(0) {
                return Err(Error::Domain {
                    what: "--qmax",
                    reason: "must be at least 1".into(),
                });
            }
            let checks = run_suite(suite, single, gmax, qmax);
            for c in &checks {
                writeln!(out, "{}", c.json_line()).map_err(io)?;
            }
            Ok(if verify::all_passed(&checks) {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Table {
            g,
            d,
            max,
            format,
            qmax,
        } => {
            let amb = Ambient::new(g, d)?;
            let n = positive_qmax(qmax, amb)?;
            let doc = TableDocument::build(amb, max, n);
            match format {
                TableFormat::Json => writeln!(out, "{}", doc.to_json()).map_err(io)?,
                TableFormat::Csv => write!(out, "{}", doc.to_csv()?).map_err(io)?,
            }
            Ok(if doc.has_unknown() {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            })
        }
        Command::Info { g, d } => {
            let amb = Ambient::new(g, d)?;
            let r = regime(amb);
            writeln!(out, "g = {g}, d = {d}").map_err(io)?;
            writeln!(out, "deg q = {}", r.deg_q).map_err(io)?;
            writeln!(out, "rho(1) = {}", r.rho1).map_err(io)?;
            writeln!(out, "rho(2) = {}", r.rho2).map_err(io)?;
            writeln!(out, "hyperbola bound = {}", r.hyperbola_bound).map_err(io)?;
            writeln!(out, "regime = {}", r.regime).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn run_suite(suite: Suite, single: Option<Ambient>, gmax: u32, qmax: Option<u32>) -> Vec<Check> {
    let suites: &[Suite] = match suite {
        Suite::All => &[
            Suite::Oracle,
            Suite::Grading,
            Suite::Relations,
            Suite::Assoc,
            Suite::Duality,
        ],
        _ => std::slice::from_ref(&suite),
    };
    let mut checks = Vec::new();
    for s in suites {
        match (s, single) {
            (Suite::Oracle, Some(a)) => checks.push(verify::oracle_check(a)),
            (Suite::Oracle, None) => {
                checks.extend(verify::oracle_checks(gmax));
                checks.extend(verify::degree_two_checks(gmax));
                checks.extend(verify::vanishing_checks(gmax, gmax + 3));
                checks.push(verify::catalan_check(8));
            }
            (Suite::Grading, Some(a)) => {
                checks.push(verify::grading_check(a, qmax.unwrap_or(a.g() + 3)))
            }
            (Suite::Grading, None) => {
                checks.extend(verify::grading_checks(gmax, qmax.unwrap_or(gmax + 3)))
            }
            (Suite::Relations, Some(a)) => {
                checks.extend(verify::relation_checks_for(a, qmax.unwrap_or(a.g() + 3)))
            }
            (Suite::Relations, None) => {
                checks.extend(verify::relation_checks(gmax, gmax + 2));
                checks.extend(verify::classical_relation_checks(gmax + 2));
            }
            (Suite::Assoc, Some(a)) => checks.push(verify::assoc_checks_for(a, qmax, 3)),
            (Suite::Assoc, None) => checks.extend(verify::assoc_checks(gmax, 3)),
            (Suite::Duality, Some(a)) => {
                checks.push(verify::duality_checks_for(a, qmax.unwrap_or(a.g() + 3)))
            }
            (Suite::Duality, None) => {
                checks.extend(verify::duality_checks(gmax, qmax.unwrap_or(gmax + 3)))
            }
            (Suite::All, _) => unreachable!("expanded above"),
        }
    }
    checks
}
