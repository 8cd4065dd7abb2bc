//! Command-line front end.
//!
//! Every subcommand produces an [`Outcome`]: the text to print and whether
//! all requested checks passed. The `cwr` binary maps that to exit codes
//! 0 (pass), 1 (a check failed) and 2 (bad input).

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::catalog::{
    compute_table, distinguishing_report, render_table, verify_against_expected, Catalog,
    CatalogError,
};
use crate::cwr::{
    compute_cwr, consolidated_graphs, cwr_of_graphs, derive_wrp, mirror_value, CwrError,
};
use crate::diagram::{mirror, parse_pd, CrossingSign, DiagramError, PlanarDiagram};
use crate::matrix_oracle::{cross_check, OracleError};
use crate::skein::{build_family, verify_relations, SkeinError};

#[derive(Debug, Parser)]
#[command(
    name = "cwr",
    version,
    about = "Cycle-weight invariant of alternating links"
)]
pub struct Cli {
    /// Catalog file used to resolve knot names instead of the bundled one.
    #[arg(long, global = true, env = "CWR_CATALOG")]
    pub catalog: Option<PathBuf>,
    /// Cross-check the second and third components with matrix traces.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the invariant of one diagram.
    Compute {
        #[command(flatten)]
        input: Input,
        /// Also print the derived WRP pair.
        #[arg(long)]
        wrp: bool,
    },
    /// Check every catalog record against its expected value.
    VerifyTable,
    /// Compare the invariants of two named knots.
    Compare { a: String, b: String },
    /// Check the mirror formula and report whether the value is mirror-symmetric.
    Mirror {
        #[command(flatten)]
        input: Input,
    },
    /// Verify the twist relations on a family of diagrams.
    Skein {
        /// Starting diagram by catalog name; defaults to a bundled base for the sign.
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        pd: Option<String>,
        /// Edge label whose head crossing is twisted.
        #[arg(long)]
        site: Option<u32>,
        #[arg(long, default_value = "negative")]
        sign: CrossingSign,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
    },
    /// Compute the invariant of every catalog record.
    Table,
}

/// Exactly one diagram source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Catalog name, e.g. K7a1, K3a1m or unknot.
    pub name: Option<String>,
    /// Inline PD code.
    #[arg(long)]
    pub pd: Option<String>,
    /// File holding a PD code.
    #[arg(long)]
    pub pd_file: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Cwr(#[from] CwrError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            success: true,
        }
    }
}

/// Bundled starting diagrams for `skein` without an explicit input.
pub const DEFAULT_POSITIVE_BASE: (&str, u32) = ("K3a1", 1);
pub const DEFAULT_NEGATIVE_BASE: (&str, u32) = ("K6a1", 8);

fn catalog(cli: &Cli) -> Result<Catalog, CliError> {
    Ok(match &cli.catalog {
        Some(path) => Catalog::load(path)?,
        None => Catalog::bundled(),
    })
}

fn resolve(cli: &Cli, input: &Input) -> Result<(String, PlanarDiagram), CliError> {
    if let Some(pd) = &input.pd {
        return Ok((pd.clone(), parse_pd(pd)?));
    }
    if let Some(path) = &input.pd_file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
        return Ok((path.display().to_string(), parse_pd(text.trim())?));
    }
    let name = input.name.as_deref().expect("clap requires one input");
    Ok((name.to_string(), catalog(cli)?.resolve(name)?))
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Compute { input, wrp } => cmd_compute(cli, input, *wrp),
        Command::VerifyTable => cmd_verify_table(cli),
        Command::Compare { a, b } => cmd_compare(cli, a, b),
        Command::Mirror { input } => cmd_mirror(cli, input),
        Command::Skein {
            name,
            pd,
            site,
            sign,
            n_max,
            k_max,
        } => cmd_skein(
            cli,
            name.as_deref(),
            pd.as_deref(),
            *site,
            *sign,
            *n_max,
            *k_max,
        ),
        Command::Table => cmd_table(cli),
    }
}

fn cmd_compute(cli: &Cli, input: &Input, wrp: bool) -> Result<Outcome, CliError> {
    let (label, d) = resolve(cli, input)?;
    let (b, w) = consolidated_graphs(&d)?;
    if cli.oracle {
        cross_check(&b)?;
        cross_check(&w)?;
    }
    let v = cwr_of_graphs(&b, &w);
    let text = if cli.json {
        let mut obj = json!({ "input": label, "cwr": v });
        if wrp {
            obj["wrp"] = json!(derive_wrp(&v));
        }
        if cli.oracle {
            obj["oracle"] = json!("agree");
        }
        pretty(obj)
    } else {
        let mut out = format!("{v}\n");
        if wrp {
            writeln!(out, "WRP {}", derive_wrp(&v)).unwrap();
        }
        if cli.oracle {
            out.push_str("oracle: traces agree for indices 2 and 3\n");
        }
        out
    };
    Ok(Outcome::ok(text))
}

fn cmd_verify_table(cli: &Cli) -> Result<Outcome, CliError> {
    let c = catalog(cli)?;
    let report = verify_against_expected(c.records(), cli.oracle);
    let text = if cli.json {
        pretty(json!(report))
    } else {
        report.render_text()
    };
    Ok(Outcome {
        text,
        success: report.all_passed(),
    })
}

fn cmd_compare(cli: &Cli, a: &str, b: &str) -> Result<Outcome, CliError> {
    let report = distinguishing_report(&catalog(cli)?, a, b)?;
    let text = if cli.json {
        pretty(json!(report))
    } else {
        report.render_text()
    };
    Ok(Outcome::ok(text))
}

fn cmd_mirror(cli: &Cli, input: &Input) -> Result<Outcome, CliError> {
    let (label, d) = resolve(cli, input)?;
    let v = compute_cwr(&d)?;
    let m = compute_cwr(&mirror(&d))?;
    let formula_holds = m == mirror_value(&v);
    let verdict = if v == m {
        "SELF-MIRROR-EQUAL"
    } else {
        "MIRROR-DISTINCT"
    };
    let text = if cli.json {
        pretty(
            json!({ "input": label, "cwr": v, "mirror": m, "formula_holds": formula_holds, "verdict": verdict }),
        )
    } else {
        let check = if formula_holds { "holds" } else { "FAILS" };
        format!("value   {v}\nmirror  {m}\nmirror formula {check}\n{verdict}\n")
    };
    Ok(Outcome {
        text,
        success: formula_holds,
    })
}

fn cmd_skein(
    cli: &Cli,
    name: Option<&str>,
    pd: Option<&str>,
    site: Option<u32>,
    sign: CrossingSign,
    n_max: usize,
    k_max: usize,
) -> Result<Outcome, CliError> {
    let (default_name, default_site) = match sign {
        CrossingSign::Positive => DEFAULT_POSITIVE_BASE,
        CrossingSign::Negative => DEFAULT_NEGATIVE_BASE,
    };
    let start = match (name, pd) {
        (_, Some(pd)) => parse_pd(pd)?,
        (Some(name), None) => catalog(cli)?.resolve(name)?,
        (None, None) => Catalog::bundled().resolve(default_name)?,
    };
    let site = site.unwrap_or(if name.is_none() && pd.is_none() {
        default_site
    } else {
        1
    });
    let family = build_family(&start, site, sign, n_max)?;
    let report = verify_relations(&family, k_max)?;
    let text = if cli.json {
        pretty(json!(report))
    } else {
        report.render_text()
    };
    Ok(Outcome {
        text,
        success: report.all_passed(),
    })
}

fn cmd_table(cli: &Cli) -> Result<Outcome, CliError> {
    let rows = compute_table(catalog(cli)?.records());
    let success = rows.iter().all(|r| r.error.is_none());
    let text = if cli.json {
        pretty(json!(rows))
    } else {
        render_table(&rows)
    };
    Ok(Outcome { text, success })
}
