//! Knot records, the bundled tables and regression reports.
//!
//! A catalog is a TOML file with one `[[knot]]` table per record:
//!
//! ```text
//! file    := record*
//! record  := "[[knot]]" NL field*
//! field   := "name"     "=" STRING      ; required, unique in the file
//!          | "rolfsen"  "=" STRING      ; optional, e.g. "7_7"
//!          | "pd"       "=" STRING      ; PD code, e.g. "PD[X(3,1,4,6), ...]"
//!          | "cwr"      "=" STRING      ; expected value, e.g. "((3w, w^3), (w^3, 0))"
//!          | "mirrored" "=" BOOLEAN     ; use the mirror image of `pd`
//! ```
//!
//! Names ending in `m` that are not themselves in the catalog resolve to the
//! mirror image of the record without the suffix, and `unknot` is always
//! available.

use std::fmt::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cwr::{
    compute_cwr, consolidated_graphs, cwr_of_graphs, derive_wrp, parse_cwr, CwrError, CwrValue, Wrp,
};
use crate::diagram::{mirror, parse_pd, DiagramError, PlanarDiagram};
use crate::matrix_oracle::cross_check;

const UPTO8: &str = include_str!("../data/knots_upto8.toml");
const EXTRA: &str = include_str!("../data/knots_11_12.toml");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed catalog: {0}")]
    Format(String),
    #[error("duplicate knot name {0}")]
    Duplicate(String),
    #[error("{name}: expected value does not parse: {source}")]
    BadExpected { name: String, source: CwrError },
    #[error("unknown knot {0}")]
    UnknownName(String),
    #[error("{0} has no PD code")]
    MissingPd(String),
    #[error("{name}: {source}")]
    Diagram { name: String, source: DiagramError },
    #[error("{name}: {source}")]
    Cwr { name: String, source: CwrError },
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rolfsen: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
    #[serde(default, rename = "cwr", skip_serializing_if = "Option::is_none")]
    pub expected_cwr: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub mirrored: bool,
}

impl KnotRecord {
    /// The record's diagram, mirrored if the record says so.
    pub fn diagram(&self) -> Result<PlanarDiagram, CatalogError> {
        let pd = self
            .pd
            .as_deref()
            .ok_or_else(|| CatalogError::MissingPd(self.name.clone()))?;
        let d = parse_pd(pd).map_err(|source| CatalogError::Diagram {
            name: self.name.clone(),
            source,
        })?;
        Ok(if self.mirrored { mirror(&d) } else { d })
    }

    pub fn expected(&self) -> Result<Option<CwrValue>, CatalogError> {
        self.expected_cwr
            .as_deref()
            .map(parse_cwr)
            .transpose()
            .map_err(|source| CatalogError::BadExpected {
                name: self.name.clone(),
                source,
            })
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    #[serde(default)]
    knot: Vec<KnotRecord>,
}

/// Parses catalog text and validates names and expected values.
pub fn parse_catalog(text: &str) -> Result<Vec<KnotRecord>, CatalogError> {
    let file: CatalogFile =
        toml::from_str(text).map_err(|e| CatalogError::Format(e.to_string()))?;
    let mut seen = std::collections::BTreeSet::new();
    for r in &file.knot {
        if !seen.insert(r.name.as_str()) {
            return Err(CatalogError::Duplicate(r.name.clone()));
        }
        r.expected()?;
    }
    Ok(file.knot)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_catalog(&text)
}

pub fn serialize_catalog(records: &[KnotRecord]) -> String {
    toml::to_string(&CatalogFile {
        knot: records.to_vec(),
    })
    .expect("records serialize")
}

/// The bundled table of prime alternating knots up to eight crossings.
pub fn bundled_table() -> Vec<KnotRecord> {
    parse_catalog(UPTO8).expect("bundled table is valid")
}

/// Every bundled record: the table plus the larger example knots.
pub fn bundled() -> Vec<KnotRecord> {
    let mut all = bundled_table();
    all.extend(parse_catalog(EXTRA).expect("bundled examples are valid"));
    all
}

/// A set of records with name lookup.
#[derive(Debug, Clone)]
pub struct Catalog {
    records: Vec<KnotRecord>,
}

impl Catalog {
    pub fn new(records: Vec<KnotRecord>) -> Self {
        Catalog { records }
    }

    pub fn bundled() -> Self {
        Catalog::new(bundled())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        load_catalog(path).map(Catalog::new)
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Diagram for a name; see the module docs for the naming rules.
    pub fn resolve(&self, name: &str) -> Result<PlanarDiagram, CatalogError> {
        if name.eq_ignore_ascii_case("unknot") {
            return Ok(PlanarDiagram::unknot());
        }
        if let Some(r) = self.get(name) {
            return r.diagram();
        }
        match name.strip_suffix('m').and_then(|base| self.get(base)) {
            Some(r) => r.diagram().map(|d| mirror(&d)),
            None => Err(CatalogError::UnknownName(name.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub name: String,
    pub status: Status,
    pub expected: Option<String>,
    pub computed: Option<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<VerifyRow>,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    /// Records actually compared.
    pub fn checked(&self) -> usize {
        self.rows.len() - self.count(Status::Skipped)
    }

    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn render_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = String::new();
        for r in &self.rows {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let value = r.computed.as_deref().unwrap_or("-");
            writeln!(out, "{:width$}  {status}  {value}", r.name).unwrap();
            if r.status == Status::Fail {
                if let Some(e) = &r.expected {
                    writeln!(out, "{:width$}        expected {e}", "").unwrap();
                }
            }
            if let Some(note) = &r.note {
                writeln!(out, "{:width$}        {note}", "").unwrap();
            }
        }
        writeln!(
            out,
            "{}/{} passed",
            self.count(Status::Pass),
            self.checked()
        )
        .unwrap();
        out
    }
}

fn verify_one(r: &KnotRecord, oracle: bool) -> VerifyRow {
    let mut row = VerifyRow {
        name: r.name.clone(),
        status: Status::Skipped,
        expected: r.expected_cwr.clone(),
        computed: None,
        note: None,
    };
    let expected = match r.expected() {
        Ok(Some(v)) => v,
        Ok(None) => {
            row.note = Some("no expected value".into());
            return row;
        }
        Err(e) => {
            row.status = Status::Fail;
            row.note = Some(e.to_string());
            return row;
        }
    };
    if r.pd.is_none() {
        row.note = Some("no PD code".into());
        return row;
    }
    let computed = r.diagram().and_then(|d| {
        let (b, w) = consolidated_graphs(&d).map_err(|source| CatalogError::Cwr {
            name: r.name.clone(),
            source,
        })?;
        if oracle {
            for g in [&b, &w] {
                if let Err(e) = cross_check(g) {
                    row.note = Some(format!("oracle: {e}"));
                }
            }
        }
        Ok(cwr_of_graphs(&b, &w))
    });
    match computed {
        Ok(v) => {
            row.status = if v == expected && row.note.is_none() {
                Status::Pass
            } else {
                Status::Fail
            };
            row.computed = Some(v.to_string());
        }
        Err(e) => {
            row.status = Status::Fail;
            row.note = Some(e.to_string());
        }
    }
    row
}

/// Computes every record with an expected value and compares semantically.
/// With `oracle`, the second and third components of both graphs are also
/// checked against the trace formulas.
pub fn verify_against_expected(records: &[KnotRecord], oracle: bool) -> VerificationReport {
    VerificationReport {
        rows: records.par_iter().map(|r| verify_one(r, oracle)).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub name: String,
    pub rolfsen: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cwr: Option<CwrValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Computes the invariant of every record that has a PD code.
pub fn compute_table(records: &[KnotRecord]) -> Vec<TableRow> {
    records
        .par_iter()
        .filter(|r| r.pd.is_some())
        .map(|r| {
            let value = r.diagram().and_then(|d| {
                compute_cwr(&d).map_err(|source| CatalogError::Cwr {
                    name: r.name.clone(),
                    source,
                })
            });
            TableRow {
                name: r.name.clone(),
                rolfsen: r.rolfsen.clone(),
                error: value.as_ref().err().map(ToString::to_string),
                cwr: value.ok(),
            }
        })
        .collect()
}

pub fn render_table(rows: &[TableRow]) -> String {
    let nw = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let rw = rows
        .iter()
        .map(|r| r.rolfsen.as_deref().map_or(1, str::len))
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let value = match (&r.cwr, &r.error) {
            (Some(v), _) => v.to_string(),
            (None, e) => format!("error: {}", e.as_deref().unwrap_or("unknown")),
        };
        writeln!(
            out,
            "{:nw$}  {:rw$}  {value}",
            r.name,
            r.rolfsen.as_deref().unwrap_or("-")
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinguishReport {
    pub a: String,
    pub b: String,
    pub cwr_a: CwrValue,
    pub cwr_b: CwrValue,
    pub first_difference: Option<usize>,
    pub equal: bool,
    pub wrp_a: Wrp,
    pub wrp_b: Wrp,
    pub wrp_equal: bool,
}

impl DistinguishReport {
    pub fn render_text(&self) -> String {
        let width = self.a.len().max(self.b.len());
        let mut out = String::new();
        writeln!(out, "{:width$}  {}", self.a, self.cwr_a).unwrap();
        writeln!(out, "{:width$}  {}", self.b, self.cwr_b).unwrap();
        match self.first_difference {
            Some(i) => {
                let (x, y) = (self.cwr_a.get(i), self.cwr_b.get(i));
                writeln!(
                    out,
                    "first difference at index {i}: ({}, {}) vs ({}, {})",
                    x.0, x.1, y.0, y.1
                )
                .unwrap();
            }
            None => writeln!(out, "values agree at every index").unwrap(),
        }
        let wrp = if self.wrp_equal { "equal" } else { "different" };
        writeln!(out, "WRP: {wrp}").unwrap();
        out.push_str(if self.equal { "EQUAL\n" } else { "DISTINCT\n" });
        out
    }
}

/// Compares the invariants of two named knots.
pub fn distinguishing_report(
    catalog: &Catalog,
    a: &str,
    b: &str,
) -> Result<DistinguishReport, CatalogError> {
    let value = |name: &str| -> Result<CwrValue, CatalogError> {
        let d = catalog.resolve(name)?;
        compute_cwr(&d).map_err(|source| CatalogError::Cwr {
            name: name.to_string(),
            source,
        })
    };
    let (cwr_a, cwr_b) = (value(a)?, value(b)?);
    let first_difference = cwr_a.first_difference(&cwr_b);
    let (wrp_a, wrp_b) = (derive_wrp(&cwr_a), derive_wrp(&cwr_b));
    Ok(DistinguishReport {
        a: a.to_string(),
        b: b.to_string(),
        first_difference,
        equal: first_difference.is_none(),
        wrp_equal: wrp_a == wrp_b,
        cwr_a,
        cwr_b,
        wrp_a,
        wrp_b,
    })
}
