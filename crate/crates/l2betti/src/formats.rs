//! JSON and CSV schemas. Exact values are written as `"p/q"` strings.

use std::io::{Read, Write};

use l2betti_core::groups::FiniteTable;
use l2betti_core::kclass::BettiReport;
use l2betti_core::ring::{parse_rational, rational_to_string};
use l2betti_core::spectral::HeatReport;
use l2betti_core::{GroupSpec, RingElement, RingMatrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A finite group given by its multiplication table, written with labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub labels: Vec<String>,
    /// `table[i][j]` is the label of `labels[i] · labels[j]`.
    pub table: Vec<Vec<String>>,
    pub identity: String,
}

impl TableJson {
    pub fn into_table(self) -> Result<FiniteTable, CliError> {
        let index = |label: &str| {
            self.labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| CliError::Input(format!("unknown label `{label}` in table")))
        };
        let rows = self
            .table
            .iter()
            .map(|row| row.iter().map(|l| index(l)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let identity = index(&self.identity)?;
        let table = FiniteTable::new(self.labels.clone(), rows, identity)?;
        Ok(match self.name {
            Some(name) => table.with_name(name),
            None => table,
        })
    }

    pub fn from_table(t: &FiniteTable) -> Self {
        let labels = t.labels().to_vec();
        Self {
            name: t.name().map(str::to_string),
            table: t.rows().iter().map(|row| row.iter().map(|&j| labels[j].clone()).collect()).collect(),
            identity: t.label(t.identity()).to_string(),
            labels,
        }
    }
}

/// One term `coeff · word` of a group-ring element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

pub fn element_to_json(a: &RingElement) -> Vec<TermJson> {
    a.terms()
        .map(|(g, c)| TermJson { word: a.spec().format(g), coeff: rational_to_string(c) })
        .collect()
}

pub fn element_from_json(spec: &GroupSpec, terms: &[TermJson]) -> Result<RingElement, CliError> {
    let parsed = terms
        .iter()
        .map(|t| Ok((spec.parse_word(&t.word)?, parse_rational(&t.coeff)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(RingElement::from_terms(spec, parsed)?)
}

/// Row-major matrix of group-ring elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<TermJson>>>,
}

pub fn matrix_to_json(a: &RingMatrix) -> MatrixJson {
    MatrixJson {
        rows: a.rows(),
        cols: a.cols(),
        entries: a.row_vecs().iter().map(|row| row.iter().map(element_to_json).collect()).collect(),
    }
}

pub fn matrix_from_json(spec: &GroupSpec, m: &MatrixJson) -> Result<RingMatrix, CliError> {
    if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
        return Err(CliError::Input(format!("matrix entries do not match {}x{}", m.rows, m.cols)));
    }
    let rows = m
        .entries
        .iter()
        .map(|row| row.iter().map(|e| element_from_json(spec, e)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if m.rows == 0 {
        return Ok(RingMatrix::zeros(spec, 0, m.cols));
    }
    Ok(RingMatrix::from_rows(spec, rows)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub class: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub group: String,
    pub degree: usize,
    pub method: String,
    #[serde(default)]
    pub note: Option<String>,
    pub entries: Vec<BettiEntry>,
}

impl BettiJson {
    pub fn from_report(r: &BettiReport) -> Self {
        Self {
            group: r.group.to_string(),
            degree: r.degree,
            method: r.method.as_str().to_string(),
            note: r.note.clone(),
            entries: r
                .entries
                .iter()
                .map(|(g, v)| BettiEntry { class: r.group.format(g), value: rational_to_string(v) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatRowJson {
    pub t: f64,
    pub radius_or_order: usize,
    pub class: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryJson {
    pub class: String,
    pub status: String,
    pub limit: Option<f64>,
    pub t_delta: Option<f64>,
    pub radius_delta: Option<f64>,
    pub expected: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatJson {
    pub group: String,
    pub degree: Option<usize>,
    pub status: String,
    pub tolerance: f64,
    pub t_schedule: Vec<f64>,
    pub radius_schedule: Vec<usize>,
    pub summaries: Vec<SummaryJson>,
    pub rows: Vec<HeatRowJson>,
}

impl HeatJson {
    pub fn from_report(r: &HeatReport) -> Self {
        let fmt = |g| r.group.format(g);
        Self {
            group: r.group.to_string(),
            degree: r.degree,
            status: r.status().as_str().to_string(),
            tolerance: r.tolerance,
            t_schedule: r.t_schedule.clone(),
            radius_schedule: r.radius_schedule.clone(),
            summaries: r
                .summaries
                .iter()
                .map(|s| SummaryJson {
                    class: fmt(&s.class),
                    status: s.status.as_str().to_string(),
                    limit: s.limit,
                    t_delta: s.t_delta,
                    radius_delta: s.radius_delta,
                    expected: s.expected.as_ref().map(rational_to_string),
                })
                .collect(),
            rows: r
                .rows
                .iter()
                .map(|row| HeatRowJson {
                    t: row.t,
                    radius_or_order: row.radius_or_order,
                    class: fmt(&row.class),
                    value: row.value,
                    bound: row.bound,
                    method: row.method.as_str().to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub group: String,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaplacianJson {
    pub degree: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub group: String,
    pub ranks: Vec<usize>,
    pub complete: bool,
    pub coboundaries: Vec<MatrixJson>,
    pub laplacians: Vec<LaplacianJson>,
}

/// Any command result.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Betti(BettiJson),
    Heat(HeatJson),
    Verify(VerifyJson),
    Complex(ComplexJson),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Serialize, Deserialize)]
struct MatrixCell {
    kind: String,
    index: usize,
    row: usize,
    col: usize,
    word: String,
    coeff: String,
}

impl Output {
    pub fn write(&self, format: Format, out: impl Write) -> Result<(), CliError> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_json(&self, mut out: impl Write) -> Result<(), CliError> {
        match self {
            Output::Betti(x) => serde_json::to_writer_pretty(&mut out, x)?,
            Output::Heat(x) => serde_json::to_writer_pretty(&mut out, x)?,
            Output::Verify(x) => serde_json::to_writer_pretty(&mut out, x)?,
            Output::Complex(x) => serde_json::to_writer_pretty(&mut out, x)?,
        }
        writeln!(out)?;
        Ok(())
    }

    fn write_csv(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        match self {
            Output::Betti(x) => x.entries.iter().try_for_each(|e| w.serialize(e))?,
            Output::Heat(x) => x.rows.iter().try_for_each(|r| w.serialize(r))?,
            Output::Verify(x) => x.checks.iter().try_for_each(|c| w.serialize(c))?,
            Output::Complex(x) => {
                let mut cells = Vec::new();
                let mut push = |kind: &str, index: usize, m: &MatrixJson| {
                    for (row, r) in m.entries.iter().enumerate() {
                        for (col, terms) in r.iter().enumerate() {
                            for t in terms {
                                cells.push(MatrixCell {
                                    kind: kind.to_string(),
                                    index,
                                    row,
                                    col,
                                    word: t.word.clone(),
                                    coeff: t.coeff.clone(),
                                });
                            }
                        }
                    }
                };
                for (i, d) in x.coboundaries.iter().enumerate() {
                    push("coboundary", i, d);
                }
                for l in &x.laplacians {
                    push("laplacian", l.degree, &l.matrix);
                }
                cells.iter().try_for_each(|c| w.serialize(c))?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Reads heat rows back from CSV.
pub fn read_heat_csv(input: impl Read) -> Result<Vec<HeatRowJson>, CliError> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(CliError::from)).collect()
}

/// Reads Betti entries back from CSV.
pub fn read_betti_csv(input: impl Read) -> Result<Vec<BettiEntry>, CliError> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(CliError::from)).collect()
}
