//! Machine-readable emission of rankings, restoration reports, and
//! experiment grids, as CSV or JSON. Both formats carry a schema version and
//! an echo of the command that produced them, and both round-trip: parsing
//! an emitted document yields the identical record.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::restore::{DamageRecord, ExperimentGrid, RestorationReport};
use crate::score::{quantize_score, RankedList};

pub const SCHEMA_VERSION: &str = "1";

/// Fixed-precision float text: 12 significant digits, trailing zeros
/// trimmed, plain decimal for moderate exponents and scientific notation
/// otherwise. Applied to quantized scores this is lossless, so CSV output
/// reparses to the exact stored value.
pub fn fmt_score(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.11e}", x); // d.ddddddddddde<exp>
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);
    let body = if (-4..12).contains(&exp) {
        if exp >= 0 {
            let split = (exp + 1) as usize;
            let int_part = &digits[..split];
            let frac = digits[split..].trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        } else {
            let frac = digits.trim_end_matches('0');
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), frac)
        }
    } else {
        let head = &digits[..1];
        let tail = digits[1..].trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{exp}")
        } else {
            format!("{head}.{tail}e{exp}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub rank: usize,
    pub node_a: String,
    pub node_b: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingDoc {
    pub entries: Vec<RankRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestoreRow {
    pub node_a: String,
    pub node_b: String,
    pub pre_rank: usize,
    pub post_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestorationDoc {
    pub scenario: String,
    pub m: usize,
    pub m_plus: usize,
    pub k: usize,
    pub q: f64,
    pub eta: f64,
    pub removed: Vec<RestoreRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub removal_method: String,
    pub creation_method: String,
    pub mean_q: f64,
    pub std_q: f64,
    pub mean_eta: f64,
    pub std_eta: f64,
    pub n_valid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentDoc {
    pub rows: Vec<GridRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Ranking(RankingDoc),
    Restoration(RestorationDoc),
    Experiment(ExperimentDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    /// Echo of the full command/configuration that produced this document.
    pub command: String,
    pub payload: Payload,
}

impl OutputRecord {
    /// Ranking document; `top = 0` keeps every pair.
    pub fn ranking(command: String, g: &Graph, ranked: &RankedList, top: usize) -> OutputRecord {
        let take = if top == 0 { ranked.entries.len() } else { top.min(ranked.entries.len()) };
        let entries = ranked.entries[..take]
            .iter()
            .map(|e| RankRow {
                rank: e.rank,
                node_a: g.label(e.pair.0).to_string(),
                node_b: g.label(e.pair.1).to_string(),
                score: quantize_score(e.score),
            })
            .collect();
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            payload: Payload::Ranking(RankingDoc { entries }),
        }
    }

    pub fn restoration(
        command: String,
        rec: &DamageRecord,
        report: &RestorationReport,
    ) -> OutputRecord {
        let g = &rec.damaged; // labels are shared with the original graph
        let removed = rec
            .removed
            .iter()
            .zip(&report.post_ranks)
            .map(|(e, &post)| RestoreRow {
                node_a: g.label(e.pair.0).to_string(),
                node_b: g.label(e.pair.1).to_string(),
                pre_rank: e.rank,
                post_rank: post,
            })
            .collect();
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            payload: Payload::Restoration(RestorationDoc {
                scenario: report.scenario.name().to_string(),
                m: rec.m,
                m_plus: report.m_plus,
                k: report.k,
                q: quantize_score(report.q),
                eta: quantize_score(report.eta),
                removed,
            }),
        }
    }

    pub fn experiment(command: String, grid: &ExperimentGrid) -> OutputRecord {
        let mut rows = Vec::with_capacity(grid.removal_methods.len() * grid.creation_methods.len());
        for (ri, removal) in grid.removal_methods.iter().enumerate() {
            for (ci, creation) in grid.creation_methods.iter().enumerate() {
                let cell = &grid.cells[ri][ci];
                rows.push(GridRow {
                    removal_method: removal.method.name().to_string(),
                    creation_method: creation.method.name().to_string(),
                    mean_q: quantize_score(cell.mean_q),
                    std_q: quantize_score(cell.std_q),
                    mean_eta: quantize_score(cell.mean_eta),
                    std_eta: quantize_score(cell.std_eta),
                    n_valid: cell.n_valid,
                });
            }
        }
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            payload: Payload::Experiment(ExperimentDoc { rows }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable record");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<OutputRecord> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidConfig(format!("cannot parse JSON document: {e}")))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema_version: {}\n", self.schema_version));
        out.push_str(&format!("# command: {}\n", self.command));
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.payload {
            Payload::Ranking(doc) => {
                w.write_record(["rank", "node_a", "node_b", "score"]).unwrap();
                for r in &doc.entries {
                    w.write_record([
                        r.rank.to_string(),
                        r.node_a.clone(),
                        r.node_b.clone(),
                        fmt_score(r.score),
                    ])
                    .unwrap();
                }
            }
            Payload::Restoration(doc) => {
                w.write_record([
                    "node_a", "node_b", "pre_rank", "post_rank", "scenario", "m", "m_plus",
                    "k", "q", "eta",
                ])
                .unwrap();
                for r in &doc.removed {
                    w.write_record([
                        r.node_a.clone(),
                        r.node_b.clone(),
                        r.pre_rank.to_string(),
                        r.post_rank.to_string(),
                        doc.scenario.clone(),
                        doc.m.to_string(),
                        doc.m_plus.to_string(),
                        doc.k.to_string(),
                        fmt_score(doc.q),
                        fmt_score(doc.eta),
                    ])
                    .unwrap();
                }
            }
            Payload::Experiment(doc) => {
                w.write_record([
                    "removal_method",
                    "creation_method",
                    "mean_q",
                    "std_q",
                    "mean_eta",
                    "std_eta",
                    "n_valid",
                ])
                .unwrap();
                for r in &doc.rows {
                    w.write_record([
                        r.removal_method.clone(),
                        r.creation_method.clone(),
                        fmt_score(r.mean_q),
                        fmt_score(r.std_q),
                        fmt_score(r.mean_eta),
                        fmt_score(r.std_eta),
                        r.n_valid.to_string(),
                    ])
                    .unwrap();
                }
            }
        }
        let body = w.into_inner().expect("in-memory writer");
        out.push_str(std::str::from_utf8(&body).expect("valid utf-8"));
        out
    }

    /// Parse a CSV document produced by `to_csv`. The payload kind is
    /// recovered from the header row.
    pub fn from_csv(text: &str) -> Result<OutputRecord> {
        let mut schema_version = None;
        let mut command = None;
        let mut body = String::new();
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# ") {
                if let Some((key, value)) = rest.split_once(": ") {
                    match key {
                        "schema_version" => schema_version = Some(value.to_string()),
                        "command" => command = Some(value.to_string()),
                        _ => {}
                    }
                }
            } else {
                body.push_str(line);
                body.push('\n');
            }
        }
        let schema_version = schema_version
            .ok_or_else(|| Error::InvalidConfig("CSV document lacks a schema_version line".into()))?;
        let command = command
            .ok_or_else(|| Error::InvalidConfig("CSV document lacks a command line".into()))?;

        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(body.as_bytes());
        let headers: Vec<String> =
            reader.headers().map_err(bad_csv)?.iter().map(String::from).collect();
        let payload = match headers.first().map(String::as_str) {
            Some("rank") => {
                let mut entries = Vec::new();
                for rec in reader.records() {
                    let rec = rec.map_err(bad_csv)?;
                    entries.push(RankRow {
                        rank: field(&rec, 0)?.parse().map_err(bad_num)?,
                        node_a: field(&rec, 1)?.to_string(),
                        node_b: field(&rec, 2)?.to_string(),
                        score: field(&rec, 3)?.parse().map_err(bad_num)?,
                    });
                }
                Payload::Ranking(RankingDoc { entries })
            }
            Some("node_a") => {
                let mut removed = Vec::new();
                let mut summary: Option<(String, usize, usize, usize, f64, f64)> = None;
                for rec in reader.records() {
                    let rec = rec.map_err(bad_csv)?;
                    removed.push(RestoreRow {
                        node_a: field(&rec, 0)?.to_string(),
                        node_b: field(&rec, 1)?.to_string(),
                        pre_rank: field(&rec, 2)?.parse().map_err(bad_num)?,
                        post_rank: field(&rec, 3)?.parse().map_err(bad_num)?,
                    });
                    if summary.is_none() {
                        summary = Some((
                            field(&rec, 4)?.to_string(),
                            field(&rec, 5)?.parse().map_err(bad_num)?,
                            field(&rec, 6)?.parse().map_err(bad_num)?,
                            field(&rec, 7)?.parse().map_err(bad_num)?,
                            field(&rec, 8)?.parse().map_err(bad_num)?,
                            field(&rec, 9)?.parse().map_err(bad_num)?,
                        ));
                    }
                }
                let (scenario, m, m_plus, k, q, eta) = summary.ok_or_else(|| {
                    Error::InvalidConfig("restoration CSV document has no rows".into())
                })?;
                Payload::Restoration(RestorationDoc { scenario, m, m_plus, k, q, eta, removed })
            }
            Some("removal_method") => {
                let mut rows = Vec::new();
                for rec in reader.records() {
                    let rec = rec.map_err(bad_csv)?;
                    rows.push(GridRow {
                        removal_method: field(&rec, 0)?.to_string(),
                        creation_method: field(&rec, 1)?.to_string(),
                        mean_q: field(&rec, 2)?.parse().map_err(bad_num)?,
                        std_q: field(&rec, 3)?.parse().map_err(bad_num)?,
                        mean_eta: field(&rec, 4)?.parse().map_err(bad_num)?,
                        std_eta: field(&rec, 5)?.parse().map_err(bad_num)?,
                        n_valid: field(&rec, 6)?.parse().map_err(bad_num)?,
                    });
                }
                Payload::Experiment(ExperimentDoc { rows })
            }
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unrecognized CSV header {other:?}"
                )))
            }
        };
        Ok(OutputRecord { schema_version, command, payload })
    }
}

fn bad_csv(e: csv::Error) -> Error {
    Error::InvalidConfig(format!("cannot parse CSV document: {e}"))
}

fn bad_num<E: std::fmt::Display>(e: E) -> Error {
    Error::InvalidConfig(format!("cannot parse CSV field: {e}"))
}

fn field<'a>(rec: &'a csv::StringRecord, i: usize) -> Result<&'a str> {
    rec.get(i)
        .ok_or_else(|| Error::InvalidConfig(format!("CSV row missing column {i}")))
}
