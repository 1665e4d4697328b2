//! CSV and JSON emission.
//!
//! CSV columns are fixed:
//! `algorithm,n,m,mode,trial,seed,comparisons,evaluations,edge_queries,outer_rounds,found`.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use qclaw_core::adversary::FamilySummary;
use qclaw_core::error::Result;
use qclaw_core::fit::FitResult;

use crate::FormatArg;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub mode: String,
    pub trial: usize,
    pub seed: u64,
    pub comparisons: f64,
    pub evaluations: f64,
    pub edge_queries: f64,
    pub outer_rounds: f64,
    pub found: String,
    #[serde(skip)]
    pub witnessed: bool,
}

pub const CSV_HEADER: &str =
    "algorithm,n,m,mode,trial,seed,comparisons,evaluations,edge_queries,outer_rounds,found";

fn emit(text: String, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn rows_csv(rows: &[Row]) -> String {
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.algorithm,
            r.n,
            r.m,
            r.mode,
            r.trial,
            r.seed,
            r.comparisons,
            r.evaluations,
            r.edge_queries,
            r.outer_rounds,
            r.found
        ));
    }
    text
}

pub fn write_rows(rows: &[Row], format: FormatArg, out: Option<&Path>) -> Result<()> {
    let text = match format {
        FormatArg::Csv => rows_csv(rows),
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                rows: &'a [Row],
            }
            serde_json::to_string_pretty(&Doc { rows })? + "\n"
        }
    };
    emit(text, out)
}

pub fn write_fit_rows(
    rows: &[Row],
    fit: &FitResult,
    format: FormatArg,
    out: Option<&Path>,
) -> Result<()> {
    let text = match format {
        FormatArg::Csv => rows_csv(rows),
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                rows: &'a [Row],
                fit: &'a FitResult,
            }
            serde_json::to_string_pretty(&Doc { rows, fit })? + "\n"
        }
    };
    emit(text, out)
}

pub fn write_summaries(
    summaries: &[FamilySummary],
    format: FormatArg,
    out: Option<&Path>,
) -> Result<()> {
    let text = match format {
        FormatArg::Csv => {
            let mut text = String::from("kind,n,a_size,b_size,r_size,m,m_prime,l,l_prime,bound\n");
            for s in summaries {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    s.kind.name(),
                    s.n,
                    s.a_size,
                    s.b_size,
                    s.r_size,
                    s.params.m,
                    s.params.m_prime,
                    s.params.l,
                    s.params.l_prime,
                    s.params.bound
                ));
            }
            text
        }
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                rows: &'a [FamilySummary],
            }
            serde_json::to_string_pretty(&Doc { rows: summaries })? + "\n"
        }
    };
    emit(text, out)
}
