use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::pipeline::EvalRecord;

#[derive(Debug, Error)]
#[error("writing {path}: {message}")]
pub struct IoFailure {
    pub path: String,
    pub message: String,
}

pub const CSV_HEADER: &str = "dataset,model,variant,task,precision,recall,f1,deduction_rate,n_items,n_unknown";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportFiles {
    pub json: PathBuf,
    pub csv: PathBuf,
    pub transcripts: PathBuf,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn metrics_csv(records: &[&EvalRecord]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in records {
        let m = &r.metrics;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&r.dataset),
            csv_field(&r.model),
            r.variant,
            r.task,
            m.precision,
            m.recall,
            m.f1,
            m.deduction_rate,
            r.n_items(),
            m.counts.unknown
        )
        .expect("writing to a string");
    }
    out
}

#[derive(Serialize)]
struct TranscriptLine<'a> {
    dataset: &'a str,
    model: &'a str,
    variant: String,
    task: String,
    #[serde(flatten)]
    item: &'a crate::pipeline::ItemResult,
}

/// Writes `report.json`, `metrics.csv` and `transcripts.jsonl` into `dir`,
/// records ordered by dataset, model, variant and task.
pub fn write_report(records: &[EvalRecord], dir: &Path) -> Result<ReportFiles, IoFailure> {
    let io = |path: &Path, e: &dyn std::fmt::Display| IoFailure { path: path.display().to_string(), message: e.to_string() };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, &e))?;
    let mut sorted: Vec<&EvalRecord> = records.iter().collect();
    sorted.sort_by(|a, b| (&a.dataset, &a.model, a.variant, a.task).cmp(&(&b.dataset, &b.model, b.variant, b.task)));

    let files = ReportFiles { json: dir.join("report.json"), csv: dir.join("metrics.csv"), transcripts: dir.join("transcripts.jsonl") };
    let json = serde_json::to_string_pretty(&sorted).map_err(|e| io(&files.json, &e))? + "\n";
    std::fs::write(&files.json, json).map_err(|e| io(&files.json, &e))?;
    std::fs::write(&files.csv, metrics_csv(&sorted)).map_err(|e| io(&files.csv, &e))?;

    let mut lines = String::new();
    for r in &sorted {
        for item in &r.items {
            let line =
                TranscriptLine { dataset: &r.dataset, model: &r.model, variant: r.variant.to_string(), task: r.task.to_string(), item };
            lines += &serde_json::to_string(&line).map_err(|e| io(&files.transcripts, &e))?;
            lines.push('\n');
        }
    }
    std::fs::write(&files.transcripts, lines).map_err(|e| io(&files.transcripts, &e))?;
    Ok(files)
}
