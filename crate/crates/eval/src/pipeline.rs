//! Items to scored records: render, complete, parse, score.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use dllite::dataset::{Gold, Question, Task, TaskItem};
use dllite::model::Name;
use dllite::prompt::{render_prompt, PromptError, PromptSpec, Variant};
use dllite::reasoner::Query;
use regex::Regex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gateway::{Gateway, GatewayError};
use crate::metrics::{f1, score_binary_with, score_query, Counts, Metrics, ScoreError, UnknownPolicy};
use crate::verdict::{parse_verdicts_with, segments, KeywordRules, Verdict};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("item {item}: {source}")]
    Prompt { item: String, source: PromptError },
    #[error("item {item}: {source}")]
    Gateway { item: String, source: GatewayError },
    #[error("item {item}: {source}")]
    Score { item: String, source: ScoreError },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemResult {
    pub item_id: String,
    pub prompt_hash: String,
    pub response: String,
    pub statements: Vec<String>,
    pub gold: Vec<Gold>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub answers: Vec<BTreeSet<Vec<Name>>>,
}

/// Scores for one (dataset, model, variant, task) cell, with its items.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub dataset: String,
    pub model: String,
    pub variant: Variant,
    pub task: Task,
    pub metrics: Metrics,
    /// The same scores with unreadable answers left out.
    pub metrics_excluding_unknown: Metrics,
    pub items: Vec<ItemResult>,
}

impl EvalRecord {
    pub fn n_items(&self) -> usize {
        self.items.iter().map(|i| i.gold.len()).sum()
    }
}

fn atom_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\b([A-Za-z][A-Za-z0-9_]*)\s*\(([^()]*)\)").expect("valid regex"))
}

/// Answer tuples written as head atoms (`q(John)` or `Q1(John, Mary)`),
/// one numbered segment per query. Atoms of the wrong arity or naming
/// something other than the query head are ignored.
pub fn parse_query_answers(response: &str, queries: &[Query]) -> Vec<BTreeSet<Vec<Name>>> {
    segments(response, queries.len())
        .into_iter()
        .zip(queries)
        .map(|(seg, q)| {
            let mut found = BTreeSet::new();
            let Some(seg) = seg else { return found };
            for c in atom_re().captures_iter(&seg) {
                let head = &c[1];
                if !(head.eq_ignore_ascii_case(q.name.as_str()) || head.eq_ignore_ascii_case("q")) {
                    continue;
                }
                let args: Vec<&str> = c[2].split(',').map(|a| a.trim().trim_matches(['\'', '"'])).collect();
                if args.len() != q.head.len() || args.iter().zip(&q.head).any(|(a, v)| a == v) {
                    continue;
                }
                if let Ok(tuple) = args.iter().map(|a| Name::new(*a)).collect::<Result<Vec<_>, _>>() {
                    found.insert(tuple);
                }
            }
            found
        })
        .collect()
}

fn score_queries(items: &[ItemResult]) -> Result<Metrics, ScoreError> {
    let (mut p_sum, mut r_sum, mut n) = (0.0, 0.0, 0usize);
    let mut counts = Counts::default();
    for item in items {
        for (pred, gold) in item.answers.iter().zip(&item.gold) {
            let Gold::Answers(gold) = gold else { continue };
            let (p, r) = score_query(pred, gold)?;
            p_sum += p;
            r_sum += r;
            n += 1;
            let hits = pred.intersection(gold).count();
            counts.tp += hits;
            counts.fp += pred.len() - hits;
            counts.fn_ += gold.len() - hits;
            counts.unknown += usize::from(pred.is_empty());
        }
    }
    let (precision, recall) = if n == 0 { (0.0, 0.0) } else { (p_sum / n as f64, r_sum / n as f64) };
    Ok(Metrics { precision, recall, f1: f1(precision, recall), deduction_rate: recall, counts })
}

/// Runs every item through `gateway` and scores the lot. Items must all
/// belong to `spec.task`.
pub fn evaluate(dataset: &str, items: &[TaskItem], spec: &PromptSpec, gateway: &Gateway) -> Result<EvalRecord, PipelineError> {
    let mut conversations = Vec::with_capacity(items.len());
    for item in items {
        conversations.push(render_prompt(spec, item).map_err(|source| PipelineError::Prompt { item: item.id.clone(), source })?);
    }
    let exchanges = gateway.complete_all(&conversations);
    let mut results = Vec::with_capacity(items.len());
    for (item, ex) in items.iter().zip(exchanges) {
        let ex = ex.map_err(|source| PipelineError::Gateway { item: item.id.clone(), source })?;
        let (verdicts, answers) = match item.task {
            Task::Query => {
                let queries: Vec<Query> = item
                    .statements
                    .iter()
                    .filter_map(|s| match s {
                        Question::Query(q) => Some(q.clone()),
                        _ => None,
                    })
                    .collect();
                (Vec::new(), parse_query_answers(&ex.response, &queries))
            }
            _ => (parse_verdicts_with(&ex.response, item.gold.len(), KeywordRules::builtin()), Vec::new()),
        };
        results.push(ItemResult {
            item_id: item.id.clone(),
            prompt_hash: ex.hash,
            response: ex.response,
            statements: item.statements.iter().map(|s| s.to_string()).collect(),
            gold: item.gold.clone(),
            verdicts,
            answers,
        });
    }
    let (metrics, excluding) = score_items(spec.task, &results)?;
    Ok(EvalRecord {
        dataset: dataset.to_string(),
        model: gateway.config.model.clone(),
        variant: spec.variant,
        task: spec.task,
        metrics,
        metrics_excluding_unknown: excluding,
        items: results,
    })
}

/// Metrics for parsed items: Unknown counted as an error, then excluded.
/// Query items score by answer sets and report the same figures twice.
pub fn score_items(task: Task, results: &[ItemResult]) -> Result<(Metrics, Metrics), PipelineError> {
    let score_err = |source| PipelineError::Score { item: "*".into(), source };
    if task == Task::Query {
        let m = score_queries(results).map_err(score_err)?;
        return Ok((m, m));
    }
    let mut verdicts = Vec::new();
    let mut gold = Vec::new();
    for r in results {
        let g: Vec<bool> = r.gold.iter().filter_map(Gold::as_bool).collect();
        if g.len() != r.verdicts.len() {
            return Err(PipelineError::Score {
                item: r.item_id.clone(),
                source: ScoreError::LengthMismatch { verdicts: r.verdicts.len(), gold: g.len() },
            });
        }
        verdicts.extend_from_slice(&r.verdicts);
        gold.extend(g);
    }
    Ok((
        score_binary_with(&verdicts, &gold, UnknownPolicy::AsError).map_err(score_err)?,
        score_binary_with(&verdicts, &gold, UnknownPolicy::Exclude).map_err(score_err)?,
    ))
}

/// Parses the stored responses again under `rules` and recomputes the
/// scores, leaving everything else as it was.
pub fn rescore(record: &EvalRecord, rules: &KeywordRules) -> Result<EvalRecord, PipelineError> {
    let mut out = record.clone();
    for item in &mut out.items {
        if record.task == Task::Query {
            let queries: Vec<Query> = item.statements.iter().filter_map(|s| Query::parse(s).ok()).collect();
            item.answers = parse_query_answers(&item.response, &queries);
        } else {
            item.verdicts = parse_verdicts_with(&item.response, item.gold.len(), rules);
        }
    }
    let (metrics, excluding) = score_items(record.task, &out.items)?;
    out.metrics = metrics;
    out.metrics_excluding_unknown = excluding;
    Ok(out)
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Everything needed to repeat a run against a warm cache. Holds no clock
/// readings, so replays write identical manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    /// The run configuration as given, after flag overrides.
    pub config: serde_json::Value,
    pub seeds: Vec<u64>,
    /// Input path to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_answers_from_head_atoms() {
        let q = vec![Query::parse("Q1(x) <- Student(x)").unwrap(), Query::parse("Q2(x, y) <- R(x, y)").unwrap()];
        let r = "1. From axiom 5 we know PhDStudent(John). The answer is q(John).\n2. Q2(Ann, Bob), Q2(x, y), Q2(Ann) and Q2('Cid', Dan)";
        let a = parse_query_answers(r, &q);
        assert_eq!(a[0], [vec![Name::new("John").unwrap()]].into_iter().collect());
        let pairs: Vec<String> = a[1].iter().map(|t| format!("{}-{}", t[0], t[1])).collect();
        assert_eq!(pairs, vec!["Ann-Bob", "Cid-Dan"]);
    }
}
