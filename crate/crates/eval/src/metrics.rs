use std::collections::BTreeSet;

use dllite::model::Name;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::verdict::Verdict;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoreError {
    #[error("{verdicts} verdicts for {gold} gold labels")]
    LengthMismatch { verdicts: usize, gold: usize },
    #[error("answer tuples of arity {0} and {1} cannot be compared")]
    ArityMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Share of gold-true items answered True.
    pub deduction_rate: f64,
    pub counts: Counts,
}

/// What to do with answers that could not be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownPolicy {
    /// Count as the opposite of gold.
    AsError,
    /// Leave out of the confusion counts (still tallied in `unknown`).
    Exclude,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

impl Metrics {
    pub fn from_counts(counts: Counts) -> Metrics {
        let precision = ratio(counts.tp, counts.tp + counts.fp);
        let recall = ratio(counts.tp, counts.tp + counts.fn_);
        Metrics { precision, recall, f1: f1(precision, recall), deduction_rate: recall, counts }
    }
}

pub fn score_binary_with(verdicts: &[Verdict], gold: &[bool], policy: UnknownPolicy) -> Result<Metrics, ScoreError> {
    if verdicts.len() != gold.len() {
        return Err(ScoreError::LengthMismatch { verdicts: verdicts.len(), gold: gold.len() });
    }
    let mut c = Counts::default();
    for (v, g) in verdicts.iter().zip(gold) {
        match (v, g, policy) {
            (Verdict::True, true, _) => c.tp += 1,
            (Verdict::True, false, _) => c.fp += 1,
            (Verdict::False, false, _) => c.tn += 1,
            (Verdict::False, true, _) => c.fn_ += 1,
            (Verdict::Unknown, g, p) => {
                c.unknown += 1;
                match (g, p) {
                    (_, UnknownPolicy::Exclude) => {}
                    (true, UnknownPolicy::AsError) => c.fn_ += 1,
                    (false, UnknownPolicy::AsError) => c.fp += 1,
                }
            }
        }
    }
    Ok(Metrics::from_counts(c))
}

/// Precision, recall and F1 with "true" as the positive class; an Unknown
/// verdict is always wrong.
pub fn score_binary(verdicts: &[Verdict], gold: &[bool]) -> Result<Metrics, ScoreError> {
    score_binary_with(verdicts, gold, UnknownPolicy::AsError)
}

/// Share of items answered True, for statement sets that are all entailed.
pub fn deduction_rate(verdicts: &[Verdict]) -> f64 {
    ratio(verdicts.iter().filter(|v| **v == Verdict::True).count(), verdicts.len())
}

/// Set precision and recall of answer tuples. An empty side contributes 0
/// to its ratio, except that two empty sets agree perfectly.
pub fn score_query(predicted: &BTreeSet<Vec<Name>>, gold: &BTreeSet<Vec<Name>>) -> Result<(f64, f64), ScoreError> {
    let mut arity = None;
    for t in predicted.iter().chain(gold) {
        match arity {
            None => arity = Some(t.len()),
            Some(a) if a != t.len() => return Err(ScoreError::ArityMismatch(a, t.len())),
            Some(_) => {}
        }
    }
    if predicted.is_empty() && gold.is_empty() {
        return Ok((1.0, 1.0));
    }
    let hits = predicted.intersection(gold).count();
    Ok((ratio(hits, predicted.len()), ratio(hits, gold.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dllite::model::name;
    use Verdict::*;

    fn set(rows: &[&[&str]]) -> BTreeSet<Vec<Name>> {
        rows.iter().map(|r| r.iter().map(|n| name(n)).collect()).collect()
    }

    #[test]
    fn binary_examples() {
        let m = score_binary(&[True, False, True], &[true, false, true]).unwrap();
        assert_eq!((m.precision, m.recall, m.f1), (1.0, 1.0, 1.0));
        // tp=1 (item 1), fp=1 (item 2), fn=1 (item 3), tn=1 (item 4)
        let m = score_binary(&[True, True, False, False], &[true, false, true, false]).unwrap();
        assert_eq!(m.counts, Counts { tp: 1, fp: 1, tn: 1, fn_: 1, unknown: 0 });
        assert_eq!((m.precision, m.recall, m.f1), (0.5, 0.5, 0.5));
        let m = score_binary(&[Unknown; 4], &[true, false, true, false]).unwrap();
        assert_eq!((m.precision, m.recall, m.f1), (0.0, 0.0, 0.0));
        assert_eq!(m.counts, Counts { tp: 0, fp: 2, tn: 0, fn_: 2, unknown: 4 });
        assert_eq!(score_binary(&[True], &[]), Err(ScoreError::LengthMismatch { verdicts: 1, gold: 0 }));
    }

    #[test]
    fn excluding_unknowns() {
        let v = [True, Unknown, False, Unknown];
        let g = [true, false, true, true];
        let m = score_binary_with(&v, &g, UnknownPolicy::Exclude).unwrap();
        assert_eq!(m.counts, Counts { tp: 1, fp: 0, tn: 0, fn_: 1, unknown: 2 });
        assert_eq!((m.precision, m.recall), (1.0, 0.5));
        let m = score_binary(&v, &g).unwrap();
        assert_eq!(m.counts, Counts { tp: 1, fp: 1, tn: 0, fn_: 2, unknown: 2 });
    }

    #[test]
    fn deduction_rates() {
        assert_eq!(deduction_rate(&[True; 8]), 1.0);
        assert_eq!(deduction_rate(&[True, False, True, Unknown, True, False, True, False]), 0.5);
        // five of eight confirmed
        assert_eq!(deduction_rate(&[True, True, True, True, True, False, Unknown, False]), 0.625);
        assert_eq!(deduction_rate(&[]), 0.0);
    }

    #[test]
    fn query_scores() {
        let john = set(&[&["John"]]);
        assert_eq!(score_query(&john, &john), Ok((1.0, 1.0)));
        assert_eq!(score_query(&set(&[]), &john), Ok((0.0, 0.0)));
        assert_eq!(score_query(&set(&[&["John"], &["Mary"]]), &john), Ok((0.5, 1.0)));
        assert_eq!(score_query(&set(&[]), &set(&[])), Ok((1.0, 1.0)));
        assert_eq!(score_query(&set(&[&["John", "Mary"]]), &john), Err(ScoreError::ArityMismatch(2, 1)));
    }
}
