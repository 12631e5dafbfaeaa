//! Task datasets: item types, JSON lines I/O, and the generators that turn
//! ontologies into labelled items.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::seq::index;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Assertion, Name, Ontology};
use crate::parser::CorruptError;
use crate::reasoner::{Implication, Query, ReasonError};
use crate::rng::seeded;

mod build;
mod mis;
mod negatives;
mod probe;

pub use build::{instance_item, probe_items, query_item, satisfiability_items, subsumption_item, syntax_item, ItemOptions};
pub use mis::{consistent_counterpart, extract_mis, is_minimal, MisResult};
pub use negatives::{perturb, verify_negative, NegativeCheck};
pub use probe::{build_functional_probe, build_inverse_probe, next_placeholder};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("no assertion uses role {0}")]
    NoAssertionForRole(Name),
    #[error("role {0} is not declared functional")]
    RoleNotFunctional(String),
    #[error("ontology is satisfiable; there is no inconsistent subset to extract")]
    OntologySatisfiable,
    #[error("cannot sample {requested} of {available} items")]
    SampleTooLarge { requested: usize, available: usize },
    #[error("name {0} already occurs in the ontology")]
    NameInUse(Name),
    #[error("generated statement {statement} failed verification: {reason}")]
    Unverified { statement: String, reason: String },
    #[error("invalid item {id}: {reason}")]
    InvalidItem { id: String, reason: String },
    #[error(transparent)]
    Reason(#[from] ReasonError),
    #[error(transparent)]
    Corrupt(#[from] CorruptError),
    #[error("line {line}: {message}")]
    Json { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Syntax,
    Subsumption,
    Instance,
    ProbeInverse,
    ProbeFunctional,
    Query,
    Satisfiability,
}

impl Task {
    pub const ALL: [Task; 7] =
        [Task::Syntax, Task::Subsumption, Task::Instance, Task::ProbeInverse, Task::ProbeFunctional, Task::Query, Task::Satisfiability];

    pub fn as_str(self) -> &'static str {
        match self {
            Task::Syntax => "syntax",
            Task::Subsumption => "subsumption",
            Task::Instance => "instance",
            Task::ProbeInverse => "probe_inverse",
            Task::ProbeFunctional => "probe_functional",
            Task::Query => "query",
            Task::Satisfiability => "satisfiability",
        }
    }

    pub fn is_probe(self) -> bool {
        matches!(self, Task::ProbeInverse | Task::ProbeFunctional)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.replace('-', "_");
        Task::ALL.iter().find(|t| t.as_str().eq_ignore_ascii_case(&s)).copied().ok_or_else(|| format!("unknown task {s:?}"))
    }
}

/// One thing the model is asked about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    Implication(Implication),
    /// Raw axiom text, possibly malformed (syntax task).
    Text(String),
    Query(Query),
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Question::Implication(i) => i.fmt(f),
            Question::Text(t) => f.write_str(t),
            Question::Query(q) => q.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Gold {
    Bool(bool),
    Answers(BTreeSet<Vec<Name>>),
}

impl Gold {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Gold::Bool(b) => Some(*b),
            Gold::Answers(_) => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskItem {
    pub id: String,
    pub task: Task,
    pub ontology: Ontology,
    pub statements: Vec<Question>,
    pub gold: Vec<Gold>,
    /// Per-statement notes (applied error class, deriving rule, perturbation).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub provenance: Provenance,
}

impl TaskItem {
    pub fn validate(&self) -> Result<(), DatasetError> {
        let bad = |reason: String| Err(DatasetError::InvalidItem { id: self.id.clone(), reason });
        match self.task {
            Task::Satisfiability => {
                if !self.statements.is_empty() || self.gold.len() != 1 || self.gold[0].as_bool().is_none() {
                    return bad("a satisfiability item has no statements and one boolean gold".into());
                }
            }
            Task::Query => {
                if self.statements.len() != self.gold.len() {
                    return bad(format!("{} queries, {} answer sets", self.statements.len(), self.gold.len()));
                }
                let ok =
                    self.statements.iter().zip(&self.gold).all(|(s, g)| matches!(s, Question::Query(_)) && matches!(g, Gold::Answers(_)));
                if !ok {
                    return bad("query items pair queries with answer sets".into());
                }
            }
            _ => {
                if self.statements.len() != self.gold.len() {
                    return bad(format!("{} statements, {} gold labels", self.statements.len(), self.gold.len()));
                }
                if self.gold.iter().any(|g| g.as_bool().is_none()) {
                    return bad("gold labels must be booleans".into());
                }
            }
        }
        if !self.labels.is_empty() && self.labels.len() != self.statements.len() {
            return bad("labels do not align with statements".into());
        }
        Ok(())
    }

    /// Boolean gold labels (empty for query items).
    pub fn gold_bools(&self) -> Vec<bool> {
        self.gold.iter().filter_map(Gold::as_bool).collect()
    }

    /// Number of answers the model must give.
    pub fn answer_count(&self) -> usize {
        self.gold.len()
    }
}

pub fn write_jsonl<'a>(items: impl IntoIterator<Item = &'a TaskItem>, mut out: impl Write) -> Result<(), DatasetError> {
    for item in items {
        let line = serde_json::to_string(item).map_err(|e| DatasetError::Json { line: 0, message: e.to_string() })?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_jsonl(input: impl BufRead) -> Result<Vec<TaskItem>, DatasetError> {
    let mut items = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let item: TaskItem = serde_json::from_str(&line).map_err(|e| DatasetError::Json { line: i + 1, message: e.to_string() })?;
        item.validate()?;
        items.push(item);
    }
    Ok(items)
}

/// Uniform sample of `n` items without replacement, in their original order.
pub fn sample_subset<T: Clone>(items: &[T], n: usize, seed: u64) -> Result<Vec<T>, DatasetError> {
    if n > items.len() {
        return Err(DatasetError::SampleTooLarge { requested: n, available: items.len() });
    }
    let mut picked = index::sample(&mut seeded(seed, "sample"), items.len(), n).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| items[i].clone()).collect())
}

/// Removes `count` seeded-random concept assertions, returning the reduced
/// ontology and the removed facts in canonical order.
pub fn remove_concept_assertions(o: &Ontology, count: usize, seed: u64) -> Result<(Ontology, Vec<Assertion>), DatasetError> {
    let concepts: Vec<Assertion> = o.abox().iter().filter(|a| matches!(a, Assertion::Concept { .. })).cloned().collect();
    let removed = sample_subset(&concepts, count, seed)?;
    let mut out = o.clone();
    for a in &removed {
        out.remove_assertion(a);
    }
    Ok((out, removed))
}
