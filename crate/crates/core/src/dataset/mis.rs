use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::DatasetError;
use crate::model::{Assertion, Axiom, Ontology};
use crate::parser::Statement;
use crate::reasoner::{ReasonError, Reasoner};
use crate::rng::seeded;

/// A minimal inconsistent subset of some ontology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisResult {
    pub subset: Vec<Statement>,
    pub parent: String,
}

impl MisResult {
    pub fn to_ontology(&self) -> Ontology {
        assemble(self.subset.iter())
    }
}

fn assemble<'a>(parts: impl Iterator<Item = &'a Statement>) -> Ontology {
    let mut tbox: Vec<Axiom> = Vec::new();
    let mut abox: Vec<Assertion> = Vec::new();
    for p in parts {
        match p {
            Statement::Axiom(a) => tbox.push(a.clone()),
            Statement::Assertion(a) => abox.push(a.clone()),
        }
    }
    Ontology::new(tbox, abox)
}

fn elements(o: &Ontology) -> Vec<Statement> {
    o.tbox().iter().cloned().map(Statement::Axiom).chain(o.abox().iter().cloned().map(Statement::Assertion)).collect()
}

fn satisfiable(parts: &[&Statement]) -> Result<bool, ReasonError> {
    Reasoner::new(&assemble(parts.iter().copied())).is_satisfiable()
}

/// Deletion-based minimization: visits the elements in seeded random order
/// and drops each one whose removal leaves the rest unsatisfiable.
pub fn extract_mis(o: &Ontology, parent: &str, seed: u64) -> Result<MisResult, DatasetError> {
    if Reasoner::new(o).is_satisfiable()? {
        return Err(DatasetError::OntologySatisfiable);
    }
    let all = elements(o);
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.shuffle(&mut seeded(seed, "mis"));
    let mut keep = vec![true; all.len()];
    for i in order {
        keep[i] = false;
        let rest: Vec<&Statement> = all.iter().zip(&keep).filter(|(_, k)| **k).map(|(s, _)| s).collect();
        if satisfiable(&rest)? {
            keep[i] = true;
        }
    }
    let subset = all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect();
    Ok(MisResult { subset, parent: parent.to_string() })
}

/// Unsatisfiable, and satisfiable after removing any single element.
pub fn is_minimal(mis: &MisResult) -> Result<bool, ReasonError> {
    let all: Vec<&Statement> = mis.subset.iter().collect();
    if satisfiable(&all)? {
        return Ok(false);
    }
    for skip in 0..all.len() {
        let rest: Vec<&Statement> = all.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, s)| *s).collect();
        if !satisfiable(&rest)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops one seeded-random element of the subset.
pub fn consistent_counterpart(mis: &MisResult, seed: u64) -> Result<Ontology, DatasetError> {
    let drop =
        *(0..mis.subset.len()).collect::<Vec<_>>().choose(&mut seeded(seed, "counterpart")).ok_or(DatasetError::OntologySatisfiable)?;
    let out = assemble(mis.subset.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, s)| s));
    if !Reasoner::new(&out).is_satisfiable()? {
        return Err(DatasetError::Unverified {
            statement: mis.subset[drop].to_string(),
            reason: "removing it leaves an unsatisfiable set; the subset is not minimal".into(),
        });
    }
    Ok(out)
}
