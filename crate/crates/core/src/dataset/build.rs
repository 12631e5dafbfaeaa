use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::negatives::{perturb, verify_negative};
use super::probe::{build_functional_probe, build_inverse_probe};
use super::{consistent_counterpart, extract_mis, sample_subset, DatasetError, Gold, Provenance, Question, Task, TaskItem};
use crate::model::{name, Assertion, Axiom, Name, Notation, Ontology};
use crate::parser::{corrupt_with, parse_line_with, CorruptError, Statement, Vocabulary};
use crate::reasoner::{Implication, Query, Reasoner};
use crate::rng::seeded;

#[derive(Debug, Clone)]
pub struct ItemOptions {
    /// Dataset name recorded in provenance and ids.
    pub source: String,
    pub seed: u64,
    /// Number of true statements (or axioms, or probes) to draw.
    pub size: usize,
    /// Number of false statements to add.
    pub negatives: usize,
}

impl ItemOptions {
    pub fn new(source: &str, seed: u64, size: usize) -> ItemOptions {
        ItemOptions { source: source.to_string(), seed, size, negatives: 0 }
    }

    fn provenance(&self, generator: &str) -> Provenance {
        Provenance { generator: generator.to_string(), seed: self.seed, source: Some(self.source.clone()), params: BTreeMap::new() }
    }

    fn id(&self, task: Task) -> String {
        format!("{}:{}:{}", task, self.source, self.seed)
    }
}

/// Axioms drawn from `axioms`, a `corrupt_fraction` share of them broken by
/// a random applicable error class.
pub fn syntax_item(axioms: &[Axiom], corrupt_fraction: f64, vocab: &Vocabulary, opts: &ItemOptions) -> Result<TaskItem, DatasetError> {
    let picked = sample_subset(axioms, opts.size.min(axioms.len()), opts.seed)?;
    let mut rng = seeded(opts.seed, "syntax-item");
    let (mut statements, mut gold, mut labels) = (Vec::new(), Vec::new(), Vec::new());
    for ax in &picked {
        let broken = rng.gen_bool(corrupt_fraction.clamp(0.0, 1.0));
        let seed = rng.gen();
        let (text, label) = if broken {
            match corrupt_with(ax, None, seed, Notation::Unicode, vocab) {
                Ok(c) => (c.text, c.class.to_string()),
                Err(CorruptError::NothingApplicable(_)) => (ax.to_string(), "valid".to_string()),
                Err(e) => return Err(e.into()),
            }
        } else {
            (ax.to_string(), "valid".to_string())
        };
        let valid = label == "valid";
        match parse_line_with(&text, Notation::Unicode, vocab) {
            Ok(Statement::Axiom(back)) if valid && back == *ax => {}
            Err(_) if !valid => {}
            other => return Err(DatasetError::Unverified { statement: text, reason: format!("labelled {label} but parses as {other:?}") }),
        }
        statements.push(Question::Text(text));
        gold.push(Gold::Bool(valid));
        labels.push(label);
    }
    let mut provenance = opts.provenance("syntax");
    provenance.params.insert("corrupt_fraction".into(), corrupt_fraction.to_string());
    Ok(TaskItem { id: opts.id(Task::Syntax), task: Task::Syntax, ontology: Ontology::default(), statements, gold, labels, provenance })
}

/// Adds up to `opts.negatives` verified false perturbations of `positives`
/// and shuffles everything into one item.
fn with_negatives(
    task: Task,
    o: &Ontology,
    r: &Reasoner,
    positives: Vec<(Implication, String)>,
    opts: &ItemOptions,
) -> Result<TaskItem, DatasetError> {
    let mut rng = seeded(opts.seed, "negatives");
    let sig = o.signature();
    let seen: BTreeSet<String> = positives.iter().map(|(p, _)| p.to_string()).collect();
    let mut negatives: Vec<(Implication, String)> = Vec::new();
    let mut tried = BTreeSet::new();
    let mut order: Vec<usize> = (0..positives.len()).collect();
    order.shuffle(&mut rng);
    'outer: for round in 0..3 {
        for &i in &order {
            if negatives.len() >= opts.negatives {
                break 'outer;
            }
            let offset = rng.gen_range(0..64) + round;
            for (kind, cand) in perturb(&positives[i].0, &sig, offset) {
                let text = cand.to_string();
                if seen.contains(&text) || !tried.insert(text) {
                    continue;
                }
                if verify_negative(o, r, &cand)?.usable() {
                    negatives.push((cand, format!("negative:{kind}")));
                    break;
                }
            }
        }
    }
    let mut all: Vec<(Implication, String, bool)> =
        positives.into_iter().map(|(p, l)| (p, l, true)).chain(negatives.into_iter().map(|(n, l)| (n, l, false))).collect();
    all.shuffle(&mut rng);
    let mut provenance = opts.provenance(task.as_str());
    provenance.params.insert("negatives".into(), opts.negatives.to_string());
    Ok(TaskItem {
        id: opts.id(task),
        task,
        ontology: o.clone(),
        gold: all.iter().map(|(_, _, g)| Gold::Bool(*g)).collect(),
        labels: all.iter().map(|(_, l, _)| l.clone()).collect(),
        statements: all.into_iter().map(|(i, _, _)| Question::Implication(i)).collect(),
        provenance,
    })
}

fn rule_label(steps: &[crate::reasoner::Step]) -> String {
    steps.last().map(|s| format!("derived:{}", s.rule)).unwrap_or_else(|| "derived".into())
}

/// Derived inclusions of the TBox, sampled, plus perturbed negatives.
pub fn subsumption_item(o: &Ontology, opts: &ItemOptions) -> Result<TaskItem, DatasetError> {
    let t = o.tbox_only();
    let r = Reasoner::new(&t);
    let all = r.tbox_implications();
    let picked = sample_subset(&all, opts.size.min(all.len()), opts.seed)?;
    let mut positives = Vec::new();
    for p in picked {
        let Implication::Inclusion(ax) = &p else { continue };
        let e = r.entails_inclusion(ax);
        if !e.entailed {
            return Err(DatasetError::Unverified { statement: p.to_string(), reason: "not entailed".into() });
        }
        positives.push((p, rule_label(&e.steps)));
    }
    with_negatives(Task::Subsumption, &t, &r, positives, opts)
}

/// Derived facts about named individuals, sampled, plus perturbed negatives.
pub fn instance_item(o: &Ontology, opts: &ItemOptions) -> Result<TaskItem, DatasetError> {
    let r = Reasoner::new(o);
    let all = r.abox_implications()?;
    let picked = sample_subset(&all, opts.size.min(all.len()), opts.seed)?;
    let mut positives = Vec::new();
    for p in picked {
        let e = r.entails_assertion(&p)?;
        if !e.entailed {
            return Err(DatasetError::Unverified { statement: p.to_string(), reason: "not entailed".into() });
        }
        positives.push((p, rule_label(&e.steps)));
    }
    with_negatives(Task::Instance, o, &r, positives, opts)
}

fn fresh_inverse_name(o: &Ontology, role: &Name) -> Name {
    let sig = o.signature();
    let taken = |n: &Name| sig.roles.contains(n) || sig.concepts.contains(n) || sig.individuals.contains(n);
    (0..)
        .map(|i| if i == 0 { name(&format!("{role}Inverse")) } else { name(&format!("{role}Inverse{i}")) })
        .find(|n| !taken(n))
        .expect("unbounded")
}

/// One item probing up to `opts.size` roles: inverse-role probes for roles
/// with assertions, or functionality probes for declared functional roles.
pub fn probe_items(o: &Ontology, task: Task, opts: &ItemOptions) -> Result<TaskItem, DatasetError> {
    let mut current = o.clone();
    let mut statements = Vec::new();
    let mut labels = Vec::new();
    match task {
        Task::ProbeInverse => {
            let roles: Vec<Name> = o
                .abox()
                .iter()
                .filter_map(|a| match a {
                    Assertion::Role { role, .. } => Some(role.clone()),
                    _ => None,
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let roles = sample_subset(&roles, opts.size.min(roles.len()), opts.seed)?;
            for (i, role) in roles.iter().enumerate() {
                let fresh = fresh_inverse_name(&current, role);
                let (next, imp) = build_inverse_probe(&current, role, &fresh, opts.seed.wrapping_add(i as u64))?;
                current = next;
                statements.push(imp);
                labels.push(format!("inverse:{role}"));
            }
        }
        Task::ProbeFunctional => {
            let declared: Vec<(Name, bool)> = o
                .tbox()
                .iter()
                .filter_map(|a| match a {
                    Axiom::Funct(r) => Some((r.name.clone(), r.inverse)),
                    _ => None,
                })
                .collect();
            for (i, (role, inverse)) in declared.iter().enumerate() {
                if statements.len() >= opts.size {
                    break;
                }
                match build_functional_probe(&current, role, *inverse, opts.seed.wrapping_add(i as u64)) {
                    Ok((next, imp)) => {
                        current = next;
                        statements.push(imp);
                        labels.push(format!("functional:{role}{}", if *inverse { "⁻" } else { "" }));
                    }
                    Err(DatasetError::NoAssertionForRole(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
        other => return Err(DatasetError::InvalidItem { id: opts.id(other), reason: format!("{other} is not a probe task") }),
    }
    if statements.is_empty() {
        return Err(DatasetError::InvalidItem { id: opts.id(task), reason: "no role qualifies for probing".into() });
    }
    // later probes must not have disturbed earlier ones
    let r = Reasoner::new(&current);
    for imp in &statements {
        let ok = match r.entails_assertion(imp) {
            Ok(e) => e.entailed,
            Err(crate::reasoner::ReasonError::DialectRejected { .. }) => true,
            Err(e) => return Err(e.into()),
        };
        if !ok {
            return Err(DatasetError::Unverified { statement: imp.to_string(), reason: "lost after combining probes".into() });
        }
    }
    Ok(TaskItem {
        id: opts.id(task),
        task,
        ontology: current,
        gold: vec![Gold::Bool(true); statements.len()],
        statements: statements.into_iter().map(Question::Implication).collect(),
        labels,
        provenance: opts.provenance(task.as_str()),
    })
}

pub fn query_item(o: &Ontology, queries: &[Query], depth: usize, opts: &ItemOptions) -> Result<TaskItem, DatasetError> {
    let r = Reasoner::new(o);
    let mut gold = Vec::new();
    for q in queries {
        gold.push(Gold::Answers(r.answer_query(q, depth)?));
    }
    let mut provenance = opts.provenance("query");
    provenance.params.insert("depth".into(), depth.to_string());
    Ok(TaskItem {
        id: opts.id(Task::Query),
        task: Task::Query,
        ontology: o.clone(),
        statements: queries.iter().cloned().map(Question::Query).collect(),
        gold,
        labels: Vec::new(),
        provenance,
    })
}

/// A minimal inconsistent subset (gold false) and its consistent
/// counterpart (gold true).
pub fn satisfiability_items(o: &Ontology, opts: &ItemOptions) -> Result<Vec<TaskItem>, DatasetError> {
    let mis = extract_mis(o, &opts.source, opts.seed)?;
    let counterpart = consistent_counterpart(&mis, opts.seed)?;
    let item = |suffix: &str, ontology: Ontology, sat: bool| {
        let mut provenance = opts.provenance("satisfiability");
        provenance.params.insert("parent".into(), mis.parent.clone());
        provenance.params.insert("part".into(), suffix.to_string());
        TaskItem {
            id: format!("{}:{suffix}", opts.id(Task::Satisfiability)),
            task: Task::Satisfiability,
            ontology,
            statements: Vec::new(),
            gold: vec![Gold::Bool(sat)],
            labels: Vec::new(),
            provenance,
        }
    };
    Ok(vec![item("mis", mis.to_ontology(), false), item("consistent", counterpart, true)])
}
