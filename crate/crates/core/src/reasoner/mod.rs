//! Rule-based reasoning: PI/NI closure, a bounded chase, satisfiability,
//! entailment and conjunctive query answering.
//!
//! The calculus is exactly the closure and ABox rules listed in [`Rule`].
//! Nothing is added to make it complete; the bounded model finder in
//! [`crate::oracle`] is used in tests to look for gaps.

mod chase;
mod closure;
mod query;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{normalize, Assertion, Axiom, BasicConcept, GeneralConcept, GeneralRole, Name, Notation, Ontology, Role};
use crate::parser::{parse_line, Statement};

pub use chase::{ChaseFact, ChasedAbox, Term};
pub use query::{Atom, Query, QueryTerm};

use chase::chase_internal;
use closure::{Closure, F};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonError {
    #[error("functional role {role} is specialised by {axiom}")]
    DialectRejected { role: String, axiom: String },
    #[error("ontology is unsatisfiable ({0})")]
    UnsatisfiableOntology(String),
    #[error("unsafe query: head variable {0} does not occur in the body")]
    UnsafeQuery(String),
    #[error("cannot parse query: {0}")]
    QueryParse(String),
    #[error("cannot parse implication: {0}")]
    ImplicationParse(String),
}

/// Inference rule identifiers, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    PI1,
    PI2,
    NI1,
    NI2,
    NI3,
    NI4,
    NI5,
    NI6,
    NI7,
    NI8,
    NI9,
    NI10,
    NI11,
    ABX1,
    ABX2,
    ABX3,
    ABX4,
    ABX5,
}

impl Rule {
    pub const ALL: [Rule; 18] = [
        Rule::PI1,
        Rule::PI2,
        Rule::NI1,
        Rule::NI2,
        Rule::NI3,
        Rule::NI4,
        Rule::NI5,
        Rule::NI6,
        Rule::NI7,
        Rule::NI8,
        Rule::NI9,
        Rule::NI10,
        Rule::NI11,
        Rule::ABX1,
        Rule::ABX2,
        Rule::ABX3,
        Rule::ABX4,
        Rule::ABX5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::PI1 => "PI1",
            Rule::PI2 => "PI2",
            Rule::NI1 => "NI1",
            Rule::NI2 => "NI2",
            Rule::NI3 => "NI3",
            Rule::NI4 => "NI4",
            Rule::NI5 => "NI5",
            Rule::NI6 => "NI6",
            Rule::NI7 => "NI7",
            Rule::NI8 => "NI8",
            Rule::NI9 => "NI9",
            Rule::NI10 => "NI10",
            Rule::NI11 => "NI11",
            Rule::ABX1 => "ABX1",
            Rule::ABX2 => "ABX2",
            Rule::ABX3 => "ABX3",
            Rule::ABX4 => "ABX4",
            Rule::ABX5 => "ABX5",
        }
    }

    pub fn is_tbox_rule(self) -> bool {
        self < Rule::ABX1
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One rule application: premises in rule order (α then β).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: Rule,
    pub premises: Vec<Axiom>,
}

/// A step of an explanation, rendered as text so that TBox and ABox steps
/// share one shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub premises: Vec<String>,
    pub conclusion: String,
}

/// Closure of a TBox. Every member is an input, a reflexive entry, or has a
/// chosen derivation whose premises are members too.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureSet {
    pub axioms: BTreeSet<Axiom>,
    pub inputs: BTreeSet<Axiom>,
    pub reflexive: BTreeSet<Axiom>,
    pub derivations: BTreeMap<Axiom, Derivation>,
}

impl ClosureSet {
    pub fn contains(&self, ax: &Axiom) -> bool {
        self.axioms.contains(&canonical(ax))
    }

    /// Members produced by a rule (not inputs, not reflexive).
    pub fn derived(&self) -> impl Iterator<Item = &Axiom> {
        self.derivations.keys()
    }

    /// Steps proving `ax`, premises before conclusions. Empty for inputs,
    /// reflexive entries and non-members.
    pub fn explain(&self, ax: &Axiom) -> Vec<Step> {
        let mut out = Vec::new();
        let mut done = BTreeSet::new();
        self.explain_into(&canonical(ax), &mut out, &mut done);
        out
    }

    fn explain_into(&self, ax: &Axiom, out: &mut Vec<Step>, done: &mut BTreeSet<Axiom>) {
        if !done.insert(ax.clone()) {
            return;
        }
        if let Some(d) = self.derivations.get(ax) {
            for p in &d.premises {
                self.explain_into(p, out, done);
            }
            out.push(Step {
                rule: d.rule.to_string(),
                premises: d.premises.iter().map(|p| p.to_string()).collect(),
                conclusion: ax.to_string(),
            });
        }
    }
}

/// Rewrites a role axiom so that its left side is not inverted, the form in
/// which closures store them. Concept axioms are returned unchanged.
pub fn canonical(ax: &Axiom) -> Axiom {
    match ax {
        Axiom::RoleIncl { lhs, rhs } if lhs.inverse => {
            let rhs = match rhs {
                GeneralRole::Basic(r) => GeneralRole::Basic(r.inverse()),
                GeneralRole::Neg(r) => GeneralRole::Neg(r.inverse()),
            };
            Axiom::RoleIncl { lhs: lhs.inverse(), rhs }
        }
        other => other.clone(),
    }
}

/// Something an ontology may entail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Implication {
    Inclusion(Axiom),
    Membership(Assertion),
    /// `R(a, _)` (or `R(_, a)` for an inverted role): `a` has some filler.
    ExistsFiller {
        role: Role,
        individual: Name,
    },
    /// `x1 ≡ a`: a placeholder denotes a named individual.
    PlaceholderEq {
        placeholder: Name,
        individual: Name,
    },
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Implication::Inclusion(ax) => write!(f, "{ax}"),
            Implication::Membership(a) => write!(f, "{a}"),
            Implication::ExistsFiller { role, individual } if role.inverse => {
                write!(f, "{}(_, {individual})", role.name)
            }
            Implication::ExistsFiller { role, individual } => write!(f, "{}({individual}, _)", role.name),
            Implication::PlaceholderEq { placeholder, individual } => write!(f, "{placeholder} ≡ {individual}"),
        }
    }
}

impl PartialOrd for Implication {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Implication {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string()).then_with(|| format!("{self:?}").cmp(&format!("{other:?}")))
    }
}

impl Implication {
    /// Parses either notation; `_` marks an unnamed filler and `≡`/`==`
    /// a placeholder equality.
    pub fn parse(text: &str) -> Result<Implication, ReasonError> {
        let err = || ReasonError::ImplicationParse(text.to_string());
        let t = text.trim();
        for sep in ["≡", "=="] {
            if let Some((l, r)) = t.split_once(sep) {
                let placeholder = Name::new(l.trim()).map_err(|_| err())?;
                let individual = Name::new(r.trim()).map_err(|_| err())?;
                return Ok(Implication::PlaceholderEq { placeholder, individual });
            }
        }
        if let Some((head, rest)) = t.split_once('(') {
            let args = rest.strip_suffix(')').ok_or_else(err)?;
            if let Some((a, b)) = args.split_once(',') {
                let (a, b) = (a.trim(), b.trim());
                if a == "_" || b == "_" {
                    let role = Name::new(head.trim()).map_err(|_| err())?;
                    let (ind, inverse) = if b == "_" { (a, false) } else { (b, true) };
                    let individual = Name::new(ind).map_err(|_| err())?;
                    return Ok(Implication::ExistsFiller { role: Role { name: role, inverse }, individual });
                }
            }
        }
        let notation = crate::parser::detect_notation(t);
        match parse_line(t, notation) {
            Ok(Statement::Axiom(ax)) => Ok(Implication::Inclusion(ax)),
            Ok(Statement::Assertion(a)) => Ok(Implication::Membership(a)),
            Err(_) => Err(err()),
        }
    }
}

/// One implication per line; blank lines and `#` comments are skipped.
pub fn parse_implications(text: &str) -> Result<Vec<Implication>, ReasonError> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).map(Implication::parse).collect()
}

impl FromStr for Implication {
    type Err = ReasonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Implication::parse(s)
    }
}

/// Outcome of an entailment check with the steps that justify a positive
/// answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entailment {
    pub entailed: bool,
    pub steps: Vec<Step>,
}

impl Entailment {
    fn no() -> Entailment {
        Entailment { entailed: false, steps: Vec::new() }
    }

    fn yes(steps: Vec<Step>) -> Entailment {
        Entailment { entailed: true, steps }
    }
}

/// Why an ontology is unsatisfiable: the violated axiom, the chased facts
/// that clash with it, and the input assertions they rest on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub facts: Vec<ChaseFact>,
    pub support: BTreeSet<Assertion>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facts: Vec<String> = self.facts.iter().map(|x| x.to_string()).collect();
        write!(f, "{} violated by {}", self.axiom, facts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Satisfiability {
    pub satisfiable: bool,
    pub violation: Option<Violation>,
    /// Placeholders identified with another individual through
    /// functionality, mapped to their representative.
    pub merges: BTreeMap<Name, Name>,
}

/// Reasoner over one ontology. The TBox closure is computed eagerly; the
/// satisfiability check and the depth-1 chase are computed on first use.
#[derive(Debug)]
pub struct Reasoner {
    ontology: Ontology,
    closure: Closure,
    sat: OnceLock<Result<SatState, ReasonError>>,
}

#[derive(Debug)]
struct SatState {
    result: Satisfiability,
    resolved: Ontology,
    chase: ChasedAbox,
}

impl Reasoner {
    pub fn new(ontology: &Ontology) -> Reasoner {
        let ontology = ontology.normalized();
        let closure = Closure::build(ontology.tbox());
        Reasoner { ontology, closure, sat: OnceLock::new() }
    }

    pub fn from_tbox<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> Reasoner {
        Reasoner::new(&Ontology::new(normalize(tbox), []))
    }

    pub fn ontology(&self) -> &Ontology {
        &self.ontology
    }

    /// PIs only: inputs, reflexive entries and PI1/PI2 conclusions.
    pub fn pi_closure(&self) -> ClosureSet {
        let keep = |f: &F| matches!(f, F::CPi(..) | F::RPi(..));
        let inputs: BTreeSet<Axiom> = self
            .closure
            .input_axioms()
            .into_iter()
            .filter(|ax| matches!(ax, Axiom::ConceptIncl { .. } | Axiom::RoleIncl { .. }) && !ax.is_negative())
            .collect();
        self.closure_set(inputs, keep)
    }

    /// The whole closure: PIs, NIs and functionality inputs.
    pub fn ni_closure(&self) -> ClosureSet {
        self.closure_set(self.closure.input_axioms(), |_| true)
    }

    fn closure_set(&self, inputs: BTreeSet<Axiom>, keep: impl Fn(&F) -> bool) -> ClosureSet {
        let derivations = self.closure.derived_map(keep);
        let reflexive = self.closure.reflexive();
        let mut axioms = inputs.clone();
        axioms.extend(reflexive.iter().cloned());
        axioms.extend(derivations.keys().cloned());
        ClosureSet { axioms, inputs, reflexive, derivations }
    }

    fn explain_fact(&self, f: F) -> Vec<Step> {
        let mut out = Vec::new();
        let mut done = std::collections::HashSet::new();
        self.explain_fact_into(f, &mut out, &mut done);
        out
    }

    fn explain_fact_into(&self, f: F, out: &mut Vec<Step>, done: &mut std::collections::HashSet<F>) {
        if !done.insert(f) {
            return;
        }
        if let Some(inst) = self.closure.best_instance(f) {
            for p in &inst.premises {
                self.explain_fact_into(*p, out, done);
            }
            out.push(Step {
                rule: inst.rule.to_string(),
                premises: inst.premises.iter().map(|p| self.closure.axiom(*p).to_string()).collect(),
                conclusion: self.closure.axiom(f).to_string(),
            });
        }
    }

    fn note(premise: &Axiom, conclusion: &Axiom, why: &str) -> Step {
        Step { rule: why.to_string(), premises: vec![premise.to_string()], conclusion: conclusion.to_string() }
    }

    /// TBox entailment of a PI, NI or functionality axiom. Besides closure
    /// membership this accepts reflexive inclusions, the contrapositive of a
    /// member NI, and anything whose left side is unsatisfiable.
    pub fn entails_inclusion(&self, target: &Axiom) -> Entailment {
        if let Axiom::Funct(r) = target {
            return self.functionality(r);
        }
        let parts = normalize([target]);
        if parts.len() > 1 {
            let mut steps = Vec::new();
            for p in &parts {
                let e = self.entails_inclusion(p);
                if !e.entailed {
                    return Entailment::no();
                }
                steps.extend(e.steps);
            }
            return Entailment::yes(steps);
        }
        let target = canonical(parts.iter().next().expect("non-empty"));
        let c = &self.closure;
        let unsat_lhs = |lhs: &Axiom| -> Option<Entailment> {
            let f = match &target {
                Axiom::ConceptIncl { lhs, .. } => c.concept_unsat(lhs),
                Axiom::RoleIncl { lhs, .. } => c.role_unsat(lhs),
                Axiom::Funct(_) => None,
            }?;
            let mut steps = self.explain_fact(f);
            steps.push(Self::note(&c.axiom(f), lhs, "UNSAT-LHS"));
            Some(Entailment::yes(steps))
        };
        match &target {
            Axiom::ConceptIncl { lhs, rhs: GeneralConcept::Basic(b) } if lhs == b => return Entailment::yes(vec![]),
            Axiom::RoleIncl { lhs, rhs: GeneralRole::Basic(r) } if lhs == r => return Entailment::yes(vec![]),
            _ => {}
        }
        if let Some(f) = c.lookup(&target).filter(|f| c.has(*f)) {
            return Entailment::yes(self.explain_fact(f));
        }
        // contrapositive of a negative inclusion, or an unsatisfiable right side
        let swapped = match &target {
            Axiom::ConceptIncl { lhs, rhs: GeneralConcept::Neg(b) } => Some((Axiom::ni(b.clone(), lhs.clone()), c.concept_unsat(b))),
            Axiom::RoleIncl { lhs, rhs: GeneralRole::Neg(r) } => {
                Some((canonical(&Axiom::role_ni(r.clone(), lhs.clone())), c.role_unsat(r)))
            }
            _ => None,
        };
        if let Some((sw, rhs_unsat)) = swapped {
            if let Some(f) = c.lookup(&sw).filter(|f| c.has(*f)) {
                let mut steps = self.explain_fact(f);
                steps.push(Self::note(&sw, &target, "CONTRAPOSITIVE"));
                return Entailment::yes(steps);
            }
            if let Some(f) = rhs_unsat {
                let mut steps = self.explain_fact(f);
                steps.push(Self::note(&c.axiom(f), &target, "UNSAT-RHS"));
                return Entailment::yes(steps);
            }
        }
        unsat_lhs(&target).unwrap_or_else(Entailment::no)
    }

    fn functionality(&self, r: &Role) -> Entailment {
        let declared = Axiom::Funct(r.clone());
        if self.closure.funct.contains(r) {
            return Entailment::yes(vec![]);
        }
        match self.closure.concept_unsat(&BasicConcept::Exists(r.clone())) {
            Some(f) => {
                let mut steps = self.explain_fact(f);
                steps.push(Self::note(&self.closure.axiom(f), &declared, "UNSAT-ROLE"));
                Entailment::yes(steps)
            }
            None => Entailment::no(),
        }
    }

    /// `funct R` is entailed when declared or when `∃R ⊑ ¬∃R` is derivable.
    pub fn entails_functionality(&self, r: &Role) -> bool {
        self.functionality(r).entailed
    }

    /// Derived TBox members, excluding inputs and reflexive entries.
    pub fn tbox_implications(&self) -> Vec<Implication> {
        let mut v: Vec<Implication> = self.closure.derived_map(|_| true).into_keys().map(Implication::Inclusion).collect();
        v.sort();
        v
    }

    fn sat_state(&self) -> Result<&SatState, ReasonError> {
        self.sat.get_or_init(|| chase::satisfiability(&self.ontology, &self.closure)).as_ref().map_err(Clone::clone)
    }

    pub fn satisfiability(&self) -> Result<Satisfiability, ReasonError> {
        Ok(self.sat_state()?.result.clone())
    }

    pub fn is_satisfiable(&self) -> Result<bool, ReasonError> {
        Ok(self.sat_state()?.result.satisfiable)
    }

    /// Satisfiability evaluated directly on the asserted facts against the
    /// closure, without chasing. Must agree with [`Reasoner::is_satisfiable`].
    pub fn is_satisfiable_raw(&self) -> Result<bool, ReasonError> {
        chase::satisfiable_raw(&self.ontology, &self.closure)
    }

    fn consistent_state(&self) -> Result<&SatState, ReasonError> {
        let st = self.sat_state()?;
        match &st.result.violation {
            Some(v) => Err(ReasonError::UnsatisfiableOntology(v.to_string())),
            None => Ok(st),
        }
    }

    fn resolve(&self, st: &SatState, n: &Name) -> Name {
        st.result.merges.get(n).cloned().unwrap_or_else(|| n.clone())
    }

    /// Entailment of an ABox-level implication (an inclusion is delegated to
    /// the TBox). Fails on an unsatisfiable ontology, where every target
    /// would be entailed.
    pub fn entails_assertion(&self, target: &Implication) -> Result<Entailment, ReasonError> {
        if let Implication::Inclusion(ax) = target {
            return Ok(self.entails_inclusion(ax));
        }
        let st = self.consistent_state()?;
        let run = &st.chase;
        Ok(match target {
            Implication::Inclusion(_) => unreachable!(),
            Implication::Membership(a) => {
                let fact = match a {
                    Assertion::Concept { concept, individual } => {
                        ChaseFact::Concept { concept: concept.clone(), term: Term::Named(self.resolve(st, individual)) }
                    }
                    Assertion::Role { role, subject, object } => ChaseFact::Role {
                        role: role.clone(),
                        subject: Term::Named(self.resolve(st, subject)),
                        object: Term::Named(self.resolve(st, object)),
                    },
                };
                if run.has(&fact) {
                    Entailment::yes(run.explain(&fact))
                } else {
                    Entailment::no()
                }
            }
            Implication::ExistsFiller { role, individual } => match run.some_filler(role, &Term::Named(self.resolve(st, individual))) {
                Some(fact) => Entailment::yes(run.explain(&fact)),
                None => Entailment::no(),
            },
            Implication::PlaceholderEq { placeholder, individual } => {
                if self.resolve(st, placeholder) == self.resolve(st, individual) && placeholder != individual {
                    let steps = st
                        .result
                        .merges
                        .iter()
                        .filter(|(k, _)| *k == placeholder || *k == individual)
                        .map(|(k, v)| Step { rule: "FUNCT".into(), premises: Vec::new(), conclusion: format!("{k} ≡ {v}") })
                        .collect();
                    Entailment::yes(steps)
                } else if placeholder == individual {
                    Entailment::yes(vec![])
                } else {
                    Entailment::no()
                }
            }
        })
    }

    /// Named facts produced by the depth-1 chase that were not asserted,
    /// `R(a, _)` for every witness invented for a named individual without a
    /// named filler, and the placeholder identifications.
    pub fn abox_implications(&self) -> Result<Vec<Implication>, ReasonError> {
        let st = self.consistent_state()?;
        let mut out: BTreeSet<Implication> = BTreeSet::new();
        for fact in st.chase.named_facts() {
            let a = fact.to_assertion().expect("named");
            if !st.resolved.abox().contains(&a) {
                out.insert(Implication::Membership(a));
            }
        }
        for (role, ind) in st.chase.unnamed_witnesses() {
            out.insert(Implication::ExistsFiller { role, individual: ind });
        }
        for (p, i) in &st.result.merges {
            if p.is_placeholder() {
                out.insert(Implication::PlaceholderEq { placeholder: p.clone(), individual: i.clone() });
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The chase of the (placeholder-resolved when satisfiable) ABox.
    pub fn chase(&self, depth: usize) -> ChasedAbox {
        let base = match self.sat_state() {
            Ok(st) if st.result.satisfiable => &st.resolved,
            _ => &self.ontology,
        };
        chase_internal(base, &self.closure, depth).into_public()
    }

    /// Certain answers of a conjunctive query, evaluated over the chase of
    /// the given depth.
    pub fn answer_query(&self, q: &Query, depth: usize) -> Result<BTreeSet<Vec<Name>>, ReasonError> {
        q.check_safe()?;
        let st = self.consistent_state()?;
        let run = chase_internal(&st.resolved, &self.closure, depth);
        Ok(query::evaluate(q, &run.into_public()))
    }
}

pub const DEFAULT_QUERY_DEPTH: usize = 3;

/// PI closure of a TBox.
pub fn pi_closure<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> ClosureSet {
    Reasoner::from_tbox(tbox).pi_closure()
}

/// Full closure (PIs and NIs) of a TBox.
pub fn ni_closure<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> ClosureSet {
    Reasoner::from_tbox(tbox).ni_closure()
}

pub fn chase(ontology: &Ontology, depth: usize) -> ChasedAbox {
    Reasoner::new(ontology).chase(depth)
}

pub fn is_satisfiable(ontology: &Ontology) -> Result<Satisfiability, ReasonError> {
    Reasoner::new(ontology).satisfiability()
}

pub fn entails_inclusion<'a>(tbox: impl IntoIterator<Item = &'a Axiom>, target: &Axiom) -> Entailment {
    Reasoner::from_tbox(tbox).entails_inclusion(target)
}

pub fn entails_assertion(ontology: &Ontology, target: &Implication) -> Result<Entailment, ReasonError> {
    Reasoner::new(ontology).entails_assertion(target)
}

pub fn entails_functionality<'a>(tbox: impl IntoIterator<Item = &'a Axiom>, role: &Role) -> bool {
    Reasoner::from_tbox(tbox).entails_functionality(role)
}

pub fn extract_tbox_implications<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> Vec<Implication> {
    Reasoner::from_tbox(tbox).tbox_implications()
}

pub fn extract_abox_implications(ontology: &Ontology) -> Result<Vec<Implication>, ReasonError> {
    Reasoner::new(ontology).abox_implications()
}

pub fn answer_query(ontology: &Ontology, query: &Query) -> Result<BTreeSet<Vec<Name>>, ReasonError> {
    Reasoner::new(ontology).answer_query(query, DEFAULT_QUERY_DEPTH)
}

/// Renders an implication in the requested notation.
pub fn render_implication(imp: &Implication, notation: Notation) -> String {
    use crate::model::Render;
    match (imp, notation) {
        (_, Notation::Unicode) => imp.to_string(),
        (Implication::Inclusion(ax), n) => ax.render(n),
        (Implication::Membership(a), n) => a.render(n),
        (Implication::PlaceholderEq { placeholder, individual }, _) => format!("{placeholder} == {individual}"),
        (other, _) => other.to_string(),
    }
}

#[cfg(test)]
mod tests;
