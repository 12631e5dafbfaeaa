//! Bounded chase with memoized anonymous witnesses, and the satisfiability
//! check built on it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::closure::Closure;
use super::{ReasonError, Rule, SatState, Satisfiability, Step, Violation};
use crate::model::{Assertion, Axiom, BasicConcept, GeneralConcept, GeneralRole, Name, Ontology, Role};

/// A chase term: a named individual or an invented witness (`_:wN`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Named(Name),
    Anon(u32),
}

impl Term {
    pub fn named(&self) -> Option<&Name> {
        match self {
            Term::Named(n) => Some(n),
            Term::Anon(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Named(n) => write!(f, "{n}"),
            Term::Anon(i) => write!(f, "_:w{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChaseFact {
    Concept { concept: Name, term: Term },
    Role { role: Name, subject: Term, object: Term },
}

impl ChaseFact {
    pub fn to_assertion(&self) -> Option<Assertion> {
        Some(match self {
            ChaseFact::Concept { concept, term } => Assertion::Concept { concept: concept.clone(), individual: term.named()?.clone() },
            ChaseFact::Role { role, subject, object } => {
                Assertion::Role { role: role.clone(), subject: subject.named()?.clone(), object: object.named()?.clone() }
            }
        })
    }

    pub fn from_assertion(a: &Assertion) -> ChaseFact {
        match a {
            Assertion::Concept { concept, individual } => {
                ChaseFact::Concept { concept: concept.clone(), term: Term::Named(individual.clone()) }
            }
            Assertion::Role { role, subject, object } => {
                ChaseFact::Role { role: role.clone(), subject: Term::Named(subject.clone()), object: Term::Named(object.clone()) }
            }
        }
    }

    pub fn is_named(&self) -> bool {
        match self {
            ChaseFact::Concept { term, .. } => term.named().is_some(),
            ChaseFact::Role { subject, object, .. } => subject.named().is_some() && object.named().is_some(),
        }
    }
}

impl fmt::Display for ChaseFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChaseFact::Concept { concept, term } => write!(f, "{concept}({term})"),
            ChaseFact::Role { role, subject, object } => write!(f, "{role}({subject}, {object})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub term: Term,
    pub role: Role,
    pub witness: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChaseDerivation {
    pub rule: Rule,
    pub axiom: Axiom,
    pub premise: ChaseFact,
}

/// Result of chasing an ABox to a bounded depth.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChasedAbox {
    pub depth: usize,
    pub facts: BTreeSet<ChaseFact>,
    pub inputs: BTreeSet<ChaseFact>,
    pub fresh: u32,
    pub witnesses: Vec<Witness>,
    /// Some witness could not be created because of the depth bound.
    pub truncated: bool,
    #[serde(skip)]
    derivations: BTreeMap<ChaseFact, ChaseDerivation>,
}

impl ChasedAbox {
    pub fn has(&self, f: &ChaseFact) -> bool {
        self.facts.contains(f)
    }

    pub fn derivation(&self, f: &ChaseFact) -> Option<&ChaseDerivation> {
        self.derivations.get(f)
    }

    /// Steps deriving `f`, premises first. Empty for inputs.
    pub fn explain(&self, f: &ChaseFact) -> Vec<Step> {
        let mut out = Vec::new();
        let mut cur = f.clone();
        while let Some(d) = self.derivations.get(&cur) {
            out.push(Step {
                rule: d.rule.to_string(),
                premises: vec![d.axiom.to_string(), d.premise.to_string()],
                conclusion: cur.to_string(),
            });
            cur = d.premise.clone();
        }
        out.reverse();
        out
    }

    /// Input facts that a fact ultimately rests on.
    pub fn support(&self, f: &ChaseFact) -> Option<Assertion> {
        let mut cur = f;
        while let Some(d) = self.derivations.get(cur) {
            cur = &d.premise;
        }
        cur.to_assertion()
    }

    pub fn named_facts(&self) -> impl Iterator<Item = &ChaseFact> {
        self.facts.iter().filter(|f| f.is_named())
    }

    fn oriented(role: &Role, subject: &Term, object: &Term) -> (Term, Term) {
        if role.inverse {
            (object.clone(), subject.clone())
        } else {
            (subject.clone(), object.clone())
        }
    }

    /// Some fact giving `term` an `R`-filler (for inverted `R`, an
    /// `R⁻`-filler), preferring named fillers.
    pub fn some_filler(&self, role: &Role, term: &Term) -> Option<ChaseFact> {
        let mut best: Option<ChaseFact> = None;
        for f in &self.facts {
            if let ChaseFact::Role { role: r, subject, object } = f {
                if r != &role.name {
                    continue;
                }
                let (s, o) = Self::oriented(role, subject, object);
                if &s == term {
                    if o.named().is_some() {
                        return Some(f.clone());
                    }
                    best.get_or_insert_with(|| f.clone());
                }
            }
        }
        best
    }

    /// `(R, a)` for every witness invented for a named `a` that has no
    /// named `R`-filler.
    pub fn unnamed_witnesses(&self) -> Vec<(Role, Name)> {
        let mut out = BTreeSet::new();
        for w in &self.witnesses {
            let Some(a) = w.term.named() else { continue };
            let named_filler = self.facts.iter().any(|f| match f {
                ChaseFact::Role { role, subject, object } if role == &w.role.name => {
                    let (s, o) = Self::oriented(&w.role, subject, object);
                    s == w.term && o.named().is_some()
                }
                _ => false,
            });
            if !named_filler {
                out.insert((w.role.clone(), a.clone()));
            }
        }
        out.into_iter().collect()
    }

    pub fn anonymous_count(&self) -> u32 {
        self.fresh
    }
}

/// Membership key: an atomic concept, or `∃R` / `∃R⁻` by role id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum BKey {
    A(u32),
    E(u32, bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum CF {
    C(u32, u32),
    R(u32, u32, u32),
}

/// Role id and whether it is read inverted.
type RoleEnd = (u32, bool);

#[derive(Debug, Default)]
struct Names {
    list: Vec<Name>,
    ix: HashMap<Name, u32>,
}

impl Names {
    fn intern(&mut self, n: &Name) -> u32 {
        if let Some(&i) = self.ix.get(n) {
            return i;
        }
        let i = self.list.len() as u32;
        self.list.push(n.clone());
        self.ix.insert(n.clone(), i);
        i
    }

    fn get(&self, n: &Name) -> Option<u32> {
        self.ix.get(n).copied()
    }
}

#[derive(Debug)]
pub(crate) struct ChaseRun {
    depth: usize,
    concepts: Names,
    roles: Names,
    nodes: Vec<(Term, usize)>,
    named: HashMap<Name, u32>,
    cpis: HashMap<BKey, Vec<(BKey, Axiom)>>,
    rpis: HashMap<RoleEnd, Vec<(u32, bool, Axiom)>>,
    facts: HashSet<CF>,
    inputs: HashSet<CF>,
    queue: VecDeque<CF>,
    instances: HashMap<CF, Vec<(Rule, Axiom, CF)>>,
    members: HashMap<BKey, Vec<u32>>,
    support: HashMap<(BKey, u32), CF>,
    memo: BTreeMap<(u32, u32, bool), u32>,
    by_role: HashMap<u32, Vec<(u32, u32)>>,
    fresh: u32,
    truncated: bool,
}

impl ChaseRun {
    fn key(&mut self, b: &BasicConcept) -> BKey {
        match b {
            BasicConcept::Atomic(a) => BKey::A(self.concepts.intern(a)),
            BasicConcept::Exists(r) => BKey::E(self.roles.intern(&r.name), r.inverse),
        }
    }

    fn key_lookup(&self, b: &BasicConcept) -> Option<BKey> {
        Some(match b {
            BasicConcept::Atomic(a) => BKey::A(self.concepts.get(a)?),
            BasicConcept::Exists(r) => BKey::E(self.roles.get(&r.name)?, r.inverse),
        })
    }

    fn node(&mut self, n: &Name) -> u32 {
        if let Some(&i) = self.named.get(n) {
            return i;
        }
        let i = self.nodes.len() as u32;
        self.nodes.push((Term::Named(n.clone()), 0));
        self.named.insert(n.clone(), i);
        i
    }

    /// Role fact for role id `r` (inverted if `inv`) from `x` to `y`.
    fn oriented(r: u32, inv: bool, x: u32, y: u32) -> CF {
        if inv {
            CF::R(r, y, x)
        } else {
            CF::R(r, x, y)
        }
    }

    fn add(&mut self, f: CF, inst: Option<(Rule, Axiom, CF)>) {
        if let Some(inst) = inst {
            if !self.inputs.contains(&f) {
                let list = self.instances.entry(f).or_default();
                if !list.contains(&inst) {
                    list.push(inst);
                }
            }
        }
        if self.facts.insert(f) {
            if let CF::R(r, x, y) = f {
                self.by_role.entry(r).or_default().push((x, y));
            }
            self.queue.push_back(f);
        }
    }

    fn fire(&mut self, b: BKey, x: u32, support: CF) {
        if let std::collections::hash_map::Entry::Vacant(e) = self.support.entry((b, x)) {
            e.insert(support);
            self.members.entry(b).or_default().push(x);
        }
        let Some(rules) = self.cpis.get(&b).cloned() else { return };
        let from_atomic = matches!(b, BKey::A(_));
        for (rhs, ax) in rules {
            match rhs {
                BKey::A(c) => {
                    let rule = if from_atomic { Rule::ABX1 } else { Rule::ABX3 };
                    self.add(CF::C(c, x), Some((rule, ax, support)));
                }
                BKey::E(s, inv) => {
                    let rule = if from_atomic { Rule::ABX2 } else { Rule::ABX4 };
                    let w = match self.memo.get(&(x, s, inv)) {
                        Some(&w) => w,
                        None => {
                            let d = self.nodes[x as usize].1 + 1;
                            if d > self.depth {
                                self.truncated = true;
                                continue;
                            }
                            self.fresh += 1;
                            let w = self.nodes.len() as u32;
                            self.nodes.push((Term::Anon(self.fresh), d));
                            self.memo.insert((x, s, inv), w);
                            w
                        }
                    };
                    self.add(Self::oriented(s, inv, x, w), Some((rule, ax, support)));
                }
            }
        }
    }

    fn run(&mut self) {
        while let Some(f) = self.queue.pop_front() {
            match f {
                CF::C(c, x) => self.fire(BKey::A(c), x, f),
                CF::R(r, x, y) => {
                    self.fire(BKey::E(r, false), x, f);
                    self.fire(BKey::E(r, true), y, f);
                    for (dir, u, v) in [(false, x, y), (true, y, x)] {
                        let Some(rules) = self.rpis.get(&(r, dir)).cloned() else { continue };
                        for (s, inv, ax) in rules {
                            self.add(Self::oriented(s, inv, u, v), Some((Rule::ABX5, ax, f)));
                        }
                    }
                }
            }
        }
    }

    fn term(&self, n: u32) -> Term {
        self.nodes[n as usize].0.clone()
    }

    fn public_fact(&self, f: CF) -> ChaseFact {
        match f {
            CF::C(c, x) => ChaseFact::Concept { concept: self.concepts.list[c as usize].clone(), term: self.term(x) },
            CF::R(r, x, y) => ChaseFact::Role { role: self.roles.list[r as usize].clone(), subject: self.term(x), object: self.term(y) },
        }
    }

    /// Cheapest instance per derived fact; ties by rule id, then axiom and
    /// premise text.
    fn chosen(&self) -> HashMap<CF, (Rule, Axiom, CF)> {
        let mut cost: HashMap<CF, usize> = self.inputs.iter().map(|&f| (f, 0)).collect();
        loop {
            let mut changed = false;
            for (concl, insts) in &self.instances {
                for (_, _, p) in insts {
                    if let Some(&c) = cost.get(p) {
                        if cost.get(concl).is_none_or(|&old| c + 1 < old) {
                            cost.insert(*concl, c + 1);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = HashMap::new();
        for (concl, insts) in &self.instances {
            let target = cost[concl];
            let best = insts
                .iter()
                .filter(|(_, _, p)| cost.get(p).map(|c| c + 1) == Some(target))
                .min_by_key(|(rule, ax, p)| (*rule, ax.to_string(), self.public_fact(*p).to_string()))
                .expect("some instance reaches the minimum");
            out.insert(*concl, best.clone());
        }
        out
    }

    pub fn into_public(self) -> ChasedAbox {
        let derivations = self
            .chosen()
            .into_iter()
            .map(|(c, (rule, axiom, p))| (self.public_fact(c), ChaseDerivation { rule, axiom, premise: self.public_fact(p) }))
            .collect();
        let witnesses = self
            .memo
            .iter()
            .map(|(&(x, r, inv), &w)| Witness {
                term: self.term(x),
                role: Role { name: self.roles.list[r as usize].clone(), inverse: inv },
                witness: self.term(w),
            })
            .collect();
        ChasedAbox {
            depth: self.depth,
            facts: self.facts.iter().map(|f| self.public_fact(*f)).collect(),
            inputs: self.inputs.iter().map(|f| self.public_fact(*f)).collect(),
            fresh: self.fresh,
            witnesses,
            truncated: self.truncated,
            derivations,
        }
    }

    fn has_role(&self, r: u32, inv: bool, x: u32, y: u32) -> bool {
        self.facts.contains(&Self::oriented(r, inv, x, y))
    }
}

/// Runs the chase of `ontology`'s ABox under the closure's input TBox.
pub(crate) fn chase_internal(ontology: &Ontology, closure: &Closure, depth: usize) -> ChaseRun {
    let mut run = ChaseRun {
        depth,
        concepts: Names::default(),
        roles: Names::default(),
        nodes: Vec::new(),
        named: HashMap::new(),
        cpis: HashMap::new(),
        rpis: HashMap::new(),
        facts: HashSet::new(),
        inputs: HashSet::new(),
        queue: VecDeque::new(),
        instances: HashMap::new(),
        members: HashMap::new(),
        support: HashMap::new(),
        memo: BTreeMap::new(),
        by_role: HashMap::new(),
        fresh: 0,
        truncated: false,
    };
    for ax in closure.input_axioms() {
        match &ax {
            Axiom::ConceptIncl { lhs, rhs: GeneralConcept::Basic(rhs) } => {
                let (l, r) = (run.key(lhs), run.key(rhs));
                run.cpis.entry(l).or_default().push((r, ax.clone()));
            }
            Axiom::RoleIncl { lhs, rhs: GeneralRole::Basic(rhs) } => {
                let (l, r) = (run.roles.intern(&lhs.name), run.roles.intern(&rhs.name));
                run.rpis.entry((l, lhs.inverse)).or_default().push((r, rhs.inverse, ax.clone()));
                run.rpis.entry((l, !lhs.inverse)).or_default().push((r, !rhs.inverse, ax.clone()));
            }
            _ => {}
        }
    }
    let mut inds: BTreeSet<&Name> = BTreeSet::new();
    for a in ontology.abox() {
        inds.extend(a.individuals());
    }
    for n in inds {
        run.node(n);
    }
    for a in ontology.abox() {
        let f = match a {
            Assertion::Concept { concept, individual } => {
                let c = run.concepts.intern(concept);
                CF::C(c, run.node(individual))
            }
            Assertion::Role { role, subject, object } => {
                let r = run.roles.intern(role);
                CF::R(r, run.node(subject), run.node(object))
            }
        };
        run.inputs.insert(f);
        run.add(f, None);
    }
    run.run();
    run
}

/// Union-find over individual names where only placeholders may be merged.
#[derive(Debug, Default)]
struct Merge {
    parent: BTreeMap<Name, Name>,
}

impl Merge {
    fn find(&self, n: &Name) -> Name {
        let mut cur = n.clone();
        while let Some(p) = self.parent.get(&cur) {
            cur = p.clone();
        }
        cur
    }

    /// Representatives are named individuals when a class has one,
    /// otherwise the smallest placeholder.
    fn union(&mut self, a: &Name, b: &Name) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (keep, drop) = match (ra.is_placeholder(), rb.is_placeholder()) {
            (false, true) => (ra, rb),
            (true, false) => (rb, ra),
            _ if ra < rb => (ra, rb),
            _ => (rb, ra),
        };
        self.parent.insert(drop, keep);
    }

    fn mapping(&self) -> BTreeMap<Name, Name> {
        self.parent.keys().map(|k| (k.clone(), self.find(k))).collect()
    }
}

fn funct_violation(role: &Role, a: &Assertion, b: &Assertion) -> Violation {
    Violation {
        axiom: Axiom::Funct(role.clone()),
        facts: vec![ChaseFact::from_assertion(a), ChaseFact::from_assertion(b)],
        support: [a.clone(), b.clone()].into_iter().collect(),
    }
}

/// Identifies placeholders forced equal by functionality. Fails with the
/// clash when two distinct named individuals would have to be merged.
#[allow(clippy::result_large_err)]
fn resolve_placeholders(ontology: &Ontology, funct: &BTreeSet<Role>) -> Result<Merge, Violation> {
    let mut m = Merge::default();
    loop {
        let mut changed = false;
        for role in funct {
            let mut groups: BTreeMap<Name, Vec<(Name, &Assertion)>> = BTreeMap::new();
            for a in ontology.abox() {
                if let Assertion::Role { role: r, subject, object } = a {
                    if r != &role.name {
                        continue;
                    }
                    let (s, o) = if role.inverse { (object, subject) } else { (subject, object) };
                    groups.entry(m.find(s)).or_default().push((m.find(o), a));
                }
            }
            for (_, objs) in groups {
                let named: Vec<&(Name, &Assertion)> = objs.iter().filter(|(o, _)| !o.is_placeholder()).collect();
                if let Some(other) = named.iter().find(|(o, _)| o != &named[0].0) {
                    return Err(funct_violation(role, named[0].1, other.1));
                }
                for (o, _) in &objs[1..] {
                    if m.find(o) != m.find(&objs[0].0) {
                        m.union(o, &objs[0].0);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(m);
        }
    }
}

fn rewrite(ontology: &Ontology, m: &Merge) -> Ontology {
    let abox = ontology.abox().iter().map(|a| match a {
        Assertion::Concept { concept, individual } => Assertion::Concept { concept: concept.clone(), individual: m.find(individual) },
        Assertion::Role { role, subject, object } => {
            Assertion::Role { role: role.clone(), subject: m.find(subject), object: m.find(object) }
        }
    });
    Ontology::new(ontology.tbox().iter().cloned(), abox).with_dialect(ontology.dialect()).expect("same TBox, same dialect")
}

/// A functional role may not be the right side of a positive role
/// inclusion.
fn check_dialect(closure: &Closure) -> Result<(), ReasonError> {
    for ax in closure.input_axioms() {
        if let Axiom::RoleIncl { rhs: GeneralRole::Basic(r), .. } = &ax {
            if let Some(f) = closure.funct.iter().find(|f| f.name == r.name) {
                return Err(ReasonError::DialectRejected { role: f.to_string(), axiom: ax.to_string() });
            }
        }
    }
    Ok(())
}

/// NIs to check, inputs first, each group in text order.
fn ordered_nis(closure: &Closure) -> Vec<Axiom> {
    let inputs: BTreeSet<Axiom> = closure.input_axioms().into_iter().filter(|a| a.is_negative()).collect();
    let derived: BTreeSet<Axiom> = closure.derived_map(|_| true).into_keys().filter(|a| a.is_negative() && !inputs.contains(a)).collect();
    inputs.into_iter().chain(derived).collect()
}

fn find_violation(run: &ChaseRun, closure: &Closure) -> Option<(Axiom, Vec<CF>)> {
    for ni in ordered_nis(closure) {
        match &ni {
            Axiom::ConceptIncl { lhs, rhs: GeneralConcept::Neg(rhs) } => {
                let (Some(l), Some(r)) = (run.key_lookup(lhs), run.key_lookup(rhs)) else { continue };
                let Some(nodes) = run.members.get(&l) else { continue };
                let mut nodes = nodes.clone();
                nodes.sort();
                for x in nodes {
                    if let Some(&fr) = run.support.get(&(r, x)) {
                        let fl = run.support[&(l, x)];
                        let facts = if fl == fr { vec![fl] } else { vec![fl, fr] };
                        return Some((ni.clone(), facts));
                    }
                }
            }
            Axiom::RoleIncl { lhs, rhs: GeneralRole::Neg(rhs) } => {
                let (Some(l), Some(r)) = (run.roles.get(&lhs.name), run.roles.get(&rhs.name)) else { continue };
                let mut pairs = run.by_role.get(&l).cloned().unwrap_or_default();
                pairs.sort();
                for (x, y) in pairs {
                    let (u, v) = if lhs.inverse { (y, x) } else { (x, y) };
                    if run.has_role(r, rhs.inverse, u, v) {
                        let a = CF::R(l, x, y);
                        let b = ChaseRun::oriented(r, rhs.inverse, u, v);
                        let facts = if a == b { vec![a] } else { vec![a, b] };
                        return Some((ni.clone(), facts));
                    }
                }
            }
            _ => {}
        }
    }
    for role in &closure.funct {
        let Some(r) = run.roles.get(&role.name) else { continue };
        let mut seen: BTreeMap<u32, (u32, CF)> = BTreeMap::new();
        let mut pairs = run.by_role.get(&r).cloned().unwrap_or_default();
        pairs.sort();
        for (x, y) in pairs {
            let (s, o) = if role.inverse { (y, x) } else { (x, y) };
            match &run.nodes[o as usize].0 {
                Term::Named(n) if !n.is_placeholder() => {}
                _ => continue,
            }
            let f = CF::R(r, x, y);
            match seen.get(&s) {
                Some(&(o2, f2)) if o2 != o => return Some((Axiom::Funct(role.clone()), vec![f2, f])),
                Some(_) => {}
                None => {
                    seen.insert(s, (o, f));
                }
            }
        }
    }
    None
}

pub(super) fn satisfiability(ontology: &Ontology, closure: &Closure) -> Result<SatState, ReasonError> {
    check_dialect(closure)?;
    let merge = match resolve_placeholders(ontology, &closure.funct) {
        Ok(m) => m,
        Err(v) => {
            let chase = chase_internal(ontology, closure, 1).into_public();
            return Ok(SatState {
                result: Satisfiability { satisfiable: false, violation: Some(v), merges: BTreeMap::new() },
                resolved: ontology.clone(),
                chase,
            });
        }
    };
    let resolved = rewrite(ontology, &merge);
    let run = chase_internal(&resolved, closure, 1);
    let found = find_violation(&run, closure).map(|(axiom, facts)| (axiom, facts.iter().map(|f| run.public_fact(*f)).collect::<Vec<_>>()));
    let chase = run.into_public();
    let violation = found.map(|(axiom, facts)| {
        let support = facts.iter().filter_map(|f| chase.support(f)).collect();
        Violation { axiom, facts, support }
    });
    Ok(SatState { result: Satisfiability { satisfiable: violation.is_none(), violation, merges: merge.mapping() }, resolved, chase })
}

/// Checks the closure directly against asserted facts: memberships come
/// only from concept assertions and role assertion endpoints.
pub(super) fn satisfiable_raw(ontology: &Ontology, closure: &Closure) -> Result<bool, ReasonError> {
    check_dialect(closure)?;
    let Ok(merge) = resolve_placeholders(ontology, &closure.funct) else {
        return Ok(false);
    };
    let resolved = rewrite(ontology, &merge);
    let mut members: BTreeSet<(BasicConcept, Name)> = BTreeSet::new();
    let mut roles: BTreeSet<(Name, Name, Name)> = BTreeSet::new();
    for a in resolved.abox() {
        match a {
            Assertion::Concept { concept, individual } => {
                members.insert((BasicConcept::Atomic(concept.clone()), individual.clone()));
            }
            Assertion::Role { role, subject, object } => {
                members.insert((BasicConcept::Exists(Role::atomic(role.clone())), subject.clone()));
                members.insert((BasicConcept::Exists(Role::inverted(role.clone())), object.clone()));
                roles.insert((role.clone(), subject.clone(), object.clone()));
            }
        }
    }
    let has_role = |r: &Role, s: &Name, o: &Name| {
        if r.inverse {
            roles.contains(&(r.name.clone(), o.clone(), s.clone()))
        } else {
            roles.contains(&(r.name.clone(), s.clone(), o.clone()))
        }
    };
    let inds: BTreeSet<Name> = members.iter().map(|(_, n)| n.clone()).collect();
    for ni in ordered_nis(closure) {
        match &ni {
            Axiom::ConceptIncl { lhs, rhs: GeneralConcept::Neg(rhs) } => {
                if inds.iter().any(|a| members.contains(&(lhs.clone(), a.clone())) && members.contains(&(rhs.clone(), a.clone()))) {
                    return Ok(false);
                }
            }
            Axiom::RoleIncl { lhs, rhs: GeneralRole::Neg(rhs) } => {
                for (r, s, o) in &roles {
                    if r != &lhs.name {
                        continue;
                    }
                    let (u, v) = if lhs.inverse { (o, s) } else { (s, o) };
                    if has_role(rhs, u, v) {
                        return Ok(false);
                    }
                }
            }
            _ => {}
        }
    }
    for role in &closure.funct {
        let mut seen: BTreeMap<&Name, &Name> = BTreeMap::new();
        for (r, s, o) in &roles {
            if r != &role.name {
                continue;
            }
            let (s, o) = if role.inverse { (o, s) } else { (s, o) };
            if o.is_placeholder() {
                continue;
            }
            if let Some(prev) = seen.insert(s, o) {
                if prev != o {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
