//! Finite-domain semantic oracle. Models are searched over domains of at
//! most three elements by grounding the ontology to CNF and running a small
//! DPLL solver; every model found is re-checked with [`satisfies`], which
//! evaluates the semantics directly. Verdicts are bounded: "no countermodel"
//! means none up to the bound, never a proof.

pub mod agreement;
mod sat;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{normalize, Assertion, Axiom, BasicConcept, GeneralConcept, GeneralRole, Name, Ontology, Role, Signature};
use crate::parser::Statement;
use crate::reasoner::Implication;
use sat::{solve, Cnf, Lit};

pub const MAX_SYMBOLS: usize = 8;
pub const MAX_DOMAIN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// A finite interpretation. Elements are `0..domain`, printed `d1, d2, …`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Interpretation {
    pub domain: usize,
    pub concepts: BTreeMap<Name, BTreeSet<usize>>,
    pub roles: BTreeMap<Name, BTreeSet<(usize, usize)>>,
    pub individuals: BTreeMap<Name, usize>,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let el = |i: &usize| format!("d{}", i + 1);
        let dom: Vec<String> = (0..self.domain).map(|i| el(&i)).collect();
        write!(f, "Δ = {{{}}}", dom.join(", "))?;
        for (c, ext) in &self.concepts {
            let v: Vec<String> = ext.iter().map(el).collect();
            write!(f, "; {c} = {{{}}}", v.join(", "))?;
        }
        for (r, ext) in &self.roles {
            let v: Vec<String> = ext.iter().map(|(a, b)| format!("({}, {})", el(a), el(b))).collect();
            write!(f, "; {r} = {{{}}}", v.join(", "))?;
        }
        for (a, e) in &self.individuals {
            write!(f, "; {a} ↦ {}", el(e))?;
        }
        Ok(())
    }
}

impl Interpretation {
    fn role_holds(&self, r: &Role, x: usize, y: usize) -> bool {
        let (s, o) = if r.inverse { (y, x) } else { (x, y) };
        self.roles.get(&r.name).is_some_and(|ext| ext.contains(&(s, o)))
    }

    pub fn basic_ext(&self, b: &BasicConcept) -> BTreeSet<usize> {
        match b {
            BasicConcept::Atomic(a) => self.concepts.get(a).cloned().unwrap_or_default(),
            BasicConcept::Exists(r) => (0..self.domain).filter(|&x| (0..self.domain).any(|y| self.role_holds(r, x, y))).collect(),
        }
    }

    pub fn general_ext(&self, c: &GeneralConcept) -> BTreeSet<usize> {
        match c {
            GeneralConcept::Basic(b) => self.basic_ext(b),
            GeneralConcept::Neg(b) => {
                let pos = self.basic_ext(b);
                (0..self.domain).filter(|x| !pos.contains(x)).collect()
            }
            GeneralConcept::Conj(a, b) => self.general_ext(a).intersection(&self.general_ext(b)).copied().collect(),
        }
    }

    pub fn satisfies_axiom(&self, ax: &Axiom) -> bool {
        let n = self.domain;
        match ax {
            Axiom::ConceptIncl { lhs, rhs } => self.basic_ext(lhs).is_subset(&self.general_ext(rhs)),
            Axiom::RoleIncl { lhs, rhs } => (0..n).all(|x| {
                (0..n).all(|y| {
                    !self.role_holds(lhs, x, y)
                        || match rhs {
                            GeneralRole::Basic(r) => self.role_holds(r, x, y),
                            GeneralRole::Neg(r) => !self.role_holds(r, x, y),
                        }
                })
            }),
            Axiom::Funct(r) => (0..n).all(|x| (0..n).filter(|&y| self.role_holds(r, x, y)).count() <= 1),
        }
    }

    pub fn satisfies_assertion(&self, a: &Assertion) -> bool {
        let el = |n: &Name| self.individuals.get(n).copied();
        match a {
            Assertion::Concept { concept, individual } => {
                el(individual).is_some_and(|e| self.concepts.get(concept).is_some_and(|s| s.contains(&e)))
            }
            Assertion::Role { role, subject, object } => match (el(subject), el(object)) {
                (Some(s), Some(o)) => self.role_holds(&Role::atomic(role.clone()), s, o),
                _ => false,
            },
        }
    }

    pub fn satisfies_ontology(&self, o: &Ontology) -> bool {
        o.tbox().iter().all(|ax| self.satisfies_axiom(ax)) && o.abox().iter().all(|a| self.satisfies_assertion(a))
    }

    /// UNA: distinct named (non-placeholder) individuals denote distinct
    /// elements.
    pub fn respects_una(&self) -> bool {
        let named: Vec<usize> = self.individuals.iter().filter(|(n, _)| !n.is_placeholder()).map(|(_, &e)| e).collect();
        let set: BTreeSet<usize> = named.iter().copied().collect();
        set.len() == named.len()
    }

    pub fn satisfies_implication(&self, imp: &Implication) -> bool {
        match imp {
            Implication::Inclusion(ax) => self.satisfies_axiom(ax),
            Implication::Membership(a) => self.satisfies_assertion(a),
            Implication::ExistsFiller { role, individual } => {
                self.individuals.get(individual).is_some_and(|&x| (0..self.domain).any(|y| self.role_holds(role, x, y)))
            }
            Implication::PlaceholderEq { placeholder, individual } => {
                match (self.individuals.get(placeholder), self.individuals.get(individual)) {
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                }
            }
        }
    }
}

/// `I ⊨ item` under the standard semantics.
pub fn satisfies(interp: &Interpretation, item: &Statement) -> bool {
    match item {
        Statement::Axiom(ax) => interp.satisfies_axiom(ax),
        Statement::Assertion(a) => interp.satisfies_assertion(a),
    }
}

/// Every interpretation of `sig` over a domain of `size` elements with
/// individuals mapped injectively onto the first elements. Exponential; for
/// tiny signatures only.
pub fn enumerate_interpretations(sig: &Signature, size: usize) -> Vec<Interpretation> {
    let concepts: Vec<&Name> = sig.concepts.iter().collect();
    let roles: Vec<&Name> = sig.roles.iter().collect();
    let bits = concepts.len() * size + roles.len() * size * size;
    assert!(bits <= 20, "enumeration over {bits} bits is too large");
    let individuals: BTreeMap<Name, usize> = sig.individuals.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    if individuals.len() > size {
        return Vec::new();
    }
    (0u64..1 << bits)
        .map(|m| {
            let mut bit = 0;
            let mut next = || {
                let b = (m >> bit) & 1 == 1;
                bit += 1;
                b
            };
            let mut it = Interpretation { domain: size, individuals: individuals.clone(), ..Default::default() };
            for c in &concepts {
                let ext = (0..size).filter(|_| next()).collect();
                it.concepts.insert((*c).clone(), ext);
            }
            for r in &roles {
                let mut ext = BTreeSet::new();
                for x in 0..size {
                    for y in 0..size {
                        if next() {
                            ext.insert((x, y));
                        }
                    }
                }
                it.roles.insert((*r).clone(), ext);
            }
            it
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No countermodel with at most this many elements.
    NoCountermodelUpToBound(usize),
    Refuted(Interpretation),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    C(u32, usize),
    R(u32, usize, usize),
    Ex(u32, bool, usize),
    Eq(u32, usize),
}

/// Grounding of one ontology over one domain size.
struct Ground {
    cnf: Cnf,
    vars: HashMap<Key, u32>,
    concepts: Vec<Name>,
    roles: Vec<Name>,
    placeholders: Vec<Name>,
    named: BTreeMap<Name, usize>,
    size: usize,
}

impl Ground {
    fn new(sig: &Signature, named: &BTreeSet<Name>, size: usize) -> Ground {
        let named = named.iter().filter(|n| !n.is_placeholder()).enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let placeholders = sig.individuals.iter().filter(|n| n.is_placeholder()).cloned().collect();
        let mut g = Ground {
            cnf: Cnf::default(),
            vars: HashMap::new(),
            concepts: sig.concepts.iter().cloned().collect(),
            roles: sig.roles.iter().cloned().collect(),
            placeholders,
            named,
            size,
        };
        // fixed order of primitive variables: concepts, then roles
        for c in 0..g.concepts.len() as u32 {
            for x in 0..size {
                g.var(Key::C(c, x));
            }
        }
        for r in 0..g.roles.len() as u32 {
            for x in 0..size {
                for y in 0..size {
                    g.var(Key::R(r, x, y));
                }
            }
        }
        for p in 0..g.placeholders.len() as u32 {
            let lits: Vec<Lit> = (0..size).map(|e| Lit::pos(g.var(Key::Eq(p, e)))).collect();
            g.cnf.add(lits.clone());
            for i in 0..size {
                for j in i + 1..size {
                    g.cnf.add(vec![lits[i].not(), lits[j].not()]);
                }
            }
        }
        for r in 0..g.roles.len() as u32 {
            for inv in [false, true] {
                for x in 0..size {
                    let e = g.var(Key::Ex(r, inv, x));
                    let edges: Vec<Lit> = (0..size).map(|y| if inv { g.rlit(r, y, x) } else { g.rlit(r, x, y) }).collect();
                    let mut def = vec![Lit::neg(e)];
                    def.extend(edges.iter().copied());
                    g.cnf.add(def);
                    for l in edges {
                        g.cnf.add(vec![l.not(), Lit::pos(e)]);
                    }
                }
            }
        }
        g
    }

    fn var(&mut self, k: Key) -> u32 {
        if let Some(&v) = self.vars.get(&k) {
            return v;
        }
        let v = self.cnf.new_var();
        self.vars.insert(k, v);
        v
    }

    fn cid(&self, n: &Name) -> u32 {
        self.concepts.iter().position(|c| c == n).expect("concept in signature") as u32
    }

    fn rid(&self, n: &Name) -> u32 {
        self.roles.iter().position(|c| c == n).expect("role in signature") as u32
    }

    fn rlit(&mut self, r: u32, x: usize, y: usize) -> Lit {
        Lit::pos(self.var(Key::R(r, x, y)))
    }

    fn role_lit(&mut self, r: &Role, x: usize, y: usize) -> Lit {
        let id = self.rid(&r.name);
        if r.inverse {
            self.rlit(id, y, x)
        } else {
            self.rlit(id, x, y)
        }
    }

    fn basic_lit(&mut self, b: &BasicConcept, x: usize) -> Lit {
        match b {
            BasicConcept::Atomic(a) => {
                let c = self.cid(a);
                Lit::pos(self.var(Key::C(c, x)))
            }
            BasicConcept::Exists(r) => {
                let id = self.rid(&r.name);
                Lit::pos(self.var(Key::Ex(id, r.inverse, x)))
            }
        }
    }

    fn general_lit(&mut self, c: &GeneralConcept, x: usize) -> Lit {
        match c {
            GeneralConcept::Basic(b) => self.basic_lit(b, x),
            GeneralConcept::Neg(b) => self.basic_lit(b, x).not(),
            GeneralConcept::Conj(..) => unreachable!("normalized"),
        }
    }

    fn axiom(&mut self, ax: &Axiom) {
        let n = self.size;
        match ax {
            Axiom::ConceptIncl { lhs, rhs } => {
                for x in 0..n {
                    let (l, r) = (self.basic_lit(lhs, x), self.general_lit(rhs, x));
                    self.cnf.add(vec![l.not(), r]);
                }
            }
            Axiom::RoleIncl { lhs, rhs } => {
                for x in 0..n {
                    for y in 0..n {
                        let l = self.role_lit(lhs, x, y);
                        let r = match rhs {
                            GeneralRole::Basic(r) => self.role_lit(r, x, y),
                            GeneralRole::Neg(r) => self.role_lit(r, x, y).not(),
                        };
                        self.cnf.add(vec![l.not(), r]);
                    }
                }
            }
            Axiom::Funct(r) => {
                for x in 0..n {
                    for y in 0..n {
                        for z in y + 1..n {
                            let (a, b) = (self.role_lit(r, x, y), self.role_lit(r, x, z));
                            self.cnf.add(vec![a.not(), b.not()]);
                        }
                    }
                }
            }
        }
    }

    /// Possible elements of an individual with the literal that selects
    /// each (none for named individuals, which are fixed).
    fn places(&mut self, a: &Name) -> Vec<(usize, Option<Lit>)> {
        if let Some(&e) = self.named.get(a) {
            return vec![(e, None)];
        }
        let p = self.placeholders.iter().position(|q| q == a).expect("individual in signature") as u32;
        (0..self.size).map(|e| (e, Some(Lit::pos(self.var(Key::Eq(p, e)))))).collect()
    }

    /// Adds `guards → lit` for every placement of the individuals.
    fn assertion_clauses(&mut self, a: &Assertion, negate: bool) {
        match a {
            Assertion::Concept { concept, individual } => {
                let c = self.cid(concept);
                for (e, g) in self.places(individual) {
                    let l = Lit::pos(self.var(Key::C(c, e)));
                    let l = if negate { l.not() } else { l };
                    self.cnf.add(g.map(|g| g.not()).into_iter().chain([l]).collect());
                }
            }
            Assertion::Role { role, subject, object } => {
                let r = self.rid(role);
                for (s, gs) in self.places(subject) {
                    for (o, go) in self.places(object) {
                        let l = self.rlit(r, s, o);
                        let l = if negate { l.not() } else { l };
                        let clause = gs.into_iter().chain(go).map(|g| g.not()).chain([l]).collect();
                        self.cnf.add(clause);
                    }
                }
            }
        }
    }

    /// Requires some choice among `options`, each a conjunction of
    /// literals.
    fn some_of(&mut self, options: Vec<Vec<Lit>>) {
        let mut sel = Vec::new();
        for conj in options {
            let s = self.cnf.new_var();
            for l in conj {
                self.cnf.add(vec![Lit::neg(s), l]);
            }
            sel.push(Lit::pos(s));
        }
        self.cnf.add(sel);
    }

    /// Clauses that hold exactly in interpretations falsifying `imp`.
    fn negated(&mut self, imp: &Implication) {
        let n = self.size;
        match imp {
            Implication::Inclusion(Axiom::ConceptIncl { lhs, rhs }) => {
                let opts = (0..n).map(|x| vec![self.basic_lit(lhs, x), self.general_lit(rhs, x).not()]).collect();
                self.some_of(opts);
            }
            Implication::Inclusion(Axiom::RoleIncl { lhs, rhs }) => {
                let mut opts = Vec::new();
                for x in 0..n {
                    for y in 0..n {
                        let l = self.role_lit(lhs, x, y);
                        let r = match rhs {
                            GeneralRole::Basic(r) => self.role_lit(r, x, y).not(),
                            GeneralRole::Neg(r) => self.role_lit(r, x, y),
                        };
                        opts.push(vec![l, r]);
                    }
                }
                self.some_of(opts);
            }
            Implication::Inclusion(Axiom::Funct(r)) => {
                let mut opts = Vec::new();
                for x in 0..n {
                    for y in 0..n {
                        for z in y + 1..n {
                            opts.push(vec![self.role_lit(r, x, y), self.role_lit(r, x, z)]);
                        }
                    }
                }
                self.some_of(opts);
            }
            Implication::Membership(a) => self.assertion_clauses(a, true),
            Implication::ExistsFiller { role, individual } => {
                let id = self.rid(&role.name);
                for (e, g) in self.places(individual) {
                    let l = Lit::neg(self.var(Key::Ex(id, role.inverse, e)));
                    self.cnf.add(g.map(|g| g.not()).into_iter().chain([l]).collect());
                }
            }
            Implication::PlaceholderEq { placeholder, individual } => {
                let (a, b) = (self.places(placeholder), self.places(individual));
                let mut opts = Vec::new();
                for (ea, ga) in &a {
                    for (eb, gb) in &b {
                        if ea != eb {
                            opts.push(ga.iter().chain(gb.iter()).copied().collect());
                        }
                    }
                }
                self.some_of(opts);
            }
        }
    }

    fn decode(&self, model: &[bool]) -> Interpretation {
        let mut it = Interpretation { domain: self.size, ..Default::default() };
        for (ci, c) in self.concepts.iter().enumerate() {
            let ext = (0..self.size).filter(|&x| model[self.vars[&Key::C(ci as u32, x)] as usize]).collect();
            it.concepts.insert(c.clone(), ext);
        }
        for (ri, r) in self.roles.iter().enumerate() {
            let mut ext = BTreeSet::new();
            for x in 0..self.size {
                for y in 0..self.size {
                    if model[self.vars[&Key::R(ri as u32, x, y)] as usize] {
                        ext.insert((x, y));
                    }
                }
            }
            it.roles.insert(r.clone(), ext);
        }
        it.individuals = self.named.clone();
        for (pi, p) in self.placeholders.iter().enumerate() {
            let e = (0..self.size).find(|&e| model[self.vars[&Key::Eq(pi as u32, e)] as usize]).expect("exactly one");
            it.individuals.insert(p.clone(), e);
        }
        it
    }
}

fn implication_signature(imp: &Implication) -> Signature {
    let mut sig = Signature::default();
    match imp {
        Implication::Inclusion(ax) => sig.add_axiom(ax),
        Implication::Membership(a) => sig.add_assertion(a),
        Implication::ExistsFiller { role, individual } => {
            sig.roles.insert(role.name.clone());
            sig.individuals.insert(individual.clone());
        }
        Implication::PlaceholderEq { placeholder, individual } => {
            sig.individuals.insert(placeholder.clone());
            sig.individuals.insert(individual.clone());
        }
    }
    sig
}

/// The part of `o` connected to `seed` through shared concept, role or
/// individual names. Components with disjoint signatures do not constrain
/// each other, so entailment of a statement over `seed` only depends on
/// this module (provided the rest is satisfiable).
pub fn module(o: &Ontology, seed: &Signature) -> Ontology {
    let items: Vec<(Statement, Signature)> = o
        .tbox()
        .iter()
        .map(|ax| (Statement::Axiom(ax.clone()), ax.signature()))
        .chain(o.abox().iter().map(|a| {
            let mut s = Signature::default();
            s.add_assertion(a);
            (Statement::Assertion(a.clone()), s)
        }))
        .collect();
    let mut sig = seed.clone();
    let mut taken = vec![false; items.len()];
    loop {
        let mut changed = false;
        for (i, (_, s)) in items.iter().enumerate() {
            if taken[i] {
                continue;
            }
            let touches =
                !s.concepts.is_disjoint(&sig.concepts) || !s.roles.is_disjoint(&sig.roles) || !s.individuals.is_disjoint(&sig.individuals);
            if touches {
                taken[i] = true;
                sig.extend(s);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut tbox = Vec::new();
    let mut abox = Vec::new();
    for (i, (st, _)) in items.into_iter().enumerate() {
        if taken[i] {
            match st {
                Statement::Axiom(ax) => tbox.push(ax),
                Statement::Assertion(a) => abox.push(a),
            }
        }
    }
    Ontology::new(tbox, abox)
}

fn check_budget(sig: &Signature, max_domain: usize) -> Result<(), OracleError> {
    let symbols = sig.concepts.len() + sig.roles.len();
    if symbols > MAX_SYMBOLS {
        return Err(OracleError::BudgetExceeded(format!("{symbols} concept and role names (limit {MAX_SYMBOLS})")));
    }
    if max_domain > MAX_DOMAIN {
        return Err(OracleError::BudgetExceeded(format!("domain bound {max_domain} (limit {MAX_DOMAIN})")));
    }
    let named = sig.individuals.iter().filter(|n| !n.is_placeholder()).count();
    if named > max_domain {
        return Err(OracleError::BudgetExceeded(format!("{named} named individuals exceed domain bound {max_domain}")));
    }
    Ok(())
}

/// Searches domain sizes in ascending order for a model of `o` that also
/// satisfies `extra` (negated target clauses).
fn search(o: &Ontology, sig: &Signature, max_domain: usize, target: Option<&Implication>) -> Option<Interpretation> {
    let named: BTreeSet<Name> = sig.individuals.clone();
    let min = named.iter().filter(|n| !n.is_placeholder()).count().max(1);
    let tbox = normalize(o.tbox());
    for size in min..=max_domain {
        let mut g = Ground::new(sig, &named, size);
        for ax in &tbox {
            g.axiom(ax);
        }
        for a in o.abox() {
            g.assertion_clauses(a, false);
        }
        if let Some(t) = target {
            g.negated(t);
        }
        if let Some(m) = solve(&g.cnf) {
            let it = g.decode(&m);
            assert!(it.satisfies_ontology(o) && it.respects_una(), "grounding produced a non-model: {it}");
            if let Some(t) = target {
                assert!(!it.satisfies_implication(t), "grounding produced a non-countermodel for {t}: {it}");
            }
            return Some(it);
        }
    }
    None
}

/// Some model of `o` with at most `max_domain` elements.
pub fn find_model(o: &Ontology, max_domain: usize) -> Result<Option<Interpretation>, OracleError> {
    let sig = o.signature();
    check_budget(&sig, max_domain)?;
    Ok(search(o, &sig, max_domain, None))
}

/// Looks for a model of `o` that falsifies `statement`. When the whole
/// ontology is over budget, the search runs on the module connected to the
/// statement.
pub fn oracle_entails(o: &Ontology, statement: &Implication, max_domain: usize) -> Result<Verdict, OracleError> {
    let tsig = implication_signature(statement);
    let mut full = o.signature();
    full.extend(&tsig);
    let (o, sig) = if check_budget(&full, max_domain).is_ok() {
        (o.clone(), full)
    } else {
        let m = module(o, &tsig);
        let mut sig = m.signature();
        sig.extend(&tsig);
        check_budget(&sig, max_domain)?;
        (m, sig)
    };
    if let Implication::Inclusion(ax) = statement {
        let parts = normalize([ax]);
        if parts.len() > 1 {
            for p in parts {
                if let v @ Verdict::Refuted(_) = oracle_entails(&o, &Implication::Inclusion(p), max_domain)? {
                    return Ok(v);
                }
            }
            return Ok(Verdict::NoCountermodelUpToBound(max_domain));
        }
    }
    Ok(match search(&o, &sig, max_domain, Some(statement)) {
        Some(it) => Verdict::Refuted(it),
        None => Verdict::NoCountermodelUpToBound(max_domain),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{name, Notation};
    use crate::parser::{parse_axiom, parse_ontology_strict};

    fn ont(text: &str) -> Ontology {
        parse_ontology_strict(text, Notation::Unicode).unwrap()
    }

    fn inc(text: &str) -> Implication {
        Implication::Inclusion(parse_axiom(text, Notation::Unicode).unwrap())
    }

    #[test]
    fn satisfies_by_hand() {
        let mut it = Interpretation { domain: 1, ..Default::default() };
        it.concepts.insert(name("Student"), [0].into());
        it.concepts.insert(name("Employee"), [0].into());
        assert!(!it.satisfies_axiom(&parse_axiom("Student ⊑ ¬Employee", Notation::Unicode).unwrap()));
        assert!(it.satisfies_axiom(&parse_axiom("Student ⊑ Student", Notation::Unicode).unwrap()));
        let mut it = Interpretation { domain: 2, ..Default::default() };
        it.roles.insert(name("R"), [(0, 1)].into());
        assert_eq!(it.basic_ext(&BasicConcept::exists_inv("R")), [1].into());
    }

    #[test]
    fn models_and_countermodels() {
        let m = find_model(&Ontology::default(), 1).unwrap().unwrap();
        assert_eq!(m.domain, 1);
        let ms = ont("MasterStudent ⊑ Student\nMasterStudent ⊑ Employee\nStudent ⊑ ¬Employee\nMasterStudent(John)");
        for d in 1..=3 {
            assert_eq!(find_model(&ms, d).unwrap(), None);
        }
        let m = find_model(&ont("C ⊑ ∃R1\nC(a)"), 2).unwrap().unwrap();
        assert!(!m.roles[&name("R1")].is_empty());
        let f = ont("(funct WorksIn)\nWorksIn(John, Google)\nWorksIn(John, Acme)");
        assert_eq!(find_model(&f, 3).unwrap(), None);
    }

    #[test]
    fn entailment_verdicts() {
        let empty = Ontology::default();
        assert!(!oracle_entails(&empty, &inc("C ⊑ C"), 3).unwrap().is_refuted());
        match oracle_entails(&empty, &inc("C1 ⊑ C2"), 3).unwrap() {
            Verdict::Refuted(it) => assert_eq!(it.domain, 1),
            v => panic!("{v:?}"),
        }
        let r = Role::atomic(name("R1"));
        assert!(!oracle_entails(&ont("R1 ⊑ ¬R1"), &Implication::Inclusion(Axiom::Funct(r.clone())), 3).unwrap().is_refuted());
        match oracle_entails(&empty, &Implication::Inclusion(Axiom::Funct(r)), 3).unwrap() {
            Verdict::Refuted(it) => assert_eq!(it.roles[&name("R1")].len(), 2),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn budget_guard() {
        let big = ont("C1 ⊑ C2\nC2 ⊑ C3\nC3 ⊑ C4\nC4 ⊑ C5\nC5 ⊑ C6\nC6 ⊑ C7\nC7 ⊑ C8\nC8 ⊑ C9");
        assert!(matches!(find_model(&big, 3), Err(OracleError::BudgetExceeded(_))));
        assert!(matches!(find_model(&Ontology::default(), 4), Err(OracleError::BudgetExceeded(_))));
    }

    #[test]
    fn placeholders_may_meet_named_individuals() {
        let o = ont("(funct WorksAt)\nWorksAt(Anna, RegionalHospital)\nWorksAt(Anna, x3)");
        let eq = Implication::PlaceholderEq { placeholder: name("x3"), individual: name("RegionalHospital") };
        assert!(!oracle_entails(&o, &eq, 3).unwrap().is_refuted());
        let o = ont("WorksAt(Anna, RegionalHospital)\nWorksAt(Anna, x3)");
        assert!(oracle_entails(&o, &eq, 3).unwrap().is_refuted());
    }

    #[test]
    fn enumeration_matches_solver_on_tiny_tboxes() {
        let t = ont("A ⊑ ∃R1\n∃R1⁻ ⊑ ¬A");
        let sig = t.signature();
        let any = (1..=2).any(|d| enumerate_interpretations(&sig, d).iter().any(|i| i.satisfies_ontology(&t)));
        assert_eq!(any, find_model(&t, 2).unwrap().is_some());
    }
}
