//! PI and NI closure of a normalized TBox.
//!
//! Facts are interned pairs. Role inclusions are stored with a non-inverted
//! left side (`R⁻ ⊑ S` is kept as `R ⊑ S⁻`), and every rule that reads a role
//! inclusion considers both orientations. All rule instances are recorded so
//! that the cheapest derivation can be picked once the fixpoint is reached.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use super::{Derivation, Rule};
use crate::model::{normalize, Axiom, BasicConcept, GeneralConcept, GeneralRole, Role};

#[derive(Debug, Clone)]
pub(crate) struct Interner<T> {
    items: Vec<T>,
    ix: HashMap<T, u32>,
}

impl<T: Clone + Eq + Hash> Interner<T> {
    pub fn new() -> Self {
        Interner { items: Vec::new(), ix: HashMap::new() }
    }

    pub fn intern(&mut self, t: &T) -> u32 {
        if let Some(&i) = self.ix.get(t) {
            return i;
        }
        let i = self.items.len() as u32;
        self.items.push(t.clone());
        self.ix.insert(t.clone(), i);
        i
    }

    pub fn get(&self, t: &T) -> Option<u32> {
        self.ix.get(t).copied()
    }

    pub fn value(&self, i: u32) -> &T {
        &self.items[i as usize]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }
}

/// An interned closure member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum F {
    CPi(u32, u32),
    CNi(u32, u32),
    RPi(u32, u32),
    RNi(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Instance {
    pub rule: Rule,
    pub premises: Vec<F>,
}

#[derive(Debug, Clone)]
pub(crate) struct Closure {
    pub concepts: Interner<BasicConcept>,
    pub roles: Interner<Role>,
    inv: Vec<u32>,
    pub facts: HashSet<F>,
    pub inputs: HashSet<F>,
    pub funct: BTreeSet<Role>,
    /// Input axioms that are not plain PIs/NIs after normalization
    /// (functionality axioms).
    pub other_inputs: BTreeSet<Axiom>,
    instances: HashMap<F, Vec<Instance>>,
    /// For each concept, the concepts strictly below it in the PI closure.
    pi_pred: HashMap<u32, Vec<u32>>,
    /// For each role expression, the role expressions strictly below it.
    rpi_pred: HashMap<u32, Vec<u32>>,
    best: HashMap<F, (usize, usize)>,
}

impl Closure {
    pub fn build<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> Closure {
        let tbox = normalize(tbox);
        let mut c = Closure {
            concepts: Interner::new(),
            roles: Interner::new(),
            inv: Vec::new(),
            facts: HashSet::new(),
            inputs: HashSet::new(),
            funct: BTreeSet::new(),
            other_inputs: BTreeSet::new(),
            instances: HashMap::new(),
            pi_pred: HashMap::new(),
            rpi_pred: HashMap::new(),
            best: HashMap::new(),
        };
        for ax in &tbox {
            let sig = ax.signature();
            for a in &sig.concepts {
                c.concepts.intern(&BasicConcept::Atomic(a.clone()));
            }
            for r in &sig.roles {
                c.role_id(&Role::atomic(r.clone()));
            }
        }
        for ax in &tbox {
            match ax {
                Axiom::ConceptIncl { lhs, rhs } => {
                    let l = c.concepts.intern(lhs);
                    match rhs {
                        GeneralConcept::Basic(b) => {
                            let r = c.concepts.intern(b);
                            c.inputs.insert(F::CPi(l, r));
                        }
                        GeneralConcept::Neg(b) => {
                            let r = c.concepts.intern(b);
                            c.inputs.insert(F::CNi(l, r));
                        }
                        GeneralConcept::Conj(..) => unreachable!("normalized"),
                    }
                }
                Axiom::RoleIncl { lhs, rhs } => {
                    let l = c.role_id(lhs);
                    match rhs {
                        GeneralRole::Basic(r) => {
                            let r = c.role_id(r);
                            let (a, b) = c.canon(l, r);
                            c.inputs.insert(F::RPi(a, b));
                        }
                        GeneralRole::Neg(r) => {
                            let r = c.role_id(r);
                            let (a, b) = c.canon(l, r);
                            c.inputs.insert(F::RNi(a, b));
                        }
                    }
                }
                Axiom::Funct(r) => {
                    c.role_id(r);
                    c.funct.insert(r.clone());
                    c.other_inputs.insert(ax.clone());
                }
            }
        }
        c.facts = c.inputs.clone();
        c.concept_pi_fixpoint();
        c.role_pi_fixpoint();
        c.ni_fixpoint();
        c.choose_derivations();
        c
    }

    /// Interns a role expression together with its inverse and both
    /// existential concepts, so that every lookup on them is total.
    fn role_id(&mut self, r: &Role) -> u32 {
        let a = Role::atomic(r.name.clone());
        if self.roles.get(&a).is_none() {
            let i = self.roles.intern(&a);
            let j = self.roles.intern(&a.inverse());
            self.inv.push(j);
            self.inv.push(i);
            self.concepts.intern(&BasicConcept::Exists(a.clone()));
            self.concepts.intern(&BasicConcept::Exists(a.inverse()));
        }
        self.roles.get(r).expect("interned")
    }

    pub fn inv(&self, r: u32) -> u32 {
        self.inv[r as usize]
    }

    pub fn canon(&self, a: u32, b: u32) -> (u32, u32) {
        if self.roles.value(a).inverse {
            (self.inv(a), self.inv(b))
        } else {
            (a, b)
        }
    }

    fn exists(&self, r: u32) -> u32 {
        self.concepts.get(&BasicConcept::Exists(self.roles.value(r).clone())).expect("existentials are interned with their role")
    }

    /// Records a rule instance; returns true if the conclusion is new.
    fn add(&mut self, conclusion: F, rule: Rule, premises: Vec<F>) -> bool {
        if self.inputs.contains(&conclusion) {
            return false;
        }
        let list = self.instances.entry(conclusion).or_default();
        let inst = Instance { rule, premises };
        if !list.contains(&inst) {
            list.push(inst);
        }
        self.facts.insert(conclusion)
    }

    fn sorted_inputs(&self, pred: impl Fn(&F) -> bool) -> Vec<F> {
        let mut v: Vec<F> = self.inputs.iter().copied().filter(|f| pred(f)).collect();
        v.sort();
        v
    }

    fn concept_pi_fixpoint(&mut self) {
        let mut queue: VecDeque<F> = self.sorted_inputs(|f| matches!(f, F::CPi(a, b) if a != b)).into();
        let mut succ: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut pred: HashMap<u32, Vec<u32>> = HashMap::new();
        while let Some(f) = queue.pop_front() {
            let F::CPi(x, y) = f else { unreachable!() };
            for z in succ.get(&y).cloned().unwrap_or_default() {
                if z != x && self.add(F::CPi(x, z), Rule::PI1, vec![f, F::CPi(y, z)]) {
                    queue.push_back(F::CPi(x, z));
                }
            }
            for w in pred.get(&x).cloned().unwrap_or_default() {
                if w != y && self.add(F::CPi(w, y), Rule::PI1, vec![F::CPi(w, x), f]) {
                    queue.push_back(F::CPi(w, y));
                }
            }
            succ.entry(x).or_default().push(y);
            pred.entry(y).or_default().push(x);
        }
        for v in pred.values_mut() {
            v.sort();
        }
        self.pi_pred = pred;
    }

    fn role_pi_fixpoint(&mut self) {
        let mut queue: VecDeque<F> = self.sorted_inputs(|f| matches!(f, F::RPi(a, b) if a != b)).into();
        let mut succ: HashMap<u32, Vec<(u32, F)>> = HashMap::new();
        let mut pred: HashMap<u32, Vec<(u32, F)>> = HashMap::new();
        while let Some(f) = queue.pop_front() {
            let F::RPi(x, y) = f else { unreachable!() };
            for (x, y) in [(x, y), (self.inv(x), self.inv(y))] {
                for (z, g) in succ.get(&y).cloned().unwrap_or_default() {
                    if z == x {
                        continue;
                    }
                    let (a, b) = self.canon(x, z);
                    if self.add(F::RPi(a, b), Rule::PI2, vec![f, g]) {
                        queue.push_back(F::RPi(a, b));
                    }
                }
                for (w, g) in pred.get(&x).cloned().unwrap_or_default() {
                    if w == y {
                        continue;
                    }
                    let (a, b) = self.canon(w, y);
                    if self.add(F::RPi(a, b), Rule::PI2, vec![g, f]) {
                        queue.push_back(F::RPi(a, b));
                    }
                }
            }
            for (x, y) in [(x, y), (self.inv(x), self.inv(y))] {
                succ.entry(x).or_default().push((y, f));
                pred.entry(y).or_default().push((x, f));
            }
        }
        self.rpi_pred = pred
            .into_iter()
            .map(|(k, v)| {
                let mut v: Vec<u32> = v.into_iter().map(|(w, _)| w).collect();
                v.sort();
                v.dedup();
                (k, v)
            })
            .collect();
    }

    fn rpi_fact(&self, sub: u32, sup: u32) -> F {
        let (a, b) = self.canon(sub, sup);
        F::RPi(a, b)
    }

    fn ni_fixpoint(&mut self) {
        let mut queue: VecDeque<F> = self.sorted_inputs(|f| matches!(f, F::CNi(..) | F::RNi(..))).into();
        let mut seen: HashSet<F> = queue.iter().copied().collect();
        let mut push = |queue: &mut VecDeque<F>, f: F| {
            if seen.insert(f) {
                queue.push_back(f);
            }
        };
        while let Some(f) = queue.pop_front() {
            let mut out: Vec<(F, Rule, Vec<F>)> = Vec::new();
            match f {
                F::CNi(x, y) => {
                    // NI1: α = w ⊑ x, β = x ⊑ ¬y
                    for &w in self.pi_pred.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                        out.push((F::CNi(w, y), Rule::NI1, vec![F::CPi(w, x), f]));
                    }
                    // NI2: α = w ⊑ y, β = x ⊑ ¬y
                    for &w in self.pi_pred.get(&y).map(Vec::as_slice).unwrap_or(&[]) {
                        out.push((F::CNi(w, x), Rule::NI2, vec![F::CPi(w, y), f]));
                    }
                    // NI3 / NI6: β = ∃S ⊑ ¬y
                    if let BasicConcept::Exists(s) = self.concepts.value(x).clone() {
                        let s = self.roles.get(&s).expect("interned");
                        let rule = if self.roles.value(s).inverse { Rule::NI6 } else { Rule::NI3 };
                        for &t in self.rpi_pred.get(&s).map(Vec::as_slice).unwrap_or(&[]) {
                            out.push((F::CNi(self.exists(t), y), rule, vec![self.rpi_fact(t, s), f]));
                        }
                    }
                    // NI4 / NI5: β = x ⊑ ¬∃S
                    if let BasicConcept::Exists(s) = self.concepts.value(y).clone() {
                        let s = self.roles.get(&s).expect("interned");
                        let rule = if self.roles.value(s).inverse { Rule::NI5 } else { Rule::NI4 };
                        for &t in self.rpi_pred.get(&s).map(Vec::as_slice).unwrap_or(&[]) {
                            out.push((F::CNi(self.exists(t), x), rule, vec![self.rpi_fact(t, s), f]));
                        }
                    }
                    // NI10 / NI11: ∃S ⊑ ¬∃S
                    if x == y {
                        if let BasicConcept::Exists(s) = self.concepts.value(x).clone() {
                            let s = self.roles.get(&s).expect("interned");
                            let (rule, base) = if self.roles.value(s).inverse { (Rule::NI11, self.inv(s)) } else { (Rule::NI10, s) };
                            let other = if rule == Rule::NI10 { self.inv(s) } else { base };
                            let e = self.exists(other);
                            out.push((F::RNi(base, base), rule, vec![f]));
                            out.push((F::CNi(e, e), rule, vec![f]));
                        }
                    }
                }
                F::RNi(x0, y0) => {
                    for (x, y) in [(x0, y0), (self.inv(x0), self.inv(y0))] {
                        // NI7: α = t ⊑ x, β = x ⊑ ¬y
                        for &t in self.rpi_pred.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                            let (a, b) = self.canon(t, y);
                            out.push((F::RNi(a, b), Rule::NI7, vec![self.rpi_fact(t, x), f]));
                        }
                        // NI8: α = t ⊑ y, β = x ⊑ ¬y
                        for &t in self.rpi_pred.get(&y).map(Vec::as_slice).unwrap_or(&[]) {
                            let (a, b) = self.canon(t, x);
                            out.push((F::RNi(a, b), Rule::NI8, vec![self.rpi_fact(t, y), f]));
                        }
                    }
                    // NI9: R ⊑ ¬R
                    if x0 == y0 {
                        let e = self.exists(x0);
                        let ei = self.exists(self.inv(x0));
                        out.push((F::CNi(e, e), Rule::NI9, vec![f]));
                        out.push((F::CNi(ei, ei), Rule::NI9, vec![f]));
                    }
                }
                _ => unreachable!(),
            }
            for (concl, rule, premises) in out {
                self.add(concl, rule, premises);
                if !self.inputs.contains(&concl) {
                    push(&mut queue, concl);
                }
            }
        }
    }

    /// Picks, for every derived fact, the instance with the smallest total
    /// number of rule applications; ties go to the smaller rule id, then to
    /// the smaller premise text.
    fn choose_derivations(&mut self) {
        let mut cost: HashMap<F, usize> = self.inputs.iter().map(|&f| (f, 0)).collect();
        loop {
            let mut changed = false;
            for (concl, insts) in &self.instances {
                for inst in insts {
                    let Some(sum) = inst.premises.iter().try_fold(1usize, |acc, p| cost.get(p).map(|c| acc + c)) else {
                        continue;
                    };
                    if cost.get(concl).is_none_or(|&c| sum < c) {
                        cost.insert(*concl, sum);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut best = HashMap::new();
        for (concl, insts) in &self.instances {
            let target = cost[concl];
            let mut candidates: Vec<(usize, (Rule, Vec<String>))> = insts
                .iter()
                .enumerate()
                .filter(|(_, inst)| inst.premises.iter().try_fold(1usize, |acc, p| cost.get(p).map(|c| acc + c)) == Some(target))
                .map(|(i, inst)| (i, (inst.rule, inst.premises.iter().map(|p| self.axiom(*p).to_string()).collect())))
                .collect();
            candidates.sort_by(|a, b| a.1.cmp(&b.1));
            best.insert(*concl, (candidates[0].0, target));
        }
        self.best = best;
    }

    pub fn axiom(&self, f: F) -> Axiom {
        let c = |i: u32| self.concepts.value(i).clone();
        let r = |i: u32| self.roles.value(i).clone();
        match f {
            F::CPi(a, b) => Axiom::pi(c(a), c(b)),
            F::CNi(a, b) => Axiom::ni(c(a), c(b)),
            F::RPi(a, b) => Axiom::role_pi(r(a), r(b)),
            F::RNi(a, b) => Axiom::role_ni(r(a), r(b)),
        }
    }

    pub fn derivation(&self, f: F) -> Option<Derivation> {
        let &(i, _) = self.best.get(&f)?;
        let inst = &self.instances[&f][i];
        Some(Derivation { rule: inst.rule, premises: inst.premises.iter().map(|p| self.axiom(*p)).collect() })
    }

    pub(crate) fn best_instance(&self, f: F) -> Option<&Instance> {
        let &(i, _) = self.best.get(&f)?;
        Some(&self.instances[&f][i])
    }

    /// Interned form of a normalized PI/NI, if all its symbols are known.
    pub fn lookup(&self, ax: &Axiom) -> Option<F> {
        match ax {
            Axiom::ConceptIncl { lhs, rhs } => {
                let l = self.concepts.get(lhs)?;
                match rhs {
                    GeneralConcept::Basic(b) => Some(F::CPi(l, self.concepts.get(b)?)),
                    GeneralConcept::Neg(b) => Some(F::CNi(l, self.concepts.get(b)?)),
                    GeneralConcept::Conj(..) => None,
                }
            }
            Axiom::RoleIncl { lhs, rhs } => {
                let l = self.roles.get(lhs)?;
                match rhs {
                    GeneralRole::Basic(r) => {
                        let (a, b) = self.canon(l, self.roles.get(r)?);
                        Some(F::RPi(a, b))
                    }
                    GeneralRole::Neg(r) => {
                        let (a, b) = self.canon(l, self.roles.get(r)?);
                        Some(F::RNi(a, b))
                    }
                }
            }
            Axiom::Funct(_) => None,
        }
    }

    pub fn has(&self, f: F) -> bool {
        self.facts.contains(&f)
    }

    /// Basic concept `b` is unsatisfiable (`b ⊑ ¬b` in the closure).
    pub fn concept_unsat(&self, b: &BasicConcept) -> Option<F> {
        let i = self.concepts.get(b)?;
        Some(F::CNi(i, i)).filter(|f| self.has(*f))
    }

    pub fn role_unsat(&self, r: &Role) -> Option<F> {
        let i = self.roles.get(r)?;
        let (a, b) = self.canon(i, i);
        Some(F::RNi(a, b)).filter(|f| self.has(*f))
    }

    /// Reflexive entries over the signature: `A ⊑ A`, `∃R ⊑ ∃R`,
    /// `∃R⁻ ⊑ ∃R⁻`, `R ⊑ R`.
    pub fn reflexive(&self) -> BTreeSet<Axiom> {
        let mut out = BTreeSet::new();
        for i in 0..self.concepts.len() as u32 {
            let b = self.concepts.value(i).clone();
            out.insert(Axiom::pi(b.clone(), b));
        }
        for i in 0..self.roles.len() as u32 {
            let r = self.roles.value(i).clone();
            if !r.inverse {
                out.insert(Axiom::role_pi(r.clone(), r));
            }
        }
        out
    }

    pub fn input_axioms(&self) -> BTreeSet<Axiom> {
        let mut out: BTreeSet<Axiom> = self.inputs.iter().map(|f| self.axiom(*f)).collect();
        out.extend(self.other_inputs.iter().cloned());
        out
    }

    pub fn derived_map(&self, keep: impl Fn(&F) -> bool) -> BTreeMap<Axiom, Derivation> {
        self.facts
            .iter()
            .filter(|f| !self.inputs.contains(f) && keep(f))
            .map(|f| (self.axiom(*f), self.derivation(*f).expect("derived facts have instances")))
            .collect()
    }
}
