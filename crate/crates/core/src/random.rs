//! Seeded random ontologies over a small fixed vocabulary, for property
//! tests and synthetic datasets.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{name, Assertion, Axiom, BasicConcept, GeneralConcept, Name, Ontology, Role};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub max_axioms: usize,
    pub max_assertions: usize,
    pub concepts: usize,
    pub roles: usize,
    pub individuals: usize,
    pub role_axioms: bool,
    pub functionality: bool,
    pub conjunctions: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            max_axioms: 6,
            max_assertions: 4,
            concepts: 4,
            roles: 3,
            individuals: 3,
            role_axioms: true,
            functionality: true,
            conjunctions: false,
        }
    }
}

impl RandomSpec {
    pub fn concept_names(&self) -> Vec<Name> {
        (1..=self.concepts).map(|i| name(&format!("C{i}"))).collect()
    }

    pub fn role_names(&self) -> Vec<Name> {
        (1..=self.roles).map(|i| name(&format!("R{i}"))).collect()
    }

    pub fn individual_names(&self) -> Vec<Name> {
        (0..self.individuals).map(|i| name(&((b'a' + i as u8) as char).to_string())).collect()
    }
}

pub fn random_role(spec: &RandomSpec, rng: &mut impl Rng) -> Role {
    let n = spec.role_names().choose(rng).expect("at least one role").clone();
    Role { name: n, inverse: rng.gen_bool(0.3) }
}

pub fn random_basic(spec: &RandomSpec, rng: &mut impl Rng) -> BasicConcept {
    if spec.roles > 0 && rng.gen_bool(0.35) {
        BasicConcept::Exists(random_role(spec, rng))
    } else {
        BasicConcept::Atomic(spec.concept_names().choose(rng).expect("at least one concept").clone())
    }
}

pub fn random_axiom(spec: &RandomSpec, rng: &mut impl Rng) -> Axiom {
    let roles = spec.roles > 0;
    let pick = rng.gen_range(0..10);
    match pick {
        0..=3 => Axiom::pi(random_basic(spec, rng), random_basic(spec, rng)),
        4..=5 => Axiom::ni(random_basic(spec, rng), random_basic(spec, rng)),
        6 if spec.conjunctions => {
            let parts = (0..rng.gen_range(2..=3))
                .map(|_| {
                    let b = random_basic(spec, rng);
                    if rng.gen_bool(0.3) {
                        GeneralConcept::Neg(b)
                    } else {
                        GeneralConcept::Basic(b)
                    }
                })
                .collect();
            Axiom::ConceptIncl { lhs: random_basic(spec, rng), rhs: GeneralConcept::conj_all(parts) }
        }
        7 if roles && spec.role_axioms => Axiom::role_pi(random_role(spec, rng), random_role(spec, rng)),
        8 if roles && spec.role_axioms => Axiom::role_ni(random_role(spec, rng), random_role(spec, rng)),
        9 if roles && spec.functionality => Axiom::Funct(random_role(spec, rng)),
        _ => Axiom::pi(random_basic(spec, rng), random_basic(spec, rng)),
    }
}

pub fn random_assertion(spec: &RandomSpec, rng: &mut impl Rng) -> Assertion {
    let inds = spec.individual_names();
    let ind = |rng: &mut dyn rand::RngCore| inds.choose(rng).expect("at least one individual").clone();
    if spec.roles > 0 && rng.gen_bool(0.4) {
        let role = spec.role_names().choose(rng).expect("role").clone();
        Assertion::Role { role, subject: ind(rng), object: ind(rng) }
    } else {
        let concept = spec.concept_names().choose(rng).expect("concept").clone();
        Assertion::Concept { concept, individual: ind(rng) }
    }
}

/// A random ontology. Functionality is dropped for roles that appear on the
/// right of a positive role inclusion, so the result is always in the
/// supported fragment.
pub fn random_ontology(spec: &RandomSpec, rng: &mut impl Rng) -> Ontology {
    let n_ax = rng.gen_range(0..=spec.max_axioms);
    let mut tbox: Vec<Axiom> = (0..n_ax).map(|_| random_axiom(spec, rng)).collect();
    let specialised: Vec<Name> = tbox
        .iter()
        .filter_map(|ax| match ax {
            Axiom::RoleIncl { rhs: crate::model::GeneralRole::Basic(r), .. } => Some(r.name.clone()),
            _ => None,
        })
        .collect();
    tbox.retain(|ax| !matches!(ax, Axiom::Funct(r) if specialised.contains(&r.name)));
    let n_as = if spec.individuals == 0 { 0 } else { rng.gen_range(0..=spec.max_assertions) };
    let abox: Vec<Assertion> = (0..n_as).map(|_| random_assertion(spec, rng)).collect();
    Ontology::new(tbox, abox)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn deterministic_and_within_bounds() {
        let spec = RandomSpec::default();
        for seed in 0..50 {
            let a = random_ontology(&spec, &mut seeded(seed, "random"));
            let b = random_ontology(&spec, &mut seeded(seed, "random"));
            assert_eq!(a, b);
            let sig = a.signature();
            assert!(a.tbox().len() <= 6 && sig.individuals.len() <= 3);
            assert!(sig.concepts.len() <= 4 && sig.roles.len() <= 3);
        }
    }
}
