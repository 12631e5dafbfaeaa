//! False statements for the entailment tasks, made by perturbing true ones.

use crate::model::{Assertion, Axiom, BasicConcept, GeneralConcept, GeneralRole, Name, Ontology, Role, Signature};
use crate::oracle::{oracle_entails, OracleError, Verdict, MAX_DOMAIN};
use crate::reasoner::{Implication, ReasonError, Reasoner};

/// How a candidate negative fared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegativeCheck {
    /// Not derivable, and the oracle produced a countermodel.
    Refuted,
    /// Not derivable; the ontology is too large for the oracle.
    NotDerivable,
    /// The reasoner derives it.
    Entailed,
    /// Not derivable, yet the oracle found no countermodel up to its bound.
    Unconfirmed,
}

impl NegativeCheck {
    pub fn usable(&self) -> bool {
        matches!(self, NegativeCheck::Refuted | NegativeCheck::NotDerivable)
    }
}

pub fn verify_negative(o: &Ontology, r: &Reasoner, imp: &Implication) -> Result<NegativeCheck, ReasonError> {
    let entailed = match imp {
        Implication::Inclusion(ax) => r.entails_inclusion(ax).entailed,
        other => r.entails_assertion(other)?.entailed,
    };
    if entailed {
        return Ok(NegativeCheck::Entailed);
    }
    Ok(match oracle_entails(o, imp, MAX_DOMAIN) {
        Ok(Verdict::Refuted(_)) => NegativeCheck::Refuted,
        Ok(Verdict::NoCountermodelUpToBound(_)) => NegativeCheck::Unconfirmed,
        Err(OracleError::BudgetExceeded(_)) => NegativeCheck::NotDerivable,
    })
}

fn other<'a>(pool: &'a [Name], current: &Name, offset: usize) -> Option<&'a Name> {
    let rest: Vec<&Name> = pool.iter().filter(|n| *n != current).collect();
    if rest.is_empty() {
        None
    } else {
        Some(rest[offset % rest.len()])
    }
}

fn swap_basic(b: &BasicConcept, sig: &Signature, offset: usize) -> Option<BasicConcept> {
    match b {
        BasicConcept::Atomic(a) => {
            let pool: Vec<Name> = sig.concepts.iter().cloned().collect();
            other(&pool, a, offset).map(|n| BasicConcept::Atomic(n.clone()))
        }
        BasicConcept::Exists(r) => {
            let pool: Vec<Name> = sig.roles.iter().cloned().collect();
            other(&pool, &r.name, offset).map(|n| BasicConcept::Exists(Role { name: n.clone(), inverse: r.inverse }))
        }
    }
}

/// Perturbations of a true statement, each tagged with its kind. `offset`
/// picks among replacement names.
pub fn perturb(imp: &Implication, sig: &Signature, offset: usize) -> Vec<(&'static str, Implication)> {
    let mut out = Vec::new();
    let incl = |ax: Axiom| Implication::Inclusion(ax);
    match imp {
        Implication::Inclusion(Axiom::ConceptIncl { lhs, rhs }) => match rhs {
            GeneralConcept::Basic(b) => {
                out.push(("swap", incl(Axiom::pi(b.clone(), lhs.clone()))));
                out.push(("negate", incl(Axiom::ni(lhs.clone(), b.clone()))));
                if let Some(n) = swap_basic(b, sig, offset) {
                    out.push(("rename", incl(Axiom::pi(lhs.clone(), n))));
                }
            }
            GeneralConcept::Neg(b) => {
                out.push(("negate", incl(Axiom::pi(lhs.clone(), b.clone()))));
                if let Some(n) = swap_basic(b, sig, offset) {
                    out.push(("rename", incl(Axiom::ni(lhs.clone(), n))));
                }
            }
            GeneralConcept::Conj(..) => {}
        },
        Implication::Inclusion(Axiom::RoleIncl { lhs, rhs }) => {
            let roles: Vec<Name> = sig.roles.iter().cloned().collect();
            match rhs {
                GeneralRole::Basic(r) => {
                    out.push(("swap", incl(Axiom::role_pi(r.clone(), lhs.clone()))));
                    out.push(("negate", incl(Axiom::role_ni(lhs.clone(), r.clone()))));
                    if let Some(n) = other(&roles, &r.name, offset) {
                        out.push(("rename", incl(Axiom::role_pi(lhs.clone(), Role { name: n.clone(), inverse: r.inverse }))));
                    }
                }
                GeneralRole::Neg(r) => {
                    out.push(("negate", incl(Axiom::role_pi(lhs.clone(), r.clone()))));
                }
            }
        }
        Implication::Inclusion(Axiom::Funct(_)) => {}
        Implication::Membership(Assertion::Concept { concept, individual }) => {
            let inds: Vec<Name> = sig.individuals.iter().filter(|n| !n.is_placeholder()).cloned().collect();
            let concepts: Vec<Name> = sig.concepts.iter().cloned().collect();
            if let Some(b) = other(&inds, individual, offset) {
                out.push(("individual", Implication::Membership(Assertion::Concept { concept: concept.clone(), individual: b.clone() })));
            }
            if let Some(c) = other(&concepts, concept, offset) {
                out.push(("rename", Implication::Membership(Assertion::Concept { concept: c.clone(), individual: individual.clone() })));
            }
        }
        Implication::Membership(Assertion::Role { role, subject, object }) => {
            let inds: Vec<Name> = sig.individuals.iter().filter(|n| !n.is_placeholder()).cloned().collect();
            if subject != object {
                out.push((
                    "swap",
                    Implication::Membership(Assertion::Role { role: role.clone(), subject: object.clone(), object: subject.clone() }),
                ));
            }
            if let Some(b) = other(&inds, object, offset) {
                out.push((
                    "individual",
                    Implication::Membership(Assertion::Role { role: role.clone(), subject: subject.clone(), object: b.clone() }),
                ));
            }
        }
        Implication::ExistsFiller { role, individual } => {
            let inds: Vec<Name> = sig.individuals.iter().filter(|n| !n.is_placeholder()).cloned().collect();
            out.push(("invert", Implication::ExistsFiller { role: role.inverse(), individual: individual.clone() }));
            if let Some(b) = other(&inds, individual, offset) {
                out.push(("individual", Implication::ExistsFiller { role: role.clone(), individual: b.clone() }));
            }
        }
        Implication::PlaceholderEq { placeholder, individual } => {
            let inds: Vec<Name> = sig.individuals.iter().filter(|n| !n.is_placeholder()).cloned().collect();
            if let Some(b) = other(&inds, individual, offset) {
                out.push(("individual", Implication::PlaceholderEq { placeholder: placeholder.clone(), individual: b.clone() }));
            }
        }
    }
    out
}
