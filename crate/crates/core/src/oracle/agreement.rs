//! Cross-checks the rule-based reasoner against the oracle on one ontology.

use serde::Serialize;

use super::{find_model, oracle_entails, OracleError, Verdict, MAX_DOMAIN};
use crate::model::{Assertion, Axiom, BasicConcept, Name, Notation, Ontology, Render, Role, Signature};
use crate::reasoner::{Implication, ReasonError, Reasoner};

/// Every PI, NI, role inclusion, functionality, membership and filler
/// statement over `sig`, role inclusions with a non-inverted left side.
pub fn candidates(sig: &Signature) -> Vec<Implication> {
    let roles: Vec<Role> = sig.roles.iter().flat_map(|r| [Role::atomic(r.clone()), Role::inverted(r.clone())]).collect();
    let basics: Vec<BasicConcept> =
        sig.concepts.iter().map(|c| BasicConcept::Atomic(c.clone())).chain(roles.iter().map(|r| BasicConcept::Exists(r.clone()))).collect();
    let mut out = Vec::new();
    for l in &basics {
        for r in &basics {
            out.push(Implication::Inclusion(Axiom::pi(l.clone(), r.clone())));
            out.push(Implication::Inclusion(Axiom::ni(l.clone(), r.clone())));
        }
    }
    for l in roles.iter().filter(|r| !r.inverse) {
        for r in &roles {
            out.push(Implication::Inclusion(Axiom::role_pi(l.clone(), r.clone())));
            out.push(Implication::Inclusion(Axiom::role_ni(l.clone(), r.clone())));
        }
    }
    for r in &roles {
        out.push(Implication::Inclusion(Axiom::Funct(r.clone())));
    }
    let inds: Vec<&Name> = sig.individuals.iter().collect();
    for a in &inds {
        for c in &sig.concepts {
            out.push(Implication::Membership(Assertion::Concept { concept: c.clone(), individual: (*a).clone() }));
        }
        for r in &roles {
            out.push(Implication::ExistsFiller { role: r.clone(), individual: (*a).clone() });
        }
        for b in &inds {
            for r in &sig.roles {
                out.push(Implication::Membership(Assertion::Role { role: r.clone(), subject: (*a).clone(), object: (*b).clone() }));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Agreement {
    pub checked: usize,
    /// Reasoner says entailed, oracle found a countermodel.
    pub unsound: Vec<String>,
    /// Oracle found a model, reasoner says unsatisfiable.
    pub sat_disagreements: Vec<String>,
    /// Closure check on raw facts disagrees with the chase-based check.
    pub raw_disagreements: Vec<String>,
    /// Reasoner says not entailed, oracle found no countermodel up to the
    /// bound. Reported, not a failure: the bound may be too small or the
    /// rule set incomplete.
    pub gaps: Vec<String>,
    /// Reasoner says satisfiable, oracle found no model up to the bound.
    pub no_small_model: Vec<String>,
    pub skipped: usize,
}

impl Agreement {
    pub fn violations(&self) -> usize {
        self.unsound.len() + self.sat_disagreements.len() + self.raw_disagreements.len()
    }

    pub fn absorb(&mut self, other: Agreement) {
        self.checked += other.checked;
        self.unsound.extend(other.unsound);
        self.sat_disagreements.extend(other.sat_disagreements);
        self.raw_disagreements.extend(other.raw_disagreements);
        self.gaps.extend(other.gaps);
        self.no_small_model.extend(other.no_small_model);
        self.skipped += other.skipped;
    }
}

/// Runs the checks on one ontology. `check_negatives` also asks the oracle
/// about every statement the reasoner rejects (for gap reporting).
pub fn check_ontology(o: &Ontology, check_negatives: bool) -> Result<Agreement, OracleError> {
    let mut out = Agreement::default();
    let r = Reasoner::new(o);
    let tag = |what: &str| format!("{what} in {{{}}}", o.render(Notation::Unicode).trim_end().replace('\n', "; "));
    let sat = match r.is_satisfiable() {
        Ok(s) => s,
        Err(ReasonError::DialectRejected { .. }) => {
            out.skipped += 1;
            return Ok(out);
        }
        Err(e) => panic!("unexpected reasoner error {e}"),
    };
    if r.is_satisfiable_raw().expect("dialect already checked") != sat {
        out.raw_disagreements.push(tag("raw/chase satisfiability"));
    }
    let model = find_model(o, MAX_DOMAIN)?;
    match (&model, sat) {
        (Some(m), false) => out.sat_disagreements.push(tag(&format!("model {m}"))),
        (None, true) => out.no_small_model.push(tag("satisfiable")),
        _ => {}
    }
    if !sat {
        return Ok(out);
    }
    let sig = o.signature();
    if sig.concepts.is_empty() && sig.roles.is_empty() {
        return Ok(out);
    }
    for c in candidates(&sig) {
        let claimed = match &c {
            Implication::Inclusion(ax) => r.entails_inclusion(ax).entailed,
            other => r.entails_assertion(other).expect("satisfiable").entailed,
        };
        if !claimed && !check_negatives {
            continue;
        }
        out.checked += 1;
        match (claimed, oracle_entails(o, &c, MAX_DOMAIN)?) {
            (true, Verdict::Refuted(m)) => out.unsound.push(tag(&format!("{c} refuted by {m}"))),
            (false, Verdict::NoCountermodelUpToBound(_)) => out.gaps.push(tag(&c.to_string())),
            _ => {}
        }
    }
    Ok(out)
}

/// Comparison of a hand-listed implication set against the reasoner, with
/// every reasoner-true candidate over the signature checked by the oracle.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CaseAudit {
    pub listed: usize,
    /// Listed items the reasoner does not entail.
    pub missing: Vec<String>,
    /// Derived TBox implications, or ABox implications when there are
    /// facts. Inputs, reflexives and contrapositives are excluded.
    pub derived: Vec<String>,
    /// Derived implications that are not listed.
    pub unlisted: Vec<String>,
    /// Reasoner-true candidates the oracle refutes.
    pub false_extras: Vec<String>,
    pub checked: usize,
}

impl CaseAudit {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.false_extras.is_empty()
    }
}

pub fn audit_case(o: &Ontology, listed: &[Implication]) -> Result<CaseAudit, AuditError> {
    let r = Reasoner::new(o);
    let entailed = |c: &Implication| -> Result<bool, ReasonError> {
        Ok(match c {
            Implication::Inclusion(ax) => r.entails_inclusion(ax).entailed,
            other => r.entails_assertion(other)?.entailed,
        })
    };
    let mut out = CaseAudit { listed: listed.len(), ..Default::default() };
    for l in listed {
        if !entailed(l)? {
            out.missing.push(l.to_string());
        }
    }
    // listings of ontologies with facts give only the fact-level consequences
    let derived = if o.abox().is_empty() { r.tbox_implications() } else { r.abox_implications()? };
    let listed_text: std::collections::BTreeSet<String> = listed.iter().map(|l| l.to_string()).collect();
    out.derived = derived.iter().map(|d| d.to_string()).collect();
    out.unlisted = out.derived.iter().filter(|d| !listed_text.contains(*d)).cloned().collect();
    for c in candidates(&o.signature()) {
        if !entailed(&c)? {
            continue;
        }
        out.checked += 1;
        if let Verdict::Refuted(m) = oracle_entails(o, &c, MAX_DOMAIN)? {
            out.false_extras.push(format!("{c} refuted by {m}"));
        }
    }
    Ok(out)
}

#[derive(Debug, thiserror::Error)]
pub enum AuditError {
    #[error(transparent)]
    Reason(#[from] ReasonError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
