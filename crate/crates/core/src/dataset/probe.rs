use rand::seq::SliceRandom;

use super::DatasetError;
use crate::model::{name, Assertion, Axiom, Name, Notation, Ontology, Render, Role};
use crate::reasoner::{Implication, ReasonError, Reasoner};
use crate::rng::seeded;

fn role_assertions<'a>(o: &'a Ontology, role: &Name) -> Vec<(&'a Name, &'a Name)> {
    o.abox()
        .iter()
        .filter_map(|a| match a {
            Assertion::Role { role: r, subject, object } if r == role => Some((subject, object)),
            _ => None,
        })
        .collect()
}

/// The lowest-numbered placeholder `xN` not used in `o`.
pub fn next_placeholder(o: &Ontology) -> Name {
    let used = o.signature().individuals;
    (1..).map(|i| name(&format!("x{i}"))).find(|n| !used.contains(n)).expect("unbounded")
}

fn check_entailed(o: &Ontology, imp: &Implication) -> Result<(), DatasetError> {
    let unverified = |reason: String| DatasetError::Unverified { statement: imp.to_string(), reason };
    let result = match Reasoner::new(o).entails_assertion(imp) {
        // Functional roles may not be specialised, so check the
        // functionality-free part. Entailment is monotone, so a positive
        // answer there carries over.
        Err(ReasonError::DialectRejected { .. }) => {
            let tbox: Vec<Axiom> = o.tbox().iter().filter(|a| !matches!(a, Axiom::Funct(_))).cloned().collect();
            let reduced = Ontology::new(tbox, o.abox().iter().cloned());
            Reasoner::new(&reduced).entails_assertion(imp)
        }
        other => other,
    };
    match result {
        Ok(e) if e.entailed => Ok(()),
        Ok(_) => Err(unverified("not entailed".into())),
        Err(e) => Err(unverified(e.to_string())),
    }
}

/// Adds `fresh ⊑ role⁻` and `role⁻ ⊑ fresh`, then asks for `fresh(b, a)`
/// given a seeded choice of `role(a, b)`.
pub fn build_inverse_probe(o: &Ontology, role: &Name, fresh: &Name, seed: u64) -> Result<(Ontology, Implication), DatasetError> {
    let sig = o.signature();
    if sig.roles.contains(fresh) || sig.concepts.contains(fresh) || sig.individuals.contains(fresh) {
        return Err(DatasetError::NameInUse(fresh.clone()));
    }
    let pairs = role_assertions(o, role);
    let &(a, b) = pairs.choose(&mut seeded(seed, "inverse-probe")).ok_or_else(|| DatasetError::NoAssertionForRole(role.clone()))?;
    let mut out = o.clone();
    let inv = Role::inverted(role.clone());
    out.insert_axiom(Axiom::role_pi(inv.clone(), Role::atomic(fresh.clone())));
    out.insert_axiom(Axiom::role_pi(Role::atomic(fresh.clone()), inv));
    let imp = Implication::Membership(Assertion::Role { role: fresh.clone(), subject: b.clone(), object: a.clone() });
    check_entailed(&out, &imp)?;
    Ok((out, imp))
}

/// For `(funct role)` adds `role(a, x)` next to a seeded `role(a, b)` and asks
/// for `x ≡ b`; for `(funct role⁻)` adds `role(x, b)` and asks for `x ≡ a`.
pub fn build_functional_probe(o: &Ontology, role: &Name, inverse: bool, seed: u64) -> Result<(Ontology, Implication), DatasetError> {
    let declared = Role { name: role.clone(), inverse };
    if !o.tbox().contains(&Axiom::Funct(declared.clone())) {
        return Err(DatasetError::RoleNotFunctional(declared.render(Notation::Unicode)));
    }
    // placeholders already in the ABox would make the probe ambiguous
    let pairs: Vec<_> = role_assertions(o, role).into_iter().filter(|(a, b)| !a.is_placeholder() && !b.is_placeholder()).collect();
    let &(a, b) = pairs.choose(&mut seeded(seed, "functional-probe")).ok_or_else(|| DatasetError::NoAssertionForRole(role.clone()))?;
    let x = next_placeholder(o);
    let mut out = o.clone();
    let (added, target) = if inverse {
        (Assertion::Role { role: role.clone(), subject: x.clone(), object: b.clone() }, a.clone())
    } else {
        (Assertion::Role { role: role.clone(), subject: a.clone(), object: x.clone() }, b.clone())
    };
    out.insert_assertion(added);
    let imp = Implication::PlaceholderEq { placeholder: x, individual: target };
    check_entailed(&out, &imp)?;
    Ok((out, imp))
}
