//! Deliberate corruption of valid axioms, one mutation per error class.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::lexer::unlex;
use super::{ErrorClass, Tok, Vocabulary};
use crate::model::{Axiom, BasicConcept, GeneralConcept, GeneralRole, Name, Notation, Role};
use crate::rng::seeded;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorruptError {
    #[error("{class} cannot be applied to `{axiom}`")]
    NotApplicable { class: ErrorClass, axiom: String },
    #[error("no error class applies to `{0}`")]
    NothingApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corruption {
    pub text: String,
    pub class: ErrorClass,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Concept,
    Role,
    Funct,
}

/// Token groups of an axiom: group 0 is the left-hand side (or the role of a
/// functionality axiom), the rest are right-hand conjuncts.
#[derive(Clone)]
struct Groups {
    shape: Shape,
    groups: Vec<Vec<Tok>>,
}

fn role_toks(r: &Role) -> Vec<Tok> {
    let mut v = vec![Tok::Ident(r.name.to_string())];
    if r.inverse {
        v.push(Tok::Inv);
    }
    v
}

fn basic_toks(b: &BasicConcept) -> Vec<Tok> {
    match b {
        BasicConcept::Atomic(a) => vec![Tok::Ident(a.to_string())],
        BasicConcept::Exists(r) => {
            let mut v = vec![Tok::Exists];
            v.extend(role_toks(r));
            v
        }
    }
}

impl Groups {
    fn of(ax: &Axiom) -> Groups {
        match ax {
            Axiom::ConceptIncl { lhs, rhs } => {
                let mut groups = vec![basic_toks(lhs)];
                for c in rhs.conjuncts() {
                    groups.push(match c {
                        GeneralConcept::Basic(b) => basic_toks(b),
                        GeneralConcept::Neg(b) => {
                            let mut v = vec![Tok::Neg];
                            v.extend(basic_toks(b));
                            v
                        }
                        GeneralConcept::Conj(..) => unreachable!("conjuncts are flat"),
                    });
                }
                Groups { shape: Shape::Concept, groups }
            }
            Axiom::RoleIncl { lhs, rhs } => {
                let r = match rhs {
                    GeneralRole::Basic(r) => role_toks(r),
                    GeneralRole::Neg(r) => {
                        let mut v = vec![Tok::Neg];
                        v.extend(role_toks(r));
                        v
                    }
                };
                Groups { shape: Shape::Role, groups: vec![role_toks(lhs), r] }
            }
            Axiom::Funct(r) => Groups { shape: Shape::Funct, groups: vec![role_toks(r)] },
        }
    }

    fn flatten(&self) -> Vec<Tok> {
        if self.shape == Shape::Funct {
            let mut v = vec![Tok::LParen, Tok::Funct];
            v.extend(self.groups[0].iter().cloned());
            v.push(Tok::RParen);
            return v;
        }
        let mut v = self.groups[0].clone();
        v.push(Tok::Sub);
        for (i, g) in self.groups[1..].iter().enumerate() {
            if i > 0 {
                v.push(Tok::Conj);
            }
            v.extend(g.iter().cloned());
        }
        v
    }

    /// Groups that are a bare or negated atomic concept.
    fn atom_sites(&self) -> Vec<usize> {
        if self.shape != Shape::Concept {
            return Vec::new();
        }
        (0..self.groups.len()).filter(|&g| matches!(self.groups[g].as_slice(), [Tok::Ident(_)] | [Tok::Neg, Tok::Ident(_)])).collect()
    }

    fn exists_sites(&self) -> Vec<usize> {
        (0..self.groups.len()).filter(|&g| self.groups[g].contains(&Tok::Exists)).collect()
    }

    fn rhs_sites(&self) -> Vec<usize> {
        if self.shape == Shape::Funct {
            Vec::new()
        } else {
            (1..self.groups.len()).collect()
        }
    }
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> Option<T> {
    items.choose(rng).copied()
}

fn ident_index(g: &[Tok]) -> usize {
    g.iter().position(|t| matches!(t, Tok::Ident(_))).expect("group has a name")
}

/// Role names available for the conjunction mutations: the axiom's own roles
/// first, then the vocabulary's.
fn role_pool(ax: &Axiom, vocab: &Vocabulary) -> Vec<Name> {
    let mut pool: Vec<Name> = ax.signature().roles.into_iter().collect();
    for r in &vocab.roles {
        if !pool.contains(r) {
            pool.push(r.clone());
        }
    }
    pool
}

fn mutate(ax: &Axiom, class: ErrorClass, rng: &mut ChaCha8Rng, vocab: &Vocabulary) -> Option<Vec<Tok>> {
    let mut g = Groups::of(ax);
    match class {
        ErrorClass::InvalidInverseOnConcept => {
            let site = pick(rng, &g.atom_sites())?;
            let at = ident_index(&g.groups[site]) + 1;
            g.groups[site].insert(at, Tok::Inv);
        }
        ErrorClass::MisplacedInverse => {
            let sites: Vec<usize> = (0..g.groups.len()).collect();
            let site = pick(rng, &sites)?;
            g.groups[site].insert(0, Tok::Inv);
        }
        ErrorClass::InverseOnQuantifier => {
            let site = pick(rng, &g.exists_sites())?;
            let at = g.groups[site].iter().position(|t| *t == Tok::Exists)? + 1;
            g.groups[site].insert(at, Tok::Inv);
        }
        ErrorClass::MisplacedQuantifier => {
            let site = pick(rng, &g.exists_sites())?;
            let grp = &mut g.groups[site];
            let at = grp.iter().position(|t| *t == Tok::Exists)?;
            grp.remove(at);
            grp.push(Tok::Exists);
        }
        ErrorClass::QuantifierOnConcept => {
            let site = pick(rng, &g.atom_sites())?;
            let at = ident_index(&g.groups[site]);
            g.groups[site].insert(at, Tok::Exists);
        }
        ErrorClass::QuantifierMissingRole => {
            let mut sites = g.exists_sites();
            sites.extend(g.atom_sites());
            let site = pick(rng, &sites)?;
            let grp = &mut g.groups[site];
            match grp.iter().position(|t| *t == Tok::Exists) {
                Some(at) => grp.truncate(at + 1),
                None => {
                    let at = ident_index(grp);
                    grp[at] = Tok::Exists;
                }
            }
        }
        ErrorClass::RedundantQuantifiers => {
            let site = pick(rng, &g.exists_sites())?;
            let at = g.groups[site].iter().position(|t| *t == Tok::Exists)?;
            g.groups[site].insert(at, Tok::Exists);
        }
        ErrorClass::MisplacedNegation => {
            let site = pick(rng, &g.rhs_sites())?;
            let grp = &mut g.groups[site];
            if grp.first() == Some(&Tok::Neg) {
                grp.remove(0);
            }
            grp.push(Tok::Neg);
        }
        ErrorClass::DanglingNegation => {
            let site = pick(rng, &g.rhs_sites())?;
            g.groups[site] = vec![Tok::Neg];
        }
        ErrorClass::IncompleteConjunction => {
            if g.shape == Shape::Funct {
                return None;
            }
            let mut toks = g.flatten();
            toks.push(Tok::Conj);
            return Some(toks);
        }
        ErrorClass::MisplacedConjunctionOperator => {
            if g.shape != Shape::Concept || g.groups.len() < 3 {
                return None;
            }
            let mut toks = g.groups[0].clone();
            toks.push(Tok::Sub);
            toks.push(Tok::Conj);
            toks.extend(g.groups[1].iter().cloned());
            for (i, grp) in g.groups[2..].iter().enumerate() {
                if i > 0 {
                    toks.push(Tok::Conj);
                }
                toks.extend(grp.iter().cloned());
            }
            return Some(toks);
        }
        ErrorClass::MissingConjunctionOperator => {
            if g.shape != Shape::Concept || g.groups.len() < 3 {
                return None;
            }
            let joins: Vec<usize> = (2..g.groups.len()).collect();
            let skip = pick(rng, &joins)?;
            let mut toks = g.groups[0].clone();
            toks.push(Tok::Sub);
            for i in 1..g.groups.len() {
                if i > 1 && i != skip {
                    toks.push(Tok::Conj);
                }
                toks.extend(g.groups[i].iter().cloned());
            }
            return Some(toks);
        }
        ErrorClass::ConceptRoleConjunction => {
            if g.shape != Shape::Concept {
                return None;
            }
            let pool = role_pool(ax, vocab);
            let role = pool.choose(rng)?.clone();
            let at = rng.gen_range(1..=g.groups.len());
            g.groups.insert(at, vec![Tok::Ident(role.to_string())]);
        }
        ErrorClass::RoleRoleConjunction => {
            if g.shape != Shape::Role {
                return None;
            }
            let pool = role_pool(ax, vocab);
            let role = pool.choose(rng)?.clone();
            g.groups.push(vec![Tok::Ident(role.to_string())]);
        }
        ErrorClass::Unclassified => return None,
    }
    Some(g.flatten())
}

/// Classes whose required site exists in `ax`.
pub fn applicable_classes(ax: &Axiom, vocab: &Vocabulary) -> Vec<ErrorClass> {
    ErrorClass::TAXONOMY.iter().copied().filter(|&c| mutate(ax, c, &mut seeded(0, "applicable"), vocab).is_some()).collect()
}

/// Corrupts `ax` with the given class (or a uniformly chosen applicable one
/// when `class` is `None`). Role names for the conjunction mutations come
/// from the axiom itself.
pub fn corrupt(ax: &Axiom, class: Option<ErrorClass>, seed: u64) -> Result<Corruption, CorruptError> {
    corrupt_with(ax, class, seed, Notation::Unicode, &Vocabulary::default())
}

/// Like [`corrupt`], with an explicit notation and an ontology vocabulary
/// that supplies role names for the conjunction mutations.
pub fn corrupt_with(
    ax: &Axiom,
    class: Option<ErrorClass>,
    seed: u64,
    notation: Notation,
    vocab: &Vocabulary,
) -> Result<Corruption, CorruptError> {
    let mut rng = seeded(seed, "corrupt");
    let class = match class {
        Some(c) => c,
        None => {
            let options = applicable_classes(ax, vocab);
            *options.choose(&mut rng).ok_or_else(|| CorruptError::NothingApplicable(ax.to_string()))?
        }
    };
    let toks = mutate(ax, class, &mut rng, vocab).ok_or_else(|| CorruptError::NotApplicable { class, axiom: ax.to_string() })?;
    Ok(Corruption { text: unlex(&toks, notation), class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Signature;
    use crate::parser::{parse_axiom, parse_line_with};

    fn ax(s: &str) -> Axiom {
        parse_axiom(s, Notation::Unicode).unwrap()
    }

    #[test]
    fn worked_examples() {
        let a = ax("Professor ⊑ ∃TeachesTo");
        let c = corrupt(&a, Some(ErrorClass::RedundantQuantifiers), 1).unwrap();
        assert_eq!(c.text, "Professor ⊑ ∃∃TeachesTo");
        let b = ax("Busy ⊑ Professor ⊓ ∃TeachesTo");
        let c = corrupt(&b, Some(ErrorClass::MisplacedConjunctionOperator), 1).unwrap();
        assert_eq!(c.text, "Busy ⊑ ⊓ Professor ∃TeachesTo");
        let c = corrupt(&b, Some(ErrorClass::MissingConjunctionOperator), 1).unwrap();
        assert_eq!(c.text, "Busy ⊑ Professor ∃TeachesTo");
        let c = corrupt(&a, Some(ErrorClass::MisplacedQuantifier), 1).unwrap();
        assert_eq!(c.text, "Professor ⊑ TeachesTo∃");
    }

    #[test]
    fn not_applicable_without_site() {
        let a = ax("Student ⊑ Person");
        assert!(matches!(corrupt(&a, Some(ErrorClass::RedundantQuantifiers), 0), Err(CorruptError::NotApplicable { .. })));
        assert!(corrupt(&a, Some(ErrorClass::ConceptRoleConjunction), 0).is_err());
        assert!(corrupt(&a, Some(ErrorClass::Unclassified), 0).is_err());
    }

    #[test]
    fn seeded_choice_is_deterministic() {
        let a = ax("∃R⁻ ⊑ A ⊓ ¬∃S ⊓ B");
        for seed in 0..20 {
            assert_eq!(corrupt(&a, None, seed), corrupt(&a, None, seed));
        }
        let distinct: std::collections::BTreeSet<String> = (0..50).map(|s| corrupt(&a, None, s).unwrap().text).collect();
        assert!(distinct.len() > 5);
    }

    #[test]
    fn every_applicable_class_is_recovered() {
        let fixtures = [
            "Professor ⊑ ∃TeachesTo",
            "∃R⁻ ⊑ A ⊓ ¬∃S ⊓ B",
            "A ⊑ ¬B",
            "hasParent ⊑ hasAncestor",
            "R ⊑ ¬S⁻",
            "(funct WorksIn⁻)",
            "∃hasPart ⊑ Whole ⊓ Thing",
        ];
        for text in fixtures {
            let a = ax(text);
            let vocab = Vocabulary::from_signature(&{
                let mut s = Signature::default();
                s.add_axiom(&a);
                s
            });
            for class in applicable_classes(&a, &vocab) {
                for seed in 0..5 {
                    let c = corrupt_with(&a, Some(class), seed, Notation::Unicode, &vocab).unwrap();
                    let err =
                        parse_line_with(&c.text, Notation::Unicode, &vocab).expect_err(&format!("{text} / {class}: {} parsed", c.text));
                    assert_eq!(err.class, class, "{text} -> {}", c.text);
                }
            }
        }
    }
}
