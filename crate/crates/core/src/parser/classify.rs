//! First-match syntax error classifier. The rule order is significant and is
//! mirrored in docs/syntax-errors.md; the first rule that fires decides the
//! class.

use std::collections::BTreeSet;

use super::{looks_like_role, ErrorClass, Spanned, SyntaxError, Tok, Vocabulary};
use crate::model::Name;

/// Role and concept names that a single line proves by its own shape.
#[derive(Debug, Default)]
pub(crate) struct Evidence {
    pub roles: BTreeSet<Name>,
    pub concepts: BTreeSet<Name>,
}

pub(crate) fn line_evidence(toks: &[Spanned]) -> Evidence {
    let t = |i: usize| toks.get(i).map(|s| &s.tok);
    let mut ev = Evidence::default();
    let add = |set: &mut BTreeSet<Name>, s: &str| {
        if let Ok(n) = Name::new(s) {
            set.insert(n);
        }
    };
    for i in 0..toks.len() {
        if let Some(Tok::Ident(s)) = t(i) {
            let after_exists = i > 0 && matches!(t(i - 1), Some(Tok::Exists | Tok::Funct));
            if after_exists || t(i + 1) == Some(&Tok::Inv) {
                add(&mut ev.roles, s);
            }
            if i == 0 && t(1) == Some(&Tok::LParen) {
                match (t(3), toks.len()) {
                    (Some(Tok::Comma), 6) => add(&mut ev.roles, s),
                    (Some(Tok::RParen), 4) => add(&mut ev.concepts, s),
                    _ => {}
                }
            }
        }
    }
    ev
}

struct Ctx<'a> {
    toks: &'a [Spanned],
    vocab: &'a Vocabulary,
    evidence: Evidence,
    sub: Option<usize>,
}

impl<'a> Ctx<'a> {
    fn t(&self, i: usize) -> Option<&Tok> {
        self.toks.get(i).map(|s| &s.tok)
    }

    fn prev(&self, i: usize) -> Option<&Tok> {
        if i == 0 {
            None
        } else {
            self.t(i - 1)
        }
    }

    fn known_concept(&self, s: &str) -> bool {
        self.vocab.is_concept(s)
    }

    fn role_ish(&self, s: &str) -> bool {
        if self.vocab.is_role(s) {
            return true;
        }
        if self.vocab.is_concept(s) {
            return false;
        }
        self.evidence.roles.iter().any(|n| n.as_str() == s) || looks_like_role(s)
    }

    fn error(&self, class: ErrorClass, i: usize, message: String) -> SyntaxError {
        let position = self.toks.get(i).map(|s| s.pos).unwrap_or(0);
        SyntaxError { class, position, message }
    }
}

fn is_ident(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Ident(_)))
}

pub(crate) fn classify(toks: &[Spanned], vocab: &Vocabulary) -> Option<SyntaxError> {
    let cx = Ctx { toks, vocab, evidence: line_evidence(toks), sub: toks.iter().position(|s| s.tok == Tok::Sub) };
    let rules: [fn(&Ctx) -> Option<SyntaxError>; 13] = [
        inverse_on_quantifier,
        misplaced_inverse,
        redundant_quantifiers,
        misplaced_quantifier,
        quantifier_missing_role,
        quantifier_on_concept,
        misplaced_negation,
        dangling_negation,
        incomplete_conjunction,
        misplaced_conjunction,
        inverse_on_concept,
        conjunction_kinds,
        missing_conjunction,
    ];
    rules.iter().find_map(|rule| rule(&cx))
}

fn inverse_on_quantifier(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Exists) && cx.t(i + 1) == Some(&Tok::Inv))
        .map(|i| cx.error(ErrorClass::InverseOnQuantifier, i + 1, "inverse applied to ∃".into()))
}

fn misplaced_inverse(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Inv) && !is_ident(cx.prev(i)))
        .map(|i| cx.error(ErrorClass::MisplacedInverse, i, "inverse must follow a role name".into()))
}

fn redundant_quantifiers(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Exists) && cx.t(i + 1) == Some(&Tok::Exists))
        .map(|i| cx.error(ErrorClass::RedundantQuantifiers, i + 1, "repeated ∃".into()))
}

fn misplaced_quantifier(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Exists) && matches!(cx.prev(i), Some(Tok::Ident(_) | Tok::Inv)) && !is_ident(cx.t(i + 1)))
        .map(|i| cx.error(ErrorClass::MisplacedQuantifier, i, "∃ must precede its role".into()))
}

fn quantifier_missing_role(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Exists) && !is_ident(cx.t(i + 1)))
        .map(|i| cx.error(ErrorClass::QuantifierMissingRole, i, "∃ without a role".into()))
}

fn quantifier_on_concept(cx: &Ctx) -> Option<SyntaxError> {
    (1..cx.toks.len()).find_map(|i| match (cx.prev(i), cx.t(i)) {
        (Some(Tok::Exists), Some(Tok::Ident(s))) if cx.known_concept(s) => {
            Some(cx.error(ErrorClass::QuantifierOnConcept, i, format!("∃ applied to concept {s}")))
        }
        _ => None,
    })
}

fn misplaced_negation(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| {
            if cx.t(i) != Some(&Tok::Neg) {
                return false;
            }
            let postfix = matches!(cx.prev(i), Some(Tok::Ident(_) | Tok::Inv | Tok::RParen))
                && !matches!(cx.t(i + 1), Some(Tok::Ident(_) | Tok::Exists));
            let doubled = cx.t(i + 1) == Some(&Tok::Neg);
            let on_lhs = cx.sub.is_some_and(|s| i < s);
            postfix || doubled || on_lhs
        })
        .map(|i| cx.error(ErrorClass::MisplacedNegation, i, "¬ must precede a basic concept or role".into()))
}

fn dangling_negation(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Neg) && !matches!(cx.t(i + 1), Some(Tok::Ident(_) | Tok::Exists)))
        .map(|i| cx.error(ErrorClass::DanglingNegation, i, "¬ with nothing following".into()))
}

fn incomplete_conjunction(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Conj) && matches!(cx.t(i + 1), None | Some(Tok::Conj | Tok::Sub | Tok::RParen)))
        .map(|i| cx.error(ErrorClass::IncompleteConjunction, i, "⊓ without a right operand".into()))
}

fn misplaced_conjunction(cx: &Ctx) -> Option<SyntaxError> {
    (0..cx.toks.len())
        .find(|&i| cx.t(i) == Some(&Tok::Conj) && matches!(cx.prev(i), None | Some(Tok::Sub | Tok::LParen | Tok::Conj)))
        .map(|i| cx.error(ErrorClass::MisplacedConjunctionOperator, i, "⊓ without a left operand".into()))
}

fn inverse_on_concept(cx: &Ctx) -> Option<SyntaxError> {
    let has_exists = cx.toks.iter().any(|s| s.tok == Tok::Exists);
    (0..cx.toks.len()).find_map(|i| {
        let Some(Tok::Ident(s)) = cx.t(i) else {
            return None;
        };
        if cx.t(i + 1) != Some(&Tok::Inv) || cx.prev(i) == Some(&Tok::Exists) {
            return None;
        }
        // a bare X⁻ in an axiom that has ∃ somewhere is in concept position
        let concept_position = has_exists && !cx.vocab.is_role(s);
        (cx.known_concept(s) || concept_position)
            .then(|| cx.error(ErrorClass::InvalidInverseOnConcept, i + 1, format!("inverse applied to concept {s}")))
    })
}

/// Operand spans of a conjunction side, split on top-level `⊓`.
fn operands(toks: &[Spanned], from: usize, to: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = from;
    for (i, t) in toks.iter().enumerate().take(to).skip(from) {
        if t.tok == Tok::Conj {
            out.push((start, i));
            start = i + 1;
        }
    }
    out.push((start, to));
    out
}

fn conjunction_kinds(cx: &Ctx) -> Option<SyntaxError> {
    let sides = match cx.sub {
        Some(s) => vec![(0, s), (s + 1, cx.toks.len())],
        None => vec![(0, cx.toks.len())],
    };
    for (from, to) in sides {
        let ops = operands(cx.toks, from, to);
        if ops.len() < 2 {
            continue;
        }
        let role_ops: Vec<usize> = ops
            .iter()
            .filter_map(|&(a, b)| {
                let a = if cx.t(a) == Some(&Tok::Neg) { a + 1 } else { a };
                match &cx.toks[a..b] {
                    [Spanned { tok: Tok::Ident(s), .. }] if cx.role_ish(s) => Some(a),
                    [Spanned { tok: Tok::Ident(_), .. }, Spanned { tok: Tok::Inv, .. }] => Some(a),
                    _ => None,
                }
            })
            .collect();
        if role_ops.len() == ops.len() {
            return Some(cx.error(ErrorClass::RoleRoleConjunction, role_ops[0], "roles cannot be conjoined".into()));
        }
        if let Some(&i) = role_ops.first() {
            return Some(cx.error(ErrorClass::ConceptRoleConjunction, i, "a concept cannot be conjoined with a role".into()));
        }
    }
    None
}

fn missing_conjunction(cx: &Ctx) -> Option<SyntaxError> {
    (1..cx.toks.len())
        .find(|&i| {
            let ends = matches!(cx.prev(i), Some(Tok::Ident(_) | Tok::Inv | Tok::RParen));
            let starts = match cx.t(i) {
                Some(Tok::Ident(_) | Tok::Exists | Tok::Neg) => true,
                // `Name(` is an assertion, `)(` or `⁻(` is not
                Some(Tok::LParen) => !is_ident(cx.prev(i)),
                _ => false,
            };
            ends && starts
        })
        .map(|i| cx.error(ErrorClass::MissingConjunctionOperator, i, "operands need ⊓ between them".into()))
}
