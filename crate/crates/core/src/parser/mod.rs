//! Line-oriented text syntax for DL-Lite: parsing, serialization, syntax
//! error classification and deliberate corruption of valid axioms.
//!
//! The grammar does not mark whether a bare name is a concept or a role, so
//! every parse consults a [`Vocabulary`]. Resolution order for a name: the
//! vocabulary, then evidence on the same line (`∃X`, `X⁻`, `(funct X)`,
//! `X(a, b)`), then a naming heuristic ([`looks_like_role`]).

mod classify;
mod corrupt;
mod lexer;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Assertion, Axiom, BasicConcept, GeneralConcept, GeneralRole, Name, Notation, Ontology, Render, Role, Signature};
pub use corrupt::{applicable_classes, corrupt, corrupt_with, CorruptError, Corruption};
pub(crate) use lexer::{lex, Spanned, Tok};

/// The fourteen syntax error classes, plus `Unclassified` for anything that
/// fails to parse without matching one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorClass {
    InvalidInverseOnConcept,
    MisplacedInverse,
    InverseOnQuantifier,
    MisplacedQuantifier,
    QuantifierOnConcept,
    QuantifierMissingRole,
    RedundantQuantifiers,
    MisplacedNegation,
    DanglingNegation,
    IncompleteConjunction,
    ConceptRoleConjunction,
    RoleRoleConjunction,
    MissingConjunctionOperator,
    MisplacedConjunctionOperator,
    Unclassified,
}

impl ErrorClass {
    /// Every class except `Unclassified`.
    pub const TAXONOMY: [ErrorClass; 14] = [
        ErrorClass::InvalidInverseOnConcept,
        ErrorClass::MisplacedInverse,
        ErrorClass::InverseOnQuantifier,
        ErrorClass::MisplacedQuantifier,
        ErrorClass::QuantifierOnConcept,
        ErrorClass::QuantifierMissingRole,
        ErrorClass::RedundantQuantifiers,
        ErrorClass::MisplacedNegation,
        ErrorClass::DanglingNegation,
        ErrorClass::IncompleteConjunction,
        ErrorClass::ConceptRoleConjunction,
        ErrorClass::RoleRoleConjunction,
        ErrorClass::MissingConjunctionOperator,
        ErrorClass::MisplacedConjunctionOperator,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorClass::InvalidInverseOnConcept => "InvalidInverseOnConcept",
            ErrorClass::MisplacedInverse => "MisplacedInverse",
            ErrorClass::InverseOnQuantifier => "InverseOnQuantifier",
            ErrorClass::MisplacedQuantifier => "MisplacedQuantifier",
            ErrorClass::QuantifierOnConcept => "QuantifierOnConcept",
            ErrorClass::QuantifierMissingRole => "QuantifierMissingRole",
            ErrorClass::RedundantQuantifiers => "RedundantQuantifiers",
            ErrorClass::MisplacedNegation => "MisplacedNegation",
            ErrorClass::DanglingNegation => "DanglingNegation",
            ErrorClass::IncompleteConjunction => "IncompleteConjunction",
            ErrorClass::ConceptRoleConjunction => "ConceptRoleConjunction",
            ErrorClass::RoleRoleConjunction => "RoleRoleConjunction",
            ErrorClass::MissingConjunctionOperator => "MissingConjunctionOperator",
            ErrorClass::MisplacedConjunctionOperator => "MisplacedConjunctionOperator",
            ErrorClass::Unclassified => "Unclassified",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ErrorClass::InvalidInverseOnConcept => "inverse operator on a concept",
            ErrorClass::MisplacedInverse => "misplaced inverse operator",
            ErrorClass::InverseOnQuantifier => "inverse operator on a quantifier",
            ErrorClass::MisplacedQuantifier => "misplaced quantifier",
            ErrorClass::QuantifierOnConcept => "quantifier followed by a concept",
            ErrorClass::QuantifierMissingRole => "quantifier without a role",
            ErrorClass::RedundantQuantifiers => "repeated quantifiers",
            ErrorClass::MisplacedNegation => "misplaced negation operator",
            ErrorClass::DanglingNegation => "negation with nothing following",
            ErrorClass::IncompleteConjunction => "conjunction with a missing operand",
            ErrorClass::ConceptRoleConjunction => "conjunction of a concept and a role",
            ErrorClass::RoleRoleConjunction => "conjunction of roles",
            ErrorClass::MissingConjunctionOperator => "missing conjunction operator",
            ErrorClass::MisplacedConjunctionOperator => "misplaced conjunction operator",
            ErrorClass::Unclassified => "not a well-formed statement",
        }
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ErrorClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ErrorClass::TAXONOMY
            .iter()
            .chain([ErrorClass::Unclassified].iter())
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| format!("unknown error class {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{class} at byte {position}: {message}")]
pub struct SyntaxError {
    pub class: ErrorClass,
    /// Byte offset into the input line.
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    fn unclassified(position: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { class: ErrorClass::Unclassified, position, message: message.into() }
    }
}

/// Names known to be roles or concepts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub roles: BTreeSet<Name>,
    pub concepts: BTreeSet<Name>,
}

impl Vocabulary {
    pub fn from_signature(sig: &Signature) -> Vocabulary {
        Vocabulary { roles: sig.roles.clone(), concepts: sig.concepts.clone() }
    }

    pub fn is_role(&self, s: &str) -> bool {
        self.roles.iter().any(|n| n.as_str() == s)
    }

    pub fn is_concept(&self, s: &str) -> bool {
        !self.is_role(s) && self.concepts.iter().any(|n| n.as_str() == s)
    }

    pub fn extend(&mut self, other: &Vocabulary) {
        self.roles.extend(other.roles.iter().cloned());
        self.concepts.extend(other.concepts.iter().cloned());
    }
}

const PREPOSITIONS: [&str; 10] = ["To", "In", "At", "Of", "By", "From", "With", "For", "On", "Into"];

/// Naming heuristic used when neither the vocabulary nor the line decides
/// whether a bare name is a role: lowercase initial (`hasPart`), a leading
/// `Has`/`Is` camel word (`HasParent`), a trailing preposition (`WorksIn`,
/// `TeachesTo`), or the `R1`/`P₂` pattern.
pub fn looks_like_role(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if first.is_lowercase() {
        return true;
    }
    if (first == 'R' || first == 'P') && s.len() > 1 && chars.clone().all(|c| c.is_numeric()) {
        return true;
    }
    let words = camel_words(s);
    if words.len() >= 2 {
        if words[0] == "Has" || words[0] == "Is" {
            return true;
        }
        if let Some(last) = words.last() {
            return PREPOSITIONS.contains(&last.as_str());
        }
    }
    false
}

fn camel_words(s: &str) -> Vec<String> {
    let mut words: Vec<String> = Vec::new();
    for c in s.chars() {
        if c.is_uppercase() || words.is_empty() {
            words.push(String::new());
        }
        if let Some(w) = words.last_mut() {
            w.push(c);
        }
    }
    words
}

/// A successfully parsed line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Statement {
    Axiom(Axiom),
    Assertion(Assertion),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Axiom(a) => a.fmt(f),
            Statement::Assertion(a) => a.fmt(f),
        }
    }
}

/// Serializes an axiom, assertion or ontology in the given notation.
pub fn serialize(item: &impl Render, notation: Notation) -> String {
    item.render(notation)
}

/// Guesses the notation of a text: ASCII if it uses any ASCII-only operator.
pub fn detect_notation(text: &str) -> Notation {
    let ascii_markers = ["[=", "^-", "exists ", "!", "&"];
    let unicode_markers = ['⊑', '⊓', '¬', '∃', '⁻'];
    if text.chars().any(|c| unicode_markers.contains(&c)) {
        Notation::Unicode
    } else if ascii_markers.iter().any(|m| text.contains(m)) {
        Notation::Ascii
    } else {
        Notation::Unicode
    }
}

/// Parses one statement (axiom or assertion) with no vocabulary.
pub fn parse_line(text: &str, notation: Notation) -> Result<Statement, SyntaxError> {
    parse_line_with(text, notation, &Vocabulary::default())
}

pub fn parse_line_with(text: &str, notation: Notation, vocab: &Vocabulary) -> Result<Statement, SyntaxError> {
    let toks = lex(text, notation).map_err(|e| SyntaxError {
        class: ErrorClass::Unclassified,
        position: e.pos,
        message: format!("unexpected character {:?}", e.found),
    })?;
    if let Some(err) = classify::classify(&toks, vocab) {
        return Err(err);
    }
    Structure::new(&toks, vocab, text.len()).statement()
}

pub fn parse_axiom(text: &str, notation: Notation) -> Result<Axiom, SyntaxError> {
    parse_axiom_with(text, notation, &Vocabulary::default())
}

pub fn parse_axiom_with(text: &str, notation: Notation, vocab: &Vocabulary) -> Result<Axiom, SyntaxError> {
    match parse_line_with(text, notation, vocab)? {
        Statement::Axiom(a) => Ok(a),
        Statement::Assertion(_) => Err(SyntaxError::unclassified(0, "expected an axiom, found an assertion")),
    }
}

pub fn parse_assertion(text: &str, notation: Notation) -> Result<Assertion, SyntaxError> {
    match parse_line(text, notation)? {
        Statement::Assertion(a) => Ok(a),
        Statement::Axiom(_) => Err(SyntaxError::unclassified(0, "expected an assertion, found an axiom")),
    }
}

/// A syntax error on a given (1-based) line of an ontology file.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("line {line}: {error} in {text:?}")]
pub struct LineError {
    pub line: usize,
    pub text: String,
    pub error: SyntaxError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedOntology {
    pub ontology: Ontology,
    pub errors: Vec<LineError>,
    pub vocabulary: Vocabulary,
}

/// Lenient ontology parse: keeps every valid line, reports the others.
pub fn parse_ontology(text: &str, notation: Notation) -> ParsedOntology {
    parse_ontology_with(text, notation, &Vocabulary::default())
}

/// Strict ontology parse: fails on the first invalid line.
pub fn parse_ontology_strict(text: &str, notation: Notation) -> Result<Ontology, LineError> {
    let parsed = parse_ontology(text, notation);
    match parsed.errors.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(parsed.ontology),
    }
}

pub fn parse_ontology_with(text: &str, notation: Notation, vocab: &Vocabulary) -> ParsedOntology {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !is_blank_or_section(strip_comment(l))).collect();
    let mut vocabulary = gather_vocabulary(text, notation);
    // explicit vocabulary wins over anything inferred from the text
    vocabulary.roles.retain(|n| !vocab.concepts.contains(n));
    vocabulary.concepts.retain(|n| !vocab.roles.contains(n));
    vocabulary.extend(vocab);

    let parse_all =
        |v: &Vocabulary| lines.iter().map(|&(no, l)| (no, l, parse_line_with(strip_comment(l), notation, v))).collect::<Vec<_>>();
    // A role inclusion resolved by evidence on its own line tells us the
    // other side is a role as well; reparse once with that knowledge.
    let first = parse_all(&vocabulary);
    let mut learned = false;
    for (_, _, r) in &first {
        if let Ok(Statement::Axiom(ax)) = r {
            let sig = ax.signature();
            for role in sig.roles {
                if !vocab.concepts.contains(&role) && vocabulary.roles.insert(role) {
                    learned = true;
                }
            }
        }
    }
    let results = if learned { parse_all(&vocabulary) } else { first };

    let mut tbox = Vec::new();
    let mut abox = Vec::new();
    let mut errors = Vec::new();
    for (line, text, r) in results {
        match r {
            Ok(Statement::Axiom(a)) => tbox.push(a),
            Ok(Statement::Assertion(a)) => abox.push(a),
            Err(error) => errors.push(LineError { line, text: text.to_string(), error }),
        }
    }
    ParsedOntology { ontology: Ontology::new(tbox, abox), errors, vocabulary }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_blank_or_section(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || matches!(t.to_ascii_lowercase().as_str(), "tbox:" | "abox:")
}

/// Collects role/concept evidence from every line plus `# roles:` and
/// `# concepts:` directive comments.
fn gather_vocabulary(text: &str, notation: Notation) -> Vocabulary {
    let mut v = Vocabulary::default();
    for line in text.lines() {
        if let Some(i) = line.find('#') {
            let comment = line[i + 1..].trim();
            for (prefix, roles) in [("roles:", true), ("concepts:", false)] {
                if let Some(rest) = comment.strip_prefix(prefix) {
                    for n in rest.split(',').filter_map(|s| Name::new(s.trim()).ok()) {
                        if roles {
                            v.roles.insert(n);
                        } else {
                            v.concepts.insert(n);
                        }
                    }
                }
            }
        }
        let Ok(toks) = lex(strip_comment(line), notation) else {
            continue;
        };
        let local = classify::line_evidence(&toks);
        v.roles.extend(local.roles);
        v.concepts.extend(local.concepts);
    }
    let roles = v.roles.clone();
    v.concepts.retain(|c| !roles.contains(c));
    v
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Concept,
    Role,
}

/// Recursive-descent parser for token streams that passed classification.
struct Structure<'a> {
    toks: &'a [Spanned],
    vocab: &'a Vocabulary,
    end: usize,
}

impl<'a> Structure<'a> {
    fn new(toks: &'a [Spanned], vocab: &'a Vocabulary, end: usize) -> Self {
        Structure { toks, vocab, end }
    }

    fn pos(&self, i: usize) -> usize {
        self.toks.get(i).map(|s| s.pos).unwrap_or(self.end.saturating_sub(1))
    }

    fn tok(&self, i: usize) -> Option<&Tok> {
        self.toks.get(i).map(|s| &s.tok)
    }

    fn err(&self, i: usize, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::unclassified(self.pos(i), msg)
    }

    fn name_at(&self, i: usize) -> Result<Name, SyntaxError> {
        match self.tok(i) {
            Some(Tok::Ident(s)) => Name::new(s.clone()).map_err(|_| self.err(i, format!("invalid name {s:?}"))),
            _ => Err(self.err(i, "expected a name")),
        }
    }

    fn statement(&self) -> Result<Statement, SyntaxError> {
        let n = self.toks.len();
        if n == 0 {
            return Err(SyntaxError::unclassified(0, "empty statement"));
        }
        if self.tok(0) == Some(&Tok::LParen) && self.tok(1) == Some(&Tok::Funct) {
            if self.tok(n - 1) != Some(&Tok::RParen) {
                return Err(self.err(n - 1, "unclosed functionality axiom"));
            }
            return self.funct(1, n - 1);
        }
        if self.tok(0) == Some(&Tok::Funct) {
            return self.funct(0, n);
        }
        let subs: Vec<usize> = (0..n).filter(|&i| self.tok(i) == Some(&Tok::Sub)).collect();
        match subs.as_slice() {
            [] => self.assertion(),
            [s] => self.inclusion(*s).map(Statement::Axiom),
            [_, second, ..] => Err(self.err(*second, "more than one inclusion operator")),
        }
    }

    fn funct(&self, start: usize, end: usize) -> Result<Statement, SyntaxError> {
        let (role, next) = self.role(start + 1)?;
        if next != end {
            return Err(self.err(next, "unexpected token after functional role"));
        }
        if self.vocab.is_concept(role.name.as_str()) {
            return Err(self.err(start + 1, format!("{} is a concept, not a role", role.name)));
        }
        Ok(Statement::Axiom(Axiom::Funct(role)))
    }

    fn assertion(&self) -> Result<Statement, SyntaxError> {
        let pred = self.name_at(0)?;
        if self.tok(1) != Some(&Tok::LParen) {
            return Err(self.err(1, "expected `(` after predicate"));
        }
        let a = self.name_at(2)?;
        match self.tok(3) {
            Some(Tok::RParen) if self.toks.len() == 4 => {
                if self.vocab.is_role(pred.as_str()) {
                    return Err(self.err(0, format!("{pred} is a role but has one argument")));
                }
                Ok(Statement::Assertion(Assertion::Concept { concept: pred, individual: a }))
            }
            Some(Tok::Comma) => {
                let b = self.name_at(4)?;
                if self.tok(5) != Some(&Tok::RParen) || self.toks.len() != 6 {
                    return Err(self.err(5, "expected `)` closing the role assertion"));
                }
                if self.vocab.is_concept(pred.as_str()) {
                    return Err(self.err(0, format!("{pred} is a concept but has two arguments")));
                }
                Ok(Statement::Assertion(Assertion::Role { role: pred, subject: a, object: b }))
            }
            _ => Err(self.err(3, "malformed assertion")),
        }
    }

    /// `Ident` or `Ident ⁻` starting at `i`.
    fn role(&self, i: usize) -> Result<(Role, usize), SyntaxError> {
        let name = self.name_at(i)?;
        if self.tok(i + 1) == Some(&Tok::Inv) {
            Ok((Role::inverted(name), i + 2))
        } else {
            Ok((Role::atomic(name), i + 1))
        }
    }

    fn kind(&self, sub: usize) -> Result<Kind, SyntaxError> {
        let mut bare_inverse = false;
        let mut bare_names = Vec::new();
        for (i, t) in self.toks.iter().enumerate() {
            match &t.tok {
                Tok::Exists | Tok::Conj | Tok::LParen => return Ok(Kind::Concept),
                Tok::Ident(s) if i == 0 || self.tok(i - 1) != Some(&Tok::Exists) => {
                    if self.tok(i + 1) == Some(&Tok::Inv) {
                        bare_inverse = true;
                    }
                    bare_names.push((i, s.as_str()));
                }
                _ => {}
            }
        }
        if bare_inverse {
            return Ok(Kind::Role);
        }
        let role_vote = bare_names.iter().find(|(_, s)| self.vocab.is_role(s));
        let concept_vote = bare_names.iter().find(|(_, s)| self.vocab.is_concept(s));
        match (role_vote, concept_vote) {
            (Some(_), Some((i, s))) => Err(self.err(*i, format!("{s} is a concept but the other side is a role"))),
            (Some(_), None) => Ok(Kind::Role),
            (None, Some(_)) => Ok(Kind::Concept),
            (None, None) => {
                let _ = sub;
                if bare_names.iter().any(|(_, s)| looks_like_role(s)) {
                    Ok(Kind::Role)
                } else {
                    Ok(Kind::Concept)
                }
            }
        }
    }

    fn inclusion(&self, sub: usize) -> Result<Axiom, SyntaxError> {
        let n = self.toks.len();
        if sub == 0 {
            return Err(self.err(0, "missing left-hand side"));
        }
        if sub + 1 == n {
            return Err(self.err(sub, "missing right-hand side"));
        }
        match self.kind(sub)? {
            Kind::Role => {
                let (lhs, next) = self.role(0)?;
                if next != sub {
                    return Err(self.err(next, "left-hand side must be a basic role"));
                }
                let negated = self.tok(sub + 1) == Some(&Tok::Neg);
                let start = if negated { sub + 2 } else { sub + 1 };
                let (rhs, next) = self.role(start)?;
                if next != n {
                    return Err(self.err(next, "unexpected token after role"));
                }
                let rhs = if negated { GeneralRole::Neg(rhs) } else { GeneralRole::Basic(rhs) };
                Ok(Axiom::RoleIncl { lhs, rhs })
            }
            Kind::Concept => {
                let (lhs, next) = self.basic(0)?;
                if next != sub {
                    let msg = if self.tok(next) == Some(&Tok::Conj) {
                        "conjunction is not allowed on the left-hand side"
                    } else {
                        "left-hand side must be a basic concept"
                    };
                    return Err(self.err(next, msg));
                }
                let (rhs, next) = self.general(sub + 1)?;
                if next != n {
                    return Err(self.err(next, "unexpected token in concept"));
                }
                Ok(Axiom::ConceptIncl { lhs, rhs })
            }
        }
    }

    fn basic(&self, i: usize) -> Result<(BasicConcept, usize), SyntaxError> {
        match self.tok(i) {
            Some(Tok::Exists) => {
                let (role, next) = self.role(i + 1)?;
                if self.vocab.is_concept(role.name.as_str()) {
                    return Err(self.err(i + 1, format!("{} is a concept, not a role", role.name)));
                }
                Ok((BasicConcept::Exists(role), next))
            }
            Some(Tok::Ident(_)) => {
                let name = self.name_at(i)?;
                if self.vocab.is_role(name.as_str()) {
                    return Err(self.err(i, format!("{name} is a role, not a concept")));
                }
                if self.tok(i + 1) == Some(&Tok::Inv) {
                    return Err(self.err(i + 1, "inverse on a concept"));
                }
                Ok((BasicConcept::Atomic(name), i + 1))
            }
            _ => Err(self.err(i, "expected a basic concept")),
        }
    }

    fn general(&self, i: usize) -> Result<(GeneralConcept, usize), SyntaxError> {
        let (first, mut next) = self.term(i)?;
        let mut parts = vec![first];
        while self.tok(next) == Some(&Tok::Conj) {
            let (part, after) = self.term(next + 1)?;
            parts.push(part);
            next = after;
        }
        Ok((GeneralConcept::conj_all(parts), next))
    }

    fn term(&self, i: usize) -> Result<(GeneralConcept, usize), SyntaxError> {
        match self.tok(i) {
            Some(Tok::LParen) => {
                let (inner, next) = self.general(i + 1)?;
                if self.tok(next) != Some(&Tok::RParen) {
                    return Err(self.err(next, "expected `)`"));
                }
                Ok((inner, next + 1))
            }
            Some(Tok::Neg) => {
                let (b, next) = self.basic(i + 1)?;
                Ok((GeneralConcept::Neg(b), next))
            }
            _ => {
                let (b, next) = self.basic(i)?;
                Ok((GeneralConcept::Basic(b), next))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{name, Dialect};

    fn ok(text: &str) -> Axiom {
        parse_axiom(text, Notation::Unicode).unwrap_or_else(|e| panic!("{text}: {e}"))
    }

    fn class_of(text: &str) -> ErrorClass {
        parse_line(text, Notation::Unicode).expect_err(text).class
    }

    #[test]
    fn parses_concept_inclusions() {
        assert_eq!(ok("Investigation ⊑ ∃hasPart"), Axiom::pi(BasicConcept::atomic("Investigation"), BasicConcept::exists("hasPart")));
        assert_eq!(ok("Ability ⊑ ¬Disability"), Axiom::ni(BasicConcept::atomic("Ability"), BasicConcept::atomic("Disability")));
        assert_eq!(ok("∃R⁻ ⊑ A ⊓ ¬B ⊓ ∃S").to_string(), "∃R⁻ ⊑ A ⊓ ¬B ⊓ ∃S");
        assert_eq!(ok("A ⊑ (B ⊓ C) ⊓ D"), ok("A ⊑ B ⊓ C ⊓ D"));
    }

    #[test]
    fn parses_role_axioms() {
        assert_eq!(ok("Employs ⊑ WorksIn⁻"), Axiom::role_pi(Role::atomic(name("Employs")), Role::inverted(name("WorksIn"))));
        assert_eq!(ok("hasParent ⊑ hasAncestor"), Axiom::role_pi(Role::atomic(name("hasParent")), Role::atomic(name("hasAncestor"))));
        assert_eq!(ok("R₁ ⊑ ¬R₂"), Axiom::role_ni(Role::atomic(name("R₁")), Role::atomic(name("R₂"))));
        assert_eq!(ok("(funct WorksIn⁻)"), Axiom::Funct(Role::inverted(name("WorksIn"))));
        assert_eq!(ok("funct WorksAt"), Axiom::Funct(Role::atomic(name("WorksAt"))));
    }

    #[test]
    fn vocabulary_overrides_heuristic() {
        let mut v = Vocabulary::default();
        v.roles.insert(name("Employs"));
        v.roles.insert(name("Hires"));
        let ax = parse_axiom_with("Employs ⊑ Hires", Notation::Unicode, &v).unwrap();
        assert!(matches!(ax, Axiom::RoleIncl { .. }));
        assert!(matches!(ok("Employs ⊑ Hires"), Axiom::ConceptIncl { .. }));
    }

    #[test]
    fn parses_assertions() {
        assert_eq!(parse_assertion("Student(John)", Notation::Unicode).unwrap(), Assertion::concept("Student", "John"));
        assert_eq!(parse_assertion("WorksIn(John,Google)", Notation::Ascii).unwrap(), Assertion::role("WorksIn", "John", "Google"));
    }

    #[test]
    fn classifies_appendix_examples() {
        assert_eq!(class_of("∃hasPerformer¬ ⊑ MusicalExpression"), ErrorClass::MisplacedNegation);
        assert_eq!(class_of("Protocol ⊑ ¬Investigation¬"), ErrorClass::MisplacedNegation);
        assert_eq!(class_of("∃isConnectedTo ⊑ Organ⁻"), ErrorClass::InvalidInverseOnConcept);
        assert_eq!(class_of("Professor ⊓ TeachesTo"), ErrorClass::ConceptRoleConjunction);
        assert_eq!(class_of("TeachesTo ⊓ HasTutor"), ErrorClass::RoleRoleConjunction);
        assert_eq!(class_of("Professor ⊓"), ErrorClass::IncompleteConjunction);
        assert_eq!(class_of("Professor ∃TeachesTo"), ErrorClass::MissingConjunctionOperator);
        assert_eq!(class_of("⊓ Professor ∃TeachesTo"), ErrorClass::MisplacedConjunctionOperator);
        assert_eq!(class_of("A ⊑ ⁻TeachesTo"), ErrorClass::MisplacedInverse);
        assert_eq!(class_of("A ⊑ ∃⁻R"), ErrorClass::InverseOnQuantifier);
        assert_eq!(class_of("A ⊑ TeachesTo∃"), ErrorClass::MisplacedQuantifier);
        assert_eq!(class_of("A ⊑ ∃∃TeachesTo"), ErrorClass::RedundantQuantifiers);
        assert_eq!(class_of("A ⊑ ∃"), ErrorClass::QuantifierMissingRole);
        assert_eq!(class_of("¬"), ErrorClass::DanglingNegation);
        assert_eq!(class_of("A ⊑ B ⊓ ¬"), ErrorClass::DanglingNegation);
        let mut v = Vocabulary::default();
        v.concepts.insert(name("Professor"));
        let e = parse_line_with("A ⊑ ∃Professor", Notation::Unicode, &v).unwrap_err();
        assert_eq!(e.class, ErrorClass::QuantifierOnConcept);
        assert_eq!(e.position, "A ⊑ ∃".len());
    }

    #[test]
    fn unclassified_failures() {
        assert_eq!(class_of("A ⊑ B ⊑ C"), ErrorClass::Unclassified);
        assert_eq!(class_of("A ⊓ B ⊑ C"), ErrorClass::Unclassified);
        assert_eq!(class_of("A ⊑ B @"), ErrorClass::Unclassified);
        assert_eq!(class_of("Student(John"), ErrorClass::Unclassified);
    }

    #[test]
    fn error_positions_are_byte_offsets_inside_input() {
        for text in ["∃hasPerformer¬ ⊑ MusicalExpression", "A ⊑ B ⊓", "A ⊑ ∃", "Student(John", "⊑ B"] {
            let e = parse_line(text, Notation::Unicode).unwrap_err();
            assert!(e.position < text.len(), "{text}: {}", e.position);
            assert!(text.is_char_boundary(e.position));
        }
    }

    #[test]
    fn ontology_parse_collects_errors_and_dialect() {
        let p = parse_ontology("A ⊑ B\n# comment\n\nB ⊑ ¬C\n", Notation::Unicode);
        assert_eq!(p.ontology.tbox().len(), 2);
        assert!(p.errors.is_empty());
        let p = parse_ontology("A ⊑ B\nA ⊑ ∃∃R\n", Notation::Unicode);
        assert_eq!(p.ontology.tbox().len(), 1);
        assert_eq!(p.errors.len(), 1);
        assert_eq!(p.errors[0].line, 2);
        let p = parse_ontology("(funct WorksIn)\nEmploys ⊑ WorksIn⁻\n", Notation::Unicode);
        assert!(p.errors.is_empty());
        assert_eq!(p.ontology.dialect(), Dialect::FR);
        assert!(parse_ontology_strict("A ⊑ B\nA ⊑ ∃", Notation::Unicode).is_err());
    }

    #[test]
    fn ontology_vocabulary_comes_from_evidence_and_directives() {
        let text = "# roles: Likes\nLikes ⊑ Knows\nWorksIn(John, Google)\nEmploys ⊑ WorksIn⁻\nEmploys ⊑ Hires\n";
        let p = parse_ontology(text, Notation::Unicode);
        assert!(p.errors.is_empty(), "{:?}", p.errors);
        assert!(p.ontology.tbox().iter().all(|a| matches!(a, Axiom::RoleIncl { .. })), "{:?}", p.ontology);
    }

    #[test]
    fn ascii_round_trip_examples() {
        let ax = ok("Ability ⊑ ¬Disability");
        assert_eq!(serialize(&ax, Notation::Ascii), "Ability [= !Disability");
        assert_eq!(parse_axiom("Ability [= !Disability", Notation::Ascii).unwrap(), ax);
        let f = Axiom::Funct(Role::inverted(name("WorksIn")));
        assert_eq!(serialize(&f, Notation::Unicode), "(funct WorksIn⁻)");
        assert_eq!(parse_axiom(&serialize(&f, Notation::Ascii), Notation::Ascii).unwrap(), f);
    }

    #[test]
    fn heuristic_examples() {
        for r in ["hasPart", "HasParent", "IsPartOf", "WorksIn", "TeachesTo", "R1", "R₅", "P2"] {
            assert!(looks_like_role(r), "{r}");
        }
        for c in ["Student", "Person", "C₁", "Organ", "RegionalHospital", "R", "Into"] {
            assert!(!looks_like_role(c), "{c}");
        }
    }
}
