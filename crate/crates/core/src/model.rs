//! Abstract syntax for DL-Lite ontologies: names, roles, concepts, axioms,
//! assertions and the ontology container.
//!
//! Sets of axioms and assertions iterate in lexicographic order of their
//! Unicode serialization, so every listing produced from a model is stable.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid identifier {0:?}")]
    InvalidName(String),
    #[error("axiom `{axiom}` is not allowed in {dialect}")]
    DialectViolation { axiom: String, dialect: Dialect },
}

/// Identifier for a concept, role or individual.
///
/// Starts with a letter or `_`, continues with alphanumerics (Unicode
/// subscript digits included) or `_`. The keywords `exists` and `funct` are
/// reserved because the ASCII notation uses them as operators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Name(String);

impl Name {
    pub fn new(s: impl Into<String>) -> Result<Name, ModelError> {
        let s = s.into();
        if Name::is_valid(&s) {
            Ok(Name(s))
        } else {
            Err(ModelError::InvalidName(s))
        }
    }

    pub fn is_valid(s: &str) -> bool {
        let mut chars = s.chars();
        let Some(first) = chars.next() else {
            return false;
        };
        (first.is_alphabetic() || first == '_') && chars.all(|c| c.is_alphanumeric() || c == '_') && !is_keyword(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Placeholder individuals (`x1`, `x2`, ...) stand for an unknown
    /// element and are exempt from the unique name assumption.
    pub fn is_placeholder(&self) -> bool {
        is_placeholder_str(&self.0)
    }
}

pub(crate) fn is_keyword(s: &str) -> bool {
    s.eq_ignore_ascii_case("funct") || s == "exists"
}

pub(crate) fn is_placeholder_str(s: &str) -> bool {
    s.len() > 1 && s.starts_with('x') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

impl TryFrom<String> for Name {
    type Error = ModelError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Name::new(s)
    }
}

impl From<Name> for String {
    fn from(n: Name) -> String {
        n.0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Name {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Shorthand used throughout the tests and fixtures. Panics on an invalid
/// identifier, so only use it with literals.
pub fn name(s: &str) -> Name {
    Name::new(s).unwrap_or_else(|e| panic!("{e}"))
}

/// A basic role: an atomic role or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Role {
    pub name: Name,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverse: bool,
}

impl Role {
    pub fn atomic(name: Name) -> Role {
        Role { name, inverse: false }
    }

    pub fn inverted(name: Name) -> Role {
        Role { name, inverse: true }
    }

    pub fn inverse(&self) -> Role {
        Role { name: self.name.clone(), inverse: !self.inverse }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasicConcept {
    Atomic(Name),
    Exists(Role),
}

impl BasicConcept {
    pub fn atomic(s: &str) -> BasicConcept {
        BasicConcept::Atomic(name(s))
    }

    pub fn exists(s: &str) -> BasicConcept {
        BasicConcept::Exists(Role::atomic(name(s)))
    }

    pub fn exists_inv(s: &str) -> BasicConcept {
        BasicConcept::Exists(Role::inverted(name(s)))
    }
}

/// General concept. Conjunction is binary; [`GeneralConcept::conj`] keeps it
/// right-nested so that printing and parsing are inverse to each other.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneralConcept {
    Basic(BasicConcept),
    Neg(BasicConcept),
    Conj(Box<GeneralConcept>, Box<GeneralConcept>),
}

impl GeneralConcept {
    pub fn conj(left: GeneralConcept, right: GeneralConcept) -> GeneralConcept {
        match left {
            GeneralConcept::Conj(a, b) => GeneralConcept::conj(*a, GeneralConcept::conj(*b, right)),
            left => GeneralConcept::Conj(Box::new(left), Box::new(right)),
        }
    }

    /// Builds a right-nested conjunction. Panics on an empty list.
    pub fn conj_all(parts: Vec<GeneralConcept>) -> GeneralConcept {
        let mut iter = parts.into_iter().rev();
        let mut acc = iter.next().expect("conjunction needs at least one operand");
        for part in iter {
            acc = GeneralConcept::conj(part, acc);
        }
        acc
    }

    /// Flattened non-conjunctive operands, left to right.
    pub fn conjuncts(&self) -> Vec<&GeneralConcept> {
        match self {
            GeneralConcept::Conj(a, b) => {
                let mut out = a.conjuncts();
                out.extend(b.conjuncts());
                out
            }
            other => vec![other],
        }
    }
}

impl From<BasicConcept> for GeneralConcept {
    fn from(b: BasicConcept) -> Self {
        GeneralConcept::Basic(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneralRole {
    Basic(Role),
    Neg(Role),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    ConceptIncl { lhs: BasicConcept, rhs: GeneralConcept },
    RoleIncl { lhs: Role, rhs: GeneralRole },
    Funct(Role),
}

impl Axiom {
    /// Positive concept inclusion `lhs ⊑ rhs`.
    pub fn pi(lhs: BasicConcept, rhs: BasicConcept) -> Axiom {
        Axiom::ConceptIncl { lhs, rhs: GeneralConcept::Basic(rhs) }
    }

    /// Negative concept inclusion `lhs ⊑ ¬rhs`.
    pub fn ni(lhs: BasicConcept, rhs: BasicConcept) -> Axiom {
        Axiom::ConceptIncl { lhs, rhs: GeneralConcept::Neg(rhs) }
    }

    pub fn role_pi(lhs: Role, rhs: Role) -> Axiom {
        Axiom::RoleIncl { lhs, rhs: GeneralRole::Basic(rhs) }
    }

    pub fn role_ni(lhs: Role, rhs: Role) -> Axiom {
        Axiom::RoleIncl { lhs, rhs: GeneralRole::Neg(rhs) }
    }

    /// Smallest dialect in which this axiom is allowed.
    pub fn dialect(&self) -> Dialect {
        match self {
            Axiom::ConceptIncl { .. } => Dialect::Core,
            Axiom::RoleIncl { .. } => Dialect::R,
            Axiom::Funct(_) => Dialect::F,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Axiom::ConceptIncl { rhs: GeneralConcept::Neg(_), .. } | Axiom::RoleIncl { rhs: GeneralRole::Neg(_), .. })
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        sig.add_axiom(self);
        sig
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assertion {
    Concept { concept: Name, individual: Name },
    Role { role: Name, subject: Name, object: Name },
}

impl Assertion {
    pub fn concept(c: &str, a: &str) -> Assertion {
        Assertion::Concept { concept: name(c), individual: name(a) }
    }

    pub fn role(r: &str, a: &str, b: &str) -> Assertion {
        Assertion::Role { role: name(r), subject: name(a), object: name(b) }
    }

    pub fn individuals(&self) -> Vec<&Name> {
        match self {
            Assertion::Concept { individual, .. } => vec![individual],
            Assertion::Role { subject, object, .. } => vec![subject, object],
        }
    }
}

/// DL-Lite dialect. `FR` allows both functionality and role inclusions, with
/// the restriction that a functional role may not be specialised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    Core,
    F,
    R,
    FR,
}

impl Dialect {
    pub fn join(self, other: Dialect) -> Dialect {
        use Dialect::*;
        match (self, other) {
            (Core, d) | (d, Core) => d,
            (F, F) => F,
            (R, R) => R,
            _ => FR,
        }
    }

    pub fn allows(self, d: Dialect) -> bool {
        self.join(d) == self
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::Core => "DL-Lite_core",
            Dialect::F => "DL-Lite_F",
            Dialect::R => "DL-Lite_R",
            Dialect::FR => "DL-Lite_FR",
        })
    }
}

impl std::str::FromStr for Dialect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().trim_start_matches("dl-lite_") {
            "core" => Ok(Dialect::Core),
            "f" => Ok(Dialect::F),
            "r" => Ok(Dialect::R),
            "fr" => Ok(Dialect::FR),
            other => Err(format!("unknown dialect {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub concepts: BTreeSet<Name>,
    pub roles: BTreeSet<Name>,
    pub individuals: BTreeSet<Name>,
}

impl Signature {
    pub fn add_basic(&mut self, b: &BasicConcept) {
        match b {
            BasicConcept::Atomic(a) => {
                self.concepts.insert(a.clone());
            }
            BasicConcept::Exists(r) => {
                self.roles.insert(r.name.clone());
            }
        }
    }

    pub fn add_general(&mut self, c: &GeneralConcept) {
        match c {
            GeneralConcept::Basic(b) | GeneralConcept::Neg(b) => self.add_basic(b),
            GeneralConcept::Conj(a, b) => {
                self.add_general(a);
                self.add_general(b);
            }
        }
    }

    pub fn add_axiom(&mut self, ax: &Axiom) {
        match ax {
            Axiom::ConceptIncl { lhs, rhs } => {
                self.add_basic(lhs);
                self.add_general(rhs);
            }
            Axiom::RoleIncl { lhs, rhs } => {
                self.roles.insert(lhs.name.clone());
                let (GeneralRole::Basic(r) | GeneralRole::Neg(r)) = rhs;
                self.roles.insert(r.name.clone());
            }
            Axiom::Funct(r) => {
                self.roles.insert(r.name.clone());
            }
        }
    }

    pub fn add_assertion(&mut self, a: &Assertion) {
        match a {
            Assertion::Concept { concept, individual } => {
                self.concepts.insert(concept.clone());
                self.individuals.insert(individual.clone());
            }
            Assertion::Role { role, subject, object } => {
                self.roles.insert(role.clone());
                self.individuals.insert(subject.clone());
                self.individuals.insert(object.clone());
            }
        }
    }

    pub fn extend(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
        self.individuals.extend(other.individuals.iter().cloned());
    }
}

/// An ontology `⟨T, A⟩` tagged with its dialect.
///
/// The dialect is always at least as permissive as the axioms require:
/// constructors infer the smallest one, [`Ontology::with_dialect`] rejects a
/// dialect that is too small.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OntologyRepr", into = "OntologyRepr")]
pub struct Ontology {
    tbox: BTreeSet<Axiom>,
    abox: BTreeSet<Assertion>,
    dialect: Dialect,
}

impl Default for Ontology {
    fn default() -> Self {
        Ontology { tbox: BTreeSet::new(), abox: BTreeSet::new(), dialect: Dialect::Core }
    }
}

impl Ontology {
    pub fn new(tbox: impl IntoIterator<Item = Axiom>, abox: impl IntoIterator<Item = Assertion>) -> Ontology {
        let tbox: BTreeSet<Axiom> = tbox.into_iter().collect();
        let dialect = tbox.iter().fold(Dialect::Core, |d, ax| d.join(ax.dialect()));
        Ontology { tbox, abox: abox.into_iter().collect(), dialect }
    }

    pub fn with_dialect(mut self, dialect: Dialect) -> Result<Ontology, ModelError> {
        if let Some(ax) = self.tbox.iter().find(|ax| !dialect.allows(ax.dialect())) {
            return Err(ModelError::DialectViolation { axiom: ax.to_string(), dialect });
        }
        self.dialect = dialect;
        Ok(self)
    }

    pub fn tbox(&self) -> &BTreeSet<Axiom> {
        &self.tbox
    }

    pub fn abox(&self) -> &BTreeSet<Assertion> {
        &self.abox
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    /// Adds an axiom, widening the dialect if needed.
    pub fn insert_axiom(&mut self, ax: Axiom) -> bool {
        self.dialect = self.dialect.join(ax.dialect());
        self.tbox.insert(ax)
    }

    pub fn insert_assertion(&mut self, a: Assertion) -> bool {
        self.abox.insert(a)
    }

    pub fn remove_axiom(&mut self, ax: &Axiom) -> bool {
        self.tbox.remove(ax)
    }

    pub fn remove_assertion(&mut self, a: &Assertion) -> bool {
        self.abox.remove(a)
    }

    /// Same TBox, empty ABox.
    pub fn tbox_only(&self) -> Ontology {
        Ontology { tbox: self.tbox.clone(), abox: BTreeSet::new(), dialect: self.dialect }
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for ax in &self.tbox {
            sig.add_axiom(ax);
        }
        for a in &self.abox {
            sig.add_assertion(a);
        }
        sig
    }

    pub fn len(&self) -> usize {
        self.tbox.len() + self.abox.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tbox.is_empty() && self.abox.is_empty()
    }

    /// Copy with every conjunctive right-hand side split into one axiom per
    /// conjunct.
    pub fn normalized(&self) -> Ontology {
        Ontology { tbox: normalize(&self.tbox), abox: self.abox.clone(), dialect: self.dialect }
    }
}

/// Splits `B ⊑ C₁ ⊓ C₂` into `B ⊑ C₁` and `B ⊑ C₂` (recursively). The result
/// contains only PIs, NIs and functionality axioms.
pub fn normalize<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> BTreeSet<Axiom> {
    let mut out = BTreeSet::new();
    for ax in tbox {
        match ax {
            Axiom::ConceptIncl { lhs, rhs } => {
                for c in rhs.conjuncts() {
                    out.insert(Axiom::ConceptIncl { lhs: lhs.clone(), rhs: c.clone() });
                }
            }
            other => {
                out.insert(other.clone());
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct OntologyRepr {
    dialect: Dialect,
    tbox: Vec<Axiom>,
    abox: Vec<Assertion>,
}

impl TryFrom<OntologyRepr> for Ontology {
    type Error = ModelError;
    fn try_from(r: OntologyRepr) -> Result<Self, Self::Error> {
        Ontology::new(r.tbox, r.abox).with_dialect(r.dialect)
    }
}

impl From<Ontology> for OntologyRepr {
    fn from(o: Ontology) -> Self {
        OntologyRepr { dialect: o.dialect, tbox: o.tbox.into_iter().collect(), abox: o.abox.into_iter().collect() }
    }
}

/// Output notation for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    Unicode,
    Ascii,
}

struct Symbols {
    sub: &'static str,
    conj: &'static str,
    neg: &'static str,
    exists: &'static str,
    inv: &'static str,
}

impl Notation {
    fn symbols(self) -> Symbols {
        match self {
            Notation::Unicode => Symbols { sub: " ⊑ ", conj: " ⊓ ", neg: "¬", exists: "∃", inv: "⁻" },
            Notation::Ascii => Symbols { sub: " [= ", conj: " & ", neg: "!", exists: "exists ", inv: "^-" },
        }
    }
}

/// Something that can be written in either notation.
pub trait Render {
    fn render_into(&self, n: Notation, out: &mut String);

    fn render(&self, n: Notation) -> String {
        let mut s = String::new();
        self.render_into(n, &mut s);
        s
    }
}

impl Render for Role {
    fn render_into(&self, n: Notation, out: &mut String) {
        out.push_str(self.name.as_str());
        if self.inverse {
            out.push_str(n.symbols().inv);
        }
    }
}

impl Render for BasicConcept {
    fn render_into(&self, n: Notation, out: &mut String) {
        match self {
            BasicConcept::Atomic(a) => out.push_str(a.as_str()),
            BasicConcept::Exists(r) => {
                out.push_str(n.symbols().exists);
                r.render_into(n, out);
            }
        }
    }
}

impl Render for GeneralConcept {
    fn render_into(&self, n: Notation, out: &mut String) {
        match self {
            GeneralConcept::Basic(b) => b.render_into(n, out),
            GeneralConcept::Neg(b) => {
                out.push_str(n.symbols().neg);
                b.render_into(n, out);
            }
            GeneralConcept::Conj(a, b) => {
                let nested = matches!(**a, GeneralConcept::Conj(..));
                if nested {
                    out.push('(');
                }
                a.render_into(n, out);
                if nested {
                    out.push(')');
                }
                out.push_str(n.symbols().conj);
                b.render_into(n, out);
            }
        }
    }
}

impl Render for GeneralRole {
    fn render_into(&self, n: Notation, out: &mut String) {
        match self {
            GeneralRole::Basic(r) => r.render_into(n, out),
            GeneralRole::Neg(r) => {
                out.push_str(n.symbols().neg);
                r.render_into(n, out);
            }
        }
    }
}

impl Render for Axiom {
    fn render_into(&self, n: Notation, out: &mut String) {
        match self {
            Axiom::ConceptIncl { lhs, rhs } => {
                lhs.render_into(n, out);
                out.push_str(n.symbols().sub);
                rhs.render_into(n, out);
            }
            Axiom::RoleIncl { lhs, rhs } => {
                lhs.render_into(n, out);
                out.push_str(n.symbols().sub);
                rhs.render_into(n, out);
            }
            Axiom::Funct(r) => {
                out.push_str("(funct ");
                r.render_into(n, out);
                out.push(')');
            }
        }
    }
}

impl Render for Assertion {
    fn render_into(&self, _n: Notation, out: &mut String) {
        match self {
            Assertion::Concept { concept, individual } => {
                out.push_str(concept.as_str());
                out.push('(');
                out.push_str(individual.as_str());
                out.push(')');
            }
            Assertion::Role { role, subject, object } => {
                out.push_str(role.as_str());
                out.push('(');
                out.push_str(subject.as_str());
                out.push_str(", ");
                out.push_str(object.as_str());
                out.push(')');
            }
        }
    }
}

impl Render for Ontology {
    fn render_into(&self, n: Notation, out: &mut String) {
        for ax in &self.tbox {
            ax.render_into(n, out);
            out.push('\n');
        }
        for a in &self.abox {
            a.render_into(n, out);
            out.push('\n');
        }
    }
}

macro_rules! display_via_render {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.render(Notation::Unicode))
            }
        }
    )*};
}

display_via_render!(Role, BasicConcept, GeneralConcept, GeneralRole, Axiom, Assertion);

macro_rules! ord_via_text {
    ($($t:ty),*) => {$(
        impl Ord for $t {
            fn cmp(&self, other: &Self) -> Ordering {
                if self == other {
                    return Ordering::Equal;
                }
                self.render(Notation::Unicode)
                    .cmp(&other.render(Notation::Unicode))
            }
        }
        impl PartialOrd for $t {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
    )*};
}

ord_via_text!(GeneralConcept, GeneralRole, Axiom, Assertion);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_reject_operators_and_keywords() {
        assert!(Name::new("Student").is_ok());
        assert!(Name::new("C₁").is_ok());
        assert!(Name::new("has_part2").is_ok());
        assert!(Name::new("").is_err());
        assert!(Name::new("2A").is_err());
        assert!(Name::new("A⁻").is_err());
        assert!(Name::new("exists").is_err());
        assert!(Name::new("funct").is_err());
    }

    #[test]
    fn placeholder_detection() {
        assert!(name("x1").is_placeholder());
        assert!(name("x42").is_placeholder());
        assert!(!name("x").is_placeholder());
        assert!(!name("xa").is_placeholder());
        assert!(!name("X1").is_placeholder());
    }

    #[test]
    fn conjunction_is_right_nested() {
        let a = GeneralConcept::Basic(BasicConcept::atomic("A"));
        let b = GeneralConcept::Basic(BasicConcept::atomic("B"));
        let c = GeneralConcept::Basic(BasicConcept::atomic("C"));
        let left = GeneralConcept::conj(GeneralConcept::conj(a.clone(), b.clone()), c.clone());
        let right = GeneralConcept::conj(a, GeneralConcept::conj(b, c));
        assert_eq!(left, right);
        assert_eq!(left.to_string(), "A ⊓ B ⊓ C");
    }

    #[test]
    fn rendering_in_both_notations() {
        let ax = Axiom::ConceptIncl {
            lhs: BasicConcept::exists_inv("R"),
            rhs: GeneralConcept::conj(GeneralConcept::Neg(BasicConcept::atomic("A")), GeneralConcept::Basic(BasicConcept::exists("S"))),
        };
        assert_eq!(ax.to_string(), "∃R⁻ ⊑ ¬A ⊓ ∃S");
        assert_eq!(ax.render(Notation::Ascii), "exists R^- [= !A & exists S");
        assert_eq!(Axiom::Funct(Role::inverted(name("P"))).to_string(), "(funct P⁻)");
        assert_eq!(Assertion::role("R", "a", "b").to_string(), "R(a, b)");
    }

    #[test]
    fn dialect_inference_and_join() {
        let o = Ontology::new([Axiom::pi(BasicConcept::atomic("A"), BasicConcept::atomic("B"))], []);
        assert_eq!(o.dialect(), Dialect::Core);
        let mut o2 = o.clone();
        o2.insert_axiom(Axiom::Funct(Role::atomic(name("R"))));
        assert_eq!(o2.dialect(), Dialect::F);
        o2.insert_axiom(Axiom::role_pi(Role::atomic(name("S")), Role::atomic(name("T"))));
        assert_eq!(o2.dialect(), Dialect::FR);
        assert!(o2.clone().with_dialect(Dialect::R).is_err());
        assert!(o.with_dialect(Dialect::R).is_ok());
    }

    #[test]
    fn normalize_splits_conjunctions() {
        let ax = Axiom::ConceptIncl {
            lhs: BasicConcept::atomic("A"),
            rhs: GeneralConcept::conj_all(vec![
                BasicConcept::atomic("B").into(),
                GeneralConcept::Neg(BasicConcept::atomic("C")),
                BasicConcept::exists("R").into(),
            ]),
        };
        let n = normalize([&ax]);
        let shown: Vec<String> = n.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, vec!["A ⊑ B", "A ⊑ ¬C", "A ⊑ ∃R"]);
    }

    #[test]
    fn ontology_serde_round_trip_validates_dialect() {
        let o = Ontology::new([Axiom::role_pi(Role::atomic(name("R")), Role::inverted(name("S")))], [Assertion::role("R", "a", "b")]);
        let json = serde_json::to_string(&o).unwrap();
        let back: Ontology = serde_json::from_str(&json).unwrap();
        assert_eq!(back, o);
        let bad = json.replace("\"r\"", "\"core\"");
        assert!(serde_json::from_str::<Ontology>(&bad).is_err());
    }

    #[test]
    fn sets_iterate_in_text_order() {
        let o = Ontology::new(
            [
                Axiom::pi(BasicConcept::atomic("B"), BasicConcept::atomic("C")),
                Axiom::pi(BasicConcept::atomic("A"), BasicConcept::atomic("C")),
                Axiom::pi(BasicConcept::exists("R"), BasicConcept::atomic("C")),
            ],
            [],
        );
        let shown: Vec<String> = o.tbox().iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, vec!["A ⊑ C", "B ⊑ C", "∃R ⊑ C"]);
    }
}
