//! Conjunctive queries: `Q(x, y) <- A(x), R(x, y)` (`←` and `:-` also
//! accepted). Lowercase identifiers and `?x` are variables; identifiers
//! starting with an uppercase letter or quoted ones are constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ChaseFact, ChasedAbox, ReasonError, Term};
use crate::model::Name;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QueryTerm {
    Var(String),
    Const(Name),
}

impl fmt::Display for QueryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryTerm::Var(v) => write!(f, "{v}"),
            QueryTerm::Const(c) if c.as_str().starts_with(|ch: char| ch.is_uppercase()) => write!(f, "{c}"),
            QueryTerm::Const(c) => write!(f, "'{c}'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    Concept { concept: Name, arg: QueryTerm },
    Role { role: Name, subject: QueryTerm, object: QueryTerm },
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Concept { concept, arg } => write!(f, "{concept}({arg})"),
            Atom::Role { role, subject, object } => write!(f, "{role}({subject}, {object})"),
        }
    }
}

impl Atom {
    fn terms(&self) -> Vec<&QueryTerm> {
        match self {
            Atom::Concept { arg, .. } => vec![arg],
            Atom::Role { subject, object, .. } => vec![subject, object],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub name: String,
    pub head: Vec<String>,
    pub body: Vec<Atom>,
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.body.iter().map(|a| a.to_string()).collect();
        write!(f, "{}({}) ← {}", self.name, self.head.join(", "), body.join(", "))
    }
}

fn parse_term(s: &str) -> Result<QueryTerm, String> {
    let s = s.trim();
    if let Some(v) = s.strip_prefix('?') {
        return Ok(QueryTerm::Var(v.to_string()));
    }
    for q in ['\'', '"'] {
        if let Some(inner) = s.strip_prefix(q).and_then(|r| r.strip_suffix(q)) {
            return Name::new(inner).map(QueryTerm::Const).map_err(|e| e.to_string());
        }
    }
    match s.chars().next() {
        Some(c) if c.is_lowercase() => {
            Name::new(s).map_err(|e| e.to_string())?;
            Ok(QueryTerm::Var(s.to_string()))
        }
        Some(_) => Name::new(s).map(QueryTerm::Const).map_err(|e| e.to_string()),
        None => Err("empty term".into()),
    }
}

/// Splits `A(x), R(x, y)` on commas outside parentheses.
fn split_atoms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_call(s: &str) -> Result<(String, Vec<String>), String> {
    let s = s.trim();
    let (head, rest) = s.split_once('(').ok_or_else(|| format!("expected `name(...)` in `{s}`"))?;
    let args = rest.trim_end().strip_suffix(')').ok_or_else(|| format!("missing `)` in `{s}`"))?;
    let args = if args.trim().is_empty() { Vec::new() } else { args.split(',').map(|a| a.trim().to_string()).collect() };
    Ok((head.trim().to_string(), args))
}

impl Query {
    pub fn parse(text: &str) -> Result<Query, ReasonError> {
        let perr = |m: String| ReasonError::QueryParse(m);
        let (head, body) = ["<-", "←", ":-"].iter().find_map(|sep| text.split_once(sep)).ok_or_else(|| perr("missing `<-`".into()))?;
        let (name, head_args) = parse_call(head).map_err(perr)?;
        let mut vars = Vec::new();
        for a in head_args {
            match parse_term(&a).map_err(perr)? {
                QueryTerm::Var(v) => vars.push(v),
                QueryTerm::Const(c) => return Err(perr(format!("constant {c} in the head"))),
            }
        }
        let mut atoms = Vec::new();
        for part in split_atoms(body) {
            if part.trim().is_empty() {
                return Err(perr("empty atom".into()));
            }
            let (pred, args) = parse_call(part).map_err(perr)?;
            let pred = Name::new(pred).map_err(|e| perr(e.to_string()))?;
            let mut args = args.iter().map(|a| parse_term(a)).collect::<Result<Vec<_>, _>>().map_err(perr)?;
            atoms.push(match args.len() {
                1 => Atom::Concept { concept: pred, arg: args.remove(0) },
                2 => {
                    let object = args.remove(1);
                    Atom::Role { role: pred, subject: args.remove(0), object }
                }
                n => return Err(perr(format!("{pred} has {n} arguments"))),
            });
        }
        let q = Query { name, head: vars, body: atoms };
        q.check_safe()?;
        Ok(q)
    }

    /// Every head variable must occur in the body.
    pub fn check_safe(&self) -> Result<(), ReasonError> {
        let body_vars: BTreeSet<&str> = self
            .body
            .iter()
            .flat_map(|a| a.terms())
            .filter_map(|t| if let QueryTerm::Var(v) = t { Some(v.as_str()) } else { None })
            .collect();
        match self.head.iter().find(|v| !body_vars.contains(v.as_str())) {
            Some(v) => Err(ReasonError::UnsafeQuery(v.clone())),
            None => Ok(()),
        }
    }
}

struct Index<'a> {
    concepts: BTreeMap<&'a Name, Vec<&'a Term>>,
    roles: BTreeMap<&'a Name, Vec<(&'a Term, &'a Term)>>,
}

fn unify<'a>(t: &QueryTerm, value: &'a Term, env: &mut BTreeMap<String, &'a Term>, bound: &mut Vec<String>) -> bool {
    match t {
        QueryTerm::Const(c) => value.named() == Some(c),
        QueryTerm::Var(v) => match env.get(v) {
            Some(&old) => old == value,
            None => {
                env.insert(v.clone(), value);
                bound.push(v.clone());
                true
            }
        },
    }
}

fn search<'a>(atoms: &[Atom], ix: &Index<'a>, env: &mut BTreeMap<String, &'a Term>, head: &[String], out: &mut BTreeSet<Vec<Name>>) {
    let Some((first, rest)) = atoms.split_first() else {
        let tuple: Option<Vec<Name>> = head.iter().map(|v| env[v].named().cloned()).collect();
        if let Some(t) = tuple {
            out.insert(t);
        }
        return;
    };
    match first {
        Atom::Concept { concept, arg } => {
            for &term in ix.concepts.get(concept).map(Vec::as_slice).unwrap_or(&[]) {
                let mut bound = Vec::new();
                if unify(arg, term, env, &mut bound) {
                    search(rest, ix, env, head, out);
                }
                for v in bound {
                    env.remove(&v);
                }
            }
        }
        Atom::Role { role, subject, object } => {
            for &(s, o) in ix.roles.get(role).map(Vec::as_slice).unwrap_or(&[]) {
                let mut bound = Vec::new();
                if unify(subject, s, env, &mut bound) && unify(object, o, env, &mut bound) {
                    search(rest, ix, env, head, out);
                }
                for v in bound {
                    env.remove(&v);
                }
            }
        }
    }
}

/// All head tuples of named individuals with a match in the chase.
pub(crate) fn evaluate(q: &Query, chase: &ChasedAbox) -> BTreeSet<Vec<Name>> {
    let mut ix = Index { concepts: BTreeMap::new(), roles: BTreeMap::new() };
    for f in &chase.facts {
        match f {
            ChaseFact::Concept { concept, term } => ix.concepts.entry(concept).or_default().push(term),
            ChaseFact::Role { role, subject, object } => ix.roles.entry(role).or_default().push((subject, object)),
        }
    }
    let mut out = BTreeSet::new();
    search(&q.body, &ix, &mut BTreeMap::new(), &q.head, &mut out);
    out
}
