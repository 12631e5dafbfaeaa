//! The single-ontology commands: parse, corrupt, reason.

use std::path::Path;

use anyhow::Context;
use dllite::model::{Notation, Ontology};
use dllite::parser::{corrupt_with, detect_notation, parse_ontology, CorruptError, ErrorClass, Vocabulary};
use dllite::reasoner::{parse_implications, render_implication, Implication, Query, Reasoner, Step};

use crate::stage::{fail, Stage, StageExt};

pub fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).stage(Stage::ParseStage)
}

/// Parses an ontology file in whichever notation it is written; any
/// invalid line is a parse-stage failure.
pub fn load_ontology(path: &Path) -> anyhow::Result<Ontology> {
    let text = read_text(path)?;
    let parsed = parse_ontology(&text, detect_notation(&text));
    if let Some(e) = parsed.errors.first() {
        return fail(Stage::ParseStage, format!("{}: {e} ({} invalid lines)", path.display(), parsed.errors.len()));
    }
    Ok(parsed.ontology)
}

fn print_steps(steps: &[Step]) {
    for s in steps {
        println!("    {}: {} => {}", s.rule, s.premises.join(", "), s.conclusion);
    }
}

pub fn check_syntax(path: &Path) -> anyhow::Result<()> {
    let text = read_text(path)?;
    let parsed = parse_ontology(&text, detect_notation(&text));
    for e in &parsed.errors {
        println!("line {}: {} at byte {}: {}  | {}", e.line, e.error.class, e.error.position, e.error.message, e.text.trim());
    }
    println!("{} valid, {} invalid", parsed.ontology.len(), parsed.errors.len());
    Ok(())
}

pub fn corrupt(path: &Path, class: Option<ErrorClass>, seed: u64, notation: Notation) -> anyhow::Result<()> {
    let o = load_ontology(path)?;
    let vocab = Vocabulary::from_signature(&o.signature());
    for (i, ax) in o.tbox().iter().enumerate() {
        match corrupt_with(ax, class, seed.wrapping_add(i as u64), notation, &vocab) {
            Ok(c) => println!("{}\t{}", c.class, c.text),
            Err(e @ (CorruptError::NotApplicable { .. } | CorruptError::NothingApplicable(_))) => {
                eprintln!("skipped: {e}")
            }
        }
    }
    Ok(())
}

pub fn closure(path: &Path, explain: bool, notation: Notation) -> anyhow::Result<()> {
    let o = load_ontology(path)?;
    let r = Reasoner::new(&o);
    let implications = r.tbox_implications();
    for imp in &implications {
        println!("{}", render_implication(imp, notation));
        if let (true, Implication::Inclusion(ax)) = (explain, imp) {
            print_steps(&r.entails_inclusion(ax).steps);
        }
    }
    eprintln!("{} implications", implications.len());
    Ok(())
}

pub fn sat(path: &Path) -> anyhow::Result<()> {
    let o = load_ontology(path)?;
    let s = Reasoner::new(&o).satisfiability().stage(Stage::ReasonStage)?;
    if s.satisfiable {
        println!("satisfiable");
    } else {
        println!("unsatisfiable");
        if let Some(v) = &s.violation {
            println!("violation: {v}");
            let support: Vec<String> = v.support.iter().map(|a| a.to_string()).collect();
            println!("support: {}", support.join(", "));
        }
    }
    for (from, to) in &s.merges {
        println!("merged: {from} = {to}");
    }
    Ok(())
}

pub fn entail(path: &Path, targets: &[String], targets_file: Option<&Path>, explain: bool, notation: Notation) -> anyhow::Result<()> {
    let o = load_ontology(path)?;
    let mut wanted = Vec::new();
    for t in targets {
        wanted.push(Implication::parse(t).stage(Stage::ParseStage)?);
    }
    if let Some(f) = targets_file {
        wanted.extend(parse_implications(&read_text(f)?).stage(Stage::ParseStage)?);
    }
    if wanted.is_empty() {
        return fail(Stage::ParseStage, "no targets given");
    }
    let r = Reasoner::new(&o);
    let mut hits = 0;
    for imp in &wanted {
        let e = match imp {
            Implication::Inclusion(ax) => r.entails_inclusion(ax),
            other => r.entails_assertion(other).stage(Stage::ReasonStage)?,
        };
        hits += usize::from(e.entailed);
        println!("{}\t{}", if e.entailed { "entailed" } else { "not entailed" }, render_implication(imp, notation));
        if explain {
            print_steps(&e.steps);
        }
    }
    eprintln!("{hits}/{} entailed", wanted.len());
    Ok(())
}

pub fn chase(path: &Path, depth: usize) -> anyhow::Result<()> {
    let o = load_ontology(path)?;
    let c = Reasoner::new(&o).chase(depth);
    for f in &c.facts {
        println!("{f}");
    }
    eprintln!("{} facts, {} fresh individuals{}", c.facts.len(), c.fresh, if c.truncated { ", truncated at the depth bound" } else { "" });
    Ok(())
}

pub fn query(path: &Path, queries: &[String], depth: usize) -> anyhow::Result<()> {
    let o = load_ontology(path)?;
    if queries.is_empty() {
        return fail(Stage::ParseStage, "no queries given");
    }
    let r = Reasoner::new(&o);
    for text in queries {
        let q = Query::parse(text).stage(Stage::ParseStage)?;
        let answers = r.answer_query(&q, depth).stage(Stage::ReasonStage)?;
        println!("{q}");
        if answers.is_empty() {
            println!("  no answers");
        }
        for tuple in &answers {
            let names: Vec<&str> = tuple.iter().map(|n| n.as_str()).collect();
            println!("  ({})", names.join(", "));
        }
    }
    Ok(())
}
