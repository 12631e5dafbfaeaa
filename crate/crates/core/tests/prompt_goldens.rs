//! Rendered prompts against committed golden files.
//!
//! Set `UPDATE_GOLDENS=1` to rewrite the files after an intended change.

use std::collections::BTreeSet;
use std::path::PathBuf;

use dllite::dataset::{write_jsonl, Gold, Provenance, Question, Task, TaskItem};
use dllite::model::{Notation, Ontology};
use dllite::parser::parse_ontology_strict;
use dllite::prompt::{chunk_ontology, example_block, instruction_block, render_prompt, PromptError, PromptSpec, Variant};
use dllite::random::{random_ontology, RandomSpec};
use dllite::reasoner::{parse_implications, Query};
use dllite::rng::seeded;

fn ont(text: &str) -> Ontology {
    parse_ontology_strict(text, Notation::Unicode).unwrap()
}

fn item(task: Task, ontology: &str, statements: Vec<Question>) -> TaskItem {
    let gold = match task {
        Task::Query => statements.iter().map(|_| Gold::Answers(BTreeSet::new())).collect(),
        Task::Satisfiability => vec![Gold::Bool(false)],
        _ => statements.iter().map(|_| Gold::Bool(true)).collect(),
    };
    TaskItem {
        id: format!("{task}:golden:0"),
        task,
        ontology: ont(ontology),
        statements,
        gold,
        labels: Vec::new(),
        provenance: Provenance { generator: "golden".into(), ..Provenance::default() },
    }
}

fn implications(text: &str) -> Vec<Question> {
    parse_implications(text).unwrap().into_iter().map(Question::Implication).collect()
}

fn fixture(task: Task) -> TaskItem {
    match task {
        Task::Syntax => item(
            task,
            "",
            ["MaterialEntity ⊑ ¬PhysicalObject", "∃hasPerformer¬ ⊑ MusicalExpression", "Investigation ⊑ ∃hasPart", "Protocol ⊑ ¬Investigation¬"]
                .iter()
                .map(|s| Question::Text(s.to_string()))
                .collect(),
        ),
        Task::Subsumption => item(
            task,
            "Ability ⊑ ¬Disability\nAbility ⊑ ¬Device\nAbility ⊑ ∃isAssistedBy\nAmputation ⊑ PhysicalDisability\nPhysicalDisability ⊑ Disability",
            implications("Amputation ⊑ Disability\nAbility ⊑ ¬Amputation\nDisability ⊑ Amputation"),
        ),
        Task::Instance => item(
            task,
            "AssistantProfessor ⊑ Man\nSportsFan ⊑ SportsLover\nAssistantProfessor(AssistantProfessor0)\nSportsFan(AssistantProfessor0)",
            implications("Man(AssistantProfessor0)\nSportsLover(AssistantProfessor0)"),
        ),
        Task::ProbeInverse => item(
            task,
            "WorksIn⁻ ⊑ Employs\nEmploys ⊑ WorksIn⁻\nWorksIn(John, Google)",
            implications("Employs(Google, John)"),
        ),
        Task::ProbeFunctional => item(
            task,
            "(funct WorksIn)\nWorksIn(John, Google)\nWorksIn(John, x1)",
            implications("x1 ≡ Google"),
        ),
        Task::Query => item(
            task,
            "PhDStudent ⊑ Student\nStudent ⊑ ¬∃hasStaffID\n∃hasStaffID⁻ ⊑ ID\nStudent ⊑ ¬ID\nPhDStudent(John)\nStudent(Mary)",
            vec![Question::Query(Query::parse("Q1(x) <- Student(x)").unwrap())],
        ),
        Task::Satisfiability => item(
            task,
            "MasterStudent ⊑ Student\nMasterStudent ⊑ Employee\nStudent ⊑ ¬Employee\nMasterStudent(John)",
            Vec::new(),
        ),
    }
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/prompts")
}

fn joined(messages: &[String]) -> String {
    if messages.len() == 1 {
        return messages[0].clone();
    }
    messages.iter().enumerate().map(|(i, m)| format!("===== message {} =====\n{m}", i + 1)).collect()
}

fn check_golden(name: &str, actual: &str) {
    check_golden_file(&format!("{name}.txt"), actual)
}

fn check_golden_file(file: &str, actual: &str) {
    let name = file;
    let path = golden_dir().join(file);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from its golden file\n--- expected\n{expected}\n--- actual\n{actual}");
}

/// The fixtures as data, for suites outside this crate.
#[test]
fn fixture_items_file_matches_builders() {
    let mut buf = Vec::new();
    write_jsonl(&Task::ALL.map(fixture), &mut buf).unwrap();
    check_golden_file("fixtures.jsonl", &String::from_utf8(buf).unwrap());
}

#[test]
fn every_task_and_variant_matches_its_golden() {
    for task in Task::ALL {
        for variant in Variant::ALL {
            let spec = PromptSpec::new(task, variant);
            let out = render_prompt(&spec, &fixture(task)).unwrap();
            assert_eq!(out.len(), 1);
            check_golden(&format!("{task}_{variant}"), &out[0]);
            assert_eq!(out, render_prompt(&spec, &fixture(task)).unwrap());
        }
    }
}

#[test]
fn chunked_and_ascii_goldens() {
    let mut spec = PromptSpec::new(Task::Query, Variant::Ni);
    spec.chunk_count = 2;
    check_golden("query_NI_chunks2", &joined(&render_prompt(&spec, &fixture(Task::Query)).unwrap()));
    let mut spec = PromptSpec::new(Task::Subsumption, Variant::Wie);
    spec.notation = Notation::Ascii;
    let out = render_prompt(&spec, &fixture(Task::Subsumption)).unwrap();
    assert!(out[0].is_ascii());
    check_golden("subsumption_WIE_ascii", &out[0]);
}

fn render_one(task: Task, variant: Variant) -> String {
    render_prompt(&PromptSpec::new(task, variant), &fixture(task)).unwrap().remove(0)
}

#[test]
fn anchor_phrases() {
    assert!(render_one(Task::Syntax, Variant::Ni).contains("determine whether the syntax of each of these axioms is correct"));
    assert!(render_one(Task::Subsumption, Variant::Wi).contains("α=C₁⊑C₂, β=C₂⊑C₃ → β_new=C₁⊑C₃"));
    assert!(render_one(Task::Instance, Variant::Wie).contains("If Human ⊑ Animal and Human(John), then Animal(John)"));
    for task in [Task::ProbeInverse, Task::ProbeFunctional] {
        assert!(render_one(task, Variant::Ni).contains("deduced from the given ontology. Give reasons or inferring process.\n"));
    }
    assert!(!render_one(Task::Satisfiability, Variant::Ni).contains("Give reasons"));
    let mut spec = PromptSpec::new(Task::Satisfiability, Variant::Ni);
    spec.require_reasons = true;
    assert!(render_prompt(&spec, &fixture(Task::Satisfiability)).unwrap()[0].contains("Give reasons or inferring process."));
    for task in Task::ALL {
        for variant in Variant::ALL {
            let p = render_one(task, variant);
            assert!(p.starts_with("Task Description:\n") && p.ends_with("Answer:\n"), "{task} {variant}");
            assert!(!p.contains("{{"), "{task} {variant}");
        }
    }
}

#[test]
fn query_split_into_ten_messages() {
    let abox: String = (0..10).map(|i| format!("Student(S{i})\n")).collect();
    let it =
        item(Task::Query, &format!("PhDStudent ⊑ Student\n{abox}"), vec![Question::Query(Query::parse("Q1(x) <- Student(x)").unwrap())]);
    let mut spec = PromptSpec::new(Task::Query, Variant::Ni);
    spec.chunk_count = 10;
    let out = render_prompt(&spec, &it).unwrap();
    assert_eq!(out.len(), 10);
    assert!(out[0].contains("it will be entered in several times"));
    assert!(out[1..].iter().all(|m| !m.contains("it will be entered in several times")));
    assert!(out[0].contains("PhDStudent ⊑ Student"));
    assert!(out[9].ends_with("Answer:\n") && out[9].contains("1. Q1(x) ← Student(x)"));
    assert!(out[..9].iter().all(|m| !m.contains("Answer:") && !m.contains("Q1(x)")));
    for i in 0..10 {
        assert_eq!(out.iter().filter(|m| m.contains(&format!("Student(S{i})\n"))).count(), 1);
    }
    assert!(!render_one(Task::Query, Variant::Ni).contains("several times"));
}

#[test]
fn wie_contains_the_wi_instruction_block() {
    for task in Task::ALL {
        let wi = render_one(task, Variant::Wi);
        let wie = render_one(task, Variant::Wie);
        let block = instruction_block(task);
        assert!(wi.contains(&block) && wie.contains(&block), "{task}");
        assert!(wie.contains(&example_block(task)) && !wi.contains(&example_block(task)), "{task}");
        assert!(wie.len() > wi.len());
        let ni = render_one(task, Variant::Ni);
        assert!(!ni.contains(&block));
    }
}

#[test]
fn statements_are_numbered_once_in_order() {
    for task in Task::ALL {
        let it = fixture(task);
        for variant in Variant::ALL {
            let p = render_one(task, variant);
            let mut last = 0;
            for (i, q) in it.statements.iter().enumerate() {
                let line = format!("\n{}. {q}\n", i + 1);
                assert_eq!(p.matches(&line).count(), 1, "{task} {variant}: {line:?}");
                let at = p.find(&line).unwrap();
                assert!(at > last);
                last = at;
            }
            assert!(!p.contains(&format!("\n{}. ", it.statements.len() + 1)));
        }
    }
}

#[test]
fn mismatched_or_degenerate_specs_are_rejected() {
    let spec = PromptSpec::new(Task::Instance, Variant::Wi);
    assert_eq!(
        render_prompt(&spec, &fixture(Task::Subsumption)),
        Err(PromptError::TaskVariantMismatch { spec: Task::Instance, item: Task::Subsumption })
    );
    let mut spec = PromptSpec::new(Task::Instance, Variant::Wi);
    spec.chunk_count = 0;
    assert_eq!(render_prompt(&spec, &fixture(Task::Instance)), Err(PromptError::ZeroChunks));
    let mut spec = PromptSpec::new(Task::Syntax, Variant::Ni);
    spec.chunk_count = 3;
    assert_eq!(render_prompt(&spec, &fixture(Task::Syntax)), Err(PromptError::ChunkingUnsupported(Task::Syntax)));
}

#[test]
fn chunking_partitions_the_abox() {
    let o = fixture(Task::Query).ontology;
    assert_eq!(chunk_ontology(&o, 1), vec![o.clone()]);

    let ten = ont(&(0..10).map(|i| format!("A(a{i})\n")).collect::<String>());
    let parts = chunk_ontology(&ten, 10);
    assert!(parts.iter().all(|p| p.abox().len() == 1 && p.tbox().is_empty()));

    let spec = RandomSpec { max_assertions: 23, ..RandomSpec::default() };
    for seed in 0..200u64 {
        let o = random_ontology(&spec, &mut seeded(seed, "chunk-test"));
        let k = 1 + (seed as usize % 7);
        let parts = chunk_ontology(&o, k);
        assert_eq!(parts.len(), k);
        assert!(parts[1..].iter().all(|p| p.tbox().is_empty()));
        assert_eq!(parts[0].tbox(), o.tbox());
        let sizes: Vec<usize> = parts.iter().map(|p| p.abox().len()).collect();
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1, "{sizes:?}");
        // independent union check
        let union: BTreeSet<_> = parts.iter().flat_map(|p| p.abox().iter().cloned()).collect();
        assert_eq!(&union, o.abox());
        assert_eq!(sizes.iter().sum::<usize>(), o.abox().len());
    }
}
