//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use dllite::dataset::{build_functional_probe, build_inverse_probe};
use dllite::dataset::{consistent_counterpart, extract_mis, is_minimal, MisResult};
use dllite::dataset::{probe_items, read_jsonl, Gold, ItemOptions, Provenance, Question, Task, TaskItem};
use dllite::model::{name, Axiom, Notation, Ontology};
use dllite::oracle::agreement::{audit_case, check_ontology, Agreement};
use dllite::oracle::{find_model, oracle_entails, MAX_DOMAIN};
use dllite::parser::{
    applicable_classes, corrupt_with, parse_axiom, parse_line, parse_line_with, parse_ontology_strict, serialize, ErrorClass, Vocabulary,
};
use dllite::prompt::{chunk_ontology, render_prompt, PromptRecord, PromptSpec, Variant};
use dllite::random::{random_axiom, random_ontology, RandomSpec};
use dllite::reasoner::{parse_implications, Implication, Query, ReasonError, Reasoner};
use dllite::rng::seeded;
use dllite_eval::gateway::{prompt_hash, CacheStore, Exchange};
use dllite_eval::metrics::{score_binary, Counts};
use dllite_eval::verdict::Verdict;
use dllite_eval::EvalRecord;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn core_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests")
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn ont(text: &str) -> Result<Ontology, String> {
    parse_ontology_strict(text, Notation::Unicode).map_err(|e| e.to_string())
}

fn dl_files(dir: &Path) -> Result<Vec<(String, Ontology)>, String> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| e.to_string())? {
        let p = entry.map_err(|e| e.to_string())?.path();
        if p.extension().is_some_and(|x| x == "dl") {
            out.push((p.file_stem().unwrap().to_string_lossy().into_owned(), ont(&read(&p)?)?));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:.2?}, limit {limit:?}");
    Ok(took)
}

fn golden_closures() -> Outcome {
    let start = Instant::now();
    let dir = core_dir().join("fixtures/cases");
    let mut sizes = Vec::new();
    let mut checked = 0;
    for n in 1..=5 {
        let o = ont(&read(&dir.join(format!("case{n}.dl")))?)?;
        let listed = parse_implications(&read(&dir.join(format!("case{n}.gold")))?).map_err(|e| e.to_string())?;
        let audit = audit_case(&o, &listed).map_err(|e| e.to_string())?;
        ensure!(audit.missing.is_empty(), "case {n} misses {:?}", audit.missing);
        ensure!(audit.false_extras.is_empty(), "case {n} entails refuted {:?}", audit.false_extras);
        sizes.push(listed.len());
        checked += audit.checked;
    }
    ensure!(sizes == [8, 11, 16, 5, 16], "listed sizes {sizes:?}");
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("sizes {sizes:?} all entailed, {checked} entailed candidates none refuted, {took:.2?}"))
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let spec = RandomSpec::default();
    let mut total = Agreement::default();
    for seed in 0..1000 {
        let o = random_ontology(&spec, &mut seeded(seed, "agreement"));
        total.absorb(check_ontology(&o, seed < 200).map_err(|e| format!("seed {seed}: {e}"))?);
    }
    ensure!(total.unsound.is_empty(), "{} unsound, first {}", total.unsound.len(), total.unsound[0]);
    ensure!(total.sat_disagreements.is_empty(), "sat disagreements {:?}", total.sat_disagreements);
    ensure!(total.raw_disagreements.is_empty(), "raw disagreements {:?}", total.raw_disagreements);
    let took = within(start, Duration::from_secs(120))?;
    Ok(format!(
        "1000 ontologies, {} statements, 0 violations ({} unrefuted non-entailments reported), {took:.2?}",
        total.checked,
        total.gaps.len()
    ))
}

fn parser_round_trip() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for seed in 0..10_000u64 {
        let spec = RandomSpec { conjunctions: seed % 2 == 0, ..RandomSpec::default() };
        let ax = random_axiom(&spec, &mut seeded(seed, "round-trip"));
        for notation in [Notation::Unicode, Notation::Ascii] {
            let text = serialize(&ax, notation);
            let back = parse_axiom(&text, notation).map_err(|e| format!("{text:?}: {e}"))?;
            ensure!(back == ax, "{text:?} parsed as {back:?}, expected {ax:?}");
            n += 1;
        }
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("{n} round trips exact, {took:.2?}"))
}

fn corruption_validity() -> Outcome {
    let mut axioms: Vec<Axiom> = Vec::new();
    for dir in ["fixtures/cases", "fixtures/inconsistent"] {
        for (_, o) in dl_files(&core_dir().join(dir))? {
            axioms.extend(o.tbox().iter().cloned());
        }
    }
    for item in golden_items()? {
        axioms.extend(item.ontology.tbox().iter().cloned());
    }
    axioms.extend(ont(&read(&fixture_dir().join("axiom_shapes.dl"))?)?.tbox().iter().cloned());
    for seed in 0..2000u64 {
        let spec = RandomSpec { conjunctions: seed % 2 == 0, ..RandomSpec::default() };
        axioms.push(random_axiom(&spec, &mut seeded(seed, "corruption")));
    }
    let mut tried = 0;
    let mut classes = BTreeSet::new();
    for ax in &axioms {
        let mut sig = dllite::model::Signature::default();
        sig.add_axiom(ax);
        let vocab = Vocabulary::from_signature(&sig);
        for class in applicable_classes(ax, &vocab) {
            for seed in 0..3 {
                let c = corrupt_with(ax, Some(class), seed, Notation::Unicode, &vocab).map_err(|e| e.to_string())?;
                tried += 1;
                classes.insert(class);
                match parse_line_with(&c.text, Notation::Unicode, &vocab) {
                    Ok(_) => return Err(format!("{ax} / {class}: {:?} parsed", c.text)),
                    // docs/syntax-errors.md lists no confusable pairs
                    Err(e) => {
                        ensure!(e.class == class, "{ax} / {class}: {:?} classified as {}", c.text, e.class);
                    }
                }
            }
        }
    }
    ensure!(classes.len() == ErrorClass::TAXONOMY.len(), "only {} classes had a site", classes.len());
    Ok(format!("{} axioms, {tried} corruptions over {} classes all rejected as the applied class", axioms.len(), classes.len()))
}

fn without(mis: &MisResult, skip: usize) -> Ontology {
    MisResult {
        subset: mis.subset.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, s)| s.clone()).collect(),
        parent: mis.parent.clone(),
    }
    .to_ontology()
}

fn mis_properties() -> Outcome {
    let sat = |o: &Ontology| Reasoner::new(o).is_satisfiable().map_err(|e| e.to_string());
    let (mut cases, mut oracle_checked) = (0, 0);
    for (label, o) in dl_files(&core_dir().join("fixtures/inconsistent"))? {
        for seed in 0..6 {
            let mis = extract_mis(&o, &label, seed).map_err(|e| format!("{label}/{seed}: {e}"))?;
            cases += 1;
            let whole = mis.to_ontology();
            ensure!(!sat(&whole)?, "{label}/{seed}: subset is satisfiable");
            ensure!(is_minimal(&mis).map_err(|e| e.to_string())?, "{label}/{seed}: not minimal");
            if let Ok(model) = find_model(&whole, MAX_DOMAIN) {
                ensure!(model.is_none(), "{label}/{seed}: oracle found a model of the subset");
                oracle_checked += 1;
            }
            for skip in 0..mis.subset.len() {
                ensure!(sat(&without(&mis, skip))?, "{label}/{seed}: removing {skip} leaves it unsatisfiable");
            }
            let counterpart = consistent_counterpart(&mis, seed).map_err(|e| e.to_string())?;
            ensure!(sat(&counterpart)?, "{label}/{seed}: counterpart unsatisfiable");
        }
    }
    ensure!(cases >= 20, "only {cases} cases");
    Ok(format!("{cases} subsets minimal and unsatisfiable, counterparts satisfiable ({oracle_checked} also refuted by the oracle)"))
}

/// Reasoner route, falling back to the functionality-free sub-ontology
/// where the dialect check refuses the mix. Returns whether the oracle
/// could cross-check it within its domain bound.
fn verified(o: &Ontology, imp: &Implication) -> Result<bool, String> {
    let r = match Reasoner::new(o).entails_assertion(imp) {
        Err(ReasonError::DialectRejected { .. }) => {
            let tbox: Vec<Axiom> = o.tbox().iter().filter(|a| !matches!(a, Axiom::Funct(_))).cloned().collect();
            Reasoner::new(&Ontology::new(tbox, o.abox().iter().cloned())).entails_assertion(imp)
        }
        other => other,
    };
    ensure!(r.map_err(|e| e.to_string())?.entailed, "{imp} not entailed");
    match oracle_entails(o, imp, MAX_DOMAIN) {
        Ok(v) => {
            ensure!(!v.is_refuted(), "{imp} refuted by the oracle");
            Ok(true)
        }
        Err(_) => Ok(false),
    }
}

fn probe_fidelity() -> Outcome {
    let (_, inv) = build_inverse_probe(&ont("WorksIn(John, Google)")?, &name("WorksIn"), &name("Employs"), 0).map_err(|e| e.to_string())?;
    ensure!(inv.to_string() == "Employs(Google, John)", "inverse probe gave {inv}");
    let o = ont("(funct WorksAt)\nWorksAt(DrBrown, RegionalHospital)\nWorksAt(Anna, x1)\nHospital(x2)")?;
    let (_, eq) = build_functional_probe(&o, &name("WorksAt"), false, 0).map_err(|e| e.to_string())?;
    ensure!(eq.to_string() == "x3 ≡ RegionalHospital", "functional probe gave {eq}");

    let sources = [
        (Task::ProbeInverse, "Person ⊑ ∃WorksIn\nWorksIn(John, Google)\nWorksIn(Ann, Google)\nHasParent(Ann, John)", 3),
        (Task::ProbeFunctional, "(funct WorksAt)\n(funct HasHead⁻)\nWorksAt(DrBrown, Clinic)\nHasHead(Clinic, DrBrown)", 1),
    ];
    let (mut probes, mut cross_checked) = (0, 0);
    for (task, text, size) in sources {
        let o = ont(text)?;
        for seed in 0..6 {
            let item = probe_items(&o, task, &ItemOptions::new("accept", seed, size)).map_err(|e| e.to_string())?;
            for q in &item.statements {
                let Question::Implication(imp) = q else { return Err(format!("unexpected statement {q}")) };
                cross_checked += usize::from(verified(&item.ontology, imp)?);
                probes += 1;
            }
        }
    }
    ensure!(probes > 0, "no probes generated");
    Ok(format!("worked examples reproduced, {probes} generated probes entailed ({cross_checked} also unrefuted by the oracle)"))
}

fn query_sanity() -> Outcome {
    let o = ont(&read(&fixture_dir().join("phd_student.dl"))?)?;
    let q = Query::parse("Q1(x) <- Student(x)").map_err(|e| e.to_string())?;
    let answers = Reasoner::new(&o).answer_query(&q, 3).map_err(|e| e.to_string())?;
    ensure!(answers == BTreeSet::from([vec![name("John")]]), "answers {answers:?}");

    let mut big = o.clone();
    for i in 0..47 {
        big.insert_assertion(dllite::model::Assertion::concept(if i % 3 == 0 { "PhDStudent" } else { "Course" }, &format!("I{i}")));
    }
    let parts = chunk_ontology(&big, 10);
    ensure!(parts.len() == 10, "{} parts", parts.len());
    let mut tbox = BTreeSet::new();
    let mut abox = BTreeSet::new();
    let mut total = 0;
    for p in &parts {
        tbox.extend(p.tbox().iter().cloned());
        abox.extend(p.abox().iter().cloned());
        total += p.abox().len();
    }
    ensure!(tbox == *big.tbox() && abox == *big.abox(), "parts do not reassemble the ontology");
    ensure!(total == big.abox().len(), "parts overlap");
    let item = TaskItem {
        id: "query:phd:0".into(),
        task: Task::Query,
        ontology: big,
        statements: vec![Question::Query(q)],
        gold: vec![Gold::Answers(answers)],
        labels: Vec::new(),
        provenance: Provenance::default(),
    };
    let mut spec = PromptSpec::new(Task::Query, Variant::Ni);
    spec.chunk_count = 10;
    let messages = render_prompt(&spec, &item).map_err(|e| e.to_string())?;
    ensure!(messages.len() == 10, "{} messages", messages.len());
    Ok("Q1 answers exactly {John}; 10 parts reassemble a 52-statement ontology, rendered as 10 messages".into())
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dllite")).args(args).output().map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "dllite {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn mocked_end_to_end() -> Outcome {
    let start = Instant::now();
    let m = score_binary(&[Verdict::True, Verdict::True, Verdict::False, Verdict::False], &[true, false, true, false])
        .map_err(|e| e.to_string())?;
    ensure!((m.precision, m.recall, m.f1) == (0.5, 0.5, 0.5), "toy example gave {m:?}");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let dataset = fixture_dir().join("syntax30.jsonl");
    let items =
        read_jsonl(std::io::BufReader::new(std::fs::File::open(&dataset).map_err(|e| e.to_string())?)).map_err(|e| e.to_string())?;
    for item in &items {
        for (q, g) in item.statements.iter().zip(item.gold_bools()) {
            ensure!(parse_line(&q.to_string(), Notation::Unicode).is_ok() == g, "gold label of {q} disagrees with the parser");
        }
    }
    let config = serde_json::json!({
        "task": "syntax",
        "dataset": dataset,
        "variants": ["NI"],
        "models": [{ "model": "fixture-model", "backend": "mock" }],
        "out_dir": d.join("run1"),
        "cache_dir": d.join("cache"),
        "offline": true,
    });
    let cfg = d.join("run.json");
    std::fs::write(&cfg, config.to_string()).map_err(|e| e.to_string())?;
    let cfg = cfg.to_str().unwrap();
    run_cli(&["gen-prompts", "--config", cfg, "--out", d.join("prompts").to_str().unwrap()])?;

    // Answers: of the 15 well-formed statements 10 are called correct, 3
    // incorrect, 2 hedged; of the 15 malformed ones 4 correct, 9 incorrect,
    // 2 hedged.
    let prompts: Vec<PromptRecord> = read(&d.join("prompts/prompts.jsonl"))?
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure!(prompts.len() == 3, "{} prompts", prompts.len());
    let cache = CacheStore::new(d.join("cache"));
    let (mut t, mut f) = (0, 0);
    for (record, item) in prompts.iter().zip(&items) {
        ensure!(record.item_id == item.id, "prompt order");
        let mut response = String::from("Here is my assessment.\n\n");
        for (i, g) in item.gold_bools().into_iter().enumerate() {
            let k = if g {
                t += 1;
                t
            } else {
                f += 1;
                f
            };
            let (correct_upto, incorrect_upto) = if g { (10, 13) } else { (4, 13) };
            let line = if k <= correct_upto {
                "The axiom is syntactically correct."
            } else if k <= incorrect_upto {
                "This axiom is incorrect."
            } else {
                "It might be correct, but I am not sure."
            };
            response.push_str(&format!("{}. {line}\n", i + 1));
        }
        let ex = Exchange {
            hash: prompt_hash("fixture-model", 0.0, &record.messages),
            model: "fixture-model".into(),
            temperature: 0.0,
            messages: record.messages.clone(),
            response,
            timestamp: 0,
            latency_ms: 0,
            prompt_tokens: None,
            completion_tokens: None,
        };
        cache.put(&ex).map_err(|e| e.to_string())?;
    }

    run_cli(&["run-eval", "--config", cfg])?;
    let records: Vec<EvalRecord> = serde_json::from_str(&read(&d.join("run1/report.json"))?).map_err(|e| e.to_string())?;
    ensure!(records.len() == 1 && records[0].n_items() == 30, "report shape");
    let r = &records[0];
    ensure!(r.metrics.counts == Counts { tp: 10, fp: 6, tn: 9, fn_: 5, unknown: 4 }, "counts {:?}", r.metrics.counts);
    // tp / (tp + fp) = 10/16, tp / (tp + fn) = 10/15, F1 = 2·10 / (16 + 15)
    ensure!(r.metrics.precision == 0.625, "precision {}", r.metrics.precision);
    ensure!(r.metrics.recall == 10.0 / 15.0, "recall {}", r.metrics.recall);
    ensure!((r.metrics.f1 - 20.0 / 31.0).abs() < 1e-12, "f1 {}", r.metrics.f1);
    let ex = &r.metrics_excluding_unknown;
    ensure!(ex.precision == 10.0 / 14.0 && ex.recall == 10.0 / 13.0, "excluding unknowns {ex:?}");

    let files = ["report.json", "metrics.csv", "transcripts.jsonl", "items.jsonl", "prompts.jsonl"];
    let snapshot = |run: &str| -> Result<Vec<Vec<u8>>, String> {
        files.iter().map(|f| std::fs::read(d.join(run).join(f)).map_err(|e| e.to_string())).collect()
    };
    let first = snapshot("run1")?;
    let manifest = std::fs::read(d.join("run1/manifest.json")).map_err(|e| e.to_string())?;
    run_cli(&["run-eval", "--config", cfg])?;
    ensure!(snapshot("run1")? == first, "rerun changed the artifacts");
    ensure!(std::fs::read(d.join("run1/manifest.json")).map_err(|e| e.to_string())? == manifest, "rerun changed the manifest");
    run_cli(&["run-eval", "--config", cfg, "--out", d.join("run2").to_str().unwrap()])?;
    ensure!(snapshot("run2")? == first, "run into a second directory differs");
    run_cli(&["replay", d.join("run1/manifest.json").to_str().unwrap(), "--out", d.join("run3").to_str().unwrap()])?;
    ensure!(snapshot("run3")? == first, "replay differs");
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("30 statements: P 10/16, R 10/15, F1 20/31; reruns and replay byte-identical, {took:.2?}"))
}

fn golden_items() -> Result<Vec<TaskItem>, String> {
    let path = core_dir().join("golden/prompts/fixtures.jsonl");
    read_jsonl(std::io::BufReader::new(std::fs::File::open(&path).map_err(|e| e.to_string())?)).map_err(|e| e.to_string())
}

fn prompt_goldens() -> Outcome {
    let dir = core_dir().join("golden/prompts");
    let items = golden_items()?;
    let mut compared = 0;
    let mut check = |file: String, actual: String| -> Result<(), String> {
        let expected = read(&dir.join(&file))?;
        ensure!(expected == actual, "{file} differs from the rendering");
        compared += 1;
        Ok(())
    };
    for item in &items {
        for variant in Variant::ALL {
            let out = render_prompt(&PromptSpec::new(item.task, variant), item).map_err(|e| e.to_string())?;
            check(format!("{}_{variant}.txt", item.task), out.concat())?;
        }
    }
    let by_task = |t: Task| items.iter().find(|i| i.task == t).ok_or(format!("no {t} fixture"));
    let mut spec = PromptSpec::new(Task::Query, Variant::Ni);
    spec.chunk_count = 2;
    let joined: String = render_prompt(&spec, by_task(Task::Query)?)
        .map_err(|e| e.to_string())?
        .iter()
        .enumerate()
        .map(|(i, m)| format!("===== message {} =====\n{m}", i + 1))
        .collect();
    check("query_NI_chunks2.txt".into(), joined)?;
    let mut spec = PromptSpec::new(Task::Subsumption, Variant::Wie);
    spec.notation = Notation::Ascii;
    check("subsumption_WIE_ascii.txt".into(), render_prompt(&spec, by_task(Task::Subsumption)?).map_err(|e| e.to_string())?.concat())?;
    ensure!(items.len() == Task::ALL.len(), "{} fixture items", items.len());

    for v in Variant::ALL {
        let syntax = read(&dir.join(format!("syntax_{v}.txt")))?;
        ensure!(syntax.contains("determine whether the syntax of each of these axioms is correct"), "syntax_{v} anchor");
        for t in [Task::ProbeInverse, Task::ProbeFunctional] {
            ensure!(read(&dir.join(format!("{t}_{v}.txt")))?.contains("Give reasons or inferring process."), "{t}_{v} anchor");
        }
    }
    Ok(format!("{compared} golden files byte-exact, anchor phrases present"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden closures", golden_closures),
        ("oracle agreement", oracle_agreement),
        ("parser round-trip", parser_round_trip),
        ("corruption validity", corruption_validity),
        ("MIS properties", mis_properties),
        ("probe fidelity", probe_fidelity),
        ("query sanity", query_sanity),
        ("mocked end-to-end", mocked_end_to_end),
        ("prompt goldens", prompt_goldens),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {label}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {label}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
