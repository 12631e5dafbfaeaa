//! The pipeline commands: generate, prompt, complete, parse, score.

use std::collections::BTreeMap;
use std::io::BufReader;
use std::path::Path;

use anyhow::Context;
use dllite::dataset::{
    instance_item, probe_items, query_item, read_jsonl, satisfiability_items, subsumption_item, syntax_item, write_jsonl, ItemOptions,
    Task, TaskItem,
};
use dllite::parser::Vocabulary;
use dllite::prompt::{render_prompt, PromptRecord, PromptSpec};
use dllite::reasoner::Query;
use dllite_eval::pipeline::{digest, evaluate, rescore, Manifest, PipelineError};
use dllite_eval::verdict::KeywordRules;
use dllite_eval::{write_report, EvalRecord, Gateway};

use crate::config::RunConfig;
use crate::stage::{fail, Stage, StageExt};
use crate::tools::{load_ontology, read_text};

fn write_file(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn generate_one(
    task: Task,
    o: &dllite::model::Ontology,
    queries: &[Query],
    config: &RunConfig,
    opts: &ItemOptions,
) -> anyhow::Result<Vec<TaskItem>> {
    let item = match task {
        Task::Syntax => {
            let axioms: Vec<_> = o.tbox().iter().cloned().collect();
            let vocab = Vocabulary::from_signature(&o.signature());
            syntax_item(&axioms, config.corrupt_fraction, &vocab, opts)
        }
        Task::Subsumption => subsumption_item(o, opts),
        Task::Instance => instance_item(o, opts),
        Task::ProbeInverse | Task::ProbeFunctional => probe_items(o, task, opts),
        Task::Query => query_item(o, queries, config.chase_depth, opts),
        Task::Satisfiability => return satisfiability_items(o, opts).stage(Stage::ReasonStage),
    };
    Ok(vec![item.stage(Stage::ReasonStage)?])
}

/// Items from the prepared dataset, or generated from every input under
/// every seed.
pub fn load_items(config: &RunConfig) -> anyhow::Result<Vec<TaskItem>> {
    if let Some(path) = &config.dataset {
        let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display())).stage(Stage::ParseStage)?;
        let items = read_jsonl(BufReader::new(file)).stage(Stage::ParseStage)?;
        if let Some(other) = items.iter().find(|i| i.task != config.task) {
            return fail(
                Stage::ParseStage,
                format!("{} holds a {} item ({}) but the task is {}", path.display(), other.task, other.id, config.task),
            );
        }
        return Ok(items);
    }
    if config.inputs.is_empty() {
        return fail(Stage::ParseStage, "no inputs and no dataset configured");
    }
    let mut queries = Vec::new();
    for q in &config.queries {
        queries.push(Query::parse(q).stage(Stage::ParseStage)?);
    }
    if config.task == Task::Query && queries.is_empty() {
        return fail(Stage::ParseStage, "the query task needs at least one query");
    }
    let mut items = Vec::new();
    for path in &config.inputs {
        let o = load_ontology(path)?;
        let source = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        for &seed in &config.seeds {
            let mut opts = ItemOptions::new(&source, seed, config.size);
            opts.negatives = config.negatives;
            items.extend(generate_one(config.task, &o, &queries, config, &opts)?);
        }
    }
    Ok(items)
}

pub fn spec_for(config: &RunConfig, variant: dllite::prompt::Variant) -> PromptSpec {
    let mut spec = PromptSpec::new(config.task, variant);
    spec.chunk_count = config.chunk_count;
    spec.notation = config.notation;
    if let Some(r) = config.require_reasons {
        spec.require_reasons = r;
    }
    spec
}

pub fn render_all(config: &RunConfig, items: &[TaskItem]) -> anyhow::Result<Vec<PromptRecord>> {
    let mut records = Vec::new();
    for &variant in &config.variants {
        let spec = spec_for(config, variant);
        for item in items {
            let messages = render_prompt(&spec, item).with_context(|| format!("rendering {}", item.id))?;
            records.push(PromptRecord { item_id: item.id.clone(), spec, messages });
        }
    }
    Ok(records)
}

fn jsonl<T: serde::Serialize>(rows: &[T]) -> anyhow::Result<Vec<u8>> {
    let mut out = Vec::new();
    for r in rows {
        out.extend(serde_json::to_vec(r)?);
        out.push(b'\n');
    }
    Ok(out)
}

pub fn write_items(config: &RunConfig, items: &[TaskItem]) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    write_jsonl(items, &mut buf)?;
    write_file(&config.out_dir.join("items.jsonl"), &buf)
}

pub fn write_prompts(config: &RunConfig, prompts: &[PromptRecord]) -> anyhow::Result<()> {
    write_file(&config.out_dir.join("prompts.jsonl"), &jsonl(prompts)?)
}

pub fn manifest(config: &RunConfig, with_models: bool) -> anyhow::Result<Manifest> {
    let mut inputs = BTreeMap::new();
    for path in config.input_files(with_models) {
        let bytes = std::fs::read(&path).with_context(|| format!("reading {}", path.display())).stage(Stage::ParseStage)?;
        inputs.insert(path.to_string_lossy().into_owned(), digest(&bytes));
    }
    Ok(Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: serde_json::to_value(config)?,
        seeds: config.seeds.clone(),
        inputs,
    })
}

pub fn write_manifest(config: &RunConfig, with_models: bool) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(&manifest(config, with_models)?)?;
    text.push('\n');
    write_file(&config.out_dir.join("manifest.json"), text.as_bytes())
}

fn pipeline_error(e: PipelineError) -> anyhow::Error {
    let stage = match &e {
        PipelineError::Prompt { .. } => return anyhow::Error::new(e).context("rendering prompts"),
        PipelineError::Gateway { .. } => Stage::GatewayStage,
        PipelineError::Score { .. } => Stage::ScoreStage,
    };
    Err::<(), _>(e).stage(stage).unwrap_err()
}

fn summarize(records: &[EvalRecord]) {
    for r in records {
        let m = &r.metrics;
        println!(
            "{} {} {} {}: precision {:.3} recall {:.3} f1 {:.3} ({} statements, {} unknown)",
            r.dataset,
            r.model,
            r.variant,
            r.task,
            m.precision,
            m.recall,
            m.f1,
            r.n_items(),
            m.counts.unknown
        );
    }
}

pub fn gen_dataset(config: &RunConfig) -> anyhow::Result<()> {
    let items = load_items(config)?;
    write_items(config, &items)?;
    write_manifest(config, false)?;
    println!("{} items written to {}", items.len(), config.out_dir.join("items.jsonl").display());
    Ok(())
}

pub fn gen_prompts(config: &RunConfig) -> anyhow::Result<()> {
    let items = load_items(config)?;
    let prompts = render_all(config, &items)?;
    write_items(config, &items)?;
    write_prompts(config, &prompts)?;
    write_manifest(config, false)?;
    println!("{} prompts written to {}", prompts.len(), config.out_dir.join("prompts.jsonl").display());
    Ok(())
}

pub fn run_eval(config: &RunConfig) -> anyhow::Result<()> {
    std::fs::create_dir_all(&config.out_dir).with_context(|| format!("creating {}", config.out_dir.display()))?;
    let items = load_items(config)?;
    let prompts = render_all(config, &items)?;
    write_items(config, &items)?;
    write_prompts(config, &prompts)?;
    write_manifest(config, true)?;

    let dataset = config.dataset_name();
    let mut records = Vec::new();
    for model in &config.models {
        let gateway =
            Gateway::from_config(model.clone()).stage(Stage::GatewayStage)?.with_cache(config.cache_dir()).offline(config.offline);
        for &variant in &config.variants {
            let spec = spec_for(config, variant);
            records.push(evaluate(&dataset, &items, &spec, &gateway).map_err(pipeline_error)?);
        }
    }
    write_report(&records, &config.out_dir)?;
    summarize(&records);
    Ok(())
}

/// Re-parses the responses stored in a report, optionally under other
/// keyword rules, and writes the rescored report to `out`.
pub fn score(report: &Path, keywords: Option<&Path>, out: &Path) -> anyhow::Result<()> {
    let records: Vec<EvalRecord> =
        serde_json::from_str(&read_text(report)?).with_context(|| format!("parsing {}", report.display())).stage(Stage::ScoreStage)?;
    let rules = match keywords {
        Some(p) => KeywordRules::from_toml(&read_text(p)?).stage(Stage::ScoreStage)?,
        None => KeywordRules::builtin().clone(),
    };
    let mut rescored = Vec::new();
    for r in &records {
        rescored.push(rescore(r, &rules).map_err(pipeline_error)?);
    }
    write_report(&rescored, out)?;
    summarize(&rescored);
    Ok(())
}

/// Repeats the run a manifest describes against the cache, after checking
/// that its inputs are unchanged.
pub fn replay(manifest_path: &Path, out: Option<&Path>, online: bool) -> anyhow::Result<()> {
    let m: Manifest = serde_json::from_str(&read_text(manifest_path)?)
        .with_context(|| format!("parsing {}", manifest_path.display()))
        .stage(Stage::ParseStage)?;
    let mut config: RunConfig = serde_json::from_value(m.config.clone()).context("manifest config").stage(Stage::ParseStage)?;
    for (path, want) in &m.inputs {
        let bytes = std::fs::read(path).with_context(|| format!("reading {path}")).stage(Stage::ParseStage)?;
        if digest(&bytes) != *want {
            return fail(Stage::ParseStage, format!("{path} changed since the recorded run"));
        }
    }
    if let Some(out) = out {
        config.out_dir = out.to_path_buf();
        // the cache stays where the original run put it
        config.cache_dir = Some(serde_json::from_value::<RunConfig>(m.config)?.cache_dir());
    }
    config.offline = !online;
    run_eval(&config)
}
