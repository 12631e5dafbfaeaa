use std::path::{Path, PathBuf};

use anyhow::Context;
use dllite::dataset::Task;
use dllite::model::Notation;
use dllite::prompt::Variant;
use dllite_eval::ModelConfig;
use serde::{Deserialize, Serialize};

/// Everything a pipeline run needs. Read from a JSON file; command-line
/// flags override individual fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub task: Task,
    /// Ontology files items are generated from.
    pub inputs: Vec<PathBuf>,
    /// A prepared JSONL dataset, used instead of generating from `inputs`.
    pub dataset: Option<PathBuf>,
    /// Name used in reports; defaults to the input file stems.
    pub dataset_name: Option<String>,
    pub variants: Vec<Variant>,
    pub models: Vec<ModelConfig>,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
    /// Defaults to `<out_dir>/cache`.
    pub cache_dir: Option<PathBuf>,
    pub chunk_count: usize,
    pub chase_depth: usize,
    pub offline: bool,
    /// Statements per generated item.
    pub size: usize,
    pub negatives: usize,
    /// Share of syntax statements that get corrupted.
    pub corrupt_fraction: f64,
    /// Conjunctive queries for the query task, `Q1(x) <- Student(x)`.
    pub queries: Vec<String>,
    /// Defaults to on for the probe tasks, off otherwise.
    pub require_reasons: Option<bool>,
    pub notation: Notation,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            task: Task::Syntax,
            inputs: Vec::new(),
            dataset: None,
            dataset_name: None,
            variants: Variant::ALL.to_vec(),
            models: vec![ModelConfig::default()],
            seeds: vec![0],
            out_dir: PathBuf::from("out"),
            cache_dir: None,
            chunk_count: 1,
            chase_depth: 3,
            offline: false,
            size: 10,
            negatives: 0,
            corrupt_fraction: 0.5,
            queries: Vec::new(),
            require_reasons: None,
            notation: Notation::Unicode,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<RunConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing run config {}", path.display()))
    }

    pub fn cache_dir(&self) -> PathBuf {
        self.cache_dir.clone().unwrap_or_else(|| self.out_dir.join("cache"))
    }

    pub fn dataset_name(&self) -> String {
        if let Some(n) = &self.dataset_name {
            return n.clone();
        }
        let stem = |p: &PathBuf| p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        match &self.dataset {
            Some(d) => stem(d),
            None => self.inputs.iter().map(stem).collect::<Vec<_>>().join("+"),
        }
    }

    /// Files whose bytes the run depends on, for the manifest. Model
    /// fixture files count only for runs that talk to a model.
    pub fn input_files(&self, with_models: bool) -> Vec<PathBuf> {
        let mut files = self.inputs.clone();
        files.extend(self.dataset.clone());
        if with_models {
            files.extend(self.models.iter().filter_map(|m| m.mock_fixtures.clone()));
        }
        files
    }
}
