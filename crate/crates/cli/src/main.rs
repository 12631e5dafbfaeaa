mod config;
mod run;
mod stage;
mod tools;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dllite::dataset::Task;
use dllite::model::Notation;
use dllite::parser::ErrorClass;
use dllite::prompt::Variant;

use config::RunConfig;
use stage::StageError;

#[derive(Parser)]
#[command(name = "dllite", version, about = "DL-Lite reasoning toolkit and LLM evaluation pipeline")]
struct Cli {
    /// Print formulas with ASCII symbols.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every line of a file that is not a well-formed axiom or assertion.
    CheckSyntax { file: PathBuf },
    /// Break each TBox axiom of an ontology with a syntax error.
    Corrupt {
        file: PathBuf,
        /// Error class to apply; a random applicable one by default.
        #[arg(long)]
        class: Option<ErrorClass>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the TBox implications of an ontology.
    Closure {
        file: PathBuf,
        #[arg(long)]
        explain: bool,
    },
    /// Decide satisfiability and show the violation if there is one.
    Sat { file: PathBuf },
    /// Check implications against an ontology.
    Entail {
        file: PathBuf,
        /// Implications such as `A ⊑ B`, `A(john)` or `R(john, _)`.
        targets: Vec<String>,
        /// File with one implication per line.
        #[arg(long)]
        targets_file: Option<PathBuf>,
        #[arg(long)]
        explain: bool,
    },
    /// Chase the ABox to a bounded depth.
    Chase {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Answer conjunctive queries such as `Q1(x) <- Student(x)`.
    Query {
        file: PathBuf,
        #[arg(long = "query", short, required = true)]
        queries: Vec<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Generate task items and write items.jsonl.
    GenDataset(RunArgs),
    /// Generate items and render their prompts into prompts.jsonl.
    GenPrompts(RunArgs),
    /// Run the whole pipeline and write the report.
    RunEval(RunArgs),
    /// Re-parse and rescore the responses stored in a report.
    Score {
        /// report.json from an earlier run.
        report: PathBuf,
        /// Keyword rules in TOML, replacing the built-in ones.
        #[arg(long)]
        keywords: Option<PathBuf>,
        /// Output directory; the report's own directory by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeat a recorded run from its manifest, served from the cache.
    Replay {
        /// manifest.json of the recorded run.
        manifest: PathBuf,
        /// Output directory; the cache stays the recorded one.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow calls to the model for prompts missing from the cache.
        #[arg(long)]
        online: bool,
    },
}

/// Run configuration flags; each one overrides the config file.
#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// syntax, subsumption, instance, probe_inverse, probe_functional, query or satisfiability.
    #[arg(long)]
    task: Option<Task>,
    /// Ontology files to generate items from.
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Prepared dataset (JSONL) to use instead of generating.
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Generation seed; repeat for several.
    #[arg(long = "seed")]
    seeds: Vec<u64>,
    /// Answer only from the cache; a missing entry fails the run.
    #[arg(long)]
    offline: bool,
    /// Split each ontology over this many messages.
    #[arg(long)]
    chunks: Option<usize>,
    /// Chase depth for query answering.
    #[arg(long)]
    depth: Option<usize>,
    /// ni, wi or wie; repeat or separate with commas.
    #[arg(long = "variant", value_delimiter = ',')]
    variants: Vec<Variant>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Statements per item.
    #[arg(long)]
    size: Option<usize>,
    /// Non-entailed statements added per item.
    #[arg(long)]
    negatives: Option<usize>,
    /// Conjunctive query for the query task; repeat for several.
    #[arg(long = "query")]
    queries: Vec<String>,
}

impl RunArgs {
    fn resolve(self, ascii: bool) -> anyhow::Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(t) = self.task {
            c.task = t;
        }
        if !self.inputs.is_empty() {
            c.inputs = self.inputs;
        }
        if self.dataset.is_some() {
            c.dataset = self.dataset;
        }
        if !self.seeds.is_empty() {
            c.seeds = self.seeds;
        }
        c.offline |= self.offline;
        if let Some(k) = self.chunks {
            c.chunk_count = k;
        }
        if let Some(d) = self.depth {
            c.chase_depth = d;
        }
        if !self.variants.is_empty() {
            c.variants = self.variants;
        }
        if let Some(o) = self.out {
            c.out_dir = o;
        }
        if let Some(s) = self.size {
            c.size = s;
        }
        if let Some(n) = self.negatives {
            c.negatives = n;
        }
        if !self.queries.is_empty() {
            c.queries = self.queries;
        }
        if ascii {
            c.notation = Notation::Ascii;
        }
        Ok(c)
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    let notation = if cli.ascii { Notation::Ascii } else { Notation::Unicode };
    match cli.command {
        Command::CheckSyntax { file } => tools::check_syntax(&file),
        Command::Corrupt { file, class, seed } => tools::corrupt(&file, class, seed, notation),
        Command::Closure { file, explain } => tools::closure(&file, explain, notation),
        Command::Sat { file } => tools::sat(&file),
        Command::Entail { file, targets, targets_file, explain } => {
            tools::entail(&file, &targets, targets_file.as_deref(), explain, notation)
        }
        Command::Chase { file, depth } => tools::chase(&file, depth),
        Command::Query { file, queries, depth } => tools::query(&file, &queries, depth),
        Command::GenDataset(args) => run::gen_dataset(&args.resolve(cli.ascii)?),
        Command::GenPrompts(args) => run::gen_prompts(&args.resolve(cli.ascii)?),
        Command::RunEval(args) => run::run_eval(&args.resolve(cli.ascii)?),
        Command::Score { report, keywords, out } => {
            let out = out.unwrap_or_else(|| report.parent().map(PathBuf::from).unwrap_or_default());
            run::score(&report, keywords.as_deref(), &out)
        }
        Command::Replay { manifest, out, online } => run::replay(&manifest, out.as_deref(), online),
    }
}

/// The error and its causes, leaving out causes whose text the message
/// before them already ends with.
fn render_chain(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !out.ends_with(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<StageError>() {
            Some(s) => {
                eprintln!("error[{}]: {}", s.stage, render_chain(&s.source));
                ExitCode::from(s.stage.exit_code())
            }
            None => {
                eprintln!("error: {}", render_chain(&e));
                ExitCode::FAILURE
            }
        },
    }
}
