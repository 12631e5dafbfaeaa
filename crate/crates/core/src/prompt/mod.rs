//! Prompt rendering for the evaluation tasks.
//!
//! Text lives in `templates/`; this module only picks the pieces and fills
//! the `{{slots}}`. Output is byte-deterministic for a given spec and item.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{Question, Task, TaskItem};
use crate::model::{Notation, Ontology, Render};
use crate::reasoner::render_implication;

mod text {
    pub const HEAD: &str = include_str!("../../templates/head.txt");
    pub const AXIOMS: &str = include_str!("../../templates/axioms.txt");
    pub const ONTOLOGY: &str = include_str!("../../templates/ontology.txt");
    pub const ONTOLOGY_PART: &str = include_str!("../../templates/ontology_part.txt");
    pub const IMPLICATIONS: &str = include_str!("../../templates/implications.txt");
    pub const QUERIES: &str = include_str!("../../templates/queries.txt");
    pub const ANSWER: &str = include_str!("../../templates/answer.txt");
    pub const MORE: &str = include_str!("../../templates/more.txt");
    pub const RESUME: &str = include_str!("../../templates/resume.txt");
    pub const CONTINUATION: &str = include_str!("../../templates/continuation.txt");
    pub const REASONS: &str = include_str!("../../templates/reasons.txt");

    pub const DESC_SYNTAX: &str = include_str!("../../templates/description/syntax.txt");
    pub const DESC_ENTAILMENT: &str = include_str!("../../templates/description/entailment.txt");
    pub const DESC_QUERY: &str = include_str!("../../templates/description/query.txt");
    pub const DESC_SAT: &str = include_str!("../../templates/description/satisfiability.txt");

    pub const GRAMMAR: &str = include_str!("../../templates/instructions/grammar.txt");
    pub const TBOX_RULES: &str = include_str!("../../templates/instructions/tbox_rules.txt");
    pub const ABOX_RULES: &str = include_str!("../../templates/instructions/abox_rules.txt");
    pub const PROPERTY_RULES: &str = include_str!("../../templates/instructions/property_rules.txt");
    pub const UNSAT_RULES: &str = include_str!("../../templates/instructions/unsat_rules.txt");

    pub const EX_SYNTAX: &str = include_str!("../../templates/examples/syntax.txt");
    pub const EX_SUBSUMPTION: &str = include_str!("../../templates/examples/subsumption.txt");
    pub const EX_INSTANCE: &str = include_str!("../../templates/examples/instance.txt");
    pub const EX_PROPERTY: &str = include_str!("../../templates/examples/property.txt");
    pub const EX_QUERY: &str = include_str!("../../templates/examples/query.txt");
    pub const EX_SAT: &str = include_str!("../../templates/examples/satisfiability.txt");
}

const RULES_HEADER: &str = "Here, you are provided with some reasoning rules:\n";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// No instructions.
    #[serde(rename = "NI")]
    Ni,
    /// With instructions.
    #[serde(rename = "WI")]
    Wi,
    /// With instructions and examples.
    #[serde(rename = "WIE")]
    Wie,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Ni, Variant::Wi, Variant::Wie];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Ni => "NI",
            Variant::Wi => "WI",
            Variant::Wie => "WIE",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL.into_iter().find(|v| v.as_str().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub task: Task,
    pub variant: Variant,
    pub require_reasons: bool,
    /// Number of messages the ontology is spread over.
    pub chunk_count: usize,
    pub notation: Notation,
}

impl PromptSpec {
    /// Single message, unicode, reasons requested for the probe tasks only.
    pub fn new(task: Task, variant: Variant) -> PromptSpec {
        PromptSpec { task, variant, require_reasons: task.is_probe(), chunk_count: 1, notation: Notation::Unicode }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PromptError {
    #[error("prompt spec is for {spec} but the item is a {item} item")]
    TaskVariantMismatch { spec: Task, item: Task },
    #[error("chunk count must be at least 1")]
    ZeroChunks,
    #[error("{0} items carry no ontology to split")]
    ChunkingUnsupported(Task),
}

/// A rendered item, as stored next to the dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptRecord {
    pub item_id: String,
    pub spec: PromptSpec,
    /// One entry per message, in sending order.
    pub messages: Vec<String>,
}

/// Replaces each `{{key}}` in one pass, so filled text is never rescanned.
fn fill(template: &str, vars: &[(&str, &str)]) -> String {
    let mut out = String::with_capacity(template.len() + 64);
    let mut rest = template;
    while let Some(start) = rest.find("{{") {
        out.push_str(&rest[..start]);
        let after = &rest[start + 2..];
        let end = after.find("}}").expect("unterminated template slot");
        let key = &after[..end];
        let value = vars.iter().find(|(k, _)| *k == key).unwrap_or_else(|| panic!("unfilled template slot {key}")).1;
        out.push_str(value);
        rest = &after[end + 2..];
    }
    out.push_str(rest);
    out
}

/// Plain-ASCII spelling of the symbols used in the fixed instruction text.
fn asciify(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '⊑' => out.push_str("[="),
            '⊓' => out.push('&'),
            '¬' => out.push('!'),
            '∃' => out.push_str("exists "),
            '⁻' => out.push_str("^-"),
            '≡' => out.push_str("=="),
            '←' => out.push_str("<-"),
            '→' => out.push_str("->"),
            'α' => out.push_str("alpha"),
            'β' => out.push_str("beta"),
            '′' => out.push('\''),
            '″' => out.push_str("''"),
            '⟨' => out.push('<'),
            '⟩' => out.push('>'),
            '₀'..='₉' => out.push(char::from(b'0' + (c as u32 - '₀' as u32) as u8)),
            _ => out.push(c),
        }
    }
    out
}

fn description(task: Task) -> &'static str {
    match task {
        Task::Syntax => text::DESC_SYNTAX,
        Task::Query => text::DESC_QUERY,
        Task::Satisfiability => text::DESC_SAT,
        Task::Subsumption | Task::Instance | Task::ProbeInverse | Task::ProbeFunctional => text::DESC_ENTAILMENT,
    }
}

/// The instruction block a WI prompt adds for `task`.
pub fn instruction_block(task: Task) -> String {
    match task {
        Task::Syntax => text::GRAMMAR.to_string(),
        Task::Subsumption => format!("{RULES_HEADER}{}", text::TBOX_RULES),
        Task::Instance | Task::Query => format!("{RULES_HEADER}{}", text::ABOX_RULES),
        Task::ProbeInverse | Task::ProbeFunctional => format!("{RULES_HEADER}{}{}", text::ABOX_RULES, text::PROPERTY_RULES),
        Task::Satisfiability => format!("{RULES_HEADER}{}{}", text::TBOX_RULES, text::UNSAT_RULES),
    }
}

/// The example block a WIE prompt adds after the instructions.
pub fn example_block(task: Task) -> String {
    match task {
        Task::Syntax => format!("Here are some examples of common syntactic errors:\n{}", text::EX_SYNTAX),
        Task::Subsumption => format!("Here are some examples:\n{}", text::EX_SUBSUMPTION),
        Task::Instance => format!("Here are examples:\n{}", text::EX_INSTANCE),
        Task::ProbeInverse | Task::ProbeFunctional => {
            format!("Here are some examples:\n{}{}", text::EX_INSTANCE, text::EX_PROPERTY)
        }
        Task::Query => format!("Here are some examples:\n{}", text::EX_QUERY),
        Task::Satisfiability => format!("Here are some examples:\n{}", text::EX_SAT),
    }
}

fn guidance(spec: &PromptSpec) -> String {
    let g = match spec.variant {
        Variant::Ni => String::new(),
        Variant::Wi => instruction_block(spec.task),
        Variant::Wie => instruction_block(spec.task) + &example_block(spec.task),
    };
    match spec.notation {
        Notation::Unicode => g,
        Notation::Ascii => asciify(&g),
    }
}

fn statement_text(q: &Question, n: Notation) -> String {
    match (q, n) {
        (Question::Implication(i), n) => render_implication(i, n),
        (Question::Text(t), _) => t.clone(),
        (Question::Query(q), Notation::Unicode) => q.to_string(),
        (Question::Query(q), Notation::Ascii) => q.to_string().replace('←', "<-"),
    }
}

/// Statements as a numbered list, one per line, no trailing newline.
pub fn numbered_statements(item: &TaskItem, n: Notation) -> String {
    item.statements.iter().enumerate().map(|(i, q)| format!("{}. {}", i + 1, statement_text(q, n))).collect::<Vec<_>>().join("\n")
}

fn ontology_text(o: &Ontology, n: Notation) -> String {
    let mut s = o.render(n);
    if s.ends_with('\n') {
        s.pop();
    }
    s
}

/// Splits `o` into `k` fragments: the TBox goes with the first, the ABox is
/// cut into contiguous slices whose sizes differ by at most one.
pub fn chunk_ontology(o: &Ontology, k: usize) -> Vec<Ontology> {
    let k = k.max(1);
    let abox: Vec<_> = o.abox().iter().cloned().collect();
    let (base, extra) = (abox.len() / k, abox.len() % k);
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        let slice = abox[start..start + len].iter().cloned();
        start += len;
        let tbox = if i == 0 { o.tbox().iter().cloned().collect() } else { Vec::new() };
        out.push(Ontology::new(tbox, slice));
    }
    out
}

pub fn render_prompt(spec: &PromptSpec, item: &TaskItem) -> Result<Vec<String>, PromptError> {
    if spec.task != item.task {
        return Err(PromptError::TaskVariantMismatch { spec: spec.task, item: item.task });
    }
    if spec.chunk_count == 0 {
        return Err(PromptError::ZeroChunks);
    }
    if spec.task == Task::Syntax && spec.chunk_count > 1 {
        return Err(PromptError::ChunkingUnsupported(spec.task));
    }
    let n = spec.notation;
    let chunked = spec.chunk_count > 1;
    let guidance = guidance(spec);
    let head = fill(
        text::HEAD,
        &[
            ("description", description(spec.task)),
            ("continuation", if chunked { text::CONTINUATION } else { "" }),
            ("reasons", if spec.require_reasons { text::REASONS } else { "" }),
            ("guidance", &guidance),
        ],
    );
    let statements = numbered_statements(item, n);
    let tail = match spec.task {
        Task::Syntax => return Ok(vec![head + &fill(text::AXIOMS, &[("statements", &statements)])]),
        Task::Subsumption | Task::Instance | Task::ProbeInverse | Task::ProbeFunctional => {
            fill(text::IMPLICATIONS, &[("statements", &statements)])
        }
        Task::Query => fill(text::QUERIES, &[("statements", &statements)]),
        Task::Satisfiability => text::ANSWER.to_string(),
    };
    if !chunked {
        let body = fill(text::ONTOLOGY, &[("ontology", &ontology_text(&item.ontology, n))]);
        return Ok(vec![head + &body + &tail]);
    }
    let parts = chunk_ontology(&item.ontology, spec.chunk_count);
    let total = parts.len().to_string();
    let mut out = Vec::with_capacity(parts.len());
    for (i, frag) in parts.iter().enumerate() {
        let mut msg = if i == 0 { head.clone() } else { text::RESUME.to_string() };
        let part = (i + 1).to_string();
        msg += &fill(text::ONTOLOGY_PART, &[("part", &part), ("parts", &total), ("ontology", &ontology_text(frag, n))]);
        msg += if i + 1 == parts.len() { &tail } else { text::MORE };
        out.push(msg);
    }
    Ok(out)
}
