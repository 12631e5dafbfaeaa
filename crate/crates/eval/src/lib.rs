//! Model gateway, answer parsing, scoring and reports for the DL-Lite tasks.

pub mod gateway;
pub mod metrics;
pub mod pipeline;
pub mod report;
pub mod verdict;

pub use gateway::{Exchange, Gateway, GatewayError, ModelConfig};
pub use metrics::{deduction_rate, score_binary, score_query, Metrics, ScoreError};
pub use pipeline::{evaluate, EvalRecord, Manifest, PipelineError};
pub use report::write_report;
pub use verdict::{parse_verdicts, Verdict};
