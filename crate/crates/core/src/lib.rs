//! DL-Lite ontologies: data model, text syntax, a rule-based reasoner with
//! derivation traces, a brute-force semantic oracle, dataset generators and
//! prompt rendering for language-model evaluation.

pub mod dataset;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod prompt;
pub mod random;
pub mod reasoner;
pub mod rng;
