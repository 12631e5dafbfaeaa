use std::fmt;

/// Pipeline stage a failure belongs to. Each has its own exit code so that
/// scripts can tell a bad input from an unreachable model.
#[allow(clippy::enum_variant_names)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    ParseStage,
    ReasonStage,
    GatewayStage,
    ScoreStage,
}

impl Stage {
    pub fn exit_code(self) -> u8 {
        match self {
            Stage::ParseStage => 3,
            Stage::ReasonStage => 4,
            Stage::GatewayStage => 5,
            Stage::ScoreStage => 6,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug)]
pub struct StageError {
    pub stage: Stage,
    pub source: anyhow::Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:#}", self.stage, self.source)
    }
}

impl std::error::Error for StageError {}

pub trait StageExt<T> {
    fn stage(self, stage: Stage) -> anyhow::Result<T>;
}

impl<T, E: Into<anyhow::Error>> StageExt<T> for Result<T, E> {
    fn stage(self, stage: Stage) -> anyhow::Result<T> {
        self.map_err(|e| StageError { stage, source: e.into() }.into())
    }
}

pub fn fail<T>(stage: Stage, message: impl fmt::Display) -> anyhow::Result<T> {
    Err(StageError { stage, source: anyhow::anyhow!("{message}") }.into())
}
