use thiserror::Error;

/// Position of a streaming step, used to name the step that broke the space budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Init,
    BeginPass { pass: usize },
    Update { pass: usize, index: usize },
    EndPass { pass: usize },
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Step::Init => write!(f, "init"),
            Step::BeginPass { pass } => write!(f, "begin of pass {pass}"),
            Step::Update { pass, index } => write!(f, "update {index} of pass {pass}"),
            Step::EndPass { pass } => write!(f, "end of pass {pass}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("input shape: {0}")]
    InputShape(String),

    #[error("value undefined: {0}")]
    UndefinedValue(String),

    #[error("brute force over {vars} variables exceeds the cap of {cap}")]
    Capacity { vars: usize, cap: usize },

    #[error("domain: {0}")]
    Domain(String),

    #[error("family: {0}")]
    Family(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("space budget exceeded at {step}: state is {bits} bits, budget is {budget} bits")]
    BudgetExceeded { step: Step, bits: u64, budget: u64 },

    #[error("state at {step} does not survive a round trip through its bit encoding")]
    StateLeak { step: Step },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
