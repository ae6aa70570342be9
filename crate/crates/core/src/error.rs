use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("order undefined between {0} and {1}: mixed a+bI values are not ordered")]
    OrderUndefined(String, String),
    #[error("fuzzy threshold applied to neutrosophic value {0}")]
    ModeMismatch(String),
    #[error("value {value} outside domain {domain} at ({row},{col})")]
    DomainViolation {
        value: String,
        domain: String,
        row: usize,
        col: usize,
    },
    #[error("argument {0} outside [0,1] and not an I-multiple")]
    OutOfDomain(String),
    #[error("special matrix needs at least one component")]
    EmptyUnion,
    #[error("component {0} is tagged CM but is not square")]
    NonSquareCm(usize),
    #[error("expected {expected} components, got {got}")]
    ComponentCountMismatch { expected: usize, got: usize },
    #[error("component {0} is not a CM component")]
    NonCmComponent(usize),
    #[error("component {0} is not an RM component")]
    NonRmComponent(usize),
    #[error("component {component} did not settle within {cap} steps")]
    IterationCapExceeded { component: usize, cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("component {component} violates {class}: {rule}")]
    ClassViolation {
        class: String,
        component: usize,
        rule: String,
    },
    #[error("component {component} has nonzero diagonal entry at ({index},{index})")]
    NonzeroDiagonal { component: usize, index: usize },
    #[error("{0} models are relational equations; use the fre entry point")]
    WrongEntryPoint(String),
    #[error("grid enumeration needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
