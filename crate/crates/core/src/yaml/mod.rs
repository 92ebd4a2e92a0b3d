//! YAML-DyPDL: domain and problem documents, the expression language, solver
//! configuration and the solution text format.

mod document;
mod export;
pub mod grammar;
mod instantiate;
pub mod sexpr;
mod solution;

pub use document::{
    parse_domain, parse_problem, BaseCaseDocument, ConstraintDocument, DomainDocument,
    ParameterDocument, ProblemDocument, TableDocument, TransitionDocument, VariableDocument,
};
pub use export::{export, export_domain, export_problem};
pub use instantiate::{instantiate, load};
pub use solution::{parse_solver_config, write_solution, SolverConfig};

use crate::expr::EvalError;
use crate::model::ModelError;
use thiserror::Error;

/// Problems with a single expression text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpressionError {
    #[error("{0}")]
    Tokenize(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{operator}` takes {expected} arguments, got {found}")]
    Arity {
        operator: String,
        expected: String,
        found: usize,
    },
    #[error("expected {expected}, got `{text}`")]
    Type { expected: &'static str, text: String },
    #[error("`cost` may only appear as the second argument of the outermost `+` or `max` of a transition cost")]
    MisplacedCost,
    #[error("a transition cost must be `(+ w cost)` or `(max w cost)`, got `{0}`")]
    CostShape(String),
}

#[derive(Debug, Error)]
pub enum YamlError {
    #[error("YAML syntax: {0}")]
    Yaml(#[from] serde_yaml::Error),
    #[error("{location}: `{text}`: {source}")]
    Expression {
        location: String,
        text: String,
        source: ExpressionError,
    },
    #[error("{0}")]
    Document(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub(crate) fn document_error(message: impl Into<String>) -> YamlError {
    YamlError::Document(message.into())
}
