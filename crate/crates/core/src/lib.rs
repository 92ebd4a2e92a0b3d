pub mod benchmarks;
pub mod expr;
pub mod metrics;
pub mod model;
pub mod search;
pub mod state;
pub mod yaml;

pub use expr::{
    ArgumentExpression, ComparisonOperator, Condition, ElementExpression, EvalError, Number,
    NumericExpression, NumericType, SetExpression, TableId, TableRegistry,
};
pub use model::{BaseCase, CostStructure, Direction, Model, Transition};
pub use state::{Set, State, Value};
