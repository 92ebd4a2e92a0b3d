//! DyPDL models: state variables, transitions, base cases, state constraints,
//! dual bounds and the cost algebra.

mod cost;
mod metadata;
mod oracle;
mod validate;

pub use cost::{CostOperator, CostStructure, Direction};
pub use metadata::{
    Dominance, ElementVariable, NumericVariable, ObjectType, Preference, SetVariable,
    StateMetadata, VariableDecl, VariableKind,
};
pub use oracle::{bellman_oracle, Oracle, OracleError, OracleMode, OracleResult};
pub use validate::{Diagnostic, Severity, ValidationContext};

use crate::expr::{
    Condition, ElementExpression, EvalError, Number, NumericExpression, SetExpression,
    TableRegistry,
};
use crate::state::{State, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown object type {0}")]
    UnknownObject(usize),
    #[error("state has {found} values, expected {expected}")]
    StateShape { expected: usize, found: usize },
    #[error("bad value {value} for variable `{variable}`")]
    BadValue { variable: String, value: String },
    #[error("effect on variable {variable} has the wrong kind")]
    EffectKind { variable: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Update of one state variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Effect {
    Element(ElementExpression),
    Set(SetExpression),
    Numeric(NumericExpression),
}

/// A guarded state update with a weight `w`; its full cost expression is `w ⊕ cost`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub name: String,
    pub preconditions: Vec<Condition>,
    /// At most one effect per variable index; effects are evaluated on the pre-state.
    pub effects: Vec<(usize, Effect)>,
    pub cost: NumericExpression,
    pub forced: bool,
}

impl Transition {
    pub fn new(name: impl Into<String>) -> Transition {
        Transition {
            name: name.into(),
            preconditions: Vec::new(),
            effects: Vec::new(),
            cost: NumericExpression::constant(0),
            forced: false,
        }
    }

    pub fn precondition(mut self, condition: Condition) -> Transition {
        self.preconditions.push(condition);
        self
    }

    pub fn set_effect(mut self, variable: SetVariable, e: impl Into<SetExpression>) -> Self {
        self.effects.push((variable.0, Effect::Set(e.into())));
        self
    }

    pub fn element_effect(
        mut self,
        variable: ElementVariable,
        e: impl Into<ElementExpression>,
    ) -> Self {
        self.effects.push((variable.0, Effect::Element(e.into())));
        self
    }

    pub fn numeric_effect(
        mut self,
        variable: NumericVariable,
        e: impl Into<NumericExpression>,
    ) -> Self {
        self.effects.push((variable.0, Effect::Numeric(e.into())));
        self
    }

    pub fn with_cost(mut self, w: impl Into<NumericExpression>) -> Self {
        self.cost = w.into();
        self
    }

    pub fn forced(mut self) -> Self {
        self.forced = true;
        self
    }

    pub fn is_applicable(&self, state: &State, tables: &TableRegistry) -> Result<bool, EvalError> {
        for c in &self.preconditions {
            if !c.eval(state, tables)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseCase {
    pub conditions: Vec<Condition>,
    pub cost: NumericExpression,
}

impl BaseCase {
    pub fn new(conditions: Vec<Condition>, cost: impl Into<NumericExpression>) -> BaseCase {
        BaseCase {
            conditions,
            cost: cost.into(),
        }
    }
}

/// A complete DyPDL model.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub metadata: StateMetadata,
    pub tables: TableRegistry,
    pub target: State,
    pub transitions: Vec<Transition>,
    pub base_cases: Vec<BaseCase>,
    pub constraints: Vec<Condition>,
    pub dual_bounds: Vec<NumericExpression>,
    pub cost: CostStructure,
    /// Declared by the modeler; not verified.
    pub acyclic: bool,
}

impl Model {
    pub fn new(
        metadata: StateMetadata,
        tables: TableRegistry,
        target: State,
        cost: CostStructure,
    ) -> Result<Model, ModelError> {
        metadata.check_state(&target)?;
        Ok(Model {
            metadata,
            tables,
            target,
            transitions: Vec::new(),
            base_cases: Vec::new(),
            constraints: Vec::new(),
            dual_bounds: Vec::new(),
            cost,
            acyclic: true,
        })
    }

    pub fn add_transition(&mut self, transition: Transition) {
        self.transitions.push(transition);
    }

    pub fn add_base_case(&mut self, base_case: BaseCase) {
        self.base_cases.push(base_case);
    }

    pub fn add_constraint(&mut self, condition: Condition) {
        self.constraints.push(condition);
    }

    pub fn add_dual_bound(&mut self, bound: impl Into<NumericExpression>) {
        self.dual_bounds.push(bound.into());
    }

    pub fn check_constraints(&self, state: &State) -> Result<bool, EvalError> {
        for c in &self.constraints {
            if !c.eval(state, &self.tables)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Best base cost over the base cases `state` satisfies, if any.
    pub fn base_cost(&self, state: &State) -> Result<Option<Number>, EvalError> {
        let mut best: Option<Number> = None;
        'cases: for case in &self.base_cases {
            for c in &case.conditions {
                if !c.eval(state, &self.tables)? {
                    continue 'cases;
                }
            }
            let cost = case.cost.eval(state, &self.tables)?;
            best = Some(match best {
                Some(b) => self.cost.best(b, cost),
                None => cost,
            });
        }
        Ok(best)
    }

    /// Indices of all applicable transitions, forced or not.
    pub fn all_applicable(&self, state: &State) -> Result<Vec<usize>, EvalError> {
        let mut result = Vec::new();
        for (index, t) in self.transitions.iter().enumerate() {
            if t.is_applicable(state, &self.tables)? {
                result.push(index);
            }
        }
        Ok(result)
    }

    /// Indices of the transitions to expand: the first applicable forced
    /// transition alone if there is one, otherwise every applicable non-forced
    /// transition in declaration order.
    pub fn applicable_transitions(&self, state: &State) -> Result<Vec<usize>, EvalError> {
        for (index, t) in self.transitions.iter().enumerate() {
            if t.forced && t.is_applicable(state, &self.tables)? {
                return Ok(vec![index]);
            }
        }
        let mut result = Vec::new();
        for (index, t) in self.transitions.iter().enumerate() {
            if !t.forced && t.is_applicable(state, &self.tables)? {
                result.push(index);
            }
        }
        Ok(result)
    }

    pub fn successor(&self, transition: &Transition, state: &State) -> Result<State, EvalError> {
        let mut values = Vec::with_capacity(transition.effects.len());
        for (variable, effect) in &transition.effects {
            let value = match effect {
                Effect::Element(e) => Value::Element(e.eval(state, &self.tables)?),
                Effect::Set(e) => Value::Set(e.eval(state, &self.tables)?),
                Effect::Numeric(e) => {
                    let ty = self.metadata.numeric_type(*variable);
                    Value::Number(e.eval(state, &self.tables)?.cast(ty)?)
                }
            };
            values.push((*variable, value));
        }
        let mut next = state.clone();
        for (variable, value) in values {
            next.set_value(variable, value);
        }
        Ok(next)
    }

    /// The weight `w` of `transition` in `state`.
    pub fn weight(&self, transition: &Transition, state: &State) -> Result<Number, EvalError> {
        transition
            .cost
            .eval(state, &self.tables)?
            .cast(self.cost.cost_type)
    }

    pub fn combine(&self, w: Number, x: Number) -> Result<Number, EvalError> {
        self.cost.combine(w, x)
    }

    pub fn has_dual_bound(&self) -> bool {
        !self.dual_bounds.is_empty()
    }

    /// Tightest declared dual bound: the maximum for minimization, the minimum
    /// for maximization. `None` if the model declares no bound.
    pub fn eval_dual_bound(&self, state: &State) -> Result<Option<Number>, EvalError> {
        let mut result: Option<Number> = None;
        for bound in &self.dual_bounds {
            let v = bound.eval(state, &self.tables)?;
            result = Some(match result {
                None => v,
                // keep the less optimistic value
                Some(r) => {
                    if self.cost.is_better(r, v) {
                        v
                    } else {
                        r
                    }
                }
            });
        }
        Ok(result)
    }

    pub fn dominance_compare(&self, a: &State, b: &State) -> Dominance {
        self.metadata.dominance_compare(a, b)
    }

    /// Cost of applying `transitions` from the target, by the recursive
    /// definition `w₁ ⊕ (w₂ ⊕ (… ⊕ base))`. Returns `None` if some transition is
    /// not applicable, a state violates the constraints, or the last state is
    /// not a base state.
    pub fn solution_cost(&self, transitions: &[usize]) -> Result<Option<Number>, EvalError> {
        let mut state = self.target.clone();
        let mut weights = Vec::with_capacity(transitions.len());
        for &index in transitions {
            if !self.check_constraints(&state)? || self.base_cost(&state)?.is_some() {
                return Ok(None);
            }
            let t = match self.transitions.get(index) {
                Some(t) => t,
                None => return Ok(None),
            };
            if !t.is_applicable(&state, &self.tables)? {
                return Ok(None);
            }
            weights.push(self.weight(t, &state)?);
            state = self.successor(t, &state)?;
        }
        if !self.check_constraints(&state)? {
            return Ok(None);
        }
        let mut cost = match self.base_cost(&state)? {
            Some(c) => c,
            None => return Ok(None),
        };
        for w in weights.into_iter().rev() {
            cost = self.combine(w, cost)?;
        }
        Ok(Some(cost))
    }

    /// Copy of the model with every resource preference removed.
    pub fn without_dominance(&self) -> Model {
        let mut model = self.clone();
        for v in &mut model.metadata.variables {
            v.preference = Preference::None;
        }
        model
    }

    /// Copy of the model with every transition marked non-forced.
    pub fn without_forced(&self) -> Model {
        let mut model = self.clone();
        for t in &mut model.transitions {
            t.forced = false;
        }
        model
    }
}
