use super::ModelError;
use crate::expr::{ElementExpression, NumericExpression, NumericType, SetExpression};
use crate::state::{State, Value};
use std::cmp::Ordering;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariableKind {
    Element,
    Set,
    Integer,
    Continuous,
}

impl VariableKind {
    pub fn name(self) -> &'static str {
        match self {
            VariableKind::Element => "element",
            VariableKind::Set => "set",
            VariableKind::Integer => "integer",
            VariableKind::Continuous => "continuous",
        }
    }
}

/// Which direction of a resource variable is preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Preference {
    /// Not a resource variable: states must agree on it to be comparable.
    #[default]
    None,
    Less,
    Greater,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectType {
    pub name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableDecl {
    pub name: String,
    pub kind: VariableKind,
    /// Object type of element and set variables.
    pub object: Option<usize>,
    pub preference: Preference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementVariable(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SetVariable(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NumericVariable(pub usize);

impl From<ElementVariable> for ElementExpression {
    fn from(v: ElementVariable) -> Self {
        ElementExpression::Variable(v.0)
    }
}

impl From<ElementVariable> for NumericExpression {
    fn from(v: ElementVariable) -> Self {
        NumericExpression::Element(Box::new(ElementExpression::Variable(v.0)))
    }
}

impl From<SetVariable> for SetExpression {
    fn from(v: SetVariable) -> Self {
        SetExpression::Variable(v.0)
    }
}

impl From<NumericVariable> for NumericExpression {
    fn from(v: NumericVariable) -> Self {
        NumericExpression::Variable(v.0)
    }
}

/// Result of comparing two states under resource-variable dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    ADominatesB,
    BDominatesA,
    Incomparable,
}

/// Declared object types and state variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StateMetadata {
    pub objects: Vec<ObjectType>,
    pub variables: Vec<VariableDecl>,
    names: HashMap<String, usize>,
}

impl StateMetadata {
    pub fn new() -> StateMetadata {
        StateMetadata::default()
    }

    pub fn add_object(&mut self, name: &str, count: usize) -> Result<usize, ModelError> {
        if self.objects.iter().any(|o| o.name == name) {
            return Err(ModelError::DuplicateName(name.to_string()));
        }
        self.objects.push(ObjectType {
            name: name.to_string(),
            count,
        });
        Ok(self.objects.len() - 1)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }

    fn add_variable(
        &mut self,
        name: &str,
        kind: VariableKind,
        object: Option<usize>,
        preference: Preference,
    ) -> Result<usize, ModelError> {
        if self.names.contains_key(name) {
            return Err(ModelError::DuplicateName(name.to_string()));
        }
        if let Some(o) = object {
            if o >= self.objects.len() {
                return Err(ModelError::UnknownObject(o));
            }
        }
        let index = self.variables.len();
        self.variables.push(VariableDecl {
            name: name.to_string(),
            kind,
            object,
            preference,
        });
        self.names.insert(name.to_string(), index);
        Ok(index)
    }

    pub fn add_element_variable(
        &mut self,
        name: &str,
        object: usize,
        preference: Preference,
    ) -> Result<ElementVariable, ModelError> {
        self.add_variable(name, VariableKind::Element, Some(object), preference)
            .map(ElementVariable)
    }

    pub fn add_set_variable(&mut self, name: &str, object: usize) -> Result<SetVariable, ModelError> {
        self.add_variable(name, VariableKind::Set, Some(object), Preference::None)
            .map(SetVariable)
    }

    pub fn add_integer_variable(
        &mut self,
        name: &str,
        preference: Preference,
    ) -> Result<NumericVariable, ModelError> {
        self.add_variable(name, VariableKind::Integer, None, preference)
            .map(NumericVariable)
    }

    pub fn add_continuous_variable(
        &mut self,
        name: &str,
        preference: Preference,
    ) -> Result<NumericVariable, ModelError> {
        self.add_variable(name, VariableKind::Continuous, None, preference)
            .map(NumericVariable)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Universe size of a set or element variable.
    pub fn universe(&self, variable: usize) -> Option<usize> {
        self.variables
            .get(variable)
            .and_then(|v| v.object)
            .map(|o| self.objects[o].count)
    }

    pub fn numeric_type(&self, variable: usize) -> NumericType {
        match self.variables.get(variable).map(|v| v.kind) {
            Some(VariableKind::Continuous) => NumericType::Continuous,
            _ => NumericType::Integer,
        }
    }

    pub fn has_resource_variables(&self) -> bool {
        self.variables.iter().any(|v| v.preference != Preference::None)
    }

    /// Checks that `state` assigns a value of the right kind to every variable.
    pub fn check_state(&self, state: &State) -> Result<(), ModelError> {
        if state.len() != self.variables.len() {
            return Err(ModelError::StateShape {
                expected: self.variables.len(),
                found: state.len(),
            });
        }
        for (index, (decl, value)) in self.variables.iter().zip(state.values()).enumerate() {
            let ok = match (decl.kind, value) {
                (VariableKind::Element, Value::Element(_)) => true,
                (VariableKind::Set, Value::Set(s)) => Some(s.len()) == self.universe(index),
                (VariableKind::Integer, Value::Number(n)) => n.as_int().is_some(),
                (VariableKind::Continuous, Value::Number(n)) => !n.is_infinite(),
                _ => false,
            };
            if !ok {
                return Err(ModelError::BadValue {
                    variable: decl.name.clone(),
                    value: value.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Values of all non-resource variables; states are only comparable under
    /// dominance when these agree.
    pub fn signature(&self, state: &State) -> Vec<Value> {
        self.variables
            .iter()
            .zip(state.values())
            .filter(|(d, _)| d.preference == Preference::None)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn dominance_compare(&self, a: &State, b: &State) -> Dominance {
        let mut a_better = false;
        let mut b_better = false;
        for (decl, (x, y)) in self.variables.iter().zip(a.values().iter().zip(b.values())) {
            if decl.preference == Preference::None {
                if x != y {
                    return Dominance::Incomparable;
                }
                continue;
            }
            let ordering = match (x, y) {
                (Value::Element(x), Value::Element(y)) => x.cmp(y),
                (Value::Number(x), Value::Number(y)) => x.cmp(y),
                _ => return Dominance::Incomparable,
            };
            let ordering = if decl.preference == Preference::Greater {
                ordering.reverse()
            } else {
                ordering
            };
            match ordering {
                Ordering::Less => a_better = true,
                Ordering::Greater => b_better = true,
                Ordering::Equal => {}
            }
        }
        match (a_better, b_better) {
            (false, false) => Dominance::Equal,
            (true, false) => Dominance::ADominatesB,
            (false, true) => Dominance::BDominatesA,
            (true, true) => Dominance::Incomparable,
        }
    }
}
