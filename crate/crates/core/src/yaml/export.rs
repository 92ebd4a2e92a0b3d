//! Writes a ground model back out as a domain and a problem file.

use super::document::*;
use super::grammar::Printer;
use super::YamlError;
use crate::expr::{NumericType, Table, TableData};
use crate::model::{CostOperator, Direction, Effect, Model, Preference, VariableKind};
use crate::state::{Set, Value};
use serde_yaml::{Mapping, Value as Yaml};

fn number(n: crate::Number) -> Yaml {
    match n {
        crate::Number::Int(v) => Yaml::from(v),
        crate::Number::Real(v) => Yaml::from(v),
    }
}

fn set(s: &Set) -> Yaml {
    Yaml::Sequence(s.ones().map(|v| Yaml::from(v as u64)).collect())
}

fn entry(data: &TableData, k: usize) -> Yaml {
    match data {
        TableData::Integer(v) => Yaml::from(v[k]),
        TableData::Continuous(v) => Yaml::from(v[k]),
        TableData::Bool(v) => Yaml::from(v[k]),
        TableData::Element(v) => Yaml::from(v[k] as u64),
        TableData::Set(v, _) => set(&v[k]),
    }
}

fn table_values(table: &Table) -> Yaml {
    let total: usize = table.arg_sizes.iter().product();
    if table.arg_sizes.is_empty() {
        return entry(&table.data, 0);
    }
    let mut mapping = Mapping::new();
    for k in 0..total {
        // row-major offset back to an index tuple
        let mut rest = k;
        let mut indices = vec![0; table.arg_sizes.len()];
        for (slot, &size) in indices.iter_mut().zip(&table.arg_sizes).rev() {
            *slot = rest % size;
            rest /= size;
        }
        let key = if indices.len() == 1 {
            Yaml::from(indices[0] as u64)
        } else {
            Yaml::Sequence(indices.into_iter().map(|i| Yaml::from(i as u64)).collect())
        };
        mapping.insert(key, entry(&table.data, k));
    }
    Yaml::Mapping(mapping)
}

/// Domain and problem documents describing `model` with every transition and
/// constraint already ground.
pub fn export(model: &Model) -> (DomainDocument, ProblemDocument) {
    let printer = Printer {
        metadata: &model.metadata,
        tables: &model.tables,
    };
    let objects = &model.metadata.objects;
    let object_name = |o: Option<usize>| o.map(|o| objects[o].name.clone());

    let state_variables = model
        .metadata
        .variables
        .iter()
        .map(|v| VariableDocument {
            name: v.name.clone(),
            kind: match v.kind {
                VariableKind::Element => VariableType::Element,
                VariableKind::Set => VariableType::Set,
                VariableKind::Integer => VariableType::Integer,
                VariableKind::Continuous => VariableType::Continuous,
            },
            object: object_name(v.object),
            preference: match v.preference {
                Preference::None => None,
                Preference::Less => Some(PreferenceType::Less),
                Preference::Greater => Some(PreferenceType::Greater),
            },
        })
        .collect();

    let tables = model
        .tables
        .tables()
        .iter()
        .map(|t| TableDocument {
            name: t.name.clone(),
            kind: match t.kind() {
                crate::expr::TableKind::Integer => TableType::Integer,
                crate::expr::TableKind::Continuous => TableType::Continuous,
                crate::expr::TableKind::Bool => TableType::Bool,
                crate::expr::TableKind::Element => TableType::Element,
                crate::expr::TableKind::Set => TableType::Set,
            },
            args: t.arg_objects.iter().map(|&o| objects[o].name.clone()).collect(),
            object: object_name(t.value_object),
            default: None,
        })
        .collect();

    let transitions = model
        .transitions
        .iter()
        .map(|t| TransitionDocument {
            name: t.name.clone(),
            parameters: Vec::new(),
            preconditions: t.preconditions.iter().map(|c| printer.condition(c)).collect(),
            effect: t
                .effects
                .iter()
                .map(|(v, e)| {
                    let text = match e {
                        Effect::Element(e) => printer.element(e),
                        Effect::Set(e) => printer.set(e),
                        Effect::Numeric(e) => printer.numeric(e),
                    };
                    (model.metadata.variables[*v].name.clone(), text)
                })
                .collect(),
            cost: Some(printer.transition_cost(model.cost.operator, &t.cost)),
            forced: t.forced,
        })
        .collect();

    let nonnegative_costs = model.cost.operator == CostOperator::Max && model.cost.identity.as_f64() == 0.0;
    let domain = DomainDocument {
        cost_type: match model.cost.cost_type {
            NumericType::Integer => CostType::Integer,
            NumericType::Continuous => CostType::Continuous,
        },
        reduce: match model.cost.direction {
            Direction::Minimize => Reduce::Min,
            Direction::Maximize => Reduce::Max,
        },
        nonnegative_costs,
        objects: objects.iter().map(|o| o.name.clone()).collect(),
        state_variables,
        tables,
        transitions,
        constraints: model
            .constraints
            .iter()
            .map(|c| ConstraintDocument::Plain(printer.condition(c)))
            .collect(),
        base_cases: model
            .base_cases
            .iter()
            .map(|b| BaseCaseDocument {
                conditions: b.conditions.iter().map(|c| printer.condition(c)).collect(),
                cost: printer.numeric(&b.cost),
            })
            .collect(),
        dual_bounds: model.dual_bounds.iter().map(|b| printer.numeric(b)).collect(),
    };

    let mut target = Mapping::new();
    for (v, value) in model.metadata.variables.iter().zip(model.target.values()) {
        let value = match value {
            Value::Element(e) => Yaml::from(*e as u64),
            Value::Set(s) => set(s),
            Value::Number(n) => number(*n),
        };
        target.insert(Yaml::from(v.name.clone()), value);
    }
    let problem = ProblemDocument {
        object_numbers: objects.iter().map(|o| (o.name.clone(), o.count)).collect(),
        target,
        table_values: model
            .tables
            .tables()
            .iter()
            .map(|t| (Yaml::from(t.name.clone()), table_values(t)))
            .collect(),
    };
    (domain, problem)
}

pub fn export_domain(model: &Model) -> Result<String, YamlError> {
    Ok(serde_yaml::to_string(&export(model).0)?)
}

pub fn export_problem(model: &Model) -> Result<String, YamlError> {
    Ok(serde_yaml::to_string(&export(model).1)?)
}
