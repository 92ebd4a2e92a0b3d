use super::document::*;
use super::grammar::Scope;
use super::sexpr::{self, SExpr};
use super::{document_error, YamlError};
use crate::expr::{Condition, Number, NumericExpression, NumericType, SetExpression, Table, TableData, TableRegistry};
use crate::model::{
    BaseCase, CostOperator, CostStructure, Direction, Effect, Model, Preference, StateMetadata,
    Transition, VariableKind,
};
use crate::state::{Set, State, Value};
use serde_yaml::Value as Yaml;

/// Parses and instantiates a domain and a problem file.
pub fn load(domain: &str, problem: &str) -> Result<Model, YamlError> {
    instantiate(&parse_domain(domain)?, &parse_problem(problem)?)
}

fn expression<T>(
    location: impl Fn() -> String,
    text: &str,
    read: impl FnOnce(&SExpr) -> Result<T, super::ExpressionError>,
) -> Result<T, YamlError> {
    let wrap = |source| YamlError::Expression {
        location: location(),
        text: text.to_string(),
        source,
    };
    let e = sexpr::parse(text).map_err(wrap)?;
    read(&e).map_err(wrap)
}

fn integer(value: &Yaml, what: &dyn Fn() -> String) -> Result<i64, YamlError> {
    value
        .as_i64()
        .ok_or_else(|| document_error(format!("{}: expected an integer, got {}", what(), show(value))))
}

fn index(value: &Yaml, size: usize, what: &dyn Fn() -> String) -> Result<usize, YamlError> {
    match value.as_u64() {
        Some(v) if (v as usize) < size => Ok(v as usize),
        _ => Err(document_error(format!(
            "{}: expected an index below {}, got {}",
            what(),
            size,
            show(value)
        ))),
    }
}

fn real(value: &Yaml, what: &dyn Fn() -> String) -> Result<f64, YamlError> {
    value
        .as_f64()
        .ok_or_else(|| document_error(format!("{}: expected a number, got {}", what(), show(value))))
}

fn set(value: &Yaml, size: usize, what: &dyn Fn() -> String) -> Result<Set, YamlError> {
    let items = value
        .as_sequence()
        .ok_or_else(|| document_error(format!("{}: expected a list of indices, got {}", what(), show(value))))?;
    let mut s = Set::with_capacity(size);
    for item in items {
        s.insert(index(item, size, what)?);
    }
    Ok(s)
}

fn show(value: &Yaml) -> String {
    serde_yaml::to_string(value)
        .map(|s| s.trim().to_string())
        .unwrap_or_else(|_| format!("{:?}", value))
}

/// Elements a parameter bound to a set variable ranges over. When the variable
/// only ever shrinks by `(remove x V)`, members of its target value suffice;
/// otherwise the whole universe is used.
fn set_domain(domain: &DomainDocument, variable: &str, target: &Set) -> Vec<usize> {
    let only_removes = domain.transitions.iter().all(|t| {
        t.effect.iter().filter(|(v, _)| v == variable).all(|(_, text)| {
            matches!(sexpr::parse(text), Ok(e) if matches!(
                e.call(),
                Some(("remove", [_, SExpr::Atom(v)])) if v == variable
            ))
        })
    });
    if only_removes {
        target.ones().collect()
    } else {
        (0..target.len()).collect()
    }
}

/// A resolved parameter: its name, its values, and the set variable whose
/// membership it requires, if any.
struct Binding {
    name: String,
    values: Vec<usize>,
    member_of: Option<usize>,
}

fn bind(
    parameter: &ParameterDocument,
    domain: &DomainDocument,
    metadata: &StateMetadata,
    target: &State,
) -> Result<Binding, YamlError> {
    if let Some(o) = metadata.object_index(&parameter.object) {
        return Ok(Binding {
            name: parameter.name.clone(),
            values: (0..metadata.objects[o].count).collect(),
            member_of: None,
        });
    }
    match metadata.variable_index(&parameter.object) {
        Some(v) if metadata.variables[v].kind == VariableKind::Set => {
            let s = target.set(v)?;
            Ok(Binding {
                name: parameter.name.clone(),
                values: set_domain(domain, &parameter.object, s),
                member_of: Some(v),
            })
        }
        _ => Err(document_error(format!(
            "parameter `{}`: `{}` is neither an object type nor a set variable",
            parameter.name, parameter.object
        ))),
    }
}

/// Every combination of parameter values, first parameter outermost.
fn combinations(bindings: &[Binding]) -> Vec<Vec<usize>> {
    let mut result = vec![Vec::new()];
    for b in bindings {
        result = result
            .into_iter()
            .flat_map(|prefix| {
                b.values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    result
}

fn membership(bindings: &[Binding], values: &[usize]) -> Vec<Condition> {
    bindings
        .iter()
        .zip(values)
        .filter_map(|(b, &v)| b.member_of.map(|s| SetExpression::Variable(s).contains(v)))
        .collect()
}

pub fn instantiate(domain: &DomainDocument, problem: &ProblemDocument) -> Result<Model, YamlError> {
    let mut metadata = StateMetadata::new();
    for name in &domain.objects {
        let count = problem
            .object_numbers
            .get(name)
            .ok_or_else(|| document_error(format!("object_numbers: missing count for `{}`", name)))?;
        metadata.add_object(name, *count)?;
    }
    if let Some(extra) = problem.object_numbers.keys().find(|k| metadata.object_index(k).is_none()) {
        return Err(document_error(format!("object_numbers: unknown object type `{}`", extra)));
    }
    let object = |owner: &str, name: &Option<String>, metadata: &StateMetadata| -> Result<usize, YamlError> {
        let name = name
            .as_ref()
            .ok_or_else(|| document_error(format!("`{}` needs an object type", owner)))?;
        metadata
            .object_index(name)
            .ok_or_else(|| document_error(format!("`{}`: unknown object type `{}`", owner, name)))
    };
    for v in &domain.state_variables {
        let preference = match v.preference {
            None => Preference::None,
            Some(PreferenceType::Less) => Preference::Less,
            Some(PreferenceType::Greater) => Preference::Greater,
        };
        match v.kind {
            VariableType::Element => {
                let o = object(&v.name, &v.object, &metadata)?;
                metadata.add_element_variable(&v.name, o, preference)?;
            }
            VariableType::Set => {
                if preference != Preference::None {
                    return Err(document_error(format!("set variable `{}` cannot have a preference", v.name)));
                }
                let o = object(&v.name, &v.object, &metadata)?;
                metadata.add_set_variable(&v.name, o)?;
            }
            VariableType::Integer => {
                metadata.add_integer_variable(&v.name, preference)?;
            }
            VariableType::Continuous => {
                metadata.add_continuous_variable(&v.name, preference)?;
            }
        }
    }

    let tables = tables(domain, problem, &metadata)?;
    let target = target(problem, &metadata)?;

    let cost_type = match domain.cost_type {
        CostType::Integer => NumericType::Integer,
        CostType::Continuous => NumericType::Continuous,
    };
    let direction = match domain.reduce {
        Reduce::Min => Direction::Minimize,
        Reduce::Max => Direction::Maximize,
    };

    let mut transitions = Vec::new();
    let mut operator: Option<CostOperator> = None;
    for doc in &domain.transitions {
        let bindings = doc
            .parameters
            .iter()
            .map(|p| bind(p, domain, &metadata, &target))
            .collect::<Result<Vec<_>, _>>()?;
        let cost_text = doc.cost.as_deref().unwrap_or("cost");
        for values in combinations(&bindings) {
            let mut scope = Scope::new(&metadata, &tables);
            let mut name = doc.name.clone();
            for (b, v) in bindings.iter().zip(&values) {
                scope = scope.with_parameter(&b.name, *v);
                name.push_str(&format!(" {}", v));
            }
            let mut t = Transition::new(name.clone());
            t.forced = doc.forced;
            t.preconditions = membership(&bindings, &values);
            for (k, text) in doc.preconditions.iter().enumerate() {
                let location = || format!("transition `{}` precondition {}", name, k);
                t.preconditions.push(expression(location, text, |e| scope.condition(e))?);
            }
            for (variable, text) in &doc.effect {
                let location = || format!("transition `{}` effect on `{}`", name, variable);
                let v = metadata
                    .variable_index(variable)
                    .ok_or_else(|| document_error(format!("{}: unknown state variable", location())))?;
                if t.effects.iter().any(|(u, _)| *u == v) {
                    return Err(document_error(format!("{}: duplicate effect", location())));
                }
                let effect = match metadata.variables[v].kind {
                    VariableKind::Element => Effect::Element(expression(location, text, |e| scope.element(e))?),
                    VariableKind::Set => Effect::Set(expression(location, text, |e| scope.set(e))?),
                    VariableKind::Integer | VariableKind::Continuous => {
                        Effect::Numeric(expression(location, text, |e| scope.numeric(e))?)
                    }
                };
                t.effects.push((v, effect));
            }
            let location = || format!("transition `{}` cost", name);
            let (op, w) = expression(location, cost_text, |e| scope.transition_cost(e))?;
            match (op, operator) {
                (Some(op), None) => operator = Some(op),
                (Some(op), Some(previous)) if op != previous => {
                    return Err(document_error(format!(
                        "{}: mixes `+` and `max` costs across transitions",
                        location()
                    )))
                }
                _ => {}
            }
            t.cost = match op {
                Some(_) => w,
                // a bare `cost`: the weight is the identity, fixed below
                None => NumericExpression::Cost,
            };
            transitions.push(t);
        }
    }

    let cost = match operator.unwrap_or(CostOperator::Add) {
        CostOperator::Add => {
            if domain.nonnegative_costs {
                return Err(document_error("nonnegative_costs applies only to `max` costs"));
            }
            CostStructure::additive(direction, cost_type)
        }
        CostOperator::Max if domain.nonnegative_costs => CostStructure::nonnegative_maximum(direction, cost_type),
        CostOperator::Max => CostStructure::maximum(direction, cost_type),
    };
    for t in &mut transitions {
        if t.cost == NumericExpression::Cost {
            t.cost = NumericExpression::Constant(cost.identity);
        }
    }

    let mut model = Model::new(metadata, tables, target, cost)?;
    model.transitions = transitions;
    let scope = Scope::new(&model.metadata, &model.tables);

    let mut constraints = Vec::new();
    for (k, doc) in domain.constraints.iter().enumerate() {
        let location = || format!("constraint {}", k);
        match doc {
            ConstraintDocument::Plain(text) => {
                constraints.push(expression(location, text, |e| scope.condition(e))?);
            }
            ConstraintDocument::Scheme { condition, forall } => {
                let b = bind(forall, domain, &model.metadata, &model.target)?;
                for &v in &b.values {
                    let scope = scope.clone().with_parameter(&b.name, v);
                    let c = expression(location, condition, |e| scope.condition(e))?;
                    constraints.push(match b.member_of {
                        Some(s) => SetExpression::Variable(s).contains(v).not().or(c),
                        None => c,
                    });
                }
            }
        }
    }

    let mut base_cases = Vec::new();
    for (k, doc) in domain.base_cases.iter().enumerate() {
        let mut conditions = Vec::new();
        for (j, text) in doc.conditions.iter().enumerate() {
            let location = || format!("base case {} condition {}", k, j);
            conditions.push(expression(location, text, |e| scope.condition(e))?);
        }
        let location = || format!("base case {} cost", k);
        base_cases.push(BaseCase::new(conditions, expression(location, &doc.cost, |e| scope.numeric(e))?));
    }

    let mut dual_bounds = Vec::new();
    for (k, text) in domain.dual_bounds.iter().enumerate() {
        let location = || format!("dual bound {}", k);
        dual_bounds.push(expression(location, text, |e| scope.numeric(e))?);
    }

    model.constraints = constraints;
    model.base_cases = base_cases;
    model.dual_bounds = dual_bounds;
    Ok(model)
}

fn tables(domain: &DomainDocument, problem: &ProblemDocument, metadata: &StateMetadata) -> Result<TableRegistry, YamlError> {
    let mut registry = TableRegistry::new();
    for doc in &domain.tables {
        let mut arg_objects = Vec::new();
        for a in &doc.args {
            arg_objects.push(
                metadata
                    .object_index(a)
                    .ok_or_else(|| document_error(format!("table `{}`: unknown object type `{}`", doc.name, a)))?,
            );
        }
        let arg_sizes: Vec<usize> = arg_objects.iter().map(|&o| metadata.objects[o].count).collect();
        let value_object = match (doc.kind, &doc.object) {
            (TableType::Set, name) => Some(
                metadata
                    .object_index(name.as_deref().unwrap_or_default())
                    .ok_or_else(|| document_error(format!("set table `{}` needs a known `object`", doc.name)))?,
            ),
            (_, Some(_)) => {
                return Err(document_error(format!("table `{}`: only set tables take `object`", doc.name)))
            }
            (_, None) => None,
        };
        let entries = entries(doc, problem.table_values.get(doc.name.as_str()), &arg_sizes)?;
        let what = |k: usize| move || format!("table `{}` entry {}", doc.name, k);
        let data = match doc.kind {
            TableType::Integer => TableData::Integer(
                entries.iter().enumerate().map(|(k, v)| integer(v, &what(k))).collect::<Result<_, _>>()?,
            ),
            TableType::Continuous => TableData::Continuous(
                entries.iter().enumerate().map(|(k, v)| real(v, &what(k))).collect::<Result<_, _>>()?,
            ),
            TableType::Bool => TableData::Bool(
                entries
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v.as_bool()
                            .ok_or_else(|| document_error(format!("{}: expected a boolean", what(k)())))
                    })
                    .collect::<Result<_, _>>()?,
            ),
            TableType::Element => TableData::Element(
                entries
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v.as_u64()
                            .map(|v| v as usize)
                            .ok_or_else(|| document_error(format!("{}: expected an element", what(k)())))
                    })
                    .collect::<Result<_, _>>()?,
            ),
            TableType::Set => {
                let size = metadata.objects[value_object.expect("set tables have an object")].count;
                TableData::Set(
                    entries.iter().enumerate().map(|(k, v)| set(v, size, &what(k))).collect::<Result<_, _>>()?,
                    size,
                )
            }
        };
        registry.add(Table {
            name: doc.name.clone(),
            arg_objects,
            arg_sizes,
            value_object,
            data,
        })?;
    }
    if let Some(extra) = problem
        .table_values
        .keys()
        .find(|k| !k.as_str().is_some_and(|k| registry.id(k).is_some()))
    {
        return Err(document_error(format!("table_values: unknown table {}", show(extra))));
    }
    Ok(registry)
}

/// Row-major entries of a table, filling gaps with its default.
fn entries(doc: &TableDocument, values: Option<&Yaml>, sizes: &[usize]) -> Result<Vec<Yaml>, YamlError> {
    let total: usize = sizes.iter().product();
    if sizes.is_empty() {
        return values
            .or(doc.default.as_ref())
            .map(|v| vec![v.clone()])
            .ok_or_else(|| document_error(format!("table `{}` has no value", doc.name)));
    }
    let mut result: Vec<Option<Yaml>> = vec![None; total];
    if let Some(values) = values {
        let mapping = values
            .as_mapping()
            .ok_or_else(|| document_error(format!("table_values: `{}` must be a map", doc.name)))?;
        for (key, value) in mapping {
            let what = || format!("table `{}` key {}", doc.name, show(key));
            let indices: Vec<usize> = match (key, sizes.len()) {
                (Yaml::Sequence(items), n) if items.len() == n => items
                    .iter()
                    .zip(sizes)
                    .map(|(i, &size)| index(i, size, &what))
                    .collect::<Result<_, _>>()?,
                (k, 1) if !k.is_sequence() => vec![index(k, sizes[0], &what)?],
                _ => return Err(document_error(format!("{}: expected {} indices", what(), sizes.len()))),
            };
            let offset = indices.iter().zip(sizes).fold(0, |acc, (&i, &s)| acc * s + i);
            if result[offset].replace(value.clone()).is_some() {
                return Err(document_error(format!("{}: duplicate key", what())));
            }
        }
    }
    result
        .into_iter()
        .map(|v| {
            v.or_else(|| doc.default.clone())
                .ok_or_else(|| document_error(format!("table `{}` is missing entries and has no default", doc.name)))
        })
        .collect()
}

fn target(problem: &ProblemDocument, metadata: &StateMetadata) -> Result<State, YamlError> {
    let mut values = Vec::with_capacity(metadata.variables.len());
    for v in &metadata.variables {
        let value = problem
            .target
            .get(v.name.as_str())
            .ok_or_else(|| document_error(format!("target: missing value for `{}`", v.name)))?;
        let what = || format!("target `{}`", v.name);
        values.push(match v.kind {
            VariableKind::Element => Value::Element(
                value
                    .as_u64()
                    .ok_or_else(|| document_error(format!("{}: expected an element", what())))? as usize,
            ),
            VariableKind::Set => Value::Set(set(value, metadata.universe(values.len()).unwrap_or(0), &what)?),
            VariableKind::Integer => Value::Number(Number::Int(integer(value, &what)?)),
            VariableKind::Continuous => Value::Number(Number::real(real(value, &what)?)?),
        });
    }
    if let Some(extra) = problem
        .target
        .keys()
        .find(|k| !k.as_str().is_some_and(|k| metadata.variable_index(k).is_some()))
    {
        return Err(document_error(format!("target: unknown state variable {}", show(extra))));
    }
    Ok(State::new(values))
}
