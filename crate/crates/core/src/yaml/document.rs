//! Structural schema of domain and problem files. Expression texts are kept
//! as strings here; typing happens during instantiation.

use super::YamlError;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};
use serde_yaml::{Mapping, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostType {
    Integer,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduce {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariableType {
    Element,
    Set,
    Integer,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreferenceType {
    Less,
    Greater,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableType {
    Integer,
    Continuous,
    Bool,
    Element,
    Set,
}

/// Reads any YAML scalar as text, so that `cost: 0` and `effect: {i: 3}` work.
fn text<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    scalar_text(Value::deserialize(d)?).map_err(de::Error::custom)
}

fn texts<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    Vec::<Value>::deserialize(d)?
        .into_iter()
        .map(|v| scalar_text(v).map_err(de::Error::custom))
        .collect()
}

fn scalar_text(value: Value) -> Result<String, String> {
    match value {
        Value::String(s) => Ok(s),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(format!("expected an expression string, got {:?}", other)),
    }
}

fn effects<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(String, String)>, D::Error> {
    let mapping = Mapping::deserialize(d)?;
    mapping
        .into_iter()
        .map(|(k, v)| {
            let k = scalar_text(k).map_err(de::Error::custom)?;
            Ok((k, scalar_text(v).map_err(de::Error::custom)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DomainDocument {
    pub cost_type: CostType,
    pub reduce: Reduce,
    /// With `max` costs: all costs are nonnegative, so the identity is 0.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub nonnegative_costs: bool,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub state_variables: Vec<VariableDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<TableDocument>,
    #[serde(default)]
    pub transitions: Vec<TransitionDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintDocument>,
    #[serde(default)]
    pub base_cases: Vec<BaseCaseDocument>,
    #[serde(default, deserialize_with = "texts", skip_serializing_if = "Vec::is_empty")]
    pub dual_bounds: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDocument {
    pub name: String,
    #[serde(rename = "type")]
    pub kind: VariableType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preference: Option<PreferenceType>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub name: String,
    #[serde(rename = "type")]
    pub kind: TableType,
    #[serde(default)]
    pub args: Vec<String>,
    /// Universe of the values of a set table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    /// Value for keys the problem file leaves out.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<Value>,
}

/// `name` ranges over an object type, or over the members of a set variable.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterDocument {
    pub name: String,
    pub object: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<ParameterDocument>,
    #[serde(default, deserialize_with = "texts", skip_serializing_if = "Vec::is_empty")]
    pub preconditions: Vec<String>,
    #[serde(default, deserialize_with = "effects", serialize_with = "write_effects")]
    pub effect: Vec<(String, String)>,
    #[serde(default, deserialize_with = "optional_text", skip_serializing_if = "Option::is_none")]
    pub cost: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub forced: bool,
}

fn optional_text<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    text(d).map(Some)
}

fn write_effects<S: serde::Serializer>(effects: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    let mapping: Mapping = effects
        .iter()
        .map(|(k, v)| (Value::String(k.clone()), Value::String(v.clone())))
        .collect();
    mapping.serialize(s)
}

/// A condition, or a scheme of conditions with one bound parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ConstraintDocument {
    Plain(String),
    Scheme {
        condition: String,
        forall: ParameterDocument,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFields {
    #[serde(deserialize_with = "text")]
    condition: String,
    #[serde(default)]
    forall: Option<Forall>,
}

/// `forall` is a map, or a list holding exactly one map.
#[derive(Deserialize)]
#[serde(untagged)]
enum Forall {
    One(ParameterDocument),
    List(Vec<ParameterDocument>),
}

impl<'de> Deserialize<'de> for ConstraintDocument {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let value = Value::deserialize(d)?;
        if let Value::Mapping(_) = value {
            let fields: SchemeFields = serde_yaml::from_value(value).map_err(de::Error::custom)?;
            return match fields.forall {
                None => Ok(ConstraintDocument::Plain(fields.condition)),
                Some(Forall::One(p)) => Ok(ConstraintDocument::Scheme {
                    condition: fields.condition,
                    forall: p,
                }),
                Some(Forall::List(mut list)) if list.len() == 1 => Ok(ConstraintDocument::Scheme {
                    condition: fields.condition,
                    forall: list.remove(0),
                }),
                Some(Forall::List(list)) => Err(de::Error::custom(format!(
                    "forall binds exactly one parameter, got {}",
                    list.len()
                ))),
            };
        }
        scalar_text(value).map(ConstraintDocument::Plain).map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BaseCaseDocument {
    #[serde(deserialize_with = "texts")]
    pub conditions: Vec<String>,
    #[serde(deserialize_with = "text")]
    pub cost: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default)]
    pub object_numbers: BTreeMap<String, usize>,
    /// Variable name to value; sets are lists of indices.
    #[serde(default)]
    pub target: Mapping,
    /// Table name to its value (nullary), or a map from index (or index
    /// list) to value.
    #[serde(default, skip_serializing_if = "Mapping::is_empty")]
    pub table_values: Mapping,
}

/// Parses YAML text, treating an empty document as an empty mapping.
fn from_text<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, YamlError> {
    let value: Value = serde_yaml::from_str(text)?;
    let value = match value {
        Value::Null => Value::Mapping(Mapping::new()),
        v => v,
    };
    Ok(serde_yaml::from_value(value)?)
}

pub fn parse_domain(text: &str) -> Result<DomainDocument, YamlError> {
    from_text(text)
}

pub fn parse_problem(text: &str) -> Result<ProblemDocument, YamlError> {
    from_text(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_domain_names_the_missing_key() {
        let e = parse_domain("").unwrap_err().to_string();
        assert!(e.contains("cost_type"), "{}", e);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = parse_domain("cost_type: integer\nreduce: min\ndual_bound: [0]\n")
            .unwrap_err()
            .to_string();
        assert!(e.contains("dual_bound"), "{}", e);
        let e = parse_problem("object_number: {a: 1}\n").unwrap_err().to_string();
        assert!(e.contains("object_number"), "{}", e);
    }

    #[test]
    fn bad_enum_value() {
        let e = parse_domain("cost_type: integer\nreduce: median\n").unwrap_err().to_string();
        assert!(e.contains("median"), "{}", e);
    }

    #[test]
    fn scalars_and_constraint_forms() {
        let d = parse_domain(
            "cost_type: integer\nreduce: min\n\
             constraints:\n  - (>= 1 0)\n  - condition: (is_in j U)\n    forall: {name: j, object: U}\n  - condition: true\n    forall: [{name: k, object: U}]\n\
             base_cases: [{conditions: [], cost: 0}]\n",
        )
        .unwrap();
        assert_eq!(d.constraints[0], ConstraintDocument::Plain("(>= 1 0)".into()));
        assert!(matches!(&d.constraints[1], ConstraintDocument::Scheme { forall, .. } if forall.object == "U"));
        assert!(matches!(&d.constraints[2], ConstraintDocument::Scheme { condition, .. } if condition == "true"));
        assert_eq!(d.base_cases[0].cost, "0");
    }
}
