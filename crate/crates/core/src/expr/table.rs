use super::{EvalError, Number};
use crate::state::Set;
use std::collections::HashMap;

/// Handle to a table in a [`TableRegistry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableId(pub usize);

/// The kind of constant a table stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Integer,
    Continuous,
    Bool,
    Element,
    Set,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Integer => "integer",
            TableKind::Continuous => "continuous",
            TableKind::Bool => "bool",
            TableKind::Element => "element",
            TableKind::Set => "set",
        }
    }
}

/// Dense row-major table contents.
#[derive(Debug, Clone, PartialEq)]
pub enum TableData {
    Integer(Vec<i64>),
    Continuous(Vec<f64>),
    Bool(Vec<bool>),
    Element(Vec<usize>),
    /// Set values with the size of their object universe.
    Set(Vec<Set>, usize),
}

impl TableData {
    pub fn kind(&self) -> TableKind {
        match self {
            TableData::Integer(_) => TableKind::Integer,
            TableData::Continuous(_) => TableKind::Continuous,
            TableData::Bool(_) => TableKind::Bool,
            TableData::Element(_) => TableKind::Element,
            TableData::Set(..) => TableKind::Set,
        }
    }

    fn len(&self) -> usize {
        match self {
            TableData::Integer(v) => v.len(),
            TableData::Continuous(v) => v.len(),
            TableData::Bool(v) => v.len(),
            TableData::Element(v) => v.len(),
            TableData::Set(v, _) => v.len(),
        }
    }
}

/// A named table of constants indexed by a tuple of object indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    /// Object type of each argument position.
    pub arg_objects: Vec<usize>,
    /// Number of objects for each argument position.
    pub arg_sizes: Vec<usize>,
    /// Object type of set values (set tables only).
    pub value_object: Option<usize>,
    pub data: TableData,
}

impl Table {
    pub fn arity(&self) -> usize {
        self.arg_sizes.len()
    }

    pub fn kind(&self) -> TableKind {
        self.data.kind()
    }

    /// Flat row-major offset of `args`, checking each position against its object count.
    pub fn offset(&self, args: &[usize]) -> Result<usize, EvalError> {
        if args.len() != self.arg_sizes.len() {
            return Err(EvalError::TableArity {
                table: self.name.clone(),
                expected: self.arg_sizes.len(),
                found: args.len(),
            });
        }
        let mut offset = 0;
        for (position, (&index, &size)) in args.iter().zip(&self.arg_sizes).enumerate() {
            if index >= size {
                return Err(EvalError::TableIndexOutOfRange {
                    table: self.name.clone(),
                    position,
                    index,
                    size,
                });
            }
            offset = offset * size + index;
        }
        Ok(offset)
    }

    pub fn number(&self, args: &[usize]) -> Result<Number, EvalError> {
        let offset = self.offset(args)?;
        match &self.data {
            TableData::Integer(v) => Ok(Number::Int(v[offset])),
            TableData::Continuous(v) => Ok(Number::Real(v[offset])),
            TableData::Element(v) => Ok(Number::Int(v[offset] as i64)),
            _ => Err(self.kind_error("numeric")),
        }
    }

    pub fn element(&self, args: &[usize]) -> Result<usize, EvalError> {
        let offset = self.offset(args)?;
        match &self.data {
            TableData::Element(v) => Ok(v[offset]),
            _ => Err(self.kind_error("element")),
        }
    }

    pub fn boolean(&self, args: &[usize]) -> Result<bool, EvalError> {
        let offset = self.offset(args)?;
        match &self.data {
            TableData::Bool(v) => Ok(v[offset]),
            _ => Err(self.kind_error("bool")),
        }
    }

    pub fn set(&self, args: &[usize]) -> Result<&Set, EvalError> {
        let offset = self.offset(args)?;
        match &self.data {
            TableData::Set(v, _) => Ok(&v[offset]),
            _ => Err(self.kind_error("set")),
        }
    }

    /// Universe size of the set values of a set table.
    pub fn set_capacity(&self) -> Option<usize> {
        match &self.data {
            TableData::Set(_, capacity) => Some(*capacity),
            _ => None,
        }
    }

    fn kind_error(&self, expected: &'static str) -> EvalError {
        EvalError::TableKindMismatch {
            table: self.name.clone(),
            expected,
            found: self.kind().name(),
        }
    }
}

/// Immutable collection of named constant tables.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TableRegistry {
    tables: Vec<Table>,
    names: HashMap<String, TableId>,
}

impl TableRegistry {
    pub fn new() -> TableRegistry {
        TableRegistry::default()
    }

    /// Adds a table. Fails on a duplicate name or a size mismatch between the
    /// data and the product of the argument sizes.
    pub fn add(&mut self, table: Table) -> Result<TableId, EvalError> {
        if self.names.contains_key(&table.name) {
            return Err(EvalError::DuplicateTable(table.name));
        }
        let expected: usize = table.arg_sizes.iter().product();
        if table.data.len() != expected {
            return Err(EvalError::TableShape {
                table: table.name,
                expected,
                found: table.data.len(),
            });
        }
        if table.arg_objects.len() != table.arg_sizes.len() {
            return Err(EvalError::TableArity {
                table: table.name,
                expected: table.arg_sizes.len(),
                found: table.arg_objects.len(),
            });
        }
        let id = TableId(self.tables.len());
        self.names.insert(table.name.clone(), id);
        self.tables.push(table);
        Ok(id)
    }

    pub fn get(&self, id: TableId) -> Result<&Table, EvalError> {
        self.tables.get(id.0).ok_or(EvalError::UnknownTable(id.0))
    }

    pub fn id(&self, name: &str) -> Option<TableId> {
        self.names.get(name).copied()
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_table() -> Table {
        Table {
            name: "c".into(),
            arg_objects: vec![0, 0],
            arg_sizes: vec![3, 3],
            value_object: None,
            data: TableData::Integer(vec![0, 2, 3, 2, 0, 1, 3, 1, 0]),
        }
    }

    #[test]
    fn row_major_lookup() {
        let mut registry = TableRegistry::new();
        let id = registry.add(c_table()).unwrap();
        let table = registry.get(id).unwrap();
        assert_eq!(table.number(&[1, 2]), Ok(Number::Int(1)));
        assert_eq!(table.number(&[2, 0]), Ok(Number::Int(3)));
    }

    #[test]
    fn out_of_range_and_arity_errors() {
        let table = c_table();
        assert!(matches!(
            table.number(&[3, 0]),
            Err(EvalError::TableIndexOutOfRange { position: 0, .. })
        ));
        assert!(matches!(
            table.number(&[1]),
            Err(EvalError::TableArity { expected: 2, found: 1, .. })
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut registry = TableRegistry::new();
        registry.add(c_table()).unwrap();
        assert_eq!(
            registry.add(c_table()),
            Err(EvalError::DuplicateTable("c".into()))
        );
    }
}
