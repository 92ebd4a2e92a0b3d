//! Typed reading and printing of the LISP-like expression language.
//!
//! ```text
//! element   := integer | element-variable | parameter | (table args..)
//!            | (+ e e..) | (- e e) | (* e e..) | (/ e e) | (% e e) | (max e e..) | (min e e..)
//!            | (if cond e e)
//! set       := set-variable | (table args..) | (add e s) | (remove e s)
//!            | (union s s..) | (intersection s s..) | (difference s s) | (complement s)
//!            | (reduce_union table args..) | (reduce_intersection table args..)
//!            | (set size e..) | (if cond s s)
//! numeric   := number | numeric-variable | element | (table args..) | cost
//!            | (+ n n..) | (- n n) | (- n) | (* n n..) | (/ n n) | (% n n) | (max n n..) | (min n n..)
//!            | (abs n) | (neg n) | (floor n) | (ceil n) | (cardinality s)
//!            | (sum table args..) | (product table args..) | (reduce_max table args..) | (reduce_min table args..)
//!            | (if cond n n)
//! condition := true | false | (table args..) | (not c) | (and c..) | (or c..)
//!            | (= x y) | (!= x y) | (< x y) | (<= x y) | (> x y) | (>= x y)
//!            | (is_in e s) | (is_subset s s) | (is_empty s)
//! ```
//!
//! A reduction argument is a set expression (ranging over its members) or an
//! element expression. Comparisons are between sets (`=`/`!=` only), then
//! elements, then numbers, whichever reading succeeds first.

use super::sexpr::{self, SExpr};
use super::ExpressionError;
use crate::expr::{
    ArgumentExpression, BinaryOperator, ComparisonOperator, Condition, ElementExpression, Number,
    NumericExpression, ReduceOperator, SetExpression, SetReduceOperator, TableId, TableKind,
    TableRegistry, UnaryOperator,
};
use crate::model::{CostOperator, StateMetadata, VariableKind};
use crate::state::Set;

/// Names visible while reading an expression.
#[derive(Debug, Clone)]
pub struct Scope<'a> {
    metadata: &'a StateMetadata,
    tables: &'a TableRegistry,
    parameters: Vec<(String, usize)>,
}

type Result<T> = std::result::Result<T, ExpressionError>;

fn arity(op: &str, args: &[SExpr], expected: usize) -> Result<()> {
    if args.len() != expected {
        return Err(ExpressionError::Arity {
            operator: op.to_string(),
            expected: expected.to_string(),
            found: args.len(),
        });
    }
    Ok(())
}

fn at_least(op: &str, args: &[SExpr], expected: usize) -> Result<()> {
    if args.len() < expected {
        return Err(ExpressionError::Arity {
            operator: op.to_string(),
            expected: format!("at least {}", expected),
            found: args.len(),
        });
    }
    Ok(())
}

fn binary_operator(op: &str) -> Option<BinaryOperator> {
    Some(match op {
        "+" => BinaryOperator::Add,
        "-" => BinaryOperator::Sub,
        "*" => BinaryOperator::Mul,
        "/" => BinaryOperator::Div,
        "%" => BinaryOperator::Mod,
        "max" => BinaryOperator::Max,
        "min" => BinaryOperator::Min,
        _ => return None,
    })
}

fn variadic(op: BinaryOperator) -> bool {
    matches!(
        op,
        BinaryOperator::Add | BinaryOperator::Mul | BinaryOperator::Max | BinaryOperator::Min
    )
}

fn comparison(op: &str) -> Option<ComparisonOperator> {
    Some(match op {
        "=" => ComparisonOperator::Eq,
        "!=" => ComparisonOperator::Ne,
        "<" => ComparisonOperator::Lt,
        "<=" => ComparisonOperator::Le,
        ">" => ComparisonOperator::Gt,
        ">=" => ComparisonOperator::Ge,
        _ => return None,
    })
}

fn mismatch(expected: &'static str, e: &SExpr) -> ExpressionError {
    ExpressionError::Type {
        expected,
        text: e.to_string(),
    }
}

impl<'a> Scope<'a> {
    pub fn new(metadata: &'a StateMetadata, tables: &'a TableRegistry) -> Self {
        Scope {
            metadata,
            tables,
            parameters: Vec::new(),
        }
    }

    /// Binds `name` to the object index `value`, shadowing variables.
    pub fn with_parameter(mut self, name: &str, value: usize) -> Self {
        self.parameters.push((name.to_string(), value));
        self
    }

    fn parameter(&self, name: &str) -> Option<usize> {
        self.parameters.iter().rev().find(|(n, _)| n == name).map(|p| p.1)
    }

    fn variable(&self, name: &str) -> Option<(usize, VariableKind)> {
        if self.parameter(name).is_some() {
            return None;
        }
        let index = self.metadata.variable_index(name)?;
        Some((index, self.metadata.variables[index].kind))
    }

    fn table(&self, name: &str) -> Option<(TableId, TableKind, usize)> {
        let id = self.tables.id(name)?;
        let table = self.tables.get(id).ok()?;
        Some((id, table.kind(), table.arity()))
    }

    fn table_call(&self, e: &SExpr, kinds: &[TableKind]) -> Result<Option<(TableId, TableKind, Vec<ElementExpression>)>> {
        let Some((head, args)) = e.call() else {
            return Ok(None);
        };
        let Some((id, kind, n)) = self.table(head) else {
            return Ok(None);
        };
        if !kinds.contains(&kind) {
            return Ok(None);
        }
        arity(head, args, n)?;
        let args = args.iter().map(|a| self.element(a)).collect::<Result<_>>()?;
        Ok(Some((id, kind, args)))
    }

    fn reduce_args(&self, op: &str, args: &[SExpr], kinds: &[TableKind]) -> Result<(TableId, Vec<ArgumentExpression>)> {
        at_least(op, args, 1)?;
        let name = args[0]
            .atom()
            .ok_or_else(|| ExpressionError::UnknownSymbol(args[0].to_string()))?;
        let (id, kind, n) = self
            .table(name)
            .ok_or_else(|| ExpressionError::UnknownSymbol(name.to_string()))?;
        if !kinds.contains(&kind) {
            return Err(mismatch("a table of the right kind", &args[0]));
        }
        arity(op, &args[1..], n)?;
        let rest = args[1..].iter().map(|a| self.argument(a)).collect::<Result<_>>()?;
        Ok((id, rest))
    }

    /// A set expression if the text reads as one, else an element expression.
    pub fn argument(&self, e: &SExpr) -> Result<ArgumentExpression> {
        match self.set(e) {
            Ok(s) => Ok(ArgumentExpression::Set(s)),
            Err(_) => self.element(e).map(ArgumentExpression::Element),
        }
    }

    pub fn element(&self, e: &SExpr) -> Result<ElementExpression> {
        match e {
            SExpr::Atom(a) => {
                if let Some(v) = self.parameter(a) {
                    return Ok(ElementExpression::Constant(v));
                }
                if let Ok(v) = a.parse::<usize>() {
                    return Ok(ElementExpression::Constant(v));
                }
                match self.variable(a) {
                    Some((index, VariableKind::Element)) => Ok(ElementExpression::Variable(index)),
                    Some(_) => Err(mismatch("an element expression", e)),
                    None => Err(ExpressionError::UnknownSymbol(a.clone())),
                }
            }
            SExpr::List(_) => {
                if let Some((id, _, args)) = self.table_call(e, &[TableKind::Element])? {
                    return Ok(ElementExpression::Table(id, args));
                }
                let (head, args) = e.call().ok_or_else(|| mismatch("an element expression", e))?;
                if let Some(op) = binary_operator(head) {
                    if variadic(op) {
                        at_least(head, args, 2)?;
                    } else {
                        arity(head, args, 2)?;
                    }
                    let mut items = args.iter().map(|a| self.element(a));
                    let first = items.next().expect("checked arity")?;
                    return items.try_fold(first, |acc, x| {
                        Ok(ElementExpression::Binary(op, Box::new(acc), Box::new(x?)))
                    });
                }
                match head {
                    "if" => {
                        arity(head, args, 3)?;
                        Ok(ElementExpression::if_then_else(
                            self.condition(&args[0])?,
                            self.element(&args[1])?,
                            self.element(&args[2])?,
                        ))
                    }
                    _ if self.table(head).is_some() => Err(mismatch("an element table", e)),
                    _ => Err(ExpressionError::UnknownSymbol(head.to_string())),
                }
            }
        }
    }

    pub fn set(&self, e: &SExpr) -> Result<SetExpression> {
        match e {
            SExpr::Atom(a) => match self.variable(a) {
                Some((index, VariableKind::Set)) => Ok(SetExpression::Variable(index)),
                Some(_) => Err(mismatch("a set expression", e)),
                None => Err(if self.parameter(a).is_some() || a.parse::<usize>().is_ok() {
                    mismatch("a set expression", e)
                } else {
                    ExpressionError::UnknownSymbol(a.clone())
                }),
            },
            SExpr::List(_) => {
                if let Some((id, _, args)) = self.table_call(e, &[TableKind::Set])? {
                    return Ok(SetExpression::Table(id, args));
                }
                let (head, args) = e.call().ok_or_else(|| mismatch("a set expression", e))?;
                let set = |k: usize| self.set(&args[k]);
                match head {
                    "add" | "remove" => {
                        arity(head, args, 2)?;
                        let element = self.element(&args[0])?;
                        let s = set(1)?;
                        Ok(if head == "add" {
                            s.add(element)
                        } else {
                            s.remove(element)
                        })
                    }
                    "union" | "intersection" => {
                        at_least(head, args, 2)?;
                        let mut acc = set(0)?;
                        for k in 1..args.len() {
                            acc = if head == "union" {
                                acc.union(set(k)?)
                            } else {
                                acc.intersection(set(k)?)
                            };
                        }
                        Ok(acc)
                    }
                    "difference" => {
                        arity(head, args, 2)?;
                        Ok(set(0)?.difference(set(1)?))
                    }
                    "complement" => {
                        arity(head, args, 1)?;
                        Ok(set(0)?.complement())
                    }
                    "reduce_union" | "reduce_intersection" => {
                        let op = if head == "reduce_union" {
                            SetReduceOperator::Union
                        } else {
                            SetReduceOperator::Intersection
                        };
                        let (id, rest) = self.reduce_args(head, args, &[TableKind::Set])?;
                        Ok(SetExpression::Reduce(op, id, rest))
                    }
                    "set" => {
                        at_least(head, args, 1)?;
                        let size: usize = args[0]
                            .atom()
                            .and_then(|a| a.parse().ok())
                            .ok_or_else(|| mismatch("a universe size", &args[0]))?;
                        let mut s = Set::with_capacity(size);
                        for a in &args[1..] {
                            let v = match self.element(a)? {
                                ElementExpression::Constant(v) if v < size => v,
                                _ => return Err(mismatch("a constant element of the universe", a)),
                            };
                            s.insert(v);
                        }
                        Ok(SetExpression::Constant(s))
                    }
                    "if" => {
                        arity(head, args, 3)?;
                        Ok(SetExpression::If(
                            Box::new(self.condition(&args[0])?),
                            Box::new(set(1)?),
                            Box::new(set(2)?),
                        ))
                    }
                    _ if self.table(head).is_some() => Err(mismatch("a set table", e)),
                    _ => Err(ExpressionError::UnknownSymbol(head.to_string())),
                }
            }
        }
    }

    pub fn numeric(&self, e: &SExpr) -> Result<NumericExpression> {
        match e {
            SExpr::Atom(a) => {
                if a == "cost" && self.parameter(a).is_none() && self.variable(a).is_none() {
                    return Err(ExpressionError::MisplacedCost);
                }
                if let Ok(v) = a.parse::<i64>() {
                    return Ok(NumericExpression::constant(v));
                }
                if let Ok(v) = a.parse::<f64>() {
                    return Number::real(v)
                        .map(NumericExpression::Constant)
                        .map_err(|_| mismatch("a finite number", e));
                }
                match self.variable(a) {
                    Some((index, VariableKind::Integer | VariableKind::Continuous)) => {
                        Ok(NumericExpression::Variable(index))
                    }
                    _ => self.element(e).map(NumericExpression::from),
                }
            }
            SExpr::List(_) => {
                let numeric_tables = [TableKind::Integer, TableKind::Continuous];
                if let Some((id, _, args)) = self.table_call(e, &numeric_tables)? {
                    return Ok(NumericExpression::Table(id, args));
                }
                if let Some((id, _, args)) = self.table_call(e, &[TableKind::Element])? {
                    return Ok(ElementExpression::Table(id, args).into());
                }
                let (head, args) = e.call().ok_or_else(|| mismatch("a numeric expression", e))?;
                let inner = self;
                if head == "-" && args.len() == 1 {
                    return Ok(NumericExpression::Unary(UnaryOperator::Neg, Box::new(inner.numeric(&args[0])?)));
                }
                if let Some(op) = binary_operator(head) {
                    if variadic(op) {
                        at_least(head, args, 2)?;
                    } else {
                        arity(head, args, 2)?;
                    }
                    let mut items = args.iter().map(|a| inner.numeric(a));
                    let first = items.next().expect("checked arity")?;
                    return items.try_fold(first, |acc, x| {
                        Ok(NumericExpression::Binary(op, Box::new(acc), Box::new(x?)))
                    });
                }
                let unary = match head {
                    "abs" => Some(UnaryOperator::Abs),
                    "neg" => Some(UnaryOperator::Neg),
                    "floor" => Some(UnaryOperator::Floor),
                    "ceil" => Some(UnaryOperator::Ceil),
                    _ => None,
                };
                if let Some(op) = unary {
                    arity(head, args, 1)?;
                    return Ok(NumericExpression::Unary(op, Box::new(inner.numeric(&args[0])?)));
                }
                let reduce = match head {
                    "sum" => Some(ReduceOperator::Sum),
                    "product" => Some(ReduceOperator::Product),
                    "reduce_max" => Some(ReduceOperator::Max),
                    "reduce_min" => Some(ReduceOperator::Min),
                    _ => None,
                };
                if let Some(op) = reduce {
                    let (id, rest) = inner.reduce_args(head, args, &numeric_tables)?;
                    return Ok(NumericExpression::Reduce(op, id, rest));
                }
                match head {
                    "cardinality" => {
                        arity(head, args, 1)?;
                        Ok(NumericExpression::cardinality(inner.set(&args[0])?))
                    }
                    "if" => {
                        arity(head, args, 3)?;
                        Ok(NumericExpression::if_then_else(
                            inner.condition(&args[0])?,
                            inner.numeric(&args[1])?,
                            inner.numeric(&args[2])?,
                        ))
                    }
                    _ => self.element(e).map(NumericExpression::from),
                }
            }
        }
    }

    pub fn condition(&self, e: &SExpr) -> Result<Condition> {
        let inner = self;
        match e {
            SExpr::Atom(a) => match a.as_str() {
                "true" => Ok(Condition::Constant(true)),
                "false" => Ok(Condition::Constant(false)),
                _ => Err(mismatch("a condition", e)),
            },
            SExpr::List(_) => {
                if let Some((id, _, args)) = inner.table_call(e, &[TableKind::Bool])? {
                    return Ok(Condition::Table(id, args));
                }
                let (head, args) = e.call().ok_or_else(|| mismatch("a condition", e))?;
                if let Some(op) = comparison(head) {
                    arity(head, args, 2)?;
                    if matches!(op, ComparisonOperator::Eq | ComparisonOperator::Ne) {
                        if let (Ok(a), Ok(b)) = (inner.set(&args[0]), inner.set(&args[1])) {
                            return Ok(Condition::SetCmp(op, a, b));
                        }
                    }
                    if let (Ok(a), Ok(b)) = (inner.element(&args[0]), inner.element(&args[1])) {
                        return Ok(Condition::ElementCmp(op, a, b));
                    }
                    return Ok(Condition::NumericCmp(op, inner.numeric(&args[0])?, inner.numeric(&args[1])?));
                }
                match head {
                    "not" => {
                        arity(head, args, 1)?;
                        Ok(inner.condition(&args[0])?.not())
                    }
                    "and" | "or" => {
                        let items = args.iter().map(|a| inner.condition(a)).collect::<Result<_>>()?;
                        Ok(if head == "and" {
                            Condition::And(items)
                        } else {
                            Condition::Or(items)
                        })
                    }
                    "is_in" => {
                        arity(head, args, 2)?;
                        Ok(Condition::IsIn(inner.element(&args[0])?, inner.set(&args[1])?))
                    }
                    "is_subset" => {
                        arity(head, args, 2)?;
                        Ok(Condition::IsSubset(inner.set(&args[0])?, inner.set(&args[1])?))
                    }
                    "is_empty" => {
                        arity(head, args, 1)?;
                        Ok(Condition::IsEmpty(inner.set(&args[0])?))
                    }
                    _ if inner.table(head).is_some() => Err(mismatch("a boolean table", e)),
                    _ => Err(ExpressionError::UnknownSymbol(head.to_string())),
                }
            }
        }
    }

    /// Reads a transition cost `(+ w cost)` or `(max w cost)` (or plain
    /// `cost`, meaning `w` is the identity) into its operator and weight `w`.
    pub fn transition_cost(&self, e: &SExpr) -> Result<(Option<CostOperator>, NumericExpression)> {
        if e.atom() == Some("cost") {
            return Ok((None, NumericExpression::constant(0)));
        }
        let shape = || ExpressionError::CostShape(e.to_string());
        let (head, args) = e.call().ok_or_else(shape)?;
        let op = match head {
            "+" => CostOperator::Add,
            "max" => CostOperator::Max,
            _ => return Err(shape()),
        };
        if args.len() != 2 || args[1].atom() != Some("cost") {
            return Err(shape());
        }
        Ok((Some(op), self.numeric(&args[0])?))
    }
}

pub fn parse_text(text: &str) -> Result<SExpr> {
    sexpr::parse(text)
}

// ---------------------------------------------------------------------------
// printing

/// Prints expressions using the names of a model's variables and tables.
pub struct Printer<'a> {
    pub metadata: &'a StateMetadata,
    pub tables: &'a TableRegistry,
}

fn list(head: &str, items: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("({}", head);
    for item in items {
        out.push(' ');
        out.push_str(&item);
    }
    out.push(')');
    out
}

impl Printer<'_> {
    fn variable(&self, index: usize) -> String {
        self.metadata.variables[index].name.clone()
    }

    fn table(&self, id: TableId) -> String {
        self.tables.get(id).map(|t| t.name.clone()).unwrap_or_else(|_| format!("<table {}>", id.0))
    }

    fn call(&self, id: TableId, args: &[ElementExpression]) -> String {
        list(&self.table(id), args.iter().map(|a| self.element(a)))
    }

    fn reduction(&self, head: &str, id: TableId, args: &[ArgumentExpression]) -> String {
        let rest = args.iter().map(|a| match a {
            ArgumentExpression::Element(e) => self.element(e),
            ArgumentExpression::Set(s) => self.set(s),
        });
        list(head, std::iter::once(self.table(id)).chain(rest))
    }

    pub fn element(&self, e: &ElementExpression) -> String {
        match e {
            ElementExpression::Constant(v) => v.to_string(),
            ElementExpression::Variable(i) => self.variable(*i),
            ElementExpression::Table(id, args) => self.call(*id, args),
            ElementExpression::Binary(op, a, b) => list(op.symbol(), [self.element(a), self.element(b)]),
            ElementExpression::If(c, a, b) => list("if", [self.condition(c), self.element(a), self.element(b)]),
        }
    }

    pub fn set(&self, e: &SetExpression) -> String {
        match e {
            SetExpression::Constant(s) => list(
                "set",
                std::iter::once(s.len().to_string()).chain(s.ones().map(|v| v.to_string())),
            ),
            SetExpression::Variable(i) => self.variable(*i),
            SetExpression::Table(id, args) => self.call(*id, args),
            SetExpression::Add(x, s) => list("add", [self.element(x), self.set(s)]),
            SetExpression::Remove(x, s) => list("remove", [self.element(x), self.set(s)]),
            SetExpression::Union(a, b) => list("union", [self.set(a), self.set(b)]),
            SetExpression::Intersection(a, b) => list("intersection", [self.set(a), self.set(b)]),
            SetExpression::Difference(a, b) => list("difference", [self.set(a), self.set(b)]),
            SetExpression::Complement(a) => list("complement", [self.set(a)]),
            SetExpression::Reduce(op, id, args) => {
                let head = match op {
                    SetReduceOperator::Union => "reduce_union",
                    SetReduceOperator::Intersection => "reduce_intersection",
                };
                self.reduction(head, *id, args)
            }
            SetExpression::If(c, a, b) => list("if", [self.condition(c), self.set(a), self.set(b)]),
        }
    }

    pub fn numeric(&self, e: &NumericExpression) -> String {
        match e {
            NumericExpression::Constant(n) => n.to_string(),
            NumericExpression::Variable(i) => self.variable(*i),
            NumericExpression::Element(x) => self.element(x),
            NumericExpression::Table(id, args) => self.call(*id, args),
            NumericExpression::Binary(op, a, b) => list(op.symbol(), [self.numeric(a), self.numeric(b)]),
            NumericExpression::Unary(op, a) => list(op.symbol(), [self.numeric(a)]),
            NumericExpression::Reduce(op, id, args) => {
                let head = match op {
                    ReduceOperator::Sum => "sum",
                    ReduceOperator::Product => "product",
                    ReduceOperator::Max => "reduce_max",
                    ReduceOperator::Min => "reduce_min",
                };
                self.reduction(head, *id, args)
            }
            NumericExpression::Cardinality(s) => list("cardinality", [self.set(s)]),
            NumericExpression::If(c, a, b) => list("if", [self.condition(c), self.numeric(a), self.numeric(b)]),
            NumericExpression::Cost => "cost".to_string(),
        }
    }

    pub fn condition(&self, c: &Condition) -> String {
        match c {
            Condition::Constant(b) => b.to_string(),
            Condition::Not(c) => list("not", [self.condition(c)]),
            Condition::And(items) => list("and", items.iter().map(|c| self.condition(c))),
            Condition::Or(items) => list("or", items.iter().map(|c| self.condition(c))),
            Condition::ElementCmp(op, a, b) => list(op.symbol(), [self.element(a), self.element(b)]),
            Condition::NumericCmp(op, a, b) => list(op.symbol(), [self.numeric(a), self.numeric(b)]),
            Condition::SetCmp(op, a, b) => list(op.symbol(), [self.set(a), self.set(b)]),
            Condition::IsIn(x, s) => list("is_in", [self.element(x), self.set(s)]),
            Condition::IsSubset(a, b) => list("is_subset", [self.set(a), self.set(b)]),
            Condition::IsEmpty(s) => list("is_empty", [self.set(s)]),
            Condition::Table(id, args) => self.call(*id, args),
        }
    }

    pub fn transition_cost(&self, op: CostOperator, w: &NumericExpression) -> String {
        let head = match op {
            CostOperator::Add => "+",
            CostOperator::Max => "max",
        };
        list(head, [self.numeric(w), "cost".to_string()])
    }
}
