//! Instance records, raw-text parsers and DyPDL model builders for eleven
//! combinatorial optimization problem classes.

mod binpacking;
mod cvrp;
mod graphclear;
mod mdkp;
mod mosp;
mod mpdtsp;
mod optw;
mod parse;
pub mod random;
mod salbp1;
mod talent;
mod tsptw;
mod wt;

pub use binpacking::{build_binpacking, BinPackingInstance};
pub use cvrp::{build_cvrp, CvrpInstance};
pub use graphclear::{build_graphclear, GraphClearInstance};
pub use mdkp::{build_mdkp, MdkpInstance};
pub use mosp::{build_mosp, MospInstance};
pub use mpdtsp::{build_mpdtsp, Commodity, MpdtspInstance};
pub use optw::{build_optw, OptwInstance};
pub use parse::parse_instance;
pub use salbp1::{build_salbp1, Salbp1Instance};
pub use talent::{build_talent, TalentInstance};
pub use tsptw::{build_tsptw, TsptwInstance};
pub use wt::{build_wt, WtInstance};

use crate::expr::{
    ComparisonOperator, Condition, ElementExpression, EvalError, NumericExpression, Table,
    TableData, TableId, TableRegistry,
};
use crate::model::{Model, ModelError, StateMetadata};
use crate::state::Set;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchmarkError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("unknown problem class `{0}`")]
    UnknownClass(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The benchmark problem classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemClass {
    Tsptw,
    Cvrp,
    Mpdtsp,
    Optw,
    Mdkp,
    BinPacking,
    Salbp1,
    Wt,
    Talent,
    Mosp,
    GraphClear,
}

impl ProblemClass {
    pub const ALL: [ProblemClass; 11] = [
        ProblemClass::Tsptw,
        ProblemClass::Cvrp,
        ProblemClass::Mpdtsp,
        ProblemClass::Optw,
        ProblemClass::Mdkp,
        ProblemClass::BinPacking,
        ProblemClass::Salbp1,
        ProblemClass::Wt,
        ProblemClass::Talent,
        ProblemClass::Mosp,
        ProblemClass::GraphClear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemClass::Tsptw => "tsptw",
            ProblemClass::Cvrp => "cvrp",
            ProblemClass::Mpdtsp => "mpdtsp",
            ProblemClass::Optw => "optw",
            ProblemClass::Mdkp => "mdkp",
            ProblemClass::BinPacking => "binpacking",
            ProblemClass::Salbp1 => "salbp1",
            ProblemClass::Wt => "wt",
            ProblemClass::Talent => "talent",
            ProblemClass::Mosp => "mosp",
            ProblemClass::GraphClear => "graphclear",
        }
    }
}

impl fmt::Display for ProblemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemClass {
    type Err = BenchmarkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemClass::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| BenchmarkError::UnknownClass(s.to_string()))
    }
}

/// A parsed instance of any class.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Tsptw(TsptwInstance),
    Cvrp(CvrpInstance),
    Mpdtsp(MpdtspInstance),
    Optw(OptwInstance),
    Mdkp(MdkpInstance),
    BinPacking(BinPackingInstance),
    Salbp1(Salbp1Instance),
    Wt(WtInstance),
    Talent(TalentInstance),
    Mosp(MospInstance),
    GraphClear(GraphClearInstance),
}

impl Instance {
    pub fn class(&self) -> ProblemClass {
        match self {
            Instance::Tsptw(_) => ProblemClass::Tsptw,
            Instance::Cvrp(_) => ProblemClass::Cvrp,
            Instance::Mpdtsp(_) => ProblemClass::Mpdtsp,
            Instance::Optw(_) => ProblemClass::Optw,
            Instance::Mdkp(_) => ProblemClass::Mdkp,
            Instance::BinPacking(_) => ProblemClass::BinPacking,
            Instance::Salbp1(_) => ProblemClass::Salbp1,
            Instance::Wt(_) => ProblemClass::Wt,
            Instance::Talent(_) => ProblemClass::Talent,
            Instance::Mosp(_) => ProblemClass::Mosp,
            Instance::GraphClear(_) => ProblemClass::GraphClear,
        }
    }

    pub fn build(&self) -> Result<Model, BenchmarkError> {
        match self {
            Instance::Tsptw(i) => build_tsptw(i),
            Instance::Cvrp(i) => build_cvrp(i),
            Instance::Mpdtsp(i) => build_mpdtsp(i),
            Instance::Optw(i) => build_optw(i),
            Instance::Mdkp(i) => build_mdkp(i),
            Instance::BinPacking(i) => build_binpacking(i),
            Instance::Salbp1(i) => build_salbp1(i),
            Instance::Wt(i) => build_wt(i),
            Instance::Talent(i) => build_talent(i),
            Instance::Mosp(i) => build_mosp(i),
            Instance::GraphClear(i) => build_graphclear(i),
        }
    }
}

// ---------------------------------------------------------------------------
// helpers shared by the builders

fn invalid(message: impl Into<String>) -> BenchmarkError {
    BenchmarkError::Invalid(message.into())
}

fn square(name: &str, matrix: &[Vec<i64>], n: usize) -> Result<(), BenchmarkError> {
    if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(invalid(format!("{} must be a {}x{} matrix", name, n, n)));
    }
    Ok(())
}

fn nonnegative(name: &str, values: impl IntoIterator<Item = i64>) -> Result<(), BenchmarkError> {
    if values.into_iter().any(|v| v < 0) {
        return Err(invalid(format!("{} must be nonnegative", name)));
    }
    Ok(())
}

/// All-pairs shortest travel times (Floyd–Warshall).
fn shortest_paths(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut d = c.to_vec();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = row[i].min(0);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].saturating_add(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// `min_{k ≠ j} c[k][j]`, or 0 when there is no other node.
fn min_in(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    (0..n)
        .map(|j| (0..n).filter(|&k| k != j).map(|k| c[k][j]).min().unwrap_or(0))
        .collect()
}

/// `min_{k ≠ j} c[j][k]`, or 0 when there is no other node.
fn min_out(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    (0..n)
        .map(|j| (0..n).filter(|&k| k != j).map(|k| c[j][k]).min().unwrap_or(0))
        .collect()
}

/// Margin added before flooring an efficiency bound computed in floating
/// point, so rounding can never push it below the exact value.
const FLOOR_MARGIN: f64 = 1e-6;

/// Adds tables sized by the object counts declared in the metadata.
struct TableBuilder<'a> {
    metadata: &'a StateMetadata,
    registry: TableRegistry,
}

impl<'a> TableBuilder<'a> {
    fn new(metadata: &'a StateMetadata) -> Self {
        TableBuilder {
            metadata,
            registry: TableRegistry::new(),
        }
    }

    fn add(&mut self, name: &str, args: &[usize], data: TableData, value_object: Option<usize>) -> TableId {
        let table = Table {
            name: name.to_string(),
            arg_objects: args.to_vec(),
            arg_sizes: args.iter().map(|&o| self.metadata.objects[o].count).collect(),
            value_object,
            data,
        };
        self.registry
            .add(table)
            .unwrap_or_else(|e| panic!("builder produced a malformed table: {}", e))
    }

    fn integer(&mut self, name: &str, args: &[usize], data: Vec<i64>) -> TableId {
        self.add(name, args, TableData::Integer(data), None)
    }

    fn continuous(&mut self, name: &str, args: &[usize], data: Vec<f64>) -> TableId {
        self.add(name, args, TableData::Continuous(data), None)
    }

    fn boolean(&mut self, name: &str, args: &[usize], data: Vec<bool>) -> TableId {
        self.add(name, args, TableData::Bool(data), None)
    }

    fn set(&mut self, name: &str, args: &[usize], object: usize, data: Vec<Set>) -> TableId {
        let capacity = self.metadata.objects[object].count;
        self.add(name, args, TableData::Set(data, capacity), Some(object))
    }

    fn finish(self) -> TableRegistry {
        self.registry
    }
}

fn flatten<T: Clone>(matrix: &[Vec<T>]) -> Vec<T> {
    matrix.iter().flatten().cloned().collect()
}

fn el(index: usize) -> ElementExpression {
    ElementExpression::Constant(index)
}

fn lookup(table: TableId, args: Vec<ElementExpression>) -> NumericExpression {
    NumericExpression::table(table, args)
}

fn cmp(
    op: ComparisonOperator,
    lhs: impl Into<NumericExpression>,
    rhs: impl Into<NumericExpression>,
) -> Condition {
    Condition::numeric(op, lhs, rhs)
}

fn indicator(condition: Condition) -> NumericExpression {
    NumericExpression::if_then_else(condition, 1, 0)
}

/// Whether the predecessor relation `predecessors[v]` contains a cycle.
fn has_cycle(predecessors: &[Vec<usize>]) -> bool {
    // 0 = unvisited, 1 = on stack, 2 = done
    fn visit(v: usize, p: &[Vec<usize>], mark: &mut [u8]) -> bool {
        match mark[v] {
            1 => return true,
            2 => return false,
            _ => {}
        }
        mark[v] = 1;
        if p[v].iter().any(|&w| visit(w, p, mark)) {
            return true;
        }
        mark[v] = 2;
        false
    }
    let mut mark = vec![0; predecessors.len()];
    (0..predecessors.len()).any(|v| visit(v, predecessors, &mut mark))
}
