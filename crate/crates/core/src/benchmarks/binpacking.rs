use super::{cmp, el, indicator, invalid, lookup, BenchmarkError, TableBuilder};
use crate::expr::{
    ComparisonOperator::*, Condition, NumericExpression, NumericType, ReduceOperator, SetExpression,
    TableId,
};
use crate::model::{
    BaseCase, CostStructure, Direction, Model, NumericVariable, Preference, SetVariable,
    StateMetadata, Transition,
};
use crate::state::{set_from, State, Value};
use crate::Number;

/// Bin packing with bin capacity `capacity`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinPackingInstance {
    pub capacity: i64,
    pub weight: Vec<i64>,
    /// 1 for items heavier than half the capacity.
    pub lb2_a: Vec<f64>,
    /// 1/2 for items of exactly half the capacity.
    pub lb2_b: Vec<f64>,
    /// Weights of the three-way split bound: 1, 2/3, 1/2, 1/3 or 0.
    pub lb3_c: Vec<f64>,
}

impl BinPackingInstance {
    pub fn new(capacity: i64, weight: Vec<i64>) -> Result<Self, BenchmarkError> {
        if capacity <= 0 {
            return Err(invalid("the capacity must be positive"));
        }
        if let Some(i) = weight.iter().position(|&w| w < 0 || w > capacity) {
            return Err(invalid(format!("item {} does not fit in a bin", i)));
        }
        let q = capacity;
        let lb2_a = weight.iter().map(|&w| if 2 * w > q { 1.0 } else { 0.0 }).collect();
        let lb2_b = weight.iter().map(|&w| if 2 * w == q { 0.5 } else { 0.0 }).collect();
        let lb3_c = weight.iter().map(|&w| lb3_weight(w, q)).collect();
        Ok(BinPackingInstance {
            capacity,
            weight,
            lb2_a,
            lb2_b,
            lb3_c,
        })
    }
}

fn lb3_weight(w: i64, q: i64) -> f64 {
    if 3 * w > 2 * q {
        1.0
    } else if 3 * w == 2 * q {
        2.0 / 3.0
    } else if 3 * w > q {
        0.5
    } else if 3 * w == q {
        1.0 / 3.0
    } else {
        0.0
    }
}

/// Tables and expressions shared with the assembly line model.
pub(super) struct PackingBounds {
    weight: TableId,
    a: TableId,
    b2: TableId,
    c6: TableId,
}

impl PackingBounds {
    /// Registers the weight table and the scaled integer coefficient tables of
    /// the two large-item bounds: `2·b` and `6·c` are integral.
    pub(super) fn tables(tables: &mut TableBuilder, object: usize, weight: &[i64], q: i64) -> Self {
        let a = weight.iter().map(|&w| i64::from(2 * w > q)).collect();
        let b2 = weight.iter().map(|&w| i64::from(2 * w == q)).collect();
        let c6 = weight
            .iter()
            .map(|&w| (lb3_weight(w, q) * 6.0).round() as i64)
            .collect();
        PackingBounds {
            weight: tables.integer("w", &[object], weight.to_vec()),
            a: tables.integer("lb2_a", &[object], a),
            b2: tables.integer("lb2_b2", &[object], b2),
            c6: tables.integer("lb3_c6", &[object], c6),
        }
    }

    pub(super) fn weight(&self, item: usize) -> NumericExpression {
        lookup(self.weight, vec![el(item)])
    }

    pub(super) fn add(&self, model: &mut Model, u: SetVariable, r: NumericVariable, q: i64) {
        let sum = |t| NumericExpression::sum(t, SetExpression::from(u));
        let rem = || NumericExpression::from(r);
        model.add_dual_bound(NumericExpression::ceil((sum(self.weight) - r) / q));
        model.add_dual_bound(
            sum(self.a) + NumericExpression::ceil(sum(self.b2) / 2)
                - indicator(cmp(Ge, rem() * 2, q)),
        );
        model.add_dual_bound(
            NumericExpression::ceil(sum(self.c6) / 6) - indicator(cmp(Ge, rem() * 3, q)),
        );
    }
}

pub fn build_binpacking(instance: &BinPackingInstance) -> Result<Model, BenchmarkError> {
    let n = instance.weight.len();
    let q = instance.capacity;
    let mut meta = StateMetadata::new();
    let item = meta.add_object("item", n)?;
    let u = meta.add_set_variable("U", item)?;
    let r = meta.add_integer_variable("r", Preference::Greater)?;
    let k = meta.add_element_variable("k", item, Preference::Less)?;

    let mut tables = TableBuilder::new(&meta);
    let bounds = PackingBounds::tables(&mut tables, item, &instance.weight, q);
    let tables = tables.finish();

    let target = State::new(vec![
        Value::Set(set_from(n, 0..n)),
        Value::Number(Number::Int(0)),
        Value::Element(0),
    ]);
    let cost = CostStructure::additive(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let unpacked = || SetExpression::from(u);

    // no unpacked item fits in the current bin
    let full = Condition::And(vec![
        unpacked().is_empty().not(),
        cmp(
            Lt,
            r,
            NumericExpression::reduce(ReduceOperator::Min, bounds.weight, vec![unpacked().into()]),
        ),
    ]);
    for i in 0..n {
        model.add_transition(
            Transition::new(format!("open {}", i))
                .precondition(unpacked().contains(i))
                .precondition(Condition::element(Ge, i, k))
                .precondition(full.clone())
                .set_effect(u, unpacked().remove(i))
                .numeric_effect(r, NumericExpression::constant(q) - bounds.weight(i))
                .element_effect(k, crate::ElementExpression::from(k) + 1)
                .with_cost(1)
                .forced(),
        );
    }
    for i in 0..n {
        model.add_transition(
            Transition::new(format!("pack {}", i))
                .precondition(unpacked().contains(i))
                .precondition(cmp(Ge, r, bounds.weight(i)))
                .precondition(Condition::element(Ge, i + 1, k))
                .set_effect(u, unpacked().remove(i))
                .numeric_effect(r, NumericExpression::from(r) - bounds.weight(i)),
        );
    }
    model.add_base_case(BaseCase::new(vec![unpacked().is_empty()], 0));
    bounds.add(&mut model, u, r, q);
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_item_coefficients() {
        let b = BinPackingInstance::new(8, vec![5, 4, 3, 3]).unwrap();
        assert_eq!(b.lb2_a, vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(b.lb2_b, vec![0.0, 0.5, 0.0, 0.0]);
        // 5 > 16/3 is false and 5 > 8/3: one half; 3 > 8/3: one half
        assert_eq!(b.lb3_c, vec![0.5, 0.5, 0.5, 0.5]);
    }

    #[test]
    fn first_bound_at_target() {
        let b = BinPackingInstance::new(8, vec![5, 4, 3, 3]).unwrap();
        let model = build_binpacking(&b).unwrap();
        let lb1 = model.dual_bounds[0].eval(&model.target, &model.tables).unwrap();
        assert_eq!(lb1, Number::Int(2));
    }

    #[test]
    fn opening_a_bin() {
        let b = BinPackingInstance::new(8, vec![5]).unwrap();
        let model = build_binpacking(&b).unwrap();
        assert_eq!(model.applicable_transitions(&model.target).unwrap(), vec![0]);
        let next = model.successor(&model.transitions[0], &model.target).unwrap();
        assert_eq!(next.number(1).unwrap(), Number::Int(3));
        assert_eq!(next.element(2).unwrap(), 1);
        assert!(next.set(0).unwrap().is_clear());
    }
}
