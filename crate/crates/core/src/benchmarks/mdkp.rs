use super::{cmp, el, invalid, lookup, BenchmarkError, TableBuilder, FLOOR_MARGIN};
use crate::expr::{ComparisonOperator::*, NumericExpression, NumericType};
use crate::model::{BaseCase, CostStructure, Direction, Model, Preference, StateMetadata, Transition};
use crate::state::{State, Value};
use crate::Number;

/// Multi-dimensional knapsack. Values are integral unless `cost_type` is continuous.
#[derive(Debug, Clone, PartialEq)]
pub struct MdkpInstance {
    pub profit: Vec<f64>,
    /// `weight[item][dimension]`.
    pub weight: Vec<Vec<f64>>,
    pub capacity: Vec<f64>,
    pub cost_type: NumericType,
}

impl MdkpInstance {
    pub fn new(
        profit: Vec<f64>,
        weight: Vec<Vec<f64>>,
        capacity: Vec<f64>,
        cost_type: NumericType,
    ) -> Result<Self, BenchmarkError> {
        let m = capacity.len();
        if weight.len() != profit.len() || weight.iter().any(|w| w.len() != m) {
            return Err(invalid("one weight per item and dimension is required"));
        }
        let all = profit.iter().chain(weight.iter().flatten()).chain(&capacity);
        let mut integral = true;
        for &v in all {
            if !v.is_finite() || v < 0.0 {
                return Err(invalid("profits, weights and capacities must be nonnegative"));
            }
            integral &= v.fract() == 0.0;
        }
        if !integral && cost_type == NumericType::Integer {
            return Err(invalid("fractional values require the continuous cost type"));
        }
        Ok(MdkpInstance {
            profit,
            weight,
            capacity,
            cost_type,
        })
    }

    pub fn items(&self) -> usize {
        self.profit.len()
    }

    pub fn dimensions(&self) -> usize {
        self.capacity.len()
    }

    /// `Σ_{k ≥ i} p_k` for `i = 0..=n`.
    pub fn remaining_profit(&self) -> Vec<f64> {
        let mut suffix = vec![0.0; self.items() + 1];
        for i in (0..self.items()).rev() {
            suffix[i] = suffix[i + 1] + self.profit[i];
        }
        suffix
    }

    /// `max_{k ≥ i} e_kj` for `i = 0..=n`, where `e_kj = p_k / w_kj`, or the
    /// remaining profit from `i` when `w_kj = 0`.
    pub fn best_efficiency(&self) -> Vec<Vec<f64>> {
        let n = self.items();
        let remaining = self.remaining_profit();
        (0..=n)
            .map(|i| {
                (0..self.dimensions())
                    .map(|j| {
                        (i..n)
                            .map(|k| {
                                if self.weight[k][j] == 0.0 {
                                    remaining[i]
                                } else {
                                    self.profit[k] / self.weight[k][j]
                                }
                            })
                            .fold(0.0, f64::max)
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn build_mdkp(instance: &MdkpInstance) -> Result<Model, BenchmarkError> {
    let n = instance.items();
    let m = instance.dimensions();
    let integer = instance.cost_type == NumericType::Integer;
    let mut meta = StateMetadata::new();
    // one extra position marks the end of the item sequence
    let item = meta.add_object("item", n + 1)?;
    let dimension = meta.add_object("dimension", m)?;
    let i = meta.add_element_variable("i", item, Preference::None)?;
    let r = (0..m)
        .map(|j| {
            let name = format!("r{}", j);
            if integer {
                meta.add_integer_variable(&name, Preference::None)
            } else {
                meta.add_continuous_variable(&name, Preference::None)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut tables = TableBuilder::new(&meta);
    let efficiency = instance.best_efficiency();
    let remaining = instance.remaining_profit();
    let (p, w, rest) = if integer {
        let int = |v: &f64| *v as i64;
        let mut profit: Vec<i64> = instance.profit.iter().map(int).collect();
        profit.push(0);
        let mut weight: Vec<i64> = instance.weight.iter().flatten().map(int).collect();
        weight.extend(std::iter::repeat(0).take(m));
        (
            tables.integer("p", &[item], profit),
            tables.integer("w", &[item, dimension], weight),
            tables.integer("remaining", &[item], remaining.iter().map(int).collect()),
        )
    } else {
        let mut profit = instance.profit.clone();
        profit.push(0.0);
        let mut weight: Vec<f64> = instance.weight.iter().flatten().copied().collect();
        weight.extend(std::iter::repeat(0.0).take(m));
        (
            tables.continuous("p", &[item], profit),
            tables.continuous("w", &[item, dimension], weight),
            tables.continuous("remaining", &[item], remaining),
        )
    };
    let e = tables.continuous("e", &[item, dimension], efficiency.into_iter().flatten().collect());
    let tables = tables.finish();

    let mut values = vec![Value::Element(0)];
    for &q in &instance.capacity {
        values.push(Value::Number(if integer {
            Number::Int(q as i64)
        } else {
            Number::Real(q)
        }));
    }
    let cost = CostStructure::additive(Direction::Maximize, instance.cost_type);
    let mut model = Model::new(meta, tables, State::new(values), cost)?;

    for k in 0..n {
        let at_k = crate::Condition::element(Eq, i, k);
        let mut include = Transition::new(format!("include {}", k))
            .precondition(at_k.clone())
            .element_effect(i, k + 1)
            .with_cost(lookup(p, vec![el(k)]));
        for (j, &rj) in r.iter().enumerate() {
            let wkj = lookup(w, vec![el(k), el(j)]);
            include = include
                .precondition(cmp(Le, wkj.clone(), rj))
                .numeric_effect(rj, NumericExpression::from(rj) - wkj);
        }
        model.add_transition(include);
        model.add_transition(
            Transition::new(format!("exclude {}", k))
                .precondition(at_k)
                .element_effect(i, k + 1),
        );
    }
    model.add_base_case(BaseCase::new(vec![crate::Condition::element(Eq, i, n)], 0));
    model.add_dual_bound(lookup(rest, vec![i.into()]));
    for (j, &rj) in r.iter().enumerate() {
        let space = NumericExpression::from(rj).max(1);
        let bound = space * lookup(e, vec![i.into(), el(j)]);
        model.add_dual_bound(if integer {
            (bound + NumericExpression::real(FLOOR_MARGIN)).floor()
        } else {
            bound
        });
    }
    Ok(model)
}
