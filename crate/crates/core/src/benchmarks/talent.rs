use super::{invalid, el, nonnegative, BenchmarkError, TableBuilder};
use crate::expr::{
    ComparisonOperator::*, Condition, NumericExpression, NumericType, ReduceOperator,
    SetExpression, SetReduceOperator,
};
use crate::model::{BaseCase, CostStructure, Direction, Model, StateMetadata, Transition};
use crate::state::{set_from, State, Value};

/// Talent scheduling. Scenes with identical actor sets are merged on
/// construction, adding their durations.
#[derive(Debug, Clone, PartialEq)]
pub struct TalentInstance {
    /// Sorted actor indices of each scene.
    pub actors: Vec<Vec<usize>>,
    pub duration: Vec<i64>,
    /// Daily cost of each actor.
    pub actor_cost: Vec<i64>,
    /// `d_s · Σ_{a ∈ A_s} c_a`, the unavoidable cost of each scene.
    pub base_cost: Vec<i64>,
}

impl TalentInstance {
    pub fn new(
        actors: Vec<Vec<usize>>,
        duration: Vec<i64>,
        actor_cost: Vec<i64>,
    ) -> Result<Self, BenchmarkError> {
        if actors.len() != duration.len() {
            return Err(invalid("one duration per scene is required"));
        }
        nonnegative("durations", duration.iter().copied())?;
        nonnegative("actor costs", actor_cost.iter().copied())?;
        let m = actor_cost.len();
        let mut merged: Vec<Vec<usize>> = Vec::new();
        let mut merged_duration: Vec<i64> = Vec::new();
        for (mut set, d) in actors.into_iter().zip(duration) {
            if set.iter().any(|&a| a >= m) {
                return Err(invalid("scene refers to an unknown actor"));
            }
            set.sort_unstable();
            set.dedup();
            match merged.iter().position(|s| *s == set) {
                Some(k) => merged_duration[k] += d,
                None => {
                    merged.push(set);
                    merged_duration.push(d);
                }
            }
        }
        let base_cost = merged
            .iter()
            .zip(&merged_duration)
            .map(|(set, d)| d * set.iter().map(|&a| actor_cost[a]).sum::<i64>())
            .collect();
        Ok(TalentInstance {
            actors: merged,
            duration: merged_duration,
            actor_cost,
            base_cost,
        })
    }

    pub fn scenes(&self) -> usize {
        self.actors.len()
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

pub fn build_talent(instance: &TalentInstance) -> Result<Model, BenchmarkError> {
    let n = instance.scenes();
    let m = instance.actor_cost.len();
    let mut meta = StateMetadata::new();
    let scene = meta.add_object("scene", n)?;
    let actor = meta.add_object("actor", m)?;
    let q = meta.add_set_variable("Q", scene)?;

    let mut tables = TableBuilder::new(&meta);
    let a = tables.set(
        "A",
        &[scene],
        actor,
        instance.actors.iter().map(|s| set_from(m, s.iter().copied())).collect(),
    );
    let c = tables.integer("c", &[actor], instance.actor_cost.clone());
    let b = tables.integer("b", &[scene], instance.base_cost.clone());
    let tables = tables.finish();

    let target = State::new(vec![Value::Set(set_from(n, 0..n))]);
    let cost = CostStructure::additive(Direction::Minimize, NumericType::Integer);
    let mut model = Model::new(meta, tables, target, cost)?;
    let remaining = || SetExpression::from(q);
    let cast = |s: usize| SetExpression::Table(a, vec![el(s)]);
    let union_over = |scenes: SetExpression| {
        SetExpression::Reduce(SetReduceOperator::Union, a, vec![scenes.into()])
    };
    let shot = || union_over(remaining().complement());
    // actors needed both by shot and unshot scenes
    let on_location = || union_over(remaining()).intersection(shot());

    for s in 0..n {
        model.add_transition(
            Transition::new(format!("shoot-forced {}", s))
                .precondition(remaining().contains(s))
                .precondition(Condition::SetCmp(Eq, cast(s), on_location()))
                .set_effect(q, remaining().remove(s))
                .with_cost(instance.base_cost[s])
                .forced(),
        );
    }
    for s1 in 0..n {
        let mut shoot = Transition::new(format!("shoot {}", s1))
            .precondition(remaining().contains(s1));
        // drop s1 while some s2 with a superset cast is better shot first
        for s2 in (0..n).filter(|&s2| s2 != s1) {
            if is_subset(&instance.actors[s1], &instance.actors[s2]) {
                shoot = shoot.precondition(
                    Condition::And(vec![
                        remaining().contains(s2),
                        Condition::IsSubset(cast(s2), shot().union(cast(s1))),
                    ])
                    .not(),
                );
            }
        }
        let paid = NumericExpression::reduce(
            ReduceOperator::Sum,
            c,
            vec![cast(s1).union(on_location()).into()],
        );
        model.add_transition(
            shoot
                .set_effect(q, remaining().remove(s1))
                .with_cost(NumericExpression::constant(instance.duration[s1]) * paid),
        );
    }
    model.add_base_case(BaseCase::new(vec![remaining().is_empty()], 0));
    model.add_dual_bound(NumericExpression::sum(b, remaining()));
    Ok(model)
}
