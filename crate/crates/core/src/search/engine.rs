//! The generic heuristic search loop shared by the open-list based solvers.

use super::policy::OpenList;
use super::{
    path, signature, Event, Guide, Node, Priority, Progress, SearchError, Solution, SolverParams,
};
use crate::expr::Number;
use crate::model::{Dominance, Model};
use crate::state::{State, Value};
use std::collections::{BinaryHeap, HashMap};

pub(crate) fn run<P: OpenList>(
    model: &Model,
    params: &SolverParams,
    mut open: P,
    callback: &mut dyn FnMut(&Event),
) -> Result<Solution, SearchError> {
    let mut progress = Progress::new(model, params, callback);
    if !model.check_constraints(&model.target)? {
        return Ok(progress.finish(true));
    }
    let guide = Guide::new(model, params);
    let cost = &model.cost;

    let root_h = guide.h(&model.target)?;
    let (f, h) = guide.f_h(cost.identity, root_h)?;
    let mut nodes = vec![Node {
        state: model.target.clone(),
        g: cost.identity,
        f,
        h,
        parent: None,
        depth: 0,
        open: true,
        dead: false,
    }];
    let mut registry: HashMap<Vec<Value>, Vec<usize>> = HashMap::new();
    registry.insert(signature(model, &model.target, params.dominance), vec![0]);
    let root = nodes[0].priority(0, cost);
    open.insert_root(root);
    // mirror of the open list ordered by f, for dual bounds
    let mut frontier: BinaryHeap<Priority> = BinaryHeap::new();
    if guide.has_bound() {
        frontier.push(root);
        if root_h.map_or(false, |h| !h.is_infinite()) {
            progress.offer_dual(f);
        }
    }

    let exhausted = loop {
        if progress.timed_out() {
            break false;
        }
        let primal = progress.primal;
        let id = {
            let nodes = &nodes;
            let valid = |id: usize| {
                let n = &nodes[id];
                n.open && !n.dead && guide.may_improve(n.f, primal)
            };
            match open.pop(&valid) {
                Some(id) => id,
                None => break true,
            }
        };
        nodes[id].open = false;

        if let Some(base) = model.base_cost(&nodes[id].state)? {
            let total = model.combine(nodes[id].g, base)?;
            if progress.improves(total) {
                progress.new_solution(total, path(&nodes, id));
                open.solution_found();
            }
            probe_dual(&mut frontier, &nodes, &guide, &mut progress);
            continue;
        }

        progress.statistics.expanded += 1;
        let state = nodes[id].state.clone();
        let g = nodes[id].g;
        let depth = nodes[id].depth + 1;
        let mut children = Vec::new();
        for t_index in model.applicable_transitions(&state)? {
            let t = &model.transitions[t_index];
            let next = model.successor(t, &state)?;
            let g_next = model.combine(g, model.weight(t, &state)?)?;
            if !model.check_constraints(&next)? {
                continue;
            }
            progress.statistics.generated += 1;
            let key = signature(model, &next, params.dominance);
            let bucket = registry.entry(key).or_default();
            if !dominance_free(model, &nodes, bucket, &next, g_next, params.dominance) {
                continue;
            }
            let h_next = guide.h(&next)?;
            let (f_next, h_next) = guide.f_h(g_next, h_next)?;
            if !guide.may_improve(f_next, progress.primal) {
                continue;
            }
            evict(model, &mut nodes, bucket, &next, g_next, params.dominance);
            let child = nodes.len();
            nodes.push(Node {
                state: next,
                g: g_next,
                f: f_next,
                h: h_next,
                parent: Some((id, t_index)),
                depth,
                open: true,
                dead: false,
            });
            bucket.push(child);
            children.push(nodes[child].priority(child, cost));
        }
        children.sort_by(|a, b| b.cmp(a));
        open.insert_children(id, depth, &children);
        if guide.has_bound() {
            frontier.extend(children.iter().copied());
            probe_dual(&mut frontier, &nodes, &guide, &mut progress);
        }
    };
    Ok(progress.finish(exhausted))
}

/// Whether no registered node dominates `state` reached with cost `g`.
pub(crate) fn dominance_free(
    model: &Model,
    nodes: &[Node],
    bucket: &[usize],
    state: &State,
    g: Number,
    dominance: bool,
) -> bool {
    bucket.iter().all(|&other| {
        let o = &nodes[other];
        let covers = if dominance {
            matches!(
                model.dominance_compare(&o.state, state),
                Dominance::Equal | Dominance::ADominatesB
            )
        } else {
            o.state == *state
        };
        !(covers && !model.cost.is_better(g, o.g))
    })
}

/// Removes from `bucket` (and marks dead) every node that `state` with cost `g` dominates.
pub(crate) fn evict(
    model: &Model,
    nodes: &mut [Node],
    bucket: &mut Vec<usize>,
    state: &State,
    g: Number,
    dominance: bool,
) {
    bucket.retain(|&other| {
        let o = &nodes[other];
        let covered = if dominance {
            matches!(
                model.dominance_compare(state, &o.state),
                Dominance::Equal | Dominance::ADominatesB
            )
        } else {
            o.state == *state
        };
        let dominated = covered && !model.cost.is_better(o.g, g);
        if dominated {
            nodes[other].dead = true;
        }
        !dominated
    });
}

/// Offers `min f` over the open nodes (capped by the incumbent) as a dual bound.
fn probe_dual(
    frontier: &mut BinaryHeap<Priority>,
    nodes: &[Node],
    guide: &Guide,
    progress: &mut Progress,
) {
    if !guide.has_bound() {
        return;
    }
    while let Some(top) = frontier.peek() {
        let n = &nodes[top.id];
        if n.open && !n.dead && guide.may_improve(n.f, progress.primal) {
            break;
        }
        frontier.pop();
    }
    match frontier.peek() {
        Some(top) => {
            if !top.f.is_infinite() {
                progress.offer_dual(top.f)
            }
        }
        None => {
            if let Some(p) = progress.primal {
                progress.offer_dual(p);
            }
        }
    }
}
