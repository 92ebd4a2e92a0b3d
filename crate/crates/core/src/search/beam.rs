//! Beam search with layered duplicate detection, and complete anytime beam search.

use super::engine::{dominance_free, evict};
use super::{
    path, signature, Event, Guide, Node, Progress, SearchError, Solution, SolverParams,
};
use crate::expr::Number;
use crate::model::{Model, ValidationContext};
use crate::state::Value;
use std::collections::HashMap;

struct Outcome {
    complete: bool,
    timed_out: bool,
    /// Valid dual bound from this run, if one could be derived.
    dual: Option<Number>,
}

/// One pass of beam search with width `width`, improving on `progress.primal`.
fn run_once(
    model: &Model,
    params: &SolverParams,
    width: usize,
    progress: &mut Progress,
) -> Result<Outcome, SearchError> {
    let cost = &model.cost;
    let guide = Guide::new(model, params);
    if !model.check_constraints(&model.target)? {
        return Ok(Outcome {
            complete: true,
            timed_out: false,
            dual: None,
        });
    }
    let (f, h) = guide.f_h(cost.identity, guide.h(&model.target)?)?;
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
    let mut layer = vec![0];
    let mut complete = true;
    let mut found = false;
    // best f among states dropped by the width limit
    let mut dropped: Option<Number> = None;

    while !layer.is_empty() && !found {
        let mut registry: HashMap<Vec<Value>, Vec<usize>> = HashMap::new();
        let mut next_layer = Vec::new();
        for &id in &layer {
            if progress.timed_out() {
                return Ok(Outcome {
                    complete: false,
                    timed_out: true,
                    dual: None,
                });
            }
            if let Some(base) = model.base_cost(&nodes[id].state)? {
                let total = model.combine(nodes[id].g, base)?;
                if progress.improves(total) {
                    progress.new_solution(total, path(&nodes, id));
                    found = true;
                }
                continue;
            }
            progress.statistics.expanded += 1;
            let state = nodes[id].state.clone();
            let g = nodes[id].g;
            let depth = nodes[id].depth + 1;
            for t_index in model.applicable_transitions(&state)? {
                let t = &model.transitions[t_index];
                let next = model.successor(t, &state)?;
                let g_next = model.combine(g, model.weight(t, &state)?)?;
                if !model.check_constraints(&next)? {
                    continue;
                }
                progress.statistics.generated += 1;
                let bucket = registry
                    .entry(signature(model, &next, params.dominance))
                    .or_default();
                if !dominance_free(model, &nodes, bucket, &next, g_next, params.dominance) {
                    continue;
                }
                let (f_next, h_next) = guide.f_h(g_next, guide.h(&next)?)?;
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
                next_layer.push(child);
            }
        }
        let primal = progress.primal;
        next_layer.retain(|&id| !nodes[id].dead && guide.may_improve(nodes[id].f, primal));
        if next_layer.len() > width {
            next_layer.sort_by(|&a, &b| nodes[b].priority(b, cost).cmp(&nodes[a].priority(a, cost)));
            for &id in &next_layer[width..] {
                let f = nodes[id].f;
                dropped = Some(match dropped {
                    Some(d) => cost.best(d, f),
                    None => f,
                });
            }
            next_layer.truncate(width);
            complete = false;
        }
        layer = next_layer;
    }
    if complete && !layer.is_empty() {
        complete = false;
    }
    let dual = if guide.has_bound() {
        let mut bound = progress.primal;
        for f in layer.iter().map(|&id| nodes[id].f).chain(dropped) {
            bound = Some(match bound {
                Some(b) => cost.best(b, f),
                None => f,
            });
        }
        bound.filter(|b| !b.is_infinite())
    } else {
        None
    };
    Ok(Outcome {
        complete,
        timed_out: false,
        dual,
    })
}

fn check(model: &Model) -> Result<(), SearchError> {
    let errors = model.validation_errors(&ValidationContext {
        beam_search: true,
        caasdy_first_solution_claim: false,
    });
    if errors.is_empty() {
        Ok(())
    } else {
        Err(SearchError::InvalidModel(errors))
    }
}

/// A single beam search with width `width`, accepting only solutions better
/// than `primal_bound`. The flag is `true` when the run was complete: the
/// returned solution is optimal, or no solution better than the bound exists.
pub fn beam_search(
    model: &Model,
    width: usize,
    primal_bound: Option<Number>,
    params: &SolverParams,
) -> Result<(Solution, bool), SearchError> {
    check(model)?;
    let params = SolverParams {
        primal_bound,
        ..params.clone()
    };
    let mut callback = |_: &Event| {};
    let mut progress = Progress::new(model, &params, &mut callback);
    let outcome = run_once(model, &params, width.max(1), &mut progress)?;
    if let Some(d) = outcome.dual {
        progress.offer_dual(d);
    }
    let complete = outcome.complete;
    Ok((progress.finish(complete), complete))
}

pub(crate) fn run_cabs(
    model: &Model,
    params: &SolverParams,
    callback: &mut dyn FnMut(&Event),
) -> Result<Solution, SearchError> {
    let mut progress = Progress::new(model, params, callback);
    let guide = Guide::new(model, params);
    if guide.has_bound() && model.check_constraints(&model.target)? {
        let (f, _) = guide.f_h(model.cost.identity, guide.h(&model.target)?)?;
        if !f.is_infinite() {
            progress.offer_dual(f);
        }
    }
    let mut width = params.initial_beam_width.max(1);
    loop {
        let outcome = run_once(model, params, width, &mut progress)?;
        if let Some(d) = outcome.dual {
            progress.offer_dual(d);
        }
        if outcome.timed_out {
            return Ok(progress.finish(false));
        }
        if outcome.complete {
            return Ok(progress.finish(true));
        }
        if progress.timed_out() {
            return Ok(progress.finish(false));
        }
        width = width.saturating_mul(params.beam_growth.max(2));
    }
}

/// Complete anytime beam search: beam search with widths `b, 2b, 4b, …`
/// until a run is complete.
pub fn cabs(model: &Model, params: &SolverParams) -> Result<Solution, SearchError> {
    check(model)?;
    run_cabs(model, params, &mut |_| {})
}
