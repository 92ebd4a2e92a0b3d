use super::Model;
use crate::expr::{EvalError, Number};
use crate::state::State;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("recursion depth limit {0} exceeded; is the model cyclic?")]
    DepthLimit(usize),
    #[error("state {0} is reachable from itself; the model is not acyclic")]
    Cycle(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Which transitions the recursion branches over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Every applicable transition, ignoring the forced flag.
    All,
    /// Only the transitions a solver would expand.
    Forced,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Optimal cost from the target, `None` if infeasible.
    pub cost: Option<Number>,
    pub memo_size: usize,
}

/// Memoized evaluation of the Bellman equation, reusable across states.
pub struct Oracle<'a> {
    model: &'a Model,
    mode: OracleMode,
    depth_limit: usize,
    memo: HashMap<State, Option<Number>>,
}

struct Frame {
    state: State,
    successors: Vec<(Number, State)>,
    next: usize,
    best: Option<Number>,
}

enum Entry {
    Done(Option<Number>),
    Expand(Frame),
}

impl<'a> Oracle<'a> {
    pub fn new(model: &'a Model, mode: OracleMode, depth_limit: usize) -> Oracle<'a> {
        Oracle {
            model,
            mode,
            depth_limit,
            memo: HashMap::new(),
        }
    }

    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    /// Optimal cost of `state`, or `None` if no solution exists from it.
    pub fn value(&mut self, state: &State) -> Result<Option<Number>, OracleError> {
        if let Some(v) = self.memo.get(state) {
            return Ok(*v);
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut on_stack: HashSet<State> = HashSet::new();
        match self.enter(state.clone())? {
            Entry::Done(v) => return Ok(v),
            Entry::Expand(frame) => {
                on_stack.insert(frame.state.clone());
                stack.push(frame);
            }
        }
        loop {
            let frame = stack.last_mut().expect("non-empty stack");
            if frame.next == frame.successors.len() {
                let frame = stack.pop().expect("non-empty stack");
                on_stack.remove(&frame.state);
                self.memo.insert(frame.state, frame.best);
                match stack.last_mut() {
                    None => return Ok(frame.best),
                    Some(parent) => {
                        self.absorb(parent, frame.best)?;
                        continue;
                    }
                }
            }
            let child = frame.successors[frame.next].1.clone();
            if let Some(v) = self.memo.get(&child) {
                let v = *v;
                let frame = stack.last_mut().expect("non-empty stack");
                self.absorb(frame, v)?;
                continue;
            }
            if on_stack.contains(&child) {
                return Err(OracleError::Cycle(child.to_string()));
            }
            if stack.len() >= self.depth_limit {
                return Err(OracleError::DepthLimit(self.depth_limit));
            }
            match self.enter(child)? {
                Entry::Done(v) => {
                    let frame = stack.last_mut().expect("non-empty stack");
                    self.absorb(frame, v)?;
                }
                Entry::Expand(child) => {
                    on_stack.insert(child.state.clone());
                    stack.push(child);
                }
            }
        }
    }

    fn enter(&mut self, state: State) -> Result<Entry, OracleError> {
        let model = self.model;
        if !model.check_constraints(&state)? {
            self.memo.insert(state, None);
            return Ok(Entry::Done(None));
        }
        if let Some(cost) = model.base_cost(&state)? {
            self.memo.insert(state, Some(cost));
            return Ok(Entry::Done(Some(cost)));
        }
        let applicable = match self.mode {
            OracleMode::All => model.all_applicable(&state)?,
            OracleMode::Forced => model.applicable_transitions(&state)?,
        };
        let mut successors = Vec::with_capacity(applicable.len());
        for index in applicable {
            let t = &model.transitions[index];
            successors.push((model.weight(t, &state)?, model.successor(t, &state)?));
        }
        Ok(Entry::Expand(Frame {
            state,
            successors,
            next: 0,
            best: None,
        }))
    }

    /// Folds the value of the current successor of `frame` into its best.
    fn absorb(&self, frame: &mut Frame, value: Option<Number>) -> Result<(), OracleError> {
        let w = frame.successors[frame.next].0;
        frame.next += 1;
        if let Some(v) = value {
            let candidate = self.model.combine(w, v)?;
            frame.best = Some(match frame.best {
                Some(b) => self.model.cost.best(b, candidate),
                None => candidate,
            });
        }
        Ok(())
    }
}

/// Optimal cost of the model's target by exhaustive memoized recursion over
/// every applicable transition.
pub fn bellman_oracle(model: &Model, depth_limit: usize) -> Result<OracleResult, OracleError> {
    let mut oracle = Oracle::new(model, OracleMode::All, depth_limit);
    let cost = oracle.value(&model.target)?;
    Ok(OracleResult {
        cost,
        memo_size: oracle.memo_size(),
    })
}
