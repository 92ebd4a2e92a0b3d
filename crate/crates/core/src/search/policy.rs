//! Open-list selection rules for the generic search engine.

use super::Priority;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

pub(crate) trait OpenList {
    fn insert_root(&mut self, root: Priority);

    /// Inserts the successors of `parent`, sorted best first, all at `depth`.
    fn insert_children(&mut self, parent: usize, depth: usize, children: &[Priority]);

    /// Removes the next node to expand, discarding nodes for which `valid` is false.
    fn pop(&mut self, valid: &dyn Fn(usize) -> bool) -> Option<usize>;

    /// Called when a new incumbent is found.
    fn solution_found(&mut self) {}
}

fn pop_valid(heap: &mut BinaryHeap<Priority>, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
    while let Some(p) = heap.pop() {
        if valid(p.id) {
            return Some(p.id);
        }
    }
    None
}

/// Drops invalid entries from the top; returns whether a valid one remains.
fn clean_top(heap: &mut BinaryHeap<Priority>, valid: &dyn Fn(usize) -> bool) -> bool {
    while let Some(p) = heap.peek() {
        if valid(p.id) {
            return true;
        }
        heap.pop();
    }
    false
}

/// Best-first by `f` (CAASDy).
pub(crate) struct BestFirst {
    heap: BinaryHeap<Priority>,
}

impl BestFirst {
    pub fn new() -> Self {
        BestFirst {
            heap: BinaryHeap::new(),
        }
    }
}

impl OpenList for BestFirst {
    fn insert_root(&mut self, root: Priority) {
        self.heap.push(root);
    }

    fn insert_children(&mut self, _: usize, _: usize, children: &[Priority]) {
        self.heap.extend(children.iter().copied());
    }

    fn pop(&mut self, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
        pop_valid(&mut self.heap, valid)
    }
}

/// Depth-first with the best successor explored first (DFBnB).
pub(crate) struct DepthFirst {
    stack: Vec<usize>,
}

impl DepthFirst {
    pub fn new() -> Self {
        DepthFirst { stack: Vec::new() }
    }
}

impl OpenList for DepthFirst {
    fn insert_root(&mut self, root: Priority) {
        self.stack.push(root.id);
    }

    fn insert_children(&mut self, _: usize, _: usize, children: &[Priority]) {
        self.stack.extend(children.iter().rev().map(|p| p.id));
    }

    fn pop(&mut self, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
        while let Some(id) = self.stack.pop() {
            if valid(id) {
                return Some(id);
            }
        }
        None
    }
}

/// One best-first queue per depth.
struct Layers {
    layers: Vec<BinaryHeap<Priority>>,
}

impl Layers {
    fn new() -> Self {
        Layers { layers: Vec::new() }
    }

    fn push(&mut self, depth: usize, p: Priority) {
        if self.layers.len() <= depth {
            self.layers.resize_with(depth + 1, BinaryHeap::new);
        }
        self.layers[depth].push(p);
    }

    /// First depth `≥ from` with a valid node.
    fn first_nonempty(&mut self, from: usize, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
        (from..self.layers.len()).find(|&j| clean_top(&mut self.layers[j], valid))
    }
}

/// Cyclic best-first search (CBFS): expand the best node of layer `i`, then
/// move to layer `i + 1`, wrapping to the top when no deeper node remains.
pub(crate) struct Cyclic {
    layers: Layers,
    index: usize,
}

impl Cyclic {
    pub fn new() -> Self {
        Cyclic {
            layers: Layers::new(),
            index: 0,
        }
    }
}

impl OpenList for Cyclic {
    fn insert_root(&mut self, root: Priority) {
        self.layers.push(0, root);
    }

    fn insert_children(&mut self, _: usize, depth: usize, children: &[Priority]) {
        for &p in children {
            self.layers.push(depth, p);
        }
    }

    fn pop(&mut self, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
        let j = match self.layers.first_nonempty(self.index, valid) {
            Some(j) => j,
            None => self.layers.first_nonempty(0, valid)?,
        };
        self.index = j + 1;
        pop_valid(&mut self.layers.layers[j], valid)
    }

    fn solution_found(&mut self) {
        self.index = 0;
    }
}

/// Anytime column progressive search (ACPS): expand up to `b` best nodes per
/// layer, moving down the layers; each return to the top widens `b`.
pub(crate) struct Progressive {
    layers: Layers,
    index: usize,
    taken: usize,
    width: usize,
    step: usize,
}

impl Progressive {
    pub fn new(width: usize, step: usize) -> Self {
        Progressive {
            layers: Layers::new(),
            index: 0,
            taken: 0,
            width: width.max(1),
            step,
        }
    }

    fn restart(&mut self) {
        self.index = 0;
        self.taken = 0;
        self.width += self.step;
    }
}

impl OpenList for Progressive {
    fn insert_root(&mut self, root: Priority) {
        self.layers.push(0, root);
    }

    fn insert_children(&mut self, _: usize, depth: usize, children: &[Priority]) {
        for &p in children {
            self.layers.push(depth, p);
        }
    }

    fn pop(&mut self, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
        if self.taken >= self.width {
            self.index += 1;
            self.taken = 0;
        }
        let j = match self.layers.first_nonempty(self.index, valid) {
            Some(j) => j,
            None => {
                self.restart();
                self.layers.first_nonempty(0, valid)?
            }
        };
        if j != self.index {
            self.index = j;
            self.taken = 0;
        }
        self.taken += 1;
        pop_valid(&mut self.layers.layers[j], valid)
    }

    fn solution_found(&mut self) {
        self.restart();
    }
}

/// Anytime pack progressive search (APPS): expand the current pack, keep the
/// best `b` successors as the next pack and suspend the rest.
pub(crate) struct Pack {
    best: BinaryHeap<Priority>,
    /// Worst on top, so the pack can be trimmed to `b`.
    children: BinaryHeap<Reverse<Priority>>,
    suspended: BinaryHeap<Priority>,
    width: usize,
    step: usize,
    max_width: Option<usize>,
}

impl Pack {
    pub fn new(width: usize, step: usize, max_width: Option<usize>) -> Self {
        Pack {
            best: BinaryHeap::new(),
            children: BinaryHeap::new(),
            suspended: BinaryHeap::new(),
            width: width.max(1),
            step,
            max_width,
        }
    }
}

impl OpenList for Pack {
    fn insert_root(&mut self, root: Priority) {
        self.best.push(root);
    }

    fn insert_children(&mut self, _: usize, _: usize, children: &[Priority]) {
        for &p in children {
            self.children.push(Reverse(p));
            if self.children.len() > self.width {
                let Reverse(worst) = self.children.pop().expect("non-empty");
                self.suspended.push(worst);
            }
        }
    }

    fn pop(&mut self, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
        loop {
            if let Some(id) = pop_valid(&mut self.best, valid) {
                return Some(id);
            }
            if !self.children.is_empty() {
                self.best
                    .extend(self.children.drain().map(|Reverse(p)| p));
                continue;
            }
            if !clean_top(&mut self.suspended, valid) {
                return None;
            }
            let mut moved = 0;
            while moved < self.width {
                match self.suspended.pop() {
                    Some(p) if valid(p.id) => {
                        self.best.push(p);
                        moved += 1;
                    }
                    Some(_) => {}
                    None => break,
                }
            }
            let widened = self.width.saturating_add(self.step);
            self.width = match self.max_width {
                Some(m) => widened.min(m.max(1)),
                None => widened,
            };
        }
    }
}

/// Discrepancy-bounded depth-first search (DBDFS). Nodes within the current
/// discrepancy range are explored deepest first, ties broken by priority;
/// the others wait until the range moves on.
pub(crate) struct Discrepancy {
    current: BinaryHeap<(usize, Priority)>,
    deferred: Vec<(usize, Priority)>,
    discrepancy: HashMap<usize, usize>,
    /// Nodes with discrepancy below this bound go to `current`.
    limit: usize,
    step: usize,
}

impl Discrepancy {
    pub fn new(step: usize) -> Self {
        let step = step.max(1);
        Discrepancy {
            current: BinaryHeap::new(),
            deferred: Vec::new(),
            discrepancy: HashMap::new(),
            limit: step,
            step,
        }
    }
}

impl OpenList for Discrepancy {
    fn insert_root(&mut self, root: Priority) {
        self.discrepancy.insert(root.id, 0);
        self.current.push((0, root));
    }

    fn insert_children(&mut self, parent: usize, depth: usize, children: &[Priority]) {
        let d = self.discrepancy.get(&parent).copied().unwrap_or(0);
        for (rank, &p) in children.iter().enumerate() {
            let dc = if rank == 0 { d } else { d + 1 };
            self.discrepancy.insert(p.id, dc);
            if dc < self.limit {
                self.current.push((depth, p));
            } else {
                self.deferred.push((depth, p));
            }
        }
    }

    fn pop(&mut self, valid: &dyn Fn(usize) -> bool) -> Option<usize> {
        loop {
            while let Some((_, p)) = self.current.pop() {
                if valid(p.id) {
                    return Some(p.id);
                }
            }
            if self.deferred.is_empty() {
                return None;
            }
            self.current.extend(self.deferred.drain(..));
            self.limit += self.step;
        }
    }
}
