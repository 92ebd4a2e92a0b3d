use super::{Direction, Effect, Model, VariableKind};
use crate::expr::{
    ArgumentExpression, Condition, ElementExpression, NumericExpression, NumericType,
    SetExpression, TableId, TableKind,
};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{}: {}", level, self.message)
    }
}

/// How the model is going to be used; some checks only apply to certain solvers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationContext {
    /// A beam-search based solver will be run.
    pub beam_search: bool,
    /// The caller relies on the first CAASDy solution being optimal.
    pub caasdy_first_solution_claim: bool,
}

struct Checker<'a> {
    model: &'a Model,
    location: String,
    out: Vec<Diagnostic>,
}

impl Checker<'_> {
    fn error(&mut self, message: String) {
        self.out.push(Diagnostic {
            severity: Severity::Error,
            message: format!("{}: {}", self.location, message),
        });
    }

    fn variable(&mut self, index: usize, allowed: &[VariableKind]) {
        match self.model.metadata.variables.get(index) {
            None => self.error(format!("undeclared variable {}", index)),
            Some(decl) if !allowed.contains(&decl.kind) => self.error(format!(
                "variable `{}` is {}, expected {}",
                decl.name,
                decl.kind.name(),
                allowed[0].name()
            )),
            Some(_) => {}
        }
    }

    fn table(&mut self, id: TableId, arity: usize, allowed: &[TableKind]) {
        let table = match self.model.tables.get(id) {
            Ok(t) => t,
            Err(_) => return self.error(format!("undeclared table {}", id.0)),
        };
        if table.arity() != arity {
            self.error(format!(
                "table `{}` takes {} arguments, got {}",
                table.name,
                table.arity(),
                arity
            ));
        }
        if !allowed.contains(&table.kind()) {
            self.error(format!(
                "table `{}` is {}, expected {}",
                table.name,
                table.kind().name(),
                allowed[0].name()
            ));
        }
    }

    fn element(&mut self, e: &ElementExpression) {
        match e {
            ElementExpression::Constant(_) => {}
            ElementExpression::Variable(v) => self.variable(*v, &[VariableKind::Element]),
            ElementExpression::Table(id, args) => {
                self.table(*id, args.len(), &[TableKind::Element]);
                args.iter().for_each(|a| self.element(a));
            }
            ElementExpression::Binary(_, a, b) => {
                self.element(a);
                self.element(b);
            }
            ElementExpression::If(c, a, b) => {
                self.condition(c);
                self.element(a);
                self.element(b);
            }
        }
    }

    fn arguments(&mut self, args: &[ArgumentExpression]) {
        for a in args {
            match a {
                ArgumentExpression::Element(e) => self.element(e),
                ArgumentExpression::Set(s) => self.set(s),
            }
        }
    }

    fn set(&mut self, e: &SetExpression) {
        match e {
            SetExpression::Constant(_) => {}
            SetExpression::Variable(v) => self.variable(*v, &[VariableKind::Set]),
            SetExpression::Table(id, args) => {
                self.table(*id, args.len(), &[TableKind::Set]);
                args.iter().for_each(|a| self.element(a));
            }
            SetExpression::Add(x, s) | SetExpression::Remove(x, s) => {
                self.element(x);
                self.set(s);
            }
            SetExpression::Union(a, b)
            | SetExpression::Intersection(a, b)
            | SetExpression::Difference(a, b) => {
                self.set(a);
                self.set(b);
            }
            SetExpression::Complement(a) => self.set(a),
            SetExpression::Reduce(_, id, args) => {
                self.table(*id, args.len(), &[TableKind::Set]);
                self.arguments(args);
            }
            SetExpression::If(c, a, b) => {
                self.condition(c);
                self.set(a);
                self.set(b);
            }
        }
    }

    fn numeric(&mut self, e: &NumericExpression) {
        const NUMERIC_TABLES: &[TableKind] =
            &[TableKind::Integer, TableKind::Continuous, TableKind::Element];
        match e {
            NumericExpression::Constant(_) => {}
            NumericExpression::Variable(v) => {
                self.variable(*v, &[VariableKind::Integer, VariableKind::Continuous])
            }
            NumericExpression::Element(x) => self.element(x),
            NumericExpression::Table(id, args) => {
                self.table(*id, args.len(), NUMERIC_TABLES);
                args.iter().for_each(|a| self.element(a));
            }
            NumericExpression::Binary(_, a, b) => {
                self.numeric(a);
                self.numeric(b);
            }
            NumericExpression::Unary(_, a) => self.numeric(a),
            NumericExpression::Reduce(_, id, args) => {
                self.table(*id, args.len(), NUMERIC_TABLES);
                self.arguments(args);
            }
            NumericExpression::Cardinality(s) => self.set(s),
            NumericExpression::If(c, a, b) => {
                self.condition(c);
                self.numeric(a);
                self.numeric(b);
            }
            NumericExpression::Cost => self.error("`cost` outside a transition cost".into()),
        }
    }

    fn condition(&mut self, c: &Condition) {
        match c {
            Condition::Constant(_) => {}
            Condition::Not(c) => self.condition(c),
            Condition::And(cs) | Condition::Or(cs) => cs.iter().for_each(|c| self.condition(c)),
            Condition::ElementCmp(_, a, b) => {
                self.element(a);
                self.element(b);
            }
            Condition::NumericCmp(_, a, b) => {
                self.numeric(a);
                self.numeric(b);
            }
            Condition::SetCmp(_, a, b) | Condition::IsSubset(a, b) => {
                self.set(a);
                self.set(b);
            }
            Condition::IsIn(e, s) => {
                self.element(e);
                self.set(s);
            }
            Condition::IsEmpty(s) => self.set(s),
            Condition::Table(id, args) => {
                self.table(*id, args.len(), &[TableKind::Bool]);
                args.iter().for_each(|a| self.element(a));
            }
        }
    }
}

impl Model {
    /// Static checks of the model. Errors make the model unusable; warnings and
    /// informational notes do not.
    pub fn validate(&self, context: &ValidationContext) -> Vec<Diagnostic> {
        let mut checker = Checker {
            model: self,
            location: "target".into(),
            out: Vec::new(),
        };
        if let Err(e) = self.metadata.check_state(&self.target) {
            checker.error(e.to_string());
        }
        let mut seen_non_forced = false;
        for t in &self.transitions {
            checker.location = format!("transition `{}`", t.name);
            for c in &t.preconditions {
                checker.condition(c);
            }
            for (variable, effect) in &t.effects {
                match effect {
                    Effect::Element(e) => {
                        checker.variable(*variable, &[VariableKind::Element]);
                        checker.element(e);
                    }
                    Effect::Set(e) => {
                        checker.variable(*variable, &[VariableKind::Set]);
                        checker.set(e);
                    }
                    Effect::Numeric(e) => {
                        checker.variable(
                            *variable,
                            &[VariableKind::Integer, VariableKind::Continuous],
                        );
                        checker.numeric(e);
                    }
                }
            }
            let mut targets: Vec<usize> = t.effects.iter().map(|(v, _)| *v).collect();
            targets.sort_unstable();
            if targets.windows(2).any(|w| w[0] == w[1]) {
                checker.error("more than one effect on the same variable".into());
            }
            if t.cost == NumericExpression::Cost {
                checker.error("cost term must be w ⊕ cost".into());
            } else if t.cost.contains_cost() {
                checker.error("cost term must not depend on the successor cost".into());
            } else {
                checker.numeric(&t.cost);
                let meta = &self.metadata;
                let ty = t.cost.numeric_type(&|v| meta.numeric_type(v), &self.tables);
                if ty == NumericType::Continuous && self.cost.cost_type == NumericType::Integer {
                    checker.error("continuous cost term in an integer model".into());
                }
            }
            if t.forced && seen_non_forced {
                checker.out.push(Diagnostic {
                    severity: Severity::Info,
                    message: format!(
                        "transition `{}`: forced transition declared after a non-forced one",
                        t.name
                    ),
                });
            }
            seen_non_forced |= !t.forced;
        }
        for (k, c) in self.constraints.iter().enumerate() {
            checker.location = format!("constraint {}", k);
            checker.condition(c);
        }
        for (k, b) in self.base_cases.iter().enumerate() {
            checker.location = format!("base case {}", k);
            b.conditions.iter().for_each(|c| checker.condition(c));
            checker.numeric(&b.cost);
        }
        for (k, b) in self.dual_bounds.iter().enumerate() {
            checker.location = format!("dual bound {}", k);
            checker.numeric(b);
        }
        let mut out = checker.out;
        if context.caasdy_first_solution_claim && self.cost.direction == Direction::Maximize {
            out.push(Diagnostic {
                severity: Severity::Error,
                message: "first-solution optimality of CAASDy does not hold for maximization"
                    .into(),
            });
        }
        if context.beam_search && !self.acyclic {
            out.push(Diagnostic {
                severity: Severity::Error,
                message: "beam search requires a model declared acyclic".into(),
            });
        }
        out
    }

    pub fn validation_errors(&self, context: &ValidationContext) -> Vec<Diagnostic> {
        self.validate(context)
            .into_iter()
            .filter(|d| d.severity == Severity::Error)
            .collect()
    }
}
