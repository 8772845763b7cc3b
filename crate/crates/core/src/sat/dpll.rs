use super::{CnfFormula, Lit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    /// Total assignment indexed by `var - 1`.
    Sat(Vec<bool>),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Val {
    Unset,
    True,
    False,
}

struct Dpll<'a> {
    clauses: &'a [Vec<Lit>],
    vals: Vec<Val>,
    trail: Vec<usize>,
}

enum ClauseState {
    Satisfied,
    Conflict,
    Unit(Lit),
    Open(usize),
}

impl Dpll<'_> {
    fn lit_val(&self, l: Lit) -> Val {
        match (self.vals[l.var()], l.is_positive()) {
            (Val::Unset, _) => Val::Unset,
            (Val::True, true) | (Val::False, false) => Val::True,
            _ => Val::False,
        }
    }

    fn assign(&mut self, l: Lit) {
        self.vals[l.var()] = if l.is_positive() { Val::True } else { Val::False };
        self.trail.push(l.var());
    }

    fn undo_to(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.vals[v] = Val::Unset;
        }
    }

    fn state(&self, c: &[Lit]) -> ClauseState {
        let mut open = 0;
        let mut last = None;
        for &l in c {
            match self.lit_val(l) {
                Val::True => return ClauseState::Satisfied,
                Val::Unset => {
                    open += 1;
                    last = Some(l);
                }
                Val::False => {}
            }
        }
        match (open, last) {
            (0, _) => ClauseState::Conflict,
            (1, Some(l)) => ClauseState::Unit(l),
            _ => ClauseState::Open(open),
        }
    }

    /// Unit propagation to fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for c in self.clauses {
                match self.state(c) {
                    ClauseState::Conflict => return false,
                    ClauseState::Unit(l) => {
                        self.assign(l);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Picks a literal from a shortest open clause.
    fn choose(&self) -> Option<Lit> {
        self.clauses
            .iter()
            .filter_map(|c| match self.state(c) {
                ClauseState::Open(k) => Some((k, c)),
                _ => None,
            })
            .min_by_key(|&(k, _)| k)
            .and_then(|(_, c)| c.iter().copied().find(|&l| self.lit_val(l) == Val::Unset))
    }

    fn search(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        let Some(lit) = self.choose() else {
            return true;
        };
        for branch in [lit, lit.negate()] {
            let mark = self.trail.len();
            self.assign(branch);
            if self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Complete DPLL decision procedure. A returned assignment is re-checked
/// against every clause.
pub fn solve_dpll(f: &CnfFormula) -> SatResult {
    let mut solver = Dpll {
        clauses: f.clauses(),
        vals: vec![Val::Unset; f.num_vars() + 1],
        trail: Vec::new(),
    };
    if !solver.search() {
        return SatResult::Unsat;
    }
    let assignment: Vec<bool> = solver.vals[1..].iter().map(|&v| v == Val::True).collect();
    assert!(f.is_satisfied_by(&assignment), "DPLL produced a non-satisfying assignment");
    SatResult::Sat(assignment)
}
