//! CNF formulas with at most three literals per clause, the DIMACS subset we
//! read and write, unit-clause preprocessing, a DPLL oracle, and a seeded
//! generator of (3,3) instances.

mod dimacs;
mod dpll;
mod generate;
mod preprocess;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dimacs::{parse_dimacs, render_dimacs};
pub use dpll::{solve_dpll, SatResult};
pub use generate::gen_random_33;
pub use preprocess::{preprocess_units, PreprocessOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid formula: {0}")]
    Invalid(String),
    #[error("formula is not (3,3): {0}")]
    Not33(String),
}

/// A signed variable index; `+j` is `x_j`, `-j` is `¬x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Lit(i32);

impl Lit {
    pub fn new(v: i32) -> Lit {
        assert!(v != 0, "literal 0 is the clause terminator");
        Lit(v)
    }

    pub fn pos(var: usize) -> Lit {
        Lit(var as i32)
    }

    pub fn neg(var: usize) -> Lit {
        Lit(-(var as i32))
    }

    /// 1-based variable index.
    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negate(self) -> Lit {
        Lit(-self.0)
    }

    pub fn to_i32(self) -> i32 {
        self.0
    }

    /// Truth value under a total assignment indexed by `var - 1`.
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var() - 1] == self.is_positive()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "¬x{}", self.var())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Original,
    Preprocessed,
}

pub type Clause = Vec<Lit>;

/// A CNF formula over variables `1..=num_vars`. Clause order and literal
/// order are significant: they fix the left-to-right indexing of literal
/// occurrences used by every reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    provenance: Provenance,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<CnfFormula, SatError> {
        Self::with_provenance(num_vars, clauses, Provenance::Original)
    }

    pub fn with_provenance(
        num_vars: usize,
        clauses: Vec<Clause>,
        provenance: Provenance,
    ) -> Result<CnfFormula, SatError> {
        for (k, clause) in clauses.iter().enumerate() {
            check_clause(clause, num_vars).map_err(|m| SatError::Invalid(format!("clause {}: {m}", k + 1)))?;
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            provenance,
        })
    }

    /// Convenience constructor from signed integers, as in DIMACS.
    pub fn from_ints(num_vars: usize, clauses: &[&[i32]]) -> Result<CnfFormula, SatError> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| {
                        if v == 0 {
                            Err(SatError::Invalid("literal 0".into()))
                        } else {
                            Ok(Lit::new(v))
                        }
                    })
                    .collect()
            })
            .collect::<Result<Vec<Clause>, _>>()?;
        CnfFormula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Total number of literal occurrences.
    pub fn num_literals(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Literal occurrences indexed left to right across clauses, paired with
    /// the 0-based index of the clause containing them.
    pub fn literal_occurrences(&self) -> Vec<(Lit, usize)> {
        self.clauses
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().map(move |&l| (l, k)))
            .collect()
    }

    /// Occurrence count per variable, indexed by `var - 1`.
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_vars];
        for l in self.clauses.iter().flatten() {
            counts[l.var() - 1] += 1;
        }
        counts
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() >= self.num_vars
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| l.eval(assignment)))
    }
}

fn check_clause(clause: &[Lit], num_vars: usize) -> Result<(), String> {
    if clause.is_empty() {
        return Err("empty clause".into());
    }
    for (i, l) in clause.iter().enumerate() {
        if l.var() == 0 || l.var() > num_vars {
            return Err(format!("literal {} out of range 1..={num_vars}", l.to_i32()));
        }
        if clause[..i].iter().any(|m| m.var() == l.var()) {
            return Err(format!("variable {} occurs twice", l.var()));
        }
    }
    Ok(())
}

/// Outcome of checking the (3,3) restriction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report33 {
    /// `(clause index, size)` for clauses with more than three literals.
    pub clause_size_violations: Vec<(usize, usize)>,
    /// `(variable, occurrences)` for variables occurring more than three times.
    pub occurrence_violations: Vec<(usize, usize)>,
}

impl Report33 {
    pub fn is_valid(&self) -> bool {
        self.clause_size_violations.is_empty() && self.occurrence_violations.is_empty()
    }
}

impl fmt::Display for Report33 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid (3,3) formula");
        }
        let mut parts = Vec::new();
        for (k, s) in &self.clause_size_violations {
            parts.push(format!("clause {} has {s} literals", k + 1));
        }
        for (v, c) in &self.occurrence_violations {
            parts.push(format!("x{v} occurs {c} times"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks clause sizes (≤ 3) and variable occurrences (≤ 3). In strict mode a
/// violation is an error; otherwise it is only reported.
pub fn validate_33(f: &CnfFormula, strict: bool) -> Result<Report33, SatError> {
    let report = Report33 {
        clause_size_violations: f
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 3)
            .map(|(k, c)| (k, c.len()))
            .collect(),
        occurrence_violations: f
            .occurrence_counts()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 3)
            .map(|(v, c)| (v + 1, c))
            .collect(),
    };
    if strict && !report.is_valid() {
        return Err(SatError::Not33(report.to_string()));
    }
    Ok(report)
}

/// Four-clause sample formula with a repeated negative literal:
/// (x₁ ∨ ¬x₂ ∨ x₃) ∧ (x₄ ∨ ¬x₁ ∨ x₂) ∧ (¬x₂ ∨ ¬x₄) ∧ (¬x₃ ∨ ¬x₂ ∨ x₄).
pub fn sample_formula() -> CnfFormula {
    CnfFormula::from_ints(4, &[&[1, -2, 3], &[4, -1, 2], &[-2, -4], &[-3, -2, 4]])
        .expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_sample_formula_flags_x2() {
        let f = sample_formula();
        let lenient = validate_33(&f, false).unwrap();
        assert_eq!(lenient.occurrence_violations, vec![(2, 4)]);
        assert!(lenient.clause_size_violations.is_empty());
        assert!(validate_33(&f, true).is_err());
    }

    #[test]
    fn validate_small_and_wide() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert!(validate_33(&f, true).unwrap().is_valid());
        let g = CnfFormula::from_ints(4, &[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(validate_33(&g, false).unwrap().clause_size_violations, vec![(0, 4)]);
    }

    #[test]
    fn constructor_rejects_bad_clauses() {
        assert!(CnfFormula::from_ints(2, &[&[1, 1]]).is_err());
        assert!(CnfFormula::from_ints(2, &[&[1, -1]]).is_err());
        assert!(CnfFormula::from_ints(2, &[&[3]]).is_err());
        assert!(CnfFormula::from_ints(2, &[&[]]).is_err());
    }

    #[test]
    fn occurrences_are_left_to_right() {
        let f = sample_formula();
        let occ = f.literal_occurrences();
        assert_eq!(occ.len(), 11);
        assert_eq!(occ[0], (Lit::pos(1), 0));
        assert_eq!(occ[4], (Lit::neg(1), 1));
        assert_eq!(occ[10], (Lit::pos(4), 3));
    }
}
