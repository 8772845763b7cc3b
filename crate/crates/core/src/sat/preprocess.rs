use std::collections::BTreeMap;

use super::{CnfFormula, Lit, Provenance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreprocessOutcome {
    /// No unit clauses remain; every clause has two or three literals when
    /// the input was ≤3-CNF. `forced` records the propagated values.
    Reduced {
        formula: CnfFormula,
        forced: BTreeMap<usize, bool>,
    },
    /// Every clause got satisfied. The witness is total, with unforced
    /// variables set to false.
    TrivialYes { witness: Vec<bool> },
    /// Some clause lost all of its literals.
    TrivialNo,
}

/// Repeatedly satisfies unit clauses, deleting satisfied clauses and
/// falsified literals, until no unit clause is left.
pub fn preprocess_units(f: &CnfFormula) -> PreprocessOutcome {
    let mut clauses: Vec<Vec<Lit>> = f.clauses().to_vec();
    let mut forced: BTreeMap<usize, bool> = BTreeMap::new();

    while let Some(unit) = clauses.iter().find(|c| c.len() == 1).map(|c| c[0]) {
        forced.insert(unit.var(), unit.is_positive());
        let mut next = Vec::with_capacity(clauses.len());
        for c in clauses {
            if c.contains(&unit) {
                continue;
            }
            let reduced: Vec<Lit> = c.into_iter().filter(|&l| l != unit.negate()).collect();
            if reduced.is_empty() {
                return PreprocessOutcome::TrivialNo;
            }
            next.push(reduced);
        }
        clauses = next;
    }

    if clauses.is_empty() {
        let mut witness = vec![false; f.num_vars()];
        for (&v, &val) in &forced {
            witness[v - 1] = val;
        }
        debug_assert!(f.is_satisfied_by(&witness));
        return PreprocessOutcome::TrivialYes { witness };
    }

    let formula = CnfFormula::with_provenance(f.num_vars(), clauses, Provenance::Preprocessed)
        .expect("sub-clauses of valid clauses stay valid");
    PreprocessOutcome::Reduced { formula, forced }
}
