//! Gadget graphs built from (3,3)-CNF formulas and from arbitrary graphs,
//! their exact geometric realizations, and the scene-versus-graph check.
//!
//! Label scheme (indices are 1-based):
//!
//! * ball graph: `xj_T`, `xj_F`, `xj_ear`, `li_1`, `li_2`, `li_3`, `li_ear`, `ck`
//! * unit-ball graph: `xj_1`, `xj_2T`, `xj_2F`, `li_3` .. `li_6`, `ck_7`, `d4`, `d6`
//! * split cover: `a_i`, `b_i`

mod split;
mod unweighted;
mod weighted;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Rat;
use crate::graphs::{graph_equal, GraphCompare, GraphDiff, GraphError, LabeledGraph, Weight};
use crate::sat::{CnfFormula, Lit};
use crate::scene::{intersection_graph, Scene, SceneError};

pub use split::{build_split_double_cover, realize_split_planar};
pub use unweighted::{build_gphi_unweighted, realize_unweighted_3d};
pub use weighted::{build_gphi_weighted, realize_weighted_unit, ClauseHeight, WeightedParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("clause {clause} has a single literal; run unit preprocessing first")]
    UnitClause { clause: usize },
    #[error("clause {clause} has {size} literals; expected 2 or 3")]
    ClauseSize { clause: usize, size: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("realization does not match the expected graph ({} missing, {} extra edges); refine the parameters", .0.missing_edges.len(), .0.extra_edges.len())]
    RealizationInfeasible(Box<RealizationReport>),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCounts {
    pub n: usize,
    pub t: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum Target {
    /// Dominating set of at most `k` vertices.
    DominatingSet { k: usize },
    /// Dominating set of total weight at most `budget`.
    WeightedDominatingSet { budget: Rat },
    /// A query budget `k` carries over unchanged to dominating set,
    /// connected dominating set, and Steiner tree with these terminals.
    SplitCover { terminals: Vec<usize> },
}

impl Target {
    pub fn budget(&self) -> Option<Rat> {
        match self {
            Target::DominatingSet { k } => Some(Rat::from_int(*k as i64)),
            Target::WeightedDominatingSet { budget } => Some(budget.clone()),
            Target::SplitCover { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: LabeledGraph,
    pub target: Target,
    pub counts: Option<FormulaCounts>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RealizationReport {
    pub matches: bool,
    pub missing_edges: Vec<(String, String)>,
    pub extra_edges: Vec<(String, String)>,
    pub tangent_pairs: Vec<(String, String)>,
    pub params: BTreeMap<String, Rat>,
}

impl RealizationReport {
    pub fn tangent_count(&self) -> usize {
        self.tangent_pairs.len()
    }
}

/// Compares the exact intersection graph of `s` with its expected graph.
pub fn verify_realization(s: &Scene) -> Result<RealizationReport, SceneError> {
    let ig = intersection_graph(s)?;
    let diff = match graph_equal(&s.expected, &ig.graph)? {
        GraphCompare::Equal => GraphDiff::default(),
        GraphCompare::Diff(d) => d,
    };
    let tangent_pairs = ig
        .tangent_pairs
        .iter()
        .map(|&(i, j)| (ig.graph.label(i).to_string(), ig.graph.label(j).to_string()))
        .collect();
    Ok(RealizationReport {
        matches: diff.missing_edges.is_empty() && diff.extra_edges.is_empty(),
        missing_edges: diff.missing_edges,
        extra_edges: diff.extra_edges,
        tangent_pairs,
        params: s.params.clone(),
    })
}

fn certify(s: Scene) -> Result<Scene, ReductionError> {
    let report = verify_realization(&s)?;
    if report.matches {
        Ok(s)
    } else {
        Err(ReductionError::RealizationInfeasible(Box::new(report)))
    }
}

/// Answer of unit preprocessing when it settles the formula outright:
/// a single vertex with budget 1 (yes) or 0 (no).
pub fn trivial_instance(satisfiable: bool, weighted: bool) -> ReductionOutput {
    let mut graph = LabeledGraph::new();
    graph.add_vertex("trivial", Weight::one()).expect("fresh graph");
    let k = usize::from(satisfiable);
    let target = if weighted {
        Target::WeightedDominatingSet {
            budget: Rat::from_int(k as i64),
        }
    } else {
        Target::DominatingSet { k }
    };
    ReductionOutput {
        graph,
        target,
        counts: None,
    }
}

/// One literal occurrence, indexed left to right over the whole formula.
#[derive(Debug, Clone, Copy)]
struct Occurrence {
    lit: Lit,
    clause: usize,
}

/// Literal occurrences in order, plus the occurrence range of each clause.
struct Layout {
    occ: Vec<Occurrence>,
    clause_ranges: Vec<std::ops::Range<usize>>,
    counts: FormulaCounts,
}

impl Layout {
    fn new(f: &CnfFormula) -> Result<Layout, ReductionError> {
        let mut occ = Vec::new();
        let mut clause_ranges = Vec::new();
        for (k, c) in f.clauses().iter().enumerate() {
            match c.len() {
                1 => return Err(ReductionError::UnitClause { clause: k + 1 }),
                2 | 3 => {}
                size => return Err(ReductionError::ClauseSize { clause: k + 1, size }),
            }
            let start = occ.len();
            occ.extend(c.iter().map(|&lit| Occurrence { lit, clause: k }));
            clause_ranges.push(start..occ.len());
        }
        let counts = FormulaCounts {
            n: f.num_vars(),
            t: occ.len(),
            m: clause_ranges.len(),
        };
        Ok(Layout {
            occ,
            clause_ranges,
            counts,
        })
    }
}
