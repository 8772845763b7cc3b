//! Vertex-labeled, optionally vertex-weighted simple graphs and exact
//! desk-scale solvers for (weighted / connected) dominating set and
//! Steiner tree.

mod domination;
mod steiner;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::Rat;

pub use domination::{
    solve_min_connected_dominating_set, solve_min_dominating_set,
    solve_min_weight_dominating_set, Solve, SolveResult,
};
pub use steiner::{solve_steiner_tree, SteinerOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("self-loop at {0:?}")]
    SelfLoop(String),
    #[error("vertex id {0} out of range")]
    BadId(usize),
    #[error("vertex ids must be dense and in order; found {found} at position {pos}")]
    NonDenseIds { pos: usize, found: usize },
    #[error("negative weight on {0:?}")]
    NegativeWeight(String),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(Rat),
    Infinite,
}

impl Weight {
    pub fn one() -> Weight {
        Weight::Finite(Rat::one())
    }

    pub fn zero() -> Weight {
        Weight::Finite(Rat::zero())
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Weight::Infinite)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            return Ok(Weight::Infinite);
        }
        s.parse().map(Weight::Finite).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub label: String,
    pub weight: Weight,
}

/// Simple undirected graph with unique vertex labels and dense ids.
#[derive(Debug, Clone, Default)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    adj: Vec<BTreeSet<usize>>,
    by_label: HashMap<String, usize>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adj == other.adj
    }
}

impl Eq for LabeledGraph {}

impl LabeledGraph {
    pub fn new() -> LabeledGraph {
        LabeledGraph::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, weight: Weight) -> Result<usize, GraphError> {
        let label = label.into();
        if self.by_label.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        if weight.finite().is_some_and(Rat::is_negative) {
            return Err(GraphError::NegativeWeight(label));
        }
        let id = self.vertices.len();
        self.by_label.insert(label.clone(), id);
        self.vertices.push(Vertex { id, label, weight });
        self.adj.push(BTreeSet::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.vertices.len();
        if u >= n {
            return Err(GraphError::BadId(u));
        }
        if v >= n {
            return Err(GraphError::BadId(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.vertices[u].label.clone()));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn add_edge_by_label(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let u = self.id_of(a).ok_or_else(|| GraphError::UnknownLabel(a.into()))?;
        let v = self.id_of(b).ok_or_else(|| GraphError::UnknownLabel(b.into()))?;
        self.add_edge(u, v)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn set_weight(&mut self, v: usize, w: Weight) {
        self.vertices[v].weight = w;
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v].label
    }

    pub fn weight(&self, v: usize) -> &Weight {
        &self.vertices[v].weight
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(low, high)` id pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn closed_neighborhood(&self, v: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.num_vertices());
        s.insert(v);
        for u in self.neighbors(v) {
            s.insert(u);
        }
        s
    }

    pub fn is_dominating(&self, set: &[usize]) -> bool {
        let mut dominated = FixedBitSet::with_capacity(self.num_vertices());
        for &v in set {
            dominated.union_with(&self.closed_neighborhood(v));
        }
        dominated.count_ones(..) == self.num_vertices()
    }

    /// Whether the subgraph induced by `set` is connected. The empty set
    /// counts as connected.
    pub fn induces_connected(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else {
            return true;
        };
        let mut inside = FixedBitSet::with_capacity(self.num_vertices());
        for &v in set {
            inside.insert(v);
        }
        let mut seen = FixedBitSet::with_capacity(self.num_vertices());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if inside.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.count_ones(..) == inside.count_ones(..)
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.num_vertices()).collect();
        self.induces_connected(&all)
    }

    /// Sum of finite weights; `None` if the set contains an infinite vertex.
    pub fn total_weight(&self, set: &[usize]) -> Option<Rat> {
        set.iter()
            .map(|&v| self.weight(v).finite().cloned())
            .sum::<Option<Rat>>()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<LabeledGraph, GraphError> {
        let mut g = LabeledGraph::new();
        for (pos, v) in j.vertices.iter().enumerate() {
            if v.id != pos {
                return Err(GraphError::NonDenseIds { pos, found: v.id });
            }
            g.add_vertex(v.label.clone(), v.weight.clone())?;
        }
        for &[u, v] in &j.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph serializes")
    }
}

/// On-disk graph format: `{"vertices":[{"id":0,"label":"x1_T","weight":"1/1"}],"edges":[[0,1]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[usize; 2]>,
}

/// Label-matched differences between an expected and an actual graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GraphDiff {
    /// Edges of the expected graph absent from the actual one.
    pub missing_edges: Vec<(String, String)>,
    /// Edges of the actual graph absent from the expected one.
    pub extra_edges: Vec<(String, String)>,
    /// Labels present on only one side.
    pub label_mismatches: Vec<String>,
}

impl GraphDiff {
    pub fn is_empty(&self) -> bool {
        self.missing_edges.is_empty() && self.extra_edges.is_empty() && self.label_mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphCompare {
    Equal,
    Diff(GraphDiff),
}

fn label_edges(g: &LabeledGraph) -> BTreeSet<(String, String)> {
    g.edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

fn unique_labels(g: &LabeledGraph) -> Result<BTreeSet<String>, GraphError> {
    let mut seen = BTreeSet::new();
    for v in g.vertices() {
        if !seen.insert(v.label.clone()) {
            return Err(GraphError::DuplicateLabel(v.label.clone()));
        }
    }
    Ok(seen)
}

/// Compares two graphs by vertex label (not up to isomorphism).
pub fn graph_equal(expected: &LabeledGraph, actual: &LabeledGraph) -> Result<GraphCompare, GraphError> {
    let la = unique_labels(expected)?;
    let lb = unique_labels(actual)?;
    let ea = label_edges(expected);
    let eb = label_edges(actual);
    let diff = GraphDiff {
        missing_edges: ea.difference(&eb).cloned().collect(),
        extra_edges: eb.difference(&ea).cloned().collect(),
        label_mismatches: la.symmetric_difference(&lb).cloned().collect(),
    };
    Ok(if diff.is_empty() {
        GraphCompare::Equal
    } else {
        GraphCompare::Diff(diff)
    })
}

/// Small named graphs used in tests and examples.
pub mod named {
    use super::*;

    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for i in 0..n {
            g.add_vertex(format!("v{}", i + 1), Weight::one()).unwrap();
        }
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        unweighted(n, &edges)
    }

    pub fn complete(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        unweighted(n, &edges)
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> LabeledGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        unweighted(leaves + 1, &edges)
    }
}
