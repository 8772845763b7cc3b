use fixedbitset::FixedBitSet;

use super::{GraphError, LabeledGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SteinerOutcome {
    /// A smallest set `W` of non-terminals with `T ∪ W` inducing a
    /// connected subgraph.
    Feasible(Vec<usize>),
    Infeasible,
}

impl SteinerOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SteinerOutcome::Feasible(_))
    }
}

fn component_of(g: &LabeledGraph, start: usize) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(g.num_vertices());
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

/// Decides whether some `W ⊆ V`, `|W| ≤ k`, makes `T ∪ W` induce a connected
/// subgraph. Candidates are restricted to the component holding the
/// terminals; subsets are tried in order of size.
pub fn solve_steiner_tree(g: &LabeledGraph, terminals: &[usize], k: usize) -> Result<SteinerOutcome, GraphError> {
    let Some(&first) = terminals.first() else {
        return Err(GraphError::Precondition("terminal set must be nonempty".into()));
    };
    if let Some(&bad) = terminals.iter().find(|&&t| t >= g.num_vertices()) {
        return Err(GraphError::BadId(bad));
    }
    let comp = component_of(g, first);
    if terminals.iter().any(|&t| !comp.contains(t)) {
        return Ok(SteinerOutcome::Infeasible);
    }
    let pool: Vec<usize> = comp.ones().filter(|v| !terminals.contains(v)).collect();
    let mut current: Vec<usize> = terminals.to_vec();
    for size in 0..=k.min(pool.len()) {
        let mut w = Vec::with_capacity(size);
        if choose(g, &pool, 0, size, &mut w, &mut current) {
            return Ok(SteinerOutcome::Feasible(w));
        }
    }
    Ok(SteinerOutcome::Infeasible)
}

fn choose(g: &LabeledGraph, pool: &[usize], from: usize, left: usize, w: &mut Vec<usize>, current: &mut Vec<usize>) -> bool {
    if left == 0 {
        return g.induces_connected(current);
    }
    for i in from..=pool.len() - left {
        let v = pool[i];
        // A Steiner vertex with no neighbor among terminals or other
        // candidates can never join the tree.
        if g.degree(v) == 0 {
            continue;
        }
        w.push(v);
        current.push(v);
        if choose(g, pool, i + 1, left - 1, w, current) {
            return true;
        }
        w.pop();
        current.pop();
    }
    false
}
