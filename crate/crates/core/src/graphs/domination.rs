use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{LabeledGraph, Weight};
use crate::exactnum::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<C> {
    pub optimum: C,
    pub witness: Vec<usize>,
    /// Search-tree nodes explored.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve<C> {
    Optimal(SolveResult<C>),
    /// No solution within the budget (or none at all).
    Infeasible { nodes: u64 },
}

impl<C> Solve<C> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solve::Optimal(_))
    }

    pub fn optimum(&self) -> Option<&C> {
        match self {
            Solve::Optimal(r) => Some(&r.optimum),
            Solve::Infeasible { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Solve::Optimal(r) => Some(&r.witness),
            Solve::Infeasible { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Solve::Optimal(r) => r.nodes,
            Solve::Infeasible { nodes } => *nodes,
        }
    }
}

fn closed_neighborhoods(g: &LabeledGraph) -> Vec<FixedBitSet> {
    (0..g.num_vertices()).map(|v| g.closed_neighborhood(v)).collect()
}

/// Branch-and-bound over closed neighborhoods. Every vertex that is not yet
/// dominated must receive a dominator from its closed neighborhood; we
/// branch on the undominated vertex with the fewest admissible dominators,
/// and forbid each tried dominator in the later sibling branches. A
/// dominator whose fresh coverage is contained in a no-heavier sibling's
/// is skipped: swapping it for that sibling never costs more.
///
/// The lower bound is a greedy packing of undominated vertices whose
/// admissible dominator sets are pairwise disjoint; each needs its own
/// dominator, so the cheapest member of each set is a valid charge.
///
/// The search runs under a cost cap that starts at zero and is raised to
/// the smallest bound that exceeded it, so the first solution found is
/// optimal.
struct DomSearch<'a> {
    nb: &'a [FixedBitSet],
    weight: Vec<Option<u64>>,
    cap: u64,
    overflow: Option<u64>,
    best: Option<(u64, Vec<usize>)>,
    nodes: u64,
}

impl DomSearch<'_> {
    fn admits(&mut self, cost: u64) -> bool {
        if self.best.as_ref().is_some_and(|(b, _)| cost >= *b) {
            return false;
        }
        if cost > self.cap {
            self.overflow = Some(self.overflow.map_or(cost, |o| o.min(cost)));
            return false;
        }
        true
    }

    fn search(&mut self, dominated: &FixedBitSet, allowed: &mut FixedBitSet, chosen: &mut Vec<usize>, cost: u64) {
        self.nodes += 1;
        let n = self.nb.len();
        if dominated.count_ones(..) == n {
            if self.admits(cost) {
                self.best = Some((cost, chosen.clone()));
            }
            return;
        }

        let mut pending: Vec<(usize, FixedBitSet, usize)> = Vec::new();
        for u in dominated.zeroes() {
            let mut cand = self.nb[u].clone();
            cand.intersect_with(allowed);
            let k = cand.count_ones(..);
            if k == 0 {
                return;
            }
            pending.push((u, cand, k));
        }
        pending.sort_by_key(|&(u, _, k)| (k, u));

        let mut used = FixedBitSet::with_capacity(n);
        let mut bound = cost;
        for (_, cand, _) in &pending {
            if cand.is_disjoint(&used) {
                used.union_with(cand);
                bound += cand.ones().filter_map(|v| self.weight[v]).min().unwrap_or(0);
            }
        }
        if !self.admits(bound) {
            return;
        }

        let (_, cand, _) = &pending[0];
        let options: Vec<(usize, u64, FixedBitSet)> = cand
            .ones()
            .map(|v| {
                let mut fresh = self.nb[v].clone();
                fresh.difference_with(dominated);
                (v, self.weight[v].expect("allowed vertices have finite weight"), fresh)
            })
            .collect();
        let mut order: Vec<(u64, usize, usize)> = options
            .iter()
            .filter(|(v, w, fresh)| {
                !options.iter().any(|(v2, w2, fresh2)| {
                    v2 != v
                        && w2 <= w
                        && fresh.is_subset(fresh2)
                        && (w2 < w || fresh != fresh2 || v2 < v)
                })
            })
            .map(|(v, w, fresh)| (*w, usize::MAX - fresh.count_ones(..), *v))
            .collect();
        order.sort_unstable();

        let mut forbidden = Vec::new();
        for (w, _, v) in order {
            if !self.admits(cost + w) {
                break;
            }
            let mut next = dominated.clone();
            next.union_with(&self.nb[v]);
            allowed.set(v, false);
            chosen.push(v);
            self.search(&next, allowed, chosen, cost + w);
            chosen.pop();
            forbidden.push(v);
        }
        for v in forbidden {
            allowed.insert(v);
        }
    }
}

/// Runs the domination search on integer weights (`None` = never selectable).
/// Zero-weight vertices are taken up front: adding them never hurts.
fn dominate(g: &LabeledGraph, weight: Vec<Option<u64>>, limit: Option<u64>) -> Solve<u64> {
    let n = g.num_vertices();
    let nb = closed_neighborhoods(g);
    let mut dominated = FixedBitSet::with_capacity(n);
    let mut allowed = FixedBitSet::with_capacity(n);
    let mut chosen = Vec::new();
    for (v, w) in weight.iter().enumerate() {
        match w {
            Some(0) => {
                chosen.push(v);
                dominated.union_with(&nb[v]);
            }
            Some(_) => allowed.insert(v),
            None => {}
        }
    }
    let mut s = DomSearch {
        nb: &nb,
        weight,
        cap: 0,
        overflow: None,
        best: None,
        nodes: 0,
    };
    loop {
        s.overflow = None;
        s.search(&dominated, &mut allowed, &mut chosen, 0);
        if s.best.is_some() {
            break;
        }
        match s.overflow {
            Some(next) if limit.is_none_or(|l| next <= l) => s.cap = next,
            _ => break,
        }
    }
    match s.best {
        Some((optimum, mut witness)) => {
            witness.sort_unstable();
            Solve::Optimal(SolveResult {
                optimum,
                witness,
                nodes: s.nodes,
            })
        }
        None => Solve::Infeasible { nodes: s.nodes },
    }
}

/// Exact minimum dominating set (closed-neighborhood domination). With a
/// budget, returns the optimum if it is at most `budget` and `Infeasible`
/// otherwise.
pub fn solve_min_dominating_set(g: &LabeledGraph, budget: Option<usize>) -> Solve<usize> {
    let weight = vec![Some(1); g.num_vertices()];
    let out = match dominate(g, weight, budget.map(|b| b as u64)) {
        Solve::Optimal(r) => Solve::Optimal(SolveResult {
            optimum: r.optimum as usize,
            witness: r.witness,
            nodes: r.nodes,
        }),
        Solve::Infeasible { nodes } => Solve::Infeasible { nodes },
    };
    if let Some(w) = out.witness() {
        assert!(g.is_dominating(w) && out.optimum() == Some(&w.len()));
    }
    out
}

/// Exact minimum-weight dominating set avoiding infinite-weight vertices.
/// Finite weights above the budget are treated as infinite.
pub fn solve_min_weight_dominating_set(g: &LabeledGraph, budget: Option<&Rat>) -> Solve<Rat> {
    let finite: Vec<Option<&Rat>> = g
        .vertices()
        .iter()
        .map(|v| match &v.weight {
            Weight::Finite(w) if budget.is_none_or(|b| w <= b) => Some(w),
            _ => None,
        })
        .collect();
    // Scale to integers by the lcm of denominators.
    let scale = finite
        .iter()
        .flatten()
        .map(|w| w.denom().clone())
        .chain(budget.map(|b| b.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scale_rat = Rat::from_bigints(scale.clone(), BigInt::one());
    let to_int = |w: &Rat| -> Option<u64> { (w * &scale_rat).numer().to_u64() };
    let weight: Option<Vec<Option<u64>>> = finite
        .iter()
        .map(|w| match w {
            Some(w) => to_int(w).map(Some),
            None => Some(None),
        })
        .collect();
    let total: Option<u64> = weight
        .as_ref()
        .and_then(|ws| ws.iter().flatten().try_fold(0u64, |a, &b| a.checked_add(b)));
    let (Some(weight), Some(_)) = (weight, total) else {
        panic!("weights too large for the integer search");
    };
    let limit = budget.map(|b| {
        (b * &scale_rat)
            .floor()
            .to_u64()
            .expect("budget fits once weights do")
    });
    let out = match dominate(g, weight, limit) {
        Solve::Optimal(r) => Solve::Optimal(SolveResult {
            optimum: Rat::from_int(r.optimum as i64) / &scale_rat,
            witness: r.witness,
            nodes: r.nodes,
        }),
        Solve::Infeasible { nodes } => Solve::Infeasible { nodes },
    };
    if let Solve::Optimal(r) = &out {
        assert!(g.is_dominating(&r.witness));
        assert_eq!(g.total_weight(&r.witness).as_ref(), Some(&r.optimum));
    }
    out
}

/// Enumerates connected vertex sets by reverse search: every set is grown
/// from its smallest vertex, and each frontier vertex is either added or
/// excluded for the rest of the subtree.
struct CdsSearch<'a> {
    g: &'a LabeledGraph,
    nb: &'a [FixedBitSet],
    limit: Option<usize>,
    best: Option<Vec<usize>>,
    nodes: u64,
}

impl CdsSearch<'_> {
    fn admits(&self, size: usize) -> bool {
        self.best.as_ref().is_none_or(|b| size < b.len()) && self.limit.is_none_or(|l| size <= l)
    }

    fn grow(&mut self, set: &mut Vec<usize>, dominated: &FixedBitSet, frontier: &mut Vec<usize>, blocked: &mut FixedBitSet) {
        self.nodes += 1;
        let n = self.nb.len();
        if dominated.count_ones(..) == n {
            if self.admits(set.len()) {
                self.best = Some(set.clone());
            }
            return;
        }
        // Packing bound over dominators still reachable in this subtree.
        let mut used = FixedBitSet::with_capacity(n);
        let mut bound = set.len();
        for u in dominated.zeroes() {
            let mut cand = self.nb[u].clone();
            cand.difference_with(blocked);
            if cand.is_clear() {
                return;
            }
            if cand.is_disjoint(&used) {
                used.union_with(&cand);
                bound += 1;
            }
        }
        if !self.admits(bound) {
            return;
        }
        let Some(v) = frontier.pop() else {
            return;
        };
        // Include v.
        let mut added = Vec::new();
        for w in self.g.neighbors(v) {
            if !blocked.contains(w) && !set.contains(&w) && !frontier.contains(&w) {
                frontier.push(w);
                added.push(w);
            }
        }
        set.push(v);
        let mut next = dominated.clone();
        next.union_with(&self.nb[v]);
        blocked.insert(v);
        self.grow(set, &next, frontier, blocked);
        set.pop();
        frontier.truncate(frontier.len() - added.len());
        // Exclude v (it stays blocked for the sibling subtree).
        self.grow(set, dominated, frontier, blocked);
        blocked.set(v, false);
        frontier.push(v);
    }
}

/// Exact minimum connected dominating set. A disconnected graph has none.
pub fn solve_min_connected_dominating_set(g: &LabeledGraph, budget: Option<usize>) -> Solve<usize> {
    let n = g.num_vertices();
    if n == 0 {
        return Solve::Optimal(SolveResult {
            optimum: 0,
            witness: vec![],
            nodes: 0,
        });
    }
    if !g.is_connected() {
        return Solve::Infeasible { nodes: 0 };
    }
    let nb = closed_neighborhoods(g);
    let mut s = CdsSearch {
        g,
        nb: &nb,
        limit: budget,
        best: None,
        nodes: 0,
    };
    for (root, root_nb) in nb.iter().enumerate() {
        // Sets whose minimum vertex is `root`.
        let mut blocked = FixedBitSet::with_capacity(n);
        for v in 0..=root {
            blocked.insert(v);
        }
        let mut frontier: Vec<usize> = g.neighbors(root).filter(|&w| w > root).collect();
        frontier.reverse();
        let mut set = vec![root];
        let dominated = root_nb.clone();
        s.grow(&mut set, &dominated, &mut frontier, &mut blocked);
    }
    match s.best {
        Some(mut witness) => {
            witness.sort_unstable();
            assert!(g.is_dominating(&witness) && g.induces_connected(&witness));
            Solve::Optimal(SolveResult {
                optimum: witness.len(),
                witness,
                nodes: s.nodes,
            })
        }
        None => Solve::Infeasible { nodes: s.nodes },
    }
}
