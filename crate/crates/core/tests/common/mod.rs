#![allow(dead_code)]

use geodom::exactnum::Rat;
use geodom::graphs::{LabeledGraph, Weight};
use geodom::sat::{CnfFormula, Lit};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Strict-(3,3) corpus: seeds 0..count, `n` cycling through 3..=8.
pub fn corpus_params(count: u64) -> Vec<(usize, u64)> {
    (0..count).map(|seed| (3 + (seed % 6) as usize, seed)).collect()
}

/// Truth-table satisfiability.
pub fn brute_sat(f: &CnfFormula) -> bool {
    let n = f.num_vars();
    (0u32..1 << n).any(|mask| {
        let a: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        f.is_satisfied_by(&a)
    })
}

/// Implication chain x1 ∨ x2, ¬x1 ∨ x2, x2 → x3 → … → x_{k−1}, and
/// x_{k−1} → x_k together with x_{k−1} → ¬x_k. Unsatisfiable, with every
/// variable occurring two or three times. `pad` widens the first clause
/// with a variable `y` that two more clauses force false.
pub fn unsat_chain(k: usize, pad: bool, rng: &mut ChaCha8Rng) -> CnfFormula {
    assert!(k >= 4);
    let mut clauses: Vec<Vec<i32>> = vec![vec![1, 2], vec![-1, 2]];
    for i in 2..k {
        clauses.push(vec![-(i as i32), i as i32 + 1]);
    }
    clauses.push(vec![-(k as i32 - 1), -(k as i32)]);
    let mut n = k;
    if pad {
        let (y, z) = (k as i32 + 1, k as i32 + 2);
        clauses[0].push(y);
        clauses.push(vec![-y, z]);
        clauses.push(vec![-y, -z]);
        n += 2;
    }
    let mut perm: Vec<i32> = (1..=n as i32).collect();
    perm.shuffle(rng);
    let flip: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut out: Vec<Vec<Lit>> = clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|&l| {
                    let v = l.unsigned_abs() as usize - 1;
                    let s = if (l < 0) != flip[v] { -1 } else { 1 };
                    Lit::new(s * perm[v])
                })
                .collect()
        })
        .collect();
    out.shuffle(rng);
    CnfFormula::new(n, out).expect("valid chain")
}

pub fn unsat_supplement() -> Vec<CnfFormula> {
    let mut r = rng(0x5eed);
    let mut out = Vec::new();
    for _ in 0..3 {
        for k in 4..=8 {
            out.push(unsat_chain(k, false, &mut r));
        }
        for k in 4..=6 {
            out.push(unsat_chain(k, true, &mut r));
        }
    }
    out
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{}", i + 1), Weight::one()).unwrap();
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Same graph with small random weights, some zero and some infinite.
pub fn reweight(g: &LabeledGraph, rng: &mut ChaCha8Rng) -> LabeledGraph {
    let mut h = g.clone();
    for v in 0..h.num_vertices() {
        let w = match rng.random_range(0..10) {
            0 => Weight::Infinite,
            1 => Weight::zero(),
            _ => Weight::Finite(Rat::new(rng.random_range(1..=9), rng.random_range(1..=4))),
        };
        h.set_weight(v, w);
    }
    h
}

fn closed_masks(g: &LabeledGraph) -> Vec<u32> {
    (0..g.num_vertices())
        .map(|v| g.neighbors(v).fold(1u32 << v, |m, u| m | 1 << u))
        .collect()
}

fn dominates(nb: &[u32], mask: u32) -> bool {
    let full = (1u32 << nb.len()) - 1;
    (0..nb.len()).filter(|&v| mask >> v & 1 == 1).fold(0, |acc, v| acc | nb[v]) == full
}

fn connected(g: &LabeledGraph, mask: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if mask >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == mask
}

fn members(mask: u32, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&v| mask >> v & 1 == 1)
}

pub fn brute_ds(g: &LabeledGraph) -> usize {
    let nb = closed_masks(g);
    (0u32..1 << nb.len())
        .filter(|&m| dominates(&nb, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .expect("the full set dominates")
}

pub fn brute_wds(g: &LabeledGraph) -> Option<Rat> {
    let nb = closed_masks(g);
    let n = nb.len();
    (0u32..1 << n)
        .filter(|&m| dominates(&nb, m))
        .filter_map(|m| {
            members(m, n)
                .map(|v| g.weight(v).finite().cloned())
                .sum::<Option<Rat>>()
        })
        .min()
}

pub fn brute_cds(g: &LabeledGraph) -> Option<usize> {
    let nb = closed_masks(g);
    (1u32..1 << nb.len())
        .filter(|&m| dominates(&nb, m) && connected(g, m))
        .map(|m| m.count_ones() as usize)
        .min()
}

/// Fewest non-terminals that connect the terminals.
pub fn brute_steiner(g: &LabeledGraph, terminals: &[usize]) -> Option<usize> {
    let t_mask = terminals.iter().fold(0u32, |m, &t| m | 1 << t);
    (0u32..1 << g.num_vertices())
        .filter(|&w| w & t_mask == 0 && connected(g, w | t_mask))
        .map(|w| w.count_ones() as usize)
        .min()
}
