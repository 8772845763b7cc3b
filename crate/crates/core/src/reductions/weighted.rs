use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{certify, FormulaCounts, Layout, ReductionError, ReductionOutput, Target};
use crate::exactnum::{Coord, Rat};
use crate::graphs::{LabeledGraph, Weight};
use crate::sat::CnfFormula;
use crate::scene::{circle_point, Ball, Scene, SceneObjects};

/// Height of a two-literal clause ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseHeight {
    /// Halfway between the heights of its two literal balls, `2 − (i + ½)ε`.
    BetweenLiterals,
    /// `−(i + ½)ε`, far below the literal balls it must touch.
    NegatedOffset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedParams {
    /// Vertical spacing unit.
    pub epsilon: Rat,
    /// Literal `i` sits at the circle point with half-angle tangent `angle_scale · i`.
    pub angle_scale: Rat,
    /// Every diameter is `1 + contact_margin`.
    pub contact_margin: Rat,
    pub clause_height: ClauseHeight,
}

impl WeightedParams {
    /// Parameters for which every separation inequality holds with room to
    /// spare: the literal arc spans at most `2·atan(3/8)` radians, and `ε`
    /// is the largest unit fraction below `s² / (2(t + 2n))`, where `s` is
    /// the smallest chord between neighbouring literal directions.
    pub fn certified(f: &CnfFormula) -> WeightedParams {
        let FormulaCounts { n, t, .. } = counts(f);
        let n = n.max(1) as i64;
        let t = t as i64;
        let angle_scale = Rat::new(1, 8 * n).min(Rat::new(3, 8 * t.max(1)));
        let last = t.max(2);
        let pts: Vec<[Rat; 2]> = (1..=last)
            .map(|i| circle_point(&(&angle_scale * Rat::from_int(i))))
            .collect();
        let chord_sq = pts
            .windows(2)
            .map(|w| (&w[0][0] - &w[1][0]).square() + (&w[0][1] - &w[1][1]).square())
            .min()
            .expect("at least two points");
        let bound = Rat::from_int(2 * (t + 2 * n)) / chord_sq;
        let denom = bound.floor() + BigInt::from(1);
        WeightedParams {
            epsilon: Rat::from_bigints(BigInt::from(1), denom),
            angle_scale,
            contact_margin: Rat::zero(),
            clause_height: ClauseHeight::BetweenLiterals,
        }
    }

    /// `ε = 1/(3tn²)`, literal angle `i/n` (half-angle tangent `i/(2n)`),
    /// and the negated two-literal clause height.
    pub fn unscaled(f: &CnfFormula) -> WeightedParams {
        let FormulaCounts { n, t, .. } = counts(f);
        let n = n.max(1) as i64;
        let t = (t as i64).max(1);
        WeightedParams {
            epsilon: Rat::new(1, 3 * t * n * n),
            angle_scale: Rat::new(1, 2 * n),
            contact_margin: Rat::zero(),
            clause_height: ClauseHeight::NegatedOffset,
        }
    }

    fn to_map(&self) -> BTreeMap<String, Rat> {
        BTreeMap::from([
            ("epsilon".to_string(), self.epsilon.clone()),
            ("angle_scale".to_string(), self.angle_scale.clone()),
            ("contact_margin".to_string(), self.contact_margin.clone()),
        ])
    }
}

fn counts(f: &CnfFormula) -> FormulaCounts {
    FormulaCounts {
        n: f.num_vars(),
        t: f.num_literals(),
        m: f.num_clauses(),
    }
}

/// Vertex-weighted unit-ball graph: seven cliques chained by matchings and
/// paths. It has a dominating set of weight `n + t` iff the formula is
/// satisfiable.
pub fn build_gphi_weighted(f: &CnfFormula) -> Result<ReductionOutput, ReductionError> {
    let layout = Layout::new(f)?;
    let (n, t) = (layout.counts.n, layout.counts.t);
    let mut g = LabeledGraph::new();
    let inf = Weight::Infinite;
    let one = Weight::one();

    let c1: Vec<usize> = (1..=n)
        .map(|j| g.add_vertex(format!("x{j}_1"), inf.clone()))
        .collect::<Result<_, _>>()?;
    let mut c2 = Vec::with_capacity(2 * n);
    for j in 1..=n {
        c2.push(g.add_vertex(format!("x{j}_2T"), one.clone())?);
        c2.push(g.add_vertex(format!("x{j}_2F"), one.clone())?);
    }
    let layer = |g: &mut LabeledGraph, level: usize, w: &Weight| -> Result<Vec<usize>, ReductionError> {
        Ok((1..=t)
            .map(|i| g.add_vertex(format!("l{i}_{level}"), w.clone()))
            .collect::<Result<_, _>>()?)
    };
    let c3 = layer(&mut g, 3, &inf)?;
    let mut c4 = layer(&mut g, 4, &one)?;
    let c5 = layer(&mut g, 5, &inf)?;
    let mut c6 = layer(&mut g, 6, &one)?;
    let c7: Vec<usize> = (1..=layout.counts.m)
        .map(|k| g.add_vertex(format!("c{k}_7"), inf.clone()))
        .collect::<Result<_, _>>()?;
    c4.push(g.add_vertex("d4", Weight::zero())?);
    c6.push(g.add_vertex("d6", Weight::zero())?);

    for clique in [&c1, &c2, &c3, &c4, &c5, &c6, &c7] {
        for (a, &u) in clique.iter().enumerate() {
            for &v in &clique[a + 1..] {
                g.add_edge(u, v)?;
            }
        }
    }
    for j in 0..n {
        g.add_edge(c1[j], c2[2 * j])?;
        g.add_edge(c1[j], c2[2 * j + 1])?;
    }
    for (i, o) in layout.occ.iter().enumerate() {
        let v = o.lit.var() - 1;
        let setting = if o.lit.is_positive() { c2[2 * v] } else { c2[2 * v + 1] };
        g.add_edge(setting, c3[i])?;
        g.add_edge(c3[i], c4[i])?;
        g.add_edge(c4[i], c5[i])?;
        g.add_edge(c5[i], c6[i])?;
        g.add_edge(c6[i], c7[o.clause])?;
    }

    debug_assert_eq!(g.num_vertices(), 3 * n + 4 * t + layout.counts.m + 2);
    Ok(ReductionOutput {
        graph: g,
        target: Target::WeightedDominatingSet {
            budget: Rat::from_int((n + t) as i64),
        },
        counts: Some(layout.counts),
    })
}

/// Realizes the weighted graph with congruent balls of diameter
/// `1 + contact_margin`, then certifies the result exactly.
///
/// Literal columns stand at rational points of the unit circle; the two
/// axis cliques sit on the `z`-axis; the variable and clause cliques sit
/// on the negative `x`-axis at a square-root distance.
pub fn realize_weighted_unit(f: &CnfFormula, params: &WeightedParams) -> Result<Scene, ReductionError> {
    let out = build_gphi_weighted(f)?;
    let layout = Layout::new(f)?;
    let FormulaCounts { n, t, .. } = layout.counts;
    let eps = &params.epsilon;
    if !eps.is_positive() || !params.angle_scale.is_positive() || params.contact_margin.is_negative() {
        return Err(ReductionError::Precondition(
            "epsilon and angle_scale must be positive, contact_margin non-negative".into(),
        ));
    }
    if Rat::from_int(2 * (n + t) as i64) * eps >= Rat::one() {
        return Err(ReductionError::Precondition("epsilon is too large for this formula".into()));
    }

    let r_sq = ((Rat::one() + &params.contact_margin) / Rat::from_int(2)).square();
    let int = |k: usize| Rat::from_int(k as i64);
    let half = Rat::new(1, 2);
    let two = Rat::from_int(2);
    let axis = |z: Rat| [Rat::zero(), Rat::zero(), z];
    let column = |i: usize, radial: &Rat, z: Rat| {
        let [x, y] = circle_point(&(&params.angle_scale * int(i)));
        [radial * x, radial * y, z]
    };
    let behind = |q: Rat, z: Rat| -> Result<[Coord; 3], ReductionError> {
        let x = Coord::pure_sqrt(-Rat::one(), q).map_err(|e| ReductionError::Precondition(e.to_string()))?;
        Ok([x, Coord::rat(Rat::zero()), Coord::rat(z)])
    };
    let near = Rat::one() - eps.square() / Rat::from_int(4);
    let far = Rat::one() - eps.square();

    let setting_z = |var: usize, positive: bool| {
        let base = two.clone() * int(var) * eps;
        if positive {
            base - eps
        } else {
            base
        }
    };
    let literal_z = |i: usize| &two - int(i) * eps;

    let mut balls = Vec::with_capacity(out.graph.num_vertices());
    let mut push = |label: String, c: [Coord; 3]| -> Result<(), ReductionError> {
        balls.push(Ball::new(label, c, r_sq.clone())?);
        Ok(())
    };
    let rat3 = |c: [Rat; 3]| c.map(Coord::rat);

    // Midway between the two setting balls of the variable.
    for j in 1..=n {
        push(format!("x{j}_1"), behind(near.clone(), (two.clone() * int(j) - &half) * eps)?)?;
    }
    for j in 1..=n {
        push(format!("x{j}_2T"), rat3(axis(setting_z(j, true))))?;
        push(format!("x{j}_2F"), rat3(axis(setting_z(j, false))))?;
    }
    let one = Rat::one();
    for (idx, o) in layout.occ.iter().enumerate() {
        let z = setting_z(o.lit.var(), o.lit.is_positive());
        push(format!("l{}_3", idx + 1), rat3(column(idx + 1, &one, z)))?;
    }
    for i in 1..=t {
        push(format!("l{i}_4"), rat3(column(i, &one, one.clone())))?;
    }
    for i in 1..=t {
        push(format!("l{i}_5"), rat3(column(i, &one, literal_z(i))))?;
    }
    for i in 1..=t {
        push(format!("l{i}_6"), rat3(axis(literal_z(i))))?;
    }
    for (k, range) in layout.clause_ranges.iter().enumerate() {
        let first = range.start + 1;
        let center = if range.len() == 3 {
            behind(far.clone(), literal_z(first + 1))?
        } else {
            let offset = (int(first) + &half) * eps;
            let z = match params.clause_height {
                ClauseHeight::BetweenLiterals => &two - offset,
                ClauseHeight::NegatedOffset => -offset,
            };
            behind(near.clone(), z)?
        };
        push(format!("c{}_7", k + 1), center)?;
    }
    // The mid-arc dummy at radial 3/2 reaches every literal column at
    // height 1 and nothing else.
    let mid = (&params.angle_scale * int(t.max(1) + 1)) / &two;
    let [mx, my] = circle_point(&mid);
    let radial = Rat::new(3, 2);
    push("d4".into(), rat3([&radial * mx, &radial * my, one.clone()]))?;
    push("d6".into(), rat3(axis(Rat::new(5, 2))))?;

    let mut map = params.to_map();
    map.insert("dummy_radial".into(), radial);
    certify(Scene {
        params: map,
        objects: SceneObjects::Balls(balls),
        expected: out.graph,
    })
}
