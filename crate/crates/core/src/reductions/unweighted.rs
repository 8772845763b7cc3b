use std::collections::BTreeMap;

use super::{certify, Layout, ReductionError, ReductionOutput, Target};
use crate::exactnum::Rat;
use crate::graphs::{LabeledGraph, Weight};
use crate::sat::CnfFormula;
use crate::scene::{tangent_ball_skew_lines, Ball, Scene, SceneObjects};

/// Ball graph of a formula whose clauses all have two or three literals.
/// It has a dominating set of size `n + t` iff the formula is satisfiable.
pub fn build_gphi_unweighted(f: &CnfFormula) -> Result<ReductionOutput, ReductionError> {
    let layout = Layout::new(f)?;
    let (n, t) = (layout.counts.n, layout.counts.t);
    let mut g = LabeledGraph::new();
    let add = |g: &mut LabeledGraph, label: String| g.add_vertex(label, Weight::one());

    let mut var_true = Vec::with_capacity(n);
    let mut var_false = Vec::with_capacity(n);
    for j in 1..=n {
        let xt = add(&mut g, format!("x{j}_T"))?;
        let xf = add(&mut g, format!("x{j}_F"))?;
        let ear = add(&mut g, format!("x{j}_ear"))?;
        g.add_edge(xt, xf)?;
        g.add_edge(xt, ear)?;
        g.add_edge(xf, ear)?;
        var_true.push(xt);
        var_false.push(xf);
    }

    let mut top = Vec::with_capacity(t);
    let mut bottom = Vec::with_capacity(t);
    for (idx, o) in layout.occ.iter().enumerate() {
        let i = idx + 1;
        let l1 = add(&mut g, format!("l{i}_1"))?;
        let l2 = add(&mut g, format!("l{i}_2"))?;
        let l3 = add(&mut g, format!("l{i}_3"))?;
        let ear = add(&mut g, format!("l{i}_ear"))?;
        g.add_edge(l1, l2)?;
        g.add_edge(l2, l3)?;
        g.add_edge(ear, l2)?;
        g.add_edge(ear, l3)?;
        let v = o.lit.var() - 1;
        g.add_edge(if o.lit.is_positive() { var_true[v] } else { var_false[v] }, l1)?;
        top.push(l1);
        bottom.push(l3);
    }

    for (k, range) in layout.clause_ranges.iter().enumerate() {
        let c = add(&mut g, format!("c{}", k + 1))?;
        for i in range.clone() {
            g.add_edge(c, bottom[i])?;
        }
    }

    for (a, &u) in top.iter().enumerate() {
        for &v in &top[a + 1..] {
            g.add_edge(u, v)?;
        }
    }

    debug_assert_eq!(g.num_vertices(), 3 * n + 4 * t + layout.counts.m);
    Ok(ReductionOutput {
        graph: g,
        target: Target::DominatingSet { k: n + t },
        counts: Some(layout.counts),
    })
}

/// Realizes the ball graph with exactly rational data: variable balls sit
/// on the line `y`-parallel at height `h`, literal balls hang below the
/// `x`-axis, and each top literal ball is the unique ball touching both
/// lines at its two prescribed points.
pub fn realize_unweighted_3d(f: &CnfFormula) -> Result<Scene, ReductionError> {
    let out = build_gphi_unweighted(f)?;
    let layout = Layout::new(f)?;
    let counts = &layout.counts;

    let spacing = Rat::new(11, 10);
    let big_n = Rat::from_int(3 * counts.n as i64 + 1).max(&spacing * Rat::from_int(counts.t as i64));
    let h = Rat::from_int(20) * big_n.square();

    let half = Rat::new(1, 2);
    let quarter = Rat::new(1, 4);
    let ear_sq = Rat::new(1, 400);
    let top_z = &h + &half;
    let mut balls = Vec::with_capacity(out.graph.num_vertices());
    let ball = |label: String, c: [Rat; 3], r_sq: &Rat| Ball::rational(label, c, r_sq.clone());

    for j in 1..=counts.n {
        let y = Rat::from_int(3 * j as i64);
        balls.push(ball(format!("x{j}_T"), [Rat::zero(), y.clone(), top_z.clone()], &quarter)?);
        balls.push(ball(format!("x{j}_F"), [Rat::zero(), &y + Rat::one(), top_z.clone()], &quarter)?);
        balls.push(ball(format!("x{j}_ear"), [Rat::zero(), &y + &half, top_z.clone()], &ear_sq)?);
    }

    for (idx, o) in layout.occ.iter().enumerate() {
        let i = idx + 1;
        let x = &spacing * Rat::from_int(i as i64);
        let mut y = Rat::from_int(3 * o.lit.var() as i64);
        if !o.lit.is_positive() {
            y = y + Rat::one();
        }
        let mut top = tangent_ball_skew_lines(&x, &y, &h)?;
        top.label = format!("l{i}_1");
        balls.push(top);
        balls.push(ball(format!("l{i}_2"), [x.clone(), Rat::zero(), -&half], &quarter)?);
        balls.push(ball(format!("l{i}_3"), [x.clone(), Rat::zero(), Rat::new(-3, 2)], &quarter)?);
        balls.push(ball(format!("l{i}_ear"), [x, Rat::zero(), -Rat::one()], &ear_sq)?);
    }

    let clause_sq = Rat::new(81, 100);
    for (k, range) in layout.clause_ranges.iter().enumerate() {
        // Middle literal for three literals, midpoint of the pair for two.
        let first = Rat::from_int(range.start as i64 + 1);
        let anchor = if range.len() == 3 { first + Rat::one() } else { first + &half };
        balls.push(ball(
            format!("c{}", k + 1),
            [&spacing * anchor, Rat::zero(), Rat::from_int(-2)],
            &clause_sq,
        )?);
    }

    let params = BTreeMap::from([("N".to_string(), big_n), ("h".to_string(), h)]);
    certify(Scene {
        params,
        objects: SceneObjects::Balls(balls),
        expected: out.graph,
    })
}
