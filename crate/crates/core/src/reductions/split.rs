use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::{certify, ReductionError, ReductionOutput, Target};
use crate::exactnum::Rat;
use crate::graphs::{LabeledGraph, Weight};
use crate::scene::{circle_point, PlanarObject, Scene, SceneObjects};

/// Split graph on two copies of the vertex set: the `a` copy is a clique,
/// the `b` copy is independent, and `a_i b_j` is an edge iff `i = j` or
/// `v_i v_j` is an edge of `g`. Vertices are `a_1..a_n` then `b_1..b_n`.
pub fn build_split_double_cover(g: &LabeledGraph) -> ReductionOutput {
    let n = g.num_vertices();
    let mut out = LabeledGraph::new();
    for side in ["a", "b"] {
        for i in 1..=n {
            out.add_vertex(format!("{side}_{i}"), Weight::one()).expect("fresh labels");
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.add_edge(i, j).expect("distinct");
        }
        out.add_edge(i, n + i).expect("distinct");
        for j in g.neighbors(i) {
            out.add_edge(i, n + j).expect("distinct");
        }
    }
    ReductionOutput {
        graph: out,
        target: Target::SplitCover {
            terminals: (n..2 * n).collect(),
        },
        counts: None,
    }
}

/// Rational unit-circle point near angle `theta`. The half-angle tangent
/// stays in `[-1, 1]` by reflecting through the origin when needed.
fn rational_direction(theta: f64, denom: i64) -> [Rat; 2] {
    let (theta, flip) = if theta.cos() >= 0.0 { (theta, false) } else { (theta - PI, true) };
    let u = Rat::approximate((theta / 2.0).tan(), denom);
    let p = circle_point(&u);
    if flip {
        p.map(|c| -c)
    } else {
        p
    }
}

/// Planar realization of the split cover: `b_i` is a disk of radius `1/n`
/// resting on the unit circle at `p_i`, and `a_i` is the hull of the disk
/// of radius `1 − ε` with the points `p_j` for `j = i` and every neighbour
/// `v_j` of `v_i`.
pub fn realize_split_planar(g: &LabeledGraph, epsilon: &Rat) -> Result<Scene, ReductionError> {
    let n = g.num_vertices();
    if n < 3 {
        return Err(ReductionError::Precondition(format!("need at least 3 vertices, got {n}")));
    }
    if !(epsilon.is_positive() && *epsilon < Rat::one()) {
        return Err(ReductionError::Precondition("epsilon must lie in (0, 1)".into()));
    }
    let out = build_split_double_cover(g);
    let denom = 64 * (n as i64).pow(2);
    let circle_points: Vec<[Rat; 2]> = (0..n)
        .map(|i| rational_direction(2.0 * PI * i as f64 / n as f64, denom))
        .collect();

    let inner_radius = Rat::one() - epsilon;
    let radius = Rat::new(1, n as i64);
    let mut objects = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut generators: Vec<usize> = g.neighbors(i).chain([i]).collect();
        generators.sort_unstable();
        objects.push(PlanarObject::Hull {
            label: format!("a_{}", i + 1),
            inner_radius: inner_radius.clone(),
            generators,
        });
    }
    let scale = Rat::one() + &radius;
    for (i, p) in circle_points.iter().enumerate() {
        objects.push(PlanarObject::Disk {
            label: format!("b_{}", i + 1),
            center: [&p[0] * &scale, &p[1] * &scale],
            radius: radius.clone(),
        });
    }

    let params = BTreeMap::from([("epsilon".to_string(), epsilon.clone()), ("disk_radius".to_string(), radius)]);
    certify(Scene {
        params,
        objects: SceneObjects::Planar { circle_points, objects },
        expected: out.graph,
    })
}
