//! Exact geometric objects, pair predicates and intersection graphs.

mod ball;
mod planar;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Rat;
use crate::graphs::{GraphError, GraphJson, LabeledGraph};

pub use ball::{balls_classify, center_distance_sq, tangent_ball_skew_lines, Ball};
pub use planar::{circle_point, fatness_lower_bound, on_unit_circle, planar_classify, PlanarObject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("invalid scene: {0}")]
    Invalid(String),
    #[error("unsupported coordinate form for pair ({0}, {1})")]
    UnsupportedPair(String, String),
    #[error("hull {0} has no generators")]
    DegenerateHull(String),
    #[error("scene labels do not match the expected graph: {0}")]
    LabelMismatch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed scene JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    Disjoint,
    Tangent,
    Overlap,
}

impl PairClass {
    /// Maps `dist − reach` (or any monotone stand-in) to a class.
    pub fn from_gap(gap: Ordering) -> PairClass {
        match gap {
            Ordering::Less => PairClass::Overlap,
            Ordering::Equal => PairClass::Tangent,
            Ordering::Greater => PairClass::Disjoint,
        }
    }

    /// Closed objects: touching counts as intersecting.
    pub fn is_edge(self) -> bool {
        self != PairClass::Disjoint
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SceneObjects {
    Balls(Vec<Ball>),
    Planar {
        circle_points: Vec<[Rat; 2]>,
        objects: Vec<PlanarObject>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub params: BTreeMap<String, Rat>,
    pub objects: SceneObjects,
    pub expected: LabeledGraph,
}

impl Scene {
    pub fn dimension(&self) -> u8 {
        match self.objects {
            SceneObjects::Balls(_) => 3,
            SceneObjects::Planar { .. } => 2,
        }
    }

    pub fn len(&self) -> usize {
        match &self.objects {
            SceneObjects::Balls(b) => b.len(),
            SceneObjects::Planar { objects, .. } => objects.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self) -> Vec<&str> {
        match &self.objects {
            SceneObjects::Balls(b) => b.iter().map(|b| b.label.as_str()).collect(),
            SceneObjects::Planar { objects, .. } => objects.iter().map(|o| o.label()).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), SceneError> {
        let labels = self.labels();
        let set: BTreeSet<&str> = labels.iter().copied().collect();
        if set.len() != labels.len() {
            return Err(SceneError::LabelMismatch("duplicate object label".into()));
        }
        let expected: BTreeSet<&str> = self.expected.vertices().iter().map(|v| v.label.as_str()).collect();
        if let Some(l) = set.symmetric_difference(&expected).next() {
            return Err(SceneError::LabelMismatch(format!("label {l} appears on only one side")));
        }
        match &self.objects {
            SceneObjects::Balls(balls) => {
                let mut axis = None;
                for b in balls {
                    b.validate()?;
                    if let Some(a) = b.radical_axis() {
                        if *axis.get_or_insert(a) != a {
                            return Err(SceneError::Invalid(format!(
                                "{}: square-root coordinates must share one axis",
                                b.label
                            )));
                        }
                    }
                }
            }
            SceneObjects::Planar { circle_points, objects } => {
                if let Some(i) = circle_points.iter().position(|p| !on_unit_circle(p)) {
                    return Err(SceneError::Invalid(format!("circle point {i} is not on the unit circle")));
                }
                let distinct: BTreeSet<&[Rat; 2]> = circle_points.iter().collect();
                if distinct.len() != circle_points.len() {
                    return Err(SceneError::Invalid("repeated circle point".into()));
                }
                for o in objects {
                    o.validate(circle_points)?;
                }
            }
        }
        Ok(())
    }

    fn classify(&self, i: usize, j: usize) -> Result<PairClass, SceneError> {
        match &self.objects {
            SceneObjects::Balls(b) => balls_classify(&b[i], &b[j]),
            SceneObjects::Planar { circle_points, objects } => planar_classify(&objects[i], &objects[j], circle_points),
        }
    }

    pub fn to_json(&self) -> SceneJson {
        let (balls, circle_points, objects) = match &self.objects {
            SceneObjects::Balls(b) => (Some(b.clone()), None, None),
            SceneObjects::Planar { circle_points, objects } => (None, Some(circle_points.clone()), Some(objects.clone())),
        };
        SceneJson {
            dimension: self.dimension(),
            params: self.params.clone(),
            balls,
            circle_points,
            objects,
            expected_graph: self.expected.to_json(),
        }
    }

    pub fn from_json(j: SceneJson) -> Result<Scene, SceneError> {
        let objects = match (j.dimension, j.balls, j.circle_points, j.objects) {
            (3, Some(b), None, None) => SceneObjects::Balls(b),
            (2, None, Some(circle_points), Some(objects)) => SceneObjects::Planar { circle_points, objects },
            (d, ..) => return Err(SceneError::Json(format!("dimension {d} does not match the object fields"))),
        };
        let s = Scene {
            params: j.params,
            objects,
            expected: LabeledGraph::from_json(&j.expected_graph)?,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("scene serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Scene, SceneError> {
        let j: SceneJson = serde_json::from_str(s).map_err(|e| SceneError::Json(e.to_string()))?;
        Scene::from_json(j)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneJson {
    pub dimension: u8,
    #[serde(default)]
    pub params: BTreeMap<String, Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balls: Option<Vec<Ball>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle_points: Option<Vec<[Rat; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<PlanarObject>>,
    pub expected_graph: GraphJson,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    pub graph: LabeledGraph,
    /// Pairs of object indices that touch without overlapping.
    pub tangent_pairs: Vec<(usize, usize)>,
}

/// One vertex per object, in scene order, with weights taken from the
/// expected graph; an edge for every touching or overlapping pair.
pub fn intersection_graph(s: &Scene) -> Result<IntersectionGraph, SceneError> {
    s.validate()?;
    let labels = s.labels();
    let n = labels.len();
    let mut graph = LabeledGraph::new();
    for l in &labels {
        let id = s.expected.id_of(l).expect("validated");
        graph.add_vertex(*l, s.expected.weight(id).clone())?;
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let classes = pairs
        .par_iter()
        .map(|&(i, j)| s.classify(i, j))
        .collect::<Result<Vec<_>, _>>()?;
    let mut tangent_pairs = Vec::new();
    for (&(i, j), c) in pairs.iter().zip(classes) {
        if c.is_edge() {
            graph.add_edge(i, j)?;
        }
        if c == PairClass::Tangent {
            tangent_pairs.push((i, j));
        }
    }
    Ok(IntersectionGraph { graph, tangent_pairs })
}
