use serde::{Deserialize, Serialize};

use super::{PairClass, SceneError};
use crate::exactnum::{Coord, RadExpr, Rat};

/// Closed ball in R³. The radius is kept as its exact square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ball {
    pub label: String,
    pub center: [Coord; 3],
    pub radius_sq: Rat,
}

impl Ball {
    pub fn new(label: impl Into<String>, center: [Coord; 3], radius_sq: Rat) -> Result<Ball, SceneError> {
        let b = Ball {
            label: label.into(),
            center,
            radius_sq,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn rational(label: impl Into<String>, center: [Rat; 3], radius_sq: Rat) -> Result<Ball, SceneError> {
        let [x, y, z] = center;
        Ball::new(label, [Coord::rat(x), Coord::rat(y), Coord::rat(z)], radius_sq)
    }

    pub fn validate(&self) -> Result<(), SceneError> {
        if !self.radius_sq.is_positive() {
            return Err(SceneError::Invalid(format!("{}: radius_sq must be positive", self.label)));
        }
        if self.center.iter().filter(|c| !c.is_rational()).count() > 1 {
            return Err(SceneError::Invalid(format!(
                "{}: at most one square-root coordinate per center",
                self.label
            )));
        }
        Ok(())
    }

    /// Axis carrying a square-root coordinate, if any.
    pub fn radical_axis(&self) -> Option<usize> {
        self.center.iter().position(|c| !c.is_rational())
    }

    pub fn rational_center(&self) -> Option<[Rat; 3]> {
        let [x, y, z] = &self.center;
        Some([x.as_rational()?.clone(), y.as_rational()?.clone(), z.as_rational()?.clone()])
    }

    pub fn center_f64(&self) -> [f64; 3] {
        [self.center[0].to_f64(), self.center[1].to_f64(), self.center[2].to_f64()]
    }
}

/// Squared distance between centers: at most one axis contributes a radical.
pub fn center_distance_sq(b1: &Ball, b2: &Ball) -> Result<RadExpr, SceneError> {
    if let (Some(a1), Some(a2)) = (b1.radical_axis(), b2.radical_axis()) {
        if a1 != a2 {
            return Err(SceneError::UnsupportedPair(b1.label.clone(), b2.label.clone()));
        }
    }
    let mut total = RadExpr::zero();
    for (c1, c2) in b1.center.iter().zip(&b2.center) {
        total = total
            .add(&c1.diff_squared(c2))
            .map_err(|_| SceneError::UnsupportedPair(b1.label.clone(), b2.label.clone()))?;
    }
    Ok(total)
}

/// Exact classification of two closed balls: compares the squared center
/// distance with `(r₁ + r₂)² = r₁² + r₂² + 2√(r₁²·r₂²)`.
pub fn balls_classify(b1: &Ball, b2: &Ball) -> Result<PairClass, SceneError> {
    let dist_sq = center_distance_sq(b1, b2)?;
    let reach_sq = RadExpr::new(
        &b1.radius_sq + &b2.radius_sq,
        Rat::from_int(2),
        &b1.radius_sq * &b2.radius_sq,
    )
    .expect("product of positive squares is nonnegative");
    Ok(PairClass::from_gap(dist_sq.compare(&reach_sq)))
}

/// The unique ball touching the x-axis at `(x, 0, 0)` and the line
/// `(0, λ, h)` at `(0, y, h)`: center `(x, y, z)` with
/// `z = (h² + x² − y²) / 2h` and squared radius `y² + z²`.
///
/// Both tangencies are re-checked by explicit point-to-line computations.
pub fn tangent_ball_skew_lines(x: &Rat, y: &Rat, h: &Rat) -> Result<Ball, SceneError> {
    if h.is_zero() {
        return Err(SceneError::Invalid("h = 0: the lines intersect".into()));
    }
    let z = (h.square() + x.square() - y.square()) / (Rat::from_int(2) * h);
    let radius_sq = y.square() + z.square();
    let center = [x.clone(), y.clone(), z.clone()];

    // Foot on the x-axis is (x, 0, 0): offset must be orthogonal to (1,0,0)
    // and of length² = radius².
    let foot1 = [x.clone(), Rat::zero(), Rat::zero()];
    let off1: Vec<Rat> = center.iter().zip(&foot1).map(|(a, b)| a - b).collect();
    assert!(off1[0].is_zero(), "offset to x-axis not orthogonal");
    assert_eq!(off1.iter().map(Rat::square).sum::<Rat>(), radius_sq);
    // Foot on the second line is (0, y, h), direction (0,1,0).
    let foot2 = [Rat::zero(), y.clone(), h.clone()];
    let off2: Vec<Rat> = center.iter().zip(&foot2).map(|(a, b)| a - b).collect();
    assert!(off2[1].is_zero(), "offset to second line not orthogonal");
    assert_eq!(off2.iter().map(Rat::square).sum::<Rat>(), radius_sq);

    Ball::rational("", center, radius_sq)
}
