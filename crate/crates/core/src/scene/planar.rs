//! Planar objects: disks, and convex hulls of an origin-centered inner disk
//! together with a set of points on the unit circle.
//!
//! A hull `K = conv(D_in ∪ P)` with `|p| = 1` for every generator is the
//! union of `D_in`, the triangles `(o, p, q)` over generator pairs, and the
//! triangles `(o, p, T)` where `T` is one of the two points where a tangent
//! from `p` meets the inner circle. With inner radius `ρ` and `s = √(1−ρ²)`,
//! `T = ρ²·p ± ρs·p⊥`, so every quantity stays inside `Q(s)` and each
//! distance test is a single-radical sign question.

use serde::{Deserialize, Serialize};

use super::{PairClass, SceneError};
use crate::exactnum::{RadExpr, Rat, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanarObject {
    Disk {
        label: String,
        center: [Rat; 2],
        radius: Rat,
    },
    Hull {
        label: String,
        inner_radius: Rat,
        /// Indices into the scene's circle-point table.
        generators: Vec<usize>,
    },
}

impl PlanarObject {
    pub fn label(&self) -> &str {
        match self {
            PlanarObject::Disk { label, .. } | PlanarObject::Hull { label, .. } => label,
        }
    }

    pub fn validate(&self, table: &[[Rat; 2]]) -> Result<(), SceneError> {
        match self {
            PlanarObject::Disk { label, radius, .. } => {
                if !radius.is_positive() {
                    return Err(SceneError::Invalid(format!("{label}: radius must be positive")));
                }
            }
            PlanarObject::Hull {
                label,
                inner_radius,
                generators,
            } => {
                if !(inner_radius.is_positive() && *inner_radius < Rat::one()) {
                    return Err(SceneError::Invalid(format!("{label}: inner radius must lie in (0,1)")));
                }
                if generators.is_empty() {
                    return Err(SceneError::DegenerateHull(label.clone()));
                }
                for (i, &g) in generators.iter().enumerate() {
                    if g >= table.len() {
                        return Err(SceneError::Invalid(format!("{label}: generator index {g} out of range")));
                    }
                    if generators[..i].contains(&g) {
                        return Err(SceneError::Invalid(format!("{label}: repeated generator {g}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Certified lower bound on `ρ_in / ρ_out`.
pub fn fatness_lower_bound(o: &PlanarObject) -> Rat {
    match o {
        PlanarObject::Disk { .. } => Rat::one(),
        // Inner disk inside, unit disk outside.
        PlanarObject::Hull { inner_radius, .. } => inner_radius.clone(),
    }
}

/// Rational point on the unit circle from the tangent half-angle parameter.
pub fn circle_point(u: &Rat) -> [Rat; 2] {
    let u2 = u.square();
    let d = Rat::one() + &u2;
    [(Rat::one() - u2) / &d, Rat::from_int(2) * u / d]
}

pub fn on_unit_circle(p: &[Rat; 2]) -> bool {
    p[0].square() + p[1].square() == Rat::one()
}

type Pt = [RadExpr; 2];

fn rat_pt(p: &[Rat; 2]) -> Pt {
    [RadExpr::rational(p[0].clone()), RadExpr::rational(p[1].clone())]
}

fn sub(a: &Pt, b: &Pt) -> Pt {
    [a[0].sub(&b[0]).expect("shared radicand"), a[1].sub(&b[1]).expect("shared radicand")]
}

fn dot(a: &Pt, b: &Pt) -> RadExpr {
    a[0].mul(&b[0])
        .and_then(|x| x.add(&a[1].mul(&b[1])?))
        .expect("shared radicand")
}

fn cross(a: &Pt, b: &Pt) -> RadExpr {
    a[0].mul(&b[1])
        .and_then(|x| x.sub(&a[1].mul(&b[0])?))
        .expect("shared radicand")
}

/// Sign of `dist(c, segment ab)² − r²`.
fn segment_gap(c: &Pt, a: &Pt, b: &Pt, r_sq: &Rat) -> Sign {
    let d = sub(b, a);
    let ca = sub(c, a);
    let t = dot(&ca, &d);
    let len_sq = dot(&d, &d);
    if t.sign() != Sign::Positive {
        return dot(&ca, &ca).add_rat(&-r_sq).sign();
    }
    if t.compare(&len_sq).is_ge() {
        let cb = sub(c, b);
        return dot(&cb, &cb).add_rat(&-r_sq).sign();
    }
    // Foot strictly inside: dist² = cross² / |d|².
    let cr = cross(&ca, &d);
    cr.square().sub(&len_sq.scale(r_sq)).expect("shared radicand").sign()
}

fn orient(a: &Pt, b: &Pt, c: &Pt) -> Sign {
    cross(&sub(b, a), &sub(c, a)).sign()
}

/// Sign of `dist(c, triangle abc)² − r²`, i.e. whether a disk around `c`
/// misses, touches, or cuts the closed triangle.
fn triangle_gap(c: &Pt, tri: [&Pt; 3], r_sq: &Rat) -> Sign {
    let [a, b, d] = tri;
    let o = [orient(a, b, c), orient(b, d, c), orient(d, a, c)];
    // A flat triangle is just its edges.
    let flat = orient(a, b, d) == Sign::Zero;
    let inside = !(o.contains(&Sign::Positive) && o.contains(&Sign::Negative));
    if inside && !flat {
        return Sign::Negative;
    }
    [segment_gap(c, a, b, r_sq), segment_gap(c, b, d, r_sq), segment_gap(c, d, a, r_sq)]
        .into_iter()
        .min()
        .expect("three edges")
}

fn combine(gaps: impl IntoIterator<Item = Sign>) -> PairClass {
    match gaps.into_iter().min() {
        Some(Sign::Negative) => PairClass::Overlap,
        Some(Sign::Zero) => PairClass::Tangent,
        _ => PairClass::Disjoint,
    }
}

fn hull_disk(inner: &Rat, gens: &[&[Rat; 2]], center: &[Rat; 2], radius: &Rat) -> PairClass {
    let r_sq = radius.square();
    let c = rat_pt(center);
    let o = rat_pt(&[Rat::zero(), Rat::zero()]);
    let mut gaps = Vec::new();
    // Inner disk: |c| vs ρ + r.
    gaps.push((center[0].square() + center[1].square() - (inner + radius).square()).sign());

    let pts: Vec<Pt> = gens.iter().map(|p| rat_pt(p)).collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            gaps.push(triangle_gap(&c, [&o, &pts[i], &pts[j]], &r_sq));
        }
    }

    let s_sq = Rat::one() - inner.square();
    let rho_sq = inner.square();
    for p in gens {
        let perp = [-&p[1], p[0].clone()];
        for side in [Rat::one(), -Rat::one()] {
            let k = &side * inner;
            let t: Pt = [0, 1].map(|ax| {
                RadExpr::new(&rho_sq * &p[ax], &k * &perp[ax], s_sq.clone()).expect("ρ < 1")
            });
            gaps.push(triangle_gap(&c, [&o, &rat_pt(p), &t], &r_sq));
        }
    }
    combine(gaps)
}

/// Exact classification of two planar objects sharing a circle-point table.
pub fn planar_classify(o1: &PlanarObject, o2: &PlanarObject, table: &[[Rat; 2]]) -> Result<PairClass, SceneError> {
    o1.validate(table)?;
    o2.validate(table)?;
    Ok(match (o1, o2) {
        (
            PlanarObject::Disk {
                center: c1, radius: r1, ..
            },
            PlanarObject::Disk {
                center: c2, radius: r2, ..
            },
        ) => {
            let d_sq = (&c1[0] - &c2[0]).square() + (&c1[1] - &c2[1]).square();
            PairClass::from_gap(d_sq.cmp(&(r1 + r2).square()))
        }
        // Both contain the same inner disk.
        (PlanarObject::Hull { .. }, PlanarObject::Hull { .. }) => PairClass::Overlap,
        (
            PlanarObject::Hull {
                inner_radius,
                generators,
                ..
            },
            PlanarObject::Disk { center, radius, .. },
        )
        | (
            PlanarObject::Disk { center, radius, .. },
            PlanarObject::Hull {
                inner_radius,
                generators,
                ..
            },
        ) => {
            let gens: Vec<&[Rat; 2]> = generators.iter().map(|&g| &table[g]).collect();
            if let Some(bad) = gens.iter().find(|p| !on_unit_circle(p)) {
                return Err(SceneError::Invalid(format!("generator ({}, {}) is not on the unit circle", bad[0], bad[1])));
            }
            hull_disk(inner_radius, &gens, center, radius)
        }
    })
}
