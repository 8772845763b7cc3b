use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use geodom::exactnum::Rat;
use geodom::scene::{intersection_graph, Ball, PlanarObject, Scene, SceneObjects};

use crate::output::{read_input, write_atomic, Failure, RunManifest};
use crate::RenderArgs;

enum View {
    Slice { axis: usize, at: f64 },
    Planar,
}

fn parse_view(spec: &str) -> Result<View, Failure> {
    let spec = spec.trim();
    if spec == "planar" {
        return Ok(View::Planar);
    }
    let bad = || Failure::Input(format!("bad view `{spec}`: expected x=<c>, y=<c>, z=<c> or planar"));
    let (axis, value) = spec.split_once('=').ok_or_else(bad)?;
    let axis = match axis.trim() {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        _ => return Err(bad()),
    };
    let at: Rat = value.trim().parse().map_err(|_| bad())?;
    Ok(View::Slice { axis, at: at.to_f64() })
}

struct Circle {
    label: String,
    c: [f64; 2],
    r: f64,
}

#[derive(Default)]
struct Canvas {
    circles: Vec<Circle>,
    dashed: Vec<(f64, [f64; 2])>,
    polygons: Vec<(String, Vec<[f64; 2]>)>,
    markers: Vec<[f64; 2]>,
}

impl Canvas {
    fn bounds(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        let mut grow = |p: [f64; 2], r: f64| {
            b[0] = b[0].min(p[0] - r);
            b[1] = b[1].min(p[1] - r);
            b[2] = b[2].max(p[0] + r);
            b[3] = b[3].max(p[1] + r);
        };
        for c in &self.circles {
            grow(c.c, c.r);
        }
        for (r, c) in &self.dashed {
            grow(*c, *r);
        }
        for p in self.polygons.iter().flat_map(|(_, ps)| ps) {
            grow(*p, 0.0);
        }
        if b[0] > b[2] {
            return [-1.0, -1.0, 1.0, 1.0];
        }
        b
    }

    fn to_svg(&self, comment: Option<String>) -> String {
        let [x0, y0, x1, y1] = self.bounds();
        let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
        let (x0, y0, w, h) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
        let size = w.max(h);
        let stroke = size * 0.002;
        let font = size * 0.015;
        let height_px = (800.0 * h / w).clamp(100.0, 4000.0);
        // SVG y grows downward, so every y is negated.
        let mut s = String::new();
        s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"{height_px:.0}\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
            x0,
            flip(y0 + h),
            w,
            h
        );
        if let Some(c) = comment {
            let _ = writeln!(s, "<!-- {c} -->");
        }
        let _ = writeln!(s, "<g fill=\"none\" stroke=\"#888\" stroke-width=\"{stroke:.6}\" stroke-dasharray=\"{:.6}\">", stroke * 4.0);
        for (r, c) in &self.dashed {
            let _ = writeln!(s, "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{r:.6}\"/>", c[0], flip(c[1]));
        }
        s += "</g>\n";
        let _ = writeln!(s, "<g fill=\"none\" stroke=\"black\" stroke-width=\"{stroke:.6}\">");
        for (label, ps) in &self.polygons {
            let pts: Vec<String> = ps.iter().map(|p| format!("{:.6},{:.6}", p[0], flip(p[1]))).collect();
            let _ = writeln!(s, "<polygon points=\"{}\"><title>{label}</title></polygon>", pts.join(" "));
        }
        for c in &self.circles {
            let _ = writeln!(
                s,
                "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\"><title>{}</title></circle>",
                c.c[0], flip(c.c[1]), c.r, c.label
            );
        }
        s += "</g>\n";
        let _ = writeln!(s, "<g font-family=\"sans-serif\" font-size=\"{font:.6}\" text-anchor=\"middle\">");
        for c in &self.circles {
            let _ = writeln!(s, "<text x=\"{:.6}\" y=\"{:.6}\">{}</text>", c.c[0], flip(c.c[1]), c.label);
        }
        s += "</g>\n";
        let _ = writeln!(s, "<g fill=\"red\">");
        for p in &self.markers {
            let _ = writeln!(s, "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\"/>", p[0], flip(p[1]), stroke * 3.0);
        }
        s += "</g>\n</svg>\n";
        s
    }
}

fn flip(y: f64) -> f64 {
    // Adding zero turns -0.0 into 0.0.
    -y + 0.0
}

fn other_axes(axis: usize) -> [usize; 2] {
    match axis {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn slice(scene: &Scene, balls: &[Ball], axis: usize, at: f64) -> Result<Canvas, Failure> {
    let [a, b] = other_axes(axis);
    let mut canvas = Canvas::default();
    for ball in balls {
        let c = ball.center_f64();
        let r_sq = ball.radius_sq.to_f64();
        let d = c[axis] - at;
        if d * d < r_sq {
            canvas.circles.push(Circle {
                label: ball.label.clone(),
                c: [c[a], c[b]],
                r: (r_sq - d * d).sqrt(),
            });
        }
    }
    let ig = intersection_graph(scene).map_err(|e| Failure::Input(e.to_string()))?;
    for &(i, j) in &ig.tangent_pairs {
        let (c1, c2) = (balls[i].center_f64(), balls[j].center_f64());
        let (r1, r2) = (balls[i].radius_sq.to_f64().sqrt(), balls[j].radius_sq.to_f64().sqrt());
        let t = r1 / (r1 + r2);
        let p: Vec<f64> = (0..3).map(|k| c1[k] + t * (c2[k] - c1[k])).collect();
        if (p[axis] - at).abs() <= 1e-9 * at.abs().max(1.0) {
            canvas.markers.push([p[a], p[b]]);
        }
    }
    Ok(canvas)
}

/// Monotone-chain convex hull.
fn convex_hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|p, q| p.partial_cmp(q).expect("finite points"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in [pts.clone(), pts.iter().rev().copied().collect()] {
        let start = hull.len();
        for p in pass {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn planar(scene: &Scene, points: &[[Rat; 2]], objects: &[PlanarObject]) -> Result<Canvas, Failure> {
    let mut canvas = Canvas::default();
    canvas.dashed.push((1.0, [0.0, 0.0]));
    let table: Vec<[f64; 2]> = points.iter().map(|p| [p[0].to_f64(), p[1].to_f64()]).collect();
    for o in objects {
        match o {
            PlanarObject::Disk { label, center, radius } => canvas.circles.push(Circle {
                label: label.clone(),
                c: [center[0].to_f64(), center[1].to_f64()],
                r: radius.to_f64(),
            }),
            PlanarObject::Hull {
                label,
                inner_radius,
                generators,
            } => {
                let rho = inner_radius.to_f64();
                if !canvas.dashed.iter().any(|(r, _)| *r == rho) {
                    canvas.dashed.push((rho, [0.0, 0.0]));
                }
                let mut pts: Vec<[f64; 2]> = (0..256)
                    .map(|k| {
                        let th = k as f64 * std::f64::consts::TAU / 256.0;
                        [rho * th.cos(), rho * th.sin()]
                    })
                    .collect();
                pts.extend(generators.iter().filter_map(|&g| table.get(g).copied()));
                canvas.polygons.push((label.clone(), convex_hull(pts)));
            }
        }
    }
    let ig = intersection_graph(scene).map_err(|e| Failure::Input(e.to_string()))?;
    let disk = |o: &PlanarObject| match o {
        PlanarObject::Disk { center, radius, .. } => Some(([center[0].to_f64(), center[1].to_f64()], radius.to_f64())),
        PlanarObject::Hull { .. } => None,
    };
    for &(i, j) in &ig.tangent_pairs {
        match (disk(&objects[i]), disk(&objects[j])) {
            (Some((c1, r1)), Some((c2, r2))) => {
                let t = r1 / (r1 + r2);
                canvas.markers.push([c1[0] + t * (c2[0] - c1[0]), c1[1] + t * (c2[1] - c1[1])]);
            }
            (Some((c, r)), None) | (None, Some((c, r))) => {
                // Hull contacts lie on the side of the disk facing the origin.
                let len = c[0].hypot(c[1]);
                if len > 0.0 {
                    canvas.markers.push([c[0] - r * c[0] / len, c[1] - r * c[1] / len]);
                }
            }
            (None, None) => {}
        }
    }
    Ok(canvas)
}

pub fn run(a: &RenderArgs, m: &mut RunManifest) -> Result<(), Failure> {
    m.command = "render".into();
    m.param("plane", &a.plane);
    let view = parse_view(&a.plane)?;
    let text = read_input(&a.scene, m)?;
    let scene = Scene::from_json_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", a.scene.display())))?;
    let canvas = match (&view, &scene.objects) {
        (View::Slice { axis, at }, SceneObjects::Balls(balls)) => slice(&scene, balls, *axis, *at)?,
        (View::Planar, SceneObjects::Planar { circle_points, objects }) => planar(&scene, circle_points, objects)?,
        (View::Planar, _) => return Err(Failure::Input("planar view needs a 2D scene".into())),
        (View::Slice { .. }, _) => return Err(Failure::Input("slice views need a 3D scene".into())),
    };
    let comment = a.timestamp.then(|| {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        format!("generated at unix time {secs}")
    });
    println!(
        "{} outlines, {} tangency markers",
        canvas.circles.len() + canvas.polygons.len(),
        canvas.markers.len()
    );
    write_atomic(&a.out, canvas.to_svg(comment).as_bytes())?;
    Ok(())
}
