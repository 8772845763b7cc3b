use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use geodom::exactnum::Rat;
use geodom::graphs::{
    solve_min_connected_dominating_set, solve_min_dominating_set, solve_min_weight_dominating_set,
    solve_steiner_tree, GraphJson, LabeledGraph, Solve,
};
use geodom::reductions::{
    build_gphi_unweighted, build_gphi_weighted, build_split_double_cover, realize_split_planar,
    realize_unweighted_3d, realize_weighted_unit, trivial_instance, verify_realization, RealizationReport,
    ReductionError, ReductionOutput, Target as Budget, WeightedParams,
};
use geodom::sat::{
    gen_random_33, parse_dimacs, preprocess_units, render_dimacs, solve_dpll, validate_33, CnfFormula,
    PreprocessOutcome,
};
use geodom::scene::Scene;

use crate::output::{read_input, write_atomic, write_json, Failure, RunManifest};
use crate::{GenArgs, Preset, Problem, ReduceArgs, RoundtripArgs, SolveArgs, Target, VerifyArgs, WeightedArgs};

pub fn gen(a: &GenArgs, m: &mut RunManifest) -> Result<(), Failure> {
    m.command = "gen".into();
    m.param("n", a.n);
    m.param("seed", a.seed);
    if a.n < 2 {
        return Err(Failure::Input("--n must be at least 2".into()));
    }
    let f = gen_random_33(a.n, a.seed);
    if a.strict_33 {
        validate_33(&f, true).map_err(|e| Failure::Input(e.to_string()))?;
    }
    let text = render_dimacs(&f);
    match &a.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_formula(path: &Path, strict: bool, m: &mut RunManifest) -> Result<CnfFormula, Failure> {
    let text = read_input(path, m)?;
    let f = parse_dimacs(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    validate_33(&f, strict).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(f)
}

fn load_graph(path: &Path, m: &mut RunManifest) -> Result<LabeledGraph, Failure> {
    let text = read_input(path, m)?;
    let j: GraphJson = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    LabeledGraph::from_json(&j).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_scene(path: &Path, m: &mut RunManifest) -> Result<Scene, Failure> {
    let text = read_input(path, m)?;
    Scene::from_json_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn weighted_params(f: &CnfFormula, w: &WeightedArgs) -> WeightedParams {
    let mut p = match w.preset {
        Preset::Certified => WeightedParams::certified(f),
        Preset::Paper => WeightedParams::unscaled(f),
    };
    if let Some(e) = &w.epsilon {
        p.epsilon = e.clone();
    }
    if let Some(s) = &w.angle_scale {
        p.angle_scale = s.clone();
    }
    if let Some(mg) = &w.margin {
        p.contact_margin = mg.clone();
    }
    p
}

fn describe_mismatch(r: &RealizationReport) -> String {
    let show = |edges: &[(String, String)]| {
        edges
            .iter()
            .take(8)
            .map(|(a, b)| format!("{a}-{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = format!(
        "realization does not match the expected graph: {} missing, {} extra edges",
        r.missing_edges.len(),
        r.extra_edges.len()
    );
    if !r.missing_edges.is_empty() {
        s += &format!("\n  missing: {}", show(&r.missing_edges));
    }
    if !r.extra_edges.is_empty() {
        s += &format!("\n  extra: {}", show(&r.extra_edges));
    }
    s
}

fn realization_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::RealizationInfeasible(r) => Failure::Semantic(describe_mismatch(&r)),
        e => Failure::Input(e.to_string()),
    }
}

enum Reduced {
    Trivial {
        satisfiable: bool,
        output: ReductionOutput,
    },
    Built { output: ReductionOutput, scene: Scene },
}

fn reduce_formula(f: &CnfFormula, target: Target, w: &WeightedArgs) -> Result<Reduced, Failure> {
    let weighted = target == Target::WdsUnitball3d;
    let formula = match preprocess_units(f) {
        PreprocessOutcome::TrivialYes { .. } => {
            return Ok(Reduced::Trivial {
                satisfiable: true,
                output: trivial_instance(true, weighted),
            })
        }
        PreprocessOutcome::TrivialNo => {
            return Ok(Reduced::Trivial {
                satisfiable: false,
                output: trivial_instance(false, weighted),
            })
        }
        PreprocessOutcome::Reduced { formula, .. } => formula,
    };
    let (output, scene) = match target {
        Target::DsBall3d => (
            build_gphi_unweighted(&formula).map_err(|e| Failure::Input(e.to_string()))?,
            realize_unweighted_3d(&formula).map_err(realization_failure)?,
        ),
        Target::WdsUnitball3d => (
            build_gphi_weighted(&formula).map_err(|e| Failure::Input(e.to_string()))?,
            realize_weighted_unit(&formula, &weighted_params(&formula, w)).map_err(realization_failure)?,
        ),
        Target::SplitPlanar => return Err(Failure::Input("split-planar takes --graph, not a formula".into())),
    };
    Ok(Reduced::Built { output, scene })
}

/// Integers print without the `/1`.
fn show(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

fn budget_string(t: &Budget) -> String {
    match t {
        Budget::SplitCover { .. } => "k (per query)".into(),
        t => t.budget().as_ref().map(show).unwrap_or_default(),
    }
}

fn params_string(s: &Scene) -> String {
    s.params.iter().map(|(k, v)| format!("{k}={}", show(v))).collect::<Vec<_>>().join(" ")
}

pub fn reduce(a: &ReduceArgs, m: &mut RunManifest) -> Result<(), Failure> {
    m.command = "reduce".into();
    m.param("target", format!("{:?}", a.target));
    let (output, scene) = if a.target == Target::SplitPlanar {
        let path = a.graph.as_ref().ok_or_else(|| Failure::Input("--graph is required".into()))?;
        let g = load_graph(path, m)?;
        let eps = a.weighted.epsilon.clone().unwrap_or(Rat::new(1, 10));
        m.param("epsilon", &eps);
        let output = build_split_double_cover(&g);
        let scene = realize_split_planar(&g, &eps).map_err(realization_failure)?;
        (output, Some(scene))
    } else {
        let path = a.cnf.as_ref().ok_or_else(|| Failure::Input("--cnf is required".into()))?;
        let f = load_formula(path, a.strict_33, m)?;
        match reduce_formula(&f, a.target, &a.weighted)? {
            Reduced::Trivial { satisfiable, output } => {
                println!(
                    "unit preprocessing decided the formula ({}); emitting a one-vertex instance",
                    if satisfiable { "satisfiable" } else { "unsatisfiable" }
                );
                (output, None)
            }
            Reduced::Built { output, scene } => (output, Some(scene)),
        }
    };

    let g = &output.graph;
    let mut line = String::new();
    if let Some(c) = &output.counts {
        line += &format!("n={} t={} m={} ", c.n, c.t, c.m);
    }
    line += &format!("|V|={} |E|={}", g.num_vertices(), g.num_edges());
    if let Some(s) = &scene {
        let report = verify_realization(s).map_err(|e| Failure::Input(e.to_string()))?;
        if !report.matches {
            return Err(Failure::Semantic(describe_mismatch(&report)));
        }
        line += &format!(" tangent_pairs={}", report.tangent_count());
        m.param("tangent_pairs", report.tangent_count());
        println!("{line}");
        println!("params: {}", params_string(s));
        for (k, v) in &s.params {
            m.param(k, v);
        }
    } else {
        println!("{line}");
    }
    match &output.target {
        Budget::SplitCover { terminals } => {
            let labels: Vec<&str> = terminals.iter().map(|&t| g.label(t)).collect();
            println!("terminals: {}", labels.join(","));
        }
        t => println!("budget: {}", budget_string(t)),
    }
    m.param("budget", budget_string(&output.target));
    m.param("vertices", g.num_vertices());
    m.param("edges", g.num_edges());

    if let Some(path) = &a.out {
        write_json(path, &g.to_json())?;
    }
    if let (Some(path), Some(s)) = (&a.out_scene, &scene) {
        write_json(path, &s.to_json())?;
    }
    Ok(())
}

pub fn verify(a: &VerifyArgs, m: &mut RunManifest) -> Result<(), Failure> {
    m.command = "verify".into();
    let scene = load_scene(&a.scene, m)?;
    let report = verify_realization(&scene).map_err(|e| Failure::Input(e.to_string()))?;
    println!(
        "objects={} matches={} tangent_pairs={}",
        scene.len(),
        report.matches,
        report.tangent_count()
    );
    if let Some(path) = &a.out {
        write_json(path, &report)?;
    }
    if report.matches {
        m.outcome = "matches".into();
        Ok(())
    } else {
        Err(Failure::Semantic(describe_mismatch(&report)))
    }
}

#[derive(Serialize)]
struct SolveReport {
    problem: String,
    budget: Option<String>,
    feasible: bool,
    optimum: Option<String>,
    witness: Vec<String>,
    nodes: u64,
}

fn count_budget(k: &Option<Rat>) -> Result<Option<usize>, Failure> {
    match k {
        None => Ok(None),
        Some(k) if k.is_integer() && !k.is_negative() => Ok(Some(k.to_f64() as usize)),
        Some(k) => Err(Failure::Input(format!("budget {k} is not a vertex count"))),
    }
}

fn report_from<C: ToString>(problem: &str, budget: &Option<Rat>, g: &LabeledGraph, s: Solve<C>) -> SolveReport {
    SolveReport {
        problem: problem.into(),
        budget: budget.as_ref().map(|b| b.to_string()),
        feasible: s.is_feasible(),
        optimum: s.optimum().map(|o| o.to_string().trim_end_matches("/1").to_string()),
        witness: s
            .witness()
            .unwrap_or_default()
            .iter()
            .map(|&v| g.label(v).to_string())
            .collect(),
        nodes: s.nodes(),
    }
}

pub fn solve(a: &SolveArgs, m: &mut RunManifest) -> Result<(), Failure> {
    m.command = "solve".into();
    m.param("problem", format!("{:?}", a.problem));
    if let Some(k) = &a.k {
        m.param("k", k);
    }
    let g = load_graph(&a.graph, m)?;
    let report = match a.problem {
        Problem::Ds => report_from("ds", &a.k, &g, solve_min_dominating_set(&g, count_budget(&a.k)?)),
        Problem::Wds => report_from("wds", &a.k, &g, solve_min_weight_dominating_set(&g, a.k.as_ref())),
        Problem::Cds => report_from("cds", &a.k, &g, solve_min_connected_dominating_set(&g, count_budget(&a.k)?)),
        Problem::Steiner => {
            let k = count_budget(&a.k)?.ok_or_else(|| Failure::Input("steiner needs --k".into()))?;
            let terminals: Vec<usize> = match &a.terminals {
                Some(labels) => labels
                    .iter()
                    .map(|l| g.id_of(l).ok_or_else(|| Failure::Input(format!("unknown terminal {l}"))))
                    .collect::<Result<_, _>>()?,
                None => (0..g.num_vertices()).filter(|&v| g.label(v).starts_with("b_")).collect(),
            };
            let out = solve_steiner_tree(&g, &terminals, k).map_err(|e| Failure::Input(e.to_string()))?;
            let witness = match &out {
                geodom::graphs::SteinerOutcome::Feasible(w) => w.iter().map(|&v| g.label(v).to_string()).collect(),
                geodom::graphs::SteinerOutcome::Infeasible => vec![],
            };
            SolveReport {
                problem: "steiner".into(),
                budget: Some(k.to_string()),
                feasible: out.is_feasible(),
                optimum: None,
                witness,
                nodes: 0,
            }
        }
    };
    match (&report.feasible, &report.optimum) {
        (true, Some(o)) => println!("optimum: {o}"),
        (true, None) => println!("feasible"),
        (false, _) => println!("infeasible"),
    }
    if report.feasible {
        println!("witness: {}", report.witness.join(","));
    }
    m.outcome = if report.feasible { "feasible" } else { "infeasible" }.into();
    if let Some(path) = &a.out {
        write_json(path, &report)?;
    }
    Ok(())
}

struct Job {
    name: String,
    formula: CnfFormula,
}

fn remove_edge(g: &mut LabeledGraph, edge: &str) -> Result<(), Failure> {
    let (a, b) = edge
        .split_once(',')
        .ok_or_else(|| Failure::Input(format!("--drop-edge expects two labels `a,b`, got `{edge}`")))?;
    let id = |l: &str| g.id_of(l.trim()).ok_or_else(|| Failure::Input(format!("unknown label {l}")));
    let (u, v) = (id(a)?, id(b)?);
    if !g.remove_edge(u, v) {
        return Err(Failure::Input(format!("no edge {a}-{b}")));
    }
    Ok(())
}

/// Runs one formula through the whole pipeline, collecting its output lines.
fn formula_roundtrip(job: &Job, a: &RoundtripArgs) -> (Vec<String>, Result<(), Failure>) {
    let mut lines = Vec::new();
    let result = (|| {
        let f = &job.formula;
        lines.push(format!(
            "[{}] parse: n={} clauses={} literals={}",
            job.name,
            f.num_vars(),
            f.num_clauses(),
            f.num_literals()
        ));
        let weighted = a.target == Target::WdsUnitball3d;
        let (graph, budget) = match reduce_formula(f, a.target, &a.weighted)? {
            Reduced::Trivial { satisfiable, output } => {
                lines.push(format!(
                    "[{}] preprocess: trivially {}",
                    job.name,
                    if satisfiable { "satisfiable" } else { "unsatisfiable" }
                ));
                if let Some(edge) = &a.drop_edge {
                    return Err(Failure::Input(format!("no edge {edge} in a one-vertex instance")));
                }
                (output.graph, output.target.budget().expect("formula targets carry a budget"))
            }
            Reduced::Built { output, mut scene } => {
                let c = output.counts.as_ref().expect("formula reductions carry counts");
                lines.push(format!(
                    "[{}] reduce: n={} t={} m={} |V|={} |E|={}",
                    job.name,
                    c.n,
                    c.t,
                    c.m,
                    output.graph.num_vertices(),
                    output.graph.num_edges()
                ));
                let mut graph = output.graph;
                if let Some(edge) = &a.drop_edge {
                    remove_edge(&mut graph, edge)?;
                    scene.expected = graph.clone();
                }
                let report = verify_realization(&scene).map_err(|e| Failure::Input(e.to_string()))?;
                if !report.matches {
                    lines.push(format!("[{}] verify: MISMATCH", job.name));
                    return Err(Failure::Semantic(describe_mismatch(&report)));
                }
                lines.push(format!(
                    "[{}] verify: matches ({} tangent pairs)",
                    job.name,
                    report.tangent_count()
                ));
                let budget = output.target.budget().expect("formula targets carry a budget");
                (graph, budget)
            }
        };

        let sat = solve_dpll(f).is_sat();
        lines.push(format!("[{}] dpll: {}", job.name, if sat { "SAT" } else { "UNSAT" }));
        let (holds, verdict) = if weighted {
            let s = solve_min_weight_dominating_set(&graph, None);
            let opt = s.optimum().cloned();
            lines.push(format!(
                "[{}] solve: WDS optimum = {}",
                job.name,
                opt.as_ref().map_or("none".into(), show)
            ));
            let at_budget = opt.as_ref() == Some(&budget);
            let above = opt.as_ref().is_none_or(|o| *o > budget);
            if sat {
                (at_budget, "SAT ⇔ WDS = n+t")
            } else {
                (above, "UNSAT ⇔ WDS > n+t")
            }
        } else {
            let s = solve_min_dominating_set(&graph, None);
            let opt = *s.optimum().expect("every graph has a dominating set");
            lines.push(format!("[{}] solve: DS optimum = {opt}", job.name));
            let within = Rat::from_int(opt as i64) <= budget;
            if sat {
                (within, "SAT ⇔ DS ≤ n+t")
            } else {
                (!within, "UNSAT ⇔ DS > n+t")
            }
        };
        if holds {
            lines.push(format!("[{}] {verdict}: CONFIRMED", job.name));
            Ok(())
        } else {
            lines.push(format!("[{}] {verdict}: VIOLATED", job.name));
            Err(Failure::Semantic(format!("{}: equivalence violated", job.name)))
        }
    })();
    (lines, result)
}

fn split_roundtrip(g: &LabeledGraph, a: &RoundtripArgs) -> Result<(), Failure> {
    let n = g.num_vertices();
    if n >= 3 {
        let eps = a.weighted.epsilon.clone().unwrap_or(Rat::new(1, 10));
        let mut scene = realize_split_planar(g, &eps).map_err(realization_failure)?;
        if let Some(edge) = &a.drop_edge {
            remove_edge(&mut scene.expected, edge)?;
        }
        let report = verify_realization(&scene).map_err(|e| Failure::Input(e.to_string()))?;
        if !report.matches {
            println!("verify: MISMATCH");
            return Err(Failure::Semantic(describe_mismatch(&report)));
        }
        println!("verify: matches ({} tangent pairs)", report.tangent_count());
    } else {
        println!("verify: skipped (planar realization needs at least 3 vertices)");
    }
    let cover = build_split_double_cover(g);
    let Budget::SplitCover { terminals } = &cover.target else {
        unreachable!("split cover target")
    };
    let h = &cover.graph;
    let ds_g = solve_min_dominating_set(g, None).optimum().copied().unwrap_or(0);
    let ds_h = solve_min_dominating_set(h, None).optimum().copied().unwrap_or(0);
    let cds_h = solve_min_connected_dominating_set(h, None).optimum().copied();
    println!("solve: DS(g)={ds_g} DS(G')={ds_h} CDS(G')={}", cds_h.map_or("none".into(), |c| c.to_string()));
    for k in 0..=n {
        let steiner = solve_steiner_tree(h, terminals, k)
            .map_err(|e| Failure::Input(e.to_string()))?
            .is_feasible();
        let answers = [ds_g <= k, ds_h <= k, cds_h.is_some_and(|c| c <= k), steiner];
        if answers.iter().any(|&x| x != answers[0]) {
            println!("DS(g) ≤ {k} ⇔ DS(G') ≤ {k} ⇔ CDS(G') ≤ {k} ⇔ Steiner(G', B, {k}): VIOLATED {answers:?}");
            return Err(Failure::Semantic(format!("split equivalence violated at k = {k}")));
        }
    }
    println!("DS(g) ≤ k ⇔ DS(G') ≤ k ⇔ CDS(G') ≤ k ⇔ Steiner(G', B, k): CONFIRMED for k = 0..{n}");
    Ok(())
}

fn cnf_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cnf"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn roundtrip(a: &RoundtripArgs, m: &mut RunManifest) -> Result<(), Failure> {
    m.command = "roundtrip".into();
    m.param("target", format!("{:?}", a.target));
    if a.target == Target::SplitPlanar {
        let path = a.graph.as_ref().ok_or_else(|| Failure::Input("--graph is required".into()))?;
        let g = load_graph(path, m)?;
        return split_roundtrip(&g, a);
    }

    let mut jobs = Vec::new();
    match (&a.cnf, a.n) {
        (Some(path), None) => {
            let files = if path.is_dir() { cnf_files(path)? } else { vec![path.clone()] };
            for file in files {
                jobs.push(Job {
                    name: file.display().to_string(),
                    formula: load_formula(&file, a.strict_33, m)?,
                });
            }
        }
        (None, Some(n)) => {
            if n < 2 {
                return Err(Failure::Input("--n must be at least 2".into()));
            }
            m.param("n", n);
            m.param("seed", a.seed);
            m.param("count", a.count);
            for seed in a.seed..a.seed + a.count {
                jobs.push(Job {
                    name: format!("n{n}-seed{seed}"),
                    formula: gen_random_33(n, seed),
                });
            }
        }
        _ => return Err(Failure::Input("give exactly one of --cnf and --n".into())),
    }

    let results: Vec<(Vec<String>, Result<(), Failure>)> = jobs.par_iter().map(|j| formula_roundtrip(j, a)).collect();
    let mut first_semantic = None;
    let mut first_input = None;
    let mut confirmed = 0;
    let several = jobs.len() > 1;
    for (lines, r) in results {
        for l in lines {
            println!("{l}");
        }
        match r {
            Ok(()) => confirmed += 1,
            Err(f) => {
                if several {
                    eprintln!("error: {f}");
                }
                match f {
                    Failure::Semantic(_) => first_semantic.get_or_insert(f),
                    Failure::Input(_) => first_input.get_or_insert(f),
                };
            }
        }
    }
    m.outcome = format!("{confirmed}/{} confirmed", jobs.len());
    if jobs.len() > 1 {
        println!("{confirmed}/{} confirmed", jobs.len());
    }
    match (first_semantic, first_input) {
        (Some(f), _) | (None, Some(f)) => Err(f),
        (None, None) => Ok(()),
    }
}
