use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use trunclap::bounds::{bounds_report, Constraint};
use trunclap::eigensolver::{refinement_table, SolverConfig};
use trunclap::explorer::{
    degenerate_rectangles, hausdorff_continuity_experiment, inscribed_polygons, perturbation_regression,
    reuleaux_scan, shrinking_sequence, write_experiment, ThinShape,
};
use trunclap::grid::rasterize_with;
use trunclap::table::to_json;
use trunclap::verify::{all_passed, run_suite, Suite, VerifyOptions};
use trunclap::{analytic_mu, build_stencil, solve_on_grid, Config, Domain, Error, InnerSolver};

use crate::args::{
    BoundsArgs, Common, ConstraintArg, Discretization, ExploreArgs, Experiment, ShapeArg, SolveArgs, SuiteArg,
    VerifyArgs,
};

/// Why a command did not succeed, mapped onto the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input: exit 1.
    Input(String),
    /// The numerical solver did not converge: exit 2.
    Solver(String),
    /// A checked assertion did not hold: exit 1.
    Assertion(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Assertion(_) => 1,
            Failure::Solver(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Solver(m) | Failure::Assertion(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_solver_failure() {
            Failure::Solver(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn print_json<V: Serialize>(v: &V) -> Outcome {
    print!("{}", to_json(v)?);
    Ok(())
}

/// Reads a domain from an inline JSON object or from a file.
pub fn load_domain(arg: &str) -> std::result::Result<Domain, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read domain file {arg}: {e}")))?
    };
    let domain: Domain =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed domain JSON: {e}")))?;
    domain
        .validate()
        .map_err(|e| Failure::Input(format!("invalid domain: {e}")))?;
    Ok(domain)
}

fn inner_solver(pseudo_time: bool) -> InnerSolver {
    if pseudo_time {
        InnerSolver::PseudoTime
    } else {
        InnerSolver::PolicyIteration
    }
}

#[derive(Serialize)]
struct Timings {
    rasterize_s: f64,
    solve_s: f64,
}

#[derive(Serialize)]
struct SolveOutput {
    domain: String,
    analytic: bool,
    mu: f64,
    mu_low: f64,
    mu_high: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(rename = "W", skip_serializing_if = "Option::is_none")]
    stencil_width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outer_iters: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner_iters_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interior_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Timings>,
}

fn single<T: Copy>(values: &[T], name: &str) -> std::result::Result<T, Failure> {
    match values {
        [v] => Ok(*v),
        _ => Err(Failure::Input(format!("--{name} takes a single value unless --sweep is given"))),
    }
}

fn create(path: &Path) -> std::result::Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

pub fn solve(a: SolveArgs) -> Outcome {
    let domain = load_domain(&a.domain)?;
    let exact = analytic_mu(&domain);
    let wants_dump = a.dump_eigenfunction.is_some() || a.dump_grid.is_some();
    if let (Some(mu), false, false, false) = (exact, a.force_numeric, a.sweep, wants_dump) {
        return print_json(&SolveOutput {
            domain: domain.label(),
            analytic: true,
            mu,
            mu_low: mu,
            mu_high: mu,
            exact: None,
            h: None,
            stencil_width: None,
            outer_iters: None,
            inner_iters_total: None,
            residual: None,
            interior_nodes: None,
            timings: None,
        });
    }

    let planar = domain.to_planar()?;
    let hs = if a.h.is_empty() {
        vec![planar.diameter() / 128.0]
    } else {
        a.h.clone()
    };
    let mut cfg = Config::with_grid(hs[0], a.stencil[0]);
    cfg.inner = inner_solver(!a.policy_iteration);
    cfg.tol_bracket = a.tol_bracket;
    cfg.max_outer = a.max_outer;
    cfg.validate()?;

    if a.sweep {
        let rows = refinement_table(&domain, &hs, &a.stencil, &cfg, a.richardson)?;
        return print_json(&rows);
    }
    cfg.h = single(&hs, "h")?;
    cfg.stencil_width = single(&a.stencil, "stencil")?;
    cfg.validate()?;

    let t0 = Instant::now();
    let stencil = build_stencil(cfg.stencil_width)?;
    let grid = rasterize_with(&planar, cfg.h, &stencil, cfg.grid_options())?;
    let t1 = Instant::now();
    if let Some(p) = &a.dump_grid {
        grid.write_csv(create(p)?)?;
    }
    let est = solve_on_grid(&grid, &cfg)?;
    let t2 = Instant::now();
    if let Some(p) = &a.dump_eigenfunction {
        est.eigenfunction.write_csv(&grid, create(p)?)?;
    }
    print_json(&SolveOutput {
        domain: domain.label(),
        analytic: false,
        mu: est.mu,
        mu_low: est.mu_low,
        mu_high: est.mu_high,
        exact,
        h: Some(est.h),
        stencil_width: Some(est.stencil_width),
        outer_iters: Some(est.outer_iters),
        inner_iters_total: Some(est.inner_iters_total),
        residual: Some(est.residual),
        interior_nodes: Some(est.interior_nodes),
        timings: a.timings.then(|| Timings {
            rasterize_s: (t1 - t0).as_secs_f64(),
            solve_s: (t2 - t1).as_secs_f64(),
        }),
    })
}

#[derive(Serialize)]
struct BoundsOutput {
    domain: String,
    analytic: Option<f64>,
    #[serde(flatten)]
    report: trunclap::Report,
}

pub fn bounds(a: BoundsArgs) -> Outcome {
    let domain = load_domain(&a.domain)?;
    let report = bounds_report(&domain, a.dim)?;
    print_json(&BoundsOutput {
        domain: domain.label(),
        analytic: analytic_mu(&domain),
        report,
    })
}

pub fn verify(a: VerifyArgs) -> Outcome {
    let suite = match a.suite {
        SuiteArg::Analytic => Suite::Analytic,
        SuiteArg::Inequalities => Suite::Inequalities,
    };
    let opts = VerifyOptions {
        h_rel: a.h_rel,
        stencil_width: a.stencil,
        inner: inner_solver(a.pseudo_time),
        seed: a.seed,
    };
    let checks = run_suite(suite, &opts)?;
    for c in &checks {
        println!("{c}");
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{suite}: {passed}/{} passed", checks.len());
    if all_passed(&checks) {
        Ok(())
    } else {
        Err(Failure::Assertion(format!(
            "{} of {} checks failed in suite {suite}",
            checks.len() - passed,
            checks.len()
        )))
    }
}

fn config(d: &Discretization) -> std::result::Result<Config, Failure> {
    let mut cfg = SolverConfig::with_grid(d.h, d.stencil);
    cfg.inner = inner_solver(d.pseudo_time);
    cfg.validate()?;
    Ok(cfg)
}

fn emit<E: trunclap::explorer::Experiment>(e: &E, common: &Common) -> Outcome {
    for p in write_experiment(e, &common.out, common.plot_data)? {
        println!("wrote {}", p.display());
    }
    let v = e.verdict();
    println!("{}: {:?}: {}", e.name(), v.status, v.detail);
    if e.within_bounds() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!(
            "{}: a row lies outside the Jung floor or the diameter cap beyond slack",
            e.name()
        )))
    }
}

pub fn explore(a: ExploreArgs) -> Outcome {
    match a.experiment {
        Experiment::Rectangles {
            constraint,
            level,
            n,
            common,
        } => {
            let c = match constraint {
                ConstraintArg::Volume => Constraint::Volume,
                ConstraintArg::Perimeter => Constraint::Perimeter,
            };
            emit(&degenerate_rectangles(c, level, &n)?, &common)
        }
        Experiment::Shrinking {
            d,
            eps,
            shapes,
            disc,
            common,
        } => {
            let shapes: Vec<ThinShape> = shapes
                .iter()
                .map(|s| match s {
                    ShapeArg::Rectangle => ThinShape::Rectangle,
                    ShapeArg::Triangle => ThinShape::Triangle,
                })
                .collect();
            emit(&shrinking_sequence(d, &eps, &shapes, &config(&disc)?)?, &common)
        }
        Experiment::Reuleaux {
            d,
            n,
            arc_samples,
            disc,
            common,
        } => emit(&reuleaux_scan(d, &n, arc_samples, &config(&disc)?)?, &common),
        Experiment::Hausdorff {
            r,
            n,
            trials,
            delta,
            disc,
            common,
        } => {
            let cfg = config(&disc)?;
            let polys = inscribed_polygons(&n, r)?;
            emit(
                &hausdorff_continuity_experiment(&Domain::ball(r, 2), &polys, &cfg)?,
                &common,
            )?;
            if trials > 0 {
                let base = trunclap::regular_polygon(8, r)?;
                emit(
                    &perturbation_regression(&base, trials, delta * r, common.seed, &cfg)?,
                    &common,
                )?;
            }
            Ok(())
        }
    }
}
