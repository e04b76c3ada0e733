//! Subcommand implementations.

use crate::config::CliError;
use crate::csvout::{emit, num, sig15, sig6};
use cfas::analytic::{eec, hsp_closed_form, scaled_hsp, scaling_factor};
use cfas::montecarlo::{
    build_grid, covariance_factor, covariance_matrix, estimate_hsp_with, EmpiricalCcdf, GridSpec,
};
use cfas::shapeopt::{
    brute_force_cuboid, brute_force_rectangle, optimal_cuboid, optimal_rectangle,
    ShapeConstraints2D, ShapeConstraints3D,
};
use cfas::{CorrelationModel, DomainBox};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub struct CurveParams {
    pub domain: DomainBox,
    pub lambda2: f64,
    pub thresholds: Vec<f64>,
    pub output: Option<PathBuf>,
}

pub struct OptimizeParams {
    pub constraints: Constraints,
    pub lambda2: f64,
    pub u0: f64,
    pub steps: usize,
    pub output: Option<PathBuf>,
}

pub enum Constraints {
    Rect(ShapeConstraints2D),
    Cuboid(ShapeConstraints3D),
}

pub struct SimulateParams {
    pub domain: DomainBox,
    pub lambda2: f64,
    pub spacing: f64,
    pub thresholds: Vec<f64>,
    pub replicates: u64,
    pub seed: u64,
    pub cap: usize,
    pub clamp_tol: f64,
    pub output: Option<PathBuf>,
}

pub struct ReproduceParams {
    pub figure: Figure,
    pub outdir: PathBuf,
    pub replicates: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig3,
}

fn render_analytic(domain: &DomainBox, lambda2: f64, thresholds: &[f64]) -> String {
    let mut out = String::from("u0,p_closed,p_eec,p_scaling,clamped\n");
    for &u0 in thresholds {
        let closed = hsp_closed_form(domain, lambda2, u0);
        let general = eec(domain, lambda2, u0);
        let scaled = scaled_hsp(domain, lambda2, u0);
        let clamped = closed.clamped || general.clamped || scaled.clamped;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(u0),
            sig15(closed.value),
            sig15(general.value),
            sig15(scaled.value),
            clamped
        );
    }
    out
}

pub fn cmd_analytic(p: &CurveParams) -> Result<(), CliError> {
    let body = render_analytic(&p.domain, p.lambda2, &p.thresholds);
    emit(&body, p.output.as_deref())
}

pub fn cmd_scale(p: &CurveParams) -> Result<(), CliError> {
    let mut out = String::from("u0,p_closed,p_scaling,ratio,clamped\n");
    for &u0 in &p.thresholds {
        let closed = hsp_closed_form(&p.domain, p.lambda2, u0);
        let scaled = scaled_hsp(&p.domain, p.lambda2, u0);
        // cumulative gain over the fixed antenna
        let ratio = p
            .domain
            .sides()
            .iter()
            .fold(1.0, |acc, &t| acc * scaling_factor(t, p.lambda2, u0));
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(u0),
            sig15(closed.value),
            sig15(scaled.value),
            sig15(ratio),
            closed.clamped || scaled.clamped
        );
    }
    emit(&out, p.output.as_deref())
}

pub fn cmd_optimize(p: &OptimizeParams) -> Result<(), CliError> {
    let mut out = String::from("solution,t1,t2,t3,value\n");
    match &p.constraints {
        Constraints::Rect(c) => {
            let (t1, t2) = optimal_rectangle(c);
            let analytic = hsp_closed_form(
                &DomainBox::new([t1, t2]).map_err(CliError::from)?,
                p.lambda2,
                p.u0,
            )
            .value;
            let (sides, best) = brute_force_rectangle(c, p.lambda2, p.u0, p.steps);
            let _ = writeln!(
                out,
                "analytic,{},{},,{}",
                num(t1),
                num(t2),
                sig15(analytic)
            );
            let _ = writeln!(
                out,
                "oracle,{},{},,{}",
                num(sides[0]),
                num(sides[1]),
                sig15(best)
            );
            let _ = writeln!(out, "gap,,,,{}", sig15(analytic - best));
        }
        Constraints::Cuboid(c) => {
            let (t1, t2, t3) = optimal_cuboid(c);
            let analytic = hsp_closed_form(
                &DomainBox::new([t1, t2, t3]).map_err(CliError::from)?,
                p.lambda2,
                p.u0,
            )
            .value;
            let (sides, best) = brute_force_cuboid(c, p.lambda2, p.u0, p.steps);
            let _ = writeln!(
                out,
                "analytic,{},{},{},{}",
                num(t1),
                num(t2),
                num(t3),
                sig15(analytic)
            );
            let _ = writeln!(
                out,
                "oracle,{},{},{},{}",
                num(sides[0]),
                num(sides[1]),
                num(sides[2]),
                sig15(best)
            );
            let _ = writeln!(out, "gap,,,,{}", sig15(analytic - best));
        }
    }
    emit(&out, p.output.as_deref())
}

fn run_simulation(p: &SimulateParams) -> Result<EmpiricalCcdf, CliError> {
    let spec = GridSpec::new(p.domain.clone(), p.spacing)?.with_point_cap(p.cap);
    let points = build_grid(&spec)?;
    let cov = covariance_matrix(&points, CorrelationModel::JakesJ0)?;
    let sampler = covariance_factor(&cov, p.clamp_tol)?;
    Ok(estimate_hsp_with(
        &sampler,
        &p.thresholds,
        p.replicates,
        p.seed,
    )?)
}

fn render_simulation(p: &SimulateParams, ccdf: &EmpiricalCcdf) -> String {
    let mut out = String::from("u0,p_emp,ci_low,ci_high,p_closed\n");
    for (i, &u0) in ccdf.thresholds.iter().enumerate() {
        let est = cfas::HspEstimate::simulation(ccdf.probability(i), ccdf.wilson95(i));
        let (lo, hi) = est.ci95.expect("simulation estimates carry an interval");
        let closed = hsp_closed_form(&p.domain, p.lambda2, u0).value;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(u0),
            sig6(est.value),
            sig6(lo),
            sig6(hi),
            sig6(closed)
        );
    }
    out
}

pub fn cmd_simulate(p: &SimulateParams) -> Result<(), CliError> {
    let ccdf = run_simulation(p)?;
    emit(&render_simulation(p, &ccdf), p.output.as_deref())
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    std::fs::write(&path, body)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn cmd_reproduce(p: &ReproduceParams) -> Result<(), CliError> {
    std::fs::create_dir_all(&p.outdir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", p.outdir.display())))?;
    let lambda2 = cfas::JAKES_LAMBDA2;
    match p.figure {
        Figure::Fig2 => {
            // quarter-wavelength sides, dimensions 0 through 3
            let thresholds = crate::config::expand_range(3.0, 16.0, 0.25)?;
            for n in 0..=3usize {
                let domain = DomainBox::new(vec![0.25; n])?;
                let body = render_analytic(&domain, lambda2, &thresholds);
                write_file(&p.outdir, &format!("fig2_analytic_{n}d.csv"), &body)?;
            }
            // desk-scale simulations up to 2D
            for (n, spacing) in [(0usize, 0.01), (1, 0.01), (2, 0.025)] {
                let sim = SimulateParams {
                    domain: DomainBox::new(vec![0.25; n])?,
                    lambda2,
                    spacing,
                    thresholds: thresholds.clone(),
                    replicates: p.replicates,
                    seed: p.seed,
                    cap: cfas::montecarlo::DEFAULT_POINT_CAP,
                    clamp_tol: cfas::montecarlo::DEFAULT_CLAMP_TOL,
                    output: None,
                };
                let ccdf = run_simulation(&sim)?;
                let body = render_simulation(&sim, &ccdf);
                write_file(&p.outdir, &format!("fig2_sim_{n}d.csv"), &body)?;
            }
        }
        Figure::Fig3 => {
            // fixed measure 1, increasingly non-compact shapes
            let thresholds = crate::config::expand_range(4.0, 20.0, 0.25)?;
            let rects: [(&str, [f64; 2]); 3] = [
                ("1x1", [1.0, 1.0]),
                ("2x0.5", [2.0, 0.5]),
                ("8x0.125", [8.0, 0.125]),
            ];
            for (label, sides) in rects {
                let body = render_analytic(&DomainBox::new(sides)?, lambda2, &thresholds);
                write_file(&p.outdir, &format!("fig3_2d_{label}.csv"), &body)?;
            }
            let cubes: [(&str, [f64; 3]); 3] = [
                ("1x1x1", [1.0, 1.0, 1.0]),
                ("2x2x0.25", [2.0, 2.0, 0.25]),
                ("4x4x0.0625", [4.0, 4.0, 0.0625]),
            ];
            for (label, sides) in cubes {
                let body = render_analytic(&DomainBox::new(sides)?, lambda2, &thresholds);
                write_file(&p.outdir, &format!("fig3_3d_{label}.csv"), &body)?;
            }
        }
    }
    Ok(())
}
