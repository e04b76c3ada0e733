//! Monte Carlo simulation of the correlated channel over a grid.
//!
//! The continuous movement region is discretized into a lattice, the grid
//! correlation matrix is factored through a symmetric eigendecomposition
//! (`C = Q L Q^T`, `B = Q sqrt(L)`), and each replicate draws two standard
//! normal vectors to form the in-phase and quadrature field components
//! `B z`. The per-replicate supremum of the squared envelope approximates
//! the continuous supremum from below, with the grid spacing as the knob.
//!
//! Fine Jakes grids are numerically rank-deficient, so a triangular
//! factorization fails outright; instead, negative eigenvalues are clamped
//! to zero and the removed spectral mass is tracked. Construction fails if
//! the removed mass exceeds a tolerance.
//!
//! Replicates are reproducible and order-independent: replicate `i` draws
//! from stream `i` of a counter-based generator seeded with the master
//! seed, and per-threshold exceedance counts merge by addition. Runs are
//! bit-identical for a fixed seed regardless of worker count; the
//! `parallel` feature only changes how the replicate loop is scheduled.

use crate::bessel::j0_raw;
use crate::correlation::CorrelationModel;
use crate::error::{ensure_positive, Error, Result};
use crate::geometry::DomainBox;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Default ceiling on the number of grid points, guarding the dense
/// eigendecomposition.
pub const DEFAULT_POINT_CAP: usize = 20_000;

/// Default ceiling on the spectral mass removed by eigenvalue clamping.
pub const DEFAULT_CLAMP_TOL: f64 = 0.01;

/// Grid coordinates in wavelengths; unused axes stay at zero.
pub type GridPoint = [f64; 3];

/// A sampling lattice over a movement region.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    domain: DomainBox,
    spacing: f64,
    point_cap: usize,
}

impl GridSpec {
    /// Lattice over `domain` with the given spacing in wavelengths.
    pub fn new(domain: DomainBox, spacing: f64) -> Result<Self> {
        ensure_positive("spacing", spacing)?;
        Ok(Self {
            domain,
            spacing,
            point_cap: DEFAULT_POINT_CAP,
        })
    }

    /// Overrides the guard on the total number of grid points.
    pub fn with_point_cap(mut self, cap: usize) -> Self {
        assert!(cap >= 1, "point cap must be at least 1");
        self.point_cap = cap;
        self
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn point_cap(&self) -> usize {
        self.point_cap
    }

    /// Points per axis: `floor(T_i / spacing) + 1`, both endpoints included
    /// when the spacing divides the side length.
    pub fn points_per_axis(&self) -> Vec<usize> {
        self.domain
            .sides()
            .iter()
            .map(|&t| (t / self.spacing + 1e-9).floor() as usize + 1)
            .collect()
    }

    pub fn total_points(&self) -> usize {
        self.points_per_axis()
            .iter()
            .fold(1usize, |acc, &n| acc.saturating_mul(n))
    }
}

/// Builds the lattice `{(i1 d, .., in d)}` covering the region, row-major
/// with the last axis fastest.
pub fn build_grid(spec: &GridSpec) -> Result<Vec<GridPoint>> {
    let counts = spec.points_per_axis();
    let total = spec.total_points();
    if total > spec.point_cap() {
        return Err(Error::GridTooLarge {
            points: total,
            cap: spec.point_cap(),
        });
    }
    let dim = counts.len();
    let mut points = Vec::with_capacity(total);
    let mut index = vec![0usize; dim];
    for _ in 0..total {
        let mut p = [0.0; 3];
        for (axis, &i) in index.iter().enumerate() {
            p[axis] = i as f64 * spec.spacing;
        }
        points.push(p);
        for axis in (0..dim).rev() {
            index[axis] += 1;
            if index[axis] < counts[axis] {
                break;
            }
            index[axis] = 0;
        }
    }
    Ok(points)
}

/// Grid correlation matrix `C[i][j] = rho(|p_i - p_j|)`.
///
/// Only the Jakes model is accepted: the local quadratic model is not a
/// valid covariance beyond small separations.
pub fn covariance_matrix(points: &[GridPoint], model: CorrelationModel) -> Result<DMatrix<f64>> {
    match model {
        CorrelationModel::JakesJ0 => {}
        CorrelationModel::QuadraticLocal { .. } => return Err(Error::InvalidCovarianceModel),
    }
    let n = points.len();
    let mut c = DMatrix::<f64>::identity(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = points[i][0] - points[j][0];
            let dy = points[i][1] - points[j][1];
            let dz = points[i][2] - points[j][2];
            let dist = (dx * dx + dy * dy + dz * dz).sqrt();
            let rho = j0_raw(TAU * dist);
            c[(i, j)] = rho;
            c[(j, i)] = rho;
        }
    }
    Ok(c)
}

/// Factored covariance ready for field sampling.
#[derive(Debug, Clone)]
pub struct FieldSampler {
    factor: DMatrix<f64>,
    clamped_mass: f64,
}

/// Factors a symmetric unit-diagonal covariance as `B B^T ~= C` via a
/// symmetric eigendecomposition with negative eigenvalues clamped to zero.
///
/// `clamp_tol` bounds the fraction of spectral mass (relative to the trace)
/// that clamping may remove; beyond it the grid is too fine for the
/// numerical rank of the kernel and an error is returned.
pub fn covariance_factor(cov: &DMatrix<f64>, clamp_tol: f64) -> Result<FieldSampler> {
    assert!(cov.is_square(), "covariance matrix must be square");
    let trace = cov.trace();
    let eigen = cov.clone().symmetric_eigen();
    let removed: f64 = eigen
        .eigenvalues
        .iter()
        .filter(|&&l| l < 0.0)
        .map(|&l| -l)
        .sum();
    let clamped_mass = removed / trace;
    if clamped_mass > clamp_tol {
        return Err(Error::IllConditioned {
            removed: clamped_mass,
            tolerance: clamp_tol,
        });
    }
    let mut factor = eigen.eigenvectors;
    for (j, &l) in eigen.eigenvalues.iter().enumerate() {
        let scale = l.max(0.0).sqrt();
        factor.column_mut(j).scale_mut(scale);
    }
    Ok(FieldSampler {
        factor,
        clamped_mass,
    })
}

/// Convenience: grid, covariance and factorization in one step with the
/// default clamp tolerance.
pub fn field_sampler(spec: &GridSpec, model: CorrelationModel) -> Result<FieldSampler> {
    let points = build_grid(spec)?;
    let cov = covariance_matrix(&points, model)?;
    covariance_factor(&cov, DEFAULT_CLAMP_TOL)
}

struct Scratch {
    z: DVector<f64>,
    re: DVector<f64>,
    im: DVector<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            z: DVector::zeros(n),
            re: DVector::zeros(n),
            im: DVector::zeros(n),
        }
    }
}

impl FieldSampler {
    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.factor.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.factor.nrows() == 0
    }

    /// Square-root factor `B` with `B B^T ~= C`.
    pub fn factor(&self) -> &DMatrix<f64> {
        &self.factor
    }

    /// Fraction of spectral mass removed by eigenvalue clamping.
    pub fn clamped_mass(&self) -> f64 {
        self.clamped_mass
    }

    /// Draws one correlated field replicate and returns its in-phase and
    /// quadrature components (each marginally standard normal, jointly
    /// correlated by the grid covariance). The in-phase vector is drawn
    /// first.
    pub fn sample_components<R: Rng + ?Sized>(&self, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
        let mut scratch = Scratch::new(self.len());
        self.fill_components(rng, &mut scratch);
        (
            scratch.re.as_slice().to_vec(),
            scratch.im.as_slice().to_vec(),
        )
    }

    /// Supremum of the squared envelope `re^2 + im^2` over the grid for one
    /// replicate. Each grid point is marginally chi-squared with two
    /// degrees of freedom.
    pub fn sample_sup_chi2<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut scratch = Scratch::new(self.len());
        self.sup_chi2(rng, &mut scratch)
    }

    fn fill_components<R: Rng + ?Sized>(&self, rng: &mut R, scratch: &mut Scratch) {
        for z in scratch.z.iter_mut() {
            *z = rng.sample(StandardNormal);
        }
        scratch.re.gemv(1.0, &self.factor, &scratch.z, 0.0);
        for z in scratch.z.iter_mut() {
            *z = rng.sample(StandardNormal);
        }
        scratch.im.gemv(1.0, &self.factor, &scratch.z, 0.0);
    }

    fn sup_chi2<R: Rng + ?Sized>(&self, rng: &mut R, scratch: &mut Scratch) -> f64 {
        self.fill_components(rng, scratch);
        scratch
            .re
            .iter()
            .zip(scratch.im.iter())
            .map(|(r, i)| r * r + i * i)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Empirical complementary CDF of the per-replicate supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCcdf {
    /// Ascending field thresholds.
    pub thresholds: Vec<f64>,
    /// Count of replicates whose supremum reached each threshold.
    pub exceed_counts: Vec<u64>,
    /// Total replicate count.
    pub replicates: u64,
    /// Master seed of the run.
    pub seed: u64,
}

impl EmpiricalCcdf {
    /// Empirical exceedance probability at threshold index `i`.
    pub fn probability(&self, i: usize) -> f64 {
        self.exceed_counts[i] as f64 / self.replicates as f64
    }

    /// 95% Wilson score interval at threshold index `i`.
    pub fn wilson95(&self, i: usize) -> (f64, f64) {
        let z = 1.959963984540054_f64;
        let n = self.replicates as f64;
        let p = self.probability(i);
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        (center - half, center + half)
    }
}

fn validate_thresholds(thresholds: &[f64]) -> Result<()> {
    if thresholds.is_empty()
        || thresholds.iter().any(|u| !u.is_finite())
        || thresholds.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::BadThresholds);
    }
    Ok(())
}

fn replicate_sup(sampler: &FieldSampler, seed: u64, replicate: u64, scratch: &mut Scratch) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    sampler.sup_chi2(&mut rng, scratch)
}

fn count_exceedances(thresholds: &[f64], sup: f64, counts: &mut [u64]) {
    // thresholds ascend, so the exceeded set is a prefix
    let prefix = thresholds.partition_point(|&u0| u0 <= sup);
    for c in &mut counts[..prefix] {
        *c += 1;
    }
}

fn into_ccdf(thresholds: &[f64], counts: Vec<u64>, replicates: u64, seed: u64) -> EmpiricalCcdf {
    EmpiricalCcdf {
        thresholds: thresholds.to_vec(),
        exceed_counts: counts,
        replicates,
        seed,
    }
}

/// Runs the replicate loop against a prebuilt sampler.
///
/// Replicate `i` uses stream `i` of a ChaCha8 generator seeded with `seed`,
/// so the result does not depend on scheduling or worker count.
pub fn estimate_hsp_with(
    sampler: &FieldSampler,
    thresholds: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<EmpiricalCcdf> {
    validate_thresholds(thresholds)?;
    if replicates == 0 {
        return Err(Error::NoReplicates);
    }
    let nt = thresholds.len();
    #[cfg(feature = "parallel")]
    let counts = (0..replicates)
        .into_par_iter()
        .fold(
            || (vec![0u64; nt], Scratch::new(sampler.len())),
            |(mut counts, mut scratch), rep| {
                let sup = replicate_sup(sampler, seed, rep, &mut scratch);
                count_exceedances(thresholds, sup, &mut counts);
                (counts, scratch)
            },
        )
        .map(|(counts, _)| counts)
        .reduce(
            || vec![0u64; nt],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    #[cfg(not(feature = "parallel"))]
    let counts = sequential_counts(sampler, thresholds, replicates, seed);
    Ok(into_ccdf(thresholds, counts, replicates, seed))
}

/// Sequential variant of [`estimate_hsp_with`]; bit-identical results.
pub fn estimate_hsp_with_seq(
    sampler: &FieldSampler,
    thresholds: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<EmpiricalCcdf> {
    validate_thresholds(thresholds)?;
    if replicates == 0 {
        return Err(Error::NoReplicates);
    }
    let counts = sequential_counts(sampler, thresholds, replicates, seed);
    Ok(into_ccdf(thresholds, counts, replicates, seed))
}

fn sequential_counts(
    sampler: &FieldSampler,
    thresholds: &[f64],
    replicates: u64,
    seed: u64,
) -> Vec<u64> {
    let mut counts = vec![0u64; thresholds.len()];
    let mut scratch = Scratch::new(sampler.len());
    for rep in 0..replicates {
        let sup = replicate_sup(sampler, seed, rep, &mut scratch);
        count_exceedances(thresholds, sup, &mut counts);
    }
    counts
}

/// Full pipeline: grid, covariance, factorization (default clamp
/// tolerance) and replicate loop.
pub fn estimate_hsp(
    spec: &GridSpec,
    model: CorrelationModel,
    thresholds: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<EmpiricalCcdf> {
    let sampler = field_sampler(spec, model)?;
    estimate_hsp_with(&sampler, thresholds, replicates, seed)
}

/// Sequential variant of [`estimate_hsp`]; bit-identical results.
pub fn estimate_hsp_seq(
    spec: &GridSpec,
    model: CorrelationModel,
    thresholds: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<EmpiricalCcdf> {
    let sampler = field_sampler(spec, model)?;
    estimate_hsp_with_seq(&sampler, thresholds, replicates, seed)
}
