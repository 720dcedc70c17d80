//! Threshold engine: minimize the least eigenvalue of projected conjugated
//! witnesses over Gaussian parameters (plus a spectral shift for variance
//! witnesses), and assemble the per-rank results into threshold tables.
//!
//! The optimizer is a coarse product grid followed by local refinement
//! rounds that shrink the search window around the incumbent; evaluation is
//! a pure map over parameter tuples and fans out across rayon workers, with
//! a total tie-break order so the reduced result does not depend on
//! evaluation order. Analytic conjugation makes every projected block entry
//! exact regardless of the realization dimension, which the truncation
//! ladder verifies at the incumbent after each optimization.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{cubic_conjugated_form, WitnessFamily};
use crate::gaussian::{realize_quadratic, realize_quartic, square_quadratic, GaussianParams, QuadraticForm};
use crate::C64;

/// Whether a table holds expectation-value thresholds W_m or variance
/// thresholds V_m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Expectation,
    Variance,
}

/// Grid point counts per optimization axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridResolution {
    pub theta: usize,
    pub re_z: usize,
    pub im_z: usize,
    pub r: usize,
    pub lambda: usize,
}

/// Search domains, grid resolutions and convergence controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub grid: GridResolution,
    /// |Re z| and |Im z| search bound.
    pub z_max: f64,
    /// |r| search bound.
    pub r_max: f64,
    /// Number of local refinement rounds after the coarse pass.
    pub refine_rounds: usize,
    /// Points per axis inside each refinement window.
    pub refine_points: usize,
    /// Window-width multiplier per refinement round, in (0, 1).
    pub shrink: f64,
    /// Starting dimension of the truncation ladder; `None` selects
    /// `8 (m+1) + ceil(8 (z_max^2 + e^{2 r_max}))`, clamped so at least two
    /// ladder rungs fit under `dim_cap`.
    pub trunc_start: Option<usize>,
    /// Geometric growth factor of the truncation ladder.
    pub trunc_growth: f64,
    /// Hard cap on the realization dimension.
    pub dim_cap: usize,
    /// Convergence tolerance on the minimal eigenvalue between ladder rungs.
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid: GridResolution { theta: 15, re_z: 15, im_z: 15, r: 15, lambda: 25 },
            z_max: 3.0,
            r_max: 1.5,
            refine_rounds: 4,
            refine_points: 15,
            shrink: 1.0 / 3.0,
            trunc_start: None,
            trunc_growth: 1.5,
            dim_cap: 640,
            tol: 1e-5,
        }
    }
}

impl OptimizerConfig {
    /// Per-family defaults. The GKP thresholds for m <= 1 are approached
    /// only in the strong-squeezing limit, so that family searches a wider
    /// r range; the Fock family needs displacements up to |z| ~ sqrt(k);
    /// the cat family has optima in basins too narrow for the 15-point
    /// coarse grid (e.g. the even m = 3 pocket around vartheta = pi/2).
    pub fn default_for(family: &WitnessFamily) -> Self {
        let mut cfg = Self::default();
        match family {
            WitnessFamily::Gkp { .. } => {
                cfg.r_max = 3.5;
                cfg.dim_cap = 384;
            }
            WitnessFamily::Fock { .. } => {
                cfg.z_max = 4.0;
            }
            WitnessFamily::Cat { .. } => {
                cfg.dim_cap = 512;
                cfg.grid.theta = 25;
                cfg.grid.re_z = 25;
                cfg.grid.im_z = 25;
                cfg.grid.r = 25;
                cfg.refine_points = 9;
            }
            WitnessFamily::Cubic { .. } => {
                cfg.refine_points = 9;
            }
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if self.z_max <= 0.0 || self.r_max <= 0.0 {
            return Err(Error::ContractViolation("z_max and r_max must be positive".into()));
        }
        for (name, n) in [
            ("theta", self.grid.theta),
            ("re_z", self.grid.re_z),
            ("im_z", self.grid.im_z),
            ("r", self.grid.r),
            ("lambda", self.grid.lambda),
        ] {
            if n < 3 {
                return Err(Error::ContractViolation(format!(
                    "grid resolution for {name} must be at least 3, got {n}"
                )));
            }
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::ContractViolation("shrink factor must lie in (0, 1)".into()));
        }
        if self.refine_points < 3 {
            return Err(Error::ContractViolation("refinement needs at least 3 points".into()));
        }
        if self.tol <= 0.0 {
            return Err(Error::ContractViolation("tolerance must be positive".into()));
        }
        if self.trunc_growth <= 1.0 {
            return Err(Error::ContractViolation("truncation growth must exceed 1".into()));
        }
        Ok(())
    }

    fn default_trunc_start(&self, m: usize) -> usize {
        let spread = 8.0 * (self.z_max * self.z_max + (2.0 * self.r_max).exp());
        8 * (m + 1) + spread.ceil() as usize
    }
}

/// Optimal point found for one rank, with convergence diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgminMeta {
    pub params: GaussianParams,
    pub lambda: Option<f64>,
    /// Final dimension at which the truncation ladder stabilized.
    pub dim_used: usize,
    /// Best value after the coarse pass and after each refinement round.
    pub round_values: Vec<f64>,
    pub converged: bool,
}

/// One rank's worth of threshold data and metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEntry {
    pub m: usize,
    /// Optimizer output before the monotone prefix-minimum pass.
    pub raw_pre_monotone: f64,
    pub params: GaussianParams,
    pub lambda: Option<f64>,
    pub dim_used: usize,
    pub converged: bool,
    /// Below the display floor; rendered as 0.0000 in fixed-width output.
    pub negligible: bool,
}

/// Per-family sequence of raw and normalized thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdTable {
    pub family: WitnessFamily,
    pub max_rank: usize,
    pub witness_kind: WitnessKind,
    /// W_m or V_m, non-increasing in m.
    pub raw: Vec<f64>,
    /// zeta_m or xi_m; the leading entry is 1 by construction.
    pub normalized: Vec<f64>,
    pub entries: Vec<ThresholdEntry>,
}

/// Smallest eigenvalue of the leading (m+1) x (m+1) principal submatrix.
///
/// Restricting to the leading principal block and taking eigenvalues
/// absorbs the rightmost phase shift of the Gaussian, which maps the
/// truncated Fock space onto itself.
pub fn min_eig_projected(matrix: &DMatrix<C64>, m: usize) -> Result<f64> {
    let dim = matrix.nrows();
    if matrix.ncols() != dim {
        return Err(Error::ContractViolation("projected matrix must be square".into()));
    }
    if m + 1 > dim {
        return Err(Error::InvalidRank { m, needed: m + 1, dim });
    }
    let block = matrix.view((0, 0), (m + 1, m + 1));
    let scale = block.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let defect =
        (block - block.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if defect > 1e-8 * scale {
        return Err(Error::ContractViolation(format!(
            "matrix block is not Hermitian (defect {defect:.3e})"
        )));
    }
    let herm = (block + block.adjoint()) * C64::new(0.5, 0.0);
    let eigs = herm.symmetric_eigenvalues();
    Ok(eigs.iter().cloned().fold(f64::INFINITY, f64::min))
}

/// Interval guaranteed to contain the optimal spectral shift
/// `lambda* = <Q>` over states in the projected block: the eigenvalue range
/// of the projected quadratic realization, widened by a unit safety margin.
pub fn lambda_interval(conjugated_form: &QuadraticForm, m: usize) -> Result<(f64, f64)> {
    let block = realize_quadratic(conjugated_form, m + 1)?;
    let eigs = block.symmetric_eigenvalues();
    let lo = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo - 1.0, hi + 1.0))
}

/// Grow the truncation dimension geometrically until two successive
/// evaluations agree within the configured tolerance.
///
/// Returns the value at the first dimension where the difference drops
/// below tolerance, together with that dimension. Hitting the cap without
/// stabilizing is a convergence failure carrying the best value seen.
pub fn converge_truncation<F>(
    mut eval_at_dim: F,
    cfg: &OptimizerConfig,
    start_dim: usize,
) -> Result<(f64, usize)>
where
    F: FnMut(usize) -> Result<f64>,
{
    let cap = cfg.dim_cap.max(2);
    // Keep at least two rungs under the cap.
    let max_start = ((cap as f64) / cfg.trunc_growth).floor() as usize;
    let mut dim = start_dim.clamp(1, max_start.max(1));
    let mut prev = eval_at_dim(dim)?;
    let mut best = prev;
    loop {
        let next_dim = (((dim as f64) * cfg.trunc_growth).ceil() as usize).min(cap);
        if next_dim <= dim {
            return Err(Error::ConvergenceFailure { best, dim_cap: cap });
        }
        dim = next_dim;
        let value = eval_at_dim(dim)?;
        best = best.min(value);
        if (value - prev).abs() < cfg.tol {
            return Ok((value, dim));
        }
        if dim >= cap {
            return Err(Error::ConvergenceFailure { best, dim_cap: cap });
        }
        prev = value;
    }
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Axis {
    fn fixed(v: f64) -> Self {
        Axis { lo: v, hi: v, n: 1 }
    }

    fn value(&self, i: usize) -> f64 {
        if self.n <= 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * (i as f64) / ((self.n - 1) as f64)
        }
    }

    fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Window of the given width centered on `center`, shifted to stay
    /// inside this axis.
    fn shrunk_around(&self, center: f64, width: f64) -> Axis {
        if self.n <= 1 {
            return *self;
        }
        let width = width.min(self.width());
        let mut lo = center - width / 2.0;
        let mut hi = center + width / 2.0;
        if lo < self.lo {
            hi += self.lo - lo;
            lo = self.lo;
        }
        if hi > self.hi {
            lo -= hi - self.hi;
            hi = self.hi;
        }
        Axis { lo: lo.max(self.lo), hi: hi.min(self.hi), n: self.n }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    lambda: Option<f64>,
    point: [f64; 4],
}

impl Candidate {
    /// Tie-break key: objective first, then lowest (|z|, |r|, vartheta),
    /// then the remaining coordinates for a total order.
    fn key(&self) -> [f64; 8] {
        let [theta, re, im, r] = self.point;
        [
            self.value,
            (re * re + im * im).sqrt(),
            r.abs(),
            theta,
            re,
            im,
            r,
            self.lambda.unwrap_or(0.0),
        ]
    }

    fn better_of(self, other: Candidate) -> Candidate {
        let ka = self.key();
        let kb = other.key();
        for (a, b) in ka.iter().zip(kb.iter()) {
            if a < b {
                return self;
            }
            if b < a {
                return other;
            }
        }
        self
    }

    fn params(&self) -> GaussianParams {
        GaussianParams::new(self.point[0], C64::new(self.point[1], self.point[2]), self.point[3])
    }
}

trait GridObjective: Sync {
    fn eval(&self, params: &GaussianParams) -> Result<(f64, Option<f64>)>;
}

struct Incumbent {
    best: Candidate,
    round_values: Vec<f64>,
}

fn evaluate_grid(axes: &[Axis; 4], obj: &dyn GridObjective) -> Result<Option<Candidate>> {
    let counts = [axes[0].n, axes[1].n, axes[2].n, axes[3].n];
    let total: usize = counts.iter().product();
    (0..total)
        .into_par_iter()
        .map(|flat| -> Result<Candidate> {
            let mut rem = flat;
            let mut point = [0.0_f64; 4];
            for (k, axis) in axes.iter().enumerate() {
                point[k] = axis.value(rem % counts[k]);
                rem /= counts[k];
            }
            let params =
                GaussianParams::new(point[0], C64::new(point[1], point[2]), point[3]);
            let (value, lambda) = obj.eval(&params)?;
            if !value.is_finite() {
                return Err(Error::NumericOverflow(format!(
                    "objective returned {value} at {params:?}"
                )));
            }
            Ok(Candidate { value, lambda, point })
        })
        .try_reduce_with(|a, b| Ok(a.better_of(b)))
        .transpose()
}

/// Coarse grid pass plus shrinking refinement rounds; the incumbent is
/// carried across rounds, so each round's best never regresses.
fn grid_minimize(
    full_axes: [Axis; 4],
    obj: &dyn GridObjective,
    cfg: &OptimizerConfig,
) -> Result<Incumbent> {
    let mut best = evaluate_grid(&full_axes, obj)?
        .ok_or_else(|| Error::ContractViolation("empty optimization grid".into()))?;
    let mut round_values = vec![best.value];
    for round in 1..=cfg.refine_rounds {
        let factor = cfg.shrink.powi(round as i32);
        let axes: [Axis; 4] = std::array::from_fn(|k| {
            let mut axis = full_axes[k]
                .shrunk_around(best.point[k], full_axes[k].width() * factor);
            if axis.n > 1 {
                axis.n = cfg.refine_points;
            }
            axis
        });
        if let Some(candidate) = evaluate_grid(&axes, obj)? {
            best = best.better_of(candidate);
        }
        round_values.push(best.value);
    }
    Ok(Incumbent { best, round_values })
}

struct ExpectationObjective {
    family: WitnessFamily,
    m: usize,
}

impl GridObjective for ExpectationObjective {
    fn eval(&self, params: &GaussianParams) -> Result<(f64, Option<f64>)> {
        let matrix = self.family.conjugated_matrix(params, self.m + 1)?;
        Ok((min_eig_projected(&matrix, self.m)?, None))
    }
}

struct VarianceObjective {
    m: usize,
    lambda_points: usize,
}

impl VarianceObjective {
    /// Least eigenvalue of the projected surrogate at a given shift,
    /// assembled as Q^2 - 2 lambda Q + lambda^2 from the projected blocks.
    fn shifted_min_eig(a1: &DMatrix<C64>, a2: &DMatrix<C64>, lambda: f64) -> f64 {
        let dim = a1.nrows();
        let m = a2 - a1 * C64::new(2.0 * lambda, 0.0)
            + DMatrix::<C64>::identity(dim, dim) * C64::new(lambda * lambda, 0.0);
        m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

impl GridObjective for VarianceObjective {
    fn eval(&self, params: &GaussianParams) -> Result<(f64, Option<f64>)> {
        let form = cubic_conjugated_form(params);
        let block = self.m + 1;
        let a1 = realize_quadratic(&form, block)?;
        let a2 = realize_quartic(&square_quadratic(&form), block)?;
        // The optimal shift is <Q> of some block state, inside the
        // eigenvalue range of the projected Q; same interval as
        // lambda_interval, reusing the block already built.
        let a1_eigs = a1.symmetric_eigenvalues();
        let lo = a1_eigs.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0;
        let hi = a1_eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0;

        // Scan lambda across its interval, then polish by alternating the
        // exact minimizers: the ground state for fixed lambda, and
        // lambda = <Q> for a fixed state. Each step is non-increasing.
        let mut best_lambda = lo;
        let mut best_value = f64::INFINITY;
        for i in 0..self.lambda_points {
            let lambda = lo + (hi - lo) * (i as f64) / ((self.lambda_points - 1) as f64);
            let value = Self::shifted_min_eig(&a1, &a2, lambda);
            if value < best_value {
                best_value = value;
                best_lambda = lambda;
            }
        }
        for _ in 0..15 {
            let shifted = &a2 - &a1 * C64::new(2.0 * best_lambda, 0.0)
                + DMatrix::<C64>::identity(block, block)
                    * C64::new(best_lambda * best_lambda, 0.0);
            let eig = nalgebra::SymmetricEigen::new(shifted);
            let (mut ground_idx, mut ground_val) = (0usize, f64::INFINITY);
            for (i, &v) in eig.eigenvalues.iter().enumerate() {
                if v < ground_val {
                    ground_val = v;
                    ground_idx = i;
                }
            }
            let psi = eig.eigenvectors.column(ground_idx);
            let next_lambda = (psi.adjoint() * &a1 * psi)[(0, 0)].re;
            let next_value = Self::shifted_min_eig(&a1, &a2, next_lambda);
            let improved = next_value < best_value - 1e-11;
            if next_value < best_value {
                best_value = next_value;
                best_lambda = next_lambda;
            }
            if !improved {
                break;
            }
        }
        Ok((best_value, Some(best_lambda)))
    }
}

fn gaussian_axes(family: &WitnessFamily, cfg: &OptimizerConfig) -> [Axis; 4] {
    let theta = if family.uses_phase_axis() {
        Axis { lo: 0.0, hi: std::f64::consts::PI, n: cfg.grid.theta }
    } else {
        Axis::fixed(0.0)
    };
    [
        theta,
        Axis { lo: -cfg.z_max, hi: cfg.z_max, n: cfg.grid.re_z },
        Axis { lo: -cfg.z_max, hi: cfg.z_max, n: cfg.grid.im_z },
        Axis { lo: -cfg.r_max, hi: cfg.r_max, n: cfg.grid.r },
    ]
}

fn finish_optimization<F>(
    incumbent: Incumbent,
    cfg: &OptimizerConfig,
    m: usize,
    eval_at_dim: F,
) -> Result<(f64, ArgminMeta)>
where
    F: FnMut(usize) -> Result<f64>,
{
    let start = cfg.trunc_start.unwrap_or_else(|| cfg.default_trunc_start(m)).max(m + 2);
    let ladder = converge_truncation(eval_at_dim, cfg, start);
    let (value, dim_used, converged) = match ladder {
        Ok((value, dim)) => (value, dim, true),
        Err(Error::ConvergenceFailure { best, dim_cap }) => {
            log::warn!(
                "truncation ladder for m={m} did not stabilize below dim {dim_cap}; keeping best"
            );
            (best.min(incumbent.best.value), dim_cap, false)
        }
        Err(e) => return Err(e),
    };
    if (value - incumbent.best.value).abs() > 1e-9 {
        log::warn!(
            "ladder value {value} deviates from grid incumbent {} at m={m}",
            incumbent.best.value
        );
    }
    let meta = ArgminMeta {
        params: incumbent.best.params(),
        lambda: incumbent.best.lambda,
        dim_used,
        round_values: incumbent.round_values,
        converged,
    };
    if !converged {
        return Err(Error::ConvergenceFailure { best: value, dim_cap: cfg.dim_cap });
    }
    Ok((value, meta))
}

/// Minimize the projected least eigenvalue of an expectation-value witness
/// over Gaussian parameters. The result is an upper bound on the true
/// infimum over states of stellar rank at most `m`.
pub fn optimize_expectation_threshold(
    family: &WitnessFamily,
    m: usize,
    cfg: &OptimizerConfig,
) -> Result<(f64, ArgminMeta)> {
    cfg.validate()?;
    if family.is_variance() {
        return Err(Error::ContractViolation(
            "variance families use optimize_variance_threshold".into(),
        ));
    }
    let objective = ExpectationObjective { family: *family, m };
    let incumbent = grid_minimize(gaussian_axes(family, cfg), &objective, cfg)?;
    let params = incumbent.best.params();
    let fam = *family;
    finish_optimization(incumbent, cfg, m, move |dim| {
        min_eig_projected(&fam.conjugated_matrix(&params, dim)?, m)
    })
}

/// Minimize the projected least eigenvalue of the variance surrogate
/// `(Q - lambda)^2` over Gaussian parameters and the shift `lambda`.
pub fn optimize_variance_threshold(
    family: &WitnessFamily,
    m: usize,
    cfg: &OptimizerConfig,
) -> Result<(f64, ArgminMeta)> {
    cfg.validate()?;
    let WitnessFamily::Cubic { kappa } = family else {
        return Err(Error::ContractViolation(
            "expectation families use optimize_expectation_threshold".into(),
        ));
    };
    if (kappa - 1.0).abs() > 1e-12 {
        return Err(Error::ContractViolation(
            "only kappa = 1 is implemented; other values are Gaussian-equivalent".into(),
        ));
    }
    let objective = VarianceObjective { m, lambda_points: cfg.grid.lambda };
    let incumbent = grid_minimize(gaussian_axes(family, cfg), &objective, cfg)?;
    let params = incumbent.best.params();
    let lambda = incumbent.best.lambda.unwrap_or(0.0);
    finish_optimization(incumbent, cfg, m, move |dim| {
        let form = cubic_conjugated_form(&params);
        min_eig_projected(&crate::families::surrogate_matrix(&form, lambda, dim)?, m)
    })
}

/// Display floor below which a threshold is flagged negligible.
const NEGLIGIBLE_FLOOR: f64 = 5e-5;

/// Compute thresholds for ranks 0..=m_max, apply the monotone
/// prefix-minimum, and normalize by the Gaussian limit.
///
/// Fock-family entries with m >= k are exactly zero: the target |k> itself
/// lies in the projected space at identity parameters.
pub fn build_table(
    family: &WitnessFamily,
    m_max: usize,
    cfg: &OptimizerConfig,
) -> Result<ThresholdTable> {
    cfg.validate()?;
    let kind = if family.is_variance() { WitnessKind::Variance } else { WitnessKind::Expectation };
    let mut entries = Vec::with_capacity(m_max + 1);
    let mut raw = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let (value, meta) = match family {
            WitnessFamily::Fock { k } if m >= *k as usize => (
                0.0,
                ArgminMeta {
                    params: GaussianParams::identity(),
                    lambda: None,
                    dim_used: m + 1,
                    round_values: vec![0.0],
                    converged: true,
                },
            ),
            WitnessFamily::Cubic { .. } => optimize_variance_threshold(family, m, cfg)?,
            _ => optimize_expectation_threshold(family, m, cfg)?,
        };
        // Witness operators are positive semidefinite, so only eigensolver
        // rounding can dip below zero.
        let clamped = if value < 0.0 {
            if value < -1e-9 {
                return Err(Error::ContractViolation(format!(
                    "threshold for m={m} came out negative ({value:.3e})"
                )));
            }
            0.0
        } else {
            value
        };
        raw.push(clamped);
        entries.push(ThresholdEntry {
            m,
            raw_pre_monotone: clamped,
            params: meta.params,
            lambda: meta.lambda,
            dim_used: meta.dim_used,
            converged: meta.converged,
            negligible: clamped < NEGLIGIBLE_FLOOR,
        });
    }
    // Poincare separation guarantees a non-increasing sequence; the prefix
    // minimum only irons out grid noise.
    let mut running = f64::INFINITY;
    for (m, value) in raw.iter_mut().enumerate() {
        if *value > running + 1e-9 {
            log::warn!(
                "prefix-minimum lowered m={m} from {value} to {running}; grid noise above 1e-9"
            );
        }
        running = running.min(*value);
        *value = running;
        entries[m].negligible = running < NEGLIGIBLE_FLOOR;
    }
    let mut normalized = vec![0.0; raw.len()];
    normalized[0] = 1.0;
    if raw[0] > 0.0 {
        for m in 1..raw.len() {
            normalized[m] = raw[m] / raw[0];
        }
    }
    Ok(ThresholdTable {
        family: *family,
        max_rank: m_max,
        witness_kind: kind,
        raw,
        normalized,
        entries,
    })
}
