//! Screened Poisson solves on a single channel.
//!
//! Every backend minimises `||O - F||^2 + lambda * ||grad O - G||^2` for a
//! fidelity field `F` and target gradient field `G` by solving the normal
//! equations `(I - lambda * L) O = F - lambda * div G`, where `L` is the
//! Neumann Laplacian of [`crate::gradient::laplacian`].

mod cg;
mod dense;
mod spectral;

use alloc::boxed::Box;

pub use cg::solve_cg;
pub use dense::{solve_dense, DENSE_LIMIT};

use crate::dct::{CosineTablePlanner, TransformPlanner};
use crate::field::{ChannelField, GradientField};
use crate::gradient::{divergence, forward_gradient, laplacian};
use crate::pipeline::GradientTerm;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgOptions {
    /// Relative residual `||b - A x|| / ||b||` at which iteration stops.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for CgOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 10_000,
        }
    }
}

impl CgOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidOption("cg tolerance must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidOption("cg max iterations must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Backend {
    /// Exact solve by DCT-II diagonalisation.
    #[default]
    Spectral,
    /// Matrix-free conjugate gradient.
    ConjugateGradient(CgOptions),
    /// Dense Cholesky on the assembled system; small grids only.
    DenseOracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    /// Relative l2 residual of the normal equations at the returned solution.
    pub residual_norm: f64,
    /// Iterations taken (0 for direct backends).
    pub iterations: usize,
    /// Wall time of the solve; 0 unless the solver was given a clock.
    pub wall_time_seconds: f64,
    /// False only when conjugate gradient hit its iteration cap.
    pub converged: bool,
}

/// Per-image solver settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Weight of the gradient term on the L channel.
    pub lambda_l: f64,
    /// Weight of the gradient term on the a and b channels.
    pub lambda_ab: f64,
    pub backend: Backend,
    pub variant: GradientTerm,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            lambda_l: 5.0,
            lambda_ab: 1.0,
            backend: Backend::Spectral,
            variant: GradientTerm::Original,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        check_lambda(self.lambda_l)?;
        check_lambda(self.lambda_ab)?;
        if let Backend::ConjugateGradient(opts) = &self.backend {
            opts.validate()?;
        }
        Ok(())
    }

    /// Lambda applied to Lab channel `c`.
    pub fn lambda_for_channel(&self, c: usize) -> f64 {
        if c == 0 {
            self.lambda_l
        } else {
            self.lambda_ab
        }
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(())
}

pub(crate) fn check_problem(fidelity: &ChannelField, target: &GradientField, lambda: f64) -> Result<()> {
    check_lambda(lambda)?;
    fidelity.ensure_same_dims(target.gx())
}

/// Right-hand side `F - lambda * div G`.
pub fn normal_rhs(fidelity: &ChannelField, target: &GradientField, lambda: f64) -> ChannelField {
    let div = divergence(target);
    let data = fidelity
        .data()
        .iter()
        .zip(div.data())
        .map(|(f, d)| f - lambda * d)
        .collect();
    ChannelField::from_raw(fidelity.height(), fidelity.width(), data)
}

/// `u - lambda * L u`.
pub fn apply_operator(u: &ChannelField, lambda: f64) -> ChannelField {
    let lap = laplacian(u);
    let data = u.data().iter().zip(lap.data()).map(|(v, l)| v - lambda * l).collect();
    ChannelField::from_raw(u.height(), u.width(), data)
}

/// `||A O - b|| / ||b||`, or the absolute residual when `b = 0`.
pub fn relative_residual(solution: &ChannelField, fidelity: &ChannelField, target: &GradientField, lambda: f64) -> f64 {
    let b = normal_rhs(fidelity, target, lambda);
    let ax = apply_operator(solution, lambda);
    let r: f64 = ax.data().iter().zip(b.data()).map(|(a, b)| (a - b) * (a - b)).sum();
    let bn = b.norm();
    let rn = libm::sqrt(r);
    if bn > 0.0 {
        rn / bn
    } else {
        rn
    }
}

/// `||O - F||^2 + lambda * ||grad O - G||^2`.
pub fn objective(output: &ChannelField, fidelity: &ChannelField, target: &GradientField, lambda: f64) -> f64 {
    let fid: f64 = output
        .data()
        .iter()
        .zip(fidelity.data())
        .map(|(o, f)| (o - f) * (o - f))
        .sum();
    let g = forward_gradient(output);
    let sq = |a: &ChannelField, b: &ChannelField| -> f64 {
        a.data().iter().zip(b.data()).map(|(x, y)| (x - y) * (x - y)).sum()
    };
    fid + lambda * (sq(g.gx(), target.gx()) + sq(g.gy(), target.gy()))
}

type Clock = Box<dyn Fn() -> f64 + Send + Sync>;

/// Screened Poisson solver with a pluggable cosine transform for the
/// spectral backend.
pub struct ScreenedPoisson<P = CosineTablePlanner> {
    planner: P,
    clock: Option<Clock>,
}

impl Default for ScreenedPoisson<CosineTablePlanner> {
    fn default() -> Self {
        Self::with_planner(CosineTablePlanner::new())
    }
}

impl ScreenedPoisson<CosineTablePlanner> {
    pub fn new() -> Self {
        Self::default()
    }
}

impl<P: TransformPlanner> ScreenedPoisson<P> {
    pub fn with_planner(planner: P) -> Self {
        Self { planner, clock: None }
    }

    /// Installs a monotonic clock (seconds) used to fill
    /// [`SolveReport::wall_time_seconds`].
    pub fn with_clock(mut self, clock: impl Fn() -> f64 + Send + Sync + 'static) -> Self {
        self.clock = Some(Box::new(clock));
        self
    }

    pub fn planner_mut(&mut self) -> &mut P {
        &mut self.planner
    }

    pub(crate) fn now(&self) -> f64 {
        self.clock.as_ref().map_or(0.0, |c| c())
    }

    /// Solves with the chosen backend and certifies the result with the
    /// residual of the normal equations.
    pub fn solve(
        &mut self,
        fidelity: &ChannelField,
        target: &GradientField,
        lambda: f64,
        backend: Backend,
    ) -> Result<(ChannelField, SolveReport)> {
        check_problem(fidelity, target, lambda)?;
        let start = self.now();
        let (solution, iterations, converged) = if lambda == 0.0 {
            (fidelity.clone(), 0, true)
        } else {
            match backend {
                Backend::Spectral => (self.solve_spectral(fidelity, target, lambda)?, 0, true),
                Backend::ConjugateGradient(opts) => {
                    let (x, report) = solve_cg(fidelity, target, lambda, opts)?;
                    (x, report.iterations, report.converged)
                }
                Backend::DenseOracle => (solve_dense(fidelity, target, lambda)?, 0, true),
            }
        };
        let wall_time_seconds = self.now() - start;
        let report = SolveReport {
            residual_norm: relative_residual(&solution, fidelity, target, lambda),
            iterations,
            wall_time_seconds,
            converged,
        };
        Ok((solution, report))
    }
}
