//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received parameters outside its domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The kinetic quadratic form derived from the junction ratios is not
    /// positive definite.
    #[error("kinetic quadratic form is not positive definite (alpha={alpha}, beta={beta})")]
    IndefiniteKineticForm { alpha: f64, beta: f64 },

    /// An iterative eigensolver failed to converge.
    #[error("eigensolver did not converge: {details}")]
    EigensolverFailure { details: String },

    /// A dense LAPACK call failed.
    #[error("linear algebra backend error: {0}")]
    Backend(String),

    /// The two-level reduction was requested outside its validity window.
    #[error("f_z = {f_z} outside the two-level validity window |f_z - 0.5| <= {window}")]
    OutsideTwoLevelWindow { f_z: f64, window: f64 },

    /// The measured gap at the requested bias is smaller than the gap at the
    /// degeneracy point, so no real longitudinal energy exists.
    #[error(
        "inconsistent gap: (gap/2)^2 - delta^2 = {excess} GHz^2 below tolerance; \
         the two-level reduction does not apply here"
    )]
    InconsistentGap { excess: f64 },

    /// Residual imaginary part of a coupling constant after phase fixing.
    #[error("coupling constant has residual imaginary part {imag} GHz after phase gauge fixing")]
    ImaginaryCoupling { imag: f64 },

    /// Fock-space truncation loses too much state norm.
    #[error("truncation loss {loss} exceeds tolerance {tol}; increase n_fock")]
    TruncationLoss { loss: f64, tol: f64 },

    /// The coupling matrix G is singular or too ill-conditioned to invert.
    #[error("coupling matrix is ill-conditioned (condition number {cond:.3e} > {limit:.1e})")]
    IllConditioned { cond: f64, limit: f64 },

    /// A closed-form denominator sits on a resonance.
    #[error("resonant denominator: omega_1*omega_2 - (2 g_c)^2 = {denominator} GHz^2")]
    ResonantDenominator { denominator: f64 },

    /// Requested Hilbert-space size exceeds the dense-matrix budget.
    #[error("Hilbert-space budget exceeded: required {required}, budget {budget}")]
    BudgetExceeded { required: usize, budget: usize },

    /// An iteration (Newton embedding, step doubling, truncation doubling)
    /// stopped before reaching its tolerance.
    #[error("did not converge after {iterations} iterations: {details}")]
    NonConvergence { iterations: usize, details: String },

    /// A requested coupler setting lies outside the hardware range.
    #[error("infeasible coupler settings for pairs {pairs:?}: |g_c| exceeds {limit} GHz")]
    InfeasibleCouplers { pairs: Vec<(usize, usize)>, limit: f64 },

    /// An annealing endpoint failed a physics gate.
    #[error("physics gate failed: {0}")]
    PhysicsGate(String),
}
