//! Three-phase flux-qubit circuit Hamiltonian in a truncated charge basis,
//! its spectrum, and the two-level reduction.
//!
//! The qubit carries three junction phases (φ_a, φ_b, φ_β). Each phase is
//! expanded over plane waves `|ψ_η⟩ ∝ e^{iηφ}` with integer charge number
//! η ∈ [-cutoff, cutoff], so `e^{iφ}` raises η by one and every cosine in the
//! potential becomes a hopping term with amplitude 1/2. Charging energy is
//! diagonal: with `q_j = 2e n_j` the kinetic quadratic form evaluates on the
//! integer charge vector directly.
//!
//! As printed, the kinetic form carries `-(1+2α) q_β²`, which is unbounded
//! below. Deriving the inverse capacitance matrix from the junction
//! capacitances (C for a and b, βC for the β junction, αC for the α branch)
//! reproduces every other coefficient, gives determinant C³(α+β+2αβ), and
//! fixes the sign to `+(1+2α)`; that positive-definite form is implemented
//! here and checked at construction.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::constants::{DEFAULT_CHARGE_CUTOFF, TWO_LEVEL_WINDOW};
use crate::error::{Error, Result};
use crate::linalg::{self, LanczosOptions};

/// Raw circuit constants of one flux qubit.
///
/// Energies are linear frequencies in GHz (`e_c = E_c/h`, `e_j = E_J/h`);
/// flux biases are dimensionless fractions of the flux quantum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QubitCircuitParams {
    pub e_c: f64,
    pub e_j: f64,
    pub alpha: f64,
    pub beta: f64,
    pub f_z: f64,
    pub f_alpha: f64,
    #[serde(default = "default_cutoff")]
    pub charge_cutoff: usize,
    /// Use the β-junction potential exactly as printed (coefficient 1 on
    /// cos φ_β) instead of the junction-energy coefficient β. Off by default.
    #[serde(default)]
    pub literal_eq9_potential: bool,
}

fn default_cutoff() -> usize {
    DEFAULT_CHARGE_CUTOFF
}

impl QubitCircuitParams {
    pub fn new(e_c: f64, e_j: f64, alpha: f64, beta: f64, f_z: f64, f_alpha: f64) -> Result<Self> {
        let p = Self {
            e_c,
            e_j,
            alpha,
            beta,
            f_z,
            f_alpha,
            charge_cutoff: DEFAULT_CHARGE_CUTOFF,
            literal_eq9_potential: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e_c > 0.0) || !(self.e_j >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "junction energies must be positive: e_c={}, e_j={}",
                self.e_c, self.e_j
            )));
        }
        if !(self.alpha > 0.0) || !(self.beta > 0.0) {
            return Err(Error::InvalidParams(format!(
                "junction ratios must be positive: alpha={}, beta={}",
                self.alpha, self.beta
            )));
        }
        if self.charge_cutoff < 1 {
            return Err(Error::InvalidParams(
                "charge_cutoff must be at least 1".into(),
            ));
        }
        let m = self.kinetic_form();
        if !is_positive_definite(&m) {
            return Err(Error::IndefiniteKineticForm {
                alpha: self.alpha,
                beta: self.beta,
            });
        }
        Ok(())
    }

    /// Same circuit at a different main-loop bias.
    pub fn at_f_z(&self, f_z: f64) -> Self {
        Self { f_z, ..self.clone() }
    }

    /// Same circuit at a different α-loop bias.
    pub fn at_f_alpha(&self, f_alpha: f64) -> Self {
        Self { f_alpha, ..self.clone() }
    }

    pub fn with_cutoff(&self, charge_cutoff: usize) -> Self {
        Self {
            charge_cutoff,
            ..self.clone()
        }
    }

    /// Dimensionless kinetic quadratic form M such that the charging energy is
    /// `4 E_c / (α+β+2αβ) · n^T M n` for integer charges n = (n_a, n_b, n_β).
    pub fn kinetic_form(&self) -> [[f64; 3]; 3] {
        let (a, b) = (self.alpha, self.beta);
        let p = a + b + a * b;
        let q = a * b;
        let r = a;
        let s = 1.0 + 2.0 * a;
        [[p, -q, -r], [-q, p, -r], [-r, -r, s]]
    }

    fn kinetic_scale(&self) -> f64 {
        4.0 * self.e_c / (self.alpha + self.beta + 2.0 * self.alpha * self.beta)
    }

    fn basis(&self) -> ChargeBasis {
        ChargeBasis::new(self.charge_cutoff)
    }

    /// Hilbert-space dimension `(2 cutoff + 1)³`.
    pub fn dimension(&self) -> usize {
        self.basis().dim()
    }
}

fn is_positive_definite(m: &[[f64; 3]; 3]) -> bool {
    let m1 = m[0][0];
    let m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let m3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    m1 > 0.0 && m2 > 0.0 && m3 > 0.0
}

/// Index bookkeeping for the three-phase charge basis.
#[derive(Debug, Clone, Copy)]
pub struct ChargeBasis {
    pub cutoff: usize,
}

impl ChargeBasis {
    pub fn new(cutoff: usize) -> Self {
        Self { cutoff }
    }

    /// States per phase.
    pub fn per_phase(&self) -> usize {
        2 * self.cutoff + 1
    }

    pub fn dim(&self) -> usize {
        self.per_phase().pow(3)
    }

    /// Flat index of the charge triple (k, l, m), each in [-cutoff, cutoff].
    /// The β index m is fastest.
    pub fn index(&self, k: i64, l: i64, m: i64) -> usize {
        let c = self.cutoff as i64;
        let d = self.per_phase() as i64;
        (((k + c) * d + (l + c)) * d + (m + c)) as usize
    }

    pub fn charges(&self, idx: usize) -> (i64, i64, i64) {
        let c = self.cutoff as i64;
        let d = self.per_phase();
        let m = (idx % d) as i64 - c;
        let l = ((idx / d) % d) as i64 - c;
        let k = (idx / (d * d)) as i64 - c;
        (k, l, m)
    }
}

/// Matrix-free form of the qubit Hamiltonian: a real diagonal plus a fixed
/// stencil of charge hops. Shared by the dense builder and the Lanczos path.
pub struct QubitHamiltonianOp {
    basis: ChargeBasis,
    diag: Vec<f64>,
    hop_single: f64,
    hop_beta: f64,
    hop_alpha: C64,
}

impl QubitHamiltonianOp {
    pub fn new(params: &QubitCircuitParams) -> Result<Self> {
        params.validate()?;
        let basis = params.basis();
        let m = params.kinetic_form();
        let k0 = params.kinetic_scale();
        let mut diag = vec![0.0f64; basis.dim()];
        for (idx, d) in diag.iter_mut().enumerate() {
            let (k, l, mm) = basis.charges(idx);
            let n = [k as f64, l as f64, mm as f64];
            let mut acc = 0.0;
            for r in 0..3 {
                for c in 0..3 {
                    acc += n[r] * m[r][c] * n[c];
                }
            }
            *d = k0 * acc;
        }
        let beta_coeff = if params.literal_eq9_potential {
            1.0
        } else {
            params.beta
        };
        let theta0 = std::f64::consts::PI * (2.0 * params.f_z - params.f_alpha);
        let alpha_amp =
            -0.5 * params.e_j * params.alpha * (std::f64::consts::PI * params.f_alpha).cos();
        Ok(Self {
            basis,
            diag,
            hop_single: -0.5 * params.e_j,
            hop_beta: -0.5 * params.e_j * beta_coeff,
            hop_alpha: alpha_amp * C64::from_polar(1.0, theta0),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// y = H x. The raising element of each cosine carries the amplitude as
    /// stored; `⟨k+1,l+1,m+1|H|k,l,m⟩ = hop_alpha`, and the lowering elements
    /// are the conjugates.
    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        let d = self.basis.per_phase() as i64;
        let c = self.basis.cutoff as i64;
        let stride_k = (d * d) as usize;
        let stride_l = d as usize;
        for (i, yi) in y.iter_mut().enumerate() {
            let (k, l, m) = self.basis.charges(i);
            let mut acc = C64::new(self.diag[i], 0.0) * x[i];
            // cos φ_a.
            if k > -c {
                acc += self.hop_single * x[i - stride_k];
            }
            if k < c {
                acc += self.hop_single * x[i + stride_k];
            }
            // cos φ_b.
            if l > -c {
                acc += self.hop_single * x[i - stride_l];
            }
            if l < c {
                acc += self.hop_single * x[i + stride_l];
            }
            // cos φ_β.
            if m > -c {
                acc += self.hop_beta * x[i - 1];
            }
            if m < c {
                acc += self.hop_beta * x[i + 1];
            }
            // Combined α-branch term: raises or lowers all three charges.
            if k > -c && l > -c && m > -c {
                acc += self.hop_alpha * x[i - stride_k - stride_l - 1];
            }
            if k < c && l < c && m < c {
                acc += self.hop_alpha.conj() * x[i + stride_k + stride_l + 1];
            }
            *yi = acc;
        }
    }

    /// Dense Hermitian matrix over the charge basis.
    pub fn to_dense(&self) -> Array2<C64> {
        let n = self.dim();
        let d = self.basis.per_phase() as i64;
        let c = self.basis.cutoff as i64;
        let stride_k = (d * d) as usize;
        let stride_l = d as usize;
        let mut h = Array2::<C64>::zeros((n, n));
        for j in 0..n {
            let (k, l, m) = self.basis.charges(j);
            h[(j, j)] = C64::new(self.diag[j], 0.0);
            if k < c {
                h[(j + stride_k, j)] += C64::new(self.hop_single, 0.0);
                h[(j, j + stride_k)] += C64::new(self.hop_single, 0.0);
            }
            if l < c {
                h[(j + stride_l, j)] += C64::new(self.hop_single, 0.0);
                h[(j, j + stride_l)] += C64::new(self.hop_single, 0.0);
            }
            if m < c {
                h[(j + 1, j)] += C64::new(self.hop_beta, 0.0);
                h[(j, j + 1)] += C64::new(self.hop_beta, 0.0);
            }
            if k < c && l < c && m < c {
                let to = j + stride_k + stride_l + 1;
                h[(to, j)] += self.hop_alpha;
                h[(j, to)] += self.hop_alpha.conj();
            }
        }
        h
    }
}

/// Dense Hermitian matrix of the qubit Hamiltonian over the charge basis.
pub fn build_qubit_hamiltonian(params: &QubitCircuitParams) -> Result<Array2<C64>> {
    Ok(QubitHamiltonianOp::new(params)?.to_dense())
}

/// Lowest eigenpairs of the qubit Hamiltonian with the parameters that
/// produced them.
#[derive(Debug, Clone)]
pub struct QubitSpectrum {
    /// Ascending eigenvalues in GHz.
    pub energies: Vec<f64>,
    /// Matching eigenvectors as columns, gauge-fixed so the largest
    /// coefficient of each is real positive.
    pub eigenvectors: Array2<C64>,
    pub params: QubitCircuitParams,
}

impl QubitSpectrum {
    /// Eigenvector of state ξ as a column view.
    pub fn state(&self, xi: usize) -> ndarray::ArrayView1<'_, C64> {
        self.eigenvectors.column(xi)
    }

    fn checked(mut self) -> Result<Self> {
        let k = self.energies.len();
        for i in 0..k {
            let n: f64 = self.state(i).iter().map(|z| z.norm_sqr()).sum();
            if (n.sqrt() - 1.0).abs() > 1e-10 {
                return Err(Error::EigensolverFailure {
                    details: format!("eigenvector {i} has norm {} after solve", n.sqrt()),
                });
            }
            for j in (i + 1)..k {
                let ov: C64 = self
                    .state(i)
                    .iter()
                    .zip(self.state(j).iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                if ov.norm() > 1e-8 {
                    return Err(Error::EigensolverFailure {
                        details: format!("eigenvectors {i},{j} overlap by {:.3e}", ov.norm()),
                    });
                }
            }
        }
        for w in self.energies.windows(2) {
            if w[1] < w[0] {
                return Err(Error::EigensolverFailure {
                    details: "eigenvalues not sorted ascending".into(),
                });
            }
        }
        for i in 0..k {
            let mut col = self.eigenvectors.column(i).to_owned();
            linalg::fix_phase_gauge(&mut col);
            self.eigenvectors.column_mut(i).assign(&col);
        }
        Ok(self)
    }
}

/// Lowest `k` eigenpairs via the iterative solver. This is the production
/// path; [`solve_spectrum_dense`] is the reference it is gated against.
pub fn solve_spectrum(params: &QubitCircuitParams, k: usize) -> Result<QubitSpectrum> {
    let op = QubitHamiltonianOp::new(params)?;
    let dim = op.dim();
    if k == 0 || k > dim {
        return Err(Error::InvalidParams(format!(
            "requested {k} states from a {dim}-dimensional basis"
        )));
    }
    // Small problems go straight to the dense path; it is both faster and
    // free of restart bookkeeping at these sizes.
    if dim <= 1000 {
        return solve_spectrum_dense(params, k);
    }
    let out = linalg::lanczos_lowest(
        |x, y| op.apply(x, y),
        dim,
        k,
        LanczosOptions {
            max_iter: 600,
            tol: 1e-13,
        },
    )?;
    QubitSpectrum {
        energies: out.eigenvalues,
        eigenvectors: out.eigenvectors,
        params: params.clone(),
    }
    .checked()
}

/// Lowest `k` eigenpairs by full dense decomposition.
pub fn solve_spectrum_dense(params: &QubitCircuitParams, k: usize) -> Result<QubitSpectrum> {
    let op = QubitHamiltonianOp::new(params)?;
    let dim = op.dim();
    if k == 0 || k > dim {
        return Err(Error::InvalidParams(format!(
            "requested {k} states from a {dim}-dimensional basis"
        )));
    }
    let h = op.to_dense();
    let (vals, vecs) = linalg::eigh_lowest(&h, k)?;
    QubitSpectrum {
        energies: vals,
        eigenvectors: vecs,
        params: params.clone(),
    }
    .checked()
}

/// Two-level reduction of the qubit: transverse energy Δ, longitudinal energy
/// ε, and the level splitting ω_q = √(Δ² + ε²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelParams {
    pub delta: f64,
    pub epsilon: f64,
    pub omega_q: f64,
}

impl TwoLevelParams {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self> {
        if delta < 0.0 {
            return Err(Error::InvalidParams(format!(
                "delta must be non-negative, got {delta}"
            )));
        }
        Ok(Self {
            delta,
            epsilon,
            omega_q: delta.hypot(epsilon),
        })
    }
}

/// Two-level reduction with the default validity window.
///
/// Δ is half the gap at `f_z = 0.5` with the same α-loop bias; ε is the signed
/// excess of the half-gap at the requested bias, `sign(ε) = sign(f_z - 0.5)`.
pub fn extract_two_level(params: &QubitCircuitParams) -> Result<TwoLevelParams> {
    extract_two_level_with_window(params, TWO_LEVEL_WINDOW)
}

/// Two-level reduction with an explicit validity window.
pub fn extract_two_level_with_window(
    params: &QubitCircuitParams,
    window: f64,
) -> Result<TwoLevelParams> {
    if (params.f_z - 0.5).abs() > window {
        return Err(Error::OutsideTwoLevelWindow {
            f_z: params.f_z,
            window,
        });
    }
    let at_half = solve_spectrum(&params.at_f_z(0.5), 2)?;
    let delta = 0.5 * (at_half.energies[1] - at_half.energies[0]);
    let here = if params.f_z == 0.5 {
        at_half
    } else {
        solve_spectrum(params, 2)?
    };
    let half_gap = 0.5 * (here.energies[1] - here.energies[0]);
    let excess = half_gap * half_gap - delta * delta;
    let tol = 1e-9 * delta * delta + 1e-12;
    if excess < -tol {
        return Err(Error::InconsistentGap { excess });
    }
    let epsilon = (params.f_z - 0.5).signum() * excess.max(0.0).sqrt();
    let epsilon = if params.f_z == 0.5 { 0.0 } else { epsilon };
    TwoLevelParams::new(delta, epsilon)
}
