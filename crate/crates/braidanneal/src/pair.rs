//! Qubit–resonator coupling constants, the resonator–qubit pair Hamiltonian,
//! and deep-strong-coupling effects.
//!
//! The longitudinal and transverse couplings are matrix elements of the
//! β-junction phase between the two lowest qubit states,
//! `g∥ ∝ ⟨Ψ1|φ_β|Ψ1⟩ − ⟨Ψ0|φ_β|Ψ0⟩` and `g⊥ ∝ ⟨Ψ0|φ_β|Ψ1⟩ + ⟨Ψ1|φ_β|Ψ0⟩`,
//! scaled by `(1/2) I_r (1/2) Φ0 / h`. Rotating by the two-level mixing angle
//! (cos η = ε/ω_q, sin η = Δ/ω_q) maps them onto the persistent-current basis
//! as (g_z, g_x).

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::circuit::{ChargeBasis, QubitSpectrum, TwoLevelParams};
use crate::constants::coupling_prefactor_ghz;
use crate::error::{Error, Result};
use crate::linalg::{self, kron};

/// LC-resonator constants: energy in GHz, rms current in nA, effective
/// inductance in nH.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonatorParams {
    pub omega_r: f64,
    pub i_r: f64,
    pub l_r: f64,
}

impl ResonatorParams {
    pub fn new(omega_r: f64, i_r: f64, l_r: f64) -> Result<Self> {
        if !(omega_r > 0.0) || !(i_r >= 0.0) || !(l_r > 0.0) {
            return Err(Error::InvalidParams(format!(
                "resonator constants must be positive: omega_r={omega_r}, i_r={i_r}, l_r={l_r}"
            )));
        }
        Ok(Self { omega_r, i_r, l_r })
    }
}

/// Coupling constants of one qubit–resonator pair in both bases, GHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCoupling {
    pub g_par: f64,
    pub g_perp: f64,
    pub g_z: f64,
    pub g_x: f64,
}

impl PairCoupling {
    /// Rotate bare couplings into the persistent-current basis and check that
    /// the rotation preserves the coupling-vector norm.
    pub fn from_bare(g_par: f64, g_perp: f64, tl: &TwoLevelParams) -> Result<Self> {
        let (g_z, g_x) = rotate_couplings(g_par, g_perp, tl)?;
        let pc = Self {
            g_par,
            g_perp,
            g_z,
            g_x,
        };
        let a = g_par * g_par + g_perp * g_perp;
        let b = g_z * g_z + g_x * g_x;
        if (a - b).abs() > 1e-10 * a.max(1e-300) {
            return Err(Error::InvalidParams(format!(
                "rotation failed to preserve coupling norm: {a} vs {b}"
            )));
        }
        Ok(pc)
    }
}

/// Matrix elements of the periodic phase operator with branch (-π, π] over a
/// single-phase charge basis: zero diagonal and
/// `⟨m|φ|m'⟩ = -i (-1)^{m'-m} / (m'-m)`.
///
/// The branch choice only shifts the operator by a state-independent constant,
/// which cancels in the diagonal difference of g∥ and is absent from the
/// off-diagonal elements of g⊥.
pub fn phase_operator_matrix(cutoff: usize) -> Array2<C64> {
    let d = 2 * cutoff + 1;
    let mut phi = Array2::<C64>::zeros((d, d));
    for row in 0..d {
        for col in 0..d {
            if row == col {
                continue;
            }
            let diff = col as i64 - row as i64;
            let sign = if diff.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            phi[(row, col)] = C64::new(0.0, -1.0) * sign / diff as f64;
        }
    }
    phi
}

/// ⟨Ψ_a| φ_β |Ψ_b⟩ with the phase operator acting on the β charge index only.
fn phase_matrix_element(
    basis: &ChargeBasis,
    phi_t: &Array2<C64>,
    bra: ndarray::ArrayView1<'_, C64>,
    ket: ndarray::ArrayView1<'_, C64>,
) -> C64 {
    let d = basis.per_phase();
    let rows = d * d;
    // The β index is fastest, so the state reshapes to (rows, d) row-major.
    let bra2 = bra.to_shape((rows, d)).expect("state length mismatch");
    let ket2 = ket.to_shape((rows, d)).expect("state length mismatch");
    let y = ket2.dot(phi_t);
    bra2.iter().zip(y.iter()).map(|(b, y)| b.conj() * y).sum()
}

/// Rotate an eigenvector into the gauge where complex conjugation combined
/// with charge reflection leaves it invariant. Matrix elements of
/// reflection-even operators between such states are real.
fn apply_t_real_gauge(basis: &ChargeBasis, v: &mut Array1<C64>) {
    let dim = basis.dim();
    let mut overlap = C64::new(0.0, 0.0);
    for idx in 0..dim {
        let (k, l, m) = basis.charges(idx);
        let refl = basis.index(-k, -l, -m);
        // ⟨v, T v⟩ with (T v)_idx = conj(v_refl).
        overlap += v[idx].conj() * v[refl].conj();
    }
    if overlap.norm() < 1e-12 {
        return;
    }
    let half = C64::from_polar(1.0, 0.5 * overlap.arg());
    v.mapv_inplace(|z| z * half);
    // Resolve the residual ± ambiguity deterministically.
    let mut best = 0usize;
    let mut best_norm = 0.0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > best_norm {
            best_norm = z.norm();
            best = i;
        }
    }
    if v[best].re < 0.0 {
        v.mapv_inplace(|z| -z);
    }
}

/// Bare coupling constants (g∥, g⊥) in GHz from the two lowest qubit states
/// and the resonator rms current.
///
/// The eigenvector phases are fixed (largest coefficient real positive, with a
/// reflection-adapted refinement when needed) so that the off-diagonal phase
/// matrix element is real; a residual imaginary part above 1e-8 GHz is an
/// error.
pub fn compute_bare_couplings(spectrum: &QubitSpectrum, res: &ResonatorParams) -> Result<(f64, f64)> {
    if spectrum.energies.len() < 2 {
        return Err(Error::InvalidParams(
            "need at least two qubit states for coupling constants".into(),
        ));
    }
    let basis = ChargeBasis::new(spectrum.params.charge_cutoff);
    let phi = phase_operator_matrix(spectrum.params.charge_cutoff);
    let phi_t = phi.t().to_owned();
    let scale = coupling_prefactor_ghz(res.i_r);

    let mut v0 = spectrum.state(0).to_owned();
    let mut v1 = spectrum.state(1).to_owned();
    let mut off = phase_matrix_element(&basis, &phi_t, v0.view(), v1.view());
    if (off.im * scale).abs() > 1e-8 {
        apply_t_real_gauge(&basis, &mut v0);
        apply_t_real_gauge(&basis, &mut v1);
        off = phase_matrix_element(&basis, &phi_t, v0.view(), v1.view());
    }
    let d0 = phase_matrix_element(&basis, &phi_t, v0.view(), v0.view());
    let d1 = phase_matrix_element(&basis, &phi_t, v1.view(), v1.view());

    let imag_residual = (off.im.abs().max(d0.im.abs()).max(d1.im.abs())) * scale;
    if imag_residual > 1e-8 {
        return Err(Error::ImaginaryCoupling {
            imag: imag_residual,
        });
    }
    let g_par = scale * (d1.re - d0.re);
    let g_perp = scale * 2.0 * off.re;
    Ok((g_par, g_perp))
}

/// Rotate bare couplings (energy eigenbasis) into the persistent-current
/// basis: with cos η = ε/ω_q and sin η = Δ/ω_q,
/// `g_z = g∥ cos η − g⊥ sin η` and `g_x = g∥ sin η + g⊥ cos η`.
pub fn rotate_couplings(g_par: f64, g_perp: f64, tl: &TwoLevelParams) -> Result<(f64, f64)> {
    if !(tl.omega_q > 0.0) {
        return Err(Error::InvalidParams(
            "rotation undefined at omega_q = 0".into(),
        ));
    }
    let cos_eta = tl.epsilon / tl.omega_q;
    let sin_eta = tl.delta / tl.omega_q;
    let g_z = g_par * cos_eta - g_perp * sin_eta;
    let g_x = g_par * sin_eta + g_perp * cos_eta;
    Ok((g_z, g_x))
}

/// Hermitian matrix of one resonator–qubit pair on (2-level qubit) ⊗ (Fock
/// space), in the qubit energy eigenbasis:
/// `H = ω_r (a†a + 1/2) + ω_q σ^{z'} + (g∥ σ^{z'} + g⊥ σ^{x'})(a† + a)`.
#[derive(Debug, Clone)]
pub struct PairHamiltonian {
    pub matrix: Array2<C64>,
    pub n_fock: usize,
    pub two_level: TwoLevelParams,
    pub resonator: ResonatorParams,
    pub coupling: PairCoupling,
}

fn sigma_z() -> Array2<C64> {
    let mut s = Array2::<C64>::zeros((2, 2));
    s[(0, 0)] = C64::new(1.0, 0.0);
    s[(1, 1)] = C64::new(-1.0, 0.0);
    s
}

fn sigma_x() -> Array2<C64> {
    let mut s = Array2::<C64>::zeros((2, 2));
    s[(0, 1)] = C64::new(1.0, 0.0);
    s[(1, 0)] = C64::new(1.0, 0.0);
    s
}

fn identity(dim: usize) -> Array2<C64> {
    Array2::<C64>::eye(dim)
}

/// Oscillator energy `ω (a†a + 1/2)` on a truncated Fock space.
fn oscillator(omega: f64, dim: usize) -> Array2<C64> {
    let mut h = Array2::<C64>::zeros((dim, dim));
    for n in 0..dim {
        h[(n, n)] = C64::new(omega * (n as f64 + 0.5), 0.0);
    }
    h
}

pub fn build_pair_hamiltonian(
    tl: &TwoLevelParams,
    res: &ResonatorParams,
    pc: &PairCoupling,
    n_fock: usize,
) -> Result<PairHamiltonian> {
    if n_fock < 2 {
        return Err(Error::InvalidParams("n_fock must be at least 2".into()));
    }
    let x = linalg::quadrature(n_fock);
    let sz = sigma_z();
    let sx = sigma_x();
    let coupling = &sz.mapv(|z| z * pc.g_par) + &sx.mapv(|z| z * pc.g_perp);
    let matrix = kron(&identity(2), &oscillator(res.omega_r, n_fock))
        + kron(&sz.mapv(|z| z * tl.omega_q), &identity(n_fock))
        + kron(&coupling, &x);
    Ok(PairHamiltonian {
        matrix,
        n_fock,
        two_level: *tl,
        resonator: *res,
        coupling: *pc,
    })
}

/// Pair Hamiltonian in the persistent-current basis with an explicitly signed
/// transverse term:
/// `H = ω_r (a†a + 1/2) + ε σ^z + δ σ^x + (g_z σ^z + g_x σ^x)(a† + a)`.
///
/// With δ = +Δ this is unitarily equivalent to [`build_pair_hamiltonian`]
/// through the two-level rotation. The annealing configuration corresponds to
/// δ = −Δ, for which the qubit ground state at ε = 0 is the symmetric
/// current superposition |+⟩ that the displaced state is built on.
pub fn pair_hamiltonian_current_basis(
    eps: f64,
    delta_signed: f64,
    g_z: f64,
    g_x: f64,
    omega_r: f64,
    n_fock: usize,
) -> Result<Array2<C64>> {
    if n_fock < 2 {
        return Err(Error::InvalidParams("n_fock must be at least 2".into()));
    }
    let x = linalg::quadrature(n_fock);
    let sz = sigma_z();
    let sx = sigma_x();
    let qubit = &sz.mapv(|z| z * eps) + &sx.mapv(|z| z * delta_signed);
    let coupling = &sz.mapv(|z| z * g_z) + &sx.mapv(|z| z * g_x);
    Ok(kron(&identity(2), &oscillator(omega_r, n_fock))
        + kron(&qubit, &identity(n_fock))
        + kron(&coupling, &x))
}

/// Transverse energy suppressed by the displaced resonator state:
/// `Δ exp[-2 (g_z/ω_r)²]`.
pub fn effective_delta(delta: f64, g_z: f64, omega_r: f64) -> f64 {
    let lam = g_z / omega_r;
    delta * (-2.0 * lam * lam).exp()
}

/// Default Fock truncation for a displacement of size g/ω, from the coherent
/// tail bound: `ceil(4 (g/ω)²) + 16`.
pub fn default_fock_truncation(g: f64, omega: f64) -> usize {
    let lam2 = (g / omega) * (g / omega);
    (4.0 * lam2).ceil() as usize + 16
}

/// Displaced pair state `|+⟩ ⊗ D(-g_z/ω_r)|n⟩` on (qubit ⊗ Fock), normalized;
/// |+⟩ is the symmetric persistent-current superposition.
pub fn displaced_state(n: usize, g_z: f64, omega_r: f64, n_fock: usize) -> Result<Array1<C64>> {
    if !(omega_r > 0.0) {
        return Err(Error::InvalidParams("omega_r must be positive".into()));
    }
    if n >= n_fock {
        return Err(Error::InvalidParams(format!(
            "photon number {n} outside truncation {n_fock}"
        )));
    }
    let lam = g_z / omega_r;
    let needed = n as f64 + 4.0 * lam * lam + 10.0;
    if (n_fock as f64) < needed {
        return Err(Error::InvalidParams(format!(
            "n_fock = {n_fock} below truncation margin {} for displacement {lam:.3}",
            needed.ceil()
        )));
    }
    let d = linalg::displacement_matrix(-lam, n_fock)?;
    let fock = d.column(n).to_owned();
    let norm_sq: f64 = fock.iter().map(|z| z.norm_sqr()).sum();
    let loss = 1.0 - norm_sq;
    if loss > 1e-8 {
        return Err(Error::TruncationLoss {
            loss,
            tol: 1e-8,
        });
    }
    let mut state = Array1::<C64>::zeros(2 * n_fock);
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2 / norm_sq.sqrt(), 0.0);
    for (i, z) in fock.iter().enumerate() {
        state[i] = amp * z; // qubit ↑ branch
        state[n_fock + i] = amp * z; // qubit ↓ branch
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{solve_spectrum, QubitCircuitParams};
    use crate::linalg::eigh_all;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn test_qubit(f_z: f64) -> QubitCircuitParams {
        QubitCircuitParams::new(5.0, 200.0, 0.75, 2.5, f_z, 0.0)
            .unwrap()
            .with_cutoff(4)
    }

    fn test_resonator() -> ResonatorParams {
        ResonatorParams::new(7.2, 41.0, 1.4).unwrap()
    }

    #[test]
    fn phase_operator_smallest_case() {
        let phi = phase_operator_matrix(1);
        assert_eq!(phi.nrows(), 3);
        for i in 0..3 {
            assert_eq!(phi[(i, i)], C64::new(0.0, 0.0));
        }
        // (m = 0, m' = 1) sits at indices (1, 2) with charges offset by the cutoff.
        assert_abs_diff_eq!(phi[(1, 2)].im, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi[(1, 2)].re, 0.0, epsilon = 1e-15);
        assert_eq!(crate::linalg::hermiticity_deficit(&phi), 0.0);
    }

    #[test]
    fn phase_operator_spectrum_approaches_branch_ends() {
        // Direct diagonalization study: the truncated operator's eigenvalues
        // stay inside (-π, π) and creep toward the branch ends as the cutoff
        // grows. Measured extremes: 0.8504π at cutoff 7, 0.9196π at 15,
        // 0.9569π at 31; the 10% band around ±π is first reached at cutoff 15.
        let mut last_hi = 0.0;
        for cutoff in [7usize, 15, 31] {
            let phi = phase_operator_matrix(cutoff);
            let (vals, _) = eigh_all(&phi).unwrap();
            let lo = vals[0];
            let hi = vals[vals.len() - 1];
            assert!(hi <= std::f64::consts::PI + 1e-12);
            assert!(lo >= -std::f64::consts::PI - 1e-12);
            assert_abs_diff_eq!(hi, -lo, epsilon = 1e-10);
            assert!(hi > last_hi, "extreme eigenvalue not monotone in cutoff");
            last_hi = hi;
        }
        let phi7 = phase_operator_matrix(7);
        let (vals7, _) = eigh_all(&phi7).unwrap();
        assert_abs_diff_eq!(
            vals7[vals7.len() - 1] / std::f64::consts::PI,
            0.8504,
            epsilon = 1e-3
        );
        assert!(last_hi >= 0.9 * std::f64::consts::PI);
    }

    #[test]
    fn zero_current_means_zero_coupling() {
        let spec = solve_spectrum(&test_qubit(0.4995), 2).unwrap();
        let res = ResonatorParams::new(7.2, 0.0, 1.4).unwrap();
        let (g_par, g_perp) = compute_bare_couplings(&spec, &res).unwrap();
        assert_eq!(g_par, 0.0);
        assert_eq!(g_perp, 0.0);
    }

    #[test]
    fn longitudinal_coupling_vanishes_at_symmetry_point() {
        let spec = solve_spectrum(&test_qubit(0.5), 2).unwrap();
        let (g_par, g_perp) = compute_bare_couplings(&spec, &test_resonator()).unwrap();
        assert!(
            g_par.abs() < 1e-6,
            "g_par = {g_par} should vanish at the degeneracy point"
        );
        assert!(g_perp.abs() > 1e-6);
    }

    #[test]
    fn bare_couplings_are_smooth_and_antisymmetric_in_bias() {
        let plus = solve_spectrum(&test_qubit(0.5005), 2).unwrap();
        let minus = solve_spectrum(&test_qubit(0.4995), 2).unwrap();
        let res = test_resonator();
        let (gp_p, _) = compute_bare_couplings(&plus, &res).unwrap();
        let (gp_m, _) = compute_bare_couplings(&minus, &res).unwrap();
        assert_abs_diff_eq!(gp_p, -gp_m, epsilon = 1e-8);
    }

    #[test]
    fn rotation_limits() {
        let tl = TwoLevelParams::new(0.0, 0.3).unwrap();
        let (g_z, g_x) = rotate_couplings(1.5, 0.7, &tl).unwrap();
        assert_abs_diff_eq!(g_z, 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(g_x, 0.7, epsilon = 1e-15);
        let tl = TwoLevelParams::new(0.0, -0.3).unwrap();
        let (g_z, g_x) = rotate_couplings(1.5, 0.7, &tl).unwrap();
        assert_abs_diff_eq!(g_z, -1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(g_x, -0.7, epsilon = 1e-15);
        let tl = TwoLevelParams::new(0.4, 0.0).unwrap();
        let (g_z, g_x) = rotate_couplings(1.5, 0.7, &tl).unwrap();
        assert_abs_diff_eq!(g_z, -0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(g_x, 1.5, epsilon = 1e-15);
        assert!(rotate_couplings(1.0, 1.0, &TwoLevelParams::new(0.0, 0.0).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn rotation_preserves_norm(
            g_par in -5.0f64..5.0,
            g_perp in -5.0f64..5.0,
            delta in 0.01f64..3.0,
            eps in -3.0f64..3.0,
        ) {
            let tl = TwoLevelParams::new(delta, eps).unwrap();
            let pc = PairCoupling::from_bare(g_par, g_perp, &tl).unwrap();
            let a = g_par * g_par + g_perp * g_perp;
            let b = pc.g_z * pc.g_z + pc.g_x * pc.g_x;
            prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
        }

        #[test]
        fn effective_delta_monotone_in_coupling(gz in 0.0f64..10.0) {
            let base = effective_delta(1.0, gz, 7.2);
            let stronger = effective_delta(1.0, gz + 0.1, 7.2);
            prop_assert!(stronger < base);
        }
    }

    #[test]
    fn primed_and_unprimed_pairs_are_isospectral() {
        let tl = TwoLevelParams::new(0.8, 0.35).unwrap();
        let res = test_resonator();
        let pc = PairCoupling::from_bare(1.1, -0.6, &tl).unwrap();
        let n_fock = 14;
        let primed = build_pair_hamiltonian(&tl, &res, &pc, n_fock).unwrap();
        let unprimed = pair_hamiltonian_current_basis(
            tl.epsilon,
            tl.delta,
            pc.g_z,
            pc.g_x,
            res.omega_r,
            n_fock,
        )
        .unwrap();
        let (e_p, _) = eigh_all(&primed.matrix).unwrap();
        let (e_u, _) = eigh_all(&unprimed).unwrap();
        for (a, b) in e_p.iter().zip(e_u.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn decoupled_pair_spectrum_is_exact() {
        let tl = TwoLevelParams::new(0.9, 0.2).unwrap();
        let res = test_resonator();
        let pc = PairCoupling {
            g_par: 0.0,
            g_perp: 0.0,
            g_z: 0.0,
            g_x: 0.0,
        };
        let n_fock = 8;
        let pair = build_pair_hamiltonian(&tl, &res, &pc, n_fock).unwrap();
        let (vals, _) = eigh_all(&pair.matrix).unwrap();
        let mut expected: Vec<f64> = (0..n_fock)
            .flat_map(|n| {
                let osc = res.omega_r * (n as f64 + 0.5);
                [osc + tl.omega_q, osc - tl.omega_q]
            })
            .collect();
        expected.sort_by(f64::total_cmp);
        for (v, e) in vals.iter().zip(expected.iter()) {
            assert_abs_diff_eq!(v, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn longitudinal_pair_matches_displaced_oscillator() {
        let tl = TwoLevelParams::new(0.9, 0.2).unwrap();
        let res = test_resonator();
        let g_par = 2.3;
        let pc = PairCoupling {
            g_par,
            g_perp: 0.0,
            g_z: 0.0,
            g_x: 0.0,
        };
        let lam = g_par / res.omega_r;
        let n_fock = (8.0 * lam * lam).ceil() as usize + 10;
        let pair = build_pair_hamiltonian(&tl, &res, &pc, n_fock).unwrap();
        let (vals, _) = eigh_all(&pair.matrix).unwrap();
        let shift = g_par * g_par / res.omega_r;
        let mut expected: Vec<f64> = (0..4)
            .flat_map(|n| {
                let osc = res.omega_r * (n as f64 + 0.5) - shift;
                [osc + tl.omega_q, osc - tl.omega_q]
            })
            .collect();
        expected.sort_by(f64::total_cmp);
        for (v, e) in vals.iter().take(6).zip(expected.iter()) {
            assert!((v - e).abs() < 1e-8, "eigenvalue {v} vs displaced {e}");
        }
    }

    #[test]
    fn pair_spectrum_converged_in_truncation() {
        let tl = TwoLevelParams::new(0.3, 0.1).unwrap();
        let res = test_resonator();
        let pc = PairCoupling::from_bare(3.0, 0.4, &tl).unwrap();
        let n = default_fock_truncation(3.0, res.omega_r);
        let small = build_pair_hamiltonian(&tl, &res, &pc, n).unwrap();
        let big = build_pair_hamiltonian(&tl, &res, &pc, 2 * n).unwrap();
        let (e_s, _) = eigh_all(&small.matrix).unwrap();
        let (e_b, _) = eigh_all(&big.matrix).unwrap();
        for i in 0..6 {
            assert!(
                (e_s[i] - e_b[i]).abs() < 1e-8,
                "level {i} moved by {} on doubling",
                (e_s[i] - e_b[i]).abs()
            );
        }
    }

    #[test]
    fn effective_delta_reference_points() {
        assert_eq!(effective_delta(0.7, 0.0, 7.2), 0.7);
        let suppressed = effective_delta(0.7, 7.2, 7.2);
        assert_abs_diff_eq!(suppressed, 0.7 * (-2.0f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn effective_delta_tracks_exact_pair_splitting() {
        // Qubit-like splitting of the exact pair against Δ e^{-2λ²} in the
        // annealing configuration (ε = 0, transverse ground state |+⟩).
        let omega = 7.2;
        let delta = 0.1;
        for lam in [0.25, 0.5, 1.0] {
            let g_z = lam * omega;
            let n_fock = default_fock_truncation(g_z, omega) + 8;
            let h = pair_hamiltonian_current_basis(0.0, -delta, g_z, 0.0, omega, n_fock).unwrap();
            let (vals, _) = eigh_all(&h).unwrap();
            let exact = 0.5 * (vals[1] - vals[0]);
            let model = effective_delta(delta, g_z, omega);
            let rel = (exact - model).abs() / model;
            assert!(
                rel < 0.15,
                "λ = {lam}: exact {exact} vs model {model} (rel {rel})"
            );
        }
    }

    #[test]
    fn displaced_state_trivial_case_is_plus_vacuum() {
        let st = displaced_state(0, 0.0, 7.2, 12).unwrap();
        let amp = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(st[0].re, amp, epsilon = 1e-14);
        assert_abs_diff_eq!(st[12].re, amp, epsilon = 1e-14);
        let rest: f64 = st
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 0 && *i != 12)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        assert!(rest < 1e-28);
    }

    #[test]
    fn displaced_vacuum_photon_distribution_is_poisson() {
        let omega = 7.2;
        let g_z = 0.9 * omega;
        let n_fock = default_fock_truncation(g_z, omega) + 10;
        let st = displaced_state(0, g_z, omega, n_fock).unwrap();
        let lam2 = (g_z / omega) * (g_z / omega);
        let mut fact = 1.0;
        for n in 0..8 {
            if n > 0 {
                fact *= n as f64;
            }
            let p_expect = (-lam2).exp() * lam2.powi(n as i32) / fact;
            // Photon n populated equally on both qubit branches.
            let p = st[n].norm_sqr() + st[n_fock + n].norm_sqr();
            assert_abs_diff_eq!(p, p_expect, epsilon = 1e-8);
        }
    }

    #[test]
    fn displaced_state_rejects_thin_truncation() {
        assert!(displaced_state(0, 7.2, 7.2, 8).is_err());
    }

    #[test]
    fn displaced_state_overlaps_pair_ground_state_at_small_displacement() {
        // At ε = 0 and Δ ≪ ω the pair ground state in the annealing
        // configuration is the displaced |+⟩ state up to the parity doublet
        // structure; for small g_z/ω the overlap is essentially complete.
        let omega = 7.2;
        let delta = 0.28; // Δ/ω ≈ 0.039
        let g_z = 0.05 * omega;
        let n_fock = 20;
        let h = pair_hamiltonian_current_basis(0.0, -delta, g_z, 0.0, omega, n_fock).unwrap();
        let (_, vecs) = eigh_all(&h).unwrap();
        let ground = vecs.column(0);
        let st = displaced_state(0, g_z, omega, n_fock).unwrap();
        let overlap: C64 = ground.iter().zip(st.iter()).map(|(a, b)| a.conj() * b).sum();
        let fidelity = overlap.norm_sqr();
        assert!(
            fidelity > 0.99,
            "fidelity {fidelity} at g_z/ω = {}",
            g_z / omega
        );
    }

    #[test]
    fn displaced_state_fidelity_follows_cat_overlap_in_deep_strong_regime() {
        // Deeper in, the exact ground state is the symmetric combination of
        // oppositely displaced branches and the product-state fidelity decays
        // to (1 + e^{-2λ²})²/4.
        let omega = 7.2;
        let delta = 0.28;
        for lam in [0.5f64, 1.0] {
            let g_z = lam * omega;
            let n_fock = default_fock_truncation(g_z, omega) + 10;
            let h = pair_hamiltonian_current_basis(0.0, -delta, g_z, 0.0, omega, n_fock).unwrap();
            let (_, vecs) = eigh_all(&h).unwrap();
            let ground = vecs.column(0);
            let st = displaced_state(0, g_z, omega, n_fock).unwrap();
            let overlap: C64 = ground.iter().zip(st.iter()).map(|(a, b)| a.conj() * b).sum();
            let fidelity = overlap.norm_sqr();
            let cat = 0.25 * (1.0 + (-2.0 * lam * lam).exp()).powi(2);
            assert!(
                (fidelity - cat).abs() < 0.03,
                "λ = {lam}: fidelity {fidelity} vs cat overlap {cat}"
            );
        }
    }

    #[test]
    fn ground_state_photon_population_matches_displacement() {
        let omega = 7.2;
        let delta = 0.2;
        let g_z = 2.0;
        let n_fock = default_fock_truncation(g_z, omega) + 10;
        let h = pair_hamiltonian_current_basis(0.0, -delta, g_z, 0.0, omega, n_fock).unwrap();
        let (_, vecs) = eigh_all(&h).unwrap();
        let ground = vecs.column(0);
        let mean_n: f64 = ground
            .iter()
            .enumerate()
            .map(|(i, z)| (i % n_fock) as f64 * z.norm_sqr())
            .sum();
        let lam2 = (g_z / omega) * (g_z / omega);
        assert!(
            (mean_n - lam2).abs() < 0.1 * lam2,
            "⟨a†a⟩ = {mean_n} vs (g_z/ω)² = {lam2}"
        );
    }
}
