//! Dense and iterative Hermitian eigensolvers plus small matrix utilities
//! shared across the physics modules.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest absolute entry of a complex matrix.
pub fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Largest absolute deviation from Hermiticity.
pub fn hermiticity_deficit(m: &Array2<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Full Hermitian eigendecomposition, eigenvalues ascending, eigenvectors as
/// columns so that `H v_j = λ_j v_j` and `H = V Λ V†`.
///
/// The backend hands back the complex conjugates of the eigenvectors (a
/// row-major/column-major artifact of the LAPACK binding); the conjugation
/// here restores the standard convention, pinned by a regression test.
pub fn eigh_all(h: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    h.eigh(UPLO::Lower)
        .map(|(vals, vecs)| (vals, vecs.mapv(|z| z.conj())))
        .map_err(|e| Error::Backend(format!("zheev failed: {e}")))
}

/// Lowest `k` eigenpairs by dense decomposition. Eigenvectors are returned as
/// the columns of the second element.
pub fn eigh_lowest(h: &Array2<C64>, k: usize) -> Result<(Vec<f64>, Array2<C64>)> {
    let (vals, vecs) = eigh_all(h)?;
    let dim = h.nrows();
    let k = k.min(dim);
    let mut out_vecs = Array2::<C64>::zeros((dim, k));
    for j in 0..k {
        out_vecs.column_mut(j).assign(&vecs.column(j));
    }
    Ok((vals.iter().take(k).copied().collect(), out_vecs))
}

/// Rotate the global phase of a state vector so its largest-magnitude
/// coefficient is real and positive.
pub fn fix_phase_gauge(v: &mut Array1<C64>) {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best_norm {
            best_norm = n;
            best = i;
        }
    }
    if best_norm == 0.0 {
        return;
    }
    let phase = v[best] / C64::new(best_norm, 0.0);
    let rot = phase.conj();
    v.mapv_inplace(|z| z * rot);
}

/// Options for the iterative lowest-eigenpair solver.
#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    pub max_iter: usize,
    /// Relative residual tolerance on each requested Ritz pair.
    pub tol: f64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_iter: 800,
            tol: 1e-12,
        }
    }
}

/// Result of a Lanczos run: lowest eigenvalues (ascending), matching Ritz
/// vectors as columns, and the Krylov dimension that was needed.
pub struct LanczosOutput {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Array2<C64>,
    pub iterations: usize,
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Deterministic pseudo-random start vector (splitmix64 stream).
fn seeded_vector(dim: usize, seed: u64) -> Vec<C64> {
    let mut state = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let mut v: Vec<C64> = (0..dim)
        .map(|_| {
            let re = (next() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            let im = (next() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            C64::new(re, im)
        })
        .collect();
    let n = norm(&v);
    v.iter_mut().for_each(|z| *z /= n);
    v
}

/// Lanczos with full reorthogonalization for the lowest `k` eigenpairs of a
/// Hermitian operator given as a matrix-free application `apply(x, y)` with
/// `y = H x`.
///
/// The production path for large charge-basis Hamiltonians; a smoke test gates
/// it against the dense decomposition to 1e-9.
pub fn lanczos_lowest<F>(
    apply: F,
    dim: usize,
    k: usize,
    opts: LanczosOptions,
) -> Result<LanczosOutput>
where
    F: Fn(&[C64], &mut [C64]),
{
    if k == 0 || k > dim {
        return Err(Error::InvalidParams(format!(
            "requested {k} eigenpairs from a {dim}-dimensional space"
        )));
    }
    let max_iter = opts.max_iter.min(dim);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(max_iter);
    let mut alphas: Vec<f64> = Vec::with_capacity(max_iter);
    let mut betas: Vec<f64> = Vec::with_capacity(max_iter);

    basis.push(seeded_vector(dim, 0x5eed_1234));
    let mut w = vec![C64::new(0.0, 0.0); dim];
    let mut restarts = 0usize;

    for m in 0..max_iter {
        let v = basis[m].clone();
        apply(&v, &mut w);
        let alpha = dot(&v, &w).re;
        alphas.push(alpha);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= alpha * vi;
        }
        if m > 0 {
            let beta_prev = betas[m - 1];
            for (wi, vi) in w.iter_mut().zip(&basis[m - 1]) {
                *wi -= beta_prev * vi;
            }
        }
        // Two passes of classical Gram-Schmidt against the whole basis keep
        // the Krylov vectors orthogonal to machine precision.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let beta = norm(&w);

        // Check convergence on the current tridiagonal projection.
        let j = alphas.len();
        if j >= k + 2 || j == dim {
            let (theta, y) = tridiag_eigh(&alphas, &betas)?;
            let scale = theta.iter().fold(1.0f64, |a, t| a.max(t.abs()));
            let converged = (0..k).all(|i| {
                let bound = beta * y[(j - 1, i)].norm();
                bound <= opts.tol * scale
            });
            if converged || j == dim {
                let mut vals = Vec::with_capacity(k);
                let mut vecs = Array2::<C64>::zeros((dim, k));
                for i in 0..k {
                    vals.push(theta[i]);
                    let mut col = vecs.column_mut(i);
                    for (l, b) in basis.iter().enumerate() {
                        let c = y[(l, i)];
                        for (ci, bi) in col.iter_mut().zip(b) {
                            *ci += c * bi;
                        }
                    }
                }
                for i in 0..k {
                    let n = vecs.column(i).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    vecs.column_mut(i).mapv_inplace(|z| z / n);
                }
                return Ok(LanczosOutput {
                    eigenvalues: vals,
                    eigenvectors: vecs,
                    iterations: j,
                });
            }
        }

        if beta < 1e-13 {
            // Invariant subspace found; restart with a fresh direction.
            restarts += 1;
            if restarts > 4 {
                return Err(Error::EigensolverFailure {
                    details: format!(
                        "repeated Krylov breakdown after {} iterations ({} restarts)",
                        m + 1,
                        restarts
                    ),
                });
            }
            let mut fresh = seeded_vector(dim, 0xabcd_ef01 + restarts as u64);
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &fresh);
                    for (fi, bi) in fresh.iter_mut().zip(b) {
                        *fi -= c * bi;
                    }
                }
            }
            let n = norm(&fresh);
            fresh.iter_mut().for_each(|z| *z /= n);
            betas.push(0.0);
            basis.push(fresh);
        } else {
            w.iter_mut().for_each(|z| *z /= beta);
            betas.push(beta);
            basis.push(w.clone());
        }
    }

    Err(Error::EigensolverFailure {
        details: format!(
            "no convergence for {k} pairs after {max_iter} iterations (tol {:.1e}); \
             last off-diagonal {:.3e}",
            opts.tol,
            betas.last().copied().unwrap_or(f64::NAN)
        ),
    })
}

/// Eigendecomposition of the real symmetric tridiagonal Lanczos projection.
fn tridiag_eigh(alphas: &[f64], betas: &[f64]) -> Result<(Vec<f64>, Array2<C64>)> {
    let j = alphas.len();
    let mut t = Array2::<C64>::zeros((j, j));
    for (i, a) in alphas.iter().enumerate() {
        t[(i, i)] = C64::new(*a, 0.0);
        if i + 1 < j {
            t[(i, i + 1)] = C64::new(betas[i], 0.0);
            t[(i + 1, i)] = C64::new(betas[i], 0.0);
        }
    }
    let (vals, vecs) = eigh_all(&t)?;
    Ok((vals.to_vec(), vecs))
}

/// Kronecker product of complex matrices.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    ndarray::linalg::kron(a, b)
}

/// Truncated annihilation operator on `dim` Fock states.
pub fn annihilation(dim: usize) -> Array2<C64> {
    let mut a = Array2::<C64>::zeros((dim, dim));
    for n in 1..dim {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// `a† + a` on `dim` Fock states.
pub fn quadrature(dim: usize) -> Array2<C64> {
    let mut x = Array2::<C64>::zeros((dim, dim));
    for n in 1..dim {
        let s = C64::new((n as f64).sqrt(), 0.0);
        x[(n - 1, n)] = s;
        x[(n, n - 1)] = s;
    }
    x
}

/// Matrix exponential of an anti-Hermitian matrix, computed exactly through
/// the eigendecomposition of `iA`. The result is unitary to rounding.
pub fn expm_antihermitian(a: &Array2<C64>) -> Result<Array2<C64>> {
    let dim = a.nrows();
    let i = C64::new(0.0, 1.0);
    let mut h = a.mapv(|z| z * i);
    let deficit = hermiticity_deficit(&h);
    if deficit > 1e-10 * (1.0 + max_abs(&h)) {
        return Err(Error::InvalidParams(format!(
            "generator is not anti-Hermitian (deficit {deficit:.3e})"
        )));
    }
    // Symmetrize away rounding before the decomposition.
    for r in 0..dim {
        for c in (r + 1)..dim {
            let avg = 0.5 * (h[(r, c)] + h[(c, r)].conj());
            h[(r, c)] = avg;
            h[(c, r)] = avg.conj();
        }
        h[(r, r)] = C64::new(h[(r, r)].re, 0.0);
    }
    let (vals, vecs) = eigh_all(&h)?;
    // exp(A) = exp(-i (iA)) = V diag(e^{-i λ}) V†.
    let mut phased = vecs.clone();
    for (j, lam) in vals.iter().enumerate() {
        let phase = C64::from_polar(1.0, -lam);
        phased.column_mut(j).mapv_inplace(|z| z * phase);
    }
    Ok(phased.dot(&vecs.mapv(|z| z.conj()).t()))
}

/// Matrix elements `⟨m| exp(β (a† − a)) |n⟩` of a single-mode displacement,
/// evaluated in a padded Fock space and cropped to `dim` so that the returned
/// block matches the infinite-dimensional operator up to the coherent tail.
pub fn displacement_matrix(beta: f64, dim: usize) -> Result<Array2<C64>> {
    let margin = (4.0 * beta * beta + 8.0 * beta.abs() + 16.0).ceil() as usize;
    let padded = dim + margin;
    let mut gen = Array2::<C64>::zeros((padded, padded));
    for n in 1..padded {
        let s = (n as f64).sqrt() * beta;
        gen[(n, n - 1)] = C64::new(s, 0.0); // β a†
        gen[(n - 1, n)] = C64::new(-s, 0.0); // -β a
    }
    let u = expm_antihermitian(&gen)?;
    Ok(u.slice(ndarray::s![..dim, ..dim]).to_owned())
}
