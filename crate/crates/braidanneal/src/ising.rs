//! Normalized Ising problem instances and the brute-force ground-state oracle.
//!
//! Spin configurations are encoded as bitmasks: bit `i` set means spin `i`
//! points down (σ_i = −1), so index 0 is the all-up configuration.

use ndarray::Array2;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A problem instance with normalized fields `ε̃_i` and couplings `J̃_ij`,
/// both bounded to [-1, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingProblem {
    pub eps_tilde: Vec<f64>,
    pub j_tilde: Array2<f64>,
}

impl IsingProblem {
    pub fn new(eps_tilde: Vec<f64>, j_tilde: Array2<f64>) -> Result<Self> {
        let n = eps_tilde.len();
        if j_tilde.nrows() != n || j_tilde.ncols() != n {
            return Err(Error::InvalidParams(format!(
                "coupling matrix is {}x{} for {} spins",
                j_tilde.nrows(),
                j_tilde.ncols(),
                n
            )));
        }
        for (i, e) in eps_tilde.iter().enumerate() {
            if !(-1.0..=1.0).contains(e) {
                return Err(Error::InvalidParams(format!(
                    "eps_tilde[{i}] = {e} outside [-1, 1]"
                )));
            }
        }
        for i in 0..n {
            if j_tilde[(i, i)] != 0.0 {
                return Err(Error::InvalidParams(format!(
                    "J_tilde[{i},{i}] must be zero"
                )));
            }
            for j in 0..n {
                let v = j_tilde[(i, j)];
                if !(-1.0..=1.0).contains(&v) {
                    return Err(Error::InvalidParams(format!(
                        "J_tilde[{i},{j}] = {v} outside [-1, 1]"
                    )));
                }
                if (v - j_tilde[(j, i)]).abs() > 1e-14 {
                    return Err(Error::InvalidParams(format!(
                        "J_tilde not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { eps_tilde, j_tilde })
    }

    pub fn n(&self) -> usize {
        self.eps_tilde.len()
    }

    /// Random instance with entries uniform in [-1, 1].
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let eps_tilde: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let mut j_tilde = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            for j in (i + 1)..n {
                let v: f64 = rng.random_range(-1.0..=1.0);
                j_tilde[(i, j)] = v;
                j_tilde[(j, i)] = v;
            }
        }
        Self { eps_tilde, j_tilde }
    }

    /// σ_i of configuration `config` (bit i set ⇒ σ_i = −1).
    #[inline]
    pub fn spin(config: u32, i: usize) -> f64 {
        if config & (1 << i) == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Classical energy `Σ_i ε̃_i σ_i + Σ_{i<j} J̃_ij σ_i σ_j`.
    pub fn energy(&self, config: u32) -> f64 {
        let n = self.n();
        let mut e = 0.0;
        for i in 0..n {
            let si = Self::spin(config, i);
            e += self.eps_tilde[i] * si;
            for j in (i + 1)..n {
                e += self.j_tilde[(i, j)] * si * Self::spin(config, j);
            }
        }
        e
    }
}

/// Exhaustive ground-state enumeration: all minimizing configurations and
/// their energy. Degeneracies within a relative tolerance of 1e-9 are kept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub configs: Vec<u32>,
    pub energy: f64,
}

pub fn brute_force_ground_state(p: &IsingProblem) -> Result<GroundTruth> {
    let n = p.n();
    if n == 0 || n > 20 {
        return Err(Error::InvalidParams(format!(
            "brute force limited to 1..=20 spins, got {n}"
        )));
    }
    let total = 1u32 << n;
    let mut energy = f64::INFINITY;
    let mut energies = Vec::with_capacity(total as usize);
    for config in 0..total {
        let e = p.energy(config);
        energies.push(e);
        if e < energy {
            energy = e;
        }
    }
    let tol = 1e-9 * energy.abs().max(1.0);
    let configs = (0..total)
        .filter(|&c| energies[c as usize] <= energy + tol)
        .collect();
    Ok(GroundTruth { configs, energy })
}
