//! Numerical toolkit for a fully coupled flux-qubit quantum annealer in which
//! the qubits interact through a braided network of LC resonators operated in
//! the deep-strong-coupling regime.
//!
//! The crate is organised along the physical pipeline:
//!
//! * [`circuit`] — three-phase flux-qubit Hamiltonian in a truncated charge
//!   basis, spectra, and the two-level reduction (Δ, ε).
//! * [`pair`] — qubit–resonator coupling constants, the qubit–resonator pair
//!   Hamiltonian, and deep-strong-coupling effects (displaced states,
//!   suppression of the transverse energy).
//! * [`network`] — the resonator coupling matrix, effective qubit–qubit
//!   couplings J, closed forms for two resonators, and the inverse map that
//!   embeds a target Ising problem as coupler settings.
//! * [`verify`] — exact diagonalization of the full qubit⊗resonator system,
//!   the conditional-displacement unitary, and the ZZ-splitting oracle that
//!   pins the convention factor used by [`network`].
//! * [`ising`] — normalized Ising problem instances and the brute-force
//!   ground-state oracle.
//! * [`annealing`] — the time-dependent spin Hamiltonian, schedules, state
//!   evolution, and hardware-derived annealing paths.
//!
//! Units: energies are linear frequencies in GHz (values quoted as E/h), and
//! times are dimensionless multiples of 1/GHz, so propagation phases are
//! `E * t` with no extra 2π.

pub mod annealing;
pub mod circuit;
pub mod constants;
pub mod error;
pub mod ising;
pub mod linalg;
pub mod network;
pub mod pair;
pub mod verify;

mod book;

pub use error::{Error, Result};
