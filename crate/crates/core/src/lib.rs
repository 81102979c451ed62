//! Quantum-state discrimination and polarization toolkit for two-mode
//! photonic states on a truncated Fock space.
//!
//! The crate computes:
//!
//! - the s-overlap Q_s = Tr(ρ̂^s ζ̂^{1-s}), its minimum over s ∈ [0,1], and
//!   the quantum Chernoff bound ξ_QCB = -ln min_s Q_s;
//! - the k-copy minimal error probability of discriminating two equiprobable
//!   states, P_min^(k) = ½(1 - ½‖ρ̂^⊗k - ζ̂^⊗k‖₁);
//! - the Chernoff quantum degree of polarization, a max–min optimization of
//!   the s-overlap against the set of unpolarized states;
//! - concurrence for three-photon Bell-diagonal states, with a general
//!   two-qubit Wootters implementation as an independent cross-check;
//! - parameter sweeps and crossing points comparing concurrence against the
//!   degree of polarization for the Werner and x-parametrized families.
//!
//! Everything is organized around [`fock::SectorOperator`], a block storage
//! scheme that exploits photon-number conservation of all operators involved.

pub mod discrimination;
pub mod entanglement;
pub mod fock;
pub mod polarization;
pub mod search;
pub mod states;
pub mod sweep;

pub use discrimination::SOverlapResult;
pub use fock::{EulerAngles, FockBasis, SectorOperator, SectorVector};
pub use polarization::PolarizationResult;
pub use states::{BellDiagonalParams, DensityOperator, StateSpec, UnpolarizedSpec};
pub use sweep::{CrossingResult, Family, SweepRecord};
