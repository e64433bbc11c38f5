//! Correlation locking in bipartite quantum states.
//!
//! This crate builds the locking states in which a short classical message
//! unlocks a disproportionately large amount of classical correlation,
//! measures that correlation by optimizing over local measurements, and
//! verifies the inequalities that bound the effect.
//!
//! Modules:
//! - [`qmath`]: density-matrix algebra — entropies, distances, partial
//!   traces, measurement statistics.
//! - [`mub`]: finite fields, generalized Pauli operators, mutually unbiased
//!   bases, and the commuting operator classes for prime-power dimensions.
//! - [`states`]: the locking family, the unlocked post-message state, and
//!   related reference states.
//! - [`infomeasure`]: classical/accessible/quantum mutual information —
//!   POVM optimizers producing certified lower bounds plus entropic and
//!   Holevo upper bounds.
//! - [`bounds`]: evaluators and checkers for every inequality involved
//!   (locking bounds, product-distance lemma, Fannes, Pinsker).
//! - [`io`]: the JSON matrix/ensemble formats and deterministic float
//!   formatting shared by the CLI and the browser demo.

pub mod bounds;
pub mod infomeasure;
pub mod io;
pub mod mub;
pub mod qmath;
pub mod sample;
pub mod states;

pub use infomeasure::{CertificateKind, OptResult, OptimizerConfig};
pub use qmath::{CMat, CVec, DensityMatrix, Ensemble, JointDistribution, Povm};
pub use states::LockingInstance;
