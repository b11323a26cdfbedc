//! Numerical laboratory for quasiperiodic lattice operators.
//!
//! The crate builds one-dimensional tight-binding operators with a
//! quasiperiodically sampled potential, together with their dual
//! convolution-plus-cosine family on `Z^d`, and provides exact windowed
//! dynamics on top of dense Hermitian eigendecompositions. On that base it
//! implements
//!
//! * the unitary duality transform between the two operator families,
//!   realized on Fourier coefficients so the intertwining identity can be
//!   checked to machine precision ([`duality`]),
//! * time-averaged (Cesàro) velocity operators in closed form, including
//!   their infinite-time diagonal truncation ([`spectral`]),
//! * phase-averaged localization kernels with exponential-decay fits, tail
//!   scans, and ballistic-transport measurements ([`transport`]),
//! * continued fractions, growth-exponent proxies, and Diophantine
//!   certification for frequencies ([`frequency`]).
//!
//! All operations are pure functions of their inputs; every public type is
//! `Send + Sync` and safe to share across parallel parameter sweeps.
//! Averages over sample lists use pairwise summation so results do not
//! depend on evaluation order.

// Force linkage of the system BLAS/LAPACK backend used by `eigh` and the
// `ndarray` matrix products.
extern crate openblas_src;

pub mod duality;
mod eigh;
pub mod error;
pub mod frequency;
pub mod lattice;
pub mod numerics;
pub mod spectral;
pub mod transport;

pub use error::{Error, Result};
pub use frequency::{ContinuedFraction, DiophantineCertificate};
pub use lattice::{
    FrequencyVector, OperatorKind, TrigPotential, Window1d, WindowNd, WindowedOperator,
};
pub use spectral::{CesaroVelocity, EigenSystem, TimeHorizon};
pub use transport::{ConvergenceReport, EdlKernel, TailBoundReport};
