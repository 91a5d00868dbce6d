//! Distance energies of finite point sets and lattices.
//!
//! * [`geometry`]: integer point sets, exact squared-distance histograms,
//!   energies `E_k` and the Hölder lower bound on the number of distinct distances.
//! * [`repcount`]: sieves for `r_Q(n)` and the power sums `S_k(x) = sum r(n)^k`.
//! * [`lattice`]: norm forms of imaginary quadratic fields at covolume one,
//!   pointwise energies, Müller constants and the three-direction criterion.
//! * [`zeta`]: Gamma, zeta, Dirichlet beta, Bessel `K`, Epstein zeta functions
//!   and their higher moments.
//! * [`analysis`]: log-polynomial fits and constant-ratio scans.
//!
//! Counting is exact (`u32` tables, `u64`/`u128` sums, `BigUint` energies).
//! The analytic side is generic over [`num::Real`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

// `!(x <= y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod num;
pub mod repcount;
pub mod zeta;

pub use error::{Error, Result};
pub use lattice::BinaryForm;
pub use num::Real;
pub use repcount::{FormDescriptor, RepTable};

pub type EnergyReport = geometry::EnergyReport<f64>;
pub type EpsteinEvaluation = zeta::EpsteinEvaluation<f64>;
pub type SpecialFunctionConfig = zeta::SpecialFunctionConfig<f64>;
pub type FitReport = analysis::FitReport<f64>;
pub type RatioSeries = analysis::RatioSeries<f64>;
pub type ProbeRow = zeta::ProbeRow<f64>;
