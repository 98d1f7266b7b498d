//! Foundational numeric kernel: vectors and volume forms, derivative jets,
//! one-step ODE integration, quadrature, zero localization and small dense
//! linear algebra.
//!
//! Everything here is a pure function of immutable inputs; reductions use
//! fixed summation order so results are independent of any parallel
//! schedule above.

mod config;
mod io;
mod jet4;
mod jets;
mod linalg;
mod ode;
mod table;
mod vecd;
mod zeros;

pub use config::ToleranceConfig;
pub use io::{read_curve_csv, CurveTable};
pub use jet4::Jet4;
pub use jets::{derive_jets, AnalyticCurve, CurveSource, JetCurve};
pub use linalg::{
    direction_spread, eigen_sym, fit_hyperplane, line_concurrency, solve, Hyperplane,
};
pub use ode::{integrate_scalar_ode, integrate_system};
pub use table::{
    cumulative, fd_derive, fd_derive_vec, fd_weights, interp, interp_vec, spread, sup_norm,
    uniform_grid,
};
pub use vecd::{vol2, vol3, volume_form, VecD};
pub use zeros::{identically_zero, locate_zeros, ZeroHit};
