//! Equi-affine differential geometry of curves and codimension-2 submanifolds
//! contained in hypersurfaces: invariants, affine focal sets (envelopes of
//! affine normal planes), their singularities, and the co-normal construction
//! of umbilic, normally flat immersions.
//!
//! The crate is organized bottom-up:
//!
//! - [`numkit`]: vectors, volume forms, derivative jets, ODE integration,
//!   quadrature and sign-change localization.
//! - [`affine_curves`]: planar and spatial curves in affine arc-length,
//!   affine curvature, evolutes, support functions, vertex counting.
//! - [`blaschke`]: Blaschke metric, affine normal, co-normal and affine mean
//!   curvature of non-degenerate hypersurfaces (curves and surface patches).
//! - [`darboux3`]: Darboux frames of curves contained in surfaces of 3-space,
//!   the invariants sigma, rho, tau, lambda, mu, the ruled focal sheet and its
//!   singularity labels.
//! - [`umbilic`]: the co-normal construction `phi = (nu, nu.(f - O))`, its
//!   verification suite and the inverse (recovering `f` from `phi`).
//! - [`focal_n`]: bifurcation polynomials q(a, b) from frame data in general
//!   dimension, commuting/semiumbilic tests, regularity probes and closed-form
//!   fixtures (products of curves, quadric and hyperplane sections).

pub mod affine_curves;
pub mod blaschke;
pub mod darboux3;
mod error;
pub mod focal_n;
pub mod numkit;
pub mod umbilic;

pub use error::{Error, Result};
