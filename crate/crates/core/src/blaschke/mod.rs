//! Blaschke (equi-affine) apparatus of non-degenerate hypersurfaces
//! f: U in R^n -> R^{n+1} for n in {1, 2}: metric, affine normal, co-normal,
//! affine mean curvature, and affine-sphere detection.

mod curve;
mod surface;

pub use curve::{curve_apparatus, curve_apparatus_from, laplacian_curve, CurveApparatus};
pub use surface::patches;
pub use surface::{
    laplacian_patch, patch_apparatus, patch_fd, patch_fd_vec, MetricField, PatchApparatus,
    SurfacePatch, Sym2,
};

use crate::numkit::{direction_spread, line_concurrency, ToleranceConfig, VecD};

/// Either apparatus, for the operations that work uniformly in n.
pub enum BlaschkeApparatus {
    Curve(CurveApparatus),
    Patch(PatchApparatus),
}

impl BlaschkeApparatus {
    pub fn n(&self) -> usize {
        match self {
            BlaschkeApparatus::Curve(_) => 1,
            BlaschkeApparatus::Patch(_) => 2,
        }
    }

    pub fn positions(&self) -> &[VecD] {
        match self {
            BlaschkeApparatus::Curve(c) => c.curve.jets().jet(0),
            BlaschkeApparatus::Patch(p) => &p.f,
        }
    }

    pub fn xi(&self) -> &[VecD] {
        match self {
            BlaschkeApparatus::Curve(c) => &c.xi,
            BlaschkeApparatus::Patch(p) => &p.xi,
        }
    }

    pub fn conormal(&self) -> &[VecD] {
        match self {
            BlaschkeApparatus::Curve(c) => &c.conormal,
            BlaschkeApparatus::Patch(p) => &p.conormal,
        }
    }

    pub fn mean_curvature(&self) -> &[f64] {
        match self {
            BlaschkeApparatus::Curve(c) => &c.mean_curvature,
            BlaschkeApparatus::Patch(p) => &p.mean_curvature,
        }
    }
}

/// Result of the affine-sphere probe: the common point of the affine normal
/// lines when they concur.
#[derive(Debug, Clone)]
pub struct SphereCenter {
    pub center: VecD,
    pub residual: f64,
}

/// Detects proper affine spheres: least-squares concurrency point of the
/// affine normal lines {f + t xi}. Returns None for the improper case
/// (normals essentially parallel) and when the concurrency residual exceeds
/// the tolerance.
pub fn is_proper_affine_sphere(
    apparatus: &BlaschkeApparatus,
    cfg: &ToleranceConfig,
) -> Option<SphereCenter> {
    let points = apparatus.positions();
    let dirs = apparatus.xi();
    if direction_spread(dirs) < 1e-8 {
        return None; // improper: constant normal direction
    }
    match line_concurrency(points, dirs) {
        Ok((center, residual)) if residual < cfg.tol_residual => {
            Some(SphereCenter { center, residual })
        }
        _ => None,
    }
}
