//! Blaschke apparatus of non-degenerate planar curves (n = 1): after
//! reparametrizing to affine arc-length, the affine normal is f'', the
//! co-normal is the rotated tangent, and the affine mean curvature equals
//! the affine curvature.

use crate::affine_curves::{reparam_affine_planar, PlanarAffineCurve};
use crate::numkit::{fd_derive_vec, CurveSource, ToleranceConfig, VecD};
use crate::Result;

/// Blaschke data along a planar curve in affine arc-length.
pub struct CurveApparatus {
    pub curve: PlanarAffineCurve,
    pub xi: Vec<VecD>,
    pub conormal: Vec<VecD>,
    pub conormal_prime: Vec<VecD>,
    pub mean_curvature: Vec<f64>,
}

fn rot90(v: &VecD) -> VecD {
    VecD::new(vec![-v[1], v[0]])
}

pub fn curve_apparatus(
    source: &CurveSource,
    t_range: (f64, f64),
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<CurveApparatus> {
    let curve = reparam_affine_planar(source, t_range, samples, false, cfg)?;
    Ok(curve_apparatus_from(curve))
}

pub fn curve_apparatus_from(curve: PlanarAffineCurve) -> CurveApparatus {
    let n = curve.len();
    let mut xi = Vec::with_capacity(n);
    let mut conormal = Vec::with_capacity(n);
    let mut conormal_prime = Vec::with_capacity(n);
    for i in 0..n {
        // [f', f''] = 1 makes nu = J f' the exact co-normal: nu . f' = 0,
        // nu . f'' = [f', f''] = 1
        xi.push(curve.jets().jet_at(2, i).clone());
        conormal.push(rot90(curve.jets().jet_at(1, i)));
        conormal_prime.push(rot90(curve.jets().jet_at(2, i)));
    }
    CurveApparatus {
        mean_curvature: curve.rho().to_vec(),
        curve,
        xi,
        conormal,
        conormal_prime,
    }
}

/// Laplacian for the curve metric h = du^2: the plain second derivative of
/// the table.
pub fn laplacian_curve(field: &[VecD], spacing: f64, periodic: bool) -> Vec<VecD> {
    fd_derive_vec(field, spacing, 2, 5, periodic)
}
