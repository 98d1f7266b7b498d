//! Recovering the hypersurface from an umbilic, normally flat immersion:
//! writing phi = (psi, z), the defining conditions psi . (f - O) = z and
//! psi_* X . (f - O) = X(z) determine f - O by a linear solve per sample.

use super::construct::{GridShape, UmbilicImmersion};
use crate::numkit::{fd_derive_vec, solve, VecD};
use crate::{Error, Result};

/// Recovered hypersurface with the normalization certificates of the
/// converse direction.
pub struct InverseResult {
    /// f per sample, dimension n + 1.
    pub f: Vec<VecD>,
    /// sup |psi . f_* X| over interior samples: psi must annihilate the
    /// recovered tangent spaces (psi parallel to the co-normal of f).
    pub conormal_residual: f64,
    /// sup | [psi_* X_1, .., psi_* X_n, psi] + 1 | in the recovered
    /// h-orthonormal frame (the scale normalization of the converse).
    pub det_residual: f64,
}

/// Solves the per-sample linear system for f - O and verifies the co-normal
/// and determinant normalizations on the recovered data.
pub fn inverse_construction(
    n: usize,
    shape: &GridShape,
    phi: &[VecD],
    dphi: &[Vec<VecD>],
    origin: &VecD,
) -> Result<InverseResult> {
    let dim = n + 1;
    if phi[0].dim() != n + 2 {
        return Err(Error::DimensionMismatch { expected: n + 2, got: phi[0].dim() });
    }
    let m = phi.len();
    let mut f: Vec<VecD> = Vec::with_capacity(m);
    for k in 0..m {
        // rows: psi, psi_{u_1}, .., psi_{u_n}; rhs: z, z_{u_1}, ..
        let mut a: Vec<Vec<f64>> = Vec::with_capacity(dim);
        let mut rhs: Vec<f64> = Vec::with_capacity(dim);
        a.push((0..dim).map(|c| phi[k][c]).collect());
        rhs.push(phi[k][dim]);
        for axis in dphi.iter().take(n) {
            a.push((0..dim).map(|c| axis[k][c]).collect());
            rhs.push(axis[k][dim]);
        }
        // scale-aware singularity guard: rows of nearly-constant psi vanish
        for row in &a[1..] {
            let norm: f64 = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-10 {
                return Err(Error::SingularSystem { index: k });
            }
        }
        let rel = solve(a, rhs).map_err(|_| Error::SingularSystem { index: k })?;
        f.push(&VecD::new(rel) + origin);
    }

    // derivatives of the recovered surface for the certificates
    let f_axes: Vec<Vec<VecD>> = if shape.is_curve() {
        vec![fd_derive_vec(&f, shape.hu, 1, 5, shape.periodic)]
    } else {
        vec![
            crate::blaschke::patch_fd_vec(
                &f, shape.nu, shape.nv, shape.hu, shape.hv, 1, 0, shape.periodic,
            ),
            crate::blaschke::patch_fd_vec(
                &f, shape.nu, shape.nv, shape.hu, shape.hv, 0, 1, shape.periodic,
            ),
        ]
    };

    let mut conormal_residual = 0.0_f64;
    let mut dets = Vec::with_capacity(m);
    for k in 0..m {
        if !shape.interior(k) {
            continue;
        }
        let psi = phi[k].truncate(dim);
        let psi_axes: Vec<VecD> = dphi.iter().map(|axis| axis[k].truncate(dim)).collect();
        for fa in &f_axes {
            conormal_residual = conormal_residual.max(psi.dot(&fa[k]).abs());
        }
        // induced metric h2(X, Y) = -psi_* Y . f_* X, orthonormalized
        if n == 1 {
            let h11 = -psi_axes[0].dot(&f_axes[0][k]);
            if h11 <= 0.0 {
                continue;
            }
            let x1 = psi_axes[0].scale(1.0 / h11.sqrt());
            dets.push(crate::numkit::volume_form(&[x1, psi.clone()])?);
        } else {
            let h11 = -psi_axes[0].dot(&f_axes[0][k]);
            let h12 = -0.5
                * (psi_axes[0].dot(&f_axes[1][k]) + psi_axes[1].dot(&f_axes[0][k]));
            let h22 = -psi_axes[1].dot(&f_axes[1][k]);
            if h11 <= 0.0 || h22 - h12 * h12 / h11 <= 0.0 {
                continue;
            }
            let x1 = psi_axes[0].scale(1.0 / h11.sqrt());
            let x2 = psi_axes[1]
                .axpy(-h12 / h11, &psi_axes[0])
                .scale(1.0 / (h22 - h12 * h12 / h11).sqrt());
            dets.push(crate::numkit::volume_form(&[x1, x2, psi.clone()])?);
        }
    }
    let det_residual = if dets.is_empty() {
        f64::INFINITY
    } else {
        let flip = if dets[0] > 0.0 { -1.0 } else { 1.0 };
        dets.iter()
            .fold(0.0_f64, |acc, d| acc.max((flip * d + 1.0).abs()))
    };

    Ok(InverseResult { f, conormal_residual, det_residual })
}

/// Convenience entry: invert a constructed immersion directly.
pub fn invert_immersion(immersion: &UmbilicImmersion, origin: &VecD) -> Result<InverseResult> {
    inverse_construction(
        immersion.n,
        &immersion.shape,
        &immersion.phi,
        &immersion.dphi,
        origin,
    )
}

/// Builds first-derivative tables for a bare phi table (CSV input path).
pub fn derivatives_from_table(shape: &GridShape, phi: &[VecD]) -> Vec<Vec<VecD>> {
    if shape.is_curve() {
        vec![fd_derive_vec(phi, shape.hu, 1, 5, shape.periodic)]
    } else {
        vec![
            crate::blaschke::patch_fd_vec(
                phi, shape.nu, shape.nv, shape.hu, shape.hv, 1, 0, shape.periodic,
            ),
            crate::blaschke::patch_fd_vec(
                phi, shape.nu, shape.nv, shape.hu, shape.hv, 0, 1, shape.periodic,
            ),
        ]
    }
}
