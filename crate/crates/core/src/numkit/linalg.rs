//! Small dense linear algebra: pivoted solves, symmetric eigendecomposition
//! by Jacobi rotations, hyperplane fitting and line concurrency. Everything
//! here operates on the low-dimensional (d <= 6) systems of the pipelines.

use super::vecd::VecD;
use crate::{Error, Result};

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// `a` is row-major, consumed as scratch.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        let _ = i;
    }
    for k in 0..n {
        let (mut pivot, mut pi) = (a[k][k].abs(), k);
        for i in k + 1..n {
            if a[i][k].abs() > pivot {
                pivot = a[i][k].abs();
                pi = i;
            }
        }
        if pivot < 1e-300 {
            return Err(Error::SingularSystem { index: k });
        }
        a.swap(k, pi);
        b.swap(k, pi);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = b[k];
        for j in k + 1..n {
            s -= a[k][j] * x[j];
        }
        x[k] = s / a[k][k];
    }
    Ok(x)
}

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations. Returns (eigenvalues, eigenvectors as columns), ascending.
pub fn eigen_sym(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let eigenvectors: Vec<Vec<f64>> = (0..n)
        .map(|r| order.iter().map(|&c| v[r][c]).collect())
        .collect();
    (eigenvalues, eigenvectors)
}

/// An affine hyperplane {x : normal . x = offset} with unit normal.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    pub normal: VecD,
    pub offset: f64,
}

impl Hyperplane {
    pub fn signed_distance(&self, p: &VecD) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Best-fit hyperplane through a point cloud (total least squares: centroid
/// plus the smallest principal direction of the scatter). Returns the plane
/// and the largest absolute deviation of any sample.
pub fn fit_hyperplane(points: &[VecD]) -> (Hyperplane, f64) {
    let d = points[0].dim();
    let n = points.len() as f64;
    let mut centroid = VecD::zeros(d);
    for p in points {
        centroid = &centroid + p;
    }
    centroid = centroid.scale(1.0 / n);
    let mut cov = vec![vec![0.0; d]; d];
    for p in points {
        let q = p - &centroid;
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += q[i] * q[j];
            }
        }
    }
    let (_, vecs) = eigen_sym(cov);
    let normal = VecD::new((0..d).map(|r| vecs[r][0]).collect()).normalized();
    let plane = Hyperplane { offset: normal.dot(&centroid), normal };
    let worst = points
        .iter()
        .fold(0.0_f64, |m, p| m.max(plane.signed_distance(p).abs()));
    (plane, worst)
}

/// Least-squares concurrency point of a family of lines {p_i + t d_i}.
/// Returns the point and the largest distance from it to any line, or an
/// error when the normal system is singular (parallel directions).
pub fn line_concurrency(points: &[VecD], dirs: &[VecD]) -> Result<(VecD, f64)> {
    let d = points[0].dim();
    let mut m = vec![vec![0.0; d]; d];
    let mut rhs = vec![0.0; d];
    for (p, dir) in points.iter().zip(dirs) {
        let u = dir.normalized();
        // projector I - u u^T
        for i in 0..d {
            for j in 0..d {
                let pij = (if i == j { 1.0 } else { 0.0 }) - u[i] * u[j];
                m[i][j] += pij;
                rhs[i] += pij * p[j];
            }
        }
    }
    // scale-aware singularity guard before solving
    let trace: f64 = (0..d).map(|i| m[i][i]).sum();
    let x = solve(m, rhs).map_err(|_| Error::SingularSystem { index: 0 })?;
    if !x.iter().all(|v| v.is_finite()) || trace < 1e-12 {
        return Err(Error::SingularSystem { index: 0 });
    }
    let x = VecD::new(x);
    let mut worst = 0.0_f64;
    for (p, dir) in points.iter().zip(dirs) {
        let u = dir.normalized();
        let q = &x - p;
        let along = q.dot(&u);
        worst = worst.max((q.axpy(-along, &u)).norm());
    }
    Ok((x, worst))
}

/// Largest angle (radians) between any direction and the first one; small
/// values mean the family is essentially parallel.
pub fn direction_spread(dirs: &[VecD]) -> f64 {
    let u0 = dirs[0].normalized();
    dirs.iter()
        .map(|d| {
            let u = d.normalized();
            u.dot(&u0).abs().clamp(-1.0, 1.0).acos()
        })
        .fold(0.0_f64, f64::max)
}
