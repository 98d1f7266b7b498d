use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::{Error, Result};

/// A point or vector of the affine d-space, d fixed at construction.
///
/// Arithmetic between mismatched dimensions panics in debug builds; the
/// fallible entry points of the crate validate dimensions up front.
#[derive(Debug, Clone, PartialEq)]
pub struct VecD {
    data: Vec<f64>,
}

impl VecD {
    pub fn new(data: Vec<f64>) -> Self {
        VecD { data }
    }

    pub fn zeros(dim: usize) -> Self {
        VecD { data: vec![0.0; dim] }
    }

    /// Standard basis vector e_i of the given dimension.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn dot(&self, other: &VecD) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, c: f64) -> VecD {
        VecD::new(self.data.iter().map(|x| c * x).collect())
    }

    /// self + c * other, without intermediate allocation churn.
    pub fn axpy(&self, c: f64, other: &VecD) -> VecD {
        debug_assert_eq!(self.dim(), other.dim());
        VecD::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    /// Cross product, dimension 3 only.
    pub fn cross3(&self, other: &VecD) -> VecD {
        debug_assert_eq!(self.dim(), 3);
        debug_assert_eq!(other.dim(), 3);
        let a = &self.data;
        let b = &other.data;
        VecD::new(vec![
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn normalized(&self) -> VecD {
        self.scale(1.0 / self.norm())
    }

    /// Euclidean distance to another point.
    pub fn dist(&self, other: &VecD) -> f64 {
        (self - other).norm()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    /// Concatenate two vectors (used to assemble product-space points).
    pub fn concat(&self, other: &VecD) -> VecD {
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        VecD::new(data)
    }

    /// Append one more coordinate.
    pub fn concat_scalar(&self, last: f64) -> VecD {
        let mut data = self.data.clone();
        data.push(last);
        VecD::new(data)
    }

    /// First `k` coordinates as a new vector.
    pub fn truncate(&self, k: usize) -> VecD {
        VecD::new(self.data[..k].to_vec())
    }
}

impl Index<usize> for VecD {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for VecD {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.data[i]
    }
}

impl From<&[f64]> for VecD {
    fn from(s: &[f64]) -> Self {
        VecD::new(s.to_vec())
    }
}

impl Add for &VecD {
    type Output = VecD;
    fn add(self, rhs: &VecD) -> VecD {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &VecD {
    type Output = VecD;
    fn sub(self, rhs: &VecD) -> VecD {
        self.axpy(-1.0, rhs)
    }
}

impl Mul<f64> for &VecD {
    type Output = VecD;
    fn mul(self, c: f64) -> VecD {
        self.scale(c)
    }
}

impl Neg for &VecD {
    type Output = VecD;
    fn neg(self) -> VecD {
        self.scale(-1.0)
    }
}

/// Canonical volume form of the d-space: the determinant of the matrix whose
/// columns are the given vectors. Multilinear and alternating in its
/// arguments.
///
/// Requires exactly d vectors of dimension d.
pub fn volume_form(vectors: &[VecD]) -> Result<f64> {
    let d = vectors.len();
    for v in vectors {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.dim(),
            });
        }
    }
    Ok(match d {
        0 => 1.0,
        1 => vectors[0][0],
        2 => det2(vectors),
        3 => det3(vectors),
        4 => det4(vectors),
        _ => det_lu(vectors),
    })
}

/// Planar volume form [a, b] = a_x b_y - a_y b_x.
pub fn vol2(a: &VecD, b: &VecD) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Spatial volume form [a, b, c].
pub fn vol3(a: &VecD, b: &VecD, c: &VecD) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn det2(v: &[VecD]) -> f64 {
    vol2(&v[0], &v[1])
}

fn det3(v: &[VecD]) -> f64 {
    vol3(&v[0], &v[1], &v[2])
}

fn det4(v: &[VecD]) -> f64 {
    // Cofactor expansion along the first row.
    let mut acc = 0.0;
    let mut sign = 1.0;
    for col in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        let mut cj = 0;
        for j in 0..4 {
            if j == col {
                continue;
            }
            for i in 0..3 {
                minor[i][cj] = v[j][i + 1];
            }
            cj += 1;
        }
        let m = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
            - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
            + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        acc += sign * v[col][0] * m;
        sign = -sign;
    }
    acc
}

fn det_lu(v: &[VecD]) -> f64 {
    let d = v.len();
    let mut m: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| v[j][i]).collect()).collect();
    let mut det = 1.0;
    for k in 0..d {
        let (mut pivot, mut pi) = (m[k][k].abs(), k);
        for i in k + 1..d {
            if m[i][k].abs() > pivot {
                pivot = m[i][k].abs();
                pi = i;
            }
        }
        if pivot == 0.0 {
            return 0.0;
        }
        if pi != k {
            m.swap(k, pi);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..d {
            let f = m[i][k] / m[k][k];
            for j in k..d {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    det
}
