//! Bivariate polynomials in (a, b) with exact rational coefficients, for the
//! bifurcation determinant q(a, b) and its factor structure.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Best rational approximation of a float with denominator bounded by `cap`
/// (continued-fraction convergents). Floats that are exactly representable
/// within the cap come back exact.
pub fn rational_from_f64(x: f64, cap: u64) -> BigRational {
    assert!(x.is_finite());
    if x == 0.0 {
        return BigRational::zero();
    }
    let negative = x < 0.0;
    let mut frac = x.abs();
    // convergents p/q of the continued fraction
    let (mut p0, mut q0) = (BigInt::from(0), BigInt::from(1));
    let (mut p1, mut q1) = (BigInt::from(1), BigInt::from(0));
    let cap = BigInt::from(cap);
    let mut best: Option<(BigInt, BigInt)> = None;
    for _ in 0..64 {
        let a = frac.floor();
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > cap {
            break;
        }
        best = Some((p2.clone(), q2.clone()));
        let rem = frac - a;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if rem.abs() < 1e-18 {
            break;
        }
        frac = 1.0 / rem;
        if !frac.is_finite() {
            break;
        }
    }
    let (p, q) = best.unwrap_or((BigInt::from(0), BigInt::from(1)));
    let r = BigRational::new(p, q);
    if negative {
        -r
    } else {
        r
    }
}

/// Polynomial in a and b: coefficient map keyed by (deg_a, deg_b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly {
    coeffs: BTreeMap<(u32, u32), BigRational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.set((0, 0), c);
        p
    }

    /// c0 + ca a + cb b.
    pub fn linear(c0: BigRational, ca: BigRational, cb: BigRational) -> Self {
        let mut p = Self::zero();
        p.set((0, 0), c0);
        p.set((1, 0), ca);
        p.set((0, 1), cb);
        p
    }

    pub fn set(&mut self, key: (u32, u32), c: BigRational) {
        if c.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, c);
        }
    }

    pub fn coeff(&self, key: (u32, u32)) -> BigRational {
        self.coeffs.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.coeffs.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            let v = out.coeff(*k) + c;
            out.set(*k, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            let v = out.coeff(*k) - c;
            out.set(*k, v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                let key = (i1 + i2, j1 + j2);
                let v = out.coeff(key) + c1 * c2;
                out.set(key, v);
            }
        }
        out
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|((i, j), c)| c.to_f64().unwrap_or(f64::NAN) * a.powi(*i as i32) * b.powi(*j as i32))
            .sum()
    }

    /// Largest absolute difference of coefficients (as floats).
    pub fn coeff_distance(&self, other: &Self) -> f64 {
        let mut keys: Vec<(u32, u32)> = self.coeffs.keys().cloned().collect();
        keys.extend(other.coeffs.keys().cloned());
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|k| {
                (self.coeff(k) - other.coeff(k))
                    .to_f64()
                    .map(f64::abs)
                    .unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }

    /// Determinant of a square matrix of polynomials, by Laplace expansion
    /// (the matrices here are at most 4x4).
    pub fn det(matrix: &[Vec<BivarPoly>]) -> BivarPoly {
        let n = matrix.len();
        if n == 1 {
            return matrix[0][0].clone();
        }
        let mut acc = BivarPoly::zero();
        for col in 0..n {
            let minor: Vec<Vec<BivarPoly>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|c| *c != col)
                        .map(|c| matrix[r][c].clone())
                        .collect()
                })
                .collect();
            let term = matrix[0][col].mul(&Self::det(&minor));
            acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
}

/// Sampled points of the zero set {q = 0} inside a rectangle: exact node
/// zeros plus bisection-refined crossings along grid edges.
pub fn sample_zero_set(
    q: &BivarPoly,
    a_range: (f64, f64),
    b_range: (f64, f64),
    grid: usize,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let na = grid;
    let nb = grid;
    let a_at = |i: usize| a_range.0 + (a_range.1 - a_range.0) * i as f64 / na as f64;
    let b_at = |j: usize| b_range.0 + (b_range.1 - b_range.0) * j as f64 / nb as f64;
    let mut values = vec![0.0; (na + 1) * (nb + 1)];
    for i in 0..=na {
        for j in 0..=nb {
            values[i * (nb + 1) + j] = q.eval(a_at(i), b_at(j));
        }
    }
    let v = |i: usize, j: usize| values[i * (nb + 1) + j];
    let bisect = |mut p0: (f64, f64), mut p1: (f64, f64), mut f0: f64| {
        for _ in 0..60 {
            let mid = (0.5 * (p0.0 + p1.0), 0.5 * (p0.1 + p1.1));
            let fm = q.eval(mid.0, mid.1);
            if fm == 0.0 {
                return mid;
            }
            if f0 * fm < 0.0 {
                p1 = mid;
            } else {
                p0 = mid;
                f0 = fm;
            }
        }
        (0.5 * (p0.0 + p1.0), 0.5 * (p0.1 + p1.1))
    };
    for i in 0..=na {
        for j in 0..=nb {
            if v(i, j) == 0.0 {
                out.push((a_at(i), b_at(j)));
            }
        }
    }
    for i in 0..=na {
        for j in 0..nb {
            let (f0, f1) = (v(i, j), v(i, j + 1));
            if f0 * f1 < 0.0 {
                out.push(bisect((a_at(i), b_at(j)), (a_at(i), b_at(j + 1)), f0));
            }
        }
    }
    for j in 0..=nb {
        for i in 0..na {
            let (f0, f1) = (v(i, j), v(i + 1, j));
            if f0 * f1 < 0.0 {
                out.push(bisect((a_at(i), b_at(j)), (a_at(i + 1), b_at(j)), f0));
            }
        }
    }
    out
}
