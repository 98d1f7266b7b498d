//! Analytic planar curve constructors used by the CLI specs and the tests.

use crate::numkit::{CurveSource, Jet4};

/// Circle of radius r, counterclockwise: (r cos t, r sin t).
pub fn circle(r: f64) -> CurveSource {
    CurveSource::analytic(2, move |t| {
        let j = Jet4::var(t);
        vec![j.cos() * r, j.sin() * r]
    })
}

/// Axis-aligned ellipse (a cos t, b sin t).
pub fn ellipse(a: f64, b: f64) -> CurveSource {
    CurveSource::analytic(2, move |t| {
        let j = Jet4::var(t);
        vec![j.cos() * a, j.sin() * b]
    })
}

/// Convex oval with Fourier support profile h(t) = c_0 + sum_k c_k cos(k t):
/// the envelope G = h n + h' n_perp of the lines x . n(t) = h(t). Then
/// G' = (h + h'') n_perp, so the oval is strictly convex whenever h + h'' > 0
/// (for the profile 1 + 0.1 cos 3t the margin is 0.2).
pub fn fourier_oval(coeffs: Vec<f64>) -> CurveSource {
    CurveSource::analytic(2, move |t| {
        let j = Jet4::var(t);
        let mut h = Jet4::constant(coeffs[0]);
        let mut hp = Jet4::constant(0.0);
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            let arg = j * k as f64;
            h = h + arg.cos() * *c;
            hp = hp - arg.sin() * (*c * k as f64);
        }
        let (cos, sin) = (j.cos(), j.sin());
        vec![h * cos - hp * sin, h * sin + hp * cos]
    })
}

/// The parabola (t, t^2/2); already in affine arc-length with rho = 0.
pub fn parabola() -> CurveSource {
    CurveSource::analytic(2, |t| {
        let j = Jet4::var(t);
        vec![j, j * j * 0.5]
    })
}

/// Polynomial curve (x(t), y(t)) from coefficient lists, constant term first.
pub fn parametric_poly(xc: Vec<f64>, yc: Vec<f64>) -> CurveSource {
    CurveSource::analytic(2, move |t| {
        let j = Jet4::var(t);
        vec![poly(&xc, j), poly(&yc, j)]
    })
}

fn poly(coeffs: &[f64], x: Jet4) -> Jet4 {
    let mut acc = Jet4::constant(0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Circular helix (cos t, sin t, t); affine arc-length with rho = 1, tau = 0.
pub fn helix() -> CurveSource {
    CurveSource::analytic(3, |t| {
        let j = Jet4::var(t);
        vec![j.cos(), j.sin(), j]
    })
}

/// Twisted cubic (t, t^2/2, t^3/6); affine arc-length with rho = tau = 0.
pub fn cubic_twist() -> CurveSource {
    CurveSource::analytic(3, |t| {
        let j = Jet4::var(t);
        vec![j, j * j * 0.5, j * j * j * (1.0 / 6.0)]
    })
}

/// Helix with a vertical ripple (cos t, sin t, t + eps sin 2t): nonconstant
/// rho and tau, not cylindrical.
pub fn perturbed_helix(eps: f64) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        vec![j.cos(), j.sin(), j + (j * 2.0).sin() * eps]
    })
}

/// Image of a planar curve under the affine map x -> A x + b. Jets transform
/// linearly, so the image is again an exact analytic source.
pub fn affine_image(src: CurveSource, a: [[f64; 2]; 2], b: [f64; 2]) -> CurveSource {
    CurveSource::analytic(2, move |t| {
        let j = src.jets_at(t, 4);
        let comp = |row: usize| {
            let mut out = Jet4::constant(0.0);
            for (k, d) in out.d.iter_mut().enumerate() {
                if k < j.len() {
                    *d = a[row][0] * j[k][0] + a[row][1] * j[k][1];
                }
            }
            out.d[0] += b[row];
            out
        };
        vec![comp(0), comp(1)]
    })
}
