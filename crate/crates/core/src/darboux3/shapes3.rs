//! Curve-on-surface fixtures: latitude and tilted circles on spheres, base
//! circles and spirals on cones, wavy curves on spheres and ellipsoids, and
//! the (gamma, z) lifts of planar curves.

use crate::affine_curves::PlanarAffineCurve;
use crate::numkit::{fd_derive, vol2, CurveSource, Jet4, JetCurve, VecD};
use crate::Result;

/// Horizontal circle at height h on the unit sphere.
pub fn latitude_circle(h: f64) -> CurveSource {
    let r = (1.0 - h * h).sqrt();
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        vec![j.cos() * r, j.sin() * r, Jet4::constant(h)]
    })
}

/// Circle cut from the unit sphere by the plane x . w = d (|w| = 1).
pub fn tilted_circle(w: [f64; 3], d: f64) -> CurveSource {
    let w = VecD::new(w.to_vec()).normalized();
    // orthonormal frame spanning the plane
    let seed = if w[0].abs() < 0.7 {
        VecD::new(vec![1.0, 0.0, 0.0])
    } else {
        VecD::new(vec![0.0, 1.0, 0.0])
    };
    let e1 = {
        let p = seed.axpy(-seed.dot(&w), &w);
        p.normalized()
    };
    let e2 = w.cross3(&e1);
    let r = (1.0 - d * d).sqrt();
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        let (c, s) = (j.cos(), j.sin());
        (0..3)
            .map(|k| c * (r * e1[k]) + s * (r * e2[k]) + Jet4::constant(d * w[k]))
            .collect()
    })
}

/// Unit circle at height 1: the base curve of the cone x^2 + y^2 = z^2.
pub fn cone_base_circle() -> CurveSource {
    CurveSource::analytic(3, |t| {
        let j = Jet4::var(t);
        vec![j.cos(), j.sin(), Jet4::constant(1.0)]
    })
}

/// Outward spiral exp(alpha t) (cos t, sin t, 1) on the quadric cone: the
/// ruling scale varies, so mu is not constant.
pub fn cone_spiral(alpha: f64) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        let e = (j * alpha).exp();
        vec![e * j.cos(), e * j.sin(), e]
    })
}

/// Latitude-like closed curve on the unit sphere with height ripple
/// z = h + eps sin(k t), projected back to the sphere.
pub fn wavy_latitude(h: f64, eps: f64, k: usize) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        let z = (j * k as f64).sin() * eps + h;
        let r = (Jet4::constant(1.0) - z * z).sqrt();
        vec![r * j.cos(), r * j.sin(), z]
    })
}

/// Closed curve on the ellipsoid (a sin T cos t, b sin T sin t, c cos T)
/// with polar ripple T = theta0 + eps sin(m t).
pub fn ellipsoid_wave(
    (a, b, c): (f64, f64, f64),
    theta0: f64,
    eps: f64,
    m: usize,
) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        let big = (j * m as f64).sin() * eps + theta0;
        vec![
            big.sin() * j.cos() * a,
            big.sin() * j.sin() * b,
            big.cos() * c,
        ]
    })
}

/// Lift of a planar curve to the plane z = 1 (a curve on the cone over it
/// with apex at the origin).
pub fn lift_to_unit_height(planar: CurveSource) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = planar.jets_at(t, 4);
        let comp = |c: usize| {
            let mut out = Jet4::constant(0.0);
            for (k, d) in out.d.iter_mut().enumerate() {
                if k < j.len() {
                    *d = j[k][c];
                }
            }
            out
        };
        vec![comp(0), comp(1), Jet4::constant(1.0)]
    })
}

/// The curve (gamma, z) = (G', support of G) of a planar curve in affine
/// arc-length: the canonical closed fixture with sigma = -1 and mu constant,
/// carried by the cone over itself. Jets are synthesized from the planar
/// tables through the structure equations G''' = -rho G' and z'' = 1 - rho z.
pub fn gamma_z_curve(planar: &PlanarAffineCurve, origin: &VecD) -> Result<JetCurve> {
    let g = planar.jets();
    let n = planar.len();
    let h = planar.grid()[1] - planar.grid()[0];
    let rho = planar.rho();
    let rho_p = planar.rho_prime();
    let rho_pp = fd_derive(rho, h, 2, 5, planar.is_closed());
    let mut jets: Vec<Vec<VecD>> = vec![Vec::with_capacity(n); 5];
    for i in 0..n {
        let rel = g.position(i) - origin;
        let z = vol2(&rel, g.jet_at(1, i));
        let zp = vol2(&rel, g.jet_at(2, i));
        let zpp = 1.0 - rho[i] * z;
        let zppp = -rho_p[i] * z - rho[i] * zp;
        let zpppp = -rho_pp[i] * z - 2.0 * rho_p[i] * zp - rho[i] * zpp;
        // fifth derivative of G from the structure equation
        let g5 = g
            .jet_at(1, i)
            .scale(-rho_pp[i])
            .axpy(-2.0 * rho_p[i], g.jet_at(2, i))
            .axpy(-rho[i], g.jet_at(3, i));
        let lift = |v: &VecD, last: f64| VecD::new(vec![v[0], v[1], last]);
        jets[0].push(lift(g.jet_at(1, i), z));
        jets[1].push(lift(g.jet_at(2, i), zp));
        jets[2].push(lift(g.jet_at(3, i), zpp));
        jets[3].push(lift(g.jet_at(4, i), zppp));
        jets[4].push(lift(&g5, zpppp));
    }
    JetCurve::new(planar.grid().to_vec(), jets)
}

/// Analytic form of the (gamma, z) fixture for a support-profile oval with
/// origin at the center: with R = h + h'' the affine arc-length element of
/// the oval is R^{2/3} dtheta, gamma = R^{1/3} (-sin, cos), and the support
/// function is z = h R^{1/3}.
pub fn gamma_z_oval(coeffs: Vec<f64>) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        let mut h = Jet4::constant(coeffs[0]);
        let mut big_r = Jet4::constant(coeffs[0]);
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            let kk = k as f64;
            let wave = (j * kk).cos() * *c;
            h = h + wave;
            big_r = big_r + wave * (1.0 - kk * kk);
        }
        let cbrt = big_r.powf(1.0 / 3.0);
        vec![-(cbrt * j.sin()), cbrt * j.cos(), h * cbrt]
    })
}

/// Closed loop of radius r on the graph z = (x^2 + y^2)/2 + c3 x^3; the
/// cubic term breaks the quadric symmetry, so the focal sheet has genuine
/// cuspidal edges and swallowtails.
pub fn graph_loop(r: f64, c3: f64) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = Jet4::var(t);
        let x = j.cos() * r;
        let y = j.sin() * r;
        let z = (x * x + y * y) * 0.5 + x * x * x * c3;
        vec![x, y, z]
    })
}

/// Image of a spatial curve under x -> A x + b.
pub fn affine_image3(src: CurveSource, a: [[f64; 3]; 3], b: [f64; 3]) -> CurveSource {
    CurveSource::analytic(3, move |t| {
        let j = src.jets_at(t, 4);
        (0..3)
            .map(|row| {
                let mut out = Jet4::constant(0.0);
                for (k, d) in out.d.iter_mut().enumerate() {
                    if k < j.len() {
                        *d = a[row][0] * j[k][0] + a[row][1] * j[k][1] + a[row][2] * j[k][2];
                    }
                }
                out.d[0] += b[row];
                out
            })
            .collect()
    })
}
