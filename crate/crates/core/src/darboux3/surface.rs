//! Surfaces of 3-space as seen from a curve lying on them: what the frame
//! pipeline needs is the (unnormalized) normal along the curve, its
//! derivative, and a containment residual.

use crate::numkit::VecD;

type Scalar3 = Box<dyn Fn(&VecD) -> f64 + Send + Sync>;
type Vector3 = Box<dyn Fn(&VecD) -> VecD + Send + Sync>;
type Matrix3 = Box<dyn Fn(&VecD) -> [[f64; 3]; 3] + Send + Sync>;

/// Level set F = 0 with analytic gradient and Hessian.
pub struct ImplicitSurface {
    f: Scalar3,
    grad: Vector3,
    hess: Matrix3,
}

impl ImplicitSurface {
    pub fn new(
        f: impl Fn(&VecD) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&VecD) -> VecD + Send + Sync + 'static,
        hess: impl Fn(&VecD) -> [[f64; 3]; 3] + Send + Sync + 'static,
    ) -> Self {
        ImplicitSurface { f: Box::new(f), grad: Box::new(grad), hess: Box::new(hess) }
    }

    /// Polynomial level set from monomial terms (i, j, k, coeff) meaning
    /// coeff x^i y^j z^k.
    pub fn from_monomials(terms: Vec<(usize, usize, usize, f64)>) -> Self {
        let eval = move |p: &VecD, di: usize, dj: usize, dk: usize, terms: &[(usize, usize, usize, f64)]| -> f64 {
            let mut acc = 0.0;
            for &(i, j, k, c) in terms {
                if di <= i && dj <= j && dk <= k {
                    let mut coeff = c;
                    for m in 0..di {
                        coeff *= (i - m) as f64;
                    }
                    for m in 0..dj {
                        coeff *= (j - m) as f64;
                    }
                    for m in 0..dk {
                        coeff *= (k - m) as f64;
                    }
                    acc += coeff
                        * p[0].powi((i - di) as i32)
                        * p[1].powi((j - dj) as i32)
                        * p[2].powi((k - dk) as i32);
                }
            }
            acc
        };
        let t1 = terms.clone();
        let t2 = terms.clone();
        let t3 = terms;
        ImplicitSurface {
            f: Box::new(move |p| eval(p, 0, 0, 0, &t1)),
            grad: Box::new(move |p| {
                VecD::new(vec![
                    eval(p, 1, 0, 0, &t2),
                    eval(p, 0, 1, 0, &t2),
                    eval(p, 0, 0, 1, &t2),
                ])
            }),
            hess: Box::new(move |p| {
                let mut h = [[0.0; 3]; 3];
                let orders = [(1, 0, 0), (0, 1, 0), (0, 0, 1)];
                for (r, &(a, b, c)) in orders.iter().enumerate() {
                    for (s, &(d, e, f)) in orders.iter().enumerate() {
                        h[r][s] = eval(p, a + d, b + e, c + f, &t3);
                    }
                }
                h
            }),
        }
    }

    pub fn value(&self, p: &VecD) -> f64 {
        (self.f)(p)
    }

    pub fn gradient(&self, p: &VecD) -> VecD {
        (self.grad)(p)
    }

    pub fn hessian(&self, p: &VecD) -> [[f64; 3]; 3] {
        (self.hess)(p)
    }
}

/// A surface of R^3 carrying a curve.
pub enum SurfaceR3 {
    Implicit(ImplicitSurface),
    /// Cone with the given apex ruled over the analyzed curve: the tangent
    /// plane at a curve point is spanned by the ruling and the velocity.
    Cone { apex: VecD },
}

impl SurfaceR3 {
    pub fn sphere(r: f64) -> Self {
        SurfaceR3::Implicit(ImplicitSurface::from_monomials(vec![
            (2, 0, 0, 1.0),
            (0, 2, 0, 1.0),
            (0, 0, 2, 1.0),
            (0, 0, 0, -r * r),
        ]))
    }

    pub fn ellipsoid(a: f64, b: f64, c: f64) -> Self {
        SurfaceR3::Implicit(ImplicitSurface::from_monomials(vec![
            (2, 0, 0, 1.0 / (a * a)),
            (0, 2, 0, 1.0 / (b * b)),
            (0, 0, 2, 1.0 / (c * c)),
            (0, 0, 0, -1.0),
        ]))
    }

    /// Quadric cone x^2 + y^2 = z^2 (apex at the origin).
    pub fn quadric_cone() -> Self {
        SurfaceR3::Implicit(ImplicitSurface::from_monomials(vec![
            (2, 0, 0, 1.0),
            (0, 2, 0, 1.0),
            (0, 0, 2, -1.0),
        ]))
    }

    pub fn cylinder(r: f64) -> Self {
        SurfaceR3::Implicit(ImplicitSurface::from_monomials(vec![
            (2, 0, 0, 1.0),
            (0, 2, 0, 1.0),
            (0, 0, 0, -r * r),
        ]))
    }

    /// The graph z = (x^2 + y^2)/2 + c3 x^3 as a level set.
    pub fn perturbed_graph(c3: f64) -> Self {
        SurfaceR3::Implicit(ImplicitSurface::from_monomials(vec![
            (0, 0, 1, 1.0),
            (2, 0, 0, -0.5),
            (0, 2, 0, -0.5),
            (3, 0, 0, -c3),
        ]))
    }

    /// Unnormalized normal at a curve point with the given velocity.
    pub fn normal(&self, p: &VecD, vel: &VecD) -> VecD {
        match self {
            SurfaceR3::Implicit(s) => s.gradient(p),
            SurfaceR3::Cone { apex } => (p - apex).cross3(vel),
        }
    }

    /// Derivative of the normal along the curve (velocity and acceleration
    /// of the curve at the point).
    pub fn normal_derivative(&self, p: &VecD, vel: &VecD, acc: &VecD) -> VecD {
        match self {
            SurfaceR3::Implicit(s) => {
                let h = s.hessian(p);
                VecD::new(
                    (0..3)
                        .map(|r| (0..3).map(|c| h[r][c] * vel[c]).sum())
                        .collect(),
                )
            }
            SurfaceR3::Cone { apex } => (p - apex).cross3(acc),
        }
    }

    /// Scale-normalized containment residual |F(p)| / |grad F(p)|; cones over
    /// the analyzed curve contain it by construction.
    pub fn containment_residual(&self, p: &VecD) -> f64 {
        match self {
            SurfaceR3::Implicit(s) => s.value(p).abs() / s.gradient(p).norm().max(1e-300),
            SurfaceR3::Cone { .. } => 0.0,
        }
    }

    /// Image surface under x -> A x + b (A given with its inverse):
    /// F_A(x) = F(A^{-1}(x - b)).
    pub fn transformed(self, a_inv: [[f64; 3]; 3], b: VecD) -> Self {
        match self {
            SurfaceR3::Cone { apex } => {
                // apex maps forward: solve a_inv (x - b) = apex
                // x = A apex + b, and A = inverse of a_inv
                let a = invert3(&a_inv);
                let moved = VecD::new(
                    (0..3)
                        .map(|r| (0..3).map(|c| a[r][c] * apex[c]).sum::<f64>() + b[r])
                        .collect(),
                );
                SurfaceR3::Cone { apex: moved }
            }
            SurfaceR3::Implicit(s) => {
                let pull = move |x: &VecD| -> VecD {
                    VecD::new(
                        (0..3)
                            .map(|r| (0..3).map(|c| a_inv[r][c] * (x[c] - b[c])).sum())
                            .collect(),
                    )
                };
                let s = std::sync::Arc::new(s);
                let (s1, s2, s3) = (s.clone(), s.clone(), s);
                let (p1, p2, p3) = (pull.clone(), pull.clone(), pull);
                SurfaceR3::Implicit(ImplicitSurface::new(
                    move |x| s1.value(&p1(x)),
                    move |x| {
                        let g = s2.gradient(&p2(x));
                        // grad F_A = A^{-T} grad F
                        VecD::new((0..3).map(|r| (0..3).map(|c| a_inv[c][r] * g[c]).sum()).collect())
                    },
                    move |x| {
                        let h = s3.hessian(&p3(x));
                        let mut out = [[0.0; 3]; 3];
                        for r in 0..3 {
                            for cc in 0..3 {
                                let mut acc = 0.0;
                                for i in 0..3 {
                                    for j in 0..3 {
                                        acc += a_inv[i][r] * h[i][j] * a_inv[j][cc];
                                    }
                                }
                                out[r][cc] = acc;
                            }
                        }
                        out
                    },
                ))
            }
        }
    }
}

fn invert3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let c = |r: usize, s: usize| -> f64 {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (s1, s2) = ((s + 1) % 3, (s + 2) % 3);
        m[r1][s1] * m[r2][s2] - m[r1][s2] * m[r2][s1]
    };
    let mut out = [[0.0; 3]; 3];
    for r in 0..3 {
        for s in 0..3 {
            out[r][s] = c(s, r) / det; // adjugate transpose
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_gradient_and_hessian() {
        let s = ImplicitSurface::from_monomials(vec![
            (2, 0, 0, 1.0),
            (0, 2, 0, 1.0),
            (0, 0, 2, 1.0),
            (0, 0, 0, -1.0),
        ]);
        let p = VecD::new(vec![0.3, -0.5, 0.81]);
        assert!((s.value(&p) - (0.09 + 0.25 + 0.6561 - 1.0)).abs() < 1e-14);
        assert!(s.gradient(&p).dist(&p.scale(2.0)) < 1e-14);
        let h = s.hessian(&p);
        for r in 0..3 {
            for c in 0..3 {
                let expect = if r == c { 2.0 } else { 0.0 };
                assert!((h[r][c] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cone_normal_is_orthogonal_to_rulings() {
        let cone = SurfaceR3::Cone { apex: VecD::zeros(3) };
        let p = VecD::new(vec![1.0, 0.0, 1.0]);
        let vel = VecD::new(vec![0.0, 1.0, 0.0]);
        let n = cone.normal(&p, &vel);
        assert!(n.dot(&p).abs() < 1e-14);
        assert!(n.dot(&vel).abs() < 1e-14);
    }

    #[test]
    fn transformed_sphere_gradient_chain_rule() {
        // pure shear: A = [[1, 0.5, 0], [0, 1, 0], [0, 0, 1]]
        let a_inv = [[1.0, -0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let b = VecD::new(vec![0.1, 0.0, -0.2]);
        let s = SurfaceR3::sphere(1.0).transformed(a_inv, b.clone());
        // image of (1,0,0): A x + b
        let x = VecD::new(vec![1.0 + 0.1, 0.0, -0.2]);
        if let SurfaceR3::Implicit(imp) = &s {
            assert!(imp.value(&x).abs() < 1e-14);
            // gradient A^{-T} (2, 0, 0)
            let g = imp.gradient(&x);
            assert!(g.dist(&VecD::new(vec![2.0, -1.0, 0.0])) < 1e-14);
        } else {
            panic!("expected implicit");
        }
    }
}
