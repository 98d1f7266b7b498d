use std::ops::{Add, Div, Mul, Neg, Sub};

/// A scalar together with its first four derivatives with respect to a curve
/// parameter. Arithmetic propagates derivatives exactly (Leibniz / Faa di
/// Bruno truncated at order 4), which is how the analytic fixtures supply
/// exact jets without hand-derived chain rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet4 {
    /// d[k] = k-th derivative, d[0] the value.
    pub d: [f64; 5],
}

const BINOM: [[f64; 5]; 5] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0],
];

impl Jet4 {
    /// The curve parameter itself: value t, first derivative 1.
    pub fn var(t: f64) -> Jet4 {
        Jet4 { d: [t, 1.0, 0.0, 0.0, 0.0] }
    }

    pub fn constant(c: f64) -> Jet4 {
        Jet4 { d: [c, 0.0, 0.0, 0.0, 0.0] }
    }

    pub fn value(&self) -> f64 {
        self.d[0]
    }

    /// Compose an analytic function given its derivatives at self.value().
    /// `g[k]` is the k-th derivative of the outer function at the point.
    fn compose(&self, g: [f64; 5]) -> Jet4 {
        // Faa di Bruno up to order 4 for f = g(h), h = self.
        let h1 = self.d[1];
        let h2 = self.d[2];
        let h3 = self.d[3];
        let h4 = self.d[4];
        Jet4 {
            d: [
                g[0],
                g[1] * h1,
                g[2] * h1 * h1 + g[1] * h2,
                g[3] * h1 * h1 * h1 + 3.0 * g[2] * h1 * h2 + g[1] * h3,
                g[4] * h1 * h1 * h1 * h1
                    + 6.0 * g[3] * h1 * h1 * h2
                    + g[2] * (3.0 * h2 * h2 + 4.0 * h1 * h3)
                    + g[1] * h4,
            ],
        }
    }

    pub fn sin(&self) -> Jet4 {
        let (s, c) = self.d[0].sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(&self) -> Jet4 {
        let (s, c) = self.d[0].sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    pub fn exp(&self) -> Jet4 {
        let e = self.d[0].exp();
        self.compose([e, e, e, e, e])
    }

    /// Real power with positive base; exponent constant.
    pub fn powf(&self, p: f64) -> Jet4 {
        let x = self.d[0];
        let mut g = [0.0; 5];
        let mut coeff = 1.0;
        for (k, gk) in g.iter_mut().enumerate() {
            *gk = coeff * x.powf(p - k as f64);
            coeff *= p - k as f64;
        }
        self.compose(g)
    }

    pub fn sqrt(&self) -> Jet4 {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Jet4 {
        let x = self.d[0];
        let mut g = [0.0; 5];
        let mut coeff = 1.0;
        for (k, gk) in g.iter_mut().enumerate() {
            *gk = coeff / x.powi(k as i32 + 1);
            coeff *= -(k as f64 + 1.0);
        }
        self.compose(g)
    }
}

impl Add for Jet4 {
    type Output = Jet4;
    fn add(self, rhs: Jet4) -> Jet4 {
        let mut d = [0.0; 5];
        for k in 0..5 {
            d[k] = self.d[k] + rhs.d[k];
        }
        Jet4 { d }
    }
}

impl Sub for Jet4 {
    type Output = Jet4;
    fn sub(self, rhs: Jet4) -> Jet4 {
        let mut d = [0.0; 5];
        for k in 0..5 {
            d[k] = self.d[k] - rhs.d[k];
        }
        Jet4 { d }
    }
}

impl Mul for Jet4 {
    type Output = Jet4;
    fn mul(self, rhs: Jet4) -> Jet4 {
        let mut d = [0.0; 5];
        for (k, dk) in d.iter_mut().enumerate() {
            for j in 0..=k {
                *dk += BINOM[k][j] * self.d[j] * rhs.d[k - j];
            }
        }
        Jet4 { d }
    }
}

impl Div for Jet4 {
    type Output = Jet4;
    fn div(self, rhs: Jet4) -> Jet4 {
        self * rhs.recip()
    }
}

impl Mul<f64> for Jet4 {
    type Output = Jet4;
    fn mul(self, c: f64) -> Jet4 {
        let mut d = self.d;
        for dk in &mut d {
            *dk *= c;
        }
        Jet4 { d }
    }
}

impl Add<f64> for Jet4 {
    type Output = Jet4;
    fn add(self, c: f64) -> Jet4 {
        let mut d = self.d;
        d[0] += c;
        Jet4 { d }
    }
}

impl Neg for Jet4 {
    type Output = Jet4;
    fn neg(self) -> Jet4 {
        self * -1.0
    }
}
