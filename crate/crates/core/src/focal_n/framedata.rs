//! Frame data for general dimension: sampled shape-operator entries in a
//! g-orthonormal eigenbasis of S2, the bifurcation polynomial q(a, b), and
//! the commuting / semiumbilic / regularity probes.

use num_rational::BigRational;
use num_traits::One;

use super::poly::{rational_from_f64, BivarPoly};
use crate::numkit::{eigen_sym, ToleranceConfig};
use crate::{Error, Result};

/// Default denominator cap for the rational lift of sampled values.
pub const DENOMINATOR_CAP: u64 = 1_000_000_000_000;

/// One sample of frame data: eigenvalues mu_k of S2, the matrix sigma_kl of
/// S1 and the first fundamental coefficients h1 in the S2-eigenbasis.
#[derive(Debug, Clone)]
pub struct FrameSample {
    pub params: Vec<f64>,
    pub mu: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
    pub h1: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct FrameData {
    pub n: usize,
    pub samples: Vec<FrameSample>,
}

impl FrameData {
    pub fn validate(&self) -> Result<()> {
        for (idx, s) in self.samples.iter().enumerate() {
            if s.mu.len() != self.n || s.sigma.len() != self.n || s.h1.len() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, got: s.mu.len() });
            }
            for row in s.sigma.iter().chain(s.h1.iter()) {
                if row.len() != self.n {
                    return Err(Error::DimensionMismatch { expected: self.n, got: row.len() });
                }
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    if (s.sigma[i][j] - s.sigma[j][i]).abs() > 1e-9 {
                        return Err(Error::BadTable(format!(
                            "sigma not symmetric at sample {idx}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The bifurcation polynomial at one sample with its factor structure.
#[derive(Debug, Clone)]
pub struct BifurcationLocus {
    pub poly: BivarPoly,
    /// Line factors 1 - a sigma_k - b mu_k, available when the shape
    /// operators commute: coefficients (c0, ca, cb).
    pub lines: Option<Vec<[f64; 3]>>,
    /// Number of coinciding line factors (n for umbilic samples).
    pub multiplicity: usize,
    pub degree: u32,
}

/// Expands q(a, b) = det(diag(1 - b mu_k - a sigma_kk) - a offdiag(sigma_kl))
/// in exact rational arithmetic on the (cap-rounded) sample values.
pub fn bifurcation_polynomial(fd: &FrameData, index: usize, cap: u64) -> BifurcationLocus {
    let s = &fd.samples[index];
    let n = fd.n;
    let rat = |x: f64| rational_from_f64(x, cap);
    let mut matrix = vec![vec![BivarPoly::zero(); n]; n];
    for k in 0..n {
        for l in 0..n {
            if k == l {
                matrix[k][l] = BivarPoly::linear(
                    BigRational::one(),
                    -rat(s.sigma[k][k]),
                    -rat(s.mu[k]),
                );
            } else {
                matrix[k][l] = BivarPoly::linear(
                    BigRational::from_integer(0.into()),
                    -rat(s.sigma[k][l]),
                    BigRational::from_integer(0.into()),
                );
            }
        }
    }
    let poly = BivarPoly::det(&matrix);
    let degree = poly.total_degree();
    let lines = eigen_lines(s, n);
    let multiplicity = lines
        .as_ref()
        .map(|ls| {
            let first = ls[0];
            ls.iter()
                .filter(|l| {
                    (l[1] - first[1]).abs() < 1e-9 && (l[2] - first[2]).abs() < 1e-9
                })
                .count()
        })
        .unwrap_or(1);
    BifurcationLocus { poly, lines, multiplicity, degree }
}

/// Line factors from a joint eigenbasis, when S1 and S2 commute.
fn eigen_lines(s: &FrameSample, n: usize) -> Option<Vec<[f64; 3]>> {
    // commutator entries sigma_kl (mu_l - mu_k)
    let mut comm: f64 = 0.0;
    for k in 0..n {
        for l in 0..n {
            if k != l {
                comm = comm.max((s.sigma[k][l] * (s.mu[l] - s.mu[k])).abs());
            }
        }
    }
    if comm > 1e-9 {
        return None;
    }
    // off-diagonal sigma can only couple equal-mu eigenspaces; diagonalize
    // sigma within them
    let (vals, _) = eigen_sym(s.sigma.clone());
    let diag = (0..n).all(|k| {
        (0..n).all(|l| k == l || s.sigma[k][l].abs() < 1e-9)
    });
    let lines: Vec<[f64; 3]> = if diag {
        (0..n).map(|k| [1.0, -s.sigma[k][k], -s.mu[k]]).collect()
    } else {
        // pair the sigma eigenvalues with the (necessarily equal) mu
        vals.iter().map(|sv| [1.0, -*sv, -s.mu[0]]).collect()
    };
    Some(lines)
}

/// Coefficientwise agreement of q with the product of its line factors.
pub fn lines_match_poly(locus: &BifurcationLocus, cap: u64) -> Option<f64> {
    let lines = locus.lines.as_ref()?;
    let mut prod = BivarPoly::constant(BigRational::one());
    for l in lines {
        prod = prod.mul(&BivarPoly::linear(
            rational_from_f64(l[0], cap),
            rational_from_f64(l[1], cap),
            rational_from_f64(l[2], cap),
        ));
    }
    Some(locus.poly.coeff_distance(&prod))
}

/// Commutation and (for n = 2) semiumbilicity of the shape operators.
#[derive(Debug, Clone)]
pub struct CommuteReport {
    pub commute: bool,
    pub commutator_norm: f64,
    /// n = 2 determinant criterion; None in other dimensions.
    pub semiumbilic: Option<bool>,
    pub lines: Option<Vec<[f64; 3]>>,
}

pub fn commuting_and_semiumbilic(
    fd: &FrameData,
    index: usize,
    cfg: &ToleranceConfig,
) -> CommuteReport {
    let s = &fd.samples[index];
    let n = fd.n;
    let mut norm2 = 0.0;
    for k in 0..n {
        for l in 0..n {
            let c = s.sigma[k][l] * (s.mu[l] - s.mu[k]);
            norm2 += c * c;
        }
    }
    let commutator_norm = norm2.sqrt();
    let commute = commutator_norm < cfg.tol_residual;
    let semiumbilic = (n == 2).then(|| {
        // det [[l22 - l11, l12], [m22 - m11, m12]]; S2 diagonal makes
        // m12 = 0, so the determinant collapses to -l12 (m22 - m11)
        let det = -(s.sigma[0][1] * (s.mu[1] - s.mu[0]));
        det.abs() < cfg.tol_residual
    });
    let lines = if commute { eigen_lines(s, n) } else { None };
    CommuteReport { commute, commutator_norm, semiumbilic, lines }
}

/// Regularity of the affine focal set at x = phi + mu_1^{-1} eta.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub smooth: bool,
    /// zeta = mu_1 xi - sigma_11 eta, tangent to the locus at the point.
    pub tangent_direction: (f64, f64),
    /// Basis description of the tangent space when smooth.
    pub tangent_space: String,
}

/// Smoothness probe at the first eigenvalue: needs eta parallel, mu_1 simple
/// and the directional derivative X_1(mu_1).
pub fn regularity_probe(
    fd: &FrameData,
    index: usize,
    eta_parallel: bool,
    x1_mu1: f64,
    cfg: &ToleranceConfig,
) -> Result<RegularityReport> {
    if !eta_parallel {
        return Err(Error::InvalidConfig(
            "regularity probe requires a parallel eta".into(),
        ));
    }
    let s = &fd.samples[index];
    let mu1 = s.mu[0];
    let gap = s.mu[1..]
        .iter()
        .map(|m| (m - mu1).abs())
        .fold(f64::INFINITY, f64::min);
    if fd.n >= 2 && gap < 1e-6 {
        return Err(Error::NonSimpleEigenvalue { gap });
    }
    let smooth = x1_mu1.abs() > cfg.tol_zero;
    let basis: Vec<String> = (2..=fd.n)
        .map(|k| format!("X{k}"))
        .chain(["xi".into(), "eta".into()])
        .collect();
    Ok(RegularityReport {
        smooth,
        tangent_direction: (mu1, -s.sigma[0][0]),
        tangent_space: format!("span{{{}}}", basis.join(", ")),
    })
}
