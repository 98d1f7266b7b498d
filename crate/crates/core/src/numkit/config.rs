use crate::{Error, Result};

/// Numerical tolerances shared across the pipelines.
#[derive(Debug, Clone)]
pub struct ToleranceConfig {
    /// Relative tolerance on determinant normalizations such as [T, phi'', xi] = 1.
    pub tol_det: f64,
    /// Absolute threshold below which a scalar counts as zero.
    pub tol_zero: f64,
    /// Sup-norm bound accepted for frame-equation residuals.
    pub tol_residual: f64,
    /// Bisection depth used when refining localized zeros.
    pub refine_depth: u32,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            tol_det: 1e-8,
            tol_zero: 1e-6,
            tol_residual: 1e-6,
            refine_depth: 60,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_det > 0.0 && self.tol_zero > 0.0 && self.tol_residual > 0.0) {
            return Err(Error::InvalidConfig(
                "tolerances must be strictly positive".into(),
            ));
        }
        if self.refine_depth < 20 {
            return Err(Error::InvalidConfig("refine_depth must be at least 20".into()));
        }
        Ok(())
    }
}
