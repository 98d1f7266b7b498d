use std::path::PathBuf;

use focal_core::numkit::ToleranceConfig;

pub mod darboux;
pub mod focal;
pub mod planar;
pub mod spatial;
pub mod umbilic;

/// Shared invocation context: tolerances, gauge options and output sink.
pub struct Context {
    pub cfg: ToleranceConfig,
    pub gauge: f64,
    pub lambda0: f64,
    pub threads: usize,
    pub out: PathBuf,
}

/// Parses a comma-separated coordinate list.
pub fn parse_point(text: &str, dim: usize) -> anyhow::Result<focal_core::numkit::VecD> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    let parts = parts.map_err(|_| anyhow::anyhow!("bad coordinate list {text:?}"))?;
    if parts.len() != dim {
        anyhow::bail!("expected {dim} coordinates, got {}", parts.len());
    }
    Ok(focal_core::numkit::VecD::new(parts))
}
