use std::path::Path;

use anyhow::anyhow;
use serde_json::json;

use focal_core::affine_curves::{cylindricity_test, projective_density, spatial_invariants};
use focal_core::numkit::sup_norm;

use crate::output::{fmt, write_text, Csv};
use crate::spec::{load_json, Curve3Spec};
use crate::{CmdResult, Failure};

use super::Context;

pub fn run(ctx: &Context, spec_path: &Path, samples: usize) -> CmdResult {
    if samples < 16 {
        return Err(Failure::Spec(anyhow!("sample density must be at least 16")));
    }
    let spec: Curve3Spec = load_json(spec_path).map_err(Failure::Spec)?;
    let base = spec_path.parent().unwrap_or(Path::new("."));
    let (source, t_range) = spec.build(base).map_err(Failure::Spec)?;
    let curve = spatial_invariants(&source, t_range, samples, &ctx.cfg)
        .map_err(|e| Failure::Numeric(anyhow!(e)))?;

    let mut invariants = Csv::new("u,rho,rho_prime,tau");
    for i in 0..curve.len() {
        invariants.row(&[
            curve.grid()[i],
            curve.rho()[i],
            curve.rho_prime()[i],
            curve.tau()[i],
        ]);
    }
    write_text(&ctx.out, "invariants.csv", &invariants.finish()).map_err(Failure::Spec)?;

    let (cylindrical, residual) = cylindricity_test(&curve, &ctx.cfg);
    let (density, zeros) = projective_density(&curve, &ctx.cfg);
    let mut density_csv = Csv::new("u,density");
    for i in 0..curve.len() {
        density_csv.row(&[curve.grid()[i], density[i]]);
    }
    write_text(&ctx.out, "projective_density.csv", &density_csv.finish())
        .map_err(Failure::Spec)?;

    let report = json!({
        "det_error": fmt(curve.det_error),
        "structure_residual": fmt(curve.residual),
        "cylindrical": cylindrical,
        "cylindricity_residual": fmt(sup_norm(&residual)),
        "density_zeros": zeros
            .iter()
            .map(|z| json!({"u": fmt(z.u), "tangential": z.tangential}))
            .collect::<Vec<_>>(),
    });
    write_text(
        &ctx.out,
        "report.json",
        &serde_json::to_string_pretty(&report).unwrap(),
    )
    .map_err(Failure::Spec)?;
    Ok(())
}
