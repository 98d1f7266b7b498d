use std::path::Path;

use anyhow::anyhow;
use serde_json::json;

use focal_core::affine_curves::{
    affine_evolute, count_vertices, reparam_affine_planar, support_function,
};

use crate::output::{fmt, write_text, Csv};
use crate::spec::{load_json, CurveSpec};
use crate::{CmdResult, Failure};

use super::{parse_point, Context};

pub fn run(ctx: &Context, spec_path: &Path, origin: Option<&str>, samples: usize) -> CmdResult {
    if samples < 16 {
        return Err(Failure::Spec(anyhow!("sample density must be at least 16")));
    }
    let spec: CurveSpec = load_json(spec_path).map_err(Failure::Spec)?;
    let base = spec_path.parent().unwrap_or(Path::new("."));
    let (source, t_range) = spec.build(base).map_err(Failure::Spec)?;
    let origin = origin
        .map(|o| parse_point(o, 2))
        .transpose()
        .map_err(Failure::Spec)?;

    let curve = reparam_affine_planar(&source, t_range, samples, false, &ctx.cfg)
        .map_err(|e| Failure::Numeric(anyhow!(e)))?;

    let mut invariants = Csv::new("u,rho,rho_prime");
    for i in 0..curve.len() {
        invariants.row(&[curve.grid()[i], curve.rho()[i], curve.rho_prime()[i]]);
    }
    write_text(&ctx.out, "invariants.csv", &invariants.finish()).map_err(Failure::Spec)?;

    let evolute = affine_evolute(&curve, &ctx.cfg);
    let mut ev_csv = Csv::new("u,Ex,Ey");
    for (u, e) in &evolute.points {
        ev_csv.row(&[*u, e[0], e[1]]);
    }
    write_text(&ctx.out, "evolute.csv", &ev_csv.finish()).map_err(Failure::Spec)?;

    if let Some(origin) = &origin {
        let support = support_function(&curve, origin);
        let mut csv = Csv::new("u,z,z_prime");
        for i in 0..curve.len() {
            csv.row(&[curve.grid()[i], support.z[i], support.z_prime[i]]);
        }
        write_text(&ctx.out, "support.csv", &csv.finish()).map_err(Failure::Spec)?;
    }

    let vertices = count_vertices(&curve, curve.is_closed(), &ctx.cfg)
        .map_err(|e| Failure::Numeric(anyhow!(e)))?;
    let report = json!({
        "closed": curve.is_closed(),
        "reflected": curve.was_reflected(),
        "total_affine_length": fmt(curve.total_length()),
        "det_error": fmt(curve.det_error),
        "structure_residual": fmt(curve.residual),
        "vertex_count": vertices.count,
        "degenerate_rho_prime": vertices.degenerate,
        "vertices": vertices
            .zeros
            .iter()
            .map(|z| json!({"u": fmt(z.u), "tangential": z.tangential}))
            .collect::<Vec<_>>(),
        "evolute_points_omitted": evolute.omitted.len(),
    });
    write_text(
        &ctx.out,
        "vertex_report.json",
        &serde_json::to_string_pretty(&report).unwrap(),
    )
    .map_err(Failure::Spec)?;
    Ok(())
}
