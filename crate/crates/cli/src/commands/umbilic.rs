use std::path::Path;

use anyhow::anyhow;
use serde_json::json;

use focal_core::blaschke::{
    curve_apparatus, is_proper_affine_sphere, patch_apparatus, patches, BlaschkeApparatus,
};
use focal_core::numkit::VecD;
use focal_core::umbilic::{
    construct_umbilic, derivatives_from_table, hyperplanarity_test, inverse_construction,
    verify_laplacian_identity, GridShape,
};

use crate::output::{fmt, write_text, Csv};
use crate::spec::{load_json, HypersurfaceSpec};
use crate::{CmdResult, Failure};

use super::{parse_point, Context};

/// Plane-fit acceptance threshold for analytic inputs.
const PLANE_TOL_ANALYTIC: f64 = 1e-8;

pub fn run(ctx: &Context, surface_path: &Path, origin_text: &str) -> CmdResult {
    let spec: HypersurfaceSpec = load_json(surface_path).map_err(Failure::Spec)?;
    let base = surface_path.parent().unwrap_or(Path::new("."));
    let apparatus = build_apparatus(ctx, &spec, base)?;
    let dim = apparatus.n() + 1;
    let origin = parse_point(origin_text, dim).map_err(Failure::Spec)?;

    let immersion =
        construct_umbilic(&apparatus, &origin).map_err(|e| Failure::Numeric(anyhow!(e)))?;

    // phi table
    let n = immersion.n;
    let header = if n == 1 {
        "u,phi_0,phi_1,phi_2".to_string()
    } else {
        "u,v,phi_0,phi_1,phi_2,phi_3".to_string()
    };
    let mut csv = Csv::new(&header);
    let shape = &immersion.shape;
    for k in 0..immersion.phi.len() {
        let mut row = Vec::new();
        if n == 1 {
            row.push(k as f64 * shape.hu);
        } else {
            row.push((k / shape.nv) as f64 * shape.hu);
            row.push((k % shape.nv) as f64 * shape.hv);
        }
        row.extend(immersion.phi[k].as_slice());
        csv.row(&row);
    }
    write_text(&ctx.out, "phi.csv", &csv.finish()).map_err(Failure::Spec)?;

    // Blaschke apparatus table: co-normal and affine mean curvature
    let nu_header: Vec<String> = if n == 1 {
        std::iter::once("u".to_string())
            .chain((0..=n).map(|c| format!("nu_{c}")))
            .chain(std::iter::once("H".to_string()))
            .collect()
    } else {
        ["u", "v"]
            .into_iter()
            .map(String::from)
            .chain((0..=n).map(|c| format!("nu_{c}")))
            .chain(std::iter::once("H".to_string()))
            .collect()
    };
    let mut app_csv = Csv::new(&nu_header.join(","));
    let conormal = apparatus.conormal();
    let mean = apparatus.mean_curvature();
    for k in 0..conormal.len() {
        let mut row = Vec::new();
        if n == 1 {
            row.push(k as f64 * shape.hu);
        } else {
            row.push((k / shape.nv) as f64 * shape.hu);
            row.push((k % shape.nv) as f64 * shape.hv);
        }
        row.extend(conormal[k].as_slice());
        row.push(mean[k]);
        app_csv.row(&row);
    }
    write_text(&ctx.out, "apparatus.csv", &app_csv.finish()).map_err(Failure::Spec)?;

    let laplacian_residual = verify_laplacian_identity(&immersion, &apparatus)
        .map_err(|e| Failure::Numeric(anyhow!(e)))?;
    let (plane, plane_residual) = hyperplanarity_test(&immersion, PLANE_TOL_ANALYTIC);
    let proper = is_proper_affine_sphere(&apparatus, &ctx.cfg);

    let report = json!({
        "n": n,
        "origin": origin.as_slice().iter().map(|v| fmt(*v)).collect::<Vec<_>>(),
        "laplacian_residual": fmt(laplacian_residual),
        "frame_det_residual": fmt(immersion.frame_det_residual),
        "metric_agreement": fmt(immersion.metric_agreement),
        "contour_residual": fmt(immersion.contour_residual),
        "hyperplanar": plane.is_some(),
        "hyperplane": plane.map(|p| json!({
            "normal": p.normal.as_slice().iter().map(|v| fmt(*v)).collect::<Vec<_>>(),
            "offset": fmt(p.offset),
        })),
        "plane_fit_residual": fmt(plane_residual),
        "proper_affine_sphere": proper.is_some(),
        "sphere_center": proper.map(|s| {
            s.center.as_slice().iter().map(|v| fmt(*v)).collect::<Vec<_>>()
        }),
    });
    write_text(
        &ctx.out,
        "verification.json",
        &serde_json::to_string_pretty(&report).unwrap(),
    )
    .map_err(Failure::Spec)?;
    Ok(())
}

fn build_apparatus(
    ctx: &Context,
    spec: &HypersurfaceSpec,
    base: &Path,
) -> Result<BlaschkeApparatus, Failure> {
    Ok(match spec {
        HypersurfaceSpec::Curve { spec, samples } => {
            let (source, t_range) = spec.build(base).map_err(Failure::Spec)?;
            BlaschkeApparatus::Curve(
                curve_apparatus(&source, t_range, *samples, &ctx.cfg)
                    .map_err(|e| Failure::Numeric(anyhow!(e)))?,
            )
        }
        HypersurfaceSpec::SpherePatch { r, grid } => BlaschkeApparatus::Patch(
            patch_apparatus(&patches::sphere(*r, grid[0], grid[1]))
                .map_err(|e| Failure::Numeric(anyhow!(e)))?,
        ),
        HypersurfaceSpec::EllipsoidPatch { a, b, c, grid } => BlaschkeApparatus::Patch(
            patch_apparatus(&patches::ellipsoid(*a, *b, *c, grid[0], grid[1]))
                .map_err(|e| Failure::Numeric(anyhow!(e)))?,
        ),
        HypersurfaceSpec::Paraboloid { half_width, n } => BlaschkeApparatus::Patch(
            patch_apparatus(&patches::paraboloid(*half_width, *n))
                .map_err(|e| Failure::Numeric(anyhow!(e)))?,
        ),
        HypersurfaceSpec::GraphPoly { terms, half_width, n } => {
            let terms = terms
                .iter()
                .map(|t| (t.powers[0], t.powers[1], t.coeff))
                .collect();
            BlaschkeApparatus::Patch(
                patch_apparatus(&patches::graph(terms, *half_width, *n))
                    .map_err(|e| Failure::Numeric(anyhow!(e)))?,
            )
        }
    })
}

/// Inverse construction from a phi table CSV (header u[,v],phi_0..phi_{n+1}).
pub fn run_inverse(ctx: &Context, phi_path: &Path, origin_text: Option<&str>) -> CmdResult {
    let (shape, phi) = read_phi_table(phi_path).map_err(Failure::Spec)?;
    let n = phi[0].dim() - 2;
    let origin = match origin_text {
        Some(o) => parse_point(o, n + 1).map_err(Failure::Spec)?,
        None => VecD::zeros(n + 1),
    };
    let dphi = derivatives_from_table(&shape, &phi);
    let result = inverse_construction(n, &shape, &phi, &dphi, &origin)
        .map_err(|e| Failure::Numeric(anyhow!(e)))?;

    let mut header: Vec<String> = if n == 1 {
        vec!["u".into()]
    } else {
        vec!["u".into(), "v".into()]
    };
    for c in 0..=n {
        header.push(format!("f_{c}"));
    }
    let mut csv = Csv::new(&header.join(","));
    for (k, f) in result.f.iter().enumerate() {
        let mut row = Vec::new();
        if n == 1 {
            row.push(k as f64 * shape.hu);
        } else {
            row.push((k / shape.nv) as f64 * shape.hu);
            row.push((k % shape.nv) as f64 * shape.hv);
        }
        row.extend(f.as_slice());
        csv.row(&row);
    }
    write_text(&ctx.out, "recovered_f.csv", &csv.finish()).map_err(Failure::Spec)?;

    let report = json!({
        "n": n,
        "origin": origin.as_slice().iter().map(|v| fmt(*v)).collect::<Vec<_>>(),
        "conormal_residual": fmt(result.conormal_residual),
        "frame_det_residual": fmt(result.det_residual),
    });
    write_text(
        &ctx.out,
        "inverse_report.json",
        &serde_json::to_string_pretty(&report).unwrap(),
    )
    .map_err(Failure::Spec)?;
    Ok(())
}

/// Reads a phi table emitted by the forward command (or hand-written):
/// curve tables carry a `u` column, patch tables `u,v` (row-major in v).
fn read_phi_table(path: &Path) -> anyhow::Result<(GridShape, Vec<VecD>)> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = reader.headers()?.clone();
    let has_v = headers.iter().nth(1) == Some("v");
    let param_cols = if has_v { 2 } else { 1 };
    let dim = headers.len() - param_cols;
    if dim < 3 {
        anyhow::bail!("phi table needs at least three coordinate columns");
    }
    let mut params = Vec::new();
    let mut phi = Vec::new();
    for record in reader.records() {
        let record = record?;
        let cells: Result<Vec<f64>, _> = record.iter().map(|f| f.trim().parse()).collect();
        let cells = cells.map_err(|_| anyhow!("bad number in phi table"))?;
        params.push((cells[0], if has_v { cells[1] } else { 0.0 }));
        phi.push(VecD::new(cells[param_cols..].to_vec()));
    }
    if phi.len() < 9 {
        anyhow::bail!("phi table too short");
    }
    let shape = if has_v {
        let nv = params.iter().take_while(|(u, _)| *u == params[0].0).count();
        if nv < 2 || params.len() % nv != 0 {
            anyhow::bail!("phi table is not a rectangular grid");
        }
        let nu = params.len() / nv;
        GridShape {
            nu,
            nv,
            hu: params[nv].0 - params[0].0,
            hv: params[1].1 - params[0].1,
            periodic: false,
        }
    } else {
        let hu = params[1].0 - params[0].0;
        // seam detection: first and last positions close up
        let periodic = phi[0].dist(phi.last().unwrap()) < 1e-8;
        GridShape { nu: phi.len(), nv: 1, hu, hv: 0.0, periodic }
    };
    Ok((shape, phi))
}
