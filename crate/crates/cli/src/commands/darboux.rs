use std::path::Path;

use anyhow::anyhow;
use serde_json::json;

use focal_core::darboux3::{
    self as d3, classify_singularity, darboux_pipeline, focal_sheet, invariant_jets,
    sheet_to_obj, CurveOnSurface, SurfaceR3,
};
use focal_core::numkit::CurveSource;
use focal_core::Error as CoreError;

use crate::output::{fmt, write_text, Csv};
use crate::spec::{load_json, Curve3Spec, SurfaceSpec};
use crate::{CmdResult, Failure};

use super::Context;

/// Named curve-on-surface fixtures.
const FIXTURES: &[(&str, &str)] = &[
    ("circle-on-cone", "unit circle at height 1 on the quadric cone"),
    ("latitude-sphere", "latitude circle z = 0.6 on the unit sphere"),
    ("tilted-sphere", "tilted plane section of the unit sphere"),
    ("wavy-sphere", "non-planar rippled latitude on the unit sphere"),
    ("wavy-ellipsoid", "rippled closed curve on an ellipsoid"),
    ("graph-loop", "loop on the cubic-perturbed graph (generic focal sheet)"),
    ("cone-spiral", "outward spiral on the quadric cone"),
    ("gamma-z-oval", "(gamma, z) lift of a convex oval on its cone"),
];

pub fn list_fixtures() {
    for (name, what) in FIXTURES {
        println!("{name:18} {what}");
    }
}

fn fixture(name: &str) -> Option<(CurveSource, SurfaceR3)> {
    Some(match name {
        "circle-on-cone" => (d3::cone_base_circle(), SurfaceR3::quadric_cone()),
        "latitude-sphere" => (d3::latitude_circle(0.6), SurfaceR3::sphere(1.0)),
        "tilted-sphere" => (d3::tilted_circle([0.48, -0.36, 0.8], 0.6), SurfaceR3::sphere(1.0)),
        "wavy-sphere" => (d3::wavy_latitude(0.6, 0.1, 3), SurfaceR3::sphere(1.0)),
        "wavy-ellipsoid" => (
            d3::ellipsoid_wave((1.15, 0.95, 1.3), 1.15, 0.12, 2),
            SurfaceR3::ellipsoid(1.15, 0.95, 1.3),
        ),
        "graph-loop" => (d3::graph_loop(0.9, 0.25), SurfaceR3::perturbed_graph(0.25)),
        "cone-spiral" => (
            d3::cone_spiral(0.08),
            SurfaceR3::Cone { apex: focal_core::numkit::VecD::zeros(3) },
        ),
        "gamma-z-oval" => (
            d3::gamma_z_oval(vec![1.0, 0.0, 0.0, 0.1]),
            SurfaceR3::Cone { apex: focal_core::numkit::VecD::zeros(3) },
        ),
        _ => return None,
    })
}

pub fn run(
    ctx: &Context,
    curve_path: Option<&Path>,
    surface_path: Option<&Path>,
    fixture_name: Option<&str>,
    samples: usize,
    s_range: (f64, f64),
    mesh_s: usize,
) -> CmdResult {
    if samples < 16 || mesh_s < 16 {
        return Err(Failure::Spec(anyhow!("mesh densities must be at least 16")));
    }
    let (source, surface) = match (fixture_name, curve_path, surface_path) {
        (Some(name), None, None) => fixture(name)
            .ok_or_else(|| Failure::Spec(anyhow!("unknown fixture {name:?}")))?,
        (None, Some(cp), Some(sp)) => {
            let cs: Curve3Spec = load_json(cp).map_err(Failure::Spec)?;
            let ss: SurfaceSpec = load_json(sp).map_err(Failure::Spec)?;
            let base = cp.parent().unwrap_or(Path::new("."));
            let (source, _range) = cs.build(base).map_err(Failure::Spec)?;
            (source, ss.build().map_err(Failure::Spec)?)
        }
        _ => {
            return Err(Failure::Spec(anyhow!(
                "provide either --fixture or both --curve and --surface"
            )))
        }
    };
    let t_range = (0.0, std::f64::consts::TAU);
    let c = CurveOnSurface::new(source, surface, t_range);

    let containment = c.containment_residual(256);
    if containment > ctx.cfg.tol_residual {
        return Err(Failure::Numeric(anyhow!(
            "containment: curve leaves the surface (residual {containment:.3e})"
        )));
    }
    let frame = darboux_pipeline(c, samples, ctx.gauge, ctx.lambda0, &ctx.cfg)
        .map_err(|e| Failure::Numeric(anyhow!(name_invariant(&e))))?;

    let mut frame_csv = Csv::new("u,sigma,rho,tau,lambda,mu");
    for i in 0..frame.len() {
        frame_csv.row(&[
            frame.grid()[i],
            frame.sigma()[i],
            frame.rho()[i],
            frame.tau()[i],
            frame.lambda[i],
            frame.mu[i],
        ]);
    }
    write_text(&ctx.out, "frame.csv", &frame_csv.finish()).map_err(Failure::Spec)?;

    let mut sheet = focal_sheet(&frame, s_range, mesh_s, &ctx.cfg)
        .map_err(|e| Failure::Numeric(anyhow!(e)))?;
    label_parallel(ctx, &frame, &mut sheet).map_err(Failure::Numeric)?;

    write_text(&ctx.out, "focal.obj", &sheet_to_obj(&sheet, 1e-8)).map_err(Failure::Spec)?;

    let mut labels = Vec::new();
    for row in &sheet.rows {
        for p in &row.points {
            labels.push(json!({
                "u": fmt(row.u),
                "a": fmt(p.a),
                "b": fmt(p.b),
                "label": p.label.map(|l| l.as_str()).unwrap_or("Unlabeled"),
            }));
        }
    }
    let visual = d3::visual_contour_test(&frame, &ctx.cfg);
    let constant_q = d3::constant_q_test(&frame, &ctx.cfg);
    let sidecar = json!({
        "containment_residual": fmt(containment),
        "gauge_residual": fmt(frame.field.curve.gauge_residual),
        "normalization_residuals": frame.normalization_residuals.map(fmt),
        "structure_residuals": frame.structure_residuals.map(fmt),
        "developability_residual": fmt(d3::developability_residual(&frame, &ctx.cfg)),
        "visual_contour": visual.map(|o| json!({
            "point": o.point.as_slice().iter().map(|v| fmt(*v)).collect::<Vec<_>>(),
            "spread": fmt(o.spread),
        })),
        "constant_q": constant_q.map(|q| json!({
            "point": q.point.as_slice().iter().map(|v| fmt(*v)).collect::<Vec<_>>(),
            "spread": fmt(q.spread),
        })),
        "labels": labels,
    });
    write_text(
        &ctx.out,
        "labels.json",
        &serde_json::to_string_pretty(&sidecar).unwrap(),
    )
    .map_err(Failure::Spec)?;
    Ok(())
}

/// Labels the sheet, chunking rows across the requested worker threads.
/// Each row is written by exactly one worker, so the output is identical
/// for any thread count.
fn label_parallel(
    ctx: &Context,
    frame: &d3::DarbouxFrame,
    sheet: &mut d3::FocalSheet,
) -> anyhow::Result<()> {
    let jets = invariant_jets(frame).map_err(|e| anyhow!(e))?;
    let workers = ctx.threads.min(sheet.rows.len().max(1));
    if workers <= 1 {
        for row in &mut sheet.rows {
            for p in &mut row.points {
                p.label =
                    Some(classify_singularity(frame, &jets, row.u, p.a, p.b, &ctx.cfg)
                        .map_err(|e| anyhow!(e))?);
            }
        }
        return Ok(());
    }
    let cfg = &ctx.cfg;
    let jets_ref = &jets;
    let chunk_size = sheet.rows.len().div_ceil(workers);
    let errors = std::sync::Mutex::new(Vec::<CoreError>::new());
    std::thread::scope(|scope| {
        for chunk in sheet.rows.chunks_mut(chunk_size) {
            let errors = &errors;
            scope.spawn(move || {
                for row in chunk {
                    for p in &mut row.points {
                        match classify_singularity(frame, jets_ref, row.u, p.a, p.b, cfg) {
                            Ok(label) => p.label = Some(label),
                            Err(e) => errors.lock().unwrap().push(e),
                        }
                    }
                }
            });
        }
    });
    let errors = errors.into_inner().unwrap();
    if let Some(e) = errors.into_iter().next() {
        return Err(anyhow!(e));
    }
    Ok(())
}

fn name_invariant(e: &CoreError) -> String {
    match e {
        CoreError::DegeneratePoint { what, .. } if what.contains("gauge") => {
            format!("gauge ODE: {e}")
        }
        CoreError::DegeneratePoint { what, .. } if what.contains("containment") => {
            format!("containment: {e}")
        }
        CoreError::DegeneratePoint { .. } => format!("non-degeneracy: {e}"),
        other => other.to_string(),
    }
}
