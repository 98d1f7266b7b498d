use std::path::Path;

use anyhow::anyhow;
use num_traits::ToPrimitive;
use serde_json::json;

use focal_core::focal_n::{
    bifurcation_polynomial, commuting_and_semiumbilic, lines_match_poly, sample_zero_set,
    DENOMINATOR_CAP,
};

use crate::output::{fmt, write_text, Csv};
use crate::spec::{load_json, FrameDataSpec};
use crate::{CmdResult, Failure};

use super::Context;

pub fn run(ctx: &Context, framedata_path: &Path, window: &str, locus_grid: usize) -> CmdResult {
    let spec: FrameDataSpec = load_json(framedata_path).map_err(Failure::Spec)?;
    let fd = spec.build().map_err(Failure::Spec)?;
    let win: Vec<f64> = window
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Spec(anyhow!("bad window {window:?}")))?;
    if win.len() != 4 || win[0] >= win[1] || win[2] >= win[3] {
        return Err(Failure::Spec(anyhow!(
            "window must be a_min,a_max,b_min,b_max with increasing bounds"
        )));
    }

    // coefficient columns coeff_ij ordered by total degree, then a-degree
    let mut keys: Vec<(u32, u32)> = Vec::new();
    for total in 0..=(fd.n as u32) {
        for i in (0..=total).rev() {
            keys.push((i, total - i));
        }
    }
    let header = std::iter::once("sample".to_string())
        .chain(keys.iter().map(|(i, j)| format!("coeff_{i}{j}")))
        .collect::<Vec<_>>()
        .join(",");
    let mut coeff_csv = Csv::new(&header);
    let mut locus_csv = Csv::new("sample,a,b");
    let mut degree_max = 0u32;
    let mut summaries = Vec::new();
    for (idx, sample) in fd.samples.iter().enumerate() {
        let locus = bifurcation_polynomial(&fd, idx, DENOMINATOR_CAP);
        degree_max = degree_max.max(locus.degree);
        let row: Vec<f64> = keys
            .iter()
            .map(|k| locus.poly.coeff(*k).to_f64().unwrap_or(f64::NAN))
            .collect();
        coeff_csv.row_mixed(&[idx.to_string()], &row);
        for (a, b) in sample_zero_set(
            &locus.poly,
            (win[0], win[1]),
            (win[2], win[3]),
            locus_grid,
        ) {
            locus_csv.row_mixed(&[idx.to_string()], &[a, b]);
        }
        let commute = commuting_and_semiumbilic(&fd, idx, &ctx.cfg);
        let factor_gap = lines_match_poly(&locus, DENOMINATOR_CAP);
        summaries.push(json!({
            "sample": idx,
            "params": sample.params.iter().map(|v| fmt(*v)).collect::<Vec<_>>(),
            "degree": locus.degree,
            "commute": commute.commute,
            "commutator_norm": fmt(commute.commutator_norm),
            "semiumbilic": commute.semiumbilic,
            "lines": locus.lines.as_ref().map(|ls| ls
                .iter()
                .map(|l| l.iter().map(|v| fmt(*v)).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
            "multiplicity": locus.multiplicity,
            "factorization_gap": factor_gap.map(fmt),
        }));
    }
    write_text(&ctx.out, "q_coefficients.csv", &coeff_csv.finish()).map_err(Failure::Spec)?;
    write_text(&ctx.out, "locus.csv", &locus_csv.finish()).map_err(Failure::Spec)?;
    let summary = json!({
        "n": fd.n,
        "samples": fd.samples.len(),
        "degree_max": degree_max,
        "degree_bound_holds": degree_max <= fd.n as u32,
        "per_sample": summaries,
    });
    write_text(
        &ctx.out,
        "summary.json",
        &serde_json::to_string_pretty(&summary).unwrap(),
    )
    .map_err(Failure::Spec)?;
    Ok(())
}
