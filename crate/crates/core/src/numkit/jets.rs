//! Curves with derivative jets: sampled tables differentiated by finite
//! differences, and analytic sources that evaluate exact jets anywhere.

use super::jet4::Jet4;
use super::table;
use super::vecd::VecD;
use crate::{Error, Result};

/// A parametrized curve sampled on a strictly increasing grid, carrying
/// derivatives of order 0..=`order` at every sample.
#[derive(Debug, Clone)]
pub struct JetCurve {
    grid: Vec<f64>,
    /// jets[k][i]: k-th derivative at grid[i].
    jets: Vec<Vec<VecD>>,
    /// Samples whose stencils were one-sided (endpoint windows).
    low_confidence: Vec<bool>,
}

impl JetCurve {
    pub fn new(grid: Vec<f64>, jets: Vec<Vec<VecD>>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::GridTooCoarse { needed: 2, got: grid.len() });
        }
        for w in grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::BadTable("grid not strictly increasing".into()));
            }
        }
        let n = grid.len();
        for level in &jets {
            if level.len() != n {
                return Err(Error::BadTable("jet table length mismatch".into()));
            }
        }
        Ok(JetCurve { low_confidence: vec![false; n], grid, jets })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn order(&self) -> usize {
        self.jets.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.jets[0][0].dim()
    }

    /// k-th derivative table.
    pub fn jet(&self, k: usize) -> &[VecD] {
        &self.jets[k]
    }

    pub fn jet_at(&self, k: usize, i: usize) -> &VecD {
        &self.jets[k][i]
    }

    pub fn position(&self, i: usize) -> &VecD {
        &self.jets[0][i]
    }

    pub fn low_confidence(&self) -> &[bool] {
        &self.low_confidence
    }

    /// Endpoint jets agree within `tol` in every order up to `order`.
    pub fn is_closed(&self, tol: f64) -> bool {
        let last = self.len() - 1;
        self.jets
            .iter()
            .all(|level| level[0].dist(&level[last]) <= tol)
    }

    /// Grid spacing; the grid must be uniform.
    pub fn spacing(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }
}

/// Derivative jets of a position table on a uniform grid, by centered
/// five-point stencils (one Richardson step for orders 1-2, plain central
/// stencils for orders 3-4). Endpoint samples use shifted windows and are
/// flagged low-confidence.
pub fn derive_jets(grid: &[f64], positions: &[VecD], order: usize) -> Result<JetCurve> {
    assert!((1..=4).contains(&order), "jet order must be 1..=4");
    let needed = 2 * order + 9;
    if grid.len() < needed {
        return Err(Error::GridTooCoarse { needed, got: grid.len() });
    }
    if grid.len() != positions.len() {
        return Err(Error::BadTable("grid/position length mismatch".into()));
    }
    let h = grid[1] - grid[0];
    for (i, w) in grid.windows(2).enumerate() {
        if ((w[1] - w[0]) - h).abs() > 1e-12 * h.abs().max(1.0) {
            return Err(Error::NonUniformGrid { index: i + 1 });
        }
    }
    let mut jets = vec![positions.to_vec()];
    for m in 1..=order {
        jets.push(table::fd_derive_vec(positions, h, m, 5, false));
    }
    let mut curve = JetCurve::new(grid.to_vec(), jets)?;
    let n = curve.len();
    for i in 0..n {
        if i < 2 || i >= n - 2 {
            curve.low_confidence[i] = true;
        }
    }
    Ok(curve)
}

/// An analytic curve: a closure producing per-component [`Jet4`] values.
pub struct AnalyticCurve {
    dim: usize,
    f: Box<dyn Fn(f64) -> Vec<Jet4> + Send + Sync>,
}

impl AnalyticCurve {
    pub fn new(dim: usize, f: impl Fn(f64) -> Vec<Jet4> + Send + Sync + 'static) -> Self {
        AnalyticCurve { dim, f: Box::new(f) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Jets [position, d1, ..., d_order] at parameter t, order <= 4.
    pub fn jets_at(&self, t: f64, order: usize) -> Vec<VecD> {
        let comps = (self.f)(t);
        debug_assert_eq!(comps.len(), self.dim);
        (0..=order)
            .map(|k| VecD::new(comps.iter().map(|j| j.d[k]).collect()))
            .collect()
    }
}

/// Where a curve's jets come from: an exact analytic callback or a sampled
/// table (interpolated off-grid, finite-difference jets).
pub enum CurveSource {
    Analytic(AnalyticCurve),
    Sampled(JetCurve),
}

impl CurveSource {
    pub fn analytic(dim: usize, f: impl Fn(f64) -> Vec<Jet4> + Send + Sync + 'static) -> Self {
        CurveSource::Analytic(AnalyticCurve::new(dim, f))
    }

    pub fn dim(&self) -> usize {
        match self {
            CurveSource::Analytic(a) => a.dim(),
            CurveSource::Sampled(j) => j.dim(),
        }
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self, CurveSource::Analytic(_))
    }

    pub fn jets_at(&self, t: f64, order: usize) -> Vec<VecD> {
        match self {
            CurveSource::Analytic(a) => a.jets_at(t, order),
            CurveSource::Sampled(c) => {
                let window = 6.min(c.len());
                (0..=order.min(c.order()))
                    .map(|k| table::interp_vec(c.grid(), c.jet(k), t, window))
                    .collect()
            }
        }
    }

    /// Sample the source on a grid, producing a jet table.
    pub fn sample(&self, grid: &[f64], order: usize) -> Result<JetCurve> {
        let mut jets: Vec<Vec<VecD>> = vec![Vec::with_capacity(grid.len()); order + 1];
        for &t in grid {
            let j = self.jets_at(t, order);
            if j.len() <= order {
                return Err(Error::InsufficientJets { needed: order, got: j.len() - 1 });
            }
            for (k, level) in jets.iter_mut().enumerate() {
                level.push(j[k].clone());
            }
        }
        JetCurve::new(grid.to_vec(), jets)
    }
}
