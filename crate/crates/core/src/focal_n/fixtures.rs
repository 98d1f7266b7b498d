//! Closed-form frame-data families: products of planar curves, sections of
//! quadrics, and cones over hypersurfaces contained in a hyperplane.

use super::framedata::{FrameData, FrameSample};
use crate::affine_curves::PlanarAffineCurve;
use crate::blaschke::{curve_apparatus_from, is_proper_affine_sphere, BlaschkeApparatus};
use crate::darboux3::{
    darboux_pipeline, latitude_circle, lift_to_unit_height, tilted_circle, CurveOnSurface,
    DarbouxFrame, SurfaceR3,
};
use crate::numkit::{spread, CurveSource, ToleranceConfig, VecD};
use crate::{Error, Result};

/// The quadric {<x, x> = 1} of the diagonal form with the given signs.
#[derive(Debug, Clone)]
pub struct QuadricSpace {
    pub signs: Vec<f64>,
}

impl QuadricSpace {
    pub fn euclidean(dim: usize) -> Self {
        QuadricSpace { signs: vec![1.0; dim] }
    }

    pub fn form(&self, a: &VecD, b: &VecD) -> f64 {
        self.signs
            .iter()
            .enumerate()
            .map(|(i, e)| e * a[i] * b[i])
            .sum()
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }
}

/// Product immersion (alpha(u1), beta(u2)) in R^4: frame data in the basis
/// (X1, -X2) with xi = alpha'' + beta'', eta = (beta'' - alpha'')/2, so the
/// focal lines 1 - a sigma_k - b mu_k recover the evolute conditions
/// r = 1/k(alpha), s = 1/k(beta) under r = a - b/2, s = a + b/2.
pub struct ProductFixture {
    pub frame_data: FrameData,
    /// per sample: position (alpha, beta), the rulings xi1 = (alpha'', 0)
    /// and xi2 = (0, beta''), and the planar curvatures (k_alpha, k_beta)
    pub geometry: Vec<ProductSample>,
}

pub struct ProductSample {
    pub position: VecD,
    pub xi1: VecD,
    pub xi2: VecD,
    pub k_alpha: f64,
    pub k_beta: f64,
    pub evolute_alpha: Option<VecD>,
    pub evolute_beta: Option<VecD>,
}

/// Coefficient change between the (a, b) frame coordinates and the paper's
/// ruling coordinates (r, s).
pub fn ruling_coordinates(a: f64, b: f64) -> (f64, f64) {
    (a - 0.5 * b, a + 0.5 * b)
}

pub fn product_curves_fixture(
    alpha: &PlanarAffineCurve,
    beta: &PlanarAffineCurve,
    stride: usize,
    cfg: &ToleranceConfig,
) -> ProductFixture {
    let mut samples = Vec::new();
    let mut geometry = Vec::new();
    for i in (0..alpha.len()).step_by(stride.max(1)) {
        for j in (0..beta.len()).step_by(stride.max(1)) {
            let ka = alpha.rho()[i];
            let kb = beta.rho()[j];
            samples.push(FrameSample {
                params: vec![alpha.grid()[i], beta.grid()[j]],
                mu: vec![-0.5 * ka, 0.5 * kb],
                sigma: vec![vec![ka, 0.0], vec![0.0, kb]],
                h1: vec![vec![0.5, 0.0], vec![0.0, 0.5]],
            });
            let a2 = alpha.jets().jet_at(2, i);
            let b2 = beta.jets().jet_at(2, j);
            let zero2 = VecD::zeros(2);
            geometry.push(ProductSample {
                position: alpha.position(i).concat(beta.position(j)),
                xi1: a2.concat(&zero2),
                xi2: zero2.concat(b2),
                k_alpha: ka,
                k_beta: kb,
                evolute_alpha: (ka.abs() > cfg.tol_zero)
                    .then(|| alpha.position(i).axpy(1.0 / ka, a2)),
                evolute_beta: (kb.abs() > cfg.tol_zero)
                    .then(|| beta.position(j).axpy(1.0 / kb, b2)),
            });
        }
    }
    ProductFixture {
        frame_data: FrameData { n: 2, samples },
        geometry,
    }
}

/// Verdict of a quadric-section fixture.
pub struct QuadricSectionResult {
    pub umbilic: bool,
    pub sigma_spread: f64,
    pub mu_spread: f64,
    /// Axis the focal set collapses to (point and direction) for umbilic
    /// sections.
    pub focal_axis: Option<(VecD, VecD)>,
    /// Frame data extracted along the section (n = 1).
    pub frame_data: FrameData,
    pub frame: DarbouxFrame,
}

/// Section of the unit sphere in R^3 by the plane x . w = d, certified
/// through the curve-in-surface pipeline: umbilic exactly when sigma and mu
/// are constant. `curve` overrides the section curve (for the non-planar
/// negative cases).
pub fn quadric_section_fixture(
    q: &QuadricSpace,
    w: [f64; 3],
    d: f64,
    curve: Option<CurveSource>,
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<QuadricSectionResult> {
    if q.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: q.dim() });
    }
    if q.signs.iter().any(|s| *s != 1.0) {
        return Err(Error::InvalidConfig(
            "only the Euclidean sphere form is covered at n = 1".into(),
        ));
    }
    if d * d >= 1.0 {
        return Err(Error::EmptySection);
    }
    let section = match curve {
        Some(c) => c,
        None => {
            let wn = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
            tilted_circle(w, d / wn)
        }
    };
    let c = CurveOnSurface::new(section, SurfaceR3::sphere(1.0), (0.0, std::f64::consts::TAU));
    if c.containment_residual(256) > cfg.tol_residual {
        return Err(Error::InvalidConfig("section curve leaves the quadric".into()));
    }
    let frame = darboux_pipeline(c, samples, 1.0, 0.0, cfg)?;
    let sigma_spread = spread(frame.sigma());
    let mu_spread = spread(&frame.mu);
    let umbilic = sigma_spread < 1e-8 && mu_spread < 1e-8;
    let focal_axis = if umbilic {
        let o = crate::darboux3::visual_contour_test(&frame, cfg);
        let q_pt = crate::darboux3::constant_q_test(&frame, cfg);
        match (o, q_pt) {
            (Some(o), Some(q)) if o.point.dist(&q.point) > cfg.tol_zero => {
                let dir = (&q.point - &o.point).normalized();
                Some((o.point, dir))
            }
            (Some(o), _) => {
                // fall back to the focal line direction at the first sample
                let dir = frame.field.xi[0]
                    .scale(frame.mu[0])
                    .axpy(-frame.sigma()[0], &frame.eta[0])
                    .normalized();
                Some((o.point, dir))
            }
            _ => None,
        }
    } else {
        None
    };
    let frame_data = frame_data_from_curve(&frame);
    Ok(QuadricSectionResult {
        umbilic,
        sigma_spread,
        mu_spread,
        focal_axis,
        frame_data,
        frame,
    })
}

/// n = 1 frame data straight from a Darboux frame: sigma, mu, and
/// h1 = -lambda (phi'' = eta - lambda xi).
pub fn frame_data_from_curve(frame: &DarbouxFrame) -> FrameData {
    let samples = (0..frame.len())
        .map(|i| FrameSample {
            params: vec![frame.grid()[i]],
            mu: vec![frame.mu[i]],
            sigma: vec![vec![frame.sigma()[i]]],
            h1: vec![vec![-frame.lambda[i]]],
        })
        .collect();
    FrameData { n: 1, samples }
}

/// Closed-form frame constants of the n = 2 sphere section
/// {x in R^4 : |x| = 1, x_4 = d}: an umbilic, normally flat immersion with
/// one focal line of multiplicity 2.
pub fn sphere_section_frame_data_r4(d: f64, samples: usize) -> Result<FrameData> {
    if d * d >= 1.0 {
        return Err(Error::EmptySection);
    }
    let r = (1.0 - d * d).sqrt();
    // in the oriented frame with [X1, X2, eta, xi] = 1 and positive metric,
    // sigma = d/r and mu = -1 with eta = p (centro-affine field); verified
    // against the n = 1 pipeline on the analogous R^3 latitude
    let sigma = d / r;
    let mu = -1.0;
    let mk = |t: f64| FrameSample {
        params: vec![t],
        mu: vec![mu, mu],
        sigma: vec![vec![sigma, 0.0], vec![0.0, sigma]],
        h1: vec![vec![-d / r, 0.0], vec![0.0, -d / r]],
    };
    Ok(FrameData {
        n: 2,
        samples: (0..samples).map(|k| mk(k as f64)).collect(),
    })
}

/// Verdict of the hyperplane-section fixture: the cone over a hypersurface
/// N contained in a hyperplane is umbilic exactly when N is a proper affine
/// sphere in its hyperplane.
pub struct HyperplaneSectionResult {
    pub umbilic: bool,
    pub sphere_center: Option<VecD>,
    /// Darboux frame of the lifted curve on the cone (n = 1 fixtures).
    pub frame: DarbouxFrame,
    pub sigma_spread: f64,
    pub mu_spread: f64,
}

/// N = planar curve in the plane z = height, M = cone over N with the given
/// apex. The planar curve arrives in affine arc-length.
pub fn hyperplane_section_fixture(
    base: &PlanarAffineCurve,
    height: f64,
    apex: VecD,
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<HyperplaneSectionResult> {
    if (apex[2] - height).abs() < cfg.tol_zero {
        return Err(Error::ApexOnHyperplane);
    }
    // affine-sphere test of N inside its own plane
    let apparatus = BlaschkeApparatus::Curve(curve_apparatus_from(base.clone()));
    let center2 = is_proper_affine_sphere(&apparatus, cfg);

    // lift onto the cone and run the curve-in-surface pipeline
    let planar_jets = base.jets().clone();
    let lifted = lift_void(planar_jets, height)?;
    let c = CurveOnSurface::new(
        lifted,
        SurfaceR3::Cone { apex: apex.clone() },
        (0.0, base.total_length()),
    );
    let frame = darboux_pipeline(c, samples, 1.0, 0.0, cfg)?;
    let sigma_spread = spread(frame.sigma());
    let mu_spread = spread(&frame.mu);
    let umbilic = sigma_spread < cfg.tol_residual && mu_spread < cfg.tol_residual;
    Ok(HyperplaneSectionResult {
        umbilic,
        sphere_center: center2.map(|s| s.center),
        frame,
        sigma_spread,
        mu_spread,
    })
}

fn lift_void(jets: crate::numkit::JetCurve, height: f64) -> Result<CurveSource> {
    let n = jets.len();
    let order = jets.order().min(4);
    let mut lifted: Vec<Vec<VecD>> = vec![Vec::with_capacity(n); order + 1];
    for (k, level) in lifted.iter_mut().enumerate() {
        for i in 0..n {
            let v = jets.jet_at(k, i);
            let last = if k == 0 { height } else { 0.0 };
            level.push(VecD::new(vec![v[0], v[1], last]));
        }
    }
    Ok(CurveSource::Sampled(crate::numkit::JetCurve::new(
        jets.grid().to_vec(),
        lifted,
    )?))
}

/// use of latitude_circle keeps the R^3 sphere fixtures in one place
pub fn horizontal_section_curve(d: f64) -> CurveSource {
    latitude_circle(d)
}

/// planar lift re-export for the CLI fixture registry
pub fn lifted_planar_curve(src: CurveSource) -> CurveSource {
    lift_to_unit_height(src)
}
