//! JSON input specifications: curves, surfaces and frame data.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use focal_core::affine_curves::shapes;
use focal_core::darboux3::{self as d3, SurfaceR3};
use focal_core::focal_n::{FrameData, FrameSample};
use focal_core::numkit::{derive_jets, read_curve_csv, CurveSource};

/// Planar curve specification.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    FourierOval {
        radial_coeffs: Vec<f64>,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    Circle {
        r: f64,
    },
    ParametricPoly {
        x: Vec<f64>,
        y: Vec<f64>,
        #[serde(default)]
        t_range: Option<[f64; 2]>,
    },
    Csv {
        path: PathBuf,
    },
}

impl CurveSpec {
    /// Builds the curve source together with its parameter range.
    pub fn build(&self, base: &Path) -> Result<(CurveSource, (f64, f64))> {
        Ok(match self {
            CurveSpec::FourierOval { radial_coeffs } => {
                if radial_coeffs.is_empty() {
                    bail!("fourier_oval needs at least one coefficient");
                }
                (shapes::fourier_oval(radial_coeffs.clone()), (0.0, TAU))
            }
            CurveSpec::Ellipse { a, b } => {
                if *a <= 0.0 || *b <= 0.0 {
                    bail!("ellipse semi-axes must be positive");
                }
                (shapes::ellipse(*a, *b), (0.0, TAU))
            }
            CurveSpec::Circle { r } => {
                if *r <= 0.0 {
                    bail!("circle radius must be positive");
                }
                (shapes::circle(*r), (0.0, TAU))
            }
            CurveSpec::ParametricPoly { x, y, t_range } => {
                let range = t_range.map(|r| (r[0], r[1])).unwrap_or((-1.0, 1.0));
                (shapes::parametric_poly(x.clone(), y.clone()), range)
            }
            CurveSpec::Csv { path } => {
                let full = base.join(path);
                let table = read_curve_csv(&full)
                    .with_context(|| format!("reading curve table {}", full.display()))?;
                let range = (table.grid[0], *table.grid.last().unwrap());
                let jets = derive_jets(&table.grid, &table.positions, 4)
                    .context("differentiating the sampled curve")?;
                (CurveSource::Sampled(jets), range)
            }
        })
    }
}

/// Spatial curve specification for the darboux and spatial pipelines.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Curve3Spec {
    Helix,
    PerturbedHelix { eps: f64 },
    CubicTwist { t_range: [f64; 2] },
    Latitude { height: f64 },
    TiltedCircle { w: [f64; 3], d: f64 },
    ConeBase,
    ConeSpiral { alpha: f64 },
    WavyLatitude { height: f64, amp: f64, freq: usize },
    EllipsoidWave { axes: [f64; 3], theta0: f64, eps: f64, m: usize },
    GraphLoop { radius: f64, c3: f64 },
    GammaZ { radial_coeffs: Vec<f64> },
    Lift { base: Box<CurveSpec> },
    Csv { path: PathBuf },
}

impl Curve3Spec {
    pub fn build(&self, base: &Path) -> Result<(CurveSource, (f64, f64))> {
        Ok(match self {
            Curve3Spec::Helix => (shapes::helix(), (0.0, TAU)),
            Curve3Spec::PerturbedHelix { eps } => (shapes::perturbed_helix(*eps), (0.0, TAU)),
            Curve3Spec::CubicTwist { t_range } => {
                (shapes::cubic_twist(), (t_range[0], t_range[1]))
            }
            Curve3Spec::Latitude { height } => {
                if height.abs() >= 1.0 {
                    bail!("latitude height must satisfy |h| < 1");
                }
                (d3::latitude_circle(*height), (0.0, TAU))
            }
            Curve3Spec::TiltedCircle { w, d } => (d3::tilted_circle(*w, *d), (0.0, TAU)),
            Curve3Spec::ConeBase => (d3::cone_base_circle(), (0.0, TAU)),
            Curve3Spec::ConeSpiral { alpha } => (d3::cone_spiral(*alpha), (0.0, TAU)),
            Curve3Spec::WavyLatitude { height, amp, freq } => {
                (d3::wavy_latitude(*height, *amp, *freq), (0.0, TAU))
            }
            Curve3Spec::EllipsoidWave { axes, theta0, eps, m } => (
                d3::ellipsoid_wave((axes[0], axes[1], axes[2]), *theta0, *eps, *m),
                (0.0, TAU),
            ),
            Curve3Spec::GraphLoop { radius, c3 } => (d3::graph_loop(*radius, *c3), (0.0, TAU)),
            Curve3Spec::GammaZ { radial_coeffs } => {
                (d3::gamma_z_oval(radial_coeffs.clone()), (0.0, TAU))
            }
            Curve3Spec::Lift { base } => {
                let (src, range) = base.build(Path::new("."))?;
                (d3::lift_to_unit_height(src), range)
            }
            Curve3Spec::Csv { path } => {
                let full = base.join(path);
                let table = read_curve_csv(&full)
                    .with_context(|| format!("reading curve table {}", full.display()))?;
                if table.positions[0].dim() != 3 {
                    bail!("spatial curve table must have three coordinate columns");
                }
                let range = (table.grid[0], *table.grid.last().unwrap());
                let jets = derive_jets(&table.grid, &table.positions, 4)
                    .context("differentiating the sampled curve")?;
                (CurveSource::Sampled(jets), range)
            }
        })
    }
}

/// Surface specification for the darboux pipeline.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Sphere { r: f64 },
    Ellipsoid { a: f64, b: f64, c: f64 },
    Cone { apex: [f64; 3] },
    Cylinder { r: f64 },
    PerturbedGraph { c3: f64 },
    ImplicitPoly { terms: Vec<MonomialTerm> },
}

#[derive(Debug, Deserialize)]
pub struct MonomialTerm {
    pub powers: [usize; 3],
    pub coeff: f64,
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<SurfaceR3> {
        Ok(match self {
            SurfaceSpec::Sphere { r } => SurfaceR3::sphere(*r),
            SurfaceSpec::Ellipsoid { a, b, c } => SurfaceR3::ellipsoid(*a, *b, *c),
            SurfaceSpec::Cone { apex } => SurfaceR3::Cone {
                apex: focal_core::numkit::VecD::new(apex.to_vec()),
            },
            SurfaceSpec::Cylinder { r } => SurfaceR3::cylinder(*r),
            SurfaceSpec::PerturbedGraph { c3 } => SurfaceR3::perturbed_graph(*c3),
            SurfaceSpec::ImplicitPoly { terms } => {
                if terms.is_empty() {
                    bail!("implicit_poly needs at least one term");
                }
                SurfaceR3::Implicit(d3::ImplicitSurface::from_monomials(
                    terms
                        .iter()
                        .map(|t| (t.powers[0], t.powers[1], t.powers[2], t.coeff))
                        .collect(),
                ))
            }
        })
    }
}

/// Hypersurface specification for the umbilic construction: a planar curve
/// (n = 1) or an analytic patch (n = 2).
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HypersurfaceSpec {
    Curve {
        spec: CurveSpec,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    SpherePatch {
        r: f64,
        #[serde(default = "default_patch")]
        grid: [usize; 2],
    },
    EllipsoidPatch {
        a: f64,
        b: f64,
        c: f64,
        #[serde(default = "default_patch")]
        grid: [usize; 2],
    },
    Paraboloid {
        half_width: f64,
        #[serde(default = "default_patch_n")]
        n: usize,
    },
    GraphPoly {
        terms: Vec<GraphTerm>,
        half_width: f64,
        #[serde(default = "default_patch_n")]
        n: usize,
    },
}

#[derive(Debug, Deserialize)]
pub struct GraphTerm {
    pub powers: [usize; 2],
    pub coeff: f64,
}

fn default_samples() -> usize {
    257
}

fn default_patch() -> [usize; 2] {
    [65, 129]
}

fn default_patch_n() -> usize {
    49
}

/// Frame data specification: constants or per-sample tables.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDataSpec {
    pub n: usize,
    pub grid: Vec<f64>,
    pub mu: MuSpec,
    pub sigma: MatrixSpec,
    pub h1: MatrixSpec,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MuSpec {
    Constant(Vec<f64>),
    PerSample(Vec<Vec<f64>>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Constant(Vec<Vec<f64>>),
    PerSample(Vec<Vec<Vec<f64>>>),
}

impl FrameDataSpec {
    pub fn build(&self) -> Result<FrameData> {
        let m = self.grid.len();
        if m == 0 {
            bail!("frame data needs a nonempty grid");
        }
        let mu_at = |k: usize| -> Result<Vec<f64>> {
            Ok(match &self.mu {
                MuSpec::Constant(v) => v.clone(),
                MuSpec::PerSample(rows) => rows
                    .get(k)
                    .ok_or_else(|| anyhow!("mu rows shorter than the grid"))?
                    .clone(),
            })
        };
        let mat_at = |spec: &MatrixSpec, k: usize| -> Result<Vec<Vec<f64>>> {
            Ok(match spec {
                MatrixSpec::Constant(v) => v.clone(),
                MatrixSpec::PerSample(rows) => rows
                    .get(k)
                    .ok_or_else(|| anyhow!("matrix rows shorter than the grid"))?
                    .clone(),
            })
        };
        let mut samples = Vec::with_capacity(m);
        for k in 0..m {
            samples.push(FrameSample {
                params: vec![self.grid[k]],
                mu: mu_at(k)?,
                sigma: mat_at(&self.sigma, k)?,
                h1: mat_at(&self.h1, k)?,
            });
        }
        let fd = FrameData { n: self.n, samples };
        fd.validate()
            .map_err(|e| anyhow!("invalid frame data: {e}"))?;
        Ok(fd)
    }
}

/// Parses a JSON spec file, reporting line/column on syntax errors.
pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading spec {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        anyhow!(
            "malformed spec {}: {} (line {}, column {})",
            path.display(),
            e,
            e.line(),
            e.column()
        )
    })
}
