//! General-n bifurcation machinery from frame data: the polynomial q(a, b)
//! whose zero set is the affine focal locus in the normal-plane coordinates,
//! commuting and semiumbilic tests, focal-set regularity, and the
//! closed-form fixtures (products of curves, quadric and hyperplane
//! sections, envelopes of tangent spaces).

mod envelope;
mod fixtures;
mod framedata;
mod poly;

pub use envelope::{envelope_tangent_spaces, EnvelopeSamples};
pub use fixtures::{
    frame_data_from_curve, hyperplane_section_fixture, horizontal_section_curve,
    lifted_planar_curve, product_curves_fixture, quadric_section_fixture, ruling_coordinates,
    sphere_section_frame_data_r4, HyperplaneSectionResult, ProductFixture, ProductSample,
    QuadricSectionResult, QuadricSpace,
};
pub use framedata::{
    bifurcation_polynomial, commuting_and_semiumbilic, lines_match_poly, regularity_probe,
    BifurcationLocus, CommuteReport, FrameData, FrameSample, RegularityReport, DENOMINATOR_CAP,
};
pub use poly::{rational_from_f64, sample_zero_set, BivarPoly};
