//! Curves contained in surfaces of 3-space: Darboux frames, the invariants
//! sigma, rho, tau, lambda, mu, the ruled developable focal sheet (envelope
//! of affine normal planes) and its singularity labels.

mod frame;
mod shapes3;
mod sheet;
mod surface;

pub use frame::{
    check_nondegenerate, complete_frame, constant_q_test, darboux_field, darboux_pipeline,
    developability_residual, flattening_points, reparam_darboux, sigma_scale_check,
    visual_contour_test, ConstantPoint, CurveOnSurface, DarbouxCurve, DarbouxField, DarbouxFrame,
    FlatteningReport, NondegeneracyReport,
};
pub use shapes3::{
    affine_image3, cone_base_circle, cone_spiral, ellipsoid_wave, gamma_z_curve, gamma_z_oval,
    graph_loop, latitude_circle, lift_to_unit_height, tilted_circle, wavy_latitude,
};
pub use sheet::{
    classify_by_distance_jets, classify_singularity, focal_sheet, invariant_jets, label_sheet,
    regression_point, sheet_plane_residual, sheet_to_obj, swallowtail_candidates, FocalSheet,
    InvariantJets, SheetPoint, SheetRow, SingLabel,
};
pub use surface::{ImplicitSurface, SurfaceR3};
