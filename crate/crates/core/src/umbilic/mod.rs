//! The co-normal construction of umbilic, normally flat immersions and its
//! converse: phi = (nu, nu . (f - O)) for a hypersurface f and origin O,
//! verification of the frame and Laplacian identities, hyperplanarity, and
//! the linear-solve recovery of (f, O) from phi.

mod construct;
mod inverse;

pub use construct::{
    construct_umbilic, hyperplanarity_test, verify_laplacian_identity, GridShape,
    UmbilicImmersion,
};
pub use inverse::{derivatives_from_table, inverse_construction, invert_immersion, InverseResult};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_curves::shapes;
    use crate::blaschke::{
        curve_apparatus, is_proper_affine_sphere, patch_apparatus, patches, BlaschkeApparatus,
    };
    use crate::numkit::{ToleranceConfig, VecD};
    use std::f64::consts::TAU;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn circle_immersion() -> (UmbilicImmersion, BlaschkeApparatus) {
        let app = BlaschkeApparatus::Curve(
            curve_apparatus(&shapes::circle(1.0), (0.0, TAU), 257, &cfg()).unwrap(),
        );
        let imm = construct_umbilic(&app, &VecD::zeros(2)).unwrap();
        (imm, app)
    }

    fn sphere_immersion() -> (UmbilicImmersion, BlaschkeApparatus) {
        let app =
            BlaschkeApparatus::Patch(patch_apparatus(&patches::sphere(1.0, 65, 129)).unwrap());
        let imm = construct_umbilic(&app, &VecD::zeros(3)).unwrap();
        (imm, app)
    }

    #[test]
    fn circle_construction_closed_form() {
        let (imm, app) = circle_immersion();
        // phi = (-cos, -sin, -1): a circle in the plane x3 = -1
        for (k, p) in imm.phi.iter().enumerate() {
            let f = app.positions()[k].clone();
            assert!(p.truncate(2).dist(&f.scale(-1.0)) < 1e-9);
            assert!((p[2] + 1.0).abs() < 1e-9);
        }
        assert!(imm.frame_det_residual < 1e-9, "det {}", imm.frame_det_residual);
        assert!(imm.metric_agreement < 1e-7, "metric {}", imm.metric_agreement);
        assert!(imm.contour_residual < 1e-8);
    }

    #[test]
    fn circle_laplacian_identity() {
        let (imm, app) = circle_immersion();
        // (1/1) phi'' = -Q - phi with H = 1
        let res = verify_laplacian_identity(&imm, &app).unwrap();
        assert!(res < 1e-6, "Laplacian residual {res}");
    }

    #[test]
    fn circle_hyperplane() {
        let (imm, _) = circle_immersion();
        let (plane, residual) = hyperplanarity_test(&imm, 1e-8);
        let plane = plane.expect("hyperplanar");
        assert!(residual < 1e-10);
        // plane x3 = -1: normal parallel to e3, offset -1 after orientation
        let n = &plane.normal;
        assert!(n[0].abs() < 1e-9 && n[1].abs() < 1e-9);
        assert!((n[2] - 1.0).abs() < 1e-9);
        assert!((plane.offset + 1.0).abs() < 1e-9);
    }

    #[test]
    fn sphere_construction() {
        let (imm, app) = sphere_immersion();
        for (k, p) in imm.phi.iter().enumerate() {
            let f = app.positions()[k].clone();
            assert!(p.truncate(3).dist(&f.scale(-1.0)) < 1e-7);
            assert!((p[3] + 1.0).abs() < 1e-7);
        }
        assert!(imm.frame_det_residual < 1e-6, "det {}", imm.frame_det_residual);
        assert!(imm.metric_agreement < 1e-6, "metric {}", imm.metric_agreement);
        assert!(imm.contour_residual < 1e-8);
        let res = verify_laplacian_identity(&imm, &app).unwrap();
        assert!(res < 1e-6, "Laplacian residual {res}");
        let (plane, residual) = hyperplanarity_test(&imm, 1e-8);
        assert!(plane.is_some(), "sphere construction must be hyperplanar ({residual})");
    }

    #[test]
    fn paraboloid_construction_is_not_hyperplanar() {
        let app =
            BlaschkeApparatus::Patch(patch_apparatus(&patches::paraboloid(1.0, 33)).unwrap());
        let imm = construct_umbilic(&app, &VecD::zeros(3)).unwrap();
        // z = nu . f = -(u^2 + v^2)/2 is genuinely curved
        let (plane, residual) = hyperplanarity_test(&imm, 1e-8);
        assert!(plane.is_none());
        assert!(residual > 1e-2, "plane-fit residual {residual}");
        // agreement with the affine-sphere probe
        assert!(is_proper_affine_sphere(&app, &cfg()).is_none());
        // H = 0: (1/2) Lap phi = -Q
        let res = verify_laplacian_identity(&imm, &app).unwrap();
        assert!(res < 1e-6, "Laplacian residual {res}");
    }

    #[test]
    fn ellipsoid_construction_is_hyperplanar() {
        let app = BlaschkeApparatus::Patch(
            patch_apparatus(&patches::ellipsoid(1.2, 0.9, 1.05, 49, 97)).unwrap(),
        );
        let imm = construct_umbilic(&app, &VecD::zeros(3)).unwrap();
        let (plane, residual) = hyperplanarity_test(&imm, 1e-8);
        assert!(plane.is_some(), "residual {residual}");
        assert!(is_proper_affine_sphere(&app, &cfg()).is_some());
    }

    #[test]
    fn perturbed_graph_agreement() {
        let patch = patches::graph(vec![(2, 0, 0.5), (0, 2, 0.5), (3, 0, 0.1)], 1.0, 33);
        let app = BlaschkeApparatus::Patch(patch_apparatus(&patch).unwrap());
        let imm = construct_umbilic(&app, &VecD::zeros(3)).unwrap();
        let (plane, _) = hyperplanarity_test(&imm, 1e-8);
        assert!(plane.is_none());
        assert!(is_proper_affine_sphere(&app, &cfg()).is_none());
    }

    #[test]
    fn inverse_recovers_circle() {
        // phi = (-cos u, -sin u, -1) with origin 0 gives back the circle
        let n = 257;
        let grid = crate::numkit::uniform_grid(0.0, TAU, n);
        let h = grid[1] - grid[0];
        let phi: Vec<VecD> = grid
            .iter()
            .map(|u| VecD::new(vec![-u.cos(), -u.sin(), -1.0]))
            .collect();
        let dphi: Vec<VecD> = grid
            .iter()
            .map(|u| VecD::new(vec![u.sin(), -u.cos(), 0.0]))
            .collect();
        let shape = GridShape { nu: n, nv: 1, hu: h, hv: 0.0, periodic: true };
        let out =
            inverse_construction(1, &shape, &phi, &[dphi], &VecD::zeros(2)).unwrap();
        for (k, u) in grid.iter().enumerate() {
            let expect = VecD::new(vec![u.cos(), u.sin()]);
            assert!(out.f[k].dist(&expect) < 1e-10);
        }
        assert!(out.conormal_residual < 1e-7, "conormal {}", out.conormal_residual);
        assert!(out.det_residual < 1e-7, "det {}", out.det_residual);
    }

    #[test]
    fn round_trip_on_circle_and_sphere() {
        let (imm, app) = circle_immersion();
        let out = invert_immersion(&imm, &VecD::zeros(2)).unwrap();
        for (k, f) in out.f.iter().enumerate() {
            assert!(f.dist(&app.positions()[k]) < 1e-6, "circle round trip");
        }

        let (imm2, app2) = sphere_immersion();
        let out2 = invert_immersion(&imm2, &VecD::zeros(3)).unwrap();
        for (k, f) in out2.f.iter().enumerate() {
            assert!(f.dist(&app2.positions()[k]) < 1e-6, "sphere round trip");
        }
        assert!(out2.conormal_residual < 1e-6);
        assert!(out2.det_residual < 1e-5, "det residual {}", out2.det_residual);
    }

    #[test]
    fn round_trip_with_offset_origin() {
        // the translation ambiguity: recovering with the same origin used in
        // the construction reproduces f exactly
        let app = BlaschkeApparatus::Curve(
            curve_apparatus(&shapes::ellipse(1.3, 0.8), (0.0, TAU), 257, &cfg()).unwrap(),
        );
        let origin = VecD::new(vec![0.2, -0.1]);
        let imm = construct_umbilic(&app, &origin).unwrap();
        let out = invert_immersion(&imm, &origin).unwrap();
        for (k, f) in out.f.iter().enumerate() {
            assert!(f.dist(&app.positions()[k]) < 1e-6);
        }
    }

    #[test]
    fn constant_conormal_is_singular() {
        let n = 64;
        let grid = crate::numkit::uniform_grid(0.0, 1.0, n);
        let phi: Vec<VecD> = grid
            .iter()
            .map(|_| VecD::new(vec![1.0, 0.0, 0.5]))
            .collect();
        let dphi: Vec<VecD> = grid.iter().map(|_| VecD::zeros(3)).collect();
        let shape = GridShape {
            nu: n,
            nv: 1,
            hu: grid[1] - grid[0],
            hv: 0.0,
            periodic: false,
        };
        assert!(matches!(
            inverse_construction(1, &shape, &phi, &[dphi], &VecD::zeros(2)),
            Err(crate::Error::SingularSystem { .. })
        ));
    }
}
