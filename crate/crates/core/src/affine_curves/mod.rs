//! Equi-affine theory of planar and spatial curves: affine arc-length,
//! affine curvature, evolutes, support functions, vertex counting, the
//! reconstruction ODE, spatial invariants and the cylindricity test.

mod planar;
pub mod shapes;
mod spatial;

pub use planar::{
    affine_evolute, area_function, count_vertices, cyclic_zeros, reconstruct_from_curvature,
    reparam_affine_planar, support_function, Evolute, PlanarAffineCurve, ReconstructionSeed,
    SupportFunction, VertexCount, CLOSURE_TOL,
};
pub(crate) use planar::invert_monotone;
pub use spatial::{
    cylindricity_test, lift_with_area, planar_embed, projective_density, spatial_invariants,
    spatial_invariants_from_jets, SpatialAffineCurve,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{fd_derive_vec, sup_norm, ToleranceConfig, VecD};
    use std::f64::consts::TAU;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn unit_circle(samples: usize) -> PlanarAffineCurve {
        reparam_affine_planar(&shapes::circle(1.0), (0.0, TAU), samples, true, &cfg()).unwrap()
    }

    fn oval(samples: usize) -> PlanarAffineCurve {
        let src = shapes::fourier_oval(vec![1.0, 0.0, 0.0, 0.1]);
        reparam_affine_planar(&src, (0.0, TAU), samples, true, &cfg()).unwrap()
    }

    #[test]
    fn circle_is_already_affine_arc_length() {
        let c = unit_circle(257);
        assert!(c.det_error < 1e-10, "det error {}", c.det_error);
        assert!(c.residual < 1e-9);
        assert!(c.is_closed());
        assert!((c.total_length() - TAU).abs() < 1e-9);
        for r in c.rho() {
            assert!((r - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn parabola_has_zero_curvature() {
        let c = reparam_affine_planar(&shapes::parabola(), (-1.0, 1.0), 65, false, &cfg()).unwrap();
        assert!(c.det_error < 1e-10);
        for r in c.rho() {
            assert!(r.abs() < 1e-9);
        }
    }

    #[test]
    fn ellipse_curvature_closed_form() {
        // rho = (ab)^{-2/3}, arc-length parameter u = (ab)^{1/3} t
        let (a, b) = (2.0, 1.0);
        let c =
            reparam_affine_planar(&shapes::ellipse(a, b), (0.0, TAU), 257, true, &cfg()).unwrap();
        let expected = (a * b).powf(-2.0 / 3.0);
        for r in c.rho() {
            assert!((r - expected).abs() < 1e-8, "rho {} vs {}", r, expected);
        }
        assert!((c.total_length() - (a * b).powf(1.0 / 3.0) * TAU).abs() < 1e-8);
    }

    #[test]
    fn conic_evolutes_collapse_to_center() {
        let c = unit_circle(257);
        let ev = affine_evolute(&c, &cfg());
        assert!(ev.omitted.is_empty());
        for (_, e) in &ev.points {
            assert!(e.norm() < 1e-9);
        }
        let el = reparam_affine_planar(&shapes::ellipse(1.5, 0.7), (0.0, TAU), 257, true, &cfg())
            .unwrap();
        for (_, e) in affine_evolute(&el, &cfg()).points {
            assert!(e.norm() < 1e-8);
        }
    }

    #[test]
    fn support_function_of_circles() {
        let c = unit_circle(257);
        let s = support_function(&c, &VecD::zeros(2));
        for z in &s.z {
            assert!((z - 1.0).abs() < 1e-9);
        }
        // z'' = 1 - rho z reduces to 0 = 1 - 1 on the unit circle
        assert!(s.identity_residual < 1e-9);

        let big =
            reparam_affine_planar(&shapes::circle(2.0), (0.0, TAU), 257, true, &cfg()).unwrap();
        let sb = support_function(&big, &VecD::zeros(2));
        let expect = 2.0_f64.powf(4.0 / 3.0);
        for z in &sb.z {
            assert!((z - expect).abs() < 1e-8);
        }
    }

    #[test]
    fn support_identity_holds_off_center() {
        let c = oval(513);
        let s = support_function(&c, &VecD::new(vec![0.2, -0.1]));
        assert!(s.identity_residual < 1e-6, "residual {}", s.identity_residual);
    }

    #[test]
    fn circle_vertices_degenerate() {
        let c = unit_circle(257);
        let v = count_vertices(&c, true, &cfg()).unwrap();
        assert!(v.degenerate);
    }

    #[test]
    fn six_vertices_on_fourier_ovals() {
        let v3 = count_vertices(&oval(1025), true, &cfg()).unwrap();
        assert!(!v3.degenerate);
        assert!(v3.count >= 6, "cos 3t oval: {} vertices", v3.count);

        let src = shapes::fourier_oval(vec![1.0, 0.0, 0.05]);
        let c2 = reparam_affine_planar(&src, (0.0, TAU), 1025, true, &cfg()).unwrap();
        let v2 = count_vertices(&c2, true, &cfg()).unwrap();
        assert!(v2.count >= 6, "cos 2t oval: {} vertices", v2.count);
    }

    #[test]
    fn evolute_cusps_sit_at_vertices() {
        // E' = -(rho'/rho^2) G'', so the evolute is stationary exactly at
        // zeros of rho'. A gentle oval keeps rho away from zero so the
        // evolute stays bounded.
        let src = shapes::fourier_oval(vec![1.0, 0.0, 0.0, 0.02]);
        let c = reparam_affine_planar(&src, (0.0, TAU), 1025, true, &cfg()).unwrap();
        let ev = affine_evolute(&c, &cfg());
        assert!(ev.omitted.is_empty());
        let pts: Vec<VecD> = ev.points.iter().map(|(_, p)| p.clone()).collect();
        let h = c.grid()[1] - c.grid()[0];
        let dev = fd_derive_vec(&pts, h, 1, 5, true);
        // signed evolute speed along G'': proportional to -rho'
        let speed: Vec<f64> = (0..c.len())
            .map(|i| {
                let g2 = c.jets().jet_at(2, i);
                dev[i].dot(g2) / g2.dot(g2)
            })
            .collect();
        let cusp_zeros = cyclic_zeros(c.grid(), &speed, &cfg());
        let vertex_zeros = cyclic_zeros(c.grid(), c.rho_prime(), &cfg());
        assert_eq!(cusp_zeros.len(), vertex_zeros.len());
        for (a, b) in cusp_zeros.iter().zip(&vertex_zeros) {
            assert!((a.u - b.u).abs() < 1e-6, "cusp {} vs vertex {}", a.u, b.u);
        }
    }

    #[test]
    fn reconstruction_closed_forms() {
        let grid = crate::numkit::uniform_grid(0.0, TAU, 1001);
        let rho = vec![1.0; grid.len()];
        let seed = ReconstructionSeed {
            gamma0: VecD::new(vec![1.0, 0.0]),
            dgamma0: VecD::new(vec![0.0, 1.0]),
            z0: 1.0,
            dz0: 0.0,
        };
        let (gamma, z) = reconstruct_from_curvature(&grid, &rho, &seed).unwrap();
        for (i, u) in grid.iter().enumerate() {
            assert!(gamma[i].dist(&VecD::new(vec![u.cos(), u.sin()])) < 1e-8);
            assert!((z[i] - 1.0).abs() < 1e-8);
        }

        // rho = 0, z(0) = z'(0) = 0: double integration of 1
        let rho0 = vec![0.0; grid.len()];
        let seed0 = ReconstructionSeed { z0: 0.0, dz0: 0.0, ..seed.clone() };
        let (_, z0) = reconstruct_from_curvature(&grid, &rho0, &seed0).unwrap();
        for (i, u) in grid.iter().enumerate() {
            assert!((z0[i] - 0.5 * u * u).abs() < 1e-8);
        }

        // rho = 1, homogeneous + particular: z = 1 - cos u
        let seed1 = ReconstructionSeed { z0: 0.0, dz0: 0.0, ..seed };
        let (_, z1) = reconstruct_from_curvature(&grid, &rho, &seed1).unwrap();
        for (i, u) in grid.iter().enumerate() {
            assert!((z1[i] - (1.0 - u.cos())).abs() < 1e-8);
        }
    }

    #[test]
    fn reconstruction_round_trip_on_oval() {
        let src = shapes::fourier_oval(vec![1.0, 0.0, 0.0, 0.02]);
        let c = reparam_affine_planar(&src, (0.0, TAU), 2049, true, &cfg()).unwrap();
        let origin = VecD::new(vec![0.1, 0.05]);
        let s = support_function(&c, &origin);
        let seed = ReconstructionSeed {
            gamma0: c.jets().jet_at(1, 0).clone(),
            dgamma0: c.jets().jet_at(2, 0).clone(),
            z0: s.z[0],
            dz0: s.z_prime[0],
        };
        let (gamma, z) = reconstruct_from_curvature(c.grid(), c.rho(), &seed).unwrap();
        for i in 0..c.len() {
            assert!(gamma[i].dist(c.jets().jet_at(1, i)) < 1e-6);
            assert!((z[i] - s.z[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn area_function_matches_shoelace() {
        let c = oval(2049);
        let origin = VecD::zeros(2);
        let area_tab = area_function(&c, &origin, 0.0);
        assert!(area_tab[0].abs() < 1e-12);

        // independent shoelace estimate on a dense polygon from the raw shape
        let src = shapes::fourier_oval(vec![1.0, 0.0, 0.0, 0.1]);
        let m = 200_000;
        let mut shoelace = 0.0;
        let mut prev = src.jets_at(0.0, 0)[0].clone();
        for k in 1..=m {
            let t = TAU * k as f64 / m as f64;
            let p = src.jets_at(t, 0)[0].clone();
            shoelace += prev[0] * p[1] - p[0] * prev[1];
            prev = p;
        }
        let area = 0.5 * shoelace;
        assert!(
            (area_tab.last().unwrap() - 2.0 * area).abs() < 1e-7,
            "Z(period) {} vs 2*area {}",
            area_tab.last().unwrap(),
            2.0 * area
        );
    }

    #[test]
    fn unit_circle_area_function_is_identity() {
        let c = unit_circle(257);
        let z = area_function(&c, &VecD::zeros(2), 0.0);
        for (i, u) in c.grid().iter().enumerate() {
            assert!((z[i] - u).abs() < 1e-9);
        }
    }

    #[test]
    fn equivariance_under_unimodular_maps() {
        use rand::{Rng, SeedableRng};
        let seed = std::env::var("AFFINE_FOCAL_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(7u64);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let p: f64 = rng.gen_range(-1.0..1.0);
            let q: f64 = rng.gen_range(-1.0..1.0);
            let s: f64 = rng.gen_range(0.5..2.0);
            // A = [[1, p], [0, 1]] [[1, 0], [q, 1]] [[s, 0], [0, 1/s]]
            let a = [[s * (1.0 + p * q), p / s], [s * q, 1.0 / s]];
            let b = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            assert!((det - 1.0).abs() < 1e-12);

            let base = oval(513);
            let src = shapes::affine_image(shapes::fourier_oval(vec![1.0, 0.0, 0.0, 0.1]), a, b);
            let mapped = reparam_affine_planar(&src, (0.0, TAU), 513, true, &cfg()).unwrap();

            assert_eq!(base.len(), mapped.len());
            assert!((base.total_length() - mapped.total_length()).abs() < 1e-8);
            for i in 0..base.len() {
                let rel =
                    (base.rho()[i] - mapped.rho()[i]).abs() / base.rho()[i].abs().max(1.0);
                assert!(rel < 1e-8, "rho mismatch {} at {}", rel, i);
            }
            let ev = affine_evolute(&base, &cfg());
            let evm = affine_evolute(&mapped, &cfg());
            for ((_, e), (_, em)) in ev.points.iter().zip(&evm.points) {
                let expect = VecD::new(vec![
                    a[0][0] * e[0] + a[0][1] * e[1] + b[0],
                    a[1][0] * e[0] + a[1][1] * e[1] + b[1],
                ]);
                assert!(em.dist(&expect) < 1e-7);
            }
        }
    }

    #[test]
    fn inflection_rejected() {
        // (t, t^3/3) has an inflection at t = 0
        let src = shapes::parametric_poly(vec![0.0, 1.0], vec![0.0, 0.0, 0.0, 1.0 / 3.0]);
        let r = reparam_affine_planar(&src, (-1.0, 1.0), 65, false, &cfg());
        assert!(matches!(r, Err(crate::Error::InflectionPoint { .. })));
    }

    #[test]
    fn helix_invariants() {
        let c = spatial_invariants(&shapes::helix(), (0.0, TAU), 257, &cfg()).unwrap();
        assert!(c.det_error < 1e-9, "det err {}", c.det_error);
        assert!(c.residual < 1e-8, "residual {}", c.residual);
        for (r, t) in c.rho().iter().zip(c.tau()) {
            assert!((r - 1.0).abs() < 1e-8);
            assert!(t.abs() < 1e-8);
        }
        let (cyl, res) = cylindricity_test(&c, &cfg());
        assert!(cyl, "helix cylindricity residual {}", sup_norm(&res));
    }

    #[test]
    fn cubic_twist_invariants() {
        let c = spatial_invariants(&shapes::cubic_twist(), (-1.0, 1.0), 129, &cfg()).unwrap();
        assert!(c.det_error < 1e-10);
        for (r, t) in c.rho().iter().zip(c.tau()) {
            assert!(r.abs() < 1e-7);
            assert!(t.abs() < 1e-7);
        }
        let (density, zeros) = projective_density(&c, &cfg());
        assert!(sup_norm(&density) < 1e-2); // cube root softens the threshold
        assert!(zeros.is_empty());
    }

    #[test]
    fn perturbed_helix_self_consistency() {
        let c =
            spatial_invariants(&shapes::perturbed_helix(0.1), (0.0, TAU), 1025, &cfg()).unwrap();
        assert!(c.det_error < 1e-8, "det err {}", c.det_error);
        assert!(c.residual < 1e-6, "residual {}", c.residual);
        let (cyl, res) = cylindricity_test(&c, &cfg());
        assert!(!cyl);
        assert!(sup_norm(&res) > 0.1, "residual clearly away from zero");
        // invariants are genuinely nonconstant
        assert!(crate::numkit::spread(c.rho()) > 1e-3);
    }

    #[test]
    fn area_lift_is_cylindrical() {
        let src = shapes::fourier_oval(vec![1.0, 0.0, 0.0, 0.02]);
        let c = reparam_affine_planar(&src, (0.0, TAU), 1025, true, &cfg()).unwrap();
        let jets = lift_with_area(&c, &VecD::zeros(2), 0.0).unwrap();
        let s = spatial_invariants_from_jets(jets, &cfg()).unwrap();
        assert!(s.det_error < 1e-8, "det err {}", s.det_error);
        let (cyl, res) = cylindricity_test(&s, &cfg());
        assert!(cyl, "lift residual {}", sup_norm(&res));
    }

    #[test]
    fn planar_embed_density_has_six_zeros() {
        let c = oval(1025);
        let jets = planar_embed(&c).unwrap();
        let s = spatial_invariants_from_jets(jets, &cfg()).unwrap();
        assert!(s.det_error < 1e-8);
        // tau = 0: density zeros are the vertices of the oval
        assert!(sup_norm(s.tau()) < 1e-7);
        let (_, zeros) = projective_density(&s, &cfg());
        let count = zeros.iter().filter(|z| !z.tangential).count();
        assert!(count >= 6, "{count} density zeros");
    }

    #[test]
    fn helix_density_vanishes() {
        let c = spatial_invariants(&shapes::helix(), (0.0, TAU), 257, &cfg()).unwrap();
        let (density, zeros) = projective_density(&c, &cfg());
        assert!(sup_norm(&density) < 1e-2);
        assert!(zeros.is_empty());
    }
}
