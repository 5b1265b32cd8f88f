mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trunclap::geometry::random::random_convex_polygon;
use trunclap::geometry::{hausdorff_distance, min_enclosing_circle, ConvexPolygon, PlanarDomain, Point2, DEFAULT_ANGLES};
use trunclap::grid::NO_NODE;
use trunclap::{build_stencil, rasterize};

fn points() -> impl Strategy<Value = Vec<Point2<f64>>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 3..40)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

fn brute_diameter(pts: &[Point2<f64>]) -> f64 {
    let mut d = 0.0f64;
    for a in pts {
        for b in pts {
            d = d.max(a.dist(*b));
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn calipers_match_brute_force(pts in points()) {
        if let Ok(hull) = ConvexPolygon::hull(&pts) {
            let d = hull.diameter();
            let want = brute_diameter(&pts);
            prop_assert!((d - want).abs() <= 1e-12 * want, "{d} vs {want}");
            prop_assert!((brute_diameter(hull.vertices()) - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn hull_contains_its_input(pts in points()) {
        if let Ok(hull) = ConvexPolygon::hull(&pts) {
            for &p in &pts {
                prop_assert!(hull.contains(p, 1e-9));
            }
            prop_assert!(hull.area() > 0.0);
        }
    }

    #[test]
    fn enclosing_radius_obeys_jung(pts in points()) {
        if let Ok(hull) = ConvexPolygon::hull(&pts) {
            let d = hull.diameter();
            let c = min_enclosing_circle(hull.vertices());
            prop_assert!(c.radius >= 0.5 * d * (1.0 - 1e-12));
            prop_assert!(c.radius <= d / 3f64.sqrt() * (1.0 + 1e-12));
            for v in hull.vertices() {
                prop_assert!(v.dist(c.center) <= c.radius * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn perimeter_at_most_pi_diameter(pts in points()) {
        if let Ok(hull) = ConvexPolygon::hull(&pts) {
            prop_assert!(hull.perimeter() <= std::f64::consts::PI * hull.diameter() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn hausdorff_is_a_metric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_convex_polygon(&mut rng, 6, 1.0).unwrap();
        let b = random_convex_polygon(&mut rng, 5, 1.0).unwrap();
        let c = random_convex_polygon(&mut rng, 7, 1.0).unwrap();
        let (ab, ba) = (hausdorff_distance(&a, &b, DEFAULT_ANGLES), hausdorff_distance(&b, &a, DEFAULT_ANGLES));
        prop_assert_eq!(hausdorff_distance(&a, &a, DEFAULT_ANGLES), 0.0);
        prop_assert!((ab - ba).abs() < 1e-12);
        let (bc, ac) = (hausdorff_distance(&b, &c, DEFAULT_ANGLES), hausdorff_distance(&a, &c, DEFAULT_ANGLES));
        prop_assert!(ac <= ab + bc + 1e-12);
    }

    #[test]
    fn operator_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_grid(&mut rng);
        prop_assert!(common::monotone_at(&mut rng, &g).is_ok());
    }

    #[test]
    fn operator_is_positively_homogeneous(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_grid(&mut rng);
        let r = common::homogeneous(&mut rng, &g);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn operator_is_exact_on_quadratics(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_grid(&mut rng);
        let r = common::quadratic_exact(&mut rng, &g);
        prop_assert!(r.is_ok(), "{:?}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grids_rescale_exactly(seed in any::<u64>(), k in 0usize..4, w in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_convex_polygon(&mut rng, 7, 1.0).unwrap();
        let t = [0.5, 2.0, 3.0, 4.0][k];
        let h = 0.125;
        let st = build_stencil(w).unwrap();
        let g1 = rasterize(&PlanarDomain::Polygon(p.clone()), h, &st).unwrap();
        let g2 = rasterize(&PlanarDomain::Polygon(p.scale(t).unwrap()), t * h, &st).unwrap();
        prop_assert_eq!(g1.interior_count(), g2.interior_count());
        for i in 0..g1.interior_count() {
            prop_assert_eq!(g1.arms_of(i), g2.arms_of(i));
        }
    }

    #[test]
    fn arms_end_on_nodes_or_boundary(seed in any::<u64>(), w in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_convex_polygon(&mut rng, 6, 1.0).unwrap();
        let g = rasterize(&PlanarDomain::Polygon(p.clone()), 0.1, &build_stencil(w).unwrap()).unwrap();
        for k in 0..g.interior_count() {
            let x = g.position(k);
            for (d, e) in g.stencil().directions().iter().enumerate() {
                let arm = g.arms_of(k)[d];
                let (sp, sm) = g.arm_lengths(k, d);
                for (s, end, sign) in [(sp, arm.next, 1.0), (sm, arm.prev, -1.0)] {
                    let y = Point2::new(x.x + sign * s * e.unit.x, x.y + sign * s * e.unit.y);
                    prop_assert!(s <= e.len * 0.1 * (1.0 + 1e-12));
                    if end == NO_NODE {
                        prop_assert!(p.boundary_distance(y) < 1e-9, "clipped arm ends off the boundary");
                    } else {
                        prop_assert!(g.position(end as usize).dist(y) < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn toy_oracle_starts_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v: Vec<f64> = (0..20).map(|_| common::toy_oracle(&mut rng)).collect();
    assert!(v.iter().all(|x| (x - v[0]).abs() < 1e-12));
}
