mod common;

use heilbronn::geom::hull_area_in_place;
use heilbronn::{
    clip_halfplane, convex_hull, halving_line, ConvexRegion, HalvingOptions, Line, Point, Rational, Scalar, Side,
};
use proptest::prelude::*;

fn rational_point() -> impl Strategy<Value = Point<Rational>> {
    (-20i64..=20, -20i64..=20, 1i64..=6).prop_map(|(x, y, d)| Point::new(Rational::from_ratio(x, d), Rational::from_ratio(y, d)))
}

fn float_point() -> impl Strategy<Value = Point<f64>> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(x, y)| Point::new(x, y))
}

fn line() -> impl Strategy<Value = Line<Rational>> {
    (rational_point(), rational_point())
        .prop_filter("distinct", |(a, b)| a != b)
        .prop_map(|(a, b)| Line::through(a, b))
}

proptest! {
    #[test]
    fn hull_is_idempotent(pts in prop::collection::vec(rational_point(), 1..25)) {
        let h = convex_hull(&pts).unwrap();
        let again = convex_hull(h.vertices()).unwrap();
        prop_assert_eq!(&h, &again);
        prop_assert_eq!(h.area(), common::gift_wrap_area(&pts));
    }

    #[test]
    fn hull_contains_inputs(pts in prop::collection::vec(rational_point(), 1..25)) {
        let h = convex_hull(&pts).unwrap();
        for p in &pts {
            prop_assert!(h.contains(p));
        }
    }

    #[test]
    fn in_place_area_matches(pts in prop::collection::vec(float_point(), 1..25)) {
        let want = convex_hull(&pts).unwrap().area();
        let mut buf = pts.clone();
        let got = hull_area_in_place(&mut buf, &mut Vec::new());
        prop_assert!((want - got).abs() <= 1e-12 * want.max(1.0));
        let oracle = common::gift_wrap_area(&pts);
        prop_assert!((want - oracle).abs() <= 1e-9 * want.max(1.0));
    }

    #[test]
    fn clip_partitions_exactly(pts in prop::collection::vec(rational_point(), 3..15), l in line()) {
        let region = convex_hull(&pts).unwrap();
        let left = clip_halfplane(&region, &l, Side::Left);
        let right = clip_halfplane(&region, &l, Side::Right);
        prop_assert_eq!(left.area() + right.area(), region.area());
        prop_assert!(left.area() <= region.area());
        for v in left.vertices() {
            prop_assert!(region.contains(v));
            prop_assert!(l.on_side(v, Side::Left));
        }
    }

    #[test]
    fn clip_is_monotone(a in prop::collection::vec(rational_point(), 3..12), extra in prop::collection::vec(rational_point(), 0..6), l in line()) {
        let small = convex_hull(&a).unwrap();
        let mut all = a.clone();
        all.extend(extra);
        let big = convex_hull(&all).unwrap();
        prop_assert!(clip_halfplane(&small, &l, Side::Left).area() <= clip_halfplane(&big, &l, Side::Left).area());
    }

    #[test]
    fn float_clip_partitions(pts in prop::collection::vec(float_point(), 3..15), a in float_point(), b in float_point()) {
        prop_assume!(a != b);
        let region = convex_hull(&pts).unwrap();
        let l = Line::through(a, b);
        let total = clip_halfplane(&region, &l, Side::Left).area() + clip_halfplane(&region, &l, Side::Right).area();
        prop_assert!((total - region.area()).abs() <= 1e-9 * region.area().max(1.0));
    }

    #[test]
    fn halving_halves(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (region, p) = common::random_region_and_point(&mut rng);
        let cut = halving_line(&region, &p, &HalvingOptions::default()).unwrap();
        prop_assert!((cut.left_area - cut.right_area).abs() <= 1e-9 * region.area());
        prop_assert!(cut.line().distance(&p) <= 1e-12);
        for v in cut.left.vertices() {
            prop_assert!(cut.line().side_value(v) >= -1e-9 * region.area().sqrt().max(1.0));
        }
    }
}

#[test]
fn halving_on_exact_region_after_conversion() {
    let q = |n, d| Rational::from_ratio(n, d);
    let exact = ConvexRegion::from_vertices(vec![
        Point::new(q(0, 1), q(0, 1)),
        Point::new(q(3, 1), q(0, 1)),
        Point::new(q(2, 1), q(2, 1)),
        Point::new(q(0, 1), q(1, 1)),
    ])
    .unwrap();
    let float = exact.map(|v| v.to_double());
    let p = Point::new(1.0, 0.5);
    let cut = halving_line(&float, &p, &HalvingOptions::default()).unwrap();
    assert!((cut.left_area - float.area() / 2.0).abs() <= 1e-9 * float.area());
    assert_eq!(float.area(), exact.area().to_double());
}
