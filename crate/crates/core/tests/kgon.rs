mod common;

use heilbronn::{min_kgon, min_kgon_sampled_check, Domain, KGonOptions, Point, PointSet, Rational, Scalar};

#[test]
fn matches_gift_wrap_oracle() {
    for seed in 0..40u64 {
        let n = 5 + (seed % 5) as usize;
        let k = 3 + (seed % 3) as usize;
        let ps = common::random_lattice(n, 5, seed);
        let (want, subset) = common::oracle_min(&ps, k);
        let got = min_kgon(&ps, k, &KGonOptions::default()).unwrap();
        assert_eq!(got.area, want, "seed {seed}");
        assert_eq!(got.subset, subset, "seed {seed}");
        assert_eq!(got.hull.area(), got.area);
        assert_eq!(ps.subset_area(&got.subset), got.area);
    }
}

#[test]
fn float_matches_exact() {
    for seed in 0..20u64 {
        let f = common::random_unit_square(9, 100 + seed);
        let e = f.to_exact().unwrap();
        let a = min_kgon(&f, 4, &KGonOptions::default()).unwrap();
        let b = min_kgon(&e, 4, &KGonOptions::pruned()).unwrap();
        assert!((a.area - b.area.to_double()).abs() <= 1e-12);
    }
}

#[test]
fn scale_covariance() {
    for seed in 0..10u64 {
        let ps = common::random_lattice(8, 7, 300 + seed);
        let base = min_kgon(&ps, 4, &KGonOptions::default()).unwrap();
        for d in [Rational::from_ratio(1, 2), Rational::from_ratio(1, 3)] {
            let inv = Rational::from_ratio(1, 1) / d.clone();
            let pts = ps.points().iter().map(|p| Point::new(p.x.clone() * d.clone(), p.y.clone() * inv.clone())).collect();
            let stretched = PointSet::new(pts, Domain::rectangle(d.clone()).unwrap()).unwrap();
            let r = min_kgon(&stretched, 4, &KGonOptions::default()).unwrap();
            assert_eq!(r.area, base.area);
            assert_eq!(r.subset, base.subset);
        }
    }
}

#[test]
fn monotone_in_n_and_k() {
    for seed in 0..10u64 {
        let ps = common::random_lattice(10, 9, 400 + seed);
        let fewer = PointSet::unit_square(ps.points()[..8].to_vec()).unwrap();
        for k in 3..=5 {
            let all = min_kgon(&ps, k, &KGonOptions::default()).unwrap().area;
            let sub = min_kgon(&fewer, k, &KGonOptions::default()).unwrap().area;
            assert!(all <= sub);
            if k < 5 {
                let bigger_k = min_kgon(&ps, k + 1, &KGonOptions::default()).unwrap().area;
                assert!(all <= bigger_k);
            }
        }
    }
}

#[test]
fn parallel_determinism() {
    let ps = common::random_unit_square(16, 77);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| min_kgon(&ps, 4, &KGonOptions::default()).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.subset, four.subset);
    assert_eq!(one.area.to_bits(), four.area.to_bits());
}

#[test]
fn ties_pick_lexicographically_smallest() {
    // 3 x 3 grid: many quadrilaterals attain 1/4
    let q = |n| Rational::from_ratio(n, 2);
    let pts = (0..3).flat_map(|i| (0..3).map(move |j| Point::new(q(j), q(i)))).collect();
    let ps = PointSet::unit_square(pts).unwrap();
    for opts in [KGonOptions::default(), KGonOptions::pruned()] {
        let r = min_kgon(&ps, 4, &opts).unwrap();
        assert_eq!(r.area, Rational::from_ratio(1, 4));
        assert_eq!(r.subset, common::oracle_min(&ps, 4).1);
    }
}

#[test]
fn sampled_check_never_undercuts() {
    let ps = common::random_lattice(12, 11, 9);
    let exact = min_kgon(&ps, 4, &KGonOptions::pruned()).unwrap().area;
    let sampled = min_kgon_sampled_check(&ps, 4, 200, 3).unwrap();
    assert!(sampled >= exact);
}

#[test]
fn guard_rail() {
    let ps = common::random_unit_square(60, 1);
    let opts = KGonOptions { max_subsets: 1000, ..KGonOptions::default() };
    assert!(min_kgon(&ps, 4, &opts).unwrap_err().is_guard_rail());
    let small = common::random_unit_square(8, 1);
    assert!(min_kgon(&small, 4, &opts).is_ok());
}
