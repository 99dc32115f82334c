#![allow(dead_code)]

use heilbronn::{convex_hull, ConvexRegion, Point, PointSet, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit_square(n: usize, seed: u64) -> PointSet<f64> {
    let mut rng = rng(seed);
    let pts = (0..n).map(|_| Point::new(rng.random::<f64>(), rng.random::<f64>())).collect();
    PointSet::unit_square(pts).unwrap()
}

/// Points on a 1/den lattice of the unit square, exact.
pub fn random_lattice(n: usize, den: i64, seed: u64) -> PointSet<Rational> {
    let mut rng = rng(seed);
    let pts = (0..n)
        .map(|_| {
            Point::new(
                Rational::from_ratio(rng.random_range(0..=den), den),
                Rational::from_ratio(rng.random_range(0..=den), den),
            )
        })
        .collect();
    PointSet::unit_square(pts).unwrap()
}

/// Random convex polygon (hull of random points in a random box) and a
/// random point inside it (convex combination of its vertices).
pub fn random_region_and_point(rng: &mut ChaCha8Rng) -> (ConvexRegion<f64>, Point<f64>) {
    loop {
        let count = rng.random_range(3..12);
        let (sx, sy) = (rng.random_range(0.1..10.0), rng.random_range(0.1..10.0));
        let (ox, oy) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let pts: Vec<_> = (0..count)
            .map(|_| Point::new(ox + sx * rng.random::<f64>(), oy + sy * rng.random::<f64>()))
            .collect();
        let region = convex_hull(&pts).unwrap();
        if region.len() < 3 || region.area() < 1e-6 * sx * sy {
            continue;
        }
        let weights: Vec<f64> = region.vertices().iter().map(|_| rng.random::<f64>().powi(3)).collect();
        let total: f64 = weights.iter().sum();
        let (mut x, mut y) = (0.0, 0.0);
        for (v, w) in region.vertices().iter().zip(&weights) {
            x += v.x * w / total;
            y += v.y * w / total;
        }
        let p = Point::new(x, y);
        if region.contains(&p) {
            return (region, p);
        }
    }
}

/// Hull area by gift wrapping, written independently of the library's
/// monotone chain. Exact for rationals.
pub fn gift_wrap_area<T: Scalar>(points: &[Point<T>]) -> T {
    let mut pts: Vec<Point<T>> = Vec::new();
    for p in points {
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }
    if pts.len() < 3 {
        return T::zero();
    }
    let cross = |o: &Point<T>, a: &Point<T>, b: &Point<T>| {
        (a.x.clone() - o.x.clone()) * (b.y.clone() - o.y.clone())
            - (a.y.clone() - o.y.clone()) * (b.x.clone() - o.x.clone())
    };
    let dist2 = |a: &Point<T>, b: &Point<T>| {
        let dx = a.x.clone() - b.x.clone();
        let dy = a.y.clone() - b.y.clone();
        dx.clone() * dx + dy.clone() * dy
    };
    let start = (0..pts.len())
        .min_by(|&i, &j| pts[i].lex_cmp(&pts[j]))
        .unwrap();
    let mut hull = vec![start];
    let mut current = start;
    loop {
        let mut cand = if current == 0 { 1 } else { 0 };
        for i in 0..pts.len() {
            if i == current {
                continue;
            }
            let c = cross(&pts[current], &pts[cand], &pts[i]);
            // take the most clockwise point; farthest on ties
            if c < T::zero() || (c == T::zero() && dist2(&pts[current], &pts[i]) > dist2(&pts[current], &pts[cand])) {
                cand = i;
            }
        }
        if cand == start || hull.len() > pts.len() {
            break;
        }
        hull.push(cand);
        current = cand;
    }
    let n = hull.len();
    let mut twice = T::zero();
    for i in 0..n {
        let a = &pts[hull[i]];
        let b = &pts[hull[(i + 1) % n]];
        twice = twice + a.x.clone() * b.y.clone() - b.x.clone() * a.y.clone();
    }
    twice.abs() / T::of_usize(2)
}

/// All k-subsets in lexicographic order, by plain recursion.
pub fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Independent brute-force minimum: gift-wrapped areas over every subset,
/// first (lexicographically smallest) minimizer kept.
pub fn oracle_min<T: Scalar>(ps: &PointSet<T>, k: usize) -> (T, Vec<usize>) {
    let mut best: Option<(T, Vec<usize>)> = None;
    for s in all_subsets(ps.len(), k) {
        let pts: Vec<_> = s.iter().map(|&i| ps.points()[i].clone()).collect();
        let a = gift_wrap_area(&pts);
        if best.as_ref().is_none_or(|(b, _)| a < *b) {
            best = Some((a, s));
        }
    }
    best.unwrap()
}
