//! Planar primitives: points, convex regions, hulls, half-plane clipping and
//! the area-bisecting line through a prescribed point.

use std::cmp::Ordering;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{FloatScalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    /// Lexicographic order on (x, y).
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        match self.x.partial_cmp(&other.x) {
            Some(Ordering::Equal) | None => self.y.partial_cmp(&other.y).unwrap_or(Ordering::Equal),
            Some(ord) => ord,
        }
    }

    /// Max-norm of the coordinates.
    pub fn norm_inf(&self) -> T {
        T::max_of(self.x.abs(), self.y.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite_value() && self.y.is_finite_value()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Point<U> {
        Point::new(f(&self.x), f(&self.y))
    }
}

impl<T: Scalar> Serialize for Point<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x.to_json())?;
        seq.serialize_element(&self.y.to_json())?;
        seq.end()
    }
}

/// `(b - a) x (c - a)`; positive when `a, b, c` turn counter-clockwise.
pub fn cross<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    let ab = b.sub(a);
    let ac = c.sub(a);
    ab.x.clone() * ac.y.clone() - ab.y.clone() * ac.x.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Orientation of the turn `a -> b -> c`. Exact for rationals; for floats a
/// cross product within `1e-12 * |b - a| * |c - a|` counts as collinear.
pub fn orientation<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Orientation {
    let ab = b.sub(a);
    let ac = c.sub(a);
    let value = ab.x.clone() * ac.y.clone() - ab.y.clone() * ac.x.clone();
    let scale = ab.norm_inf() * ac.norm_inf();
    if value.is_negligible(&scale) {
        Orientation::Collinear
    } else if value.is_positive() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Convex polygon stored as a counter-clockwise vertex cycle starting at the
/// lexicographically least vertex. Zero, one or two vertices are the
/// degenerate empty, point and segment regions.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexRegion<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Serialize for ConvexRegion<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl<T: Scalar> ConvexRegion<T> {
    pub fn empty() -> Self {
        ConvexRegion { vertices: Vec::new() }
    }

    /// Axis-aligned rectangle `[0, width] x [0, height]`.
    pub fn rectangle(width: T, height: T) -> Self {
        Self::from_corners(Point::new(T::zero(), T::zero()), Point::new(width, height))
    }

    pub fn from_corners(lo: Point<T>, hi: Point<T>) -> Self {
        convex_hull(&[
            lo.clone(),
            Point::new(hi.x.clone(), lo.y.clone()),
            hi.clone(),
            Point::new(lo.x, hi.y),
        ])
        .expect("four corners")
    }

    /// Accepts a vertex cycle that is already strictly convex and
    /// counter-clockwise (any starting vertex); the result is canonicalized.
    pub fn from_vertices(vertices: Vec<Point<T>>) -> Result<Self> {
        let n = vertices.len();
        if n >= 3 {
            for i in 0..n {
                let o = orientation(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
                if o != Orientation::CounterClockwise {
                    return Err(Error::Invalid(
                        "vertices are not a strictly convex counter-clockwise cycle".into(),
                    ));
                }
            }
        }
        let hull = convex_hull(&vertices).unwrap_or_else(|_| Self::empty());
        if hull.vertices.len() != n {
            return Err(Error::Invalid("duplicate or non-extreme vertices".into()));
        }
        Ok(hull)
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Fewer than three vertices: zero area.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn area(&self) -> T {
        area(self)
    }

    /// Closed containment. Float regions allow `containment_slack()` of
    /// perpendicular (max-norm) distance.
    pub fn contains(&self, p: &Point<T>) -> bool {
        let slack = T::from_double(T::containment_slack()).unwrap_or_else(T::zero);
        match self.vertices.len() {
            0 => false,
            1 => p.sub(&self.vertices[0]).norm_inf() <= slack,
            2 => on_segment(&self.vertices[0], &self.vertices[1], p, &slack),
            n => (0..n).all(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                let c = cross(a, b, p);
                c >= T::zero() || -c <= slack.clone() * b.sub(a).norm_inf()
            }),
        }
    }

    /// Area centroid; vertex average for degenerate regions.
    pub fn centroid(&self) -> Option<Point<T>> {
        let n = self.vertices.len();
        if n == 0 {
            return None;
        }
        let doubled = twice_signed_area(&self.vertices);
        if n < 3 || doubled.is_zero() {
            let count = T::of_usize(n);
            let (sx, sy) = self.vertices.iter().fold((T::zero(), T::zero()), |(sx, sy), p| {
                (sx + p.x.clone(), sy + p.y.clone())
            });
            return Some(Point::new(sx / count.clone(), sy / count));
        }
        let mut cx = T::zero();
        let mut cy = T::zero();
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let w = a.x.clone() * b.y.clone() - b.x.clone() * a.y.clone();
            cx = cx + (a.x.clone() + b.x.clone()) * w.clone();
            cy = cy + (a.y.clone() + b.y.clone()) * w;
        }
        let six_a = T::of_usize(3) * doubled;
        Some(Point::new(cx / six_a.clone(), cy / six_a))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ConvexRegion<U> {
        ConvexRegion { vertices: self.vertices.iter().map(|p| p.map(&f)).collect() }
    }
}

fn on_segment<T: Scalar>(a: &Point<T>, b: &Point<T>, p: &Point<T>, slack: &T) -> bool {
    let ab = b.sub(a);
    let len = ab.norm_inf();
    let c = cross(a, b, p);
    if c.abs() > slack.clone() * len.clone() {
        return false;
    }
    let lo_x = T::min_of(a.x.clone(), b.x.clone()) - slack.clone();
    let hi_x = T::max_of(a.x.clone(), b.x.clone()) + slack.clone();
    let lo_y = T::min_of(a.y.clone(), b.y.clone()) - slack.clone();
    let hi_y = T::max_of(a.y.clone(), b.y.clone()) + slack.clone();
    p.x >= lo_x && p.x <= hi_x && p.y >= lo_y && p.y <= hi_y
}

fn twice_signed_area<T: Scalar>(vertices: &[Point<T>]) -> T {
    let n = vertices.len();
    if n < 3 {
        return T::zero();
    }
    let mut acc = T::zero();
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        acc = acc + a.x.clone() * b.y.clone() - b.x.clone() * a.y.clone();
    }
    acc
}

/// Shoelace area, non-negative; exact for rationals.
pub fn area<T: Scalar>(region: &ConvexRegion<T>) -> T {
    twice_signed_area(&region.vertices).abs() / T::of_usize(2)
}

/// Monotone-chain hull in canonical order (counter-clockwise from the
/// lexicographically least vertex), collinear and duplicate points removed.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Result<ConvexRegion<T>> {
    if points.is_empty() {
        return Err(Error::EmptyPointList);
    }
    let mut sorted = points.to_vec();
    let mut scratch = Vec::with_capacity(points.len() + 1);
    hull_in_place(&mut sorted, &mut scratch);
    Ok(ConvexRegion { vertices: scratch })
}

/// Hull of `points` written into `out` (canonical order). `points` is sorted
/// in place. Allocation free once `out` has capacity `points.len() + 1`.
pub fn hull_in_place<T: Scalar>(points: &mut [Point<T>], out: &mut Vec<Point<T>>) {
    out.clear();
    if points.is_empty() {
        return;
    }
    points.sort_by(|a, b| a.lex_cmp(b));
    let n = points.len();
    // lower chain
    for p in points.iter() {
        while out.len() >= 2
            && orientation(&out[out.len() - 2], &out[out.len() - 1], p) != Orientation::CounterClockwise
        {
            out.pop();
        }
        out.push(p.clone());
    }
    // upper chain
    let lower_len = out.len() + 1;
    for p in points[..n - 1].iter().rev() {
        while out.len() >= lower_len
            && orientation(&out[out.len() - 2], &out[out.len() - 1], p) != Orientation::CounterClockwise
        {
            out.pop();
        }
        out.push(p.clone());
    }
    // last point repeats the first
    if out.len() > 1 {
        out.pop();
    }
    // all points coincident
    if out.len() == 2 && out[0].sub(&out[1]).norm_inf().is_negligible(&T::one()) {
        out.pop();
    }
}

/// Area of the hull of `points` without building a region.
pub fn hull_area_in_place<T: Scalar>(points: &mut [Point<T>], scratch: &mut Vec<Point<T>>) -> T {
    hull_in_place(points, scratch);
    twice_signed_area(scratch).abs() / T::of_usize(2)
}

/// Directed line through `anchor` with direction `direction`.
#[derive(Debug, Clone, PartialEq)]
pub struct Line<T> {
    pub anchor: Point<T>,
    pub direction: Point<T>,
}

impl<T: Scalar> Line<T> {
    pub fn through(a: Point<T>, b: Point<T>) -> Self {
        let direction = b.sub(&a);
        Line { anchor: a, direction }
    }

    /// Signed side value; positive on the left of the direction.
    pub fn side_value(&self, p: &Point<T>) -> T {
        let d = &self.direction;
        let v = p.sub(&self.anchor);
        d.x.clone() * v.y.clone() - d.y.clone() * v.x.clone()
    }

    /// Closed half-plane membership with the scalar's containment slack.
    pub fn on_side(&self, p: &Point<T>, side: Side) -> bool {
        let v = self.side_value(p);
        let v = match side {
            Side::Left => v,
            Side::Right => -v,
        };
        if v >= T::zero() {
            return true;
        }
        let slack = T::from_double(T::containment_slack()).unwrap_or_else(T::zero);
        -v <= slack * self.direction.norm_inf()
    }
}

impl<T: FloatScalar> Line<T> {
    pub fn from_angle(anchor: Point<T>, angle: T) -> Self {
        let direction = Point::new(angle.cos(), angle.sin());
        Line { anchor, direction }
    }

    /// Euclidean distance from `p` to the line.
    pub fn distance(&self, p: &Point<T>) -> T {
        let d = &self.direction;
        self.side_value(p).abs() / (d.x * d.x + d.y * d.y).sqrt()
    }
}

/// Left is where the direction rotated by +90 degrees points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Intersection of `region` with the closed half-plane on `side` of `line`.
pub fn clip_halfplane<T: Scalar>(region: &ConvexRegion<T>, line: &Line<T>, side: Side) -> ConvexRegion<T> {
    let verts = region.vertices();
    let n = verts.len();
    if n == 0 {
        return ConvexRegion::empty();
    }
    let signed = |p: &Point<T>| match side {
        Side::Left => line.side_value(p),
        Side::Right => -line.side_value(p),
    };
    let values: Vec<T> = verts.iter().map(signed).collect();
    let mut kept = Vec::with_capacity(n + 1);
    let edges = if n == 1 { 0 } else if n == 2 { 1 } else { n };
    if n == 1 && values[0] >= T::zero() {
        kept.push(verts[0].clone());
    }
    for i in 0..edges {
        let j = (i + 1) % n;
        let (a, b) = (&verts[i], &verts[j]);
        let (va, vb) = (&values[i], &values[j]);
        if *va >= T::zero() {
            kept.push(a.clone());
        }
        if (va.is_positive() && vb.is_negative()) || (va.is_negative() && vb.is_positive()) {
            let t = va.clone() / (va.clone() - vb.clone());
            let ab = b.sub(a);
            kept.push(Point::new(a.x.clone() + ab.x * t.clone(), a.y.clone() + ab.y * t));
        }
        if n == 2 && *vb >= T::zero() {
            kept.push(b.clone());
        }
    }
    if kept.is_empty() {
        return ConvexRegion::empty();
    }
    convex_hull(&kept).expect("non-empty")
}

/// Tolerances for [`halving_line`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalvingOptions {
    /// Allowed `|left - right| / area`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for HalvingOptions {
    fn default() -> Self {
        HalvingOptions { tolerance: 1e-9, max_iterations: 200 }
    }
}

/// A line through `anchor` splitting a region into two halves of (nearly)
/// equal area. `left` is the closed half on the left of direction `angle`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct HalvingCut<T: Scalar> {
    pub anchor: Point<T>,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub angle: T,
    pub left: ConvexRegion<T>,
    pub right: ConvexRegion<T>,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub left_area: T,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub right_area: T,
}

impl<T: FloatScalar> HalvingCut<T> {
    pub fn line(&self) -> Line<T> {
        Line::from_angle(self.anchor, self.angle)
    }

    pub fn half(&self, side: Side) -> (&ConvexRegion<T>, T) {
        match side {
            Side::Left => (&self.left, self.left_area),
            Side::Right => (&self.right, self.right_area),
        }
    }
}

/// Finds a line through `p` bisecting the area of `region`.
///
/// With `g(θ)` the area left of the line at angle `θ`, `g(θ + π) = A - g(θ)`,
/// so `g - A/2` changes sign on `[0, π]` and bisection on the angle converges.
/// Iterates until the interval collapses (or `max_iterations`) and then
/// checks the imbalance against `opts.tolerance`.
pub fn halving_line<T: FloatScalar>(
    region: &ConvexRegion<T>,
    p: &Point<T>,
    opts: &HalvingOptions,
) -> Result<HalvingCut<T>> {
    let total = region.area();
    if region.is_degenerate() || total.is_nan() || total <= T::zero() {
        return Err(Error::DegenerateRegion);
    }
    if !region.contains(p) {
        return Err(Error::AnchorOutsideRegion);
    }
    let half = total / T::of_usize(2);
    let imbalance = |theta: T| {
        let line = Line::from_angle(*p, theta);
        clip_halfplane(region, &line, Side::Left).area() - half
    };

    let pi = T::PI();
    let mut lo = T::zero();
    let mut hi = pi;
    let f_lo = imbalance(lo);
    let mut best = (f_lo.abs(), lo);
    let mut lo_negative = f_lo < T::zero();
    let mut iterations = 0;
    if f_lo != T::zero() {
        while iterations < opts.max_iterations {
            iterations += 1;
            let mid = lo + (hi - lo) / T::of_usize(2);
            if !(mid > lo && mid < hi) {
                break;
            }
            let f_mid = imbalance(mid);
            if f_mid.abs() < best.0 {
                best = (f_mid.abs(), mid);
            }
            if f_mid == T::zero() {
                break;
            }
            if (f_mid < T::zero()) == lo_negative {
                lo = mid;
                lo_negative = f_mid < T::zero();
            } else {
                hi = mid;
            }
        }
    }

    let angle = best.1;
    let line = Line::from_angle(*p, angle);
    let left = clip_halfplane(region, &line, Side::Left);
    let right = clip_halfplane(region, &line, Side::Right);
    let left_area = left.area();
    let right_area = right.area();
    let rel = ((left_area - right_area).abs() / total).to_double();
    if rel.is_nan() || rel > opts.tolerance {
        return Err(Error::BisectionFailed { imbalance: rel, iterations });
    }
    Ok(HalvingCut { anchor: *p, angle, left, right, left_area, right_area })
}
