//! Minimum convex-hull area over the k-subsets of a point set.
//!
//! Two searches are provided. The exhaustive one walks every subset in colex
//! order, split into index ranges reduced in parallel; it is the reference.
//! The pruned one is a depth-first search over lexicographically increasing
//! subsets that abandons a prefix once the hull of the prefix is already
//! too large (hull area never decreases when points are added). Both reduce
//! over `(area, subset)` pairs so the lexicographically smallest minimizer
//! wins regardless of scheduling.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, hull_area_in_place, ConvexRegion, Point};
use crate::scalar::{Mode, Rational, Scalar};

/// Unit-area domain the points live in.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain<T> {
    UnitSquare,
    /// `[0, d] x [0, 1/d]`, `0 < d <= 1`.
    Rectangle { d: T },
    /// Arbitrary convex region of unit area.
    Region(ConvexRegion<T>),
}

impl<T: Scalar> Domain<T> {
    pub fn rectangle(d: T) -> Result<Self> {
        if !(d > T::zero() && d <= T::one()) {
            return Err(Error::Invalid(format!("aspect d = {d} must satisfy 0 < d <= 1")));
        }
        Ok(Domain::Rectangle { d })
    }

    pub fn region(region: ConvexRegion<T>) -> Result<Self> {
        let a = region.area();
        let ok = match T::MODE {
            Mode::Exact => a == T::one(),
            Mode::Float => (a.to_double() - 1.0).abs() <= 1e-9,
        };
        if !ok {
            return Err(Error::Invalid(format!("domain region has area {a}, expected 1")));
        }
        Ok(Domain::Region(region))
    }

    /// `(width, height)` of the bounding rectangle of rectangular domains.
    pub fn extent(&self) -> Option<(T, T)> {
        match self {
            Domain::UnitSquare => Some((T::one(), T::one())),
            Domain::Rectangle { d } => Some((d.clone(), T::one() / d.clone())),
            Domain::Region(_) => None,
        }
    }

    pub fn as_region(&self) -> ConvexRegion<T> {
        match self {
            Domain::Region(r) => r.clone(),
            _ => {
                let (w, h) = self.extent().expect("rectangular");
                ConvexRegion::rectangle(w, h)
            }
        }
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        match self {
            Domain::Region(r) => r.contains(p),
            _ => {
                let (w, h) = self.extent().expect("rectangular");
                let slack = T::from_double(T::containment_slack()).unwrap_or_else(T::zero);
                let lo = -slack.clone();
                p.x >= lo && p.y >= lo && p.x <= w + slack.clone() && p.y <= h + slack
            }
        }
    }

    pub fn convert<U: Scalar>(&self) -> Option<Domain<U>> {
        Some(match self {
            Domain::UnitSquare => Domain::UnitSquare,
            Domain::Rectangle { d } => Domain::Rectangle { d: U::from_rational(&d.to_rational()?) },
            Domain::Region(r) => {
                let verts = r
                    .vertices()
                    .iter()
                    .map(|p| convert_point(p))
                    .collect::<Option<Vec<_>>>()?;
                Domain::Region(convex_hull(&verts).ok()?)
            }
        })
    }
}

fn convert_point<T: Scalar, U: Scalar>(p: &Point<T>) -> Option<Point<U>> {
    Some(Point::new(
        U::from_rational(&p.x.to_rational()?),
        U::from_rational(&p.y.to_rational()?),
    ))
}

/// Indexed points inside a unit-area domain.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    points: Vec<Point<T>>,
    domain: Domain<T>,
}

impl<T: Scalar> PointSet<T> {
    /// Validates that every point is finite and inside the closed domain.
    pub fn new(points: Vec<Point<T>>, domain: Domain<T>) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if !domain.contains(p) {
                return Err(Error::PointOutsideDomain { index });
            }
        }
        Ok(PointSet { points, domain })
    }

    pub fn unit_square(points: Vec<Point<T>>) -> Result<Self> {
        Self::new(points, Domain::UnitSquare)
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn domain(&self) -> &Domain<T> {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same set in another scalar type. Rational to float rounds; float to
    /// rational is exact. Containment is re-validated.
    pub fn convert<U: Scalar>(&self) -> Result<PointSet<U>> {
        let domain = self
            .domain
            .convert()
            .ok_or_else(|| Error::Invalid("domain not representable".into()))?;
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(index, p)| convert_point(p).ok_or(Error::NonFinite { index }))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(points, domain)
    }

    pub fn to_exact(&self) -> Result<PointSet<Rational>> {
        self.convert()
    }

    pub fn to_float(&self) -> Result<PointSet<f64>> {
        self.convert()
    }

    /// Hull area of the points at `indices`.
    pub fn subset_area(&self, indices: &[usize]) -> T {
        let mut buf: Vec<Point<T>> = indices.iter().map(|&i| self.points[i].clone()).collect();
        let mut scratch = Vec::with_capacity(buf.len() + 1);
        hull_area_in_place(&mut buf, &mut scratch)
    }
}

/// The minimizing k-subset and its hull.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct KGonResult<T: Scalar> {
    pub subset: Vec<usize>,
    pub hull: ConvexRegion<T>,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub area: T,
    pub k: usize,
    pub mode: Mode,
}

/// Enumeration cap on `C(n, k)`.
pub const DEFAULT_MAX_SUBSETS: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KGonOptions {
    /// Use the pruned depth-first search instead of plain enumeration.
    pub prune: bool,
    pub max_subsets: u128,
    /// Ignore `max_subsets`.
    pub allow_large: bool,
}

impl Default for KGonOptions {
    fn default() -> Self {
        KGonOptions { prune: false, max_subsets: DEFAULT_MAX_SUBSETS, allow_large: false }
    }
}

impl KGonOptions {
    pub fn pruned() -> Self {
        KGonOptions { prune: true, ..Self::default() }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at each step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::KTooSmall);
    }
    if k > n {
        return Err(Error::KExceedsPointCount);
    }
    Ok(())
}

fn check_guard(n: usize, k: usize, opts: &KGonOptions) -> Result<()> {
    let subsets = binomial(n, k);
    if !opts.allow_large && subsets > opts.max_subsets {
        return Err(Error::GuardRail { n, k, subsets, limit: opts.max_subsets });
    }
    Ok(())
}

/// `(area, subset)` order: smaller area first, then lexicographic subset.
fn better<T: Scalar>(a: &(T, Vec<usize>), b: &(T, Vec<usize>)) -> bool {
    match a.0.partial_cmp(&b.0) {
        Some(Ordering::Less) => true,
        Some(Ordering::Greater) => false,
        _ => a.1 < b.1,
    }
}

fn reduce_min<T: Scalar>(a: Option<(T, Vec<usize>)>, b: Option<(T, Vec<usize>)>) -> Option<(T, Vec<usize>)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if better(&b, &a) { b } else { a }),
    }
}

/// Minimum hull area over all k-subsets of `ps`.
///
/// Collinear or coincident subsets are legitimate minimizers with their
/// degenerate area. Ties go to the lexicographically smallest index subset.
pub fn min_kgon<T: Scalar>(ps: &PointSet<T>, k: usize, opts: &KGonOptions) -> Result<KGonResult<T>> {
    let n = ps.len();
    check_k(n, k)?;
    check_guard(n, k, opts)?;
    let best = if opts.prune { pruned_search(ps.points(), k) } else { exhaustive_search(ps.points(), k) };
    let (area, subset) = best.expect("at least one subset");
    let pts: Vec<_> = subset.iter().map(|&i| ps.points()[i].clone()).collect();
    let hull = convex_hull(&pts)?;
    Ok(KGonResult { subset, hull, area, k, mode: T::MODE })
}

/// Colex rank of a sorted subset.
pub fn colex_rank(subset: &[usize]) -> u128 {
    subset.iter().enumerate().map(|(i, &c)| binomial(c, i + 1)).sum()
}

/// Subset of size `k` with colex rank `rank`.
pub fn colex_unrank(mut rank: u128, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        // largest c with C(c, i + 1) <= rank
        let mut c = i;
        while binomial(c + 1, i + 1) <= rank {
            c += 1;
        }
        rank -= binomial(c, i + 1);
        out[i] = c;
    }
    out
}

/// Advances to the colex successor; `false` after the last subset.
pub fn colex_next(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in 0..k {
        let limit = if i + 1 < k { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

const CHUNK: u128 = 4096;

fn exhaustive_search<T: Scalar>(points: &[Point<T>], k: usize) -> Option<(T, Vec<usize>)> {
    let n = points.len();
    let total = binomial(n, k);
    let chunks = total.div_ceil(CHUNK);
    (0..chunks as u64)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk as u128 * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut subset = colex_unrank(start, k);
            let mut buf: Vec<Point<T>> = Vec::with_capacity(k);
            let mut scratch = Vec::with_capacity(k + 1);
            let mut best: Option<(T, Vec<usize>)> = None;
            let mut rank = start;
            loop {
                buf.clear();
                buf.extend(subset.iter().map(|&i| points[i].clone()));
                let a = hull_area_in_place(&mut buf, &mut scratch);
                let cand = (a, subset.clone());
                if best.as_ref().is_none_or(|b| better(&cand, b)) {
                    best = Some(cand);
                }
                rank += 1;
                if rank >= end || !colex_next(&mut subset, n) {
                    break;
                }
            }
            best
        })
        .reduce(|| None, reduce_min)
}

fn pruned_search<T: Scalar>(points: &[Point<T>], k: usize) -> Option<(T, Vec<usize>)> {
    let n = points.len();
    (0..=n - k)
        .into_par_iter()
        .map(|first| {
            let mut state = Dfs {
                points,
                k,
                prefix: vec![first],
                buf: Vec::with_capacity(k),
                scratch: Vec::with_capacity(k + 1),
                best: None,
            };
            state.descend();
            state.best
        })
        .reduce(|| None, reduce_min)
}

struct Dfs<'a, T> {
    points: &'a [Point<T>],
    k: usize,
    prefix: Vec<usize>,
    buf: Vec<Point<T>>,
    scratch: Vec<Point<T>>,
    best: Option<(T, Vec<usize>)>,
}

impl<T: Scalar> Dfs<'_, T> {
    fn prefix_area(&mut self) -> T {
        self.buf.clear();
        self.buf.extend(self.prefix.iter().map(|&i| self.points[i].clone()));
        hull_area_in_place(&mut self.buf, &mut self.scratch)
    }

    /// Subsets are visited in lexicographic order, so an incumbent always
    /// precedes later candidates and exact ties can be pruned. Float mode
    /// keeps a relative margin since rounded hull areas are not exactly
    /// monotone under inclusion.
    fn dominated(&self, partial: &T) -> bool {
        let Some((inc, _)) = &self.best else { return false };
        match T::MODE {
            Mode::Exact => partial >= inc,
            Mode::Float => {
                let (p, i) = (partial.to_double(), inc.to_double());
                p > i + 1e-9 * i.abs().max(f64::MIN_POSITIVE)
            }
        }
    }

    fn descend(&mut self) {
        let n = self.points.len();
        let depth = self.prefix.len();
        if depth >= 3 || depth == self.k {
            let a = self.prefix_area();
            if depth == self.k {
                let replace = match &self.best {
                    None => true,
                    Some((inc, _)) => a < *inc,
                };
                if replace {
                    self.best = Some((a, self.prefix.clone()));
                }
                return;
            }
            if self.dominated(&a) {
                return;
            }
        }
        let last = *self.prefix.last().expect("non-empty prefix");
        let remaining = self.k - depth;
        for next in last + 1..=n - remaining {
            self.prefix.push(next);
            self.descend();
            self.prefix.pop();
        }
    }
}

/// Minimum hull area over `trials` uniformly sampled k-subsets. Never below
/// [`min_kgon`]'s value.
pub fn min_kgon_sampled_check<T: Scalar>(ps: &PointSet<T>, k: usize, trials: usize, seed: u64) -> Result<T> {
    let n = ps.len();
    check_k(n, k)?;
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<T> = None;
    let mut buf = Vec::with_capacity(k);
    let mut scratch = Vec::with_capacity(k + 1);
    for _ in 0..trials {
        let idx = rand::seq::index::sample(&mut rng, n, k);
        buf.clear();
        buf.extend(idx.iter().map(|i| ps.points()[i].clone()));
        let a = hull_area_in_place(&mut buf, &mut scratch);
        best = Some(match best {
            None => a,
            Some(b) => T::min_of(b, a),
        });
    }
    Ok(best.expect("trials >= 1"))
}
