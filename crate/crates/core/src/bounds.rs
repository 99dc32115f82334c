//! Constructive upper bounds.
//!
//! * [`pigeonhole_partition`] slices a unit-area rectangle into
//!   `m = ⌊(n-1)/(n'-1)⌋` congruent strips and returns a strip holding at
//!   least `n'` points.
//! * [`extract_kgon`] runs the recursive halving argument on concrete
//!   points: with `β = k - 2` and `n >= 2^s β + 2`, `s` area-bisecting cuts
//!   through a point of the current region leave a convex region of area
//!   `2^-s` that still holds `k` points.
//! * [`upper_bound`] evaluates the resulting closed-form bounds on the
//!   supremum of the minimum k-gon area for `n` points.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, halving_line, ConvexRegion, HalvingCut, HalvingOptions, Point, Side};
use crate::kgon::PointSet;
use crate::scalar::{FloatScalar, Rational, Scalar};

/// A strip of the domain holding at least `n'` points.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct CrowdedCell<T: Scalar> {
    pub cell_region: ConvexRegion<T>,
    /// `(row, col)`; strips are rows stacked along the longer side.
    pub cell_index: (usize, usize),
    pub member_indices: Vec<usize>,
    pub cell_count_total: usize,
}

/// Pigeonhole step: `m = ⌊(n-1)/(n'-1)⌋` closed strips, the first one (from
/// the bottom) containing at least `n'` points. Points on a shared edge count
/// for both strips.
pub fn pigeonhole_partition<T: Scalar>(ps: &PointSet<T>, n_prime: usize) -> Result<CrowdedCell<T>> {
    let n = ps.len();
    if n_prime < 3 {
        return Err(Error::Invalid(format!("n' = {n_prime} must be at least 3")));
    }
    if n_prime > n {
        return Err(Error::Invalid(format!("n' = {n_prime} exceeds point count {n}")));
    }
    let (width, height) = ps
        .domain()
        .extent()
        .ok_or_else(|| Error::Invalid("pigeonhole partition needs a rectangular domain".into()))?;
    let m = (n - 1) / (n_prime - 1);
    let strip = height / T::of_usize(m);
    for row in 0..m {
        let lo = strip.clone() * T::of_usize(row);
        let hi = strip.clone() * T::of_usize(row + 1);
        let region = ConvexRegion::from_corners(
            Point::new(T::zero(), lo.clone()),
            Point::new(width.clone(), hi.clone()),
        );
        let slack = T::from_double(T::containment_slack()).unwrap_or_else(T::zero);
        let members: Vec<usize> = ps
            .points()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.y >= lo.clone() - slack.clone() && p.y <= hi.clone() + slack.clone())
            .map(|(i, _)| i)
            .collect();
        if members.len() >= n_prime {
            return Ok(CrowdedCell {
                cell_region: region,
                cell_index: (row, 0),
                member_indices: members,
                cell_count_total: m,
            });
        }
    }
    Err(Error::Invalid("no crowded cell found; points outside the domain?".into()))
}

/// How the extractor picks the point each cut passes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorStrategy {
    /// Lowest-index point of the current region.
    #[default]
    First,
    /// Point closest to the current region's centroid (ties: lowest index).
    Centroid,
}

impl std::str::FromStr for AnchorStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "lowest-index" => Ok(AnchorStrategy::First),
            "centroid" | "nearest-to-centroid" => Ok(AnchorStrategy::Centroid),
            other => Err(Error::Parse(format!("unknown anchor strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExtractOptions {
    pub strategy: AnchorStrategy,
    pub halving: HalvingOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct TraceLevel<T: Scalar> {
    pub region: ConvexRegion<T>,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub area: T,
    pub point_indices: Vec<usize>,
    /// Cut applied to this level's region; `None` on the last level.
    pub cut: Option<HalvingCut<T>>,
    /// Which half of `cut` became the next level.
    pub kept: Option<Side>,
}

/// Cut-by-cut record of one extraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct ExtractionTrace<T: Scalar> {
    pub levels: Vec<TraceLevel<T>>,
    pub s: u32,
    pub beta: usize,
    pub k: usize,
    pub final_subset: Vec<usize>,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub final_area: T,
}

impl<T: Scalar> ExtractionTrace<T> {
    pub fn last_level(&self) -> &TraceLevel<T> {
        self.levels.last().expect("at least one level")
    }
}

/// Minimum point count `2^j β + 2` at depth `s - j`.
pub fn level_threshold(s: u32, level: u32, beta: usize) -> u128 {
    (1u128 << (s - level)) * beta as u128 + 2
}

/// Largest `s` with `2^s β + 2 <= n`.
pub fn halving_depth(n: usize, beta: usize) -> u32 {
    let mut s = 0;
    while (1u128 << (s + 1)) * beta as u128 + 2 <= n as u128 {
        s += 1;
    }
    s
}

/// Executes the recursive halving argument on `ps` and returns the trace.
///
/// Each round anchors a cut at a point of the current region, bisects the
/// region's area through it, and keeps a closed half (left on ties) that
/// together with the anchor still meets the next count threshold. The final
/// subset is the `k` lowest-index points of the last region.
pub fn extract_kgon<T: FloatScalar>(ps: &PointSet<T>, k: usize, opts: &ExtractOptions) -> Result<ExtractionTrace<T>> {
    let n = ps.len();
    if k < 4 {
        return Err(Error::KTooSmall);
    }
    if k > n {
        return Err(Error::KExceedsPointCount);
    }
    let beta = k - 2;
    let s = halving_depth(n, beta);
    let points = ps.points();

    let mut region = ps.domain().as_region();
    let mut members: Vec<usize> = (0..n).collect();
    let mut levels = Vec::with_capacity(s as usize + 1);
    for round in 1..=s {
        let anchor_idx = pick_anchor(points, &members, &region, opts.strategy);
        let anchor = points[anchor_idx];
        let cut = halving_line(&region, &anchor, &opts.halving)?;
        let line = cut.line();
        let need = level_threshold(s, round, beta);
        let others_in = |side: Side| -> Vec<usize> {
            members.iter().copied().filter(|&i| i != anchor_idx && line.on_side(&points[i], side)).collect()
        };
        let left = others_in(Side::Left);
        let (kept, mut next) = if left.len() as u128 + 1 >= need {
            (Side::Left, left)
        } else {
            (Side::Right, others_in(Side::Right))
        };
        if (next.len() as u128) + 1 < need {
            return Err(Error::Invalid(format!(
                "round {round}: crowded half holds {} points, needs {need}",
                next.len() + 1
            )));
        }
        next.push(anchor_idx);
        next.sort_unstable();
        let (half, _) = cut.half(kept);
        let next_region = half.clone();
        let area = region.area();
        levels.push(TraceLevel {
            region: std::mem::replace(&mut region, next_region),
            area,
            point_indices: std::mem::replace(&mut members, next),
            cut: Some(cut),
            kept: Some(kept),
        });
    }

    let final_subset: Vec<usize> = members.iter().copied().take(k).collect();
    let pts: Vec<_> = final_subset.iter().map(|&i| points[i]).collect();
    let final_area = convex_hull(&pts)?.area();
    let area = region.area();
    levels.push(TraceLevel { region, area, point_indices: members, cut: None, kept: None });
    Ok(ExtractionTrace { levels, s, beta, k, final_subset, final_area })
}

fn pick_anchor<T: FloatScalar>(
    points: &[Point<T>],
    members: &[usize],
    region: &ConvexRegion<T>,
    strategy: AnchorStrategy,
) -> usize {
    match strategy {
        AnchorStrategy::First => members[0],
        AnchorStrategy::Centroid => {
            let c = region.centroid().expect("non-empty region");
            let mut best = members[0];
            let mut best_d = T::infinity();
            for &i in members {
                let p = points[i];
                let d = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
                if d < best_d {
                    best = i;
                    best_d = d;
                }
            }
            best
        }
    }
}

/// Checks a trace against its certificate conditions: nesting, area
/// halving (relative tolerance `area_tol`), exact count thresholds, and the
/// final subset. Returns a description of the first violation.
pub fn check_trace<T: FloatScalar>(ps: &PointSet<T>, trace: &ExtractionTrace<T>, area_tol: f64) -> Result<(), String> {
    let levels = &trace.levels;
    if levels.len() != trace.s as usize + 1 {
        return Err(format!("{} levels for s = {}", levels.len(), trace.s));
    }
    let initial = ps.domain().as_region().area().to_double();
    if levels[0].point_indices != (0..ps.len()).collect::<Vec<_>>() {
        return Err("level 0 does not hold every point".into());
    }
    if levels[0].region != ps.domain().as_region() {
        return Err("level 0 is not the domain".into());
    }
    for (i, level) in levels.iter().enumerate() {
        let area = level.region.area().to_double();
        let cap = initial / (1u64 << i) as f64;
        if area > cap * (1.0 + area_tol) {
            return Err(format!("level {i}: area {area} exceeds {cap}"));
        }
        let need = level_threshold(trace.s, i as u32, trace.beta);
        if (level.point_indices.len() as u128) < need {
            return Err(format!("level {i}: {} points, needs {need}", level.point_indices.len()));
        }
        for &p in &level.point_indices {
            if !level.region.contains(&ps.points()[p]) {
                return Err(format!("level {i}: point {p} outside its region"));
            }
        }
        if i > 0 {
            let parent = &levels[i - 1];
            if let Some(v) = level.region.vertices().iter().find(|v| !parent.region.contains(v)) {
                return Err(format!("level {i}: vertex {v:?} outside the parent region"));
            }
            if !level.point_indices.iter().all(|p| parent.point_indices.contains(p)) {
                return Err(format!("level {i}: points not drawn from the parent"));
            }
        }
    }
    let last = trace.last_level();
    if trace.final_subset.len() != trace.k || !trace.final_subset.iter().all(|p| last.point_indices.contains(p)) {
        return Err("final subset is not k points of the last level".into());
    }
    if trace.final_area.to_double() > last.region.area().to_double() * (1.0 + area_tol) + area_tol {
        return Err("final area exceeds the last region's area".into());
    }
    Ok(())
}

/// Which closed form produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRule {
    /// `n' = k` pigeonhole with the unit-area bound for `k` points.
    TrivialPigeonhole,
    /// `n = 2^s (k-2) + 2`: bound `(k-2)/(n-2)`.
    ExactForm,
    /// Exact-form `n' = 2^⌈i/2⌉ (k-2) + 2` combined with the pigeonhole step.
    CorollaryChain,
    /// The k = 4 indexing of the chain: `n' = 2^⌈i/2⌉ + 2`.
    CorollaryChainQuadrilateral,
    /// k = 4 with the six-point value `1/2`: `½ ⌊(n-1)/5⌋⁻¹`.
    SixPoint,
}

impl fmt::Display for BoundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundRule::TrivialPigeonhole => "trivial_pigeonhole",
            BoundRule::ExactForm => "exact_form",
            BoundRule::CorollaryChain => "corollary_chain",
            BoundRule::CorollaryChainQuadrilateral => "corollary_chain_quadrilateral",
            BoundRule::SixPoint => "six_point",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStep {
    pub rule: BoundRule,
    /// Size of the sub-configuration the rule reduces to.
    pub n_prime: usize,
    /// Dyadic index `i` of the chain rules.
    pub i: Option<u32>,
    /// Bound on the sub-configuration, `Δ'_k(n')`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub sub_bound: Rational,
    /// Number of pigeonhole cells, `⌊(n-1)/(n'-1)⌋`.
    pub cells: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub best_bound: Rational,
    pub best_bound_float: f64,
    pub best_rule: BoundRule,
    pub chain: Vec<BoundStep>,
    pub asymptotic_display: String,
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

fn step(rule: BoundRule, n: usize, n_prime: usize, i: Option<u32>, sub_bound: Rational) -> BoundStep {
    let cells = (n - 1) / (n_prime - 1);
    let value = sub_bound.clone() / Rational::from_integer(BigInt::from(cells));
    BoundStep { rule, n_prime, i, sub_bound, cells, value }
}

/// Smallest `i >= 1` with `n < 2^i c + 2`; then `2^(i-1) c + 2 <= n` holds
/// whenever `n >= c + 2`.
fn dyadic_index(n: usize, c: usize) -> u32 {
    let mut i = 1;
    while (1u128 << i) * c as u128 + 2 <= n as u128 {
        i += 1;
    }
    i
}

/// Every applicable upper bound on the supremum of the minimum k-gon area
/// over `n` points in a unit-area rectangle, and the best of them.
pub fn upper_bound(n: usize, k: usize) -> Result<BoundReport> {
    if k < 4 {
        return Err(Error::KTooSmall);
    }
    if n < k {
        return Err(Error::KExceedsPointCount);
    }
    let beta = k - 2;
    let mut chain = Vec::new();

    chain.push(step(BoundRule::TrivialPigeonhole, n, k, None, Rational::one()));

    let s = halving_depth(n, beta);
    if s >= 1 && (1u128 << s) * beta as u128 + 2 == n as u128 {
        let sub = Rational::new(BigInt::one(), pow2(s));
        chain.push(step(BoundRule::ExactForm, n, n, None, sub));
    }

    let i = dyadic_index(n, beta);
    let half = i.div_ceil(2);
    let n_prime = (1usize << half) * beta + 2;
    if n_prime < n {
        let sub = Rational::new(BigInt::one(), pow2(half));
        chain.push(step(BoundRule::CorollaryChain, n, n_prime, Some(i), sub));
    }

    if k == 4 {
        let i = dyadic_index(n, 1);
        let half = i.div_ceil(2);
        let n_prime = (1usize << half) + 2;
        if half >= 1 && n_prime < n {
            // 2^h + 2 points: bound 2^(1-h)
            let sub = Rational::new(BigInt::from(2), pow2(half));
            chain.push(step(BoundRule::CorollaryChainQuadrilateral, n, n_prime, Some(i), sub));
        }
        if n >= 6 {
            chain.push(step(BoundRule::SixPoint, n, 6, None, Rational::new(BigInt::one(), BigInt::from(2))));
        }
    }

    let best = chain
        .iter()
        .fold(None::<&BoundStep>, |acc, s| match acc {
            Some(b) if b.value <= s.value => Some(b),
            _ => Some(s),
        })
        .expect("trivial rule always applies");
    let best_bound = best.value.clone();
    let best_bound_float = best_bound.to_double();
    let asymptotic_display = format!(
        "({k}-2)/n + O(n^-1.5): {beta}/{n} = {:.6e}; best bound {:.6e} (n * bound = {:.4})",
        beta as f64 / n as f64,
        best_bound_float,
        n as f64 * best_bound_float
    );
    Ok(BoundReport {
        n,
        k,
        best_rule: best.rule,
        best_bound,
        best_bound_float,
        chain,
        asymptotic_display,
    })
}

impl BoundReport {
    pub fn step(&self, rule: BoundRule) -> Option<&BoundStep> {
        self.chain.iter().find(|s| s.rule == rule)
    }

    pub fn is_valid(&self) -> bool {
        !self.best_bound.is_zero() && self.chain.iter().all(|s| s.value >= self.best_bound)
    }
}
