//! Seeded multi-restart simulated annealing over n-point placements,
//! maximizing the minimum k-gon hull area.
//!
//! Restart `r` draws from its own ChaCha stream `(seed, r)`, so results do
//! not depend on how restarts are scheduled across threads.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geom::{hull_area_in_place, Point};
use crate::io::point_set_to_json;
use crate::kgon::{binomial, check_k, colex_next, min_kgon, Domain, KGonOptions, PointSet};
use crate::scalar::{format_rational, rationalize, Rational, Scalar};

/// Subset tables above this size are refused.
pub const MAX_SEARCH_SUBSETS: u128 = 5_000_000;

/// Denominator used when rounding a configuration for exact re-scoring.
pub const RESCORE_DENOMINATOR: i64 = 1_000_000;

const REDRAW_PROBABILITY: f64 = 0.05;
const RECOMPUTE_EVERY: u64 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    /// Unit square or a `[0, d] x [0, 1/d]` rectangle.
    pub domain: Domain<Rational>,
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    /// Initial Gaussian step as a fraction of the domain side.
    pub step_scale: f64,
    /// Re-score the winner exactly after rounding to denominator 10^6.
    pub exact_rescore: bool,
}

impl SearchConfig {
    pub fn new(n: usize, k: usize, seed: u64) -> Self {
        SearchConfig {
            n,
            k,
            domain: Domain::UnitSquare,
            iterations: 20_000,
            restarts: 8,
            seed,
            initial_temperature: 0.02,
            cooling_rate: 0.9995,
            step_scale: 0.15,
            exact_rescore: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_k(self.n, self.k)?;
        if self.iterations == 0 || self.restarts == 0 {
            return Err(Error::Invalid("iterations and restarts must be at least 1".into()));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::Invalid(format!("cooling rate {} outside (0, 1)", self.cooling_rate)));
        }
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return Err(Error::Invalid("initial temperature must be positive".into()));
        }
        if !(self.step_scale > 0.0 && self.step_scale.is_finite()) {
            return Err(Error::Invalid("step scale must be positive".into()));
        }
        if matches!(self.domain, Domain::Region(_)) {
            return Err(Error::Invalid("search supports unit_square and rectangle domains".into()));
        }
        let subsets = binomial(self.n, self.k);
        if subsets > MAX_SEARCH_SUBSETS {
            return Err(Error::GuardRail { n: self.n, k: self.k, subsets, limit: MAX_SEARCH_SUBSETS });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartSummary {
    pub restart: usize,
    pub best_value: f64,
    /// `(iteration, value)` at each improvement of the incumbent.
    pub incumbent_history: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_value: f64,
    #[serde(serialize_with = "ser_point_set")]
    pub best_points: PointSet<f64>,
    pub best_restart: usize,
    pub per_restart_bests: Vec<RestartSummary>,
    pub evaluations: u64,
    pub seed: u64,
    /// Exact value of the configuration rounded to denominator 10^6.
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact_value: Option<Rational>,
}

fn ser_point_set<S: serde::Serializer>(ps: &PointSet<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    point_set_to_json(ps).serialize(s)
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// All k-subsets with, per point, the subsets containing it.
struct SubsetTable {
    k: usize,
    members: Vec<u16>,
    by_point: Vec<Vec<u32>>,
}

impl SubsetTable {
    fn new(n: usize, k: usize) -> Self {
        let total = binomial(n, k) as usize;
        let mut members = Vec::with_capacity(total * k);
        let mut by_point = vec![Vec::new(); n];
        let mut subset: Vec<usize> = (0..k).collect();
        let mut id = 0u32;
        loop {
            for &i in &subset {
                members.push(i as u16);
                by_point[i].push(id);
            }
            id += 1;
            if !colex_next(&mut subset, n) {
                break;
            }
        }
        SubsetTable { k, members, by_point }
    }

    fn len(&self) -> usize {
        self.members.len() / self.k
    }

    fn subset(&self, id: usize) -> &[u16] {
        &self.members[id * self.k..(id + 1) * self.k]
    }
}

struct Evaluator<'a> {
    table: &'a SubsetTable,
    areas: Vec<f64>,
    buf: Vec<Point<f64>>,
    scratch: Vec<Point<f64>>,
}

impl<'a> Evaluator<'a> {
    fn new(table: &'a SubsetTable, points: &[Point<f64>]) -> Self {
        let mut ev = Evaluator {
            table,
            areas: vec![0.0; table.len()],
            buf: Vec::with_capacity(table.k),
            scratch: Vec::with_capacity(table.k + 1),
        };
        ev.recompute(points);
        ev
    }

    fn subset_area(&mut self, id: usize, points: &[Point<f64>]) -> f64 {
        self.buf.clear();
        self.buf.extend(self.table.subset(id).iter().map(|&i| points[i as usize]));
        hull_area_in_place(&mut self.buf, &mut self.scratch)
    }

    fn recompute(&mut self, points: &[Point<f64>]) {
        for id in 0..self.table.len() {
            self.areas[id] = self.subset_area(id, points);
        }
    }

    fn value(&self) -> f64 {
        self.areas.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Areas of the subsets touching `moved` under `points`, written to
    /// `out`, and the objective value they imply.
    fn trial(&mut self, moved: usize, points: &[Point<f64>], out: &mut Vec<f64>) -> f64 {
        out.clear();
        let ids = &self.table.by_point[moved];
        for &id in ids {
            let a = self.subset_area(id as usize, points);
            out.push(a);
        }
        let mut best = out.iter().copied().fold(f64::INFINITY, f64::min);
        // the untouched subsets: scan all, skipping is not worth the bookkeeping
        let mut cursor = 0;
        for (id, &a) in self.areas.iter().enumerate() {
            if cursor < ids.len() && ids[cursor] as usize == id {
                cursor += 1;
                continue;
            }
            if a < best {
                best = a;
            }
        }
        best
    }

    fn commit(&mut self, moved: usize, new_areas: &[f64]) {
        for (&id, &a) in self.table.by_point[moved].iter().zip(new_areas) {
            self.areas[id as usize] = a;
        }
    }
}

fn clamp(v: f64, hi: f64) -> f64 {
    v.clamp(0.0, hi)
}

struct RestartOutcome {
    summary: RestartSummary,
    points: Vec<Point<f64>>,
    evaluations: u64,
}

fn run_restart(cfg: &SearchConfig, table: &SubsetTable, width: f64, height: f64, restart: usize) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let mut points: Vec<Point<f64>> = (0..cfg.n)
        .map(|_| Point::new(rng.random::<f64>() * width, rng.random::<f64>() * height))
        .collect();
    let mut ev = Evaluator::new(table, &points);
    let mut evaluations = 1u64;
    let mut current = ev.value();
    let mut best = current;
    let mut best_points = points.clone();
    let mut history = vec![(0usize, best)];
    let mut new_areas = Vec::new();
    let mut temperature = cfg.initial_temperature;
    let mut accepted = 0u64;

    for iter in 1..=cfg.iterations {
        let idx = rng.random_range(0..cfg.n);
        let old = points[idx];
        let candidate = if rng.random::<f64>() < REDRAW_PROBABILITY {
            Point::new(rng.random::<f64>() * width, rng.random::<f64>() * height)
        } else {
            let sigma = cfg.step_scale * (temperature / cfg.initial_temperature).sqrt().max(1e-4);
            let dx: f64 = StandardNormal.sample(&mut rng);
            let dy: f64 = StandardNormal.sample(&mut rng);
            Point::new(clamp(old.x + dx * sigma * width, width), clamp(old.y + dy * sigma * height, height))
        };
        points[idx] = candidate;
        let value = ev.trial(idx, &points, &mut new_areas);
        evaluations += 1;
        let delta = value - current;
        let accept = delta >= 0.0 || rng.random::<f64>() < (delta / temperature).exp();
        if accept {
            ev.commit(idx, &new_areas);
            current = value;
            accepted += 1;
            if accepted.is_multiple_of(RECOMPUTE_EVERY) {
                ev.recompute(&points);
                evaluations += 1;
                current = ev.value();
            }
            if current > best {
                best = current;
                best_points.clone_from(&points);
                history.push((iter, best));
            }
        } else {
            points[idx] = old;
        }
        temperature *= cfg.cooling_rate;
    }

    RestartOutcome {
        summary: RestartSummary { restart, best_value: best, incumbent_history: history },
        points: best_points,
        evaluations,
    }
}

/// Runs `cfg.restarts` independent annealing runs and returns the best
/// configuration found. Ties between restarts go to the lowest index.
pub fn optimize(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let (width, height) = cfg.domain.extent().expect("rectangular domain");
    let (width, height) = (width.to_double(), height.to_double());
    let table = SubsetTable::new(cfg.n, cfg.k);

    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, &table, width, height, r))
        .collect();

    let mut winner = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.summary.best_value > outcomes[winner].summary.best_value {
            winner = i;
        }
    }
    let domain: Domain<f64> = cfg.domain.convert().expect("rational domain");
    let best_points = PointSet::new(outcomes[winner].points.clone(), domain)?;
    let scored = min_kgon(&best_points, cfg.k, &KGonOptions { allow_large: true, ..KGonOptions::default() })?;
    let exact_value = if cfg.exact_rescore { Some(exact_rescore(&best_points, &cfg.domain, cfg.k)?) } else { None };

    Ok(SearchResult {
        best_value: scored.area,
        best_points,
        best_restart: winner,
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
        per_restart_bests: outcomes.into_iter().map(|o| o.summary).collect(),
        seed: cfg.seed,
        exact_value,
    })
}

/// Rounds every coordinate to denominator 10^6 (clamped into the domain).
pub fn rationalize_points(ps: &PointSet<f64>, domain: &Domain<Rational>) -> Result<PointSet<Rational>> {
    let (w, h) = domain
        .extent()
        .ok_or_else(|| Error::Invalid("rationalizing needs a rectangular domain".into()))?;
    let zero = Rational::from_ratio(0, 1);
    let fit = |v: f64, hi: &Rational| -> Result<Rational> {
        let r = rationalize(v, RESCORE_DENOMINATOR).ok_or(Error::NonFinite { index: 0 })?;
        Ok(Rational::min_of(Rational::max_of(r, zero.clone()), hi.clone()))
    };
    let pts = ps
        .points()
        .iter()
        .map(|p| Ok(Point::new(fit(p.x, &w)?, fit(p.y, &h)?)))
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(pts, domain.clone())
}

/// Exact minimum k-gon area of the rounded configuration.
pub fn exact_rescore(ps: &PointSet<f64>, domain: &Domain<Rational>, k: usize) -> Result<Rational> {
    let exact = rationalize_points(ps, domain)?;
    let opts = KGonOptions { prune: true, allow_large: true, ..KGonOptions::default() };
    Ok(min_kgon(&exact, k, &opts)?.area)
}

/// Conjectures that can be probed numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeTarget {
    /// Nine points, quadrilaterals, value `1/4`.
    C1,
    /// `alpha (k - 1)` points, k-gons, value `1 / (2 (alpha - 1))`.
    C5 { alpha: usize, k: usize },
}

impl ProbeTarget {
    pub fn n_k(&self) -> (usize, usize) {
        match *self {
            ProbeTarget::C1 => (9, 4),
            ProbeTarget::C5 { alpha, k } => (alpha * (k - 1), k),
        }
    }

    pub fn conjectured(&self) -> Rational {
        let alpha = match *self {
            ProbeTarget::C1 => 3,
            ProbeTarget::C5 { alpha, .. } => alpha,
        };
        Rational::new(BigInt::from(1), BigInt::from(2 * (alpha as i64 - 1)))
    }

    fn validate(&self) -> Result<()> {
        if let ProbeTarget::C5 { alpha, k } = *self {
            if alpha < 2 || k < 4 {
                return Err(Error::Invalid(format!("c5 needs alpha >= 2 and k >= 4, got ({alpha}, {k})")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub target: ProbeTarget,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub conjectured: Rational,
    pub best_found: f64,
    /// `best_found - conjectured`.
    pub gap: f64,
    /// Float best exceeds the conjecture by more than 10^-6.
    pub float_exceeded: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact_best: Option<Rational>,
    /// Float excess confirmed by the exact re-score of the rounded points.
    pub exceeded: bool,
    pub best_points: Value,
    pub evaluations: u64,
    pub seed: u64,
}

/// Margin above the conjectured value that counts as exceeding it.
pub const EXCEED_MARGIN: f64 = 1e-6;

/// Runs [`optimize`] on the `(n, k)` implied by `target`, taking the rest of
/// the budget from `budget`.
pub fn probe_conjecture(target: ProbeTarget, budget: &SearchConfig) -> Result<ProbeReport> {
    target.validate()?;
    let (n, k) = target.n_k();
    let cfg = SearchConfig { n, k, exact_rescore: true, ..budget.clone() };
    let result = optimize(&cfg)?;
    let conjectured = target.conjectured();
    let conj_f = conjectured.to_double();
    let float_exceeded = result.best_value > conj_f + EXCEED_MARGIN;
    let margin = Rational::new(BigInt::from(1), BigInt::from(1_000_000));
    let exceeded = float_exceeded
        && result.exact_value.as_ref().is_some_and(|e| *e > conjectured.clone() + margin.clone());
    Ok(ProbeReport {
        target,
        n,
        k,
        conjectured,
        best_found: result.best_value,
        gap: result.best_value - conj_f,
        float_exceeded,
        exact_best: result.exact_value.clone(),
        exceeded,
        best_points: point_set_to_json(&result.best_points),
        evaluations: result.evaluations,
        seed: result.seed,
    })
}
