//! Computational tools for the Heilbronn problem for k-gons: place `n`
//! points in a unit-area domain so that the smallest convex hull of any `k`
//! of them is as large as possible.
//!
//! * [`geom`]: hulls, shoelace areas, half-plane clipping, area-bisecting
//!   lines through a point.
//! * [`kgon`]: minimum hull area over all k-subsets, exhaustive and pruned.
//! * [`bounds`]: pigeonhole cells, the recursive halving extractor and the
//!   closed-form upper bounds.
//! * [`configs`]: the `alpha x (k - 1)` grid configurations and their exact
//!   verification.
//! * [`search`]: simulated annealing for good configurations.
//! * [`io`], [`render`]: JSON point-set files and SVG figures.
//!
//! Geometry is generic over [`Scalar`]; the aliases below fix the two
//! arithmetic modes used throughout.

pub mod bounds;
pub mod configs;
pub mod error;
pub mod geom;
pub mod io;
pub mod kgon;
pub mod render;
pub mod scalar;
pub mod search;

pub use bounds::{
    check_trace, extract_kgon, pigeonhole_partition, upper_bound, AnchorStrategy, BoundReport, BoundRule,
    CrowdedCell, ExtractOptions, ExtractionTrace,
};
pub use configs::{grid_config, verify_config, GridConfig, VerificationReport, Verdict};
pub use error::{Error, Result};
pub use geom::{
    area, clip_halfplane, convex_hull, halving_line, ConvexRegion, HalvingCut, HalvingOptions, Line, Point, Side,
};
pub use kgon::{min_kgon, min_kgon_sampled_check, Domain, KGonOptions, KGonResult, PointSet};
pub use scalar::{FloatScalar, Mode, Rational, Scalar};
pub use search::{optimize, probe_conjecture, ProbeReport, ProbeTarget, SearchConfig, SearchResult};

pub type ExactPoint = Point<Rational>;
pub type FloatPoint = Point<f64>;
pub type ExactRegion = ConvexRegion<Rational>;
pub type FloatRegion = ConvexRegion<f64>;
pub type ExactPointSet = PointSet<Rational>;
pub type FloatPointSet = PointSet<f64>;
pub type ExactKGon = KGonResult<Rational>;
pub type FloatKGon = KGonResult<f64>;
pub type FloatTrace = ExtractionTrace<f64>;
pub type FloatCut = HalvingCut<f64>;
