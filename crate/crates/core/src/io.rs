//! JSON point-set files.
//!
//! ```json
//! {"domain": {"type": "rectangle", "d": "1/2"},
//!  "points": [["0", "0"], ["1/4", "3/2"]]}
//! ```
//!
//! Coordinates given as strings are rationals (`"p/q"`, integers or plain
//! decimals) and load in exact mode; any JSON number switches the whole set
//! to float mode. Domain types are `unit_square` (the default when the key
//! is missing), `rectangle` with aspect `d`, and `region` with a `vertices`
//! list describing a unit-area convex polygon.

use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geom::{convex_hull, ConvexRegion, Point};
use crate::kgon::{Domain, PointSet};
use crate::scalar::{format_rational, parse_rational, Mode, Rational, Scalar};

/// `serialize_with` adapter for scalar fields.
pub fn ser_scalar<T: Scalar, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.to_json().serialize(s)
}

/// `serialize_with` adapter for rational fields.
pub fn ser_rational<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

/// A loaded point set in whichever mode the file implied.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPointSet {
    Exact(PointSet<Rational>),
    Float(PointSet<f64>),
}

impl AnyPointSet {
    pub fn mode(&self) -> Mode {
        match self {
            AnyPointSet::Exact(_) => Mode::Exact,
            AnyPointSet::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyPointSet::Exact(p) => p.len(),
            AnyPointSet::Float(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_exact(&self) -> Result<PointSet<Rational>> {
        match self {
            AnyPointSet::Exact(p) => Ok(p.clone()),
            AnyPointSet::Float(p) => p.to_exact(),
        }
    }

    pub fn to_float(&self) -> Result<PointSet<f64>> {
        match self {
            AnyPointSet::Exact(p) => p.to_float(),
            AnyPointSet::Float(p) => Ok(p.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyPointSet::Exact(p) => point_set_to_json(p),
            AnyPointSet::Float(p) => point_set_to_json(p),
        }
    }
}

#[derive(Clone)]
enum Coord {
    Exact(Rational),
    Float(f64),
}

fn parse_coord(v: &Value, what: &str) -> Result<Coord> {
    match v {
        Value::String(s) => Ok(Coord::Exact(parse_rational(s)?)),
        Value::Number(n) => n
            .as_f64()
            .filter(|f| f.is_finite())
            .map(Coord::Float)
            .ok_or_else(|| Error::Parse(format!("{what}: number out of range"))),
        other => Err(Error::Parse(format!("{what}: expected string or number, got {other}"))),
    }
}

fn parse_pair(v: &Value, what: &str) -> Result<(Coord, Coord)> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok((parse_coord(x, what)?, parse_coord(y, what)?)),
        _ => Err(Error::Parse(format!("{what}: expected a [x, y] pair"))),
    }
}

fn as_exact(c: &Coord) -> Rational {
    match c {
        Coord::Exact(r) => r.clone(),
        Coord::Float(f) => Rational::from_float(*f).expect("finite"),
    }
}

fn as_float(c: &Coord) -> f64 {
    match c {
        Coord::Exact(r) => r.to_double(),
        Coord::Float(f) => *f,
    }
}

enum RawDomain {
    UnitSquare,
    Rectangle(Coord),
    Region(Vec<(Coord, Coord)>),
}

fn parse_domain(v: Option<&Value>) -> Result<RawDomain> {
    let Some(v) = v else { return Ok(RawDomain::UnitSquare) };
    let obj = v.as_object().ok_or_else(|| Error::Parse("domain must be an object".into()))?;
    match obj.get("type").and_then(Value::as_str) {
        Some("unit_square") => Ok(RawDomain::UnitSquare),
        Some("rectangle") => {
            let d = obj.get("d").ok_or_else(|| Error::Parse("rectangle domain needs \"d\"".into()))?;
            Ok(RawDomain::Rectangle(parse_coord(d, "domain.d")?))
        }
        Some("region") => {
            let verts = obj
                .get("vertices")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("region domain needs \"vertices\"".into()))?;
            let verts = verts
                .iter()
                .enumerate()
                .map(|(i, v)| parse_pair(v, &format!("domain.vertices[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(RawDomain::Region(verts))
        }
        Some(other) => Err(Error::Parse(format!("unknown domain type {other:?}"))),
        None => Err(Error::Parse("domain.type missing".into())),
    }
}

fn build<T: Scalar>(raw: &RawDomain, pts: &[(Coord, Coord)], conv: impl Fn(&Coord) -> T) -> Result<PointSet<T>> {
    let domain = match raw {
        RawDomain::UnitSquare => Domain::UnitSquare,
        RawDomain::Rectangle(d) => Domain::rectangle(conv(d))?,
        RawDomain::Region(verts) => {
            let verts: Vec<_> = verts.iter().map(|(x, y)| Point::new(conv(x), conv(y))).collect();
            Domain::region(ConvexRegion::from_vertices(verts)?)?
        }
    };
    let points = pts.iter().map(|(x, y)| Point::new(conv(x), conv(y))).collect();
    PointSet::new(points, domain)
}

/// Parses and validates a point-set document.
pub fn parse_point_set(text: &str) -> Result<AnyPointSet> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    let domain = parse_domain(obj.get("domain"))?;
    let points = obj
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("\"points\" array missing".into()))?;
    let points = points
        .iter()
        .enumerate()
        .map(|(i, v)| parse_pair(v, &format!("points[{i}]")))
        .collect::<Result<Vec<_>>>()?;

    let mut coords = points.iter().flat_map(|(x, y)| [x, y]).collect::<Vec<_>>();
    match &domain {
        RawDomain::Rectangle(d) => coords.push(d),
        RawDomain::Region(v) => coords.extend(v.iter().flat_map(|(x, y)| [x, y])),
        RawDomain::UnitSquare => {}
    }
    let float = coords.iter().any(|c| matches!(c, Coord::Float(_)));
    if float {
        build(&domain, &points, as_float).map(AnyPointSet::Float)
    } else {
        build(&domain, &points, as_exact).map(AnyPointSet::Exact)
    }
}

pub fn domain_to_json<T: Scalar>(domain: &Domain<T>) -> Value {
    match domain {
        Domain::UnitSquare => json!({"type": "unit_square"}),
        Domain::Rectangle { d } => json!({"type": "rectangle", "d": d.to_json()}),
        Domain::Region(r) => json!({"type": "region", "vertices": r}),
    }
}

pub fn point_set_to_json<T: Scalar>(ps: &PointSet<T>) -> Value {
    let mut obj = Map::new();
    obj.insert("domain".into(), domain_to_json(ps.domain()));
    obj.insert("points".into(), serde_json::to_value(ps.points()).expect("serializable"));
    Value::Object(obj)
}

/// Regions of every level of a serialized extraction trace, outermost first.
pub fn parse_trace_regions(text: &str) -> Result<Vec<ConvexRegion<f64>>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let levels = doc
        .get("levels")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("trace has no \"levels\" array".into()))?;
    levels
        .iter()
        .enumerate()
        .map(|(i, level)| {
            let verts = level
                .get("region")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("levels[{i}].region missing")))?;
            let pts = verts
                .iter()
                .map(|v| parse_pair(v, &format!("levels[{i}].region")).map(|(x, y)| Point::new(as_float(&x), as_float(&y))))
                .collect::<Result<Vec<_>>>()?;
            if pts.is_empty() {
                Ok(ConvexRegion::empty())
            } else {
                convex_hull(&pts)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_file() {
        let text = r#"{"domain": {"type": "rectangle", "d": "1/2"}, "points": [["0","0"], ["1/2","2"], ["1/4","1"]]}"#;
        let ps = parse_point_set(text).unwrap();
        assert_eq!(ps.mode(), Mode::Exact);
        assert_eq!(ps.len(), 3);
        let back = ps.to_json();
        assert_eq!(back["points"][2], json!(["1/4", "1"]));
        assert_eq!(back["domain"]["d"], json!("1/2"));
    }

    #[test]
    fn numbers_imply_float() {
        let text = r#"{"domain": {"type": "unit_square"}, "points": [[0.5, "1/4"], [1, 0]]}"#;
        let ps = parse_point_set(text).unwrap();
        assert_eq!(ps.mode(), Mode::Float);
        let AnyPointSet::Float(f) = ps else { unreachable!() };
        assert_eq!(f.points()[0], Point::new(0.5, 0.25));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(parse_point_set("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_point_set(r#"{"points": [["2","0"]]}"#), Err(Error::PointOutsideDomain { index: 0 })));
        assert!(matches!(parse_point_set(r#"{"points": [["1/0","0"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_point_set(r#"{"points": [["0"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(
            parse_point_set(r#"{"domain": {"type": "rectangle", "d": "2"}, "points": []}"#),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(parse_point_set(r#"{"domain": {"type": "disk"}, "points": []}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn region_domain() {
        let text = r#"{"domain": {"type": "region", "vertices": [["0","0"],["2","0"],["0","1"]]}, "points": [["1","1/2"]]}"#;
        let ps = parse_point_set(text).unwrap();
        let AnyPointSet::Exact(e) = &ps else { panic!() };
        assert!(matches!(e.domain(), Domain::Region(_)));
        assert_eq!(parse_point_set(&ps.to_json().to_string()).unwrap(), ps);
    }

    fn small_rational() -> impl Strategy<Value = (i64, i64)> {
        (1i64..=50).prop_flat_map(|q| (0..=q, Just(q)))
    }

    proptest! {
        #[test]
        fn rational_files_round_trip(coords in prop::collection::vec((small_rational(), small_rational()), 0..12)) {
            let pts: Vec<Value> = coords
                .iter()
                .map(|((a, b), (c, d))| json!([format!("{a}/{b}"), format!("{c}/{d}")]))
                .collect();
            let text = json!({"domain": {"type": "unit_square"}, "points": pts}).to_string();
            let first = parse_point_set(&text).unwrap();
            let again = parse_point_set(&first.to_json().to_string()).unwrap();
            prop_assert_eq!(first, again);
        }
    }
}
