//! Domain catalogue, membership and distance to the boundary.
//!
//! Every supported domain is an intersection of finitely many open discs,
//! disc exteriors and half-planes, so the distance from an interior point to
//! the complement is the minimum of the per-constraint distances. That is the
//! radius walk-on-spheres needs.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conformal::ngram_vertex_radii;
use crate::error::{invalid, Error, Result};

/// A point of the plane, equivalently the complex number `x + iy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Point2::new(r * theta.cos(), r * theta.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn arg(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<Complex64> for Point2 {
    fn from(z: Complex64) -> Self {
        Point2::new(z.re, z.im)
    }
}

impl From<Point2> for Complex64 {
    fn from(p: Point2) -> Self {
        Complex64::new(p.x, p.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Shape parameters of one of the supported domains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    /// `|z| < r0`.
    Disc { r0: f64 },
    /// Upper half of the disc `|z| < r0`.
    HalfDisc { r0: f64 },
    /// `|arg z| < πp/2`.
    Wedge { p: f64 },
    /// Regular `m`-gon inscribed in the unit circle with a horizontal bottom edge.
    RegularPolygon { m: u32 },
    /// Symmetric `2n`-gon from the Schwarz–Christoffel map with exterior
    /// angles `πμ1`, `πμ2`, normalized so the map has unit derivative at 0.
    NGram { n: u32, mu1: f64, mu2: f64 },
    /// `|z − 1| < √2` and `|z + 1| < √2`.
    Lens,
    /// `x²/a² + y²/b² < 1`.
    Ellipse { a: f64, b: f64 },
    /// `|x| < a`, `|y| < b`.
    Rectangle { a: f64, b: f64 },
    /// `|x| < a`.
    Strip { a: f64 },
    /// `|z − a| < a` with the disc `|z| ≤ b` removed.
    CircularCutout { a: f64, b: f64 },
    /// Side `a`, centroid at the origin, one vertex on the positive y axis.
    EquilateralTriangle { a: f64 },
    /// Legs of length `a` along the axes, hypotenuse on `y = −x`.
    IsoscelesRightTriangle { a: f64 },
}

impl DomainSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            DomainSpec::Disc { .. } => "disc",
            DomainSpec::HalfDisc { .. } => "halfdisc",
            DomainSpec::Wedge { .. } => "wedge",
            DomainSpec::RegularPolygon { .. } => "polygon",
            DomainSpec::NGram { .. } => "ngram",
            DomainSpec::Lens => "lens",
            DomainSpec::Ellipse { .. } => "ellipse",
            DomainSpec::Rectangle { .. } => "rectangle",
            DomainSpec::Strip { .. } => "strip",
            DomainSpec::CircularCutout { .. } => "cutout",
            DomainSpec::EquilateralTriangle { .. } => "triangle",
            DomainSpec::IsoscelesRightTriangle { .. } => "rtriangle",
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be a positive finite number, got {v}")))
            }
        }
        match *self {
            DomainSpec::Disc { r0 } | DomainSpec::HalfDisc { r0 } => positive("r0", r0),
            DomainSpec::Wedge { p } => {
                if p > 0.0 && p <= 1.0 {
                    Ok(())
                } else {
                    Err(invalid(format!("wedge parameter p must lie in (0, 1], got {p}")))
                }
            }
            DomainSpec::RegularPolygon { m } => {
                if m >= 3 {
                    Ok(())
                } else {
                    Err(invalid(format!("polygon needs m >= 3 sides, got {m}")))
                }
            }
            DomainSpec::NGram { n, mu1, mu2 } => {
                if n < 2 {
                    return Err(invalid(format!("n-gram needs n >= 2, got {n}")));
                }
                for (name, mu) in [("mu1", mu1), ("mu2", mu2)] {
                    if !(mu > -1.0 && mu < 1.0) {
                        return Err(invalid(format!("{name} must lie in (-1, 1), got {mu}")));
                    }
                }
                let want = 2.0 / n as f64;
                if ((mu1 + mu2) - want).abs() > 1e-12 {
                    return Err(invalid(format!(
                        "n-gram angles must satisfy mu1 + mu2 = 2/n = {want}, got {}",
                        mu1 + mu2
                    )));
                }
                Ok(())
            }
            DomainSpec::Lens => Ok(()),
            DomainSpec::Ellipse { a, b } | DomainSpec::Rectangle { a, b } => {
                positive("a", a)?;
                positive("b", b)
            }
            DomainSpec::CircularCutout { a, b } => {
                positive("a", a)?;
                positive("b", b)?;
                if a >= b {
                    Ok(())
                } else {
                    Err(invalid(format!("cutout needs a >= b, got a = {a}, b = {b}")))
                }
            }
            DomainSpec::Strip { a }
            | DomainSpec::EquilateralTriangle { a }
            | DomainSpec::IsoscelesRightTriangle { a } => positive("a", a),
        }
    }

    pub fn is_polygonal(&self) -> bool {
        matches!(
            self,
            DomainSpec::RegularPolygon { .. }
                | DomainSpec::NGram { .. }
                | DomainSpec::Rectangle { .. }
                | DomainSpec::EquilateralTriangle { .. }
                | DomainSpec::IsoscelesRightTriangle { .. }
        )
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, DomainSpec::Wedge { .. } | DomainSpec::Strip { .. })
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = self.kind();
        match *self {
            DomainSpec::Disc { r0 } | DomainSpec::HalfDisc { r0 } => write!(f, "{kind}:r0={r0}"),
            DomainSpec::Wedge { p } => write!(f, "{kind}:p={p}"),
            DomainSpec::RegularPolygon { m } => write!(f, "{kind}:m={m}"),
            DomainSpec::NGram { n, mu1, mu2 } => write!(f, "{kind}:n={n},mu1={mu1},mu2={mu2}"),
            DomainSpec::Lens => write!(f, "{kind}"),
            DomainSpec::Ellipse { a, b }
            | DomainSpec::Rectangle { a, b }
            | DomainSpec::CircularCutout { a, b } => write!(f, "{kind}:a={a},b={b}"),
            DomainSpec::Strip { a }
            | DomainSpec::EquilateralTriangle { a }
            | DomainSpec::IsoscelesRightTriangle { a } => write!(f, "{kind}:a={a}"),
        }
    }
}

/// Parses `kind[:key=value,...]`, e.g. `disc:r0=1`, `wedge:p=0.25`,
/// `ngram:n=5,mu1=0.3,mu2=0.1`, `lens`. Disc radii default to 1.
impl FromStr for DomainSpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            input: input.to_string(),
            reason,
        };
        let text = input.trim();
        let (kind, rest) = match text.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (text, ""),
        };
        let mut pairs: Vec<(String, String)> = Vec::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| parse_err(format!("expected key=value, found `{item}`")))?;
                let k = k.trim().to_ascii_lowercase();
                if pairs.iter().any(|(seen, _)| *seen == k) {
                    return Err(parse_err(format!("duplicate key `{k}`")));
                }
                pairs.push((k, v.trim().to_string()));
            }
        }
        let allowed: &[&str] = match kind.to_ascii_lowercase().as_str() {
            "disc" | "halfdisc" => &["r0"],
            "wedge" => &["p"],
            "polygon" => &["m"],
            "ngram" => &["n", "mu1", "mu2"],
            "lens" => &[],
            "ellipse" | "rectangle" | "cutout" => &["a", "b"],
            "strip" | "triangle" | "rtriangle" => &["a"],
            other => return Err(parse_err(format!("unknown domain kind `{other}`"))),
        };
        if let Some((k, _)) = pairs.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(parse_err(format!("unexpected key `{k}` for `{kind}`")));
        }
        let real = |key: &str, default: Option<f64>| -> Result<f64> {
            match pairs.iter().find(|(k, _)| k == key) {
                Some((_, v)) => v
                    .parse::<f64>()
                    .map_err(|_| parse_err(format!("`{key}` is not a number: `{v}`"))),
                None => default.ok_or_else(|| parse_err(format!("missing key `{key}`"))),
            }
        };
        let int = |key: &str| -> Result<u32> {
            let (_, v) = pairs
                .iter()
                .find(|(k, _)| k == key)
                .ok_or_else(|| parse_err(format!("missing key `{key}`")))?;
            v.parse::<u32>()
                .map_err(|_| parse_err(format!("`{key}` is not a nonnegative integer: `{v}`")))
        };
        let spec = match kind.to_ascii_lowercase().as_str() {
            "disc" => DomainSpec::Disc { r0: real("r0", Some(1.0))? },
            "halfdisc" => DomainSpec::HalfDisc { r0: real("r0", Some(1.0))? },
            "wedge" => DomainSpec::Wedge { p: real("p", None)? },
            "polygon" => DomainSpec::RegularPolygon { m: int("m")? },
            "ngram" => DomainSpec::NGram {
                n: int("n")?,
                mu1: real("mu1", None)?,
                mu2: real("mu2", None)?,
            },
            "lens" => DomainSpec::Lens,
            "ellipse" => DomainSpec::Ellipse { a: real("a", None)?, b: real("b", None)? },
            "rectangle" => DomainSpec::Rectangle { a: real("a", None)?, b: real("b", None)? },
            "cutout" => DomainSpec::CircularCutout { a: real("a", None)?, b: real("b", None)? },
            "strip" => DomainSpec::Strip { a: real("a", None)? },
            "triangle" => DomainSpec::EquilateralTriangle { a: real("a", None)? },
            _ => DomainSpec::IsoscelesRightTriangle { a: real("a", None)? },
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A validated domain with its vertex list cached for polygonal kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    spec: DomainSpec,
    vertices: Vec<Point2>,
}

impl Domain {
    pub fn new(spec: DomainSpec) -> Result<Self> {
        spec.validate()?;
        let vertices = match spec {
            DomainSpec::RegularPolygon { m } => {
                let offset = -FRAC_PI_2 + PI / m as f64;
                (0..m)
                    .map(|k| Point2::from_polar(1.0, offset + 2.0 * PI * k as f64 / m as f64))
                    .collect()
            }
            DomainSpec::NGram { n, mu1, mu2 } => {
                let (outer, inner) = ngram_vertex_radii(n, mu1, mu2)?;
                (0..2 * n)
                    .map(|k| {
                        let r = if k % 2 == 0 { outer } else { inner };
                        Point2::from_polar(r, PI * k as f64 / n as f64)
                    })
                    .collect()
            }
            DomainSpec::Rectangle { a, b } => vec![
                Point2::new(a, -b),
                Point2::new(a, b),
                Point2::new(-a, b),
                Point2::new(-a, -b),
            ],
            DomainSpec::EquilateralTriangle { a } => {
                let s3 = 3f64.sqrt();
                vec![
                    Point2::new(a / 2.0, -a / (2.0 * s3)),
                    Point2::new(0.0, a / s3),
                    Point2::new(-a / 2.0, -a / (2.0 * s3)),
                ]
            }
            DomainSpec::IsoscelesRightTriangle { a } => vec![
                Point2::new(a / 2.0, -a / 2.0),
                Point2::new(a / 2.0, a / 2.0),
                Point2::new(-a / 2.0, a / 2.0),
            ],
            _ => Vec::new(),
        };
        Ok(Domain { spec, vertices })
    }

    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    /// Counterclockwise vertex list of a polygonal domain.
    pub fn polygon_vertices(&self) -> Result<&[Point2]> {
        if self.spec.is_polygonal() {
            Ok(&self.vertices)
        } else {
            Err(Error::NotPolygonal)
        }
    }

    /// Strict interior membership.
    pub fn contains(&self, pt: Point2) -> bool {
        if !pt.is_finite() {
            return false;
        }
        let Point2 { x, y } = pt;
        match self.spec {
            DomainSpec::Disc { r0 } => pt.norm() < r0,
            DomainSpec::HalfDisc { r0 } => y > 0.0 && pt.norm() < r0,
            DomainSpec::Wedge { p } => pt != Point2::ORIGIN && pt.arg().abs() < FRAC_PI_2 * p,
            DomainSpec::Lens => {
                (x - 1.0).hypot(y) < SQRT_2 && (x + 1.0).hypot(y) < SQRT_2
            }
            DomainSpec::Ellipse { a, b } => (x / a).powi(2) + (y / b).powi(2) < 1.0,
            DomainSpec::Rectangle { a, b } => x.abs() < a && y.abs() < b,
            DomainSpec::Strip { a } => x.abs() < a,
            DomainSpec::CircularCutout { a, b } => pt.norm() > b && (x - a).hypot(y) < a,
            DomainSpec::RegularPolygon { .. }
            | DomainSpec::NGram { .. }
            | DomainSpec::EquilateralTriangle { .. }
            | DomainSpec::IsoscelesRightTriangle { .. } => {
                even_odd(&self.vertices, pt) && segment_distance(&self.vertices, pt) > 0.0
            }
        }
    }

    /// Euclidean distance from an interior point to the boundary.
    pub fn boundary_distance(&self, pt: Point2) -> Result<f64> {
        if !self.contains(pt) {
            return Err(Error::NotInterior { x: pt.x, y: pt.y });
        }
        Ok(self.distance_unchecked(pt))
    }

    /// As [`Domain::boundary_distance`] without the membership check; the
    /// result is meaningless for exterior points.
    pub(crate) fn distance_unchecked(&self, pt: Point2) -> f64 {
        let Point2 { x, y } = pt;
        match self.spec {
            DomainSpec::Disc { r0 } => r0 - pt.norm(),
            DomainSpec::HalfDisc { r0 } => (r0 - pt.norm()).min(y),
            DomainSpec::Wedge { p } => {
                let alpha = FRAC_PI_2 * p;
                if p == 1.0 {
                    x
                } else {
                    // Distance to the two lines through the origin at ±α.
                    let (s, c) = alpha.sin_cos();
                    (s * x - c * y).min(s * x + c * y)
                }
            }
            DomainSpec::Lens => (SQRT_2 - (x - 1.0).hypot(y)).min(SQRT_2 - (x + 1.0).hypot(y)),
            DomainSpec::Ellipse { a, b } => ellipse_distance(a, b, x, y),
            DomainSpec::Rectangle { a, b } => (a - x.abs()).min(b - y.abs()),
            DomainSpec::Strip { a } => a - x.abs(),
            DomainSpec::CircularCutout { a, b } => (pt.norm() - b).min(a - (x - a).hypot(y)),
            _ => segment_distance(&self.vertices, pt),
        }
    }

    /// Axis-aligned bounding box `(min, max)` of a bounded domain.
    pub fn bounding_box(&self) -> Option<(Point2, Point2)> {
        let b = |x0, y0, x1, y1| Some((Point2::new(x0, y0), Point2::new(x1, y1)));
        match self.spec {
            DomainSpec::Disc { r0 } => b(-r0, -r0, r0, r0),
            DomainSpec::HalfDisc { r0 } => b(-r0, 0.0, r0, r0),
            DomainSpec::Lens => b(1.0 - SQRT_2, -1.0, SQRT_2 - 1.0, 1.0),
            DomainSpec::Ellipse { a, b: bb } => b(-a, -bb, a, bb),
            DomainSpec::CircularCutout { a, b: _ } => b(0.0, -a, 2.0 * a, a),
            DomainSpec::Wedge { .. } | DomainSpec::Strip { .. } => None,
            _ => {
                let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
                for v in &self.vertices {
                    lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
                    hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
                }
                Some((lo, hi))
            }
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Domain::new(s.parse()?)
    }
}

fn even_odd(vertices: &[Point2], pt: Point2) -> bool {
    let mut inside = false;
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.y > pt.y) != (b.y > pt.y) {
            let t = (pt.y - a.y) / (b.y - a.y);
            if pt.x < a.x + t * (b.x - a.x) {
                inside = !inside;
            }
        }
    }
    inside
}

fn point_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.dist(Point2::new(a.x + t * dx, a.y + t * dy))
}

fn segment_distance(vertices: &[Point2], pt: Point2) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| point_segment(pt, vertices[i], vertices[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Distance from `(x, y)` to the ellipse `x²/a² + y²/b² = 1` by bisection on
/// the Lagrange-multiplier equation (robust for points near the axes).
fn ellipse_distance(a: f64, b: f64, x: f64, y: f64) -> f64 {
    let (e0, e1, y0, y1) = if a >= b {
        (a, b, x.abs(), y.abs())
    } else {
        (b, a, y.abs(), x.abs())
    };
    if y1 > 0.0 {
        if y0 > 0.0 {
            let z0 = y0 / e0;
            let z1 = y1 / e1;
            let g = z0 * z0 + z1 * z1 - 1.0;
            if g == 0.0 {
                return 0.0;
            }
            let r0 = (e0 / e1).powi(2);
            let s = ellipse_root(r0, z0, z1, g);
            let x0 = r0 * y0 / (s + r0);
            let x1 = y1 / (s + 1.0);
            (x0 - y0).hypot(x1 - y1)
        } else {
            (y1 - e1).abs()
        }
    } else {
        let numer = e0 * y0;
        let denom = e0 * e0 - e1 * e1;
        if numer < denom {
            let xde = numer / denom;
            let x0 = e0 * xde;
            let x1 = e1 * (1.0 - xde * xde).sqrt();
            (x0 - y0).hypot(x1)
        } else {
            (y0 - e0).abs()
        }
    }
}

fn ellipse_root(r0: f64, z0: f64, z1: f64, g: f64) -> f64 {
    let n0 = r0 * z0;
    let mut s0 = z1 - 1.0;
    let mut s1 = if g < 0.0 { 0.0 } else { n0.hypot(z1) - 1.0 };
    let mut s = 0.0;
    for _ in 0..200 {
        s = 0.5 * (s0 + s1);
        if s == s0 || s == s1 {
            break;
        }
        let r_0 = n0 / (s + r0);
        let r_1 = z1 / (s + 1.0);
        let gs = r_0 * r_0 + r_1 * r_1 - 1.0;
        if gs > 0.0 {
            s0 = s;
        } else if gs < 0.0 {
            s1 = s;
        } else {
            break;
        }
    }
    s
}
