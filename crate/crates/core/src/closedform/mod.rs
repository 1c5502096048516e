//! Exact solutions `u` of `∇²u = −2` with `u = 0` on the boundary; `u(z)` is
//! the expected exit time from `z`.
//!
//! Polynomial solutions are exact. The isosceles-right-triangle and rectangle
//! solutions are Fourier series; their truncations replace the omitted tail by
//! the exact remainder of the boundary cosine series times the hyperbolic
//! factor of the first omitted term, so boundary values vanish to rounding for
//! any number of terms while the interior is unaffected to high order.

mod partial;
mod series;

pub use partial::{
    alternating_cubic_closed, alternating_cubic_sum, cot_partial_fractions, sech_partial_fractions,
    tan_partial_fractions,
};
pub use series::{
    isosceles_right_diagonal_u, isosceles_right_u, rectangle_u, square_center_exit_time, SquareForm,
};

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use crate::domains::{Domain, DomainSpec, Point2};
use crate::error::{invalid, Error, Result};

/// Default number of Fourier terms for series solutions.
pub const DEFAULT_TERMS: usize = 60;

/// Relative slack for points on the boundary.
pub(crate) const EDGE: f64 = 1e-12;

fn exterior(x: f64, y: f64) -> Error {
    Error::NotInterior { x, y }
}

/// Wedge `|θ| < α` with `α < π/4`: `(r²/2)(cos 2θ / cos 2α − 1)`.
pub fn wedge_u(r: f64, theta: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < FRAC_PI_4) {
        return Err(invalid(format!(
            "wedge half-angle must lie in (0, π/4) for a finite exit time, got {alpha}"
        )));
    }
    if r < 0.0 || theta.abs() > alpha * (1.0 + EDGE) {
        return Err(exterior(r * theta.cos(), r * theta.sin()));
    }
    Ok(0.5 * r * r * ((2.0 * theta).cos() / (2.0 * alpha).cos() - 1.0))
}

/// Disc of radius `r0`: `(r0² − r²)/2`.
pub fn disc_u(r: f64, r0: f64) -> Result<f64> {
    if r0 <= 0.0 {
        return Err(invalid("r0 must be positive"));
    }
    if r < 0.0 || r > r0 * (1.0 + EDGE) {
        return Err(exterior(r, 0.0));
    }
    Ok(0.5 * (r0 * r0 - r * r))
}

/// Equilateral triangle of side `a`, centroid at the origin, vertex up:
/// `(1/18a)(2√3y + a)(√3y + 3x − a)(√3y − 3x − a)`.
pub fn equilateral_triangle_u(x: f64, y: f64, a: f64) -> Result<f64> {
    let s3 = 3f64.sqrt();
    let l1 = 2.0 * s3 * y + a;
    let l2 = s3 * y + 3.0 * x - a;
    let l3 = s3 * y - 3.0 * x - a;
    let slack = EDGE * a;
    if l1 < -slack || l2 > slack || l3 > slack {
        return Err(exterior(x, y));
    }
    Ok(l1 * l2 * l3 / (18.0 * a))
}

/// Disc `|z − a| < a` minus the disc `|z| ≤ b`, in polar coordinates:
/// `−½(r² − b²)(1 − 2a cos θ / r)`.
pub fn circular_cutout_u(r: f64, theta: f64, a: f64, b: f64) -> Result<f64> {
    if !(a >= b && b > 0.0) {
        return Err(invalid(format!("cutout needs a >= b > 0, got a = {a}, b = {b}")));
    }
    if r < b * (1.0 - EDGE) || r > 2.0 * a * theta.cos() + EDGE * a {
        return Err(exterior(r * theta.cos(), r * theta.sin()));
    }
    Ok(-0.5 * (r * r - b * b) * (1.0 - 2.0 * a * theta.cos() / r))
}

/// Ellipse `x²/a² + y²/b² < 1`: `a²b²/(a² + b²) (1 − x²/a² − y²/b²)`.
pub fn ellipse_u(x: f64, y: f64, a: f64, b: f64) -> Result<f64> {
    let q = 1.0 - (x / a).powi(2) - (y / b).powi(2);
    if q < -EDGE {
        return Err(exterior(x, y));
    }
    Ok(a * a * b * b / (a * a + b * b) * q)
}

/// Strip `|x| < a`: `a² − x²`.
pub fn strip_u(x: f64, a: f64) -> Result<f64> {
    if x.abs() > a * (1.0 + EDGE) {
        return Err(exterior(x, 0.0));
    }
    Ok(a * a - x * x)
}

/// Closed-form expected exit time at `pt` for any domain that has one.
pub fn field(domain: &Domain, pt: Point2, terms: usize) -> Result<f64> {
    let Point2 { x, y } = pt;
    match *domain.spec() {
        DomainSpec::Disc { r0 } => disc_u(pt.norm(), r0),
        DomainSpec::Wedge { p } => {
            if p >= 0.5 {
                return Err(Error::NotApplicable(
                    "wedge with p >= 1/2 has infinite expected exit time".into(),
                ));
            }
            wedge_u(pt.norm(), pt.arg(), FRAC_PI_2 * p)
        }
        DomainSpec::RegularPolygon { m: 3 } => equilateral_triangle_u(x, y, 3f64.sqrt()),
        DomainSpec::RegularPolygon { m: 4 } => {
            rectangle_u(x, y, FRAC_1_SQRT_2, FRAC_1_SQRT_2, terms)
        }
        DomainSpec::Ellipse { a, b } => ellipse_u(x, y, a, b),
        DomainSpec::Rectangle { a, b } => rectangle_u(x, y, a, b, terms),
        DomainSpec::Strip { a } => strip_u(x, a),
        DomainSpec::CircularCutout { a, b } => circular_cutout_u(pt.norm(), pt.arg(), a, b),
        DomainSpec::EquilateralTriangle { a } => equilateral_triangle_u(x, y, a),
        DomainSpec::IsoscelesRightTriangle { a } => isosceles_right_u(x, y, a, terms),
        _ => Err(Error::NotApplicable(format!(
            "no closed-form solution for {}",
            domain.spec().kind()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn wedge_examples() {
        let alpha = PI / 8.0;
        assert!(wedge_u(1.3, alpha, alpha).unwrap().abs() < 1e-15);
        assert!(wedge_u(1.3, -alpha, alpha).unwrap().abs() < 1e-15);
        let v = wedge_u(1.0, 0.0, alpha).unwrap();
        assert!((v - (SQRT_2 - 1.0) / 2.0).abs() < 1e-15);
        assert!((wedge_u(2.0, 0.0, alpha).unwrap() - 4.0 * v).abs() < 1e-15);
        assert!(wedge_u(1.0, 0.0, PI / 4.0).is_err());
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc_u(0.0, 1.0).unwrap(), 0.5);
        assert_eq!(disc_u(1.0, 1.0).unwrap(), 0.0);
        assert_eq!(disc_u(1.0, 2.0).unwrap(), 1.5);
        assert!(disc_u(1.5, 1.0).is_err());
    }

    #[test]
    fn triangle_centroid() {
        let v = equilateral_triangle_u(0.0, 0.0, 3f64.sqrt()).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-15);
        assert!(equilateral_triangle_u(0.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn cutout_examples() {
        let (a, b) = (1.0, 0.4);
        assert!((circular_cutout_u(a, 0.0, a, b).unwrap() - 0.5 * (a * a - b * b)).abs() < 1e-15);
        assert_eq!(circular_cutout_u(b, 0.0, a, b).unwrap(), 0.0);
        let tiny = circular_cutout_u(a, 0.0, a, 1e-9).unwrap();
        assert!((tiny - a * a / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ellipse_and_strip() {
        let (a, b) = (2.0, 0.5);
        assert!((ellipse_u(0.0, 0.0, a, b).unwrap() - a * a * b * b / (a * a + b * b)).abs() < 1e-15);
        assert_eq!(ellipse_u(0.0, 0.0, 1.5, 1.5).unwrap(), 1.125);
        assert!(ellipse_u(a, 0.0, a, b).unwrap().abs() < 1e-15);
        assert_eq!(strip_u(0.0, 3.0).unwrap(), 9.0);
        assert_eq!(strip_u(3.0, 3.0).unwrap(), 0.0);
        assert_eq!(strip_u(1.5, 3.0).unwrap(), 6.75);
    }

    #[test]
    fn field_dispatch() {
        let d: Domain = "polygon:m=3".parse().unwrap();
        assert!((field(&d, Point2::ORIGIN, 60).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        let lens: Domain = "lens".parse().unwrap();
        assert!(matches!(field(&lens, Point2::ORIGIN, 60), Err(Error::NotApplicable(_))));
    }
}
