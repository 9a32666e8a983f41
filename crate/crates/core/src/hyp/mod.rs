//! Poincaré unit-disc primitives.
//!
//! Points are stored as complex numbers strictly inside the unit circle.
//! Geodesics are described by their two ideal endpoints; every metric
//! computation goes through a Möbius normalisation that sends the geodesic
//! onto the real diameter (see [`Geodesic`]), which gives Fermi coordinates
//! (arc length along the geodesic, signed distance from it) in closed form.

mod geodesic;
pub mod quadrature;

pub use geodesic::{EuclidCurve, FermiCoord, Geodesic, GeodesicShape, Hypercycle};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest Euclidean radius a [`DiscPoint`] may have.
pub const MAX_RADIUS: f64 = 1.0 - 1e-12;

/// A point of the open unit disc.
///
/// Alongside the coordinate the point keeps `1 − |z|²`, which constructors
/// that know it in closed form (e.g. [`point_polar`]) supply exactly. Far from
/// the origin this is what keeps distances accurate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscPoint {
    z: Complex64,
    cr: f64,
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint { z: Complex64 { re: 0.0, im: 0.0 }, cr: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(x, y))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite disc point ({}, {})", z.re, z.im)));
        }
        let r = z.norm();
        if r > MAX_RADIUS {
            return Err(Error::Domain(format!(
                "point ({}, {}) is not strictly inside the unit disc (radius {r})",
                z.re, z.im
            )));
        }
        Ok(DiscPoint { z, cr: (1.0 - r) * (1.0 + r) })
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.z.re
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.z.im
    }

    #[inline]
    pub fn as_complex(&self) -> Complex64 {
        self.z
    }

    /// Euclidean distance to the origin.
    #[inline]
    pub fn radius(&self) -> f64 {
        self.z.norm()
    }

    /// Polar angle in `(-π, π]`.
    #[inline]
    pub fn angle(&self) -> f64 {
        self.z.arg()
    }

    /// `1 − |z|²`.
    #[inline]
    pub fn boundary_gap(&self) -> f64 {
        self.cr
    }

    /// Density `2 / (1 - |z|²)` of the hyperbolic metric at this point.
    #[inline]
    pub fn conformal_factor(&self) -> f64 {
        2.0 / self.cr
    }
}

/// `acosh(1 + x)` for `x >= 0`, accurate when `x` is small.
#[inline]
pub fn acosh1p(x: f64) -> f64 {
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

/// `acosh(x)` routed through [`acosh1p`] so that arguments near 1 keep their
/// precision.
#[inline]
pub fn acosh(x: f64) -> f64 {
    acosh1p(x - 1.0)
}

/// Hyperbolic distance between two disc points.
pub fn dist(p: DiscPoint, q: DiscPoint) -> f64 {
    let num = 2.0 * (p.z - q.z).norm_sqr();
    if num == 0.0 {
        return 0.0;
    }
    let den = p.cr * q.cr;
    acosh1p(num / den)
}

/// The point at hyperbolic distance `r` from the origin in direction `theta`.
///
/// Negative `r` is accepted and means the opposite direction.
pub fn point_polar(theta: f64, r: f64) -> Result<DiscPoint> {
    if !r.is_finite() || !theta.is_finite() {
        return Err(Error::Domain(format!("non-finite polar coordinates ({theta}, {r})")));
    }
    let rho = (r / 2.0).tanh();
    if rho.abs() > MAX_RADIUS {
        return Err(Error::Domain(format!("polar radius {r} reaches the ideal boundary")));
    }
    let c = (r / 2.0).cosh();
    Ok(DiscPoint { z: Complex64::from_polar(rho, theta), cr: 1.0 / (c * c) })
}

/// Nearest point of `g` to `p`, and the signed distance from `g` to `p`
/// (positive on the left of `g` as it runs from its start to its end).
pub fn project_to_geodesic(p: DiscPoint, g: &Geodesic) -> (DiscPoint, f64) {
    let f = g.fermi(p);
    let foot = g
        .from_fermi(f.along, 0.0)
        .expect("foot of a disc point lies inside the disc");
    (foot, f.offset)
}

/// Hyperbolic length of the hypercycle arc between `a` and `b`, measured by
/// adaptive quadrature of the disc metric along the Euclidean circle that
/// carries the hypercycle.
///
/// This is an independent numeric oracle: it never uses the `cosh` stretch
/// law of hypercycles.
pub fn hypercycle_arclength(h: &Hypercycle, a: DiscPoint, b: DiscPoint) -> Result<f64> {
    const LOCUS_TOL: f64 = 1e-10;
    for (name, p) in [("a", a), ("b", b)] {
        let off = h.axis().fermi(p).offset;
        if (off - h.offset()).abs() > LOCUS_TOL {
            return Err(Error::OffLocus(format!(
                "{name} is at signed distance {off} from the axis, hypercycle is at {}",
                h.offset()
            )));
        }
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = h.axis().fermi(a).along;
    let fb = h.axis().fermi(b).along;
    let mid = h.point_at(0.5 * (fa + fb))?;
    Ok(EuclidCurve::through(a, mid, b).hyperbolic_length(1e-12))
}

/// Hyperbolic length of the geodesic segment `[p, q]` by quadrature along
/// its Euclidean carrier (circle arc or diameter).
pub fn geodesic_length_by_quadrature(p: DiscPoint, q: DiscPoint) -> Result<f64> {
    if p == q {
        return Ok(0.0);
    }
    let g = Geodesic::through(p, q)?;
    let fp = g.fermi(p).along;
    let fq = g.fermi(q).along;
    let mid = g.from_fermi(0.5 * (fp + fq), 0.0)?;
    Ok(EuclidCurve::through(p, mid, q).hyperbolic_length(1e-12))
}

/// Acute angle between two Euclidean direction vectors, in `[0, π/2]`.
pub fn line_angle(t1: Complex64, t2: Complex64) -> f64 {
    let c = (t1 * t2.conj()) / (t1.norm() * t2.norm());
    c.im.abs().atan2(c.re.abs())
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut r = a.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn distance_examples() {
        assert_eq!(dist(DiscPoint::ORIGIN, DiscPoint::ORIGIN), 0.0);
        let p = DiscPoint::new(0.5, 0.0).unwrap();
        assert!((dist(DiscPoint::ORIGIN, p) - 3f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn distance_matches_quadrature() {
        let p = DiscPoint::new(0.3, 0.2).unwrap();
        let q = DiscPoint::new(-0.1, 0.4).unwrap();
        let oracle = geodesic_length_by_quadrature(p, q).unwrap();
        assert!((dist(p, q) - oracle).abs() < 1e-8, "{} vs {}", dist(p, q), oracle);
    }

    #[test]
    fn outside_disc_is_rejected() {
        assert!(DiscPoint::new(1.0, 0.0).is_err());
        assert!(DiscPoint::new(0.8, 0.8).is_err());
        assert!(DiscPoint::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn polar_examples() {
        assert_eq!(point_polar(1.3, 0.0).unwrap().radius(), 0.0);
        let p = point_polar(0.0, 3f64.ln()).unwrap();
        assert!((p.x() - 0.5).abs() < 1e-15 && p.y().abs() < 1e-15);
        let q = point_polar(FRAC_PI_2, 1.0).unwrap();
        assert!(q.x().abs() < 1e-15);
        assert!((q.y() - 0.5f64.tanh()).abs() < 1e-15);
        assert!((q.y() - 0.462_117_157_260_009_8).abs() < 1e-12);
    }

    #[test]
    fn polar_round_trip_up_to_twenty() {
        for k in 0..=200 {
            let r = k as f64 * 0.1;
            let p = point_polar(0.37 * k as f64, r).unwrap();
            assert!((dist(DiscPoint::ORIGIN, p) - r).abs() < 1e-12 * r.max(1.0), "r = {r}");
        }
    }

    #[test]
    fn projection_examples() {
        let g = Geodesic::through(DiscPoint::ORIGIN, DiscPoint::new(0.5, 0.0).unwrap()).unwrap();
        let p = DiscPoint::new(0.0, 0.4).unwrap();
        let (foot, sd) = project_to_geodesic(p, &g);
        assert!(foot.radius() < 1e-15);
        assert!((sd - (1.4f64 / 0.6).ln()).abs() < 1e-13);

        let on = DiscPoint::new(-0.3, 0.0).unwrap();
        let (foot, sd) = project_to_geodesic(on, &g);
        assert!((foot.x() + 0.3).abs() < 1e-15 && sd.abs() < 1e-15);
    }

    #[test]
    fn projection_is_distance_minimising() {
        let g = Geodesic::through(
            DiscPoint::new(0.5, 0.0).unwrap(),
            DiscPoint::new(0.0, 0.5).unwrap(),
        )
        .unwrap();
        let p = DiscPoint::new(-0.2, -0.35).unwrap();
        let (foot, sd) = project_to_geodesic(p, &g);
        let best = dist(p, foot);
        assert!((best - sd.abs()).abs() < 1e-12);
        for k in 0..1000 {
            let s = -8.0 + 16.0 * k as f64 / 999.0;
            let x = g.from_fermi(s, 0.0).unwrap();
            assert!(best <= dist(p, x) + 1e-13);
        }
        // the connecting geodesic meets g orthogonally
        let perp = Geodesic::through(p, foot).unwrap();
        let angle = line_angle(perp.tangent_at(foot), g.tangent_at(foot));
        assert!((angle - FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn hypercycle_length_examples() {
        let axis = Geodesic::perpendicular_to_ray(0.4, 0.7).unwrap();
        // zero offset: the axis itself
        let h0 = Hypercycle::new(axis, 0.0);
        let a = h0.point_at(-0.8).unwrap();
        let b = h0.point_at(0.5).unwrap();
        let len = hypercycle_arclength(&h0, a, b).unwrap();
        assert!((len - dist(a, b)).abs() < 1e-9);
        assert_eq!(hypercycle_arclength(&h0, a, a).unwrap(), 0.0);

        let dist_l = 0.9;
        let h = Hypercycle::new(axis, dist_l);
        let a = h.point_at(-0.6).unwrap();
        let b = h.point_at(0.7).unwrap();
        let len = hypercycle_arclength(&h, a, b).unwrap();
        assert!((len - dist_l.cosh() * 1.3).abs() < 1e-8);

        let off = axis.from_fermi(0.0, 0.5).unwrap();
        assert!(matches!(hypercycle_arclength(&h, off, b), Err(Error::OffLocus(_))));
    }

    #[test]
    fn wrap_angle_range() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(0.25) - 0.25).abs() < 1e-15);
    }
}
