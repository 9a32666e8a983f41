use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use super::{quadrature::adaptive_simpson, DiscPoint};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Euclidean description of a geodesic, used for drawing and for the
/// orthogonality invariant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeodesicShape {
    /// A diameter through the origin; `direction` is the unit vector pointing
    /// at the end point.
    Diameter { direction: Complex64 },
    /// A circular arc orthogonal to the unit circle.
    Arc { center: Complex64, radius: f64 },
}

/// Fermi coordinates of a point relative to an oriented geodesic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermiCoord {
    /// Signed arc length of the foot of the perpendicular, measured from the
    /// point of the geodesic closest to the origin.
    pub along: f64,
    /// Signed distance to the geodesic, positive on the left.
    pub offset: f64,
}

/// An oriented complete geodesic of the disc.
///
/// Stored as its ideal endpoints together with the Möbius normalisation
/// `z ↦ rot·(z − base)/(1 − conj(base)·z)` that sends it onto the real
/// diameter with `start ↦ −1` and `end ↦ +1`. `base` is the point of the
/// geodesic closest to the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    start: Complex64,
    end: Complex64,
    base: Complex64,
    rot: Complex64,
}

impl Geodesic {
    /// The geodesic running from ideal point `start` to ideal point `end`.
    /// Inputs are projected onto the unit circle.
    pub fn from_ideal(start: Complex64, end: Complex64) -> Result<Self> {
        if start.norm() == 0.0 || end.norm() == 0.0 {
            return Err(Error::Degenerate("ideal endpoint at the origin".into()));
        }
        let start = start / start.norm();
        let end = end / end.norm();
        let chord = (start - end).norm();
        if chord < 1e-12 {
            return Err(Error::Degenerate("coincident ideal endpoints".into()));
        }
        let base = (start + end) / (2.0 + chord);
        let w_end = (end - base) / (Complex64::new(1.0, 0.0) - base.conj() * end);
        let rot = w_end.conj() / w_end.norm();
        Ok(Geodesic { start, end, base, rot })
    }

    /// The unique geodesic through two distinct points, oriented from `p`
    /// towards `q`.
    pub fn through(p: DiscPoint, q: DiscPoint) -> Result<Self> {
        let (p, q) = (p.as_complex(), q.as_complex());
        let moved = (q - p) / (Complex64::new(1.0, 0.0) - p.conj() * q);
        if moved.norm() == 0.0 {
            return Err(Error::Degenerate("geodesic through coincident points".into()));
        }
        let u = moved / moved.norm();
        let back = |w: Complex64| (w + p) / (Complex64::new(1.0, 0.0) + p.conj() * w);
        Self::from_ideal(back(-u), back(u))
    }

    /// The geodesic perpendicular to the ray from the origin at angle `phi`,
    /// crossing it at signed distance `rho` (negative `rho` crosses the
    /// opposite ray). The origin has Fermi offset `rho`, and the crossing
    /// point has `along = 0`.
    pub fn perpendicular_to_ray(phi: f64, rho: f64) -> Result<Self> {
        if !phi.is_finite() || !rho.is_finite() {
            return Err(Error::Domain(format!("non-finite ray data ({phi}, {rho})")));
        }
        let psi = rho.tanh().acos();
        Self::from_ideal(
            Complex64::from_polar(1.0, phi - psi),
            Complex64::from_polar(1.0, phi + psi),
        )
    }

    #[inline]
    pub fn start(&self) -> Complex64 {
        self.start
    }

    #[inline]
    pub fn end(&self) -> Complex64 {
        self.end
    }

    /// The point of the geodesic closest to the origin (`along = 0`).
    #[inline]
    pub fn base_point(&self) -> DiscPoint {
        DiscPoint::from_complex(self.base).expect("base point is interior")
    }

    pub fn reversed(&self) -> Self {
        Self::from_ideal(self.end, self.start).expect("distinct endpoints stay distinct")
    }

    pub fn shape(&self) -> GeodesicShape {
        let sum = self.start + self.end;
        let s = sum.norm();
        if s < 1e-9 {
            GeodesicShape::Diameter { direction: self.end }
        } else {
            GeodesicShape::Arc {
                center: sum * (2.0 / (s * s)),
                radius: (self.start - self.end).norm() / s,
            }
        }
    }

    #[inline]
    fn to_standard(&self, z: Complex64) -> Complex64 {
        self.rot * (z - self.base) / (Complex64::new(1.0, 0.0) - self.base.conj() * z)
    }

    #[inline]
    fn from_standard(&self, w: Complex64) -> Complex64 {
        let w1 = self.rot.conj() * w;
        (w1 + self.base) / (Complex64::new(1.0, 0.0) + self.base.conj() * w1)
    }

    /// Fermi coordinates of `p` relative to this geodesic.
    pub fn fermi(&self, p: DiscPoint) -> FermiCoord {
        let w = self.to_standard(p.as_complex());
        let one = Complex64::new(1.0, 0.0);
        let along = (one + w).norm().ln() - (one - w).norm().ln();
        let offset = (2.0 * w.im / (1.0 - w.norm_sqr())).asinh();
        FermiCoord { along, offset }
    }

    /// The point with the given Fermi coordinates.
    pub fn from_fermi(&self, along: f64, offset: f64) -> Result<DiscPoint> {
        let angle = FRAC_PI_2 + offset.sinh().atan();
        let zeta = Complex64::from_polar(along.exp(), angle);
        let w = (zeta - I) / (zeta + I);
        DiscPoint::from_complex(self.from_standard(w))
    }

    /// Signed distance from the geodesic to `p`.
    #[inline]
    pub fn signed_distance(&self, p: DiscPoint) -> f64 {
        self.fermi(p).offset
    }

    /// Euclidean velocity `dz/d(along)` of the equidistant curve through `p`.
    /// Its hyperbolic speed is `cosh(offset)`.
    pub fn along_velocity(&self, p: DiscPoint) -> Complex64 {
        let w = self.to_standard(p.as_complex());
        let dw = (Complex64::new(1.0, 0.0) - w * w) * 0.5;
        let w1 = self.rot.conj() * w;
        let denom = Complex64::new(1.0, 0.0) + self.base.conj() * w1;
        let dz_dw = self.rot.conj() * (1.0 - self.base.norm_sqr()) / (denom * denom);
        dz_dw * dw
    }

    /// Unit Euclidean tangent at `p`, pointing towards the end point.
    pub fn tangent_at(&self, p: DiscPoint) -> Complex64 {
        let v = self.along_velocity(p);
        v / v.norm()
    }
}

/// The locus of points at a fixed signed distance from a geodesic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hypercycle {
    axis: Geodesic,
    offset: f64,
}

impl Hypercycle {
    pub fn new(axis: Geodesic, signed_distance: f64) -> Self {
        Hypercycle { axis, offset: signed_distance }
    }

    #[inline]
    pub fn axis(&self) -> &Geodesic {
        &self.axis
    }

    #[inline]
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The point of the hypercycle above `along` on the axis.
    pub fn point_at(&self, along: f64) -> Result<DiscPoint> {
        self.axis.from_fermi(along, self.offset)
    }

    pub fn contains(&self, p: DiscPoint, tol: f64) -> bool {
        (self.axis.fermi(p).offset - self.offset).abs() <= tol
    }

    /// Arc length between the points above `a` and `b` on the axis, from the
    /// equidistant stretch law.
    pub fn closed_form_length(&self, a: f64, b: f64) -> f64 {
        self.offset.cosh() * (b - a).abs()
    }
}

/// A Euclidean circular arc or straight segment in the plane of the disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EuclidCurve {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    /// Arc `z(t) = from + (from − center)(e^{i·t·sweep} − 1)`, `t ∈ [0, 1]`.
    Arc {
        from: Complex64,
        center: Complex64,
        radius: f64,
        sweep: f64,
    },
}

impl EuclidCurve {
    /// The circle arc from `a` to `b` that passes through `mid`, or a segment
    /// if the three points are collinear.
    pub fn through(a: DiscPoint, mid: DiscPoint, b: DiscPoint) -> Self {
        let (a, m, b) = (a.as_complex(), mid.as_complex(), b.as_complex());
        let u = m - a;
        let v = b - a;
        let cross = u.re * v.im - u.im * v.re;
        if cross.abs() <= 1e-13 * u.norm() * v.norm() {
            return EuclidCurve::Segment { from: a, to: b };
        }
        // circumcentre relative to `a`
        let d = 2.0 * cross;
        let un = u.norm_sqr();
        let vn = v.norm_sqr();
        let rel = Complex64::new((v.im * un - u.im * vn) / d, (u.re * vn - v.re * un) / d);
        let center = a + rel;
        let ang = |z: Complex64| (z - center).arg();
        let d1 = super::wrap_angle(ang(m) - ang(a));
        let d2 = super::wrap_angle(ang(b) - ang(m));
        EuclidCurve::Arc { from: a, center, radius: rel.norm(), sweep: d1 + d2 }
    }

    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            EuclidCurve::Segment { from, to } => from + (to - from) * t,
            EuclidCurve::Arc { from, center, sweep, .. } => {
                let x = t * sweep;
                // e^{ix} − 1 = 2i·sin(x/2)·e^{ix/2}
                let em1 = Complex64::from_polar(2.0 * (0.5 * x).sin(), 0.5 * x) * I;
                from + (from - center) * em1
            }
        }
    }

    pub fn speed(&self) -> f64 {
        match *self {
            EuclidCurve::Segment { from, to } => (to - from).norm(),
            EuclidCurve::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Hyperbolic length of the curve, by adaptive Simpson quadrature of the
    /// disc metric `2|dz|/(1 − |z|²)`.
    pub fn hyperbolic_length(&self, tol: f64) -> f64 {
        let speed = self.speed();
        adaptive_simpson(|t| 2.0 * speed / (1.0 - self.point(t).norm_sqr()), 0.0, 1.0, tol)
    }
}
