//! Trirectangular quadrilaterals `O A C B` with right angles at `A`, `B`, `C`
//! and angle `α` at `O`.
//!
//! `d = |OA|`, `ℓ = |BC|`, `L = |AB|` and `|OC| = L + h`. For `α > π/2` the
//! quadrilateral is reflected across `OA` and `L`, `h` become negative; all
//! relations below hold verbatim with signed lengths. With `O` at the centre
//! of the disc, `s` is the Euclidean radius of `A` and `t` that of the point
//! of `OC` at distance `h` from `O`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::hyp::acosh;

/// Tolerance on `sin α · cosh d − 1` below which the quadrilateral is taken
/// to be at its ideal limit.
pub const IDEAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadShape {
    pub alpha: f64,
    pub d: f64,
    pub ell: f64,
    /// Signed `L`; `None` at the ideal limit where `|L|` is infinite.
    pub strip: Option<f64>,
    /// `tanh L`, which stays finite (`±1`) at the ideal limit.
    pub tanh_strip: f64,
    /// Signed `h`.
    pub h: f64,
    pub s_param: f64,
    pub t_param: f64,
}

impl QuadShape {
    pub fn is_ideal(&self) -> bool {
        self.strip.is_none()
    }

    /// Finite `L`, or an `IdealLimit` error.
    pub fn l(&self) -> Result<f64> {
        self.strip.ok_or_else(|| {
            Error::IdealLimit(format!("L is infinite at alpha = {}, d = {}", self.alpha, self.d))
        })
    }
}

/// Quadrilateral with angle `alpha` at `O` and `|OA| = d`.
pub fn quad_from_alpha_d(alpha: f64, d: f64) -> Result<QuadShape> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha = {alpha} is not in (0, pi)")));
    }
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain(format!("d = {d} must be positive and finite")));
    }
    if alpha == FRAC_PI_2 {
        return Err(Error::Degenerate(
            "alpha = pi/2: use quad_degenerate".into(),
        ));
    }
    let (sa, ca) = alpha.sin_cos();
    let x = sa * d.cosh();
    let s = (0.5 * d).tanh();
    let t = s * ca / (1.0 + sa);
    if (x - 1.0).abs() <= IDEAL_TOL {
        return Ok(QuadShape {
            alpha,
            d,
            ell: 0.0,
            strip: None,
            tanh_strip: ca.signum(),
            h: ca.signum() * -sa.ln(),
            s_param: s,
            t_param: t,
        });
    }
    if x < 1.0 {
        return Err(Error::Domain(format!(
            "sin(alpha)·cosh(d) = {x} < 1; minimal admissible d for alpha = {alpha} is {}",
            acosh(1.0 / sa)
        )));
    }
    let ell = acosh(x);
    let tanh_l = ca / (sa * d.sinh());
    let l = tanh_l.atanh();
    let l_plus_h = (d.cosh() * l.sinh()).asinh();
    Ok(QuadShape {
        alpha,
        d,
        ell,
        strip: Some(l),
        tanh_strip: tanh_l,
        h: l_plus_h - l,
        s_param: s,
        t_param: t,
    })
}

/// The `α = π/2` quadrilateral, a rectangle collapsed onto `OA`.
pub fn quad_degenerate(d: f64) -> Result<QuadShape> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain(format!("d = {d} must be positive and finite")));
    }
    Ok(QuadShape {
        alpha: FRAC_PI_2,
        d,
        ell: d,
        strip: Some(0.0),
        tanh_strip: 0.0,
        h: 0.0,
        s_param: (0.5 * d).tanh(),
        t_param: 0.0,
    })
}

/// Absolute residuals of the seven quadrilateral relations, in product form.
pub fn quad_residuals(q: &QuadShape) -> Result<[f64; 7]> {
    let l = q.l()?;
    let (sa, ca) = if q.alpha == FRAC_PI_2 { (1.0, 0.0) } else { q.alpha.sin_cos() };
    let lh = l + q.h;
    let (shd, chd) = (q.d.sinh(), q.d.cosh());
    let (shl, chl) = (q.ell.sinh(), q.ell.cosh());
    let (sh_big, ch_big) = (l.sinh(), l.cosh());
    let (sh_lh, ch_lh) = (lh.sinh(), lh.cosh());
    Ok([
        (chl - sa * chd).abs().max((sh_lh - chd * sh_big).abs()),
        (shl - (shd * ch_lh - chd * sh_lh * ca)).abs(),
        (shd - shl * ch_lh).abs(),
        (ca - sh_big * shl).abs(),
        (sa * sh_big * shd - ca * ch_big).abs(),
        (ch_lh - (-shl * shd + chl * chd * ch_big)).abs(),
        (ch_big - sa * ch_lh).abs(),
    ])
}

/// `(cos α / sin α)·(1 − s²)/(2s)`, the value whose artanh is `L`.
pub fn l_from_s_argument(alpha: f64, s: f64) -> f64 {
    if alpha == FRAC_PI_2 {
        return 0.0;
    }
    let (sa, ca) = alpha.sin_cos();
    ca / sa * (1.0 - s) * (1.0 + s) / (2.0 * s)
}

/// Signed `L` of the quadrilateral whose vertex `A` sits at Euclidean radius
/// `s`.
pub fn l_from_s(alpha: f64, s: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(Error::Domain(format!("alpha = {alpha} is not in (0, pi)")));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("s = {s} is not in (0, 1)")));
    }
    let arg = l_from_s_argument(alpha, s);
    if (1.0 - arg.abs()).abs() <= IDEAL_TOL {
        return Err(Error::IdealLimit(format!("tanh L = {arg} at alpha = {alpha}, s = {s}")));
    }
    if arg.abs() > 1.0 {
        return Err(Error::Domain(format!(
            "tanh L = {arg} exceeds 1 at alpha = {alpha}, s = {s}: past the ideal limit"
        )));
    }
    Ok(arg.atanh())
}

/// The two factors of the `(s, t)` relation
/// `((1+sin α)/cos α·t − s)·((1+sin α)/cos α·t·s + 1) = 0`.
/// The first vanishes on constructed quadrilaterals, the second is positive.
pub fn ts_factors(alpha: f64, s: f64, t: f64) -> (f64, f64) {
    let (sa, ca) = alpha.sin_cos();
    let k = (1.0 + sa) / ca;
    (k * t - s, k * t * s + 1.0)
}
