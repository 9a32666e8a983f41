//! Right-angled hexagons built from three trirectangular quadrilaterals
//! around an equidistant centre `O`.
//!
//! Indexing is 0-based throughout. The tripod feet `A_0, A_1, A_2` lie on the
//! short-edge lines; long edge `s_i` (length `2ℓ_i`) sits in sector `i`,
//! between the rays `OA_{i+1}` and `OA_{i+2}`, and is opposite short edge
//! `t_i` (length `λ_i = L_{i+1} + L_{i+2}`).

mod chart;
mod embed;

pub use chart::FoliationCoord;
pub use chart::{coord_to_point, point_to_coord};
pub use embed::{embed, EmbeddedHexagon, CONTAIN_TOL};

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::hyp::acosh;
use crate::quad::{quad_degenerate, quad_from_alpha_d, QuadShape};

/// Tolerance on `|L_i|` below which a sector counts as collapsed.
pub const TYPE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HexType {
    /// All `L_i > 0`: the short edges satisfy strict triangle inequalities.
    #[serde(rename = "I")]
    TypeI,
    /// One `L_i = 0`.
    #[serde(rename = "II")]
    TypeII,
    /// One `L_i < 0`.
    #[serde(rename = "III")]
    TypeIII,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexagonShape {
    #[serde(rename = "half_long")]
    pub half_longs: [f64; 3],
    pub alphas: [f64; 3],
    pub d: f64,
    #[serde(rename = "type")]
    pub hex_type: HexType,
    #[serde(rename = "L")]
    pub ls: [f64; 3],
    #[serde(rename = "lambda")]
    pub lambdas: [f64; 3],
    #[serde(rename = "h")]
    pub hs: [f64; 3],
}

impl HexagonShape {
    /// The quadrilateral of sector `i`.
    pub fn quad(&self, i: usize) -> QuadShape {
        sector_quad(self.alphas[i], self.d).expect("shape was built from admissible data")
    }

    /// Index of the collapsed or negative sector, if any.
    pub fn special_sector(&self) -> Option<usize> {
        (0..3).find(|&i| self.ls[i] <= TYPE_TOL)
    }

    /// Residuals of `cosh λ_k = sinh λ_i sinh λ_j cosh 2ℓ_k − cosh λ_i cosh λ_j`,
    /// each divided by the largest term so that long hexagons are not
    /// penalised for the size of their cosines.
    pub fn identity_residuals(&self) -> [f64; 3] {
        hexagon_identity_residuals(&self.lambdas, &self.half_longs)
    }
}

/// Scaled residuals of the right-angled hexagon relation between the short
/// edges `lambdas` and the opposite long edges `2·half_longs`.
pub fn hexagon_identity_residuals(lambdas: &[f64; 3], half_longs: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let a = lambdas[i].sinh() * lambdas[j].sinh() * (2.0 * half_longs[k]).cosh();
        let b = lambdas[i].cosh() * lambdas[j].cosh();
        let c = lambdas[k].cosh();
        out[k] = (c - (a - b)).abs() / a.max(b).max(c).max(1.0);
    }
    out
}

fn sector_quad(alpha: f64, d: f64) -> Result<QuadShape> {
    if alpha == FRAC_PI_2 {
        quad_degenerate(d)
    } else {
        quad_from_alpha_d(alpha, d)
    }
}

fn classify_ls(ls: &[f64; 3]) -> HexType {
    let m = ls.iter().cloned().fold(f64::INFINITY, f64::min);
    if m.abs() <= TYPE_TOL {
        HexType::TypeII
    } else if m < 0.0 {
        HexType::TypeIII
    } else {
        HexType::TypeI
    }
}

/// Hexagon with half tripod angles `alphas` and tripod length `d`.
pub fn hexagon_from_alphas_d(alphas: [f64; 3], d: f64) -> Result<HexagonShape> {
    if alphas.iter().any(|a| !(*a > 0.0 && *a < PI)) {
        return Err(Error::Domain(format!("alphas {alphas:?} must lie in (0, pi)")));
    }
    let sum: f64 = alphas.iter().sum();
    if (sum - PI).abs() > 1e-9 {
        return Err(Error::Domain(format!("alphas sum to {sum}, not pi")));
    }
    let mut alphas = alphas;
    if (sum - PI).abs() > 1e-14 {
        for a in alphas.iter_mut() {
            *a *= PI / sum;
        }
    }
    if alphas.iter().filter(|a| **a >= FRAC_PI_2).count() > 1 {
        return Err(Error::Domain(format!("more than one alpha is at least pi/2: {alphas:?}")));
    }
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain(format!("d = {d} must be positive and finite")));
    }
    let bad: Vec<usize> = (0..3).filter(|&i| alphas[i].sin() * d.cosh() < 1.0 - 1e-12).collect();
    if !bad.is_empty() {
        let need = bad.iter().map(|&i| acosh(1.0 / alphas[i].sin())).fold(0.0, f64::max);
        return Err(Error::Domain(format!(
            "sin(alpha)·cosh(d) < 1 in sector(s) {bad:?}; d must be at least {need}"
        )));
    }
    let mut quads = Vec::with_capacity(3);
    for (i, &a) in alphas.iter().enumerate() {
        let q = sector_quad(a, d)?;
        if q.is_ideal() {
            return Err(Error::IdealLimit(format!(
                "sector {i} has half-long 0 (alpha = {a}, d = {d})"
            )));
        }
        quads.push(q);
    }
    let ls = [quads[0].l()?, quads[1].l()?, quads[2].l()?];
    let lambdas = [ls[1] + ls[2], ls[0] + ls[2], ls[0] + ls[1]];
    Ok(HexagonShape {
        half_longs: [quads[0].ell, quads[1].ell, quads[2].ell],
        alphas,
        d,
        hex_type: classify_ls(&ls),
        ls,
        lambdas,
        hs: [quads[0].h, quads[1].h, quads[2].h],
    })
}

/// Whether three half-long lengths admit an equidistant tripod centre:
/// the largest `cosh ℓ` must be strictly below the sum of the other two.
///
/// The hexagon itself always exists; without such a centre it cannot be
/// described by `(alphas, d)`.
pub fn tripod_center_exists(ells: [f64; 3]) -> bool {
    let mut c = ells.map(f64::cosh);
    c.sort_by(|a, b| a.total_cmp(b));
    c[2] < c[0] + c[1]
}

/// `Σ asin(cosh ℓ_i / cosh d) − π`, with the largest ℓ on the obtuse branch
/// when `obtuse` is set, and its derivative in `d`. On the obtuse branch the
/// two `π` terms are cancelled symbolically so that the sign stays reliable
/// for large `d`.
fn angle_sum(cs: &[f64; 3], j: usize, obtuse: bool, d: f64) -> (f64, f64) {
    let (ch, th) = (d.cosh(), d.tanh());
    let mut f = if obtuse { 0.0 } else { -PI };
    let mut df = 0.0;
    for (i, &c) in cs.iter().enumerate() {
        let g = (c / ch).min(1.0).asin();
        let dg = -c * th / ((ch - c) * (ch + c)).max(0.0).sqrt();
        if obtuse && i == j {
            f -= g;
            df -= dg;
        } else {
            f += g;
            df += dg;
        }
    }
    (f, df)
}

/// Solves for `(alphas, d)` from the half-lengths of the long edges.
pub fn hexagon_from_half_longs(ells: [f64; 3]) -> Result<HexagonShape> {
    if ells.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
        return Err(Error::Domain(format!("half-longs {ells:?} must be positive and finite")));
    }
    let cs = ells.map(f64::cosh);
    let j = (0..3).fold(0, |m, i| if ells[i] > ells[m] { i } else { m });
    let d0 = ells[j] + 1e-12;
    let obtuse = angle_sum(&cs, j, false, d0).0 < 0.0;
    let f = |d: f64| angle_sum(&cs, j, obtuse, d);

    let mut lo = d0;
    let mut hi = d0 + 1.0;
    while f(hi).0.signum() == f(lo).0.signum() {
        lo = hi;
        hi = 2.0 * hi;
        if hi > 700.0 {
            return Err(Error::Convergence(format!(
                "no bracket for half-longs {ells:?} on the {} branch up to d = 700 \
                 (an equidistant tripod centre exists only if the largest cosh(l) \
                 is below the sum of the other two; here {:?})",
                if obtuse { "obtuse" } else { "acute" },
                cs
            )));
        }
    }
    let f_lo_sign = f(lo).0.signum();
    while hi - lo > 1e-14 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid).0.signum() == f_lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut d = 0.5 * (lo + hi);
    for _ in 0..3 {
        let (v, dv) = f(d);
        if dv == 0.0 || !dv.is_finite() {
            break;
        }
        let next = d - v / dv;
        if next >= lo && next <= hi && f(next).0.abs() <= v.abs() {
            d = next;
        } else {
            break;
        }
    }
    let mut alphas = cs.map(|c| (c / d.cosh()).min(1.0).asin());
    if obtuse {
        alphas[j] = PI - alphas[j];
    }
    let resid = (alphas.iter().sum::<f64>() - PI).abs();
    if resid > 1e-12 {
        return Err(Error::Convergence(format!(
            "angle sum residual {resid} after solving half-longs {ells:?}"
        )));
    }
    hexagon_from_alphas_d(alphas, d)
}

/// Type of the hexagon with short edges `lambdas`.
pub fn classify_short(lambdas: [f64; 3]) -> HexType {
    let mut l = lambdas;
    l.sort_by(|a, b| a.total_cmp(b));
    let gap = l[0] + l[1] - l[2];
    if gap.abs() <= 1e-12 * l[2] {
        HexType::TypeII
    } else if gap > 0.0 {
        HexType::TypeI
    } else {
        HexType::TypeIII
    }
}
