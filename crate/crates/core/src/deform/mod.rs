//! The forward deformation `H ↦ H_K`: every `cosh ℓ_i` is multiplied by `K`
//! with the tripod angles held fixed, and the extremal map between the two
//! hexagons is "same chart coordinates".

mod verify;

pub use verify::{verify_lipschitz, GridPoint, LeafMax, StretchReport, TOL_FD};

use crate::error::{Error, Result};
use crate::hexagon::{embed, hexagon_from_alphas_d, EmbeddedHexagon, HexagonShape, TYPE_TOL};
use crate::hyp::{acosh, DiscPoint};

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationFamily {
    pub base: HexagonShape,
    pub k_param: f64,
    pub deformed: HexagonShape,
    /// `ℓ_i(K)/ℓ_i`.
    pub ks: [f64; 3],
    pub k: f64,
    /// Long edge realising `k` (lowest index among ties).
    pub argmax_edge: usize,
    pub base_embedding: EmbeddedHexagon,
    pub deformed_embedding: EmbeddedHexagon,
}

/// Smallest admissible `K` (exclusive): `1 / min_i cosh ℓ_i`.
pub fn k_min(base: &HexagonShape) -> f64 {
    1.0 / base.half_longs.iter().map(|l| l.cosh()).fold(f64::INFINITY, f64::min)
}

/// Index of the largest entry, preferring the lowest index among entries
/// equal to within a relative `1e-12`.
pub(crate) fn argmax_with_ties(xs: &[f64]) -> usize {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    xs.iter().position(|x| *x >= m - 1e-12 * m.abs()).unwrap_or(0)
}

/// The hexagon `H_K` alone.
pub fn deform_shape(base: &HexagonShape, k_param: f64) -> Result<HexagonShape> {
    let kmin = k_min(base);
    if !k_param.is_finite() || k_param <= kmin {
        return Err(Error::Domain(format!(
            "K = {k_param} is not admissible; K must lie in ({kmin}, inf)"
        )));
    }
    if k_param == 1.0 {
        return Ok(base.clone());
    }
    hexagon_from_alphas_d(base.alphas, acosh(k_param * base.d.cosh()))
}

/// The hexagon `H_K` and the data of the extremal map `H → H_K`.
pub fn deform(base: &HexagonShape, k_param: f64) -> Result<DeformationFamily> {
    let deformed = deform_shape(base, k_param)?;
    let ks = [0, 1, 2].map(|i| deformed.half_longs[i] / base.half_longs[i]);
    let argmax_edge = argmax_with_ties(&ks);
    Ok(DeformationFamily {
        base_embedding: embed(base)?,
        deformed_embedding: embed(&deformed)?,
        base: base.clone(),
        k_param,
        ks,
        k: ks[argmax_edge],
        argmax_edge,
        deformed,
    })
}

impl DeformationFamily {
    /// Image of `p` under the extremal map.
    pub fn map_point(&self, p: DiscPoint) -> Result<DiscPoint> {
        let c = self.base_embedding.point_to_coord(p)?;
        self.deformed_embedding.coord_to_point(c)
    }

    /// Stretch factor of the map along the leaf at parameter `u ∈ [0, 1]` in
    /// sector `i`: the leaf has length `cosh(uL_i)·2ℓ_i` and is sent affinely
    /// onto one of length `cosh(uL_i^K)·2ℓ_i(K)`.
    pub fn leaf_stretch(&self, i: usize, u: f64) -> Result<f64> {
        if i > 2 {
            return Err(Error::Domain(format!("sector {i} does not exist")));
        }
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::Domain(format!("u = {u} is outside [0, 1]")));
        }
        let l = self.base.ls[i];
        if l < -TYPE_TOL {
            return Err(Error::Domain(format!("sector {i} has negative L = {l}")));
        }
        let lk = self.deformed.ls[i];
        Ok(self.ks[i] * (u * lk).cosh() / (u * l).cosh())
    }

    /// Stretch across the leaves of sector `i`, `L_i^K / L_i`.
    pub fn transverse_contraction(&self, i: usize) -> Result<f64> {
        if i > 2 {
            return Err(Error::Domain(format!("sector {i} does not exist")));
        }
        let l = self.base.ls[i];
        if l <= TYPE_TOL {
            return Err(Error::Domain(format!("sector {i} has no strip (L = {l})")));
        }
        Ok(self.deformed.ls[i] / l)
    }
}

pub fn map_point(fam: &DeformationFamily, p: DiscPoint) -> Result<DiscPoint> {
    fam.map_point(p)
}

pub fn leaf_stretch(fam: &DeformationFamily, sector: usize, u: f64) -> Result<f64> {
    fam.leaf_stretch(sector, u)
}

pub fn transverse_contraction(fam: &DeformationFamily, sector: usize) -> Result<f64> {
    fam.transverse_contraction(sector)
}

/// Width `L` of the strip of a quadrilateral with angle `alpha` whose long
/// side half-length `ell` has been multiplied by `k_len`:
/// `tanh² L = cos² α / (cosh²(Kℓ) − sin² α)`, signed like `cos α`.
pub fn l_of_k(alpha: f64, ell: f64, k_len: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(Error::Domain(format!("alpha = {alpha} is not in (0, pi)")));
    }
    if !(ell > 0.0 && k_len > 0.0) || !(ell * k_len).is_finite() {
        return Err(Error::Domain(format!("need ell > 0 and K > 0, got {ell}, {k_len}")));
    }
    if alpha == std::f64::consts::FRAC_PI_2 {
        return Ok(0.0);
    }
    let ca = alpha.cos();
    let x = ell * k_len;
    // cosh²x − sin²α = sinh²x + cos²α
    let arg = (ca * ca / (x.sinh().powi(2) + ca * ca)).sqrt();
    if arg >= 1.0 {
        return Err(Error::Domain(format!(
            "tanh L = {arg} at alpha = {alpha}, K·ell = {x}: no finite strip"
        )));
    }
    Ok(ca.signum() * arg.atanh())
}
