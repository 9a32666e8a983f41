//! The foliation chart `(sector, u, v)`.
//!
//! For `u ∈ [0, 1]` the leaf is the equidistant curve at distance `u·L_i`
//! from long edge `s_i`, cut off by the two adjacent short-edge lines. For
//! `u ∈ [1, 2]` it is the equidistant curve through the points of the tripod
//! edges `OA_{i+1}`, `OA_{i+2}` at distance `(2 − u)·d` from `O`. `v` is
//! proportional to arc length along the leaf, `v = 0` on the `A_{i+1}` side.

use serde::{Deserialize, Serialize};

use super::embed::EmbeddedHexagon;
use super::TYPE_TOL;
use crate::error::{Error, Result};
use crate::hyp::{point_polar, wrap_angle, DiscPoint};

const RANGE_TOL: f64 = 1e-12;
const FIT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoliationCoord {
    pub sector: usize,
    pub u: f64,
    pub v: f64,
}

impl FoliationCoord {
    pub fn new(sector: usize, u: f64, v: f64) -> Self {
        FoliationCoord { sector, u, v }
    }
}

fn clamp_range(name: &str, x: f64, lo: f64, hi: f64) -> Result<f64> {
    if !x.is_finite() || x < lo - RANGE_TOL || x > hi + RANGE_TOL {
        return Err(Error::OutOfChart(format!("{name} = {x} is outside [{lo}, {hi}]")));
    }
    Ok(x.clamp(lo, hi))
}

impl EmbeddedHexagon {
    /// Whether sector `i` has a central part (`L_i > 0`).
    pub fn sector_is_full(&self, i: usize) -> bool {
        self.shape.ls[i] > TYPE_TOL
    }

    /// Point of tripod edge `OA_{i+1}` (`side = 0`) or `OA_{i+2}` (`side = 1`)
    /// at leaf parameter `u ∈ [1, 2]`.
    pub fn tripod_point(&self, i: usize, side: usize, u: f64) -> Result<DiscPoint> {
        let a = self.shape.alphas[i];
        let theta = if side == 0 { self.bisectors[i] - a } else { self.bisectors[i] + a };
        point_polar(theta, (2.0 - u) * self.shape.d)
    }

    /// The chart point without range or containment checks. Used for drawing
    /// leaves, including the parts of Type III leaves outside the hexagon.
    pub fn leaf_point(&self, i: usize, u: f64, v: f64) -> Result<DiscPoint> {
        let line = &self.long_lines[i];
        let l = self.shape.ls[i];
        if u <= 1.0 {
            let [s0, s1] = self.corner_along[i];
            return line.from_fermi(s0 + (s1 - s0) * 0.5 * v, u * l);
        }
        if u >= 2.0 {
            return Ok(DiscPoint::ORIGIN);
        }
        let tm = line.fermi(self.tripod_point(i, 0, u)?);
        let tp = line.fermi(self.tripod_point(i, 1, u)?);
        let along = tm.along + (tp.along - tm.along) * 0.5 * v;
        line.from_fermi(along, 0.5 * (tm.offset + tp.offset))
    }

    /// Point with chart coordinates `c`.
    pub fn coord_to_point(&self, c: FoliationCoord) -> Result<DiscPoint> {
        if c.sector > 2 {
            return Err(Error::OutOfChart(format!("sector {} does not exist", c.sector)));
        }
        let u = clamp_range("u", c.u, 0.0, 2.0)?;
        let v = clamp_range("v", c.v, 0.0, 2.0)?;
        let l = self.shape.ls[c.sector];
        if l.abs() <= TYPE_TOL && u > 0.0 {
            return Err(Error::OutOfChart(format!(
                "sector {} is collapsed; only u = 0 is charted",
                c.sector
            )));
        }
        if l < 0.0 && u > 1.0 {
            return Err(Error::OutOfChart(format!(
                "sector {} has negative L; u > 1 is not charted",
                c.sector
            )));
        }
        let p = self.leaf_point(c.sector, u, v)?;
        if !self.contains(p) {
            return Err(Error::OutOfChart(format!(
                "({}, {u}, {v}) names a point outside the hexagon",
                c.sector
            )));
        }
        Ok(p)
    }

    /// Sector assigned to `p`: the first full sector whose tripod wedge
    /// contains its direction from `O`.
    pub fn sector_of(&self, p: DiscPoint) -> usize {
        let full: Vec<usize> = (0..3).filter(|&i| self.sector_is_full(i)).collect();
        if p.radius() == 0.0 {
            return full[0];
        }
        let theta = p.angle();
        let excess = |i: usize| wrap_angle(theta - self.bisectors[i]).abs() - self.shape.alphas[i];
        if let Some(&i) = full.iter().find(|&&i| excess(i) <= 1e-12) {
            return i;
        }
        *full
            .iter()
            .min_by(|&&a, &&b| excess(a).total_cmp(&excess(b)))
            .expect("at least two sectors are full")
    }

    /// Chart coordinates of `p` relative to sector `i`, whether or not `i`
    /// is the sector assigned to `p`.
    pub fn coord_in_sector(&self, p: DiscPoint, i: usize) -> Result<FoliationCoord> {
        if i > 2 {
            return Err(Error::OutOfChart(format!("sector {i} does not exist")));
        }
        let line = &self.long_lines[i];
        let l = self.shape.ls[i];
        let f = line.fermi(p);
        let delta = f.offset;
        let along_v = |s0: f64, s1: f64| {
            if (s1 - s0).abs() < 1e-300 {
                1.0
            } else {
                2.0 * (f.along - s0) / (s1 - s0)
            }
        };
        let fit = |name: &str, x: f64, lo: f64, hi: f64| -> Result<f64> {
            if x < lo - FIT_TOL || x > hi + FIT_TOL {
                Err(Error::OutOfChart(format!("{name} = {x} for this point in sector {i}")))
            } else {
                Ok(x.clamp(lo, hi))
            }
        };
        let [s0, s1] = self.corner_along[i];
        if l <= TYPE_TOL {
            if delta.abs() > FIT_TOL {
                return Err(Error::OutOfChart(format!(
                    "sector {i} only charts its long edge; point is at distance {delta}"
                )));
            }
            let v = fit("v", along_v(s0, s1), 0.0, 2.0)?;
            return Ok(FoliationCoord::new(i, 0.0, v));
        }
        if p.radius() == 0.0 {
            return Ok(FoliationCoord::new(i, 2.0, 1.0));
        }
        if delta <= l {
            let u = fit("u", delta / l, 0.0, 1.0)?;
            let v = fit("v", along_v(s0, s1), 0.0, 2.0)?;
            return Ok(FoliationCoord::new(i, u, v));
        }
        let top = l + self.shape.hs[i];
        if delta > top + FIT_TOL {
            return Err(Error::OutOfChart(format!(
                "point is farther than O from long edge {i} ({delta} > {top})"
            )));
        }
        // offset of the tripod point increases from L at u = 1 to L + h at O
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if line.fermi(self.tripod_point(i, 0, mid)?).offset < delta {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let u = 0.5 * (lo + hi);
        let am = line.fermi(self.tripod_point(i, 0, u)?).along;
        let ap = line.fermi(self.tripod_point(i, 1, u)?).along;
        let v = fit("v", along_v(am, ap), 0.0, 2.0)?;
        Ok(FoliationCoord::new(i, u, v))
    }

    /// Chart coordinates of a point of the hexagon.
    pub fn point_to_coord(&self, p: DiscPoint) -> Result<FoliationCoord> {
        let margin = self.containment_margin(p);
        if margin < -super::embed::CONTAIN_TOL {
            return Err(Error::OutsideHexagon(format!(
                "({}, {}) is {} outside a bounding line",
                p.x(),
                p.y(),
                -margin
            )));
        }
        let i = self.sector_of(p);
        match self.coord_in_sector(p, i) {
            Ok(c) => Ok(c),
            // boundary points sitting on a dividing ray within rounding
            Err(e) => (0..3)
                .filter(|&j| j != i && self.sector_is_full(j))
                .find_map(|j| self.coord_in_sector(p, j).ok())
                .ok_or(e),
        }
    }
}

pub fn coord_to_point(e: &EmbeddedHexagon, c: FoliationCoord) -> Result<DiscPoint> {
    e.coord_to_point(c)
}

pub fn point_to_coord(e: &EmbeddedHexagon, p: DiscPoint) -> Result<FoliationCoord> {
    e.point_to_coord(p)
}
