use crate::error::{Error, Result};
use crate::hyp::{point_polar, wrap_angle, DiscPoint, Geodesic};

use super::HexagonShape;

/// Tolerance toward inclusion for the containment test.
pub const CONTAIN_TOL: f64 = 1e-10;

/// A hexagon placed in the disc with its tripod centre at the origin and the
/// midpoint ray of long edge `s_0` at angle 0.
///
/// Every bounding line is oriented so that the hexagon lies on its positive
/// (left) side.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedHexagon {
    pub shape: HexagonShape,
    /// Direction of the midpoint ray of each long edge.
    pub bisectors: [f64; 3],
    /// Direction of each tripod foot.
    pub foot_angles: [f64; 3],
    pub feet: [DiscPoint; 3],
    pub long_lines: [Geodesic; 3],
    pub short_lines: [Geodesic; 3],
    /// Counter-clockwise: `B_0⁻, B_0⁺, B_1⁻, B_1⁺, B_2⁻, B_2⁺`, where `B_i⁻`
    /// and `B_i⁺` are the ends of long edge `s_i` on the `A_{i+1}` and
    /// `A_{i+2}` sides.
    pub corners: [DiscPoint; 6],
    /// Fermi along-values of `B_i⁻` and `B_i⁺` on `long_lines[i]`.
    pub corner_along: [[f64; 2]; 3],
    /// Euclidean radius `tanh(d/2)` of the tripod feet.
    pub central_corner_radius: f64,
}

impl EmbeddedHexagon {
    pub fn new(shape: &HexagonShape) -> Result<Self> {
        if shape.half_longs.iter().any(|l| *l == 0.0) {
            return Err(Error::Degenerate("a long edge has length 0".into()));
        }
        let a = shape.alphas;
        let d = shape.d;
        let bisectors = [0.0, wrap_angle(a[0] + a[1]), wrap_angle(a[0] + 2.0 * a[1] + a[2])];
        let foot_angles = [wrap_angle(a[0] + 2.0 * a[1]), -a[0], a[0]];
        let mut feet = [DiscPoint::ORIGIN; 3];
        let mut short_lines = Vec::with_capacity(3);
        for m in 0..3 {
            feet[m] = point_polar(foot_angles[m], d)?;
            short_lines.push(Geodesic::perpendicular_to_ray(foot_angles[m], d)?);
        }
        let short_lines: [Geodesic; 3] = short_lines.try_into().unwrap();
        let mut long_lines = Vec::with_capacity(3);
        let mut corners = [DiscPoint::ORIGIN; 6];
        let mut corner_along = [[0.0; 2]; 3];
        for i in 0..3 {
            let l = shape.ls[i];
            let line = Geodesic::perpendicular_to_ray(bisectors[i], l + shape.hs[i])?;
            let bm = short_lines[(i + 1) % 3].from_fermi(l, 0.0)?;
            let bp = short_lines[(i + 2) % 3].from_fermi(-l, 0.0)?;
            corners[2 * i] = bm;
            corners[2 * i + 1] = bp;
            corner_along[i] = [line.fermi(bm).along, line.fermi(bp).along];
            long_lines.push(line);
        }
        Ok(EmbeddedHexagon {
            shape: shape.clone(),
            bisectors,
            foot_angles,
            feet,
            long_lines: long_lines.try_into().unwrap(),
            short_lines,
            corners,
            corner_along,
            central_corner_radius: (0.5 * d).tanh(),
        })
    }

    /// Smallest signed distance from `p` to the six bounding lines; the
    /// point is in the hexagon when this is non-negative.
    pub fn containment_margin(&self, p: DiscPoint) -> f64 {
        self.long_lines
            .iter()
            .chain(self.short_lines.iter())
            .map(|g| g.fermi(p).offset)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: DiscPoint) -> bool {
        self.containment_margin(p) >= -CONTAIN_TOL
    }

    /// End points of long edge `s_i`.
    pub fn long_edge(&self, i: usize) -> (DiscPoint, DiscPoint) {
        (self.corners[2 * i], self.corners[2 * i + 1])
    }

    /// End points of short edge `t_m`, from `B_{m+1}⁺` to `B_{m+2}⁻`.
    pub fn short_edge(&self, m: usize) -> (DiscPoint, DiscPoint) {
        (self.corners[2 * ((m + 1) % 3) + 1], self.corners[2 * ((m + 2) % 3)])
    }
}

/// Embeds a hexagon in canonical position.
pub fn embed(shape: &HexagonShape) -> Result<EmbeddedHexagon> {
    EmbeddedHexagon::new(shape)
}
