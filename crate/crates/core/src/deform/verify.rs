use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::DeformationFamily;
use crate::error::{Error, Result};
use crate::hexagon::{FoliationCoord, HexType};
use crate::hyp::{dist, DiscPoint};

/// Relative tolerance of the finite-difference verification.
pub const TOL_FD: f64 = 1e-4;
/// Finite-difference step in hyperbolic units.
const FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub sector: usize,
    pub u: f64,
    pub v: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeafMax {
    pub sector: usize,
    pub u: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub k: f64,
    pub k_i: [f64; 3],
    pub grid_max: f64,
    pub grid_argmax: GridPoint,
    /// Largest stretch along the long edge `argmax_edge`.
    pub edge_max: f64,
    /// Largest stretch at grid points with `u > 1`.
    pub central_max: f64,
    /// Largest stretch across the leaves (along `v = const`) for `u ≤ 1`.
    pub transverse_max: f64,
    pub leaf_max: Vec<LeafMax>,
    pub samples: usize,
    pub skipped: usize,
    /// Set for Type III bases, where only the charted part is sampled and
    /// extremality is not claimed.
    pub restricted: bool,
    pub pass: bool,
}

/// Largest singular value of the real 2×2 matrix with columns `a`, `b`.
fn sigma_max(a: Complex64, b: Complex64) -> f64 {
    let s = 0.5 * (a.norm_sqr() + b.norm_sqr());
    let det = a.re * b.im - a.im * b.re;
    (s + ((s - det) * (s + det)).max(0.0).sqrt()).sqrt()
}

struct Sample {
    stretch: f64,
    transverse: Option<f64>,
}

impl DeformationFamily {
    fn image(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.map_point(DiscPoint::from_complex(z)?)?.as_complex())
    }

    /// Hyperbolic operator norm of the differential of the map at `p`, and
    /// the stretch along the unit Euclidean direction `dir` if given.
    fn differential(&self, p: DiscPoint, dir: Option<Complex64>) -> Result<(f64, Option<f64>)> {
        let z = p.as_complex();
        let eps = FD_STEP / p.conformal_factor();
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let jx = (self.image(z + one * eps)? - self.image(z - one * eps)?) / (2.0 * eps);
        let jy = (self.image(z + i * eps)? - self.image(z - i * eps)?) / (2.0 * eps);
        let fp = self.map_point(p)?;
        let scale = fp.conformal_factor() / p.conformal_factor();
        let dir_stretch = dir.map(|t| (jx * t.re + jy * t.im).norm() * scale);
        Ok((sigma_max(jx, jy) * scale, dir_stretch))
    }

    fn sample(&self, c: FoliationCoord) -> Option<Sample> {
        let base = &self.base_embedding;
        let p = base.coord_to_point(c).ok()?;
        let dir = if c.u <= 1.0 {
            // across the leaves: along the perpendicular to the long edge
            let line = &base.long_lines[c.sector];
            let f = line.fermi(p);
            let q = line.from_fermi(f.along, f.offset + 1e-6).ok()?;
            let t = q.as_complex() - p.as_complex();
            Some(t / t.norm())
        } else {
            None
        };
        let (stretch, transverse) = self.differential(p, dir).ok()?;
        Some(Sample { stretch, transverse })
    }

    /// Stretch along long edge `i` at leaf position `v`, measured between
    /// two points of the edge a hyperbolic step apart.
    fn edge_stretch(&self, i: usize, v: f64) -> Result<f64> {
        let base = &self.base_embedding;
        let line = &base.long_lines[i];
        let [s0, s1] = base.corner_along[i];
        let s = s0 + (s1 - s0) * 0.5 * v;
        let a = line.from_fermi(s - FD_STEP, 0.0)?;
        let b = line.from_fermi(s + FD_STEP, 0.0)?;
        Ok(dist(self.map_point(a)?, self.map_point(b)?) / (2.0 * FD_STEP))
    }
}

/// Samples the differential of the extremal map on a cell-centred
/// `grid_n × grid_n` chart grid in every full sector.
pub fn verify_lipschitz(fam: &DeformationFamily, grid_n: usize) -> Result<StretchReport> {
    if grid_n < 16 {
        return Err(Error::Domain(format!("grid_n = {grid_n} is below 16")));
    }
    let base = &fam.base_embedding;
    let sectors: Vec<usize> = (0..3).filter(|&i| base.sector_is_full(i)).collect();
    let coords: Vec<FoliationCoord> = sectors
        .iter()
        .flat_map(|&i| {
            (0..grid_n).flat_map(move |a| {
                (0..grid_n).map(move |b| {
                    let cell = |x: usize| 2.0 * (x as f64 + 0.5) / grid_n as f64;
                    FoliationCoord::new(i, cell(a), cell(b))
                })
            })
        })
        .collect();
    let samples: Vec<Option<Sample>> = coords.par_iter().map(|c| fam.sample(*c)).collect();

    let mut grid_max = f64::NEG_INFINITY;
    let mut grid_argmax = GridPoint { sector: sectors[0], u: 0.0, v: 0.0 };
    let mut central_max: f64 = 0.0;
    let mut transverse_max: f64 = 0.0;
    let mut skipped = 0;
    let mut leaf_max: Vec<LeafMax> = Vec::new();
    for (c, s) in coords.iter().zip(samples.iter()) {
        let Some(s) = s else {
            skipped += 1;
            continue;
        };
        if s.stretch > grid_max {
            grid_max = s.stretch;
            grid_argmax = GridPoint { sector: c.sector, u: c.u, v: c.v };
        }
        if c.u > 1.0 {
            central_max = central_max.max(s.stretch);
        }
        if let Some(t) = s.transverse {
            transverse_max = transverse_max.max(t);
        }
        match leaf_max.last_mut() {
            Some(m) if m.sector == c.sector && m.u == c.u => m.max = m.max.max(s.stretch),
            _ => leaf_max.push(LeafMax { sector: c.sector, u: c.u, max: s.stretch }),
        }
    }

    let edge = fam.argmax_edge;
    let edge_max = if base.sector_is_full(edge) || fam.base.hex_type != HexType::TypeIII {
        let vs: Vec<f64> = (0..grid_n).map(|b| 2.0 * (b as f64 + 0.5) / grid_n as f64).collect();
        let vals: Vec<Result<f64>> = vs.par_iter().map(|&v| fam.edge_stretch(edge, v)).collect();
        let mut m = f64::NEG_INFINITY;
        for v in vals {
            m = m.max(v?);
        }
        m
    } else {
        f64::NAN
    };

    let k = fam.k;
    let pass = grid_max <= k * (1.0 + TOL_FD) && edge_max >= k * (1.0 - TOL_FD);
    Ok(StretchReport {
        k,
        k_i: fam.ks,
        grid_max,
        grid_argmax,
        edge_max,
        central_max,
        transverse_max,
        leaf_max,
        samples: coords.len() - skipped,
        skipped,
        restricted: fam.base.hex_type == HexType::TypeIII,
        pass,
    })
}
