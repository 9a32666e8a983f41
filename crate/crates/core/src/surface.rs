//! Bordered surfaces cut into right-angled hexagons along their long edges.
//!
//! A surface is stored combinatorially: a list of hexagon shapes and a list
//! of gluings between long edges. Short edges make up the boundary.
//!
//! Orientation of a gluing: each long edge `s_i` runs from its `−` end
//! `B_i⁻` to its `+` end `B_i⁺` (see [`EmbeddedHexagon`]). With
//! `reversed = false` the two `−` ends are identified, as in the doubling
//! of a hexagon across its long edges; with `reversed = true` the `−` end of
//! one meets the `+` end of the other.
//!
//! [`EmbeddedHexagon`]: crate::hexagon::EmbeddedHexagon

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use crate::deform::{deform_shape, k_min};
use crate::error::{Error, Result};
use crate::hexagon::HexagonShape;

/// Tolerance on the half-length mismatch of glued edges.
pub const GLUE_TOL: f64 = 1e-10;
/// Largest certificate gap still counted as geodesic-grade.
pub const CERT_TOL: f64 = 1e-10;

/// A long edge: hexagon id and long-edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef(pub String, pub usize);

impl EdgeRef {
    pub fn new(hex: &str, edge: usize) -> Self {
        EdgeRef(hex.to_string(), edge)
    }
}

impl std::fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: EdgeRef,
    pub b: EdgeRef,
    #[serde(default)]
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceHexagon {
    pub id: String,
    pub shape: HexagonShape,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulatedSurface {
    pub hexagons: Vec<SurfaceHexagon>,
    pub gluings: Vec<Gluing>,
    /// Permit unglued long edges (a surface with corners).
    #[serde(default)]
    pub allow_free_edges: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateHexagon { id: String },
    UnknownHexagon { edge: EdgeRef },
    BadEdgeIndex { edge: EdgeRef },
    LengthMismatch { a: EdgeRef, b: EdgeRef, mismatch: f64 },
    EdgeReused { edge: EdgeRef, gluings: Vec<usize> },
    SelfGlued { edge: EdgeRef },
    Unglued { edge: EdgeRef },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::DuplicateHexagon { id } => write!(f, "hexagon id {id} used twice"),
            Violation::UnknownHexagon { edge } => write!(f, "edge {edge} names an unknown hexagon"),
            Violation::BadEdgeIndex { edge } => write!(f, "edge {edge} has index outside 0..3"),
            Violation::LengthMismatch { a, b, mismatch } => {
                write!(f, "edges {a} and {b} differ in half-length by {mismatch}")
            }
            Violation::EdgeReused { edge, gluings } => write!(f, "edge {edge} is in gluings {gluings:?}"),
            Violation::SelfGlued { edge } => write!(f, "edge {edge} is glued to itself"),
            Violation::Unglued { edge } => write!(f, "edge {edge} is not glued"),
        }
    }
}

/// A closed boundary component, or an open chain of short edges if the
/// trace ran into an unglued long edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCycle {
    /// Short edges in traversal order, as (hexagon id, short-edge index).
    pub short_edges: Vec<(String, usize)>,
    /// Long edge crossed at each corner, one per short edge for a closed
    /// cycle (after `short_edges[j]`).
    pub crossings: Vec<EdgeRef>,
    pub length: f64,
    pub closed: bool,
    pub trace_error: Option<String>,
}

impl BoundaryCycle {
    /// The corner-crossing edge cycle of this boundary component.
    pub fn edge_cycle(&self) -> EdgeCycle {
        EdgeCycle { edges: self.crossings.clone() }
    }
}

/// A list of glued long edges with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EdgeCycle {
    pub edges: Vec<EdgeRef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeStretch {
    pub edge: EdgeRef,
    pub partner: EdgeRef,
    /// `ℓ(K)/ℓ` computed on the `edge` side.
    pub k: f64,
    /// The same ratio computed on the `partner` side.
    pub k_partner: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceK {
    pub k: f64,
    pub argmax: EdgeRef,
    pub per_edge: Vec<EdgeStretch>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricCertificate {
    #[serde(rename = "K1")]
    pub k1: f64,
    #[serde(rename = "K2")]
    pub k2: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub gap: f64,
    /// Glued edge realising the lower bound.
    pub lower_edge: EdgeRef,
    pub geodesic_grade: bool,
}

type Corner = (usize, usize, bool);

impl TriangulatedSurface {
    pub fn new(hexagons: Vec<(String, HexagonShape)>, gluings: Vec<Gluing>) -> Self {
        TriangulatedSurface {
            hexagons: hexagons.into_iter().map(|(id, shape)| SurfaceHexagon { id, shape }).collect(),
            gluings,
            allow_free_edges: false,
        }
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.hexagons.iter().enumerate().map(|(n, h)| (h.id.as_str(), n)).collect()
    }

    pub fn hexagon(&self, id: &str) -> Option<&HexagonShape> {
        self.hexagons.iter().find(|h| h.id == id).map(|h| &h.shape)
    }

    fn resolve(&self, e: &EdgeRef) -> Result<(usize, usize)> {
        let n = self
            .hexagons
            .iter()
            .position(|h| h.id == e.0)
            .ok_or_else(|| Error::UnknownEdge(format!("no hexagon {}", e.0)))?;
        if e.1 > 2 {
            return Err(Error::UnknownEdge(format!("edge {e} has index outside 0..3")));
        }
        Ok((n, e.1))
    }

    fn gluing_of(&self, e: &EdgeRef) -> Result<(&Gluing, bool)> {
        for g in &self.gluings {
            if g.a == *e {
                return Ok((g, true));
            }
            if g.b == *e {
                return Ok((g, false));
            }
        }
        Err(Error::UnknownEdge(format!("edge {e} is not glued")))
    }

    /// Every invariant violation; empty for a valid surface.
    pub fn validate(&self) -> Vec<Violation> {
        self.validate_with_tol(GLUE_TOL)
    }

    /// [`validate`](Self::validate) with a custom length-mismatch tolerance.
    pub fn validate_with_tol(&self, glue_tol: f64) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashMap::new();
        for h in &self.hexagons {
            if seen.insert(h.id.as_str(), ()).is_some() {
                out.push(Violation::DuplicateHexagon { id: h.id.clone() });
            }
        }
        let index = self.index();
        let mut uses: BTreeMap<EdgeRef, Vec<usize>> = BTreeMap::new();
        for (n, g) in self.gluings.iter().enumerate() {
            let mut ok = true;
            for e in [&g.a, &g.b] {
                if !index.contains_key(e.0.as_str()) {
                    out.push(Violation::UnknownHexagon { edge: e.clone() });
                    ok = false;
                } else if e.1 > 2 {
                    out.push(Violation::BadEdgeIndex { edge: e.clone() });
                    ok = false;
                }
            }
            if g.a == g.b {
                out.push(Violation::SelfGlued { edge: g.a.clone() });
                ok = false;
            }
            uses.entry(g.a.clone()).or_default().push(n);
            if g.b != g.a {
                uses.entry(g.b.clone()).or_default().push(n);
            }
            if ok {
                let la = self.hexagons[index[g.a.0.as_str()]].shape.half_longs[g.a.1];
                let lb = self.hexagons[index[g.b.0.as_str()]].shape.half_longs[g.b.1];
                let mismatch = (la - lb).abs();
                if mismatch > glue_tol || mismatch.is_nan() {
                    out.push(Violation::LengthMismatch { a: g.a.clone(), b: g.b.clone(), mismatch });
                }
            }
        }
        for (e, gs) in &uses {
            if gs.len() > 1 {
                out.push(Violation::EdgeReused { edge: e.clone(), gluings: gs.clone() });
            }
        }
        if !self.allow_free_edges {
            for h in &self.hexagons {
                for i in 0..3 {
                    let e = EdgeRef(h.id.clone(), i);
                    if !uses.contains_key(&e) {
                        out.push(Violation::Unglued { edge: e });
                    }
                }
            }
        }
        out
    }

    fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            return Ok(());
        }
        let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Err(Error::Domain(format!("invalid surface: {}", msg.join("; "))))
    }

    /// Corner across the long edge at `(hex, edge, plus_end)`, if glued.
    fn across(&self, index: &HashMap<&str, usize>, c: Corner) -> Option<Corner> {
        let e = EdgeRef(self.hexagons[c.0].id.clone(), c.1);
        let (g, is_a) = self.gluing_of(&e).ok()?;
        let other = if is_a { &g.b } else { &g.a };
        Some((index[other.0.as_str()], other.1, c.2 ^ g.reversed))
    }

    /// Traces the boundary components. Short edge `t_m` runs from `B_{m+1}⁺`
    /// to `B_{m+2}⁻`.
    pub fn boundary_cycles(&self) -> Result<Vec<BoundaryCycle>> {
        let v = self.validate();
        if v.iter().any(|x| !matches!(x, Violation::Unglued { .. })) {
            self.require_valid()?;
        }
        let index = self.index();
        let n = self.hexagons.len();
        let mut visited = vec![[false; 3]; n];
        // the short edge with `corner` as an end, and whether it is entered at
        // its `+`-side end
        let short_at = |c: Corner| -> (usize, usize, bool) {
            if c.2 {
                (c.0, (c.1 + 2) % 3, true)
            } else {
                (c.0, (c.1 + 1) % 3, false)
            }
        };
        // the far corner of short edge `m` entered at its `+`-side end or not
        let exit = |h: usize, m: usize, from_plus: bool| -> Corner {
            if from_plus {
                (h, (m + 2) % 3, false)
            } else {
                (h, (m + 1) % 3, true)
            }
        };
        let mut out = Vec::new();
        for h0 in 0..n {
            for m0 in 0..3 {
                if visited[h0][m0] {
                    continue;
                }
                let mut shorts = Vec::new();
                let mut crossings = Vec::new();
                let mut closed = false;
                let mut err = None;
                let (mut h, mut m, mut plus) = (h0, m0, true);
                loop {
                    visited[h][m] = true;
                    shorts.push((h, m));
                    let c = exit(h, m, plus);
                    let e = EdgeRef(self.hexagons[c.0].id.clone(), c.1);
                    let Some(next) = self.across(&index, c) else {
                        err = Some(format!("long edge {e} is unglued"));
                        break;
                    };
                    crossings.push(e);
                    (h, m, plus) = short_at(next);
                    if (h, m, plus) == (h0, m0, true) {
                        closed = true;
                        break;
                    }
                    if visited[h][m] {
                        err = Some(format!("trace revisits short edge {}:{m}", self.hexagons[h].id));
                        break;
                    }
                }
                if !closed {
                    // extend backwards from the start corner
                    let (mut h, mut m, mut plus) = (h0, m0, false);
                    let mut front = Vec::new();
                    let mut front_cross = Vec::new();
                    loop {
                        let c = exit(h, m, plus);
                        let Some(next) = self.across(&index, c) else { break };
                        front_cross.push(EdgeRef(self.hexagons[c.0].id.clone(), c.1));
                        let (nh, nm, np) = short_at(next);
                        if visited[nh][nm] {
                            break;
                        }
                        visited[nh][nm] = true;
                        front.push((nh, nm));
                        (h, m, plus) = (nh, nm, np);
                    }
                    front.reverse();
                    front_cross.reverse();
                    shorts.splice(0..0, front);
                    crossings.splice(0..0, front_cross);
                }
                let length = shorts.iter().map(|&(h, m)| self.hexagons[h].shape.lambdas[m]).sum();
                out.push(BoundaryCycle {
                    short_edges: shorts.iter().map(|&(h, m)| (self.hexagons[h].id.clone(), m)).collect(),
                    crossings,
                    length,
                    closed,
                    trace_error: err,
                });
            }
        }
        Ok(out)
    }

    /// Smallest admissible `K` (exclusive) and the hexagon that sets it.
    pub fn k_min(&self) -> (f64, Option<&str>) {
        self.hexagons
            .iter()
            .map(|h| (k_min(&h.shape), Some(h.id.as_str())))
            .fold((f64::NEG_INFINITY, None), |a, b| if b.0 > a.0 { b } else { a })
    }

    fn check_k(&self, k_param: f64) -> Result<()> {
        let (kmin, id) = self.k_min();
        if !k_param.is_finite() || k_param <= kmin {
            return Err(Error::Domain(format!(
                "K = {k_param} is not admissible: hexagon {} requires K > {kmin}",
                id.unwrap_or("?")
            )));
        }
        Ok(())
    }

    /// Every hexagon replaced by its `K`-deformation, gluings unchanged.
    pub fn deform(&self, k_param: f64) -> Result<TriangulatedSurface> {
        self.require_valid()?;
        self.check_k(k_param)?;
        let shapes: Vec<Result<HexagonShape>> =
            self.hexagons.par_iter().map(|h| deform_shape(&h.shape, k_param)).collect();
        let mut hexagons = Vec::with_capacity(shapes.len());
        for (h, s) in self.hexagons.iter().zip(shapes) {
            let shape = s.map_err(|e| Error::Domain(format!("hexagon {}: {e}", h.id)))?;
            hexagons.push(SurfaceHexagon { id: h.id.clone(), shape });
        }
        Ok(TriangulatedSurface { hexagons, gluings: self.gluings.clone(), allow_free_edges: self.allow_free_edges })
    }

    /// Largest long-edge stretch factor `ℓ(K)/ℓ` over all hexagons.
    pub fn surface_k(&self, k_param: f64) -> Result<SurfaceK> {
        let def = self.deform(k_param)?;
        let ratio = |e: &EdgeRef| -> Result<f64> {
            let (n, i) = self.resolve(e)?;
            Ok(def.hexagons[n].shape.half_longs[i] / self.hexagons[n].shape.half_longs[i])
        };
        let mut k = f64::NEG_INFINITY;
        let mut argmax = EdgeRef(String::new(), 0);
        for h in &self.hexagons {
            for i in 0..3 {
                let e = EdgeRef(h.id.clone(), i);
                let r = ratio(&e)?;
                if r > k * (1.0 + 1e-12) {
                    k = r;
                    argmax = e;
                }
            }
        }
        let mut per_edge = Vec::with_capacity(self.gluings.len());
        for g in &self.gluings {
            per_edge.push(EdgeStretch { edge: g.a.clone(), partner: g.b.clone(), k: ratio(&g.a)?, k_partner: ratio(&g.b)? });
        }
        Ok(SurfaceK { k, argmax, per_edge })
    }

    /// Sandwich between the arc-metric lower bound from the glued long
    /// edges and the Lipschitz upper bound of the hexagon-wise maps.
    pub fn arc_certificate(&self, k1: f64, k2: f64) -> Result<MetricCertificate> {
        if !(k1 <= k2) {
            return Err(Error::Domain(format!("need K1 <= K2, got {k1} and {k2}")));
        }
        let s1 = self.deform(k1)?;
        let s2 = self.deform(k2)?;
        let mut lower = f64::NEG_INFINITY;
        let mut lower_edge = EdgeRef(String::new(), 0);
        for g in &self.gluings {
            let (n, i) = self.resolve(&g.a)?;
            let r = (s2.hexagons[n].shape.half_longs[i] / s1.hexagons[n].shape.half_longs[i]).ln();
            if r > lower + 1e-15 {
                lower = r;
                lower_edge = g.a.clone();
            }
        }
        if self.gluings.is_empty() {
            return Err(Error::Domain("surface has no glued edges".into()));
        }
        let upper = s1.surface_k(k2 / k1)?.k.ln();
        let gap = upper - lower;
        Ok(MetricCertificate {
            k1,
            k2,
            lower_bound: lower,
            upper_bound: upper,
            gap,
            lower_edge,
            geodesic_grade: gap.abs() <= CERT_TOL,
        })
    }

    /// Mean of the two strip widths `L` on either side of glued edge `e`.
    pub fn luo_radius(&self, e: &EdgeRef) -> Result<f64> {
        let (g, _) = self.gluing_of(e)?;
        let (na, ia) = self.resolve(&g.a)?;
        let (nb, ib) = self.resolve(&g.b)?;
        Ok(0.5 * (self.hexagons[na].shape.ls[ia] + self.hexagons[nb].shape.ls[ib]))
    }

    pub fn cycle_sum(&self, c: &EdgeCycle) -> Result<f64> {
        c.edges.iter().map(|e| self.luo_radius(e)).sum()
    }
}

pub fn validate(s: &TriangulatedSurface) -> Vec<Violation> {
    s.validate()
}

pub fn boundary_cycles(s: &TriangulatedSurface) -> Result<Vec<BoundaryCycle>> {
    s.boundary_cycles()
}

pub fn deform_surface(s: &TriangulatedSurface, k_param: f64) -> Result<TriangulatedSurface> {
    s.deform(k_param)
}

pub fn surface_k(s: &TriangulatedSurface, k_param: f64) -> Result<SurfaceK> {
    s.surface_k(k_param)
}

pub fn arc_certificate(s: &TriangulatedSurface, k1: f64, k2: f64) -> Result<MetricCertificate> {
    s.arc_certificate(k1, k2)
}

pub fn luo_radius(s: &TriangulatedSurface, e: &EdgeRef) -> Result<f64> {
    s.luo_radius(e)
}

pub fn cycle_sum(s: &TriangulatedSurface, c: &EdgeCycle) -> Result<f64> {
    s.cycle_sum(c)
}

/// Two copies of `h` glued along all three long edges.
pub fn pants(h: &HexagonShape) -> TriangulatedSurface {
    TriangulatedSurface::new(
        vec![("h0".into(), h.clone()), ("h1".into(), h.clone())],
        (0..3)
            .map(|i| Gluing { a: EdgeRef::new("h0", i), b: EdgeRef::new("h1", i), reversed: false })
            .collect(),
    )
}

/// Two copies of `h` with every long edge glued with reversed orientation;
/// the result has one boundary component. Needs all three `ℓ_i` equal for
/// the edge lengths to match.
pub fn one_holed_torus(h: &HexagonShape) -> TriangulatedSurface {
    TriangulatedSurface::new(
        vec![("h0".into(), h.clone()), ("h1".into(), h.clone())],
        (0..3)
            .map(|i| Gluing { a: EdgeRef::new("h0", i), b: EdgeRef::new("h1", i), reversed: true })
            .collect(),
    )
}
