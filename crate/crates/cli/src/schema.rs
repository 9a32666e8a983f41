//! JSON input schemas and the error envelope.

use hexstretch::hexagon::{hexagon_from_alphas_d, hexagon_from_half_longs, HexagonShape};
use hexstretch::surface::{Gluing, SurfaceHexagon, TriangulatedSurface};
use serde::{Deserialize, Serialize};

/// Exit status of the binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Schema = 1,
    Domain = 2,
    Verification = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        CliError { exit: Exit::Schema, kind: "schema", message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        CliError { exit: Exit::Domain, kind: "domain", message: message.into() }
    }
}

impl From<hexstretch::Error> for CliError {
    fn from(e: hexstretch::Error) -> Self {
        use hexstretch::Error as E;
        let kind = match e {
            E::Domain(_) => "domain",
            E::Degenerate(_) => "degenerate",
            E::IdealLimit(_) => "ideal_limit",
            E::Convergence(_) => "convergence",
            E::OutOfChart(_) => "out_of_chart",
            E::OutsideHexagon(_) => "outside_hexagon",
            E::OffLocus(_) => "off_locus",
            E::UnknownEdge(_) => "unknown_edge",
        };
        CliError { exit: Exit::Domain, kind, message: e.to_string() }
    }
}

#[derive(Serialize)]
pub struct ErrorEnvelope<'a> {
    pub error: ErrorBody<'a>,
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub message: &'a str,
    pub exit_code: i32,
}

/// A hexagon given by its long-edge half-lengths or by `(alphas, d)`.
/// Solved output carries both and is accepted back; `half_long` wins.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct HexagonInput {
    pub half_long: Option<[f64; 3]>,
    pub alphas: Option<[f64; 3]>,
    pub d: Option<f64>,
    pub lambda: Option<[f64; 3]>,
}

impl HexagonInput {
    pub fn solve(&self) -> Result<HexagonShape, CliError> {
        match (self.half_long, self.alphas, self.d) {
            (Some(l), _, _) => Ok(hexagon_from_half_longs(l)?),
            (None, Some(a), Some(d)) => Ok(hexagon_from_alphas_d(a, d)?),
            _ => Err(CliError::schema("hexagon needs \"half_long\" or both \"alphas\" and \"d\"")),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct SurfaceHexagonInput {
    pub id: String,
    #[serde(flatten)]
    pub hexagon: HexagonInput,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SurfaceInput {
    pub hexagons: Vec<SurfaceHexagonInput>,
    pub gluings: Vec<Gluing>,
    #[serde(default)]
    pub allow_free_edges: bool,
}

impl SurfaceInput {
    pub fn build(&self) -> Result<TriangulatedSurface, CliError> {
        let mut hexagons = Vec::with_capacity(self.hexagons.len());
        for h in &self.hexagons {
            let shape = h.hexagon.solve().map_err(|mut e| {
                e.message = format!("hexagon {}: {}", h.id, e.message);
                e
            })?;
            hexagons.push(SurfaceHexagon { id: h.id.clone(), shape });
        }
        Ok(TriangulatedSurface { hexagons, gluings: self.gluings.clone(), allow_free_edges: self.allow_free_edges })
    }
}

/// Surface JSON in the input layout, with each hexagon's solved shape.
#[derive(Serialize)]
pub struct SurfaceOutput<'a> {
    pub hexagons: Vec<SurfaceHexagonOutput<'a>>,
    pub gluings: &'a [Gluing],
    pub allow_free_edges: bool,
}

#[derive(Serialize)]
pub struct SurfaceHexagonOutput<'a> {
    pub id: &'a str,
    #[serde(flatten)]
    pub shape: &'a HexagonShape,
}

impl<'a> SurfaceOutput<'a> {
    pub fn new(s: &'a TriangulatedSurface) -> Self {
        SurfaceOutput {
            hexagons: s.hexagons.iter().map(|h| SurfaceHexagonOutput { id: &h.id, shape: &h.shape }).collect(),
            gluings: &s.gluings,
            allow_free_edges: s.allow_free_edges,
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::schema(format!("invalid input: {e}")))
}

/// Parses `"a,b,c"` into floats.
pub fn parse_list(text: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(CliError::schema(format!("{what} expects {n} comma-separated numbers, got {text:?}"))),
    }
}
