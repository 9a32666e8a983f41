use hexstretch::deform::{deform as deform_hexagon, k_min, verify_lipschitz, StretchReport};
use hexstretch::hexagon::{classify_short, embed, FoliationCoord, HexType, HexagonShape};
use hexstretch::hyp::DiscPoint;
use hexstretch::surface::{BoundaryCycle, EdgeCycle, EdgeRef, MetricCertificate, TriangulatedSurface, Violation};
use serde::Serialize;

use crate::render::{render as render_svg, RenderSpec, MIN_WIDTH};
use crate::schema::{parse, parse_list, CliError, Exit, HexagonInput, SurfaceInput, SurfaceOutput};
use crate::{HexagonCmd, MapPointArgs, PointOrCoord, RenderArgs, SurfaceCmd, VerifyCmd};

type Output = Result<(String, Exit), CliError>;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn ok<T: Serialize>(value: &T) -> Output {
    Ok((json(value), Exit::Ok))
}

fn hexagon_input(text: &str) -> Result<HexagonShape, CliError> {
    parse::<HexagonInput>(text)?.solve()
}

fn surface_input(text: &str) -> Result<TriangulatedSurface, CliError> {
    parse::<SurfaceInput>(text)?.build()
}

fn parse_point(text: &str) -> Result<DiscPoint, CliError> {
    let v = parse_list(text, 2, "--point")?;
    Ok(DiscPoint::new(v[0], v[1])?)
}

fn parse_coord(text: &str) -> Result<FoliationCoord, CliError> {
    let v = parse_list(text, 3, "--coord")?;
    if v[0].fract() != 0.0 || !(0.0..=2.0).contains(&v[0]) {
        return Err(CliError::schema(format!("sector must be 0, 1 or 2, got {}", v[0])));
    }
    Ok(FoliationCoord::new(v[0] as usize, v[1], v[2]))
}

fn parse_edge(text: &str) -> Result<EdgeRef, CliError> {
    match text.split_once(',') {
        Some((h, i)) => match i.trim().parse::<usize>() {
            Ok(i) => Ok(EdgeRef::new(h.trim(), i)),
            Err(_) => Err(CliError::schema(format!("edge index in {text:?} is not an integer"))),
        },
        None => Err(CliError::schema(format!("edge must look like hex,index, got {text:?}"))),
    }
}

#[derive(Serialize)]
struct Solved<'a> {
    #[serde(flatten)]
    shape: &'a HexagonShape,
    identity_residuals: [f64; 3],
}

#[derive(Serialize)]
struct Classified {
    #[serde(rename = "type")]
    hex_type: HexType,
}

#[derive(Serialize)]
struct Coords {
    point: [f64; 2],
    coord: FoliationCoord,
}

pub fn hexagon(cmd: &HexagonCmd, input: &str) -> Output {
    match cmd {
        HexagonCmd::Solve => {
            let h = hexagon_input(input)?;
            ok(&Solved { identity_residuals: h.identity_residuals(), shape: &h })
        }
        HexagonCmd::Classify => {
            let inp: HexagonInput = parse(input)?;
            let hex_type = match inp.lambda {
                Some(l) if l.iter().all(|x| x.is_finite() && *x > 0.0) => classify_short(l),
                Some(l) => return Err(CliError::domain(format!("short edges must be positive, got {l:?}"))),
                None => inp.solve()?.hex_type,
            };
            ok(&Classified { hex_type })
        }
        HexagonCmd::Coords(at) => {
            let e = embed(&hexagon_input(input)?)?;
            let (p, c) = locate(&e, at)?;
            ok(&Coords { point: [p.x(), p.y()], coord: c })
        }
    }
}

fn locate(e: &hexstretch::hexagon::EmbeddedHexagon, at: &PointOrCoord) -> Result<(DiscPoint, FoliationCoord), CliError> {
    match (&at.coord, &at.point) {
        (Some(c), None) => {
            let c = parse_coord(c)?;
            Ok((e.coord_to_point(c)?, c))
        }
        (None, Some(p)) => {
            let p = parse_point(p)?;
            Ok((p, e.point_to_coord(p)?))
        }
        _ => Err(CliError::schema("give exactly one of --coord and --point")),
    }
}

#[derive(Serialize)]
struct Deformed<'a> {
    #[serde(rename = "K")]
    k_param: f64,
    k_min: f64,
    k: f64,
    k_i: [f64; 3],
    argmax_edge: usize,
    transverse_contraction: [Option<f64>; 3],
    deformed: &'a HexagonShape,
}

pub fn deform(input: &str, k_param: f64) -> Output {
    let h = hexagon_input(input)?;
    let f = deform_hexagon(&h, k_param)?;
    ok(&Deformed {
        k_param,
        k_min: k_min(&h),
        k: f.k,
        k_i: f.ks,
        argmax_edge: f.argmax_edge,
        transverse_contraction: [0, 1, 2].map(|i| f.transverse_contraction(i).ok()),
        deformed: &f.deformed,
    })
}

#[derive(Serialize)]
struct Mapped {
    #[serde(rename = "K")]
    k_param: f64,
    point: [f64; 2],
    coord: FoliationCoord,
    image: [f64; 2],
}

pub fn map_point(input: &str, a: &MapPointArgs) -> Output {
    let h = hexagon_input(input)?;
    let f = deform_hexagon(&h, a.k)?;
    let (p, c) = locate(&f.base_embedding, &a.at)?;
    let q = f.deformed_embedding.coord_to_point(c)?;
    ok(&Mapped { k_param: a.k, point: [p.x(), p.y()], coord: c, image: [q.x(), q.y()] })
}

#[derive(Serialize)]
struct Verified {
    #[serde(rename = "K")]
    k_param: f64,
    grid: usize,
    tol_fd: f64,
    #[serde(flatten)]
    report: StretchReport,
}

pub fn verify(input: &str, cmd: &VerifyCmd) -> Output {
    let VerifyCmd::Lipschitz { k, grid, tol_fd } = *cmd;
    let h = hexagon_input(input)?;
    let f = deform_hexagon(&h, k)?;
    let mut report = verify_lipschitz(&f, grid)?;
    report.pass = report.grid_max <= report.k * (1.0 + tol_fd) && report.edge_max >= report.k * (1.0 - tol_fd);
    let exit = if report.pass { Exit::Ok } else { Exit::Verification };
    Ok((json(&Verified { k_param: k, grid, tol_fd, report }), exit))
}

#[derive(Serialize)]
struct Validated {
    valid: bool,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct Boundaries {
    cycles: Vec<BoundaryCycle>,
}

#[derive(Serialize)]
struct DeformedSurface<'a> {
    #[serde(rename = "K")]
    k_param: f64,
    surface: SurfaceOutput<'a>,
    boundary_lengths: Vec<f64>,
}

#[derive(Serialize)]
struct Certificate {
    #[serde(flatten)]
    cert: MetricCertificate,
    tol_cert: f64,
}

#[derive(Serialize)]
struct Radius {
    edge: EdgeRef,
    z: f64,
}

#[derive(Serialize)]
struct CycleSum {
    edges: Vec<EdgeRef>,
    sum: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_length: Option<f64>,
}

#[derive(Serialize)]
struct Luo {
    radii: Vec<Radius>,
    boundary_cycles: Vec<CycleSum>,
}

pub fn surface(input: &str, cmd: &SurfaceCmd) -> Output {
    let s = surface_input(input)?;
    match cmd {
        SurfaceCmd::Validate { tol_glue } => {
            let violations = s.validate_with_tol(*tol_glue);
            let valid = violations.is_empty();
            let exit = if valid { Exit::Ok } else { Exit::Verification };
            Ok((json(&Validated { valid, violations }), exit))
        }
        SurfaceCmd::Boundaries => ok(&Boundaries { cycles: s.boundary_cycles()? }),
        SurfaceCmd::Deform { k } => {
            let d = s.deform(*k)?;
            let boundary_lengths = d.boundary_cycles()?.iter().map(|c| c.length).collect();
            ok(&DeformedSurface { k_param: *k, surface: SurfaceOutput::new(&d), boundary_lengths })
        }
        SurfaceCmd::K { k } => ok(&s.surface_k(*k)?),
        SurfaceCmd::Certificate { k1, k2, tol_cert } => {
            let mut cert = s.arc_certificate(*k1, *k2)?;
            cert.geodesic_grade = cert.gap.abs() <= *tol_cert;
            let exit = if cert.geodesic_grade { Exit::Ok } else { Exit::Verification };
            Ok((json(&Certificate { cert, tol_cert: *tol_cert }), exit))
        }
        SurfaceCmd::Luo { edge, cycle } => match (edge, cycle) {
            (Some(e), None) => {
                let e = parse_edge(e)?;
                ok(&Radius { z: s.luo_radius(&e)?, edge: e })
            }
            (None, Some(c)) => {
                let edges = c
                    .split(';')
                    .filter(|x| !x.trim().is_empty())
                    .map(parse_edge)
                    .collect::<Result<Vec<_>, _>>()?;
                let cycle = EdgeCycle { edges };
                ok(&CycleSum { sum: s.cycle_sum(&cycle)?, edges: cycle.edges, boundary_length: None })
            }
            (None, None) => {
                let mut radii = Vec::new();
                for g in &s.gluings {
                    for e in [&g.a, &g.b] {
                        radii.push(Radius { edge: e.clone(), z: s.luo_radius(e)? });
                    }
                }
                let mut cycles = Vec::new();
                for b in s.boundary_cycles()? {
                    let c = b.edge_cycle();
                    cycles.push(CycleSum { sum: s.cycle_sum(&c)?, edges: c.edges, boundary_length: Some(b.length) });
                }
                ok(&Luo { radii, boundary_cycles: cycles })
            }
            _ => Err(CliError::schema("give at most one of --edge and --cycle")),
        },
    }
}

pub fn render(input: &str, a: &RenderArgs) -> Output {
    let mut spec = match &a.spec {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::schema(format!("cannot read {}: {e}", p.display())))?;
            parse::<RenderSpec>(&text)?
        }
        None => RenderSpec::default(),
    };
    if let Some(w) = a.width {
        spec.width_px = w;
    }
    if let Some(show) = &a.show {
        let mut flags = crate::render::ShowFlags {
            foliation_f: false,
            foliation_g: false,
            tripod: false,
            central_region: false,
            labels: false,
        };
        for item in show.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item {
                "foliation_F" => flags.foliation_f = true,
                "foliation_G" => flags.foliation_g = true,
                "tripod" => flags.tripod = true,
                "central_region" => flags.central_region = true,
                "labels" => flags.labels = true,
                other => return Err(CliError::schema(format!("unknown --show item {other:?}"))),
            }
        }
        spec.show = flags;
    }
    if let Some(n) = a.leaves_f {
        spec.leaf_counts.f = n;
    }
    if let Some(n) = a.leaves_g {
        spec.leaf_counts.g = n;
    }
    if a.overlay_k.is_some() {
        spec.overlay_k = a.overlay_k;
    }
    if spec.width_px < MIN_WIDTH {
        return Err(CliError::schema(format!("width_px must be at least {MIN_WIDTH}, got {}", spec.width_px)));
    }
    let h = hexagon_input(input)?;
    let e = embed(&h)?;
    let overlay = match spec.overlay_k {
        Some(k) => Some(deform_hexagon(&h, k)?.deformed_embedding),
        None => None,
    };
    Ok((render_svg(&e, &spec, overlay.as_ref())?, Exit::Ok))
}
