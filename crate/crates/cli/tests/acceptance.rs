//! Acceptance suite: one line per criterion.
//!
//! Criteria 7 and 10 are known not to hold as stated (see README); the run
//! fails if any other criterion fails or if either of those starts passing.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::process::{Command, Stdio};

use hexstretch::deform::{deform, l_of_k, verify_lipschitz};
use hexstretch::hexagon::{embed, hexagon_from_half_longs, tripod_center_exists, FoliationCoord, HexType, HexagonShape};
use hexstretch::hyp::{
    acosh, dist, geodesic_length_by_quadrature, hypercycle_arclength, line_angle, Hypercycle,
};
use hexstretch::quad::{l_from_s, l_from_s_argument, quad_from_alpha_d, quad_residuals, ts_factors};
use hexstretch::surface::{pants, TriangulatedSurface};
use hexstretch::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: [usize; 2] = [7, 10];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Random realizable half-length triples, by rejection.
fn random_hexagons(n: usize, seed: u64, type_one: bool) -> Vec<HexagonShape> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let ells = [0; 3].map(|_| rng.gen_range(0.2..2.5));
        if !tripod_center_exists(ells) {
            continue;
        }
        let h = hexagon_from_half_longs(ells).expect("realizable triple solves");
        if type_one && h.hex_type != HexType::TypeI {
            continue;
        }
        out.push(h);
    }
    out
}

fn quad_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let (mut acute, mut obtuse) = (0, 0);
    let mut sign_ok = true;
    for i in 1..40 {
        let alpha = PI * i as f64 / 40.0;
        if (alpha - FRAC_PI_2).abs() < 1e-9 {
            continue;
        }
        for j in 0..20 {
            let d = 0.05 + 0.2 * j as f64;
            if alpha.sin() * d.cosh() <= 1.0 + 1e-6 {
                continue;
            }
            let q = quad_from_alpha_d(alpha, d).unwrap();
            for r in quad_residuals(&q).unwrap() {
                worst = worst.max(r);
            }
            sign_ok &= q.l().unwrap() * (FRAC_PI_2 - alpha) > 0.0;
            count += 1;
            if alpha < FRAC_PI_2 {
                acute += 1
            } else {
                obtuse += 1
            }
        }
    }
    outcome(
        count >= 500 && acute > 0 && obtuse > 0 && worst <= 1e-10 && sign_ok,
        format!("{count} pairs ({acute} acute, {obtuse} obtuse), max residual {worst:.2e}, sign law {sign_ok}"),
    )
}

fn special_case() -> Outcome {
    let alpha = PI / 3.0;
    let s = 2.0 - 3f64.sqrt();
    let arg = l_from_s_argument(alpha, s);
    let ideal = matches!(l_from_s(alpha, s), Err(Error::IdealLimit(_)));
    // the same s from the ideal quadrilateral: sin α cosh d = 1
    let s_from_d = (0.5 * acosh(1.0 / alpha.sin())).tanh();
    let t = s * alpha.cos() / (1.0 + alpha.sin());
    let t_err = (t - s * s).abs();
    let factor = ts_factors(alpha, s, t).0.abs();
    outcome(
        (arg - 1.0).abs() <= 1e-12 && ideal && (s_from_d - s).abs() <= 1e-12 && t_err <= 1e-12 && factor <= 1e-12,
        format!(
            "|arg-1| = {:.1e}, ideal limit raised {ideal}, |s(d)-s| = {:.1e}, |t-(2-√3)²| = {t_err:.1e}",
            (arg - 1.0).abs(),
            (s_from_d - s).abs()
        ),
    )
}

fn hexagon_solver() -> Outcome {
    let h = hexagon_from_half_longs([1.0; 3]).unwrap();
    let d_err = (h.d - 1.1807).abs();
    let l_err = h.lambdas.iter().map(|l| (l - 0.8272).abs()).fold(0.0, f64::max);
    let id = h.identity_residuals().iter().cloned().fold(0.0, f64::max);
    let mut rt: f64 = 0.0;
    let mut id_all: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut n = 0;
    while n < 200 {
        let ells = [0; 3].map(|_| rng.gen_range(0.05..3.0));
        if !tripod_center_exists(ells) {
            continue;
        }
        let s = hexagon_from_half_longs(ells).unwrap();
        for i in 0..3 {
            rt = rt.max((s.half_longs[i] - ells[i]).abs());
        }
        id_all = id_all.max(s.identity_residuals().iter().cloned().fold(0.0, f64::max));
        n += 1;
    }
    outcome(
        d_err <= 1e-4 && l_err <= 1e-4 && id <= 1e-9 && id_all <= 1e-9 && rt <= 1e-10,
        format!("|d-1.1807| = {d_err:.1e}, |λ-0.8272| = {l_err:.1e}, identity {id:.1e}; 200 triples: round trip {rt:.1e}, identity {id_all:.1e}"),
    )
}

fn metrology() -> Outcome {
    let (mut len_err, mut ang_err): (f64, f64) = (0.0, 0.0);
    for h in random_hexagons(50, 4, true) {
        let e = embed(&h).unwrap();
        for i in 0..3 {
            let (p, q) = e.long_edge(i);
            len_err = len_err.max((geodesic_length_by_quadrature(p, q).unwrap() - 2.0 * h.half_longs[i]).abs());
            let (p, q) = e.short_edge(i);
            len_err = len_err.max((geodesic_length_by_quadrature(p, q).unwrap() - h.lambdas[i]).abs());
            let (bm, bp) = e.long_edge(i);
            let long = &e.long_lines[i];
            for (b, short) in [(bm, &e.short_lines[(i + 1) % 3]), (bp, &e.short_lines[(i + 2) % 3])] {
                ang_err = ang_err.max((line_angle(long.tangent_at(b), short.tangent_at(b)) - FRAC_PI_2).abs());
            }
        }
    }
    outcome(
        len_err <= 1e-8 && ang_err <= 1e-9,
        format!("50 Type I hexagons: max edge-length error {len_err:.1e}, max corner-angle error {ang_err:.1e}"),
    )
}

fn hypercycle_lemma() -> Outcome {
    let mut worst: f64 = 0.0;
    for h in random_hexagons(20, 5, true) {
        let e = embed(&h).unwrap();
        for i in 0..3 {
            let (bm, bp) = e.long_edge(i);
            let base = geodesic_length_by_quadrature(bm, bp).unwrap();
            for k in 1..=10 {
                let u = k as f64 / 10.0;
                let off = u * h.ls[i];
                let a = e.coord_to_point(FoliationCoord::new(i, u, 0.0)).unwrap();
                let b = e.coord_to_point(FoliationCoord::new(i, u, 2.0)).unwrap();
                let arc = hypercycle_arclength(&Hypercycle::new(e.long_lines[i].clone(), off), a, b).unwrap();
                worst = worst.max((arc - off.cosh() * base).abs());
            }
        }
    }
    outcome(worst <= 1e-8, format!("20 hexagons × 3 sectors × 10 leaves: max |arc − cosh(uL)·2ℓ| = {worst:.1e}"))
}

fn leaf_formulas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    let bases = random_hexagons(10, 7, true);
    while samples < 100 {
        let h = &bases[samples % bases.len()];
        let k_param = rng.gen_range(1.1..3.0);
        let f = deform(h, k_param).unwrap();
        let i = rng.gen_range(0..3);
        let u = rng.gen_range(0.0..1.0);
        let v = rng.gen_range(0.1..1.9);
        let step = 1e-5;
        let p = |v: f64| f.base_embedding.coord_to_point(FoliationCoord::new(i, u, v)).unwrap();
        let q = |v: f64| f.deformed_embedding.coord_to_point(FoliationCoord::new(i, u, v)).unwrap();
        let measured = dist(q(v - step), q(v + step)) / dist(p(v - step), p(v + step));
        let predicted = f.leaf_stretch(i, u).unwrap();
        worst = worst.max((measured - predicted).abs() / predicted);
        samples += 1;
    }
    let mut contraction_ok = true;
    let mut worst_contraction: f64 = 0.0;
    for h in &bases {
        for k in [1.01, 1.5, 2.0, 3.0, 5.0, 10.0] {
            let f = deform(h, k).unwrap();
            for i in 0..3 {
                let c = f.transverse_contraction(i).unwrap();
                contraction_ok &= c < 1.0;
                worst_contraction = worst_contraction.max(c);
            }
        }
    }
    outcome(
        worst <= 1e-4 && contraction_ok,
        format!("100 samples: max relative leaf-stretch error {worst:.1e}; largest L^K/L for K > 1: {worst_contraction:.4}"),
    )
}

fn extremality() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for ells in [[1.0; 3], [0.8, 1.0, 1.2]] {
        let h = hexagon_from_half_longs(ells).unwrap();
        for k in [1.5, 2.0, 3.0] {
            let f = deform(&h, k).unwrap();
            let r = verify_lipschitz(&f, 64).unwrap();
            let ok = r.grid_max <= r.k * (1.0 + 1e-4) && r.edge_max >= r.k * (1.0 - 1e-4);
            pass &= ok;
            parts.push(format!(
                "{ells:?} K={k}: grid max {:.4} at u={:.4} vs k={:.4}, edge {:.6}",
                r.grid_max, r.grid_argmax.u, r.k, r.edge_max
            ));
        }
    }
    outcome(pass, parts.join("; "))
}

fn pants_fixtures() -> Vec<TriangulatedSurface> {
    vec![
        pants(&hexagon_from_half_longs([1.0; 3]).unwrap()),
        pants(&hexagon_from_half_longs([0.8, 1.0, 1.2]).unwrap()),
    ]
}

fn certificates() -> Outcome {
    let mut gap: f64 = 0.0;
    let mut add: f64 = 0.0;
    for s in pants_fixtures() {
        let c12 = s.arc_certificate(1.0, 2.0).unwrap();
        let c13 = s.arc_certificate(1.0, 3.0).unwrap();
        let c23 = s.arc_certificate(2.0, 3.0).unwrap();
        for c in [&c12, &c13, &c23] {
            gap = gap.max(c.gap.abs());
        }
        add = add.max((c13.lower_bound - c12.lower_bound - c23.lower_bound).abs());
    }
    outcome(gap <= 1e-10 && add <= 1e-12, format!("max gap {gap:.1e}, additivity residual {add:.1e}"))
}

fn distinct_ratios() -> Outcome {
    let s = pants(&hexagon_from_half_longs([0.8, 1.0, 1.2]).unwrap());
    let before = s.boundary_cycles().unwrap();
    let after = s.deform(2.0).unwrap().boundary_cycles().unwrap();
    let r: Vec<f64> = before.iter().zip(&after).map(|(b, a)| a.length / b.length).collect();
    let mut min_diff = f64::INFINITY;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            min_diff = min_diff.min((r[i] - r[j]).abs());
        }
    }
    outcome(
        r.len() == 3 && min_diff > 1e-6,
        format!("ratios {:.6}, {:.6}, {:.6}; smallest pairwise difference {min_diff:.2e}", r[0], r[1], r[2]),
    )
}

fn strip_limit() -> Outcome {
    let mut decreasing = true;
    let mut worst_tail: f64 = 0.0;
    let mut worst_alpha = 0.0;
    for i in 1..30 {
        let alpha = FRAC_PI_2 * i as f64 / 30.0;
        for ell in [0.5, 1.0, 2.0] {
            let mut prev = f64::INFINITY;
            for j in 1..=200 {
                let k = 0.1 * j as f64;
                let l = l_of_k(alpha, ell, k).unwrap();
                decreasing &= l < prev;
                prev = l;
                if ell * k >= 10.0 && l > worst_tail {
                    worst_tail = l;
                    worst_alpha = alpha;
                }
            }
        }
    }
    let alpha = PI / 3.0;
    let d = acosh(1f64.cosh() / alpha.sin());
    let route = (l_of_k(alpha, 1.0, 1.0).unwrap() - quad_from_alpha_d(alpha, d).unwrap().l().unwrap()).abs();
    outcome(
        decreasing && worst_tail < 1e-6 && route <= 1e-10,
        format!(
            "decreasing {decreasing}; max L over Kℓ ≥ 10 is {worst_tail:.2e} (α = {worst_alpha:.4}); route difference {route:.1e}"
        ),
    )
}

fn luo() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut surfaces = pants_fixtures();
    surfaces.extend(random_hexagons(10, 8, true).iter().map(pants));
    let mut min_z = f64::INFINITY;
    for (n, s) in surfaces.iter().enumerate() {
        for g in &s.gluings {
            for e in [&g.a, &g.b] {
                min_z = min_z.min(s.luo_radius(e).unwrap());
            }
        }
        if n < 2 {
            for c in s.boundary_cycles().unwrap() {
                worst = worst.max((2.0 * s.cycle_sum(&c.edge_cycle()).unwrap() - c.length).abs());
            }
        }
    }
    outcome(
        worst <= 1e-10 && min_z > 0.0,
        format!("pants: max |2·sum − length| = {worst:.1e}; smallest z(e) over 12 Type I surfaces {min_z:.4}"),
    )
}

fn cli_contract() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let fx = |n: &str| dir.join("fixtures").join(n).to_string_lossy().into_owned();
    let run = |args: &[&str], stdin: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_hexstretch"));
        c.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
        c.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
        let mut child = c.spawn().unwrap();
        if let Some(t) = stdin {
            use std::io::Write;
            child.stdin.take().unwrap().write_all(t.as_bytes()).unwrap();
        }
        let o = child.wait_with_output().unwrap();
        (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap())
    };
    let mut notes = Vec::new();

    let (c0, solved) = run(&["hexagon", "solve", "--in", &fx("regular.json")], None);
    let golden_solve = std::fs::read_to_string(dir.join("golden/solve_regular.json")).unwrap_or_default();
    let (_, resolved) = run(&["hexagon", "solve"], Some(&solved));
    let round_trip = solved == golden_solve && resolved == solved;
    notes.push(format!("round trip {round_trip}"));

    let (c1, _) = run(&["hexagon", "solve"], Some("{oops"));
    let (c2, _) = run(&["deform", "--in", &fx("uneven.json"), "--K", "0.5"], None);
    let (c3, _) = run(&["surface", "validate", "--in", &fx("mismatched.json")], None);
    let (c0b, _) = run(&["surface", "certificate", "--in", &fx("pants_regular.json"), "--K1", "1", "--K2", "2"], None);
    let codes = [c0, c1, c2, c3, c0b] == [0, 1, 2, 3, 0];
    notes.push(format!("exit codes {codes}"));

    let args = ["render", "--in", &fx("regular.json"), "--show", "tripod,central_region"];
    let (_, a) = run(&args, None);
    let (_, b) = run(&args, None);
    let golden_svg = std::fs::read_to_string(dir.join("golden/regular.svg")).unwrap_or_default();
    let svg = a == b && a == golden_svg;
    notes.push(format!("SVG byte-identical {svg}"));

    outcome(round_trip && codes && svg, notes.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("quadrilateral formula suite", quad_suite),
        ("ideal limit at α = π/3", special_case),
        ("hexagon solver", hexagon_solver),
        ("embedding metrology", metrology),
        ("hypercycle length law", hypercycle_lemma),
        ("leaf formulas", leaf_formulas),
        ("extremality verification", extremality),
        ("geodesic certificate", certificates),
        ("distinct boundary ratios", distinct_ratios),
        ("strip width L(K) → 0", strip_limit),
        ("Luo coordinates", luo),
        ("CLI contract", cli_contract),
    ];
    let mut unexpected = Vec::new();
    for (n, (name, check)) in criteria.iter().enumerate() {
        let id = n + 1;
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_FAILURES.contains(&id);
        let note = if known && !o.pass { " (known, see README)" } else { "" };
        println!("acceptance {id:>2} {tag} {name}{note}: {}", o.detail);
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
