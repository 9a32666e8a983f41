//! End-to-end tests of the binary against golden files.
//!
//! Run with `BLESS=1` to rewrite the files under `tests/golden/`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run_with(args: &[&str], stdin: Option<&str>, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hexstretch"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        use std::io::Write;
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    run_with(args, None, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {name}; run with BLESS=1"));
    assert_eq!(actual, expected, "output differs from golden {name}");
}

fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn hexagon_solve_regular() {
    let o = run(&["hexagon", "solve", "--in", &f("regular.json")]);
    assert_eq!(code(&o), 0);
    golden("solve_regular.json", &stdout(&o));
    let v = json(&o);
    assert!((v["d"].as_f64().unwrap() - 1.1807).abs() < 1e-4);
    assert!((v["lambda"][0].as_f64().unwrap() - 0.8272).abs() < 1e-4);
    assert!((v["alphas"][1].as_f64().unwrap() - 1.0472).abs() < 1e-4);
    assert_eq!(v["type"], "I");
}

#[test]
fn solved_output_is_accepted_back() {
    let first = stdout(&run(&["hexagon", "solve", "--in", &f("uneven.json")]));
    let second = stdout(&run_with(&["hexagon", "solve"], Some(&first), None));
    assert_eq!(first, second);
}

#[test]
fn hexagon_from_angles_and_classify() {
    let o = run_with(
        &["hexagon", "classify"],
        Some(r#"{"alphas":[1.5707963267948966,0.7853981633974483,0.7853981633974483],"d":1.5}"#),
        None,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["type"], "II");
    let o = run_with(&["hexagon", "classify"], Some(r#"{"lambda":[1.0,1.0,3.0]}"#), None);
    assert_eq!(json(&o)["type"], "III");
}

#[test]
fn schema_errors_exit_one() {
    for input in ["{not json", r#"{"half_long":[1,1]}"#, r#"{"d":1.0}"#] {
        let o = run_with(&["hexagon", "solve"], Some(input), None);
        assert_eq!(code(&o), 1, "{input}");
        assert_eq!(json(&o)["error"]["kind"], "schema");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(code(&run(&["deform"])), 1);
    assert_eq!(code(&run(&["render", "--in", &f("regular.json"), "--width", "32"])), 1);
    assert_eq!(code(&run(&["hexagon", "coords", "--in", &f("regular.json"), "--point", "0.1"])), 1);
}

#[test]
fn domain_errors_exit_two() {
    let o = run(&["deform", "--in", &f("uneven.json"), "--K", "0.5"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "domain");
    let o = run_with(&["hexagon", "solve"], Some(r#"{"half_long":[0.2,0.2,3.0]}"#), None);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "convergence");
    let o = run(&["hexagon", "coords", "--in", &f("regular.json"), "--point", "0.9,0"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "outside_hexagon");
}

#[test]
fn deform_uneven() {
    let o = run(&["deform", "--in", &f("uneven.json"), "--K", "2"]);
    assert_eq!(code(&o), 0);
    golden("deform_uneven_k2.json", &stdout(&o));
    let v = json(&o);
    assert!((v["k"].as_f64().unwrap() - 2.0501).abs() < 1e-4);
    for (i, want) in [2.0501, 1.7927, 1.6336].iter().enumerate() {
        assert!((v["k_i"][i].as_f64().unwrap() - want).abs() < 1e-4);
    }
}

#[test]
fn coords_and_map_point() {
    let o = run(&["hexagon", "coords", "--in", &f("regular.json"), "--coord", "0,0.5,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let p = format!("{},{}", v["point"][0], v["point"][1]);
    let back = json(&run(&["hexagon", "coords", "--in", &f("regular.json"), "--point", &p]));
    assert_eq!(back["coord"]["sector"], 0);
    assert!((back["coord"]["u"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((back["coord"]["v"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let o = run(&["map-point", "--in", &f("regular.json"), "--K", "1", "--coord", "1,1.5,0.3"]);
    let v = json(&o);
    for k in 0..2 {
        assert!((v["image"][k].as_f64().unwrap() - v["point"][k].as_f64().unwrap()).abs() < 1e-12);
    }
    let o = run(&["map-point", "--in", &f("regular.json"), "--K", "2", "--coord", "0,2,0"]);
    let v = json(&o);
    assert!(v["image"][0].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn verify_reports_and_sets_exit_code() {
    let o = run(&["verify", "lipschitz", "--in", &f("regular.json"), "--K", "1", "--grid", "16"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pass"], true);
    // the first central row sits next to the tangency of F(1) with the
    // tripod, where the chart map is not Lipschitz
    let o = run(&["verify", "lipschitz", "--in", &f("regular.json"), "--K", "2", "--grid", "16"]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["pass"], false);
    assert!(v["edge_max"].as_f64().unwrap() >= v["k"].as_f64().unwrap() * (1.0 - 1e-4));
    assert_eq!(code(&run(&["verify", "lipschitz", "--in", &f("regular.json"), "--K", "2", "--grid", "8"])), 2);
}

#[test]
fn surface_commands() {
    let o = run(&["surface", "validate", "--in", &f("pants_regular.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["valid"], true);

    let o = run(&["surface", "validate", "--in", &f("mismatched.json")]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["violations"][0]["kind"], "length_mismatch");
    assert!((v["violations"][0]["mismatch"].as_f64().unwrap() - 0.1).abs() < 1e-12);
    assert_eq!(code(&run(&["surface", "boundaries", "--in", &f("mismatched.json")])), 2);

    let o = run(&["surface", "boundaries", "--in", &f("pants_regular.json")]);
    golden("boundaries_pants.json", &stdout(&o));
    let v = json(&o);
    assert_eq!(v["cycles"].as_array().unwrap().len(), 3);

    let v = json(&run(&["surface", "boundaries", "--in", &f("torus.json")]));
    assert_eq!(v["cycles"].as_array().unwrap().len(), 1);

    let o = run(&["surface", "certificate", "--in", &f("pants_regular.json"), "--K1", "1", "--K2", "2"]);
    assert_eq!(code(&o), 0);
    golden("certificate_pants.json", &stdout(&o));
    let v = json(&o);
    assert!((v["lower_bound"].as_f64().unwrap() - 0.58374).abs() < 1e-5);
    assert!((v["upper_bound"].as_f64().unwrap() - 0.58374).abs() < 1e-5);

    let o = run(&["surface", "k", "--in", &f("pants_uneven.json"), "--K", "2"]);
    let v = json(&o);
    assert!((v["k"].as_f64().unwrap() - 2.0501).abs() < 1e-4);
    assert_eq!(v["argmax"], serde_json::json!(["h0", 0]));

    let o = run(&["surface", "deform", "--in", &f("pants_uneven.json"), "--K", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let again = run_with(&["surface", "validate"], Some(&v["surface"].to_string()), None);
    assert_eq!(code(&again), 0);

    let o = run(&["surface", "luo", "--in", &f("pants_regular.json")]);
    golden("luo_pants.json", &stdout(&o));
    for c in json(&o)["boundary_cycles"].as_array().unwrap() {
        let (sum, len) = (c["sum"].as_f64().unwrap(), c["boundary_length"].as_f64().unwrap());
        assert!((2.0 * sum - len).abs() < 1e-10);
    }
    let o = run(&["surface", "luo", "--in", &f("pants_regular.json"), "--edge", "h9,0"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "unknown_edge");
    let o = run(&["surface", "luo", "--in", &f("pants_regular.json"), "--cycle", "h0,1;h0,2"]);
    assert!((json(&o)["sum"].as_f64().unwrap() - 0.827136901638557).abs() < 1e-12);
}

#[test]
fn emitted_json_round_trips() {
    let cases: Vec<Vec<String>> = vec![
        vec!["hexagon".into(), "solve".into(), "--in".into(), f("uneven.json")],
        vec!["deform".into(), "--in".into(), f("uneven.json"), "--K".into(), "3".into()],
        vec!["surface".into(), "boundaries".into(), "--in".into(), f("pants_uneven.json")],
        vec!["surface".into(), "certificate".into(), "--in".into(), f("pants_uneven.json"), "--K1".into(), "1".into(), "--K2".into(), "3".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = stdout(&run(&args));
        let v: Value = serde_json::from_str(&text).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again);
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hex.json");
    let o = run(&["hexagon", "solve", "--in", &f("regular.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, stdout(&run(&["hexagon", "solve", "--in", &f("regular.json")])));
}

#[test]
fn render_regular() {
    let args = ["render", "--in", &f("regular.json"), "--show", "tripod,central_region"];
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    golden("regular.svg", &svg);
    assert_eq!(svg.matches(r#"class="tripod""#).count(), 3);
    assert_eq!(svg.matches(r#"class="side "#).count(), 6);
    assert_eq!(stdout(&run_with(&args, None, Some("1"))), svg);
    assert_eq!(stdout(&run_with(&args, None, Some("4"))), svg);
}

#[test]
fn render_foliations_and_overlay() {
    let args = [
        "render",
        "--in",
        &f("uneven.json"),
        "--show",
        "foliation_F,foliation_G,tripod,central_region,labels",
        "--leaves-f",
        "5",
        "--leaves-g",
        "4",
        "--overlay-K",
        "2",
    ];
    let svg = stdout(&run(&args));
    golden("uneven_full.svg", &svg);
    assert_eq!(svg.matches(r#"class="leaf-f""#).count(), 15);
    assert_eq!(svg.matches(r#"class="leaf-g""#).count(), 12);
    assert_eq!(svg.matches(r#"class="overlay""#).count(), 6);
    assert_eq!(svg, stdout(&run(&args)));
}

#[test]
fn render_type_three() {
    let o = run(&["render", "--in", &f("type3.json"), "--spec", &f("render_spec.json")]);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    golden("type3.svg", &svg);
    assert!(svg.contains(r#"class="central outside""#));
    assert!(svg.contains(r#"<path class="hexagon""#));
    assert!(svg.starts_with(r#"<svg xmlns="http://www.w3.org/2000/svg" width="300""#));
}
