use std::io::Write;
use std::process::{Command, Stdio};

use num_complex::Complex64;
use serde_json::Value;

use pentacomplex::canonical::{from_canonical, to_canonical, CanonicalForm};
use pentacomplex::cli;
use pentacomplex::contour::{residue_formula, Path, DEFAULT_SAMPLES_PER_SEGMENT};
use pentacomplex::elementary::{exp, log, pow_real};
use pentacomplex::format::to_json17;
use pentacomplex::functions::Builtin;
use pentacomplex::geometry::polar_form;
use pentacomplex::polyfactor::{expand, factor, Factor, PentaPolynomial};
use pentacomplex::verify::residue_loop;
use pentacomplex::PentaComplex;

const BIN: &str = env!("CARGO_BIN_EXE_pentacomplex");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut argv = vec!["pentacomplex"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn parse<T: serde::de::DeserializeOwned>(r: &Run) -> T {
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

fn ulps(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if a.signum() != b.signum() {
        return u64::MAX;
    }
    a.to_bits().abs_diff(b.to_bits())
}

fn assert_within_one_ulp(a: &PentaComplex, b: &PentaComplex) {
    for (x, y) in a.components().iter().zip(b.components()) {
        assert!(ulps(*x, y) <= 1, "{a:?} vs {b:?}");
    }
}

fn sample() -> PentaComplex {
    PentaComplex::new([1.3, -0.2, 0.45, 0.1, -0.7]).unwrap()
}

#[test]
fn multiplies_basis_elements() {
    let u: PentaComplex = parse(&run(&["mul", "[0,1,0,0,0]", "[0,0,0,0,1]"]));
    assert_eq!(u, PentaComplex::ONE);
    let u: PentaComplex = parse(&run(&["mul", r#"{"a":[0,0,1,0,0],"b":[0,0,0,1,0]}"#]));
    assert_eq!(u, PentaComplex::ONE);
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let r = run(&[flag]);
        assert_eq!(r.code, 0);
        assert!(r.stdout.contains("pentacomplex"));
    }
    assert_eq!(run(&["factor", "--help"]).code, 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["exp", "[1,2,3]"]).code, 1);
    assert_eq!(run(&["exp", "not json"]).code, 1);
    assert_eq!(run(&["trig", "tan", "[1,0,0,0,0]"]).code, 1);
    assert_eq!(run(&["check-analytic", "gamma", "[1,0,0,0,0]"]).code, 1);
    assert_eq!(run(&["--tol", "-1", "inv", "[1,0,0,0,0]"]).code, 1);
    assert_eq!(run(&["exp", "-i", "/nonexistent/input.json"]).code, 1);
}

#[test]
fn schema_errors_show_the_expected_shape() {
    let r = run(&["pow", r#"{"u":[1,0,0,0,0]}"#]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("expected JSON"), "{}", r.stderr);
    assert!(r.stderr.contains("\"m\""), "{}", r.stderr);
}

#[test]
fn domain_errors_exit_two() {
    let eplus = "[0.2,0.2,0.2,0.2,0.2]";
    assert_eq!(run(&["inv", eplus]).code, 2);
    assert_eq!(run(&["log", "[-1,0,0,0,0]"]).code, 2);
    assert_eq!(run(&["exp", "[800,0,0,0,0]"]).code, 2);
    assert_eq!(run(&["pow", "[-1,0.1,0,0,0]", "0.5"]).code, 2);
    let r = run(&[
        "factor",
        r#"{"coeffs":[[0.2,0.2,0.2,0.2,0.2]],"leading":[0.2,0.2,0.2,0.2,0.2]}"#,
    ]);
    assert_eq!(r.code, 2, "{}", r.stderr);
}

#[test]
fn reads_input_from_file_and_stdin() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{}", to_json17(&sample()).unwrap()).unwrap();
    let path = file.path().to_str().unwrap();
    let from_file: PentaComplex = parse(&run(&["exp", "-i", path]));
    let from_stdin: PentaComplex = parse(&run_with_stdin(&["exp", "-i", "-"], &to_json17(&sample()).unwrap()));
    assert_eq!(from_file, exp(&sample()).unwrap());
    assert_eq!(from_file, from_stdin);
    assert_eq!(run(&["exp", "-i", path, "[1,0,0,0,0]"]).code, 1);
}

#[test]
fn writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let r = run(&["-o", out.to_str().unwrap(), "exp", "[0,0,0,0,0]"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let u: PentaComplex = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(u, PentaComplex::ONE);
}

/// Invertible, with both plane radii near `1e-10`.
fn nearly_singular() -> String {
    let c = CanonicalForm::from_parts(1.0, Complex64::new(1e-10, 0.0), Complex64::new(0.0, 1e-10));
    to_json17(&from_canonical(&c)).unwrap()
}

fn binary(args: &[&str], tol_env: Option<&str>) -> i32 {
    let mut cmd = Command::new(BIN);
    cmd.args(args)
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .env_remove("PENTA_TOL");
    if let Some(t) = tol_env {
        cmd.env("PENTA_TOL", t);
    }
    cmd.status().unwrap().code().unwrap()
}

#[test]
fn tolerance_flag_and_environment() {
    let u = nearly_singular();
    assert_eq!(binary(&["inv", &u], None), 0);
    assert_eq!(binary(&["--tol", "1e-6", "inv", &u], None), 2);
    assert_eq!(binary(&["inv", &u], Some("1e-6")), 2);
    assert_eq!(binary(&["--tol", "1e-14", "inv", &u], Some("1e-6")), 0);
}

#[test]
fn processes_batches() {
    let inputs = [sample(), PentaComplex::ONE, sample().scale(-0.5)];
    let doc = to_json17(&inputs).unwrap();
    let out: Vec<PentaComplex> = parse(&run(&["exp", &doc]));
    assert_eq!(out.len(), 3);
    for (u, e) in inputs.iter().zip(&out) {
        assert_eq!(*e, exp(u).unwrap());
    }
    let pows: Vec<PentaComplex> = parse(&run(&["pow", r#"[{"u":[2,0,0,0,0],"m":3},{"u":[1,1,0,0,0],"m":2}]"#]));
    let two = PentaComplex::real(2.0).unwrap();
    let h = PentaComplex::new([1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
    assert_within_one_ulp(&pows[0], &pow_real(&two, 3.0).unwrap());
    assert_within_one_ulp(&pows[1], &pow_real(&h, 2.0).unwrap());
    assert!(pows[0].max_abs_diff(&PentaComplex::real(8.0).unwrap()) <= 1e-14);
    assert!(pows[1].max_abs_diff(&(h * h)) <= 1e-14);
}

#[test]
fn text_mode_prints_readable_numbers() {
    let r = run(&["--text", "mul", "[0,1,0,0,0]", "[0,1,0,0,0]"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), PentaComplex::basis(2).to_string());
    assert!(serde_json::from_str::<Value>(&r.stdout).is_err());
}

#[test]
fn outputs_round_trip_through_the_library() {
    let u = sample();
    let inline = to_json17(&u).unwrap();

    let e: PentaComplex = parse(&run(&["exp", &inline]));
    assert_within_one_ulp(&e, &exp(&u).unwrap());

    let l: PentaComplex = parse(&run(&["log", &to_json17(&e).unwrap()]));
    assert_within_one_ulp(&l, &log(&e).unwrap());
    assert!((exp(&l).unwrap() - e).norm() <= 1e-12 * e.norm());

    let p: PentaComplex = parse(&run(&["pow", &inline, "2.5"]));
    assert_within_one_ulp(&p, &pow_real(&u, 2.5).unwrap());

    let i: PentaComplex = parse(&run(&["inv", &inline]));
    assert_within_one_ulp(&i, &u.inverse().unwrap());

    let c: Value = parse(&run(&["canonical", &inline]));
    let canonical: CanonicalForm = serde_json::from_value(c["canonical"].clone()).unwrap();
    assert_eq!(canonical, to_canonical(&u));

    let polar: Value = parse(&run(&["polar", &inline]));
    let d = polar["d"].as_f64().unwrap();
    assert!(ulps(d, polar_form(&u).d) <= 1, "{d} vs {}", polar_form(&u).d);
    assert!(polar["exponential_form"].is_object());
}

#[test]
fn undefined_angles_are_null() {
    let polar: Value = parse(&run(&["polar", "[0.2,0.2,0.2,0.2,0.2]"]));
    assert_eq!(polar["vplus"].as_f64().unwrap(), 1.0);
    for angle in ["phi1", "phi2", "psi1"] {
        assert!(polar[angle].is_null(), "{angle}: {}", polar[angle]);
    }
    assert_eq!(polar["undefined"].as_array().unwrap().len(), 3);
    assert!(polar["exponential_form"].is_null());
}

#[test]
fn analytic_check_separates_builtins() {
    let exp_report: Value = parse(&run(&["check-analytic", "exp", "[0.3,-0.2,0.1,0.4,-0.5]"]));
    assert_eq!(exp_report["analytic"], true);
    assert_eq!(exp_report["first_order"]["groups"].as_array().unwrap().len(), 5);
    let projection: Value = parse(&run(&["check-analytic", "projection", "[0.3,-0.2,0.1,0.4,-0.5]"]));
    assert_eq!(projection["analytic"], false);
}

#[test]
fn integrates_around_a_pole_from_a_path_file() {
    let u0 = PentaComplex::new([0.2, -0.1, 0.3, 0.05, -0.25]).unwrap();
    let path = residue_loop(&u0, [1, 0], 256, 0.7).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{}", to_json17(&path).unwrap()).unwrap();
    let args = [
        "integrate",
        "-i",
        file.path().to_str().unwrap(),
        "--function",
        "exp",
        "--pole",
        &to_json17(&u0).unwrap(),
    ];
    let report: Value = parse(&run(&args));
    assert_eq!(report["winding"], serde_json::json!([1, 0]));
    assert!(report["error"].as_f64().unwrap() <= 1e-5);

    let reread: Path = serde_json::from_str(&to_json17(&path).unwrap()).unwrap();
    let expected = residue_formula(|x| Builtin::Exp.eval(x), &reread, &u0, DEFAULT_SAMPLES_PER_SEGMENT).unwrap();
    let lhs: PentaComplex = serde_json::from_value(report["lhs"].clone()).unwrap();
    assert_within_one_ulp(&lhs, &expected.lhs);

    let open = r#"{"vertices":[[0,0,0,0,0],[1,1,0,0,0]],"closed":false}"#;
    let r = run_with_stdin(&["integrate", "-i", "-"], open);
    let integral: PentaComplex = serde_json::from_value(parse::<Value>(&r)["integral"].clone()).unwrap();
    assert_within_one_ulp(&integral, &PentaComplex::new([1.0, 1.0, 0.0, 0.0, 0.0]).unwrap());

    let degenerate = r#"{"vertices":[[0,0,0,0,0]],"closed":false}"#;
    assert_eq!(run_with_stdin(&["integrate", "-i", "-"], degenerate).code, 1);
}

#[test]
fn factor_output_expands_to_the_input() {
    let doc = r#"{"coeffs":[[0.5,-1,0.25,0,0.3],[-2,0.1,0.4,-0.6,1]]}"#;
    let out: Value = parse(&run(&["factor", doc]));
    let factors: Vec<Factor> = serde_json::from_value(out["factors"].clone()).unwrap();
    let p: PentaPolynomial = serde_json::from_str(doc).unwrap();
    let library = factor(&p).unwrap();
    assert_eq!(factors, library.factors);
    assert!(expand(&factors).unwrap().relative_distance(&p) <= 1e-8);
}

#[test]
fn cosexp_table_respects_its_range() {
    let r = run(&["cosexp-table", "--from", "0", "--to", "1", "--step", "0.25"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(
        lines[1].starts_with("0.0000000000000000e0,1.0000000000000000e0"),
        "{}",
        lines[1]
    );
    assert_eq!(run(&["cosexp-table", "--step", "0"]).code, 1);
}
