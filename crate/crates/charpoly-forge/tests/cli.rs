use std::fs;
use std::path::PathBuf;

use charpoly_forge::json;
use charpoly_forge::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("charpoly-forge").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn error_code(stdout: &str) -> Option<String> {
    json::parse(stdout)
        .ok()?
        .get("error")?
        .as_str()
        .map(str::to_string)
}

#[test]
fn fixtures_are_byte_stable() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(
            json::render(&json::parse(&text).unwrap()),
            text,
            "{}",
            path.display()
        );
    }
}

#[test]
fn fixtures_round_trip_through_the_core_types() {
    for name in ["q_matrix.json", "gf5_matrix.json"] {
        let v = json::parse(&fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(
            json::matrix_to_json(&json::matrix_from_json(&v).unwrap()),
            v
        );
    }
    for name in ["q_target.json", "gf5_target.json", "gf2_p22.json"] {
        let v = json::parse(&fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(json::poly_to_json(&json::poly_from_json(&v).unwrap()), v);
    }
}

#[test]
fn forge_reproduces_the_frozen_certificate() {
    let (code, out, _) = cli(&[
        "forge",
        "--matrix",
        &fixture("q_matrix.json"),
        "--k",
        "1",
        "--target",
        &fixture("q_target.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(fixture("q_cert.json")).unwrap());
}

#[test]
fn frozen_certificate_verifies() {
    let (code, out, _) = cli(&[
        "verify",
        "--matrix",
        &fixture("q_matrix.json"),
        "--nilpotent",
        &fixture("q_cert.json"),
    ]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json::parse(&out).unwrap()["verified"], Value::Bool(true));
}

#[test]
fn canon_matches_the_hand_computed_charpoly() {
    // diag(0, C(x^3 + 2x^2 - 3x + 1/2)) has charpoly x^4 + 2x^3 - 3x^2 + x/2
    let (code, out, _) = cli(&["canon", "--matrix", &fixture("q_matrix.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(fixture("q_canon.json")).unwrap());
    let v = json::parse(&out).unwrap();
    assert_eq!(
        v["charpoly"]["coeffs"],
        serde_json::json!(["0", "1/2", "-3", "2", "1"])
    );
    assert_eq!(v["nonderogatory"], Value::Bool(true));
    assert_eq!(v["invertible"], Value::Bool(false));
}

#[test]
fn trace_mismatch_is_a_domain_error() {
    let (code, out, err) = cli(&[
        "forge",
        "--matrix",
        &fixture("gf5_matrix.json"),
        "--k",
        "1",
        "--target",
        &fixture("gf5_bad_trace.json"),
    ]);
    assert_eq!(code, 2);
    assert_eq!(error_code(&out).as_deref(), Some("TraceMismatch"));
    assert!(!err.is_empty());
}

#[test]
fn zero_perturbation_verifies_against_own_charpoly() {
    let dir = tempfile::tempdir().unwrap();
    let canon = json::parse(&cli(&["canon", "--matrix", &fixture("gf5_matrix.json")]).1).unwrap();
    let q = dir.path().join("q.json");
    fs::write(&q, json::render(&canon["charpoly"])).unwrap();
    let zero = dir.path().join("zero.json");
    let spec = charpoly_forge_core::FieldSpec::prime_field(5).unwrap();
    fs::write(
        &zero,
        json::render(&json::matrix_to_json(&charpoly_forge_core::Matrix::zeros(
            spec, 3, 3,
        ))),
    )
    .unwrap();
    let (code, ..) = cli(&[
        "verify",
        "--matrix",
        &fixture("gf5_matrix.json"),
        "--nilpotent",
        zero.to_str().unwrap(),
        "--target",
        q.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&[
        "verify",
        "--matrix",
        &fixture("gf5_matrix.json"),
        "--nilpotent",
        zero.to_str().unwrap(),
        "--target",
        &fixture("gf5_target.json"),
    ]);
    assert_eq!(code, 2);
    assert_eq!(error_code(&out).as_deref(), Some("VerificationFailed"));
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let (code, out, _) = cli(&[
        "forge",
        "--matrix",
        &fixture("gf5_matrix.json"),
        "--k",
        "1",
        "--target",
        &fixture("gf5_target.json"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let cert = json::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["N", "q", "transform", "nonderogatory_result"] {
        assert!(json::has_key(&cert, key), "{key}");
    }
}

#[test]
fn boundary_quartic_outcomes() {
    let (code, out, _) = cli(&["boundary-quartic", "--field", "Q"]);
    assert_eq!(code, 0);
    let v = json::parse(&out).unwrap();
    assert_eq!(v["result"], "NoSolution");
    assert_eq!(v["certificate_verified"], Value::Bool(true));
    let (code, out, _) = cli(&["boundary-quartic", "--field", "GF:2"]);
    assert_eq!(code, 0);
    let v = json::parse(&out).unwrap();
    assert_eq!(v["result"], "Witness");
    assert_eq!(v["X"]["entries"], serde_json::json!([[1, 0], [1, 1]]));
}

#[test]
fn boundary_search_exhausts_an_unreachable_target() {
    let args = [
        "boundary-search",
        "--field",
        "GF:2",
        "--k",
        "2",
        "--p22",
        &fixture("gf2_p22.json"),
        "--target",
        &fixture("gf2_unreachable.json"),
    ];
    for threads in ["1", "4"] {
        let mut with_threads = args.to_vec();
        with_threads.extend(["--threads", threads]);
        let (code, out, _) = cli(&with_threads);
        assert_eq!(code, 0);
        assert_eq!(
            json::parse(&out).unwrap(),
            serde_json::json!({"result": "Exhausted", "candidates": 16})
        );
    }
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(cli(&["frobnicate"]).0, 1);
    assert_eq!(cli(&["forge", "--matrix", "x.json"]).0, 1);
    assert_eq!(cli(&["canon", "--matrix", "/nonexistent/a.json"]).0, 1);
    assert_eq!(cli(&["boundary-quartic", "--field", "GF:x"]).0, 1);
    assert_eq!(
        cli(&["canon", "--matrix", &fixture("gf5_target.json")]).0,
        1
    );
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("forge"));
    assert_eq!(cli(&["--version"]).0, 0);
}
