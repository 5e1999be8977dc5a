use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use auxwave::wave::reproduction::{figure1_solution, figure2a_solution};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_auxwave"));
    c.env_remove("AUXWAVE_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

fn validate(schema: &str, doc: &Value) {
    let schema = read_json(&repo().join("schemas").join(schema));
    let v = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["catalog", "list"]), 0);
    assert_eq!(code(&["catalog", "show", "21"]), 2);
    assert_eq!(code(&["catalog", "frobnicate"]), 2);
    assert_eq!(code(&["verify-aux", "--case", "4", "--params", "A=1,B=-1,C1=1", "--interval", "-5", "5"]), 0);
    assert_eq!(code(&["verify-aux", "--case", "1", "--tol", "1e-300"]), 1);
    assert_eq!(code(&["verify-aux", "--case", "4", "--params", "A=one"]), 2);
    assert_eq!(code(&["verify-aux", "--case", "4", "--tol", "-1"]), 2);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    // xi-dependent coefficients cannot be solved as constants
    assert_eq!(code(&["pipeline", "--aux-case", "1", "--out", out]), 3);
    assert!(dir.path().join("system.txt").exists());
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn outputs_match_their_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let p = |s: &str| d.join(s).to_str().unwrap().to_string();

    assert_eq!(code(&["verify-aux", "--case", "11", "--out", &p("va.json")]), 0);
    validate("verify_aux.schema.json", &read_json(&d.join("va.json")));
    assert_eq!(read_json(&d.join("va.json"))["complex_case"], Value::Bool(true));

    assert_eq!(code(&["catalog", "export", "--out", &p("catalog.json")]), 0);
    validate("catalog.schema.json", &read_json(&d.join("catalog.json")));

    assert_eq!(code(&["classical-sweep", "--out", &p("sweep.json")]), 0);
    let sweep = read_json(&d.join("sweep.json"));
    validate("classical_sweep.schema.json", &sweep);
    assert_eq!(sweep.as_array().unwrap().len(), 16);

    assert_eq!(code(&["pipeline", "--aux-case", "4", "--out", &p("c4")]), 0);
    validate("pipeline.schema.json", &read_json(&d.join("c4/pipeline.json")));
    validate("system.schema.json", &read_json(&d.join("c4/system.json")));

    assert_eq!(code(&["pipeline", "--aux-case", "4", "--strategy", "export", "--out", &p("ex")]), 0);
    validate("pipeline.schema.json", &read_json(&d.join("ex/pipeline.json")));

    let args = ["pipeline", "--aux-case", "1", "--ode", "paper-eq8", "--strategy", "pointwise", "--out", &p("pw")];
    assert_eq!(code(&args), 0);
    validate("pipeline.schema.json", &read_json(&d.join("pw/pipeline.json")));
    validate("cross_check.schema.json", &read_json(&d.join("pw/cross_check.json")));
}

#[test]
fn reruns_are_byte_identical() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = d.path().to_str().unwrap();
        assert_eq!(code(&["pipeline", "--aux-case", "4", "--params", "A=0.5,B=0.5", "--out", out]), 0);
    }
    for f in ["pipeline.json", "system.json", "system.txt"] {
        let a = std::fs::read(dirs[0].path().join(f)).unwrap();
        let b = std::fs::read(dirs[1].path().join(f)).unwrap();
        assert!(a == b, "{f} differs between runs");
    }
    let a = run(&["verify-aux", "--case", "17"]).stdout;
    let b = run(&["verify-aux", "--case", "17"]).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn tolerance_comes_from_the_environment_unless_given() {
    let strict = |extra: &[&str]| {
        let mut c = bin();
        c.env("AUXWAVE_TOL", "1e-300").args(["verify-aux", "--case", "1"]).args(extra);
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(strict(&[]), 1);
    assert_eq!(strict(&["--tol", "1e-6"]), 0);
    let mut c = bin();
    c.env("AUXWAVE_TOL", "tight").args(["verify-aux", "--case", "1"]);
    assert_eq!(c.output().unwrap().status.code(), Some(2));
}

#[test]
fn recipes_hold_the_reported_solutions() {
    let recipes = repo().join("docs/recipes");
    let f1 = std::fs::read_to_string(recipes.join("figure1.expr")).unwrap();
    let f2 = std::fs::read_to_string(recipes.join("figure2a.expr")).unwrap();
    assert_eq!(f1.trim_end(), figure1_solution().u.to_string());
    assert_eq!(f2.trim_end(), figure2a_solution().u.to_string());
}

#[test]
fn sample_from_recipe_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f1.csv");
    let cfg = repo().join("docs/recipes/figure1.cfg");
    let o = run(&["sample", "--config", cfg.to_str().unwrap(), "--npoints", "21", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("xi,"), "{header}");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 21);
    for r in rows {
        for v in r.split(',') {
            assert!(v.parse::<f64>().unwrap().is_finite(), "{r}");
        }
    }
}

#[test]
fn sample_needs_an_input() {
    assert_eq!(code(&["sample"]), 2);
}
