use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidlike")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn entries(v: &Value) -> Vec<Vec<String>> {
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|e| e.as_str().unwrap().to_string()).collect())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn s5_rmatrix_is_the_frozen_diagonal() {
    let out = run(&["rmatrix", "--family", "S5", "--params", "a=2,b=3,c=5,d=7", "--x", "1/11", "--y", "1/13"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 4);
    let e = entries(&v);
    let diag: Vec<&str> = (0..4).map(|i| e[i][i].as_str()).collect();
    assert_eq!(diag, ["121/117", "55/52", "44/39", "33/26"]);
    assert!((0..4).all(|i| (0..4).all(|j| i == j || e[i][j] == "0")));
}

#[test]
fn closed_form_flag_cross_checks() {
    let five = "a=2,b=3,c=5,d=7,e=1/2";
    let four = "a=2,b=3,c=5,d=7";
    for (family, params) in
        [("S1", five), ("S2", five), ("S3", four), ("S4", four), ("S5", four), ("S6", four), ("S7", "a=2,b=3,c=5")]
    {
        let out =
            run(&["rmatrix", "--family", family, "--params", params, "--x", "1/11", "--y", "-1/13", "--closed-form"]);
        assert_eq!(out.status.code(), Some(0), "{family}: {}", String::from_utf8_lossy(&out.stderr));
        let plain = run(&["rmatrix", "--family", family, "--params", params, "--x", "1/11", "--y", "-1/13"]);
        assert_eq!(out.stdout, plain.stdout, "{family}");
    }
}

#[test]
fn equal_spectral_values_give_identity() {
    let out = run(&["rmatrix", "--family", "S5", "--params", "a=2,b=5,c=5,d=7", "--x", "1/3", "--y", "1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let e = entries(&json(&out));
    for (i, row) in e.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(x, if i == j { "1" } else { "0" });
        }
    }
}

#[test]
fn poles_exit_2_naming_the_factor() {
    let out = run(&["rmatrix", "--family", "S5", "--params", "a=3,b=2,c=5,d=7", "--x", "1/3", "--y", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("xa-1"));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_exit_codes() {
    let ok =
        run(&["verify", "--family", "S4", "--params", "a=1,b=2,c=3,d=4", "--checks", "relation,ybe", "--trials", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    let report = json(&ok);
    assert_eq!(report["total"], 10);
    assert_eq!(report["failed"], 0);

    let s3 = run(&["verify", "--family", "S3", "--params", "a=1,b=2,c=0,d=3"]);
    assert_eq!(s3.status.code(), Some(2));

    let missing = run(&["rmatrix", "--family", "S1", "--params", "a=1", "--x", "1", "--y", "2"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown = run(&["verify", "--family", "S1", "--params", "a=1,b=1,c=1,zz=1"]);
    assert_eq!(unknown.status.code(), Some(2));

    let bad_check = run(&["verify", "--family", "S1", "--checks", "nonsense"]);
    assert_eq!(bad_check.status.code(), Some(2));

    let no_source = run(&["verify"]);
    assert_eq!(no_source.status.code(), Some(2));
}

#[test]
fn verify_draws_tasep_rates_from_the_seed() {
    let args = [
        "verify",
        "--family",
        "TASEP_S",
        "--m",
        "3",
        "--checks",
        "relation,product,singular",
        "--trials",
        "2",
        "--seed",
        "9",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, run(&args).stdout);
    let report = json(&a);
    assert!(report["results"][0]["params"]["mu_2_3"].is_string());
}

#[test]
fn product_with_violated_condition_fails() {
    let args = [
        "verify",
        "--family",
        "TASEP_S",
        "--params",
        "rho_1=2,mu_1_2=3",
        "--checks",
        "product",
        "--partner-params",
        "zeta_2=4,nu_1_2=5",
        "--trials",
        "10",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL product"));

    let good = run(&[
        "verify",
        "--family",
        "TASEP_S",
        "--params",
        "rho_1=2,mu_1_2=3",
        "--checks",
        "product",
        "--partner-params",
        "zeta_2=4,nu_1_2=6",
    ]);
    assert_eq!(good.status.code(), Some(0));
}

#[test]
fn custom_matrix_and_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let generic = write(
        dir.path(),
        "generic.json",
        r#"{"dim": 4, "entries": [["1","2","3","4"],["5","6","7","8"],["9","10","11","12"],["13","14","15","16"]]}"#,
    );
    let out = run(&["verify", "--matrix", &generic, "--checks", "relation,ybe", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("residual"), "{stderr}");
    assert!(json(&out)["results"][0]["witness"]["residual"].is_string());

    // Export, then import the same generator as a custom matrix.
    let exported = run(&["export", "--family", "S6", "--params", "a=1,b=2/3,c=-1,d=4"]);
    assert_eq!(exported.status.code(), Some(0));
    let path = write(dir.path(), "s6.json", &String::from_utf8_lossy(&exported.stdout));
    let again = run(&["verify", "--matrix", &path, "--checks", "relation,ybe,unitarity,a_operator", "--trials", "3"]);
    assert_eq!(again.status.code(), Some(0), "{}", String::from_utf8_lossy(&again.stderr));

    let spec =
        write(dir.path(), "spec.json", r#"{"family": "S4", "params": {"a": "1", "b": "2", "c": "3", "d": "4"}}"#);
    assert_eq!(run(&["verify", "--spec", &spec, "--checks", "relation,closed_form"]).status.code(), Some(0));

    let malformed = write(dir.path(), "bad.json", r#"{"dim": 2, "entries": [["1","x"],["0","1"]]}"#);
    assert_eq!(run(&["export", "--matrix", &malformed]).status.code(), Some(2));
    assert_eq!(run(&["export", "--matrix", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn tau_matrix_import() {
    let dir = tempfile::tempdir().unwrap();
    let t = run(&[
        "export",
        "--family",
        "TASEP_T",
        "--m",
        "3",
        "--params",
        "zeta_2=4,zeta_3=-1,nu_1_2=6,nu_1_3=1/2,nu_2_3=3",
    ]);
    assert_eq!(t.status.code(), Some(0));
    let path = write(dir.path(), "t.json", &String::from_utf8_lossy(&t.stdout));
    assert_eq!(run(&["verify", "--matrix", &path, "--relation", "tau", "--checks", "relation"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--matrix", &path, "--checks", "relation"]).status.code(), Some(1));
}

#[test]
fn chain_outputs_carry_metadata() {
    let h = run(&["hamiltonian", "--family", "S4", "--params", "a=0,b=1,c=3,d=0", "--n", "3", "--z", "1/2"]);
    assert_eq!(h.status.code(), Some(0));
    let v = json(&h);
    assert_eq!(
        (v["dim"].clone(), v["n"].clone(), v["m"].clone(), v["z"].clone()),
        (8.into(), 3.into(), 2.into(), "1/2".into())
    );
    assert!(v.get("x").is_none());

    // t(z|z) is the cyclic shift; for two sites that is the swap.
    let t = run(&["transfer", "--family", "S4", "--params", "a=0,b=1,c=3,d=0", "--n", "2", "--z", "2/5", "--x", "2/5"]);
    let v = json(&t);
    assert_eq!(v["x"], "2/5");
    let e = entries(&v);
    let swap = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]];
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(e[i][j], swap[i][j].to_string());
        }
    }

    assert_eq!(
        run(&["hamiltonian", "--family", "S4", "--params", "a=0,b=1,c=3,d=0", "--n", "1", "--z", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn scan_single_family() {
    let out = run(&["scan", "--families", "S1", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["families"].as_array().unwrap().len(), 1);
    assert_eq!(v["failed"], 0);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["family"] == "S1" && r["trial"] == 0));
    assert_eq!(run(&["scan", "--max-n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--families", "S9"]).status.code(), Some(2));
}
