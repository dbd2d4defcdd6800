use std::process::{Command, Output};

fn creal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_creal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn classify_companion_over_f4() {
    let o = creal(&["classify", "--field", "F4", "[[0,1];[1,1]]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c-real: true"));
}

#[test]
fn form_on_non_c_real_input_exits_one() {
    let o = creal(&[
        "form",
        "--field",
        "F9",
        "--format",
        "json",
        "[[1+1*i,0];[0,1+1*i]]",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["c_real"], false);
    assert!(v["H"].is_null());
    assert_eq!(v["not_c_real_witness"], "(x + (2+2*i))^1 x2");
}

#[test]
fn census_gl2_f4() {
    let o = creal(&["census", "--field", "F4", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["total_elements"], 180);
    assert_eq!(v["gl_order_formula"], 180);
    assert_eq!(v["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn census_sequential_matches_default() {
    let a = creal(&["census", "--field", "F4", "--n", "2", "--format", "json"]);
    let b = creal(&[
        "census",
        "--field",
        "F4",
        "--n",
        "2",
        "--format",
        "json",
        "--sequential",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn certificates_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("F4", "witness", "[[0,1];[1,1]]"),
        ("F4", "form", "[[1,0,0];[1,1,0];[0,1,1]]"),
        ("F9", "witness", "[[1+i,0];[0,2+2*i]]"),
        ("F9", "form", "[[1+i,0];[0,2+2*i]]"),
        ("F9", "classify", "[[1+i,0];[0,1+i]]"),
        ("Qi", "witness", "[[1+i,0];[0,1/2+1/2*i]]"),
    ];
    for (i, (field, cmd, m)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("cert{i}.json"));
        let p = path.to_str().unwrap();
        let o = creal(&[cmd, "--field", field, "--format", "json", "--out", p, m]);
        assert!(matches!(o.status.code(), Some(0 | 1)), "{cmd} {m}");
        let v = creal(&["verify", "--field", field, "--cert", p, m]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let o = creal(&[
        "form",
        "--field",
        "F4",
        "--format",
        "json",
        "--out",
        p,
        "[[0,1];[1,1]]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["H"] = serde_json::json!([["1", "0"], ["0", "1"]]);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let check = creal(&["verify", "--field", "F4", "--cert", p]);
    assert_eq!(check.status.code(), Some(1));
    assert!(stdout(&check).contains("INVALID"));
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "witness",
        "--field",
        "F9",
        "--format",
        "json",
        "--seed",
        "3",
        "[[1,1];[0,1]]",
    ];
    assert_eq!(creal(&args).stdout, creal(&args).stdout);
}

#[test]
fn matrix_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    std::fs::write(&path, "[[0,1];[1,1]]\n").unwrap();
    let o = creal(&["classify", "--field", "F4", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        creal(&["classify", "--field", "F4", "[[0,1];[1]]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        creal(&["classify", "--field", "F4", "[[1,1];[1,1]]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        creal(&["classify", "--field", "F6", "[[1]]"]).status.code(),
        Some(2)
    );
}

#[test]
fn cap_exceeded_exits_three() {
    let o = creal(&["census", "--field", "F9", "--n", "2", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn claimcheck_flags_identity_of_size_one() {
    let o = creal(&["claimcheck", "--field", "F2", "[[1]]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("DISAGREE"));
}
