use std::path::PathBuf;
use std::process::{Command, Output};

fn ymbv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ymbv")).args(args).env("YM_THREADS", "2").output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ymbv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn unknown_flags_and_bad_input_exit_two() {
    assert_eq!(ymbv(&["solve-h", "--bogus"]).status.code(), Some(2));
    assert_eq!(ymbv(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(ymbv(&[]).status.code(), Some(2));
    assert_eq!(ymbv(&["homology", "--momentum", "1,2,3"]).status.code(), Some(2));
    assert_eq!(ymbv(&["homology", "--momentum", "0,0,0,0"]).status.code(), Some(2));
    assert_eq!(ymbv(&["build-theta", "--max-arity", "7"]).status.code(), Some(2));
    assert_eq!(ymbv(&["vanishing", "--case", "1", "--n", "1", "--ell-range", "-1..-3"]).status.code(), Some(2));
    let missing = scratch("missing.json");
    assert_eq!(ymbv(&["amplitude", "--kin", s(&missing)]).status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_ymbv"))
        .args(["vanishing", "--case", "1", "--n", "1"])
        .env("YM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(ymbv(&["--help"]).status.code(), Some(0));
}

#[test]
fn solve_then_verify_and_replay() {
    let h = scratch("h.json");
    let theta = scratch("theta.json");
    assert_eq!(ymbv(&["solve-h", "--out", s(&h)]).status.code(), Some(0));
    assert_eq!(ymbv(&["verify-axioms", "--max-arity", "3", "--h", s(&h)]).status.code(), Some(0));
    assert_eq!(ymbv(&["build-theta", "--h", s(&h), "--out", s(&theta)]).status.code(), Some(0));
    assert_eq!(ymbv(&["verify-axioms", "--h", s(&h), "--recheck", s(&theta)]).status.code(), Some(0));

    // a tampered table fails its digest before any replay
    let text = std::fs::read_to_string(&theta).unwrap();
    let tampered = scratch("tampered.json");
    std::fs::write(&tampered, text.replacen("\"word\": [\n", "\"word\": [\n                    1,\n", 1)).unwrap();
    assert_eq!(ymbv(&["verify-axioms", "--h", s(&h), "--recheck", s(&tampered)]).status.code(), Some(2));

    // the certificate is tied to the h it was built with
    let h2 = scratch("h2.json");
    assert_eq!(ymbv(&["solve-h", "--alternate", "--out", s(&h2)]).status.code(), Some(0));
    assert_eq!(ymbv(&["verify-axioms", "--h", s(&h2), "--recheck", s(&theta)]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let (a, b) = (scratch("bcj-a.json"), scratch("bcj-b.json"));
    for p in [&a, &b] {
        let out = ymbv(&["bcj", "--n", "4", "--seed", "7", "--out", s(p)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(v["format"], "ymbv-report/1");
    assert_eq!(v["command"], "bcj");
    assert_eq!(v["pass"], true);
    assert_eq!(v["args"]["seed"], 7);
    assert!(v["args"].get("out").is_none());
}

#[test]
fn homology_reports_the_expected_dimensions() {
    let out = scratch("hom.json");
    assert_eq!(ymbv(&["homology", "--momentum", "3,1,2,2", "--out", s(&out)]).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["results"]["dims"], serde_json::json!([0, 2, 2, 0]));
    assert_eq!(v["results"]["kih"]["iso_rank"], 2);
    assert_eq!(ymbv(&["homology", "--momentum", "1/2,1,-1,2"]).status.code(), Some(0));
}

#[test]
fn amplitude_from_a_kinematics_file() {
    let kin = scratch("kin.json");
    std::fs::write(
        &kin,
        r#"{"legs":[
            {"momentum":["3","1","2","2"],"class":"basis-0"},
            {"momentum":["3","2","2","1"],"class":["1/2","0"]},
            {"momentum":["-1","-3/5","-4/5","0"],"class":[{"re":"0","im":"1"},"1"]}]}"#,
    )
    .unwrap();
    let out = scratch("amp.json");
    assert_eq!(ymbv(&["amplitude", "--kin", s(&kin), "--gauge-check", "--out", s(&out)]).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["results"]["gauge_independent"], true);
    assert_eq!(v["results"]["amplitude"]["closed"], true);

    // the first two legs alone have a non-null total
    std::fs::write(&kin, r#"{"legs":[{"momentum":["3","1","2","2"],"class":"basis-0"},{"momentum":["3","2","2","1"],"class":"basis-1"}]}"#)
        .unwrap();
    assert_eq!(ymbv(&["amplitude", "--kin", s(&kin)]).status.code(), Some(2));
    std::fs::write(&kin, r#"{"legs":[{"momentum":["3","1","2","2"],"class":"basis-7"}]}"#).unwrap();
    assert_eq!(ymbv(&["amplitude", "--kin", s(&kin)]).status.code(), Some(2));
}

#[test]
fn vanishing_and_cobar_pass() {
    assert_eq!(ymbv(&["vanishing", "--case", "2", "--n", "1", "--ell-range", "-6..-1"]).status.code(), Some(0));
    assert_eq!(ymbv(&["vanishing", "--case", "1", "--n", "1", "--ell-range", "0"]).status.code(), Some(0));
    let out = ymbv(&["cobar-check", "--max-letters", "3", "--samples", "20", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
