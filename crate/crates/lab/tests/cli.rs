use std::process::Command;

fn toric(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_toric")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn classify_and_invariants() {
    let (code, out) = toric(&["classify", "polydisk:1,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("monotone = true"));
    assert!(out.contains("strictly_monotone = false"));
    let (code, out) = toric(&["invariants", "ellipsoid:1,4"]);
    assert_eq!(code, 0);
    assert!(out.contains("ruelle = 5.0000000000000000e0"));
    assert!(out.contains("verdict = inconclusive"), "{out}");
}

#[test]
fn orbits_csv() {
    let (code, out) = toric(&["orbits", "polydisk:1,2", "--cutoff", "4"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m,n,w1,w2,action,location_kind,location_index"));
    assert!(lines.next().unwrap().starts_with("1,0,"));
}

#[test]
fn tmin_methods_agree() {
    let (_, fast) = toric(&["tmin", "fc:2,0.8", "--method", "fast"]);
    let (_, oracle) = toric(&["tmin", "ball:2", "--method", "oracle", "--oracle-n", "20"]);
    assert!(fast.contains("t_min = 8.0000000000000"), "{fast}");
    assert!(oracle.contains("t_min = 2.0000000000000000e0"), "{oracle}");
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(toric(&["classify", "ball:-1"]).0, 2);
    assert_eq!(toric(&["classify", "/no/such/file.toml"]).0, 2);
    assert_eq!(toric(&["strangulate", "ball:2", "--eps", "3"]).0, 2);
}

#[test]
fn findings_exit_3() {
    let (code, _) = toric(&["sweep", "--op", "strain", "--profile", "ellipsoid:1,4", "--eps-grid", "1e-2,1e-3"]);
    assert_eq!(code, 3);
    let (code, _) = toric(&["sweep", "--op", "strangulate", "--profile", "ball:2", "--eps-grid", "0.1,0.01"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_ruelle_and_bounds() {
    let (code, out) = toric(&["verify-ruelle", "polydisk:1,2"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = toric(&["bounds", "--corpus", "10", "--seed", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("polydisk(1, 1000)"));
}

#[test]
fn surgery_writes_profile() {
    let dir = std::env::temp_dir().join(format!("toric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("strained.toml");
    let svg = dir.join("strained.svg");
    let (code, text) = toric(&["strain", "ellipsoid:1,4", "--eps", "0.01", "--out", out.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("spike_intercept = 1.0000000000000000e1"));
    let (code, cls) = toric(&["classify", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(cls.contains("strictly_monotone = true"));
    assert!(std::fs::read_to_string(svg).unwrap().contains("class=\"triangle\""));
}
