use qgrass::cli::run;

fn qgrass(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("qgrass").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn delta_agrees() {
    let (code, out, _) = qgrass(&["delta", "2", "2", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("formula 8") && out.contains("chains 8"), "{out}");
    let (code, out, _) = qgrass(&["delta", "3", "2", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["formula"], "55");
}

#[test]
fn bad_shapes_and_arguments_exit_with_two() {
    assert_eq!(qgrass(&["delta", "1", "2", "0"]).0, 2);
    assert_eq!(qgrass(&["delta", "2", "x", "0"]).0, 2);
    assert_eq!(qgrass(&["frobnicate"]).0, 2);
    assert_eq!(qgrass(&["experiment", "nonsense"]).0, 2);
    assert_eq!(qgrass(&["solve", "2", "2", "1", "--schedule", "list:1,1,2,3,4,5,6,7"]).0, 2);
}

#[test]
fn poset_dot_lists_every_element() {
    let (code, out, _) = qgrass(&["poset", "2", "2", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("->").count(), 14);
    assert!(out.contains("chains=\"8\""));
    let (code, out, _) = qgrass(&["poset", "3", "3", "2", "--cap", "10"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn solve_reports_json() {
    let (code, out, _) = qgrass(&["solve", "2", "2", "1", "--schedule", "power:6", "--certify"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["distinct"], 8);
    assert_eq!(v["real"], 8);
    assert_eq!(v["certificate"]["real_roots"], 8);
    assert_eq!(v["certificate_agrees"], true);
}

#[test]
fn built_system_can_be_solved_from_file() {
    let dir = std::env::temp_dir().join(format!("qgrass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flagship.sys");
    let path_str = path.to_str().unwrap();
    let (code, _, err) = qgrass(&["build", "2", "2", "1", "--schedule", "power:1", "--out", path_str]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = qgrass(&["solve", "--system", path_str, "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("8 distinct, 0 real, 4 conjugate pairs"), "{out}");
    let (code, out, _) = qgrass(&["certify", "--system", path_str, "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("degree 8") && out.contains("0 real roots"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn flagship_experiment_passes() {
    let (code, out, _) = qgrass(&["experiment", "paper-q1"]);
    assert_eq!(code, 0, "{out}");
}
