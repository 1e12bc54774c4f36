use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ls-transform"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

#[test]
fn kernel_near_zero_is_sqrt_pi() {
    let o = run(&["kernel", "--tau", "0", "--x", "1e-9", "--method", "series"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = column(&stdout(&o), "value")[0].parse().unwrap();
    assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-8);
}

#[test]
fn kernel_methods_agree() {
    let o = run(&["kernel", "--tau", "0:2:3", "--x", "0.5:2:2", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let vals: Vec<f64> = column(&stdout(&o), "value").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(vals.len(), 18);
    for triple in vals.chunks(3) {
        assert!((triple[0] - triple[1]).abs() < 1e-8);
        assert!((triple[0] - triple[2]).abs() < 1e-6);
    }
}

#[test]
fn csv_is_deterministic() {
    let args = ["kernel", "--tau", "-1:1:5", "--x", "1:10:4:log"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let first = stdout(&a).lines().nth(1).unwrap().to_string();
    assert!(first.starts_with("-1.0000000000000000e0,1.0000000000000000e0,"), "{first}");
}

#[test]
fn json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let o = run(&["kernel", "--tau", "1", "--x", "2", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["meta"]["settings"]["gamma"], 0.25);
    assert_eq!(v["rows"][0]["method"], "series");
    let psi = v["rows"][0]["value"].as_f64().unwrap();
    assert!((psi - 0.10692030322711126020).abs() < 1e-12);
}

#[test]
fn registry_lists_builtins_with_tags() {
    let o = run(&["registry", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in ["f1", "f2", "f3", "g1", "g2"] {
        assert!(column(&out, "name").iter().any(|n| n == name), "{name}");
    }
    assert!(out.contains("f1,HalfLine,forward_bounded;forward_invertible"));
    assert!(out.contains("g1,WholeLine,index_bounded;index_invertible;wedge_admissible"));
}

#[test]
fn registry_describe_runs_checks() {
    let o = run(&["registry", "describe", "g1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check:wedge_admissible,\"declared; check holds"));
    assert_eq!(run(&["registry", "describe", "nope"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["kernel", "--tau", "1"],
        vec!["kernel", "--tau", "1", "--x", "0"],
        vec!["kernel", "--tau", "1", "--x", "1:0:3"],
        vec!["transform", "apply", "--function", "f1", "--grid", "1"],
        vec!["transform", "forward", "--function", "nope", "--grid", "1"],
        vec!["invert", "g", "--function", "g1", "--x-grid", "1", "--eps", "0.7"],
        vec!["verify", "--suite", "kernel", "--tol", "-1"],
        vec!["pde", "--g", "g1", "--r", "1:2:5", "--theta", "0:2:5", "--beta", "1.5"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn range_errors_exit_3() {
    let o = run(&["kernel", "--tau", "1", "--x", "500", "--method", "series"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside the supported range"));
    let o = run(&["invert", "f", "--function", "f1", "--x-grid", "9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_file_overrides_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.conf");
    std::fs::write(&good, "# quadrature\ngamma = 0.35\ncontour_abs_tol = 1e-12\n").unwrap();
    let o = run(&["--config", good.to_str().unwrap(), "--format", "json", "kernel", "--tau", "1", "--x", "2", "--method", "mb"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["meta"]["settings"]["gamma"], 0.35);
    assert!((v["rows"][0]["value"].as_f64().unwrap() - 0.10692030322711126020).abs() < 1e-10);

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "tolerance = 1e-6\n").unwrap();
    let o = run(&["--config", bad.to_str().unwrap(), "registry", "list"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key 'tolerance'"));
}

#[test]
fn thread_hint_is_validated() {
    let o = bin().env("LS_TRANSFORM_THREADS", "2").args(["registry", "list"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = bin().env("LS_TRANSFORM_THREADS", "0").args(["registry", "list"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_kernel_suite_passes() {
    let o = run(&["verify", "--suite", "kernel", "--tol", "1e-6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(column(&out, "status"), vec!["pass"; 6]);
    assert!(out.contains("series-vs-mellin-barnes"));
}

#[test]
fn verify_failure_names_identity_and_exits_1() {
    let o = run(&["verify", "--suite", "kernel", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("kernel/ode-residual violates the kernel second-order differential equation"), "{err}");
}

#[test]
fn forward_then_invert_from_samples() {
    let dir = tempfile::tempdir().unwrap();
    let f_csv = dir.path().join("F.csv");
    let o = run(&["transform", "forward", "--function", "f2", "--grid", "0:8:161", "-o", f_csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["invert", "f", "--input", f_csv.to_str().unwrap(), "--x-grid", "1:2:2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let vals: Vec<f64> = column(&stdout(&o), "value").iter().map(|s| s.parse().unwrap()).collect();
    for (x, v) in [1.0f64, 2.0].iter().zip(vals) {
        let want = x / (1.0 + x).powi(3);
        assert!((v - want).abs() < 1e-3 * want, "{x}: {v} vs {want}");
    }
}

#[test]
fn malformed_input_file_is_a_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "t,G\n1,0.1\n2,abc\n3,0.2").unwrap();
    let o = run(&["invert", "g", "--input", f.path().to_str().unwrap(), "--x-grid", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pde_field_has_residual_column() {
    let o = run(&["pde", "--g", "g1", "--r", "0.5:1.3:9", "--theta", "0:0.4:5", "--beta", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let res = column(&out, "residual");
    assert_eq!(res.len(), 45);
    assert!(res[0].is_empty());
    let interior: f64 = res[5 + 1].parse().unwrap();
    assert!(interior < 1e-2);
}
