use std::path::PathBuf;
use std::process::{Command, Output};

use crjet_core::parse_expr;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn crjet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crjet")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = crjet(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn json_reports_share_one_shape() {
    let q = data("quadric.hs");
    for args in [vec!["invariants", "-i", &q], vec!["ode", "-i", &q, "--order", "5"], vec!["verify", "-i", &q]] {
        let v = json(&args);
        let obj = v.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys, ["command", "input_echo", "results", "diagnostics"]);
        assert_eq!(obj["command"], args[0]);
        assert_eq!(obj["input_echo"]["H"], "z*zb");
    }
}

#[test]
fn quadric_invariants_vanish() {
    let v = json(&["invariants", "-i", &data("quadric.hs")]);
    for k in ["I1", "I2", "I3", "I4", "P", "Pbar"] {
        assert_eq!(v["results"][k], "0", "{k}");
    }
    assert_eq!(v["results"]["invariants_transcendental_free"], true);
}

#[test]
fn output_is_deterministic() {
    let q2 = data("q2.hs");
    let a = crjet(&["invariants", "-i", &q2, "--format", "json"]);
    let b = crjet(&["invariants", "-i", &q2, "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_expressions_parse_back() {
    let v = json(&["invariants", "-i", &data("q2.hs")]);
    for k in ["P", "I1", "I2", "I3", "I4"] {
        let s = v["results"][k].as_str().unwrap();
        let e = parse_expr(s).unwrap();
        assert_eq!(e.to_text(), s, "{k}");
    }
}

#[test]
fn atan_example_has_algebraic_invariants() {
    let v = json(&["invariants", "-i", &data("arctan.hs")]);
    assert_eq!(v["results"]["invariants_transcendental_free"], true);
}

#[test]
fn verify_checks_all_relations() {
    for f in ["quadric.hs", "q2.hs", "general.hs"] {
        let v = json(&["verify", "-i", &data(f)]);
        let r = &v["results"];
        assert_eq!(r["structure_equations"]["holds"], true, "{f}");
        assert_eq!(r["frame_jacobi_identity"], true, "{f}");
        assert_eq!(r["structural_equals_closed_form"], true, "{f}");
        assert_eq!(r["all_expected"], true, "{f}");
    }
}

#[test]
fn ode_series_is_structured() {
    let v = json(&["ode", "-i", &data("q2.hs"), "--order", "6"]);
    let s = &v["results"]["phi_series"];
    assert_eq!(s["vars"], serde_json::json!(["z", "w", "wp"]));
    assert_eq!(s["order"], 6);
    assert!(!s["terms"].as_array().unwrap().is_empty());
    assert_eq!(v["results"]["phi_w_free"], true);
}

#[test]
fn prolong_of_shear_with_explicit_ode() {
    let v = json(&["prolong", "--map", &data("shear.map"), "--ode", &data("two.ode")]);
    let r = &v["results"];
    assert_eq!(r["g1"], "2*z + wp");
    assert_eq!(r["g2"], "2 + wpp");
    // Pulling w'' = 2 back along w -> w + z^2 gives w'' = 0.
    assert_eq!(r["phi"], "0");
}

#[test]
fn prolong_against_hypersurface() {
    let v = json(&["prolong", "--map", &data("shear.map"), "-i", &data("quadric.hs"), "--order", "5"]);
    assert!(v["results"]["phi_series"]["terms"].is_array());
}

#[test]
fn transcend_reports_with_default_bounds() {
    let v = json(&["transcend", "-i", &data("arctan.hs"), "--order", "24"]);
    let r = &v["results"];
    assert!(r["result"]["none_up_to"].is_object(), "{r}");
    let attempts = r["attempts"].as_array().unwrap();
    assert_eq!(attempts[0]["verification_at_double_order"], "failed");
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn transcend_finds_quadric_witness() {
    let v = json(&["transcend", "-i", &data("quadric.hs"), "--order", "12", "--max-deg-u", "1", "--max-deg-y", "2", "--max-deg-x", "2"]);
    assert_eq!(v["results"]["result"]["witness"]["polynomial"], "u");
}

#[test]
fn latex_is_a_standalone_document() {
    let out = crjet(&["invariants", "-i", &data("q2.hs"), "--format", "latex"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("\\documentclass"));
    assert!(s.trim_end().ends_with("\\end{document}"));
    assert!(s.contains("\\begin{dmath*}"));
}

#[test]
fn degenerate_input_exits_with_two() {
    let out = crjet(&["invariants", "-i", &data("degenerate.hs")]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("degenerate"), "{}", stderr(&out));
}

#[test]
fn malformed_input_is_located() {
    let out = crjet(&["invariants", "-i", &data("badident.hs")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2, column 13"), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_with_one() {
    let out = crjet(&["verify", "-i", "/nonexistent/file.hs"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format_is_default() {
    let out = crjet(&["ode", "-i", &data("quadric.hs"), "--order", "4"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("command: ode\n"));
    assert!(s.contains("phi_w_free: true"));
}
