use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn sgpd(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sgpd")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn roundtrip_on_i2() {
    let (code, out, _) = sgpd(&["roundtrip", &data("i2.sgpd")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "zeta: iso (7 elements); kappa: iso (8 elements)");
}

#[test]
fn counterexample_exits_with_witness() {
    let (code, out, _) = sgpd(&["validate", &data("fgh.sgpd")]);
    assert_eq!(code, 1);
    assert!(out.contains("not a semigroupoid: triple"), "{out}");
}

#[test]
fn semidirect_reports_non_associativity() {
    let (code, out, _) = sgpd(&["semidirect", &data("t_action.sgpd")]);
    assert_eq!(code, 1);
    assert!(out.contains("NotAssociative"), "{out}");
    assert!(out.contains("= (g,u) but") && out.contains("= (g,0)"), "{out}");
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = sgpd(&["validate", "/nonexistent/file.sgpd"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    let dir = std::env::temp_dir().join(format!("sgpd-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.sgpd");
    std::fs::write(&bad, "semigroupoid S { elements: a b; products: a*b=c; }").unwrap();
    let (code, _, err) = sgpd(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unresolved name `c`"), "{err}");
    let (code, _, _) = sgpd(&["kb", &data("t_action.sgpd"), "--name", "missing"]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_is_deterministic() {
    let a = sgpd(&["--json", "analyze", &data("i2.sgpd")]);
    let b = sgpd(&["--json", "analyze", &data("i2.sgpd")]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["results"][0]["data"]["idempotents"].as_array().unwrap().len(), 4);
}

#[test]
fn subcommands_on_sample_files() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["analyze", "noncategorical.sgpd"], 0, "not categorical (a and b share x"),
        (&["graphings", "i2.sgpd"], 0, "1 graphing(s)"),
        (&["wagner-preston", "i2.sgpd"], 0, "image: 7 elements"),
        (&["underlying", "i2.sgpd"], 0, "7 elements, 4 vertices"),
        (&["spectrum", "i2.sgpd"], 0, "2 ultrafilter(s)"),
        (&["kb", "i2.sgpd"], 0, "8 bisections"),
        (&["kb", "pairs2.sgpd"], 0, "7 bisections"),
        (&["germ", "i2.sgpd"], 0, "initial groupoid: 1 elements"),
        (&["germ", "z3.sgpd"], 0, "3 elements, 1 vertex, group"),
        (&["quotient", "remark.sgpd"], 0, "2 classes"),
        (&["validate", "remark.sgpd"], 0, "V: valid"),
        (&["semidirect", "remark.sgpd"], 0, "4 elements"),
        (&["p", "chains.sgpd", "--name", "F3"], 0, "2 germs over 1 ultrafilter(s)"),
        (&["p", "chains.sgpd", "--name", "L3"], 1, "(Σ-iv)"),
        (&["validate", "image.sgpd"], 0, "incl: homomorphism"),
        (&["roundtrip", "pairs2.sgpd"], 0, "zeta: iso (4 elements); kappa: iso (7 elements)"),
    ];
    for (args, code, needle) in cases {
        let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        a[1] = data(&a[1]);
        let refs: Vec<&str> = a.iter().map(|s| s.as_str()).collect();
        let (c, out, err) = sgpd(&refs);
        assert_eq!(c, *code, "{args:?}: {out}{err}");
        assert!(out.contains(needle), "{args:?}: {out}");
    }
}

#[test]
fn iso_command() {
    let (code, out, _) = sgpd(&["iso", &data("i2.sgpd"), &data("i2.sgpd")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("isomorphic"));
    let (code, _, _) = sgpd(&["iso", &format!("{}:L3", data("chains.sgpd")), &format!("{}:E", data("remark.sgpd"))]);
    assert_eq!(code, 1);
    let (code, _, _) = sgpd(&["iso", &format!("{}:L2", data("chains.sgpd")), &format!("{}:L2", data("remark.sgpd"))]);
    assert_eq!(code, 0);
}
