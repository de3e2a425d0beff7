use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn mdx() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mdx"));
    c.env_remove("MDX_SEED");
    c
}

fn script(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mdx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_prints_and_asserts() {
    let path = script(
        "ok.mdx",
        "chart x, y, z;\nambient 2;\ngraph dx ^ dy ^ dz;\nprint pb(adm(z dx; @y), adm(x dy; @z));\nassert i(@x ^ @y; dx ^ dy) == 1;\n",
    );
    let out = mdx().arg("eval").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "adm(-dx; 0)");
    assert!(lines[1].starts_with("ok    5:1"), "{text}");
}

#[test]
fn failed_assertion_exits_with_one() {
    let path = script("fail.mdx", "chart x, y;\nassert d(x dy) == dy ^ dx;\n");
    let out = mdx().arg("eval").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL  2:1"), "{text}");
    assert!(text.contains("left:  dx^dy"), "{text}");
}

#[test]
fn parse_and_structural_errors_exit_with_two() {
    let path = script("parse.mdx", "chart x;\nprint x +;\n");
    let out = mdx().arg("eval").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("2:10"), "{}", stderr(&out));

    let path = script(
        "degree.mdx",
        "chart x, y;\nambient 1;\nprint pair(@x ^ @y; 0);\n",
    );
    let out = mdx().arg("eval").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn unsupported_input_exits_with_three() {
    let path = script(
        "solver.mdx",
        "chart x, y, z;\nambient 2;\ngraph x dx ^ dy ^ dz;\nprint adm(y dz);\n",
    );
    let out = mdx().arg("eval").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("unsupported"), "{}", stderr(&out));
}

#[test]
fn check_reports_json() {
    let out = mdx()
        .args(["check", "prop-a3", "--trials", "10", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "prop-a3");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["trials"], 10);
    assert_eq!(v["passed"], true);
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert!(v["millis"].is_u64());
}

#[test]
fn seed_comes_from_the_environment_unless_given() {
    let out = mdx()
        .env("MDX_SEED", "7")
        .args(["check", "courant-degree1", "--trials", "5", "--json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    let out = mdx()
        .env("MDX_SEED", "7")
        .args([
            "check",
            "courant-degree1",
            "--trials",
            "5",
            "--json",
            "--seed",
            "9",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 9);
}

#[test]
fn same_seed_same_report() {
    let run = |mode: &str| {
        let mut c = mdx();
        c.args([
            "check",
            "gauge-automorphism",
            "--trials",
            "15",
            "--json",
            "--seed",
            "3",
        ]);
        if mode == "seq" {
            c.arg("--sequential");
        }
        let mut v: serde_json::Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["millis"] = 0.into();
        v
    };
    assert_eq!(run("seq"), run("par"));
}

#[test]
fn unknown_suite_and_bad_config_exit_with_two() {
    let out = mdx().args(["check", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("schouten-axioms"));
    let out = mdx()
        .args(["check", "prop-a3", "--dim", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mutated_schouten_sign_is_caught() {
    let out = mdx()
        .args(["check", "prop-a3", "--trials", "30", "--mutate-schouten"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL  koszul"), "{text}");
    assert!(text.contains("counterexample"), "{text}");
    assert!(text.contains("defect:"), "{text}");
}

#[test]
fn repl_evaluates_line_by_line() {
    let mut child = mdx()
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(
            b"chart x, y;\nx + y\nlet a = x *\n  y;\nprint a ** 2;\nassert a == y x;\nprint z;\n",
        )
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x + y");
    assert_eq!(lines[1], "x**2*y**2");
    assert!(lines[2].starts_with("ok"), "{text}");
    assert!(lines[3].starts_with("error:"), "{text}");
    assert_eq!(out.status.code(), Some(2));
}
