use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lieaff::obstructions::Verdict;
use lieaff::report::{ConnectionCheck, Dim3Table, EmbeddingCheck, Report, SearchReport};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn lieaff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieaff"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&lieaff(&args))).unwrap()
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[test]
fn no_verdict_still_exits_zero() {
    let report: Report = json(&["analyze", "--builtin", "sl2"]);
    assert_eq!(report.decision.verdict, Verdict::No);
    assert!(report.decision.obstruction.is_some());
    let standard = &report.connection_analyses[1];
    assert_eq!(standard.label, "standard");
    assert_eq!(standard.projectively_flat, Some(true));
}

#[test]
fn text_and_json_agree() {
    for file in ["heis3.json", "sol3.json", "sl2.json"] {
        let path = data(file);
        let path = path.to_str().unwrap();
        let report: Report = json(&["analyze", path, "--starts", "10"]);
        let text = stdout(&lieaff(&["analyze", path, "--starts", "10"]));
        let p = &report.profile;
        assert!(
            text.contains(&format!("verdict: {}", report.decision.verdict)),
            "{text}"
        );
        assert!(text.contains(&format!(
            "abelian {}, nilpotent {}, solvable {}, unimodular {}, semisimple {}",
            yn(p.abelian),
            yn(p.nilpotent),
            yn(p.solvable),
            yn(p.unimodular),
            yn(p.semisimple)
        )));
        assert!(text.contains(&format!("Killing rank {}", p.killing_rank)));
        for c in &report.connection_analyses {
            assert!(text.contains(&format!(
                "{}: flat {}, torsion-free {}",
                c.label,
                yn(c.flat),
                yn(c.torsion_free)
            )));
        }
        if let Some(cert) = &report.decision.certificate {
            for e in &cert.gamma {
                let [i, j, k] = e.index;
                assert!(text.contains(&format!("Γ[{i}][{j}][{k}]")));
            }
        }
    }
}

#[test]
fn json_report_round_trips() {
    let text = stdout(&lieaff(&[
        "analyze",
        "--builtin",
        "sol3",
        "--format",
        "json",
    ]));
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn check_connection_and_embedding() {
    let heis = data("heis3.json");
    let gamma = data("heis3_gamma.json");
    let check: ConnectionCheck = json(&[
        "check-connection",
        heis.to_str().unwrap(),
        "--gamma",
        gamma.to_str().unwrap(),
    ]);
    assert!(check.analysis.flat && check.analysis.torsion_free);
    assert!(check.embedding.is_some());

    let sol = data("sol3.json");
    let map = data("sol3_map.json");
    let check: EmbeddingCheck = json(&[
        "check-embedding",
        sol.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
    ]);
    assert!(check.homomorphism && check.injective && check.etale);
    let g = check.induced.unwrap();
    assert_eq!(g.gamma[0][1][1], ["1".to_string(), "0".to_string()]);
    assert_eq!(g.gamma[0][2][2], ["-1".to_string(), "0".to_string()]);

    // the same map read against heis3 is not a homomorphism
    let check: EmbeddingCheck = json(&[
        "check-embedding",
        heis.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
    ]);
    assert!(!check.homomorphism);
    assert!(check.induced.is_none());
}

#[test]
fn search_and_classify() {
    let r3 = data("r3.json");
    let report: SearchReport = json(&[
        "search",
        r3.to_str().unwrap(),
        "--starts",
        "12",
        "--seed",
        "3",
    ]);
    assert_eq!((report.starts, report.seed), (12, 3));
    assert!(report.verified >= 1);
    assert!(report.certificate.unwrap().checks.all());

    let table: Dim3Table = json(&["classify-dim3"]);
    assert!(table.verdicts_match_solvability());
    let text = stdout(&lieaff(&["classify-dim3"]));
    for row in &table.rows {
        assert!(text.contains(&row.algebra));
    }
}

#[test]
fn input_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let syntax = write(
        "syntax.json",
        "{\n  \"name\": \"x\",\n  \"dim\": 3,\n  \"basis\": [\"a\" \"b\"]\n}",
    );
    let out = lieaff(&["analyze", syntax.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let jacobi = write(
        "jacobi.json",
        r#"{"name":"bad","dim":3,"basis":["a","b","c"],"brackets":[
            {"left":0,"right":1,"result":[["1","0"],["0","0"],["0","0"]]},
            {"left":1,"right":2,"result":[["0","0"],["1","0"],["0","0"]]},
            {"left":2,"right":0,"result":[["0","0"],["0","0"],["1","0"]]}]}"#,
    );
    let out = lieaff(&["analyze", jacobi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr)
        .to_lowercase()
        .contains("jacobi"));

    let coeff = write(
        "coeff.json",
        r#"{"name":"x","dim":2,"basis":["a","b"],"brackets":[{"left":0,"right":1,"result":[["0","0"],["0.5","0"]]}]}"#,
    );
    let out = lieaff(&["search", coeff.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("brackets[0].result[1]"));

    let out = lieaff(&["analyze", "--builtin", "so5"]);
    assert_ne!(out.status.code(), Some(0));
}
