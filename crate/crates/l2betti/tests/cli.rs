use std::process::{Command, Output};

use l2betti::formats::{matrix_from_json, BettiJson, ComplexJson, HeatJson, VerifyJson};
use l2betti_core::complexes::closed_form;
use l2betti_core::GroupSpec;

fn l2betti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l2betti")).args(args).output().expect("binary runs")
}

fn json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}\nstdout: {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn values(report: &BettiJson) -> Vec<(&str, &str)> {
    report.entries.iter().map(|e| (e.class.as_str(), e.value.as_str())).collect()
}

#[test]
fn betti_modular_group_table() {
    let out = l2betti(&["betti", "--group", "Z2*Z3", "--degree", "1", "--classes", "e,s,t,tt,st"]);
    assert_eq!(out.status.code(), Some(0));
    let report: BettiJson = json(&out);
    assert_eq!(report.method, "kclass");
    assert_eq!(
        values(&report),
        [("e", "1/6"), ("s", "-1/2"), ("t", "-1/3"), ("tt", "-1/3"), ("st", "0/1")]
    );
}

#[test]
fn betti_free_group_and_products() {
    let report: BettiJson = json(&l2betti(&["betti", "--group", "F2", "--degree", "1", "--classes", "e"]));
    assert_eq!(values(&report), [("e", "1/1")]);
    let report: BettiJson = json(&l2betti(&["betti", "--group", "F2xF2xZ2", "--degree", "2", "--classes", "e"]));
    assert_eq!(values(&report), [("(e,e,e)", "1/2")]);
    let report: BettiJson = json(&l2betti(&["betti", "--group", "F2xZ3", "--classes", "(e,e),(a,f),(e,ff)"]));
    assert_eq!(values(&report), [("(e,e)", "1/3"), ("(a,f)", "0/1"), ("(e,ff)", "1/3")]);
    let report: BettiJson = json(&l2betti(&["betti", "--group", "Z2*Z3", "--degree", "2", "--classes", "e,s"]));
    assert_eq!(values(&report), [("e", "0/1"), ("s", "0/1")]);
    assert!(report.note.is_some());
}

#[test]
fn unsupported_requests_exit_two() {
    for group in ["Z2*Z2", "Z2*Z3*Z5"] {
        let out = l2betti(&["betti", "--group", group, "--classes", "e"]);
        assert_eq!(out.status.code(), Some(2), "{group}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn bad_input_is_an_error() {
    let out = l2betti(&["betti", "--group", "Q8", "--classes", "e"]);
    assert_eq!(out.status.code(), Some(1));
    let out = l2betti(&["betti", "--group", "Z2*Z3", "--classes", "q"]);
    assert_eq!(out.status.code(), Some(1));
    let out = l2betti(&["heat", "--group", "Z2*Z3", "--radius", "8,4"]);
    assert_eq!(out.status.code(), Some(1));
}

fn heat_limit(args: &[&str]) -> (Option<i32>, HeatJson) {
    let out = l2betti(args);
    (out.status.code(), json(&out))
}

#[test]
fn heat_converges_on_the_modular_group() {
    let (code, report) = heat_limit(&["heat", "--group", "Z2*Z3", "--degree", "1", "--class", "e", "--t", "2,5,10", "--radius", "4,6,8"]);
    assert_eq!(code, Some(0));
    assert_eq!(report.status, "converged");
    let s = &report.summaries[0];
    assert_eq!(s.expected.as_deref(), Some("1/6"));
    assert!((s.limit.unwrap() - 1.0 / 6.0).abs() < 0.02, "{s:?}");
    assert_eq!(report.rows.len(), 9);
}

#[test]
fn heat_degree_zero_tends_to_zero() {
    let (code, report) = heat_limit(&["heat", "--group", "Z2*Z3", "--degree", "0", "--class", "e"]);
    assert_eq!(code, Some(0));
    assert!(report.summaries[0].limit.unwrap().abs() < 0.02);
}

#[test]
fn heat_on_z3_z3_tends_to_minus_a_third() {
    let (code, report) =
        heat_limit(&["heat", "--group", "Z3*Z3", "--degree", "1", "--class", "s", "--t", "5,10,20", "--radius", "8,10,12"]);
    assert_eq!(code, Some(0));
    let s = &report.summaries[0];
    assert_eq!(s.expected.as_deref(), Some("-1/3"));
    assert!((s.limit.unwrap() + 1.0 / 3.0).abs() < 0.025, "{s:?}");
}

#[test]
fn heat_exit_codes_distinguish_outcomes() {
    let (code, report) = heat_limit(&["heat", "--group", "Z2*Z3", "--class", "e", "--t", "0.25,0.5", "--radius", "6,8"]);
    assert_eq!((code, report.status.as_str()), (Some(4), "not-converged"));
    let (code, report) = heat_limit(&["heat", "--group", "Z2*Z3", "--class", "e", "--order", "10"]);
    assert_eq!((code, report.status.as_str()), (Some(5), "bound-unavailable"));
}

#[test]
fn heat_exact_rows_bracket_the_float_rows() {
    let (_, report) = heat_limit(&[
        "heat", "--group", "Z2*Z3", "--class", "e,s", "--t", "1/4,1/2", "--radius", "8,12", "--order", "24",
    ]);
    let exact: Vec<_> = report.rows.iter().filter(|r| r.method == "heat-exact").collect();
    assert_eq!(exact.len(), 4);
    for row in exact {
        let float = report
            .rows
            .iter()
            .find(|r| r.method == "heat-numeric" && r.radius_or_order == 12 && r.t == row.t && r.class == row.class)
            .unwrap();
        assert!((float.value - row.value).abs() <= row.bound.unwrap() + 1e-8, "{row:?} vs {float:?}");
    }
}

#[test]
fn heat_csv_has_the_documented_columns() {
    let out = l2betti(&["heat", "--group", "F2", "--class", "e,a", "--t", "1,2", "--radius", "3,4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,radius_or_order,class,value,bound,method"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn verify_free_products() {
    for group in ["Z2*Z3", "Z3*Z4"] {
        let out = l2betti(&["verify", "--group", group]);
        let report: VerifyJson = json(&out);
        let failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        // Every exact identity holds; only the floating-point kernel residual misses its threshold.
        assert_eq!(failing, ["kernel-residual"], "{group}");
        assert_eq!(out.status.code(), Some(3));
        for name in ["chain-law", "closed-form", "factored-form", "kernel-identity", "kernel-factorization"] {
            assert!(report.checks.iter().any(|c| c.name == name && c.passed), "{group}: {name}");
        }
    }
    let report: VerifyJson = json(&l2betti(&["verify", "--group", "Z2*Z3"]));
    assert!(report.checks.iter().any(|c| c.name == "modular-group-matrix" && c.passed));
}

#[test]
fn verify_free_group_and_products() {
    for group in ["F2", "F2xZ3", "F2xF2xZ2"] {
        let out = l2betti(&["verify", "--group", group]);
        let report: VerifyJson = json(&out);
        assert!(report.passed, "{group}: {report:?}");
        assert_eq!(out.status.code(), Some(0));
        assert!(report.checks.iter().any(|c| c.name == "chain-law"));
        assert!(report.checks.iter().any(|c| c.name == "laplacian-1-self-adjoint"));
    }
    let report: VerifyJson = json(&l2betti(&["verify", "--group", "F2xZ3"]));
    assert!(report.checks.iter().any(|c| c.name.starts_with("kunneth-")));
}

#[test]
fn complex_dumps() {
    let report: ComplexJson = json(&l2betti(&["complex", "--group", "Z2*Z3", "--degree", "1"]));
    let spec = GroupSpec::free_product(vec![2, 3]).unwrap();
    assert_eq!(report.laplacians.len(), 1);
    let lap = matrix_from_json(&spec, &report.laplacians[0].matrix).unwrap();
    assert_eq!(lap, closed_form::modular_group_laplacian());

    let report: ComplexJson = json(&l2betti(&["complex", "--group", "F2"]));
    assert_eq!(report.ranks, [1, 2]);
    let words: Vec<Vec<(String, String)>> = report.coboundaries[0]
        .entries
        .iter()
        .map(|row| row[0].iter().map(|t| (t.word.clone(), t.coeff.clone())).collect())
        .collect();
    assert_eq!(
        words,
        [
            vec![("e".to_string(), "1/1".to_string()), ("a".to_string(), "-1/1".to_string())],
            vec![("e".to_string(), "1/1".to_string()), ("b".to_string(), "-1/1".to_string())],
        ]
    );

    let report: ComplexJson = json(&l2betti(&["complex", "--group", "F2xZ3", "--max-degree", "2"]));
    assert_eq!(report.ranks, [1, 3, 3]);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["heat", "--group", "Z2*Z3", "--class", "e,s,t", "--t", "1,2", "--radius", "4,6,8"];
    let first = l2betti(&args).stdout;
    let single = Command::new(env!("CARGO_BIN_EXE_l2betti")).args(args).env("L2BETTI_THREADS", "1").output().unwrap();
    assert_eq!(first, l2betti(&args).stdout);
    assert_eq!(first, single.stdout);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("betti.csv");
    let out = l2betti(&["betti", "--group", "Z2*Z3", "--classes", "e,s", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "class,value\ne,1/6\ns,-1/2\n");
}

#[test]
fn table_groups_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    // S3 with r of order 3 and reflections f, fr, frr.
    let labels = ["e", "r", "rr", "f", "fr", "frr"];
    let perm = |i: usize| -> [usize; 3] {
        let rot = [[0, 1, 2], [1, 2, 0], [2, 0, 1]][i % 3];
        let flip = [0, 2, 1];
        if i < 3 { rot } else { rot.map(|x| flip[x]) }
    };
    let compose = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
    let table: Vec<Vec<&str>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| labels[(0..6).find(|&k| perm(k) == compose(perm(i), perm(j))).unwrap()])
                .collect()
        })
        .collect();
    let table_json = serde_json::json!({ "name": "S3", "labels": labels, "table": table, "identity": "e" });
    std::fs::write(&path, table_json.to_string()).unwrap();
    let group = format!("@{}", path.display());
    let out = l2betti(&["betti", "--group", &group, "--degree", "0", "--classes", "e,r,f"]);
    let report: BettiJson = json(&out);
    assert_eq!(values(&report), [("e", "1/6"), ("r", "1/3"), ("f", "1/2")]);
    let out = l2betti(&["verify", "--group", &group]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
