use maxsplines::cli::SymbolDump;
use std::f64::consts::FRAC_1_SQRT_2;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxsplines"))
        .args(args)
        .env_remove("MAXSPLINES_TOL")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn verify_default_passes() {
    let o = run(&["verify"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).lines().any(|l| l.starts_with("twogrid")));
}

#[test]
fn verify_zero_tolerance_still_passes_because_bound_is_attained() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = run(&[
        "verify",
        "--tol",
        "twogrid=0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<_> = csv_rows(&text)
        .into_iter()
        .filter(|r| r[0] == "twogrid")
        .collect();
    assert!(!rows.is_empty());
    for r in rows {
        let v: f64 = r[4].parse().unwrap();
        assert!(v <= FRAC_1_SQRT_2);
    }
}

#[test]
fn verify_row_count_follows_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = run(&[
        "verify",
        "--p-max",
        "8",
        "--n-set",
        "8,16,32",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "quantity,p,n,h,value,bound,ratio,pass"
    );
    assert_eq!(
        csv_rows(&text).iter().filter(|r| r[0] == "twogrid").count(),
        24
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--n-set", ""]).status.code(), Some(2));
    assert_eq!(
        run(&["scan", "--quantity", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["export", "--target", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tolerance_environment_variable() {
    let bin = env!("CARGO_BIN_EXE_maxsplines");
    let bad = Command::new(bin)
        .args(["verify", "--p-max", "2"])
        .env("MAXSPLINES_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(bin)
        .args(["verify", "--p-max", "2"])
        .env("MAXSPLINES_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn scan_counterexample_matches_formula() {
    let o = run(&[
        "scan",
        "--quantity",
        "counterexample",
        "--p",
        "1..10",
        "--h",
        "0.1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 10);
    for r in rows {
        let p: f64 = r[0].parse().unwrap();
        let h: f64 = r[1].parse().unwrap();
        let formula: f64 = r[2].parse().unwrap();
        let quad: f64 = r[3].parse().unwrap();
        // ||u||^2 = h/(2p+1) and |u|^2 = p^2/(h(2p-1)) for u = (1 - x/h)^p on (0, h).
        let oracle = (p * p / (h * (2.0 * p - 1.0)) / (h / (2.0 * p + 1.0))).sqrt();
        assert!((formula - oracle).abs() <= 1e-12 * oracle);
        assert!((formula - quad).abs() <= 1e-10 * formula);
    }
}

#[test]
#[allow(clippy::approx_constant)]
fn scan_twogrid_within_bound() {
    let o = run(&[
        "scan",
        "--quantity",
        "twogrid",
        "--p-max",
        "8",
        "--n-set",
        "4,8,16",
    ]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 24);
    for r in rows {
        let q: f64 = r[4].parse().unwrap();
        assert!(q <= 0.7071068);
    }
}

#[test]
fn export_mass_column() {
    let o = run(&["export", "--target", "mass", "--p", "1", "--n", "8"]);
    let rows = csv_rows(&stdout(&o));
    let h = 1.0 / 8.0;
    let col: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    let expect = [2.0 * h / 3.0, h / 6.0, 0.0, 0.0, 0.0, 0.0, 0.0, h / 6.0];
    for (a, b) in col.iter().zip(expect) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn export_reduced_basis_boundary_values() {
    let o = run(&[
        "export",
        "--target",
        "basis",
        "--p",
        "2",
        "--n",
        "4",
        "--samples",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    let value = |i: &str, x: f64| -> f64 {
        rows.iter()
            .find(|r| r[0] == i && (r[1].parse::<f64>().unwrap() - x).abs() < 1e-12)
            .map(|r| r[2].parse().unwrap())
            .unwrap()
    };
    // At the left end the two boundary quadratics meet with value 1/2 each.
    assert!((value("-1", 0.0) - 1.0).abs() < 1e-14);
    assert!(value("0", 0.0).abs() < 1e-14);
    // Sum of the reduced basis is one everywhere.
    for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let s: f64 = rows
            .iter()
            .filter(|r| (r[1].parse::<f64>().unwrap() - x).abs() < 1e-12)
            .map(|r| r[2].parse::<f64>().unwrap())
            .sum();
        assert!((s - 1.0).abs() < 1e-13, "sum at {x} = {s}");
    }
}

#[test]
fn export_symbols_json_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = run(&[
        "export",
        "--target",
        "symbols",
        "--p",
        "3",
        "--n",
        "8",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let dump: SymbolDump = serde_json::from_str(&text).unwrap();
    assert_eq!(
        dump,
        maxsplines::cli::symbol_dump(3, 8, maxsplines::symbols::EConvention::Paper).unwrap()
    );
    assert!(dump.q <= FRAC_1_SQRT_2);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = run(&[
            "scan",
            "--quantity",
            "approx",
            "--p-max",
            "3",
            "--n-set",
            "8,16",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
