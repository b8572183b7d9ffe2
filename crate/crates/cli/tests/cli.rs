use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coulombgap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(s: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = s.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn lookup(rows: &[Vec<String>], key: &str) -> f64 {
    rows.iter().find(|r| r[0] == key).unwrap_or_else(|| panic!("no {key}"))[1].parse().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_sextic_gap_constants() {
    let o = run(&["analyze", "--n", "100,200"]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["quantity", "value"]);
    assert!((lookup(&rows, "B") - 0.33157).abs() < 1e-5);
    assert!((lookup(&rows, "r1") - 0.3178021309).abs() < 1e-8);
    assert!((lookup(&rows, "r2") - 1.9462344211).abs() < 1e-8);
    // Bn/2 = m + x.
    let x = lookup(&rows, "x_n200");
    let m = lookup(&rows, "m_n200");
    assert!((m + x - 100.0 * lookup(&rows, "B")).abs() < 1e-12);
}

#[test]
fn analyze_ginibre_reports_no_gap() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "g.toml", "potential.coeffs = [1.0]\n");
    let o = run(&["--config", &cfg, "analyze"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no gap"));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(lookup(&rows, "outer_radius"), 1.0);
    assert_eq!(lookup(&rows, "gap_count"), 0.0);
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["potential.coeffs = [1.0\n", "potential.cofs = [1.0]\n", "run.n = [5]\n", "lambda.kind = \"wave\"\nlambda.support = [0, 1]\n"] {
        let cfg = write_config(dir.path(), "bad.toml", text);
        let o = run(&["--config", &cfg, "analyze"]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run(&["--config", "/nonexistent/x.toml", "analyze"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--svg"]).status.code(), Some(2));
}

#[test]
fn density_residual_is_exact_minus_predicted() {
    let o = run(&["density", "--n", "60", "--t-grid", "-1:1:0.5", "--edge", "r1", "--mode", "both"]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["t", "z", "exact", "predicted", "residual"]);
    assert_eq!(rows.len(), 5);
    for r in &rows {
        let v: Vec<f64> = r.iter().map(|c| c.parse().unwrap()).collect();
        assert_eq!(v[4], v[2] - v[3]);
    }
    let o = run(&["density", "--n", "60", "--t-grid", "0", "--mode", "exact"]);
    assert_eq!(csv_rows(&stdout(&o)).0, ["t", "z", "exact"]);
}

#[test]
fn density_outer_edge_on_ginibre() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "g.toml", "potential.coeffs = [1.0]\n");
    let o = run(&["--config", &cfg, "density", "--n", "200", "--t-grid", "0", "--edge", "outer"]);
    assert!(o.status.success());
    let (_, rows) = csv_rows(&stdout(&o));
    let pred: f64 = rows[0][3].parse().unwrap();
    let want = 100.0 - (200.0 / (2.0 * std::f64::consts::PI)).sqrt() / 3.0;
    assert!((pred - want).abs() < 1e-9);
    // A gap edge on a disk droplet is a usage error.
    assert_eq!(run(&["--config", &cfg, "density", "--edge", "r1"]).status.code(), Some(2));
}

#[test]
fn cgf_routes_and_zero_row() {
    let o = run(&["cgf", "--n", "20", "--t", "-0.5:0.5:0.5", "--routes", "predicted,product"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["t", "product", "predicted"]);
    let zero = rows.iter().find(|r| r[0].parse::<f64>().unwrap() == 0.0).unwrap();
    assert_eq!(zero[1..].iter().map(|c| c.parse::<f64>().unwrap()).collect::<Vec<_>>(), [0.0, 0.0]);
    // Outside |t| ≤ log n the prediction is not defined.
    assert_eq!(run(&["cgf", "--n", "20", "--t", "4", "--routes", "predicted"]).status.code(), Some(2));
}

#[test]
fn cgf_product_and_ward_agree() {
    let o = run(&["cgf", "--n", "15", "--t", "0.7", "--routes", "product,ward"]);
    let (_, rows) = csv_rows(&stdout(&o));
    let a: f64 = rows[0][1].parse().unwrap();
    let b: f64 = rows[0][2].parse().unwrap();
    assert!((a - b).abs() < 1e-6 * a.abs());
}

#[test]
fn sample_is_byte_identical_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var("COULOMBGAP_CACHE", dir.path().join("cache"));
    let args = ["sample", "--n", "30", "--count", "50", "--seed", "42", "--lambda", "gap"];
    let a = run(&args);
    let b = run(&["--threads", "1", "sample", "--n", "30", "--count", "50", "--seed", "42", "--lambda", "gap"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(csv_rows(&stdout(&a)).1.len(), 50);
    let c = run(&["sample", "--n", "30", "--count", "50", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn out_dir_gets_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res");
    let o = run(&["--out", out.to_str().unwrap(), "--svg", "cgf", "--n", "12", "--t", "-1:1:1", "--routes", "product"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(out.join("cgf.csv")).unwrap();
    let svg = std::fs::read_to_string(out.join("cgf.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), csv.lines().count() - 1);
    // No temporary files left behind.
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 2);
}

#[test]
fn kernel2pt_columns() {
    let o = run(&["kernel2pt", "--n", "60", "--t-grid", "-0.5,0.5", "--placement", "r1r2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(
        h,
        ["t", "z_re", "z_im", "w_re", "w_im", "exact_re", "exact_im", "predicted_re", "predicted_im"]
    );
    for r in rows {
        let v: Vec<f64> = r.iter().map(|c| c.parse().unwrap()).collect();
        let (k, p) = ((v[5] * v[5] + v[6] * v[6]).sqrt(), (v[7] * v[7] + v[8] * v[8]).sqrt());
        assert!((k - p).abs() < 0.15 * k, "{k} vs {p}");
    }
}

#[test]
fn verify_sextic_edges_and_series() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["--out", dir.path().to_str().unwrap(), "--svg", "verify", "--n", "30:120:10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = csv_rows(&std::fs::read_to_string(dir.path().join("verify.csv")).unwrap());
    assert_eq!(h, ["check", "n", "residual", "bound", "pass"]);
    assert!(rows.iter().all(|r| r[4] == "true"));
    assert!(rows.iter().any(|r| r[0] == "edge.r1.residual" && r[1] == "120"));
    let (sh, srows) = csv_rows(&std::fs::read_to_string(dir.path().join("verify_series.csv")).unwrap());
    assert_eq!(sh[..3], ["n", "raw_r1", "residual_r1"]);
    assert_eq!(srows.len(), 10);
    // The raw r1 series is O(1) and not flat; the residual stays bounded.
    let raw: Vec<f64> = srows.iter().map(|r| r[1].parse().unwrap()).collect();
    let res: Vec<f64> = srows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(raw.iter().all(|v| v.abs() < 2.0));
    assert!(raw.iter().cloned().fold(f64::MIN, f64::max) - raw.iter().cloned().fold(f64::MAX, f64::min) > 0.01);
    assert!(res.iter().all(|v| v.abs() < 1.0));
    assert!(dir.path().join("verify_raw.svg").exists());
    assert!(dir.path().join("verify_residual.svg").exists());
}

#[test]
fn verify_ginibre_outer_edge_is_bounded() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "g.toml", "potential.coeffs = [1.0]\nrun.n = [50, 100, 200, 400]\n");
    let o = run(&["--config", &cfg, "verify", "edge"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    let outer: Vec<f64> = rows.iter().filter(|r| r[0] == "edge.outer.residual").map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(outer.len(), 4);
    assert!(outer.iter().all(|v| v.abs() < 0.2));
}

#[test]
fn verify_specfun_and_empty_n_list() {
    let o = run(&["verify", "specfun"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert!(rows.len() >= 4 && rows.iter().all(|r| r[0].starts_with("specfun.") && r[4] == "true"));
    assert_eq!(run(&["verify", "--n", ""]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "e.toml", "run.n = []\n");
    assert_eq!(run(&["--config", &cfg, "verify"]).status.code(), Some(2));
}

#[test]
fn config_lambda_and_grid_are_used() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.toml",
        "potential.coeffs = [1.8, -0.8, 0.1]\nlambda.kind = \"poly\"\nlambda.support = [0.1, 0.2]\nrun.n = [20]\nrun.t_grid = \"0.5,1\"\n",
    );
    // λ vanishes at both gap edges, so there is no oscillating term and the
    // prediction is a pure quadratic in t.
    let o = run(&["--config", &cfg, "cgf", "--routes", "predicted"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0].parse::<f64>().unwrap(), 0.5);
}

#[test]
fn help_documents_columns() {
    let o = run(&["cgf", "--help"]);
    assert!(stdout(&o).contains("t,product,ward,predicted"));
    let o = run(&["verify", "--help"]);
    assert!(stdout(&o).contains("check,n,residual,bound,pass"));
}
