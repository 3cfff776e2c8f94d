use toric_core::invariants::area;
use toric_lab::corpus::{convex_4d_corpus, monotone_corpus, star_shaped_corpus};
use toric_lab::experiments::{run_fc_scan, sweep_input};
use toric_lab::tables::{read_sweep_csv, write_sweep_csv, SCHEMA_LINE};
use toric_lab::{run_corpus_bounds, run_sweep, LabError, RunConfig, SweepOp};

fn strangulation(grid: &[f64]) -> RunConfig {
    RunConfig { op: SweepOp::Strangulate, profile: "ball:2".into(), eps_grid: grid.to_vec(), ..RunConfig::default() }
}

fn strain(profile: &str, grid: &[f64], flatten: Option<f64>) -> RunConfig {
    RunConfig { op: SweepOp::Strain, profile: profile.into(), eps_grid: grid.to_vec(), flatten_radius: flatten, ..RunConfig::default() }
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("toric-lab-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn empty_grid_gives_header_only_csv() {
    let path = tmp("empty.csv");
    let rows = run_sweep(&RunConfig { csv: Some(path.clone()), ..strangulation(&[]) }).unwrap();
    assert!(rows.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], SCHEMA_LINE);
    assert!(lines[1].starts_with("eps,area,ruelle,t_min,sys,ru,product,bound_value,bound_holds"));
}

#[test]
fn rows_sorted_descending_and_consistent() {
    let rows = run_sweep(&strangulation(&[0.01, 0.2, 0.05])).unwrap();
    let eps: Vec<f64> = rows.iter().map(|r| r.eps).collect();
    assert_eq!(eps, vec![0.2, 0.05, 0.01]);
    for r in &rows {
        let expected = r.ruelle.unwrap() * r.t_min.unwrap() / (2.0 * r.area.unwrap());
        assert!((r.product.unwrap() - expected).abs() <= 1e-12 * expected);
        assert!(r.t_min.unwrap() <= 2.0 * r.eps + 1e-12);
        assert!(r.volume_delta.unwrap().abs() <= r.volume_delta_bound.unwrap());
        assert_eq!(r.bound_holds, Some(r.sys.unwrap() <= r.bound_value.unwrap() + 1e-9));
    }
}

#[test]
fn surgery_errors_stay_in_their_row() {
    let rows = run_sweep(&strangulation(&[5.0, 0.1])).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].error.as_deref().unwrap().contains("w*"));
    assert!(rows[0].product.is_none() && rows[0].bound_holds.is_none());
    assert!(rows[1].error.is_none());
}

#[test]
fn bad_profile_is_fatal() {
    assert!(matches!(run_sweep(&strangulation(&[0.1]).clone_with_profile("ball:-1")), Err(LabError::Core(_))));
}

trait WithProfile {
    fn clone_with_profile(&self, p: &str) -> RunConfig;
}

impl WithProfile for RunConfig {
    fn clone_with_profile(&self, p: &str) -> RunConfig {
        RunConfig { profile: p.into(), ..self.clone() }
    }
}

#[test]
fn strain_rows() {
    let grid = [1e-2, 1e-3, 1e-4, 1e-5];
    let rows = run_sweep(&strain("ellipsoid:1,4", &grid, None)).unwrap();
    let mut last = 0.0;
    for r in &rows {
        assert_eq!(r.ruelle, Some(4.0 + 1.0 / r.eps.sqrt()));
        let d = r.volume_delta.unwrap();
        assert!(d >= 0.0 && d <= r.eps.sqrt() / 2.0 + 1e-9);
        assert!(r.product.unwrap() > last);
        last = r.product.unwrap();
        assert_eq!(r.alt_bound_holds, Some(true));
    }
}

#[test]
fn strain_on_flattened_fc_grows_without_bound() {
    let config = strain("fc:2,0.8,32", &[1e-4, 1e-5, 1e-6], Some(0.01));
    let input = sweep_input(&config).unwrap();
    assert!(input.segments()[0].is_line());
    let rows = run_sweep(&config).unwrap();
    let products: Vec<f64> = rows.iter().map(|r| r.product.unwrap()).collect();
    assert!(products.windows(2).all(|w| w[1] > w[0]), "{products:?}");
    assert!(*products.last().unwrap() > 3.0);
    assert!(rows.iter().all(|r| r.strictly_monotone == Some(true)));
}

#[test]
fn sweep_output_is_deterministic() {
    let (a, b) = (tmp("det_a.csv"), tmp("det_b.csv"));
    let grid = [0.2, 0.1, 0.05, 0.02, 0.01];
    run_sweep(&RunConfig { csv: Some(a.clone()), ..strangulation(&grid) }).unwrap();
    run_sweep(&RunConfig { csv: Some(b.clone()), ..strangulation(&grid) }).unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn sweep_csv_reads_back() {
    let rows = run_sweep(&strangulation(&[0.1, 7.0])).unwrap();
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &rows).unwrap();
    assert_eq!(read_sweep_csv(std::str::from_utf8(&buf).unwrap()).unwrap(), rows);
}

#[test]
fn corpora_are_reproducible_and_consistent() {
    assert_eq!(star_shaped_corpus(5, 3), star_shaped_corpus(5, 3));
    assert_ne!(star_shaped_corpus(5, 3), star_shaped_corpus(5, 4));
    for p in monotone_corpus(30, 1).iter().chain(&convex_4d_corpus(30, 1)) {
        assert!(toric_lab::experiments::hierarchy_consistent(p));
        assert!(area(p) > 0.0);
    }
}

#[test]
fn corpus_summary() {
    let config = RunConfig { corpus_size: 30, seed: 11, ..RunConfig::default() };
    let s = run_corpus_bounds(&config).unwrap();
    assert_eq!(s, run_corpus_bounds(&config).unwrap());
    assert_eq!(s.violations(), 0);
    assert_eq!(s.strict_not_monotone, 0);
    assert!(s.t_min_equals_gromov > 0);
    for r in &s.polydisks {
        assert!((r.product - r.expected).abs() <= 1e-12);
    }
}

#[test]
fn fc_scan_rejects_c_outside_range() {
    assert!(run_fc_scan(1.0, &[0.4]).is_err());
    assert!(run_fc_scan(1.0, &[1.0]).is_err());
    assert!(run_fc_scan(-1.0, &[0.5]).is_err());
    let s = run_fc_scan(1.0, &[]).unwrap();
    assert!(s.rows.is_empty());
}

#[test]
fn polydisk_strain_with_vertical_edge() {
    let rows = run_sweep(&strain("polydisk:1,2", &[1e-2], None)).unwrap();
    assert!(rows[0].error.is_none(), "{:?}", rows[0].error);
    assert_eq!(rows[0].w_star, Some(1.0));
}
