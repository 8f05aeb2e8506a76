use std::sync::OnceLock;

use wavebound::formulation::{crest_trough_sides, residual_report};
use wavebound::solver::io::{read_jsonl, write_jsonl, write_summary_csv, SUMMARY_HEADER};
use wavebound::solver::{
    continue_branch, find_bifurcation, newton_solve, Branch, Constraint, ContinuationConfig, FreeParams, StopKind,
};
use wavebound::spectral::VERIFY_POINTS;

const G: f64 = 9.81;

fn branch() -> &'static Branch {
    static B: OnceLock<Branch> = OnceLock::new();
    B.get_or_init(|| continue_branch(G, 1.0, -1.0, &ContinuationConfig::default()).unwrap())
}

#[test]
fn branch_leaves_the_bifurcation_point() {
    let b = branch();
    let first = &b.points[0];
    assert!((first.params.m - b.bifurcation.m).abs() < 1e-6 * b.bifurcation.m.abs());
    assert!(b.points.len() >= 5);
    assert!(b.points.windows(2).all(|w| w[1].arclength_s > w[0].arclength_s));
    assert!(b.max_amplitude() > 0.1);
    assert_eq!(b.stop.kind, StopKind::StepCollapse);
}

#[test]
fn every_point_is_an_admissible_solution() {
    for p in &branch().points {
        assert!(p.residual() < 1e-10, "s = {}: {}", p.arclength_s, p.residual());
        assert!(p.residuals.nodal_ok && p.min_stag_margin() > 0.0);
        let (l, r) = crest_trough_sides(&p.params, &p.f()).unwrap();
        assert!((l - r).abs() < 1e-9);
    }
}

#[test]
fn solutions_stay_solutions_on_a_finer_grid() {
    for p in branch().points.iter().step_by(3) {
        let fine = p.eta.resample(VERIFY_POINTS).unwrap();
        let r = residual_report(&p.params, &fine).unwrap();
        assert!(r.babenko_res < 1e-9, "s = {}: {}", p.arclength_s, r.babenko_res);
    }
}

#[test]
fn amplitude_constraint_reaches_target() {
    let b = branch();
    let start = &b.points[b.points.len() / 2];
    let target = start.amplitude * 1.01;
    let free = FreeParams::Both(Constraint::Amplitude(target));
    let p = newton_solve(start, &free, &ContinuationConfig::default()).unwrap();
    assert!((p.amplitude - target).abs() < 1e-10);
    assert!(p.residual() < 1e-10);
}

#[test]
fn branch_file_round_trips_exactly() {
    let b = branch();
    let cfg = serde_json::json!({"physics.gamma": -1.0});
    let mut buf = Vec::new();
    write_jsonl(&mut buf, &cfg, Some(&b.bifurcation), &b.points, Some(&b.stop)).unwrap();
    let back = read_jsonl(buf.as_slice()).unwrap();
    assert_eq!(back.config, cfg);
    assert_eq!(back.points.len(), b.points.len());
    // coefficients are the stored form; nodal values are resynthesized
    for (p, q) in b.points.iter().zip(&back.points) {
        assert_eq!(p.params, q.params);
        assert_eq!(p.eta.cos_coeffs(), q.eta.cos_coeffs());
        assert_eq!(
            (p.amplitude, p.slope_n, p.convexity_m),
            (q.amplitude, q.slope_n, q.convexity_m)
        );
        assert_eq!(p.residuals, q.residuals);
        assert!(p.eta.sub(&q.eta).sup_norm() < 1e-15);
    }
    assert_eq!(back.stop, Some(b.stop));
    assert_eq!(back.bifurcation.as_ref().map(|x| x.m), Some(b.bifurcation.m));

    let mut csv = Vec::new();
    write_summary_csv(&mut csv, &cfg, &b.points).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], SUMMARY_HEADER);
    assert_eq!(rows.len(), b.points.len() + 1);
}

#[test]
fn adverse_and_still_water_branches_exist() {
    for gamma in [0.0, 0.5] {
        let b = find_bifurcation(G, 2.0, gamma).unwrap();
        assert!(b.m < 0.0 && b.q > 0.0);
    }
}
