use std::f64::consts::FRAC_PI_2;
use std::path::Path;
use std::process::{Command, Output};

use wavebound::solver::io::read_jsonl;
use wavebound::spectral::KernelTable;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavebound"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn kernel_table_is_readable_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["kernel", "--depth", "0.5", "--samples", "200"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("kernel.csv")).unwrap();
    assert!(text.starts_with("# version = "));
    let t = KernelTable::read_csv(text.as_bytes(), 0.5).unwrap();
    assert_eq!(t.samples.len(), 200);
    assert!(t.samples.windows(2).all(|w| w[1].beta < w[0].beta));
    assert!(t.samples.iter().all(|s| s.beta > 0.0 && s.beta_prime < 0.0));
    let mid = t
        .samples
        .iter()
        .min_by(|a, b| (a.s - FRAC_PI_2).abs().total_cmp(&(b.s - FRAC_PI_2).abs()))
        .unwrap();
    assert!(mid.beta > 0.363);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&run(p, &["kernel", "--from", "2", "--to", "1"])), 2);
    assert_eq!(code(&run(p, &["transmogrify"])), 2);
    assert_eq!(code(&run(p, &["bounds", "--config", "/no/such/file.cfg"])), 2);
    assert_eq!(
        code(&run(
            p,
            &["bounds", "--gamma", "-1", "--flux", "-3", "--route", "adverse"]
        )),
        2
    );
    assert_eq!(code(&run(p, &["branch", "--depth", "-1"])), 2);
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "[physics]\ngamma = -1\nflux = -3\ndepth = 3\n").unwrap();
    let o = run(
        dir.path(),
        &["bounds", "--config", cfg.to_str().unwrap(), "--depth", "1"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let j = json(&dir.path().join("bounds.json"));
    assert_eq!(j["config"]["physics.depth"], 1.0);
    assert_eq!(j["config"]["physics.gamma"], -1.0);
    assert_eq!(j["reports"][0]["bound_value"], 2.0);
    assert_eq!(j["version"], wavebound::VERSION);
}

#[test]
fn branch_then_bounds_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = run(p, &["branch", "--gamma", "-1", "--grid", "64"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let file = p.join("branch.jsonl");
    let b = read_jsonl(std::io::BufReader::new(std::fs::File::open(&file).unwrap())).unwrap();
    assert!(b.points.len() > 3 && b.stop.is_some());
    let summary = std::fs::read_to_string(p.join("branch_summary.csv")).unwrap();
    assert_eq!(
        summary.lines().filter(|l| !l.starts_with('#')).count(),
        b.points.len() + 1
    );

    let first = std::fs::read(&file).unwrap();
    assert_eq!(code(&run(p, &["branch", "--gamma", "-1", "--grid", "64"])), 0);
    assert_eq!(std::fs::read(&file).unwrap(), first, "rerun is not byte-identical");

    let f = file.to_str().unwrap();
    assert_eq!(code(&run(p, &["bounds", "--mode", "aposteriori", "--branch", f])), 0);
    let j = json(&p.join("bounds.json"));
    assert_eq!(j["mode"], "aposteriori");

    let o = run(p, &["verify", "--branch", f, "--synthetic", "20"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&p.join("verify.json"));
    assert!(v["reports"].as_array().unwrap().len() > 60);
}

#[test]
fn corrupted_branch_fails_the_audit() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "{\"record\":\"point\",\"oops\":1}\n").unwrap();
    assert_eq!(
        code(&run(dir.path(), &["verify", "--branch", bad.to_str().unwrap()])),
        4
    );
}

#[test]
fn unreachable_amplitude_is_a_solver_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["solve", "--gamma", "-1", "--grid", "64", "--amplitude", "5"],
    );
    assert_eq!(code(&o), 3);
}

#[test]
fn sweep_writes_one_row_per_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "sweep",
            "--flux",
            "-3",
            "--gamma-from",
            "-1",
            "--gamma-to",
            "0.05",
            "--count",
            "8",
            "--workers",
            "2",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);
}

#[test]
fn sample_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        wavebound::config::RunConfig::from_file(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        n += 1;
    }
    assert!(n >= 3);
}
