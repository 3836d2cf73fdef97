use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_spectral-ingham");

fn run(args: &[&str], env: &[(&str, &str)]) -> std::process::Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn orthocheck_writes_gram_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["orthocheck", "--quiet", "--out", dir.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("orthocheck.csv")).unwrap();
    assert!(csv.starts_with("family,parameter,k_max,max_offdiag,max_diag_err\n"));
    assert!(dir.path().join("orthocheck.config").exists());
}

#[test]
fn chernoff_gaussian_sums_are_linear() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["chernoff-demo", "--out", dir.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("chernoff.csv")).unwrap();
    for (m, line) in csv.lines().skip(1).enumerate() {
        let partial: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(partial, (m + 1) as f64);
    }
}

#[test]
fn malformed_config_exits_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.config");
    std::fs::write(&path, "k_max = 10\n  colour = red\n").unwrap();
    let out = run(&["orthocheck", "--config", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:3"));
}

#[test]
fn mismatched_experiment_and_unknown_space_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.config");
    std::fs::write(&path, "experiment = parseval\n").unwrap();
    let out = run(&["orthocheck", "--config", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&path, "space = S^0x\n").unwrap();
    let out = run(&["spaces-verify", "--config", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_variable_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["spaces-verify", "-q", "--out", d], &[("SPECTRAL_INGHAM_THREADS", "zero")]).status.code(), Some(2));
    assert_eq!(run(&["spaces-verify", "-q", "--out", d], &[("SPECTRAL_INGHAM_THREADS", "2")]).status.code(), Some(0));
}

#[test]
fn failing_check_exits_one() {
    // A wide bump has sidelobes in its level norms.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.config");
    std::fs::write(&path, "bump_radius = 1.0\n").unwrap();
    let out = run(&["splhermite-decay", "--config", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL norms decrease"));
}

#[test]
fn help_documents_csv_schemas() {
    let out = run(&["--help"], &[]);
    let text = String::from_utf8_lossy(&out.stdout);
    for cmd in ["orthocheck", "chernoff-demo", "fourier-decay", "hermite-transfer"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
    let sub = run(&["kernel-bounds", "--help"], &[]);
    assert!(String::from_utf8_lossy(&sub.stdout).contains("kernel_oracle.csv"));
}
