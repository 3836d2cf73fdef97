//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use spectral_ingham::cli::{execute, write_outcome, Check, Experiment, ExperimentConfig, Outcome};

struct Runs {
    cfg: ExperimentConfig,
    outcomes: HashMap<&'static str, (Outcome, Duration)>,
}

impl Runs {
    fn get(&mut self, e: Experiment) -> &(Outcome, Duration) {
        let cfg = &self.cfg;
        self.outcomes.entry(e.name()).or_insert_with(|| {
            let start = Instant::now();
            let out = execute(e, cfg).unwrap_or_else(|err| panic!("{e}: {err}"));
            (out, start.elapsed())
        })
    }

    /// Checks of `e` whose names start with any of `prefixes`.
    fn checks(&mut self, e: Experiment, prefixes: &[&str]) -> Vec<Check> {
        let selected: Vec<Check> = self
            .get(e)
            .0
            .checks
            .iter()
            .filter(|c| prefixes.iter().any(|p| c.name.starts_with(p)))
            .cloned()
            .collect();
        assert!(!selected.is_empty(), "{e} has no checks matching {prefixes:?}");
        selected
    }
}

fn report(id: &str, title: &str, checks: &[Check], extra: Option<(bool, String)>) -> bool {
    let mut ok = checks.iter().all(|c| c.passed);
    let mut details: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    if let Some((extra_ok, msg)) = extra {
        ok &= extra_ok;
        details.push(msg);
    }
    let summary = if details.is_empty() { format!("{} checks", checks.len()) } else { details.join("; ") };
    println!("{id} {} {title}: {summary}", if ok { "PASS" } else { "FAIL" });
    ok
}

#[test]
fn acceptance() {
    let mut runs = Runs { cfg: ExperimentConfig::default(), outcomes: HashMap::new() };
    let mut results = Vec::new();

    let gram = runs.checks(Experiment::Orthocheck, &["gram "]);
    let elapsed = runs.get(Experiment::Orthocheck).1;
    let families: Vec<&str> = ["hermite", "laguerre delta=0.0", "laguerre delta=0.5", "laguerre delta=1.0", "psi n=1", "psi n=2", "psi n=3", "S^2", "RP^3", "CP^2", "HP^2", "CaP^2"].to_vec();
    let covered = families.iter().all(|f| gram.iter().any(|c| c.name.contains(f)));
    results.push(report(
        "AC1",
        "orthonormality",
        &gram,
        Some((covered && elapsed.as_secs_f64() <= 60.0, format!("{:.2} s, all families covered: {covered}", elapsed.as_secs_f64()))),
    ));

    let norming = runs.checks(Experiment::Orthocheck, &["psi norming"]);
    results.push(report("AC2", "radial norming constants", &norming, None));

    let rho = runs.checks(Experiment::SpacesVerify, &["rho identity"]);
    results.push(report("AC3", "catalog identities", &rho, Some((rho.len() == 5, format!("{} spaces", rho.len())))));

    let kernel = runs.checks(Experiment::KernelBounds, &["kernel formula", "kernel trace"]);
    results.push(report("AC4", "kernel oracle equivalence", &kernel, None));

    let bounds = runs.checks(Experiment::KernelBounds, &["Laguerre four-region", "diagonal kernel bound"]);
    results.push(report("AC5", "Laguerre envelope and diagonal bound", &bounds, None));

    let moments = runs.checks(Experiment::Moments, &["moment log-convexity", "Cauchy-Schwarz", "a_m bound"]);
    results.push(report("AC6", "moment machinery", &moments, None));

    let chernoff = runs.checks(Experiment::ChernoffDemo, &["gaussian", "prescribed"]);
    results.push(report("AC7", "Carleman contrast", &chernoff, None));

    let ingham = runs.checks(Experiment::InghamBuild, &["samples vanish", "grid Fourier", "fitted envelope"]);
    results.push(report("AC8", "Ingham product", &ingham, None));

    let jacobi = runs.checks(Experiment::JacobiTransfer, &["synthesized h", "re-analysis"]);
    results.push(report("AC9", "Jacobi transfer round trip", &jacobi, None));

    let hermite = runs.checks(Experiment::HermiteTransfer, &["even levels", "odd levels"]);
    results.push(report("AC10", "even Hermite transfer", &hermite, None));

    let fourier = runs.checks(Experiment::FourierDecay, &["Fourier envelope"]);
    results.push(report("AC11", "Fourier decay transfer", &fourier, None));

    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let mut mismatched = Vec::new();
    for e in Experiment::ALL {
        let first = runs.get(e).0.clone();
        let second = execute(e, &runs.cfg).unwrap();
        let files_a = write_outcome(e, &runs.cfg, &first, dir_a.path()).unwrap();
        let files_b = write_outcome(e, &runs.cfg, &second, dir_b.path()).unwrap();
        let same_files = files_a.iter().zip(&files_b).all(|(a, b)| std::fs::read(a).unwrap() == std::fs::read(b).unwrap());
        if first.tables != second.tables || files_a.len() != files_b.len() || !same_files {
            mismatched.push(e.name());
        }
    }
    results.push(report(
        "AC12",
        "deterministic CSV output",
        &[],
        Some((mismatched.is_empty(), format!("{} subcommands, mismatched: {mismatched:?}", Experiment::ALL.len()))),
    ));

    for e in Experiment::ALL {
        let (outcome, elapsed) = runs.get(e);
        for c in outcome.failures() {
            println!("  {e}: FAIL {} ({})", c.name, c.detail);
        }
        println!("  {e}: {} checks in {:.2} s", outcome.checks.len(), elapsed.as_secs_f64());
    }
    assert!(results.iter().all(|&ok| ok), "acceptance criteria failed");
}
