use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spectral_ingham::cli::{execute, load_config, write_outcome, CliError, Experiment, THREADS_ENV};

/// Spectral expansions, projection kernels and Ingham-type constructions.
///
/// Every subcommand writes its CSV tables and the canonical config it ran
/// with into `--out`, then prints one PASS/FAIL line per check. Exit status
/// is 0 when all checks pass, 1 on a failed check or numerical error, and 2
/// for invalid configuration.
#[derive(Parser, Debug)]
#[command(name = "spectral-ingham", version)]
struct Cli {
    /// Flat `key = value` config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides `out` in the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// RNG seed (overrides `seed` in the config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Only report failures.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Gram matrices of every basis.
    /// orthocheck.csv: family,parameter,k_max,max_offdiag,max_diag_err.
    /// norming.csv: n,k,computed,closed_form,rel_err.
    Orthocheck,
    /// Coefficient energy against the direct L² integral.
    /// parseval.csv: basis,k,coefficient,energy,cumulative_energy.
    Parseval,
    /// Carleman partial sums for a Gaussian and a fast-growing sequence.
    /// chernoff.csv: m,gaussian_partial,prescribed_term,prescribed_partial.
    ChernoffDemo,
    /// Spectral moments of random sequences and the a_m bound.
    /// moments.csv: sequence,log_convexity_excess,cs_violations.
    /// prop26.csv: m,log2_a_sq,log2_bound,carleman_partial.
    Moments,
    /// Rank-one symmetric space catalog and the ρ identity.
    /// spaces.csv: the catalog. rho.csv: name,checked,max_defect,max_jacobi_defect,sandwich,increasing.
    SpacesVerify,
    /// Hermite projection kernels and Laguerre envelopes.
    /// kernel_oracle.csv: pair,k,formula,brute_force,rel_err. kernel_trace.csv: k,trace,dimension.
    /// envelope.csv: delta,c,gamma_fit,gamma,checked,violations. lemma54.csv: k,r,phi_kk,bound.
    KernelBounds,
    /// Infinite-product bump of the configured decay profile.
    /// ingham_samples.csv: x,f. ingham_decay.csv: xi,log_abs_fhat,envelope.
    /// ingham_dilation.csv: delta,support_radius,mass,fhat_at_4.
    InghamBuild,
    /// Jacobi coefficients of the bump on a compact space.
    /// jacobi_transfer.csv: m,coefficient,certificate_bound. jacobi_synthesis.csv: s,h.
    JacobiTransfer,
    /// Special-Hermite level norms of a periodized radial profile.
    /// splhermite.csv: k,norm,cross_check,envelope.
    SplhermiteDecay,
    /// Hermite level norms of radial functions and odd-slice domination.
    /// hermite_transfer.csv: level,formula_norm,oracle_norm. hermite_odd.csv: k,slice_norm,full_norm.
    HermiteTransfer,
    /// Fourier decay of a Hermite series with prescribed coefficients.
    /// fourier_decay.csv: xi,abs_fhat,envelope,head,tail,chain_bound.
    FourierDecay,
}

impl Command {
    fn experiment(self) -> Experiment {
        match self {
            Command::Orthocheck => Experiment::Orthocheck,
            Command::Parseval => Experiment::Parseval,
            Command::ChernoffDemo => Experiment::ChernoffDemo,
            Command::Moments => Experiment::Moments,
            Command::SpacesVerify => Experiment::SpacesVerify,
            Command::KernelBounds => Experiment::KernelBounds,
            Command::InghamBuild => Experiment::InghamBuild,
            Command::JacobiTransfer => Experiment::JacobiTransfer,
            Command::SplhermiteDecay => Experiment::SplhermiteDecay,
            Command::HermiteTransfer => Experiment::HermiteTransfer,
            Command::FourierDecay => Experiment::FourierDecay,
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = match raw.trim().parse() {
        Ok(t) if t > 0 => t,
        _ => return Err(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("cannot start {threads} threads: {e}"))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let experiment = cli.command.experiment();
    let mut cfg = load_config(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.display().to_string();
    }
    let outcome = execute(experiment, &cfg)?;
    let written = write_outcome(experiment, &cfg, &outcome, &PathBuf::from(&cfg.out))?;
    for check in &outcome.checks {
        if check.passed {
            if !cli.quiet {
                println!("PASS {}: {}", check.name, check.detail);
            }
        } else {
            eprintln!("FAIL {}: {}", check.name, check.detail);
        }
    }
    if !cli.quiet {
        println!("wrote {} files to {}", written.len(), cfg.out);
    }
    Ok(outcome.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
