use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Check, Experiment, ExperimentConfig, Outcome, Table};
use crate::error::{param, Result};
use crate::expansion::{
    analyze, basis_rule, carleman_partial_sums, operator_norms, parseval_norm,
    weighted_basis_rows, CoefficientSequence, OperatorPowerNorms,
};
use crate::ingham::{
    default_decay_grid, dilate, even_reindex, hermite_coefficients_2d, ingham_product, jacobi_round_trip,
    jacobi_synthesize, jacobi_transfer, level_norms_2d, odd_reindex, periodize_t, prop67_even_transfer,
    prop67_odd_transfer, smooth_bump, splhermite_decay_report, verify_ingham_decay, HermiteTable,
};
use crate::kernels::{
    check_envelope, eigenspace_dimension, fit_envelope, fit_lemma54, hermite_fourier_decay, kernel_trace,
    lemma54_check, lemma54_grid, log_grid, phi_kernel,
};
use crate::orthopoly::{hermite_fns, laguerre_normalized_all, ln_gamma, BasisDescriptor, DEFAULT_DEGREE_CAP};
use crate::quadrature::{composite_legendre, default_node_count, gauss_rule, WeightFamily};
use crate::scaled::ScaledValue;
use crate::spaces::{catalog, standard_catalog, verify_rho_identity, write_catalog_csv, SpaceCatalogEntry, SpaceName};
use crate::summation::pairwise_sum;
use crate::uncertainty::{moment_cs_bound, moments, prop26_bound_check, prop26_check_fixed, DecayProfile};

pub(super) fn run(experiment: Experiment, cfg: &ExperimentConfig) -> Result<Outcome> {
    match experiment {
        Experiment::Orthocheck => orthocheck(cfg),
        Experiment::Parseval => parseval(cfg),
        Experiment::ChernoffDemo => chernoff_demo(cfg),
        Experiment::Moments => moments_experiment(cfg),
        Experiment::SpacesVerify => spaces_verify(cfg),
        Experiment::KernelBounds => kernel_bounds(cfg),
        Experiment::InghamBuild => ingham_build(cfg),
        Experiment::JacobiTransfer => jacobi_transfer_experiment(cfg),
        Experiment::SplhermiteDecay => splhermite_decay(cfg),
        Experiment::HermiteTransfer => hermite_transfer(cfg),
        Experiment::FourierDecay => fourier_decay(cfg),
    }
}

fn f(x: f64) -> String {
    format!("{x:?}")
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn theta_from(cfg: &ExperimentConfig) -> DecayProfile {
    DecayProfile::InversePower { c0: 1.0, c1: 1.0, p: cfg.theta_power }
}

pub(crate) fn parse_space(name: &str) -> Option<SpaceName> {
    let num = |s: &str| s.parse::<u32>().ok();
    if name == "CaP^2" {
        return Some(SpaceName::CayleyPlane);
    }
    let (head, tail) = name.split_once('^')?;
    let v = num(tail)?;
    match head {
        "S" => Some(SpaceName::Sphere(v)),
        "RP" => Some(SpaceName::RealProjective(v)),
        "CP" => Some(SpaceName::ComplexProjective(v)),
        "HP" => Some(SpaceName::QuaternionicProjective(v)),
        _ => None,
    }
}

fn selected_spaces(cfg: &ExperimentConfig) -> Result<Vec<SpaceCatalogEntry>> {
    if cfg.space == "all" {
        return Ok(standard_catalog());
    }
    let name = parse_space(&cfg.space).ok_or_else(|| param(format!("unknown space {:?}", cfg.space)))?;
    Ok(vec![catalog(name)?])
}

fn wants(cfg: &ExperimentConfig, basis: &str) -> bool {
    cfg.basis == "all" || cfg.basis == basis
}

/// Largest `|G_jk|/√(d_j d_k)` off the diagonal and `|G_kk/d_k - 1|` on it.
fn gram_errors(rows: &[Vec<f64>], expected: &[f64]) -> (f64, f64) {
    let kmax = expected.len() - 1;
    let per_row: Vec<(f64, f64)> = (0..=kmax)
        .into_par_iter()
        .map(|j| {
            let mut off: f64 = 0.0;
            let mut diag: f64 = 0.0;
            for k in j..=kmax {
                let g = pairwise_sum(&rows.iter().map(|r| r[j] * r[k]).collect::<Vec<_>>());
                if j == k {
                    diag = (g / expected[k] - 1.0).abs();
                } else {
                    off = off.max(g.abs() / (expected[j] * expected[k]).sqrt());
                }
            }
            (off, diag)
        })
        .collect();
    per_row.iter().fold((0.0, 0.0), |(o, d), &(a, b)| (o.max(a), d.max(b)))
}

/// `2^{n-1}(n-1)! · k!(n-1)!/(k+n-1)!` by exact products.
fn psi_norm_closed_form(n: usize, k: usize) -> f64 {
    let fact = |m: usize| (1..=m).map(|i| i as f64).product::<f64>();
    let mut ratio = 1.0;
    for i in 1..n {
        ratio *= i as f64 / (k + i) as f64;
    }
    2f64.powi(n as i32 - 1) * fact(n - 1) * ratio
}

fn orthocheck(cfg: &ExperimentConfig) -> Result<Outcome> {
    const TOL: f64 = 1e-8;
    let kmax = cfg.k_max;
    let mut rows_out: Vec<Vec<String>> = Vec::new();
    let mut checks = Vec::new();
    let mut record = |family: &str, parameter: String, k: usize, (off, diag): (f64, f64)| {
        checks.push(Check::at_most(format!("gram {family} {parameter} off-diagonal"), off, TOL));
        checks.push(Check::at_most(format!("gram {family} {parameter} diagonal"), diag, TOL));
        rows_out.push(vec![family.to_string(), parameter, k.to_string(), f(off), f(diag)]);
    };

    if wants(cfg, "hermite") {
        let basis = BasisDescriptor::hermite_line(kmax);
        let rule = basis_rule(&basis, default_node_count(kmax))?;
        let rows = weighted_basis_rows(&basis, kmax, &rule)?;
        record("hermite", "-".into(), kmax, gram_errors(&rows, &vec![1.0; kmax + 1]));
    }
    if wants(cfg, "laguerre") {
        for delta in [0.0, 0.5, 1.0] {
            let rule = gauss_rule(WeightFamily::GeneralizedLaguerre { delta }, default_node_count(kmax))?;
            let rows: Vec<Vec<f64>> = rule
                .nodes()
                .par_iter()
                .zip(rule.weights().par_iter())
                .map(|(&t, &w)| {
                    // Rule weights carry t^δ e^{-t}; 𝓛_k is orthonormal against dt.
                    let root = (w * ScaledValue::exp(t - delta * t.ln())).sqrt();
                    Ok(laguerre_normalized_all(kmax, delta, t, kmax.max(DEFAULT_DEGREE_CAP))?
                        .into_iter()
                        .map(|v| (v * root).to_f64())
                        .collect())
                })
                .collect::<Result<_>>()?;
            record("laguerre", format!("delta={delta:?}"), kmax, gram_errors(&rows, &vec![1.0; kmax + 1]));
        }
    }
    let mut norming_rows = Vec::new();
    let mut norming_worst = None;
    if wants(cfg, "psi") {
        let mut worst: f64 = 0.0;
        for n in 1..=3usize {
            let basis = BasisDescriptor::laguerre_radial(n, kmax)?;
            let rule = basis_rule(&basis, default_node_count(kmax))?;
            let rows = weighted_basis_rows(&basis, kmax, &rule)?;
            let expected: Vec<f64> = (0..=kmax).map(|k| basis.norm_sq(k)).collect();
            record("psi", format!("n={n}"), kmax, gram_errors(&rows, &expected));
            for k in 0..=kmax.min(64) {
                let computed = pairwise_sum(&rows.iter().map(|r| r[k] * r[k]).collect::<Vec<_>>());
                let closed = psi_norm_closed_form(n, k);
                let e = rel(computed, closed);
                worst = worst.max(e);
                norming_rows.push(vec![n.to_string(), k.to_string(), f(computed), f(closed), f(e)]);
            }
        }
        norming_worst = Some(worst);
    }
    if wants(cfg, "jacobi") {
        for entry in selected_spaces(cfg)? {
            let m = cfg.jacobi_max;
            let basis = BasisDescriptor::jacobi_compact(entry.alpha(), entry.beta(), m)?;
            let rule = basis_rule(&basis, default_node_count(m))?;
            let rows = weighted_basis_rows(&basis, m, &rule)?;
            let expected: Vec<f64> = (0..=m).map(|k| basis.norm_sq(k)).collect();
            record("jacobi", entry.name().to_string(), m, gram_errors(&rows, &expected));
        }
    }
    if let Some(worst) = norming_worst {
        checks.push(Check::at_most("psi norming constants", worst, 1e-10));
    }
    let mut tables =
        vec![Table::new("orthocheck", &["family", "parameter", "k_max", "max_offdiag", "max_diag_err"], rows_out)?];
    if !norming_rows.is_empty() {
        tables.push(Table::new("norming", &["n", "k", "computed", "closed_form", "rel_err"], norming_rows)?);
    }
    Ok(Outcome { tables, checks })
}

fn parseval(cfg: &ExperimentConfig) -> Result<Outcome> {
    const TOL: f64 = 1e-10;
    let kmax = cfg.k_max;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut record = |label: String, seq: &CoefficientSequence, exact: f64| {
        let norm_sq = parseval_norm(seq).powi(2);
        let mut cumulative = 0.0;
        for k in 0..seq.len() {
            cumulative += seq.energy(k);
            rows.push(vec![label.clone(), k.to_string(), f(seq.coeffs()[k].re), f(seq.energy(k)), f(cumulative)]);
        }
        checks.push(Check::at_most(format!("parseval {label}"), rel(norm_sq, exact), TOL));
    };
    if wants(cfg, "hermite") {
        let basis = BasisDescriptor::hermite_line(kmax);
        let seq = analyze(|x| (-(x - 0.3) * (x - 0.3)).exp(), &basis, kmax)?;
        record("hermite".into(), &seq, (0.5 * std::f64::consts::PI).sqrt());
    }
    if wants(cfg, "psi") || wants(cfg, "laguerre") {
        let n = cfg.n;
        let basis = BasisDescriptor::laguerre_radial(n, kmax)?;
        let seq = analyze(|r| (-0.5 * r * r).exp(), &basis, kmax)?;
        // ∫ e^{-r²} r^{2n-1} dr = Γ(n)/2
        record(format!("psi n={n}"), &seq, 0.5 * ln_gamma(n as f64).exp());
    }
    if wants(cfg, "jacobi") {
        for entry in selected_spaces(cfg)? {
            let m = cfg.jacobi_max;
            let basis = BasisDescriptor::jacobi_compact(entry.alpha(), entry.beta(), m)?;
            let seq = analyze(|s| s.cos().powi(2), &basis, m)?;
            let reference = composite_legendre(0.0, std::f64::consts::PI, 64, 16)?;
            let exact = reference.integrate(|s| s.cos().powi(4) * basis.weight(s))?;
            record(format!("jacobi {}", entry.name()), &seq, exact);
        }
    }
    Ok(Outcome {
        tables: vec![Table::new("parseval", &["basis", "k", "coefficient", "energy", "cumulative_energy"], rows)?],
        checks,
    })
}

const CHERNOFF_M: usize = 60;
const CHERNOFF_TAIL_FROM: usize = 40;

fn chernoff_demo(_cfg: &ExperimentConfig) -> Result<Outcome> {
    let gaussian = CoefficientSequence::eigenline(BasisDescriptor::hermite_line(8), 0, 8);
    let flat = carleman_partial_sums(&operator_norms(&gaussian, CHERNOFF_M));
    let ln_fast: Vec<f64> = (0..=CHERNOFF_M).map(|m| (m * m) as f64).collect();
    let fast = carleman_partial_sums(&OperatorPowerNorms::from_ln(&ln_fast));

    let exact_linear = flat.partial.iter().enumerate().all(|(i, &s)| s == (i + 1) as f64);
    // Terms are e^{-m/2}; beyond the table the remainder is geometric.
    let ratio = (-0.5f64).exp();
    let remainder = (-0.5 * (CHERNOFF_M + 1) as f64).exp() / (1.0 - ratio);
    let tail = fast.partial[CHERNOFF_M - 1] - fast.partial[CHERNOFF_TAIL_FROM - 1] + remainder;

    let rows = (1..=CHERNOFF_M).map(|m| {
        let term = fast.partial[m - 1] - if m > 1 { fast.partial[m - 2] } else { 0.0 };
        vec![m.to_string(), f(flat.partial[m - 1]), f(term), f(fast.partial[m - 1])]
    });
    Ok(Outcome {
        tables: vec![Table::new("chernoff", &["m", "gaussian_partial", "prescribed_term", "prescribed_partial"], rows)?],
        checks: vec![
            Check::new("gaussian partial sums equal M", exact_linear && !flat.diverges_trivially(), format!("S_{CHERNOFF_M} = {}", flat.partial[CHERNOFF_M - 1])),
            Check::at_most(format!("prescribed tail beyond M = {CHERNOFF_TAIL_FROM}"), tail, 1e-6),
        ],
    })
}

const MOMENT_SEQUENCES: usize = 100;
const MOMENT_LEN: usize = 24;

fn random_hermite_sequence(rng: &mut ChaCha8Rng) -> Result<CoefficientSequence> {
    let rate: f64 = rng.random_range(0.1..1.0);
    let coeffs: Vec<f64> =
        (0..MOMENT_LEN).map(|k| rng.random_range(-1.0..1.0) * (-rate * k as f64).exp()).collect();
    CoefficientSequence::from_real(BasisDescriptor::hermite_line(MOMENT_LEN), &coeffs)
}

fn moments_experiment(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let max_m = cfg.moment_max;
    let mut rows = Vec::new();
    let mut convexity_violations = 0;
    let mut cs_violations = 0;
    for i in 0..MOMENT_SEQUENCES {
        let seq = random_hermite_sequence(&mut rng)?;
        let excess = moments(&seq, max_m).log_convexity_excess();
        if excess > 1e-12 {
            convexity_violations += 1;
        }
        let mut bad = 0;
        for m in 0..=max_m {
            if !moment_cs_bound(&seq, m, 2)?.holds() {
                bad += 1;
            }
        }
        cs_violations += bad;
        rows.push(vec![i.to_string(), f(excess), bad.to_string()]);
    }
    let theta = DecayProfile::inverse_sqrt();
    let (rho, growth) = (0.5, 1);
    let full = prop26_bound_check(&theta, rho, growth, 5..=20)?;
    let calibration = prop26_bound_check(&theta, rho, growth, 5..=12)?;
    let validation = prop26_check_fixed(&theta, rho, growth, 13..=20, calibration.fitted_c)?;
    let prop_rows = full.rows.iter().map(|r| {
        vec![r.m.to_string(), f(r.log2_a_sq), f(r.log2_bound), f(r.carleman_partial)]
    });
    Ok(Outcome {
        tables: vec![
            Table::new("moments", &["sequence", "log_convexity_excess", "cs_violations"], rows)?,
            Table::new("prop26", &["m", "log2_a_sq", "log2_bound", "carleman_partial"], prop_rows)?,
        ],
        checks: vec![
            Check::new("moment log-convexity", convexity_violations == 0, format!("{convexity_violations} violations")),
            Check::new("Cauchy-Schwarz moment chain", cs_violations == 0, format!("{cs_violations} violations")),
            Check::new("a_m bound with one fitted C", full.violations == 0, format!("C = {:?}", full.fitted_c)),
            Check::new(
                "a_m bound on held-out m",
                validation.violations == 0,
                format!("C = {:?}, {} violations", calibration.fitted_c, validation.violations),
            ),
        ],
    })
}

const RHO_MAX_N: u64 = 256;

fn spaces_verify(cfg: &ExperimentConfig) -> Result<Outcome> {
    let entries = selected_spaces(cfg)?;
    let mut buf = Vec::new();
    write_catalog_csv(&entries, &mut buf)?;
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for e in &entries {
        let r = verify_rho_identity(e, RHO_MAX_N);
        checks.push(Check::new(format!("rho identity {}", e.name()), r.passed(), format!("{} indices", r.checked)));
        rows.push(vec![
            e.name().to_string(),
            r.checked.to_string(),
            f(r.max_defect),
            f(r.max_jacobi_defect),
            r.sandwich_holds.to_string(),
            r.increasing.to_string(),
        ]);
    }
    Ok(Outcome {
        tables: vec![
            Table { name: "spaces".into(), csv: String::from_utf8(buf).expect("csv output is UTF-8") },
            Table::new("rho", &["name", "checked", "max_defect", "max_jacobi_defect", "sandwich", "increasing"], rows)?,
        ],
        checks,
    })
}

/// `Σ_{|α|=k} Φ_α(x) Φ_α(y)` and `Σ |Φ_α(x) Φ_α(y)|` by enumeration.
pub(crate) fn brute_force_kernel(k: usize, x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let cap = k.max(DEFAULT_DEGREE_CAP);
    let hx: Vec<Vec<f64>> =
        x.iter().map(|&v| Ok(hermite_fns(k, v, cap)?.iter().map(|h| h.to_f64()).collect())).collect::<Result<_>>()?;
    let hy: Vec<Vec<f64>> =
        y.iter().map(|&v| Ok(hermite_fns(k, v, cap)?.iter().map(|h| h.to_f64()).collect())).collect::<Result<_>>()?;
    let mut terms = Vec::new();
    let mut idx = vec![0usize; x.len()];
    fn walk(pos: usize, left: usize, idx: &mut Vec<usize>, hx: &[Vec<f64>], hy: &[Vec<f64>], terms: &mut Vec<f64>) {
        if pos == idx.len() - 1 {
            idx[pos] = left;
            terms.push((0..idx.len()).map(|i| hx[i][idx[i]] * hy[i][idx[i]]).product());
            return;
        }
        for a in 0..=left {
            idx[pos] = a;
            walk(pos + 1, left - a, idx, hx, hy, terms);
        }
    }
    walk(0, k, &mut idx, &hx, &hy, &mut terms);
    let scale = pairwise_sum(&terms.iter().map(|t| t.abs()).collect::<Vec<_>>());
    Ok((pairwise_sum(&terms), scale))
}

const KERNEL_K: usize = 10;
const ENVELOPE_K: usize = 60;
const LEMMA54_K: usize = 40;

fn kernel_bounds(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut oracle_rows = Vec::new();
    let mut worst: f64 = 0.0;
    for pair in 0..cfg.samples {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        for k in 0..=KERNEL_K {
            let formula = phi_kernel(k, &x, &y)?;
            let (brute, scale) = brute_force_kernel(k, &x, &y)?;
            let e = (formula - brute).abs() / scale;
            worst = worst.max(e);
            oracle_rows.push(vec![pair.to_string(), k.to_string(), f(formula), f(brute), f(e)]);
        }
    }
    let mut trace_rows = Vec::new();
    let mut trace_worst: f64 = 0.0;
    for k in 0..=KERNEL_K {
        let t = kernel_trace(n, k)?;
        let d = eigenspace_dimension(n, k);
        trace_worst = trace_worst.max(rel(t, d));
        trace_rows.push(vec![k.to_string(), f(t), f(d)]);
    }

    let calibration = log_grid(1e-3, 400.0, 120);
    let validation = log_grid(1e-3, 400.0, 600);
    let fits = [0.0, 0.5, 1.0].map(|d| fit_envelope(d, ENVELOPE_K, &calibration));
    let fits = fits.into_iter().collect::<Result<Vec<_>>>()?;
    let gamma = fits.iter().map(|fit| fit.gamma).fold(f64::INFINITY, f64::min);
    let mut envelope_rows = Vec::new();
    let mut envelope_violations = 0;
    for fit in &fits {
        let (rows, violations) = check_envelope(fit, gamma, ENVELOPE_K, &validation)?;
        envelope_violations += violations;
        envelope_rows.push(vec![f(fit.delta), f(fit.c), f(fit.gamma), f(gamma), rows.len().to_string(), violations.to_string()]);
    }
    let c54 = fit_lemma54(n, LEMMA54_K, gamma, 8)?;
    let points: Vec<(usize, f64)> =
        (0..=LEMMA54_K).flat_map(|k| lemma54_grid(n, k, 64).into_iter().map(move |r| (k, r))).collect();
    let l54 = lemma54_check(n, &points, c54, gamma)?;
    let l54_rows = l54.rows.iter().map(|(k, r, phi, b)| vec![k.to_string(), f(*r), f(*phi), f(*b)]);

    Ok(Outcome {
        tables: vec![
            Table::new("kernel_oracle", &["pair", "k", "formula", "brute_force", "rel_err"], oracle_rows)?,
            Table::new("kernel_trace", &["k", "trace", "dimension"], trace_rows)?,
            Table::new("envelope", &["delta", "c", "gamma_fit", "gamma", "checked", "violations"], envelope_rows)?,
            Table::new("lemma54", &["k", "r", "phi_kk", "bound"], l54_rows)?,
        ],
        checks: vec![
            Check::at_most("kernel formula vs enumeration", worst, 1e-8),
            Check::at_most("kernel trace equals eigenspace dimension", trace_worst, 1e-6),
            Check::new("Laguerre four-region envelope", envelope_violations == 0 && gamma > 0.0, format!("gamma = {gamma:?}, {envelope_violations} violations")),
            Check::new(
                "diagonal kernel bound beyond the turning point",
                l54.violations == 0 && !l54.vacuous(),
                format!("C = {c54:?}, {} of {} points violate", l54.violations, l54.checked),
            ),
        ],
    })
}

const FOURIER_CHECK_MAX: f64 = 64.0;
const FOURIER_CHECK_POINTS: usize = 1024;
const DILATION_XI: f64 = 4.0;

fn ingham_build(cfg: &ExperimentConfig) -> Result<Outcome> {
    let theta = theta_from(cfg);
    let fun = ingham_product(&theta, cfg.factors)?;
    let a = fun.support_radius();
    let samples = fun.samples(0.25);
    let outside_nonzero = samples.iter().filter(|(x, v)| x.abs() > a && *v != 0.0).count();
    let outside = samples.iter().filter(|(x, _)| x.abs() > a).count();
    let fourier_err = (0..=FOURIER_CHECK_POINTS)
        .into_par_iter()
        .map(|i| {
            let xi = FOURIER_CHECK_MAX * i as f64 / FOURIER_CHECK_POINTS as f64;
            (fun.grid_fourier(xi) - fun.fourier(xi)).abs()
        })
        .reduce(|| 0.0, f64::max);
    let fit = verify_ingham_decay(&fun, &default_decay_grid(&fun));

    let mut dil_rows = Vec::new();
    let mut gaps = Vec::new();
    for d in [1.0, 0.5, 0.25, cfg.delta] {
        let g = dilate(&fun, d)?;
        let v = g.fourier(DILATION_XI);
        gaps.push((1.0 - v).abs());
        dil_rows.push(vec![f(d), f(g.support_radius()), f(g.mass()), f(v)]);
    }
    let configured = dilate(&fun, cfg.delta)?;
    let dilation_zero = configured
        .samples(0.25)
        .iter()
        .all(|(x, v)| x.abs() <= cfg.delta * a * (1.0 + 1e-12) || *v == 0.0);

    Ok(Outcome {
        tables: vec![
            Table::new("ingham_samples", &["x", "f"], samples.iter().map(|(x, v)| vec![f(*x), f(*v)]))?,
            Table::new(
                "ingham_decay",
                &["xi", "log_abs_fhat", "envelope"],
                fit.rows.iter().map(|r| vec![f(r.xi), f(r.ln_abs_fhat), f(r.envelope)]),
            )?,
            Table::new("ingham_dilation", &["delta", "support_radius", "mass", "fhat_at_4"], dil_rows)?,
        ],
        checks: vec![
            Check::new("samples vanish outside the support", outside_nonzero == 0 && outside > 0, format!("{outside} samples beyond A = {a:?}")),
            Check::at_most("mass is one", (fun.mass() - 1.0).abs(), 1e-12),
            Check::at_most("grid Fourier transform matches the product", fourier_err, 1e-6),
            Check::new("fitted envelope c0 >= 0.1", fit.c0 >= 0.1 && fit.c1 > 0.0, format!("c0 = {:?}, c1 = {:?}", fit.c0, fit.c1)),
            Check::new("dilation keeps the support", dilation_zero, format!("delta = {:?}", cfg.delta)),
            Check::new("dilated transform tends to one", gaps[0] > gaps[1] && gaps[1] > gaps[2], format!("{gaps:?}")),
        ],
    })
}

fn jacobi_transfer_experiment(cfg: &ExperimentConfig) -> Result<Outcome> {
    let entry = if cfg.space == "all" {
        catalog(SpaceName::Sphere(2))?
    } else {
        selected_spaces(cfg)?.remove(0)
    };
    let fun = ingham_product(&theta_from(cfg), cfg.factors)?;
    let seq = jacobi_transfer(&fun, entry.alpha(), entry.beta(), cfg.transfer_max)?;
    let points = 4 * cfg.grid_points;
    let grid: Vec<f64> = (1..points).map(|i| std::f64::consts::PI * i as f64 / points as f64).collect();
    let syn = jacobi_synthesize(&seq, &grid)?;
    let trip = jacobi_round_trip(&seq, cfg.transfer_max.min(128))?;
    let cert_rows = seq.certificate_rows();
    let cert_ok = cert_rows.iter().all(|r| r.coeff.abs() <= r.bound * (1.0 + 1e-12));
    Ok(Outcome {
        tables: vec![
            Table::new("jacobi_transfer", &["m", "coefficient", "certificate_bound"], cert_rows.iter().map(|r| vec![r.m.to_string(), f(r.coeff), f(r.bound)]))?,
            Table::new("jacobi_synthesis", &["s", "h"], syn.samples.iter().map(|(s, h)| vec![f(*s), f(*h)]))?,
        ],
        checks: vec![
            Check::new("certificate holds at every m", cert_ok, format!("C = {:?} for {}", seq.certificate(), entry.name())),
            Check::at_most("synthesized h outside the support window", syn.relative_outside(), 1e-4),
            Check::at_most("re-analysis reproduces the coefficients", trip.max_rel_err, 1e-6),
            Check::at_most("Parseval consistency", rel(trip.parseval_synth, trip.parseval_coeffs), 1e-8),
        ],
    })
}

const SPLHERMITE_T_RADIUS: f64 = 1.0;
/// The profile lives on ℂ¹.
const SPLHERMITE_N: usize = 1;

fn splhermite_decay(cfg: &ExperimentConfig) -> Result<Outcome> {
    let radius = cfg.bump_radius;
    let profile = periodize_t(move |r, t| smooth_bump(r, radius) * smooth_bump(t, SPLHERMITE_T_RADIUS), radius, SPLHERMITE_T_RADIUS)?;
    let g = |r: f64| profile.eval(r).re;
    let inside = g(radius * (1.0 - 1e-3)) != 0.0 && g(radius) == 0.0;
    let report = splhermite_decay_report(g, radius, SPLHERMITE_N, cfg.k_max)?;
    let rows = report.norms.iter().zip(&report.cross_check).enumerate().map(|(k, (a, b))| {
        let t = ((2 * k + SPLHERMITE_N) as f64).sqrt();
        let envelope = report.c * (-t * report.c0 / (1.0 + report.c1 * t).sqrt()).exp();
        vec![k.to_string(), f(*a), f(*b), f(envelope)]
    });
    Ok(Outcome {
        tables: vec![Table::new("splhermite", &["k", "norm", "cross_check", "envelope"], rows)?],
        checks: vec![
            Check::new("profile support equals the bump radius", inside, format!("radius = {radius:?}")),
            Check::at_most("norms agree with the expansion path", report.cross_check_error(), 1e-6),
            Check::new("norms decrease", report.monotone, format!("{} levels", report.norms.len())),
            Check::new("fitted envelope has a positive floor", report.has_floor(), format!("a = {:?}, c0 = {:?}, c1 = {:?}", report.floor, report.c0, report.c1)),
        ],
    })
}

const PROP67_K: usize = 30;
const ODD_TABLE_LEVEL: usize = 8;

fn hermite_transfer(cfg: &ExperimentConfig) -> Result<Outcome> {
    let radius = cfg.bump_radius;
    let g = move |r: f64| smooth_bump(r, radius);
    let even = prop67_even_transfer(g, radius, 1, PROP67_K)?;
    let oracle = level_norms_2d(&hermite_coefficients_2d(
        |r| g(std::f64::consts::SQRT_2 * r),
        radius / std::f64::consts::SQRT_2,
        2 * PROP67_K,
    )?);
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for (j, (a, b)) in even.norms.iter().zip(&oracle).enumerate() {
        if j % 2 == 0 {
            worst = worst.max(rel(*b, *a));
        }
        rows.push(vec![j.to_string(), f(*a), f(*b)]);
    }
    let odd_zero = even.norms.iter().skip(1).step_by(2).all(|&v| v == 0.0);
    let theta = theta_from(cfg);
    let reindex = even.check_envelope(&theta);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut entries = Vec::new();
    for a in 0..=ODD_TABLE_LEVEL {
        for b in 0..=ODD_TABLE_LEVEL - a {
            for j in 0..=ODD_TABLE_LEVEL - a - b {
                entries.push((vec![a, b, j], rng.random_range(-1.0..1.0)));
            }
        }
    }
    let odd = prop67_odd_transfer(&HermiteTable::new(3, entries)?, ODD_TABLE_LEVEL)?;
    let big = even_reindex(&theta);
    let composed = odd_reindex(&big);
    let composition_ok = log_grid(1e-2, 1e3, 64)
        .iter()
        .all(|&t| composed.eval(t) == big.eval((1.0 + t * t).sqrt()));
    let odd_rows = odd.slice_norms.iter().zip(&odd.full_norms).enumerate().map(|(k, (s, fl))| vec![k.to_string(), f(*s), f(*fl)]);
    Ok(Outcome {
        tables: vec![
            Table::new("hermite_transfer", &["level", "formula_norm", "oracle_norm"], rows)?,
            Table::new("hermite_odd", &["k", "slice_norm", "full_norm"], odd_rows)?,
        ],
        checks: vec![
            Check::at_most("even levels match tensor quadrature", worst, 1e-6),
            Check::new("odd levels vanish", odd_zero, "exact zeros"),
            Check::new("re-indexed envelope", reindex.violations == 0, format!("C = {:?}", reindex.c_in)),
            Check::new("slice norms dominated", odd.dominated, format!("{} levels", odd.full_norms.len())),
            Check::new("odd re-indexing composition", composition_ok, "theta(t) = Theta(sqrt(1+t^2))"),
        ],
    })
}

const FOURIER_COEFFS: usize = 512;
const FOURIER_RANGE: f64 = 12.0;
const FOURIER_CALIBRATION: usize = 64;

fn fourier_decay(cfg: &ExperimentConfig) -> Result<Outcome> {
    let psi = |t: f64| t.powf(0.75);
    let coeffs: Vec<f64> = (0..=FOURIER_COEFFS).map(|k| (-psi(((2 * k + 1) as f64).sqrt())).exp()).collect();
    let span = |points: usize| -> Vec<f64> {
        (0..points).map(|i| -FOURIER_RANGE + 2.0 * FOURIER_RANGE * i as f64 / (points - 1) as f64).collect()
    };
    let report = hermite_fourier_decay(&coeffs, psi, &span(FOURIER_CALIBRATION), &span(cfg.grid_points))?;
    let rows = report.rows.iter().map(|r| vec![f(r.xi), f(r.abs_fhat), f(r.envelope), f(r.head), f(r.tail), f(r.chain_bound)]);
    Ok(Outcome {
        tables: vec![Table::new("fourier_decay", &["xi", "abs_fhat", "envelope", "head", "tail", "chain_bound"], rows)?],
        checks: vec![
            Check::new("Fourier envelope with one fitted C", report.violations == 0, format!("C = {:?}, {} violations", report.c, report.violations)),
            Check::new("Cauchy-Schwarz chain bound", report.chain_violations == 0, format!("{} violations", report.chain_violations)),
        ],
    })
}
