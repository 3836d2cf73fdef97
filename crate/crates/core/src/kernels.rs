//! Hermite projection kernels `Φ_k(x, y)`, Laguerre-function envelopes, the
//! radial Weyl coefficients `R_k(g)` and the Hermite-to-Fourier decay transfer.

use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::orthopoly::{hermite_fns, laguerre_fns, laguerre_normalized_all, laguerre_psi_all, ln_gamma};
use crate::quadrature::{composite_legendre, default_node_count, gauss_rule, WeightFamily};
use crate::scaled::ScaledValue;
use crate::summation::{pairwise_sum, CompensatedSum};

const LN_PI: f64 = 1.1447298858494002;

/// Surface area of the unit sphere `S^{d-1} ⊂ ℝ^d`.
pub fn sphere_area(d: usize) -> f64 {
    let h = 0.5 * d as f64;
    2.0 * (h * LN_PI - ln_gamma(h)).exp()
}

/// Sums scaled terms after aligning them to the largest exponent, with
/// Neumaier compensation against the cancellation in alternating sums.
fn compensated_scaled_sum(terms: &[ScaledValue]) -> ScaledValue {
    let top = match terms.iter().filter(|t| !t.is_zero()).map(|t| t.exponent()).max() {
        Some(e) => e,
        None => return ScaledValue::ZERO,
    };
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t.ldexp(-top).to_f64());
    }
    ScaledValue::from_f64(acc.value()).ldexp(top)
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        Err(param("dimension n must be at least 1"))
    } else {
        Ok(())
    }
}

/// `Φ_k(x, y) = Σ_{|α|=k} Φ_α(x) Φ_α(y)` from `|x+y|` and `|x-y|`:
/// `π^{-n/2} Σ_j (-1)^j L_j^{n/2-1}(½|x+y|²) e^{-¼|x+y|²} L_{k-j}^{n/2-1}(½|x-y|²) e^{-¼|x-y|²}`.
pub fn phi_kernel_radial(n: usize, k: usize, sum_norm: f64, diff_norm: f64) -> Result<f64> {
    check_dim(n)?;
    let delta = 0.5 * n as f64 - 1.0;
    let cap = k.max(crate::orthopoly::DEFAULT_DEGREE_CAP);
    let a = laguerre_fns(k, delta, 0.5 * sum_norm * sum_norm, cap)?;
    let b = laguerre_fns(k, delta, 0.5 * diff_norm * diff_norm, cap)?;
    let terms: Vec<ScaledValue> = (0..=k)
        .map(|j| {
            let t = a[j] * b[k - j];
            if j % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .collect();
    let pref = ScaledValue::exp(-0.5 * n as f64 * LN_PI);
    Ok((compensated_scaled_sum(&terms) * pref).to_f64())
}

/// `Φ_k(x, y)` for points of ℝⁿ.
pub fn phi_kernel(k: usize, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(param("kernel points must share a dimension"));
    }
    let s: f64 = x.iter().zip(y).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt();
    let d: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    phi_kernel_radial(x.len(), k, s, d)
}

/// `Φ_k(x, x)` at `|x| = r`.
pub fn phi_diagonal(n: usize, k: usize, r: f64) -> Result<f64> {
    phi_kernel_radial(n, k, 2.0 * r, 0.0)
}

/// `∫_{ℝⁿ} Φ_k(x, x) dx` by radial Gauss–Laguerre quadrature in `t = |x|²`.
pub fn kernel_trace(n: usize, k: usize) -> Result<f64> {
    check_dim(n)?;
    let delta = 0.5 * n as f64 - 1.0;
    let rule = gauss_rule(WeightFamily::GeneralizedLaguerre { delta }, default_node_count(k))?;
    // Φ_k(x,x) = e^{-|x|²} · (polynomial in |x|²), and r^{n-1} dr = ½ t^{n/2-1} dt.
    let terms: Vec<f64> = rule
        .nodes()
        .par_iter()
        .zip(rule.weights().par_iter())
        .map(|(&t, w)| Ok((*w * ScaledValue::exp(t)).to_f64() * phi_diagonal(n, k, t.sqrt())?))
        .collect::<Result<_>>()?;
    Ok(0.5 * sphere_area(n) * pairwise_sum(&terms))
}

/// `C(k+n-1, n-1)`.
pub fn eigenspace_dimension(n: usize, k: usize) -> f64 {
    (1..n).fold(1.0, |acc, i| acc * (k + i) as f64 / i as f64)
}

/// Regions of the Laguerre-function envelope, given `ν = 2(2k+δ+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeRegion {
    FrontPolynomial,
    MidOscillatory,
    TurningPoint,
    ExponentialTail,
}

impl EnvelopeRegion {
    pub fn label(&self) -> &'static str {
        match self {
            EnvelopeRegion::FrontPolynomial => "front",
            EnvelopeRegion::MidOscillatory => "mid",
            EnvelopeRegion::TurningPoint => "turning",
            EnvelopeRegion::ExponentialTail => "tail",
        }
    }
}

pub fn envelope_nu(k: usize, delta: f64) -> f64 {
    2.0 * (2.0 * k as f64 + delta + 1.0)
}

pub fn envelope_region(nu: f64, t: f64) -> EnvelopeRegion {
    if t <= 1.0 / nu {
        EnvelopeRegion::FrontPolynomial
    } else if t <= 0.5 * nu {
        EnvelopeRegion::MidOscillatory
    } else if t <= 1.5 * nu {
        EnvelopeRegion::TurningPoint
    } else {
        EnvelopeRegion::ExponentialTail
    }
}

/// Region and envelope value (without the constant `C`):
/// `(tν)^{δ/2}`, `(tν)^{-1/4}`, `ν^{-1/4}(ν^{1/3}+|ν-t|)^{-1/4}`, `e^{-γt}`.
pub fn envelope(k: usize, delta: f64, t: f64, gamma: f64) -> Result<(EnvelopeRegion, f64)> {
    if !(delta > -1.0) || !(t >= 0.0) {
        return Err(param(format!("envelope needs δ > -1 and t ≥ 0, got δ={delta}, t={t}")));
    }
    let nu = envelope_nu(k, delta);
    let region = envelope_region(nu, t);
    let bound = match region {
        EnvelopeRegion::FrontPolynomial => (t * nu).powf(0.5 * delta),
        EnvelopeRegion::MidOscillatory => (t * nu).powf(-0.25),
        EnvelopeRegion::TurningPoint => nu.powf(-0.25) * (nu.cbrt() + (nu - t).abs()).powf(-0.25),
        EnvelopeRegion::ExponentialTail => (-gamma * t).exp(),
    };
    Ok((region, bound))
}

/// `|𝓛_k^δ(t)|` on `k ≤ kmax`, for every `t` in `grid`; rows indexed by `t`.
fn laguerre_table(delta: f64, kmax: usize, grid: &[f64]) -> Result<Vec<Vec<f64>>> {
    grid.par_iter()
        .map(|&t| {
            Ok(laguerre_normalized_all(kmax, delta, t, kmax.max(crate::orthopoly::DEFAULT_DEGREE_CAP))?
                .iter()
                .map(|v| v.abs().to_f64())
                .collect())
        })
        .collect()
}

/// Frozen envelope constants for one `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFit {
    pub delta: f64,
    pub c: f64,
    /// Tail rate; half of the critical rate the calibration grid admits.
    pub gamma: f64,
}

/// Log grid on `[lo, hi]` with `points` points.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1).max(1) as f64).exp())
        .collect()
}

/// Safety factor applied to calibrated constants before they are frozen.
pub const CALIBRATION_MARGIN: f64 = 1.25;

/// Fits `(C, γ)` for the four-region envelope on `k ≤ kmax` and `t ∈ grid`.
///
/// `C` is the largest ratio `|𝓛_k(t)| / bound(t)` outside the tail (times
/// [`CALIBRATION_MARGIN`]); `γ` is half the largest rate with
/// `|𝓛_k(t)| ≤ C e^{-γt}` on every tail point.
pub fn fit_envelope(delta: f64, kmax: usize, grid: &[f64]) -> Result<EnvelopeFit> {
    let table = laguerre_table(delta, kmax, grid)?;
    let mut c: f64 = 0.0;
    for (&t, row) in grid.iter().zip(&table) {
        for (k, v) in row.iter().enumerate() {
            let (region, bound) = envelope(k, delta, t, 0.0)?;
            if region != EnvelopeRegion::ExponentialTail && *v > 0.0 {
                c = c.max(v / bound);
            }
        }
    }
    let c = c * CALIBRATION_MARGIN;
    let mut critical = f64::INFINITY;
    for (&t, row) in grid.iter().zip(&table) {
        for (k, v) in row.iter().enumerate() {
            if envelope_region(envelope_nu(k, delta), t) == EnvelopeRegion::ExponentialTail && *v > 0.0 {
                critical = critical.min((c.ln() - v.ln()) / t);
            }
        }
    }
    if !(critical > 0.0) {
        return Err(Error::Numerical(format!("no positive tail rate for δ = {delta}")));
    }
    let gamma = if critical.is_finite() { 0.5 * critical } else { 1.0 };
    Ok(EnvelopeFit { delta, c, gamma })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeRow {
    pub k: usize,
    pub t: f64,
    pub value: f64,
    pub region: EnvelopeRegion,
    pub bound: f64,
}

/// Evaluates `|𝓛_k^δ(t)| ≤ C·bound(t)` with frozen constants; returns every
/// row and the number of violations.
pub fn check_envelope(fit: &EnvelopeFit, gamma: f64, kmax: usize, grid: &[f64]) -> Result<(Vec<EnvelopeRow>, usize)> {
    let table = laguerre_table(fit.delta, kmax, grid)?;
    let mut rows = Vec::with_capacity(grid.len() * (kmax + 1));
    let mut violations = 0;
    for (&t, vals) in grid.iter().zip(&table) {
        for (k, &value) in vals.iter().enumerate() {
            let (region, bound) = envelope(k, fit.delta, t, gamma)?;
            if value > fit.c * bound {
                violations += 1;
            }
            rows.push(EnvelopeRow { k, t, value, region, bound: fit.c * bound });
        }
    }
    Ok((rows, violations))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalBoundReport {
    pub c: f64,
    pub gamma: f64,
    pub checked: usize,
    pub violations: usize,
    /// `(k, |x|, Φ_k(x,x), bound)`.
    pub rows: Vec<(usize, f64, f64, f64)>,
}

impl DiagonalBoundReport {
    pub fn vacuous(&self) -> bool {
        self.checked == 0
    }
}

/// Points `|x|` with `|x|² ∈ (2(2k+n), 4(2k+n)]`, `per_level` per `k`.
pub fn lemma54_grid(n: usize, k: usize, per_level: usize) -> Vec<f64> {
    let lo = 2.0 * (2 * k + n) as f64;
    (1..=per_level)
        .map(|i| (lo + lo * i as f64 / per_level as f64).sqrt())
        .collect()
}

fn lemma54_ratio(n: usize, k: usize, r: f64, gamma: f64) -> Result<(f64, f64)> {
    let phi = phi_diagonal(n, k, r)?;
    let shape = ((2 * k + n) as f64).powf(0.5 * n as f64) * (-2.0 * gamma * r * r).exp();
    Ok((phi, shape))
}

/// Fits `C` in `Φ_k(x,x) ≤ C (2k+n)^{n/2} e^{-2γ|x|²}` on a calibration
/// grid (times [`CALIBRATION_MARGIN`]).
pub fn fit_lemma54(n: usize, kmax: usize, gamma: f64, per_level: usize) -> Result<f64> {
    let mut c: f64 = 0.0;
    for k in 0..=kmax {
        // The supremum over the open region is approached at its boundary, so calibrate on the closure.
        let edge = (2.0 * (2 * k + n) as f64).sqrt();
        for r in std::iter::once(edge).chain(lemma54_grid(n, k, per_level)) {
            let (phi, shape) = lemma54_ratio(n, k, r, gamma)?;
            c = c.max(phi / shape);
        }
    }
    Ok(c * CALIBRATION_MARGIN)
}

/// Checks the diagonal bound at `(k, |x|)` points; points with
/// `|x|² ≤ 2(2k+n)` are outside the statement and skipped.
pub fn lemma54_check(n: usize, points: &[(usize, f64)], c: f64, gamma: f64) -> Result<DiagonalBoundReport> {
    let mut rows = Vec::new();
    let mut violations = 0;
    for &(k, r) in points {
        if r * r <= 2.0 * (2 * k + n) as f64 {
            continue;
        }
        let (phi, shape) = lemma54_ratio(n, k, r, gamma)?;
        if phi > c * shape {
            violations += 1;
        }
        rows.push((k, r, phi, c * shape));
    }
    Ok(DiagonalBoundReport { c, gamma, checked: rows.len(), violations, rows })
}

/// `max_ξ h_k(ξ)² (2k+1)^{1/6}` over `k ≤ kmax` and the grid.
pub fn hermite_diagonal_constant(kmax: usize, grid: &[f64]) -> Result<f64> {
    let per: Vec<f64> = grid
        .par_iter()
        .map(|&x| {
            let h = hermite_fns(kmax, x, kmax.max(crate::orthopoly::DEFAULT_DEGREE_CAP))?;
            Ok(h.iter()
                .enumerate()
                .map(|(k, v)| v.to_f64().powi(2) * ((2 * k + 1) as f64).powf(1.0 / 6.0))
                .fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().fold(0.0, f64::max))
}

/// `R_k(g)` for `k ≤ kmax`, where `g × φ_k^{n-1} = R_k(g) φ_k^{n-1}`:
/// `R_k(g) = |S^{2n-1}| ∫_0^∞ g(r) ψ_k^{n-1}(r) r^{2n-1} dr`.
///
/// With `support = Some(R)` the integral runs over `[0, R]` with a composite
/// Gauss–Legendre rule; otherwise a radial Gauss–Laguerre rule is used.
pub fn radial_weyl_coeffs<G>(g: G, n: usize, kmax: usize, support: Option<f64>) -> Result<Vec<f64>>
where
    G: Fn(f64) -> f64 + Sync,
{
    check_dim(n)?;
    let delta = (n - 1) as f64;
    let (nodes, weights): (Vec<f64>, Vec<f64>) = match support {
        Some(radius) => {
            if !(radius > 0.0) {
                return Err(param("support radius must be positive"));
            }
            let panels = 32 + (radius * ((kmax + 1) as f64).sqrt()).ceil() as usize * 4;
            let rule = composite_legendre(0.0, radius, panels, 16)?;
            let w = rule
                .nodes()
                .iter()
                .zip(rule.weights_f64())
                .map(|(r, w)| w * r.powi(2 * n as i32 - 1))
                .collect();
            (rule.nodes().to_vec(), w)
        }
        None => {
            let rule = gauss_rule(WeightFamily::RadialLaguerre { delta }, default_node_count(kmax))?;
            let w = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&r, w)| (*w * ScaledValue::exp(0.5 * r * r)).to_f64())
                .collect();
            (rule.nodes().to_vec(), w)
        }
    };
    let rows: Vec<Vec<f64>> = nodes
        .par_iter()
        .zip(weights.par_iter())
        .enumerate()
        .map(|(index, (&r, &w))| {
            let gr = g(r);
            if !gr.is_finite() {
                return Err(Error::NonFiniteIntegrand { index, node: r });
            }
            Ok(laguerre_psi_all(kmax, delta, r, kmax.max(crate::orthopoly::DEFAULT_DEGREE_CAP))?
                .into_iter()
                .map(|p| w * gr * p)
                .collect())
        })
        .collect::<Result<_>>()?;
    let area = sphere_area(2 * n);
    Ok((0..=kmax)
        .map(|k| area * pairwise_sum(&rows.iter().map(|row| row[k]).collect::<Vec<_>>()))
        .collect())
}

/// `‖φ_0^{n-1}‖²` on ℂⁿ by radial quadrature; equals `(2π)^n`.
///
/// This is the constant `c_n` in `‖g × φ_k‖² = c_n C(k+n-1, n-1) |R_k(g)|²`.
pub fn weyl_convention_constant(n: usize) -> Result<f64> {
    check_dim(n)?;
    let rule = gauss_rule(WeightFamily::RadialLaguerre { delta: (n - 1) as f64 }, 4)?;
    Ok(sphere_area(2 * n) * rule.integrate(|_| 1.0)?)
}

/// `‖g × φ_k^{n-1}‖₂ = (c_n C(k+n-1, n-1))^{1/2} |R_k(g)|`.
pub fn norm_from_weyl(r_k: f64, k: usize, n: usize, c_n: f64) -> f64 {
    (c_n * eigenspace_dimension(n, k)).sqrt() * r_k.abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierDecayRow {
    pub xi: f64,
    pub abs_fhat: f64,
    pub envelope: f64,
    /// `Σ_{2k+1 < ξ²/2} e^{-ψ(√(2k+1))} h_k(ξ)²`.
    pub head: f64,
    /// The complementary sum.
    pub tail: f64,
    /// `‖g‖ (head + tail)^{1/2}`, the pointwise Cauchy–Schwarz bound.
    pub chain_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierDecayReport {
    pub c: f64,
    pub violations: usize,
    pub chain_violations: usize,
    pub rows: Vec<FourierDecayRow>,
}

/// `f̂(ξ) = Σ (-i)^k a_k h_k(ξ)` for a one-dimensional Hermite expansion.
pub fn hermite_fourier_transform(coeffs: &[f64], xi: f64) -> Result<(f64, f64)> {
    if coeffs.is_empty() {
        return Ok((0.0, 0.0));
    }
    let kmax = coeffs.len() - 1;
    let h = hermite_fns(kmax, xi, kmax.max(crate::orthopoly::DEFAULT_DEGREE_CAP))?;
    let mut re = Vec::with_capacity(coeffs.len() / 2 + 1);
    let mut im = Vec::with_capacity(coeffs.len() / 2 + 1);
    for (k, (a, hk)) in coeffs.iter().zip(&h).enumerate() {
        let v = a * hk.to_f64();
        match k % 4 {
            0 => re.push(v),
            1 => im.push(-v),
            2 => re.push(-v),
            _ => im.push(v),
        }
    }
    Ok((pairwise_sum(&re), pairwise_sum(&im)))
}

/// Checks `|f̂(ξ)| ≤ C e^{-¼ψ(|ξ|/√2)}` for `f = Σ a_k h_k` on ℝ with
/// `|a_k| ≤ e^{-ψ(√(2k+1))}`.
///
/// `C` is fitted on `calibration` (times [`CALIBRATION_MARGIN`]) and then
/// applied on `grid`. Each row also carries the head/tail split at
/// `2k+1 < ½ξ²` and the Cauchy–Schwarz bound the split estimates.
pub fn hermite_fourier_decay<P>(
    coeffs: &[f64],
    psi: P,
    calibration: &[f64],
    grid: &[f64],
) -> Result<FourierDecayReport>
where
    P: Fn(f64) -> f64 + Sync,
{
    let levels: Vec<f64> = (0..coeffs.len()).map(|k| ((2 * k + 1) as f64).sqrt()).collect();
    let psis: Vec<f64> = levels.iter().map(|&t| psi(t)).collect();
    if psis.windows(2).any(|w| w[1] < w[0]) {
        return Err(param("ψ must be increasing"));
    }
    if let Some(k) = coeffs.iter().zip(&psis).position(|(a, p)| a.abs() > (-p).exp() * (1.0 + 1e-12)) {
        return Err(param(format!("coefficient {k} exceeds e^(-ψ(√(2k+1)))")));
    }
    let env = |xi: f64| (-0.25 * psi(xi.abs() / std::f64::consts::SQRT_2)).exp();
    let g_norm = pairwise_sum(&psis.iter().map(|p| (-p).exp()).collect::<Vec<_>>()).sqrt();

    let cal: Vec<f64> = calibration
        .par_iter()
        .map(|&xi| {
            let (re, im) = hermite_fourier_transform(coeffs, xi)?;
            Ok(re.hypot(im) / env(xi))
        })
        .collect::<Result<_>>()?;
    let c = cal.into_iter().fold(0.0, f64::max) * CALIBRATION_MARGIN;

    let kmax = coeffs.len().saturating_sub(1);
    let rows: Vec<FourierDecayRow> = grid
        .par_iter()
        .map(|&xi| {
            let (re, im) = hermite_fourier_transform(coeffs, xi)?;
            let h = hermite_fns(kmax, xi, kmax.max(crate::orthopoly::DEFAULT_DEGREE_CAP))?;
            let split = 0.5 * xi * xi;
            let (mut head, mut tail) = (Vec::new(), Vec::new());
            for (k, hk) in h.iter().enumerate() {
                let v = (-psis[k]).exp() * hk.to_f64().powi(2);
                if ((2 * k + 1) as f64) < split {
                    head.push(v);
                } else {
                    tail.push(v);
                }
            }
            let (head, tail) = (pairwise_sum(&head), pairwise_sum(&tail));
            Ok(FourierDecayRow {
                xi,
                abs_fhat: re.hypot(im),
                envelope: c * env(xi),
                head,
                tail,
                chain_bound: g_norm * (head + tail).sqrt(),
            })
        })
        .collect::<Result<_>>()?;
    let violations = rows.iter().filter(|r| r.abs_fhat > r.envelope).count();
    let chain_violations = rows
        .iter()
        .filter(|r| r.abs_fhat > r.chain_bound * (1.0 + 1e-12) + 1e-300)
        .count();
    Ok(FourierDecayReport { c, violations, chain_violations, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_value_one_dimension() {
        let v = phi_kernel(0, &[0.0], &[0.0]).unwrap();
        assert!((v - std::f64::consts::PI.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn first_level_diagonal_is_h1_squared() {
        for &x in &[0.0, 0.4, 1.3, 2.9] {
            let h1 = crate::orthopoly::hermite_fn(1, x).unwrap().to_f64();
            assert!((phi_diagonal(1, 1, x).unwrap() - h1 * h1).abs() < 1e-15);
        }
    }

    #[test]
    fn trace_counts_eigenspace() {
        for k in 0..6 {
            let t = kernel_trace(3, k).unwrap();
            assert!((t / eigenspace_dimension(3, k) - 1.0).abs() < 1e-10, "k={k} t={t}");
        }
    }

    #[test]
    fn regions_partition() {
        let nu = envelope_nu(3, 0.5);
        assert_eq!(nu, 15.0);
        assert_eq!(envelope_region(nu, 0.0), EnvelopeRegion::FrontPolynomial);
        assert_eq!(envelope_region(nu, 1.0), EnvelopeRegion::MidOscillatory);
        assert_eq!(envelope_region(nu, nu), EnvelopeRegion::TurningPoint);
        assert_eq!(envelope_region(nu, 2.0 * nu), EnvelopeRegion::ExponentialTail);
    }

    #[test]
    fn turning_point_value() {
        let (region, b) = envelope(4, 1.0, envelope_nu(4, 1.0), 0.1).unwrap();
        let nu = envelope_nu(4, 1.0);
        assert_eq!(region, EnvelopeRegion::TurningPoint);
        assert!((b - nu.powf(-1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(envelope(2, 1.0, 0.0, 0.1).unwrap().1, 0.0);
    }

    #[test]
    fn convention_constant() {
        for n in 1..=3 {
            let want = (2.0 * std::f64::consts::PI).powi(n as i32);
            assert!((weyl_convention_constant(n).unwrap() / want - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn weyl_of_zero_and_binomial_ratio() {
        let r = radial_weyl_coeffs(|_| 0.0, 2, 5, Some(1.0)).unwrap();
        assert!(r.iter().all(|v| *v == 0.0));
        assert_eq!(norm_from_weyl(0.0, 3, 2, 1.0), 0.0);
        let n = 3;
        for k in 0..10 {
            let ratio = (norm_from_weyl(1.0, k + 1, n, 1.0) / norm_from_weyl(1.0, k, n, 1.0)).powi(2);
            assert!((ratio - (k + n) as f64 / (k + 1) as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn fourier_decay_rejects_non_increasing_psi() {
        let a = [0.5, 0.1, 0.01];
        assert!(hermite_fourier_decay(&a, |t| -t, &[0.0], &[0.0]).is_err());
    }
}
