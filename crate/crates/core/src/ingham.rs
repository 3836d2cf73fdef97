//! Compactly supported functions with prescribed spectral decay and the
//! maps carrying them to Jacobi, special-Hermite and Hermite expansions.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::expansion::{analyze, analyze_with_rule, basis_rule, weighted_basis_rows};
use crate::kernels::{eigenspace_dimension, norm_from_weyl, radial_weyl_coeffs, weyl_convention_constant};
use crate::orthopoly::{hermite_fns, jacobi_r_all, BasisDescriptor, DEFAULT_DEGREE_CAP};
use crate::quadrature::{composite_legendre, default_node_count};
use crate::summation::pairwise_sum;
use crate::uncertainty::DecayProfile;

/// Largest factor count accepted by [`ingham_product`]; the piecewise
/// representation has up to `2^N` pieces.
pub const MAX_FACTORS: usize = 16;

/// `f = χ_1 * ⋯ * χ_N` with `χ_k = (2a_k)^{-1} 1_{[-a_k, a_k]}`, so that
/// `f̂(ξ) = ∏ sin(a_k ξ)/(a_k ξ)`.
///
/// The function is stored exactly as a piecewise polynomial of degree `N-1`
/// (coefficients in the local variable `x - b_i` on `[b_i, b_{i+1}]`);
/// everything outside `[b_0, b_last]` is zero.
#[derive(Debug, Clone)]
pub struct ProductBandFunction {
    theta: DecayProfile,
    half_widths: Vec<f64>,
    tail_budget: f64,
    breaks: Vec<f64>,
    polys: Vec<Vec<f64>>,
    step: f64,
}

/// Builds the product with `a_k = θ(2^k)`, `k = 1..=N`.
pub fn ingham_product(theta: &DecayProfile, factors: usize) -> Result<ProductBandFunction> {
    if !theta.integrable() {
        return Err(Error::Precondition(format!(
            "θ = {} has ∫θ(t)/t dt = ∞; no compactly supported function has this decay",
            theta.describe()
        )));
    }
    if factors == 0 || factors > MAX_FACTORS {
        return Err(param(format!("factor count must be in 1..={MAX_FACTORS}, got {factors}")));
    }
    let dyadic: Vec<f64> = (1..=factors as i32).map(|k| 2f64.powi(k)).collect();
    if !theta.is_monotone_on(&dyadic) {
        return Err(param(format!("θ = {} is not positive and decreasing", theta.describe())));
    }
    let half_widths: Vec<f64> = dyadic.iter().map(|&t| theta.eval(t)).collect();
    // Σ_{k>N} θ(2^k), which bounds how far the support would grow with more factors.
    let tail: Vec<f64> = (factors as i32 + 1..factors as i32 + 64).map(|k| theta.eval(2f64.powi(k))).collect();
    from_half_widths(theta.clone(), half_widths, pairwise_sum(&tail))
}

fn from_half_widths(theta: DecayProfile, half_widths: Vec<f64>, tail_budget: f64) -> Result<ProductBandFunction> {
    if half_widths.is_empty() || half_widths.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(param("half widths must be positive"));
    }
    let a1 = half_widths[0];
    let mut breaks = vec![-a1, a1];
    let mut polys = vec![vec![0.5 / a1]];
    for &a in &half_widths[1..] {
        (breaks, polys) = convolve_indicator(&breaks, &polys, a);
    }
    let min_a = half_widths.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(ProductBandFunction { theta, half_widths, tail_budget, breaks, polys, step: min_a / 8.0 })
}

/// Coefficients of `p(u + s)`.
fn taylor_shift(mut c: Vec<f64>, s: f64) -> Vec<f64> {
    let n = c.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            c[j] += s * c[j + 1];
        }
    }
    c
}

fn horner(c: &[f64], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * u + v)
}

fn poly_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    (0..a.len().max(b.len()))
        .map(|j| a.get(j).copied().unwrap_or(0.0) - b.get(j).copied().unwrap_or(0.0))
        .collect()
}

/// `g(x) = (F(x+a) - F(x-a)) / 2a` with `F` the antiderivative of `f`.
fn convolve_indicator(breaks: &[f64], polys: &[Vec<f64>], a: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut anti = Vec::with_capacity(polys.len());
    let mut level = 0.0;
    for (i, p) in polys.iter().enumerate() {
        let mut q = Vec::with_capacity(p.len() + 1);
        q.push(level);
        q.extend(p.iter().enumerate().map(|(j, c)| c / (j + 1) as f64));
        level = horner(&q, breaks[i + 1] - breaks[i]);
        anti.push(q);
    }
    let total = level;
    let antiderivative_at = |x: f64, origin: f64| -> Vec<f64> {
        if x < breaks[0] {
            return vec![0.0];
        }
        if x > breaks[breaks.len() - 1] {
            return vec![total];
        }
        let i = breaks.partition_point(|&b| b <= x).clamp(1, polys.len()) - 1;
        taylor_shift(anti[i].clone(), origin - breaks[i])
    };

    let mut cand: Vec<f64> = breaks.iter().flat_map(|&b| [b - a, b + a]).collect();
    cand.sort_by(f64::total_cmp);
    let tol = 1e-13 * (breaks[breaks.len() - 1] + a);
    let mut new_breaks: Vec<f64> = Vec::with_capacity(cand.len());
    for c in cand {
        if new_breaks.last().is_none_or(|&l| c - l > tol) {
            new_breaks.push(c);
        }
    }
    let scale = 0.5 / a;
    let new_polys = new_breaks
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let plus = antiderivative_at(mid + a, w[0] + a);
            let minus = antiderivative_at(mid - a, w[0] - a);
            poly_sub(&plus, &minus).into_iter().map(|c| c * scale).collect()
        })
        .collect();
    (new_breaks, new_polys)
}

impl ProductBandFunction {
    pub fn theta(&self) -> &DecayProfile {
        &self.theta
    }

    pub fn half_widths(&self) -> &[f64] {
        &self.half_widths
    }

    pub fn factor_count(&self) -> usize {
        self.half_widths.len()
    }

    /// `Σ_{k>N} θ(2^k)` at construction (scaled with the function by [`dilate`]).
    pub fn tail_budget(&self) -> f64 {
        self.tail_budget
    }

    /// `A = Σ a_k`, as accumulated by the convolutions.
    pub fn support_radius(&self) -> f64 {
        self.breaks[self.breaks.len() - 1]
    }

    pub fn piece_count(&self) -> usize {
        self.polys.len()
    }

    /// Sample spacing `min a_k / 8`.
    pub fn grid_spacing(&self) -> f64 {
        self.step
    }

    /// `f(x)`; exactly `0.0` outside the support.
    pub fn eval(&self, x: f64) -> f64 {
        // Evaluating on the right half keeps f(-x) == f(x) bitwise.
        let x = x.abs();
        let (lo, hi) = (self.breaks[0], self.breaks[self.breaks.len() - 1]);
        if !(x >= lo && x <= hi) {
            return 0.0;
        }
        let i = self.breaks.partition_point(|&b| b <= x).clamp(1, self.polys.len()) - 1;
        // The exact function is nonnegative; cancellation near the edges can leave -1e-17.
        horner(&self.polys[i], x - self.breaks[i]).max(0.0)
    }

    /// `f̂(ξ) = ∏ sin(a_k ξ)/(a_k ξ)`.
    pub fn fourier(&self, xi: f64) -> f64 {
        self.half_widths
            .iter()
            .map(|&a| {
                let t = a * xi;
                if t == 0.0 {
                    1.0
                } else {
                    t.sin() / t
                }
            })
            .product()
    }

    /// Samples `(x_j, f(x_j))` at `x_j = j h`, `|j| ≤ J`, where the grid
    /// extends `pad` times the support radius on each side.
    pub fn samples(&self, pad: f64) -> Vec<(f64, f64)> {
        let half = (self.support_radius() * (1.0 + pad.max(0.0)) / self.step).ceil() as i64;
        (-half..=half)
            .map(|j| {
                let x = j as f64 * self.step;
                (x, self.eval(x))
            })
            .collect()
    }

    /// `h Σ_j f(x_j) cos(ξ x_j)` on the sample grid.
    pub fn grid_fourier(&self, xi: f64) -> f64 {
        let half = (self.support_radius() / self.step).ceil() as i64 + 1;
        let mut terms = Vec::with_capacity(half as usize + 1);
        terms.push(self.eval(0.0));
        for j in 1..=half {
            let x = j as f64 * self.step;
            terms.push(2.0 * self.eval(x) * (xi * x).cos());
        }
        self.step * pairwise_sum(&terms)
    }

    /// `∫ f` computed exactly from the pieces.
    pub fn mass(&self) -> f64 {
        let parts: Vec<f64> = self
            .polys
            .iter()
            .zip(self.breaks.windows(2))
            .map(|(p, w)| {
                let len = w[1] - w[0];
                p.iter().enumerate().rev().fold(0.0, |acc, (j, c)| acc * len + c / (j + 1) as f64) * len
            })
            .collect();
        pairwise_sum(&parts)
    }
}

/// `f_δ(x) = δ^{-1} f(x/δ)`: support `δA`, `f̂_δ(ξ) = f̂(δξ)`, mass unchanged.
pub fn dilate(f: &ProductBandFunction, delta: f64) -> Result<ProductBandFunction> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(param(format!("dilation must be positive, got {delta}")));
    }
    let polys = f
        .polys
        .iter()
        .map(|p| {
            let mut scale = 1.0 / delta;
            p.iter()
                .map(|c| {
                    let v = c * scale;
                    scale /= delta;
                    v
                })
                .collect()
        })
        .collect();
    Ok(ProductBandFunction {
        theta: f.theta.clone(),
        half_widths: f.half_widths.iter().map(|a| a * delta).collect(),
        tail_budget: f.tail_budget * delta,
        breaks: f.breaks.iter().map(|b| b * delta).collect(),
        polys,
        step: f.step * delta,
    })
}

/// `ξ = 2^{j/per_octave}` covering `[lo, hi]`.
pub fn dyadic_grid(lo: f64, hi: f64, per_octave: usize) -> Vec<f64> {
    let per = per_octave.max(1) as f64;
    let start = (lo.log2() * per).ceil() as i64;
    let end = (hi.log2() * per).floor() as i64;
    (start..=end).map(|j| 2f64.powf(j as f64 / per)).collect()
}

/// `[1, 1/a_N]` at four points per octave: the range on which an `N`-factor
/// product can follow an exponential envelope (beyond it `f̂` decays like `ξ^{-N}`).
pub fn default_decay_grid(f: &ProductBandFunction) -> Vec<f64> {
    let a_last = f.half_widths.iter().cloned().fold(f64::INFINITY, f64::min);
    dyadic_grid(1.0, (1.0 / a_last).max(1.0), 4)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayRow {
    pub xi: f64,
    pub ln_abs_fhat: f64,
    /// `-ξ θ*(ξ)`.
    pub envelope: f64,
}

/// Largest `θ*(t) = c₀ θ(c₁ t)` with `|f̂(ξ)| ≤ e^{-ξθ*(ξ)}` on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InghamFit {
    pub c0: f64,
    pub c1: f64,
    /// `∫θ*/t < ∞`; the family shares `θ`'s integrability.
    pub integrable: bool,
    pub rows: Vec<DecayRow>,
}

impl InghamFit {
    /// `θ*` as a profile.
    pub fn profile(&self, theta: &DecayProfile) -> DecayProfile {
        let (c0, c1, base) = (self.c0, self.c1, theta.clone());
        DecayProfile::Custom {
            name: format!("{c0:?}*theta({c1:?}t)"),
            theta: Arc::new(move |t| base.eval_scaled(c0, c1, t)),
            integrable: theta.integrable(),
            floor: theta.has_floor(),
        }
    }
}

const C1_RANGE: (f64, f64) = (1.0 / 16.0, 16.0);
const C1_POINTS: usize = 65;

/// Fits `(c₀, c₁)` with `c₁ ∈ [1/16, 16]` (log-spaced) maximizing `c₀`.
pub fn verify_ingham_decay(f: &ProductBandFunction, grid: &[f64]) -> InghamFit {
    let logs: Vec<(f64, f64)> =
        grid.iter().map(|&xi| (xi.abs(), f.fourier(xi).abs().ln())).collect();
    let c0_for = |c1: f64| {
        logs.iter()
            .filter(|(xi, _)| *xi > 0.0)
            .map(|&(xi, l)| -l / (xi * f.theta.eval(c1 * xi)))
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    };
    let (lo, hi) = (C1_RANGE.0.ln(), C1_RANGE.1.ln());
    let (mut c0, mut c1) = (0.0, 1.0);
    for i in 0..C1_POINTS {
        let cand = (lo + (hi - lo) * i as f64 / (C1_POINTS - 1) as f64).exp();
        let v = c0_for(cand);
        if v.is_finite() && v > c0 {
            (c0, c1) = (v, cand);
        }
    }
    let rows = logs
        .iter()
        .map(|&(xi, l)| DecayRow { xi, ln_abs_fhat: l, envelope: -xi * f.theta.eval_scaled(c0, c1, xi) })
        .collect();
    InghamFit { c0, c1, integrable: f.theta.integrable(), rows }
}

/// Jacobi coefficients `h̃(m) = f̂(m + ρ)`, `ρ = (α+β+1)/2`, with the
/// certificate `|h̃(m)| ≤ C e^{-√c_m θ*(√c_m)}`, `c_m = (m+ρ)² - ρ²`.
#[derive(Debug, Clone)]
pub struct TransferredSequence {
    basis: BasisDescriptor,
    coeffs: Vec<f64>,
    rho: f64,
    support_radius: f64,
    envelope: DecayProfile,
    certificate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateRow {
    pub m: usize,
    pub coeff: f64,
    pub bound: f64,
}

impl TransferredSequence {
    pub fn basis(&self) -> &BasisDescriptor {
        &self.basis
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The shift `ρ = (α+β+1)/2`.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Radius of the source function, which bounds the support of `h`.
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn envelope(&self) -> &DecayProfile {
        &self.envelope
    }

    /// The residual constant `C`.
    pub fn certificate(&self) -> f64 {
        self.certificate
    }

    fn unit_bound(&self, m: usize) -> f64 {
        let c = self.basis.eigenvalue(m).sqrt();
        (-c * self.envelope.eval(c)).exp()
    }

    pub fn certificate_rows(&self) -> Vec<CertificateRow> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, &coeff)| CertificateRow { m, coeff, bound: self.certificate * self.unit_bound(m) })
            .collect()
    }
}

/// `h̃(m) = f̂(m + (α+β+1)/2)` for `m ≤ M`, certified against the envelope
/// fitted by [`verify_ingham_decay`] on [`default_decay_grid`].
///
/// Requires `α ≥ β > -1/2` (equality covers spheres) and support radius `< π`.
pub fn jacobi_transfer(f: &ProductBandFunction, alpha: f64, beta: f64, max_m: usize) -> Result<TransferredSequence> {
    if !(alpha >= beta && beta > -0.5) {
        return Err(param(format!("need α ≥ β > -1/2, got ({alpha}, {beta})")));
    }
    if f.support_radius() >= std::f64::consts::PI {
        return Err(Error::Precondition(format!(
            "support radius {} is not below π",
            f.support_radius()
        )));
    }
    let basis = BasisDescriptor::jacobi_compact(alpha, beta, max_m)?;
    let rho = 0.5 * (alpha + beta + 1.0);
    let coeffs: Vec<f64> = (0..=max_m).map(|m| f.fourier(m as f64 + rho)).collect();
    let fit = verify_ingham_decay(f, &default_decay_grid(f));
    let envelope = fit.profile(&f.theta);
    let mut seq = TransferredSequence {
        basis,
        coeffs,
        rho,
        support_radius: f.support_radius(),
        envelope,
        certificate: 0.0,
    };
    seq.certificate = (0..=max_m)
        .map(|m| seq.coeffs[m].abs() / seq.unit_bound(m))
        .fold(0.0, f64::max);
    if let Some(row) = seq.certificate_rows().iter().find(|r| r.coeff.abs() > r.bound * (1.0 + 1e-12)) {
        return Err(Error::Numerical(format!("certificate fails at m = {}", row.m)));
    }
    Ok(seq)
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiSynthesis {
    pub samples: Vec<(f64, f64)>,
    pub peak: f64,
    /// Largest `|h(s)|` with `s` beyond the support radius.
    pub max_outside: f64,
}

impl JacobiSynthesis {
    pub fn relative_outside(&self) -> f64 {
        if self.peak > 0.0 {
            self.max_outside / self.peak
        } else {
            0.0
        }
    }
}

/// `1/∫R_m² w` from the Gauss rule of the basis.
fn gram_normalizers(basis: &BasisDescriptor, max_m: usize) -> Result<Vec<f64>> {
    let rule = basis_rule(basis, default_node_count(max_m))?;
    let rows = weighted_basis_rows(basis, max_m, &rule)?;
    Ok((0..=max_m)
        .map(|m| 1.0 / pairwise_sum(&rows.iter().map(|r| r[m] * r[m]).collect::<Vec<_>>()))
        .collect())
}

fn synthesize_with(seq: &TransferredSequence, norms: &[f64], s: f64) -> Result<f64> {
    let (alpha, beta) = match seq.basis.family() {
        crate::orthopoly::BasisFamily::JacobiCompact { alpha, beta } => (alpha, beta),
        _ => unreachable!("transferred sequences are Jacobi"),
    };
    let max_m = seq.coeffs.len() - 1;
    let r = jacobi_r_all(max_m, alpha, beta, s.cos(), max_m.max(DEFAULT_DEGREE_CAP))?;
    Ok(pairwise_sum(&(0..=max_m).map(|m| seq.coeffs[m] * norms[m] * r[m]).collect::<Vec<_>>()))
}

/// `h(s) = Σ_m c_m h̃(m) R_m(cos s)` on `s_grid`.
pub fn jacobi_synthesize(seq: &TransferredSequence, s_grid: &[f64]) -> Result<JacobiSynthesis> {
    let norms = gram_normalizers(&seq.basis, seq.coeffs.len() - 1)?;
    let samples: Vec<(f64, f64)> = s_grid
        .par_iter()
        .map(|&s| Ok((s, synthesize_with(seq, &norms, s)?)))
        .collect::<Result<_>>()?;
    let peak = samples.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let max_outside = samples
        .iter()
        .filter(|p| p.0 > seq.support_radius)
        .map(|p| p.1.abs())
        .fold(0.0, f64::max);
    Ok(JacobiSynthesis { samples, peak, max_outside })
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRoundTrip {
    pub reanalyzed: Vec<f64>,
    /// `max_m |ĥ(m) - h̃(m)| / max_m |h̃(m)|`.
    pub max_rel_err: f64,
    /// `Σ c_m h̃(m)²`.
    pub parseval_coeffs: f64,
    /// `∫ h² w` by quadrature of the synthesized `h`.
    pub parseval_synth: f64,
}

/// Re-analyzes the synthesized `h` for `m ≤ kmax`.
pub fn jacobi_round_trip(seq: &TransferredSequence, kmax: usize) -> Result<JacobiRoundTrip> {
    let max_m = seq.coeffs.len() - 1;
    if kmax > max_m {
        return Err(param(format!("cutoff {kmax} exceeds the sequence length {}", max_m + 1)));
    }
    let norms = gram_normalizers(&seq.basis, max_m)?;
    let h = |s: f64| synthesize_with(seq, &norms, s).unwrap_or(f64::NAN);
    let basis = seq.basis.with_max_degree(max_m);
    let back = analyze(h, &basis, kmax)?;
    let reanalyzed: Vec<f64> = back.coeffs().iter().map(|c| c.re).collect();
    let scale = seq.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let max_rel_err = reanalyzed
        .iter()
        .zip(&seq.coeffs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / scale;
    let parseval_coeffs = pairwise_sum(&seq.coeffs.iter().zip(&norms).map(|(c, n)| n * c * c).collect::<Vec<_>>());
    let rule = basis_rule(&basis, default_node_count(max_m))?;
    let rows = weighted_basis_rows(&basis, 0, &rule)?;
    // rows[i][0] = √W_i since R_0 = 1.
    let parseval_synth = pairwise_sum(
        &rule
            .nodes()
            .par_iter()
            .zip(rows.par_iter())
            .map(|(&s, r)| r[0] * r[0] * h(s).powi(2))
            .collect::<Vec<_>>(),
    );
    Ok(JacobiRoundTrip { reanalyzed, max_rel_err, parseval_coeffs, parseval_synth })
}

/// `exp(1 - 1/(1 - (x/R)²))` on `|x| < R`, zero elsewhere; peak value 1.
pub fn smooth_bump(x: f64, radius: f64) -> f64 {
    let u = x / radius;
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// `g(z) = ∫ F(|z|, t) e^{it} dt` for `F` supported in `|z| ≤ z_radius`,
/// `|t| ≤ t_radius`.
pub struct PeriodizedProfile<F> {
    profile: F,
    z_radius: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

const PERIODIZE_PANELS: usize = 64;
const PERIODIZE_ORDER: usize = 16;

/// Fourier coefficient at frequency 1 in the central variable; when
/// `t_radius < π` the `2π`-periodization has a single term on `[-π, π]`.
pub fn periodize_t<F>(profile: F, z_radius: f64, t_radius: f64) -> Result<PeriodizedProfile<F>>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if !(z_radius > 0.0 && t_radius > 0.0) {
        return Err(param("support radii must be positive"));
    }
    let rule = composite_legendre(-t_radius, t_radius, PERIODIZE_PANELS, PERIODIZE_ORDER)?;
    Ok(PeriodizedProfile {
        profile,
        z_radius,
        nodes: rule.nodes().to_vec(),
        weights: rule.weights_f64(),
    })
}

impl<F: Fn(f64, f64) -> f64 + Sync> PeriodizedProfile<F> {
    pub fn support_radius(&self) -> f64 {
        self.z_radius
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        if r.abs() >= self.z_radius {
            return Complex64::new(0.0, 0.0);
        }
        let (re, im): (Vec<f64>, Vec<f64>) = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| {
                let v = w * (self.profile)(r, t);
                (v * t.cos(), v * t.sin())
            })
            .unzip();
        Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
    }

    pub fn samples(&self, radii: &[f64]) -> Vec<(f64, Complex64)> {
        radii.iter().map(|&r| (r, self.eval(r))).collect()
    }
}

/// `‖g × φ_k^{n-1}‖₂` for `k ≤ K` with the best `θ*(t) = c₀(1 + c₁t)^{-1/2}`
/// such that `‖g × φ_k‖ ≤ C e^{-√(2k+n) θ*(√(2k+n))}`, `C = 2 max_k ‖g × φ_k‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplHermiteReport {
    pub n: usize,
    pub norms: Vec<f64>,
    /// Same norms through the expansion module's `ψ_k^{n-1}` analysis.
    pub cross_check: Vec<f64>,
    pub c: f64,
    pub c0: f64,
    pub c1: f64,
    /// `a` with `θ*(t) ≥ a (1+t)^{-1/2}`.
    pub floor: f64,
    pub monotone: bool,
    pub degenerate: bool,
}

impl SplHermiteReport {
    /// Largest relative disagreement between the two norm computations.
    pub fn cross_check_error(&self) -> f64 {
        let scale = self.norms.iter().cloned().fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        self.norms
            .iter()
            .zip(&self.cross_check)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
            / scale
    }

    pub fn has_floor(&self) -> bool {
        !self.degenerate && self.floor > 0.0
    }
}

pub fn splhermite_decay_report<G>(g: G, support: f64, n: usize, kmax: usize) -> Result<SplHermiteReport>
where
    G: Fn(f64) -> f64 + Sync,
{
    let weyl = radial_weyl_coeffs(&g, n, kmax, Some(support))?;
    let c_n = weyl_convention_constant(n)?;
    let norms: Vec<f64> = weyl.iter().enumerate().map(|(k, &r)| norm_from_weyl(r, k, n, c_n)).collect();

    let basis = BasisDescriptor::laguerre_radial(n, kmax)?;
    let panels = 32 + (support * ((kmax + 1) as f64).sqrt()).ceil() as usize * 4;
    let rule = composite_legendre(0.0, support, panels, 16)?;
    let area = crate::kernels::sphere_area(2 * n);
    let cross_check: Vec<f64> = analyze_with_rule(&g, &basis, kmax, &rule)?
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| norm_from_weyl(area * c.re, k, n, c_n))
        .collect();

    let peak = norms.iter().cloned().fold(0.0, f64::max);
    let monotone = norms.windows(2).all(|w| w[1] <= w[0]);
    if peak == 0.0 {
        return Ok(SplHermiteReport {
            n,
            norms,
            cross_check,
            c: 0.0,
            c0: 0.0,
            c1: 0.0,
            floor: 0.0,
            monotone,
            degenerate: true,
        });
    }
    let c = 2.0 * peak;
    let profile = DecayProfile::inverse_sqrt();
    let levels: Vec<f64> = (0..=kmax).map(|k| ((2 * k + n) as f64).sqrt()).collect();
    let c0_for = |c1: f64| {
        norms
            .iter()
            .zip(&levels)
            .filter(|(v, _)| **v > 0.0)
            .map(|(v, &t)| (c / v).ln() / (t * profile.eval(c1 * t)))
            .fold(f64::INFINITY, f64::min)
    };
    let (lo, hi) = (C1_RANGE.0.ln(), C1_RANGE.1.ln());
    let (mut c0, mut c1) = (0.0, 1.0);
    for i in 0..C1_POINTS {
        let cand = (lo + (hi - lo) * i as f64 / (C1_POINTS - 1) as f64).exp();
        let v = c0_for(cand);
        if v.is_finite() && v > c0 {
            (c0, c1) = (v, cand);
        }
    }
    // (1 + c₁t)^{-1/2} ≥ max(1, c₁)^{-1/2} (1 + t)^{-1/2}
    let floor = c0 / c1.max(1.0).sqrt();
    Ok(SplHermiteReport { n, norms, cross_check, c, c0, c1, floor, monotone, degenerate: false })
}

/// `‖P_j f‖₂` for `f(x, y) = g(√2 z)` on `ℝ^{2m}`, `j ≤ 2K`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenTransfer {
    pub m: usize,
    /// `R_k(g)` for `k ≤ K`.
    pub weyl: Vec<f64>,
    /// Indexed by the Hermite level; odd entries are `0.0`.
    pub norms: Vec<f64>,
}

/// `(4π)^{-m}` in `‖P_{2k}f‖² = c' C(k+m-1, m-1) |R_k(g)|²`.
pub fn prop67_constant(m: usize) -> f64 {
    (4.0 * std::f64::consts::PI).powi(-(m as i32))
}

/// Hermite projection norms of `f(x,y) = g(√2 z)` from the Weyl coefficients of `g`.
pub fn prop67_even_transfer<G>(g: G, support: f64, m: usize, kmax: usize) -> Result<EvenTransfer>
where
    G: Fn(f64) -> f64 + Sync,
{
    let weyl = radial_weyl_coeffs(&g, m, kmax, Some(support))?;
    let c = prop67_constant(m);
    let mut norms = vec![0.0; 2 * kmax + 1];
    for (k, r) in weyl.iter().enumerate() {
        norms[2 * k] = (c * eigenspace_dimension(m, k)).sqrt() * r.abs();
    }
    Ok(EvenTransfer { m, weyl, norms })
}

/// `Θ(t) = √2 θ(√2 t)`.
pub fn even_reindex(theta: &DecayProfile) -> DecayProfile {
    let base = theta.clone();
    DecayProfile::Custom {
        name: format!("sqrt2*({})(sqrt2 t)", theta.describe()),
        theta: Arc::new(move |t| std::f64::consts::SQRT_2 * base.eval(std::f64::consts::SQRT_2 * t)),
        integrable: theta.integrable(),
        floor: theta.has_floor(),
    }
}

/// `θ(t) = Θ(√(1+t²))`.
pub fn odd_reindex(big_theta: &DecayProfile) -> DecayProfile {
    let base = big_theta.clone();
    DecayProfile::Custom {
        name: format!("({})(sqrt(1+t^2))", big_theta.describe()),
        theta: Arc::new(move |t| base.eval((1.0 + t * t).sqrt())),
        integrable: big_theta.integrable(),
        floor: big_theta.has_floor(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReindexCheck {
    /// `max_k C(k+m-1,m-1)^{1/2} |R_k| e^{√(2k+m) Θ(√(2k+m))}`.
    pub c_in: f64,
    pub checked: usize,
    pub violations: usize,
}

impl EvenTransfer {
    /// Fits the special-Hermite constant with `Θ = even_reindex(θ)` and checks
    /// `‖P_{2k}f‖ ≤ (c')^{1/2} C e^{-√(4k+n) θ(√(4k+n))}` at every `k`.
    pub fn check_envelope(&self, theta: &DecayProfile) -> ReindexCheck {
        let big = even_reindex(theta);
        let m = self.m;
        let c_in = self
            .weyl
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let t = ((2 * k + m) as f64).sqrt();
                eigenspace_dimension(m, k).sqrt() * r.abs() * (t * big.eval(t)).exp()
            })
            .fold(0.0, f64::max);
        let c_out = prop67_constant(m).sqrt() * c_in;
        let n = 2 * m;
        let violations = (0..self.weyl.len())
            .filter(|&k| {
                let t = ((4 * k + n) as f64).sqrt();
                self.norms[2 * k] > c_out * (-t * theta.eval(t)).exp() * (1.0 + 1e-12)
            })
            .count();
        ReindexCheck { c_in, checked: self.weyl.len(), violations }
    }
}

/// Hermite coefficients `(F, Φ_α)` on `ℝ^d`, keyed by multi-index.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTable {
    dim: usize,
    entries: Vec<(Vec<usize>, f64)>,
}

impl HermiteTable {
    pub fn new(dim: usize, entries: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        if dim == 0 {
            return Err(param("dimension must be at least 1"));
        }
        if let Some((idx, _)) = entries.iter().find(|(idx, c)| idx.len() != dim || !c.is_finite()) {
            return Err(param(format!("bad entry {idx:?} for dimension {dim}")));
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(Vec<usize>, f64)] {
        &self.entries
    }

    /// `‖P_k F‖₂` for `k ≤ kmax`.
    pub fn level_norms(&self, kmax: usize) -> Vec<f64> {
        let mut sq = vec![Vec::new(); kmax + 1];
        for (idx, c) in &self.entries {
            let k: usize = idx.iter().sum();
            if k <= kmax {
                sq[k].push(c * c);
            }
        }
        sq.iter().map(|v| pairwise_sum(v).sqrt()).collect()
    }

    /// `f(x) = ∫ F(x, t) h_0(t) dt`: the entries with last index 0.
    pub fn slice_first(&self) -> Result<HermiteTable> {
        if self.dim < 2 {
            return Err(param("slicing needs dimension at least 2"));
        }
        HermiteTable::new(
            self.dim - 1,
            self.entries
                .iter()
                .filter(|(idx, _)| idx[self.dim - 1] == 0)
                .map(|(idx, c)| (idx[..self.dim - 1].to_vec(), *c))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OddTransfer {
    pub slice_norms: Vec<f64>,
    pub full_norms: Vec<f64>,
    pub dominated: bool,
}

/// Slices `F` on `ℝ^{n+1}` to `f` on `ℝⁿ` and checks `‖P_k f‖ ≤ ‖P_k F‖`.
pub fn prop67_odd_transfer(table: &HermiteTable, kmax: usize) -> Result<OddTransfer> {
    let full_norms = table.level_norms(kmax);
    let slice_norms = table.slice_first()?.level_norms(kmax);
    let dominated = slice_norms.iter().zip(&full_norms).all(|(s, f)| s <= f);
    Ok(OddTransfer { slice_norms, full_norms, dominated })
}

/// `(f, h_a ⊗ h_b)` for `a + b ≤ kmax` with `f(x, y) = f_0(|(x, y)|)`
/// supported in `r ≤ radius`, by polar tensor quadrature; entry `[a][b]`.
pub fn hermite_coefficients_2d<F>(f0: F, radius: f64, kmax: usize) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> f64 + Sync,
{
    let panels = 16 + (radius * ((2 * kmax + 1) as f64).sqrt()).ceil() as usize * 4;
    let radial = composite_legendre(0.0, radius, panels, 16)?;
    let angles = 2 * kmax + 32;
    let dphi = 2.0 * std::f64::consts::PI / angles as f64;
    let cap = kmax.max(DEFAULT_DEGREE_CAP);
    let points: Vec<(f64, f64, f64)> = radial
        .nodes()
        .iter()
        .zip(radial.weights_f64())
        .flat_map(|(&r, w)| {
            let v = f0(r) * w * r * dphi;
            (0..angles).map(move |j| {
                let phi = j as f64 * dphi;
                (r * phi.cos(), r * phi.sin(), v)
            })
        })
        .filter(|p| p.2 != 0.0)
        .collect();
    let rows: Vec<(Vec<f64>, Vec<f64>, f64)> = points
        .par_iter()
        .map(|&(x, y, v)| {
            let hx = hermite_fns(kmax, x, cap)?.iter().map(|h| h.to_f64()).collect();
            let hy = hermite_fns(kmax, y, cap)?.iter().map(|h| h.to_f64()).collect();
            Ok((hx, hy, v))
        })
        .collect::<Result<_>>()?;
    Ok((0..=kmax)
        .into_par_iter()
        .map(|a| {
            (0..=kmax - a)
                .map(|b| pairwise_sum(&rows.iter().map(|(hx, hy, v)| v * hx[a] * hy[b]).collect::<Vec<_>>()))
                .collect()
        })
        .collect())
}

/// `‖P_j f‖₂` for `j ≤ kmax` from a 2D coefficient table.
pub fn level_norms_2d(coeffs: &[Vec<f64>]) -> Vec<f64> {
    let kmax = coeffs.len().saturating_sub(1);
    (0..=kmax)
        .map(|j| pairwise_sum(&(0..=j).map(|a| coeffs[a][j - a].powi(2)).collect::<Vec<_>>()).sqrt())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inverse_sqrt_product(n: usize) -> ProductBandFunction {
        ingham_product(&DecayProfile::inverse_sqrt(), n).unwrap()
    }

    #[test]
    fn single_factor_is_indicator() {
        let f = inverse_sqrt_product(1);
        let a = 1.0 / 3f64.sqrt();
        assert!((f.support_radius() - a).abs() < 1e-15);
        assert!((f.eval(0.1) - 0.5 / a).abs() < 1e-14);
        assert_eq!(f.eval(0.6), 0.0);
        assert!((f.fourier(2.0) - (2.0 * a).sin() / (2.0 * a)).abs() < 1e-15);
    }

    #[test]
    fn two_factors_make_a_trapezoid() {
        let f = from_half_widths(DecayProfile::inverse_sqrt(), vec![1.0, 0.5], 0.0).unwrap();
        assert!((f.eval(0.0) - 0.5).abs() < 1e-15);
        assert!((f.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((f.eval(1.0) - 0.25).abs() < 1e-15);
        assert!((f.eval(1.25) - 0.125).abs() < 1e-15);
        assert_eq!(f.eval(1.5 + 1e-12), 0.0);
    }

    #[test]
    fn mass_and_symmetry() {
        let f = inverse_sqrt_product(8);
        assert!((f.mass() - 1.0).abs() < 1e-12);
        for x in [0.1, 0.37, 0.9, 1.3] {
            assert!((f.eval(x) - f.eval(-x)).abs() < 1e-12);
            assert!(f.eval(x) >= 0.0);
        }
    }

    #[test]
    fn divergent_theta_rejected() {
        assert!(ingham_product(&DecayProfile::InverseLog { c0: 1.0 }, 4).is_err());
        assert!(ingham_product(&DecayProfile::inverse_sqrt(), 0).is_err());
    }

    #[test]
    fn dilation_scales() {
        let f = inverse_sqrt_product(6);
        let g = dilate(&f, 0.5).unwrap();
        assert!((g.support_radius() - 0.5 * f.support_radius()).abs() < 1e-15);
        assert!((g.eval(0.2) - 2.0 * f.eval(0.4)).abs() < 1e-12);
        assert!((g.fourier(3.0) - f.fourier(1.5)).abs() < 1e-15);
        assert!((g.mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn taylor_shift_quadratic() {
        // 1 + 2u + 3u² at u + 1 = 6 + 8u + 3u²
        assert_eq!(taylor_shift(vec![1.0, 2.0, 3.0], 1.0), vec![6.0, 8.0, 3.0]);
    }

    #[test]
    fn constant_coefficient_synthesizes_constant() {
        let f = inverse_sqrt_product(4);
        let mut seq = jacobi_transfer(&dilate(&f, 0.5).unwrap(), 0.0, 0.0, 3).unwrap();
        seq.coeffs = vec![1.0, 0.0, 0.0, 0.0];
        let out = jacobi_synthesize(&seq, &[0.3, 1.0, 2.5]).unwrap();
        let c0 = 1.0 / seq.basis.norm_sq(0);
        for (_, h) in out.samples {
            assert!((h - c0).abs() < 1e-12);
        }
    }

    #[test]
    fn periodize_separable() {
        let g = periodize_t(|r, t| smooth_bump(r, 1.0) * smooth_bump(t, 2.0), 1.0, 2.0).unwrap();
        let c = periodize_t(|_, t| smooth_bump(t, 2.0), 10.0, 2.0).unwrap().eval(0.0);
        for r in [0.0, 0.3, 0.8] {
            let v = g.eval(r);
            assert!((v - c * smooth_bump(r, 1.0)).norm() < 1e-14);
        }
        assert!(c.im.abs() < 1e-14);
        assert_eq!(g.eval(1.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn odd_slice_of_ground_state() {
        let t = HermiteTable::new(3, vec![(vec![0, 0, 0], 1.0)]).unwrap();
        let out = prop67_odd_transfer(&t, 4).unwrap();
        assert_eq!(out.slice_norms, out.full_norms);
        assert!(out.dominated);
    }

    #[test]
    fn zero_profile_is_degenerate() {
        let r = splhermite_decay_report(|_| 0.0, 0.5, 1, 8).unwrap();
        assert!(r.degenerate);
        assert!(r.norms.iter().all(|&v| v == 0.0));
    }
}
