//! Coefficients `f̂(k) = ∫ f ψ_k w`, reconstruction `f = Σ c_k f̂(k) ψ_k`,
//! Parseval norms and the operator-power norms `‖P^m f‖`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::orthopoly::{ln_gamma, BasisDescriptor, BasisFamily};
use crate::quadrature::{default_node_count, gauss_rule, QuadratureRule, WeightFamily};
use crate::scaled::{sum_scaled, ScaledValue};
use crate::summation::pairwise_sum;

/// `f̂(0..=K)` tied to a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    basis: BasisDescriptor,
    coeffs: Vec<Complex64>,
}

impl CoefficientSequence {
    pub fn new(basis: BasisDescriptor, coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(param(format!("coefficient {k} is not finite")));
        }
        Ok(Self { basis, coeffs })
    }

    pub fn from_real(basis: BasisDescriptor, coeffs: &[f64]) -> Result<Self> {
        Self::new(basis, coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zeros(basis: BasisDescriptor, len: usize) -> Self {
        Self { basis, coeffs: vec![Complex64::new(0.0, 0.0); len] }
    }

    /// Coefficients of `ψ_j` itself: `1/c_j` at `j` (or `1` for Hermite), zero elsewhere.
    pub fn eigenline(basis: BasisDescriptor, j: usize, len: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len.max(j + 1)];
        coeffs[j] = Complex64::new(basis.norm_sq(j), 0.0);
        Self { basis, coeffs }
    }

    pub fn basis(&self) -> &BasisDescriptor {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c_k |f̂(k)|²`.
    pub fn energy(&self, k: usize) -> f64 {
        self.basis.norming(k) * self.coeffs[k].norm_sqr()
    }

    /// `c_K |f̂(K)|² / Σ c_k |f̂(k)|²`.
    pub fn tail_indicator(&self) -> f64 {
        let total: f64 = pairwise_sum(&(0..self.len()).map(|k| self.energy(k)).collect::<Vec<_>>());
        match self.len() {
            0 => 0.0,
            n if total > 0.0 => self.energy(n - 1) / total,
            _ => 0.0,
        }
    }
}

fn quadrature_family(basis: &BasisDescriptor) -> WeightFamily {
    match basis.family() {
        BasisFamily::HermiteLine => WeightFamily::Hermite,
        BasisFamily::LaguerreRadial { delta } => WeightFamily::RadialLaguerre { delta },
        BasisFamily::JacobiCompact { alpha, beta } => WeightFamily::CompactJacobi { alpha, beta },
    }
}

/// `ln(w_basis(x) / w_rule(x))`.
fn ln_weight_ratio(basis: &BasisDescriptor, rule: WeightFamily, x: f64) -> f64 {
    if rule == quadrature_family(basis) {
        return match basis.family() {
            BasisFamily::HermiteLine => x * x,
            BasisFamily::LaguerreRadial { .. } => 0.5 * x * x,
            BasisFamily::JacobiCompact { alpha, .. } => -ln_gamma(alpha + 1.0),
        };
    }
    let ln_basis = match basis.family() {
        BasisFamily::HermiteLine => 0.0,
        BasisFamily::LaguerreRadial { delta } => (2.0 * delta + 1.0) * x.ln(),
        BasisFamily::JacobiCompact { alpha, beta } => {
            WeightFamily::CompactJacobi { alpha, beta }.ln_weight(x) - ln_gamma(alpha + 1.0)
        }
    };
    ln_basis - rule.ln_weight(x)
}

/// Gauss rule matched to the basis weight with `n` nodes.
pub fn basis_rule(basis: &BasisDescriptor, n: usize) -> Result<QuadratureRule> {
    gauss_rule(quadrature_family(basis), n)
}

/// Per-node rows `√W_i ψ_k(x_i)` (with `W_i` the rule weight converted to the
/// basis weight), so that `Σ_i row_i[j] row_i[k]` is the Gram entry.
pub fn weighted_basis_rows(
    basis: &BasisDescriptor,
    kmax: usize,
    rule: &QuadratureRule,
) -> Result<Vec<Vec<f64>>> {
    rule.nodes()
        .par_iter()
        .zip(rule.weights().par_iter())
        .map(|(&x, &w)| {
            let root = (w * ScaledValue::exp(ln_weight_ratio(basis, rule.family(), x))).sqrt();
            Ok(basis.eval_all_scaled(kmax, x)?.into_iter().map(|p| (p * root).to_f64()).collect())
        })
        .collect()
}

/// Gram matrix `∫ ψ_j ψ_k w` for `j, k ≤ kmax`.
pub fn gram_matrix(basis: &BasisDescriptor, kmax: usize, rule: &QuadratureRule) -> Result<Vec<Vec<f64>>> {
    let rows = weighted_basis_rows(basis, kmax, rule)?;
    Ok((0..=kmax)
        .into_par_iter()
        .map(|j| {
            (0..=kmax)
                .map(|k| pairwise_sum(&rows.iter().map(|r| r[j] * r[k]).collect::<Vec<_>>()))
                .collect()
        })
        .collect())
}

/// `f̂(k)` for `k ≤ kmax` with the default node count for degree `kmax`.
pub fn analyze<F>(f: F, basis: &BasisDescriptor, kmax: usize) -> Result<CoefficientSequence>
where
    F: Fn(f64) -> f64 + Sync,
{
    let rule = basis_rule(basis, default_node_count(kmax))?;
    analyze_with_rule(f, basis, kmax, &rule)
}

/// `f̂(k) = Σ_i W_i f(x_i) ψ_k(x_i)` on a caller-supplied rule.
pub fn analyze_with_rule<F>(
    f: F,
    basis: &BasisDescriptor,
    kmax: usize,
    rule: &QuadratureRule,
) -> Result<CoefficientSequence>
where
    F: Fn(f64) -> f64 + Sync,
{
    if kmax > basis.max_degree() {
        return Err(param(format!(
            "cutoff {kmax} exceeds the basis degree {}",
            basis.max_degree()
        )));
    }
    let rows: Vec<Vec<f64>> = rule
        .nodes()
        .par_iter()
        .zip(rule.weights().par_iter())
        .enumerate()
        .map(|(index, (&x, &w))| {
            let fx = f(x);
            if !fx.is_finite() {
                return Err(Error::NonFiniteIntegrand { index, node: x });
            }
            let scale = (w * ScaledValue::exp(ln_weight_ratio(basis, rule.family(), x))).mul_f64(fx);
            Ok(basis.eval_all_scaled(kmax, x)?.into_iter().map(|p| (p * scale).to_f64()).collect())
        })
        .collect::<Result<_>>()?;
    let coeffs = (0..=kmax)
        .map(|k| Complex64::new(pairwise_sum(&rows.iter().map(|r| r[k]).collect::<Vec<_>>()), 0.0))
        .collect();
    CoefficientSequence::new(*basis, coeffs)
}

/// `Σ_k c_k f̂(k) ψ_k(r)`.
pub fn synthesize(seq: &CoefficientSequence, r: f64) -> Result<Complex64> {
    if seq.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let vals = seq.basis.eval_all(seq.len() - 1, r)?;
    let mut re = Vec::with_capacity(seq.len());
    let mut im = Vec::with_capacity(seq.len());
    for (k, (c, p)) in seq.coeffs.iter().zip(&vals).enumerate() {
        let w = seq.basis.norming(k) * p;
        re.push(c.re * w);
        im.push(c.im * w);
    }
    Ok(Complex64::new(pairwise_sum(&re), pairwise_sum(&im)))
}

/// `(Σ c_k |f̂(k)|²)^{1/2}`.
pub fn parseval_norm(seq: &CoefficientSequence) -> f64 {
    pairwise_sum(&(0..seq.len()).map(|k| seq.energy(k)).collect::<Vec<_>>()).sqrt()
}

/// `‖P^m f‖` for `m = 0..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPowerNorms {
    values: Vec<ScaledValue>,
}

impl OperatorPowerNorms {
    /// Norms given directly, indexed from `m = 0`.
    pub fn from_values(values: Vec<ScaledValue>) -> Self {
        Self { values }
    }

    /// Norms given by `ln ‖P^m f‖`.
    pub fn from_ln(ln_values: &[f64]) -> Self {
        Self { values: ln_values.iter().map(|&l| ScaledValue::exp(l)).collect() }
    }

    pub fn values(&self) -> &[ScaledValue] {
        &self.values
    }

    pub fn get(&self, m: usize) -> ScaledValue {
        self.values[m]
    }

    pub fn max_power(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// Largest violation of `‖P^m f‖² ≤ ‖P^{m-1} f‖ ‖P^{m+1} f‖`, as a log-ratio.
    pub fn log_convexity_excess(&self) -> f64 {
        self.values
            .windows(3)
            .filter(|w| !w[1].is_zero())
            .map(|w| 2.0 * w[1].ln_abs() - w[0].ln_abs() - w[2].ln_abs())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `‖P^m f‖² = Σ λ_k^{2m} c_k |f̂(k)|²` for `m ≤ max_power`, in scaled arithmetic.
pub fn operator_norms(seq: &CoefficientSequence, max_power: usize) -> OperatorPowerNorms {
    let energies: Vec<ScaledValue> = (0..seq.len()).map(|k| ScaledValue::from_f64(seq.energy(k))).collect();
    let lambdas: Vec<ScaledValue> =
        (0..seq.len()).map(|k| ScaledValue::from_f64(seq.basis.eigenvalue(k))).collect();
    let values = (0..=max_power)
        .into_par_iter()
        .map(|m| {
            let terms: Vec<ScaledValue> = energies
                .iter()
                .zip(&lambdas)
                .map(|(e, l)| *e * l.powi(2 * m as u64))
                .collect();
            sum_scaled(&terms).sqrt()
        })
        .collect();
    OperatorPowerNorms { values }
}

/// Partial sums `S_M = Σ_{m=1}^M ‖P^m f‖^{-1/(2m)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CarlemanSums {
    pub partial: Vec<f64>,
    /// First `m` with `‖P^m f‖ = 0`: `f` is a finite combination of
    /// null eigenlines and the series diverges trivially.
    pub zero_norm_at: Option<usize>,
}

impl CarlemanSums {
    pub fn diverges_trivially(&self) -> bool {
        self.zero_norm_at.is_some()
    }
}

pub fn carleman_partial_sums(norms: &OperatorPowerNorms) -> CarlemanSums {
    let mut partial = Vec::with_capacity(norms.max_power());
    let mut total = 0.0;
    for m in 1..=norms.max_power() {
        let v = norms.get(m);
        if v.is_zero() {
            return CarlemanSums { partial, zero_norm_at: Some(m) };
        }
        total += (-v.ln_abs() / (2.0 * m as f64)).exp();
        partial.push(total);
    }
    CarlemanSums { partial, zero_norm_at: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenline_round_trip() {
        let basis = BasisDescriptor::laguerre_radial(1, 16).unwrap();
        let seq = analyze(|r| crate::orthopoly::laguerre_psi(3, 1, r).unwrap(), &basis, 16).unwrap();
        for (k, c) in seq.coeffs().iter().enumerate() {
            let want = if k == 3 { 1.0 } else { 0.0 };
            assert!((basis.norming(k) * c.re - want).abs() < 1e-12, "k={k}");
        }
        for &r in &[0.0, 0.7, 2.5, 6.0] {
            let got = synthesize(&seq, r).unwrap().re;
            assert!((got - crate::orthopoly::laguerre_psi(3, 1, r).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn hermite_line_coefficients() {
        let basis = BasisDescriptor::hermite_line(10);
        let seq = analyze(|x| crate::orthopoly::hermite_fn(2, x).unwrap().to_f64(), &basis, 10).unwrap();
        for (k, c) in seq.coeffs().iter().enumerate() {
            let want = if k == 2 { 1.0 } else { 0.0 };
            assert!((c.re - want).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_sequence() {
        let basis = BasisDescriptor::laguerre_radial(2, 8).unwrap();
        let z = CoefficientSequence::zeros(basis, 9);
        assert_eq!(synthesize(&z, 1.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(parseval_norm(&z), 0.0);
        assert!(carleman_partial_sums(&operator_norms(&z, 3)).diverges_trivially());
    }

    #[test]
    fn single_eigenline_norms() {
        let basis = BasisDescriptor::laguerre_radial(1, 4).unwrap();
        let norms = operator_norms(&CoefficientSequence::eigenline(basis, 0, 5), 60);
        for v in norms.values() {
            assert!((v.to_f64() - 1.0).abs() < 1e-14);
        }
        let sums = carleman_partial_sums(&norms);
        assert_eq!(sums.partial.last().copied(), Some(60.0));
    }

    #[test]
    fn rejects_non_finite() {
        let basis = BasisDescriptor::hermite_line(2);
        assert!(CoefficientSequence::from_real(basis, &[1.0, f64::NAN]).is_err());
        assert!(analyze(|_| f64::INFINITY, &basis, 2).is_err());
    }
}
