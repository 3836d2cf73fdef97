//! Gaussian quadrature for the Hermite, Laguerre and Jacobi weights, their
//! radial and angular substitutions, and (composite) Gauss–Legendre rules on
//! compact intervals.
//!
//! Nodes come from the Golub–Welsch eigenproblem and are polished by Newton
//! steps on the orthonormal recurrence. Weights are the reciprocal Christoffel
//! function `1 / Σ_{k<N} q_k(x_i)²`, accumulated in [`ScaledValue`] so that
//! weights far below `f64::MIN_POSITIVE` (outer Hermite nodes at large `N`)
//! remain positive and relatively accurate.

mod tridiag;

pub use tridiag::{symmetric_tridiagonal_eigen, EIGEN_TOL, MAX_SWEEPS};

use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::orthopoly::ln_gamma;
use crate::scaled::{sum_scaled, ScaledValue};
use crate::summation::pairwise_sum;

/// Weight functions for which rules can be built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFamily {
    /// `e^{-x²}` on ℝ.
    Hermite,
    /// `t^δ e^{-t}` on `(0, ∞)`.
    GeneralizedLaguerre { delta: f64 },
    /// `(1-x)^α (1+x)^β` on `(-1, 1)`.
    Jacobi { alpha: f64, beta: f64 },
    /// `r^{2δ+1} e^{-r²/2}` on `(0, ∞)`, via `t = r²/2`.
    RadialLaguerre { delta: f64 },
    /// `(sin s/2)^{2α+1} (cos s/2)^{2β+1}` on `(0, π)`, via `x = cos s`.
    CompactJacobi { alpha: f64, beta: f64 },
    /// Unit weight on `[a, b]`.
    Interval { a: f64, b: f64 },
}

impl WeightFamily {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            WeightFamily::Hermite => true,
            WeightFamily::GeneralizedLaguerre { delta } | WeightFamily::RadialLaguerre { delta } => {
                delta.is_finite() && delta > -1.0
            }
            WeightFamily::Jacobi { alpha, beta } | WeightFamily::CompactJacobi { alpha, beta } => {
                alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0
            }
            WeightFamily::Interval { a, b } => a.is_finite() && b.is_finite() && a < b,
        };
        if ok {
            Ok(())
        } else {
            Err(param(format!("weight family parameters out of domain: {self:?}")))
        }
    }

    /// `ln w(x)`.
    pub fn ln_weight(&self, x: f64) -> f64 {
        match *self {
            WeightFamily::Hermite => -x * x,
            WeightFamily::GeneralizedLaguerre { delta } => delta * x.ln() - x,
            WeightFamily::Jacobi { alpha, beta } => alpha * (1.0 - x).ln() + beta * (1.0 + x).ln(),
            WeightFamily::RadialLaguerre { delta } => (2.0 * delta + 1.0) * x.ln() - 0.5 * x * x,
            WeightFamily::CompactJacobi { alpha, beta } => {
                (2.0 * alpha + 1.0) * (0.5 * x).sin().ln() + (2.0 * beta + 1.0) * (0.5 * x).cos().ln()
            }
            WeightFamily::Interval { .. } => 0.0,
        }
    }

    /// `∫ w`.
    pub fn zeroth_moment(&self) -> f64 {
        match *self {
            WeightFamily::Hermite => std::f64::consts::PI.sqrt(),
            WeightFamily::GeneralizedLaguerre { delta } => ln_gamma(delta + 1.0).exp(),
            WeightFamily::Jacobi { alpha, beta } => jacobi_mu0(alpha, beta),
            WeightFamily::RadialLaguerre { delta } => {
                (delta * std::f64::consts::LN_2 + ln_gamma(delta + 1.0)).exp()
            }
            WeightFamily::CompactJacobi { alpha, beta } => {
                jacobi_mu0(alpha, beta) * (-(alpha + beta + 1.0) * std::f64::consts::LN_2).exp()
            }
            WeightFamily::Interval { a, b } => b - a,
        }
    }
}

fn jacobi_mu0(alpha: f64, beta: f64) -> f64 {
    ((alpha + beta + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
        - ln_gamma(alpha + beta + 2.0))
    .exp()
}

/// Orthonormal recurrence `x q_k = b_{k+1} q_{k+1} + a_k q_k + b_k q_{k-1}`
/// for the three classical weights.
#[derive(Debug, Clone, Copy)]
enum Classical {
    Hermite,
    Laguerre(f64),
    Jacobi(f64, f64),
}

impl Classical {
    fn diag(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            Classical::Hermite => 0.0,
            Classical::Laguerre(d) => 2.0 * kf + d + 1.0,
            Classical::Jacobi(a, b) => {
                let s = 2.0 * kf + a + b;
                if k == 0 {
                    (b - a) / (a + b + 2.0)
                } else {
                    (b * b - a * a) / (s * (s + 2.0))
                }
            }
        }
    }

    /// `b_k` for `k ≥ 1`.
    fn off(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            Classical::Hermite => (0.5 * kf).sqrt(),
            Classical::Laguerre(d) => (kf * (kf + d)).sqrt(),
            Classical::Jacobi(a, b) => {
                let s = 2.0 * kf + a + b;
                let sq = if k == 1 {
                    // (k+α+β)/(2k+α+β-1) cancels to 1 at k = 1.
                    4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
                } else {
                    4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
                };
                sq.sqrt()
            }
        }
    }

    fn mu0(&self) -> f64 {
        match *self {
            Classical::Hermite => std::f64::consts::PI.sqrt(),
            Classical::Laguerre(d) => ln_gamma(d + 1.0).exp(),
            Classical::Jacobi(a, b) => jacobi_mu0(a, b),
        }
    }

    fn support(&self) -> (f64, f64) {
        match self {
            Classical::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            Classical::Laguerre(_) => (0.0, f64::INFINITY),
            Classical::Jacobi(..) => (-1.0, 1.0),
        }
    }

    /// `q_N(x) / q_N'(x)`.
    fn newton_ratio(&self, n: usize, x: f64) -> f64 {
        let mut p_prev = 0.0;
        let mut p = 1.0;
        let mut d_prev = 0.0;
        let mut d = 0.0;
        for k in 0..n {
            let bk1 = self.off(k + 1);
            let bk = if k == 0 { 0.0 } else { self.off(k) };
            let shift = x - self.diag(k);
            let p_next = (shift * p - bk * p_prev) / bk1;
            let d_next = (shift * d + p - bk * d_prev) / bk1;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            let m = p.abs().max(d.abs());
            if m > 1e150 {
                p /= m;
                p_prev /= m;
                d /= m;
                d_prev /= m;
            }
        }
        p / d
    }

    /// `1 / Σ_{k<n} q_k(x)²`.
    fn christoffel_weight(&self, n: usize, x: f64) -> ScaledValue {
        let q0 = 1.0 / self.mu0().sqrt();
        let mut terms = Vec::with_capacity(n);
        terms.push(ScaledValue::from_f64(q0 * q0));
        if n > 1 {
            let q1 = (x - self.diag(0)) / self.off(1) * q0;
            let mut rec = crate::orthopoly::ScaledRecurrence::new(q0, q1);
            terms.push(rec.current() * rec.current());
            for k in 1..n - 1 {
                let bk1 = self.off(k + 1);
                rec.step((x - self.diag(k)) / bk1, self.off(k) / bk1);
                terms.push(rec.current() * rec.current());
            }
        }
        ScaledValue::ONE / sum_scaled(&terms)
    }

    /// Nodes and weights of the `n`-point Gauss rule.
    fn rule(&self, n: usize) -> Result<(Vec<f64>, Vec<ScaledValue>)> {
        let diag: Vec<f64> = (0..n).map(|k| self.diag(k)).collect();
        let off: Vec<f64> = (1..n).map(|k| self.off(k)).collect();
        let (mut nodes, _) = symmetric_tridiagonal_eigen(&diag, &off)?;
        let (lo, hi) = self.support();
        let snapshot = nodes.clone();
        for i in 0..n {
            let gap_lo = if i > 0 { snapshot[i] - snapshot[i - 1] } else { f64::INFINITY };
            let gap_hi = if i + 1 < n { snapshot[i + 1] - snapshot[i] } else { f64::INFINITY };
            let limit = 0.25 * gap_lo.min(gap_hi);
            let mut x = snapshot[i];
            for _ in 0..4 {
                let dx = self.newton_ratio(n, x);
                if !dx.is_finite() || dx.abs() > limit {
                    break;
                }
                let next = x - dx;
                if next <= lo || next >= hi {
                    break;
                }
                x = next;
                if dx.abs() <= f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                    break;
                }
            }
            nodes[i] = x;
        }
        for w in nodes.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Numerical(format!(
                    "Gauss nodes not strictly increasing after refinement ({} >= {})",
                    w[0], w[1]
                )));
            }
        }
        let weights = nodes.iter().map(|&x| self.christoffel_weight(n, x)).collect();
        Ok((nodes, weights))
    }
}

/// Gauss–Golub–Welsch nodes with first-component weights `μ₀ z_{0i}²`.
///
/// Exposed for cross-checking; [`gauss_rule`] uses Christoffel weights, which
/// stay relatively accurate where `z_{0i}²` underflows.
pub fn golub_welsch(family: WeightFamily, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    family.validate()?;
    let classical = match family {
        WeightFamily::Hermite => Classical::Hermite,
        WeightFamily::GeneralizedLaguerre { delta } => Classical::Laguerre(delta),
        WeightFamily::Jacobi { alpha, beta } => Classical::Jacobi(alpha, beta),
        _ => return Err(param("golub_welsch takes a classical weight family")),
    };
    let diag: Vec<f64> = (0..n).map(|k| classical.diag(k)).collect();
    let off: Vec<f64> = (1..n).map(|k| classical.off(k)).collect();
    let (nodes, first) = symmetric_tridiagonal_eigen(&diag, &off)?;
    let mu0 = classical.mu0();
    Ok((nodes, first.iter().map(|z| mu0 * z * z).collect()))
}

/// Default node count for integrands of polynomial degree `max_degree`.
pub fn default_node_count(max_degree: usize) -> usize {
    4 * max_degree + 16
}

/// Nodes and positive weights for a [`WeightFamily`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    family: WeightFamily,
    nodes: Vec<f64>,
    weights: Vec<ScaledValue>,
    exactness_degree: usize,
}

/// `n`-point Gauss rule for `family`.
pub fn gauss_rule(family: WeightFamily, n: usize) -> Result<QuadratureRule> {
    family.validate()?;
    if n == 0 {
        return Err(param("quadrature needs at least one node"));
    }
    let (nodes, weights) = match family {
        WeightFamily::Hermite => Classical::Hermite.rule(n)?,
        WeightFamily::GeneralizedLaguerre { delta } => Classical::Laguerre(delta).rule(n)?,
        WeightFamily::Jacobi { alpha, beta } => Classical::Jacobi(alpha, beta).rule(n)?,
        WeightFamily::RadialLaguerre { delta } => {
            let (t, w) = Classical::Laguerre(delta).rule(n)?;
            let scale = (delta * std::f64::consts::LN_2).exp();
            (t.iter().map(|t| (2.0 * t).sqrt()).collect(), w.iter().map(|w| w.mul_f64(scale)).collect())
        }
        WeightFamily::CompactJacobi { alpha, beta } => {
            let (x, w) = Classical::Jacobi(alpha, beta).rule(n)?;
            let scale = (-(alpha + beta + 1.0) * std::f64::consts::LN_2).exp();
            (
                x.iter().rev().map(|x| x.acos()).collect(),
                w.iter().rev().map(|w| w.mul_f64(scale)).collect(),
            )
        }
        WeightFamily::Interval { a, b } => {
            let (x, w) = Classical::Jacobi(0.0, 0.0).rule(n)?;
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            (x.iter().map(|x| mid + half * x).collect(), w.iter().map(|w| w.mul_f64(half)).collect())
        }
    };
    Ok(QuadratureRule { family, nodes, weights, exactness_degree: 2 * n - 1 })
}

/// Gauss–Legendre with `order` nodes on each of `panels` equal subintervals of `[a, b]`.
pub fn composite_legendre(a: f64, b: f64, panels: usize, order: usize) -> Result<QuadratureRule> {
    if panels == 0 {
        return Err(param("composite rule needs at least one panel"));
    }
    let base = gauss_rule(WeightFamily::Interval { a: -1.0, b: 1.0 }, order)?;
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(w.mul_f64(0.5 * h));
        }
    }
    Ok(QuadratureRule {
        family: WeightFamily::Interval { a, b },
        nodes,
        weights,
        exactness_degree: 2 * order - 1,
    })
}

impl QuadratureRule {
    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[ScaledValue] {
        &self.weights
    }

    /// Weights rounded to `f64`; the outermost Hermite/Laguerre weights may flush to zero.
    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w.to_f64()).collect()
    }

    pub fn exactness_degree(&self) -> usize {
        self.exactness_degree
    }

    /// `w_i / w(x_i)`: weights for integrals against `dx` instead of `w(x) dx`.
    pub fn plain_weights(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, w)| (*w * ScaledValue::exp(-self.family.ln_weight(x))).to_f64())
            .collect()
    }

    fn weighted_terms(&self, values: &[f64]) -> Result<Vec<f64>> {
        values
            .iter()
            .zip(&self.nodes)
            .zip(&self.weights)
            .enumerate()
            .map(|(index, ((&v, &node), w))| {
                if v.is_finite() {
                    Ok(w.mul_f64(v).to_f64())
                } else {
                    Err(Error::NonFiniteIntegrand { index, node })
                }
            })
            .collect()
    }

    /// `Σ w_i f(x_i)` by pairwise summation.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> Result<f64> {
        let values: Vec<f64> = self.nodes.iter().map(|&x| f(x)).collect();
        Ok(pairwise_sum(&self.weighted_terms(&values)?))
    }

    /// Same as [`integrate`](Self::integrate) with `f` evaluated in parallel;
    /// the reduction tree is unchanged, so the result is bitwise identical.
    pub fn integrate_par<F: Fn(f64) -> f64 + Sync>(&self, f: F) -> Result<f64> {
        let values: Vec<f64> = self.nodes.par_iter().map(|&x| f(x)).collect();
        Ok(pairwise_sum(&self.weighted_terms(&values)?))
    }

    /// `Σ w_i f(x_i)` for integrands already in scaled form.
    pub fn integrate_scaled<F: FnMut(f64) -> ScaledValue>(&self, mut f: F) -> ScaledValue {
        let terms: Vec<ScaledValue> =
            self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect();
        sum_scaled(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_node_hermite() {
        let r = gauss_rule(WeightFamily::Hermite, 1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert!((r.weights()[0].to_f64() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn two_node_hermite() {
        let r = gauss_rule(WeightFamily::Hermite, 2).unwrap();
        let h = 0.5f64.sqrt();
        assert!((r.nodes()[0] + h).abs() < 1e-15 && (r.nodes()[1] - h).abs() < 1e-15);
        for w in r.weights_f64() {
            assert!((w - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn christoffel_matches_golub_welsch() {
        for fam in [
            WeightFamily::Hermite,
            WeightFamily::GeneralizedLaguerre { delta: 0.5 },
            WeightFamily::Jacobi { alpha: 3.0, beta: 1.0 },
        ] {
            let (gx, gw) = golub_welsch(fam, 24).unwrap();
            let r = gauss_rule(fam, 24).unwrap();
            for i in 0..24 {
                assert!((gx[i] - r.nodes()[i]).abs() < 1e-12 * gx[i].abs().max(1.0));
                let w = r.weights()[i].to_f64();
                assert!((gw[i] - w).abs() < 1e-10 * w.max(1e-300) + 1e-15, "{fam:?} i={i}");
            }
        }
    }

    #[test]
    fn nonfinite_integrand_names_node() {
        let r = gauss_rule(WeightFamily::Hermite, 3).unwrap();
        let err = r.integrate(|x| if x == 0.0 { f64::NAN } else { x }).unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { index: 1, .. }));
    }

    #[test]
    fn compact_interval_rules() {
        let r = gauss_rule(WeightFamily::Interval { a: 0.0, b: 2.0 }, 5).unwrap();
        assert!((r.integrate(|x| x.powi(9)).unwrap() - 102.4).abs() < 1e-12);
        let c = composite_legendre(0.0, std::f64::consts::PI, 8, 8).unwrap();
        assert!((c.integrate(f64::sin).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let r = gauss_rule(WeightFamily::GeneralizedLaguerre { delta: 1.0 }, 200).unwrap();
        let f = |t: f64| (t * 0.3).cos() / (1.0 + t);
        assert_eq!(r.integrate(f).unwrap().to_bits(), r.integrate_par(f).unwrap().to_bits());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gauss_rule(WeightFamily::Hermite, 0).is_err());
        assert!(gauss_rule(WeightFamily::Jacobi { alpha: -1.0, beta: 0.0 }, 4).is_err());
        assert!(gauss_rule(WeightFamily::Interval { a: 1.0, b: 1.0 }, 4).is_err());
    }
}
