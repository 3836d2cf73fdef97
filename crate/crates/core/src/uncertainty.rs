//! The moment measure `μ_f`, the Cauchy–Schwarz moment bound, and the
//! Carleman-type sequences built from decay profiles `θ`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expansion::CoefficientSequence;
use crate::scaled::{sum_scaled, ScaledValue};

/// Moments `M(2m) = Σ_k λ_k^m c_k |f̂(k)|` of the even measure placing mass
/// `c_k |f̂(k)|/2` at `±√λ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    even: Vec<ScaledValue>,
}

impl MomentSequence {
    /// `M(j)`; odd moments vanish.
    pub fn moment(&self, j: usize) -> ScaledValue {
        if j % 2 == 1 {
            ScaledValue::ZERO
        } else {
            self.even[j / 2]
        }
    }

    /// `M(0), M(2), …`.
    pub fn even_moments(&self) -> &[ScaledValue] {
        &self.even
    }

    pub fn total_mass(&self) -> ScaledValue {
        self.even[0]
    }

    /// Largest `ln M(2m)² - ln M(2m-2) - ln M(2m+2)` (≤ 0 when log-convex).
    pub fn log_convexity_excess(&self) -> f64 {
        self.even
            .windows(3)
            .filter(|w| !w[1].is_zero())
            .map(|w| 2.0 * w[1].ln_abs() - w[0].ln_abs() - w[2].ln_abs())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `M(2m)` for `m = 0..=max_m`.
pub fn moments(seq: &CoefficientSequence, max_m: usize) -> MomentSequence {
    let basis = seq.basis();
    let mass: Vec<ScaledValue> = seq
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| ScaledValue::from_f64(basis.norming(k) * c.norm()))
        .collect();
    let lambdas: Vec<ScaledValue> =
        (0..seq.len()).map(|k| ScaledValue::from_f64(basis.eigenvalue(k))).collect();
    let even = (0..=max_m)
        .map(|m| {
            let terms: Vec<ScaledValue> =
                mass.iter().zip(&lambdas).map(|(w, l)| *w * l.powi(m as u64)).collect();
            sum_scaled(&terms)
        })
        .collect();
    MomentSequence { even }
}

/// Both sides of `M(2m) ≤ C_j^{1/2} ‖P^{m+j} f‖` with `C_j = Σ_{λ_k>0} λ_k^{-2j} c_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsBound {
    pub lhs: ScaledValue,
    pub rhs: ScaledValue,
}

impl CsBound {
    pub fn holds(&self) -> bool {
        self.lhs.is_zero() || self.lhs.ln_abs() <= self.rhs.ln_abs() + 1e-12
    }
}

pub fn moment_cs_bound(seq: &CoefficientSequence, m: usize, j: usize) -> Result<CsBound> {
    let basis = seq.basis();
    let mut lhs_terms = Vec::new();
    let mut cj_terms = Vec::new();
    let mut norm_terms = Vec::new();
    for (k, c) in seq.coeffs().iter().enumerate() {
        let lambda = basis.eigenvalue(k);
        let ck = basis.norming(k);
        if lambda == 0.0 {
            if m == 0 && c.norm() > 0.0 {
                return Err(Error::Precondition(
                    "M(0) is not controlled by C_j when the λ = 0 line carries mass".into(),
                ));
            }
            continue;
        }
        let l = ScaledValue::from_f64(lambda);
        lhs_terms.push(l.powi(m as u64).mul_f64(ck * c.norm()));
        cj_terms.push(ScaledValue::from_f64(ck) / l.powi(2 * j as u64));
        norm_terms.push(l.powi(2 * (m + j) as u64).mul_f64(ck * c.norm_sqr()));
    }
    Ok(CsBound {
        lhs: sum_scaled(&lhs_terms),
        rhs: (sum_scaled(&cj_terms) * sum_scaled(&norm_terms)).sqrt(),
    })
}

/// Partial sums of `a_m` and of `a_m^{1+j/m}` (`a[0]` is `a_1`).
pub fn lemma23_diagnostic(a: &[f64], j: u32) -> Result<(Vec<f64>, Vec<f64>)> {
    if let Some(i) = a.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::Parameter(format!("a_{} must be positive and finite", i + 1)));
    }
    let mut s = 0.0;
    let mut t = 0.0;
    let mut sums = Vec::with_capacity(a.len());
    let mut shifted = Vec::with_capacity(a.len());
    for (i, &x) in a.iter().enumerate() {
        let m = (i + 1) as f64;
        s += x;
        t += x.powf(1.0 + j as f64 / m);
        sums.push(s);
        shifted.push(t);
    }
    Ok((sums, shifted))
}

/// A positive decreasing envelope `θ` on `[0, ∞)`.
#[derive(Clone)]
pub enum DecayProfile {
    /// `θ ≡ τ`.
    Constant { tau: f64 },
    /// `θ(t) = c₀ (1 + c₁ t)^{-p}`.
    InversePower { c0: f64, c1: f64, p: f64 },
    /// `θ(t) = c₀ / ln(e + t)`.
    InverseLog { c0: f64 },
    Custom {
        name: String,
        theta: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        integrable: bool,
        floor: bool,
    },
}

impl fmt::Debug for DecayProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecayProfile({})", self.describe())
    }
}

impl DecayProfile {
    /// `(1 + t)^{-1/2}`.
    pub fn inverse_sqrt() -> Self {
        DecayProfile::InversePower { c0: 1.0, c1: 1.0, p: 0.5 }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            DecayProfile::Constant { tau } => *tau,
            DecayProfile::InversePower { c0, c1, p } => c0 * (1.0 + c1 * t).powf(-p),
            DecayProfile::InverseLog { c0 } => c0 / (std::f64::consts::E + t).ln(),
            DecayProfile::Custom { theta, .. } => theta(t),
        }
    }

    /// `c₀ θ(c₁ t)`.
    pub fn eval_scaled(&self, c0: f64, c1: f64, t: f64) -> f64 {
        c0 * self.eval(c1 * t)
    }

    /// Whether `∫_1^∞ θ(t)/t dt < ∞`.
    pub fn integrable(&self) -> bool {
        match self {
            DecayProfile::Constant { .. } | DecayProfile::InverseLog { .. } => false,
            DecayProfile::InversePower { p, .. } => *p > 0.0,
            DecayProfile::Custom { integrable, .. } => *integrable,
        }
    }

    /// Whether `θ(t) ≥ c (1+t)^{-1/2}` for some `c > 0`.
    pub fn has_floor(&self) -> bool {
        match self {
            DecayProfile::Constant { .. } | DecayProfile::InverseLog { .. } => true,
            DecayProfile::InversePower { p, .. } => *p <= 0.5,
            DecayProfile::Custom { floor, .. } => *floor,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            DecayProfile::Constant { tau } => format!("constant({tau})"),
            DecayProfile::InversePower { c0, c1, p } => format!("{c0}*(1+{c1}t)^-{p}"),
            DecayProfile::InverseLog { c0 } => format!("{c0}/ln(e+t)"),
            DecayProfile::Custom { name, .. } => name.clone(),
        }
    }

    /// `θ` positive and nonincreasing on the (sorted) grid.
    pub fn is_monotone_on(&self, grid: &[f64]) -> bool {
        let vals: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect();
        vals.iter().all(|v| *v > 0.0 && v.is_finite()) && vals.windows(2).all(|w| w[1] <= w[0])
    }

    /// Soft check `θ(t_max) < θ(1)/2`.
    pub fn vanishes_by(&self, t_max: f64) -> bool {
        self.eval(t_max) < 0.5 * self.eval(1.0)
    }
}

const PROP26_TAIL: f64 = 1e-16;
const PROP26_CAP: u64 = 100_000_000;

/// `a_m` with `a_m² = Σ_{n≥0} (n+ρ)^{4m+k} e^{-2(n+ρ)θ(n+ρ)}`.
pub fn prop26_sequence(theta: &DecayProfile, rho: f64, k: u32, m: u32) -> Result<ScaledValue> {
    if !theta.has_floor() {
        return Err(Error::Precondition(format!(
            "{} lacks the floor θ(t) ≥ c(1+t)^(-1/2)",
            theta.describe()
        )));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Parameter(format!("ρ must be positive, got {rho}")));
    }
    let power = (4 * m + k) as f64;
    let mut sum = ScaledValue::ZERO;
    let mut last_ln = f64::NEG_INFINITY;
    for n in 0..=PROP26_CAP {
        let x = n as f64 + rho;
        let ln_term = power * x.ln() - 2.0 * x * theta.eval(x);
        let term = ScaledValue::exp(ln_term);
        sum += term;
        let past_peak = ln_term < last_ln;
        last_ln = ln_term;
        if past_peak {
            let rel = (ln_term - sum.ln_abs()).exp();
            if rel < PROP26_TAIL && (n as f64 + 1.0) * rel < PROP26_TAIL {
                return Ok(sum.sqrt());
            }
        }
    }
    Err(Error::Truncation(format!(
        "a_{m} sum for {} not converged after n = {PROP26_CAP}",
        theta.describe()
    )))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop26Row {
    pub m: u32,
    pub log2_a_sq: f64,
    pub log2_bound: f64,
    /// `Σ_{m' ≤ m} a_{m'}^{-1/(2m')}` over the checked range.
    pub carleman_partial: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop26Report {
    pub rows: Vec<Prop26Row>,
    /// `C` in `a_m² ≤ (4 C m / θ(2m⁴))^{4m}`.
    pub fitted_c: f64,
    pub violations: usize,
}

/// Fits `C = max a_m^{1/(2m)} θ(2m⁴)/(4m)` over `m_range` and checks
/// `a_m² ≤ (4Cm/θ(2m⁴))^{4m}` at every `m`.
pub fn prop26_bound_check(
    theta: &DecayProfile,
    rho: f64,
    k: u32,
    m_range: std::ops::RangeInclusive<u32>,
) -> Result<Prop26Report> {
    let ms: Vec<u32> = m_range.filter(|&m| m >= 1).collect();
    let a: Vec<ScaledValue> = ms
        .iter()
        .map(|&m| prop26_sequence(theta, rho, k, m))
        .collect::<Result<_>>()?;
    let ln_ratio = |m: u32, a_m: &ScaledValue| {
        let mf = m as f64;
        a_m.ln_abs() / (2.0 * mf) + theta.eval(2.0 * mf.powi(4)).ln() - (4.0 * mf).ln()
    };
    let ln_c = ms
        .iter()
        .zip(&a)
        .map(|(&m, a_m)| ln_ratio(m, a_m))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(prop26_check_with(theta, &ms, &a, ln_c.exp()))
}

/// Checks the bound with a given `C` (for fit/validate splits).
pub fn prop26_check_fixed(
    theta: &DecayProfile,
    rho: f64,
    k: u32,
    m_range: std::ops::RangeInclusive<u32>,
    c: f64,
) -> Result<Prop26Report> {
    let ms: Vec<u32> = m_range.filter(|&m| m >= 1).collect();
    let a: Vec<ScaledValue> = ms
        .iter()
        .map(|&m| prop26_sequence(theta, rho, k, m))
        .collect::<Result<_>>()?;
    Ok(prop26_check_with(theta, &ms, &a, c))
}

fn prop26_check_with(theta: &DecayProfile, ms: &[u32], a: &[ScaledValue], c: f64) -> Prop26Report {
    let mut rows = Vec::with_capacity(ms.len());
    let mut violations = 0;
    let mut partial = 0.0;
    for (&m, a_m) in ms.iter().zip(a) {
        let mf = m as f64;
        let ln_a_sq = 2.0 * a_m.ln_abs();
        let ln_bound = 4.0 * mf * (4.0 * c * mf / theta.eval(2.0 * mf.powi(4))).ln();
        if ln_a_sq > ln_bound + 1e-12 * ln_bound.abs() {
            violations += 1;
        }
        partial += (-a_m.ln_abs() / (2.0 * mf)).exp();
        rows.push(Prop26Row {
            m,
            log2_a_sq: ln_a_sq / std::f64::consts::LN_2,
            log2_bound: ln_bound / std::f64::consts::LN_2,
            carleman_partial: partial,
        });
    }
    Prop26Report { rows, fitted_c: c, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::BasisDescriptor;

    #[test]
    fn unit_eigenline_moments() {
        let basis = BasisDescriptor::laguerre_radial(1, 4).unwrap();
        let seq = CoefficientSequence::eigenline(basis, 0, 5);
        let mu = moments(&seq, 30);
        for m in 0..=30 {
            assert!((mu.moment(2 * m).to_f64() - 1.0).abs() < 1e-14);
            assert!(mu.moment(2 * m + 1).is_zero());
        }
    }

    #[test]
    fn cs_bound_tight_on_one_line() {
        let basis = BasisDescriptor::hermite_line(8);
        let mut c = vec![0.0; 6];
        c[4] = 0.3;
        let seq = CoefficientSequence::from_real(basis, &c).unwrap();
        let b = moment_cs_bound(&seq, 5, 2).unwrap();
        // rhs / lhs = (C_2 λ_4^4)^{1/2}
        let cj: f64 = (0..6).map(|k| (2.0 * k as f64 + 1.0).powi(-4)).sum();
        let want = 0.5 * (cj * 9.0f64.powi(4)).ln();
        assert!((b.rhs.ln_abs() - b.lhs.ln_abs() - want).abs() < 1e-12);
        assert!(b.holds());
    }

    #[test]
    fn cs_bound_skips_null_line() {
        let basis = BasisDescriptor::jacobi_compact(0.0, 0.0, 8).unwrap();
        let seq = CoefficientSequence::from_real(basis, &[1.0, 0.5, 0.25]).unwrap();
        assert!(moment_cs_bound(&seq, 0, 1).is_err());
        assert!(moment_cs_bound(&seq, 1, 1).unwrap().holds());
    }

    #[test]
    fn geometric_prop26_case() {
        let a0 = prop26_sequence(&DecayProfile::Constant { tau: 1.0 }, 1.0, 0, 0).unwrap();
        let e2 = (-2.0f64).exp();
        assert!((a0.to_f64().powi(2) - e2 / (1.0 - e2)).abs() < 1e-15);
    }

    #[test]
    fn prop26_needs_floor() {
        let steep = DecayProfile::InversePower { c0: 1.0, c1: 1.0, p: 1.0 };
        assert!(matches!(prop26_sequence(&steep, 1.0, 0, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn lemma23_constant_sequence() {
        let (s, t) = lemma23_diagnostic(&[1.0; 10], 3).unwrap();
        assert_eq!(s, t);
        assert!(lemma23_diagnostic(&[1.0, 0.0], 1).is_err());
    }

    #[test]
    fn profile_flags() {
        assert!(DecayProfile::inverse_sqrt().integrable());
        assert!(DecayProfile::inverse_sqrt().has_floor());
        assert!(!DecayProfile::InverseLog { c0: 1.0 }.integrable());
        let grid: Vec<f64> = (0..100).map(|i| i as f64 * 0.5).collect();
        assert!(DecayProfile::InverseLog { c0: 2.0 }.is_monotone_on(&grid));
        assert!(DecayProfile::inverse_sqrt().vanishes_by(100.0));
    }
}
