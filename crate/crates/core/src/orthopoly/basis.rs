use super::{
    check_degree, hermite_fns, jacobi_norm_sq, jacobi_r_all, laguerre_fns, laguerre_psi_all,
    laguerre_psi_ratio, ln_gamma, DEFAULT_DEGREE_CAP,
};
use crate::error::{param, Result};
use crate::scaled::ScaledValue;

/// The three eigenfunction families expansions are built on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisFamily {
    /// Orthonormal Hermite functions `h_k` on ℝ, eigenvalues `2k+1`.
    HermiteLine,
    /// `ψ_k^δ(r) = L_k^δ(r²/2) e^{-r²/4} / L_k^δ(0)` on `L²(ℝ⁺, r^{2δ+1} dr)`,
    /// eigenvalues `2k+δ+1`. For the special Hermite operator on ℂⁿ, `δ = n-1`.
    LaguerreRadial { delta: f64 },
    /// `R_k^{(α,β)}(cos s)` on `(0, π)` with weight
    /// `(sin s/2)^{2α+1} (cos s/2)^{2β+1} / Γ(α+1)`, eigenvalues `k(k+α+β+1)`.
    JacobiCompact { alpha: f64, beta: f64 },
}

/// An eigenfunction basis `ψ_k` with eigenvalues `λ_k`, norming constants
/// `c_k = (∫ ψ_k² w)^{-1}` and weight `w`, truncated at `max_degree`.
///
/// `LaguerreRadial` and `JacobiCompact` are normalized by `ψ_k(0) = 1`;
/// `HermiteLine` uses the orthonormal `h_k` (so `c_k = 1`) and reports
/// `unit_at_origin() == false`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisDescriptor {
    family: BasisFamily,
    max_degree: usize,
}

impl BasisDescriptor {
    pub fn new(family: BasisFamily, max_degree: usize) -> Result<Self> {
        match family {
            BasisFamily::HermiteLine => {}
            BasisFamily::LaguerreRadial { delta } => {
                if !(delta.is_finite() && delta >= 0.0) {
                    return Err(param(format!("radial Laguerre type must be >= 0, got {delta}")));
                }
            }
            BasisFamily::JacobiCompact { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0) {
                    return Err(param(format!(
                        "Jacobi parameters must exceed -1, got ({alpha}, {beta})"
                    )));
                }
            }
        }
        Ok(Self { family, max_degree })
    }

    pub fn hermite_line(max_degree: usize) -> Self {
        Self { family: BasisFamily::HermiteLine, max_degree }
    }

    /// The `ψ_k^{n-1}` basis for radial functions on ℂⁿ.
    pub fn laguerre_radial(n: usize, max_degree: usize) -> Result<Self> {
        if n == 0 {
            return Err(param("dimension n must be at least 1"));
        }
        Self::new(BasisFamily::LaguerreRadial { delta: (n - 1) as f64 }, max_degree)
    }

    pub fn jacobi_compact(alpha: f64, beta: f64, max_degree: usize) -> Result<Self> {
        Self::new(BasisFamily::JacobiCompact { alpha, beta }, max_degree)
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn with_max_degree(&self, max_degree: usize) -> Self {
        Self { family: self.family, max_degree }
    }

    pub fn unit_at_origin(&self) -> bool {
        !matches!(self.family, BasisFamily::HermiteLine)
    }

    /// Support of the weight.
    pub fn support(&self) -> (f64, f64) {
        match self.family {
            BasisFamily::HermiteLine => (f64::NEG_INFINITY, f64::INFINITY),
            BasisFamily::LaguerreRadial { .. } => (0.0, f64::INFINITY),
            BasisFamily::JacobiCompact { .. } => (0.0, std::f64::consts::PI),
        }
    }

    /// `λ_k`.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let kf = k as f64;
        match self.family {
            BasisFamily::HermiteLine => 2.0 * kf + 1.0,
            BasisFamily::LaguerreRadial { delta } => 2.0 * kf + delta + 1.0,
            BasisFamily::JacobiCompact { alpha, beta } => kf * (kf + alpha + beta + 1.0),
        }
    }

    /// `∫ ψ_k² w`, i.e. `1/c_k`.
    pub fn norm_sq(&self, k: usize) -> f64 {
        match self.family {
            BasisFamily::HermiteLine => 1.0,
            BasisFamily::LaguerreRadial { delta } => {
                // 2^δ Γ(δ+1) · k!Γ(δ+1)/Γ(k+δ+1)
                (delta * std::f64::consts::LN_2 + ln_gamma(delta + 1.0)).exp()
                    * laguerre_psi_ratio(k, delta)
            }
            BasisFamily::JacobiCompact { alpha, beta } => {
                // x = cos s maps the compact weight to 2^{-α-β-1}(1-x)^α(1+x)^β dx.
                let h = jacobi_norm_sq(k, alpha, beta).expect("parameters validated");
                h * (-(alpha + beta + 1.0) * std::f64::consts::LN_2 - ln_gamma(alpha + 1.0)).exp()
            }
        }
    }

    /// Norming constant `c_k`.
    pub fn norming(&self, k: usize) -> f64 {
        1.0 / self.norm_sq(k)
    }

    /// Weight `w` at a point of the support.
    pub fn weight(&self, r: f64) -> f64 {
        match self.family {
            BasisFamily::HermiteLine => 1.0,
            BasisFamily::LaguerreRadial { delta } => r.powf(2.0 * delta + 1.0),
            BasisFamily::JacobiCompact { alpha, beta } => {
                (0.5 * r).sin().powf(2.0 * alpha + 1.0) * (0.5 * r).cos().powf(2.0 * beta + 1.0)
                    / ln_gamma(alpha + 1.0).exp()
            }
        }
    }

    /// `ψ_0(r), …, ψ_kmax(r)`.
    pub fn eval_all(&self, kmax: usize, r: f64) -> Result<Vec<f64>> {
        check_degree(kmax, self.max_degree.max(DEFAULT_DEGREE_CAP))?;
        let cap = self.max_degree.max(kmax);
        match self.family {
            BasisFamily::HermiteLine => {
                Ok(hermite_fns(kmax, r, cap)?.iter().map(|v| v.to_f64()).collect())
            }
            BasisFamily::LaguerreRadial { delta } => laguerre_psi_all(kmax, delta, r, cap),
            BasisFamily::JacobiCompact { alpha, beta } => {
                jacobi_r_all(kmax, alpha, beta, r.cos(), cap)
            }
        }
    }

    /// `ψ_0(r), …, ψ_kmax(r)` without rounding the Gaussian factor to `f64`.
    pub fn eval_all_scaled(&self, kmax: usize, r: f64) -> Result<Vec<ScaledValue>> {
        check_degree(kmax, self.max_degree.max(DEFAULT_DEGREE_CAP))?;
        let cap = self.max_degree.max(kmax);
        match self.family {
            BasisFamily::HermiteLine => hermite_fns(kmax, r, cap),
            BasisFamily::LaguerreRadial { delta } => {
                let mut ratio = 1.0;
                Ok(laguerre_fns(kmax, delta, 0.5 * r * r, cap)?
                    .into_iter()
                    .enumerate()
                    .map(|(j, v)| {
                        if j > 0 {
                            ratio *= j as f64 / (j as f64 + delta);
                        }
                        v.mul_f64(ratio)
                    })
                    .collect())
            }
            BasisFamily::JacobiCompact { alpha, beta } => Ok(jacobi_r_all(kmax, alpha, beta, r.cos(), cap)?
                .into_iter()
                .map(ScaledValue::from_f64)
                .collect()),
        }
    }

    /// `ψ_k(r)`.
    pub fn eval(&self, k: usize, r: f64) -> Result<f64> {
        Ok(self.eval_all(k, r)?[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_increase() {
        let bases = [
            BasisDescriptor::hermite_line(50),
            BasisDescriptor::laguerre_radial(3, 50).unwrap(),
            BasisDescriptor::jacobi_compact(0.5, 0.5, 50).unwrap(),
        ];
        for b in &bases {
            for k in 0..50 {
                assert!(b.eigenvalue(k) >= 0.0);
                assert!(b.eigenvalue(k + 1) > b.eigenvalue(k));
            }
        }
    }

    #[test]
    fn radial_norming_matches_factorial_formula() {
        // ∫ψ_k² r^{2n-1} dr = 2^{n-1}(n-1)! k!(n-1)!/(k+n-1)!
        let b = BasisDescriptor::laguerre_radial(3, 10).unwrap();
        for k in 0..10u32 {
            let kf = k as f64;
            let want = 4.0 * 2.0 * 2.0 / ((kf + 1.0) * (kf + 2.0));
            assert!((b.norm_sq(k as usize) - want).abs() < 1e-14);
        }
        let one = BasisDescriptor::laguerre_radial(1, 10).unwrap();
        assert!((one.norming(2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_at_origin_for_normalized_families() {
        let b = BasisDescriptor::jacobi_compact(7.0, 3.0, 64).unwrap();
        for v in b.eval_all(64, 0.0).unwrap() {
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert!(!BasisDescriptor::hermite_line(4).unit_at_origin());
    }

    #[test]
    fn rejects_invalid_families() {
        assert!(BasisDescriptor::laguerre_radial(0, 4).is_err());
        assert!(BasisDescriptor::jacobi_compact(-1.5, 0.0, 4).is_err());
        assert!(BasisDescriptor::new(BasisFamily::LaguerreRadial { delta: -0.5 }, 4).is_err());
    }
}
