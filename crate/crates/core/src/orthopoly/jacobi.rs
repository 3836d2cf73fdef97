use super::{check_degree, ln_gamma, DEFAULT_DEGREE_CAP};
use crate::error::{param, Result};

fn check_params(alpha: f64, beta: f64) -> Result<()> {
    if alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0 {
        Ok(())
    } else {
        Err(param(format!("Jacobi parameters must exceed -1, got ({alpha}, {beta})")))
    }
}

/// `R_m^{(α,β)}(x) = P_m^{(α,β)}(x) / P_m^{(α,β)}(1)`.
pub fn jacobi_r(m: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_degree(m, DEFAULT_DEGREE_CAP)?;
    Ok(*jacobi_r_all(m, alpha, beta, x, DEFAULT_DEGREE_CAP)?
        .last()
        .expect("nonempty"))
}

/// `R_0(x), …, R_mmax(x)` from the recurrence normalized at `x = 1`.
///
/// With `s = 2n+α+β`:
/// `R_{n+1} = (s+1)((s+2)s x + α²-β²) / (2(n+α+1)(n+α+β+1)s) R_n
///          - n(n+β)(s+2) / ((n+α+1)(n+α+β+1)s) R_{n-1}`.
/// The coefficients are rational in `n`, so no factorials are formed.
pub fn jacobi_r_all(mmax: usize, alpha: f64, beta: f64, x: f64, cap: usize) -> Result<Vec<f64>> {
    check_degree(mmax, cap)?;
    check_params(alpha, beta)?;
    if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(param(format!("Jacobi argument must lie in [-1, 1], got {x}")));
    }
    let mut out = Vec::with_capacity(mmax + 1);
    out.push(1.0);
    if mmax == 0 {
        return Ok(out);
    }
    out.push(((alpha + beta + 2.0) * x + alpha - beta) / (2.0 * (alpha + 1.0)));
    for n in 1..mmax {
        let nf = n as f64;
        let s = 2.0 * nf + alpha + beta;
        let denom = (nf + alpha + 1.0) * (nf + alpha + beta + 1.0) * s;
        let a = (s + 1.0) * ((s + 2.0) * s * x + alpha * alpha - beta * beta) / (2.0 * denom);
        let b = nf * (nf + beta) * (s + 2.0) / denom;
        let next = a * out[n] - b * out[n - 1];
        out.push(next);
    }
    Ok(out)
}

/// `∫_{-1}^{1} R_m(x)² (1-x)^α (1+x)^β dx` in log-Gamma form.
pub fn jacobi_norm_sq(m: usize, alpha: f64, beta: f64) -> Result<f64> {
    check_params(alpha, beta)?;
    let mf = m as f64;
    // (m+α+β+1)/(2m+α+β+1) is exactly 1 at m = 0, which also covers α+β+1 = 0.
    let ratio = if m == 0 { 1.0 } else { (mf + alpha + beta + 1.0) / (2.0 * mf + alpha + beta + 1.0) };
    let ln = (alpha + beta + 1.0) * std::f64::consts::LN_2
        + ln_gamma(mf + beta + 1.0)
        + 2.0 * ln_gamma(alpha + 1.0)
        + ln_gamma(mf + 1.0)
        - ln_gamma(mf + alpha + beta + 2.0)
        - ln_gamma(mf + alpha + 1.0);
    Ok(ratio * ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_at_one() {
        for &(a, b) in &[(0.0, 0.0), (0.5, 0.5), (7.0, 3.0), (-0.5, -0.5), (3.0, 1.0)] {
            let v = jacobi_r_all(128, a, b, 1.0, DEFAULT_DEGREE_CAP).unwrap();
            for (m, r) in v.iter().enumerate() {
                assert!((r - 1.0).abs() < 1e-12, "m={m} ({a},{b}) {r}");
            }
        }
    }

    #[test]
    fn low_degrees() {
        assert_eq!(jacobi_r(0, 2.0, 1.0, 0.3).unwrap(), 1.0);
        for &x in &[-1.0, -0.2, 0.0, 0.7] {
            assert!((jacobi_r(1, 0.0, 0.0, x).unwrap() - x).abs() < 1e-15);
        }
    }

    #[test]
    fn legendre_closed_form() {
        let x: f64 = 0.37;
        let p3 = 0.5 * (5.0 * x.powi(3) - 3.0 * x);
        assert!((jacobi_r(3, 0.0, 0.0, x).unwrap() - p3).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_case() {
        // α = β = -1/2 gives T_m(x) / T_m(1) = cos(m s).
        let s: f64 = 1.1;
        let v = jacobi_r_all(40, -0.5, -0.5, s.cos(), 64).unwrap();
        for (m, r) in v.iter().enumerate() {
            assert!((r - (m as f64 * s).cos()).abs() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(jacobi_r(2, -1.0, 0.0, 0.1).is_err());
        assert!(jacobi_r(2, 0.0, 0.0, 1.5).is_err());
    }

    #[test]
    fn legendre_norm() {
        for m in 0..10 {
            let want = 2.0 / (2.0 * m as f64 + 1.0);
            assert!((jacobi_norm_sq(m, 0.0, 0.0).unwrap() - want).abs() < 1e-14);
        }
        // Chebyshev: π at m = 0, π/2 after.
        assert!((jacobi_norm_sq(0, -0.5, -0.5).unwrap() - std::f64::consts::PI).abs() < 1e-13);
        assert!((jacobi_norm_sq(4, -0.5, -0.5).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }
}
