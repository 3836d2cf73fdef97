use super::{check_degree, ln_gamma, ScaledRecurrence, DEFAULT_DEGREE_CAP};
use crate::error::{param, Result};
use crate::scaled::ScaledValue;

fn check_type(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > -1.0 {
        Ok(())
    } else {
        Err(param(format!("Laguerre type must exceed -1, got {delta}")))
    }
}

/// Plain Laguerre polynomial `L_k^δ(t)` by the classical recurrence.
///
/// Intended for moderate `k`; high-degree callers should use [`laguerre_fns`].
pub fn laguerre_poly(k: usize, delta: f64, t: f64) -> Result<f64> {
    check_degree(k, DEFAULT_DEGREE_CAP)?;
    check_type(delta)?;
    let mut prev = 1.0;
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + delta - t;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + delta - t) * cur - (jf + delta) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `L_j^δ(t) e^{-t/2}` for `j = 0..=kmax`.
pub fn laguerre_fns(kmax: usize, delta: f64, t: f64, cap: usize) -> Result<Vec<ScaledValue>> {
    check_degree(kmax, cap)?;
    check_type(delta)?;
    let damp = ScaledValue::exp(-0.5 * t);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(damp);
    if kmax == 0 {
        return Ok(out);
    }
    let mut rec = ScaledRecurrence::new(1.0, 1.0 + delta - t);
    out.push(rec.current() * damp);
    for j in 1..kmax {
        let jf = j as f64;
        let a = (2.0 * jf + 1.0 + delta - t) / (jf + 1.0);
        let b = (jf + delta) / (jf + 1.0);
        rec.step(a, b);
        out.push(rec.current() * damp);
    }
    Ok(out)
}

/// Normalized Laguerre function
/// `𝓛_k^δ(t) = (Γ(k+1)/Γ(k+1+δ))^{1/2} e^{-t/2} t^{δ/2} L_k^δ(t)`,
/// orthonormal on `L²(ℝ⁺, dt)`.
pub fn laguerre_normalized(k: usize, delta: f64, t: f64) -> Result<ScaledValue> {
    check_degree(k, DEFAULT_DEGREE_CAP)?;
    Ok(*laguerre_normalized_all(k, delta, t, DEFAULT_DEGREE_CAP)?
        .last()
        .expect("nonempty"))
}

/// `𝓛_0^δ(t), …, 𝓛_kmax^δ(t)`.
///
/// The recurrence is carried on `ℓ_k = (k!/Γ(k+δ+1))^{1/2} L_k^δ(t)`:
/// `ℓ_{k+1} = (2k+δ+1-t)/√((k+1)(k+δ+1)) ℓ_k - √(k(k+δ)/((k+1)(k+δ+1))) ℓ_{k-1}`.
pub fn laguerre_normalized_all(
    kmax: usize,
    delta: f64,
    t: f64,
    cap: usize,
) -> Result<Vec<ScaledValue>> {
    check_degree(kmax, cap)?;
    check_type(delta)?;
    if t < 0.0 {
        return Err(param(format!("Laguerre argument must be nonnegative, got {t}")));
    }
    let envelope = if t == 0.0 {
        if delta > 0.0 {
            return Ok(vec![ScaledValue::ZERO; kmax + 1]);
        } else if delta < 0.0 {
            return Err(param("𝓛_k^δ is unbounded at t = 0 when δ < 0"));
        }
        ScaledValue::ONE
    } else {
        ScaledValue::exp(-0.5 * t + 0.5 * delta * t.ln())
    };
    let l0 = (-0.5 * ln_gamma(delta + 1.0)).exp();
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(ScaledValue::from_f64(l0) * envelope);
    if kmax == 0 {
        return Ok(out);
    }
    let l1 = (delta + 1.0 - t) / (delta + 1.0).sqrt() * l0;
    let mut rec = ScaledRecurrence::new(l0, l1);
    out.push(rec.current() * envelope);
    for k in 1..kmax {
        let kf = k as f64;
        let a = (2.0 * kf + delta + 1.0 - t) / ((kf + 1.0) * (kf + delta + 1.0)).sqrt();
        let b = (kf * (kf + delta) / ((kf + 1.0) * (kf + delta + 1.0))).sqrt();
        rec.step(a, b);
        out.push(rec.current() * envelope);
    }
    Ok(out)
}

/// `k!Γ(δ+1)/Γ(k+δ+1) = 1/L_k^δ(0)`, built as a running product.
///
/// For `δ = n-1` this is `k!(n-1)!/(k+n-1)!`.
pub fn laguerre_psi_ratio(k: usize, delta: f64) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (i as f64) / (i as f64 + delta))
}

/// `ψ_k^{n-1}(r) = (k!(n-1)!/(k+n-1)!) L_k^{n-1}(r²/2) e^{-r²/4}`, so `ψ_k(0) = 1`.
pub fn laguerre_psi(k: usize, n: usize, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(param("dimension n must be at least 1"));
    }
    check_degree(k, DEFAULT_DEGREE_CAP)?;
    Ok(*laguerre_psi_all(k, (n - 1) as f64, r, DEFAULT_DEGREE_CAP)?
        .last()
        .expect("nonempty"))
}

/// `ψ_j^δ(r) = L_j^δ(r²/2) e^{-r²/4} / L_j^δ(0)` for `j = 0..=kmax`.
pub fn laguerre_psi_all(kmax: usize, delta: f64, r: f64, cap: usize) -> Result<Vec<f64>> {
    let vals = laguerre_fns(kmax, delta, 0.5 * r * r, cap)?;
    let mut ratio = 1.0;
    Ok(vals
        .iter()
        .enumerate()
        .map(|(j, v)| {
            if j > 0 {
                ratio *= j as f64 / (j as f64 + delta);
            }
            v.mul_f64(ratio).to_f64()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert_eq!(laguerre_normalized(0, 0.0, 0.0).unwrap().to_f64(), 1.0);
        assert!(laguerre_normalized(2, 1.0, 0.0).unwrap().is_zero());
        assert!((laguerre_poly(2, 1.0, 0.0).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn value_at_zero_matches_gamma_ratio() {
        for k in 0..30 {
            for &d in &[0.0, 0.5, 1.0, 2.5] {
                let want = (ln_gamma(k as f64 + d + 1.0)
                    - ln_gamma(k as f64 + 1.0)
                    - ln_gamma(d + 1.0))
                .exp();
                let got = laguerre_poly(k, d, 0.0).unwrap();
                assert!((got / want - 1.0).abs() < 1e-12, "k={k} d={d}");
                assert!((laguerre_psi_ratio(k, d) * want - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_type() {
        assert!(laguerre_poly(2, -1.0, 0.5).is_err());
        assert!(laguerre_normalized(2, -0.5, 0.0).is_err());
        assert!(laguerre_psi(1, 0, 1.0).is_err());
    }

    #[test]
    fn psi_is_one_at_origin() {
        for n in 1..=3 {
            for k in 0..=64 {
                let v = laguerre_psi(k, n, 0.0).unwrap();
                assert!((v - 1.0).abs() < 1e-13, "k={k} n={n} v={v}");
            }
        }
    }

    #[test]
    fn psi_zero_is_gaussian() {
        for &r in &[0.0, 0.4, 1.3, 3.0] {
            let v = laguerre_psi(0, 1, r).unwrap();
            assert!((v - (-r * r / 4.0).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn normalized_matches_plain_polynomial() {
        for k in 0..25 {
            let d = 0.5;
            let t = 3.7;
            let plain = laguerre_poly(k, d, t).unwrap();
            let norm = (0.5 * (ln_gamma(k as f64 + 1.0) - ln_gamma(k as f64 + 1.0 + d))).exp();
            let want = norm * (-t / 2.0).exp() * t.powf(d / 2.0) * plain;
            let got = laguerre_normalized(k, d, t).unwrap().to_f64();
            assert!((got - want).abs() < 1e-12 * want.abs().max(1e-3), "k={k}");
        }
    }
}
