use super::{check_degree, ScaledRecurrence, DEFAULT_DEGREE_CAP};
use crate::error::Result;
use crate::scaled::ScaledValue;

/// `ln π^{-1/4}`
const LN_PI_QUARTER: f64 = -0.28618247146235004;

/// Normalized Hermite function `h_k(x) = (2^k √π k!)^{-1/2} H_k(x) e^{-x²/2}`.
pub fn hermite_fn(k: usize, x: f64) -> Result<ScaledValue> {
    check_degree(k, DEFAULT_DEGREE_CAP)?;
    Ok(*hermite_fns(k, x, DEFAULT_DEGREE_CAP)?.last().expect("nonempty"))
}

/// `h_0(x), …, h_kmax(x)`.
///
/// The recurrence runs on `h_k / (π^{-1/4} e^{-x²/2})`, which satisfies
/// `p_{k+1} = √(2/(k+1)) x p_k - √(k/(k+1)) p_{k-1}`; the Gaussian factor is
/// applied afterwards in scaled form.
pub fn hermite_fns(kmax: usize, x: f64, cap: usize) -> Result<Vec<ScaledValue>> {
    check_degree(kmax, cap)?;
    let gauss = ScaledValue::exp(LN_PI_QUARTER - 0.5 * x * x);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(gauss);
    if kmax == 0 {
        return Ok(out);
    }
    let mut rec = ScaledRecurrence::new(1.0, std::f64::consts::SQRT_2 * x);
    out.push(rec.current() * gauss);
    for k in 1..kmax {
        let kf = k as f64;
        let a = (2.0 / (kf + 1.0)).sqrt() * x;
        let b = (kf / (kf + 1.0)).sqrt();
        rec.step(a, b);
        out.push(rec.current() * gauss);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn value_at_origin() {
        let h0 = hermite_fn(0, 0.0).unwrap().to_f64();
        assert!((h0 - 0.7511255444649425).abs() < 1e-16);
        assert!(hermite_fn(1, 0.0).unwrap().is_zero());
    }

    #[test]
    fn degree_cap_is_enforced() {
        assert_eq!(
            hermite_fn(513, 0.3),
            Err(Error::DegreeCap { degree: 513, cap: 512 })
        );
        assert!(hermite_fns(600, 0.3, 600).is_ok());
    }

    #[test]
    fn far_tail_does_not_underflow() {
        // e^{-x²/2} alone underflows at x = 40.
        let v = hermite_fn(20, 40.0).unwrap();
        assert!(!v.is_zero());
        assert!(v.ln_abs() < -700.0);
    }

    #[test]
    fn parity() {
        for k in 0..40 {
            for &x in &[0.3, 1.7, 4.2, 9.0] {
                let a = hermite_fn(k, x).unwrap();
                let b = hermite_fn(k, -x).unwrap();
                let expected = if k % 2 == 0 { a } else { -a };
                assert_eq!(b, expected, "k={k} x={x}");
            }
        }
    }
}
