//! Closed-form values for the special functions and quadrature rules.

use spectral_ingham::orthopoly::{hermite_fn, jacobi_r, laguerre_poly, laguerre_psi, BasisDescriptor};
use spectral_ingham::quadrature::{gauss_rule, WeightFamily};

fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol * b.abs().max(1e-300), "{a} vs {b}");
}

#[test]
fn hermite_function_degree_five() {
    let x: f64 = 1.3;
    let h5 = 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x;
    let norm = (32.0 * std::f64::consts::PI.sqrt() * 120.0).sqrt();
    let expected = h5 * (-0.5 * x * x).exp() / norm;
    close(hermite_fn(5, x).unwrap().to_f64(), expected, 1e-13);
}

#[test]
fn hermite_functions_at_origin() {
    // h_{2j}(0) = π^{-1/4} (-1)^j √((2j)!)/(2^j j!)
    let mut ratio = 1.0;
    for j in 0..20usize {
        if j > 0 {
            ratio *= ((2 * j - 1) as f64 / (2 * j) as f64).sqrt();
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let expected = sign * std::f64::consts::PI.powf(-0.25) * ratio;
        close(hermite_fn(2 * j, 0.0).unwrap().to_f64(), expected, 1e-13);
        assert_eq!(hermite_fn(2 * j + 1, 0.0).unwrap().to_f64(), 0.0);
    }
}

#[test]
fn laguerre_values() {
    assert_eq!(laguerre_poly(2, 1.0, 0.0).unwrap(), 3.0);
    let t: f64 = 0.5 * 1.7 * 1.7;
    let l31 = (-t.powi(3) + 12.0 * t * t - 36.0 * t + 24.0) / 6.0;
    // 3!·1!/4! = 1/4
    let expected = 0.25 * l31 * (-0.5 * t).exp();
    close(laguerre_psi(3, 2, 1.7).unwrap(), expected, 1e-13);
    for k in 0..40 {
        close(laguerre_psi(k, 3, 0.0).unwrap(), 1.0, 1e-13);
    }
}

#[test]
fn jacobi_reduces_to_legendre_and_gegenbauer() {
    for &x in &[-0.9, -0.3, 0.0, 0.45, 0.99] {
        assert!((jacobi_r(2, 0.0, 0.0, x).unwrap() - (1.5 * x * x - 0.5)).abs() < 1e-14);
        let p3 = 0.5 * (5.0 * x * x * x - 3.0 * x);
        assert!((jacobi_r(3, 0.0, 0.0, x).unwrap() - p3).abs() < 1e-14);
        // α = β = -1/2 gives Chebyshev: R_m(cos s) = cos(ms).
        let s = f64::acos(x);
        assert!((jacobi_r(7, -0.5, -0.5, x).unwrap() - (7.0 * s).cos()).abs() < 1e-13);
    }
}

#[test]
fn basis_norms_match_closed_forms() {
    let b = BasisDescriptor::laguerre_radial(3, 10).unwrap();
    for k in 0..=10usize {
        // 2^{n-1}(n-1)! k!(n-1)!/(k+n-1)!
        let expected = 4.0 * 2.0 * 2.0 / ((k + 1) * (k + 2)) as f64;
        close(b.norm_sq(k), expected, 1e-13);
    }
    let h = BasisDescriptor::hermite_line(5);
    assert_eq!(h.norm_sq(3), 1.0);
}

#[test]
fn hermite_rule_moments() {
    let rule = gauss_rule(WeightFamily::Hermite, 12).unwrap();
    for j in 0..12 {
        let got = rule.integrate(|x| x.powi(2 * j)).unwrap();
        close(got, gamma(j as f64 + 0.5), 1e-12);
        let odd = rule.integrate(|x| x.powi(2 * j + 1)).unwrap();
        assert!(odd.abs() < 1e-10 * gamma(j as f64 + 1.0));
    }
}

#[test]
fn laguerre_rule_moments() {
    for delta in [0.0, 0.5, 1.0, 2.5] {
        let rule = gauss_rule(WeightFamily::GeneralizedLaguerre { delta }, 10).unwrap();
        for j in 0..20 {
            let got = rule.integrate(|t| t.powi(j)).unwrap();
            close(got, gamma(j as f64 + delta + 1.0), 1e-11);
        }
    }
}

#[test]
fn jacobi_rule_moments() {
    let rule = gauss_rule(WeightFamily::Jacobi { alpha: 0.0, beta: 0.0 }, 8).unwrap();
    for j in 0..8 {
        close(rule.integrate(|x| x.powi(2 * j)).unwrap(), 2.0 / (2 * j + 1) as f64, 1e-13);
    }
    // (1-x)(1+x)² = 1 + x - x² - x³
    let rule = gauss_rule(WeightFamily::Jacobi { alpha: 1.0, beta: 2.0 }, 4).unwrap();
    close(rule.integrate(|_| 1.0).unwrap(), 4.0 / 3.0, 1e-13);
}

#[test]
fn radial_and_compact_rules() {
    // ∫ r^{2δ+1} e^{-r²/2} r² dr = 2^{δ+1} Γ(δ+2)
    let delta = 1.0;
    let rule = gauss_rule(WeightFamily::RadialLaguerre { delta }, 10).unwrap();
    close(rule.integrate(|r| r * r).unwrap(), 2f64.powf(delta + 1.0) * gamma(delta + 2.0), 1e-12);
    // (sin s/2)(cos s/2) = sin(s)/2 for α = β = 0; ∫_0^π sin(s)/2 ds = 1
    let rule = gauss_rule(WeightFamily::CompactJacobi { alpha: 0.0, beta: 0.0 }, 6).unwrap();
    close(rule.integrate(|_| 1.0).unwrap(), 1.0, 1e-13);
    close(rule.integrate(|s| s.cos().powi(2)).unwrap(), 1.0 / 3.0, 1e-13);
}
