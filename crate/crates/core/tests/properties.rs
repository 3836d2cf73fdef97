use proptest::prelude::*;

use spectral_ingham::cli::ExperimentConfig;
use spectral_ingham::ingham::{dilate, ingham_product, prop67_odd_transfer, HermiteTable};
use spectral_ingham::kernels::{kernel_trace, phi_kernel};
use spectral_ingham::orthopoly::{jacobi_r_all, laguerre_psi_all, DEFAULT_DEGREE_CAP};
use spectral_ingham::scaled::ScaledValue;
use spectral_ingham::spaces::{standard_catalog, verify_rho_identity};
use spectral_ingham::uncertainty::DecayProfile;

fn profile(p: f64) -> DecayProfile {
    DecayProfile::InversePower { c0: 1.0, c1: 1.0, p }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaled_round_trip(x in -1e300f64..1e300) {
        prop_assert_eq!(ScaledValue::from_f64(x).to_f64(), x);
    }

    #[test]
    fn scaled_product_adds_logs(a in -700.0f64..700.0, b in -700.0f64..700.0) {
        let p = ScaledValue::exp(a) * ScaledValue::exp(b);
        prop_assert!((p.ln_abs() - (a + b)).abs() <= 1e-12 * (1.0 + (a + b).abs()));
        let m = p.mantissa().abs();
        prop_assert!((1.0..2.0).contains(&m));
    }

    #[test]
    fn product_is_even_with_unit_mass(factors in 1usize..7, p in 0.55f64..2.0, x in 0.0f64..3.0) {
        let f = ingham_product(&profile(p), factors).unwrap();
        prop_assert!((f.mass() - 1.0).abs() < 1e-12);
        prop_assert_eq!(f.eval(x), f.eval(-x));
        prop_assert!(f.eval(x) >= 0.0);
        if x > f.support_radius() {
            prop_assert_eq!(f.eval(x), 0.0);
        }
        prop_assert!(f.fourier(x).abs() <= 1.0);
    }

    #[test]
    fn dilation_rescales(delta in 0.1f64..2.0, x in -2.0f64..2.0, xi in 0.0f64..20.0) {
        let f = ingham_product(&profile(1.0), 4).unwrap();
        let g = dilate(&f, delta).unwrap();
        prop_assert!((g.eval(delta * x) - f.eval(x) / delta).abs() <= 1e-9 * (1.0 + f.eval(x) / delta));
        prop_assert!((g.fourier(xi) - f.fourier(delta * xi)).abs() <= 1e-12);
        prop_assert!((g.support_radius() - delta * f.support_radius()).abs() <= 1e-12 * f.support_radius());
    }

    #[test]
    fn config_canonical_is_idempotent(
        k_max in 0usize..1000,
        n in 1usize..6,
        seed in any::<u64>(),
        delta in 1e-6f64..10.0,
        space in prop::sample::select(vec!["all", "S^2", "CP^3", "CaP^2"]),
    ) {
        let text = format!("k_max = {k_max}\nn={n}\n  seed = {seed} # comment\ndelta = {delta}\nspace = {space}\n");
        let cfg = ExperimentConfig::parse(&text).unwrap();
        let once = cfg.canonical();
        let again = ExperimentConfig::parse(&once).unwrap();
        prop_assert_eq!(&again, &cfg);
        prop_assert_eq!(again.canonical(), once);
    }

    #[test]
    fn odd_slice_is_dominated(entries in prop::collection::vec((0usize..5, 0usize..5, 0usize..5, -1.0f64..1.0), 1..40)) {
        let entries = entries.into_iter().map(|(a, b, c, v)| (vec![a, b, c], v)).collect();
        let table = HermiteTable::new(3, entries).unwrap();
        prop_assert!(prop67_odd_transfer(&table, 14).unwrap().dominated);
    }

    #[test]
    fn kernel_is_symmetric(x in prop::array::uniform2(-3.0f64..3.0), y in prop::array::uniform2(-3.0f64..3.0), k in 0usize..12) {
        let a = phi_kernel(k, &x, &y).unwrap();
        let b = phi_kernel(k, &y, &x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        prop_assert!(phi_kernel(k, &x, &x).unwrap() >= 0.0);
    }

    #[test]
    fn normalized_bases_are_one_at_the_origin(alpha in -0.49f64..8.0, beta in -0.49f64..4.0, delta in 0.0f64..4.0) {
        let beta = beta.min(alpha);
        for v in jacobi_r_all(40, alpha, beta, 1.0, DEFAULT_DEGREE_CAP).unwrap() {
            prop_assert!((v - 1.0).abs() < 1e-12);
        }
        for v in laguerre_psi_all(40, delta, 0.0, DEFAULT_DEGREE_CAP).unwrap() {
            prop_assert!((v - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn kernel_trace_counts_multi_indices() {
    for n in 1..=3usize {
        for k in 0..=8usize {
            // C(k+n-1, n-1)
            let dim: f64 = (1..n).map(|i| (k + i) as f64 / i as f64).product();
            let t = kernel_trace(n, k).unwrap();
            assert!((t - dim).abs() <= 1e-8 * dim, "n={n} k={k}: {t} vs {dim}");
        }
    }
}

#[test]
fn catalog_rho_identity_is_exact() {
    for entry in standard_catalog() {
        let r = verify_rho_identity(&entry, 256);
        assert!(r.passed(), "{}", entry.name());
        assert_eq!(r.max_defect, 0.0);
    }
}
