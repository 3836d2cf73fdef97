//! Rank-one compact symmetric spaces in their radial (Jacobi) model.
//!
//! Half-integer quantities (`ρ`, `α`, `β`) are stored doubled so every
//! identity is checked in exact integer arithmetic.

use std::fmt;
use std::io::Write;

use crate::error::{param, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceName {
    Sphere(u32),
    RealProjective(u32),
    ComplexProjective(u32),
    QuaternionicProjective(u32),
    CayleyPlane,
}

impl fmt::Display for SpaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceName::Sphere(d) => write!(f, "S^{d}"),
            SpaceName::RealProjective(d) => write!(f, "RP^{d}"),
            SpaceName::ComplexProjective(l) => write!(f, "CP^{l}"),
            SpaceName::QuaternionicProjective(l) => write!(f, "HP^{l}"),
            SpaceName::CayleyPlane => write!(f, "CaP^2"),
        }
    }
}

/// Which spherical representations occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    AllIntegers,
    EvenIntegers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceCatalogEntry {
    name: SpaceName,
    d: i64,
    m: i64,
    rho2: i64,
    alpha2: i64,
    beta2: i64,
    parity: Parity,
    growth_exponent: u32,
}

/// Catalog entry for `name`.
///
/// Spheres and real projective spaces use `c_n = n(n+d-1)`, `ρ = (d-1)/2`;
/// the projective spaces over ℂ, ℍ and the octonions use `c_n = n(n+m+d)`,
/// `ρ = (m+d)/2` with `(d, m) = (2, l-2), (4, 2l-3), (8, 3)`. Sphere entries
/// record `m = -1` so both shapes read `c_n = n(n + 2ρ)`.
pub fn catalog(name: SpaceName) -> Result<SpaceCatalogEntry> {
    let entry = |d: i64, m: i64, alpha2: i64, beta2: i64, parity, growth_exponent| SpaceCatalogEntry {
        name,
        d,
        m,
        rho2: m + d,
        alpha2,
        beta2,
        parity,
        growth_exponent,
    };
    match name {
        SpaceName::Sphere(d) | SpaceName::RealProjective(d) => {
            if d < 1 {
                return Err(param(format!("{name}: dimension must be at least 1")));
            }
            let d = d as i64;
            let parity = if matches!(name, SpaceName::Sphere(_)) {
                Parity::AllIntegers
            } else {
                Parity::EvenIntegers
            };
            Ok(entry(d, -1, d - 2, d - 2, parity, (d - 1) as u32))
        }
        SpaceName::ComplexProjective(l) => {
            if l < 2 {
                return Err(param(format!("{name}: l must be at least 2")));
            }
            let l = l as i64;
            Ok(entry(2, l - 2, 2 * (l - 1), 0, Parity::AllIntegers, (2 * l - 1) as u32))
        }
        SpaceName::QuaternionicProjective(l) => {
            if l < 2 {
                return Err(param(format!("{name}: l must be at least 2")));
            }
            let l = l as i64;
            Ok(entry(4, 2 * l - 3, 2 * (2 * l - 1), 2, Parity::AllIntegers, (4 * l - 1) as u32))
        }
        SpaceName::CayleyPlane => Ok(entry(8, 3, 14, 6, Parity::AllIntegers, 15)),
    }
}

/// One representative of each family: S², RP³, CP², HP², CaP².
pub fn standard_catalog() -> Vec<SpaceCatalogEntry> {
    [
        SpaceName::Sphere(2),
        SpaceName::RealProjective(3),
        SpaceName::ComplexProjective(2),
        SpaceName::QuaternionicProjective(2),
        SpaceName::CayleyPlane,
    ]
    .into_iter()
    .map(|n| catalog(n).expect("valid catalog names"))
    .collect()
}

impl SpaceCatalogEntry {
    pub fn name(&self) -> SpaceName {
        self.name
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn rho(&self) -> f64 {
        self.rho2 as f64 / 2.0
    }

    /// `2ρ`, exact.
    pub fn rho_doubled(&self) -> i64 {
        self.rho2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha2 as f64 / 2.0
    }

    pub fn beta(&self) -> f64 {
        self.beta2 as f64 / 2.0
    }

    /// `(2α, 2β)`, exact.
    pub fn jacobi_doubled(&self) -> (i64, i64) {
        (self.alpha2, self.beta2)
    }

    /// Exponent `k` in `d_n ≤ C (n+ρ)^k`: the real dimension minus one.
    pub fn growth_exponent(&self) -> u32 {
        self.growth_exponent
    }

    pub fn admits(&self, n: u64) -> bool {
        self.parity == Parity::AllIntegers || n % 2 == 0
    }

    /// Spectral indices `n ≤ max` that occur.
    pub fn indices(&self, max: u64) -> impl Iterator<Item = u64> + '_ {
        (0..=max).filter(move |&n| self.admits(n))
    }

    /// `c_n`, exact.
    pub fn eigenvalue_exact(&self, n: u64) -> i128 {
        let n = n as i128;
        // 2ρ = m + d, so c_n = n(n + 2ρ) for every family.
        n * (n + self.rho2 as i128)
    }

    pub fn eigenvalue(&self, n: u64) -> f64 {
        self.eigenvalue_exact(n) as f64
    }

    /// `4 c_n + (2ρ)² - (2n + 2ρ)²`.
    pub fn rho_defect(&self, n: u64) -> i128 {
        let r = self.rho2 as i128;
        let two_n = 2 * n as i128;
        4 * self.eigenvalue_exact(n) + r * r - (two_n + r) * (two_n + r)
    }

    /// `4 c_n - 4 n (n + α + β + 1)`.
    pub fn jacobi_defect(&self, n: u64) -> i128 {
        let n = n as i128;
        4 * self.eigenvalue_exact(n as u64) - 2 * n * (2 * n + (self.alpha2 + self.beta2) as i128 + 2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhoReport {
    pub checked: usize,
    /// Largest `|c_n + ρ² - (n+ρ)²|`.
    pub max_defect: f64,
    /// Largest `|c_n - n(n+α+β+1)|`.
    pub max_jacobi_defect: f64,
    /// Every `n² ≤ c_n ≤ (n+ρ)²` held.
    pub sandwich_holds: bool,
    /// `c_n` strictly increasing over the admitted indices.
    pub increasing: bool,
}

impl RhoReport {
    pub fn passed(&self) -> bool {
        self.max_defect == 0.0 && self.max_jacobi_defect == 0.0 && self.sandwich_holds && self.increasing
    }
}

/// Checks `c_n + ρ² = (n+ρ)²`, `n² ≤ c_n ≤ (n+ρ)²` and the Jacobi eigenvalue
/// cross-check for all admitted `n ≤ max_n`.
pub fn verify_rho_identity(entry: &SpaceCatalogEntry, max_n: u64) -> RhoReport {
    let mut report = RhoReport {
        checked: 0,
        max_defect: 0.0,
        max_jacobi_defect: 0.0,
        sandwich_holds: true,
        increasing: true,
    };
    let r = entry.rho2 as i128;
    let mut last: Option<i128> = None;
    for n in entry.indices(max_n) {
        report.checked += 1;
        let c = entry.eigenvalue_exact(n);
        report.max_defect = report.max_defect.max(entry.rho_defect(n).abs() as f64 / 4.0);
        report.max_jacobi_defect =
            report.max_jacobi_defect.max(entry.jacobi_defect(n).abs() as f64 / 4.0);
        let two_n = 2 * n as i128;
        // scaled by 4: (2n)² ≤ 4c_n ≤ (2n+2ρ)²
        if two_n * two_n > 4 * c || 4 * c > (two_n + r) * (two_n + r) {
            report.sandwich_holds = false;
        }
        if let Some(prev) = last {
            if c <= prev {
                report.increasing = false;
            }
        }
        last = Some(c);
    }
    report
}

/// Catalog dump with columns `name,d,m,rho,alpha,beta,parity`.
pub fn write_catalog_csv<W: Write>(entries: &[SpaceCatalogEntry], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Numerical(format!("csv write failed: {e}"));
    w.write_record(["name", "d", "m", "rho", "alpha", "beta", "parity"]).map_err(io)?;
    for e in entries {
        w.write_record([
            e.name.to_string(),
            e.d.to_string(),
            e.m.to_string(),
            format!("{:?}", e.rho()),
            format!("{:?}", e.alpha()),
            format!("{:?}", e.beta()),
            match e.parity {
                Parity::AllIntegers => "all".to_string(),
                Parity::EvenIntegers => "even".to_string(),
            },
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Numerical(format!("csv flush failed: {e}")))?;
    Ok(())
}
