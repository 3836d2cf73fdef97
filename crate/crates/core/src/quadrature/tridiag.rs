use crate::error::{Error, Result};

/// Relative deflation tolerance for off-diagonal entries.
pub const EIGEN_TOL: f64 = 1e-14;
/// Iteration cap per eigenvalue.
pub const MAX_SWEEPS: usize = 50;

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples rows `i` and `i+1`), together with the
/// first component of each normalized eigenvector.
///
/// Implicit QL with Wilkinson-type shifts; only the first row of the
/// eigenvector matrix is accumulated. Output is sorted by eigenvalue.
pub fn symmetric_tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    if off.len() + 1 != n && !(n == 0 && off.is_empty()) {
        return Err(Error::Parameter(format!(
            "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
            n,
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = off.iter().copied().chain(std::iter::once(0.0)).collect();
    let mut z = vec![0.0; n];
    if n > 0 {
        z[0] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= EIGEN_TOL * dd || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::Numerical(format!(
                    "tridiagonal QL did not converge for eigenvalue {l} after {MAX_SWEEPS} sweeps \
                     (residual off-diagonal {:e})",
                    e[l]
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let fz = z[i + 1];
                z[i + 1] = s * z[i] + c * fz;
                z[i] = c * z[i] - s * fz;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((order.iter().map(|&i| d[i]).collect(), order.iter().map(|&i| z[i]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let (vals, first) = symmetric_tridiagonal_eigen(&[0.0, 0.0], &[0.5f64.sqrt()]).unwrap();
        let h = 0.5f64.sqrt();
        assert!((vals[0] + h).abs() < 1e-15 && (vals[1] - h).abs() < 1e-15);
        assert!((first[0] * first[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // tridiag(-1, 2, -1) of size n has eigenvalues 2 - 2cos(kπ/(n+1)).
        let n = 200;
        let (vals, first) = symmetric_tridiagonal_eigen(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (k, v) in vals.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - want).abs() < 1e-12, "k={k}");
        }
        let total: f64 = first.iter().map(|z| z * z).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch() {
        assert!(symmetric_tridiagonal_eigen(&[1.0, 2.0], &[]).is_err());
        let (v, _) = symmetric_tridiagonal_eigen(&[], &[]).unwrap();
        assert!(v.is_empty());
    }
}
