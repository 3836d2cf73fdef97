//! Overflow-safe evaluation of the Hermite, Laguerre and Jacobi families.
//!
//! Every family is evaluated by an upward three-term recurrence on a
//! pre-normalized sequence. The recurrence state carries a binary exponent
//! ([`ScaledRecurrence`]) so polynomial growth and Gaussian decay never meet in
//! raw `f64` arithmetic.

mod basis;
mod hermite;
mod jacobi;
mod laguerre;

pub use basis::{BasisDescriptor, BasisFamily};
pub use hermite::{hermite_fn, hermite_fns};
pub use jacobi::{jacobi_norm_sq, jacobi_r, jacobi_r_all};
pub use laguerre::{
    laguerre_fns, laguerre_normalized, laguerre_normalized_all, laguerre_poly, laguerre_psi,
    laguerre_psi_all, laguerre_psi_ratio,
};

use crate::error::{Error, Result};
use crate::scaled::ScaledValue;

/// Default highest degree any evaluator accepts.
pub const DEFAULT_DEGREE_CAP: usize = 512;

pub(crate) fn check_degree(k: usize, cap: usize) -> Result<()> {
    if k > cap {
        Err(Error::DegreeCap { degree: k, cap })
    } else {
        Ok(())
    }
}

/// `ln |Γ(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

const RESCALE_HI: f64 = 1.157920892373162e77; // 2^256
const RESCALE_LO: f64 = 8.636168555094445e-78; // 2^-256

/// State of `p_{k+1} = a_k p_k - b_k p_{k-1}` with a shared binary exponent.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledRecurrence {
    prev: f64,
    cur: f64,
    exponent: i64,
}

impl ScaledRecurrence {
    pub(crate) fn new(p0: f64, p1: f64) -> Self {
        let mut r = Self { prev: p0, cur: p1, exponent: 0 };
        r.renormalize();
        r
    }

    pub(crate) fn step(&mut self, a: f64, b: f64) {
        let next = a * self.cur - b * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.renormalize();
    }

    fn renormalize(&mut self) {
        let m = self.prev.abs().max(self.cur.abs());
        if m > RESCALE_HI || (m > 0.0 && m < RESCALE_LO) {
            let e = ScaledValue::from_f64(m).exponent();
            self.prev = libm::scalbn(self.prev, -e as i32);
            self.cur = libm::scalbn(self.cur, -e as i32);
            self.exponent += e;
        }
    }

    pub(crate) fn current(&self) -> ScaledValue {
        ScaledValue::from_parts(self.cur, self.exponent)
    }
}
