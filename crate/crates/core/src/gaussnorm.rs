//! Gauss norms `‖Σ d_A X^A‖_{X,r} = sup |d_A|_p r^{|A|}` on U(g), tracked in
//! `log_p` scale. With `r = p^s`:
//!
//! `log_p ‖u‖ = max_A ( −v_p(d_A) + |A|·s )`.

use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, UEAElement};
use crate::rational::{self, q, Q};

/// Prime `p` and `s = log_p r > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormParam {
    prime: u64,
    log_radius: Q,
}

impl NormParam {
    pub fn new(prime: u64, log_radius: Q) -> Result<Self> {
        if !rational::is_prime(prime) {
            return Err(Error::InvalidNormParam(format!("{prime} is not prime")));
        }
        if !log_radius.is_positive() {
            return Err(Error::InvalidNormParam(format!(
                "log-radius must be positive (r > 1), got {log_radius}"
            )));
        }
        Ok(Self { prime, log_radius })
    }

    pub fn parse(prime: u64, log_radius: &str) -> Result<Self> {
        Self::new(prime, rational::parse_q(log_radius)?)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn log_radius(&self) -> &Q {
        &self.log_radius
    }
}

/// `log_p` of a norm value; `Bottom` is the norm of zero and sorts below everything.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LogNorm {
    Bottom,
    Value(Q),
}

impl LogNorm {
    /// `log ‖u‖ + log ‖v‖`, with `Bottom` absorbing.
    pub fn plus(&self, other: &LogNorm) -> LogNorm {
        match (self, other) {
            (LogNorm::Value(a), LogNorm::Value(b)) => LogNorm::Value(a + b),
            _ => LogNorm::Bottom,
        }
    }

    /// `p^value` as a float, for display only.
    pub fn approx_norm(&self, prime: u64) -> f64 {
        match self {
            LogNorm::Bottom => 0.0,
            LogNorm::Value(v) => (prime as f64).powf(v.to_f64().unwrap_or(f64::NAN)),
        }
    }
}

impl fmt::Display for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNorm::Bottom => write!(f, "-inf"),
            LogNorm::Value(v) => write!(f, "{}", rational::fmt_q(v)),
        }
    }
}

impl Serialize for LogNorm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn vp(c: &Q, p: u64) -> Result<i64> {
    rational::vp(c, p)
}

pub fn log_norm(u: &UEAElement, np: &NormParam) -> LogNorm {
    u.terms()
        .map(|(m, c)| {
            let v = rational::vp(c, np.prime).expect("stored coefficients are nonzero");
            q(-v) + &np.log_radius * q(i64::from(m.degree()))
        })
        .max()
        .map_or(LogNorm::Bottom, LogNorm::Value)
}

/// `‖uv‖ ≤ ‖u‖·‖v‖`.
pub fn check_submultiplicative(alg: &LieAlgebra, u: &UEAElement, v: &UEAElement, np: &NormParam) -> bool {
    let uv = alg.multiply(u, v);
    log_norm(&uv, np) <= log_norm(u, np).plus(&log_norm(v, np))
}
