//! Exact phases that are `2d`-th roots of unity.
//!
//! A [`Phase`] stores the integer exponent `t` of `τ = exp(iπ/d)`, so the
//! usual root of unity `q = exp(2πi/d)` is `τ²`. Working with `τ` rather
//! than `q` keeps half-integer `q`-exponents (which appear for even `d`)
//! exact.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{lcm, modulo};
use crate::error::{check_dim, check_same, Error, Result};

/// `τ^t` with `τ = exp(iπ/d)`; the exponent is always kept in `[0, 2d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "PhaseRepr", try_from = "PhaseRepr")]
pub struct Phase {
    tau_exp: u32,
    dim: u32,
}

#[derive(Serialize, Deserialize)]
struct PhaseRepr {
    tau_exp: u32,
    tau_denominator: u32,
}

impl From<Phase> for PhaseRepr {
    fn from(p: Phase) -> Self {
        PhaseRepr {
            tau_exp: p.tau_exp,
            tau_denominator: 2 * p.dim,
        }
    }
}

impl TryFrom<PhaseRepr> for Phase {
    type Error = Error;

    fn try_from(r: PhaseRepr) -> Result<Self> {
        if !r.tau_denominator.is_multiple_of(2) || r.tau_denominator < 4 {
            return Err(Error::Invalid(format!(
                "tau_denominator must be an even number >= 4, got {}",
                r.tau_denominator
            )));
        }
        if r.tau_exp >= r.tau_denominator {
            return Err(Error::Invalid(format!(
                "tau_exp {} is not reduced modulo {}",
                r.tau_exp, r.tau_denominator
            )));
        }
        Ok(Phase {
            tau_exp: r.tau_exp,
            dim: r.tau_denominator / 2,
        })
    }
}

impl Phase {
    /// `τ^t` in dimension `dim`.
    ///
    /// Panics if `dim < 2`; use [`Phase::try_new`] for untrusted input.
    pub fn new(t: i64, dim: u32) -> Self {
        Self::try_new(t, dim).expect("phase dimension must be at least 2")
    }

    pub fn try_new(t: i64, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Phase {
            tau_exp: modulo(t, 2 * dim),
            dim,
        })
    }

    pub fn one(dim: u32) -> Self {
        Self::new(0, dim)
    }

    /// `-1 = τ^d`.
    pub fn minus_one(dim: u32) -> Self {
        Self::new(dim as i64, dim)
    }

    /// `q^k = τ^{2k}`.
    pub fn q_pow(k: i64, dim: u32) -> Self {
        Self::new(2 * k, dim)
    }

    pub fn tau_exp(self) -> u32 {
        self.tau_exp
    }

    pub fn dim(self) -> u32 {
        self.dim
    }

    pub fn is_one(self) -> bool {
        self.tau_exp == 0
    }

    /// Exponent of `q` when the phase is an integer power of `q`.
    pub fn q_exp(self) -> Option<u32> {
        self.tau_exp.is_multiple_of(2).then_some(self.tau_exp / 2)
    }

    pub fn checked_mul(self, other: Phase) -> Result<Phase> {
        check_same(self.dim, other.dim)?;
        Ok(Phase {
            tau_exp: (self.tau_exp + other.tau_exp) % (2 * self.dim),
            dim: self.dim,
        })
    }

    pub fn inverse(self) -> Phase {
        Phase {
            tau_exp: (2 * self.dim - self.tau_exp) % (2 * self.dim),
            dim: self.dim,
        }
    }

    pub fn pow(self, n: i64) -> Phase {
        let m = 2 * self.dim as i64;
        Phase::new((self.tau_exp as i64 * n.rem_euclid(m)) % m, self.dim)
    }

    /// Re-expresses the phase over a dimension that is a multiple of `self.dim`.
    pub fn lift(self, dim: u32) -> Result<Phase> {
        check_dim(dim)?;
        if !dim.is_multiple_of(self.dim) {
            return Err(Error::Invalid(format!(
                "cannot lift a phase of dimension {} to {}",
                self.dim, dim
            )));
        }
        Ok(Phase::new(self.tau_exp as i64 * (dim / self.dim) as i64, dim))
    }

    /// Product of phases that may live over different dimensions; the result
    /// lives over the least common multiple.
    pub fn mul_lifted(self, other: Phase) -> Phase {
        let dim = lcm(self.dim as u64, other.dim as u64) as u32;
        let a = self.lift(dim).expect("lcm is a common multiple");
        let b = other.lift(dim).expect("lcm is a common multiple");
        a * b
    }

    /// `exp(iπ t / d)`. Quarter turns are returned exactly.
    pub fn to_complex(self) -> Complex64 {
        let n = 2 * self.dim;
        if (4 * self.tau_exp).is_multiple_of(n) {
            return match 4 * self.tau_exp / n {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        let angle = PI * self.tau_exp as f64 / self.dim as f64;
        Complex64::new(angle.cos(), angle.sin())
    }
}

impl Mul for Phase {
    type Output = Phase;

    /// Panics on a dimension mismatch, like matrix shape mismatches do.
    fn mul(self, rhs: Phase) -> Phase {
        self.checked_mul(rhs).expect("phase dimensions must agree")
    }
}

impl Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        self * Phase::minus_one(self.dim)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau^{}/{}", self.tau_exp, 2 * self.dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }
}

/// `first ∓ second`, the exact shape of every commutator and anticommutator
/// coefficient between two Pauli monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseBinomial {
    pub first: Phase,
    pub second: Phase,
    pub sign: Sign,
}

impl PhaseBinomial {
    pub fn new(first: Phase, second: Phase, sign: Sign) -> Self {
        PhaseBinomial { first, second, sign }
    }

    /// Exact zero test: `τ^s - τ^t = 0` iff `s = t`, `τ^s + τ^t = 0` iff `s = t + d`.
    pub fn is_zero(&self) -> bool {
        let dim = lcm(self.first.dim() as u64, self.second.dim() as u64) as u32;
        let a = self.first.lift(dim).expect("common multiple");
        let b = self.second.lift(dim).expect("common multiple");
        match self.sign {
            Sign::Minus => a == b,
            Sign::Plus => a == -b,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.first.to_complex() + self.sign.as_f64() * self.second.to_complex()
    }
}
