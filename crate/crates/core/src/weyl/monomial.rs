//! Exact monomial operators `τ^t X^b Z^c`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::DenseMatrix;
use crate::arith::modulo;
use crate::error::{check_same, Error, Result};
use crate::phase::{Phase, PhaseBinomial, Sign};

/// `τ^t X^b Z^c` acting as `|k⟩ ↦ τ^{t + 2ck} |k - b mod d⟩`.
///
/// `X` is the cyclic shift `|k⟩ ↦ |k-1⟩` and `Z` the clock `|k⟩ ↦ q^k |k⟩`,
/// so `XZ = q ZX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "MonomialRepr", try_from = "MonomialRepr")]
pub struct MonomialOperator {
    phase: Phase,
    shift: u32,
    clock: u32,
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    d: u32,
    tau_exp: u32,
    shift: u32,
    clock: u32,
}

impl From<MonomialOperator> for MonomialRepr {
    fn from(m: MonomialOperator) -> Self {
        MonomialRepr {
            d: m.dim(),
            tau_exp: m.phase.tau_exp(),
            shift: m.shift,
            clock: m.clock,
        }
    }
}

impl TryFrom<MonomialRepr> for MonomialOperator {
    type Error = Error;

    fn try_from(r: MonomialRepr) -> Result<Self> {
        if r.tau_exp >= 2 * r.d || r.shift >= r.d || r.clock >= r.d {
            return Err(Error::Invalid(format!(
                "unreduced monomial record (d={}, tau_exp={}, shift={}, clock={})",
                r.d, r.tau_exp, r.shift, r.clock
            )));
        }
        MonomialOperator::try_new(r.d, r.tau_exp as i64, r.shift as i64, r.clock as i64)
    }
}

/// Exact trace of a monomial: either zero or `d·τ^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialTrace {
    Zero,
    Scaled { multiplicity: u32, phase: Phase },
}

impl MonomialTrace {
    pub fn is_zero(&self) -> bool {
        matches!(self, MonomialTrace::Zero)
    }

    pub fn to_complex(&self) -> Complex64 {
        match *self {
            MonomialTrace::Zero => Complex64::new(0.0, 0.0),
            MonomialTrace::Scaled { multiplicity, phase } => phase.to_complex() * multiplicity as f64,
        }
    }
}

impl MonomialOperator {
    pub fn try_new(d: u32, tau_exp: i64, shift: i64, clock: i64) -> Result<Self> {
        let phase = Phase::try_new(tau_exp, d)?;
        Ok(MonomialOperator {
            phase,
            shift: modulo(shift, d),
            clock: modulo(clock, d),
        })
    }

    /// Panics if `d < 2`.
    pub fn new(d: u32, tau_exp: i64, shift: i64, clock: i64) -> Self {
        Self::try_new(d, tau_exp, shift, clock).expect("monomial dimension must be at least 2")
    }

    pub fn from_parts(phase: Phase, shift: i64, clock: i64) -> Self {
        let d = phase.dim();
        MonomialOperator {
            phase,
            shift: modulo(shift, d),
            clock: modulo(clock, d),
        }
    }

    pub fn identity(d: u32) -> Self {
        Self::new(d, 0, 0, 0)
    }

    pub fn shift_op(d: u32) -> Self {
        Self::new(d, 0, 1, 0)
    }

    pub fn clock_op(d: u32) -> Self {
        Self::new(d, 0, 0, 1)
    }

    /// `w_abc = q^a X^b Z^c`.
    pub fn w(d: u32, a: i64, b: i64, c: i64) -> Self {
        Self::new(d, 2 * a, b, c)
    }

    pub fn dim(&self) -> u32 {
        self.phase.dim()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn clock(&self) -> u32 {
        self.clock
    }

    /// Same operator without its scalar phase.
    pub fn unphased(&self) -> Self {
        MonomialOperator {
            phase: Phase::one(self.dim()),
            ..*self
        }
    }

    pub fn with_phase(&self, phase: Phase) -> Self {
        MonomialOperator { phase, ..*self }
    }

    pub fn is_identity(&self) -> bool {
        self.phase.is_one() && self.shift == 0 && self.clock == 0
    }

    /// Uses `Z^c X^b = q^{-cb} X^b Z^c`.
    pub fn checked_mul(&self, rhs: &MonomialOperator) -> Result<MonomialOperator> {
        check_same(self.dim(), rhs.dim())?;
        let reorder = Phase::q_pow(-(self.clock as i64) * rhs.shift as i64, self.dim());
        Ok(MonomialOperator::from_parts(
            self.phase * rhs.phase * reorder,
            self.shift as i64 + rhs.shift as i64,
            self.clock as i64 + rhs.clock as i64,
        ))
    }

    /// `(τ^t X^b Z^c)† = τ^{-t-2bc} X^{-b} Z^{-c}`.
    pub fn adjoint(&self) -> MonomialOperator {
        let d = self.dim();
        let phase = self.phase.inverse() * Phase::q_pow(-(self.shift as i64) * self.clock as i64, d);
        MonomialOperator::from_parts(phase, -(self.shift as i64), -(self.clock as i64))
    }

    pub fn pow(&self, n: u32) -> MonomialOperator {
        let mut acc = MonomialOperator::identity(self.dim());
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    /// Image of the basis ket `|k⟩`: `(row, phase)` with `self|k⟩ = phase·|row⟩`.
    pub fn apply_basis(&self, k: u32) -> (u32, Phase) {
        let d = self.dim();
        let row = modulo(k as i64 - self.shift as i64, d);
        let phase = self.phase * Phase::q_pow(self.clock as i64 * k as i64, d);
        (row, phase)
    }

    /// Exact trace: `d·τ^t` when `b = c = 0`, otherwise zero.
    pub fn trace(&self) -> MonomialTrace {
        if self.shift == 0 && self.clock == 0 {
            MonomialTrace::Scaled {
                multiplicity: self.dim(),
                phase: self.phase,
            }
        } else {
            MonomialTrace::Zero
        }
    }

    /// `Tr(self† other)`.
    pub fn trace_pairing(&self, other: &MonomialOperator) -> Result<MonomialTrace> {
        Ok(self.adjoint().checked_mul(other)?.trace())
    }

    /// `[self, other]∓ = (φ₁ ∓ φ₂) · X^{b+b'} Z^{c+c'}`.
    pub fn bracket(&self, other: &MonomialOperator, sign: Sign) -> Result<(PhaseBinomial, MonomialOperator)> {
        let forward = self.checked_mul(other)?;
        let backward = other.checked_mul(self)?;
        debug_assert_eq!(forward.unphased(), backward.unphased());
        Ok((
            PhaseBinomial::new(forward.phase, backward.phase, sign),
            forward.unphased(),
        ))
    }

    pub fn commutes_with(&self, other: &MonomialOperator) -> Result<bool> {
        Ok(self.bracket(other, Sign::Minus)?.0.is_zero())
    }

    /// Exact determinant: permutation sign times the product of entries.
    pub fn determinant(&self) -> Phase {
        let d = self.dim();
        // k ↦ k - b splits into gcd(b, d) cycles of length d / gcd.
        let cycles = crate::arith::gcd(self.shift as u64, d as u64) as u32;
        let cycle_len = d / cycles;
        let odd_cycles = if cycle_len.is_multiple_of(2) { cycles } else { 0 };
        let sign = Phase::minus_one(d).pow(odd_cycles as i64);
        let clock_sum = self.clock as i64 * (d as i64 * (d as i64 - 1) / 2);
        sign * self.phase.pow(d as i64) * Phase::q_pow(clock_sum, d)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let d = self.dim() as usize;
        let mut m = DenseMatrix::zeros(d);
        for k in 0..self.dim() {
            let (row, phase) = self.apply_basis(k);
            m.set(row as usize, k as usize, phase.to_complex());
        }
        m
    }
}

impl Mul for MonomialOperator {
    type Output = MonomialOperator;

    fn mul(self, rhs: MonomialOperator) -> MonomialOperator {
        self.checked_mul(&rhs).expect("monomial dimensions must agree")
    }
}

impl fmt::Display for MonomialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} X^{} Z^{}", self.phase, self.shift, self.clock)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn monomial() -> impl Strategy<Value = MonomialOperator> {
        (2u32..9).prop_flat_map(|d| {
            (0..2 * d as i64, 0..d as i64, 0..d as i64).prop_map(move |(t, b, c)| MonomialOperator::new(d, t, b, c))
        })
    }

    fn pair() -> impl Strategy<Value = (MonomialOperator, MonomialOperator)> {
        (2u32..9).prop_flat_map(|d| {
            let one = (0..2 * d as i64, 0..d as i64, 0..d as i64)
                .prop_map(move |(t, b, c)| MonomialOperator::new(d, t, b, c));
            (one.clone(), one)
        })
    }

    #[test]
    fn reordering_rule_for_qubits() {
        let x = MonomialOperator::shift_op(2);
        let z = MonomialOperator::clock_op(2);
        assert_eq!(x * z, MonomialOperator::new(2, 0, 1, 1));
        assert_eq!(z * x, MonomialOperator::new(2, 2, 1, 1));
        let dense = z.to_dense().matmul(&x.to_dense());
        assert!(dense.max_abs_diff(&(z * x).to_dense()) == 0.0);
    }

    #[test]
    fn w_composition_matches_group_law() {
        let d = 5;
        for (a, b, c, a2, b2, c2) in [(1, 2, 3, 4, 0, 1), (0, 4, 4, 2, 3, 1), (3, 1, 0, 0, 1, 2)] {
            let lhs = MonomialOperator::w(d, a, b, c) * MonomialOperator::w(d, a2, b2, c2);
            assert_eq!(lhs, MonomialOperator::w(d, a + a2 - c * b2, b + b2, c + c2));
        }
    }

    #[test]
    fn trace_pairing_examples() {
        let x = MonomialOperator::shift_op(2);
        let z = MonomialOperator::clock_op(2);
        assert!(x.trace_pairing(&z).unwrap().is_zero());
        let t = MonomialOperator::w(3, 0, 0, 0)
            .trace_pairing(&MonomialOperator::w(3, 1, 0, 0))
            .unwrap();
        assert_eq!(
            t,
            MonomialTrace::Scaled {
                multiplicity: 3,
                phase: Phase::q_pow(1, 3)
            }
        );
    }

    #[test]
    fn json_record() {
        let json = serde_json::to_string(&MonomialOperator::shift_op(3)).unwrap();
        assert_eq!(json, r#"{"d":3,"tau_exp":0,"shift":1,"clock":0}"#);
        assert!(serde_json::from_str::<MonomialOperator>(r#"{"d":3,"tau_exp":0,"shift":3,"clock":0}"#).is_err());
    }

    #[test]
    fn determinant_matches_dense() {
        for d in 2..7u32 {
            for b in 0..d as i64 {
                for c in 0..d as i64 {
                    let m = MonomialOperator::new(d, 1, b, c);
                    let det = m.to_dense().determinant();
                    assert!((det - m.determinant().to_complex()).norm() < 1e-9, "d={d} b={b} c={c}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn product_matches_dense((u, v) in pair()) {
            let exact = (u * v).to_dense();
            let dense = u.to_dense().matmul(&v.to_dense());
            prop_assert!(exact.max_abs_diff(&dense) < 1e-12);
        }

        #[test]
        fn dense_form_is_unitary(u in monomial()) {
            prop_assert!(u.to_dense().unitarity_deviation() < 1e-12);
            prop_assert!((u.adjoint() * u).is_identity());
            prop_assert!(u.adjoint().to_dense().max_abs_diff(&u.to_dense().adjoint()) < 1e-12);
        }

        #[test]
        fn self_pairing_is_d(u in monomial()) {
            let t = u.trace_pairing(&u).unwrap();
            prop_assert_eq!(t, MonomialTrace::Scaled { multiplicity: u.dim(), phase: Phase::one(u.dim()) });
        }

        #[test]
        fn trace_matches_dense(u in monomial()) {
            prop_assert!((u.trace().to_complex() - u.to_dense().trace()).norm() < 1e-12);
        }
    }
}
