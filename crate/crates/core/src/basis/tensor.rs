//! Tensor products `u_AB = u_{a₁b₁} ⊗ … ⊗ u_{a_e b_e}` and their commuting
//! classes.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::{format_digits, gram_matrix, parse_digits, search_classes, CartanPartition, PartitionIndex};
use crate::arith::is_prime;
use crate::error::{check_dim, check_range, check_same, Error, Result};
use crate::phase::{Phase, PhaseBinomial, Sign};
use crate::weyl::{DenseMatrix, MonomialOperator, MonomialTrace};

/// Largest total dimension for [`cartan_partition_prime_power`].
pub const MAX_TENSOR_DIM: u32 = 16;

/// Digit vectors `A`, `B` over factor dimensions `(d₁, …, d_e)`, `e ≥ 2`.
///
/// Ordered lexicographically by `(a₁, b₁, a₂, b₂, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorIndex {
    dims: Vec<u32>,
    digits: Vec<(u32, u32)>,
}

impl TensorIndex {
    pub fn try_new(dims: &[u32], a: &[u32], b: &[u32]) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::Invalid(format!(
                "a tensor index needs at least two factors, got {}",
                dims.len()
            )));
        }
        check_same(dims.len() as u32, a.len() as u32)?;
        check_same(dims.len() as u32, b.len() as u32)?;
        for ((&d, &x), &y) in dims.iter().zip(a).zip(b) {
            check_dim(d)?;
            check_range("a_j", x as i64, 0, d as i64 - 1)?;
            check_range("b_j", y as i64, 0, d as i64 - 1)?;
        }
        Ok(TensorIndex {
            dims: dims.to_vec(),
            digits: a.iter().copied().zip(b.iter().copied()).collect(),
        })
    }

    pub fn a(&self) -> Vec<u32> {
        self.digits.iter().map(|p| p.0).collect()
    }

    pub fn b(&self) -> Vec<u32> {
        self.digits.iter().map(|p| p.1).collect()
    }

    pub fn operator(&self) -> TensorOperator {
        TensorOperator {
            factors: self
                .dims
                .iter()
                .zip(&self.digits)
                .map(|(&d, &(a, b))| MonomialOperator::new(d, 0, a as i64, b as i64))
                .collect(),
        }
    }
}

impl fmt::Display for TensorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat: Vec<u32> = self.digits.iter().flat_map(|&(a, b)| [a, b]).collect();
        f.write_str(&format_digits(&flat))
    }
}

impl PartitionIndex for TensorIndex {
    fn dims(&self) -> Vec<u32> {
        self.dims.clone()
    }

    fn label(&self) -> String {
        self.to_string()
    }

    fn parse(label: &str, dims: &[u32]) -> Result<Self> {
        let flat = parse_digits(label, 2 * dims.len())?;
        let a: Vec<u32> = flat.iter().step_by(2).copied().collect();
        let b: Vec<u32> = flat.iter().skip(1).step_by(2).copied().collect();
        TensorIndex::try_new(dims, &a, &b)
    }

    fn is_identity(&self) -> bool {
        self.digits.iter().all(|&(a, b)| a == 0 && b == 0)
    }

    fn commutes_with(&self, other: &Self) -> bool {
        self.operator()
            .bracket(&other.operator(), Sign::Minus)
            .map(|(c, _)| c.is_zero())
            .unwrap_or(false)
    }

    fn to_dense(&self) -> DenseMatrix {
        self.operator().to_dense()
    }
}

/// Kronecker product of monomials, kept factorwise.
///
/// Derived equality compares factors; scalars can move between factors, so
/// operator equality is [`TensorOperator::same_operator`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorOperator {
    pub factors: Vec<MonomialOperator>,
}

impl TensorOperator {
    pub fn dim(&self) -> u32 {
        self.factors.iter().map(MonomialOperator::dim).product()
    }

    pub fn checked_mul(&self, rhs: &TensorOperator) -> Result<TensorOperator> {
        check_same(self.factors.len() as u32, rhs.factors.len() as u32)?;
        let factors = self
            .factors
            .iter()
            .zip(&rhs.factors)
            .map(|(x, y)| x.checked_mul(y))
            .collect::<Result<_>>()?;
        Ok(TensorOperator { factors })
    }

    pub fn same_operator(&self, other: &TensorOperator) -> bool {
        self.factors.len() == other.factors.len()
            && self.unphased() == other.unphased()
            && self.phase() == other.phase()
    }

    pub fn commutes_with(&self, other: &TensorOperator) -> Result<bool> {
        Ok(self.checked_mul(other)?.same_operator(&other.checked_mul(self)?))
    }

    pub fn adjoint(&self) -> TensorOperator {
        TensorOperator {
            factors: self.factors.iter().map(MonomialOperator::adjoint).collect(),
        }
    }

    /// Product of the factor phases, over the lcm of the factor dimensions.
    pub fn phase(&self) -> Phase {
        self.factors
            .iter()
            .map(MonomialOperator::phase)
            .reduce(Phase::mul_lifted)
            .expect("at least one factor")
    }

    pub fn unphased(&self) -> TensorOperator {
        TensorOperator {
            factors: self.factors.iter().map(MonomialOperator::unphased).collect(),
        }
    }

    /// Exact trace, the product of the factor traces.
    pub fn trace(&self) -> MonomialTrace {
        let mut multiplicity = 1;
        let mut phase: Option<Phase> = None;
        for f in &self.factors {
            match f.trace() {
                MonomialTrace::Zero => return MonomialTrace::Zero,
                MonomialTrace::Scaled {
                    multiplicity: m,
                    phase: p,
                } => {
                    multiplicity *= m;
                    phase = Some(phase.map_or(p, |q| q.mul_lifted(p)));
                }
            }
        }
        MonomialTrace::Scaled {
            multiplicity,
            phase: phase.expect("at least one factor"),
        }
    }

    /// `Tr(self† other)`.
    pub fn trace_pairing(&self, other: &TensorOperator) -> Result<MonomialTrace> {
        Ok(self.adjoint().checked_mul(other)?.trace())
    }

    /// `[self, other]∓ = (Π φ_j ∓ Π φ'_j) · Π X^{a_j+a'_j} Z^{b_j+b'_j}`.
    pub fn bracket(&self, other: &TensorOperator, sign: Sign) -> Result<(PhaseBinomial, TensorOperator)> {
        let forward = self.checked_mul(other)?;
        let backward = other.checked_mul(self)?;
        Ok((
            PhaseBinomial::new(forward.phase(), backward.phase(), sign),
            forward.unphased(),
        ))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        self.factors
            .iter()
            .map(MonomialOperator::to_dense)
            .reduce(|acc, m| acc.kron(&m))
            .expect("at least one factor")
    }
}

pub fn tensor_pauli(dims: &[u32], a: &[u32], b: &[u32]) -> Result<TensorOperator> {
    Ok(TensorIndex::try_new(dims, a, b)?.operator())
}

/// Nonidentity tensor indices over `dims`, lexicographic.
pub fn tensor_indices(dims: &[u32]) -> Result<Vec<TensorIndex>> {
    let mut out = Vec::new();
    let mut digits = vec![0u32; 2 * dims.len()];
    loop {
        let a: Vec<u32> = digits.iter().step_by(2).copied().collect();
        let b: Vec<u32> = digits.iter().skip(1).step_by(2).copied().collect();
        let index = TensorIndex::try_new(dims, &a, &b)?;
        if !index.is_identity() {
            out.push(index);
        }
        // Odometer over (a₁, b₁, a₂, b₂, …), last digit fastest.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < dims[pos / 2] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Partition of the `p^{2e} - 1` nonidentity `u_AB` into `p^e + 1` classes of
/// `p^e - 1` commuting operators, by exact-cover search.
pub fn cartan_partition_prime_power(p: u32, e: u32) -> Result<CartanPartition<TensorIndex>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_range("e", e as i64, 2, 32)?;
    let total = (p as u64).pow(e);
    if total > MAX_TENSOR_DIM as u64 {
        return Err(Error::CapExceeded {
            d: total.min(u32::MAX as u64) as u32,
            cap: MAX_TENSOR_DIM,
        });
    }
    let dims = vec![p; e as usize];
    let vertices = tensor_indices(&dims)?;
    let found = search_classes(dims, &vertices, total as usize - 1);
    if !found.complete {
        return Err(Error::SearchFailed(format!(
            "no partition of su({total}) into {} commuting classes; best has {}",
            total + 1,
            found.partition.classes.len()
        )));
    }
    Ok(found.partition)
}

const SPREAD: [[&str; 3]; 5] = [
    ["(1011)", "(1101)", "(0110)"],
    ["(1001)", "(0111)", "(1110)"],
    ["(1010)", "(1000)", "(0010)"],
    ["(1111)", "(1100)", "(0011)"],
    ["(0101)", "(0100)", "(0001)"],
];

/// The five two-qubit sets of pairwise commuting operators forming a spread.
pub fn su4_spread_sets() -> CartanPartition<TensorIndex> {
    let classes = SPREAD
        .iter()
        .map(|set| {
            set.iter()
                .map(|l| TensorIndex::parse(l, &[2, 2]).expect("valid label"))
                .collect()
        })
        .collect();
    CartanPartition {
        dims: vec![2, 2],
        classes,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpreadReport {
    pub sets: Vec<Vec<String>>,
    pub sets_commute: bool,
    pub distinct_operators: usize,
    pub identity_excluded: bool,
    pub gram_deviation: f64,
    pub gram_rank: usize,
    /// Rank of the Gram matrix of the 15 operators plus the identity.
    pub span_rank_with_identity: usize,
}

impl SpreadReport {
    pub fn passed(&self) -> bool {
        self.sets_commute
            && self.distinct_operators == 15
            && self.identity_excluded
            && self.gram_deviation <= 1e-12
            && self.gram_rank == 15
            && self.span_rank_with_identity == 16
    }
}

pub fn su4_spread_check() -> SpreadReport {
    let spread = su4_spread_sets();
    let validation = spread.validate(&tensor_indices(&[2, 2]).expect("valid dims"));
    let ops: Vec<TensorIndex> = spread.classes.iter().flatten().cloned().collect();
    let gram = gram_matrix(&ops);
    let target = DenseMatrix::identity(ops.len()).scale(Complex64::new(4.0, 0.0));
    let mut with_identity = ops.clone();
    with_identity.push(TensorIndex::try_new(&[2, 2], &[0, 0], &[0, 0]).expect("valid index"));
    let mut distinct = ops.clone();
    distinct.sort();
    distinct.dedup();
    SpreadReport {
        sets: spread.labels(),
        sets_commute: validation.commuting_exact,
        distinct_operators: distinct.len(),
        identity_excluded: validation.excludes_identity,
        gram_deviation: gram.max_abs_diff(&target),
        gram_rank: gram.rank(1e-9),
        span_rank_with_identity: gram_matrix(&with_identity).rank(1e-9),
    }
}
