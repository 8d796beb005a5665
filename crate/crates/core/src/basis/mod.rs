//! The generalized Pauli basis `u_ab = X^a Z^b` of `u(d)` and its
//! partitions into commuting classes.

pub mod search;
pub mod tensor;

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, modulo};
use crate::error::{check_dim, check_range, check_same, Error, Result};
use crate::mub::{BasisLabel, OrthonormalBasis};
use crate::phase::{Phase, PhaseBinomial, Sign};
use crate::weyl::{DenseMatrix, MonomialOperator, MonomialTrace};

pub use tensor::{
    cartan_partition_prime_power, su4_spread_check, su4_spread_sets, tensor_indices, tensor_pauli, SpreadReport,
    TensorIndex, TensorOperator,
};

/// Largest `d` for [`structure_constants`].
pub const MAX_STRUCTURE_D: u32 = 16;
/// Largest `d` for [`commuting_class_search`].
pub const MAX_SEARCH_D: u32 = 12;
/// Largest `d` for [`max_commuting_packing`].
pub const MAX_PACKING_D: u32 = 6;
/// Bound on dense commutator entries of operators that commute exactly.
pub const DENSE_TOLERANCE: f64 = 1e-12;

/// Renders digits as `(0113)`, or `(10,3)` once any digit needs two places.
pub fn format_digits(digits: &[u32]) -> String {
    if digits.iter().all(|&x| x < 10) {
        let body: String = digits.iter().map(|x| x.to_string()).collect();
        format!("({body})")
    } else {
        let body: Vec<String> = digits.iter().map(|x| x.to_string()).collect();
        format!("({})", body.join(","))
    }
}

pub fn parse_digits(label: &str, count: usize) -> Result<Vec<u32>> {
    let invalid = || Error::Invalid(format!("malformed index label {label:?}"));
    let body = label
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(invalid)?;
    let digits: Vec<u32> = if body.contains(',') {
        body.split(',')
            .map(|s| s.trim().parse().map_err(|_| invalid()))
            .collect::<Result<_>>()?
    } else {
        body.chars()
            .map(|ch| ch.to_digit(10).ok_or_else(invalid))
            .collect::<Result<_>>()?
    };
    if digits.len() != count {
        return Err(invalid());
    }
    Ok(digits)
}

/// Index of a basis operator that can be placed in a commuting class.
pub trait PartitionIndex: Clone + Eq + Ord + Hash + fmt::Debug {
    fn dims(&self) -> Vec<u32>;
    fn label(&self) -> String;
    fn parse(label: &str, dims: &[u32]) -> Result<Self>;
    fn is_identity(&self) -> bool;
    /// Exact commutation test.
    fn commutes_with(&self, other: &Self) -> bool;
    fn to_dense(&self) -> DenseMatrix;
}

/// `(a, b)` labelling `u_ab = X^a Z^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliIndex {
    pub a: u32,
    pub b: u32,
    d: u32,
}

impl PauliIndex {
    pub fn new(d: u32, a: i64, b: i64) -> Self {
        assert!(d >= 2, "dimension must be at least 2");
        PauliIndex {
            a: modulo(a, d),
            b: modulo(b, d),
            d,
        }
    }

    pub fn try_new(d: u32, a: i64, b: i64) -> Result<Self> {
        check_dim(d)?;
        check_range("a", a, 0, d as i64 - 1)?;
        check_range("b", b, 0, d as i64 - 1)?;
        Ok(PauliIndex::new(d, a, b))
    }

    pub fn dim(self) -> u32 {
        self.d
    }

    pub fn operator(self) -> MonomialOperator {
        MonomialOperator::new(self.d, 0, self.a as i64, self.b as i64)
    }

    /// `ab' - ba' mod d`.
    pub fn symplectic(self, other: PauliIndex) -> u32 {
        let (a, b) = (self.a as i64, self.b as i64);
        let (a2, b2) = (other.a as i64, other.b as i64);
        modulo(a * b2 - b * a2, self.d)
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(&[self.a, self.b]))
    }
}

impl PartitionIndex for PauliIndex {
    fn dims(&self) -> Vec<u32> {
        vec![self.d]
    }

    fn label(&self) -> String {
        self.to_string()
    }

    fn parse(label: &str, dims: &[u32]) -> Result<Self> {
        let [d] = dims else {
            return Err(Error::Invalid(format!("expected one dimension, got {}", dims.len())));
        };
        let digits = parse_digits(label, 2)?;
        PauliIndex::try_new(*d, digits[0] as i64, digits[1] as i64)
    }

    fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn commutes_with(&self, other: &Self) -> bool {
        self.symplectic(*other) == 0
    }

    fn to_dense(&self) -> DenseMatrix {
        self.operator().to_dense()
    }
}

pub fn u_ab(d: u32, a: i64, b: i64) -> Result<MonomialOperator> {
    Ok(PauliIndex::try_new(d, a, b)?.operator())
}

/// Nonidentity indices in lexicographic order.
pub fn pauli_indices(d: u32) -> Vec<PauliIndex> {
    let n = d as i64;
    (0..n)
        .flat_map(|a| (0..n).map(move |b| PauliIndex::new(d, a, b)))
        .filter(|i| !i.is_identity())
        .collect()
}

/// `[u_ab, u_a'b']∓ = (q^{-ba'} ∓ q^{-ab'}) u_{a+a', b+b'}`.
pub fn pauli_commutator(x: PauliIndex, y: PauliIndex, sign: Sign) -> Result<(PhaseBinomial, PauliIndex)> {
    check_same(x.d, y.d)?;
    let d = x.d;
    let first = Phase::q_pow(-(x.b as i64) * y.a as i64, d);
    let second = Phase::q_pow(-(x.a as i64) * y.b as i64, d);
    let sum = PauliIndex::new(d, x.a as i64 + y.a as i64, x.b as i64 + y.b as i64);
    Ok((PhaseBinomial::new(first, second, sign), sum))
}

/// `(ab, a'b'; a''b'')`; `None` off the support `a'' = a + a'`, `b'' = b + b'`.
pub fn structure_constant(x: PauliIndex, y: PauliIndex, z: PauliIndex) -> Result<Option<PhaseBinomial>> {
    check_same(x.d, z.d)?;
    let (coefficient, sum) = pauli_commutator(x, y, Sign::Minus)?;
    Ok((sum == z).then_some(coefficient))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub left: PauliIndex,
    pub right: PauliIndex,
    pub result: PauliIndex,
    pub coefficient: PhaseBinomial,
}

impl Serialize for PauliIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Every nonvanishing structure constant over all `d⁴` index triples.
pub fn structure_constants(d: u32) -> Result<Vec<StructureConstant>> {
    check_dim(d)?;
    check_range("d", d as i64, 2, MAX_STRUCTURE_D as i64)?;
    let n = d as i64;
    let all: Vec<PauliIndex> = (0..n)
        .flat_map(|a| (0..n).map(move |b| PauliIndex::new(d, a, b)))
        .collect();
    let mut out = Vec::new();
    for &left in &all {
        for &right in &all {
            let (coefficient, result) = pauli_commutator(left, right, Sign::Minus)?;
            if !coefficient.is_zero() {
                out.push(StructureConstant {
                    left,
                    right,
                    result,
                    coefficient,
                });
            }
        }
    }
    Ok(out)
}

/// `max ‖[u, u'] - Σ (u u'; u'') u''‖` over all pairs, dense.
pub fn structure_closure_residual(d: u32) -> Result<f64> {
    check_dim(d)?;
    let n = d as i64;
    let all: Vec<PauliIndex> = (0..n)
        .flat_map(|a| (0..n).map(move |b| PauliIndex::new(d, a, b)))
        .collect();
    let dense: Vec<DenseMatrix> = all.iter().map(|i| i.to_dense()).collect();
    let mut worst = 0.0f64;
    for (i, x) in all.iter().enumerate() {
        for (j, y) in all.iter().enumerate() {
            let lhs = dense[i].commutator(&dense[j]);
            let mut rhs = DenseMatrix::zeros(d as usize);
            for (k, z) in all.iter().enumerate() {
                if let Some(c) = structure_constant(*x, *y, *z)? {
                    rhs = &rhs + &dense[k].scale(c.to_complex());
                }
            }
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    Ok(worst)
}

/// `max |Tr(u_ab† u_a'b') - d δ δ|`, computed exactly; zero on success.
pub fn hs_orthogonality(d: u32) -> Result<f64> {
    check_dim(d)?;
    let mut all = pauli_indices(d);
    all.insert(0, PauliIndex::new(d, 0, 0));
    let mut worst = 0.0f64;
    for x in &all {
        for y in &all {
            let trace = x.operator().trace_pairing(&y.operator())?;
            let exact = match (x == y, trace) {
                (true, MonomialTrace::Scaled { multiplicity, phase }) => multiplicity == d && phase.is_one(),
                (false, MonomialTrace::Zero) => true,
                _ => false,
            };
            if !exact {
                let target = if x == y { d as f64 } else { 0.0 };
                worst = worst.max((trace.to_complex() - target).norm());
            }
        }
    }
    Ok(worst)
}

/// Gram matrix `Tr(u_i† u_j)` of all `d²` operators, as dense.
pub fn gram_matrix<I: PartitionIndex>(indices: &[I]) -> DenseMatrix {
    let dense: Vec<DenseMatrix> = indices.iter().map(|i| i.to_dense()).collect();
    DenseMatrix::from_fn(indices.len(), |i, j| dense[i].adjoint().matmul(&dense[j]).trace())
}

pub fn basis_gram_matrix(d: u32) -> Result<DenseMatrix> {
    check_dim(d)?;
    let mut all = pauli_indices(d);
    all.insert(0, PauliIndex::new(d, 0, 0));
    Ok(gram_matrix(&all))
}

/// Disjoint classes of pairwise commuting basis operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanPartition<I> {
    pub dims: Vec<u32>,
    pub classes: Vec<Vec<I>>,
}

/// Labelled form used for JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub d: u32,
    pub dims: Vec<u32>,
    pub classes: Vec<Vec<String>>,
}

impl<I: PartitionIndex> CartanPartition<I> {
    pub fn dim(&self) -> u32 {
        self.dims.iter().product()
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|cl| cl.iter().map(PartitionIndex::label).collect())
            .collect()
    }

    pub fn record(&self) -> PartitionRecord {
        PartitionRecord {
            d: self.dim(),
            dims: self.dims.clone(),
            classes: self.labels(),
        }
    }

    pub fn from_record(record: &PartitionRecord) -> Result<Self> {
        if record.dims.iter().product::<u32>() != record.d {
            return Err(Error::Invalid(format!(
                "dims {:?} do not multiply to d = {}",
                record.dims, record.d
            )));
        }
        let classes = record
            .classes
            .iter()
            .map(|cl| cl.iter().map(|l| I::parse(l, &record.dims)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CartanPartition {
            dims: record.dims.clone(),
            classes,
        })
    }

    /// Checks against `universe`, the nonidentity indices to be covered.
    pub fn validate(&self, universe: &[I]) -> PartitionValidation {
        let mut seen = HashSet::new();
        let mut disjoint = true;
        for i in self.classes.iter().flatten() {
            disjoint &= seen.insert(i.clone());
        }
        let wanted: HashSet<I> = universe.iter().cloned().collect();
        let commuting_exact = self
            .classes
            .iter()
            .all(|cl| cl.iter().all(|x| cl.iter().all(|y| x.commutes_with(y))));
        let mut dense_commutator_max = 0.0f64;
        for cl in &self.classes {
            let dense: Vec<DenseMatrix> = cl.iter().map(PartitionIndex::to_dense).collect();
            for (i, x) in dense.iter().enumerate() {
                for y in &dense[i + 1..] {
                    dense_commutator_max = dense_commutator_max.max(x.commutator(y).max_abs());
                }
            }
        }
        PartitionValidation {
            class_count: self.classes.len(),
            class_sizes: self.classes.iter().map(Vec::len).collect(),
            disjoint,
            covers: seen == wanted,
            excludes_identity: !self.classes.iter().flatten().any(PartitionIndex::is_identity),
            commuting_exact,
            dense_commutator_max,
        }
    }
}

impl<I: PartitionIndex> Serialize for CartanPartition<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionValidation {
    pub class_count: usize,
    pub class_sizes: Vec<usize>,
    pub disjoint: bool,
    pub covers: bool,
    pub excludes_identity: bool,
    pub commuting_exact: bool,
    pub dense_commutator_max: f64,
}

impl PartitionValidation {
    /// `classes` classes of `size` operators, disjoint, covering, commuting.
    pub fn is_valid(&self, classes: usize, size: usize) -> bool {
        self.class_count == classes
            && self.class_sizes.iter().all(|&s| s == size)
            && self.disjoint
            && self.covers
            && self.excludes_identity
            && self.commuting_exact
            && self.dense_commutator_max <= DENSE_TOLERANCE
    }
}

/// `𝒱₀ = {(0,b)}`, `𝒱₁ = {(x,0)}`, `𝒱_i = {(x, (i-1)x)}` for `i = 2..p`.
pub fn cartan_partition_prime(p: u32) -> Result<CartanPartition<PauliIndex>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = p as i64;
    let mut classes = vec![(1..n).map(|b| PauliIndex::new(p, 0, b)).collect::<Vec<_>>()];
    for slope in 0..n {
        classes.push((1..n).map(|x| PauliIndex::new(p, x, slope * x)).collect());
    }
    Ok(CartanPartition { dims: vec![p], classes })
}

/// Outcome of the commuting-class search on single-qudit indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSearch<I: PartitionIndex> {
    pub partition: CartanPartition<I>,
    pub complete: bool,
    pub nodes: u64,
}

pub(crate) fn search_classes<I: PartitionIndex>(dims: Vec<u32>, vertices: &[I], size: usize) -> ClassSearch<I> {
    let outcome = search::clique_partition(vertices.len(), size, |u, v| vertices[u].commutes_with(&vertices[v]));
    let classes = outcome
        .classes
        .iter()
        .map(|cl| cl.iter().map(|&v| vertices[v].clone()).collect())
        .collect();
    ClassSearch {
        partition: CartanPartition { dims, classes },
        complete: outcome.complete,
        nodes: outcome.nodes,
    }
}

/// Partition of the nonidentity `u_ab` into classes of `d - 1` commuting
/// operators, or the best partial one when none exists.
pub fn commuting_class_search(d: u32) -> Result<ClassSearch<PauliIndex>> {
    check_dim(d)?;
    check_range("d", d as i64, 2, MAX_SEARCH_D as i64)?;
    Ok(search_classes(vec![d], &pauli_indices(d), d as usize - 1))
}

/// Largest number of disjoint commuting `(d-1)`-sets of nonidentity `u_ab`,
/// and how many such sets exist.
pub fn max_commuting_packing(d: u32) -> Result<(usize, usize)> {
    check_dim(d)?;
    check_range("d", d as i64, 2, MAX_PACKING_D as i64)?;
    let vertices = pauli_indices(d);
    let (best, all) = search::max_clique_packing(vertices.len(), d as usize - 1, |u, v| {
        vertices[u].commutes_with(&vertices[v])
    });
    Ok((best, all.len()))
}

/// Common eigenbasis of each class, from a generic Hermitian combination of
/// its operators.
pub fn joint_eigenbases<I: PartitionIndex>(partition: &CartanPartition<I>) -> Result<Vec<OrthonormalBasis>> {
    let d = partition.dim();
    partition
        .classes
        .iter()
        .enumerate()
        .map(|(index, class)| {
            let mut h = DenseMatrix::zeros(d as usize);
            for (j, op) in class.iter().enumerate() {
                let u = op.to_dense();
                let angle = 0.7 * j as f64 + 0.3;
                let weight = Complex64::from_polar(1.0 / (j as f64 + 1.5), angle);
                h = &h + &(&u.scale(weight) + &u.adjoint().scale(weight.conj()));
            }
            let (values, vectors) = h.hermitian_eigenvectors();
            let gap = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            if gap < 1e-6 {
                return Err(Error::SearchFailed(format!(
                    "degenerate combination for class {index} (gap {gap:e})"
                )));
            }
            Ok(OrthonormalBasis {
                d,
                label: BasisLabel::CartanClass { index },
                vectors,
            })
        })
        .collect()
}
