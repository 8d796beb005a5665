//! Eigenbases of `V_0a`, generalized Hadamard matrices and mutual
//! unbiasedness.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{check_dim, check_range, check_same, Error, Result};
use crate::phase::Phase;
use crate::weyl::{fourier_matrix, inner, v_ra_matrix, DenseMatrix, MonomialOperator};

/// Largest prime accepted by [`mub_family`].
pub const MAX_FAMILY_PRIME: u32 = 97;

/// `τ^{(d-k-1)(k+1)a - 2(k+1)α}`, the `k`-th component of `√d·φ(aα)`.
pub fn eigen_tau_exponent(d: u32, a: i64, k: u32, alpha: u32) -> Phase {
    let (d, k, alpha) = (d as i64, k as i64, alpha as i64);
    Phase::new((d - k - 1) * (k + 1) * a - 2 * (k + 1) * alpha, d as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisLabel {
    Computational,
    Hadamard { a: u32 },
    CartanClass { index: usize },
}

/// `d` orthonormal column vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthonormalBasis {
    pub d: u32,
    pub label: BasisLabel,
    pub vectors: Vec<Vec<Complex64>>,
}

impl OrthonormalBasis {
    /// `max |⟨u_i|u_j⟩ - δ_ij|`.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner(u, v) - target).norm());
            }
        }
        worst
    }

    pub fn as_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_columns(&self.vectors)
    }
}

pub fn computational_basis(d: u32) -> Result<OrthonormalBasis> {
    check_dim(d)?;
    let vectors = (0..d as usize)
        .map(|k| {
            (0..d as usize)
                .map(|i| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    Ok(OrthonormalBasis {
        d,
        label: BasisLabel::Computational,
        vectors,
    })
}

/// `H_a` stored as its exact `τ`-exponent table, rows `k`, columns `α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "HadamardRepr", try_from = "HadamardRepr")]
pub struct HadamardMatrix {
    pub d: u32,
    pub a: u32,
    pub entries: Vec<Vec<Phase>>,
}

#[derive(Serialize, Deserialize)]
struct HadamardRepr {
    d: u32,
    a: u32,
    tau_denominator: u32,
    tau_exp: Vec<Vec<u32>>,
}

impl From<HadamardMatrix> for HadamardRepr {
    fn from(h: HadamardMatrix) -> Self {
        HadamardRepr {
            d: h.d,
            a: h.a,
            tau_denominator: 2 * h.d,
            tau_exp: h.tau_exponents(),
        }
    }
}

impl TryFrom<HadamardRepr> for HadamardMatrix {
    type Error = Error;

    fn try_from(r: HadamardRepr) -> Result<Self> {
        check_dim(r.d)?;
        check_same(r.tau_denominator, 2 * r.d)?;
        if r.tau_exp.len() != r.d as usize || r.tau_exp.iter().any(|row| row.len() != r.d as usize) {
            return Err(Error::Invalid(format!("exponent table must be {0}x{0}", r.d)));
        }
        let entries = r
            .tau_exp
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&t| {
                        check_range("tau_exp", t as i64, 0, 2 * r.d as i64 - 1)?;
                        Phase::try_new(t as i64, r.d)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(HadamardMatrix {
            d: r.d,
            a: r.a,
            entries,
        })
    }
}

pub fn hadamard_h_a(d: u32, a: u32) -> Result<HadamardMatrix> {
    check_dim(d)?;
    check_range("a", a as i64, 0, d as i64 - 1)?;
    let entries = (0..d)
        .map(|k| (0..d).map(|alpha| eigen_tau_exponent(d, a as i64, k, alpha)).collect())
        .collect();
    Ok(HadamardMatrix { d, a, entries })
}

impl HadamardMatrix {
    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.d as usize, |k, alpha| self.entries[k][alpha].to_complex())
    }

    /// The exponent table as plain integers, over denominator `2d`.
    pub fn tau_exponents(&self) -> Vec<Vec<u32>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.tau_exp()).collect())
            .collect()
    }

    /// `max ||h_kl| - 1|` over the dense entries.
    pub fn unit_modulus_deviation(&self) -> f64 {
        let m = self.to_dense();
        let n = self.d as usize;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((m.get(i, j).norm() - 1.0).abs());
            }
        }
        worst
    }

    /// `‖H_a† H_a - d I‖_max`.
    pub fn gram_residual(&self) -> f64 {
        let h = self.to_dense();
        let target = DenseMatrix::identity(self.d as usize).scale(Complex64::new(self.d as f64, 0.0));
        h.adjoint().matmul(&h).max_abs_diff(&target)
    }

    /// `‖H_a† V_0a H_a - q^{(d-1)a/2} d Σ_α q^{-α} E_αα‖_max`.
    pub fn conjugation_residual(&self) -> f64 {
        let d = self.d;
        let h = self.to_dense();
        let v = v_ra_matrix(d, 0.0, self.a as i64).expect("d >= 2");
        let lhs = h.adjoint().matmul(&v).matmul(&h);
        let diag: Vec<Complex64> = (0..d)
            .map(|alpha| {
                let phase = Phase::new((d as i64 - 1) * self.a as i64 - 2 * alpha as i64, d);
                phase.to_complex() * d as f64
            })
            .collect();
        lhs.max_abs_diff(&DenseMatrix::diagonal(&diag))
    }

    /// Normalized columns, i.e. the basis `B_0a`.
    pub fn basis(&self) -> OrthonormalBasis {
        let norm = 1.0 / (self.d as f64).sqrt();
        let vectors = (0..self.d as usize)
            .map(|alpha| {
                (0..self.d as usize)
                    .map(|k| self.entries[k][alpha].to_complex() * norm)
                    .collect()
            })
            .collect();
        OrthonormalBasis {
            d: self.d,
            label: BasisLabel::Hadamard { a: self.a },
            vectors,
        }
    }
}

/// `B_0a = {φ(aα)}`, the eigenbasis of `V_0a`.
pub fn basis_b0a(d: u32, a: u32) -> Result<OrthonormalBasis> {
    Ok(hadamard_h_a(d, a)?.basis())
}

/// Max residual of `V_0a φ(aα) = q^{(d-1)a/2 - α} φ(aα)` over all `α`.
pub fn eigen_relation_residual(d: u32, a: u32) -> Result<f64> {
    let basis = basis_b0a(d, a)?;
    let v = MonomialOperator::new(d, 0, 1, a as i64).to_dense();
    debug_assert!(v.max_abs_diff(&v_ra_matrix(d, 0.0, a as i64)?) == 0.0);
    let mut worst = 0.0f64;
    for (alpha, phi) in basis.vectors.iter().enumerate() {
        let lambda = Phase::new((d as i64 - 1) * a as i64 - 2 * alpha as i64, d).to_complex();
        let vphi = v.apply(phi);
        for (x, y) in vphi.iter().zip(phi) {
            worst = worst.max((x - y * lambda).norm());
        }
    }
    Ok(worst)
}

/// `S = (1/√d) Σ_β E_{β, -β}`.
pub fn s_matrix(d: u32) -> Result<DenseMatrix> {
    check_dim(d)?;
    let norm = 1.0 / (d as f64).sqrt();
    let n = d as usize;
    Ok(DenseMatrix::from_fn(n, |i, j| {
        let target = (n - i) % n;
        Complex64::new(if j == target { norm } else { 0.0 }, 0.0)
    }))
}

/// `(H₀ S)†`.
pub fn hadamard_fourier(d: u32) -> Result<DenseMatrix> {
    let h0 = hadamard_h_a(d, 0)?.to_dense();
    Ok(h0.matmul(&s_matrix(d)?).adjoint())
}

/// `‖F - (H₀ S)†‖_max`.
pub fn fourier_hadamard_residual(d: u32) -> Result<f64> {
    Ok(fourier_matrix(d)?.max_abs_diff(&hadamard_fourier(d)?))
}

/// `‖Z† F - (H₀ S)†‖_max`; the relation that holds between the two.
pub fn fourier_hadamard_clock_residual(d: u32) -> Result<f64> {
    let zf = MonomialOperator::clock_op(d)
        .adjoint()
        .to_dense()
        .matmul(&fourier_matrix(d)?);
    Ok(zf.max_abs_diff(&hadamard_fourier(d)?))
}

/// `|⟨u|v⟩|` for every pair of vectors.
pub fn overlap_moduli(b1: &OrthonormalBasis, b2: &OrthonormalBasis) -> Result<Vec<Vec<f64>>> {
    check_same(b1.d, b2.d)?;
    Ok(b1
        .vectors
        .iter()
        .map(|u| b2.vectors.iter().map(|v| inner(u, v).norm()).collect())
        .collect())
}

/// `max | |⟨u|v⟩| - 1/√d |` over all `d²` pairs.
pub fn unbiasedness(b1: &OrthonormalBasis, b2: &OrthonormalBasis) -> Result<f64> {
    let target = 1.0 / (b1.d as f64).sqrt();
    Ok(overlap_moduli(b1, b2)?
        .into_iter()
        .flatten()
        .map(|x| (x - target).abs())
        .fold(0.0, f64::max))
}

/// `{B_00, …, B_0(p-1), B_p}` for prime `p`.
pub fn mub_family(p: u32) -> Result<Vec<OrthonormalBasis>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_range("p", p as i64, 2, MAX_FAMILY_PRIME as i64)?;
    let mut family = (0..p).map(|a| basis_b0a(p, a)).collect::<Result<Vec<_>>>()?;
    family.push(computational_basis(p)?);
    Ok(family)
}

/// Symmetric matrix of [`unbiasedness`] values; the diagonal holds each
/// basis' orthonormality deviation.
pub fn pairwise_deviations(family: &[OrthonormalBasis]) -> Result<Vec<Vec<f64>>> {
    let n = family.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        out[i][i] = family[i].orthonormality_deviation();
        for j in i + 1..n {
            let dev = unbiasedness(&family[i], &family[j])?;
            out[i][j] = dev;
            out[j][i] = dev;
        }
    }
    Ok(out)
}
