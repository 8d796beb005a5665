//! Operators on the `d`-dimensional space spanned by `|k⟩ = |j, j-k⟩`.
//!
//! Everything uses computational indexing `k = j - m` with `d = 2j + 1`:
//! `X|k⟩ = |k-1⟩`, `Z|k⟩ = q^k|k⟩`. Monomial operators are exact;
//! `V_ra`, `F`, `h` and the su(2) ladder operators are dense.

pub mod dense;
pub mod monomial;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use dense::{inner, DenseMatrix};
pub use monomial::{MonomialOperator, MonomialTrace};

use crate::error::{check_dim, check_range, Result};
use crate::phase::Phase;

/// `exp(2πi x / d)` for real `x`.
pub fn q_real(x: f64, d: u32) -> Complex64 {
    let angle = 2.0 * PI * x / d as f64;
    Complex64::new(angle.cos(), angle.sin())
}

fn spin(d: u32) -> f64 {
    (d as f64 - 1.0) / 2.0
}

/// Corner phase `e^{i2πjr}` of `V_ra`; exact when `r` is an integer.
fn corner_phase(d: u32, r: f64) -> Complex64 {
    if r.fract() == 0.0 {
        Phase::new(d as i64 * (d as i64 - 1) * r as i64, d).to_complex()
    } else {
        let angle = 2.0 * PI * spin(d) * r;
        Complex64::new(angle.cos(), angle.sin())
    }
}

/// `V_ra`: superdiagonal `q^{(k+1)a}`, corner `(d-1, 0)` equal to `e^{i2πjr}`.
pub fn v_ra_matrix(d: u32, r: f64, a: i64) -> Result<DenseMatrix> {
    check_dim(d)?;
    let n = d as usize;
    let mut m = DenseMatrix::zeros(n);
    for k in 0..n - 1 {
        m.set(k, k + 1, Phase::q_pow((k as i64 + 1) * a, d).to_complex());
    }
    m.set(n - 1, 0, corner_phase(d, r));
    Ok(m)
}

/// Eigenvalue `q^{j(a+r) - α}` of `v_ra`.
pub fn v_ra_eigenvalue(d: u32, r: f64, a: i64, alpha: u32) -> Complex64 {
    q_real(spin(d) * (a as f64 + r) - alpha as f64, d)
}

/// Normalized eigenvector `|jα; ra⟩` of `v_ra`, in computational indexing.
///
/// For `r = 0` the components are exact powers of `τ`.
pub fn v_ra_eigenvector(d: u32, r: f64, a: i64, alpha: u32) -> Result<Vec<Complex64>> {
    check_dim(d)?;
    check_range("alpha", alpha as i64, 0, d as i64 - 1)?;
    let j = spin(d);
    let norm = 1.0 / (d as f64).sqrt();
    let v = (0..d)
        .map(|k| {
            if r == 0.0 {
                crate::mub::eigen_tau_exponent(d, a, k, alpha).to_complex() * norm
            } else {
                let m = j - k as f64;
                let exponent = (j + m) * (j - m + 1.0) * a as f64 / 2.0 - j * m * r + (j + m) * alpha as f64;
                q_real(exponent, d) * norm
            }
        })
        .collect();
    Ok(v)
}

/// The Weyl pair `(X, Z)`.
pub fn weyl_pair(d: u32) -> Result<(MonomialOperator, MonomialOperator)> {
    check_dim(d)?;
    Ok((MonomialOperator::shift_op(d), MonomialOperator::clock_op(d)))
}

/// Fourier matrix `F_{k'k} = q^{-kk'} / √d`, so that `Z = F X F†`.
pub fn fourier_matrix(d: u32) -> Result<DenseMatrix> {
    check_dim(d)?;
    let norm = 1.0 / (d as f64).sqrt();
    Ok(DenseMatrix::from_fn(d as usize, |i, k| {
        Phase::q_pow(-(i as i64) * k as i64, d).to_complex() * norm
    }))
}

/// `h = diag(√((j+m)(j-m+1)))`, i.e. `√((d-1-k)(k+1))` at index `k`.
pub fn h_matrix(d: u32) -> Result<DenseMatrix> {
    check_dim(d)?;
    let entries: Vec<Complex64> = (0..d)
        .map(|k| Complex64::new((((d - 1 - k) * (k + 1)) as f64).sqrt(), 0.0))
        .collect();
    Ok(DenseMatrix::diagonal(&entries))
}

/// The polar decomposition `j₊ = h v_ra`, `j₋ = v_ra† h`,
/// `j_z = ½(h² - v_ra† h² v_ra)`.
#[derive(Clone, Debug)]
pub struct Su2Polar {
    pub d: u32,
    pub r: f64,
    pub a: i64,
    pub h: DenseMatrix,
    pub v: DenseMatrix,
    pub jplus: DenseMatrix,
    pub jminus: DenseMatrix,
    pub jz: DenseMatrix,
}

pub fn polar_su2_ops(d: u32, r: f64, a: i64) -> Result<Su2Polar> {
    let h = h_matrix(d)?;
    let v = v_ra_matrix(d, r, a)?;
    let h2 = h.matmul(&h);
    let jplus = h.matmul(&v);
    let jminus = v.adjoint().matmul(&h);
    let jz = (&h2 - &v.adjoint().matmul(&h2).matmul(&v)).scale(Complex64::new(0.5, 0.0));
    Ok(Su2Polar {
        d,
        r,
        a,
        h,
        v,
        jplus,
        jminus,
        jz,
    })
}

/// The half-spin shift in the ladder phases.
const LADDER_S: f64 = 0.5;

impl Su2Polar {
    /// Residuals of `[j_z, j₊] = j₊`, `[j_z, j₋] = -j₋`, `[j₊, j₋] = 2 j_z`.
    pub fn commutation_residuals(&self) -> [f64; 3] {
        [
            self.jz.commutator(&self.jplus).max_abs_diff(&self.jplus),
            self.jz
                .commutator(&self.jminus)
                .max_abs_diff(&self.jminus.scale(Complex64::new(-1.0, 0.0))),
            self.jplus
                .commutator(&self.jminus)
                .max_abs_diff(&self.jz.scale(Complex64::new(2.0, 0.0))),
        ]
    }

    /// Predicted ladder actions and `j_z` eigenvalues, assembled as matrices.
    pub fn ladder_prediction(&self) -> (DenseMatrix, DenseMatrix, DenseMatrix) {
        let d = self.d;
        let n = d as usize;
        let j = spin(d);
        let a = self.a as f64;
        let mut plus = DenseMatrix::zeros(n);
        let mut minus = DenseMatrix::zeros(n);
        let mut z = DenseMatrix::zeros(n);
        for k in 0..n {
            let m = j - k as f64;
            z.set(k, k, Complex64::new(m, 0.0));
            // |j, m+1⟩ is index k-1; |j, m-1⟩ is index k+1.
            if k > 0 {
                let amp = ((j - m) * (j + m + 1.0)).sqrt();
                plus.set(k - 1, k, q_real((j - m + LADDER_S - 0.5) * a, d) * amp);
            }
            if k + 1 < n {
                let amp = ((j + m) * (j - m + 1.0)).sqrt();
                minus.set(k + 1, k, q_real(-(j - m + LADDER_S + 0.5) * a, d) * amp);
            }
        }
        (plus, minus, z)
    }

    /// Max deviation of `j₊`, `j₋`, `j_z` from the ladder prediction.
    pub fn ladder_residual(&self) -> f64 {
        let (plus, minus, z) = self.ladder_prediction();
        self.jplus
            .max_abs_diff(&plus)
            .max(self.jminus.max_abs_diff(&minus))
            .max(self.jz.max_abs_diff(&z))
    }
}

/// Operator ordering inside `t_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Ordering {
    /// `v^{m₁} z^{m₂}`, as printed.
    VZ,
    /// `z^{m₂} v^{m₁}`, the ordering for which the sine law is exact.
    #[default]
    ZV,
}

/// `t_m = q^{m₁m₂/2} v_ra^{m₁} z^{m₂}` (or the `ZV` product).
pub fn t_operator(d: u32, m: (u32, u32), r: f64, a: i64, ordering: Ordering) -> Result<DenseMatrix> {
    check_range("m1", m.0 as i64, 1, i64::MAX)?;
    check_range("m2", m.1 as i64, 1, i64::MAX)?;
    t_operator_unchecked(d, m, r, a, ordering)
}

fn t_operator_unchecked(d: u32, m: (u32, u32), r: f64, a: i64, ordering: Ordering) -> Result<DenseMatrix> {
    let v = v_ra_matrix(d, r, a)?.pow(m.0);
    let z = MonomialOperator::clock_op(d).pow(m.1).to_dense();
    let product = match ordering {
        Ordering::VZ => v.matmul(&z),
        Ordering::ZV => z.matmul(&v),
    };
    Ok(product.scale(Phase::new(m.0 as i64 * m.1 as i64, d).to_complex()))
}

/// `t_m` as an exact monomial when `(r, a) = (0, 0)`.
pub fn t_monomial(d: u32, m: (u32, u32), ordering: Ordering) -> MonomialOperator {
    let x = MonomialOperator::shift_op(d).pow(m.0);
    let z = MonomialOperator::clock_op(d).pow(m.1);
    let product = match ordering {
        Ordering::VZ => x * z,
        Ordering::ZV => z * x,
    };
    let prefactor = MonomialOperator::identity(d).with_phase(Phase::new(m.0 as i64 * m.1 as i64, d));
    prefactor * product
}

/// `m ∧ n = m₁n₂ - m₂n₁`.
pub fn wedge(m: (u32, u32), n: (u32, u32)) -> i64 {
    m.0 as i64 * n.1 as i64 - m.1 as i64 * n.0 as i64
}

/// Phases `(f, b)` with `t_m t_n = f·t_{m+n}` and `t_n t_m = b·t_{m+n}`,
/// exact for `(r, a) = (0, 0)`.
pub fn ffz_relative_phases(d: u32, m: (u32, u32), n: (u32, u32), ordering: Ordering) -> (Phase, Phase) {
    let tm = t_monomial(d, m, ordering);
    let tn = t_monomial(d, n, ordering);
    let tsum = t_monomial(d, (m.0 + n.0, m.1 + n.1), ordering);
    let relative = |prod: MonomialOperator| {
        debug_assert_eq!(prod.unphased(), tsum.unphased());
        prod.phase() * tsum.phase().inverse()
    };
    (relative(tm * tn), relative(tn * tm))
}

/// `‖[t_m, t_n] - 2i sin(π m∧n / d) t_{m+n}‖_max`.
pub fn ffz_residual(d: u32, m: (u32, u32), n: (u32, u32), r: f64, a: i64, ordering: Ordering) -> Result<f64> {
    let tm = t_operator(d, m, r, a, ordering)?;
    let tn = t_operator(d, n, r, a, ordering)?;
    let tsum = t_operator(d, (m.0 + n.0, m.1 + n.1), r, a, ordering)?;
    let coeff = Complex64::new(0.0, 2.0 * (PI * wedge(m, n) as f64 / d as f64).sin());
    Ok(tm.commutator(&tn).max_abs_diff(&tsum.scale(coeff)))
}

/// Best `λ` with `[t_m, t_n] ≈ λ t_{m+n}` and the residual of that fit.
pub fn ffz_proportionality(
    d: u32,
    m: (u32, u32),
    n: (u32, u32),
    r: f64,
    a: i64,
    ordering: Ordering,
) -> Result<(Complex64, f64)> {
    let tm = t_operator(d, m, r, a, ordering)?;
    let tn = t_operator(d, n, r, a, ordering)?;
    let tsum = t_operator(d, (m.0 + n.0, m.1 + n.1), r, a, ordering)?;
    let comm = tm.commutator(&tn);
    let lambda = tsum.adjoint().matmul(&comm).trace() / tsum.adjoint().matmul(&tsum).trace();
    Ok((lambda, comm.max_abs_diff(&tsum.scale(lambda))))
}
