//! The continuous Heisenberg-Weyl group `HW(ℝ)`.
//!
//! Elements are triples `(x, y, z)` with law
//! `(x, y, z)(x', y', z') = (x + x' - z y', y + y', z + z')`, and the group
//! has a faithful realization by 3×3 lower unitriangular real matrices.

use nalgebra::Matrix3;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HwElement {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HwElement {
    pub const IDENTITY: HwElement = HwElement { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        HwElement { x, y, z }
    }

    pub fn compose(self, h: HwElement) -> HwElement {
        HwElement::new(self.x + h.x - self.z * h.y, self.y + h.y, self.z + h.z)
    }

    pub fn inverse(self) -> HwElement {
        HwElement::new(-self.x - self.y * self.z, -self.y, -self.z)
    }

    /// Group commutator `g h g⁻¹ h⁻¹`; equals `(z y' - y z', 0, 0)` for
    /// `g = (x', y', z')`, `h = (x, y, z)`.
    pub fn commutator(self, h: HwElement) -> HwElement {
        self.compose(h).compose(self.inverse()).compose(h.inverse())
    }

    /// `self ∘ h ∘ self⁻¹` in closed form: only the first coordinate moves.
    pub fn conjugate(self, h: HwElement) -> HwElement {
        HwElement::new(h.x + h.z * self.y - h.y * self.z, h.y, h.z)
    }

    pub fn commutes_with(self, h: HwElement) -> bool {
        h.z * self.y - h.y * self.z == 0.0
    }

    /// Whether `other` lies in the conjugacy class of `self`.
    ///
    /// Central elements `(x, 0, 0)` are alone in their class; otherwise the
    /// class is the whole line `{(t, y, z) : t ∈ ℝ}`.
    pub fn is_conjugate_to(self, other: HwElement) -> bool {
        if self.y == 0.0 && self.z == 0.0 {
            self == other
        } else {
            self.y == other.y && self.z == other.z
        }
    }

    /// Whether the conjugacy class of `self` contains `self⁻¹`.
    pub fn class_is_ambivalent(self) -> bool {
        self.is_conjugate_to(self.inverse())
    }

    /// `M(x, y, z) = exp[i(x H₃ + y Q₃ + z P₃)]` in closed form.
    pub fn exp_matrix(self) -> HwMatrix {
        HwMatrix(Matrix3::new(
            1.0,
            0.0,
            0.0,
            -self.y,
            1.0,
            0.0,
            -self.x - 0.5 * self.y * self.z,
            self.z,
            1.0,
        ))
    }

    /// The isomorphism onto the matrix group, `(x, y, z) ↦ M(-x - yz/2, -y, -z)`.
    pub fn representation(self) -> HwMatrix {
        HwElement::new(-self.x - 0.5 * self.y * self.z, -self.y, -self.z).exp_matrix()
    }
}

/// A 3×3 real lower unitriangular matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HwMatrix(pub Matrix3<f64>);

impl HwMatrix {
    /// Recovers `(x, y, z)` such that `self = M(x, y, z)`.
    pub fn coordinates(&self) -> HwElement {
        let m = &self.0;
        let y = -m[(1, 0)];
        let z = m[(2, 1)];
        HwElement::new(-m[(2, 0)] - 0.5 * y * z, y, z)
    }

    pub fn is_unitriangular(&self) -> bool {
        let m = &self.0;
        (0..3).all(|i| m[(i, i)] == 1.0) && m[(0, 1)] == 0.0 && m[(0, 2)] == 0.0 && m[(1, 2)] == 0.0
    }

    pub fn max_abs_diff(&self, other: &HwMatrix) -> f64 {
        (self.0 - other.0).abs().max()
    }
}

impl std::ops::Mul for HwMatrix {
    type Output = HwMatrix;

    fn mul(self, rhs: HwMatrix) -> HwMatrix {
        HwMatrix(self.0 * rhs.0)
    }
}

/// Matrix law `M(x,y,z) M(x',y',z') = M(x + x' + ½zy' - ½yz', y + y', z + z')`.
pub fn matrix_law(g: HwElement, h: HwElement) -> HwElement {
    HwElement::new(g.x + h.x + 0.5 * g.z * h.y - 0.5 * g.y * h.z, g.y + h.y, g.z + h.z)
}

/// `exp[i(x H₃ + y Q₃ + z P₃)]` by power series, truncated after `terms`.
pub fn series_exp(g: HwElement, terms: usize) -> HwMatrix {
    // i·H₃, i·Q₃, i·P₃ are real.
    let a = Matrix3::new(0.0, 0.0, 0.0, -g.y, 0.0, 0.0, -g.x, g.z, 0.0);
    let mut sum = Matrix3::identity();
    let mut term = Matrix3::identity();
    for n in 1..terms {
        term = term * a / n as f64;
        sum += term;
    }
    HwMatrix(sum)
}

pub type GaussianMatrix = Matrix3<Complex<i64>>;

/// The generators `(H₃, Q₃, P₃)` with entries in `{0, ±i}`.
pub fn generators() -> (GaussianMatrix, GaussianMatrix, GaussianMatrix) {
    let i = Complex::new(0, 1);
    let mut h = GaussianMatrix::zeros();
    let mut q = GaussianMatrix::zeros();
    let mut p = GaussianMatrix::zeros();
    h[(2, 0)] = i;
    q[(1, 0)] = i;
    p[(2, 1)] = -i;
    (h, q, p)
}

fn bracket(a: &GaussianMatrix, b: &GaussianMatrix) -> GaussianMatrix {
    a * b - b * a
}

/// Outcome of the exact Lie bracket checks on the 3×3 generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwLieCheck {
    pub q_p_is_i_h: bool,
    pub p_h_vanishes: bool,
    pub h_q_vanishes: bool,
}

impl HwLieCheck {
    pub fn passed(&self) -> bool {
        self.q_p_is_i_h && self.p_h_vanishes && self.h_q_vanishes
    }
}

/// `[Q₃, P₃] = i H₃`, `[P₃, H₃] = 0`, `[H₃, Q₃] = 0` in Gaussian integers.
pub fn hw_lie_check() -> HwLieCheck {
    let (h, q, p) = generators();
    let i = Complex::new(0, 1);
    HwLieCheck {
        q_p_is_i_h: bracket(&q, &p) == h * i,
        p_h_vanishes: bracket(&p, &h) == GaussianMatrix::zeros(),
        h_q_vanishes: bracket(&h, &q) == GaussianMatrix::zeros(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dyadic() -> impl Strategy<Value = f64> {
        (-16i32..=16).prop_map(|k| k as f64 / 2.0)
    }

    fn element() -> impl Strategy<Value = HwElement> {
        (dyadic(), dyadic(), dyadic()).prop_map(|(x, y, z)| HwElement::new(x, y, z))
    }

    #[test]
    fn identity_and_inverse() {
        let g = HwElement::new(1.0, 2.0, 3.0);
        assert_eq!(HwElement::IDENTITY.compose(g), g);
        assert_eq!(g.inverse(), HwElement::new(-7.0, -2.0, -3.0));
        assert_eq!(g.compose(HwElement::new(-7.0, -2.0, -3.0)), HwElement::IDENTITY);
    }

    #[test]
    fn conjugation_examples() {
        let h = HwElement::new(0.0, 1.0, 0.0);
        let g = HwElement::new(0.0, 0.0, 1.0);
        // Oracle: compose g ∘ h ∘ g⁻¹ directly.
        let oracle = g.compose(h).compose(g.inverse());
        assert_eq!(oracle, HwElement::new(-1.0, 1.0, 0.0));
        assert_eq!(g.conjugate(h), oracle);
        assert_eq!(HwElement::IDENTITY.conjugate(h), h);
        let k = HwElement::new(2.5, 1.0, 0.0);
        assert_eq!(HwElement::new(-3.0, 1.0, 0.0).conjugate(k), k);
    }

    #[test]
    fn closed_form_exp_matches_series() {
        for &(x, y, z) in &[(0.1, -0.2, 0.3), (0.5, 0.5, -0.5), (-0.3, 0.7, 0.2)] {
            let g = HwElement::new(x, y, z);
            assert!(g.exp_matrix().max_abs_diff(&series_exp(g, 12)) < 1e-10);
        }
        assert_eq!(HwElement::IDENTITY.exp_matrix().0, Matrix3::identity());
    }

    #[test]
    fn lie_brackets_are_exact() {
        assert!(hw_lie_check().passed());
    }

    #[test]
    fn commuting_criterion_on_grid() {
        let grid = [-1.0, 0.0, 0.5, 2.0];
        for &y in &grid {
            for &z in &grid {
                for &y2 in &grid {
                    for &z2 in &grid {
                        let g = HwElement::new(0.5, y2, z2);
                        let h = HwElement::new(-1.0, y, z);
                        let commute = g.compose(h) == h.compose(g);
                        assert_eq!(commute, z * y2 - y * z2 == 0.0);
                        assert_eq!(commute, g.commutes_with(h));
                    }
                }
            }
        }
    }

    #[test]
    fn only_identity_class_is_ambivalent() {
        let grid = [-1.5, 0.0, 1.0];
        for &x in &grid {
            for &y in &grid {
                for &z in &grid {
                    let g = HwElement::new(x, y, z);
                    assert_eq!(g.class_is_ambivalent(), g == HwElement::IDENTITY, "{g:?}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn associativity(g in element(), h in element(), k in element()) {
            prop_assert_eq!(g.compose(h).compose(k), g.compose(h.compose(k)));
        }

        #[test]
        fn commutator_closed_form(g in element(), h in element()) {
            let expected = HwElement::new(h.z * g.y - h.y * g.z, 0.0, 0.0);
            prop_assert_eq!(g.commutator(h), expected);
        }

        #[test]
        fn conjugate_matches_composition(g in element(), h in element()) {
            prop_assert_eq!(g.conjugate(h), g.compose(h).compose(g.inverse()));
        }

        #[test]
        fn matrix_law_holds(g in element(), h in element()) {
            let product = g.exp_matrix() * h.exp_matrix();
            prop_assert_eq!(product, matrix_law(g, h).exp_matrix());
            prop_assert!(product.is_unitriangular());
        }

        #[test]
        fn representation_is_homomorphism(g in element(), h in element()) {
            prop_assert_eq!(g.compose(h).representation(), g.representation() * h.representation());
            prop_assert_eq!(g.exp_matrix().coordinates(), g);
        }
    }
}
