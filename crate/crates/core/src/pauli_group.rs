//! The finite Heisenberg-Weyl group `P_d = HW(ℤ_d)` of order `d³`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, modulo};
use crate::error::{check_dim, check_range, check_same, Error, Result};
use crate::phase::Phase;
use crate::weyl::MonomialOperator;

/// Default bound on `d` for brute-force enumerations.
pub const DEFAULT_CAP: u32 = 16;

/// `(a, b, c) ∈ ℤ_d³` with law `(a + a' - cb', b + b', c + c')`.
///
/// Ordering is lexicographic in `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PdRepr")]
pub struct PdElement {
    a: u32,
    b: u32,
    c: u32,
    d: u32,
}

#[derive(Deserialize)]
struct PdRepr {
    a: u32,
    b: u32,
    c: u32,
    d: u32,
}

impl TryFrom<PdRepr> for PdElement {
    type Error = Error;

    fn try_from(r: PdRepr) -> Result<Self> {
        PdElement::try_new(r.d, r.a as i64, r.b as i64, r.c as i64)
    }
}

impl PdElement {
    /// Rejects coordinates outside `0..d`.
    pub fn try_new(d: u32, a: i64, b: i64, c: i64) -> Result<Self> {
        check_dim(d)?;
        let hi = d as i64 - 1;
        check_range("a", a, 0, hi)?;
        check_range("b", b, 0, hi)?;
        check_range("c", c, 0, hi)?;
        Ok(PdElement::new(d, a, b, c))
    }

    /// Reduces every coordinate mod `d`.
    pub fn new(d: u32, a: i64, b: i64, c: i64) -> Self {
        assert!(d >= 2, "modulus must be at least 2");
        PdElement {
            a: modulo(a, d),
            b: modulo(b, d),
            c: modulo(c, d),
            d,
        }
    }

    pub fn identity(d: u32) -> Self {
        PdElement::new(d, 0, 0, 0)
    }

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn b(self) -> u32 {
        self.b
    }

    pub fn c(self) -> u32 {
        self.c
    }

    pub fn modulus(self) -> u32 {
        self.d
    }

    pub fn is_identity(self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    pub fn is_central(self) -> bool {
        self.b == 0 && self.c == 0
    }

    fn coords(self) -> (i64, i64, i64) {
        (self.a as i64, self.b as i64, self.c as i64)
    }

    pub fn compose(self, h: PdElement) -> Result<PdElement> {
        check_same(self.d, h.d)?;
        let (a, b, c) = self.coords();
        let (a2, b2, c2) = h.coords();
        Ok(PdElement::new(self.d, a + a2 - c * b2, b + b2, c + c2))
    }

    pub fn inverse(self) -> PdElement {
        let (a, b, c) = self.coords();
        PdElement::new(self.d, -a - b * c, -b, -c)
    }

    /// `self ∘ h ∘ self⁻¹ = (a + c b' - b c', b, c)` for `h = (a, b, c)`,
    /// `self = (a', b', c')`.
    pub fn conjugate(self, h: PdElement) -> Result<PdElement> {
        check_same(self.d, h.d)?;
        let (_, b2, c2) = self.coords();
        let (a, b, c) = h.coords();
        Ok(PdElement::new(self.d, a + c * b2 - b * c2, b, c))
    }

    pub fn commutes_with(self, h: PdElement) -> Result<bool> {
        check_same(self.d, h.d)?;
        let lhs = self.c as u64 * h.b as u64 + self.d as u64 * self.d as u64;
        Ok((lhs - self.b as u64 * h.c as u64).is_multiple_of(self.d as u64))
    }

    pub fn pow(self, n: u32) -> PdElement {
        let mut acc = PdElement::identity(self.d);
        for _ in 0..n {
            acc = acc.compose(self).expect("same modulus");
        }
        acc
    }

    /// Smallest `n ≥ 1` with `selfⁿ = e`.
    pub fn order(self) -> u32 {
        let mut acc = self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.compose(self).expect("same modulus");
            n += 1;
        }
        n
    }
}

impl fmt::Display for PdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All `d³` elements in lexicographic order.
pub fn elements(d: u32) -> impl Iterator<Item = PdElement> {
    let n = d as i64;
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| PdElement::new(d, a, b, c))))
}

fn check_cap(d: u32, cap: u32) -> Result<()> {
    check_dim(d)?;
    if d > cap {
        Err(Error::CapExceeded { d, cap })
    } else {
        Ok(())
    }
}

/// Number of `h` with `c b' - b c' ≡ 0 (mod d)`.
pub fn centralizer_size(g: PdElement) -> u64 {
    let d = g.d;
    let mut pairs = 0u64;
    for b2 in 0..d {
        for c2 in 0..d {
            let h = PdElement::new(d, 0, b2 as i64, c2 as i64);
            if g.commutes_with(h).expect("same modulus") {
                pairs += 1;
            }
        }
    }
    pairs * d as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClassReport {
    pub d: u32,
    /// Each class sorted; classes ordered by their minimal element.
    pub classes: Vec<Vec<PdElement>>,
    pub singleton_count: usize,
    pub size_d_count: usize,
    /// Classes whose size is neither 1 nor `d`; nonzero only for composite `d`.
    pub other_size_count: usize,
}

impl ConjugacyClassReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: PdElement) -> Option<&[PdElement]> {
        self.classes
            .iter()
            .find(|cl| cl.binary_search(&g).is_ok())
            .map(|v| v.as_slice())
    }
}

/// Classes by orbit computation under the closed-form conjugation.
pub fn conjugacy_classes(d: u32, cap: u32) -> Result<ConjugacyClassReport> {
    check_cap(d, cap)?;
    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    for h in elements(d) {
        if seen.contains(&h) {
            continue;
        }
        // The first coordinate of the conjugator never matters.
        let mut orbit: Vec<PdElement> = (0..d as i64)
            .flat_map(|b| (0..d as i64).map(move |c| PdElement::new(d, 0, b, c)))
            .map(|g| g.conjugate(h).expect("same modulus"))
            .collect();
        orbit.sort();
        orbit.dedup();
        seen.extend(orbit.iter().copied());
        classes.push(orbit);
    }
    let singleton_count = classes.iter().filter(|c| c.len() == 1).count();
    let size_d_count = classes.iter().filter(|c| c.len() == d as usize).count();
    Ok(ConjugacyClassReport {
        d,
        other_size_count: classes.len() - singleton_count - size_d_count,
        classes,
        singleton_count,
        size_d_count,
    })
}

/// `d(d+1) - 1`, the class count for prime `d`.
pub fn prime_class_count(d: u32) -> u64 {
    let d = d as u64;
    d * (d + 1) - 1
}

/// `Σ_{(b,c)} gcd(b, c, d)`, the class count for any `d`.
pub fn class_count_formula(d: u32) -> u64 {
    let d64 = d as u64;
    (0..d64).flat_map(|b| (0..d64).map(move |c| gcd(gcd(b, c), d64))).sum()
}

/// `(d-1)²(d+1)`, the number of elements outside singleton classes for
/// prime `d`.
pub fn noncentral_count(d: u32) -> u64 {
    let d = d as u64;
    (d - 1) * (d - 1) * (d + 1)
}

/// Parity and 2-adic pattern of [`noncentral_count`]: odd for even `d`,
/// divisible by 16 for `d ≡ 3 (mod 4)` and by 32 for `d ≡ 1 (mod 4)`.
pub fn noncentral_count_pattern_holds(d: u32) -> bool {
    let n = noncentral_count(d);
    let d64 = d as u64;
    if n != d64.pow(3) - prime_class_count(d) {
        return false;
    }
    match d % 4 {
        0 | 2 => n % 2 == 1,
        3 => n.is_multiple_of(16),
        _ => n.is_multiple_of(32),
    }
}

/// Whether every class is closed under inversion.
pub fn is_ambivalent(d: u32, cap: u32) -> Result<bool> {
    let report = conjugacy_classes(d, cap)?;
    Ok(report
        .classes
        .iter()
        .all(|cl| cl.iter().all(|g| cl.binary_search(&g.inverse()).is_ok())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsomorphismTag {
    CyclicZd,
    ZdxZd,
    GenericAbelian,
    Nonabelian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedSubgroup {
    pub name: &'static str,
    pub pattern: &'static str,
    pub elements: Vec<PdElement>,
    pub is_closed: bool,
    pub is_normal: bool,
    pub is_abelian: bool,
    pub tag: IsomorphismTag,
}

fn classify(d: u32, elems: &[PdElement], abelian: bool) -> IsomorphismTag {
    if !abelian {
        return IsomorphismTag::Nonabelian;
    }
    let n = elems.len() as u64;
    let d64 = d as u64;
    if n == d64 && elems.iter().any(|g| g.order() == d) {
        return IsomorphismTag::CyclicZd;
    }
    // An abelian group is ℤ_d × ℤ_d iff #{g : gᵏ = e} = gcd(k, d)² for all k | d.
    let zd_squared = n == d64 * d64
        && (1..=d).filter(|k| d.is_multiple_of(*k)).all(|k| {
            let solutions = elems.iter().filter(|g| g.pow(k).is_identity()).count() as u64;
            solutions == gcd(k as u64, d64).pow(2)
        });
    if zd_squared {
        IsomorphismTag::ZdxZd
    } else {
        IsomorphismTag::GenericAbelian
    }
}

fn analyze(d: u32, name: &'static str, pattern: &'static str, mut elems: Vec<PdElement>) -> NamedSubgroup {
    elems.sort();
    elems.dedup();
    let set: HashSet<PdElement> = elems.iter().copied().collect();
    let is_closed = elems.iter().all(|g| {
        elems
            .iter()
            .all(|h| set.contains(&g.compose(*h).expect("same modulus")))
    }) && elems.iter().all(|g| set.contains(&g.inverse()));
    let is_normal = elements(d).all(|g| {
        elems
            .iter()
            .all(|h| set.contains(&g.conjugate(*h).expect("same modulus")))
    });
    let is_abelian = elems
        .iter()
        .all(|g| elems.iter().all(|h| g.commutes_with(*h).expect("same modulus")));
    NamedSubgroup {
        name,
        pattern,
        tag: classify(d, &elems, is_abelian),
        elements: elems,
        is_closed,
        is_normal,
        is_abelian,
    }
}

/// The center and the coordinate subgroups, each checked for closure,
/// normality and commutativity.
pub fn named_subgroups(d: u32, cap: u32) -> Result<Vec<NamedSubgroup>> {
    check_cap(d, cap)?;
    let n = d as i64;
    let line = |f: fn(u32, i64) -> PdElement| (0..n).map(move |t| f(d, t)).collect::<Vec<_>>();
    let plane = |f: fn(u32, i64, i64) -> PdElement| {
        (0..n)
            .flat_map(move |s| (0..n).map(move |t| f(d, s, t)))
            .collect::<Vec<_>>()
    };
    Ok(vec![
        analyze(d, "center", "(a,0,0)", line(|d, t| PdElement::new(d, t, 0, 0))),
        analyze(d, "shift_line", "(0,b,0)", line(|d, t| PdElement::new(d, 0, t, 0))),
        analyze(d, "clock_line", "(0,0,c)", line(|d, t| PdElement::new(d, 0, 0, t))),
        analyze(d, "shift_plane", "(a,b,0)", plane(|d, s, t| PdElement::new(d, s, t, 0))),
        analyze(d, "clock_plane", "(a,0,c)", plane(|d, s, t| PdElement::new(d, s, 0, t))),
        analyze(d, "diagonal", "(a,b,b)", plane(|d, s, t| PdElement::new(d, s, t, t))),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    pub cosets: u64,
    pub cosets_partition: bool,
    pub law_is_componentwise: bool,
}

impl QuotientCheck {
    pub fn passed(&self) -> bool {
        self.cosets_partition && self.law_is_componentwise
    }
}

/// `P_d / Z(P_d) ≅ ℤ_d × ℤ_d` via coset representatives `(0, b, c)`.
pub fn quotient_check(d: u32, cap: u32) -> Result<QuotientCheck> {
    check_cap(d, cap)?;
    let n = d as i64;
    let reps: Vec<PdElement> = (0..n)
        .flat_map(|b| (0..n).map(move |c| PdElement::new(d, 0, b, c)))
        .collect();
    // Every g is z ∘ (0, b, c) for exactly one central z.
    let cosets_partition = elements(d).all(|g| {
        let hits = reps
            .iter()
            .filter(|r| {
                let z = g.compose(r.inverse()).expect("same modulus");
                z.is_central()
            })
            .count();
        hits == 1
    });
    let law_is_componentwise = reps.iter().all(|r| {
        reps.iter().all(|s| {
            let product = r.compose(*s).expect("same modulus");
            let target = PdElement::new(d, 0, (r.b + s.b) as i64, (r.c + s.c) as i64);
            product.compose(target.inverse()).expect("same modulus").is_central()
        })
    });
    Ok(QuotientCheck {
        cosets: reps.len() as u64,
        cosets_partition,
        law_is_componentwise,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IrrepCounts {
    pub one_dim: u64,
    pub d_dim: u64,
    pub burnside_sum: u64,
    pub order: u64,
}

impl IrrepCounts {
    pub fn burnside_holds(&self) -> bool {
        self.burnside_sum == self.order
    }
}

pub fn irrep_counts(d: u32) -> Result<IrrepCounts> {
    check_dim(d)?;
    let d = d as u64;
    let (one_dim, d_dim) = (d * d, d - 1);
    Ok(IrrepCounts {
        one_dim,
        d_dim,
        burnside_sum: one_dim + d_dim * d * d,
        order: d * d * d,
    })
}

/// `χ_mn(a, b, c) = q^{mb + nc}`.
pub fn character(m: u32, n: u32, g: PdElement) -> Phase {
    Phase::q_pow(m as i64 * g.b as i64 + n as i64 * g.c as i64, g.d)
}

/// `ρ_k(a, b, c) = q^{ka} X^b Z^{kc}`.
pub fn irrep(k: u32, g: PdElement) -> Result<MonomialOperator> {
    check_range("k", k as i64, 1, g.d as i64 - 1)?;
    let (a, b, c) = g.coords();
    let k = k as i64;
    Ok(MonomialOperator::new(g.d, 2 * k * a, b, k * c))
}

/// Whether `ρ_k(gh) = ρ_k(g) ρ_k(h)` on all pairs.
pub fn irrep_is_homomorphism(d: u32, k: u32, cap: u32) -> Result<bool> {
    check_cap(d, cap)?;
    let all: Vec<PdElement> = elements(d).collect();
    for g in &all {
        for h in &all {
            let lhs = irrep(k, g.compose(*h)?)?;
            if lhs != irrep(k, *g)? * irrep(k, *h)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(1/|G|) Σ_g |Tr ρ(g)|²` as the exact fraction `sum / order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterNorm {
    pub sum: u64,
    pub order: u64,
}

impl CharacterNorm {
    pub fn value(&self) -> f64 {
        self.sum as f64 / self.order as f64
    }

    pub fn is_one(&self) -> bool {
        self.sum == self.order
    }
}

pub fn irrep_character_norm(d: u32, k: u32, cap: u32) -> Result<CharacterNorm> {
    check_cap(d, cap)?;
    let mut sum = 0u64;
    for g in elements(d) {
        if let crate::weyl::MonomialTrace::Scaled { multiplicity, .. } = irrep(k, g)?.trace() {
            sum += (multiplicity as u64).pow(2);
        }
    }
    Ok(CharacterNorm {
        sum,
        order: (d as u64).pow(3),
    })
}

/// Finitely supported integer combination of group elements, an element of
/// the group algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalCombination(BTreeMap<PdElement, i64>);

impl FormalCombination {
    pub fn zero() -> Self {
        FormalCombination(BTreeMap::new())
    }

    pub fn basis(g: PdElement) -> Self {
        let mut out = Self::zero();
        out.add_term(g, 1);
        out
    }

    pub fn add_term(&mut self, g: PdElement, coeff: i64) {
        let entry = self.0.entry(g).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.0.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, g: PdElement) -> i64 {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (PdElement, i64)> + '_ {
        self.0.iter().map(|(g, c)| (*g, *c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Convolution product in the group algebra.
    pub fn product(&self, other: &FormalCombination) -> Result<FormalCombination> {
        let mut out = Self::zero();
        for (g, x) in self.terms() {
            for (h, y) in other.terms() {
                out.add_term(g.compose(h)?, x * y);
            }
        }
        Ok(out)
    }

    /// `xy - yx`, the bilinear extension of [`lie_bracket`].
    pub fn bracket(&self, other: &FormalCombination) -> Result<FormalCombination> {
        Ok(&self.product(other)? - &other.product(self)?)
    }
}

impl Add for &FormalCombination {
    type Output = FormalCombination;

    fn add(self, rhs: &FormalCombination) -> FormalCombination {
        let mut out = self.clone();
        for (g, c) in rhs.terms() {
            out.add_term(g, c);
        }
        out
    }
}

impl Sub for &FormalCombination {
    type Output = FormalCombination;

    fn sub(self, rhs: &FormalCombination) -> FormalCombination {
        self + &(-rhs)
    }
}

impl Neg for &FormalCombination {
    type Output = FormalCombination;

    fn neg(self) -> FormalCombination {
        FormalCombination(self.0.iter().map(|(g, c)| (*g, -c)).collect())
    }
}

#[derive(Serialize)]
struct TermRepr {
    element: PdElement,
    coefficient: i64,
}

impl Serialize for FormalCombination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            self.terms()
                .map(|(element, coefficient)| TermRepr { element, coefficient }),
        )
    }
}

/// `⟨g, h⟩ = (a + a' - cb', b + b', c + c') - (a + a' - bc', b + b', c + c')`.
pub fn lie_bracket(g: PdElement, h: PdElement) -> Result<FormalCombination> {
    let mut out = FormalCombination::basis(g.compose(h)?);
    out.add_term(h.compose(g)?, -1);
    Ok(out)
}

/// Image of `⟨g, h⟩` under `ρ₁` against `[ρ₁(g), ρ₁(h)]`, as exact formal
/// sums of monomials.
pub fn bracket_matches_commutator(g: PdElement, h: PdElement) -> Result<bool> {
    fn push(map: &mut BTreeMap<MonomialOperator, i64>, m: MonomialOperator, c: i64) {
        let e = map.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            map.remove(&m);
        }
    }
    let mut image = BTreeMap::new();
    for (e, c) in lie_bracket(g, h)?.terms() {
        push(&mut image, irrep(1, e)?, c);
    }
    let (wg, wh) = (irrep(1, g)?, irrep(1, h)?);
    let mut commutator = BTreeMap::new();
    push(&mut commutator, wg * wh, 1);
    push(&mut commutator, wh * wg, -1);
    Ok(image == commutator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(d: u32, a: i64, b: i64, c: i64) -> PdElement {
        PdElement::try_new(d, a, b, c).unwrap()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(e(3, 1, 2, 1).compose(e(3, 0, 1, 2)).unwrap(), PdElement::identity(3));
        assert_eq!(e(2, 1, 1, 1).compose(e(2, 1, 1, 1)).unwrap(), e(2, 1, 0, 0));
        for g in elements(5) {
            let (a, b, c) = g.coords();
            let euler = e(5, a, 0, 0)
                .compose(e(5, 0, b, 0))
                .unwrap()
                .compose(e(5, 0, 0, c))
                .unwrap();
            assert_eq!(euler, g);
        }
        assert!(e(2, 0, 0, 0).compose(e(3, 0, 0, 0)).is_err());
        assert!(PdElement::try_new(3, 3, 0, 0).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(PdElement::identity(4).inverse(), PdElement::identity(4));
        assert_eq!(e(3, 1, 2, 1).inverse(), e(3, 0, 1, 2));
        for g in elements(2) {
            assert!(g.compose(g.inverse()).unwrap().is_identity());
            assert!(g.inverse().compose(g).unwrap().is_identity());
        }
    }

    #[test]
    fn exhaustive_associativity() {
        for d in [2, 3] {
            let all: Vec<_> = elements(d).collect();
            for g in &all {
                for h in &all {
                    for k in &all {
                        let left = g.compose(*h).unwrap().compose(*k).unwrap();
                        assert_eq!(left, g.compose(h.compose(*k).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn randomized_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let d = rng.random_range(2..=12u32);
            let mut pick = || {
                e(
                    d,
                    rng.random_range(0..d as i64),
                    rng.random_range(0..d as i64),
                    rng.random_range(0..d as i64),
                )
            };
            let (g, h, k) = (pick(), pick(), pick());
            let left = g.compose(h).unwrap().compose(k).unwrap();
            assert_eq!(left, g.compose(h.compose(k).unwrap()).unwrap());
        }
    }

    #[test]
    fn class_examples() {
        let r2 = conjugacy_classes(2, DEFAULT_CAP).unwrap();
        assert_eq!(r2.class_count(), 5);
        assert_eq!((r2.singleton_count, r2.size_d_count), (2, 3));
        assert_eq!(conjugacy_classes(3, DEFAULT_CAP).unwrap().class_count(), 11);
        let r5 = conjugacy_classes(5, DEFAULT_CAP).unwrap();
        for a in 0..5 {
            assert_eq!(r5.class_of(e(5, a, 0, 0)).unwrap(), &[e(5, a, 0, 0)]);
        }
        assert!(matches!(
            conjugacy_classes(17, DEFAULT_CAP),
            Err(Error::CapExceeded { d: 17, cap: 16 })
        ));
    }

    #[test]
    fn class_counts_follow_gcd_formula() {
        for d in 2..=12 {
            let report = conjugacy_classes(d, DEFAULT_CAP).unwrap();
            let total: usize = report.classes.iter().map(Vec::len).sum();
            assert_eq!(total, (d as usize).pow(3));
            assert_eq!(report.class_count() as u64, class_count_formula(d));
            if crate::arith::is_prime(d) {
                assert_eq!(report.class_count() as u64, prime_class_count(d));
                assert_eq!(report.other_size_count, 0);
            }
        }
        assert_eq!(class_count_formula(4), 22);
    }

    #[test]
    fn classes_are_sorted() {
        let report = conjugacy_classes(4, DEFAULT_CAP).unwrap();
        let mins: Vec<_> = report.classes.iter().map(|c| c[0]).collect();
        let mut sorted = mins.clone();
        sorted.sort();
        assert_eq!(mins, sorted);
        assert!(report.classes.iter().all(|c| c.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn centralizers() {
        assert_eq!(centralizer_size(PdElement::identity(3)), 27);
        assert_eq!(centralizer_size(e(3, 0, 1, 0)), 9);
        assert_eq!(centralizer_size(e(4, 0, 2, 0)), 32);
        for d in 2..=8u32 {
            let d3 = (d as u64).pow(3);
            for g in elements(d) {
                let brute = elements(d)
                    .filter(|h| g.compose(*h).unwrap() == h.compose(g).unwrap())
                    .count() as u64;
                let size = centralizer_size(g);
                assert_eq!(size, brute);
                assert_eq!(size == d3, g.is_central());
                assert_eq!(size % (d as u64 * d as u64), 0);
            }
        }
    }

    #[test]
    fn ambivalence() {
        assert!(is_ambivalent(2, DEFAULT_CAP).unwrap());
        assert!(!is_ambivalent(3, DEFAULT_CAP).unwrap());
        assert!(!is_ambivalent(5, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn subgroups() {
        let s3 = named_subgroups(3, DEFAULT_CAP).unwrap();
        let center = &s3[0];
        assert_eq!(center.elements, vec![e(3, 0, 0, 0), e(3, 1, 0, 0), e(3, 2, 0, 0)]);
        assert!(center.is_normal && center.is_closed);
        assert_eq!(center.tag, IsomorphismTag::CyclicZd);
        let diag = &s3[5];
        assert_eq!(diag.elements.len(), 9);
        assert!(diag.is_normal && diag.is_abelian);
        let s2 = named_subgroups(2, DEFAULT_CAP).unwrap();
        let plane = &s2[3];
        assert_eq!(plane.elements.len(), 4);
        assert!(plane.is_normal);
        assert_eq!(plane.tag, IsomorphismTag::ZdxZd);
        // For d = 2 the diagonal is generated by (0,1,1), of order 4.
        assert_eq!(s2[5].tag, IsomorphismTag::GenericAbelian);
        for d in 2..=6 {
            for s in named_subgroups(d, DEFAULT_CAP).unwrap() {
                assert!(s.is_closed && s.is_abelian, "{} d={d}", s.name);
            }
        }
        // Lines (0,b,0) and (0,0,c) are not normal.
        assert!(!s3[1].is_normal && !s3[2].is_normal);
    }

    #[test]
    fn quotient() {
        for d in 2..=8 {
            let q = quotient_check(d, DEFAULT_CAP).unwrap();
            assert!(q.passed());
            assert_eq!(q.cosets, (d as u64).pow(2));
        }
    }

    #[test]
    fn irrep_dimension_counts() {
        let c2 = irrep_counts(2).unwrap();
        assert_eq!((c2.one_dim, c2.d_dim), (4, 1));
        assert_eq!(
            (irrep_counts(3).unwrap().one_dim, irrep_counts(3).unwrap().d_dim),
            (9, 2)
        );
        let c7 = irrep_counts(7).unwrap();
        assert_eq!(c7.burnside_sum, 343);
        assert!(c7.burnside_holds());
    }

    #[test]
    fn characters() {
        assert!(elements(4).all(|g| character(0, 0, g).is_one()));
        assert_eq!(character(1, 0, e(2, 0, 1, 0)), Phase::minus_one(2));
        for d in [2, 3, 4] {
            for m in 0..d {
                for n in 0..d {
                    for g in elements(d) {
                        for h in elements(d) {
                            let lhs = character(m, n, g.compose(h).unwrap());
                            assert_eq!(lhs, character(m, n, g) * character(m, n, h));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn irreps() {
        for d in 2..=6 {
            for g in elements(d) {
                let (a, b, c) = g.coords();
                assert_eq!(irrep(1, g).unwrap(), MonomialOperator::w(d, a, b, c));
            }
        }
        let rho = irrep(2, e(3, 1, 0, 1)).unwrap();
        assert_eq!(rho, MonomialOperator::new(3, 4, 0, 2));
        assert!(irrep(0, e(3, 0, 0, 0)).is_err());
        assert!(irrep(3, e(3, 0, 0, 0)).is_err());
        assert_eq!(
            irrep_character_norm(2, 1, DEFAULT_CAP).unwrap(),
            CharacterNorm { sum: 8, order: 8 }
        );
        for d in 2..=8 {
            for k in 1..d {
                assert!(irrep_is_homomorphism(d, k, DEFAULT_CAP).unwrap());
                let norm = irrep_character_norm(d, k, DEFAULT_CAP).unwrap();
                assert_eq!(norm.sum, norm.order * gcd(k as u64, d as u64));
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let g = e(2, 0, 1, 0);
        assert!(lie_bracket(g, g).unwrap().is_zero());
        let br = lie_bracket(g, e(2, 0, 0, 1)).unwrap();
        let mut expected = FormalCombination::basis(e(2, 0, 1, 1));
        expected.add_term(e(2, 1, 1, 1), -1);
        assert_eq!(br, expected);
        for h in elements(3) {
            assert!(lie_bracket(e(3, 2, 0, 0), h).unwrap().is_zero());
        }
    }

    #[test]
    fn bracket_vanishes_iff_commuting() {
        for d in 2..=5 {
            for g in elements(d) {
                for h in elements(d) {
                    assert_eq!(lie_bracket(g, h).unwrap().is_zero(), g.commutes_with(h).unwrap());
                }
            }
        }
    }

    #[test]
    fn bracket_corresponds_to_commutator() {
        for d in 2..=8 {
            for g in elements(d) {
                for h in elements(d).step_by(3) {
                    assert!(bracket_matches_commutator(g, h).unwrap());
                }
            }
        }
    }

    #[test]
    fn noncentral_pattern() {
        for d in 2..=33 {
            assert!(noncentral_count_pattern_holds(d), "d={d}");
        }
    }

    #[test]
    fn combination_json() {
        let br = lie_bracket(e(2, 0, 1, 0), e(2, 0, 0, 1)).unwrap();
        let json = serde_json::to_value(&br).unwrap();
        assert_eq!(json[0]["coefficient"], 1);
        assert_eq!(json[0]["element"]["b"], 1);
        let back: PdElement = serde_json::from_value(json[1]["element"].clone()).unwrap();
        assert_eq!(back, e(2, 1, 1, 1));
        assert!(serde_json::from_str::<PdElement>(r#"{"a":2,"b":0,"c":0,"d":2}"#).is_err());
    }

    fn element() -> impl Strategy<Value = (u32, i64, i64, i64)> {
        (2u32..=9).prop_flat_map(|d| (Just(d), 0..d as i64, 0..d as i64, 0..d as i64))
    }

    fn combination(d: u32) -> impl Strategy<Value = FormalCombination> {
        prop::collection::vec((0..d as i64, 0..d as i64, 0..d as i64, -3i64..=3), 1..4).prop_map(move |terms| {
            let mut out = FormalCombination::zero();
            for (a, b, c, k) in terms {
                out.add_term(PdElement::new(d, a, b, c), k);
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn conjugate_closed_form((d, a, b, c) in element(), (x, y, z) in (0i64..9, 0i64..9, 0i64..9)) {
            let h = PdElement::new(d, a, b, c);
            let g = PdElement::new(d, x, y, z);
            prop_assert_eq!(g.conjugate(h).unwrap(), g.compose(h).unwrap().compose(g.inverse()).unwrap());
        }

        #[test]
        fn bracket_antisymmetry((d, a, b, c) in element(), (x, y, z) in (0i64..9, 0i64..9, 0i64..9)) {
            let g = PdElement::new(d, a, b, c);
            let h = PdElement::new(d, x, y, z);
            prop_assert_eq!(lie_bracket(g, h).unwrap(), -&lie_bracket(h, g).unwrap());
        }

        #[test]
        fn jacobi((x, y, z) in (2u32..=7).prop_flat_map(|d| (combination(d), combination(d), combination(d)))) {
            let t1 = x.bracket(&y.bracket(&z).unwrap()).unwrap();
            let t2 = y.bracket(&z.bracket(&x).unwrap()).unwrap();
            let t3 = z.bracket(&x.bracket(&y).unwrap()).unwrap();
            prop_assert!((&(&t1 + &t2) + &t3).is_zero());
        }

        #[test]
        fn basis_bracket_matches_bilinear((d, a, b, c) in element(), (x, y, z) in (0i64..9, 0i64..9, 0i64..9)) {
            let g = PdElement::new(d, a, b, c);
            let h = PdElement::new(d, x, y, z);
            let bilinear = FormalCombination::basis(g).bracket(&FormalCombination::basis(h)).unwrap();
            prop_assert_eq!(lie_bracket(g, h).unwrap(), bilinear);
        }
    }
}
