//! Named verification suites producing machine-readable reports.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{gcd, is_prime};
use crate::basis::{self, PartitionIndex, PauliIndex};
use crate::error::{Error, Result};
use crate::hw::{self, HwElement};
use crate::mub;
use crate::pauli_group::{self as group, PdElement};
use crate::phase::{Phase, Sign};
use crate::weyl::{self, DenseMatrix, MonomialOperator, MonomialTrace, Ordering};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_D: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub max_deviation: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    pub tolerance: f64,
    pub max_d: u32,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            d: None,
            p: None,
            e: None,
            tolerance: DEFAULT_TOLERANCE,
            max_d: group::DEFAULT_CAP,
        }
    }
}

impl SuiteParams {
    fn dim(&self) -> u32 {
        self.d.unwrap_or(DEFAULT_D)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hw,
    Group,
    Weyl,
    Mub,
    Basis,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hw => "hw",
            Suite::Group => "group",
            Suite::Weyl => "weyl",
            Suite::Mub => "mub",
            Suite::Basis => "basis",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hw" => Suite::Hw,
            "group" => Suite::Group,
            "weyl" => Suite::Weyl,
            "mub" => Suite::Mub,
            "basis" => Suite::Basis,
            "all" => Suite::All,
            _ => return Err(Error::Invalid(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub params: SuiteParams,
    pub checks: Vec<Check>,
    pub overall: Status,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON form; per-check timings appear under `"timing"` only on request.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if timing {
            let checks: serde_json::Map<String, Value> = self
                .checks
                .iter()
                .map(|c| (c.name.clone(), json!(c.elapsed.as_secs_f64())))
                .collect();
            let total: f64 = self.checks.iter().map(|c| c.elapsed.as_secs_f64()).sum();
            value["timing"] = json!({ "total_seconds": total, "checks": checks });
        }
        value
    }
}

struct Runner {
    prefix: &'static str,
    tolerance: f64,
    checks: Vec<Check>,
}

impl Runner {
    fn new(prefix: &'static str, tolerance: f64) -> Self {
        Runner {
            prefix,
            tolerance,
            checks: Vec::new(),
        }
    }

    fn push(
        &mut self,
        name: String,
        passed: bool,
        deviation: f64,
        tolerance: f64,
        detail: Option<String>,
        start: Instant,
    ) {
        let name = if self.prefix.is_empty() {
            name
        } else {
            format!("{}.{name}", self.prefix)
        };
        self.checks.push(Check {
            name,
            status: Status::from_bool(passed),
            max_deviation: deviation,
            tolerance,
            detail,
            elapsed: start.elapsed(),
        });
    }

    /// Zero-tolerance check of an exact predicate.
    fn exact(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<bool>) -> Result<()> {
        let start = Instant::now();
        let ok = f()?;
        self.push(name.into(), ok, if ok { 0.0 } else { 1.0 }, 0.0, None, start);
        Ok(())
    }

    /// Exact check that also reports a detail string.
    fn detailed(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) -> Result<()> {
        let start = Instant::now();
        let (ok, detail) = f()?;
        self.push(name.into(), ok, if ok { 0.0 } else { 1.0 }, 0.0, Some(detail), start);
        Ok(())
    }

    /// Numerical check against the suite tolerance.
    fn within(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<f64>) -> Result<()> {
        let tol = self.tolerance;
        self.within_tol(name, tol, f)
    }

    fn within_tol(&mut self, name: impl Into<String>, tol: f64, f: impl FnOnce() -> Result<f64>) -> Result<()> {
        let start = Instant::now();
        let dev = f()?;
        self.push(name.into(), dev <= tol, dev, tol, None, start);
        Ok(())
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    let tol = params.tolerance;
    let checks = match suite {
        Suite::Hw => hw_suite(Runner::new("", tol))?,
        Suite::Group => group_suite(Runner::new("", tol), params)?,
        Suite::Weyl => weyl_suite(Runner::new("", tol), params)?,
        Suite::Mub => mub_suite(Runner::new("", tol), params)?,
        Suite::Basis => basis_suite(Runner::new("", tol), params)?,
        Suite::All => {
            let mut all = hw_suite(Runner::new("hw", tol))?;
            all.extend(group_suite(Runner::new("group", tol), params)?);
            all.extend(weyl_suite(Runner::new("weyl", tol), params)?);
            all.extend(mub_suite(Runner::new("mub", tol), params)?);
            all.extend(basis_suite(Runner::new("basis", tol), params)?);
            all
        }
    };
    let overall = Status::from_bool(checks.iter().all(Check::passed));
    Ok(VerificationReport {
        schema: SCHEMA,
        suite: suite.name().to_string(),
        params: params.clone(),
        checks,
        overall,
    })
}

fn hw_grid() -> Vec<HwElement> {
    let values = [-1.5, -0.5, 0.0, 0.5, 2.0];
    let mut out = Vec::new();
    for &x in &values {
        for &y in &values {
            for &z in &values {
                out.push(HwElement::new(x, y, z));
            }
        }
    }
    out
}

fn hw_suite(mut r: Runner) -> Result<Vec<Check>> {
    let grid = hw_grid();
    let few: Vec<HwElement> = grid.iter().step_by(13).copied().collect();
    let pairs = || grid.iter().flat_map(|g| grid.iter().map(move |h| (*g, *h)));
    r.exact("associativity", || {
        Ok(pairs().all(|(g, h)| few.iter().all(|k| g.compose(h).compose(*k) == g.compose(h.compose(*k)))))
    })?;
    r.exact("inverse", || {
        Ok(grid.iter().all(|g| g.compose(g.inverse()) == HwElement::IDENTITY))
    })?;
    r.exact("commutator_closed_form", || {
        Ok(pairs().all(|(g, h)| g.commutator(h) == HwElement::new(h.z * g.y - h.y * g.z, 0.0, 0.0)))
    })?;
    r.exact("conjugation_closed_form", || {
        Ok(pairs().all(|(g, h)| g.conjugate(h) == g.compose(h).compose(g.inverse())))
    })?;
    r.exact("commuting_criterion", || {
        Ok(pairs().all(|(g, h)| (g.compose(h) == h.compose(g)) == (h.z * g.y - h.y * g.z == 0.0)))
    })?;
    r.exact("non_ambivalence", || {
        Ok(grid
            .iter()
            .all(|g| g.class_is_ambivalent() == (*g == HwElement::IDENTITY)))
    })?;
    r.exact("matrix_law", || {
        Ok(pairs().all(|(g, h)| g.exp_matrix() * h.exp_matrix() == hw::matrix_law(g, h).exp_matrix()))
    })?;
    r.exact("representation_homomorphism", || {
        Ok(pairs().all(|(g, h)| g.compose(h).representation() == g.representation() * h.representation()))
    })?;
    r.exact("matrix_unitriangular", || {
        Ok(grid
            .iter()
            .all(|g| g.exp_matrix().is_unitriangular() && g.exp_matrix().coordinates() == *g))
    })?;
    r.exact("lie_brackets", || Ok(hw::hw_lie_check().passed()))?;
    r.within_tol("series_exponential", 1e-10, || {
        let small = hw_grid()
            .into_iter()
            .map(|g| HwElement::new(g.x / 4.0, g.y / 4.0, g.z / 4.0));
        Ok(small
            .map(|g| g.exp_matrix().max_abs_diff(&hw::series_exp(g, 16)))
            .fold(0.0, f64::max))
    })?;
    Ok(r.checks)
}

/// Deterministic subset of `P_d` of roughly `target` elements.
fn pd_sample(d: u32, target: usize) -> Vec<PdElement> {
    let total = (d as usize).pow(3);
    let stride = (total / target).max(1);
    let mut out: Vec<PdElement> = group::elements(d).step_by(stride).collect();
    out.push(PdElement::new(d, 1, 1, 1));
    out.push(PdElement::new(d, 0, d as i64 - 1, 1));
    out.sort();
    out.dedup();
    out
}

fn group_suite(mut r: Runner, params: &SuiteParams) -> Result<Vec<Check>> {
    let d = params.dim();
    let cap = params.max_d;
    let report = group::conjugacy_classes(d, cap)?;
    let all: Vec<PdElement> = group::elements(d).collect();
    let sample = pd_sample(d, 40);
    let small = pd_sample(d, 12);
    r.exact("associativity", || {
        for g in &sample {
            for h in &sample {
                for k in &small {
                    if g.compose(*h)?.compose(*k)? != g.compose(h.compose(*k)?)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })?;
    r.exact("inverse", || {
        Ok(all
            .iter()
            .all(|g| g.compose(g.inverse()).is_ok_and(|e| e.is_identity())))
    })?;
    r.exact("conjugation_closed_form", || {
        for g in &sample {
            for h in &all {
                if g.conjugate(*h)? != g.compose(*h)?.compose(g.inverse())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    let count = report.class_count();
    r.detailed("class_count", || {
        Ok((count as u64 == group::prime_class_count(d), format!("classes={count}")))
    })?;
    r.detailed("class_count_gcd_formula", || {
        let formula = group::class_count_formula(d);
        Ok((count as u64 == formula, format!("classes={count} formula={formula}")))
    })?;
    r.detailed("singletons", || {
        Ok((
            report.singleton_count == d as usize,
            format!("singletons={}", report.singleton_count),
        ))
    })?;
    r.detailed("class_sizes", || {
        Ok((
            report.other_size_count == 0 && report.size_d_count as u64 == (d as u64).pow(2) - 1,
            format!("size_d={} other={}", report.size_d_count, report.other_size_count),
        ))
    })?;
    r.exact("centralizers", || {
        let d2 = (d as u64).pow(2);
        Ok(all.iter().all(|g| {
            let size = group::centralizer_size(*g);
            size.is_multiple_of(d2) && (size == d2 * d as u64) == g.is_central()
        }))
    })?;
    r.detailed("ambivalence", || {
        let amb = group::is_ambivalent(d, cap)?;
        Ok((amb == (d == 2), format!("ambivalent={amb}")))
    })?;
    r.detailed("subgroups", || {
        let subs = group::named_subgroups(d, cap)?;
        let normal_expected = ["center", "shift_plane", "clock_plane", "diagonal"];
        let ok = subs
            .iter()
            .all(|s| s.is_closed && s.is_abelian && (!normal_expected.contains(&s.name) || s.is_normal));
        let tags: Vec<String> = subs.iter().map(|s| format!("{}:{:?}", s.name, s.tag)).collect();
        Ok((ok, tags.join(",")))
    })?;
    r.exact("quotient_law", || Ok(group::quotient_check(d, cap)?.passed()))?;
    r.detailed("burnside", || {
        let c = group::irrep_counts(d)?;
        Ok((c.burnside_holds(), format!("one_dim={} d_dim={}", c.one_dim, c.d_dim)))
    })?;
    r.exact("characters_homomorphism", || {
        for m in 0..d {
            for n in 0..d {
                for g in &small {
                    for h in &sample {
                        if group::character(m, n, g.compose(*h)?)
                            != group::character(m, n, *g) * group::character(m, n, *h)
                        {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    })?;
    r.exact("irrep_homomorphism", || {
        for k in 1..d {
            for g in &sample {
                for h in &sample {
                    if group::irrep(k, g.compose(*h)?)? != group::irrep(k, *g)? * group::irrep(k, *h)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })?;
    r.detailed("irrep_character_norms", || {
        let mut ok = true;
        let mut norms = Vec::new();
        for k in 1..d {
            let norm = group::irrep_character_norm(d, k, cap)?;
            ok &= norm.sum == norm.order * gcd(k as u64, d as u64);
            norms.push(format!("{k}:{}", norm.sum / norm.order));
        }
        Ok((ok, norms.join(",")))
    })?;
    r.exact("irrep_rho1_irreducible", || {
        Ok(group::irrep_character_norm(d, 1, cap)?.is_one())
    })?;
    r.exact("bracket_commutator_correspondence", || {
        for g in &sample {
            for h in &sample {
                if !group::bracket_matches_commutator(*g, *h)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    r.exact("bracket_antisymmetry", || {
        for g in &sample {
            for h in &sample {
                if group::lie_bracket(*g, *h)? != -&group::lie_bracket(*h, *g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    r.exact("jacobi", || {
        for x in &small {
            for y in &small {
                for z in &small {
                    let (x, y, z) = (
                        group::FormalCombination::basis(*x),
                        group::FormalCombination::basis(*y),
                        group::FormalCombination::basis(*z),
                    );
                    let t1 = x.bracket(&y.bracket(&z)?)?;
                    let t2 = y.bracket(&z.bracket(&x)?)?;
                    let t3 = z.bracket(&x.bracket(&y)?)?;
                    if !(&(&t1 + &t2) + &t3).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })?;
    r.exact("noncentral_count_pattern", || {
        Ok(group::noncentral_count_pattern_holds(d))
    })?;
    Ok(r.checks)
}

fn monomial_sample(d: u32) -> Vec<MonomialOperator> {
    let n = d as i64;
    let stride = ((2 * n * n * n) / 48).max(1) as usize;
    (0..2 * n)
        .flat_map(|t| (0..n).flat_map(move |b| (0..n).map(move |c| MonomialOperator::new(d, t, b, c))))
        .step_by(stride)
        .collect()
}

fn weyl_suite(mut r: Runner, params: &SuiteParams) -> Result<Vec<Check>> {
    let d = params.dim();
    let (x, z) = weyl::weyl_pair(d)?;
    let q = MonomialOperator::identity(d).with_phase(Phase::q_pow(1, d));
    let sample = monomial_sample(d);
    let single = params.tolerance.min(1e-10);
    r.exact("weyl_commutation", || Ok(x * z == q * z * x))?;
    r.exact("cyclicity", || Ok(x.pow(d).is_identity() && z.pow(d).is_identity()))?;
    r.within_tol("monomial_vs_dense", single, || {
        let mut worst = 0.0f64;
        for u in &sample {
            for v in &sample {
                let dense = u.to_dense().matmul(&v.to_dense());
                worst = worst.max(dense.max_abs_diff(&(*u * *v).to_dense()));
            }
        }
        Ok(worst)
    })?;
    r.within_tol("unitarity", single, || {
        Ok(sample
            .iter()
            .map(|u| u.to_dense().unitarity_deviation())
            .fold(0.0, f64::max))
    })?;
    r.exact("trace_pairing", || {
        let n = d as i64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let w1 = MonomialOperator::w(d, a, b, c);
                    for (a2, b2, c2) in [(0, b, c), (1, b, c), (a, (b + 1) % n, c), (a, b, (c + 1) % n)] {
                        let w2 = MonomialOperator::w(d, a2, b2, c2);
                        let expected = if b2 == b && c2 == c {
                            MonomialTrace::Scaled {
                                multiplicity: d,
                                phase: Phase::q_pow(a2 - a, d),
                            }
                        } else {
                            MonomialTrace::Zero
                        };
                        if w1.trace_pairing(&w2)? != expected {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    })?;
    let grid = |f: &dyn Fn(f64, i64) -> Result<f64>| -> Result<f64> {
        let mut worst = 0.0f64;
        for rr in [0.0, 1.0] {
            for a in 0..d as i64 {
                worst = worst.max(f(rr, a)?);
            }
        }
        Ok(worst)
    };
    r.within("v_ra_cyclic", || {
        grid(&|rr, a| {
            let v = weyl::v_ra_matrix(d, rr, a)?;
            let phase = weyl::q_real((d as f64 - 1.0) / 2.0 * (a as f64 + rr) * d as f64, d);
            Ok(v.pow(d).max_abs_diff(&DenseMatrix::identity(d as usize).scale(phase)))
        })
    })?;
    r.within("v_ra_factorization", || {
        grid(&|rr, a| {
            let lhs = weyl::v_ra_matrix(d, rr, a)?;
            let rhs = weyl::v_ra_matrix(d, rr, 0)?.matmul(&z.pow(a as u32).to_dense());
            Ok(lhs.max_abs_diff(&rhs))
        })
    })?;
    r.within_tol("eigenvectors", single, || {
        grid(&|rr, a| {
            let v = weyl::v_ra_matrix(d, rr, a)?;
            let mut worst = 0.0f64;
            for alpha in 0..d {
                let phi = weyl::v_ra_eigenvector(d, rr, a, alpha)?;
                let lambda = weyl::v_ra_eigenvalue(d, rr, a, alpha);
                let vphi = v.apply(&phi);
                for (p, q) in vphi.iter().zip(&phi) {
                    worst = worst.max((p - q * lambda).norm());
                }
            }
            Ok(worst)
        })
    })?;
    r.exact("nondegenerate_spectrum", || {
        for rr in [0.0, 1.0] {
            for a in 0..d as i64 {
                let values: Vec<Complex64> = (0..d).map(|al| weyl::v_ra_eigenvalue(d, rr, a, al)).collect();
                for (i, u) in values.iter().enumerate() {
                    if values[i + 1..].iter().any(|w| (u - w).norm() < 1e-9) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })?;
    let f = weyl::fourier_matrix(d)?;
    r.within_tol("fourier_order_four", single, || {
        Ok(f.pow(4).max_abs_diff(&DenseMatrix::identity(d as usize)))
    })?;
    r.within_tol("fourier_conjugation", single, || {
        Ok(f.matmul(&x.to_dense()).matmul(&f.adjoint()).max_abs_diff(&z.to_dense()))
    })?;
    r.within("su2_commutation", || {
        grid(&|rr, a| {
            Ok(weyl::polar_su2_ops(d, rr, a)?
                .commutation_residuals()
                .into_iter()
                .fold(0.0, f64::max))
        })
    })?;
    r.within("su2_ladder", || {
        grid(&|rr, a| Ok(weyl::polar_su2_ops(d, rr, a)?.ladder_residual()))
    })?;
    let modes: Vec<(u32, u32)> = (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))).collect();
    r.exact("ffz_zv_exact", || {
        Ok(modes.iter().all(|&m| {
            modes.iter().all(|&n| {
                let w = weyl::wedge(m, n);
                let (fwd, bwd) = weyl::ffz_relative_phases(d, m, n, Ordering::ZV);
                fwd == Phase::new(w, d) && bwd == Phase::new(-w, d)
            })
        }))
    })?;
    r.within("ffz_zv", || {
        let mut worst = 0.0f64;
        for &m in &modes {
            for &n in &modes {
                worst = worst.max(weyl::ffz_residual(d, m, n, 0.0, 0, Ordering::ZV)?);
            }
        }
        Ok(worst)
    })?;
    r.within("ffz_vz_proportionality", || {
        let mut worst = 0.0f64;
        for &m in &modes {
            for &n in &modes {
                let (lambda, residual) = weyl::ffz_proportionality(d, m, n, 0.0, 0, Ordering::VZ)?;
                let modulus = 2.0 * (PI * weyl::wedge(m, n) as f64 / d as f64).sin().abs();
                worst = worst.max(residual).max((lambda.norm() - modulus).abs());
            }
        }
        Ok(worst)
    })?;
    Ok(r.checks)
}

/// `B_0a` for `a < d`, `B_d` for the computational basis.
pub fn basis_name(basis: &mub::OrthonormalBasis) -> String {
    match basis.label {
        mub::BasisLabel::Computational => format!("B_{}", basis.d),
        mub::BasisLabel::Hadamard { a } => format!("B_0{a}"),
        mub::BasisLabel::CartanClass { index } => format!("V_{index}"),
    }
}

fn mub_suite(mut r: Runner, params: &SuiteParams) -> Result<Vec<Check>> {
    let family_prime = match (params.p, params.d) {
        (Some(p), _) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            Some(p)
        }
        (None, d) => Some(d.unwrap_or(DEFAULT_D)).filter(|&d| is_prime(d)),
    };
    let d = params.d.or(params.p).unwrap_or(DEFAULT_D);
    let single = params.tolerance.min(1e-10);
    r.within_tol("eigen_relation", single, || {
        (0..d)
            .map(|a| mub::eigen_relation_residual(d, a))
            .try_fold(0.0, |w, x| Ok(f64::max(w, x?)))
    })?;
    r.within("hadamard_gram", || {
        (0..d)
            .map(|a| Ok(mub::hadamard_h_a(d, a)?.gram_residual()))
            .try_fold(0.0, |w, x: Result<f64>| Ok(f64::max(w, x?)))
    })?;
    r.within("hadamard_unit_modulus", || {
        (0..d)
            .map(|a| Ok(mub::hadamard_h_a(d, a)?.unit_modulus_deviation()))
            .try_fold(0.0, |w, x: Result<f64>| Ok(f64::max(w, x?)))
    })?;
    r.within("hadamard_conjugation", || {
        (0..d)
            .map(|a| Ok(mub::hadamard_h_a(d, a)?.conjugation_residual()))
            .try_fold(0.0, |w, x: Result<f64>| Ok(f64::max(w, x?)))
    })?;
    r.exact("hadamard_columns_match_basis", || {
        for a in 0..d {
            let h = mub::hadamard_h_a(d, a)?;
            let basis = mub::basis_b0a(d, a)?;
            let norm = 1.0 / (d as f64).sqrt();
            for alpha in 0..d as usize {
                for k in 0..d as usize {
                    if basis.vectors[alpha][k] != h.entries[k][alpha].to_complex() * norm {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })?;
    r.within_tol("fourier_hadamard_relation", single, || {
        mub::fourier_hadamard_clock_residual(d)
    })?;
    r.within("triple_unbiased", || {
        let triple = [
            mub::basis_b0a(d, 0)?,
            mub::basis_b0a(d, 1 % d)?,
            mub::computational_basis(d)?,
        ];
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in i + 1..3 {
                worst = worst.max(mub::unbiasedness(&triple[i], &triple[j])?);
            }
        }
        Ok(worst)
    })?;
    if let Some(p) = family_prime {
        let family = mub::mub_family(p)?;
        for b in &family {
            r.within(format!("orthonormal:{}", basis_name(b)), || {
                Ok(b.orthonormality_deviation())
            })?;
        }
        for (i, b1) in family.iter().enumerate() {
            for b2 in &family[i + 1..] {
                r.within(format!("unbiased:{}-{}", basis_name(b1), basis_name(b2)), || {
                    mub::unbiasedness(b1, b2)
                })?;
            }
        }
    }
    Ok(r.checks)
}

fn basis_suite(mut r: Runner, params: &SuiteParams) -> Result<Vec<Check>> {
    let d = params.dim();
    let mut all = basis::pauli_indices(d);
    all.insert(0, PauliIndex::new(d, 0, 0));
    let pairs = || all.iter().flat_map(|x| all.iter().map(move |y| (*x, *y)));
    r.within_tol("u_ab_unitary", 1e-12, || {
        Ok(all
            .iter()
            .map(|i| i.to_dense().unitarity_deviation())
            .fold(0.0, f64::max))
    })?;
    r.detailed("u_ab_determinant", || {
        let dets_one = all.iter().all(|i| i.operator().determinant().is_one());
        Ok((d.is_multiple_of(2) || dets_one, format!("special_unitary={dets_one}")))
    })?;
    r.exact("commutator_formula", || {
        for (x, y) in pairs() {
            for sign in [Sign::Minus, Sign::Plus] {
                let (c, z) = basis::pauli_commutator(x, y, sign)?;
                let (oracle, op) = x.operator().bracket(&y.operator(), sign)?;
                if op != z.operator() || c != oracle {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    r.within_tol("structure_closure_dense", 1e-12, || {
        let dense: Vec<DenseMatrix> = all.iter().map(|i| i.to_dense()).collect();
        let position = |i: PauliIndex| (i.a * d + i.b) as usize;
        let mut worst = 0.0f64;
        for (x, y) in pairs() {
            let (c, z) = basis::pauli_commutator(x, y, Sign::Minus)?;
            let lhs = dense[position(x)].commutator(&dense[position(y)]);
            worst = worst.max(lhs.max_abs_diff(&dense[position(z)].scale(c.to_complex())));
        }
        Ok(worst)
    })?;
    r.exact("structure_vanishing", || {
        Ok(pairs().all(|(x, y)| {
            let c = basis::pauli_commutator(x, y, Sign::Minus).expect("same d").0;
            c.is_zero() == (x.symplectic(y) == 0)
        }))
    })?;
    r.exact("structure_antisymmetry", || {
        Ok(pairs().all(|(x, y)| {
            let c = basis::pauli_commutator(x, y, Sign::Minus).expect("same d").0;
            let s = basis::pauli_commutator(y, x, Sign::Minus).expect("same d").0;
            c.first == s.second && c.second == s.first
        }))
    })?;
    r.exact("anticommutator_vanishing", || {
        Ok(pairs().all(|(x, y)| {
            let c = basis::pauli_commutator(x, y, Sign::Plus).expect("same d").0;
            c.is_zero() == (d.is_multiple_of(2) && x.symplectic(y) == d / 2)
        }))
    })?;
    r.within_tol("hs_orthogonality", 0.0, || basis::hs_orthogonality(d))?;
    r.detailed("gram_rank", || {
        let rank = basis::basis_gram_matrix(d)?.rank(1e-9);
        Ok((rank == (d * d) as usize, format!("rank={rank}")))
    })?;
    if is_prime(d) {
        let partition = basis::cartan_partition_prime(d)?;
        r.detailed("cartan_partition", || {
            let v = partition.validate(&basis::pauli_indices(d));
            Ok((
                v.is_valid(d as usize + 1, d as usize - 1),
                format!("classes={}", v.class_count),
            ))
        })?;
        if d <= basis::MAX_SEARCH_D {
            r.detailed("class_search", || {
                let s = basis::commuting_class_search(d)?;
                let mut found = s.partition.labels();
                let mut closed = partition.labels();
                for v in [&mut found, &mut closed] {
                    v.iter_mut().for_each(|c| c.sort());
                    v.sort();
                }
                Ok((s.complete && found == closed, format!("complete={}", s.complete)))
            })?;
        }
        r.within("joint_eigenbases_unbiased", || {
            let bases = basis::joint_eigenbases(&partition)?;
            let mut worst = 0.0f64;
            for (i, b) in bases.iter().enumerate() {
                worst = worst.max(b.orthonormality_deviation());
                for other in &bases[i + 1..] {
                    worst = worst.max(mub::unbiasedness(b, other)?);
                }
            }
            Ok(worst)
        })?;
    } else if d <= basis::MAX_SEARCH_D {
        r.detailed("class_search_incomplete", || {
            let s = basis::commuting_class_search(d)?;
            let v = s.partition.validate(&basis::pauli_indices(d));
            let ok = !s.complete && v.disjoint && v.commuting_exact;
            Ok((ok, format!("complete={} classes={}", s.complete, v.class_count)))
        })?;
        if d <= basis::MAX_PACKING_D {
            r.detailed("max_packing", || {
                let (best, candidates) = basis::max_commuting_packing(d)?;
                Ok((best < d as usize + 1, format!("max={best} candidates={candidates}")))
            })?;
        }
    }
    r.exact("su4_spread", || Ok(basis::su4_spread_check().passed()))?;
    if let (Some(p), Some(e)) = (params.p, params.e) {
        r.detailed("prime_power_partition", || {
            let partition = basis::cartan_partition_prime_power(p, e)?;
            let total = (p as usize).pow(e);
            let v = partition.validate(&basis::tensor_indices(&vec![p; e as usize])?);
            Ok((v.is_valid(total + 1, total - 1), format!("classes={}", v.class_count)))
        })?;
    }
    Ok(r.checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: Option<u32>, p: Option<u32>) -> SuiteParams {
        SuiteParams {
            d,
            p,
            ..SuiteParams::default()
        }
    }

    #[test]
    fn hw_suite_passes() {
        let report = run_suite(Suite::Hw, &SuiteParams::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn group_suite_reports_class_count() {
        let report = run_suite(Suite::Group, &params(Some(2), None)).unwrap();
        assert_eq!(
            report.check("class_count").unwrap().detail.as_deref(),
            Some("classes=5")
        );
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn composite_group_suite_fails_prime_formula() {
        let report = run_suite(Suite::Group, &params(Some(4), None)).unwrap();
        assert!(!report.check("class_count").unwrap().passed());
        assert!(report.check("class_count_gcd_formula").unwrap().passed());
        assert!(!report.passed());
    }

    #[test]
    fn all_suite_at_three() {
        let report = run_suite(Suite::All, &params(Some(3), None)).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.checks.iter().any(|c| c.name.starts_with("basis.")));
    }

    #[test]
    fn mub_family_checks() {
        let report = run_suite(Suite::Mub, &params(None, Some(5))).unwrap();
        let pairs = report.checks.iter().filter(|c| c.name.starts_with("unbiased:")).count();
        assert_eq!(pairs, 15);
        assert!(report.passed());
        assert!(run_suite(Suite::Mub, &params(None, Some(6))).is_err());
    }

    #[test]
    fn basis_suite_at_four() {
        let report = run_suite(Suite::Basis, &params(Some(4), None)).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(
            report.check("max_packing").unwrap().detail.as_deref(),
            Some("max=3 candidates=7")
        );
    }

    #[test]
    fn timing_only_on_request() {
        let report = run_suite(Suite::Hw, &SuiteParams::default()).unwrap();
        assert!(report.to_json(false).get("timing").is_none());
        assert!(report.to_json(true)["timing"]["checks"].is_object());
        let a = serde_json::to_string(&report.to_json(false)).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Hw, &SuiteParams::default()).unwrap().to_json(false)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn suite_names() {
        assert_eq!("weyl".parse::<Suite>().unwrap(), Suite::Weyl);
        assert!("nope".parse::<Suite>().is_err());
    }
}
