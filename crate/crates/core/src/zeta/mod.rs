//! Shintani zeta sums over signed cones, and their assembly into Hecke
//! L-functions and ray-class partial zeta functions.
//!
//! Every returned value carries an absolute error bound covering both the
//! truncation of the series and floating-point rounding.

mod character;
mod euler;

pub use character::{CharacterTable, ClassResolver, ConductorOneResolver, ResolverRegistry, TableResolver};
pub use euler::{euler_product, euler_product_auto, euler_tail_log_bound};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::domain::SignedDomain;
use crate::error::{Error, Result};
use crate::field::{q_to_f64, FieldElement, NumberField};
use crate::ideals::{coset_enumerate_r, enumerate_r_sigma, FractionalIdeal, IntegralBasis};

const U: f64 = f64::EPSILON / 2.0;
/// Refuse single sums beyond this many terms rather than run for hours.
const MAX_TERMS: f64 = 4e9;

#[derive(Clone, Debug)]
pub struct ZetaParams {
    pub s: f64,
    pub target_error: f64,
    /// Largest simplex radius `M` any single Shintani sum may use.
    pub max_radius: u64,
}

impl ZetaParams {
    pub fn new(s: f64, target_error: f64) -> Self {
        ZetaParams {
            s,
            target_error,
            max_radius: 1 << 16,
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.s > 1.0) || !self.s.is_finite() {
            return Err(Error::InvalidInput("s must be a real number > 1".into()));
        }
        if !(self.target_error > 0.0) {
            return Err(Error::InvalidInput("target_error must be positive".into()));
        }
        Ok(())
    }
}

/// A truncated Shintani sum.
#[derive(Clone, Debug, PartialEq)]
pub struct ShintaniValue {
    pub value: f64,
    pub tail_bound: f64,
    pub rounding_bound: f64,
    pub terms: u64,
    pub radius: u64,
}

impl ShintaniValue {
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    pub error_bound: f64,
    pub terms: u64,
    /// Largest radius used by any constituent sum (or the prime cap for the Euler product).
    pub radius: u64,
}

/// Conjugates as `f64`, each within one rounding of the true value.
fn conjugates(field: &NumberField, a: &FieldElement) -> Result<Vec<f64>> {
    field.certify("conjugates", |p| {
        let v = field.enclose(a, p);
        let tight = v.iter().all(|i| !i.contains_zero() && i.width().shl(64) <= i.abs_lower());
        Ok(tight.then(|| v.iter().map(|i| i.mid_f64()).collect()))
    })
}

/// Bound on `Σ_{|m| > M} N(z + Σ m_i g_i)^{-s}` for `z = Σ t_i g_i`, `t_i ≥ 0`,
/// `g_i = scale·(unit)`.
///
/// The geometric mean is superadditive on `R^n_+`, so
/// `N(Σ c_i g_i) ≥ scale^n (Σ c_i)^n`. There are `C(k+n-1, n-1) ≤ K k^{n-1}`
/// exponent vectors with `|m| = k > M`, `K = (1 + (n-1)/(M+1))^{n-1}/(n-1)!`,
/// and `Σ_{k>M} k^{n-1-ns} ≤ M^{n-ns}/(ns-n)`.
pub fn simplex_tail_bound(n: usize, s: f64, scale: f64, radius: u64) -> f64 {
    if radius == 0 {
        return f64::INFINITY;
    }
    let nf = n as f64;
    let m = radius as f64;
    let fact: f64 = (1..n).map(|i| i as f64).product();
    let k = (1.0 + (nf - 1.0) / (m + 1.0)).powf(nf - 1.0) / fact;
    k * scale.powf(-nf * s) * m.powf(nf - nf * s) / (nf * s - nf)
}

fn simplex_terms(n: usize, radius: u64) -> f64 {
    // C(M + n, n)
    (1..=n).fold(1.0, |acc, i| acc * (radius as f64 + i as f64) / i as f64)
}

/// Smallest radius whose tail bound meets `target`.
fn choose_radius(n: usize, s: f64, scale: f64, target: f64, cap: u64) -> Result<u64> {
    let ok = |m: u64| simplex_tail_bound(n, s, scale, m) <= target;
    if !ok(cap) {
        return Err(Error::TailBoundUnachievable {
            bound: simplex_tail_bound(n, s, scale, cap),
            target,
            cap,
        });
    }
    let (mut lo, mut hi) = (0u64, cap);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

fn simplex_walk(z: &[f64], gens: &[Vec<f64>], s: f64, radius: u64, acc: &mut Sum, count: &mut u64) {
    let n = z.len();
    let mut y = z.to_vec();
    walk_level(0, radius, &mut y, gens, n, s, acc, count);
}

#[allow(clippy::too_many_arguments)]
fn walk_level(i: usize, left: u64, y: &mut Vec<f64>, gens: &[Vec<f64>], n: usize, s: f64, acc: &mut Sum, count: &mut u64) {
    if i + 1 == gens.len() {
        let base = y.clone();
        for m in 0..=left {
            let mf = m as f64;
            let mut prod = 1.0;
            for j in 0..n {
                prod *= base[j] + mf * gens[i][j];
            }
            acc.add(prod.powf(-s));
        }
        *count += left + 1;
        return;
    }
    let base = y.clone();
    for m in 0..=left {
        let mf = m as f64;
        for j in 0..n {
            y[j] = base[j] + mf * gens[i][j];
        }
        walk_level(i + 1, left - m, y, gens, n, s, acc, count);
    }
    y.copy_from_slice(&base);
}

/// `ζ(s, z) = Σ_{m ≥ 0} N(z + scale·Σ m_i f_i)^{-s}`, summed over the simplex
/// `|m| ≤ M` with `M` the smallest radius whose tail bound meets `target`.
///
/// `z` must have nonnegative coordinates in the generator basis (true for
/// every point of an R-set).
pub fn shintani_zeta(
    s: f64,
    z: &FieldElement,
    generators: &[FieldElement],
    scale: &BigInt,
    field: &NumberField,
    target: f64,
    max_radius: u64,
) -> Result<ShintaniValue> {
    if !field.is_totally_positive(z)? {
        return Err(Error::NotTotallyPositive);
    }
    let n = field.degree();
    let sc = scale.to_f64().unwrap_or(f64::INFINITY);
    let radius = choose_radius(n, s, sc, target, max_radius)?;
    if simplex_terms(n, radius) > MAX_TERMS {
        return Err(Error::TailBoundUnachievable {
            bound: simplex_tail_bound(n, s, sc, radius),
            target,
            cap: max_radius,
        });
    }
    shintani_zeta_at_radius(s, z, generators, scale, field, radius)
}

/// The same sum at a fixed radius.
pub fn shintani_zeta_at_radius(
    s: f64,
    z: &FieldElement,
    generators: &[FieldElement],
    scale: &BigInt,
    field: &NumberField,
    radius: u64,
) -> Result<ShintaniValue> {
    let n = field.degree();
    let zc = conjugates(field, z)?;
    if zc.iter().any(|&v| v <= 0.0) {
        return Err(Error::NotTotallyPositive);
    }
    let sq = crate::arith::rational::Q::from_integer(scale.clone());
    let gens = generators
        .iter()
        .map(|g| conjugates(field, &g.scale(&sq)))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = Sum::default();
    let mut count = 0u64;
    simplex_walk(&zc, &gens, s, radius, &mut acc, &mut count);
    let value = acc.value();
    // Per term: each y_j = z_j + Σ m_i g_ij is a sum of n+1 positive
    // quantities each within (1+u)^2, so relative error ≤ (n+2)u; the
    // product of n of them adds n-1 roundings; raising to -s multiplies the
    // relative error by s and powf adds at most a few ulps.
    let nf = n as f64;
    let rho = (s * (nf * nf + 3.0 * nf) + 8.0) * U;
    let rounding_bound = 1.01 * (rho + 2.0 * U + count as f64 * U * U) * value;
    Ok(ShintaniValue {
        value,
        tail_bound: simplex_tail_bound(n, s, scale.to_f64().unwrap_or(f64::INFINITY), radius),
        rounding_bound,
        terms: count,
        radius,
    })
}

/// One weighted Shintani contribution of an assembly.
struct Triple {
    weight: Complex64,
    cone: usize,
    z: FieldElement,
    scale: BigInt,
}

fn sum_triples(dom: &SignedDomain, triples: &[Triple], params: &ZetaParams) -> Result<ZetaValue> {
    let field = dom.field();
    let total_weight: f64 = triples.iter().map(|t| t.weight.norm()).sum();
    let budget = if total_weight > 0.0 {
        params.target_error / total_weight
    } else {
        f64::INFINITY
    };
    let pieces: Vec<Result<ShintaniValue>> = triples
        .par_iter()
        .map(|t| {
            let gens = &dom.cones()[t.cone].generators;
            // rounding is ~1e-14 relative; reserve 0.1% of the budget for it
            shintani_zeta(params.s, &t.z, gens, &t.scale, field, budget * 0.999, params.max_radius)
        })
        .collect();
    let mut value = Complex64::zero();
    let mut error_bound = 0.0;
    let mut terms = 0u64;
    let mut radius = 0u64;
    for (t, piece) in triples.iter().zip(pieces) {
        let v = piece?;
        value += t.weight * v.value;
        error_bound += t.weight.norm() * v.error_bound();
        terms += v.terms;
        radius = radius.max(v.radius);
    }
    // accumulation of the weighted sum itself
    error_bound += 2.0 * triples.len() as f64 * U * triples.iter().map(|t| t.weight.norm()).sum::<f64>() * value.norm().max(1.0);
    Ok(ZetaValue {
        value,
        error_bound,
        terms,
        radius,
    })
}

fn norm_power(ideal: &FractionalIdeal, s: f64) -> f64 {
    q_to_f64(&ideal.norm()).powf(-s)
}

/// `L(s, χ) = Σ_j N(a_j f)^{-s} Σ_σ w_σ Σ_{z ∈ R^σ(a_j f)} χ((z) a_j f) ζ^σ(s, z)`.
///
/// The units of `dom` must generate the totally positive units (caller contract).
pub fn l_function(
    dom: &SignedDomain,
    ib: &IntegralBasis,
    chi: &CharacterTable,
    resolver: &dyn ClassResolver,
    params: &ZetaParams,
) -> Result<ZetaValue> {
    params.check()?;
    let conductor = chi.conductor();
    let mut triples = Vec::new();
    for (j, rep) in chi.reps().iter().enumerate() {
        let af = rep.mul(conductor, ib);
        let pre = norm_power(&af, params.s);
        let lattice = af.inverse(ib)?;
        for (c, cone) in dom.cones().iter().enumerate() {
            let r = enumerate_r_sigma(cone, &lattice, ib)?;
            for p in r.points {
                let b = FractionalIdeal::principal(&p.z, ib)?.mul(&af, ib);
                let value = if b.is_coprime_to(conductor, ib) {
                    chi.values()[resolver.resolve(chi, j, &b, &p.z, ib)?]
                } else {
                    Complex64::zero()
                };
                if value == Complex64::zero() {
                    continue;
                }
                triples.push(Triple {
                    weight: value * (pre * cone.w as f64),
                    cone: c,
                    z: p.z,
                    scale: BigInt::one(),
                });
            }
        }
    }
    sum_triples(dom, &triples, params)
}

/// `ζ(s, [a]) = N a^{-s} Σ_σ w_σ Σ_{z ∈ R^σ_{f,a}} ζ^σ_f(s, z)` for the ray
/// class of the integral ideal `a` modulo `f∞`. The units of `dom` must
/// generate the totally positive units congruent to 1 mod `f`.
pub fn partial_zeta(
    dom: &SignedDomain,
    ib: &IntegralBasis,
    a: &FractionalIdeal,
    conductor: &FractionalIdeal,
    params: &ZetaParams,
) -> Result<ZetaValue> {
    params.check()?;
    if !a.is_integral() || !conductor.is_integral() {
        return Err(Error::InvalidInput("ray class representative and conductor must be integral".into()));
    }
    let field = dom.field();
    let f = conductor.smallest_integer(ib);
    for u in dom.units() {
        if !conductor.contains(&u.sub(&field.one()), ib) {
            return Err(Error::InvalidInput("unit is not congruent to 1 modulo the conductor".into()));
        }
    }
    let pre = norm_power(a, params.s);
    let lattice = a.inverse(ib)?.mul(conductor, ib);
    let mut triples = Vec::new();
    for (c, cone) in dom.cones().iter().enumerate() {
        let r = coset_enumerate_r(cone, &lattice, &field.one(), &f, ib)?;
        for p in r.points {
            triples.push(Triple {
                weight: Complex64::new(pre * cone.w as f64, 0.0),
                cone: c,
                z: p.z,
                scale: f.clone(),
            });
        }
    }
    sum_triples(dom, &triples, params)
}

/// What a Dedekind-zeta evaluator needs: the field with an integral basis,
/// generators of the totally positive units, and narrow class representatives.
pub struct DedekindJob<'a> {
    pub domain: &'a SignedDomain,
    pub basis: &'a IntegralBasis,
    pub reps: &'a [FractionalIdeal],
}

pub trait ZetaEvaluator: Send + Sync {
    fn name(&self) -> &'static str;
    fn dedekind(&self, job: &DedekindJob, params: &ZetaParams) -> Result<ZetaValue>;
}

/// Signed-domain evaluation: `ζ_k = L(s, 1)`, summed over the narrow classes.
pub struct ShintaniEvaluator;

impl ZetaEvaluator for ShintaniEvaluator {
    fn name(&self) -> &'static str {
        "shintani"
    }

    fn dedekind(&self, job: &DedekindJob, params: &ZetaParams) -> Result<ZetaValue> {
        let reps = if job.reps.is_empty() {
            vec![FractionalIdeal::unit(job.basis)]
        } else {
            job.reps.to_vec()
        };
        let chi = CharacterTable::trivial(reps, job.basis)?;
        l_function(job.domain, job.basis, &chi, &ConductorOneResolver, params)
    }
}

pub struct EulerEvaluator;

impl ZetaEvaluator for EulerEvaluator {
    fn name(&self) -> &'static str {
        "euler"
    }

    fn dedekind(&self, job: &DedekindJob, params: &ZetaParams) -> Result<ZetaValue> {
        params.check()?;
        euler_product_auto(params.s, job.domain.field(), params.target_error)
    }
}

#[derive(Clone)]
pub struct EvaluatorRegistry {
    evaluators: BTreeMap<&'static str, Arc<dyn ZetaEvaluator>>,
}

impl Default for EvaluatorRegistry {
    fn default() -> Self {
        let mut r = EvaluatorRegistry {
            evaluators: BTreeMap::new(),
        };
        r.register(Arc::new(ShintaniEvaluator));
        r.register(Arc::new(EulerEvaluator));
        r
    }
}

impl EvaluatorRegistry {
    pub fn register(&mut self, e: Arc<dyn ZetaEvaluator>) {
        self.evaluators.insert(e.name(), e);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn ZetaEvaluator>> {
        self.evaluators
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.evaluators.keys().copied().collect()
    }
}
