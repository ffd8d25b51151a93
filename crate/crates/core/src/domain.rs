//! Signed cones `(C_σ, w_σ)` built from a unit system, and the orbit
//! counting that certifies them as a signed fundamental domain.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::arith::linalg;
use crate::arith::rational::{sign_of, Q};
use crate::arith::{Dyadic, Interval};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::geometry::{Point, Simplex};
use crate::membership::{CoordinateMembership, MembershipStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    /// coefficient `>= 0`, interval `[0, 1)`; `e_n` on the positive side
    Closed,
    /// coefficient `> 0`, interval `(0, 1]`
    Open,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Closed => "closed",
            Flag::Open => "open",
        }
    }

    /// Whether a coefficient of the given sign is admissible.
    pub fn admits(&self, sign: i32) -> bool {
        match self {
            Flag::Closed => sign >= 0,
            Flag::Open => sign > 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignedCone {
    /// 0-based permutation of the unit indices.
    pub sigma: Vec<usize>,
    pub generators: Vec<FieldElement>,
    pub w: i32,
    pub flags: Vec<Flag>,
    /// Trace-dual basis: `Tr(dual_i · f_k) = δ_ik`, so `c_i(x) = Tr(dual_i x)`.
    pub dual: Vec<FieldElement>,
    pub simplex: Simplex,
    /// `[ln min_i ℓ(f_i)_j, ln max_i ℓ(f_i)_j]` for each projected coordinate.
    log_box: Vec<(f64, f64)>,
}

impl SignedCone {
    /// Exact coordinates of a field element in the generator basis.
    pub fn coordinates_exact(&self, x: &FieldElement, field: &NumberField) -> Vec<Q> {
        let t = field.trace_form();
        self.dual
            .iter()
            .map(|d| {
                let mut acc = Q::zero();
                for (a, da) in d.coords().iter().enumerate() {
                    if da.is_zero() {
                        continue;
                    }
                    for (b, xb) in x.coords().iter().enumerate() {
                        if !xb.is_zero() {
                            acc += da * xb * &t[a][b];
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Half-open membership decided from the dual basis.
    pub fn contains(&self, x: &Point, field: &NumberField) -> Result<bool> {
        match x {
            Point::Field(e) => {
                let c = self.coordinates_exact(e, field);
                Ok(c.iter().zip(&self.flags).all(|(ci, f)| f.admits(sign_of(ci))))
            }
            Point::Scaled { scale, base } => {
                let n = field.degree();
                let r = field.certify("cone membership", |p| {
                    let s = field.enclose(scale, p);
                    let y: Vec<Interval> = s
                        .iter()
                        .zip(base)
                        .map(|(si, b)| si.mul_rational(b, p))
                        .collect();
                    let mut undecided = false;
                    for (d, flag) in self.dual.iter().zip(&self.flags) {
                        let dv = field.enclose(d, p);
                        let mut c = Interval::zero();
                        for j in 0..n {
                            c = c.add(&dv[j].mul(&y[j], p), p);
                        }
                        match c.sign() {
                            Some(sg) if !flag.admits(sg) => return Ok(Some(false)),
                            Some(_) => {}
                            None => undecided = true,
                        }
                    }
                    Ok((!undecided).then_some(true))
                });
                r.map_err(|e| match e {
                    Error::PrecisionCapExceeded { .. } => Error::UndecidableSign("cone membership"),
                    other => other,
                })
            }
        }
    }
}

/// `f_1 = 1`, `f_i = ε_{σ(1)} ⋯ ε_{σ(i-1)}`.
pub fn colmez_generators(units: &[FieldElement], sigma: &[usize], field: &NumberField) -> Vec<FieldElement> {
    let mut gens = vec![field.one()];
    for &s in sigma {
        let next = field.mul(gens.last().unwrap(), &units[s]);
        gens.push(next);
    }
    gens
}

fn sign_from(reg_sign: i32, sigma: &[usize], gens: &[FieldElement], field: &NumberField) -> i32 {
    let n = field.degree();
    let parity = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    parity * linalg::permutation_sign(sigma) * field.conjugate_det_sign(gens) * reg_sign
}

/// `w_σ = (-1)^{n-1} sgn(σ) · sign det(f_σ) / sign det(Log ε)`.
pub fn cone_sign(units: &[FieldElement], sigma: &[usize], field: &NumberField) -> Result<i32> {
    let reg = field.signed_regulator_sign(units)?;
    if reg == 0 {
        return Err(Error::DependentUnits);
    }
    let gens = colmez_generators(units, sigma, field);
    Ok(sign_from(reg, sigma, &gens, field))
}

/// Sign of `det(τ_j(f_i))` certified from interval enclosures only; used to
/// cross-check the exact factorization route.
pub fn conjugate_det_sign_numeric(gens: &[FieldElement], field: &NumberField) -> Result<i32> {
    field.certify("generator determinant", |p| {
        let cols: Vec<Vec<Interval>> = gens.iter().map(|g| field.enclose(g, p)).collect();
        Ok(linalg::interval_det(&linalg::transpose(&cols), p).sign().filter(|&s| s != 0))
    })
}

/// Trace-dual basis of `basis`.
pub fn dual_basis(basis: &[FieldElement], field: &NumberField) -> Result<Vec<FieldElement>> {
    let n = field.degree();
    let c: Vec<Vec<Q>> = (0..n)
        .map(|k| basis.iter().map(|b| b.coords()[k].clone()).collect())
        .collect();
    // D^T (T C) = I
    let tc = linalg::mat_mul(field.trace_form(), &c);
    let inv = linalg::inverse(&tc).ok_or(Error::DependentBasis)?;
    // row i of inv is the coordinate vector of dual_i
    Ok(inv.into_iter().map(FieldElement::from_coords).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub cone: usize,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCount {
    pub net: i64,
    pub hits: Vec<Hit>,
}

#[derive(Clone, Debug)]
pub struct SignedDomain {
    field: NumberField,
    units: Vec<FieldElement>,
    inverses: Vec<FieldElement>,
    cones: Vec<SignedCone>,
    regulator_sign: i32,
    /// Columns `LOG ℓ(ε_k)` (floating point; enumeration bounds only).
    log_lattice: Vec<Vec<f64>>,
    log_lattice_inv: Vec<Vec<f64>>,
}

fn invert_f64(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c] == 0.0 {
            return None;
        }
        a.swap(p, c);
        let piv = a[c][c];
        a[c].iter_mut().for_each(|v| *v /= piv);
        for i in 0..n {
            if i != c {
                let f = a[i][c];
                for j in 0..2 * n {
                    a[i][j] -= f * a[c][j];
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl SignedDomain {
    pub fn build(units: &[FieldElement], field: &NumberField) -> Result<SignedDomain> {
        let n = field.degree();
        if units.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                got: units.len(),
            });
        }
        for u in units {
            if u.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: u.len(),
                });
            }
            if !field.is_unit(u)? {
                return Err(Error::NotAUnit);
            }
            if !field.is_totally_positive(u)? {
                return Err(Error::NotTotallyPositive);
            }
        }
        let reg = field.signed_regulator_sign(units)?;
        if reg == 0 {
            return Err(Error::DependentUnits);
        }
        let mut cones = Vec::new();
        for (sigma, _) in linalg::permutations(n - 1) {
            let gens = colmez_generators(units, &sigma, field);
            let w = sign_from(reg, &sigma, &gens, field);
            if w == 0 {
                continue;
            }
            let dual = dual_basis(&gens, field)?;
            // c_i(e_n) = τ_n(dual_i), nonzero since e_n is off every face span
            let flags = dual
                .iter()
                .map(|d| {
                    let s = field.signs(d)?;
                    Ok(if s[n - 1] > 0 { Flag::Closed } else { Flag::Open })
                })
                .collect::<Result<Vec<_>>>()?;
            let simplex = Simplex::from_generators(&gens, field)?;
            let ells: Vec<Vec<f64>> = gens
                .iter()
                .map(|g| {
                    let c = field.conjugates_f64(g);
                    c[..n - 1].iter().map(|v| (v / c[n - 1]).ln()).collect()
                })
                .collect();
            let log_box = (0..n - 1)
                .map(|j| {
                    let lo = ells.iter().map(|e| e[j]).fold(f64::INFINITY, f64::min);
                    let hi = ells.iter().map(|e| e[j]).fold(f64::NEG_INFINITY, f64::max);
                    (lo, hi)
                })
                .collect();
            cones.push(SignedCone {
                sigma,
                generators: gens,
                w,
                flags,
                dual,
                simplex,
                log_box,
            });
        }
        let cols: Vec<Vec<f64>> = units
            .iter()
            .map(|u| {
                let c = field.conjugates_f64(u);
                c[..n - 1].iter().map(|v| v.ln() - c[n - 1].ln()).collect()
            })
            .collect();
        let log_lattice = linalg::transpose(&cols);
        let log_lattice_inv = invert_f64(&log_lattice).ok_or(Error::DependentUnits)?;
        Ok(SignedDomain {
            field: field.clone(),
            units: units.to_vec(),
            inverses: units.iter().map(|u| field.inv(u)).collect::<Result<_>>()?,
            cones,
            regulator_sign: reg,
            log_lattice,
            log_lattice_inv,
        })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn units(&self) -> &[FieldElement] {
        &self.units
    }

    pub fn cones(&self) -> &[SignedCone] {
        &self.cones
    }

    pub fn regulator_sign(&self) -> i32 {
        self.regulator_sign
    }

    pub fn log_lattice(&self) -> &[Vec<f64>] {
        &self.log_lattice
    }

    /// Copy with one cone's weight negated; for sensitivity checks.
    pub fn with_weight_flipped(&self, cone: usize) -> SignedDomain {
        let mut d = self.clone();
        d.cones[cone].w = -d.cones[cone].w;
        d
    }

    /// No cone carries weight -1.
    pub fn is_true_domain(&self) -> bool {
        self.cones.iter().all(|c| c.w == 1)
    }

    pub fn cone_contains(&self, cone: usize, x: &Point) -> Result<bool> {
        self.cones[cone].contains(x, &self.field)
    }

    /// `Π ε_k^{a_k}`.
    pub fn unit_power(&self, a: &[i64]) -> Result<FieldElement> {
        let mut prod = self.field.one();
        for ((u, ui), &e) in self.units.iter().zip(&self.inverses).zip(a) {
            if e > 0 {
                prod = self.field.mul(&prod, &self.field.pow(u, e)?);
            } else if e < 0 {
                prod = self.field.mul(&prod, &self.field.pow(ui, -e)?);
            }
        }
        Ok(prod)
    }

    /// Exponent vectors `a` for which `ε^a·x` can lie in the closed cone:
    /// `LOG ℓ(ε^a x)` must fall in the log-box of the cone's vertices.
    pub fn candidate_exponents(&self, cone: usize, x: &Point) -> Result<Vec<Vec<i64>>> {
        let n = self.field.degree();
        let xf = x.to_f64(&self.field);
        if xf.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::InvalidInput("point must be strictly positive".into()));
        }
        let u: Vec<f64> = (0..n - 1).map(|j| (xf[j] / xf[n - 1]).ln()).collect();
        let bx = &self.cones[cone].log_box;
        let inv = &self.log_lattice_inv;
        let mut ranges = Vec::with_capacity(n - 1);
        for row in inv.iter() {
            let (mut lo, mut hi) = (0.0, 0.0);
            for j in 0..n - 1 {
                let a = row[j] * (bx[j].0 - u[j]);
                let b = row[j] * (bx[j].1 - u[j]);
                lo += a.min(b);
                hi += a.max(b);
            }
            let slack = 1e-6 * (1.0 + lo.abs() + hi.abs());
            ranges.push(((lo - slack).ceil() as i64, (hi + slack).floor() as i64));
        }
        let mut out = Vec::new();
        if ranges.iter().any(|(l, h)| l > h) {
            return Ok(out);
        }
        let lat = &self.log_lattice;
        // LOG ℓ(ε^a x) = L a + u must land in the box (with float slack)
        let in_box = |a: &[i64]| {
            (0..n - 1).all(|j| {
                let v: f64 = u[j] + (0..n - 1).map(|k| lat[j][k] * a[k] as f64).sum::<f64>();
                let slack = 1e-7 * (1.0 + v.abs());
                v >= bx[j].0 - slack && v <= bx[j].1 + slack
            })
        };
        let mut a: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            if in_box(&a) {
                out.push(a.clone());
            }
            let mut i = n - 2;
            loop {
                if a[i] < ranges[i].1 {
                    a[i] += 1;
                    break;
                }
                a[i] = ranges[i].0;
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
            }
        }
    }

    /// `Σ_σ w_σ #(C_σ ∩ V·x)` with the hits that realise it.
    pub fn orbit_net_count(&self, x: &Point) -> Result<OrbitCount> {
        self.orbit_net_count_with(&CoordinateMembership, x)
    }

    pub fn orbit_net_count_with(&self, strategy: &dyn MembershipStrategy, x: &Point) -> Result<OrbitCount> {
        let mut hits = Vec::new();
        let mut net = 0i64;
        for ci in 0..self.cones.len() {
            let cone = &self.cones[ci];
            for a in self.candidate_exponents(ci, x)? {
                let y = x.times(&self.field, &self.unit_power(&a)?);
                if strategy.contains(self, ci, &y)? {
                    net += cone.w as i64;
                    hits.push(Hit { cone: ci, exponents: a });
                }
            }
        }
        Ok(OrbitCount { net, hits })
    }
}

/// A strictly positive rational point with log-uniform coordinates in `[e^-3, e^3]`.
pub fn random_point<R: Rng + ?Sized>(field: &NumberField, rng: &mut R) -> Point {
    let base = (0..field.degree())
        .map(|_| Dyadic::from_f64(rng.gen_range(-3.0f64..3.0).exp()).to_rational())
        .collect();
    Point::rational(field, base)
}

/// Outcome of a batch net-count run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub samples: usize,
    pub failures: Vec<(usize, i64)>,
    pub resampled: usize,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Net count on `samples` seeded random points; each sample index has its
/// own RNG stream, so results are independent of thread scheduling.
/// Points whose membership cannot be certified are redrawn.
pub fn verify_net_count(dom: &SignedDomain, samples: usize, seed: u64) -> Result<VerifyReport> {
    verify_net_count_with(dom, &CoordinateMembership, samples, seed)
}

pub fn verify_net_count_with(
    dom: &SignedDomain,
    strategy: &dyn MembershipStrategy,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let results: Vec<Result<(i64, usize)>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let mut redraws = 0;
            loop {
                let x = random_point(dom.field(), &mut rng);
                match dom.orbit_net_count_with(strategy, &x) {
                    Ok(c) => return Ok((c.net, redraws)),
                    Err(e) if e.is_precision() && redraws < 8 => redraws += 1,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect();
    let mut report = VerifyReport {
        samples,
        failures: vec![],
        resampled: 0,
    };
    for (i, r) in results.into_iter().enumerate() {
        let (net, redraws) = r?;
        report.resampled += redraws;
        if net != 1 {
            report.failures.push((i, net));
        }
    }
    Ok(report)
}

pub fn sample_rng(seed: u64, index: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

pub type SharedDomain = Arc<SignedDomain>;
