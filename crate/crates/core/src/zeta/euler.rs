//! Independent oracle: the Euler product of the Dedekind zeta function, with
//! prime splitting read off from the defining polynomial mod p.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::ZetaValue;
use crate::arith::modp;
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::ideals::power_basis_maximal_at;

const U: f64 = f64::EPSILON / 2.0;

/// Upper bound on `log Π_{p > P} Π_{𝔭|p} (1 - N𝔭^{-s})^{-1}`.
///
/// At most `n` primes lie over `p`, each of norm `≥ p`, so the log is at most
/// `n/(1 - P^{-s}) Σ_{p>P} p^{-s}`; with `π(x) ≤ 1.25506 x / ln x`, partial
/// summation gives `Σ_{p>P} p^{-s} ≤ 1.25506 s P^{1-s} / ((s-1) ln P)`.
pub fn euler_tail_log_bound(n: usize, s: f64, prime_cap: u64) -> f64 {
    let p = prime_cap as f64;
    n as f64 / (1.0 - p.powf(-s)) * 1.25506 * s * p.powf(1.0 - s) / ((s - 1.0) * p.ln())
}

/// `Π_{p ≤ P}` of the local factors, as a midpoint with a certified half-width.
pub fn euler_product(s: f64, field: &NumberField, prime_cap: u64) -> Result<ZetaValue> {
    if !(s > 1.0) {
        return Err(Error::InvalidInput("s must be a real number > 1".into()));
    }
    if prime_cap < 2 {
        return Err(Error::InvalidInput("prime cap must be at least 2".into()));
    }
    let n = field.degree();
    let disc = field.discriminant().to_integer();
    let mut prod = 1.0f64;
    let mut factors = 0u64;
    for p in modp::primes_up_to(prime_cap) {
        let p2 = BigInt::from(p * p);
        if (&disc % &p2).is_zero() && !power_basis_maximal_at(field, p) {
            return Err(Error::NonMonogenicPrime(p));
        }
        let fp = modp::reduce(field.poly(), p);
        let degrees: Vec<u32> = if (&disc % p).is_zero() {
            modp::factor_degrees(&fp, p).into_iter().map(|(d, _)| d).collect()
        } else {
            modp::distinct_degree_degrees(&fp, p)
        };
        for deg in degrees {
            let q = (p as f64).powi(deg as i32);
            prod /= 1.0 - q.powf(-s);
            factors += 1;
        }
    }
    // powf, subtraction, division: at most 4 roundings per local factor
    let rel_round = 4.0 * factors as f64 * U * 1.01;
    let b = euler_tail_log_bound(n, s, prime_cap);
    let hi = prod * (1.0 + rel_round) * b.exp();
    let lo = prod * (1.0 - rel_round);
    Ok(ZetaValue {
        value: Complex64::new((hi + lo) / 2.0, 0.0),
        error_bound: (hi - lo) / 2.0,
        terms: factors,
        radius: prime_cap,
    })
}

/// Euler product with a doubling prime cap (from 1024) whose bound meets `target`.
pub fn euler_product_auto(s: f64, field: &NumberField, target: f64) -> Result<ZetaValue> {
    const CAP: u64 = 1 << 27;
    let n = field.degree();
    let mut p = 1024u64;
    // a coarse run bounds the value, hence the half-width E (e^B - 1)/2
    let coarse = euler_product(s, field, p)?;
    let upper = coarse.value.re + coarse.error_bound;
    let half_width = |p: u64| upper * euler_tail_log_bound(n, s, p).exp_m1() / 2.0;
    while half_width(p) > 0.9 * target {
        p *= 2;
        if p > CAP {
            return Err(Error::TailBoundUnachievable {
                bound: half_width(CAP),
                target,
                cap: CAP,
            });
        }
    }
    if p == 1024 {
        return Ok(coarse);
    }
    euler_product(s, field, p)
}
