//! Closed intervals with dyadic endpoints and outward rounding.
//!
//! Every operation takes a working precision `prec` (mantissa bits) and
//! rounds the lower endpoint down and the upper endpoint up, so the true
//! value of any expression evaluated on contained inputs stays contained.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{Dyadic, Round};

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Interval::point(Dyadic::one())
    }

    pub fn from_int(v: i64) -> Self {
        Interval::point(Dyadic::from_int(v))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    /// Certified sign: `Some(+-1)` if the interval excludes zero, `Some(0)`
    /// for the exact point zero, `None` when undecided.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, o: &Interval, prec: u32) -> Self {
        Interval {
            lo: self.lo.add(&o.lo).round(prec, Round::Down),
            hi: self.hi.add(&o.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Interval, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Interval, prec: u32) -> Self {
        if self.is_point() && o.is_point() {
            let p = self.lo.mul(&o.lo);
            return Interval {
                lo: p.round(prec, Round::Down),
                hi: p.round(prec, Round::Up),
            };
        }
        // endpoint products by sign case: two products except when both straddle 0
        let (a, b) = (self, o);
        let pos = |i: &Interval| i.lo.signum() >= 0;
        let neg = |i: &Interval| i.hi.signum() <= 0;
        let (lo, hi) = if pos(a) {
            if pos(b) {
                (a.lo.mul(&b.lo), a.hi.mul(&b.hi))
            } else if neg(b) {
                (a.hi.mul(&b.lo), a.lo.mul(&b.hi))
            } else {
                (a.hi.mul(&b.lo), a.hi.mul(&b.hi))
            }
        } else if neg(a) {
            if pos(b) {
                (a.lo.mul(&b.hi), a.hi.mul(&b.lo))
            } else if neg(b) {
                (a.hi.mul(&b.hi), a.lo.mul(&b.lo))
            } else {
                (a.lo.mul(&b.hi), a.lo.mul(&b.lo))
            }
        } else if pos(b) {
            (a.lo.mul(&b.hi), a.hi.mul(&b.hi))
        } else if neg(b) {
            (a.hi.mul(&b.lo), a.lo.mul(&b.lo))
        } else {
            let l = a.lo.mul(&b.hi).min(a.hi.mul(&b.lo));
            let h = a.lo.mul(&b.lo).max(a.hi.mul(&b.hi));
            (l, h)
        };
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
        }
    }

    pub fn mul_rational(&self, q: &BigRational, prec: u32) -> Self {
        self.mul(&Interval::from_rational(q, prec), prec)
    }

    /// Quotient; `None` if the divisor interval contains zero.
    pub fn div(&self, o: &Interval, prec: u32) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        // 1/o as an interval, then multiply. Valid for either sign of o.
        let inv = Interval {
            lo: Dyadic::div(&Dyadic::one(), &o.hi, prec, Round::Down),
            hi: Dyadic::div(&Dyadic::one(), &o.lo, prec, Round::Up),
        };
        if self.is_point() && self.lo == Dyadic::one() {
            return Some(inv);
        }
        Some(self.mul(&inv, prec))
    }

    /// Integer power; negative exponents require an interval excluding zero.
    pub fn powi(&self, k: i64, prec: u32) -> Option<Self> {
        if k < 0 {
            return Interval::one().div(&self.powi(-k, prec)?, prec);
        }
        let mut result = Interval::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        // Even powers of an interval straddling zero are nonnegative.
        if k % 2 == 0 && self.contains_zero() && result.lo.signum() < 0 {
            result.lo = Dyadic::zero();
        }
        Some(result)
    }

    pub fn hull(&self, o: &Interval) -> Self {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// Natural log; `None` unless the interval is strictly positive.
    pub fn ln(&self, prec: u32) -> Option<Self> {
        if !self.is_positive() {
            return None;
        }
        let (lo, _) = ln_enclosure(&self.lo, prec);
        let (_, hi) = ln_enclosure(&self.hi, prec);
        Some(Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
        })
    }

    pub fn cmp_certified(&self, o: &Interval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if o.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.is_point() && o.is_point() && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Fixed-point `atanh(z)` for `|z| <= 1/5`, with `z = zn / 2^w`.
/// Returns the truncated sum and the number of series terms used.
fn atanh_fixed(zn: &BigInt, w: u64) -> (BigInt, u64) {
    // Work on |z| so every shift truncates toward zero and the loop ends.
    let negative = zn.sign() == num_bigint::Sign::Minus;
    let z = zn.magnitude().clone();
    let z2 = (&z * &z) >> w;
    let mut term = z.clone();
    let mut sum = z;
    let mut k: u64 = 0;
    loop {
        term = (&term * &z2) >> w;
        k += 1;
        if term.is_zero() {
            break;
        }
        sum += &term / num_bigint::BigUint::from(2 * k + 1);
    }
    let sum = BigInt::from(sum);
    (if negative { -sum } else { sum }, k)
}

/// Rigorous enclosure of `ln(x)` for dyadic `x > 0`.
///
/// Write `x = u 2^k` with `u` in `[3/4, 3/2)`, so that
/// `ln x = k ln 2 + 2 atanh((u-1)/(u+1))` with `|(u-1)/(u+1)| <= 1/5`.
/// Both series are summed in fixed point with `w` fraction bits; each
/// truncating operation is off by less than one unit, and the error budget
/// below counts every such operation with a safety factor of two.
fn ln_enclosure(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    assert!(x.signum() > 0);
    let w: u64 = prec as u64 + 24;
    let bits = x.bits() as i64;
    // u = mant / 2^(bits-1) in [1, 2).
    let mut k = x.exponent() + bits - 1;
    let one = BigInt::one() << w;
    let shift = w as i64 - (bits - 1);
    let mut u = if shift >= 0 {
        x.mantissa() << shift as u64
    } else {
        x.mantissa() >> (-shift) as u64
    };
    // Move u into [3/4, 3/2).
    let three_halves = (&one * 3u32) >> 1u32;
    if u >= three_halves {
        u >>= 1u32;
        k += 1;
    }
    let zn = ((&u - &one) << w) / (&u + &one);
    let (s, terms) = atanh_fixed(&zn, w);
    let third = &one / BigInt::from(3);
    let (ln2_half, terms2) = atanh_fixed(&third, w);
    let ln2 = ln2_half << 1u32;
    let center = BigInt::from(k) * &ln2 + (s << 1u32);
    let err_ln_u = 2 * (4 + 3 * terms + 4);
    let err_ln2 = 2 * (4 + 3 * terms2 + 4);
    let err = BigInt::from(err_ln_u + 8) + BigInt::from(k.unsigned_abs()) * BigInt::from(err_ln2);
    let lo = Dyadic::new(&center - &err, -(w as i64));
    let hi = Dyadic::new(&center + &err, -(w as i64));
    (lo, hi)
}

impl Interval {
    /// max(|lo|, |hi|)
    pub fn abs_max(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            Interval {
                lo: Dyadic::zero(),
                hi: self.abs_max(),
            }
        }
    }

    /// True when the interval has relative width at most `2^-bits`
    /// (absolute when it straddles zero).
    pub fn is_tight(&self, bits: u32) -> bool {
        let w = self.width();
        if w.is_zero() {
            return true;
        }
        let scale = self.abs_max();
        match (w.log2_floor(), scale.log2_floor()) {
            (Some(lw), Some(ls)) => lw + bits as i64 <= ls,
            _ => true,
        }
    }

    pub fn contains_integer(&self) -> Option<BigInt> {
        let lo = self.lo.to_rational().ceil().to_integer();
        let hi = self.hi.to_rational().floor().to_integer();
        if lo <= hi {
            Some(lo)
        } else {
            None
        }
    }

    pub fn abs_lower(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else if self.lo.signum() > 0 {
            self.lo.clone()
        } else {
            self.hi.abs()
        }
    }
}
