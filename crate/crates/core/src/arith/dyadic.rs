//! Arbitrary-precision binary floating point with explicit rounding.
//!
//! A [`Dyadic`] is `mant * 2^exp` with a `BigInt` mantissa. Addition,
//! subtraction and multiplication are exact; rounding only happens when a
//! caller asks for it, always in a stated direction. Interval arithmetic is
//! layered on top of this in [`super::interval`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

fn shift_floor(m: &BigUint, k: u64) -> BigUint {
    m >> k
}

fn shift_ceil(m: &BigUint, k: u64) -> BigUint {
    let q = m >> k;
    if (&q << k) == *m {
        q
    } else {
        q + 1u32
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: k,
        }
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite double");
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), e - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, ex)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Floor of log2 |self|; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, o: &Dyadic) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Self {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Dyadic::new(&self.mant * k, self.exp)
    }

    /// `self * 2^k`, exact.
    pub fn shl(&self, k: i64) -> Self {
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Exact midpoint of two dyadics.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Self {
        a.add(b).shl(-1)
    }

    /// Round to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let mag = self.mant.magnitude();
        let neg = self.mant.sign() == Sign::Minus;
        // Rounding the magnitude toward zero is "down" for positives, "up" for negatives.
        let toward_zero = matches!((dir, neg), (Round::Down, false) | (Round::Up, true));
        let m = if toward_zero {
            shift_floor(mag, k)
        } else {
            shift_ceil(mag, k)
        };
        let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, m);
        Dyadic::new(m, self.exp + k as i64)
    }

    /// Round so that the result is an integer multiple of `2^-frac_bits`.
    pub fn round_abs(&self, frac_bits: i64, dir: Round) -> Self {
        if self.exp >= -frac_bits {
            return self.clone();
        }
        let k = (-frac_bits - self.exp) as u64;
        let divisor = BigInt::one() << k;
        let q = match dir {
            Round::Down => self.mant.div_floor(&divisor),
            Round::Up => self.mant.div_ceil(&divisor),
        };
        Dyadic::new(q, -frac_bits)
    }

    /// `a / b` rounded to `prec` bits in direction `dir`. Panics on zero divisor.
    pub fn div(a: &Dyadic, b: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!b.is_zero(), "division by zero dyadic");
        if a.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient carries at least prec+2 bits.
        let shift = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0) as u64;
        let num = &a.mant << shift;
        let (q, r) = num.div_rem(&b.mant);
        let exact = r.is_zero();
        let negative = (a.mant.sign() == Sign::Minus) != (b.mant.sign() == Sign::Minus);
        // `div_rem` truncates toward zero.
        let q = if exact {
            q
        } else {
            match (dir, negative) {
                (Round::Down, true) => q - 1,
                (Round::Up, false) => q + 1,
                _ => q,
            }
        };
        Dyadic::new(q, a.exp - b.exp - shift as i64).round(prec, dir)
    }

    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        let n = Dyadic::from_bigint(q.numer().clone());
        let den = q.denom();
        if den.is_one() {
            return n;
        }
        // Exact when the denominator is a power of two.
        if den.bits() > 0 && (den & (den - BigInt::one())).is_zero() {
            let k = den.bits() as i64 - 1;
            return Dyadic::new(q.numer().clone(), -k);
        }
        Dyadic::div(&n, &Dyadic::from_bigint(den.clone()), prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish double; only for reporting and heuristics.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 60 {
            let k = bits - 60;
            (&self.mant >> k, self.exp + k as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        mf * 2f64.powi(e as i32)
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.is_zero()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes by leading bit position first.
        let la = self.log2_floor().unwrap();
        let lb = other.log2_floor().unwrap();
        let mag = if la != lb {
            la.cmp(&lb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.magnitude() << (self.exp - e) as u64;
            let b = other.mant.magnitude() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}
