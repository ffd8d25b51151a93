//! Dense univariate polynomials over Q and Z, Sturm sequences and real
//! root isolation.
//!
//! Coefficients are stored low degree first: `c[0] + c[1] x + ...`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::rational::{gcd_all, lcm_of_denominators, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Q>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        RatPoly::new(c.iter().map(|v| BigRational::from_integer(v.clone())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &RatPoly) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = Q::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, o: &RatPoly) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, k: &Q) -> Self {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        r.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> RatPoly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => RatPoly::zero(),
        }
    }

    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Scale by a positive rational so the coefficients are coprime integers.
    pub fn primitive_part(&self) -> IntPoly {
        let den = lcm_of_denominators(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = gcd_all(ints.iter());
        let g = if g.is_zero() { BigInt::one() } else { g.abs() };
        IntPoly::new(ints.into_iter().map(|c| c / &g).collect())
    }
}

/// Integer polynomial, used for exact sign evaluation at dyadic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_ints(&self.coeffs)
    }

    /// Exact value at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        self.coeffs.iter().rev().fold(Dyadic::zero(), |acc, c| {
            acc.mul(x).add(&Dyadic::from_bigint(c.clone()))
        })
    }

    pub fn sign_at(&self, x: &Dyadic) -> i32 {
        self.eval_dyadic(x).signum()
    }

    /// Sign as x -> +infinity or -infinity.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        match self.coeffs.last() {
            None => 0,
            Some(l) => {
                let s = if l.is_positive() { 1 } else { -1 };
                let d = self.coeffs.len() - 1;
                if positive || d.is_multiple_of(2) {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

/// Sturm sequence of a squarefree polynomial, each term made primitive.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &RatPoly) -> Self {
        let mut seq = vec![p.primitive_part()];
        let mut a = p.clone();
        let mut b = p.derivative();
        while !b.is_zero() {
            seq.push(b.primitive_part());
            // Primitive scaling multiplies by a positive constant, preserving signs.
            let r = a.rem(&b).neg();
            a = b;
            b = r;
        }
        SturmSequence { seq }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Dyadic) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// An isolating interval: exactly one root in `(lo, hi]`; when `lo == hi`
/// the root is exactly that dyadic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

/// Isolate all real roots of a squarefree polynomial, sorted ascending.
pub fn isolate_real_roots(p: &RatPoly) -> Vec<RootBracket> {
    let prim = p.primitive_part();
    let sturm = SturmSequence::new(p);
    // Cauchy bound 1 + max |c_i / c_n| rounded up to a power of two.
    let lead = prim.coeffs().last().unwrap().abs();
    let mut bound = BigInt::one();
    for c in prim.coeffs() {
        let r = c.abs() / &lead + 1i32;
        if r > bound {
            bound = r;
        }
    }
    let k = bound.bits() as i64 + 1;
    let mut out = Vec::new();
    let mut stack = vec![(Dyadic::pow2(k).neg(), Dyadic::pow2(k))];
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count_in(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootBracket { lo: a, hi: b });
            continue;
        }
        let m = Dyadic::midpoint(&a, &b);
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    // Exact dyadic roots sit at the right end of their bracket.
    for r in out.iter_mut() {
        if prim.sign_at(&r.hi) == 0 {
            r.lo = r.hi.clone();
        }
    }
    out.sort_by(|x, y| x.hi.cmp(&y.hi));
    out
}

/// Bisect an isolating bracket of a simple root until its width is at most
/// `2^-bits`.
pub fn refine_bracket(p: &IntPoly, br: &RootBracket, bits: i64) -> RootBracket {
    let mut lo = br.lo.clone();
    let mut hi = br.hi.clone();
    if lo == hi {
        return br.clone();
    }
    let target = Dyadic::pow2(-bits);
    let s_hi = p.sign_at(&hi);
    if s_hi == 0 {
        return RootBracket { lo: hi.clone(), hi };
    }
    while hi.sub(&lo) > target {
        let m = Dyadic::midpoint(&lo, &hi);
        let s = p.sign_at(&m);
        if s == 0 {
            return RootBracket { lo: m.clone(), hi: m };
        }
        if s == s_hi {
            hi = m;
        } else {
            lo = m;
        }
    }
    RootBracket { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    fn poly(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&v| q(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = poly(&[-1, 0, 1]); // x^2 - 1
        let b = poly(&[1, 1]); // x + 1
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, poly(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&poly(&[-1, 1])), poly(&[-1, 1]));
        assert_eq!(poly(&[-2, 0, 1]).gcd(&poly(&[0, 2])), poly(&[1]));
    }

    #[test]
    fn sturm_counts_real_roots() {
        // x^3 - 3x - 1: three real roots
        assert_eq!(SturmSequence::new(&poly(&[-1, -3, 0, 1])).real_root_count(), 3);
        // x^2 + 1: none
        assert_eq!(SturmSequence::new(&poly(&[1, 0, 1])).real_root_count(), 0);
        // x^3 - 2: one
        assert_eq!(SturmSequence::new(&poly(&[-2, 0, 0, 1])).real_root_count(), 1);
    }

    #[test]
    fn isolation_matches_bisection_oracle() {
        // Oracle: sign changes of f on a fine uniform grid.
        let f = |x: f64| x * x * x - 3.0 * x - 1.0;
        let mut grid_roots = Vec::new();
        let mut x = -3.0;
        while x < 3.0 {
            if f(x) * f(x + 1e-3) < 0.0 {
                grid_roots.push(x);
            }
            x += 1e-3;
        }
        let p = poly(&[-1, -3, 0, 1]);
        let brs = isolate_real_roots(&p);
        assert_eq!(brs.len(), grid_roots.len());
        let ip = p.primitive_part();
        for (br, g) in brs.iter().zip(&grid_roots) {
            let r = refine_bracket(&ip, br, 40);
            assert!((r.lo.to_f64() - g).abs() < 2e-3);
        }
        let expected = [-1.532088886, -0.347296355, 1.879385242];
        for (br, e) in brs.iter().zip(expected) {
            let r = refine_bracket(&ip, br, 40);
            assert!((r.hi.to_f64() - e).abs() < 1e-8);
        }
    }

    #[test]
    fn exact_dyadic_root_detected() {
        // (x - 1/2)(x + 3) = x^2 + 5/2 x - 3/2
        let p = RatPoly::new(vec![
            BigRational::new((-3).into(), 2.into()),
            BigRational::new(5.into(), 2.into()),
            q(1),
        ]);
        let brs = isolate_real_roots(&p);
        assert_eq!(brs.len(), 2);
        let half = refine_bracket(&p.primitive_part(), &brs[1], 30);
        assert!(half.lo.to_f64() <= 0.5 && 0.5 <= half.hi.to_f64());
    }
}
