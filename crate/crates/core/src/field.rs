//! Totally real number fields `Q[x]/(f)`, exact element arithmetic, and
//! certified real embeddings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::linalg::{self, QMat};
use crate::arith::poly::{isolate_real_roots, refine_bracket, IntPoly, RatPoly, RootBracket, SturmSequence};
use crate::arith::rational::{sign_of, Q};
use crate::arith::Interval;
use crate::error::{Error, Result};

pub const START_PRECISION: u32 = 64;
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// Element of the field, as rational coordinates in the power basis
/// `1, θ, …, θ^{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    c: Vec<Q>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FieldElement {
    pub fn from_coords(c: Vec<Q>) -> Self {
        FieldElement { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        FieldElement {
            c: c.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        }
    }

    pub fn coords(&self) -> &[Q] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    /// The rational number this element equals, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.c[1..].iter().all(|v| v.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &FieldElement) -> FieldElement {
        FieldElement {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &FieldElement) -> FieldElement {
        FieldElement {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> FieldElement {
        FieldElement {
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }
}

/// Conjugate vector `(τ_1(x), …, τ_n(x))` as intervals at a stated precision.
#[derive(Clone, Debug)]
pub struct EmbeddedVector {
    pub precision: u32,
    pub coords: Vec<Interval>,
}

impl EmbeddedVector {
    pub fn max_width(&self) -> f64 {
        self.coords
            .iter()
            .map(|i| i.width().to_f64())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug)]
struct RootCache {
    brackets: Vec<RootBracket>,
    by_precision: BTreeMap<u32, Arc<Vec<Interval>>>,
}

pub struct NumberField {
    poly: Vec<BigInt>,
    n: usize,
    ipoly: IntPoly,
    /// `order[i]` is the ascending index of the root used by `τ_{i+1}`.
    order: Vec<usize>,
    cap: u32,
    /// `θ^k` reduced, for `n <= k <= 2n-2`.
    reductions: Vec<Vec<Q>>,
    trace_form: QMat,
    cache: RwLock<RootCache>,
}

impl Clone for NumberField {
    fn clone(&self) -> Self {
        let cache = self.cache.read().unwrap();
        NumberField {
            poly: self.poly.clone(),
            n: self.n,
            ipoly: self.ipoly.clone(),
            order: self.order.clone(),
            cap: self.cap,
            reductions: self.reductions.clone(),
            trace_form: self.trace_form.clone(),
            cache: RwLock::new(RootCache {
                brackets: cache.brackets.clone(),
                by_precision: cache.by_precision.clone(),
            }),
        }
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("poly", &self.poly)
            .field("order", &self.order)
            .field("cap", &self.cap)
            .finish()
    }
}

impl NumberField {
    /// Field defined by the monic integer polynomial `coeffs[0] + … + coeffs[n] x^n`.
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        Self::from_bigints(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_bigints(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::DegreeTooSmall);
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        let n = coeffs.len() - 1;
        let rp = RatPoly::from_ints(&coeffs);
        if rp.gcd(&rp.derivative()).degree() != Some(0) {
            return Err(Error::NotSquarefree);
        }
        let real = SturmSequence::new(&rp).real_root_count();
        if real != n {
            return Err(Error::NotTotallyReal { real, degree: n });
        }
        let brackets = isolate_real_roots(&rp);
        debug_assert_eq!(brackets.len(), n);

        let mut reductions = Vec::with_capacity(n.saturating_sub(1));
        // θ^n = -(c_0 + … + c_{n-1} θ^{n-1})
        let mut cur: Vec<Q> = coeffs[..n]
            .iter()
            .map(|c| -BigRational::from_integer(c.clone()))
            .collect();
        for _ in n..=2 * n - 2 {
            reductions.push(cur.clone());
            // multiply by θ
            let top = cur[n - 1].clone();
            let mut next = vec![Q::zero(); n];
            for k in 1..n {
                next[k] = cur[k - 1].clone();
            }
            for k in 0..n {
                next[k] += &top * &reductions[0][k];
            }
            cur = next;
        }

        let mut field = NumberField {
            ipoly: rp.primitive_part(),
            poly: coeffs,
            n,
            order: (0..n).collect(),
            cap: DEFAULT_PRECISION_CAP,
            reductions,
            trace_form: vec![],
            cache: RwLock::new(RootCache {
                brackets,
                by_precision: BTreeMap::new(),
            }),
        };
        field.trace_form = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| field.trace(&field.theta_pow(i + j)))
                    .collect()
            })
            .collect();
        field.check_irreducible()?;
        Ok(field)
    }

    /// Same field with a different precision cap, in bits.
    pub fn with_precision_cap(mut self, cap: u32) -> Self {
        self.cap = cap.max(START_PRECISION);
        self
    }

    /// Same field with embeddings reordered: `τ_{i+1}` becomes evaluation at
    /// the `order[i]`-th smallest root.
    pub fn with_embedding_order(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if order.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: order.len(),
            });
        }
        for &o in order {
            if o >= self.n || seen[o] {
                return Err(Error::InvalidInput("embedding order is not a permutation".into()));
            }
            seen[o] = true;
        }
        let mut f = self.clone();
        f.order = order.to_vec();
        f.cache.write().unwrap().by_precision.clear();
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn precision_cap(&self) -> u32 {
        self.cap
    }

    pub fn embedding_order(&self) -> &[usize] {
        &self.order
    }

    /// `Σ_{i<j} [order[i] > order[j]]` parity: the sign of the Vandermonde
    /// determinant `det(τ_i(θ^{j}))` in the current embedding order.
    pub fn vandermonde_sign(&self) -> i32 {
        linalg::permutation_sign(&self.order)
    }

    // ---- elements ----

    pub fn element(&self, c: Vec<Q>) -> Result<FieldElement> {
        if c.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: c.len(),
            });
        }
        Ok(FieldElement { c })
    }

    pub fn element_from_ints(&self, c: &[i64]) -> Result<FieldElement> {
        self.element(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn rational(&self, q: Q) -> FieldElement {
        let mut c = vec![Q::zero(); self.n];
        c[0] = q;
        FieldElement { c }
    }

    pub fn one(&self) -> FieldElement {
        self.rational(Q::one())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            c: vec![Q::zero(); self.n],
        }
    }

    pub fn theta(&self) -> FieldElement {
        self.theta_pow(1)
    }

    fn theta_pow(&self, k: usize) -> FieldElement {
        if k < self.n {
            let mut c = vec![Q::zero(); self.n];
            c[k] = Q::one();
            FieldElement { c }
        } else if k <= 2 * self.n - 2 {
            FieldElement {
                c: self.reductions[k - self.n].clone(),
            }
        } else {
            self.mul(&self.theta_pow(k - 1), &self.theta())
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.n;
        let mut prod = vec![Q::zero(); 2 * n - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Q> = prod[..n].to_vec();
        for k in n..2 * n - 1 {
            if prod[k].is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reductions[k - n]) {
                *o += &prod[k] * r;
            }
        }
        FieldElement { c: out }
    }

    /// Matrix of multiplication by `a`; column `j` holds `a·θ^j`.
    pub fn mult_matrix(&self, a: &FieldElement) -> QMat {
        let cols: Vec<FieldElement> = (0..self.n)
            .map(|j| self.mul(a, &self.theta_pow(j)))
            .collect();
        (0..self.n)
            .map(|i| cols.iter().map(|c| c.c[i].clone()).collect())
            .collect()
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let m = self.mult_matrix(a);
        let mut e0 = vec![Q::zero(); self.n];
        e0[0] = Q::one();
        // Irreducibility makes every nonzero multiplication map invertible.
        let x = linalg::solve(&m, &e0).expect("nonzero element has an inverse");
        Ok(FieldElement { c: x })
    }

    pub fn pow(&self, a: &FieldElement, k: i64) -> Result<FieldElement> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut result = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(result)
    }

    pub fn trace(&self, a: &FieldElement) -> Q {
        let m = self.mult_matrix(a);
        (0..self.n).fold(Q::zero(), |acc, i| acc + &m[i][i])
    }

    pub fn norm(&self, a: &FieldElement) -> Q {
        linalg::det(&self.mult_matrix(a))
    }

    /// `Tr(θ^{i+j})`: the trace form in the power basis.
    pub fn trace_form(&self) -> &QMat {
        &self.trace_form
    }

    pub fn discriminant(&self) -> Q {
        linalg::det(&self.trace_form)
    }

    /// Characteristic polynomial of `a` (low degree first, monic), by
    /// Faddeev–LeVerrier on the multiplication matrix.
    pub fn char_poly(&self, a: &FieldElement) -> Vec<Q> {
        let n = self.n;
        let m = self.mult_matrix(a);
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut mk = linalg::identity(n); // M_0 = I
        for k in 1..=n {
            let am = linalg::mat_mul(&m, &mk);
            let tr = (0..n).fold(Q::zero(), |acc, i| acc + &am[i][i]);
            let ck = -tr / BigRational::from_integer(BigInt::from(k as u64));
            coeffs[n - k] = ck.clone();
            mk = am;
            for i in 0..n {
                mk[i][i] += &ck;
            }
        }
        coeffs
    }

    pub fn is_unit(&self, a: &FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let cp = self.char_poly(a);
        Ok(cp.iter().all(|c| c.is_integer()) && cp[0].abs().is_one())
    }

    /// `a` is an algebraic integer (integral characteristic polynomial).
    pub fn is_integral(&self, a: &FieldElement) -> bool {
        self.char_poly(a).iter().all(|c| c.is_integer())
    }

    // ---- certified numerics ----

    /// Precision schedule `64, 128, …` up to and including the cap.
    pub fn precisions(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap;
        let mut p = Some(START_PRECISION.min(cap));
        std::iter::from_fn(move || {
            let cur = p?;
            p = if cur >= cap {
                None
            } else {
                Some((cur * 2).min(cap))
            };
            Some(cur)
        })
    }

    /// The single certification kernel: run `step` at increasing precision
    /// until it decides, or fail at the cap.
    pub fn certify<T>(
        &self,
        what: &'static str,
        mut step: impl FnMut(u32) -> Result<Option<T>>,
    ) -> Result<T> {
        for p in self.precisions() {
            if let Some(v) = step(p)? {
                return Ok(v);
            }
        }
        Err(Error::PrecisionCapExceeded { cap: self.cap, what })
    }

    /// Root enclosures of width at most `2^-prec`, in embedding order.
    pub fn roots_at(&self, prec: u32) -> Arc<Vec<Interval>> {
        if let Some(r) = self.cache.read().unwrap().by_precision.get(&prec) {
            return r.clone();
        }
        let mut cache = self.cache.write().unwrap();
        if let Some(r) = cache.by_precision.get(&prec) {
            return r.clone();
        }
        let bits = prec as i64 + 4;
        let refined: Vec<RootBracket> = cache
            .brackets
            .iter()
            .map(|b| refine_bracket(&self.ipoly, b, bits))
            .collect();
        let ascending: Vec<Interval> = refined
            .iter()
            .map(|b| Interval::new(b.lo.clone(), b.hi.clone()))
            .collect();
        cache.brackets = refined;
        let ordered = Arc::new(self.order.iter().map(|&i| ascending[i].clone()).collect::<Vec<_>>());
        cache.by_precision.insert(prec, ordered.clone());
        ordered
    }

    /// Conjugates of `a` at working precision `prec`.
    pub fn enclose(&self, a: &FieldElement, prec: u32) -> Vec<Interval> {
        let roots = self.roots_at(prec);
        let coeffs: Vec<Interval> = a.c.iter().map(|q| Interval::from_rational(q, prec)).collect();
        roots
            .iter()
            .map(|r| {
                let mut acc = coeffs[self.n - 1].clone();
                for c in coeffs[..self.n - 1].iter().rev() {
                    acc = acc.mul(r, prec).add(c, prec);
                }
                acc
            })
            .collect()
    }

    /// Conjugates of `a`, each enclosed in an interval of width at most `target_width`.
    pub fn embed(&self, a: &FieldElement, target_width: &Q) -> Result<EmbeddedVector> {
        self.certify("embedding", |p| {
            let v = self.enclose(a, p);
            let ok = v.iter().all(|i| &i.width().to_rational() <= target_width);
            Ok(ok.then_some(EmbeddedVector {
                precision: p,
                coords: v,
            }))
        })
    }

    /// Floating-point conjugates (for heuristics and enumeration bounds only).
    pub fn conjugates_f64(&self, a: &FieldElement) -> Vec<f64> {
        self.enclose(a, 128).iter().map(|i| i.mid_f64()).collect()
    }

    /// Certified signs of all conjugates of a nonzero element.
    pub fn signs(&self, a: &FieldElement) -> Result<Vec<i32>> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        if let Some(q) = a.as_rational() {
            return Ok(vec![sign_of(q); self.n]);
        }
        self.certify("conjugate sign", |p| {
            let v = self.enclose(a, p);
            Ok(v.iter().map(|i| i.sign()).collect::<Option<Vec<_>>>())
        })
    }

    pub fn is_totally_positive(&self, a: &FieldElement) -> Result<bool> {
        Ok(self.signs(a)?.iter().all(|&s| s > 0))
    }

    /// `(log τ_1(a), …, log τ_n(a))` at precision `prec`.
    pub fn log_embedding(&self, a: &FieldElement, prec: u32) -> Result<Vec<Interval>> {
        if !self.is_totally_positive(a)? {
            return Err(Error::NotTotallyPositive);
        }
        let mut p = prec;
        loop {
            let v = self.enclose(a, p);
            if let Some(logs) = v.iter().map(|i| i.ln(prec)).collect::<Option<Vec<_>>>() {
                return Ok(logs);
            }
            // conjugate enclosures still touch zero; tighten them
            if p >= self.cap {
                return Err(Error::PrecisionCapExceeded {
                    cap: self.cap,
                    what: "log embedding",
                });
            }
            p = (p * 2).min(self.cap);
        }
    }

    /// First `n-1` log-conjugates.
    pub fn log_vector(&self, a: &FieldElement, prec: u32) -> Result<Vec<Interval>> {
        let mut v = self.log_embedding(a, prec)?;
        v.pop();
        Ok(v)
    }

    fn check_units(&self, units: &[FieldElement]) -> Result<()> {
        if units.len() + 1 != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n - 1,
                got: units.len(),
            });
        }
        for u in units {
            if u.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: u.len(),
                });
            }
            if !self.is_totally_positive(u)? {
                return Err(Error::NotTotallyPositive);
            }
        }
        Ok(())
    }

    /// Matrix with columns `Log ε_k` at precision `prec`.
    fn log_matrix(&self, units: &[FieldElement], prec: u32) -> Result<Vec<Vec<Interval>>> {
        let cols: Vec<Vec<Interval>> = units
            .iter()
            .map(|u| self.log_vector(u, prec))
            .collect::<Result<_>>()?;
        Ok(linalg::transpose(&cols))
    }

    /// Matrix with columns `LOG ℓ(ε_k)`, i.e. entries `log τ_j(ε_k) - log τ_n(ε_k)`.
    fn projected_log_matrix(&self, units: &[FieldElement], prec: u32) -> Result<Vec<Vec<Interval>>> {
        let cols: Vec<Vec<Interval>> = units
            .iter()
            .map(|u| {
                let full = self.log_embedding(u, prec)?;
                let last = full[self.n - 1].clone();
                Ok(full[..self.n - 1].iter().map(|l| l.sub(&last, prec)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(linalg::transpose(&cols))
    }

    /// Search for a nontrivial `a` with `Π ε_k^{a_k} = 1`, `|a_k| <= bound`,
    /// screened in floating point and confirmed exactly.
    pub fn find_unit_relation(&self, units: &[FieldElement], bound: i64) -> Result<Option<Vec<i64>>> {
        let logs: Vec<Vec<f64>> = units
            .iter()
            .map(|u| self.conjugates_f64(u).iter().map(|x| x.ln()).collect())
            .collect();
        let k = units.len();
        let scale: f64 = logs
            .iter()
            .flatten()
            .map(|v| v.abs())
            .fold(1.0, f64::max);
        let mut a = vec![-bound; k];
        loop {
            // canonical representatives: first nonzero entry positive
            let first = a.iter().find(|&&v| v != 0);
            if first.is_some_and(|&v| v > 0) {
                let tiny = (0..self.n).all(|j| {
                    let s: f64 = (0..k).map(|t| a[t] as f64 * logs[t][j]).sum();
                    s.abs() < 1e-9 * scale * (bound as f64)
                });
                if tiny {
                    let mut prod = self.one();
                    for (u, &e) in units.iter().zip(&a) {
                        prod = self.mul(&prod, &self.pow(u, e)?);
                    }
                    if prod == self.one() {
                        return Ok(Some(a));
                    }
                }
            }
            // odometer
            let mut i = 0;
            while i < k {
                if a[i] < bound {
                    a[i] += 1;
                    break;
                }
                a[i] = -bound;
                i += 1;
            }
            if i == k {
                return Ok(None);
            }
        }
    }

    /// Sign of `det(Log ε_1, …, Log ε_{n-1})`; zero exactly when a
    /// multiplicative relation is found and confirmed.
    pub fn signed_regulator_sign(&self, units: &[FieldElement]) -> Result<i32> {
        self.check_units(units)?;
        let mut searched = false;
        let r = self.certify("regulator sign", |p| {
            let d = linalg::interval_det(&self.log_matrix(units, p)?, p);
            if let Some(s) = d.sign() {
                if s != 0 {
                    return Ok(Some(s));
                }
            }
            if !searched {
                searched = true;
                if self.find_unit_relation(units, 12)?.is_some() {
                    return Ok(Some(0));
                }
            }
            Ok(None)
        });
        match r {
            Err(Error::PrecisionCapExceeded { cap, .. }) => Err(Error::PrecisionCapExceeded {
                cap,
                what: "regulator sign",
            }),
            other => other,
        }
    }

    /// `(det(LOG ℓ(ε)), n·det(Log ε))` as floats from 128-bit enclosures.
    pub fn regulator_identity_sides(&self, units: &[FieldElement]) -> Result<(f64, f64)> {
        self.check_units(units)?;
        let p = 128;
        let lhs = linalg::interval_det(&self.projected_log_matrix(units, p)?, p);
        let rhs = linalg::interval_det(&self.log_matrix(units, p)?, p);
        Ok((lhs.mid_f64(), self.n as f64 * rhs.mid_f64()))
    }

    pub fn check_regulator_identity(&self, units: &[FieldElement], tol: f64) -> Result<bool> {
        let (l, r) = self.regulator_identity_sides(units)?;
        Ok((l - r).abs() <= tol)
    }

    /// Exact sign of `det(τ_j(x_i))` for `n` field elements: the conjugate
    /// matrix factors as Vandermonde times the coordinate matrix.
    pub fn conjugate_det_sign(&self, elems: &[FieldElement]) -> i32 {
        let coords: QMat = (0..self.n)
            .map(|k| elems.iter().map(|e| e.c[k].clone()).collect())
            .collect();
        self.vandermonde_sign() * sign_of(&linalg::det(&coords))
    }

    /// Reject reducible polynomials: any monic factor of degree `k <= n/2`
    /// over Z has integer elementary symmetric functions in some `k` roots.
    fn check_irreducible(&self) -> Result<()> {
        let n = self.n;
        let f = RatPoly::from_ints(&self.poly);
        let mut pending: Vec<Vec<usize>> = Vec::new();
        for k in 1..=n / 2 {
            pending.extend(subsets(n, k));
        }
        if pending.is_empty() {
            return Ok(());
        }
        let mut p = START_PRECISION;
        loop {
            let roots = self.roots_at(p);
            let mut still = Vec::new();
            for s in pending.drain(..) {
                // Π (x - r) over the subset
                let mut coeffs = vec![Interval::one()];
                for &i in &s {
                    let mut next = vec![Interval::zero(); coeffs.len() + 1];
                    for (d, c) in coeffs.iter().enumerate() {
                        next[d + 1] = next[d + 1].add(c, p);
                        next[d] = next[d].sub(&c.mul(&roots[i], p), p);
                    }
                    coeffs = next;
                }
                if coeffs.iter().any(|c| c.contains_integer().is_none()) {
                    continue; // cannot be an integer polynomial
                }
                let tight = coeffs.iter().all(|c| c.width().to_f64() < 0.25);
                if !tight {
                    still.push(s);
                    continue;
                }
                let g = RatPoly::from_ints(
                    &coeffs.iter().map(|c| c.contains_integer().unwrap()).collect::<Vec<_>>(),
                );
                if f.rem(&g).is_zero() {
                    return Err(Error::Reducible);
                }
            }
            if still.is_empty() {
                return Ok(());
            }
            pending = still;
            p = p.saturating_mul(2);
            if p > 1 << 16 {
                return Err(Error::PrecisionCapExceeded {
                    cap: p,
                    what: "irreducibility",
                });
            }
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Convert a small exact rational to f64 (used for enumeration heuristics).
pub fn q_to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
