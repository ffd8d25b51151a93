//! Fractional ideals in Hermite normal form over a validated integral basis,
//! and the finite sets `R^σ` of lattice points in half-open parallelepipeds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::linalg::{self, QMat, ZMat};
use crate::arith::modp;
use crate::arith::rational::{gcd_all, lcm_of_denominators, Q};
use crate::domain::{Flag, SignedCone};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};

/// A Z-basis `ω_1, …, ω_n` of the maximal order.
#[derive(Clone, Debug)]
pub struct IntegralBasis {
    field: NumberField,
    elements: Vec<FieldElement>,
    /// columns: `ω_j` in power-basis coordinates
    to_power: QMat,
    from_power: QMat,
    /// `Tr(ω_i ω_j)`
    trace_form: QMat,
}

fn small_factor(d: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut n = d.abs();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p <= 1_000_000 && n > BigInt::one() {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            let mut e = 0;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let big = BigInt::from(10u64).pow(18);
        if n >= big {
            return Err(Error::NotValidated("discriminant too large to factor".into()));
        }
        let v = n.to_u64().unwrap();
        let r = (v as f64).sqrt().round() as u64;
        if let Some(s) = [r.saturating_sub(1), r, r + 1].into_iter().find(|s| s * s == v) {
            out.push((s, 2));
        } else {
            // no factor below 10^6 and below 10^18: prime or a product of two distinct primes
            out.push((0, 1));
        }
    }
    Ok(out)
}

/// Dedekind's criterion: is `Z[θ]` maximal at `p`?
pub fn power_basis_maximal_at(field: &NumberField, p: u64) -> bool {
    let f = field.poly();
    let fb = modp::reduce(f, p);
    let g = modp::radical(&fb, p);
    let h = modp::divrem(&fb, &g, p).0;
    // F = (f - g h) / p over Z, with g and h lifted to [0, p)
    let lift = |a: &modp::Fp| a.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let (gz, hz) = (lift(&g), lift(&h));
    let mut gh = vec![BigInt::zero(); gz.len() + hz.len() - 1];
    for (i, a) in gz.iter().enumerate() {
        for (j, b) in hz.iter().enumerate() {
            gh[i + j] += a * b;
        }
    }
    let pb = BigInt::from(p);
    let big_f: Vec<BigInt> = (0..f.len().max(gh.len()))
        .map(|i| {
            let d = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
            debug_assert!((&d % &pb).is_zero());
            d / &pb
        })
        .collect();
    let fbar = modp::reduce(&big_f, p);
    let common = modp::gcd(&modp::gcd(&fbar, &g, p), &h, p);
    common.len() <= 1
}

impl IntegralBasis {
    /// The power basis, after checking `p`-maximality at every `p` with
    /// `p^2` dividing the polynomial discriminant.
    pub fn power_basis(field: &NumberField) -> Result<IntegralBasis> {
        let disc = field.discriminant().to_integer();
        for (p, e) in small_factor(&disc)? {
            if e < 2 {
                continue;
            }
            if p == 0 || !power_basis_maximal_at(field, p) {
                return Err(Error::NotValidated(format!("power basis is not maximal at p = {p}")));
            }
        }
        let n = field.degree();
        let elements: Vec<FieldElement> = (0..n)
            .map(|i| {
                let mut c = vec![Q::zero(); n];
                c[i] = Q::one();
                FieldElement::from_coords(c)
            })
            .collect();
        Ok(Self::assemble(field, elements))
    }

    /// A user-supplied basis: integral, closed under multiplication,
    /// containing `Z[θ]`, with consistent discriminant.
    pub fn from_elements(field: &NumberField, elements: Vec<FieldElement>) -> Result<IntegralBasis> {
        let n = field.degree();
        if elements.len() != n || elements.iter().any(|e| e.len() != n) {
            return Err(Error::NotValidated("basis must have n elements of length n".into()));
        }
        let ib = Self::assemble_checked(field, elements)?;
        for e in &ib.elements {
            if !field.is_integral(e) {
                return Err(Error::NotValidated("basis element is not integral".into()));
            }
        }
        for a in &ib.elements {
            for b in &ib.elements {
                if !ib.is_integral_combination(&field.mul(a, b)) {
                    return Err(Error::NotValidated("basis is not closed under multiplication".into()));
                }
            }
        }
        for k in 0..n {
            let mut c = vec![Q::zero(); n];
            c[k] = Q::one();
            if !ib.is_integral_combination(&FieldElement::from_coords(c)) {
                return Err(Error::NotValidated("basis does not contain the power basis".into()));
            }
        }
        // disc(f) = [O : Z[θ]]^2 disc(O) with [O : Z[θ]] = 1 / |det B|
        let det_b = linalg::det(&ib.to_power);
        let expect = field.discriminant() * &det_b * &det_b;
        if ib.discriminant() != expect || !ib.discriminant().is_integer() {
            return Err(Error::NotValidated("discriminant mismatch".into()));
        }
        Ok(ib)
    }

    fn assemble_checked(field: &NumberField, elements: Vec<FieldElement>) -> Result<IntegralBasis> {
        let n = field.degree();
        let b: QMat = (0..n)
            .map(|k| elements.iter().map(|e| e.coords()[k].clone()).collect())
            .collect();
        if linalg::rank(&b) < n {
            return Err(Error::NotValidated("basis is dependent".into()));
        }
        Ok(Self::assemble(field, elements))
    }

    fn assemble(field: &NumberField, elements: Vec<FieldElement>) -> IntegralBasis {
        let n = field.degree();
        let to_power: QMat = (0..n)
            .map(|k| elements.iter().map(|e| e.coords()[k].clone()).collect())
            .collect();
        let from_power = linalg::inverse(&to_power).expect("independent basis");
        let trace_form = linalg::mat_mul(
            &linalg::mat_mul(&linalg::transpose(&to_power), field.trace_form()),
            &to_power,
        );
        IntegralBasis {
            field: field.clone(),
            elements,
            to_power,
            from_power,
            trace_form,
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn discriminant(&self) -> Q {
        linalg::det(&self.trace_form)
    }

    /// Coordinates of `x` in this basis.
    pub fn coords(&self, x: &FieldElement) -> Vec<Q> {
        linalg::mat_vec(&self.from_power, x.coords())
    }

    pub fn from_coords(&self, c: &[Q]) -> FieldElement {
        FieldElement::from_coords(linalg::mat_vec(&self.to_power, c))
    }

    fn is_integral_combination(&self, x: &FieldElement) -> bool {
        self.coords(x).iter().all(|c| c.is_integer())
    }
}

/// `L = H Z^n / den` in integral-basis coordinates; `H` in column HNF and
/// `gcd(entries of H, den) = 1`, so the pair is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    hnf: ZMat,
    den: BigInt,
}

/// Canonical (HNF, denominator) of the lattice spanned by rational vectors.
fn canonical_lattice(vecs: &[Vec<Q>], n: usize) -> Result<FractionalIdeal> {
    let d = lcm_of_denominators(vecs.iter().flatten());
    let dq = BigRational::from_integer(d.clone());
    let ints: Vec<Vec<BigInt>> = vecs
        .iter()
        .map(|v| v.iter().map(|c| (c * &dq).to_integer()).collect())
        .collect();
    let h = linalg::hnf_columns(&ints, n).ok_or(Error::ZeroIdeal)?;
    let g = gcd_all(h.iter().flatten().chain(std::iter::once(&d)));
    let hnf = h.into_iter().map(|r| r.into_iter().map(|v| v / &g).collect()).collect();
    Ok(FractionalIdeal { hnf, den: d / g })
}

fn columns(m: &QMat) -> Vec<Vec<Q>> {
    linalg::transpose(m)
}

impl FractionalIdeal {
    pub fn unit(ib: &IntegralBasis) -> FractionalIdeal {
        let n = ib.field.degree();
        FractionalIdeal {
            hnf: (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect(),
            den: BigInt::one(),
        }
    }

    /// Ideal generated (as an `O_k`-module) by the given elements.
    pub fn generated_by(elems: &[FieldElement], ib: &IntegralBasis) -> Result<FractionalIdeal> {
        let n = ib.field.degree();
        let mut vecs = Vec::new();
        for e in elems {
            for w in &ib.elements {
                vecs.push(ib.coords(&ib.field.mul(e, w)));
            }
        }
        if vecs.iter().all(|v| v.iter().all(|c| c.is_zero())) {
            return Err(Error::ZeroIdeal);
        }
        canonical_lattice(&vecs, n)
    }

    pub fn principal(x: &FieldElement, ib: &IntegralBasis) -> Result<FractionalIdeal> {
        if x.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Self::generated_by(std::slice::from_ref(x), ib)
    }

    /// Validate a serialized ideal: canonical HNF shape and closure under `O_k`.
    pub fn from_hnf(hnf: ZMat, den: BigInt, ib: &IntegralBasis) -> Result<FractionalIdeal> {
        let n = ib.field.degree();
        if hnf.len() != n || hnf.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: hnf.len(),
            });
        }
        if !den.is_positive() {
            return Err(Error::InvalidInput("ideal denominator must be positive".into()));
        }
        let q = BigRational::from_integer(den.clone());
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|j| (0..n).map(|i| BigRational::from_integer(hnf[i][j].clone()) / &q).collect())
            .collect();
        let canon = canonical_lattice(&cols, n)?;
        if canon.hnf != hnf || canon.den != den {
            return Err(Error::InvalidInput("ideal matrix is not in canonical Hermite normal form".into()));
        }
        for b in canon.basis(ib) {
            for w in &ib.elements {
                if !canon.contains(&ib.field.mul(&b, w), ib) {
                    return Err(Error::InvalidInput("lattice is not an ideal".into()));
                }
            }
        }
        Ok(canon)
    }

    pub fn hnf(&self) -> &ZMat {
        &self.hnf
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    fn columns_q(&self) -> Vec<Vec<Q>> {
        let n = self.hnf.len();
        let q = BigRational::from_integer(self.den.clone());
        (0..n)
            .map(|j| (0..n).map(|i| BigRational::from_integer(self.hnf[i][j].clone()) / &q).collect())
            .collect()
    }

    /// Z-basis of the ideal as field elements.
    pub fn basis(&self, ib: &IntegralBasis) -> Vec<FieldElement> {
        self.columns_q().iter().map(|c| ib.from_coords(c)).collect()
    }

    /// Z-basis columns in power-basis coordinates.
    pub fn basis_matrix_power(&self, ib: &IntegralBasis) -> QMat {
        let cols: Vec<Vec<Q>> = self.basis(ib).iter().map(|b| b.coords().to_vec()).collect();
        linalg::transpose(&cols)
    }

    pub fn norm(&self) -> Q {
        let n = self.hnf.len() as u32;
        let det = (0..self.hnf.len()).fold(BigInt::one(), |acc, i| acc * &self.hnf[i][i]);
        BigRational::new(det, self.den.pow(n))
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn contains(&self, x: &FieldElement, ib: &IntegralBasis) -> bool {
        let v = ib.coords(x);
        let m = linalg::transpose(&self.columns_q());
        match linalg::solve(&m, &v) {
            Some(c) => c.iter().all(|t| t.is_integer()),
            None => false,
        }
    }

    pub fn mul(&self, o: &FractionalIdeal, ib: &IntegralBasis) -> FractionalIdeal {
        let a = self.basis(ib);
        let b = o.basis(ib);
        let mut vecs = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                vecs.push(ib.coords(&ib.field.mul(x, y)));
            }
        }
        canonical_lattice(&vecs, ib.field.degree()).expect("product of nonzero ideals is nonzero")
    }

    pub fn add(&self, o: &FractionalIdeal, ib: &IntegralBasis) -> FractionalIdeal {
        let mut vecs = self.columns_q();
        vecs.extend(o.columns_q());
        canonical_lattice(&vecs, ib.field.degree()).expect("nonzero")
    }

    /// Trace dual `{x : Tr(x L) ⊆ Z}` of the lattice.
    fn dual(&self, ib: &IntegralBasis) -> FractionalIdeal {
        let m = linalg::transpose(&self.columns_q());
        let mt_t = linalg::mat_mul(&linalg::transpose(&m), &ib.trace_form);
        let d = linalg::inverse(&mt_t).expect("trace form is nondegenerate");
        canonical_lattice(&columns(&d), ib.field.degree()).expect("nonzero")
    }

    /// `a^{-1} = (a · O_k^*)^*`, with `^*` the trace dual.
    pub fn inverse(&self, ib: &IntegralBasis) -> Result<FractionalIdeal> {
        if self.hnf.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let codiff = FractionalIdeal::unit(ib).dual(ib);
        Ok(self.mul(&codiff, ib).dual(ib))
    }

    /// Positive generator of `Z ∩ a` for an integral ideal.
    pub fn smallest_integer(&self, ib: &IntegralBasis) -> BigInt {
        let one = ib.coords(&ib.field.one());
        let m = linalg::transpose(&self.columns_q());
        let c = linalg::solve(&m, &one).expect("nonsingular");
        lcm_of_denominators(c.iter())
    }

    pub fn is_coprime_to(&self, o: &FractionalIdeal, ib: &IntegralBasis) -> bool {
        self.add(o, ib) == FractionalIdeal::unit(ib)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPoint {
    pub z: FieldElement,
    /// coefficients in the (scaled) generator basis
    pub t: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct RSigmaSet {
    pub points: Vec<RPoint>,
    /// `[Λ : Σ Z·(scale·f_i)]`
    pub index: BigInt,
}

/// Points of `lattice` in `{Σ t_i f_i : t_i ∈ I_i}`.
pub fn enumerate_r_sigma(cone: &SignedCone, lattice: &FractionalIdeal, ib: &IntegralBasis) -> Result<RSigmaSet> {
    coset_enumerate_r(cone, lattice, &ib.field.zero(), &BigInt::one(), ib)
}

fn reduce_into(t: &Q, flag: Flag) -> Q {
    match flag {
        // [0, 1)
        Flag::Closed => t - BigRational::from_integer(t.floor().to_integer()),
        // (0, 1]
        Flag::Open => t - BigRational::from_integer(t.ceil().to_integer()) + Q::one(),
    }
}

/// Points of `shift + lattice` in `{Σ t_i (scale·f_i) : t_i ∈ I_i}`,
/// exactly: residues of the lattice modulo the generator sublattice,
/// each translated into the half-open box.
pub fn coset_enumerate_r(
    cone: &SignedCone,
    lattice: &FractionalIdeal,
    shift: &FieldElement,
    scale: &BigInt,
    ib: &IntegralBasis,
) -> Result<RSigmaSet> {
    let field = &ib.field;
    let n = field.degree();
    if !scale.is_positive() {
        return Err(Error::InvalidInput("scale must be at least 1".into()));
    }
    let sq = BigRational::from_integer(scale.clone());
    let g_pow: QMat = (0..n)
        .map(|k| cone.generators.iter().map(|g| &g.coords()[k] * &sq).collect())
        .collect();
    let g_inv = linalg::inverse(&g_pow).ok_or(Error::DependentBasis)?;
    let p = lattice.basis_matrix_power(ib);
    // columns of A: lattice basis in generator coordinates
    let a = linalg::mat_mul(&g_inv, &p);
    let gi = linalg::inverse(&a).expect("lattice has full rank");
    if gi.iter().flatten().any(|v| !v.is_integer()) {
        return Err(Error::GeneratorsNotInLattice);
    }
    let gint: Vec<Vec<BigInt>> = columns(&gi)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v.to_integer()).collect())
        .collect();
    let h = linalg::hnf_columns(&gint, n).expect("full rank");
    let bounds: Vec<BigInt> = (0..n).map(|i| h[i][i].clone()).collect();
    let index = bounds.iter().fold(BigInt::one(), |acc, b| acc * b);
    let t0 = linalg::mat_vec(&g_inv, shift.coords());

    let mut points = Vec::new();
    let mut u: Vec<BigInt> = vec![BigInt::zero(); n];
    loop {
        let uq: Vec<Q> = u.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let t: Vec<Q> = linalg::mat_vec(&a, &uq)
            .iter()
            .zip(&t0)
            .zip(&cone.flags)
            .map(|((x, s), &f)| reduce_into(&(x + s), f))
            .collect();
        let z = linalg::mat_vec(&g_pow, &t);
        points.push(RPoint {
            z: FieldElement::from_coords(z),
            t,
        });
        let mut i = 0;
        while i < n {
            u[i] += 1;
            if u[i] < bounds[i] {
                break;
            }
            u[i] = BigInt::zero();
            i += 1;
        }
        if i == n {
            break;
        }
    }
    points.sort_by(|x, y| x.t.cmp(&y.t));
    Ok(RSigmaSet { points, index })
}
