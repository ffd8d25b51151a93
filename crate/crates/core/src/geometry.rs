//! The projection ℓ, cone and barycentric coordinates, and piercing tests.
//!
//! Every sign decision goes through [`NumberField::certify`]: exact rational
//! arithmetic when the inputs are field elements, adaptive intervals when
//! they are general real vectors.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::linalg::{self, QMat};
use crate::arith::rational::{sign_of, Q};
use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};

/// A vector in `R^n`, either the conjugate vector of a field element or a
/// rational vector rescaled coordinatewise by the conjugates of an element
/// (so that a unit acting on a rational point stays exactly representable).
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Field(FieldElement),
    Scaled { scale: FieldElement, base: Vec<Q> },
}

impl Point {
    pub fn rational(field: &NumberField, base: Vec<Q>) -> Point {
        Point::Scaled {
            scale: field.one(),
            base,
        }
    }

    /// The distinguished basis vector `e_n`.
    pub fn e_n(field: &NumberField) -> Point {
        let n = field.degree();
        let mut base = vec![Q::zero(); n];
        base[n - 1] = Q::one();
        Point::rational(field, base)
    }

    pub fn as_field(&self) -> Option<&FieldElement> {
        match self {
            Point::Field(x) => Some(x),
            Point::Scaled { .. } => None,
        }
    }

    /// The vector `τ(u)·x` (coordinatewise product).
    pub fn times(&self, field: &NumberField, u: &FieldElement) -> Point {
        match self {
            Point::Field(x) => Point::Field(field.mul(u, x)),
            Point::Scaled { scale, base } => Point::Scaled {
                scale: field.mul(u, scale),
                base: base.clone(),
            },
        }
    }

    pub fn enclose(&self, field: &NumberField, prec: u32) -> Vec<Interval> {
        match self {
            Point::Field(x) => field.enclose(x, prec),
            Point::Scaled { scale, base } => {
                let b = base.iter().map(|q| Interval::from_rational(q, prec));
                if let Some(r) = scale.as_rational() {
                    return b.map(|i| i.mul_rational(r, prec)).collect();
                }
                field
                    .enclose(scale, prec)
                    .iter()
                    .zip(b)
                    .map(|(s, b)| s.mul(&b, prec))
                    .collect()
            }
        }
    }

    pub fn to_f64(&self, field: &NumberField) -> Vec<f64> {
        self.enclose(field, 128).iter().map(|i| i.mid_f64()).collect()
    }
}

/// `ℓ(x) = (x_1/x_n, …, x_{n-1}/x_n)` on interval vectors.
pub fn project_ell(x: &[Interval], prec: u32) -> Result<Vec<Interval>> {
    let (last, rest) = x.split_last().ok_or(Error::LastCoordinateZero)?;
    if last.contains_zero() {
        return Err(Error::LastCoordinateZero);
    }
    Ok(rest
        .iter()
        .map(|v| v.div(last, prec).expect("divisor excludes zero"))
        .collect())
}

pub fn project_ell_exact(x: &[Q]) -> Result<Vec<Q>> {
    let (last, rest) = x.split_last().ok_or(Error::LastCoordinateZero)?;
    if last.is_zero() {
        return Err(Error::LastCoordinateZero);
    }
    Ok(rest.iter().map(|v| v / last).collect())
}

#[derive(Clone, Debug)]
pub struct ConeCoordinates {
    pub coeffs: Vec<Interval>,
    pub signs: Vec<i32>,
    /// Exact coefficients, available when the input is a field element.
    pub exact: Option<Vec<Q>>,
}

fn coordinate_matrix(basis: &[FieldElement], n: usize) -> QMat {
    (0..n)
        .map(|k| basis.iter().map(|b| b.coords()[k].clone()).collect())
        .collect()
}

fn check_len(basis: &[FieldElement], field: &NumberField) -> Result<()> {
    let n = field.degree();
    if basis.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.len(),
        });
    }
    Ok(())
}

fn replace_column(m: &[Vec<Interval>], col: usize, v: &[Interval]) -> Vec<Vec<Interval>> {
    m.iter()
        .zip(v)
        .map(|(row, x)| {
            let mut r = row.clone();
            r[col] = x.clone();
            r
        })
        .collect()
}

/// Coefficients of `v` in the basis of conjugate vectors of `basis`, by
/// Cramer's rule; only the coefficients listed in `needed` must carry a
/// certified sign (the others get sign 2 when undecided).
fn cone_coordinates_partial(
    v: &Point,
    basis: &[FieldElement],
    field: &NumberField,
    needed: &[usize],
) -> Result<ConeCoordinates> {
    let n = field.degree();
    check_len(basis, field)?;
    if let Point::Field(x) = v {
        let t = linalg::solve(&coordinate_matrix(basis, n), x.coords()).ok_or(Error::DependentBasis)?;
        return Ok(ConeCoordinates {
            coeffs: t.iter().map(|q| Interval::from_rational(q, 64)).collect(),
            signs: t.iter().map(sign_of).collect(),
            exact: Some(t),
        });
    }
    let mut rank_checked = false;
    field.certify("cone coordinates", |p| {
        let cols: Vec<Vec<Interval>> = basis.iter().map(|b| field.enclose(b, p)).collect();
        let f = linalg::transpose(&cols);
        let d = linalg::interval_det(&f, p);
        if d.contains_zero() {
            // a nonzero enclosure certifies independence; only an
            // undecided one needs the exact rank
            if !rank_checked {
                rank_checked = true;
                if linalg::rank(&coordinate_matrix(basis, n)) < n {
                    return Err(Error::DependentBasis);
                }
            }
            return Ok(None);
        }
        let vv = v.enclose(field, p);
        let mut coeffs = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for i in 0..n {
            let ci = linalg::interval_det(&replace_column(&f, i, &vv), p)
                .div(&d, p)
                .unwrap();
            match ci.sign() {
                Some(s) => signs.push(s),
                None if needed.contains(&i) => return Ok(None),
                None => signs.push(2),
            }
            coeffs.push(ci);
        }
        Ok(Some(ConeCoordinates {
            coeffs,
            signs,
            exact: None,
        }))
    })
}

/// Coefficients `c_i` with `v = Σ c_i f_i`, each sign certified.
pub fn cone_coordinates(v: &Point, basis: &[FieldElement], field: &NumberField) -> Result<ConeCoordinates> {
    let all: Vec<usize> = (0..field.degree()).collect();
    cone_coordinates_partial(v, basis, field, &all)
}

fn undecidable(e: Error) -> Error {
    match e {
        Error::PrecisionCapExceeded { .. } => Error::UndecidableSign("piercing"),
        other => other,
    }
}

/// Does the segment from `x` to `y` (with `y` in the closed cone) pierce the
/// cone, i.e. `c_j(x) > 0` whenever `c_j(y) = 0`?
pub fn pierces_cone(x: &Point, y: &Point, basis: &[FieldElement], field: &NumberField) -> Result<bool> {
    let cy = cone_coordinates(y, basis, field).map_err(undecidable)?;
    if cy.signs.iter().any(|&s| s < 0) {
        return Err(Error::YNotInCone);
    }
    let zeros: Vec<usize> = (0..cy.signs.len()).filter(|&i| cy.signs[i] == 0).collect();
    if zeros.is_empty() {
        return Ok(true);
    }
    let cx = cone_coordinates_partial(x, basis, field, &zeros).map_err(undecidable)?;
    Ok(zeros.iter().all(|&i| cx.signs[i] > 0))
}

/// A point of `R^{n-1}`: exact rationals, or the projection `ℓ(p)`.
#[derive(Clone, Debug)]
pub enum AffinePoint {
    Exact(Vec<Q>),
    Projected(Point),
}

impl AffinePoint {
    pub fn origin(dim: usize) -> AffinePoint {
        AffinePoint::Exact(vec![Q::zero(); dim])
    }

    fn enclose(&self, field: &NumberField, prec: u32) -> Result<Option<Vec<Interval>>> {
        match self {
            AffinePoint::Exact(v) => Ok(Some(v.iter().map(|q| Interval::from_rational(q, prec)).collect())),
            AffinePoint::Projected(p) => {
                let v = p.enclose(field, prec);
                match v.last().unwrap().sign() {
                    Some(0) => Err(Error::LastCoordinateZero),
                    None => Ok(None),
                    Some(_) => project_ell(&v, prec).map(Some),
                }
            }
        }
    }

    fn field_lift(&self) -> Option<&FieldElement> {
        match self {
            AffinePoint::Projected(Point::Field(x)) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Simplex {
    vertices: Vec<AffinePoint>,
    /// Sign of `det [v_0 … v_{n-1}; 1 … 1]`: the affine-independence certificate.
    orientation: i32,
}

fn affine_matrix(verts: &[Vec<Interval>]) -> Vec<Vec<Interval>> {
    let n = verts.len();
    let mut m: Vec<Vec<Interval>> = (0..n - 1).map(|r| verts.iter().map(|v| v[r].clone()).collect()).collect();
    m.push(vec![Interval::one(); n]);
    m
}

fn affine_matrix_exact(verts: &[Vec<Q>]) -> QMat {
    let n = verts.len();
    let mut m: QMat = (0..n - 1).map(|r| verts.iter().map(|v| v[r].clone()).collect()).collect();
    m.push(vec![Q::one(); n]);
    m
}

impl Simplex {
    pub fn new(vertices: Vec<AffinePoint>, field: &NumberField) -> Result<Simplex> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::DegenerateSimplex);
        }
        let exact: Option<Vec<Vec<Q>>> = vertices
            .iter()
            .map(|v| match v {
                AffinePoint::Exact(q) => Some(q.clone()),
                _ => None,
            })
            .collect();
        if let Some(ex) = exact {
            let s = sign_of(&linalg::det(&affine_matrix_exact(&ex)));
            if s == 0 {
                return Err(Error::DegenerateSimplex);
            }
            return Ok(Simplex { vertices, orientation: s });
        }
        let lifts: Option<Vec<FieldElement>> = vertices.iter().map(|v| v.field_lift().cloned()).collect();
        if let Some(l) = &lifts {
            if field.conjugate_det_sign(l) == 0 {
                return Err(Error::DegenerateSimplex);
            }
        }
        let s = field
            .certify("simplex orientation", |p| {
                let Some(verts) = enclose_all(&vertices, field, p)? else {
                    return Ok(None);
                };
                Ok(linalg::interval_det(&affine_matrix(&verts), p).sign().filter(|&s| s != 0))
            })
            .map_err(|e| match e {
                Error::PrecisionCapExceeded { .. } => Error::DegenerateSimplex,
                other => other,
            })?;
        Ok(Simplex { vertices, orientation: s })
    }

    /// The simplex with vertices `ℓ(f_1), …, ℓ(f_n)`.
    pub fn from_generators(gens: &[FieldElement], field: &NumberField) -> Result<Simplex> {
        Simplex::new(
            gens.iter()
                .map(|g| AffinePoint::Projected(Point::Field(g.clone())))
                .collect(),
            field,
        )
    }

    pub fn orientation(&self) -> i32 {
        self.orientation
    }

    pub fn vertices(&self) -> &[AffinePoint] {
        &self.vertices
    }

    fn all_exact(&self) -> Option<Vec<Vec<Q>>> {
        self.vertices
            .iter()
            .map(|v| match v {
                AffinePoint::Exact(q) => Some(q.clone()),
                _ => None,
            })
            .collect()
    }

    fn lifts(&self) -> Option<Vec<FieldElement>> {
        self.vertices.iter().map(|v| v.field_lift().cloned()).collect()
    }
}

fn enclose_all(pts: &[AffinePoint], field: &NumberField, prec: u32) -> Result<Option<Vec<Vec<Interval>>>> {
    let mut out = Vec::with_capacity(pts.len());
    for p in pts {
        match p.enclose(field, prec)? {
            Some(v) => out.push(v),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

#[derive(Clone, Debug)]
pub struct Barycentric {
    pub coeffs: Vec<Interval>,
    pub signs: Vec<i32>,
}

fn barycentric_partial(p: &AffinePoint, s: &Simplex, field: &NumberField, needed: &[usize]) -> Result<Barycentric> {
    let n = s.vertices.len();
    if let (Some(verts), AffinePoint::Exact(pt)) = (s.all_exact(), p) {
        if pt.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                got: pt.len(),
            });
        }
        let mut rhs = pt.clone();
        rhs.push(Q::one());
        let b = linalg::solve(&affine_matrix_exact(&verts), &rhs).ok_or(Error::DegenerateSimplex)?;
        return Ok(Barycentric {
            coeffs: b.iter().map(|q| Interval::from_rational(q, 64)).collect(),
            signs: b.iter().map(sign_of).collect(),
        });
    }
    // Exact zero tests for b_i when everything lifts to field elements:
    // b_i(ℓ(x)) = 0 iff det(conjugates with column i replaced by x) = 0.
    let exact_zero: Vec<bool> = match (s.lifts(), p.field_lift()) {
        (Some(lifts), Some(x)) => (0..n)
            .map(|i| {
                let mut m = lifts.clone();
                m[i] = x.clone();
                field.conjugate_det_sign(&m) == 0
            })
            .collect(),
        _ => vec![false; n],
    };
    field.certify("barycentric coordinates", |prec| {
        let Some(verts) = enclose_all(&s.vertices, field, prec)? else {
            return Ok(None);
        };
        let Some(mut pt) = p.enclose(field, prec)? else {
            return Ok(None);
        };
        if pt.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                got: pt.len(),
            });
        }
        pt.push(Interval::one());
        let a = affine_matrix(&verts);
        let d = linalg::interval_det(&a, prec);
        if d.contains_zero() {
            return Ok(None);
        }
        let mut coeffs = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for i in 0..n {
            if exact_zero[i] {
                coeffs.push(Interval::zero());
                signs.push(0);
                continue;
            }
            let bi = linalg::interval_det(&replace_column(&a, i, &pt), prec).div(&d, prec).unwrap();
            match bi.sign() {
                Some(sg) => signs.push(sg),
                None if needed.contains(&i) => return Ok(None),
                None => signs.push(2),
            }
            coeffs.push(bi);
        }
        Ok(Some(Barycentric { coeffs, signs }))
    })
}

/// Barycentric coordinates of `p` in the simplex, each sign certified.
pub fn barycentric(p: &AffinePoint, s: &Simplex, field: &NumberField) -> Result<Barycentric> {
    let all: Vec<usize> = (0..s.vertices.len()).collect();
    barycentric_partial(p, s, field, &all)
}

/// Does the segment from `x` to `y` (with `y` in the closed simplex) pierce
/// the simplex, i.e. `b_i(x) > 0` whenever `b_i(y) = 0`?
pub fn pierces_simplex(x: &AffinePoint, y: &AffinePoint, s: &Simplex, field: &NumberField) -> Result<bool> {
    let by = barycentric(y, s, field).map_err(undecidable)?;
    if by.signs.iter().any(|&v| v < 0) {
        return Err(Error::YNotInSimplex);
    }
    let zeros: Vec<usize> = (0..by.signs.len()).filter(|&i| by.signs[i] == 0).collect();
    if zeros.is_empty() {
        return Ok(true);
    }
    let bx = barycentric_partial(x, s, field, &zeros).map_err(undecidable)?;
    Ok(zeros.iter().all(|&i| bx.signs[i] > 0))
}

/// The origin avoids every face span `h_i` of the simplex: each determinant
/// with one vertex replaced by the origin is certified nonzero.
pub fn origin_avoids_faces(s: &Simplex, field: &NumberField) -> Result<bool> {
    let n = s.vertices.len();
    let b = barycentric(&AffinePoint::origin(n - 1), s, field)?;
    Ok(b.signs.iter().all(|&v| v != 0))
}

pub fn rationals(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, q};

    fn sqrt2() -> NumberField {
        NumberField::new(&[-2, 0, 1]).unwrap()
    }

    #[test]
    fn ell_examples() {
        let p = 64;
        let x: Vec<Interval> = [2, 4, 2].iter().map(|&v| Interval::from_int(v)).collect();
        let l = project_ell(&x, p).unwrap();
        assert_eq!(l[0].mid_f64(), 1.0);
        assert_eq!(l[1].mid_f64(), 2.0);
        assert_eq!(project_ell_exact(&[q(1), q(1), q(1)]).unwrap(), vec![q(1), q(1)]);
        assert_eq!(project_ell_exact(&[q(1), q(0)]).unwrap_err(), Error::LastCoordinateZero);
    }

    #[test]
    fn cone_coordinates_quadratic() {
        let k = sqrt2();
        let basis = vec![k.one(), FieldElement::from_ints(&[3, 2])];
        let c = cone_coordinates(&Point::e_n(&k), &basis, &k).unwrap();
        assert_eq!(c.signs, vec![-1, 1]);
        // c_2 = 1/(4√2)
        assert!((c.coeffs[1].mid_f64() - 1.0 / (4.0 * 2f64.sqrt())).abs() < 1e-12);
        let v = k.mul(&basis[1], &k.rational(q(3))).add(&k.rational(q(2)));
        let c = cone_coordinates(&Point::Field(v), &basis, &k).unwrap();
        assert_eq!(c.exact.unwrap(), vec![q(2), q(3)]);
        let c = cone_coordinates(&Point::Field(k.one()), &basis, &k).unwrap();
        assert_eq!(c.signs, vec![1, 0]);
        let dep = vec![k.one(), k.rational(q(2))];
        assert_eq!(cone_coordinates(&Point::e_n(&k), &dep, &k).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn pierces_cone_examples() {
        let k = sqrt2();
        let basis = vec![k.one(), FieldElement::from_ints(&[3, 2])];
        let f1 = Point::Field(basis[0].clone());
        let f2 = Point::Field(basis[1].clone());
        assert!(pierces_cone(&Point::e_n(&k), &f1, &basis, &k).unwrap());
        assert!(!pierces_cone(&Point::Field(k.one().neg()), &f2, &basis, &k).unwrap());
        let interior = Point::Field(basis[0].add(&basis[1]));
        assert!(pierces_cone(&Point::Field(k.one().neg()), &interior, &basis, &k).unwrap());
        assert_eq!(
            pierces_cone(&f1, &Point::Field(k.one().neg()), &basis, &k).unwrap_err(),
            Error::YNotInCone
        );
    }

    #[test]
    fn barycentric_exact_simplex() {
        let k = sqrt2();
        let tri = Simplex::new(
            vec![
                AffinePoint::Exact(vec![q(0), q(0)]),
                AffinePoint::Exact(vec![q(1), q(0)]),
                AffinePoint::Exact(vec![q(0), q(1)]),
            ],
            &k,
        )
        .unwrap();
        let b = barycentric(&AffinePoint::Exact(vec![frac(1, 3), frac(1, 3)]), &tri, &k).unwrap();
        assert_eq!(b.signs, vec![1, 1, 1]);
        let v0 = barycentric(&AffinePoint::Exact(vec![q(0), q(0)]), &tri, &k).unwrap();
        assert_eq!(v0.signs, vec![1, 0, 0]);
        let edge = AffinePoint::Exact(vec![frac(1, 2), q(0)]);
        assert!(!pierces_simplex(&edge, &edge, &tri, &k).unwrap());
        assert!(pierces_simplex(&AffinePoint::Exact(vec![frac(1, 4), frac(1, 4)]), &edge, &tri, &k).unwrap());
        assert_eq!(
            pierces_simplex(&edge, &AffinePoint::Exact(vec![q(2), q(2)]), &tri, &k).unwrap_err(),
            Error::YNotInSimplex
        );
        let flat = Simplex::new(
            vec![
                AffinePoint::Exact(vec![q(0), q(0)]),
                AffinePoint::Exact(vec![q(1), q(1)]),
                AffinePoint::Exact(vec![q(2), q(2)]),
            ],
            &k,
        );
        assert_eq!(flat.unwrap_err(), Error::DegenerateSimplex);
    }

    #[test]
    fn projected_simplex_quadratic() {
        let k = sqrt2();
        let basis = vec![k.one(), FieldElement::from_ints(&[3, 2])];
        let s = Simplex::from_generators(&basis, &k).unwrap();
        assert!(origin_avoids_faces(&s, &k).unwrap());
        // ℓ(ε) is a vertex: exact zero detected via the field lift
        let b = barycentric(&AffinePoint::Projected(Point::Field(basis[1].clone())), &s, &k).unwrap();
        assert_eq!(b.signs, vec![0, 1]);
    }
}
