//! Job files: schema, validation, and conversion to core types.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use shintani_core::arith::rational::{format_rational, parse_rational, Q};
use shintani_core::domain::SignedDomain;
use shintani_core::field::{FieldElement, NumberField};
use shintani_core::ideals::{FractionalIdeal, IntegralBasis};
use shintani_core::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A rational given as a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Str(String),
}

impl RationalJson {
    pub fn to_q(&self) -> Result<Q> {
        match self {
            RationalJson::Int(v) => Ok(Q::from_integer((*v).into())),
            RationalJson::Str(s) => parse_rational(s),
        }
    }
}

/// An integer given as a JSON integer or a decimal string (for big values).
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Int(i64),
    Str(String),
}

impl IntJson {
    pub fn to_bigint(&self) -> Result<num_bigint::BigInt> {
        match self {
            IntJson::Int(v) => Ok((*v).into()),
            IntJson::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    /// Coefficients, constant term first.
    pub poly: Vec<IntJson>,
    /// Optional integral basis, each element in power-basis coordinates.
    #[serde(default)]
    pub basis: Option<Vec<Vec<RationalJson>>>,
    /// Optional permutation of the ascending real roots.
    #[serde(default)]
    pub embedding_order: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub hnf: Vec<Vec<Value>>,
    pub den: Value,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntryJson {
    pub ideal: IdealJson,
    pub class: usize,
}

/// A character value: a real number or `[re, im]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexJson {
    fn to_complex(&self) -> Complex64 {
        match self {
            ComplexJson::Real(r) => Complex64::new(*r, 0.0),
            ComplexJson::Pair([re, im]) => Complex64::new(*re, *im),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterJson {
    pub values: Vec<ComplexJson>,
    #[serde(default)]
    pub conductor: Option<IdealJson>,
    #[serde(default)]
    pub resolver: Option<String>,
    #[serde(default)]
    pub classes: Option<Vec<ClassEntryJson>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayClassJson {
    pub ideal: IdealJson,
    pub conductor: IdealJson,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default)]
    pub schema: Option<u32>,
    pub command: String,
    pub field: FieldJson,
    pub units: Vec<Vec<RationalJson>>,
    #[serde(default)]
    pub ideals: Option<Vec<IdealJson>>,
    #[serde(default)]
    pub character: Option<CharacterJson>,
    #[serde(default)]
    pub ray_class: Option<RayClassJson>,
    #[serde(default)]
    pub s: Option<f64>,
    #[serde(default)]
    pub target_error: Option<f64>,
    #[serde(default)]
    pub max_radius: Option<u64>,
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub strategy: Option<String>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec> {
        let job: JobSpec = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("job: {e}")))?;
        if let Some(v) = job.schema {
            if v != SCHEMA_VERSION {
                return Err(Error::InvalidInput(format!("unsupported schema version {v}")));
            }
        }
        Ok(job)
    }
}

fn json_int(v: &Value) -> Result<num_bigint::BigInt> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(n.as_i64().unwrap().into()),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}"))),
        _ => Err(Error::InvalidInput(format!("not an integer: {v}"))),
    }
}

pub fn int_json(v: &num_bigint::BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(v.to_string()),
    }
}

/// Field, integral basis and units, validated.
pub struct Setup {
    pub field: NumberField,
    pub basis: IntegralBasis,
    pub units: Vec<FieldElement>,
}

impl Setup {
    pub fn from_job(job: &JobSpec, precision_cap: Option<u32>) -> Result<Setup> {
        let coeffs = job.field.poly.iter().map(|c| c.to_bigint()).collect::<Result<Vec<_>>>()?;
        let mut field = NumberField::from_bigints(coeffs)?;
        if let Some(cap) = precision_cap {
            field = field.with_precision_cap(cap);
        }
        if let Some(order) = &job.field.embedding_order {
            field = field.with_embedding_order(order)?;
        }
        let basis = match &job.field.basis {
            None => IntegralBasis::power_basis(&field)?,
            Some(b) => {
                let elems = b.iter().map(|e| element(&field, e)).collect::<Result<Vec<_>>>()?;
                IntegralBasis::from_elements(&field, elems)?
            }
        };
        let units = job.units.iter().map(|u| element(&field, u)).collect::<Result<Vec<_>>>()?;
        Ok(Setup { field, basis, units })
    }

    pub fn domain(&self) -> Result<SignedDomain> {
        SignedDomain::build(&self.units, &self.field)
    }

    pub fn ideal(&self, j: &IdealJson) -> Result<FractionalIdeal> {
        let hnf = j
            .hnf
            .iter()
            .map(|r| r.iter().map(json_int).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FractionalIdeal::from_hnf(hnf, json_int(&j.den)?, &self.basis)
    }

    pub fn character(&self, c: &CharacterJson, reps: Vec<FractionalIdeal>) -> Result<shintani_core::zeta::CharacterTable> {
        let conductor = match &c.conductor {
            Some(j) => self.ideal(j)?,
            None => FractionalIdeal::unit(&self.basis),
        };
        let values = c.values.iter().map(|v| v.to_complex()).collect();
        shintani_core::zeta::CharacterTable::new(reps, values, conductor)
    }
}

fn element(field: &NumberField, c: &[RationalJson]) -> Result<FieldElement> {
    field.element(c.iter().map(|v| v.to_q()).collect::<Result<Vec<_>>>()?)
}

pub fn rationals_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

pub fn ideal_json(a: &FractionalIdeal) -> IdealJson {
    IdealJson {
        hnf: a.hnf().iter().map(|r| r.iter().map(int_json).collect()).collect(),
        den: int_json(a.den()),
    }
}
