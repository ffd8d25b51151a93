use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ideals::{FractionalIdeal, IntegralBasis};

/// A class character: narrow class representatives `a_j` (the outer sum of
/// the assembly) and one value per class of the conductor's ray class group.
/// With conductor 1 the two coincide and class `j` is the class of `a_j`.
/// Ideals not coprime to the conductor get the value 0.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    reps: Vec<FractionalIdeal>,
    values: Vec<Complex64>,
    conductor: FractionalIdeal,
}

impl CharacterTable {
    pub fn new(reps: Vec<FractionalIdeal>, values: Vec<Complex64>, conductor: FractionalIdeal) -> Result<Self> {
        if reps.is_empty() || values.is_empty() {
            return Err(Error::InvalidInput("empty character table".into()));
        }
        for v in &values {
            let m = v.norm();
            if (m - 1.0).abs() > 1e-12 && m > 1e-12 {
                return Err(Error::InvalidInput("character values must have modulus 0 or 1".into()));
            }
        }
        for (i, a) in reps.iter().enumerate() {
            if !a.is_integral() {
                return Err(Error::InvalidInput("class representatives must be integral".into()));
            }
            if reps[..i].contains(a) {
                return Err(Error::InvalidInput("duplicate class representative".into()));
            }
        }
        if !conductor.is_integral() {
            return Err(Error::InvalidInput("conductor must be integral".into()));
        }
        if conductor.norm().is_one() && reps.len() != values.len() {
            return Err(Error::InvalidInput("one character value per representative".into()));
        }
        Ok(CharacterTable {
            reps,
            values,
            conductor,
        })
    }

    /// The trivial character of conductor 1.
    pub fn trivial(reps: Vec<FractionalIdeal>, ib: &IntegralBasis) -> Result<Self> {
        let values = vec![Complex64::new(1.0, 0.0); reps.len()];
        Self::new(reps, values, FractionalIdeal::unit(ib))
    }

    pub fn reps(&self) -> &[FractionalIdeal] {
        &self.reps
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn conductor(&self) -> &FractionalIdeal {
        &self.conductor
    }
}

/// Decides which table class an integral ideal `b = (z) a_j f` lies in.
pub trait ClassResolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn resolve(
        &self,
        table: &CharacterTable,
        j: usize,
        b: &FractionalIdeal,
        z: &FieldElement,
        ib: &IntegralBasis,
    ) -> Result<usize>;
}

/// With trivial conductor `(z) a_j` is narrowly equivalent to `a_j`, since
/// every `z` in a cone is totally positive.
pub struct ConductorOneResolver;

impl ClassResolver for ConductorOneResolver {
    fn name(&self) -> &'static str {
        "conductor-one"
    }

    fn resolve(&self, table: &CharacterTable, j: usize, _b: &FractionalIdeal, _z: &FieldElement, ib: &IntegralBasis) -> Result<usize> {
        if table.conductor() != &FractionalIdeal::unit(ib) {
            return Err(Error::ClassResolutionMissing(
                "conductor-one resolution needs a trivial conductor".into(),
            ));
        }
        Ok(j)
    }
}

/// Explicit ideal → class index map.
pub struct TableResolver {
    classes: HashMap<FractionalIdeal, usize>,
}

impl TableResolver {
    pub fn new(entries: impl IntoIterator<Item = (FractionalIdeal, usize)>) -> Self {
        TableResolver {
            classes: entries.into_iter().collect(),
        }
    }
}

impl ClassResolver for TableResolver {
    fn name(&self) -> &'static str {
        "table"
    }

    fn resolve(&self, table: &CharacterTable, _j: usize, b: &FractionalIdeal, _z: &FieldElement, _ib: &IntegralBasis) -> Result<usize> {
        match self.classes.get(b) {
            Some(&i) if i < table.values().len() => Ok(i),
            Some(&i) => Err(Error::InvalidInput(format!("class index {i} out of range"))),
            None => Err(Error::ClassResolutionMissing(format!("hnf {:?} / {}", b.hnf(), b.den()))),
        }
    }
}

#[derive(Clone)]
pub struct ResolverRegistry {
    resolvers: BTreeMap<&'static str, Arc<dyn ClassResolver>>,
}

impl Default for ResolverRegistry {
    fn default() -> Self {
        let mut r = ResolverRegistry {
            resolvers: BTreeMap::new(),
        };
        r.register(Arc::new(ConductorOneResolver));
        r
    }
}

impl ResolverRegistry {
    pub fn register(&mut self, r: Arc<dyn ClassResolver>) {
        self.resolvers.insert(r.name(), r);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn ClassResolver>> {
        self.resolvers
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }
}
