//! Interchangeable cone-membership tests, selectable by name.
//!
//! All three decide `x ∈ C_σ` for the half-open cone; they differ only in
//! the route taken, which makes them mutual oracles.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::domain::SignedDomain;
use crate::error::{Error, Result};
use crate::geometry::{self, AffinePoint, Point};

pub trait MembershipStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn contains(&self, dom: &SignedDomain, cone: usize, x: &Point) -> Result<bool>;
}

/// Trace-dual coordinates checked against the half-open flags.
pub struct CoordinateMembership;

impl MembershipStrategy for CoordinateMembership {
    fn name(&self) -> &'static str {
        "coordinates"
    }

    fn contains(&self, dom: &SignedDomain, cone: usize, x: &Point) -> Result<bool> {
        dom.cone_contains(cone, x)
    }
}

/// `x` in the closed cone, and the segment from `e_n` to `x` pierces it.
pub struct PiercingMembership;

impl MembershipStrategy for PiercingMembership {
    fn name(&self) -> &'static str {
        "cone-piercing"
    }

    fn contains(&self, dom: &SignedDomain, cone: usize, x: &Point) -> Result<bool> {
        let field = dom.field();
        let gens = &dom.cones()[cone].generators;
        match geometry::pierces_cone(&Point::e_n(field), x, gens, field) {
            Err(Error::YNotInCone) => Ok(false),
            other => other,
        }
    }
}

/// `ℓ(x)` in the closed simplex, and the segment from the origin pierces it.
pub struct SimplexMembership;

impl MembershipStrategy for SimplexMembership {
    fn name(&self) -> &'static str {
        "simplex"
    }

    fn contains(&self, dom: &SignedDomain, cone: usize, x: &Point) -> Result<bool> {
        let field = dom.field();
        let s = &dom.cones()[cone].simplex;
        let y = AffinePoint::Projected(x.clone());
        let origin = AffinePoint::origin(field.degree() - 1);
        match geometry::pierces_simplex(&origin, &y, s, field) {
            Err(Error::YNotInSimplex) => Ok(false),
            other => other,
        }
    }
}

#[derive(Clone)]
pub struct MembershipRegistry {
    strategies: BTreeMap<&'static str, Arc<dyn MembershipStrategy>>,
}

impl Default for MembershipRegistry {
    fn default() -> Self {
        let mut r = MembershipRegistry {
            strategies: BTreeMap::new(),
        };
        r.register(Arc::new(CoordinateMembership));
        r.register(Arc::new(PiercingMembership));
        r.register(Arc::new(SimplexMembership));
        r
    }
}

impl MembershipRegistry {
    pub fn register(&mut self, s: Arc<dyn MembershipStrategy>) {
        self.strategies.insert(s.name(), s);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn MembershipStrategy>> {
        self.strategies
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.keys().copied().collect()
    }
}
