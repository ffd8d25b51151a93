//! Frozen test fields with totally positive unit systems.
//!
//! Units are power-basis coordinates. Each system generates a finite-index
//! subgroup of the totally positive units; the quadratic ones and the
//! `x^3 - 3x - 1` pair generate all of it.

use crate::error::Result;
use crate::field::{FieldElement, NumberField};

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub poly: &'static [i64],
    pub units: &'static [&'static [i64]],
}

impl Fixture {
    pub fn field(&self) -> Result<NumberField> {
        NumberField::new(self.poly)
    }

    pub fn units(&self) -> Vec<FieldElement> {
        self.units.iter().map(|u| FieldElement::from_ints(u)).collect()
    }
}

pub const SQRT2: Fixture = Fixture {
    name: "sqrt2",
    poly: &[-2, 0, 1],
    units: &[&[3, 2]],
};

pub const SQRT3: Fixture = Fixture {
    name: "sqrt3",
    poly: &[-3, 0, 1],
    units: &[&[2, 1]],
};

/// θ is the golden ratio; the unit is θ² = θ + 1.
pub const SQRT5: Fixture = Fixture {
    name: "sqrt5",
    poly: &[-1, -1, 1],
    units: &[&[1, 1]],
};

/// Discriminant 81; the units are θ² and (θ + 1)².
pub const CUBIC81: Fixture = Fixture {
    name: "cubic81",
    poly: &[-1, -3, 0, 1],
    units: &[&[0, 0, 1], &[1, 2, 1]],
};

/// Discriminant 148.
pub const CUBIC148: Fixture = Fixture {
    name: "cubic148",
    poly: &[1, -3, -1, 1],
    units: &[&[0, 0, 1], &[3, 2, 0]],
};

/// Discriminant 725. One cone of this system has weight -1, so the domain
/// is signed but not a true fundamental domain.
pub const QUARTIC725: Fixture = Fixture {
    name: "quartic725",
    poly: &[1, 1, -3, -1, 1],
    units: &[&[0, 0, 1, 0], &[1, -2, 1, 0], &[1, 2, 1, 0]],
};

/// Three totally positive units with a multiplicative relation.
pub const DEPENDENT_QUARTIC: Fixture = Fixture {
    name: "dependent-quartic",
    poly: &[2, 0, -4, 0, 1],
    units: &[&[-1, 0, 2, 0], &[1, -2, 1, 0], &[1, 2, 1, 0]],
};

pub const ALL: [Fixture; 6] = [SQRT2, SQRT3, SQRT5, CUBIC81, CUBIC148, QUARTIC725];

pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.iter()
        .chain(std::iter::once(&DEPENDENT_QUARTIC))
        .find(|f| f.name == name)
        .copied()
}
