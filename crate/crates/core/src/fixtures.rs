//! Reference designs and known classification facts.
//!
//! `psi1`/`psi2` are two line spreads of PG(3,2) and `omega1`/`omega2` their
//! lifts to covering stars `St(5, 5, 3, 1)` with nucleus `{E}`. `psi3` is the
//! cyclic line spread of PG(5,2) from `w^6 + w + 1`; `psi4` agrees with it on
//! the first 18 lines and replaces the last three, giving a non-isomorphic
//! spread.

use crate::design::{Design, Spread, Star};
use crate::format::{parse, Notation};

pub const PSI1: &str = include_str!("../fixtures/psi1.txt");
pub const PSI2: &str = include_str!("../fixtures/psi2.txt");
pub const OMEGA1: &str = include_str!("../fixtures/omega1.txt");
pub const OMEGA2: &str = include_str!("../fixtures/omega2.txt");
pub const PSI3: &str = include_str!("../fixtures/psi3.txt");
pub const PSI4: &str = include_str!("../fixtures/psi4.txt");

/// Named fixtures, for lookup by name.
pub const CATALOG: &[(&str, &str)] = &[
    ("psi1", PSI1),
    ("psi2", PSI2),
    ("omega1", OMEGA1),
    ("omega2", OMEGA2),
    ("psi3", PSI3),
    ("psi4", PSI4),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
}

pub fn design(name: &str) -> Option<Design> {
    lookup(name).map(|text| parse(text, Notation::Letters).expect("fixtures are valid"))
}

fn spread(text: &str) -> Spread {
    match parse(text, Notation::Letters).expect("fixtures are valid") {
        Design::Spread(s) => s,
        Design::Star(_) => unreachable!("fixture is a spread"),
    }
}

fn star(text: &str) -> Star {
    match parse(text, Notation::Letters).expect("fixtures are valid") {
        Design::Star(s) => s,
        Design::Spread(_) => unreachable!("fixture is a star"),
    }
}

pub fn psi1() -> Spread {
    spread(PSI1)
}

pub fn psi2() -> Spread {
    spread(PSI2)
}

pub fn omega1() -> Star {
    star(OMEGA1)
}

pub fn omega2() -> Star {
    star(OMEGA2)
}

pub fn psi3() -> Spread {
    spread(PSI3)
}

pub fn psi4() -> Spread {
    spread(PSI4)
}

/// Known number of isomorphism classes of `(h-1)`-spreads of `P_u`, where
/// it is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub u: usize,
    pub h: usize,
    pub classes: u64,
}

/// Literature values: every balanced spread with `u <= 5` is unique up to
/// isomorphism (trivial for `u <= 3` and `u = 5`), the 2-spreads of PG(5,2)
/// form one class and the line spreads of PG(5,2) form 131044.
pub const KNOWN_CLASS_COUNTS: &[ClassCount] = &[
    ClassCount {
        u: 1,
        h: 1,
        classes: 1,
    },
    ClassCount {
        u: 2,
        h: 1,
        classes: 1,
    },
    ClassCount {
        u: 2,
        h: 2,
        classes: 1,
    },
    ClassCount {
        u: 3,
        h: 1,
        classes: 1,
    },
    ClassCount {
        u: 3,
        h: 3,
        classes: 1,
    },
    ClassCount {
        u: 4,
        h: 1,
        classes: 1,
    },
    ClassCount {
        u: 4,
        h: 2,
        classes: 1,
    },
    ClassCount {
        u: 4,
        h: 4,
        classes: 1,
    },
    ClassCount {
        u: 5,
        h: 1,
        classes: 1,
    },
    ClassCount {
        u: 5,
        h: 5,
        classes: 1,
    },
    ClassCount {
        u: 6,
        h: 3,
        classes: 1,
    },
    ClassCount {
        u: 6,
        h: 2,
        classes: 131_044,
    },
];

pub fn known_class_count(u: usize, h: usize) -> Option<u64> {
    KNOWN_CLASS_COUNTS
        .iter()
        .find(|c| c.u == u && c.h == h)
        .map(|c| c.classes)
}
