//! Named groups with fixed permutation realizations.
//!
//! | name      | generators                                   | relations checked                          |
//! |-----------|----------------------------------------------|--------------------------------------------|
//! | `S3`      | `g1=(1 2)`, `g2=(1 2 3)`                     | order 6                                    |
//! | `S4`      | `g1=(1 2)`, `g2=(1 2 3 4)`                   | order 24                                   |
//! | `A4`      | `g1=(1 2 3)`, `g2=(1 2)(3 4)`                | order 12                                   |
//! | `D4`      | `a=(1 2 3 4)`, `b=(2 4)`                     | `a^4 = b^2 = (ab)^2 = e`                   |
//! | `Z3xS3`   | `g1=(1 2 3)(4 5)`, `g2=(1 2 3)(5 6)`         | `g1^6, g2^6, (g1g2)^3, g1^2 g2^-2`         |
//! | `A4xZ2`   | `g1=(1 2 3)(5 6)`, `g2=(1 4 2)(5 6)`         | `g1^6, g2^6, [g1^3,g2], (g1g2)^3, (g1g2^2)^2` |
//! | `SL(2,3)` | 2×2 matrices over F_3 on the 8 nonzero vectors | `a^3 = b^3 = (ab)^2`                     |
//! | `G20`     | affine maps of F_5, `a=(2 4 5 3)`, `b=(1 2 5 4)` | `a^4, b^4, ab^3a^2b^2`                 |
//!
//! The nonzero vectors of F_3² are numbered `(0,1), (0,2), (1,0), (1,1), (1,2),
//! (2,0), (2,1), (2,2)`; `a = [[0,1],[2,1]]` and `b = [[0,2],[1,1]]` (row-major).

use super::{parse_cycles, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

pub const CATALOG_NAMES: [&str; 8] = ["S3", "S4", "A4", "D4", "Z3xS3", "A4xZ2", "SL(2,3)", "G20"];

struct Entry {
    name: &'static str,
    points: usize,
    generators: &'static [(&'static str, &'static str)],
    order: usize,
    identities: &'static [&'static str],
    equalities: &'static [(&'static str, &'static str)],
}

const ENTRIES: [Entry; 8] = [
    Entry {
        name: "S3",
        points: 3,
        generators: &[("g1", "(1 2)"), ("g2", "(1 2 3)")],
        order: 6,
        identities: &["g1^2", "g2^3", "g1g2g1g2"],
        equalities: &[],
    },
    Entry {
        name: "S4",
        points: 4,
        generators: &[("g1", "(1 2)"), ("g2", "(1 2 3 4)")],
        order: 24,
        identities: &["g1^2", "g2^4", "g1g2g1g2g1g2"],
        equalities: &[],
    },
    Entry {
        name: "A4",
        points: 4,
        generators: &[("g1", "(1 2 3)"), ("g2", "(1 2)(3 4)")],
        order: 12,
        identities: &["g1^3", "g2^2", "g1g2g1g2g1g2"],
        equalities: &[],
    },
    Entry {
        name: "D4",
        points: 4,
        generators: &[("a", "(1 2 3 4)"), ("b", "(2 4)")],
        order: 8,
        identities: &["a^4", "b^2", "abab"],
        equalities: &[("ab", "ba^3")],
    },
    Entry {
        name: "Z3xS3",
        points: 6,
        generators: &[("g1", "(1 2 3)(4 5)"), ("g2", "(1 2 3)(5 6)")],
        order: 18,
        identities: &["g1^6", "g2^6", "g1g2g1g2g1g2", "g1^2g2^-2"],
        equalities: &[],
    },
    Entry {
        name: "A4xZ2",
        points: 6,
        generators: &[("g1", "(1 2 3)(5 6)"), ("g2", "(1 4 2)(5 6)")],
        order: 24,
        identities: &[
            "g1^6",
            "g2^6",
            "g1^3g2g1^-3g2^-1",
            "g1g2g1g2g1g2",
            "g1g2^2g1g2^2",
        ],
        equalities: &[],
    },
    Entry {
        name: "SL(2,3)",
        points: 8,
        generators: &[("a", "(1 4 3 2 8 6)(5 7)"), ("b", "(1 7 6 2 5 3)(4 8)")],
        order: 24,
        identities: &[],
        equalities: &[("a^3", "b^3"), ("b^3", "abab")],
    },
    Entry {
        name: "G20",
        points: 5,
        generators: &[("a", "(2 4 5 3)"), ("b", "(1 2 5 4)")],
        order: 20,
        identities: &["a^4", "b^4", "ab^3a^2b^2"],
        equalities: &[],
    },
];

/// Loads a catalog group and asserts its defining relations and order.
pub fn catalog(name: &str) -> Result<FiniteGroup> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| {
            Error::InvalidGroup(format!(
                "unknown catalog group `{name}` (known: {})",
                CATALOG_NAMES.join(", ")
            ))
        })?;
    let gens = entry
        .generators
        .iter()
        .map(|(_, c)| parse_cycles(c, entry.points))
        .collect::<Result<Vec<_>>>()?;
    let names = entry
        .generators
        .iter()
        .map(|(n, _)| n.to_string())
        .collect();
    let g = FiniteGroup::from_generators(entry.name, gens, names, DEFAULT_ORDER_CAP)?;
    if g.order() != entry.order {
        return Err(Error::RelationViolated(format!(
            "{} has order {}, expected {}",
            entry.name,
            g.order(),
            entry.order
        )));
    }
    for w in entry.identities {
        g.assert_identity(w)?;
    }
    for (a, b) in entry.equalities {
        g.assert_equal(a, b)?;
    }
    Ok(g)
}
