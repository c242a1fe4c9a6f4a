//! Graded characters of the conjugation action of `G` on `kG`, graded by
//! `f∘π` for an epimorphism `π` onto a sum of cyclic groups.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::groups::{AbelianDecomposition, FiniteGroup};
use crate::qfactor::qsymbol;
use crate::scalars::{Field, TracePoly};

/// Fixed-point counts of conjugation by `g`, one per degree.
pub fn conj_graded_counts(group: &FiniteGroup, dec: &AbelianDecomposition, g: usize) -> Vec<u64> {
    let mut counts = Vec::new();
    for h in group.centralizer(g) {
        let d = dec.degree(h) as usize;
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    counts
}

/// `Σ_{a∈A} #Z_a t^{f(a)}` with `Z_a = Z(g) ∩ π^{-1}(a)`.
pub fn conj_graded_character(
    field: &Field,
    group: &FiniteGroup,
    dec: &AbelianDecomposition,
    g: usize,
) -> TracePoly {
    let counts: Vec<i64> = conj_graded_counts(group, dec, g)
        .into_iter()
        .map(|c| c as i64)
        .collect();
    TracePoly::from_ints(field, &counts)
}

/// `#Z_e · Π_j (n_j/m_j)_{t^{m_j}}`, where `m_j Z/n_j` is the image of `Z(g)`
/// in the `j`-th factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyPrediction {
    pub multiplier: u64,
    /// `(n_j/m_j, m_j)` for every factor, including trivial ones.
    pub factors: Vec<(u32, u32)>,
}

impl ToyPrediction {
    /// Nontrivial symbols `(N, k)` with `N ≥ 2`.
    pub fn symbols(&self) -> Vec<(u32, u32)> {
        self.factors
            .iter()
            .copied()
            .filter(|&(n, _)| n >= 2)
            .collect()
    }

    pub fn expand(&self, field: &Field) -> TracePoly {
        self.factors.iter().fold(
            TracePoly::from_ints(field, &[self.multiplier as i64]),
            |acc, &(n, m)| acc.mul(field, &qsymbol(field, n, &field.one(), m as usize)),
        )
    }
}

pub fn toy_prediction(group: &FiniteGroup, dec: &AbelianDecomposition, g: usize) -> ToyPrediction {
    let centralizer = group.centralizer(g);
    let multiplier = centralizer
        .iter()
        .filter(|&&h| dec.image(h).iter().all(|&c| c == 0))
        .count() as u64;
    let factors = dec
        .orders()
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let m = centralizer
                .iter()
                .fold(n, |acc, &h| acc.gcd(&dec.image(h)[j]));
            (n / m, m)
        })
        .collect();
    ToyPrediction {
        multiplier,
        factors,
    }
}

/// One row of the toy check: class representative, character and prediction.
#[derive(Clone, Debug)]
pub struct ToyRow {
    pub rep: usize,
    pub character: TracePoly,
    pub prediction: ToyPrediction,
    pub holds: bool,
}

/// Character against prediction for every conjugacy class.
pub fn toy_table(field: &Field, group: &FiniteGroup, dec: &AbelianDecomposition) -> Vec<ToyRow> {
    group
        .conjugacy_classes()
        .into_iter()
        .map(|class| {
            let rep = class[0];
            let character = conj_graded_character(field, group, dec, rep);
            let prediction = toy_prediction(group, dec, rep);
            ToyRow {
                holds: prediction.expand(field) == character,
                rep,
                character,
                prediction,
            }
        })
        .collect()
}

/// Degrees `deg(k·r) = f_2(k) + f_1(π_1(r))` from a grading of `ker π_1` and a
/// transversal `r ∈ R` of it.
pub fn refined_degrees(
    group: &FiniteGroup,
    outer: &AbelianDecomposition,
    kernel_degree: &dyn Fn(usize) -> Option<u32>,
    transversal: &[usize],
) -> Result<Vec<u32>> {
    let mut degrees = vec![None; group.order()];
    for &r in transversal {
        for k in 0..group.order() {
            let Some(dk) = kernel_degree(k) else { continue };
            if outer.image(k).iter().any(|&c| c != 0) {
                return Err(Error::InvalidGroup(
                    "kernel grading outside the kernel".into(),
                ));
            }
            let x = group.mul(k, r);
            if degrees[x].is_some() {
                return Err(Error::InvalidGroup(
                    "transversal meets a coset twice".into(),
                ));
            }
            degrees[x] = Some(dk + outer.degree(r));
        }
    }
    degrees
        .into_iter()
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::InvalidGroup("transversal misses a coset".into()))
}

/// Character of conjugation by `h` on `kG` for arbitrary element degrees.
pub fn character_for_degrees(
    field: &Field,
    group: &FiniteGroup,
    degrees: &[u32],
    h: usize,
) -> TracePoly {
    let top = degrees.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0i64; top + 1];
    for x in group.centralizer(h) {
        counts[degrees[x] as usize] += 1;
    }
    TracePoly::from_ints(field, &counts)
}
