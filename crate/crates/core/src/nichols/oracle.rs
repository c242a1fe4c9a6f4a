//! Layer dimensions from the rank of the quantum symmetrizer.
//!
//! `S_n = Σ_{σ∈S_n} T_σ`, where `T_σ` lifts a reduced word of `σ` to the
//! braiding. Splitting off minimal coset representatives gives
//! `S_n = S_{n−1}·(1 + c_{n−1} + c_{n−1}c_{n−2} + … + c_{n−1}⋯c_1)`,
//! which is what is applied here. The span of a braid orbit of basis words is
//! invariant, so ranks are computed orbit by orbit.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::braidings::GroupTypeBraiding;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::scalars::{Field, Scalar};

/// Largest `|B|^n` accepted by [`symmetrizer_rank_oracle`].
pub const ORACLE_SIZE_CAP: u128 = 20736;

type Word = Vec<u16>;

/// `dim B(V)_n` as the rank of the `n`-th quantum symmetrizer.
pub fn symmetrizer_rank_oracle(b: &GroupTypeBraiding, n: usize) -> Result<usize> {
    let size = (b.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > ORACLE_SIZE_CAP {
        return Err(Error::OracleTooLarge {
            size,
            cap: ORACLE_SIZE_CAP,
        });
    }
    if n == 0 {
        return Ok(1);
    }
    let orbits = braid_orbits(b, n);
    let ranks: Vec<usize> = orbits
        .par_iter()
        .map(|orbit| orbit_rank(b, orbit))
        .collect();
    Ok(ranks.into_iter().sum())
}

fn braid_orbits(b: &GroupTypeBraiding, n: usize) -> Vec<Vec<Word>> {
    let nb = b.len();
    let total = nb.pow(n as u32);
    let decode = |mut k: usize| -> Word {
        let mut w = vec![0u16; n];
        for slot in w.iter_mut().rev() {
            *slot = (k % nb) as u16;
            k /= nb;
        }
        w
    };
    let encode = |w: &Word| w.iter().fold(0usize, |acc, &x| acc * nb + x as usize);
    let mut seen = vec![false; total];
    let mut orbits = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![decode(start)];
        let mut k = 0;
        while k < orbit.len() {
            for p in 0..n.saturating_sub(1) {
                let mut w = orbit[k].clone();
                let (x, y) = (w[p] as usize, w[p + 1] as usize);
                w[p] = b.act(x, y) as u16;
                w[p + 1] = x as u16;
                let code = encode(&w);
                if !seen[code] {
                    seen[code] = true;
                    orbit.push(w);
                }
            }
            k += 1;
        }
        orbits.push(orbit);
    }
    orbits
}

/// `c` at position `p` applied to a linear combination of words.
fn apply_c(
    f: &Field,
    b: &GroupTypeBraiding,
    v: &HashMap<Word, Scalar>,
    p: usize,
) -> HashMap<Word, Scalar> {
    let mut out = HashMap::with_capacity(v.len());
    for (w, s) in v {
        let (x, y) = (w[p] as usize, w[p + 1] as usize);
        let mut u = w.clone();
        u[p] = b.act(x, y) as u16;
        u[p + 1] = x as u16;
        out.insert(u, f.mul(s, b.q(x, y)));
    }
    out
}

fn add_into(f: &Field, acc: &mut HashMap<Word, Scalar>, v: HashMap<Word, Scalar>) {
    for (w, s) in v {
        match acc.get_mut(&w) {
            Some(slot) => *slot = f.add(slot, &s),
            None => {
                acc.insert(w, s);
            }
        }
    }
}

/// `T_k = 1 + c_{k−1} + c_{k−1}c_{k−2} + … + c_{k−1}⋯c_1` on the first `k` slots.
fn apply_coset_sum(
    f: &Field,
    b: &GroupTypeBraiding,
    v: &HashMap<Word, Scalar>,
    k: usize,
) -> HashMap<Word, Scalar> {
    let mut acc = v.clone();
    // term_j = c_{k−1}⋯c_j (v), built by applying c_j first
    for j in 1..k {
        let mut term = v.clone();
        for p in (j - 1)..(k - 1) {
            term = apply_c(f, b, &term, p);
        }
        add_into(f, &mut acc, term);
    }
    acc.retain(|_, s| !f.is_zero(s));
    acc
}

/// `S_n(w)` for a basis word.
pub(crate) fn symmetrize(b: &GroupTypeBraiding, w: &[u16]) -> HashMap<Word, Scalar> {
    let f = b.field();
    let mut v = HashMap::from([(w.to_vec(), f.one())]);
    for k in (2..=w.len()).rev() {
        v = apply_coset_sum(f, b, &v, k);
    }
    v
}

fn orbit_rank(b: &GroupTypeBraiding, orbit: &[Word]) -> usize {
    let f = b.field();
    let index: HashMap<&Word, u32> = orbit
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i as u32))
        .collect();
    let mut ech = Echelon::new(f, orbit.len());
    for w in orbit {
        let mut v: SparseVec = symmetrize(b, w)
            .into_iter()
            .map(|(u, s)| (index[&u], s))
            .collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        ech.insert(&v);
        if ech.rank() == orbit.len() {
            break;
        }
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidings::from_orbits;
    use crate::groups::{catalog, CentralizerCharacter};
    use crate::scalars::FieldSpec;

    fn s3() -> GroupTypeBraiding {
        let g = catalog("S3").unwrap();
        let f = Field::new(FieldSpec::rationals()).unwrap();
        let t = g.parse_element("(1 2)").unwrap();
        let chi =
            CentralizerCharacter::from_generator_values(&g, &f, t, &[(t, f.from_int(-1))]).unwrap();
        from_orbits(&g, &f, &[(t, chi)]).unwrap().0
    }

    /// Literal `Σ_σ T_σ(w)` with bubble-sort reduced words.
    fn literal_symmetrizer(b: &GroupTypeBraiding, w: &[u16]) -> HashMap<Word, Scalar> {
        let f = b.field();
        let n = w.len();
        let mut acc = HashMap::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            // reduced word: bubble-sort perm back to the identity, recording swaps
            let mut p = perm.clone();
            let mut swaps = Vec::new();
            for i in 0..n {
                for j in 0..n - 1 - i {
                    if p[j] > p[j + 1] {
                        p.swap(j, j + 1);
                        swaps.push(j);
                    }
                }
            }
            let (s, u) = b.apply_word(&w.iter().map(|&x| x as usize).collect::<Vec<_>>(), &swaps);
            let u: Word = u.into_iter().map(|x| x as u16).collect();
            add_into(f, &mut acc, HashMap::from([(u, s)]));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        acc.retain(|_, s| !f.is_zero(s));
        acc
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn factorized_symmetrizer_matches_literal_sum() {
        let b = s3();
        for w in [
            vec![0u16, 1, 2],
            vec![0, 0, 1, 2],
            vec![2, 1, 0, 1],
            vec![0, 1],
        ] {
            assert_eq!(symmetrize(&b, &w), literal_symmetrizer(&b, &w), "{w:?}");
        }
    }

    #[test]
    fn s3_ranks() {
        let b = s3();
        let dims: Vec<usize> = (0..=5)
            .map(|n| symmetrizer_rank_oracle(&b, n).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 3, 4, 3, 1, 0]);
    }

    #[test]
    fn diagonal_a2_third_degree() {
        let f = Field::new(FieldSpec::rationals()).unwrap();
        let m = vec![
            vec![f.from_int(-1), f.from_int(1)],
            vec![f.from_int(-1), f.from_int(-1)],
        ];
        let b = GroupTypeBraiding::diagonal(f, m).unwrap();
        assert_eq!(symmetrizer_rank_oracle(&b, 3).unwrap(), 2);
    }

    #[test]
    fn size_cap_enforced() {
        let b = s3();
        assert!(matches!(
            symmetrizer_rank_oracle(&b, 10),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
