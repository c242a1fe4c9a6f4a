//! Epimorphisms onto abelian groups written as sums of cyclic factors.

use super::FiniteGroup;
use crate::error::{Error, Result};

/// `π: G → ⊕_j Z/n_j`, stored as the coordinate vector of every element.
///
/// The integer grading `f(π(g))` sums the canonical lifts `0..n_j` of the
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDecomposition {
    orders: Vec<u32>,
    images: Vec<Vec<u32>>,
}

impl AbelianDecomposition {
    /// `G/[G,G]` with invariant factors in weakly decreasing order.
    pub fn abelianization(g: &FiniteGroup) -> AbelianDecomposition {
        let n = g.order();
        let derived = g.commutator_subgroup();
        // coset label = smallest element of g·D
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let label = reps.len();
            reps.push(x);
            for &d in &derived {
                coset_of[g.mul(x, d)] = label;
            }
        }
        let m = reps.len();
        let qmul = |a: usize, b: usize| coset_of[g.mul(reps[a], reps[b])];
        let qpow = |a: usize, k: usize| (0..k).fold(0, |acc, _| qmul(acc, a));

        let mut chosen: Vec<(usize, u32)> = Vec::new();
        let mut span = vec![false; m];
        span[0] = true;
        let mut span_size = 1;
        while span_size < m {
            let order_mod = |x: usize| -> usize {
                let mut y = x;
                let mut k = 1;
                while !span[y] {
                    y = qmul(y, x);
                    k += 1;
                }
                k
            };
            let target = (0..m).map(order_mod).max().unwrap();
            let x = (0..m)
                .find(|&x| order_mod(x) == target && qpow(x, target) == 0)
                .expect("finite abelian groups split off cyclic factors of maximal order");
            chosen.push((x, target as u32));
            let old: Vec<usize> = (0..m).filter(|&y| span[y]).collect();
            let mut p = 0;
            for _ in 0..target {
                for &y in &old {
                    span[qmul(y, p)] = true;
                }
                p = qmul(p, x);
            }
            span_size = span.iter().filter(|&&b| b).count();
        }

        // coordinates of every quotient element
        let orders: Vec<u32> = chosen.iter().map(|&(_, o)| o).collect();
        let mut coords_of = vec![Vec::new(); m];
        let mut coords = vec![0u32; orders.len()];
        loop {
            let elem = chosen
                .iter()
                .zip(&coords)
                .fold(0, |acc, (&(x, _), &c)| qmul(acc, qpow(x, c as usize)));
            coords_of[elem] = coords.clone();
            if !increment(&mut coords, &orders) {
                break;
            }
        }
        let images = (0..n).map(|x| coords_of[coset_of[x]].clone()).collect();
        AbelianDecomposition { orders, images }
    }

    /// Homomorphism defined by the images of the group's generators.
    pub fn from_generator_images(
        g: &FiniteGroup,
        orders: Vec<u32>,
        generator_images: &[Vec<u32>],
    ) -> Result<AbelianDecomposition> {
        if generator_images.len() != g.generators().len()
            || generator_images.iter().any(|v| v.len() != orders.len())
            || orders.contains(&0)
        {
            return Err(Error::InvalidGroup(
                "one image per generator, one coordinate per factor".into(),
            ));
        }
        let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
            a.iter()
                .zip(b)
                .zip(&orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect()
        };
        let images: Vec<Vec<u32>> = (0..g.order())
            .map(|x| {
                g.word_of(x).iter().fold(vec![0; orders.len()], |acc, &k| {
                    add(&acc, &generator_images[k])
                })
            })
            .collect();
        for a in 0..g.order() {
            for b in 0..g.order() {
                if images[g.mul(a, b)] != add(&images[a], &images[b]) {
                    return Err(Error::InvalidGroup(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
            }
        }
        let mut hit: Vec<&Vec<u32>> = images.iter().collect();
        hit.sort();
        hit.dedup();
        if hit.len() as u64 != orders.iter().map(|&o| o as u64).product::<u64>() {
            return Err(Error::InvalidGroup("homomorphism is not surjective".into()));
        }
        Ok(AbelianDecomposition { orders, images })
    }

    /// Cyclic factor orders `n_j`.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Coordinates of `π(g)`.
    pub fn image(&self, g: usize) -> &[u32] {
        &self.images[g]
    }

    /// `f(π(g))`, the sum of canonical lifts.
    pub fn degree(&self, g: usize) -> u32 {
        self.images[g].iter().sum()
    }

    pub fn quotient_order(&self) -> u64 {
        self.orders.iter().map(|&o| o as u64).product()
    }
}

fn increment(coords: &mut [u32], orders: &[u32]) -> bool {
    for (c, &o) in coords.iter_mut().zip(orders) {
        *c += 1;
        if *c < o {
            return true;
        }
        *c = 0;
    }
    false
}
