//! One-dimensional characters of centralizer subgroups.

use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug)]
pub struct CentralizerCharacter {
    rep: usize,
    centralizer: Vec<usize>,
    values: HashMap<usize, Scalar>,
}

impl CentralizerCharacter {
    /// Extends values given on generators of `Cent(rep)` to the whole centralizer.
    ///
    /// Fails if an element lies outside the centralizer, if the elements do not
    /// generate it, or if the extension is not multiplicative.
    pub fn from_generator_values(
        group: &FiniteGroup,
        field: &Field,
        rep: usize,
        assignments: &[(usize, Scalar)],
    ) -> Result<CentralizerCharacter> {
        let centralizer = group.centralizer(rep);
        for (h, _) in assignments {
            if !group.commutes(rep, *h) {
                return Err(Error::NotMultiplicative(format!(
                    "{} does not centralize {}",
                    group.format_element(*h),
                    group.format_element(rep)
                )));
            }
        }
        let mut values: HashMap<usize, Scalar> = HashMap::from([(0, field.one())]);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for (h, v) in assignments {
                let y = group.mul(x, *h);
                let val = field.mul(&values[&x], v);
                match values.get(&y) {
                    Some(existing) if *existing != val => {
                        return Err(Error::NotMultiplicative(format!(
                            "conflicting values {} and {} at {}",
                            field.format(existing),
                            field.format(&val),
                            group.format_element(y)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        values.insert(y, val);
                        stack.push(y);
                    }
                }
            }
        }
        if values.len() != centralizer.len() {
            return Err(Error::NotMultiplicative(format!(
                "given elements generate a subgroup of order {} inside a centralizer of order {}",
                values.len(),
                centralizer.len()
            )));
        }
        let chi = CentralizerCharacter {
            rep,
            centralizer,
            values,
        };
        chi.check(group, field)?;
        Ok(chi)
    }

    /// The trivial character of `Cent(rep)`.
    pub fn trivial(group: &FiniteGroup, field: &Field, rep: usize) -> CentralizerCharacter {
        let centralizer = group.centralizer(rep);
        let values = centralizer.iter().map(|&h| (h, field.one())).collect();
        CentralizerCharacter {
            rep,
            centralizer,
            values,
        }
    }

    /// Exhaustive multiplicativity and root-of-unity check.
    pub fn check(&self, group: &FiniteGroup, field: &Field) -> Result<()> {
        if !field.is_one(&self.values[&0]) {
            return Err(Error::NotMultiplicative("χ(e) ≠ 1".into()));
        }
        let n = self.centralizer.len() as i64;
        for &a in &self.centralizer {
            if !field.is_one(&field.pow(&self.values[&a], n)) {
                return Err(Error::NotMultiplicative(format!(
                    "χ({}) is not a root of unity of order dividing {n}",
                    group.format_element(a)
                )));
            }
            for &b in &self.centralizer {
                let ab = group.mul(a, b);
                if self.values[&ab] != field.mul(&self.values[&a], &self.values[&b]) {
                    return Err(Error::NotMultiplicative(format!(
                        "χ({}·{})",
                        group.format_element(a),
                        group.format_element(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rep(&self) -> usize {
        self.rep
    }

    pub fn centralizer(&self) -> &[usize] {
        &self.centralizer
    }

    /// `χ(h)`; panics if `h` is not in the centralizer.
    pub fn value(&self, h: usize) -> &Scalar {
        &self.values[&h]
    }

    /// Restriction to the centralizer inside a subgroup containing `rep`.
    pub fn restrict(&self, group: &FiniteGroup, subgroup: &[usize]) -> CentralizerCharacter {
        let centralizer: Vec<usize> = self
            .centralizer
            .iter()
            .copied()
            .filter(|h| subgroup.binary_search(h).is_ok())
            .collect();
        debug_assert!(centralizer.iter().all(|&h| group.commutes(h, self.rep)));
        let values = centralizer
            .iter()
            .map(|&h| (h, self.values[&h].clone()))
            .collect();
        CentralizerCharacter {
            rep: self.rep,
            centralizer,
            values,
        }
    }
}
