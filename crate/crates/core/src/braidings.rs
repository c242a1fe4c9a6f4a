//! Braided vector spaces of group type: `c(e_x ⊗ e_y) = q_{x,y} e_{x▷y} ⊗ e_x`.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groups::{CentralizerCharacter, FiniteGroup};
use crate::scalars::{Field, Scalar};

/// Homogeneity data for letters: the Nichols ideal is homogeneous for it.
#[derive(Clone, Debug)]
enum Grading {
    /// Letters graded by group elements; keys are element indices.
    Group {
        order: usize,
        table: Vec<u32>,
        letter: Vec<u32>,
    },
    /// Letters graded by `Z^B`; keys pack 6-bit letter counts.
    Counts,
    /// No usable grading beyond word length.
    None,
}

#[derive(Clone, Debug)]
pub struct GroupTypeBraiding {
    field: Field,
    labels: Vec<String>,
    rack: Vec<u32>,
    coeffs: Vec<Scalar>,
    grading: Grading,
}

impl GroupTypeBraiding {
    /// General constructor from `x▷y` and `q_{x,y}` tables (row `x`, column `y`).
    pub fn new(
        field: Field,
        labels: Vec<String>,
        rack: Vec<Vec<usize>>,
        coeffs: Vec<Vec<Scalar>>,
    ) -> Result<GroupTypeBraiding> {
        let n = labels.len();
        if rack.len() != n
            || coeffs.len() != n
            || rack.iter().any(|r| r.len() != n)
            || coeffs.iter().any(|r| r.len() != n)
        {
            return Err(Error::InvalidBraiding("tables must be |B|×|B|".into()));
        }
        let b = GroupTypeBraiding {
            field,
            labels,
            rack: rack.iter().flatten().map(|&y| y as u32).collect(),
            coeffs: coeffs.into_iter().flatten().collect(),
            grading: if n <= 10 {
                Grading::Counts
            } else {
                Grading::None
            },
        };
        if b.rack.iter().any(|&y| y as usize >= n) {
            return Err(Error::InvalidBraiding("rack value out of range".into()));
        }
        b.validate()?;
        Ok(b)
    }

    /// Diagonal braiding `c(x_i ⊗ x_j) = q_{ij} x_j ⊗ x_i` with the trivial rack.
    pub fn diagonal(field: Field, matrix: Vec<Vec<Scalar>>) -> Result<GroupTypeBraiding> {
        let n = matrix.len();
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        let rack = (0..n).map(|_| (0..n).collect()).collect();
        Self::new(field, labels, rack, matrix)
    }

    /// Rack bijectivity, self-distributivity, nonzero coefficients and the braid relation.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let f = &self.field;
        for x in 0..n {
            let mut row: Vec<usize> = (0..n).map(|y| self.act(x, y)).collect();
            row.sort_unstable();
            if row.iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::InvalidBraiding(format!(
                    "{}▷− is not a bijection",
                    self.labels[x]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if f.is_zero(self.q(x, y)) {
                    return Err(Error::InvalidBraiding(format!(
                        "q({},{}) = 0",
                        self.labels[x], self.labels[y]
                    )));
                }
                for z in 0..n {
                    if self.act(x, self.act(y, z)) != self.act(self.act(x, y), self.act(x, z)) {
                        return Err(Error::InvalidBraiding(
                            "rack is not self-distributive".into(),
                        ));
                    }
                }
            }
        }
        self.check_braid_relation()
    }

    /// `(c⊗1)(1⊗c)(c⊗1) = (1⊗c)(c⊗1)(1⊗c)` on every basis triple.
    pub fn check_braid_relation(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let w = [x, y, z];
                    let lhs = self.apply_word(&w, &[0, 1, 0]);
                    let rhs = self.apply_word(&w, &[1, 0, 1]);
                    if lhs != rhs {
                        return Err(Error::InvalidBraiding(format!(
                            "braid relation fails on ({}, {}, {})",
                            self.labels[x], self.labels[y], self.labels[z]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies `c` at the given positions, rightmost first, to a basis word.
    pub fn apply_word(&self, word: &[usize], positions: &[usize]) -> (Scalar, Vec<usize>) {
        let mut w = word.to_vec();
        let mut s = self.field.one();
        for &i in positions.iter().rev() {
            let (x, y) = (w[i], w[i + 1]);
            s = self.field.mul(&s, self.q(x, y));
            w[i] = self.act(x, y);
            w[i + 1] = x;
        }
        (s, w)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `x▷y`
    #[inline]
    pub fn act(&self, x: usize, y: usize) -> usize {
        self.rack[x * self.len() + y] as usize
    }

    /// The unique `z` with `x▷z = y`.
    pub fn act_inverse(&self, x: usize, y: usize) -> usize {
        (0..self.len()).find(|&z| self.act(x, z) == y).unwrap()
    }

    /// `q_{x,y}`
    #[inline]
    pub fn q(&self, x: usize, y: usize) -> &Scalar {
        &self.coeffs[x * self.len() + y]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.act(x, y) == y))
    }

    /// Grading key of the empty word.
    pub fn unit_key(&self) -> u64 {
        0
    }

    /// Grading key of `e_x · w` from the key of `w`.
    #[inline]
    pub fn key_left_mul(&self, x: usize, key: u64) -> u64 {
        match &self.grading {
            Grading::Group {
                order,
                table,
                letter,
            } => table[letter[x] as usize * order + key as usize] as u64,
            Grading::Counts => key + (1u64 << (6 * x)),
            Grading::None => 0,
        }
    }

    /// Content hash identifying the braiding over its field.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.spec().to_string().as_bytes());
        h.update(format!("|{}|", self.len()).as_bytes());
        for r in &self.rack {
            h.update(r.to_le_bytes());
        }
        for c in &self.coeffs {
            h.update(self.field.encode(c).as_bytes());
            h.update(b";");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Restriction to a subset of letters closed under the rack.
    pub fn restrict(&self, letters: &[usize]) -> Result<GroupTypeBraiding> {
        let pos = |y: usize| letters.iter().position(|&l| l == y);
        let mut rack = Vec::new();
        let mut coeffs = Vec::new();
        for &x in letters {
            let mut rrow = Vec::new();
            let mut crow = Vec::new();
            for &y in letters {
                rrow.push(pos(self.act(x, y)).ok_or_else(|| {
                    Error::InvalidBraiding("letter subset is not rack-closed".into())
                })?);
                crow.push(self.q(x, y).clone());
            }
            rack.push(rrow);
            coeffs.push(crow);
        }
        let labels = letters.iter().map(|&x| self.labels[x].clone()).collect();
        let mut b = Self::new(self.field.clone(), labels, rack, coeffs)?;
        if let Grading::Group {
            order,
            table,
            letter,
        } = &self.grading
        {
            b.grading = Grading::Group {
                order: *order,
                table: table.clone(),
                letter: letters.iter().map(|&x| letter[x]).collect(),
            };
        }
        Ok(b)
    }
}

/// One summand `O_g^χ` of a realization.
#[derive(Clone, Debug)]
pub struct OrbitBlock {
    pub rep: usize,
    pub character: CentralizerCharacter,
    /// Conjugacy class of `rep`, in group element order.
    pub class: Vec<usize>,
    /// `s_i` with `s_i · rep · s_i^{-1} = class[i]`.
    pub cosets: Vec<usize>,
    /// Index of the first letter of this block.
    pub offset: usize,
}

/// Yetter–Drinfeld data behind a group-type braiding.
#[derive(Clone, Debug)]
pub struct YDRealization {
    group: FiniteGroup,
    blocks: Vec<OrbitBlock>,
    /// `(block, position in class)` per letter.
    letters: Vec<(usize, usize)>,
}

impl YDRealization {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn blocks(&self) -> &[OrbitBlock] {
        &self.blocks
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// Group element grading letter `x`.
    pub fn letter_element(&self, x: usize) -> usize {
        let (b, i) = self.letters[x];
        self.blocks[b].class[i]
    }

    /// Letter of block `b` graded by `h`.
    pub fn letter_of(&self, b: usize, h: usize) -> Option<usize> {
        let blk = &self.blocks[b];
        blk.class.binary_search(&h).ok().map(|i| blk.offset + i)
    }

    /// `t.v_x = λ v_{σx}` with `λ = χ(s_j^{-1} t s_i)`.
    pub fn act_on_letter(&self, t: usize, x: usize) -> (usize, Scalar) {
        let g = &self.group;
        let (b, i) = self.letters[x];
        let blk = &self.blocks[b];
        let h2 = g.conjugate(t, blk.class[i]);
        let j = blk
            .class
            .binary_search(&h2)
            .expect("class is conjugation closed");
        let c = g.mul(g.mul(g.inv(blk.cosets[j]), t), blk.cosets[i]);
        (blk.offset + j, blk.character.value(c).clone())
    }
}

/// Builds `⊕_k O_{g_k}^{χ_k}` and its braiding.
pub fn from_orbits(
    group: &FiniteGroup,
    field: &Field,
    blocks: &[(usize, CentralizerCharacter)],
) -> Result<(GroupTypeBraiding, YDRealization)> {
    let mut out_blocks = Vec::new();
    let mut letters = Vec::new();
    let mut labels = Vec::new();
    for (k, (rep, chi)) in blocks.iter().enumerate() {
        if chi.rep() != *rep {
            return Err(Error::InvalidBraiding(format!(
                "block {k}: character belongs to a different representative"
            )));
        }
        chi.check(group, field)?;
        let class = group.class_of(*rep);
        let cosets: Vec<usize> = class
            .iter()
            .map(|&h| {
                (0..group.order())
                    .find(|&s| group.conjugate(s, *rep) == h)
                    .unwrap()
            })
            .collect();
        let offset = letters.len();
        for (i, &h) in class.iter().enumerate() {
            letters.push((k, i));
            labels.push(group.format_element(h));
        }
        out_blocks.push(OrbitBlock {
            rep: *rep,
            character: chi.clone(),
            class,
            cosets,
            offset,
        });
    }
    // disambiguate repeated classes
    let mut counts = std::collections::HashMap::new();
    for l in &labels {
        *counts.entry(l.clone()).or_insert(0) += 1;
    }
    for (x, l) in labels.iter_mut().enumerate() {
        if counts[l.as_str()] > 1 {
            *l = format!("{l}#{}", letters[x].0 + 1);
        }
    }
    let real = YDRealization {
        group: group.clone(),
        blocks: out_blocks,
        letters,
    };
    let n = real.letter_count();
    let mut rack = vec![vec![0usize; n]; n];
    let mut coeffs = vec![vec![field.zero(); n]; n];
    for x in 0..n {
        let gx = real.letter_element(x);
        for y in 0..n {
            let (z, s) = real.act_on_letter(gx, y);
            rack[x][y] = z;
            coeffs[x][y] = s;
        }
    }
    let mut braiding = GroupTypeBraiding::new(field.clone(), labels, rack, coeffs)?;
    braiding.grading = Grading::Group {
        order: group.order(),
        table: (0..group.order())
            .flat_map(|a| (0..group.order()).map(move |b| (a, b)))
            .map(|(a, b)| group.mul(a, b) as u32)
            .collect(),
        letter: (0..n).map(|x| real.letter_element(x) as u32).collect(),
    };
    Ok((braiding, real))
}

/// `Q e_x = λ_x e_{σ(x)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterOperator {
    perm: Vec<usize>,
    scalars: Vec<Scalar>,
}

impl LetterOperator {
    /// Checks that `Q⊗Q` commutes with the braiding:
    /// `σ(x▷y) = σx▷σy` and `q_{x,y} λ_{x▷y} = λ_y q_{σx,σy}`.
    pub fn new(
        braiding: &GroupTypeBraiding,
        perm: Vec<usize>,
        scalars: Vec<Scalar>,
    ) -> Result<LetterOperator> {
        let n = braiding.len();
        let f = braiding.field();
        if perm.len() != n || scalars.len() != n {
            return Err(Error::NotBraided("operator size differs from |B|".into()));
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::NotBraided("σ is not a permutation".into()));
        }
        if scalars.iter().any(|s| f.is_zero(s)) {
            return Err(Error::NotBraided("λ has a zero entry".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let xy = braiding.act(x, y);
                if perm[xy] != braiding.act(perm[x], perm[y]) {
                    return Err(Error::NotBraided(format!(
                        "σ does not respect {}▷{}",
                        braiding.labels()[x],
                        braiding.labels()[y]
                    )));
                }
                let lhs = f.mul(braiding.q(x, y), &scalars[xy]);
                let rhs = f.mul(&scalars[y], braiding.q(perm[x], perm[y]));
                if lhs != rhs {
                    return Err(Error::NotBraided(format!(
                        "coefficient mismatch at ({}, {})",
                        braiding.labels()[x],
                        braiding.labels()[y]
                    )));
                }
            }
        }
        Ok(LetterOperator { perm, scalars })
    }

    pub fn identity(braiding: &GroupTypeBraiding) -> LetterOperator {
        let f = braiding.field();
        LetterOperator {
            perm: (0..braiding.len()).collect(),
            scalars: vec![f.one(); braiding.len()],
        }
    }

    /// Multiplies every letter by `λ`.
    pub fn scaling(braiding: &GroupTypeBraiding, lambda: Scalar) -> Result<LetterOperator> {
        Self::new(
            braiding,
            (0..braiding.len()).collect(),
            vec![lambda; braiding.len()],
        )
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.scalars
    }

    /// `self ∘ other`
    pub fn compose(&self, field: &Field, other: &LetterOperator) -> LetterOperator {
        let perm = (0..self.perm.len())
            .map(|x| self.perm[other.perm[x]])
            .collect();
        let scalars = (0..self.perm.len())
            .map(|x| field.mul(&other.scalars[x], &self.scalars[other.perm[x]]))
            .collect();
        LetterOperator { perm, scalars }
    }

    /// `Q^{-1} e_x = λ_{σ^{-1}x}^{-1} e_{σ^{-1}x}`
    pub fn inverse(&self, field: &Field) -> LetterOperator {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        for x in 0..n {
            perm[self.perm[x]] = x;
        }
        let scalars = (0..n)
            .map(|x| {
                field
                    .inv(&self.scalars[perm[x]])
                    .expect("nonzero by construction")
            })
            .collect();
        LetterOperator { perm, scalars }
    }
}

/// Letter operator of the group element `t`.
pub fn group_action_operator(
    braiding: &GroupTypeBraiding,
    real: &YDRealization,
    t: usize,
) -> Result<LetterOperator> {
    let (perm, scalars): (Vec<usize>, Vec<Scalar>) = (0..real.letter_count())
        .map(|x| real.act_on_letter(t, x))
        .unzip();
    LetterOperator::new(braiding, perm, scalars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;
    use crate::scalars::FieldSpec;

    fn s3_example() -> (Field, FiniteGroup, GroupTypeBraiding, YDRealization) {
        let f = Field::new(FieldSpec::rationals()).unwrap();
        let g = catalog("S3").unwrap();
        let t = g.parse_element("(1 2)").unwrap();
        let chi =
            CentralizerCharacter::from_generator_values(&g, &f, t, &[(t, f.from_int(-1))]).unwrap();
        let (b, r) = from_orbits(&g, &f, &[(t, chi)]).unwrap();
        (f, g, b, r)
    }

    #[test]
    fn s3_transpositions() {
        let (f, g, b, r) = s3_example();
        assert_eq!(b.len(), 3);
        for x in 0..3 {
            assert_eq!(b.q(x, x), &f.from_int(-1));
        }
        let t = g.parse_element("(1 2)").unwrap();
        let op = group_action_operator(&b, &r, t).unwrap();
        let x = r.letter_of(0, t).unwrap();
        assert_eq!(op.perm()[x], x);
        assert_eq!(op.scalars()[x], f.from_int(-1));
        let id = group_action_operator(&b, &r, 0).unwrap();
        assert_eq!(id, LetterOperator::identity(&b));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let (f, g, b, r) = s3_example();
        for s in 0..g.order() {
            for t in 0..g.order() {
                let lhs = group_action_operator(&b, &r, g.mul(s, t)).unwrap();
                let rhs = group_action_operator(&b, &r, s)
                    .unwrap()
                    .compose(&f, &group_action_operator(&b, &r, t).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn d4_two_blocks() {
        let f = Field::new(FieldSpec::rationals()).unwrap();
        let g = catalog("D4").unwrap();
        let b = g.parse_element("b").unwrap();
        let ba = g.parse_element("ba").unwrap();
        let a2 = g.parse_element("a^2").unwrap();
        let ab = g.parse_element("ab").unwrap();
        let chi = CentralizerCharacter::from_generator_values(
            &g,
            &f,
            b,
            &[(b, f.from_int(-1)), (a2, f.one())],
        )
        .unwrap();
        let psi = CentralizerCharacter::from_generator_values(
            &g,
            &f,
            ba,
            &[(ab, f.from_int(-1)), (a2, f.one())],
        )
        .unwrap();
        let (br, real) = from_orbits(&g, &f, &[(b, chi), (ba, psi)]).unwrap();
        assert_eq!(br.len(), 4);
        assert_eq!(real.blocks().len(), 2);
        assert_eq!(real.blocks()[0].class.len(), 2);
        let op = group_action_operator(&br, &real, a2).unwrap();
        assert!(op.scalars().iter().all(|s| f.is_one(s)));
    }

    #[test]
    fn abelian_groups_give_diagonal_braidings() {
        let f = Field::new(FieldSpec::rationals()).unwrap();
        let g = catalog("D4").unwrap();
        // the centre {e, a^2} is abelian; use a central rep
        let a2 = g.parse_element("a^2").unwrap();
        let chi = CentralizerCharacter::trivial(&g, &f, a2);
        let (br, _) = from_orbits(&g, &f, &[(a2, chi)]).unwrap();
        assert!(br.is_diagonal());
    }

    #[test]
    fn diagonal_input() {
        let f = Field::new(FieldSpec::rationals()).unwrap();
        let m = vec![
            vec![f.from_int(-1), f.from_int(-1)],
            vec![f.from_int(1), f.from_int(-1)],
        ];
        let b = GroupTypeBraiding::diagonal(f.clone(), m).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.is_diagonal());
        let q = LetterOperator::new(&b, vec![0, 1], vec![f.one(), f.from_int(-1)]).unwrap();
        assert_eq!(q.inverse(&f), q);
        // the swap does not preserve this matrix
        assert!(LetterOperator::new(&b, vec![1, 0], vec![f.one(), f.one()]).is_err());
    }

    #[test]
    fn braid_relation_detects_bad_cocycle() {
        let (f, _, b, _) = s3_example();
        let n = b.len();
        let rack: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| b.act(x, y)).collect())
            .collect();
        let mut coeffs: Vec<Vec<Scalar>> = (0..n)
            .map(|x| (0..n).map(|y| b.q(x, y).clone()).collect())
            .collect();
        coeffs[0][1] = f.from_int(2);
        let r = GroupTypeBraiding::new(f, b.labels().to_vec(), rack, coeffs);
        assert!(matches!(r, Err(Error::InvalidBraiding(_))));
    }
}
