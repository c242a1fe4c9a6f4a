//! PBW roots of diagonal Nichols algebras from Lyndon words, and trace
//! formulas for operators that fix or permute the roots.
//!
//! Letters are ordered by index. The bracket of a Lyndon word `u = vw`, split
//! at its longest proper Lyndon suffix `w`, is `[u] = [v][w] − χ(v,w)[w][v]`
//! with `χ(a,b) = Π q_{ij}^{a_i b_j}` on multidegrees.

use std::collections::HashMap;

use crate::braidings::{GroupTypeBraiding, LetterOperator};
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, Echelon, Insert, SparseVec};
use crate::nichols::NicholsAlgebra;
use crate::qfactor::qsymbol;
use crate::scalars::{Field, Scalar, TracePoly};
use crate::traces::apply_operator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub word: Vec<u16>,
    pub multidegree: Vec<u32>,
    /// Nilpotency order `N_α` of the root vector.
    pub height: u32,
    /// Coordinates of `[u]` in layer `|u|`.
    pub vector: SparseVec,
}

impl Root {
    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// Positive roots sorted lexicographically decreasing, so that PBW monomials
/// are products in list order.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub roots: Vec<Root>,
}

fn multidegree(rank: usize, word: &[u16]) -> Vec<u32> {
    let mut d = vec![0; rank];
    for &x in word {
        d[x as usize] += 1;
    }
    d
}

/// `χ(a, b) = Π q_{ij}^{a_i b_j}`
pub fn bicharacter(b: &GroupTypeBraiding, a: &[u32], c: &[u32]) -> Scalar {
    let f = b.field();
    let mut out = f.one();
    for (i, &ai) in a.iter().enumerate() {
        for (j, &cj) in c.iter().enumerate() {
            if ai * cj > 0 {
                out = f.mul(&out, &f.pow(b.q(i, j), (ai * cj) as i64));
            }
        }
    }
    out
}

/// Lyndon words of length `1..=max_len` over `rank` letters, in
/// lexicographic order (Duval's algorithm).
pub fn lyndon_words(rank: usize, max_len: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    if rank == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u16> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last().is_some_and(|&c| c as usize == rank - 1) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => return out,
        }
    }
}

fn is_lyndon(w: &[u16]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w && w[..] < w[i..])
}

/// `u = vw` with `w` the longest proper Lyndon suffix.
pub fn standard_factorization(u: &[u16]) -> Option<(&[u16], &[u16])> {
    (1..u.len())
        .find(|&i| is_lyndon(&u[i..]))
        .map(|i| u.split_at(i))
}

struct Brackets<'a> {
    n: &'a NicholsAlgebra,
    memo: HashMap<Vec<u16>, SparseVec>,
}

impl Brackets<'_> {
    fn eval(&mut self, u: &[u16]) -> Result<SparseVec> {
        if let Some(v) = self.memo.get(u) {
            return Ok(v.clone());
        }
        let v = match standard_factorization(u) {
            None => self.n.reduce(&[u[0] as usize])?,
            Some((a, b)) => {
                let va = self.eval(a)?;
                let vb = self.eval(b)?;
                commutator(self.n, a, &va, b, &vb)?
            }
        };
        self.memo.insert(u.to_vec(), v.clone());
        Ok(v)
    }
}

/// `[a, b]_c = a·b − χ(deg a, deg b)·b·a` for homogeneous elements with
/// letter content `a_word`, `b_word`.
fn commutator(
    n: &NicholsAlgebra,
    a_word: &[u16],
    a: &SparseVec,
    b_word: &[u16],
    b: &SparseVec,
) -> Result<SparseVec> {
    let f = n.field();
    let rank = n.braiding().len();
    let (da, db) = (a_word.len(), b_word.len());
    let chi = bicharacter(
        n.braiding(),
        &multidegree(rank, a_word),
        &multidegree(rank, b_word),
    );
    let ab = n.multiply(da, a, db, b)?;
    let ba = n.multiply(db, b, da, a)?;
    Ok(add_scaled(f, &ab, &f.neg(&chi), &ba))
}

/// `N` with `(N)_q = 0`: the order of `q`, or the characteristic when `q = 1`.
fn height(f: &Field, q: &Scalar) -> Option<u32> {
    if f.is_one(q) {
        return (f.characteristic() > 0).then_some(f.characteristic() as u32);
    }
    f.multiplicative_order(q, 1 << 16)
}

/// Ordered PBW monomials `Π x_α^{e_α}` (`e_α < N_α`, list order) of the given
/// multidegree.
fn pbw_monomials(
    n: &NicholsAlgebra,
    roots: &[Root],
    target: &[u32],
) -> Result<Vec<(Vec<u32>, SparseVec)>> {
    fn rec(
        n: &NicholsAlgebra,
        roots: &[Root],
        remaining: Vec<u32>,
        acc: (usize, SparseVec),
        exps: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, SparseVec)>,
    ) -> Result<()> {
        if remaining.iter().all(|&r| r == 0) {
            if !acc.1.is_empty() {
                let mut e = exps.clone();
                e.resize(e.len() + roots.len(), 0);
                out.push((e, acc.1));
            }
            return Ok(());
        }
        let Some((r, rest)) = roots.split_first() else {
            return Ok(());
        };
        let mut remaining = remaining;
        let mut cur = acc;
        for e in 0..r.height {
            if e > 0 {
                if remaining.iter().zip(&r.multidegree).any(|(a, b)| a < b) {
                    break;
                }
                for (a, b) in remaining.iter_mut().zip(&r.multidegree) {
                    *a -= b;
                }
                cur = (
                    cur.0 + r.degree(),
                    n.multiply(cur.0, &cur.1, r.degree(), &r.vector)?,
                );
            }
            exps.push(e);
            rec(n, rest, remaining.clone(), cur.clone(), exps, out)?;
            exps.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(
        n,
        roots,
        target.to_vec(),
        (0, vec![(0, n.field().one())]),
        &mut Vec::new(),
        &mut out,
    )?;
    Ok(out)
}

/// Extracts the roots of a complete diagonal Nichols algebra.
///
/// Lyndon words are taken by length, then lexicographically; a word is a root
/// when its bracket is independent of the PBW monomials in the roots found so
/// far. The product `Π (N_α)_{t^{|α|}}` must reproduce the Hilbert series.
pub fn lyndon_roots(n: &NicholsAlgebra) -> Result<RootDatum> {
    let b = n.braiding();
    if !b.is_diagonal() {
        return Err(Error::RootExtraction("braiding is not diagonal".into()));
    }
    let top = n.top_degree().ok_or(Error::Incomplete(n.max_degree()))?;
    let f = n.field();
    let rank = b.len();
    let mut words = lyndon_words(rank, top);
    words.sort_by(|a, c| a.len().cmp(&c.len()).then(a.cmp(c)));
    let mut brackets = Brackets {
        n,
        memo: HashMap::new(),
    };
    let mut roots: Vec<Root> = Vec::new();
    for u in words {
        let v = brackets.eval(&u)?;
        if v.is_empty() {
            continue;
        }
        let md = multidegree(rank, &u);
        let mut ordered = roots.clone();
        ordered.sort_by(|a, c| c.word.cmp(&a.word));
        let span = pbw_monomials(n, &ordered, &md)?;
        let mut ech = Echelon::new(f, n.layer(u.len())?.dim());
        for (_, m) in &span {
            ech.insert(m);
        }
        if let Insert::Dependent(_) = ech.insert(&v) {
            continue;
        }
        let h = height(f, &bicharacter(b, &md, &md)).ok_or_else(|| {
            Error::RootExtraction(format!("root {} has infinite height", n.format_word(&u)))
        })?;
        roots.push(Root {
            word: u,
            multidegree: md,
            height: h,
            vector: v,
        });
    }
    roots.sort_by(|a, c| c.word.cmp(&a.word));
    let rd = RootDatum { roots };
    let product = rd.hilbert_product(f);
    if product != n.hilbert_poly() {
        return Err(Error::RootExtraction(format!(
            "roots give {} but the Hilbert series is {}",
            product.format_coeffs(f),
            n.hilbert_poly().format_coeffs(f)
        )));
    }
    Ok(rd)
}

impl RootDatum {
    /// `Π (N_α)_{t^{|α|}}`
    pub fn hilbert_product(&self, f: &Field) -> TracePoly {
        let ones = vec![f.one(); self.roots.len()];
        stabilizing_trace(f, self, &ones)
    }

    pub fn find(&self, multidegree: &[u32]) -> Option<usize> {
        self.roots.iter().position(|r| r.multidegree == multidegree)
    }

    /// Swaps in another root vector of the same multidegree; the ordered
    /// monomials must still form a basis.
    pub fn replace_vector(&mut self, n: &NicholsAlgebra, v: &Homogeneous) -> Result<()> {
        let i = self.find(&v.multidegree).ok_or_else(|| {
            Error::RootExtraction(format!("no root of multidegree {:?}", v.multidegree))
        })?;
        let old = std::mem::replace(&mut self.roots[i].vector, v.vector.clone());
        if !is_pbw_basis(n, self)? {
            self.roots[i].vector = old;
            return Err(Error::RootExtraction(format!(
                "replacing root {} breaks the PBW basis",
                n.format_word(&self.roots[i].word)
            )));
        }
        Ok(())
    }
}

/// A multidegree-homogeneous element of a diagonal Nichols algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    pub multidegree: Vec<u32>,
    pub vector: SparseVec,
}

impl Homogeneous {
    pub fn letter(n: &NicholsAlgebra, i: usize) -> Result<Homogeneous> {
        let mut multidegree = vec![0; n.braiding().len()];
        *multidegree
            .get_mut(i)
            .ok_or_else(|| Error::InvalidBraiding(format!("no letter with index {i}")))? = 1;
        Ok(Homogeneous {
            multidegree,
            vector: n.reduce(&[i])?,
        })
    }

    pub fn degree(&self) -> usize {
        self.multidegree.iter().sum::<u32>() as usize
    }

    pub fn mul(&self, n: &NicholsAlgebra, other: &Homogeneous) -> Result<Homogeneous> {
        Ok(Homogeneous {
            multidegree: self
                .multidegree
                .iter()
                .zip(&other.multidegree)
                .map(|(a, b)| a + b)
                .collect(),
            vector: n.multiply(self.degree(), &self.vector, other.degree(), &other.vector)?,
        })
    }

    /// `[a, b]_c = ab − χ(a, b)·ba`
    pub fn q_commutator(&self, n: &NicholsAlgebra, other: &Homogeneous) -> Result<Homogeneous> {
        let f = n.field();
        let chi = bicharacter(n.braiding(), &self.multidegree, &other.multidegree);
        let ab = self.mul(n, other)?;
        let ba = other.mul(n, self)?;
        Ok(Homogeneous {
            vector: add_scaled(f, &ab.vector, &f.neg(&chi), &ba.vector),
            multidegree: ab.multidegree,
        })
    }
}

/// `Π_α (N_α)_{λ_α t^{|α|}}`
pub fn stabilizing_trace(f: &Field, rd: &RootDatum, eigenvalues: &[Scalar]) -> TracePoly {
    assert_eq!(eigenvalues.len(), rd.roots.len(), "one eigenvalue per root");
    rd.roots
        .iter()
        .zip(eigenvalues)
        .fold(TracePoly::one(f), |acc, (r, l)| {
            acc.mul(f, &qsymbol(f, r.height, l, r.degree()))
        })
}

/// `λ_α = Π λ_i^{α_i}` for an operator that scales every letter.
pub fn root_eigenvalues(f: &Field, rd: &RootDatum, q: &LetterOperator) -> Result<Vec<Scalar>> {
    if q.perm().iter().enumerate().any(|(i, &j)| i != j) {
        return Err(Error::NotNormalizing("operator permutes letters".into()));
    }
    Ok(rd
        .roots
        .iter()
        .map(|r| {
            r.multidegree
                .iter()
                .zip(q.scalars())
                .fold(f.one(), |acc, (&e, l)| f.mul(&acc, &f.pow(l, e as i64)))
        })
        .collect())
}

/// Scalar `c` with `v = c·w`, if any.
fn proportion(f: &Field, v: &SparseVec, w: &SparseVec) -> Option<Scalar> {
    if v.len() != w.len() || w.is_empty() {
        return None;
    }
    let c = f.div(&v[0].1, &w[0].1).ok()?;
    v.iter()
        .zip(w)
        .all(|((i, a), (j, b))| i == j && *a == f.mul(&c, b))
        .then_some(c)
}

/// Braiding factor of the adjacent swaps sorting `seq` into list order
/// (ascending indices). `bubble` picks one of two reduced expressions.
fn sorting_factor(b: &GroupTypeBraiding, rd: &RootDatum, seq: &[usize], bubble: bool) -> Scalar {
    let f = b.field();
    let mut s = seq.to_vec();
    let mut q = f.one();
    let mut swap = |s: &mut Vec<usize>, p: usize| {
        let (l, r) = (&rd.roots[s[p]], &rd.roots[s[p + 1]]);
        q = f.mul(&q, &bicharacter(b, &l.multidegree, &r.multidegree));
        s.swap(p, p + 1);
    };
    if bubble {
        for i in 0..s.len() {
            for p in 0..s.len().saturating_sub(1 + i) {
                if s[p] > s[p + 1] {
                    swap(&mut s, p);
                }
            }
        }
    } else {
        for target in 0..s.len() {
            let mut p = (target..s.len()).min_by_key(|&k| s[k]).unwrap();
            while p > target {
                swap(&mut s, p - 1);
                p -= 1;
            }
        }
    }
    q
}

/// One orbit of roots under a letter operator.
#[derive(Clone, Debug)]
pub struct RootOrbit {
    pub roots: Vec<usize>,
    pub height: u32,
    /// `|A| = |α|·#A`
    pub degree: usize,
    pub q_factor: Scalar,
    pub lambda: Scalar,
}

/// Orbits of an operator that permutes the roots, `Q x_α = λ_Q(α) x_{Qα}`.
pub fn root_orbits(
    n: &NicholsAlgebra,
    rd: &RootDatum,
    q: &LetterOperator,
) -> Result<Vec<RootOrbit>> {
    let b = n.braiding();
    let f = n.field();
    let mut sigma = Vec::with_capacity(rd.roots.len());
    let mut lambdas = Vec::with_capacity(rd.roots.len());
    for r in &rd.roots {
        let mut d = vec![0; r.multidegree.len()];
        for (i, &e) in r.multidegree.iter().enumerate() {
            d[q.perm()[i]] += e;
        }
        let target = rd.find(&d).ok_or_else(|| {
            Error::NotNormalizing(format!(
                "image of root {} is not a root",
                n.format_word(&r.word)
            ))
        })?;
        let t = &rd.roots[target];
        if (t.height, t.degree()) != (r.height, r.degree()) {
            return Err(Error::NotNormalizing(format!(
                "root {} and its image differ in height or degree",
                n.format_word(&r.word)
            )));
        }
        let image = apply_operator(n, q, r.degree(), &r.vector)?;
        let lambda = proportion(f, &image, &t.vector).ok_or_else(|| {
            Error::NotNormalizing(format!(
                "Q maps the vector of root {} off the line of root {}",
                n.format_word(&r.word),
                n.format_word(&t.word)
            ))
        })?;
        sigma.push(target);
        lambdas.push(lambda);
    }
    let mut seen = vec![false; rd.roots.len()];
    let mut orbits = Vec::new();
    for start in 0..rd.roots.len() {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        let mut lambda = lambdas[start].clone();
        seen[start] = true;
        let mut cur = sigma[start];
        while cur != start {
            seen[cur] = true;
            members.push(cur);
            lambda = f.mul(&lambda, &lambdas[cur]);
            cur = sigma[cur];
        }
        let mut sorted = members.clone();
        sorted.sort_unstable();
        let image: Vec<usize> = sorted.iter().map(|&i| sigma[i]).collect();
        let q_factor = sorting_factor(b, rd, &image, true);
        if q_factor != sorting_factor(b, rd, &image, false) {
            return Err(Error::NotNormalizing(
                "braiding factor depends on the reduced expression".into(),
            ));
        }
        let r0 = &rd.roots[start];
        orbits.push(RootOrbit {
            degree: r0.degree() * members.len(),
            height: r0.height,
            roots: members,
            q_factor,
            lambda,
        });
    }
    Ok(orbits)
}

/// Whether the ordered monomials in the root vectors span every layer.
pub fn is_pbw_basis(n: &NicholsAlgebra, rd: &RootDatum) -> Result<bool> {
    let f = n.field();
    let rank = n.braiding().len();
    let mut degrees: Vec<Vec<u32>> = vec![vec![0; rank]];
    for r in &rd.roots {
        let mut next = Vec::new();
        for d in &degrees {
            for e in 0..r.height {
                next.push(
                    d.iter()
                        .zip(&r.multidegree)
                        .map(|(a, b)| a + e * b)
                        .collect(),
                );
            }
        }
        next.sort();
        next.dedup();
        degrees = next;
    }
    let mut rank_per_layer = vec![0usize; n.max_degree() + 1];
    for d in degrees {
        let len = d.iter().sum::<u32>() as usize;
        if len > n.max_degree() {
            return Ok(false);
        }
        let monomials = pbw_monomials(n, &rd.roots, &d)?;
        let mut ech = Echelon::new(f, n.layer(len)?.dim());
        for (_, m) in &monomials {
            ech.insert(m);
        }
        rank_per_layer[len] += ech.rank();
    }
    Ok(rank_per_layer == n.hilbert_series())
}

/// `Π_A (N_A)_{q_A(Q)·λ_Q(A)·t^{|A|}}` over the root orbits of `Q`.
pub fn orbit_trace(n: &NicholsAlgebra, rd: &RootDatum, q: &LetterOperator) -> Result<TracePoly> {
    let f = n.field();
    Ok(root_orbits(n, rd, q)?
        .iter()
        .fold(TracePoly::one(f), |acc, o| {
            acc.mul(
                f,
                &qsymbol(f, o.height, &f.mul(&o.q_factor, &o.lambda), o.degree),
            )
        }))
}

/// `v^e` for `v` in layer `deg`.
pub fn power(n: &NicholsAlgebra, deg: usize, v: &SparseVec, e: u32) -> Result<SparseVec> {
    let mut acc: SparseVec = vec![(0, n.field().one())];
    for k in 0..e as usize {
        acc = n.multiply(k * deg, &acc, deg, v)?;
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nichols::build;
    use crate::qfactor::parse_notation;
    use crate::scalars::FieldSpec;
    use crate::traces::graded_trace;

    fn diag(f: &Field, m: &[&[&str]]) -> NicholsAlgebra {
        let m = m
            .iter()
            .map(|r| r.iter().map(|s| f.parse_scalar(s).unwrap()).collect())
            .collect();
        build(&GroupTypeBraiding::diagonal(f.clone(), m).unwrap(), 24).unwrap()
    }

    #[test]
    fn lyndon_enumeration() {
        let w = lyndon_words(2, 4);
        let expect: Vec<Vec<u16>> = vec![
            vec![0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1],
            vec![0, 0, 1, 1],
            vec![0, 1],
            vec![0, 1, 1],
            vec![0, 1, 1, 1],
            vec![1],
        ];
        assert_eq!(w, expect);
        assert_eq!(
            standard_factorization(&[0, 0, 1]),
            Some((&[0u16][..], &[0u16, 1][..]))
        );
        assert_eq!(
            standard_factorization(&[0, 2, 1]),
            Some((&[0u16, 2][..], &[1u16][..]))
        );
    }

    #[test]
    fn a2_at_minus_one() {
        let f = Field::new(FieldSpec::rationals()).unwrap();
        let n = diag(&f, &[&["-1", "-1"], &["1", "-1"]]);
        let rd = lyndon_roots(&n).unwrap();
        let words: Vec<_> = rd.roots.iter().map(|r| r.word.clone()).collect();
        assert_eq!(words, vec![vec![1], vec![0, 1], vec![0]]);
        assert!(rd.roots.iter().all(|r| r.height == 2));
        // [x1, x2]_c = x1x2 + x2x1
        let x12 = add_scaled(
            &f,
            &n.reduce(&[0, 1]).unwrap(),
            &f.one(),
            &n.reduce(&[1, 0]).unwrap(),
        );
        assert_eq!(rd.roots[1].vector, x12);
        let q =
            LetterOperator::new(n.braiding(), vec![0, 1], vec![f.one(), f.from_int(-1)]).unwrap();
        let l = root_eigenvalues(&f, &rd, &q).unwrap();
        let st = stabilizing_trace(&f, &rd, &l);
        assert_eq!(
            st,
            parse_notation(&f, "(2)_{t} (2)_{-t} (2)_{-t^2}").unwrap()
        );
        assert_eq!(st, graded_trace(&n, &q, "").unwrap().trace);
    }

    #[test]
    fn a2_family_group_traces() {
        // q primitive sixth root, N = 3
        let f = Field::new(FieldSpec::cyclotomic(6)).unwrap();
        let n = diag(&f, &[&["zeta^2", "zeta^5"], &["zeta^5", "zeta^2"]]);
        assert_eq!(n.dimension(), 27);
        let rd = lyndon_roots(&n).unwrap();
        assert_eq!(
            rd.hilbert_product(&f),
            parse_notation(&f, "(3)_{t}^2 (3)_{t^2}").unwrap()
        );
        let g1 = LetterOperator::new(n.braiding(), vec![0, 1], vec![f.zeta_pow(2), f.zeta_pow(5)])
            .unwrap();
        let st = stabilizing_trace(&f, &rd, &root_eigenvalues(&f, &rd, &g1).unwrap());
        let expect = qsymbol(&f, 3, &f.zeta_pow(2), 1)
            .mul(&f, &qsymbol(&f, 3, &f.zeta_pow(5), 1))
            .mul(&f, &qsymbol(&f, 3, &f.zeta(), 2));
        assert_eq!(st, expect);
        assert_eq!(graded_trace(&n, &g1, "").unwrap().trace, expect);
    }

    #[test]
    fn a1_a1_swap() {
        let f = Field::new(FieldSpec::cyclotomic(6)).unwrap();
        let n = diag(&f, &[&["zeta^2", "-1"], &["-1", "zeta^2"]]);
        let rd = lyndon_roots(&n).unwrap();
        let swap = LetterOperator::new(n.braiding(), vec![1, 0], vec![f.one(), f.one()]).unwrap();
        let ot = orbit_trace(&n, &rd, &swap).unwrap();
        assert_eq!(ot, qsymbol(&f, 3, &f.from_int(-1), 2));
        assert_eq!(graded_trace(&n, &swap, "").unwrap().trace, ot);
        let id = LetterOperator::identity(n.braiding());
        assert_eq!(orbit_trace(&n, &rd, &id).unwrap(), rd.hilbert_product(&f));
    }

    #[test]
    fn a3_flip() {
        let f = Field::new(FieldSpec::cyclotomic(4)).unwrap();
        let n = diag(
            &f,
            &[&["-1", "i", "-1"], &["i", "-1", "i"], &["-1", "i", "-1"]],
        );
        let rd = lyndon_roots(&n).unwrap();
        assert_eq!(rd.roots.len(), 6);
        assert_eq!(
            rd.hilbert_product(&f),
            parse_notation(&f, "(2)_{t}^3 (2)_{t^2}^2 (2)_{t^3}").unwrap()
        );
        let flip = LetterOperator::new(n.braiding(), vec![2, 1, 0], vec![f.one(); 3]).unwrap();
        // the Lyndon vector [x1,[x2,x3]] is not an eigenvector of the flip
        assert!(matches!(
            orbit_trace(&n, &rd, &flip),
            Err(Error::NotNormalizing(_))
        ));
        let mut rd = rd;
        let x: Vec<_> = (0..3)
            .map(|i| Homogeneous::letter(&n, i).unwrap())
            .collect();
        let x32 = x[2].q_commutator(&n, &x[1]).unwrap();
        let x1_32 = x[0].q_commutator(&n, &x32).unwrap();
        let x12 = x[0].q_commutator(&n, &x[1]).unwrap();
        let x3_12 = x[2].q_commutator(&n, &x12).unwrap();
        let neg = add_scaled(&f, &x3_12.vector, &f.one(), &x1_32.vector);
        assert!(neg.is_empty(), "x_3(12) = -x_1(32)");
        rd.replace_vector(&n, &x32).unwrap();
        rd.replace_vector(&n, &x1_32).unwrap();
        let orbits = root_orbits(&n, &rd, &flip).unwrap();
        assert_eq!(orbits.len(), 4);
        let ot = orbit_trace(&n, &rd, &flip).unwrap();
        assert_eq!(
            ot,
            parse_notation(&f, "(2)_{t} (2)_{-t^2} (2)_{-t^4} (2)_{-t^3}").unwrap()
        );
        assert_eq!(graded_trace(&n, &flip, "").unwrap().trace, ot);
    }

    #[test]
    fn a2_flip_is_not_normalizing() {
        let f = Field::new(FieldSpec::cyclotomic(4)).unwrap();
        let n = diag(&f, &[&["-1", "i"], &["i", "-1"]]);
        let rd = lyndon_roots(&n).unwrap();
        let flip = LetterOperator::new(n.braiding(), vec![1, 0], vec![f.one(); 2]).unwrap();
        assert!(matches!(
            orbit_trace(&n, &rd, &flip),
            Err(Error::NotNormalizing(_))
        ));
        let direct = graded_trace(&n, &flip, "").unwrap().trace;
        assert_eq!(direct, TracePoly::from_ints(&f, &[1, 0, 0, 0, 1]));
        let num = parse_notation(&f, "(2)_{t} (2)_{-t} (2)_{t^2} (2)_{t^4}").unwrap();
        let (quot, exact) = num
            .exact_div(&f, &parse_notation(&f, "(2)_{-t^4}").unwrap())
            .unwrap();
        assert!(exact);
        assert_eq!(quot, direct);

        let (x1, x2) = (n.reduce(&[0]).unwrap(), n.reduce(&[1]).unwrap());
        let plus = add_scaled(&f, &x1, &f.one(), &x2);
        let minus = add_scaled(&f, &x1, &f.from_int(-1), &x2);
        let y = power(&n, 1, &plus, 2).unwrap();
        let y_alt = add_scaled(
            &f,
            &n.reduce(&[0, 1]).unwrap(),
            &f.one(),
            &n.reduce(&[1, 0]).unwrap(),
        );
        assert_eq!(y, y_alt);
        assert!(add_scaled(&f, &y, &f.one(), &power(&n, 1, &minus, 2).unwrap()).is_empty());
        let z = power(&n, 1, &plus, 4).unwrap();
        assert_eq!(z, power(&n, 1, &minus, 4).unwrap());
        assert_eq!(z, scale_by(&f, 2, &n.reduce(&[0, 1, 0, 1]).unwrap()));
        let pm = n.multiply(1, &plus, 1, &minus).unwrap();
        assert!(n.multiply(2, &pm, 2, &y).unwrap().is_empty());
    }

    fn scale_by(f: &Field, k: i64, v: &SparseVec) -> SparseVec {
        crate::linalg::scale(f, &f.from_int(k), v)
    }
}
