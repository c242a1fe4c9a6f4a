//! Divisibility of graded traces: opposite and right derivations, the
//! modified shift `ξ_x`, `Z_k`-sector balancedness and sub-Nichols-algebra
//! divisors.

use rayon::prelude::*;

use crate::braidings::{GroupTypeBraiding, LetterOperator, YDRealization};
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, apply_map, scale, Echelon, Insert, SparseVec};
use crate::nichols::NicholsAlgebra;
use crate::qfactor::qsymbol;
use crate::scalars::{Field, Scalar, TracePoly};
use crate::traces::operator_images;

/// `cols[n][x][i] = ∂ᵒᵖ_x(b_i)` in layer `n − 1`; `cols[0]` is empty.
pub fn op_derivation(n: &NicholsAlgebra) -> Vec<Vec<Vec<SparseVec>>> {
    let letters = n.braiding().len();
    n.layers()
        .iter()
        .map(|layer| {
            if layer.degree() == 0 {
                return Vec::new();
            }
            (0..letters)
                .map(|x| {
                    (0..layer.dim())
                        .map(|i| layer.deriv(x, i).clone())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Right braided derivations `∂_y = (id⊗e_y^*)Δ`, stored like [`op_derivation`].
///
/// On `b_i = e_z·b_w`: `∂_y(b_i) = e_z·∂_y(b_w) + δ_{y,z} g_z.b_w`, where
/// `g_z.e_u = q_{z,u} e_{z▷u}`.
pub fn right_derivation(n: &NicholsAlgebra) -> Result<Vec<Vec<Vec<SparseVec>>>> {
    let b = n.braiding();
    let f = n.field();
    let letters = b.len();
    let shifts: Vec<Vec<Vec<SparseVec>>> = (0..letters)
        .map(|z| {
            let op = LetterOperator::new(
                b,
                (0..letters).map(|u| b.act(z, u)).collect(),
                (0..letters).map(|u| b.q(z, u).clone()).collect(),
            )?;
            operator_images(n, &op)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Vec<Vec<SparseVec>>> = vec![Vec::new()];
    for deg in 1..=n.max_degree() {
        let layer = n.layer(deg)?;
        let prev = &out[deg - 1];
        let cols: Vec<Vec<SparseVec>> = (0..letters)
            .into_par_iter()
            .map(|y| {
                (0..layer.dim())
                    .map(|i| {
                        let z = layer.words()[i][0] as usize;
                        let w = layer.tail(i);
                        let mut v = if deg == 1 {
                            SparseVec::new()
                        } else {
                            n.multiply_letter(z, deg - 2, &prev[y][w])
                                .expect("layer is built")
                        };
                        if y == z {
                            v = add_scaled(f, &v, &f.one(), &shifts[z][deg - 1][w]);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        out.push(cols);
    }
    Ok(out)
}

/// Dimensions of `K = ⋂_{y∈letters} ker ∂_y` per degree.
pub fn coinvariant_series(n: &NicholsAlgebra, letters: &[usize]) -> Result<Vec<usize>> {
    let f = n.field();
    let right = right_derivation(n)?;
    let mut dims = vec![1];
    for deg in 1..=n.max_degree() {
        let layer = n.layer(deg)?;
        let prev = n.layer(deg - 1)?.dim();
        let mut e = Echelon::new(f, prev * letters.len());
        for i in 0..layer.dim() {
            let mut stacked = SparseVec::new();
            for (k, &y) in letters.iter().enumerate() {
                stacked.extend(
                    right[deg][y][i]
                        .iter()
                        .map(|(j, c)| ((k * prev) as u32 + j, c.clone())),
                );
            }
            e.insert(&stacked);
        }
        dims.push(layer.dim() - e.rank());
    }
    Ok(dims)
}

/// `m` minimal with `1 + q + … + q^{m−1} = 0`, `q = q_{x,x}`, after checking
/// that the diagonal is constant and every `q_{x,y}` is an `m`-th root of unity.
pub fn order_of_q(b: &GroupTypeBraiding) -> Result<u32> {
    let f = b.field();
    if b.is_empty() {
        return Err(Error::ShiftCheck("empty braiding".into()));
    }
    let q = b.q(0, 0).clone();
    if (0..b.len()).any(|x| b.q(x, x) != &q) {
        return Err(Error::ShiftCheck("diagonal coefficients differ".into()));
    }
    let mut sum = f.zero();
    let mut power = f.one();
    let mut m = 0u32;
    loop {
        sum = f.add(&sum, &power);
        power = f.mul(&power, &q);
        m += 1;
        if f.is_zero(&sum) {
            break;
        }
        if m > 1 << 16 {
            return Err(Error::ShiftCheck(format!(
                "q = {} has no finite order",
                f.format(&q)
            )));
        }
    }
    for x in 0..b.len() {
        for y in 0..b.len() {
            if !f.is_one(&f.pow(b.q(x, y), m as i64)) {
                return Err(Error::ShiftCheck(format!(
                    "q_({},{}) is not an {m}-th root of unity",
                    b.labels()[x],
                    b.labels()[y]
                )));
            }
        }
    }
    Ok(m)
}

/// Flat indexing of the whole algebra, layer by layer.
#[derive(Clone, Debug)]
pub struct GradedIndex {
    offsets: Vec<usize>,
}

impl GradedIndex {
    pub fn new(n: &NicholsAlgebra) -> GradedIndex {
        let mut offsets = vec![0];
        for l in n.layers() {
            offsets.push(offsets.last().unwrap() + l.dim());
        }
        GradedIndex { offsets }
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn offset(&self, deg: usize) -> usize {
        self.offsets[deg]
    }

    pub fn degree_of(&self, k: usize) -> usize {
        self.offsets.partition_point(|&o| o <= k) - 1
    }

    /// Embeds a layer vector.
    pub fn embed(&self, deg: usize, v: &SparseVec) -> SparseVec {
        let o = self.offsets[deg] as u32;
        v.iter().map(|(i, c)| (i + o, c.clone())).collect()
    }

    /// Flattens per-layer columns into global columns.
    pub fn flatten(&self, per_layer: impl Fn(usize) -> Vec<SparseVec>) -> Vec<SparseVec> {
        (0..self.offsets.len() - 1).flat_map(per_layer).collect()
    }
}

/// The modified shift `ξ_x(v) = (∂ᵒᵖ_x)^{m−1}(v) + e_x·v` as global columns.
pub fn xi_columns(n: &NicholsAlgebra, x: usize, m: u32) -> Result<Vec<SparseVec>> {
    let f = n.field();
    let idx = GradedIndex::new(n);
    let top = n.max_degree();
    if !n.is_complete() {
        return Err(Error::Incomplete(top));
    }
    let mut cols = Vec::with_capacity(idx.total());
    for deg in 0..=top {
        for i in 0..n.layer(deg)?.dim() {
            let unit: SparseVec = vec![(i as u32, f.one())];
            let mut col = idx.embed(deg + 1, &n.multiply_letter(x, deg, &unit)?);
            let steps = m as usize - 1;
            if deg >= steps {
                let mut v = unit;
                for k in 0..steps {
                    v = n.derivative(x, deg - k, &v)?;
                }
                col = add_scaled(f, &col, &f.one(), &idx.embed(deg - steps, &v));
            }
            cols.push(col);
        }
    }
    Ok(cols)
}

/// Rank check of `ξ_x` from sector `from` to sector `from + 1` of `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorMap {
    pub from: u32,
    pub dim_from: usize,
    pub dim_to: usize,
    pub rank: usize,
}

impl SectorMap {
    pub fn is_bijective(&self) -> bool {
        self.dim_from == self.dim_to && self.rank == self.dim_from
    }
}

/// Checks that `ξ_x` maps each `Z_m` sector bijectively onto the next.
pub fn xi_shift(n: &NicholsAlgebra, x: usize, m: u32) -> Result<Vec<SectorMap>> {
    let f = n.field();
    let idx = GradedIndex::new(n);
    let cols = xi_columns(n, x, m)?;
    let sector = |k: usize| (idx.degree_of(k) % m as usize) as u32;
    let mut out = Vec::new();
    for j in 0..m {
        let next = (j + 1) % m;
        let members: Vec<usize> = (0..idx.total()).filter(|&k| sector(k) == j).collect();
        let dim_to = (0..idx.total()).filter(|&k| sector(k) == next).count();
        let mut e = Echelon::new(f, idx.total());
        for &k in &members {
            if cols[k].iter().any(|(i, _)| sector(*i as usize) != next) {
                return Err(Error::ShiftCheck(format!(
                    "ξ leaves sector {j} outside sector {next}"
                )));
            }
            e.insert(&cols[k]);
        }
        let map = SectorMap {
            from: j,
            dim_from: members.len(),
            dim_to,
            rank: e.rank(),
        };
        if !map.is_bijective() {
            return Err(Error::ShiftCheck(format!(
                "sector {j} → {next}: rank {} of {}×{}",
                map.rank, map.dim_to, map.dim_from
            )));
        }
        out.push(map);
    }
    Ok(out)
}

/// Global columns of a letter operator.
pub fn operator_columns(n: &NicholsAlgebra, q: &LetterOperator) -> Result<Vec<SparseVec>> {
    let idx = GradedIndex::new(n);
    let images = operator_images(n, q)?;
    Ok(idx.flatten(|deg| images[deg].iter().map(|v| idx.embed(deg, v)).collect()))
}

/// `λ` with `g∘ξ_x = λ·ξ_x∘g` on the whole algebra, if `g` fixes the letter
/// `x` and the identity holds; `λ` is the scalar of `g` on `e_x`.
pub fn xi_commutation(
    n: &NicholsAlgebra,
    g: &LetterOperator,
    x: usize,
    m: u32,
) -> Result<Option<Scalar>> {
    if g.perm()[x] != x {
        return Ok(None);
    }
    let f = n.field();
    let lambda = g.scalars()[x].clone();
    let total = GradedIndex::new(n).total();
    let xi = xi_columns(n, x, m)?;
    let gc = operator_columns(n, g)?;
    let holds = (0..total).into_par_iter().all(|k| {
        let lhs = apply_map(f, &gc, &xi[k], total);
        let rhs = scale(f, &lambda, &apply_map(f, &xi, &gc[k], total));
        lhs == rhs
    });
    Ok(holds.then_some(lambda))
}

/// Dimension of the span of the orbit of `1` under the maps `ξ_x`.
pub fn xi_orbit_span(n: &NicholsAlgebra, m: u32) -> Result<usize> {
    let f = n.field();
    let total = GradedIndex::new(n).total();
    let shifts: Vec<Vec<SparseVec>> = (0..n.braiding().len())
        .map(|x| xi_columns(n, x, m))
        .collect::<Result<_>>()?;
    let mut e = Echelon::new(f, total);
    let one: SparseVec = vec![(0, f.one())];
    e.insert(&one);
    let mut queue = vec![one];
    while let Some(v) = queue.pop() {
        for cols in &shifts {
            let w = apply_map(f, cols, &v, total);
            if let Insert::Independent(_) = e.insert(&w) {
                queue.push(w);
            }
        }
    }
    Ok(e.rank())
}

/// Trace sums over the `Z_k` sectors of total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorDecomposition {
    pub k: usize,
    pub lambda: Scalar,
    pub sums: Vec<Scalar>,
}

impl SectorDecomposition {
    pub fn new(f: &Field, trace: &TracePoly, k: usize, lambda: Scalar) -> SectorDecomposition {
        assert!(k >= 1);
        let mut sums = vec![f.zero(); k];
        for (j, c) in trace.coeffs().iter().enumerate() {
            sums[j % k] = f.add(&sums[j % k], c);
        }
        SectorDecomposition { k, lambda, sums }
    }

    /// `s_{j+1} = λ·s_j` for all `j`, cyclically.
    pub fn is_balanced(&self, f: &Field) -> bool {
        (0..self.k).all(|j| self.sums[(j + 1) % self.k] == f.mul(&self.lambda, &self.sums[j]))
    }
}

/// Whether `(k)_{λt}` divides `trace`.
pub fn divisible_by_symbol(f: &Field, trace: &TracePoly, k: usize, lambda: &Scalar) -> bool {
    let d = qsymbol(f, k as u32, lambda, 1);
    trace
        .exact_div(f, &d)
        .map(|(_, exact)| exact)
        .unwrap_or(false)
}

/// Exact-division verdict for one predicted divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityVerdict {
    pub divisor: TracePoly,
    pub divides: bool,
    pub quotient: TracePoly,
    pub remainder: TracePoly,
}

pub fn divisibility_report(
    f: &Field,
    trace: &TracePoly,
    divisors: &[TracePoly],
) -> Result<Vec<DivisibilityVerdict>> {
    divisors
        .iter()
        .map(|d| {
            let (quotient, remainder) = trace.div_rem(f, d)?;
            Ok(DivisibilityVerdict {
                divisor: d.clone(),
                divides: remainder.is_zero(),
                quotient,
                remainder,
            })
        })
        .collect()
}

/// Letters graded by the `G′`-conjugacy class of `rep`, where `subgroup`
/// lists the elements of `G′`.
pub fn sub_class_letters(
    real: &YDRealization,
    subgroup: &[usize],
    rep: usize,
) -> Result<Vec<usize>> {
    let g = real.group();
    let block = real
        .blocks()
        .iter()
        .position(|b| b.class.binary_search(&rep).is_ok())
        .ok_or_else(|| Error::InvalidGroup("representative is not a letter degree".into()))?;
    if subgroup.binary_search(&rep).is_err() {
        return Err(Error::InvalidGroup(
            "representative is not in the subgroup".into(),
        ));
    }
    let mut class: Vec<usize> = subgroup.iter().map(|&s| g.conjugate(s, rep)).collect();
    class.sort_unstable();
    class.dedup();
    Ok(class
        .into_iter()
        .map(|h| real.letter_of(block, h).expect("class lies in the block"))
        .collect())
}

/// Restriction of a letter operator to a rack-closed set of letters it preserves.
pub fn restrict_operator(
    sub: &GroupTypeBraiding,
    q: &LetterOperator,
    letters: &[usize],
) -> Result<LetterOperator> {
    let pos = |y: usize| letters.iter().position(|&l| l == y);
    let perm = letters
        .iter()
        .map(|&x| {
            pos(q.perm()[x])
                .ok_or_else(|| Error::NotBraided("operator leaves the letter subset".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let scalars = letters.iter().map(|&x| q.scalars()[x].clone()).collect();
    LetterOperator::new(sub, perm, scalars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidings::{from_orbits, group_action_operator};
    use crate::groups::{catalog, CentralizerCharacter, FiniteGroup};
    use crate::nichols::build;
    use crate::scalars::FieldSpec;
    use crate::traces::graded_trace;

    fn q() -> Field {
        Field::new(FieldSpec::rationals()).unwrap()
    }

    fn transpositions(
        g: &FiniteGroup,
        f: &Field,
        chi: &[(&str, i64)],
    ) -> (GroupTypeBraiding, YDRealization) {
        let t = g.parse_element("(1 2)").unwrap();
        let values: Vec<(usize, Scalar)> = chi
            .iter()
            .map(|(s, v)| (g.parse_element(s).unwrap(), f.from_int(*v)))
            .collect();
        let c = CentralizerCharacter::from_generator_values(g, f, t, &values).unwrap();
        from_orbits(g, f, &[(t, c)]).unwrap()
    }

    #[test]
    fn degree_two_closed_form() {
        let f = q();
        let g = catalog("S3").unwrap();
        let (b, _) = transpositions(&g, &f, &[("(1 2)", -1)]);
        let n = build(&b, 24).unwrap();
        let d = op_derivation(&n);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(
                    d[1][x][n.reduce(&[y]).unwrap()[0].0 as usize],
                    if x == y { vec![(0, f.one())] } else { vec![] }
                );
                for z in 0..3 {
                    let v = n.reduce(&[y, z]).unwrap();
                    let lhs = n.derivative(x, 2, &v).unwrap();
                    let mut rhs = SparseVec::new();
                    if x == y {
                        rhs = add_scaled(&f, &rhs, &f.one(), &n.reduce(&[z]).unwrap());
                    }
                    if x == b.act(y, z) {
                        rhs = add_scaled(&f, &rhs, b.q(y, z), &n.reduce(&[y]).unwrap());
                    }
                    assert_eq!(lhs, rhs);
                    let r = right_derivation(&n).unwrap();
                    let lhs = apply_map(&f, &r[2][x], &v, 3);
                    let mut rhs = SparseVec::new();
                    if x == z {
                        rhs = add_scaled(&f, &rhs, &f.one(), &n.reduce(&[y]).unwrap());
                    }
                    if x == y {
                        rhs = add_scaled(&f, &rhs, b.q(y, z), &n.reduce(&[b.act(y, z)]).unwrap());
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn derivations_follow_left_multiplication() {
        let f = q();
        let g = catalog("S4").unwrap();
        let (b, _) = transpositions(&g, &f, &[("(1 2)", -1), ("(3 4)", -1)]);
        let n = build(&b, 24).unwrap();
        for deg in 1..n.max_degree() {
            let dim = n.layer(deg).unwrap().dim();
            for i in (0..dim).step_by(7) {
                let v: SparseVec = vec![(i as u32, f.one())];
                for y in 0..b.len() {
                    let yv = n.multiply_letter(y, deg, &v).unwrap();
                    for x in 0..b.len() {
                        let lhs = n.derivative(x, deg + 1, &yv).unwrap();
                        let z = (0..b.len()).find(|&z| b.act(y, z) == x).unwrap();
                        let inner = n.derivative(z, deg, &v).unwrap();
                        let mut rhs = scale(
                            &f,
                            b.q(y, z),
                            &n.multiply_letter(y, deg - 1, &inner).unwrap(),
                        );
                        if x == y {
                            rhs = add_scaled(&f, &rhs, &f.one(), &v);
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn derivations_detect_nonzero_elements() {
        let f = q();
        let g = catalog("S3").unwrap();
        let (b, _) = transpositions(&g, &f, &[("(1 2)", -1)]);
        let n = build(&b, 24).unwrap();
        let all: Vec<usize> = (0..3).collect();
        let k = coinvariant_series(&n, &all).unwrap();
        assert_eq!(k, vec![1, 0, 0, 0, 0]);
        let d = op_derivation(&n);
        for deg in 1..=n.max_degree() {
            let prev = n.layer(deg - 1).unwrap().dim();
            let mut e = Echelon::new(&f, 3 * prev);
            for i in 0..n.layer(deg).unwrap().dim() {
                let mut stacked = SparseVec::new();
                for x in 0..3 {
                    stacked.extend(
                        d[deg][x][i]
                            .iter()
                            .map(|(j, c)| ((x * prev) as u32 + j, c.clone())),
                    );
                }
                e.insert(&stacked);
            }
            assert_eq!(e.rank(), n.layer(deg).unwrap().dim());
        }
    }

    #[test]
    fn s3_shift_and_coinvariants() {
        let f = q();
        let g = catalog("S3").unwrap();
        let (b, r) = transpositions(&g, &f, &[("(1 2)", -1)]);
        let n = build(&b, 24).unwrap();
        let m = order_of_q(&b).unwrap();
        assert_eq!(m, 2);
        for x in 0..3 {
            let maps = xi_shift(&n, x, m).unwrap();
            assert_eq!(maps.len(), 2);
            assert!(maps.iter().all(|s| s.dim_from == 6 && s.is_bijective()));
            let xi = xi_columns(&n, x, m).unwrap();
            assert_eq!(
                xi[0],
                GradedIndex::new(&n).embed(1, &n.reduce(&[x]).unwrap())
            );
        }
        assert_eq!(xi_orbit_span(&n, m).unwrap(), 12);
        // G′ = ⟨(1 2)⟩: B(M′) = k[e_x]/(e_x^2), so K has series 1,2,2,1
        let t = g.parse_element("(1 2)").unwrap();
        let sub = g.subgroup(&[t]);
        let letters = sub_class_letters(&r, &sub, t).unwrap();
        assert_eq!(letters.len(), 1);
        let k = coinvariant_series(&n, &letters).unwrap();
        assert_eq!(k, vec![1, 2, 2, 1, 0]);
        let h = n.hilbert_poly();
        let sub_n = build(&b.restrict(&letters).unwrap(), 24).unwrap();
        let (quot, exact) = h.exact_div(&f, &sub_n.hilbert_poly()).unwrap();
        assert!(exact);
        assert_eq!(quot, TracePoly::from_ints(&f, &[1, 2, 2, 1]));
    }

    #[test]
    fn q_of_order_two_and_three() {
        let f = Field::new(FieldSpec::cyclotomic(3)).unwrap();
        let w = f.zeta();
        let b = GroupTypeBraiding::diagonal(f.clone(), vec![vec![w.clone()]]).unwrap();
        assert_eq!(order_of_q(&b).unwrap(), 3);
        let f2 = Field::new(FieldSpec::new(2, 1)).unwrap();
        let b = GroupTypeBraiding::diagonal(f2.clone(), vec![vec![f2.one()]]).unwrap();
        assert_eq!(order_of_q(&b).unwrap(), 2);
        let b = GroupTypeBraiding::diagonal(q(), vec![vec![q().one()]]).unwrap();
        assert!(order_of_q(&b).is_err());
    }

    #[test]
    fn s4_over_s3_divisibility() {
        let f = q();
        let g = catalog("S4").unwrap();
        let (b, r) = transpositions(&g, &f, &[("(1 2)", -1), ("(3 4)", -1)]);
        let n = build(&b, 24).unwrap();
        assert_eq!(n.dimension(), 576);
        let m = order_of_q(&b).unwrap();
        let h = g.parse_element("(1 2)").unwrap();
        let s3 = g.subgroup(&[h, g.parse_element("(2 3)").unwrap()]);
        assert_eq!(s3.len(), 6);
        let letters = sub_class_letters(&r, &s3, h).unwrap();
        assert_eq!(letters.len(), 3);
        let sub_b = b.restrict(&letters).unwrap();
        let sub_n = build(&sub_b, 24).unwrap();
        assert_eq!(sub_n.dimension(), 12);

        let op = group_action_operator(&b, &r, h).unwrap();
        let sub_op = restrict_operator(&sub_b, &op, &letters).unwrap();
        let tr = graded_trace(&n, &op, "").unwrap().trace;
        let sub_tr = graded_trace(&sub_n, &sub_op, "").unwrap().trace;
        assert_eq!(
            sub_tr,
            crate::qfactor::parse_notation(&f, "(2)_{-t}^2 (3)_{t}").unwrap()
        );

        let x = r.letter_of(0, g.parse_element("(3 4)").unwrap()).unwrap();
        let lambda = xi_commutation(&n, &op, x, m)
            .unwrap()
            .expect("g and x commute");
        assert_eq!(lambda, f.from_int(-1));
        // λ = q_{y,x} for g = g_y with y = (1 2)
        let y = r.letter_of(0, h).unwrap();
        assert_eq!(&lambda, b.q(y, x));

        let part1 = sub_tr.clone();
        let part2 = qsymbol(&f, m, &lambda, 1).mul(&f, &sub_tr);
        let report = divisibility_report(&f, &tr, &[part1, part2]).unwrap();
        assert!(report.iter().all(|v| v.divides));

        let hs = divisibility_report(&f, &n.hilbert_poly(), &[sub_n.hilbert_poly()]).unwrap();
        assert!(hs[0].divides);
        let k = coinvariant_series(&n, &letters).unwrap();
        let kpoly = TracePoly::from_ints(&f, &k.iter().map(|&d| d as i64).collect::<Vec<_>>());
        assert_eq!(kpoly, hs[0].quotient);
    }

    proptest::proptest! {
        #[test]
        fn balancedness_iff_divisibility(coeffs in proptest::collection::vec(-3i64..4, 1..12), k in 1usize..5, l in 0usize..6) {
            let f = Field::new(FieldSpec::cyclotomic(3)).unwrap();
            let roots = f.unit_roots();
            let lambda = &roots[l];
            let p = TracePoly::from_ints(&f, &coeffs);
            proptest::prop_assume!(!p.is_zero());
            if f.is_one(&f.pow(lambda, k as i64)) {
                let s = SectorDecomposition::new(&f, &p, k, lambda.clone());
                proptest::prop_assert_eq!(s.is_balanced(&f), divisible_by_symbol(&f, &p, k, lambda));
                let multiple = p.mul(&f, &qsymbol(&f, k as u32, lambda, 1));
                proptest::prop_assert!(SectorDecomposition::new(&f, &multiple, k, lambda.clone()).is_balanced(&f));
            }
        }
    }
}
