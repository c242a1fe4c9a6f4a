//! Nichols algebras of group type, built degree by degree.
//!
//! A degree-`n` element vanishes in `B(V)` exactly when every skew derivation
//! `∂_y = (e_y^*⊗id)Δ` sends it to zero in degree `n−1`. Each layer is
//! therefore spanned by the products `e_x·b_w` of letters with the previous
//! basis, and a product is kept when its vector of derivatives is independent
//! of the ones kept before. For `c(e_x⊗e_y) = q_{x,y} e_{x▷y}⊗e_x` these
//! derivatives obey
//!
//! `∂_y(e_x·w) = δ_{x,y}·w + q_{x,z}·e_x·∂_z(w)` where `x▷z = y`,
//!
//! so they only need the previous layer's multiplication and derivation maps.

mod cache;
mod oracle;

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::braidings::GroupTypeBraiding;
use crate::error::{Error, Result};
use crate::linalg::{apply_map, Echelon, Insert, SparseVec};
use crate::scalars::{Field, Scalar, TracePoly};

pub use oracle::{symmetrizer_rank_oracle, ORACLE_SIZE_CAP};

pub const DEFAULT_DEGREE_CAP: usize = 24;

/// One homogeneous component `B(V)_n` with its basis and structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    degree: usize,
    words: Vec<Vec<u16>>,
    /// `tails[i] = w` when basis element `i` was chosen as `e_x·b_w`.
    tails: Vec<u32>,
    keys: Vec<u64>,
    /// `mult[x][u]`: coordinates of `e_x·b_u` for `b_u` in the previous layer.
    mult: Vec<Vec<SparseVec>>,
    /// `deriv[y][i]`: coordinates of `(e_y^*⊗id)Δ(b_i)` in the previous layer.
    deriv: Vec<Vec<SparseVec>>,
}

impl Layer {
    fn unit(braiding: &GroupTypeBraiding) -> Layer {
        Layer {
            degree: 0,
            words: vec![Vec::new()],
            tails: vec![0],
            keys: vec![braiding.unit_key()],
            mult: Vec::new(),
            deriv: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Basis words; basis element `i` is the image of `words()[i]`.
    pub fn words(&self) -> &[Vec<u16>] {
        &self.words
    }

    /// Previous-layer index `w` with `b_i = e_x·b_w`, `x` the first letter.
    pub fn tail(&self, i: usize) -> usize {
        self.tails[i] as usize
    }

    /// Homogeneity key of each basis element.
    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    /// `e_x·b_u` in this layer, for `b_u` in the previous one.
    pub fn mult(&self, x: usize, u: usize) -> &SparseVec {
        &self.mult[x][u]
    }

    /// `(e_y^*⊗id)Δ(b_i)` in the previous layer.
    pub fn deriv(&self, y: usize, i: usize) -> &SparseVec {
        &self.deriv[y][i]
    }
}

/// Knobs for [`build_with`].
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Largest degree allowed to be nonzero; one more layer is built to
    /// confirm that the algebra stops.
    pub max_degree: usize,
    /// Directory holding resumable layer caches.
    pub cache_dir: Option<PathBuf>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_degree: DEFAULT_DEGREE_CAP,
            cache_dir: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NicholsAlgebra {
    braiding: GroupTypeBraiding,
    layers: Vec<Layer>,
    complete: bool,
}

/// Builds `B(V)` up to `max_degree` without caching.
pub fn build(braiding: &GroupTypeBraiding, max_degree: usize) -> Result<NicholsAlgebra> {
    build_with(
        braiding,
        &BuildOptions {
            max_degree,
            cache_dir: None,
        },
        &|_, _| {},
    )
}

/// Builds `B(V)`, reusing and extending cached layers, and calls
/// `progress(degree, dim)` after each layer.
pub fn build_with(
    braiding: &GroupTypeBraiding,
    options: &BuildOptions,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<NicholsAlgebra> {
    if options.max_degree == 0 {
        return Err(Error::DegreeOutOfRange {
            requested: 0,
            available: 1,
        });
    }
    let store = options
        .cache_dir
        .as_ref()
        .map(|dir| cache::LayerStore::open(dir, braiding))
        .transpose()?;
    let mut layers = vec![Layer::unit(braiding)];
    if let Some(store) = &store {
        for layer in store.load(braiding)? {
            progress(layer.degree, layer.dim());
            layers.push(layer);
        }
        layers.truncate(options.max_degree + 2);
    }
    loop {
        let last = layers.last().unwrap();
        if last.degree > 0 && last.dim() == 0 {
            layers.pop();
            return Ok(NicholsAlgebra {
                braiding: braiding.clone(),
                layers,
                complete: true,
            });
        }
        if last.degree > options.max_degree {
            layers.pop();
            return Ok(NicholsAlgebra {
                braiding: braiding.clone(),
                layers,
                complete: false,
            });
        }
        let next = next_layer(braiding, &layers);
        if let Some(store) = &store {
            store.save(braiding, &next)?;
        }
        progress(next.degree, next.dim());
        layers.push(next);
    }
}

/// Derivation vector of the candidate `e_x·b_w`, concatenated over `y`.
fn candidate_vector(
    braiding: &GroupTypeBraiding,
    prev: &Layer,
    x: usize,
    w: usize,
    acc: &mut BTreeMap<u32, Scalar>,
) -> SparseVec {
    let f = braiding.field();
    let d = prev.dim() as u32;
    acc.clear();
    acc.insert(x as u32 * d + w as u32, f.one());
    if prev.degree > 0 {
        for z in 0..braiding.len() {
            let dw = &prev.deriv[z][w];
            if dw.is_empty() {
                continue;
            }
            let q = braiding.q(x, z);
            let offset = braiding.act(x, z) as u32 * d;
            for (u, c) in dw {
                let qc = f.mul(q, c);
                for (v, m) in &prev.mult[x][*u as usize] {
                    let slot = acc.entry(offset + v).or_insert_with(|| f.zero());
                    *slot = f.mul_add(slot, &qc, m);
                }
            }
        }
    }
    acc.iter()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(i, c)| (*i, c.clone()))
        .collect()
}

struct BlockResult {
    /// Candidate indices of the block, in order, with their insertion outcome.
    outcomes: Vec<(usize, Insert)>,
    /// Candidate index of each locally accepted vector.
    accepted: Vec<usize>,
}

fn eliminate_block(f: &Field, members: &[usize], vectors: &[SparseVec]) -> BlockResult {
    let mut columns: Vec<u32> = members
        .iter()
        .flat_map(|&c| vectors[c].iter().map(|(i, _)| *i))
        .collect();
    columns.sort_unstable();
    columns.dedup();
    let local = |v: &SparseVec| -> SparseVec {
        v.iter()
            .map(|(i, c)| (columns.binary_search(i).unwrap() as u32, c.clone()))
            .collect()
    };
    let mut ech = Echelon::new(f, columns.len());
    let mut outcomes = Vec::with_capacity(members.len());
    let mut accepted = Vec::new();
    for &c in members {
        let res = ech.insert(&local(&vectors[c]));
        if let Insert::Independent(_) = res {
            accepted.push(c);
        }
        outcomes.push((c, res));
    }
    BlockResult { outcomes, accepted }
}

fn next_layer(braiding: &GroupTypeBraiding, layers: &[Layer]) -> Layer {
    let f = braiding.field();
    let prev = layers.last().unwrap();
    let nb = braiding.len();
    let d = prev.dim();
    let ncand = nb * d;

    let vectors: Vec<SparseVec> = (0..ncand)
        .into_par_iter()
        .map_init(BTreeMap::new, |acc, c| {
            candidate_vector(braiding, prev, c / d, c % d, acc)
        })
        .collect();
    let keys: Vec<u64> = (0..ncand)
        .map(|c| braiding.key_left_mul(c / d, prev.keys[c % d]))
        .collect();

    // derivation vectors of different keys have disjoint supports, so
    // greedy selection can run block by block
    let mut blocks: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (c, &k) in keys.iter().enumerate() {
        blocks.entry(k).or_default().push(c);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    let results: Vec<BlockResult> = blocks
        .par_iter()
        .map(|members| eliminate_block(f, members, &vectors))
        .collect();

    let mut accepted: Vec<usize> = results
        .iter()
        .flat_map(|r| r.accepted.iter().copied())
        .collect();
    accepted.sort_unstable();
    let mut global = vec![u32::MAX; ncand];
    for (i, &c) in accepted.iter().enumerate() {
        global[c] = i as u32;
    }

    let mut mult = vec![vec![SparseVec::new(); d]; nb];
    for r in &results {
        for (c, outcome) in &r.outcomes {
            let coords = match outcome {
                Insert::Independent(_) => vec![(global[*c], f.one())],
                Insert::Dependent(local) => {
                    let mut v: SparseVec = local
                        .iter()
                        .map(|(k, s)| (global[r.accepted[*k as usize]], s.clone()))
                        .collect();
                    v.sort_unstable_by_key(|(i, _)| *i);
                    v
                }
            };
            mult[c / d][c % d] = coords;
        }
    }

    let mut deriv = vec![Vec::with_capacity(accepted.len()); nb];
    for &c in &accepted {
        let mut parts = vec![SparseVec::new(); nb];
        for (i, s) in &vectors[c] {
            parts[*i as usize / d].push((*i % d as u32, s.clone()));
        }
        for (y, p) in parts.into_iter().enumerate() {
            deriv[y].push(p);
        }
    }

    let words = accepted
        .iter()
        .map(|&c| {
            let mut w = Vec::with_capacity(prev.degree + 1);
            w.push((c / d) as u16);
            w.extend_from_slice(&prev.words[c % d]);
            w
        })
        .collect();
    Layer {
        degree: prev.degree + 1,
        words,
        tails: accepted.iter().map(|&c| (c % d) as u32).collect(),
        keys: accepted.iter().map(|&c| keys[c]).collect(),
        mult,
        deriv,
    }
}

impl NicholsAlgebra {
    pub fn braiding(&self) -> &GroupTypeBraiding {
        &self.braiding
    }

    pub fn field(&self) -> &Field {
        self.braiding.field()
    }

    /// Layers `0..=max computed degree`, all nonzero.
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, n: usize) -> Result<&Layer> {
        self.layers.get(n).ok_or(Error::DegreeOutOfRange {
            requested: n,
            available: self.max_degree(),
        })
    }

    /// Highest degree with a computed (nonzero) layer.
    pub fn max_degree(&self) -> usize {
        self.layers.len() - 1
    }

    /// True when a zero layer was reached.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Top degree `L`, known only for complete algebras.
    pub fn top_degree(&self) -> Option<usize> {
        self.complete.then(|| self.max_degree())
    }

    /// Layer dimensions from degree 0.
    pub fn hilbert_series(&self) -> Vec<usize> {
        self.layers.iter().map(Layer::dim).collect()
    }

    pub fn hilbert_poly(&self) -> TracePoly {
        let f = self.field();
        TracePoly::from_coeffs(
            f,
            self.layers
                .iter()
                .map(|l| f.from_int(l.dim() as i64))
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.layers.iter().map(Layer::dim).sum()
    }

    /// `e_x·v` for `v` in layer `n`.
    pub fn multiply_letter(&self, x: usize, n: usize, v: &SparseVec) -> Result<SparseVec> {
        if n + 1 >= self.layers.len() {
            if self.complete && n + 1 == self.layers.len() {
                return Ok(SparseVec::new());
            }
            return Err(Error::DegreeOutOfRange {
                requested: n + 1,
                available: self.max_degree(),
            });
        }
        let next = &self.layers[n + 1];
        Ok(apply_map(self.field(), &next.mult[x], v, next.dim()))
    }

    /// `(e_y^*⊗id)Δ(v)` for `v` in layer `n`.
    pub fn derivative(&self, y: usize, n: usize, v: &SparseVec) -> Result<SparseVec> {
        let layer = self.layer(n)?;
        if n == 0 {
            return Ok(SparseVec::new());
        }
        Ok(apply_map(
            self.field(),
            &layer.deriv[y],
            v,
            self.layers[n - 1].dim(),
        ))
    }

    /// Coordinates of a word's image in the basis of layer `word.len()`.
    pub fn reduce(&self, word: &[usize]) -> Result<SparseVec> {
        if word.len() > self.max_degree() && !self.complete {
            return Err(Error::DegreeOutOfRange {
                requested: word.len(),
                available: self.max_degree(),
            });
        }
        if let Some(&x) = word.iter().find(|&&x| x >= self.braiding.len()) {
            return Err(Error::InvalidBraiding(format!("no letter with index {x}")));
        }
        let mut v: SparseVec = vec![(0, self.field().one())];
        for (k, &x) in word.iter().rev().enumerate() {
            v = self.multiply_letter(x, k, &v)?;
            if v.is_empty() {
                return Ok(v);
            }
        }
        Ok(v)
    }

    /// `a·b` for `a` in layer `da` and `b` in layer `db`.
    pub fn multiply(
        &self,
        da: usize,
        a: &SparseVec,
        db: usize,
        b: &SparseVec,
    ) -> Result<SparseVec> {
        let f = self.field();
        let layer = self.layer(da)?;
        self.layer(db)?;
        let target = da + db;
        if target > self.max_degree() {
            if self.complete {
                return Ok(SparseVec::new());
            }
            return Err(Error::DegreeOutOfRange {
                requested: target,
                available: self.max_degree(),
            });
        }
        let mut acc = vec![f.zero(); self.layers[target].dim()];
        for (i, c) in a {
            let mut v = b.clone();
            for (k, &x) in layer.words[*i as usize].iter().rev().enumerate() {
                v = self.multiply_letter(x as usize, db + k, &v)?;
                if v.is_empty() {
                    break;
                }
            }
            crate::linalg::axpy_dense(f, &mut acc, c, &v);
        }
        Ok(crate::linalg::to_sparse(f, &acc))
    }

    /// Human-readable form of a basis word.
    pub fn format_word(&self, word: &[u16]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let labels = self.braiding.labels();
        word.iter()
            .map(|&x| labels[x as usize].as_str())
            .collect::<Vec<_>>()
            .join("·")
    }
}
