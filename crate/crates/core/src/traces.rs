//! Graded traces of letter operators on a built Nichols algebra.
//!
//! A letter operator `Q e_x = λ_x e_{σx}` extends to an algebra automorphism,
//! so on a basis element `b = e_x·b_w` it acts as `λ_x e_{σx}·Q(b_w)`. Images
//! are propagated layer by layer and the trace is read off the diagonal.

use rayon::prelude::*;

use crate::braidings::LetterOperator;
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, get, scale, SparseVec};
use crate::nichols::NicholsAlgebra;
use crate::scalars::{Scalar, TracePoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTraceReport {
    pub label: String,
    pub trace: TracePoly,
    /// Ungraded trace `tr(Q)`.
    pub at_one: Scalar,
    /// Eigenvalue on the one-dimensional top layer, when there is one.
    pub lambda_top: Option<Scalar>,
}

/// `Q(v)` for `v` in layer `deg`.
pub fn apply_operator(
    n: &NicholsAlgebra,
    q: &LetterOperator,
    deg: usize,
    v: &SparseVec,
) -> Result<SparseVec> {
    let f = n.field();
    let words = n.layer(deg)?.words();
    let mut out = SparseVec::new();
    for (i, c) in v {
        let w = &words[*i as usize];
        let image: Vec<usize> = w.iter().map(|&x| q.perm()[x as usize]).collect();
        let lambda = w
            .iter()
            .fold(c.clone(), |acc, &x| f.mul(&acc, &q.scalars()[x as usize]));
        out = add_scaled(f, &out, &lambda, &n.reduce(&image)?);
    }
    Ok(out)
}

/// `images[n][i] = Q(b_i)` for every basis element of every computed layer.
pub fn operator_images(n: &NicholsAlgebra, q: &LetterOperator) -> Result<Vec<Vec<SparseVec>>> {
    let f = n.field();
    let mut out: Vec<Vec<SparseVec>> = vec![vec![vec![(0, f.one())]]];
    for deg in 1..=n.max_degree() {
        let layer = n.layer(deg)?;
        let prev = &out[deg - 1];
        let next: Vec<SparseVec> = (0..layer.dim())
            .into_par_iter()
            .map(|i| {
                let x = layer.words()[i][0] as usize;
                let shifted = n
                    .multiply_letter(q.perm()[x], deg - 1, &prev[layer.tail(i)])
                    .expect("layer is built");
                scale(f, &q.scalars()[x], &shifted)
            })
            .collect();
        out.push(next);
    }
    Ok(out)
}

/// Coefficients `tr(Q|_{B_n})` for `n = 0..=max_degree`.
pub fn trace_coefficients(
    n: &NicholsAlgebra,
    q: &LetterOperator,
    max_degree: usize,
) -> Result<Vec<Scalar>> {
    if max_degree > n.max_degree() {
        return Err(Error::DegreeOutOfRange {
            requested: max_degree,
            available: n.max_degree(),
        });
    }
    let f = n.field();
    let mut images: Vec<SparseVec> = vec![vec![(0, f.one())]];
    let mut coeffs = vec![f.one()];
    for deg in 1..=max_degree {
        let layer = n.layer(deg)?;
        let words = layer.words();
        let next: Vec<SparseVec> = (0..layer.dim())
            .into_par_iter()
            .map(|i| {
                let x = words[i][0] as usize;
                let w = layer.tail(i);
                let shifted = n
                    .multiply_letter(q.perm()[x], deg - 1, &images[w])
                    .expect("layer is built");
                scale(f, &q.scalars()[x], &shifted)
            })
            .collect();
        let tr = next
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (i, v)| match get(v, i as u32) {
                Some(c) => f.add(&acc, c),
                None => acc,
            });
        coeffs.push(tr);
        images = next;
    }
    Ok(coeffs)
}

/// `Q` on the top layer, when it is one-dimensional.
pub fn top_eigenvalue(n: &NicholsAlgebra, q: &LetterOperator) -> Result<Scalar> {
    let top = n.top_degree().ok_or(Error::Incomplete(n.max_degree()))?;
    let layer = n.layer(top)?;
    if layer.dim() != 1 {
        return Err(Error::TopLayerNotOneDimensional(layer.dim()));
    }
    let f = n.field();
    let word = &layer.words()[0];
    let image: Vec<usize> = word.iter().map(|&x| q.perm()[x as usize]).collect();
    let lambda = word
        .iter()
        .fold(f.one(), |acc, &x| f.mul(&acc, &q.scalars()[x as usize]));
    let v = n.reduce(&image)?;
    let c = get(&v, 0).cloned().unwrap_or_else(|| f.zero());
    Ok(f.mul(&lambda, &c))
}

/// Full graded trace over every computed layer.
pub fn graded_trace(
    n: &NicholsAlgebra,
    q: &LetterOperator,
    label: &str,
) -> Result<GradedTraceReport> {
    let f = n.field();
    let coeffs = trace_coefficients(n, q, n.max_degree())?;
    let trace = TracePoly::from_coeffs(f, coeffs);
    let lambda_top = top_eigenvalue(n, q).ok();
    Ok(GradedTraceReport {
        label: label.to_string(),
        at_one: trace.eval(f, &f.one()),
        trace,
        lambda_top,
    })
}

/// `tr_Q(t) = λ_Q t^L tr_{Q^{-1}}(1/t)`: returns `λ_Q` and whether it holds.
pub fn poincare_check(n: &NicholsAlgebra, q: &LetterOperator) -> Result<(Scalar, bool)> {
    let f = n.field();
    let lambda = top_eigenvalue(n, q)?;
    let top = n.max_degree();
    let direct = TracePoly::from_coeffs(f, trace_coefficients(n, q, top)?);
    let inv = q.inverse(f);
    let dual = TracePoly::from_coeffs(f, trace_coefficients(n, &inv, top)?)
        .reverse(f, top)?
        .scale(f, &lambda);
    Ok((lambda, direct == dual))
}

/// Rebuilds a full trace from its lower half.
///
/// `lower` and `lower_inverse` hold the coefficients of `Q` and `Q^{-1}` up to
/// at least `⌈L/2⌉`; coefficients above are `λ_Q·tr_{Q^{-1}}[L−k]`. Every
/// degree known both ways must agree.
pub fn duality_completion(
    field: &crate::scalars::Field,
    top_degree: usize,
    lower: &[Scalar],
    lower_inverse: &[Scalar],
    lambda: &Scalar,
) -> Result<TracePoly> {
    let half = top_degree.div_ceil(2);
    if lower.len() <= half || lower_inverse.len() <= half {
        return Err(Error::DegreeOutOfRange {
            requested: half,
            available: lower.len().min(lower_inverse.len()).saturating_sub(1),
        });
    }
    let mut coeffs = Vec::with_capacity(top_degree + 1);
    for k in 0..=top_degree {
        let mirrored = lower_inverse
            .get(top_degree - k)
            .map(|c| field.mul(lambda, c));
        match (lower.get(k), mirrored) {
            (Some(a), Some(b)) => {
                if *a != b {
                    return Err(Error::DualityMismatch { degree: k });
                }
                coeffs.push(a.clone());
            }
            (Some(a), None) => coeffs.push(a.clone()),
            (None, Some(b)) => coeffs.push(b),
            (None, None) => unreachable!("lower halves cover every degree"),
        }
    }
    Ok(TracePoly::from_coeffs(field, coeffs))
}

/// Graded trace via the lower half, `Q^{-1}` and the top eigenvalue.
pub fn graded_trace_by_duality(
    n: &NicholsAlgebra,
    q: &LetterOperator,
    label: &str,
) -> Result<GradedTraceReport> {
    let f = n.field();
    let top = n.top_degree().ok_or(Error::Incomplete(n.max_degree()))?;
    let half = top.div_ceil(2);
    let lambda = top_eigenvalue(n, q)?;
    let lower = trace_coefficients(n, q, half)?;
    let lower_inv = trace_coefficients(n, &q.inverse(f), half)?;
    let trace = duality_completion(f, top, &lower, &lower_inv, &lambda)?;
    Ok(GradedTraceReport {
        label: label.to_string(),
        at_one: trace.eval(f, &f.one()),
        trace,
        lambda_top: Some(lambda),
    })
}
