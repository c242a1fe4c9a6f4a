//! Polynomials in the grading variable `t` with field coefficients.

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// `c_0 + c_1 t + … + c_L t^L`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TracePoly {
    coeffs: Vec<Scalar>,
}

impl TracePoly {
    pub fn zero() -> Self {
        TracePoly { coeffs: Vec::new() }
    }

    pub fn constant(f: &Field, c: Scalar) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one(f: &Field) -> Self {
        Self::constant(f, f.one())
    }

    /// `t`
    pub fn t(f: &Field) -> Self {
        Self::from_coeffs(f, vec![f.zero(), f.one()])
    }

    pub fn from_coeffs(f: &Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        TracePoly { coeffs }
    }

    pub fn from_ints(f: &Field, ints: &[i64]) -> Self {
        Self::from_coeffs(f, ints.iter().map(|&n| f.from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, f: &Field, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, f: &Field, other: &TracePoly) -> TracePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| f.add(&self.coeff(f, k), &other.coeff(f, k)))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn neg(&self, f: &Field) -> TracePoly {
        TracePoly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, f: &Field, other: &TracePoly) -> TracePoly {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &Field, c: &Scalar) -> TracePoly {
        Self::from_coeffs(f, self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &TracePoly) -> TracePoly {
        if self.is_zero() || other.is_zero() {
            return TracePoly::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(&out[i + j], a, b);
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn pow(&self, f: &Field, e: u32) -> TracePoly {
        (0..e).fold(TracePoly::one(f), |acc, _| acc.mul(f, self))
    }

    /// Quotient and remainder of long division.
    pub fn div_rem(&self, f: &Field, d: &TracePoly) -> Result<(TracePoly, TracePoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(&d.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((TracePoly::zero(), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, di));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    /// Quotient and whether the division was exact.
    pub fn exact_div(&self, f: &Field, d: &TracePoly) -> Result<(TracePoly, bool)> {
        let (q, r) = self.div_rem(f, d)?;
        Ok((q, r.is_zero()))
    }

    /// `p(λ t^k)`
    pub fn substitute(&self, f: &Field, lambda: &Scalar, k: usize) -> TracePoly {
        assert!(k >= 1, "substitution degree must be positive");
        if self.is_zero() {
            return TracePoly::zero();
        }
        let mut out = vec![f.zero(); (self.coeffs.len() - 1) * k + 1];
        let mut lp = f.one();
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j * k] = f.mul(c, &lp);
            lp = f.mul(&lp, lambda);
        }
        Self::from_coeffs(f, out)
    }

    /// `t^L p(1/t)`: coefficients `c_L, …, c_0`.
    pub fn reverse(&self, f: &Field, l: usize) -> Result<TracePoly> {
        if let Some(d) = self.degree() {
            if d > l {
                return Err(Error::DegreeOutOfRange {
                    requested: d,
                    available: l,
                });
            }
        }
        let coeffs = (0..=l).map(|k| self.coeff(f, l - k)).collect();
        Ok(Self::from_coeffs(f, coeffs))
    }

    pub fn eval(&self, f: &Field, a: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.mul_add(c, &acc, a))
    }

    /// Coefficients in the field's textual encoding, space separated.
    pub fn encode(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| f.encode(c))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Coefficients in human form, e.g. `[1, -1, 0, -1, 1]`.
    pub fn format_coeffs(&self, f: &Field) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| f.format(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::new(FieldSpec::rationals()).unwrap()
    }

    #[test]
    fn exact_division_of_constructed_product() {
        let f = q();
        let a = TracePoly::from_ints(&f, &[1, 1]);
        let b = TracePoly::from_ints(&f, &[1, 1, 1]);
        let p = a.mul(&f, &a).mul(&f, &b);
        let (quot, ok) = p.exact_div(&f, &b).unwrap();
        assert!(ok);
        assert_eq!(quot, a.mul(&f, &a));
        let (_, ok) = b.exact_div(&f, &a).unwrap();
        assert!(!ok);
        assert!(p.exact_div(&f, &TracePoly::zero()).is_err());
    }

    #[test]
    fn palindromic_reverse() {
        let f = q();
        let h = TracePoly::from_ints(&f, &[1, 3, 4, 3, 1]);
        assert_eq!(h.reverse(&f, 4).unwrap(), h);
        let p = TracePoly::from_ints(&f, &[1, 2]);
        assert_eq!(
            p.reverse(&f, 3).unwrap(),
            TracePoly::from_ints(&f, &[0, 0, 2, 1])
        );
        assert!(h.reverse(&f, 3).is_err());
    }

    #[test]
    fn eval_at_root() {
        let f = q();
        let a = TracePoly::from_ints(&f, &[1, -1]);
        let p = a.mul(&f, &a).mul(&f, &TracePoly::from_ints(&f, &[1, 1, 1]));
        assert!(f.is_zero(&p.eval(&f, &f.one())));
    }

    #[test]
    fn substitute_shapes() {
        let f = Field::new(FieldSpec::cyclotomic(4)).unwrap();
        let p = TracePoly::from_ints(&f, &[1, 1]);
        let s = p.substitute(&f, &f.zeta(), 4);
        assert_eq!(s.degree(), Some(4));
        assert_eq!(s.coeff(&f, 4), f.zeta());
    }

    fn arb_poly() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..6, 0..7)
    }

    proptest! {
        #[test]
        fn exact_div_inverts_mul(a in arb_poly(), b in arb_poly()) {
            let f = q();
            let pa = TracePoly::from_ints(&f, &a);
            let pb = TracePoly::from_ints(&f, &b);
            prop_assume!(!pb.is_zero());
            let (quot, ok) = pa.mul(&f, &pb).exact_div(&f, &pb).unwrap();
            prop_assert!(ok);
            prop_assert_eq!(quot, pa);
        }

        #[test]
        fn substitute_then_eval_one(a in arb_poly(), j in 0i64..6, k in 1usize..4) {
            let f = Field::new(FieldSpec::cyclotomic(6)).unwrap();
            let p = TracePoly::from_ints(&f, &a);
            let lambda = f.zeta_pow(j);
            prop_assert_eq!(p.substitute(&f, &lambda, k).eval(&f, &f.one()), p.eval(&f, &lambda));
        }
    }
}
