//! Cyclotomic fields `Q(ζ_n)` and finite fields `F_p(ζ_n)`.
//!
//! A [`Field`] is a runtime context; [`Scalar`]s are plain immutable values
//! whose meaning depends on the field that produced them. Every operation
//! takes the field explicitly and returns a fresh value in canonical form.
//!
//! * characteristic 0, `φ(n) = 1`: scalars are rationals.
//! * characteristic 0, `φ(n) > 1`: coefficient vectors in the power basis
//!   `1, ζ, …, ζ^{φ(n)-1}`, reduced modulo the cyclotomic polynomial `Φ_n`.
//! * characteristic `p`: `F_p[x]/(f)` where `f` is the first monic factor of
//!   `Φ_n mod p` of degree `ord_n(p)`, enumerating coefficient vectors in
//!   increasing base-`p` order (`c_0` least significant). Elements are
//!   encoded as that base-`p` integer; `ζ` is the class of `x`.

use std::fmt;

use super::rational::{pow_mod, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    pub characteristic: u64,
    pub cyclotomic_order: u32,
}

impl FieldSpec {
    pub fn new(characteristic: u64, cyclotomic_order: u32) -> Self {
        FieldSpec {
            characteristic,
            cyclotomic_order,
        }
    }

    pub fn rationals() -> Self {
        FieldSpec::new(0, 1)
    }

    pub fn cyclotomic(n: u32) -> Self {
        FieldSpec::new(0, n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field {} {}", self.characteristic, self.cyclotomic_order)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    /// Element of a finite field, base-`p` encoded coefficient vector.
    Fin(u32),
    /// Element of a characteristic-zero field of degree one.
    Rat(Rational),
    /// Power-basis coordinates in `Q(ζ_n)`.
    Cyc(Box<[Rational]>),
}

#[derive(Clone, Debug)]
enum Kind {
    Rational {
        zeta: Rational,
    },
    Cyclotomic {
        phi: usize,
        /// Low coefficients of the monic `Φ_n` (the leading 1 is implicit).
        modulus: Vec<i64>,
    },
    Prime {
        p: u32,
        zeta: u32,
    },
    Extension {
        p: u32,
        degree: usize,
        q: u32,
        modulus: Vec<u32>,
        exp: Vec<u32>,
        log: Vec<u32>,
    },
}

#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    kind: Kind,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = int_poly_div_exact(&num, &den);
        }
    }
    num
}

fn int_poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    debug_assert!(lead == 1 || lead == -1);
    let qlen = rem.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn] * lead;
        quot[k] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn multiplicative_order_mod(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = x * (p % n) % n;
        k += 1;
    }
    k
}

// Polynomials over F_p, coefficients lowest degree first.
fn fp_poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len();
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // modulus holds the low coefficients of a monic degree-d polynomial
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..d {
            let sub = c * modulus[i] as u64 % p as u64;
            prod[k - d + i] = (prod[k - d + i] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod.into_iter().map(|x| x as u32).collect()
}

fn fp_poly_divides(f: &[u32], g: &[i64], p: u32) -> bool {
    // f monic given by low coefficients; test g mod f == 0
    let d = f.len();
    let mut r: Vec<u64> = g.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    for k in (d..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        r[k] = 0;
        for i in 0..d {
            let sub = c * f[i] as u64 % p as u64;
            r[k - d + i] = (r[k - d + i] + p as u64 - sub) % p as u64;
        }
    }
    r.iter().take(d).all(|&c| c == 0)
}

fn digits(mut x: u32, p: u32, d: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    for slot in v.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

const EXTENSION_CAP: u64 = 1 << 16;

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let n = spec.cyclotomic_order;
        if n == 0 {
            return Err(Error::InvalidField(
                "cyclotomic order must be at least 1".into(),
            ));
        }
        let kind = if spec.characteristic == 0 {
            let phi_poly = cyclotomic_polynomial(n);
            let phi = phi_poly.len() - 1;
            if phi > 64 {
                return Err(Error::InvalidField(format!("Φ_{n} has degree {phi} > 64")));
            }
            if phi == 1 {
                Kind::Rational {
                    zeta: Rational::from_int(-phi_poly[0]),
                }
            } else {
                Kind::Cyclotomic {
                    phi,
                    modulus: phi_poly[..phi].to_vec(),
                }
            }
        } else {
            let p = spec.characteristic;
            if !is_prime(p) {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
            if p >= 1 << 31 {
                return Err(Error::InvalidField(format!("characteristic {p} too large")));
            }
            if gcd(p, n as u64) != 1 {
                return Err(Error::InvalidField(format!(
                    "characteristic {p} divides the root order {n}"
                )));
            }
            let degree = multiplicative_order_mod(p, n as u64) as usize;
            if degree == 1 {
                Kind::Prime {
                    p: p as u32,
                    zeta: Self::prime_root(p, n as u64),
                }
            } else {
                let q = p.checked_pow(degree as u32).unwrap_or(u64::MAX);
                if q > EXTENSION_CAP {
                    return Err(Error::InvalidField(format!(
                        "F_{p}(ζ_{n}) has {q} elements; the table cap is {EXTENSION_CAP}"
                    )));
                }
                Self::extension(p as u32, degree, q as u32, &cyclotomic_polynomial(n))?
            }
        };
        Ok(Field { spec, kind })
    }

    /// Root of the first linear factor `x + c` of `Φ_n mod p` (smallest `c`).
    fn prime_root(p: u64, n: u64) -> u32 {
        if n == 1 {
            return 1;
        }
        let pf = prime_factors(p - 1);
        let g = (2..p)
            .find(|&g| pf.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
            .unwrap_or(1);
        let base = pow_mod(g, (p - 1) / n, p);
        // roots are base^j, gcd(j, n) = 1; smallest c = p - r means largest r
        (1..n)
            .filter(|&j| gcd(j, n) == 1)
            .map(|j| pow_mod(base, j, p))
            .max()
            .unwrap_or(1) as u32
    }

    fn extension(p: u32, degree: usize, q: u32, phi: &[i64]) -> Result<Kind> {
        let modulus = (0..p.pow(degree as u32))
            .map(|k| digits(k, p, degree))
            .find(|f| fp_poly_divides(f, phi, p))
            .ok_or_else(|| Error::InvalidField("no factor of Φ_n found".into()))?;
        let order = (q - 1) as u64;
        let pf = prime_factors(order);
        let mul = |a: u32, b: u32| -> u32 {
            undigits(
                &fp_poly_mulmod(&digits(a, p, degree), &digits(b, p, degree), &modulus, p),
                p,
            )
        };
        let pow = |a: u32, mut e: u64| -> u32 {
            let (mut r, mut b) = (1u32, a);
            while e > 0 {
                if e & 1 == 1 {
                    r = mul(r, b);
                }
                b = mul(b, b);
                e >>= 1;
            }
            r
        };
        let gen = (2..q)
            .find(|&g| pf.iter().all(|&f| pow(g, order / f) != 1))
            .ok_or_else(|| Error::InvalidField("no primitive element".into()))?;
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = k as u32;
            x = mul(x, gen);
        }
        Ok(Kind::Extension {
            p,
            degree,
            q,
            modulus,
            exp,
            log,
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.spec.characteristic
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.spec.cyclotomic_order
    }

    /// Dimension of the field over its prime field.
    pub fn degree(&self) -> usize {
        match &self.kind {
            Kind::Rational { .. } | Kind::Prime { .. } => 1,
            Kind::Cyclotomic { phi, .. } => *phi,
            Kind::Extension { degree, .. } => *degree,
        }
    }

    /// Monic modulus polynomial over the prime field, lowest degree first.
    pub fn modulus(&self) -> Vec<String> {
        match &self.kind {
            Kind::Rational { zeta } => vec![zeta.neg().to_string(), "1".into()],
            Kind::Cyclotomic { modulus, .. } => modulus
                .iter()
                .map(|c| c.to_string())
                .chain(std::iter::once("1".into()))
                .collect(),
            Kind::Prime { p, zeta } => vec![((p - zeta) % p).to_string(), "1".into()],
            Kind::Extension { modulus, .. } => modulus
                .iter()
                .map(|c| c.to_string())
                .chain(std::iter::once("1".into()))
                .collect(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match &self.kind {
            Kind::Rational { .. } => Scalar::Rat(Rational::ZERO),
            Kind::Cyclotomic { phi, .. } => {
                Scalar::Cyc(vec![Rational::ZERO; *phi].into_boxed_slice())
            }
            Kind::Prime { .. } | Kind::Extension { .. } => Scalar::Fin(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match &self.kind {
            Kind::Rational { .. } => Scalar::Rat(Rational::from_int(n)),
            Kind::Cyclotomic { phi, .. } => {
                let mut v = vec![Rational::ZERO; *phi];
                v[0] = Rational::from_int(n);
                Scalar::Cyc(v.into_boxed_slice())
            }
            Kind::Prime { p, .. } | Kind::Extension { p, .. } => {
                Scalar::Fin(n.rem_euclid(*p as i64) as u32)
            }
        }
    }

    pub fn from_rational(&self, r: &Rational) -> Result<Scalar> {
        match &self.kind {
            Kind::Rational { .. } => Ok(Scalar::Rat(r.clone())),
            Kind::Cyclotomic { phi, .. } => {
                let mut v = vec![Rational::ZERO; *phi];
                v[0] = r.clone();
                Ok(Scalar::Cyc(v.into_boxed_slice()))
            }
            Kind::Prime { p, .. } | Kind::Extension { p, .. } => r
                .mod_prime(*p as u64)
                .map(|x| Scalar::Fin(x as u32))
                .ok_or_else(|| Error::NotRepresentable {
                    value: r.to_string(),
                    characteristic: *p as u64,
                }),
        }
    }

    /// The fixed primitive `n`-th root of unity.
    pub fn zeta(&self) -> Scalar {
        match &self.kind {
            Kind::Rational { zeta } => Scalar::Rat(zeta.clone()),
            Kind::Cyclotomic { phi, .. } => {
                let mut v = vec![Rational::ZERO; *phi];
                v[1] = Rational::ONE;
                Scalar::Cyc(v.into_boxed_slice())
            }
            Kind::Prime { zeta, .. } => Scalar::Fin(*zeta),
            Kind::Extension { p, .. } => Scalar::Fin(*p),
        }
    }

    pub fn zeta_pow(&self, k: i64) -> Scalar {
        let n = self.spec.cyclotomic_order as i64;
        self.pow(&self.zeta(), k.rem_euclid(n))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(v) => v.iter().all(Rational::is_zero),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => *x == 1,
            Scalar::Rat(r) => r.is_one(),
            Scalar::Cyc(v) => v[0].is_one() && v[1..].iter().all(Rational::is_zero),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x.add(y)),
            (Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(self.fin_add(*x, *y)),
            (Scalar::Cyc(x), Scalar::Cyc(y)) => {
                Scalar::Cyc(x.iter().zip(y.iter()).map(|(u, v)| u.add(v)).collect())
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rat(x) => Scalar::Rat(x.neg()),
            Scalar::Fin(x) => Scalar::Fin(self.fin_neg(*x)),
            Scalar::Cyc(x) => Scalar::Cyc(x.iter().map(Rational::neg).collect()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x.mul(y)),
            (Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(self.fin_mul(*x, *y)),
            (Scalar::Cyc(x), Scalar::Cyc(y)) => Scalar::Cyc(self.cyc_mul(x, y)),
            _ => panic!("scalars from different fields"),
        }
    }

    /// `a + b * c`
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        self.add(a, &self.mul(b, c))
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Rat(x) => Scalar::Rat(x.inv().ok_or(Error::DivisionByZero)?),
            Scalar::Fin(x) => Scalar::Fin(self.fin_inv(*x)),
            Scalar::Cyc(x) => Scalar::Cyc(self.cyc_inv(x)?),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e`; negative exponents invert first.
    pub fn pow(&self, a: &Scalar, e: i64) -> Scalar {
        let base = if e < 0 {
            self.inv(a).expect("negative power of zero")
        } else {
            a.clone()
        };
        let mut e = e.unsigned_abs();
        let mut result = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        result
    }

    /// Sum of coefficient heights; drives pivot selection.
    pub fn height(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Fin(_) => 0,
            Scalar::Rat(r) => r.height(),
            Scalar::Cyc(v) => v.iter().map(Rational::height).sum(),
        }
    }

    fn fin_add(&self, x: u32, y: u32) -> u32 {
        match &self.kind {
            Kind::Prime { p, .. } => ((x as u64 + y as u64) % *p as u64) as u32,
            Kind::Extension { p, degree, .. } => {
                if *p == 2 {
                    x ^ y
                } else {
                    let (mut x, mut y) = (x, y);
                    let (mut r, mut base) = (0u32, 1u32);
                    for _ in 0..*degree {
                        r += ((x % p + y % p) % p) * base;
                        x /= p;
                        y /= p;
                        base *= p;
                    }
                    r
                }
            }
            _ => unreachable!(),
        }
    }

    fn fin_neg(&self, x: u32) -> u32 {
        match &self.kind {
            Kind::Prime { p, .. } => (p - x) % p,
            Kind::Extension { p, degree, .. } => {
                if *p == 2 {
                    x
                } else {
                    let mut x = x;
                    let (mut r, mut base) = (0u32, 1u32);
                    for _ in 0..*degree {
                        r += ((p - x % p) % p) * base;
                        x /= p;
                        base *= p;
                    }
                    r
                }
            }
            _ => unreachable!(),
        }
    }

    fn fin_mul(&self, x: u32, y: u32) -> u32 {
        match &self.kind {
            Kind::Prime { p, .. } => ((x as u64 * y as u64) % *p as u64) as u32,
            Kind::Extension { q, exp, log, .. } => {
                if x == 0 || y == 0 {
                    0
                } else {
                    let s = (log[x as usize] + log[y as usize]) % (q - 1);
                    exp[s as usize]
                }
            }
            _ => unreachable!(),
        }
    }

    fn fin_inv(&self, x: u32) -> u32 {
        match &self.kind {
            Kind::Prime { p, .. } => pow_mod(x as u64, *p as u64 - 2, *p as u64) as u32,
            Kind::Extension { q, exp, log, .. } => {
                let l = log[x as usize];
                exp[((q - 1 - l) % (q - 1)) as usize]
            }
            _ => unreachable!(),
        }
    }

    fn cyc_modulus(&self) -> (usize, &[i64]) {
        match &self.kind {
            Kind::Cyclotomic { phi, modulus } => (*phi, modulus),
            _ => unreachable!(),
        }
    }

    fn cyc_mul(&self, x: &[Rational], y: &[Rational]) -> Box<[Rational]> {
        let (phi, modulus) = self.cyc_modulus();
        let mut prod = vec![Rational::ZERO; 2 * phi - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        for k in (phi..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, &m) in modulus.iter().enumerate() {
                if m != 0 {
                    let t = c.mul(&Rational::from_int(m));
                    prod[k - phi + i] = prod[k - phi + i].sub(&t);
                }
            }
        }
        prod.truncate(phi);
        prod.into_boxed_slice()
    }

    fn cyc_inv(&self, x: &[Rational]) -> Result<Box<[Rational]>> {
        // Solve (multiplication by x) * y = 1 by elimination on a φ×φ system.
        let (phi, _) = self.cyc_modulus();
        let mut cols: Vec<Box<[Rational]>> = Vec::with_capacity(phi);
        let mut basis = vec![Rational::ZERO; phi];
        basis[0] = Rational::ONE;
        let mut cur: Box<[Rational]> = basis.into_boxed_slice();
        let mut zeta = vec![Rational::ZERO; phi];
        zeta[1] = Rational::ONE;
        for _ in 0..phi {
            cols.push(self.cyc_mul(x, &cur));
            cur = self.cyc_mul(&cur, &zeta);
        }
        // augmented matrix rows i: [cols[0][i], ..., cols[phi-1][i] | rhs_i]
        let mut m: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
                row.push(if i == 0 {
                    Rational::ONE
                } else {
                    Rational::ZERO
                });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            m.swap(col, piv);
            let inv = m[col][col].inv().ok_or(Error::DivisionByZero)?;
            for v in m[col].iter_mut() {
                *v = v.mul(&inv);
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=phi {
                        let t = f.mul(&m[col][c]);
                        m[r][c] = m[r][c].sub(&t);
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[phi].clone()).collect())
    }

    /// Coordinates over the prime field, as strings of integers/rationals.
    pub fn coefficients(&self, a: &Scalar) -> Vec<Rational> {
        match (&self.kind, a) {
            (_, Scalar::Rat(r)) => vec![r.clone()],
            (_, Scalar::Cyc(v)) => v.to_vec(),
            (Kind::Prime { .. }, Scalar::Fin(x)) => vec![Rational::from_int(*x as i64)],
            (Kind::Extension { p, degree, .. }, Scalar::Fin(x)) => digits(*x, *p, *degree)
                .into_iter()
                .map(|c| Rational::from_int(c as i64))
                .collect(),
            _ => unreachable!(),
        }
    }

    pub fn from_coefficients(&self, coeffs: &[Rational]) -> Result<Scalar> {
        if coeffs.len() != self.degree() {
            return Err(Error::MalformedScalar(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        match &self.kind {
            Kind::Rational { .. } => Ok(Scalar::Rat(coeffs[0].clone())),
            Kind::Cyclotomic { .. } => Ok(Scalar::Cyc(coeffs.to_vec().into_boxed_slice())),
            Kind::Prime { .. } => self.from_rational(&coeffs[0]),
            Kind::Extension { p, .. } => {
                let mut ds = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    match self.from_rational(c)? {
                        Scalar::Fin(x) if x < *p => ds.push(x),
                        _ => return Err(Error::MalformedScalar(c.to_string())),
                    }
                }
                Ok(Scalar::Fin(undigits(&ds, *p)))
            }
        }
    }

    /// Textual form used by caches: `[c0,c1,...]`.
    pub fn encode(&self, a: &Scalar) -> String {
        let parts: Vec<String> = self.coefficients(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn decode(&self, s: &str) -> Result<Scalar> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::MalformedScalar(s.to_string()))?;
        let coeffs = inner
            .split(',')
            .map(|c| Rational::parse(c).ok_or_else(|| Error::MalformedScalar(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.from_coefficients(&coeffs)
    }

    /// Generator `ω` and order of the group of roots of unity `⟨-1, ζ_n⟩`.
    pub fn unit_root_generator(&self) -> (Scalar, u32) {
        let n = self.spec.cyclotomic_order;
        let minus_one_is_one = self.spec.characteristic == 2;
        if minus_one_is_one || n.is_multiple_of(2) {
            (self.zeta(), n)
        } else {
            (self.neg(&self.zeta()), 2 * n)
        }
    }

    /// All roots of unity in `⟨-1, ζ_n⟩`, ordered by discrete logarithm.
    pub fn unit_roots(&self) -> Vec<Scalar> {
        let (w, m) = self.unit_root_generator();
        let mut out = Vec::with_capacity(m as usize);
        let mut x = self.one();
        for _ in 0..m {
            out.push(x.clone());
            x = self.mul(&x, &w);
        }
        out
    }

    /// Index `j` with `a = ω^j`, if `a` lies in `⟨-1, ζ_n⟩`.
    pub fn discrete_log(&self, a: &Scalar) -> Option<u32> {
        self.unit_roots()
            .iter()
            .position(|r| r == a)
            .map(|j| j as u32)
    }

    /// Smallest `k ≤ bound` with `a^k = 1`.
    pub fn multiplicative_order(&self, a: &Scalar, bound: u32) -> Option<u32> {
        if self.is_zero(a) {
            return None;
        }
        let mut x = a.clone();
        for k in 1..=bound {
            if self.is_one(&x) {
                return Some(k);
            }
            x = self.mul(&x, a);
        }
        None
    }

    fn zeta_name(&self) -> &'static str {
        if self.spec.cyclotomic_order == 4 && self.spec.characteristic == 0 {
            "i"
        } else {
            "zeta"
        }
    }

    /// Human-readable form: `±ζ^k` for roots of unity, otherwise a sum.
    pub fn format(&self, a: &Scalar) -> String {
        let n = self.spec.cyclotomic_order as i64;
        if self.is_zero(a) {
            return "0".into();
        }
        let z = self.zeta_name();
        let power = |e: i64| -> String {
            match e {
                0 => "1".to_string(),
                1 => z.to_string(),
                _ => format!("{z}^{e}"),
            }
        };
        let minus = self.neg(&self.one());
        let char2 = self.spec.characteristic == 2;
        for e in 0..n.max(1) {
            let r = self.zeta_pow(e);
            if &r == a {
                if !char2 && n % 2 == 0 && e >= n / 2 && n > 1 {
                    let e2 = e - n / 2;
                    return if e2 == 0 {
                        "-1".into()
                    } else {
                        format!("-{}", power(e2))
                    };
                }
                return power(e);
            }
            if !char2 && self.mul(&r, &minus) == *a {
                return format!("-{}", power(e));
            }
        }
        match &self.kind {
            Kind::Rational { .. } | Kind::Prime { .. } => self.coefficients(a)[0].to_string(),
            _ => {
                let coeffs = self.coefficients(a);
                let mut terms = Vec::new();
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mon = match k {
                        0 => String::new(),
                        1 => z.to_string(),
                        _ => format!("{z}^{k}"),
                    };
                    terms.push(match (k, c.is_one()) {
                        (0, _) => c.to_string(),
                        (_, true) => mon,
                        _ => format!("{c}*{mon}"),
                    });
                }
                format!("({})", terms.join(" + "))
            }
        }
    }

    /// Parses `1`, `-1`, `3/2`, `zeta`, `-zeta^2`, `i`, `-i`, `zeta^-1`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::MalformedScalar(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if t.starts_with('[') {
            return self.decode(t);
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
        };
        let n = self.spec.cyclotomic_order as i64;
        let value = if let Some(r) = Rational::parse(body) {
            self.from_rational(&r)?
        } else {
            let (base, exp) = match body.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let root_exp = match base {
                "zeta" | "z" => 1,
                "i" => {
                    if n % 4 != 0 {
                        return Err(Error::MalformedScalar(format!(
                            "`i` needs the cyclotomic order to be a multiple of 4 (got {n})"
                        )));
                    }
                    n / 4
                }
                _ => return Err(bad()),
            };
            self.zeta_pow(root_exp * exp)
        };
        Ok(if neg { self.neg(&value) } else { value })
    }
}
