//! Exact rationals with an inline machine-word fast path.
//!
//! Values that fit into `i64 / i64` stay inline; anything larger is promoted
//! to a boxed big-integer pair and demoted again as soon as it fits. The
//! representation is canonical (positive denominator, coprime parts, inline
//! whenever possible), so structural equality and hashing are value equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<(BigInt, BigInt)>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big_parts(n, BigInt::one())
    }

    /// Builds `num / den`; panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new((BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big_parts(mut n: BigInt, mut d: BigInt) -> Self {
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() && !g.is_zero() {
            n /= &g;
            d /= &g;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new((n, d))),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.1.is_one(),
        }
    }

    pub fn numerator(&self) -> BigInt {
        self.big_parts().0
    }

    pub fn denominator(&self) -> BigInt {
        self.big_parts().1
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.0.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Bit length of numerator plus denominator; used as a pivot height.
    pub fn height(&self) -> u64 {
        match self {
            Rational::Small(n, d) => {
                (64 - n.unsigned_abs().leading_zeros()) as u64
                    + (64 - d.unsigned_abs().leading_zeros()) as u64
            }
            Rational::Big(b) => b.0.bits() + b.1.bits(),
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(a, 1), Rational::Small(b, 1)) => match a.checked_add(*b) {
                Some(s) => Rational::Small(s, 1),
                None => Self::from_i128(*a as i128 + *b as i128, 1),
            },
            (Rational::Small(n1, d1), Rational::Small(n2, d2)) => {
                if d1 == d2 {
                    Self::from_i128(*n1 as i128 + *n2 as i128, *d1 as i128)
                } else {
                    let n = *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128;
                    let d = *d1 as i128 * *d2 as i128;
                    Self::from_i128(n, d)
                }
            }
            _ => {
                let (n1, d1) = self.big_parts();
                let (n2, d2) = other.big_parts();
                Self::from_big_parts(n1 * &d2 + n2 * &d1, d1 * d2)
            }
        }
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Self::from_i128(-(*n as i128), *d as i128),
            },
            Rational::Big(b) => Self::from_big_parts(-b.0.clone(), b.1.clone()),
        }
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(a, 1), Rational::Small(b, 1)) => match a.checked_mul(*b) {
                Some(p) => Rational::Small(p, 1),
                None => Self::from_i128(*a as i128 * *b as i128, 1),
            },
            (Rational::Small(n1, d1), Rational::Small(n2, d2)) => {
                if *n1 == 0 || *n2 == 0 {
                    return Rational::ZERO;
                }
                let g1 = gcd_i64(*n1, *d2);
                let g2 = gcd_i64(*n2, *d1);
                let n = (*n1 / g1) as i128 * (*n2 / g2) as i128;
                let d = (*d1 / g2) as i128 * (*d2 / g1) as i128;
                match (i64::try_from(n), i64::try_from(d)) {
                    (Ok(n), Ok(d)) => Rational::Small(n, d),
                    _ => Rational::Big(Box::new((BigInt::from(n), BigInt::from(d)))),
                }
            }
            _ => {
                let (n1, d1) = self.big_parts();
                let (n2, d2) = other.big_parts();
                Self::from_big_parts(n1 * n2, d1 * d2)
            }
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big_parts(b.1.clone(), b.0.clone()),
        })
    }

    /// Reduction modulo a prime `p`; `None` if `p` divides the denominator.
    pub fn mod_prime(&self, p: u64) -> Option<u64> {
        let (n, d) = self.big_parts();
        let pb = BigInt::from(p);
        let nm = n.mod_floor(&pb).to_u64()?;
        let dm = d.mod_floor(&pb).to_u64()?;
        if dm == 0 {
            return None;
        }
        let dinv = pow_mod(dm, p - 2, p);
        Some(((nm as u128 * dinv as u128) % p as u128) as u64)
    }

    pub fn parse(s: &str) -> Option<Rational> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Self::from_big_parts(n, d))
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(n1, d1), Rational::Small(n2, d2)) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            _ => {
                let (n1, d1) = self.big_parts();
                let (n2, d2) = other.big_parts();
                (n1 * d2).cmp(&(n2 * d1))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Rational::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.mul(&big.inv().unwrap());
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn min_value_negation() {
        let m = Rational::from_int(i64::MIN);
        assert_eq!(m.neg().neg(), m);
        assert!(m.neg().signum() > 0);
    }

    #[test]
    fn parse_and_display() {
        let r = Rational::parse("-6/4").unwrap();
        assert_eq!(r, Rational::new(-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::parse("7").unwrap().to_string(), "7");
        assert!(Rational::parse("1/0").is_none());
    }

    #[test]
    fn reduce_mod_prime() {
        assert_eq!(Rational::new(1, 2).mod_prime(5), Some(3));
        assert_eq!(Rational::new(-1, 1).mod_prime(2), Some(1));
        assert_eq!(Rational::new(1, 2).mod_prime(2), None);
    }

    fn arb() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }
}
