//! Exact scalars: the rationals or a prime field of odd characteristic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Ground field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// An element of a [`Field`]. Prime field elements carry their modulus so
/// that arithmetic needs no context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fe {
    Q(BigRational),
    P(u64, u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, l: u64) -> u64 {
    let mut r = 1u64 % l;
    b %= l;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % l as u128) as u64;
        }
        b = ((b as u128 * b as u128) % l as u128) as u64;
        e >>= 1;
    }
    r
}

impl Field {
    /// Validates the descriptor: prime fields need an odd prime modulus.
    pub fn checked(self) -> Result<Field> {
        match self {
            Field::Rational => Ok(self),
            Field::Prime(l) if l > 2 && l < (1 << 31) && is_prime(l) => Ok(self),
            Field::Prime(l) => Err(Error::Input(format!(
                "F_{l} is not a supported field (need an odd prime below 2^31)"
            ))),
        }
    }

    pub fn zero(self) -> Fe {
        match self {
            Field::Rational => Fe::Q(BigRational::zero()),
            Field::Prime(l) => Fe::P(0, l),
        }
    }

    pub fn one(self) -> Fe {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Fe {
        match self {
            Field::Rational => Fe::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(l) => Fe::P((n as i128).rem_euclid(l as i128) as u64, l),
        }
    }

    pub fn ratio(self, a: i64, b: i64) -> Fe {
        self.int(a) / self.int(b)
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(l) => l,
        }
    }

    /// Parses an integer or a fraction `a/b`.
    pub fn parse(self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let a: BigInt = a
            .parse()
            .map_err(|_| Error::Input(format!("bad coefficient '{s}'")))?;
        let b: BigInt = b
            .parse()
            .map_err(|_| Error::Input(format!("bad coefficient '{s}'")))?;
        if b.is_zero() {
            return Err(Error::Input(format!("zero denominator in '{s}'")));
        }
        Ok(match self {
            Field::Rational => Fe::Q(BigRational::new(a, b)),
            Field::Prime(l) => {
                let lb = BigInt::from(l);
                let red = |x: &BigInt| x.mod_floor(&lb).to_u64().unwrap();
                let (a, b) = (red(&a), red(&b));
                if b == 0 {
                    return Err(Error::Input(format!(
                        "denominator vanishes mod {l} in '{s}'"
                    )));
                }
                Fe::P(a, l) / Fe::P(b, l)
            }
        })
    }

    /// Enumerates every element when the field is finite.
    pub fn elements(self) -> Option<impl Iterator<Item = Fe>> {
        match self {
            Field::Rational => None,
            Field::Prime(l) => Some((0..l).map(move |v| Fe::P(v, l))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(l) => write!(f, "F_{l}"),
        }
    }
}

impl Fe {
    pub fn field(&self) -> Field {
        match self {
            Fe::Q(_) => Field::Rational,
            Fe::P(_, l) => Field::Prime(*l),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_zero(),
            Fe::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_one(),
            Fe::P(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Fe {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Fe::Q(r) => Fe::Q(r.recip()),
            Fe::P(v, l) => Fe::P(pow_mod(*v, l - 2, *l), *l),
        }
    }

    pub fn pow(&self, e: i64) -> Fe {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut r = self.field().one();
        for _ in 0..e.unsigned_abs() {
            r = &r * &base;
        }
        r
    }

    /// The rational value, if this is a rational element.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Fe::Q(r) => Some(r),
            Fe::P(..) => None,
        }
    }

    /// Exact small integer value, when it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Fe::Q(r) if r.is_integer() => r.to_integer().to_i64(),
            Fe::Q(_) => None,
            Fe::P(v, _) => Some(*v as i64),
        }
    }

    /// Whether the element is 0 or -1 times a positive quantity; only
    /// meaningful over the rationals and used for printing.
    fn is_negative(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_negative(),
            Fe::P(..) => false,
        }
    }

    /// All `k`-th roots of `self` that lie in the field.
    pub fn roots(&self, k: u32) -> Vec<Fe> {
        match self {
            Fe::Q(r) => {
                if r.is_zero() {
                    return vec![self.clone()];
                }
                let num = r.numer();
                let den = r.denom();
                let neg = num.is_negative();
                if neg && k % 2 == 0 {
                    return vec![];
                }
                let (Some(a), Some(b)) = (int_root(&num.abs(), k), int_root(den, k)) else {
                    return vec![];
                };
                let base = BigRational::new(if neg { -a } else { a }, b);
                if k % 2 == 0 {
                    vec![Fe::Q(base.clone()), Fe::Q(-base)]
                } else {
                    vec![Fe::Q(base)]
                }
            }
            Fe::P(_, l) => (0..*l)
                .map(|v| Fe::P(v, *l))
                .filter(|c| &c.pow(k as i64) == self)
                .collect(),
        }
    }
}

fn int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Fe::P(v, _) => write!(f, "{v}"),
        }
    }
}

impl Fe {
    /// Sign and absolute value for term printing.
    pub(crate) fn sign_split(&self) -> (bool, Fe) {
        if self.is_negative() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Fe> for &'a Fe {
            type Output = Fe;
            fn $m(self, o: &'a Fe) -> Fe {
                match (self, o) {
                    (Fe::Q(a), Fe::Q(b)) => Fe::Q($body(a.clone(), b.clone())),
                    (Fe::P(a, l), Fe::P(b, l2)) if l == l2 => {
                        let f: fn(u64, u64, u64) -> u64 = prime_op::$m;
                        Fe::P(f(*a, *b, *l), *l)
                    }
                    _ => panic!("mixed fields in arithmetic"),
                }
            }
        }
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: &'a Fe) -> Fe {
                (&self).$m(o)
            }
        }
    };
}

mod prime_op {
    pub fn add(a: u64, b: u64, l: u64) -> u64 {
        (a + b) % l
    }
    pub fn sub(a: u64, b: u64, l: u64) -> u64 {
        (a + l - b) % l
    }
    pub fn mul(a: u64, b: u64, l: u64) -> u64 {
        ((a as u128 * b as u128) % l as u128) as u64
    }
    pub fn div(a: u64, b: u64, l: u64) -> u64 {
        assert!(b != 0, "division by zero");
        mul(a, super::pow_mod(b, l - 2, l), l)
    }
}

binop!(Add, add, |a, b| a + b);
binop!(Sub, sub, |a, b| a - b);
binop!(Mul, mul, |a, b| a * b);
binop!(Div, div, |a: BigRational, b: BigRational| {
    assert!(!b.is_zero(), "division by zero");
    a / b
});

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        match self {
            Fe::Q(a) => Fe::Q(-a.clone()),
            Fe::P(a, l) => Fe::P((l - a) % l, *l),
        }
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic() {
        let k = Field::Prime(7);
        let a = k.int(3);
        assert_eq!(&a * &a.inv(), k.one());
        assert_eq!(k.int(-1), k.int(6));
        assert_eq!(k.parse("1/2").unwrap() * k.int(2), k.one());
    }

    #[test]
    fn rational_roots() {
        let k = Field::Rational;
        assert_eq!(k.int(-8).roots(3), vec![k.int(-2)]);
        assert!(k.int(2).roots(2).is_empty());
        assert_eq!(k.ratio(9, 4).roots(2).len(), 2);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Field::Prime(2).checked().is_err());
        assert!(Field::Prime(9).checked().is_err());
        assert!(Field::Prime(11).checked().is_ok());
    }
}
