//! Univariate polynomials over a [`Field`], coefficients stored low to high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub field: Field,
    pub coeffs: Vec<Fe>,
}

impl UPoly {
    pub fn new(field: Field, mut coeffs: Vec<Fe>) -> UPoly {
        while coeffs.last().is_some_and(Fe::is_zero) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> UPoly {
        UPoly::new(field, vec![])
    }

    pub fn one(field: Field) -> UPoly {
        UPoly::new(field, vec![field.one()])
    }

    /// `X - c`
    pub fn linear(c: &Fe) -> UPoly {
        UPoly::new(c.field(), vec![-c, c.field().one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv();
        UPoly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        UPoly::new(
            self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Fe) -> UPoly {
        UPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut r = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] + &(a * b);
            }
        }
        UPoly::new(self.field, r)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(self.field), self.clone());
        }
        let inv = d.lead().inv();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * b);
            }
            q[k] = c;
        }
        (UPoly::new(self.field, q), UPoly::new(self.field, r))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| acc * x + c)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(f), UPoly::zero(f));
        let (mut t0, mut t1) = (UPoly::zero(f), UPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lead().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct roots lying in the ground field, in a deterministic order.
    pub fn roots(&self) -> Vec<Fe> {
        if self.is_zero() {
            return vec![];
        }
        let mut out = match self.field {
            Field::Prime(l) if l < 1 << 16 => self
                .field
                .elements()
                .unwrap()
                .filter(|c| self.eval(c).is_zero())
                .collect::<Vec<_>>(),
            Field::Prime(l) => {
                let mut r = prime_roots(&self.monic(), l);
                r.sort_by_key(|c| c.to_i64());
                r
            }
            Field::Rational => rational_roots(self),
        };
        out.dedup();
        out
    }
}

fn pow_mod_poly(base: &UPoly, mut e: u64, m: &UPoly) -> UPoly {
    let mut r = UPoly::one(base.field);
    let mut b = base.div_rem(m).1;
    while e > 0 {
        if e & 1 == 1 {
            r = r.mul(&b).div_rem(m).1;
        }
        b = b.mul(&b).div_rem(m).1;
        e >>= 1;
    }
    r
}

/// Roots over a large prime field: isolate the split part with
/// `gcd(X^l - X, p)` and separate it with `(X + a)^((l-1)/2) - 1`.
fn prime_roots(p: &UPoly, l: u64) -> Vec<Fe> {
    let k = p.field;
    let x = UPoly::new(k, vec![k.zero(), k.one()]);
    let split = pow_mod_poly(&x, l, p).sub(&x).gcd(p);
    let mut stack = vec![split];
    let mut out = Vec::new();
    let mut a = 0i64;
    while let Some(f) = stack.pop() {
        match f.degree() {
            None | Some(0) => {}
            Some(1) => out.push(-&f.monic().coeffs[0]),
            Some(_) => {
                let shifted = UPoly::new(k, vec![k.int(a), k.one()]);
                a += 1;
                let h = pow_mod_poly(&shifted, (l - 1) / 2, &f).sub(&UPoly::one(k));
                let d = h.gcd(&f);
                if d.degree().unwrap_or(0) == 0 || d.degree() == f.degree() {
                    stack.push(f);
                } else {
                    stack.push(f.div_rem(&d).0);
                    stack.push(d);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

fn rational_roots(p: &UPoly) -> Vec<Fe> {
    let coeffs: Vec<BigRational> = p
        .coeffs
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        let a0 = &ints[0];
        let an = ints.last().unwrap();
        for u in divisors(a0) {
            for w in divisors(an) {
                for sign in [1, -1] {
                    let cand = BigRational::new(BigInt::from(sign) * &u, w.clone());
                    let val = ints.iter().rev().fold(BigRational::zero(), |acc, c| {
                        acc * &cand + BigRational::from_integer(c.clone())
                    });
                    if val.is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots.into_iter().map(Fe::Q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        let k = Field::Rational;
        UPoly::new(k, c.iter().map(|&v| k.int(v)).collect())
    }

    #[test]
    fn roots_over_q() {
        // (2X - 1)(X + 3)(X^2 + 1)
        let p = up(&[-1, 2]).mul(&up(&[3, 1])).mul(&up(&[1, 0, 1]));
        let k = Field::Rational;
        assert_eq!(p.roots(), vec![k.int(-3), k.ratio(1, 2)]);
        assert!(p.is_squarefree());
        assert!(!p.mul(&up(&[3, 1])).is_squarefree());
    }

    #[test]
    fn ext_gcd_identity() {
        let a = up(&[-1, 0, 1]);
        let b = up(&[2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, UPoly::one(Field::Rational));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn roots_over_prime_field() {
        let k = Field::Prime(5);
        let p = UPoly::new(k, vec![k.int(-1), k.zero(), k.one()]);
        assert_eq!(p.roots(), vec![k.int(1), k.int(4)]);
    }
}
