//! The weighted polynomial ring `S = k[x,y]` (deg x = q, deg y = p) and the
//! hypersurface `R = S/(g)` with `g = (b x^p + y^q) f`.

use std::sync::RwLock;

use serde::Serialize;

use crate::branches::{self, Branch};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::Mat;
use crate::poly::{Mono, WPoly};

/// User-facing description of a ring, before validation.
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub field: Field,
    pub p: u32,
    pub q: u32,
    pub b: Fe,
    pub f: WPoly,
    pub m: Option<u32>,
    pub n: Option<u32>,
}

#[derive(Debug)]
pub struct HypersurfaceRing {
    pub field: Field,
    pub p: u32,
    pub q: u32,
    pub b: Fe,
    pub f: WPoly,
    pub g: WPoly,
    pub v: u32,
    pub m: Option<u32>,
    pub n: Option<u32>,
    /// `g` has no repeated factor.
    pub reduced: bool,
    /// `y^(q+v) - g`, the replacement rule for the top power of `y`.
    tail: WPoly,
    /// Branches of `g` (of its radical when `g` is not reduced), or the
    /// reason they are unavailable over `k`.
    branches: std::result::Result<Vec<Branch>, Error>,
    ypow: RwLock<Vec<WPoly>>,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether `d` lies in the numerical semigroup generated by `p` and `q`.
pub fn semigroup_member(d: i64, p: i64, q: i64) -> bool {
    if d < 0 {
        return false;
    }
    (0..=d / p).any(|a| (d - a * p) % q == 0)
}

impl HypersurfaceRing {
    pub fn new(spec: RingSpec) -> Result<HypersurfaceRing> {
        let RingSpec {
            field,
            p,
            q,
            b,
            f,
            m,
            n,
        } = spec;
        let field = field.checked()?;
        if p < 3 || q < 3 || gcd(p as u64, q as u64) != 1 {
            return Err(Error::Input(format!(
                "weights not coprime/>=3: (p,q) = ({p},{q})"
            )));
        }
        if b.field() != field || f.field != field {
            return Err(Error::Input("coefficients from a different field".into()));
        }
        let (wx, wy) = (q as i64, p as i64);
        let df = f
            .degree(wx, wy)
            .ok_or_else(|| Error::Input(format!("f = {f} is zero or not homogeneous")))?;
        if df % p as i64 != 0 {
            return Err(Error::Input(format!(
                "deg f = {df} is not a multiple of p = {p}"
            )));
        }
        let v = (df / p as i64) as u32;
        if f.terms().all(|(m, _)| m.0 > 0) {
            return Err(Error::Input(format!("x divides f = {f}")));
        }
        let rest = f.sub(&WPoly::mono(field, 0, v));
        if rest.terms().any(|(m, _)| m.0 == 0) {
            return Err(Error::Input(format!("f - y^{v} is not divisible by x")));
        }
        if let (Some(m), Some(n)) = (m, n) {
            if !(1 <= m && m + 1 < p && 2 <= n && n < q) {
                return Err(Error::Input(format!(
                    "ideal parameters out of range: need 1 <= m < p-1 and 2 <= n < q, got m={m}, n={n}"
                )));
            }
        } else if m.is_some() != n.is_some() {
            return Err(Error::Input("m and n must be given together".into()));
        }
        let lead = WPoly::term(b.clone(), (p, 0)).add(&WPoly::mono(field, 0, q));
        let g = lead.mul(&f);
        let big_n = q + v;
        let tail = WPoly::mono(field, 0, big_n).sub(&g);
        debug_assert!(tail.max_y().map_or(true, |j| j < big_n));
        let shape = branches::factor_form(&g, p, q);
        let reduced = shape.as_ref().map(|s| s.squarefree).unwrap_or(false);
        if !reduced && !b.is_zero() {
            return Err(Error::Input(format!("g = {g} is not squarefree")));
        }
        let branches = shape.and_then(|s| s.branches);
        Ok(HypersurfaceRing {
            field,
            p,
            q,
            b,
            f,
            g,
            v,
            m,
            n,
            reduced,
            tail,
            branches,
            ypow: RwLock::new(Vec::new()),
        })
    }

    /// `deg x`
    pub fn wx(&self) -> i64 {
        self.q as i64
    }

    /// `deg y`
    pub fn wy(&self) -> i64 {
        self.p as i64
    }

    /// The `y`-degree of `g`, i.e. `q + v`.
    pub fn big_n(&self) -> u32 {
        self.q + self.v
    }

    pub fn deg_g(&self) -> i64 {
        self.wy() * self.big_n() as i64
    }

    pub fn mono_degree(&self, (i, j): Mono) -> i64 {
        self.wx() * i as i64 + self.wy() * j as i64
    }

    pub fn degree(&self, r: &WPoly) -> Option<i64> {
        r.degree(self.wx(), self.wy())
    }

    pub fn poly(&self, s: &str) -> Result<WPoly> {
        WPoly::parse(self.field, s)
    }

    pub fn branches(&self) -> Result<&[Branch]> {
        self.branches.as_deref().map_err(Clone::clone)
    }

    fn y_power(&self, e: u32) -> WPoly {
        let n = self.big_n();
        debug_assert!(e >= n);
        let idx = (e - n) as usize;
        if let Some(p) = self.ypow.read().unwrap().get(idx) {
            return p.clone();
        }
        let mut cache = self.ypow.write().unwrap();
        if cache.is_empty() {
            cache.push(self.tail.clone());
        }
        while cache.len() <= idx {
            let prev = cache.last().unwrap().mul_mono((0, 1));
            let mut next = WPoly::zero(self.field);
            for (&(i, j), c) in prev.terms() {
                if j < n {
                    next.add_term((i, j), c.clone());
                } else {
                    for (&(a, b2), d) in self.tail.terms() {
                        next.add_term((i + a, b2 + j - n), c * d);
                    }
                }
            }
            cache.push(next);
        }
        cache[idx].clone()
    }

    /// Normal form of a single monomial times a coefficient, added into `out`.
    pub fn add_mono_nf(&self, out: &mut WPoly, (i, j): Mono, c: &Fe) {
        if j < self.big_n() {
            out.add_term((i, j), c.clone());
        } else {
            for (&(a, b), d) in self.y_power(j).terms() {
                out.add_term((a + i, b), c * d);
            }
        }
    }

    /// The unique representative of `r` mod `g` with `y`-degree below `q + v`.
    pub fn normal_form(&self, r: &WPoly) -> WPoly {
        if r.max_y().map_or(true, |j| j < self.big_n()) {
            return r.clone();
        }
        let mut out = WPoly::zero(self.field);
        for (m, c) in r.terms() {
            self.add_mono_nf(&mut out, *m, c);
        }
        out
    }

    /// Product in `R`.
    pub fn mul(&self, a: &WPoly, b: &WPoly) -> WPoly {
        let mut out = WPoly::zero(self.field);
        for (&(i, j), c) in a.terms() {
            for (&(k, l), d) in b.terms() {
                self.add_mono_nf(&mut out, (i + k, j + l), &(c * d));
            }
        }
        out
    }

    /// Monomial basis of `R_d`, ordered by increasing `y`-exponent.
    pub fn graded_piece(&self, d: i64) -> Vec<Mono> {
        self.piece(d, Some(self.big_n()))
    }

    /// Monomial basis of `S_d`.
    pub fn s_piece(&self, d: i64) -> Vec<Mono> {
        self.piece(d, None)
    }

    fn piece(&self, d: i64, ybound: Option<u32>) -> Vec<Mono> {
        if d < 0 {
            return vec![];
        }
        let (wx, wy) = (self.wx(), self.wy());
        (0..=d / wy)
            .filter(|j| (d - wy * j) % wx == 0)
            .map(|j| (((d - wy * j) / wx) as u32, j as u32))
            .filter(|m| ybound.map_or(true, |n| m.1 < n))
            .collect()
    }

    /// True iff `r` lies in no minimal prime of `R`.
    pub fn is_nonzerodivisor(&self, r: &WPoly) -> Result<bool> {
        let r = self.normal_form(r);
        if r.is_zero() {
            return Ok(false);
        }
        Ok(self.branches()?.iter().all(|br| !br.evaluate(&r).is_zero()))
    }

    /// Whether `r * den ≡ num` has a solution `r` in `R`; returns it.
    pub fn divide(&self, num: &WPoly, den: &WPoly) -> Option<WPoly> {
        let num = self.normal_form(num);
        if num.is_zero() {
            return Some(WPoly::zero(self.field));
        }
        let dn = self.degree(&num)?;
        let dd = self.degree(den)?;
        let basis = self.graded_piece(dn - dd);
        if basis.is_empty() {
            return None;
        }
        let target = self.graded_piece(dn);
        let index = |m: &Mono| target.iter().position(|t| t == m).unwrap();
        let mut a = Mat::zeros(self.field, target.len(), basis.len());
        for (col, m) in basis.iter().enumerate() {
            let prod = self.mul(&WPoly::mono(self.field, m.0, m.1), den);
            for (t, c) in prod.terms() {
                a[(index(t), col)] = c.clone();
            }
        }
        let mut rhs = vec![self.field.zero(); target.len()];
        for (t, c) in num.terms() {
            rhs[index(t)] = c.clone();
        }
        let sol = a.solve(&rhs)?;
        Some(WPoly::from_terms(
            self.field,
            basis.iter().cloned().zip(sol),
        ))
    }

    /// The ADE name when `R` is a simple curve singularity, so has only
    /// finitely many indecomposable maximal Cohen-Macaulay modules. In this
    /// family that happens only for `f` constant and `{p, q} = {3, 4}` or
    /// `{3, 5}` (orders of `g` at least 4, or `x^3 + y^7` and beyond, are not
    /// simple).
    pub fn simple_singularity(&self) -> Option<&'static str> {
        if self.v != 0 || self.b.is_zero() {
            return None;
        }
        match (self.p.min(self.q), self.p.max(self.q)) {
            (3, 4) => Some("E6"),
            (3, 5) => Some("E8"),
            _ => None,
        }
    }

    /// `dim_k R_d` from the Hilbert series `(1 - T^deg g)/((1 - T^q)(1 - T^p))`.
    pub fn hilbert(&self, d: i64) -> usize {
        let count = |d: i64| -> i64 {
            if d < 0 {
                return 0;
            }
            (0..=d / self.wy())
                .filter(|j| (d - self.wy() * j) % self.wx() == 0)
                .count() as i64
        };
        (count(d) - count(d - self.deg_g())) as usize
    }

    /// JSON-friendly summary.
    pub fn summary(&self) -> RingSummary {
        RingSummary {
            field: self.field.to_string(),
            p: self.p,
            q: self.q,
            b: self.b.to_string(),
            f: self.f.to_string(),
            g: self.g.to_string(),
            v: self.v,
            deg_g: self.deg_g(),
            m: self.m,
            n: self.n,
            reduced: self.reduced,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RingSummary {
    pub field: String,
    pub p: u32,
    pub q: u32,
    pub b: String,
    pub f: String,
    pub g: String,
    pub v: u32,
    pub deg_g: i64,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub reduced: bool,
}

/// Convenience constructor: parse `f` and `b` from strings.
pub fn ring(
    field: Field,
    p: u32,
    q: u32,
    b: i64,
    f: &str,
    mn: Option<(u32, u32)>,
) -> Result<HypersurfaceRing> {
    HypersurfaceRing::new(RingSpec {
        field,
        p,
        q,
        b: field.int(b),
        f: WPoly::parse(field, f)?,
        m: mn.map(|t| t.0),
        n: mn.map(|t| t.1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst1() -> HypersurfaceRing {
        ring(Field::Rational, 3, 4, 1, "y", Some((1, 2))).unwrap()
    }

    fn inst2() -> HypersurfaceRing {
        ring(Field::Rational, 3, 4, 1, "1", Some((1, 2))).unwrap()
    }

    #[test]
    fn normal_forms() {
        let r2 = inst2();
        assert!(r2.normal_form(&r2.g).is_zero());
        assert_eq!(
            r2.normal_form(&r2.poly("y^4").unwrap()),
            r2.poly("-x^3").unwrap()
        );
        let r1 = inst1();
        assert_eq!(
            r1.normal_form(&r1.poly("y^6").unwrap()),
            r1.poly("-x^3*y^2").unwrap()
        );
        assert_eq!(r1.g, r1.poly("x^3*y + y^5").unwrap());
    }

    #[test]
    fn pieces() {
        let r2 = inst2();
        assert_eq!(r2.graded_piece(0), vec![(0, 0)]);
        assert_eq!(r2.graded_piece(8), vec![(2, 0)]);
        assert_eq!(r2.graded_piece(12), vec![(3, 0)]);
        assert!(r2.graded_piece(5).is_empty());
        assert!(r2.graded_piece(-3).is_empty());
        for d in 0..60 {
            assert_eq!(r2.graded_piece(d).len(), r2.hilbert(d));
        }
    }

    #[test]
    fn membership_and_zero_divisors() {
        let r2 = inst2();
        let x = WPoly::x(r2.field);
        assert_eq!(
            r2.divide(&r2.poly("y^4").unwrap(), &x),
            Some(r2.poly("-x^2").unwrap())
        );
        assert_eq!(r2.divide(&r2.poly("y^3").unwrap(), &x), None);
        let r1 = inst1();
        assert!(r1.is_nonzerodivisor(&x).unwrap());
        assert!(!r1.is_nonzerodivisor(&WPoly::y(r1.field)).unwrap());
        assert!(r1.is_nonzerodivisor(&WPoly::one(r1.field)).unwrap());
    }

    #[test]
    fn semigroup() {
        assert!(semigroup_member(0, 3, 4));
        assert!(!semigroup_member(5, 3, 4));
        assert!(semigroup_member(6, 3, 4));
        assert!(!semigroup_member(-1, 3, 4));
    }

    #[test]
    fn validation() {
        assert!(ring(Field::Rational, 2, 4, 1, "1", None).is_err());
        assert!(ring(Field::Rational, 3, 4, 1, "x", None).is_err());
        assert!(ring(Field::Rational, 3, 4, 1, "1", Some((2, 2))).is_err());
        assert!(ring(Field::Prime(2), 3, 4, 1, "1", None).is_err());
        // b = 0 gives a non-reduced ring, accepted as a degenerate input
        let r = ring(Field::Rational, 3, 4, 0, "y", None).unwrap();
        assert!(!r.reduced);
    }
}
