//! Sparse polynomials in `x, y` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Exponent pair `(i, j)` for `x^i y^j`.
pub type Mono = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WPoly {
    pub field: Field,
    terms: BTreeMap<Mono, Fe>,
}

impl WPoly {
    pub fn zero(field: Field) -> WPoly {
        WPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Fe) -> WPoly {
        WPoly::term(c, (0, 0))
    }

    pub fn one(field: Field) -> WPoly {
        WPoly::constant(field.one())
    }

    pub fn term(c: Fe, m: Mono) -> WPoly {
        let mut p = WPoly::zero(c.field());
        p.add_term(m, c);
        p
    }

    pub fn mono(field: Field, i: u32, j: u32) -> WPoly {
        WPoly::term(field.one(), (i, j))
    }

    pub fn x(field: Field) -> WPoly {
        WPoly::mono(field, 1, 0)
    }

    pub fn y(field: Field) -> WPoly {
        WPoly::mono(field, 0, 1)
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Mono, Fe)>) -> WPoly {
        let mut p = WPoly::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Fe) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Fe)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> Fe {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The constant term, i.e. the value at the origin.
    pub fn constant_term(&self) -> Fe {
        self.coeff((0, 0))
    }

    /// Weighted degree with `deg x = wx`, `deg y = wy`; `None` for zero or
    /// inhomogeneous input.
    pub fn degree(&self, wx: i64, wy: i64) -> Option<i64> {
        let mut it = self
            .terms
            .keys()
            .map(|&(i, j)| wx * i as i64 + wy * j as i64);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, wx: i64, wy: i64) -> bool {
        self.is_zero() || self.degree(wx, wy).is_some()
    }

    pub fn max_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    pub fn scale(&self, c: &Fe) -> WPoly {
        if c.is_zero() {
            return WPoly::zero(self.field);
        }
        WPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, (a, b): Mono) -> WPoly {
        WPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((i + a, j + b), v.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &WPoly) -> WPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &WPoly) -> WPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn neg(&self) -> WPoly {
        self.scale(&-self.field.one())
    }

    pub fn mul(&self, o: &WPoly) -> WPoly {
        let mut r = WPoly::zero(self.field);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                r.add_term((i + k, j + l), a * b);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> WPoly {
        (0..e).fold(WPoly::one(self.field), |acc, _| acc.mul(self))
    }

    /// Exact division by `x^a y^b`; `None` if some term is not divisible.
    pub fn div_mono(&self, (a, b): Mono) -> Option<WPoly> {
        let mut r = WPoly::zero(self.field);
        for (&(i, j), c) in &self.terms {
            if i < a || j < b {
                return None;
            }
            r.add_term((i - a, j - b), c.clone());
        }
        Some(r)
    }

    pub fn eval(&self, x: &Fe, y: &Fe) -> Fe {
        let mut s = self.field.zero();
        for (&(i, j), c) in &self.terms {
            s = s + c * &(x.pow(i as i64) * y.pow(j as i64));
        }
        s
    }

    /// Parses `c*x^i*y^j` terms joined by `+` or `-`.
    pub fn parse(field: Field, s: &str) -> Result<WPoly> {
        let bad = |why: &str| Error::Input(format!("cannot parse polynomial '{s}': {why}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(idx > 0 && cur.ends_with('^')) {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                    neg = false;
                } else if idx > 0 && ch == '+' {
                    // allows "a+-b"
                }
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        pieces.push((neg, cur));
        let mut p = WPoly::zero(field);
        for (neg, t) in pieces {
            let mut coeff = field.one();
            let (mut i, mut j) = (0u32, 0u32);
            for f in t.split('*') {
                if f.is_empty() {
                    return Err(bad("empty factor"));
                }
                let (base, exp) = match f.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (f, 1),
                };
                match base {
                    "x" => i += exp,
                    "y" => j += exp,
                    _ if f.contains('^') => return Err(bad("exponent on a number")),
                    _ => coeff = coeff * field.parse(base).map_err(|_| bad("bad factor"))?,
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term((i, j), coeff);
        }
        Ok(p)
    }
}

fn fmt_mono(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [part("x", i), part("y", j)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = c.sign_split();
            let sep = match (n, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let m = fmt_mono(i, j);
            let body = if m.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                m
            } else {
                format!("{abs}*{m}")
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let k = Field::Rational;
        for s in ["x^3*y + y^5", "x^2 - y^2", "-1/2*x*y^3 + 7", "0*x + y"] {
            let p = WPoly::parse(k, s).unwrap();
            let q = WPoly::parse(k, &p.to_string()).unwrap();
            assert_eq!(p, q);
        }
        assert_eq!(WPoly::parse(k, "0*x + y").unwrap(), WPoly::y(k));
        assert_eq!(
            WPoly::parse(k, "x^3*y+y^5").unwrap().to_string(),
            "x^3*y + y^5"
        );
        assert!(WPoly::parse(k, "x^").is_err());
        assert!(WPoly::parse(k, "z").is_err());
    }

    #[test]
    fn weighted_degree() {
        let k = Field::Rational;
        let g = WPoly::parse(k, "x^3*y + y^5").unwrap();
        assert_eq!(g.degree(4, 3), Some(15));
        let h = WPoly::parse(k, "x + y").unwrap();
        assert_eq!(h.degree(4, 3), None);
    }
}
