//! Irreducible factors of `g`, their parametrizations `k[t]`, value
//! semigroups and Frobenius elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::WPoly;
use crate::ring::semigroup_member;
use crate::upoly::UPoly;

/// Laurent polynomial in the branch parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly {
    pub field: Field,
    pub terms: BTreeMap<i64, Fe>,
}

impl TPoly {
    pub fn zero(field: Field) -> TPoly {
        TPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: Fe, e: i64) -> TPoly {
        let mut t = TPoly::zero(c.field());
        t.add_term(e, c);
        t
    }

    pub fn add_term(&mut self, e: i64, c: Fe) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(|| c.field().zero());
        *v = &*v + &c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Fe) -> TPoly {
        let mut r = TPoly::zero(self.field);
        for (e, v) in &self.terms {
            r.add_term(*e, v * c);
        }
        r
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> TPoly {
        TPoly {
            field: self.field,
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `t`-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// No negative powers of `t`.
    pub fn is_polynomial(&self) -> bool {
        self.valuation().map_or(true, |v| v >= 0)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = c.sign_split();
            let sep = match (n, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let m = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let body = match (m.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => m,
                (false, false) => format!("{abs}*{m}"),
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BranchKind {
    /// `h = x`, normalized by `y = t`.
    XAxis,
    /// `h = y`, normalized by `x = t`.
    YAxis,
    /// `h = x^p - rho y^q`.
    Binomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub h: WPoly,
    pub kind: BranchKind,
    pub p: u32,
    pub q: u32,
    pub cx: Fe,
    pub ex: u32,
    pub cy: Fe,
    pub ey: u32,
    pub generators: Vec<i64>,
    pub frobenius: i64,
    pub conductor: i64,
}

/// Result of splitting a binary form.
pub struct FormShape {
    pub squarefree: bool,
    pub branches: std::result::Result<Vec<Branch>, Error>,
}

fn frobenius_by_enumeration(gens: &[i64]) -> i64 {
    if gens.contains(&1) {
        return -1;
    }
    let (a, b) = (gens[0], gens[1]);
    (0..a * b)
        .rev()
        .find(|&d| !semigroup_member(d, a, b))
        .unwrap_or(-1)
}

/// Splits a homogeneous `g` as `x^i0 y^j0 H(x^p, y^q)` and factors `H` over
/// `k`. The branches returned are those of the radical of `g`.
pub fn factor_form(g: &WPoly, p: u32, q: u32) -> Result<FormShape> {
    let field = g.field;
    if g.is_zero() || g.degree(q as i64, p as i64).is_none() {
        return Err(Error::Input(format!(
            "{g} is not a nonzero homogeneous form"
        )));
    }
    let i0 = g.terms().map(|(m, _)| m.0).min().unwrap();
    let j0 = g.terms().map(|(m, _)| m.1).min().unwrap();
    let rest = g.div_mono((i0, j0)).unwrap();
    let r = rest.terms().map(|(m, _)| m.0).max().unwrap() / p;
    let mut coeffs = vec![field.zero(); r as usize + 1];
    for (&(i, j), c) in rest.terms() {
        debug_assert!(i % p == 0 && j % q == 0);
        coeffs[(i / p) as usize] = c.clone();
    }
    let h = UPoly::new(field, coeffs);
    let squarefree = i0 <= 1 && j0 <= 1 && h.is_squarefree();
    let sqfree_part = if h.degree().unwrap_or(0) > 0 {
        h.div_rem(&h.gcd(&h.derivative())).0
    } else {
        h.clone()
    };
    let roots = sqfree_part.roots();
    let mut out = Vec::new();
    if i0 > 0 {
        out.push(Branch::axis(BranchKind::XAxis, field, p, q));
    }
    if j0 > 0 {
        out.push(Branch::axis(BranchKind::YAxis, field, p, q));
    }
    let branches = if roots.len() < sqfree_part.degree().unwrap_or(0) {
        Err(Error::Input(format!(
            "form does not split over {field}: {g}"
        )))
    } else {
        for rho in roots {
            out.push(Branch::binomial(&rho, p, q));
        }
        Ok(out)
    };
    Ok(FormShape {
        squarefree,
        branches,
    })
}

/// Factors `g`, insisting that it is squarefree.
pub fn factor_hypersurface(g: &WPoly, p: u32, q: u32) -> Result<Vec<Branch>> {
    let shape = factor_form(g, p, q)?;
    if !shape.squarefree {
        return Err(Error::Input(format!("not squarefree: {g}")));
    }
    shape.branches
}

/// `s, r >= 0` with `p s - q r = 1`.
fn bezout(p: i64, q: i64) -> (i64, i64) {
    (1..=q)
        .find_map(|s| ((p * s - 1) % q == 0).then(|| (s, (p * s - 1) / q)))
        .expect("coprime weights")
}

impl Branch {
    fn axis(kind: BranchKind, field: Field, p: u32, q: u32) -> Branch {
        let (h, cx, ex, cy, ey) = match kind {
            BranchKind::XAxis => (WPoly::x(field), field.zero(), 0, field.one(), 1),
            _ => (WPoly::y(field), field.one(), 1, field.zero(), 0),
        };
        Branch {
            h,
            kind,
            p,
            q,
            cx,
            ex,
            cy,
            ey,
            generators: vec![1],
            frobenius: -1,
            conductor: 0,
        }
    }

    fn binomial(rho: &Fe, p: u32, q: u32) -> Branch {
        let field = rho.field();
        let h = WPoly::mono(field, p, 0).sub(&WPoly::term(rho.clone(), (0, q)));
        let roots = UPoly::new(
            field,
            std::iter::once(-rho)
                .chain((1..p).map(|_| field.zero()))
                .chain(std::iter::once(field.one()))
                .collect(),
        )
        .roots();
        // c_x^p = rho c_y^q
        let (cx, cy) = match roots.iter().find(|c| !c.is_zero()) {
            Some(c) => (c.clone(), field.one()),
            None => {
                let (s, r) = bezout(p as i64, q as i64);
                (rho.pow(s), rho.pow(r))
            }
        };
        let generators = {
            let mut g = vec![p as i64, q as i64];
            g.sort();
            g
        };
        let frobenius = (p * q - p - q) as i64;
        debug_assert_eq!(frobenius, frobenius_by_enumeration(&generators));
        Branch {
            h,
            kind: BranchKind::Binomial,
            p,
            q,
            cx,
            ex: q,
            cy,
            ey: p,
            generators,
            frobenius,
            conductor: frobenius + 1,
        }
    }

    /// Weighted degree of the parameter `t`.
    pub fn t_weight(&self) -> i64 {
        match self.kind {
            BranchKind::Binomial => 1,
            BranchKind::YAxis => self.q as i64,
            BranchKind::XAxis => self.p as i64,
        }
    }

    /// Value at `t = 1`; for homogeneous `r` of degree `d` the branch image
    /// is this value times `t^(d / t_weight)`.
    pub fn evaluate(&self, r: &WPoly) -> Fe {
        r.eval(&self.cx, &self.cy)
    }

    /// Substitutes the parametrization.
    pub fn evaluate_poly(&self, r: &WPoly) -> TPoly {
        let mut out = TPoly::zero(r.field);
        for (&(i, j), c) in r.terms() {
            let v = c * &(self.cx.pow(i as i64) * self.cy.pow(j as i64));
            out.add_term((self.ex * i + self.ey * j) as i64, v);
        }
        out
    }

    /// Image of a homogeneous element of degree `d` whose value at `t = 1`
    /// is `c`. Returns `None` when `d` is not a multiple of the weight of `t`
    /// yet `c` is nonzero (impossible for honest inputs).
    pub fn image(&self, c: Fe, d: i64) -> Option<TPoly> {
        if c.is_zero() {
            return Some(TPoly::zero(c.field()));
        }
        let w = self.t_weight();
        (d % w == 0).then(|| TPoly::monomial(c, d / w))
    }

    pub fn is_singular(&self) -> bool {
        self.frobenius >= 0
    }

    pub fn value_semigroup(&self) -> (Vec<i64>, i64, i64) {
        (self.generators.clone(), self.frobenius, self.conductor)
    }

    pub fn label(&self) -> String {
        match self.kind {
            BranchKind::XAxis => "x-axis".into(),
            BranchKind::YAxis => "y-axis".into(),
            BranchKind::Binomial => format!("binomial {}", self.h),
        }
    }
}

/// The element `gamma'` of the Frobenius ideal not lying in the branch ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPrime {
    pub num: WPoly,
    pub den: WPoly,
    /// `t`-degree of the branch image.
    pub t_degree: i64,
    /// Set when the branch is normal and `1/x` or `1/y` is used instead.
    pub normal_convention: bool,
}

pub fn gamma_prime(br: &Branch) -> Result<GammaPrime> {
    let field = br.h.field;
    match br.kind {
        BranchKind::YAxis => Ok(GammaPrime {
            num: WPoly::one(field),
            den: WPoly::x(field),
            t_degree: -1,
            normal_convention: true,
        }),
        BranchKind::XAxis => Ok(GammaPrime {
            num: WPoly::one(field),
            den: WPoly::y(field),
            t_degree: -1,
            normal_convention: true,
        }),
        BranchKind::Binomial => {
            let (p, q) = (br.p as i64, br.q as i64);
            let fr = br.frobenius;
            let t_degree = p * (q - 1) - q;
            // gamma' x and gamma' y land in the branch ring, gamma' does not
            let certified = t_degree == fr
                && !semigroup_member(fr, p, q)
                && semigroup_member(fr + q, p, q)
                && semigroup_member(fr + p, p, q);
            if !certified {
                return Err(Error::Certification(format!(
                    "y^{}/x is not a Frobenius element of {}",
                    q - 1,
                    br.label()
                )));
            }
            Ok(GammaPrime {
                num: WPoly::mono(field, 0, br.q - 1),
                den: WPoly::x(field),
                t_degree,
                normal_convention: false,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inst2_branch() {
        let k = Field::Rational;
        let g = WPoly::parse(k, "x^3 + y^4").unwrap();
        let bs = factor_hypersurface(&g, 3, 4).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!(b.evaluate_poly(&WPoly::x(k)), TPoly::monomial(k.int(-1), 4));
        assert_eq!(b.evaluate_poly(&WPoly::y(k)), TPoly::monomial(k.one(), 3));
        assert!(b.evaluate_poly(&g).is_zero());
        assert_eq!(b.value_semigroup(), (vec![3, 4], 5, 6));
        let gp = gamma_prime(b).unwrap();
        assert_eq!(gp.t_degree, 5);
    }

    #[test]
    fn inst1_branches() {
        let k = Field::Rational;
        let g = WPoly::parse(k, "x^3*y + y^5").unwrap();
        let bs = factor_hypersurface(&g, 3, 4).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].kind, BranchKind::YAxis);
        assert_eq!(bs[1].kind, BranchKind::Binomial);
        for b in &bs {
            assert!(b.evaluate_poly(&g).is_zero());
        }
        assert_eq!(gamma_prime(&bs[0]).unwrap().den, WPoly::x(k));
    }

    #[test]
    fn monomial_form_and_failures() {
        let k = Field::Rational;
        let bs = factor_hypersurface(&WPoly::parse(k, "x*y").unwrap(), 3, 4).unwrap();
        assert_eq!(bs.len(), 2);
        let sq = WPoly::parse(k, "y^2").unwrap();
        assert!(factor_hypersurface(&sq, 3, 4).is_err());
        // x^6 + y^8 = H(x^3, y^4) with H = X^2 + Y^2, irreducible over Q
        let irr = WPoly::parse(k, "x^6 + y^8").unwrap();
        assert!(factor_hypersurface(&irr, 3, 4).is_err());
        // splits over F_5 since -1 is a square there
        let k5 = Field::Prime(5);
        let irr5 = WPoly::parse(k5, "x^6 + y^8").unwrap();
        let bs5 = factor_hypersurface(&irr5, 3, 4).unwrap();
        assert_eq!(bs5.len(), 2);
        for b in &bs5 {
            assert!(b.evaluate_poly(&irr5).is_zero());
        }
    }

    #[test]
    fn no_pth_root_uses_bezout_parametrization() {
        let k = Field::Rational;
        // x^3 - 2 y^4: 2 has no rational cube root
        let g = WPoly::parse(k, "x^3 - 2*y^4").unwrap();
        let bs = factor_hypersurface(&g, 3, 4).unwrap();
        assert!(bs[0].evaluate_poly(&g).is_zero());
    }

    #[test]
    fn frobenius_closed_form_matches_enumeration() {
        for (p, q) in [(3, 4), (3, 5), (4, 5), (5, 7), (3, 7)] {
            assert_eq!(frobenius_by_enumeration(&[p, q]), p * q - p - q);
        }
    }
}
