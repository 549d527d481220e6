//! The algebra `End(M)_0`, its radical and idempotents; splitting a module
//! into graded indecomposables and testing isomorphism up to shift.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{Echelon, Mat};
use crate::matrix::{complete_mf, GradedMatrix};
use crate::module::{hom_graded, GradedHom, GradedModule};
use crate::upoly::UPoly;

/// A finite-dimensional algebra of degree-zero endomorphisms, given by a
/// basis and structure constants.
pub struct EndAlgebra {
    pub field: Field,
    pub basis: Vec<GradedHom>,
    span: Echelon,
    /// `consts[i][j]` = coordinates of `b_i ∘ b_j`.
    consts: Vec<Vec<Vec<Fe>>>,
    pub one: Vec<Fe>,
}

impl EndAlgebra {
    pub fn of(m: &GradedModule) -> EndAlgebra {
        let basis = hom_graded(m, m, 0);
        let k = m.field();
        let width = m.hom_coords(&m.identity().matrix).len();
        let mut span = Echelon::new(k, width);
        for b in &basis {
            span.insert(&m.hom_coords(&b.matrix));
        }
        let express = |h: &GradedHom| {
            span.express(&m.hom_coords(&h.matrix))
                .expect("composite of endomorphisms is an endomorphism")
        };
        let consts = basis
            .iter()
            .map(|a| basis.iter().map(|b| express(&a.compose(b, m))).collect())
            .collect();
        let one = express(&m.identity());
        EndAlgebra {
            field: k,
            basis,
            span,
            consts,
            one,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn express(&self, m: &GradedModule, h: &GradedHom) -> Option<Vec<Fe>> {
        self.span.express(&m.hom_coords(&h.matrix))
    }

    pub fn zero(&self) -> Vec<Fe> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &[Fe], c: &Fe) -> Vec<Fe> {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, s) in out.iter_mut().zip(&self.consts[i][j]) {
                    if !s.is_zero() {
                        *o = &*o + &(&c * s);
                    }
                }
            }
        }
        out
    }

    pub fn hom(&self, v: &[Fe]) -> GradedHom {
        let mut acc: Option<GradedHom> = None;
        for (b, c) in self.basis.iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            let t = b.scale(c);
            acc = Some(match acc {
                Some(a) => a.add(&t),
                None => t,
            });
        }
        acc.unwrap_or_else(|| self.basis[0].scale(&self.field.zero()))
    }

    /// Basis of the Jacobson radical, as the kernel of the trace form.
    pub fn radical(&self) -> Result<Vec<Vec<Fe>>> {
        let n = self.dim();
        if let Field::Prime(l) = self.field {
            if l <= n as u64 {
                return Err(Error::Input(format!(
                    "field too small: F_{l} with an endomorphism algebra of dimension {n}"
                )));
            }
        }
        let tr: Vec<Fe> = (0..n)
            .map(|m| (0..n).fold(self.field.zero(), |s, l| s + &self.consts[m][l][l]))
            .collect();
        let mut form = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                form[(i, j)] = self.consts[i][j]
                    .iter()
                    .zip(&tr)
                    .fold(self.field.zero(), |s, (a, b)| s + a * b);
            }
        }
        Ok(form.nullspace())
    }

    /// Minimal polynomial of `a` inside a corner algebra with unit `unit`.
    pub fn min_poly(&self, a: &[Fe], unit: &[Fe]) -> UPoly {
        let mut powers = Echelon::new(self.field, self.dim());
        let mut cur = unit.to_vec();
        loop {
            if let Some(c) = powers.express(&cur) {
                let mut coeffs: Vec<Fe> = c.into_iter().map(|x| -x).collect();
                coeffs.push(self.field.one());
                return UPoly::new(self.field, coeffs);
            }
            powers.insert(&cur);
            cur = self.mul(a, &cur);
        }
    }

    pub fn eval_poly(&self, p: &UPoly, a: &[Fe], unit: &[Fe]) -> Vec<Fe> {
        let mut acc = self.zero();
        for c in p.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, a), &self.scale(unit, c));
        }
        acc
    }

    fn corner_basis(&self, e: &[Fe], of: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        let mut ech = Echelon::new(self.field, self.dim());
        let mut out = Vec::new();
        for v in of {
            let w = self.mul(e, &self.mul(v, e));
            if ech.insert(&w) {
                out.push(w);
            }
        }
        out
    }

    fn unit_vectors(&self) -> Vec<Vec<Fe>> {
        (0..self.dim())
            .map(|i| {
                let mut v = self.zero();
                v[i] = self.field.one();
                v
            })
            .collect()
    }

    /// A complete set of primitive orthogonal idempotents summing to one.
    pub fn primitive_idempotents(&self, seed: u64) -> Result<Vec<Vec<Fe>>> {
        let rad = self.radical()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = self.unit_vectors();
        let mut stack = vec![self.one.clone()];
        let mut out = Vec::new();
        while let Some(e) = stack.pop() {
            let corner = self.corner_basis(&e, &all);
            let corner_rad = self.corner_basis(&e, &rad);
            if corner.len() - corner_rad.len() <= 1 {
                out.push(e);
                continue;
            }
            match self.split_corner(&e, &corner, &mut rng) {
                Some(f) => {
                    let rest = self.sub(&e, &f);
                    stack.push(rest);
                    stack.push(f);
                }
                None => {
                    if self.commutative_mod(&corner, &corner_rad) {
                        // a field extension of k: no idempotents to find
                        out.push(e);
                    } else {
                        return Err(Error::Certification(format!(
                            "could not split a semisimple corner of dimension {}",
                            corner.len() - corner_rad.len()
                        )));
                    }
                }
            }
        }
        Ok(out)
    }

    fn commutative_mod(&self, corner: &[Vec<Fe>], rad: &[Vec<Fe>]) -> bool {
        let mut j = Echelon::new(self.field, self.dim());
        for r in rad {
            j.insert(r);
        }
        corner.iter().all(|a| {
            corner
                .iter()
                .all(|b| j.contains(&self.sub(&self.mul(a, b), &self.mul(b, a))))
        })
    }

    fn split_corner(&self, e: &[Fe], corner: &[Vec<Fe>], rng: &mut ChaCha8Rng) -> Option<Vec<Fe>> {
        for attempt in 0..64 {
            let bound = 3 + attempt as i64;
            let mut a = self.zero();
            for v in corner {
                let c = self.field.int(rng.gen_range(-bound..=bound));
                a = self.add(&a, &self.scale(v, &c));
            }
            let mu = self.min_poly(&a, e);
            for lambda in mu.roots() {
                let lin = UPoly::linear(&lambda);
                let (mut part, mut rest) = (UPoly::one(self.field), mu.clone());
                loop {
                    let (q, r) = rest.div_rem(&lin);
                    if !r.is_zero() {
                        break;
                    }
                    part = part.mul(&lin);
                    rest = q;
                }
                if rest.degree() == Some(0) {
                    continue;
                }
                // s * part + t * rest = 1; t * rest is 1 on the lambda-part
                let (_, _, t) = part.ext_gcd(&rest);
                let f = self.eval_poly(&t.mul(&rest), &a, e);
                if f.iter().any(|c| !c.is_zero()) && f != e {
                    return Some(f);
                }
            }
        }
        None
    }
}

/// Constant-term matrix of a degree-zero endomorphism: its action on
/// `M / mM`.
pub fn top_action(h: &GradedHom) -> Mat {
    let m = &h.matrix;
    let mut out = Mat::zeros(m.field, m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = m.entries[i][j].constant_term();
        }
    }
    out
}

pub fn is_automorphism(h: &GradedHom) -> bool {
    h.degree == 0 && top_action(h).inverse().is_some()
}

pub struct Decomposition {
    /// Nonfree graded-indecomposable summands, each with a matrix
    /// factorization attached.
    pub parts: Vec<GradedModule>,
    /// Generator degrees of the free summands.
    pub free: Vec<i64>,
}

impl Decomposition {
    pub fn free_rank(&self) -> usize {
        self.free.len()
    }
}

fn strip_free(m: &GradedModule, free: &mut Vec<i64>) -> GradedModule {
    let zero_rows: Vec<usize> = (0..m.ngens())
        .filter(|&i| m.pres.entries[i].iter().all(|e| e.is_zero()))
        .collect();
    if zero_rows.is_empty() {
        return m.clone();
    }
    free.extend(zero_rows.iter().map(|&i| m.gens()[i]));
    let rows: Vec<usize> = (0..m.ngens()).filter(|i| !zero_rows.contains(i)).collect();
    let cols: Vec<usize> = (0..m.pres.ncols()).collect();
    GradedModule::new(m.ring.clone(), m.pres.submatrix(&rows, &cols), &m.label)
}

fn with_mf(m: GradedModule) -> Result<GradedModule> {
    if m.mf.is_some() {
        return Ok(m);
    }
    let mf = complete_mf(&m.ring, &m.pres)?;
    Ok(GradedModule::from_mf(m.ring.clone(), mf, &m.label))
}

/// `e M` presented as `M / (1 - e) M`.
pub fn summand(m: &GradedModule, e: &GradedHom) -> GradedModule {
    let k = m.field();
    let comp = GradedMatrix::identity(k, m.gens()).sub(&e.matrix);
    let mut pres = m.pres.clone();
    for j in 0..comp.ncols() {
        pres.cols.push(comp.cols[j]);
        for i in 0..m.ngens() {
            pres.entries[i].push(comp.entries[i][j].clone());
        }
    }
    GradedModule::new(m.ring.clone(), pres, &m.label).minimized()
}

/// Splits `M` into free summands and nonfree graded indecomposables.
pub fn decompose(m: &GradedModule, seed: u64) -> Result<Decomposition> {
    let mut free = Vec::new();
    let base = strip_free(&m.minimized(), &mut free);
    let mut parts = Vec::new();
    if base.ngens() > 0 {
        let alg = EndAlgebra::of(&base);
        let idems = alg.primitive_idempotents(seed)?;
        if idems.len() == 1 {
            let mut only = base;
            if only.pres == m.pres {
                only.mf = m.mf.clone();
            }
            parts.push(with_mf(only)?);
        } else {
            for (i, e) in idems.iter().enumerate() {
                let piece = strip_free(&summand(&base, &alg.hom(e)), &mut free);
                if piece.ngens() > 0 {
                    let mut piece = with_mf(piece)?;
                    piece.label = format!("{}[{i}]", m.label);
                    parts.push(piece);
                }
            }
        }
    }
    parts.sort_by(|a, b| (a.gens(), a.pres.to_string()).cmp(&(b.gens(), b.pres.to_string())));
    free.sort();
    Ok(Decomposition { parts, free })
}

/// `s` with `M ≅ N(s)`, if any.
pub fn iso_up_to_shift(m: &GradedModule, n: &GradedModule, seed: u64) -> Option<i64> {
    if m.ngens() != n.ngens() || m.pres.ncols() != n.pres.ncols() {
        return None;
    }
    if m.ngens() == 0 {
        return Some(0);
    }
    let s = n.min_gen()? - m.min_gen()?;
    let ns = n.shifted(s);
    let sorted = |v: &[i64]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    if sorted(m.gens()) != sorted(ns.gens()) || sorted(&m.pres.cols) != sorted(&ns.pres.cols) {
        return None;
    }
    let lo = m.min_gen()?;
    let window = lo..lo + 2 * m.ring.deg_g();
    if window.clone().any(|e| m.dim(e) != ns.dim(e)) {
        return None;
    }
    let us = hom_graded(m, &ns, 0);
    let ws = hom_graded(&ns, m, 0);
    if us.is_empty() || ws.is_empty() {
        return None;
    }
    let works = |u: &GradedHom, w: &GradedHom| {
        is_automorphism(&w.compose(u, m)) && is_automorphism(&u.compose(w, &ns))
    };
    for u in us.iter().take(8) {
        for w in ws.iter().take(8) {
            if works(u, w) {
                return Some(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = m.field();
    let combo = |hs: &[GradedHom], rng: &mut ChaCha8Rng| {
        hs.iter()
            .map(|h| h.scale(&k.int(rng.gen_range(-7..=7))))
            .reduce(|a, b| a.add(&b))
            .unwrap()
    };
    for _ in 0..24 {
        let u = combo(&us, &mut rng);
        let w = combo(&ws, &mut rng);
        if works(&u, &w) {
            return Some(s);
        }
    }
    None
}

/// Whether `End(M)_0` modulo its radical has dimension one.
pub fn has_local_end(m: &GradedModule) -> Result<bool> {
    let alg = EndAlgebra::of(m);
    Ok(alg.dim() - alg.radical()?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mf_from_ideal;
    use crate::ring::{ring, HypersurfaceRing};
    use std::sync::Arc;

    fn inst2() -> Arc<HypersurfaceRing> {
        Arc::new(ring(Field::Rational, 3, 4, 1, "1", Some((1, 2))).unwrap())
    }

    #[test]
    fn ideal_is_indecomposable() {
        let r = inst2();
        let m = GradedModule::from_mf(r.clone(), mf_from_ideal(&r).unwrap(), "I");
        let d = decompose(&m, 1).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.free_rank(), 0);
        assert!(has_local_end(&m).unwrap());
    }

    #[test]
    fn split_sum_recovers_copies() {
        let r = inst2();
        let m = GradedModule::from_mf(r.clone(), mf_from_ideal(&r).unwrap(), "I");
        let f = GradedModule::free(r.clone(), &[2]);
        let s = GradedModule::direct_sum(&[&m, &m.shifted(3), &f]).unwrap();
        let d = decompose(&s, 7).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.free, vec![2]);
        let shifts: Vec<Option<i64>> = d.parts.iter().map(|p| iso_up_to_shift(&m, p, 0)).collect();
        assert!(shifts.contains(&Some(0)));
        assert!(shifts.contains(&Some(-3)));
    }

    #[test]
    fn shifts() {
        let r = inst2();
        let m = GradedModule::from_mf(r.clone(), mf_from_ideal(&r).unwrap(), "I");
        assert_eq!(iso_up_to_shift(&m, &m, 0), Some(0));
        assert_eq!(iso_up_to_shift(&m, &m.shifted(3), 0), Some(-3));
        let syz = m.syz().unwrap();
        // over x^3 + y^4 the ideal (x, y^2) and its syzygy (x, y^2) are shifts
        assert_eq!(iso_up_to_shift(&m, &syz, 0).is_some(), true);
    }
}
