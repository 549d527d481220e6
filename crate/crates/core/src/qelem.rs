//! Homogeneous elements of the total quotient ring `Q(R)`.

use std::fmt;

use serde::Serialize;

use crate::branches::TPoly;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::Mat;
use crate::poly::WPoly;
use crate::ring::HypersurfaceRing;

/// A fraction `num/den` with `den` a nonzerodivisor, plus its images on the
/// branches (in ring order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QElement {
    pub num: WPoly,
    pub den: WPoly,
    pub degree: i64,
    pub images: Vec<TPoly>,
}

impl QElement {
    pub fn new(ring: &HypersurfaceRing, num: &WPoly, den: &WPoly) -> Result<QElement> {
        let num = ring.normal_form(num);
        let den = ring.normal_form(den);
        let dd = ring
            .degree(&den)
            .ok_or_else(|| Error::Input(format!("denominator {den} is not homogeneous")))?;
        if !ring.is_nonzerodivisor(&den)? {
            return Err(Error::Input(format!("denominator {den} is a zero divisor")));
        }
        let degree = match ring.degree(&num) {
            Some(dn) => dn - dd,
            None if num.is_zero() => 0,
            None => return Err(Error::Input(format!("numerator {num} is not homogeneous"))),
        };
        let images = ring
            .branches()?
            .iter()
            .map(|br| {
                let e = br.evaluate_poly(&den).valuation().unwrap();
                br.evaluate_poly(&num)
                    .scale(&br.evaluate(&den).inv())
                    .shift(-e)
            })
            .collect();
        Ok(QElement {
            num,
            den,
            degree,
            images,
        })
    }

    pub fn from_r(ring: &HypersurfaceRing, r: &WPoly) -> Result<QElement> {
        QElement::new(ring, r, &WPoly::one(ring.field))
    }

    pub fn zero(ring: &HypersurfaceRing, degree: i64) -> Result<QElement> {
        let mut z = QElement::from_r(ring, &WPoly::zero(ring.field))?;
        z.degree = degree;
        Ok(z)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check_degree(&self, o: &QElement) -> Result<()> {
        if self.is_zero() || o.is_zero() || self.degree == o.degree {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "sum of elements of degrees {} and {}",
                self.degree, o.degree
            )))
        }
    }

    pub fn add(&self, o: &QElement, ring: &HypersurfaceRing) -> Result<QElement> {
        self.check_degree(o)?;
        let num = ring
            .mul(&self.num, &o.den)
            .add(&ring.mul(&o.num, &self.den));
        let mut r = QElement::new(ring, &num, &ring.mul(&self.den, &o.den))?;
        if r.is_zero() {
            r.degree = if self.is_zero() {
                o.degree
            } else {
                self.degree
            };
        }
        Ok(r.simplified(ring))
    }

    pub fn mul(&self, o: &QElement, ring: &HypersurfaceRing) -> Result<QElement> {
        let mut r = QElement::new(
            ring,
            &ring.mul(&self.num, &o.num),
            &ring.mul(&self.den, &o.den),
        )?;
        r.degree = self.degree + o.degree;
        Ok(r.simplified(ring))
    }

    pub fn scale(&self, c: &Fe) -> QElement {
        QElement {
            num: self.num.scale(c),
            den: self.den.clone(),
            degree: self.degree,
            images: self.images.iter().map(|t| t.scale(c)).collect(),
        }
    }

    /// Replaces `num/den` by `r/1` when the element lies in `R`.
    pub fn simplified(self, ring: &HypersurfaceRing) -> QElement {
        if self.den.constant_term().is_zero() {
            if let Some(r) = q_membership(&self, ring) {
                return QElement {
                    num: r,
                    den: WPoly::one(ring.field),
                    ..self
                };
            }
        }
        self
    }

    /// Whether every branch image is a polynomial in `t`.
    pub fn is_integral(&self) -> bool {
        self.images.iter().all(TPoly::is_polynomial)
    }

    /// Smallest `t`-valuation over the branches with nonzero image.
    pub fn min_valuation(&self) -> Option<i64> {
        self.images.iter().filter_map(TPoly::valuation).min()
    }

    /// Reconstructs the element of degree `degree` whose value at `t = 1`
    /// on branch `b` is `values[b]`, as `u / x^k` with the least such `k`.
    pub fn from_branch_values(
        ring: &HypersurfaceRing,
        values: &[Fe],
        degree: i64,
    ) -> Result<QElement> {
        let branches = ring.branches()?;
        assert_eq!(values.len(), branches.len());
        if values.iter().all(Fe::is_zero) {
            return QElement::zero(ring, degree);
        }
        let x = WPoly::x(ring.field);
        let q = ring.wx();
        let limit = ring.deg_g() + degree.abs() + q;
        let mut k = 0i64;
        while k * q <= limit {
            let d = degree + k * q;
            let basis = ring.graded_piece(d);
            if !basis.is_empty() {
                let mut a = Mat::zeros(ring.field, branches.len(), basis.len());
                let mut rhs = Vec::with_capacity(branches.len());
                for (bi, br) in branches.iter().enumerate() {
                    for (j, m) in basis.iter().enumerate() {
                        a[(bi, j)] = br.evaluate(&WPoly::mono(ring.field, m.0, m.1));
                    }
                    rhs.push(&values[bi] * &br.evaluate(&x).pow(k));
                }
                if let Some(sol) = a.solve(&rhs) {
                    let u = WPoly::from_terms(ring.field, basis.iter().cloned().zip(sol));
                    let mut r = QElement::new(ring, &u, &x.pow(k as u32))?;
                    r.degree = degree;
                    return Ok(r.simplified(ring));
                }
            }
            k += 1;
        }
        Err(Error::NoSolution(format!(
            "branch values {values:?} in degree {degree} do not lift to Q(R)"
        )))
    }

    pub fn to_json(&self) -> QElementJson {
        QElementJson {
            fraction: self.to_string(),
            degree: self.degree,
            branch_images: self.images.iter().map(|t| t.to_string()).collect(),
        }
    }
}

/// `r` in `R` with `r * den = num`, if one exists.
pub fn q_membership(q: &QElement, ring: &HypersurfaceRing) -> Option<WPoly> {
    ring.divide(&q.num, &q.den)
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &WPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.constant_term().is_one() && self.den.len() == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QElementJson {
    pub fraction: String,
    pub degree: i64,
    pub branch_images: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::ring;

    #[test]
    fn membership_examples() {
        let r2 = ring(Field::Rational, 3, 4, 1, "1", None).unwrap();
        let k = r2.field;
        let y4x = QElement::new(&r2, &r2.poly("y^4").unwrap(), &WPoly::x(k)).unwrap();
        assert_eq!(q_membership(&y4x, &r2), Some(r2.poly("-x^2").unwrap()));
        let y3x = QElement::new(&r2, &r2.poly("y^3").unwrap(), &WPoly::x(k)).unwrap();
        assert_eq!(q_membership(&y3x, &r2), None);
        assert_eq!(y3x.images[0].to_string(), "-t^5");
        assert!(y3x.is_integral());
        let r = r2.poly("x*y^2").unwrap();
        assert_eq!(
            q_membership(&QElement::from_r(&r2, &r).unwrap(), &r2),
            Some(r)
        );
        assert!(QElement::new(&r2, &WPoly::one(k), &WPoly::zero(k)).is_err());
    }

    #[test]
    fn zero_divisor_denominator_rejected() {
        let r1 = ring(Field::Rational, 3, 4, 1, "y", None).unwrap();
        assert!(QElement::new(&r1, &WPoly::one(r1.field), &WPoly::y(r1.field)).is_err());
    }

    #[test]
    fn lift_from_branch_values() {
        let r1 = ring(Field::Rational, 3, 4, 1, "y", None).unwrap();
        let k = r1.field;
        let gamma = QElement::new(&r1, &r1.poly("y^4").unwrap(), &WPoly::x(k)).unwrap();
        let vals: Vec<Fe> = r1
            .branches()
            .unwrap()
            .iter()
            .map(|b| b.evaluate(&gamma.num) * b.evaluate(&gamma.den).inv())
            .collect();
        let back = QElement::from_branch_values(&r1, &vals, gamma.degree).unwrap();
        assert_eq!(back.images, gamma.images);
        assert!(q_membership(&back, &r1).is_none());
        let sum = back.add(&back.scale(&k.int(-1)), &r1).unwrap();
        assert!(sum.is_zero());
    }
}
