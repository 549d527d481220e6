//! Dense exact linear algebra over a [`Field`].

use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Fe>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Fe>>, cols: usize) -> Mat {
        let mut m = Mat::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_cols(field: Field, cols: &[Vec<Fe>], rows: usize) -> Mat {
        let mut m = Mat::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut r = Mat::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(l, j)];
                    if !b.is_zero() {
                        r[(i, j)] = &r[(i, j)] + &(a * b);
                    }
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.field, self.row(i), v))
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut r = self.clone();
        for (a, b) in r.data.iter_mut().zip(&o.data) {
            *a = &*a + b;
        }
        r
    }

    pub fn scale(&self, c: &Fe) -> Mat {
        let mut r = self.clone();
        for a in r.data.iter_mut() {
            *a = &*a * c;
        }
        r
    }

    pub fn trace(&self) -> Fe {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |s, i| s + &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Fe::is_zero)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv();
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let t = &self[(r, j)] * &f;
                        self[(i, j)] = &self[(i, j)] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Fe;
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(field: Field, a: &[Fe], b: &[Fe]) -> Fe {
    let mut s = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s = s + x * y;
        }
    }
    s
}

/// Incrementally maintained reduced echelon basis of a subspace of `k^n`.
/// Supports membership tests, canonical reduction modulo the subspace and
/// coordinates of members in terms of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Field,
    pub dim: usize,
    /// (pivot column, normalized row, combination of inserted vectors)
    rows: Vec<(usize, Vec<Fe>, Vec<Fe>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Echelon {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    /// Reduces `v` modulo the span; the result has zeros in pivot columns.
    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        self.reduce_tracked(v).0
    }

    fn reduce_tracked(&self, v: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
        let mut v = v.to_vec();
        let mut comb = vec![self.field.zero(); self.inserted];
        for (p, row, c) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(b * &f);
                }
            }
            for (a, b) in comb.iter_mut().zip(c) {
                if !b.is_zero() {
                    *a = &*a + &(b * &f);
                }
            }
        }
        (v, comb)
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.reduce(v).iter().all(Fe::is_zero)
    }

    /// Inserts `v`; returns true when it enlarged the span. Every call counts
    /// as an inserted vector for [`Echelon::express`].
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        assert_eq!(v.len(), self.dim);
        let (mut r, mut comb) = self.reduce_tracked(v);
        // r = v - sum comb_i * inserted_i, as a combination: e_new - comb
        for c in comb.iter_mut() {
            *c = -&*c;
        }
        comb.push(self.field.one());
        self.inserted += 1;
        for row in self.rows.iter_mut() {
            row.2.push(self.field.zero());
        }
        let Some(p) = r.iter().position(|a| !a.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for a in r.iter_mut() {
            *a = &*a * &inv;
        }
        for a in comb.iter_mut() {
            *a = &*a * &inv;
        }
        for (_, row, c) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (a, b) in row.iter_mut().zip(&r) {
                if !b.is_zero() {
                    *a = &*a - &(b * &f);
                }
            }
            for (a, b) in c.iter_mut().zip(&comb) {
                if !b.is_zero() {
                    *a = &*a - &(b * &f);
                }
            }
        }
        let at = self.rows.partition_point(|row| row.0 < p);
        self.rows.insert(at, (p, r, comb));
        true
    }

    /// Coefficients expressing `v` in terms of the inserted vectors, if `v`
    /// lies in their span.
    pub fn express(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let (r, comb) = self.reduce_tracked(v);
        if r.iter().all(Fe::is_zero) {
            Some(comb)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Fe {
        Field::Rational.int(n)
    }

    #[test]
    fn nullspace_and_solve() {
        let k = Field::Rational;
        let a = Mat::from_rows(k, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]], 3);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Fe::is_zero));
        }
        let x = a.solve(&[q(3), q(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(3), q(6)]);
        assert!(a.solve(&[q(1), q(1)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let k = Field::Prime(11);
        let a = Mat::from_rows(
            k,
            vec![vec![k.int(2), k.int(1)], vec![k.int(5), k.int(3)]],
            2,
        );
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(k, 2));
    }

    #[test]
    fn echelon_expresses_members() {
        let k = Field::Rational;
        let mut e = Echelon::new(k, 3);
        assert!(e.insert(&[q(1), q(1), q(0)]));
        assert!(e.insert(&[q(0), q(1), q(1)]));
        assert!(!e.insert(&[q(1), q(2), q(1)]));
        let c = e.express(&[q(2), q(3), q(1)]).unwrap();
        let lhs: Vec<Fe> = (0..3)
            .map(|i| {
                let vs = [[q(1), q(1), q(0)], [q(0), q(1), q(1)], [q(1), q(2), q(1)]];
                (0..3).fold(q(0), |s, j| s + &c[j] * &vs[j][i])
            })
            .collect();
        assert_eq!(lhs, vec![q(2), q(3), q(1)]);
        assert!(e.express(&[q(1), q(0), q(0)]).is_none());
    }
}
