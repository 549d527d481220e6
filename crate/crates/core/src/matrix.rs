//! Graded matrices over `S` or `R`, matrix factorizations, and the exact
//! solver for graded matrix equations.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::branches::Branch;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::Mat;
use crate::poly::{Mono, WPoly};
use crate::ring::HypersurfaceRing;

/// Matrix whose `(i, j)` entry is homogeneous of degree `cols[j] - rows[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub field: Field,
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub entries: Vec<Vec<WPoly>>,
}

/// Which ring products are taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    S,
    R,
}

impl GradedMatrix {
    pub fn zero(field: Field, rows: Vec<i64>, cols: Vec<i64>) -> GradedMatrix {
        let entries = vec![vec![WPoly::zero(field); cols.len()]; rows.len()];
        GradedMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: Field, degs: &[i64]) -> GradedMatrix {
        GradedMatrix::scalar(&WPoly::one(field), degs, 0)
    }

    /// `r * Id` with source degrees `degs + d`, `d = deg r`.
    pub fn scalar(r: &WPoly, degs: &[i64], d: i64) -> GradedMatrix {
        let mut m =
            GradedMatrix::zero(r.field, degs.to_vec(), degs.iter().map(|a| a + d).collect());
        for i in 0..degs.len() {
            m.entries[i][i] = r.clone();
        }
        m
    }

    /// Builds a matrix from entries, inferring column degrees from the given
    /// row degrees and the first nonzero entry of each column.
    pub fn from_entries(
        ring: &HypersurfaceRing,
        rows: Vec<i64>,
        cols: Option<Vec<i64>>,
        entries: Vec<Vec<WPoly>>,
    ) -> Result<GradedMatrix> {
        let ncols = entries.first().map_or(0, Vec::len);
        let cols = match cols {
            Some(c) => c,
            None => (0..ncols)
                .map(|j| {
                    (0..rows.len())
                        .find_map(|i| ring.degree(&entries[i][j]).map(|d| d + rows[i]))
                        .ok_or_else(|| Error::Input(format!("column {j} is zero; degree unknown")))
                })
                .collect::<Result<_>>()?,
        };
        let m = GradedMatrix {
            field: ring.field,
            rows,
            cols,
            entries,
        };
        m.check(ring)?;
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.cols[j] - self.rows[i]
    }

    pub fn check(&self, ring: &HypersurfaceRing) -> Result<()> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let e = &self.entries[i][j];
                if e.is_zero() {
                    continue;
                }
                if ring.degree(e) != Some(self.entry_degree(i, j)) {
                    return Err(Error::Input(format!(
                        "entry ({i},{j}) = {e} is not homogeneous of degree {}",
                        self.entry_degree(i, j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn shifted(&self, s: i64) -> GradedMatrix {
        GradedMatrix {
            field: self.field,
            rows: self.rows.iter().map(|a| a + s).collect(),
            cols: self.cols.iter().map(|a| a + s).collect(),
            entries: self.entries.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(WPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&WPoly) -> WPoly) -> GradedMatrix {
        GradedMatrix {
            field: self.field,
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> GradedMatrix {
        self.map(WPoly::neg)
    }

    pub fn scale(&self, c: &Fe) -> GradedMatrix {
        self.map(|e| e.scale(c))
    }

    pub fn reduce(&self, ring: &HypersurfaceRing) -> GradedMatrix {
        self.map(|e| ring.normal_form(e))
    }

    /// Entry-wise sum; degrees taken from `self`.
    pub fn add(&self, o: &GradedMatrix) -> GradedMatrix {
        assert_eq!((self.nrows(), self.ncols()), (o.nrows(), o.ncols()));
        let mut r = self.clone();
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                r.entries[i][j] = r.entries[i][j].add(&o.entries[i][j]);
            }
        }
        r
    }

    pub fn sub(&self, o: &GradedMatrix) -> GradedMatrix {
        self.add(&o.neg())
    }

    /// Product; the inner degree vectors may differ by a constant shift.
    pub fn mul(&self, o: &GradedMatrix, arith: Arith, ring: &HypersurfaceRing) -> GradedMatrix {
        assert_eq!(self.ncols(), o.nrows(), "inner dimensions");
        let shift = if self.ncols() == 0 {
            0
        } else {
            self.cols[0] - o.rows[0]
        };
        let mut r = GradedMatrix::zero(
            self.field,
            self.rows.clone(),
            o.cols.iter().map(|c| c + shift).collect(),
        );
        for i in 0..self.nrows() {
            for l in 0..self.ncols() {
                let a = &self.entries[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.ncols() {
                    let b = &o.entries[l][j];
                    if b.is_zero() {
                        continue;
                    }
                    let p = match arith {
                        Arith::S => a.mul(b),
                        Arith::R => ring.mul(a, b),
                    };
                    r.entries[i][j] = r.entries[i][j].add(&p);
                }
            }
        }
        r
    }

    /// Multiplies every entry by `r` (degree `d`); source degrees move by `d`.
    pub fn times(&self, r: &WPoly, d: i64, arith: Arith, ring: &HypersurfaceRing) -> GradedMatrix {
        let mut m = self.map(|e| match arith {
            Arith::S => e.mul(r),
            Arith::R => ring.mul(e, r),
        });
        for c in m.cols.iter_mut() {
            *c += d;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            field: self.field,
            rows: rows.iter().map(|&i| self.rows[i]).collect(),
            cols: cols.iter().map(|&j| self.cols[j]).collect(),
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<WPoly> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    /// Assembles a block matrix. Missing blocks are zero; the degree vectors
    /// of every block row and block column are fixed by shifting the present
    /// blocks so that they agree.
    pub fn blocks(field: Field, grid: &[Vec<Option<GradedMatrix>>]) -> Result<GradedMatrix> {
        let br = grid.len();
        let bc = grid.first().map_or(0, Vec::len);
        let mut rdeg: Vec<Option<Vec<i64>>> = vec![None; br];
        let mut cdeg: Vec<Option<Vec<i64>>> = vec![None; bc];
        let first = (0..br)
            .flat_map(|i| (0..bc).map(move |j| (i, j)))
            .find(|&(i, j)| grid[i][j].is_some())
            .ok_or_else(|| Error::Input("empty block matrix".into()))?;
        rdeg[first.0] = Some(grid[first.0][first.1].as_ref().unwrap().rows.clone());
        let mismatch = || Error::Input("inconsistent block degrees".into());
        loop {
            let mut progress = false;
            for i in 0..br {
                for j in 0..bc {
                    let Some(b) = &grid[i][j] else { continue };
                    match (&rdeg[i], &cdeg[j]) {
                        (Some(r), None) => {
                            let s = shift_to(&b.rows, r).ok_or_else(mismatch)?;
                            cdeg[j] = Some(b.cols.iter().map(|c| c + s).collect());
                            progress = true;
                        }
                        (None, Some(c)) => {
                            let s = shift_to(&b.cols, c).ok_or_else(mismatch)?;
                            rdeg[i] = Some(b.rows.iter().map(|c| c + s).collect());
                            progress = true;
                        }
                        (Some(r), Some(c)) => {
                            let s = shift_to(&b.rows, r).ok_or_else(mismatch)?;
                            if shift_to(&b.cols, c) != Some(s) {
                                return Err(mismatch());
                            }
                        }
                        (None, None) => {}
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let rdeg: Vec<Vec<i64>> = rdeg
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(mismatch)?;
        let cdeg: Vec<Vec<i64>> = cdeg
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(mismatch)?;
        let rows: Vec<i64> = rdeg.concat();
        let cols: Vec<i64> = cdeg.concat();
        let mut m = GradedMatrix::zero(field, rows, cols);
        let mut r0 = 0;
        for i in 0..br {
            let mut c0 = 0;
            for j in 0..bc {
                if let Some(b) = &grid[i][j] {
                    for (a, row) in b.entries.iter().enumerate() {
                        for (c, e) in row.iter().enumerate() {
                            m.entries[r0 + a][c0 + c] = e.clone();
                        }
                    }
                }
                c0 += cdeg[j].len();
            }
            r0 += rdeg[i].len();
        }
        Ok(m)
    }

    /// Entries evaluated at the branch point `t = 1`.
    pub fn eval_branch(&self, br: &Branch) -> Mat {
        let mut m = Mat::zeros(self.field, self.nrows(), self.ncols());
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if !self.entries[i][j].is_zero() {
                    m[(i, j)] = br.evaluate(&self.entries[i][j]);
                }
            }
        }
        m
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .any(|e| !e.is_zero() && e.len() == 1 && e.terms().next().unwrap().0 == &(0, 0))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }
}

fn shift_to(have: &[i64], want: &[i64]) -> Option<i64> {
    if have.len() != want.len() {
        return None;
    }
    if have.is_empty() {
        return Some(0);
    }
    let s = want[0] - have[0];
    have.iter().zip(want).all(|(a, b)| b - a == s).then_some(s)
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|e| e.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub entries: Vec<Vec<String>>,
}

/// Pair `(phi, psi)` with `phi psi = psi phi = g Id` over `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub phi: GradedMatrix,
    pub psi: GradedMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MfCheck {
    pub holds: bool,
    pub reduced: bool,
}

fn is_g_identity(m: &GradedMatrix, g: &WPoly) -> bool {
    (0..m.nrows()).all(|i| {
        (0..m.ncols()).all(|j| {
            let e = &m.entries[i][j];
            if i == j {
                e == g
            } else {
                e.is_zero()
            }
        })
    })
}

impl MatrixFactorization {
    pub fn check(&self, ring: &HypersurfaceRing) -> MfCheck {
        let square = self.phi.nrows() == self.phi.ncols()
            && self.psi.nrows() == self.psi.ncols()
            && self.phi.nrows() == self.psi.nrows();
        let holds = square
            && is_g_identity(&self.phi.mul(&self.psi, Arith::S, ring), &ring.g)
            && is_g_identity(&self.psi.mul(&self.phi, Arith::S, ring), &ring.g);
        MfCheck {
            holds,
            reduced: !self.phi.has_unit_entry() && !self.psi.has_unit_entry(),
        }
    }

    pub fn size(&self) -> usize {
        self.phi.nrows()
    }

    /// `(psi, phi)`: its cokernel is the first syzygy of `cok phi`.
    pub fn syz(&self, ring: &HypersurfaceRing) -> MatrixFactorization {
        MatrixFactorization {
            phi: self.psi.clone(),
            psi: self.phi.shifted(ring.deg_g()),
        }
    }

    /// `(psi, phi)` graded so that `cok phi` embeds in degree zero into the
    /// free module presented by the new `phi`: the cosyzygy.
    pub fn cosyz(&self, ring: &HypersurfaceRing) -> MatrixFactorization {
        MatrixFactorization {
            phi: self.psi.shifted(-ring.deg_g()),
            psi: self.phi.clone(),
        }
    }

    pub fn shifted(&self, s: i64) -> MatrixFactorization {
        MatrixFactorization {
            phi: self.phi.shifted(s),
            psi: self.psi.shifted(s),
        }
    }
}

/// `phi, psi` for the ideal `(x^m, y^n)`, generators in degrees `(mq, np)`.
pub fn mf_from_ideal(ring: &HypersurfaceRing) -> Result<MatrixFactorization> {
    let (Some(m), Some(n)) = (ring.m, ring.n) else {
        return Err(Error::Input("ideal parameters m, n are not set".into()));
    };
    mf_for_ideal(ring, m, n)
}

pub fn mf_for_ideal(ring: &HypersurfaceRing, m: u32, n: u32) -> Result<MatrixFactorization> {
    let (p, q) = (ring.p, ring.q);
    if !(1 <= m && m + 1 < p && 2 <= n && n < q) {
        return Err(Error::Input(format!(
            "ideal parameters out of range: m={m}, n={n}"
        )));
    }
    let k = ring.field;
    let big_n = ring.big_n();
    let top = ring
        .g
        .sub(&WPoly::mono(k, 0, big_n))
        .div_mono((m, 0))
        .ok_or_else(|| Error::Input("g - y^(q+v) is not divisible by x^m".into()))?;
    let ym = |e: u32| WPoly::mono(k, 0, e);
    let xm = WPoly::mono(k, m, 0);
    let a = vec![(m * q) as i64, (n * p) as i64];
    let phi = GradedMatrix::from_entries(
        ring,
        a.clone(),
        None,
        vec![
            vec![top.clone(), ym(n).neg()],
            vec![ym(big_n - n), xm.clone()],
        ],
    )?;
    let psi = GradedMatrix::from_entries(
        ring,
        phi.cols.clone(),
        Some(a.iter().map(|d| d + ring.deg_g()).collect()),
        vec![vec![xm, ym(n)], vec![ym(big_n - n).neg(), top]],
    )?;
    Ok(MatrixFactorization { phi, psi })
}

/// Unknown matrix `X` for [`solve_sandwich`]: degrees and optional fixed
/// entries (`Some` entries are not solved for).
pub struct Unknown {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub fixed: Vec<Vec<Option<WPoly>>>,
}

impl Unknown {
    pub fn free(rows: Vec<i64>, cols: Vec<i64>) -> Unknown {
        let fixed = vec![vec![None; cols.len()]; rows.len()];
        Unknown { rows, cols, fixed }
    }
}

/// One equation `sum_t L_t X R_t = C` for [`solve_system`].
pub struct Equation<'a> {
    pub terms: Vec<(Option<&'a GradedMatrix>, Option<&'a GradedMatrix>)>,
    pub rhs: &'a GradedMatrix,
}

/// Solves `sum_t L_t X R_t = C` for `X` with homogeneous entries, where a
/// missing `L_t` or `R_t` means the identity. Returns a particular solution
/// with free coordinates set to zero.
pub fn solve_sandwich(
    ring: &HypersurfaceRing,
    arith: Arith,
    unknown: &Unknown,
    terms: &[(Option<&GradedMatrix>, Option<&GradedMatrix>)],
    rhs: &GradedMatrix,
) -> Option<GradedMatrix> {
    let eq = Equation {
        terms: terms.to_vec(),
        rhs,
    };
    solve_system(ring, arith, unknown, &[eq])
}

/// Solves several sandwich equations in the same unknown simultaneously.
pub fn solve_system(
    ring: &HypersurfaceRing,
    arith: Arith,
    unknown: &Unknown,
    eqs: &[Equation],
) -> Option<GradedMatrix> {
    let k = ring.field;
    let (xr, xc) = (unknown.rows.len(), unknown.cols.len());
    let piece = |d: i64| match arith {
        Arith::S => ring.s_piece(d),
        Arith::R => ring.graded_piece(d),
    };
    let mul = |a: &WPoly, b: &WPoly| match arith {
        Arith::S => a.mul(b),
        Arith::R => ring.mul(a, b),
    };
    // variables
    let mut vars: Vec<(usize, usize, Mono)> = Vec::new();
    for j in 0..xr {
        for l in 0..xc {
            if unknown.fixed[j][l].is_none() {
                for mo in piece(unknown.cols[l] - unknown.rows[j]) {
                    vars.push((j, l, mo));
                }
            }
        }
    }
    let one = WPoly::one(k);
    let lentry = |lm: Option<&GradedMatrix>, a: usize, j: usize| -> Option<WPoly> {
        match lm {
            Some(m) => Some(m.entries[a][j].clone()).filter(|e| !e.is_zero()),
            None => (a == j).then(|| one.clone()),
        }
    };
    let mut eq_index: HashMap<(usize, usize, usize, Mono), usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, Fe)>> = vec![Vec::new(); vars.len()];
    let mut constant: Vec<(usize, Fe)> = Vec::new();
    let eq_of = |key: (usize, usize, usize, Mono), idx: &mut HashMap<_, usize>| -> usize {
        let n = idx.len();
        *idx.entry(key).or_insert(n)
    };
    let mut rhs_terms: Vec<(usize, Fe)> = Vec::new();
    for (ei, eq) in eqs.iter().enumerate() {
        let (cr, cc) = (eq.rhs.nrows(), eq.rhs.ncols());
        // precompute L_aj * R_lb for every relevant combination
        for (lm, rm) in &eq.terms {
            for a in 0..cr {
                for j in 0..xr {
                    let Some(la) = lentry(*lm, a, j) else {
                        continue;
                    };
                    for l in 0..xc {
                        for b in 0..cc {
                            let Some(rb) = lentry(*rm, l, b) else {
                                continue;
                            };
                            let lr = mul(&la, &rb);
                            if lr.is_zero() {
                                continue;
                            }
                            if let Some(fx) = &unknown.fixed[j][l] {
                                let prod = mul(&lr, fx);
                                for (mo, c) in prod.terms() {
                                    let e = eq_of((ei, a, b, *mo), &mut eq_index);
                                    constant.push((e, c.clone()));
                                }
                                continue;
                            }
                            for (vi, (vj, vl, vm)) in vars.iter().enumerate() {
                                if *vj != j || *vl != l {
                                    continue;
                                }
                                let prod = mul(&lr, &WPoly::mono(k, vm.0, vm.1));
                                for (mo, c) in prod.terms() {
                                    let e = eq_of((ei, a, b, *mo), &mut eq_index);
                                    columns[vi].push((e, c.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
        for a in 0..cr {
            for b in 0..cc {
                let e = match arith {
                    Arith::R => ring.normal_form(&eq.rhs.entries[a][b]),
                    Arith::S => eq.rhs.entries[a][b].clone(),
                };
                for (mo, c) in e.terms() {
                    let row = eq_of((ei, a, b, *mo), &mut eq_index);
                    rhs_terms.push((row, c.clone()));
                }
            }
        }
    }
    let neq = eq_index.len();
    let mut mat = Mat::zeros(k, neq, vars.len());
    for (vi, col) in columns.iter().enumerate() {
        for (e, c) in col {
            mat[(*e, vi)] = &mat[(*e, vi)] + c;
        }
    }
    let mut b = vec![k.zero(); neq];
    for (e, c) in rhs_terms {
        b[e] = &b[e] + &c;
    }
    for (e, c) in constant {
        b[e] = &b[e] - &c;
    }
    let sol = mat.solve(&b)?;
    let mut x = GradedMatrix::zero(k, unknown.rows.clone(), unknown.cols.clone());
    for j in 0..xr {
        for l in 0..xc {
            if let Some(fx) = &unknown.fixed[j][l] {
                x.entries[j][l] = fx.clone();
            }
        }
    }
    for (vi, (j, l, mo)) in vars.iter().enumerate() {
        x.entries[*j][*l].add_term(*mo, sol[vi].clone());
    }
    Some(x)
}

/// Completes a square presentation `phi` over `R` to a matrix factorization
/// by solving `phi psi = g Id` over `S`.
pub fn complete_mf(ring: &HypersurfaceRing, phi: &GradedMatrix) -> Result<MatrixFactorization> {
    let n = phi.nrows();
    if phi.ncols() != n {
        return Err(Error::Input(format!(
            "presentation is {}x{}, not square",
            n,
            phi.ncols()
        )));
    }
    let g_id = GradedMatrix::scalar(&ring.g, &phi.rows, ring.deg_g());
    let unknown = Unknown::free(
        phi.cols.clone(),
        phi.rows.iter().map(|a| a + ring.deg_g()).collect(),
    );
    let psi = solve_sandwich(ring, Arith::S, &unknown, &[(Some(phi), None)], &g_id)
        .ok_or_else(|| Error::NoSolution("phi * psi = g Id has no polynomial solution".into()))?;
    let mf = MatrixFactorization {
        phi: phi.clone(),
        psi,
    };
    if !mf.check(ring).holds {
        return Err(Error::Verification(
            "completed pair is not a matrix factorization".into(),
        ));
    }
    Ok(mf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ring;

    #[test]
    fn ideal_factorizations() {
        let r1 = ring(Field::Rational, 3, 4, 1, "y", Some((1, 2))).unwrap();
        let mf = mf_from_ideal(&r1).unwrap();
        assert_eq!(mf.phi.to_string(), "[[x^2*y, -y^2], [y^3, x]]");
        assert_eq!(mf.psi.to_string(), "[[x, y^2], [-y^3, x^2*y]]");
        assert_eq!(
            mf.check(&r1),
            MfCheck {
                holds: true,
                reduced: true
            }
        );
        let r2 = ring(Field::Rational, 3, 4, 1, "1", Some((1, 2))).unwrap();
        let mf2 = mf_from_ideal(&r2).unwrap();
        assert_eq!(mf2.phi.to_string(), "[[x^2, -y^2], [y^2, x]]");
        let bad = MatrixFactorization {
            phi: mf2.phi.clone(),
            psi: mf2.phi.clone(),
        };
        assert!(!bad.check(&r2).holds);
        let triv = MatrixFactorization {
            phi: GradedMatrix::identity(r2.field, &[0]),
            psi: GradedMatrix::scalar(&r2.g, &[0], 12),
        };
        assert_eq!(
            triv.check(&r2),
            MfCheck {
                holds: true,
                reduced: false
            }
        );
        assert_eq!(mf2.syz(&r2).phi.to_string(), "[[x, y^2], [-y^2, x^2]]");
    }

    #[test]
    fn completion_recovers_psi() {
        let r1 = ring(Field::Rational, 3, 4, 1, "y", Some((1, 2))).unwrap();
        let mf = mf_from_ideal(&r1).unwrap();
        let done = complete_mf(&r1, &mf.phi).unwrap();
        assert_eq!(done.psi, mf.psi);
    }

    #[test]
    fn block_assembly_shifts_blocks() {
        let r2 = ring(Field::Rational, 3, 4, 1, "1", Some((1, 2))).unwrap();
        let mf = mf_from_ideal(&r2).unwrap();
        let m = GradedMatrix::blocks(
            r2.field,
            &[
                vec![Some(mf.phi.clone()), None],
                vec![None, Some(mf.psi.shifted(100))],
            ],
        );
        // two disconnected diagonal blocks: the second row block is unknown
        assert!(m.is_err());
        let id = GradedMatrix::identity(r2.field, &mf.phi.rows);
        let m = GradedMatrix::blocks(
            r2.field,
            &[
                vec![Some(mf.phi.clone()), Some(id)],
                vec![None, Some(mf.psi.shifted(100))],
            ],
        )
        .unwrap();
        m.check(&r2).unwrap();
    }
}
