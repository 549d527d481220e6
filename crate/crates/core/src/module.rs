//! Graded modules `cok A` over `R`, their graded pieces and graded Hom.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{Echelon, Mat};
use crate::matrix::{complete_mf, Arith, GradedMatrix, MatrixFactorization};
use crate::poly::{Mono, WPoly};
use crate::ring::HypersurfaceRing;

/// The degree `e` part of a module: a basis of the free cover in degree
/// `e` together with the span of the relations there.
pub struct Piece {
    pub degree: i64,
    pub basis: Vec<(usize, Mono)>,
    index: HashMap<(usize, Mono), usize>,
    rel: Echelon,
    /// Non-pivot positions; their images form a basis of the quotient.
    pub free: Vec<usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a column of normal forms in the free cover.
    pub fn vector(&self, col: &[WPoly]) -> Vec<Fe> {
        let field = self.rel.field;
        let mut v = vec![field.zero(); self.basis.len()];
        for (i, e) in col.iter().enumerate() {
            for (m, c) in e.terms() {
                let at = self.index.get(&(i, *m)).unwrap_or_else(|| {
                    panic!("term {m:?} of generator {i} not in degree {}", self.degree)
                });
                v[*at] = c.clone();
            }
        }
        v
    }

    pub fn column(&self, v: &[Fe], ngens: usize) -> Vec<WPoly> {
        let field = self.rel.field;
        let mut col = vec![WPoly::zero(field); ngens];
        for (at, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (i, m) = self.basis[at];
                col[i].add_term(m, c.clone());
            }
        }
        col
    }

    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        self.rel.reduce(v)
    }

    /// Quotient coordinates.
    pub fn coords(&self, v: &[Fe]) -> Vec<Fe> {
        let r = self.rel.reduce(v);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// Canonical representative with the given quotient coordinates.
    pub fn lift(&self, c: &[Fe]) -> Vec<Fe> {
        let mut v = vec![self.rel.field.zero(); self.basis.len()];
        for (k, &i) in self.free.iter().enumerate() {
            v[i] = c[k].clone();
        }
        v
    }
}

/// `cok A` for a graded matrix `A` over `R`, optionally backed by a matrix
/// factorization `(A, B)`.
pub struct GradedModule {
    pub ring: Arc<HypersurfaceRing>,
    pub pres: GradedMatrix,
    pub mf: Option<MatrixFactorization>,
    pub label: String,
    pieces: Mutex<BTreeMap<i64, Arc<Piece>>>,
}

impl Clone for GradedModule {
    fn clone(&self) -> Self {
        GradedModule {
            ring: self.ring.clone(),
            pres: self.pres.clone(),
            mf: self.mf.clone(),
            label: self.label.clone(),
            pieces: Mutex::new(self.pieces.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GradedModule({}: gens {:?}, {})",
            self.label, self.pres.rows, self.pres
        )
    }
}

/// A homogeneous homomorphism given by where the generators go.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHom {
    pub degree: i64,
    /// Rows: target generators; columns: source generators (shifted by `degree`).
    pub matrix: GradedMatrix,
}

impl GradedModule {
    pub fn new(ring: Arc<HypersurfaceRing>, pres: GradedMatrix, label: &str) -> GradedModule {
        let pres = pres.reduce(&ring);
        GradedModule {
            ring,
            pres,
            mf: None,
            label: label.to_string(),
            pieces: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn from_mf(
        ring: Arc<HypersurfaceRing>,
        mf: MatrixFactorization,
        label: &str,
    ) -> GradedModule {
        let mut m = GradedModule::new(ring, mf.phi.clone(), label);
        m.mf = Some(mf);
        m
    }

    pub fn free(ring: Arc<HypersurfaceRing>, degs: &[i64]) -> GradedModule {
        let k = ring.field;
        GradedModule::new(ring, GradedMatrix::zero(k, degs.to_vec(), vec![]), "free")
    }

    pub fn field(&self) -> crate::field::Field {
        self.ring.field
    }

    pub fn ngens(&self) -> usize {
        self.pres.nrows()
    }

    pub fn gens(&self) -> &[i64] {
        &self.pres.rows
    }

    pub fn min_gen(&self) -> Option<i64> {
        self.pres.rows.iter().min().copied()
    }

    pub fn spread(&self) -> i64 {
        match (self.pres.rows.iter().min(), self.pres.rows.iter().max()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.ngens() == 0
    }

    /// `M(s)`, with `M(s)_j = M_{s+j}`.
    pub fn shifted(&self, s: i64) -> GradedModule {
        GradedModule {
            ring: self.ring.clone(),
            pres: self.pres.shifted(-s),
            mf: self.mf.as_ref().map(|m| m.shifted(-s)),
            label: if s == 0 {
                self.label.clone()
            } else {
                format!("{}({s})", self.label)
            },
            pieces: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn direct_sum(parts: &[&GradedModule]) -> Result<GradedModule> {
        let ring = parts
            .first()
            .ok_or_else(|| Error::Input("empty direct sum".into()))?
            .ring
            .clone();
        let k = ring.field;
        let pres = block_diagonal(k, parts.iter().map(|p| &p.pres));
        let label: Vec<&str> = parts.iter().map(|p| p.label.as_str()).collect();
        let mut m = GradedModule::new(ring, pres, &label.join(" + "));
        if parts.iter().all(|p| p.mf.is_some()) {
            let mfs: Vec<&MatrixFactorization> =
                parts.iter().map(|p| p.mf.as_ref().unwrap()).collect();
            m.mf = Some(MatrixFactorization {
                phi: block_diagonal(k, mfs.iter().map(|f| &f.phi)),
                psi: block_diagonal(k, mfs.iter().map(|f| &f.psi)),
            });
        }
        Ok(m)
    }

    pub fn piece(&self, e: i64) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().unwrap().get(&e) {
            return p.clone();
        }
        let p = Arc::new(self.build_piece(e));
        self.pieces.lock().unwrap().insert(e, p.clone());
        p
    }

    fn build_piece(&self, e: i64) -> Piece {
        let ring = &self.ring;
        let mut basis = Vec::new();
        for (i, a) in self.pres.rows.iter().enumerate() {
            for m in ring.graded_piece(e - a) {
                basis.push((i, m));
            }
        }
        let index: HashMap<(usize, Mono), usize> =
            basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        let mut piece = Piece {
            degree: e,
            basis,
            index,
            rel: Echelon::new(ring.field, 0),
            free: vec![],
        };
        let mut rel = Echelon::new(ring.field, piece.basis.len());
        for (c, b) in self.pres.cols.iter().enumerate() {
            let col = self.pres.column(c);
            for m in ring.graded_piece(e - b) {
                let mw = WPoly::mono(ring.field, m.0, m.1);
                let img: Vec<WPoly> = col.iter().map(|a| ring.mul(a, &mw)).collect();
                rel.insert(&piece.vector(&img));
            }
        }
        let pivots = rel.pivots();
        piece.free = (0..piece.basis.len())
            .filter(|i| !pivots.contains(i))
            .collect();
        piece.rel = rel;
        piece
    }

    pub fn dim(&self, e: i64) -> usize {
        self.piece(e).dim()
    }

    /// Reduces the columns of `h` (a map into this module) to canonical
    /// representatives.
    pub fn canonical(&self, h: &GradedMatrix) -> GradedMatrix {
        let mut out = h.reduce(&self.ring);
        for j in 0..h.ncols() {
            let piece = self.piece(h.cols[j]);
            let v = piece.reduce(&piece.vector(&out.column(j)));
            let col = piece.column(&v, self.ngens());
            for (i, e) in col.into_iter().enumerate() {
                out.entries[i][j] = e;
            }
        }
        out
    }

    /// Quotient coordinates of a homogeneous map into this module, one block
    /// per source generator.
    pub fn hom_coords(&self, h: &GradedMatrix) -> Vec<Fe> {
        let h = h.reduce(&self.ring);
        let mut out = Vec::new();
        for j in 0..h.ncols() {
            let piece = self.piece(h.cols[j]);
            out.extend(piece.coords(&piece.vector(&h.column(j))));
        }
        out
    }

    /// `r * col` reduced to quotient coordinates in degree `e`.
    fn times_coords(&self, col: &[WPoly], r: &WPoly, e: i64) -> Vec<Fe> {
        let img: Vec<WPoly> = col.iter().map(|a| self.ring.mul(a, r)).collect();
        let piece = self.piece(e);
        piece.coords(&piece.vector(&img))
    }

    /// The map `(m_i) -> (sum_i mat_ij m_i)_j` from `sum_i M_{rows_i + d}` to
    /// `sum_j M_{cols_j + d}`, i.e. `Hom(F, M)_d -> Hom(F', M)_d` induced by
    /// `mat : F' -> F`.
    pub fn dual_map(&self, mat: &GradedMatrix, d: i64) -> Mat {
        let src: Vec<Arc<Piece>> = mat.rows.iter().map(|a| self.piece(a + d)).collect();
        let dst: Vec<Arc<Piece>> = mat.cols.iter().map(|b| self.piece(b + d)).collect();
        let nsrc: usize = src.iter().map(|p| p.dim()).sum();
        let ndst: usize = dst.iter().map(|p| p.dim()).sum();
        let mut out = Mat::zeros(self.field(), ndst, nsrc);
        let mut c0 = 0;
        for (i, sp) in src.iter().enumerate() {
            for k in 0..sp.dim() {
                let mut unit = vec![self.field().zero(); sp.dim()];
                unit[k] = self.field().one();
                let col = sp.column(&sp.lift(&unit), self.ngens());
                let mut r0 = 0;
                for (j, dp) in dst.iter().enumerate() {
                    let e = &mat.entries[i][j];
                    if !e.is_zero() {
                        let v = self.times_coords(&col, e, mat.cols[j] + d);
                        for (t, c) in v.into_iter().enumerate() {
                            out[(r0 + t, c0 + k)] = c;
                        }
                    }
                    r0 += dp.dim();
                }
            }
            c0 += sp.dim();
        }
        out
    }

    pub fn rank_vector(&self) -> Result<Vec<usize>> {
        Ok(self
            .ring
            .branches()?
            .iter()
            .map(|br| self.ngens() - self.pres.eval_branch(br).rank())
            .collect())
    }

    /// `sum_b rank_b * e_b` with `e_b` the multiplicity of branch `b`.
    pub fn multiplicity(&self) -> Result<i64> {
        let ranks = self.rank_vector()?;
        Ok(self
            .ring
            .branches()?
            .iter()
            .zip(ranks)
            .map(|(br, r)| r as i64 * br.generators.iter().min().copied().unwrap_or(1))
            .sum())
    }

    /// Matrix factorization backing this module, completing a square
    /// presentation when none is stored.
    pub fn ensure_mf(&self) -> Result<MatrixFactorization> {
        match &self.mf {
            Some(m) => Ok(m.clone()),
            None => complete_mf(&self.ring, &self.pres),
        }
    }

    /// The first syzygy, presented by `psi`.
    pub fn syz(&self) -> Result<GradedModule> {
        let mf = self.ensure_mf()?.syz(&self.ring);
        Ok(GradedModule::from_mf(
            self.ring.clone(),
            mf,
            &format!("syz({})", self.label),
        ))
    }

    pub fn cosyz(&self) -> Result<GradedModule> {
        let mf = self.ensure_mf()?.cosyz(&self.ring);
        Ok(GradedModule::from_mf(
            self.ring.clone(),
            mf,
            &format!("cosyz({})", self.label),
        ))
    }

    /// The identity endomorphism.
    pub fn identity(&self) -> GradedHom {
        GradedHom {
            degree: 0,
            matrix: GradedMatrix::identity(self.field(), self.gens()),
        }
    }

    /// Multiplication by a homogeneous `r`.
    pub fn scalar(&self, r: &WPoly) -> Result<GradedHom> {
        let d = self
            .ring
            .degree(r)
            .ok_or_else(|| Error::Input(format!("{r} is not homogeneous")))?;
        Ok(GradedHom {
            degree: d,
            matrix: self.canonical(&GradedMatrix::scalar(r, self.gens(), d)),
        })
    }

    /// Drops redundant generators (unit entries) and redundant relations.
    pub fn minimized(&self) -> GradedModule {
        let ring = &self.ring;
        let mut a = self.pres.clone();
        loop {
            let hit = (0..a.nrows()).find_map(|i| {
                (0..a.ncols())
                    .find(|&c| is_unit(&a.entries[i][c]))
                    .map(|c| (i, c))
            });
            let Some((i, c)) = hit else { break };
            let inv = a.entries[i][c].constant_term().inv();
            let pivot_col = a.column(c);
            for c2 in 0..a.ncols() {
                if c2 == c || a.entries[i][c2].is_zero() {
                    continue;
                }
                let f = a.entries[i][c2].scale(&inv);
                for r in 0..a.nrows() {
                    let t = ring.mul(&pivot_col[r], &f);
                    a.entries[r][c2] = a.entries[r][c2].sub(&t);
                }
            }
            let rows: Vec<usize> = (0..a.nrows()).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..a.ncols()).filter(|&r| r != c).collect();
            a = a.submatrix(&rows, &cols);
        }
        let free_cover = GradedModule::free(ring.clone(), &a.rows);
        let mut order: Vec<usize> = (0..a.ncols()).collect();
        order.sort_by_key(|&c| (a.cols[c], c));
        let mut kept: Vec<usize> = Vec::new();
        for c in order {
            let e = a.cols[c];
            let piece = free_cover.piece(e);
            let mut span = Echelon::new(ring.field, piece.ambient());
            for &k in &kept {
                let col = a.column(k);
                for m in ring.graded_piece(e - a.cols[k]) {
                    let mw = WPoly::mono(ring.field, m.0, m.1);
                    let img: Vec<WPoly> = col.iter().map(|x| ring.mul(x, &mw)).collect();
                    span.insert(&piece.vector(&img));
                }
            }
            if !span.contains(&piece.vector(&a.column(c))) {
                kept.push(c);
            }
        }
        kept.sort();
        let rows: Vec<usize> = (0..a.nrows()).collect();
        let pres = a.submatrix(&rows, &kept);
        GradedModule::new(ring.clone(), pres, &self.label)
    }
}

pub fn block_diagonal<'a>(
    k: crate::field::Field,
    blocks: impl Iterator<Item = &'a GradedMatrix> + Clone,
) -> GradedMatrix {
    let rows: Vec<i64> = blocks.clone().flat_map(|b| b.rows.clone()).collect();
    let cols: Vec<i64> = blocks.clone().flat_map(|b| b.cols.clone()).collect();
    let mut out = GradedMatrix::zero(k, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                out.entries[r0 + i][c0 + j] = b.entries[i][j].clone();
            }
        }
        r0 += b.nrows();
        c0 += b.ncols();
    }
    out
}

fn is_unit(e: &WPoly) -> bool {
    e.len() == 1 && !e.constant_term().is_zero()
}

/// Basis of `Hom(M, N)_d`.
pub fn hom_graded(m: &GradedModule, n: &GradedModule, d: i64) -> Vec<GradedHom> {
    let k = m.field();
    let targets: Vec<Arc<Piece>> = m.gens().iter().map(|a| n.piece(a + d)).collect();
    let nvars: usize = targets.iter().map(|p| p.dim()).sum();
    if nvars == 0 {
        return vec![];
    }
    // columns of unknown generator images
    let mut unit_cols: Vec<(usize, Vec<WPoly>)> = Vec::with_capacity(nvars);
    for (j, p) in targets.iter().enumerate() {
        for t in 0..p.dim() {
            let mut u = vec![k.zero(); p.dim()];
            u[t] = k.one();
            unit_cols.push((j, p.column(&p.lift(&u), n.ngens())));
        }
    }
    let mut blocks: Vec<Vec<Vec<Fe>>> = Vec::new();
    for c in 0..m.pres.ncols() {
        let e = m.pres.cols[c] + d;
        let dim = n.dim(e);
        if dim == 0 {
            continue;
        }
        let mut rows = vec![vec![k.zero(); nvars]; dim];
        for (v, (j, col)) in unit_cols.iter().enumerate() {
            let a = &m.pres.entries[*j][c];
            if a.is_zero() {
                continue;
            }
            for (t, val) in n.times_coords(col, a, e).into_iter().enumerate() {
                rows[t][v] = val;
            }
        }
        blocks.push(rows);
    }
    let all_rows: Vec<Vec<Fe>> = blocks.into_iter().flatten().collect();
    let null = if all_rows.is_empty() {
        (0..nvars)
            .map(|i| {
                let mut v = vec![k.zero(); nvars];
                v[i] = k.one();
                v
            })
            .collect()
    } else {
        Mat::from_rows(k, all_rows, nvars).nullspace()
    };
    null.into_iter()
        .map(|v| hom_from_coords(m, n, d, &v))
        .collect()
}

/// The map with the given quotient coordinates (as in [`GradedModule::hom_coords`]).
pub fn hom_from_coords(m: &GradedModule, n: &GradedModule, d: i64, v: &[Fe]) -> GradedHom {
    let k = m.field();
    let mut matrix = GradedMatrix::zero(
        k,
        n.gens().to_vec(),
        m.gens().iter().map(|a| a + d).collect(),
    );
    let mut off = 0;
    for (j, a) in m.gens().iter().enumerate() {
        let p = n.piece(a + d);
        let col = p.column(&p.lift(&v[off..off + p.dim()]), n.ngens());
        for (i, e) in col.into_iter().enumerate() {
            matrix.entries[i][j] = e;
        }
        off += p.dim();
    }
    GradedHom { degree: d, matrix }
}

impl GradedHom {
    /// `self ∘ h`, reduced into `target`.
    pub fn compose(&self, h: &GradedHom, target: &GradedModule) -> GradedHom {
        let prod = self.matrix.mul(&h.matrix, Arith::R, &target.ring);
        GradedHom {
            degree: self.degree + h.degree,
            matrix: target.canonical(&prod),
        }
    }

    pub fn add(&self, o: &GradedHom) -> GradedHom {
        GradedHom {
            degree: self.degree,
            matrix: self.matrix.add(&o.matrix),
        }
    }

    pub fn scale(&self, c: &Fe) -> GradedHom {
        GradedHom {
            degree: self.degree,
            matrix: self.matrix.scale(c),
        }
    }

    /// The `k`-linear map `src_e -> tgt_{e + degree}` in quotient coordinates.
    pub fn piece_map(&self, src: &GradedModule, tgt: &GradedModule, e: i64) -> Mat {
        let k = src.field();
        let sp = src.piece(e);
        let tp = tgt.piece(e + self.degree);
        let mut out = Mat::zeros(k, tp.dim(), sp.dim());
        for c in 0..sp.dim() {
            let mut unit = vec![k.zero(); sp.dim()];
            unit[c] = k.one();
            let col = sp.column(&sp.lift(&unit), src.ngens());
            let img: Vec<WPoly> = (0..tgt.ngens())
                .map(|i| {
                    col.iter().enumerate().fold(WPoly::zero(k), |acc, (j, v)| {
                        acc.add(&src.ring.mul(&self.matrix.entries[i][j], v))
                    })
                })
                .collect();
            for (r, v) in tp.coords(&tp.vector(&img)).into_iter().enumerate() {
                out[(r, c)] = v;
            }
        }
        out
    }

    /// `K` with `H A_src = A_tgt K` over `R`.
    pub fn certificate(&self, src: &GradedModule, tgt: &GradedModule) -> Result<GradedMatrix> {
        let ring = &src.ring;
        let rhs = self.matrix.mul(&src.pres, Arith::R, ring);
        let unknown = crate::matrix::Unknown::free(
            tgt.pres.cols.clone(),
            src.pres.cols.iter().map(|b| b + self.degree).collect(),
        );
        crate::matrix::solve_sandwich(ring, Arith::R, &unknown, &[(Some(&tgt.pres), None)], &rhs)
            .ok_or_else(|| Error::Verification("map does not respect relations".into()))
    }
}

/// Maps `M -> M` of degree `d` that factor through the free cover.
pub fn stably_zero_span(m: &GradedModule, d: i64) -> Echelon {
    let cover = GradedModule::free(m.ring.clone(), m.gens());
    let k = m.field();
    let dim: usize = m.gens().iter().map(|a| m.dim(a + d)).sum();
    let mut span = Echelon::new(k, dim);
    for l in hom_graded(m, &cover, d) {
        span.insert(&m.hom_coords(&l.matrix));
    }
    span
}

/// `dim_k` of the degree-`d` part of the stable endomorphism ring.
pub fn stable_end_dim(m: &GradedModule, d: i64) -> usize {
    hom_graded(m, m, d).len() - stably_zero_span(m, d).rank()
}

/// `(d, dim stEnd(M)_d, dim Ext^1(cosyz M, M)_d)` for `d` in `lo..hi`.
pub fn stable_end_vs_ext(m: &GradedModule, lo: i64, hi: i64) -> Result<Vec<(i64, usize, usize)>> {
    let co = m.ensure_mf()?.cosyz(&m.ring);
    Ok((lo..hi)
        .map(|d| (d, stable_end_dim(m, d), ext1_dim(&co, m, d)))
        .collect())
}

/// `dim Ext^1(N, M)_d` from the 2-periodic resolution of `N`.
pub fn ext1_dim(n_mf: &MatrixFactorization, m: &GradedModule, d: i64) -> usize {
    let first = m.dual_map(&n_mf.phi, d);
    let second = m.dual_map(&n_mf.psi, d);
    let kernel = second.cols - second.rank();
    let image = first.rank();
    kernel - image
}

/// Checks `im phi = ker psi` and `im psi = ker phi` over `R` in degree `e`.
pub fn mf_exact_in_degree(ring: &Arc<HypersurfaceRing>, mf: &MatrixFactorization, e: i64) -> bool {
    let free_map = |mat: &GradedMatrix, target: &[i64]| -> Mat {
        // the transpose picture: columns of mat are images of generators
        let f = GradedModule::free(ring.clone(), target);
        let src: Vec<Vec<Mono>> = mat.cols.iter().map(|b| ring.graded_piece(e - b)).collect();
        let piece = f.piece(e);
        let ncols: usize = src.iter().map(Vec::len).sum();
        let mut out = Mat::zeros(ring.field, piece.ambient(), ncols);
        let mut c0 = 0;
        for (j, monos) in src.iter().enumerate() {
            let col = mat.column(j);
            for (t, mo) in monos.iter().enumerate() {
                let mw = WPoly::mono(ring.field, mo.0, mo.1);
                let img: Vec<WPoly> = col.iter().map(|a| ring.mul(a, &mw)).collect();
                for (r, v) in piece.vector(&img).into_iter().enumerate() {
                    out[(r, c0 + t)] = v;
                }
            }
            c0 += monos.len();
        }
        out
    };
    let phi = free_map(&mf.phi, &mf.phi.rows);
    let psi = free_map(&mf.psi, &mf.psi.rows);
    // F2 -psi-> F1 -phi-> F0, and phi(deg g) : F3 -> F2
    let k1 = phi.cols - phi.rank();
    let ok1 = k1 == psi.rank() && phi.mul(&psi).is_zero();
    let phi_next = free_map(
        &mf.phi.shifted(ring.deg_g()),
        &mf.phi.shifted(ring.deg_g()).rows,
    );
    let k2 = psi.cols - psi.rank();
    let ok2 = k2 == phi_next.rank() && psi.mul(&phi_next).is_zero();
    ok1 && ok2
}

/// `(e(M) + e(syz M)) / 2`, or `e(M)` if `syz M` is a shift of `M`.
pub fn e_avg(m: &GradedModule, syz_is_shift: bool) -> Result<Rational64> {
    let e = m.multiplicity()?;
    if syz_is_shift {
        return Ok(Rational64::from_integer(e));
    }
    let es = m.syz()?.multiplicity()?;
    Ok(Rational64::new(e + es, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::mf_from_ideal;
    use crate::ring::ring;

    fn inst2() -> Arc<HypersurfaceRing> {
        Arc::new(ring(Field::Rational, 3, 4, 1, "1", Some((1, 2))).unwrap())
    }

    fn inst1() -> Arc<HypersurfaceRing> {
        Arc::new(ring(Field::Rational, 3, 4, 1, "y", Some((1, 2))).unwrap())
    }

    #[test]
    fn ideal_module_pieces() {
        let r = inst2();
        let m = GradedModule::from_mf(r.clone(), mf_from_ideal(&r).unwrap(), "I");
        // I = (x, y^2): I_4 = <x>, I_6 = <y^2>, I_7 = <xy>, I_8 = <x^2>
        assert_eq!(m.dim(4), 1);
        assert_eq!(m.dim(5), 0);
        assert_eq!(m.dim(6), 1);
        assert_eq!(m.dim(8), 1);
        // R/I = k[y]/(y^2) lives in degrees 0 and 3
        for e in 0..30 {
            let quot = usize::from(e == 0 || e == 3);
            assert_eq!(m.dim(e) + quot, r.graded_piece(e).len(), "degree {e}");
        }
    }

    #[test]
    fn hom_examples() {
        let r = inst2();
        let m = GradedModule::from_mf(r.clone(), mf_from_ideal(&r).unwrap(), "I");
        assert_eq!(hom_graded(&m, &m, 0).len(), 1);
        let free = GradedModule::free(r.clone(), &[0]);
        let h = hom_graded(&free, &free, 0);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].matrix, GradedMatrix::identity(r.field, &[0]));
        let x = m.scalar(&WPoly::x(r.field)).unwrap();
        let h4 = hom_graded(&m, &m, 4);
        let mut span = Echelon::new(r.field, m.hom_coords(&h4[0].matrix).len());
        for h in &h4 {
            span.insert(&m.hom_coords(&h.matrix));
        }
        assert!(span.contains(&m.hom_coords(&x.matrix)));
        for h in &h4 {
            let k = h.certificate(&m, &m).unwrap();
            let lhs = h.matrix.mul(&m.pres, Arith::R, &r);
            let rhs = m.pres.mul(&k, Arith::R, &r);
            assert_eq!(lhs.entries, rhs.entries);
        }
    }

    #[test]
    fn ranks_and_multiplicities() {
        let r2 = inst2();
        let m2 = GradedModule::from_mf(r2.clone(), mf_from_ideal(&r2).unwrap(), "I");
        assert_eq!(m2.rank_vector().unwrap(), vec![1]);
        assert_eq!(
            GradedModule::free(r2.clone(), &[0]).multiplicity().unwrap(),
            3
        );
        let r1 = inst1();
        let m1 = GradedModule::from_mf(r1.clone(), mf_from_ideal(&r1).unwrap(), "I");
        assert_eq!(m1.rank_vector().unwrap(), vec![1, 1]);
        assert_eq!(
            GradedModule::free(r1.clone(), &[0]).multiplicity().unwrap(),
            4
        );
        let sum = GradedModule::direct_sum(&[&m1, &m1]).unwrap();
        assert_eq!(sum.rank_vector().unwrap(), vec![2, 2]);
        assert!(sum.mf.as_ref().unwrap().check(&r1).holds);
    }

    #[test]
    fn minimization_removes_units() {
        let r = inst2();
        let k = r.field;
        let m = GradedModule::from_mf(r.clone(), mf_from_ideal(&r).unwrap(), "I");
        // add a redundant generator e with relation e - x * e_0 and a repeated column
        let mut big = GradedMatrix::zero(k, vec![4, 6, 8], vec![]);
        let mut cols = vec![];
        for c in 0..2 {
            let mut col = m.pres.column(c);
            col.push(WPoly::zero(k));
            cols.push((m.pres.cols[c], col));
        }
        cols.push((8, vec![WPoly::x(k).neg(), WPoly::zero(k), WPoly::one(k)]));
        cols.push((m.pres.cols[0] + 4, {
            let mut c = m
                .pres
                .column(0)
                .iter()
                .map(|e| r.mul(e, &WPoly::x(k)))
                .collect::<Vec<_>>();
            c.push(WPoly::zero(k));
            c
        }));
        for (d, col) in cols {
            big.cols.push(d);
            for (i, e) in col.into_iter().enumerate() {
                big.entries[i].push(e);
            }
        }
        big.check(&r).unwrap();
        let big = GradedModule::new(r.clone(), big, "big");
        let small = big.minimized();
        assert_eq!(small.gens(), &[4, 6]);
        assert_eq!(small.pres.ncols(), 2);
        for e in 0..30 {
            assert_eq!(small.dim(e), m.dim(e));
        }
    }

    #[test]
    fn ext_and_exactness() {
        let r = inst2();
        let mf = mf_from_ideal(&r).unwrap();
        for e in 0..36 {
            assert!(mf_exact_in_degree(&r, &mf, e), "degree {e}");
        }
        let m = GradedModule::from_mf(r.clone(), mf.clone(), "I");
        let n = m.cosyz().unwrap();
        let total: usize = (-12..12)
            .map(|d| ext1_dim(n.mf.as_ref().unwrap(), &m, d))
            .sum();
        assert!(total > 0);
    }
}
