//! Traces of endomorphisms in the total quotient ring and the two
//! stable-vanishing tests.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::branches::BranchKind;
use crate::decompose::EndAlgebra;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{Echelon, Mat};
use crate::module::{hom_graded, stably_zero_span, GradedHom, GradedModule};
use crate::poly::WPoly;
use crate::qelem::{q_membership, QElement};

/// The cokernel of `A(P_b)` on one branch: a complement of the column space.
struct BranchCokernel {
    cols: Echelon,
    free: Vec<usize>,
}

/// Per-branch data for computing traces of endomorphisms of one module.
pub struct TraceOracle<'a> {
    pub module: &'a GradedModule,
    branches: Vec<BranchCokernel>,
}

impl<'a> TraceOracle<'a> {
    pub fn new(m: &'a GradedModule) -> Result<TraceOracle<'a>> {
        let n0 = m.ngens();
        let branches = m
            .ring
            .branches()?
            .iter()
            .map(|br| {
                let a = m.pres.eval_branch(br);
                let mut cols = Echelon::new(m.field(), n0);
                for j in 0..a.cols {
                    cols.insert(&a.col(j));
                }
                let pivots = cols.pivots();
                let free = (0..n0).filter(|i| !pivots.contains(i)).collect();
                BranchCokernel { cols, free }
            })
            .collect();
        Ok(TraceOracle {
            module: m,
            branches,
        })
    }

    /// Trace at `t = 1` on each branch of the map with evaluated matrix `h`.
    fn values_of(&self, evals: &[Mat]) -> Vec<Fe> {
        let k = self.module.field();
        self.branches
            .iter()
            .zip(evals)
            .map(|(bc, h)| {
                // the standard vectors at free positions map to a basis of
                // the cokernel; project h e_f back onto them
                bc.free.iter().fold(k.zero(), |s, &f| {
                    let img = bc.cols.reduce(&h.col(f));
                    s + &img[f]
                })
            })
            .collect()
    }

    fn evals(&self, h: &GradedHom) -> Result<Vec<Mat>> {
        Ok(self
            .module
            .ring
            .branches()?
            .iter()
            .map(|br| h.matrix.eval_branch(br))
            .collect())
    }

    pub fn trace(&self, h: &GradedHom) -> Result<QElement> {
        let vals = self.values_of(&self.evals(h)?);
        QElement::from_branch_values(&self.module.ring, &vals, h.degree)
    }

    /// Trace of `g ∘ h` without forming the composite over `R`.
    pub fn trace_of_composite(&self, g: &GradedHom, h: &GradedHom) -> Result<QElement> {
        let eg = self.evals(g)?;
        let eh = self.evals(h)?;
        let prod: Vec<Mat> = eg.iter().zip(&eh).map(|(a, b)| a.mul(b)).collect();
        let vals = self.values_of(&prod);
        QElement::from_branch_values(&self.module.ring, &vals, g.degree + h.degree)
    }
}

pub fn trace_q(m: &GradedModule, h: &GradedHom) -> Result<QElement> {
    TraceOracle::new(m)?.trace(h)
}

pub fn is_integral(tr: &QElement) -> bool {
    tr.is_integral()
}

/// A generating set of `End_R(M)` as an `R`-module, certified by counting
/// `k[x]`-module generators of `End_R(M)`, which is free over `k[x]` of
/// rank `sum_b rank_b(M)^2 [k(branch b) : k(x)]`.
#[derive(Clone, Debug)]
pub struct EndGenerators {
    pub generators: Vec<GradedHom>,
    /// Degrees searched, inclusive.
    pub window: (i64, i64),
    pub kx_rank: usize,
    pub dims: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowReport {
    pub low: i64,
    pub high: i64,
    pub kx_rank: usize,
    pub generator_degrees: Vec<i64>,
}

impl EndGenerators {
    pub fn report(&self) -> WindowReport {
        WindowReport {
            low: self.window.0,
            high: self.window.1,
            kx_rank: self.kx_rank,
            generator_degrees: self.generators.iter().map(|g| g.degree).collect(),
        }
    }
}

pub fn end_generators(m: &GradedModule) -> Result<EndGenerators> {
    let ring = &m.ring;
    let ranks = m.rank_vector()?;
    let mut kx_rank = 0;
    for (br, r) in ring.branches()?.iter().zip(&ranks) {
        let fibre = match br.kind {
            BranchKind::Binomial => ring.q as usize,
            BranchKind::YAxis => 1,
            BranchKind::XAxis => {
                return Err(Error::Input(
                    "x divides g; k[x] is not a Noether normalization".into(),
                ))
            }
        };
        kx_rank += r * r * fibre;
    }
    let lo = -m.spread();
    let cap = lo + m.spread() * 2 + (ring.big_n() as i64) * ring.wy() + 2 * ring.deg_g();
    let q = ring.wx();
    let p = ring.wy();
    let k = m.field();
    let x = WPoly::x(k);
    let y = WPoly::y(k);
    let mut dims = BTreeMap::new();
    let mut bases: BTreeMap<i64, Vec<GradedHom>> = BTreeMap::new();
    let mut generators = Vec::new();
    let mut counted = 0usize;
    let mut d = lo;
    loop {
        if d > cap {
            return Err(Error::Certification(format!(
                "window not saturated: found {counted} of {kx_rank} k[x]-generators of End in degrees {lo}..={cap}"
            )));
        }
        let basis = hom_graded(m, m, d);
        let dim = basis.len();
        let below = dims.get(&(d - q)).copied().unwrap_or(0);
        if dim < below {
            return Err(Error::Certification(format!(
                "End is not k[x]-free: dim End_{d} = {dim} < dim End_{} = {below}",
                d - q
            )));
        }
        counted += dim - below;
        dims.insert(d, dim);
        // R_+ End in degree d is x End_{d-q} + y End_{d-p}
        let width = m.gens().iter().map(|a| m.dim(a + d)).sum();
        let mut lower = Echelon::new(k, width);
        for (r, s) in [(&x, q), (&y, p)] {
            for h in bases.get(&(d - s)).map(Vec::as_slice).unwrap_or(&[]) {
                let rh = GradedHom {
                    degree: d,
                    matrix: h.matrix.times(r, s, crate::matrix::Arith::R, ring),
                };
                lower.insert(&m.hom_coords(&rh.matrix));
            }
        }
        for h in &basis {
            if lower.insert(&m.hom_coords(&h.matrix)) {
                generators.push(h.clone());
            }
        }
        bases.insert(d, basis);
        if counted == kx_rank {
            return Ok(EndGenerators {
                generators,
                window: (lo, d),
                kx_rank,
                dims,
            });
        }
        if counted > kx_rank {
            return Err(Error::Certification(format!(
                "counted {counted} k[x]-generators, expected {kx_rank}"
            )));
        }
        d += 1;
    }
}

/// Outcome of the trace test with the witnessing traces.
#[derive(Clone, Debug)]
pub struct TraceVerdict {
    pub stably_zero: bool,
    pub traces: Vec<QElement>,
}

/// `h` is stably zero iff `trace(g h)` lies in `R` for every generator `g`.
pub fn stably_zero_trace(
    h: &GradedHom,
    oracle: &TraceOracle,
    gens: &EndGenerators,
) -> Result<TraceVerdict> {
    let ring = &oracle.module.ring;
    let mut traces = Vec::new();
    let mut all = true;
    for g in &gens.generators {
        let tr = oracle.trace_of_composite(g, h)?;
        if q_membership(&tr, ring).is_none() {
            all = false;
        }
        traces.push(tr);
    }
    Ok(TraceVerdict {
        stably_zero: all,
        traces,
    })
}

/// `h` is stably zero iff it factors through the free cover.
pub fn stably_zero_bruteforce(h: &GradedHom, m: &GradedModule) -> bool {
    stably_zero_span(m, h.degree).contains(&m.hom_coords(&h.matrix))
}

/// Generators of the ideal of nonunits of `End(M)` for indecomposable `M`:
/// generators of nonzero degree, the radical of `End(M)_0`, and `x`, `y`
/// times the degree-zero generators.
pub fn nonunit_generators(m: &GradedModule, gens: &EndGenerators) -> Result<Vec<GradedHom>> {
    let ring = &m.ring;
    let k = m.field();
    let mut out: Vec<GradedHom> = gens
        .generators
        .iter()
        .filter(|g| g.degree != 0)
        .cloned()
        .collect();
    let alg = EndAlgebra::of(m);
    for j in alg.radical()? {
        out.push(alg.hom(&j));
    }
    for g in gens.generators.iter().filter(|g| g.degree == 0) {
        for (r, s) in [(WPoly::x(k), ring.wx()), (WPoly::y(k), ring.wy())] {
            out.push(GradedHom {
                degree: s,
                matrix: m.canonical(&g.matrix.times(&r, s, crate::matrix::Arith::R, ring)),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SocleVerdict {
    pub is_socle: bool,
    pub stably_nonzero: TraceVerdict,
    /// Index into the nonunit generators of the first `g` with `g h` not
    /// stably zero.
    pub offending: Option<usize>,
}

pub fn socle_test(
    h: &GradedHom,
    oracle: &TraceOracle,
    gens: &EndGenerators,
    nonunits: &[GradedHom],
) -> Result<SocleVerdict> {
    let m = oracle.module;
    let own = stably_zero_trace(h, oracle, gens)?;
    if own.stably_zero {
        return Ok(SocleVerdict {
            is_socle: false,
            stably_nonzero: own,
            offending: None,
        });
    }
    for (i, g) in nonunits.iter().enumerate() {
        let gh = g.compose(h, m);
        if !stably_zero_trace(&gh, oracle, gens)?.stably_zero {
            return Ok(SocleVerdict {
                is_socle: false,
                stably_nonzero: own,
                offending: Some(i),
            });
        }
    }
    Ok(SocleVerdict {
        is_socle: true,
        stably_nonzero: own,
        offending: None,
    })
}

/// Agreement of the trace test with the brute-force test on a basis of
/// `End(M)_d` for `|d| <= half_width`, plus integrality of every trace computed
/// and `t`-valuation at least one for the nonisomorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub module: String,
    pub window: (i64, i64),
    pub tested: usize,
    pub agreements: usize,
    pub disagreements: Vec<String>,
    pub traces_checked: usize,
    pub nonintegral: Vec<String>,
    pub nonisomorphisms_tested: usize,
    pub outside_radical: Vec<String>,
    pub pass: bool,
}

pub fn oracle_agreement(m: &GradedModule, half_width: i64) -> Result<OracleReport> {
    let g = half_width;
    let gens = end_generators(m)?;
    let oracle = TraceOracle::new(m)?;
    let mut rep = OracleReport {
        module: m.label.clone(),
        window: (-g, g),
        tested: 0,
        agreements: 0,
        disagreements: Vec::new(),
        traces_checked: 0,
        nonintegral: Vec::new(),
        nonisomorphisms_tested: 0,
        outside_radical: Vec::new(),
        pass: false,
    };
    let in_radical = |h: &GradedHom, tr: &QElement, rep: &mut OracleReport| {
        rep.nonisomorphisms_tested += 1;
        if tr.min_valuation().map_or(false, |v| v < 1) {
            rep.outside_radical.push(format!("degree {}: trace {tr}", h.degree));
        }
    };
    let alg = EndAlgebra::of(m);
    let radical: Vec<GradedHom> = alg.radical()?.iter().map(|j| alg.hom(j)).collect();
    for d in -g..=g {
        for h in hom_graded(m, m, d) {
            rep.tested += 1;
            let verdict = stably_zero_trace(&h, &oracle, &gens)?;
            if verdict.stably_zero == stably_zero_bruteforce(&h, m) {
                rep.agreements += 1;
            } else {
                rep.disagreements.push(format!("degree {d}: {}", h.matrix));
            }
            let own = oracle.trace(&h)?;
            for tr in verdict.traces.iter().chain(std::iter::once(&own)) {
                rep.traces_checked += 1;
                if !tr.is_integral() {
                    rep.nonintegral.push(format!("degree {d}: trace {tr}"));
                }
            }
            if d != 0 {
                in_radical(&h, &own, &mut rep);
            }
        }
    }
    for h in &radical {
        let tr = oracle.trace(h)?;
        rep.traces_checked += 1;
        if !tr.is_integral() {
            rep.nonintegral.push(format!("radical: trace {tr}"));
        }
        in_radical(h, &tr, &mut rep);
    }
    rep.pass = rep.disagreements.is_empty() && rep.nonintegral.is_empty() && rep.outside_radical.is_empty();
    Ok(rep)
}

/// Dimension of the socle of the stable endomorphism ring of an
/// indecomposable `M` in each degree of `lo..=hi`: maps `h` with `g h`
/// stably zero for every nonunit generator `g`, modulo stably zero maps.
/// Brute force, independent of the trace oracle.
pub fn stable_socle_dims(m: &GradedModule, lo: i64, hi: i64) -> Result<Vec<(i64, usize)>> {
    let gens = end_generators(m)?;
    let nonunits = nonunit_generators(m, &gens)?;
    let mut spans = BTreeMap::new();
    let mut out = Vec::new();
    for d in lo..=hi {
        let basis = hom_graded(m, m, d);
        if basis.is_empty() {
            out.push((d, 0));
            continue;
        }
        let mut cols = Vec::new();
        for h in &basis {
            let mut v = Vec::new();
            for g in &nonunits {
                let e = d + g.degree;
                let span = spans.entry(e).or_insert_with(|| stably_zero_span(m, e));
                v.extend(span.reduce(&m.hom_coords(&g.compose(h, m).matrix)));
            }
            cols.push(v);
        }
        let rows = cols[0].len();
        let kernel = basis.len() - Mat::from_cols(m.field(), &cols, rows).rank();
        let zero = spans.entry(d).or_insert_with(|| stably_zero_span(m, d)).rank();
        out.push((d, kernel - zero));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::mf_from_ideal;
    use crate::ring::{ring, HypersurfaceRing};
    use std::sync::Arc;

    fn ideal(r: &Arc<HypersurfaceRing>) -> GradedModule {
        GradedModule::from_mf(r.clone(), mf_from_ideal(r).unwrap(), "I")
    }

    #[test]
    fn traces_of_scalars() {
        let r = Arc::new(ring(Field::Rational, 3, 4, 1, "y", Some((1, 2))).unwrap());
        let m = ideal(&r);
        let tr = trace_q(&m, &m.identity()).unwrap();
        assert_eq!(tr.num, WPoly::one(r.field));
        let x = m.scalar(&WPoly::x(r.field)).unwrap();
        assert_eq!(trace_q(&m, &x).unwrap().num, WPoly::x(r.field));
        let sum = GradedModule::direct_sum(&[&m, &m]).unwrap();
        let x2 = sum.scalar(&r.poly("x*y").unwrap()).unwrap();
        assert_eq!(trace_q(&sum, &x2).unwrap().num, r.poly("2*x*y").unwrap());
    }

    #[test]
    fn generators_and_oracles_agree() {
        let r = Arc::new(ring(Field::Rational, 3, 4, 1, "1", Some((1, 2))).unwrap());
        let m = ideal(&r);
        let gens = end_generators(&m).unwrap();
        assert!(gens.generators.iter().any(|g| g.degree == 0));
        let oracle = TraceOracle::new(&m).unwrap();
        let x = m.scalar(&WPoly::x(r.field)).unwrap();
        assert!(stably_zero_bruteforce(&x, &m));
        assert!(stably_zero_trace(&x, &oracle, &gens).unwrap().stably_zero);
        assert!(!stably_zero_bruteforce(&m.identity(), &m));
        assert!(
            !stably_zero_trace(&m.identity(), &oracle, &gens)
                .unwrap()
                .stably_zero
        );
        let g = r.deg_g();
        for d in -g..=g {
            for h in hom_graded(&m, &m, d) {
                assert_eq!(
                    stably_zero_bruteforce(&h, &m),
                    stably_zero_trace(&h, &oracle, &gens).unwrap().stably_zero,
                    "degree {d}"
                );
            }
        }
    }

    #[test]
    fn agreement_report_on_both_instances() {
        for f in ["y", "1"] {
            let r = Arc::new(ring(Field::Rational, 3, 4, 1, f, Some((1, 2))).unwrap());
            let rep = oracle_agreement(&ideal(&r), r.deg_g()).unwrap();
            assert!(rep.pass, "{rep:?}");
            assert!(rep.tested > 0 && rep.nonisomorphisms_tested > 0);
        }
    }

    #[test]
    fn stable_socle_is_simple_and_sits_in_gamma_degree() {
        for (f, deg_gamma) in [("1", 5), ("y", 8)] {
            let r = Arc::new(ring(Field::Rational, 3, 4, 1, f, Some((1, 2))).unwrap());
            let g = r.deg_g();
            let dims = stable_socle_dims(&ideal(&r), -g, g).unwrap();
            let nonzero: Vec<(i64, usize)> = dims.into_iter().filter(|x| x.1 > 0).collect();
            assert_eq!(nonzero, vec![(deg_gamma, 1)], "f = {f}");
        }
    }
}
