//! Freeness certificates. Each route checks its hypotheses mechanically,
//! then re-verifies every conclusion against an independent oracle.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{is_complete_intersection, AlgElem, AlgebraMorphism, IdealSpan, LocalAlgebra};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::independence::{is_independent, is_strongly_independent};
use crate::linalg::{Matrix, Subspace};
use crate::module::{FpModule, TorsionRatio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    StrongIndep,
    MaxIndepSquare,
    Balanced,
    SpecialFiber,
    /// Special fiber with `∩ Ker D̄_i = 0` in place of `m_A^2 = 0`.
    SpecialFiberKernel,
    Desmit,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessCertificate {
    pub route: Route,
    pub experimental: bool,
    pub hypotheses: Vec<Check>,
    /// Filled only when every hypothesis holds.
    pub conclusions: Vec<Check>,
    pub witnesses: BTreeMap<String, String>,
    /// `M` is certified free over the target ring.
    pub certified_free: bool,
    pub oracle_free: bool,
}

impl FreenessCertificate {
    fn new(route: Route, oracle_free: bool) -> Self {
        FreenessCertificate {
            route,
            experimental: false,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            witnesses: BTreeMap::new(),
            certified_free: false,
            oracle_free,
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.holds)
    }

    pub fn first_failed_hypothesis(&self) -> Option<&Check> {
        self.hypotheses.iter().find(|c| !c.holds)
    }

    /// `Err(HypothesisFailed)` unless every hypothesis holds.
    pub fn require(self) -> Result<Self> {
        match self.first_failed_hypothesis() {
            Some(c) => Err(Error::HypothesisFailed(c.name.clone())),
            None => Ok(self),
        }
    }

    fn hypothesis(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push(Check::truth(name, holds));
        holds
    }

    /// Records a conclusion; a false one falsifies the theorem behind it.
    fn conclude(&mut self, name: &str, holds: bool) -> Result<()> {
        self.conclusions.push(Check::truth(name, holds));
        if holds || self.experimental {
            Ok(())
        } else {
            Err(Error::TheoremFalsified(format!(
                "{:?} route: {name}",
                self.route
            )))
        }
    }

    fn witness(&mut self, key: &str, value: String) {
        self.witnesses.insert(key.into(), value);
    }
}

fn at_most(t: TorsionRatio, d: usize) -> bool {
    t.value() <= Ratio::from_integer(d as u64)
}

fn format_seq<F: Field>(a: &LocalAlgebra<F>, x: &[AlgElem<F>]) -> String {
    let parts: Vec<String> = x.iter().map(|e| a.format(e)).collect();
    format!("({})", parts.join(", "))
}

/// `v ↦ Σ x_i v_i` on `A^n`.
fn combination_map<F: Field>(a: &LocalAlgebra<F>, x: &[AlgElem<F>]) -> Matrix<F> {
    let mut map = Matrix::zero(a.field(), a.dim(), 0);
    for xi in x {
        map = map.hstack(&a.mul_matrix(xi));
    }
    map
}

pub fn check_minimal_generators<F: Field>(a: &LocalAlgebra<F>, x: &[AlgElem<F>]) -> Result<()> {
    if x.len() != a.edim() {
        return Err(Error::NotMinimalGenerators(format!(
            "{} elements given, edim is {}",
            x.len(),
            a.edim()
        )));
    }
    if x.iter().any(|e| !a.in_max_ideal(e)) || a.ideal_from(x) != a.max_ideal() {
        return Err(Error::NotMinimalGenerators(format!(
            "{} does not generate m_A",
            format_seq(a, x)
        )));
    }
    Ok(())
}

/// `D = Σ x_i D_i` for a minimal presentation `D : A^t -> A^r` of `M`.
#[derive(Clone, Debug)]
pub struct PresentationDecomposition<F: Field> {
    pub rank: usize,
    pub relations: usize,
    pub x: Vec<AlgElem<F>>,
    /// `d[i][j]`, `r x t` over `A`.
    pub d: Vec<Vec<AlgElem<F>>>,
    /// `parts[l][i][j]`, the matrices `D_l`.
    pub parts: Vec<Vec<Vec<AlgElem<F>>>>,
    /// `D̄_l` over the residue field.
    pub residues: Vec<Matrix<F>>,
}

impl<F: Field> PresentationDecomposition<F> {
    /// `(D̄_1; ...; D̄_delta) : k^t -> k^(r delta)`.
    pub fn stacked(&self, delta: usize, field: &F) -> Matrix<F> {
        let mut out = Matrix::zero(field, 0, self.relations);
        for r in &self.residues[..delta] {
            out = out.vstack(r);
        }
        out
    }
}

pub fn decompose_presentation<F: Field>(
    m: &FpModule<F>,
    x: &[AlgElem<F>],
) -> Result<PresentationDecomposition<F>> {
    let a = m.algebra();
    check_minimal_generators(a, x)?;
    let n = x.len();
    let dim = a.dim();
    let f = a.field();
    let pres = m.minimal_presentation();
    let cols = pres.relation_columns();
    let (r, t) = (pres.rank, cols.len());
    let map = combination_map(a, x);
    let mut d = vec![vec![a.zero(); t]; r];
    let mut parts = vec![vec![vec![a.zero(); t]; r]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            d[i][j] = e.clone();
            let sol = map.solve(e).ok_or_else(|| {
                Error::NotMinimalGenerators(format!(
                    "relation entry `{}` is outside m_A",
                    a.format(e)
                ))
            })?;
            for (l, part) in parts.iter_mut().enumerate() {
                part[i][j] = sol[l * dim..(l + 1) * dim].to_vec();
            }
        }
    }
    for i in 0..r {
        for j in 0..t {
            let s = (0..n).fold(a.zero(), |s, l| a.add(&s, &a.mul(&x[l], &parts[l][i][j])));
            debug_assert_eq!(s, d[i][j]);
        }
    }
    let residues = parts
        .iter()
        .map(|p| {
            let rows = p
                .iter()
                .map(|row| row.iter().map(|e| e[0].clone()).collect())
                .collect();
            Matrix::from_rows(f, t, rows)
        })
        .collect();
    Ok(PresentationDecomposition {
        rank: r,
        relations: t,
        x: x.to_vec(),
        d,
        parts,
        residues,
    })
}

/// `m_A M = (x_(delta+1), ..., x_n) M`, decided both directly and through
/// the surjectivity of `(D̄_1, ..., D̄_delta)`.
pub fn check_generation_shift<F: Field>(
    m: &FpModule<F>,
    x: &[AlgElem<F>],
    delta: usize,
) -> Result<bool> {
    let a = m.algebra();
    if delta > x.len() {
        return Err(Error::PreconditionFailed(format!(
            "δ = {delta} exceeds n = {}",
            x.len()
        )));
    }
    let dec = decompose_presentation(m, x)?;
    let direct = m.max_ideal_times() == *m.sequence_times(&x[delta..]).space();
    let stacked = dec.stacked(delta, a.field());
    let surjective = stacked.rank() == stacked.rows();
    if direct != surjective {
        return Err(Error::Disagreement(format!(
            "δ = {delta}, x = {}: module identity {direct}, residue surjectivity {surjective}",
            format_seq(a, x)
        )));
    }
    Ok(direct)
}

fn mod_ideal_free<F: Field>(m: &FpModule<F>, i: &IdealSpan<F>) -> Result<bool> {
    Ok(m.base_change(i)?.1.freeness_oracle())
}

/// Freeness from a (strongly) `M`-independent ideal with `μ(I) >= edim(A)`.
pub fn certify_strong_independence_freeness<F: Field>(
    m: &FpModule<F>,
    ideal: &IdealSpan<F>,
) -> Result<FreenessCertificate> {
    let a = m.algebra();
    a.check_ideal(ideal)?;
    let mut cert = FreenessCertificate::new(Route::StrongIndep, m.freeness_oracle());
    let gens = a.minimal_generators(ideal);
    cert.witness("I", format_seq(a, &gens));
    if m.is_zero() {
        cert.certified_free = true;
        return Ok(cert);
    }
    if !cert.hypothesis("I ⊆ m_A", ideal.is_subset_of(&a.max_ideal())) {
        return Ok(cert);
    }
    cert.hypothesis("μ(I) >= edim(A)", gens.len() >= a.edim());
    let indep = is_independent(&gens, m)?;
    cert.hypothesis("I is M-independent", indep.independent);
    if !cert.hypotheses_hold() {
        return Ok(cert);
    }
    let strong = is_strongly_independent(ideal, m)?;
    if let Some(p) = strong.failing_power {
        cert.witness("failing power", p.to_string());
    }
    cert.route = if strong.independent {
        Route::StrongIndep
    } else {
        Route::MaxIndepSquare
    };
    cert.conclude("μ(I) = edim(A)", gens.len() == a.edim())?;
    cert.conclude(
        "A/I is a complete intersection",
        is_complete_intersection(&*a.quotient(ideal)?),
    )?;
    cert.conclude("M/IM is free over A/I", mod_ideal_free(m, ideal)?)?;
    cert.conclude(
        "M/I²M is free over A/I²",
        mod_ideal_free(m, &a.ideal_power(ideal, 2)?)?,
    )?;
    if strong.independent {
        cert.conclude("M is free over A", cert.oracle_free)?;
        cert.certified_free = true;
    }
    Ok(cert)
}

/// `t_A(B)` for `B` viewed as an `A`-module.
pub fn ring_torsion_ratio<F: Field>(phi: &AlgebraMorphism<F>) -> Result<TorsionRatio> {
    Ok(FpModule::free(phi.target().clone(), 1)
        .restrict_scalars(phi)?
        .torsion_ratio())
}

fn fiber<F: Field>(phi: &AlgebraMorphism<F>) -> Result<(IdealSpan<F>, Arc<LocalAlgebra<F>>)> {
    let mab = phi.extend_ideal(&phi.source().max_ideal())?;
    let b0 = phi.target().quotient(&mab)?;
    Ok((mab, b0))
}

/// The balanced-module criterion for one choice of `δ` and of minimal
/// generators `x` of `m_A`.
pub fn certify_balanced<F: Field>(
    phi: &AlgebraMorphism<F>,
    m: &FpModule<F>,
    delta: usize,
    x: &[AlgElem<F>],
) -> Result<FreenessCertificate> {
    let a = phi.source();
    let b = phi.target();
    check_minimal_generators(a, x)?;
    let ma = m.restrict_scalars(phi)?;
    let n = a.edim();
    let mut cert = FreenessCertificate::new(Route::Balanced, m.freeness_oracle());
    cert.witness("delta", delta.to_string());
    cert.witness("x", format_seq(a, x));
    let t = ma.torsion_ratio();
    cert.witness("t_A(M)", t.reduced());
    cert.hypothesis("t_A(M) <= δ", at_most(t, delta));
    cert.hypothesis("δ <= edim(A) - edim(B)", delta + b.edim() <= n);
    if delta > n || !cert.hypotheses_hold() {
        return Ok(cert);
    }
    cert.hypothesis(
        "m_A M = (x_(δ+1), ..., x_n) M",
        ma.max_ideal_times() == *ma.sequence_times(&x[delta..]).space(),
    );
    if !cert.hypotheses_hold() {
        return Ok(cert);
    }
    cert.conclude("M is free over B", cert.oracle_free)?;
    cert.certified_free = true;
    if m.is_zero() {
        return Ok(cert);
    }
    cert.conclude("Lemma agrees", check_generation_shift(&ma, x, delta)?)?;
    let tail = &x[delta..];
    cert.conclude(
        "(x_(δ+1), ..., x_n) is M-independent",
        is_independent(tail, &ma)?.independent,
    )?;
    let (mab, b0) = fiber(phi)?;
    cert.conclude(
        "B/m_A B is a complete intersection",
        is_complete_intersection(&b0),
    )?;
    cert.conclude("μ_B(m_A B) = n - δ", b.mu_ideal(&mab) == n - delta)?;
    let tb = ring_torsion_ratio(phi)?;
    cert.witness("t_A(B)", tb.reduced());
    let d = Ratio::from_integer(delta as u64);
    cert.conclude("t_A(M) = δ", t.value() == d)?;
    cert.conclude("δ = edim(A) - edim(B)", delta + b.edim() == n)?;
    cert.conclude("t_A(B) = δ", tb.value() == d)?;
    // base change along A -> A/m_A^2 cannot raise the ratio
    let m2 = a.ideal_power(&a.max_ideal(), 2)?;
    if !m2.is_zero() {
        let (_, mbar) = ma.base_change(&m2)?;
        cert.conclude(
            "t_(A/m²)(M/m²M) <= t_A(M)",
            mbar.torsion_ratio().value() <= t.value(),
        )?;
    }
    Ok(cert)
}

#[derive(Clone, Debug)]
pub struct SearchCaps {
    pub max_systems: usize,
    pub coefficient_bound: u64,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_systems: 5000,
            coefficient_bound: 2,
        }
    }
}

/// Minimal generating systems of `m_A` whose tails are drawn from small
/// combinations of the canonical generators, in a fixed order.
fn generator_systems<F: Field>(
    a: &LocalAlgebra<F>,
    tail_len: usize,
    caps: &SearchCaps,
) -> Result<Vec<Vec<AlgElem<F>>>> {
    let f = a.field();
    let canon = a.minimal_generators(&a.max_ideal());
    let n = canon.len();
    let scalars = f.prime_subfield_elements(caps.coefficient_bound.max(2));
    let mut pool: Vec<Vec<F::Elem>> = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let mut c = 0;
        while c < n {
            idx[c] += 1;
            if idx[c] < scalars.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
        if c == n {
            break;
        }
        let coeffs: Vec<F::Elem> = idx.iter().map(|&i| scalars[i].clone()).collect();
        if coeffs
            .iter()
            .find(|e| !f.is_zero(e))
            .is_some_and(|e| f.is_one(e))
        {
            pool.push(coeffs);
        }
        if pool.len() > caps.max_systems {
            return Err(Error::cap(
                "generator combinations",
                caps.max_systems,
                pool.len(),
            ));
        }
    }
    // fewer nonzero coefficients first, so the canonical generators lead
    pool.sort_by_key(|c| c.iter().filter(|e| !f.is_zero(e)).count());
    let combine = |c: &[F::Elem]| {
        c.iter()
            .zip(&canon)
            .fold(a.zero(), |s, (k, g)| a.add(&s, &a.scale(k, g)))
    };
    let mut out = Vec::new();
    for tail in crate::koszul::tuples(pool.len(), tail_len) {
        let rows: Vec<Vec<F::Elem>> = tail.iter().map(|&i| pool[i].clone()).collect();
        if Matrix::from_rows(f, n, rows.clone()).rank() < tail_len {
            continue;
        }
        // complete the tail by canonical generators, placed in front
        let mut span = Subspace::span(f, n, rows.clone());
        let mut head = Vec::new();
        for k in 0..n {
            let e = crate::linalg::unit_vec(f, n, k);
            if !span.contains(&e) {
                span = span.sum(&Subspace::span(f, n, vec![e]));
                head.push(canon[k].clone());
            }
        }
        head.extend(rows.iter().map(|c| combine(c)));
        out.push(head);
        if out.len() > caps.max_systems {
            return Err(Error::cap("generator systems", caps.max_systems, out.len()));
        }
    }
    Ok(out)
}

/// Tries every `δ` and every searched generator system; returns the first
/// certificate whose hypotheses hold, else the last failure for `δ = 0`.
pub fn certify_balanced_search<F: Field>(
    phi: &AlgebraMorphism<F>,
    m: &FpModule<F>,
    caps: &SearchCaps,
) -> Result<FreenessCertificate> {
    let a = phi.source();
    let n = a.edim();
    let max_delta = n.saturating_sub(phi.target().edim());
    let canon = a.minimal_generators(&a.max_ideal());
    for delta in 0..=max_delta {
        let systems = generator_systems(a, n - delta, caps)?;
        let found = systems
            .par_iter()
            .map(|x| certify_balanced(phi, m, delta, x))
            .find_first(|r| r.as_ref().map_or(true, |c| c.hypotheses_hold()));
        if let Some(r) = found {
            return r;
        }
    }
    certify_balanced(phi, m, 0, &canon)
}

fn require_square_zero<F: Field>(a: &LocalAlgebra<F>) -> Result<()> {
    if a.ideal_power(&a.max_ideal(), 2)?.is_zero() {
        Ok(())
    } else {
        Err(Error::NotSquareZero)
    }
}

fn special_fiber_hypotheses<F: Field>(
    cert: &mut FreenessCertificate,
    phi: &AlgebraMorphism<F>,
    m: &FpModule<F>,
) -> Result<()> {
    let ma = m.restrict_scalars(phi)?;
    let t = ma.torsion_ratio();
    let tb = ring_torsion_ratio(phi)?;
    cert.witness("t_A(M)", t.reduced());
    cert.witness("t_A(B)", tb.reduced());
    cert.hypothesis("t_A(M) <= t_A(B)", t.value() <= tb.value());
    let (mab, _) = fiber(phi)?;
    cert.hypothesis("M/m_A M is free over B/m_A B", mod_ideal_free(m, &mab)?);
    Ok(())
}

/// Freeness over `B` when `m_A^2 = 0`, `t_A(M) <= t_A(B)` and the special
/// fiber is free.
pub fn certify_special_fiber<F: Field>(
    phi: &AlgebraMorphism<F>,
    m: &FpModule<F>,
) -> Result<FreenessCertificate> {
    require_square_zero(phi.source())?;
    let mut cert = FreenessCertificate::new(Route::SpecialFiber, m.freeness_oracle());
    special_fiber_hypotheses(&mut cert, phi, m)?;
    if cert.hypotheses_hold() {
        cert.conclude("M is free over B", cert.oracle_free)?;
        cert.certified_free = true;
    }
    Ok(cert)
}

/// Experimental: the special-fiber route with `m_A^2 = 0` replaced by
/// `∩_(i <= δ) Ker D̄_i = 0` for the decomposition along `x`. Disagreement
/// with the oracle is recorded, not raised.
pub fn certify_special_fiber_kernel<F: Field>(
    phi: &AlgebraMorphism<F>,
    m: &FpModule<F>,
    delta: usize,
    x: &[AlgElem<F>],
) -> Result<FreenessCertificate> {
    let mut cert = FreenessCertificate::new(Route::SpecialFiberKernel, m.freeness_oracle());
    cert.experimental = true;
    special_fiber_hypotheses(&mut cert, phi, m)?;
    let ma = m.restrict_scalars(phi)?;
    let dec = decompose_presentation(&ma, x)?;
    let delta = delta.min(x.len());
    let stacked = dec.stacked(delta, phi.source().field());
    cert.hypothesis("∩ Ker D̄_i = 0", stacked.rank() == stacked.cols());
    if cert.hypotheses_hold() {
        cert.conclude("M is free over B", cert.oracle_free)?;
        cert.certified_free = true;
    }
    Ok(cert)
}

/// The flat-finite pipeline: strong independence of `m_A` on `M`, carried
/// to `B`, then the freeness criterion over `B`.
pub fn certify_desmit<F: Field>(
    phi: &AlgebraMorphism<F>,
    m: &FpModule<F>,
) -> Result<FreenessCertificate> {
    let a = phi.source();
    let b = phi.target();
    let mut cert = FreenessCertificate::new(Route::Desmit, m.freeness_oracle());
    let b_free = FpModule::free(b.clone(), 1)
        .restrict_scalars(phi)?
        .freeness_oracle();
    cert.hypothesis("B is free over A", b_free);
    cert.hypothesis("edim(A) >= edim(B)", a.edim() >= b.edim());
    let ma = m.restrict_scalars(phi)?;
    cert.hypothesis("M is free over A", ma.freeness_oracle());
    if !cert.hypotheses_hold() {
        return Ok(cert);
    }
    let x = a.minimal_generators(&a.max_ideal());
    let fx: Vec<_> = x.iter().map(|e| phi.apply(e)).collect();
    cert.witness("φ(x)", format_seq(b, &fx));
    cert.conclude("edim(A) = edim(B)", a.edim() == b.edim())?;
    if m.is_zero() {
        cert.certified_free = true;
        return Ok(cert);
    }
    cert.conclude(
        "m_A is strongly M-independent over A",
        is_strongly_independent(&a.max_ideal(), &ma)?.independent,
    )?;
    let jb = b.ideal_from(&fx);
    cert.conclude(
        "φ(x) is strongly M-independent over B",
        is_strongly_independent(&jb, m)?.independent,
    )?;
    cert.conclude("μ_B(φ(x)) = edim(A)", b.mu_ideal(&jb) == x.len())?;
    cert.conclude("M is free over B", cert.oracle_free)?;
    cert.certified_free = true;
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBound {
    pub torsion_ratio: TorsionRatio,
    pub edim_a: usize,
    pub edim_b: usize,
    pub mu_mab: usize,
    pub bound: i64,
    pub fiber_ci: bool,
    /// `edim(A) - edim(B)`, asserted only when the fiber is a complete
    /// intersection.
    pub ci_bound: Option<i64>,
}

/// `t_A(M) >= edim(A) - μ_B(m_A B)`, and `>= edim(A) - edim(B)` when
/// `B/m_A B` is a complete intersection.
pub fn lower_bound_check<F: Field>(
    phi: &AlgebraMorphism<F>,
    m: &FpModule<F>,
) -> Result<LowerBound> {
    if m.is_zero() {
        return Err(Error::PreconditionFailed("M must be nonzero".into()));
    }
    let a = phi.source();
    let b = phi.target();
    let t = m.restrict_scalars(phi)?.torsion_ratio();
    let (mab, b0) = fiber(phi)?;
    let mu = b.mu_ideal(&mab);
    let bound = a.edim() as i64 - mu as i64;
    let ge = |k: i64| k <= 0 || t.value() >= Ratio::from_integer(k as u64);
    if !ge(bound) {
        return Err(Error::TheoremFalsified(format!(
            "t_A(M) = {} < {bound}",
            t.reduced()
        )));
    }
    let fiber_ci = is_complete_intersection(&b0);
    let ci_bound = fiber_ci.then(|| a.edim() as i64 - b.edim() as i64);
    if let Some(k) = ci_bound {
        if !ge(k) {
            return Err(Error::TheoremFalsified(format!(
                "t_A(M) = {} < edim(A) - edim(B) = {k}",
                t.reduced()
            )));
        }
    }
    Ok(LowerBound {
        torsion_ratio: t,
        edim_a: a.edim(),
        edim_b: b.edim(),
        mu_mab: mu,
        bound,
        fiber_ci,
        ci_bound,
    })
}
