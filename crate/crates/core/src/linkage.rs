//! Transition matrices `x = uW`, their determinants, and mechanical checks
//! of the linkage equalities between `J_u` and `J_x + (Δ)`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgElem, AlgebraMorphism, IdealSpan, LocalAlgebra};
pub use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::independence::is_independent;
use crate::koszul::tuples;
use crate::linalg::{Matrix, Subspace};
use crate::module::FpModule;

pub const DEFAULT_MAX_DET: usize = 8;
pub const MAX_FITTING_SUBSETS: usize = 5000;

/// `x_j = Σ_i u_i W_ij`, with `Δ = det W`.
#[derive(Clone, Debug)]
pub struct TransitionMatrix<F: Field> {
    pub x: Vec<AlgElem<F>>,
    pub u: Vec<AlgElem<F>>,
    /// Row-major, `w[i][j]`.
    pub w: Vec<Vec<AlgElem<F>>>,
    pub delta: AlgElem<F>,
}

/// `v ↦ Σ u_i v_i` on `A^n` as a k-matrix.
fn combination_map<F: Field>(a: &LocalAlgebra<F>, u: &[AlgElem<F>]) -> Matrix<F> {
    let mut map = Matrix::zero(a.field(), a.dim(), 0);
    for ui in u {
        map = map.hstack(&a.mul_matrix(ui));
    }
    map
}

pub fn determinant<F: Field>(
    a: &LocalAlgebra<F>,
    w: &[Vec<AlgElem<F>>],
    max_det: usize,
) -> Result<AlgElem<F>> {
    if w.len() > max_det {
        return Err(Error::cap("determinant size", max_det, w.len()));
    }
    if w.iter().any(|r| r.len() != w.len()) {
        return Err(Error::PreconditionFailed(
            "determinant of a non-square matrix".into(),
        ));
    }
    Ok(a.det(w))
}

impl<F: Field> TransitionMatrix<F> {
    /// Checks `x = uW` and computes `Δ`.
    pub fn new(
        a: &LocalAlgebra<F>,
        x: Vec<AlgElem<F>>,
        u: Vec<AlgElem<F>>,
        w: Vec<Vec<AlgElem<F>>>,
        max_det: usize,
    ) -> Result<Self> {
        let n = x.len();
        if u.len() != n || w.len() != n || w.iter().any(|r| r.len() != n) {
            return Err(Error::PreconditionFailed(format!(
                "x, u and W must have size {n}"
            )));
        }
        for j in 0..n {
            let s = (0..n).fold(a.zero(), |s, i| a.add(&s, &a.mul(&u[i], &w[i][j])));
            if s != x[j] {
                return Err(Error::RelationViolated(format!(
                    "x_{} = `{}` differs from (uW)_{} = `{}`",
                    j + 1,
                    a.format(&x[j]),
                    j + 1,
                    a.format(&s)
                )));
            }
        }
        let delta = determinant(a, &w, max_det)?;
        Ok(TransitionMatrix { x, u, w, delta })
    }

    pub fn size(&self) -> usize {
        self.x.len()
    }

    /// Another admissible `W`, obtained by adding a nonzero solution of
    /// `Σ u_i v_i = 0` to the first column; `None` when `W` is unique.
    pub fn second_solution(&self, a: &LocalAlgebra<F>, max_det: usize) -> Result<Option<Self>> {
        let n = self.size();
        if n == 0 {
            return Ok(None);
        }
        let ker = Subspace::kernel_of(&combination_map(a, &self.u));
        let Some(v) = ker.basis().first() else {
            return Ok(None);
        };
        let d = a.dim();
        let mut w = self.w.clone();
        for (i, row) in w.iter_mut().enumerate() {
            row[0] = a.add(&row[0], &v[i * d..(i + 1) * d]);
        }
        Self::new(a, self.x.clone(), self.u.clone(), w, max_det).map(Some)
    }
}

/// Solves `x = uW` column by column; free variables are set to zero.
pub fn solve_transition<F: Field>(
    a: &LocalAlgebra<F>,
    x: &[AlgElem<F>],
    u: &[AlgElem<F>],
    max_det: usize,
) -> Result<TransitionMatrix<F>> {
    let n = x.len();
    if u.len() != n {
        return Err(Error::PreconditionFailed(format!(
            "x has length {n} but u has length {}",
            u.len()
        )));
    }
    let map = combination_map(a, u);
    let d = a.dim();
    let mut w = vec![vec![a.zero(); n]; n];
    for j in 0..n {
        let sol = map.solve(&x[j]).ok_or(Error::NotContained)?;
        for (i, row) in w.iter_mut().enumerate() {
            row[j] = sol[i * d..(i + 1) * d].to_vec();
        }
    }
    TransitionMatrix::new(a, x.to_vec(), u.to_vec(), w, max_det)
}

/// Which of the equivalent hypotheses enabled the last part of the report.
#[derive(Clone, Debug, Serialize)]
pub struct Part4Route {
    pub nilpotent: bool,
    pub jacobson: bool,
    pub faithful: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkageReport {
    pub n: usize,
    pub delta: String,
    pub w: Vec<Vec<String>>,
    pub part1: Check,
    pub part2: Vec<Check>,
    /// Present when `Ann(M/J_x M) = J_x`.
    pub part3: Option<Vec<Check>>,
    /// Present when `M ≠ 0` and `J_u ⊆ m_A`.
    pub part4: Option<Vec<Check>>,
    pub part4_route: Option<Part4Route>,
}

impl LinkageReport {
    pub fn all_hold(&self) -> bool {
        self.checks().all(|c| c.holds)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        std::iter::once(&self.part1)
            .chain(&self.part2)
            .chain(self.part3.iter().flatten())
            .chain(self.part4.iter().flatten())
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks().filter(|c| !c.holds).collect()
    }
}

fn independent_or_unit<F: Field>(seq: &[AlgElem<F>], m: &FpModule<F>) -> Result<bool> {
    let a = m.algebra();
    if seq.iter().any(|s| a.is_unit(s)) {
        // every coordinate lies in J M = M
        return Ok(true);
    }
    Ok(is_independent(seq, m)?.independent)
}

/// Checks every conclusion of the linkage theorem for `x = uW` on `M`.
pub fn verify_liaison<F: Field>(m: &FpModule<F>, t: &TransitionMatrix<F>) -> Result<LinkageReport> {
    let a = m.algebra();
    let n = t.size();
    if !independent_or_unit(&t.x, m)? {
        return Err(Error::PreconditionFailed("x is not M-independent".into()));
    }
    let jx = a.ideal_from(&t.x);
    let ju = a.ideal_from(&t.u);
    let jd = a.ideal_sum(&jx, &a.ideal_from(std::slice::from_ref(&t.delta)))?;
    let jxm = m.ideal_times(&jx)?;
    let jum = m.ideal_times(&ju)?;
    let jdm = m.ideal_times(&jd)?;

    let part1 = Check::truth("u is M-independent", independent_or_unit(&t.u, m)?);
    let part2 = vec![
        Check::submodules(
            "(J_x M : J_u) = (J_x + (Δ)) M",
            m,
            &m.colon_submodule(&jxm, &ju)?,
            &jdm,
        ),
        Check::submodules(
            "(J_x M : J_x + (Δ)) = J_u M",
            m,
            &m.colon_submodule(&jxm, &jd)?,
            &jum,
        ),
        Check::ideals(
            "Ann(J_u M / J_x M) = Ann(M / (J_x + (Δ)) M)",
            a,
            &m.annihilator_of_subquotient(&jum, &jxm)?,
            &m.annihilator_of_quotient(&jdm)?,
        ),
        Check::ideals(
            "Ann((J_x + (Δ)) M / J_x M) = Ann(M / J_u M)",
            a,
            &m.annihilator_of_subquotient(&jdm, &jxm)?,
            &m.annihilator_of_quotient(&jum)?,
        ),
    ];

    let faithful = m.annihilator_of_quotient(&jxm)? == jx;
    let part3 = if faithful {
        let free = FpModule::free(a.clone(), 1);
        let fit = fitting_ideal(a, &t.x, &t.u)?;
        let abar = fit.quotient.clone();
        let dbar = abar.ideal_from(&[fit.projection.apply(&t.delta)]);
        Some(vec![
            Check::truth("x is A-independent", independent_or_unit(&t.x, &free)?),
            Check::truth("u is A-independent", independent_or_unit(&t.u, &free)?),
            Check::ideals("(J_x : J_u) = J_x + (Δ)", a, &a.colon_ideal(&jx, &ju)?, &jd),
            Check::ideals(
                "J_x + (Δ) = Ann(M / (J_x + (Δ)) M)",
                a,
                &jd,
                &m.annihilator_of_quotient(&jdm)?,
            ),
            Check::ideals("(J_x : J_x + (Δ)) = J_u", a, &a.colon_ideal(&jx, &jd)?, &ju),
            Check::ideals(
                "J_u = Ann(M / J_u M)",
                a,
                &ju,
                &m.annihilator_of_quotient(&jum)?,
            ),
            Check::ideals("Fit(J_u / J_x) = (Δ̄) over A/J_x", &abar, &fit.ideal, &dbar),
        ])
    } else {
        None
    };

    // in an Artinian local ring, J_u ⊆ m_A, J_u nilpotent and J_u ≠ A coincide
    let local = ju.is_subset_of(&a.max_ideal());
    let (part4, part4_route) = if !m.is_zero() && local {
        let checks = vec![
            Check {
                name: "Δ ∉ J_x".into(),
                holds: !jx.contains(&t.delta),
                witness: None,
            },
            Check::truth("μ(J_u) = n", a.mu_ideal(&ju) == n),
            Check::truth("μ(J_x) = n", a.mu_ideal(&jx) == n),
        ];
        let route = Part4Route {
            nilpotent: true,
            jacobson: true,
            faithful,
        };
        (Some(checks), Some(route))
    } else {
        (None, None)
    };

    Ok(LinkageReport {
        n,
        delta: a.format(&t.delta),
        w: t.w
            .iter()
            .map(|r| r.iter().map(|e| a.format(e)).collect())
            .collect(),
        part1,
        part2,
        part3,
        part4,
        part4_route,
    })
}

fn quotient_by<F: Field>(
    a: &Arc<LocalAlgebra<F>>,
    jx: &IdealSpan<F>,
) -> Result<(Arc<LocalAlgebra<F>>, AlgebraMorphism<F>)> {
    let abar = a.quotient(jx)?;
    let pi = AlgebraMorphism::projection(a.clone(), abar.clone())?;
    Ok((abar, pi))
}

pub struct FittingIdeal<F: Field> {
    pub quotient: Arc<LocalAlgebra<F>>,
    pub projection: AlgebraMorphism<F>,
    /// An ideal of `quotient`.
    pub ideal: IdealSpan<F>,
}

/// `Fit_0` of `J_u / J_x` over `A/J_x`: the ideal of `n x n` minors of a
/// generating set of syzygies of `ū`.
pub fn fitting_ideal<F: Field>(
    a: &Arc<LocalAlgebra<F>>,
    x: &[AlgElem<F>],
    u: &[AlgElem<F>],
) -> Result<FittingIdeal<F>> {
    let jx = a.ideal_from(x);
    if !jx.is_subset_of(&a.ideal_from(u)) {
        return Err(Error::NotContained);
    }
    let (abar, pi) = quotient_by(a, &jx)?;
    let ubar: Vec<_> = u.iter().map(|e| pi.apply(e)).collect();
    let n = ubar.len();
    let free = FpModule::free(abar.clone(), n);
    let syz = free.submodule_from_space(Subspace::kernel_of(&combination_map(&abar, &ubar)))?;
    let gens = free.submodule_generators(&syz)?;
    let g = gens.len();
    let subsets = binomial(g, n);
    if subsets > MAX_FITTING_SUBSETS {
        return Err(Error::cap("Fitting minors", MAX_FITTING_SUBSETS, subsets));
    }
    let d = abar.dim();
    let mut minors = Vec::new();
    for cols in tuples(g, n) {
        // rows are the n components, columns the chosen syzygies
        let mat: Vec<Vec<AlgElem<F>>> = (0..n)
            .map(|i| {
                cols.iter()
                    .map(|&c| gens[c][i * d..(i + 1) * d].to_vec())
                    .collect()
            })
            .collect();
        minors.push(abar.det(&mat));
    }
    Ok(FittingIdeal {
        ideal: abar.ideal_from(&minors),
        quotient: abar,
        projection: pi,
    })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
