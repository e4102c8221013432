//! Finitely generated modules over a [`LocalAlgebra`], stored as a
//! `k`-vector space with one action matrix per algebra variable.
//!
//! The action of an arbitrary element is assembled from the variable
//! matrices along the parent links of the algebra's monomial basis.

mod presentation;
mod submodule;

pub use presentation::{PresentationData, TorsionRatio};
pub use submodule::Submodule;

use std::sync::{Arc, OnceLock};

use crate::algebra::{fresh_id, AlgElem, AlgebraMorphism, IdealSpan, LocalAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, unit_vec, zero_vec, EchelonBuilder, Matrix, Subspace, Vector};

/// How to print module elements as tuples of polynomials.
#[derive(Clone, Debug)]
pub struct Lift<F: Field> {
    /// Algebra whose basis indexes the tuple entries.
    pub algebra: Arc<LocalAlgebra<F>>,
    pub rank: usize,
    /// `(rank * dim) x dim M` matrix sending module coordinates to a
    /// representative in the free module.
    pub matrix: Matrix<F>,
}

#[derive(Clone, Debug)]
pub struct FpModule<F: Field> {
    id: u64,
    algebra: Arc<LocalAlgebra<F>>,
    dim: usize,
    vars: Vec<Matrix<F>>,
    lift: Option<Lift<F>>,
    label: String,
    /// Action of every algebra basis element, filled on first use.
    table: OnceLock<Arc<Vec<Matrix<F>>>>,
}

impl<F: Field> FpModule<F> {
    fn raw(
        algebra: Arc<LocalAlgebra<F>>,
        dim: usize,
        vars: Vec<Matrix<F>>,
        lift: Option<Lift<F>>,
        label: String,
    ) -> Self {
        FpModule {
            id: fresh_id(),
            algebra,
            dim,
            vars,
            lift,
            label,
            table: OnceLock::new(),
        }
    }

    /// Module given by the action matrices of the variables; checks that
    /// they commute, are nilpotent and satisfy the relations of the algebra.
    pub fn from_generator_actions(
        algebra: Arc<LocalAlgebra<F>>,
        dim: usize,
        vars: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if vars.len() != algebra.nvars() {
            return Err(Error::VariableMismatch {
                expected: algebra.nvars(),
                found: vars.len(),
            });
        }
        for (i, x) in vars.iter().enumerate() {
            if x.rows() != dim || x.cols() != dim {
                return Err(Error::validation(
                    format!("/actions/{i}"),
                    format!("expected a {dim}x{dim} matrix"),
                ));
            }
        }
        for i in 0..vars.len() {
            for j in 0..i {
                if vars[i].mul(&vars[j]) != vars[j].mul(&vars[i]) {
                    return Err(Error::RelationViolated(format!(
                        "actions of `{}` and `{}` do not commute",
                        algebra.var_names()[i],
                        algebra.var_names()[j]
                    )));
                }
            }
            let mut p = vars[i].clone();
            let mut e = 1usize;
            while e < dim.max(1) {
                p = p.mul(&p);
                e *= 2;
            }
            if !p.is_zero() {
                return Err(Error::NotLocal(format!(
                    "action of `{}` is not nilpotent",
                    algebra.var_names()[i]
                )));
            }
        }
        let m = FpModule::raw(algebra.clone(), dim, vars, None, "module".into());
        // Every relation commutes with the action, so its kernel is a
        // submodule; by nilpotency it suffices to test on generators.
        let gens = m.generators();
        let pres = algebra.presentation();
        for g in algebra.groebner_basis().iter().chain(&pres.relations) {
            let value = algebra.from_poly(g)?;
            debug_assert!(algebra.is_zero(&value));
            for v in &gens {
                let w = m.eval_poly(g, v);
                if !crate::linalg::is_zero_vec(algebra.field(), &w) {
                    return Err(Error::RelationViolated(format!(
                        "`{}` does not act as zero",
                        g.format(algebra.field(), &pres.vars, pres.order)
                    )));
                }
            }
        }
        Ok(m)
    }

    /// `A^r`.
    pub fn free(algebra: Arc<LocalAlgebra<F>>, rank: usize) -> Self {
        let f = algebra.field().clone();
        let n = algebra.dim();
        let vars = algebra
            .vars()
            .iter()
            .map(|x| {
                let m = algebra.mul_matrix(x);
                Matrix::block_diag(&f, &vec![&m; rank])
            })
            .collect();
        let lift = Lift {
            algebra: algebra.clone(),
            rank,
            matrix: Matrix::identity(&f, rank * n),
        };
        FpModule::raw(algebra, rank * n, vars, Some(lift), format!("A^{rank}"))
    }

    /// `A^r / N` where `N` is generated by `columns`, each a vector of `r`
    /// algebra elements.
    pub fn from_cokernel(
        algebra: Arc<LocalAlgebra<F>>,
        rank: usize,
        columns: &[Vec<AlgElem<F>>],
    ) -> Result<Self> {
        let free = FpModule::free(algebra.clone(), rank);
        let vecs = columns
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if c.len() != rank {
                    return Err(Error::validation(
                        format!("/columns/{j}"),
                        format!("expected {rank} entries, found {}", c.len()),
                    ));
                }
                Ok(free.from_components(c))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = free.submodule_generated(&vecs);
        let mut q = free.quotient(&n)?;
        q.label = "cokernel".into();
        Ok(q)
    }

    /// `A / I`.
    pub fn quotient_ring(algebra: Arc<LocalAlgebra<F>>, ideal: &IdealSpan<F>) -> Result<Self> {
        algebra.check_ideal(ideal)?;
        let cols: Vec<Vec<AlgElem<F>>> = algebra
            .minimal_generators(ideal)
            .into_iter()
            .map(|g| vec![g])
            .collect();
        Self::from_cokernel(algebra, 1, &cols)
    }

    /// The ideal `I` as an `A`-module.
    pub fn from_ideal(algebra: Arc<LocalAlgebra<F>>, ideal: &IdealSpan<F>) -> Result<Self> {
        algebra.check_ideal(ideal)?;
        let a = FpModule::free(algebra, 1);
        let n = a.submodule_from_space(ideal.space().clone())?;
        Ok(a.submodule_as_module(&n))
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn algebra(&self) -> &Arc<LocalAlgebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn var_actions(&self) -> &[Matrix<F>] {
        &self.vars
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
    pub fn lift(&self) -> Option<&Lift<F>> {
        self.lift.as_ref()
    }

    pub fn zero_vec(&self) -> Vector<F> {
        zero_vec(self.field(), self.dim)
    }

    /// Element of a free module `A^r` from its components.
    pub fn from_components(&self, comps: &[AlgElem<F>]) -> Vector<F> {
        comps.iter().flat_map(|c| c.iter().cloned()).collect()
    }

    /// `basis[i] * v` for every basis monomial of the algebra.
    pub fn orbit(&self, v: &[F::Elem]) -> Vec<Vector<F>> {
        let a = &self.algebra;
        let mut out: Vec<Vector<F>> = Vec::with_capacity(a.dim());
        for i in 0..a.dim() {
            let w = match a.basis_parent(i) {
                None => v.to_vec(),
                Some((x, k)) => self.vars[x].mul_vec(&out[k]),
            };
            out.push(w);
        }
        out
    }

    /// `a * v`.
    pub fn act(&self, a: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = self.field();
        let alg = &self.algebra;
        let mut cache: Vec<Option<Vector<F>>> = vec![None; alg.dim()];
        let mut out = self.zero_vec();
        for (i, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let w = self.orbit_entry(i, v, &mut cache);
            axpy(f, &mut out, c, &w);
        }
        out
    }

    fn orbit_entry(
        &self,
        i: usize,
        v: &[F::Elem],
        cache: &mut Vec<Option<Vector<F>>>,
    ) -> Vector<F> {
        if let Some(w) = &cache[i] {
            return w.clone();
        }
        let w = match self.algebra.basis_parent(i) {
            None => v.to_vec(),
            Some((x, k)) => {
                let prev = self.orbit_entry(k, v, cache);
                self.vars[x].mul_vec(&prev)
            }
        };
        cache[i] = Some(w.clone());
        w
    }

    /// Matrices of the action of `basis[i]` for every `i`.
    pub fn action_table(&self) -> &[Matrix<F>] {
        self.table.get_or_init(|| {
            let alg = &self.algebra;
            let mut out: Vec<Matrix<F>> = Vec::with_capacity(alg.dim());
            for i in 0..alg.dim() {
                let m = match alg.basis_parent(i) {
                    None => Matrix::identity(self.field(), self.dim),
                    Some((x, k)) => self.vars[x].mul(&out[k]),
                };
                out.push(m);
            }
            Arc::new(out)
        })
    }

    /// Matrix of multiplication by `a` on the module.
    pub fn action_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let table = self.action_table();
        let mut out = Matrix::zero(f, self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                out.add_scaled(c, &table[i]);
            }
        }
        out
    }

    /// Applies a polynomial in the algebra's variables to `v`.
    pub fn eval_poly(&self, p: &crate::poly::Poly<F>, v: &[F::Elem]) -> Vector<F> {
        let f = self.field();
        let mut out = self.zero_vec();
        for (m, c) in p.terms() {
            let mut w = v.to_vec();
            for (x, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    w = self.vars[x].mul_vec(&w);
                }
            }
            axpy(f, &mut out, c, &w);
        }
        out
    }

    /// `m_A M`.
    pub fn max_ideal_times(&self) -> Subspace<F> {
        let f = self.field();
        Subspace::span(
            f,
            self.dim,
            self.vars
                .iter()
                .flat_map(|x| (0..self.dim).map(move |j| x.column(j))),
        )
    }

    /// `mu(M) = dim M / m_A M`.
    pub fn mu(&self) -> usize {
        self.dim - self.max_ideal_times().dim()
    }

    /// Minimal generators: unit vectors on the coordinates complementary to
    /// the echelon pivots of `m_A M`.
    pub fn generators(&self) -> Vec<Vector<F>> {
        let f = self.field();
        self.max_ideal_times()
            .complement_coords()
            .into_iter()
            .map(|c| unit_vec(f, self.dim, c))
            .collect()
    }

    /// Smallest submodule containing `vecs`.
    pub fn submodule_generated(&self, vecs: &[Vector<F>]) -> Submodule<F> {
        let mut b = EchelonBuilder::new(self.field(), self.dim);
        let mut queue: Vec<Vector<F>> = vecs.to_vec();
        while let Some(v) = queue.pop() {
            if b.insert(&v) {
                for x in &self.vars {
                    queue.push(x.mul_vec(&v));
                }
            }
        }
        Submodule::new(self.id, b.finish())
    }

    pub fn submodule_from_space(&self, space: Subspace<F>) -> Result<Submodule<F>> {
        for w in space.basis() {
            for x in &self.vars {
                if !space.contains(&x.mul_vec(w)) {
                    return Err(Error::NotSubmodule(
                        "subspace is not stable under the action".into(),
                    ));
                }
            }
        }
        Ok(Submodule::new(self.id, space))
    }

    pub fn zero_submodule(&self) -> Submodule<F> {
        Submodule::new(self.id, Subspace::zero(self.field(), self.dim))
    }

    pub fn whole(&self) -> Submodule<F> {
        Submodule::new(self.id, Subspace::full(self.field(), self.dim))
    }

    /// `m_A M` as a submodule.
    pub fn max_ideal_submodule(&self) -> Submodule<F> {
        Submodule::new(self.id, self.max_ideal_times())
    }

    /// `M / N` together with the projection matrix.
    pub fn quotient_with_projection(&self, n: &Submodule<F>) -> Result<(FpModule<F>, Matrix<F>)> {
        self.check_sub(n)?;
        let f = self.field();
        let comp = n.space().complement_coords();
        let q = comp.len();
        let project = |v: &[F::Elem]| -> Vector<F> {
            let r = n.space().reduce(v);
            comp.iter().map(|&c| r[c].clone()).collect()
        };
        let vars = self
            .vars
            .iter()
            .map(|x| {
                let cols: Vec<Vector<F>> = comp.iter().map(|&c| project(&x.column(c))).collect();
                Matrix::from_columns(f, q, &cols)
            })
            .collect();
        let mut proj = Matrix::zero(f, q, self.dim);
        for j in 0..self.dim {
            let col = project(&unit_vec(f, self.dim, j));
            for (i, a) in col.into_iter().enumerate() {
                proj.set(i, j, a);
            }
        }
        let lift = self.lift.as_ref().map(|l| {
            let mut emb = Matrix::zero(f, self.dim, q);
            for (i, &c) in comp.iter().enumerate() {
                emb.set(c, i, f.one());
            }
            Lift {
                algebra: l.algebra.clone(),
                rank: l.rank,
                matrix: l.matrix.mul(&emb),
            }
        });
        let label = format!("{}/N", self.label);
        Ok((
            FpModule::raw(self.algebra.clone(), q, vars, lift, label),
            proj,
        ))
    }

    pub fn quotient(&self, n: &Submodule<F>) -> Result<FpModule<F>> {
        self.quotient_with_projection(n).map(|(m, _)| m)
    }

    /// `N` as a module in its own right, in the coordinates of its echelon
    /// basis.
    pub fn submodule_as_module(&self, n: &Submodule<F>) -> FpModule<F> {
        let f = self.field();
        let basis = n.space().basis();
        let vars = self
            .vars
            .iter()
            .map(|x| {
                let cols: Vec<Vector<F>> = basis
                    .iter()
                    .map(|b| {
                        n.space()
                            .coordinates(&x.mul_vec(b))
                            .expect("submodule is stable")
                    })
                    .collect();
                Matrix::from_columns(f, basis.len(), &cols)
            })
            .collect();
        let lift = self.lift.as_ref().map(|l| Lift {
            algebra: l.algebra.clone(),
            rank: l.rank,
            matrix: l.matrix.mul(&Matrix::from_columns(f, self.dim, basis)),
        });
        FpModule::raw(
            self.algebra.clone(),
            basis.len(),
            vars,
            lift,
            format!("sub({})", self.label),
        )
    }

    /// `M` viewed over `A` through `phi: A -> B`.
    pub fn restrict_scalars(&self, phi: &AlgebraMorphism<F>) -> Result<FpModule<F>> {
        if phi.target().id() != self.algebra.id() {
            return Err(Error::AlgebraMismatch);
        }
        let vars = phi.images().iter().map(|y| self.action_matrix(y)).collect();
        Ok(FpModule::raw(
            phi.source().clone(),
            self.dim,
            vars,
            self.lift.clone(),
            format!("{} over source", self.label),
        ))
    }

    /// The same vector space over an algebra with the same variables whose
    /// relations hold on `M` (e.g. `A/I` when `IM = 0`).
    pub fn over_algebra(&self, algebra: Arc<LocalAlgebra<F>>) -> Result<FpModule<F>> {
        let mut m = FpModule::from_generator_actions(algebra, self.dim, self.vars.clone())?;
        m.lift = self.lift.clone();
        m.label = self.label.clone();
        Ok(m)
    }

    /// `(M / IM, A / I)`.
    pub fn base_change(&self, ideal: &IdealSpan<F>) -> Result<(Arc<LocalAlgebra<F>>, FpModule<F>)> {
        let abar = self.algebra.quotient(ideal)?;
        let im = self.ideal_times(ideal)?;
        let q = self.quotient(&im)?;
        let vars = q.vars.clone();
        let m = FpModule::raw(
            abar.clone(),
            q.dim,
            vars,
            q.lift.clone(),
            format!("{}/I", self.label),
        );
        Ok((abar, m))
    }

    pub fn direct_sum(parts: &[&FpModule<F>]) -> Result<FpModule<F>> {
        let Some(first) = parts.first() else {
            return Err(Error::PreconditionFailed("empty direct sum".into()));
        };
        let alg = first.algebra.clone();
        if parts.iter().any(|p| p.algebra.id() != alg.id()) {
            return Err(Error::AlgebraMismatch);
        }
        let f = alg.field().clone();
        let dim = parts.iter().map(|p| p.dim).sum();
        let vars = (0..alg.nvars())
            .map(|x| {
                let blocks: Vec<&Matrix<F>> = parts.iter().map(|p| &p.vars[x]).collect();
                Matrix::block_diag(&f, &blocks)
            })
            .collect();
        let label = parts
            .iter()
            .map(|p| p.label.clone())
            .collect::<Vec<_>>()
            .join(" + ");
        Ok(FpModule::raw(alg, dim, vars, None, label))
    }

    /// `M^k`, the zero module for `k = 0`.
    pub fn power(&self, k: usize) -> FpModule<F> {
        let f = self.field().clone();
        let vars = self
            .vars
            .iter()
            .map(|x| Matrix::block_diag(&f, &vec![x; k]))
            .collect();
        let lift = self.lift.as_ref().map(|l| Lift {
            algebra: l.algebra.clone(),
            rank: l.rank * k,
            matrix: Matrix::block_diag(&f, &vec![&l.matrix; k]),
        });
        FpModule::raw(
            self.algebra.clone(),
            k * self.dim,
            vars,
            lift,
            format!("({})^{k}", self.label),
        )
    }

    /// Human-readable element: a tuple of polynomials when a lift is known,
    /// coordinates otherwise.
    pub fn format_element(&self, v: &[F::Elem]) -> String {
        let f = self.field();
        match &self.lift {
            Some(l) => {
                let w = l.matrix.mul_vec(v);
                let n = l.algebra.dim();
                let parts: Vec<String> = (0..l.rank)
                    .map(|k| l.algebra.format(&w[k * n..(k + 1) * n]))
                    .collect();
                if l.rank == 1 {
                    parts[0].clone()
                } else {
                    format!("({})", parts.join(", "))
                }
            }
            None => format!(
                "[{}]",
                v.iter().map(|a| f.format(a)).collect::<Vec<_>>().join(", ")
            ),
        }
    }

    pub(crate) fn check_sub(&self, n: &Submodule<F>) -> Result<()> {
        if n.module_id() != self.id {
            return Err(Error::OwnerMismatch);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::field::PrimeField;

    fn gf() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn line(n: u32) -> Arc<LocalAlgebra<PrimeField>> {
        AlgebraPresentation::new(&gf(), &["t"], &[], n)
            .unwrap()
            .build()
            .unwrap()
    }

    #[test]
    fn cokernels_of_the_line() {
        let a = line(4);
        let free = FpModule::from_cokernel(a.clone(), 1, &[]).unwrap();
        assert_eq!(free.dim(), 4);
        let t2 = a.parse("t^2").unwrap();
        let m = FpModule::from_cokernel(a.clone(), 1, &[vec![t2]]).unwrap();
        assert_eq!((m.dim(), m.mu()), (2, 1));
        assert_eq!(m.format_element(&m.generators()[0]), "1");
    }

    #[test]
    fn restriction_along_squares() {
        let a = AlgebraPresentation::new(&gf(), &["x", "y", "z"], &[], 2)
            .unwrap()
            .build()
            .unwrap();
        let b = AlgebraPresentation::new(&gf(), &["u", "v"], &[], 4)
            .unwrap()
            .build()
            .unwrap();
        let phi = AlgebraMorphism::parse(a, b.clone(), &["u^2", "u*v", "v^2"]).unwrap();
        let m = FpModule::free(b.clone(), 1).restrict_scalars(&phi).unwrap();
        assert_eq!(m.dim(), 10);
        assert_eq!(m.mu(), 3);
        let two = FpModule::free(b, 2).restrict_scalars(&phi).unwrap();
        assert_eq!(two.dim(), 20);
    }

    #[test]
    fn identity_restriction_keeps_actions() {
        let a = line(5);
        let m = FpModule::from_cokernel(
            a.clone(),
            2,
            &[vec![a.parse("t").unwrap(), a.parse("t^2").unwrap()]],
        )
        .unwrap();
        let r = m.restrict_scalars(&AlgebraMorphism::identity(a)).unwrap();
        assert_eq!(r.var_actions(), m.var_actions());
    }

    #[test]
    fn generator_actions_are_validated() {
        let a = line(3);
        let f = gf();
        let nil = Matrix::from_rows(&f, 2, vec![vec![0, 0], vec![1, 0]]);
        assert!(FpModule::from_generator_actions(a.clone(), 2, vec![nil]).is_ok());
        let not_nil = Matrix::identity(&f, 2);
        assert!(FpModule::from_generator_actions(a.clone(), 2, vec![not_nil]).is_err());
        // t^2 = 0 fails on k[t]/(t^2)-modules where t acts with t^2 != 0
        let b = line(2);
        let j3 = Matrix::from_rows(&f, 3, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        assert!(matches!(
            FpModule::from_generator_actions(b, 3, vec![j3]),
            Err(Error::RelationViolated(_))
        ));
    }

    #[test]
    fn action_matrix_matches_act() {
        let a = AlgebraPresentation::new(&gf(), &["x", "y"], &["x^2 - y^3"], 5)
            .unwrap()
            .build()
            .unwrap();
        let m = FpModule::from_cokernel(
            a.clone(),
            2,
            &[vec![a.parse("x").unwrap(), a.parse("y^2").unwrap()]],
        )
        .unwrap();
        let e = a.parse("3 + x*y - 2*y^2").unwrap();
        let mat = m.action_matrix(&e);
        for g in m.generators() {
            assert_eq!(mat.mul_vec(&g), m.act(&e, &g));
        }
        let orbit = m.orbit(&m.generators()[0]);
        assert_eq!(orbit.len(), a.dim());
    }

    #[test]
    fn quotient_dimensions() {
        let a = line(4);
        let m = FpModule::free(a.clone(), 1);
        assert_eq!(m.quotient(&m.zero_submodule()).unwrap().dim(), 4);
        assert_eq!(m.quotient(&m.whole()).unwrap().dim(), 0);
        let n = m.submodule_generated(&[a.parse("t^2").unwrap()]);
        assert_eq!(m.quotient(&n).unwrap().dim(), 2);
    }
}
