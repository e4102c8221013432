//! Finite-dimensional local algebras `k[x]/(relations + (x)^d)`.
//!
//! Elements are dense coordinate vectors over the standard-monomial basis,
//! which is sorted by degree, so `basis[0] = 1` and the maximal ideal is the
//! span of the remaining coordinates.

mod ci;
mod det;
mod ideal;
mod morphism;

pub use ci::{defining_ideal_mu, is_complete_intersection};
pub use ideal::IdealSpan;
pub use morphism::AlgebraMorphism;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, zero_vec, Matrix, Subspace, Vector};
use crate::poly::{buchberger, normal_form, parse_poly, quotient_monomial_basis};
use crate::poly::{Monomial, MonomialOrder, Poly};

/// Coordinates of an algebra element.
pub type AlgElem<F> = Vector<F>;

pub(crate) type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

pub const DEFAULT_MAX_DIM: usize = 512;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Generators and relations of a local algebra. The power `(vars)^truncation`
/// is always part of the ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation<F: Field> {
    pub field: F,
    pub vars: Vec<String>,
    pub relations: Vec<Poly<F>>,
    pub truncation: u32,
    pub order: MonomialOrder,
}

impl<F: Field> AlgebraPresentation<F> {
    pub fn new(field: &F, vars: &[&str], relations: &[&str], truncation: u32) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let relations = relations
            .iter()
            .map(|r| parse_poly(field, &vars, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraPresentation {
            field: field.clone(),
            vars,
            relations,
            truncation,
            order: MonomialOrder::Degrevlex,
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn build(&self) -> Result<Arc<LocalAlgebra<F>>> {
        LocalAlgebra::build(self, DEFAULT_MAX_DIM).map(Arc::new)
    }
}

#[derive(Debug)]
pub struct LocalAlgebra<F: Field> {
    id: u64,
    pres: AlgebraPresentation<F>,
    gb: Vec<Poly<F>>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `(v, k)` with `basis[i] = x_v * basis[k]`.
    parent: Vec<Option<(usize, usize)>>,
    vars: Vec<AlgElem<F>>,
    /// `table[i][j] = basis[i] * basis[j]`.
    table: Vec<Vec<SparseVec<F>>>,
    nilpotency: usize,
}

fn to_sparse<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, a)| !field.is_zero(a))
        .map(|(i, a)| (i, a.clone()))
        .collect()
}

impl<F: Field> LocalAlgebra<F> {
    pub fn build(pres: &AlgebraPresentation<F>, max_dim: usize) -> Result<Self> {
        let field = &pres.field;
        let n = pres.vars.len();
        if pres.truncation == 0 {
            return Err(Error::validation(
                "/truncation",
                "truncation degree must be at least 1",
            ));
        }
        for r in &pres.relations {
            if r.nvars() != n {
                return Err(Error::VariableMismatch {
                    expected: n,
                    found: r.nvars(),
                });
            }
            if !field.is_zero(&r.constant_term(field)) {
                return Err(Error::NotLocal(format!(
                    "relation `{}` has a nonzero constant term",
                    r.format(field, &pres.vars, pres.order)
                )));
            }
        }
        let mut gens: Vec<Poly<F>> = pres.relations.clone();
        gens.extend(
            Monomial::all_of_degree(n, pres.truncation)
                .into_iter()
                .map(|m| Poly::term(field, field.one(), m)),
        );
        let gb = buchberger(field, &gens, pres.order)?;
        let basis = quotient_monomial_basis(&gb, n, pres.order, &pres.vars)?;
        let dim = basis.len();
        if dim > max_dim {
            return Err(Error::cap("algebra dimension", max_dim, dim));
        }
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();

        let coords = |p: &Poly<F>| -> SparseVec<F> {
            let mut v: SparseVec<F> = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
            v.sort_by_key(|(i, _)| *i);
            v
        };
        let mut var_cols: Vec<Vec<SparseVec<F>>> = Vec::with_capacity(n);
        for v in 0..n {
            let xv = Monomial::var(n, v);
            let cols = basis
                .iter()
                .map(|m| {
                    let p = Poly::term(field, field.one(), m.mul(&xv));
                    normal_form(field, &p, &gb, pres.order).map(|r| coords(&r))
                })
                .collect::<Result<Vec<_>>>()?;
            var_cols.push(cols);
        }
        let parent: Vec<Option<(usize, usize)>> = basis
            .iter()
            .map(|m| {
                let v = m.exps().iter().position(|&e| e > 0)?;
                let mut e = m.exps().to_vec();
                e[v] -= 1;
                Some((v, index[&Monomial::new(e)]))
            })
            .collect();

        let apply_var = |v: usize, w: &SparseVec<F>| -> SparseVec<F> {
            let mut out = zero_vec(field, dim);
            for (j, c) in w {
                for (i, a) in &var_cols[v][*j] {
                    field.mul_add_assign(&mut out[*i], c, a);
                }
            }
            to_sparse(field, &out)
        };
        let mut table: Vec<Vec<SparseVec<F>>> = Vec::with_capacity(dim);
        for i in 0..dim {
            let row = match parent[i] {
                None => (0..dim).map(|j| vec![(j, field.one())]).collect(),
                Some((v, k)) => (0..dim).map(|j| apply_var(v, &table[k][j])).collect(),
            };
            table.push(row);
        }
        let vars = (0..n)
            .map(|v| {
                let mut e = zero_vec(field, dim);
                for (i, a) in &var_cols[v][0] {
                    e[*i] = a.clone();
                }
                e
            })
            .collect();

        let mut alg = LocalAlgebra {
            id: fresh_id(),
            pres: pres.clone(),
            gb,
            basis,
            index,
            parent,
            vars,
            table,
            nilpotency: 0,
        };
        alg.check_structure_constants()?;
        alg.nilpotency = alg.compute_nilpotency();
        Ok(alg)
    }

    fn check_structure_constants(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..i {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::PreconditionFailed(format!(
                        "structure constants not commutative at ({i}, {j})"
                    )));
                }
            }
        }
        let assoc = |i: usize, j: usize, k: usize| -> bool {
            let left = self.mul(
                &self.sparse_to_dense(&self.table[i][j]),
                &self.basis_elem(k),
            );
            let right = self.mul(
                &self.basis_elem(i),
                &self.sparse_to_dense(&self.table[j][k]),
            );
            left == right
        };
        let triples: Vec<(usize, usize, usize)> = if dim <= 60 {
            let mut t = Vec::new();
            for i in 1..dim {
                for j in i..dim {
                    for k in 1..dim {
                        t.push((i, j, k));
                    }
                }
            }
            t
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..1000)
                .map(|_| {
                    (
                        rng.gen_range(0..dim),
                        rng.gen_range(0..dim),
                        rng.gen_range(0..dim),
                    )
                })
                .collect()
        };
        for (i, j, k) in triples {
            if !assoc(i, j, k) {
                return Err(Error::PreconditionFailed(format!(
                    "structure constants not associative at ({i}, {j}, {k})"
                )));
            }
        }
        Ok(())
    }

    fn compute_nilpotency(&self) -> usize {
        let mut power = self.maximal_ideal_space();
        let mut n = 1;
        while !power.is_zero() {
            power = self.times_max_ideal(&power);
            n += 1;
        }
        n
    }

    /// `m_A * V` for a subspace `V` of `A`.
    pub(crate) fn times_max_ideal(&self, v: &Subspace<F>) -> Subspace<F> {
        let f = &self.pres.field;
        Subspace::span(
            f,
            self.dim(),
            v.basis()
                .iter()
                .flat_map(|w| self.vars.iter().map(move |x| self.mul(x, w))),
        )
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn field(&self) -> &F {
        &self.pres.field
    }
    pub fn presentation(&self) -> &AlgebraPresentation<F> {
        &self.pres
    }
    pub fn var_names(&self) -> &[String] {
        &self.pres.vars
    }
    pub fn nvars(&self) -> usize {
        self.pres.vars.len()
    }
    pub fn order(&self) -> MonomialOrder {
        self.pres.order
    }
    pub fn groebner_basis(&self) -> &[Poly<F>] {
        &self.gb
    }
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    /// Least `N` with `m_A^N = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }
    pub fn basis_parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }
    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
    pub fn edim(&self) -> usize {
        let m = self.maximal_ideal_space();
        m.dim() - self.times_max_ideal(&m).dim()
    }

    pub fn zero(&self) -> AlgElem<F> {
        zero_vec(self.field(), self.dim())
    }
    pub fn one(&self) -> AlgElem<F> {
        self.basis_elem(0)
    }
    pub fn basis_elem(&self, i: usize) -> AlgElem<F> {
        let mut v = self.zero();
        v[i] = self.field().one();
        v
    }
    pub fn var(&self, i: usize) -> AlgElem<F> {
        self.vars[i].clone()
    }
    pub fn vars(&self) -> &[AlgElem<F>] {
        &self.vars
    }
    pub fn scalar(&self, c: F::Elem) -> AlgElem<F> {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    fn sparse_to_dense(&self, s: &SparseVec<F>) -> AlgElem<F> {
        let mut v = self.zero();
        for (i, a) in s {
            v[*i] = a.clone();
        }
        v
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> AlgElem<F> {
        crate::linalg::add_vec(self.field(), a, b)
    }
    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> AlgElem<F> {
        crate::linalg::sub_vec(self.field(), a, b)
    }
    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> AlgElem<F> {
        crate::linalg::scale_vec(self.field(), c, a)
    }
    pub fn neg(&self, a: &[F::Elem]) -> AlgElem<F> {
        a.iter().map(|x| self.field().neg(x)).collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> AlgElem<F> {
        let f = self.field();
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (k, t) in &self.table[i][j] {
                    f.mul_add_assign(&mut out[*k], &c, t);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[F::Elem], e: u32) -> AlgElem<F> {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Matrix of multiplication by `a`.
    pub fn mul_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let dim = self.dim();
        let mut m = Matrix::zero(f, dim, dim);
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for j in 0..dim {
                for (k, t) in &self.table[i][j] {
                    let mut cur = m.get(*k, j).clone();
                    f.mul_add_assign(&mut cur, ai, t);
                    m.set(*k, j, cur);
                }
            }
        }
        m
    }

    pub fn is_unit(&self, a: &[F::Elem]) -> bool {
        !self.field().is_zero(&a[0])
    }

    pub fn in_max_ideal(&self, a: &[F::Elem]) -> bool {
        self.field().is_zero(&a[0])
    }

    pub fn is_zero(&self, a: &[F::Elem]) -> bool {
        crate::linalg::is_zero_vec(self.field(), a)
    }

    /// Inverse of a unit, via the finite geometric series of the nilpotent
    /// part.
    pub fn inverse(&self, a: &[F::Elem]) -> Result<AlgElem<F>> {
        let f = self.field();
        let c = f.inv(&a[0])?;
        let u = self.scale(&c, a);
        let nil = self.sub(&self.one(), &u);
        let mut term = self.one();
        let mut sum = self.one();
        for _ in 1..self.nilpotency.max(1) {
            term = self.mul(&term, &nil);
            sum = self.add(&sum, &term);
        }
        Ok(self.scale(&c, &sum))
    }

    pub fn from_poly(&self, p: &Poly<F>) -> Result<AlgElem<F>> {
        let r = normal_form(self.field(), p, &self.gb, self.pres.order)?;
        let mut v = self.zero();
        for (m, c) in r.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    pub fn parse(&self, src: &str) -> Result<AlgElem<F>> {
        let p = parse_poly(self.field(), &self.pres.vars, src)?;
        self.from_poly(&p)
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        let f = self.field();
        Poly::from_terms(
            f,
            self.nvars(),
            a.iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(i, c)| (self.basis[i].clone(), c.clone())),
        )
    }

    pub fn format(&self, a: &[F::Elem]) -> String {
        self.to_poly(a)
            .format(self.field(), &self.pres.vars, self.pres.order)
    }

    /// Values of all basis monomials at `images` (elements of `target`),
    /// following the parent links.
    pub(crate) fn basis_values<G>(&self, images: &[G], mul: impl Fn(&G, &G) -> G, one: G) -> Vec<G>
    where
        G: Clone,
    {
        let mut out: Vec<G> = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let v = match self.parent[i] {
                None => one.clone(),
                Some((v, k)) => mul(&images[v], &out[k]),
            };
            out.push(v);
        }
        out
    }

    /// Evaluates `p` (in this algebra's variables) at elements of `target`.
    pub fn eval_poly_in<G: Field>(
        p: &Poly<G>,
        target: &LocalAlgebra<G>,
        images: &[AlgElem<G>],
    ) -> AlgElem<G> {
        let f = target.field();
        let mut cache: HashMap<Monomial, AlgElem<G>> = HashMap::new();
        let mut out = target.zero();
        for (m, c) in p.terms() {
            let val = monomial_value(target, images, m, &mut cache);
            axpy(f, &mut out, c, &val);
        }
        out
    }

    pub fn maximal_ideal_space(&self) -> Subspace<F> {
        let f = self.field();
        Subspace::span(f, self.dim(), (1..self.dim()).map(|i| self.basis_elem(i)))
    }

    /// `A/I` presented by adjoining generators of `I` to the relations.
    pub fn quotient(&self, ideal: &IdealSpan<F>) -> Result<Arc<LocalAlgebra<F>>> {
        self.check_ideal(ideal)?;
        let mut pres = self.pres.clone();
        for g in self.minimal_generators(ideal) {
            pres.relations.push(self.to_poly(&g));
        }
        Ok(Arc::new(LocalAlgebra::build(&pres, usize::MAX)?))
    }

    pub(crate) fn check_ideal(&self, ideal: &IdealSpan<F>) -> Result<()> {
        if ideal.algebra_id() != self.id {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

fn monomial_value<G: Field>(
    target: &LocalAlgebra<G>,
    images: &[AlgElem<G>],
    m: &Monomial,
    cache: &mut HashMap<Monomial, AlgElem<G>>,
) -> AlgElem<G> {
    if let Some(v) = cache.get(m) {
        return v.clone();
    }
    let val = match m.exps().iter().position(|&e| e > 0) {
        None => target.one(),
        Some(v) => {
            let mut e = m.exps().to_vec();
            e[v] -= 1;
            let rest = monomial_value(target, images, &Monomial::new(e), cache);
            target.mul(&images[v], &rest)
        }
    };
    cache.insert(m.clone(), val.clone());
    val
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    pub(crate) fn gf101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn alg(vars: &[&str], rels: &[&str], d: u32) -> Arc<LocalAlgebra<PrimeField>> {
        AlgebraPresentation::new(&gf101(), vars, rels, d)
            .unwrap()
            .build()
            .unwrap()
    }

    #[test]
    fn truncated_polynomial_ring() {
        let a = alg(&["x"], &[], 8);
        assert_eq!((a.dim(), a.edim(), a.nilpotency()), (8, 1, 8));
    }

    #[test]
    fn square_zero_in_three_variables() {
        let a = alg(&["x", "y", "z"], &[], 2);
        assert_eq!((a.dim(), a.edim(), a.nilpotency()), (4, 3, 2));
        let names: Vec<String> = a.basis().iter().map(|m| m.format(a.var_names())).collect();
        assert_eq!(names, vec!["1", "x", "y", "z"]);
    }

    #[test]
    fn the_base_field() {
        let a = alg(&[], &[], 1);
        assert_eq!((a.dim(), a.edim(), a.nilpotency()), (1, 0, 1));
    }

    #[test]
    fn edim_examples() {
        assert_eq!(alg(&["x", "y"], &[], 3).edim(), 2);
        assert_eq!(alg(&["u", "v"], &[], 4).edim(), 2);
        assert_eq!(alg(&["x", "y"], &["x - y^2"], 6).edim(), 1);
    }

    #[test]
    fn rejects_units_in_relations() {
        let err = AlgebraPresentation::new(&gf101(), &["x"], &["x - 1"], 3)
            .unwrap()
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::NotLocal(_)));
    }

    #[test]
    fn dimension_cap() {
        let pres = AlgebraPresentation::new(&gf101(), &["x", "y"], &[], 6).unwrap();
        assert!(matches!(
            LocalAlgebra::build(&pres, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn inverse_of_unit() {
        let a = alg(&["x", "y"], &["x^2 - y^3"], 5);
        let u = a.parse("1 + x + 3*y^2").unwrap();
        let inv = a.inverse(&u).unwrap();
        assert_eq!(a.mul(&u, &inv), a.one());
    }

    #[test]
    fn multiplication_follows_relations() {
        let a = alg(&["x", "y"], &["x^2 - y^3"], 5);
        let x = a.var(0);
        let y = a.var(1);
        assert_eq!(a.mul(&x, &x), a.pow(&y, 3));
        assert_eq!(a.format(&a.mul(&x, &y)), "x*y");
        assert_eq!(a.mul_matrix(&x).mul_vec(&y), a.mul(&x, &y));
    }

    #[test]
    fn non_monomial_gb_is_associative_and_commutative() {
        for (rels, d) in [
            (&["x^2 - y*z", "y^2 - x*z"][..], 5),
            (&["x*y - z^2", "x^3"][..], 4),
        ] {
            let a = alg(&["x", "y", "z"], rels, d);
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let (bi, bj) = (a.basis_elem(i), a.basis_elem(j));
                    assert_eq!(a.mul(&bi, &bj), a.mul(&bj, &bi));
                }
            }
            let m = a.maximal_ideal_space();
            let mut p = m.clone();
            for _ in 1..a.nilpotency() - 1 {
                p = a.times_max_ideal(&p);
            }
            assert!(!p.is_zero());
            assert!(a.times_max_ideal(&p).is_zero());
        }
    }
}
