use super::FpModule;
use crate::algebra::IdealSpan;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Subspace, Vector};

/// A submodule, stored as the canonical echelon form of its subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule<F: Field> {
    module_id: u64,
    space: Subspace<F>,
}

impl<F: Field> Submodule<F> {
    pub(crate) fn new(module_id: u64, space: Subspace<F>) -> Self {
        Submodule { module_id, space }
    }
    pub fn module_id(&self) -> u64 {
        self.module_id
    }
    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.space.contains(v)
    }
    pub fn is_subset_of(&self, other: &Submodule<F>) -> bool {
        self.module_id == other.module_id && self.space.is_subspace_of(&other.space)
    }
}

impl<F: Field> FpModule<F> {
    pub fn span(&self, elems: &[Vector<F>]) -> Submodule<F> {
        self.submodule_generated(elems)
    }

    pub fn sum(&self, a: &Submodule<F>, b: &Submodule<F>) -> Result<Submodule<F>> {
        self.check_sub(a)?;
        self.check_sub(b)?;
        Ok(Submodule::new(self.id(), a.space.sum(&b.space)))
    }

    pub fn intersect(&self, a: &Submodule<F>, b: &Submodule<F>) -> Result<Submodule<F>> {
        self.check_sub(a)?;
        self.check_sub(b)?;
        Ok(Submodule::new(self.id(), a.space.intersection(&b.space)))
    }

    /// `I N`.
    pub fn ideal_times_sub(&self, ideal: &IdealSpan<F>, n: &Submodule<F>) -> Result<Submodule<F>> {
        self.check_sub(n)?;
        self.algebra().check_ideal(ideal)?;
        let gens = self.algebra().minimal_generators(ideal);
        let mats: Vec<_> = gens.iter().map(|g| self.action_matrix(g)).collect();
        let vecs = n
            .space
            .basis()
            .iter()
            .flat_map(|w| mats.iter().map(move |m| m.mul_vec(w)))
            .collect::<Vec<_>>();
        Ok(Submodule::new(
            self.id(),
            Subspace::span(self.field(), self.dim(), vecs),
        ))
    }

    /// `I M`.
    pub fn ideal_times(&self, ideal: &IdealSpan<F>) -> Result<Submodule<F>> {
        self.ideal_times_sub(ideal, &self.whole())
    }

    /// `(x_1, ..., x_n) N`, computed from the sequence as given.
    pub fn sequence_times_sub(&self, x: &[Vector<F>], n: &Submodule<F>) -> Result<Submodule<F>> {
        self.check_sub(n)?;
        let vecs: Vec<Vector<F>> = x
            .iter()
            .flat_map(|g| {
                let m = self.action_matrix(g);
                n.space
                    .basis()
                    .iter()
                    .map(move |w| m.mul_vec(w))
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(Submodule::new(
            self.id(),
            Subspace::span(self.field(), self.dim(), vecs),
        ))
    }

    /// `(x_1, ..., x_n) M`.
    pub fn sequence_times(&self, x: &[Vector<F>]) -> Submodule<F> {
        self.sequence_times_sub(x, &self.whole())
            .expect("whole module")
    }

    /// `(N :_M I) = {m : x m ∈ N for x in I}`.
    pub fn colon_submodule(&self, n: &Submodule<F>, ideal: &IdealSpan<F>) -> Result<Submodule<F>> {
        self.check_sub(n)?;
        self.algebra().check_ideal(ideal)?;
        let mut acc = Subspace::full(self.field(), self.dim());
        for g in self.algebra().minimal_generators(ideal) {
            acc = acc.intersection(&Subspace::preimage(&self.action_matrix(&g), &n.space));
        }
        Ok(Submodule::new(self.id(), acc))
    }

    /// `Ann_A(M/N) = {a : aM ⊆ N}`.
    pub fn annihilator_of_quotient(&self, n: &Submodule<F>) -> Result<IdealSpan<F>> {
        self.check_sub(n)?;
        let a = self.algebra();
        let f = self.field();
        // a ↦ (a g_k mod N)_k is linear in a; its kernel is the annihilator
        let gens = self.generators();
        let comp = n.space.complement_coords();
        let cols: Vec<Vector<F>> = (0..a.dim())
            .map(|i| {
                let b = a.basis_elem(i);
                gens.iter()
                    .flat_map(|g| {
                        let r = n.space.reduce(&self.act(&b, g));
                        comp.iter().map(move |&c| r[c].clone()).collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        let map = crate::linalg::Matrix::from_columns(f, gens.len() * comp.len(), &cols);
        Ok(a.ideal_from_space(Subspace::kernel_of(&map))
            .expect("annihilator is an ideal"))
    }

    /// `Ann_A(N1/N2) = {a : a N1 ⊆ N2}` for `N2 ⊆ N1`.
    pub fn annihilator_of_subquotient(
        &self,
        n1: &Submodule<F>,
        n2: &Submodule<F>,
    ) -> Result<IdealSpan<F>> {
        self.check_sub(n1)?;
        self.check_sub(n2)?;
        let a = self.algebra();
        let mut acc = Subspace::full(self.field(), a.dim());
        for g in self.submodule_generators(n1)? {
            let cols: Vec<Vector<F>> = (0..a.dim())
                .map(|i| self.act(&a.basis_elem(i), &g))
                .collect();
            let map = crate::linalg::Matrix::from_columns(self.field(), self.dim(), &cols);
            acc = acc.intersection(&Subspace::preimage(&map, &n2.space));
        }
        Ok(a.ideal_from_space(acc).expect("annihilator is an ideal"))
    }

    /// A minimal generating set of `N`: echelon basis vectors of `N` that
    /// are independent modulo `m_A N`.
    pub fn submodule_generators(&self, n: &Submodule<F>) -> Result<Vec<Vector<F>>> {
        let mn = self.ideal_times_sub(&self.algebra().max_ideal(), n)?;
        let mut cur = crate::linalg::EchelonBuilder::from_subspace(&mn.space);
        Ok(n.space
            .basis()
            .iter()
            .filter(|b| cur.insert(b))
            .cloned()
            .collect())
    }

    /// `Ann_A(M)`.
    pub fn annihilator(&self) -> IdealSpan<F> {
        self.annihilator_of_quotient(&self.zero_submodule())
            .expect("zero submodule belongs to the module")
    }

    /// `(0 :_M m_A)`.
    pub fn socle(&self) -> Submodule<F> {
        let m = self.algebra().max_ideal();
        self.colon_submodule(&self.zero_submodule(), &m)
            .expect("own submodule and ideal")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::error::Error;
    use crate::field::PrimeField;
    use crate::linalg::EchelonBuilder;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn socle_of_truncated_line() {
        let a = AlgebraPresentation::new(&gf(), &["t"], &[], 4)
            .unwrap()
            .build()
            .unwrap();
        let m = FpModule::free(a.clone(), 1);
        let s = m.socle();
        assert_eq!(s, m.span(&[a.parse("t^3").unwrap()]));
        assert_eq!(
            m.annihilator_of_quotient(&m.whole()).unwrap(),
            a.unit_ideal()
        );
        assert!(m.annihilator().is_zero());
    }

    #[test]
    fn module_colon_matches_ideal_colon() {
        let a = AlgebraPresentation::new(&gf(), &["t"], &[], 8)
            .unwrap()
            .build()
            .unwrap();
        let m = FpModule::free(a.clone(), 1);
        let t = a.var(0);
        let i3 = a.ideal_from(&[a.pow(&t, 3)]);
        let n = m.ideal_times(&i3).unwrap();
        let c = m.colon_submodule(&n, &a.ideal_from(&[t.clone()])).unwrap();
        let expected = a.colon_ideal(&i3, &a.ideal_from(&[t.clone()])).unwrap();
        assert_eq!(c.space(), expected.space());
        // brute force over the basis of A
        let brute: Vec<_> = (0..8)
            .map(|k| a.basis_elem(k))
            .filter(|b| n.contains(&a.mul(b, &t)))
            .collect();
        assert_eq!(c.space(), &Subspace::span(a.field(), 8, brute));
    }

    #[test]
    fn owners_are_checked() {
        let a = AlgebraPresentation::new(&gf(), &["t"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let m = FpModule::free(a.clone(), 1);
        let other = FpModule::free(a, 1);
        assert_eq!(
            m.sum(&m.whole(), &other.whole()).unwrap_err(),
            Error::OwnerMismatch
        );
        assert!(m.quotient(&other.zero_submodule()).is_err());
    }

    /// Closure oracle: iterate multiplication by every basis monomial until
    /// the span stabilizes.
    #[test]
    fn cokernel_dimension_matches_closure() {
        let f = gf();
        let a = AlgebraPresentation::new(&f, &["x", "y"], &["x^2 - y^3"], 5)
            .unwrap()
            .build()
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let cols: Vec<Vec<Vec<u32>>> = (0..3)
                .map(|_| {
                    (0..2)
                        .map(|_| {
                            let mut v = a.zero();
                            for k in 1..a.dim() {
                                if rng.gen_bool(0.2) {
                                    v[k] = f.random(&mut rng);
                                }
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            let m = FpModule::from_cokernel(a.clone(), 2, &cols).unwrap();
            let free = FpModule::free(a.clone(), 2);
            let mut b = EchelonBuilder::new(&f, 2 * a.dim());
            for c in &cols {
                let v = free.from_components(c);
                for k in 0..a.dim() {
                    b.insert(&free.act(&a.basis_elem(k), &v));
                }
            }
            assert_eq!(m.dim(), 2 * a.dim() - b.dim());
        }
    }
}
