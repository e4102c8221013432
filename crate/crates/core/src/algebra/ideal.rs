use super::{AlgElem, LocalAlgebra};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Subspace;

/// An ideal stored as the echelon form of its underlying subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpan<F: Field> {
    algebra_id: u64,
    space: Subspace<F>,
}

impl<F: Field> IdealSpan<F> {
    pub fn algebra_id(&self) -> u64 {
        self.algebra_id
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
    pub fn contains(&self, a: &[F::Elem]) -> bool {
        self.space.contains(a)
    }
    pub fn is_subset_of(&self, other: &IdealSpan<F>) -> bool {
        self.space.is_subspace_of(&other.space)
    }
}

impl<F: Field> LocalAlgebra<F> {
    /// Wraps a subspace known to be an ideal.
    pub(crate) fn ideal_unchecked(&self, space: Subspace<F>) -> IdealSpan<F> {
        IdealSpan {
            algebra_id: self.id(),
            space,
        }
    }

    /// Interprets a subspace as an ideal, checking closure.
    pub fn ideal_from_space(&self, space: Subspace<F>) -> Option<IdealSpan<F>> {
        let closed = space
            .basis()
            .iter()
            .all(|w| self.vars().iter().all(|x| space.contains(&self.mul(x, w))));
        closed.then(|| self.ideal_unchecked(space))
    }

    pub fn ideal_from(&self, gens: &[AlgElem<F>]) -> IdealSpan<F> {
        let dim = self.dim();
        let vecs = gens.iter().flat_map(|g| {
            let m = self.mul_matrix(g);
            (0..dim).map(move |j| m.column(j))
        });
        self.ideal_unchecked(Subspace::span(self.field(), dim, vecs))
    }

    pub fn zero_ideal(&self) -> IdealSpan<F> {
        self.ideal_unchecked(Subspace::zero(self.field(), self.dim()))
    }

    pub fn unit_ideal(&self) -> IdealSpan<F> {
        self.ideal_unchecked(Subspace::full(self.field(), self.dim()))
    }

    pub fn max_ideal(&self) -> IdealSpan<F> {
        self.ideal_unchecked(self.maximal_ideal_space())
    }

    pub fn ideal_sum(&self, i: &IdealSpan<F>, j: &IdealSpan<F>) -> Result<IdealSpan<F>> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        Ok(self.ideal_unchecked(i.space.sum(&j.space)))
    }

    pub fn ideal_intersection(&self, i: &IdealSpan<F>, j: &IdealSpan<F>) -> Result<IdealSpan<F>> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        Ok(self.ideal_unchecked(i.space.intersection(&j.space)))
    }

    pub fn ideal_product(&self, i: &IdealSpan<F>, j: &IdealSpan<F>) -> Result<IdealSpan<F>> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        let gens = self.minimal_generators(j);
        let vecs = i
            .space
            .basis()
            .iter()
            .flat_map(|a| gens.iter().map(move |g| self.mul(a, g)));
        Ok(self.ideal_unchecked(Subspace::span(self.field(), self.dim(), vecs)))
    }

    pub fn ideal_power(&self, i: &IdealSpan<F>, n: u32) -> Result<IdealSpan<F>> {
        self.check_ideal(i)?;
        let mut out = self.unit_ideal();
        for _ in 0..n {
            out = self.ideal_product(&out, i)?;
        }
        Ok(out)
    }

    /// `(I : J) = {a : aJ ⊆ I}`.
    pub fn colon_ideal(&self, i: &IdealSpan<F>, j: &IdealSpan<F>) -> Result<IdealSpan<F>> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        let mut acc = Subspace::full(self.field(), self.dim());
        for g in self.minimal_generators(j) {
            acc = acc.intersection(&Subspace::preimage(&self.mul_matrix(&g), &i.space));
        }
        Ok(self.ideal_unchecked(acc))
    }

    /// Ideal generated by `x`.
    pub fn ideal_of_sequence(&self, x: &[AlgElem<F>]) -> IdealSpan<F> {
        self.ideal_from(x)
    }

    /// Elements of `I` whose classes form a basis of `I/m_A I`, picked
    /// greedily from the echelon basis of `I`.
    pub fn minimal_generators(&self, i: &IdealSpan<F>) -> Vec<AlgElem<F>> {
        let mut cur = self.times_max_ideal(&i.space);
        let mut out = Vec::new();
        for row in i.space.basis() {
            if !cur.contains(row) {
                out.push(row.clone());
                cur = cur.sum(&Subspace::span(self.field(), self.dim(), vec![row.clone()]));
            }
        }
        out
    }

    pub fn mu_ideal(&self, i: &IdealSpan<F>) -> usize {
        i.dim() - self.times_max_ideal(&i.space).dim()
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::AlgebraPresentation;
    use crate::error::Error;
    use crate::field::{Field, PrimeField};
    use crate::linalg::Subspace;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn colon_in_truncated_line() {
        let a = AlgebraPresentation::new(&gf(101), &["t"], &[], 8)
            .unwrap()
            .build()
            .unwrap();
        let t = a.var(0);
        let i = a.ideal_from(&[a.pow(&t, 3)]);
        let j = a.ideal_from(&[t.clone()]);
        let c = a.colon_ideal(&i, &j).unwrap();
        assert_eq!(c, a.ideal_from(&[a.pow(&t, 2)]));
        // brute force: a*t in (t^3) iff a in (t^2), coordinate by coordinate
        let brute: Vec<_> = (0..8)
            .map(|k| a.basis_elem(k))
            .filter(|b| i.contains(&a.mul(b, &t)))
            .collect();
        assert_eq!(c.space(), &Subspace::span(a.field(), 8, brute));
        assert_eq!(a.colon_ideal(&i, &a.unit_ideal()).unwrap(), i);
        assert_eq!(a.minimal_generators(&i).len(), 1);
    }

    #[test]
    fn power_of_max_ideal_vanishes_at_nilpotency() {
        let a = AlgebraPresentation::new(&gf(101), &["x", "y"], &["x^2 - y^3"], 6)
            .unwrap()
            .build()
            .unwrap();
        let m = a.max_ideal();
        let n = a.nilpotency() as u32;
        assert!(a.ideal_power(&m, n).unwrap().is_zero());
        assert!(!a.ideal_power(&m, n - 1).unwrap().is_zero());
    }

    #[test]
    fn minimal_generators_of_max_ideal() {
        let a = AlgebraPresentation::new(&gf(101), &["x", "y"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let g = a.minimal_generators(&a.max_ideal());
        assert_eq!(g, vec![a.var(0), a.var(1)]);
    }

    #[test]
    fn mismatched_algebras() {
        let a = AlgebraPresentation::new(&gf(5), &["x"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let b = AlgebraPresentation::new(&gf(5), &["x"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(
            a.ideal_sum(&a.max_ideal(), &b.max_ideal()).unwrap_err(),
            Error::AlgebraMismatch
        );
    }

    /// Brute-force generation oracle: `mu` random elements whose classes span
    /// `I/mI` generate `I`; `mu - 1` elements never do.
    #[test]
    fn mu_matches_generation_oracle() {
        let f = gf(5);
        let a = AlgebraPresentation::new(&f, &["x", "y", "z"], &["x*y - z^2"], 4)
            .unwrap()
            .build()
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gens: Vec<_> = ["y", "z", "x^2", "x*z"]
            .iter()
            .map(|s| a.parse(s).unwrap())
            .collect();
        let i = a.ideal_from(&gens);
        let m_i = a.times_max_ideal(i.space());
        let mu = a.mu_ideal(&i);
        assert_eq!(mu, a.minimal_generators(&i).len());
        let random_in = |rng: &mut ChaCha8Rng| -> Vec<u32> {
            let mut v = a.zero();
            for b in i.space().basis() {
                v = a.add(&v, &a.scale(&f.random(rng), b));
            }
            v
        };
        for _ in 0..100 {
            let cand: Vec<Vec<u32>> = (0..mu).map(|_| random_in(&mut rng)).collect();
            let classes = Subspace::span(&f, a.dim(), cand.iter().cloned()).sum(&m_i);
            if classes == *i.space() {
                assert_eq!(a.ideal_from(&cand), i);
            }
            let fewer: Vec<Vec<u32>> = cand[..mu - 1].to_vec();
            assert_ne!(a.ideal_from(&fewer), i);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn ideal_laws(seed in 0u64..10_000) {
            let f = gf(7);
            let a = AlgebraPresentation::new(&f, &["x", "y"], &["x^2 - x*y^2"], 5)
                .unwrap().build().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rand_elem = |rng: &mut ChaCha8Rng| {
                let mut v = a.zero();
                for k in 1..a.dim() {
                    if rng.gen_bool(0.3) { v[k] = f.random(rng); }
                }
                v
            };
            let gi: Vec<_> = (0..2).map(|_| rand_elem(&mut rng)).collect();
            let gj: Vec<_> = (0..2).map(|_| rand_elem(&mut rng)).collect();
            let i = a.ideal_from(&gi);
            let j = a.ideal_from(&gj);
            let c = a.colon_ideal(&i, &j).unwrap();
            prop_assert!(i.is_subset_of(&c));
            prop_assert!(a.ideal_product(&c, &j).unwrap().is_subset_of(&i));
            let mut shuffled = gi.clone();
            shuffled.shuffle(&mut rng);
            prop_assert_eq!(a.ideal_from(&shuffled), i.clone());
            prop_assert_eq!(a.ideal_product(&i, &j).unwrap(), a.ideal_product(&j, &i).unwrap());
        }
    }
}
