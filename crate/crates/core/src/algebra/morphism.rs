use std::sync::Arc;

use super::{AlgElem, IdealSpan, LocalAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A verified local morphism `A -> B`, given by the images of the variables
/// of `A`.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism<F: Field> {
    source: Arc<LocalAlgebra<F>>,
    target: Arc<LocalAlgebra<F>>,
    images: Vec<AlgElem<F>>,
    matrix: Matrix<F>,
}

impl<F: Field> AlgebraMorphism<F> {
    /// Checks that the images are in `m_B` and satisfy every relation of
    /// `A`, and caches the induced `k`-linear matrix.
    pub fn new(
        source: Arc<LocalAlgebra<F>>,
        target: Arc<LocalAlgebra<F>>,
        images: Vec<AlgElem<F>>,
    ) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::VariableMismatch {
                expected: source.nvars(),
                found: images.len(),
            });
        }
        if source.field() != target.field() {
            return Err(Error::AlgebraMismatch);
        }
        for (name, img) in source.var_names().iter().zip(&images) {
            if img.len() != target.dim() {
                return Err(Error::AlgebraMismatch);
            }
            if !target.in_max_ideal(img) {
                return Err(Error::NotLocal(format!(
                    "image of `{name}` is `{}`, which is a unit",
                    target.format(img)
                )));
            }
        }
        let pres = source.presentation();
        for r in pres.relations.iter().chain(source.groebner_basis()) {
            let v = LocalAlgebra::<F>::eval_poly_in(r, &target, &images);
            if !target.is_zero(&v) {
                return Err(Error::RelationViolated(format!(
                    "`{}` maps to `{}`",
                    r.format(source.field(), &pres.vars, pres.order),
                    target.format(&v)
                )));
            }
        }
        let values = source.basis_values(&images, |a, b| target.mul(a, b), target.one());
        let matrix = Matrix::from_columns(target.field(), target.dim(), &values);
        Ok(AlgebraMorphism {
            source,
            target,
            images,
            matrix,
        })
    }

    pub fn parse(
        source: Arc<LocalAlgebra<F>>,
        target: Arc<LocalAlgebra<F>>,
        images: &[&str],
    ) -> Result<Self> {
        let imgs = images
            .iter()
            .map(|s| target.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, imgs)
    }

    pub fn identity(a: Arc<LocalAlgebra<F>>) -> Self {
        let images = a.vars().to_vec();
        Self::new(a.clone(), a, images).expect("identity is a local morphism")
    }

    /// The projection `A -> A/I` onto a quotient built by [`LocalAlgebra::quotient`].
    pub fn projection(a: Arc<LocalAlgebra<F>>, quotient: Arc<LocalAlgebra<F>>) -> Result<Self> {
        let images = quotient.vars().to_vec();
        Self::new(a, quotient, images)
    }

    pub fn source(&self) -> &Arc<LocalAlgebra<F>> {
        &self.source
    }
    pub fn target(&self) -> &Arc<LocalAlgebra<F>> {
        &self.target
    }
    pub fn images(&self) -> &[AlgElem<F>] {
        &self.images
    }
    /// `dim B x dim A` matrix of the underlying linear map.
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, a: &[F::Elem]) -> AlgElem<F> {
        self.matrix.mul_vec(a)
    }

    /// The ideal `I B` of the target.
    pub fn extend_ideal(&self, i: &IdealSpan<F>) -> Result<IdealSpan<F>> {
        let gens: Vec<AlgElem<F>> = self
            .source
            .minimal_generators(i)
            .iter()
            .map(|g| self.apply(g))
            .collect();
        self.source.check_ideal(i)?;
        Ok(self.target.ideal_from(&gens))
    }

    pub fn compose(&self, after: &AlgebraMorphism<F>) -> Result<AlgebraMorphism<F>> {
        if after.source.id() != self.target.id() {
            return Err(Error::AlgebraMismatch);
        }
        let images = self.images.iter().map(|x| after.apply(x)).collect();
        AlgebraMorphism::new(self.source.clone(), after.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::field::PrimeField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn example() -> AlgebraMorphism<PrimeField> {
        let a = AlgebraPresentation::new(&gf(), &["x", "y", "z"], &[], 2)
            .unwrap()
            .build()
            .unwrap();
        let b = AlgebraPresentation::new(&gf(), &["u", "v"], &[], 4)
            .unwrap()
            .build()
            .unwrap();
        AlgebraMorphism::parse(a, b, &["u^2", "u*v", "v^2"]).unwrap()
    }

    #[test]
    fn squares_morphism_is_valid() {
        let phi = example();
        assert_eq!(phi.matrix().rows(), 10);
        assert_eq!(phi.matrix().cols(), 4);
    }

    #[test]
    fn identity_and_unit_images() {
        let a = AlgebraPresentation::new(&gf(), &["x"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let id = AlgebraMorphism::identity(a.clone());
        assert_eq!(id.matrix(), &Matrix::identity(a.field(), 3));
        let err = AlgebraMorphism::parse(a.clone(), a, &["1 + x"]).unwrap_err();
        assert!(matches!(err, Error::NotLocal(_)));
    }

    #[test]
    fn violated_relation_is_reported() {
        let a = AlgebraPresentation::new(&gf(), &["x"], &[], 2)
            .unwrap()
            .build()
            .unwrap();
        let b = AlgebraPresentation::new(&gf(), &["u"], &[], 4)
            .unwrap()
            .build()
            .unwrap();
        let err = AlgebraMorphism::parse(a, b, &["u"]).unwrap_err();
        assert_eq!(err, Error::RelationViolated("`x^2` maps to `u^2`".into()));
    }

    #[test]
    fn induced_map_is_multiplicative() {
        let phi = example();
        let (a, b) = (phi.source().clone(), phi.target().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = a.field().clone();
        for _ in 0..50 {
            let p: Vec<u32> = (0..a.dim()).map(|_| f.random(&mut rng)).collect();
            let q: Vec<u32> = (0..a.dim())
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        f.random(&mut rng)
                    } else {
                        0
                    }
                })
                .collect();
            assert_eq!(
                phi.apply(&a.mul(&p, &q)),
                b.mul(&phi.apply(&p), &phi.apply(&q))
            );
        }
    }
}
