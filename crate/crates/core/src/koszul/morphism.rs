use super::{ChainComplex, KoszulComplex, KoszulWithCoefficients};
use crate::algebra::AlgElem;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, zero_vec, Vector};

/// A morphism from a Koszul complex `K(x)` into a chain complex, raising
/// degrees by `shift`; `images[l][I]` is the image of `e_I` in degree
/// `l + shift` of the target.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMorphism<F: Field> {
    pub shift: usize,
    pub images: Vec<Vec<Vector<F>>>,
}

impl<F: Field> ComplexMorphism<F> {
    pub fn zero(source: &KoszulComplex<F>, target: &ChainComplex<F>, shift: usize) -> Self {
        let f = source.algebra().field();
        let images = (0..=source.len())
            .map(|l| vec![zero_vec(f, target.dim_at(l + shift)); source.rank(l)])
            .collect();
        ComplexMorphism { shift, images }
    }

    /// `phi(d e_I)` for `e_I` in degree `l >= 1` of the source.
    pub fn after_boundary(
        &self,
        source: &KoszulComplex<F>,
        target: &ChainComplex<F>,
        l: usize,
        col: usize,
    ) -> Vector<F> {
        let f = source.algebra().field();
        let deg = l - 1 + self.shift;
        let mut out = zero_vec(f, target.dim_at(deg));
        for t in source.boundary(l, col) {
            let w = target.act_at(deg, &source.sequence()[t.var], &self.images[l - 1][t.row]);
            let c = if t.negative { f.neg(&f.one()) } else { f.one() };
            axpy(f, &mut out, &c, &w);
        }
        out
    }

    /// `f_(l+s) phi_l = phi_(l-1) d_l` in every degree, and
    /// `f_s phi_0 = 0`.
    pub fn commutes(&self, source: &KoszulComplex<F>, target: &ChainComplex<F>) -> bool {
        let f = source.algebra().field();
        for l in 0..=source.len() {
            for col in 0..source.rank(l) {
                let lhs = target.apply_diff(l + self.shift, &self.images[l][col]);
                let rhs = if l == 0 {
                    zero_vec(f, lhs.len())
                } else {
                    self.after_boundary(source, target, l, col)
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `second ∘ self`, where `self : K(x) -> K(u)` has shift zero and
    /// lands in the free complex of `u`.
    pub fn then(
        &self,
        u: &KoszulComplex<F>,
        second: &ComplexMorphism<F>,
        target: &ChainComplex<F>,
    ) -> ComplexMorphism<F> {
        let a = u.algebra();
        let f = a.field();
        let n = a.dim();
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(l, imgs)| {
                let deg = l + second.shift;
                imgs.iter()
                    .map(|v| {
                        let mut out = zero_vec(f, target.dim_at(deg));
                        for j in 0..u.rank(l) {
                            let coef = &v[j * n..(j + 1) * n];
                            if a.is_zero(coef) {
                                continue;
                            }
                            let w = target.act_at(deg, coef, &second.images[l][j]);
                            axpy(f, &mut out, &f.one(), &w);
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        ComplexMorphism {
            shift: second.shift,
            images,
        }
    }
}

/// `Λ W : K(x) -> K(u)` for `x = u W`; degree `l` sends `e_I` to
/// `Σ_J det W[J, I] e_J`.
pub fn wedge_morphism<F: Field>(
    w: &[Vec<AlgElem<F>>],
    x: &KoszulComplex<F>,
    u: &KoszulComplex<F>,
) -> Result<ComplexMorphism<F>> {
    let a = x.algebra();
    let n = x.len();
    if u.len() != n || w.len() != n || w.iter().any(|r| r.len() != n) {
        return Err(Error::PreconditionFailed(format!("W must be {n}x{n}")));
    }
    for j in 0..n {
        let mut s = a.zero();
        for i in 0..n {
            s = a.add(&s, &a.mul(&u.sequence()[i], &w[i][j]));
        }
        if s != x.sequence()[j] {
            return Err(Error::RelationViolated(format!(
                "x_{} = `{}` but (uW)_{} = `{}`",
                j + 1,
                a.format(&x.sequence()[j]),
                j + 1,
                a.format(&s)
            )));
        }
    }
    let dim = a.dim();
    let images = (0..=n)
        .map(|l| {
            x.tuples(l)
                .iter()
                .map(|cols| {
                    let mut v = zero_vec(a.field(), u.rank(l) * dim);
                    for (r, rows) in u.tuples(l).iter().enumerate() {
                        let m = a.minor(w, rows, cols);
                        v[r * dim..(r + 1) * dim].clone_from_slice(&m);
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(ComplexMorphism { shift: 0, images })
}

/// `δ^μ : K(u) -> K(u, M)` of degree one, `e_I ↦ Σ_i (e_I ∧ e_i) ⊗ m_i`.
pub fn delta_mu<F: Field>(
    km: &KoszulWithCoefficients<F>,
    mu: &[Vector<F>],
) -> Result<ComplexMorphism<F>> {
    let u = km.complex();
    let n = u.len();
    let f = km.module().field();
    let d = km.module().dim();
    if mu.len() != n || mu.iter().any(|m| m.len() != d) {
        return Err(Error::PreconditionFailed(format!(
            "expected {n} elements of M"
        )));
    }
    let images = (0..=n)
        .map(|l| {
            u.tuples(l)
                .iter()
                .map(|t| {
                    if l == n {
                        return Vec::new();
                    }
                    let mut v = zero_vec(f, u.rank(l + 1) * d);
                    for (i, m) in mu.iter().enumerate() {
                        if t.contains(&i) {
                            continue;
                        }
                        let above = t.iter().filter(|&&j| j > i).count();
                        let mut bigger = t.clone();
                        bigger.push(i);
                        bigger.sort_unstable();
                        let row = u.tuple_index(l + 1, &bigger).expect("tuple");
                        let c = if above % 2 == 1 {
                            f.neg(&f.one())
                        } else {
                            f.one()
                        };
                        axpy(f, &mut v[row * d..(row + 1) * d], &c, m);
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(ComplexMorphism { shift: 1, images })
}

/// Multiplication by `m ∈ M`: `K(u) -> K(u, M)`, `e_I ↦ e_I ⊗ m`.
pub fn multiplication_morphism<F: Field>(
    km: &KoszulWithCoefficients<F>,
    m: &[F::Elem],
) -> ComplexMorphism<F> {
    let u = km.complex();
    let f = km.module().field();
    let d = km.module().dim();
    let images = (0..=u.len())
        .map(|l| {
            (0..u.rank(l))
                .map(|i| {
                    let mut v = zero_vec(f, u.rank(l) * d);
                    v[i * d..(i + 1) * d].clone_from_slice(m);
                    v
                })
                .collect()
        })
        .collect();
    ComplexMorphism { shift: 0, images }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::field::PrimeField;
    use crate::module::FpModule;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_wedge_is_identity() {
        let f = PrimeField::new(7).unwrap();
        let a = AlgebraPresentation::new(&f, &["x", "y"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let u = KoszulComplex::new(a.clone(), a.vars().to_vec()).unwrap();
        let id = vec![vec![a.one(), a.zero()], vec![a.zero(), a.one()]];
        let w = wedge_morphism(&id, &u, &u).unwrap();
        let free = u.free_complex();
        for l in 0..=2 {
            for (i, img) in w.images[l].iter().enumerate() {
                let mut e = zero_vec(&f, u.rank(l) * a.dim());
                e[i * a.dim()] = 1;
                assert_eq!(img, &e);
            }
        }
        assert!(w.commutes(&u, free.chain()));
    }

    #[test]
    fn diagonal_top_degree_is_product() {
        let f = PrimeField::new(7).unwrap();
        let a = AlgebraPresentation::new(&f, &["x", "y"], &[], 4)
            .unwrap()
            .build()
            .unwrap();
        let (p, q) = (a.parse("1 + x").unwrap(), a.parse("2 + y").unwrap());
        let u = KoszulComplex::new(a.clone(), a.vars().to_vec()).unwrap();
        let x = KoszulComplex::new(a.clone(), vec![a.mul(&a.var(0), &p), a.mul(&a.var(1), &q)])
            .unwrap();
        let w = vec![vec![p.clone(), a.zero()], vec![a.zero(), q.clone()]];
        let m = wedge_morphism(&w, &x, &u).unwrap();
        assert_eq!(m.images[2][0], a.mul(&p, &q));
        assert!(m.commutes(&x, u.free_complex().chain()));
        let bad = vec![vec![a.one(), a.zero()], vec![a.zero(), a.one()]];
        assert!(matches!(
            wedge_morphism(&bad, &x, &u),
            Err(Error::RelationViolated(_))
        ));
    }

    #[test]
    fn random_three_by_three_commutes() {
        let f = PrimeField::new(7).unwrap();
        let a = AlgebraPresentation::new(&f, &["x", "y", "z"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let u = KoszulComplex::new(a.clone(), a.vars().to_vec()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let w: Vec<Vec<Vec<u32>>> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| (0..a.dim()).map(|_| f.random(&mut rng)).collect())
                        .collect()
                })
                .collect();
            let xs: Vec<_> = (0..3)
                .map(|j| {
                    (0..3).fold(a.zero(), |s, i| {
                        a.add(&s, &a.mul(&u.sequence()[i], &w[i][j]))
                    })
                })
                .collect();
            let x = KoszulComplex::new(a.clone(), xs).unwrap();
            let m = wedge_morphism(&w, &x, &u).unwrap();
            assert!(m.commutes(&x, u.free_complex().chain()));
            assert_eq!(m.images[3][0], a.det(&w));
        }
    }

    #[test]
    fn delta_mu_is_a_morphism_exactly_on_relations() {
        let f = PrimeField::new(101).unwrap();
        let a = AlgebraPresentation::new(&f, &["x", "y"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let m = FpModule::free(a.clone(), 1);
        let u = KoszulComplex::new(a.clone(), a.vars().to_vec()).unwrap();
        let km = u.with_coefficients(&m).unwrap();
        // y * x - x * y = 0
        let rel = vec![a.var(1), a.neg(&a.var(0))];
        assert!(delta_mu(&km, &rel).unwrap().commutes(&u, km.chain()));
        let not_rel = vec![a.var(1), a.var(0)];
        assert!(!delta_mu(&km, &not_rel).unwrap().commutes(&u, km.chain()));
        let mult = multiplication_morphism(&km, &a.parse("x + y^2").unwrap());
        assert!(mult.commutes(&u, km.chain()));
    }
}
