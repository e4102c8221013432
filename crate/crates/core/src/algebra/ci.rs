use std::collections::HashMap;

use super::LocalAlgebra;
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::poly::Monomial;

/// Minimal number of generators of the defining ideal `J` of the minimal
/// presentation `k[y_1..y_e]/J` of `B`, with `e = edim(B)`.
///
/// Computed in `T = k[y]/(y)^(N+2)` where `N` is the nilpotency index of
/// `B`: since `(y)^N ⊆ J`, both `J` and `(y)J` contain `(y)^(N+2)`, so
/// `J/(y)J` is unchanged by passing to `T`.
pub fn defining_ideal_mu<F: Field>(b: &LocalAlgebra<F>) -> (usize, usize) {
    let f = b.field();
    let gens = b.minimal_generators(&b.max_ideal());
    let e = gens.len();
    let top = b.nilpotency() as u32 + 1;
    let monos: Vec<Monomial> = (0..=top)
        .flat_map(|d| Monomial::all_of_degree(e, d))
        .collect();
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut values: Vec<Vec<F::Elem>> = Vec::with_capacity(monos.len());
    for m in &monos {
        let v = match m.exps().iter().position(|&x| x > 0) {
            None => b.one(),
            Some(v) => {
                let mut ex = m.exps().to_vec();
                ex[v] -= 1;
                b.mul(&gens[v], &values[index[&Monomial::new(ex)]])
            }
        };
        values.push(v);
    }
    let ev = Matrix::from_columns(f, b.dim(), &values);
    let j = Subspace::kernel_of(&ev);
    let shifted = j.basis().iter().flat_map(|w| {
        (0..e).map(|v| {
            let mut out = vec![f.zero(); monos.len()];
            for (k, c) in w.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let m = monos[k].mul(&Monomial::var(e, v));
                if let Some(&t) = index.get(&m) {
                    out[t] = c.clone();
                }
            }
            out
        })
    });
    let yj = Subspace::span(f, monos.len(), shifted.collect::<Vec<_>>());
    (e, j.dim() - yj.dim())
}

/// Whether `B` is a complete intersection: `mu(J) = edim(B)`.
pub fn is_complete_intersection<F: Field>(b: &LocalAlgebra<F>) -> bool {
    let (e, mu) = defining_ideal_mu(b);
    e == mu
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::field::PrimeField;

    fn check(vars: &[&str], rels: &[&str], d: u32) -> (usize, usize) {
        let f = PrimeField::new(101).unwrap();
        let b = AlgebraPresentation::new(&f, vars, rels, d)
            .unwrap()
            .build()
            .unwrap();
        defining_ideal_mu(&b)
    }

    #[test]
    fn truncated_plane_is_not_ci() {
        assert_eq!(check(&["u", "v"], &[], 4), (2, 5));
    }

    #[test]
    fn small_complete_intersections() {
        assert_eq!(check(&["u"], &[], 2), (1, 1));
        assert_eq!(check(&[], &[], 1), (0, 0));
        assert_eq!(check(&["x", "y"], &["x^2", "y^3"], 10), (2, 2));
        assert_eq!(check(&["x", "y"], &["x*y", "x^2 - y^2"], 10), (2, 2));
    }

    #[test]
    fn redundant_variables_are_eliminated() {
        // x = y^2 together with (x, y)^3 gives k[y]/(y^3)
        assert_eq!(check(&["x", "y"], &["x - y^2"], 3), (1, 1));
    }

    #[test]
    fn square_zero_is_ci_only_in_one_variable() {
        assert_eq!(check(&["x", "y", "z"], &[], 2), (3, 6));
        assert_eq!(check(&["x"], &[], 2), (1, 1));
    }
}
