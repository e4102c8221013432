//! Buchberger's algorithm and normal forms.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use super::{Monomial, MonomialOrder, Poly};
use crate::error::{Error, Result};
use crate::field::Field;

fn check_nvars<F: Field>(f: &Poly<F>, g: &[Poly<F>]) -> Result<()> {
    for p in g {
        if p.nvars() != f.nvars() {
            return Err(Error::VariableMismatch {
                expected: f.nvars(),
                found: p.nvars(),
            });
        }
    }
    Ok(())
}

/// Fully reduced remainder of `f` modulo `g`.
pub fn normal_form<F: Field>(
    field: &F,
    f: &Poly<F>,
    g: &[Poly<F>],
    order: MonomialOrder,
) -> Result<Poly<F>> {
    check_nvars(f, g)?;
    let leads: Vec<(Monomial, F::Elem)> = g
        .iter()
        .filter_map(|p| {
            p.leading(order)
                .map(|(m, c)| (m.clone(), field.inv(c).unwrap()))
        })
        .collect();
    let g: Vec<&Poly<F>> = g.iter().filter(|p| !p.is_zero()).collect();
    Ok(reduce_with(field, f, &g, &leads, order))
}

fn reduce_with<F: Field>(
    field: &F,
    f: &Poly<F>,
    g: &[&Poly<F>],
    leads: &[(Monomial, F::Elem)],
    order: MonomialOrder,
) -> Poly<F> {
    let mut p = f.clone();
    let mut rem = Poly::zero(f.nvars());
    while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let (lm, linv) = &leads[i];
                let factor = field.neg(&field.mul(&c, linv));
                let shift = lm.quotient_of(&m);
                p = p.add(field, &g[i].mul_term(field, &factor, &shift));
            }
            None => {
                p.add_term(field, m.clone(), field.neg(&c));
                rem.add_term(field, m, c);
            }
        }
    }
    rem
}

fn s_poly<F: Field>(field: &F, a: &Poly<F>, b: &Poly<F>, order: MonomialOrder) -> Poly<F> {
    let (ma, ca) = a.leading(order).unwrap();
    let (mb, cb) = b.leading(order).unwrap();
    let l = ma.lcm(mb);
    let fa = field.inv(ca).unwrap();
    let fb = field.inv(cb).unwrap();
    a.mul_term(field, &fa, &ma.quotient_of(&l))
        .sub(field, &b.mul_term(field, &fb, &mb.quotient_of(&l)))
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading
/// monomial in decreasing order.
pub fn buchberger<F: Field>(
    field: &F,
    gens: &[Poly<F>],
    order: MonomialOrder,
) -> Result<Vec<Poly<F>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    check_nvars(first, gens)?;
    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut leads: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let push = |p: Poly<F>,
                basis: &mut Vec<Poly<F>>,
                leads: &mut Vec<(Monomial, F::Elem)>,
                pairs: &mut BTreeSet<(u32, usize, usize)>| {
        let p = p.make_monic(field, order);
        let lm = p.leading_monomial(order).unwrap().clone();
        let j = basis.len();
        for (i, (li, _)) in leads.iter().enumerate() {
            pairs.insert((li.lcm(&lm).degree(), i, j));
        }
        leads.push((lm, field.one()));
        basis.push(p);
    };

    // Sort inputs by leading monomial so small generators reduce large ones.
    let mut inputs: Vec<Poly<F>> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial(order).unwrap(),
            b.leading_monomial(order).unwrap(),
        )
    });
    for p in inputs {
        let refs: Vec<&Poly<F>> = basis.iter().collect();
        let r = reduce_with(field, &p, &refs, &leads, order);
        if !r.is_zero() {
            push(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    while let Some(&pair) = pairs.iter().next() {
        pairs.remove(&pair);
        let (_, i, j) = pair;
        done.insert((i, j));
        let (li, lj) = (&leads[i].0, &leads[j].0);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].0.divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(field, &basis[i], &basis[j], order);
        let refs: Vec<&Poly<F>> = basis.iter().collect();
        let r = reduce_with(field, &s, &refs, &leads, order);
        if !r.is_zero() {
            push(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let li = &leads[i].0;
        let redundant = (0..basis.len())
            .any(|j| j != i && leads[j].0.divides(li) && (leads[j].0 != *li || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Poly<F>> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_leads: Vec<(Monomial, F::Elem)> = keep.iter().map(|&i| leads[i].clone()).collect();

    // Interreduce the tails.
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        let (lm, lc) = p.leading(order).unwrap();
        let tail = {
            let mut t = p.clone();
            t.add_term(field, lm.clone(), field.neg(lc));
            t
        };
        let others: Vec<&Poly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q)
            .collect();
        let other_leads: Vec<(Monomial, F::Elem)> = min_leads
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, l)| l.clone())
            .collect();
        let mut r = reduce_with(field, &tail, &others, &other_leads, order);
        r.add_term(field, lm.clone(), lc.clone());
        reduced.push(r.make_monic(field, order));
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            b.leading_monomial(order).unwrap(),
            a.leading_monomial(order).unwrap(),
        )
    });
    Ok(reduced)
}

/// Standard monomials of a zero-dimensional ideal, sorted by increasing
/// degree and, within a degree, decreasing in `order`.
pub fn quotient_monomial_basis<F: Field>(
    g: &[Poly<F>],
    nvars: usize,
    order: MonomialOrder,
    names: &[String],
) -> Result<Vec<Monomial>> {
    let leads: Vec<&Monomial> = g.iter().filter_map(|p| p.leading_monomial(order)).collect();
    if leads.iter().any(|m| m.is_one()) {
        return Ok(Vec::new());
    }
    for v in 0..nvars {
        if !leads.iter().any(|m| m.pure_power_var() == Some(v)) {
            return Err(Error::NotZeroDimensional {
                variable: names.get(v).cloned().unwrap_or_else(|| format!("x{v}")),
            });
        }
    }
    let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = vec![Monomial::one(nvars)];
    while !frontier.is_empty() {
        let mut next: BTreeSet<Monomial> = BTreeSet::new();
        for m in &frontier {
            for v in 0..nvars {
                let n = m.mul(&Monomial::var(nvars, v));
                if standard(&n) {
                    next.insert(n);
                }
            }
        }
        let mut layer: Vec<Monomial> = next.into_iter().collect();
        layer.sort_by(|a, b| order.cmp(b, a));
        out.extend(layer.iter().cloned());
        frontier = layer;
    }
    out.sort_by(|a, b| match a.degree().cmp(&b.degree()) {
        Ordering::Equal => order.cmp(b, a),
        o => o,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::linalg::Matrix;
    use crate::poly::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vars(n: usize) -> Vec<String> {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    }

    fn polys(f: &PrimeField, n: usize, src: &[&str]) -> Vec<Poly<PrimeField>> {
        src.iter()
            .map(|s| parse_poly(f, &vars(n), s).unwrap())
            .collect()
    }

    fn random_poly(
        f: &PrimeField,
        rng: &mut ChaCha8Rng,
        n: usize,
        deg: u32,
        terms: usize,
    ) -> Poly<PrimeField> {
        let mut p = Poly::zero(n);
        for _ in 0..terms {
            let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=deg)).collect();
            p.add_term(f, Monomial::new(exps), f.random(rng));
        }
        p
    }

    /// Division that rewrites any reducible term, scanning divisors in
    /// reverse. Agrees with `normal_form` only because `g` is a Gröbner basis.
    fn naive_division(
        f: &PrimeField,
        p: &Poly<PrimeField>,
        g: &[Poly<PrimeField>],
        o: MonomialOrder,
    ) -> Poly<PrimeField> {
        let mut p = p.clone();
        loop {
            let mut changed = false;
            let terms: Vec<(Monomial, u32)> = p.terms().map(|(m, c)| (m.clone(), *c)).collect();
            'outer: for (m, c) in terms.iter().rev() {
                for q in g.iter().rev() {
                    let (lm, lc) = q.leading(o).unwrap();
                    if lm.divides(m) {
                        let factor = f.neg(&f.mul(c, &f.inv(lc).unwrap()));
                        p = p.add(f, &q.mul_term(f, &factor, &lm.quotient_of(m)));
                        changed = true;
                        break 'outer;
                    }
                }
            }
            if !changed {
                return p;
            }
        }
    }

    /// Dimension of k[x]/(I + (x)^d) by linear algebra on the monomials of
    /// degree below d.
    fn macaulay_dim(f: &PrimeField, gens: &[Poly<PrimeField>], n: usize, d: u32) -> usize {
        let monos: Vec<Monomial> = (0..d).flat_map(|k| Monomial::all_of_degree(n, k)).collect();
        let index = |m: &Monomial| monos.iter().position(|x| x == m);
        let mut rows = Vec::new();
        for g in gens {
            for m in &monos {
                let prod = g.mul_term(f, &1, m).truncate(d);
                let mut row = vec![0u32; monos.len()];
                for (mm, c) in prod.terms() {
                    row[index(mm).unwrap()] = *c;
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return monos.len();
        }
        monos.len() - Matrix::from_rows(f, monos.len(), rows).rank()
    }

    fn truncation(n: usize, d: u32) -> Vec<Poly<PrimeField>> {
        let f = PrimeField::new(101).unwrap();
        Monomial::all_of_degree(n, d)
            .into_iter()
            .map(|m| Poly::term(&f, 1, m))
            .collect()
    }

    #[test]
    fn linear_and_monomial_ideals_are_fixed() {
        let f = PrimeField::new(101).unwrap();
        let o = MonomialOrder::Degrevlex;
        let g = polys(&f, 2, &["x", "y"]);
        assert_eq!(buchberger(&f, &g, o).unwrap(), g);
        let sq = polys(&f, 3, &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
        let gb = buchberger(&f, &sq, o).unwrap();
        let mut a = gb.clone();
        let mut b = sq.clone();
        a.sort_by(|p, q| p.terms().next().unwrap().0.cmp(q.terms().next().unwrap().0));
        b.sort_by(|p, q| p.terms().next().unwrap().0.cmp(q.terms().next().unwrap().0));
        assert_eq!(a, b);
        assert_eq!(normal_form(&f, &sq[0], &gb, o).unwrap(), Poly::zero(3));
        let one = Poly::one(&f, 3);
        assert_eq!(normal_form(&f, &one, &gb, o).unwrap(), one);
    }

    #[test]
    fn staircase_of_truncations() {
        let f = PrimeField::new(101).unwrap();
        let o = MonomialOrder::Degrevlex;
        let gb = buchberger(
            &f,
            &polys(&f, 3, &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]),
            o,
        )
        .unwrap();
        let basis = quotient_monomial_basis(&gb, 3, o, &vars(3)).unwrap();
        let shown: Vec<String> = basis.iter().map(|m| m.format(&vars(3))).collect();
        assert_eq!(shown, vec!["1", "x", "y", "z"]);
        let uv = truncation(2, 4);
        let gb = buchberger(&f, &uv, o).unwrap();
        assert_eq!(
            quotient_monomial_basis(&gb, 2, o, &vars(2)).unwrap().len(),
            10
        );
        let gb = buchberger(&f, &polys(&f, 1, &["x"]), o).unwrap();
        assert_eq!(
            quotient_monomial_basis(&gb, 1, o, &vars(1)).unwrap().len(),
            1
        );
    }

    #[test]
    fn detects_positive_dimension() {
        let f = PrimeField::new(101).unwrap();
        let gb = buchberger(&f, &polys(&f, 2, &["x^2"]), MonomialOrder::Degrevlex).unwrap();
        let err = quotient_monomial_basis(&gb, 2, MonomialOrder::Degrevlex, &vars(2)).unwrap_err();
        assert_eq!(
            err,
            Error::NotZeroDimensional {
                variable: "y".into()
            }
        );
    }

    #[test]
    fn mismatched_variable_counts() {
        let f = PrimeField::new(7).unwrap();
        let a = Poly::var(&f, 2, 0);
        let b = Poly::var(&f, 3, 0);
        assert!(matches!(
            normal_form(&f, &a, &[b], MonomialOrder::Lex),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn s_pairs_vanish_and_dimension_matches_linear_algebra() {
        let f = PrimeField::new(101).unwrap();
        let o = MonomialOrder::Degrevlex;
        let gens = polys(&f, 2, &["x^2 - y^3", "x^5", "y^5"]);
        let gb = buchberger(&f, &gens, o).unwrap();
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let s = s_poly(&f, &gb[i], &gb[j], o);
                assert!(normal_form(&f, &s, &gb, o).unwrap().is_zero());
            }
        }
        let staircase = quotient_monomial_basis(&gb, 2, o, &vars(2)).unwrap().len();
        let mut with_trunc = gens.clone();
        with_trunc.extend(truncation(2, 12));
        assert_eq!(staircase, macaulay_dim(&f, &with_trunc, 2, 12));
    }

    #[test]
    fn normal_form_matches_naive_division() {
        let f = PrimeField::new(7).unwrap();
        let o = MonomialOrder::Degrevlex;
        let gb = buchberger(&f, &polys(&f, 2, &["x^2 - y^3", "y^4"]), o).unwrap();
        let xy = parse_poly(&f, &vars(2), "x*y").unwrap();
        assert_eq!(normal_form(&f, &xy, &gb, o).unwrap(), xy);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let mut gens: Vec<Poly<PrimeField>> = (0..rng.gen_range(1..=3))
                .map(|_| random_poly(&f, &mut rng, n, 3, 3))
                .collect();
            gens.extend(truncation(n, 5));
            let gb = buchberger(&f, &gens, o).unwrap();
            let p = random_poly(&f, &mut rng, n, 5, 6);
            assert_eq!(
                normal_form(&f, &p, &gb, o).unwrap(),
                naive_division(&f, &p, &gb, o)
            );
        }
    }

    #[test]
    fn staircase_dimension_on_random_ideals() {
        let f = PrimeField::new(101).unwrap();
        let o = MonomialOrder::Degrevlex;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..=3);
            let d = rng.gen_range(2..=4);
            let mut gens: Vec<Poly<PrimeField>> = (0..rng.gen_range(0..=2))
                .map(|_| random_poly(&f, &mut rng, n, 2, 3))
                .collect();
            gens.extend(truncation(n, d));
            let gb = buchberger(&f, &gens, o).unwrap();
            let dim = quotient_monomial_basis(&gb, n, o, &vars(n)).unwrap().len();
            assert_eq!(dim, macaulay_dim(&f, &gens, n, d));
        }
    }

    #[test]
    fn basis_is_independent_of_generator_order() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for o in [
            MonomialOrder::Degrevlex,
            MonomialOrder::Deglex,
            MonomialOrder::Lex,
        ] {
            for _ in 0..10 {
                let mut gens: Vec<Poly<PrimeField>> =
                    (0..3).map(|_| random_poly(&f, &mut rng, 3, 2, 3)).collect();
                gens.extend(truncation(3, 4));
                let a = buchberger(&f, &gens, o).unwrap();
                gens.reverse();
                let b = buchberger(&f, &gens, o).unwrap();
                assert_eq!(a, b);
                for p in &a {
                    assert_eq!(normal_form(&f, p, &a, o).unwrap(), Poly::zero(3));
                }
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear() {
        let f = PrimeField::new(13).unwrap();
        let o = MonomialOrder::Degrevlex;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let mut gens: Vec<Poly<PrimeField>> =
                (0..2).map(|_| random_poly(&f, &mut rng, 2, 3, 3)).collect();
            gens.extend(truncation(2, 5));
            let gb = buchberger(&f, &gens, o).unwrap();
            let p = random_poly(&f, &mut rng, 2, 5, 5);
            let q = random_poly(&f, &mut rng, 2, 5, 5);
            let c = f.random(&mut rng);
            let np = normal_form(&f, &p, &gb, o).unwrap();
            assert_eq!(normal_form(&f, &np, &gb, o).unwrap(), np);
            let lhs = normal_form(&f, &p.add(&f, &q.scale(&f, &c)), &gb, o).unwrap();
            let nq = normal_form(&f, &q, &gb, o).unwrap();
            assert_eq!(lhs, np.add(&f, &nq.scale(&f, &c)));
        }
    }
}
