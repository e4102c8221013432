//! `M`-independence of sequences, the relation submodule `R_I(M)` and
//! strong independence of ideals.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgElem, IdealSpan, LocalAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::koszul::{higher_kernel_inclusion, KoszulComplex};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::module::{FpModule, Submodule};

#[derive(Clone, Debug)]
pub struct IndependenceReport<F: Field> {
    pub independent: bool,
    /// Submodule generated by all coordinates of relations.
    pub relations: Submodule<F>,
    /// `I M` (or `J_x M`).
    pub ideal_times: Submodule<F>,
    /// A relation `(m_1, ..., m_n)` with `Σ x_i m_i = 0` and some `m_i ∉ IM`.
    pub witness: Option<Vec<Vector<F>>>,
    /// The sequence the witness refers to.
    pub witness_sequence: Vec<AlgElem<F>>,
    /// First `i` with `R_(I^i)(M) ⊄ IM` (strong test only).
    pub failing_power: Option<u32>,
}

/// Kernel of `M^n -> M, (m_i) ↦ Σ x_i m_i`.
pub fn relation_kernel<F: Field>(m: &FpModule<F>, x: &[AlgElem<F>]) -> Subspace<F> {
    let f = m.field();
    let mut map = Matrix::zero(f, m.dim(), 0);
    for xi in x {
        map = map.hstack(&m.action_matrix(xi));
    }
    Subspace::kernel_of(&map)
}

fn split<F: Field>(v: &[F::Elem], d: usize, n: usize) -> Vec<Vector<F>> {
    (0..n).map(|i| v[i * d..(i + 1) * d].to_vec()).collect()
}

fn coordinate_span<F: Field>(m: &FpModule<F>, ker: &Subspace<F>, n: usize) -> Subspace<F> {
    let d = m.dim();
    let vecs = ker
        .basis()
        .iter()
        .flat_map(|v| split::<F>(v, d, n))
        .collect::<Vec<_>>();
    Subspace::span(m.field(), d, vecs)
}

/// `R_I(M)`, computed from the minimal generators of `I`.
pub fn relation_submodule<F: Field>(ideal: &IdealSpan<F>, m: &FpModule<F>) -> Result<Submodule<F>> {
    let a = m.algebra();
    if ideal.algebra_id() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    let x = a.minimal_generators(ideal);
    let ker = relation_kernel(m, &x);
    // the kernel is a submodule of M^n, so its projections are closed
    m.submodule_from_space(coordinate_span(m, &ker, x.len()))
}

fn check_local<F: Field>(a: &LocalAlgebra<F>, x: &[AlgElem<F>]) -> Result<()> {
    for (i, xi) in x.iter().enumerate() {
        if xi.len() != a.dim() {
            return Err(Error::AlgebraMismatch);
        }
        if !a.in_max_ideal(xi) {
            return Err(Error::NotLocal(format!(
                "sequence entry {} is the unit `{}`",
                i + 1,
                a.format(xi)
            )));
        }
    }
    Ok(())
}

/// Whether every relation `Σ x_i m_i = 0` has all `m_i ∈ (x) M`, for the
/// sequence exactly as given.
pub fn is_independent<F: Field>(
    x: &[AlgElem<F>],
    m: &FpModule<F>,
) -> Result<IndependenceReport<F>> {
    let a = m.algebra();
    check_local(a, x)?;
    let n = x.len();
    let d = m.dim();
    let jm = m.ideal_times(&a.ideal_from(x))?;
    let ker = relation_kernel(m, x);
    let witness = ker
        .basis()
        .iter()
        .map(|v| split::<F>(v, d, n))
        .find(|parts| parts.iter().any(|p| !jm.contains(p)));
    let relations = m.submodule_from_space(coordinate_span(m, &ker, n))?;
    Ok(IndependenceReport {
        independent: witness.is_none(),
        relations,
        ideal_times: jm,
        witness,
        witness_sequence: x.to_vec(),
        failing_power: None,
    })
}

/// Whether `R_(I^i)(M) ⊆ IM` for every `i >= 1`; stops once `I^i = 0`.
pub fn is_strongly_independent<F: Field>(
    ideal: &IdealSpan<F>,
    m: &FpModule<F>,
) -> Result<IndependenceReport<F>> {
    let a = m.algebra();
    if !ideal.is_subset_of(&a.max_ideal()) {
        return Err(Error::PreconditionFailed(
            "the ideal is not contained in m_A".into(),
        ));
    }
    let im = m.ideal_times(ideal)?;
    let d = m.dim();
    let mut power = ideal.clone();
    let mut i = 1u32;
    let mut first = None;
    while !power.is_zero() {
        let x = a.minimal_generators(&power);
        let ker = relation_kernel(m, &x);
        let r = m.submodule_from_space(coordinate_span(m, &ker, x.len()))?;
        if i == 1 {
            first = Some(r.clone());
        }
        if !r.is_subset_of(&im) {
            let witness = ker
                .basis()
                .iter()
                .map(|v| split::<F>(v, d, x.len()))
                .find(|parts| parts.iter().any(|p| !im.contains(p)));
            return Ok(IndependenceReport {
                independent: false,
                relations: r,
                ideal_times: im,
                witness,
                witness_sequence: x,
                failing_power: Some(i),
            });
        }
        power = a.ideal_product(&power, ideal)?;
        i += 1;
    }
    Ok(IndependenceReport {
        independent: true,
        relations: first.unwrap_or_else(|| m.zero_submodule()),
        ideal_times: im,
        witness: None,
        witness_sequence: a.minimal_generators(ideal),
        failing_power: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    Exhaustive,
    Greedy,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub length_bound: usize,
    pub mode: CensusMode,
    /// Candidate coordinates range over the first `coefficient_bound`
    /// elements of the prime subfield.
    pub coefficient_bound: u64,
    pub max_candidates: usize,
    pub max_sequences: usize,
    pub max_algebra_dim: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            length_bound: 3,
            mode: CensusMode::Exhaustive,
            coefficient_bound: 2,
            max_candidates: 4096,
            max_sequences: 200_000,
            max_algebra_dim: 12,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LengthStats {
    pub length: usize,
    pub tested: usize,
    pub independent: usize,
    pub strongly_independent: usize,
    /// Independent sequences with `Ker d_l ⊆ J_x K_l(x, M)` in every degree.
    pub koszul_all_degrees: usize,
}

#[derive(Clone, Debug)]
pub struct CensusReport<F: Field> {
    pub mode: CensusMode,
    pub candidates: usize,
    pub per_length: Vec<LengthStats>,
    pub max_independent: usize,
    pub independent_witness: Vec<AlgElem<F>>,
    pub max_strong: usize,
    pub strong_witness: Vec<AlgElem<F>>,
}

/// Nonzero elements of `m_A` with coordinates among the allowed scalars,
/// one per line through the origin (first nonzero coordinate equal to 1).
pub fn census_candidates<F: Field>(
    a: &LocalAlgebra<F>,
    opts: &CensusOptions,
) -> Result<Vec<AlgElem<F>>> {
    let f = a.field();
    let scalars = f.prime_subfield_elements(opts.coefficient_bound.max(2));
    let slots = a.dim() - 1;
    let total = (scalars.len() as f64).powi(slots as i32);
    if total > opts.max_candidates as f64 * scalars.len() as f64 {
        return Err(Error::cap(
            "census candidates",
            opts.max_candidates,
            total.min(usize::MAX as f64) as usize,
        ));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots];
    loop {
        let mut carry = 0;
        while carry < slots {
            idx[carry] += 1;
            if idx[carry] < scalars.len() {
                break;
            }
            idx[carry] = 0;
            carry += 1;
        }
        if carry == slots {
            break;
        }
        let mut v = a.zero();
        for (k, &i) in idx.iter().enumerate() {
            v[k + 1] = scalars[i].clone();
        }
        let lead = v.iter().find(|c| !f.is_zero(c)).expect("nonzero");
        if f.is_one(lead) {
            out.push(v);
        }
    }
    // lowest-degree leading term first
    out.sort_by_key(|v| v.iter().position(|c| !f.is_zero(c)));
    if out.len() > opts.max_candidates {
        return Err(Error::cap(
            "census candidates",
            opts.max_candidates,
            out.len(),
        ));
    }
    Ok(out)
}

fn multisets(c: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, c: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..c {
            cur.push(i);
            go(i, c, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, c, l, &mut Vec::new(), &mut out);
    out
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

struct Verdict {
    independent: bool,
    strong: bool,
    koszul_all: bool,
}

fn judge<F: Field>(m: &FpModule<F>, x: &[AlgElem<F>]) -> Result<Verdict> {
    let a = m.algebra();
    let independent = is_independent(x, m)?.independent;
    if !independent {
        return Ok(Verdict {
            independent,
            strong: false,
            koszul_all: false,
        });
    }
    let strong = is_strongly_independent(&a.ideal_from(x), m)?.independent;
    let k = KoszulComplex::new(a.clone(), x.to_vec())?;
    let km = k.with_coefficients(m)?;
    let zero = m.zero_submodule();
    let mut koszul_all = true;
    for l in 1..=x.len() {
        koszul_all &= higher_kernel_inclusion(&km, l, &zero)?;
    }
    Ok(Verdict {
        independent,
        strong,
        koszul_all,
    })
}

/// Longest `M`-independent and strongly independent sequences among the
/// candidates, with per-length statistics.
pub fn census<F: Field>(m: &FpModule<F>, opts: &CensusOptions) -> Result<CensusReport<F>> {
    let a = m.algebra();
    if a.dim() > opts.max_algebra_dim {
        return Err(Error::cap(
            "census algebra dimension",
            opts.max_algebra_dim,
            a.dim(),
        ));
    }
    let cands = census_candidates(a, opts)?;
    let mut report = CensusReport {
        mode: opts.mode,
        candidates: cands.len(),
        per_length: Vec::new(),
        max_independent: 0,
        independent_witness: Vec::new(),
        max_strong: 0,
        strong_witness: Vec::new(),
    };
    match opts.mode {
        CensusMode::Exhaustive => {
            let mut budget = opts.max_sequences;
            for l in 1..=opts.length_bound {
                let count = binom(cands.len() + l - 1, l);
                if count > budget as f64 {
                    return Err(Error::cap(
                        "census sequences",
                        opts.max_sequences,
                        opts.max_sequences - budget + count as usize,
                    ));
                }
                budget -= count as usize;
                let seqs = multisets(cands.len(), l);
                let verdicts: Vec<(Vec<usize>, Verdict)> = seqs
                    .into_par_iter()
                    .map(|s| {
                        let x: Vec<_> = s.iter().map(|&i| cands[i].clone()).collect();
                        judge(m, &x).map(|v| (s, v))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut stats = LengthStats {
                    length: l,
                    ..Default::default()
                };
                // verdicts keep the lexicographic order of `multisets`
                for (s, v) in &verdicts {
                    stats.tested += 1;
                    if v.independent {
                        stats.independent += 1;
                        if report.max_independent < l {
                            report.max_independent = l;
                            report.independent_witness =
                                s.iter().map(|&i| cands[i].clone()).collect();
                        }
                    }
                    if v.strong {
                        stats.strongly_independent += 1;
                        if report.max_strong < l {
                            report.max_strong = l;
                            report.strong_witness = s.iter().map(|&i| cands[i].clone()).collect();
                        }
                    }
                    if v.koszul_all {
                        stats.koszul_all_degrees += 1;
                    }
                }
                report.per_length.push(stats);
            }
        }
        CensusMode::Greedy => {
            for strong in [false, true] {
                let mut chosen: Vec<AlgElem<F>> = Vec::new();
                while chosen.len() < opts.length_bound {
                    let next = cands.iter().find(|c| {
                        let mut x = chosen.clone();
                        x.push((*c).clone());
                        judge(m, &x)
                            .map_or(false, |v| if strong { v.strong } else { v.independent })
                    });
                    match next {
                        Some(c) => chosen.push(c.clone()),
                        None => break,
                    }
                }
                if strong {
                    report.max_strong = chosen.len();
                    report.strong_witness = chosen;
                } else {
                    report.max_independent = chosen.len();
                    report.independent_witness = chosen;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{AlgebraMorphism, AlgebraPresentation};
    use crate::field::PrimeField;
    use crate::koszul::independence_via_koszul;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn alg(f: &PrimeField, vars: &[&str], rels: &[&str], d: u32) -> Arc<LocalAlgebra<PrimeField>> {
        AlgebraPresentation::new(f, vars, rels, d)
            .unwrap()
            .build()
            .unwrap()
    }

    #[test]
    fn relation_submodule_of_a_power() {
        let a = alg(&gf(101), &["t"], &[], 8);
        let m = FpModule::free(a.clone(), 1);
        assert!(relation_submodule(&a.zero_ideal(), &m).unwrap().is_zero());
        let r = relation_submodule(&a.ideal_from(&[a.parse("t^6").unwrap()]), &m).unwrap();
        // ann(t^6) = (t^2), brute force over the basis
        let ann: Vec<_> = (0..8)
            .map(|k| a.basis_elem(k))
            .filter(|b| a.is_zero(&a.mul(b, &a.parse("t^6").unwrap())))
            .collect();
        assert_eq!(r.space(), &Subspace::span(a.field(), 8, ann));
        assert_eq!(r, m.span(&[a.parse("t^2").unwrap()]));
    }

    #[test]
    fn relation_submodule_ignores_generator_choice() {
        let f = gf(101);
        let a = alg(&f, &["x", "y"], &["x*y"], 4);
        let m = FpModule::from_cokernel(a.clone(), 1, &[vec![a.parse("x^2").unwrap()]]).unwrap();
        let g = vec![a.parse("x + y^2").unwrap(), a.parse("y").unwrap()];
        let i = a.ideal_from(&g);
        let r = relation_submodule(&i, &m).unwrap();
        // a different generating set related by an invertible change
        let h = vec![a.add(&g[0], &a.scale(&3, &g[1])), a.scale(&5, &g[1])];
        let via_h = m
            .submodule_from_space(coordinate_span(&m, &relation_kernel(&m, &h), 2))
            .unwrap();
        assert_eq!(r, via_h);
    }

    #[test]
    fn truncated_valuation_ring() {
        let f = gf(101);
        let a = alg(&f, &["t"], &[], 4);
        let m =
            FpModule::quotient_ring(a.clone(), &a.ideal_from(&[a.parse("t^2").unwrap()])).unwrap();
        assert!(is_independent(&[a.var(0)], &m).unwrap().independent);
        // brute force over all of M for the single generator t
        let jm = m.sequence_times(&[a.var(0)]);
        for v in m.orbit(&m.generators()[0]) {
            if crate::linalg::is_zero_vec(&f, &m.act(&a.var(0), &v)) {
                assert!(jm.contains(&v));
            }
        }
    }

    #[test]
    fn line_of_length_eight() {
        let a = alg(&gf(101), &["x"], &[], 8);
        let m = FpModule::free(a.clone(), 1);
        let x3 = a.parse("x^3").unwrap();
        let x4 = a.parse("x^4").unwrap();
        assert!(is_independent(&[x3.clone()], &m).unwrap().independent);
        let x7 = is_independent(&[a.parse("x^7").unwrap()], &m).unwrap();
        assert!(!x7.independent);
        assert!(
            is_strongly_independent(&a.ideal_from(&[x4]), &m)
                .unwrap()
                .independent
        );
        let s3 = is_strongly_independent(&a.ideal_from(&[x3]), &m).unwrap();
        assert!(!s3.independent);
        assert_eq!(s3.failing_power, Some(2));
        let w = s3.witness.unwrap();
        assert!(a.is_zero(&a.mul(&s3.witness_sequence[0], &w[0])));
    }

    #[test]
    fn free_modules_make_the_maximal_ideal_strong() {
        let a = alg(&gf(7), &["x", "y"], &["x^2 - y^2"], 4);
        let m = FpModule::free(a.clone(), 2);
        assert!(
            is_strongly_independent(&a.max_ideal(), &m)
                .unwrap()
                .independent
        );
        let gens = a.minimal_generators(&a.max_ideal());
        assert!(
            is_independent(&gens, &FpModule::free(a.clone(), 1))
                .unwrap()
                .independent
        );
    }

    #[test]
    fn units_are_rejected() {
        let a = alg(&gf(7), &["x"], &[], 3);
        let m = FpModule::free(a.clone(), 1);
        assert!(matches!(
            is_independent(&[a.one()], &m),
            Err(Error::NotLocal(_))
        ));
        assert!(is_independent(&[], &m).unwrap().independent);
        assert!(
            is_independent(&[a.var(0)], &FpModule::free(a.clone(), 0))
                .unwrap()
                .independent
        );
    }

    #[test]
    fn census_examples() {
        let f = gf(2);
        let a = alg(&f, &["x", "y", "z"], &[], 2);
        let m = FpModule::free(a.clone(), 1);
        let opts = CensusOptions {
            length_bound: 4,
            ..Default::default()
        };
        let r = census(&m, &opts).unwrap();
        assert_eq!(r.max_independent, 3);
        assert_eq!(r.per_length[3].independent, 0);

        let zero = FpModule::free(a, 0);
        let r = census(
            &zero,
            &CensusOptions {
                length_bound: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.max_independent, 2);

        let line = alg(&f, &["t"], &[], 8);
        let m = FpModule::free(line.clone(), 1);
        let r = census(
            &m,
            &CensusOptions {
                length_bound: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.max_strong, 1);
        // oracle: (t^k u) = (t^k) with ann(t^j) = (t^(8-j)); plain independence
        // needs 8 - k >= k, strong needs 8 - kj >= k whenever kj < 8
        let strong_k = |k: usize| (1..).take_while(|j| k * j < 8).all(|j| 8 - k * j >= k);
        let order = |w: &AlgElem<PrimeField>| w.iter().position(|c| *c != 0).unwrap();
        assert!(strong_k(order(&r.strong_witness[0])));
        let count = |pred: &dyn Fn(usize) -> bool| {
            (1..8)
                .filter(|&k| pred(k))
                .map(|k| 1usize << (7 - k))
                .sum::<usize>()
        };
        assert_eq!(r.per_length[0].strongly_independent, count(&strong_k));
        assert_eq!(r.per_length[0].independent, count(&|k| k <= 4));
        assert!(strong_k(4) && !strong_k(3));
        let g = census(
            &m,
            &CensusOptions {
                length_bound: 2,
                mode: CensusMode::Greedy,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(g.max_strong, 1);
    }

    fn random_elem(
        a: &LocalAlgebra<PrimeField>,
        rng: &mut ChaCha8Rng,
        p: f64,
    ) -> AlgElem<PrimeField> {
        let mut v = a.zero();
        for k in 1..a.dim() {
            if rng.gen_bool(p) {
                v[k] = a.field().random(rng);
            }
        }
        v
    }

    fn random_setup(rng: &mut ChaCha8Rng) -> (Vec<AlgElem<PrimeField>>, FpModule<PrimeField>) {
        let f = gf(5);
        let a = match rng.gen_range(0..3) {
            0 => alg(&f, &["x", "y"], &[], 3),
            1 => alg(&f, &["t"], &[], 6),
            _ => alg(&f, &["x", "y"], &["x*y"], 4),
        };
        let n = rng.gen_range(1..=2);
        let x: Vec<_> = if rng.gen_bool(0.5) {
            a.minimal_generators(&a.max_ideal())
                .into_iter()
                .take(n)
                .collect()
        } else {
            (0..n).map(|_| random_elem(&a, rng, 0.4)).collect()
        };
        let cols: Vec<Vec<AlgElem<PrimeField>>> = (0..rng.gen_range(0..=1))
            .map(|_| vec![random_elem(&a, rng, 0.3)])
            .collect();
        (x, FpModule::from_cokernel(a, 1, &cols).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn definition_agrees_with_koszul(seed in 0u64..1_000_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, m) = random_setup(&mut rng);
            let k = KoszulComplex::new(m.algebra().clone(), x.clone()).unwrap();
            prop_assert_eq!(
                is_independent(&x, &m).unwrap().independent,
                independence_via_koszul(&k, &m).unwrap().independent
            );
        }

        #[test]
        fn independent_sequences_generate_minimally(seed in 0u64..1_000_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, m) = random_setup(&mut rng);
            if !m.is_zero() && is_independent(&x, &m).unwrap().independent {
                let a = m.algebra();
                prop_assert_eq!(a.mu_ideal(&a.ideal_from(&x)), x.len());
            }
        }

        #[test]
        fn free_modules_have_small_relations(seed in 0u64..1_000_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (_, m) = random_setup(&mut rng);
            let a = m.algebra().clone();
            let free = FpModule::free(a.clone(), rng.gen_range(1..=2));
            let gens: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| random_elem(&a, &mut rng, 0.4)).collect();
            let r = relation_submodule(&a.ideal_from(&gens), &free).unwrap();
            prop_assert!(r.space().is_subspace_of(&free.max_ideal_times()));
        }

        #[test]
        fn concatenation(seed in 0u64..1_000_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, m) = random_setup(&mut rng);
            let a = m.algebra().clone();
            let y = vec![random_elem(&a, &mut rng, 0.4)];
            let mut xy = x.clone();
            xy.extend(y.clone());
            let lhs = is_independent(&xy, &m).unwrap().independent;
            let m_y = m.quotient(&m.sequence_times(&y)).unwrap();
            let m_x = m.quotient(&m.sequence_times(&x)).unwrap();
            let rhs = is_independent(&x, &m_y).unwrap().independent
                && is_independent(&y, &m_x).unwrap().independent;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn permanence_along_local_morphisms(seed in 0u64..1_000_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = gf(5);
            let a = alg(&f, &["x", "y"], &[], 3);
            let b = alg(&f, &["u", "v"], &[], 4);
            // x ↦ u + (quadratic), y ↦ v^2 or v
            let imgs = [
                if rng.gen_bool(0.5) { "u" } else { "u + v^2" },
                if rng.gen_bool(0.5) { "v" } else { "u*v + v" },
            ];
            let Ok(phi) = AlgebraMorphism::parse(a.clone(), b.clone(), &imgs) else {
                return Ok(());
            };
            let cols: Vec<Vec<AlgElem<PrimeField>>> =
                (0..rng.gen_range(0..=1)).map(|_| vec![random_elem(&b, &mut rng, 0.3)]).collect();
            let mb = FpModule::from_cokernel(b.clone(), 1, &cols).unwrap();
            let ma = mb.restrict_scalars(&phi).unwrap();
            let x: Vec<_> = (0..rng.gen_range(1..=2)).map(|_| random_elem(&a, &mut rng, 0.5)).collect();
            let fx: Vec<_> = x.iter().map(|e| phi.apply(e)).collect();
            let over_a = is_independent(&x, &ma).unwrap().independent;
            let over_b = is_independent(&fx, &mb).unwrap().independent;
            // independence over A implies independence of the image over B
            prop_assert!(!over_a || over_b);
        }
    }
}
