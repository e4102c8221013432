use super::{AlgElem, LocalAlgebra};
use crate::field::Field;

impl<F: Field> LocalAlgebra<F> {
    /// Determinant of a square matrix over the algebra (row-major).
    ///
    /// Expands along the last row with memoization over column subsets:
    /// `dp[S]` is the minor on rows `0..|S|` and columns `S`.
    pub fn det(&self, m: &[Vec<AlgElem<F>>]) -> AlgElem<F> {
        let n = m.len();
        if n == 0 {
            return self.one();
        }
        let mut dp: Vec<Option<AlgElem<F>>> = vec![None; 1 << n];
        dp[0] = Some(self.one());
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let row = &m[k - 1];
            let mut acc = self.zero();
            for c in 0..n {
                if mask & (1 << c) == 0 || self.is_zero(&row[c]) {
                    continue;
                }
                let rest = dp[mask & !(1 << c)]
                    .as_ref()
                    .expect("smaller subsets first");
                let term = self.mul(&row[c], rest);
                let above = (mask >> (c + 1)).count_ones();
                acc = if above % 2 == 0 {
                    self.add(&acc, &term)
                } else {
                    self.sub(&acc, &term)
                };
            }
            dp[mask] = Some(acc);
        }
        dp[(1 << n) - 1].take().expect("full mask computed")
    }

    /// Minor on the given rows and columns.
    pub fn minor(&self, m: &[Vec<AlgElem<F>>], rows: &[usize], cols: &[usize]) -> AlgElem<F> {
        let sub: Vec<Vec<AlgElem<F>>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
            .collect();
        self.det(&sub)
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::AlgebraPresentation;
    use crate::field::{Field, PrimeField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn parity(p: &[usize]) -> bool {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }

    #[test]
    fn small_cases() {
        let f = PrimeField::new(11).unwrap();
        let a = AlgebraPresentation::new(&f, &["x"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let x = a.var(0);
        assert_eq!(a.det(&[]), a.one());
        let id = vec![vec![a.one(), a.zero()], vec![a.zero(), a.one()]];
        assert_eq!(a.det(&id), a.one());
        let two = a.scalar(2);
        let diag = vec![vec![x.clone(), a.zero()], vec![a.zero(), two.clone()]];
        assert_eq!(a.det(&diag), a.mul(&x, &two));
    }

    #[test]
    fn matches_leibniz_sum() {
        let f = PrimeField::new(11).unwrap();
        let a = AlgebraPresentation::new(&f, &["x"], &[], 3)
            .unwrap()
            .build()
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(1..=4);
            let m: Vec<Vec<Vec<u32>>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| (0..a.dim()).map(|_| f.random(&mut rng)).collect())
                        .collect()
                })
                .collect();
            let mut leibniz = a.zero();
            for p in permutations(n) {
                let mut t = a.one();
                for (i, &j) in p.iter().enumerate() {
                    t = a.mul(&t, &m[i][j]);
                }
                leibniz = if parity(&p) {
                    a.sub(&leibniz, &t)
                } else {
                    a.add(&leibniz, &t)
                };
            }
            assert_eq!(a.det(&m), leibniz);
        }
    }
}
