//! Koszul complexes `K(x)` and `K(x, M)`.
//!
//! Degree `l` has basis the strictly increasing `l`-tuples of indices into
//! the sequence, and
//! `d(e_{i_1} ∧ ... ∧ e_{i_l}) = Σ_j (-1)^(j-1) x_{i_j} e_{... omit i_j ...}`.

mod homotopy;
mod morphism;

pub use homotopy::{colon_diagram, construct_homotopy, relation_diagram, Homotopy};
pub use morphism::{delta_mu, multiplication_morphism, wedge_morphism, ComplexMorphism};

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{AlgElem, IdealSpan, LocalAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::module::{FpModule, Submodule};

pub const DEFAULT_MAX_SEQ: usize = 12;

/// Strictly increasing `l`-subsets of `0..n`, in lexicographic order.
pub fn tuples(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l <= n {
        go(0, n, l, &mut Vec::new(), &mut out);
    }
    out
}

/// One summand `± x_var e_row` of `d(e_col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub row: usize,
    pub var: usize,
    pub negative: bool,
}

#[derive(Clone, Debug)]
pub struct KoszulComplex<F: Field> {
    algebra: Arc<LocalAlgebra<F>>,
    seq: Vec<AlgElem<F>>,
    tuples: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl<F: Field> KoszulComplex<F> {
    pub fn new(algebra: Arc<LocalAlgebra<F>>, seq: Vec<AlgElem<F>>) -> Result<Self> {
        Self::with_cap(algebra, seq, DEFAULT_MAX_SEQ)
    }

    pub fn with_cap(
        algebra: Arc<LocalAlgebra<F>>,
        seq: Vec<AlgElem<F>>,
        max_len: usize,
    ) -> Result<Self> {
        let n = seq.len();
        if n > max_len {
            return Err(Error::cap("sequence length", max_len, n));
        }
        if seq.iter().any(|s| s.len() != algebra.dim()) {
            return Err(Error::AlgebraMismatch);
        }
        let tuples: Vec<_> = (0..=n).map(|l| tuples(n, l)).collect();
        let index = tuples
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        let k = KoszulComplex {
            algebra,
            seq,
            tuples,
            index,
        };
        for l in 2..=n {
            for col in 0..k.rank(l) {
                let mut acc = vec![k.algebra.zero(); k.rank(l - 2)];
                for t in k.boundary(l, col) {
                    for s in k.boundary(l - 1, t.row) {
                        let prod = k.algebra.mul(&k.seq[t.var], &k.seq[s.var]);
                        acc[s.row] = if t.negative != s.negative {
                            k.algebra.sub(&acc[s.row], &prod)
                        } else {
                            k.algebra.add(&acc[s.row], &prod)
                        };
                    }
                }
                if acc.iter().any(|a| !k.algebra.is_zero(a)) {
                    return Err(Error::PreconditionFailed(format!("d^2 != 0 in degree {l}")));
                }
            }
        }
        Ok(k)
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra<F>> {
        &self.algebra
    }
    pub fn sequence(&self) -> &[AlgElem<F>] {
        &self.seq
    }
    /// Length `n` of the sequence.
    pub fn len(&self) -> usize {
        self.seq.len()
    }
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }
    /// `C(n, l)`.
    pub fn rank(&self, l: usize) -> usize {
        self.tuples.get(l).map_or(0, |t| t.len())
    }
    pub fn tuples(&self, l: usize) -> &[Vec<usize>] {
        &self.tuples[l]
    }
    pub fn tuple_index(&self, l: usize, t: &[usize]) -> Option<usize> {
        self.index.get(l)?.get(t).copied()
    }

    /// Terms of `d_l(e_I)` for `I = tuples(l)[col]`.
    pub fn boundary(&self, l: usize, col: usize) -> Vec<BoundaryTerm> {
        let t = &self.tuples[l][col];
        (0..l)
            .map(|j| {
                let mut rest = t.clone();
                let var = rest.remove(j);
                BoundaryTerm {
                    row: self.index[l - 1][&rest],
                    var,
                    negative: j % 2 == 1,
                }
            })
            .collect()
    }

    /// `d_l` as a `C(n, l-1) x C(n, l)` matrix over the algebra.
    pub fn differential(&self, l: usize) -> Vec<Vec<AlgElem<F>>> {
        let a = &self.algebra;
        let mut out = vec![vec![a.zero(); self.rank(l)]; self.rank(l.wrapping_sub(1))];
        if l == 0 || l > self.len() {
            return out;
        }
        for col in 0..self.rank(l) {
            for t in self.boundary(l, col) {
                out[t.row][col] = if t.negative {
                    a.neg(&self.seq[t.var])
                } else {
                    self.seq[t.var].clone()
                };
            }
        }
        out
    }

    /// `J_x`.
    pub fn ideal(&self) -> IdealSpan<F> {
        self.algebra.ideal_of_sequence(&self.seq)
    }

    pub fn with_coefficients(&self, m: &FpModule<F>) -> Result<KoszulWithCoefficients<F>> {
        KoszulWithCoefficients::new(self.clone(), m.clone())
    }

    /// `K(x) = K(x, A)`.
    pub fn free_complex(&self) -> KoszulWithCoefficients<F> {
        let a = FpModule::free(self.algebra.clone(), 1);
        KoszulWithCoefficients::new(self.clone(), a).expect("same algebra")
    }
}

/// A bounded complex `M_0 <- M_1 <- ... <- M_top` of modules with
/// `k`-linear differentials; `diffs[l] : M_l -> M_(l-1)` and `diffs[0]`
/// has no rows.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    pub modules: Vec<FpModule<F>>,
    pub diffs: Vec<Matrix<F>>,
}

impl<F: Field> ChainComplex<F> {
    pub fn top(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }

    pub fn dim_at(&self, l: usize) -> usize {
        self.modules.get(l).map_or(0, |m| m.dim())
    }

    /// `d_l(v)`, zero outside the stored range.
    pub fn apply_diff(&self, l: usize, v: &[F::Elem]) -> Vector<F> {
        let f = self.modules[0].field();
        if l == 0 || l >= self.modules.len() {
            return crate::linalg::zero_vec(f, if l == 0 { 0 } else { self.dim_at(l - 1) });
        }
        self.diffs[l].mul_vec(v)
    }

    /// `a v` in degree `l`.
    pub fn act_at(&self, l: usize, a: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        match self.modules.get(l) {
            Some(m) => m.act(a, v),
            None => Vec::new(),
        }
    }

    pub fn is_complex(&self) -> bool {
        (2..self.diffs.len()).all(|l| self.diffs[l - 1].mul(&self.diffs[l]).is_zero())
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.modules.len())
            .map(|l| {
                let ker = self.dim_at(l) - self.diffs[l].rank();
                let im = self.diffs.get(l + 1).map_or(0, |d| d.rank());
                ker - im
            })
            .collect()
    }

    /// `M'_l = M_(l+s)` for `l = 0..=top`, padded with zero modules.
    pub fn shifted(&self, s: usize, top: usize) -> ChainComplex<F> {
        let alg = self.modules[0].algebra().clone();
        let f = alg.field().clone();
        let modules: Vec<FpModule<F>> = (0..=top)
            .map(|l| {
                self.modules
                    .get(l + s)
                    .cloned()
                    .unwrap_or_else(|| FpModule::free(alg.clone(), 0))
            })
            .collect();
        let diffs = (0..=top)
            .map(|l| {
                if l == 0 {
                    Matrix::zero(&f, 0, modules[0].dim())
                } else {
                    match self.diffs.get(l + s) {
                        Some(d) => d.clone(),
                        None => Matrix::zero(&f, modules[l - 1].dim(), modules[l].dim()),
                    }
                }
            })
            .collect();
        ChainComplex { modules, diffs }
    }
}

/// `K(x, M) = K(x) ⊗ M`, with `K_l(x, M) = M^C(n, l)` ordered by tuple.
#[derive(Clone, Debug)]
pub struct KoszulWithCoefficients<F: Field> {
    complex: KoszulComplex<F>,
    module: FpModule<F>,
    actions: Vec<Matrix<F>>,
    chain: ChainComplex<F>,
}

impl<F: Field> KoszulWithCoefficients<F> {
    pub fn new(complex: KoszulComplex<F>, module: FpModule<F>) -> Result<Self> {
        if module.algebra().id() != complex.algebra.id() {
            return Err(Error::AlgebraMismatch);
        }
        let f = module.field().clone();
        let d = module.dim();
        let n = complex.len();
        let actions: Vec<Matrix<F>> = complex
            .seq
            .iter()
            .map(|x| module.action_matrix(x))
            .collect();
        let negs: Vec<Matrix<F>> = actions.iter().map(|x| x.scale(&f.neg(&f.one()))).collect();
        let modules: Vec<FpModule<F>> = (0..=n).map(|l| module.power(complex.rank(l))).collect();
        let mut diffs = vec![Matrix::zero(&f, 0, modules[0].dim())];
        for l in 1..=n {
            let mut dl = Matrix::zero(&f, complex.rank(l - 1) * d, complex.rank(l) * d);
            for col in 0..complex.rank(l) {
                for t in complex.boundary(l, col) {
                    let block = if t.negative {
                        &negs[t.var]
                    } else {
                        &actions[t.var]
                    };
                    dl.set_block(t.row * d, col * d, block);
                }
            }
            diffs.push(dl);
        }
        let chain = ChainComplex { modules, diffs };
        if !chain.is_complex() {
            return Err(Error::PreconditionFailed("d^2 != 0 on K(x, M)".into()));
        }
        Ok(KoszulWithCoefficients {
            complex,
            module,
            actions,
            chain,
        })
    }

    pub fn complex(&self) -> &KoszulComplex<F> {
        &self.complex
    }
    pub fn module(&self) -> &FpModule<F> {
        &self.module
    }
    pub fn chain(&self) -> &ChainComplex<F> {
        &self.chain
    }
    pub fn differential(&self, l: usize) -> &Matrix<F> {
        &self.chain.diffs[l]
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        self.chain.homology_dims()
    }

    /// `J_x K_l(x, M)`: images of every `x_j` acting blockwise.
    pub fn j_times(&self, l: usize) -> Subspace<F> {
        let f = self.module.field();
        let c = self.complex.rank(l);
        let d = self.module.dim();
        let mut vecs = Vec::new();
        for x in &self.actions {
            for b in 0..c {
                for j in 0..d {
                    let mut v = crate::linalg::zero_vec(f, c * d);
                    v[b * d..(b + 1) * d].clone_from_slice(&x.column(j));
                    vecs.push(v);
                }
            }
        }
        Subspace::span(f, c * d, vecs)
    }

    /// `S^C(n, l)` inside `K_l(x, M)`.
    pub fn blockwise(&self, s: &Subspace<F>, l: usize) -> Subspace<F> {
        let f = self.module.field();
        let c = self.complex.rank(l);
        let d = self.module.dim();
        let mut vecs = Vec::new();
        for b in 0..c {
            for w in s.basis() {
                let mut v = crate::linalg::zero_vec(f, c * d);
                v[b * d..(b + 1) * d].clone_from_slice(w);
                vecs.push(v);
            }
        }
        Subspace::span(f, c * d, vecs)
    }

    /// Cohomology dimensions of `Hom(K(x), M)`, with `Hom(K_l, M) = M^C(n, l)`
    /// and `(δφ)(e_I) = φ(d e_I)`.
    pub fn hom_cohomology_dims(&self) -> Vec<usize> {
        let f = self.module.field();
        let d = self.module.dim();
        let n = self.complex.len();
        let k = &self.complex;
        // cob[l] : Hom(K_(l-1), M) -> Hom(K_l, M)
        let mut cob: Vec<Matrix<F>> = vec![Matrix::zero(f, k.rank(0) * d, 0)];
        for l in 1..=n {
            let mut m = Matrix::zero(f, k.rank(l) * d, k.rank(l - 1) * d);
            for (col, t) in k.tuples(l).iter().enumerate() {
                for (j, &var) in t.iter().enumerate() {
                    let mut rest = t.clone();
                    rest.remove(j);
                    let row = k.tuple_index(l - 1, &rest).expect("subtuple");
                    let x = if j % 2 == 1 {
                        self.actions[var].scale(&f.neg(&f.one()))
                    } else {
                        self.actions[var].clone()
                    };
                    m.set_block(col * d, row * d, &x);
                }
            }
            cob.push(m);
        }
        (0..=n)
            .map(|l| {
                let ker = k.rank(l) * d - cob.get(l + 1).map_or(0, |c| c.rank());
                ker - cob[l].rank()
            })
            .collect()
    }
}

/// Outcome of the degree-one Koszul test.
#[derive(Clone, Debug)]
pub struct KoszulIndependence<F: Field> {
    pub independent: bool,
    /// A cycle `(m_1, ..., m_n)` of `K_1(x, M)` outside `J_x K_1(x, M)`.
    pub witness: Option<Vec<Vector<F>>>,
}

/// `x` is `M`-independent iff `Ker d_1^(x, M) ⊆ J_x K_1(x, M)`.
pub fn independence_via_koszul<F: Field>(
    x: &KoszulComplex<F>,
    m: &FpModule<F>,
) -> Result<KoszulIndependence<F>> {
    if x.is_empty() {
        return Ok(KoszulIndependence {
            independent: true,
            witness: None,
        });
    }
    let km = x.with_coefficients(m)?;
    let ker = Subspace::kernel_of(km.differential(1));
    let jk = km.j_times(1);
    let d = m.dim();
    let witness = ker.basis().iter().find(|v| !jk.contains(v)).map(|v| {
        v.chunks(d.max(1))
            .map(|c| c.to_vec())
            .take(x.len())
            .collect()
    });
    Ok(KoszulIndependence {
        independent: witness.is_none(),
        witness,
    })
}

/// `d_l^(-1)(J_x K_(l-1)(x, N)) ⊆ K_l(x, N) + J_x K_l(x, M)`.
pub fn higher_kernel_inclusion<F: Field>(
    km: &KoszulWithCoefficients<F>,
    l: usize,
    n: &Submodule<F>,
) -> Result<bool> {
    let k = km.complex();
    if l == 0 || l > k.len() {
        return Err(Error::PreconditionFailed(format!(
            "degree {l} outside 1..={}",
            k.len()
        )));
    }
    let m = km.module();
    let jn = m.sequence_times_sub(k.sequence(), n)?;
    let target = km.blockwise(jn.space(), l - 1);
    let lhs = Subspace::preimage(km.differential(l), &target);
    let rhs = km.blockwise(n.space(), l).sum(&km.j_times(l));
    Ok(lhs.is_subspace_of(&rhs))
}
