use super::{
    delta_mu, multiplication_morphism, wedge_morphism, ChainComplex, ComplexMorphism, KoszulComplex,
};
use crate::algebra::AlgElem;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, sub_vec, Matrix, Subspace, Vector};
use crate::module::FpModule;

/// `h_i : K_i(x) -> M_(i+1)` together with the corrected morphism
/// `ψ_i = φ_i - f_(i+1) h_i - h_(i-1) d_i`.
#[derive(Clone, Debug)]
pub struct Homotopy<F: Field> {
    /// `h[i][I]` for `i = 0..n`, an element of `M_(i+1)`.
    pub h: Vec<Vec<Vector<F>>>,
    pub psi: ComplexMorphism<F>,
}

impl<F: Field> Homotopy<F> {
    pub fn is_zero(&self, field: &F) -> bool {
        self.h.iter().flatten().flatten().all(|c| field.is_zero(c))
    }
}

fn j_times<F: Field>(x: &KoszulComplex<F>, target: &ChainComplex<F>, i: usize) -> Subspace<F> {
    match target.modules.get(i) {
        Some(m) => m.sequence_times(x.sequence()).space().clone(),
        None => Subspace::zero(x.algebra().field(), 0),
    }
}

/// Builds `h_(n-1), ..., h_0` with `φ_i - f_(i+1) h_i ∈ J_x M_i`, each by an
/// exact linear solve modulo `J_x M_i` with free variables set to zero.
pub fn construct_homotopy<F: Field>(
    x: &KoszulComplex<F>,
    target: &ChainComplex<F>,
    phi: &ComplexMorphism<F>,
) -> Result<Homotopy<F>> {
    if phi.shift != 0 {
        return Err(Error::PreconditionFailed(
            "morphism must have degree zero".into(),
        ));
    }
    let f = x.algebra().field();
    let n = x.len();
    let jm: Vec<Subspace<F>> = (0..=n).map(|i| j_times(x, target, i)).collect();
    for (col, v) in phi.images[n].iter().enumerate() {
        if !jm[n].contains(v) {
            return Err(Error::PreconditionFailed(format!(
                "φ_{n} does not take values in J_x M_{n} (basis element {col})"
            )));
        }
    }
    let mut h: Vec<Vec<Vector<F>>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let fi = &target.diffs[i + 1];
        let comp = jm[i].complement_coords();
        let project = |v: &[F::Elem]| jm[i].quotient_coords(v);
        let cols: Vec<Vector<F>> = (0..fi.cols()).map(|c| project(&fi.column(c))).collect();
        let q = Matrix::from_columns(f, comp.len(), &cols);
        h[i] = phi.images[i]
            .iter()
            .map(|v| {
                q.solve(&project(v)).ok_or_else(|| Error::NoSolution {
                    degree: i,
                    reason: "φ_i is not congruent to f_(i+1) h modulo J_x M_i; \
                             x is not independent on some M_l"
                        .into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
    }
    let images = (0..=n)
        .map(|i| {
            (0..x.rank(i))
                .map(|col| {
                    let mut psi = phi.images[i][col].clone();
                    if i < n {
                        psi = sub_vec(f, &psi, &target.diffs[i + 1].mul_vec(&h[i][col]));
                    }
                    if i > 0 {
                        for t in x.boundary(i, col) {
                            let w = target.act_at(i, &x.sequence()[t.var], &h[i - 1][t.row]);
                            let c = if t.negative { f.one() } else { f.neg(&f.one()) };
                            axpy(f, &mut psi, &c, &w);
                        }
                    }
                    psi
                })
                .collect()
        })
        .collect();
    Ok(Homotopy {
        h,
        psi: ComplexMorphism { shift: 0, images },
    })
}

impl<F: Field> Homotopy<F> {
    /// `ψ` takes values in `J_x M_•` and is a morphism of complexes.
    pub fn verify(&self, x: &KoszulComplex<F>, target: &ChainComplex<F>) -> bool {
        let contained = (0..=x.len()).all(|i| {
            let jm = j_times(x, target, i);
            self.psi.images[i].iter().all(|v| jm.contains(v))
        });
        contained && self.psi.commutes(x, target)
    }
}

/// The diagram for a relation `u μ = 0`: `K(x) -> K(u) -> K(u, M)[1]`,
/// i.e. `φ = δ^μ ∘ Λ W` into `M_l = K_(l+1)(u, M)`.
pub fn relation_diagram<F: Field>(
    x: &KoszulComplex<F>,
    u: &KoszulComplex<F>,
    w: &[Vec<AlgElem<F>>],
    m: &FpModule<F>,
    mu: &[Vector<F>],
) -> Result<(ChainComplex<F>, ComplexMorphism<F>)> {
    let lw = wedge_morphism(w, x, u)?;
    let km = u.with_coefficients(m)?;
    let delta = delta_mu(&km, mu)?;
    let composed = lw.then(u, &delta, km.chain());
    let shifted = km.chain().shifted(1, x.len());
    Ok((
        shifted,
        ComplexMorphism {
            shift: 0,
            images: composed.images,
        },
    ))
}

/// The diagram for `m ∈ M`: `K(x) -> K(u) -> K(u, M)`, `φ = m · Λ W`.
pub fn colon_diagram<F: Field>(
    x: &KoszulComplex<F>,
    u: &KoszulComplex<F>,
    w: &[Vec<AlgElem<F>>],
    module: &FpModule<F>,
    m: &[F::Elem],
) -> Result<(ChainComplex<F>, ComplexMorphism<F>)> {
    let lw = wedge_morphism(w, x, u)?;
    let km = u.with_coefficients(module)?;
    let mult = multiplication_morphism(&km, m);
    let composed = lw.then(u, &mult, km.chain());
    Ok((km.chain().clone(), composed))
}
