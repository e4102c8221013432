use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{FpModule, Submodule};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace, Vector};

/// `0 -> K -> A^r -> M -> 0` with `r = mu(M)`.
#[derive(Clone, Debug)]
pub struct PresentationData<F: Field> {
    pub rank: usize,
    /// Images in `M` of the standard basis of `A^r`.
    pub generators: Vec<Vector<F>>,
    pub free: FpModule<F>,
    /// `dim M x (r dim A)` matrix of `A^r -> M`.
    pub pi: Matrix<F>,
    pub kernel: Submodule<F>,
    pub kernel_mu: usize,
}

impl<F: Field> PresentationData<F> {
    /// Minimal generators of `K`, as vectors of `A^r`.
    pub fn kernel_generators(&self) -> Vec<Vector<F>> {
        let k = self.free.submodule_as_module(&self.kernel);
        let basis = self.kernel.space().basis();
        let f = self.free.field();
        k.generators()
            .into_iter()
            .map(|c| {
                let mut v = self.free.zero_vec();
                for (b, coef) in basis.iter().zip(&c) {
                    crate::linalg::axpy(f, &mut v, coef, b);
                }
                v
            })
            .collect()
    }

    /// Columns of the relation matrix `D : A^t -> A^r`, entry `(i, j)` an
    /// element of `A`.
    pub fn relation_columns(&self) -> Vec<Vec<Vector<F>>> {
        let n = self.free.algebra().dim();
        self.kernel_generators()
            .into_iter()
            .map(|v| {
                (0..self.rank)
                    .map(|k| v[k * n..(k + 1) * n].to_vec())
                    .collect()
            })
            .collect()
    }

    pub fn torsion_ratio(&self) -> TorsionRatio {
        TorsionRatio::new(self.kernel_mu, self.rank)
    }
}

/// `mu(K) / mu(M)`, kept unreduced alongside its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorsionRatio {
    pub numerator: usize,
    pub denominator: usize,
}

impl TorsionRatio {
    pub fn new(numerator: usize, denominator: usize) -> Self {
        TorsionRatio {
            numerator,
            denominator,
        }
    }

    pub fn zero() -> Self {
        TorsionRatio::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn value(&self) -> Ratio<u64> {
        if self.denominator == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(self.numerator as u64, self.denominator as u64)
        }
    }

    /// `"2/3"` or `"1"`.
    pub fn reduced(&self) -> String {
        let v = self.value();
        if *v.denom() == 1 {
            v.numer().to_string()
        } else {
            format!("{}/{}", v.numer(), v.denom())
        }
    }
}

impl PartialOrd for TorsionRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TorsionRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value()
            .cmp(&other.value())
            .then(self.denominator.cmp(&other.denominator))
    }
}

/// Serialized with its reduced value as a `"p/q"` string.
impl Serialize for TorsionRatio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TorsionRatio", 3)?;
        st.serialize_field("value", &self.reduced())?;
        st.serialize_field("syzygy_mu", &self.numerator)?;
        st.serialize_field("mu", &self.denominator)?;
        st.end()
    }
}

impl fmt::Display for TorsionRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reduced())
    }
}

impl<F: Field> FpModule<F> {
    /// Matrix of `A^r -> M`, `e_k ↦ g_k`; column `k dim A + i` is
    /// `basis_i * g_k`.
    pub fn surjection_matrix(&self, gens: &[Vector<F>]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = gens.iter().flat_map(|g| self.orbit(g)).collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    pub fn minimal_presentation(&self) -> PresentationData<F> {
        let gens = self.generators();
        let r = gens.len();
        let free = FpModule::free(self.algebra().clone(), r);
        let pi = self.surjection_matrix(&gens);
        let kernel = free
            .submodule_from_space(Subspace::kernel_of(&pi))
            .expect("kernel of a module map is a submodule");
        debug_assert!(kernel.space().is_subspace_of(&free.max_ideal_times()));
        let kernel_mu = free.submodule_as_module(&kernel).mu();
        PresentationData {
            rank: r,
            generators: gens,
            free,
            pi,
            kernel,
            kernel_mu,
        }
    }

    /// `t_A(M) = mu(K) / mu(M)`, zero for `M = 0`.
    pub fn torsion_ratio(&self) -> TorsionRatio {
        if self.is_zero() {
            return TorsionRatio::zero();
        }
        self.minimal_presentation().torsion_ratio()
    }

    /// Ground-truth freeness: both the dimension count and injectivity of
    /// `A^mu -> M` are checked.
    pub fn freeness_oracle(&self) -> bool {
        let mu = self.mu();
        let by_dim = self.dim() == mu * self.algebra().dim();
        let pi = self.surjection_matrix(&self.generators());
        let injective = pi.rank() == pi.cols();
        debug_assert_eq!(by_dim, injective);
        by_dim && injective
    }
}
