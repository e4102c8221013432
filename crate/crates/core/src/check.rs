use serde::Serialize;

use crate::algebra::{IdealSpan, LocalAlgebra};
use crate::field::Field;
use crate::linalg::{Subspace, Vector};
use crate::module::{FpModule, Submodule};

/// One named verdict in a report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    /// For a failed equality: an element on one side but not the other.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn truth(name: &str, holds: bool) -> Self {
        Check {
            name: name.into(),
            holds,
            witness: None,
        }
    }

    pub fn submodules<F: Field>(
        name: &str,
        m: &FpModule<F>,
        lhs: &Submodule<F>,
        rhs: &Submodule<F>,
    ) -> Self {
        Check {
            name: name.into(),
            holds: lhs == rhs,
            witness: difference(lhs.space(), rhs.space()).map(|v| m.format_element(&v)),
        }
    }

    pub fn ideals<F: Field>(
        name: &str,
        a: &LocalAlgebra<F>,
        lhs: &IdealSpan<F>,
        rhs: &IdealSpan<F>,
    ) -> Self {
        Check {
            name: name.into(),
            holds: lhs == rhs,
            witness: difference(lhs.space(), rhs.space()).map(|v| a.format(&v)),
        }
    }
}

pub(crate) fn difference<F: Field>(p: &Subspace<F>, q: &Subspace<F>) -> Option<Vector<F>> {
    p.basis()
        .iter()
        .find(|v| !q.contains(v))
        .or_else(|| q.basis().iter().find(|v| !p.contains(v)))
        .cloned()
}
