//! JSON rendering of exact objects. Keys are sorted (the default
//! `serde_json` map is ordered), scalars are strings and rationals read
//! `"p/q"`, so equal inputs produce byte-identical reports.

use serde_json::{json, Value};

use crate::algebra::LocalAlgebra;
use crate::field::Field;
use crate::module::{FpModule, Submodule, TorsionRatio};

pub fn coords<F: Field>(field: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(field.format(c))).collect())
}

/// An algebra element as a polynomial and as coordinates on the monomial basis.
pub fn elem<F: Field>(a: &LocalAlgebra<F>, v: &[F::Elem]) -> Value {
    json!({ "poly": a.format(v), "coords": coords(a.field(), v) })
}

pub fn elems<F: Field>(a: &LocalAlgebra<F>, vs: &[Vec<F::Elem>]) -> Value {
    Value::Array(vs.iter().map(|v| elem(a, v)).collect())
}

/// A module element with its lift to the presenting free module, when known.
pub fn module_elem<F: Field>(m: &FpModule<F>, v: &[F::Elem]) -> Value {
    json!({ "text": m.format_element(v), "coords": coords(m.field(), v) })
}

pub fn module_elems<F: Field>(m: &FpModule<F>, vs: &[Vec<F::Elem>]) -> Value {
    Value::Array(vs.iter().map(|v| module_elem(m, v)).collect())
}

/// `k`-dimension and minimal generators.
pub fn submodule<F: Field>(m: &FpModule<F>, n: &Submodule<F>) -> Value {
    let gens = m.submodule_generators(n).unwrap_or_default();
    json!({ "dim": n.dim(), "generators": module_elems(m, &gens) })
}

pub fn ratio(t: &TorsionRatio) -> Value {
    serde_json::to_value(t).expect("ratios serialize")
}

/// Pretty JSON with a trailing newline.
pub fn emit(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
