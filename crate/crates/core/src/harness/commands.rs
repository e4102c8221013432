//! Command dispatch over a resolved instance.

use std::sync::Arc;

use serde_json::{json, Value};

use super::report;
use super::resolve::{parse_elems, Resolved};
use super::schema::{CommandSpec, Params};
use crate::algebra::defining_ideal_mu;
use crate::algebra::{AlgElem, LocalAlgebra};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::freeness::{
    certify_balanced, certify_balanced_search, certify_desmit, certify_special_fiber,
    certify_special_fiber_kernel, certify_strong_independence_freeness, lower_bound_check,
    ring_torsion_ratio, SearchCaps,
};
use crate::independence::{
    census, is_independent, is_strongly_independent, relation_submodule, CensusMode, CensusOptions,
};
use crate::koszul::{higher_kernel_inclusion, independence_via_koszul, KoszulComplex};
use crate::linkage::{fitting_ideal, solve_transition, verify_liaison};
use crate::module::FpModule;

pub const COMMANDS: &[&str] = &[
    "edim",
    "ci-test",
    "indep",
    "strong-indep",
    "relations",
    "koszul-homology",
    "koszul-indep",
    "liaison",
    "fitting",
    "torsion-ratio",
    "certify",
    "census",
    "oracle-free",
];

pub const ROUTES: &[&str] = &[
    "strong",
    "balanced",
    "special-fiber",
    "special-fiber-kernel",
    "desmit",
];

const P: &str = "/command/params";

fn at(key: &str) -> String {
    format!("{P}/{key}")
}

fn missing(key: &str) -> Error {
    Error::validation(at(key), "required parameter is missing")
}

struct Ctx<'a, F: Field> {
    r: &'a Resolved<F>,
    p: &'a Params,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn module(&self) -> Result<&'a FpModule<F>> {
        let name = self.p.module.as_deref().ok_or_else(|| missing("module"))?;
        self.r.module(name, &at("module"))
    }

    /// The named module, or the free module of rank one over the ring.
    fn module_or_ring(&self) -> Result<FpModule<F>> {
        match self.p.module {
            Some(_) => self.module().cloned(),
            None => Ok(FpModule::free(self.ring()?, 1)),
        }
    }

    /// `ring`, else the ring of `module`, else the only ring of the document.
    fn ring(&self) -> Result<Arc<LocalAlgebra<F>>> {
        if let Some(name) = &self.p.ring {
            return self.r.ring(name, &at("ring"));
        }
        if self.p.module.is_some() {
            return Ok(self.module()?.algebra().clone());
        }
        match self.r.rings.values().collect::<Vec<_>>().as_slice() {
            [a] => Ok((*a).clone()),
            _ => Err(missing("ring")),
        }
    }

    fn morphism(&self) -> Result<Option<&'a crate::algebra::AlgebraMorphism<F>>> {
        self.p
            .morphism
            .as_deref()
            .map(|n| self.r.morphism(n, &at("morphism")))
            .transpose()
    }

    fn elems(
        &self,
        a: &LocalAlgebra<F>,
        key: &str,
        src: &Option<Vec<String>>,
    ) -> Result<Vec<AlgElem<F>>> {
        let src = src.as_ref().ok_or_else(|| missing(key))?;
        if src.len() > self.r.caps.max_seq {
            return Err(Error::cap(
                "sequence length",
                self.r.caps.max_seq,
                src.len(),
            ));
        }
        parse_elems(a, src, &at(key))
    }

    fn sequence(&self, a: &LocalAlgebra<F>) -> Result<Vec<AlgElem<F>>> {
        self.elems(a, "sequence", &self.p.sequence)
    }

    /// `ideal`, falling back to the ideal of `sequence`.
    fn ideal_gens(&self, a: &LocalAlgebra<F>) -> Result<Vec<AlgElem<F>>> {
        match &self.p.ideal {
            Some(_) => self.elems(a, "ideal", &self.p.ideal),
            None => self.sequence(a).map_err(|_| missing("ideal")),
        }
    }
}

/// Runs one command and returns its structured result.
pub fn run_command<F: Field>(r: &Resolved<F>, cmd: &CommandSpec) -> Result<Value> {
    let c = Ctx { r, p: &cmd.params };
    match cmd.name.as_str() {
        "edim" => edim(&c),
        "ci-test" => ci_test(&c),
        "indep" => indep(&c),
        "strong-indep" => strong_indep(&c),
        "relations" => relations(&c),
        "koszul-homology" => koszul_homology(&c),
        "koszul-indep" => koszul_indep(&c),
        "liaison" => liaison(&c),
        "fitting" => fitting(&c),
        "torsion-ratio" => torsion_ratio(&c),
        "certify" => certify(&c),
        "census" => run_census(&c),
        "oracle-free" => oracle_free(&c),
        other => Err(Error::validation(
            "/command/name",
            format!(
                "unknown command `{other}`, expected one of {}",
                COMMANDS.join(", ")
            ),
        )),
    }
}

fn edim<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let a = c.ring()?;
    let gens = a.minimal_generators(&a.max_ideal());
    let basis: Vec<String> = a.basis().iter().map(|m| m.format(a.var_names())).collect();
    let pres = a.presentation();
    let gb: Vec<String> = a
        .groebner_basis()
        .iter()
        .map(|g| g.format(a.field(), &pres.vars, pres.order))
        .collect();
    Ok(json!({
        "dim": a.dim(),
        "edim": a.edim(),
        "nilpotency": a.nilpotency(),
        "basis": basis,
        "groebner_basis": gb,
        "max_ideal_generators": report::elems(&a, &gens),
    }))
}

fn ci_test<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let (ring, of) = match c.morphism()? {
        Some(phi) => {
            let mab = phi.extend_ideal(&phi.source().max_ideal())?;
            (phi.target().quotient(&mab)?, "special fiber B/m_A B")
        }
        None => (c.ring()?, "ring"),
    };
    let (e, mu) = defining_ideal_mu(&ring);
    Ok(json!({
        "of": of,
        "dim": ring.dim(),
        "edim": e,
        "defining_ideal_mu": mu,
        "complete_intersection": e == mu,
    }))
}

fn indep<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module_or_ring()?;
    let x = c.sequence(m.algebra())?;
    let rep = is_independent(&x, &m)?;
    Ok(json!({
        "independent": rep.independent,
        "relations": report::submodule(&m, &rep.relations),
        "ideal_times_module": report::submodule(&m, &rep.ideal_times),
        "witness": rep.witness.as_ref().map(|w| report::module_elems(&m, w)),
    }))
}

fn strong_indep<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module_or_ring()?;
    let a = m.algebra();
    let gens = c.ideal_gens(a)?;
    let rep = is_strongly_independent(&a.ideal_from(&gens), &m)?;
    Ok(json!({
        "strongly_independent": rep.independent,
        "failing_power": rep.failing_power,
        "relations": report::submodule(&m, &rep.relations),
        "ideal_times_module": report::submodule(&m, &rep.ideal_times),
        "witness": rep.witness.as_ref().map(|w| report::module_elems(&m, w)),
        "witness_sequence": report::elems(a, &rep.witness_sequence),
    }))
}

fn relations<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module_or_ring()?;
    let a = m.algebra();
    let ideal = a.ideal_from(&c.ideal_gens(a)?);
    let rel = relation_submodule(&ideal, &m)?;
    let im = m.ideal_times(&ideal)?;
    Ok(json!({
        "relations": report::submodule(&m, &rel),
        "ideal_times_module": report::submodule(&m, &im),
        "contained": rel.is_subset_of(&im),
        "ideal_generators": report::elems(a, &a.minimal_generators(&ideal)),
    }))
}

fn koszul_homology<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module_or_ring()?;
    let a = m.algebra().clone();
    let x = c.sequence(&a)?;
    let k = KoszulComplex::with_cap(a, x, c.r.caps.max_seq)?;
    let km = k.with_coefficients(&m)?;
    let ranks: Vec<usize> = (0..=k.len()).map(|l| k.rank(l)).collect();
    let dims: Vec<usize> = (0..=k.len()).map(|l| km.chain().dim_at(l)).collect();
    Ok(json!({
        "length": k.len(),
        "ranks": ranks,
        "chain_dims": dims,
        "homology_dims": km.homology_dims(),
    }))
}

fn koszul_indep<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module_or_ring()?;
    let a = m.algebra().clone();
    let x = c.sequence(&a)?;
    let def = is_independent(&x, &m)?;
    let k = KoszulComplex::with_cap(a, x, c.r.caps.max_seq)?;
    let kz = independence_via_koszul(&k, &m)?;
    if def.independent != kz.independent {
        return Err(Error::Disagreement(format!(
            "definition says {}, Koszul complex says {}",
            def.independent, kz.independent
        )));
    }
    let higher = if k.is_empty() {
        Vec::new()
    } else {
        let km = k.with_coefficients(&m)?;
        let zero = m.zero_submodule();
        (1..=k.len())
            .map(|l| higher_kernel_inclusion(&km, l, &zero))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(json!({
        "independent": kz.independent,
        "definition": def.independent,
        "koszul": kz.independent,
        "higher_kernel_inclusion": higher,
        "witness": kz.witness.as_ref().map(|w| report::module_elems(&m, w)),
    }))
}

fn liaison<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module_or_ring()?;
    let a = m.algebra();
    let x = c.sequence(a)?;
    let u = c.elems(a, "u", &c.p.u)?;
    let t = solve_transition(a, &x, &u, c.r.caps.max_det)?;
    let rep = verify_liaison(&m, &t)?;
    if let Some(f) = rep.failures().first() {
        return Err(Error::TheoremFalsified(format!(
            "linkage check `{}` fails",
            f.name
        )));
    }
    let mut v = serde_json::to_value(&rep).expect("reports serialize");
    v["all_hold"] = json!(rep.all_hold());
    Ok(v)
}

fn fitting<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let a = c.ring()?;
    let x = c.sequence(&a)?;
    let u = c.elems(&a, "u", &c.p.u)?;
    let fit = fitting_ideal(&a, &x, &u)?;
    let t = solve_transition(&a, &x, &u, c.r.caps.max_det)?;
    let q = &fit.quotient;
    let delta_bar = q.ideal_from(&[fit.projection.apply(&t.delta)]);
    let eq = Check::ideals("Fit(J_u/J_x) = (Δ)", q, &fit.ideal, &delta_bar);
    Ok(json!({
        "delta": report::elem(&a, &t.delta),
        "fitting_generators": report::elems(q, &q.minimal_generators(&fit.ideal)),
        "fitting_dim": fit.ideal.dim(),
        "equals_delta_ideal": eq,
    }))
}

fn torsion_ratio<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module()?;
    let Some(phi) = c.morphism()? else {
        let pres = m.minimal_presentation();
        return Ok(json!({ "torsion_ratio": report::ratio(&pres.torsion_ratio()) }));
    };
    let ma = m.restrict_scalars(phi)?;
    let t = ma.torsion_ratio();
    let tb = ring_torsion_ratio(phi)?;
    let (a, b) = (phi.source(), phi.target());
    let lb = if m.is_zero() {
        None
    } else {
        Some(lower_bound_check(phi, m)?)
    };
    Ok(json!({
        "torsion_ratio": report::ratio(&t),
        "ring_torsion_ratio": report::ratio(&tb),
        "edim_source": a.edim(),
        "edim_target": b.edim(),
        "edim_difference": a.edim() as i64 - b.edim() as i64,
        "lower_bound": lb,
    }))
}

fn certify<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let route = c.p.route.as_deref().ok_or_else(|| missing("route"))?;
    let m = c.module_or_ring()?;
    let phi = || c.morphism()?.ok_or_else(|| missing("morphism"));
    let order = |a: &LocalAlgebra<F>| -> Result<Option<Vec<AlgElem<F>>>> {
        c.p.order
            .as_ref()
            .map(|_| c.elems(a, "order", &c.p.order))
            .transpose()
    };
    let cert = match route {
        "strong" => {
            let a = m.algebra();
            let ideal = match &c.p.ideal {
                Some(_) => a.ideal_from(&c.ideal_gens(a)?),
                None => a.max_ideal(),
            };
            certify_strong_independence_freeness(&m, &ideal)?
        }
        "balanced" => {
            let phi = phi()?;
            match (c.p.delta, order(phi.source())?) {
                (Some(d), Some(x)) => certify_balanced(phi, &m, d, &x)?,
                (None, None) => certify_balanced_search(phi, &m, &SearchCaps::default())?,
                _ => return Err(Error::validation(P, "`delta` and `order` go together")),
            }
        }
        "special-fiber" => certify_special_fiber(phi()?, &m)?,
        "special-fiber-kernel" => {
            let phi = phi()?;
            let x = match order(phi.source())? {
                Some(x) => x,
                None => phi.source().minimal_generators(&phi.source().max_ideal()),
            };
            certify_special_fiber_kernel(phi, &m, c.p.delta.unwrap_or(0), &x)?
        }
        "desmit" => certify_desmit(phi()?, &m)?,
        other => {
            return Err(Error::validation(
                at("route"),
                format!(
                    "unknown route `{other}`, expected one of {}",
                    ROUTES.join(", ")
                ),
            ))
        }
    };
    Ok(serde_json::to_value(&cert).expect("certificates serialize"))
}

fn run_census<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module_or_ring()?;
    let a = m.algebra();
    let mut opts = CensusOptions::default();
    if let Some(l) = c.p.length_bound {
        if l > c.r.caps.max_seq {
            return Err(Error::cap("census length bound", c.r.caps.max_seq, l));
        }
        opts.length_bound = l;
    }
    if let Some(b) = c.p.coefficient_bound {
        opts.coefficient_bound = b;
    }
    opts.mode = match c.p.mode.as_deref() {
        None | Some("exhaustive") => CensusMode::Exhaustive,
        Some("greedy") => CensusMode::Greedy,
        Some(o) => {
            return Err(Error::validation(
                at("mode"),
                format!("unknown census mode `{o}`"),
            ))
        }
    };
    let rep = census(&m, &opts)?;
    Ok(json!({
        "mode": rep.mode,
        "candidates": rep.candidates,
        "per_length": rep.per_length,
        "max_independent": rep.max_independent,
        "independent_witness": report::elems(a, &rep.independent_witness),
        "max_strong": rep.max_strong,
        "strong_witness": report::elems(a, &rep.strong_witness),
    }))
}

fn oracle_free<F: Field>(c: &Ctx<F>) -> Result<Value> {
    let m = c.module()?;
    let m = match c.morphism()? {
        Some(phi) => m.restrict_scalars(phi)?,
        None => m.clone(),
    };
    Ok(json!({
        "free": m.freeness_oracle(),
        "dim": m.dim(),
        "mu": m.mu(),
        "algebra_dim": m.algebra().dim(),
    }))
}
