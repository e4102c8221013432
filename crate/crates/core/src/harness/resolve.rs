//! Turns an [`InstanceDocument`] into built algebras, morphisms and modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::schema::{pointer, InstanceDocument, ModuleKind, ModuleSpec};
use crate::algebra::{
    AlgElem, AlgebraMorphism, AlgebraPresentation, LocalAlgebra, DEFAULT_MAX_DIM,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::koszul::DEFAULT_MAX_SEQ;
use crate::linkage::DEFAULT_MAX_DET;
use crate::module::FpModule;
use crate::poly::{parse_poly, MonomialOrder};

/// Resource caps, all configurable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `k`-dimension of an algebra or module.
    pub max_dim: usize,
    /// Longest sequence fed to a Koszul complex.
    pub max_seq: usize,
    /// Largest transition matrix whose determinant is expanded.
    pub max_det: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_dim: DEFAULT_MAX_DIM,
            max_seq: DEFAULT_MAX_SEQ,
            max_det: DEFAULT_MAX_DET,
        }
    }
}

/// Every named object of a document, built and validated.
#[derive(Debug)]
pub struct Resolved<F: Field> {
    pub field: F,
    pub caps: Caps,
    pub rings: BTreeMap<String, Arc<LocalAlgebra<F>>>,
    pub morphisms: BTreeMap<String, AlgebraMorphism<F>>,
    pub modules: BTreeMap<String, FpModule<F>>,
}

fn check_names(names: &[String], at: &str) -> Result<()> {
    for (i, v) in names.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::validation(
                format!("{at}/{i}"),
                format!("invalid variable name `{v}`"),
            ));
        }
        if names[..i].contains(v) {
            return Err(Error::validation(
                format!("{at}/{i}"),
                format!("duplicate variable `{v}`"),
            ));
        }
    }
    Ok(())
}

/// Parses polynomial strings in `a`, reporting the index of a bad entry.
pub fn parse_elems<F: Field>(
    a: &LocalAlgebra<F>,
    src: &[String],
    at: &str,
) -> Result<Vec<AlgElem<F>>> {
    src.iter()
        .enumerate()
        .map(|(i, s)| a.parse(s).map_err(|e| e.at(&format!("{at}/{i}"))))
        .collect()
}

impl<F: Field> Resolved<F> {
    pub fn new(field: F, doc: &InstanceDocument, caps: Caps) -> Result<Self> {
        let mut out = Resolved {
            field,
            caps,
            rings: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            modules: BTreeMap::new(),
        };
        for (name, spec) in &doc.rings {
            let at = pointer(&["rings", name]);
            check_names(&spec.vars, &format!("{at}/vars"))?;
            let relations = spec
                .relations
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    parse_poly(&out.field, &spec.vars, r)
                        .map_err(|e| e.at(&format!("{at}/relations/{i}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let order = match &spec.order {
                Some(o) => MonomialOrder::parse(o).map_err(|e| e.at(&format!("{at}/order")))?,
                None => MonomialOrder::Degrevlex,
            };
            let pres = AlgebraPresentation {
                field: out.field.clone(),
                vars: spec.vars.clone(),
                relations,
                truncation: spec.truncation,
                order,
            };
            let a = LocalAlgebra::build(&pres, caps.max_dim).map_err(|e| e.at(&at))?;
            out.rings.insert(name.clone(), Arc::new(a));
        }
        for (name, spec) in &doc.morphisms {
            let at = pointer(&["morphisms", name]);
            let src = out.ring(&spec.source, &format!("{at}/source"))?;
            let tgt = out.ring(&spec.target, &format!("{at}/target"))?;
            let images = parse_elems(&tgt, &spec.images, &format!("{at}/images"))?;
            let phi = AlgebraMorphism::new(src, tgt, images).map_err(|e| e.at(&at))?;
            out.morphisms.insert(name.clone(), phi);
        }
        for (name, spec) in &doc.modules {
            let at = pointer(&["modules", name]);
            let m = out.build_module(spec, &at)?.with_label(name.clone());
            if m.dim() > caps.max_dim {
                return Err(Error::cap("module dimension", caps.max_dim, m.dim()));
            }
            out.modules.insert(name.clone(), m);
        }
        Ok(out)
    }

    pub fn ring(&self, name: &str, at: &str) -> Result<Arc<LocalAlgebra<F>>> {
        self.rings
            .get(name)
            .cloned()
            .ok_or_else(|| Error::validation(at, format!("unknown ring `{name}`")))
    }

    pub fn morphism(&self, name: &str, at: &str) -> Result<&AlgebraMorphism<F>> {
        self.morphisms
            .get(name)
            .ok_or_else(|| Error::validation(at, format!("unknown morphism `{name}`")))
    }

    pub fn module(&self, name: &str, at: &str) -> Result<&FpModule<F>> {
        self.modules
            .get(name)
            .ok_or_else(|| Error::validation(at, format!("unknown module `{name}`")))
    }

    fn build_module(&self, spec: &ModuleSpec, at: &str) -> Result<FpModule<F>> {
        let a = self.ring(&spec.ring, &format!("{at}/ring"))?;
        let rank = spec.rank.unwrap_or(1);
        if rank * a.dim() > self.caps.max_dim {
            return Err(Error::cap(
                "module dimension",
                self.caps.max_dim,
                rank * a.dim(),
            ));
        }
        let m = match spec.kind {
            ModuleKind::Free => {
                if !spec.columns.is_empty() || !spec.ideal.is_empty() {
                    return Err(Error::validation(
                        at,
                        "a free module takes no columns or ideal",
                    ));
                }
                FpModule::free(a, rank)
            }
            ModuleKind::Cokernel => {
                let cols = spec
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let p = format!("{at}/columns/{j}");
                        if c.len() != rank {
                            return Err(Error::validation(
                                p,
                                format!("expected {rank} entries, found {}", c.len()),
                            ));
                        }
                        parse_elems(&a, c, &p)
                    })
                    .collect::<Result<Vec<_>>>()?;
                FpModule::from_cokernel(a, rank, &cols).map_err(|e| e.at(at))?
            }
            ModuleKind::QuotientIdeal => {
                if spec.rank.is_some_and(|r| r != 1) {
                    return Err(Error::validation(
                        format!("{at}/rank"),
                        "a quotient ring has rank 1",
                    ));
                }
                let gens = parse_elems(&a, &spec.ideal, &format!("{at}/ideal"))?;
                FpModule::quotient_ring(a.clone(), &a.ideal_from(&gens)).map_err(|e| e.at(at))?
            }
        };
        match &spec.restrict {
            None => Ok(m),
            Some(name) => {
                let phi = self.morphism(name, &format!("{at}/restrict"))?;
                m.restrict_scalars(phi)
                    .map_err(|e| e.at(&format!("{at}/restrict")))
            }
        }
    }
}
