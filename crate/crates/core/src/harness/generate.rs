//! Seeded random instances. Every kind draws from a `ChaCha8Rng` seeded by
//! the configuration, so a seed determines the document byte for byte.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::schema::{
    CommandSpec, InstanceDocument, ModuleKind, ModuleSpec, MorphismSpec, Params, RingSpec,
    SCHEMA_VERSION,
};
use crate::algebra::{AlgElem, AlgebraMorphism, AlgebraPresentation, LocalAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::freeness::{certify_balanced_search, SearchCaps};
use crate::independence::is_independent;
use crate::linalg::axpy;
use crate::module::FpModule;
use crate::poly::{Monomial, MonomialOrder, Poly};

const VARS: [&str; 4] = ["x", "y", "z", "w"];
const ATTEMPTS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    RandomAlgebra,
    RandomModule,
    /// `x` = minimal generators of `m_A`, `M/m_A^2 M` free over `A/m_A^2`.
    IndependentPair,
    /// `B = A[t]/(t^e - g)`, free over `A`, with a free `B`-module.
    FlatFiniteMorphism,
    /// `m_A^2 = 0`.
    SquareZero,
    /// An `M`-independent `x = uW` with `u` minimal generators of `m_A`.
    Liaison,
    /// A square-zero base mapping to a `B` that certifies itself, with a
    /// free or non-free `B`-module.
    Balanced,
    /// An unfiltered local morphism with a random target module.
    RandomMorphism,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 8] = [
        GeneratorKind::RandomAlgebra,
        GeneratorKind::RandomModule,
        GeneratorKind::IndependentPair,
        GeneratorKind::FlatFiniteMorphism,
        GeneratorKind::SquareZero,
        GeneratorKind::Liaison,
        GeneratorKind::Balanced,
        GeneratorKind::RandomMorphism,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::RandomAlgebra => "random-algebra",
            GeneratorKind::RandomModule => "random-module",
            GeneratorKind::IndependentPair => "independent-pair",
            GeneratorKind::FlatFiniteMorphism => "flat-finite-morphism",
            GeneratorKind::SquareZero => "square-zero",
            GeneratorKind::Liaison => "liaison",
            GeneratorKind::Balanced => "balanced",
            GeneratorKind::RandomMorphism => "random-morphism",
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub field: FieldSpec,
    /// Largest algebra dimension drawn; larger draws are rejected and redrawn.
    pub max_dim: usize,
    /// Number of variables, `1..=max_vars` (at most 4).
    pub max_vars: usize,
    pub min_truncation: u32,
    pub max_truncation: u32,
    /// Extra relations beyond the truncation, `0..=extra_relations`.
    pub extra_relations: usize,
    /// Module rank, `1..=max_rank`.
    pub max_rank: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            field: FieldSpec::Prime(101),
            max_dim: 24,
            max_vars: 3,
            min_truncation: 2,
            max_truncation: 4,
            extra_relations: 2,
            max_rank: 2,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig {
            seed,
            ..Default::default()
        }
    }
}

/// Draws one instance document of the given kind.
pub fn generate_instance(cfg: &GeneratorConfig, kind: GeneratorKind) -> Result<InstanceDocument> {
    if !(1..=VARS.len()).contains(&cfg.max_vars)
        || cfg.min_truncation < 2
        || cfg.max_truncation < cfg.min_truncation
    {
        return Err(Error::validation("", "generator knobs out of range"));
    }
    match cfg.field {
        FieldSpec::Prime(p) => Gen::new(PrimeField::new(p as u64)?, cfg).run(kind),
        FieldSpec::Rational => Gen::new(Rationals, cfg).run(kind),
    }
}

struct Gen<'a, F: Field> {
    f: F,
    cfg: &'a GeneratorConfig,
    rng: ChaCha8Rng,
}

struct Ring<F: Field> {
    spec: RingSpec,
    alg: Arc<LocalAlgebra<F>>,
}

fn fmt_poly<F: Field>(f: &F, p: &Poly<F>, vars: &[String]) -> String {
    p.format(f, vars, MonomialOrder::Degrevlex)
}

impl<'a, F: Field> Gen<'a, F> {
    fn new(f: F, cfg: &'a GeneratorConfig) -> Self {
        Gen {
            f,
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        }
    }

    fn run(mut self, kind: GeneratorKind) -> Result<InstanceDocument> {
        let mut doc = InstanceDocument {
            schema: SCHEMA_VERSION.into(),
            field: self.f.spec().to_string(),
            rings: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            modules: BTreeMap::new(),
            command: CommandSpec::default(),
        };
        match kind {
            GeneratorKind::RandomAlgebra => {
                let a = self.ring(self.cfg.max_vars)?;
                doc.rings.insert("A".into(), a.spec);
                doc.command = command("edim", Params::default());
            }
            GeneratorKind::RandomModule => {
                let a = self.ring(self.cfg.max_vars)?;
                let m = self.cokernel(&a, 1);
                let len = self.rng.gen_range(1..=3);
                let x: Vec<String> = (0..len).map(|_| self.format_nonzero(&a.alg, 1)).collect();
                doc.rings.insert("A".into(), a.spec);
                doc.modules.insert("M".into(), m);
                doc.command = command("koszul-indep", module_seq("M", x));
            }
            GeneratorKind::IndependentPair => {
                let a = self.ring(self.cfg.max_vars)?;
                let m = self.cokernel(&a, 2);
                let x = self.format_all(&a.alg, &a.alg.minimal_generators(&a.alg.max_ideal()));
                doc.rings.insert("A".into(), a.spec);
                doc.modules.insert("M".into(), m);
                doc.command = command("indep", module_seq("M", x));
            }
            GeneratorKind::SquareZero => {
                let n = self.rng.gen_range(1..=self.cfg.max_vars);
                let a = self.ring_from(n, 2, Vec::new())?;
                let m = self.cokernel(&a, 1);
                doc.rings.insert("A".into(), a.spec);
                doc.modules.insert("M".into(), m);
                doc.command = command(
                    "torsion-ratio",
                    Params {
                        module: Some("M".into()),
                        ..Default::default()
                    },
                );
            }
            GeneratorKind::FlatFiniteMorphism => self.flat_finite(&mut doc)?,
            GeneratorKind::Liaison => self.liaison(&mut doc)?,
            GeneratorKind::Balanced => self.balanced(&mut doc)?,
            GeneratorKind::RandomMorphism => {
                let (a, b, images) = self.morphism_pair(true)?;
                let r = self.rng.gen_range(1..=self.cfg.max_rank);
                let m = self.cokernel_of_rank(&b, "B", r, 1);
                doc.rings.insert("A".into(), a.spec);
                doc.rings.insert("B".into(), b.spec);
                doc.morphisms.insert("phi".into(), morphism_spec(images));
                doc.modules.insert("M".into(), m);
                doc.command = command("torsion-ratio", module_morphism("M"));
            }
        }
        Ok(doc)
    }

    fn names(n: usize) -> Vec<String> {
        VARS[..n].iter().map(|s| s.to_string()).collect()
    }

    /// Builds `k[vars]/(relations + (vars)^d)`, rejecting draws above the cap.
    fn ring_from(&mut self, n: usize, d: u32, relations: Vec<Poly<F>>) -> Result<Ring<F>> {
        self.ring_named(Self::names(n), d, relations)
    }

    fn ring_named(
        &mut self,
        vars: Vec<String>,
        d: u32,
        relations: Vec<Poly<F>>,
    ) -> Result<Ring<F>> {
        let spec = RingSpec {
            relations: relations
                .iter()
                .map(|r| fmt_poly(&self.f, r, &vars))
                .collect(),
            vars: vars.clone(),
            truncation: d,
            order: None,
        };
        let pres = AlgebraPresentation {
            field: self.f.clone(),
            vars,
            relations,
            truncation: d,
            order: MonomialOrder::Degrevlex,
        };
        let alg = Arc::new(LocalAlgebra::build(&pres, self.cfg.max_dim)?);
        Ok(Ring { spec, alg })
    }

    fn ring(&mut self, max_vars: usize) -> Result<Ring<F>> {
        for _ in 0..ATTEMPTS {
            let n = self.rng.gen_range(1..=max_vars);
            let d = self
                .rng
                .gen_range(self.cfg.min_truncation..=self.cfg.max_truncation);
            let k = self.rng.gen_range(0..=self.cfg.extra_relations);
            let rels = (0..k)
                .map(|_| self.relation(n, d))
                .filter(|p| !p.is_zero())
                .collect();
            match self.ring_from(n, d, rels) {
                Ok(r) => return Ok(r),
                Err(Error::CapExceeded { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::cap("generator attempts", ATTEMPTS, ATTEMPTS + 1))
    }

    fn nonzero(&mut self) -> F::Elem {
        loop {
            let c = self.f.random(&mut self.rng);
            if !self.f.is_zero(&c) {
                return c;
            }
        }
    }

    /// One to three terms of degree `2..d`.
    fn relation(&mut self, n: usize, d: u32) -> Poly<F> {
        let mut p = Poly::zero(n);
        if d <= 2 {
            return p;
        }
        for _ in 0..self.rng.gen_range(1..=3) {
            let deg = self.rng.gen_range(2..d);
            let m = Monomial::all_of_degree(n, deg)
                .choose(&mut self.rng)
                .cloned()
                .expect("nonempty");
            let c = self.nonzero();
            p.add_term(&self.f, m, c);
        }
        p
    }

    /// Sparse random element of `m_A^k`.
    fn elem_in_power(&mut self, a: &LocalAlgebra<F>, k: u32) -> AlgElem<F> {
        let mut v = a.zero();
        for (i, m) in a.basis().iter().enumerate() {
            if m.degree() >= k && self.rng.gen_bool(0.35) {
                v[i] = self.nonzero();
            }
        }
        v
    }

    fn format_nonzero(&mut self, a: &LocalAlgebra<F>, k: u32) -> String {
        for _ in 0..ATTEMPTS {
            let v = self.elem_in_power(a, k);
            if !a.is_zero(&v) {
                return a.format(&v);
            }
        }
        "0".into()
    }

    fn format_all(&self, a: &LocalAlgebra<F>, vs: &[AlgElem<F>]) -> Vec<String> {
        vs.iter().map(|v| a.format(v)).collect()
    }

    /// `A^r` modulo up to `r + 1` random columns with entries in `m_A^k`.
    fn cokernel(&mut self, a: &Ring<F>, k: u32) -> ModuleSpec {
        let r = self.rng.gen_range(1..=self.cfg.max_rank);
        self.cokernel_of_rank(a, "A", r, k)
    }

    fn cokernel_of_rank(&mut self, a: &Ring<F>, ring: &str, r: usize, k: u32) -> ModuleSpec {
        let g = self.rng.gen_range(0..=r + 1);
        let columns: Vec<Vec<String>> = (0..g)
            .map(|_| {
                (0..r)
                    .map(|_| a.alg.format(&self.elem_in_power(&a.alg, k)))
                    .collect()
            })
            .collect();
        if columns.is_empty() {
            return free_spec(ring, r);
        }
        ModuleSpec {
            kind: ModuleKind::Cokernel,
            columns,
            ..free_spec(ring, r)
        }
    }

    fn flat_finite(&mut self, doc: &mut InstanceDocument) -> Result<()> {
        for _ in 0..ATTEMPTS {
            let a = self.ring(self.cfg.max_vars)?;
            let e = self.rng.gen_range(2..=3u32);
            if e as usize * a.alg.dim() > self.cfg.max_dim {
                continue;
            }
            let n = a.alg.nvars();
            // g ∈ m_A; a linear part keeps edim(B) = edim(A)
            let mut g = self.elem_in_power(&a.alg, 2);
            if self.rng.gen_bool(0.85) {
                let v = self.rng.gen_range(0..n);
                let c = self.nonzero();
                axpy(&self.f, &mut g, &c, &a.alg.var(v));
            }
            let mut vars = Self::names(n);
            vars.push("t".into());
            let lift = |p: &Poly<F>| -> Poly<F> {
                Poly::from_terms(
                    &self.f,
                    n + 1,
                    p.terms().map(|(m, c)| {
                        let mut ex = m.exps().to_vec();
                        ex.push(0);
                        (Monomial::new(ex), c.clone())
                    }),
                )
            };
            let mut rels: Vec<Poly<F>> = a.alg.groebner_basis().iter().map(lift).collect();
            let mut te = Monomial::one(n + 1).exps().to_vec();
            te[n] = e;
            let tpow = Poly::term(&self.f, self.f.one(), Monomial::new(te));
            rels.push(tpow.sub(&self.f, &lift(&a.alg.to_poly(&g))));
            let d = e * (a.alg.nilpotency() as u32 + 1);
            let b = match self.ring_named(vars, d, rels) {
                Ok(b) => b,
                Err(Error::CapExceeded { .. }) => continue,
                Err(err) => return Err(err),
            };
            if b.alg.dim() != e as usize * a.alg.dim() {
                return Err(Error::PreconditionFailed(
                    "flat extension has the wrong rank".into(),
                ));
            }
            let images = Self::names(n);
            let r = self.rng.gen_range(1..=self.cfg.max_rank);
            doc.rings.insert("A".into(), a.spec);
            doc.rings.insert("B".into(), b.spec);
            doc.morphisms.insert("phi".into(), morphism_spec(images));
            doc.modules.insert("M".into(), free_spec("B", r));
            let mut p = module_morphism("M");
            p.route = Some("desmit".into());
            doc.command = command("certify", p);
            return Ok(());
        }
        Err(Error::cap("generator attempts", ATTEMPTS, ATTEMPTS + 1))
    }

    fn liaison(&mut self, doc: &mut InstanceDocument) -> Result<()> {
        let a = self.ring(self.cfg.max_vars)?;
        let alg = a.alg.clone();
        let ms = if self.rng.gen_bool(0.5) {
            self.cokernel(&a, 2)
        } else {
            free_spec("A", self.rng.gen_range(1..=self.cfg.max_rank))
        };
        let m = build_module(&alg, &ms)?;
        let u = alg.minimal_generators(&alg.max_ideal());
        let n = u.len();
        let mut x = u.clone();
        for _ in 0..ATTEMPTS {
            let w: Vec<Vec<AlgElem<F>>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j && self.rng.gen_bool(0.5) {
                                let mut v = self.elem_in_power(&alg, 1);
                                v[0] = self.nonzero();
                                v
                            } else if i == j {
                                self.elem_in_power(&alg, 1)
                            } else if self.rng.gen_bool(0.4) {
                                self.elem_in_power(&alg, 0)
                            } else {
                                alg.zero()
                            }
                        })
                        .collect()
                })
                .collect();
            let cand: Vec<AlgElem<F>> = (0..n)
                .map(|j| {
                    (0..n).fold(alg.zero(), |acc, i| {
                        alg.add(&acc, &alg.mul(&u[i], &w[i][j]))
                    })
                })
                .collect();
            if is_independent(&cand, &m)?.independent {
                x = cand;
                break;
            }
        }
        doc.rings.insert("A".into(), a.spec);
        doc.modules.insert("M".into(), ms);
        let mut p = module_seq("M", self.format_all(&alg, &x));
        p.u = Some(self.format_all(&alg, &u));
        doc.command = command("liaison", p);
        Ok(())
    }

    /// `A = k[x..]/(x..)^2` and `B = k[u]/(u^L)` or `k[u,v]/(u,v)^L` with
    /// images in `m_B^c`, `2c >= L`, so that `A`'s relations hold.
    fn morphism_pair(
        &mut self,
        allow_deeper_base: bool,
    ) -> Result<(Ring<F>, Ring<F>, Vec<String>)> {
        let n = self.rng.gen_range(1..=self.cfg.max_vars.min(3));
        let a = if allow_deeper_base && self.rng.gen_bool(0.3) {
            self.ring_from(n, 3, Vec::new())?
        } else {
            self.ring_from(n, 2, Vec::new())?
        };
        let two = self.rng.gen_bool(0.35);
        let vars: Vec<String> = if two {
            vec!["u".into(), "v".into()]
        } else {
            vec!["u".into()]
        };
        let top = if two { 5 } else { 8 };
        let l = self.rng.gen_range(3..=top);
        let b = self.ring_named(vars, l, Vec::new())?;
        let depth = a.alg.nilpotency() as u32;
        let c = (l + depth - 1) / depth;
        let images: Vec<String> = (0..n)
            .map(|_| b.alg.format(&self.elem_in_power(&b.alg, c)))
            .collect();
        Ok((a, b, images))
    }

    fn balanced(&mut self, doc: &mut InstanceDocument) -> Result<()> {
        for _ in 0..ATTEMPTS {
            let (a, b, images) = self.morphism_pair(false)?;
            let phi = AlgebraMorphism::parse(
                a.alg.clone(),
                b.alg.clone(),
                &images.iter().map(String::as_str).collect::<Vec<_>>(),
            )?;
            let ring = FpModule::free(b.alg.clone(), 1);
            if !certify_balanced_search(&phi, &ring, &SearchCaps::default())?.certified_free {
                continue;
            }
            let r = self.rng.gen_range(1..=self.cfg.max_rank);
            let m = if self.rng.gen_bool(0.5) {
                free_spec("B", r)
            } else {
                let mut col: Vec<String> = Vec::new();
                for _ in 0..r {
                    col.push(b.alg.format(&self.elem_in_power(&b.alg, 1)));
                }
                if col.iter().all(|s| s == "0") {
                    col[0] = b.alg.var_names()[0].clone();
                }
                ModuleSpec {
                    kind: ModuleKind::Cokernel,
                    columns: vec![col],
                    ..free_spec("B", r)
                }
            };
            doc.rings.insert("A".into(), a.spec);
            doc.rings.insert("B".into(), b.spec);
            doc.morphisms.insert("phi".into(), morphism_spec(images));
            doc.modules.insert("M".into(), m);
            let mut p = module_morphism("M");
            p.route = Some("balanced".into());
            doc.command = command("certify", p);
            return Ok(());
        }
        Err(Error::cap("generator attempts", ATTEMPTS, ATTEMPTS + 1))
    }
}

fn free_spec(ring: &str, r: usize) -> ModuleSpec {
    ModuleSpec {
        kind: ModuleKind::Free,
        ring: ring.into(),
        rank: Some(r),
        columns: Vec::new(),
        ideal: Vec::new(),
        restrict: None,
    }
}

fn build_module<F: Field>(a: &Arc<LocalAlgebra<F>>, spec: &ModuleSpec) -> Result<FpModule<F>> {
    let cols = spec
        .columns
        .iter()
        .map(|c| c.iter().map(|s| a.parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FpModule::from_cokernel(a.clone(), spec.rank.unwrap_or(1), &cols)
}

fn command(name: &str, params: Params) -> CommandSpec {
    CommandSpec {
        name: name.into(),
        params,
    }
}

fn module_seq(m: &str, x: Vec<String>) -> Params {
    Params {
        module: Some(m.into()),
        sequence: Some(x),
        ..Default::default()
    }
}

fn module_morphism(m: &str) -> Params {
    Params {
        module: Some(m.into()),
        morphism: Some("phi".into()),
        ..Default::default()
    }
}

fn morphism_spec(images: Vec<String>) -> MorphismSpec {
    MorphismSpec {
        source: "A".into(),
        target: "B".into(),
        images,
    }
}
