//! Free iff a strongly independent sequence of length edim(A) exists,
//! checked in both directions on small random modules.

use indepforge::freeness::certify_strong_independence_freeness;
use indepforge::harness::{generate_instance, Caps, GeneratorConfig, GeneratorKind, Resolved};
use indepforge::independence::{census, is_strongly_independent, CensusMode, CensusOptions};
use indepforge::module::FpModule;
use indepforge::PrimeField;

fn small(seed: u64) -> FpModule<PrimeField> {
    let cfg = GeneratorConfig {
        max_dim: 8,
        max_vars: 2,
        max_truncation: 3,
        ..GeneratorConfig::with_seed(seed)
    };
    let doc = generate_instance(&cfg, GeneratorKind::RandomModule).unwrap();
    let r = Resolved::new(PrimeField::new(101).unwrap(), &doc, Caps::default()).unwrap();
    r.modules["M"].clone()
}

#[test]
fn free_modules_have_a_strong_sequence_of_length_edim() {
    for seed in 0..50 {
        let m = small(seed);
        let a = m.algebra().clone();
        let f = FpModule::free(a.clone(), 1 + seed as usize % 3);
        let mm = a.max_ideal();
        let strong = is_strongly_independent(&mm, &f).unwrap();
        assert!(strong.independent, "seed {seed}");
        assert_eq!(strong.witness_sequence.len(), a.edim());
        let cert = certify_strong_independence_freeness(&f, &mm).unwrap();
        assert!(cert.certified_free && cert.oracle_free, "seed {seed}");
    }
}

#[test]
fn non_free_modules_have_no_strong_sequence_of_length_edim() {
    let mut found = 0;
    let mut seed = 0;
    while found < 50 {
        let m = small(seed);
        seed += 1;
        if m.is_zero() || m.freeness_oracle() {
            continue;
        }
        found += 1;
        let a = m.algebra().clone();
        let opts = CensusOptions {
            length_bound: a.edim(),
            mode: if a.dim() <= 5 {
                CensusMode::Exhaustive
            } else {
                CensusMode::Greedy
            },
            ..CensusOptions::default()
        };
        let rep = census(&m, &opts).unwrap();
        assert!(
            rep.max_strong < a.edim(),
            "seed {}: strong sequence of length edim on a non-free module",
            seed - 1
        );
        for w in [&rep.strong_witness, &rep.independent_witness] {
            if w.is_empty() {
                continue;
            }
            let cert = certify_strong_independence_freeness(&m, &a.ideal_from(w)).unwrap();
            assert!(!cert.certified_free, "seed {}", seed - 1);
        }
        let cert = certify_strong_independence_freeness(&m, &a.max_ideal()).unwrap();
        assert!(!cert.certified_free && !cert.oracle_free);
    }
}
