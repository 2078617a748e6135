//! Cross-validation of the incremental engine against the brute-force
//! oracle on seeded random filtrations, with full state invariant checks.

use hcb_core::engine::check_state_invariants;
use hcb_core::{
    betti_number, certify_barcode, compute_harmonic_barcode, compute_ordinary_barcode,
    harmonic_space, ordinary_endpoints, random_filtration, HarmonicEngine, RandomComplexParams,
};

#[test]
fn engine_agrees_with_oracle_on_small_random_instances() {
    for seed in 0..25u64 {
        let f = random_filtration(seed, &RandomComplexParams::fuzz(28));
        let m = f.len();
        let max_dim = f.max_dim();

        // Step the engine with invariant checks after every insertion.
        let mut engine = HarmonicEngine::new(&f);
        while !engine.is_done() {
            engine.step().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            check_state_invariants(&engine).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            // |U^p| must equal the harmonic dimension at every prefix.
            let prefix = engine.state().prefix();
            for p in 0..=max_dim {
                let expect = harmonic_space(&f, prefix, p).dim();
                let got = engine.state().unpaired_births(p).len();
                assert_eq!(
                    got, expect,
                    "seed {seed} prefix {prefix} degree {p}: open bars vs harmonic dim"
                );
            }
        }
        let barcode = engine.finish();

        // Betti curve: #bars containing i equals dim Har equals β.
        for i in 0..=m {
            for p in 0..=max_dim {
                let bars = barcode.bars_containing(p, i).count();
                let har = harmonic_space(&f, i, p).dim();
                let betti = betti_number(&f, i, p);
                assert_eq!(bars, har, "seed {seed} prefix {i} degree {p}");
                assert_eq!(har, betti, "seed {seed} prefix {i} degree {p}");
            }
        }

        // Full certification of representatives.
        let report = certify_barcode(&f, &barcode);
        assert!(report.pass, "seed {seed}: {:?}", report.failures);

        // Endpoint multisets agree with ordinary persistence.
        let ordinary = compute_ordinary_barcode(&f).unwrap();
        for p in 0..=max_dim {
            assert_eq!(
                barcode.endpoints_in_degree(p),
                ordinary_endpoints(&ordinary, p),
                "seed {seed} degree {p}"
            );
        }
    }
}

#[test]
fn barcodes_are_deterministic() {
    let f = random_filtration(9, &RandomComplexParams::fuzz(30));
    let a = compute_harmonic_barcode(&f).unwrap();
    let b = compute_harmonic_barcode(&f).unwrap();
    assert_eq!(a, b);
}
