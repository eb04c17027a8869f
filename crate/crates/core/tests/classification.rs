//! Classification tables: counts, round trips, and the errata registry.

use sleib::classify::audit::invariance_audit;
use sleib::classify::sampler::{sample_subset, DEFAULT_ATTEMPTS};
use sleib::classify::{canonical_form, class_count, signature, specs, subset_of};
use sleib::errata::{errata_document, is_documented, DOCUMENTED_DEFECTS};
use sleib::sampling::rng_for;
use sleib::Error;

#[test]
fn counts_match_the_quadratic() {
    for (dim, n) in [(5, 5), (6, 9), (7, 15), (8, 23)] {
        let c = class_count(dim).unwrap();
        assert_eq!((c.enumerated, c.formula, c.matches), (n, n as i64, true));
    }
}

#[test]
fn canonical_forms_keep_the_signature() {
    for dim in 5..=8 {
        for spec in specs(dim).unwrap() {
            let mut rng = rng_for(31, &[dim as u64]);
            let Ok(p) = sample_subset(&mut rng, dim, spec.name, DEFAULT_ATTEMPTS) else { continue };
            let c = match canonical_form(&p) {
                Ok(c) => c,
                Err(Error::NoRationalInverse { .. }) => continue,
                Err(e) => panic!("{p}: {e}"),
            };
            let rep = c.params();
            if subset_of(&rep).unwrap().name != Some(spec.name) {
                // a swapped representative is read with the other subset's invariant
                assert!(DOCUMENTED_DEFECTS.iter().any(|d| d.dim == dim && d.subset == spec.name), "{p} -> {rep}");
                continue;
            }
            assert_eq!(signature(&rep).unwrap().values, signature(&p).unwrap().values, "{p} -> {rep}");
        }
    }
}

#[test]
fn small_audits_only_find_documented_defects() {
    for dim in 5..=7 {
        let r = invariance_audit(dim, 6, 5).unwrap();
        for f in r.findings() {
            assert!(is_documented(f), "dim {dim} {} {}: {}", f.subset, f.kind, f.witness.detail);
        }
    }
    assert!(invariance_audit(6, 6, 5).unwrap().clean());
}

#[test]
fn errata_file_is_current() {
    let committed = include_str!("../data/errata.json");
    let doc = errata_document().unwrap();
    assert_eq!(doc.to_json(), committed, "regenerate with `sleib errata --out crates/core/data/errata.json`");
    assert!(doc.classification_defects.iter().all(|d| d.witness.is_some()));
}
