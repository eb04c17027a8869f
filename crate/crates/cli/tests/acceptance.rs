//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero on
//! any failure outside `KNOWN_RED`.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the CLI golden files instead of
//! comparing against them.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use sleib::algebra::{extract_params, leibniz_violations};
use sleib::classify::audit::{coverage_report, invariance_audit, representative_lambdas, DefectKind, Variant};
use sleib::classify::{canonical_form, class_count, iso_decide, signature, specs, subset_of, IsoVerdict};
use sleib::criterion::{closed_form_transform, triple_compose, triple_invert};
use sleib::errata::{documented, formula_errata, is_documented, listed_duplicates, DOCUMENTED_DEFECTS};
use sleib::sampling::{random_nonzero_scalar, random_params, random_triple, rng_for};
use sleib::transform::{elementary_eta, elementary_sigma, transport};
use sleib::{build_table, transform_params, AdaptedTriple, Error, ParamVector};

type Check = Result<String, String>;
type Criterion = fn() -> Check;

/// Criteria that fail because the published classification itself fails
/// them; each failure line carries the reason. The suite still exits
/// nonzero if one of these starts passing or any other criterion fails.
const KNOWN_RED: &[&str] = &["A8"];

const SEED: u64 = 2024;

fn a1_leibniz() -> Check {
    let mut total = 0;
    for dim in 5..=12 {
        let mut rng = rng_for(SEED, &[1, dim as u64]);
        for _ in 0..200 {
            let p = random_params(&mut rng, dim);
            let v = leibniz_violations(&build_table(&p));
            if !v.is_empty() {
                return Err(format!("{p}: {} violations, first {:?}", v.len(), v[0]));
            }
            total += 1;
        }
    }
    Ok(format!("{total} tables, dims 5..12, no violations"))
}

fn a2_preservation() -> Check {
    let mut total = 0;
    for dim in 5..=9 {
        let n = dim - 1;
        let mut rng = rng_for(SEED, &[2, dim as u64]);
        for i in 0..100 {
            let p = random_params(&mut rng, dim);
            let t = build_table(&p);
            let a = random_nonzero_scalar(&mut rng);
            let k = 2 + i % (n - 3);
            let changes = [
                ("σ", elementary_sigma(&t, &a)),
                ("η_n", elementary_eta(&t, &a, n).map_err(|e| e.to_string())?),
                ("η_k", elementary_eta(&t, &a, k).map_err(|e| e.to_string())?),
            ];
            for (name, f) in changes {
                let q = transport(&t, &f).and_then(|t| extract_params(&t)).map_err(|e| e.to_string())?;
                if q != p {
                    return Err(format!("{name} with a = {a} moves {p} to {q}"));
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} transports of σ, η(n), η(k) leave parameters unchanged"))
}

fn a3_group_laws() -> Check {
    let tp = |p: &ParamVector, t: &AdaptedTriple| transform_params(p, t).map_err(|e| e.to_string());
    for dim in 5..=9 {
        let mut rng = rng_for(SEED, &[3, dim as u64]);
        for _ in 0..100 {
            let p = random_params(&mut rng, dim);
            let (t1, t2) = (random_triple(&mut rng), random_triple(&mut rng));
            if tp(&p, &AdaptedTriple::identity())? != p {
                return Err(format!("identity moves {p}"));
            }
            let q = tp(&p, &t1)?;
            if tp(&q, &t2)? != tp(&p, &triple_compose(&t1, &t2))? {
                return Err(format!("composition fails at {p}, {t1}, {t2}"));
            }
            if tp(&q, &triple_invert(&t1))? != p {
                return Err(format!("inverse of {t1} does not return to {p}"));
            }
        }
    }
    Ok("500 samples, dims 5..9: identity, composition and inverse laws hold".into())
}

fn a4_closed_form() -> Check {
    for dim in 5..=9 {
        let mut rng = rng_for(SEED, &[4, dim as u64]);
        for _ in 0..500 {
            let p = random_params(&mut rng, dim);
            let t = random_triple(&mut rng);
            let oracle = transform_params(&p, &t).map_err(|e| e.to_string())?;
            let closed = closed_form_transform(&p, &t);
            if closed != oracle {
                return Err(format!("{p} by {t}: closed {closed}, oracle {oracle}"));
            }
        }
    }
    let errata = formula_errata();
    let mut extra = Vec::new();
    for e in &errata {
        let w = &e.witness;
        let disagrees = w.printed_value != w.oracle_value;
        if disagrees != (e.status == "erratum") {
            return Err(format!("ledger entry {} has an inconsistent witness", e.id));
        }
        if !e.previously_known {
            extra.push(e.id);
        }
    }
    let flagged = errata.iter().filter(|e| e.previously_known).count();
    Ok(format!(
        "2500 samples agree; ledger has {} entries with witnesses ({flagged} anticipated; also found: {})",
        errata.len(),
        extra.join(", ")
    ))
}

fn a5_counts() -> Check {
    let mut parts = Vec::new();
    for dim in 5..=8 {
        let c = class_count(dim).map_err(|e| e.to_string())?;
        if !c.matches {
            return Err(format!("dim {dim}: {} families, formula {}", c.enumerated, c.formula));
        }
        parts.push(c.enumerated.to_string());
    }
    Ok(format!("counts {} match n²-7n+15", parts.join(", ")))
}

fn a6_orbit_invariance() -> Check {
    let mut findings = 0;
    let mut subsets = std::collections::BTreeSet::new();
    for dim in 5..=8 {
        let r = invariance_audit(dim, 50, SEED).map_err(|e| e.to_string())?;
        for f in r.findings() {
            if !is_documented(f) {
                return Err(format!("undocumented: dim {dim} {} {}: {} {}", f.subset, f.kind, f.witness.params, f.witness.detail));
            }
            findings += 1;
            subsets.insert((dim, f.subset));
        }
        for s in r.subsets.iter().filter(|s| s.value_bearing) {
            let corrected_fail = s.findings.iter().any(|f| {
                matches!(f.kind, DefectKind::SignatureNotInvariant { variant: Variant::Corrected, .. })
            });
            if corrected_fail {
                return Err(format!("corrected invariant of dim {dim} {} is not invariant", s.subset));
            }
        }
    }
    Ok(format!(
        "{findings} findings in {} subsets, all in the errata registry ({} entries; more than the three anticipated)",
        subsets.len(),
        DOCUMENTED_DEFECTS.len()
    ))
}

fn a7_round_trip() -> Check {
    let (mut checked, mut excused) = (0, 0);
    for dim in 5..=8 {
        let mut rng = rng_for(SEED, &[7, dim as u64]);
        let mut covered = 0;
        while covered < 100 {
            let p = random_params(&mut rng, dim);
            let Some(name) = subset_of(&p).map_err(|e| e.to_string())?.name else { continue };
            covered += 1;
            let c = match canonical_form(&p) {
                Ok(c) => c,
                Err(Error::NoRationalInverse { .. }) if documented(dim, name, &DefectKind::NonAffineInverse).is_some() => {
                    excused += 1;
                    continue;
                }
                Err(e) => return Err(format!("{p}: {e}")),
            };
            let rep = c.params();
            if subset_of(&rep).map_err(|e| e.to_string())?.name != Some(name) {
                if documented(dim, name, &DefectKind::RepresentativeOutside).is_none() {
                    return Err(format!("{p} -> {rep} changes subset"));
                }
                excused += 1;
                continue;
            }
            let (s1, s2) = (signature(&p).map_err(|e| e.to_string())?, signature(&rep).map_err(|e| e.to_string())?);
            if s1.values != s2.values {
                return Err(format!("{p} -> {rep}: signature {:?} vs {:?}", s1.values, s2.values));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} round trips exact; {excused} excused by documented defects (swapped representatives, non-affine dim-8 U12-U14)"))
}

fn a8_separation() -> Check {
    let mut pairs = 0;
    let mut unknown = Vec::new();
    for dim in 5..=8 {
        let mut reps: Vec<(String, ParamVector)> = Vec::new();
        for s in specs(dim).map_err(|e| e.to_string())? {
            let r = s.lambda_count();
            if r == 0 {
                reps.push((s.name.to_string(), s.member(&[])));
            } else {
                for (i, l) in representative_lambdas(r).iter().enumerate() {
                    reps.push((format!("{}#{i}", s.name), s.member(l)));
                }
            }
        }
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                let d = iso_decide(&reps[i].1, &reps[j].1).map_err(|e| e.to_string())?;
                pairs += 1;
                match d.verdict {
                    IsoVerdict::NotIsomorphic => {}
                    IsoVerdict::Unknown => unknown.push(format!("dim {dim} {}/{}", reps[i].0, reps[j].0)),
                    IsoVerdict::Isomorphic => {
                        return Err(format!("dim {dim}: {} ≅ {} ({}, {})", reps[i].0, reps[j].0, reps[i].1, reps[j].1))
                    }
                }
            }
        }
    }
    let mut dups = Vec::new();
    for dim in 5..=8 {
        for d in listed_duplicates(dim).map_err(|e| e.to_string())? {
            dups.push(format!("dim {dim} {}≅{} via {}", d.first.subset, d.second.subset, d.triple));
        }
    }
    let mut problems = Vec::new();
    if !unknown.is_empty() {
        let shown: Vec<&str> = unknown.iter().take(3).map(String::as_str).collect();
        problems.push(format!(
            "{} of {pairs} pairs Unknown, all involving the dim-7 U6 representative, which lies in no subset because U6 is empty (e.g. {}, …)",
            unknown.len(),
            shown.join(", ")
        ));
    }
    if !dups.is_empty() {
        problems.push(format!(
            "transport proves listed representatives isomorphic although iso_decide reports NotIsomorphic: {}",
            dups.join(", ")
        ));
    }
    if problems.is_empty() {
        Ok(format!("{pairs} pairs NotIsomorphic"))
    } else {
        Err(problems.join("; "))
    }
}

fn a9_coverage() -> Check {
    let mut parts = Vec::new();
    for dim in 5..=8 {
        let r = coverage_report(dim, 4000, SEED).map_err(|e| e.to_string())?;
        if r != coverage_report(dim, 4000, SEED).map_err(|e| e.to_string())? {
            return Err(format!("dim {dim}: report differs between runs"));
        }
        if dim == 5 && !r.gap_witnesses.iter().any(|w| w == "L(1,0,2)") {
            return Err(format!("dim 5 gap witnesses {:?} lack L(1,0,2)", r.gap_witnesses));
        }
        if r.overlaps > 0 {
            parts.push(format!("dim {dim} {} ({} overlaps)", r.uncovered_fraction(), r.overlaps));
        } else {
            parts.push(format!("dim {dim} {}", r.uncovered_fraction()));
        }
    }
    Ok(format!("uncovered: {}; dim-5 gap L(1,0,2) found; deterministic", parts.join(", ")))
}

// ---------------------------------------------------------------- golden files

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
}

const CASES: &[Case] = &[
    Case { name: "verify_l5", args: &["verify", "fixtures/l5_u2.json"], exit: 0 },
    Case { name: "verify_l8_zero", args: &["verify", "fixtures/l8_zero.json"], exit: 0 },
    Case { name: "verify_bad_length", args: &["verify", "fixtures/bad_length.json"], exit: 1 },
    Case { name: "classify_u1", args: &["classify", "fixtures/l5_u1.json"], exit: 0 },
    Case { name: "classify_uncovered", args: &["classify", "fixtures/l5_gap.json"], exit: 2 },
    Case { name: "classify_f6", args: &["classify", "fixtures/l6_zero.json"], exit: 0 },
    Case { name: "classify_dim7_u3", args: &["classify", "fixtures/l7_u3.json"], exit: 0 },
    Case { name: "classify_dim8_u12", args: &["classify", "fixtures/l8_u12.json"], exit: 2 },
    Case { name: "iso_isomorphic", args: &["iso", "fixtures/l5_u1_canonical.json", "fixtures/l5_u1.json"], exit: 0 },
    Case { name: "iso_not_isomorphic", args: &["iso", "fixtures/l5_u2.json", "fixtures/l5_u3.json"], exit: 0 },
    Case {
        name: "iso_witness",
        args: &["iso", "fixtures/l5_u1_canonical.json", "fixtures/l5_u1.json", "--witness", "1", "0", "2"],
        exit: 0,
    },
    Case { name: "enumerate_5", args: &["enumerate", "5"], exit: 0 },
    Case { name: "enumerate_7", args: &["enumerate", "7"], exit: 0 },
    Case { name: "enumerate_8", args: &["enumerate", "8"], exit: 0 },
    Case { name: "enumerate_9", args: &["enumerate", "9"], exit: 1 },
    Case { name: "audit_5", args: &["audit", "5", "--samples", "10"], exit: 2 },
    Case { name: "audit_6", args: &["audit", "6", "--samples", "10"], exit: 0 },
    Case { name: "audit_7", args: &["audit", "7", "--samples", "4"], exit: 2 },
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_cli(args: &[&str], json: bool) -> Result<(String, i32), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sleib"));
    cmd.current_dir(golden_dir()).args(args);
    if json {
        cmd.arg("--json");
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    let mut text = String::from_utf8_lossy(&out.stdout).into_owned();
    if !out.stderr.is_empty() {
        text += "--- stderr\n";
        text += &String::from_utf8_lossy(&out.stderr);
    }
    Ok((text, out.status.code().unwrap_or(-1)))
}

fn a10_golden() -> Check {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut compared = 0;
    for case in CASES {
        for json in [false, true] {
            let (out, code) = run_cli(case.args, json)?;
            if code != case.exit {
                return Err(format!("{} (json: {json}) exited {code}, expected {}", case.name, case.exit));
            }
            let path = golden_dir().join(format!("{}.{}", case.name, if json { "json" } else { "txt" }));
            if update {
                std::fs::write(&path, &out).map_err(|e| e.to_string())?;
            } else {
                let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                if want != out {
                    return Err(format!("{} differs from {}", case.name, path.display()));
                }
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} outputs byte-identical to golden files (text and json){}", if update { " [updated]" } else { "" }))
}

fn main() {
    // libtest-style flags (e.g. `--nocapture`, filters) are accepted and ignored
    let criteria: [(&str, Criterion); 10] = [
        ("A1 Leibniz validity", a1_leibniz),
        ("A2 σ/η preservation", a2_preservation),
        ("A3 group laws", a3_group_laws),
        ("A4 closed form vs oracle", a4_closed_form),
        ("A5 class counts", a5_counts),
        ("A6 orbit invariance", a6_orbit_invariance),
        ("A7 canonical round trip", a7_round_trip),
        ("A8 separation", a8_separation),
        ("A9 coverage report", a9_coverage),
        ("A10 CLI golden files", a10_golden),
    ];
    let (mut failed, mut unexpected) = (Vec::new(), Vec::new());
    for (name, check) in criteria {
        let id = name.split(' ').next().unwrap_or(name);
        let known = KNOWN_RED.contains(&id);
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => {
                println!("{name}: PASS ({secs:.1}s) {note}");
                if known {
                    unexpected.push(format!("{id} passed but is listed as known-red; re-examine"));
                }
            }
            Err(why) => {
                println!("{name}: FAIL ({secs:.1}s) {why}");
                failed.push(id);
                if !known {
                    unexpected.push(format!("{id} failed"));
                }
            }
        }
    }
    println!("acceptance: {} passed, {} failed ({})", 10 - failed.len(), failed.len(), failed.join(", "));
    if !unexpected.is_empty() {
        println!("unexpected: {}", unexpected.join("; "));
        std::process::exit(1);
    }
}
