//! The individual checks. Each takes a concrete instance and returns one
//! report; a budget that trips before the answer is certain gives `Skipped`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use crate::enumeration::{for_each_continuous_map, Meter};
use crate::homotopy::is_rigid_image;
use crate::hspectra::{hcs, self_coincidence_sequence};
use crate::image::DigitalImage;
use crate::iso::Isomorphism;
use crate::maps::{coincidence_set, conjugate, DigitalMap};
use crate::spectra::{
    coincidence_spectrum, coincidence_spectrum_union, fixed_point_spectrum, Spectrum,
};

use super::report::{Instance, Verdict, VerificationReport};
use super::RunConfig;

pub const LEMMA_CARDINALITY: &str = "lemma-cardinality";
pub const LEMMA_FULL_RANGE: &str = "lemma-full-range";
pub const MONOTONE: &str = "monotone";
pub const FX_SUBSET: &str = "fx-subset";
pub const TOTALLY_DISCONNECTED: &str = "totally-disconnected";
pub const ISO_INVARIANCE: &str = "iso-invariance";
pub const NESTED_COINCIDENCE: &str = "nested-coincidence";
pub const HCS_MONOTONE: &str = "hcs-monotone";
pub const RIGID_HCS: &str = "rigid-hcs";
pub const MJ_MONOTONE: &str = "mj-monotone";
pub const FIGURE_EXAMPLES: &str = "figure-examples";

/// Every check id, in canonical order.
pub const CHECK_IDS: [&str; 11] = [
    FIGURE_EXAMPLES,
    FX_SUBSET,
    HCS_MONOTONE,
    ISO_INVARIANCE,
    LEMMA_CARDINALITY,
    LEMMA_FULL_RANGE,
    MJ_MONOTONE,
    MONOTONE,
    NESTED_COINCIDENCE,
    RIGID_HCS,
    TOTALLY_DISCONNECTED,
];

fn run(
    check_id: &str,
    instance: Instance,
    cfg: &RunConfig,
    body: impl FnOnce() -> (Verdict, Value),
) -> VerificationReport {
    let start = Instant::now();
    let (verdict, details) = body();
    VerificationReport::new(check_id, instance, verdict, cfg.seed, start.elapsed())
        .with_details(details)
}

fn skipped(what: &str) -> Verdict {
    Verdict::Skipped {
        reason: format!("budget exhausted computing {what}"),
    }
}

fn hypothesis(what: &str) -> Verdict {
    Verdict::Skipped {
        reason: format!("hypothesis not met: {what}"),
    }
}

fn spectra_json(prefix: &str, levels: &[Spectrum]) -> Value {
    let mut obj = serde_json::Map::new();
    for s in levels {
        let key = match s.arity() {
            Some(i) => format!("{prefix}_{i}"),
            None => prefix.to_owned(),
        };
        obj.insert(key, json!(s.to_vec()));
    }
    Value::Object(obj)
}

fn show(values: &BTreeSet<usize>) -> String {
    Spectrum::new(values.iter().copied(), true, None).to_string()
}

fn assignments(maps: &[&DigitalMap]) -> Vec<Vec<usize>> {
    maps.iter().map(|m| m.assignment().to_vec()).collect()
}

fn cs_levels(x: &DigitalImage, y: &DigitalImage, cfg: &RunConfig) -> Vec<Spectrum> {
    coincidence_spectrum_union(x, y, cfg.i_max, cfg.budget_for(x.len(), y.len()))
        .expect("i_max validated")
        .per_arity
}

/// `#X ∈ CS_i(X,Y)`, and `0 ∈ CS_i(X,Y)` when `#Y > 1`, for `2 <= i <= i_max`.
pub fn check_lemma_cardinality(
    x: &DigitalImage,
    y: &DigitalImage,
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_y(y).with_i(cfg.i_max);
    run(LEMMA_CARDINALITY, instance, cfg, || {
        let levels = cs_levels(x, y, cfg);
        let details = spectra_json("CS", &levels);
        let n = x.len();
        for s in &levels {
            let i = s.arity().unwrap();
            let mut required = vec![n];
            if y.len() > 1 {
                required.push(0);
            }
            for v in required {
                if !s.contains(v) {
                    let verdict = if s.is_exact() {
                        Verdict::fail(format!("{v} is missing from CS_{i} = {s}"))
                    } else {
                        skipped(&format!("CS_{i}"))
                    };
                    return (verdict, details);
                }
            }
        }
        (Verdict::Pass, details)
    })
}

/// `CS_2(X,Y) = {0, ..., #X}` when `Y` has an adjacent pair.
pub fn check_lemma_full_range(
    x: &DigitalImage,
    y: &DigitalImage,
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_y(y).with_i(2);
    run(LEMMA_FULL_RANGE, instance, cfg, || {
        if !y.has_adjacent_pair() {
            return (hypothesis("Y has no adjacent points"), Value::Null);
        }
        let s = coincidence_spectrum(x, y, 2, cfg.budget_for(x.len(), y.len()))
            .expect("arity 2 is valid");
        let details = json!({ "CS_2": s.to_vec() });
        if s.is_full_range(x.len()) {
            (Verdict::Pass, details)
        } else if s.is_exact() {
            (
                Verdict::fail(format!("CS_2 = {s}, expected {{0,...,{}}}", x.len())),
                details,
            )
        } else {
            (skipped("CS_2"), details)
        }
    })
}

/// `CS_1 ⊆ CS_2 ⊆ ... ⊆ CS_{i_max}`, with equality when `Y` has an adjacent
/// pair.
pub fn check_monotone(
    x: &DigitalImage,
    y: &DigitalImage,
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_y(y).with_i(cfg.i_max);
    run(MONOTONE, instance, cfg, || {
        let mut levels = vec![Spectrum::new([x.len()], true, Some(1))];
        levels.extend(cs_levels(x, y, cfg));
        let details = spectra_json("CS", &levels);
        if let Some(s) = levels.iter().find(|s| !s.is_exact()) {
            return (skipped(&format!("CS_{}", s.arity().unwrap())), details);
        }
        // CS_1 = {#X} is strictly smaller whenever 0 is achievable, so equality
        // is only required from i = 2 on
        for w in levels.windows(2) {
            let (i, j) = (w[0].arity().unwrap(), w[1].arity().unwrap());
            if !w[0].is_subset(&w[1]) {
                return (
                    Verdict::fail(format!("CS_{i} = {} is not contained in CS_{j} = {}", w[0], w[1])),
                    details,
                );
            }
            if i >= 2 && y.has_adjacent_pair() && w[0].values() != w[1].values() {
                return (
                    Verdict::fail(format!(
                        "CS_{i} = {} differs from CS_{j} = {} although Y has adjacent points",
                        w[0], w[1]
                    )),
                    details,
                );
            }
        }
        (Verdict::Pass, details)
    })
}

/// A self-map with exactly `count` fixed points, if one exists within budget.
pub fn find_map_with_fixed_count(x: &DigitalImage, count: usize, cfg: &RunConfig) -> Option<Vec<usize>> {
    let mut meter = Meter::new(cfg.budget_for(x.len(), x.len()));
    let mut found = None;
    for_each_continuous_map(x, x, &mut meter, |a| {
        if a.iter().enumerate().filter(|(p, &v)| *p == v).count() == count {
            found = Some(a.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// `F(X) ⊆ CS_2(X)`.
pub fn check_fx_subset(x: &DigitalImage, label: &str, cfg: &RunConfig) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_i(2);
    run(FX_SUBSET, instance, cfg, || {
        let budget = cfg.budget_for(x.len(), x.len());
        let f = fixed_point_spectrum(x, budget);
        let cs = coincidence_spectrum(x, x, 2, budget).expect("arity 2 is valid");
        let details = json!({ "F": f.to_vec(), "CS_2": cs.to_vec() });
        match f.values().difference(cs.values()).next() {
            None => (Verdict::Pass, details),
            Some(_) if !cs.is_exact() => (skipped("CS_2"), details),
            Some(&v) => {
                let witness = find_map_with_fixed_count(x, v, cfg)
                    .map(|a| vec![a, (0..x.len()).collect()])
                    .unwrap_or_default();
                (
                    Verdict::Fail {
                        message: format!("{v} ∈ F(X) = {f} but not in CS_2(X) = {cs}"),
                        witness,
                    },
                    details,
                )
            }
        }
    })
}

/// `CS_i(X,Y) = {0, #X}` for connected `X` and edgeless `Y` with `#Y > 1`.
pub fn check_totally_disconnected(
    x: &DigitalImage,
    y: &DigitalImage,
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_y(y).with_i(cfg.i_max);
    run(TOTALLY_DISCONNECTED, instance, cfg, || {
        if !x.is_connected() {
            return (hypothesis("X is not connected"), Value::Null);
        }
        if !y.is_totally_disconnected() || y.len() < 2 {
            return (hypothesis("Y is not edgeless with at least two points"), Value::Null);
        }
        let levels = cs_levels(x, y, cfg);
        let details = spectra_json("CS", &levels);
        let expected: BTreeSet<usize> = [0, x.len()].into_iter().collect();
        for s in &levels {
            if s.values() != &expected {
                let i = s.arity().unwrap();
                // extra values are certain; missing ones may be a budget effect
                let verdict = if s.is_exact() || !s.values().is_subset(&expected) {
                    Verdict::fail(format!("CS_{i} = {s}, expected {}", show(&expected)))
                } else {
                    skipped(&format!("CS_{i}"))
                };
                return (verdict, details);
            }
        }
        (Verdict::Pass, details)
    })
}

/// `#C(f_1, ..., f_k) = #C(Φ f_1 Φ⁻¹, ..., Φ f_k Φ⁻¹)` for every prefix of the
/// given self-maps of `X`, with `Φ : X -> Y` an isomorphism.
pub fn check_iso_invariance(
    maps: &[&DigitalMap],
    phi: &Isomorphism,
    y: &Arc<DigitalImage>,
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let x = maps[0].domain();
    let instance = Instance::new(label)
        .with_x(x)
        .with_y(y)
        .with_maps(assignments(maps))
        .with_i(maps.len());
    run(ISO_INVARIANCE, instance, cfg, || {
        let conj: Vec<DigitalMap> = maps
            .iter()
            .map(|f| conjugate(f, phi, y).expect("isomorphism conjugates self-maps"))
            .collect();
        let conj_refs: Vec<&DigitalMap> = conj.iter().collect();
        let mut before = Vec::new();
        let mut after = Vec::new();
        for k in 1..=maps.len() {
            before.push(coincidence_set(&maps[..k]).expect("shared images").len());
            after.push(coincidence_set(&conj_refs[..k]).expect("shared images").len());
        }
        let details = json!({
            "isomorphism": phi.forward(),
            "counts": before,
            "conjugated_counts": after,
        });
        match before.iter().zip(&after).position(|(a, b)| a != b) {
            None => (Verdict::Pass, details),
            Some(k) => (
                Verdict::Fail {
                    message: format!(
                        "#C of the first {} maps is {} but {} after conjugation",
                        k + 1,
                        before[k],
                        after[k]
                    ),
                    witness: assignments(&maps[..=k]),
                },
                details,
            ),
        }
    })
}

/// `C(f_1, ..., f_{k+1}) ⊆ C(f_1, ..., f_k)` for every prefix.
pub fn check_nested_coincidence(maps: &[&DigitalMap], label: &str, cfg: &RunConfig) -> VerificationReport {
    let instance = Instance::new(label)
        .with_x(maps[0].domain())
        .with_y(maps[0].codomain())
        .with_maps(assignments(maps))
        .with_i(maps.len());
    run(NESTED_COINCIDENCE, instance, cfg, || {
        let sets: Vec<Vec<usize>> = (1..=maps.len())
            .map(|k| coincidence_set(&maps[..k]).expect("shared images").members().to_vec())
            .collect();
        let details = json!({ "coincidence_sets": sets });
        for k in 1..sets.len() {
            if !sets[k].iter().all(|p| sets[k - 1].contains(p)) {
                return (
                    Verdict::Fail {
                        message: format!("C of the first {} maps is not inside C of the first {k}", k + 1),
                        witness: assignments(&maps[..=k]),
                    },
                    details,
                );
            }
        }
        (Verdict::Pass, details)
    })
}

/// `HCS(f_1, ..., f_i) ⊆ HCS(f_1, ..., f_i, f_i)`. Strict inclusions pass
/// and are flagged in the details.
pub fn check_hcs_monotone(maps: &[&DigitalMap], label: &str, cfg: &RunConfig) -> VerificationReport {
    let x = maps[0].domain();
    let y = maps[0].codomain();
    let instance = Instance::new(label)
        .with_x(x)
        .with_y(y)
        .with_maps(assignments(maps))
        .with_i(maps.len());
    run(HCS_MONOTONE, instance, cfg, || {
        let budget = cfg.budget_for(x.len(), y.len());
        let mut longer = maps.to_vec();
        longer.push(maps[maps.len() - 1]);
        let a = hcs(maps, budget).expect("shared images");
        let b = hcs(&longer, budget).expect("shared images");
        let strict = a.values.values() != b.values.values();
        let details = json!({
            "HCS": a.values.to_vec(),
            "HCS_repeated_last": b.values.to_vec(),
            "strict": strict,
        });
        if a.values.is_subset(&b.values) {
            (Verdict::Pass, details)
        } else if !b.values.is_exact() {
            (skipped("HCS"), details)
        } else {
            (
                Verdict::fail(format!(
                    "HCS = {} is not contained in HCS with the last map repeated = {}",
                    a.values, b.values
                )),
                details,
            )
        }
    })
}

/// `HCS(id, ..., id) = {#X}` for rigid `X`, `2 <= i <= i_max`.
pub fn check_rigid_hcs(x: &Arc<DigitalImage>, label: &str, cfg: &RunConfig) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_i(cfg.i_max);
    run(RIGID_HCS, instance, cfg, || {
        if !is_rigid_image(x) {
            return (hypothesis("X is not rigid"), Value::Null);
        }
        let id = DigitalMap::identity(x);
        let budget = cfg.budget_for(x.len(), x.len());
        let mut found = serde_json::Map::new();
        for i in 2..=cfg.i_max {
            let r = hcs(&vec![&id; i], budget).expect("identity maps share images");
            found.insert(format!("HCS_{i}"), json!(r.values.to_vec()));
            if r.values.to_vec() != vec![x.len()] {
                let verdict = if r.values.is_exact() {
                    Verdict::fail(format!("HCS of {i} identities is {}", r.values))
                } else {
                    skipped("HCS")
                };
                return (verdict, Value::Object(found));
            }
        }
        (Verdict::Pass, Value::Object(found))
    })
}

/// `m_1(X) = #X` and `m_1(X) >= m_2(X) >= ... >= m_{j_max}(X)`.
pub fn check_mj_monotone(x: &Arc<DigitalImage>, label: &str, cfg: &RunConfig) -> VerificationReport {
    let instance = Instance::new(label).with_x(x);
    run(MJ_MONOTONE, instance, cfg, || {
        let seq = self_coincidence_sequence(x, cfg.j_max, cfg.budget_for(x.len(), x.len()))
            .expect("j_max validated");
        let details = json!({ "m_j": seq.values() });
        if !seq.is_exact() {
            return (skipped("m_j"), details);
        }
        if seq.entries[0].value != x.len() {
            return (Verdict::fail(format!("m_1 = {} but #X = {}", seq.entries[0].value, x.len())), details);
        }
        if !seq.is_non_increasing() {
            return (Verdict::fail(format!("m_j = {:?} increases", seq.values())), details);
        }
        (Verdict::Pass, details)
    })
}

/// `F(X)` equals `expected`. An unexpected value comes with a self-map
/// realizing it.
pub fn check_fixed_point_spectrum(
    x: &DigitalImage,
    expected: &[usize],
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_i(1);
    run(FIGURE_EXAMPLES, instance, cfg, || {
        let f = fixed_point_spectrum(x, cfg.budget_for(x.len(), x.len()));
        let expected: BTreeSet<usize> = expected.iter().copied().collect();
        let details = json!({ "F": f.to_vec(), "expected": expected });
        if f.values() == &expected {
            return (Verdict::Pass, details);
        }
        if let Some(&v) = f.values().difference(&expected).next() {
            let witness = find_map_with_fixed_count(x, v, cfg).into_iter().collect();
            let message = format!("F(X) = {f} contains unexpected {v}, expected {}", show(&expected));
            return (Verdict::Fail { message, witness }, details);
        }
        if !f.is_exact() {
            return (skipped("F(X)"), details);
        }
        (
            Verdict::fail(format!("F(X) = {f}, expected {}", show(&expected))),
            details,
        )
    })
}

/// `CS_i(X,Y)` equals `expected`.
pub fn check_coincidence_spectrum(
    x: &DigitalImage,
    y: &DigitalImage,
    i: usize,
    expected: &[usize],
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let instance = Instance::new(label).with_x(x).with_y(y).with_i(i);
    run(FIGURE_EXAMPLES, instance, cfg, || {
        let s = match coincidence_spectrum(x, y, i, cfg.budget_for(x.len(), y.len())) {
            Ok(s) => s,
            Err(e) => return (Verdict::fail(e.to_string()), Value::Null),
        };
        let expected: BTreeSet<usize> = expected.iter().copied().collect();
        let details = json!({ format!("CS_{i}"): s.to_vec(), "expected": expected });
        if s.values() == &expected {
            (Verdict::Pass, details)
        } else if s.is_exact() || !s.values().is_subset(&expected) {
            (
                Verdict::fail(format!("CS_{i} = {s}, expected {}", show(&expected))),
                details,
            )
        } else {
            (skipped(&format!("CS_{i}")), details)
        }
    })
}

/// `C(f_1, ..., f_k) = ∅`.
pub fn check_empty_coincidence(maps: &[&DigitalMap], label: &str, cfg: &RunConfig) -> VerificationReport {
    let instance = Instance::new(label)
        .with_x(maps[0].domain())
        .with_y(maps[0].codomain())
        .with_maps(assignments(maps))
        .with_i(maps.len());
    run(FIGURE_EXAMPLES, instance, cfg, || {
        let c = coincidence_set(maps).expect("shared images");
        let details = json!({ "coincidence_set": c.members() });
        if c.is_empty() {
            (Verdict::Pass, details)
        } else {
            (
                Verdict::Fail {
                    message: format!("the maps agree on {} points", c.len()),
                    witness: assignments(maps),
                },
                details,
            )
        }
    })
}

/// `X` is rigid.
pub fn check_rigid(x: &Arc<DigitalImage>, label: &str, cfg: &RunConfig) -> VerificationReport {
    let instance = Instance::new(label).with_x(x);
    run(FIGURE_EXAMPLES, instance, cfg, || {
        if is_rigid_image(x) {
            (Verdict::Pass, json!({ "rigid": true }))
        } else {
            let id = DigitalMap::identity(x);
            let neighbor = crate::enumeration::one_step_neighbors(&id, cfg.budget_for(x.len(), x.len()))
                .items
                .into_iter()
                .find(|g| !g.is_identity())
                .map(|g| vec![g.assignment().to_vec()])
                .unwrap_or_default();
            (
                Verdict::Fail {
                    message: "the identity has a distinct one-step neighbor".into(),
                    witness: neighbor,
                },
                json!({ "rigid": false }),
            )
        }
    })
}

/// `HCS(maps)` equals `expected`.
pub fn check_hcs_values(
    maps: &[&DigitalMap],
    expected: &[usize],
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let x = maps[0].domain();
    let y = maps[0].codomain();
    let instance = Instance::new(label)
        .with_x(x)
        .with_y(y)
        .with_maps(assignments(maps))
        .with_i(maps.len());
    run(FIGURE_EXAMPLES, instance, cfg, || {
        let r = hcs(maps, cfg.budget_for(x.len(), y.len())).expect("shared images");
        let expected: BTreeSet<usize> = expected.iter().copied().collect();
        let details = json!({ "HCS": r.values.to_vec(), "expected": expected });
        if r.values.values() == &expected {
            (Verdict::Pass, details)
        } else if r.values.is_exact() {
            (
                Verdict::fail(format!("HCS = {}, expected {}", r.values, show(&expected))),
                details,
            )
        } else {
            (skipped("HCS"), details)
        }
    })
}

/// `m_j(X) = expected` for `2 <= j <= j_max`.
pub fn check_self_coincidence(
    x: &Arc<DigitalImage>,
    expected: usize,
    label: &str,
    cfg: &RunConfig,
) -> VerificationReport {
    let instance = Instance::new(label).with_x(x);
    run(FIGURE_EXAMPLES, instance, cfg, || {
        let seq = self_coincidence_sequence(x, cfg.j_max, cfg.budget_for(x.len(), x.len()))
            .expect("j_max validated");
        let details = json!({ "m_j": seq.values(), "expected": expected });
        match seq.entries.iter().skip(1).find(|e| e.value != expected) {
            None if seq.is_exact() => (Verdict::Pass, details),
            None => (skipped("m_j"), details),
            Some(e) if e.exact => (
                Verdict::fail(format!("m_{} = {}, expected {expected}", e.j, e.value)),
                details,
            ),
            Some(_) => (skipped("m_j"), details),
        }
    })
}
