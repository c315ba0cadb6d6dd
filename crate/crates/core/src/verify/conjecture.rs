//! Search for disconnected `X` and edgeless `Y` with `CS_2(X,Y) != CS_i(X,Y)`.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fixtures::discrete;
use crate::image::{AdjacencySpec, DigitalImage, Point};
use crate::spectra::coincidence_spectrum_union;

use super::report::{Instance, Verdict, VerificationReport};
use super::RunConfig;

pub const CONJECTURE: &str = "conjecture";

/// Why enumerating component-size multisets covers every instance.
pub const REDUCTION: &str = "a continuous map into an edgeless image is constant on each \
component of its domain, so CS_i(X, Y) depends only on the multiset of component sizes of X \
and on #Y; each multiset is realized once as disjoint digital intervals";

/// Partitions of `total` into at least `min_parts` parts, each listed in
/// non-increasing order, in reverse lexicographic order.
pub fn partitions(total: usize, min_parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total > 0 {
        go(total, total, &mut Vec::new(), &mut out);
    }
    out.retain(|p| p.len() >= min_parts);
    out
}

/// Disjoint intervals on the line with the given sizes, one gap apart.
pub fn component_image(sizes: &[usize]) -> Result<DigitalImage> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::invalid("component sizes must be positive"));
    }
    let mut points = Vec::new();
    let mut start = 0i64;
    for &s in sizes {
        points.extend((start..start + s as i64).map(|v| Point::new(vec![v])));
        start += s as i64 + 1;
    }
    let name = sizes
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("+");
    DigitalImage::new(1, points, AdjacencySpec::Ct(1), Some(format!("components:{name}")))
}

/// All sums of sub-multisets of `sizes`, including the empty sum.
pub fn subset_sums(sizes: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &s in sizes {
        let shifted: Vec<usize> = sums.iter().map(|v| v + s).collect();
        sums.extend(shifted);
    }
    sums
}

fn check_instance(sizes: &[usize], m: usize, i_max: usize, cfg: &RunConfig) -> VerificationReport {
    let start = Instant::now();
    let x = component_image(sizes).expect("partitions have positive parts");
    let y = discrete(m);
    let label = format!("X={} Y=discrete:{m}", sizes.iter().map(usize::to_string).collect::<Vec<_>>().join("+"));
    let instance = Instance::new(label).with_x(&x).with_y(&y).with_i(i_max);
    let union = coincidence_spectrum_union(&x, &y, i_max, cfg.budget_for(x.len(), y.len()))
        .expect("i_max validated");
    let sums = subset_sums(sizes);
    let levels = &union.per_arity;
    let cs2 = levels[0].values();
    let mut spectra = serde_json::Map::new();
    for s in levels {
        spectra.insert(format!("CS_{}", s.arity().unwrap()), json!(s.to_vec()));
    }
    let details = json!({
        "component_sizes": sizes,
        "spectra": spectra,
        "subset_sums": sums,
        "cs2_is_subset_sums": cs2 == &sums,
        "reduction": REDUCTION,
    });
    let verdict = if let Some(s) = levels.iter().find(|s| s.values() != cs2) {
        if union.union.is_exact() {
            Verdict::fail(format!(
                "CS_2 = {} but CS_{} = {}",
                levels[0],
                s.arity().unwrap(),
                s
            ))
        } else {
            Verdict::Skipped {
                reason: "budget exhausted computing the spectra".into(),
            }
        }
    } else if !union.union.is_exact() {
        Verdict::Skipped {
            reason: "budget exhausted computing the spectra".into(),
        }
    } else {
        Verdict::Pass
    };
    VerificationReport::new(CONJECTURE, instance, verdict, cfg.seed, start.elapsed()).with_details(details)
}

/// Checks `CS_2(X,Y) = ... = CS_{i_max}(X,Y)` for every disconnected `X` with
/// at most `max_x_points` points, up to component sizes, and
/// `Y = discrete(m)` for `2 <= m <= max_y_points`.
pub fn conjecture_search(
    max_x_points: usize,
    max_y_points: usize,
    i_max: usize,
    cfg: &RunConfig,
) -> Result<Vec<VerificationReport>> {
    if i_max < 2 {
        return Err(Error::invalid("i_max must be at least 2"));
    }
    if max_y_points < 2 {
        return Err(Error::invalid("Y needs at least two points"));
    }
    let mut instances = Vec::new();
    for n in 2..=max_x_points {
        for sizes in partitions(n, 2) {
            for m in 2..=max_y_points {
                instances.push((sizes.clone(), m));
            }
        }
    }
    let mut reports: Vec<VerificationReport> = if cfg.deterministic {
        instances
            .iter()
            .map(|(s, m)| check_instance(s, *m, i_max, cfg))
            .collect()
    } else {
        instances
            .par_iter()
            .map(|(s, m)| check_instance(s, *m, i_max, cfg))
            .collect()
    };
    reports.sort_by(|a, b| a.canonical_cmp(b));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        // p(n) minus the single one-part partition
        let counts: Vec<usize> = (2..=6).map(|n| partitions(n, 2).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 6, 10]);
        assert_eq!(partitions(4, 1)[0], vec![4]);
        assert_eq!(partitions(4, 2), vec![vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn component_images_have_the_requested_components() {
        let x = component_image(&[3, 1, 2]).unwrap();
        let mut sizes: Vec<usize> = x.components().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(component_image(&[]).is_err());
    }

    #[test]
    fn subset_sums_of_sizes() {
        assert_eq!(subset_sums(&[1, 2]), BTreeSet::from([0, 1, 2, 3]));
        assert_eq!(subset_sums(&[2, 2]), BTreeSet::from([0, 2, 4]));
    }

    #[test]
    fn two_small_instances() {
        let cfg = RunConfig::default();
        let r = check_instance(&[2, 1], 2, 4, &cfg);
        assert!(r.verdict.is_pass());
        assert_eq!(r.details["spectra"]["CS_4"], json!([0, 1, 2, 3]));
        let r = check_instance(&[1, 1], 2, 3, &cfg);
        assert_eq!(r.details["spectra"]["CS_2"], json!([0, 1, 2]));
        assert_eq!(r.details["cs2_is_subset_sums"], json!(true));
    }
}
