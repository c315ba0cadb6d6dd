use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fixtures::{build, cycle, interval, Builtin};
use crate::homotopy::is_rigid_image;
use crate::image::DigitalImage;
use crate::iso::find_isomorphism;
use crate::maps::DigitalMap;

use super::checks::*;
use super::random::{instance_rng, map_pool, pick_maps, random_image, random_relabeling};
use super::report::VerificationReport;
use super::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// The named images and the cycle, interval and edgeless families.
    PaperFixtures,
    /// Seeded random images with at most `random_max_points` points.
    RandomSmall,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-fixtures" => Ok(Suite::PaperFixtures),
            "random-small" => Ok(Suite::RandomSmall),
            "all" => Ok(Suite::All),
            other => Err(Error::invalid(format!(
                "unknown suite `{other}` (expected paper-fixtures, random-small or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::PaperFixtures => "paper-fixtures",
            Suite::RandomSmall => "random-small",
            Suite::All => "all",
        })
    }
}

type Job = Box<dyn Fn() -> VerificationReport + Send + Sync>;

/// Runs every check of the suite and returns the reports in canonical order.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let mut jobs: Vec<Job> = Vec::new();
    if matches!(suite, Suite::PaperFixtures | Suite::All) {
        fixture_jobs(cfg, &mut jobs)?;
    }
    if matches!(suite, Suite::RandomSmall | Suite::All) {
        random_jobs(cfg, &mut jobs);
    }
    let mut reports: Vec<VerificationReport> = if cfg.deterministic {
        jobs.iter().map(|j| j()).collect()
    } else {
        jobs.par_iter().map(|j| j()).collect()
    };
    reports.sort_by(|a, b| a.canonical_cmp(b));
    Ok(reports)
}

fn arc(b: Builtin) -> Result<Arc<DigitalImage>> {
    Ok(Arc::new(build(b)?))
}

fn label(x: &DigitalImage, y: &DigitalImage) -> String {
    format!("{} -> {}", x.label(), y.label())
}

fn map(x: &Arc<DigitalImage>, y: &Arc<DigitalImage>, a: Vec<usize>) -> Result<DigitalMap> {
    DigitalMap::from_assignment(x, y, a)
}

fn fixture_jobs(cfg: &RunConfig, jobs: &mut Vec<Job>) -> Result<()> {
    let mut domains: Vec<Arc<DigitalImage>> = Vec::new();
    for n in 1..=4 {
        domains.push(Arc::new(interval(0, n)));
    }
    for n in 1..=7 {
        domains.push(Arc::new(cycle(n)));
    }
    for b in [
        Builtin::Square4,
        Builtin::Tee4,
        Builtin::Cube,
        Builtin::CubeMinusVertex,
        Builtin::Discrete(2),
        Builtin::Discrete(3),
        Builtin::Singleton,
    ] {
        domains.push(arc(b)?);
    }
    let mut codomains: Vec<Arc<DigitalImage>> = Vec::new();
    for b in [
        Builtin::Singleton,
        Builtin::Discrete(2),
        Builtin::Discrete(3),
        Builtin::Interval { a: 0, b: 1 },
        Builtin::Interval { a: 0, b: 2 },
        Builtin::Cycle(4),
        Builtin::Tee4,
        Builtin::CubeMinusVertex,
        Builtin::Cube,
    ] {
        codomains.push(arc(b)?);
    }
    let figure1 = arc(Builtin::Figure1)?;

    for x in &domains {
        for y in &codomains {
            let l = label(x, y);
            let (x1, y1, c) = (x.clone(), y.clone(), cfg.clone());
            let l1 = l.clone();
            jobs.push(Box::new(move || check_lemma_cardinality(&x1, &y1, &l1, &c)));
            let (x1, y1, c, l1) = (x.clone(), y.clone(), cfg.clone(), l.clone());
            jobs.push(Box::new(move || check_monotone(&x1, &y1, &l1, &c)));
            if y.has_adjacent_pair() {
                let (x1, y1, c, l1) = (x.clone(), y.clone(), cfg.clone(), l.clone());
                jobs.push(Box::new(move || check_lemma_full_range(&x1, &y1, &l1, &c)));
            }
            if x.is_connected() && y.is_totally_disconnected() && y.len() > 1 {
                let (x1, y1, c, l1) = (x.clone(), y.clone(), cfg.clone(), l.clone());
                jobs.push(Box::new(move || check_totally_disconnected(&x1, &y1, &l1, &c)));
            }
        }
        let (x1, c) = (x.clone(), cfg.clone());
        jobs.push(Box::new(move || check_fx_subset(&x1, &x1.label(), &c)));
        let (x1, c) = (x.clone(), cfg.clone());
        jobs.push(Box::new(move || check_mj_monotone(&x1, &x1.label(), &c)));
    }

    for x in domains.iter().chain([&figure1]) {
        if is_rigid_image(x) {
            let (x1, c) = (x.clone(), cfg.clone());
            jobs.push(Box::new(move || check_rigid_hcs(&x1, &x1.label(), &c)));
        }
    }
    {
        let (x1, c) = (figure1.clone(), cfg.clone());
        jobs.push(Box::new(move || check_mj_monotone(&x1, &x1.label(), &c)));
    }

    // isomorphism invariance: C_4 against the square, and relabelings
    let square = arc(Builtin::Square4)?;
    let c4 = Arc::new(cycle(4));
    let phi = find_isomorphism(&c4, &square).expect("both are 4-cycles");
    {
        let maps = [
            map(&c4, &c4, vec![1, 2, 3, 0])?,
            map(&c4, &c4, vec![0, 1, 0, 3])?,
            DigitalMap::identity(&c4),
        ];
        let (sq, c) = (square.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            let refs: Vec<&DigitalMap> = maps.iter().collect();
            check_iso_invariance(&refs, &phi, &sq, "C4 -> square4", &c)
        }));
    }
    for (k, x) in domains.iter().enumerate() {
        let mut rng = instance_rng(cfg.seed, k as u64);
        let (y, phi) = random_relabeling(&mut rng, x);
        let y = Arc::new(y);
        let pool = map_pool(x, x);
        let maps = pick_maps(&mut rng, x, x, &pool, 3);
        let (c, l) = (cfg.clone(), format!("{} relabeled", x.label()));
        jobs.push(Box::new(move || {
            let refs: Vec<&DigitalMap> = maps.iter().collect();
            check_iso_invariance(&refs, &phi, &y, &l, &c)
        }));
    }

    // the three maps of the square/tee example
    let tee = arc(Builtin::Tee4)?;
    let f = map(&square, &tee, vec![1, 0, 1, 2])?;
    let g = map(&square, &tee, vec![0, 1, 3, 1])?;
    let cst = DigitalMap::constant(&square, &tee, 3)?;
    {
        let (f1, g1, c1, c) = (f.clone(), g.clone(), cst.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            check_empty_coincidence(&[&f1, &g1, &c1], "square4 -> tee4 (f, g, c)", &c)
        }));
        let (f1, g1, c1, c) = (f.clone(), g.clone(), cst.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            check_nested_coincidence(&[&f1, &g1, &c1], "square4 -> tee4 (f, g, c)", &c)
        }));
        let (f1, g1, c) = (f.clone(), g.clone(), cfg.clone());
        jobs.push(Box::new(move || check_hcs_monotone(&[&f1, &g1], "square4 -> tee4 (f, g)", &c)));
    }

    // homotopy spectra
    let i03 = Arc::new(interval(0, 3));
    let c0 = DigitalMap::constant(&i03, &i03, 0)?;
    let c3 = DigitalMap::constant(&i03, &i03, 3)?;
    {
        let (a, c) = (c0.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            check_hcs_values(&[&a, &a], &[0, 1, 2, 3, 4], "[0,3] constants (c0, c0)", &c)
        }));
        let (a, b, c) = (c0.clone(), c3.clone(), cfg.clone());
        jobs.push(Box::new(move || check_hcs_monotone(&[&a, &b], "[0,3] constants (c0, c3)", &c)));
        let id = DigitalMap::identity(&figure1);
        let c = cfg.clone();
        jobs.push(Box::new(move || check_hcs_values(&[&id, &id], &[18], "figure1 (id, id)", &c)));
        let id = DigitalMap::identity(&c4);
        let c = cfg.clone();
        jobs.push(Box::new(move || check_hcs_monotone(&[&id], "C4 (id)", &c)));
    }

    // named values
    let cube = arc(Builtin::Cube)?;
    let cube_minus = arc(Builtin::CubeMinusVertex)?;
    let single = arc(Builtin::Singleton)?;
    {
        let (x, c) = (cube.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            check_fixed_point_spectrum(&x, &[0, 1, 2, 3, 4, 5, 6, 8], "F(cube)", &c)
        }));
        let (x, c) = (cube.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            check_coincidence_spectrum(&x, &x, 2, &(0..=8).collect::<Vec<_>>(), "CS_2(cube, cube)", &c)
        }));
        let (x, y, c) = (cube.clone(), cube_minus.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            check_coincidence_spectrum(
                &x,
                &y,
                2,
                &(0..=8).collect::<Vec<_>>(),
                "CS_2(cube, cube_minus_vertex)",
                &c,
            )
        }));
        let (x, y, c) = (cube.clone(), single.clone(), cfg.clone());
        jobs.push(Box::new(move || {
            check_coincidence_spectrum(&x, &y, 2, &[8], "CS_2(cube, singleton)", &c)
        }));
        let (x, c) = (figure1.clone(), cfg.clone());
        jobs.push(Box::new(move || check_rigid(&x, "figure1 rigid", &c)));
        let (x, c) = (figure1.clone(), cfg.clone());
        jobs.push(Box::new(move || check_self_coincidence(&x, 18, "m_j(figure1)", &c)));
    }
    for n in 1..=7usize {
        let x = Arc::new(cycle(n));
        let expected = cycle_fixed_point_spectrum(n);
        let c = cfg.clone();
        jobs.push(Box::new(move || {
            check_fixed_point_spectrum(&x, &expected, &format!("F(C{n})"), &c)
        }));
    }
    for n in 4..=6usize {
        let x = Arc::new(cycle(n));
        let c = cfg.clone();
        jobs.push(Box::new(move || check_self_coincidence(&x, 0, &format!("m_j(C{n})"), &c)));
    }
    Ok(())
}

/// `F(C_n)`: `{1}` for one point, `{0..n}` up to four points, and
/// `{0, 1, ..., floor(n/2) + 1, n}` beyond.
pub fn cycle_fixed_point_spectrum(n: usize) -> Vec<usize> {
    match n {
        0 => vec![],
        1 => vec![1],
        2..=4 => (0..=n).collect(),
        _ => (0..=n / 2 + 1).chain([n]).collect(),
    }
}

fn random_jobs(cfg: &RunConfig, jobs: &mut Vec<Job>) {
    // streams below this offset are used by the fixture relabelings
    const STREAM_OFFSET: u64 = 1 << 32;
    for r in 0..cfg.random_instances {
        let mut rng = instance_rng(cfg.seed, STREAM_OFFSET + r as u64);
        let x = Arc::new(random_image(&mut rng, cfg.random_max_points));
        let y = Arc::new(random_image(&mut rng, cfg.random_max_points));
        let i = 2 + (r % (cfg.i_max - 1));
        let pool_xy = map_pool(&x, &y);
        let maps = pick_maps(&mut rng, &x, &y, &pool_xy, cfg.i_max.max(3));
        let pool_xx = map_pool(&x, &x);
        let self_maps = pick_maps(&mut rng, &x, &x, &pool_xx, 3);
        let (xc, phi) = random_relabeling(&mut rng, &x);
        let xc = Arc::new(xc);
        let l = format!("random#{r:03}");

        let (x1, y1, c, l1) = (x.clone(), y.clone(), cfg.clone(), l.clone());
        jobs.push(Box::new(move || check_lemma_cardinality(&x1, &y1, &l1, &c)));
        let (x1, y1, c, l1) = (x.clone(), y.clone(), cfg.clone(), l.clone());
        jobs.push(Box::new(move || check_monotone(&x1, &y1, &l1, &c)));
        let (x1, c, l1) = (x.clone(), cfg.clone(), l.clone());
        jobs.push(Box::new(move || check_fx_subset(&x1, &l1, &c)));
        let (m, c, l1) = (maps.clone(), cfg.clone(), l.clone());
        jobs.push(Box::new(move || {
            let refs: Vec<&DigitalMap> = m.iter().collect();
            check_nested_coincidence(&refs, &l1, &c)
        }));
        let (m, c, l1) = (maps[..i].to_vec(), cfg.clone(), l.clone());
        jobs.push(Box::new(move || {
            let refs: Vec<&DigitalMap> = m.iter().collect();
            check_hcs_monotone(&refs, &l1, &c)
        }));
        let (c, l1) = (cfg.clone(), l.clone());
        jobs.push(Box::new(move || {
            let refs: Vec<&DigitalMap> = self_maps.iter().collect();
            check_iso_invariance(&refs, &phi, &xc, &l1, &c)
        }));
        let (x1, c, l1) = (x.clone(), cfg.clone(), l.clone());
        jobs.push(Box::new(move || check_mj_monotone(&x1, &l1, &c)));
        if y.has_adjacent_pair() {
            let (x1, y1, c, l1) = (x.clone(), y.clone(), cfg.clone(), l.clone());
            jobs.push(Box::new(move || check_lemma_full_range(&x1, &y1, &l1, &c)));
        }
        if x.is_connected() && y.is_totally_disconnected() && y.len() > 1 {
            let (x1, y1, c, l1) = (x.clone(), y.clone(), cfg.clone(), l.clone());
            jobs.push(Box::new(move || check_totally_disconnected(&x1, &y1, &l1, &c)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in ["paper-fixtures", "random-small", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn cycle_spectra_formula() {
        assert_eq!(cycle_fixed_point_spectrum(5), vec![0, 1, 2, 3, 5]);
        assert_eq!(cycle_fixed_point_spectrum(7), vec![0, 1, 2, 3, 4, 7]);
        assert_eq!(cycle_fixed_point_spectrum(3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn small_random_suite_is_reproducible() {
        let cfg = RunConfig {
            random_instances: 12,
            random_max_points: 4,
            seed: 5,
            ..RunConfig::default()
        };
        let a = run_suite(Suite::RandomSmall, &cfg).unwrap();
        let b = run_suite(
            Suite::RandomSmall,
            &RunConfig {
                deterministic: false,
                ..cfg.clone()
            },
        )
        .unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(p, q)| p.same_outcome(q)));
        assert!(a.iter().all(|r| !r.verdict.is_fail()), "{a:#?}");
        assert!(a.windows(2).all(|w| w[0].canonical_cmp(&w[1]).is_le()));
    }
}
