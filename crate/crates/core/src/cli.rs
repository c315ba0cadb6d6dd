//! Command-line front end.
//!
//! [`dispatch`] parses an argument vector, runs the command and returns the
//! exit code with everything that would be printed, so the binary is a thin
//! wrapper and the commands are testable in-process.
//!
//! Exit codes: 0 on success, 1 when a check fails or a counterexample is
//! found, 2 on usage errors, unreadable input, or a budget that ran out
//! before the answer was exact.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::enumeration::{count_continuous_maps, enumerate_continuous_maps, EnumerationBudget};
use crate::error::{Error, Result};
use crate::homotopy::{are_homotopic, homotopy_class, is_contractible, is_rigid_map, Decision, HomotopyWitness};
use crate::hspectra::{hcs, hfs, m_j_of_map, mc, mcf, self_coincidence_sequence};
use crate::image::DigitalImage;
use crate::io::{image_to_file, load_image_ref, load_raw_map_ref};
use crate::maps::{first_violation, DigitalMap};
use crate::spectra::{
    coincidence_spectrum, coincidence_spectrum_union, common_fixed_spectrum, fixed_point_spectrum, Spectrum,
};
use crate::verify::{self, conjecture_search, run_suite, OutputFormat, RunConfig, Suite, VerificationReport};

/// Environment variable overriding the node budget.
pub const BUDGET_NODES_ENV: &str = "DIGITOP_BUDGET_NODES";

#[derive(Debug, Parser)]
#[command(name = "digitop", version, about = "Coincidence and fixed point spectra of finite digital images")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Backtracking node budget per computation.
    #[arg(long, global = true, value_name = "N")]
    pub budget_nodes: Option<u64>,
    /// Time budget per computation, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub budget_time: Option<f64>,
    /// Largest arity for spectrum unions and verification checks.
    #[arg(long, global = true, value_name = "I")]
    pub i_max: Option<usize>,
    /// Largest j for self-coincidence sequences.
    #[arg(long, global = true, value_name = "J")]
    pub j_max: Option<usize>,
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    pub format: String,
    /// Seed for random instance generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run checks one at a time (the default).
    #[arg(long, global = true, conflicts_with = "parallel")]
    pub deterministic: bool,
    /// Run checks in parallel; reports keep their canonical order.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect or export images.
    #[command(subcommand)]
    Image(ImageCommand),
    /// Check or apply a single map.
    #[command(subcommand)]
    Map(MapCommand),
    /// Count or list all continuous maps between two images.
    #[command(subcommand)]
    Maps(MapsCommand),
    /// Homotopy classes, rigidity and contractibility.
    #[command(subcommand)]
    Homotopy(HomotopyCommand),
    /// Coincidence and fixed point spectra.
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
    /// Homotopy spectra and self-coincidence numbers.
    #[command(subcommand)]
    Hspectrum(HspectrumCommand),
    /// Run a verification suite: paper-fixtures, random-small or all.
    Verify(VerifyArgs),
    /// Search disconnected domains against edgeless codomains for CS_2 != CS_i.
    Conjecture(ConjectureArgs),
}

#[derive(Debug, Subcommand)]
pub enum ImageCommand {
    /// Summary of an image.
    Info(ImageArg),
    /// Print an image in the JSON file format.
    Build {
        #[command(flatten)]
        image: ImageArg,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An image given positionally or with `--image`: `builtin:<name>`, a JSON
/// file, or inline JSON.
#[derive(Debug, Args)]
pub struct ImageArg {
    #[arg(value_name = "IMAGE")]
    pub positional: Option<String>,
    #[arg(long = "image", value_name = "IMAGE")]
    pub flag: Option<String>,
}

impl ImageArg {
    fn get(&self) -> Result<&str> {
        match (&self.positional, &self.flag) {
            (Some(a), None) | (None, Some(a)) => Ok(a),
            (Some(_), Some(_)) => Err(Error::invalid("give the image either positionally or with --image")),
            (None, None) => Err(Error::invalid("an image is required")),
        }
    }

    fn load(&self) -> Result<Arc<DigitalImage>> {
        load_image(self.get()?)
    }
}

#[derive(Debug, Subcommand)]
pub enum MapCommand {
    /// Check continuity of a map file or inline map.
    Check {
        #[arg(value_name = "MAP")]
        map: String,
    },
    /// Evaluate a map at a point, or at every point.
    Apply {
        #[arg(value_name = "MAP")]
        map: String,
        #[command(flatten)]
        context: MapContextArgs,
        /// Point index (canonical order).
        #[arg(long)]
        index: Option<usize>,
        /// Point coordinates, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<i64>>,
    },
}

/// Images used to interpret `id` and `const:<k>` map arguments.
#[derive(Debug, Args, Default)]
pub struct MapContextArgs {
    /// Domain for `id` / `const:<k>` maps.
    #[arg(long, visible_alias = "domain", value_name = "IMAGE")]
    pub image: Option<String>,
    /// Codomain for `const:<k>` maps; defaults to the domain.
    #[arg(long, value_name = "IMAGE")]
    pub codomain: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum MapsCommand {
    /// Number of continuous maps.
    Count(PairArgs),
    /// Every continuous map, one assignment per line.
    Enumerate {
        #[command(flatten)]
        pair: PairArgs,
        /// Stop after this many maps.
        #[arg(long)]
        limit: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, visible_alias = "domain", value_name = "IMAGE")]
    pub image: String,
    /// Defaults to the domain.
    #[arg(long, value_name = "IMAGE")]
    pub codomain: Option<String>,
}

impl PairArgs {
    fn load(&self) -> Result<(Arc<DigitalImage>, Arc<DigitalImage>)> {
        let x = load_image(&self.image)?;
        let y = match &self.codomain {
            Some(c) => load_image(c)?,
            None => x.clone(),
        };
        Ok((x, y))
    }
}

#[derive(Debug, Subcommand)]
pub enum HomotopyCommand {
    /// All maps homotopic to the given one.
    Class {
        map: String,
        #[command(flatten)]
        context: MapContextArgs,
    },
    /// Whether two maps are homotopic, with a shortest chain.
    AreHomotopic {
        f: String,
        g: String,
        #[command(flatten)]
        context: MapContextArgs,
    },
    /// Whether an image (its identity) or a map is rigid.
    Rigid {
        #[command(flatten)]
        image: ImageArg,
        /// Test this map instead of the identity.
        #[arg(long)]
        map: Option<String>,
    },
    /// Whether the identity of an image is homotopic to a constant.
    Contractible(ImageArg),
}

#[derive(Debug, Subcommand)]
pub enum SpectrumCommand {
    /// `CS_i(X,Y)`.
    Cs {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 2)]
        i: usize,
        /// Print every `CS_k` for `2 <= k <= i-max` and their union.
        #[arg(long)]
        union: bool,
    },
    /// `F(X)`.
    F(ImageArg),
    /// `CFS_i(X)`.
    Cfs {
        #[command(flatten)]
        image: ImageArg,
        #[arg(long, default_value_t = 2)]
        i: usize,
    },
}

#[derive(Debug, Args)]
pub struct MapListArgs {
    /// Maps: `id`, `const:<k>`, a map file, or inline JSON.
    #[arg(value_name = "MAP", required = true)]
    pub maps: Vec<String>,
    #[command(flatten)]
    pub context: MapContextArgs,
}

#[derive(Debug, Subcommand)]
pub enum HspectrumCommand {
    /// `HCS(f_1, ..., f_i)`.
    Hcs(MapListArgs),
    /// `HFS(f_1, ..., f_i)` for self-maps.
    Hfs(MapListArgs),
    /// `MC(f_1, ..., f_i)`.
    Mc(MapListArgs),
    /// `MCF(f_1, ..., f_i)` for self-maps.
    Mcf(MapListArgs),
    /// `m_1, ..., m_{j-max}` of an image, or of a self-map with `--map`.
    Mj {
        #[command(flatten)]
        image: ImageArg,
        #[arg(long)]
        map: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: String,
    /// Number of random instances.
    #[arg(long)]
    pub instances: Option<usize>,
    /// Largest random image.
    #[arg(long)]
    pub max_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 6)]
    pub max_x: usize,
    #[arg(long, default_value_t = 3)]
    pub max_y: usize,
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Session {
    format: OutputFormat,
    budget: Option<EnumerationBudget>,
    out: Vec<String>,
    partial: bool,
}

impl Session {
    fn budget(&self, x: usize, y: usize) -> EnumerationBudget {
        self.budget.unwrap_or_else(|| EnumerationBudget::default_for(x, y))
    }

    /// Records one result: `text` in text mode, `value` (keys sorted) in JSON
    /// mode.
    fn emit(&mut self, text: impl Into<String>, value: Value) {
        match self.format {
            OutputFormat::Text => self.out.push(text.into()),
            OutputFormat::Json => self.out.push(serde_json::to_string(&value).expect("values serialize")),
        }
    }

    fn note_exact(&mut self, exact: bool) {
        if !exact {
            self.partial = true;
        }
    }
}

fn load_image(reference: &str) -> Result<Arc<DigitalImage>> {
    Ok(Arc::new(load_image_ref(reference, None)?.image))
}

/// Resolves map arguments. `id` and `const:<k>` use `--image`/`--codomain`,
/// or else the images of the first map given as a file.
fn load_maps(args: &[String], context: &MapContextArgs) -> Result<Vec<DigitalMap>> {
    let keyword = |a: &str| a == "id" || a.starts_with("const:");
    let mut loaded: Vec<Option<DigitalMap>> = Vec::new();
    for a in args {
        if keyword(a) {
            loaded.push(None);
        } else {
            loaded.push(Some(load_raw_map_ref(a)?.validate()?));
        }
    }
    let first = loaded.iter().flatten().next().cloned();
    let domain = match (&context.image, &first) {
        (Some(r), _) => Some(load_image(r)?),
        (None, Some(f)) => Some(f.domain().clone()),
        (None, None) => None,
    };
    let codomain = match (&context.codomain, &first) {
        (Some(r), _) => Some(load_image(r)?),
        (None, Some(f)) if context.image.is_none() => Some(f.codomain().clone()),
        _ => domain.clone(),
    };
    let mut maps = Vec::new();
    for (a, m) in args.iter().zip(loaded) {
        if let Some(m) = m {
            maps.push(m);
            continue;
        }
        let x = domain
            .as_ref()
            .ok_or_else(|| Error::invalid(format!("`{a}` needs --image to name its domain")))?;
        let y = codomain.as_ref().unwrap_or(x);
        if a == "id" {
            if y.as_ref() != x.as_ref() {
                return Err(Error::invalid("`id` needs the codomain to equal the domain"));
            }
            maps.push(DigitalMap::identity(x));
        } else {
            let k: usize = a["const:".len()..]
                .parse()
                .map_err(|_| Error::invalid(format!("bad constant map `{a}`")))?;
            maps.push(DigitalMap::constant(x, y, k)?);
        }
    }
    // maps from different sources may hold equal but distinct image handles
    if let Some(f) = maps.first().cloned() {
        for m in &maps {
            if !m.same_images(&f) {
                return Err(Error::invalid("maps do not share domain and codomain"));
            }
        }
    }
    Ok(maps)
}

fn load_map(arg: &str, context: &MapContextArgs) -> Result<DigitalMap> {
    Ok(load_maps(&[arg.to_owned()], context)?.remove(0))
}

fn spectrum_json(s: &Spectrum) -> Value {
    json!({ "values": s.to_vec(), "exact": s.is_exact() })
}

fn chain_json(w: &HomotopyWitness) -> Value {
    json!(w.chain.iter().map(|m| m.assignment().to_vec()).collect::<Vec<_>>())
}

fn decision_text(d: &Decision<HomotopyWitness>) -> String {
    match d {
        Decision::Yes(w) => format!("yes (chain of {} maps)", w.len()),
        Decision::No => "no".into(),
        Decision::Unknown => "unknown (budget exhausted)".into(),
    }
}

fn decision_json(d: &Decision<HomotopyWitness>) -> Value {
    match d {
        Decision::Yes(w) => json!({ "answer": "yes", "chain": chain_json(w) }),
        other => json!({ "answer": other.label() }),
    }
}

fn run_image(cmd: ImageCommand, s: &mut Session) -> Result<i32> {
    match cmd {
        ImageCommand::Info(arg) => {
            let x = arg.load()?;
            let sizes: Vec<usize> = x.components().iter().map(Vec::len).collect();
            let rigid = is_rigid_map(&DigitalMap::identity(&x));
            let adjacency = match x.adjacency() {
                crate::image::AdjacencySpec::Ct(t) => format!("c_{t}"),
                crate::image::AdjacencySpec::Explicit(_) => "explicit".into(),
            };
            let text = format!(
                "name: {}\ndimension: {}\npoints: {}\nadjacency: {adjacency}\nedges: {}\ncomponents: {:?}\ndegrees: {:?}\nrigid: {rigid}",
                x.label(),
                x.dimension(),
                x.len(),
                x.edge_count(),
                sizes,
                x.degree_sequence(),
            );
            s.emit(
                text,
                json!({
                    "name": x.label(),
                    "dimension": x.dimension(),
                    "points": x.len(),
                    "adjacency": adjacency,
                    "edges": x.edge_count(),
                    "components": sizes,
                    "degrees": x.degree_sequence(),
                    "rigid": rigid,
                }),
            );
        }
        ImageCommand::Build { image, out } => {
            let x = image.load()?;
            let doc = serde_json::to_value(image_to_file(&x)).expect("images serialize");
            let text = serde_json::to_string_pretty(&doc).expect("values serialize");
            match out {
                Some(path) => {
                    std::fs::write(&path, format!("{text}\n")).map_err(|e| Error::Io {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    })?;
                    s.emit(
                        format!("wrote {}", path.display()),
                        json!({ "wrote": path.display().to_string() }),
                    );
                }
                None => s.emit(text, doc),
            }
        }
    }
    Ok(0)
}

fn run_map(cmd: MapCommand, s: &mut Session) -> Result<i32> {
    match cmd {
        MapCommand::Check { map } => {
            let raw = load_raw_map_ref(&map)?;
            match first_violation(&raw.domain, &raw.codomain, &raw.assignment)? {
                None => {
                    s.emit("continuous", json!({ "continuous": true }));
                    Ok(0)
                }
                Some((x, y)) => {
                    let (fx, fy) = (raw.assignment[x], raw.assignment[y]);
                    s.emit(
                        format!(
                            "not continuous: {} ~ {} but f sends them to {} and {}",
                            raw.domain.point(x),
                            raw.domain.point(y),
                            raw.codomain.point(fx),
                            raw.codomain.point(fy)
                        ),
                        json!({ "continuous": false, "violation": { "x": x, "y": y, "fx": fx, "fy": fy } }),
                    );
                    Ok(1)
                }
            }
        }
        MapCommand::Apply {
            map,
            context,
            index,
            point,
        } => {
            let f = load_map(&map, &context)?;
            let x = f.domain();
            let targets: Vec<usize> = match (index, point) {
                (Some(_), Some(_)) => return Err(Error::invalid("give either --index or --point")),
                (Some(i), None) if i < x.len() => vec![i],
                (Some(i), None) => return Err(Error::invalid(format!("index {i} is outside the domain"))),
                (None, Some(p)) => vec![x
                    .index_of(&crate::image::Point::new(p.clone()))
                    .ok_or_else(|| Error::invalid(format!("{p:?} is not a point of the domain")))?],
                (None, None) => (0..x.len()).collect(),
            };
            for i in targets {
                let v = f.apply(i);
                s.emit(
                    format!("{} -> {}", x.point(i), f.codomain().point(v)),
                    json!({
                        "index": i,
                        "point": x.point(i).coords(),
                        "image_index": v,
                        "image_point": f.codomain().point(v).coords(),
                    }),
                );
            }
            Ok(0)
        }
    }
}

fn run_maps(cmd: MapsCommand, s: &mut Session) -> Result<i32> {
    match cmd {
        MapsCommand::Count(pair) => {
            let (x, y) = pair.load()?;
            let (n, exact) = count_continuous_maps(&x, &y, s.budget(x.len(), y.len()));
            s.note_exact(exact);
            let text = if exact { n.to_string() } else { format!("at least {n} (partial)") };
            s.emit(text, json!({ "count": n.to_string(), "exact": exact }));
        }
        MapsCommand::Enumerate { pair, limit } => {
            let (x, y) = pair.load()?;
            let mut budget = s.budget(x.len(), y.len());
            if let Some(l) = limit {
                budget = budget.with_max_results(l);
            }
            let outcome = enumerate_continuous_maps(&x, &y, budget);
            for f in &outcome.items {
                s.emit(format!("{:?}", f.assignment()), json!({ "assignment": f.assignment() }));
            }
            let truncated_by_limit = !outcome.exhausted && limit.is_some_and(|l| outcome.items.len() as u64 == l);
            if !truncated_by_limit {
                s.note_exact(outcome.exhausted);
            }
            s.emit(
                format!(
                    "# {} maps{}",
                    outcome.items.len(),
                    if outcome.exhausted { "" } else { " (stopped early)" }
                ),
                json!({ "count": outcome.items.len(), "exhausted": outcome.exhausted }),
            );
        }
    }
    Ok(0)
}

fn run_homotopy(cmd: HomotopyCommand, s: &mut Session) -> Result<i32> {
    match cmd {
        HomotopyCommand::Class { map, context } => {
            let f = load_map(&map, &context)?;
            let class = homotopy_class(&f, s.budget(f.domain().len(), f.codomain().len()));
            s.note_exact(class.is_complete());
            let members: Vec<Vec<usize>> = class.assignments().map(<[usize]>::to_vec).collect();
            let mut text = format!(
                "{} maps{}",
                members.len(),
                if class.is_complete() { "" } else { " (partial)" }
            );
            for m in &members {
                text.push_str(&format!("\n{m:?}"));
            }
            s.emit(
                text,
                json!({ "size": members.len(), "complete": class.is_complete(), "members": members }),
            );
        }
        HomotopyCommand::AreHomotopic { f, g, context } => {
            let maps = load_maps(&[f, g], &context)?;
            let d = are_homotopic(
                &maps[0],
                &maps[1],
                s.budget(maps[0].domain().len(), maps[0].codomain().len()),
            )?;
            s.note_exact(!d.is_unknown());
            s.emit(decision_text(&d), decision_json(&d));
        }
        HomotopyCommand::Rigid { image, map } => {
            let f = match map {
                Some(m) => {
                    let context = MapContextArgs {
                        image: image.positional.clone().or(image.flag.clone()),
                        codomain: None,
                    };
                    load_map(&m, &context)?
                }
                None => DigitalMap::identity(&image.load()?),
            };
            let rigid = is_rigid_map(&f);
            s.emit(rigid.to_string(), json!({ "rigid": rigid }));
        }
        HomotopyCommand::Contractible(arg) => {
            let x = arg.load()?;
            let d = is_contractible(&x, s.budget(x.len(), x.len()));
            s.note_exact(!d.is_unknown());
            s.emit(decision_text(&d), decision_json(&d));
        }
    }
    Ok(0)
}

fn run_spectrum(cmd: SpectrumCommand, s: &mut Session, i_max: usize) -> Result<i32> {
    match cmd {
        SpectrumCommand::Cs { pair, i, union } => {
            let (x, y) = pair.load()?;
            let budget = s.budget(x.len(), y.len());
            if union {
                let u = coincidence_spectrum_union(&x, &y, i_max, budget)?;
                s.note_exact(u.union.is_exact());
                let mut text = String::new();
                let mut levels = serde_json::Map::new();
                for sp in &u.per_arity {
                    let k = sp.arity().unwrap();
                    text.push_str(&format!("CS_{k} = {sp}\n"));
                    levels.insert(format!("CS_{k}"), json!(sp.to_vec()));
                }
                text.push_str(&format!("union = {}", u.union));
                if let Some(k) = u.stabilized_at {
                    text.push_str(&format!("\nconstant from i = {k} to {i_max}"));
                }
                s.emit(
                    text,
                    json!({
                        "levels": levels,
                        "union": u.union.to_vec(),
                        "exact": u.union.is_exact(),
                        "stabilized_at": u.stabilized_at,
                    }),
                );
            } else {
                let sp = coincidence_spectrum(&x, &y, i, budget)?;
                s.note_exact(sp.is_exact());
                s.emit(sp.to_string(), spectrum_json(&sp));
            }
        }
        SpectrumCommand::F(arg) => {
            let x = arg.load()?;
            let sp = fixed_point_spectrum(&x, s.budget(x.len(), x.len()));
            s.note_exact(sp.is_exact());
            s.emit(sp.to_string(), spectrum_json(&sp));
        }
        SpectrumCommand::Cfs { image, i } => {
            let x = image.load()?;
            let sp = common_fixed_spectrum(&x, i, s.budget(x.len(), x.len()))?;
            s.note_exact(sp.is_exact());
            s.emit(sp.to_string(), spectrum_json(&sp));
        }
    }
    Ok(0)
}

fn run_hspectrum(cmd: HspectrumCommand, s: &mut Session, j_max: usize) -> Result<i32> {
    match cmd {
        HspectrumCommand::Hcs(a) => spectrum_of(&a, s, false),
        HspectrumCommand::Hfs(a) => spectrum_of(&a, s, true),
        HspectrumCommand::Mc(a) => minimum_of(&a, s, false),
        HspectrumCommand::Mcf(a) => minimum_of(&a, s, true),
        HspectrumCommand::Mj { image, map } => {
            let entries: Vec<(usize, usize, bool)> = match map {
                Some(m) => {
                    let context = MapContextArgs {
                        image: image.positional.clone().or(image.flag.clone()),
                        codomain: None,
                    };
                    let f = load_map(&m, &context)?;
                    if !f.is_self_map() {
                        return Err(Error::invalid("m_j needs a self-map"));
                    }
                    let budget = s.budget(f.domain().len(), f.domain().len());
                    (1..=j_max)
                        .map(|j| m_j_of_map(&f, j, budget).map(|(v, e)| (j, v, e)))
                        .collect::<Result<_>>()?
                }
                None => {
                    let x = image.load()?;
                    self_coincidence_sequence(&x, j_max, s.budget(x.len(), x.len()))?
                        .entries
                        .iter()
                        .map(|e| (e.j, e.value, e.exact))
                        .collect()
                }
            };
            for &(j, v, exact) in &entries {
                s.note_exact(exact);
                s.emit(
                    format!("m_{j} = {v}{}", if exact { "" } else { " (upper bound)" }),
                    json!({ "j": j, "value": v, "exact": exact }),
                );
            }
            Ok(0)
        }
    }
}

fn spectrum_of(a: &MapListArgs, s: &mut Session, fixed: bool) -> Result<i32> {
    let maps = load_maps(&a.maps, &a.context)?;
    let refs: Vec<&DigitalMap> = maps.iter().collect();
    let budget = s.budget(maps[0].domain().len(), maps[0].codomain().len());
    let r = if fixed { hfs(&refs, budget)? } else { hcs(&refs, budget)? };
    s.note_exact(r.values.is_exact());
    s.emit(
        r.values.to_string(),
        json!({
            "values": r.values.to_vec(),
            "exact": r.values.is_exact(),
            "classes_complete": r.classes_complete,
            "min": r.min_value,
        }),
    );
    Ok(0)
}

fn minimum_of(a: &MapListArgs, s: &mut Session, fixed: bool) -> Result<i32> {
    let maps = load_maps(&a.maps, &a.context)?;
    let refs: Vec<&DigitalMap> = maps.iter().collect();
    let budget = s.budget(maps[0].domain().len(), maps[0].codomain().len());
    let (v, exact) = if fixed { mcf(&refs, budget)? } else { mc(&refs, budget)? };
    s.note_exact(exact);
    s.emit(
        format!("{v}{}", if exact { "" } else { " (upper bound)" }),
        json!({ "value": v, "exact": exact }),
    );
    Ok(0)
}

fn emit_reports(reports: &[VerificationReport], s: &mut Session) {
    for r in reports {
        s.emit(r.to_text_line(), serde_json::to_value(r).expect("reports serialize"));
    }
    if s.format == OutputFormat::Text {
        let pass = reports.iter().filter(|r| r.verdict.is_pass()).count();
        let fail = reports.iter().filter(|r| r.verdict.is_fail()).count();
        let skip = reports.len() - pass - fail;
        s.out.push(format!("{pass} passed, {fail} failed, {skip} skipped"));
    }
}

fn run_config(g: &GlobalArgs, budget: Option<EnumerationBudget>, format: OutputFormat, i_default: usize) -> RunConfig {
    RunConfig {
        budget,
        i_max: g.i_max.unwrap_or(i_default),
        j_max: g.j_max.unwrap_or(RunConfig::default().j_max),
        format,
        deterministic: !g.parallel,
        seed: g.seed,
        ..RunConfig::default()
    }
}

fn budget_from(g: &GlobalArgs, env_nodes: Option<&str>) -> Result<Option<EnumerationBudget>> {
    let nodes = match (g.budget_nodes, env_nodes) {
        (Some(n), _) => Some(n),
        (None, Some(v)) => Some(v.trim().parse::<u64>().map_err(|_| {
            Error::invalid(format!("{BUDGET_NODES_ENV} must be a decimal integer, got `{v}`"))
        })?),
        (None, None) => None,
    };
    let time = match g.budget_time {
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => return Err(Error::invalid(format!("time budget must be positive, got {t}"))),
        None => None,
    };
    if nodes.is_none() && time.is_none() {
        return Ok(None);
    }
    let budget = EnumerationBudget {
        max_results: None,
        max_nodes: nodes,
        time_budget: time,
    };
    budget.validate()?;
    Ok(Some(budget))
}

fn execute(cli: Cli, env_nodes: Option<&str>, s: &mut Session) -> Result<i32> {
    let budget = budget_from(&cli.global, env_nodes)?;
    s.budget = budget;
    let g = &cli.global;
    let i_max = g.i_max.unwrap_or(3);
    let j_max = g.j_max.unwrap_or(4);
    if i_max < 2 {
        return Err(Error::invalid("--i-max must be at least 2"));
    }
    if j_max < 1 {
        return Err(Error::invalid("--j-max must be at least 1"));
    }
    match cli.command {
        Command::Image(c) => run_image(c, s),
        Command::Map(c) => run_map(c, s),
        Command::Maps(c) => run_maps(c, s),
        Command::Homotopy(c) => run_homotopy(c, s),
        Command::Spectrum(c) => run_spectrum(c, s, i_max),
        Command::Hspectrum(c) => run_hspectrum(c, s, j_max),
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            let mut cfg = run_config(g, budget, s.format, 3);
            if let Some(n) = a.instances {
                cfg.random_instances = n;
            }
            if let Some(k) = a.max_points {
                cfg.random_max_points = k;
            }
            let reports = run_suite(suite, &cfg)?;
            emit_reports(&reports, s);
            Ok(verify::exit_code(&reports))
        }
        Command::Conjecture(a) => {
            let cfg = run_config(g, budget, s.format, 4);
            let reports = conjecture_search(a.max_x, a.max_y, cfg.i_max, &cfg)?;
            if s.format == OutputFormat::Text {
                s.out.push(format!("# reduction: {}", verify::REDUCTION));
            }
            emit_reports(&reports, s);
            Ok(verify::exit_code(&reports))
        }
    }
}

/// Runs one command line with `env_nodes` standing in for
/// `DIGITOP_BUDGET_NODES`.
pub fn dispatch_with_env<I, T>(args: I, env_nodes: Option<&str>) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = if cli.global.format == "json" { OutputFormat::Json } else { OutputFormat::Text };
    let mut s = Session {
        format,
        budget: None,
        out: Vec::new(),
        partial: false,
    };
    let result = execute(cli, env_nodes, &mut s);
    let mut stdout = s.out.join("\n");
    if !stdout.is_empty() {
        stdout.push('\n');
    }
    match result {
        Ok(code) if s.partial && code == 0 => CliOutput {
            code: 2,
            stdout,
            stderr: "budget exhausted: the result above is partial\n".into(),
        },
        Ok(code) => CliOutput { code, stdout, stderr: String::new() },
        Err(e) => CliOutput {
            code: 2,
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs one command line, reading the node budget override from the
/// environment.
pub fn dispatch<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var(BUDGET_NODES_ENV).ok();
    dispatch_with_env(args, env.as_deref())
}
