//! JSON file formats for images and maps.
//!
//! Image:
//!
//! ```json
//! {"name": "L", "dimension": 2, "points": [[0,0],[1,0],[1,1]],
//!  "adjacency": {"type": "ct", "t": 1}}
//! ```
//!
//! with `{"type": "explicit", "edges": [[0,1],[1,2]]}` as the alternative
//! adjacency. Indices refer to the order of the `points` array; loading
//! re-sorts the points and returns the permutation that was applied.
//!
//! Map: `{"domain": <image>, "codomain": <image>, "assignment": [..]}` where an
//! image is either an inline image object or a string naming a builtin
//! (`builtin:cube`) or an image file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::Builtin;
use crate::image::{AdjacencySpec, DigitalImage, Point};
use crate::maps::DigitalMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum AdjacencyFile {
    Ct { t: usize },
    Explicit { edges: Vec<[usize; 2]> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub points: Vec<Vec<i64>>,
    pub adjacency: AdjacencyFile,
}

/// An image reference inside a map file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageRef {
    Named(String),
    Inline(ImageFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: ImageRef,
    pub codomain: ImageRef,
    pub assignment: Vec<usize>,
}

/// A loaded image and `permutation[file_index] = canonical_index`.
#[derive(Debug, Clone)]
pub struct LoadedImage {
    pub image: DigitalImage,
    pub permutation: Vec<usize>,
}

impl LoadedImage {
    /// True when the file already listed its points in canonical order.
    pub fn was_canonical(&self) -> bool {
        self.permutation.iter().enumerate().all(|(a, &b)| a == b)
    }
}

pub fn image_to_file(image: &DigitalImage) -> ImageFile {
    let adjacency = match image.adjacency() {
        AdjacencySpec::Ct(t) => AdjacencyFile::Ct { t: *t },
        AdjacencySpec::Explicit(edges) => AdjacencyFile::Explicit {
            edges: edges.iter().map(|&(a, b)| [a, b]).collect(),
        },
    };
    ImageFile {
        name: image.name().map(str::to_owned),
        dimension: image.dimension(),
        points: image.points().iter().map(|p| p.coords().to_vec()).collect(),
        adjacency,
    }
}

pub fn image_from_file(file: ImageFile) -> Result<LoadedImage> {
    let adjacency = match file.adjacency {
        AdjacencyFile::Ct { t } => AdjacencySpec::Ct(t),
        AdjacencyFile::Explicit { edges } => {
            AdjacencySpec::Explicit(edges.into_iter().map(|[a, b]| (a, b)).collect())
        }
    };
    let points = file.points.into_iter().map(Point::new).collect();
    let (image, permutation) =
        DigitalImage::with_permutation(file.dimension, points, adjacency, file.name)?;
    Ok(LoadedImage { image, permutation })
}

fn parse_error(source: &str, e: serde_json::Error) -> Error {
    Error::Parse {
        path: source.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Parses an image document; `source` names it in diagnostics.
pub fn parse_image(text: &str, source: &str) -> Result<LoadedImage> {
    let file: ImageFile = serde_json::from_str(text).map_err(|e| parse_error(source, e))?;
    image_from_file(file)
}

pub fn load_image_file(path: &Path) -> Result<LoadedImage> {
    parse_image(&read(path)?, &path.display().to_string())
}

fn resolve(reference: &str, base: Option<&Path>) -> PathBuf {
    let p = Path::new(reference);
    match base {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.to_path_buf(),
    }
}

/// Loads `builtin:<name>`, an inline JSON object, or a file path (relative
/// paths resolved against `base` when given).
pub fn load_image_ref(reference: &str, base: Option<&Path>) -> Result<LoadedImage> {
    let r = reference.trim();
    if r.starts_with("builtin:") {
        let image = r.parse::<Builtin>()?.build()?;
        let permutation = (0..image.len()).collect();
        return Ok(LoadedImage { image, permutation });
    }
    if r.starts_with('{') {
        return parse_image(r, "<inline>");
    }
    load_image_file(&resolve(r, base))
}

fn resolve_image(reference: ImageRef, base: Option<&Path>) -> Result<LoadedImage> {
    match reference {
        ImageRef::Named(s) => load_image_ref(&s, base),
        ImageRef::Inline(file) => image_from_file(file),
    }
}

/// The map file form of a map, with both images inlined.
pub fn map_to_file(f: &DigitalMap) -> MapFile {
    MapFile {
        domain: ImageRef::Inline(image_to_file(f.domain())),
        codomain: ImageRef::Inline(image_to_file(f.codomain())),
        assignment: f.assignment().to_vec(),
    }
}

/// A map read from a file before the continuity check.
#[derive(Debug, Clone)]
pub struct RawMap {
    pub domain: Arc<DigitalImage>,
    pub codomain: Arc<DigitalImage>,
    pub assignment: Vec<usize>,
}

impl RawMap {
    pub fn validate(self) -> Result<DigitalMap> {
        DigitalMap::from_assignment(&self.domain, &self.codomain, self.assignment)
    }
}

/// Resolves the images of a map file and translates the assignment, given in
/// the files' point order, to canonical order. Continuity is not checked.
pub fn raw_map_from_file(file: MapFile, base: Option<&Path>) -> Result<RawMap> {
    let same = file.domain == file.codomain;
    let dom = resolve_image(file.domain, base)?;
    let domain = Arc::new(dom.image);
    let (codomain, cod_perm) = if same {
        (domain.clone(), dom.permutation.clone())
    } else {
        let cod = resolve_image(file.codomain, base)?;
        (Arc::new(cod.image), cod.permutation)
    };
    if file.assignment.len() != domain.len() {
        return Err(Error::invalid(format!(
            "assignment has {} entries but the domain has {} points",
            file.assignment.len(),
            domain.len()
        )));
    }
    let mut assignment = vec![0; domain.len()];
    for (x, &v) in file.assignment.iter().enumerate() {
        let v = *cod_perm.get(v).ok_or_else(|| {
            Error::invalid(format!("point {x} is sent to {v}, outside the codomain"))
        })?;
        assignment[dom.permutation[x]] = v;
    }
    Ok(RawMap {
        domain,
        codomain,
        assignment,
    })
}

/// Builds and validates a map from its file form.
pub fn map_from_file(file: MapFile, base: Option<&Path>) -> Result<DigitalMap> {
    raw_map_from_file(file, base)?.validate()
}

/// Parses a map document without checking continuity.
pub fn parse_raw_map(text: &str, source: &str, base: Option<&Path>) -> Result<RawMap> {
    let file: MapFile = serde_json::from_str(text).map_err(|e| parse_error(source, e))?;
    raw_map_from_file(file, base)
}

/// An inline JSON map document or a map file path.
pub fn load_raw_map_ref(reference: &str) -> Result<RawMap> {
    let r = reference.trim();
    if r.starts_with('{') {
        return parse_raw_map(r, "<inline>", None);
    }
    let path = Path::new(r);
    parse_raw_map(&read(path)?, &path.display().to_string(), path.parent())
}

pub fn parse_map(text: &str, source: &str, base: Option<&Path>) -> Result<DigitalMap> {
    let file: MapFile = serde_json::from_str(text).map_err(|e| parse_error(source, e))?;
    map_from_file(file, base)
}

pub fn load_map_file(path: &Path) -> Result<DigitalMap> {
    parse_map(&read(path)?, &path.display().to_string(), path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build, cycle};

    #[test]
    fn image_round_trip() {
        for b in [Builtin::Figure1, Builtin::Tee4, Builtin::Cube, Builtin::Discrete(3)] {
            let img = build(b).unwrap();
            let text = serde_json::to_string(&image_to_file(&img)).unwrap();
            let back = parse_image(&text, "mem").unwrap();
            assert!(back.was_canonical());
            assert_eq!(back.image, img);
            assert_eq!(back.image.name(), img.name());
        }
    }

    #[test]
    fn loader_canonicalizes() {
        let text = r#"{"dimension": 1, "points": [[4],[0],[2]],
                       "adjacency": {"type": "explicit", "edges": [[0,1]]}}"#;
        let loaded = parse_image(text, "mem").unwrap();
        assert_eq!(loaded.permutation, vec![2, 0, 1]);
        assert!(!loaded.was_canonical());
        assert_eq!(loaded.image.edges(), vec![(0, 2)]);
    }

    #[test]
    fn parse_errors_carry_position() {
        let text = "{\n  \"dimension\": 1,\n  \"points\": [[0]]\n  \"adjacency\": 3\n}";
        match parse_image(text, "bad.json") {
            Err(Error::Parse { path, line, .. }) => {
                assert_eq!(path, "bad.json");
                assert_eq!(line, 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn map_round_trip_and_named_images() {
        let c4 = Arc::new(cycle(4));
        let f = DigitalMap::from_assignment(&c4, &c4, vec![1, 2, 3, 0]).unwrap();
        let text = serde_json::to_string(&map_to_file(&f)).unwrap();
        let back = parse_map(&text, "mem", None).unwrap();
        assert_eq!(back, f);
        assert!(back.is_self_map());

        let named = r#"{"domain": "builtin:square4", "codomain": "builtin:tee4",
                        "assignment": [1,0,1,2]}"#;
        let g = parse_map(named, "mem", None).unwrap();
        assert_eq!(g.assignment(), &[1, 0, 1, 2]);
    }

    #[test]
    fn map_loader_reports_violation() {
        let text = r#"{"domain": "builtin:interval:0:2", "codomain": "builtin:interval:0:2",
                       "assignment": [0,2,0]}"#;
        assert!(matches!(
            parse_map(text, "mem", None),
            Err(Error::Discontinuous { x: 0, y: 1, .. })
        ));
        let short = r#"{"domain": "builtin:cube", "codomain": "builtin:cube", "assignment": [0]}"#;
        assert!(parse_map(short, "mem", None).is_err());
    }

    #[test]
    fn map_indices_follow_file_order() {
        // points listed out of order: file index 0 is (1), file index 1 is (0)
        let text = r#"{"domain": {"dimension":1,"points":[[1],[0]],"adjacency":{"type":"ct","t":1}},
                       "codomain": "builtin:singleton", "assignment": [0,0]}"#;
        let f = parse_map(text, "mem", None).unwrap();
        assert_eq!(f.assignment(), &[0, 0]);
        let text = r#"{"domain": "builtin:discrete:2",
                       "codomain": {"dimension":1,"points":[[5],[0]],"adjacency":{"type":"ct","t":1}},
                       "assignment": [0,1]}"#;
        // file codomain index 0 is (5), canonical index 1
        assert_eq!(parse_map(text, "mem", None).unwrap().assignment(), &[1, 0]);
    }

    #[test]
    fn image_refs() {
        assert_eq!(load_image_ref("builtin:cycle:6", None).unwrap().image.len(), 6);
        assert!(load_image_ref("builtin:nope", None).is_err());
        assert!(matches!(
            load_image_ref("/definitely/not/here.json", None),
            Err(Error::Io { .. })
        ));
        let inline = r#"{"dimension":1,"points":[[0],[1]],"adjacency":{"type":"ct","t":1}}"#;
        assert_eq!(load_image_ref(inline, None).unwrap().image.edge_count(), 1);
    }
}
