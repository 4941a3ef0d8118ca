//! Document formats and figure emitters: collection, necklace and graph JSON,
//! DOT, CSV, tiling SVG, and the on-disk enumeration cache.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classify::ClassificationRow;
use crate::collections::{Tiling, WSCollection};
use crate::cyclic::KSet;
use crate::error::{PlabError, Result};
use crate::graphs::{canonical_certificate, shape, CanonicalCertificate, ExchangeGraph, LabeledGraph, Shape};
use crate::positroid::{DecoratedPermutation, GrassmannNecklace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionDoc {
    pub n: usize,
    pub k: usize,
    pub necklace: Vec<Vec<u8>>,
    pub sets: Vec<Vec<u8>>,
}

impl CollectionDoc {
    pub fn from_collection(coll: &WSCollection) -> Self {
        let necklace = coll.necklace();
        CollectionDoc {
            n: necklace.n(),
            k: necklace.k(),
            necklace: necklace.sets().iter().map(|s| s.to_vec()).collect(),
            sets: coll.sets().into_iter().map(KSet::to_vec).collect(),
        }
    }

    /// Rebuilds and validates the collection.
    pub fn to_collection(&self) -> Result<WSCollection> {
        let necklace = Arc::new(necklace_from_lists(self.n, &self.necklace)?);
        if necklace.k() != self.k {
            return Err(PlabError::invalid(format!("necklace sets have size {}, not {}", necklace.k(), self.k)));
        }
        let sets = self.sets.iter().map(|s| KSet::new(self.n, s)).collect::<Result<Vec<_>>>()?;
        WSCollection::new(necklace, &sets)
    }
}

fn necklace_from_lists(n: usize, lists: &[Vec<u8>]) -> Result<GrassmannNecklace> {
    if lists.len() != n {
        return Err(PlabError::invalid(format!("a necklace on [{n}] has {n} sets, got {}", lists.len())));
    }
    GrassmannNecklace::new(lists.iter().map(|s| KSet::new(n, s)).collect::<Result<_>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceDoc {
    pub n: usize,
    pub k: usize,
    pub permutation: DecoratedPermutation,
    pub sets: Vec<Vec<u8>>,
}

impl NecklaceDoc {
    pub fn from_necklace(necklace: &GrassmannNecklace) -> Self {
        NecklaceDoc {
            n: necklace.n(),
            k: necklace.k(),
            permutation: necklace.permutation().clone(),
            sets: necklace.sets().iter().map(|s| s.to_vec()).collect(),
        }
    }
}

/// Reads a necklace from JSON: a bare list of sets, or an object carrying the
/// sets under `sets` or `necklace`.
pub fn parse_necklace_json(text: &str) -> Result<GrassmannNecklace> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let lists = match &value {
        serde_json::Value::Array(_) => value.clone(),
        serde_json::Value::Object(m) => m
            .get("sets")
            .or_else(|| m.get("necklace"))
            .cloned()
            .ok_or_else(|| PlabError::invalid("expected a \"sets\" or \"necklace\" field"))?,
        _ => return Err(PlabError::invalid("expected a list of sets")),
    };
    let lists: Vec<Vec<u8>> = serde_json::from_value(lists)?;
    necklace_from_lists(lists.len(), &lists)
}

/// Exchange graph document. `adjacency` uses one-based vertex numbers in the
/// form `"1 → 2,3,4"`; vertex `j` is `collections[j - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphDoc {
    pub permutation: DecoratedPermutation,
    pub n: usize,
    pub k: usize,
    pub order: usize,
    pub size: usize,
    pub shape: Shape,
    pub certificate: CanonicalCertificate,
    pub collections: Vec<Vec<Vec<u8>>>,
    pub adjacency: Vec<String>,
}

impl GraphDoc {
    pub fn from_exchange_graph(g: &ExchangeGraph, necklace: &GrassmannNecklace) -> Self {
        GraphDoc {
            permutation: necklace.permutation().clone(),
            n: necklace.n(),
            k: necklace.k(),
            order: g.order(),
            size: g.size(),
            shape: shape(g),
            certificate: canonical_certificate(g),
            collections: g
                .vertices()
                .iter()
                .map(|c| c.sets().into_iter().map(KSet::to_vec).collect())
                .collect(),
            adjacency: adjacency_lines(g),
        }
    }

    pub fn graph(&self) -> Result<LabeledGraph<usize>> {
        let lists = self.adjacency.iter().map(|l| parse_adjacency_line(l)).collect::<Result<Vec<_>>>()?;
        let borrowed: Vec<(usize, &[usize])> = lists.iter().map(|(v, n)| (*v, n.as_slice())).collect();
        LabeledGraph::from_adjacency_lists(&borrowed)
    }
}

pub fn adjacency_lines<P>(g: &LabeledGraph<P>) -> Vec<String> {
    (0..g.order())
        .map(|v| {
            let nbrs: Vec<String> = g.neighbors(v).iter().map(|w| (w + 1).to_string()).collect();
            format!("{} → {}", v + 1, nbrs.join(","))
        })
        .collect()
}

fn parse_adjacency_line(line: &str) -> Result<(usize, Vec<usize>)> {
    let bad = || PlabError::invalid(format!("malformed adjacency line {line:?}"));
    let (v, rest) = line.split_once('→').or_else(|| line.split_once("->")).ok_or_else(bad)?;
    let v = v.trim().parse().map_err(|_| bad())?;
    let nbrs = rest
        .split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| w.parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    Ok((v, nbrs))
}

/// Vertices are labelled by their one-based index; `tooltip` supplies the
/// hover text.
pub fn emit_dot<P>(g: &LabeledGraph<P>, mut tooltip: impl FnMut(&P) -> String) -> String {
    let mut out = String::from("graph exchange {\n");
    for (v, p) in g.vertices().iter().enumerate() {
        let tip = tooltip(p).replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "  {v} [label=\"{}\", tooltip=\"{tip}\"];", v + 1);
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

pub fn collection_tooltip(c: &WSCollection) -> String {
    c.sets().iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(" ")
}

pub const CSV_HEADER: &str = "Interior Size,Equivalence Class,Exchange Graph Order,Exchange Graph";

pub fn emit_csv(rows: &[ClassificationRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.interior_size,
            r.canonical_permutation,
            r.graph_order,
            r.catalog_name.as_deref().unwrap_or("")
        );
    }
    out
}

/// Draws the tiling with black and white faces as polygons and every vertex
/// labelled by its set.
pub fn emit_svg(t: &Tiling) -> String {
    const SCALE: f64 = 60.0;
    const MARGIN: f64 = 40.0;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in &t.positions {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let px = |(x, y): (f64, f64)| (MARGIN + (x - min_x) * SCALE, MARGIN + (max_y - y) * SCALE);
    let width = 2.0 * MARGIN + (max_x - min_x) * SCALE;
    let height = 2.0 * MARGIN + (max_y - min_y) * SCALE;
    let position = |s: &KSet| t.positions[t.vertices.binary_search(s).expect("face member is a vertex")];

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" \
         viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    for (class, fill, faces) in [("white", "#ffffff", &t.white_faces), ("black", "#404040", &t.black_faces)] {
        for members in faces.values() {
            let pts: Vec<(f64, f64)> = members.iter().map(|s| px(position(s))).collect();
            let points: Vec<String> = angular_order(&pts).into_iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                out,
                "  <polygon class=\"{class}\" points=\"{}\" fill=\"{fill}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                points.join(" ")
            );
        }
    }
    for (s, &p) in t.vertices.iter().zip(&t.positions) {
        let (x, y) = px(p);
        let _ = writeln!(out, "  <circle class=\"vertex\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#c03030\"/>");
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" font-family=\"sans-serif\">{s}</text>",
            x + 4.0,
            y - 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}

fn angular_order(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let m = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let mut sorted = pts.to_vec();
    sorted.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.total_cmp(&tb)
    });
    sorted
}

pub const CACHE_ENV: &str = "POSITROID_LAB_CACHE";
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CacheEntry {
    pub format_version: u32,
    /// Permutation string the value was computed from.
    pub key: String,
    pub value: serde_json::Value,
}

/// Content-addressed store: one single-line JSON file per key, named by the
/// SHA-256 of the key.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

static TEMP_COUNTER: AtomicUsize = AtomicUsize::new(0);

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$POSITROID_LAB_CACHE`, or `./.plab-cache`.
    pub fn from_env() -> Self {
        Cache::new(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| ".plab-cache".into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.json"))
    }

    /// `None` on a miss, an unreadable entry, a key collision or a format
    /// version other than the current one.
    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(text.trim_end()).ok()?;
        (entry.format_version == CACHE_FORMAT_VERSION && entry.key == key).then_some(entry)
    }

    pub fn put(&self, key: &str, value: serde_json::Value) -> Result<CacheEntry> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            format_version: CACHE_FORMAT_VERSION,
            key: key.to_string(),
            value,
        };
        let mut line = serde_json::to_string(&entry)?;
        line.push('\n');
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, line)?;
        fs::rename(&tmp, self.path_for(key))?;
        Ok(entry)
    }
}
