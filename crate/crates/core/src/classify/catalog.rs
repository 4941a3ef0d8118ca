//! Named exchange graphs and the reference classification data.

use std::sync::{Arc, OnceLock};

use crate::error::{PlabError, Result};
use crate::graphs::{canonical_certificate, cartesian_product, exchange_graph, CanonicalCertificate, LabeledGraph};
use crate::positroid::{DecoratedPermutation, GrassmannNecklace};
use crate::symmetry::is_prime;

const CLASSES: &str = include_str!("../../data/classes.txt");
const GRAPHS: &str = include_str!("../../data/graphs.txt");

/// Exchange-graph orders and names of all exchange graphs, products
/// included, by interior size. The names at interior size `c ≤ 3` are also
/// the possible C-constant graphs of co-dimension `c`.
pub const REFERENCE_PRODUCTS: [(usize, &[usize], &[&str]); 5] = [
    (0, &[1], &["A"]),
    (1, &[1, 2], &["A", "B"]),
    (2, &[1, 2, 3, 4, 5], &["A", "B", "C", "D", "B□B"]),
    (
        3,
        &[1, 2, 3, 4, 5, 6, 7, 8, 10, 14],
        &["A", "B", "C", "D", "E", "F", "G", "H", "I", "B□C", "B□B□B", "B□D"],
    ),
    (
        4,
        &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 19, 20, 25, 26, 28, 34, 42],
        &[
            "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "N", "O", "P", "Q", "R", "S", "T", "U",
            "V", "W", "X", "Y", "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "B□C", "B□B□B", "B□D", "B□E", "B□G", "B□F",
            "B□H", "B□I", "B□B□B□B", "B□B□C", "B□B□D", "C□C", "D□D",
        ],
    ),
];

/// One row of the reference classification: a permutation, its interior
/// size, exchange-graph order and graph name. Several rows may share an
/// equivalence class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceClass {
    pub interior: usize,
    pub permutation: DecoratedPermutation,
    pub order: usize,
    pub name: String,
}

pub fn reference_classes() -> Vec<ReferenceClass> {
    CLASSES
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            ReferenceClass {
                interior: f[0].parse().expect("interior column"),
                permutation: DecoratedPermutation::parse(f[1]).expect("permutation column"),
                order: f[2].parse().expect("order column"),
                name: f[3].to_string(),
            }
        })
        .collect()
}

/// Explicit adjacency lists, one-based, by graph name.
pub fn reference_adjacency_lists() -> Vec<(String, LabeledGraph<usize>)> {
    let mut out: Vec<(String, Vec<(usize, Vec<usize>)>)> = Vec::new();
    for line in GRAPHS.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        if !line.starts_with(' ') {
            out.push((line.trim().to_string(), Vec::new()));
            continue;
        }
        let (v, nbrs) = line.split_once("->").expect("adjacency line");
        let nbrs = nbrs.split(',').map(|w| w.trim().parse().expect("neighbour")).collect();
        out.last_mut().expect("name before list").1.push((v.trim().parse().expect("vertex"), nbrs));
    }
    out.into_iter()
        .map(|(name, lists)| {
            let borrowed: Vec<(usize, &[usize])> = lists.iter().map(|(v, n)| (*v, n.as_slice())).collect();
            let g = LabeledGraph::from_adjacency_lists(&borrowed).expect("well-formed reference list");
            (name, g)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
    pub graph: LabeledGraph<usize>,
    pub certificate: CanonicalCertificate,
    /// True when the graph comes from an explicit adjacency list; otherwise it
    /// is the exchange graph of `representative`.
    pub explicit: bool,
    pub representative: Option<DecoratedPermutation>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

static STANDARD: OnceLock<std::result::Result<Catalog, String>> = OnceLock::new();

impl Catalog {
    /// Graphs `A`–`Y`, `Z1`–`Z6`. Names without an explicit adjacency list are
    /// defined by the exchange graph of their first prime reference
    /// permutation.
    pub fn standard() -> Result<&'static Catalog> {
        STANDARD
            .get_or_init(|| Catalog::build().map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| PlabError::InternalConsistency(e.clone()))
    }

    fn build() -> Result<Catalog> {
        let explicit = reference_adjacency_lists();
        let rows = reference_classes();
        let mut names: Vec<String> = Vec::new();
        for r in &rows {
            if !names.contains(&r.name) {
                names.push(r.name.clone());
            }
        }
        let mut entries = Vec::new();
        for name in names {
            let mut candidates = rows.iter().filter(|r| r.name == name);
            let first = candidates.clone().next().expect("name from rows");
            let row = candidates
                .find(|r| GrassmannNecklace::from_permutation(&r.permutation).is_ok_and(|g| is_prime(&g)))
                .unwrap_or(first);
            let entry = match explicit.iter().find(|(n, _)| *n == name) {
                Some((_, g)) => CatalogEntry {
                    name: name.clone(),
                    order: g.order(),
                    certificate: canonical_certificate(g),
                    graph: g.clone(),
                    explicit: true,
                    representative: None,
                },
                None => {
                    let necklace = Arc::new(GrassmannNecklace::from_permutation(&row.permutation)?);
                    let g = exchange_graph(&necklace)?.unlabeled();
                    CatalogEntry {
                        name: name.clone(),
                        order: g.order(),
                        certificate: canonical_certificate(&g),
                        graph: g,
                        explicit: false,
                        representative: Some(row.permutation.clone()),
                    }
                }
            };
            entries.push(entry);
        }
        Ok(Catalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn name_of(&self, cert: &CanonicalCertificate) -> Option<&str> {
        self.entries.iter().find(|e| e.certificate == *cert).map(|e| e.name.as_str())
    }

    /// Evaluates a product expression such as `B□B□C`.
    pub fn resolve(&self, expr: &str) -> Result<LabeledGraph<usize>> {
        let mut factors = expr.split('□').map(|f| {
            self.get(f.trim())
                .map(|e| e.graph.clone())
                .ok_or_else(|| PlabError::invalid(format!("unknown graph name {f:?}")))
        });
        let mut acc = factors.next().ok_or_else(|| PlabError::invalid("empty graph expression"))??;
        for f in factors {
            acc = cartesian_product(&acc, &f?).unlabeled();
        }
        Ok(acc)
    }
}
