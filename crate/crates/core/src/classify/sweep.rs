//! Exhaustive sweep over permutations of a given interior size, reduced to
//! one representative per equivalence class.

use std::sync::Arc;

use rayon::prelude::*;

use super::{Analysis, Catalog, DEFAULT_CHAIN_BUDGET};
use crate::error::{PlabError, Result};
use crate::graphs::{canonical_certificate, shape, CanonicalCertificate, LabeledGraph, Shape, DEFAULT_VERTEX_BUDGET};
use crate::positroid::{next_permutation, DecoratedPermutation, GrassmannNecklace};
use crate::symmetry::{is_orbit_minimum, is_prime};

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Largest `n` swept; defaults to `max(3, 2i + 2)`.
    pub max_n: Option<usize>,
    pub vertex_budget: usize,
    pub chain_budget: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Keep every class rather than only prime very-mutation-friendly ones.
    pub all_classes: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_n: None,
            vertex_budget: DEFAULT_VERTEX_BUDGET,
            chain_budget: DEFAULT_CHAIN_BUDGET,
            jobs: None,
            all_classes: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationRow {
    pub canonical_permutation: DecoratedPermutation,
    pub n: usize,
    pub interior_size: usize,
    pub prime: bool,
    pub mutation_friendly: bool,
    pub very_mutation_friendly: bool,
    pub graph_order: usize,
    pub graph_size: usize,
    pub shape: Shape,
    pub certificate: CanonicalCertificate,
    pub catalog_name: Option<String>,
}

/// Prime very-mutation-friendly classes of interior size `i`.
pub fn classify_prime_vmf(i: usize) -> Result<Vec<ClassificationRow>> {
    classify_with(i, &ClassifyOptions::default())
}

pub fn classify_with(i: usize, opts: &ClassifyOptions) -> Result<Vec<ClassificationRow>> {
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| PlabError::invalid(format!("thread pool: {e}")))?
            .install(|| run(i, opts)),
        None => run(i, opts),
    }
}

fn run(i: usize, opts: &ClassifyOptions) -> Result<Vec<ClassificationRow>> {
    let max_n = opts.max_n.unwrap_or((2 * i + 2).max(3));
    if max_n > 12 {
        return Err(PlabError::invalid(format!("sweeping n = {max_n} is out of reach")));
    }
    let reps = class_representatives(i, max_n);
    let catalog = Catalog::standard()?;
    let rows: Vec<Option<ClassificationRow>> = reps
        .par_iter()
        .map(|pi| analyse(pi, i, opts, catalog))
        .collect::<Result<_>>()?;
    let mut rows: Vec<ClassificationRow> = rows.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.canonical_permutation.cmp(&b.canonical_permutation));
    Ok(rows)
}

/// Lexicographically least member of every class of connected permutations
/// with interior size `i` and `3 ≤ n ≤ max_n`, sorted.
pub(crate) fn class_representatives(i: usize, max_n: usize) -> Vec<DecoratedPermutation> {
    let shards: Vec<(usize, u8, u8)> = (3..=max_n)
        .flat_map(|n| {
            (1..=n as u8).flat_map(move |a| (1..=n as u8).filter(move |&b| b != a).map(move |b| (n, a, b)))
        })
        .collect();
    let mut reps: Vec<DecoratedPermutation> = shards
        .par_iter()
        .flat_map_iter(|&(n, a, b)| {
            let mut rest: Vec<u8> = (1..=n as u8).filter(|&x| x != a && x != b).collect();
            let mut found = Vec::new();
            loop {
                let mut images = vec![a, b];
                images.extend_from_slice(&rest);
                let pi = DecoratedPermutation::from_images_unchecked(images);
                if pi.is_connected() && pi.expected_size_unchecked() == i + n && is_orbit_minimum(&pi) {
                    found.push(pi);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            found
        })
        .collect();
    reps.sort();
    reps
}

fn analyse(
    pi: &DecoratedPermutation,
    i: usize,
    opts: &ClassifyOptions,
    catalog: &Catalog,
) -> Result<Option<ClassificationRow>> {
    let necklace = Arc::new(GrassmannNecklace::from_permutation(pi)?);
    let prime = is_prime(&necklace);
    if !prime && !opts.all_classes {
        return Ok(None);
    }
    let analysis = Analysis::new(&necklace, opts.vertex_budget)?;
    let mutation_friendly = analysis.mutation_friendly();
    let very = mutation_friendly && analysis.very_mutation_friendly(opts.chain_budget)?;
    if !very && !opts.all_classes {
        return Ok(None);
    }
    let ex = analysis.explored();
    let g = LabeledGraph::from_edges(ex.vertices.len(), &ex.edges);
    let certificate = canonical_certificate(&g);
    Ok(Some(ClassificationRow {
        canonical_permutation: pi.clone(),
        n: pi.n(),
        interior_size: i,
        prime,
        mutation_friendly,
        very_mutation_friendly: very,
        graph_order: g.order(),
        graph_size: g.size(),
        shape: shape(&g),
        catalog_name: catalog.name_of(&certificate).map(str::to_string),
        certificate,
    }))
}
