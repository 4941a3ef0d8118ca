//! Friendliness predicates, the prime very-mutation-friendly classification
//! sweep, the named graph catalog and the table/theorem verifications.

mod catalog;
mod sweep;
mod verify;

pub use catalog::{
    reference_adjacency_lists, reference_classes, Catalog, CatalogEntry, ReferenceClass, REFERENCE_PRODUCTS,
};
pub use sweep::{classify_prime_vmf, classify_with, ClassificationRow, ClassifyOptions};
pub use verify::{
    catalan, compare_with_reference, compose_from_rows, compose_table_mainchare, triangulation_permutation,
    verify_catalan, verify_cconstant_tables, verify_cconstant_tables_with, verify_tree_cycle_theorems, CConstantReport,
    CatalanReport, CatalanRow, CodimensionSummary, ComposedGraph, CycleClass, ReferenceComparison, TheoremReport,
    PATH_FAMILY,
};

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::collections::{check_purity, greedy_extend};
use crate::cyclic::{quasi_adjacent_bits, ws_bits, KSet};
use crate::error::{PlabError, Result};
use crate::graphs::{explore, Explored, DEFAULT_VERTEX_BUDGET};
use crate::positroid::GrassmannNecklace;

/// Default node budget for the very-mutation-friendly chain search.
pub const DEFAULT_CHAIN_BUDGET: usize = 1_000_000;

/// Exchange-graph data shared by the predicates.
pub(crate) struct Analysis<'a> {
    necklace: &'a GrassmannNecklace,
    boundary: Vec<u64>,
    explored: Explored,
}

impl<'a> Analysis<'a> {
    pub(crate) fn new(necklace: &'a GrassmannNecklace, budget: usize) -> Result<Self> {
        let start = greedy_extend(necklace, &[]);
        check_purity(necklace, start.len())?;
        let explored = explore(necklace, start, &[], budget)?;
        Ok(Analysis {
            necklace,
            boundary: necklace.bits_sorted(),
            explored,
        })
    }

    pub(crate) fn explored(&self) -> &Explored {
        &self.explored
    }

    /// Whether the collections containing `c` (sorted, including the
    /// necklace) intersect in exactly `c`.
    fn friendly_over(&self, c: &[u64]) -> bool {
        let contains_all = |v: &Vec<u64>| c.iter().all(|s| v.binary_search(s).is_ok());
        let mut containing = self.explored.vertices.iter().filter(|v| contains_all(v));
        let Some(first) = containing.next() else {
            return false;
        };
        let mut common = first.clone();
        for v in containing {
            common.retain(|s| v.binary_search(s).is_ok());
        }
        common == c
    }

    pub(crate) fn mutation_friendly(&self) -> bool {
        self.friendly_over(&self.boundary)
    }

    /// Every member of `c` reaches a necklace set through quasi-adjacent
    /// members of `c`.
    fn applicable_over(&self, c: &[u64]) -> bool {
        applicable_bits(&self.boundary, c)
    }

    /// Sets that occur in some maximal collection but not in the necklace.
    fn interior_candidates(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.explored.vertices.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.retain(|s| self.boundary.binary_search(s).is_err());
        all
    }

    pub(crate) fn very_mutation_friendly(&self, budget: usize) -> Result<bool> {
        if !self.mutation_friendly() {
            return Ok(false);
        }
        let i = self.necklace.interior_size();
        if i <= 1 {
            return Ok(true);
        }
        let mut search = ChainSearch {
            analysis: self,
            candidates: self.interior_candidates(),
            target: i - 1,
            memo: HashMap::new(),
            nodes: 0,
            budget,
        };
        search.extend(&[])
    }
}

pub(crate) fn applicable_bits(boundary: &[u64], c: &[u64]) -> bool {
    let on_boundary = |s: u64| boundary.binary_search(&s).is_ok();
    let mut reached: Vec<bool> = c.iter().map(|&s| on_boundary(s)).collect();
    let mut queue: VecDeque<usize> = (0..c.len()).filter(|&x| reached[x]).collect();
    while let Some(x) = queue.pop_front() {
        for y in 0..c.len() {
            if !reached[y] && quasi_adjacent_bits(c[x], c[y]) {
                reached[y] = true;
                queue.push_back(y);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Searches for a chain of interior sets `T_1 ⊂ T_2 ⊂ … ⊂ T_{i−1}` with
/// `|T_j| = j` such that each `T_j ∪ I` is weakly separated and its
/// C-constant graph is applicable and mutation-friendly.
struct ChainSearch<'s, 'a> {
    analysis: &'s Analysis<'a>,
    candidates: Vec<u64>,
    target: usize,
    memo: HashMap<Vec<u64>, bool>,
    nodes: usize,
    budget: usize,
}

impl ChainSearch<'_, '_> {
    fn extend(&mut self, chosen: &[u64]) -> Result<bool> {
        if chosen.len() == self.target {
            return Ok(true);
        }
        if let Some(&known) = self.memo.get(chosen) {
            return Ok(known);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(PlabError::BudgetExceeded { limit: self.budget });
        }
        let mut found = false;
        for idx in 0..self.candidates.len() {
            let s = self.candidates[idx];
            if chosen.binary_search(&s).is_ok() || !chosen.iter().all(|&t| ws_bits(s, t)) {
                continue;
            }
            let mut next = chosen.to_vec();
            next.insert(next.binary_search(&s).unwrap_err(), s);
            if let Some(&known) = self.memo.get(&next) {
                if known {
                    found = true;
                    break;
                }
                continue;
            }
            let mut with_boundary = self.analysis.boundary.clone();
            with_boundary.extend_from_slice(&next);
            with_boundary.sort_unstable();
            if !self.analysis.applicable_over(&with_boundary) || !self.analysis.friendly_over(&with_boundary) {
                self.memo.insert(next, false);
                continue;
            }
            if self.extend(&next)? {
                found = true;
                break;
            }
        }
        self.memo.insert(chosen.to_vec(), found);
        Ok(found)
    }
}

/// The intersection of all maximal collections is exactly the necklace.
pub fn is_mutation_friendly(necklace: &GrassmannNecklace) -> Result<bool> {
    Ok(Analysis::new(necklace, DEFAULT_VERTEX_BUDGET)?.mutation_friendly())
}

/// Sets (outside the necklace) lying in every maximal collection.
pub fn frozen_interior_sets(necklace: &GrassmannNecklace) -> Result<Vec<KSet>> {
    let a = Analysis::new(necklace, DEFAULT_VERTEX_BUDGET)?;
    let mut common = a.explored.vertices[0].clone();
    for v in &a.explored.vertices[1..] {
        common.retain(|s| v.binary_search(s).is_ok());
    }
    common.retain(|s| a.boundary.binary_search(s).is_err());
    Ok(common.into_iter().map(|b| KSet::from_bits_unchecked(necklace.n(), b)).collect())
}

/// Whether every member of `c` (taken together with the necklace) is joined
/// to a necklace set by a quasi-adjacency path inside `c ∪ I`.
pub fn is_applicable(necklace: &GrassmannNecklace, c: &[KSet]) -> Result<bool> {
    let mut bits: Vec<u64> = necklace.bits_sorted();
    for s in c {
        if s.n() != necklace.n() || s.len() != necklace.k() {
            return Err(PlabError::invalid(format!("{s:?} is not a {}-subset of [{}]", necklace.k(), necklace.n())));
        }
        bits.push(s.bits());
    }
    bits.sort_unstable();
    bits.dedup();
    if !bits.iter().enumerate().all(|(x, &a)| bits[x + 1..].iter().all(|&b| ws_bits(a, b))) {
        return Err(PlabError::invalid("collection is not weakly separated"));
    }
    Ok(applicable_bits(&necklace.bits_sorted(), &bits))
}

pub fn is_very_mutation_friendly(necklace: &GrassmannNecklace) -> Result<bool> {
    Analysis::new(necklace, DEFAULT_VERTEX_BUDGET)?.very_mutation_friendly(DEFAULT_CHAIN_BUDGET)
}

/// Convenience wrapper building the necklace from a permutation string.
pub fn necklace_of(perm: &str) -> Result<Arc<GrassmannNecklace>> {
    let pi = crate::positroid::DecoratedPermutation::parse(perm)?;
    Ok(Arc::new(GrassmannNecklace::from_permutation(&pi)?))
}
