//! Exchange graphs (all maximal collections over a positroid, joined by
//! square moves) and C-constant subgraphs.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::LabeledGraph;
use crate::collections::{check_purity, find_square, greedy_extend, swap_sorted, WSCollection};
use crate::cyclic::{pairwise_weakly_separated, KSet};
use crate::error::{PlabError, Result};
use crate::positroid::GrassmannNecklace;

pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

pub type ExchangeGraph = LabeledGraph<WSCollection>;

/// Raw exploration result: collections as sorted mask lists in canonical
/// (lexicographic) order, and edges between their indices.
#[derive(Clone, Debug, Default)]
pub(crate) struct Explored {
    pub vertices: Vec<Vec<u64>>,
    pub edges: Vec<(usize, usize)>,
}

/// Breadth-first search over square moves from `start`, never mutating a
/// necklace set or a member of `frozen` (sorted).
pub(crate) fn explore(necklace: &GrassmannNecklace, start: Vec<u64>, frozen: &[u64], budget: usize) -> Result<Explored> {
    let n = necklace.n();
    let boundary = necklace.bits_sorted();
    let movable = |s: &u64| boundary.binary_search(s).is_err() && frozen.binary_search(s).is_err();

    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut order: Vec<Vec<u64>> = Vec::new();
    let mut edges = Vec::new();
    index.insert(start.clone(), 0);
    order.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let current = order[u].clone();
        for &victim in current.iter().filter(|s| movable(s)) {
            let Some((rep, ..)) = find_square(&current, n, victim) else {
                continue;
            };
            let next = swap_sorted(&current, victim, rep);
            let v = match index.get(&next) {
                Some(&v) => v,
                None => {
                    if order.len() >= budget {
                        return Err(PlabError::BudgetExceeded { limit: budget });
                    }
                    let v = order.len();
                    index.insert(next.clone(), v);
                    order.push(next);
                    queue.push_back(v);
                    v
                }
            };
            if u < v {
                edges.push((u, v));
            }
        }
    }

    // Renumber so that vertex order depends only on the collections.
    let mut perm: Vec<usize> = (0..order.len()).collect();
    perm.sort_by(|&a, &b| order[a].cmp(&order[b]));
    let mut new_index = vec![0; order.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }
    let mut edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (new_index[a], new_index[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mut slots: Vec<Option<Vec<u64>>> = order.into_iter().map(Some).collect();
    let vertices = perm.iter().map(|&old| slots[old].take().expect("each vertex once")).collect();
    Ok(Explored { vertices, edges })
}

fn into_graph(necklace: &Arc<GrassmannNecklace>, ex: Explored) -> ExchangeGraph {
    let vertices = ex
        .vertices
        .into_iter()
        .map(|sets| WSCollection::from_sorted_unchecked(necklace.clone(), sets, true))
        .collect();
    LabeledGraph::new(vertices, &ex.edges)
}

pub fn exchange_graph(necklace: &Arc<GrassmannNecklace>) -> Result<ExchangeGraph> {
    exchange_graph_with_budget(necklace, DEFAULT_VERTEX_BUDGET)
}

/// Fails with [`PlabError::BudgetExceeded`] once more than `budget`
/// collections have been discovered.
pub fn exchange_graph_with_budget(necklace: &Arc<GrassmannNecklace>, budget: usize) -> Result<ExchangeGraph> {
    let start = greedy_extend(necklace, &[]);
    check_purity(necklace, start.len())?;
    let ex = explore(necklace, start, &[], budget)?;
    Ok(into_graph(necklace, ex))
}

/// Induced subgraph of the exchange graph on collections containing `c`.
#[derive(Clone, Debug)]
pub struct CConstantGraph {
    pub graph: ExchangeGraph,
    /// `|W| - |C ∪ I|` for any maximal collection `W`, where `I` is the
    /// necklace.
    pub codimension: usize,
}

/// Explores from a maximal extension of `c`, mutating only members outside
/// `c` and the necklace. Since a square move changes one set, this reaches
/// exactly the collections containing `c` that are connected to the start
/// inside the induced subgraph; [`cconstant_graph`] callers who need the
/// full induced subgraph can compare against a filtered exchange graph.
pub fn cconstant_graph(necklace: &Arc<GrassmannNecklace>, c: &[KSet], budget: usize) -> Result<CConstantGraph> {
    let (n, k) = (necklace.n(), necklace.k());
    for s in c {
        if s.n() != n || s.len() != k || !necklace.positroid().contains_bits(s.bits()) {
            return Err(PlabError::invalid(format!("{s:?} is not a member of the positroid")));
        }
    }
    let mut with_boundary: Vec<KSet> = c.to_vec();
    with_boundary.extend_from_slice(necklace.sets());
    if !pairwise_weakly_separated(&with_boundary) {
        return Err(PlabError::invalid("C is not weakly separated together with the necklace"));
    }
    let mut frozen: Vec<u64> = with_boundary.iter().map(|s| s.bits()).collect();
    frozen.sort_unstable();
    frozen.dedup();
    let start = greedy_extend(necklace, &frozen);
    check_purity(necklace, start.len())?;
    let codimension = start.len() - frozen.len();
    let ex = explore(necklace, start, &frozen, budget)?;
    Ok(CConstantGraph {
        graph: into_graph(necklace, ex),
        codimension,
    })
}

/// Induced subgraph of `full` on vertices whose collections contain all of `c`.
pub fn filter_containing(full: &ExchangeGraph, c: &[KSet]) -> ExchangeGraph {
    let keep: Vec<usize> = (0..full.order())
        .filter(|&v| c.iter().all(|s| full.vertices()[v].contains(*s)))
        .collect();
    full.induced(&keep)
}
