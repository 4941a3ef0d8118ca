//! Maximal weakly separated collections over a positroid, square-move
//! mutations, and the plabic tiling face structure.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::cyclic::{pairwise_weakly_separated, quasi_adjacent_bits, ws_bits, BitIter, KSet};
use crate::error::{PlabError, Result};
use crate::graphs::LabeledGraph;
use crate::positroid::GrassmannNecklace;

/// A weakly separated collection over a fixed necklace, stored as sorted
/// masks (canonical order).
#[derive(Clone, Debug)]
pub struct WSCollection {
    necklace: Arc<GrassmannNecklace>,
    sets: Vec<u64>,
    maximal: bool,
}

impl PartialEq for WSCollection {
    fn eq(&self, other: &Self) -> bool {
        self.sets == other.sets && self.necklace == other.necklace
    }
}

impl Eq for WSCollection {}

impl WSCollection {
    /// Validates weak separation and positroid membership; maximality is
    /// decided exactly by trying every other positroid member.
    pub fn new(necklace: Arc<GrassmannNecklace>, sets: &[KSet]) -> Result<Self> {
        let (n, k) = (necklace.n(), necklace.k());
        for s in sets {
            if s.n() != n || s.len() != k {
                return Err(PlabError::invalid(format!("{s:?} is not a {k}-subset of [{n}]")));
            }
            if !necklace.positroid().contains_bits(s.bits()) {
                return Err(PlabError::invalid(format!("{s:?} is outside the positroid")));
            }
        }
        if !pairwise_weakly_separated(sets) {
            return Err(PlabError::invalid("collection is not weakly separated"));
        }
        let mut bits: Vec<u64> = sets.iter().map(|s| s.bits()).collect();
        bits.sort_unstable();
        bits.dedup();
        let maximal = necklace
            .positroid()
            .elements()
            .iter()
            .all(|j| bits.binary_search(&j.bits()).is_ok() || !bits.iter().all(|&s| ws_bits(s, j.bits())));
        Ok(WSCollection { necklace, sets: bits, maximal })
    }

    pub(crate) fn from_sorted_unchecked(necklace: Arc<GrassmannNecklace>, sets: Vec<u64>, maximal: bool) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        WSCollection { necklace, sets, maximal }
    }

    pub fn necklace(&self) -> &Arc<GrassmannNecklace> {
        &self.necklace
    }

    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> Vec<KSet> {
        let n = self.necklace.n();
        self.sets.iter().map(|&b| KSet::from_bits_unchecked(n, b)).collect()
    }

    pub fn bits(&self) -> &[u64] {
        &self.sets
    }

    pub fn contains(&self, s: KSet) -> bool {
        self.contains_bits(s.bits())
    }

    #[inline]
    pub fn contains_bits(&self, s: u64) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Members that are not necklace sets, in canonical order.
    pub fn interior(&self) -> Vec<KSet> {
        let boundary = self.necklace.bits_sorted();
        let n = self.necklace.n();
        self.sets
            .iter()
            .filter(|b| boundary.binary_search(b).is_err())
            .map(|&b| KSet::from_bits_unchecked(n, b))
            .collect()
    }
}

/// Greedily extends `base` (which must already be weakly separated and inside
/// the positroid) by positroid members in canonical order.
pub(crate) fn greedy_extend(necklace: &GrassmannNecklace, base: &[u64]) -> Vec<u64> {
    let mut sets: Vec<u64> = base.to_vec();
    sets.extend(necklace.sets().iter().map(|s| s.bits()));
    sets.sort_unstable();
    sets.dedup();
    for j in necklace.positroid().elements() {
        let j = j.bits();
        if sets.binary_search(&j).is_err() && sets.iter().all(|&s| ws_bits(s, j)) {
            let pos = sets.binary_search(&j).unwrap_err();
            sets.insert(pos, j);
        }
    }
    sets
}

/// The greedy maximal collection containing the necklace. Its size is checked
/// against `k(n-k) + 1 - A(π)`.
pub fn initial_maximal_collection(necklace: &Arc<GrassmannNecklace>) -> Result<WSCollection> {
    let sets = greedy_extend(necklace, &[]);
    check_purity(necklace, sets.len())?;
    Ok(WSCollection::from_sorted_unchecked(necklace.clone(), sets, true))
}

pub(crate) fn check_purity(necklace: &GrassmannNecklace, size: usize) -> Result<()> {
    let expected = necklace.expected_collection_size();
    if size != expected {
        return Err(PlabError::InternalConsistency(format!(
            "maximal collection over {} has {size} sets, expected {expected}",
            necklace.permutation()
        )));
    }
    Ok(())
}

/// One square move: `base ∪ {a, c}` is replaced by `base ∪ {b, d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MutationSite {
    pub victim: KSet,
    pub replacement: KSet,
    pub base: KSet,
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
}

/// Finds the square around `victim` inside the sorted collection `sets`.
/// Returns `(replacement, base, a, b, c, d)` using the smallest witness.
#[inline]
pub(crate) fn find_square(sets: &[u64], n: usize, victim: u64) -> Option<(u64, u64, u32, u32, u32, u32)> {
    let has = |s: u64| sets.binary_search(&s).is_ok();
    for a in BitIter(victim) {
        for c in BitIter(victim >> (a + 1) << (a + 1)) {
            let base = victim & !(1 << a) & !(1 << c);
            let (ba, bc) = (base | 1 << a, base | 1 << c);
            // b strictly between a and c, d in the complementary arc
            for b in a + 1..c {
                if victim >> b & 1 == 1 || !has(ba | 1 << b) || !has(bc | 1 << b) {
                    continue;
                }
                for d in (c + 1..n as u32).chain(0..a) {
                    if victim >> d & 1 == 1 || !has(bc | 1 << d) || !has(ba | 1 << d) {
                        continue;
                    }
                    return Some((base | 1 << b | 1 << d, base, a, b, c, d));
                }
            }
        }
    }
    None
}

/// Every square move available in `coll`, one per victim, ordered by victim.
/// Necklace sets are never victims.
pub fn mutation_sites(coll: &WSCollection) -> Vec<MutationSite> {
    let n = coll.necklace.n();
    let boundary = coll.necklace.bits_sorted();
    let ks = |b: u64| KSet::from_bits_unchecked(n, b);
    coll.sets
        .iter()
        .filter(|s| boundary.binary_search(s).is_err())
        .filter_map(|&victim| {
            let (rep, base, a, b, c, d) = find_square(&coll.sets, n, victim)?;
            Some(MutationSite {
                victim: ks(victim),
                replacement: ks(rep),
                base: ks(base),
                a: a as u8 + 1,
                b: b as u8 + 1,
                c: c as u8 + 1,
                d: d as u8 + 1,
            })
        })
        .collect()
}

/// Replaces `victim` by `replacement` in a sorted mask list.
#[inline]
pub(crate) fn swap_sorted(sets: &[u64], victim: u64, replacement: u64) -> Vec<u64> {
    let mut out: Vec<u64> = sets.iter().copied().filter(|&s| s != victim).collect();
    let pos = out.binary_search(&replacement).unwrap_or_else(|p| p);
    out.insert(pos, replacement);
    out
}

pub fn mutate(coll: &WSCollection, site: &MutationSite) -> Result<WSCollection> {
    let base = site.base.bits();
    let bit = |l: u8| 1u64 << (l - 1);
    let (a, b, c, d) = (bit(site.a), bit(site.b), bit(site.c), bit(site.d));
    let current = coll.contains_bits(base | a | c)
        && site.victim.bits() == base | a | c
        && site.replacement.bits() == base | b | d
        && !coll.contains_bits(base | b | d)
        && [a | b, b | c, c | d, d | a].iter().all(|&r| coll.contains_bits(base | r))
        && !coll.necklace.contains(site.victim);
    if !current {
        return Err(PlabError::invalid(format!("stale mutation site at {:?}", site.victim)));
    }
    let sets = swap_sorted(&coll.sets, site.victim.bits(), site.replacement.bits());
    let out = WSCollection::from_sorted_unchecked(coll.necklace.clone(), sets, coll.maximal);
    if cfg!(debug_assertions) {
        let all = out.sets();
        debug_assert!(pairwise_weakly_separated(&all));
        debug_assert!(all.iter().all(|s| coll.necklace.positroid().contains_bits(s.bits())));
    }
    Ok(out)
}

/// Plabic tiling of a maximal collection: white faces are the cliques of
/// members containing a common (k-1)-set, black faces the cliques of members
/// inside a common (k+1)-set, each of size at least three.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub vertices: Vec<KSet>,
    pub white_faces: BTreeMap<KSet, Vec<KSet>>,
    pub black_faces: BTreeMap<KSet, Vec<KSet>>,
    /// Planar position of each vertex, aligned with `vertices`.
    pub positions: Vec<(f64, f64)>,
}

/// Unit vector for label `i` in a clockwise fan over the upper half-plane.
pub fn boundary_direction(n: usize, i: usize) -> (f64, f64) {
    let theta = PI * (n + 1 - i) as f64 / (n + 1) as f64;
    (theta.cos(), theta.sin())
}

pub fn tiling(coll: &WSCollection) -> Tiling {
    let n = coll.necklace.n();
    let ks = |b: u64| KSet::from_bits_unchecked(n, b);
    let mut white: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut black: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let all = crate::cyclic::full_mask(n);
    for &s in &coll.sets {
        for x in BitIter(s) {
            white.entry(s & !(1 << x)).or_default().push(s);
        }
        for y in BitIter(all & !s) {
            black.entry(s | 1 << y).or_default().push(s);
        }
    }
    let keep = |m: BTreeMap<u64, Vec<u64>>| -> BTreeMap<KSet, Vec<KSet>> {
        m.into_iter()
            .filter(|(_, v)| v.len() >= 3)
            .map(|(k, v)| (ks(k), v.into_iter().map(ks).collect()))
            .collect()
    };
    let positions = coll
        .sets
        .iter()
        .map(|&s| {
            BitIter(s).fold((0.0, 0.0), |(x, y), b| {
                let (dx, dy) = boundary_direction(n, b as usize + 1);
                (x + dx, y + dy)
            })
        })
        .collect();
    Tiling {
        vertices: coll.sets(),
        white_faces: keep(white),
        black_faces: keep(black),
        positions,
    }
}

#[inline]
fn white_clique_size(sets: &[u64], label: u64) -> usize {
    sets.iter().filter(|&&s| s & label == label).count()
}

#[inline]
fn black_clique_size(sets: &[u64], label: u64) -> usize {
    sets.iter().filter(|&&s| s & label == s).count()
}

#[inline]
pub(crate) fn adjacent_bits(sets: &[u64], s: u64, t: u64) -> bool {
    quasi_adjacent_bits(s, t) && white_clique_size(sets, s & t) >= 3 && black_clique_size(sets, s | t) >= 3
}

/// Two members share an interior edge of the tiling: the edge lies on both a
/// white and a black face.
pub fn adjacent(coll: &WSCollection, s: KSet, t: KSet) -> Result<bool> {
    if !coll.contains(s) || !coll.contains(t) {
        return Err(PlabError::invalid(format!("{s:?} and {t:?} must both belong to the collection")));
    }
    Ok(adjacent_bits(&coll.sets, s.bits(), t.bits()))
}

/// Numbers of white and black faces having `s` as a vertex.
pub fn face_counts(coll: &WSCollection, s: KSet) -> (usize, usize) {
    let sets = &coll.sets;
    let bits = s.bits();
    let white = BitIter(bits).filter(|&x| white_clique_size(sets, bits & !(1 << x)) >= 3).count();
    let outside = crate::cyclic::full_mask(coll.necklace.n()) & !bits;
    let black = BitIter(outside).filter(|&y| black_clique_size(sets, bits | 1 << y) >= 3).count();
    (white, black)
}

/// An interior member surrounded by exactly two white and two black faces.
pub fn is_mutatable_by_faces(coll: &WSCollection, s: KSet) -> bool {
    coll.contains(s) && !coll.necklace.contains(s) && face_counts(coll, s) == (2, 2)
}

fn check_interior_subset(coll: &WSCollection, w: &[KSet]) -> Result<()> {
    for s in w {
        if !coll.contains(*s) {
            return Err(PlabError::invalid(format!("{s:?} is not in the collection")));
        }
        if coll.necklace.contains(*s) {
            return Err(PlabError::invalid(format!("{s:?} is a necklace set")));
        }
    }
    Ok(())
}

/// Graph on `w` (members of `coll` disjoint from the necklace) whose edges
/// join adjacent sets.
pub fn adjacency_graph(coll: &WSCollection, w: &[KSet]) -> Result<LabeledGraph<KSet>> {
    check_interior_subset(coll, w)?;
    let mut vertices = w.to_vec();
    vertices.sort();
    vertices.dedup();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if adjacent_bits(&coll.sets, vertices[i].bits(), vertices[j].bits()) {
                edges.push((i, j));
            }
        }
    }
    Ok(LabeledGraph::new(vertices, &edges))
}

/// Partition of `w` into connected components of its adjacency graph.
pub fn adjacency_grouping(coll: &WSCollection, w: &[KSet]) -> Result<Vec<Vec<KSet>>> {
    let g = adjacency_graph(coll, w)?;
    Ok(g.components()
        .into_iter()
        .map(|comp| comp.into_iter().map(|v| g.vertices()[v]).collect())
        .collect())
}
