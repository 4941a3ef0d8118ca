//! Exact canonical certificates by colour refinement plus
//! individualisation-refinement search.
//!
//! Every leaf of the search tree is a discrete colouring, i.e. a vertex
//! ordering; the certificate is the lexicographically least upper-triangle
//! adjacency bitstring among all leaves. Leaves are produced by an
//! isomorphism-invariant procedure, so two graphs get the same certificate
//! exactly when they are isomorphic.

use std::fmt;

use super::LabeledGraph;
use crate::error::PlabError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCertificate {
    order: usize,
    size: usize,
    bits: Vec<u64>,
}

impl CanonicalCertificate {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The graph in its canonical labelling.
    pub fn graph(&self) -> LabeledGraph<usize> {
        let m = self.adjacency_matrix();
        let mut edges = Vec::new();
        for (i, row) in m.iter().enumerate() {
            edges.extend((i + 1..self.order).filter(|&j| row[j]).map(|j| (i, j)));
        }
        LabeledGraph::from_edges(self.order, &edges)
    }

    /// Adjacency matrix of the canonical labelling.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.order;
        let mut m = vec![vec![false; n]; n];
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.bits[idx / 64] >> (63 - idx % 64) & 1 == 1 {
                    m[i][j] = true;
                    m[j][i] = true;
                }
                idx += 1;
            }
        }
        m
    }
}

impl fmt::Display for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.order, self.size)?;
        for w in &self.bits {
            write!(f, "{w:016x}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for CanonicalCertificate {
    type Err = PlabError;

    fn from_str(text: &str) -> Result<Self, PlabError> {
        let bad = || PlabError::invalid(format!("malformed certificate {text:?}"));
        let mut fields = text.split(':');
        let order: usize = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
        let size: usize = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
        let hex = fields.next().ok_or_else(bad)?;
        let words = (order * order.saturating_sub(1) / 2).div_ceil(64);
        if fields.next().is_some() || hex.len() != 16 * words {
            return Err(bad());
        }
        let bits = (0..words)
            .map(|w| u64::from_str_radix(&hex[16 * w..16 * w + 16], 16).map_err(|_| bad()))
            .collect::<Result<Vec<u64>, PlabError>>()?;
        if bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() != size {
            return Err(bad());
        }
        Ok(CanonicalCertificate { order, size, bits })
    }
}

impl serde::Serialize for CanonicalCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for CanonicalCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn canonical_certificate<P>(g: &LabeledGraph<P>) -> CanonicalCertificate {
    let n = g.order();
    let mut best: Option<Vec<u64>> = None;
    let colors = vec![0u32; n];
    search(g, colors, &mut best);
    CanonicalCertificate {
        order: n,
        size: g.size(),
        bits: best.unwrap_or_default(),
    }
}

pub fn isomorphic<P, Q>(a: &LabeledGraph<P>, b: &LabeledGraph<Q>) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_certificate(a) == canonical_certificate(b)
}

/// Refines `colors` to the coarsest equitable colouring below it. Colours are
/// dense ranks, ordered first by the previous colour then by the sorted
/// multiset of neighbour colours, so the result is invariant.
fn refine<P>(g: &LabeledGraph<P>, colors: &mut [u32]) -> usize {
    let n = colors.len();
    let mut cells = count_distinct(colors);
    loop {
        let keys: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut rank = 0u32;
        for (pos, &v) in order.iter().enumerate() {
            if pos > 0 && keys[order[pos - 1]] != keys[v] {
                rank += 1;
            }
            colors[v] = rank;
        }
        let now = if n == 0 { 0 } else { rank as usize + 1 };
        if now == cells {
            return cells;
        }
        cells = now;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search<P>(g: &LabeledGraph<P>, mut colors: Vec<u32>, best: &mut Option<Vec<u64>>) {
    let n = colors.len();
    if refine(g, &mut colors) == n {
        let leaf = leaf_bits(g, &colors);
        if best.as_ref().is_none_or(|b| leaf < *b) {
            *best = Some(leaf);
        }
        return;
    }
    // Target cell: smallest non-singleton cell, ties broken by colour.
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let target = (0..n)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("non-discrete colouring has a non-singleton cell") as u32;
    for v in 0..n {
        if colors[v] != target {
            continue;
        }
        let child: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
            .collect();
        search(g, child, best);
    }
}

fn leaf_bits<P>(g: &LabeledGraph<P>, colors: &[u32]) -> Vec<u64> {
    let n = colors.len();
    let mut inv = vec![0usize; n];
    for (v, &c) in colors.iter().enumerate() {
        inv[c as usize] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(inv[i], inv[j]) {
                bits[idx / 64] |= 1 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    bits
}
