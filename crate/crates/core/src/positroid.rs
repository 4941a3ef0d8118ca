//! Grassmann necklaces, decorated permutations and positroid membership.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::{full_mask, gale_leq_bits, parse_label_string, write_label, KSet, MAX_N};
use crate::error::{PlabError, Result};

/// A permutation of `[n]`, stored one-based: `images[i - 1] = π(i)`.
///
/// Only connected permutations correspond to the necklaces this crate works
/// with; arbitrary bijections are still representable so that connectedness
/// and the symmetry operations can be evaluated on them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DecoratedPermutation {
    images: Vec<u8>,
}

impl DecoratedPermutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_N {
            return Err(PlabError::invalid(format!("permutation length {n} outside [1, {MAX_N}]")));
        }
        let mut seen = 0u64;
        for &v in &images {
            if v == 0 || v as usize > n {
                return Err(PlabError::invalid(format!("value {v} outside [1, {n}]")));
            }
            if seen >> (v - 1) & 1 == 1 {
                return Err(PlabError::invalid(format!("value {v} repeated")));
            }
            seen |= 1 << (v - 1);
        }
        Ok(DecoratedPermutation { images })
    }

    /// Caller guarantees `images` is a bijection of `[n]`.
    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(DecoratedPermutation::new(images.clone()).is_ok());
        DecoratedPermutation { images }
    }

    /// Parses the digit-string form used in the classification tables, with
    /// values of ten or more in parentheses: `"3(10)98712654"`.
    pub fn parse(text: &str) -> Result<Self> {
        let malformed = |reason: String| PlabError::MalformedPermutation {
            input: text.to_string(),
            reason,
        };
        let values = parse_label_string(text).map_err(malformed)?;
        let images = values
            .into_iter()
            .map(|v| u8::try_from(v).map_err(|_| malformed(format!("value {v} too large"))))
            .collect::<Result<Vec<u8>>>()?;
        DecoratedPermutation::new(images).map_err(|e| malformed(e.to_string()))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `π(i)` for one-based `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn inverse(&self) -> DecoratedPermutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        DecoratedPermutation { images: inv }
    }

    /// False iff some proper circular interval `[i, j)` is mapped onto itself.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        for start in 0..n {
            let mut interval = 0u64;
            let mut image = 0u64;
            for len in 0..n - 1 {
                let p = (start + len) % n;
                interval |= 1 << p;
                image |= 1 << (self.images[p] - 1);
                if interval == image {
                    return false;
                }
            }
        }
        true
    }

    /// Number of alignments: pairs `{i, j}` with `i, π(i), π(j), j` distinct
    /// and cyclically ordered.
    pub fn alignment_count(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 1..=n {
            let pi = self.apply(i);
            if pi == i {
                continue;
            }
            for j in 1..=n {
                let pj = self.apply(j);
                if j == i || pj == j || pj == pi || pj == i || pi == j {
                    continue;
                }
                if cyclic4(i, pi, pj, j) {
                    count += 1;
                }
            }
        }
        count
    }

    /// `k = |I_1|`: the number of `j` with `j < π⁻¹(j)`.
    pub fn k(&self) -> usize {
        let inv = self.inverse();
        (1..=self.n()).filter(|&j| j < inv.apply(j)).count()
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(PlabError::Disconnected(self.to_string()))
        }
    }

    /// `k(n - k) + 1 - A(π)`: the size of every maximal weakly separated
    /// collection over the corresponding necklace.
    pub fn expected_collection_size(&self) -> Result<usize> {
        self.require_connected()?;
        Ok(self.expected_size_unchecked())
    }

    pub(crate) fn expected_size_unchecked(&self) -> usize {
        let (n, k) = (self.n(), self.k());
        k * (n - k) + 1 - self.alignment_count()
    }

    /// Collection size minus the `n` boundary sets.
    pub fn interior_size(&self) -> Result<usize> {
        self.require_connected()?;
        self.expected_size_unchecked()
            .checked_sub(self.n())
            .ok_or_else(|| PlabError::InternalConsistency(format!("negative interior size for {self}")))
    }
}

/// Four distinct values on the circle, in this cyclic order.
#[inline]
fn cyclic4(a: usize, b: usize, c: usize, d: usize) -> bool {
    let s = [a, b, c, d];
    (0..4).filter(|&i| s[i] > s[(i + 1) % 4]).count() <= 1
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.images {
            write_label(f, v as usize)?;
        }
        Ok(())
    }
}

impl fmt::Debug for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "π{self}")
    }
}

impl TryFrom<String> for DecoratedPermutation {
    type Error = PlabError;
    fn try_from(s: String) -> Result<Self> {
        DecoratedPermutation::parse(&s)
    }
}

impl From<DecoratedPermutation> for String {
    fn from(p: DecoratedPermutation) -> String {
        p.to_string()
    }
}

/// A connected Grassmann necklace `(I_1, ..., I_n)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GrassmannNecklace {
    n: usize,
    k: usize,
    sets: Vec<KSet>,
    permutation: DecoratedPermutation,
}

impl GrassmannNecklace {
    /// Validates the necklace conditions and connectedness. `k` is taken from
    /// `I_1`.
    pub fn new(sets: Vec<KSet>) -> Result<Self> {
        let n = sets.len();
        if n < 3 {
            return Err(PlabError::invalid(format!("necklace needs n >= 3, got {n}")));
        }
        let k = sets[0].len();
        for (idx, s) in sets.iter().enumerate() {
            if s.n() != n {
                return Err(PlabError::invalid(format!("I_{} is over [{}], expected [{n}]", idx + 1, s.n())));
            }
            if s.len() != k {
                return Err(PlabError::invalid(format!("I_{} has size {}, expected {k}", idx + 1, s.len())));
            }
        }
        let mut images = vec![0u8; n];
        for i in 1..=n {
            let cur = sets[i - 1].bits();
            let next = sets[i % n].bits();
            let i_bit = 1u64 << (i - 1);
            let next_label_bit = 1u64 << (i % n);
            let kept = cur & !i_bit;
            if next & kept != kept || next & next_label_bit == 0 {
                return Err(PlabError::invalid(format!(
                    "I_{} = {:?} must contain {} and I_{i} \\ {{{i}}}",
                    i % n + 1,
                    sets[i % n],
                    i % n + 1
                )));
            }
            let added = next & !kept;
            images[i - 1] = match added.count_ones() {
                // i ∉ I_i; the position would be a fixed point
                0 => i as u8,
                1 => added.trailing_zeros() as u8 + 1,
                _ => unreachable!("sizes agree, so at most one label is added"),
            };
        }
        let permutation = DecoratedPermutation::new(images)
            .map_err(|e| PlabError::invalid(format!("necklace does not induce a permutation: {e}")))?;
        permutation.require_connected()?;
        let rebuilt = necklace_sets(&permutation);
        if rebuilt != sets {
            return Err(PlabError::invalid("necklace is not the necklace of its permutation"));
        }
        Ok(GrassmannNecklace { n, k, sets, permutation })
    }

    /// `I_i = { j : j <_i π⁻¹(j) }`.
    pub fn from_permutation(pi: &DecoratedPermutation) -> Result<Self> {
        pi.require_connected()?;
        if pi.n() < 3 {
            return Err(PlabError::invalid(format!("necklace needs n >= 3, got {}", pi.n())));
        }
        let sets = necklace_sets(pi);
        let k = sets[0].len();
        Ok(GrassmannNecklace { n: pi.n(), k, sets, permutation: pi.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[KSet] {
        &self.sets
    }

    /// `I_i`, one-based and cyclic.
    pub fn get(&self, i: usize) -> KSet {
        self.sets[(i + self.n - 1) % self.n]
    }

    pub fn permutation(&self) -> &DecoratedPermutation {
        &self.permutation
    }

    pub fn contains(&self, s: KSet) -> bool {
        self.sets.contains(&s)
    }

    pub(crate) fn bits_sorted(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.sets.iter().map(|s| s.bits()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn expected_collection_size(&self) -> usize {
        self.permutation.expected_size_unchecked()
    }

    pub fn interior_size(&self) -> usize {
        self.expected_collection_size() - self.n
    }

    pub fn positroid(&self) -> PositroidView<'_> {
        PositroidView { necklace: self }
    }
}

fn necklace_sets(pi: &DecoratedPermutation) -> Vec<KSet> {
    let n = pi.n();
    let inv = pi.inverse();
    (1..=n)
        .map(|i| {
            let pos = |x: usize| (x + n - i) % n;
            let bits = (1..=n)
                .filter(|&j| pos(j) < pos(inv.apply(j)))
                .fold(0u64, |acc, j| acc | 1 << (j - 1));
            KSet::from_bits_unchecked(n, bits)
        })
        .collect()
}

pub fn permutation_from_necklace(necklace: &GrassmannNecklace) -> DecoratedPermutation {
    necklace.permutation.clone()
}

pub fn necklace_from_permutation(pi: &DecoratedPermutation) -> Result<GrassmannNecklace> {
    GrassmannNecklace::from_permutation(pi)
}

/// The positroid of a necklace: all `J` with `I_i <=_i J` for every `i`.
/// Membership is evaluated on demand.
#[derive(Clone, Copy)]
pub struct PositroidView<'a> {
    necklace: &'a GrassmannNecklace,
}

impl PositroidView<'_> {
    pub fn contains(&self, j: KSet) -> Result<bool> {
        if j.n() != self.necklace.n || j.len() != self.necklace.k {
            return Err(PlabError::invalid(format!(
                "{j:?} is not a {}-subset of [{}]",
                self.necklace.k, self.necklace.n
            )));
        }
        Ok(self.contains_bits(j.bits()))
    }

    #[inline]
    pub fn contains_bits(&self, j: u64) -> bool {
        let n = self.necklace.n;
        self.necklace
            .sets
            .iter()
            .enumerate()
            .all(|(idx, s)| gale_leq_bits(n, idx + 1, s.bits(), j))
    }

    /// All members in canonical order.
    pub fn elements(&self) -> Vec<KSet> {
        let n = self.necklace.n;
        k_subsets(n, self.necklace.k)
            .filter(|&b| self.contains_bits(b))
            .map(|b| KSet::from_bits_unchecked(n, b))
            .collect()
    }
}

/// All k-subsets of `[n]` as masks in increasing order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = full_mask(n);
    let mut cur = if k == 0 {
        Some(0u64)
    } else if k <= n {
        Some((1u64 << k) - 1)
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            let c = out & out.wrapping_neg();
            let r = out + c;
            let next = (((r ^ out) >> 2) / c) | r;
            (next <= limit && next.count_ones() as usize == k).then_some(next)
        };
        Some(out)
    })
}

/// Calls `f` on every permutation of `[n]` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[u8])) {
    let mut p: Vec<u8> = (1..=n as u8).collect();
    loop {
        f(&p);
        if !next_permutation(&mut p) {
            break;
        }
    }
}

pub(crate) fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All connected permutations of `[n]`.
pub fn connected_permutations(n: usize) -> Vec<DecoratedPermutation> {
    let mut out = Vec::new();
    for_each_permutation(n, |p| {
        let pi = DecoratedPermutation::from_images_unchecked(p.to_vec());
        if pi.is_connected() {
            out.push(pi);
        }
    });
    out
}
