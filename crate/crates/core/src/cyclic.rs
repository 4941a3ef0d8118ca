//! Cyclic orders on the ground set `[n]`, k-subsets as bitmasks, and the weak
//! separation predicate every other module is built on.

use std::fmt;

use crate::error::{PlabError, Result};

/// Largest supported ground set. Labels live in bits `0..n` of a `u64`.
pub const MAX_N: usize = 32;

/// A subset of `[n]` stored as a bitmask; label `j` occupies bit `j - 1`.
///
/// The derived ordering compares the raw mask first, which is the canonical
/// order used for every deterministic tie-break in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSet {
    bits: u64,
    n: u8,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl KSet {
    pub fn new(n: usize, labels: &[u8]) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u64;
        for &l in labels {
            if l == 0 || l as usize > n {
                return Err(PlabError::invalid(format!("label {l} outside [1, {n}]")));
            }
            let b = 1u64 << (l - 1);
            if bits & b != 0 {
                return Err(PlabError::invalid(format!("label {l} repeated")));
            }
            bits |= b;
        }
        Ok(KSet { bits, n: n as u8 })
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(PlabError::invalid(format!("mask {bits:#x} has labels beyond {n}")));
        }
        Ok(KSet { bits, n: n as u8 })
    }

    /// Caller guarantees `n <= MAX_N` and no bit at or above `n` is set.
    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert!(n <= MAX_N && bits & !full_mask(n) == 0);
        KSet { bits, n: n as u8 }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, label: u8) -> bool {
        label >= 1 && (label as usize) <= self.n() && self.bits >> (label - 1) & 1 == 1
    }

    /// Labels in ascending order.
    pub fn labels(self) -> impl Iterator<Item = u8> {
        BitIter(self.bits).map(|b| b as u8 + 1)
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.labels().collect()
    }

    /// Parse the textual form: labels separated by optional spaces, labels of
    /// two or more digits in parentheses (`"1 2 4 9"`, `"3 (10)"`, `"1249"`).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let labels = parse_label_string(text)
            .map_err(|reason| PlabError::invalid(format!("bad set {text:?}: {reason}")))?;
        let labels: Vec<u8> = labels
            .into_iter()
            .map(|l| u8::try_from(l).map_err(|_| PlabError::invalid(format!("label {l} too large"))))
            .collect::<Result<_>>()?;
        KSet::new(n, &labels)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in self.labels() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write_label(f, l as usize)?;
        }
        Ok(())
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

pub(crate) fn write_label(f: &mut impl fmt::Write, label: usize) -> fmt::Result {
    if label >= 10 {
        write!(f, "({label})")
    } else {
        write!(f, "{label}")
    }
}

/// Splits `"3(10)98"` or `"3 (10) 9 8"` into labels. Single digits stand alone,
/// longer numbers must be parenthesized.
pub(crate) fn parse_label_string(text: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    let mut chars = text.trim().chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            ' ' | '\t' => {}
            '0'..='9' => out.push(c as usize - '0' as usize),
            '(' => {
                let mut value = String::new();
                loop {
                    match chars.next() {
                        Some(')') => break,
                        Some(d @ '0'..='9') => value.push(d),
                        Some(other) => return Err(format!("unexpected {other:?} inside parentheses")),
                        None => return Err("unclosed parenthesis".into()),
                    }
                }
                if value.is_empty() {
                    return Err("empty parentheses".into());
                }
                out.push(value.parse().map_err(|_| format!("label {value} too large"))?);
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(PlabError::invalid(format!("ground set size {n} outside [1, {MAX_N}]")));
    }
    Ok(())
}

/// Iterates set bit positions of a mask, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// True iff some rotation of `seq` is strictly increasing.
pub fn cyclically_ordered(seq: &[u8]) -> Result<bool> {
    let mut seen = 0u64;
    for &x in seq {
        let b = 1u64 << (x as u64 % 64);
        if seen & b != 0 {
            return Err(PlabError::invalid(format!("element {x} repeated")));
        }
        seen |= b;
    }
    let len = seq.len();
    let descents = (0..len).filter(|&i| seq[i] > seq[(i + 1) % len]).count();
    Ok(descents <= 1)
}

/// Elements of `s` sorted by `<_anchor`, i.e. as a subsequence of
/// `(anchor, anchor+1, ..., n, 1, ..., anchor-1)`.
pub fn cyclic_sort(anchor: u8, s: KSet) -> Vec<u8> {
    let (high, low): (Vec<u8>, Vec<u8>) = s.labels().partition(|&l| l >= anchor);
    high.into_iter().chain(low).collect()
}

/// Chord test on raw masks: walking the circle, the elements of `a \ b` and
/// `b \ a` must form at most two runs.
#[inline]
pub fn ws_bits(a: u64, b: u64) -> bool {
    let only_a = a & !b;
    let diff = a ^ b;
    if only_a == 0 || only_a == diff {
        return true;
    }
    let mut changes = 0;
    let mut it = BitIter(diff);
    let first = it.next().map(|p| only_a >> p & 1).unwrap_or(0);
    let mut prev = first;
    for p in it {
        let cur = only_a >> p & 1;
        if cur != prev {
            changes += 1;
            if changes > 2 {
                return false;
            }
        }
        prev = cur;
    }
    if prev != first {
        changes += 1;
    }
    changes <= 2
}

/// Literal witness search: no `x, y, x', y'` cyclically ordered with
/// `x, x'` in `a \ b` and `y, y'` in `b \ a`. Quartic; kept as a cross-check.
pub fn ws_witness_search(a: u64, b: u64) -> bool {
    let only_a: Vec<u32> = BitIter(a & !b).collect();
    let only_b: Vec<u32> = BitIter(b & !a).collect();
    for &x in &only_a {
        for &x2 in &only_a {
            if x == x2 {
                continue;
            }
            for &y in &only_b {
                for &y2 in &only_b {
                    if y == y2 {
                        continue;
                    }
                    let seq = [x as u8, y as u8, x2 as u8, y2 as u8];
                    if cyclically_ordered(&seq).unwrap_or(false) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn weakly_separated(a: KSet, b: KSet) -> Result<bool> {
    if a.n != b.n {
        return Err(PlabError::invalid(format!(
            "sets over different ground sets ({} vs {})",
            a.n, b.n
        )));
    }
    let fast = ws_bits(a.bits, b.bits);
    debug_assert_eq!(fast, ws_witness_search(a.bits, b.bits), "chord test disagrees on {a:?} {b:?}");
    Ok(fast)
}

pub fn pairwise_weakly_separated(coll: &[KSet]) -> bool {
    coll.iter()
        .enumerate()
        .all(|(i, a)| coll[i + 1..].iter().all(|b| a.n == b.n && ws_bits(a.bits, b.bits)))
}

/// Rotates a mask so that `anchor` lands on bit 0.
#[inline]
pub(crate) fn rotate_to_anchor(n: usize, anchor: usize, bits: u64) -> u64 {
    let shift = anchor - 1;
    if shift == 0 {
        return bits;
    }
    ((bits >> shift) | (bits << (n - shift))) & full_mask(n)
}

/// Gale order `v <=_anchor w` on masks of equal popcount: every prefix of the
/// rotated order holds at least as many elements of `v` as of `w`.
#[inline]
pub(crate) fn gale_leq_bits(n: usize, anchor: usize, v: u64, w: u64) -> bool {
    let rv = rotate_to_anchor(n, anchor, v);
    let rw = rotate_to_anchor(n, anchor, w);
    let mut prefix = 0u64;
    for p in 0..n {
        prefix |= 1 << p;
        if (rv & prefix).count_ones() < (rw & prefix).count_ones() {
            return false;
        }
    }
    true
}

pub fn kset_leq(anchor: u8, v: KSet, w: KSet) -> Result<bool> {
    if v.len() != w.len() || v.n != w.n {
        return Err(PlabError::invalid(format!("cannot compare {v:?} and {w:?}")));
    }
    if anchor == 0 || anchor as usize > v.n() {
        return Err(PlabError::invalid(format!("anchor {anchor} outside [1, {}]", v.n)));
    }
    Ok(gale_leq_bits(v.n(), anchor as usize, v.bits, w.bits))
}

/// `|a ∩ b| = k - 1` for two k-sets.
#[inline]
pub fn quasi_adjacent(a: KSet, b: KSet) -> bool {
    quasi_adjacent_bits(a.bits, b.bits)
}

#[inline]
pub(crate) fn quasi_adjacent_bits(a: u64, b: u64) -> bool {
    a.count_ones() == b.count_ones() && (a ^ b).count_ones() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ks(n: usize, l: &[u8]) -> KSet {
        KSet::new(n, l).unwrap()
    }

    #[test]
    fn cyclic_order_examples() {
        assert!(cyclically_ordered(&[1, 2, 3]).unwrap());
        assert!(cyclically_ordered(&[3, 1, 2]).unwrap());
        assert!(!cyclically_ordered(&[1, 3, 4, 2]).unwrap());
        assert!(cyclically_ordered(&[1, 1]).is_err());
    }

    #[test]
    fn cyclic_order_by_rotation_oracle() {
        // (1,3,4,2): no rotation is increasing
        let seq = [1u8, 3, 4, 2];
        let any_rotation_sorted = (0..4).any(|r| {
            let rot: Vec<u8> = (0..4).map(|i| seq[(i + r) % 4]).collect();
            rot.windows(2).all(|w| w[0] < w[1])
        });
        assert!(!any_rotation_sorted);
    }

    #[test]
    fn cyclic_sort_examples() {
        assert_eq!(cyclic_sort(2, ks(4, &[1, 3])), vec![3, 1]);
        assert_eq!(cyclic_sort(1, ks(4, &[2, 4])), vec![2, 4]);
        assert_eq!(cyclic_sort(4, ks(4, &[1, 3])), vec![1, 3]);
    }

    #[test]
    fn weak_separation_examples() {
        assert!(!weakly_separated(ks(4, &[1, 3]), ks(4, &[2, 4])).unwrap());
        assert!(weakly_separated(ks(4, &[1, 2]), ks(4, &[2, 3])).unwrap());
        assert!(weakly_separated(ks(9, &[1, 2, 4, 9]), ks(9, &[1, 2, 6, 7])).unwrap());
        assert!(weakly_separated(ks(4, &[1]), ks(5, &[1])).is_err());
    }

    #[test]
    fn pairwise_examples() {
        assert!(pairwise_weakly_separated(&[]));
        let c: Vec<KSet> = [[1, 2], [2, 3], [3, 4], [1, 4], [1, 3]].iter().map(|l| ks(4, l)).collect();
        assert!(pairwise_weakly_separated(&c));
        assert!(!pairwise_weakly_separated(&[ks(4, &[1, 3]), ks(4, &[2, 4])]));
    }

    #[test]
    fn kset_leq_examples() {
        assert!(kset_leq(1, ks(4, &[1, 2]), ks(4, &[1, 3])).unwrap());
        assert!(kset_leq(2, ks(4, &[2, 3]), ks(4, &[1, 3])).unwrap());
        assert!(!kset_leq(1, ks(4, &[1, 3]), ks(4, &[1, 2])).unwrap());
        assert!(kset_leq(1, ks(4, &[1]), ks(4, &[1, 2])).is_err());
    }

    #[test]
    fn quasi_adjacency_examples() {
        assert!(quasi_adjacent(ks(4, &[1, 2]), ks(4, &[2, 3])));
        assert!(!quasi_adjacent(ks(4, &[1, 2]), ks(4, &[3, 4])));
        assert!(quasi_adjacent(ks(9, &[1, 2, 3, 4]), ks(9, &[2, 3, 4, 5])));
    }

    #[test]
    fn text_form() {
        let s = ks(10, &[3, 10]);
        assert_eq!(s.to_string(), "3 (10)");
        assert_eq!(KSet::parse(10, "3 (10)").unwrap(), s);
        assert_eq!(KSet::parse(9, "1 2 4 9").unwrap(), ks(9, &[1, 2, 4, 9]));
        assert_eq!(KSet::parse(9, "1249").unwrap(), ks(9, &[1, 2, 4, 9]));
        assert!(KSet::parse(9, "1 (2").is_err());
        assert!(KSet::parse(4, "5").is_err());
    }

    #[test]
    fn chord_test_matches_witness_search_exhaustively() {
        for n in 1..=8usize {
            let sets: Vec<u64> = (0..1u64 << n).filter(|b| b.count_ones() <= 4).collect();
            for &a in &sets {
                for &b in &sets {
                    if a.count_ones() != b.count_ones() {
                        continue;
                    }
                    assert_eq!(ws_bits(a, b), ws_witness_search(a, b), "n={n} a={a:b} b={b:b}");
                }
            }
        }
    }

    #[test]
    fn gale_order_is_a_partial_order() {
        for n in 1..=6usize {
            for k in 0..=n {
                let sets: Vec<KSet> = (0..1u64 << n)
                    .filter(|b| b.count_ones() as usize == k)
                    .map(|b| KSet::from_bits(n, b).unwrap())
                    .collect();
                for anchor in 1..=n as u8 {
                    let leq = |a, b| kset_leq(anchor, a, b).unwrap();
                    for &a in &sets {
                        assert!(leq(a, a));
                        for &b in &sets {
                            if a != b && leq(a, b) {
                                assert!(!leq(b, a));
                            }
                            for &c in &sets {
                                if leq(a, b) && leq(b, c) {
                                    assert!(leq(a, c));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gale_order_matches_componentwise_definition() {
        let n = 6;
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                if a.count_ones() != b.count_ones() {
                    continue;
                }
                let (sa, sb) = (KSet::from_bits(n, a).unwrap(), KSet::from_bits(n, b).unwrap());
                for anchor in 1..=n as u8 {
                    let pos = |x: u8| (x as usize + n - anchor as usize) % n;
                    let (va, vb) = (cyclic_sort(anchor, sa), cyclic_sort(anchor, sb));
                    let expected = va.iter().zip(&vb).all(|(&x, &y)| pos(x) <= pos(y));
                    assert_eq!(kset_leq(anchor, sa, sb).unwrap(), expected);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn ws_symmetric(a in 0u64..1 << 10, b in 0u64..1 << 10) {
            prop_assert_eq!(ws_bits(a, b), ws_bits(b, a));
        }

        #[test]
        fn ws_reflexive_and_small_difference(a in 0u64..1 << 10, bit in 0u32..10, other in 0u32..10) {
            prop_assert!(ws_bits(a, a));
            // swapping one element in for another leaves a one-element difference
            if a >> bit & 1 == 1 && a >> other & 1 == 0 {
                let b = (a & !(1 << bit)) | (1 << other);
                prop_assert!(ws_bits(a, b));
            }
        }

        #[test]
        fn cyclic_order_rotation_invariant(perm in Just((1u8..=8).collect::<Vec<_>>()).prop_shuffle(), len in 0usize..=8, r in 0usize..8) {
            let seq = &perm[..len];
            if len > 0 {
                let rot: Vec<u8> = (0..len).map(|i| seq[(i + r) % len]).collect();
                prop_assert_eq!(cyclically_ordered(seq).unwrap(), cyclically_ordered(&rot).unwrap());
            }
        }
    }
}
