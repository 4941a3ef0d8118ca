//! Operations on decorated permutations that preserve the exchange graph,
//! equivalence classes, glued necklaces and decomposition into prime parts.

use std::collections::{BTreeSet, VecDeque};

use crate::cyclic::{quasi_adjacent, KSet};
use crate::error::{PlabError, Result};
use crate::positroid::{DecoratedPermutation, GrassmannNecklace};

/// Reduces `x` into `1..=n`.
fn wrap(x: i64, n: usize) -> u8 {
    (x - 1).rem_euclid(n as i64) as u8 + 1
}

fn inverse_images(pi: &DecoratedPermutation) -> Vec<u8> {
    pi.inverse().images().to_vec()
}

pub fn inverse_op(pi: &DecoratedPermutation) -> DecoratedPermutation {
    pi.inverse()
}

/// Reflection `j ↦ t − π⁻¹(t − j)` for a reflection parameter `t`; shared by
/// the even (label) and odd (between-label) variants.
fn reflect(pi: &DecoratedPermutation, t: usize) -> DecoratedPermutation {
    let n = pi.n();
    let inv = inverse_images(pi);
    let images = (1..=n)
        .map(|j| {
            let arg = wrap(t as i64 - j as i64, n) as usize;
            wrap(t as i64 - inv[arg - 1] as i64, n)
        })
        .collect();
    DecoratedPermutation::from_images_unchecked(images)
}

/// Label reflection `LR^{t}` where `t = 2i` is a positive even integer.
pub fn lr_op(pi: &DecoratedPermutation, t: usize) -> Result<DecoratedPermutation> {
    if t == 0 || t % 2 != 0 {
        return Err(PlabError::invalid(format!("label reflection needs a positive even parameter, got {t}")));
    }
    Ok(reflect(pi, t))
}

/// Between-label reflection `BLR^{t}` where `t = 2i − 1` is a positive odd
/// integer; defined only for even `n`.
pub fn blr_op(pi: &DecoratedPermutation, t: usize) -> Result<DecoratedPermutation> {
    if t % 2 != 1 {
        return Err(PlabError::invalid(format!("between-label reflection needs a positive odd parameter, got {t}")));
    }
    if pi.n() % 2 != 0 {
        return Err(PlabError::invalid(format!(
            "between-label reflection requires even n, {pi} has n = {}",
            pi.n()
        )));
    }
    Ok(reflect(pi, t))
}

/// Rotation `R^i[π](j) = π(j − i) + i`.
pub fn rot_op(pi: &DecoratedPermutation, i: usize) -> DecoratedPermutation {
    let n = pi.n();
    let images = (1..=n)
        .map(|j| {
            let src = wrap(j as i64 - i as i64, n) as usize;
            wrap(pi.apply(src) as i64 + i as i64, n)
        })
        .collect();
    DecoratedPermutation::from_images_unchecked(images)
}

/// Every single-step image of `pi` under the generating operations.
pub fn generator_images(pi: &DecoratedPermutation) -> Vec<DecoratedPermutation> {
    let n = pi.n();
    let mut out = vec![inverse_op(pi)];
    for i in 1..=n {
        out.push(reflect(pi, 2 * i));
        if n % 2 == 0 {
            out.push(reflect(pi, 2 * i - 1));
        }
    }
    for i in 1..n {
        out.push(rot_op(pi, i));
    }
    out
}

/// The whole orbit in one pass: conjugates `g π^{±1} g⁻¹` over the `2n`
/// rotations and reflections `g` of the circle, which is exactly what the
/// generators produce under closure. May contain repeats.
pub fn group_images(pi: &DecoratedPermutation) -> Vec<DecoratedPermutation> {
    let n = pi.n();
    let inv = pi.inverse();
    let mut out = Vec::with_capacity(4 * n);
    for s in [pi, &inv] {
        for r in 0..n {
            out.push(rot_op(s, r));
        }
        for t in 1..=n {
            out.push(reflect(s, t));
        }
    }
    out
}

/// Whether `pi` is the lexicographically least member of its class.
pub fn is_orbit_minimum(pi: &DecoratedPermutation) -> bool {
    let n = pi.n();
    let inv = pi.inverse();
    let mut buf = vec![0u8; n];
    for (s, t_inv) in [(pi, &inv), (&inv, pi)] {
        for r in 1..n {
            for j in 1..=n {
                let src = wrap(j as i64 - r as i64, n) as usize;
                buf[j - 1] = wrap(s.apply(src) as i64 + r as i64, n);
            }
            if buf.as_slice() < pi.images() {
                return false;
            }
        }
        // reflect(s, t) = σ_t s⁻¹ σ_t
        for t in 1..=n {
            for j in 1..=n {
                let arg = wrap(t as i64 - j as i64, n) as usize;
                buf[j - 1] = wrap(t as i64 - t_inv.apply(arg) as i64, n);
            }
            if buf.as_slice() < pi.images() {
                return false;
            }
        }
    }
    inv.images() >= pi.images()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceClass {
    /// Lexicographically least member (by image sequence).
    pub canonical: DecoratedPermutation,
    pub orbit_size: usize,
    /// All members, sorted.
    pub members: Vec<DecoratedPermutation>,
}

impl EquivalenceClass {
    pub fn contains(&self, pi: &DecoratedPermutation) -> bool {
        self.members.binary_search(pi).is_ok()
    }
}

pub fn orbit(pi: &DecoratedPermutation) -> EquivalenceClass {
    let members: Vec<_> = group_images(pi).into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    EquivalenceClass {
        canonical: members[0].clone(),
        orbit_size: members.len(),
        members,
    }
}

/// Orbit by closing under [`generator_images`]; slower than [`orbit`], kept
/// as an independent check.
pub fn orbit_by_closure(pi: &DecoratedPermutation) -> EquivalenceClass {
    let mut seen: BTreeSet<DecoratedPermutation> = BTreeSet::from([pi.clone()]);
    let mut queue = VecDeque::from([pi.clone()]);
    while let Some(p) = queue.pop_front() {
        for q in generator_images(&p) {
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let members: Vec<_> = seen.into_iter().collect();
    EquivalenceClass {
        canonical: members[0].clone(),
        orbit_size: members.len(),
        members,
    }
}

pub fn canonical_rep(pi: &DecoratedPermutation) -> DecoratedPermutation {
    orbit(pi).canonical
}

/// Splices `pi1` on `[n]` and `pi2` on `[m]` into a permutation on
/// `[n + m − 2]` whose exchange graph is the product of the two.
pub fn glue(pi1: &DecoratedPermutation, pi2: &DecoratedPermutation) -> Result<DecoratedPermutation> {
    for p in [pi1, pi2] {
        if !p.is_connected() {
            return Err(PlabError::Disconnected(p.to_string()));
        }
    }
    let (n, m) = (pi1.n(), pi2.n());
    let mut images = vec![0u8; n + m - 2];
    for a in 1..n {
        images[a - 1] = if pi1.apply(a) == n {
            (pi2.apply(1) + n - 2) as u8
        } else {
            pi1.apply(a) as u8
        };
    }
    for a in 2..=m {
        images[n + a - 3] = if pi2.apply(a) == 1 {
            pi1.apply(n) as u8
        } else {
            (pi2.apply(a) + n - 2) as u8
        };
    }
    let glued = DecoratedPermutation::new(images)?;
    let (i1, i2, i3) = (pi1.interior_size()?, pi2.interior_size()?, glued.interior_size()?);
    if i3 != i1 + i2 {
        return Err(PlabError::InternalConsistency(format!(
            "glue({pi1}, {pi2}) = {glued} has interior {i3}, expected {i1} + {i2}"
        )));
    }
    Ok(glued)
}

/// The boundary cycle of necklace sets cut along quasi-adjacency chords.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Decomposition {
    /// Each part as increasing one-based necklace positions; the cyclic order
    /// of a part is the order of these positions around the boundary.
    pub parts: Vec<Vec<usize>>,
    /// Chords `(p, q)` with `p < q`, one-based positions.
    pub chords: Vec<(usize, usize)>,
    #[serde(skip)]
    sets: Vec<KSet>,
}

impl Decomposition {
    pub fn part_sets(&self, j: usize) -> Vec<KSet> {
        self.parts[j].iter().map(|&p| self.sets[p - 1]).collect()
    }

    /// A part whose members are pairwise quasi-adjacent (a triangle, or a
    /// complete graph formed by crossing chords) encloses no interior sets.
    pub fn is_complete_part(&self, j: usize) -> bool {
        let sets = self.part_sets(j);
        sets.iter()
            .enumerate()
            .all(|(x, &a)| sets[x + 1..].iter().all(|&b| quasi_adjacent(a, b)))
    }

    /// Parts that are not complete.
    pub fn proper_part_count(&self) -> usize {
        (0..self.len()).filter(|&j| !self.is_complete_part(j)).count()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Chords join quasi-adjacent necklace sets at non-consecutive positions.
/// Mutually crossing chords span a complete-graph part and do not separate
/// it; every chord crossed by no other chord splits its region in two.
pub fn decomposition_set(necklace: &GrassmannNecklace) -> Decomposition {
    let n = necklace.n();
    let sets = necklace.sets().to_vec();
    let mut chords = Vec::new();
    for p in 1..=n {
        for q in p + 2..=n {
            if p == 1 && q == n {
                continue;
            }
            if quasi_adjacent(sets[p - 1], sets[q - 1]) {
                chords.push((p, q));
            }
        }
    }
    let splitting: Vec<(usize, usize)> = chords
        .iter()
        .copied()
        .filter(|&c| chords.iter().all(|&d| !crosses(c, d)))
        .collect();
    let mut done = Vec::new();
    let mut pending = vec![(1..=n).collect::<Vec<usize>>()];
    while let Some(region) = pending.pop() {
        let cut = splitting.iter().find_map(|&(p, q)| {
            let i = region.iter().position(|&x| x == p)?;
            let j = region.iter().position(|&x| x == q)?;
            (j - i >= 2 && j - i <= region.len() - 2).then_some((i, j))
        });
        match cut {
            Some((i, j)) => {
                let inner = region[i..=j].to_vec();
                let mut outer = region[..=i].to_vec();
                outer.extend_from_slice(&region[j..]);
                pending.push(inner);
                pending.push(outer);
            }
            None => done.push(region),
        }
    }
    done.sort();
    Decomposition { parts: done, chords, sets }
}

pub fn is_prime(necklace: &GrassmannNecklace) -> bool {
    decomposition_set(necklace).len() == 1
}

/// Looks for a circular interval `S` of length `2..=n−2` with
/// `|π(S) ∖ S| = 1`, a sufficient sign of a product decomposition.
pub fn interval_nonprime_heuristic(pi: &DecoratedPermutation) -> bool {
    let n = pi.n();
    (1..=n).any(|start| {
        (2..=n.saturating_sub(2)).any(|len| {
            let inside = |x: usize| (x + n - start) % n < len;
            (0..len)
                .map(|o| (start - 1 + o) % n + 1)
                .filter(|&x| !inside(pi.apply(x)))
                .count()
                == 1
        })
    })
}
