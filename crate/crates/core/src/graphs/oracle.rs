//! Independent enumeration of maximal collections as maximal cliques of the
//! weak-separation graph on the positroid.

use crate::cyclic::ws_bits;
use crate::error::{PlabError, Result};
use crate::positroid::GrassmannNecklace;

/// Largest `C(n, k)` the oracle accepts.
pub const ORACLE_LIMIT: usize = 70;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All maximal weakly separated collections inside the positroid that
/// contain the necklace, as sorted mask lists in lexicographic order.
pub fn brute_force_maximal_collections(necklace: &GrassmannNecklace) -> Result<Vec<Vec<u64>>> {
    let (n, k) = (necklace.n(), necklace.k());
    if binomial(n, k) > ORACLE_LIMIT {
        return Err(PlabError::OracleUnavailable(format!(
            "C({n}, {k}) exceeds {ORACLE_LIMIT}"
        )));
    }
    let boundary = necklace.bits_sorted();
    let verts: Vec<u64> = necklace
        .positroid()
        .elements()
        .iter()
        .map(|s| s.bits())
        .filter(|&s| boundary.iter().all(|&b| ws_bits(s, b)))
        .collect();
    let m = verts.len();
    let nbr: Vec<u128> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && ws_bits(verts[i], verts[j]))
                .fold(0u128, |acc, j| acc | 1 << j)
        })
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&nbr, 0, (1u128 << m) - 1, 0, &mut |r| {
        let mut sets: Vec<u64> = (0..m).filter(|&i| r >> i & 1 == 1).map(|i| verts[i]).collect();
        sets.sort_unstable();
        out.push(sets);
    });
    out.sort();
    Ok(out)
}

fn bron_kerbosch(nbr: &[u128], r: u128, mut p: u128, mut x: u128, emit: &mut impl FnMut(u128)) {
    if p == 0 {
        if x == 0 {
            emit(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !nbr[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(nbr, r | 1 << v, p & nbr[v], x & nbr[v], emit);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::positroid::DecoratedPermutation;

    #[test]
    fn square_has_two_collections() {
        let g = GrassmannNecklace::from_permutation(&DecoratedPermutation::parse("3412").unwrap()).unwrap();
        let all = brute_force_maximal_collections(&g).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|c| c.len() == 5));
    }

    #[test]
    fn refuses_large_grassmannians() {
        let g = GrassmannNecklace::from_permutation(&DecoratedPermutation::parse("567891234").unwrap()).unwrap();
        assert!(matches!(brute_force_maximal_collections(&g), Err(PlabError::OracleUnavailable(_))));
    }
}
