//! Brute-force oracles shared by the integration suites. Nothing here goes
//! through the library's elimination or enumeration code.

#![allow(dead_code)]

use std::collections::HashSet;

/// All XOR combinations of `vs`; the vectors are independent iff this has
/// `2^len` distinct elements.
pub fn span(vs: &[u64]) -> HashSet<u64> {
    let mut out = HashSet::from([0u64]);
    for &v in vs {
        let shifted: Vec<u64> = out.iter().map(|&x| x ^ v).collect();
        out.extend(shifted);
    }
    out
}

pub fn independent(vs: &[u64]) -> bool {
    span(vs).len() == 1usize << vs.len()
}

pub fn rank(vs: &[u64]) -> usize {
    span(vs).len().trailing_zeros() as usize
}

/// Column `j` of an `r × m` matrix stored as column codes is `cols[j]`;
/// `aM` has coordinate `j` equal to `<a, cols[j]>`.
pub fn image_weight(a: u64, cols: &[u64]) -> u32 {
    cols.iter().map(|&c| (a & c).count_ones() & 1).sum()
}

/// Does `set` satisfy the rank-m criterion, checked over every ordered
/// `r × m` matrix (all `2^{rm}` of them, filtered by rank)?
pub fn generic_by_brute_force(set: &[u64], r: usize, m: usize) -> bool {
    let total = 1u64 << (r * m);
    let mask = (1u64 << r) - 1;
    (0..total).all(|packed| {
        let cols: Vec<u64> = (0..m).map(|j| (packed >> (j * r)) & mask).collect();
        !independent(&cols) || set.iter().any(|&a| image_weight(a, &cols) == 1)
    })
}

/// Number of unordered independent m-subsets of nonzero vectors, by
/// filtering every m-subset.
pub fn independent_subsets_brute(r: usize, m: usize) -> Vec<Vec<u64>> {
    fn rec(start: u64, end: u64, m: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == m {
            if independent(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for c in start..end {
            cur.push(c);
            rec(c + 1, end, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, 1 << r, m, &mut Vec::new(), &mut out);
    out
}

/// Every codeword of the code with parity-check rows `pcm` (row codes over
/// `n` bits), by scanning all `2^n` words.
pub fn codewords(pcm: &[u64], n: usize) -> Vec<u64> {
    (0u64..1 << n)
        .filter(|&x| pcm.iter().all(|&h| (h & x).count_ones() % 2 == 0))
        .collect()
}

/// Def.-style correctability: no nonzero codeword support inside `e`.
pub fn correctable_by_codewords(words: &[u64], e: u64) -> bool {
    words.iter().all(|&c| c == 0 || c & !e != 0)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn permutations(items: &[u64]) -> Vec<Vec<u64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Positions in `mask` (0-indexed), ascending.
pub fn positions(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| (mask >> i) & 1 == 1).collect()
}
