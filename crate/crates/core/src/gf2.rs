//! Bit-packed vectors and matrices over GF(2).
//!
//! Coordinates are 0-indexed in the Rust API. The text form writes
//! coordinate 0 leftmost, and the integer encoding used for canonical
//! ordering puts coordinate 0 in the least significant bit, so `"110"`
//! encodes to `3` and `"101"` to `5`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest dimension for which vectors can be packed into a single `u64`
/// code. Enumeration-based routines are limited to this.
pub const MAX_ENCODED_DIM: usize = 63;

const WORD_BITS: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Parity of the population count.
#[inline]
pub fn parity(x: u64) -> u32 {
    x.count_ones() & 1
}

/// A length-tagged vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// The unit vector with a one at coordinate `i`.
    ///
    /// # Panics
    /// Panics if `i >= len`.
    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    #[must_use]
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Decodes the integer encoding (coordinate 0 = least significant bit).
    ///
    /// # Panics
    /// Panics if `len > 64` or `code` has bits at or above `len`.
    #[must_use]
    pub fn from_encoded(len: usize, code: u64) -> Self {
        assert!(len <= WORD_BITS, "encoded vectors hold at most 64 coordinates");
        assert!(
            len == WORD_BITS || code >> len == 0,
            "code {code:#x} does not fit in {len} coordinates"
        );
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = code;
        }
        v
    }

    /// The integer encoding, if the vector fits in 64 bits.
    #[must_use]
    pub fn encoded(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            l if l <= WORD_BITS => Some(self.words[0]),
            _ => None,
        }
    }

    #[must_use]
    pub const fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub const fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    /// Adds `other` into `self` over GF(2).
    ///
    /// # Panics
    /// Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Weight of the coordinatewise product, i.e. `|supp(self) ∩ supp(other)|`.
    #[must_use]
    pub fn overlap(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in overlap");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Standard inner product over GF(2).
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        self.overlap(other) % 2 == 1
    }

    fn leading_index(&self) -> Option<usize> {
        self.support().next()
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(1, "empty bit string"));
        }
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::parse(1, format!("unexpected character {other:?}"))),
            }
        }
        Ok(v)
    }
}

/// Rank of a collection of encoded vectors.
#[must_use]
pub fn rank_of_encoded(vectors: &[u64]) -> usize {
    let mut basis = XorBasis::default();
    vectors.iter().filter(|&&v| basis.insert(v)).count()
}

/// Incremental basis over encoded vectors, kept with distinct leading bits
/// in descending order so that membership is a single reduction pass.
#[derive(Clone, Debug, Default)]
pub(crate) struct XorBasis {
    elems: Vec<u64>,
}

impl XorBasis {
    pub(crate) fn reduce(&self, mut v: u64) -> u64 {
        for &b in &self.elems {
            v = v.min(v ^ b);
        }
        v
    }

    pub(crate) fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Returns `true` if `v` was independent and the basis grew.
    pub(crate) fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pos = self.elems.partition_point(|&b| b > v);
        self.elems.insert(pos, v);
        true
    }

    pub(crate) fn dim(&self) -> usize {
        self.elems.len()
    }
}

/// Ordered rows of equal length over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    /// Builds a matrix from rows; all rows must share a length.
    pub fn new(rows: Vec<BitVec>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a `rows × cols` matrix whose rows are given by integer codes.
    #[must_use]
    pub fn from_encoded_rows(cols: usize, rows: &[u64]) -> Self {
        Self {
            cols,
            rows: rows.iter().map(|&c| BitVec::from_encoded(cols, c)).collect(),
        }
    }

    /// Builds the `rows × columns.len()` matrix whose columns are the given
    /// encoded vectors of length `rows`.
    #[must_use]
    pub fn from_encoded_columns(rows: usize, columns: &[u64]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            for i in 0..rows {
                if (c >> i) & 1 == 1 {
                    m.rows[i].set(j, true);
                }
            }
        }
        m
    }

    #[must_use]
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn col_count(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    #[must_use]
    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_bits(self.rows.iter().map(|r| r.get(j)))
    }

    /// The restriction to the listed columns, in the listed order.
    #[must_use]
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        Self {
            cols: columns.len(),
            rows: self
                .rows
                .iter()
                .map(|r| BitVec::from_bits(columns.iter().map(|&j| r.get(j))))
                .collect(),
        }
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        Self {
            cols: self.rows.len(),
            rows: (0..self.cols).map(|j| self.column(j)).collect(),
        }
    }

    /// Dimension of the row space. Row reduction picks the pivot at the
    /// lowest available column index.
    #[must_use]
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Row vector times matrix: the sum of the rows selected by `a`.
    pub fn vec_mul(&self, a: &BitVec) -> Result<BitVec> {
        if a.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: a.len(),
            });
        }
        let mut out = BitVec::zeros(self.cols);
        for i in a.support() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.row_count() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.row_count(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| rhs.vec_mul(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix {
            cols: rhs.cols,
            rows,
        })
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Gauss-Jordan inverse.
    pub fn invert(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: self.cols,
            });
        }
        let n = self.cols;
        let mut left = self.rows.clone();
        let mut right = Self::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&i| left[i].get(col)).ok_or(Error::Singular)?;
            left.swap(col, p);
            right.swap(col, p);
            let (pl, pr) = (left[col].clone(), right[col].clone());
            for i in 0..n {
                if i != col && left[i].get(col) {
                    left[i].xor_assign(&pl);
                    right[i].xor_assign(&pr);
                }
            }
        }
        Ok(BitMatrix {
            cols: n,
            rows: right,
        })
    }

    /// Basis of the right kernel `{x : M xᵀ = 0}`.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        // reduced row echelon form, then one basis vector per free column
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVec::unit(self.cols, free);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// A uniformly drawn invertible `r × r` matrix, deterministic in `seed`.
    #[must_use]
    pub fn random_invertible(r: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_invertible_with(r, &mut rng)
    }

    pub fn random_invertible_with<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Self {
        let mut rows: Vec<BitVec> = Vec::with_capacity(r);
        let mut echelon: Vec<BitVec> = Vec::with_capacity(r);
        while rows.len() < r {
            let candidate = random_vec(r, rng);
            if let Some(reduced) = reduce_against(&echelon, &candidate) {
                echelon.push(reduced);
                echelon.sort_by_key(|v| v.leading_index());
                rows.push(candidate);
            }
        }
        Self { cols: r, rows }
    }
}

/// A vector with each coordinate an independent fair bit.
pub fn random_vec<R: Rng + ?Sized>(len: usize, rng: &mut R) -> BitVec {
    let mut v = BitVec::zeros(len);
    for (i, w) in v.words.iter_mut().enumerate() {
        let bits = (len - i * WORD_BITS).min(WORD_BITS);
        let raw: u64 = rng.random();
        *w = if bits == WORD_BITS {
            raw
        } else {
            raw & ((1u64 << bits) - 1)
        };
    }
    v
}

/// Reduces `v` against an echelon set with distinct leading indices sorted
/// ascending; `None` when `v` lies in their span.
fn reduce_against(echelon: &[BitVec], v: &BitVec) -> Option<BitVec> {
    let mut v = v.clone();
    for e in echelon {
        let lead = e.leading_index().expect("echelon rows are nonzero");
        if v.get(lead) {
            v.xor_assign(e);
        }
    }
    (!v.is_zero()).then_some(v)
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(f, "BitMatrix[{}]", rows.join(", "))
    }
}

/// Parses a line-oriented matrix: one row per non-blank line, `'0'`/`'1'`
/// characters only.
impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: BitVec = line.parse().map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(lineno + 1, message),
                other => other,
            })?;
            if let Some(first) = rows.first().map(BitVec::len) {
                if row.len() != first {
                    return Err(Error::parse(
                        lineno + 1,
                        format!("row has length {}, expected {first}", row.len()),
                    ));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::parse(1, "matrix has no rows"));
        }
        BitMatrix::new(rows)
    }
}

/// Number of unordered `m`-subsets of `F_2^r \ {0}` with rank `m`:
/// `∏_{i<m} (2^r − 2^i) / m!`.
#[must_use]
pub fn independent_subset_count(r: usize, m: usize) -> u128 {
    ordered_independent_count(r, m) / (1..=m as u128).product::<u128>()
}

/// Number of `r × m` matrices of rank `m`: `∏_{i<m} (2^r − 2^i)`.
#[must_use]
pub fn ordered_independent_count(r: usize, m: usize) -> u128 {
    if m > r {
        return 0;
    }
    (0..m).map(|i| (1u128 << r) - (1u128 << i)).product()
}

/// Streams every rank-`m` set of `m` nonzero vectors of `F_2^r`, each as a
/// strictly increasing tuple of integer codes, in lexicographic order.
///
/// The stream can be restricted to a range of leading elements, which
/// splits the full enumeration into disjoint, order-preserving pieces.
#[derive(Clone, Debug)]
pub struct IndependentSubsets {
    m: usize,
    limit: u64,
    first_end: u64,
    first_start: u64,
    chosen: Vec<u64>,
    bases: Vec<XorBasis>,
    started: bool,
    done: bool,
}

impl IndependentSubsets {
    pub fn new(r: usize, m: usize) -> Result<Self> {
        Self::with_leading_range(r, m, 1, u64::MAX)
    }

    /// Only subsets whose smallest element lies in `[start, end)`.
    pub fn with_leading_range(r: usize, m: usize, start: u64, end: u64) -> Result<Self> {
        if m == 0 || m > r {
            return Err(Error::usage(format!("need 1 <= m <= r, got r={r}, m={m}")));
        }
        if r > MAX_ENCODED_DIM {
            return Err(Error::usage(format!(
                "r={r} exceeds enumeration limit {MAX_ENCODED_DIM}"
            )));
        }
        let limit = 1u64 << r;
        Ok(Self {
            m,
            limit,
            first_start: start.max(1),
            first_end: end.min(limit),
            chosen: Vec::with_capacity(m),
            bases: vec![XorBasis::default(); m + 1],
            started: false,
            done: false,
        })
    }

    /// Advances to the next valid tuple, starting the search for position
    /// `depth` at `start`.
    fn fill(&mut self, mut depth: usize, mut start: u64) -> bool {
        loop {
            let end = if depth == 0 { self.first_end } else { self.limit };
            let basis = &self.bases[depth];
            let found = (start..end).find(|&c| !basis.contains(c));
            match found {
                Some(c) => {
                    self.chosen.truncate(depth);
                    self.chosen.push(c);
                    let mut next = self.bases[depth].clone();
                    next.insert(c);
                    self.bases[depth + 1] = next;
                    if depth + 1 == self.m {
                        return true;
                    }
                    depth += 1;
                    start = c + 1;
                }
                None => {
                    if depth == 0 {
                        return false;
                    }
                    depth -= 1;
                    start = self.chosen[depth] + 1;
                }
            }
        }
    }
}

impl Iterator for IndependentSubsets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let ok = if self.started {
            let last = self.m - 1;
            let start = self.chosen[last] + 1;
            self.fill(last, start)
        } else {
            self.started = true;
            self.first_start < self.first_end && self.fill(0, self.first_start)
        };
        if ok {
            Some(self.chosen.clone())
        } else {
            self.done = true;
            None
        }
    }
}

/// Canonical stream of rank-`m` subsets of `F_2^r \ {0}`.
pub fn enumerate_independent_subsets(r: usize, m: usize) -> Result<IndependentSubsets> {
    IndependentSubsets::new(r, m)
}
