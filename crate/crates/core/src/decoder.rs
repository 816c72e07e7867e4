//! Binary linear codes, parity-check collections and the peeling decoder.
//!
//! Positions are 0-indexed in the API and 1-indexed in every text format.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gensets::GenericSet;
use crate::gf2::{random_vec, BitMatrix, BitVec};

/// A binary linear code given by a full-rank `r × n` parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    pcm: BitMatrix,
    kernel: Vec<BitVec>,
}

impl Code {
    pub fn new(pcm: BitMatrix) -> Result<Self> {
        let r = pcm.row_count();
        let n = pcm.col_count();
        if r == 0 || n < r {
            return Err(Error::usage(format!(
                "parity-check matrix must satisfy n >= r >= 1, got {r}x{n}"
            )));
        }
        let rank = pcm.rank();
        if rank != r {
            return Err(Error::RankDeficient { rank, expected: r });
        }
        let kernel = pcm.kernel_basis();
        Ok(Self { pcm, kernel })
    }

    /// The Hamming code of redundancy `r`: every nonzero vector of `F_2^r`
    /// appears once as a column, in order of integer code.
    pub fn hamming(r: usize) -> Result<Self> {
        if !(2..=16).contains(&r) {
            return Err(Error::usage(format!("hamming code needs 2 <= r <= 16, got {r}")));
        }
        let columns: Vec<u64> = (1u64..1 << r).collect();
        Self::new(BitMatrix::from_encoded_columns(r, &columns))
    }

    /// A random code of codimension `r` and length `n`.
    pub fn random(r: usize, n: usize, seed: u64) -> Result<Self> {
        if r == 0 || n < r {
            return Err(Error::usage(format!("need n >= r >= 1, got r={r}, n={n}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let rows = (0..r).map(|_| random_vec(n, &mut rng)).collect();
            let pcm = BitMatrix::new(rows)?;
            if pcm.rank() == r {
                return Self::new(pcm);
            }
        }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.pcm.col_count()
    }

    #[must_use]
    pub fn r(&self) -> usize {
        self.pcm.row_count()
    }

    #[must_use]
    pub fn pcm(&self) -> &BitMatrix {
        &self.pcm
    }

    /// A basis of the code itself.
    #[must_use]
    pub fn generator_rows(&self) -> &[BitVec] {
        &self.kernel
    }

    #[must_use]
    pub fn is_codeword(&self, x: &BitVec) -> bool {
        x.len() == self.n() && self.pcm.rows().iter().all(|h| !h.dot(x))
    }

    /// A uniformly random codeword.
    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> BitVec {
        let mut x = BitVec::zeros(self.n());
        for g in &self.kernel {
            if rng.random::<bool>() {
                x.xor_assign(g);
            }
        }
        x
    }
}

/// Does the erasure pattern admit exactly one completion? Holds iff the
/// columns of `H` indexed by `erasures` are independent, i.e. the pattern
/// contains no support of a nonzero codeword.
#[must_use]
pub fn is_correctable(code: &Code, erasures: &[usize]) -> bool {
    if erasures.is_empty() {
        return true;
    }
    if erasures.len() > code.r() {
        return false;
    }
    code.pcm.select_columns(erasures).rank() == erasures.len()
}

/// An ordered collection of nonzero, distinct parity checks of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckCollection {
    n: usize,
    checks: Vec<BitVec>,
}

impl CheckCollection {
    /// Keeps the first occurrence of each check and drops zero rows.
    pub fn new(n: usize, checks: impl IntoIterator<Item = BitVec>) -> Result<Self> {
        let mut kept: Vec<BitVec> = Vec::new();
        for h in checks {
            if h.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: h.len(),
                });
            }
            if !h.is_zero() && !kept.contains(&h) {
                kept.push(h);
            }
        }
        Ok(Self { n, checks: kept })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn checks(&self) -> &[BitVec] {
        &self.checks
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.checks.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// Same line format as a parity-check matrix.
    #[must_use]
    pub fn to_text(&self) -> String {
        self.checks.iter().map(|h| format!("{h}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mat: BitMatrix = text.parse()?;
        Self::new(mat.col_count(), mat.rows().iter().cloned())
    }

    fn masks(&self) -> Result<Vec<u32>> {
        if self.n > STOPPING_SET_MAX_N {
            return Err(Error::usage(format!(
                "exhaustive enumeration limited to n <= {STOPPING_SET_MAX_N}, got {}",
                self.n
            )));
        }
        Ok(self
            .checks
            .iter()
            .map(|h| h.encoded().expect("n <= 20") as u32)
            .collect())
    }
}

/// `{aH : a ∈ A}` in the set's canonical order, zero and repeated checks
/// removed.
pub fn generate_checks(set: &GenericSet, code: &Code) -> Result<CheckCollection> {
    if set.r() != code.r() {
        return Err(Error::DimensionMismatch {
            expected: code.r(),
            found: set.r(),
        });
    }
    let checks = set
        .iter()
        .map(|a| code.pcm.vec_mul(&a))
        .collect::<Result<Vec<_>>>()?;
    CheckCollection::new(code.n(), checks)
}

/// A received word over `{0, 1, erased}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    values: Vec<Option<bool>>,
}

impl ReceivedWord {
    #[must_use]
    pub fn new(values: Vec<Option<bool>>) -> Self {
        Self { values }
    }

    /// `word` with the listed positions erased.
    #[must_use]
    pub fn erase(word: &BitVec, erasures: &[usize]) -> Self {
        let mut values: Vec<Option<bool>> = (0..word.len()).map(|i| Some(word.get(i))).collect();
        for &e in erasures {
            values[e] = None;
        }
        Self { values }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.values.len()
    }

    #[must_use]
    pub fn values(&self) -> &[Option<bool>] {
        &self.values
    }

    #[must_use]
    pub fn erasures(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i].is_none())
            .collect()
    }
}

impl FromStr for ReceivedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(1, "empty word"));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(Some(false)),
                '1' => Ok(Some(true)),
                '?' => Ok(None),
                other => Err(Error::parse(1, format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for ReceivedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            f.write_str(match v {
                Some(false) => "0",
                Some(true) => "1",
                None => "?",
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeelStep {
    pub check: usize,
    pub position: usize,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeelOutcome {
    Decoded(BitVec),
    /// The remaining erasures, which form a stopping set.
    Stuck(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelingTrace {
    pub steps: Vec<PeelStep>,
    pub outcome: PeelOutcome,
}

impl PeelingTrace {
    #[must_use]
    pub fn decoded(&self) -> Option<&BitVec> {
        match &self.outcome {
            PeelOutcome::Decoded(w) => Some(w),
            PeelOutcome::Stuck(_) => None,
        }
    }
}

pub(crate) fn format_positions(positions: &[usize]) -> String {
    format!("{{{}}}", positions.iter().map(|p| p + 1).join(","))
}

impl fmt::Display for PeelingTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "step {}: check {} resolves pos {} = {}",
                k + 1,
                s.check + 1,
                s.position + 1,
                u8::from(s.value)
            )?;
        }
        match &self.outcome {
            PeelOutcome::Decoded(w) => writeln!(f, "decoded: {w}"),
            PeelOutcome::Stuck(rest) => writeln!(f, "stuck: {}", format_positions(rest)),
        }
    }
}

/// Iterative erasure decoding: while some check meets exactly one erased
/// position, solve that position from the check's known positions. The
/// lowest-index such check is always used.
pub fn peel_decode(checks: &CheckCollection, word: &ReceivedWord) -> Result<PeelingTrace> {
    let n = checks.n();
    if word.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: word.n(),
        });
    }
    let mut erased = BitVec::zeros(n);
    let mut known = BitVec::zeros(n);
    for (i, v) in word.values().iter().enumerate() {
        match v {
            None => erased.set(i, true),
            Some(true) => known.set(i, true),
            Some(false) => {}
        }
    }

    let mut steps = Vec::new();
    while !erased.is_zero() {
        let Some((idx, h)) = checks
            .checks()
            .iter()
            .enumerate()
            .find(|(_, h)| h.overlap(&erased) == 1)
        else {
            break;
        };
        let position = h
            .support()
            .find(|&i| erased.get(i))
            .expect("overlap is one");
        let value = h.dot(&known);
        erased.set(position, false);
        known.set(position, value);
        steps.push(PeelStep {
            check: idx,
            position,
            value,
        });
    }

    let outcome = if erased.is_zero() {
        PeelOutcome::Decoded(known)
    } else {
        PeelOutcome::Stuck(erased.support().collect())
    };
    Ok(PeelingTrace { steps, outcome })
}

/// No check meets the set in exactly one position. The empty set is
/// rejected: a decoder with nothing left to solve has succeeded.
pub fn is_stopping_set(checks: &CheckCollection, erasures: &[usize]) -> Result<bool> {
    if erasures.is_empty() {
        return Err(Error::usage("the empty set is not a stopping set candidate"));
    }
    let mut mask = BitVec::zeros(checks.n());
    for &e in erasures {
        if e >= checks.n() {
            return Err(Error::usage(format!("position {} out of range", e + 1)));
        }
        mask.set(e, true);
    }
    Ok(checks.checks().iter().all(|h| h.overlap(&mask) != 1))
}

/// Largest length accepted by [`enumerate_stopping_sets`].
pub const STOPPING_SET_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StoppingLabel {
    /// Contains the support of a nonzero codeword; no decoder can finish.
    Unavoidable,
    /// Uniquely completable, so the checks themselves are at fault.
    Correctable,
}

impl fmt::Display for StoppingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StoppingLabel::Unavoidable => "unavoidable",
            StoppingLabel::Correctable => "correctable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoppingSet {
    pub positions: Vec<usize>,
    pub label: Option<StoppingLabel>,
}

impl fmt::Display for StoppingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_positions(&self.positions))?;
        if let Some(label) = self.label {
            write!(f, " {label}")?;
        }
        Ok(())
    }
}

/// Every nonempty stopping set of size at most `max_size`, ordered by size
/// and then lexicographically. When `code` is given each set is labeled.
pub fn enumerate_stopping_sets(
    checks: &CheckCollection,
    max_size: usize,
    code: Option<&Code>,
) -> Result<Vec<StoppingSet>> {
    let n = checks.n();
    let masks = checks.masks()?;
    if max_size > n {
        return Err(Error::usage(format!("max size {max_size} exceeds length {n}")));
    }
    if let Some(code) = code {
        if code.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: code.n(),
            });
        }
    }
    let mut out = Vec::new();
    for size in 1..=max_size {
        for positions in (0..n).combinations(size) {
            let e = positions.iter().fold(0u32, |acc, &p| acc | (1 << p));
            if masks.iter().all(|&h| (h & e).count_ones() != 1) {
                let label = code.map(|c| {
                    if is_correctable(c, &positions) {
                        StoppingLabel::Correctable
                    } else {
                        StoppingLabel::Unavoidable
                    }
                });
                out.push(StoppingSet { positions, label });
            }
        }
    }
    Ok(out)
}

fn check_lengths(checks: &CheckCollection, code: &Code) -> Result<()> {
    if checks.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: checks.n(),
        });
    }
    Ok(())
}

/// The lexicographically first correctable pattern of size exactly `m`
/// that no check meets in exactly one position.
pub fn erasure_reducing_witness(
    checks: &CheckCollection,
    code: &Code,
    m: usize,
) -> Result<Option<Vec<usize>>> {
    check_lengths(checks, code)?;
    if m == 0 || m > code.n() {
        return Ok(None);
    }
    let mut mask = BitVec::zeros(code.n());
    for e in (0..code.n()).combinations(m) {
        for &p in &e {
            mask.set(p, true);
        }
        let reduced = checks.checks().iter().any(|h| h.overlap(&mask) == 1);
        for &p in &e {
            mask.set(p, false);
        }
        if !reduced && is_correctable(code, &e) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Every correctable pattern of size `m` has a check meeting it once.
pub fn is_m_erasure_reducing(checks: &CheckCollection, code: &Code, m: usize) -> Result<bool> {
    Ok(erasure_reducing_witness(checks, code, m)?.is_none())
}

/// Reducing for every size `1..=m`; equivalently, peeling finishes on every
/// correctable pattern of size at most `m`.
pub fn is_m_erasure_decoding(checks: &CheckCollection, code: &Code, m: usize) -> Result<bool> {
    for size in 1..=m {
        if !is_m_erasure_reducing(checks, code, size)? {
            return Ok(false);
        }
    }
    Ok(true)
}
