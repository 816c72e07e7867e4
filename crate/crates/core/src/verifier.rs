//! Exhaustive certification of candidate sets, randomized search, and the
//! size budget that guarantees a random set of that size usually works.
//!
//! Certification checks every rank-`m` set of `m` nonzero columns rather
//! than every rank-`m` matrix: whether some `a` has `wt(aM) = 1` does not
//! depend on the column order, and a rank-`m` matrix never repeats a column.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gensets::{failure_probability, lemma41_matrix, GenericSet};
use crate::gf2::{
    ordered_independent_count, parity, rank_of_encoded, BitMatrix, BitVec, IndependentSubsets,
};

/// Does some member give exactly one odd inner product with the columns?
#[inline]
fn covers(members: &[u64], columns: &[u64]) -> bool {
    members.iter().any(|&a| {
        let mut odd = 0;
        for &c in columns {
            odd += parity(a & c);
        }
        odd == 1
    })
}

/// True iff the members of `set` span `F_2^r`.
pub fn spans(set: &GenericSet, r: usize) -> bool {
    set.r() == r && rank_of_encoded(set.encoded()) == r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Outcome of an exhaustive certification run.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub r: usize,
    pub m: usize,
    pub status: Status,
    /// Canonical subsets examined. On failure this is the position of the
    /// counterexample in canonical order (zero when the set fails to span
    /// and no enumeration was needed).
    pub matrices_checked: u64,
    /// Columns of a rank-`m` matrix that no member covers, sorted by code.
    pub counterexample: Option<Vec<BitVec>>,
    pub elapsed: Duration,
    /// False only for fail-fast parallel runs, where the counterexample and
    /// the count depend on scheduling.
    pub deterministic: bool,
}

impl VerificationReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The line-oriented report format.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "status: {}\nmatrices_checked: {}\nelapsed_ms: {}\n",
            self.status,
            self.matrices_checked,
            self.elapsed.as_millis()
        );
        if let Some(cols) = &self.counterexample {
            out.push_str("counterexample:");
            for c in cols {
                out.push(' ');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        if !self.deterministic {
            out.push_str("nondeterministic: true\n");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Worker threads; `0` and `1` both mean serial.
    pub jobs: usize,
    /// Stop all workers at the first failure found by any of them.
    pub fail_fast: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            fail_fast: false,
        }
    }
}

/// Serial certification against the rank-`m` criterion.
pub fn verify_generic(set: &GenericSet, r: usize, m: usize) -> Result<VerificationReport> {
    verify_generic_with(set, r, m, VerifyOptions::default())
}

pub fn verify_generic_with(
    set: &GenericSet,
    r: usize,
    m: usize,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    if set.r() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: set.r(),
        });
    }
    if m == 0 || m > r {
        return Err(Error::usage(format!("need 1 <= m <= r, got r={r}, m={m}")));
    }
    let start = Instant::now();

    if !spans(set, r) {
        let v = orthogonal_witness(set);
        let columns = lemma41_matrix(&v, m)?.transpose();
        let mut codes: Vec<u64> = columns
            .rows()
            .iter()
            .map(|c| c.encoded().expect("r within encoding limit"))
            .collect();
        codes.sort_unstable();
        return Ok(VerificationReport {
            r,
            m,
            status: Status::Fail,
            matrices_checked: 0,
            counterexample: Some(codes.iter().map(|&c| BitVec::from_encoded(r, c)).collect()),
            elapsed: start.elapsed(),
            deterministic: true,
        });
    }

    let (checked, failure, deterministic) = if opts.jobs <= 1 {
        let (checked, failure) = scan_chunk(set.encoded(), r, m, 1, u64::MAX, None)?;
        (checked, failure, true)
    } else {
        scan_parallel(set.encoded(), r, m, opts)?
    };

    Ok(VerificationReport {
        r,
        m,
        status: if failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        matrices_checked: checked,
        counterexample: failure.map(|cols| cols.iter().map(|&c| BitVec::from_encoded(r, c)).collect()),
        elapsed: start.elapsed(),
        deterministic,
    })
}

/// The smallest nonzero vector (by code) orthogonal to every member.
fn orthogonal_witness(set: &GenericSet) -> BitVec {
    let r = set.r();
    if r <= 24 {
        let found = (1u64..1 << r).find(|&v| set.encoded().iter().all(|&a| parity(a & v) == 0));
        if let Some(v) = found {
            return BitVec::from_encoded(r, v);
        }
    }
    let rows = BitMatrix::from_encoded_rows(r, set.encoded());
    rows.kernel_basis()
        .into_iter()
        .next()
        .expect("a non-spanning set has a nonzero orthogonal vector")
}

/// Scans subsets whose leading element lies in `[lo, hi)`. Returns the
/// number examined and the first uncovered subset, if any.
fn scan_chunk(
    members: &[u64],
    r: usize,
    m: usize,
    lo: u64,
    hi: u64,
    stop: Option<&AtomicBool>,
) -> Result<(u64, Option<Vec<u64>>)> {
    let mut checked = 0u64;
    for cols in IndependentSubsets::with_leading_range(r, m, lo, hi)? {
        checked += 1;
        if !covers(members, &cols) {
            return Ok((checked, Some(cols)));
        }
        if let Some(flag) = stop {
            if checked.is_multiple_of(4096) && flag.load(Ordering::Relaxed) {
                break;
            }
        }
    }
    Ok((checked, None))
}

struct ChunkResult {
    lead: u64,
    checked: u64,
    failure: Option<Vec<u64>>,
}

/// Splits the stream by leading element. Workers pull leading elements in
/// increasing order; once a failure at lead `f` is known, leads above `f`
/// are skipped, so every chunk before the earliest failure is complete and
/// the merged report matches the serial one.
fn scan_parallel(
    members: &[u64],
    r: usize,
    m: usize,
    opts: VerifyOptions,
) -> Result<(u64, Option<Vec<u64>>, bool)> {
    let limit = 1u64 << r;
    let next_lead = AtomicU64::new(1);
    let earliest_failure = AtomicU64::new(u64::MAX);
    let stop = AtomicBool::new(false);
    let results = Mutex::new(Vec::<ChunkResult>::new());
    let error = Mutex::new(None::<Error>);

    std::thread::scope(|scope| {
        for _ in 0..opts.jobs {
            scope.spawn(|| loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let lead = next_lead.fetch_add(1, Ordering::Relaxed);
                if lead >= limit || lead > earliest_failure.load(Ordering::Relaxed) {
                    break;
                }
                let flag = opts.fail_fast.then_some(&stop);
                match scan_chunk(members, r, m, lead, lead + 1, flag) {
                    Ok((checked, failure)) => {
                        if failure.is_some() {
                            earliest_failure.fetch_min(lead, Ordering::Relaxed);
                            if opts.fail_fast {
                                stop.store(true, Ordering::Relaxed);
                            }
                        }
                        results.lock().unwrap().push(ChunkResult {
                            lead,
                            checked,
                            failure,
                        });
                    }
                    Err(e) => {
                        *error.lock().unwrap() = Some(e);
                        stop.store(true, Ordering::Relaxed);
                    }
                }
            });
        }
    });

    if let Some(e) = error.into_inner().unwrap() {
        return Err(e);
    }
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|c| c.lead);

    if opts.fail_fast {
        let checked = results.iter().map(|c| c.checked).sum();
        let failure = results.into_iter().find_map(|c| c.failure);
        let deterministic = failure.is_none();
        return Ok((checked, failure, deterministic));
    }

    let mut checked = 0;
    for chunk in results {
        checked += chunk.checked;
        if chunk.failure.is_some() {
            return Ok((checked, chunk.failure, true));
        }
    }
    Ok((checked, None, true))
}

/// `|{a ∈ F_2^r : wt(aM) = 1}|` by exhaustive scan; equals `m·2^{r−m}` for
/// every rank-`m` matrix.
pub fn count_good_vectors(m_mat: &BitMatrix) -> Result<u64> {
    let r = m_mat.row_count();
    let m = m_mat.col_count();
    let rank = m_mat.rank();
    if rank != m {
        return Err(Error::RankDeficient { rank, expected: m });
    }
    if r > 24 {
        return Err(Error::usage("exhaustive scan limited to r <= 24"));
    }
    let rows: Vec<u64> = m_mat
        .rows()
        .iter()
        .map(|v| v.encoded().expect("rank m <= r <= 24"))
        .collect();
    let count = (0u64..1 << r)
        .filter(|&a| {
            let image = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| (a >> i) & 1 == 1)
                .fold(0u64, |acc, (_, &row)| acc ^ row);
            image.count_ones() == 1
        })
        .count();
    Ok(count as u64)
}

/// Smallest `N` with `|ℳ_{m,r}|·(1 − m·2^{−m})^N < 1`, i.e. the smallest
/// integer strictly above `log₂|ℳ_{m,r}| / −log₂(1 − m·2^{−m})`.
///
/// With `exact_count` the number of rank-`m` matrices is used; otherwise the
/// cruder `2^{mr}`, which reproduces the linear coefficient `c_m`.
pub fn required_size_bound(r: usize, m: usize, exact_count: bool) -> Result<u64> {
    if m == 0 || m > r {
        return Err(Error::usage(format!("need 1 <= m <= r, got r={r}, m={m}")));
    }
    let log_count = if exact_count {
        (0..m)
            .map(|i| ((1u128 << r) - (1u128 << i)) as f64)
            .map(f64::log2)
            .sum::<f64>()
    } else {
        (m * r) as f64
    };
    let ratio = log_count / -failure_probability(m).log2();
    Ok(ratio.floor() as u64 + 1)
}

/// Result of [`random_search`].
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub r: usize,
    pub m: usize,
    /// Number of random draws per attempt (before removing duplicates and
    /// zeros).
    pub set_size: usize,
    pub seed: u64,
    pub restarts_used: usize,
    pub found: Option<GenericSet>,
    /// `required_size_bound(r, m, true)`.
    pub budget: u64,
}

/// Draws `n` uniform vectors of `F_2^r` per attempt and certifies the
/// resulting set, up to `max_restarts` attempts.
pub fn random_search(
    r: usize,
    m: usize,
    n: usize,
    seed: u64,
    max_restarts: usize,
) -> Result<SearchOutcome> {
    if n == 0 {
        return Err(Error::usage("set size must be at least 1"));
    }
    let budget = required_size_bound(r, m, true)?;
    if r > 24 {
        return Err(Error::usage("random search limited to r <= 24"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (1u64 << r) - 1;
    let mut outcome = SearchOutcome {
        r,
        m,
        set_size: n,
        seed,
        restarts_used: 0,
        found: None,
        budget,
    };
    for attempt in 1..=max_restarts {
        outcome.restarts_used = attempt;
        let draws: Vec<u64> = (0..n).map(|_| rng.random::<u64>() & mask).collect();
        let candidate = GenericSet::from_encoded(r, draws)?;
        if verify_generic(&candidate, r, m)?.passed() {
            outcome.found = Some(candidate);
            break;
        }
    }
    Ok(outcome)
}

/// Largest `r` accepted by [`min_generic_size`].
pub const MIN_SIZE_MAX_R: usize = 4;

/// Exact minimum size of a generic `(r,m)` set, by checking every subset of
/// `F_2^r \ {0}` in order of size and then lexicographically. `None` if no
/// set of size at most `size_limit` passes.
pub fn min_generic_size(r: usize, m: usize, size_limit: usize) -> Result<Option<usize>> {
    if r > MIN_SIZE_MAX_R {
        return Err(Error::usage(format!(
            "exhaustive minimum search limited to r <= {MIN_SIZE_MAX_R}"
        )));
    }
    if m == 0 || m > r {
        return Err(Error::usage(format!("need 1 <= m <= r, got r={r}, m={m}")));
    }
    let universe = (1u64 << r) - 1;
    for k in 1..=size_limit.min(universe as usize) {
        for members in (1..=universe).combinations(k) {
            if rank_of_encoded(&members) < r {
                continue;
            }
            let all_covered = IndependentSubsets::new(r, m)?.all(|cols| covers(&members, &cols));
            if all_covered {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

/// `|ℳ_{m,r}|`, the number of `r × m` matrices of rank `m`.
#[must_use]
pub fn rank_m_matrix_count(r: usize, m: usize) -> u128 {
    ordered_independent_count(r, m)
}
