//! Explicit generic erasure correcting sets and the bounds on their size.
//!
//! A set `A ⊆ F_2^r` is generic `(r,m)`-erasure correcting when every
//! `r × m` matrix `M` of rank `m` admits some `a ∈ A` with `wt(aM) = 1`.
//! Given any parity-check matrix `H` of a code of codimension `r`, the
//! checks `{aH : a ∈ A}` then let the peeling decoder recover every
//! correctable erasure pattern of size at most `m`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, XorBasis, MAX_ENCODED_DIM};

/// A finite set of distinct nonzero vectors of `F_2^r`.
///
/// Members are held by integer code (coordinate 0 in the low bit), which
/// is also the canonical serialization order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenericSet {
    r: usize,
    members: Vec<u64>,
}

impl GenericSet {
    /// Builds a set from vectors of length `r`. Zero vectors are rejected;
    /// duplicates collapse.
    pub fn new<I: IntoIterator<Item = BitVec>>(r: usize, vectors: I) -> Result<Self> {
        check_dim(r)?;
        let mut members = BTreeSet::new();
        for v in vectors {
            if v.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: v.len(),
                });
            }
            if v.is_zero() {
                return Err(Error::usage("zero vector cannot be a member"));
            }
            members.insert(v.encoded().expect("r is within the encoding limit"));
        }
        Ok(Self {
            r,
            members: members.into_iter().collect(),
        })
    }

    /// Builds a set from integer codes, dropping zeros and duplicates.
    pub fn from_encoded<I: IntoIterator<Item = u64>>(r: usize, codes: I) -> Result<Self> {
        check_dim(r)?;
        let mut members = BTreeSet::new();
        for c in codes {
            if c >> r != 0 {
                return Err(Error::usage(format!("code {c} does not fit in r={r} bits")));
            }
            if c != 0 {
                members.insert(c);
            }
        }
        Ok(Self {
            r,
            members: members.into_iter().collect(),
        })
    }

    /// All nonzero vectors of `F_2^r`; trivially generic for every `m ≤ r`.
    pub fn full_space(r: usize) -> Result<Self> {
        if r > 24 {
            return Err(Error::usage("full space is only materialized for r <= 24"));
        }
        Self::from_encoded(r, 1..(1u64 << r))
    }

    #[must_use]
    pub fn r(&self) -> usize {
        self.r
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Integer codes in canonical order.
    #[must_use]
    pub fn encoded(&self) -> &[u64] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = BitVec> + '_ {
        self.members.iter().map(|&c| BitVec::from_encoded(self.r, c))
    }

    #[must_use]
    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.r
            && v.encoded()
                .is_some_and(|c| self.members.binary_search(&c).is_ok())
    }

    /// Line-oriented text: one member per line, coordinate 1 leftmost, in
    /// canonical order.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.iter() {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the line-oriented format. When `r` is `None` it is taken from
    /// the first line.
    pub fn parse(text: &str, r: Option<usize>) -> Result<Self> {
        let mut width = r;
        let mut members = BTreeSet::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let v: BitVec = line.parse().map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(lineno, message),
                other => other,
            })?;
            let w = *width.get_or_insert(v.len());
            if v.len() != w {
                return Err(Error::parse(
                    lineno,
                    format!("vector has length {}, expected {w}", v.len()),
                ));
            }
            if w > MAX_ENCODED_DIM {
                return Err(Error::parse(lineno, format!("length {w} exceeds {MAX_ENCODED_DIM}")));
            }
            if v.is_zero() {
                return Err(Error::parse(lineno, "zero vector cannot be a member"));
            }
            members.insert(v.encoded().expect("checked length"));
        }
        let r = width.ok_or_else(|| Error::parse(1, "empty set with unknown dimension"))?;
        check_dim(r)?;
        Ok(Self {
            r,
            members: members.into_iter().collect(),
        })
    }
}

impl fmt::Debug for GenericSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.to_string())).finish()
    }
}

fn check_dim(r: usize) -> Result<()> {
    if r == 0 || r > MAX_ENCODED_DIM {
        return Err(Error::usage(format!("r must be in 1..={MAX_ENCODED_DIM}, got {r}")));
    }
    Ok(())
}

fn check_arm_params(r: usize, m: usize) -> Result<()> {
    if m < 2 || m > r {
        return Err(Error::usage(format!("need 2 <= m <= r, got r={r}, m={m}")));
    }
    check_dim(r)
}

fn check_bound_params(r: usize, m: usize) -> Result<()> {
    if m < 1 || m > r {
        return Err(Error::usage(format!("need 1 <= m <= r, got r={r}, m={m}")));
    }
    Ok(())
}

/// `{a ∈ F_2^r : a₁ = 1, wt(a) ≤ m}`.
pub fn construct_arm(r: usize, m: usize) -> Result<GenericSet> {
    check_arm_params(r, m)?;
    let mut codes = Vec::new();
    for k in 0..m {
        for tail in (1..r).combinations(k) {
            codes.push(tail.iter().fold(1u64, |acc, &i| acc | (1 << i)));
        }
    }
    GenericSet::from_encoded(r, codes)
}

/// `Σ_{i=0}^{m-1} C(r-1, i)`, the size of [`construct_arm`].
pub fn size_formula(r: usize, m: usize) -> Result<u128> {
    check_arm_params(r, m)?;
    Ok((0..m).map(|i| binomial(r as u128 - 1, i as u128)).sum())
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// The unit vectors together with every `e₁ + e_i + e_j`, `2 ≤ i < j ≤ r`.
pub fn construct_weber(r: usize) -> Result<GenericSet> {
    if r < 3 {
        return Err(Error::usage(format!("need r >= 3, got {r}")));
    }
    check_dim(r)?;
    let units = (0..r).map(|i| 1u64 << i);
    let triples = (1..r)
        .tuple_combinations()
        .map(|(i, j)| 1u64 | (1 << i) | (1 << j));
    GenericSet::from_encoded(r, units.chain(triples))
}

/// The matrix whose first column is all ones and whose `j`-th column is
/// `e_jᵀ` for `j ≥ 2`. It maps `A_{r,3}` onto the unit-plus-triples set.
pub fn weber_transform_matrix(r: usize) -> Result<BitMatrix> {
    if r < 2 {
        return Err(Error::usage(format!("need r >= 2, got {r}")));
    }
    let mut s = BitMatrix::identity(r);
    for i in 0..r {
        s.set(i, 0, true);
    }
    Ok(s)
}

/// `{aT : a ∈ A}` for an invertible `T`.
pub fn apply_transform(set: &GenericSet, transform: &BitMatrix) -> Result<GenericSet> {
    let r = set.r();
    if transform.row_count() != r || transform.col_count() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: transform.row_count(),
        });
    }
    if transform.rank() != r {
        return Err(Error::Singular);
    }
    let rows: Vec<u64> = transform
        .rows()
        .iter()
        .map(|row| row.encoded().expect("r within encoding limit"))
        .collect();
    let image = set.encoded().iter().map(|&a| {
        rows.iter()
            .enumerate()
            .filter(|(i, _)| (a >> i) & 1 == 1)
            .fold(0u64, |acc, (_, &row)| acc ^ row)
    });
    GenericSet::from_encoded(r, image)
}

/// Produces a witness `a ∈ A_{r,m}` with `wt(aM) = 1` for a rank-`m`
/// matrix `M`, following the two-case constructive argument for `A_{r,m}`.
///
/// A row basis `I` is chosen greedily from the first row down. If the first
/// row is nonzero it is in `I`, and the combinations `x` over `I` with
/// `x₁ = 1` are scanned in integer order for one whose image is a unit
/// vector. Otherwise each unit vector `e_j` has a unique representation
/// over `I`; the first with weight at most `m − 1` is taken and a one is
/// added in position 1, where the zero first row contributes nothing.
pub fn find_covering_vector(m_mat: &BitMatrix) -> Result<BitVec> {
    let r = m_mat.row_count();
    let m = m_mat.col_count();
    if m < 2 || m > r {
        return Err(Error::usage(format!("need 2 <= m <= r, got r={r}, m={m}")));
    }
    if m > MAX_ENCODED_DIM {
        return Err(Error::usage("m exceeds encoding limit"));
    }
    let rows: Vec<u64> = m_mat
        .rows()
        .iter()
        .map(|v| v.encoded().expect("checked width"))
        .collect();

    let mut basis = XorBasis::default();
    let mut chosen = Vec::with_capacity(m);
    for (i, &row) in rows.iter().enumerate() {
        if basis.insert(row) {
            chosen.push(i);
            if chosen.len() == m {
                break;
            }
        }
    }
    if chosen.len() < m {
        return Err(Error::RankDeficient {
            rank: chosen.len(),
            expected: m,
        });
    }

    let combine = |x: u64| -> u64 {
        chosen
            .iter()
            .enumerate()
            .filter(|(k, _)| (x >> k) & 1 == 1)
            .fold(0u64, |acc, (_, &i)| acc ^ rows[i])
    };
    let place = |x: u64| -> BitVec {
        let mut a = BitVec::zeros(r);
        for (k, &i) in chosen.iter().enumerate() {
            if (x >> k) & 1 == 1 {
                a.set(i, true);
            }
        }
        a
    };

    if rows[0] != 0 {
        // Row 1 is chosen[0], so x₁ is the low bit of x.
        let x = (1u64..1 << m)
            .step_by(2)
            .find(|&x| combine(x).count_ones() == 1)
            .expect("an (m-1)-dimensional subspace misses some unit vector");
        Ok(place(x))
    } else {
        let basis_mat = BitMatrix::from_encoded_rows(
            m,
            &chosen.iter().map(|&i| rows[i]).collect::<Vec<_>>(),
        );
        // x(j) B = e_j, so x(j) is row j of B⁻¹.
        let inverse = basis_mat.invert()?;
        let repr = inverse
            .rows()
            .iter()
            .find(|x| x.weight() < m)
            .expect("at most one representation has full weight");
        let mut a = place(repr.encoded().expect("m within encoding limit"));
        a.set(0, true);
        Ok(a)
    }
}

/// `F(r,m) ≥ r`: every generic set spans `F_2^r`.
pub fn lower_bound(r: usize, m: usize) -> Result<usize> {
    check_bound_params(r, m)?;
    Ok(r)
}

/// The coefficient `c_m = m / (−log₂(1 − m·2^{−m}))` and the integer budget
/// `⌈c_m · r⌉` from the random-selection existence argument.
pub fn upper_bound(r: usize, m: usize) -> Result<(f64, u64)> {
    check_bound_params(r, m)?;
    let c = upper_coefficient(m);
    Ok((c, (c * r as f64).ceil() as u64))
}

pub(crate) fn failure_probability(m: usize) -> f64 {
    1.0 - m as f64 * (-(m as f64)).exp2()
}

pub(crate) fn upper_coefficient(m: usize) -> f64 {
    m as f64 / -failure_probability(m).log2()
}

/// A summary of what is known about `F(r,m)` at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub r: usize,
    pub m: usize,
    pub lower: usize,
    pub upper_coefficient: f64,
    pub upper: u64,
    /// Size of `A_{r,m}`; absent for `m = 1`, where that construction does
    /// not apply.
    pub construction_size: Option<u128>,
}

pub fn bound_report(r: usize, m: usize) -> Result<BoundReport> {
    let lower = lower_bound(r, m)?;
    let (upper_coefficient, upper) = upper_bound(r, m)?;
    let construction_size = if m >= 2 { Some(size_formula(r, m)?) } else { None };
    Ok(BoundReport {
        r,
        m,
        lower,
        upper_coefficient,
        upper,
        construction_size,
    })
}

/// An `r × m` matrix of rank `m` whose `i`-th row has odd weight exactly
/// when `i ∈ supp(v)`.
///
/// Any `a` orthogonal to `v` picks an even number of odd rows, so `aM` has
/// even weight and never weight one. Rows are chosen top-down: while the
/// rank is below `m`, the smallest vector (by integer code) of the needed
/// parity outside the current span; afterwards `e₁` for odd rows and zero
/// for even rows.
pub fn lemma41_matrix(v: &BitVec, m: usize) -> Result<BitMatrix> {
    let r = v.len();
    if v.is_zero() {
        return Err(Error::usage("v must be nonzero"));
    }
    check_bound_params(r, m)?;
    if m > MAX_ENCODED_DIM {
        return Err(Error::usage("m exceeds encoding limit"));
    }
    let mut basis = XorBasis::default();
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let odd = v.get(i);
        let want = u32::from(odd);
        let row = if basis.dim() < m {
            (1u64..1 << m)
                .find(|&c| c.count_ones() % 2 == want && !basis.contains(c))
                .inspect(|&c| {
                    basis.insert(c);
                })
        } else {
            None
        };
        rows.push(row.unwrap_or(u64::from(odd)));
    }
    debug_assert_eq!(basis.dim(), m);
    Ok(BitMatrix::from_encoded_rows(m, &rows))
}
