//! Core matrix types: exact nonnegative matrices, boolean patterns,
//! index sets and partitions.
//!
//! Indices are 1-based in every public constructor, error message and
//! display (matching the usual mathematical convention `<n> = {1,..,n}`)
//! and 0-based in internal storage and the `*_zero_based` accessors.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::{Error, Rational, Result};

/// A sorted, duplicate-free subset of `{1,..,universe}`.
///
/// The main constructor rejects the empty set, which is the useful
/// convention for positivity arguments; a few reports (deficiency sets,
/// vertex cuts of disconnected graphs) legitimately produce the empty set
/// and build it through [`IndexSet::empty`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    universe: usize,
    members: Vec<usize>, // 0-based, strictly increasing
}

impl IndexSet {
    /// Builds a nonempty set from 1-based members.
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for m in members {
            if m == 0 || m > universe {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    universe,
                });
            }
            if !seen.insert(m - 1) {
                return Err(Error::DuplicateIndex(m));
            }
        }
        if seen.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(IndexSet {
            universe,
            members: seen.into_iter().collect(),
        })
    }

    /// Builds a set (possibly empty) from 0-based members.
    pub fn from_zero_based(
        universe: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for m in members {
            if m >= universe {
                return Err(Error::IndexOutOfRange {
                    index: m + 1,
                    universe,
                });
            }
            seen.insert(m);
        }
        Ok(IndexSet {
            universe,
            members: seen.into_iter().collect(),
        })
    }

    /// The empty subset of `{1,..,universe}`.
    pub fn empty(universe: usize) -> Self {
        IndexSet {
            universe,
            members: Vec::new(),
        }
    }

    /// The full set `{1,..,universe}`.
    pub fn full(universe: usize) -> Result<Self> {
        if universe == 0 {
            return Err(Error::EmptySet);
        }
        Ok(IndexSet {
            universe,
            members: (0..universe).collect(),
        })
    }

    /// A one-element set, 1-based.
    pub fn singleton(universe: usize, member: usize) -> Result<Self> {
        IndexSet::new(universe, [member])
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.universe
    }

    /// 0-based members, strictly increasing.
    pub fn zero_based(&self) -> &[usize] {
        &self.members
    }

    /// 1-based members, strictly increasing.
    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|m| m + 1).collect()
    }

    pub fn contains_zero_based(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn contains(&self, i_one_based: usize) -> bool {
        i_one_based >= 1 && self.contains_zero_based(i_one_based - 1)
    }

    pub fn complement(&self) -> IndexSet {
        let inside: BTreeSet<usize> = self.members.iter().copied().collect();
        IndexSet {
            universe: self.universe,
            members: (0..self.universe).filter(|i| !inside.contains(i)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.universe == other.universe
            && self.members.iter().all(|m| other.contains_zero_based(*m))
    }

    /// Bitmask over 0-based members when the universe fits in a word.
    pub fn mask(&self) -> Option<u64> {
        if self.universe > 64 {
            return None;
        }
        let mut m = 0u64;
        for &i in &self.members {
            m |= 1u64 << i;
        }
        Some(m)
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, m) in self.members.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m + 1)?;
        }
        write!(f, "}}")
    }
}

/// An ordered list of disjoint nonempty [`IndexSet`] blocks covering the
/// universe.  Blocks are stored sorted by their smallest element, so two
/// partitions of the same set compare equal exactly when they have the
/// same blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    universe: usize,
    blocks: Vec<IndexSet>,
}

impl Partition {
    pub fn new(blocks: Vec<IndexSet>) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::InvalidPartition("no blocks".into()))?;
        let universe = first.universe();
        let mut covered = vec![false; universe];
        for b in &blocks {
            if b.universe() != universe {
                return Err(Error::UniverseMismatch(universe, b.universe()));
            }
            b.require_nonempty()
                .map_err(|_| Error::InvalidPartition("empty block".into()))?;
            for &i in b.zero_based() {
                if covered[i] {
                    return Err(Error::InvalidPartition(format!(
                        "index {} appears in two blocks",
                        i + 1
                    )));
                }
                covered[i] = true;
            }
        }
        if let Some(missing) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidPartition(format!(
                "index {} not covered",
                missing + 1
            )));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.zero_based()[0]);
        Ok(Partition { universe, blocks })
    }

    /// The finest partition: every element its own block.
    pub fn singletons(universe: usize) -> Result<Self> {
        if universe == 0 {
            return Err(Error::InvalidPartition("empty universe".into()));
        }
        let blocks = (1..=universe)
            .map(|i| IndexSet::singleton(universe, i))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(blocks)
    }

    /// The coarsest partition: one block holding everything.
    pub fn whole(universe: usize) -> Result<Self> {
        Partition::new(vec![IndexSet::full(universe)?])
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position (into `blocks()`) of the block holding 0-based index `i`.
    pub fn block_of_zero_based(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains_zero_based(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Read access to the zero pattern of a matrix.
///
/// Everything structural in this crate is defined through this trait, so
/// numeric and boolean matrices can be fed to the same predicates.
pub trait Support {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    /// Whether the entry at 0-based `(i, j)` is strictly positive.
    fn positive(&self, i: usize, j: usize) -> bool;

    /// The boolean indicator pattern: 1 exactly where the entry is positive.
    fn indicator(&self) -> PatternMatrix {
        PatternMatrix::from_fn(self.rows(), self.cols(), |i, j| self.positive(i, j))
            .expect("source matrix is nonempty")
    }

    fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }
}

/// A boolean matrix stored as bitset rows (64 columns per word).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    rows: usize,
    cols: usize,
    wpr: usize, // words per row
    bits: Vec<u64>,
}

impl PatternMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let wpr = cols.div_ceil(64);
        Ok(PatternMatrix {
            rows,
            cols,
            wpr,
            bits: vec![0; rows * wpr],
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut p = PatternMatrix::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    p.set(i, j, true);
                }
            }
        }
        Ok(p)
    }

    /// Builds from rows of `0`/`1`-like integers; any nonzero means positive.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::Dimension(format!(
                "ragged rows: expected {c} columns, found {}",
                bad.len()
            )));
        }
        PatternMatrix::from_fn(r, c, |i, j| rows[i][j] != 0)
    }

    pub fn identity(n: usize) -> Result<Self> {
        PatternMatrix::from_fn(n, n, |i, j| i == j)
    }

    pub fn all_ones(rows: usize, cols: usize) -> Result<Self> {
        PatternMatrix::from_fn(rows, cols, |_, _| true)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.wpr + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry index out of range");
        let w = &mut self.bits[i * self.wpr + j / 64];
        if value {
            *w |= 1u64 << (j % 64);
        } else {
            *w &= !(1u64 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.wpr..(i + 1) * self.wpr]
    }

    /// The positive columns of row `i`, as a word when `cols <= 64`.
    pub fn row_mask(&self, i: usize) -> Option<u64> {
        if self.cols <= 64 {
            Some(self.row_words(i)[0])
        } else {
            None
        }
    }

    pub fn count_positive(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_count_positive(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_positive() == self.rows * self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn transpose(&self) -> PatternMatrix {
        PatternMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
            .expect("transpose of nonempty matrix")
    }

    /// Pattern of `I + P` (requires square).
    pub fn with_identity(&self) -> Result<PatternMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "need a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let mut p = self.clone();
        for i in 0..self.rows {
            p.set(i, i, true);
        }
        Ok(p)
    }

    pub fn submatrix(&self, row_set: &IndexSet, col_set: &IndexSet) -> Result<PatternMatrix> {
        check_index_sets(self, row_set, col_set)?;
        let ri = row_set.zero_based();
        let ci = col_set.zero_based();
        PatternMatrix::from_fn(ri.len(), ci.len(), |i, j| self.get(ri[i], ci[j]))
    }
}

impl Support for PatternMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn positive(&self, i: usize, j: usize) -> bool {
        self.get(i, j)
    }
    fn indicator(&self) -> PatternMatrix {
        self.clone()
    }
}

impl fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PatternMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '*' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A matrix with exact nonnegative rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct NonnegMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>, // row-major
}

impl NonnegMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for (pos, e) in entries.iter().enumerate() {
            if e < &Rational::zero() {
                return Err(Error::NegativeEntry {
                    row: pos / cols + 1,
                    col: pos % cols + 1,
                    value: e.to_string(),
                });
            }
        }
        Ok(NonnegMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::Dimension(format!(
                "ragged rows: expected {c} columns, found {}",
                bad.len()
            )));
        }
        NonnegMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows (rejects negatives).
    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let converted = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| Rational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        NonnegMatrix::from_rows(converted)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(NonnegMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = NonnegMatrix::zeros(n, n)?;
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn submatrix(&self, row_set: &IndexSet, col_set: &IndexSet) -> Result<NonnegMatrix> {
        check_index_sets(self, row_set, col_set)?;
        let mut entries = Vec::with_capacity(row_set.len() * col_set.len());
        for &i in row_set.zero_based() {
            for &j in col_set.zero_based() {
                entries.push(self.get(i, j).clone());
            }
        }
        NonnegMatrix::new(row_set.len(), col_set.len(), entries)
    }

    pub fn matmul(&self, rhs: &NonnegMatrix) -> Result<NonnegMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = NonnegMatrix::zeros(self.rows, rhs.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact `self^e` for square matrices; `e = 0` gives the identity.
    pub fn pow(&self, e: u64) -> Result<NonnegMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "need a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let mut acc = NonnegMatrix::identity(self.rows)?;
        for _ in 0..e {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> NonnegMatrix {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        NonnegMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

impl Support for NonnegMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn positive(&self, i: usize, j: usize) -> bool {
        !self.get(i, j).is_zero()
    }
}

impl fmt::Debug for NonnegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "NonnegMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A nonnegative matrix whose rows each sum to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticMatrix(NonnegMatrix);

impl StochasticMatrix {
    pub fn new(m: NonnegMatrix) -> Result<Self> {
        for i in 0..m.rows() {
            let sum: Rational = m.row(i).iter().sum();
            if !sum.is_one() {
                return Err(Error::NotStochastic {
                    row: i + 1,
                    sum: sum.to_string(),
                });
            }
        }
        Ok(StochasticMatrix(m))
    }

    pub fn as_matrix(&self) -> &NonnegMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> NonnegMatrix {
        self.0
    }

    /// Row-stochastic matrices are closed under products.
    pub fn matmul(&self, rhs: &StochasticMatrix) -> Result<StochasticMatrix> {
        StochasticMatrix::new(self.0.matmul(&rhs.0)?)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }
}

impl Support for StochasticMatrix {
    fn rows(&self) -> usize {
        self.0.rows()
    }
    fn cols(&self) -> usize {
        self.0.cols()
    }
    fn positive(&self, i: usize, j: usize) -> bool {
        self.0.positive(i, j)
    }
}

fn check_index_sets(m: &impl Support, row_set: &IndexSet, col_set: &IndexSet) -> Result<()> {
    if row_set.universe() != m.rows() {
        return Err(Error::UniverseMismatch(row_set.universe(), m.rows()));
    }
    if col_set.universe() != m.cols() {
        return Err(Error::UniverseMismatch(col_set.universe(), m.cols()));
    }
    row_set.require_nonempty()?;
    col_set.require_nonempty()?;
    Ok(())
}

/// True iff the positive entries of `p` sit exactly where `q` has ones.
pub fn has_pattern(p: &impl Support, q: &PatternMatrix) -> Result<bool> {
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::Dimension(format!(
            "pattern is {}x{}, matrix is {}x{}",
            q.rows(),
            q.cols(),
            p.rows(),
            p.cols()
        )));
    }
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            if p.positive(i, j) != q.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Boolean matrix product: `out[i][j] = OR_k (a[i][k] AND b[k][j])`.
pub fn bool_product(a: &PatternMatrix, b: &PatternMatrix) -> Result<PatternMatrix> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = PatternMatrix::zeros(a.rows, b.cols)?;
    for i in 0..a.rows {
        for w in 0..a.wpr {
            let mut word = a.bits[i * a.wpr + w];
            while word != 0 {
                let k = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                let src = k * b.wpr;
                let dst = i * out.wpr;
                for t in 0..b.wpr {
                    out.bits[dst + t] |= b.bits[src + t];
                }
            }
        }
    }
    Ok(out)
}

/// Boolean `a^e` for square `a`; `e = 0` gives the identity pattern.
/// Uses repeated squaring; for least-exponent searches prefer successive
/// products with early exit.
pub fn bool_power(a: &PatternMatrix, e: u64) -> Result<PatternMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "need a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let mut result: Option<PatternMatrix> = None;
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => bool_product(&r, &base)?,
            });
        }
        e >>= 1;
        if e > 0 {
            base = bool_product(&base, &base)?;
        }
    }
    match result {
        Some(r) => Ok(r),
        None => PatternMatrix::identity(a.rows),
    }
}

/// Every row has at least one positive entry.
pub fn is_row_allowable(p: &impl Support) -> bool {
    (0..p.rows()).all(|i| (0..p.cols()).any(|j| p.positive(i, j)))
}

/// Every column has at least one positive entry.
pub fn is_column_allowable(p: &impl Support) -> bool {
    (0..p.cols()).all(|j| (0..p.rows()).any(|i| p.positive(i, j)))
}

/// Every entry is positive.
pub fn is_positive(p: &impl Support) -> bool {
    (0..p.rows()).all(|i| (0..p.cols()).all(|j| p.positive(i, j)))
}

/// The columns whose entries are all positive (possibly empty).
pub fn positive_columns(p: &impl Support) -> IndexSet {
    let members = (0..p.cols()).filter(|&j| (0..p.rows()).all(|i| p.positive(i, j)));
    IndexSet::from_zero_based(p.cols(), members).expect("column indices are in range")
}
