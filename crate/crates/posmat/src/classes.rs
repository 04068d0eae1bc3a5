//! Recognition of the classical structural classes of square nonnegative
//! matrices, with machine-checkable certificates, plus the stochastic
//! coefficients mu (best everywhere-positive column height) and alpha
//! (worst pairwise common mass) and exact power limits.

use std::collections::VecDeque;

use num::{Signed, Zero};

use crate::matrix::{
    bool_product, positive_columns, IndexSet, NonnegMatrix, PatternMatrix, StochasticMatrix,
    Support,
};
use crate::{Error, Rational, Result};

/// Default cap for the fully-indecomposable subset scan.
pub const DEFAULT_SUBSET_CAP: usize = 24;

/// Default cap (in rows) for the Sarymsakov disjoint-pair scan.
pub const DEFAULT_SARYMSAKOV_CAP: usize = 14;

fn require_square(p: &impl Support) -> Result<usize> {
    if !p.is_square() {
        return Err(Error::Dimension(format!(
            "need a square matrix, got {}x{}",
            p.rows(),
            p.cols()
        )));
    }
    Ok(p.rows())
}

fn adjacency_lists(p: &impl Support) -> Vec<Vec<usize>> {
    (0..p.rows())
        .map(|i| (0..p.cols()).filter(|&j| p.positive(i, j)).collect())
        .collect()
}

/// Strongly connected components of the pattern digraph, iterative
/// Tarjan.  Components come out sinks-first: edges leave component `i`
/// only into components `0..=i`.
pub fn strongly_connected_components(p: &impl Support) -> Result<Vec<Vec<usize>>> {
    let n = require_square(p)?;
    let adj = adjacency_lists(p);
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(frame) = work.last_mut() {
            let v = frame.0;
            if frame.1 < adj[v].len() {
                let w = adj[v][frame.1];
                frame.1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(parent) = work.last() {
                    let u = parent.0;
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    Ok(comps)
}

/// Permutation witness for reducibility: reindexing by `permutation`
/// (1-based original indices) puts an all-zero block in rows
/// `1..=leading_block`, columns `leading_block+1..=n`.
#[derive(Clone, Debug)]
pub struct ReducibilityCertificate {
    pub permutation: Vec<usize>,
    pub leading_block: usize,
}

impl ReducibilityCertificate {
    /// Re-checks the zero block against the matrix it certifies.
    pub fn verify(&self, p: &impl Support) -> Result<bool> {
        let n = require_square(p)?;
        if self.permutation.len() != n || self.leading_block == 0 || self.leading_block >= n {
            return Ok(false);
        }
        let mut seen = vec![false; n];
        for &v in &self.permutation {
            if v == 0 || v > n || seen[v - 1] {
                return Ok(false);
            }
            seen[v - 1] = true;
        }
        for a in 0..self.leading_block {
            for b in self.leading_block..n {
                if p.positive(self.permutation[a] - 1, self.permutation[b] - 1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A 1x1 matrix is irreducible iff its entry is positive; larger
/// matrices iff the pattern digraph is strongly connected.
pub fn is_irreducible(p: &impl Support) -> Result<bool> {
    let n = require_square(p)?;
    if n == 1 {
        return Ok(p.positive(0, 0));
    }
    Ok(strongly_connected_components(p)?.len() == 1)
}

/// A block-triangularizing permutation for reducible matrices with
/// `n >= 2`; `None` when irreducible.  The reducible 1x1 zero matrix has
/// no block form and also reports `None`.
pub fn reducibility_certificate(p: &impl Support) -> Result<Option<ReducibilityCertificate>> {
    let n = require_square(p)?;
    if n == 1 || is_irreducible(p)? {
        return Ok(None);
    }
    let comps = strongly_connected_components(p)?;
    let permutation: Vec<usize> = comps.iter().flatten().map(|v| v + 1).collect();
    let cert = ReducibilityCertificate {
        leading_block: comps[0].len(),
        permutation,
    };
    debug_assert!(cert.verify(p)?);
    Ok(Some(cert))
}

/// The period of an irreducible matrix: gcd of all cycle lengths of the
/// pattern digraph, computed from breadth-first levels.
pub fn period(p: &impl Support) -> Result<u64> {
    let n = require_square(p)?;
    if !is_irreducible(p)? {
        return Err(Error::NotIrreducible);
    }
    if n == 1 {
        return Ok(1);
    }
    let adj = adjacency_lists(p);
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g: u64 = 0;
    for u in 0..n {
        for &v in &adj[u] {
            let d = (level[u] + 1 - level[v]) as u64; // BFS: level[v] <= level[u] + 1
            g = gcd(g, d);
        }
    }
    debug_assert!(g >= 1);
    Ok(g)
}

/// Independent route to the period: gcd of the powers `e <= n*n` whose
/// pattern puts a positive entry at position (1,1).  Used as a
/// cross-check oracle against [`period`].
pub fn period_by_return_times(p: &impl Support) -> Result<u64> {
    let n = require_square(p)?;
    if !is_irreducible(p)? {
        return Err(Error::NotIrreducible);
    }
    let ind = p.indicator();
    let mut acc = ind.clone();
    let mut g: u64 = 0;
    for e in 1..=(n * n) as u64 {
        if acc.get(0, 0) {
            g = gcd(g, e);
        }
        if e < (n * n) as u64 {
            acc = bool_product(&acc, &ind)?;
        }
    }
    debug_assert!(g >= 1);
    Ok(g)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Irreducible with period 1.  Total: reducible matrices report `false`.
pub fn is_primitive(p: &impl Support) -> Result<bool> {
    if !is_irreducible(p)? {
        return Ok(false);
    }
    Ok(period(p)? == 1)
}

/// The exponent bound `n^2 - 2n + 2` past which a primitive matrix must
/// have gone entirely positive.
pub fn gamma_ceiling(n: usize) -> u64 {
    let n = n as u64;
    n * n - 2 * n + 2
}

/// The exponent of primitivity: least `e >= 1` with every entry of `P^e`
/// positive.  Successive boolean products with early exit; errors on
/// non-primitive input.
pub fn gamma(p: &impl Support) -> Result<u64> {
    let n = require_square(p)?;
    if !is_primitive(p)? {
        return Err(Error::NotPrimitive);
    }
    let ind = p.indicator();
    let mut acc = ind.clone();
    let mut e = 1u64;
    while !acc.is_all_ones() {
        acc = bool_product(&acc, &ind)?;
        e += 1;
        assert!(
            e <= gamma_ceiling(n),
            "exponent search passed the universal ceiling; this is a library bug"
        );
    }
    Ok(e)
}

/// Length of a shortest directed cycle (a loop counts as 1), or `None`
/// for an acyclic pattern.
pub fn girth(p: &impl Support) -> Result<Option<u64>> {
    let n = require_square(p)?;
    let adj = adjacency_lists(p);
    let mut best: Option<u64> = None;
    for v in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for u in 0..n {
            if dist[u] != usize::MAX && p.positive(u, v) {
                let cycle = (dist[u] + 1) as u64;
                if best.map_or(true, |b| cycle < b) {
                    best = Some(cycle);
                }
            }
        }
    }
    Ok(best)
}

/// Witness that a matrix is partly decomposable: an all-zero block on
/// `rows x zero_columns` with `|rows| + |zero_columns| >= n`.
#[derive(Clone, Debug)]
pub struct DecomposabilityWitness {
    pub rows: IndexSet,
    pub zero_columns: IndexSet,
}

#[derive(Clone, Debug)]
pub struct FullIndecomposabilityReport {
    pub fully_indecomposable: bool,
    pub witness: Option<DecomposabilityWitness>,
}

pub fn is_fully_indecomposable(p: &impl Support) -> Result<bool> {
    Ok(full_indecomposability_report(p, DEFAULT_SUBSET_CAP)?.fully_indecomposable)
}

/// Scans nonempty proper row subsets `R` (lexicographic, first hit wins)
/// for one that zeroes out at least `n - |R|` columns; no such `R` means
/// fully indecomposable.  A 1x1 matrix is fully indecomposable iff
/// positive.
pub fn full_indecomposability_report(
    p: &impl Support,
    cap: usize,
) -> Result<FullIndecomposabilityReport> {
    let n = require_square(p)?;
    if n == 1 {
        return Ok(FullIndecomposabilityReport {
            fully_indecomposable: p.positive(0, 0),
            witness: None,
        });
    }
    let cap = cap.min(crate::gk::SUBSET_SCAN_CEILING);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "full-indecomposability subset scan",
            n,
            cap,
        });
    }
    let row_masks: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| p.positive(i, j))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();
    let full: u64 = if n == 64 { !0 } else { (1 << n) - 1 };

    fn extend(
        n: usize,
        rows: &[u64],
        full: u64,
        prefix: u64,
        or_acc: u64,
        size: usize,
        next_from: usize,
    ) -> Option<(u64, u64)> {
        for next in next_from..n {
            let r = prefix | 1 << next;
            let or2 = or_acc | rows[next];
            if size + 1 < n {
                let z = !or2 & full;
                if z.count_ones() as usize >= n - (size + 1) {
                    return Some((r, z));
                }
                if let Some(hit) = extend(n, rows, full, r, or2, size + 1, next + 1) {
                    return Some(hit);
                }
            }
        }
        None
    }

    match extend(n, &row_masks, full, 0, 0, 0, 0) {
        None => Ok(FullIndecomposabilityReport {
            fully_indecomposable: true,
            witness: None,
        }),
        Some((rmask, zmask)) => {
            let rows = IndexSet::from_zero_based(n, (0..n).filter(|i| rmask >> i & 1 == 1))?;
            let zero_columns =
                IndexSet::from_zero_based(n, (0..n).filter(|j| zmask >> j & 1 == 1))?;
            Ok(FullIndecomposabilityReport {
                fully_indecomposable: false,
                witness: Some(DecomposabilityWitness { rows, zero_columns }),
            })
        }
    }
}

/// Some column is positive in every row.
pub fn is_markov(p: &impl Support) -> bool {
    !positive_columns(p).is_empty()
}

/// `max_j min_i P[i][j]`: the height of the best everywhere-positive
/// column.  Positive iff the matrix is Markov.
pub fn mu(p: &StochasticMatrix) -> Result<Rational> {
    let n = require_square(p)?;
    let mut best = Rational::zero();
    for j in 0..n {
        let col_min = (0..n)
            .map(|i| p.get(i, j))
            .min()
            .expect("n >= 1")
            .clone();
        if col_min > best {
            best = col_min;
        }
    }
    Ok(best)
}

/// `min_{i<j} sum_k min(P[i][k], P[j][k])`: the smallest common mass of
/// a row pair.  Positive iff the matrix is scrambling.  Needs `n >= 2`.
pub fn alpha(p: &StochasticMatrix) -> Result<Rational> {
    let n = require_square(p)?;
    if n < 2 {
        return Err(Error::TooFewRows);
    }
    let mut best: Option<Rational> = None;
    for i in 0..n {
        for j in i + 1..n {
            let mut common = Rational::zero();
            for k in 0..n {
                common += p.get(i, k).min(p.get(j, k));
            }
            if best.as_ref().map_or(true, |b| &common < b) {
                best = Some(common);
            }
        }
    }
    Ok(best.expect("n >= 2"))
}

#[derive(Clone, Debug)]
pub struct ScramblingReport {
    pub scrambling: bool,
    /// For each row pair (1-based, i < j), the smallest shared positive
    /// column; present exactly when scrambling.
    pub shared_columns: Option<Vec<((usize, usize), usize)>>,
    /// A row pair with no shared positive column, when not scrambling.
    pub counterexample: Option<(usize, usize)>,
}

/// Every pair of rows shares a column where both are positive.
/// Needs at least two rows.
pub fn is_scrambling(p: &impl Support) -> Result<ScramblingReport> {
    let m = p.rows();
    if m < 2 {
        return Err(Error::TooFewRows);
    }
    let ind = p.indicator();
    let mut shared = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let a = ind.row_words(i);
            let b = ind.row_words(j);
            let mut hit = None;
            for (w, (x, y)) in a.iter().zip(b.iter()).enumerate() {
                let both = x & y;
                if both != 0 {
                    hit = Some(w * 64 + both.trailing_zeros() as usize);
                    break;
                }
            }
            match hit {
                Some(col) => shared.push(((i + 1, j + 1), col + 1)),
                None => {
                    return Ok(ScramblingReport {
                        scrambling: false,
                        shared_columns: None,
                        counterexample: Some((i + 1, j + 1)),
                    })
                }
            }
        }
    }
    Ok(ScramblingReport {
        scrambling: true,
        shared_columns: Some(shared),
        counterexample: None,
    })
}

/// `F(T)`: the columns holding a positive entry of some row in `t`.
/// May be empty (all rows of `t` zero).
pub fn consequent_indices(p: &impl Support, t: &IndexSet) -> Result<IndexSet> {
    if t.universe() != p.rows() {
        return Err(Error::UniverseMismatch(t.universe(), p.rows()));
    }
    t.require_nonempty()?;
    let members = (0..p.cols())
        .filter(|&j| t.zero_based().iter().any(|&i| p.positive(i, j)));
    IndexSet::from_zero_based(p.cols(), members)
}

#[derive(Clone, Debug)]
pub struct SarymsakovReport {
    pub holds: bool,
    /// Disjoint row sets `(I, J)` with `F(I)` and `F(J)` disjoint and
    /// `|F(I) u F(J)| <= |I u J|`, when the property fails.
    pub counterexample: Option<(IndexSet, IndexSet)>,
}

pub fn is_sarymsakov(p: &impl Support) -> Result<SarymsakovReport> {
    is_sarymsakov_capped(p, DEFAULT_SARYMSAKOV_CAP)
}

/// Checks every unordered pair of disjoint nonempty row subsets `I, J`:
/// either the consequent column sets intersect, or their union outgrows
/// `|I u J|`.  The scan is `3^m` in the number of rows, hence capped.
pub fn is_sarymsakov_capped(p: &impl Support, cap: usize) -> Result<SarymsakovReport> {
    let m = p.rows();
    let cap = cap.min(crate::gk::SUBSET_SCAN_CEILING);
    if m > cap {
        return Err(Error::CapExceeded {
            what: "Sarymsakov disjoint-pair scan",
            n: m,
            cap,
        });
    }
    let ind = p.indicator();
    let wpr = ind.row_words(0).len();
    // or_table[mask] = OR of the rows in mask
    let mut or_table: Vec<u64> = vec![0; (1 << m) * wpr];
    for mask in 1usize..1 << m {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        for w in 0..wpr {
            or_table[mask * wpr + w] = or_table[rest * wpr + w] | ind.row_words(low)[w];
        }
    }
    for imask in 1usize..1 << m {
        let comp = !imask & ((1 << m) - 1);
        // only partners whose smallest row comes later, for unordered pairs
        let above = comp & !((1 << (imask.trailing_zeros() + 1)) - 1);
        let mut jmask = above;
        while jmask != 0 {
            let mut intersects = false;
            let mut union_count = 0usize;
            for w in 0..wpr {
                let a = or_table[imask * wpr + w];
                let b = or_table[jmask * wpr + w];
                if a & b != 0 {
                    intersects = true;
                    break;
                }
                union_count += (a | b).count_ones() as usize;
            }
            if !intersects {
                let together = (imask | jmask).count_ones() as usize;
                if union_count <= together {
                    let i_set = IndexSet::from_zero_based(m, (0..m).filter(|b| imask >> b & 1 == 1))?;
                    let j_set = IndexSet::from_zero_based(m, (0..m).filter(|b| jmask >> b & 1 == 1))?;
                    return Ok(SarymsakovReport {
                        holds: false,
                        counterexample: Some((i_set, j_set)),
                    });
                }
            }
            jmask = (jmask - 1) & above;
        }
    }
    Ok(SarymsakovReport {
        holds: true,
        counterexample: None,
    })
}

/// Outcome of iterating exact powers of a stochastic matrix.
#[derive(Clone, Debug)]
pub enum PowerLimitOutcome {
    /// Successive powers came within `tolerance` entrywise.
    Converged { power: u64, matrix: StochasticMatrix },
    /// Still moving after the iteration budget (for example, periodic
    /// chains); reported rather than raised.
    MaxIterExceeded {
        power: u64,
        matrix: StochasticMatrix,
        last_delta: Rational,
    },
}

/// Follows `P, P^2, P^3, ...` in exact arithmetic until two successive
/// powers differ by less than `tolerance` in every entry.
pub fn power_limit(
    p: &StochasticMatrix,
    tolerance: &Rational,
    max_iter: u64,
) -> Result<PowerLimitOutcome> {
    require_square(p)?;
    if tolerance <= &Rational::zero() {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    if max_iter == 0 {
        return Err(Error::Invalid("max_iter must be at least 1".into()));
    }
    let mut prev = p.clone();
    let mut delta = Rational::zero();
    for t in 1..=max_iter {
        let next = prev.matmul(p)?;
        delta = max_abs_diff(next.as_matrix(), prev.as_matrix());
        if &delta < tolerance {
            return Ok(PowerLimitOutcome::Converged {
                power: t + 1,
                matrix: next,
            });
        }
        prev = next;
    }
    Ok(PowerLimitOutcome::MaxIterExceeded {
        power: max_iter + 1,
        matrix: prev,
        last_delta: delta,
    })
}

fn max_abs_diff(a: &NonnegMatrix, b: &NonnegMatrix) -> Rational {
    let mut best = Rational::zero();
    for (x, y) in a.entries().iter().zip(b.entries().iter()) {
        let d = (x - y).abs();
        if d > best {
            best = d;
        }
    }
    best
}

/// Caps for the exponential scans inside [`classify_with_caps`].
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub subset_scan: usize,
    pub sarymsakov_rows: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subset_scan: DEFAULT_SUBSET_CAP,
            sarymsakov_rows: DEFAULT_SARYMSAKOV_CAP,
        }
    }
}

impl Caps {
    /// One number overriding every cap.
    pub fn uniform(n: usize) -> Caps {
        Caps {
            subset_scan: n,
            sarymsakov_rows: n,
        }
    }
}

/// One-stop structural survey.  Square-only properties are `None` on
/// rectangular input; cap-bounded properties are `None` when the matrix
/// is too large for their scan.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub rows: usize,
    pub cols: usize,
    pub row_allowable: bool,
    pub column_allowable: bool,
    pub irreducible: Option<bool>,
    pub period: Option<u64>,
    pub primitive: Option<bool>,
    pub gamma: Option<u64>,
    pub girth: Option<u64>,
    pub fully_indecomposable: Option<bool>,
    pub markov: bool,
    pub scrambling: Option<bool>,
    pub sarymsakov: Option<bool>,
    pub certificates: Certificates,
}

#[derive(Clone, Debug, Default)]
pub struct Certificates {
    pub reducibility: Option<ReducibilityCertificate>,
    pub decomposability: Option<DecomposabilityWitness>,
    pub non_scrambling_pair: Option<(usize, usize)>,
    pub non_sarymsakov_pair: Option<(IndexSet, IndexSet)>,
    pub markov_column: Option<usize>,
}

pub fn classify(p: &PatternMatrix) -> ClassificationReport {
    classify_with_caps(p, Caps::default())
}

pub fn classify_with_caps(p: &PatternMatrix, caps: Caps) -> ClassificationReport {
    let mut report = ClassificationReport {
        rows: p.rows(),
        cols: p.cols(),
        row_allowable: crate::matrix::is_row_allowable(p),
        column_allowable: crate::matrix::is_column_allowable(p),
        irreducible: None,
        period: None,
        primitive: None,
        gamma: None,
        girth: None,
        fully_indecomposable: None,
        markov: is_markov(p),
        scrambling: None,
        sarymsakov: None,
        certificates: Certificates::default(),
    };
    if report.markov {
        report.certificates.markov_column = positive_columns(p).one_based().first().copied();
    }
    if p.is_square() {
        let irreducible = is_irreducible(p).expect("square");
        report.irreducible = Some(irreducible);
        if irreducible {
            report.period = Some(period(p).expect("irreducible"));
        } else {
            report.certificates.reducibility = reducibility_certificate(p).expect("square");
        }
        let primitive = is_primitive(p).expect("square");
        report.primitive = Some(primitive);
        if primitive {
            report.gamma = Some(gamma(p).expect("primitive"));
        }
        report.girth = girth(p).expect("square");
        match full_indecomposability_report(p, caps.subset_scan) {
            Ok(fi) => {
                report.fully_indecomposable = Some(fi.fully_indecomposable);
                report.certificates.decomposability = fi.witness;
            }
            Err(Error::CapExceeded { .. }) => {}
            Err(e) => unreachable!("unexpected classify error: {e}"),
        }
    }
    if p.rows() >= 2 {
        let s = is_scrambling(p).expect("two rows");
        report.scrambling = Some(s.scrambling);
        report.certificates.non_scrambling_pair = s.counterexample;
    }
    match is_sarymsakov_capped(p, caps.sarymsakov_rows) {
        Ok(s) => {
            report.sarymsakov = Some(s.holds);
            report.certificates.non_sarymsakov_pair = s.counterexample;
        }
        Err(Error::CapExceeded { .. }) => {}
        Err(e) => unreachable!("unexpected classify error: {e}"),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_rational;

    fn pat(rows: &[Vec<u8>]) -> PatternMatrix {
        PatternMatrix::from_rows(rows).unwrap()
    }

    fn stoch(rows: &[&[&str]]) -> StochasticMatrix {
        let m = NonnegMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rational(s).unwrap()).collect())
                .collect(),
        )
        .unwrap();
        StochasticMatrix::new(m).unwrap()
    }

    #[test]
    fn reducibility_of_the_blocked_example() {
        // vertices 1-2 form a closed class; 3 and 4 dangle off it
        let p = pat(&[
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![1, 0, 0, 1],
            vec![0, 0, 1, 0],
        ]);
        assert!(!is_irreducible(&p).unwrap());
        let cert = reducibility_certificate(&p).unwrap().unwrap();
        assert!(cert.verify(&p).unwrap());
        assert_eq!(cert.leading_block, 2);
        assert_eq!(&cert.permutation[..2], &[1, 2]);
    }

    #[test]
    fn one_by_one_and_zero_matrices() {
        assert!(is_irreducible(&pat(&[vec![1]])).unwrap());
        assert!(!is_irreducible(&pat(&[vec![0]])).unwrap());
        assert!(reducibility_certificate(&pat(&[vec![0]])).unwrap().is_none());
        let z = PatternMatrix::zeros(3, 3).unwrap();
        assert!(!is_irreducible(&z).unwrap());
        let cert = reducibility_certificate(&z).unwrap().unwrap();
        assert!(cert.verify(&z).unwrap());
    }

    #[test]
    fn period_of_cycles_and_oracle_agreement() {
        let c3 = pat(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(period(&c3).unwrap(), 3);
        assert_eq!(period_by_return_times(&c3).unwrap(), 3);

        let loop1 = pat(&[vec![1]]);
        assert_eq!(period(&loop1).unwrap(), 1);

        let two_blocks = pat(&[
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 1],
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 0],
        ]);
        assert_eq!(period(&two_blocks).unwrap(), 2);
        assert_eq!(period_by_return_times(&two_blocks).unwrap(), 2);

        assert!(matches!(
            period(&pat(&[vec![1, 1], vec![0, 1]])),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn primitivity_and_gamma() {
        let offdiag = pat(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(is_primitive(&offdiag).unwrap());
        assert_eq!(gamma(&offdiag).unwrap(), 2);

        let c3 = pat(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert!(!is_primitive(&c3).unwrap());
        assert!(matches!(gamma(&c3), Err(Error::NotPrimitive)));

        assert!(is_primitive(&pat(&[vec![1]])).unwrap());
        assert_eq!(gamma(&pat(&[vec![1]])).unwrap(), 1);
        assert_eq!(gamma_ceiling(5), 17);
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&pat(&[vec![1]])).unwrap(), Some(1));
        assert_eq!(girth(&pat(&[vec![0]])).unwrap(), None);
        let offdiag = pat(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(girth(&offdiag).unwrap(), Some(2));
        let c3 = pat(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(girth(&c3).unwrap(), Some(3));
        let strict_upper = pat(&[vec![0, 1, 1], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(girth(&strict_upper).unwrap(), None);
        // loop beats the long cycle
        let c3_loop = pat(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 1]]);
        assert_eq!(girth(&c3_loop).unwrap(), Some(1));
    }

    #[test]
    fn full_indecomposability_cases() {
        let offdiag = pat(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(is_fully_indecomposable(&offdiag).unwrap());

        let id3 = PatternMatrix::identity(3).unwrap();
        let rep = full_indecomposability_report(&id3, 24).unwrap();
        assert!(!rep.fully_indecomposable);
        let w = rep.witness.unwrap();
        assert_eq!(w.rows.one_based(), vec![1]);
        assert_eq!(w.zero_columns.one_based(), vec![2, 3]);
        // witness block really is zero and large enough
        assert!(w
            .rows
            .zero_based()
            .iter()
            .all(|&i| w.zero_columns.zero_based().iter().all(|&j| !id3.get(i, j))));
        assert!(w.rows.len() + w.zero_columns.len() >= 3);

        assert!(is_fully_indecomposable(&pat(&[vec![1]])).unwrap());
        assert!(!is_fully_indecomposable(&pat(&[vec![0]])).unwrap());
        assert!(is_fully_indecomposable(&PatternMatrix::all_ones(4, 4).unwrap()).unwrap());

        let too_big = PatternMatrix::all_ones(25, 25).unwrap();
        assert!(matches!(
            full_indecomposability_report(&too_big, 24),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn markov_and_the_stochastic_coefficients() {
        let a = stoch(&[&["0", "1"], &["1/2", "1/2"]]);
        assert!(is_markov(&a));
        assert_eq!(mu(&a).unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(alpha(&a).unwrap(), parse_rational("1/2").unwrap());

        let b = stoch(&[&["1", "0"], &["1/2", "1/2"]]);
        assert!(is_markov(&b));
        assert_eq!(mu(&b).unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(alpha(&b).unwrap(), parse_rational("1/2").unwrap());

        let id = stoch(&[&["1", "0"], &["0", "1"]]);
        assert!(!is_markov(&id));
        assert!(mu(&id).unwrap().is_zero());
        assert!(alpha(&id).unwrap().is_zero());
        assert!(matches!(
            alpha(&stoch(&[&["1"]])),
            Err(Error::TooFewRows)
        ));
    }

    #[test]
    fn scrambling_reports() {
        let s = pat(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let rep = is_scrambling(&s).unwrap();
        assert!(rep.scrambling);
        assert_eq!(
            rep.shared_columns.unwrap(),
            vec![((1, 2), 2), ((1, 3), 1), ((2, 3), 3)]
        );

        let id = PatternMatrix::identity(2).unwrap();
        let rep = is_scrambling(&id).unwrap();
        assert!(!rep.scrambling);
        assert_eq!(rep.counterexample, Some((1, 2)));

        assert!(matches!(
            is_scrambling(&pat(&[vec![1, 1]])),
            Err(Error::TooFewRows)
        ));
    }

    #[test]
    fn consequent_indices_and_sarymsakov() {
        let upper = pat(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        let t = IndexSet::new(3, [1, 2]).unwrap();
        assert_eq!(
            consequent_indices(&upper, &t).unwrap().one_based(),
            vec![1, 2, 3]
        );
        // Sarymsakov but not scrambling: rows 1 and 3 share nothing,
        // yet every disjoint pair grows or intersects.
        assert!(is_sarymsakov(&upper).unwrap().holds);
        assert!(!is_scrambling(&upper).unwrap().scrambling);

        let id = PatternMatrix::identity(2).unwrap();
        let rep = is_sarymsakov(&id).unwrap();
        assert!(!rep.holds);
        let (i, j) = rep.counterexample.unwrap();
        assert_eq!(i.one_based(), vec![1]);
        assert_eq!(j.one_based(), vec![2]);

        let zero_row = pat(&[vec![0, 0], vec![1, 1]]);
        assert!(!is_sarymsakov(&zero_row).unwrap().holds);

        let big = PatternMatrix::all_ones(15, 15).unwrap();
        assert!(matches!(
            is_sarymsakov(&big),
            Err(Error::CapExceeded { n: 15, cap: 14, .. })
        ));
    }

    #[test]
    fn scrambling_implies_sarymsakov_implies_row_allowable() {
        use crate::generate;
        let mut rng = generate::rng_from_seed(7);
        for _ in 0..300 {
            let p = generate::random_pattern(5, 5, 2, 5, &mut rng).unwrap();
            let scr = is_scrambling(&p).unwrap().scrambling;
            let sar = is_sarymsakov(&p).unwrap().holds;
            if scr {
                assert!(sar, "scrambling must imply Sarymsakov\n{p:?}");
            }
            if sar {
                assert!(
                    crate::matrix::is_row_allowable(&p),
                    "Sarymsakov must imply row-allowable\n{p:?}"
                );
            }
        }
    }

    #[test]
    fn power_limit_of_a_primitive_chain() {
        let a = stoch(&[&["0", "1"], &["1/2", "1/2"]]);
        let tol = parse_rational("1/1000000000000").unwrap();
        match power_limit(&a, &tol, 200).unwrap() {
            PowerLimitOutcome::Converged { matrix, .. } => {
                let third = parse_rational("1/3").unwrap();
                let two_thirds = parse_rational("2/3").unwrap();
                let eps = parse_rational("1/1000000000").unwrap();
                for i in 0..2 {
                    assert!((matrix.get(i, 0) - &third).abs() < eps);
                    assert!((matrix.get(i, 1) - &two_thirds).abs() < eps);
                }
            }
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn power_limit_reports_periodic_chains() {
        let swap = stoch(&[&["0", "1"], &["1", "0"]]);
        let tol = parse_rational("1/1000").unwrap();
        match power_limit(&swap, &tol, 50).unwrap() {
            PowerLimitOutcome::MaxIterExceeded { last_delta, .. } => {
                assert_eq!(last_delta, parse_rational("1").unwrap());
            }
            other => panic!("expected iteration cap, got {other:?}"),
        }
        assert!(power_limit(&swap, &Rational::zero(), 5).is_err());
    }

    #[test]
    fn power_limit_fixed_point() {
        let id = stoch(&[&["1", "0"], &["0", "1"]]);
        let tol = parse_rational("1/10").unwrap();
        match power_limit(&id, &tol, 5).unwrap() {
            PowerLimitOutcome::Converged { power, matrix } => {
                assert_eq!(power, 2);
                assert_eq!(&matrix, &id);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_surveys_the_blocked_example() {
        let p = pat(&[
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![1, 0, 0, 1],
            vec![0, 0, 1, 0],
        ]);
        let rep = classify(&p);
        assert!(rep.row_allowable && rep.column_allowable);
        assert_eq!(rep.irreducible, Some(false));
        assert_eq!(rep.primitive, Some(false));
        assert_eq!(rep.period, None);
        assert_eq!(rep.girth, Some(1));
        assert_eq!(rep.fully_indecomposable, Some(false));
        assert!(!rep.markov, "row 4 blocks every column");
        assert_eq!(rep.certificates.markov_column, None);
        assert_eq!(rep.scrambling, Some(false));
        assert!(rep.certificates.reducibility.unwrap().verify(&p).unwrap());

        let rect = pat(&[vec![1, 0, 1], vec![1, 1, 0]]);
        let rep = classify(&rect);
        assert_eq!(rep.irreducible, None);
        assert_eq!(rep.scrambling, Some(true));
    }
}
