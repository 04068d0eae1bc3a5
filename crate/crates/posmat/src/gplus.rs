//! Row-wise positivity over index-set pairs and its calculus.
//!
//! The basic relation: `P` is *sum-positive on `U x V`* when every row of
//! the submatrix `P[U, V]` has a positive entry.  Written `U -> V`, the
//! relation composes along products, which gives a cheap way to certify
//! that a column of a long product is positive without computing numbers.
//! The partition-level version asks, for each block `V` of a column
//! partition, for some block `U` of a row partition with `P` sum-positive
//! on `U x V`.

use crate::matrix::{bool_product, IndexSet, Partition, Support};
use crate::{Error, Result};

/// Hard ceiling for partition enumeration (Bell(10) = 115975 partitions).
pub const PARTITION_ENUM_HARD_CAP: usize = 10;

/// Default universe cap for partition enumeration.
pub const PARTITION_ENUM_DEFAULT_CAP: usize = 6;

/// True iff every row in `u` has a positive entry in some column of `v`.
pub fn sum_positive_on(p: &impl Support, u: &IndexSet, v: &IndexSet) -> Result<bool> {
    if u.universe() != p.rows() {
        return Err(Error::UniverseMismatch(u.universe(), p.rows()));
    }
    if v.universe() != p.cols() {
        return Err(Error::UniverseMismatch(v.universe(), p.cols()));
    }
    u.require_nonempty()?;
    v.require_nonempty()?;
    Ok(u.zero_based()
        .iter()
        .all(|&i| v.zero_based().iter().any(|&j| p.positive(i, j))))
}

/// The relation form `U -> V` of [`sum_positive_on`]; same truth value.
pub fn arrow(p: &impl Support, u: &IndexSet, v: &IndexSet) -> Result<bool> {
    sum_positive_on(p, u, v)
}

/// A chain of index sets threaded through a sequence of matrices:
/// `sets[l]` lives on the rows of `mats[l]`, and the last set on the
/// columns of the last matrix.
#[derive(Clone, Debug)]
pub struct ChainWitness {
    pub sets: Vec<IndexSet>,
}

impl ChainWitness {
    pub fn new(sets: Vec<IndexSet>) -> Self {
        ChainWitness { sets }
    }
}

/// Checks `sets[0] -> sets[1] -> ... -> sets[t]` across `mats`.
///
/// When the check succeeds with `sets[0]` the full row universe and the
/// final set a singleton `{j}`, column `j` of the whole product is
/// positive; that consequence is re-verified here against the boolean
/// product as an internal consistency check.
pub fn verify_chain<P: Support>(mats: &[P], witness: &ChainWitness) -> Result<bool> {
    if mats.is_empty() {
        return Err(Error::Dimension("chain needs at least one matrix".into()));
    }
    if witness.sets.len() != mats.len() + 1 {
        return Err(Error::Dimension(format!(
            "{} matrices need {} sets, got {}",
            mats.len(),
            mats.len() + 1,
            witness.sets.len()
        )));
    }
    for l in 0..mats.len() - 1 {
        if mats[l].cols() != mats[l + 1].rows() {
            return Err(Error::Dimension(format!(
                "matrix {} has {} columns but matrix {} has {} rows",
                l + 1,
                mats[l].cols(),
                l + 2,
                mats[l + 1].rows()
            )));
        }
    }
    for (l, m) in mats.iter().enumerate() {
        if !arrow(m, &witness.sets[l], &witness.sets[l + 1])? {
            return Ok(false);
        }
    }
    let first = &witness.sets[0];
    let last = witness.sets.last().expect("nonempty witness");
    if first.is_full() && last.len() == 1 {
        let mut prod = mats[0].indicator();
        for m in &mats[1..] {
            prod = bool_product(&prod, &m.indicator())?;
        }
        let j = last.zero_based()[0];
        assert!(
            (0..prod.rows()).all(|i| prod.get(i, j)),
            "chain verified but column {} of the product is not positive; \
             this is a library bug",
            j + 1
        );
    }
    Ok(true)
}

/// Product closure of sum-positivity: if `p1` is sum-positive on
/// `u1 x u2` and `p2` on `u2 x u3` (both checked; a failure is a
/// hypothesis error), the product is sum-positive on `u1 x u3`.
/// The return value re-derives that conclusion from the boolean product;
/// `Ok(false)` would indicate a bug and is asserted against in tests.
pub fn product_in_g(
    p1: &impl Support,
    u1: &IndexSet,
    u2: &IndexSet,
    p2: &impl Support,
    u3: &IndexSet,
) -> Result<bool> {
    if p1.cols() != p2.rows() {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            p1.rows(),
            p1.cols(),
            p2.rows(),
            p2.cols()
        )));
    }
    if !sum_positive_on(p1, u1, u2)? {
        return Err(Error::Hypothesis(format!(
            "first factor is not sum-positive on {u1} x {u2}"
        )));
    }
    if !sum_positive_on(p2, u2, u3)? {
        return Err(Error::Hypothesis(format!(
            "second factor is not sum-positive on {u2} x {u3}"
        )));
    }
    let prod = bool_product(&p1.indicator(), &p2.indicator())?;
    sum_positive_on(&prod, u1, u3)
}

/// Whether `a` refines `b`: every block of `a` is contained in a block
/// of `b`.  The relation is a partial order on partitions of a fixed set.
pub fn is_finer(a: &Partition, b: &Partition) -> Result<bool> {
    if a.universe() != b.universe() {
        return Err(Error::UniverseMismatch(a.universe(), b.universe()));
    }
    Ok(a.blocks().iter().all(|block| {
        let head = block.zero_based()[0];
        match b.block_of_zero_based(head) {
            Some(pos) => block.is_subset_of(&b.blocks()[pos]),
            None => false,
        }
    }))
}

/// Outcome of a partition-level positivity check.
#[derive(Clone, Debug)]
pub struct DeltaPositivityReport {
    pub holds: bool,
    /// For each block of the column partition (in `blocks()` order), the
    /// position of the chosen row block, when one exists.
    pub assignment: Vec<Option<usize>>,
}

/// For each block `V` of `sigma`, looks for a block `U` of `delta` with
/// `p` sum-positive on `U x V`; the smallest such block position is
/// recorded.  Holds iff every `V` found one.
pub fn is_bracket_positive_on(
    p: &impl Support,
    delta: &Partition,
    sigma: &Partition,
) -> Result<DeltaPositivityReport> {
    if delta.universe() != p.rows() {
        return Err(Error::UniverseMismatch(delta.universe(), p.rows()));
    }
    if sigma.universe() != p.cols() {
        return Err(Error::UniverseMismatch(sigma.universe(), p.cols()));
    }
    let mut assignment = Vec::with_capacity(sigma.len());
    let mut holds = true;
    for v in sigma.blocks() {
        let mut chosen = None;
        for (pos, u) in delta.blocks().iter().enumerate() {
            if sum_positive_on(p, u, v)? {
                chosen = Some(pos);
                break;
            }
        }
        if chosen.is_none() {
            holds = false;
        }
        assignment.push(chosen);
    }
    Ok(DeltaPositivityReport { holds, assignment })
}

/// Chain form of partition-level positivity: `deltas[l]` partitions the
/// rows of `mats[l]` and `deltas[l+1]` its columns.  Each factor must be
/// positively linked for its partition pair (hypothesis error otherwise);
/// the product is then checked for the outer pair.  As with
/// [`product_in_g`], `Ok(false)` would indicate a bug.
///
/// Special case: when the first partition has a single block and the last
/// is all singletons, the linkage forces the product to be entirely
/// positive, which is also asserted here.
pub fn bracket_product_check<P: Support>(mats: &[P], deltas: &[Partition]) -> Result<bool> {
    if mats.is_empty() {
        return Err(Error::Dimension("chain needs at least one matrix".into()));
    }
    if deltas.len() != mats.len() + 1 {
        return Err(Error::Dimension(format!(
            "{} matrices need {} partitions, got {}",
            mats.len(),
            mats.len() + 1,
            deltas.len()
        )));
    }
    for (l, m) in mats.iter().enumerate() {
        let report = is_bracket_positive_on(m, &deltas[l], &deltas[l + 1])?;
        if !report.holds {
            return Err(Error::Hypothesis(format!(
                "factor {} is not positively linked for its partition pair",
                l + 1
            )));
        }
    }
    let mut prod = mats[0].indicator();
    for m in &mats[1..] {
        prod = bool_product(&prod, &m.indicator())?;
    }
    let outer = is_bracket_positive_on(&prod, &deltas[0], deltas.last().expect("nonempty"))?;
    if outer.holds
        && deltas[0].len() == 1
        && deltas.last().expect("nonempty").len() == prod.cols()
    {
        assert!(
            crate::matrix::is_positive(&prod),
            "whole-by-singletons linkage must force an all-positive product; \
             this is a library bug"
        );
    }
    Ok(outer.holds)
}

/// All partitions of `{1,..,n}`, generated by restricted growth strings.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidPartition("empty universe".into()));
    }
    if n > PARTITION_ENUM_HARD_CAP {
        return Err(Error::CapExceeded {
            what: "partition enumeration",
            n,
            cap: PARTITION_ENUM_HARD_CAP,
        });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks_n = rgs.iter().max().copied().unwrap_or(0) + 1;
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); blocks_n];
        for (i, &b) in rgs.iter().enumerate() {
            members[b].push(i);
        }
        let blocks = members
            .into_iter()
            .map(|m| IndexSet::from_zero_based(n, m))
            .collect::<Result<Vec<_>>>()?;
        out.push(Partition::new(blocks)?);

        // next restricted growth string
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().max().copied().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// Result of searching for the coarsest row partitions that make `p`
/// positively linked against a fixed column partition.
#[derive(Clone, Debug)]
pub struct MaximalBracketReport {
    /// The satisfying partitions that no strictly coarser satisfying
    /// partition dominates, in canonical order.
    pub maximal: Vec<Partition>,
    /// Whether exactly one maximal partition exists.
    pub unique: bool,
    /// How many partitions satisfied the linkage at all.
    pub satisfying_count: usize,
}

/// Scans every partition of the row universe (so the universe is capped:
/// `cap` at most [`PARTITION_ENUM_HARD_CAP`]) for those making `p`
/// positively linked on `sigma`, and keeps the maximal ones under
/// refinement.  Several incomparable maxima can coexist; `unique` reports
/// whether the maximum is unambiguous.
pub fn maximal_bracket_partitions(
    p: &impl Support,
    sigma: &Partition,
    cap: usize,
) -> Result<MaximalBracketReport> {
    let m = p.rows();
    let cap = cap.min(PARTITION_ENUM_HARD_CAP);
    if m > cap {
        return Err(Error::CapExceeded {
            what: "partition enumeration",
            n: m,
            cap,
        });
    }
    let mut satisfying = Vec::new();
    for delta in all_partitions(m)? {
        if is_bracket_positive_on(p, &delta, sigma)?.holds {
            satisfying.push(delta);
        }
    }
    let mut maximal = Vec::new();
    for cand in &satisfying {
        let dominated = satisfying
            .iter()
            .any(|other| other != cand && is_finer(cand, other).unwrap_or(false));
        if !dominated {
            maximal.push(cand.clone());
        }
    }
    maximal.sort();
    Ok(MaximalBracketReport {
        unique: maximal.len() == 1,
        satisfying_count: satisfying.len(),
        maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{is_column_allowable, NonnegMatrix, PatternMatrix};

    fn section_pair() -> (NonnegMatrix, NonnegMatrix) {
        let p1 = NonnegMatrix::from_integer_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 2, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 3],
        ])
        .unwrap();
        let p2 = NonnegMatrix::from_integer_rows(&[
            vec![0, 0, 1, 0],
            vec![1, 0, 1, 0],
            vec![0, 0, 2, 0],
            vec![4, 0, 0, 0],
        ])
        .unwrap();
        (p1, p2)
    }

    #[test]
    fn sum_positivity_on_the_worked_pair() {
        let (p1, p2) = section_pair();
        let all4 = IndexSet::full(4).unwrap();
        let first3 = IndexSet::new(4, [1, 2, 3]).unwrap();
        let col3 = IndexSet::singleton(4, 3).unwrap();
        assert!(sum_positive_on(&p1, &all4, &first3).unwrap());
        assert!(sum_positive_on(&p2, &first3, &col3).unwrap());
        // row 4 of p2 has nothing in column 3
        assert!(!sum_positive_on(&p2, &all4, &col3).unwrap());
        assert!(arrow(&p1, &all4, &first3).unwrap());

        let empty = IndexSet::empty(4);
        assert!(matches!(
            sum_positive_on(&p1, &empty, &first3),
            Err(Error::EmptySet)
        ));
        assert!(matches!(
            sum_positive_on(&p1, &IndexSet::full(3).unwrap(), &first3),
            Err(Error::UniverseMismatch(3, 4))
        ));
    }

    #[test]
    fn chain_on_the_worked_pair_certifies_a_positive_column() {
        let (p1, p2) = section_pair();
        let witness = ChainWitness::new(vec![
            IndexSet::full(4).unwrap(),
            IndexSet::new(4, [1, 2, 3]).unwrap(),
            IndexSet::singleton(4, 3).unwrap(),
        ]);
        assert!(verify_chain(&[p1.clone(), p2.clone()], &witness).unwrap());
        // and indeed column 3 of the numeric product is positive
        let prod = p1.matmul(&p2).unwrap();
        assert!((0..4).all(|i| prod.positive(i, 2)));

        let broken = ChainWitness::new(vec![
            IndexSet::full(4).unwrap(),
            IndexSet::singleton(4, 4).unwrap(), // row 4 of p2 is not positive on {3}
            IndexSet::singleton(4, 3).unwrap(),
        ]);
        assert!(!verify_chain(&[p1, p2], &broken).unwrap());
    }

    #[test]
    fn chain_dimension_errors() {
        let (p1, p2) = section_pair();
        let short = ChainWitness::new(vec![IndexSet::full(4).unwrap()]);
        assert!(verify_chain(&[p1.clone()], &short).is_err());
        let w = ChainWitness::new(vec![
            IndexSet::full(4).unwrap(),
            IndexSet::full(4).unwrap(),
            IndexSet::full(3).unwrap(),
        ]);
        assert!(verify_chain(&[p1, p2], &w).is_err());
    }

    #[test]
    fn product_composition_and_hypothesis_errors() {
        let (p1, p2) = section_pair();
        let all4 = IndexSet::full(4).unwrap();
        let first3 = IndexSet::new(4, [1, 2, 3]).unwrap();
        let col3 = IndexSet::singleton(4, 3).unwrap();
        assert!(product_in_g(&p1, &all4, &first3, &p2, &col3).unwrap());

        let bad = product_in_g(&p2, &all4, &col3, &p1, &col3);
        assert!(matches!(bad, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn refinement_is_a_partial_order() {
        let s = Partition::singletons(4).unwrap();
        let w = Partition::whole(4).unwrap();
        let mid = Partition::new(vec![
            IndexSet::new(4, [1, 2]).unwrap(),
            IndexSet::new(4, [3, 4]).unwrap(),
        ])
        .unwrap();
        let other = Partition::new(vec![
            IndexSet::new(4, [1, 3]).unwrap(),
            IndexSet::new(4, [2, 4]).unwrap(),
        ])
        .unwrap();
        assert!(is_finer(&s, &mid).unwrap() && is_finer(&mid, &w).unwrap());
        assert!(is_finer(&s, &w).unwrap());
        assert!(is_finer(&mid, &mid).unwrap());
        assert!(!is_finer(&w, &mid).unwrap());
        assert!(!is_finer(&mid, &other).unwrap() && !is_finer(&other, &mid).unwrap());
    }

    #[test]
    fn bracket_positivity_reduces_to_column_allowability_on_singletons() {
        // With both partitions all singletons, the linkage asks each column
        // for a positive entry.
        let good = NonnegMatrix::from_integer_rows(&[vec![1, 0], vec![0, 2]]).unwrap();
        let bad = NonnegMatrix::from_integer_rows(&[vec![1, 0], vec![1, 0]]).unwrap();
        for m in [&good, &bad] {
            let d = Partition::singletons(2).unwrap();
            let s = Partition::singletons(2).unwrap();
            let rep = is_bracket_positive_on(m, &d, &s).unwrap();
            assert_eq!(rep.holds, is_column_allowable(m));
        }
    }

    #[test]
    fn bracket_chain_check_runs_and_rejects_bad_hypotheses() {
        let p = NonnegMatrix::from_integer_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let deltas = vec![
            Partition::whole(2).unwrap(),
            Partition::singletons(2).unwrap(),
            Partition::singletons(2).unwrap(),
        ];
        assert!(bracket_product_check(&[p.clone(), p.clone()], &deltas).unwrap());

        let zero_col = NonnegMatrix::from_integer_rows(&[vec![1, 0], vec![1, 0]]).unwrap();
        let deltas2 = vec![Partition::singletons(2).unwrap(), Partition::singletons(2).unwrap()];
        assert!(matches!(
            bracket_product_check(&[zero_col], &deltas2),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn partition_enumeration_counts_are_bell_numbers() {
        assert_eq!(all_partitions(1).unwrap().len(), 1);
        assert_eq!(all_partitions(2).unwrap().len(), 2);
        assert_eq!(all_partitions(3).unwrap().len(), 5);
        assert_eq!(all_partitions(4).unwrap().len(), 15);
        assert_eq!(all_partitions(5).unwrap().len(), 52);
        assert_eq!(all_partitions(6).unwrap().len(), 203);
        assert!(matches!(
            all_partitions(11),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn maximal_partitions_for_the_identity_are_the_singletons() {
        let id = PatternMatrix::identity(3).unwrap();
        let sigma = Partition::singletons(3).unwrap();
        let rep = maximal_bracket_partitions(&id, &sigma, 6).unwrap();
        assert!(rep.unique);
        assert_eq!(rep.maximal, vec![Partition::singletons(3).unwrap()]);
        assert_eq!(rep.satisfying_count, 1);
    }

    #[test]
    fn maximal_partitions_for_all_ones_is_the_whole_block() {
        let ones = PatternMatrix::all_ones(3, 3).unwrap();
        let sigma = Partition::singletons(3).unwrap();
        let rep = maximal_bracket_partitions(&ones, &sigma, 6).unwrap();
        // every partition satisfies; only the one-block partition is maximal
        assert!(rep.unique);
        assert_eq!(rep.maximal, vec![Partition::whole(3).unwrap()]);
        assert_eq!(rep.satisfying_count, 5);
    }

    #[test]
    fn maximal_partitions_respects_the_cap() {
        let id = PatternMatrix::identity(7).unwrap();
        let sigma = Partition::singletons(7).unwrap();
        assert!(matches!(
            maximal_bracket_partitions(&id, &sigma, 6),
            Err(Error::CapExceeded { n: 7, cap: 6, .. })
        ));
        assert!(maximal_bracket_partitions(&id, &sigma, 8).is_ok());
    }
}
