//! The g_k family of square nonnegative matrices.
//!
//! `P` (n x n, n >= 2) belongs to class k in `1..=n-1` when for every
//! nonempty proper subset `F` of `{1,..,n}` the deficiency set
//! `D_F = { i outside F : row i has a positive entry in some column of F }`
//! satisfies `|D_F| >= min(k, |complement of F|)`.  The classes nest
//! downward in `k`; class 1 coincides with irreducibility.  A nonzero
//! 1x1 matrix is in class 1 by convention.
//!
//! Membership is decided by scanning all `2^n - 2` subsets, so it is
//! capped (default [`DEFAULT_SUBSET_CAP`]); the scan visits subsets in
//! lexicographic order of their sorted member lists and stops at the
//! first violation, which is therefore the lexicographically smallest
//! counterexample, independent of build configuration.

use crate::matrix::{IndexSet, Support};
use crate::{Error, Rational, Result};
use num::Zero;

/// Default cap on `n` for the exponential subset scans.
pub const DEFAULT_SUBSET_CAP: usize = 24;

/// Absolute ceiling: subset masks are machine words.
pub const SUBSET_SCAN_CEILING: usize = 63;

/// `D_F`: the rows outside `f` with a positive entry in a column of `f`.
/// May be empty.
pub fn deficiency_set(p: &impl Support, f: &IndexSet) -> Result<IndexSet> {
    let n = require_square(p)?;
    if f.universe() != n {
        return Err(Error::UniverseMismatch(f.universe(), n));
    }
    f.require_nonempty()?;
    if f.is_full() {
        return Err(Error::Invalid(
            "deficiency set needs a proper subset".into(),
        ));
    }
    let members = (0..n).filter(|&i| {
        !f.contains_zero_based(i) && f.zero_based().iter().any(|&j| p.positive(i, j))
    });
    IndexSet::from_zero_based(n, members)
}

/// A violated subset together with what was required of it.
#[derive(Clone, Debug)]
pub struct GkCounterexample {
    pub f: IndexSet,
    pub deficiency: IndexSet,
    pub required: usize,
}

/// Outcome of a class-k membership test.
#[derive(Clone, Debug)]
pub struct GkReport {
    pub n: usize,
    pub k: usize,
    pub is_member: bool,
    /// The lexicographically smallest violating subset, when not a member.
    pub counterexample: Option<GkCounterexample>,
}

/// Class-k membership with the default scan cap.
pub fn is_gk(p: &impl Support, k: usize) -> Result<GkReport> {
    is_gk_capped(p, k, DEFAULT_SUBSET_CAP)
}

/// Class-k membership; `cap` bounds the matrix size admitted to the
/// `2^n` subset scan.
pub fn is_gk_capped(p: &impl Support, k: usize, cap: usize) -> Result<GkReport> {
    let n = require_square(p)?;
    if n == 1 {
        if k != 1 {
            return Err(Error::KOutOfRange { k, n });
        }
        return Ok(GkReport {
            n,
            k,
            is_member: p.positive(0, 0),
            counterexample: None,
        });
    }
    if k == 0 || k > n - 1 {
        return Err(Error::KOutOfRange { k, n });
    }
    let cap = cap.min(SUBSET_SCAN_CEILING);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "g_k subset scan",
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

    match scan_lex(n, &row_masks, k) {
        None => Ok(GkReport {
            n,
            k,
            is_member: true,
            counterexample: None,
        }),
        Some(fmask) => {
            let f = IndexSet::from_zero_based(n, bits(fmask))?;
            let deficiency = IndexSet::from_zero_based(
                n,
                bits(deficiency_mask(n, &row_masks, fmask)),
            )?;
            let required = k.min(n - f.len());
            Ok(GkReport {
                n,
                k,
                is_member: false,
                counterexample: Some(GkCounterexample {
                    f,
                    deficiency,
                    required,
                }),
            })
        }
    }
}

fn deficiency_mask(n: usize, row_masks: &[u64], fmask: u64) -> u64 {
    let mut d = 0u64;
    for (i, &rm) in row_masks.iter().enumerate().take(n) {
        if fmask >> i & 1 == 0 && rm & fmask != 0 {
            d |= 1 << i;
        }
    }
    d
}

/// Depth-first prefix extension visits nonempty proper subsets in
/// lexicographic order of their sorted member lists; returns the first
/// violating subset's mask.
fn scan_lex(n: usize, row_masks: &[u64], k: usize) -> Option<u64> {
    fn extend(
        n: usize,
        row_masks: &[u64],
        k: usize,
        prefix: u64,
        size: usize,
        next_from: usize,
    ) -> Option<u64> {
        for next in next_from..n {
            let fmask = prefix | 1 << next;
            let size = size + 1;
            if size < n {
                let deficient = deficiency_mask(n, row_masks, fmask).count_ones() as usize;
                if deficient < k.min(n - size) {
                    return Some(fmask);
                }
                if let Some(hit) = extend(n, row_masks, k, fmask, size, next + 1) {
                    return Some(hit);
                }
            }
        }
        None
    }
    extend(n, row_masks, k, 0, 0, 0)
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// The largest k whose class contains `p` (0 when not even in class 1,
/// which for n >= 2 means reducible).  A nonzero 1x1 matrix reports 1.
pub fn gk_index(p: &impl Support) -> Result<usize> {
    gk_index_capped(p, DEFAULT_SUBSET_CAP)
}

pub fn gk_index_capped(p: &impl Support, cap: usize) -> Result<usize> {
    let n = require_square(p)?;
    if n == 1 {
        return Ok(usize::from(p.positive(0, 0)));
    }
    // downward nesting makes membership monotone in k: binary search
    if !is_gk_capped(p, 1, cap)?.is_member {
        return Ok(0);
    }
    let mut lo = 1; // known member
    let mut hi = n - 1;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if is_gk_capped(p, mid, cap)?.is_member {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// How a nonnegative vector's positive support grows under `y -> (I+P)y`.
#[derive(Clone, Debug)]
pub struct VectorGrowthReport {
    /// Positive coordinates of `y`.
    pub positive_before: usize,
    /// Positive coordinates of `(I+P)y`.
    pub positive_after: usize,
    /// The guaranteed lower bound `h + min(k, n-h)` for class-k matrices.
    pub guaranteed: usize,
}

/// For `p` in class k and `y >= 0` with `h` positive coordinates,
/// `1 <= h <= n-1`, the vector `(I+P)y` has at least `h + min(k, n-h)`
/// positive coordinates.  Both hypotheses are checked (hypothesis error
/// on failure) and the bound is asserted.
pub fn vector_growth(
    p: &crate::matrix::NonnegMatrix,
    k: usize,
    y: &[Rational],
) -> Result<VectorGrowthReport> {
    let n = require_square(p)?;
    if y.len() != n {
        return Err(Error::Dimension(format!(
            "vector has {} coordinates, matrix is {n}x{n}",
            y.len()
        )));
    }
    if let Some(i) = y.iter().position(|v| v < &Rational::zero()) {
        return Err(Error::Hypothesis(format!(
            "y must be nonnegative; coordinate {} is {}",
            i + 1,
            y[i]
        )));
    }
    if !is_gk(p, k)?.is_member {
        return Err(Error::Hypothesis(format!(
            "matrix is not in class g_{k}"
        )));
    }
    let h = y.iter().filter(|v| !v.is_zero()).count();
    if h == 0 || h >= n {
        return Err(Error::Hypothesis(format!(
            "y needs between 1 and {} positive coordinates, has {h}",
            n - 1
        )));
    }
    let mut after = 0usize;
    for i in 0..n {
        let mut z = y[i].clone();
        for j in 0..n {
            if !p.get(i, j).is_zero() && !y[j].is_zero() {
                z += p.get(i, j) * &y[j];
            }
        }
        if !z.is_zero() {
            after += 1;
        }
    }
    let guaranteed = h + k.min(n - h);
    assert!(
        after >= guaranteed,
        "(I+P)y has {after} positive coordinates, below the guaranteed \
         {guaranteed}; this is a library bug"
    );
    Ok(VectorGrowthReport {
        positive_before: h,
        positive_after: after,
        guaranteed,
    })
}

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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{NonnegMatrix, PatternMatrix};
    use num::BigInt;

    /// 6x6 with at least two off-diagonal positives in every column that
    /// still fails class 2: columns {1,2,3} are reached from outside only
    /// through row 4.
    fn two_per_column_but_not_g2() -> PatternMatrix {
        PatternMatrix::from_rows(&[
            vec![0, 1, 1, 0, 0, 1],
            vec![1, 0, 1, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 1, 1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn deficiency_sets() {
        let p = two_per_column_but_not_g2();
        let f = IndexSet::new(6, [1, 2, 3]).unwrap();
        let d = deficiency_set(&p, &f).unwrap();
        assert_eq!(d.one_based(), vec![4]);

        // of rows 1-3, only row 1 reaches {4,5,6} (via column 6)
        let f2 = IndexSet::new(6, [4, 5, 6]).unwrap();
        assert_eq!(deficiency_set(&p, &f2).unwrap().one_based(), vec![1]);

        assert!(deficiency_set(&p, &IndexSet::full(6).unwrap()).is_err());
        assert!(deficiency_set(&p, &IndexSet::empty(6)).is_err());
    }

    #[test]
    fn the_two_per_column_matrix_is_g1_but_not_g2() {
        let p = two_per_column_but_not_g2();
        assert!(is_gk(&p, 1).unwrap().is_member);
        let rep = is_gk(&p, 2).unwrap();
        assert!(!rep.is_member);
        let ce = rep.counterexample.unwrap();
        assert_eq!(ce.f.one_based(), vec![1, 2, 3]);
        assert_eq!(ce.deficiency.one_based(), vec![4]);
        assert_eq!(ce.required, 2);
        // every column still has >= 2 off-diagonal positives
        for j in 0..6 {
            let off = (0..6).filter(|&i| i != j && p.get(i, j)).count();
            assert!(off >= 2, "column {}", j + 1);
        }
        assert_eq!(gk_index(&p).unwrap(), 1);
    }

    #[test]
    fn counterexamples_are_lexicographically_smallest() {
        // rows: all-ones, {1,2}, {3,4}, all-ones; fails class 2 at {1,2}
        // (only row 4 reaches columns 1-2 from outside) before the also
        // violating {3,4} is visited.
        let p = PatternMatrix::from_rows(&[
            vec![1, 1, 1, 1],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![1, 1, 1, 1],
        ])
        .unwrap();
        let rep = is_gk(&p, 2).unwrap();
        assert!(!rep.is_member);
        let ce = rep.counterexample.unwrap();
        assert_eq!(ce.f.one_based(), vec![1, 2]);
        assert_eq!(ce.deficiency.one_based(), vec![4]);
        // the witness the scan skipped is still a genuine violation
        let other = IndexSet::new(4, [3, 4]).unwrap();
        assert_eq!(deficiency_set(&p, &other).unwrap().one_based(), vec![1]);
        // class 1 holds, so the matrix is irreducible but not in class 2
        assert!(is_gk(&p, 1).unwrap().is_member);
    }

    #[test]
    fn column_of_ones_matrix_is_in_no_class() {
        let p = PatternMatrix::from_fn(4, 4, |_, j| j == 0).unwrap();
        for k in 1..=3 {
            assert!(!is_gk(&p, k).unwrap().is_member, "k = {k}");
        }
        assert_eq!(gk_index(&p).unwrap(), 0);
    }

    #[test]
    fn all_ones_has_top_class_index() {
        for n in 2..=6 {
            let p = PatternMatrix::all_ones(n, n).unwrap();
            assert_eq!(gk_index(&p).unwrap(), n - 1, "n = {n}");
        }
    }

    #[test]
    fn one_by_one_convention() {
        let pos = PatternMatrix::from_rows(&[vec![1]]).unwrap();
        let zero = PatternMatrix::from_rows(&[vec![0]]).unwrap();
        assert!(is_gk(&pos, 1).unwrap().is_member);
        assert!(!is_gk(&zero, 1).unwrap().is_member);
        assert_eq!(gk_index(&pos).unwrap(), 1);
        assert_eq!(gk_index(&zero).unwrap(), 0);
        assert!(matches!(
            is_gk(&pos, 2),
            Err(Error::KOutOfRange { k: 2, n: 1 })
        ));
    }

    #[test]
    fn k_range_and_cap_errors() {
        let p = PatternMatrix::all_ones(4, 4).unwrap();
        assert!(matches!(is_gk(&p, 0), Err(Error::KOutOfRange { .. })));
        assert!(matches!(is_gk(&p, 4), Err(Error::KOutOfRange { .. })));
        let wide = PatternMatrix::all_ones(25, 25).unwrap();
        assert!(matches!(
            is_gk(&wide, 1),
            Err(Error::CapExceeded { n: 25, cap: 24, .. })
        ));
        assert!(is_gk_capped(&wide, 1, 30).unwrap().is_member);
        let rect = PatternMatrix::all_ones(2, 3).unwrap();
        assert!(is_gk(&rect, 1).is_err());
    }

    #[test]
    fn classes_nest_downward() {
        use crate::generate;
        use rand::Rng;
        let mut rng = generate::rng_from_seed(01234);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let p = generate::random_pattern(n, n, 1, 2, &mut rng).unwrap();
            let idx = gk_index(&p).unwrap();
            for k in 1..=(n - 1) {
                assert_eq!(
                    is_gk(&p, k).unwrap().is_member,
                    k <= idx,
                    "n={n} k={k} idx={idx}\n{p:?}"
                );
            }
        }
    }

    #[test]
    fn growth_bound_is_tight_on_the_complete_offdiagonal_pattern() {
        let p = NonnegMatrix::from_integer_rows(&[
            vec![0, 1, 1],
            vec![1, 0, 1],
            vec![1, 1, 0],
        ])
        .unwrap();
        let one = Rational::from_integer(BigInt::from(1));
        let zero = Rational::from_integer(BigInt::from(0));
        let rep = vector_growth(&p, 2, &[one, zero.clone(), zero]).unwrap();
        assert_eq!(rep.positive_before, 1);
        assert_eq!(rep.positive_after, 3);
        assert_eq!(rep.guaranteed, 3); // 1 + min(2, 2): met with equality
    }

    #[test]
    fn growth_hypothesis_errors() {
        let p = NonnegMatrix::from_integer_rows(&[
            vec![0, 1, 1],
            vec![1, 0, 1],
            vec![1, 1, 0],
        ])
        .unwrap();
        let one = Rational::from_integer(BigInt::from(1));
        let zero = Rational::from_integer(BigInt::from(0));
        // all-positive y has h = n
        let all = vec![one.clone(), one.clone(), one.clone()];
        assert!(matches!(
            vector_growth(&p, 2, &all),
            Err(Error::Hypothesis(_))
        ));
        // zero y has h = 0
        let none = vec![zero.clone(), zero.clone(), zero.clone()];
        assert!(matches!(
            vector_growth(&p, 2, &none),
            Err(Error::Hypothesis(_))
        ));
        // reducible matrix is in no class
        let red = NonnegMatrix::from_integer_rows(&[
            vec![1, 0, 0],
            vec![1, 0, 0],
            vec![1, 0, 0],
        ])
        .unwrap();
        assert!(matches!(
            vector_growth(&red, 1, &[one, zero.clone(), zero]),
            Err(Error::Hypothesis(_))
        ));
    }
}
