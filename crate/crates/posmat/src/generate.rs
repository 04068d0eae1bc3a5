//! Seeded generators: random patterns, nonnegative and stochastic
//! matrices, random graphs, rejection-filtered variants, and the two
//! structured families used throughout (the Wielandt pattern and the
//! cyclic ring of all-ones blocks).
//!
//! Everything is reproducible: the same seed gives the same bytes on
//! every platform, and [`derive_seed`] splits one root seed into
//! independent per-trial streams.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{NonnegMatrix, PatternMatrix, StochasticMatrix};
use crate::{classes, gk, graph::Graph, Error, Rational, Result};

/// A fixed-algorithm RNG so seeds mean the same thing everywhere.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Splits `root` into stream `index` (splitmix64 finalizer), so trials
/// can be replayed individually.
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_density(num: u32, den: u32) -> Result<()> {
    if num == 0 || den == 0 || num > den {
        return Err(Error::Invalid(format!(
            "density must be a rational in (0,1], got {num}/{den}"
        )));
    }
    Ok(())
}

/// Each entry positive independently with probability `num/den` (exact,
/// no floating point).
pub fn random_pattern(
    rows: usize,
    cols: usize,
    num: u32,
    den: u32,
    rng: &mut impl Rng,
) -> Result<PatternMatrix> {
    check_density(num, den)?;
    PatternMatrix::from_fn(rows, cols, |_, _| rng.gen_ratio(num, den))
}

/// Pattern as in [`random_pattern`]; positive entries get uniform
/// integer values in `1..=9`.
pub fn random_nonneg(
    rows: usize,
    cols: usize,
    num: u32,
    den: u32,
    rng: &mut impl Rng,
) -> Result<NonnegMatrix> {
    check_density(num, den)?;
    let mut out = NonnegMatrix::zeros(rows, cols)?;
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_ratio(num, den) {
                *out.get_mut(i, j) = Rational::from_integer(rng.gen_range(1..=9).into());
            }
        }
    }
    Ok(out)
}

/// Random row-stochastic matrix: positive positions as in
/// [`random_pattern`] (each row forced nonempty), integer weights
/// `1..=9`, rows normalized exactly.
pub fn random_stochastic(n: usize, num: u32, den: u32, rng: &mut impl Rng) -> Result<StochasticMatrix> {
    check_density(num, den)?;
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut weights = vec![0u32; n];
        for w in weights.iter_mut() {
            if rng.gen_ratio(num, den) {
                *w = rng.gen_range(1..=9);
            }
        }
        if weights.iter().all(|w| *w == 0) {
            weights[rng.gen_range(0..n)] = rng.gen_range(1..=9);
        }
        let total: u32 = weights.iter().sum();
        rows.push(
            weights
                .iter()
                .map(|&w| Rational::new(w.into(), total.into()))
                .collect(),
        );
    }
    StochasticMatrix::new(NonnegMatrix::from_rows(rows)?)
}

/// Each unordered vertex pair, loops included, becomes an edge with
/// probability `num/den`.
pub fn random_graph(n: usize, num: u32, den: u32, rng: &mut impl Rng) -> Result<Graph> {
    check_density(num, den)?;
    let mut g = Graph::edgeless(n)?;
    for u in 1..=n {
        for v in u..=n {
            if rng.gen_ratio(num, den) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// The n x n pattern with ones on the superdiagonal and in the first two
/// positions of the last row: the extremal primitive pattern whose
/// exponent attains `n^2 - 2n + 2`.  Needs `n >= 2` (for `n = 2` the
/// superdiagonal and the bottom row overlap, giving `[[0,1],[1,1]]`).
pub fn wielandt(n: usize) -> Result<PatternMatrix> {
    if n < 2 {
        return Err(Error::Invalid(
            "the Wielandt pattern needs at least two rows".into(),
        ));
    }
    PatternMatrix::from_fn(n, n, |i, j| {
        (j == i + 1) || (i == n - 1 && j <= 1)
    })
}

/// Cyclic ring of all-ones blocks: rows in block `l` are positive
/// exactly on the columns of block `l+1 (mod t)`.  The result is
/// irreducible with period `t` and largest class index `min(sizes)`.
/// Needs at least two blocks, every size at least 1.
pub fn periodic_block(sizes: &[usize]) -> Result<PatternMatrix> {
    if sizes.len() < 2 {
        return Err(Error::Invalid(
            "the block ring needs at least two blocks".into(),
        ));
    }
    if sizes.contains(&0) {
        return Err(Error::Invalid("every block needs at least one row".into()));
    }
    let t = sizes.len();
    let n: usize = sizes.iter().sum();
    let starts: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect();
    let block_of = |i: usize| starts.iter().rposition(|&s| s <= i).expect("i < n");
    PatternMatrix::from_fn(n, n, |i, j| {
        let next = (block_of(i) + 1) % t;
        j >= starts[next] && j < starts[next] + sizes[next]
    })
}

/// Structural predicates available to [`random_pattern_filtered`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternFilter {
    Irreducible,
    FullyIndecomposable,
    Scrambling,
    Sarymsakov,
    Gk(usize),
}

impl PatternFilter {
    pub fn accepts(&self, p: &PatternMatrix) -> Result<bool> {
        match self {
            PatternFilter::Irreducible => classes::is_irreducible(p),
            PatternFilter::FullyIndecomposable => classes::is_fully_indecomposable(p),
            PatternFilter::Scrambling => Ok(classes::is_scrambling(p)?.scrambling),
            PatternFilter::Sarymsakov => Ok(classes::is_sarymsakov(p)?.holds),
            PatternFilter::Gk(k) => Ok(gk::is_gk(p, *k)?.is_member),
        }
    }
}

/// Rejection sampling of square patterns: draws with [`random_pattern`]
/// until `filter` accepts or `budget` draws are spent.
pub fn random_pattern_filtered(
    n: usize,
    num: u32,
    den: u32,
    filter: PatternFilter,
    budget: usize,
    rng: &mut impl Rng,
) -> Result<PatternMatrix> {
    check_density(num, den)?;
    for _ in 0..budget {
        let p = random_pattern(n, n, num, den, rng)?;
        if filter.accepts(&p)? {
            return Ok(p);
        }
    }
    Err(Error::Invalid(format!(
        "rejection budget ({budget} draws) exhausted for filter {filter:?} \
         at n = {n}, density {num}/{den}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{is_row_allowable, Support};

    #[test]
    fn wielandt_shapes() {
        let w3 = wielandt(3).unwrap();
        assert_eq!(
            w3,
            PatternMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap()
        );
        let w2 = wielandt(2).unwrap();
        assert_eq!(
            w2,
            PatternMatrix::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap()
        );
        assert!(wielandt(1).is_err());
    }

    #[test]
    fn wielandt_attains_the_exponent_ceiling() {
        for n in 2..=7 {
            let w = wielandt(n).unwrap();
            assert!(classes::is_primitive(&w).unwrap(), "n = {n}");
            assert_eq!(
                classes::gamma(&w).unwrap(),
                classes::gamma_ceiling(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn block_ring_structure() {
        assert_eq!(
            periodic_block(&[1, 1]).unwrap(),
            PatternMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
        );

        let p = periodic_block(&[3, 3, 3]).unwrap();
        assert_eq!(p.rows(), 9);
        assert_eq!(classes::period(&p).unwrap(), 3);
        // rows 1-3 hit columns 4-6, rows 4-6 hit 7-9, rows 7-9 wrap to 1-3
        assert!(p.get(0, 3) && !p.get(0, 0) && !p.get(0, 6));
        assert!(p.get(8, 0) && !p.get(8, 3));

        let p = periodic_block(&[2, 3]).unwrap();
        assert_eq!(classes::period(&p).unwrap(), 2);
        assert_eq!(gk::gk_index(&p).unwrap(), 2);

        assert!(periodic_block(&[3]).is_err());
        assert!(periodic_block(&[2, 0]).is_err());
    }

    #[test]
    fn block_ring_class_index_is_smallest_block() {
        for sizes in [vec![1, 2], vec![2, 2], vec![3, 1, 2], vec![2, 3, 2]] {
            let p = periodic_block(&sizes).unwrap();
            let expect = *sizes.iter().min().unwrap();
            assert_eq!(gk::gk_index(&p).unwrap(), expect, "sizes {sizes:?}");
        }
    }

    #[test]
    fn seeds_replay_and_streams_differ() {
        let a = random_pattern(6, 6, 1, 3, &mut rng_from_seed(42)).unwrap();
        let b = random_pattern(6, 6, 1, 3, &mut rng_from_seed(42)).unwrap();
        assert_eq!(a, b);
        let c = random_pattern(6, 6, 1, 3, &mut rng_from_seed(43)).unwrap();
        assert_ne!(a, c, "different seeds should differ at this size");

        assert_ne!(derive_seed(42, 0), derive_seed(42, 1));
        assert_ne!(derive_seed(42, 0), derive_seed(43, 0));
        assert_eq!(derive_seed(42, 7), derive_seed(42, 7));
    }

    #[test]
    fn density_extremes_and_validation() {
        let mut rng = rng_from_seed(1);
        assert!(random_pattern(3, 3, 1, 1, &mut rng).unwrap().is_all_ones());
        assert!(random_pattern(3, 3, 0, 2, &mut rng).is_err());
        assert!(random_pattern(3, 3, 3, 2, &mut rng).is_err());
        assert!(random_pattern(3, 3, 1, 0, &mut rng).is_err());
    }

    #[test]
    fn stochastic_generator_is_row_allowable_and_exact() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            // constructor re-checks the exact row sums
            let s = random_stochastic(5, 1, 4, &mut rng).unwrap();
            assert!(is_row_allowable(&s));
        }
    }

    #[test]
    fn random_graphs_replay() {
        let g1 = random_graph(7, 1, 2, &mut rng_from_seed(9)).unwrap();
        let g2 = random_graph(7, 1, 2, &mut rng_from_seed(9)).unwrap();
        assert_eq!(g1, g2);
        let full = random_graph(4, 1, 1, &mut rng_from_seed(0)).unwrap();
        assert_eq!(full.edge_count(), 10); // 6 pairs + 4 loops
    }

    #[test]
    fn filters_hold_on_accepted_samples() {
        let mut rng = rng_from_seed(11);
        let p = random_pattern_filtered(5, 1, 2, PatternFilter::Irreducible, 1000, &mut rng)
            .unwrap();
        assert!(classes::is_irreducible(&p).unwrap());

        let p = random_pattern_filtered(5, 1, 2, PatternFilter::Gk(2), 1000, &mut rng).unwrap();
        assert!(gk::is_gk(&p, 2).unwrap().is_member);

        let p =
            random_pattern_filtered(4, 2, 3, PatternFilter::Scrambling, 1000, &mut rng).unwrap();
        assert!(classes::is_scrambling(&p).unwrap().scrambling);

        assert!(matches!(
            random_pattern_filtered(4, 1, 2, PatternFilter::Irreducible, 0, &mut rng),
            Err(Error::Invalid(_))
        ));
    }
}
