//! The built-in regression corpus: small matrices and graphs with known
//! properties, each carrying a manifest of claims that the test suite
//! re-verifies against the library.
//!
//! Pattern-only displays are materialized with every positive entry set
//! to 1; all claims about them are pattern-level, so the magnitudes are
//! immaterial (and that invariance is itself tested).

use num::Zero;

use crate::classes::{self, PowerLimitOutcome};
use crate::gk;
use crate::gplus::{self, ChainWitness};
use crate::graph::{self, Graph};
use crate::matrix::{
    bool_power, is_column_allowable, is_row_allowable, IndexSet, NonnegMatrix, PatternMatrix,
    StochasticMatrix, Support,
};
use crate::{generate, Error, Rational, Result};

/// What a fixture holds.
#[derive(Clone, Debug)]
pub enum Payload {
    Matrix(NonnegMatrix),
    Stochastic(StochasticMatrix),
    Graph(Graph),
}

/// One corpus entry.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: &'static str,
    /// What the entry demonstrates.
    pub notes: &'static str,
    pub payload: Payload,
}

/// One verified manifest claim.
#[derive(Clone, Debug)]
pub struct Check {
    pub claim: &'static str,
    pub holds: bool,
}

fn ones(rows: &[Vec<u8>]) -> NonnegMatrix {
    NonnegMatrix::from_integer_rows(
        &rows
            .iter()
            .map(|r| r.iter().map(|&b| i64::from(b)).collect())
            .collect::<Vec<Vec<i64>>>(),
    )
    .expect("static fixture data is valid")
}

fn from_pattern(p: &PatternMatrix) -> NonnegMatrix {
    ones(
        &(0..p.rows())
            .map(|i| (0..p.cols()).map(|j| u8::from(p.get(i, j))).collect())
            .collect::<Vec<Vec<u8>>>(),
    )
}

/// First factor of the two-step product example: sum-positive on all
/// rows against the first three columns.
pub fn p1() -> NonnegMatrix {
    NonnegMatrix::from_integer_rows(&[
        vec![1, 0, 0, 0],
        vec![0, 2, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 3],
    ])
    .expect("static fixture data is valid")
}

/// Second factor: rows 1..3 all hit column 3, so the product with
/// [`p1`] has a positive third column.
pub fn p2() -> NonnegMatrix {
    NonnegMatrix::from_integer_rows(&[
        vec![0, 0, 1, 0],
        vec![1, 0, 1, 0],
        vec![0, 0, 2, 0],
        vec![4, 0, 0, 0],
    ])
    .expect("static fixture data is valid")
}

/// Reducible although every row and every column has an off-diagonal
/// positive entry.
pub fn remark_3_8() -> NonnegMatrix {
    ones(&[
        vec![1, 1, 0, 0],
        vec![1, 1, 0, 0],
        vec![1, 0, 0, 1],
        vec![0, 0, 1, 0],
    ])
}

/// Row-allowable yet in no class: all mass in the first column.
pub fn remark_3_11() -> NonnegMatrix {
    ones(&[
        vec![1, 0, 0, 0],
        vec![1, 0, 0, 0],
        vec![1, 0, 0, 0],
        vec![1, 0, 0, 0],
    ])
}

/// Two off-diagonal positives in every column, yet not in class 2:
/// the column count is necessary but not sufficient.
pub fn remark_3_13() -> NonnegMatrix {
    ones(&[
        vec![0, 1, 1, 0, 0, 1],
        vec![1, 0, 1, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 1, 1],
        vec![0, 0, 0, 1, 0, 1],
        vec![0, 0, 0, 1, 1, 0],
    ])
}

/// `(I+P)^2` positive without class-2 membership: the power test is
/// necessary but not sufficient.
pub fn remark_4_4a() -> NonnegMatrix {
    ones(&[
        vec![1, 1, 1, 1],
        vec![1, 1, 0, 0],
        vec![0, 0, 1, 1],
        vec![1, 1, 1, 1],
    ])
}

/// The 9x9 three-block ring with an added diagonal: class 3, least
/// positive power exactly 3.
pub fn example_4_11() -> NonnegMatrix {
    let ring = generate::periodic_block(&[3, 3, 3]).expect("valid sizes");
    from_pattern(&ring.with_identity().expect("square"))
}

/// All off-diagonal entries positive, zero diagonal, at n = 3:
/// primitive with cycles of lengths 2 and 3.
pub fn zero_diagonal_3() -> NonnegMatrix {
    ones(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])
}

/// Primitive stochastic matrix with a zero diagonal entry and a
/// positive column; its powers converge to rank one.
pub fn stochastic_a() -> StochasticMatrix {
    let half = Rational::new(1.into(), 2.into());
    StochasticMatrix::new(
        NonnegMatrix::from_rows(vec![
            vec![Rational::zero(), Rational::from_integer(1.into())],
            vec![half.clone(), half],
        ])
        .expect("static fixture data is valid"),
    )
    .expect("rows sum to one")
}

/// Reducible stochastic matrix with an all-positive diagonal and a
/// positive column.
pub fn stochastic_b() -> StochasticMatrix {
    let half = Rational::new(1.into(), 2.into());
    StochasticMatrix::new(
        NonnegMatrix::from_rows(vec![
            vec![Rational::from_integer(1.into()), Rational::zero()],
            vec![half.clone(), half],
        ])
        .expect("static fixture data is valid"),
    )
    .expect("rows sum to one")
}

/// The 3-regular 10-vertex graph with connectivity exactly 3.
pub fn petersen_graph() -> Graph {
    Graph::petersen()
}

/// The 5-cycle: connectivity exactly 2.
pub fn cycle_5() -> Graph {
    Graph::cycle(5).expect("valid size")
}

/// The whole corpus, in a fixed order.
pub fn corpus() -> Vec<Fixture> {
    vec![
        Fixture {
            id: "p1",
            notes: "first factor of the two-step product example; every row hits \
                    the first three columns",
            payload: Payload::Matrix(p1()),
        },
        Fixture {
            id: "p2",
            notes: "second factor of the two-step product example; rows 1..3 all \
                    hit column 3",
            payload: Payload::Matrix(p2()),
        },
        Fixture {
            id: "remark-3-8",
            notes: "reducible although every row and column has an off-diagonal positive",
            payload: Payload::Matrix(remark_3_8()),
        },
        Fixture {
            id: "remark-3-11",
            notes: "row-allowable and reducible, hence in no class",
            payload: Payload::Matrix(remark_3_11()),
        },
        Fixture {
            id: "remark-3-13",
            notes: "two off-diagonal positives per column but not in class 2",
            payload: Payload::Matrix(remark_3_13()),
        },
        Fixture {
            id: "remark-4-4a",
            notes: "(I+P)^2 positive without class-2 membership",
            payload: Payload::Matrix(remark_4_4a()),
        },
        Fixture {
            id: "example-4-11",
            notes: "9x9 three-block ring plus diagonal: class 3, least positive power 3",
            payload: Payload::Matrix(example_4_11()),
        },
        Fixture {
            id: "zero-diagonal-3",
            notes: "3x3 zero-diagonal all-off-diagonal-positive: primitive via \
                    coexisting 2- and 3-cycles",
            payload: Payload::Matrix(zero_diagonal_3()),
        },
        Fixture {
            id: "stochastic-a",
            notes: "primitive stochastic with a zero diagonal entry; powers \
                    converge to rank one",
            payload: Payload::Stochastic(stochastic_a()),
        },
        Fixture {
            id: "stochastic-b",
            notes: "reducible stochastic with positive diagonal and a positive column",
            payload: Payload::Stochastic(stochastic_b()),
        },
        Fixture {
            id: "petersen",
            notes: "3-regular 10-vertex graph with connectivity exactly 3",
            payload: Payload::Graph(petersen_graph()),
        },
        Fixture {
            id: "cycle-5",
            notes: "5-cycle, connectivity exactly 2",
            payload: Payload::Graph(cycle_5()),
        },
    ]
}

pub fn ids() -> Vec<&'static str> {
    corpus().iter().map(|f| f.id).collect()
}

pub fn by_id(id: &str) -> Result<Fixture> {
    corpus()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| {
            Error::Invalid(format!(
                "unknown fixture {id:?}; available: {}",
                ids().join(", ")
            ))
        })
}

fn set(universe: usize, members: &[usize]) -> IndexSet {
    IndexSet::new(universe, members.to_vec()).expect("static index data is valid")
}

/// Re-verifies the manifest of one fixture, claim by claim.
/// The test suite asserts every returned check holds.
pub fn verify_fixture(id: &str) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut push = |claim: &'static str, holds: bool| checks.push(Check { claim, holds });
    match id {
        "p1" => {
            let m = p1();
            push(
                "sum-positive on all rows x first three columns",
                gplus::sum_positive_on(&m, &IndexSet::full(4)?, &set(4, &[1, 2, 3]))?,
            );
            push("row-allowable", is_row_allowable(&m));
            push(
                "chain through the partner certifies a positive third product column",
                gplus::verify_chain(
                    &[p1(), p2()],
                    &ChainWitness::new(vec![
                        IndexSet::full(4)?,
                        set(4, &[1, 2, 3]),
                        set(4, &[3]),
                    ]),
                )?,
            );
            let product = p1().matmul(&p2())?;
            push(
                "third column of the numeric product is positive",
                (0..4).all(|i| product.get(i, 2) > &Rational::zero()),
            );
        }
        "p2" => {
            let m = p2();
            push(
                "rows 1..3 are sum-positive against column 3",
                gplus::sum_positive_on(&m, &set(4, &[1, 2, 3]), &set(4, &[3]))?,
            );
            push("not row-allowable (row 4 misses columns 2..4)", {
                !is_row_allowable(&m.submatrix(&IndexSet::full(4)?, &set(4, &[2, 3, 4]))?)
            });
        }
        "remark-3-8" => {
            let m = remark_3_8();
            push(
                "every row has an off-diagonal positive",
                (0..4).all(|i| (0..4).any(|j| j != i && m.get(i, j) > &Rational::zero())),
            );
            push(
                "every column has an off-diagonal positive",
                (0..4).all(|j| (0..4).any(|i| i != j && m.get(i, j) > &Rational::zero())),
            );
            push("reducible nevertheless", !classes::is_irreducible(&m)?);
            push("in no class", gk::gk_index(&m)? == 0);
        }
        "remark-3-11" => {
            let m = remark_3_11();
            push("row-allowable", is_row_allowable(&m));
            push("not column-allowable", !is_column_allowable(&m));
            push("reducible", !classes::is_irreducible(&m)?);
            push("in no class", gk::gk_index(&m)? == 0);
            push("has a positive column", classes::is_markov(&m));
        }
        "remark-3-13" => {
            let m = remark_3_13();
            push(
                "at least two off-diagonal positives in every column",
                (0..6).all(|j| {
                    (0..6)
                        .filter(|&i| i != j && m.get(i, j) > &Rational::zero())
                        .count()
                        >= 2
                }),
            );
            push("not in class 2", !gk::is_gk(&m, 2)?.is_member);
            push(
                "rows 4..6 give deficiency 1 for the first three indices",
                gk::deficiency_set(&m, &set(6, &[1, 2, 3]))?.len() == 1,
            );
            push("irreducible, hence in class 1", gk::gk_index(&m)? == 1);
        }
        "remark-4-4a" => {
            let m = remark_4_4a();
            let aug = m.indicator().with_identity()?;
            push("(I+P)^2 is all positive", bool_power(&aug, 2)?.is_all_ones());
            push("not in class 2", !gk::is_gk(&m, 2)?.is_member);
            push(
                "deficiency of the last two indices is exactly the first row",
                gk::deficiency_set(&m, &set(4, &[3, 4]))?.one_based() == vec![1],
            );
            push("irreducible, hence in class 1", gk::gk_index(&m)? == 1);
        }
        "example-4-11" => {
            let m = example_4_11();
            push("9x9", m.rows() == 9 && m.cols() == 9);
            push("in class 3 and no higher", gk::gk_index(&m)? == 3);
            push("primitive", classes::is_primitive(&m)?);
            push("least positive power is 3", classes::gamma(&m)? == 3);
            push(
                "square is not yet positive",
                !bool_power(&m.indicator(), 2)?.is_all_ones(),
            );
            push(
                "the n-1 power bound from the full diagonal holds",
                bool_power(&m.indicator(), 8)?.is_all_ones(),
            );
        }
        "zero-diagonal-3" => {
            let m = zero_diagonal_3();
            push("primitive", classes::is_primitive(&m)?);
            push("period 1 via coexisting 2- and 3-cycles", classes::period(&m)? == 1);
            push("shortest cycle has length 2", classes::girth(&m)? == Some(2));
            push("least positive power is 2", classes::gamma(&m)? == 2);
            push("in class 2 and no higher", gk::gk_index(&m)? == 2);
            push(
                "fully indecomposable",
                classes::is_fully_indecomposable(&m)?,
            );
        }
        "stochastic-a" => {
            let m = stochastic_a();
            let half = Rational::new(1.into(), 2.into());
            push("has a positive column", classes::is_markov(m.as_matrix()));
            push("primitive", classes::is_primitive(m.as_matrix())?);
            push("a diagonal entry is zero", m.get(0, 0) == &Rational::zero());
            push("column coefficient is exactly 1/2", classes::mu(&m)? == half);
            push("pair coefficient is exactly 1/2", classes::alpha(&m)? == half);
            push("least positive power is 2", classes::gamma(m.as_matrix())? == 2);
            let third = Rational::new(1.into(), 3.into());
            let expect = [
                [third.clone(), Rational::new(2.into(), 3.into())],
                [third, Rational::new(2.into(), 3.into())],
            ];
            let tol = Rational::new(1.into(), 1_000_000_000.into());
            push(
                "powers converge to the rank-one limit with thirds",
                match classes::power_limit(&m, &tol, 200)? {
                    PowerLimitOutcome::Converged { matrix, .. } => (0..2).all(|i| {
                        (0..2).all(|j| {
                            let diff = matrix.get(i, j) - &expect[i][j];
                            let abs = if diff < Rational::zero() { -diff } else { diff };
                            abs <= tol
                        })
                    }),
                    PowerLimitOutcome::MaxIterExceeded { .. } => false,
                },
            );
        }
        "stochastic-b" => {
            let m = stochastic_b();
            push("has a positive column", classes::is_markov(m.as_matrix()));
            push("reducible", !classes::is_irreducible(m.as_matrix())?);
            push(
                "all diagonal entries positive",
                (0..2).all(|i| m.get(i, i) > &Rational::zero()),
            );
            push("scrambling", classes::is_scrambling(m.as_matrix())?.scrambling);
            let tol = Rational::new(1.into(), 1_000_000_000.into());
            push(
                "powers converge with the first column going to all ones",
                match classes::power_limit(&m, &tol, 200)? {
                    PowerLimitOutcome::Converged { matrix, .. } => (0..2).all(|i| {
                        let diff = Rational::from_integer(1.into()) - matrix.get(i, 0);
                        diff <= tol && matrix.get(i, 1) <= &tol
                    }),
                    PowerLimitOutcome::MaxIterExceeded { .. } => false,
                },
            );
        }
        "petersen" => {
            let g = petersen_graph();
            let report = graph::connectivity_bruteforce(&g)?;
            push("connectivity 3 by cut search", report.kappa == 3);
            push(
                "connectivity 3 by the class route",
                graph::is_k_connected_via_gk(&g, 3)? && !graph::is_k_connected_via_gk(&g, 4)?,
            );
            push("all four routes agree at k = 3", {
                let audit = graph::equivalence_audit(&g, 3)?;
                audit.agreed() && audit.verdict()
            });
        }
        "cycle-5" => {
            let g = cycle_5();
            push("connectivity 2", graph::kappa(&g)? == 2);
            push("2-connected", graph::is_k_connected_via_gk(&g, 2)?);
            push("not 3-connected", !graph::is_k_connected_via_gk(&g, 3)?);
        }
        other => {
            return Err(Error::Invalid(format!(
                "unknown fixture {other:?}; available: {}",
                ids().join(", ")
            )))
        }
    }
    Ok(checks)
}
