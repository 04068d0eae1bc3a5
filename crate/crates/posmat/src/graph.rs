//! Undirected graphs with optional loops, their adjacency patterns, and
//! vertex connectivity.
//!
//! Connectivity comes in two independent flavors: a brute-force
//! minimum-cut engine (subsets enumerated by size) and the class-k test
//! on the adjacency pattern.  [`equivalence_audit`] evaluates both plus
//! two direct subset conditions and insists all four agree.

use crate::gk;
use crate::matrix::{IndexSet, PatternMatrix};
use crate::{Error, Result};

/// Vertex ceiling; adjacency rows are machine words.
pub const VERTEX_CEILING: usize = 63;

/// Default cap for the minimum-cut subset enumeration.
pub const DEFAULT_CUT_CAP: usize = 16;

/// An undirected graph on `{1,..,n}`.  Loops are allowed, multi-edges
/// are not (parallel edges collapse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>, // symmetric; bit v of adj[u] set iff [u+1, v+1] is an edge
}

impl Graph {
    /// Builds from 1-based endpoint pairs; `(v, v)` is a loop.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::edgeless(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("a graph needs at least one vertex".into()));
        }
        if n > VERTEX_CEILING {
            return Err(Error::CapExceeded {
                what: "graph vertex count",
                n,
                cap: VERTEX_CEILING,
            });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(Error::IndexOutOfRange {
                    index: w,
                    universe: self.n,
                });
            }
        }
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    /// Unordered edges as 1-based pairs with `u <= v`, sorted.
    pub fn edges_one_based(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    edges.push((u + 1, v + 1));
                }
            }
        }
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges_one_based().len()
    }

    /// The symmetric 0/1 pattern; a loop puts a 1 on the diagonal.
    pub fn adjacency_matrix(&self) -> PatternMatrix {
        PatternMatrix::from_fn(self.n, self.n, |i, j| self.adj[i] >> j & 1 == 1)
            .expect("graph has at least one vertex")
    }

    /// The same graph without its loops.
    pub fn strip_loops(&self) -> Graph {
        let adj = (0..self.n).map(|u| self.adj[u] & !(1 << u)).collect();
        Graph { n: self.n, adj }
    }

    /// Whether every vertex can reach every other (loops irrelevant;
    /// single-vertex graphs are connected).
    pub fn is_connected(&self) -> bool {
        let all = low_mask(self.n);
        reaches_all(&self.simple_masks(), all)
    }

    fn simple_masks(&self) -> Vec<u64> {
        (0..self.n).map(|u| self.adj[u] & !(1 << u)).collect()
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::edgeless(n)?;
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// The cycle `1-2-..-n-1`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Invalid("a cycle needs at least three vertices".into()));
        }
        let mut g = Graph::edgeless(n)?;
        for u in 1..n {
            g.add_edge(u, u + 1)?;
        }
        g.add_edge(n, 1)?;
        Ok(g)
    }

    /// The path `1-2-..-n`.
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::edgeless(n)?;
        for u in 1..n {
            g.add_edge(u, u + 1)?;
        }
        Ok(g)
    }

    /// Outer 5-cycle 1..5, inner pentagram 6..10, spokes i to i+5.
    pub fn petersen() -> Graph {
        let mut g = Graph::edgeless(10).expect("10 <= ceiling");
        for i in 0..5usize {
            g.add_edge(i + 1, (i + 1) % 5 + 1).expect("in range");
            g.add_edge(i + 6, (i + 2) % 5 + 6).expect("in range");
            g.add_edge(i + 1, i + 6).expect("in range");
        }
        g
    }
}

fn low_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Bitmask BFS: do the `survivors` induce a connected subgraph?
/// (Vacuously true for at most one survivor.)
fn reaches_all(simple: &[u64], survivors: u64) -> bool {
    if survivors == 0 {
        return true;
    }
    let start = survivors.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= simple[v] & survivors;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == survivors
}

#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub kappa: usize,
    /// A minimum vertex cut; `None` exactly when the loop-stripped graph
    /// is complete (then no cut exists and kappa is `n - 1` by
    /// convention).  The empty set when already disconnected.
    pub min_cut: Option<IndexSet>,
    pub complete_after_loop_removal: bool,
}

pub fn kappa(g: &Graph) -> Result<usize> {
    Ok(connectivity_bruteforce(g)?.kappa)
}

pub fn connectivity_bruteforce(g: &Graph) -> Result<ConnectivityReport> {
    connectivity_bruteforce_capped(g, DEFAULT_CUT_CAP)
}

/// Minimum vertex cut by exhaustion: subsets in increasing size (and
/// increasing mask value within a size), first disconnecting subset
/// wins.  Complete graphs (loops ignored) short-circuit to `n - 1`.
pub fn connectivity_bruteforce_capped(g: &Graph, cap: usize) -> Result<ConnectivityReport> {
    let n = g.n();
    let simple = g.simple_masks();
    let all = low_mask(n);
    let complete = (0..n).all(|u| simple[u] == all & !(1 << u));
    if complete {
        return Ok(ConnectivityReport {
            kappa: n - 1,
            min_cut: None,
            complete_after_loop_removal: true,
        });
    }
    let cap = cap.min(VERTEX_CEILING);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "vertex-cut enumeration",
            n,
            cap,
        });
    }
    // not complete, so n >= 2 and deleting all but two non-adjacent
    // vertices disconnects: some size below n - 1 must hit
    for size in 0..n - 1 {
        let mut cut = low_mask(size);
        loop {
            if !reaches_all(&simple, all & !cut) {
                let members = (0..n).filter(|v| cut >> v & 1 == 1);
                return Ok(ConnectivityReport {
                    kappa: size,
                    min_cut: Some(IndexSet::from_zero_based(n, members)?),
                    complete_after_loop_removal: false,
                });
            }
            if size == 0 {
                break;
            }
            cut = next_same_popcount(cut);
            if cut > all {
                break;
            }
        }
    }
    unreachable!("non-complete graph must have a vertex cut")
}

/// Gosper's hack: next larger integer with the same number of set bits.
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    ((r ^ x) >> (2 + c.trailing_zeros())) | r
}

/// `D_Y`: the vertices outside `y` adjacent to something in `y`.
/// `y` must be a nonempty proper subset of the vertices.
pub fn vertex_deficiency(g: &Graph, y: &IndexSet) -> Result<IndexSet> {
    let n = g.n();
    if y.universe() != n {
        return Err(Error::UniverseMismatch(y.universe(), n));
    }
    y.require_nonempty()?;
    if y.is_full() {
        return Err(Error::Invalid(
            "vertex deficiency needs a proper subset".into(),
        ));
    }
    let ymask = y.mask().expect("universe fits the vertex ceiling");
    let members = (0..n).filter(|&v| ymask >> v & 1 == 0 && g.adj[v] & ymask != 0);
    IndexSet::from_zero_based(n, members)
}

/// `kappa(G) >= k`, decided through the adjacency pattern's class-k
/// membership.  Needs `n >= 2` and `k` in `1..=n-1`.
pub fn is_k_connected_via_gk(g: &Graph, k: usize) -> Result<bool> {
    let n = g.n();
    if n < 2 || k == 0 || k > n - 1 {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(gk::is_gk(&g.adjacency_matrix(), k)?.is_member)
}

/// Four independently computed answers to "is the graph k-connected".
#[derive(Clone, Debug)]
pub struct EquivalenceAudit {
    pub n: usize,
    pub k: usize,
    /// Route (i): brute-force minimum cut.
    pub cut_route: bool,
    /// Route (ii): class-k membership of the adjacency pattern.
    pub class_route: bool,
    /// Route (iii): every nonempty proper vertex set has a large enough
    /// fully-adjacent witness set outside it.
    pub witness_route: bool,
    /// Route (iv): every nonempty proper vertex set has a large enough
    /// deficiency set.
    pub deficiency_route: bool,
}

impl EquivalenceAudit {
    pub fn verdict(&self) -> bool {
        self.cut_route
    }

    pub fn agreed(&self) -> bool {
        self.cut_route == self.class_route
            && self.class_route == self.witness_route
            && self.witness_route == self.deficiency_route
    }
}

/// Runs all four k-connectivity routes and asserts they agree (a
/// disagreement would be a bug in one of the engines, so it panics
/// rather than returning).  Needs `n >= 2`, `k` in `1..=n-1`.
pub fn equivalence_audit(g: &Graph, k: usize) -> Result<EquivalenceAudit> {
    equivalence_audit_capped(g, k, DEFAULT_CUT_CAP)
}

pub fn equivalence_audit_capped(g: &Graph, k: usize, cap: usize) -> Result<EquivalenceAudit> {
    let n = g.n();
    if n < 2 || k == 0 || k > n - 1 {
        return Err(Error::KOutOfRange { k, n });
    }
    let cut_route = connectivity_bruteforce_capped(g, cap)?.kappa >= k;
    let class_route = gk::is_gk_capped(&g.adjacency_matrix(), k, cap.max(n))?.is_member;

    let all = low_mask(n);
    let mut witness_route = true;
    'outer: for ymask in 1..all {
        // need X inside the complement, |X| = min(k, |Y^c|), every
        // member adjacent to Y; supersets only help, so exact size wins
        let comp = all & !ymask;
        let r = k.min(comp.count_ones() as usize);
        let mut x = comp;
        let mut found = false;
        loop {
            if x.count_ones() as usize == r {
                let mut ok = true;
                let mut probe = x;
                while probe != 0 {
                    let v = probe.trailing_zeros() as usize;
                    probe &= probe - 1;
                    if g.adj[v] & ymask == 0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    found = true;
                    break;
                }
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & comp;
        }
        if !found {
            witness_route = false;
            break 'outer;
        }
    }

    let mut deficiency_route = true;
    for ymask in 1..all {
        let comp = all & !ymask;
        let mut d = 0u64;
        let mut probe = ymask;
        while probe != 0 {
            let w = probe.trailing_zeros() as usize;
            probe &= probe - 1;
            d |= g.adj[w];
        }
        d &= comp;
        if (d.count_ones() as usize) < k.min(comp.count_ones() as usize) {
            deficiency_route = false;
            break;
        }
    }

    let audit = EquivalenceAudit {
        n,
        k,
        cut_route,
        class_route,
        witness_route,
        deficiency_route,
    };
    assert!(
        audit.agreed(),
        "k-connectivity routes disagree (cut {}, class {}, witness {}, deficiency {}) \
         on k = {k}, edges {:?}; this is a library bug",
        audit.cut_route,
        audit.class_route,
        audit.witness_route,
        audit.deficiency_route,
        g.edges_one_based()
    );
    Ok(audit)
}
