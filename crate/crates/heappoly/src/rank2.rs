//! Rank-2 characteristic polynomials: exact determinant route, the
//! elementary-subgraph coefficient formula, walk counting, and the
//! vertex/edge quotient generating functions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::heaps::{pyramid_sum, CircuitPieces, PyramidMode};
use crate::hyper::infragraph::enumerate_infragraphs;
use crate::hypergraph::CanonicalKey;
use crate::series::{rint, Rat, SeriesError, TruncatedSeries};
use crate::trails::{closed_walks_at, cycles, eulerian_circuits};
use crate::SimpleHypergraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Rank2Error {
    #[error("operation requires a rank-2 host")]
    RankNotTwo,
    #[error("anchor {0} is not in the host")]
    AnchorMissing(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn require_rank2(g: &SimpleHypergraph) -> Result<(), Rank2Error> {
    if g.rank() == 2 {
        Ok(())
    } else {
        Err(Rank2Error::RankNotTwo)
    }
}

/// Adjacency matrix over exact integers.
pub fn adjacency_matrix(g: &SimpleHypergraph) -> Vec<Vec<BigInt>> {
    let n = g.num_vertices();
    let mut a = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges() {
        a[e[0] - 1][e[1] - 1] += 1;
        a[e[1] - 1][e[0] - 1] += 1;
    }
    a
}

/// Characteristic polynomial `det(tI - A)` by the Faddeev-LeVerrier
/// recurrence; coefficients indexed by degree (monic of degree n).
pub fn charpoly_det(g: &SimpleHypergraph) -> Result<Vec<Rat>, Rank2Error> {
    require_rank2(g)?;
    let n = g.num_vertices();
    let a: Vec<Vec<Rat>> = adjacency_matrix(g)
        .into_iter()
        .map(|row| row.into_iter().map(Rat::from_integer).collect())
        .collect();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for k in 1..=n {
        // m <- a * m
        let mut next = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if m[l][j].is_zero() {
                        continue;
                    }
                    next[i][j] += &a[i][l] * &m[l][j];
                }
            }
        }
        m = next;
        let mut tr = Rat::zero();
        for i in 0..n {
            tr += &m[i][i];
        }
        let c = -tr / rint(k as i64);
        coeffs[n - k] = c.clone();
        for i in 0..n {
            m[i][i] += &c;
        }
    }
    Ok(coeffs)
}

/// The degree-normalized series `t^-n * phi(t)` from the determinant route.
pub fn phi_tilde_det(g: &SimpleHypergraph, order: usize) -> Result<TruncatedSeries, Rank2Error> {
    let p = charpoly_det(g)?;
    Ok(crate::series::normalize_phi(&p, g.num_vertices(), order)?)
}

/// Undirected cycle subgraphs (length >= 3): each as (edge set, vertex set).
fn cycle_subgraphs(g: &SimpleHypergraph) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in cycles(g) {
        let edges = c.edge_set();
        if seen.insert(edges.clone()) {
            out.push((edges, c.vertex_set()));
        }
    }
    out
}

/// Coefficients by the elementary-subgraph formula: the codegree-d
/// coefficient sums `(-1)^c 2^z` over vertex-disjoint unions of single edges
/// and cycles with d edges in total.
pub fn charpoly_harary_sachs(g: &SimpleHypergraph) -> Result<Vec<Rat>, Rank2Error> {
    require_rank2(g)?;
    let n = g.num_vertices();
    let mut codegree = vec![Rat::zero(); n + 1];
    codegree[0] = Rat::one();

    // pieces: single edges, then cycle subgraphs
    #[derive(Clone)]
    struct Piece {
        edges: usize,
        is_cycle: bool,
        vertices: BTreeSet<usize>,
    }
    // a single edge is the flattening of a doubled edge, so it carries
    // codegree 2; a cycle of length l carries codegree l
    let mut pieces: Vec<Piece> = g
        .edges()
        .iter()
        .map(|e| Piece {
            edges: 2,
            is_cycle: false,
            vertices: e.iter().copied().collect(),
        })
        .collect();
    for (edges, vertices) in cycle_subgraphs(g) {
        pieces.push(Piece {
            edges: edges.len(),
            is_cycle: true,
            vertices,
        });
    }

    fn rec(
        pieces: &[Piece],
        from: usize,
        used: &BTreeSet<usize>,
        edges: usize,
        comps: usize,
        zs: usize,
        max_d: usize,
        codegree: &mut Vec<Rat>,
    ) {
        for i in from..pieces.len() {
            let p = &pieces[i];
            if edges + p.edges > max_d || !used.is_disjoint(&p.vertices) {
                continue;
            }
            let mut used2 = used.clone();
            used2.extend(p.vertices.iter().copied());
            let d = edges + p.edges;
            let sign = if (comps + 1) % 2 == 1 { -1 } else { 1 };
            let weight = rint(sign * (1i64 << (zs + p.is_cycle as usize)));
            codegree[d] += weight;
            rec(
                pieces,
                i + 1,
                &used2,
                d,
                comps + 1,
                zs + p.is_cycle as usize,
                max_d,
                codegree,
            );
        }
    }
    rec(&pieces, 0, &BTreeSet::new(), 0, 0, 0, n, &mut codegree);

    let mut poly = vec![Rat::zero(); n + 1];
    for d in 0..=n {
        poly[n - d] = codegree[d].clone();
    }
    Ok(poly)
}

/// Exact integer matrix powers: closed-walk counts.
fn matrix_power_diagonal(a: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for _ in 0..d {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if m[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if a[l][j].is_zero() {
                        continue;
                    }
                    next[i][j] += &m[i][l] * &a[l][j];
                }
            }
        }
        m = next;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkAnchor {
    Vertex(usize),
    Edge(usize),
    All,
}

/// Closed-walk counts `w_d` for `d = 0..=max_len`.
///
/// Vertex and whole-graph counts are computed twice, by matrix powers and
/// direct enumeration, and asserted equal. Edge-anchored counts are defined as
/// pyramid counts with maximal piece containing the edge (the raw walk count
/// double-counts the bare repeated-edge walk of length 2).
pub fn walk_counts(
    g: &SimpleHypergraph,
    anchor: WalkAnchor,
    max_len: usize,
) -> Result<Vec<BigInt>, Rank2Error> {
    require_rank2(g)?;
    let a = adjacency_matrix(g);
    match anchor {
        WalkAnchor::Vertex(u) => {
            if u == 0 || u > g.num_vertices() {
                return Err(Rank2Error::AnchorMissing(u));
            }
            let mut out = Vec::with_capacity(max_len + 1);
            for d in 0..=max_len {
                let m = matrix_power_diagonal(&a, d);
                let count = m[u - 1][u - 1].clone();
                let enumerated = closed_walks_at(g, u, d).len();
                assert_eq!(
                    count,
                    BigInt::from(enumerated),
                    "matrix power disagrees with direct enumeration"
                );
                out.push(count);
            }
            Ok(out)
        }
        WalkAnchor::All => {
            let mut out = Vec::with_capacity(max_len + 1);
            for d in 0..=max_len {
                let m = matrix_power_diagonal(&a, d);
                let mut tr = BigInt::zero();
                for i in 0..a.len() {
                    tr += &m[i][i];
                }
                let enumerated: usize = (1..=g.num_vertices())
                    .map(|u| closed_walks_at(g, u, d).len())
                    .sum();
                assert_eq!(tr, BigInt::from(enumerated));
                out.push(tr);
            }
            Ok(out)
        }
        WalkAnchor::Edge(e) => {
            if e >= g.num_edges() {
                return Err(Rank2Error::AnchorMissing(e));
            }
            let pieces = CircuitPieces::for_simple_graph(g);
            let anchored = pieces.pieces_containing_edge(e);
            let s = pyramid_sum(
                &pieces.system,
                PyramidMode::MaxInAnchor,
                &|p| anchored.contains(&p),
                max_len,
            );
            Ok((0..=max_len)
                .map(|d| s.coeff(d).to_integer())
                .collect())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deleted {
    Vertex(usize),
    Edge(usize),
}

/// The quotient `phi~_{G-x} / phi~_G` to the requested order. Vertex
/// deletion removes the vertex with its edges; edge deletion keeps the
/// vertex set.
pub fn jacobi_quotient(
    g: &SimpleHypergraph,
    deleted: Deleted,
    order: usize,
) -> Result<TruncatedSeries, Rank2Error> {
    require_rank2(g)?;
    let minor = match deleted {
        Deleted::Vertex(u) => {
            if u == 0 || u > g.num_vertices() {
                return Err(Rank2Error::AnchorMissing(u));
            }
            g.delete_vertex(u)
        }
        Deleted::Edge(e) => {
            if e >= g.num_edges() {
                return Err(Rank2Error::AnchorMissing(e));
            }
            g.delete_edge(e)
        }
    };
    let num = phi_tilde_det(&minor, order)?;
    let den = phi_tilde_det(g, order)?;
    Ok(num.div_series(&den)?)
}

/// Both sides of the log identity, plus the intermediate sum over connected
/// rank-2 infragraphs `sum t^-|E| * |C(X)| / M_X`.
pub struct LogWalkIdentity {
    pub neg_log_phi: TruncatedSeries,
    pub walk_side: TruncatedSeries,
    pub infragraph_side: TruncatedSeries,
}

pub fn log_walk_identity(g: &SimpleHypergraph, order: usize) -> Result<LogWalkIdentity, Rank2Error> {
    require_rank2(g)?;
    let phi = phi_tilde_det(g, order)?;
    let neg_log_phi = -&phi.log()?;

    let a = adjacency_matrix(g);
    let mut walk_side = TruncatedSeries::zero(order);
    for d in 1..=order {
        let m = matrix_power_diagonal(&a, d);
        let mut tr = BigInt::zero();
        for i in 0..a.len() {
            tr += &m[i][i];
        }
        walk_side.add_assign_term(d, &(Rat::from_integer(tr) / rint(d as i64)));
    }

    let mut infragraph_side = TruncatedSeries::zero(order);
    for x in enumerate_infragraphs(g, order, true) {
        let multi = x.realize(g);
        let circuits = eulerian_circuits(&multi).map_err(|_| Rank2Error::RankNotTwo)?;
        let (_, _, m_x) = multi.flatten();
        let term = Rat::new(BigInt::from(circuits.len()), m_x);
        infragraph_side.add_assign_term(x.total_edges(), &term);
    }
    Ok(LogWalkIdentity {
        neg_log_phi,
        walk_side,
        infragraph_side,
    })
}

/// All simple graphs on exactly `n` labeled vertices, one per isomorphism
/// class (canonical-key deduplication over all edge subsets).
pub fn simple_graphs_up_to_iso(n: usize) -> Vec<SimpleHypergraph> {
    let all_pairs: Vec<Vec<usize>> = {
        let mut ps = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                ps.push(vec![a, b]);
            }
        }
        ps
    };
    let m = all_pairs.len();
    assert!(m <= 20, "catalog generation is for small n");
    let mut seen: BTreeSet<CanonicalKey> = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u32..(1 << m) {
        let edges: Vec<Vec<usize>> = (0..m)
            .filter(|&i| bits >> i & 1 == 1)
            .map(|i| all_pairs[i].clone())
            .collect();
        let g = SimpleHypergraph::new(2, n, edges).unwrap();
        if seen.insert(g.to_multi().iso_key()) {
            out.push(g);
        }
    }
    out
}
