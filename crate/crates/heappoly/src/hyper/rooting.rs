//! Eulerian rootings of Veblen multi-hypergraphs and the associated
//! coefficient.
//!
//! A rooting assigns a root vertex to every edge copy; since parallel copies
//! produce identical stars, a rooting class is exactly a matrix of star
//! counts per (vertex, parallel class). The induced digraph takes each
//! star's k-1 arcs out of the root. For Veblen input every such matrix is
//! automatically balanced, and connected input makes it Eulerian.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::hypergraph::{factorial, MultiHypergraph};
use crate::series::Rat;
use crate::trails::best_count;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HyperError {
    #[error("input is not Veblen (vertex {0} has degree {1}, rank {2})")]
    NotVeblen(usize, usize, usize),
    #[error("input must be connected")]
    Disconnected,
    #[error("supports must intersect in exactly the glue vertex")]
    BadGlue,
    #[error("degree at the glue vertex must equal the rank")]
    GlueDegree,
    #[error("codegree {0} exceeds the feasibility bound {1}")]
    Infeasible(usize, usize),
}

/// One equivalence class of Eulerian rootings.
#[derive(Clone, Debug)]
pub struct RootingClass {
    /// Support vertices, ascending.
    pub vertices: Vec<usize>,
    /// Parallel classes: (edge vertex set, multiplicity).
    pub classes: Vec<(Vec<usize>, usize)>,
    /// `star_counts[vi][ci]` = stars of class `ci` rooted at `vertices[vi]`.
    pub star_counts: Vec<Vec<usize>>,
    /// Number of raw rootings in the class.
    pub size: BigInt,
    /// The induced digraph `D_R`.
    pub digraph: Digraph,
}

fn require_veblen(x: &MultiHypergraph) -> Result<(), HyperError> {
    for v in 1..=x.num_vertices() {
        let d = x.degree(v);
        if d % x.rank() != 0 {
            return Err(HyperError::NotVeblen(v, d, x.rank()));
        }
    }
    Ok(())
}

/// Enumerates all Eulerian rooting classes of a connected Veblen
/// multi-hypergraph, with class sizes and induced digraphs.
pub fn eulerian_rootings(x: &MultiHypergraph) -> Result<Vec<RootingClass>, HyperError> {
    require_veblen(x)?;
    if !x.is_connected() {
        return Err(HyperError::Disconnected);
    }
    let k = x.rank();
    let vertices = x.support();
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    let vidx: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let classes: Vec<(Vec<usize>, usize)> = x.multiplicity_map().into_iter().collect();
    // every support vertex must root at least one star
    let quota: Vec<usize> = vertices.iter().map(|&v| x.degree(v) / k).collect();
    assert!(
        quota.iter().all(|&q| q >= 1),
        "support vertices of a Veblen hypergraph root at least one star"
    );

    let mut out = Vec::new();
    let mut counts = vec![vec![0usize; classes.len()]; vertices.len()];
    let mut left = quota.clone();
    fn rec(
        x: &MultiHypergraph,
        classes: &[(Vec<usize>, usize)],
        vidx: &BTreeMap<usize, usize>,
        vertices: &[usize],
        ci: usize,
        counts: &mut Vec<Vec<usize>>,
        left: &mut Vec<usize>,
        out: &mut Vec<RootingClass>,
    ) {
        if ci == classes.len() {
            if left.iter().any(|&l| l != 0) {
                return;
            }
            out.push(build_class(x, classes, vertices, counts));
            return;
        }
        let (edge, m) = &classes[ci];
        // distribute m roots over the vertices of this class
        fn distribute(
            x: &MultiHypergraph,
            classes: &[(Vec<usize>, usize)],
            vidx: &BTreeMap<usize, usize>,
            vertices: &[usize],
            ci: usize,
            edge: &[usize],
            pos: usize,
            remaining: usize,
            counts: &mut Vec<Vec<usize>>,
            left: &mut Vec<usize>,
            out: &mut Vec<RootingClass>,
        ) {
            if pos == edge.len() {
                if remaining == 0 {
                    rec(x, classes, vidx, vertices, ci + 1, counts, left, out);
                }
                return;
            }
            let vi = vidx[&edge[pos]];
            let max = remaining.min(left[vi]);
            for c in 0..=max {
                counts[vi][ci] = c;
                left[vi] -= c;
                distribute(
                    x, classes, vidx, vertices, ci, edge, pos + 1, remaining - c, counts, left, out,
                );
                left[vi] += c;
                counts[vi][ci] = 0;
            }
        }
        distribute(
            x, classes, vidx, vertices, ci, edge, 0, *m, counts, left, out,
        );
    }
    rec(
        x,
        &classes,
        &vidx,
        &vertices,
        0,
        &mut counts,
        &mut left,
        &mut out,
    );
    Ok(out)
}

fn build_class(
    x: &MultiHypergraph,
    classes: &[(Vec<usize>, usize)],
    vertices: &[usize],
    counts: &[Vec<usize>],
) -> RootingClass {
    let k = x.rank();
    let mut size = BigInt::one();
    for (vi, &v) in vertices.iter().enumerate() {
        let quota = x.degree(v) / k;
        let mut denom = BigInt::one();
        for ci in 0..classes.len() {
            denom *= factorial(counts[vi][ci]);
        }
        size *= factorial(quota) / denom;
    }
    let mut arcs = Vec::new();
    for (vi, &v) in vertices.iter().enumerate() {
        for (ci, (edge, _)) in classes.iter().enumerate() {
            for _ in 0..counts[vi][ci] {
                for &w in edge.iter().filter(|&&w| w != v) {
                    arcs.push((v, w));
                }
            }
        }
    }
    let digraph = Digraph::new(x.num_vertices(), arcs);
    debug_assert!(digraph.is_eulerian());
    RootingClass {
        vertices: vertices.to_vec(),
        classes: classes.to_vec(),
        star_counts: counts.to_vec(),
        size,
        digraph,
    }
}

/// Eulerian circuit count of a rooted digraph; enumerated (and cross-checked
/// against the arborescence formula inside `best_count`) at verification
/// scale, by the formula alone above it.
fn circuit_count(d: &Digraph) -> BigInt {
    if d.num_arcs() <= 10 {
        best_count(d).expect("rooted digraph of a connected Veblen hypergraph is Eulerian")
    } else {
        let tau = d.arborescence_count();
        let mut f = BigInt::one();
        for v in d.support() {
            for i in 2..d.in_degree(v) {
                f *= i;
            }
        }
        tau * f
    }
}

/// Associated coefficient of a Veblen multi-hypergraph, multiplicative over
/// components. Computed by two routes (arborescences over raw rootings and
/// circuit counts over rooting classes) with the results asserted equal.
pub fn associated_coefficient(x: &MultiHypergraph) -> Result<Rat, HyperError> {
    require_veblen(x)?;
    let comps = x.components();
    if comps.is_empty() {
        return Ok(Rat::one());
    }
    let mut total = Rat::one();
    for comp in comps {
        let edges: Vec<Vec<usize>> = x
            .edges()
            .iter()
            .filter(|e| comp.contains(&e[0]))
            .cloned()
            .collect();
        let sub = MultiHypergraph::new(x.rank(), x.num_vertices(), edges)
            .expect("component edges are well-formed");
        total *= connected_associated_coefficient(&sub)?;
    }
    Ok(total)
}

fn connected_associated_coefficient(x: &MultiHypergraph) -> Result<Rat, HyperError> {
    let mut by_arborescence = Rat::zero();
    let mut by_circuits = Rat::zero();
    for class in eulerian_rootings(x)? {
        let d = &class.digraph;
        let tau = d.arborescence_count();
        let mut deg_product = BigInt::one();
        let mut deg_factorial_product = BigInt::one();
        for &v in &class.vertices {
            let din = d.in_degree(v);
            deg_product *= BigInt::from(din);
            deg_factorial_product *= factorial(din);
        }
        by_arborescence += Rat::new(&class.size * tau, deg_product);
        by_circuits += Rat::new(&class.size * circuit_count(d), deg_factorial_product);
    }
    assert_eq!(
        by_arborescence, by_circuits,
        "the two associated-coefficient formulas disagree"
    );
    Ok(by_arborescence)
}
