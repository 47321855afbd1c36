//! Decompositions of a Veblen infragraph into connected Veblen parts, up to
//! permutations of parallel edges, and the delta weight kernel built on them.

use num_bigint::BigInt;
use num_traits::One;

use crate::hypergraph::{factorial, CanonicalKey};
use crate::series::Rat;
use crate::SimpleHypergraph;

use super::infragraph::Infragraph;

/// One equivalence class of decompositions: a multiset of connected Veblen
/// part vectors summing to the decomposed vector.
#[derive(Clone, Debug)]
pub struct DecompositionClass {
    /// Part multiplicity vectors, sorted descending (repeats allowed).
    pub parts: Vec<Infragraph>,
    /// Product of factorials of repeated identical part vectors.
    pub alpha: BigInt,
    /// Product of factorials of isomorphic-part multiplicities.
    pub nu: BigInt,
    /// Number of raw set partitions of physical edge copies in this class.
    pub raw_partitions: BigInt,
    /// Isomorphism keys of the parts, sorted (the shape of the class).
    pub shape: Vec<CanonicalKey>,
}

impl DecompositionClass {
    pub fn component_count(&self) -> usize {
        self.parts.len()
    }
}

/// All decomposition classes of `x` over the given host. `pieces` must list
/// every connected Veblen vector with at most `x.total_edges()` edges; the
/// host is only consulted for incidence and part isomorphism keys.
pub fn decomposition_classes(
    host: &SimpleHypergraph,
    x: &Infragraph,
    pieces: &[Infragraph],
) -> Vec<DecompositionClass> {
    if x.is_empty() {
        return vec![DecompositionClass {
            parts: Vec::new(),
            alpha: BigInt::one(),
            nu: BigInt::one(),
            raw_partitions: BigInt::one(),
            shape: Vec::new(),
        }];
    }
    // candidate parts: componentwise <= x
    let candidates: Vec<&Infragraph> = pieces
        .iter()
        .filter(|p| !p.is_empty() && p.mult.iter().zip(&x.mult).all(|(&a, &b)| a <= b))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        host: &SimpleHypergraph,
        x: &Infragraph,
        candidates: &[&Infragraph],
        max_idx: usize,
        remaining: &mut Vec<usize>,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<DecompositionClass>,
    ) {
        if left == 0 {
            out.push(build_class(host, x, candidates, chosen));
            return;
        }
        for i in (0..max_idx).rev() {
            let p = candidates[i];
            if p.total_edges() > left {
                continue;
            }
            if p.mult.iter().zip(remaining.iter()).any(|(&a, &b)| a > b) {
                continue;
            }
            for (slot, &m) in p.mult.iter().enumerate() {
                remaining[slot] -= m;
            }
            chosen.push(i);
            rec(
                host,
                x,
                candidates,
                i + 1,
                remaining,
                left - p.total_edges(),
                chosen,
                out,
            );
            chosen.pop();
            for (slot, &m) in p.mult.iter().enumerate() {
                remaining[slot] += m;
            }
        }
    }
    let mut remaining = x.mult.clone();
    rec(
        host,
        x,
        &candidates,
        candidates.len(),
        &mut remaining,
        x.total_edges(),
        &mut chosen,
        &mut out,
    );
    out
}

fn build_class(
    host: &SimpleHypergraph,
    x: &Infragraph,
    candidates: &[&Infragraph],
    chosen: &[usize],
) -> DecompositionClass {
    let parts: Vec<Infragraph> = chosen.iter().map(|&i| candidates[i].clone()).collect();
    // alpha: repeated identical vectors
    let mut alpha = BigInt::one();
    let mut run = 1usize;
    for w in 1..=chosen.len() {
        if w < chosen.len() && chosen[w] == chosen[w - 1] {
            run += 1;
        } else {
            alpha *= factorial(run);
            run = 1;
        }
    }
    // raw partition count: per host edge, a multinomial of its copies over
    // the parts, divided by alpha
    let mut raw = BigInt::one();
    for slot in 0..x.mult.len() {
        let mut numer = factorial(x.mult[slot]);
        let mut used = 0usize;
        for p in &parts {
            numer /= factorial(p.mult[slot]);
            used += p.mult[slot];
        }
        debug_assert_eq!(used, x.mult[slot]);
        raw *= numer;
    }
    raw /= &alpha;
    // nu: group parts by isomorphism of their realizations
    let mut shape: Vec<CanonicalKey> = parts
        .iter()
        .map(|p| p.realize(host).iso_key())
        .collect();
    shape.sort();
    let mut nu = BigInt::one();
    let mut run = 1usize;
    for w in 1..=shape.len() {
        if w < shape.len() && shape[w] == shape[w - 1] {
            run += 1;
        } else {
            nu *= factorial(run);
            run = 1;
        }
    }
    DecompositionClass {
        parts,
        alpha,
        nu,
        raw_partitions: raw,
        shape,
    }
}

/// `delta(n, x)` = sum over decomposition classes of
/// `(-(k-1)^n)^{parts} * prod C(part) / alpha`, given the associated
/// coefficient of every candidate piece.
pub fn delta_value(
    host: &SimpleHypergraph,
    x: &Infragraph,
    n: usize,
    pieces: &[Infragraph],
    piece_coefficient: &dyn Fn(&Infragraph) -> Rat,
) -> Rat {
    let k = host.rank();
    let base = -Rat::from_integer(BigInt::from(k as i64 - 1).pow(n as u32));
    let mut total = Rat::from_integer(BigInt::from(0));
    for class in decomposition_classes(host, x, pieces) {
        let mut term = Rat::one();
        for _ in 0..class.component_count() {
            term *= base.clone();
        }
        for part in &class.parts {
            term *= piece_coefficient(part);
        }
        term /= Rat::from_integer(class.alpha.clone());
        total += term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::infragraph::enumerate_infragraphs;
    use crate::hyper::rooting::associated_coefficient;
    use crate::series::{rat, rint};

    fn single_3edge() -> SimpleHypergraph {
        SimpleHypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap()
    }

    fn classes_for(host: &SimpleHypergraph, x: &Infragraph) -> Vec<DecompositionClass> {
        let pieces = enumerate_infragraphs(host, x.total_edges(), true);
        decomposition_classes(host, x, &pieces)
    }

    #[test]
    fn six_parallel_edges_have_two_classes() {
        let host = single_3edge();
        let x = Infragraph::new(vec![6]);
        let classes = classes_for(&host, &x);
        assert_eq!(classes.len(), 2);
        let split: &DecompositionClass = classes
            .iter()
            .find(|c| c.component_count() == 2)
            .unwrap();
        assert_eq!(split.alpha, BigInt::from(2));
        // binom(6,3)/2 raw set partitions
        assert_eq!(split.raw_partitions, BigInt::from(10));
        let whole = classes.iter().find(|c| c.component_count() == 1).unwrap();
        assert_eq!(whole.alpha, BigInt::one());
        assert_eq!(whole.raw_partitions, BigInt::one());
    }

    #[test]
    fn nine_parallel_edges_force_alpha_six() {
        let host = single_3edge();
        let x = Infragraph::new(vec![9]);
        let classes = classes_for(&host, &x);
        assert_eq!(classes.len(), 3);
        let triple = classes
            .iter()
            .find(|c| c.component_count() == 3)
            .unwrap();
        assert_eq!(triple.alpha, BigInt::from(6));
        assert_eq!(triple.nu, BigInt::from(6));
    }

    #[test]
    fn mixed_bundle_alpha_is_two() {
        // host: two 3-edges sharing one vertex; infragraph 6*e1 + 3*e2
        // splits as {3e1,3e1,3e2} with alpha 2 and as {6e1,3e2},
        // {3e1+3e2, 3e1} etc. -- the all-parallel class has alpha 2!
        let host = SimpleHypergraph::new(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        let x = Infragraph::new(vec![6, 3]);
        let classes = classes_for(&host, &x);
        let all_parallel = classes
            .iter()
            .find(|c| {
                c.component_count() == 3
                    && c.parts.iter().all(|p| p.support_edges().len() == 1)
            })
            .unwrap();
        assert_eq!(all_parallel.alpha, BigInt::from(2));
    }

    #[test]
    fn delta_values_of_parallel_bundles() {
        let host = single_3edge();
        let pieces = enumerate_infragraphs(&host, 18, true);
        let coeff = |p: &Infragraph| associated_coefficient(&p.realize(&host)).unwrap();
        let d3 = delta_value(&host, &Infragraph::new(vec![3]), 3, &pieces, &coeff);
        assert_eq!(d3, rint(-3));
        let d6 = delta_value(&host, &Infragraph::new(vec![6]), 3, &pieces, &coeff);
        assert_eq!(d6, rint(3));
        let d9 = delta_value(&host, &Infragraph::new(vec![9]), 3, &pieces, &coeff);
        assert_eq!(d9, rint(-1));
        let d12 = delta_value(&host, &Infragraph::new(vec![12]), 3, &pieces, &coeff);
        assert_eq!(d12, rint(0));
        // delta(0, .) drops the (k-1)^n scaling
        let d3_root = delta_value(&host, &Infragraph::new(vec![3]), 0, &pieces, &coeff);
        assert_eq!(d3_root, rat(-3, 8));
    }

    #[test]
    fn empty_infragraph_has_the_empty_decomposition() {
        let host = single_3edge();
        let x = Infragraph::empty(1);
        let classes = classes_for(&host, &x);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].component_count(), 0);
        let coeff = |_: &Infragraph| rint(1);
        assert_eq!(delta_value(&host, &x, 3, &[], &coeff), rint(1));
    }
}
