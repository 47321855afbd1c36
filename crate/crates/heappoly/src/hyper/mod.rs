//! The hypergraph characteristic-polynomial pipeline: infragraph
//! enumeration, rootings and associated coefficients, decompositions with
//! their delta weights, and the three coefficient routes (stacking,
//! decomposition sweep, trivial heaps), plus edge-variable coefficients,
//! generalized traces and the root series.

pub mod decompose;
pub mod infragraph;
pub mod rooting;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::heaps::{trivial_sum, PieceSystem};
use crate::hypergraph::{CanonicalKey, MultiHypergraph};
use crate::series::{rint, EdgePolynomial, Rat, TruncatedSeries};
use crate::SimpleHypergraph;

pub use decompose::{decomposition_classes, delta_value, DecompositionClass};
pub use infragraph::{enumerate_infragraphs, infragraphs_of_size, Infragraph};
pub use rooting::{associated_coefficient, eulerian_rootings, HyperError, RootingClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientMethod {
    /// Stacking route: abstract connected classes and their copy counts.
    HararySachs,
    /// Decomposition route: delta weights summed over infragraphs.
    Kocay,
    /// Trivial-heap route over connected infragraph pieces.
    TrivialHeaps,
}

/// Precomputed per-host data: connected infragraph pieces up to a codegree
/// cap and their associated coefficients.
pub struct Pipeline<'a> {
    pub host: &'a SimpleHypergraph,
    pub cap: usize,
    pieces: Vec<Infragraph>,
    c_values: Vec<Rat>,
    piece_index: BTreeMap<Vec<usize>, usize>,
}

impl<'a> Pipeline<'a> {
    pub fn new(host: &'a SimpleHypergraph, cap: usize) -> Self {
        let pieces = enumerate_infragraphs(host, cap, true);
        let c_values: Vec<Rat> = pieces
            .par_iter()
            .map(|p| {
                associated_coefficient(&p.realize(host))
                    .expect("connected infragraphs are Veblen")
            })
            .collect();
        let piece_index = pieces
            .iter()
            .enumerate()
            .map(|(i, p)| (p.mult.clone(), i))
            .collect();
        Pipeline {
            host,
            cap,
            pieces,
            c_values,
            piece_index,
        }
    }

    pub fn pieces(&self) -> &[Infragraph] {
        &self.pieces
    }

    pub fn piece_coefficient(&self, p: &Infragraph) -> Rat {
        self.c_values[self.piece_index[&p.mult]].clone()
    }

    /// Delta weight of an infragraph for hosts of order `n`.
    pub fn delta(&self, n: usize, x: &Infragraph) -> Rat {
        assert!(x.total_edges() <= self.cap, "raise the pipeline cap");
        delta_value(self.host, x, n, &self.pieces, &|p| {
            self.piece_coefficient(p)
        })
    }

    fn order_n(&self) -> usize {
        self.host.num_vertices()
    }

    /// Connected abstract classes realized in the host: one representative
    /// piece per isomorphism class with its realization count.
    fn connected_classes(&self, cap: usize) -> Vec<(Infragraph, usize, Rat)> {
        let mut by_key: BTreeMap<CanonicalKey, (Infragraph, usize, Rat)> = BTreeMap::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if p.total_edges() > cap {
                continue;
            }
            let key = p.realize(self.host).iso_key();
            let entry = by_key
                .entry(key)
                .or_insert_with(|| (p.clone(), 0, self.c_values[i].clone()));
            entry.1 += 1;
            debug_assert_eq!(
                entry.2, self.c_values[i],
                "isomorphic infragraphs share their associated coefficient"
            );
        }
        by_key.into_values().collect()
    }

    /// Exponential sum over one class: `sum_j value^j t^(-j*d) / j!`.
    fn class_series(value: &Rat, d: usize, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        let mut term = Rat::one();
        let mut j = 0usize;
        loop {
            let grade = j * d;
            if grade > order {
                break;
            }
            s.add_assign_term(grade, &term);
            j += 1;
            term = term * value / rint(j as i64);
        }
        s
    }

    /// The normalized characteristic series by the stacking route: a product
    /// over connected classes of exponential class sums with per-class
    /// weight `-(k-1)^n * C * (#copies)`, or `-C * (#copies)` when
    /// `scale_by_order` is off (the root series).
    fn stacking_series(&self, order: usize, scale_by_order: bool) -> TruncatedSeries {
        assert!(order <= self.cap);
        let k = self.host.rank();
        let scale = if scale_by_order {
            Rat::from_integer(BigInt::from(k as i64 - 1).pow(self.order_n() as u32))
        } else {
            Rat::one()
        };
        let mut acc = TruncatedSeries::one(order);
        for (piece, count, c) in self.connected_classes(order) {
            let value = -(&scale * c * rint(count as i64));
            let s = Self::class_series(&value, piece.total_edges(), order);
            acc = acc.mul_series(&s);
        }
        acc
    }

    /// The normalized characteristic series by the decomposition route.
    fn kocay_series(&self, order: usize) -> TruncatedSeries {
        assert!(order <= self.cap);
        let n = self.order_n();
        let infs = enumerate_infragraphs(self.host, order, false);
        let terms: Vec<(usize, Rat)> = infs
            .par_iter()
            .map(|x| (x.total_edges(), self.delta(n, x)))
            .collect();
        let mut acc = TruncatedSeries::zero(order);
        for (d, v) in terms {
            acc.add_assign_term(d, &v);
        }
        acc
    }

    /// Piece system over connected infragraphs with weights
    /// `-delta(n, piece) * t^-|E|`; `n = 0` gives the root-series weights.
    pub fn piece_system(&self, n: usize, cap: usize) -> PieceSystem {
        let kept: Vec<&Infragraph> = self
            .pieces
            .iter()
            .filter(|p| p.total_edges() <= cap)
            .collect();
        let grades: Vec<usize> = kept.iter().map(|p| p.total_edges()).collect();
        let coeffs: Vec<Rat> = kept.par_iter().map(|p| -self.delta(n, p)).collect();
        let m = kept.len();
        let mut conc = vec![vec![false; m]; m];
        for i in 0..m {
            conc[i][i] = true;
            for j in (i + 1)..m {
                let share = kept[i].shares_vertex(kept[j], self.host);
                conc[i][j] = share;
                conc[j][i] = share;
            }
        }
        PieceSystem::new(grades, coeffs, conc)
    }

    fn heaps_series(&self, order: usize, n: usize) -> TruncatedSeries {
        let sys = self.piece_system(n, order);
        trivial_sum(&sys, &|_| true, order)
    }

    /// `t^-N * phi(t)` to the requested order, by the chosen route.
    pub fn phi_tilde(&self, method: CoefficientMethod, order: usize) -> TruncatedSeries {
        match method {
            CoefficientMethod::HararySachs => self.stacking_series(order, true),
            CoefficientMethod::Kocay => self.kocay_series(order),
            CoefficientMethod::TrivialHeaps => self.heaps_series(order, self.order_n()),
        }
    }

    /// Codegree-`d` coefficient by the chosen route.
    pub fn codegree_coefficient(&self, d: usize, method: CoefficientMethod) -> Rat {
        self.phi_tilde(method, d).coeff(d).clone()
    }

    /// Codegree-`d` coefficient with edge variables:
    /// `sum over infragraphs of e^X * delta(n, X)`.
    pub fn edge_variable_coefficient(&self, d: usize) -> EdgePolynomial {
        assert!(d <= self.cap);
        let n = self.order_n();
        let mut out = EdgePolynomial::new(self.host.num_edges());
        let infs = infragraphs_of_size(self.host, d, false);
        let terms: Vec<(Vec<u32>, Rat)> = infs
            .par_iter()
            .map(|x| {
                let exps: Vec<u32> = x.mult.iter().map(|&m| m as u32).collect();
                (exps, self.delta(n, x))
            })
            .collect();
        for (exps, v) in terms {
            out.add_term(d, exps, v);
        }
        out
    }

    /// Generalized trace: `d (k-1)^n sum over connected infragraphs of
    /// e^X * C_X` at codegree `d`.
    pub fn trace_polynomial(&self, d: usize) -> EdgePolynomial {
        assert!(d >= 1 && d <= self.cap);
        let k = self.host.rank();
        let scale = rint(d as i64)
            * Rat::from_integer(BigInt::from(k as i64 - 1).pow(self.order_n() as u32));
        let mut out = EdgePolynomial::new(self.host.num_edges());
        for (i, p) in self.pieces.iter().enumerate() {
            if p.total_edges() != d {
                continue;
            }
            let exps: Vec<u32> = p.mult.iter().map(|&m| m as u32).collect();
            out.add_term(d, exps, &scale * &self.c_values[i]);
        }
        out
    }

    /// All three routes of the root series `phi~^(1/(k-1)^n)`.
    pub fn root_series(&self, order: usize) -> RootSeries {
        let k = self.host.rank();
        let root_index = BigInt::from(k as i64 - 1).pow(self.order_n() as u32);
        let root_index_u64: u64 = root_index
            .try_into()
            .expect("root index fits in a machine word");
        let via_root = self
            .phi_tilde(CoefficientMethod::Kocay, order)
            .nth_root(root_index_u64)
            .expect("normalized series has constant term 1");
        let via_stacking = self.stacking_series(order, false);
        let via_heaps = {
            let sys = self.piece_system(0, order);
            trivial_sum(&sys, &|_| true, order)
        };
        RootSeries {
            via_root,
            via_stacking,
            via_heaps,
        }
    }
}

/// The root series computed three ways; they must agree exactly.
pub struct RootSeries {
    pub via_root: TruncatedSeries,
    pub via_stacking: TruncatedSeries,
    pub via_heaps: TruncatedSeries,
}

impl RootSeries {
    pub fn agree(&self) -> bool {
        self.via_root == self.via_stacking && self.via_root == self.via_heaps
    }
}

/// Number of ways to stack a Veblen multi-hypergraph on a simple host:
/// connected input uses the automorphism-ratio formula cross-checked against
/// the direct infragraph count; disconnected input multiplies component
/// counts and divides by the isomorphic-component correction.
pub fn stacking_count(g: &MultiHypergraph, host: &SimpleHypergraph) -> Result<Rat, HyperError> {
    let (is_veblen, _) = g.veblen_check();
    if !is_veblen {
        return Err(HyperError::NotVeblen(0, 0, g.rank()));
    }
    let comps = g.components();
    if comps.len() <= 1 {
        return Ok(connected_stacking_count(g, host));
    }
    let mut product = Rat::one();
    let mut keys = Vec::new();
    for comp in &comps {
        let edges: Vec<Vec<usize>> = g
            .edges()
            .iter()
            .filter(|e| comp.contains(&e[0]))
            .cloned()
            .collect();
        let sub = MultiHypergraph::new(g.rank(), g.num_vertices(), edges).unwrap();
        keys.push(sub.iso_key());
        product *= connected_stacking_count(&sub, host);
    }
    keys.sort();
    let mut nu = BigInt::one();
    let mut run = 1usize;
    for w in 1..=keys.len() {
        if w < keys.len() && keys[w] == keys[w - 1] {
            run += 1;
        } else {
            nu *= crate::hypergraph::factorial(run);
            run = 1;
        }
    }
    Ok(product / Rat::from_integer(nu))
}

fn connected_stacking_count(g: &MultiHypergraph, host: &SimpleHypergraph) -> Rat {
    if g.num_edges() == 0 {
        return Rat::one();
    }
    let (flat, _, _) = g.flatten();
    let flat_simple =
        SimpleHypergraph::new(flat.rank(), flat.num_vertices(), flat.edges().to_vec()).unwrap();
    let copies = host
        .count_copies_of(&flat_simple)
        .expect("ranks checked by caller");
    let (aut_flat, aut_multi) = g.automorphism_counts();
    let formula = Rat::new(
        BigInt::from(aut_flat) * BigInt::from(copies),
        BigInt::from(aut_multi),
    );
    // direct count: infragraphs of the host isomorphic to g
    let key = g.iso_key();
    let direct = infragraphs_of_size(host, g.num_edges(), true)
        .iter()
        .filter(|x| x.realize(host).iso_key() == key)
        .count();
    assert_eq!(
        formula,
        rint(direct as i64),
        "stacking formula disagrees with the direct infragraph count"
    );
    formula
}

/// Delta weight of a standalone Veblen multi-hypergraph (its own flattening
/// serves as the host).
pub fn delta_of_multi(n: usize, y: &MultiHypergraph) -> Result<Rat, HyperError> {
    let (is_veblen, _) = y.veblen_check();
    if !is_veblen {
        return Err(HyperError::NotVeblen(0, 0, y.rank()));
    }
    let (flat, mults, _) = y.flatten();
    let host =
        SimpleHypergraph::new(flat.rank(), flat.num_vertices(), flat.edges().to_vec()).unwrap();
    let x = Infragraph::new(mults);
    let pieces = enumerate_infragraphs(&host, x.total_edges(), true);
    let mut cache: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
    for p in &pieces {
        let c = associated_coefficient(&p.realize(&host)).unwrap();
        cache.insert(p.mult.clone(), c);
    }
    Ok(delta_value(&host, &x, n, &pieces, &|p| {
        cache[&p.mult].clone()
    }))
}

fn glued_union(
    x1: &MultiHypergraph,
    x2: &MultiHypergraph,
    u: usize,
) -> Result<MultiHypergraph, HyperError> {
    if x1.rank() != x2.rank() {
        return Err(HyperError::BadGlue);
    }
    let s1 = x1.support();
    let s2 = x2.support();
    let common: Vec<usize> = s1.iter().filter(|v| s2.contains(v)).copied().collect();
    if common != vec![u] {
        return Err(HyperError::BadGlue);
    }
    let n = x1.num_vertices().max(x2.num_vertices());
    let mut edges = x1.edges().to_vec();
    edges.extend_from_slice(x2.edges());
    Ok(MultiHypergraph::new(x1.rank(), n, edges).unwrap())
}

/// Both sides of the associated-coefficient factorization for two connected
/// Veblen hypergraphs glued at a single vertex `u`:
/// `C(X) = (k-1) (s1 s2 / s) binom(s; s1, s2) C(X1) C(X2)`.
pub fn factorized_coefficient(
    x1: &MultiHypergraph,
    x2: &MultiHypergraph,
    u: usize,
) -> Result<(Rat, Rat), HyperError> {
    let union = glued_union(x1, x2, u)?;
    let k = x1.rank();
    let s1 = x1.degree(u) / k;
    let s2 = x2.degree(u) / k;
    let s = s1 + s2;
    let lhs = associated_coefficient(&union)?;
    let c1 = associated_coefficient(x1)?;
    let c2 = associated_coefficient(x2)?;
    let binom = crate::hypergraph::factorial(s)
        / (crate::hypergraph::factorial(s1) * crate::hypergraph::factorial(s2));
    let rhs = rint(k as i64 - 1) * rint(s1 as i64) * rint(s2 as i64) / rint(s as i64)
        * Rat::from_integer(binom)
        * c1
        * c2;
    Ok((lhs, rhs))
}

/// Both sides of the weight factorization at a degree-k glue vertex:
/// `w_n(X) = ((k-1)^(1-n) - 1) w_n(X1) w_n(X2)` with `w_n(Y) = -delta(n, Y)`.
pub fn factorized_weight(
    x1: &MultiHypergraph,
    x2: &MultiHypergraph,
    u: usize,
    n: usize,
) -> Result<(Rat, Rat), HyperError> {
    let union = glued_union(x1, x2, u)?;
    let k = x1.rank();
    if x1.degree(u) != k || x2.degree(u) != k {
        return Err(HyperError::GlueDegree);
    }
    let w = |y: &MultiHypergraph| -> Result<Rat, HyperError> { Ok(-delta_of_multi(n, y)?) };
    let lhs = w(&union)?;
    let factor = Rat::new(
        BigInt::from(k as i64 - 1),
        BigInt::from(k as i64 - 1).pow(n as u32),
    ) - Rat::one();
    let rhs = factor * w(x1)? * w(x2)?;
    Ok((lhs, rhs))
}
