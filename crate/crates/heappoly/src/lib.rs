//! Exact combinatorial computation of characteristic polynomials of uniform
//! hypergraphs, built on heaps of pieces.
//!
//! The library has three layers:
//!
//! * walk machinery for digraphs and multigraphs: Eulerian trail and circuit
//!   enumeration, cycle sequences, trail insertion and the shortcut inverse
//!   ([`trails`]), plus the arborescence count behind the BEST theorem
//!   ([`digraph`]);
//! * a generic heaps-of-pieces engine with composition, down-set splitting,
//!   layered enumeration, the trivial-heap / pyramid / all-heap sums and the
//!   walk-pyramid bijections ([`heaps`]), over exact truncated rational
//!   series ([`series`]);
//! * the hypergraph pipeline: infragraph enumeration, Eulerian rootings and
//!   associated coefficients, edge-partition decompositions with their delta
//!   weights, and three independently computed coefficient routes for the
//!   characteristic polynomial, together with edge-variable coefficients,
//!   generalized traces and the formal root series ([`hyper`]).
//!
//! Rank-2 specializations (determinant and elementary-subgraph coefficient
//! formulas, walk counting, vertex/edge quotient series) live in [`rank2`];
//! independent brute-force verifiers (a small Macaulay resultant and raw
//! recounts) in [`oracles`]; the named verification suites in [`verify`].
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals
//! and every cross-check is an equality, not an approximation.

pub mod digraph;
pub mod heaps;
pub mod hyper;
pub mod hypergraph;
pub mod oracles;
pub mod rank2;
pub mod series;
pub mod trails;
pub mod verify;

pub use digraph::Digraph;
pub use hypergraph::{CanonicalKey, MultiHypergraph, SimpleHypergraph};
pub use series::{EdgePolynomial, Rat, TruncatedSeries};
