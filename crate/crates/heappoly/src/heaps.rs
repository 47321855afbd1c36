//! Heaps of pieces over an arbitrary graded piece system: composition,
//! down-set splitting, layered enumeration, the trivial-heap / pyramid /
//! all-heap sums, and the walk-pyramid bijections.
//!
//! A piece system fixes a finite piece list, a reflexive symmetric
//! concurrence relation, and a monomial weight `coeff * t^-grade` per piece
//! with `grade >= 1`, so every sum below a grade cap is finite.

use std::collections::BTreeMap;

use num_traits::One;

use crate::series::{Rat, TruncatedSeries};
use crate::trails::{
    cycle_insert, cycle_sequence, cycles, edgegon, Circuit, TrailError, Walk, WalkHost,
};
use crate::SimpleHypergraph;

/// Finite piece universe with concurrence and graded monomial weights.
#[derive(Clone, Debug)]
pub struct PieceSystem {
    grades: Vec<usize>,
    coeffs: Vec<Rat>,
    conc: Vec<Vec<bool>>,
}

impl PieceSystem {
    pub fn new(grades: Vec<usize>, coeffs: Vec<Rat>, conc: Vec<Vec<bool>>) -> Self {
        let n = grades.len();
        assert_eq!(coeffs.len(), n);
        assert_eq!(conc.len(), n);
        for (i, row) in conc.iter().enumerate() {
            assert_eq!(row.len(), n);
            assert!(row[i], "concurrence must be reflexive");
            for j in 0..n {
                assert_eq!(row[j], conc[j][i], "concurrence must be symmetric");
            }
        }
        assert!(
            grades.iter().all(|&g| g >= 1),
            "weights must be graded away from grade 0"
        );
        PieceSystem {
            grades,
            coeffs,
            conc,
        }
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grade(&self, p: usize) -> usize {
        self.grades[p]
    }

    pub fn coeff(&self, p: usize) -> &Rat {
        &self.coeffs[p]
    }

    pub fn concurrent(&self, p: usize, q: usize) -> bool {
        self.conc[p][q]
    }
}

/// A heap: ground elements `0..len`, a piece label per element, and the
/// strict order as per-element predecessor masks (transitively closed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heap {
    labels: Vec<usize>,
    below: Vec<u64>,
}

impl Heap {
    pub fn empty() -> Self {
        Heap {
            labels: Vec::new(),
            below: Vec::new(),
        }
    }

    pub fn single(piece: usize) -> Self {
        Heap {
            labels: vec![piece],
            below: vec![0],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, el: usize) -> usize {
        self.labels[el]
    }

    /// Mask of elements strictly below `el`.
    pub fn strictly_below(&self, el: usize) -> u64 {
        self.below[el]
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    fn close_transitively(&mut self) {
        loop {
            let mut changed = false;
            for i in 0..self.len() {
                let mut acc = self.below[i];
                let mut m = self.below[i];
                while m != 0 {
                    let j = m.trailing_zeros() as usize;
                    m &= m - 1;
                    acc |= self.below[j];
                }
                if acc != self.below[i] {
                    self.below[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Composition: `self` below, `other` on top; every element of `self`
    /// whose label is concurrent with an element of `other` goes below it.
    pub fn compose(&self, other: &Heap, sys: &PieceSystem) -> Heap {
        let n1 = self.len();
        let n2 = other.len();
        assert!(n1 + n2 <= 64, "heap composition is for small heaps");
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut below = self.below.clone();
        for j in 0..n2 {
            let mut mask = other.below[j] << n1;
            for i in 0..n1 {
                if sys.concurrent(self.labels[i], other.labels[j]) {
                    mask |= 1 << i;
                }
            }
            below.push(mask);
        }
        let mut h = Heap { labels, below };
        h.close_transitively();
        h
    }

    pub fn compose_piece(&self, piece: usize, sys: &PieceSystem) -> Heap {
        self.compose(&Heap::single(piece), sys)
    }

    /// Elements with nothing above them.
    pub fn maximal_elements(&self) -> Vec<usize> {
        let mut covered = 0u64;
        for &m in &self.below {
            covered |= m;
        }
        (0..self.len()).filter(|&i| covered >> i & 1 == 0).collect()
    }

    pub fn maximal_labels(&self) -> Vec<usize> {
        self.maximal_elements().into_iter().map(|e| self.labels[e]).collect()
    }

    pub fn is_pyramid(&self) -> bool {
        self.maximal_elements().len() == 1
    }

    pub fn is_trivial(&self, sys: &PieceSystem) -> bool {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if sys.concurrent(self.labels[i], self.labels[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn total_grade(&self, sys: &PieceSystem) -> usize {
        self.labels.iter().map(|&p| sys.grade(p)).sum()
    }

    pub fn weight_coeff(&self, sys: &PieceSystem) -> Rat {
        let mut w = Rat::one();
        for &p in &self.labels {
            w *= sys.coeff(p).clone();
        }
        w
    }

    /// Restriction to the elements in `mask`, preserving labels and order.
    fn restrict(&self, mask: u64) -> Heap {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let labels = keep.iter().map(|&i| self.labels[i]).collect();
        let below = keep
            .iter()
            .map(|&i| {
                let mut m = 0u64;
                let mut b = self.below[i] & mask;
                while b != 0 {
                    let j = b.trailing_zeros() as usize;
                    b &= b - 1;
                    m |= 1 << pos[&j];
                }
                m
            })
            .collect();
        Heap { labels, below }
    }

    /// Splits off the down-set of `el`: a pyramid with maximum `el`, plus the
    /// rest; composing the parts recovers the heap.
    pub fn downset_split(&self, el: usize) -> (Heap, Heap) {
        assert!(el < self.len(), "element not in heap");
        let down = self.below[el] | 1 << el;
        let rest = !down & ((1u64 << self.len()) - 1);
        let p = self.restrict(down);
        debug_assert!(p.is_pyramid());
        (p, self.restrict(rest))
    }

    /// Removes one element (restriction on the rest).
    pub fn remove_element(&self, el: usize) -> Heap {
        let mask = !(1u64 << el) & ((1u64 << self.len()) - 1);
        self.restrict(mask)
    }

    /// Canonical word: repeatedly extract the minimal element with the
    /// smallest label. Two heaps over one system are equal iff their
    /// canonical words are equal.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut remaining: u64 = if self.len() == 64 {
            !0
        } else {
            (1u64 << self.len()) - 1
        };
        let mut below = self.below.clone();
        let mut word = Vec::with_capacity(self.len());
        while remaining != 0 {
            let mut best: Option<usize> = None;
            let mut m = remaining;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                if below[i] & remaining == 0
                    && best.map_or(true, |b| self.labels[i] < self.labels[b])
                {
                    best = Some(i);
                }
            }
            let i = best.expect("finite poset has a minimal element");
            remaining &= !(1 << i);
            for b in below.iter_mut() {
                *b &= !(1 << i);
            }
            word.push(self.labels[i]);
        }
        word
    }
}

/// Composes a sequence of pieces left to right.
pub fn compose_pieces(pieces: &[usize], sys: &PieceSystem) -> Heap {
    let mut h = Heap::empty();
    for &p in pieces {
        h = h.compose_piece(p, sys);
    }
    h
}

/// Visits every heap with total grade at most `cap` whose pieces satisfy
/// `keep`, exactly once, by layered (antichain-by-antichain) construction.
/// The empty heap is visited first.
pub fn for_each_heap(
    sys: &PieceSystem,
    cap: usize,
    keep: &dyn Fn(usize) -> bool,
    visit: &mut dyn FnMut(&Heap),
) {
    let pieces: Vec<usize> = (0..sys.len()).filter(|&p| keep(p)).collect();
    let empty = Heap::empty();
    visit(&empty);
    // a layer is an antichain (set of pairwise non-concurrent pieces);
    // every piece of the next layer must rest on the current one
    fn extend_layers(
        sys: &PieceSystem,
        pieces: &[usize],
        cap: usize,
        heap: &Heap,
        prev_layer: &[usize],
        grade: usize,
        visit: &mut dyn FnMut(&Heap),
    ) {
        // build candidate next layers: subsets of `pieces`, pairwise
        // non-concurrent, each concurrent with something in prev_layer
        let candidates: Vec<usize> = pieces
            .iter()
            .copied()
            .filter(|&p| {
                grade + sys.grade(p) <= cap
                    && (prev_layer.is_empty()
                        || prev_layer.iter().any(|&q| sys.concurrent(q, p)))
            })
            .collect();
        fn layers(
            sys: &PieceSystem,
            cands: &[usize],
            from: usize,
            cap_left: usize,
            layer: &mut Vec<usize>,
            out: &mut dyn FnMut(&[usize]),
        ) {
            for idx in from..cands.len() {
                let p = cands[idx];
                if sys.grade(p) > cap_left {
                    continue;
                }
                if layer.iter().any(|&q| sys.concurrent(q, p)) {
                    continue;
                }
                layer.push(p);
                out(layer);
                layers(sys, cands, idx + 1, cap_left - sys.grade(p), layer, out);
                layer.pop();
            }
        }
        let mut layer = Vec::new();
        let mut emit = |l: &[usize]| {
            let mut antichain = Heap::empty();
            for &p in l {
                antichain = antichain.compose_piece(p, sys);
            }
            let next = heap.compose(&antichain, sys);
            visit(&next);
            let g: usize = l.iter().map(|&p| sys.grade(p)).sum();
            extend_layers(sys, pieces, cap, &next, l, grade + g, visit);
        };
        layers(sys, &candidates, 0, cap - grade, &mut layer, &mut emit);
    }
    extend_layers(sys, &pieces, cap, &empty, &[], 0, visit);
}

/// All heaps with total grade at most `cap`.
pub fn enumerate_heaps(sys: &PieceSystem, cap: usize) -> Vec<Heap> {
    let mut out = Vec::new();
    for_each_heap(sys, cap, &|_| true, &mut |h| out.push(h.clone()));
    out
}

/// Trivial-heap alternating sum over pieces passing `keep`:
/// `sum (-1)^|T| w(T)` up to the grade cap.
pub fn trivial_sum(sys: &PieceSystem, keep: &dyn Fn(usize) -> bool, cap: usize) -> TruncatedSeries {
    let pieces: Vec<usize> = (0..sys.len()).filter(|&p| keep(p)).collect();
    let mut acc = TruncatedSeries::zero(cap);
    fn rec(
        sys: &PieceSystem,
        pieces: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        grade: usize,
        coeff: &Rat,
        cap: usize,
        acc: &mut TruncatedSeries,
    ) {
        acc.add_assign_term(grade, coeff);
        for idx in from..pieces.len() {
            let p = pieces[idx];
            if grade + sys.grade(p) > cap {
                continue;
            }
            if chosen.iter().any(|&q| sys.concurrent(q, p)) {
                continue;
            }
            chosen.push(p);
            let c = coeff * sys.coeff(p) * crate::series::rint(-1);
            rec(sys, pieces, idx + 1, chosen, grade + sys.grade(p), &c, cap, acc);
            chosen.pop();
        }
    }
    let one = Rat::one();
    rec(sys, &pieces, 0, &mut Vec::new(), 0, &one, cap, &mut acc);
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PyramidMode {
    /// Heaps whose maximal labels all lie in the anchor set, weighted by
    /// w(H); the empty heap contributes 1.
    MaxInAnchor,
    /// All pyramids, weighted by w(P)/|P|.
    LogWeighted,
    /// All heaps, weighted by w(H); the empty heap contributes 1.
    AllHeaps,
}

/// Pyramid/heap sums up to the grade cap. The anchor predicate is only
/// consulted in `MaxInAnchor` mode.
pub fn pyramid_sum(
    sys: &PieceSystem,
    mode: PyramidMode,
    anchor: &dyn Fn(usize) -> bool,
    cap: usize,
) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(cap);
    for_each_heap(sys, cap, &|_| true, &mut |h| {
        let g = h.total_grade(sys);
        match mode {
            PyramidMode::MaxInAnchor => {
                if h.maximal_labels().iter().all(|&p| anchor(p)) {
                    acc.add_assign_term(g, &h.weight_coeff(sys));
                }
            }
            PyramidMode::LogWeighted => {
                if !h.is_empty() && h.is_pyramid() {
                    let w = h.weight_coeff(sys) / crate::series::rint(h.len() as i64);
                    acc.add_assign_term(g, &w);
                }
            }
            PyramidMode::AllHeaps => {
                acc.add_assign_term(g, &h.weight_coeff(sys));
            }
        }
    });
    acc
}

/// Piece system whose pieces are circuits of a walk host, with concurrence
/// "shares a vertex" and weight `t^-length`.
#[derive(Clone, Debug)]
pub struct CircuitPieces {
    pub system: PieceSystem,
    pub circuits: Vec<Circuit>,
    index: BTreeMap<Circuit, usize>,
}

impl CircuitPieces {
    fn from_circuits(circuits: Vec<Circuit>) -> Self {
        let n = circuits.len();
        let grades = circuits.iter().map(|c| c.len()).collect();
        let coeffs = vec![Rat::one(); n];
        let mut conc = vec![vec![false; n]; n];
        for i in 0..n {
            conc[i][i] = true;
            for j in (i + 1)..n {
                let share = !circuits[i].vertex_set().is_disjoint(&circuits[j].vertex_set());
                conc[i][j] = share;
                conc[j][i] = share;
            }
        }
        let index = circuits
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        CircuitPieces {
            system: PieceSystem::new(grades, coeffs, conc),
            circuits,
            index,
        }
    }

    /// Cycles of a digraph or multigraph.
    pub fn for_trails<H: WalkHost>(host: &H) -> Self {
        Self::from_circuits(cycles(host))
    }

    /// Cycles plus edgegons of a simple graph.
    pub fn for_simple_graph(g: &SimpleHypergraph) -> Self {
        assert_eq!(g.rank(), 2);
        let mut cs = cycles(g);
        for e in 0..g.num_edges() {
            cs.push(edgegon(g, e));
        }
        cs.sort();
        Self::from_circuits(cs)
    }

    pub fn piece_of(&self, c: &Circuit) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn pieces_containing_vertex(&self, v: usize) -> Vec<usize> {
        (0..self.circuits.len())
            .filter(|&i| self.circuits[i].contains_vertex(v))
            .collect()
    }

    pub fn pieces_containing_edge(&self, e: usize) -> Vec<usize> {
        (0..self.circuits.len())
            .filter(|&i| self.circuits[i].contains_edge(e))
            .collect()
    }

    /// Image of a closed trail (or closed walk, in walk mode) under the
    /// cycle-sequence-then-compose map.
    pub fn walk_to_pyramid(&self, w: &Walk, trail_mode: bool) -> Result<Heap, TrailError> {
        let cs = cycle_sequence(w, trail_mode)?;
        let mut h = Heap::empty();
        for c in &cs {
            let p = self
                .piece_of(c)
                .unwrap_or_else(|| panic!("circuit {c:?} is not a piece"));
            h = h.compose_piece(p, &self.system);
        }
        Ok(h)
    }

    /// Inverse peeling: rebuilds the anchored walk of a pyramid whose
    /// maximal piece contains the anchor.
    pub fn pyramid_to_walk(
        &self,
        heap: &Heap,
        anchor: crate::trails::Anchor,
        trail_mode: bool,
    ) -> Result<Walk, TrailError> {
        assert!(heap.is_pyramid(), "peeling requires a pyramid");
        let max = heap.maximal_elements()[0];
        let max_circuit = &self.circuits[heap.label(max)];
        let x0 = match anchor {
            crate::trails::Anchor::Vertex(u) => {
                if !max_circuit.contains_vertex(u) {
                    return Err(TrailError::AnchorMissing(u));
                }
                u
            }
            crate::trails::Anchor::Edge(e) => max_circuit
                .rotation_ending_at_edge(e)
                .ok_or(TrailError::AnchorMissing(e))?
                .last_vertex(),
            crate::trails::Anchor::All => panic!("peeling needs a concrete anchor"),
        };
        if heap.len() == 1 {
            return match anchor {
                crate::trails::Anchor::Vertex(u) => max_circuit
                    .rotation_at_vertex(u)
                    .ok_or(TrailError::AnchorMissing(u)),
                crate::trails::Anchor::Edge(e) => max_circuit
                    .rotation_ending_at_edge(e)
                    .ok_or(TrailError::AnchorMissing(e)),
                crate::trails::Anchor::All => unreachable!(),
            };
        }
        // walk the chain from the maximum down to a minimal element
        let mut a = max;
        let mut x = x0;
        loop {
            let below = heap.strictly_below(a);
            if below == 0 {
                break;
            }
            let trail = self.circuits[heap.label(a)]
                .rotation_at_vertex(x)
                .expect("chain vertices are visited once");
            let mut next_x = None;
            'scan: for &v in trail.vertices() {
                let mut m = below;
                while m != 0 {
                    let el = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if self.circuits[heap.label(el)].contains_vertex(v) {
                        next_x = Some(v);
                        break 'scan;
                    }
                }
            }
            let next_x = next_x.expect("a non-minimal chain element touches its down-set");
            // the unique maximal element below `a` containing next_x
            let mut cands: Vec<usize> = Vec::new();
            let mut m = below;
            while m != 0 {
                let el = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.circuits[heap.label(el)].contains_vertex(next_x) {
                    cands.push(el);
                }
            }
            let next_a = *cands
                .iter()
                .find(|&&el| cands.iter().all(|&o| o == el || !heap.less(el, o)))
                .expect("concurrent candidates form a chain");
            a = next_a;
            x = next_x;
        }
        let rest = heap.remove_element(a);
        let w_rest = self.pyramid_to_walk(&rest, anchor, trail_mode)?;
        cycle_insert(&self.circuits[heap.label(a)], &w_rest, trail_mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rint, rat};
    use crate::trails::{eulerian_trails, Anchor};
    use crate::Digraph;

    fn sys3(conc_13: bool) -> PieceSystem {
        // three pieces, chain-shaped concurrence 1R2, 2R3, optionally 1R3
        let mut conc = vec![vec![false; 3]; 3];
        for i in 0..3 {
            conc[i][i] = true;
        }
        conc[0][1] = true;
        conc[1][0] = true;
        conc[1][2] = true;
        conc[2][1] = true;
        conc[0][2] = conc_13;
        conc[2][0] = conc_13;
        PieceSystem::new(vec![1, 1, 1], vec![rint(1); 3], conc)
    }

    #[test]
    fn compose_self_concurrent_is_chain() {
        let sys = sys3(false);
        let h = compose_pieces(&[0, 0], &sys);
        assert_eq!(h.len(), 2);
        assert!(h.less(0, 1));
        assert_eq!(h.maximal_elements(), vec![1]);
    }

    #[test]
    fn compose_non_concurrent_is_antichain() {
        let sys = sys3(false);
        let h = compose_pieces(&[0, 2], &sys);
        assert!(!h.less(0, 1) && !h.less(1, 0));
        assert!(h.is_trivial(&sys));
        assert_eq!(h.maximal_elements().len(), 2);
    }

    #[test]
    fn compose_closes_transitively() {
        let sys = sys3(false);
        let h = compose_pieces(&[0, 1, 2], &sys);
        assert!(h.less(0, 1) && h.less(1, 2));
        assert!(h.less(0, 2), "transitive closure must relate 0 and 2");
        assert!(h.is_pyramid());
    }

    #[test]
    fn maximal_of_composition_shrinks() {
        let sys = sys3(false);
        let h1 = compose_pieces(&[0], &sys);
        let h2 = compose_pieces(&[1], &sys);
        let h = h1.compose(&h2, &sys);
        assert_eq!(h.maximal_labels(), vec![1]);
    }

    #[test]
    fn downset_split_examples() {
        let sys = sys3(false);
        // pyramid with max: split at the max gives (whole, empty)
        let p = compose_pieces(&[0, 1], &sys);
        let (down, rest) = p.downset_split(1);
        assert_eq!(down.canonical_word(), p.canonical_word());
        assert!(rest.is_empty());
        // 2-antichain: singleton plus singleton
        let a = compose_pieces(&[0, 2], &sys);
        let (down, rest) = a.downset_split(0);
        assert_eq!((down.len(), rest.len()), (1, 1));
        // recomposition over every heap from 3 pieces and every element
        for h in enumerate_heaps(&sys, 3) {
            for el in 0..h.len() {
                let (down, rest) = h.downset_split(el);
                assert!(down.is_pyramid());
                let back = down.compose(&rest, &sys);
                assert_eq!(back.canonical_word(), h.canonical_word());
                let mut expect_max: Vec<usize> = h
                    .maximal_elements()
                    .into_iter()
                    .filter(|&m| m != el)
                    .map(|m| h.label(m))
                    .collect();
                expect_max.sort_unstable();
                let mut got_max = rest.maximal_labels();
                got_max.sort_unstable();
                assert_eq!(got_max, expect_max);
            }
        }
    }

    #[test]
    fn layered_enumeration_matches_word_closure() {
        // every heap (grade cap 3) should appear exactly once and coincide
        // with the set of compositions of all words
        let sys = sys3(true);
        let heaps = enumerate_heaps(&sys, 3);
        let mut words: Vec<Vec<usize>> = heaps.iter().map(|h| h.canonical_word()).collect();
        words.sort();
        let before = words.len();
        words.dedup();
        assert_eq!(before, words.len(), "layered enumeration repeated a heap");
        // brute force over words of length <= 3
        let mut brute = std::collections::BTreeSet::new();
        for len in 0..=3usize {
            let mut idx = vec![0usize; len];
            loop {
                let word: Vec<usize> = idx.clone();
                brute.insert(compose_pieces(&word, &sys).canonical_word());
                // odometer
                let mut i = 0;
                loop {
                    if len == 0 {
                        break;
                    }
                    idx[i] += 1;
                    if idx[i] < 3 {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                    if i == len {
                        break;
                    }
                }
                if len == 0 || idx.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
        let mut brute: Vec<Vec<usize>> = brute.into_iter().collect();
        brute.sort();
        assert_eq!(words, brute);
    }

    #[test]
    fn trivial_sum_of_empty_system_is_one() {
        let sys = PieceSystem::new(vec![], vec![], vec![]);
        assert_eq!(trivial_sum(&sys, &|_| true, 5), TruncatedSeries::one(5));
    }

    #[test]
    fn k4_trivial_sum_matches_characteristic_series() {
        let k4 = SimpleHypergraph::complete(2, 4);
        let pieces = CircuitPieces::for_simple_graph(&k4);
        let phi = trivial_sum(&pieces.system, &|_| true, 4);
        let expect = TruncatedSeries::from_coeffs(
            4,
            &[(0, rint(1)), (2, rint(-6)), (3, rint(-8)), (4, rint(-3))],
        );
        assert_eq!(phi, expect);
    }

    #[test]
    fn k4_grade_four_ledger() {
        let k4 = SimpleHypergraph::complete(2, 4);
        let pieces = CircuitPieces::for_simple_graph(&k4);
        // trivial heaps at grade 4: -2*3 from oriented 4-cycles, +3 from
        // disjoint edgegon pairs
        let four_cycles = pieces
            .circuits
            .iter()
            .filter(|c| c.len() == 4 && c.is_cycle())
            .count();
        assert_eq!(four_cycles, 2 * 3);
        let phi = trivial_sum(&pieces.system, &|_| true, 4);
        assert_eq!(phi.coeff(4), &rint(-3));
        // log-weighted pyramids at grade 4: (1/1)*2*3 + (1/2)*6 + (1/2)*2*12 = 21
        let log_sum = pyramid_sum(&pieces.system, PyramidMode::LogWeighted, &|_| true, 4);
        assert_eq!(log_sum.coeff(4), &rint(21));
        assert_eq!((&phi.log().unwrap()).coeff(4), &rint(-21));
        // all heaps at grade 4: 6 + 6 + 2*12 + 3 = 39
        let all = pyramid_sum(&pieces.system, PyramidMode::AllHeaps, &|_| true, 4);
        assert_eq!(all.coeff(4), &rint(39));
        assert_eq!(
            TruncatedSeries::one(4).div_series(&phi).unwrap().coeff(4),
            &rint(39)
        );
    }

    #[test]
    fn single_piece_pyramid_sum_is_geometric() {
        let sys = PieceSystem::new(vec![2], vec![rat(1, 1)], vec![vec![true]]);
        let s = pyramid_sum(&sys, PyramidMode::MaxInAnchor, &|_| true, 6);
        // chains of j pieces, each grade 2: 1 + t^-2 + t^-4 + t^-6
        let expect = TruncatedSeries::from_coeffs(
            6,
            &[(0, rint(1)), (2, rint(1)), (4, rint(1)), (6, rint(1))],
        );
        assert_eq!(s, expect);
    }

    #[test]
    fn walk_pyramid_bijection_on_doubled_digon() {
        let d = Digraph::new(2, vec![(1, 2), (1, 2), (2, 1), (2, 1)]);
        let pieces = CircuitPieces::for_trails(&d);
        let trails = eulerian_trails(&d, Anchor::Vertex(2)).unwrap();
        assert_eq!(trails.len(), 4);
        let mut images = std::collections::BTreeSet::new();
        for w in &trails {
            let h = pieces.walk_to_pyramid(w, true).unwrap();
            assert!(h.is_pyramid());
            let max_label = h.maximal_labels()[0];
            assert!(pieces.circuits[max_label].contains_vertex(2));
            images.insert(h.canonical_word());
            let back = pieces.pyramid_to_walk(&h, Anchor::Vertex(2), true).unwrap();
            assert_eq!(&back, w);
        }
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn k3_walk_pyramid_round_trip_by_length() {
        let g = SimpleHypergraph::new(2, 3, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let pieces = CircuitPieces::for_simple_graph(&g);
        let mut counts = Vec::new();
        for d in 0..=6usize {
            let walks = crate::trails::closed_walks_at(&g, 1, d);
            let mut images = std::collections::BTreeSet::new();
            for w in &walks {
                if d == 0 {
                    continue;
                }
                let h = pieces.walk_to_pyramid(w, false).unwrap();
                assert!(h.is_pyramid());
                assert!(pieces.circuits[h.maximal_labels()[0]].contains_vertex(1));
                images.insert(h.canonical_word());
                let back = pieces.pyramid_to_walk(&h, Anchor::Vertex(1), false).unwrap();
                assert_eq!(&back, w, "round trip must be the identity");
            }
            counts.push(if d == 0 { 1 } else { images.len() });
        }
        assert_eq!(counts[..5], [1, 0, 2, 2, 6]);
        // pyramid counts with max containing the vertex match walk counts
        let anchor_pieces = pieces.pieces_containing_vertex(1);
        let s = pyramid_sum(
            &pieces.system,
            PyramidMode::MaxInAnchor,
            &|p| anchor_pieces.contains(&p),
            6,
        );
        for d in 0..=6 {
            let walks = crate::trails::closed_walks_at(&g, 1, d).len();
            assert_eq!(s.coeff(d), &rint(walks as i64));
        }
    }

    #[test]
    fn interesting_identity_small() {
        // per-degree: sum over pyramids of 1/|P| = (1/d) sum over pyramids of |V(max)|
        for g in [
            SimpleHypergraph::new(2, 3, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
            SimpleHypergraph::complete(2, 4),
        ] {
            let pieces = CircuitPieces::for_simple_graph(&g);
            let cap = 6;
            let mut lhs = TruncatedSeries::zero(cap);
            let mut rhs = TruncatedSeries::zero(cap);
            for_each_heap(&pieces.system, cap, &|_| true, &mut |h| {
                if h.is_empty() || !h.is_pyramid() {
                    return;
                }
                let d = h.total_grade(&pieces.system);
                lhs.add_assign_term(d, &(Rat::one() / rint(h.len() as i64)));
                let max = h.maximal_labels()[0];
                let nv = pieces.circuits[max].vertex_set().len();
                rhs.add_assign_term(d, &(rint(nv as i64) / rint(d as i64)));
            });
            assert_eq!(lhs, rhs);
        }
    }
}
