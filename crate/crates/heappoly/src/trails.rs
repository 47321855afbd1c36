//! Walks, closed trails, Eulerian trails and circuits, cycle enumeration,
//! cycle sequences, trail insertion and its inverse shortcut.
//!
//! Everything here works for both digraphs and rank-2 multigraphs through the
//! [`WalkHost`] trait. Enumeration is depth-first by ascending edge id, so
//! "first vertex visited" computations and returned orderings are
//! deterministic.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::hypergraph::{MultiHypergraph, SimpleHypergraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrailError {
    #[error("anchor {0} is not in the object")]
    AnchorMissing(usize),
    #[error("walk is not closed")]
    NotClosed,
    #[error("walk repeats an edge but a trail is required")]
    NotTrail,
    #[error("insertion is undefined for these walks")]
    NonInsertable,
    #[error("digraph is not Eulerian")]
    NotEulerian,
    #[error("operation requires rank 2")]
    RankNotTwo,
}

/// Edge-incidence view shared by digraphs and rank-2 multigraphs.
pub trait WalkHost {
    fn num_vertices(&self) -> usize;
    fn num_edges(&self) -> usize;
    /// Endpoint reached when traversing edge `e` out of vertex `v`, if that
    /// traversal is allowed.
    fn step(&self, e: usize, v: usize) -> Option<usize>;
    fn is_directed(&self) -> bool;
    /// Head of a directed edge, or both endpoints of an undirected one.
    fn edge_ends(&self, e: usize) -> (usize, usize);
}

impl WalkHost for Digraph {
    fn num_vertices(&self) -> usize {
        self.num_vertices()
    }
    fn num_edges(&self) -> usize {
        self.num_arcs()
    }
    fn step(&self, e: usize, v: usize) -> Option<usize> {
        let (t, h) = self.arcs()[e];
        (t == v).then_some(h)
    }
    fn is_directed(&self) -> bool {
        true
    }
    fn edge_ends(&self, e: usize) -> (usize, usize) {
        self.arcs()[e]
    }
}

impl WalkHost for MultiHypergraph {
    fn num_vertices(&self) -> usize {
        self.num_vertices()
    }
    fn num_edges(&self) -> usize {
        self.num_edges()
    }
    fn step(&self, e: usize, v: usize) -> Option<usize> {
        let ends = &self.edges()[e];
        debug_assert_eq!(ends.len(), 2, "walks require rank 2");
        if ends[0] == v {
            Some(ends[1])
        } else if ends[1] == v {
            Some(ends[0])
        } else {
            None
        }
    }
    fn is_directed(&self) -> bool {
        false
    }
    fn edge_ends(&self, e: usize) -> (usize, usize) {
        let ends = &self.edges()[e];
        (ends[0], ends[1])
    }
}

impl WalkHost for SimpleHypergraph {
    fn num_vertices(&self) -> usize {
        self.num_vertices()
    }
    fn num_edges(&self) -> usize {
        self.num_edges()
    }
    fn step(&self, e: usize, v: usize) -> Option<usize> {
        let ends = &self.edges()[e];
        debug_assert_eq!(ends.len(), 2, "walks require rank 2");
        if ends[0] == v {
            Some(ends[1])
        } else if ends[1] == v {
            Some(ends[0])
        } else {
            None
        }
    }
    fn is_directed(&self) -> bool {
        false
    }
    fn edge_ends(&self, e: usize) -> (usize, usize) {
        let ends = &self.edges()[e];
        (ends[0], ends[1])
    }
}

/// Alternating vertex/edge sequence; `vertices.len() == edges.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Walk {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        assert_eq!(vertices.len(), edges.len() + 1);
        Walk { vertices, edges }
    }

    pub fn trivial(v: usize) -> Self {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn first_vertex(&self) -> usize {
        self.vertices[0]
    }

    pub fn last_vertex(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.first_vertex() == self.last_vertex()
    }

    pub fn is_trail(&self) -> bool {
        let set: BTreeSet<usize> = self.edges.iter().copied().collect();
        set.len() == self.edges.len()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.edges.iter().copied().collect()
    }

    /// Closed and no repeated vertex except the base.
    pub fn is_simple_closed(&self) -> bool {
        if !self.is_closed() || self.is_empty() {
            return false;
        }
        let d = self.edges.len();
        let interior: BTreeSet<usize> = self.vertices[..d].iter().copied().collect();
        interior.len() == d
    }

    fn rotation(&self, r: usize) -> Walk {
        debug_assert!(self.is_closed());
        let d = self.edges.len();
        let mut vertices = Vec::with_capacity(d + 1);
        let mut edges = Vec::with_capacity(d);
        for i in 0..d {
            vertices.push(self.vertices[(r + i) % d]);
            edges.push(self.edges[(r + i) % d]);
        }
        vertices.push(self.vertices[r % d]);
        Walk { vertices, edges }
    }
}

/// A closed trail up to cyclic rotation, stored by its lexicographically
/// minimal rotation of the (edge, start vertex) data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    rep: Walk,
}

impl Circuit {
    pub fn from_closed_walk(w: &Walk) -> Result<Self, TrailError> {
        if !w.is_closed() || w.is_empty() {
            return Err(TrailError::NotClosed);
        }
        let d = w.len();
        let mut best: Option<Walk> = None;
        for r in 0..d {
            let cand = w.rotation(r);
            if best
                .as_ref()
                .map_or(true, |b| (&cand.edges, &cand.vertices) < (&b.edges, &b.vertices))
            {
                best = Some(cand);
            }
        }
        Ok(Circuit { rep: best.unwrap() })
    }

    pub fn representative(&self) -> &Walk {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.rep.edge_set()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        let d = self.rep.len();
        self.rep.vertices[..d].iter().copied().collect()
    }

    /// No repeated vertices: a cycle (length >= 2 needs distinct edges, so a
    /// digon requires two parallel edges; an edgegon is *not* a cycle).
    pub fn is_cycle(&self) -> bool {
        self.rep.is_simple_closed() && self.rep.is_trail()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertex_set().contains(&v)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.rep.edges.contains(&e)
    }

    /// The unique rotation starting (and ending) at `v`; requires the
    /// circuit to visit `v` exactly once (simple closed representative).
    pub fn rotation_at_vertex(&self, v: usize) -> Option<Walk> {
        let d = self.rep.len();
        let hits: Vec<usize> = (0..d).filter(|&i| self.rep.vertices[i] == v).collect();
        match hits.as_slice() {
            [r] => Some(self.rep.rotation(*r)),
            // edgegon representative visits its base twice in (a,e,b,e,a)?
            // no: positions 0..d list each interior once; multiple hits mean
            // a genuinely repeated vertex
            _ => None,
        }
    }

    /// The unique rotation whose last edge is `e`; requires `e` to occur
    /// exactly once.
    pub fn rotation_ending_at_edge(&self, e: usize) -> Option<Walk> {
        let d = self.rep.len();
        let hits: Vec<usize> = (0..d).filter(|&i| self.rep.edges[i] == e).collect();
        match hits.as_slice() {
            [i] => Some(self.rep.rotation((i + 1) % d)),
            _ => None,
        }
    }
}

/// Builds the edgegon circuit on edge `e` of a simple graph.
pub fn edgegon(host: &SimpleHypergraph, e: usize) -> Circuit {
    let (a, b) = host.edge_ends(e);
    let w = Walk::new(vec![a, b, a], vec![e, e]);
    Circuit::from_closed_walk(&w).expect("edgegon is closed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    Vertex(usize),
    Edge(usize),
    All,
}

fn support_of<H: WalkHost>(host: &H) -> Vec<usize> {
    let mut seen = vec![false; host.num_vertices() + 1];
    for e in 0..host.num_edges() {
        let (a, b) = host.edge_ends(e);
        seen[a] = true;
        seen[b] = true;
    }
    (1..=host.num_vertices()).filter(|&v| seen[v]).collect()
}

fn trails_from<H: WalkHost>(host: &H, start: usize) -> Vec<Walk> {
    let m = host.num_edges();
    assert!(m <= 64, "trail enumeration is for verification scale");
    let mut out = Vec::new();
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    fn rec<H: WalkHost>(
        host: &H,
        start: usize,
        used: u64,
        m: usize,
        vertices: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        out: &mut Vec<Walk>,
    ) {
        if edges.len() == m {
            if *vertices.last().unwrap() == start {
                out.push(Walk::new(vertices.clone(), edges.clone()));
            }
            return;
        }
        let v = *vertices.last().unwrap();
        for e in 0..m {
            if used >> e & 1 == 1 {
                continue;
            }
            if let Some(w) = host.step(e, v) {
                vertices.push(w);
                edges.push(e);
                rec(host, start, used | 1 << e, m, vertices, edges, out);
                vertices.pop();
                edges.pop();
            }
        }
    }
    rec(host, start, 0, m, &mut vertices, &mut edges, &mut out);
    out
}

/// Eulerian trails with the requested anchoring. Returns the empty set when
/// the host is not Eulerian.
pub fn eulerian_trails<H: WalkHost>(host: &H, anchor: Anchor) -> Result<Vec<Walk>, TrailError> {
    match anchor {
        Anchor::Vertex(u) => {
            if u == 0 || u > host.num_vertices() {
                return Err(TrailError::AnchorMissing(u));
            }
            Ok(trails_from(host, u))
        }
        Anchor::Edge(e) => {
            if e >= host.num_edges() {
                return Err(TrailError::AnchorMissing(e));
            }
            let (a, b) = host.edge_ends(e);
            let starts = if host.is_directed() { vec![b] } else { vec![a, b] };
            let mut out = Vec::new();
            for s in starts {
                for w in trails_from(host, s) {
                    if w.edges().last() == Some(&e) {
                        out.push(w);
                    }
                }
            }
            out.sort();
            out.dedup();
            Ok(out)
        }
        Anchor::All => {
            let mut out = Vec::new();
            for s in support_of(host) {
                out.extend(trails_from(host, s));
            }
            Ok(out)
        }
    }
}

/// Eulerian circuits: Eulerian trails up to rotation.
pub fn eulerian_circuits<H: WalkHost>(host: &H) -> Result<Vec<Circuit>, TrailError> {
    let support = support_of(host);
    if support.is_empty() {
        return Ok(Vec::new());
    }
    let mut set = BTreeSet::new();
    for w in trails_from(host, support[0]) {
        set.insert(Circuit::from_closed_walk(&w)?);
    }
    Ok(set.into_iter().collect())
}

/// All cycles (simple closed trails up to rotation, direction-sensitive).
pub fn cycles<H: WalkHost>(host: &H) -> Vec<Circuit> {
    let m = host.num_edges();
    let mut set = BTreeSet::new();
    let mut vertices: Vec<usize> = Vec::new();
    let mut edges: Vec<usize> = Vec::new();
    fn rec<H: WalkHost>(
        host: &H,
        used_edges: u64,
        vertices: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        set: &mut BTreeSet<Circuit>,
    ) {
        let v = *vertices.last().unwrap();
        for e in 0..host.num_edges() {
            if used_edges >> e & 1 == 1 {
                continue;
            }
            if let Some(w) = host.step(e, v) {
                if w == vertices[0] {
                    let mut vs = vertices.clone();
                    vs.push(w);
                    let mut es = edges.clone();
                    es.push(e);
                    let walk = Walk::new(vs, es);
                    set.insert(Circuit::from_closed_walk(&walk).unwrap());
                } else if !vertices.contains(&w) {
                    vertices.push(w);
                    edges.push(e);
                    rec(host, used_edges | 1 << e, vertices, edges, set);
                    vertices.pop();
                    edges.pop();
                }
            }
        }
    }
    assert!(m <= 64);
    for v in support_of(host) {
        vertices.clear();
        vertices.push(v);
        edges.clear();
        rec(host, 0, &mut vertices, &mut edges, &mut set);
    }
    set.into_iter().collect()
}

/// All partitions of the host's edge set into cycles, each partition as a
/// sorted list of circuits.
pub fn cycle_partitions<H: WalkHost>(host: &H) -> Vec<Vec<Circuit>> {
    let all = cycles(host);
    let m = host.num_edges();
    let full: u64 = if m == 64 { !0 } else { (1u64 << m) - 1 };
    let masks: Vec<u64> = all
        .iter()
        .map(|c| c.edge_set().iter().fold(0u64, |acc, &e| acc | 1 << e))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        all: &[Circuit],
        masks: &[u64],
        covered: u64,
        full: u64,
        from: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Circuit>>,
    ) {
        if covered == full {
            out.push(chosen.iter().map(|&i| all[i].clone()).collect());
            return;
        }
        // lowest uncovered edge must be in the next piece
        let low = (!covered & full).trailing_zeros() as u64;
        for i in from..all.len() {
            if masks[i] & covered != 0 || masks[i] >> low & 1 == 0 {
                continue;
            }
            chosen.push(i);
            rec(all, masks, covered | masks[i], full, 0, chosen, out);
            chosen.pop();
        }
    }
    rec(&all, &masks, 0, full, 0, &mut chosen, &mut out);
    for p in &mut out {
        p.sort();
    }
    out.sort();
    out.dedup();
    out
}

/// The unique decomposition of a closed trail (or closed walk, when
/// `trail_mode` is false) into simple closed pieces by iterated
/// first-simple-closed-subtrail extraction.
pub fn cycle_sequence(w: &Walk, trail_mode: bool) -> Result<Vec<Circuit>, TrailError> {
    if !w.is_closed() {
        return Err(TrailError::NotClosed);
    }
    if trail_mode && !w.is_trail() {
        return Err(TrailError::NotTrail);
    }
    let mut current = w.clone();
    let mut out = Vec::new();
    while !current.is_empty() {
        let d = current.len();
        // t = minimum repeated index; s = the earlier twin of v_t
        let mut found: Option<(usize, usize)> = None;
        'outer: for t in 1..=d {
            for s in 0..t {
                if current.vertices[s] == current.vertices[t] {
                    found = Some((s, t));
                    break 'outer;
                }
            }
        }
        let (s, t) = found.expect("closed walk always repeats its base");
        let piece = Walk::new(
            current.vertices[s..=t].to_vec(),
            current.edges[s..t].to_vec(),
        );
        debug_assert!(piece.is_simple_closed());
        out.push(Circuit::from_closed_walk(&piece)?);
        let mut vs = current.vertices[..=s].to_vec();
        vs.extend_from_slice(&current.vertices[t + 1..]);
        let mut es = current.edges[..s].to_vec();
        es.extend_from_slice(&current.edges[t..]);
        current = Walk::new(vs, es);
    }
    Ok(out)
}

/// Insertion of closed walk `w1` into closed walk `w2`: `w1` is spliced in at
/// the first vertex of `w2` lying on `w1`, which must be the base of `w1`.
pub fn insert(w1: &Walk, w2: &Walk, trail_mode: bool) -> Result<Walk, TrailError> {
    if !w1.is_closed() || !w2.is_closed() {
        return Err(TrailError::NotClosed);
    }
    if trail_mode && !w1.edge_set().is_disjoint(&w2.edge_set()) {
        return Err(TrailError::NonInsertable);
    }
    let v1 = w1.vertex_set();
    let j = w2
        .vertices
        .iter()
        .position(|v| v1.contains(v))
        .ok_or(TrailError::NonInsertable)?;
    if w2.vertices[j] != w1.first_vertex() {
        return Err(TrailError::NonInsertable);
    }
    let mut vertices = w2.vertices[..j].to_vec();
    vertices.extend_from_slice(&w1.vertices);
    vertices.extend_from_slice(&w2.vertices[j + 1..]);
    let mut edges = w2.edges[..j].to_vec();
    edges.extend_from_slice(&w1.edges);
    edges.extend_from_slice(&w2.edges[j..]);
    Ok(Walk::new(vertices, edges))
}

/// Insertion of a cycle piece into a closed walk: the piece is rotated to
/// start at the first vertex of `w` it contains.
pub fn cycle_insert(beta: &Circuit, w: &Walk, trail_mode: bool) -> Result<Walk, TrailError> {
    let vb = beta.vertex_set();
    let j = w
        .vertices
        .iter()
        .position(|v| vb.contains(v))
        .ok_or(TrailError::NonInsertable)?;
    let rotated = beta
        .rotation_at_vertex(w.vertices[j])
        .ok_or(TrailError::NonInsertable)?;
    insert(&rotated, w, trail_mode)
}

/// Inverse of [`cycle_sequence`] on trails ending at `e`: rebuilds the unique
/// closed trail with the given cycle sequence, or reports that none exists.
pub fn cs_preimage(b: &[Circuit], e: usize, trail_mode: bool) -> Option<Walk> {
    let last = b.last()?;
    if !last.contains_edge(e) {
        return None;
    }
    let mut w = last.rotation_ending_at_edge(e)?;
    for i in (0..b.len() - 1).rev() {
        w = cycle_insert(&b[i], &w, trail_mode).ok()?;
        let cs = cycle_sequence(&w, trail_mode).ok()?;
        if cs.as_slice() != &b[i..] {
            return None;
        }
    }
    Some(w)
}

/// `|C(D)|` computed by exhaustive circuit enumeration and by the
/// arborescence formula, with the two asserted equal.
pub fn best_count(d: &Digraph) -> Result<BigInt, TrailError> {
    if !d.is_eulerian() || d.num_arcs() == 0 {
        return Err(TrailError::NotEulerian);
    }
    let enumerated = BigInt::from(eulerian_circuits(d)?.len());
    let tau = d.arborescence_count();
    let mut formula = tau;
    for v in d.support() {
        let mut f = BigInt::one();
        for i in 2..d.in_degree(v) {
            f *= i;
        }
        formula *= f;
    }
    assert_eq!(
        enumerated, formula,
        "circuit enumeration disagrees with the arborescence formula"
    );
    Ok(enumerated)
}

/// All closed walks of a simple graph at `u` with length exactly `d`.
pub fn closed_walks_at(g: &SimpleHypergraph, u: usize, d: usize) -> Vec<Walk> {
    let mut out = Vec::new();
    let mut vertices = vec![u];
    let mut edges = Vec::new();
    fn rec(
        g: &SimpleHypergraph,
        u: usize,
        d: usize,
        vertices: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        out: &mut Vec<Walk>,
    ) {
        if edges.len() == d {
            if *vertices.last().unwrap() == u {
                out.push(Walk::new(vertices.clone(), edges.clone()));
            }
            return;
        }
        let v = *vertices.last().unwrap();
        for e in 0..g.num_edges() {
            if let Some(w) = g.step(e, v) {
                vertices.push(w);
                edges.push(e);
                rec(g, u, d, vertices, edges, out);
                vertices.pop();
                edges.pop();
            }
        }
    }
    rec(g, u, d, &mut vertices, &mut edges, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two directed digons sharing vertex 1: e1=(1,2), e2=(2,1), f2=(1,3), f1=(3,1).
    fn two_digon_digraph() -> Digraph {
        Digraph::new(3, vec![(1, 2), (2, 1), (1, 3), (3, 1)])
    }

    /// Two vertices with doubled arcs both ways: e1,e2=(1,2); e3,e4=(2,1).
    fn doubled_digon_digraph() -> Digraph {
        Digraph::new(2, vec![(1, 2), (1, 2), (2, 1), (2, 1)])
    }

    fn k3() -> SimpleHypergraph {
        SimpleHypergraph::new(2, 3, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    #[test]
    fn eulerian_counts_two_digons() {
        let d = two_digon_digraph();
        assert_eq!(eulerian_trails(&d, Anchor::All).unwrap().len(), 4);
        assert_eq!(eulerian_circuits(&d).unwrap().len(), 1);
        assert_eq!(cycles(&d).len(), 2);
        // the listed trail (e1,e2,f2,f1) is among the trails at vertex 1
        let at1 = eulerian_trails(&d, Anchor::Vertex(1)).unwrap();
        assert!(at1.iter().any(|w| w.edges() == [0, 1, 2, 3]));
    }

    #[test]
    fn eulerian_counts_doubled_digon() {
        let d = doubled_digon_digraph();
        assert_eq!(eulerian_trails(&d, Anchor::Vertex(2)).unwrap().len(), 4);
        assert_eq!(eulerian_circuits(&d).unwrap().len(), 2);
        assert_eq!(cycles(&d).len(), 4);
    }

    #[test]
    fn non_veblen_multigraph_has_no_trails() {
        let x = MultiHypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        assert!(eulerian_trails(&x, Anchor::All).unwrap().is_empty());
        assert!(eulerian_circuits(&x).unwrap().is_empty());
        assert!(cycles(&x).is_empty());
    }

    #[test]
    fn digon_multigraph_has_two_circuits() {
        let x = MultiHypergraph::new(2, 2, vec![vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(eulerian_trails(&x, Anchor::All).unwrap().len(), 4);
        assert_eq!(eulerian_circuits(&x).unwrap().len(), 2);
    }

    #[test]
    fn cycle_sequence_of_simple_trail_is_singleton() {
        let d = two_digon_digraph();
        let w = Walk::new(vec![1, 2, 1], vec![0, 1]);
        let cs = cycle_sequence(&w, true).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0], Circuit::from_closed_walk(&w).unwrap());
        let _ = d;
    }

    #[test]
    fn cycle_sequence_rejects_open_walks() {
        let w = Walk::new(vec![1, 2], vec![0]);
        assert_eq!(cycle_sequence(&w, true), Err(TrailError::NotClosed));
    }

    #[test]
    fn insertion_example_from_three_trails() {
        // digraph on vertices 1,2,3 with arcs g1=(2,1), g2=(1,2), e2=(2,3),
        // e1=(3,2), f2=(3,1), f1=(1,3)
        // w1 = (2,g1,1,g2,2), w2 = (3,f2,1,f1,3), w3 = (2,e2,3,e1,2)
        let g1 = 0usize;
        let g2 = 1;
        let e2 = 2;
        let e1 = 3;
        let f2 = 4;
        let f1 = 5;
        let w1 = Walk::new(vec![2, 1, 2], vec![g1, g2]);
        let w2 = Walk::new(vec![3, 1, 3], vec![f2, f1]);
        let w3 = Walk::new(vec![2, 3, 2], vec![e2, e1]);
        let w23 = insert(&w2, &w3, true).unwrap();
        assert_eq!(w23.vertices(), &[2, 3, 1, 3, 2]);
        assert_eq!(w23.edges(), &[e2, f2, f1, e1]);
        let w123 = insert(&w1, &w23, true).unwrap();
        assert_eq!(w123.vertices(), &[2, 1, 2, 3, 1, 3, 2]);
        assert_eq!(w123.edges(), &[g1, g2, e2, f2, f1, e1]);
        // (w1 . w2) is undefined: w2 first visits {1,2} at 1, but w1 is based at 2
        assert_eq!(insert(&w1, &w2, true), Err(TrailError::NonInsertable));
        // insertion then cycle sequence concatenates
        let cs = cycle_sequence(&w123, true).unwrap();
        assert_eq!(
            cs,
            vec![
                Circuit::from_closed_walk(&w1).unwrap(),
                Circuit::from_closed_walk(&w2).unwrap(),
                Circuit::from_closed_walk(&w3).unwrap(),
            ]
        );
    }

    #[test]
    fn closed_walk_cycle_sequence_with_edgegons() {
        // (1,e,2,e,1,g,3,g,1) on K3 with e={1,2} (id 0), g={1,3} (id 1)
        let g = k3();
        let w = Walk::new(vec![1, 2, 1, 3, 1], vec![0, 0, 1, 1]);
        let cs = cycle_sequence(&w, false).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], edgegon(&g, 0));
        assert_eq!(cs[1], edgegon(&g, 1));
    }

    #[test]
    fn cs_preimage_round_trips() {
        let d = doubled_digon_digraph();
        // b = (cycle e1e3, cycle e2e4), anchored at e4
        let c13 = Circuit::from_closed_walk(&Walk::new(vec![1, 2, 1], vec![0, 2])).unwrap();
        let c24 = Circuit::from_closed_walk(&Walk::new(vec![1, 2, 1], vec![1, 3])).unwrap();
        let w = cs_preimage(&[c13.clone(), c24.clone()], 3, true).unwrap();
        assert_eq!(cycle_sequence(&w, true).unwrap(), vec![c13.clone(), c24.clone()]);
        assert_eq!(w.edges().last(), Some(&3));
        let _ = d;
        // single cycle
        let w = cs_preimage(&[c13.clone()], 2, true).unwrap();
        assert_eq!(w.edges(), &[0, 2]);
        // vertex-disjoint cycles can not be assembled
        let far = Circuit::from_closed_walk(&Walk::new(vec![5, 6, 5], vec![8, 9])).unwrap();
        assert_eq!(cs_preimage(&[far, c24], 3, true), None);
    }

    #[test]
    fn cs_is_injective_on_anchored_trails() {
        let d = doubled_digon_digraph();
        for e in 0..4 {
            let trails = eulerian_trails(&d, Anchor::Edge(e)).unwrap();
            let mut seqs = BTreeSet::new();
            for w in &trails {
                let cs = cycle_sequence(w, true).unwrap();
                assert!(cs.last().unwrap().contains_edge(e));
                assert!(seqs.insert(cs), "cycle sequences must be distinct");
            }
        }
    }

    #[test]
    fn best_counts() {
        assert_eq!(
            best_count(&Digraph::new(2, vec![(1, 2), (2, 1)])).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            best_count(&doubled_digon_digraph()).unwrap(),
            BigInt::from(2)
        );
        let k3bi = Digraph::new(3, vec![(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)]);
        assert_eq!(best_count(&k3bi).unwrap(), BigInt::from(3));
        assert!(best_count(&Digraph::new(2, vec![(1, 2)])).is_err());
    }

    #[test]
    fn anchored_trail_counts_match_circuit_counts() {
        let d = doubled_digon_digraph();
        let c = eulerian_circuits(&d).unwrap().len();
        for e in 0..4 {
            assert_eq!(eulerian_trails(&d, Anchor::Edge(e)).unwrap().len(), c);
        }
        for u in 1..=2 {
            assert_eq!(
                eulerian_trails(&d, Anchor::Vertex(u)).unwrap().len(),
                d.in_degree(u) * c
            );
        }
    }

    #[test]
    fn closed_walk_enumeration_counts() {
        let g = k3();
        let counts: Vec<usize> = (0..=4).map(|d| closed_walks_at(&g, 1, d).len()).collect();
        assert_eq!(counts, vec![1, 0, 2, 2, 6]);
    }

    #[test]
    fn cycle_partitions_cover() {
        let d = doubled_digon_digraph();
        let parts = cycle_partitions(&d);
        // pair up {e1,e2} x {e3,e4}: 2 partitions
        assert_eq!(parts.len(), 2);
        for p in parts {
            let mut all: Vec<usize> = p.iter().flat_map(|c| c.edge_set()).collect();
            all.sort();
            assert_eq!(all, vec![0, 1, 2, 3]);
        }
    }
}
