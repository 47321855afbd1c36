//! Multi-hypergraphs, simple hypergraphs, and their basic invariants:
//! flattening, multiplicities, Veblen degree checks, components, subgraph
//! copy counts, automorphisms and canonical keys.
//!
//! Vertices are dense integers `1..=n`. An edge is a sorted set of `k`
//! distinct vertices; edge identity is positional, so parallel edges are
//! simply repeated entries in the edge list.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {0:?} does not have {1} distinct vertices")]
    DegenerateEdge(Vec<usize>, usize),
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("operation requires rank 2, got rank {0}")]
    RankNotTwo(usize),
    #[error("duplicate edge {0:?} in simple hypergraph")]
    DuplicateEdge(Vec<usize>),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn check_edge(rank: usize, n: usize, edge: &[usize]) -> Result<Vec<usize>, HypergraphError> {
    let set: BTreeSet<usize> = edge.iter().copied().collect();
    if set.len() != rank || edge.len() != rank {
        return Err(HypergraphError::DegenerateEdge(edge.to_vec(), rank));
    }
    for &v in edge {
        if v == 0 || v > n {
            return Err(HypergraphError::VertexOutOfRange(v, n));
        }
    }
    Ok(set.into_iter().collect())
}

/// Rank-k multi-hypergraph; parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiHypergraph {
    rank: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Rank-k simple hypergraph; edge set with no duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleHypergraph {
    rank: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl MultiHypergraph {
    pub fn new(rank: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        assert!(rank >= 2, "rank must be at least 2");
        let edges = edges
            .into_iter()
            .map(|e| check_edge(rank, n, &e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiHypergraph { rank, n, edges })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Vertices incident to at least one edge, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut s: BTreeSet<usize> = BTreeSet::new();
        for e in &self.edges {
            s.extend(e.iter().copied());
        }
        s.into_iter().collect()
    }

    /// Multiplicity of each parallel class, keyed by the underlying set.
    pub fn multiplicity_map(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for e in &self.edges {
            *m.entry(e.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Flattening: one edge per parallel class, the class multiplicities, and
    /// `M_X` = product of multiplicity factorials.
    pub fn flatten(&self) -> (SimpleHypergraph, Vec<usize>, BigInt) {
        let map = self.multiplicity_map();
        let mut m_x = BigInt::one();
        let mut edges = Vec::with_capacity(map.len());
        let mut mults = Vec::with_capacity(map.len());
        for (e, m) in map {
            edges.push(e);
            mults.push(m);
            m_x *= factorial(m);
        }
        let flat = SimpleHypergraph {
            rank: self.rank,
            n: self.n,
            edges,
        };
        (flat, mults, m_x)
    }

    /// All `2^|E|` orientations of a rank-2 multigraph, in the deterministic
    /// order given by reading the direction bits of each edge in sequence.
    pub fn orientations(&self) -> Result<Vec<Digraph>, HypergraphError> {
        if self.rank != 2 {
            return Err(HypergraphError::RankNotTwo(self.rank));
        }
        let m = self.edges.len();
        assert!(m < 32, "orientation enumeration is for small graphs");
        let mut out = Vec::with_capacity(1 << m);
        for bits in 0u32..(1 << m) {
            let arcs: Vec<(usize, usize)> = self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    if bits >> i & 1 == 0 {
                        (e[0], e[1])
                    } else {
                        (e[1], e[0])
                    }
                })
                .collect();
            out.push(Digraph::new(self.n, arcs));
        }
        Ok(out)
    }

    /// Veblen check: every vertex degree divisible by the rank. Components
    /// are computed on the support only.
    pub fn veblen_check(&self) -> (bool, Vec<Vec<usize>>) {
        let is_veblen = (1..=self.n).all(|v| self.degree(v) % self.rank == 0);
        (is_veblen, self.components())
    }

    /// Connected components of the support.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let support = self.support();
        let index: BTreeMap<usize, usize> =
            support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut dsu: Vec<usize> = (0..support.len()).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        for e in &self.edges {
            let a = index[&e[0]];
            for &v in &e[1..] {
                let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, index[&v]));
                dsu[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &v) in support.iter().enumerate() {
            groups.entry(find(&mut dsu, i)).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// `|Aut(flattening)|` and `|Aut(X)|`, both as counts of support vertex
    /// bijections: the first preserves the flattened edge set, the second the
    /// full multiplicity function.
    pub fn automorphism_counts(&self) -> (u64, u64) {
        let support = self.support();
        let mult = self.multiplicity_map();
        let flat_set: BTreeSet<Vec<usize>> = mult.keys().cloned().collect();
        let mut aut_flat = 0u64;
        let mut aut_multi = 0u64;
        for perm in permutations(&support) {
            let map: BTreeMap<usize, usize> =
                support.iter().copied().zip(perm.iter().copied()).collect();
            let mut ok_flat = true;
            let mut ok_multi = true;
            for (e, m) in &mult {
                let mut img: Vec<usize> = e.iter().map(|v| map[v]).collect();
                img.sort_unstable();
                if !flat_set.contains(&img) {
                    ok_flat = false;
                    ok_multi = false;
                    break;
                }
                if mult.get(&img) != Some(m) {
                    ok_multi = false;
                }
            }
            if ok_flat {
                aut_flat += 1;
            }
            if ok_multi {
                aut_multi += 1;
            }
        }
        (aut_flat, aut_multi)
    }

    /// Canonical key under isomorphism, computed on the support (isolated
    /// vertices are ignored). Equal keys iff the supports are isomorphic as
    /// labeled multi-hypergraphs.
    pub fn iso_key(&self) -> CanonicalKey {
        let support = self.support();
        let mult = self.multiplicity_map();
        let mut best: Option<Vec<(Vec<usize>, usize)>> = None;
        for perm in permutations(&support) {
            let mut map: BTreeMap<usize, usize> = BTreeMap::new();
            for (slot, &v) in perm.iter().enumerate() {
                map.insert(v, slot + 1);
            }
            let mut enc: Vec<(Vec<usize>, usize)> = mult
                .iter()
                .map(|(e, m)| {
                    let mut img: Vec<usize> = e.iter().map(|v| map[v]).collect();
                    img.sort_unstable();
                    (img, *m)
                })
                .collect();
            enc.sort();
            if best.as_ref().map_or(true, |b| &enc < b) {
                best = Some(enc);
            }
        }
        CanonicalKey::encode(self.rank, support.len(), &best.unwrap_or_default())
    }

    /// Key for vertex-fixing equivalence: for a fixed vertex set this is
    /// exactly equality of multiplicity functions.
    pub fn approx_key(&self) -> CanonicalKey {
        let enc: Vec<(Vec<usize>, usize)> = self.multiplicity_map().into_iter().collect();
        CanonicalKey::encode(self.rank, self.n, &enc)
    }

    /// The disjoint union; the right operand's vertices are shifted.
    pub fn disjoint_union(&self, other: &MultiHypergraph) -> MultiHypergraph {
        assert_eq!(self.rank, other.rank);
        let mut edges = self.edges.clone();
        for e in &other.edges {
            edges.push(e.iter().map(|v| v + self.n).collect());
        }
        MultiHypergraph {
            rank: self.rank,
            n: self.n + other.n,
            edges,
        }
    }
}

impl SimpleHypergraph {
    pub fn new(rank: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        assert!(rank >= 2, "rank must be at least 2");
        let mut seen = BTreeSet::new();
        let mut checked = Vec::with_capacity(edges.len());
        for e in edges {
            let e = check_edge(rank, n, &e)?;
            if !seen.insert(e.clone()) {
                return Err(HypergraphError::DuplicateEdge(e));
            }
            checked.push(e);
        }
        checked.sort();
        Ok(SimpleHypergraph {
            rank,
            n,
            edges: checked,
        })
    }

    /// Complete k-uniform hypergraph on n vertices.
    pub fn complete(rank: usize, n: usize) -> Self {
        let mut edges = Vec::new();
        let mut choose = vec![0usize; rank];
        fn rec(
            rank: usize,
            n: usize,
            start: usize,
            depth: usize,
            choose: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if depth == rank {
                out.push(choose.clone());
                return;
            }
            for v in start..=n {
                choose[depth] = v;
                rec(rank, n, v + 1, depth + 1, choose, out);
            }
        }
        rec(rank, n, 1, 0, &mut choose, &mut edges);
        SimpleHypergraph { rank, n, edges }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, e: &[usize]) -> Option<usize> {
        let mut key = e.to_vec();
        key.sort_unstable();
        self.edges.iter().position(|f| *f == key)
    }

    pub fn to_multi(&self) -> MultiHypergraph {
        MultiHypergraph {
            rank: self.rank,
            n: self.n,
            edges: self.edges.clone(),
        }
    }

    /// Spanning subgraph with edge `i` removed (vertex set kept).
    pub fn delete_edge(&self, i: usize) -> SimpleHypergraph {
        let mut edges = self.edges.clone();
        edges.remove(i);
        SimpleHypergraph {
            rank: self.rank,
            n: self.n,
            edges,
        }
    }

    /// Deletes vertex `v` together with all incident edges; remaining
    /// vertices are renumbered densely.
    pub fn delete_vertex(&self, v: usize) -> SimpleHypergraph {
        assert!(v >= 1 && v <= self.n);
        let relabel = |w: usize| if w > v { w - 1 } else { w };
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| !e.contains(&v))
            .map(|e| e.iter().map(|&w| relabel(w)).collect())
            .collect();
        SimpleHypergraph {
            rank: self.rank,
            n: self.n - 1,
            edges,
        }
    }

    /// Number of subgraphs of `self` isomorphic to `pattern` (both simple).
    pub fn count_copies_of(&self, pattern: &SimpleHypergraph) -> Result<u64, HypergraphError> {
        if self.rank != pattern.rank {
            return Err(HypergraphError::RankMismatch(pattern.rank, self.rank));
        }
        let d = pattern.num_edges();
        if d == 0 {
            return Ok(1);
        }
        let target = pattern.to_multi().iso_key();
        let mut count = 0u64;
        let mut chosen: Vec<usize> = Vec::with_capacity(d);
        fn rec(
            host: &SimpleHypergraph,
            target: &CanonicalKey,
            d: usize,
            start: usize,
            chosen: &mut Vec<usize>,
            count: &mut u64,
        ) {
            if chosen.len() == d {
                let sub = MultiHypergraph {
                    rank: host.rank,
                    n: host.n,
                    edges: chosen.iter().map(|&i| host.edges[i].clone()).collect(),
                };
                if &sub.iso_key() == target {
                    *count += 1;
                }
                return;
            }
            for i in start..host.edges.len() {
                chosen.push(i);
                rec(host, target, d, i + 1, chosen, count);
                chosen.pop();
            }
        }
        rec(self, &target, d, 0, &mut chosen, &mut count);
        Ok(count)
    }
}

/// Opaque canonical key; equal keys identify equivalent objects.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    fn encode(rank: usize, n: usize, enc: &[(Vec<usize>, usize)]) -> CanonicalKey {
        let mut bytes = vec![rank as u8, n as u8];
        for (e, m) in enc {
            bytes.push(255);
            bytes.push(*m as u8);
            for &v in e {
                bytes.push(v as u8);
            }
        }
        CanonicalKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    f
}

/// All permutations of a slice, deterministic order.
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut current = items.to_vec();
    fn rec<T: Clone>(current: &mut Vec<T>, k: usize, out: &mut Vec<Vec<T>>) {
        if k == current.len() {
            out.push(current.clone());
            return;
        }
        for i in k..current.len() {
            current.swap(k, i);
            rec(current, k + 1, out);
            current.swap(k, i);
        }
    }
    rec(&mut current, 0, &mut out);
    out
}

/// Parses the hypergraph text format: first non-comment line `k n`, then one
/// edge per line as `k` vertex ids; `#` starts a comment.
pub fn parse_hypergraph(text: &str, allow_parallel: bool) -> Result<MultiHypergraph, HypergraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| HypergraphError::Parse {
                    line: lineno + 1,
                    msg: format!("bad integer {t:?}"),
                })
            })
            .collect::<Result<_, _>>()?;
        match header {
            None => {
                if nums.len() != 2 || nums[0] < 2 {
                    return Err(HypergraphError::Parse {
                        line: lineno + 1,
                        msg: "expected header `k n` with k >= 2".to_string(),
                    });
                }
                header = Some((nums[0], nums[1]));
            }
            Some((k, _n)) => {
                if nums.len() != k {
                    return Err(HypergraphError::Parse {
                        line: lineno + 1,
                        msg: format!("expected {k} vertex ids"),
                    });
                }
                let mut e = nums;
                e.sort_unstable();
                if !allow_parallel && !seen.insert(e.clone()) {
                    return Err(HypergraphError::Parse {
                        line: lineno + 1,
                        msg: format!("duplicate edge {e:?} in simple host"),
                    });
                }
                edges.push(e);
            }
        }
    }
    let (k, n) = header.ok_or(HypergraphError::Parse {
        line: 0,
        msg: "missing header".to_string(),
    })?;
    MultiHypergraph::new(k, n, edges)
}

/// Parses a simple host (duplicate edge lines rejected).
pub fn parse_simple_host(text: &str) -> Result<SimpleHypergraph, HypergraphError> {
    let multi = parse_hypergraph(text, false)?;
    SimpleHypergraph::new(multi.rank(), multi.num_vertices(), multi.edges().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn triangle() -> SimpleHypergraph {
        SimpleHypergraph::new(2, 3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap()
    }

    fn k4() -> SimpleHypergraph {
        SimpleHypergraph::complete(2, 4)
    }

    #[test]
    fn flatten_parallel_class() {
        let x = MultiHypergraph::new(3, 3, vec![vec![1, 2, 3]; 3]).unwrap();
        let (flat, mults, m_x) = x.flatten();
        assert_eq!(flat.num_edges(), 1);
        assert_eq!(mults, vec![3]);
        assert_eq!(m_x.to_u64(), Some(6));

        let x6 = MultiHypergraph::new(3, 3, vec![vec![1, 2, 3]; 6]).unwrap();
        assert_eq!(x6.flatten().2.to_u64(), Some(720));
    }

    #[test]
    fn flatten_simple_is_identity() {
        let g = triangle().to_multi();
        let (flat, mults, m_x) = g.flatten();
        assert_eq!(flat.edges(), g.edges());
        assert!(mults.iter().all(|&m| m == 1));
        assert!(m_x.is_one());
        // idempotent on its simple output
        let (flat2, _, m2) = flat.to_multi().flatten();
        assert_eq!(flat2, flat);
        assert!(m2.is_one());
    }

    #[test]
    fn orientation_counts() {
        let single = MultiHypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        assert_eq!(single.orientations().unwrap().len(), 2);
        let path = MultiHypergraph::new(2, 3, vec![vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(path.orientations().unwrap().len(), 4);
        // digon: 4 orientations, exactly 2 Eulerian
        let digon = MultiHypergraph::new(2, 2, vec![vec![1, 2], vec![1, 2]]).unwrap();
        let os = digon.orientations().unwrap();
        assert_eq!(os.len(), 4);
        let eulerian = os.iter().filter(|d| d.is_eulerian()).count();
        assert_eq!(eulerian, 2);
        let k3 = MultiHypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(k3.orientations(), Err(HypergraphError::RankNotTwo(3)));
    }

    #[test]
    fn copy_counts_in_k4() {
        let edge = SimpleHypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        assert_eq!(k4().count_copies_of(&edge).unwrap(), 6);
        assert_eq!(k4().count_copies_of(&triangle()).unwrap(), 4);
        assert_eq!(triangle().count_copies_of(&triangle()).unwrap(), 1);
    }

    #[test]
    fn copy_count_tight_pair_in_complete_3_uniform() {
        // two 3-edges sharing two vertices, inside the complete 3-uniform host on 4 vertices
        let pair = SimpleHypergraph::new(3, 4, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        let host = SimpleHypergraph::complete(3, 4);
        assert_eq!(host.count_copies_of(&pair).unwrap(), 6);
    }

    #[test]
    fn automorphisms() {
        assert_eq!(triangle().to_multi().automorphism_counts(), (6, 6));
        let e3 = MultiHypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(e3.automorphism_counts(), (6, 6));
        let e4 = MultiHypergraph::new(4, 4, vec![vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(e4.automorphism_counts().1, 24);
        // 6 copies of {1,2,3} and 3 copies of {1,2,4}: flattening has the
        // edge swap, the multiplicity function does not
        let mut edges = vec![vec![1, 2, 3]; 6];
        edges.extend(vec![vec![1, 2, 4]; 3]);
        let pound = MultiHypergraph::new(3, 4, edges).unwrap();
        let (aut_flat, aut_multi) = pound.automorphism_counts();
        assert_eq!(aut_flat, 4);
        assert_eq!(aut_multi, 2);
        assert_eq!(aut_flat / aut_multi, 2);
    }

    #[test]
    fn veblen_checks() {
        let x = MultiHypergraph::new(3, 3, vec![vec![1, 2, 3]; 3]).unwrap();
        let (ok, comps) = x.veblen_check();
        assert!(ok);
        assert_eq!(comps.len(), 1);
        let single = MultiHypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert!(!single.veblen_check().0);
        let digon = MultiHypergraph::new(2, 2, vec![vec![1, 2]; 2]).unwrap();
        let (ok, comps) = digon.veblen_check();
        assert!(ok);
        assert_eq!(comps, vec![vec![1, 2]]);
    }

    #[test]
    fn parse_round_trip() {
        let text = "# a host\n2 4\n1 2\n2 3 # comment\n3 4\n";
        let h = parse_simple_host(text).unwrap();
        assert_eq!(h.num_edges(), 3);
        assert_eq!(h.num_vertices(), 4);
        let dup = "2 3\n1 2\n1 2\n";
        assert!(parse_simple_host(dup).is_err());
        let multi = parse_hypergraph(dup, true).unwrap();
        assert_eq!(multi.num_edges(), 2);
    }

    #[test]
    fn canonical_key_matches_brute_force_on_small_multigraphs() {
        // all multigraphs with <= 3 vertices and <= 4 edges here; the 4-vertex
        // 5-edge sweep lives in the integration suite
        let pair_types = |n: usize| -> Vec<Vec<usize>> {
            let mut ps = Vec::new();
            for a in 1..=n {
                for b in (a + 1)..=n {
                    ps.push(vec![a, b]);
                }
            }
            ps
        };
        let mut family: Vec<MultiHypergraph> = Vec::new();
        for n in 1..=3usize {
            let types = pair_types(n);
            let t = types.len();
            // multisets of size <= 4 over `t` edge types
            let mut stack = vec![(0usize, Vec::<usize>::new())];
            while let Some((i, counts)) = stack.pop() {
                if i == t {
                    let mut edges = Vec::new();
                    for (j, &c) in counts.iter().enumerate() {
                        for _ in 0..c {
                            edges.push(types[j].clone());
                        }
                    }
                    family.push(MultiHypergraph::new(2, n, edges).unwrap());
                    continue;
                }
                let used: usize = counts.iter().sum();
                for c in 0..=(4 - used) {
                    let mut next = counts.clone();
                    next.push(c);
                    stack.push((i + 1, next));
                }
            }
        }
        let brute_iso = |x: &MultiHypergraph, y: &MultiHypergraph| -> bool {
            let sx = x.support();
            let sy = y.support();
            if sx.len() != sy.len() || x.num_edges() != y.num_edges() {
                return false;
            }
            let mx = x.multiplicity_map();
            let my = y.multiplicity_map();
            permutations(&sy).into_iter().any(|perm| {
                let map: BTreeMap<usize, usize> =
                    sx.iter().copied().zip(perm.iter().copied()).collect();
                mx.iter().all(|(e, m)| {
                    let mut img: Vec<usize> = e.iter().map(|v| map[v]).collect();
                    img.sort_unstable();
                    my.get(&img) == Some(m)
                })
            })
        };
        let keys: Vec<CanonicalKey> = family.iter().map(|g| g.iso_key()).collect();
        for i in 0..family.len() {
            for j in (i + 1)..family.len() {
                assert_eq!(
                    keys[i] == keys[j],
                    brute_iso(&family[i], &family[j]),
                    "key/iso disagreement"
                );
            }
        }
    }
}
