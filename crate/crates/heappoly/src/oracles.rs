//! Independent verifiers: a small Macaulay resultant for rank-3 hosts on at
//! most 3 vertices, raw-definition recounts (rootings, decompositions,
//! walk-pyramid round trips) and the connected Eulerian digraph family used
//! by the bijection sweeps.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::hyper::{decomposition_classes, enumerate_infragraphs, eulerian_rootings, Infragraph};
use crate::hypergraph::{permutations, MultiHypergraph};
use crate::series::{rint, Rat};
use crate::trails::{cycle_partitions, eulerian_trails, Anchor};
use crate::SimpleHypergraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("resultant oracle supports only rank 3 on at most 3 vertices")]
    InstanceTooLarge,
    #[error("Macaulay minor is singular for this instance")]
    SingularMinor,
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over the rationals, ascending coefficients

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, Rat::is_zero) {
        p.pop();
    }
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Option<Vec<Rat>> {
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    if den.iter().all(Rat::is_zero) {
        return None;
    }
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if rem.len() < den.len() {
        return rem.iter().all(Rat::is_zero).then(|| vec![Rat::zero()]);
    }
    let mut q = vec![Rat::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone() / lead.clone();
        q[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i - dd + j] -= t;
        }
    }
    rem.iter().all(Rat::is_zero).then(|| {
        poly_trim(&mut q);
        q
    })
}

/// Lagrange interpolation through `(i, values[i])` for `i = 0..values.len()`.
fn interpolate(values: &[Rat]) -> Vec<Rat> {
    let n = values.len();
    let mut result = vec![Rat::zero(); n];
    for (i, v) in values.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - j) / (i - j)
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * rint(j as i64);
            }
            basis = next;
            denom *= rint(i as i64 - j as i64);
        }
        let scale = v / denom;
        for (d, c) in basis.iter().enumerate() {
            result[d] += c * &scale;
        }
    }
    poly_trim(&mut result);
    result
}

fn rational_det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k].clone();
        let inv = m[k][k].clone();
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone() / inv.clone();
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// Macaulay resultant for n quadrics in n variables (n <= 3, rank 3)

fn monomials_of_degree(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(n: usize, pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == n - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(n, pos + 1, left - e, cur, out);
        }
    }
    rec(n, 0, d, &mut cur, &mut out);
    out
}

/// Characteristic polynomial of a rank-3 host on `n <= 3` vertices via the
/// Macaulay resultant of `t x_i^2 - (A x^2)_i`, exact over the rationals.
/// Returns coefficients by ascending degree; the degree is `n 2^(n-1)`.
pub fn resultant_charpoly(host: &SimpleHypergraph) -> Result<Vec<Rat>, OracleError> {
    let n = host.num_vertices();
    if host.rank() != 3 || n == 0 || n > 3 {
        return Err(OracleError::InstanceTooLarge);
    }
    // F_i = t x_i^2 - sum over edges containing i of the product of the
    // other two variables; each F is a vector over degree-2 monomials with
    // linear-in-t entries (c0, c1) meaning c0 + c1 t.
    let deg2 = monomials_of_degree(n, 2);
    let midx2: BTreeMap<Vec<usize>, usize> = deg2
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut systems: Vec<Vec<(Rat, Rat)>> = vec![vec![(Rat::zero(), Rat::zero()); deg2.len()]; n];
    for i in 0..n {
        let mut sq = vec![0usize; n];
        sq[i] = 2;
        systems[i][midx2[&sq]].1 = Rat::one();
        for e in host.edges() {
            if !e.contains(&(i + 1)) {
                continue;
            }
            let mut mono = vec![0usize; n];
            for &v in e.iter().filter(|&&v| v != i + 1) {
                mono[v - 1] += 1;
            }
            systems[i][midx2[&mono]].0 -= Rat::one();
        }
    }
    // Macaulay degree: sum (d_i - 1) + 1 = n + 1
    let d_total = n + 1;
    let monos = monomials_of_degree(n, d_total);
    let midx: BTreeMap<Vec<usize>, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    // row for monomial alpha: (alpha / x_i^2) * F_i with i minimal such that
    // x_i^2 divides alpha
    let size = monos.len();
    let mut rows: Vec<Vec<(Rat, Rat)>> = vec![vec![(Rat::zero(), Rat::zero()); size]; size];
    let mut reduced = vec![false; size];
    for (r, alpha) in monos.iter().enumerate() {
        let divisors: Vec<usize> = (0..n).filter(|&i| alpha[i] >= 2).collect();
        reduced[r] = divisors.len() == 1;
        let i = *divisors.first().expect("degree n+1 monomial has a square");
        for (m2, coef) in systems[i].iter().enumerate() {
            if coef.0.is_zero() && coef.1.is_zero() {
                continue;
            }
            let mut target = alpha.clone();
            target[i] -= 2;
            for (v, e) in deg2[m2].iter().enumerate() {
                target[v] += e;
            }
            let c = midx[&target];
            rows[r][c].0 += &coef.0;
            rows[r][c].1 += &coef.1;
        }
    }
    // determinant of the full matrix and of the non-reduced minor, both as
    // polynomials in t by interpolation
    let eval_det = |keep: &dyn Fn(usize) -> bool, t: &Rat| -> Rat {
        let idx: Vec<usize> = (0..size).filter(|&r| keep(r)).collect();
        let m: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&r| {
                idx.iter()
                    .map(|&c| &rows[r][c].0 + &rows[r][c].1 * t)
                    .collect()
            })
            .collect();
        rational_det(m)
    };
    let full_points: Vec<Rat> = (0..=size as i64).map(|t| eval_det(&|_| true, &rint(t))).collect();
    let det_full = interpolate(&full_points);
    let minor_size = reduced.iter().filter(|&&x| !x).count();
    let minor_points: Vec<Rat> = (0..=minor_size as i64)
        .map(|t| eval_det(&|r| !reduced[r], &rint(t)))
        .collect();
    let det_minor = interpolate(&minor_points);
    if det_minor.iter().all(Rat::is_zero) {
        return Err(OracleError::SingularMinor);
    }
    let mut res = poly_div_exact(&det_full, &det_minor).ok_or(OracleError::SingularMinor)?;
    // normalize to a monic polynomial of the lawful degree
    let expected_degree = n * (1 << (n - 1));
    poly_trim(&mut res);
    assert_eq!(
        res.len() - 1,
        expected_degree,
        "resultant degree must be n (k-1)^(n-1)"
    );
    let lead = res.last().unwrap().clone();
    assert!(!lead.is_zero());
    for c in res.iter_mut() {
        *c = c.clone() / lead.clone();
    }
    res.resize(expected_degree + 1, Rat::zero());
    Ok(res)
}

// ---------------------------------------------------------------------------
// connected Eulerian digraph family

/// All connected Eulerian digraphs with `2..=max_arcs` arcs, one per
/// isomorphism class. Generated by walking closed vertex sequences (each
/// such digraph is recovered from any of its circuits) and deduplicated by
/// canonical key.
pub fn connected_eulerian_digraphs(max_arcs: usize) -> Vec<Digraph> {
    assert!(max_arcs <= 10, "family generation is exponential");
    let mut by_arcs: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for m in 2..=max_arcs {
        let mut seq = vec![1usize];
        walk(&mut seq, 1, m, &mut by_arcs);
    }
    fn walk(
        seq: &mut Vec<usize>,
        max_used: usize,
        m: usize,
        out: &mut BTreeSet<Vec<(usize, usize)>>,
    ) {
        let last = *seq.last().unwrap();
        if seq.len() == m {
            if last != 1 {
                let mut arcs: Vec<(usize, usize)> = seq
                    .windows(2)
                    .map(|w| (w[0], w[1]))
                    .chain(std::iter::once((last, 1)))
                    .collect();
                arcs.sort_unstable();
                out.insert(arcs);
            }
            return;
        }
        for v in 1..=(max_used + 1).min(m) {
            if v == last {
                continue;
            }
            seq.push(v);
            walk(seq, max_used.max(v), m, out);
            seq.pop();
        }
    }
    let mut seen_keys = BTreeSet::new();
    let mut out = Vec::new();
    for arcs in by_arcs {
        let n = arcs.iter().map(|&(a, b)| a.max(b)).max().unwrap();
        let d = Digraph::new(n, arcs);
        debug_assert!(d.is_eulerian());
        if seen_keys.insert(d.iso_key()) {
            out.push(d);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// recount checkpoints

/// Outcome of one raw-definition recount.
#[derive(Clone, Debug)]
pub struct RecountReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl RecountReport {
    fn new(name: &str) -> Self {
        RecountReport {
            name: name.to_string(),
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.passed = false;
        }
        self.details
            .push(format!("{} {}", if ok { "ok " } else { "FAIL" }, detail));
    }
}

/// Recounts Eulerian rooting classes of `x` from raw root assignments,
/// including literal permutation-deduplication of the star blocks.
pub fn recount_rootings(x: &MultiHypergraph) -> RecountReport {
    let mut report = RecountReport::new("raw-rootings");
    assert!(x.num_edges() <= 6, "raw rooting recount is exponential");
    let classes = match eulerian_rootings(x) {
        Ok(c) => c,
        Err(e) => {
            report.check(false, format!("rooting enumeration failed: {e}"));
            return report;
        }
    };
    // raw assignments: each edge copy picks a root among its vertices
    let edges = x.edges();
    let mut matrices: BTreeMap<Vec<Vec<usize>>, usize> = BTreeMap::new();
    let vertices = x.support();
    let vidx: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let classes_list: Vec<(Vec<usize>, usize)> = x.multiplicity_map().into_iter().collect();
    let cidx: BTreeMap<Vec<usize>, usize> = classes_list
        .iter()
        .enumerate()
        .map(|(i, (e, _))| (e.clone(), i))
        .collect();
    let mut assignment = vec![0usize; edges.len()];
    let mut eulerian_assignments = 0usize;
    fn rec(
        x: &MultiHypergraph,
        edges: &[Vec<usize>],
        pos: usize,
        assignment: &mut Vec<usize>,
        vidx: &BTreeMap<usize, usize>,
        cidx: &BTreeMap<Vec<usize>, usize>,
        nv: usize,
        nc: usize,
        matrices: &mut BTreeMap<Vec<Vec<usize>>, usize>,
        eulerian_assignments: &mut usize,
    ) {
        if pos == edges.len() {
            // Eulerian iff every vertex roots degree/k stars
            let k = x.rank();
            for &v in x.support().iter() {
                let rooted = (0..edges.len())
                    .filter(|&i| edges[i][assignment[i]] == v)
                    .count();
                if rooted * k != x.degree(v) {
                    return;
                }
            }
            *eulerian_assignments += 1;
            let mut matrix = vec![vec![0usize; nc]; nv];
            for (i, e) in edges.iter().enumerate() {
                matrix[vidx[&e[assignment[i]]]][cidx[e]] += 1;
            }
            *matrices.entry(matrix).or_insert(0) += 1;
            return;
        }
        for a in 0..edges[pos].len() {
            assignment[pos] = a;
            rec(
                x,
                edges,
                pos + 1,
                assignment,
                vidx,
                cidx,
                nv,
                nc,
                matrices,
                eulerian_assignments,
            );
        }
    }
    rec(
        x,
        edges,
        0,
        &mut assignment,
        &vidx,
        &cidx,
        vertices.len(),
        classes_list.len(),
        &mut matrices,
        &mut eulerian_assignments,
    );
    report.check(
        matrices.len() == classes.len(),
        format!(
            "class count: raw {} vs enumerated {}",
            matrices.len(),
            classes.len()
        ),
    );
    // raw tuple count per class: permutations of each root block, literally
    // deduplicated
    let mut total_raw = BigInt::zero();
    for class in &classes {
        let mut size = BigInt::one();
        for vi in 0..class.vertices.len() {
            let mut block: Vec<usize> = Vec::new();
            for (ci, &count) in class.star_counts[vi].iter().enumerate() {
                block.extend(std::iter::repeat(ci).take(count));
            }
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for p in permutations(&block) {
                seen.insert(p);
            }
            size *= BigInt::from(seen.len());
        }
        report.check(
            size == class.size,
            format!("class size {} matches permutation dedup {}", class.size, size),
        );
        total_raw += size;
    }
    report.details.push(format!(
        "info {} Eulerian assignments collapsing to {} raw tuples in {} classes",
        eulerian_assignments,
        total_raw,
        classes.len()
    ));
    report
}

/// Recounts decomposition classes of an infragraph from literal set
/// partitions of the physical edge copies.
pub fn recount_decompositions(host: &SimpleHypergraph, x: &Infragraph) -> RecountReport {
    let mut report = RecountReport::new("raw-decompositions");
    let d = x.total_edges();
    assert!(d <= 9, "set-partition recount is exponential");
    let pieces = enumerate_infragraphs(host, d, true);
    let classes = decomposition_classes(host, x, &pieces);
    // physical copies: (host edge index, copy number)
    let mut copies: Vec<usize> = Vec::new();
    for (i, &m) in x.mult.iter().enumerate() {
        copies.extend(std::iter::repeat(i).take(m));
    }
    // enumerate set partitions; each block must be connected Veblen
    let mut class_counts: BTreeMap<Vec<Vec<usize>>, BigInt> = BTreeMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(
        host: &SimpleHypergraph,
        copies: &[usize],
        pos: usize,
        blocks: &mut Vec<Vec<usize>>,
        class_counts: &mut BTreeMap<Vec<Vec<usize>>, BigInt>,
        num_host_edges: usize,
    ) {
        if pos == copies.len() {
            let mut vectors: Vec<Vec<usize>> = Vec::new();
            for b in blocks.iter() {
                let mut mult = vec![0usize; num_host_edges];
                for &slot in b {
                    mult[copies[slot]] += 1;
                }
                let part = Infragraph::new(mult.clone());
                if !part.is_veblen(host) || !part.is_connected(host) {
                    return;
                }
                vectors.push(mult);
            }
            vectors.sort();
            *class_counts.entry(vectors).or_insert_with(BigInt::zero) += 1;
            return;
        }
        // canonical set-partition enumeration: element joins an existing
        // block or opens a new one
        for b in 0..blocks.len() {
            blocks[b].push(pos);
            rec(host, copies, pos + 1, blocks, class_counts, num_host_edges);
            blocks[b].pop();
        }
        blocks.push(vec![pos]);
        rec(host, copies, pos + 1, blocks, class_counts, num_host_edges);
        blocks.pop();
    }
    rec(
        host,
        &copies,
        0,
        &mut blocks,
        &mut class_counts,
        x.mult.len(),
    );
    report.check(
        class_counts.len() == classes.len(),
        format!(
            "class count: raw {} vs enumerated {}",
            class_counts.len(),
            classes.len()
        ),
    );
    for class in &classes {
        let mut key: Vec<Vec<usize>> = class.parts.iter().map(|p| p.mult.clone()).collect();
        key.sort();
        let raw = class_counts.get(&key).cloned().unwrap_or_else(BigInt::zero);
        report.check(
            raw == class.raw_partitions,
            format!(
                "class {:?}: raw partitions {} vs formula {}",
                key, raw, class.raw_partitions
            ),
        );
    }
    report
}

/// Round-trips every anchored Eulerian trail of every connected Eulerian
/// digraph with at most `max_arcs` arcs through the pyramid bijection.
pub fn recount_walk_pyramids(max_arcs: usize) -> RecountReport {
    use crate::heaps::CircuitPieces;
    let mut report = RecountReport::new("walk-pyramid-roundtrip");
    let mut digraphs = 0usize;
    let mut trips = 0usize;
    for d in connected_eulerian_digraphs(max_arcs) {
        digraphs += 1;
        let pieces = CircuitPieces::for_trails(&d);
        for e in 0..d.num_arcs() {
            for w in eulerian_trails(&d, Anchor::Edge(e)).unwrap() {
                let h = pieces.walk_to_pyramid(&w, true).unwrap();
                let back = pieces.pyramid_to_walk(&h, Anchor::Edge(e), true).unwrap();
                if back != w {
                    report.check(false, format!("edge round trip failed on {:?}", d));
                }
                trips += 1;
            }
        }
        for &u in &d.support() {
            for w in eulerian_trails(&d, Anchor::Vertex(u)).unwrap() {
                let h = pieces.walk_to_pyramid(&w, true).unwrap();
                let back = pieces.pyramid_to_walk(&h, Anchor::Vertex(u), true).unwrap();
                if back != w {
                    report.check(false, format!("vertex round trip failed on {:?}", d));
                }
                trips += 1;
            }
        }
    }
    report.details.push(format!(
        "info {trips} round trips over {digraphs} digraphs, all identities"
    ));
    report
}

/// Decomposition pyramids of a digraph counted independently of the
/// bijection: cycle partitions times admissible pyramid structures.
pub fn decomposition_pyramid_count(d: &Digraph, anchor: Anchor) -> usize {
    use crate::heaps::CircuitPieces;
    let pieces = CircuitPieces::for_trails(d);
    let mut count = 0usize;
    for partition in cycle_partitions(d) {
        let ids: Vec<usize> = partition
            .iter()
            .map(|c| pieces.piece_of(c).expect("partition pieces are cycles"))
            .collect();
        let mut seen = BTreeSet::new();
        for perm in permutations(&ids) {
            let h = crate::heaps::compose_pieces(&perm, &pieces.system);
            if !h.is_pyramid() {
                continue;
            }
            let max = h.maximal_labels()[0];
            let ok = match anchor {
                Anchor::Vertex(u) => pieces.circuits[max].contains_vertex(u),
                Anchor::Edge(e) => pieces.circuits[max].contains_edge(e),
                Anchor::All => true,
            };
            if ok && seen.insert(h.canonical_word()) {
                count += 1;
            }
        }
    }
    count
}

/// BEST-theorem cross-check over the whole family: enumerated circuit count
/// equals the arborescence formula (asserted inside `best_count`).
pub fn recount_best_theorem(max_arcs: usize) -> RecountReport {
    let mut report = RecountReport::new("best-theorem");
    let mut checked = 0usize;
    for d in connected_eulerian_digraphs(max_arcs) {
        let c = crate::trails::best_count(&d).expect("family digraphs are Eulerian");
        let tau = d.arborescence_count();
        let mut formula = tau;
        for v in d.support() {
            for i in 2..d.in_degree(v) {
                formula *= i;
            }
        }
        if BigInt::from(c.clone()) != formula {
            report.check(false, format!("BEST mismatch on {:?}", d));
        }
        checked += 1;
    }
    report
        .details
        .push(format!("info {checked} digraphs cross-checked"));
    report
}
