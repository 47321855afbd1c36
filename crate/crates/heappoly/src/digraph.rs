//! Multi-digraphs with labeled arcs, degree bookkeeping, connectivity and the
//! arborescence count via an exact Matrix-Tree determinant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Digraph with `n` vertices (1..=n) and a sequence of arcs `(tail, head)`;
/// arc identity is positional, parallel arcs allowed, no loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        for &(u, v) in &arcs {
            assert!(u != v, "loops are not allowed");
            assert!(u >= 1 && u <= n && v >= 1 && v <= n, "vertex out of range");
        }
        Digraph { n, arcs }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(_, h)| h == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(t, _)| t == v).count()
    }

    /// Vertices with at least one incident arc.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n + 1];
        for &(u, v) in &self.arcs {
            seen[u] = true;
            seen[v] = true;
        }
        (1..=self.n).filter(|&v| seen[v]).collect()
    }

    /// Weak connectivity on the support.
    pub fn is_connected(&self) -> bool {
        let support = self.support();
        if support.is_empty() {
            return true;
        }
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(u, v) in &self.arcs {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        let mut visited = vec![false; self.n + 1];
        let mut stack = vec![support[0]];
        visited[support[0]] = true;
        let mut count = 0;
        while let Some(u) = stack.pop() {
            count += 1;
            for &w in adj.get(&u).into_iter().flatten() {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        count == support.len()
    }

    /// In-degree equals out-degree at every vertex.
    pub fn is_balanced(&self) -> bool {
        let mut bal = vec![0isize; self.n + 1];
        for &(u, v) in &self.arcs {
            bal[u] += 1;
            bal[v] -= 1;
        }
        bal.iter().all(|&b| b == 0)
    }

    /// Eulerian: balanced and weakly connected on the support.
    pub fn is_eulerian(&self) -> bool {
        self.is_balanced() && self.is_connected()
    }

    /// Number of spanning arborescences oriented toward `root`, via the
    /// out-degree Laplacian minor.
    pub fn arborescences_to(&self, root: usize) -> BigInt {
        let support = self.support();
        if support.is_empty() {
            return BigInt::one();
        }
        if !support.contains(&root) || !self.is_connected() {
            return BigInt::zero();
        }
        let idx: BTreeMap<usize, usize> = support
            .iter()
            .filter(|&&v| v != root)
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let s = idx.len();
        let mut m = vec![vec![BigInt::zero(); s]; s];
        for &v in support.iter().filter(|&&v| v != root) {
            m[idx[&v]][idx[&v]] = BigInt::from(self.out_degree(v));
        }
        for &(u, v) in &self.arcs {
            if u != root && v != root {
                m[idx[&u]][idx[&v]] -= 1;
            }
        }
        let det = int_determinant(m);
        assert!(!det.is_negative(), "Laplacian minor must be non-negative");
        det
    }

    /// Arborescence count of an Eulerian digraph; asserts root independence.
    pub fn arborescence_count(&self) -> BigInt {
        let support = self.support();
        if support.is_empty() {
            return BigInt::one();
        }
        let tau = self.arborescences_to(support[0]);
        for &r in &support[1..] {
            assert_eq!(
                self.arborescences_to(r),
                tau,
                "arborescence count must not depend on the root"
            );
        }
        tau
    }

    /// Canonical key up to isomorphism, computed on the support by pruned
    /// permutation search over degree-compatible relabelings.
    pub fn iso_key(&self) -> Vec<u8> {
        let support = self.support();
        let s = support.len();
        // color = (out-degree, in-degree); only color-preserving maps tried
        let color: BTreeMap<usize, (usize, usize)> = support
            .iter()
            .map(|&v| (v, (self.out_degree(v), self.in_degree(v))))
            .collect();
        let mut arcs_by_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(u, v) in &self.arcs {
            *arcs_by_pair.entry((u, v)).or_insert(0) += 1;
        }
        let mut best: Option<Vec<u8>> = None;
        let mut assignment: Vec<Option<usize>> = vec![None; s]; // slot -> vertex
        let mut used = vec![false; s];
        fn encode(
            assignment: &[Option<usize>],
            arcs_by_pair: &BTreeMap<(usize, usize), usize>,
        ) -> Vec<u8> {
            let pos: BTreeMap<usize, usize> = assignment
                .iter()
                .enumerate()
                .filter_map(|(slot, v)| v.map(|v| (v, slot + 1)))
                .collect();
            let mut enc: Vec<(usize, usize, usize)> = arcs_by_pair
                .iter()
                .map(|(&(u, v), &m)| (pos[&u], pos[&v], m))
                .collect();
            enc.sort();
            let mut bytes = Vec::with_capacity(enc.len() * 3);
            for (a, b, m) in enc {
                bytes.push(a as u8);
                bytes.push(b as u8);
                bytes.push(m as u8);
            }
            bytes
        }
        fn rec(
            slot: usize,
            support: &[usize],
            color: &BTreeMap<usize, (usize, usize)>,
            arcs_by_pair: &BTreeMap<(usize, usize), usize>,
            assignment: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            best: &mut Option<Vec<u8>>,
        ) {
            let s = support.len();
            if slot == s {
                let enc = encode(assignment, arcs_by_pair);
                if best.as_ref().map_or(true, |b| &enc < b) {
                    *best = Some(enc);
                }
                return;
            }
            for (i, &v) in support.iter().enumerate() {
                if used[i] {
                    continue;
                }
                // require colors along slots to be sorted, cheap symmetry cut
                if slot > 0 {
                    let prev = assignment[slot - 1].unwrap();
                    if color[&v] < color[&prev] {
                        continue;
                    }
                }
                assignment[slot] = Some(v);
                used[i] = true;
                rec(slot + 1, support, color, arcs_by_pair, assignment, used, best);
                assignment[slot] = None;
                used[i] = false;
            }
        }
        rec(
            0,
            &support,
            &color,
            &arcs_by_pair,
            &mut assignment,
            &mut used,
            &mut best,
        );
        let mut key = vec![s as u8];
        key.extend(best.unwrap_or_default());
        key
    }
}

/// Exact integer determinant by Bareiss fraction-free elimination.
pub fn int_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_basics() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(-1), BigInt::from(2)],
        ];
        assert_eq!(int_determinant(m), BigInt::from(3));
        let m = vec![
            vec![BigInt::zero(), BigInt::one()],
            vec![BigInt::one(), BigInt::zero()],
        ];
        assert_eq!(int_determinant(m), BigInt::from(-1));
    }

    #[test]
    fn arborescences_of_cycles() {
        let c2 = Digraph::new(2, vec![(1, 2), (2, 1)]);
        assert_eq!(c2.arborescence_count(), BigInt::one());
        let k3bi = Digraph::new(3, vec![(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)]);
        assert_eq!(k3bi.arborescence_count(), BigInt::from(3));
        // doubled bidirected triangle
        let mut arcs = k3bi.arcs().to_vec();
        arcs.extend(k3bi.arcs().to_vec());
        let doubled = Digraph::new(3, arcs);
        assert_eq!(doubled.arborescence_count(), BigInt::from(12));
    }

    #[test]
    fn eulerian_checks() {
        let d = Digraph::new(2, vec![(1, 2), (2, 1)]);
        assert!(d.is_eulerian());
        let d = Digraph::new(3, vec![(1, 2), (2, 3)]);
        assert!(!d.is_eulerian());
        // balanced but disconnected
        let d = Digraph::new(4, vec![(1, 2), (2, 1), (3, 4), (4, 3)]);
        assert!(d.is_balanced());
        assert!(!d.is_eulerian());
    }

    #[test]
    fn iso_keys_separate_and_identify() {
        let a = Digraph::new(3, vec![(1, 2), (2, 3), (3, 1)]);
        let b = Digraph::new(3, vec![(2, 1), (1, 3), (3, 2)]);
        assert_eq!(a.iso_key(), b.iso_key());
        let c = Digraph::new(3, vec![(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)]);
        assert_ne!(a.iso_key(), c.iso_key());
    }
}
