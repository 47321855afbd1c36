//! Infragraphs of a simple host: Veblen multiplicity vectors over the host's
//! edge set. For a fixed host the vector *is* the vertex-fixing equivalence
//! class, so enumeration needs no isomorphism tests.

use crate::hypergraph::{MultiHypergraph, SimpleHypergraph};

/// Multiplicity vector over host edges; entry `i` counts parallel copies of
/// host edge `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Infragraph {
    pub mult: Vec<usize>,
}

impl Infragraph {
    pub fn new(mult: Vec<usize>) -> Self {
        Infragraph { mult }
    }

    pub fn empty(num_host_edges: usize) -> Self {
        Infragraph {
            mult: vec![0; num_host_edges],
        }
    }

    pub fn total_edges(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_edges() == 0
    }

    /// Indices of host edges present in this infragraph.
    pub fn support_edges(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&i| self.mult[i] > 0).collect()
    }

    /// Materializes the multi-hypergraph (host vertex set, parallel copies).
    pub fn realize(&self, host: &SimpleHypergraph) -> MultiHypergraph {
        let mut edges = Vec::with_capacity(self.total_edges());
        for (i, &m) in self.mult.iter().enumerate() {
            for _ in 0..m {
                edges.push(host.edges()[i].clone());
            }
        }
        MultiHypergraph::new(host.rank(), host.num_vertices(), edges)
            .expect("host edges are well-formed")
    }

    /// Degree of `v`, weighted by multiplicities.
    pub fn degree(&self, host: &SimpleHypergraph, v: usize) -> usize {
        self.mult
            .iter()
            .enumerate()
            .filter(|&(i, _)| host.edges()[i].contains(&v))
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn is_veblen(&self, host: &SimpleHypergraph) -> bool {
        (1..=host.num_vertices()).all(|v| self.degree(host, v) % host.rank() == 0)
    }

    /// Connectivity of the supported edges (vacuously true when empty is not
    /// asked about; the empty infragraph has zero components).
    pub fn component_count(&self, host: &SimpleHypergraph) -> usize {
        let support = self.support_edges();
        if support.is_empty() {
            return 0;
        }
        let mut parent: Vec<usize> = (0..support.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for i in 0..support.len() {
            for j in (i + 1)..support.len() {
                let ei = &host.edges()[support[i]];
                let ej = &host.edges()[support[j]];
                if ei.iter().any(|v| ej.contains(v)) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut roots: Vec<usize> = (0..support.len()).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn is_connected(&self, host: &SimpleHypergraph) -> bool {
        self.component_count(host) == 1
    }

    /// Vertices touched by the supported edges.
    pub fn support_vertices(&self, host: &SimpleHypergraph) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .support_edges()
            .iter()
            .flat_map(|&i| host.edges()[i].iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Does this infragraph share a vertex with another one?
    pub fn shares_vertex(&self, other: &Infragraph, host: &SimpleHypergraph) -> bool {
        let a = self.support_vertices(host);
        let b = other.support_vertices(host);
        a.iter().any(|v| b.binary_search(v).is_ok())
    }

    /// Component-wise split into connected infragraphs.
    pub fn components(&self, host: &SimpleHypergraph) -> Vec<Infragraph> {
        let support = self.support_edges();
        if support.is_empty() {
            return Vec::new();
        }
        let mut parent: Vec<usize> = (0..support.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for i in 0..support.len() {
            for j in (i + 1)..support.len() {
                let ei = &host.edges()[support[i]];
                let ej = &host.edges()[support[j]];
                if ei.iter().any(|v| ej.contains(v)) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Infragraph> =
            std::collections::BTreeMap::new();
        for (i, &edge) in support.iter().enumerate() {
            let root = find(&mut parent, i);
            groups
                .entry(root)
                .or_insert_with(|| Infragraph::empty(self.mult.len()))
                .mult[edge] = self.mult[edge];
        }
        groups.into_values().collect()
    }
}

/// All Veblen multiplicity vectors with `total <= d_max` (the empty vector
/// included unless `connected_only`), in lexicographic order.
pub fn enumerate_infragraphs(
    host: &SimpleHypergraph,
    d_max: usize,
    connected_only: bool,
) -> Vec<Infragraph> {
    let r = host.num_edges();
    let mut out = Vec::new();
    let mut mult = vec![0usize; r];
    fn rec(
        host: &SimpleHypergraph,
        i: usize,
        left: usize,
        mult: &mut Vec<usize>,
        connected_only: bool,
        out: &mut Vec<Infragraph>,
    ) {
        if i == mult.len() {
            let inf = Infragraph::new(mult.clone());
            if !inf.is_veblen(host) {
                return;
            }
            if connected_only {
                if inf.is_connected(host) {
                    out.push(inf);
                }
            } else {
                out.push(inf);
            }
            return;
        }
        for m in 0..=left {
            mult[i] = m;
            rec(host, i + 1, left - m, mult, connected_only, out);
        }
        mult[i] = 0;
    }
    rec(host, 0, d_max, &mut mult, connected_only, &mut out);
    out.sort();
    out
}

/// Infragraphs with exactly `d` edges.
pub fn infragraphs_of_size(host: &SimpleHypergraph, d: usize, connected_only: bool) -> Vec<Infragraph> {
    enumerate_infragraphs(host, d, connected_only)
        .into_iter()
        .filter(|x| x.total_edges() == d)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_3edge() -> SimpleHypergraph {
        SimpleHypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap()
    }

    fn k3() -> SimpleHypergraph {
        SimpleHypergraph::new(2, 3, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    #[test]
    fn single_edge_host_multiplicity_steps() {
        let host = single_3edge();
        let infs = enumerate_infragraphs(&host, 9, false);
        let sizes: Vec<usize> = infs.iter().map(|x| x.total_edges()).collect();
        assert_eq!(sizes, vec![0, 3, 6, 9]);
    }

    #[test]
    fn k3_small_infragraphs() {
        let host = k3();
        let connected = enumerate_infragraphs(&host, 3, true);
        // three digons and the triangle itself
        assert_eq!(connected.len(), 4);
        let triangle = Infragraph::new(vec![1, 1, 1]);
        assert!(connected.contains(&triangle));
        let digons = connected.iter().filter(|x| x.total_edges() == 2).count();
        assert_eq!(digons, 3);
    }

    #[test]
    fn tight_pair_infragraphs_exist_in_complete_host() {
        // complete 3-uniform host on 4 vertices: every vertex lies in 3
        // edges, so (1,1,1,1) is the unique Veblen vector at d = 4
        let host = SimpleHypergraph::complete(3, 4);
        let infs = infragraphs_of_size(&host, 4, false);
        assert_eq!(infs, vec![Infragraph::new(vec![1, 1, 1, 1])]);
        // d=9 realizes the {3,6} bundles on pairs of host edges: 12 of them,
        // matching the stacking count of that shape
        let infs9 = infragraphs_of_size(&host, 9, false);
        let two_support = infs9
            .iter()
            .filter(|x| {
                let s = x.support_edges();
                s.len() == 2 && x.mult.iter().filter(|&&m| m > 0).all(|&m| m % 3 == 0)
            })
            .count();
        assert_eq!(two_support, 12);
    }

    #[test]
    fn components_split() {
        let host = SimpleHypergraph::new(2, 4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let x = Infragraph::new(vec![2, 2]);
        assert!(x.is_veblen(&host));
        assert_eq!(x.component_count(&host), 2);
        let comps = x.components(&host);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].total_edges() + comps[1].total_edges(), 4);
    }
}
