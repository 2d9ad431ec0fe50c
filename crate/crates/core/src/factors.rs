//! {1,2}-factors: spanning subgraphs whose components are copies of `K_2` and cycles.
//!
//! Enumeration backtracks on the lowest uncovered vertex `v`, either pairing
//! it with an uncovered neighbour or growing a path from `v` that must close
//! into a cycle of length at least 3. Since `v` is the smallest vertex of any
//! cycle started there, requiring the second vertex to be smaller than the
//! last one fixes the orientation, and every factor is produced exactly once.

use std::ops::ControlFlow;

use crate::graph::Graph;

/// A cycle of a factor. `vertices[0]` is the smallest vertex and the cycle is
/// traversed toward its smaller neighbour; `edges[i]` joins `vertices[i]` to
/// `vertices[i + 1]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// One {1,2}-factor in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    /// Edges forming the `K_2` components, sorted.
    pub k2_edges: Vec<usize>,
    /// Cycles sorted by their smallest vertex.
    pub cycles: Vec<Cycle>,
    /// Covered vertices, sorted.
    pub covered: Vec<usize>,
}

impl Factor {
    fn from_parts(g: &Graph, k2: &[usize], cycles: &[Cycle]) -> Self {
        let mut k2_edges = k2.to_vec();
        k2_edges.sort_unstable();
        let mut cycles = cycles.to_vec();
        cycles.sort();
        let mut covered: Vec<usize> = k2_edges
            .iter()
            .flat_map(|&e| {
                let (u, v) = g.edge(e);
                [u, v]
            })
            .chain(cycles.iter().flat_map(|c| c.vertices.iter().copied()))
            .collect();
        covered.sort_unstable();
        Factor {
            k2_edges,
            cycles,
            covered,
        }
    }

    /// `a(H)`, the number of `K_2` components.
    pub fn a(&self) -> usize {
        self.k2_edges.len()
    }

    /// `c(H)`, the number of cycles.
    pub fn c(&self) -> usize {
        self.cycles.len()
    }

    pub fn edge_in_k2(&self, e: usize) -> bool {
        self.k2_edges.binary_search(&e).is_ok()
    }

    pub fn edge_in_cycle(&self, e: usize) -> bool {
        self.cycles.iter().any(|c| c.edges.contains(&e))
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edge_in_k2(e) || self.edge_in_cycle(e)
    }

    /// Number of nonzero transversals of `A(G)` this factor accounts for.
    pub fn transversal_count(&self) -> u128 {
        1u128 << self.c()
    }
}

struct Search<'g> {
    g: &'g Graph,
    covered: Vec<bool>,
    k2: Vec<usize>,
    cycles: Vec<Cycle>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        Search {
            g,
            covered: vec![false; g.n()],
            k2: Vec::new(),
            cycles: Vec::new(),
        }
    }

    fn cover<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[Cycle]) -> ControlFlow<()>,
    {
        let Some(v) = self.covered.iter().position(|c| !c) else {
            return visit(&self.k2, &self.cycles);
        };
        let g = self.g;
        self.covered[v] = true;

        for &(w, e) in g.incident(v) {
            if !self.covered[w] {
                self.covered[w] = true;
                self.k2.push(e);
                let flow = self.cover(visit);
                self.k2.pop();
                self.covered[w] = false;
                flow?;
            }
        }

        let mut verts = vec![v];
        let mut edges = Vec::new();
        let flow = self.extend(v, &mut verts, &mut edges, visit);
        self.covered[v] = false;
        flow
    }

    fn extend<F>(
        &mut self,
        start: usize,
        verts: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[Cycle]) -> ControlFlow<()>,
    {
        let g = self.g;
        let cur = *verts.last().unwrap();
        for &(w, e) in g.incident(cur) {
            if w == start {
                if verts.len() >= 3 && verts[1] < cur {
                    edges.push(e);
                    self.cycles.push(Cycle {
                        vertices: verts.clone(),
                        edges: edges.clone(),
                    });
                    let flow = self.cover(visit);
                    self.cycles.pop();
                    edges.pop();
                    flow?;
                }
            } else if !self.covered[w] {
                self.covered[w] = true;
                verts.push(w);
                edges.push(e);
                let flow = self.extend(start, verts, edges, visit);
                edges.pop();
                verts.pop();
                self.covered[w] = false;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Streams every spanning {1,2}-factor as `(K_2 edges, cycles)` without
/// collecting them. Returning `Break` stops the enumeration.
pub fn for_each_factor<F>(g: &Graph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[Cycle]) -> ControlFlow<()>,
{
    Search::new(g).cover(&mut visit)
}

/// All spanning {1,2}-factors in canonical order. `K_0` has one, the empty factor.
pub fn enumerate_factors(g: &Graph) -> Vec<Factor> {
    let mut out = Vec::new();
    let _ = for_each_factor(g, |k2, cycles| {
        out.push(Factor::from_parts(g, k2, cycles));
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// `t(G)`.
pub fn count_factors(g: &Graph) -> u64 {
    let mut count = 0u64;
    let _ = for_each_factor(g, |_, _| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

pub fn has_factor(g: &Graph) -> bool {
    for_each_factor(g, |_, _| ControlFlow::Break(())).is_break()
}

/// Sum of `2^c(H)` over all factors, i.e. the permanent of `A(G)`.
pub fn count_nonzero_transversals(g: &Graph) -> u128 {
    let mut total = 0u128;
    let _ = for_each_factor(g, |_, cycles| {
        total += 1u128 << cycles.len();
        ControlFlow::Continue(())
    });
    total
}

/// Largest vertex subset whose induced subgraph has a spanning {1,2}-factor,
/// by trying every subset. Exponential; meant as an oracle for small graphs.
pub fn perrank_bruteforce(g: &Graph) -> usize {
    let n = g.n();
    assert!(n < 32, "brute-force perrank is limited to n < 32");
    let mut best = 0;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if has_factor(&g.induced(&subset)) {
            best = size;
        }
    }
    best
}

/// perrank as the maximum matching of the bipartite double cover
/// (`u_1 v_2` and `u_2 v_1` for every edge `uv`).
pub fn perrank_fast(g: &Graph) -> usize {
    let n = g.n();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut size = 0;
    for u in 0..n {
        let mut visited = vec![false; n];
        if augment(g, u, &mut visited, &mut match_right) {
            size += 1;
        }
    }
    size
}

fn augment(g: &Graph, u: usize, visited: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for w in g.neighbors(u) {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let free = match match_right[w] {
            None => true,
            Some(owner) => augment(g, owner, visited, match_right),
        };
        if free {
            match_right[w] = Some(u);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_has_no_factor() {
        assert!(enumerate_factors(&Graph::path(3)).is_empty());
        assert_eq!(count_factors(&Graph::path(3)), 0);
        assert_eq!(count_nonzero_transversals(&Graph::path(3)), 0);
    }

    #[test]
    fn c4_factors() {
        let fs = enumerate_factors(&Graph::cycle(4));
        assert_eq!(fs.len(), 3);
        let matchings: Vec<_> = fs.iter().filter(|f| f.c() == 0).collect();
        assert_eq!(matchings.len(), 2);
        let cyc = fs.iter().find(|f| f.c() == 1).unwrap();
        assert_eq!(cyc.cycles[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(count_nonzero_transversals(&Graph::cycle(4)), 4);
    }

    #[test]
    fn k4_factors() {
        let fs = enumerate_factors(&Graph::complete(4));
        assert_eq!(fs.len(), 6);
        assert_eq!(fs.iter().filter(|f| f.a() == 2).count(), 3);
        assert_eq!(
            fs.iter()
                .filter(|f| f.c() == 1 && f.cycles[0].len() == 4)
                .count(),
            3
        );
        assert_eq!(count_nonzero_transversals(&Graph::complete(4)), 9);
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_factors(&Graph::complete(3)), 1);
        assert_eq!(count_factors(&Graph::cycle(4)), 3);
        assert_eq!(count_factors(&Graph::complete(2)), 1);
    }

    #[test]
    fn empty_graph_conventions() {
        let k0 = Graph::empty(0);
        let fs = enumerate_factors(&k0);
        assert_eq!(fs.len(), 1);
        assert!(fs[0].k2_edges.is_empty() && fs[0].cycles.is_empty());
        assert_eq!(perrank_fast(&k0), 0);
        assert_eq!(perrank_bruteforce(&k0), 0);
        let e3 = Graph::empty(3);
        assert_eq!(count_factors(&e3), 0);
        assert_eq!(perrank_fast(&e3), 0);
        assert_eq!(perrank_bruteforce(&e3), 0);
    }

    #[test]
    fn perrank_examples() {
        assert_eq!(perrank_bruteforce(&Graph::path(3)), 2);
        assert_eq!(perrank_bruteforce(&Graph::star(3)), 2);
        assert_eq!(perrank_bruteforce(&Graph::cycle(5)), 5);
        assert_eq!(perrank_fast(&Graph::cycle(3)), 3);
        assert_eq!(perrank_fast(&Graph::path(3)), 2);
        assert_eq!(perrank_fast(&Graph::petersen()), 10);
        assert_eq!(perrank_bruteforce(&Graph::petersen()), 10);
    }

    #[test]
    fn factor_invariants_on_petersen() {
        let g = Graph::petersen();
        let fs = enumerate_factors(&g);
        assert!(!fs.is_empty());
        for f in &fs {
            assert_eq!(
                2 * f.a() + f.cycles.iter().map(Cycle::len).sum::<usize>(),
                f.covered.len()
            );
            assert_eq!(f.covered, (0..10).collect::<Vec<_>>());
            for c in &f.cycles {
                assert!(c.len() >= 3);
                assert_eq!(c.vertices[0], *c.vertices.iter().min().unwrap());
                assert!(c.vertices[1] < *c.vertices.last().unwrap());
            }
        }
        let mut dedup = fs.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), fs.len());
    }
}
