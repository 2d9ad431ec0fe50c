//! Zero-sum flows: nowhere-zero integer edge labels summing to zero at every vertex.

use crate::assignment::EdgeAssignment;
use crate::error::{Error, Result};
use crate::graph::{bipartition, components, Graph};
use crate::linalg::incidence_matrix;

/// A bounded flow search: values drawn from `{±1, …, ±(k-1)}`.
#[derive(Debug, Clone, Copy)]
pub struct FlowProblem<'g> {
    graph: &'g Graph,
    k: u32,
}

impl<'g> FlowProblem<'g> {
    pub fn new(graph: &'g Graph, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Precondition(format!(
                "a zero-sum k-flow needs k >= 2, got {k}"
            )));
        }
        Ok(FlowProblem { graph, k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Backtracking search. Returns `None` when the bounded space holds no flow.
    pub fn solve(&self) -> Option<EdgeAssignment> {
        let g = self.graph;
        if !has_real_zero_sum_flow(g) {
            return None;
        }
        let bound = i64::from(self.k - 1);
        let mut values = vec![0i64; g.m()];
        for comp in components(g) {
            let order = search_order(g, &comp);
            if order.is_empty() {
                continue;
            }
            let mut solver = Solver {
                g,
                order: &order,
                sum: vec![0; g.n()],
                remaining: (0..g.n()).map(|v| g.degree(v)).collect(),
                values: &mut values,
                bound,
            };
            if !solver.search(0) {
                return None;
            }
        }
        Some(EdgeAssignment::flow(values).expect("solver assigns nonzero values"))
    }
}

/// Edge order for one component: non-tree edges of a depth-first tree first,
/// then tree edges deepest child first. Every tree edge is then the last
/// undecided edge at its child, so its value is forced.
fn search_order(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let Some(&root) = comp.first() else {
        return Vec::new();
    };
    let mut disc = vec![usize::MAX; g.n()];
    let mut tree_edge_of = vec![usize::MAX; g.n()];
    let mut visit_order = Vec::new();
    let mut stack = vec![(root, usize::MAX)];
    while let Some((v, via)) = stack.pop() {
        if disc[v] != usize::MAX {
            continue;
        }
        disc[v] = visit_order.len();
        tree_edge_of[v] = via;
        visit_order.push(v);
        for &(w, e) in g.incident(v).iter().rev() {
            if disc[w] == usize::MAX {
                stack.push((w, e));
            }
        }
    }
    let mut is_tree = vec![false; g.m()];
    for &v in &visit_order {
        if tree_edge_of[v] != usize::MAX {
            is_tree[tree_edge_of[v]] = true;
        }
    }
    let mut comp_edges: Vec<usize> = comp
        .iter()
        .flat_map(|&v| g.incident(v).iter().map(|&(_, e)| e))
        .collect();
    comp_edges.sort_unstable();
    comp_edges.dedup();

    let mut order: Vec<usize> = comp_edges
        .iter()
        .copied()
        .filter(|&e| !is_tree[e])
        .collect();
    order.extend(
        visit_order
            .iter()
            .rev()
            .filter(|&&v| tree_edge_of[v] != usize::MAX)
            .map(|&v| tree_edge_of[v]),
    );
    order
}

struct Solver<'a> {
    g: &'a Graph,
    order: &'a [usize],
    sum: Vec<i64>,
    remaining: Vec<usize>,
    values: &'a mut Vec<i64>,
    bound: i64,
}

impl Solver<'_> {
    fn feasible(&self, v: usize) -> bool {
        let r = self.remaining[v] as i64;
        if r == 0 {
            self.sum[v] == 0
        } else {
            self.sum[v].abs() <= self.bound * r
        }
    }

    fn forced(&self, v: usize) -> Option<i64> {
        (self.remaining[v] == 1).then(|| -self.sum[v])
    }

    fn search(&mut self, pos: usize) -> bool {
        let Some(&e) = self.order.get(pos) else {
            return true;
        };
        let (u, v) = self.g.edge(e);
        let candidates: Vec<i64> = match (self.forced(u), self.forced(v)) {
            (Some(a), Some(b)) if a != b => return false,
            (Some(x), _) | (None, Some(x)) => {
                if x == 0 || x.abs() > self.bound {
                    return false;
                }
                vec![x]
            }
            (None, None) => (1..=self.bound).flat_map(|x| [x, -x]).collect(),
        };
        for x in candidates {
            self.values[e] = x;
            self.sum[u] += x;
            self.sum[v] += x;
            self.remaining[u] -= 1;
            self.remaining[v] -= 1;
            let ok = self.feasible(u) && self.feasible(v) && self.search(pos + 1);
            self.remaining[u] += 1;
            self.remaining[v] += 1;
            self.sum[u] -= x;
            self.sum[v] -= x;
            if ok {
                return true;
            }
            self.values[e] = 0;
        }
        false
    }
}

/// Searches for a zero-sum `k`-flow. `k` must be at least 2.
pub fn find_zero_sum_flow(g: &Graph, k: u32) -> Result<Option<EdgeAssignment>> {
    Ok(FlowProblem::new(g, k)?.solve())
}

/// Whether every vertex sum of `f` vanishes.
pub fn verify_flow(g: &Graph, f: &EdgeAssignment) -> Result<bool> {
    f.check_domain(g)?;
    let mut sum = vec![0i128; g.n()];
    for (&(u, v), &x) in g.edges().iter().zip(f.values()) {
        sum[u] += i128::from(x);
        sum[v] += i128::from(x);
    }
    Ok(sum.iter().all(|&s| s == 0))
}

/// Whether a nowhere-zero real zero-sum flow exists. Flows form the kernel of
/// the unsigned incidence matrix `B`; edge `e` can be nonzero in some kernel
/// vector iff deleting its column keeps the rank, and a generic kernel vector
/// is then nonzero on every such edge at once.
pub fn has_real_zero_sum_flow(g: &Graph) -> bool {
    let b = incidence_matrix(g);
    let full = b.rank();
    (0..g.m()).all(|e| b.without_column(e).rank() == full)
}

/// For a connected non-bipartite graph: no single-edge deletion leaves a
/// bipartite component.
pub fn flow_exists_nonbipartite_test(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    if g.is_bipartite() {
        return Err(Error::Precondition(
            "graph is bipartite; use the bounded solver instead".into(),
        ));
    }
    Ok((0..g.m()).all(|e| {
        let h = g.without_edge(e);
        components(&h)
            .iter()
            .all(|comp| !bipartition(&h, comp).valid)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::AssignmentKind;

    fn all_ones_flow(m: usize) -> EdgeAssignment {
        EdgeAssignment::all_ones(AssignmentKind::Flow, m)
    }

    fn tadpole() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap()
    }

    #[test]
    fn nonbipartite_test_examples() {
        assert!(flow_exists_nonbipartite_test(&Graph::complete(4)).unwrap());
        assert!(!flow_exists_nonbipartite_test(&tadpole()).unwrap());
        assert!(!flow_exists_nonbipartite_test(&Graph::cycle(5)).unwrap());
        assert!(flow_exists_nonbipartite_test(&Graph::cycle(4)).is_err());
        let two_triangles =
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(flow_exists_nonbipartite_test(&two_triangles).is_err());
    }

    #[test]
    fn solver_examples() {
        let f = find_zero_sum_flow(&Graph::cycle(4), 2).unwrap().unwrap();
        assert!(verify_flow(&Graph::cycle(4), &f).unwrap());
        assert_eq!(f.max_abs(), 1);
        for k in 2..8 {
            assert!(find_zero_sum_flow(&Graph::complete(2), k)
                .unwrap()
                .is_none());
            assert!(find_zero_sum_flow(&Graph::cycle(3), k).unwrap().is_none());
        }
        assert!(find_zero_sum_flow(&Graph::cycle(3), 1).is_err());
    }

    #[test]
    fn verify_examples() {
        let c4 = Graph::cycle(4);
        assert!(verify_flow(&c4, &EdgeAssignment::flow(vec![1, -1, 1, -1]).unwrap()).unwrap());
        assert!(!verify_flow(&c4, &all_ones_flow(4)).unwrap());
        let c6 = Graph::cycle(6);
        assert!(verify_flow(
            &c6,
            &EdgeAssignment::flow(vec![2, -2, 2, -2, 2, -2]).unwrap()
        )
        .unwrap());
        assert!(EdgeAssignment::flow(vec![0, 1, 1, 1]).is_err());
        assert!(verify_flow(&c4, &all_ones_flow(3)).is_err());
    }

    #[test]
    fn k4_flow_within_bound() {
        let g = Graph::complete(4);
        let f = find_zero_sum_flow(&g, 12).unwrap().unwrap();
        assert!(verify_flow(&g, &f).unwrap());
        assert!(f.max_abs() <= 11);
    }

    #[test]
    fn real_existence() {
        assert!(has_real_zero_sum_flow(&Graph::complete(4)));
        assert!(has_real_zero_sum_flow(&Graph::cycle(4)));
        assert!(!has_real_zero_sum_flow(&Graph::cycle(5)));
        assert!(!has_real_zero_sum_flow(&Graph::path(3)));
        assert!(has_real_zero_sum_flow(&Graph::empty(3)));
    }

    #[test]
    fn edgeless_graph_has_empty_flow() {
        let f = find_zero_sum_flow(&Graph::empty(2), 2).unwrap().unwrap();
        assert!(f.is_empty());
    }
}
