//! Brute-force oracles shared by the integration tests. None of them call into
//! the library beyond `Graph` accessors.

#![allow(dead_code)]

use signrank::harness::read_graph6_corpus;
use signrank::Graph;

pub fn atlas() -> Vec<Graph> {
    read_graph6_corpus(include_str!("../data/graphs_upto7.g6")).expect("fixture parses")
}

pub fn bipartite_2ec_order8() -> Vec<Graph> {
    read_graph6_corpus(include_str!("../data/bipartite_2ec_8.g6")).expect("fixture parses")
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn parity(p: &[usize]) -> i128 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Leibniz expansion.
pub fn det_expansion(a: &[Vec<i64>]) -> i128 {
    let mut total = 0i128;
    for_each_permutation(a.len(), |p| {
        let prod: i128 = p
            .iter()
            .enumerate()
            .map(|(r, &c)| i128::from(a[r][c]))
            .product();
        if prod != 0 {
            total += parity(p) * prod;
        }
    });
    total
}

pub fn permanent_expansion(a: &[Vec<i64>]) -> i128 {
    let mut total = 0i128;
    for_each_permutation(a.len(), |p| {
        total += p
            .iter()
            .enumerate()
            .map(|(r, &c)| i128::from(a[r][c]))
            .product::<i128>();
    });
    total
}

pub fn weighted(g: &Graph, values: &[i64]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; g.n()]; g.n()];
    for (&(u, v), &x) in g.edges().iter().zip(values) {
        a[u][v] = x;
        a[v][u] = x;
    }
    a
}

/// A {1,2}-factor as edge bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetFactor {
    pub k2: u64,
    pub cycle: u64,
}

/// Every edge subset in which each vertex has degree 1 or 2 and each degree-1
/// vertex is matched to another degree-1 vertex.
pub fn factors_by_subsets(g: &Graph) -> Vec<SubsetFactor> {
    let (n, m) = (g.n(), g.m());
    assert!(m < 32);
    let mut out = Vec::new();
    let mut deg = vec![0u8; n];
    'mask: for mask in 0u64..(1u64 << m) {
        deg.iter_mut().for_each(|d| *d = 0);
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (u, v) = g.edge(e);
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if deg.iter().any(|&d| d == 0 || d > 2) {
            continue;
        }
        let mut k2 = 0u64;
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (u, v) = g.edge(e);
                match (deg[u], deg[v]) {
                    (1, 1) => k2 |= 1 << e,
                    (2, 2) => {}
                    _ => continue 'mask,
                }
            }
        }
        out.push(SubsetFactor {
            k2,
            cycle: mask & !k2,
        });
    }
    out
}

/// Every `f ∈ {±1, …, ±(k-1)}^m` with zero vertex sums.
pub fn exhaustive_flow_exists(g: &Graph, k: i64) -> bool {
    let m = g.m();
    let choices: Vec<i64> = (1..k).flat_map(|x| [x, -x]).collect();
    if m == 0 {
        return true;
    }
    let mut idx = vec![0usize; m];
    loop {
        let mut sum = vec![0i64; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            sum[u] += choices[idx[e]];
            sum[v] += choices[idx[e]];
        }
        if sum.iter().all(|&s| s == 0) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut count = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Sign pattern of the vertex coloring, or `None` if some odd cycle exists.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Connected with no bridge, by deleting each edge in turn.
pub fn two_edge_connected_by_deletion(g: &Graph) -> bool {
    if g.n() == 0 || component_count(g.n(), g.edges()) != 1 {
        return false;
    }
    (0..g.m()).all(|e| {
        let rest: Vec<_> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &uv)| uv)
            .collect();
        component_count(g.n(), &rest) == 1
    })
}
