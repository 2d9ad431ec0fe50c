//! Simple undirected graphs with a frozen edge order.
//!
//! The position of an edge in [`Graph::edges`] is its variable index
//! everywhere downstream: sign vectors, weight vectors, flow values and
//! the exponent vectors of the determinant polynomial all key off it.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A simple, undirected, finite graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `adj[v]` holds `(neighbor, edge index)` pairs in edge order.
    adj: Vec<Vec<(usize, usize)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range endpoints.
    /// Endpoints are stored with the smaller index first.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        };
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.push_edge(u, v)
                .map_err(|msg| Error::Precondition(format!("edge {}: {msg}", i + 1)))?;
        }
        Ok(g)
    }

    fn push_edge(&mut self, u: usize, v: usize) -> std::result::Result<(), String> {
        if u >= self.n || v >= self.n {
            return Err(format!(
                "endpoint out of range in {{{u},{v}}} (n = {})",
                self.n
            ));
        }
        if u == v {
            return Err(format!("loop at vertex {u}"));
        }
        if self.edge_between(u, v).is_some() {
            return Err(format!("duplicate edge {{{u},{v}}}"));
        }
        let idx = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.adj[u].push((v, idx));
        self.adj[v].push((u, idx));
        Ok(())
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// `C_n` with edges `{0,1}, {1,2}, …, {n-1,0}`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Star `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("petersen graph is simple")
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// The graph with edge `i` deleted. Later edges shift down by one index.
    pub fn without_edge(&self, i: usize) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e);
        Graph::new(self.n, edges).expect("subgraph of a simple graph is simple")
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order. Edges keep their relative order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut label = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            label[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| label[u] != usize::MAX && label[v] != usize::MAX)
            .map(|&(u, v)| (label[u], label[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Whether every component is bipartite.
    pub fn is_bipartite(&self) -> bool {
        components(self)
            .iter()
            .all(|comp| bipartition(self, comp).valid)
    }

    pub fn is_connected(&self) -> bool {
        components(self).len() <= 1
    }
}

/// Parses the edge-list format: first non-empty line `n`, then one `u v` pair per line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(first, format!("expected vertex count, found {header:?}")))?;

    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        let mut endpoint = || -> Result<usize> {
            let tok = it
                .next()
                .ok_or_else(|| Error::parse(line, "expected two vertex indices"))?;
            tok.parse()
                .map_err(|_| Error::parse(line, format!("invalid vertex index {tok:?}")))
        };
        let u = endpoint()?;
        let v = endpoint()?;
        if it.next().is_some() {
            return Err(Error::parse(line, "trailing tokens after edge"));
        }
        g.push_edge(u, v).map_err(|msg| Error::parse(line, msg))?;
    }
    Ok(g)
}

/// Writes the edge-list format accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes one graph6 string. Edges are ordered row-major over the upper
/// triangle, i.e. sorted by `(u, v)`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    parse_graph6_line(text, 1)
}

pub(crate) fn parse_graph6_line(text: &str, line: usize) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    if s.is_empty() {
        return Err(Error::parse(line, "empty graph6 string"));
    }
    let bytes = s.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(
            line,
            format!(
                "invalid graph6 character {:?} at offset {pos}",
                bytes[pos] as char
            ),
        ));
    }
    let vals: Vec<u8> = bytes.iter().map(|b| b - 63).collect();

    let (n, body) = if vals[0] < 63 {
        (vals[0] as usize, &vals[1..])
    } else if vals.len() >= 2 && vals[1] < 63 {
        if vals.len() < 4 {
            return Err(Error::parse(line, "truncated graph6 order"));
        }
        let n = vals[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | b as usize);
        (n, &vals[4..])
    } else {
        if vals.len() < 8 {
            return Err(Error::parse(line, "truncated graph6 order"));
        }
        let n = vals[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | b as usize);
        (n, &vals[8..])
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::parse(
            line,
            format!(
                "graph6 length mismatch: order {n} needs {expected} data bytes, found {}",
                body.len()
            ),
        ));
    }

    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if (byte >> (5 - k % 6)) & 1 == 1 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    pairs.sort_unstable();
    Graph::new(n, pairs).map_err(|e| Error::parse(line, e.to_string()))
}

/// Encodes a graph as graph6. Edge order is not represented.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8);
    } else if n < 258_048 {
        out.push(63);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8));
    } else {
        out.extend([63, 63]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8));
    }
    let mut cur = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            cur = (cur << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(cur);
                cur = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(cur << (6 - filled));
    }
    out.into_iter().map(|b| (b + 63) as char).collect()
}

/// Connected components, each sorted, listed in order of their smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Two-colouring of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub valid: bool,
}

/// Breadth-first two-colouring of `comp`, starting from its first vertex on side X.
/// When the component contains an odd cycle `valid` is false and the sides
/// hold the partial layering.
pub fn bipartition(g: &Graph, comp: &[usize]) -> Bipartition {
    let Some(&root) = comp.first() else {
        return Bipartition {
            x: Vec::new(),
            y: Vec::new(),
            valid: true,
        };
    };
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    side[root] = Some(false);
    let mut queue = VecDeque::from([root]);
    let mut valid = true;
    while let Some(v) = queue.pop_front() {
        let sv = side[v].unwrap();
        for w in g.neighbors(v) {
            match side[w] {
                None => {
                    side[w] = Some(!sv);
                    queue.push_back(w);
                }
                Some(sw) if sw == sv => valid = false,
                Some(_) => {}
            }
        }
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for &v in comp {
        match side[v] {
            Some(false) => x.push(v),
            Some(true) => y.push(v),
            None => {}
        }
    }
    Bipartition { x, y, valid }
}

/// Bridges of `g` as sorted edge indices.
pub fn cut_edges(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut bridges = Vec::new();
    let mut time = 0;

    // (vertex, edge used to enter it, next incident position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, via, pos) = *top;
            if let Some(&(w, e)) = g.incident(v).get(pos) {
                top.2 += 1;
                if e == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push(via);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

/// Edges of a breadth-first spanning forest, as a membership mask over edge indices.
pub fn spanning_forest(g: &Graph) -> Vec<bool> {
    let mut in_forest = vec![false; g.m()];
    let mut seen = vec![false; g.n()];
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    in_forest[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    in_forest
}

/// Connected and bridgeless. `K_1` counts as 2-edge-connected.
pub fn is_two_edge_connected(g: &Graph) -> bool {
    g.n() > 0 && g.is_connected() && cut_edges(g).is_empty()
}
