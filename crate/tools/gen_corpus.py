#!/usr/bin/env python3
"""Regenerate the graph6 fixtures used by the acceptance suite.

graphs_upto7.g6     every graph of order 0..7 up to isomorphism (networkx atlas)
bipartite_2ec_8.g6  every 2-edge-connected bipartite graph of order 8 up to isomorphism
"""
import itertools
import sys
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "data"


def g6(g):
    return nx.to_graph6_bytes(g, header=False).decode().strip()


def atlas():
    return [g6(g) for g in nx.graph_atlas_g()]


def canon_biadjacency(rows):
    k = len(rows)
    cols = len(rows[0])
    best = None
    for perm in itertools.permutations(range(k)):
        columns = sorted(tuple(rows[p][c] for p in perm) for c in range(cols))
        key = tuple(columns)
        if best is None or key < best:
            best = key
    return best


def bipartite_2ec(n):
    seen = set()
    out = []
    for k in range(1, n // 2 + 1):
        l = n - k
        for bits in range(1 << (k * l)):
            rows = [[(bits >> (r * l + c)) & 1 for c in range(l)] for r in range(k)]
            if any(sum(r) < 2 for r in rows) or any(sum(rows[r][c] for r in range(k)) < 2 for c in range(l)):
                continue
            key = canon_biadjacency(rows)
            if k == l:
                t = [[rows[r][c] for r in range(k)] for c in range(l)]
                key = min(key, canon_biadjacency(t))
            if (k, key) in seen:
                continue
            seen.add((k, key))
            g = nx.Graph()
            g.add_nodes_from(range(n))
            for r in range(k):
                for c in range(l):
                    if rows[r][c]:
                        g.add_edge(r, k + c)
            if nx.is_connected(g) and not nx.has_bridges(g):
                out.append(g6(g))
    return out


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    a = atlas()
    (OUT / "graphs_upto7.g6").write_text("\n".join(a) + "\n")
    b = bipartite_2ec(8)
    (OUT / "bipartite_2ec_8.g6").write_text("\n".join(b) + "\n")
    print(f"atlas: {len(a)} graphs, bipartite 2ec order 8: {len(b)} graphs", file=sys.stderr)


if __name__ == "__main__":
    main()
