"""
Graph core: bit-mask graphs, graph6 / edge-list I/O, clique counting,
canonical labeling, subgraph embedding and generators
Every other module builds on the Graph type defined here
"""
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import networkx as nx
import numpy as np

from errors import GraphArgumentError, GraphParseError

MAX_VERTICES = 62

# A vertex set is a plain int bit mask over 0..n-1
VertexSet = int


def mask_of(vertices):
    """Bit mask of an iterable of vertices"""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask):
    """Sorted vertex list of a bit mask"""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on n <= 62 labeled vertices"""
    n: int
    adj: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphArgumentError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphArgumentError(f"expected {self.n} adjacency masks, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphArgumentError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphArgumentError(f"loop at vertex {v}")
            for u in _iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphArgumentError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphArgumentError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphArgumentError(f"edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def degree(self, v):
        return self.adj[v].bit_count()

    def degrees(self):
        return [row.bit_count() for row in self.adj]

    @property
    def min_degree(self):
        return min(self.degrees())

    @property
    def max_degree(self):
        return max(self.degrees())

    def edge_count(self):
        return sum(self.degrees()) // 2

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v):
        return vertices_of(self.adj[v])

    def edges(self):
        """Edges (u, v) with u < v in lexicographic order"""
        return [(u, v) for u in range(self.n) for v in _iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_regular(self):
        degs = self.degrees()
        return min(degs) == max(degs)

    def induced(self, vertices):
        """Induced subgraph on the given vertices, relabeled 0..k-1 in the given order"""
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in _iter_bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm):
        """Graph with vertex v renamed perm[v]"""
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in _iter_bits(self.adj[v]):
                row |= 1 << perm[u]
            rows[perm[v]] = row
        return Graph(self.n, tuple(rows))

    def __str__(self):
        return to_graph6(self)


# ---------------------------------------------------------------------------
# graph6 and edge-list formats
# ---------------------------------------------------------------------------

def to_networkx(g):
    """networkx.Graph on nodes 0..n-1 with the same edges"""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def from_networkx(G):
    """Graph from a networkx graph whose nodes are 0..n-1"""
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def parse_graph6(text):
    """Decode a headerless short-form graph6 string"""
    if text is None or len(text) == 0:
        raise GraphParseError("empty graph6 string", 0)
    for offset, ch in enumerate(text):
        code = ord(ch)
        if code < 63 or code > 126:
            raise GraphParseError(f"byte {code} outside the printable graph6 range 63..126", offset)
    n = ord(text[0]) - 63
    if n == 63:
        raise GraphParseError(f"graphs above {MAX_VERTICES} vertices are not supported", 0)
    if n == 0:
        raise GraphParseError("graph6 encodes a graph with no vertices", 0)
    n_bits = comb(n, 2)
    expected = 1 + (n_bits + 5) // 6
    if len(text) != expected:
        raise GraphParseError(f"expected {expected} bytes for n={n}, got {len(text)}", min(len(text), expected))
    if n_bits % 6:
        last = ord(text[-1]) - 63
        if last & ((1 << (6 - n_bits % 6)) - 1):
            raise GraphParseError("non-zero padding bits", len(text) - 1)

    try:
        G = nx.from_graph6_bytes(text.encode("ascii"))
    except nx.NetworkXError as e:
        raise GraphParseError(str(e), 0) from e
    return from_networkx(G)


def to_graph6(g):
    """Encode g as a short-form graph6 string, labels as given"""
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode("ascii").rstrip("\n")


def parse_edge_list(text):
    """Parse the "n m" header followed by m "u v" lines"""
    lines = [line for line in text.splitlines()]
    body = [(i, line.split()) for i, line in enumerate(lines) if line.strip()]
    if not body:
        raise GraphParseError("empty edge list", 0)
    line_no, header = body[0]
    if len(header) != 2:
        raise GraphParseError("header must be 'n m'", line_no)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError("header must hold two integers", line_no) from None
    if len(body) - 1 != m:
        raise GraphParseError(f"header announces {m} edges, found {len(body) - 1}", line_no)
    edges = []
    for line_no, fields in body[1:]:
        if len(fields) != 2:
            raise GraphParseError("edge line must be 'u v'", line_no)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphParseError("edge endpoints must be integers", line_no) from None
        if not 0 <= u < v < n:
            raise GraphParseError(f"edge ({u}, {v}) must satisfy 0 <= u < v < {n}", line_no)
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise GraphParseError("duplicate edge", body[0][0])
    try:
        return Graph.from_edges(n, edges)
    except GraphArgumentError as e:
        raise GraphParseError(str(e), body[0][0]) from None


def to_edge_list(g):
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Clique counting
# ---------------------------------------------------------------------------

def count_cliques_in(adj, cand, t):
    """Number of t-cliques inside the vertex mask cand"""
    if t == 1:
        return cand.bit_count()
    if cand.bit_count() < t:
        return 0
    total = 0
    if t == 2:
        while cand:
            low = cand & -cand
            cand ^= low
            total += (adj[low.bit_length() - 1] & cand).bit_count()
        return total
    while cand:
        low = cand & -cand
        cand ^= low
        total += count_cliques_in(adj, adj[low.bit_length() - 1] & cand, t - 1)
    return total


def count_cliques(g, t):
    """Number of K_t subgraphs of g"""
    if t < 1:
        raise GraphArgumentError(f"clique order must be >= 1, got {t}")
    if t > g.n:
        return 0
    return count_cliques_in(g.adj, g.full_mask, t)


# ---------------------------------------------------------------------------
# Canonical labeling
# ---------------------------------------------------------------------------

def _refine(adj, cells):
    # Equitable refinement: split cells by neighbour counts into every cell
    while True:
        masks = [mask_of(cell) for cell in cells]
        refined = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            keys = sorted(set(signature.values()))
            if len(keys) == 1:
                refined.append(cell)
                continue
            changed = True
            for key in keys:
                refined.append([v for v in cell if signature[v] == key])
        cells = refined
        if not changed:
            return cells


def _are_twins(adj, u, v):
    return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)


def _leaf_code(adj, order):
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def _canonical_order(g):
    adj = g.adj
    degs = g.degrees()
    start = [[v for v in range(g.n) if degs[v] == d] for d in sorted(set(degs))]
    best = [None, None]

    def search(cells):
        cells = _refine(adj, cells)
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = i
        if target is None:
            order = [cell[0] for cell in cells]
            code = _leaf_code(adj, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        representatives = []
        for v in cell:
            # swapping twins is an automorphism fixing the rest of the partition
            if any(_are_twins(adj, v, r) for r in representatives):
                continue
            representatives.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(start)
    return best[1]


def canonical_relabeling(g):
    """Permutation perm with perm[v] = canonical label of v"""
    order = _canonical_order(g)
    perm = [0] * g.n
    for position, v in enumerate(order):
        perm[v] = position
    return perm


def canonical_form(g):
    """graph6 string of the canonical relabeling of g"""
    return to_graph6(g.relabel(canonical_relabeling(g)))


def are_isomorphic(g1, g2):
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


# ---------------------------------------------------------------------------
# Subgraph embedding
# ---------------------------------------------------------------------------

def _embedding_order(h, root):
    # BFS from the root, then the remaining components by descending degree
    order = []
    seen = 0
    roots = [root] + sorted((v for v in range(h.n) if v != root), key=lambda v: (-h.degree(v), v))
    for r in roots:
        if seen >> r & 1:
            continue
        queue = [r]
        seen |= 1 << r
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in _iter_bits(h.adj[x] & ~seen):
                seen |= 1 << y
                queue.append(y)
    return order


def find_copy_at(g, h, v, within=None):
    """
    Injective edge-preserving map phi: V(h) -> V(g) with v in its image,
    as a list indexed by h-vertex, or None. Copies are subgraphs, not
    necessarily induced. Optionally restricted to the vertex mask within.
    """
    if not 0 <= v < g.n:
        raise GraphArgumentError(f"vertex {v} outside 0..{g.n - 1}")
    within = g.full_mask if within is None else within
    if not within >> v & 1 or h.n > within.bit_count():
        return None
    gdeg = [(g.adj[x] & within).bit_count() for x in range(g.n)]
    hdeg = h.degrees()
    h_nbrs = [vertices_of(row) for row in h.adj]

    for root in range(h.n):
        if hdeg[root] > gdeg[v]:
            continue
        order = _embedding_order(h, root)
        phi = [-1] * h.n
        phi[root] = v

        def extend(i, used):
            if i == len(order):
                return True
            x = order[i]
            cand = within & ~used
            for y in h_nbrs[x]:
                if phi[y] >= 0:
                    cand &= g.adj[phi[y]]
            for w in _iter_bits(cand):
                if gdeg[w] < hdeg[x]:
                    continue
                phi[x] = w
                if extend(i + 1, used | 1 << w):
                    return True
            phi[x] = -1
            return False

        if extend(1, 1 << v):
            return phi
    return None


def subgraph_copy_at(g, h, v):
    """True iff some copy of h in g contains vertex v"""
    return find_copy_at(g, h, v) is not None


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def disjoint_union(gs):
    """Block-diagonal union, labels shifted in list order"""
    gs = list(gs)
    if not gs:
        raise GraphArgumentError("disjoint union of an empty list is undefined")
    total = sum(g.n for g in gs)
    if total > MAX_VERTICES:
        raise GraphArgumentError(f"union has {total} vertices, above {MAX_VERTICES}")
    rows = []
    shift = 0
    for g in gs:
        rows.extend(row << shift for row in g.adj)
        shift += g.n
    return Graph(total, tuple(rows))


def complete_graph(n):
    return Graph.from_edges(n, combinations(range(n), 2))


def empty_graph(n):
    return Graph(n, (0,) * n)


def cycle_graph(n):
    if n < 3:
        raise GraphArgumentError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def clique_with_pendant(n):
    """K_n plus one pendant vertex attached to vertex 0"""
    return Graph.from_edges(n + 1, list(combinations(range(n), 2)) + [(0, n)])


def clique_minus_edge(n):
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if e != (0, 1)])


def circulant(m, jumps):
    """Vertex i adjacent to i +- j (mod m) for every jump j"""
    if m < 1:
        raise GraphArgumentError(f"circulant order must be positive, got {m}")
    edges = set()
    for j in jumps:
        if j < 1 or 2 * j > m:
            raise GraphArgumentError(f"jump {j} outside 1..{m // 2} for m={m}")
        for i in range(m):
            u, v = i, (i + j) % m
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(m, sorted(edges))


def random_gnp(n, p, seed):
    """
    G(n, p) sample driven by numpy's PCG64 generator. One uniform draw per
    pair (u, v), u < v, in lexicographic order; the pair is an edge iff the
    draw is below p.
    """
    if not 0 <= p <= 1:
        raise GraphArgumentError(f"edge probability must lie in [0, 1], got {p}")
    if not 1 <= n <= MAX_VERTICES:
        raise GraphArgumentError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed & (2**64 - 1)))
    draws = rng.random(comb(n, 2))
    threshold = float(p)
    edges = [pair for pair, draw in zip(combinations(range(n), 2), draws) if draw < threshold]
    return Graph.from_edges(n, edges)


_NAMED = [
    (re.compile(r"^K(\d+)\+pendant$"), lambda m: clique_with_pendant(int(m[1]))),
    (re.compile(r"^K(\d+)-e$"), lambda m: clique_minus_edge(int(m[1]))),
    (re.compile(r"^K(\d+),(\d+)$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"^K(\d+)$"), lambda m: complete_graph(int(m[1]))),
    (re.compile(r"^C(\d+)$"), lambda m: cycle_graph(int(m[1]))),
    (re.compile(r"^P(\d+)$"), lambda m: path_graph(int(m[1]))),
    (re.compile(r"^E(\d+)$"), lambda m: empty_graph(int(m[1]))),
]


def _parse_params(text):
    params = {}
    for item in text.split(","):
        if "=" not in item:
            raise GraphArgumentError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def named_graph(text):
    """
    Graph from a shorthand such as K5, C7, P4, K4+pendant, K4-e, K1,7, E3,
    tightness:l=4,d=2, circulant:m=7,j=1;2, gnp:n=16,p=0.5,seed=1, or a
    disjoint union of those joined with '|'
    """
    text = text.strip()
    if "|" in text:
        return disjoint_union(named_graph(part) for part in text.split("|"))
    if text.startswith("tightness:"):
        from construct import build_tightness
        params = _parse_params(text[len("tightness:"):])
        return build_tightness(int(params["l"]), int(params["d"]))
    if text.startswith("circulant:"):
        params = _parse_params(text[len("circulant:"):])
        return circulant(int(params["m"]), [int(j) for j in params["j"].split(";")])
    if text.startswith("gnp:"):
        params = _parse_params(text[len("gnp:"):])
        return random_gnp(int(params["n"]), Fraction(params["p"]), int(params.get("seed", 0)))
    for pattern, build in _NAMED:
        match = pattern.match(text)
        if match:
            return build(match)
    raise GraphArgumentError(f"unknown graph shorthand {text!r}")


def load_graph(arg):
    """Graph from a file path (graph6 or edge list), a shorthand, or inline graph6"""
    if os.path.isfile(arg):
        with open(arg, 'r', encoding='utf-8') as f:
            text = f.read()
        first = text.strip().splitlines()[0] if text.strip() else ""
        if len(first.split()) == 2:
            return parse_edge_list(text)
        return parse_graph6(first.strip())
    try:
        return named_graph(arg)
    except (GraphArgumentError, KeyError, ValueError):
        return parse_graph6(arg.strip())
