"""
Extremal constructions
Overlap gluings (L), min-degree clone gluings (M), the ideal and elementary
assemblies built from them, and the regular and pendant examples
"""
from dataclasses import dataclass
from itertools import combinations

from coverage_profile import a_of_set, require_exact
from errors import ContractError, GraphArgumentError, InfeasibleError
from graph_core import MAX_VERTICES, Graph, circulant, disjoint_union, mask_of, vertices_of


@dataclass(frozen=True)
class GluingPlan:
    """Second copy of h shares `shared` with the first; its private vertices get fresh labels"""
    n: int
    shared: int
    private: tuple

    @property
    def r(self):
        return len(self.private)


def _check_profile(h, t, p):
    require_exact(p)
    if p.n != h.n or p.t != t:
        raise ContractError(f"profile is for n={p.n}, t={p.t}; expected n={h.n}, t={t}")


def gluing_plan(h, r, p):
    """Share the densest (n - r)-set recorded in the profile"""
    shared = p.witness_e[h.n - r]
    private = tuple(v for v in range(h.n) if not shared >> v & 1)
    return GluingPlan(h.n, shared, private)


def _glue(edges, h, plan, offset):
    # Copy of h with shared vertices fixed and private vertex i sent to offset + i
    label = list(range(h.n))
    for i, v in enumerate(plan.private):
        label[v] = offset + i
    for u, v in h.edges():
        a, b = label[u], label[v]
        edges.add((min(a, b), max(a, b)))


def build_L(h, t, r, p):
    """Two copies of h overlapping in a K_t-densest (n - r)-set"""
    _check_profile(h, t, p)
    if not 0 <= r < h.n:
        raise GraphArgumentError(f"remainder must satisfy 0 <= r < n, got r={r}, n={h.n}")
    if r == 0:
        return h
    edges = set(h.edges())
    _glue(edges, h, gluing_plan(h, r, p), h.n)
    return Graph.from_edges(h.n + r, sorted(edges))


def build_M(h, N):
    """
    h with N - n clones of its lowest-index minimum-degree vertex
    For N > n the cloned vertex is moved to label n - 1 and clones take
    labels n..N-1; N = n returns h unchanged
    """
    n = h.n
    if not n <= N < 2 * n:
        raise GraphArgumentError(f"M gluing needs n <= N < 2n, got N={N}, n={n}")
    if N == n:
        return h
    degs = h.degrees()
    low = degs.index(min(degs))
    perm = list(range(n))
    perm[low], perm[n - 1] = n - 1, low
    base = h.relabel(perm)
    row = base.adj[n - 1]
    edges = base.edges()
    for clone in range(n, N):
        edges.extend((u, clone) for u in vertices_of(row))
    return Graph.from_edges(N, edges)


def build_ideal_extremal(h, t, N, p):
    """(q - 1) disjoint copies of h plus build_L(h, t, r) for N = q n + r"""
    _check_profile(h, t, p)
    if N < h.n:
        raise InfeasibleError(f"no H-covered graph on fewer than n vertices (N={N}, n={h.n})")
    q, r = divmod(N, h.n)
    return disjoint_union([h] * (q - 1) + [build_L(h, t, r, p)])


def build_elementary_extremal(h, N, parts):
    """Disjoint union of build_M(h, b) over the parts b, each in [n, 2n)"""
    n = h.n
    parts = list(parts)
    bad = [b for b in parts if not n <= b < 2 * n]
    if not parts or bad or sum(parts) != N:
        raise GraphArgumentError(
            f"invalid partition {parts} of N={N}: parts must lie in [{n}, {2 * n}) and sum to N")
    return disjoint_union(build_M(h, b) for b in parts)


def elementary_partitions(n, N):
    """All non-increasing lists of parts in [n, 2n) summing to N"""
    found = []

    def walk(rest, largest, acc):
        if rest == 0:
            found.append(list(acc))
            return
        for b in range(min(largest, rest, 2 * n - 1), n - 1, -1):
            acc.append(b)
            walk(rest - b, b, acc)
            acc.pop()

    if N >= n:
        walk(N, 2 * n - 1, [])
    return found


def build_tightness(l, d):
    """Connected d-regular circulants on l and l + 1 vertices, side by side"""
    if d % 2 or d < 2 or d >= l:
        raise GraphArgumentError(f"need an even degree 2 <= d < l, got l={l}, d={d}")
    jumps = list(range(1, d // 2 + 1))
    return disjoint_union([circulant(l, jumps), circulant(l + 1, jumps)])


def build_pendant_clique(n, N):
    """K_n with N - n pendant vertices all attached to vertex 0"""
    if N <= n:
        raise GraphArgumentError(f"need N > n for pendant vertices, got N={N}, n={n}")
    edges = list(combinations(range(n), 2)) + [(0, v) for v in range(n, N)]
    return Graph.from_edges(N, edges)


def build_ip_realization(h, t, parts, p):
    """
    H-covered graph whose K_t count is the cost of the part-multiset:
    one copy of h on 0..n-1, then for every other part k a copy of h
    sharing the densest (n - k)-set with it
    """
    _check_profile(h, t, p)
    n = h.n
    parts = sorted(getattr(parts, 'parts', parts), reverse=True)
    if not parts or parts[0] != n or any(not 1 <= k <= n for k in parts):
        raise ContractError(f"parts {parts} must lie in 1..{n} and include an n-part")
    N = sum(parts)
    if N > MAX_VERTICES:
        raise GraphArgumentError(f"realization needs {N} vertices, above {MAX_VERTICES}")
    edges = set(h.edges())
    offset = n
    for k in parts[1:]:
        plan = gluing_plan(h, k, p) if k < n else GluingPlan(n, 0, tuple(range(n)))
        _glue(edges, h, plan, offset)
        offset += k
    return Graph.from_edges(N, sorted(edges))


def two_lowest_degree_gap(h):
    """
    Compare the cheapest L gluing on n + 2 vertices with the two-clone M gluing.
    Any L member has at least e(h) + d1 + d2 - 1 edges; M has e(h) + 2 d1.
    """
    if h.n < 2:
        raise GraphArgumentError("need at least two vertices")
    d1, d2 = sorted(h.degrees())[:2]
    e = h.edge_count()
    pair_cover = min(a_of_set(h, 2, mask_of(pair)) for pair in combinations(range(h.n), 2))
    l_lower = e + d1 + d2 - 1
    m_edges = e + 2 * d1
    return {
        'd1': d1,
        'd2': d2,
        'edges': e,
        'applies': d2 >= d1 + 2,
        'l_lower_bound': l_lower,
        'l_edges': e + pair_cover,
        'm_edges': m_edges,
        'm_beats_l': m_edges < e + pair_cover,
    }
