"""
Coverage and density profiles of a host graph H
a_t(k): fewest K_t copies of H meeting some k-vertex set
e_t(k): most K_t copies inside some induced k-vertex subgraph
The two tables are tied by a[k] = c_t(H) - e[n - k]
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pandas as pd

from errors import ContractError, GraphArgumentError, ProfileSizeError
from graph_core import count_cliques, count_cliques_in, mask_of, vertices_of
from settings import SETTINGS


@dataclass(frozen=True)
class CoverageProfile:
    n: int
    t: int
    total: int
    a: tuple
    e: tuple
    exact: bool
    witness_a: tuple
    witness_e: tuple

    def to_text(self):
        """One line per k: "k a[k] e[k] witnessA witnessE" """
        def fmt(mask):
            vs = vertices_of(mask)
            return ",".join(map(str, vs)) if vs else "-"
        lines = [
            f"{k} {self.a[k]} {self.e[k]} {fmt(self.witness_a[k])} {fmt(self.witness_e[k])}"
            for k in range(self.n + 1)
        ]
        return "\n".join(lines) + "\n"

    def table(self):
        return pd.DataFrame({
            'k': range(self.n + 1),
            'a': self.a,
            'e': self.e,
            'witness_a': [vertices_of(m) for m in self.witness_a],
            'witness_e': [vertices_of(m) for m in self.witness_e],
        })

    def to_dict(self):
        return {
            'n': self.n,
            't': self.t,
            'total': self.total,
            'exact': self.exact,
            'a': list(self.a),
            'e': list(self.e),
            'witness_a': [vertices_of(m) for m in self.witness_a],
            'witness_e': [vertices_of(m) for m in self.witness_e],
        }


def _check_order(t):
    if t < 1:
        raise GraphArgumentError(f"clique order must be >= 1, got {t}")


def _from_density(h, t, e, witness_e, exact):
    n = h.n
    total = e[n]
    full = h.full_mask
    a = tuple(total - e[n - k] for k in range(n + 1))
    witness_a = tuple(full & ~witness_e[n - k] for k in range(n + 1))
    return CoverageProfile(n, t, total, a, tuple(e), exact, witness_a, tuple(witness_e))


def a_of_set(h, t, vertex_set):
    """Number of K_t copies of h that meet the vertex set"""
    _check_order(t)
    if vertex_set & ~h.full_mask:
        raise GraphArgumentError("vertex set is not a subset of the host graph")
    return count_cliques(h, t) - count_cliques_in(h.adj, h.full_mask & ~vertex_set, t)


# ---------------------------------------------------------------------------
# Exact engines
# ---------------------------------------------------------------------------

def _density_by_table(h, t):
    """
    Clique counts of all 2^n induced subgraphs, built one vertex at a time
    with numpy. Vertex v sits at index bit n-1-v, so among ties the largest
    index is the lexicographically smallest vertex set.
    """
    n = h.n
    size = 1 << n
    index_adj = [sum(1 << (n - 1 - u) for u in vertices_of(h.adj[v])) for v in range(n)]
    tables = {1: np.zeros(size, dtype=np.int16)}
    for j in range(2, t + 1):
        tables[j] = np.zeros(size, dtype=np.int64)
    for b in range(n):
        v = n - 1 - b
        low = np.arange(1 << b, dtype=np.int64)
        inter = low & index_adj[v]
        block = slice(1 << b, 1 << (b + 1))
        for j in range(t, 1, -1):
            tables[j][block] = tables[j][: 1 << b] + tables[j - 1][inter]
        tables[1][block] = tables[1][: 1 << b] + 1

    sizes = tables[1]
    values = tables[t]
    e = [0] * (n + 1)
    witness = [0] * (n + 1)
    for k in range(n + 1):
        selected = sizes == k
        best = int(values[selected].max())
        index = int(np.flatnonzero(selected & (values == best))[-1])
        e[k] = best
        witness[k] = mask_of(n - 1 - b for b in range(n) if index >> b & 1)
    return e, witness


def _density_by_branch(h, t, seed_e, seed_witness):
    """
    Depth-first sweep over vertex sets in lexicographic order with an
    optimistic completion bound, seeded by heuristic lower bounds
    """
    n = h.n
    adj = h.adj
    best = list(seed_e)
    witness = list(seed_witness)
    # seeded entries still wait for a witness of the sweep itself
    seeded = [True] * (n + 1)
    best[0], witness[0], seeded[0] = 0, 0, False

    def gain(v, chosen):
        if t == 1:
            return 1
        return count_cliques_in(adj, adj[v] & chosen, t - 1)

    def promising(chosen, size, value, start):
        rest = h.full_mask >> start << start
        inside = []
        outside = []
        for v in range(start, n):
            through = gain(v, chosen)
            if t > 2:
                # (t-1)-subsets of the reachable neighbourhood that use a new vertex
                through += (comb((adj[v] & (chosen | rest)).bit_count(), t - 1)
                            - comb((adj[v] & chosen).bit_count(), t - 1))
            inside.append(through)
            outside.append((adj[v] & rest).bit_count())
        inside.sort(reverse=True)
        outside.sort(reverse=True)
        top_in = 0
        top_out = 0
        for j in range(1, n - start + 1):
            top_in += inside[j - 1]
            top_out += outside[j - 1]
            if t == 1:
                bound = value + j
            elif t == 2:
                bound = value + top_in + min(j * (j - 1) // 2, top_out // 2)
            else:
                bound = value + top_in
            k = size + j
            if bound > best[k] or (bound == best[k] and seeded[k]):
                return True
        return False

    def visit(chosen, size, value, start):
        if value > best[size] or (value == best[size] and seeded[size]):
            best[size], witness[size], seeded[size] = value, chosen, False
        if start == n or not promising(chosen, size, value, start):
            return
        for v in range(start, n):
            visit(chosen | 1 << v, size + 1, value + gain(v, chosen), v + 1)

    visit(0, 0, 0, 0)
    return best, witness


def profile_exact(h, t, exact_max=None, method="auto"):
    """Exact coverage and density profiles of h for K_t"""
    _check_order(t)
    limit = exact_max if exact_max is not None else SETTINGS.exact_max(t)
    if h.n > limit:
        raise ProfileSizeError(
            f"exact profile limited to {limit} vertices for t={t} (graph has {h.n}); "
            f"use profile_heuristic instead"
        )
    if method == "auto":
        method = "table" if h.n <= SETTINGS.table_max else "branch"
    if method == "table":
        e, witness = _density_by_table(h, t)
    elif method == "branch":
        seed = profile_heuristic(h, t)
        e, witness = _density_by_branch(h, t, seed.e, seed.witness_e)
    else:
        raise GraphArgumentError(f"unknown profile method {method!r}")
    return _from_density(h, t, e, witness, exact=True)


# ---------------------------------------------------------------------------
# Heuristic engine
# ---------------------------------------------------------------------------

def _local_search(adj, t, chosen, value, n, max_passes):
    improved = True
    passes = 0
    while improved and passes < max_passes:
        improved = False
        passes += 1
        for u in vertices_of(chosen):
            without = chosen & ~(1 << u)
            loss = count_cliques_in(adj, adj[u] & without, t - 1) if t > 1 else 1
            for w in range(n):
                if chosen >> w & 1:
                    continue
                added = count_cliques_in(adj, adj[w] & without, t - 1) if t > 1 else 1
                if added > loss:
                    chosen = without | 1 << w
                    value += added - loss
                    improved = True
                    break
            if improved:
                break
    return chosen, value


def profile_heuristic(h, t, effort=8, seed=0):
    """
    Lower bounds on e[k] from greedy peeling, greedy densest extension with
    seeded restarts and swap local search; a[k] follows by duality, so it is
    an upper bound. exact is always False.
    """
    _check_order(t)
    n = h.n
    adj = h.adj
    full = h.full_mask
    rng = np.random.Generator(np.random.PCG64(seed))
    best = [-1] * (n + 1)
    witness = [0] * (n + 1)

    def record(chosen, value):
        k = chosen.bit_count()
        if value > best[k]:
            best[k], witness[k] = value, chosen

    def through(v, chosen):
        return count_cliques_in(adj, adj[v] & chosen, t - 1) if t > 1 else 1

    # greedy peeling from the whole graph
    chosen = full
    value = count_cliques(h, t)
    record(chosen, value)
    while chosen:
        v = min(vertices_of(chosen), key=lambda u: (through(u, chosen & ~(1 << u)), u))
        chosen &= ~(1 << v)
        value -= through(v, chosen)
        record(chosen, value)

    # greedy extension with restarts
    for restart in range(max(1, effort)):
        if restart == 0:
            start = max(range(n), key=lambda u: (h.degree(u), -u))
            order = list(range(n))
        else:
            start = int(rng.integers(n))
            order = [int(v) for v in rng.permutation(n)]
        chosen = 1 << start
        value = 1 if t == 1 else 0
        record(chosen, value)
        while chosen != full:
            v = max((u for u in order if not chosen >> u & 1), key=lambda u: through(u, chosen))
            value += through(v, chosen)
            chosen |= 1 << v
            record(chosen, value)

    for k in range(1, n):
        chosen, value = _local_search(adj, t, witness[k], best[k], n, max_passes=2 * n)
        record(chosen, value)

    # e is non-decreasing: extend the k-1 witness by its lowest missing vertex
    best[0], witness[0] = 0, 0
    for k in range(1, n + 1):
        if best[k] < best[k - 1]:
            missing = full & ~witness[k - 1]
            chosen = witness[k - 1] | (missing & -missing)
            best[k], witness[k] = count_cliques_in(adj, chosen, t), chosen
    return _from_density(h, t, best, witness, exact=False)


def coverage_by_direct_minimization(h, t, max_n=14):
    """a[k] by minimizing a_of_set over every k-subset (independent oracle)"""
    if h.n > max_n:
        raise ProfileSizeError(f"direct minimization limited to {max_n} vertices")
    return [
        min(a_of_set(h, t, mask_of(subset)) for subset in combinations(range(h.n), k))
        for k in range(h.n + 1)
    ]


# ---------------------------------------------------------------------------
# Ratios and predicates
# ---------------------------------------------------------------------------

def profile_table(p):
    """Plain-text profile table, one line per k"""
    return p.to_text()


def require_exact(p):
    if not p.exact:
        raise ContractError("this operation needs an exact profile")


def ratio_min(p):
    """Exact minimum of a[k]/k over k in 1..n, with every attaining k"""
    require_exact(p)
    ratios = {k: Fraction(p.a[k], k) for k in range(1, p.n + 1)}
    c = min(ratios.values())
    return c, [k for k, r in ratios.items() if r == c]


@dataclass
class PredicateResult:
    name: str
    applicable: bool
    holds: bool
    violations: list = field(default_factory=list)

    def to_dict(self):
        return {
            'name': self.name,
            'applicable': self.applicable,
            'holds': self.holds,
            'violations': [list(v) for v in self.violations],
        }


def _require_edges(p):
    require_exact(p)
    if p.t != 2:
        raise GraphArgumentError(f"edge predicates need t = 2, got t = {p.t}")


def check_profile_predicates(p, h):
    """
    Edge-profile predicates with every violating witness:
    regular_identity  a[k] + e[k] = d k                     (h d-regular)
    half_degree_bound 2 a[k] >= k (n - k)                   (2 delta >= n - 1)
    strict_superadditive_e  e[k] + e[l] < e[k + l]          (k + l <= n)
    complement_exchange a[k] + a[l] > a[n] + a[k + l - n]   (k, l < n, k + l >= n)
    """
    _require_edges(p)
    n, a, e = p.n, p.a, p.e
    results = {}

    regular = h.is_regular()
    d = h.degree(0)
    bad = [(k, a[k] + e[k], d * k) for k in range(n + 1) if regular and a[k] + e[k] != d * k]
    results['regular_identity'] = PredicateResult('regular_identity', regular, regular and not bad, bad)

    dense = 2 * h.min_degree >= n - 1
    bad = [(k, 2 * a[k], k * (n - k)) for k in range(n + 1) if dense and 2 * a[k] < k * (n - k)]
    results['half_degree_bound'] = PredicateResult('half_degree_bound', dense, dense and not bad, bad)

    bad = [(k, l) for k in range(1, n + 1) for l in range(k, n - k + 1) if e[k] + e[l] >= e[k + l]]
    results['strict_superadditive_e'] = PredicateResult('strict_superadditive_e', True, not bad, bad)

    bad = [(k, l) for k in range(1, n) for l in range(k, n)
           if k + l >= n and a[k] + a[l] <= a[n] + a[k + l - n]]
    results['complement_exchange'] = PredicateResult('complement_exchange', True, not bad, bad)
    return results


def check_ratio_lemma(p, h):
    """
    When 2 delta(h) >= n - 1: a[k]/k is minimized only at k = n, and
    a[n] <= a[k] + C(n - k, 2) for every k
    """
    _require_edges(p)
    n = p.n
    dense = 2 * h.min_degree >= n - 1
    _, argmin = ratio_min(p)
    results = {
        'ratio_minimized_at_n': PredicateResult(
            'ratio_minimized_at_n', dense, argmin == [n], [] if argmin == [n] else [tuple(argmin)]),
    }
    bad = [(k, p.a[k] + comb(n - k, 2)) for k in range(n + 1) if p.a[n] > p.a[k] + comb(n - k, 2)]
    results['complement_edge_bound'] = PredicateResult('complement_edge_bound', True, not bad, bad)
    return results
