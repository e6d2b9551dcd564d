"""
Desk-scale ground truth
Exhaustive search for the fewest K_t copies in an N-vertex H-covered graph,
coverage checking, and the peeling lower bound
"""
import sys
from dataclasses import dataclass, field
from math import comb

from construct import (build_elementary_extremal, build_ideal_extremal, elementary_partitions)
from coverage_profile import profile_exact, require_exact
from errors import BudgetExceeded, ContractError, GraphArgumentError, InfeasibleError
from graph_core import (Graph, canonical_form, count_cliques, find_copy_at, mask_of,
                        parse_graph6, vertices_of)
from ip_core import solve_ip
from settings import SETTINGS


# ---------------------------------------------------------------------------
# Coverage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverAssignment:
    """sets[v] is an n-vertex set S(v) containing v whose induced graph holds a copy of h"""
    sets: tuple

    def __getitem__(self, v):
        return self.sets[v]

    def __len__(self):
        return len(self.sets)

    def to_dict(self):
        return {str(v): vertices_of(s) for v, s in enumerate(self.sets)}


@dataclass
class CoverCheck:
    covered: bool
    cover: CoverAssignment = None
    uncovered: int = None

    def __bool__(self):
        return self.covered


def is_covered(g, h):
    """Whether every vertex of g lies in a copy of h; returns a CoverCheck"""
    if h.n > g.n:
        return CoverCheck(False, None, 0)
    sets = []
    for v in range(g.n):
        phi = find_copy_at(g, h, v)
        if phi is None:
            return CoverCheck(False, None, v)
        sets.append(mask_of(phi))
    return CoverCheck(True, CoverAssignment(tuple(sets)))


def natural_cover(g, h):
    """The cover assignment found by is_covered"""
    check = is_covered(g, h)
    if not check:
        raise ContractError(f"vertex {check.uncovered} lies in no copy of h")
    return check.cover


def validate_cover(g, h, cover):
    if len(cover) != g.n:
        raise ContractError(f"cover has {len(cover)} sets for {g.n} vertices")
    for v in range(g.n):
        s = cover[v]
        if not s >> v & 1:
            raise ContractError(f"S({v}) does not contain {v}")
        if s & ~g.full_mask or s.bit_count() != h.n:
            raise ContractError(f"S({v}) must be {h.n} vertices of g")
        if find_copy_at(g, h, v, within=s) is None:
            raise ContractError(f"S({v}) does not hold a copy of h through {v}")


# ---------------------------------------------------------------------------
# Peeling bound
# ---------------------------------------------------------------------------

def peel_bound(g, h, t, cover, p, order=None):
    """
    Remove S(v_i) for each still-present v_i in order and add a[k_i],
    k_i = |V_i & S(v_i)|. The sum is a lower bound on c_t(g)
    """
    require_exact(p)
    if p.n != h.n or p.t != t:
        raise ContractError(f"profile is for n={p.n}, t={p.t}; expected n={h.n}, t={t}")
    validate_cover(g, h, cover)
    order = range(g.n) if order is None else order
    remaining = g.full_mask
    bound = 0
    for v in order:
        if not remaining >> v & 1:
            continue
        bound += p.a[(remaining & cover[v]).bit_count()]
        remaining &= ~cover[v]
    if remaining:
        raise ContractError(f"peel order leaves vertices {vertices_of(remaining)} unvisited")
    return bound


def greedy_order(g, cover):
    """Peel order taking the vertex whose set keeps the most remaining vertices, ties by index"""
    remaining = g.full_mask
    order = []
    while remaining:
        v = max(vertices_of(remaining), key=lambda x: ((remaining & cover[x]).bit_count(), -x))
        order.append(v)
        remaining &= ~cover[v]
    return order


# ---------------------------------------------------------------------------
# Isomorphism-free enumeration
# ---------------------------------------------------------------------------

def _add_edge(g, u, v):
    rows = list(g.adj)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(g.n, tuple(rows))


class _NodeCounter:
    def __init__(self, limit):
        self.limit = limit
        self.count = 0

    def tick(self):
        self.count += 1
        return self.count <= self.limit


def graph_levels(N, max_edges=None, keep=None, counter=None):
    """
    Yield (m, graphs) for m = 0, 1, ...: one canonical representative of every
    N-vertex graph with m edges whose edge-deleted ancestors all pass keep(g, m)
    """
    max_edges = comb(N, 2) if max_edges is None else max_edges
    level = {canonical_form(Graph(N, (0,) * N)): None}
    for m in range(max_edges + 1):
        graphs = [parse_graph6(form) for form in sorted(level)]
        if keep is not None:
            graphs = [g for g in graphs if keep(g, m)]
        yield m, graphs
        if m == max_edges:
            return
        nxt = {}
        for g in graphs:
            for u in range(N):
                for v in range(u + 1, N):
                    if g.adj[u] >> v & 1:
                        continue
                    if counter is not None and not counter.tick():
                        return
                    nxt[canonical_form(_add_edge(g, u, v))] = None
        level = nxt


def enumerate_graphs(N, edges=None):
    """All N-vertex graphs up to isomorphism, or those with the given edge count"""
    if not 1 <= N <= SETTINGS.oracle_max_n:
        raise BudgetExceeded(f"graph enumeration limited to 1..{SETTINGS.oracle_max_n} vertices")
    found = []
    for m, graphs in graph_levels(N, max_edges=edges):
        if edges is None or m == edges:
            found.extend(graphs)
    return found


# ---------------------------------------------------------------------------
# Exhaustive minimum
# ---------------------------------------------------------------------------

@dataclass
class OracleResult:
    N: int
    t: int
    min_count: int
    extremal: list
    nodes_explored: int
    lower_bound: int
    complete: bool = True
    targets_tried: list = field(default_factory=list)

    def to_dict(self):
        return {
            'N': self.N,
            't': self.t,
            'min_count': self.min_count,
            'extremal': list(self.extremal),
            'nodes_explored': self.nodes_explored,
            'lower_bound': self.lower_bound,
            'complete': self.complete,
            'targets_tried': list(self.targets_tried),
        }


def _deficiency(g, delta):
    return sum(max(0, delta - d) for d in g.degrees())


def _covered_at_target(h, t, N, target, counter):
    delta = h.min_degree
    # for edges the count is the level itself; otherwise any edge count may reach it
    max_edges = target if t == 2 else comb(N, 2)

    def keep(g, m):
        if _deficiency(g, delta) > 2 * (max_edges - m):
            return False
        return t == 2 or count_cliques(g, t) <= target

    found = []
    for m, graphs in graph_levels(N, max_edges=max_edges, keep=keep, counter=counter):
        if t == 2 and m != target:
            continue
        for g in graphs:
            if g.min_degree >= delta and count_cliques(g, t) == target and is_covered(g, h):
                found.append(canonical_form(g))
    return sorted(found)


def min_cover_exhaustive(h, t, N, max_nodes=None, max_n=None, p=None, verbose=False):
    """
    Fewest K_t copies over all N-vertex H-covered graphs, with every extremal
    graph up to isomorphism. Targets ascend from the integer-program value.
    An exhausted node budget returns a result with complete=False
    """
    max_n = max_n or SETTINGS.oracle_max_n
    max_nodes = max_nodes or SETTINGS.oracle_max_nodes
    if N > max_n:
        raise BudgetExceeded(f"exhaustive oracle limited to N <= {max_n}, got N={N}")
    if N < h.n:
        raise InfeasibleError(f"no H-covered graph on fewer than n vertices (N={N}, n={h.n})")
    if t < 2:
        raise GraphArgumentError(f"oracle needs t >= 2, got t={t}")
    p = p or profile_exact(h, t)
    lower = solve_ip(p, N, cap=1).value
    counter = _NodeCounter(max_nodes)
    tried = []
    for target in range(lower, comb(N, t) + 1):
        tried.append(target)
        found = _covered_at_target(h, t, N, target, counter)
        if counter.count > max_nodes:
            if verbose:
                print(f"⚠ Node budget {max_nodes} exhausted at target {target}", file=sys.stderr)
            return OracleResult(N, t, None, found, counter.count, lower, False, tried)
        if found:
            if verbose:
                print(f"✓ N={N}: minimum {target} with {len(found)} extremal graph(s), "
                      f"{counter.count} nodes", file=sys.stderr)
            return OracleResult(N, t, target, found, counter.count, lower, True, tried)
        if verbose:
            print(f"→ No H-covered graph with {target} copies, trying {target + 1}", file=sys.stderr)
    raise InfeasibleError(f"no H-covered graph found on {N} vertices")


# ---------------------------------------------------------------------------
# Families versus the extremal set
# ---------------------------------------------------------------------------

@dataclass
class UniquenessReport:
    N: int
    t: int
    min_count: int
    extremal: list
    ideal_member: str
    ideal_count: int
    elementary_members: dict
    outside_families: list
    non_extremal_members: list

    @property
    def ideal_matches(self):
        return self.ideal_member in self.extremal

    @property
    def elementary_matches(self):
        return [form for form in self.elementary_members.values() if form in self.extremal]

    def to_dict(self):
        return {
            'N': self.N,
            't': self.t,
            'min_count': self.min_count,
            'extremal': list(self.extremal),
            'ideal_member': self.ideal_member,
            'ideal_count': self.ideal_count,
            'ideal_matches': self.ideal_matches,
            'elementary_members': {"+".join(map(str, k)): v
                                   for k, v in self.elementary_members.items()},
            'elementary_matches': self.elementary_matches,
            'outside_families': list(self.outside_families),
            'non_extremal_members': [list(x) for x in self.non_extremal_members],
        }


def uniqueness_check(h, t, N, p=None, result=None, max_nodes=None):
    """Compare the oracle's extremal set with the ideal and elementary family members"""
    p = p or profile_exact(h, t)
    result = result or min_cover_exhaustive(h, t, N, max_nodes=max_nodes, p=p)
    if not result.complete:
        raise BudgetExceeded("oracle search was incomplete; no uniqueness verdict")

    ideal = build_ideal_extremal(h, t, N, p)
    ideal_form = canonical_form(ideal)
    members = {('ideal',): (ideal_form, count_cliques(ideal, t))}
    elementary = {}
    for parts in elementary_partitions(h.n, N):
        g = build_elementary_extremal(h, N, parts)
        form = canonical_form(g)
        elementary[tuple(parts)] = form
        members[tuple(parts)] = (form, count_cliques(g, t))

    family = {form for form, _ in members.values()}
    outside = [form for form in result.extremal if form not in family]
    non_extremal = sorted({(form, count) for form, count in members.values()
                           if form not in result.extremal})
    return UniquenessReport(N, t, result.min_count, result.extremal, ideal_form,
                            count_cliques(ideal, t), elementary, outside, non_extremal)
