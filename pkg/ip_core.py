"""
Integer program for the minimum K_t count of N-vertex H-covered graphs
minimize sum a[k] x_k  subject to  sum k x_k = N, x_k >= 0, x_n >= 1
Solved exactly as an unbounded knapsack after reserving one n-part
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from coverage_profile import require_exact, ratio_min
from errors import BudgetExceeded, GraphArgumentError, InfeasibleError
from settings import SETTINGS

CONV_BRUTE_MAX = 1_000_000


@dataclass(frozen=True, order=True)
class PartMultiset:
    parts: tuple

    @property
    def counts(self):
        """x_k as a dict k -> multiplicity"""
        counts = {}
        for k in self.parts:
            counts[k] = counts.get(k, 0) + 1
        return counts

    @property
    def total(self):
        return sum(self.parts)

    def cost(self, a):
        return sum(a[k] for k in self.parts)

    def to_list(self):
        return list(self.parts)

    def __str__(self):
        return "{" + ",".join(map(str, self.parts)) + "}"


def multiset(*parts):
    """PartMultiset from parts in any order"""
    return PartMultiset(tuple(sorted(parts, reverse=True)))


@dataclass
class IpSolution:
    N: int
    value: int
    optima: list
    overflow: bool = False
    require_full_part: bool = True
    dp_table: tuple = field(default=None, repr=False)

    def render(self):
        """Report form: value=13 optima=[[5,5,2]]"""
        lists = ",".join("[" + ",".join(map(str, m.parts)) + "]" for m in self.optima)
        suffix = " (overflow)" if self.overflow else ""
        return f"value={self.value} optima=[{lists}]{suffix}"

    def to_dict(self):
        return {
            'N': self.N,
            'value': self.value,
            'optima': [m.to_list() for m in self.optima],
            'overflow': self.overflow,
            'require_full_part': self.require_full_part,
        }


def _residue(p, N, require_full_part):
    if require_full_part:
        if N < p.n:
            raise InfeasibleError(
                f"no H-covered graph on fewer than n vertices (N={N}, n={p.n})")
        return N - p.n
    if N < 0:
        raise InfeasibleError(f"target N must be non-negative, got {N}")
    return N


def _knapsack(a, n, residue):
    """dp[m] = least sum a[k] over multisets of parts in 1..n summing to m"""
    dp = [0] * (residue + 1)
    for m in range(1, residue + 1):
        dp[m] = min(dp[m - k] + a[k] for k in range(1, min(n, m) + 1))
    return dp


def _walk_optima(a, n, dp, residue, cap):
    """Every optimal residue decomposition, parts non-increasing"""
    found = []
    overflow = False

    def walk(m, largest, acc):
        nonlocal overflow
        if overflow:
            return
        if m == 0:
            if len(found) >= cap:
                overflow = True
                return
            found.append(tuple(acc))
            return
        for k in range(min(largest, m), 0, -1):
            if dp[m - k] + a[k] == dp[m]:
                acc.append(k)
                walk(m - k, k, acc)
                acc.pop()

    walk(residue, n, [])
    return found, overflow


def enumerate_optima(p, N, cap=None, require_full_part=True):
    """
    All optimal part-multisets for target N, sorted lexicographically
    Returns (optima, overflow); overflow is True when the cap cut the list short
    """
    solution = solve_ip(p, N, cap=cap, require_full_part=require_full_part)
    return solution.optima, solution.overflow


def solve_ip(p, N, cap=None, require_full_part=True, keep_table=False):
    """Exact optimum of the program at target N, with its optimal multisets"""
    require_exact(p)
    n = p.n
    residue = _residue(p, N, require_full_part)
    cap = cap if cap is not None else SETTINGS.optima_cap
    dp = _knapsack(p.a, n, residue)
    found, overflow = _walk_optima(p.a, n, dp, residue, cap)
    head = (n,) if require_full_part else ()
    value = dp[residue] + (p.a[n] if require_full_part else 0)
    return IpSolution(
        N=N,
        value=value,
        optima=sorted({multiset(*head, *parts) for parts in found}),
        overflow=overflow,
        require_full_part=require_full_part,
        dp_table=tuple(dp) if keep_table else None,
    )


def _ceil(x):
    return -((-x.numerator) // x.denominator)


def cov_bounds(p, N):
    """(ceil(c N), a[n] + ceil(c N)) with c the least ratio a[k]/k"""
    c, _ = ratio_min(p)
    low = _ceil(c * N)
    return low, p.a[p.n] + low


def closed_form_clique(n, t, N):
    """(q+1) C(n,t) - C(n-r,t) with N = q n + r"""
    if t < 1 or t > n:
        raise GraphArgumentError(f"need 1 <= t <= n, got t={t}, n={n}")
    if N < n:
        raise InfeasibleError(f"no H-covered graph on fewer than n vertices (N={N}, n={n})")
    q, r = divmod(N, n)
    return (q + 1) * comb(n, t) - comb(n - r, t)


@dataclass
class ConvLemmaResult:
    n: int
    k: int
    r: int
    m: int
    maximum: int
    maximizers: list
    expected: tuple
    holds: bool

    def to_dict(self):
        return {
            'n': self.n, 'k': self.k, 'r': self.r, 'm': self.m,
            'maximum': self.maximum,
            'maximizers': [list(x) for x in self.maximizers],
            'expected': list(self.expected),
            'holds': self.holds,
        }


def check_conv_lemma(n, k, r, m, limit=CONV_BRUTE_MAX):
    """
    Maximize sum C(x_i, 2) over x_1..x_m in [0, n] with sum k n + r by brute force
    holds is True when the only maximizer is k slots at n, one at r, rest 0
    """
    if not 0 <= r < n:
        raise GraphArgumentError(f"remainder must satisfy 0 <= r < n, got r={r}, n={n}")
    if k < 0 or m <= k:
        raise GraphArgumentError(f"need 0 <= k < m, got k={k}, m={m}")
    space = comb(n + m, m)
    if space > limit:
        raise BudgetExceeded(f"{space} candidate multisets exceed the brute-force limit {limit}")

    target = k * n + r
    best, maximizers = None, []
    for xs in combinations_with_replacement(range(n, -1, -1), m):
        if sum(xs) != target:
            continue
        value = sum(comb(x, 2) for x in xs)
        if best is None or value > best:
            best, maximizers = value, [xs]
        elif value == best:
            maximizers.append(xs)

    expected = tuple([n] * k + [r] + [0] * (m - k - 1))
    return ConvLemmaResult(n, k, r, m, best, maximizers, expected, maximizers == [expected])


def ratio_series(p, Ns):
    """c and the exact ratios cov(N)/N, which tend to c as N grows"""
    c, _ = ratio_min(p)
    rows = []
    for N in Ns:
        value = solve_ip(p, N, cap=1).value
        rows.append({'N': N, 'value': value, 'ratio': Fraction(value, N)})
    return c, rows


def divisible_case_unique(p, q):
    """Whether {n^q} is the only optimum at N = q n; returns (unique, optima)"""
    if q < 1:
        raise GraphArgumentError(f"q must be >= 1, got {q}")
    optima, _ = enumerate_optima(p, q * p.n)
    return optima == [PartMultiset((p.n,) * q)], optima
