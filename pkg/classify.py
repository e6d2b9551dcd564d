"""
Remainder-class classification
Decides per remainder r whether the optimal part-multisets follow the
ideal shape {n^q, r}, the elementary shape {n^q, 1^r}, both, or neither
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from coverage_profile import PredicateResult, require_exact
from errors import GraphArgumentError
from ip_core import enumerate_optima, multiset, solve_ip
from settings import SETTINGS

IDEAL_CERTIFIED = "IdealCertified"
IDEAL_PATTERN = "IdealPattern"
ELEMENTARY_PATTERN = "ElementaryPattern"
BOTH_PATTERNS = "BothPatterns"
OTHER = "Other"


def gamma_beta(p):
    """
    beta' = least k >= 2 with a(k) <= k a(1); gamma = beta' - 1;
    beta = beta' + 1 on equality, else beta'. Without such k: (n, None, None)
    """
    require_exact(p)
    a = p.a
    for k in range(2, p.n + 1):
        if a[k] <= k * a[1]:
            beta = k + 1 if a[k] == k * a[1] else k
            return k - 1, k, beta
    return p.n, None, None


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass
class IdealCertificate:
    r: int
    certified: bool
    merge_violation: tuple = None
    exchange_violation: tuple = None
    other_residue_violations: dict = field(default_factory=dict)

    def first_violation(self):
        if self.merge_violation:
            return ('merge',) + self.merge_violation
        if self.exchange_violation:
            return ('exchange',) + self.exchange_violation
        if self.other_residue_violations:
            return ('exchange',) + self.other_residue_violations[min(self.other_residue_violations)]
        return None

    def to_dict(self):
        return {
            'r': self.r,
            'certified': self.certified,
            'merge_violation': list(self.merge_violation) if self.merge_violation else None,
            'exchange_violation': list(self.exchange_violation) if self.exchange_violation else None,
            'other_residue_violations': {
                str(s): list(v) for s, v in sorted(self.other_residue_violations.items())},
        }


def _first_merge_violation(a, n):
    # a(k) + a(l) > a(k + l) for 1 <= k <= l, k + l <= n
    for k in range(1, n + 1):
        for l in range(k, n - k + 1):
            if a[k] + a[l] <= a[k + l]:
                return (k, l, a[k] + a[l], a[k + l])
    return None


def _first_exchange_violation(a, n, s):
    # a(k) + a(l) > a(n) + a(s) for k <= l < n, k + l = n + s
    for k in range(s + 1, n):
        l = n + s - k
        if l < k:
            break
        if l < n and a[k] + a[l] <= a[n] + a[s]:
            return (k, l, a[k] + a[l], a[n] + a[s])
    return None


def certify_ideal(p, r):
    """
    Exchange certificate for remainder class r. Strict merge inequalities plus
    strict exchange inequalities at every residue leave at most one part below n
    in any optimum, so {n^q, r} is the unique optimum for every q
    """
    require_exact(p)
    n, a = p.n, p.a
    if not 0 <= r < n:
        raise GraphArgumentError(f"remainder must satisfy 0 <= r < n, got r={r}, n={n}")
    merge = _first_merge_violation(a, n)
    exchange = _first_exchange_violation(a, n, r)
    others = {}
    for s in range(n - 1):
        if s != r:
            v = _first_exchange_violation(a, n, s)
            if v:
                others[s] = v
    certified = merge is None and exchange is None and not others
    return IdealCertificate(r, certified, merge, exchange, others)


# ---------------------------------------------------------------------------
# Per-remainder pattern matching
# ---------------------------------------------------------------------------

@dataclass
class RemainderVerdict:
    r: int
    verdict: str
    q_range: tuple
    q_stable: bool
    certificate: IdealCertificate
    per_q: list = field(default_factory=list)

    def to_dict(self):
        return {
            'r': self.r,
            'verdict': self.verdict,
            'q_range': list(self.q_range),
            'q_stable': self.q_stable,
            'certificate': self.certificate.to_dict(),
            'per_q': self.per_q,
        }


@dataclass
class Classification:
    n: int
    t: int
    gamma: int
    beta_prime: int
    beta: int
    per_r: dict

    @property
    def q_stable(self):
        return {r: v.q_stable for r, v in self.per_r.items()}

    def verdicts(self):
        return {r: v.verdict for r, v in self.per_r.items()}

    def to_dict(self):
        return {
            'n': self.n,
            't': self.t,
            'gamma': self.gamma,
            'beta_prime': self.beta_prime,
            'beta': self.beta,
            'per_r': [self.per_r[r].to_dict() for r in sorted(self.per_r)],
        }


def shapes(n, q, r):
    """The ideal and elementary part-multisets for N = q n + r"""
    return multiset(*[n] * q, *([r] if r else [])), multiset(*[n] * q, *[1] * r)


def match_pattern(optima, ideal, elementary):
    found = set(optima)
    if found == {ideal, elementary}:
        return BOTH_PATTERNS
    if found == {ideal}:
        return IDEAL_PATTERN
    if found == {elementary}:
        return ELEMENTARY_PATTERN
    return OTHER


def relaxed_ties(p, N, value):
    """Optima of the program without the n-part constraint that tie the constrained value"""
    relaxed = solve_ip(p, N, require_full_part=False)
    if relaxed.value != value:
        return []
    return [m for m in relaxed.optima if p.n not in m.parts]


def _classify_one(p, r, q_max):
    n = p.n
    certificate = certify_ideal(p, r)
    per_q = []
    for q in range(1, q_max + 1):
        N = q * n + r
        solution = solve_ip(p, N)
        ties = relaxed_ties(p, N, solution.value)
        ideal, elementary = shapes(n, q, r)
        verdict = OTHER if solution.overflow else match_pattern(solution.optima, ideal, elementary)
        if ties and verdict in (IDEAL_PATTERN, BOTH_PATTERNS):
            verdict = OTHER
        per_q.append({
            'q': q,
            'N': N,
            'value': solution.value,
            'optima': [m.to_list() for m in solution.optima],
            'relaxed_ties': [m.to_list() for m in ties],
            'overflow': solution.overflow,
            'verdict': verdict,
        })
    seen = {entry['verdict'] for entry in per_q}
    stable = len(seen) == 1
    if certificate.certified:
        verdict = IDEAL_CERTIFIED
    else:
        verdict = per_q[-1]['verdict']
    return RemainderVerdict(r, verdict, (1, q_max), stable, certificate, per_q)


def classify_remainders(p, q_max=None, threads=None):
    """Verdict for every remainder class r = 0..n-1 over q = 1..q_max"""
    require_exact(p)
    q_max = q_max or SETTINGS.q_max
    threads = threads or SETTINGS.threads
    rs = range(p.n)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            verdicts = list(executor.map(lambda r: _classify_one(p, r, q_max), rs))
    else:
        verdicts = [_classify_one(p, r, q_max) for r in rs]
    gamma, beta_prime, beta = gamma_beta(p)
    return Classification(p.n, p.t, gamma, beta_prime, beta, {v.r: v for v in verdicts})


# ---------------------------------------------------------------------------
# Random-regime shape check
# ---------------------------------------------------------------------------

def regime_predicates(p):
    """Finite inequalities behind the elementary-then-ideal split"""
    n, a = p.n, p.a
    gamma, _, beta = gamma_beta(p)
    results = {}

    bad = [(k, a[k], k * a[1]) for k in range(2, gamma + 1) if a[k] <= k * a[1]]
    results['single'] = PredicateResult('single', True, not bad, bad)

    applicable = beta is not None
    bad = [(k, a[k], k * a[1]) for k in range(beta, n + 1) if a[k] >= k * a[1]] if applicable else []
    results['mid'] = PredicateResult('mid', applicable, applicable and not bad, bad)

    bad = []
    if applicable:
        bad = [(k, l) for k in range(1, n) for l in range(k, n - k + 1)
               if k + l >= beta and a[k] + a[l] <= a[k + l]]
    results['double'] = PredicateResult('double', applicable, applicable and not bad, bad)

    bad = [(k, l) for k in range(1, n) for l in range(k, n)
           if k + l >= n and a[k] + a[l] <= a[n] + a[k + l - n]]
    results['prob'] = PredicateResult('prob', True, not bad, bad)

    root = isqrt(n)
    bad = [(k, l) for k in range(root + 1, n + 1) for l in range(k + 1, n + 1)
           if Fraction(a[k], k) <= Fraction(a[l], l)]
    results['helper'] = PredicateResult('helper', True, not bad, bad)
    return results


@dataclass
class ShapeReport:
    gamma: int
    beta_prime: int
    beta: int
    q_max: int
    checks: list
    deviations: list
    predicates: dict

    @property
    def passed(self):
        return not self.deviations

    def to_dict(self):
        return {
            'gamma': self.gamma,
            'beta_prime': self.beta_prime,
            'beta': self.beta,
            'q_max': self.q_max,
            'passed': self.passed,
            'checks': self.checks,
            'deviations': self.deviations,
            'predicates': {name: res.to_dict() for name, res in self.predicates.items()},
        }


def _deviation_witness(a, expected, optima):
    # tie: every expected shape is optimal but other multisets reach the same value
    value = optima[0].cost(a)
    costs = [(m, m.cost(a)) for m in sorted(expected, key=lambda m: m.parts)]
    return {
        'kind': 'tie' if all(c == value for _, c in costs) else 'inequality',
        'value': value,
        'shapes': [{'multiset': m.to_list(), 'cost': c} for m, c in costs],
        'others': [m.to_list() for m in optima if m not in expected],
    }


def check_regime_shape(p, q_max=None):
    """
    Elementary optima for r <= gamma, ideal optima for r >= beta, both
    shapes for the remainder strictly between; every deviation is reported
    """
    require_exact(p)
    if p.t != 2:
        raise GraphArgumentError(f"shape check needs t = 2, got t = {p.t}")
    q_max = q_max or SETTINGS.q_max
    n = p.n
    gamma, beta_prime, beta = gamma_beta(p)
    checks, deviations = [], []
    for r in range(n):
        for q in range(1, q_max + 1):
            ideal, elementary = shapes(n, q, r)
            if r <= gamma:
                expected, region = {elementary}, 'elementary'
            elif beta is not None and r >= beta:
                expected, region = {ideal}, 'ideal'
            else:
                expected, region = {ideal, elementary}, 'both'
            optima, _ = enumerate_optima(p, q * n + r)
            ok = set(optima) == expected
            entry = {
                'r': r,
                'q': q,
                'region': region,
                'expected': sorted(m.to_list() for m in expected),
                'optima': [m.to_list() for m in optima],
                'passed': ok,
            }
            checks.append(entry)
            if not ok:
                entry['witness'] = _deviation_witness(p.a, expected, optima)
                deviations.append(entry)
    return ShapeReport(gamma, beta_prime, beta, q_max, checks, deviations, regime_predicates(p))
