"""
Random-graph laboratory
Seeded G(n, p) samples: degree statistics, gamma/beta thresholds,
shape checks against the optimal part-multisets, and scaling tables
"""
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
import pandas as pd

from classify import check_regime_shape
from coverage_profile import profile_exact
from errors import GraphArgumentError
from graph_core import random_gnp, to_graph6
from settings import SETTINGS


@dataclass
class ExperimentRecord:
    n: int
    p: str
    seed: int
    q_max: int
    graph6: str
    degree_sequence: list
    gamma: int
    beta_prime: int
    beta: int
    shape_passed: bool
    shape_deviations: list = field(default_factory=list)
    gap_passed: bool = True
    gap_first_violation: int = None
    degree_stats: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def degree_statistics(g):
    """Spread of the degree sequence"""
    degs = np.array(sorted(g.degrees()))
    return {
        'min': int(degs.min()),
        'max': int(degs.max()),
        'mean': float(np.mean(degs)),
        'std': float(np.std(degs)),
        'spread': int(degs[-1] - degs[0]),
    }


def degree_gap_check(g, eps=None):
    """
    sum_{i<=k} (d_i - d_1) > C(k, 2) for 2 <= k <= eps sqrt(n ln n), degrees ascending.
    Returns (passed, first violating k or None)
    """
    eps = Fraction(eps) if eps is not None else SETTINGS.gap_eps
    degs = sorted(g.degrees())
    n = len(degs)
    k_max = min(n, math.floor(float(eps) * math.sqrt(n * math.log(n)))) if n > 1 else 0
    gap = 0
    for k in range(2, k_max + 1):
        gap += degs[k - 1] - degs[0]
        if gap <= math.comb(k, 2):
            return False, k
    return True, None


def run_experiment(n, p, seed, q_max=None, eps=None):
    """Sample, profile exactly, and check the elementary-then-ideal shape"""
    q_max = q_max or SETTINGS.q_max
    g = random_gnp(n, p, seed)
    profile = profile_exact(g, 2)
    shape = check_regime_shape(profile, q_max)
    gap_ok, gap_k = degree_gap_check(g, eps)
    return ExperimentRecord(
        n=n,
        p=str(p),
        seed=seed,
        q_max=q_max,
        graph6=to_graph6(g),
        degree_sequence=sorted(g.degrees()),
        gamma=shape.gamma,
        beta_prime=shape.beta_prime,
        beta=shape.beta,
        shape_passed=shape.passed,
        shape_deviations=[[d['r'], d['q']] for d in shape.deviations],
        gap_passed=gap_ok,
        gap_first_violation=gap_k,
        degree_stats=degree_statistics(g),
    )


def run_trials(n, p, seeds, q_max=None, eps=None, threads=None, verbose=False):
    """Experiments for every seed, ordered by seed"""
    seeds = list(seeds)
    threads = threads or SETTINGS.threads
    records = {}
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = {executor.submit(run_experiment, n, p, s, q_max, eps): s for s in seeds}
        for i, future in enumerate(as_completed(futures), 1):
            record = future.result()
            records[futures[future]] = record
            if verbose:
                status = "✓" if record.shape_passed else "⚠"
                print(f"[{i}/{len(seeds)}] {status} n={n} seed={record.seed} "
                      f"gamma={record.gamma} beta={record.beta}", file=sys.stderr)
    return [records[s] for s in sorted(records)]


def scaling_report(ns, p, trials, seed0=0, q_max=None, threads=None, verbose=False):
    """Mean and spread of gamma per n next to sqrt(n ln n); no asymptotic claim"""
    if trials < 1:
        raise GraphArgumentError(f"trials must be positive, got {trials}")
    if not ns:
        raise GraphArgumentError("need at least one n")
    rows = []
    for n in ns:
        records = run_trials(n, p, range(seed0, seed0 + trials), q_max=q_max,
                             threads=threads, verbose=verbose)
        gammas = np.array([r.gamma for r in records])
        rows.append({
            'n': n,
            'trials': trials,
            'gamma_mean': float(np.mean(gammas)),
            'gamma_std': float(np.std(gammas)),
            'gamma_min': int(gammas.min()),
            'gamma_max': int(gammas.max()),
            'beta_missing': sum(r.beta is None for r in records),
            'shape_passed': sum(r.shape_passed for r in records),
            'degree_spread_mean': float(np.mean([r.degree_stats['spread'] for r in records])),
            'sqrt_n_log_n': math.sqrt(n * math.log(n)),
        })
    return pd.DataFrame(rows)


def append_records(path, records):
    """Append records as JSON lines"""
    with open(path, 'a', encoding='utf-8') as f:
        for record in records:
            data = record.to_dict() if hasattr(record, 'to_dict') else record
            f.write(json.dumps(data, sort_keys=True) + "\n")


def load_records(path):
    with open(path, 'r', encoding='utf-8') as f:
        return [json.loads(line) for line in f if line.strip()]
