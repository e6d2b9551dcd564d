"""
hcover command line
Subcommands: profile, solve, construct, classify, oracle, verify, random
Tables go to stdout, status lines to stderr, reports as JSON
"""
import argparse
import json
import sys
import time
from fractions import Fraction

import pandas as pd

from classify import check_regime_shape, classify_remainders
from construct import (build_elementary_extremal, build_ideal_extremal, build_ip_realization,
                       build_L, build_M, build_pendant_clique, build_tightness)
from coverage_profile import (check_profile_predicates, check_ratio_lemma, profile_exact,
                              profile_heuristic, ratio_min)
from errors import BudgetExceeded, HCoverError, ProfileSizeError
from graph_core import count_cliques, load_graph, to_edge_list, to_graph6
from ip_core import cov_bounds, solve_ip
from oracle import (greedy_order, is_covered, min_cover_exhaustive, peel_bound,
                    uniqueness_check)
from rand_lab import append_records, run_trials, scaling_report
from settings import SCHEMA_VERSION, SETTINGS, TOOL_VERSION

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def status(message):
    print(message, file=sys.stderr)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _probability(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a probability, got {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return value


def resolve_settings(args):
    """Environment settings with this invocation's flags layered on top"""
    exact_max = getattr(args, 'exact_max', None)
    return SETTINGS.with_overrides(
        threads=args.threads,
        q_max=getattr(args, 'q_max', None),
        optima_cap=getattr(args, 'cap', None),
        oracle_max_nodes=getattr(args, 'max_nodes', None),
        oracle_max_n=getattr(args, 'max_n', None),
        exact_max_t2=exact_max if args.t <= 2 else None,
        exact_max_t3=exact_max if args.t > 2 else None,
    )


def _profile(args, h):
    if getattr(args, 'heuristic', False):
        return profile_heuristic(h, args.t, effort=args.effort)
    return profile_exact(h, args.t, exact_max=args.settings.exact_max(args.t))


# ---------------------------------------------------------------------------
# Subcommands: each returns (payload, exit code)
# ---------------------------------------------------------------------------

def cmd_profile(args):
    h = load_graph(args.graph)
    p = _profile(args, h)
    print(p.table().to_string(index=False))
    payload = {'graph': to_graph6(h), 'profile': p.to_dict()}
    if p.exact:
        c, argmin = ratio_min(p)
        print(f"\nmin a[k]/k = {c} at k in {argmin}")
        payload['ratio_min'] = {'c': str(c), 'argmin': argmin}
        if p.t == 2:
            predicates = {**check_profile_predicates(p, h), **check_ratio_lemma(p, h)}
            for name, result in predicates.items():
                state = "n/a" if not result.applicable else ("holds" if result.holds else "violated")
                witness = f" first {result.violations[0]}" if result.violations else ""
                print(f"  {name}: {state}{witness}")
            payload['predicates'] = {name: r.to_dict() for name, r in predicates.items()}
    else:
        status("⚠ Heuristic profile: e is a lower bound, a an upper bound")
    return payload, EXIT_OK


def cmd_solve(args):
    h = load_graph(args.graph)
    p = profile_exact(h, args.t)
    solution = solve_ip(p, args.N, cap=args.settings.optima_cap, require_full_part=not args.relaxed)
    low, high = cov_bounds(p, args.N)
    print(solution.render())
    print(f"bounds: {low} <= {solution.value} <= {high}")
    if solution.overflow:
        status(f"⚠ Optima list truncated at {args.settings.optima_cap}")
    return {
        'graph': to_graph6(h),
        'solution': solution.to_dict(),
        'bounds': [low, high],
    }, EXIT_OK


def _construct_graph(args):
    kind = args.kind
    if kind == 'tightness':
        return build_tightness(args.l, args.d)
    if kind == 'pendant':
        return build_pendant_clique(args.n, args.N)
    h = load_graph(args.graph)
    if kind == 'M':
        return build_M(h, args.N)
    if kind == 'elementary':
        return build_elementary_extremal(h, args.N, args.parts)
    p = profile_exact(h, args.t)
    if kind == 'L':
        return build_L(h, args.t, args.r, p)
    if kind == 'realization':
        return build_ip_realization(h, args.t, args.parts, p)
    return build_ideal_extremal(h, args.t, args.N, p)


def cmd_construct(args):
    g = _construct_graph(args)
    print(to_graph6(g))
    print(to_edge_list(g), end="")
    return {
        'kind': args.kind,
        'result': to_graph6(g),
        'edges': g.edge_count(),
        'cliques': count_cliques(g, args.t),
    }, EXIT_OK


def cmd_classify(args):
    h = load_graph(args.graph)
    p = profile_exact(h, args.t)
    result = classify_remainders(p, q_max=args.settings.q_max, threads=args.settings.threads)
    rows = []
    for r in sorted(result.per_r):
        v = result.per_r[r]
        violation = v.certificate.first_violation()
        rows.append({
            'r': r,
            'verdict': v.verdict,
            'q_stable': v.q_stable,
            'q_range': f"{v.q_range[0]}..{v.q_range[1]}",
            'witness': " ".join(map(str, violation)) if violation else "-",
            'optima_at_q_max': " ".join(
                "{" + ",".join(map(str, m)) + "}" for m in v.per_q[-1]['optima']),
        })
    print(f"gamma={result.gamma} beta'={result.beta_prime} beta={result.beta}")
    print(pd.DataFrame(rows).to_string(index=False))
    payload = {'graph': to_graph6(h), 'classification': result.to_dict()}
    if args.shape:
        shape = check_regime_shape(p, q_max=args.settings.q_max)
        state = "✓ Shape holds" if shape.passed else f"⚠ {len(shape.deviations)} deviation(s)"
        status(state)
        payload['shape'] = shape.to_dict()
    return payload, EXIT_OK


def cmd_oracle(args):
    h = load_graph(args.graph)
    if args.uniqueness:
        report = uniqueness_check(h, args.t, args.N, max_nodes=args.settings.oracle_max_nodes)
        print(f"min={report.min_count}")
        for form in report.extremal:
            print(form)
        print(f"ideal member extremal: {report.ideal_matches}")
        for form, count in report.non_extremal_members:
            print(f"non-extremal family member {form} ({count})")
        return {'graph': to_graph6(h), 'uniqueness': report.to_dict()}, EXIT_OK

    result = min_cover_exhaustive(h, args.t, args.N, max_nodes=args.settings.oracle_max_nodes,
                                  max_n=args.settings.oracle_max_n, verbose=args.verbose)
    payload = {'graph': to_graph6(h), 'oracle': result.to_dict()}
    if not result.complete:
        status(f"⚠ Search incomplete after {result.nodes_explored} nodes")
        return payload, EXIT_RESOURCE
    print(f"min={result.min_count}")
    for form in result.extremal:
        print(form)
    return payload, EXIT_OK


def cmd_verify(args):
    """Realization count, integer-program value and oracle minimum must agree"""
    h = load_graph(args.graph)
    t, N = args.t, args.N
    p = profile_exact(h, t)
    solution = solve_ip(p, N)
    checks = {}

    realization = build_ip_realization(h, t, solution.optima[0], p)
    checks['realization_count'] = count_cliques(realization, t) == solution.value
    coverage = is_covered(realization, h)
    checks['realization_covered'] = coverage.covered
    if coverage.covered:
        cover = coverage.cover
        checks['peel_bound_sound'] = (
            peel_bound(realization, h, t, cover, p, greedy_order(realization, cover))
            <= count_cliques(realization, t))

    oracle = min_cover_exhaustive(h, t, N, max_nodes=args.settings.oracle_max_nodes, p=p,
                                  verbose=args.verbose)
    if not oracle.complete:
        raise BudgetExceeded(f"oracle incomplete after {oracle.nodes_explored} nodes")
    checks['oracle_matches_ip'] = oracle.min_count == solution.value

    report = uniqueness_check(h, t, N, p=p, result=oracle)
    for label, ok in checks.items():
        status(f"{'✓' if ok else '⚠'} {label}")
    if not report.ideal_matches:
        status(f"→ ideal family member has {report.ideal_count} copies, above the minimum "
               f"{oracle.min_count} (non-extremal)")
    print(f"value={solution.value} oracle={oracle.min_count} "
          f"agreement={'yes' if all(checks.values()) else 'no'}")

    payload = {
        'graph': to_graph6(h),
        'solution': solution.to_dict(),
        'realization': to_graph6(realization),
        'oracle': oracle.to_dict(),
        'uniqueness': report.to_dict(),
        'checks': checks,
    }
    return payload, EXIT_OK if all(checks.values()) else EXIT_FAILED


def cmd_random(args):
    config = args.settings
    if args.scaling:
        table = scaling_report(args.n, args.p, args.trials, seed0=args.seed, q_max=config.q_max,
                               threads=config.threads, verbose=args.verbose)
        print(table.to_string(index=False))
        return {'scaling': table.to_dict(orient='records')}, EXIT_OK

    records = []
    for n in args.n:
        records.extend(run_trials(n, args.p, range(args.seed, args.seed + args.trials),
                                  q_max=config.q_max, threads=config.threads, verbose=args.verbose))
    table = pd.DataFrame([{
        'n': r.n, 'seed': r.seed, 'gamma': r.gamma, 'beta': r.beta,
        'spread': r.degree_stats['spread'],
        'shape': 'pass' if r.shape_passed else 'fail',
        'gap': 'pass' if r.gap_passed else f"fail@{r.gap_first_violation}",
    } for r in records])
    print(table.to_string(index=False))
    if args.records:
        append_records(args.records, records)
        status(f"✓ Appended {len(records)} records to {args.records}")
    return {'records': [r.to_dict() for r in records]}, EXIT_OK


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="hcover", description="Minimum K_t counts in H-covered graphs")
    parser.add_argument('--version', action='version', version=f"hcover {TOOL_VERSION}")
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-t', type=_positive_int, default=2, help="clique order (default 2)")
    common.add_argument('--json', action='store_true', help="print the JSON report to stdout")
    common.add_argument('--report', help="write the JSON report to this file")
    common.add_argument('--threads', type=_positive_int, default=None)
    common.add_argument('-v', '--verbose', action='store_true')

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument('--graph', required=True,
                       help="graph6 string, graph file, or shorthand such as K4+pendant")

    p = sub.add_parser('profile', parents=[common, graph], help="coverage and density profiles")
    p.add_argument('--exact-max', type=_positive_int, default=None)
    p.add_argument('--heuristic', action='store_true')
    p.add_argument('--effort', type=_positive_int, default=8)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser('solve', parents=[common, graph], help="solve the integer program")
    p.add_argument('-N', type=int, required=True)
    p.add_argument('--cap', type=_positive_int, default=None)
    p.add_argument('--relaxed', action='store_true', help="drop the x_n >= 1 constraint")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('construct', parents=[common], help="build an extremal graph")
    p.add_argument('--kind', default='ideal',
                   choices=['ideal', 'elementary', 'L', 'M', 'tightness', 'pendant', 'realization'])
    p.add_argument('--graph')
    p.add_argument('-N', type=int)
    p.add_argument('-r', type=int)
    p.add_argument('-n', type=int)
    p.add_argument('-l', type=int)
    p.add_argument('-d', type=int)
    p.add_argument('--parts', type=int, nargs='+')
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser('classify', parents=[common, graph], help="per-remainder verdicts")
    p.add_argument('--q-max', type=_positive_int, default=None)
    p.add_argument('--shape', action='store_true', help="also run the gamma/beta shape check")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser('oracle', parents=[common, graph], help="exhaustive minimum search")
    p.add_argument('-N', type=int, required=True)
    p.add_argument('--max-nodes', type=_positive_int, default=None)
    p.add_argument('--max-n', type=_positive_int, default=None)
    p.add_argument('--uniqueness', action='store_true')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('verify', parents=[common, graph], help="three-way agreement check")
    p.add_argument('-N', type=int, required=True)
    p.add_argument('--max-nodes', type=_positive_int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('random', parents=[common], help="G(n, p) experiments")
    p.add_argument('-n', type=_positive_int, nargs='+', required=True)
    p.add_argument('-p', type=_probability, default=Fraction(1, 2))
    p.add_argument('--trials', type=_positive_int, default=1)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--q-max', type=_positive_int, default=None)
    p.add_argument('--records', help="append records to this JSON-lines file")
    p.add_argument('--scaling', action='store_true')
    p.set_defaults(func=cmd_random)
    return parser


def _required_for_construct(args):
    needs = {
        'tightness': ['l', 'd'],
        'pendant': ['n', 'N'],
        'M': ['graph', 'N'],
        'elementary': ['graph', 'N', 'parts'],
        'L': ['graph', 'r'],
        'realization': ['graph', 'parts'],
        'ideal': ['graph', 'N'],
    }[args.kind]
    return [name for name in needs if getattr(args, name) is None]


def _jsonable(value):
    # numpy scalars from pandas tables, Fractions as text
    return value.item() if hasattr(value, "item") else str(value)


def write_report(args, argv, payload, started):
    report = {
        'schema': SCHEMA_VERSION,
        'version': TOOL_VERSION,
        'command': list(argv),
        'result': payload,
        'timing': {'seconds': round(time.perf_counter() - started, 6)},
    }
    text = json.dumps(report, indent=2, sort_keys=True, default=_jsonable)
    if args.report:
        with open(args.report, 'w', encoding='utf-8') as f:
            f.write(text + "\n")
    if args.json:
        print(text)
    return report


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.command == 'construct':
        missing = _required_for_construct(args)
        if missing:
            flags = ", ".join(f"--{m}" if len(m) > 1 else f"-{m}" for m in missing)
            status(f"⚠ construct --kind {args.kind} needs {flags}")
            return EXIT_USAGE

    started = time.perf_counter()
    try:
        args.settings = resolve_settings(args)
        payload, code = args.func(args)
    except (ProfileSizeError, BudgetExceeded) as e:
        status(f"⚠ Resource cap: {e}")
        return EXIT_RESOURCE
    except HCoverError as e:
        status(f"⚠ {e}")
        return EXIT_USAGE
    write_report(args, argv, payload, started)
    return code


if __name__ == "__main__":
    sys.exit(main())
