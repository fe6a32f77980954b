"""Command-line interface.

Exit codes: 0 for positive/affirmative outcomes (stationary, feasible,
still-unknown searches), 1 for negative ones (refuted, infeasible,
empty, no configuration), 2 for usage or input errors, 3 for exceeded
resource budgets.
"""

import argparse
import json
import sys
from fractions import Fraction

from .lattice import Domain, CapExceeded
from .measures import (Measure, WordSet, is_locally_stationary,
                       entropy_metric, finite_window_entropy)
from .markov import MarkovExtension, entropy_rate
from .engine import (periodic_extension, refute_nonextendible, sft_emptiness,
                     periodic_config_search, epsilon_bound,
                     SearchBudget, FEASIBLE, INFEASIBLE)
from . import corpus as corpus_mod
from . import harmonic

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load_measure(path):
    return Measure.from_json_dict(_load_json(path))


def _load_word_set(path):
    return WordSet.from_json_dict(_load_json(path))


def _emit(data, out=None):
    text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_stationary(args):
    mu = _load_measure(args.measure)
    res = is_locally_stationary(mu)
    _emit({"locally_stationary": res.ok,
           "witness": [list(map(list, res.witness[0])),
                       list(res.witness[1]),
                       list(res.witness[2])] if res.witness else None})
    return OK if res.ok else NEGATIVE


def cmd_markov(args):
    mu = _load_measure(args.measure)
    ext = MarkovExtension(mu)
    window = ext.window_measure(args.window)
    rate = entropy_rate(ext, args.window)
    _emit({"measure": window.to_json_dict(),
           "entropy_per_site": rate.per_site,
           "entropy_rate": rate.markov_rate}, args.out)
    return OK


def cmd_periodic(args):
    mu = _load_measure(args.measure)
    periods = tuple(int(p) for p in args.period.split(","))
    res = periodic_extension(mu, periods)
    payload = {"status": res.status,
               "periods": list(periods),
               "envelope_warning": res.envelope_warning,
               "config_count": res.config_count}
    if res.status == FEASIBLE:
        payload["torus_measure"] = res.torus_measure.to_json_dict()
        payload["epsilon"] = None
        if len(res.torus_measure.masses) == mu.alphabet ** res.module.size:
            payload["epsilon"] = str(
                epsilon_bound(res.torus_measure, res.module,
                              mu.domain, mu.alphabet))
    _emit(payload, args.out)
    if res.status == FEASIBLE:
        return OK
    return NEGATIVE if res.status == INFEASIBLE else BUDGET


def cmd_refute(args):
    mu = _load_measure(args.measure)
    report = refute_nonextendible(mu, max_window=args.max_window)
    _emit(report.to_json_dict(), args.out)
    return NEGATIVE if report.verdict == "refuted" else OK


def cmd_tiling(args):
    T = _load_word_set(args.words)
    res = sft_emptiness(T, max_side=args.max_window)
    _emit({"status": res.status,
           "window": [list(p) for p in res.window.points],
           "reason": res.reason})
    if res.status == "empty":
        return NEGATIVE
    return BUDGET if res.reason else OK


def cmd_perconfig(args):
    T = _load_word_set(args.words)
    periods = tuple(int(p) for p in args.period.split(","))
    res = periodic_config_search(T, periods)
    _emit({"status": res.status,
           "config": {",".join(map(str, c)): s
                      for c, s in sorted(res.config.items())},
           "reason": res.reason})
    if res.status == "found":
        return OK
    return NEGATIVE if res.status == "none" else BUDGET


def cmd_fourier(args):
    mu = _load_measure(args.measure)
    coeffs = harmonic.fourier_transform(mu)
    ok, witness = harmonic.check_stationarity_fourier(mu)
    table = {}
    for chi, c in coeffs.items():
        key = ";".join(f"{','.join(map(str, p))}:{e}"
                       for p, e in chi.exponents) or "1"
        table[key] = [c.real, c.imag]
    _emit({"coefficients": table,
           "parseval_residual": harmonic.parseval_residual(mu),
           "stationary": ok})
    return OK if ok else NEGATIVE


def cmd_entropy_metric(args):
    mu = _load_measure(args.measure)
    try:
        sets = json.loads(args.sets)
        V = Domain(mu.domain.dim, sets[0])
        W = Domain(mu.domain.dim, sets[1])
    except (ValueError, IndexError, TypeError) as exc:
        raise ValueError(f"bad --sets payload: {exc}")
    _emit({"entropy_metric": entropy_metric(mu, V, W),
           "window_entropy": finite_window_entropy(mu)})
    return OK


def cmd_corpus(args):
    name = args.name
    if name == "disconnected":
        if args.rho:
            rho = [Fraction(r) for r in args.rho.split(",")]
            data = corpus_mod.disconnected_counterexample(
                len(rho), rho).to_json_dict()
        else:
            data = corpus_mod.disconnected_counterexample().to_json_dict()
    elif name == "pseudolattice":
        data = corpus_mod.pseudolattice_measure().to_json_dict()
    elif name == "pseudolattice-support":
        data = corpus_mod.pseudolattice_support().to_json_dict()
    elif name == "robinson":
        data = corpus_mod.robinson_word_set(args.d_reading).to_json_dict()
    elif name == "counter":
        data = corpus_mod.binary_counter_measure(args.k).to_json_dict()
    elif name == "counter-support":
        data = corpus_mod.binary_counter_support(args.k).to_json_dict()
    elif name == "eca":
        rule, U = corpus_mod.eca_rule(args.k)
        _, words = corpus_mod.ca_to_sft(rule, U, 2)
        data = words.to_json_dict()
    else:
        raise ValueError(f"unknown corpus entry {name!r}")
    _emit(data, args.out)
    return OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="extlab",
        description="stationary extension problems for lattice measures")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stationary", help="check local stationarity")
    p.add_argument("measure")
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("markov", help="Markov extension window measure")
    p.add_argument("measure")
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("periodic", help="periodic (torus) extension LP")
    p.add_argument("measure")
    p.add_argument("--period", required=True,
                   help="comma-separated periods, e.g. 4,8")
    p.add_argument("--out")
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("refute", help="attempt a non-extendibility proof")
    p.add_argument("measure")
    p.add_argument("--max-window", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("tiling", help="subshift emptiness search")
    p.add_argument("words")
    p.add_argument("--max-window", type=int, default=6)
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser("perconfig", help="periodic configuration search")
    p.add_argument("words")
    p.add_argument("--period", required=True)
    p.set_defaults(func=cmd_perconfig)

    p = sub.add_parser("fourier", help="Fourier coefficient table")
    p.add_argument("measure")
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("entropy-metric", help="entropy distance of site sets")
    p.add_argument("measure")
    p.add_argument("--sets", required=True,
                   help='JSON pair of point lists, e.g. "[[[0]],[[3]]]"')
    p.set_defaults(func=cmd_entropy_metric)

    p = sub.add_parser("corpus", help="emit a built-in instance")
    p.add_argument("name", choices=["disconnected", "pseudolattice",
                                    "pseudolattice-support", "robinson",
                                    "counter", "counter-support", "eca"])
    p.add_argument("--rho", help="probability vector, e.g. 1/2,1/2")
    p.add_argument("--k", type=int, default=3,
                   help="counter size / ECA rule number")
    p.add_argument("--d-reading", choices=["distinct", "typo"],
                   default="distinct")
    p.add_argument("--out")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, SearchBudget) as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
