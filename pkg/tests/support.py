"""Shared test helpers: independent oracles and random instance factories.

Everything here is deliberately written as straight-line brute force,
separate from the library's own algorithms, so the two can disagree.
"""

import itertools
import random
from fractions import Fraction

from extlab.lattice import Domain, add
from extlab.measures import Measure


def random_measure(alphabet, domain, rng, sparse=False):
    """A random rational probability measure, usually not stationary."""
    words = list(itertools.product(range(alphabet), repeat=len(domain)))
    if sparse:
        words = rng.sample(words, max(1, len(words) // 3))
    raw = [rng.randrange(0, 6) for _ in words]
    while sum(raw) == 0:
        raw = [rng.randrange(0, 6) for _ in words]
    total = sum(raw)
    return Measure(domain, alphabet,
                   {w: Fraction(r, total) for w, r in zip(words, raw) if r})


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination: an LP feasibility oracle for tiny systems


def fm_feasible(ineqs, nvars):
    """Whether {x : row . x >= rhs for all rows} is nonempty (exact).

    ineqs are (coefficient list, rhs) pairs.  Only sensible for a
    handful of variables; constraint counts grow quadratically per
    eliminated variable.
    """
    rows = [([Fraction(c) for c in coeffs], Fraction(rhs))
            for coeffs, rhs in ineqs]
    for v in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, rhs in rows:
            c = coeffs[v]
            if c > 0:
                pos.append((coeffs, rhs))
            elif c < 0:
                neg.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        new = rest
        for pc, pr in pos:
            for nc, nr in neg:
                # pc gives lower bound on x_v, nc gives upper; combine
                scale_p, scale_n = -nc[v], pc[v]
                coeffs = [scale_p * a + scale_n * b
                          for a, b in zip(pc, nc)]
                new.append((coeffs, scale_p * pr + scale_n * nr))
        rows = new
    return all(rhs <= 0 for _, rhs in rows)


def system_to_ineqs(system):
    """Flatten a LinearSystem into pure >= rows over its variable order."""
    order = {v: i for i, v in enumerate(system.variables)}
    n = len(order)
    rows = []

    def row_of(coeffs):
        out = [Fraction(0)] * n
        for v, c in coeffs.items():
            out[order[v]] = Fraction(c)
        return out

    for coeffs, rhs in system.equalities:
        r = row_of(coeffs)
        rows.append((r, rhs))
        rows.append(([-c for c in r], -rhs))
    for coeffs, rhs in system.inequalities:
        rows.append((row_of(coeffs), rhs))
    for v in system.nonneg:
        r = [Fraction(0)] * n
        r[order[v]] = Fraction(1)
        rows.append((r, Fraction(0)))
    return rows, n


# ---------------------------------------------------------------------------
# brute-force window filling (oracle for the backtracking search)


def brute_force_fillable(T, W):
    """Exhaustively test whether T admits a configuration on W."""
    U = T.domain
    anchors = []
    wset = W.point_set
    for w in W.points:
        k = tuple(a - b for a, b in zip(w, U.points[0]))
        if all(add(p, k) in wset for p in U.points):
            anchors.append(k)
    for values in itertools.product(range(T.alphabet), repeat=len(W)):
        grid = dict(zip(W.points, values))
        if all(tuple(grid[add(u, k)] for u in U.points) in T.words
               for k in anchors):
            return True
    return False


def brute_force_stationary(mu):
    """Local stationarity straight from the definition (all V, k pairs)."""
    U = mu.domain
    pts = U.points
    for r in range(1, len(pts) + 1):
        for V in itertools.combinations(pts, r):
            Vd = Domain(U.dim, V)
            for k in itertools.product(range(-4, 5), repeat=U.dim):
                shifted = [add(p, k) for p in V]
                if not all(q in U for q in shifted):
                    continue
                a = mu.marginal(Vd)
                b = mu.marginal(Vd.shift(k))
                words = set(a.masses) | set(b.masses)
                if any(a[w] != b[w] for w in words):
                    return False
    return True
