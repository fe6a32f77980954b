"""Finite subsets of Z^D, finite quotient modules, and envelopes.

Lattice points are plain tuples of ints.  A Domain is a canonicalized
finite subset of Z^D; a FiniteModule is a product of cyclic groups
Z/P_1 x ... x Z/P_D together with the coordinatewise reduction map
from Z^D.  Envelopes record when the reduction map is faithful enough
(injectivity on a window, liftability of overlaps) for periodization
arguments to go through.
"""

import itertools
import os
from dataclasses import dataclass


DEFAULT_CELL_CAP = 10 ** 6


def cell_cap():
    """Size guard for dense enumerations, overridable via EXTLAB_CAP_CELLS."""
    raw = os.environ.get("EXTLAB_CAP_CELLS")
    if raw is None:
        return DEFAULT_CELL_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"EXTLAB_CAP_CELLS must be an integer, got {raw!r}")


class CapExceeded(Exception):
    """A dense enumeration would exceed the configured cell cap."""


def add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def neg(p):
    return tuple(-a for a in p)


@dataclass(frozen=True)
class Domain:
    """A finite subset of Z^dim with a canonical (lexicographic) point order."""

    dim: int
    points: tuple

    def __init__(self, dim, points):
        pts = sorted(set(tuple(int(x) for x in p) for p in points))
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in self.point_set

    @property
    def point_set(self):
        return frozenset(self.points)

    def index(self, p):
        return self.points.index(tuple(p))

    def shift(self, k):
        """Translate every point by the vector k."""
        k = tuple(k)
        if len(k) != self.dim:
            raise ValueError("shift vector has wrong dimension")
        return Domain(self.dim, [add(p, k) for p in self.points])

    def issubset(self, other):
        return self.point_set <= other.point_set

    def union(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Domain(self.dim, self.points + other.points)

    def intersection(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Domain(self.dim, [p for p in self.points if p in other])

    def bounding_box(self):
        """Pairs (lo_i, hi_i) of coordinate extremes, inclusive."""
        if not self.points:
            raise ValueError("empty domain has no bounding box")
        lo = [min(p[i] for p in self.points) for i in range(self.dim)]
        hi = [max(p[i] for p in self.points) for i in range(self.dim)]
        return list(zip(lo, hi))

    @classmethod
    def box(cls, dim, sides, origin=None):
        """The box prod_i [origin_i .. origin_i + sides_i - 1]."""
        if isinstance(sides, int):
            sides = (sides,) * dim
        if origin is None:
            origin = (0,) * dim
        ranges = [range(o, o + s) for o, s in zip(origin, sides)]
        return cls(dim, itertools.product(*ranges))

    @classmethod
    def interval(cls, lo, hi):
        """The 1-D interval [lo .. hi], inclusive."""
        return cls(1, [(i,) for i in range(lo, hi + 1)])


def translates_inside(V, W):
    """All vectors k with V + k contained in W."""
    if V.dim != W.dim:
        raise ValueError("dimension mismatch")
    if not V.points:
        raise ValueError("empty translate pattern")
    v0 = V.points[0]
    wset = W.point_set
    out = []
    for w in W.points:
        k = sub(w, v0)
        if all(add(p, k) in wset for p in V.points):
            out.append(k)
    return out


@dataclass(frozen=True)
class FiniteModule:
    """The quotient Z^D -> Z/P_1 x ... x Z/P_D, coordinatewise reduction."""

    periods: tuple

    def __init__(self, periods):
        periods = tuple(int(p) for p in periods)
        if not periods or any(p < 1 for p in periods):
            raise ValueError(f"periods must be positive, got {periods}")
        object.__setattr__(self, "periods", periods)

    @property
    def dim(self):
        return len(self.periods)

    @property
    def size(self):
        n = 1
        for p in self.periods:
            n *= p
        return n

    def quotient(self, p):
        """Reduce a lattice point coordinatewise modulo the periods."""
        if len(p) != self.dim:
            raise ValueError("point has wrong dimension")
        return tuple(x % m for x, m in zip(p, self.periods))

    def elements(self):
        """All residues, in lexicographic order."""
        return list(itertools.product(*(range(m) for m in self.periods)))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.periods))

    def injective_on(self, U):
        """Whether the quotient map separates the points of U."""
        images = set(self.quotient(p) for p in U.points)
        return len(images) == len(U.points)


@dataclass(frozen=True)
class Envelope:
    """A finite module proposed as a faithful period structure for a window U.

    The first condition asks that reduction be injective on U.  The
    second asks that whenever a residue shift g~ moves the image of a
    subset V of U inside the image of U, some true lattice shift g with
    g mod P = g~ realizes it, i.e. g + V is contained in U.
    """

    module: FiniteModule
    window: Domain


def envelope_for(U):
    """Doubled-bounding-box envelope: periods 2*N_i for box sides N_i."""
    box = U.bounding_box()
    periods = tuple(2 * (hi - lo + 1) for lo, hi in box)
    return Envelope(FiniteModule(periods), U)


@dataclass(frozen=True)
class EnvelopeCheck:
    status: str          # "pass", "fail", or "partial"
    condition: str       # "" on pass/partial, else "injective" or "liftable"
    witness: tuple       # () on pass/partial, else (V points, g_tilde)

    @property
    def ok(self):
        return self.status == "pass"


def _lift_candidates(g_tilde, periods, spans):
    """Lattice vectors g == g_tilde mod P with |g_i| <= span_i.

    If g + V lies in U for nonempty V then each g_i is a difference of
    two U coordinates, so the coordinate spans of U bound the search.
    """
    axes = []
    for gt, p, s in zip(g_tilde, periods, spans):
        c0 = gt - ((gt + s) // p) * p
        axes.append(list(range(c0, s + 1, p)))
    return itertools.product(*axes)


def verify_envelope(env, max_subset_size=None):
    """Check the two envelope conditions, exhaustively up to a subset cap.

    If max_subset_size is given and smaller than |U|, only subsets V of
    that size or less are tried and a clean run reports "partial".
    Any violation found reports "fail" with a witness.
    """
    mod = env.module
    U = env.window
    if mod.dim != U.dim:
        raise ValueError("module and window dimensions differ")
    if not mod.injective_on(U):
        return EnvelopeCheck("fail", "injective", ())

    phi = {p: mod.quotient(p) for p in U.points}
    image = set(phi.values())
    n = len(U.points)
    cap = n if max_subset_size is None else min(max_subset_size, n)

    uset = U.point_set
    spans = [hi - lo for lo, hi in U.bounding_box()]
    for size in range(1, cap + 1):
        for V in itertools.combinations(U.points, size):
            phiV = [phi[v] for v in V]
            for g_tilde in mod.elements():
                if not all(mod.add(gv, g_tilde) in image for gv in phiV):
                    continue
                for g in _lift_candidates(g_tilde, mod.periods, spans):
                    if all(add(v, g) in uset for v in V):
                        break
                else:
                    return EnvelopeCheck("fail", "liftable", (V, g_tilde))
    status = "pass" if cap == n else "partial"
    return EnvelopeCheck(status, "", ())
