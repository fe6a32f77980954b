"""Exact rational measures on finite windows of Z^D.

A measure assigns a Fraction mass to each word over a finite Domain;
words are tuples of symbols aligned with the domain's canonical point
order and zero-mass words are simply omitted.  Everything downstream
(marginals, stationarity checks, linear programs) stays in exact
arithmetic; entropy is the only float-valued quantity.
"""

import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .lattice import Domain, CapExceeded, cell_cap, sub, add


def _check_symbols(word, alphabet, npoints):
    if len(word) != npoints:
        raise ValueError(f"word {word} has wrong length (expected {npoints})")
    for s in word:
        if not (0 <= s < alphabet):
            raise ValueError(f"symbol {s} outside alphabet of size {alphabet}")


def project(word, domain, V):
    """Restrict a word on `domain` to the sub-domain V."""
    idx = [domain.index(p) for p in V.points]
    return tuple(word[i] for i in idx)


class SignedMeasure:
    """A finitely supported rational signed measure on words over a domain."""

    def __init__(self, domain, alphabet, masses):
        self.domain = domain
        self.alphabet = int(alphabet)
        n = len(domain)
        clean = {}
        for word, mass in masses.items():
            word = tuple(int(s) for s in word)
            _check_symbols(word, self.alphabet, n)
            mass = Fraction(mass)
            if mass != 0:
                clean[word] = mass
        self.masses = clean
        self._validate()

    def _validate(self):
        pass

    def __getitem__(self, word):
        return self.masses.get(tuple(word), Fraction(0))

    def support(self):
        return set(self.masses)

    def total_mass(self):
        return sum(self.masses.values(), Fraction(0))

    def word_count(self):
        """|A|^|domain|, the number of possible words."""
        return self.alphabet ** len(self.domain)

    def shift(self, k):
        """The same masses read on the translated domain."""
        shifted = self.domain.shift(k)
        # lexicographic order is translation invariant, so words carry over
        return type(self)(shifted, self.alphabet, dict(self.masses))

    def marginal(self, V):
        """Project onto a sub-domain V by summing over the other sites."""
        if not V.issubset(self.domain):
            raise ValueError("marginal target is not a sub-domain")
        idx = [self.domain.index(p) for p in V.points]
        out = defaultdict(Fraction)
        for word, mass in self.masses.items():
            out[tuple(word[i] for i in idx)] += mass
        return type(self)(V, self.alphabet, out)

    def to_json_dict(self):
        return {
            "dim": self.domain.dim,
            "alphabet": self.alphabet,
            "domain": [list(p) for p in self.domain.points],
            "masses": {
                ",".join(map(str, w)): str(m)
                for w, m in sorted(self.masses.items())
            },
        }

    @classmethod
    def from_json_dict(cls, data):
        domain = Domain(data["dim"], data["domain"])
        masses = {}
        for key, val in data["masses"].items():
            word = tuple(int(s) for s in key.split(",")) if key else ()
            masses[word] = Fraction(val)
        return cls(domain, data["alphabet"], masses)


class Measure(SignedMeasure):
    """A probability measure: nonnegative masses summing to one."""

    def _validate(self):
        total = Fraction(0)
        for word, mass in self.masses.items():
            if mass < 0:
                raise ValueError(f"negative mass {mass} at word {word}")
            total += mass
        if total != 1:
            raise ValueError(f"masses sum to {total}, expected 1")

    @classmethod
    def uniform(cls, domain, alphabet):
        count = alphabet ** len(domain)
        if count > cell_cap():
            raise CapExceeded(f"uniform measure needs {count} words")
        mass = Fraction(1, count)
        words = itertools.product(range(alphabet), repeat=len(domain))
        return cls(domain, alphabet, {w: mass for w in words})

    @classmethod
    def product_measure(cls, rho, domain):
        """I.i.d. measure with single-site law rho (list of Fractions)."""
        rho = [Fraction(r) for r in rho]
        if sum(rho) != 1 or any(r < 0 for r in rho):
            raise ValueError("rho must be a probability vector")
        support = [a for a, r in enumerate(rho) if r > 0]
        masses = {}
        for word in itertools.product(support, repeat=len(domain)):
            mass = Fraction(1)
            for s in word:
                mass *= rho[s]
            masses[word] = mass
        return cls(domain, len(rho), masses)

    @classmethod
    def point_mass(cls, domain, alphabet, word):
        return cls(domain, alphabet, {tuple(word): Fraction(1)})


def tv_distance(mu, nu):
    """Total variation distance, exact."""
    if mu.domain != nu.domain or mu.alphabet != nu.alphabet:
        raise ValueError("measures live on different spaces")
    words = set(mu.masses) | set(nu.masses)
    return sum((abs(mu[w] - nu[w]) for w in words), Fraction(0)) / 2


def convex_combine(t, mu, nu):
    """(1-t)*mu + t*nu, exact."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    if mu.domain != nu.domain or mu.alphabet != nu.alphabet:
        raise ValueError("measures live on different spaces")
    out = defaultdict(Fraction)
    for w, m in mu.masses.items():
        out[w] += (1 - t) * m
    for w, m in nu.masses.items():
        out[w] += t * m
    return Measure(mu.domain, mu.alphabet, out)


def subtract(mu, nu):
    if mu.domain != nu.domain or mu.alphabet != nu.alphabet:
        raise ValueError("measures live on different spaces")
    out = defaultdict(Fraction)
    for w, m in mu.masses.items():
        out[w] += m
    for w, m in nu.masses.items():
        out[w] -= m
    return SignedMeasure(mu.domain, mu.alphabet, out)


@dataclass(frozen=True)
class StationarityResult:
    ok: bool
    witness: tuple  # () if ok, else (V points, word, shift k)


def _overlap_shifts(domain):
    """Nonzero difference vectors between domain points, one per +/- pair."""
    seen = set()
    for p in domain.points:
        for q in domain.points:
            d = sub(q, p)
            if d > (0,) * domain.dim and d not in seen:
                seen.add(d)
    return sorted(seen)


def is_locally_stationary(mu):
    """Check marginal consistency on all maximal self-overlaps of the domain.

    For each nonzero shift k the overlap V = U cap (U - k) satisfies both
    V <= U and V + k <= U, and agreement of the two induced marginals for
    every such k is equivalent to agreement for all translated sub-domain
    pairs inside U.
    """
    U = mu.domain
    for k in _overlap_shifts(U):
        V = U.intersection(U.shift(tuple(-c for c in k)))
        if not V.points:
            continue
        left = mu.marginal(V)
        right = mu.marginal(V.shift(k))
        words = set(left.masses) | set(right.masses)
        for b in sorted(words):
            if left[b] != right[b]:
                return StationarityResult(False, (V.points, b, k))
    return StationarityResult(True, ())


def finite_window_entropy(mu):
    """Shannon entropy of the word distribution, in bits (float)."""
    h = 0.0
    for mass in mu.masses.values():
        p = float(mass)
        h -= p * math.log2(p)
    return h


def conditional_entropy(mu, V, W):
    """H[V | W] = H(V union W) - H(W), in bits."""
    if not (V.issubset(mu.domain) and W.issubset(mu.domain)):
        raise ValueError("conditioning sets must be sub-domains")
    joint = mu.marginal(V.union(W))
    return finite_window_entropy(joint) - finite_window_entropy(mu.marginal(W))


def entropy_metric(mu, V, W):
    """D[V, W] = H[V | W] + H[W | V], in bits."""
    return conditional_entropy(mu, V, W) + conditional_entropy(mu, W, V)


# ---------------------------------------------------------------------------
# entropy-chain refutation


@dataclass(frozen=True)
class ChainResult:
    verdict: str        # "refuted" or "unknown"
    pair: tuple         # offending (u, w) pair of domain points, or ()
    path: tuple         # chain of lattice points linking u to w, or ()


def _deterministic_map(joint):
    """If the 2-site joint's support is a bijection graph, return it."""
    fwd, bwd = {}, {}
    for (a, b) in joint.masses:
        if fwd.setdefault(a, b) != b or bwd.setdefault(b, a) != a:
            return None
    return fwd


def entropy_chain_refute(mu, horizon=4):
    """Try to refute extendibility via chained zero-entropy-distance pairs.

    Each pair of sites whose joint marginal is a bijection graph forces,
    in any stationary extension, the same bijection between every pair of
    sites at that difference vector.  Compose these forced bijections
    along paths inside the bounding box inflated by `horizon`; if two
    domain sites end up linked by a composite bijection that their own
    joint marginal violates, no extension exists.
    """
    res = is_locally_stationary(mu)
    if not res.ok:
        raise ValueError("entropy_chain_refute requires a locally "
                         f"stationary input; witness {res.witness}")
    U = mu.domain
    # forced bijections per difference vector
    sigma = {}
    for i, u in enumerate(U.points):
        for w in U.points[i + 1:]:
            joint = mu.marginal(Domain(U.dim, [u, w]))
            f = _deterministic_map(joint)
            if f is not None:
                d = sub(w, u)
                sigma[d] = f
                sigma[tuple(-c for c in d)] = {b: a for a, b in f.items()}
    if not sigma:
        return ChainResult("unknown", (), ())

    box = U.bounding_box()
    ranges = [range(lo - horizon, hi + horizon + 1) for lo, hi in box]
    nodes = set(itertools.product(*ranges))
    # adjacency over forced-bijection edges
    graph = defaultdict(list)
    for d in sigma:
        for p in nodes:
            q = add(p, d)
            if q in nodes:
                graph[p].append((q, d))

    def bfs_path(src, dst):
        prev = {src: None}
        queue = [src]
        while queue:
            nxt = []
            for p in queue:
                if p == dst:
                    path = []
                    while p is not None:
                        path.append(p)
                        p = prev[p][0] if prev[p] else None
                    return list(reversed(path))
                for q, d in graph[p]:
                    if q not in prev:
                        prev[q] = (p, d)
                        nxt.append(q)
            queue = nxt
        return None

    for i, u in enumerate(U.points):
        for w in U.points[i + 1:]:
            path = bfs_path(u, w)
            if path is None or len(path) < 2:
                continue
            comp = None
            ok = True
            for p, q in zip(path, path[1:]):
                f = sigma[sub(q, p)]
                comp = f if comp is None else {
                    a: f[b] for a, b in comp.items() if b in f}
                if comp is not None and not comp:
                    ok = False
                    break
            if not ok:
                continue
            joint = mu.marginal(Domain(U.dim, [u, w]))
            for (a, b) in joint.masses:
                if comp.get(a) != b:
                    return ChainResult("refuted", (u, w), tuple(path))
    return ChainResult("unknown", (), ())


# ---------------------------------------------------------------------------
# word sets (supports of measures; inputs to the subshift machinery)


@dataclass(frozen=True)
class WordSet:
    domain: Domain
    alphabet: int
    words: frozenset

    def __init__(self, domain, alphabet, words):
        clean = set()
        for w in words:
            w = tuple(int(s) for s in w)
            _check_symbols(w, alphabet, len(domain))
            clean.add(w)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "alphabet", int(alphabet))
        object.__setattr__(self, "words", frozenset(clean))

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return tuple(w) in self.words

    def to_json_dict(self):
        return {
            "dim": self.domain.dim,
            "alphabet": self.alphabet,
            "domain": [list(p) for p in self.domain.points],
            "words": sorted(",".join(map(str, w)) for w in self.words),
        }

    @classmethod
    def from_json_dict(cls, data):
        domain = Domain(data["dim"], data["domain"])
        words = [tuple(int(s) for s in key.split(",")) if key else ()
                 for key in data["words"]]
        return cls(domain, data["alphabet"], words)


def support_word_set(mu):
    return WordSet(mu.domain, mu.alphabet, mu.support())


# ---------------------------------------------------------------------------
# random locally stationary inputs (used heavily by the test suite)


def random_stationary_measure(alphabet, length, rng, period=None):
    """A random exact locally stationary measure on the interval [0..length-1].

    Draw random rational masses on words around a cycle Z/period and
    symmetrize over rotation; the pullback to Z is stationary, and its
    marginal on any interval is exactly locally stationary.
    """
    if period is None:
        period = length + 2
    if period < length:
        raise ValueError("period must be at least the interval length")
    words = list(itertools.product(range(alphabet), repeat=period))
    raw = {}
    total = 0
    while total == 0:
        for w in words:
            raw[w] = rng.randrange(0, 4)
        total = sum(raw.values())
    sym = defaultdict(Fraction)
    for w, m in raw.items():
        for r in range(period):
            sym[w[r:] + w[:r]] += Fraction(m, total * period)
    cyc = Measure(Domain.interval(0, period - 1), alphabet, sym)
    return cyc.marginal(Domain.interval(0, length - 1))
