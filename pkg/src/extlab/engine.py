"""Decision procedures for the stationary extension problem.

Four families of tools:

* window extension polytopes: exact LP descriptions of the stationary
  measures on a finite window whose marginals reproduce a given base;
* subshift-of-finite-type searches: admissible window configurations
  and periodic (torus) configurations for a finite word set;
* periodic extensions: exact LPs over shift-invariant measures on a
  finite quotient torus, with pullbacks and quantitative bounds;
* a refutation pipeline combining entropy chains, SFT emptiness, and
  growing-window LP infeasibility.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import (Domain, FiniteModule, Envelope, CapExceeded, cell_cap,
                      add, sub, translates_inside, verify_envelope)
from .measures import (Measure, WordSet, is_locally_stationary,
                       entropy_chain_refute, support_word_set,
                       _overlap_shifts)
from .lp import (LinearSystem, solve_feasibility, enumerate_vertices,
                 FEASIBLE, INFEASIBLE, ABORTED, DEFAULT_PIVOT_LIMIT)


def _var(word):
    return "x" + ",".join(map(str, word))


# ---------------------------------------------------------------------------
# window extension polytopes


@dataclass
class ExtensionPolytope:
    """All stationary measures on window W extending the base marginally."""

    window: Domain
    base: Measure
    words: list
    system: LinearSystem

    def solve(self, objective=None, pivot_limit=DEFAULT_PIVOT_LIMIT):
        return solve_feasibility(self.system, objective, pivot_limit)

    def vertices(self, max_count=50, seed=0, tries=None):
        out = []
        for assignment in enumerate_vertices(self.system, max_count, seed,
                                             tries):
            out.append(self.to_measure(assignment))
        return out

    def to_measure(self, assignment):
        masses = {w: assignment[_var(w)] for w in self.words
                  if assignment[_var(w)] != 0}
        return Measure(self.window, self.base.alphabet, masses)

    def contains(self, measure):
        """Exact membership test for a measure on the window."""
        if measure.domain != self.window:
            raise ValueError("measure lives on a different window")
        assignment = {_var(w): measure[w] for w in self.words}
        return self.system.check(assignment)


def build_window_polytope(mu, W, cap=None):
    """LP description of S(W): stationary on W, all U-translate marginals mu.

    Stationarity is imposed through the maximal overlaps V = W cap (W-k),
    one marginal equality per nonzero shift k, which is equivalent to the
    definition quantifying over all translated sub-domain pairs.
    """
    U = mu.domain
    if U.dim != W.dim:
        raise ValueError("window dimension mismatch")
    anchors = translates_inside(U, W)
    if not anchors:
        raise ValueError("no translate of the base domain fits the window")
    cap = cell_cap() if cap is None else cap
    nwords = mu.alphabet ** len(W)
    if nwords > cap:
        raise CapExceeded(f"window polytope needs {nwords} variables")

    words = list(itertools.product(range(mu.alphabet), repeat=len(W)))
    system = LinearSystem()
    for w in words:
        system.add_variable(_var(w), nonneg=True)
    system.add_eq({_var(w): 1 for w in words}, 1)

    def restriction_indices(V):
        return [W.index(p) for p in V.points]

    # stationarity via maximal overlaps
    for k in _overlap_shifts(W):
        V = W.intersection(W.shift(tuple(-c for c in k)))
        if not V.points:
            continue
        left = restriction_indices(V)
        right = restriction_indices(V.shift(k))
        groups = defaultdict(dict)
        for w in words:
            bl = tuple(w[i] for i in left)
            br = tuple(w[i] for i in right)
            v = _var(w)
            groups[bl][v] = groups[bl].get(v, 0) + 1
            groups[br][v] = groups[br].get(v, 0) - 1
        for b, coeffs in groups.items():
            coeffs = {v: c for v, c in coeffs.items() if c != 0}
            if coeffs:
                system.add_eq(coeffs, 0)

    # marginal constraints on every translate of U inside W
    for t in anchors:
        idx = restriction_indices(U.shift(t))
        groups = defaultdict(list)
        for w in words:
            groups[tuple(w[i] for i in idx)].append(_var(w))
        for u in itertools.product(range(mu.alphabet), repeat=len(U)):
            system.add_eq({v: 1 for v in groups.get(u, [])}, mu[u])

    return ExtensionPolytope(W, mu, words, system)


# ---------------------------------------------------------------------------
# SFT window and torus searches


class SearchBudget(Exception):
    """Backtracking search exceeded its node budget."""


class _PatternSearch:
    """Backtracking filler for translate-constrained symbol assignments.

    `cells` is the ordered list of sites to assign.  Each constraint is a
    sequence of (cell_index, word_position) entries sorted by cell index;
    a partial assignment must keep every constraint prefix inside the
    projection of the allowed word set.
    """

    def __init__(self, alphabet, ncells, constraints, words):
        self.alphabet = alphabet
        self.ncells = ncells
        # triggers[i]: list of (entries, prefix_set) to check once cell i
        # is assigned
        self.triggers = [[] for _ in range(ncells)]
        prefix_cache = {}
        for entries in constraints:
            order = tuple(pos for _, pos in entries)
            if order not in prefix_cache:
                prefix_cache[order] = [
                    frozenset(tuple(w[p] for p in order[:m]) for w in words)
                    for m in range(1, len(order) + 1)]
            prefixes = prefix_cache[order]
            for j, (ci, _) in enumerate(entries):
                # a prefix set containing every possible tuple never prunes
                if len(prefixes[j]) < alphabet ** (j + 1):
                    self.triggers[ci].append((entries[:j + 1], prefixes[j]))

    def run(self, node_cap, collect=None, config_cap=None):
        """Depth-first fill; returns the first solution or None.

        With `collect` (a list), gathers every solution instead, up to
        config_cap.  Raises SearchBudget when a cap is exceeded.
        """
        values = [None] * self.ncells
        nodes = 0

        def ok(i):
            for entries, prefix in self.triggers[i]:
                if tuple(values[ci] for ci, _ in entries) not in prefix:
                    return False
            return True

        def dfs(i):
            nonlocal nodes
            if i == self.ncells:
                if collect is None:
                    return tuple(values)
                collect.append(tuple(values))
                if config_cap is not None and len(collect) > config_cap:
                    raise SearchBudget("too many admissible configurations")
                return None
            for a in range(self.alphabet):
                nodes += 1
                if nodes > node_cap:
                    raise SearchBudget("node budget exceeded")
                values[i] = a
                if ok(i):
                    found = dfs(i + 1)
                    if found is not None:
                        return found
            values[i] = None
            return None

        return dfs(0)


def _window_constraints(T, W):
    """Constraints for all fully contained translates of T's shape in W."""
    U = T.domain
    cons = []
    for t in translates_inside(U, W):
        entries = sorted((W.index(add(u, t)), j)
                         for j, u in enumerate(U.points))
        cons.append(entries)
    return cons


def fill_window(T, W, node_cap=10 ** 7):
    """An admissible configuration of W for the word set T, or None."""
    search = _PatternSearch(T.alphabet, len(W),
                            _window_constraints(T, W), T.words)
    found = search.run(node_cap)
    if found is None:
        return None
    return dict(zip(W.points, found))


def default_window_schedule(dim, max_side, min_side=1):
    return [Domain.box(dim, n) for n in range(min_side, max_side + 1)]


@dataclass(frozen=True)
class EmptinessResult:
    status: str        # "empty" or "unknown"
    window: Domain     # the empty window, or the largest one checked
    witness: dict      # admissible filling of the largest window, if any
    reason: str = ""


def sft_emptiness(T, windows=None, max_side=6, node_cap=10 ** 7):
    """Search for a window with no admissible configuration.

    Finding one proves the subshift defined by T is empty; otherwise the
    question stays open ("unknown") at this window schedule.
    """
    if windows is None:
        windows = default_window_schedule(T.domain.dim, max_side)
    witness, last = None, None
    for W in windows:
        if not translates_inside(T.domain, W):
            continue
        try:
            filled = fill_window(T, W, node_cap)
        except SearchBudget as exc:
            return EmptinessResult("unknown", last or W, witness or {},
                                   f"search budget: {exc}")
        if filled is None:
            return EmptinessResult("empty", W, {})
        witness, last = filled, W
    if last is None:
        raise ValueError("no window in the schedule admits a translate "
                         "of the word-set domain")
    return EmptinessResult("unknown", last, witness)


def _torus_constraints(T, module):
    """Wrapped translate constraints on the torus given by `module`."""
    cells = module.elements()
    index = {c: i for i, c in enumerate(cells)}
    U = T.domain
    cons = []
    for g in cells:
        entries = sorted((index[module.quotient(add(u, g))], j)
                         for j, u in enumerate(U.points))
        cons.append(entries)
    return cons


@dataclass(frozen=True)
class PeriodicSearchResult:
    status: str     # "found", "none", or "aborted"
    config: dict    # cell -> symbol for the found configuration
    reason: str = ""


def periodic_config_search(T, periods, node_cap=10 ** 7):
    """Search for a fully periodic admissible configuration.

    The torus wraps: every translate window is read modulo the periods,
    so any positive period vector is allowed, even shorter than the
    word-set domain.
    """
    module = FiniteModule(periods)
    if module.dim != T.domain.dim:
        raise ValueError("period vector dimension mismatch")
    cells = module.elements()
    search = _PatternSearch(T.alphabet, len(cells),
                            _torus_constraints(T, module), T.words)
    try:
        found = search.run(node_cap)
    except SearchBudget as exc:
        return PeriodicSearchResult("aborted", {}, str(exc))
    if found is None:
        return PeriodicSearchResult("none", {})
    return PeriodicSearchResult("found", dict(zip(cells, found)))


def enumerate_periodic_configs(T, periods, node_cap=10 ** 7,
                               config_cap=10 ** 6):
    """All admissible torus configurations, as tuples over the cell order."""
    module = FiniteModule(periods)
    cells = module.elements()
    search = _PatternSearch(T.alphabet, len(cells),
                            _torus_constraints(T, module), T.words)
    out = []
    search.run(node_cap, collect=out, config_cap=config_cap)
    return out


# ---------------------------------------------------------------------------
# periodic (torus) extensions


@dataclass
class PeriodicExtensionResult:
    status: str                 # feasible / infeasible / aborted
    module: FiniteModule
    torus_measure: Measure = None
    envelope_warning: str = ""
    config_count: int = 0
    lp_digest: str = ""


def _cell_domain(module):
    return Domain(module.dim, module.elements())


def _orbit_partition(configs, module):
    """Group configurations into translation orbits; return orbit lists."""
    cells = module.elements()
    index = {c: i for i, c in enumerate(cells)}
    perms = []
    for g in cells:
        perms.append([index[module.quotient(sub(c, g))] for c in cells])
    orbits = {}
    pool = set(configs)
    for cfg in configs:
        if cfg not in pool:
            continue
        orbit = set(tuple(cfg[p] for p in perm) for perm in perms)
        canon = min(orbit)
        orbits[canon] = sorted(orbit)
        pool -= orbit
    return list(orbits.values())


def transported_base(mu, module):
    """The base measure re-indexed by torus cells phi(U), cell order."""
    U = mu.domain
    images = [module.quotient(p) for p in U.points]
    if len(set(images)) != len(images):
        raise ValueError("quotient map is not injective on the base domain")
    target = Domain(module.dim, images)
    perm = [images.index(p) for p in target.points]
    masses = {tuple(w[i] for i in perm): m for w, m in mu.masses.items()}
    return Measure(target, mu.alphabet, masses)


def periodic_extension(mu, periods, node_cap=10 ** 7, config_cap=10 ** 6,
                       pivot_limit=DEFAULT_PIVOT_LIMIT):
    """Decide existence of an invariant torus measure extending mu.

    Exact in both directions: any invariant measure on the torus whose
    base marginal is mu must be supported on admissible configurations
    and constant on translation orbits, so the reduced LP loses nothing.
    """
    res = is_locally_stationary(mu)
    if not res.ok:
        raise ValueError("periodic extension requires a locally stationary "
                         f"base; witness {res.witness}")
    module = FiniteModule(periods)
    if module.dim != mu.domain.dim:
        raise ValueError("period vector dimension mismatch")
    if not module.injective_on(mu.domain):
        raise ValueError("quotient map is not injective on the base domain")
    env = verify_envelope(Envelope(module, mu.domain), max_subset_size=3)
    warning = ""
    if env.status != "pass":
        warning = (f"envelope check {env.status}"
                   + (f" (witness {env.witness})" if env.witness else ""))

    T = support_word_set(mu)
    try:
        configs = enumerate_periodic_configs(T, periods, node_cap, config_cap)
    except SearchBudget as exc:
        return PeriodicExtensionResult(ABORTED, module,
                                       envelope_warning=str(exc))
    orbits = _orbit_partition(configs, module)

    cells = module.elements()
    index = {c: i for i, c in enumerate(cells)}
    base_idx = [index[module.quotient(u)] for u in mu.domain.points]

    system = LinearSystem()
    counts = []
    for o, orbit in enumerate(orbits):
        system.add_variable(f"y{o}", nonneg=True)
        cnt = defaultdict(int)
        for cfg in orbit:
            cnt[tuple(cfg[i] for i in base_idx)] += 1
        counts.append(cnt)
    system.add_eq({f"y{o}": len(orbit) for o, orbit in enumerate(orbits)}, 1)
    for u in sorted(mu.support()):
        system.add_eq({f"y{o}": counts[o][u] for o in range(len(orbits))
                       if counts[o][u]}, mu[u])

    total = sum(len(orbit) for orbit in orbits)
    warm = ({f"y{o}": Fraction(1, total) for o in range(len(orbits))}
            if total else None)
    sol = solve_feasibility(system, pivot_limit=pivot_limit, warm_start=warm)
    result = PeriodicExtensionResult(sol.status, module,
                                     envelope_warning=warning,
                                     config_count=len(configs),
                                     lp_digest=system.digest())
    if sol.status != FEASIBLE:
        return result

    masses = {}
    for o, orbit in enumerate(orbits):
        y = sol.assignment[f"y{o}"]
        if y != 0:
            for cfg in orbit:
                masses[cfg] = y
    nu = Measure(_cell_domain(module), mu.alphabet, masses)
    # exact re-check of the defining marginal property
    target = Domain(module.dim, [cells[i] for i in base_idx])
    if nu.marginal(target).masses != transported_base(mu, module).masses:
        raise AssertionError("torus solution fails exact marginal re-check")
    result.torus_measure = nu
    return result


def pullback_periodic(nu, module, W):
    """Read the periodic measure nu on a window W of the full lattice."""
    cells = module.elements()
    index = {c: i for i, c in enumerate(cells)}
    idx = [index[module.quotient(p)] for p in W.points]
    out = defaultdict(Fraction)
    for cfg, mass in nu.masses.items():
        out[tuple(cfg[i] for i in idx)] += mass
    return Measure(W, nu.alphabet, out)


def compute_H(module, U, alphabet):
    """Number of distinct torus characters in the translate closure.

    Characters of the symbol torus supported on phi(U) are exponent maps
    phi(U) -> Z/alphabet; the count covers all their translates under
    the module action (the trivial character included).
    """
    images = sorted(set(module.quotient(p) for p in U.points))
    seen = set()
    for exps in itertools.product(range(alphabet), repeat=len(images)):
        base = [(c, e) for c, e in zip(images, exps) if e]
        for g in module.elements():
            seen.add(frozenset((module.add(c, g), e) for c, e in base))
    return len(seen)


def epsilon_bound(nu, module, U, alphabet):
    """The stability radius min-mass / H for a fully supported torus measure."""
    if len(nu.masses) != alphabet ** module.size:
        raise ValueError("torus measure must have full support")
    return min(nu.masses.values()) / compute_H(module, U, alphabet)


# ---------------------------------------------------------------------------
# refutation pipeline


@dataclass
class RefutationReport:
    verdict: str               # "refuted" or "unknown"
    method: str = ""           # "entropy-chain", "tiling", or "lp"
    window: Domain = None
    detail: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "verdict": self.verdict,
            "method": self.method,
            "window": ([list(p) for p in self.window.points]
                       if self.window is not None else None),
            "detail": {k: str(v) for k, v in self.detail.items()},
        }


def refute_nonextendible(mu, max_window=4, windows=None, lp_cap=None,
                         node_cap=10 ** 7,
                         pivot_limit=DEFAULT_PIVOT_LIMIT):
    """Attempt to prove that mu admits no stationary extension.

    Tries, in order: entropy-chain contradictions, emptiness of the
    subshift defined by the support, and exact LP infeasibility of the
    window extension polytopes over the window schedule.  Any single
    success is a proof of non-extendibility; exhausting the schedule is
    not, so the fallback verdict is "unknown".
    """
    D = mu.domain.dim
    if windows is None:
        windows = default_window_schedule(D, max_window)
    windows = [W for W in windows if translates_inside(mu.domain, W)]
    sides = [max(hi - lo + 1 for lo, hi in W.bounding_box())
             for W in windows] or [1]
    detail = {}

    chain = entropy_chain_refute(mu, horizon=max(sides) - 1 or 1)
    if chain.verdict == "refuted":
        lo = [min(min(p[i] for p in chain.path),
                  min(p[i] for p in mu.domain.points)) for i in range(D)]
        hi = [max(max(p[i] for p in chain.path),
                  max(p[i] for p in mu.domain.points)) for i in range(D)]
        W = Domain.box(D, tuple(h - l + 1 for l, h in zip(lo, hi)),
                       origin=tuple(lo))
        return RefutationReport("refuted", "entropy-chain", W,
                                {"pair": chain.pair, "chain": chain.path})

    try:
        empt = sft_emptiness(support_word_set(mu), windows,
                             node_cap=node_cap)
    except ValueError:
        # no scheduled window admits a translate of the support domain;
        # the tiling condition yields no evidence either way
        empt = None
    if empt is not None:
        if empt.status == "empty":
            return RefutationReport("refuted", "tiling", empt.window)
        if empt.reason:
            detail["tiling"] = empt.reason

    last = None
    for W in windows:
        try:
            polytope = build_window_polytope(mu, W, cap=lp_cap)
        except CapExceeded as exc:
            detail[f"lp {W.bounding_box()}"] = str(exc)
            continue
        except ValueError:
            # the base domain does not fit inside this window
            continue
        res = polytope.solve(pivot_limit=pivot_limit)
        if res.status == INFEASIBLE:
            return RefutationReport(
                "refuted", "lp", W,
                {"lp_digest": polytope.system.digest(), "pivots": res.pivots})
        if res.status == ABORTED:
            detail[f"lp {W.bounding_box()}"] = "pivot limit exceeded"
            continue
        last = W
    if last is not None:
        detail["feasible_up_to"] = last.bounding_box()
    return RefutationReport("unknown", "", last, detail)
