"""Neighbourhoods M(x, A) of points of the compactified graph.

M(x, A) is the set of y such that no geodesic from x to y meets A.  A vertex
a lies on some geodesic x -> y exactly when d(x, a) + d(a, y) = d(x, y), which
is what the membership test evaluates; enumerated geodesics serve as the
oracle in the tests.

Boundary points a+ and a- are never materialised.  They are ray-truncation
procedures: the base point is replaced by a^N (or a^-N) for N = N0, N0 + 2,
N0 + 4, ... until three consecutive verdicts agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _budget
from .graph import BallGraph, ConedFreeMetric, is_cone, lcp_len, parse_vertex, rebuild, vertex_name
from .paths import enumerate_geodesics, enumerate_quasi_geodesics
from .presentation import free_join, inverse_word


@dataclass(frozen=True)
class Ray:
    """Boundary point a+ (sign 1) or a- (sign -1) of the axis of a."""

    letter: str
    sign: int = 1

    def __str__(self):
        return f"{self.letter}{'+' if self.sign > 0 else '-'}"

    def truncation(self, group, N: int) -> str:
        a = self.letter if self.sign > 0 else inverse_word(self.letter)
        return group.nf(a * N)

    @classmethod
    def parse(cls, s: str) -> "Ray":
        if len(s) < 2 or s[-1] not in "+-":
            raise ValueError(f"not a ray: {s!r}")
        return cls(s[:-1], 1 if s[-1] == "+" else -1)


def is_ray(x) -> bool:
    return isinstance(x, Ray)


@dataclass(frozen=True)
class NeighborhoodSpec:
    base: object
    avoid: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "avoid", frozenset(self.avoid))
        if not is_ray(self.base) and self.base in self.avoid:
            raise ValueError("the base point may not belong to the avoid set")

    def to_dict(self, group):
        base = str(self.base) if is_ray(self.base) else vertex_name(group, self.base)
        avoid = sorted(vertex_name(group, a) for a in self.avoid)
        return {"base": base, "avoid": avoid}

    @classmethod
    def from_dict(cls, group, d):
        b = d["base"]
        base = Ray.parse(b) if b[-1:] in "+-" else parse_vertex(group, b)
        return cls(base, frozenset(parse_vertex(group, a) for a in d["avoid"]))


@dataclass
class CertifiedBool:
    value: bool
    certified: bool
    radius_used: int
    stabilization: tuple | None = None
    note: str = ""

    def __bool__(self):
        return self.value


# -- membership ---------------------------------------------------------------

def _word_of(v):
    return v.rep if is_cone(v) else v


def _meets(dist, x, A, y):
    """Does some geodesic x -> y pass through a vertex of A?"""
    dxy = dist(x, y)
    return any(dist(x, a) + dist(a, y) == dxy for a in A)


def _ray_start(ball, ray, y, A):
    longest = max([len(_word_of(a)) for a in A] + [0])
    return len(_word_of(y)) + longest + 1 + ball.radius // 4


def in_neighborhood(ball: BallGraph, y, spec: NeighborhoodSpec, max_steps: int = 12) -> CertifiedBool:
    dist = ball.metric.dist
    A = spec.avoid
    x = spec.base
    if not is_ray(x):
        if y == x:
            return CertifiedBool(True, True, ball.radius, None, "vacuous: y is the base point")
        val = not _meets(dist, x, A, y)
        cert = ball.metric.exact or all(ball.in_core(v) for v in (x, y, *A))
        return CertifiedBool(val, cert, ball.radius)
    # boundary base: truncate the ray
    N = _ray_start(ball, x, y, A)
    n0 = N
    verdicts = []
    for _ in range(max_steps):
        xn = x.truncation(ball.group, N)
        if not ball.metric.exact and xn not in ball:
            break
        if y == xn:
            verdicts.append(True)
        else:
            verdicts.append(not _meets(dist, xn, A, y))
        if len(verdicts) >= 3 and verdicts[-1] == verdicts[-2] == verdicts[-3]:
            return CertifiedBool(verdicts[-1], ball.metric.exact, ball.radius, (N - 4, N),
                                 "heuristic: ray truncation stabilized")
        N += 2
    val = verdicts[-1] if verdicts else False
    return CertifiedBool(val, False, ball.radius, (n0, N), "heuristic: ray truncation did not stabilize")


def compile_neighborhood(ball: BallGraph, spec: NeighborhoodSpec):
    """Fast y -> bool predicate equal to ``in_neighborhood(...).value``.

    Used by the large sweeps.  For rays in free groups the dependence on N
    drops out once N exceeds |y| + max|A|, so the limit is evaluated
    directly: d(a^N, v) - N = |v| - 2 (leading run of a in v).
    """
    dist = ball.metric.dist
    A = tuple(spec.avoid)
    x = spec.base
    if not A:
        return lambda y: True
    if is_cone(x) and isinstance(ball.metric, ConedFreeMetric) and \
            all(not is_cone(a) and ball.coset_rep(a, x.family) == x.rep for a in A):
        # every geodesic from the cone x to y enters the coset at the same
        # point: x.rep times the leading peripheral syllable of x.rep^-1 y
        rep = x.rep
        ch = ball.metric.letters[x.family]
        chars = ch + ch.upper()
        Aset = frozenset(A)

        def pred(y):
            if y == x:
                return True
            if is_cone(y):
                return not _meets(dist, x, A, y)
            n = lcp_len(rep, y)
            w = inverse_word(rep[n:]) + y[n:]
            run = w[:len(w) - len(w.lstrip(w[:1]))] if w[:1] in chars else ""
            return free_join(rep, run) not in Aset
        return pred
    if not is_ray(x):
        dxa = [(a, dist(x, a)) for a in A]

        def pred(y):
            if y == x:
                return True
            dxy = dist(x, y)
            for a, da in dxa:
                if da + dist(a, y) == dxy:
                    return False
            return True
        return pred
    if ball.kind == "plain" and ball.group.strategy == "free" and len(x.letter) == 1:
        ch = x.letter if x.sign > 0 else x.letter.upper()

        def offset(v):
            return len(v) - 2 * (len(v) - len(v.lstrip(ch)))

        oa = [(a, offset(a)) for a in A]

        def pred(y):
            oy = offset(y)
            for a, o in oa:
                if o + dist(a, y) == oy:
                    return False
            return True
        return pred
    return lambda y: in_neighborhood(ball, y, spec).value


# -- quasi-geodesic families --------------------------------------------------

class _Budget(Exception):
    pass


class _QCache:
    """r-quasi-geodesics from a fixed base to core targets, as vertex sets."""

    def __init__(self, ball, x, r, per_query, total=50_000):
        self.ball, self.x, self.r, self.per_query = ball, x, r, per_query
        self.sets = {}
        self.stored = 0
        self.total = min(total, _budget.path_budget())

    def get(self, y):
        s = self.sets.get(y)
        if s is None:
            ps = enumerate_quasi_geodesics(self.ball, self.x, y, self.r, budget=self.per_query)
            if not ps.complete:
                raise _Budget(y)
            self.stored += len(ps)
            if self.stored > self.total:
                raise _Budget(y)
            s = [frozenset(p) for p in ps]
            self.sets[y] = s
        return s


def _edge(a, b, ball):
    return (a, b) if ball.key(a) <= ball.key(b) else (b, a)


_PAIR_CACHE: dict = {}


def _pair_paths(ball, r, pair_budget):
    """All r-quasi-geodesics between unordered pairs of core vertices."""
    key = (id(ball), r)
    hit = _PAIR_CACHE.get(key)
    if hit is not None and hit[0] is ball:
        return hit[1]
    core = ball.sort(ball.core())
    n_pairs = len(core) * (len(core) - 1) // 2
    if n_pairs > pair_budget:
        return None
    out = {}
    total = 0
    per = _budget.path_budget()
    for i, p in enumerate(core):
        for q in core[i + 1:]:
            ps = enumerate_quasi_geodesics(ball, p, q, r, budget=per)
            if not ps.complete:
                return None
            total += len(ps)
            if total > per * 10:
                return None
            out[(p, q)] = [frozenset(_edge(a, b, ball) for a, b in zip(path, path[1:])) for path in ps]
    _PAIR_CACHE.clear()
    _PAIR_CACHE[key] = (ball, out)
    return out


@dataclass
class EdgeSet:
    edges: frozenset
    exhaustive: bool
    validated: bool
    pairs_checked: int
    note: str = ""


def e_set(ball: BallGraph, r: int, e, pair_budget: int = 6000) -> EdgeSet:
    """Finite edge set met by every r-quasi-geodesic sharing endpoints with one through e.

    Built by an exhaustive scan over core pairs, a greedy hitting set and a
    greedy pruning pass; validated by a second scan.
    """
    e = _edge(*e, ball)
    pairs = _pair_paths(ball, r, pair_budget)
    if pairs is None:
        core = set(ball.core())
        edges = {_edge(v, w, ball) for v in core for w in ball.neighbors(v)}
        return EdgeSet(frozenset(edges | {e}), False, False, 0,
                       "budget exceeded: every edge at a core vertex (superset)")
    constraints = []
    for Q in pairs.values():
        if any(e in es for es in Q):
            constraints.extend(es for es in Q if e not in es)
    chosen = [e]
    open_ = list(constraints)
    while open_:
        freq = {}
        for es in open_:
            for f in es:
                freq[f] = freq.get(f, 0) + 1
        best = min(freq, key=lambda f: (-freq[f], ball.key(f[0]), ball.key(f[1])))
        chosen.append(best)
        open_ = [es for es in open_ if best not in es]
    for f in reversed(chosen[1:]):
        trial = set(chosen) - {f}
        if all(es & trial for es in constraints):
            chosen.remove(f)
    final = frozenset(chosen)
    ok = all(es & final for es in constraints)
    return EdgeSet(final, True, ok, len(pairs))


# -- V sets ---------------------------------------------------------------------

@dataclass
class VSet:
    vertices: frozenset
    r: int
    base: object
    avoid: frozenset
    verified: bool
    exhaustive: bool
    method: str
    targets_checked: int = 0
    note: str = ""

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)


def _realize(ball, x):
    if is_ray(x):
        return x.truncation(ball.group, ball.radius)
    return x


def _coset_filter(ball, x, A):
    """Restriction to the coset of a cone base when A lies in it (inH mode)."""
    if ball.kind != "coned" or not is_cone(x):
        return None
    members = set(ball.neighbors(x))
    if A and set(A) <= members:
        return members
    return None


def compute_v_set(ball: BallGraph, r: int, x, A, per_query: int = 20_000,
                  pair_budget: int = 6000, mode: str = "auto") -> VSet:
    """A finite set V containing A with, for all y in the core,

    (1) y not in M(x, A)  =>  every r-quasi-geodesic x -> y meets V;
    (2) y in M(x, V)      =>  no r-quasi-geodesic x -> y meets A.

    ``mode`` is "auto", "exact" (enumerate quasi-geodesics) or "relaxed"
    (sound distance filters, used automatically when enumeration blows the
    budget or r is at least the ball radius).
    """
    A = frozenset(A)
    if not A:
        return VSet(frozenset(), r, x, A, True, True, "empty")
    xv = _realize(ball, x)
    if xv in A:
        raise ValueError("x may not lie in A")
    dist = ball.metric.dist
    targets = [y for y in ball.sort(ball.core()) if y != xv]
    restrict = _coset_filter(ball, xv, A)
    if mode == "auto" and r >= ball.radius:
        # slack this large lets quasi-geodesics leave the ball, so listing the
        # ones inside it certifies nothing extra and costs the whole budget
        mode = "relaxed"
    if mode in ("auto", "exact"):
        try:
            return _v_exact(ball, r, x, xv, A, targets, restrict, per_query, pair_budget, dist)
        except _Budget:
            if mode == "exact":
                raise RuntimeError("quasi-geodesic enumeration exceeded its budget")
    return _v_relaxed(ball, r, x, xv, A, targets, restrict, dist)


def _on_geodesics(ball, x, y):
    out = set()
    for p in enumerate_geodesics(ball, x, y):
        out.update(p)
    return ball.sort(out)


def _closest(cands, A, dist, ball):
    return min(cands, key=lambda v: (min(dist(v, a) for a in A), ball.key(v)))


def _v_exact(ball, r, x, xv, A, targets, restrict, per_query, pair_budget, dist):
    Q = _QCache(ball, xv, r, per_query)
    for y in targets:
        Q.get(y)
    notMA = [y for y in targets if _meets(dist, xv, A, y)]

    def violations(V):
        bad1, bad2 = [], []
        for y in notMA:
            for s in Q.get(y):
                if not (s & V):
                    bad1.append((y, s))
                    break
        for y in targets:
            if not _meets(dist, xv, V, y):
                if any(s & A for s in Q.get(y)):
                    bad2.append(y)
        return bad1, bad2

    # construction through edge sets, when the pair scan fits the budget
    method = "greedy"
    V = set(A)
    pairs = _pair_paths(ball, r, pair_budget)
    if pairs is not None:
        method = "edge-sets"
        for a in A:
            e0 = set()
            for p in enumerate_quasi_geodesics(ball, a, xv, r, budget=per_query):
                if len(p) > 1:
                    e0.add((p[0], p[1]))
            for e in e0:
                for f in e_set(ball, r, e, pair_budget).edges:
                    V.update(f)
        V.discard(xv)
        if restrict is not None:
            V = (V & restrict) | set(A)
            method += "+coset"

    def allowed(cands):
        cands = [v for v in cands if v != xv]
        if restrict is not None:
            inside = [v for v in cands if v in restrict]
            if inside:
                return inside
        return cands

    # repair until both clauses hold
    for _ in range(10 * len(targets) + 10):
        bad1, bad2 = violations(V)
        if not bad1 and not bad2:
            break
        for y, s in bad1:
            if not (s & V):
                V.add(_closest(allowed(s), A, dist, ball))
        for y in bad2:
            if not _meets(dist, xv, V, y):
                V.add(_closest(allowed(_on_geodesics(ball, xv, y)), A, dist, ball))
    # greedy pruning
    for v in sorted(V - A, key=lambda v: (-min(dist(v, a) for a in A), ball.key(v)), reverse=False):
        trial = V - {v}
        b1, b2 = violations(trial)
        if not b1 and not b2:
            V = trial
    b1, b2 = violations(V)
    return VSet(frozenset(V), r, x, A, not b1 and not b2, True, method, len(targets))


def _v_relaxed(ball, r, x, xv, A, targets, restrict, dist):
    """Sound over-approximations: a vertex a can sit on an r-quasi-geodesic
    x -> y only if it lies in a block on the x-y block route and
    d(x, a) + d_{G-x}(a, y) <= d(x, y) + r; every r-quasi-geodesic meets V if
    d_{G-V}(x, y) > d(x, y) + r."""
    from_a = {a: ball.bfs(a, avoid=frozenset([xv])) for a in A}

    def possibly_meets(y):
        dxy = dist(xv, y)
        corridor = None
        for a in A:
            if a == y:
                return True
            da = from_a[a].get(y)
            if da is None or dist(xv, a) + da > dxy + r:
                continue
            if corridor is None:
                corridor = ball.corridor(xv, y)
            if a in corridor:
                return True
        return False

    risky = {y for y in targets if possibly_meets(y)}
    notMA = [y for y in targets if _meets(dist, xv, A, y)]

    def allowed(cands):
        cands = [v for v in cands if v != xv]
        if restrict is not None:
            inside = [v for v in cands if v in restrict]
            if inside:
                return inside
        return cands

    V = set(A)
    for _ in range(4 * len(targets) + 10):
        changed = False
        avoid_bfs = _bfs_parents(ball, xv, V)
        for y in notMA:
            if y in V:
                continue
            d_out = avoid_bfs[0].get(y)
            if d_out is not None and d_out <= dist(xv, y) + r:
                # a short path dodging V: block it at the vertex nearest A
                path = _trace(avoid_bfs[1], y)
                V.add(_closest(allowed(path), A, dist, ball))
                changed = True
                break
        if changed:
            continue
        for y in targets:
            if y in risky and not _meets(dist, xv, V, y):
                V.add(_closest(allowed(_on_geodesics(ball, xv, y)), A, dist, ball))
                changed = True
        if not changed:
            break
    ok1 = all(y in V or (_bfs_parents(ball, xv, V)[0].get(y, 10**9) > dist(xv, y) + r) for y in notMA)
    ok2 = all(_meets(dist, xv, V, y) for y in risky)
    return VSet(frozenset(V), r, x, A, ok1 and ok2, False, "relaxed", len(targets),
                "enumeration budget exceeded; clauses checked with sound distance filters")


def _bfs_parents(ball, src, blocked):
    dist = {src: 0}
    parent = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for w in ball.neighbors(v):
                if w in dist or w in blocked:
                    continue
                dist[w] = dist[v] + 1
                parent[w] = v
                nxt.append(w)
        frontier = nxt
    return dist, parent


def _trace(parent, y):
    out = []
    while y is not None:
        out.append(y)
        y = parent[y]
    return out[::-1]


# -- shrinking ------------------------------------------------------------------

@dataclass
class ShrinkReport:
    C: frozenset
    r0: int
    verified: bool
    counterexample: tuple | None
    outer_points: int
    pairs_checked: int
    inner: VSet | None = None
    outer: VSet | None = None


def shrink_neighborhood(ball: BallGraph, x, A, delta) -> ShrinkReport:
    """C := V_{r0,x}(V_{r0,x}(A)) with r0 = 8 delta + 8, then check
    z in M(y, C) and y in M(x, C)  =>  z in M(x, A) over the core."""
    from fractions import Fraction
    r0 = int(8 * Fraction(delta) + 8)
    A = frozenset(A)
    if not A:
        return ShrinkReport(frozenset(), r0, True, None, 0, 0)
    V1 = compute_v_set(ball, r0, x, A)
    V2 = compute_v_set(ball, r0, x, V1.vertices)
    C = V2.vertices
    spec_C = NeighborhoodSpec(x, C) if is_ray(x) or x not in C else None
    spec_A = NeighborhoodSpec(x, A)
    inA = compile_neighborhood(ball, spec_A)
    core = ball.sort(ball.core())
    outer = []
    if spec_C is not None:
        inC = compile_neighborhood(ball, spec_C)
        outer = [y for y in core if inC(y)]
        if not is_ray(x):
            outer = [x] + [y for y in outer if y != x]
    checked = 0
    for y in outer:
        if y in C:
            continue
        in_yC = compile_neighborhood(ball, NeighborhoodSpec(y, C))
        for z in core:
            if z == y or (not is_ray(x) and z == x):
                continue
            if in_yC(z):
                checked += 1
                if not inA(z):
                    return ShrinkReport(C, r0, False, (y, z), len(outer), checked, V1, V2)
    return ShrinkReport(C, r0, True, None, len(outer), checked, V1, V2)


# -- local finiteness -----------------------------------------------------------

@dataclass
class FinitenessProbe:
    degrees: dict
    stabilized: bool
    union_sizes: dict = field(default_factory=dict)


def union_max_degree(paths) -> tuple:
    adj = {}
    for p in paths:
        for a, b in zip(p, p[1:]):
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    if not adj:
        return 0, 0
    return max(len(s) for s in adj.values()), len(adj)


def local_finiteness_probe(ball: BallGraph, r: int, x, y, radii=None) -> FinitenessProbe:
    if radii is None:
        radii = [max(1, ball.radius - 2), ball.radius]
    degrees, sizes = {}, {}
    for R in radii:
        b = ball if R == ball.radius else rebuild(ball, R)
        if x == y:
            degrees[R], sizes[R] = 0, 1
            continue
        deg, size = union_max_degree(enumerate_quasi_geodesics(b, x, y, r))
        degrees[R], sizes[R] = deg, size
    vals = [degrees[R] for R in radii]
    return FinitenessProbe(degrees, len(set(vals[-2:])) == 1, sizes)
