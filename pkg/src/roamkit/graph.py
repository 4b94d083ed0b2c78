"""Finite balls in Cayley graphs and coned-off Cayley graphs.

Vertices are plain normal-form strings for group elements and :class:`Cone`
tuples for coset vertices [gH].  Distances come from a metric object picked
to suit the group:

* free group, plain ball:            reduced-word distance (closed form)
* free group coned over generator
  letters:                           syllable-cost closed form
* other exact plain presentations:   length of the normal form of u^-1 v
* anything else:                     breadth-first search inside the ball

The closed forms are cross-checked against breadth-first search in the tests.
"""

from __future__ import annotations

import itertools
import os
import random
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from . import _budget
from .presentation import GroupPresentation, inverse_word, shortlex_rank


class Cone(NamedTuple):
    """Cone vertex [rep H_family]; rep is the shortlex-least coset member."""

    rep: str
    family: int = 0


class BudgetExceeded(RuntimeError):
    pass


def is_cone(v) -> bool:
    return type(v) is Cone


# -- metrics ------------------------------------------------------------------

def lcp_len(u: str, v: str) -> int:
    if not u or not v or u[0] != v[0]:
        return 0
    return len(os.path.commonprefix((u, v)))


class WordMetric:
    """Free group, plain Cayley graph: d(u, v) = |u| + |v| - 2 lcp(u, v)."""

    exact = True
    name = "free-word"

    def dist(self, u, v):
        return len(u) + len(v) - 2 * lcp_len(u, v)


class GroupWordMetric:
    """Exact normal forms: d(u, v) = |nf(u^-1 v)|."""

    exact = True
    name = "normal-form"

    def __init__(self, p):
        self.p = p

    def dist(self, u, v):
        return len(self.p.nf(inverse_word(u) + v))


class ConedFreeMetric:
    """Free group coned over cyclic subgroups generated by single letters.

    The coned graph is a tree of fans, so a maximal syllable x^k of a coned
    letter x costs min(|k|, 2) and every other letter costs 1.
    """

    exact = True
    name = "coned-free"

    def __init__(self, letters):
        self.letters = tuple(letters)
        pat = "|".join(f"{x}{{3,}}|{x.upper()}{{3,}}" for x in self.letters)
        self._runs = re.compile(pat) if pat else None
        self._triples = [x * 3 for x in self.letters] + [x.upper() * 3 for x in self.letters]
        self._strip = [
            (re.compile(f"^(?:{x}+|{x.upper()}+)"), re.compile(f"(?:{x}+|{x.upper()}+)$"))
            for x in self.letters
        ]

    def cost(self, w: str) -> int:
        if self._runs is None or len(w) < 3:
            return len(w)
        if not any(t in w for t in self._triples):
            return len(w)
        return len(w) - sum(m.end() - m.start() - 2 for m in self._runs.finditer(w))

    @staticmethod
    def _quotient(u, v):
        n = lcp_len(u, v)
        return inverse_word(u[n:]) + v[n:]

    def dist(self, u, v):
        cu, cv = is_cone(u), is_cone(v)
        if not cu and not cv:
            return self.cost(self._quotient(u, v))
        if cu and cv:
            if u == v:
                return 0
            w = self._quotient(u.rep, v.rep)
            lead, _ = self._strip[u.family]
            _, trail = self._strip[v.family]
            if u.family == v.family and lead.sub("", w, count=1) == "":
                return 0
            w = lead.sub("", w, count=1)
            w = trail.sub("", w, count=1)
            return 2 + self.cost(w)
        if cu:
            u, v = v, u
        w = self._quotient(u, v.rep)
        w = self._strip[v.family][1].sub("", w, count=1)
        return 1 + self.cost(w)


class BallMetric:
    """Breadth-first distances inside the ball (no global guarantee)."""

    exact = False
    name = "ball-bfs"

    def __init__(self, ball):
        self.ball = ball
        self._tables = {}

    def table(self, source):
        t = self._tables.get(source)
        if t is None:
            if len(self._tables) > 4096:
                self._tables.clear()
            t = self.ball.bfs(source)
            self._tables[source] = t
        return t

    def dist(self, u, v):
        d = self.table(u).get(v)
        if d is None:
            raise KeyError(f"{v!r} not reachable from {u!r} inside the ball")
        return d


# -- ball graphs --------------------------------------------------------------

@dataclass
class BallGraph:
    group: GroupPresentation
    radius: int
    kind: str = "plain"
    peripherals: tuple = ()
    safe_radius: int = -1
    elements: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.safe_radius < 0:
            self.safe_radius = self.radius // 2
        self.element_set = set(self.elements)
        self.rank = shortlex_rank(self.group.generators)
        self.letters = sorted(self.rank, key=self.rank.get)
        self._cone_nbrs = {}
        self._nbr_cache = {}
        self._cones = None
        self._blocks = None
        self.metric = self._pick_metric()

    # identity / ordering
    @property
    def center(self):
        return ""

    def key(self, v):
        """Global vertex order: elements before cones, shortlex within."""
        if is_cone(v):
            return (1, v.family, len(v.rep), [self.rank[c] for c in v.rep])
        return (0, 0, len(v), [self.rank[c] for c in v])

    def sort(self, vs):
        return sorted(vs, key=self.key)

    def _pick_metric(self):
        p = self.group
        if self.kind == "plain":
            if p.strategy == "free":
                return WordMetric()
            if p.exact:
                return GroupWordMetric(p)
            return BallMetric(self)
        letters = [H.cyclic for H in self.peripherals]
        if (p.strategy == "free" and all(x is not None and len(x) == 1 for x in letters)
                and len({x.lower() for x in letters}) == len(letters)):
            return ConedFreeMetric([x.lower() for x in letters])
        return BallMetric(self)

    @property
    def is_tree(self):
        return self.kind == "plain" and self.group.strategy == "free"

    # membership
    def __contains__(self, v):
        if is_cone(v):
            return v.rep in self.element_set and 0 <= v.family < len(self.peripherals) \
                and self.coset_rep(v.rep, v.family) == v.rep
        return v in self.element_set

    def in_core(self, v) -> bool:
        w = v.rep if is_cone(v) else v
        return len(w) <= self.safe_radius and w in self.element_set

    @property
    def cones(self):
        if self._cones is None:
            seen = set()
            out = []
            for i in range(len(self.peripherals)):
                for g in self.elements:
                    c = Cone(self.coset_rep(g, i), i)
                    if c not in seen:
                        seen.add(c)
                        out.append(c)
            self._cones = self.sort(out)
        return self._cones

    @property
    def vertices(self):
        if self.kind == "plain":
            return list(self.elements)
        return list(self.elements) + list(self.cones)

    def core(self):
        out = [g for g in self.elements if len(g) <= self.safe_radius]
        if self.kind == "coned":
            out += [c for c in self.cones if len(c.rep) <= self.safe_radius]
        return out

    def __len__(self):
        return len(self.element_set) + (len(self.cones) if self.kind == "coned" else 0)

    # cosets
    def coset_rep(self, g: str, i: int) -> str:
        H = self.peripherals[i]
        a = H.cyclic
        if a is not None and len(a) == 1 and self.group.strategy == "free":
            return g.rstrip(a + a.upper()) if g[-1:].lower() == a else g
        members = self.coset_members(g, i)
        return min(members, key=self.key) if members else g

    def coset_members(self, g: str, i: int) -> list:
        """Elements of g H_i inside the ball, in global order."""
        H = self.peripherals[i]
        p = self.group
        a = H.cyclic
        if a is not None and len(a) == 1 and p.strategy == "free":
            rep = g.rstrip(a + a.upper()) if g[-1:].lower() == a else g
            room = self.radius - len(rep)
            out = [rep]
            for k in range(1, room + 1):
                out.append(rep + a * k)
                out.append(rep + a.upper() * k)
            return self.sort(out)
        found = set()
        if a is not None:
            for step in (a, inverse_word(a)):
                cur, streak = g, 0
                for _ in range(4 * self.radius + 16):
                    if cur in self.element_set:
                        found.add(cur)
                        streak = 0
                    else:
                        streak += 1
                        if streak > 4:
                            break
                    cur = p.mul(cur, step)
        else:
            gens = set(H.generators) | {p.inv(h) for h in H.generators}
            frontier, seen = [""], {""}
            for _ in range(H.radius):
                nxt = []
                for x in frontier:
                    for s in gens:
                        y = p.mul(x, s)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            for h in seen:
                x = p.mul(g, h)
                if x in self.element_set:
                    found.add(x)
        return self.sort(found)

    # adjacency
    def step(self, g: str, s: str) -> str:
        if self.group.strategy == "free":
            return g[:-1] if g and g[-1] == s.swapcase() else g + s
        return self.group.mul(g, s)

    def group_neighbors(self, g: str) -> list:
        """Cayley neighbours of an element, inside or outside the ball."""
        return [self.step(g, s) for s in self.letters]

    def neighbors(self, v) -> list:
        if is_cone(v):
            out = self._cone_nbrs.get(v)
            if out is None:
                out = self.coset_members(v.rep, v.family)
                self._cone_nbrs[v] = out
            return out
        out = self._nbr_cache.get(v)
        if out is None:
            out = [x for x in self.group_neighbors(v) if x in self.element_set]
            if self.kind == "coned":
                out += [Cone(self.coset_rep(v, i), i) for i in range(len(self.peripherals))]
            out = self.sort(set(out))
            if len(self._nbr_cache) < 200_000:
                self._nbr_cache[v] = out
        return out

    def edges(self):
        for v in self.vertices:
            for w in self.neighbors(v):
                if self.key(v) < self.key(w):
                    yield (v, w)

    def bfs(self, source, avoid=frozenset()):
        dist = {source: 0}
        q = deque([source])
        while q:
            v = q.popleft()
            dv = dist[v] + 1
            for w in self.neighbors(v):
                if w not in dist and w not in avoid:
                    dist[w] = dv
                    q.append(w)
        return dist

    def dist(self, u, v) -> int:
        return self.metric.dist(u, v)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from(self.edges())
        return G

    # block structure, used to restrict path searches
    def blocks(self):
        if self._blocks is None:
            G = self.to_networkx()
            comps = [frozenset(c) for c in nx.biconnected_components(G)]
            cut = set(nx.articulation_points(G))
            T = nx.Graph()
            home = {}
            for i, c in enumerate(comps):
                T.add_node(("B", i))
                for v in c:
                    if v in cut:
                        T.add_edge(("B", i), ("C", v))
                    else:
                        home[v] = ("B", i)
            for v in cut:
                home[v] = ("C", v)
            self._blocks = (comps, home, T)
        return self._blocks

    def corridor(self, x, y) -> frozenset:
        """Vertices that can lie on a simple path from x to y."""
        comps, home, T = self.blocks()
        if x == y:
            return frozenset([x])
        try:
            route = nx.shortest_path(T, home[x], home[y])
        except (KeyError, nx.NetworkXNoPath):
            return frozenset()
        out = set()
        for kind, i in route:
            if kind == "B":
                out |= comps[i]
        return frozenset(out)


# -- construction -------------------------------------------------------------

def _enumerate_elements(p: GroupPresentation, R: int) -> list:
    budget = _budget.vertex_budget()
    rank = shortlex_rank(p.generators)
    letters = sorted(rank, key=rank.get)
    if p.strategy == "free":
        out = [""]
        layer = [""]
        for _ in range(R):
            nxt = [w + s for w in layer for s in letters if not (w and w[-1] == s.swapcase())]
            out.extend(nxt)
            if len(out) > budget:
                raise BudgetExceeded(f"ball exceeds the vertex budget ({budget})")
            layer = nxt
        return out
    seen = {""}
    out = [""]
    layer = [""]
    for _ in range(R):
        nxt = []
        for w in layer:
            for s in letters:
                x = p.mul(w, s)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        if len(out) + len(nxt) > budget:
            raise BudgetExceeded(f"ball exceeds the vertex budget ({budget})")
        nxt.sort(key=lambda w: (len(w), [rank[c] for c in w]))
        out.extend(nxt)
        layer = nxt
    return out


def build_ball(p: GroupPresentation, R: int, safe_radius: int | None = None) -> BallGraph:
    if R < 1:
        raise ValueError("radius must be at least 1")
    els = _enumerate_elements(p, R)
    return BallGraph(p, R, "plain", (), -1 if safe_radius is None else safe_radius, els)


def build_coned_off_ball(p: GroupPresentation, peripherals, R: int,
                         safe_radius: int | None = None) -> BallGraph:
    if R < 1:
        raise ValueError("radius must be at least 1")
    peripherals = tuple(peripherals)
    if not peripherals:
        raise ValueError("a coned-off ball needs at least one peripheral subgroup")
    for H in peripherals:
        if H.group != p:
            raise ValueError("peripheral subgroup lives in another presentation")
    els = _enumerate_elements(p, R)
    return BallGraph(p, R, "coned", peripherals, -1 if safe_radius is None else safe_radius, els)


def rebuild(ball: BallGraph, R: int) -> BallGraph:
    if ball.kind == "plain":
        return build_ball(ball.group, R)
    return build_coned_off_ball(ball.group, ball.peripherals, R)


# -- distances ----------------------------------------------------------------

def distance(ball: BallGraph, x, y) -> tuple:
    """(distance, certified).  Core pairs use the ball's metric, others BFS."""
    for v in (x, y):
        if v not in ball:
            raise KeyError(f"vertex {v!r} is not in the ball")
    core = ball.in_core(x) and ball.in_core(y)
    certified = core and (ball.kind == "plain" or ball.metric.exact)
    if core:
        return ball.dist(x, y), certified
    d = ball.bfs(x).get(y)
    if d is None:
        raise KeyError(f"{y!r} is not reachable from {x!r} inside the ball")
    return d, False


# -- thin triangles -----------------------------------------------------------

@dataclass
class DeltaEstimate:
    delta: Fraction
    method: str
    triangles: int
    exhaustive: bool
    seed: int | None = None
    witness: tuple | None = None
    radius: int = 0

    def to_dict(self):
        return {
            "delta": str(self.delta),
            "method": self.method,
            "triangles": self.triangles,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "radius": self.radius,
            "witness": None if self.witness is None else [vertex_name(self._ball, v) for v in self.witness],
        }


class _GeodesicDAG:
    """Geodesic sides between two vertices and bottleneck distances to them.

    Sides run through the whole group for exact plain metrics and through
    ball vertices otherwise; lengths are always the true distances.
    """

    def __init__(self, ball: BallGraph):
        self.ball = ball
        self.free = ball.kind == "plain" and ball.metric.exact
        self._next = {}
        self._pts = {}
        self._bottle = {}

    def nbrs(self, v):
        if self.free:
            return self.ball.group_neighbors(v)
        return self.ball.neighbors(v)

    def nxt(self, c, q):
        key = (c, q)
        out = self._next.get(key)
        if out is None:
            d = self.ball.dist(c, q) - 1
            out = [n for n in self.nbrs(c) if self.ball.dist(n, q) == d]
            self._next[key] = out
        return out

    def points(self, p, q):
        """Vertices on some geodesic p -> q (None when no side exists)."""
        key = (p, q)
        if key in self._pts:
            return self._pts[key]
        alive = {}

        def reach(c):
            if c in alive:
                return alive[c]
            ok = c == q or any([reach(n) for n in self.nxt(c, q)])
            alive[c] = ok
            return ok

        out = None
        if reach(p):
            out = [c for c, ok in alive.items() if ok]
        self._pts[key] = out
        return out

    def bottleneck(self, v, p, q):
        """max over geodesics g from p to q of min over w in g of d(v, w)."""
        key = (v, p, q)
        hit = self._bottle.get(key)
        if hit is not None:
            return hit
        memo = {}
        dist = self.ball.metric.dist

        def f(c):
            if c in memo:
                return memo[c]
            dc = dist(v, c)
            if c == q:
                val = dc
            else:
                best = None
                for n in self.nxt(c, q):
                    m = f(n)
                    if m is not None and (best is None or m > best):
                        best = m
                        if best >= dc:
                            break
                val = None if best is None else min(dc, best)
            memo[c] = val
            return val

        out = f(p)
        if len(self._bottle) > 2_000_000:
            self._bottle.clear()
        self._bottle[key] = out
        return out

    def exceeds(self, v, p, q, t):
        """Is there a geodesic p -> q all of whose vertices are farther than t from v?"""
        dead = set()
        dist = self.ball.metric.dist

        def go(c):
            if c in dead or dist(v, c) <= t:
                return False
            if c == q:
                return True
            for n in self.nxt(c, q):
                if go(n):
                    return True
            dead.add(c)
            return False

        return go(p)

    def defect(self, x, y, z, floor=-1):
        """Maximal thinness defect over all side choices, or None if some side
        does not exist.  Values not above ``floor`` may be reported as ``floor``."""
        best = floor
        dist = self.ball.metric.dist
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            pts = self.points(p, q)
            if pts is None:
                return None
            if self.points(q, r) is None or self.points(r, p) is None:
                return None
            for v in pts:
                if min(dist(v, p), dist(v, q), dist(v, r)) <= best:
                    continue
                if not (self.exceeds(v, q, r, best) and self.exceeds(v, r, p, best)):
                    continue
                val = min(self.bottleneck(v, q, r), self.bottleneck(v, r, p))
                if val > best:
                    best = val
        return max(best, 0)


def anchors(ball: BallGraph) -> list:
    """Corner representatives up to the group action: e and the base cones."""
    out = [""]
    if ball.kind == "coned":
        out += [Cone(ball.coset_rep("", i), i) for i in range(len(ball.peripherals))]
    return out


def estimate_delta(ball: BallGraph, max_triangles: int = 200_000, samples: int = 5_000,
                   seed: int = 0) -> DeltaEstimate:
    """Largest thinness defect over geodesic triangles seen in the ball.

    One corner is an anchor (e, or a base cone), the other two range over all
    ball vertices; every triangle of the graph is a translate of such a one.
    For each corner triple the maximum over all side choices is taken with a
    bottleneck recursion on the geodesic DAG instead of listing side triples.
    The value is a lower bound for the thin-triangle constant.
    """
    if ball.is_tree:
        est = DeltaEstimate(Fraction(0), "tree", 0, True, None, None, ball.radius)
        est._ball = ball
        return est
    dag = _GeodesicDAG(ball)
    verts = ball.vertices
    anc = anchors(ball)
    n_pairs = len(verts) * (len(verts) + 1) // 2
    total = n_pairs * len(anc)
    budget = min(max_triangles, _budget.triangle_budget())
    best, witness, count = 0, None, 0
    if total <= budget:
        triples = ((x, y, z) for x in anc for y, z in itertools.combinations_with_replacement(verts, 2))
        exhaustive, used_seed, method = True, None, "exhaustive"
    else:
        rng = random.Random(seed)
        triples = ((rng.choice(anc), rng.choice(verts), rng.choice(verts)) for _ in range(samples))
        exhaustive, used_seed, method = False, seed, f"sampled ({samples} of {total} triangles)"
    for x, y, z in triples:
        val = dag.defect(x, y, z, best)
        count += 1
        if val is not None and val > best:
            best, witness = val, (x, y, z)
    est = DeltaEstimate(Fraction(best), method, count, exhaustive, used_seed, witness, ball.radius)
    est._ball = ball
    return est


# -- fineness -----------------------------------------------------------------

@dataclass
class FinenessReport:
    edge: tuple
    loop_counts: dict
    stabilized: bool
    counts_by_radius: dict = field(default_factory=dict)
    uncertified_lengths: list = field(default_factory=list)


def count_loops(ball: BallGraph, edge, n_max: int, budget: int | None = None) -> dict:
    """Embedded loops of each length 3..n_max through ``edge``.

    A loop x0 x1 ... x_{n-1} x0 with distinct x_i is counted once, oriented so
    that it traverses the edge from edge[0] to edge[1].
    """
    u, v = edge
    if v not in ball.neighbors(u):
        raise ValueError(f"{edge!r} is not an edge of the ball")
    to_u = ball.bfs(u)
    counts = {n: 0 for n in range(3, n_max + 1)}
    budget = budget or _budget.path_budget() * 50
    nodes = 0
    path = [u, v]
    on = {u, v}

    def dfs(cur, length):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("loop enumeration budget exhausted")
        for w in ball.neighbors(cur):
            if w == u:
                if length + 1 >= 3:
                    counts[length + 1] += 1
                continue
            if w in on:
                continue
            # need at least to_u[w] more steps to close, total <= n_max
            if length + 1 + to_u.get(w, n_max + 1) > n_max:
                continue
            on.add(w)
            path.append(w)
            dfs(w, length + 1)
            path.pop()
            on.discard(w)

    dfs(v, 1)
    return counts


def check_fineness(ball: BallGraph, edge, n_max: int, compare_radius: int | None = None) -> FinenessReport:
    counts = count_loops(ball, edge, n_max)
    by_radius = {ball.radius: counts}
    smaller = ball.radius - 2 if compare_radius is None else compare_radius
    stabilized = False
    uncertified = []
    if smaller >= max(1, max(len(v.rep if is_cone(v) else v) for v in edge)):
        other = count_loops(rebuild(ball, smaller), edge, n_max)
        by_radius[smaller] = other
        stabilized = other == counts
        if ball.kind == "coned":
            uncertified = [n for n in counts if counts[n] != other[n]]
    if ball.kind == "plain":
        base = max(len(v) for v in edge)
        uncertified = [n for n in counts if base + n // 2 > ball.radius]
    return FinenessReport(edge, counts, stabilized, dict(sorted(by_radius.items())), uncertified)


# -- export -------------------------------------------------------------------

def identity_label(p: GroupPresentation) -> str:
    return "1" if "e" in p.generators else "e"


def vertex_name(ball_or_group, v) -> str:
    p = ball_or_group.group if isinstance(ball_or_group, BallGraph) else ball_or_group
    e = identity_label(p)
    if is_cone(v):
        tag = f"[{v.rep or e}]"
        return tag if v.family == 0 else f"{tag}{v.family}"
    return v or e


def parse_vertex(ball_or_group, s: str):
    p = ball_or_group.group if isinstance(ball_or_group, BallGraph) else ball_or_group
    e = identity_label(p)
    if s.startswith("["):
        body, _, fam = s[1:].partition("]")
        return Cone("" if body == e else body, int(fam) if fam else 0)
    return "" if s == e else s


def _dot_id(s):
    return '"' + s.replace('"', '\\"') + '"'


def to_dot(ball: BallGraph, highlight=None, name="ball") -> str:
    """DOT text for the ball; ``highlight`` is an optional path to overlay."""
    hl_edges = set()
    hl_nodes = set()
    if highlight:
        hl_nodes = set(highlight)
        for a, b in zip(highlight, highlight[1:]):
            hl_edges.add(frozenset((a, b)))
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=10];"]
    for v in ball.sort(ball.vertices):
        attrs = []
        if is_cone(v):
            attrs += ["shape=box", "style=filled", 'fillcolor="lightgrey"']
        if v in hl_nodes:
            attrs += ['color="red"', "penwidth=2"]
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_id(vertex_name(ball, v))}{suffix};")
    for a, b in ball.edges():
        attr = ' [color="red", penwidth=2]' if frozenset((a, b)) in hl_edges else ""
        lines.append(f"  {_dot_id(vertex_name(ball, a))} -- {_dot_id(vertex_name(ball, b))}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def path_overlay_dot(ball: BallGraph, path, name="path") -> str:
    """Only the path, with vertex ids identical to those of :func:`to_dot`."""
    lines = [f"graph {name} {{", '  edge [color="red", penwidth=2];']
    for v in path:
        lines.append(f"  {_dot_id(vertex_name(ball, v))};")
    for a, b in zip(path, path[1:]):
        lines.append(f"  {_dot_id(vertex_name(ball, a))} -- {_dot_id(vertex_name(ball, b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_csv(ball: BallGraph) -> str:
    rows = ["vertex,neighbor"]
    for v in ball.sort(ball.vertices):
        for w in ball.neighbors(v):
            rows.append(f"{vertex_name(ball, v)},{vertex_name(ball, w)}")
    return "\n".join(rows) + "\n"
