"""Paths, geodesics and r-quasi-geodesics inside a ball."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _budget
from .graph import BallGraph


class Path(tuple):
    """Injective vertex sequence; consecutive vertices adjacent in the ball."""

    @classmethod
    def checked(cls, ball: BallGraph, vertices) -> "Path":
        vs = tuple(vertices)
        if not vs:
            raise ValueError("a path has at least one vertex")
        if len(set(vs)) != len(vs):
            raise ValueError("path vertices must be distinct")
        for a, b in zip(vs, vs[1:]):
            if b not in ball.neighbors(a):
                raise ValueError(f"{a!r} and {b!r} are not adjacent in the ball")
        return cls(vs)

    @property
    def length(self) -> int:
        return len(self) - 1

    def edges(self):
        return [frozenset(e) for e in zip(self, self[1:])]


@dataclass
class PathSet:
    paths: tuple
    certified: bool = True
    complete: bool = True

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)

    def __contains__(self, p):
        return tuple(p) in {tuple(q) for q in self.paths}

    def as_set(self):
        return {tuple(p) for p in self.paths}


@dataclass
class QuasiGeodesicWitness:
    path: Path
    r: object
    violating_subpath: tuple | None = None

    @property
    def ok(self):
        return self.violating_subpath is None


@dataclass
class GeodesicTriangle:
    corners: tuple
    sides: tuple   # paths x->y, y->z, z->x

    @classmethod
    def checked(cls, ball, corners, sides):
        x, y, z = corners
        ends = [(x, y), (y, z), (z, x)]
        for s, (p, q) in zip(sides, ends):
            if s[0] != p or s[-1] != q:
                raise ValueError("side endpoints do not match the corners")
            if len(s) - 1 != ball.dist(p, q):
                raise ValueError("side is not a geodesic")
        return cls(tuple(corners), tuple(Path(s) for s in sides))


def _certified(ball, *vs):
    return all(ball.in_core(v) for v in vs) and (ball.kind == "plain" or ball.metric.exact)


def enumerate_geodesics(ball: BallGraph, x, y, budget: int | None = None) -> PathSet:
    """All geodesics x -> y inside the ball (distance to y drops by one per step)."""
    dist = ball.metric.dist
    budget = budget or _budget.path_budget()
    out = []
    dead = set()
    complete = True

    def go(path, c):
        nonlocal complete
        if c == y:
            out.append(Path(path))
            return True
        d = dist(c, y) - 1
        found = False
        for n in ball.neighbors(c):
            if n in dead or dist(n, y) != d:
                continue
            if len(out) >= budget:
                complete = False
                return True
            path.append(n)
            if go(path, n):
                found = True
            path.pop()
        if not found:
            dead.add(c)
        return found

    go([x], x)
    return PathSet(tuple(out), _certified(ball, x, y), complete)


def enumerate_quasi_geodesics(ball: BallGraph, x, y, r, max_len: int | None = None,
                              budget: int | None = None, use_blocks: bool = True) -> PathSet:
    """All injective r-quasi-geodesic paths x -> y inside the ball.

    Two prunes: the prefix may not exceed d(x, cur) + r, and a partial path
    that cannot reach y within d(x, y) + r steps is abandoned.  With
    ``use_blocks`` the search stays inside the blocks on the block-cut route
    from x to y, which every simple x-y path does anyway.
    """
    dist = ball.metric.dist
    dxy = dist(x, y)
    cap = dxy + r if max_len is None else min(max_len, dxy + r)
    if max_len is not None and max_len < dxy + r:
        raise ValueError("max_len must be at least d(x, y) + r")
    budget = budget or _budget.path_budget()
    allowed = ball.corridor(x, y) if use_blocks else None
    out = []
    nodes = 0
    complete = True
    path = [x]
    on = {x}

    def go(c):
        nonlocal nodes, complete
        if not complete:
            return
        if c == y:
            out.append(Path(path))
            return
        k = len(path)          # index the next vertex will take
        for n in ball.neighbors(c):
            if n in on or (allowed is not None and n not in allowed):
                continue
            if k + dist(n, y) > cap:
                continue
            if any(k - i > dist(path[i], n) + r for i in range(k - 1)):
                continue
            nodes += 1
            if nodes > budget:
                complete = False
                return
            path.append(n)
            on.add(n)
            go(n)
            on.discard(n)
            path.pop()

    go(x)
    return PathSet(tuple(out), _certified(ball, x, y), complete)


def is_quasi_geodesic(ball: BallGraph, path, r) -> QuasiGeodesicWitness:
    dist = ball.metric.dist
    n = len(path)
    for i in range(n):
        for j in range(i + 1, n):
            if j - i > dist(path[i], path[j]) + r:
                return QuasiGeodesicWitness(Path(path), r, (i, j))
    return QuasiGeodesicWitness(Path(path), r, None)


@dataclass
class Projection:
    minimizers: list
    pick: object
    distance: int


def project(ball: BallGraph, z, alpha) -> Projection:
    dist = ball.metric.dist
    ds = [dist(z, v) for v in alpha]
    m = min(ds)
    mins = [v for v, d in zip(alpha, ds) if d == m]
    return Projection(mins, min(mins, key=ball.key), m)


def least_geodesic(ball: BallGraph, x, y) -> Path:
    """Lexicographically least geodesic under the global vertex order."""
    dist = ball.metric.dist
    path = [x]
    c = x
    while c != y:
        d = dist(c, y) - 1
        step = [n for n in ball.neighbors(c) if dist(n, y) == d]
        if not step:
            # dead end inside the ball: fall back to the full enumeration
            paths = sorted((tuple(ball.key(v) for v in p), p) for p in enumerate_geodesics(ball, x, y))
            if not paths:
                raise ValueError(f"no geodesic from {x!r} to {y!r} inside the ball")
            return paths[0][1]
        c = step[0]
        path.append(c)
    return Path(path)


@dataclass
class Concatenation:
    z0: object
    beta: Path
    paths: tuple
    witnesses: tuple

    @property
    def ok(self):
        return all(w.ok for w in self.witnesses)


def concatenation_constant(delta) -> Fraction:
    return 8 * Fraction(delta) + 8


def concatenate_at_projection(ball: BallGraph, z, alpha, delta) -> Concatenation:
    """Join z to its projection z0 on alpha and continue along both halves.

    Each output is checked to be (8 delta + 8)-quasi-geodesic.  When z0 is an
    endpoint of alpha one half is a single vertex and only the other path is
    returned; when z lies on alpha the result is alpha itself.
    """
    alpha = Path(alpha)
    r0 = concatenation_constant(delta)
    if z in alpha:
        return Concatenation(z, Path((z,)), (alpha,), (is_quasi_geodesic(ball, alpha, r0),))
    z0 = project(ball, z, alpha).pick
    beta = least_geodesic(ball, z, z0)
    i = alpha.index(z0)
    halves = [tuple(reversed(alpha[:i + 1])), tuple(alpha[i:])]
    outs = [Path(beta + h[1:]) for h in halves if len(h) > 1]
    if not outs:
        outs = [beta]
    return Concatenation(z0, beta, tuple(outs), tuple(is_quasi_geodesic(ball, p, r0) for p in outs))


def thinness_defect(ball: BallGraph, T: GeodesicTriangle) -> int:
    dist = ball.metric.dist
    best = 0
    s = T.sides
    for k in range(3):
        others = set(s[(k + 1) % 3]) | set(s[(k + 2) % 3])
        for v in s[k]:
            best = max(best, min(dist(v, w) for w in others))
    return best
