"""Finite presentations, words and normal forms.

Words are plain strings over lowercase generator letters; the uppercase
letter is the inverse. The empty string is the identity.

Three normal-form strategies are available:

* ``free``        no relators, normal form = freely reduced word.
* ``dehn``        C'(1/6) presentations.  Equality is decided by Dehn's
                  algorithm; canonical forms are shortlex-least words read
                  from a lazily grown table.
* ``ball-table``  anything else.  Canonical forms come from the same kind of
                  table, capped at ``table_radius``; equality is exact for
                  abelian presentations and searched for otherwise.  Anything
                  the table cannot settle raises :class:`Uncertified`.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field

from . import _budget


class Uncertified(Exception):
    """The active strategy cannot certify an answer."""


class PresentationError(ValueError):
    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)


# -- words ------------------------------------------------------------------

def inverse_word(w: str) -> str:
    return w[::-1].swapcase()


def free_reduce(w: str) -> str:
    out = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def free_join(u: str, v: str) -> str:
    """Product of two freely reduced words (cancellation only at the seam)."""
    n = 0
    m = min(len(u), len(v))
    while n < m and u[-1 - n] == v[n].swapcase():
        n += 1
    return u[:len(u) - n] + v[n:] if n else u + v


def is_freely_reduced(w: str) -> bool:
    return all(w[i] != w[i + 1].swapcase() for i in range(len(w) - 1))


def is_cyclically_reduced(w: str) -> bool:
    return is_freely_reduced(w) and not (len(w) > 1 and w[0] == w[-1].swapcase())


def cyclic_conjugates(w: str):
    return [w[i:] + w[:i] for i in range(len(w))]


def symmetrized(relators) -> list[str]:
    """All cyclic conjugates of the relators and their inverses, deduplicated."""
    out = []
    seen = set()
    for r in relators:
        for c in cyclic_conjugates(r) + cyclic_conjugates(inverse_word(r)):
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


def _common_prefix_len(u, v):
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def small_cancellation_c16(relators) -> tuple[bool, str]:
    """Check the metric condition C'(1/6) by enumerating pieces.

    Returns ``(ok, worst)`` where ``worst`` is the longest piece relative to
    the relator it sits in (empty when there are no pieces).
    """
    rs = symmetrized(relators)
    ok = True
    worst, worst_ratio = "", 0.0
    for u, v in itertools.combinations(rs, 2):
        n = _common_prefix_len(u, v)
        if n == 0:
            continue
        for host in (u, v):
            ratio = n / len(host)
            if ratio > worst_ratio:
                worst, worst_ratio = u[:n], ratio
            if 6 * n >= len(host):
                ok = False
    return ok, worst


def shortlex_rank(generators) -> dict:
    """Letter order a < A < b < B < ... following the declared generators."""
    rank = {}
    for i, g in enumerate(generators):
        rank[g] = 2 * i
        rank[g.upper()] = 2 * i + 1
    return rank


# -- integer lattices (abelianization) --------------------------------------

def _hermite_rows(rows, n):
    """Row-style Hermite normal form of an integer matrix (list of rows)."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while rows and col < n:
        live = [r for r in rows if r[col] != 0]
        if not live:
            col += 1
            continue
        rest = [r for r in rows if r[col] == 0]
        # euclid on the column until a single nonzero entry is left
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                (nxt if r2[col] != 0 else rest).append(r2)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append((col, piv))
        rows = [r for r in rest if any(r)]
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        ci, ri = out[i]
        for j in range(i):
            cj, rj = out[j]
            q = rj[ci] // ri[ci]
            if q:
                out[j] = (cj, [a - q * b for a, b in zip(rj, ri)])
    return out


def _reduce_mod_lattice(v, hnf):
    v = list(v)
    for col, row in hnf:
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


# -- strategies ---------------------------------------------------------------

class _FreeEngine:
    exact = True

    def __init__(self, p):
        self.p = p

    def normal_form(self, w):
        return free_reduce(w)


class _TableEngine:
    """Shortlex representatives grown breadth-first, bucketed by a hash key.

    The key is the abelianization vector modulo the relator lattice, extended
    by images in a few permutation quotients found by seeded search.  Distinct
    keys certify distinct elements; equal keys are resolved by ``_equal``.
    """

    def __init__(self, p, seed=0):
        self.p = p
        self.gens = p.generators
        self.rank = shortlex_rank(self.gens)
        self.letters = sorted(self.rank, key=self.rank.get)
        n = len(self.gens)
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.hnf = _hermite_rows([self._exponents(r) for r in p.relators], n)
        self.perms = self._find_quotients(seed) if not self._abelian() else []
        self.reps = [[""]]
        self.bucket = {self._key(""): [""]}
        self.cache = {"": ""}
        self.size = 1

    # keys
    def _exponents(self, w):
        v = [0] * len(self.gens)
        for ch in w:
            if ch.islower():
                v[self.index[ch]] += 1
            else:
                v[self.index[ch.lower()]] -= 1
        return v

    def _abelian(self):
        have = set()
        for r in self.p.relators:
            if len(r) == 4 and not any(self._exponents(r)) and len({c.lower() for c in r}) == 2:
                have.add(frozenset(c.lower() for c in r))
        pairs = {frozenset(q) for q in itertools.combinations(self.gens, 2)}
        return pairs <= have

    def _find_quotients(self, seed, wanted=2, tries=4000):
        rng = random.Random(seed)
        found = []
        for deg in (5, 6, 7):
            pts = list(range(deg))
            for _ in range(tries):
                imgs = {}
                for g in self.gens:
                    perm = pts[:]
                    rng.shuffle(perm)
                    imgs[g] = tuple(perm)
                    inv = [0] * deg
                    for i, j in enumerate(perm):
                        inv[j] = i
                    imgs[g.upper()] = tuple(inv)
                if all(self._perm_image(imgs, r, deg) == tuple(pts) for r in self.p.relators):
                    gens = [imgs[g] for g in self.gens]
                    if any(_compose(x, y) != _compose(y, x) for x, y in itertools.combinations(gens, 2)):
                        found.append((deg, imgs))
                        if len(found) >= wanted:
                            return found
        return found

    @staticmethod
    def _perm_image(imgs, w, deg):
        cur = tuple(range(deg))
        for ch in w:
            cur = _compose(cur, imgs[ch])
        return cur

    def _key(self, w):
        ab = _reduce_mod_lattice(self._exponents(w), self.hnf)
        return (ab,) + tuple(self._perm_image(imgs, w, deg) for deg, imgs in self.perms)

    # equality
    def _equal(self, u, v):
        raise NotImplementedError

    def _table_limit(self, w):
        raise NotImplementedError

    def _lookup(self, w):
        for rep in self.bucket.get(self._key(w), ()):
            if self._equal(w, rep):
                return rep
        return None

    def _grow(self):
        k = len(self.reps)
        layer = []
        budget = _budget.vertex_budget()
        for u in self.reps[k - 1]:
            for s in self.letters:
                if u and u[-1] == s.swapcase():
                    continue
                w = u + s
                if self._lookup(w) is not None:
                    continue
                layer.append(w)
                self.bucket.setdefault(self._key(w), []).append(w)
                self.cache[w] = w
                self.size += 1
                if self.size > budget:
                    raise Uncertified(f"normal-form table exceeded the vertex budget ({budget})")
        self.reps.append(layer)

    def normal_form(self, w):
        w = free_reduce(w)
        hit = self.cache.get(w)
        if hit is not None:
            return hit
        limit = self._table_limit(w)
        while len(self.reps) <= limit:
            self._grow()
        rep = self._lookup(w)
        if rep is None:
            raise Uncertified(f"cannot place {w!r} within table radius {len(self.reps) - 1}")
        if len(self.cache) < 500_000:
            self.cache[w] = rep
        return rep


def _compose(x, y):
    # apply x then y (right action, matching left-to-right words)
    return tuple(y[i] for i in x)


class _DehnEngine(_TableEngine):
    exact = True

    def __init__(self, p):
        rules = {}
        for c in symmetrized(p.relators):
            n = len(c)
            for k in range(n // 2 + 1, n + 1):
                left, right = c[:k], inverse_word(c[k:])
                old = rules.get(left)
                if old is None or len(right) < len(old):
                    rules[left] = right
        self.rules = rules
        self.lengths = sorted({len(k) for k in rules}, reverse=True)
        super().__init__(p)

    def dehn_reduce(self, w):
        w = free_reduce(w)
        changed = True
        while changed:
            changed = False
            for L in self.lengths:
                for i in range(len(w) - L + 1):
                    rep = self.rules.get(w[i:i + L])
                    if rep is not None:
                        w = free_reduce(w[:i] + rep + w[i + L:])
                        changed = True
                        break
                if changed:
                    break
        return w

    def _equal(self, u, v):
        return self.dehn_reduce(u + inverse_word(v)) == ""

    def _table_limit(self, w):
        return len(self.dehn_reduce(w))


class _BallTableEngine(_TableEngine):
    def __init__(self, p):
        super().__init__(p)
        self.exact = self._abelian()
        self.radius = p.table_radius
        self._max_rel = max((len(r) for r in p.relators), default=0)

    def _equal(self, u, v):
        if self.exact:
            # key already holds the abelianization modulo relators
            return True
        return self._derive_trivial(free_reduce(u + inverse_word(v)))

    def _derive_trivial(self, w, node_budget=20_000):
        """Bounded search for a derivation of w = 1 from the relators."""
        if w == "":
            return True
        cap = len(w) + self._max_rel
        seen = {w}
        frontier = [w]
        subs = []
        for c in symmetrized(self.p.relators):
            for k in range(1, len(c) + 1):
                subs.append((c[:k], inverse_word(c[k:])))
        while frontier:
            nxt = []
            for x in frontier:
                for left, right in subs:
                    start = x.find(left)
                    while start != -1:
                        y = free_reduce(x[:start] + right + x[start + len(left):])
                        if y == "":
                            return True
                        if len(y) <= cap and y not in seen:
                            seen.add(y)
                            nxt.append(y)
                        start = x.find(left, start + 1)
                if len(seen) > node_budget:
                    raise Uncertified("derivation search budget exhausted")
            frontier = nxt
        raise Uncertified("no derivation found within the length cap")

    def _table_limit(self, w):
        return min(len(w), self.radius)

    def normal_form(self, w):
        if self.exact and not self.hnf:
            # free abelian: the shortlex-least geodesic sorts the letters
            v = self._exponents(w)
            return "".join((g if k > 0 else g.upper()) * abs(k) for g, k in zip(self.gens, v))
        return super().normal_form(w)


# -- presentations -----------------------------------------------------------

STRATEGIES = ("free", "dehn", "ball-table")


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()
    strategy: str = ""
    table_radius: int = 8
    _engine: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        rels = tuple(self.relators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)
        if not gens:
            raise PresentationError("at least one generator is required")
        for g in gens:
            if len(g) != 1 or not ("a" <= g <= "z"):
                raise PresentationError(f"generator {g!r} is not a single lowercase letter")
        if len(set(gens)) != len(gens):
            raise PresentationError("generator names must be distinct")
        alphabet = set(gens) | {g.upper() for g in gens}
        for r in rels:
            if not r or set(r) - alphabet:
                raise PresentationError(f"relator {r!r} is empty or uses undeclared letters")
            if not is_cyclically_reduced(r):
                raise PresentationError(f"relator {r!r} is not cyclically reduced")
        strategy = self.strategy or _infer_strategy(rels)
        if strategy not in STRATEGIES:
            raise PresentationError(f"unknown strategy {strategy!r}")
        if strategy == "free" and rels:
            raise PresentationError("strategy free requires an empty relator set")
        if strategy == "dehn":
            ok, piece = small_cancellation_c16(rels)
            if not ok:
                raise PresentationError(f"C'(1/6) fails: piece {piece!r} is too long")
        object.__setattr__(self, "strategy", strategy)
        engine = {"free": _FreeEngine, "dehn": _DehnEngine, "ball-table": _BallTableEngine}[strategy](self)
        object.__setattr__(self, "_engine", engine)

    @property
    def alphabet(self):
        return self.generators + tuple(g.upper() for g in self.generators)

    @property
    def identity(self):
        return ""

    @property
    def exact(self):
        return self._engine.exact

    def check_word(self, w):
        bad = set(w) - set(self.alphabet)
        if bad:
            raise PresentationError(f"word {w!r} uses undeclared letters {sorted(bad)}")
        return w

    def nf(self, w: str) -> str:
        """Normal form of a word (string in, string out)."""
        return self._engine.normal_form(w)

    def mul(self, u: str, v: str) -> str:
        return self._engine.normal_form(u + v)

    def inv(self, u: str) -> str:
        return self._engine.normal_form(inverse_word(u))

    def multiplier(self):
        """Fast product for arguments already in normal form."""
        return free_join if self.strategy == "free" else self.mul

    def element(self, w: str) -> "Element":
        return reduce(self.check_word(w), self)


def _infer_strategy(rels):
    if not rels:
        return "free"
    if small_cancellation_c16(rels)[0]:
        return "dehn"
    return "ball-table"


def presentation(generators, relators=(), strategy="") -> GroupPresentation:
    if isinstance(generators, str):
        generators = generators.split()
    if isinstance(relators, str):
        relators = relators.split()
    return GroupPresentation(tuple(generators), tuple(relators), strategy)


@dataclass(frozen=True)
class Element:
    word: str
    group: GroupPresentation = field(repr=False)

    @property
    def normal_form(self):
        return self.word

    def __str__(self):
        return self.word or "e"

    def __mul__(self, other):
        return multiply(self, other)

    def __len__(self):
        return len(self.word)


def reduce(w: str, p: GroupPresentation) -> Element:
    return Element(p.nf(w), p)


def multiply(g: Element, h: Element) -> Element:
    if g.group != h.group:
        raise ValueError("elements belong to different presentations")
    return Element(g.group.mul(g.word, h.word), g.group)


def invert(g: Element) -> Element:
    return Element(g.group.inv(g.word), g.group)


# -- subgroups ---------------------------------------------------------------

class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __bool__(self):
        return self is Tri.YES


@dataclass(frozen=True)
class SubgroupSpec:
    """Subgroup given by generator words.

    ``cyclic`` names a single word a with H = <a> (or H virtually <a> when
    the caller says so); membership is then decided by comparing with the
    normal forms of powers of a.
    """

    group: GroupPresentation = field(repr=False)
    generators: tuple = ()
    cyclic: str | None = None
    radius: int = 8

    def __post_init__(self):
        gens = tuple(self.group.nf(self.group.check_word(g)) for g in self.generators)
        if self.cyclic is not None:
            a = self.group.nf(self.group.check_word(self.cyclic))
            object.__setattr__(self, "cyclic", a)
            if not gens:
                gens = (a,)
        object.__setattr__(self, "generators", gens)

    @property
    def elements(self):
        return [Element(g, self.group) for g in self.generators]

    def contains(self, g: str) -> Tri:
        return _membership(self)(g)

    def predicate(self):
        """The membership function itself (word -> Tri), for tight loops."""
        return _membership(self)

    def power(self, k: int) -> str:
        """Normal form of a^k (cyclic mode)."""
        a = self.cyclic
        if k >= 0:
            return self.group.nf(a * k)
        return self.group.nf(inverse_word(a) * (-k))


def cyclic_subgroup(group, a, radius=8) -> SubgroupSpec:
    return SubgroupSpec(group, (a,), a, radius)


_MEMBERSHIP_CACHE: dict = {}


def _membership(H: SubgroupSpec):
    fn = _MEMBERSHIP_CACHE.get(H)
    if fn is None:
        fn = _build_membership(H)
        _MEMBERSHIP_CACHE[H] = fn
    return fn


def _build_membership(H):
    p = H.group
    if H.cyclic is not None:
        a = H.cyclic
        if a == "":
            return lambda g: Tri.YES if g == "" else Tri.NO
        if p.strategy == "free":
            # a = u c u^-1 with c cyclically reduced; <a> = {u c^k u^-1}
            u = ""
            c = a
            while len(c) > 1 and c[0] == c[-1].swapcase():
                u += c[0]
                c = c[1:-1]
            U = inverse_word(u)
            C = inverse_word(c)
            n = len(c)

            def free_member(g):
                if g == "":
                    return Tri.YES
                if not (g.startswith(u) and g.endswith(U)) or len(g) < 2 * len(u):
                    return Tri.NO
                mid = g[len(u):len(g) - len(u)]
                if len(mid) % n:
                    return Tri.NO
                k = len(mid) // n
                return Tri.YES if mid in (c * k, C * k) else Tri.NO
            return free_member
        return _power_scan_member(H)
    return _ball_member(H)


def _power_scan_member(H):
    """Decide g in <a> by listing powers of a.

    Powers are scanned until their normal forms are longer than g by a margin
    of |a| for four consecutive exponents in each direction, or until a power
    repeats (finite order).  In the groups handled by the dehn and abelian
    strategies |a^k| grows at least linearly, so this is exact there.
    """
    p = H.group
    cache = {}

    def member(g):
        if g in cache:
            return cache[g]
        ans = Tri.NO
        for sign in (1, -1):
            step = H.cyclic if sign > 0 else inverse_word(H.cyclic)
            cur, seen, streak = "", {""}, 0
            for _ in range(4 * len(g) + 64):
                if cur == g:
                    ans = Tri.YES
                    break
                try:
                    cur = p.mul(cur, step)
                except Uncertified:
                    ans = Tri.UNKNOWN
                    break
                if cur in seen:
                    break
                seen.add(cur)
                streak = streak + 1 if len(cur) > len(g) + len(H.cyclic) else 0
                if streak >= 4:
                    break
            if ans is not Tri.NO:
                break
        cache[g] = ans
        return ans
    return member


def _ball_member(H):
    p = H.group
    gens = set(H.generators) | {p.inv(h) for h in H.generators}
    seen = {""}
    frontier = [""]
    closed = False
    for _ in range(H.radius):
        nxt = []
        for x in frontier:
            for s in gens:
                y = p.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            closed = True
            break
        frontier = nxt
    frozen = frozenset(seen)

    def member(g):
        if g in frozen:
            return Tri.YES
        return Tri.NO if closed else Tri.UNKNOWN
    return member


def in_subgroup(g, H: SubgroupSpec) -> Tri:
    word = g.word if isinstance(g, Element) else g
    return H.contains(word)


# -- products ----------------------------------------------------------------

@dataclass(frozen=True)
class ProductGroup:
    """Direct product; elements are tuples of factor normal forms."""

    factors: tuple

    @property
    def identity(self):
        return tuple("" for _ in self.factors)

    def nf(self, g):
        return tuple(p.nf(w) for (p, _), w in zip(self.factors, g))

    def mul(self, g, h):
        return tuple(p.mul(x, y) for (p, _), x, y in zip(self.factors, g, h))

    def inv(self, g):
        return tuple(p.inv(x) for (p, _), x in zip(self.factors, g))

    def in_h(self, g) -> Tri:
        verdicts = [H.contains(x) for (_, H), x in zip(self.factors, g)]
        if all(v is Tri.YES for v in verdicts):
            return Tri.YES
        if any(v is Tri.NO for v in verdicts):
            return Tri.NO
        return Tri.UNKNOWN


# -- file format -------------------------------------------------------------

@dataclass
class GroupData:
    presentation: GroupPresentation
    subgroup: SubgroupSpec | None = None
    peripherals: list = field(default_factory=list)


def load_group(text: str) -> GroupData:
    gens = None
    rels: list = []
    strategy = ""
    table_radius = 8
    sub_line = per_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PresentationError(f"expected 'key: value', got {line!r}", lineno)
        key, _, value = line.partition(":")
        key = key.strip().lower()
        value = value.strip()
        if key == "generators":
            gens = value.split()
        elif key == "relators":
            rels = [] if value in ("", "(none)") else value.split()
        elif key == "subgroup h":
            sub_line = (value, lineno)
        elif key == "peripheral":
            per_line = (value, lineno)
        elif key == "strategy":
            strategy = value
        elif key == "table radius":
            try:
                table_radius = int(value)
            except ValueError:
                raise PresentationError(f"table radius must be an integer, got {value!r}", lineno)
        else:
            raise PresentationError(f"unknown key {key!r}", lineno)
    if gens is None:
        raise PresentationError("missing 'generators:' line")
    try:
        p = GroupPresentation(tuple(gens), tuple(rels), strategy, table_radius)
    except PresentationError as exc:
        raise PresentationError(str(exc), lineno=None) from None
    data = GroupData(p)
    try:
        if sub_line:
            value, lineno = sub_line
            words = value.split()
            if words and words[0] == "cyclic":
                if len(words) != 2:
                    raise PresentationError("'cyclic' takes exactly one word", lineno)
                data.subgroup = cyclic_subgroup(p, words[1])
            else:
                data.subgroup = SubgroupSpec(p, tuple(words))
        if per_line:
            value, lineno = per_line
            for chunk in value.split("|"):
                words = chunk.split()
                if not words:
                    raise PresentationError("empty peripheral family", lineno)
                if len(words) == 1:
                    data.peripherals.append(cyclic_subgroup(p, words[0]))
                else:
                    data.peripherals.append(SubgroupSpec(p, tuple(words)))
    except PresentationError:
        raise
    except Exception as exc:  # undeclared letters in subgroup words and the like
        raise PresentationError(str(exc)) from None
    return data


def parse_presentation(text: str) -> GroupPresentation:
    return load_group(text).presentation


def format_group(p: GroupPresentation, subgroup=None, peripherals=()) -> str:
    lines = ["generators: " + " ".join(p.generators)]
    lines.append("relators: " + (" ".join(p.relators) if p.relators else "(none)"))
    if p.strategy != _infer_strategy(p.relators):
        lines.append("strategy: " + p.strategy)
    if p.table_radius != 8:
        lines.append(f"table radius: {p.table_radius}")
    if subgroup is not None:
        if subgroup.cyclic is not None:
            lines.append("subgroup H: cyclic " + subgroup.cyclic)
        else:
            lines.append("subgroup H: " + " ".join(subgroup.generators))
    if peripherals:
        lines.append("peripheral: " + " | ".join(" ".join(h.generators) for h in peripherals))
    return "\n".join(lines) + "\n"


def format_presentation(p: GroupPresentation) -> str:
    return format_group(p)
