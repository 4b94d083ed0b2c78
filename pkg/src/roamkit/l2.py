"""Finitely supported elements of the group algebra, viewed inside l2(G).

Coefficients are exact rationals.  The projections P_S keep the coefficients
on a set S; the conditional expectation onto LH is P_H at this level.  The
checks below evaluate, for one explicit element at a time, the identities and
inequalities that the ergodic arguments are assembled from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import _budget
from .presentation import Tri


def _word_key(w):
    return "|".join(w) if isinstance(w, tuple) else w


def _parse_word(s, group):
    if hasattr(group, "factors"):
        return tuple(s.split("|"))
    return s


@dataclass(frozen=True)
class AlgebraElement:
    """x = sum of x(g) u_g.  ``group`` needs nf, mul, inv and identity."""

    group: object = field(repr=False)
    coeffs: dict = field(default_factory=dict)
    undecided: frozenset = frozenset()

    def __post_init__(self):
        clean = {}
        for g, c in self.coeffs.items():
            c = Fraction(c)
            if c:
                g = self.group.nf(g)
                clean[g] = clean.get(g, 0) + c
        object.__setattr__(self, "coeffs", {g: c for g, c in clean.items() if c})

    @classmethod
    def unit(cls, group, g) -> "AlgebraElement":
        return cls(group, {g: 1})

    @classmethod
    def zero(cls, group) -> "AlgebraElement":
        return cls(group, {})

    @property
    def support(self):
        return frozenset(self.coeffs)

    def __getitem__(self, g):
        return self.coeffs.get(self.group.nf(g), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scalar_mul(-1, other))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return scalar_mul(other, self)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def to_list(self):
        """(word, numerator, denominator) triples sorted by word."""
        return sorted([_word_key(g), c.numerator, c.denominator] for g, c in self.coeffs.items())

    @classmethod
    def from_list(cls, group, rows):
        return cls(group, {_parse_word(w, group): Fraction(n, d) for w, n, d in rows})


def _check_same(x, y):
    if x.group is not y.group and x.group != y.group:
        raise ValueError("elements live in different groups")


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _check_same(x, y)
    out = dict(x.coeffs)
    for g, c in y.coeffs.items():
        out[g] = out.get(g, 0) + c
    return AlgebraElement(x.group, out)


def scalar_mul(c, x: AlgebraElement) -> AlgebraElement:
    c = Fraction(c)
    return AlgebraElement(x.group, {g: c * v for g, v in x.coeffs.items()})


def convolve(x: AlgebraElement, y: AlgebraElement, budget: int | None = None) -> AlgebraElement:
    """(xy)(g) = sum over h of x(h) y(h^-1 g)."""
    _check_same(x, y)
    budget = budget or _budget.vertex_budget()
    if len(x.coeffs) * len(y.coeffs) > budget:
        raise _budget.BudgetExceeded("convolution exceeds the support budget")
    mul = x.group.mul
    out = {}
    for g, a in x.coeffs.items():
        for h, b in y.coeffs.items():
            k = mul(g, h)
            out[k] = out.get(k, 0) + a * b
    return AlgebraElement(x.group, out)


def adjoint(x: AlgebraElement) -> AlgebraElement:
    inv = x.group.inv
    return AlgebraElement(x.group, {inv(g): c for g, c in x.coeffs.items()})


def norm2(x: AlgebraElement) -> Fraction:
    """Squared l2 norm."""
    return sum((c * c for c in x.coeffs.values()), Fraction(0))


def inner(x: AlgebraElement, y: AlgebraElement) -> Fraction:
    _check_same(x, y)
    small, big = (x, y) if len(x.coeffs) <= len(y.coeffs) else (y, x)
    return sum((c * big.coeffs.get(g, 0) for g, c in small.coeffs.items()), Fraction(0))


def trace(x: AlgebraElement) -> Fraction:
    return x.coeffs.get(x.group.identity, Fraction(0))


def l1_norm(x: AlgebraElement) -> Fraction:
    """Upper bound for the operator norm."""
    return sum((abs(c) for c in x.coeffs.values()), Fraction(0))


def exact_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def translate(x: AlgebraElement, s, t) -> AlgebraElement:
    """u_s x u_t."""
    mul = x.group.mul
    return AlgebraElement(x.group, {mul(mul(s, g), t): c for g, c in x.coeffs.items()})


# -- support predicates -------------------------------------------------------------

class SupportPredicate:
    """A decidable subset of G; calling it returns a Tri."""

    def __init__(self, fn, name: str, group=None):
        self._fn = fn
        self.name = name
        self.group = group

    def __call__(self, g) -> Tri:
        return self._fn(g)

    def __repr__(self):
        return f"SupportPredicate({self.name})"

    @classmethod
    def explicit(cls, group, elements, name="S"):
        s = frozenset(group.nf(g) for g in elements)
        return cls(lambda g: Tri.YES if g in s else Tri.NO, name, group)

    @classmethod
    def subgroup(cls, H, name="H"):
        return cls(H.predicate(), name, H.group)

    @classmethod
    def roaming(cls, ball, F, name="F"):
        from .roaming import compile_roaming
        pred = compile_roaming(ball, F)
        exact = ball.metric.exact

        def fn(g):
            if not exact and g not in ball.element_set:
                return Tri.UNKNOWN
            try:
                return Tri.YES if pred(g) else Tri.NO
            except ValueError:
                return Tri.UNKNOWN
        return cls(fn, name, ball.group)

    def complement(self):
        neg = {Tri.YES: Tri.NO, Tri.NO: Tri.YES, Tri.UNKNOWN: Tri.UNKNOWN}
        return SupportPredicate(lambda g: neg[self(g)], f"({self.name})^c", self.group)

    def translate(self, s, t):
        """The set s S t."""
        p = self.group
        si, ti = p.inv(s), p.inv(t)
        return SupportPredicate(lambda g: self(p.mul(p.mul(si, g), ti)),
                                f"{s or 'e'}.{self.name}.{t or 'e'}", p)

    def conj(self, h):
        """h^-1 S h."""
        p = self.group
        return self.translate(p.inv(h), h)

    def __and__(self, other):
        def fn(g):
            a, b = self(g), other(g)
            if a is Tri.NO or b is Tri.NO:
                return Tri.NO
            return Tri.YES if a is Tri.YES and b is Tri.YES else Tri.UNKNOWN
        return SupportPredicate(fn, f"({self.name} & {other.name})", self.group)

    def __or__(self, other):
        def fn(g):
            a, b = self(g), other(g)
            if a is Tri.YES or b is Tri.YES:
                return Tri.YES
            return Tri.NO if a is Tri.NO and b is Tri.NO else Tri.UNKNOWN
        return SupportPredicate(fn, f"({self.name} | {other.name})", self.group)


EMPTY = SupportPredicate(lambda g: Tri.NO, "empty")


def project_support(x: AlgebraElement, P: SupportPredicate) -> AlgebraElement:
    """P_S x; elements with undecided membership are dropped and recorded."""
    keep, unknown = {}, set()
    for g, c in x.coeffs.items():
        v = P(g)
        if v is Tri.YES:
            keep[g] = c
        elif v is Tri.UNKNOWN:
            unknown.add(g)
    return AlgebraElement(x.group, keep, frozenset(unknown))


def cond_expect_H(x: AlgebraElement, H) -> AlgebraElement:
    return project_support(x, SupportPredicate.subgroup(H))


# -- identity checks ----------------------------------------------------------------

@dataclass
class IdentityCheck:
    ok: bool
    lhs: Fraction
    rhs: Fraction


def conj_project_identity_check(x: AlgebraElement, h, F: SupportPredicate) -> IdentityCheck:
    """||P_F(u_h x u_h^-1)||^2 against ||P_{h^-1 F h}(x)||^2."""
    p = x.group
    lhs = norm2(project_support(translate(x, h, p.inv(h)), F))
    rhs = norm2(project_support(x, F.conj(h)))
    return IdentityCheck(lhs == rhs, lhs, rhs)


@dataclass
class ParsevalResult:
    ok: bool
    total: Fraction
    parts: list
    slack: Fraction
    equality: bool
    covered: bool


def parseval_check(x: AlgebraElement, F: SupportPredicate, h_list) -> ParsevalResult:
    """||x||^2 >= sum_k ||P_{h_k^-1 F h_k}(x)||^2, with the disjointness of the
    conjugates verified on the support of x first."""
    conjs = [F.conj(h) for h in h_list]
    covered = True
    for g in x.coeffs:
        hits = [P(g) for P in conjs]
        if Tri.UNKNOWN in hits:
            raise ValueError(f"membership of {g!r} in a conjugate of F is undecided")
        n = sum(1 for v in hits if v is Tri.YES)
        if n > 1:
            raise ValueError(f"conjugates of F meet at {g!r}: the sequence is not disjoining on the support")
        covered = covered and n == 1
    parts = [norm2(project_support(x, P)) for P in conjs]
    total = norm2(x)
    slack = total - sum(parts, Fraction(0))
    return ParsevalResult(slack >= 0, total, parts, slack, slack == 0, covered)


@dataclass
class MixingResult:
    values: list          # ||E_LH(u_s u_{h_n} u_t)||_2, exact
    ns: list
    vanish_from: int | None


def mixing_decay(group, s, t, H, n_range, h_of_n=None) -> MixingResult:
    """||E_LH(u_s u_{h_n} u_t)||_2 for n in n_range, h_n = a^n by default."""
    s, t = group.nf(s), group.nf(t)
    if H.contains(s) is Tri.YES or H.contains(t) is Tri.YES:
        raise ValueError("s and t must lie outside H")
    if h_of_n is None:
        h_of_n = H.power
    ns = list(n_range)
    vals = []
    for n in ns:
        x = translate(AlgebraElement.unit(group, h_of_n(n)), s, t)
        vals.append(exact_sqrt(norm2(cond_expect_H(x, H))))
    vanish = None
    for i in range(len(vals) - 1, -1, -1):
        if vals[i] != 0:
            break
        vanish = ns[i]
    return MixingResult(vals, ns, vanish)


@dataclass
class AopTerm:
    total: Fraction
    parts: dict             # ("F"|"R", "F"|"R") -> inner product
    identity_ok: bool
    rr_zero: bool | None    # None when no vanishing is asserted


def aop_probe(group, s, t, x_seq, y_seq, F: SupportPredicate, H, strong: bool) -> list:
    """<u_s x_n u_t, y_n> split along G minus H = F + R with R = (F u H)^c.

    Every x_n, y_n must live off H.  The four parts must add up to the total
    exactly; under the strong condition the R-to-R part must vanish.
    """
    inH = SupportPredicate.subgroup(H)
    R = (F | inH).complement()
    out = []
    for x, y in zip(x_seq, y_seq):
        for z in (x, y):
            if any(inH(g) is not Tri.NO for g in z.coeffs):
                raise ValueError("the probe elements must be supported off H")
        total = inner(translate(x, s, t), y)
        pieces = {"F": F, "R": R}
        px = {k: project_support(x, P) for k, P in pieces.items()}
        py = {k: project_support(y, P) for k, P in pieces.items()}
        parts = {(i, j): inner(translate(px[i], s, t), py[j]) for i in pieces for j in pieces}
        ok = sum(parts.values(), Fraction(0)) == total
        rr = (parts[("R", "R")] == 0) if strong else None
        out.append(AopTerm(total, parts, ok, rr))
    return out
