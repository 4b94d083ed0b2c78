"""H-roaming sets, disjoining sequences and the conjugation conditions.

A roaming set is kept symbolic: F = V^c minus H, where V is a finite union of
neighbourhoods M(x, A).  A spec may carry a conjugator h, in which case it
describes h F h^-1 (g lies there iff h^-1 g h lies in F).  All sweeps run over
the group elements of a ball; the neighbourhood predicates are exact metric
computations, so conjugates may leave the ball without harm.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .graph import BallGraph, Cone, is_cone, rebuild, vertex_name
from .presentation import (ProductGroup, SubgroupSpec, Tri, cyclic_subgroup, in_subgroup,
                           inverse_word)
from .topology import (CertifiedBool, NeighborhoodSpec, Ray, compile_neighborhood,
                       compute_v_set, in_neighborhood, shrink_neighborhood)


# -- roaming set specs ----------------------------------------------------------

@dataclass(frozen=True)
class RoamingSetSpec:
    neighborhoods: tuple
    subgroup: SubgroupSpec
    conjugator: str = ""

    def __post_init__(self):
        object.__setattr__(self, "neighborhoods", tuple(self.neighborhoods))

    def transported(self, h: str) -> "RoamingSetSpec":
        """Spec of h F h^-1."""
        p = self.subgroup.group
        return replace(self, conjugator=p.mul(h, self.conjugator))

    def to_dict(self):
        p = self.subgroup.group
        return {
            "neighborhoods": [n.to_dict(p) for n in self.neighborhoods],
            "subgroup": list(self.subgroup.generators),
            "cyclic": self.subgroup.cyclic,
            "conjugator": self.conjugator,
        }

    @classmethod
    def from_dict(cls, group, d):
        H = SubgroupSpec(group, tuple(d["subgroup"]), d.get("cyclic"))
        ns = tuple(NeighborhoodSpec.from_dict(group, n) for n in d["neighborhoods"])
        return cls(ns, H, d.get("conjugator", ""))


def _in_h(H):
    """Membership in H as a plain predicate; unknown counts as a failure."""
    member = H.predicate()
    YES, UNKNOWN = Tri.YES, Tri.UNKNOWN

    def f(g):
        v = member(g)
        if v is YES:
            return True
        if v is UNKNOWN:
            raise ValueError(f"membership of {g!r} in H is undecided")
        return False
    return f


def compile_roaming(ball: BallGraph, F: RoamingSetSpec):
    """Fast g -> bool predicate for g in F."""
    preds = [compile_neighborhood(ball, n) for n in F.neighborhoods]
    inH = _in_h(F.subgroup)

    def in_f(g):
        if inH(g):
            return False
        for pr in preds:
            if pr(g):
                return False
        return True

    if not F.conjugator:
        return in_f
    mul = ball.group.multiplier()
    h = F.conjugator
    hi = ball.group.inv(h)
    return lambda g: in_f(mul(mul(hi, g), h))


def membership(ball: BallGraph, g, F: RoamingSetSpec) -> CertifiedBool:
    if g not in ball.element_set:
        raise ValueError(f"{g!r} is not an element of the ball")
    p = ball.group
    x = g
    if F.conjugator:
        x = p.mul(p.mul(p.inv(F.conjugator), g), F.conjugator)
    h = in_subgroup(x, F.subgroup)
    if h is Tri.YES:
        return CertifiedBool(False, True, ball.radius, None, "element of H")
    certified = h is Tri.NO
    notes = [] if certified else ["heuristic: subgroup membership undecided"]
    for n in F.neighborhoods:
        v = in_neighborhood(ball, x, n)
        certified = certified and v.certified
        if v.note and not v.certified:
            notes.append(v.note)
        if v.value:
            return CertifiedBool(False, certified, ball.radius, None, "; ".join(notes))
    return CertifiedBool(True, certified, ball.radius, None, "; ".join(notes))


# -- disjoining sequences -------------------------------------------------------

@dataclass
class DisjoiningCertificate:
    h_sequence: list
    verified_radius: int
    pairwise_table: dict
    construction_log: list = field(default_factory=list)
    ok: bool = True
    witness: tuple | None = None
    F: RoamingSetSpec | None = None
    note: str = ""

    def to_dict(self):
        return {
            "h_sequence": list(self.h_sequence),
            "verified_radius": self.verified_radius,
            "pairwise_table": [[i, j, v] for (i, j), v in sorted(self.pairwise_table.items())],
            "construction_log": self.construction_log,
            "ok": self.ok,
            "witness": None if self.witness is None else list(self.witness),
            "F": None if self.F is None else self.F.to_dict(),
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, group, d):
        F = None if d.get("F") is None else RoamingSetSpec.from_dict(group, d["F"])
        return cls(list(d["h_sequence"]), d["verified_radius"],
                   {(i, j): v for i, j, v in d["pairwise_table"]},
                   d.get("construction_log", []), d["ok"],
                   None if d.get("witness") is None else tuple(d["witness"]), F, d.get("note", ""))


def verify_disjoining(ball: BallGraph, F: RoamingSetSpec, h_list) -> DisjoiningCertificate:
    """Check h_k F h_k^-1 pairwise disjoint on the ball's group elements.

    g lies in h F h^-1 iff h^-1 g h lies in F; each g is tested against every
    conjugate and the scan stops at the first g lying in two of them.
    """
    p = ball.group
    hs = [p.nf(h) for h in h_list]
    inH = _in_h(F.subgroup)
    for h in hs:
        if not inH(h):
            raise ValueError(f"{h!r} is not in H")
    in_f = compile_roaming(ball, F)
    mul = p.multiplier()
    pairs = [(i, j) for i in range(len(hs)) for j in range(i + 1, len(hs))]
    conj = [(p.inv(h), h) for h in hs]
    for g in ball.elements:
        first = None
        for k, (hi, h) in enumerate(conj):
            if in_f(mul(mul(hi, g), h)):
                if first is not None:
                    table = {(first, k): f"witness {vertex_name(p, g)}"}
                    return DisjoiningCertificate(hs, ball.radius, table, [], False,
                                                 (g, first, k), F)
                first = k
    return DisjoiningCertificate(hs, ball.radius, {pr: "empty on ball" for pr in pairs}, [], True,
                                 None, F)


# -- dynamics lemmas --------------------------------------------------------------

@dataclass
class ShiftResult:
    n: int | None
    ok: bool
    violating: tuple | None = None
    recipe_n: int | None = None
    tried: list = field(default_factory=list)


def _power(p, a, k):
    return p.nf(a * k) if k >= 0 else p.nf(inverse_word(a) * (-k))


def _signed_range(bound):
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def north_south_shift(ball: BallGraph, a: str, A, B, bound: int | None = None,
                      recipe: bool = False, delta=0) -> ShiftResult:
    """Smallest |n| (n = 0, 1, -1, 2, ...) with a^n M(a-, B)^c inside M(a+, A) on the ball."""
    if ball.kind != "plain":
        raise ValueError("north_south_shift works in the plain Cayley graph")
    p = ball.group
    H = cyclic_subgroup(p, a)
    if all(H.contains(g) is Tri.YES for g in p.generators):
        raise ValueError("<a> is the whole group, so no element lies outside H")
    plus, minus = Ray(a, 1), Ray(a, -1)
    in_plus = compile_neighborhood(ball, NeighborhoodSpec(plus, A))
    in_minus = compile_neighborhood(ball, NeighborhoodSpec(minus, B))
    ys = [y for y in ball.elements if not in_minus(y)]
    mul = p.multiplier()
    bound = 3 * ball.radius if bound is None else bound
    rn = _shift_recipe(ball, a, A, B, delta) if recipe else None
    tried = []
    last = None
    for n in _signed_range(bound):
        an = _power(p, a, n)
        bad = next((y for y in ys if not in_plus(mul(an, y))), None)
        tried.append(n)
        if bad is None:
            return ShiftResult(n, True, None, rn, tried)
        last = n
    worst = max((y for y in ys if not in_plus(mul(_power(p, a, last), y))), key=ball.key)
    return ShiftResult(None, False, (last, worst), rn, tried)


def _shift_recipe(ball, a, A, B, delta):
    """The proof's starting guess: C from the uniform-basis lemma, then the
    least n >= 0 with a^n B inside M(a+, C) and d(C, a^n B) > diam V_0(C)."""
    if not A or not B:
        return 0
    p = ball.group
    dist = ball.metric.dist
    C = shrink_neighborhood(ball, Ray(a, 1), A, delta).C
    V0 = compute_v_set(ball, 0, Ray(a, -1), C).vertices
    D = max((dist(u, v) for u in V0 for v in V0), default=0)
    in_c = compile_neighborhood(ball, NeighborhoodSpec(Ray(a, 1), C))
    for n in range(0, 4 * ball.radius):
        an = _power(p, a, n)
        moved = [p.mul(an, b) for b in B]
        if all(in_c(x) for x in moved) and min(dist(c, x) for c in C for x in moved) > D:
            return n
    return None


@dataclass
class StableResult:
    B: frozenset
    ok: bool
    counterexample: tuple | None = None
    method: str = ""
    checked: int = 0


def _h_in_ball(ball, H):
    inH = _in_h(H)
    return [h for h in ball.elements if inH(h)]


_V_CACHE: dict = {}


def _translated_v(ball, vball, c, A, r):
    """V_r(c, A) for A inside the coset of the cone c, as a union of
    translates of V_r(c, {c.rep}).  Left multiplication by x rep^-1 fixes c,
    so it carries V_r({rep}) onto V_r({x}), and a union of V-sets of the
    points of A satisfies both defining clauses for A."""
    p = ball.group
    key = (id(vball), r, c)
    hit = _V_CACHE.get(key)
    if hit is None or hit[0] is not vball:
        hit = (vball, compute_v_set(vball, r, c, {c.rep}).vertices)
        _V_CACHE[key] = hit
    base = hit[1]
    rinv = p.inv(c.rep)
    out = set()
    for x in A:
        t = p.mul(x, rinv)
        out.update(p.mul(t, v) for v in base)
    return frozenset(out)


def right_stable_neighborhood(ball: BallGraph, base, A, H: SubgroupSpec,
                              vset_ball: BallGraph | None = None, max_grow: int = 3,
                              elements=None) -> StableResult:
    """B with (M(base, B) minus H) h inside M(base, A) for every h in H on the ball.

    At a cone B := V_2(A) (built from translates, see ``_translated_v``).  At a
    ray the sweep starts from B = A and widens B by ball neighbourhoods of A.
    ``elements`` replaces the ball's elements as the set of swept y.
    """
    A = frozenset(A)
    if not A:
        return StableResult(frozenset(), True, None, "empty")
    p = ball.group
    hs = _h_in_ball(ball, H)
    ys = ball.elements if elements is None else elements
    in_a = compile_neighborhood(ball, NeighborhoodSpec(base, A))
    inH = _in_h(H)
    mul = p.multiplier()

    def sweep(B):
        in_b = compile_neighborhood(ball, NeighborhoodSpec(base, B))
        n = 0
        for y in ys:
            if inH(y) or not in_b(y):
                continue
            for h in hs:
                n += 1
                if not in_a(mul(y, h)):
                    return (y, h), n
        return None, n

    if is_cone(base):
        B = _translated_v(ball, vset_ball or ball, base, A, 2)
        bad, n = sweep(B)
        return StableResult(B, bad is None, bad, "V2 translates", n)
    B = A
    total = 0
    for step in range(max_grow + 1):
        bad, n = sweep(B)
        total += n
        if bad is None:
            return StableResult(B, True, None, f"grown {step}", total)
        grown = set(B)
        for v in B:
            if not is_cone(v):
                grown.update(ball.group_neighbors(v))
        B = frozenset(grown)
    return StableResult(B, False, bad, f"grown {max_grow}", total)


@dataclass
class CoverResult:
    h: str | None
    ok: bool
    counterexample: tuple | None = None
    recipe_h: str | None = None
    checked: int = 0


def _h_order(p, H, bound):
    a = H.cyclic
    if a is None:
        raise ValueError("the search over H needs a cyclic subgroup")
    for k in _signed_range(bound):
        yield _power(p, a, k)


def left_shift_cover(ball: BallGraph, c, A, B, H: SubgroupSpec, h: str | None = None,
                     bound: int | None = None, vset_ball: BallGraph | None = None,
                     elements=None) -> CoverResult:
    """h in H with h M(c, A)^c inside M(c, B), checked on the ball's elements.

    The recipe picks the first h (e, a, a^-1, a^2, ...) with h V_0(A) missing
    B; if its sweep fails the search continues along the same order.
    """
    if ball.kind != "coned" or not is_cone(c):
        raise ValueError("left_shift_cover needs a cone base in a coned-off ball")
    p = ball.group
    inH = _in_h(H)
    A, B = frozenset(A), frozenset(B)
    for x in A | B:
        if is_cone(x) or not inH(p.mul(p.inv(c.rep), x)):
            raise ValueError(f"{x!r} is not in the coset of the cone")
    if not B:
        return CoverResult("", True, None, "", 0)
    mul = p.multiplier()
    out_a = compile_neighborhood(ball, NeighborhoodSpec(c, A))
    in_b = compile_neighborhood(ball, NeighborhoodSpec(c, B))
    xs = [x for x in (ball.elements if elements is None else elements) if not out_a(x)]
    V0 = _translated_v(ball, vset_ball or ball, c, A, 0) if A else frozenset()
    bound = 4 * ball.radius if bound is None else bound

    def sweep(h):
        for i, x in enumerate(xs):
            if not in_b(mul(h, x)):
                return x, i + 1
        return None, len(xs)

    if h is not None:
        h = p.nf(h)
        bad, n = sweep(h)
        return CoverResult(h, bad is None, None if bad is None else (h, bad), None, n)
    recipe = None
    first_bad = None
    checked = 0
    for cand in _h_order(p, H, bound):
        if any(p.mul(cand, v) in B for v in V0):
            continue
        if recipe is None:
            recipe = cand
        bad, n = sweep(cand)
        checked += n
        if bad is None:
            return CoverResult(cand, True, first_bad, recipe, checked)
        first_bad = first_bad or (cand, bad)
    return CoverResult(None, False, first_bad, recipe, checked)


@dataclass
class ContinuityReport:
    rows: list
    ok: bool
    convergent: bool
    note: str = ""


def right_continuity_probe(ball: BallGraph, c, g: str, seq, family=None) -> ContinuityReport:
    """For each A of the test family, the index after which x_n g stays in M(c, A)."""
    if ball.kind != "coned" or not is_cone(c):
        raise ValueError("right_continuity_probe needs a cone base in a coned-off ball")
    p = ball.group
    seq = [p.nf(x) for x in seq]
    for x in seq:
        if x not in ball.element_set:
            raise ValueError(f"{x!r} is not in the ball")
    if family is None:
        H = ball.peripherals[c.family]
        family = [frozenset(p.mul(c.rep, _power(p, H.cyclic, k)) for k in range(-m, m + 1))
                  for m in range(4)]
    mul = p.multiplier()
    rows = []
    ok = convergent = True
    for A in family:
        A = frozenset(A)
        pred = compile_neighborhood(ball, NeighborhoodSpec(c, A))
        tail_in = _tail(pred, seq)
        tail = _tail(pred, [mul(x, g) for x in seq])
        if tail_in is None:
            convergent = False
        if tail is None:
            ok = False
        rows.append({"A": sorted(vertex_name(p, a) for a in A), "tail": tail, "seq_tail": tail_in})
    note = ""
    if not convergent:
        note = "non-convergent input: the sequence does not settle into every M(c, A)"
    elif not ok:
        note = "radius insufficient: no tail found within the sampled sequence"
    return ContinuityReport(rows, ok and convergent, convergent, note)


def _tail(pred, xs):
    last_bad = -1
    for i, x in enumerate(xs):
        if not pred(x):
            last_bad = i
    if last_bad == len(xs) - 1:
        return None
    return last_bad + 1


# -- the combinatorial condition --------------------------------------------------

@dataclass
class ConditionReport:
    s: str
    t: str
    F: RoamingSetSpec
    radius: int
    intersection: list
    strong_form: bool
    checked: int = 0

    def to_dict(self):
        p = self.F.subgroup.group
        return {
            "s": self.s, "t": self.t, "radius": self.radius,
            "F": self.F.to_dict(),
            "intersection": [vertex_name(p, g) for g in self.intersection],
            "strong_form": self.strong_form,
            "checked": self.checked,
        }


def condition_scan(ball: BallGraph, F: RoamingSetSpec, s: str, t: str, limit: int = 1000) -> ConditionReport:
    """List s F^c t  intersected with F^c on the ball: the x with x and s^-1 x t^-1 both off F."""
    p = ball.group
    s, t = p.nf(s), p.nf(t)
    si, ti = p.inv(s), p.inv(t)
    in_f = compile_roaming(ball, F)
    inH = _in_h(F.subgroup)
    mul = p.multiplier()
    hits = []
    strong = True
    for x in ball.elements:
        if in_f(x) or in_f(mul(mul(si, x), ti)):
            continue
        strong = strong and inH(x)
        if len(hits) < limit:
            hits.append(x)
    return ConditionReport(s, t, F, ball.radius, hits, strong, len(ball.elements))


def _candidate_v(ball, mode, H, m):
    p = ball.group
    a = H.cyclic
    if mode == "hyperbolic":
        return (NeighborhoodSpec(Ray(a, 1), {_power(p, a, m)}),
                NeighborhoodSpec(Ray(a, -1), {_power(p, a, -m)}))
    return (NeighborhoodSpec(Cone("", 0), {_power(p, a, k) for k in range(-m, m + 1)}),)


def _v_predicate(ball, V):
    preds = [compile_neighborhood(ball, n) for n in V]
    return lambda g: any(pr(g) for pr in preds)


def build_roaming_pair(ball: BallGraph, s: str, t: str, mode: str, H: SubgroupSpec,
                       K: int = 4, search_radius: int = 8, vset_radius: int = 6,
                       max_m: int = 40):
    """Construct F = V^c minus H and a disjoining sequence inside <a>.

    ``ball`` is the verification ball.  V is shrunk (m = 1, 2, ...) until V and
    sVt, and V and sV, are disjoint on the search ball.  Step n then picks an
    M-set inside V_n (the intersection of the h_i V h_i^-1), a right-stable B
    inside it, and a left shift a^k carrying F into M(base, B).
    """
    if mode not in ("hyperbolic", "coned"):
        raise ValueError("mode is 'hyperbolic' or 'coned'")
    if H.cyclic is None:
        raise ValueError("the construction needs H = <a>")
    p = ball.group
    s, t = p.nf(s), p.nf(t)
    inH = _in_h(H)
    if inH(s) or inH(t):
        raise ValueError("s and t must lie outside H")
    if (mode == "coned") != (ball.kind == "coned"):
        raise ValueError(f"mode {mode!r} does not match a {ball.kind} ball")
    a = H.cyclic
    search = ball if ball.radius <= search_radius else rebuild(ball, search_radius)
    vball = rebuild(ball, min(vset_radius, ball.radius)) if mode == "coned" else None
    mul = p.multiplier()
    si, ti = p.inv(s), p.inv(t)
    log = []

    # V disjoint from sV and sVt
    V = None
    for m in range(1, max_m + 1):
        cand = _candidate_v(search, mode, H, m)
        in_v = _v_predicate(search, cand)
        if not any(in_v(x) and (in_v(mul(si, x)) or in_v(mul(mul(si, x), ti)))
                   for x in search.elements):
            V = cand
            log.append({"step": 0, "m": m, "V": [n.to_dict(p) for n in V]})
            break
    if V is None:
        F = RoamingSetSpec(_candidate_v(search, mode, H, max_m), H)
        cert = DisjoiningCertificate([""], ball.radius, {}, log, False, None, F,
                                     "radius insufficient: V and sVt meet on the search ball")
        return F, cert, condition_scan(ball, F, s, t)
    F = RoamingSetSpec(V, H)
    in_v = _v_predicate(search, V)
    hs = [""]
    note = ""
    for n in range(1, K):
        step = _inductive_step(search, vball, mode, H, V, hs, in_v, mul, max_m)
        log.append(step)
        if step.get("k") is None:
            note = f"radius insufficient at step {n}: {step.get('failure')}"
            break
        hs.append(_power(p, a, step["k"]))
    cert = verify_disjoining(ball, F, hs)
    cert.construction_log = log
    cert.note = note if note else cert.note
    if note:
        cert.ok = False
    return F, cert, condition_scan(ball, F, s, t)


def _inductive_step(search, vball, mode, H, V, hs, in_v, mul, max_m):
    p = search.group
    a = H.cyclic
    conj = [(p.inv(h), h) for h in hs]
    inH = _in_h(H)

    def in_vn(y):
        return all(in_v(mul(mul(hi, y), h)) for hi, h in conj)

    # the search ball plus its conjugates by the h_i, so that the far pieces
    # of the complement of V_n are seen
    probe = list(search.elements)
    seen = set(probe)
    for hi, h in conj[1:]:
        for x in search.elements:
            y = mul(mul(h, x), hi)
            if y not in seen:
                seen.add(y)
                probe.append(y)

    step = {"step": len(hs)}
    # an M-set inside V_n (checked off H: only (V' minus H) a^k matters)
    An = None
    for m in range(1, max_m + 1):
        cand = _candidate_v(search, mode, H, m)[0]
        base, An_c = cand.base, cand.avoid
        pred = compile_neighborhood(search, cand)
        if all(in_vn(y) for y in probe if not inH(y) and pred(y)):
            An = An_c
            break
    if An is None:
        step["failure"] = "no M-set inside V_n"
        return step
    step["A_n"] = sorted(vertex_name(p, x) for x in An)
    st = right_stable_neighborhood(search, base, An, H, vset_ball=vball, elements=probe)
    step["B_n"] = sorted(vertex_name(p, x) for x in st.B)
    if not st.ok:
        step["failure"] = f"right-stable sweep failed at {st.counterexample}"
        return step
    if mode == "hyperbolic":
        far = V[1].avoid
        sh = north_south_shift(search, a, st.B, far)
        k = sh.n
        if not sh.ok:
            step["failure"] = f"no shift within the search bound ({sh.violating})"
            return step
    else:
        cov = left_shift_cover(search, base, V[0].avoid, st.B, H, vset_ball=vball, elements=probe)
        if not cov.ok:
            step["failure"] = f"no left shift found ({cov.counterexample})"
            return step
        k = _exponent(p, a, cov.h)
    step["k"] = k
    return step


def _exponent(p, a, h):
    for k in _signed_range(len(h) + 1):
        if _power(p, a, k) == h:
            return k
    raise ValueError(f"{h!r} is not a power of {a!r}")


# -- almost malnormality ------------------------------------------------------------

@dataclass
class MalnormalityReport:
    table: dict           # R -> max over s of |s H s^-1 cap H cap B_R|
    per_s: dict           # s -> [count at each R]
    verdict: str
    radii: list
    worst: str | None = None

    def to_dict(self, group=None):
        return {
            "table": {str(R): v for R, v in sorted(self.table.items())},
            "verdict": self.verdict,
            "radii": self.radii,
            "worst": self.worst,
            "per_s": {s: v for s, v in sorted(self.per_s.items())},
        }


def is_almost_malnormal(ball: BallGraph, H: SubgroupSpec, r_s: int, R: int,
                        pairs: bool = False) -> MalnormalityReport:
    """Count h in H with |h| <= R and s^-1 h s in H (or s^-1 h t^-1 in H with
    ``pairs``) for every s (t) of length <= r_s outside H."""
    if ball.radius < max(R, r_s):
        raise ValueError("the ball must contain B_R and B_{r_s}")
    p = ball.group
    inH = _in_h(H)
    radii = list(range(1, R + 1))
    hs = [h for h in ball.elements if len(h) <= R and inH(h)]
    ss = [s for s in ball.elements if len(s) <= r_s and not inH(s)]
    if pairs:
        combos = [(s, t) for s in ss for t in ss]
    else:
        combos = [(s, p.inv(s)) for s in ss]
    per_s = {}
    worst, best = None, -1
    for s, t in combos:
        # x in s H t  iff  s^-1 x t^-1 in H
        si, ti = p.inv(s), p.inv(t)
        lens = sorted(len(h) for h in hs if inH(p.mul(p.mul(si, h), ti)))
        counts = [sum(1 for L in lens if L <= r) for r in radii]
        key = f"{s},{t}" if pairs else s
        per_s[key] = counts
        if counts[-1] > best:
            worst, best = key, counts[-1]
    table = {r: max((c[i] for c in per_s.values()), default=0) for i, r in enumerate(radii)}
    vals = [table[r] for r in radii]
    growing = any(all(vals[i + j] < vals[i + j + 1] for j in range(3)) for i in range(len(vals) - 3))
    return MalnormalityReport(table, per_s, "growing" if growing else "bounded-so-far", radii, worst)


# -- products ---------------------------------------------------------------------------

@dataclass
class ProductReport:
    factors: list
    ok: bool

    def to_dict(self):
        return {"factors": self.factors, "ok": self.ok}


def product_condition(certs, s, t, group: ProductGroup, i: int | None = None,
                      balls=None) -> ProductReport:
    """Strong condition s_i (F_i u H_i)^c t_i inside F_i u H_i, factor by factor.

    ``certs`` holds one (F_i, ConditionReport) per factor, or None.  Factors
    where s_i or t_i lies in H_i are skipped.  ``balls`` optionally supplies
    the factor balls; otherwise a ball of the report's radius is built.
    """
    from .graph import build_ball, build_coned_off_ball
    idx = range(len(group.factors)) if i is None else [i]
    rows = []
    ok = True
    for j in idx:
        pj, Hj = group.factors[j]
        sj, tj = pj.nf(s[j]), pj.nf(t[j])
        if Hj.contains(sj) is Tri.YES or Hj.contains(tj) is Tri.YES:
            rows.append({"factor": j, "status": "skipped", "reason": "s_i or t_i lies in H_i"})
            continue
        cert = certs[j] if j < len(certs) else None
        if cert is None:
            rows.append({"factor": j, "status": "fail", "reason": "factor certificate missing"})
            ok = False
            continue
        F, rep = cert
        if balls is not None and balls[j] is not None:
            b = balls[j]
        elif any(is_cone(n.base) for n in F.neighborhoods):
            b = build_coned_off_ball(pj, [F.subgroup], rep.radius)
        else:
            b = build_ball(pj, rep.radius)
        scan = condition_scan(b, F, sj, tj)
        passed = scan.strong_form
        ok = ok and passed
        rows.append({"factor": j, "status": "pass" if passed else "fail", "radius": b.radius,
                     "intersection": [vertex_name(pj, g) for g in scan.intersection]})
    return ProductReport(rows, ok)
