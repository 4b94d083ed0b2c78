"""roamkit command line.

One check per lemma family:

  delta      thin triangles of the ball (hyperbolicity of the graph)
  fineness   embedded loops through an edge of the coned-off graph
  malnormal  almost malnormality counts |s H s^-1 n H n B_R|
  roaming    roaming set, disjoining sequence and the conjugation condition
  topology   the uniform neighbourhood basis (shrinking M(x, A))
  l2-suite   exact l2 identities for seeded group-algebra elements
  product    the factorwise strong condition in a direct product

Exit status is 0 exactly when the verdict is "pass".
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import catalog as cat
from .graph import (Cone, build_ball, build_coned_off_ball, check_fineness, estimate_delta,
                    parse_vertex, to_dot, vertex_name)
from .presentation import GroupPresentation, ProductGroup, Tri, load_group
from .report import dumps, make_report

CHECKS = ("delta", "fineness", "malnormal", "roaming", "topology", "l2-suite", "product")

# allowed parameters and their defaults, per check
PARAMS = {
    "delta": {"samples": 5000, "max_triangles": 200_000, "max_delta": None},
    "fineness": {"edge": None, "n": 6, "compare": None},
    "malnormal": {"r_s": 4, "pairs": False},
    "roaming": {"s": "b", "t": "b", "K": 4, "mode": None, "search": 8},
    "topology": {"x": None, "A": None, "delta": None},
    "l2-suite": {"count": 100, "support": 20, "n": 20},
    "product": {"s": "b,b", "t": "b,b", "K": 4},
}
# parameters without a default value that still take integers
INT_PARAMS = {"compare"}
RADIUS = {"delta": 5, "fineness": 6, "malnormal": 10, "roaming": 12, "topology": 8,
          "l2-suite": 8, "product": 8}


class RequestError(ValueError):
    pass


@dataclass
class CheckRequest:
    check: str
    group: str
    radius: int | None = None
    safe_margin: int | None = None
    params: dict = field(default_factory=dict)
    seed: int = 0

    def validate(self):
        if self.check not in CHECKS:
            raise RequestError(f"unknown check {self.check!r}; choose from {', '.join(CHECKS)}")
        unknown = set(self.params) - set(PARAMS[self.check])
        if unknown:
            raise RequestError(f"unknown parameters for {self.check}: {', '.join(sorted(unknown))}")
        if self.radius is not None and self.radius < 1:
            raise RequestError("radius must be at least 1")
        if self.safe_margin is not None and not 0 <= self.safe_margin <= self.radius_or_default():
            raise RequestError("safe margin must lie between 0 and the radius")

    def radius_or_default(self):
        return self.radius if self.radius is not None else RADIUS[self.check]

    def param(self, name):
        v = self.params.get(name, PARAMS[self.check][name])
        default = PARAMS[self.check][name]
        if isinstance(default, bool):
            return str(v).lower() in ("1", "true", "yes") if isinstance(v, str) else bool(v)
        if (isinstance(default, int) or name in INT_PARAMS) and isinstance(v, str):
            try:
                return int(v)
            except ValueError:
                raise RequestError(f"parameter {name} must be an integer, got {v!r}") from None
        return v


def load_source(source: str) -> cat.CatalogEntry:
    if source.startswith("catalog:"):
        return cat.entry(source.split(":", 1)[1])
    data = load_group(Path(source).read_text())
    return cat.CatalogEntry(source, data.presentation, data.subgroup, data.peripherals, {})


def _ball(entry, req, coned=None):
    p = entry.group
    if not isinstance(p, GroupPresentation):
        raise RequestError(f"check {req.check} needs a single group, not a product")
    R = req.radius_or_default()
    safe = None if req.safe_margin is None else R - req.safe_margin
    use_cone = bool(entry.peripherals) if coned is None else coned
    if use_cone:
        return build_coned_off_ball(p, entry.peripherals, R, safe)
    return build_ball(p, R, safe)


def _words(p, text):
    return [parse_vertex(p, w.strip()) for w in str(text).split(",") if w.strip()]


def _need_h(entry, req):
    if entry.subgroup is None:
        raise RequestError(f"check {req.check} needs a subgroup H (none in {entry.key})")
    return entry.subgroup


# -- checks ---------------------------------------------------------------------------

def _delta(entry, req):
    ball = _ball(entry, req)
    est = estimate_delta(ball, req.param("max_triangles"), req.param("samples"), req.seed)
    res = est.to_dict()
    heur = [] if est.exhaustive else ["seeded triangle sampling"]
    verdict = "pass" if est.exhaustive else "uncertified"
    cap = req.param("max_delta")
    if cap is not None and est.delta > Fraction(str(cap)):
        verdict = "fail"
    wit = [] if est.witness is None else [res["witness"]]
    return verdict, res, wit, heur, ball


def _fineness(entry, req):
    ball = _ball(entry, req)
    p = entry.group
    e = req.param("edge")
    if e is None:
        edge = ("", Cone("", 0)) if ball.kind == "coned" else ("", p.generators[0])
    else:
        edge = tuple(_words(p, e))
        if len(edge) != 2:
            raise RequestError("edge takes two comma-separated vertices")
    if edge[1] not in ball.neighbors(edge[0]):
        raise RequestError("the two vertices are not adjacent")
    rep = check_fineness(ball, edge, req.param("n"), req.param("compare"))
    res = {
        "edge": [vertex_name(p, v) for v in edge],
        "loop_counts": {str(k): v for k, v in rep.loop_counts.items()},
        "counts_by_radius": {str(R): {str(k): v for k, v in c.items()}
                             for R, c in rep.counts_by_radius.items()},
        "stabilized": rep.stabilized,
        "uncertified_lengths": rep.uncertified_lengths,
    }
    return ("pass" if rep.stabilized else "radius-insufficient"), res, [], [], ball


def _malnormal(entry, req):
    from .roaming import is_almost_malnormal
    H = _need_h(entry, req)
    ball = _ball(entry, req, coned=False)
    R = req.radius_or_default()
    rep = is_almost_malnormal(ball, H, min(req.param("r_s"), R), R, req.param("pairs"))
    res = rep.to_dict()
    res["verdict"] = rep.verdict
    verdict = "pass" if rep.verdict == "bounded-so-far" else "fail"
    wit = [] if verdict == "pass" else [rep.worst]
    return verdict, res, wit, [], ball


def _roaming(entry, req):
    from .roaming import build_roaming_pair
    H = _need_h(entry, req)
    p = entry.group
    mode = req.param("mode") or ("coned" if entry.peripherals else "hyperbolic")
    if mode not in ("coned", "hyperbolic"):
        raise RequestError("mode is coned or hyperbolic")
    ball = _ball(entry, req, coned=(mode == "coned"))
    s, t = (parse_vertex(p, req.param(k)) for k in ("s", "t"))
    for w in (s, t):
        if H.contains(p.nf(w)) is not Tri.NO:
            raise RequestError(f"{vertex_name(p, w)} must lie outside H")
    F, cert, cond = build_roaming_pair(ball, s, t, mode, H, K=req.param("K"),
                                       search_radius=req.param("search"))
    res = {"mode": mode, "F": F.to_dict(), "certificate": cert.to_dict(), "condition": cond.to_dict()}
    if "radius insufficient" in cert.note:
        verdict = "radius-insufficient"
    elif cert.ok and (cond.strong_form or mode == "hyperbolic"):
        verdict = "pass"
    else:
        verdict = "fail"
    wit = []
    if cert.witness is not None:
        wit.append({"element": vertex_name(p, cert.witness[0]), "pair": list(cert.witness[1:])})
    return verdict, res, wit, [], ball


def _topology(entry, req):
    from .topology import shrink_neighborhood
    ball = _ball(entry, req)
    p = entry.group
    x = req.param("x")
    A = req.param("A")
    rng = random.Random(req.seed)
    core = ball.sort(ball.core())
    x = rng.choice(core) if x is None else parse_vertex(p, x)
    if A is None:
        A = set(rng.sample([v for v in core if v != x], 2))
    else:
        A = set(_words(p, A))
    delta = req.param("delta")
    heur = []
    if delta is None:
        est = estimate_delta(ball, seed=req.seed)
        delta = est.delta
        if not est.exhaustive:
            heur.append("seeded triangle sampling for delta")
    rep = shrink_neighborhood(ball, x, A, Fraction(str(delta)))
    res = {
        "x": vertex_name(p, x), "A": sorted(vertex_name(p, a) for a in A),
        "C": sorted(vertex_name(p, c) for c in rep.C), "r0": rep.r0,
        "verified": rep.verified, "pairs_checked": rep.pairs_checked,
    }
    wit = [] if rep.counterexample is None else [[vertex_name(p, v) for v in rep.counterexample]]
    if rep.inner is not None:
        res["v_method"] = rep.inner.method
    verdict = "fail" if not rep.verified else ("uncertified" if heur else "pass")
    return verdict, res, wit, heur, ball


def _l2(entry, req):
    from .l2 import (AlgebraElement, SupportPredicate, conj_project_identity_check, mixing_decay,
                     norm2, parseval_check, project_support, translate, trace, adjoint, convolve)
    from .roaming import build_roaming_pair
    H = _need_h(entry, req)
    p = entry.group
    ball = _ball(entry, req, coned=False)
    F, cert, _ = build_roaming_pair(ball, "b", "b", "hyperbolic", H, K=4,
                                    search_radius=min(8, ball.radius))
    FP = SupportPredicate.roaming(ball, F)
    rng = random.Random(req.seed)
    els = ball.elements
    failures = []
    hs = cert.h_sequence
    for i in range(req.param("count")):
        size = rng.randint(0, req.param("support"))
        x = AlgebraElement(p, {rng.choice(els): Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                               for _ in range(size)})
        g, h = rng.choice(els), rng.choice(els)
        k = rng.randrange(len(hs))
        checks = {
            "pythagoras": norm2(x) == norm2(project_support(x, FP)) + norm2(project_support(x, FP.complement())),
            "isometry": norm2(translate(x, g, h)) == norm2(x),
            "trace": trace(convolve(adjoint(x), x)) == norm2(x),
            "conj": conj_project_identity_check(x, hs[k], FP).ok,
        }
        # Parseval on an element spread over the conjugates h_k^-1 F h_k
        y = AlgebraElement(p, {p.mul(p.mul(p.inv(hh), w), hh): c
                               for hh, (w, c) in zip(hs * len(x.coeffs), x.coeffs.items())})
        try:
            checks["parseval"] = parseval_check(y, FP, hs).ok
        except ValueError:
            checks["parseval"] = False
        for name, ok in checks.items():
            if not ok:
                failures.append({"sample": i, "identity": name})
    mix = mixing_decay(p, "b", "b", H, range(1, req.param("n") + 1))
    res = {
        "samples": req.param("count"),
        "failures": failures,
        "disjoining": hs,
        "mixing": [str(v) for v in mix.values],
        "mixing_vanish_from": mix.vanish_from,
    }
    ok = not failures and all(v == 0 for v in mix.values)
    return ("pass" if ok else "fail"), res, failures[:5], [], ball


def _product(entry, req):
    from .roaming import build_roaming_pair, product_condition
    G = entry.group
    if not isinstance(G, ProductGroup):
        raise RequestError("the product check needs a product group (catalog:F2xF2)")
    s = tuple(w if w != "e" else "" for w in req.param("s").split(","))
    t = tuple(w if w != "e" else "" for w in req.param("t").split(","))
    if len(s) != len(G.factors) or len(t) != len(G.factors):
        raise RequestError("s and t need one word per factor")
    R = req.radius_or_default()
    certs, rows = [], []
    for (p, H), si, ti in zip(G.factors, s, t):
        if H.contains(p.nf(si)) is Tri.YES or H.contains(p.nf(ti)) is Tri.YES:
            certs.append(None)
            continue
        ball = build_ball(p, R)
        F, cert, cond = build_roaming_pair(ball, si, ti, "hyperbolic", H, K=req.param("K"),
                                           search_radius=min(8, R))
        certs.append((F, cond))
        rows.append(cert.ok)
    rep = product_condition(certs, s, t, G)
    res = rep.to_dict()
    ok = rep.ok and all(rows) and any(r["status"] == "pass" for r in rep.factors)
    return ("pass" if ok else "fail"), res, [], [], None


DISPATCH = {"delta": _delta, "fineness": _fineness, "malnormal": _malnormal, "roaming": _roaming,
            "topology": _topology, "l2-suite": _l2, "product": _product}


def run(req: CheckRequest, timings: bool = False):
    """Returns (report, ball)."""
    req.validate()
    entry = load_source(req.group)
    t0 = time.perf_counter()
    verdict, res, wit, heur, ball = DISPATCH[req.check](entry, req)
    elapsed = time.perf_counter() - t0
    params = {k: req.param(k) for k in PARAMS[req.check]}
    params["radius"] = req.radius_or_default()
    if req.safe_margin is not None:
        params["safe_margin"] = req.safe_margin
    rep = make_report(req.check, req.group, params, verdict, res, req.seed, __version__,
                      wit, heur, {"seconds": round(elapsed, 3)} if timings else None)
    return rep, ball


def _parse_params(items):
    out = {}
    for it in items or []:
        if "=" not in it:
            raise RequestError(f"--param expects k=v, got {it!r}")
        k, _, v = it.partition("=")
        out[k.strip()] = v.strip()
    return out


def build_parser():
    ap = argparse.ArgumentParser(prog="roamkit", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--group", required=True, help="group file path or catalog:KEY")
    ap.add_argument("--check", required=True, choices=CHECKS)
    ap.add_argument("--radius", type=int)
    ap.add_argument("--safe-margin", type=int)
    ap.add_argument("--param", action="append", metavar="K=V")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="write the JSON report here (default: stdout)")
    ap.add_argument("--dot", help="write the ball as DOT here")
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        req = CheckRequest(args.check, args.group, args.radius, args.safe_margin,
                           _parse_params(args.param), args.seed)
        rep, ball = run(req, args.timings)
    except (RequestError, KeyError, ValueError, OSError) as exc:
        print(f"roamkit: error: {exc}", file=sys.stderr)
        return 2
    text = dumps(rep)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        if ball is None:
            print("roamkit: no single ball to export for this check", file=sys.stderr)
        else:
            Path(args.dot).write_text(to_dot(ball))
    return 0 if rep["verdict"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
