"""Command-line front end.

Subcommands: classify (sweep primes, assemble per-prime orbifold and
invariant-form evidence, emit a verdict), verify (check one form against
one map at one prime), construct (build a flat family member with its
certificate), orbifold (single-prime orbifold report).

Exit codes: 0 flat-candidate, 1 not-flat, 2 inconclusive, 3 usage/parse
error.  Reports are deterministic; timings are opt-in because they would
break byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import BadPrime, DegreeTooSmall, FlatlabError
from .exactnum import field_create, is_prime, rationals
from .ratfunc import RatFunc, format_ratfunc, parse_ratfunc, rational_roots, reduce_mod_p
from .dynamics import (
    CriticalDatum,
    INFINITY,
    OrbitGraph,
    P1Point,
    p1_eval,
    point_key,
    postcritical_graph,
    ram_index,
)
from .orbifold import MU_INFINITY, mu_compute, orbifold_data, parabolic_signature
from .forms import SearchBounds, TupleForm, form_pullback, invariance_check, invariant_search
from . import atlas

_SIGNATURE_HINTS = {
    (MU_INFINITY, MU_INFINITY): "power-like",
    (2, 2, MU_INFINITY): "chebyshev-like",
    (2, 2, 2, 2): "lattes-like",
    (3, 3, 3): "lattes-like",
    (2, 4, 4): "lattes-like",
    (2, 3, 6): "lattes-like",
}

VERDICT_EXIT = {"flat-candidate": 0, "not-flat": 1, "inconclusive": 2}
USAGE_EXIT = 3


def _mu_json(m):
    return "inf" if m == MU_INFINITY else m


def _weights_for(policy, p):
    if policy == "fermat":
        return [p - 1]
    if policy == "none":
        return []
    return [w for w in policy if w % p != 0]


def _auto_pole_caps(mu_map, weight):
    caps = {}
    for pt, m in mu_map.items():
        if pt.is_infinity:
            continue
        if m == MU_INFINITY:
            caps[pt] = weight
        else:
            caps[pt] = weight - (-(-weight // m))
    return caps


def _prime_worker(args):
    """Analyze one prime; pure function of its arguments (safe to fan out)."""
    expr, p, policy, max_pole, want_timings = args
    sigma = parse_ratfunc(expr, rationals())
    report = {"p": p, "good": False}
    timings = {}
    t0 = time.perf_counter()
    try:
        sig_p = reduce_mod_p(sigma, p)
    except BadPrime as exc:
        report["reason"] = exc.reason
        return report
    timings["reduce_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    t0 = time.perf_counter()
    graph = postcritical_graph(sig_p)
    mu = mu_compute(graph)
    data = orbifold_data(graph, mu)
    sig_res = parabolic_signature(data)
    timings["orbifold_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    report["good"] = True
    report["chi"] = str(data.chi)
    report["signature"] = [_mu_json(m) for m in sig_res.signature]

    forms_found = []
    t0 = time.perf_counter()
    # an invariant form forces a parabolic orbifold (weight reduction plus
    # the genus dichotomy), so the search can only succeed when chi = 0
    if data.chi == 0:
        for weight in _weights_for(policy, p):
            if max_pole is None:
                bounds = SearchBounds(pole_caps=_auto_pole_caps(mu, weight))
            else:
                bounds = SearchBounds(max_pole_order=max_pole)
            for form in invariant_search(sig_p, weight, graph=graph, bounds=bounds):
                forms_found.append({"weight": weight, "f": format_ratfunc(form.func)})
    timings["search_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    if forms_found and data.chi != 0:
        raise RuntimeError("invariant form found with chi != 0 (internal)")
    report["forms_found"] = forms_found
    if want_timings:
        report["timings"] = timings
    return report


def _char0_report(sigma):
    """Best-effort orbifold over Q: only when the critical points are
    rational and every critical orbit cycles within 64 steps."""
    n, d = sigma.num, sigma.den
    wron = n.derivative() * d - n * d.derivative()
    if wron.is_zero:
        return {"supported": False, "reason": "inseparable"}
    roots = rational_roots(wron)
    if sum(m for _, m in roots) != wron.degree:
        return {"supported": False, "reason": "critical points are not all rational"}
    crit_pts = [P1Point(r) for r, _ in roots]
    e_inf = ram_index(sigma, INFINITY)
    if e_inf >= 2:
        crit_pts.append(INFINITY)
    edges = {}
    for pt in crit_pts:
        v = pt
        steps = 0
        while v not in edges:
            steps += 1
            if steps > 64:
                return {"supported": False, "reason": "a critical orbit does not close within 64 steps"}
            nxt = p1_eval(sigma, v)
            edges[v] = nxt
            v = nxt
    weights = {v: ram_index(sigma, v) for v in edges}
    postcritical = set()
    for pt in crit_pts:
        v = edges[pt]
        while v not in postcritical:
            postcritical.add(v)
            v = edges[v]
    graph = OrbitGraph(
        sigma=sigma,
        field=sigma.field,
        vertices=tuple(sorted(edges, key=point_key)),
        edges=edges,
        weights=weights,
        critical=tuple(CriticalDatum(pt, weights[pt]) for pt in crit_pts),
        postcritical=frozenset(postcritical),
    )
    data = orbifold_data(graph)
    sig_res = parabolic_signature(data)
    return {
        "supported": True,
        "chi": str(data.chi),
        "signature": [_mu_json(m) for m in sig_res.signature],
        "parabolic": sig_res.parabolic,
    }


def run_classify(expr, prime_min, prime_max, policy="fermat", max_pole=None,
                 jobs=1, min_good=8, char0=False, timings=False):
    """The classification sweep; returns the full report dict."""
    sigma = parse_ratfunc(expr, rationals())
    if sigma.degree < 2:
        raise DegreeTooSmall(f"degree {sigma.degree} < 2")
    primes = [p for p in range(max(prime_min, 2), prime_max + 1) if is_prime(p)]
    worker_args = [(expr, p, policy, max_pole, timings) for p in primes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            prime_reports = list(pool.map(_prime_worker, worker_args))
    else:
        prime_reports = [_prime_worker(a) for a in worker_args]
    prime_reports.sort(key=lambda r: r["p"])

    good = [r for r in prime_reports if r["good"]]
    chi_zero = [r for r in good if Fraction(r["chi"]) == 0]
    chi_nonzero = [r for r in good if Fraction(r["chi"]) != 0]
    if chi_nonzero:
        label = "not-flat"
    elif len(good) >= min_good and good:
        label = "flat-candidate"
    else:
        label = "inconclusive"
    hints = []
    if label == "flat-candidate":
        seen = set()
        for r in chi_zero:
            key = tuple(MU_INFINITY if s == "inf" else s for s in r["signature"])
            seen.add(_SIGNATURE_HINTS.get(key, "unrecognized"))
        hints = sorted(seen - {"unrecognized"})
    counts = {
        "good": len(good),
        "bad": len(prime_reports) - len(good),
        "chi_zero": len(chi_zero),
        "chi_nonzero": len(chi_nonzero),
        "primes_with_forms": sum(1 for r in good if r.get("forms_found")),
    }
    note = (
        f"finite sweep over primes {prime_min}..{prime_max}: 'flat-candidate' is "
        "evidence, not proof (flatness is only forced by invariant forms at "
        "infinitely many primes); 'not-flat' is rigorous from a single good prime "
        "with chi != 0, up to the finitely many excluded places"
    )
    report = {
        "input": expr,
        "degree": sigma.degree,
        "primes": prime_reports,
        "verdict": {"label": label, "hints": hints, "counts": counts, "note": note},
    }
    if char0:
        report["char0"] = _char0_report(sigma)
    return report


def _render_classify(report, stream):
    print(f"map: {report['input']}   degree: {report['degree']}", file=stream)
    for r in report["primes"]:
        if not r["good"]:
            print(f"  p={r['p']:<3} bad   {r['reason']}", file=stream)
            continue
        sig = "(" + ",".join(str(s) for s in r["signature"]) + ")"
        line = f"  p={r['p']:<3} good  chi={r['chi']:<5} signature {sig}"
        for item in r.get("forms_found", []):
            line += f"   form w{item['weight']}: {item['f']}"
        if "timings" in r:
            line += f"   [{r['timings']}]"
        print(line, file=stream)
    v = report["verdict"]
    hints = f"  hints: {', '.join(v['hints'])}" if v["hints"] else ""
    print(f"verdict: {v['label']}{hints}", file=stream)
    c = v["counts"]
    print(
        f"counts: good={c['good']} bad={c['bad']} chi_zero={c['chi_zero']} "
        f"chi_nonzero={c['chi_nonzero']} primes_with_forms={c['primes_with_forms']}",
        file=stream,
    )
    print(f"note: {v['note']}", file=stream)
    if "char0" in report:
        c0 = report["char0"]
        if c0["supported"]:
            sig = "(" + ",".join(str(s) for s in c0["signature"]) + ")"
            print(f"char 0: chi={c0['chi']} signature {sig}", file=stream)
        else:
            print(f"char 0: unsupported over Q ({c0['reason']})", file=stream)


def cmd_classify(args):
    try:
        pmin, pmax = args.primes.split("..")
        pmin, pmax = int(pmin), int(pmax)
    except ValueError:
        print(f"bad prime range {args.primes!r}; expected MIN..MAX", file=sys.stderr)
        return USAGE_EXIT
    if args.weights in ("fermat", "none"):
        policy = args.weights
    else:
        try:
            policy = [int(w) for w in args.weights.split(",")]
        except ValueError:
            print(f"bad weights {args.weights!r}", file=sys.stderr)
            return USAGE_EXIT
    report = run_classify(
        args.expr,
        pmin,
        pmax,
        policy=policy,
        max_pole=args.max_pole_order,
        jobs=args.jobs,
        min_good=args.min_good,
        char0=args.char0,
        timings=args.timings,
    )
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _render_classify(report, sys.stdout)
    return VERDICT_EXIT[report["verdict"]["label"]]


def cmd_verify(args):
    sigma = parse_ratfunc(args.expr, rationals())
    sig_p = reduce_mod_p(sigma, args.p)
    field = sig_p.field
    f = parse_ratfunc(args.form, field)
    omega = TupleForm(f, args.weight)
    res = invariance_check(sig_p, omega)
    if res.invariant:
        verdict = "invariant"
    elif res.semi_invariant:
        verdict = f"semi-invariant lambda = {res.lam}"
    else:
        verdict = "neither"
    if args.lam is not None:
        claimed = field.elem(args.lam)
        match = res.semi_invariant and res.lam == claimed
        verdict += f"; claimed lambda = {args.lam}: {'confirmed' if match else 'refuted'}"
    if args.verbose:
        print(f"sigma mod {args.p}: {format_ratfunc(sig_p)}")
        print(f"pullback: {form_pullback(sig_p, omega)}")
    print(verdict)
    return 0


def cmd_construct(args):
    p = args.p
    field = field_create(p) if p else rationals()
    out = {"family": args.family}
    if args.family == "power":
        if len(args.params) != 1:
            print("construct power needs one argument: d", file=sys.stderr)
            return USAGE_EXIT
        d = int(args.params[0])
        made = atlas.power_map(d, field)
        if isinstance(made, RatFunc):
            out["sigma"] = format_ratfunc(made)
            out["form_family"] = "(dt/t)^(p-1), invariant (lambda = 1) at every prime p not dividing d"
        else:
            out.update(_cert_json(made, var="t", p=p))
    elif args.family == "cheb":
        if len(args.params) != 1:
            print("construct cheb needs one argument: d (negative d means -Cheb_|d|)", file=sys.stderr)
            return USAGE_EXIT
        d = int(args.params[0])
        sign = -1 if d < 0 else 1
        made = atlas.chebyshev_poly(abs(d), sign, field)
        if field.is_rationals:
            out["sigma"] = format_ratfunc(RatFunc(made))
            out["form_family"] = (
                "(dt)^(p-1)/(t^2-4)^((p-1)/2), invariant (lambda = 1) at every odd prime p not dividing d"
            )
        else:
            out.update(_cert_json(made, var="t", p=p))
    elif args.family == "lattes":
        if len(args.params) != 3:
            print("construct lattes needs three arguments: a b m", file=sys.stderr)
            return USAGE_EXIT
        a, b = Fraction(args.params[0]), Fraction(args.params[1])
        m = int(args.params[2])
        curve = atlas.EllipticCurve(field, field.elem(a), field.elem(b))
        made = atlas.lattes_map(curve, m)
        out.update(_cert_json(made, var="x", p=p))
        out["curve"] = f"y^2 = x^3 + {a}*x + {b}"
    else:
        print(f"unknown family {args.family!r}", file=sys.stderr)
        return USAGE_EXIT
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for key, value in out.items():
            print(f"{key}: {value}")
    return 0


def _cert_json(cert, var, p):
    out = {
        "sigma": format_ratfunc(cert.sigma, var),
        "form": format_ratfunc(cert.form.func, var),
        "weight": cert.form.weight,
        "lambda": str(cert.lam),
    }
    if p:
        out["p"] = p
    return out


def cmd_orbifold(args):
    sigma = parse_ratfunc(args.expr, rationals())
    sig_p = reduce_mod_p(sigma, args.p)
    graph = postcritical_graph(sig_p)
    data = orbifold_data(graph)
    sig_res = parabolic_signature(data)
    field = graph.field
    out = {
        "input": args.expr,
        "p": args.p,
        "splitting_field": repr(field),
        "postcritical": [
            {"point": str(pt), "mu": _mu_json(m)} for pt, m in data.postcritical
        ],
        "chi": str(data.chi),
        "signature": [_mu_json(m) for m in sig_res.signature],
        "parabolic": sig_res.parabolic,
    }
    if field.k > 1:
        out["field_modulus"] = list(field.modulus)
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"map: {out['input']}  p={args.p}  splitting field: {out['splitting_field']}")
        if "field_modulus" in out:
            print(f"modulus (coefficients, constant first): {out['field_modulus']}")
        for item in out["postcritical"]:
            print(f"  mu({item['point']}) = {item['mu']}")
        sig = "(" + ",".join(str(s) for s in out["signature"]) + ")"
        print(f"chi = {out['chi']}   signature {sig}   parabolic: {out['parabolic']}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="flatlab",
        description="detect flat rational maps (power / Chebyshev / Lattes) via invariant forms mod p",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="sweep primes and classify a map over Q")
    c.add_argument("expr")
    c.add_argument("--primes", default="5..50", help="prime range MIN..MAX (default 5..50)")
    c.add_argument("--weights", default="fermat", help="'fermat' (= p-1), 'none', or a comma list")
    c.add_argument("--max-pole-order", type=int, default=None,
                   help="uniform pole-order cap (default: orbifold-informed caps)")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--min-good", type=int, default=8, help="good primes needed for flat-candidate")
    c.add_argument("--json", action="store_true")
    c.add_argument("--char0", action="store_true", help="also try the orbifold over Q")
    c.add_argument("--timings", action="store_true", help="include timings (breaks byte determinism)")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="verify one form against one map at one prime")
    v.add_argument("expr")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--form", required=True)
    v.add_argument("--weight", type=int, required=True)
    v.add_argument("--lambda", dest="lam", type=int, default=None)
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("construct", help="build a flat family member and its certificate")
    k.add_argument("family", choices=["power", "cheb", "lattes"])
    k.add_argument("params", nargs="*")
    k.add_argument("--p", type=int, default=None)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_construct)

    o = sub.add_parser("orbifold", help="single-prime orbifold report")
    o.add_argument("expr")
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_orbifold)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code else 0
    try:
        return args.func(args)
    except (FlatlabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
