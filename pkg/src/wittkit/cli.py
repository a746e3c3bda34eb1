"""Command-line front end.

Every command writes one JSON document to stdout (keys ``command``,
``inputs``, ``options``, ``result``, ``certificates``, ``escalations``,
``timing``) and a short human summary to stderr. ``timing`` holds
deterministic work counters only, so identical invocations produce
byte-identical reports; wall-clock time goes to the stderr summary.

Exit codes: 0 success, 2 bound or precision insufficient, 3 malformed
input, 4 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .classifier import classify, minimal_gf
from .errors import BoundInsufficient, DegenerateInput, InsufficientPrecision, MalformedInput
from .exact_algebra import (
    LaurentSeries,
    UniPoly,
    format_laurent,
    format_multipoly,
    format_rational,
    format_unipoly,
    parse_multipoly,
    parse_unipoly,
)
from .exact_algebra.textfmt import split_top_level
from .hensel import (
    VeroneseQuery,
    chart_for,
    coefficient_law_check,
    hensel_residual,
    hensel_root,
    s_coordinates,
    veronese_member,
)
from .witt1 import WittElement1, closure
from .wn_analysis import (
    WittElementN,
    abelianisation_dim,
    check_derived_inclusion,
    closure_n,
    d_ij_sequence,
    growth_sequence,
    wn_truncated,
)

EXIT_OK, EXIT_BOUND, EXIT_MALFORMED, EXIT_DEGENERATE = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to the malformed-input exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _rat(c: Fraction) -> str:
    return format_rational(Fraction(c))


def _series_dict(s: LaurentSeries) -> dict:
    return {str(e): _rat(c) for e, c in s.items()}


def parse_gens(text: str) -> list[WittElement1]:
    gens = [WittElement1(parse_unipoly(piece)) for piece in split_top_level(text, ",")]
    if not gens:
        raise MalformedInput("no generators given")
    return gens


def parse_gens_n(text: str) -> list[WittElementN]:
    pieces = split_top_level(text, ";")
    if not pieces:
        raise MalformedInput("no generators given")
    comps = [split_top_level(p.strip().strip("[]"), ",") for p in pieces]
    n = len(comps[0])
    if any(len(c) != n for c in comps):
        raise MalformedInput("every generator needs the same number of components")
    return [WittElementN(tuple(parse_multipoly(c, n) for c in cs)) for cs in comps]


def _schedule(text: str | None, default: list[int]) -> list[int]:
    if not text:
        return default
    try:
        out = [int(x) for x in split_top_level(text, ",")]
    except ValueError as exc:
        raise MalformedInput(f"bad schedule {text!r}") from exc
    if not out or min(out) < 0:
        raise MalformedInput(f"bad schedule {text!r}")
    return out


# -- commands -------------------------------------------------------------------

def _classify_one(gens_text: str, opts: dict) -> dict:
    gens = parse_gens(gens_text)
    res = classify(gens, opts["bound"], opts["steps"], opts["max_bound"], opts["max_steps"])
    certs = dict(res.certificates)
    timing = {"brackets_evaluated": certs.pop("brackets_evaluated"), "basis_dim": certs["basis_dim"]}
    return {
        "result": {
            "f": format_unipoly(res.f),
            "d": res.d,
            "g_f": format_unipoly(res.g_f),
            "h_f": format_unipoly(res.h_f),
            "g_min": format_unipoly(res.g_min),
            "q_min": format_unipoly(res.q_min),
            "codim": res.codim,
        },
        "certificates": certs,
        "escalations": list(res.escalations),
        "timing": timing,
    }


def _run_classify_job(args: tuple[str, dict]) -> tuple[int, dict]:
    gens_text, opts = args
    try:
        return EXIT_OK, _classify_one(gens_text, opts)
    except Exception as exc:  # reported per input inside a batch
        code = exit_code_for(exc)
        if code is None:
            raise
        return code, {"error": {"type": type(exc).__name__, "message": str(exc)}}


def cmd_classify(ns) -> tuple[int, dict]:
    opts = {"bound": ns.bound, "steps": ns.steps, "max_bound": ns.max_bound,
            "max_steps": ns.max_steps}
    if ns.batch:
        try:
            with open(ns.batch, encoding="utf-8") as fh:
                lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        except OSError as exc:
            raise MalformedInput(f"cannot read batch file: {exc}") from exc
        jobs = [(ln, opts) for ln in lines]
        if ns.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=ns.jobs) as ex:
                outs = list(ex.map(_run_classify_job, jobs))
        else:
            outs = [_run_classify_job(j) for j in jobs]
        code = max((c for c, _ in outs), default=EXIT_OK)
        doc = {
            "inputs": {"batch": lines},
            "options": opts,
            "result": [dict(o, index=k, exit_code=c) for k, (c, o) in enumerate(outs)],
            "certificates": {},
            "escalations": [],
            "timing": {"inputs": len(lines)},
        }
        return code, doc
    if not ns.gens:
        raise MalformedInput("classify needs --gens or --batch")
    body = _classify_one(ns.gens, opts)
    return EXIT_OK, dict(body, inputs={"gens": [format_unipoly(u.g) for u in parse_gens(ns.gens)]},
                         options=opts)


def cmd_hensel(ns) -> tuple[int, dict]:
    if not ns.poly:
        raise MalformedInput("hensel needs --poly")
    g = parse_unipoly(ns.poly)
    chart = hensel_root(g, ns.steps)
    d = int(g.degree)
    resid = hensel_residual(g, chart)
    order = d - ns.steps - 1
    ok = all(e <= order for e in resid.coeffs)
    return EXIT_OK, {
        "inputs": {"poly": format_unipoly(g)},
        "options": {"steps": ns.steps},
        "result": {
            "s": _series_dict(chart.s),
            "s_text": format_laurent(chart.s),
            "known_down_to_exponent": 1 - ns.steps,
            "residual": {"claim": f"s^{d}/s' - g has no terms above t^{order}", "verified": ok,
                          "known_terms": _series_dict(resid)},
        },
        "certificates": {"residual_order": order, "residual_verified": ok},
        "escalations": [],
        "timing": {"steps": ns.steps},
    }


def cmd_veronese(ns) -> tuple[int, dict]:
    if not ns.gens:
        raise MalformedInput("veronese-check needs --gens")
    if ns.d is None or ns.d < 1:
        raise MalformedInput("veronese-check needs --d >= 1")
    gens = parse_gens(ns.gens)
    elements = list(closure(gens, ns.bound).elements) if ns.closure else [u.monic() for u in gens]
    if ns.poly:
        chart = hensel_root(parse_unipoly(ns.poly), ns.steps)
        pivot = format_unipoly(parse_unipoly(ns.poly))
    else:
        base = next((u for u in elements if u.degree >= 0), None)
        if base is None:
            raise DegenerateInput("no element of nonnegative degree to build a chart from")
        chart = chart_for(base, ns.steps)
        pivot = format_unipoly(base.g)
    q = VeroneseQuery(ns.d, chart)
    members = []
    for u in elements:
        exp = s_coordinates(u, chart)
        members.append({
            "element": format_unipoly(u.g),
            "member": veronese_member(u, q),
            "s_coordinates": {str(k): _rat(c) for k, c in sorted(exp.coeffs.items(), reverse=True)},
            "resolved_above": int(exp.trunc),
        })
    laws = []
    eligible = [u.monic() for u in elements if u.degree >= 0 and u.degree % ns.d == 0]
    for a_i in range(len(eligible)):
        for b_i in range(a_i + 1, len(eligible)):
            a, b = eligible[a_i], eligible[b_i]
            if a.degree == b.degree:
                continue
            rep = coefficient_law_check(a, b, ns.d)
            laws.append({
                "a": format_unipoly(a.g), "b": format_unipoly(b.g), "k": rep.k,
                "alpha": None if rep.alpha is None else _rat(rep.alpha),
                "beta": None if rep.beta is None else _rat(rep.beta),
                "law_holds": rep.law_holds, "status": rep.status,
            })
    all_in = all(m["member"] for m in members)
    any_in = any(m["member"] for m in members)
    return EXIT_OK, {
        "inputs": {"gens": [format_unipoly(u.g) for u in gens], "chart_from": pivot},
        "options": {"d": ns.d, "steps": ns.steps, "bound": ns.bound, "closure": ns.closure},
        "result": {"members": members, "coefficient_law": laws},
        "certificates": {"all_members": all_in, "one_member_implies_all": (not any_in) or all_in,
                         "law_holds_on_all_pairs": all(x["law_holds"] is not False for x in laws)},
        "escalations": [],
        "timing": {"elements": len(elements), "pairs": len(laws)},
    }


def cmd_wn_growth(ns) -> tuple[int, dict]:
    if not ns.gens:
        raise MalformedInput("wn-growth needs --gens")
    gens = parse_gens_n(ns.gens)
    rep = growth_sequence(gens, ns.steps)
    return EXIT_OK, {
        "inputs": {"gens": [[format_multipoly(c) for c in u.comps] for u in gens],
                   "n": gens[0].nvars},
        "options": {"K": ns.steps},
        "result": {"dims": list(rep.dims), "verdict": rep.verdict,
                   "slope_estimate": rep.estimate,
                   "tail_from_k": rep.tail[0][0] if rep.tail else None},
        "certificates": {},
        "escalations": [],
        "timing": {"steps": len(rep.dims) - 1},
    }


def cmd_wn_filtration(ns) -> tuple[int, dict]:
    schedule = _schedule(ns.schedule, [4, 6, 8])
    D = max(schedule)
    if ns.full_wn:
        basis = wn_truncated(ns.full_wn, D)
        inputs = {"full_wn": ns.full_wn}
        closed = True
    else:
        if not ns.gens:
            raise MalformedInput("wn-filtration needs --gens or --full-wn")
        gens = parse_gens_n(ns.gens)
        basis, closed = closure_n(gens, D)
        inputs = {"gens": [[format_multipoly(c) for c in u.comps] for u in gens]}
    i, j = ns.i, ns.j
    if i < 0 or not 0 <= j <= basis.n:
        raise MalformedInput("filtration index out of range")
    dims, verdict = d_ij_sequence(basis, i, j, schedule)
    result = {"d_ij": [[b, v] for b, v in dims], "verdict": verdict}
    certs = {"closure_saturated_within_bound": closed}
    if i >= 1:
        certs["derived_inclusion"] = check_derived_inclusion(basis, i, j, ns.samples, D, ns.seed)
    ab, ab_verdict = abelianisation_dim(basis, schedule) if ns.abelianisation else (None, None)
    if ab is not None:
        result["abelianisation"] = {"codims": [[b, v] for b, v in ab], "verdict": ab_verdict}
    return EXIT_OK, {
        "inputs": inputs,
        "options": {"i": i, "j": j, "schedule": schedule, "seed": ns.seed, "samples": ns.samples},
        "result": result,
        "certificates": certs,
        "escalations": [],
        "timing": {"basis_dim": basis.dim},
    }


def _selftest_checks() -> list[tuple[str, bool]]:
    t = parse_unipoly
    out = []
    zero = WittElement1(UniPoly())
    out.append(("bracket table", all(
        WittElement1.e(a).bracket(WittElement1.e(b))
        == ((b - a) * WittElement1.e(a + b) if a + b >= -1 else zero)
        for a in range(-1, 8) for b in range(-1, 8))))
    ch = hensel_root(t("t^2+1"), 6)
    out.append(("hensel t^2+1", ch.s.coeff(-1) == Fraction(1, 3) and ch.s.coeff(-3) == Fraction(-4, 45)))
    res = classify(parse_gens("t^3, t^5"))
    out.append(("classify t^3, t^5", (str(res.f), str(res.g_min), res.codim) == ("t^2", "t^3", 1)))
    try:
        classify(parse_gens("t, t^2"))
        out.append(("finite-dimensional detection", False))
    except DegenerateInput:
        out.append(("finite-dimensional detection", True))
    out.append(("minimal g_f of t^2+t", minimal_gf(t("t^2+t"))[0] == t("t+1/2")))
    return out


def cmd_selftest(ns) -> tuple[int, dict]:
    checks = _selftest_checks()
    ok = all(v for _, v in checks)
    return (EXIT_OK if ok else 1), {
        "inputs": {},
        "options": {},
        "result": {name: v for name, v in checks},
        "certificates": {"all_passed": ok},
        "escalations": [],
        "timing": {"checks": len(checks)},
    }


COMMANDS = {
    "classify": cmd_classify,
    "hensel": cmd_hensel,
    "veronese-check": cmd_veronese,
    "wn-growth": cmd_wn_growth,
    "wn-filtration": cmd_wn_filtration,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wittkit", description="Subalgebras of Witt algebras, computed exactly.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, steps=16, bound=40):
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--steps", type=int, default=steps)
        sp.add_argument("--bound", type=int, default=bound)
        sp.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("classify", help="classify the subalgebra generated by g∂ for the given g")
    common(c)
    c.add_argument("--gens", help='comma-separated polynomials, e.g. "t^3, t^5"')
    c.add_argument("--max-bound", type=int, default=512)
    c.add_argument("--max-steps", type=int, default=256)
    c.add_argument("--batch", help="file with one --gens value per line")
    c.add_argument("--jobs", type=int, default=1)

    h = sub.add_parser("hensel", help="solve s^d/s' = g for s = t + ...")
    common(h, steps=8)
    h.add_argument("--poly", help="monic polynomial g")

    v = sub.add_parser("veronese-check", help="Veronese membership and the coefficient law")
    common(v)
    v.add_argument("--gens")
    v.add_argument("--d", type=int)
    v.add_argument("--poly", help="build the chart from this monic g instead of a generator")
    v.add_argument("--closure", action="store_true", help="test the closure basis up to --bound")

    g = sub.add_parser("wn-growth", help="cumulative dimensions of C_k(V) in W_n")
    common(g, steps=20)
    g.add_argument("--gens", help='generators separated by ";", components by ","')

    f = sub.add_parser("wn-filtration", help="d_ij dimensions of the L_ij filtration")
    common(f)
    f.add_argument("--gens")
    f.add_argument("--full-wn", type=int, default=0, metavar="N", help="use W_N itself")
    f.add_argument("--i", type=int, default=1)
    f.add_argument("--j", type=int, default=0)
    f.add_argument("--schedule", help="comma-separated degree bounds (default 4,6,8)")
    f.add_argument("--samples", type=int, default=100)
    f.add_argument("--abelianisation", action="store_true")

    s = sub.add_parser("selftest", help="run built-in consistency checks")
    s.add_argument("--format", choices=["json", "text"], default="json")
    return p


def exit_code_for(exc: BaseException) -> int | None:
    if isinstance(exc, (BoundInsufficient, InsufficientPrecision)):
        return EXIT_BOUND
    if isinstance(exc, DegenerateInput):
        return EXIT_DEGENERATE
    if isinstance(exc, (MalformedInput, ValueError, ZeroDivisionError)):
        return EXIT_MALFORMED
    return None


def render(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def _text(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    res = doc.get("result")
    if isinstance(res, dict):
        lines += [f"  {k}: {v}" for k, v in sorted(res.items())]
    elif isinstance(res, list):
        lines += [f"  [{k}] {json.dumps(r, sort_keys=True)}" for k, r in enumerate(res)]
    if doc.get("error"):
        lines.append(f"  error: {doc['error']['message']}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code, doc = COMMANDS[ns.command](ns)
    except Exception as exc:
        code = exit_code_for(exc)
        if code is None:
            raise
        doc = {"inputs": {}, "options": {}, "result": None, "certificates": {},
               "escalations": [], "timing": {},
               "error": {"type": type(exc).__name__, "message": str(exc)}}
        print(f"wittkit {ns.command}: {exc}", file=sys.stderr)
    doc["command"] = ns.command
    out = render(doc) if ns.format == "json" else _text(doc)
    print(out)
    print(f"wittkit {ns.command}: exit {code} in {time.perf_counter() - start:.3f}s",
          file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
