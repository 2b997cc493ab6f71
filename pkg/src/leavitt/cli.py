"""Command-line front end: JSON in, JSON out.

Exit codes: 0 success, 1 parse error, 2 precondition violation,
3 verification failure (with a machine-readable counterexample).  The
environment variable LEAVITT_DEPTH overrides the default depth 8.
"""

import argparse
import json
import os
import sys

from .boundary import (
    ClassElement,
    class_element_to_json,
    isotropy,
    orbit_points,
    point_from_json,
)
from .chen import ChenElt, ChenModule, chen_desc, quotient_chen_desc
from .classify import catalog, catalog_json
from .errors import LeavittError, ParseError
from .field import parse_field_spec, parse_poly, parse_scalar
from .graph import Digraph, FinPath
from .groupoid import restrict
from .lpa import AlgebraElement, TwistParam, element_str, parse_element
from .suites import run_suite

EXIT_OK, EXIT_PARSE, EXIT_PRECOND, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _default_depth():
    raw = os.environ.get("LEAVITT_DEPTH")
    if raw is None:
        return 8
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"LEAVITT_DEPTH={raw!r} is not an integer") from None


def build_parser():
    top = _Parser(prog="leavitt", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, field=True):
        p.add_argument("-g", "--graph", required=True, help="graph JSON file")
        if field:
            p.add_argument("-K", "--field", required=True, help='field spec, e.g. "Q", "F5", "F2[t]/(t^2+t+1)"')

    p = sub.add_parser("validate", help="check a graph JSON file")
    p.add_argument("graph_file")

    p = sub.add_parser("nf", help="normal form of an element expression")
    common(p)
    p.add_argument("expr")

    p = sub.add_parser("mul", help="product of two element expressions")
    common(p)
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = sub.add_parser("act", help="act on a Chen-type module element")
    common(p)
    p.add_argument("--module", required=True, help="base point JSON (inline or @file)")
    p.add_argument("--twist", help="twist JSON: {edge: scalar string}")
    p.add_argument("--poly", help="modulus f(t) for the quotient module V^f")
    p.add_argument("expr")
    p.add_argument("element", help='module element JSON: {"terms": [{"prefix": [...], "shift": 0, "coeff": "1"}]}')

    p = sub.add_parser("isotropy", help="isotropy group of a boundary point")
    common(p, field=False)
    p.add_argument("--point", required=True)

    p = sub.add_parser("orbit", help="orbit of a boundary point to a depth")
    common(p, field=False)
    p.add_argument("--point", required=True)
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("restrict", help="restriction of a Chen-type module at a point")
    common(p)
    p.add_argument("--module", required=True)
    p.add_argument("--twist")
    p.add_argument("--poly")
    p.add_argument("--point", required=True)
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("classify", help="catalog of spectral simple modules")
    common(p)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--max-cycle-len", type=int, required=True)
    p.add_argument("--poly", action="append", default=None,
                   help="explicit quotient modulus (repeatable; required over Q when cycles exist)")

    p = sub.add_parser("verify", help="run the theorem instance suites")
    common(p)
    p.add_argument("--suite", choices=["triv", "twist", "res", "cor2", "all"], default="all")
    p.add_argument("--depth", type=int, default=None)

    return top


def _load_json_arg(raw):
    """Accept inline JSON or a file path."""
    s = raw.strip()
    if s.startswith("{") or s.startswith("["):
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad inline JSON: {exc}") from None
    if s.startswith("@"):
        s = s[1:]
    try:
        with open(s) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {s!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {s!r}: {exc}") from None


def _load_graph(path):
    return Digraph.from_json(_load_json_arg(path))


def _module_desc(g, K, args):
    x = point_from_json(g, _load_json_arg(args.module))
    if args.poly and args.twist:
        raise ParseError("--poly and --twist are mutually exclusive")
    if args.poly:
        f = parse_poly(K, args.poly)
        return quotient_chen_desc(x, f, K)
    twist = None
    if args.twist:
        raw = _load_json_arg(args.twist)
        twist = TwistParam(g, K, {e: parse_scalar(K, s) for e, s in raw.items()})
    return chen_desc(x, K, twist)


def _element_terms_json(elt):
    return [
        {"prefix": list(ce.prefix.edges), "shift": ce.shift, "coeff": str(c)}
        for ce, c in elt.sorted_terms()
    ]


def _parse_module_element(mod, data):
    if "terms" not in data:
        data = {"terms": [data]}
    total = mod.zero()
    F = mod.coeff_field
    for item in data["terms"]:
        pre = item.get("prefix", [])
        shift_k = item.get("shift", 0)
        if pre:
            fp = FinPath.of_edges(mod.graph, pre)
        else:
            fp = FinPath.trivial(mod.graph, mod.x.vertex_at(shift_k))
        ce = ClassElement.make(mod.x, fp, shift_k)
        coeff = parse_scalar(F, str(item.get("coeff", "1")))
        total = total + ChenElt(mod, {ce: coeff})
    return total


def _algebra_terms_json(x: AlgebraElement):
    out = []
    for m, c in x.sorted_terms():
        out.append(
            {
                "mu": list(m.mu.edges),
                "mu_vertex": m.mu.base,
                "nu": list(m.nu.edges),
                "nu_vertex": m.nu.base,
                "coeff": str(c),
            }
        )
    return out


def _cmd_validate(args):
    g = _load_graph(args.graph_file)
    return EXIT_OK, {
        "ok": True,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "sinks": g.sinks(),
    }


def _cmd_nf(args):
    g = _load_graph(args.graph)
    K = parse_field_spec(args.field)
    x = parse_element(g, K, args.expr)
    return EXIT_OK, {
        "input": args.expr,
        "normal_form": element_str(x),
        "terms": _algebra_terms_json(x),
    }


def _cmd_mul(args):
    g = _load_graph(args.graph)
    K = parse_field_spec(args.field)
    x = parse_element(g, K, args.lhs) * parse_element(g, K, args.rhs)
    return EXIT_OK, {"product": element_str(x), "terms": _algebra_terms_json(x)}


def _cmd_act(args):
    g = _load_graph(args.graph)
    K = parse_field_spec(args.field)
    desc = _module_desc(g, K, args)
    mod = ChenModule(desc)
    z = parse_element(g, K, args.expr)
    m = _parse_module_element(mod, _load_json_arg(args.element))
    result = mod.act(z, m)
    return EXIT_OK, {"result": {"terms": _element_terms_json(result)}}


def _cmd_isotropy(args):
    g = _load_graph(args.graph)
    x = point_from_json(g, _load_json_arg(args.point))
    desc = isotropy(x)
    if desc.is_trivial:
        return EXIT_OK, {"kind": "trivial"}
    return EXIT_OK, {
        "kind": "cyclic",
        "period": desc.period,
        "cycle": list(desc.cycle.cycle.edges),
    }


def _cmd_orbit(args):
    g = _load_graph(args.graph)
    x = point_from_json(g, _load_json_arg(args.point))
    depth = args.depth if args.depth is not None else _default_depth()
    res = orbit_points(x, depth)
    return EXIT_OK, {
        "points": [class_element_to_json(ce) for ce in res.points],
        "count": len(res.points),
        "exhausted": res.exhausted,
    }


def _cmd_restrict(args):
    g = _load_graph(args.graph)
    K = parse_field_spec(args.field)
    desc = _module_desc(g, K, args)
    mod = ChenModule(desc)
    x = point_from_json(g, _load_json_arg(args.point))
    depth = args.depth if args.depth is not None else _default_depth()
    r = restrict(mod, x, depth)
    return EXIT_OK, {
        "dim": r.dim,
        "basis": [
            {**class_element_to_json(lab), "coeff_index": j} for lab, j in r.basis
        ],
        "matrix": [[str(v) for v in row] for row in r.matrix],
    }


def _cmd_classify(args):
    g = _load_graph(args.graph)
    K = parse_field_spec(args.field)
    supplied = None
    if args.poly:
        supplied = [parse_poly(K, s) for s in args.poly]
    entries = catalog(g, K, args.max_deg, args.max_cycle_len, supplied)
    return EXIT_OK, catalog_json(entries, K)


def _cmd_verify(args):
    g = _load_graph(args.graph)
    K = parse_field_spec(args.field)
    depth = args.depth if args.depth is not None else _default_depth()
    claims = run_suite(args.suite, g, K, depth)
    ok = all(c.ok for c in claims)
    payload = {
        "suite": args.suite,
        "ok": ok,
        "claims": [c.to_json() for c in claims],
    }
    if not ok:
        payload["counterexample"] = next(
            c.to_json() for c in claims if not c.ok
        )
    return EXIT_OK if ok else EXIT_VERIFY, payload


_HANDLERS = {
    "validate": _cmd_validate,
    "nf": _cmd_nf,
    "mul": _cmd_mul,
    "act": _cmd_act,
    "isotropy": _cmd_isotropy,
    "orbit": _cmd_orbit,
    "restrict": _cmd_restrict,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
}


def run(argv) -> int:
    """Parse argv, execute, print JSON to stdout, return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        code, payload = _HANDLERS[args.command](args)
    except ParseError as exc:
        print(json.dumps({"ok": False, "error": str(exc), "kind": "parse"}))
        return EXIT_PARSE
    except (LeavittError, ZeroDivisionError) as exc:
        print(json.dumps({"ok": False, "error": str(exc), "kind": "precondition"}))
        return EXIT_PRECOND
    print(json.dumps(payload, indent=2))
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
