"""Batch command-line front end.

Every subcommand prints either a human-readable report (the default) or a
machine-readable JSON document selected with --format machine.  Both views
are rendered from the same payload, and the machine document round-trips
through parse_document.  Results go to stdout, diagnostics to stderr, and
the exit status is zero exactly when the computation succeeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .chern import FormalBundle, chern_character, newton_s
from .grothendieck import FiniteCommutativeMonoid, completion
from .homology import cohomology, cpn_complex, sphere_complex
from .ktheory import (
    KClass,
    Space,
    bott_check,
    bott_matrix,
    chern_character_map,
    k_groups,
    replay_induction,
)
from .linalg import FgAbelianGroup, IntegerMatrix, cokernel, smith_normal_form
from .truncpoly import TruncPoly

FORMAT_VERSION = "1"


@dataclass
class OutputDocument:
    """Echo of the command plus its inputs and a typed result payload."""

    command: str
    inputs: dict
    result: dict
    format_version: str = FORMAT_VERSION

    def to_json(self) -> str:
        return json.dumps(
            {
                "format_version": self.format_version,
                "command": self.command,
                "inputs": self.inputs,
                "result": self.result,
            },
            indent=2,
            sort_keys=True,
        )


def parse_document(text: str) -> OutputDocument:
    """Rebuild an OutputDocument from its machine rendering."""
    data = json.loads(text)
    return OutputDocument(
        command=data["command"],
        inputs=data["inputs"],
        result=data["result"],
        format_version=data["format_version"],
    )


# ----------------------------------------------------------------------
# payload builders (JSON-native values only)
# ----------------------------------------------------------------------


def _group_payload(g: FgAbelianGroup) -> dict:
    return {
        "kind": "group",
        "free_rank": g.free_rank,
        "torsion": list(g.torsion),
        "text": g.render(),
    }


def _poly_payload(p: TruncPoly) -> dict:
    return {
        "kind": "poly",
        "order": p.order,
        "coefficients": [str(c) for c in p.coeffs],
        "text": p.render(),
    }


def _space_complex(space: Space):
    if space.kind == "cpn":
        return cpn_complex(space.parameter)
    if space.kind == "sphere":
        return sphere_complex(space.parameter)
    return cpn_complex(0)


# ----------------------------------------------------------------------
# subcommand implementations: each returns an OutputDocument
# ----------------------------------------------------------------------


def _run_cohomology(args) -> OutputDocument:
    space = Space.parse(args.space)
    complex_ = _space_complex(space)
    if args.degree is not None:
        degrees = [args.degree]
    else:
        degrees = list(range(complex_.top + 1))
    rows = [
        {"label": f"H^{k}", "degree": k, **_group_payload(cohomology(complex_, k))}
        for k in degrees
    ]
    result = {"kind": "group-table", "rows": rows}
    inputs = {"space": str(space)}
    if args.degree is not None:
        inputs["degree"] = args.degree
    return OutputDocument("cohomology", inputs, result)


def _run_kgroups(args) -> OutputDocument:
    space = Space.parse(args.space)
    group = k_groups(space, args.q)
    result = dict(_group_payload(group))
    result["label"] = f"K^{args.q}({space.label()})"
    return OutputDocument("kgroups", {"space": str(space), "q": args.q}, result)


def _run_ring(args) -> OutputDocument:
    n = args.n
    if n < 0:
        raise ValueError("n must be nonnegative")
    basis = ["1"] + [f"γ^{k}" if k > 1 else "γ" for k in range(1, n + 1)]
    gamma = KClass.gamma(n)
    table = [
        [(gamma ** i * gamma ** j).render() for j in range(n + 1)]
        for i in range(n + 1)
    ]
    result = {
        "kind": "ring",
        "n": n,
        "presentation": f"Z[γ]/(γ^{n + 1})",
        "basis": basis,
        "products": table,
    }
    return OutputDocument("ring", {"n": n}, result)


def _run_ch(args) -> OutputDocument:
    if args.chern is not None:
        if args.space is not None or args.klass is not None:
            raise ValueError("--chern selects the bundle form; drop the space spec")
        if args.rank is None or args.order is None:
            raise ValueError("--chern needs --rank and --order")
        total = TruncPoly.parse(args.chern, order=args.order)
        bundle = FormalBundle(args.rank, total)
        character = chern_character(bundle, args.order)
        inputs = {"rank": args.rank, "chern": args.chern, "order": args.order}
        return OutputDocument("ch", inputs, _poly_payload(character))
    if args.space is None or args.klass is None:
        raise ValueError("ch needs a space spec with --class, or --rank/--chern/--order")
    space = Space.parse(args.space)
    if space.kind != "cpn":
        raise ValueError("class coefficients make sense on cpn:N only")
    coeffs = [int(t) for t in args.klass.split(",")]
    if len(coeffs) != space.parameter + 1:
        raise ValueError(
            f"expected {space.parameter + 1} coefficients for {space}"
        )
    character = chern_character_map(KClass(space.parameter, tuple(coeffs)))
    inputs = {"space": str(space), "class": args.klass}
    return OutputDocument("ch", inputs, _poly_payload(character))


def _run_trace(args) -> OutputDocument:
    trace = replay_induction(args.n)
    result = {"kind": "induction-trace", **trace.to_json_dict()}
    return OutputDocument("trace", {"n": args.n}, result)


def _run_newton(args) -> OutputDocument:
    poly = newton_s(args.k)
    terms = [
        {"exponents": list(e), "coefficient": str(c)}
        for e, c in sorted(poly.expression.terms.items())
    ]
    result = {
        "kind": "newton",
        "k": args.k,
        "variables": poly.variable_names(),
        "terms": terms,
        "text": poly.render(),
    }
    return OutputDocument("newton", {"k": args.k}, result)


def _run_groth(args) -> OutputDocument:
    with open(args.table, "r", encoding="utf-8") as handle:
        text = handle.read()
    monoid = FiniteCommutativeMonoid.from_text(text)
    group = completion(monoid)
    result = dict(_group_payload(group.carrier))
    result["classes"] = group.class_count
    return OutputDocument("groth", {"table": args.table}, result)


def _run_smith(args) -> OutputDocument:
    with open(args.matrix, "r", encoding="utf-8") as handle:
        matrix = IntegerMatrix.from_text(handle.read())
    form = smith_normal_form(matrix)
    result = {
        "kind": "smith",
        "rows": matrix.rows,
        "cols": matrix.cols,
        "d": list(form.d),
        "rank": form.rank,
        "cokernel": _group_payload(cokernel(matrix)),
    }
    return OutputDocument("smith", {"matrix": args.matrix}, result)


def _run_bott_check(args) -> OutputDocument:
    matrix = bott_matrix()
    result = {
        "kind": "bott-check",
        "matrix": matrix.row_lists(),
        "unimodular": bott_check(),
    }
    return OutputDocument("bott-check", {}, result)


# ----------------------------------------------------------------------
# human rendering
# ----------------------------------------------------------------------


def _render_human(doc: OutputDocument) -> str:
    result = doc.result
    kind = result.get("kind")
    lines = []
    if kind == "group-table":
        for row in result["rows"]:
            lines.append(f"{row['label']} = {row['text']}")
    elif kind == "group":
        label = result.get("label")
        lines.append(f"{label} = {result['text']}" if label else result["text"])
        if result.get("classes") is not None:
            lines.append(f"pair classes: {result['classes']}")
    elif kind == "poly":
        lines.append(result["text"])
    elif kind == "ring":
        lines.append(result["presentation"])
        lines.append("basis: " + ", ".join(result["basis"]))
        lines.append("products γ^i * γ^j:")
        for i, row in enumerate(result["products"]):
            lines.append(f"  {result['basis'][i]}: " + ", ".join(row))
    elif kind == "newton":
        lines.append(f"s_{result['k']} = {result['text']}")
    elif kind == "induction-trace":
        lines.append(f"induction replay for {result['space']}")
        for step in result["steps"]:
            window = " -> ".join(step["window"])
            checks = []
            if step["exactness"]:
                verdict = "ok" if all(step["exactness"]) else "FAILED"
                checks.append(f"exactness {verdict}")
            if step["five_lemma"] is not None:
                checks.append("five-lemma ok" if step["five_lemma"] else "five-lemma FAILED")
            suffix = f" [{'; '.join(checks)}]" if checks else ""
            lines.append(f"step {step['index']} ({step['kind']}, stage {step['stage']}): "
                         f"{window}{suffix}")
            lines.append(f"  => {step['conclusion']}")
        lines.append(f"K^0 = {result['k0']['text']}")
        lines.append(f"K^1 = {result['k1']['text']}")
    elif kind == "smith":
        lines.append("invariant factors: "
                     + (" ".join(str(d) for d in result["d"]) or "(none)"))
        lines.append(f"rank: {result['rank']}")
        lines.append(f"cokernel: {result['cokernel']['text']}")
    elif kind == "bott-check":
        rows = result["matrix"]
        lines.append("matrix: " + "; ".join(" ".join(str(e) for e in row) for row in rows))
        lines.append("unimodular: " + ("yes" if result["unimodular"] else "no"))
    else:
        lines.append(json.dumps(result))
    return "\n".join(lines)


# ----------------------------------------------------------------------
# argument parsing and dispatch
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kproj",
        description="Exact K-theory and cohomology computations for projective "
                    "spaces and spheres.",
    )
    parser.add_argument("--format", choices=("human", "machine"), default="human",
                        help="output format (default: human)")
    parser.add_argument("--version", action="store_true",
                        help="print library and format versions and exit")
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("cohomology", help="integral cohomology of a space")
    p.add_argument("space", help="space spec: cpn:N, sphere:M, or point")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(run=_run_cohomology)

    p = sub.add_parser("kgroups", help="K-group of a space in one degree")
    p.add_argument("space", help="space spec: cpn:N, sphere:M, or point")
    p.add_argument("--q", type=int, default=0)
    p.set_defaults(run=_run_kgroups)

    p = sub.add_parser("ring", help="the virtual-bundle ring on cpn:N")
    p.add_argument("n", type=int)
    p.set_defaults(run=_run_ring)

    p = sub.add_parser("ch", help="Chern character of a class or formal bundle")
    p.add_argument("space", nargs="?", default=None,
                   help="ambient space cpn:N for the class form")
    p.add_argument("--class", dest="klass", default=None,
                   help="comma-separated coefficients against 1, γ, .., γ^n")
    p.add_argument("--rank", type=int, default=None, help="bundle rank (bundle form)")
    p.add_argument("--chern", default=None,
                   help="total Chern class, e.g. \"1+2x+x^2\" (bundle form)")
    p.add_argument("--order", type=int, default=None,
                   help="truncation order (bundle form)")
    p.set_defaults(run=_run_ch)

    p = sub.add_parser("trace", help="replay the K-group induction for cpn:N")
    p.add_argument("n", type=int)
    p.set_defaults(run=_run_trace)

    p = sub.add_parser("newton", help="Newton polynomial s_k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(run=_run_newton)

    p = sub.add_parser("groth", help="group completion of a Cayley-table monoid")
    p.add_argument("--table", required=True, help="Cayley table file")
    p.set_defaults(run=_run_groth)

    p = sub.add_parser("smith", help="Smith normal form of a matrix file")
    p.add_argument("--matrix", required=True,
                   help="matrix file: first line 'rows cols', then entries")
    p.set_defaults(run=_run_smith)

    p = sub.add_parser("bott-check", help="periodicity instance on the 2-sphere")
    p.set_defaults(run=_run_bott_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        print(f"kproj {__version__} (format {FORMAT_VERSION})")
        return 0
    if not getattr(args, "subcommand", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        doc = args.run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "machine":
        print(doc.to_json())
    else:
        print(_render_human(doc))
    return 0


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
