"""Command-line front end.

Exit codes: 0 ok / isometric, 1 I/O or parse error, 2 validation error,
3 not isometric, 4 certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .oracle import DEFAULT_SEED, certify
from .trace_form import (
    FieldSpec,
    GramMatrix,
    SpecError,
    UnsupportedDegree,
    closed_form_coefficients,
    discriminant,
    enumerate_specs,
    expansion_coefficients,
    field_circulant,
    gram_matrix,
    is_isometric,
    signature,
    validate_spec,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_NOT_ISOMETRIC = 3
EXIT_CERT_FAIL = 4


class DocumentError(ValueError):
    pass


def spec_from_document(doc) -> FieldSpec:
    """Parse a SpecDocument; raises DocumentError on schema problems."""
    if not isinstance(doc, dict):
        raise DocumentError("spec document must be a JSON object")
    unknown = set(doc) - {"degree", "ramified", "label"}
    if unknown:
        raise DocumentError(f"unknown keys: {sorted(unknown)}")
    degree = doc.get("degree")
    ramified = doc.get("ramified", [])
    label = doc.get("label")
    if not isinstance(degree, int) or isinstance(degree, bool):
        raise DocumentError("'degree' must be an integer")
    if not isinstance(ramified, list):
        raise DocumentError("'ramified' must be a list")
    pairs = []
    for item in ramified:
        if not isinstance(item, dict) or set(item) != {"p", "e"}:
            raise DocumentError(f"ramified entries must be {{'p', 'e'}} objects, got {item!r}")
        p, e = item["p"], item["e"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (p, e)):
            raise DocumentError(f"'p' and 'e' must be integers, got {item!r}")
        pairs.append((p, e))
    if label is not None and not isinstance(label, str):
        raise DocumentError("'label' must be a string")
    return FieldSpec.of(degree, pairs, label)


def spec_to_document(spec: FieldSpec) -> dict:
    doc = {"degree": spec.degree, "ramified": [{"p": r.p, "e": r.e} for r in spec.ramified]}
    if spec.label is not None:
        doc["label"] = spec.label
    return doc


def load_spec(path: str) -> FieldSpec:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return spec_from_document(json.loads(text))


def coefficients_document(spec: FieldSpec) -> dict:
    try:
        table = closed_form_coefficients(spec)
        source = "closed_form"
    except UnsupportedDegree:
        table = expansion_coefficients(field_circulant(spec))
        source = "expansion"
    return {
        "a": {str(d): a for d, a in sorted(table.coefficients.items())},
        "epsilon": table.epsilon,
        "source": source,
    }


def report_document(spec: FieldSpec, oracle: Optional[dict] = None) -> dict:
    gram = gram_matrix(spec)
    return {
        "spec": spec_to_document(spec),
        "gram": gram.tolist(),
        "coefficients": coefficients_document(spec),
        "discriminant": str(discriminant(spec)),
        "signature": list(signature(spec)),
        "oracle": oracle,
    }


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def render_csv(gram: GramMatrix) -> str:
    return "\n".join(",".join(str(x) for x in row) for row in gram.rows)


def render_latex(gram: GramMatrix) -> str:
    body = " \\\\\n".join(" & ".join(str(x) for x in row) for row in gram.rows)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"


def cmd_gram(args) -> int:
    spec = validate_spec(load_spec(args.spec))
    if args.format == "csv":
        print(render_csv(gram_matrix(spec)))
    elif args.format == "latex":
        print(render_latex(gram_matrix(spec)))
    else:
        print(dumps(report_document(spec)))
    return EXIT_OK


def cmd_compare(args) -> int:
    a = validate_spec(load_spec(args.spec_a))
    b = validate_spec(load_spec(args.spec_b))
    verdict = is_isometric(a, b)
    doc = {
        "isometric": verdict.isometric,
        "reason": verdict.reason,
        "degrees": [a.degree, b.degree],
        "discriminants": [str(d) for d in verdict.discriminants],
        "gram": verdict.gram.tolist() if verdict.gram is not None else None,
    }
    print(dumps(doc))
    return EXIT_OK if verdict.isometric else EXIT_NOT_ISOMETRIC


def cmd_certify(args) -> int:
    if args.trials < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return EXIT_IO
    spec = validate_spec(load_spec(args.spec))
    report = certify(spec, trials=args.trials, seed=args.seed)
    print(dumps(report_document(spec, report.to_dict())))
    if not report.passed:
        print(f"certification failed for roots {report.counterexample['roots']}", file=sys.stderr)
        return EXIT_CERT_FAIL
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.degree < 1 or args.max_conductor < 1:
        print("error: --degree and --max-conductor must be >= 1", file=sys.stderr)
        return EXIT_IO
    status = EXIT_OK
    for spec in enumerate_specs(args.degree, args.max_conductor):
        if args.certify:
            report = certify(spec, trials=args.trials, seed=args.seed)
            print(dumps(report_document(spec, report.to_dict())))
            if not report.passed:
                status = EXIT_CERT_FAIL
        else:
            print(dumps(spec_to_document(spec)))
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclotrace",
        description="Integral trace forms of tame cyclic number fields.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gram", help="canonical Gram matrix and invariants")
    g.add_argument("spec", help="spec JSON file ('-' for stdin)")
    g.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    g.set_defaults(func=cmd_gram)

    c = sub.add_parser("compare", help="decide isometry of two trace forms")
    c.add_argument("spec_a")
    c.add_argument("spec_b")
    c.set_defaults(func=cmd_compare)

    k = sub.add_parser("certify", help="check the Gram matrix against the cyclotomic oracle")
    k.add_argument("spec")
    k.add_argument("--trials", type=int, default=3)
    k.add_argument("--seed", type=int, default=DEFAULT_SEED)
    k.set_defaults(func=cmd_certify)

    e = sub.add_parser("enumerate", help="list all specs of a degree up to a conductor bound")
    e.add_argument("--degree", type=int, required=True)
    e.add_argument("--max-conductor", type=int, required=True)
    e.add_argument("--certify", action="store_true")
    e.add_argument("--trials", type=int, default=3)
    e.add_argument("--seed", type=int, default=DEFAULT_SEED)
    e.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
