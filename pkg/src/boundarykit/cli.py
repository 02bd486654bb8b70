"""Command-line interface.

Subcommands:

* ``boundary``   — boundary report for one subset over a box or a JSON
                   graph-pair file;
* ``verify``     — run a dp / k / lemma campaign and emit a JSON report;
* ``hypotheses`` — check a theorem's premises on a box;
* ``enumerate``  — stream connected subsets of a box as JSON lines.

Exit codes: 0 = pass/success, 1 = verification failure (or failed premise
check), 2 = usage or input error.  All structured output goes to stdout as
JSON with sorted keys; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .boundary import full_report, inner_boundary_variants, report_to_json
from .errors import InputError
from .graphs import Graph, GraphPair, vertexset_from_json, vertexset_to_json
from .harness import (MODES, THEOREMS, TrialConfig, enumerate_connected_subsets,
                      hypothesis_report, run_verification)
from .lattice import (FLAVORS, BoxSpec, attach_apex, build_box,
                      margin_interior, parse_box_spec)


def _load_pair_file(path: str) -> GraphPair:
    """Read a graph-pair file: ``{"g": <graph>, "extra_plus_edges": [[u,v],…]}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "g" not in data:
        raise InputError(f"{path}: graph-pair files need a 'g' entry")
    g = Graph.from_json(data["g"])
    extra = data.get("extra_plus_edges", [])
    g_plus = Graph(g.vertex_count, list(g.edges) + [tuple(e) for e in extra],
                   labels=g.labels)
    return GraphPair(g, g_plus)


def _parse_vertex(g: Graph, text: str) -> int:
    """A vertex given as an integer id or a JSON coordinate tuple."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"vertex {text!r} is neither an id nor a coordinate tuple") from None
    if isinstance(data, int):
        g.require_vertex(data)
        return data
    if isinstance(data, list):
        return g.id_of_label(data)
    raise InputError(f"vertex {text!r} is neither an id nor a coordinate tuple")


def _cmd_boundary(args) -> int:
    if (args.box is None) == (args.pair is None):
        raise InputError("give exactly one of --box or --pair")
    if args.box is not None:
        spec = parse_box_spec(args.box)
        g = build_box(spec)
        gprime_flavor = args.gprime or spec.flavor
        if gprime_flavor not in FLAVORS:
            raise InputError(f"--gprime for boxes must be one of {FLAVORS}")
        g_prime = build_box(BoxSpec(spec.d, spec.side, gprime_flavor))
        probe_flavor = args.probe or gprime_flavor
        if probe_flavor not in FLAVORS:
            raise InputError(f"--probe for boxes must be one of {FLAVORS}")
        probe = build_box(BoxSpec(spec.d, spec.side, probe_flavor))
    else:
        pair = _load_pair_file(args.pair)
        g = pair.g
        g_prime = {None: pair.g_plus, "gplus": pair.g_plus, "g": pair.g}.get(args.gprime)
        if g_prime is None:
            raise InputError("--gprime for pair files must be 'g' or 'gplus'")
        probe = {None: g_prime, "g": pair.g, "gplus": pair.g_plus}.get(args.probe)
        if probe is None:
            raise InputError("--probe for pair files must be 'g' or 'gplus'")

    c = vertexset_from_json(g, json.loads(args.set))
    if args.x == "apex":
        g, g_prime, probe = attach_apex(g), attach_apex(g_prime), attach_apex(probe)
        x = g.vertex_count - 1
    else:
        x = _parse_vertex(g, args.x)

    if args.inner:
        rep = inner_boundary_variants(g, g_prime, c, x)
    else:
        rep = full_report(g, g_prime, probe, c, x)
    out = {"schema": 1, **report_to_json(rep, g)}
    print(json.dumps(out, sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    spec = parse_box_spec(args.box)
    mode = args.mode or ("random" if args.trials is not None else "exhaustive")
    trials = args.trials if args.trials is not None else 1000

    x_policy, x_vertex = "apex", None
    if args.x in ("apex", "all-outside"):
        x_policy = args.x
    else:
        x_policy = "fixed"
        x_vertex = _parse_vertex(build_box(BoxSpec(spec.d, spec.side, "plain")), args.x)

    cfg = TrialConfig(theorem=args.theorem, box=spec, mode=mode,
                      max_size=args.max_size, trials=trials, seed=args.seed,
                      margin=args.margin, x_policy=x_policy, x_vertex=x_vertex,
                      probe=args.probe, g_prime=args.gplus)
    fixed_c = None
    if args.set is not None:
        fixed_c = vertexset_from_json(build_box(BoxSpec(spec.d, spec.side, "plain")),
                                      json.loads(args.set))
    report = run_verification(cfg, skip_hypotheses=args.skip_hypotheses,
                              fixed_c=fixed_c)
    print(json.dumps(report.to_json(include_elapsed=not args.no_elapsed),
                     sort_keys=True))
    return 0 if report.passed else 1


def _cmd_hypotheses(args) -> int:
    spec = parse_box_spec(args.box)
    rep = hypothesis_report(args.theorem, spec, probe=args.probe,
                            g_prime=args.gplus)
    print(json.dumps(rep, sort_keys=True))
    return 0 if rep["pass"] else 1


def _cmd_enumerate(args) -> int:
    spec = parse_box_spec(args.box)
    g = build_box(spec)
    allowed = margin_interior(g, args.margin)
    for s in enumerate_connected_subsets(g, args.max_size, allowed=allowed):
        print(json.dumps(vertexset_to_json(g, s)))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundarykit",
        description="Boundary-connectivity toolkit: boundary reports, premise "
                    "checks, and exhaustive/randomized theorem verification on "
                    "lattice boxes.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("boundary", help="boundary report for one subset")
    b.add_argument("--box", help="box spec, e.g. z2:5:plain")
    b.add_argument("--pair", help="path to a JSON graph-pair file")
    b.add_argument("--set", required=True,
                   help="JSON vertex set: ids or coordinate tuples")
    b.add_argument("--x", required=True,
                   help="observer: 'apex', an id, or a coordinate tuple")
    b.add_argument("--gprime", help="adjacency graph (box flavor, or g/gplus)")
    b.add_argument("--probe",
                   help="connectivity probe graph (box flavor, or g/gplus); "
                        "defaults to the adjacency graph")
    b.add_argument("--inner", action="store_true",
                   help="report the inner-boundary mirror variants")
    b.set_defaults(func=_cmd_boundary)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("theorem", choices=THEOREMS)
    v.add_argument("--box", required=True, help="box spec, e.g. z2:4:plain")
    v.add_argument("--mode", choices=MODES,
                   help="default: random when --trials is given, else exhaustive")
    v.add_argument("--max-size", type=int, default=6, dest="max_size")
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--margin", type=int, default=2)
    v.add_argument("--x", default="apex",
                   help="'apex', 'all-outside', an id, or a coordinate tuple")
    v.add_argument("--probe", choices=FLAVORS,
                   help="dp probe override (negative controls)")
    v.add_argument("--gplus", choices=FLAVORS,
                   help="k adjacency override (negative controls)")
    v.add_argument("--set", help="verify one fixed subset instead of generating")
    v.add_argument("--skip-hypotheses", action="store_true",
                   dest="skip_hypotheses",
                   help="run even when the theorem premises fail")
    v.add_argument("--no-elapsed", action="store_true", dest="no_elapsed",
                   help="omit wall-clock time for byte-comparable reports")
    v.set_defaults(func=_cmd_verify)

    h = sub.add_parser("hypotheses", help="check a theorem's premises on a box")
    h.add_argument("theorem", choices=["dp", "k"])
    h.add_argument("--box", required=True)
    h.add_argument("--probe", choices=FLAVORS, help="dp augmentation override")
    h.add_argument("--gplus", choices=FLAVORS, help="k augmentation override")
    h.set_defaults(func=_cmd_hypotheses)

    e = sub.add_parser("enumerate", help="stream connected subsets as JSON lines")
    e.add_argument("--box", required=True)
    e.add_argument("--max-size", type=int, required=True, dest="max_size")
    e.add_argument("--margin", type=int, default=0)
    e.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv: Optional[list] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
