"""Command-line interface: text DSL ingestion, reports, DOT emission.

Exit codes: 0 all checks pass, 1 a check failed, 2 a verdict is unknown,
3 malformed input.  Reports are deterministic given the same inputs and
seed; every header records field, bound, seed and budgets so the finite
universe caveat is auditable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cotorsion as ct
from .comma import build_setup, from_triplet, functor_T
from .decomp import enumerate_universe
from .errors import CommahomError, SpecParseError, UndecidedError
from .exactla import ExactMatrix, Field
from .gorenstein import check_cocompatible, gorenstein_injectives
from .homalg import ext_dim, is_injective, is_projective
from .quiver import Arrow, Quiver, QuiverAlgebra, build_algebra, make_path, standard_module
from .rep import Rep, hom_dim, is_iso
from .sample import A2_SPEC, GLUED_SPEC, HEXAGON_SPEC, PARTITION_SPEC, POINT_SPEC

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# parsing


def _vertex_id(token: str):
    return int(token) if token.lstrip("-").isdigit() else token


def parse_algebra(text: str) -> QuiverAlgebra:
    field = None
    vertices: list = []
    arrows: list[Arrow] = []
    relations: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "field":
                spec = parts[1]
                if spec in ("Q", "QQ"):
                    field = Field.rationals()
                elif spec.startswith("GF(") and spec.endswith(")"):
                    field = Field.prime(int(spec[3:-1]))
                else:
                    raise SpecParseError(f"unknown field {spec!r}", lineno)
            elif kind == "vertex":
                vertices.append(_vertex_id(parts[1]))
            elif kind == "arrow":
                # arrow name: src -> tgt
                name = parts[1].rstrip(":")
                if parts[3] != "->":
                    raise SpecParseError("expected 'arrow name: src -> tgt'", lineno)
                arrows.append(Arrow(name, _vertex_id(parts[2]), _vertex_id(parts[4])))
            elif kind == "relation":
                relations.append(parts[1:])
            else:
                raise SpecParseError(f"unknown directive {kind!r}", lineno)
        except (IndexError, ValueError) as exc:
            raise SpecParseError(f"malformed line: {raw.strip()!r} ({exc})", lineno) from exc
    if field is None:
        raise SpecParseError("missing 'field' line")
    quiver = Quiver(tuple(vertices), tuple(arrows))
    rels = [make_path(quiver, r) for r in relations]
    return build_algebra(field, quiver, rels)


def parse_module(text: str, alg: QuiverAlgebra) -> Rep:
    lines = [
        (no, raw.split("#", 1)[0].strip())
        for no, raw in enumerate(text.splitlines(), start=1)
    ]
    lines = [(no, l) for no, l in lines if l]
    if not lines:
        raise SpecParseError("empty module spec")
    first_no, first = lines[0]
    if first.startswith("standard"):
        token = first.split()[1]
        kind_char, rest = token[0], token[1:]
        if not (rest.startswith("(") and rest.endswith(")")):
            raise SpecParseError(f"malformed standard module {token!r}", first_no)
        vertex = _vertex_id(rest[1:-1])
        kind = {"S": "simple", "P": "projective", "I": "injective", "E": "injective"}.get(kind_char)
        if kind is None:
            raise SpecParseError(f"unknown standard module kind {kind_char!r}", first_no)
        return standard_module(alg, kind, vertex)
    dims = {v: 0 for v in alg.quiver.vertices}
    maps: dict = {}
    for no, line in lines:
        if line.startswith("dims:"):
            for assignment in line[len("dims:") :].split():
                v, d = assignment.split("=")
                dims[_vertex_id(v)] = int(d)
        elif line.startswith("map"):
            rest = line[len("map") :].strip()
            name, matrix_text = rest.split("=", 1)
            try:
                rows = json.loads(matrix_text.strip())
            except json.JSONDecodeError as exc:
                raise SpecParseError(f"bad matrix literal: {exc}", no) from exc
            maps[name.strip()] = rows
        else:
            raise SpecParseError(f"unknown module directive {line!r}", no)
    f = alg.field
    action = {}
    for a in alg.quiver.arrows:
        r, c = dims[a.target], dims[a.source]
        if a.name in maps:
            rows = maps[a.name]
            if len(rows) != r or any(len(row) != c for row in rows):
                raise SpecParseError(f"matrix for {a.name} must be {r}x{c}")
            action[a.name] = ExactMatrix.from_rows(f, rows) if r and c else ExactMatrix.zeros(f, r, c)
        else:
            action[a.name] = ExactMatrix.zeros(f, r, c)
    return Rep(alg, dims, action)


def parse_partition(text: str) -> dict:
    partition: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        side = parts[0].upper()
        if side not in ("R", "S"):
            raise SpecParseError(f"partition side must be R or S, got {parts[0]!r}", lineno)
        for token in parts[1:]:
            partition[_vertex_id(token)] = side
    return partition


def parse_class(text: str, alg: QuiverAlgebra, name: str = "") -> "ct.ObjectClass":
    from .decomp import ObjectClass, decompose

    blocks: list[list[str]] = [[]]
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped == "--":
            blocks.append([])
        else:
            blocks[-1].append(raw)
    members: list[Rep] = []
    for block in blocks:
        body = "\n".join(block)
        if not body.strip():
            continue
        rep = parse_module(body, alg)
        for part in decompose(rep):
            if not any(is_iso(part, m) for m in members):
                members.append(part)
    return ObjectClass(alg, tuple(members), name=name)


# ---------------------------------------------------------------------------
# reporting helpers


def module_label(m: Rep, alg: QuiverAlgebra) -> str:
    for kind, letter in (("simple", "S"), ("projective", "P"), ("injective", "E")):
        for v in alg.quiver.vertices:
            if is_iso(m, standard_module(alg, kind, v)):
                return f"{letter}({v})"
    support = ",".join(f"{v}:{m.dims[v]}" for v in alg.quiver.vertices if m.dims[v])
    return f"M[{support}]"


def header(alg: QuiverAlgebra, bound, seed, extra=""):
    lines = [
        f"field: {alg.field}",
        f"dim_bound: {bound}",
        f"seed: {seed}",
        "budgets: iso-search 2^14, iteration cap 16, dimension budget 64",
    ]
    if extra:
        lines.append(extra)
    return lines


def _emit_dot(path: str, universe, alg):
    labels = [module_label(m, alg) for m in universe.members]
    lines = ["digraph homs {"]
    for k, lab in enumerate(labels):
        lines.append(f'  n{k} [label="{lab}"];')
    for i, m in enumerate(universe.members):
        for j, n in enumerate(universe.members):
            if i == j:
                continue
            d = hom_dim(m, n)
            if d:
                lines.append(f'  n{i} -> n{j} [label="{d}"];')
    lines.append("}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_basis(args) -> int:
    alg = parse_algebra(_read(args.algebra))
    out = {
        "dim": alg.dim,
        "basis": [str(p) for p in alg.path_basis],
        "relations": [str(r) for r in alg.relations],
    }
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"field: {alg.field}")
        print(f"dim {alg.dim}")
        for p in alg.path_basis:
            print(f"  {p} : {p.start} -> {p.end}")
    return EXIT_OK


def cmd_universe(args) -> int:
    alg = parse_algebra(_read(args.algebra))
    universe = enumerate_universe(alg, args.bound, strategy=args.strategy, seed=args.seed)
    rows = []
    for m in universe.members:
        rows.append(
            {
                "label": module_label(m, alg),
                "dims": list(m.dim_vector()),
                "projective": is_projective(m),
                "injective": is_injective(m),
            }
        )
    if args.json:
        print(json.dumps({"count": len(rows), "members": rows, "strategy": universe.strategy,
                          "exhaustive": universe.exhaustive, "bands_present": universe.bands_present},
                         indent=2, sort_keys=True))
    else:
        for line in header(alg, args.bound, args.seed, f"strategy: {universe.strategy}"):
            print(line)
        print(f"{len(rows)} indecomposables")
        for r in rows:
            flags = "".join(["P" if r["projective"] else "", "I" if r["injective"] else ""])
            print(f"  {r['label']:<14} dims {tuple(r['dims'])} {flags}")
        if universe.bands_present:
            print("warning: band families present; census flagged non-exhaustive")
    if args.dot:
        _emit_dot(args.dot, universe, alg)
    return EXIT_OK if universe.exhaustive else EXIT_UNKNOWN


def cmd_ext(args) -> int:
    alg = parse_algebra(_read(args.algebra))
    m = parse_module(_read(args.module_m), alg)
    n = parse_module(_read(args.module_n), alg)
    value = ext_dim(args.i, m, n)
    if args.json:
        print(json.dumps({"i": args.i, "dim": value}))
    else:
        print(f"dim Ext^{args.i} = {value}")
    return EXIT_OK


def cmd_gi(args) -> int:
    alg = parse_algebra(_read(args.algebra))
    universe = enumerate_universe(alg, args.bound, seed=args.seed)
    result = gorenstein_injectives(alg, universe)
    members = [
        {
            "label": module_label(m, alg),
            "dims": list(m.dim_vector()),
            "certificate": result.certificates[k],
        }
        for k, m in enumerate(result.object_class.members)
    ]
    if args.json:
        print(json.dumps({"count": len(members), "members": members,
                          "left_self_injective_dim": result.left_self_injective_dim.value,
                          "right_self_injective_dim": result.right_self_injective_dim.value},
                         indent=2, sort_keys=True))
    else:
        for line in header(alg, args.bound, args.seed):
            print(line)
        print(f"self-injective dimension: left {result.left_self_injective_dim.value}, "
              f"right {result.right_self_injective_dim.value}")
        print(f"{len(members)} Gorenstein-injective members")
        for r in members:
            print(f"  {r['label']:<14} dims {tuple(r['dims'])} [{r['certificate']}]")
    if result.unknown_members:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_cotorsion(args) -> int:
    alg = parse_algebra(_read(args.algebra))
    universe = enumerate_universe(alg, args.bound, seed=args.seed)
    left = parse_class(_read(args.left), alg, name="left")
    right = parse_class(_read(args.right), alg, name="right")
    report = ct.cotorsion_report(left, right, universe)
    out = {
        "is_pair": report.is_pair,
        "is_hereditary": report.is_hereditary_pair,
        "is_complete": report.is_complete,
    }
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for line in header(alg, args.bound, args.seed):
            print(line)
        for key, val in out.items():
            print(f"{key}: {'unknown' if val is None else val}")
    if any(v is None for v in out.values()):
        return EXIT_UNKNOWN
    return EXIT_OK if all(out.values()) else EXIT_FAIL


def cmd_comma(args) -> int:
    r_alg = parse_algebra(_read(args.r_algebra))
    s_alg = parse_algebra(_read(args.s_algebra))
    lam = parse_algebra(_read(args.lam))
    partition = parse_partition(_read(args.partition))
    setup = build_setup(r_alg, s_alg, lam, partition)
    universes = ct.SetupUniverses(
        enumerate_universe(r_alg, args.bound, seed=args.seed),
        enumerate_universe(s_alg, args.bound, seed=args.seed),
        enumerate_universe(lam, args.bound, seed=args.seed),
    )
    if args.left:
        x = parse_class(_read(args.left), r_alg, name="X")
    else:
        x = ct.injective_members(universes.r)
    if args.right:
        y = parse_class(_read(args.right), s_alg, name="Y")
    else:
        y = ct.injective_members(universes.s)
    report = ct.check_lifting(setup, x, y, universes)
    cocompat = check_cocompatible(setup, r_universe=universes.r)
    if args.json:
        print(json.dumps({
            "dim_identity": lam.dim == r_alg.dim + s_alg.dim + len(setup.cross_paths),
            "checks": [{"name": c.name, "verdict": c.verdict, "detail": c.detail} for c in report.checks],
            "cocompatible": {"c1": cocompat.c1, "c2": cocompat.c2, "w1": cocompat.w1},
        }, indent=2, sort_keys=True))
    else:
        for line in header(lam, args.bound, args.seed):
            print(line)
        print(f"dim identity: {lam.dim} = {r_alg.dim} + {s_alg.dim} + {len(setup.cross_paths)}")
        print(f"cocompatibility: C1 {cocompat.c1}, C2 {cocompat.c2}, W1 {cocompat.w1}")
        for c in report.checks:
            status = "PASS" if c.verdict else ("UNKNOWN" if c.verdict is None else "FAIL")
            print(f"[{status}] {c.name} ({c.detail})")
    if report.any_unknown:
        return EXIT_UNKNOWN
    return EXIT_OK if report.all_pass else EXIT_FAIL


def cmd_preenvelope(args) -> int:
    alg = parse_algebra(_read(args.algebra))
    m = parse_module(_read(args.module), alg)
    left = parse_class(_read(args.pair[0]), alg, name="left")
    right = parse_class(_read(args.pair[1]), alg, name="right")
    approx = ct.special_preenvelope(m, left, right)
    out = {
        "module": module_label(m, alg),
        "envelope": module_label(approx.middle, alg) if approx.middle.total_dim else "0",
        "cokernel": module_label(approx.complement, alg) if approx.complement.total_dim else "0",
        "steps": approx.steps,
    }
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"0 -> {out['module']} -> {out['envelope']} -> {out['cokernel']} -> 0  ({approx.steps} steps)")
    return EXIT_OK


def cmd_verify_example(args) -> int:
    from .verify import run_example_suite

    # exercise the DSL parsers against the embedded specs first
    s_alg = parse_algebra(HEXAGON_SPEC)
    lam_alg = parse_algebra(GLUED_SPEC)
    r_alg = parse_algebra(POINT_SPEC)
    partition = parse_partition(PARTITION_SPEC)
    build_setup(r_alg, s_alg, lam_alg, partition)
    print(f"parsed bundled specs: dims {r_alg.dim}/{s_alg.dim}/{lam_alg.dim}")

    checks = run_example_suite(bound=args.bound, seed=args.seed)
    worst = EXIT_OK
    for c in checks:
        status = "PASS" if c.ok else ("UNKNOWN" if c.ok is None else "FAIL")
        print(f"[{status}] {c.name} ({c.seconds}s) {c.detail}")
        if c.ok is None:
            worst = max(worst, EXIT_UNKNOWN)
        elif not c.ok:
            worst = max(worst, EXIT_FAIL)
    print("all checks passed" if worst == EXIT_OK else "checks finished with failures or unknowns")
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commahom",
        description="Homological calculator for quiver algebras and their triangular gluings",
    )
    default_seed = int(os.environ.get("COMMAHOM_SEED", "0"))
    parser.add_argument("--seed", type=int, default=default_seed, help="random seed (COMMAHOM_SEED overrides the default)")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="path basis and dimension of an algebra")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("universe", help="census of indecomposables up to a bound")
    p.add_argument("algebra")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--strategy", choices=["auto", "brute", "string"], default="auto")
    p.add_argument("--dot", help="write the hom graph in graph-description format")
    p.set_defaults(func=cmd_universe)

    p = sub.add_parser("ext", help="dim Ext^i between two modules")
    p.add_argument("algebra")
    p.add_argument("module_m")
    p.add_argument("module_n")
    p.add_argument("--i", type=int, default=1)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("gi", help="Gorenstein-injective members of the universe")
    p.add_argument("algebra")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_gi)

    p = sub.add_parser("cotorsion", help="pair / hereditary / complete verdicts for two classes")
    p.add_argument("algebra")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_cotorsion)

    p = sub.add_parser("comma", help="build a triangular setup and run the lifting battery")
    p.add_argument("r_algebra")
    p.add_argument("s_algebra")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--left", help="class file over the R algebra (default: injectives)")
    p.add_argument("--right", help="class file over the S algebra (default: injectives)")
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_comma)

    p = sub.add_parser("preenvelope", help="special preenvelope of a module for a pair")
    p.add_argument("algebra")
    p.add_argument("module")
    p.add_argument("--pair", nargs=2, required=True, metavar=("LEFT", "RIGHT"))
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_preenvelope)

    p = sub.add_parser("verify-example", help="reproduce the bundled example end to end")
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_verify_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UndecidedError as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except CommahomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
