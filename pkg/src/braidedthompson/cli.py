"""Command line front end.

Exit codes: 0 when a result or verdict was computed, 1 when a verification
run reports failures, 2 on usage or format errors.  Inline JSON arguments
also accept @path to read the JSON from a file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .braid import BraidWord, full_twist, half_twist
from .characters import (
    Character,
    abelian_image,
    evaluate,
    sigma_membership,
    subgroup_finiteness,
)
from .diagram import (
    Diagram,
    hnn_rewrite,
    in_deferred_subgroup,
    multiply,
    psi,
    x_gen,
)
from .simplicial import (
    SimplicialComplex,
    complete_graph,
    connectivity_report,
    graph_distance,
    homology,
    matching_complex,
    path_graph,
)
from .steinfarley import (
    CubeVertex,
    ascending_link,
    build_patch,
    cube_span,
    descending_link_shadow,
    patch_check,
    split_vertex,
)
from .forest import SupportOverlapError
from .verification import SuiteOptions, run_suite, suite_names

NAMED_WORDS = {"id", "twist", "twist2"}


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def _parse_braid(text: str, strands: int | None) -> BraidWord:
    if text in NAMED_WORDS:
        if strands is None:
            raise ValueError(f"named word {text!r} needs --n")
        if text == "id":
            return BraidWord.identity(strands)
        if text == "twist":
            return half_twist(strands)
        return full_twist(strands)
    data = _load_json(text)
    if isinstance(data, list):
        if strands is None:
            raise ValueError("a bare letter list needs --n")
        return BraidWord(strands, tuple(int(x) for x in data))
    return BraidWord.from_json(data)


def _parse_diagram(text: str) -> Diagram:
    return Diagram.from_json(_load_json(text))


def _parse_character(args: argparse.Namespace) -> Character:
    return Character(
        Fraction(args.a), Fraction(args.b), Fraction(args.c), Fraction(args.d)
    )


def _emit(args: argparse.Namespace, human: str, payload: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _write_dot(args: argparse.Namespace, k: SimplicialComplex) -> None:
    if getattr(args, "dot", None):
        with open(args.dot, "w") as fh:
            fh.write(k.to_dot())


# -- braid --------------------------------------------------------------------


def cmd_braid_compose(args) -> int:
    words = [_parse_braid(w, args.n) for w in args.word]
    out = words[0]
    for w in words[1:]:
        out = out.compose(w)
    print(json.dumps(out.free_reduced().to_json()))
    return 0


def cmd_braid_equal(args) -> int:
    lhs = _parse_braid(args.lhs, args.n)
    rhs = _parse_braid(args.rhs, args.n)
    equal = lhs.equals(rhs)
    _emit(args, "EQUAL" if equal else "NOT-EQUAL", {"equal": equal})
    return 0


def cmd_braid_winding(args) -> int:
    w = _parse_braid(args.word, args.n)
    value = w.winding_number(args.i, args.j)
    _emit(args, str(value), {"i": args.i, "j": args.j, "winding": value})
    return 0


def cmd_braid_twist(args) -> int:
    w = half_twist(args.n) if args.half else full_twist(args.n)
    print(json.dumps(w.to_json()))
    return 0


# -- element ------------------------------------------------------------------


def cmd_element_multiply(args) -> int:
    out = multiply(_parse_diagram(args.lhs), _parse_diagram(args.rhs))
    print(json.dumps(out.to_json()))
    return 0


def cmd_element_reduce(args) -> int:
    print(json.dumps(_parse_diagram(args.element).reduced().to_json()))
    return 0


def cmd_element_equal(args) -> int:
    equal = _parse_diagram(args.lhs).equals(_parse_diagram(args.rhs))
    _emit(args, "EQUAL" if equal else "NOT-EQUAL", {"equal": equal})
    return 0


def cmd_element_classify(args) -> int:
    flags = _parse_diagram(args.element).classify()
    human = ", ".join(f"{key}: {'yes' if val else 'no'}" for key, val in flags.items())
    _emit(args, human, flags)
    return 0


def cmd_element_member(args) -> int:
    member = in_deferred_subgroup(_parse_diagram(args.element), args.address)
    _emit(args, "IN" if member else "NOT-IN", {"address": args.address, "member": member})
    return 0


def cmd_element_rewrite(args) -> int:
    k_minus, core, k_plus = hnn_rewrite(_parse_diagram(args.element), args.address, args.side)
    print(
        json.dumps(
            {"k_minus": k_minus, "core": core.to_json(), "k_plus": k_plus, "side": args.side}
        )
    )
    return 0


def cmd_element_psi(args) -> int:
    print(json.dumps(psi(_parse_diagram(args.element), args.n).to_json()))
    return 0


def cmd_element_generator(args) -> int:
    print(json.dumps(x_gen(args.address).to_json()))
    return 0


# -- char ---------------------------------------------------------------------


def cmd_char_image(args) -> int:
    img = abelian_image(_parse_diagram(args.element))
    payload = {
        "left_depth": img.left_depth,
        "right_depth": img.right_depth,
        "end_winding": img.end_winding,
        "adjacent_winding": img.adjacent_winding,
    }
    human = " ".join(f"{key}={val}" for key, val in payload.items())
    _emit(args, human, payload)
    return 0


def cmd_char_evaluate(args) -> int:
    value = evaluate(_parse_character(args), _parse_diagram(args.element))
    _emit(args, str(value), {"value": str(value)})
    return 0


def cmd_char_sigma(args) -> int:
    chi = _parse_character(args)
    member = sigma_membership(chi, args.m)
    if member:
        _emit(args, "IN-SIGMA", {"member": True, "m": args.m})
    else:
        region = "coordinate ray" if args.m == 1 else "convex hull"
        _emit(
            args,
            f"NOT-IN-SIGMA (region: {region})",
            {"member": False, "m": args.m, "region": region},
        )
    return 0


def cmd_char_finiteness(args) -> int:
    rows = _load_json(args.generators)
    report = subgroup_finiteness([tuple(Fraction(x) for x in row) for row in rows])
    human = report.verdict
    if report.witness is not None:
        human += f" (witness {report.witness})"
    _emit(args, human, report.to_json())
    return 0


# -- complex ------------------------------------------------------------------


def _build_complex(args) -> SimplicialComplex:
    sources = [args.path_edges is not None, args.complete is not None, args.file is not None]
    if sum(sources) != 1:
        raise ValueError("give exactly one of --path-edges, --complete, --file")
    if args.path_edges is not None:
        return matching_complex(path_graph(args.path_edges))
    if args.complete is not None:
        return matching_complex(complete_graph(args.complete))
    return SimplicialComplex.from_json(_load_json("@" + args.file))


def _complex_source_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--matching", action="store_true", help="matching complex source")
    sub.add_argument("--path-edges", type=int, default=None)
    sub.add_argument("--complete", type=int, default=None)
    sub.add_argument("--file", default=None, help="complex JSON file")


def _homology_name(betti: int, torsion: list[int]) -> str:
    parts = []
    if betti == 1:
        parts.append("Z")
    elif betti > 1:
        parts.append(f"Z^{betti}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def cmd_complex_matching(args) -> int:
    k = _build_complex(args)
    _write_dot(args, k)
    print(json.dumps(k.to_json()))
    return 0


def cmd_complex_homology(args) -> int:
    k = _build_complex(args)
    _write_dot(args, k)
    hom = homology(k)
    if args.figures:
        from .report import render_homology_figure

        os.makedirs(args.figures, exist_ok=True)
        render_homology_figure(hom, os.path.join(args.figures, "homology.png"))
    if args.json:
        print(json.dumps({"homology": [[b, t] for b, t in hom]}))
    else:
        for degree, (betti, torsion) in enumerate(hom):
            print(f"H{degree} = {_homology_name(betti, torsion)}")
    return 0


def cmd_complex_connectivity(args) -> int:
    report = connectivity_report(_build_complex(args))
    data = report.to_json()
    human = ", ".join(f"{key}={val}" for key, val in data.items())
    _emit(args, human, data)
    return 0


def cmd_complex_distance(args) -> int:
    k = _build_complex(args)
    u = tuple(_load_json(args.u))
    v = tuple(_load_json(args.v))
    d = graph_distance(k, u, v)
    _emit(args, str(d), {"distance": None if d == float("inf") else d})
    return 0


def cmd_complex_flag(args) -> int:
    flag = _build_complex(args).is_flag()
    _emit(args, "FLAG" if flag else "NOT-FLAG", {"flag": flag})
    return 0


# -- stein --------------------------------------------------------------------


def _comb_vertex(height: int) -> CubeVertex:
    v = CubeVertex.base()
    while v.height < height:
        v = split_vertex(v, v.height)
    return v


def cmd_stein_patch(args) -> int:
    patch = build_patch(CubeVertex.base(), args.height_bound, args.braid_bound)
    heights: dict[int, int] = {}
    for v in patch:
        heights[v.height] = heights.get(v.height, 0) + 1
    payload = {
        "vertices": len(patch),
        "heights": {str(h): heights[h] for h in sorted(heights)},
        "braid_bound": args.braid_bound,
    }
    human = f"{len(patch)} vertices, braid bound {args.braid_bound}, " + ", ".join(
        f"h{h}: {c}" for h, c in sorted(heights.items())
    )
    _emit(args, human, payload)
    return 0


def cmd_stein_asc_link(args) -> int:
    link = ascending_link(_comb_vertex(args.height))
    _write_dot(args, link)
    payload = {"dimension": link.dim(), "f_vector": link.f_vector()}
    _emit(args, f"simplex of dimension {link.dim()}, f-vector {link.f_vector()}", payload)
    return 0


def cmd_stein_desc_link(args) -> int:
    shadow = descending_link_shadow(_comb_vertex(args.height), args.braid_bound)
    k = shadow.complex
    _write_dot(args, k)
    matchings = sorted(
        sorted(pair for pair in matching) for matching in shadow.projection.values()
    )
    payload = {
        "vertices": len(k.vertices),
        "dimension": k.dim(),
        "braid_bound": shadow.braid_bound,
        "matchings": matchings,
    }
    human = (
        f"{len(k.vertices)} directions, top dimension {k.dim()}, "
        f"braid bound {shadow.braid_bound} (shadow only; completeness unknown)"
    )
    _emit(args, human, payload)
    return 0


def cmd_stein_cube_span(args) -> int:
    downs = [int(x) for x in _load_json(args.downs)]
    ups = [int(x) for x in _load_json(args.ups)]
    try:
        cube = cube_span(_comb_vertex(args.height), downs, ups)
    except SupportOverlapError as exc:
        _emit(args, f"SUPPORT-OVERLAP: {exc}", {"spanned": False, "reason": str(exc)})
        return 0
    payload = {
        "spanned": True,
        "dimension": cube.dimension,
        "corners": len(cube.corners),
        "bottom_height": cube.bottom.height,
        "top_height": cube.top.height,
    }
    human = (
        f"cube of dimension {cube.dimension} with {len(cube.corners)} corners, "
        f"bottom height {cube.bottom.height}, top height {cube.top.height}, rejoined"
    )
    _emit(args, human, payload)
    return 0


def cmd_stein_check(args) -> int:
    patch = build_patch(CubeVertex.base(), args.height_bound, args.braid_bound)
    report = patch_check(patch, n=args.depth, braid_bound=args.braid_bound)
    data = report.to_json()
    if args.csv:
        from .report import write_patch_csv

        write_patch_csv(report, args.csv)
    if args.figures:
        from .report import render_patch_figure

        os.makedirs(args.figures, exist_ok=True)
        render_patch_figure(report, os.path.join(args.figures, "patch.png"))
    human = ", ".join(f"{key}={val}" for key, val in data.items())
    _emit(args, human, data)
    return 0 if report.all_links_flag and report.all_links_full else 1


# -- verify -------------------------------------------------------------------


def cmd_verify(args) -> int:
    opts = SuiteOptions(
        samples=args.samples,
        seed=args.seed,
        braid_bound=args.braid_bound,
        height_bound=args.height_bound,
    )
    try:
        rows = run_suite(args.suite, opts)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    if args.csv:
        from .report import write_check_csv

        write_check_csv(rows, args.csv)
    if args.figures:
        from .report import render_check_figure

        os.makedirs(args.figures, exist_ok=True)
        render_check_figure(rows, os.path.join(args.figures, f"{args.suite}.png"))
    if args.json:
        print(json.dumps([row.to_json() for row in rows]))
    else:
        for row in rows:
            print(row.line())
    return 0 if all(row.passed for row in rows) else 1


# -- roundtrip ----------------------------------------------------------------


def _canonical_payload(data: object) -> dict | list:
    if isinstance(data, dict):
        keys = set(data)
        if keys == {"neg", "braid", "pos"}:
            return Diagram.from_json(data).reduced().to_json()
        if keys == {"strands", "letters"}:
            return BraidWord.from_json(data).free_reduced().to_json()
        if keys == {"vertices", "maximal_faces"}:
            return SimplicialComplex.from_json(data).to_json()
        if keys == {"left_depth", "right_depth", "end_winding", "adjacent_winding"}:
            return Character.from_json(data).to_json()
        raise ValueError(f"unrecognised object keys {sorted(keys)}")
    if isinstance(data, list):
        from .forest import Forest, Tree

        if all(isinstance(x, str) for x in data):
            return Tree.from_json(data).to_json()
        return Forest.from_json(data).to_json()
    raise ValueError(f"unrecognised payload {data!r}")


def cmd_roundtrip(args) -> int:
    with open(args.path) as fh:
        data = json.load(fh)
    print(json.dumps(_canonical_payload(data)))
    return 0


# -- parser -------------------------------------------------------------------


def _add_json_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bthom",
        description="Braided tree diagram arithmetic, decision procedures, and reports.",
    )
    top = parser.add_subparsers(dest="group", required=True)

    braid = top.add_parser("braid", help="braid word arithmetic").add_subparsers(
        dest="action", required=True
    )
    sub = braid.add_parser("compose")
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--word", action="append", required=True)
    sub.set_defaults(func=cmd_braid_compose)
    sub = braid.add_parser("equal")
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--lhs", required=True)
    sub.add_argument("--rhs", required=True)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_braid_equal)
    sub = braid.add_parser("winding")
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--word", required=True)
    sub.add_argument("--i", type=int, required=True)
    sub.add_argument("--j", type=int, required=True)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_braid_winding)
    sub = braid.add_parser("twist")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--half", action="store_true")
    sub.set_defaults(func=cmd_braid_twist)

    element = top.add_parser("element", help="group element operations").add_subparsers(
        dest="action", required=True
    )
    sub = element.add_parser("multiply")
    sub.add_argument("--lhs", required=True)
    sub.add_argument("--rhs", required=True)
    sub.set_defaults(func=cmd_element_multiply)
    sub = element.add_parser("reduce")
    sub.add_argument("--element", required=True)
    sub.set_defaults(func=cmd_element_reduce)
    sub = element.add_parser("equal")
    sub.add_argument("--lhs", required=True)
    sub.add_argument("--rhs", required=True)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_element_equal)
    sub = element.add_parser("classify")
    sub.add_argument("--element", required=True)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_element_classify)
    sub = element.add_parser("member")
    sub.add_argument("--element", required=True)
    sub.add_argument("--address", required=True)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_element_member)
    sub = element.add_parser("rewrite")
    sub.add_argument("--element", required=True)
    sub.add_argument("--address", required=True)
    sub.add_argument("--side", choices=("left", "right"), default="left")
    sub.set_defaults(func=cmd_element_rewrite)
    sub = element.add_parser("psi")
    sub.add_argument("--element", required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.set_defaults(func=cmd_element_psi)
    sub = element.add_parser("generator")
    sub.add_argument("--address", default="")
    sub.set_defaults(func=cmd_element_generator)

    char = top.add_parser("char", help="characters and finiteness").add_subparsers(
        dest="action", required=True
    )
    sub = char.add_parser("image")
    sub.add_argument("--element", required=True)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_char_image)
    for name, fn, needs_m in [("evaluate", cmd_char_evaluate, False), ("sigma", cmd_char_sigma, True)]:
        sub = char.add_parser(name)
        for coeff in "abcd":
            sub.add_argument(f"--{coeff}", default="0")
        if needs_m:
            sub.add_argument("--m", type=int, required=True)
        else:
            sub.add_argument("--element", required=True)
        _add_json_flag(sub)
        sub.set_defaults(func=fn)
    sub = char.add_parser("finiteness")
    sub.add_argument("--generators", required=True, help="JSON rows of four rationals")
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_char_finiteness)

    complex_ = top.add_parser("complex", help="matching complexes").add_subparsers(
        dest="action", required=True
    )
    for name, fn in [
        ("matching", cmd_complex_matching),
        ("homology", cmd_complex_homology),
        ("connectivity", cmd_complex_connectivity),
        ("distance", cmd_complex_distance),
        ("flag", cmd_complex_flag),
    ]:
        sub = complex_.add_parser(name)
        _complex_source_args(sub)
        _add_json_flag(sub)
        if name == "matching":
            sub.add_argument("--dot", default=None)
        if name == "homology":
            sub.add_argument("--dot", default=None)
            sub.add_argument("--figures", default=None)
        if name == "distance":
            sub.add_argument("--u", required=True)
            sub.add_argument("--v", required=True)
        sub.set_defaults(func=fn)

    stein = top.add_parser("stein", help="cube complex patches").add_subparsers(
        dest="action", required=True
    )
    sub = stein.add_parser("patch")
    sub.add_argument("--height-bound", type=int, default=4)
    sub.add_argument("--braid-bound", type=int, default=2)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_stein_patch)
    sub = stein.add_parser("asc-link")
    sub.add_argument("--height", type=int, required=True)
    sub.add_argument("--dot", default=None)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_stein_asc_link)
    sub = stein.add_parser("desc-link")
    sub.add_argument("--height", type=int, required=True)
    sub.add_argument("--braid-bound", type=int, default=2)
    sub.add_argument("--dot", default=None)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_stein_desc_link)
    sub = stein.add_parser("cube-span")
    sub.add_argument("--height", type=int, required=True)
    sub.add_argument("--downs", default="[]")
    sub.add_argument("--ups", default="[]")
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_stein_cube_span)
    sub = stein.add_parser("check")
    sub.add_argument("--height-bound", type=int, default=4)
    sub.add_argument("--braid-bound", type=int, default=2)
    sub.add_argument("--depth", type=int, default=None, help="subcomplex depth n")
    sub.add_argument("--csv", default=None)
    sub.add_argument("--figures", default=None)
    _add_json_flag(sub)
    sub.set_defaults(func=cmd_stein_check)

    verify = top.add_parser("verify", help="named deterministic check suites")
    verify.add_argument("suite", help=f"one of: {', '.join(suite_names())}")
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--braid-bound", type=int, default=None)
    verify.add_argument("--height-bound", type=int, default=None)
    verify.add_argument("--csv", default=None)
    verify.add_argument("--figures", default=None)
    _add_json_flag(verify)
    verify.set_defaults(func=cmd_verify)

    roundtrip = top.add_parser("roundtrip", help="decode, canonicalize, re-encode JSON")
    roundtrip.add_argument("path")
    roundtrip.set_defaults(func=cmd_roundtrip)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else int(exc.code)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
