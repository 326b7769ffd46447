"""Command-line front end.

Every verb reads JSON (files or "-" for stdin), writes one deterministic
JSON document to stdout, and exits 0 on a definitive affirmative verdict,
1 on a definitive negative, 2 on Unknown or a blown budget, 3 on bad
input.  All numbers use the bit-exact text grammar of the exact module.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import amalgam, coding, dvs, equiv, limitbuilder, ramsey, space
from .exact import ExactError, parse

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _load_set(path: str) -> dvs.DistanceSet:
    return dvs.DistanceSet.from_json(_read_json(path))


def _load_space(path: str) -> space.Space:
    return space.Space.from_json(_read_json(path))


def _load_code(path: str) -> coding.DvsCode:
    return coding.DvsCode.from_json(_read_json(path))


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        i, j = part.split(":")
        out.append((int(i), int(j)))
    return out


def _clause_json(report: dict) -> dict:
    out = {}
    for key, st in report.items():
        entry = {"status": st.status}
        if st.witness is not None:
            entry["witness"] = [str(w) for w in st.witness]
        out[key] = entry
    return out


def cmd_gen_dvs(args) -> int:
    d = dvs.gen_delta_alpha(parse(args.alpha), args.height, parse(args.bound))
    _emit(d.to_json())
    return EXIT_YES


def cmd_close(args) -> int:
    d = dvs.close(_load_set(args.set), parse(args.bound), args.budget)
    _emit(d.to_json())
    return EXIT_YES


def cmd_check_triangle(args) -> int:
    d = _load_set(args.delta)
    x, y, z = (parse(t) for t in args.triple.split(","))
    ok = dvs.delta_triangle(x, y, z, d)
    _emit({"triangle": ok})
    return EXIT_YES if ok else EXIT_NO


def cmd_check_equiv(args) -> int:
    d1, d2 = _load_set(args.d1), _load_set(args.d2)
    if args.bijection:
        pairs = [(parse(a), parse(b)) for a, b in _read_json(args.bijection)]
        ok = equiv.triangle_bijection_check(d1, d2, pairs)
        _emit({"fragment_consistent": ok})
        return EXIT_YES if ok else EXIT_NO
    w = equiv.scaling_witness(d1, d2)
    if w is None:
        _emit({"witness": None})
        return EXIT_NO
    _emit({"witness": {"r": str(w.ratio)}})
    return EXIT_YES


def cmd_gl2(args) -> int:
    verdict = equiv.gl2_equivalent(parse(args.alpha), parse(args.beta), args.height)
    out = {"status": verdict.status}
    if verdict.matrix is not None:
        out["matrix"] = verdict.matrix.to_json()
    _emit(out)
    if verdict.status == equiv.EQUIVALENT:
        return EXIT_YES
    if verdict.status == equiv.INEQUIVALENT:
        return EXIT_NO
    return EXIT_UNKNOWN


def cmd_amalgamate(args) -> int:
    b, c = _load_space(args.b), _load_space(args.c)
    overlap = _parse_pairs(args.overlap) if args.overlap else []
    out = amalgam.free_amalgam(b, c, overlap)
    _emit(out.to_json())
    return EXIT_YES


def cmd_saturate(args) -> int:
    m, d = _load_space(args.space), _load_set(args.delta)
    result, report = limitbuilder.saturate(m, d, args.k, args.max_points, args.max_pairs)
    _emit(
        {
            "space": result.to_json(),
            "checked": report.checked,
            "skipped": len(report.unrealized),
        }
    )
    return EXIT_YES if report.empty else EXIT_UNKNOWN


def cmd_check_extension(args) -> int:
    m, d = _load_space(args.space), _load_set(args.delta)
    report = limitbuilder.extension_property_check(m, d, args.k, args.max_pairs)
    _emit(
        {
            "checked": report.checked,
            "unrealized": [
                {
                    "subset": list(e.subset),
                    "dists": [str(v) for v in e.dists],
                    "slot": e.slot,
                }
                for e in report.unrealized
            ],
        }
    )
    return EXIT_YES if report.empty else EXIT_NO


def cmd_perturb(args) -> int:
    m, d = _load_space(args.space), _load_set(args.delta)
    pairs = _parse_pairs(args.pairs)
    out, images = limitbuilder.density_perturb(m, pairs, parse(args.eps), d, args.max_points)
    _emit({"space": out.to_json(), "images": images})
    return EXIT_YES


def cmd_extend_isometry(args) -> int:
    m = _load_space(args.space)
    p = space.PartialIsometry(m, tuple(_parse_pairs(args.pairs)))
    out, p2 = limitbuilder.extend_partial_isometry(m, p, args.point, args.max_points)
    _emit({"space": out.to_json(), "pairs": [list(t) for t in p2.pairs]})
    return EXIT_YES


def cmd_check_arrow(args) -> int:
    c, b, a = _load_space(args.c), _load_space(args.b), _load_space(args.a)
    verdict = ramsey.arrow(c, b, a, args.k, args.budget)
    out = {
        "status": verdict.status,
        "copies_a": verdict.copies_a,
        "copies_b": verdict.copies_b,
        "nodes": verdict.nodes,
    }
    if verdict.bad_coloring is not None:
        out["bad_coloring"] = {",".join(map(str, t)): col for t, col in sorted(verdict.bad_coloring.items())}
    _emit(out)
    if verdict.status == ramsey.HOLDS:
        return EXIT_YES
    if verdict.status == ramsey.FAILS:
        return EXIT_NO
    return EXIT_UNKNOWN


def cmd_check_rigid(args) -> int:
    x = _load_space(args.space)
    rigid = ramsey.is_rigid(x)
    _emit({"rigid": rigid})
    return EXIT_YES if rigid else EXIT_NO


def cmd_encode_code(args) -> int:
    d = _load_set(args.set)
    _emit(coding.encode_dvs(d).to_json())
    return EXIT_YES


def cmd_check_code(args) -> int:
    report = coding.validate_code(_load_code(args.code))
    _emit({"clauses": _clause_json(report), "note": coding.PREFIX_SEMANTICS})
    bad = any(st.status == coding.VIOLATED for st in report.values())
    return EXIT_NO if bad else EXIT_YES


def cmd_check_sim(args) -> int:
    res = coding.sim_check(_load_code(args.c1), _load_code(args.c2))
    if res is None:
        _emit({"sim": None, "note": coding.PREFIX_SEMANTICS})
        return EXIT_NO
    g, r = res
    _emit({"sim": {"permutation": list(g), "r": str(r)}, "note": coding.PREFIX_SEMANTICS})
    return EXIT_YES


def cmd_check_approx(args) -> int:
    g = coding.approx_check(_load_code(args.c1), _load_code(args.c2))
    if g is None:
        _emit({"approx": None, "note": coding.PREFIX_SEMANTICS})
        return EXIT_NO
    _emit({"approx": {"permutation": list(g)}, "note": coding.PREFIX_SEMANTICS})
    return EXIT_YES


def cmd_triangle_structure(args) -> int:
    s = coding.triangle_structure(_load_set(args.set))
    if args.other:
        t = coding.triangle_structure(_load_set(args.other))
        m = coding.ts_isomorphic(s, t)
        _emit({"isomorphism": list(m) if m is not None else None})
        return EXIT_YES if m is not None else EXIT_NO
    _emit(
        {
            "universe": [str(v) for v in s.universe],
            "relation": sorted(list(t) for t in s.relation),
        }
    )
    return EXIT_YES


def _sample_from_arg(text):
    if not text:
        return None
    return [Fraction(t) for t in text.split(",")]


def cmd_encode_model(args) -> int:
    m = coding.model_encode(_load_set(args.set), _sample_from_arg(args.sample))
    _emit(m.to_json())
    return EXIT_YES


def cmd_check_theory(args) -> int:
    m = coding.model_encode(_load_set(args.set), _sample_from_arg(args.sample))
    report = coding.check_theory_T(m)
    _emit({"clauses": _clause_json(report)})
    bad = any(st.status == coding.VIOLATED for st in report.values())
    return EXIT_NO if bad else EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deltaspace")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen-dvs", help="generate a surd-shift fragment")
    p.add_argument("--alpha", required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--bound", required=True)
    p.set_defaults(fn=cmd_gen_dvs)

    p = sub.add_parser("close", help="close a fragment under truncated sums")
    p.add_argument("--set", required=True)
    p.add_argument("--bound", required=True)
    p.add_argument("--budget", type=int, default=4096)
    p.set_defaults(fn=cmd_close)

    p = sub.add_parser("check-triangle")
    p.add_argument("--delta", required=True)
    p.add_argument("--triple", required=True, help="x,y,z in exact grammar")
    p.set_defaults(fn=cmd_check_triangle)

    p = sub.add_parser("check-equiv")
    p.add_argument("--d1", required=True)
    p.add_argument("--d2", required=True)
    p.add_argument("--bijection", help="JSON list of [x, y] value pairs")
    p.set_defaults(fn=cmd_check_equiv)

    p = sub.add_parser("gl2")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--height", type=int, default=10)
    p.set_defaults(fn=cmd_gl2)

    p = sub.add_parser("amalgamate")
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--overlap", default="", help="i:j pairs, comma separated")
    p.set_defaults(fn=cmd_amalgamate)

    p = sub.add_parser("saturate")
    p.add_argument("--space", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--max-points", type=int, default=64)
    p.add_argument("--max-pairs", type=int, default=1000000)
    p.set_defaults(fn=cmd_saturate)

    p = sub.add_parser("check-extension")
    p.add_argument("--space", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--max-pairs", type=int, default=1000000)
    p.set_defaults(fn=cmd_check_extension)

    p = sub.add_parser("perturb")
    p.add_argument("--space", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--pairs", required=True, help="source:image index pairs")
    p.add_argument("--eps", required=True)
    p.add_argument("--max-points", type=int, default=64)
    p.set_defaults(fn=cmd_perturb)

    p = sub.add_parser("extend-isometry")
    p.add_argument("--space", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--point", type=int, required=True)
    p.add_argument("--max-points", type=int, default=64)
    p.set_defaults(fn=cmd_extend_isometry)

    p = sub.add_parser("check-arrow")
    p.add_argument("--c", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--jobs", type=int, default=1, help="accepted; search runs sequentially")
    p.set_defaults(fn=cmd_check_arrow)

    p = sub.add_parser("check-rigid")
    p.add_argument("--space", required=True)
    p.set_defaults(fn=cmd_check_rigid)

    p = sub.add_parser("encode-code")
    p.add_argument("--set", required=True)
    p.set_defaults(fn=cmd_encode_code)

    p = sub.add_parser("check-code")
    p.add_argument("--code", required=True)
    p.set_defaults(fn=cmd_check_code)

    p = sub.add_parser("check-sim")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.set_defaults(fn=cmd_check_sim)

    p = sub.add_parser("check-approx")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.set_defaults(fn=cmd_check_approx)

    p = sub.add_parser("triangle-structure")
    p.add_argument("--set", required=True)
    p.add_argument("--other", help="second fragment: check isomorphism instead")
    p.set_defaults(fn=cmd_triangle_structure)

    p = sub.add_parser("encode-model")
    p.add_argument("--set", required=True)
    p.add_argument("--sample", help="comma-separated positive rationals")
    p.set_defaults(fn=cmd_encode_model)

    p = sub.add_parser("check-theory")
    p.add_argument("--set", required=True)
    p.add_argument("--sample")
    p.set_defaults(fn=cmd_check_theory)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (dvs.BudgetExceeded, limitbuilder.BudgetExceeded, coding.BudgetExceeded) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (ExactError, dvs.DvsError, space.SpaceError, amalgam.AmalgamError,
            equiv.EquivError, ramsey.RamseyError, coding.CodingError,
            limitbuilder.BuilderError,
            FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
