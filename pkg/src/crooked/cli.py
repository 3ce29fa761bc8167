"""Command-line front end: ``crooked analyze | search | witness | export-graph``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager

import numpy as np

from . import codes, graphs, kernels, vbf
from .errors import (
    CrookedError,
    EqualPoints,
    ExponentOutOfRange,
    NonPrimitiveModulus,
    NotNormalized,
    RequiresApn,
    TooLarge,
    UnsupportedDegree,
)
from .formats import random_function, read_truth_table, table_digest
from .gf2m import field_new

SCHEMA = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_PRECONDITION = 4

SEARCH_MAX_M = 9
ANALYZE_GRAPH_MAX_M = 5

GUARDS = f"""\
feasibility guards:
  analyze --preparata   full enumeration at m = 3, membership-only above
  analyze --graph       m <= {ANALYZE_GRAPH_MAX_M} (every vertex is a BFS source)
  export-graph          m <= {graphs.GRAPH_MAX_M}
  search                m <= {SEARCH_MAX_M}

exit codes: 0 ok, 1 census mismatch, 2 malformed input, 3 guard violated,
            4 witness construction precondition failed
"""


class GuardError(Exception):
    pass


class InputError(Exception):
    pass


_INPUT_ERRORS = (
    ExponentOutOfRange,
    UnsupportedDegree,
    NonPrimitiveModulus,
    NotNormalized,
    EqualPoints,
    ValueError,
    OSError,
)


# -- function sources -------------------------------------------------------


def load_function(args) -> tuple[vbf.VectorialFunction, dict]:
    """Build f from --power / --tt / --random and return it with an input descriptor."""
    if args.tt is not None:
        f = read_truth_table(args.tt)
        if f.m != args.m:
            raise InputError(f"truth table has m = {f.m}, command line says {args.m}")
        if args.modulus is not None and args.modulus != f.ctx.modulus:
            raise InputError("--modulus disagrees with the truth-table file")
        source = {"source": "table", "path": str(args.tt)}
    else:
        ctx = field_new(args.m, args.modulus)
        if args.random:
            f = random_function(ctx, np.random.default_rng(args.seed))
            source = {"source": "random", "seed": args.seed}
        else:
            f = vbf.from_power(ctx, args.power)
            source = {"source": "power"}
    desc = {
        "m": f.m,
        "modulus": f.ctx.modulus,
        "exponent": f.exponent,
        "digest": table_digest(f),
        **source,
    }
    return f, desc


# -- analyze ----------------------------------------------------------------


class _Timer:
    def __init__(self):
        self.times: dict[str, float] = {}

    @contextmanager
    def stage(self, name):
        t0 = time.perf_counter()
        yield
        self.times[name] = round(time.perf_counter() - t0, 6)


def analyze(f: vbf.VectorialFunction, desc: dict, code=False, preparata=False, graph=False) -> dict:
    """Run the requested stages and return the report as a JSON-ready dict."""
    if graph and f.m > ANALYZE_GRAPH_MAX_M:
        raise GuardError(f"analyze --graph guard: m <= {ANALYZE_GRAPH_MAX_M}, got m = {f.m}")
    timer = _Timer()
    report: dict = {"schema": SCHEMA, "backend": kernels.BACKEND, "input": desc}

    with timer.stage("apn"):
        report["apn"] = vbf.is_apn(f).to_dict()
    with timer.stage("crooked"):
        verdict = vbf.is_crooked(f)
        report["crooked"] = verdict.to_dict()

    if code:
        with timer.stage("code"):
            report["code"] = code_summary(f)
    if preparata:
        with timer.stage("preparata"):
            report["preparata"] = preparata_summary(f)
    if graph:
        with timer.stage("graph"):
            report["graph"] = graph_summary(f, isinstance(verdict, vbf.Crooked))
    report["timings"] = timer.times
    return report


def code_summary(f: vbf.VectorialFunction) -> dict:
    H = codes.build_parity_check(f)
    d = codes.min_distance_linear(H)
    witnesses = []
    if d < codes.DISTANCE_CAP:
        support = codes.min_weight_at_most(H, d)
        witnesses.append({"support": list(support), "syndrome": H.syndrome(support)})
    return {
        "m": f.m,
        "modulus": f.ctx.modulus,
        "exponent": f.exponent,
        "n": H.n,
        "k": codes.code_dimension(H),
        "min_distance": d,
        "min_distance_capped": d == codes.DISTANCE_CAP,
        "witnesses": witnesses,
    }


def preparata_summary(f: vbf.VectorialFunction) -> dict:
    if f.m > codes.PREPARATA_MAX_M:
        return {"status": "membership-only at this m", "expected_size_if_crooked": codes.expected_preparata_size(f.m)}
    code = codes.preparata_enumerate(f)
    return {
        "status": "enumerated",
        "size": code.size,
        "expected_size_if_crooked": codes.expected_preparata_size(f.m),
        "min_distance": codes.preparata_min_distance(code),
    }


def graph_summary(f: vbf.VectorialFunction, crooked: bool) -> dict:
    G = graphs.build_crooked_graph(f)
    array, counter = graphs.distance_regularity(G)
    out = {
        "N": G.N,
        "degree": int(G.degrees[0]),
        "cover": graphs.check_cover_structure(G).to_dict(),
        "layer_sizes": graphs.distance_partition(G, 0).sizes,
        "intersection_array": None if array is None else array.to_list(),
        "matches_crooked_array": array == graphs.crooked_array(f.m),
        "counterexample": None if counter is None else counter.to_dict(),
        "antipodal": None,
        "classes_are_fibres": None,
    }
    if array is not None and array.diameter == 3:
        classes = graphs.antipodal_classes(G)
        fibres = [tuple(range(s, s + G.fibre_size)) for s in range(0, G.N, G.fibre_size)]
        out["antipodal"] = classes is not None
        out["classes_are_fibres"] = classes == fibres
    return out


def _yn(flag) -> str:
    return {True: "yes", False: "no", None: "n/a"}[flag]


def format_report(report: dict) -> str:
    inp = report["input"]
    head = f"m={inp['m']} modulus={inp['modulus']}"
    head += f" f=x^{inp['exponent']}" if inp["exponent"] is not None else f" table digest={inp['digest']}"
    lines = [head]
    apn = report["apn"]
    lines.append(f"apn={_yn(apn['status'] == 'apn')}")
    if apn["status"] != "apn":
        lines.append(f"  witness a={apn['a']} b={apn['b']} solutions={apn['solutions']}")
    cr = report["crooked"]
    lines.append(f"crooked={_yn(cr['status'] == 'crooked')}")
    if cr["status"] != "crooked":
        fields = " ".join(f"{k}={v}" for k, v in cr.items() if k != "status")
        lines.append(f"  {cr['status']}: {fields}")
    if "code" in report:
        c = report["code"]
        d = c["min_distance"]
        lines.append(f"C_f: n={c['n']} k={c['k']} d(C_f)={'>=6' if c['min_distance_capped'] else d}")
        for w in c["witnesses"]:
            lines.append(f"  weight-{len(w['support'])} codeword support={w['support']} syndrome={w['syndrome']}")
    if "preparata" in report:
        p = report["preparata"]
        if p["status"] == "enumerated":
            md = p["min_distance"]
            lines.append(f"|P_f|={p['size']} d(P_f)={'undefined' if md is None else md}")
        else:
            lines.append(f"P_f: {p['status']}")
    if "graph" in report:
        g = report["graph"]
        lines.append(f"G_f: N={g['N']} degree={g['degree']} layers from 0: {g['layer_sizes']}")
        cov = g["cover"]
        lines.append(
            "  fibres independent={} perfect matchings={} fibre distance>=3={}".format(
                _yn(cov["fibres_independent"]), _yn(cov["perfect_matchings"]), _yn(cov["fibre_distance_at_least_3"])
            )
        )
        if g["intersection_array"] is not None:
            b, c = g["intersection_array"]
            lines.append("  IA={" + ",".join(map(str, b)) + ";" + ",".join(map(str, c)) + "}")
            lines.append(f"  antipodal={_yn(g['antipodal'])} classes=fibres: {_yn(g['classes_are_fibres'])}")
        else:
            ce = g["counterexample"]
            lines.append(
                f"  not distance-regular: v={ce['v']} u={ce['u']} d={ce['d']} "
                f"counts(c,a,b)={ce['counts']} expected={ce['expected']}"
            )
    t = report["timings"]
    lines.append("time: " + " ".join(f"{k}={v:.3f}s" for k, v in t.items()))
    return "\n".join(lines)


# -- search -----------------------------------------------------------------


def search(m: int, modulus: int | None = None) -> dict:
    if m > SEARCH_MAX_M:
        raise GuardError(f"search guard: m <= {SEARCH_MAX_M}, got m = {m}")
    ctx = field_new(m, modulus)
    rows = []
    for cls in vbf.cyclotomic_classes(m):
        d = cls[0]
        f = vbf.from_power(ctx, d)
        apn = isinstance(vbf.is_apn(f), vbf.Apn)
        crooked = isinstance(vbf.is_crooked(f), vbf.Crooked)
        kind = vbf.classify_power_exponent(m, d)
        gold = isinstance(kind, vbf.GoldType)
        rows.append(
            {
                "representative": d,
                "class": cls,
                "apn": apn,
                "crooked": crooked,
                "gold_type": [kind.k, kind.j] if gold else None,
                "consistent": crooked == gold,
            }
        )
    return {
        "schema": SCHEMA,
        "m": m,
        "modulus": ctx.modulus,
        "classes": rows,
        "crooked_exponents": sorted(d for r in rows if r["crooked"] for d in r["class"]),
        "consistent": all(r["consistent"] for r in rows),
    }


def format_search(res: dict) -> str:
    lines = [f"m={res['m']} modulus={res['modulus']}", "rep  apn crooked gold-type  class"]
    for r in res["classes"]:
        gt = "-" if r["gold_type"] is None else f"({r['gold_type'][0]},{r['gold_type'][1]})"
        flag = "" if r["consistent"] else "  MISMATCH"
        lines.append(f"{r['representative']:>4} {_yn(r['apn']):>4} {_yn(r['crooked']):>7} {gt:>9}  {r['class']}{flag}")
    crooked = [r["class"] for r in res["classes"] if r["crooked"]]
    lines.append("crooked classes: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in crooked))
    lines.append(f"crooked <=> gold-type: {_yn(res['consistent'])}")
    return "\n".join(lines)


# -- witness ----------------------------------------------------------------


def witness(f: vbf.VectorialFunction) -> dict:
    verdict = vbf.is_crooked(f)
    if isinstance(verdict, vbf.Crooked):
        return {"schema": SCHEMA, "crooked": True, "verdict": verdict.to_dict()}
    u, w = codes.close_pair_witness(f, verdict)
    return {
        "schema": SCHEMA,
        "crooked": False,
        "verdict": verdict.to_dict(),
        "words": [_word_dict(f, u), _word_dict(f, w)],
        "distance": u.distance(w),
    }


def _word_dict(f, w: codes.PreparataWord) -> dict:
    S, T = w.elements(f)
    return {"hex": w.to_hex(), "S": S, "T": T, "member": codes.word_member(f, w)}


def format_witness(res: dict) -> str:
    if res["crooked"]:
        return "function is crooked"
    v = res["verdict"]
    lines = [f"{v['status']}: " + " ".join(f"{k}={x}" for k, x in v.items() if k != "status")]
    for i, w in enumerate(res["words"], 1):
        lines.append(f"word {i}: {w['hex']} S={w['S']} T={w['T']} member={_yn(w['member'])}")
    lines.append(f"distance {res['distance']}")
    return "\n".join(lines)


# -- argument parsing ---------------------------------------------------------


def _global_options(p: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--json", action="store_true", help="emit JSON instead of text", **kw)
    p.add_argument("--modulus", type=int, help="primitive modulus as a decimal bitmask", **kw)
    p.add_argument("--seed", type=int, help="seed for --random tables", **kw)


def _source_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("m", type=int, help="odd field degree")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--power", type=int, metavar="D", help="f(x) = x^D")
    src.add_argument("--tt", metavar="FILE", help="truth-table file (m / modulus / 2^m values)")
    src.add_argument("--random", action="store_true", help="random table with f(0) = 0 drawn from --seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crooked",
        description="Check crookedness of functions on GF(2^m) via codes and graphs.",
        epilog=GUARDS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="APN/crooked verdicts plus optional code and graph stages", epilog=GUARDS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _source_options(p)
    p.add_argument("--code", action="store_true", help="dimension and minimum distance of C_f")
    p.add_argument("--preparata", action="store_true", help="size and minimum distance of P_f")
    p.add_argument("--graph", action="store_true", help="distance-regularity of G_f")
    _global_options(p, suppress=True)

    p = sub.add_parser("search", help="classify every power exponent by cyclotomic class")
    p.add_argument("m", type=int)
    _global_options(p, suppress=True)

    p = sub.add_parser("witness", help="two words of P_f at distance <= 4 for a non-crooked f")
    _source_options(p)
    _global_options(p, suppress=True)

    p = sub.add_parser("export-graph", help="write G_f as an edge list with a JSON header")
    _source_options(p)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    _global_options(p, suppress=True)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "search":
            res = search(args.m, args.modulus)
            out.write((json.dumps(res) if args.json else format_search(res)) + "\n")
            return EXIT_OK if res["consistent"] else EXIT_MISMATCH

        if args.random and args.seed is None:
            args.seed = 0
        f, desc = load_function(args)

        if args.command == "analyze":
            report = analyze(f, desc, code=args.code, preparata=args.preparata, graph=args.graph)
            out.write((json.dumps(report) if args.json else format_report(report)) + "\n")
        elif args.command == "witness":
            res = witness(f)
            out.write((json.dumps(res) if args.json else format_witness(res)) + "\n")
        elif args.command == "export-graph":
            G = graphs.build_crooked_graph(f)
            if args.output:
                with open(args.output, "w") as fh:
                    count = graphs.write_edge_list(G, fh)
                summary = {**graphs.graph_header(G), "edges": count, "path": args.output}
                out.write((json.dumps(summary) if args.json else f"wrote {count} edges to {args.output}") + "\n")
            else:
                graphs.write_edge_list(G, out)
        return EXIT_OK
    except (GuardError, TooLarge) as exc:
        print(f"crooked: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except RequiresApn as exc:
        print(f"crooked: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InputError, *_INPUT_ERRORS) as exc:
        print(f"crooked: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CrookedError as exc:
        print(f"crooked: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
