"""Command line driver: inspection subcommands and the batch verifier.

Exit codes: 0 all good, 1 a check failed, 2 inconclusive results only,
64 usage error.  --json writes the machine-readable result next to the
human output; --dot writes a Hasse diagram for the poset-shaped
subcommands.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .battery import DEFAULT_SEED
from .bits import from_digits
from .category import CatFunctor, FiniteCategory, label_str
from .funcspec import FunctorSpec, digits
from .homotopy import complex_from_json, contractibility_verdict, homology
from .horn import admissible_and_superior, l_complex
from .lifting import collapse_nat, identity_nat, reduced_lifting_check
from .mapping import flag_model, necklace_oracle
from .nerves import (base_change_check, chi_groth_comparison, pi_star_check,
                     relative_nerve_2)
from .oriental import build_d, standard_interval
from .poset import ChainSubcomplex, Poset, nerve_chains
from .report import jsonable
from .suites import SUITES, UsageError, run_suite


class CliUsage(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsage(message)


def _common(p: Parser) -> None:
    p.add_argument("--json", metavar="FILE", help="write JSON result here")
    p.add_argument("--dot", metavar="FILE", help="write a DOT Hasse diagram")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled grids")
    p.add_argument("--deep", action="store_true", help="extend parameter ceilings")


def _emit(args, payload: dict, dot: str | None = None) -> None:
    if args.json:
        text = json.dumps(jsonable(payload), indent=2, sort_keys=True)
        Path(args.json).write_text(text + "\n")
    if args.dot:
        if dot is None:
            print("note: --dot has no picture for this subcommand", file=sys.stderr)
        else:
            Path(args.dot).write_text(dot)


def hasse_dot(poset: Poset, name=None) -> str:
    name = name or label_str
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for e in poset.elements:
        lines.append(f'  "{name(e)}";')
    for i, j in poset.covers:
        lines.append(f'  "{name(poset.elements[i])}" -> "{name(poset.elements[j])}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _ground_of(args) -> int:
    if args.ground:
        g = from_digits(args.ground)
        if not g:
            raise CliUsage("--ground must name at least one position")
        return g
    if args.n is None:
        raise CliUsage("give --n or --ground")
    if not 0 <= args.n <= 12:
        raise CliUsage("--n out of range (0..12)")
    return standard_interval(args.n)


def _chain_labels(poset: Poset, mask: int) -> list[str]:
    return [digits(poset.elements[b]) for b in range(len(poset))
            if (mask >> b) & 1]


def _dim_histogram(chains) -> dict[int, int]:
    out: dict[int, int] = {}
    for c in chains:
        d = bin(c).count("1") - 1
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def cmd_dn(args) -> int:
    ground = _ground_of(args)
    dp = build_d(ground)
    p = dp.poset
    print(f"D-poset on {{{digits(ground)}}}: {len(p)} elements")
    for a, b in p.covers:
        print(f"  {digits(p.elements[a])} < {digits(p.elements[b])}")
    payload = {"ground": digits(ground),
               "elements": [digits(e) for e in p.elements],
               "covers": [[digits(p.elements[a]), digits(p.elements[b])]
                          for a, b in p.covers],
               "minimum": digits(p.minimum()) if p.minimum() is not None else None,
               "maximum": digits(p.maximum()) if p.maximum() is not None else None}
    _emit(args, payload, hasse_dot(p, name=digits))
    return 0


def cmd_horn(args) -> int:
    fam = admissible_and_superior(args.n, args.i)
    dp = build_d(standard_interval(args.n))
    sub = l_complex(args.n, args.i, dp)
    hist = _dim_histogram(sub.chains)
    verts = 0
    for c in sub.chains:
        verts |= c
    members = [dp.poset.elements[b] for b in range(len(dp.poset))
               if (verts >> b) & 1]
    print(f"horn subcomplex at n={args.n}, i={args.i}")
    print("  superior faces:", " ".join(digits(j) for j in fam.superior))
    print("  chains by dimension:", hist)
    payload = {"n": args.n, "i": args.i,
               "admissible": [digits(j) for j in fam.admissible],
               "superior": [digits(j) for j in fam.superior],
               "chains_by_dim": hist,
               "vertices": [digits(e) for e in members]}
    _emit(args, payload, hasse_dot(dp.poset.full_subposet(members), name=digits))
    return 0


def cmd_mapping_space(args) -> int:
    dp = build_d(standard_interval(args.n))
    if args.i is not None:
        k = l_complex(args.n, args.i, dp)
    else:
        k = ChainSubcomplex(dp.poset, nerve_chains(dp.poset), validate=False)
    s, t = from_digits(getattr(args, "src")), from_digits(args.to)
    payload: dict = {"n": args.n, "i": args.i,
                     "from": digits(s), "to": digits(t)}
    dot = None
    rc = 0
    fm = None
    if args.model in ("flag", "both"):
        fm = flag_model(k, s, t, max_dim=args.dim)
        payload["flag"] = {"counts": fm.counts()}
        print("flag model counts:", fm.counts())
        vs = fm.vertices()
        refine = Poset.from_relation(vs, lambda a, b: a & ~b == 0)
        dot = hasse_dot(refine, name=lambda m: "<".join(_chain_labels(dp.poset, m)))
    if args.model in ("necklace", "both"):
        no = necklace_oracle(k, s, t, max_dim=args.dim)
        payload["necklace"] = {"counts": no.counts()}
        print("necklace oracle counts:", no.counts())
        if fm is not None:
            agree = fm.same_simplices(no)
            payload["agree"] = agree
            print("models agree:", agree)
            rc = 0 if agree else 1
    _emit(args, payload, dot)
    return rc


def cmd_homology(args) -> int:
    data = json.loads(Path(args.input).read_text())
    cx = complex_from_json(data)
    h = homology(cx)
    v = contractibility_verdict(cx)
    for k, (b, tor) in enumerate(zip(h.betti, h.torsion)):
        print(f"  H~_{k}: betti {b}, torsion {tor}")
    print(f"verdict: {v.status} ({v.method})")
    payload = {"betti": h.betti, "torsion": h.torsion,
               "verdict": {"status": v.status, "method": v.method,
                           "detail": v.detail}}
    _emit(args, payload)
    return 0


def _load_spec(path: str) -> FunctorSpec:
    return FunctorSpec.from_json(json.loads(Path(path).read_text()))


def cmd_nerve2(args) -> int:
    spec = _load_spec(args.spec)
    table = relative_nerve_2(spec, args.dim)
    counts = table.counts()
    print("nondegenerate simplices per dimension:", counts)
    marked = sum(1 for i in range(counts[1])
                 if table.edge_marked(table.ref_of_cell(1, i))) \
        if args.dim >= 1 else 0
    thin = sum(1 for i in range(counts[2])
               if table.triangle_thin(table.ref_of_cell(2, i))) \
        if args.dim >= 2 else 0
    print(f"marked edges: {marked}; thin triangles: {thin}")
    out = {"dim": args.dim, "counts": counts,
           "marked_edges": marked, "thin_triangles": thin,
           "simplices": {k: [repr(table.cells[k][i])
                             for i in range(counts[k])]
                         for k in range(min(args.dim, table.dim) + 1)}}
    Path(args.out).write_text(json.dumps(jsonable(out), indent=2) + "\n")
    print("table written to", args.out)
    _emit(args, {"counts": counts, "marked_edges": marked,
                 "thin_triangles": thin})
    return 0


def cmd_compare_nerves(args) -> int:
    spec = _load_spec(args.spec)
    gro = chi_groth_comparison(spec, args.dim)
    pis = pi_star_check(spec, min(args.dim, 3))
    print("total-category comparison: bijective =", gro["bijective"],
          "faces commute =", gro["faces_commute"])
    print("comparison map: well defined =", pis["well_defined"],
          "injective =", pis["injective"], "bijective =", pis["bijective"])
    ok = (gro["bijective"] and gro["faces_commute"] and pis["well_defined"]
          and pis["faces_commute"] and pis["degeneracies_commute"]
          and pis["markings_match"] and pis["projection_commutes"]
          and all(pis["injective"].values()))
    _emit(args, {"total_category": gro, "comparison_map": pis})
    return 0 if ok else 1


def cmd_lift_check(args) -> int:
    payload = json.loads(Path(args.spec).read_text())
    if "functor" in payload:
        spec = FunctorSpec.from_json(payload["functor"])
        target = payload.get("target", "collapse")
    else:
        spec, target = FunctorSpec.from_json(payload), "collapse"
    if target == "collapse":
        nat = collapse_nat(spec)
    elif target == "identity":
        nat = identity_nat(spec)
    else:
        raise CliUsage(f"unknown target {target!r} (use collapse or identity)")
    res = reduced_lifting_check(nat, args.n)
    print(f"problems: {res['problems']}  originals: {res['original_total']}  "
          f"reduced: {res['reduced_total']}")
    print("solution histogram:", res["solution_histogram"])
    print("bijective:", res["bijective"])
    _emit(args, res)
    return 0 if res["bijective"] else 1


def cmd_base_change(args) -> int:
    fdata = json.loads(Path(args.f).read_text())
    spec = _load_spec(args.spec)
    bf = CatFunctor(FiniteCategory.from_json(fdata["source"]),
                    FiniteCategory.from_json(fdata["target"]),
                    dict(fdata["obj"]), dict(fdata["mor"]))
    rep = base_change_check(bf, spec, args.dim)
    for k, row in rep["dims"].items():
        print(f"  dim {k}: nerve {row['nerve']} vs pullback {row['pullback']} "
              f"-> {'ok' if row['match'] else 'MISMATCH'}")
    print("isomorphism:", rep["isomorphism"], " faces commute:", rep["faces_commute"])
    _emit(args, rep)
    return 0 if rep["isomorphism"] and rep["faces_commute"] else 1


def cmd_verify(args) -> int:
    params = {"n": args.n, "deep": args.deep}
    if args.seed is not None:
        params["seed"] = args.seed
    if args.count is not None:
        params["count"] = args.count
    if args.samples is not None:
        params["samples"] = args.samples
    report = run_suite(args.suite, params, jobs=args.jobs)
    for line in report.lines():
        print(line)
    _emit(args, report.to_json())
    return report.exit_code()


def build_parser() -> Parser:
    top = Parser(prog="nervecheck",
                 description="finite checks for nerve and horn combinatorics")
    sub = top.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("dn", help="build a D-poset and its Hasse diagram")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--ground", default=None, help='digit string, e.g. "023"')
    _common(p)
    p.set_defaults(func=cmd_dn)

    p = sub.add_parser("horn", help="inner-horn subcomplex summary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_horn)

    p = sub.add_parser("mapping-space", help="flag model / necklace oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, default=None,
                   help="restrict to the horn subcomplex at i")
    p.add_argument("--from", dest="src", required=True, metavar="S")
    p.add_argument("--to", required=True, metavar="T")
    p.add_argument("--model", choices=("flag", "necklace", "both"),
                   default="both")
    p.add_argument("--dim", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_mapping_space)

    p = sub.add_parser("homology", help="reduced homology and verdict")
    p.add_argument("--input", required=True, metavar="X.json")
    _common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("nerve2", help="enumerate the functor-family nerve")
    p.add_argument("--spec", required=True, metavar="F.json")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", required=True, metavar="T.json")
    _common(p)
    p.set_defaults(func=cmd_nerve2)

    p = sub.add_parser("compare-nerves",
                       help="family nerve vs total-category nerve")
    p.add_argument("--spec", required=True, metavar="F.json")
    p.add_argument("--dim", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_compare_nerves)

    p = sub.add_parser("lift-check", help="original vs reduced lifting sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--spec", required=True, metavar="P.json")
    _common(p)
    p.set_defaults(func=cmd_lift_check)

    p = sub.add_parser("base-change", help="restriction along a base functor")
    p.add_argument("--f", required=True, metavar="f.json")
    p.add_argument("--spec", required=True, metavar="F.json")
    p.add_argument("--dim", type=int, default=3)
    _common(p)
    p.set_defaults(func=cmd_base_change)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--count", type=int, default=None,
                   help="seeded instance count where applicable")
    p.add_argument("--samples", type=int, default=None,
                   help="sampled pairs per deep grid point")
    p.add_argument("--jobs", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_verify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliUsage as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 64
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 64
    except FileNotFoundError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    sys.exit(main())
