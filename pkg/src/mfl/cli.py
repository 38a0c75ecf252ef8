"""Command-line front end.

Exit codes: 0 success, 1 failed assertions in ``verify``, 2 usage errors,
3 domain errors (the error class name is printed on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import boundary as bd
from . import criteria as cr
from . import divisors as dv
from . import faces as fc
from . import pairing as pr
from . import sweep as sw
from .errors import MflError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _pair(args):
    return bd.HyperbolicPair(args.g, args.n)


def _typeset(p, args):
    return bd.parse_typeset(p, args.T)


def _emit(obj, as_json, text):
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(text)


def cmd_classes(args):
    p = _pair(args)
    cs = bd.enumerate_classes(p)
    _emit([bd.format_class(p, c) for c in cs], args.json,
          "\n".join(bd.format_class(p, c) for c in cs))


def cmd_minimal(args):
    p = _pair(args)
    ms = bd.minimal_subsets(p)
    _emit([bd.format_pair_type(p, m) for m in ms], args.json,
          "\n".join(bd.format_pair_type(p, m) for m in ms))


def cmd_adm(args):
    p = _pair(args)
    T = bd.adm_closure(p, _typeset(p, args))
    _emit(bd.typeset_to_json(T), args.json, bd.format_typeset(p, T) or "{}")


def cmd_tdiv(args):
    p = _pair(args)
    T = bd.divisorial_part(p, _typeset(p, args))
    _emit(bd.typeset_to_json(T), args.json, bd.format_typeset(p, T) or "{}")


def cmd_picard(args):
    p = _pair(args)
    T = _typeset(p, args) if args.T is not None else None
    s = dv.space_from_name(args.space, T)
    pres = dv.presentation(p, s)
    gens = [g if isinstance(g, str) else bd.format_class(p, g) for g in pres.generators]
    killed = [bd.format_class(p, c) for c in sorted(pres.killed, key=bd.sort_key)]
    rels = []
    for row in pres.relations:
        rels.append({gens[i]: dv.fmt_rational(v) for i, v in enumerate(row) if v})
    obj = {"space": str(s), "generators": gens, "killed": killed, "relations": rels,
           "rank": pres.rank}
    text = "\n".join([
        f"space      {s}",
        f"generators {' '.join(gens)}",
        f"killed     {' '.join(killed) or '-'}",
        *("relation   " + " ".join(f"{v}*{k}" for k, v in r.items()) for r in rels),
        f"rank       {pres.rank}",
    ])
    _emit(obj, args.json, text)


def cmd_pair(args):
    p = _pair(args)
    curve = pr.parse_curve(p, args.curve)
    T = bd.full_typeset(p) if args.T is None else _typeset(p, args)
    if isinstance(curve, pr.RosaryType):
        L = dv.parse_divisor(p, dv.space_tplus(T), args.divisor)
        value = pr.rosary_weight(p, curve, L)
    else:
        space = {"C": dv.PS, "Ctilde": dv.BAR, "D": dv.space_tplus(T)}[curve.kind]
        L = dv.parse_divisor(p, space, args.divisor)
        value = pr.pair_curve(p, curve, L)
    _emit({"value": dv.fmt_rational(value)}, args.json, dv.fmt_rational(value))


def _face_json(p, f):
    return {
        "T": bd.format_typeset(p, f.typeset),
        "adm": bd.format_typeset(p, f.adm),
        "rays": [bd.format_pair_type(p, r) for r in f.rays],
        "dim": f.dim,
        "perp_dim": f.perp_dim,
        "perp_basis": [dv.divisor_to_json(L) for L in f.perp_basis],
    }


def cmd_face(args):
    p = _pair(args)
    f = fc.face_of(p, _typeset(p, args))
    obj = _face_json(p, f)
    text = "\n".join([
        f"rays     {' '.join(obj['rays']) or '-'}",
        f"dim      {f.dim}",
        f"perp_dim {f.perp_dim}",
        *(f"perp     {L!r}" for L in f.perp_basis),
    ])
    _emit(obj, args.json, text)


def cmd_lattice(args):
    p = _pair(args)
    lat = fc.face_lattice(p, args.cap)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(lat.to_dot())
    obj = lat.to_json()
    text = "\n".join(f"{i}: {nd['T'] or '{}'} | {nd['dim']} | {nd['perp_dim']}"
                     for i, nd in enumerate(obj["nodes"]))
    _emit(obj, args.json, text)


def cmd_check(args):
    p = _pair(args)
    r = cr.full_report(p, _typeset(p, args))
    _emit(r.to_json(), args.json, cr.format_report(r))


def cmd_hk(args):
    print(cr.hk_model(Fraction(args.alpha)).value)


def cmd_verify(args):
    cfg = sw.SweepConfig.load(args.config) if args.config else sw.SweepConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    res = sw.run_sweep(cfg)
    _emit(res.to_json(), args.json, sw.format_result(res))
    return 0 if res.ok else 1


def build_parser():
    ap = _Parser(prog="mfl", description="Exact invariants of the T-face flips of M^ps_{g,n}.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, T=False, T_required=False, help=None):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--g", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        if T:
            sp.add_argument("--T", required=T_required,
                            help="type set, e.g. 'irr,0:{1},1:{1}' or 'full'")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(fn=fn)
        return sp

    add("classes", cmd_classes, help="list T_{g,n}")
    add("minimal", cmd_minimal, help="minimal admissible subsets")
    add("adm", cmd_adm, T=True, T_required=True, help="admissible closure")
    add("tdiv", cmd_tdiv, T=True, T_required=True, help="divisorial part")
    sp = add("picard", cmd_picard, T=True, help="Picard presentation and rank")
    sp.add_argument("--space", choices=["ulci", "bar", "ps", "t", "tplus"], default="ps")
    sp = add("pair", cmd_pair, T=True, help="intersection number")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--divisor", required=True)
    add("face", cmd_face, T=True, T_required=True, help="T-face descriptor")
    sp = add("lattice", cmd_lattice, help="lattice of T-faces")
    sp.add_argument("--dot", default=None)
    sp.add_argument("--cap", type=int, default=None)
    add("check", cmd_check, T=True, T_required=True, help="full predicate report")

    sp = sub.add_parser("hk", help="Hassett-Keel stage of alpha")
    sp.add_argument("--alpha", required=True)
    sp.set_defaults(fn=cmd_hk)
    sp = sub.add_parser("verify", help="run the verification sweep")
    sp.add_argument("--config", default=None, help="JSON SweepConfig")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = args.fn(args)
    except MflError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
