"""Command line frontend: every computation as a subcommand.

One process, batch semantics: parse flags, run one computation, print one
report (text lines or a single JSON record with a schema_version field),
exit. Exit status taxonomy: 0 success, 1 usage error, 2 the computation
ended in an unknown verdict (bound or depth exhausted, search cap hit).

JSON reports are deterministic (sorted keys, no floats) and round-trip
byte-identically through json.loads/json.dumps with the same options.
The default window bound is 500, overridable by the NORMSET_LAB_BOUND
environment variable and per-run by --bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import inf

from . import valnet_sim as vn
from .class_groups import class_group, narrow_class_group_real
from .errors import (BadDiscriminant, CapExceeded, DepthExhausted, NeedsBound,
                     NotMember, SearchBudgetExceeded, UsageError,
                     WitnessSearchExhausted)
from .hfd_lab import (carlitz_verdict, classification_check,
                      elasticity_via_davenport, order_hfd_witness)
from .monoid_core import AbelianGroup, FactorMultiset, davenport_witness, elasticity_window
from .normsets import (factor_in_normset, irreducibles_up_to, is_saturated,
                       is_strictly_saturated_window, is_ufd,
                       normset_monoid_view, normset_of)
from .quadratic import canonical_associate, is_irreducible, order_of, parse_element

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2

_JSON_OPTS = dict(sort_keys=True, indent=2)


@dataclass
class RunConfig:
    """Validated run parameters shared by the quadratic subcommands."""

    d: int = 0
    n: int = 1
    bound: int = 500
    format: str = "text"
    depth: int = 32
    input_path: str | None = None

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("--n must be >= 1")
        if self.bound < 4:
            raise UsageError("--bound must be >= 4")
        if self.depth < 1:
            raise UsageError("--depth must be >= 1")
        if self.format not in ("text", "json"):
            raise UsageError("--format must be text or json")


def _default_bound() -> int:
    raw = os.environ.get("NORMSET_LAB_BOUND")
    if raw is None:
        return 500
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"NORMSET_LAB_BOUND={raw!r} is not an integer") from None


def _config(args) -> RunConfig:
    return RunConfig(
        d=getattr(args, "d", 0) or 0,
        n=getattr(args, "n", 1),
        bound=getattr(args, "bound", 500),
        format=args.format,
        depth=getattr(args, "depth", 32),
        input_path=getattr(args, "file", None),
    )


def _plain(v):
    """Make a value JSON-safe: exact rationals and domain objects become
    strings, infinities become the string "infinity", keys become strings.
    """
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, float):
        return "infinity" if v == inf else v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, FactorMultiset):
        return [_plain(a) for a in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [_plain(x) for x in v]
        if isinstance(v, (set, frozenset)):
            items.sort(key=lambda x: (str(type(x)), str(x)))
        return items
    return str(v)


def _emit(fmt: str, record: dict):
    record = _plain({"schema_version": SCHEMA_VERSION, **record})
    if fmt == "json":
        print(json.dumps(record, **_JSON_OPTS))
        return
    for k in sorted(record):
        v = record[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        print(f"{k}: {v}")


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (payload dict, exit code)


def _cmd_classgroup(args):
    cfg = _config(args)
    order = order_of(cfg.d, cfg.n)
    cg = class_group(order.discriminant)
    payload = {
        "command": "classgroup",
        "d": cfg.d,
        "n": cfg.n,
        "discriminant": order.discriminant,
        "kind": cg.kind,
        "class_number": cg.class_number,
        "structure": str(cg.structure),
        "invariant_factors": list(cg.structure.invariant_factors),
        "classes": [str(f) for f in cg.classes],
    }
    if not order.is_imaginary:
        payload["narrow_class_number"] = \
            narrow_class_group_real(order.discriminant).class_number
    return payload, EXIT_OK


def _cmd_norm(args):
    cfg = _config(args)
    order = order_of(cfg.d, cfg.n)
    x = parse_element(order, args.elem)
    payload = {
        "command": "norm",
        "order": str(order),
        "elem": str(x),
        "norm": x.norm(),
    }
    if order.is_imaginary and not (x.is_zero() or x.is_unit()):
        payload["canonical"] = str(canonical_associate(x))
        payload["irreducible"] = is_irreducible(x)
    return payload, EXIT_OK


def _cmd_normset(args):
    cfg = _config(args)
    order = order_of(cfg.d, cfg.n)
    ns = normset_of(order)
    if args.normset_op == "member":
        v = ns.contains(args.value, cfg.bound)
        payload = {"command": "normset member", "order": str(order),
                   "value": args.value, **v.to_record()}
        return payload, EXIT_UNKNOWN if v.answer == "unknown" else EXIT_OK
    if args.normset_op == "atoms":
        atoms = irreducibles_up_to(ns, cfg.bound)
        return {"command": "normset atoms", "order": str(order),
                "bound": cfg.bound, "atoms": atoms}, EXIT_OK
    # factor
    try:
        facts = factor_in_normset(ns, args.value)
    except NotMember:
        return {"command": "normset factor", "order": str(order),
                "value": args.value, "member": False}, EXIT_OK
    flists = sorted([list(f) for f in facts], key=lambda f: (len(f), f))
    return {
        "command": "normset factor",
        "order": str(order),
        "value": args.value,
        "member": True,
        "factorizations": flists,
        "lengths": sorted({len(f) for f in flists}),
    }, EXIT_OK


def _cmd_ufd(args):
    cfg = _config(args)
    order = order_of(cfg.d, cfg.n)
    cert = is_ufd(order)
    rows = [{"p": r.p, "f": r.f_p, "target": r.target, "member": r.member,
             "witness": None if r.witness is None else str(r.witness)}
            for r in cert.rows]
    return {
        "command": "ufd",
        "order": str(order),
        "verdict": cert.value,
        "P": list(cert.criterion_primes),
        "minkowski": cert.minkowski,
        "rows": rows,
    }, EXIT_OK


def _cmd_saturation(args):
    cfg = _config(args)
    order = order_of(cfg.d, cfg.n)
    strict = is_strictly_saturated_window(order, cfg.bound)
    return {
        "command": "saturation",
        "order": str(order),
        "saturated": is_saturated(order),
        "strict_window": strict.to_record(),
    }, EXIT_OK


def _cmd_hfd(args):
    cfg = _config(args)
    if cfg.n == 1:
        hv = carlitz_verdict(order_of(cfg.d))
    else:
        hv = order_hfd_witness(cfg.d, cfg.n)
    payload = {
        "command": "hfd",
        "order": str(hv.order),
        "verdict": hv.verdict,
        "method": hv.method,
        "element": None if hv.element is None else str(hv.element),
    }
    if hv.witness is not None:
        short, long_ = hv.witness
        payload["witness"] = {"short": [str(a) for a in short],
                              "long": [str(a) for a in long_]}
    return payload, EXIT_OK


def _cmd_classify_hfd(args):
    report = classification_check()
    rows = report.to_records()
    counts: dict[str, int] = {}
    for r in report:
        counts[r.expected] = counts.get(r.expected, 0) + 1
    return {
        "command": "classify-hfd",
        "rows": rows,
        "total": len(report),
        "all_ok": report.ok,
        "expected_counts": counts,
    }, EXIT_OK


def _cmd_elasticity(args):
    cfg = _config(args)
    order = order_of(cfg.d, cfg.n)
    view = normset_monoid_view(normset_of(order))
    rho = elasticity_window(view, cfg.bound)
    payload = {
        "command": "elasticity",
        "order": str(order),
        "bound": cfg.bound,
        "normset_elasticity": Fraction(rho),
        "witness": rho.witness,
    }
    if order.is_imaginary and order.is_maximal:
        payload["ring_elasticity_formula"] = elasticity_via_davenport(order)
    return payload, EXIT_OK


def _cmd_davenport(args):
    g = AbelianGroup.from_string(args.group)
    D, witness = davenport_witness(g)
    return {
        "command": "davenport",
        "group": str(g),
        "davenport": D,
        "witness": [list(e) for e in witness],
    }, EXIT_OK


def _valnet_indices(m: vn.NetMonoid, text: str) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok == vn.INF_INDEX or m.index_set.kind == "finite":
            out.append(tok)
        else:
            out.append(int(tok))
    return out


def _valnet_gens(m: vn.NetMonoid, text: str) -> list[vn.ValNet]:
    return [vn.parse_net(m, part) for part in text.split(";") if part.strip()]


def _cmd_valnet(args):
    cfg = _config(args)
    m = vn.load_net_monoid(args.file)
    toks = list(args.query)
    op = toks.pop(0).lower()
    depth = cfg.depth
    base = {"command": "valnet", "monoid": str(m), "query": op}

    def one_net() -> vn.ValNet:
        if not toks:
            raise UsageError(f"valnet {op} needs a net argument")
        return vn.parse_net(m, toks.pop(0))

    if op == "atoms":
        if m.kind == "generated":
            return {**base, "atoms": [str(g) for g in m.atoms]}, EXIT_OK
        return {**base, "atoms": "e_n for every index n >= 1"}, EXIT_OK
    if op == "idempotent":
        return {**base, "covered": vn.idempotent_cover_check(m)}, EXIT_OK
    if op == "ideal-norm":
        if not toks:
            raise UsageError("valnet ideal-norm needs a ;-separated generator list")
        norm = vn.ideal_norm(m, _valnet_gens(m, toks.pop(0)))
        return {**base, "norm": {str(k): str(v) for k, v in norm.items()}}, EXIT_OK
    if op == "product":
        if len(toks) < 2:
            raise UsageError("valnet product needs two generator lists")
        ok = vn.ideal_norm_product_check(m, _valnet_gens(m, toks.pop(0)),
                                         _valnet_gens(m, toks.pop(0)))
        return {**base, "additive": ok}, EXIT_OK

    b = one_net()
    base["net"] = str(b)
    if op == "member":
        return {**base, "member": m.contains(b, depth)}, EXIT_OK
    if op == "length":
        return {**base, "length": vn.length(b)}, EXIT_OK
    if op == "sb":
        vals = vn.S_b(m, b, depth)
        return {**base, "S_b": sorted(vals, key=lambda v: (v == inf, v)),
                "inf_S_b": vn.inf_S_b(m, b, depth)}, EXIT_OK
    if op == "bfd":
        return {**base, "bfd_bound": vn.bfd_bound(m, b, depth)}, EXIT_OK
    if op == "factor":
        out = vn.find_atomic_factorization(m, b, depth)
        payload = {**base, "status": out.status, "depth": depth,
                   "factorization":
                       None if out.value is None else [str(a) for a in out.value]}
        return payload, EXIT_UNKNOWN if out.status == "none_within_depth" else EXIT_OK
    if op == "divisors":
        ds = vn.monoid_divisors(m, b, depth)
        count = vn.ffd_window(m, b, depth)
        return {**base, "divisors": [str(d) for d in ds],
                "count": count.count, "exact": count.exact}, EXIT_OK
    if op == "accp":
        if not toks:
            raise UsageError("valnet accp needs a chain length")
        k = int(toks.pop(0))
        chain = vn.accp_chain(m, b, k)
        return {**base, "k": k, "found": chain is not None,
                "chain": None if chain is None else [str(c) for c in chain]}, EXIT_OK
    if op == "comax":
        if not toks:
            raise UsageError("valnet comax needs a family size")
        k = int(toks.pop(0))
        fam = vn.comaximal_family(m, b, k, depth)
        return {**base, "k": k, "found": fam is not None,
                "family": None if fam is None else [str(x) for x in fam]}, EXIT_OK
    if op == "cover":
        if not toks:
            raise UsageError("valnet cover needs a comma-separated index list")
        idxs = _valnet_indices(m, toks.pop(0))
        return {**base, "indices": [str(i) for i in idxs],
                "covered": vn.finite_cover_check(m, b, idxs, depth)}, EXIT_OK
    raise UsageError(f"unknown valnet query {op!r}")


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p, *, d=False, n=False, bound=False, value=False, depth=False):
    if d:
        p.add_argument("--d", type=int, required=True,
                       help="squarefree integer defining Q(sqrt(d))")
    if n:
        p.add_argument("--n", type=int, default=1, help="conductor (default 1)")
    if bound:
        p.add_argument("--bound", type=int, default=_default_bound(),
                       help="window bound (default 500 or NORMSET_LAB_BOUND)")
    if value:
        p.add_argument("--value", type=int, required=True,
                       help="integer queried against the normset")
    if depth:
        p.add_argument("--depth", type=int, default=32,
                       help="search depth for valuation-net queries")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="report format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="normset-lab",
                     description="Norm monoids of quadratic orders and "
                                 "valuation-net factorization experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classgroup", parents=[], help="form class group of an order")
    _add_common(p, d=True, n=True)
    p.set_defaults(handler=_cmd_classgroup)

    p = sub.add_parser("norm", help="norm of an element a+b*w of the order")
    _add_common(p, d=True, n=True)
    p.add_argument("--elem", required=True, help="element like '3+2w' or '7'")
    p.set_defaults(handler=_cmd_norm)

    p = sub.add_parser("normset", help="membership, atoms, factorizations")
    ops = p.add_subparsers(dest="normset_op", required=True)
    q = ops.add_parser("member", help="is --value a norm?")
    _add_common(q, d=True, n=True, bound=True, value=True)
    q.set_defaults(handler=_cmd_normset)
    q = ops.add_parser("atoms", help="normset irreducibles up to --bound")
    _add_common(q, d=True, n=True, bound=True)
    q.set_defaults(handler=_cmd_normset)
    q = ops.add_parser("factor", help="all normset factorizations of --value")
    _add_common(q, d=True, n=True, bound=True, value=True)
    q.set_defaults(handler=_cmd_normset)

    p = sub.add_parser("ufd", help="norm criterion for unique factorization")
    _add_common(p, d=True)
    p.set_defaults(handler=_cmd_ufd, n=1)

    p = sub.add_parser("saturation", help="saturation and strict-saturation window")
    _add_common(p, d=True, bound=True)
    p.set_defaults(handler=_cmd_saturation, n=1)

    p = sub.add_parser("hfd", help="half-factoriality verdict for an order")
    _add_common(p, d=True, n=True)
    p.set_defaults(handler=_cmd_hfd)

    p = sub.add_parser("classify-hfd", help="run the full classification table")
    _add_common(p)
    p.set_defaults(handler=_cmd_classify_hfd)

    p = sub.add_parser("elasticity", help="window elasticity of the normset")
    _add_common(p, d=True, n=True, bound=True)
    p.set_defaults(handler=_cmd_elasticity)

    p = sub.add_parser("davenport", help="Davenport constant by brute force")
    p.add_argument("--group", required=True,
                   help="finite abelian group, e.g. '3,3' or 'Z_2 x Z_4'")
    _add_common(p)
    p.set_defaults(handler=_cmd_davenport)

    p = sub.add_parser("valnet", help="valuation-net monoid queries")
    p.add_argument("file", help="net-monoid description file")
    p.add_argument("query", nargs="+",
                   help="e.g. 'length q', 'factor w1', 'accp w1 10', 'sb e3', "
                        "'cover q 1,2', 'ideal-norm e1;w1', 'product e1 e2'")
    _add_common(p, depth=True)
    p.set_defaults(handler=_cmd_valnet)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    fmt = getattr(args, "format", "text")
    try:
        payload, code = args.handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BadDiscriminant as e:
        print(f"usage error: --d/--n invalid: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NeedsBound, WitnessSearchExhausted, DepthExhausted,
            SearchBudgetExceeded, CapExceeded) as e:
        record = {"command": args.command, "answer": "unknown",
                  "reason": type(e).__name__, "detail": str(e)}
        bound = getattr(args, "bound", None)
        if bound is not None:
            record["bound_used"] = bound
        _emit(fmt, record)
        return EXIT_UNKNOWN
    _emit(fmt, payload)
    return code


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
