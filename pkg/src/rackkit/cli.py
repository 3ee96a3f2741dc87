"""Command-line interface: verification reports as canonical JSON.

Exit codes: 0 when every requested verification passes, 2 on a
verification failure, 1 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coalgebra import (
    check_coassociative,
    check_cocommutative,
    check_counit,
    check_unit_grouplike,
)
from .enveloping import build_enveloping
from .errors import RackkitError, StructureError
from .fileio import (
    dumps,
    parse_comul_perturbation,
    parse_leibniz,
    parse_rack_perturbation,
    parse_structure,
    serialize_structure,
)
from .hopf import cyclic_group_algebra, group_algebra, polynomial_hopf_k3
from .rack import (
    BUILTIN_NAMES,
    RackBialgebra,
    braid_relation_holds,
    builtin_example,
    check_rack_bialgebra,
)
from .ydrack import canonical_yd, check_yd_rack, lm_bialgebra_object, yd_over_group, yd_over_polynomial

ONE = Fraction(1)


def _result_json(res) -> dict:
    out = {"ok": res.ok, "checked": res.checked}
    if res.skipped:
        out["skipped"] = res.skipped
    if res.witness is not None:
        out["witness"] = list(res.witness)
    return out


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc}") from None


def _emit(report: dict) -> None:
    sys.stdout.write(dumps(report) + "\n")


def cmd_check(args) -> int:
    obj = parse_structure(_load(args.file))
    report: dict = {"command": "check", "input": args.file}
    ok = True
    if isinstance(obj, RackBialgebra):
        coalg = obj.coalgebra
    else:
        coalg = obj
    co_ok, bad = check_coassociative(coalg)
    report["coassociative"] = {
        "ok": co_ok,
        **({"witness": [coalg.labels[bad]]} if bad is not None else {}),
    }
    ok &= co_ok
    if coalg.counit is not None:
        cu_ok, bad = check_counit(coalg)
        report["counit_law"] = {
            "ok": cu_ok,
            **({"witness": [coalg.labels[bad]]} if bad is not None else {}),
        }
        ok &= cu_ok
    if coalg.unit_index is not None:
        ug = check_unit_grouplike(coalg)
        report["unit_grouplike"] = {"ok": ug}
        ok &= ug
    report["cocommutative"] = check_cocommutative(coalg)
    if isinstance(obj, RackBialgebra):
        axioms = check_rack_bialgebra(obj)
        report["axioms"] = {k: _result_json(v) for k, v in axioms.items()}
        ok &= all(v.ok for v in axioms.values())
        # reported, not asserted: no general proof is known either way
        report["braid_relation"] = braid_relation_holds(obj)
    report["ok"] = bool(ok)
    _emit(report)
    return 0 if ok else 2


def cmd_examples(args) -> int:
    if not args.name:
        _emit({"command": "examples", "available": list(BUILTIN_NAMES)})
        return 0
    r = builtin_example(args.name)
    _emit(serialize_structure(r))
    return 0


def cmd_env(args) -> int:
    obj = parse_structure(_load(args.file))
    if not isinstance(obj, RackBialgebra):
        raise StructureError("enveloping algebras need a rack section")
    u = build_enveloping(obj, args.degree, args.slack)
    report = {
        "command": "env",
        "input": args.file,
        "degree": args.degree,
        "slack": args.slack,
        "stabilized": u.stabilized,
    }
    if args.series or not args.coideal:
        report["dims"] = u.dims
    if args.coideal:
        report["coideal"] = u.coideal_ok
    src = u.reduced.labels
    sample = []
    for (a, b), g in sorted(u.instances.items())[:5]:
        terms = [
            f"{'' if c == 1 else str(c) + '*'}{'.'.join(src[i] for i in w) or '1'}"
            for w, c in sorted(g.items())
        ]
        sample.append({"pair": [src[a], src[b]], "element": " + ".join(terms)})
    report["relations_sample"] = sample
    report["ok"] = u.stabilized
    _emit(report)
    return 0 if u.stabilized else 2


def _carrier_from_spec(spec: str, rack, qdata):
    """Named carriers: env:D[:S], polyk3:D, zN; or a group-table JSON file."""
    if spec.startswith("env:"):
        parts = spec.split(":")
        degree = int(parts[1])
        slack = int(parts[2]) if len(parts) > 2 else 2
        u = build_enveloping(rack, degree, slack)
        return canonical_yd(u)
    if qdata is None:
        raise StructureError("this carrier needs a --q map file")
    qmap_raw = json.loads(qdata)
    if spec.startswith("polyk3:"):
        h = polynomial_hopf_k3(int(spec.split(":")[1]))
        return _yd_poly_from_q(rack, h, qmap_raw)
    if spec.startswith("z") and spec[1:].isdigit():
        h = cyclic_group_algebra(int(spec[1:]))
        return _yd_group_from_q(rack, h, qmap_raw)
    data = json.loads(_load(spec))
    if data.get("type") != "group":
        raise StructureError("carrier files must be group tables ({'type': 'group'})")
    labels = data["labels"]
    pos = {lab: i for i, lab in enumerate(labels)}
    table = {}
    for i, row in enumerate(data["table"]):
        for j, lab in enumerate(row):
            table[(i, j)] = pos[lab]
    h = group_algebra(labels, table)
    return _yd_group_from_q(rack, h, qmap_raw)


def _q_entries(rack, h, qmap_raw):
    qmap = [dict() for _ in range(rack.dim)]
    qmap[rack.coalgebra.unit_index] = {(h.unit_index,): ONE}
    for lab, items in qmap_raw.items():
        k = rack.coalgebra.index(lab)
        vec = {}
        for hlab, s in items:
            if hlab not in h.labels:
                raise StructureError(f"q[{lab}]: unknown carrier label {hlab!r}")
            from .scalars import parse_scalar

            vec[(h.labels.index(hlab),)] = parse_scalar(str(s))
        qmap[k] = vec
    return qmap


def _yd_group_from_q(rack, h, qmap_raw):
    elem_map = {}
    for lab, items in qmap_raw.items():
        if len(items) == 1 and str(items[0][1]) == "1":
            elem_map[lab] = items[0][0]
    return yd_over_group(rack, h, elem_map)


def _yd_poly_from_q(rack, h, qmap_raw):
    qmap = _q_entries(rack, h, qmap_raw)
    preimages = []
    for name in h.varnames:
        hidx = h.labels.index(name)
        hit = None
        for k in range(rack.dim):
            if qmap[k] == {(hidx,): ONE}:
                hit = k
                break
        if hit is None:
            raise StructureError(f"no basis element maps to generator {name}")
        preimages.append(hit)
    return yd_over_polynomial(rack, h, tuple(preimages), qmap)


def cmd_ydcheck(args) -> int:
    obj = parse_structure(_load(args.file))
    if not isinstance(obj, RackBialgebra):
        raise StructureError("ydcheck needs a rack section")
    qdata = _load(args.q) if args.q else None
    structure = _carrier_from_spec(args.carrier, obj, qdata)
    rep = check_yd_rack(structure)
    ok = all(v.ok for v in rep.values())
    _emit(
        {
            "command": "ydcheck",
            "input": args.file,
            "carrier": args.carrier,
            "conditions": {k: _result_json(v) for k, v in rep.items()},
            "ok": ok,
        }
    )
    return 0 if ok else 2


def cmd_lm(args) -> int:
    obj = parse_structure(_load(args.file))
    if not isinstance(obj, RackBialgebra):
        raise StructureError("lm needs a rack section")
    u = build_enveloping(obj, args.degree, args.slack)
    lm = lm_bialgebra_object(u)
    _emit(
        {
            "command": "lm",
            "input": args.file,
            "degree": args.degree,
            "conditions": {k: _result_json(v) for k, v in lm.report.items()},
            "ok": lm.ok,
        }
    )
    return 0 if lm.ok else 2


def cmd_cohomology(args) -> int:
    from .cohomology import deformation_complex_report

    obj = parse_structure(_load(args.file))
    if not isinstance(obj, RackBialgebra):
        raise StructureError("cohomology needs a rack section")
    rep = deformation_complex_report(obj, args.max_n, with_betti=args.betti)
    ok = all(rep.d_squared.values())
    out = {
        "command": "cohomology",
        "input": args.file,
        "coderivation_dims": {str(n): d for n, d in rep.dims.items()},
        "ranks": {str(n): v for n, v in rep.ranks.items()},
        "d_squared_zero": {str(n): v for n, v in rep.d_squared.items()},
        "ok": ok,
    }
    if rep.betti is not None:
        out["betti"] = {str(n): v for n, v in rep.betti.items()}
    _emit(out)
    return 0 if ok else 2


def cmd_leibniz_embed(args) -> int:
    from .cohomology import check_embedding_chain_map, embed_leibniz, hom_basis, is_coderivation
    from .rack import from_leibniz

    l = parse_leibniz(_load(args.file))
    r = from_leibniz(l)
    coder = all(
        is_coderivation(r, embed_leibniz(l, f)) for f in hom_basis(l.dim, args.n)
    )
    chain = check_embedding_chain_map(l, args.n)
    ok = coder and chain
    _emit(
        {
            "command": "leibniz-embed",
            "input": args.file,
            "n": args.n,
            "extension_by_zero_is_coderivation": coder,
            "commutes_with_differential": chain,
            "ok": ok,
        }
    )
    return 0 if ok else 2


def cmd_deform(args) -> int:
    from .cohomology import first_order_deformation_check

    obj = parse_structure(_load(args.file))
    if not isinstance(obj, RackBialgebra):
        raise StructureError("deform needs a rack section")
    dcomul = (
        parse_comul_perturbation(_load(args.dcomul), obj.coalgebra)
        if args.dcomul
        else {}
    )
    drack = (
        parse_rack_perturbation(_load(args.drack), obj.coalgebra) if args.drack else {}
    )
    res = first_order_deformation_check(obj, dcomul, drack)
    _emit(
        {
            "command": "deform",
            "input": args.file,
            "conditions": {k: _result_json(v) for k, v in res.report.items()},
            "ok": res.passed,
        }
    )
    return 0 if res.passed else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rackkit",
        description="Exact verification toolkit for rack bialgebras",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify coalgebra and rack axioms")
    c.add_argument("file")
    c.set_defaults(fn=cmd_check)

    e = sub.add_parser("examples", help="list or dump built-in examples")
    e.add_argument("name", nargs="?")
    e.set_defaults(fn=cmd_examples)

    v = sub.add_parser("env", help="truncated universal enveloping algebra")
    v.add_argument("file")
    v.add_argument("--degree", type=int, required=True)
    v.add_argument("--slack", type=int, default=2)
    v.add_argument("--coideal", action="store_true")
    v.add_argument("--series", action="store_true")
    v.set_defaults(fn=cmd_env)

    y = sub.add_parser("ydcheck", help="Yetter-Drinfel'd rack conditions")
    y.add_argument("file")
    y.add_argument("--carrier", required=True, help="env:D[:S], polyk3:D, zN, or group file")
    y.add_argument("--q", help="JSON map label -> [[carrier label, scalar], ...]")
    y.set_defaults(fn=cmd_ydcheck)

    m = sub.add_parser("lm", help="bialgebra object in linear maps")
    m.add_argument("file")
    m.add_argument("--degree", type=int, default=2)
    m.add_argument("--slack", type=int, default=2)
    m.set_defaults(fn=cmd_lm)

    h = sub.add_parser("cohomology", help="deformation complex report")
    h.add_argument("file")
    h.add_argument("--max-n", type=int, default=2, dest="max_n")
    h.add_argument("--betti", action="store_true")
    h.set_defaults(fn=cmd_cohomology)

    le = sub.add_parser("leibniz-embed", help="bracket complex embedding check")
    le.add_argument("file")
    le.add_argument("--n", type=int, default=1)
    le.set_defaults(fn=cmd_leibniz_embed)

    d = sub.add_parser("deform", help="first-order deformation over dual numbers")
    d.add_argument("file")
    d.add_argument("--dcomul")
    d.add_argument("--drack")
    d.set_defaults(fn=cmd_deform)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.fn(args)
    except (StructureError, RackkitError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
