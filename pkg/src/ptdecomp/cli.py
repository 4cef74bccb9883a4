"""Command-line entry point: ptdecomp VERB FILE... [flags].

Exit status: 0 property holds, 1 refuted (witness in the report),
2 malformed input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats as fm
from .algebra import parse_variety, structure_to_dict
from .errors import BudgetExceeded, InternalAssertion, NotNormal, NotSchreier, PtDecompError
from .oracle import CONGRUENCE_BUDGET, DEFAULT_BUDGET

HOLDS, REFUTED, MALFORMED, BUDGET = 0, 1, 2, 3


class Refuted(Exception):
    def __init__(self, result):
        super().__init__("refuted")
        self.result = result


def _kind(obj):
    keys = set(obj) - {"conventions"} if isinstance(obj, dict) else set()
    table = [
        ({"variety", "elements", "op1"}, "structure"),
        ({"structure_total", "structure_base", "f", "s"}, "point"),
        ({"src", "dst", "x", "y"}, "pt-mono"),
        ({"src", "dst", "m1", "m0"}, "internal-mono"),
        ({"src", "dst", "map"}, "hom"),
        ({"G1", "G0", "d0", "d1", "s0", "d2"}, "internal-groupoid"),
        ({"objects", "arrows", "comp", "inv", "ids"}, "groupoid"),
        ({"parent", "members"}, "sub"),
        ({"parent", "arrows"}, "wide"),
        ({"base", "pairs"}, "relation"),
    ]
    for required, kind in table:
        if required <= keys:
            return kind
    return None


LOADERS = {
    "structure": (fm.load_structure, structure_to_dict),
    "point": (fm.load_point, fm.point_to_dict),
    "pt-mono": (fm.load_pt_mono, fm.pt_mono_to_dict),
    "internal-mono": (fm.load_internal_mono, fm.internal_mono_to_dict),
    "hom": (fm.load_hom, fm.hom_to_dict),
    "internal-groupoid": (fm.load_internal_groupoid, None),
    "groupoid": (fm.load_groupoid, None),
    "sub": (fm.load_sub, fm.sub_to_dict),
    "wide": (fm.load_wide, fm.wide_to_dict),
    "relation": (fm.load_relation, fm.relation_to_dict),
}


def _dumper(kind):
    from .groupoids import groupoid_to_dict, internal_groupoid_to_dict
    if kind == "groupoid":
        return groupoid_to_dict
    if kind == "internal-groupoid":
        return internal_groupoid_to_dict
    return LOADERS[kind][1]


def _variety_of(obj):
    for attr in ("variety", "src", "X", "parent", "base", "G1"):
        v = getattr(obj, attr, None)
        if v is None:
            continue
        if attr == "variety":
            return v
        return _variety_of(v)
    return None


def _check_variety(obj, args):
    if args.variety is None:
        return None
    want = parse_variety(args.variety)
    have = _variety_of(obj)
    if have is not None and have != want:
        from .errors import VarietyMismatch
        raise VarietyMismatch(f"input is {have}, not {want}")
    return want


def _names(A, idx):
    return [A.elements[i] for i in idx]


# --- verbs -------------------------------------------------------------------


def cmd_check(args):
    doc = fm.as_doc(args.files[0], "input")
    if set(doc.obj) - {"conventions"} == {"verb", "status", "result"} and doc.obj["verb"] == "check":
        # a machine report of check: validate what it contains
        doc = fm.Doc(doc.obj["result"].get("value"), doc.base, "input")
    kind = _kind(doc.obj)
    if kind is None:
        from .errors import MalformedInput
        raise MalformedInput("cannot tell what kind of object this file describes")
    obj = LOADERS[kind][0](doc)
    _check_variety(obj, args)
    return {"kind": kind, "value": _dumper(kind)(obj)}, [f"valid {kind}: {obj!r}"]


def cmd_decompose(args):
    from .decomp import decompose
    m = fm.load_pt_mono(args.files[0])
    D = decompose(m, _check_variety(m, args))
    res = fm.decomposition_to_dict(D)
    human = [
        f"Ybar = {{{', '.join(_names(m.dst.Y, D.ybar))}}}",
        f"Xbar = {{{', '.join(_names(m.dst.X, D.xbar))}}}",
    ]
    return res, human, lambda: _certify_extremal(m, D, args)


def cmd_schreier(args):
    from .decomp import schreier_retraction
    P = fm.load_point(args.files[0])
    _check_variety(P, args)
    try:
        q = schreier_retraction(P).q
    except NotSchreier as exc:
        raise Refuted({"schreier": False, "fiber": exc.y, "reason": exc.reason, "witness": exc.witness})
    human = [f"q({P.X.elements[a]}) = {P.X.elements[q[a]]}" for a in range(len(P.X))]
    return {"schreier": True, "q": list(q)}, human


def cmd_outsider(args):
    from .decomp import is_outsider
    m = fm.load_pt_mono(args.files[0])
    ok, yb = is_outsider(m, _check_variety(m, args))
    res = {"outsider": ok, "ybar": list(yb.members)}
    if not ok:
        raise Refuted(res)
    return res, [f"outsider; Ybar = {{{', '.join(_names(m.dst.Y, yb.members))}}}"]


def cmd_normalizer(args):
    from .normalizers import normalizer
    v = fm.load_hom(args.files[0])
    res = normalizer(v, _check_variety(v, args))
    T = v.dst
    out = {
        "X": list(res.X.members),
        "R": [list(p) for p in res.R.sorted_pairs()],
        "u": list(res.u.map),
        "w": list(res.w.map),
    }
    classes = ["{" + ", ".join(T.elements[res.X.members[i]] for i in c) + "}" for c in res.R.classes()]
    human = [f"X = {{{', '.join(_names(T, res.X.members))}}}", "R classes: " + " ".join(classes)]

    def cert():
        from .oracle import verify_largest
        return verify_largest(res.R, res.u, args.budget or CONGRUENCE_BUDGET)
    return out, human, cert


def cmd_is_normal(args):
    from .normalizers import is_normal
    u = fm.load_hom(args.files[0])
    R = fm.load_relation(args.files[1])
    _check_variety(u, args)
    ok = is_normal(u, R)
    if not ok:
        raise Refuted({"normal": False})
    return {"normal": True}, ["normal"]


def cmd_extend_relation(args):
    from .normalizers import extend_relation
    R = fm.load_relation(args.files[0])
    v = fm.load_hom(args.files[1])
    X, S = extend_relation(R, v, _check_variety(v, args))
    T = v.dst
    human = [f"X = {{{', '.join(_names(T, X.members))}}}",
             "S = " + " ".join(f"({T.elements[X.members[a]]},{T.elements[X.members[b]]})"
                               for a, b in S.sorted_pairs())]
    return {"X": list(X.members), "S": [list(p) for p in S.sorted_pairs()]}, human


def cmd_groupoid_normalize(args):
    from .groupoids import grd_y_normalizer
    U = fm.load_wide(args.files[0])
    N = grd_y_normalizer(U)
    human = ["X1 = {" + ", ".join(U.parent.arrows[a] for a in N.sorted_arrows()) + "}"]

    def cert():
        from .oracle import Certificate, brute_grd_normalizer, normalizing_subgroupoids
        budget = args.budget or 24
        if len(U.parent.arrows) > budget:
            raise BudgetExceeded(0, f"{len(U.parent.arrows)} arrows exceed budget {budget}")
        B = brute_grd_normalizer(U)
        n = len(normalizing_subgroupoids(U))
        ok = B.arrowset == N.arrowset
        return Certificate("largest-normalizing-subgroupoid", fm.digest(fm.wide_to_dict(U)), n,
                           "verified" if ok else "refuted",
                           None if ok else {"brute": sorted(B.arrowset)})
    return {"arrows": N.sorted_arrows()}, human, cert


def cmd_dif_decompose(args):
    from .groupoids import dif_decompose_internal_gp, internal_groupoid_to_dict
    m = fm.load_internal_mono(args.files[0])
    D = dif_decompose_internal_gp(m)
    P = D.points
    res = {
        "mid": internal_groupoid_to_dict(D.mid),
        "u": {"m1": list(D.u.m1.map), "m0": list(D.u.m0.map)},
        "w": {"m1": list(D.w.m1.map), "m0": list(D.w.m0.map)},
        "ybar": list(P.ybar),
        "xbar": list(P.xbar),
    }
    human = [f"mid0 = {{{', '.join(_names(m.dst.G0, P.ybar))}}}",
             f"mid1 has {len(P.xbar)} arrows"]
    return res, human, lambda: _certify_extremal(P.m, P, args)


def _certify_extremal(m, D, args):
    from .oracle import verify_extremal
    return verify_extremal(m, D, args.budget or DEFAULT_BUDGET)


def cmd_verify(args):
    from .decomp import Decomposition, decompose
    from .oracle import verify_extremal
    m = fm.load_pt_mono(args.files[0])
    v = _check_variety(m, args)
    if len(args.files) > 1:
        d = fm.as_doc(args.files[1], "claimed decomposition").keys(["ybar", "xbar"])
        D = Decomposition(m, tuple(sorted(d["ybar"])), tuple(sorted(d["xbar"])), m.variety)
    else:
        D = decompose(m, v)
    c = verify_extremal(m, D, args.budget or DEFAULT_BUDGET)
    if not c.verified:
        raise Refuted({"certificate": c.to_dict()})
    return {"certificate": c.to_dict()}, [f"verified against {c.alternatives_checked} alternatives"]


def cmd_probe_maltsev(args):
    from .oracle import maltsev_probe
    A = fm.load_structure(args.files[0])
    _check_variety(A, args)
    R = maltsev_probe(A, args.budget)
    if R is not None:
        pairs = R.sorted_pairs()
        raise Refuted({"counterexample": [list(p) for p in pairs],
                       "names": [[A.elements[a], A.elements[b]] for a, b in pairs]})
    return {"counterexample": None}, ["every reflexive relation is an equivalence"]


VERBS = {
    "check": (cmd_check, 1, 1),
    "decompose": (cmd_decompose, 1, 1),
    "schreier": (cmd_schreier, 1, 1),
    "outsider": (cmd_outsider, 1, 1),
    "normalizer": (cmd_normalizer, 1, 1),
    "is-normal": (cmd_is_normal, 2, 2),
    "extend-relation": (cmd_extend_relation, 2, 2),
    "groupoid-normalize": (cmd_groupoid_normalize, 1, 1),
    "dif-decompose": (cmd_dif_decompose, 1, 1),
    "verify": (cmd_verify, 1, 2),
    "probe-maltsev": (cmd_probe_maltsev, 1, 1),
}


def build_parser():
    p = argparse.ArgumentParser(prog="ptdecomp", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("files", nargs="+")
    p.add_argument("--variety")
    p.add_argument("--budget", type=int)
    p.add_argument("--format", choices=["human", "machine"], default="human")
    p.add_argument("--output")
    p.add_argument("--certify", action="store_true")
    return p


def _emit(args, report, human_lines):
    if args.format == "machine":
        text = fm.canonical_dumps(fm.with_conventions(report))
    else:
        lines = [f"{report['verb']}: {report['status']}"]
        lines += human_lines or []
        if "error" in report:
            lines.append(f"error: {report['error']}")
        if report.get("witness") is not None:
            lines.append("witness: " + json.dumps(report["witness"], ensure_ascii=False))
        if "certificate" in report:
            c = report["certificate"]
            lines.append(f"certificate: {c['status']} ({c['alternatives_checked']} alternatives)")
        text = "\n".join(lines)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn, lo, hi = VERBS[args.verb]
    if not lo <= len(args.files) <= hi:
        parser.error(f"{args.verb} takes {lo if lo == hi else f'{lo}-{hi}'} file(s)")
    report = {"verb": args.verb}
    human = None
    code = HOLDS
    try:
        out = fn(args)
        result, human = out[0], out[1]
        report.update(status="holds", result=result)
        if args.certify and len(out) > 2:
            try:
                cert = out[2]()
            except BudgetExceeded as exc:
                from .oracle import Certificate
                cert = Certificate("budget", "", exc.enumerated, "budget_exceeded")
            report["certificate"] = cert.to_dict()
            if args.output:
                Path(args.output + ".cert.json").write_text(fm.canonical_dumps(cert.to_dict()) + "\n")
            if cert.status == "refuted":
                code = REFUTED
                report["status"] = "refuted"
            elif cert.status == "budget_exceeded":
                code = BUDGET
                report["status"] = "budget_exceeded"
    except Refuted as exc:
        code = REFUTED
        report.update(status="refuted", result=exc.result)
        report["witness"] = exc.result
    except BudgetExceeded as exc:
        code = BUDGET
        report.update(status="budget_exceeded", error=str(exc))
    except (NotNormal, NotSchreier, InternalAssertion) as exc:
        code = REFUTED
        report.update(status="refuted", error=str(exc), witness=_jsonable(exc.witness))
    except PtDecompError as exc:
        code = MALFORMED
        report.update(status="malformed", error=str(exc), witness=_jsonable(exc.witness))
    _emit(args, report, human)
    return code


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    if isinstance(w, list):
        return [_jsonable(x) for x in w]
    return w


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
