"""JSON file formats: loaders that reject unknown keys, canonical dumpers, digests.

Wherever a structure (or point, groupoid, ...) is expected, a document may
hold either the inline object or a string path, resolved relative to the
file that references it.  Every top-level object may carry an optional
"conventions" block, which is ignored on input.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .algebra import Hom, Structure, Sub, make_sub, structure_to_dict, validate_hom, validate_structure
from .errors import BadTable, MalformedInput, UnknownKey

CONVENTIONS = {
    "indices": "0-based element indices",
    "product": "(a,b) in A x B has index a*|B|+b",
    "composition": "comp[g][f] = g.f, defined iff tgt f = src g",
    "d2": "d2(phi,psi) = psi.phi^-1 on the lexicographic kernel pair of d0",
    "relation": "pair (a,b) of X x X",
}


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj) -> str:
    return "sha256:" + hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()


def with_conventions(obj: dict) -> dict:
    return {**obj, "conventions": CONVENTIONS}


def read_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON: {exc}") from exc


class Doc:
    """A JSON object together with the directory its relative references use."""

    def __init__(self, obj, base: Path, what: str):
        if not isinstance(obj, dict):
            raise BadTable(f"{what} must be a JSON object")
        self.obj, self.base, self.what = obj, base, what

    def keys(self, required, optional=()):
        extra = set(self.obj) - set(required) - set(optional) - {"conventions"}
        if extra:
            raise UnknownKey(f"unknown {self.what} keys {sorted(extra)}")
        missing = [k for k in required if k not in self.obj]
        if missing:
            raise BadTable(f"{self.what} lacks {missing}")
        return self

    def __getitem__(self, k):
        return self.obj[k]

    def get(self, k, default=None):
        return self.obj.get(k, default)

    def sub(self, key, what):
        """The nested document at key, following a path reference if it is a string."""
        val = self.obj[key]
        if isinstance(val, str):
            path = (self.base / val).resolve()
            return Doc(read_json(path), path.parent, what)
        return Doc(val, self.base, what)


def as_doc(src, what) -> Doc:
    if isinstance(src, Doc):
        return src
    if isinstance(src, (str, Path)):
        path = Path(src).resolve()
        return Doc(read_json(path), path.parent, what)
    return Doc(src, Path.cwd(), what)


def _indices(raw, what):
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise BadTable(f"{what} must be a list of indices")
    return raw


# --- algebra ---------------------------------------------------------------


def load_structure(src) -> Structure:
    d = as_doc(src, "structure")
    obj = {k: v for k, v in d.obj.items() if k != "conventions"}
    return validate_structure(obj)


def load_hom(src) -> Hom:
    d = as_doc(src, "hom").keys(["src", "dst", "map"])
    A = load_structure(d.sub("src", "structure"))
    B = load_structure(d.sub("dst", "structure"))
    return validate_hom(_indices(d["map"], "map"), A, B)


def hom_to_dict(f: Hom) -> dict:
    return {"src": structure_to_dict(f.src), "dst": structure_to_dict(f.dst), "map": list(f.map)}


def load_sub(src) -> Sub:
    d = as_doc(src, "subobject").keys(["parent", "members"])
    A = load_structure(d.sub("parent", "structure"))
    return make_sub(A, _indices(d["members"], "members"))


def sub_to_dict(S: Sub) -> dict:
    return {"parent": structure_to_dict(S.parent), "members": list(S.members)}


# --- points ----------------------------------------------------------------


def load_point(src):
    from .points import make_point
    d = as_doc(src, "point").keys(["structure_total", "structure_base", "f", "s"])
    X = load_structure(d.sub("structure_total", "structure"))
    Y = load_structure(d.sub("structure_base", "structure"))
    f = validate_hom(_indices(d["f"], "f"), X, Y)
    s = validate_hom(_indices(d["s"], "s"), Y, X)
    return make_point(f, s)


def point_to_dict(P) -> dict:
    return {
        "structure_total": structure_to_dict(P.X),
        "structure_base": structure_to_dict(P.Y),
        "f": list(P.f.map),
        "s": list(P.s.map),
    }


def load_pt_mono(src):
    from .points import make_pt_mono
    d = as_doc(src, "point monomorphism").keys(["src", "dst", "x", "y"])
    Pp = load_point(d.sub("src", "point"))
    P = load_point(d.sub("dst", "point"))
    x = validate_hom(_indices(d["x"], "x"), Pp.X, P.X)
    y = validate_hom(_indices(d["y"], "y"), Pp.Y, P.Y)
    return make_pt_mono(y, x, Pp, P)


def pt_mono_to_dict(m) -> dict:
    return {"src": point_to_dict(m.src), "dst": point_to_dict(m.dst), "x": list(m.x.map), "y": list(m.y.map)}


def decomposition_to_dict(D) -> dict:
    return {
        "u": pt_mono_to_dict(D.u),
        "mid": point_to_dict(D.mid),
        "w": pt_mono_to_dict(D.w),
        "variety": str(D.variety),
        "ybar": list(D.ybar),
        "xbar": list(D.xbar),
    }


# --- relations ---------------------------------------------------------------


def load_relation(src):
    from .normalizers import make_relation
    d = as_doc(src, "relation").keys(["base", "pairs"])
    X = load_structure(d.sub("base", "structure"))
    pairs = d["pairs"]
    if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
        raise BadTable("pairs must be a list of [a, b]")
    for p in pairs:
        _indices(p, "pair")
        if not all(0 <= v < len(X) for v in p):
            raise BadTable(f"pair {p} out of range")
    return make_relation(X, [tuple(p) for p in pairs])


def relation_to_dict(R) -> dict:
    return {"base": structure_to_dict(R.base), "pairs": [list(p) for p in R.sorted_pairs()]}


# --- groupoids ---------------------------------------------------------------


def load_groupoid(src):
    from .groupoids import make_groupoid
    d = as_doc(src, "groupoid").keys(["objects", "arrows", "comp", "inv", "ids"])
    objects = d["objects"]
    if not isinstance(objects, list) or not objects or not all(isinstance(o, str) for o in objects):
        raise BadTable("objects must be a non-empty list of names")
    if len(set(objects)) != len(objects):
        raise BadTable("object names must be distinct")
    arrows = []
    for a in d["arrows"] if isinstance(d["arrows"], list) else [None]:
        ad = Doc(a, d.base, "arrow").keys(["name", "src", "tgt"])
        if not isinstance(ad["name"], str):
            raise BadTable("arrow name must be a string")
        _indices([ad["src"], ad["tgt"]], "arrow endpoints")
        arrows.append((ad["name"], ad["src"], ad["tgt"]))
    n = len(arrows)
    comp = d["comp"]
    if not isinstance(comp, list) or not all(isinstance(t, list) and len(t) == 3 for t in comp):
        raise BadTable("comp must be a list of [g, f, g.f] triples")
    for t in comp:
        _indices(t, "comp triple")
        if not all(0 <= v < n for v in t):
            raise BadTable(f"comp triple {t} out of range")
    return make_groupoid(objects, arrows, [tuple(t) for t in comp],
                         _indices(d["inv"], "inv"), _indices(d["ids"], "ids"))


def load_wide(src):
    from .groupoids import make_wide
    d = as_doc(src, "wide subgroupoid").keys(["parent", "arrows"])
    G = load_groupoid(d.sub("parent", "groupoid"))
    arrows = _indices(d["arrows"], "arrows")
    if not all(0 <= a < len(G.arrows) for a in arrows):
        raise BadTable("arrow index out of range")
    return make_wide(G, arrows)


def wide_to_dict(U) -> dict:
    from .groupoids import groupoid_to_dict
    return {"parent": groupoid_to_dict(U.parent), "arrows": U.sorted_arrows()}


def load_internal_groupoid(src):
    from .groupoids import internal_groupoid_gp
    d = as_doc(src, "internal groupoid").keys(["G1", "G0", "d0", "d1", "s0", "d2"])
    G1 = load_structure(d.sub("G1", "structure"))
    G0 = load_structure(d.sub("G0", "structure"))
    return internal_groupoid_gp(G1, G0, _indices(d["d0"], "d0"), _indices(d["d1"], "d1"),
                                _indices(d["s0"], "s0"), _indices(d["d2"], "d2"))


def load_internal_mono(src):
    from .groupoids import make_internal_mono
    d = as_doc(src, "internal groupoid monomorphism").keys(["src", "dst", "m1", "m0"])
    a = load_internal_groupoid(d.sub("src", "internal groupoid"))
    b = load_internal_groupoid(d.sub("dst", "internal groupoid"))
    return make_internal_mono(a, b, _indices(d["m1"], "m1"), _indices(d["m0"], "m0"))


def internal_mono_to_dict(m) -> dict:
    from .groupoids import internal_groupoid_to_dict
    return {
        "src": internal_groupoid_to_dict(m.src),
        "dst": internal_groupoid_to_dict(m.dst),
        "m1": list(m.m1.map),
        "m0": list(m.m0.map),
    }
