"""Finite algebraic structures as operation tables.

Elements are dense 0-based indices; names are metadata.  For ring-like
varieties ``op1`` is the additive operation and ``op2`` the multiplication
(or the Lie bracket).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .errors import (
    AxiomViolation,
    BadTable,
    NotHomomorphism,
    NotSubalgebra,
    UnknownKey,
    VarietyMismatch,
)

TAGS = (
    "group",
    "abelian-group",
    "monoid",
    "commutative-monoid",
    "ring",
    "unital-ring",
    "lie-fp",
    "semiring",
)

_GROUP_OP1 = {"group", "abelian-group", "ring", "unital-ring", "lie-fp"}
_COMMUTATIVE_OP1 = {"abelian-group", "commutative-monoid", "ring", "unital-ring", "lie-fp", "semiring"}
_HAS_OP2 = {"ring", "unital-ring", "lie-fp", "semiring"}


@dataclass(frozen=True)
class Variety:
    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise BadTable(f"unknown variety tag {self.tag!r}")
        if (self.tag == "lie-fp") != (self.p is not None):
            raise BadTable("lie-fp needs a prime p, other varieties take none")
        if self.p is not None and not _is_prime(self.p):
            raise BadTable(f"lie-fp characteristic {self.p} is not prime")

    def __str__(self):
        return f"lie-fp({self.p})" if self.tag == "lie-fp" else self.tag

    @property
    def group_op1(self):
        """op1 is a group operation (additive inverses available)."""
        return self.tag in _GROUP_OP1

    @property
    def commutative_op1(self):
        return self.tag in _COMMUTATIVE_OP1

    @property
    def has_op2(self):
        return self.tag in _HAS_OP2

    @property
    def schreier_path(self):
        """Decompositions go through Schreier retractions (no op1 inverses)."""
        return not self.group_op1


def parse_variety(text) -> Variety:
    if isinstance(text, Variety):
        return text
    if not isinstance(text, str):
        raise BadTable(f"variety must be a string, got {text!r}")
    m = re.fullmatch(r"lie-fp\((\d+)\)", text.strip())
    if m:
        return Variety("lie-fp", int(m.group(1)))
    return Variety(text.strip())


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True, eq=True)
class Structure:
    variety: Variety
    elements: tuple
    op1: tuple
    op2: tuple | None
    neutral: int
    unit: int | None
    inverses: tuple | None

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<Structure {self.variety} of order {len(self)}>"

    def __hash__(self):
        return hash((self.variety, self.elements))

    @property
    def order(self):
        return len(self.elements)

    def index(self, name):
        try:
            return self._positions[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    @cached_property
    def _positions(self):
        return {n: i for i, n in enumerate(self.elements)}

    def names(self, indices):
        return [self.elements[i] for i in indices]

    def mul(self, a, b):
        return self.op1[a][b]

    def inv(self, a):
        return self.inverses[a]

    def div(self, a, b):
        """a * b^-1 in op1 (a - b for additive notation)."""
        return self.op1[a][self.inverses[b]]

    def full(self):
        return Sub(self, tuple(range(len(self))))

    def trivial(self):
        return generated_sub((), self)


def structure(variety, elements, op1, op2=None, unit=None) -> Structure:
    """Convenience wrapper around :func:`validate_structure`."""
    desc = {"variety": str(parse_variety(variety)), "elements": list(elements), "op1": op1}
    if op2 is not None:
        desc["op2"] = op2
    if unit is not None:
        desc["unit"] = unit
    return validate_structure(desc)


_STRUCTURE_KEYS = {"variety", "elements", "op1", "op2", "unit"}


def _table(raw, n, what):
    if not isinstance(raw, Sequence) or isinstance(raw, (str, bytes)) or len(raw) != n:
        raise BadTable(f"{what} must be a {n}x{n} table")
    rows = []
    for row in raw:
        if not isinstance(row, Sequence) or isinstance(row, (str, bytes)) or len(row) != n:
            raise BadTable(f"{what} must be a {n}x{n} table")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise BadTable(f"{what} entry {v!r} out of range 0..{n - 1}")
        rows.append(tuple(row))
    return tuple(rows)


def validate_structure(desc: Mapping) -> Structure:
    """Check every axiom of the declared variety and fill derived data."""
    if not isinstance(desc, Mapping):
        raise BadTable("structure description must be an object")
    extra = set(desc) - _STRUCTURE_KEYS
    if extra:
        raise UnknownKey(f"unknown structure keys {sorted(extra)}")
    for key in ("variety", "elements", "op1"):
        if key not in desc:
            raise BadTable(f"structure description lacks {key!r}")
    variety = parse_variety(desc["variety"])
    elements = desc["elements"]
    if not isinstance(elements, Sequence) or isinstance(elements, str) or not elements:
        raise BadTable("elements must be a non-empty list of names")
    if not all(isinstance(e, str) for e in elements) or len(set(elements)) != len(elements):
        raise BadTable("element names must be distinct strings")
    names = tuple(elements)
    n = len(names)
    op1 = _table(desc["op1"], n, "op1")
    op2 = desc.get("op2")
    if variety.has_op2:
        if op2 is None:
            raise BadTable(f"variety {variety} needs op2")
        op2 = _table(op2, n, "op2")
    elif op2 is not None:
        raise BadTable(f"variety {variety} takes no op2")
    unit = desc.get("unit")
    if unit is not None and variety.tag != "unital-ring":
        raise BadTable("only unital-ring structures carry a unit")

    def w(*idx):
        return tuple(names[i] for i in idx)

    r = range(n)
    for a, b, c in iproduct(r, r, r):
        if op1[op1[a][b]][c] != op1[a][op1[b][c]]:
            raise AxiomViolation("associativity", w(a, b, c))
    neutral = next((e for e in r if all(op1[e][x] == x == op1[x][e] for x in r)), None)
    if neutral is None:
        raise AxiomViolation("identity", ())
    inverses = None
    if variety.group_op1:
        inv = []
        for a in r:
            b = next((b for b in r if op1[a][b] == neutral), None)
            if b is None or op1[b][a] != neutral:
                raise AxiomViolation("inverse", w(a))
            inv.append(b)
        inverses = tuple(inv)
    if variety.commutative_op1:
        for a, b in iproduct(r, r):
            if op1[a][b] != op1[b][a]:
                raise AxiomViolation("commutativity", w(a, b))

    if variety.has_op2:
        for a, b, c in iproduct(r, r, r):
            if op2[a][op1[b][c]] != op1[op2[a][b]][op2[a][c]]:
                raise AxiomViolation("left distributivity", w(a, b, c))
            if op2[op1[a][b]][c] != op1[op2[a][c]][op2[b][c]]:
                raise AxiomViolation("right distributivity", w(a, b, c))
        if variety.tag == "lie-fp":
            _check_lie(variety.p, names, op1, op2, neutral)
        else:
            for a, b, c in iproduct(r, r, r):
                if op2[op2[a][b]][c] != op2[a][op2[b][c]]:
                    raise AxiomViolation("multiplicative associativity", w(a, b, c))
        if variety.tag == "semiring":
            for a in r:
                if op2[neutral][a] != neutral or op2[a][neutral] != neutral:
                    raise AxiomViolation("absorbing zero", w(a))
    if variety.tag == "unital-ring":
        if unit is None:
            unit = next((u for u in r if all(op2[u][x] == x == op2[x][u] for x in r)), None)
            if unit is None:
                raise AxiomViolation("unit", ())
        else:
            if not isinstance(unit, int) or isinstance(unit, bool) or not 0 <= unit < n:
                raise BadTable(f"unit index {unit!r} out of range")
            for x in r:
                if op2[unit][x] != x or op2[x][unit] != x:
                    raise AxiomViolation("unit", w(unit, x))
    return Structure(variety, names, op1, op2, neutral, unit, inverses)


def _check_lie(p, names, op1, op2, zero):
    r = range(len(names))
    for a in r:
        acc = zero
        for _ in range(p):
            acc = op1[acc][a]
        if acc != zero:
            raise AxiomViolation("characteristic", (names[a],))
        if op2[a][a] != zero:
            raise AxiomViolation("alternating", (names[a],))
    for a, b, c in iproduct(r, r, r):
        # [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0
        t = op1[op1[op2[a][op2[b][c]]][op2[b][op2[c][a]]]][op2[c][op2[a][b]]]
        if t != zero:
            raise AxiomViolation("jacobi", (names[a], names[b], names[c]))


def structure_to_dict(A: Structure) -> dict:
    d = {
        "variety": str(A.variety),
        "elements": list(A.elements),
        "op1": [list(row) for row in A.op1],
    }
    if A.op2 is not None:
        d["op2"] = [list(row) for row in A.op2]
    if A.unit is not None:
        d["unit"] = A.unit
    return d


# --- homomorphisms -------------------------------------------------------


@dataclass(frozen=True)
class Hom:
    src: Structure
    dst: Structure
    map: tuple

    def __call__(self, a):
        return self.map[a]

    def __repr__(self):
        return f"<Hom {self.src!r} -> {self.dst!r}>"

    @cached_property
    def image(self):
        return frozenset(self.map)

    @property
    def injective(self):
        return len(self.image) == len(self.map)

    @property
    def surjective(self):
        return len(self.image) == len(self.dst)

    def then(self, g: Hom) -> Hom:
        """g after self."""
        return compose(g, self)


def identity(A: Structure) -> Hom:
    return Hom(A, A, tuple(range(len(A))))


def compose(g: Hom, f: Hom) -> Hom:
    """g . f"""
    if f.dst != g.src:
        raise VarietyMismatch("composite of non-composable homomorphisms")
    return Hom(f.src, g.dst, tuple(g.map[i] for i in f.map))


def validate_hom(mapping, A: Structure, B: Structure) -> Hom:
    if A.variety != B.variety:
        raise VarietyMismatch(f"{A.variety} vs {B.variety}")
    if isinstance(mapping, (str, bytes)) or len(mapping) != len(A):
        raise BadTable(f"hom map must have length {len(A)}")
    for v in mapping:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < len(B):
            raise BadTable(f"hom value {v!r} out of range")
    m = tuple(mapping)
    nA = A.elements
    if m[A.neutral] != B.neutral:
        raise NotHomomorphism("neutral", (nA[A.neutral],))
    if A.unit is not None and m[A.unit] != B.unit:
        raise NotHomomorphism("unit", (nA[A.unit],))
    r = range(len(A))
    for a, b in iproduct(r, r):
        if m[A.op1[a][b]] != B.op1[m[a]][m[b]]:
            raise NotHomomorphism("op1", (nA[a], nA[b]))
    if A.op2 is not None:
        for a, b in iproduct(r, r):
            if m[A.op2[a][b]] != B.op2[m[a]][m[b]]:
                raise NotHomomorphism("op2", (nA[a], nA[b]))
    return Hom(A, B, m)


def terminal(A: Structure) -> Hom:
    """The unique map to the one-element structure of the same variety."""
    return Hom(A, one(A.variety), (0,) * len(A))


def one(variety) -> Structure:
    variety = parse_variety(variety)
    op2 = ((0,),) if variety.has_op2 else None
    return Structure(
        variety,
        ("0",) if variety.has_op2 else ("e",),
        ((0,),),
        op2,
        0,
        0 if variety.tag == "unital-ring" else None,
        (0,) if variety.group_op1 else None,
    )


# --- subobjects ----------------------------------------------------------


@dataclass(frozen=True)
class Sub:
    parent: Structure
    members: tuple

    def __repr__(self):
        return f"<Sub of order {len(self.members)} in {self.parent!r}>"

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.memberset

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def memberset(self):
        return frozenset(self.members)

    @cached_property
    def as_structure(self) -> Structure:
        """The subobject as a standalone structure, elements in index order."""
        A = self.parent
        pos = {a: i for i, a in enumerate(self.members)}
        op1 = tuple(tuple(pos[A.op1[a][b]] for b in self.members) for a in self.members)
        op2 = None
        if A.op2 is not None:
            op2 = tuple(tuple(pos[A.op2[a][b]] for b in self.members) for a in self.members)
        inverses = None
        if A.inverses is not None:
            inverses = tuple(pos[A.inverses[a]] for a in self.members)
        return Structure(
            A.variety,
            tuple(A.elements[a] for a in self.members),
            op1,
            op2,
            pos[A.neutral],
            None if A.unit is None else pos[A.unit],
            inverses,
        )

    @cached_property
    def inclusion(self) -> Hom:
        return Hom(self.as_structure, self.parent, self.members)

    def position(self, a):
        """Index of parent element a inside as_structure."""
        return self._pos[a]

    @cached_property
    def _pos(self):
        return {a: i for i, a in enumerate(self.members)}

    def corestrict(self, f: Hom) -> Hom:
        """f with codomain narrowed to this subobject (image must lie inside)."""
        return Hom(f.src, self.as_structure, tuple(self._pos[v] for v in f.map))


def is_closed(A: Structure, members) -> tuple | None:
    """Return None if members form a subalgebra, else (op, witness indices)."""
    S = members if isinstance(members, (set, frozenset)) else set(members)
    if A.neutral not in S:
        return ("neutral", ())
    if A.unit is not None and A.unit not in S:
        return ("unit", ())
    if A.inverses is not None:
        for a in S:
            if A.inverses[a] not in S:
                return ("inverse", (a,))
    for a in S:
        row1 = A.op1[a]
        row2 = A.op2[a] if A.op2 is not None else None
        for b in S:
            if row1[b] not in S:
                return ("op1", (a, b))
            if row2 is not None and row2[b] not in S:
                return ("op2", (a, b))
    return None


def make_sub(A: Structure, members: Iterable[int]) -> Sub:
    ms = tuple(sorted(set(members)))
    for a in ms:
        if not 0 <= a < len(A):
            raise BadTable(f"member {a!r} out of range")
    bad = is_closed(A, set(ms))
    if bad is not None:
        op, wit = bad
        raise NotSubalgebra(op, tuple(A.elements[i] for i in wit))
    return Sub(A, ms)


def closure(A: Structure, seed: Iterable[int], base: Iterable[int] = (), allowed=None, bad=None):
    """Smallest subalgebra containing seed and base; base must already be closed.

    With allowed/bad given, returns None as soon as the closure leaves allowed
    or meets bad.
    """
    members = set(base)
    work = []

    def add(c):
        if c not in members:
            members.add(c)
            work.append(c)
            return (allowed is not None and c not in allowed) or (bad is not None and c in bad)
        return False

    stop = False
    if not members:
        stop |= add(A.neutral)
        if A.unit is not None:
            stop |= add(A.unit)
    for a in seed:
        stop |= add(a)
    op1, op2, inv = A.op1, A.op2, A.inverses
    while work and not stop:
        a = work.pop()
        if inv is not None and add(inv[a]):
            stop = True
            break
        r1, r2 = op1[a], (op2[a] if op2 is not None else None)
        for b in list(members):
            if add(r1[b]) or add(op1[b][a]):
                stop = True
                break
            if r2 is not None and (add(r2[b]) or add(op2[b][a])):
                stop = True
                break
    if stop:
        return None
    return frozenset(members)


def generated_sub(seed: Iterable[int], A: Structure) -> Sub:
    seed = list(seed)
    for a in seed:
        if not 0 <= a < len(A):
            raise BadTable(f"seed index {a!r} out of range")
    return Sub(A, tuple(sorted(closure(A, seed))))


def kernel_sub(f: Hom) -> Sub:
    n = f.dst.neutral
    return Sub(f.src, tuple(a for a in range(len(f.src)) if f.map[a] == n))


def preimage_sub(f: Hom, V: Sub) -> Sub:
    if V.parent != f.dst:
        raise VarietyMismatch("subobject does not live in the codomain")
    vs = V.memberset
    return Sub(f.src, tuple(a for a in range(len(f.src)) if f.map[a] in vs))


def image_sub(f: Hom) -> Sub:
    return Sub(f.dst, tuple(sorted(f.image)))


def subalgebras(A: Structure, base: Iterable[int] = (), within: Iterable[int] | None = None,
                forbidden: Iterable[int] = ()):
    """All subalgebras S with closure(base) <= S <= within avoiding forbidden.

    Yields frozensets in lexicographic order of their sorted member tuples.
    """
    allowed = set(range(len(A))) if within is None else set(within)
    bad = set(forbidden)
    start = closure(A, base, (), allowed, bad)
    if start is None:
        return []
    seen = {start}
    stack = [start]
    while stack:
        S = stack.pop()
        for e in sorted(allowed - S - bad):
            T = closure(A, (e,), S, allowed, bad)
            if T is None or T in seen:
                continue
            seen.add(T)
            stack.append(T)
    return sorted(seen, key=lambda s: tuple(sorted(s)))


# --- products ------------------------------------------------------------


@lru_cache(maxsize=32)
def product(A: Structure, B: Structure) -> Structure:
    """A x B with lexicographic element order (a, b) -> a*|B| + b."""
    if A.variety != B.variety:
        raise VarietyMismatch("product of structures of different varieties")
    na, nb = len(A), len(B)
    idx = [(a, b) for a in range(na) for b in range(nb)]

    def table(ta, tb):
        rows = []
        for a in range(na):
            ra = [v * nb for v in ta[a]]
            for b in range(nb):
                rb = tb[b]
                rows.append(tuple(x + y for x in ra for y in rb))
        return tuple(rows)

    op2 = table(A.op2, B.op2) if A.op2 is not None else None
    inverses = None
    if A.inverses is not None:
        inverses = tuple(A.inverses[a] * nb + B.inverses[b] for (a, b) in idx)
    return Structure(
        A.variety,
        tuple(f"({A.elements[a]},{B.elements[b]})" for (a, b) in idx),
        table(A.op1, B.op1),
        op2,
        A.neutral * nb + B.neutral,
        None if A.unit is None else A.unit * nb + B.unit,
        inverses,
    )


def projections(A: Structure, B: Structure, AB: Structure | None = None):
    AB = AB if AB is not None else product(A, B)
    nb = len(B)
    p0 = Hom(AB, A, tuple(i // nb for i in range(len(AB))))
    p1 = Hom(AB, B, tuple(i % nb for i in range(len(AB))))
    return p0, p1


def pair_index(B: Structure, a, b):
    return a * len(B) + b


def diagonal(A: Structure, AA: Structure | None = None) -> Hom:
    AA = AA if AA is not None else product(A, A)
    n = len(A)
    return Hom(A, AA, tuple(a * n + a for a in range(n)))


# --- homomorphism search (used by catalogs and corpora) -------------------


def generators(A: Structure) -> list:
    """A small generating set, greedy by descending order of generated sub."""
    gens = []
    current = closure(A, ())
    while len(current) < len(A):
        best, best_size = None, -1
        for e in range(len(A)):
            if e in current:
                continue
            size = len(closure(A, (e,), current))
            if size > best_size:
                best, best_size = e, size
        gens.append(best)
        current = closure(A, (best,), current)
    return gens


def _extend(A, B, gens, images):
    """Extend gens -> images to a homomorphism, or None if inconsistent."""
    m = {A.neutral: B.neutral}
    if A.unit is not None:
        if B.unit is None:
            return None
        m[A.unit] = B.unit
    for g, h in zip(gens, images):
        if m.get(g, h) != h:
            return None
        m[g] = h
    work = list(m)
    ops = [(A.op1, B.op1)] + ([(A.op2, B.op2)] if A.op2 is not None else [])
    while work:
        a = work.pop()
        for b in list(m):
            for ta, tb in ops:
                for c, v in ((ta[a][b], tb[m[a]][m[b]]), (ta[b][a], tb[m[b]][m[a]])):
                    old = m.get(c)
                    if old is None:
                        m[c] = v
                        work.append(c)
                    elif old != v:
                        return None
    if len(m) != len(A):
        return None
    return tuple(m[a] for a in range(len(A)))


def homomorphisms(A: Structure, B: Structure, injective=None, limit=None):
    """Enumerate all homomorphisms A -> B (brute force over generator images)."""
    if A.variety != B.variety:
        raise VarietyMismatch("homs between different varieties")
    gens = generators(A)
    out = []
    for images in iproduct(range(len(B)), repeat=len(gens)):
        m = _extend(A, B, gens, images)
        if m is None:
            continue
        h = Hom(A, B, m)
        if injective is not None and h.injective != injective:
            continue
        out.append(h)
        if limit is not None and len(out) >= limit:
            break
    return out
