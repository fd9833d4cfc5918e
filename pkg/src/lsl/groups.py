"""Finite permutation groups: presentations, full enumeration, catalog.

Permutations on [0, n) are tuples sigma with sigma[i] the image of i, and
the product a * b means "apply a, then b".  Enumeration is a breadth-first
closure from the identity, which fixes a canonical element order reused by
the regular representation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IngestionError, OrderLimitExceeded
from .field import GF, Field

Perm = tuple[int, ...]


def perm_mul(a: Perm, b: Perm) -> Perm:
    return tuple(b[x] for x in a)


def perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_from_cycles(n: int, cycles: list[list[int]]) -> Perm:
    out = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            out[x] = cyc[(i + 1) % len(cyc)]
    return tuple(out)


def _validate_perm(p, degree: int) -> Perm:
    t = tuple(p)
    if sorted(t) != list(range(degree)):
        raise IngestionError(f"not a permutation of [0, {degree}): {p}")
    return t


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    degree: int
    generators: tuple[Perm, ...]
    default_field: tuple[int, int] = (2, 1)

    def __post_init__(self):
        if self.degree < 1:
            raise IngestionError("degree must be >= 1")
        if not self.generators:
            raise IngestionError("at least one generator required")
        gens = tuple(_validate_perm(g, self.degree) for g in self.generators)
        object.__setattr__(self, "generators", gens)


@dataclass
class GroupTable:
    """Fully enumerated group: canonical element list plus right-multiplication
    index tables for each generator."""

    presentation: GroupPresentation
    elements: list[Perm]
    index: dict[Perm, int]
    gen_product: list[list[int]]  # gen_product[g][i] = index of elements[i] * gen_g

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def ngens(self) -> int:
        return len(self.presentation.generators)

    def product_index(self, i: int, j: int) -> int:
        return self.index[perm_mul(self.elements[i], self.elements[j])]

    def word_index(self, gen_word: list[int]) -> int:
        """Index of the product of generators named by gen_word (identity if empty)."""
        i = 0
        for g in gen_word:
            i = self.gen_product[g][i]
        return i


def enumerate_group(g: GroupPresentation, max_order: int = 10000) -> GroupTable:
    """BFS closure of the generators; raises OrderLimitExceeded past max_order."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    ident = tuple(range(g.degree))
    elements = [ident]
    index = {ident: 0}
    cursor = 0
    while cursor < len(elements):
        e = elements[cursor]
        for gen in g.generators:
            prod = perm_mul(e, gen)
            if prod not in index:
                if len(elements) >= max_order:
                    raise OrderLimitExceeded(
                        f"group {g.name}: order exceeds limit {max_order}"
                    )
                index[prod] = len(elements)
                elements.append(prod)
        cursor += 1
    gen_product = [
        [index[perm_mul(e, gen)] for e in elements] for gen in g.generators
    ]
    return GroupTable(g, elements, index, gen_product)


# -- built-in catalog -----------------------------------------------------


def _cyclic(n: int) -> GroupPresentation:
    p = min(f for f in range(2, n + 1) if n % f == 0)
    gen = tuple((i + 1) % n for i in range(n))
    return GroupPresentation(f"C{n}", n, (gen,), default_field=(p, 1))


def _metacyclic(p: int, q: int) -> GroupPresentation:
    """The nonabelian p:q on p points: translations and a multiplier of order q."""
    if (p - 1) % q != 0:
        raise IngestionError(f"{p}:{q} needs q | p-1")
    mult = None
    for c in range(2, p):
        order = 1
        x = c
        while x != 1:
            x = (x * c) % p
            order += 1
        if order == q:
            mult = c
            break
    if mult is None:
        raise IngestionError(f"no element of order {q} mod {p}")
    shift = tuple((i + 1) % p for i in range(p))
    scale = tuple((mult * i) % p for i in range(p))
    return GroupPresentation(f"{p}:{q}", p, (shift, scale), default_field=(p, 1))


def _alternating4() -> GroupPresentation:
    a = perm_from_cycles(4, [[0, 1, 2]])
    b = perm_from_cycles(4, [[1, 2, 3]])
    return GroupPresentation("A4", 4, (a, b), default_field=(2, 2))


def _psl3(q: int, name: str, char: int) -> GroupPresentation:
    """PSL(3, q) for q in {2, 3} acting on the projective plane over GF(q)."""
    f = GF(q)

    def matvec(m, v):
        return tuple(
            _dotmod(m[i], v, f) for i in range(3)
        )

    def normalize(v):
        for c in v:
            if c:
                inv = f.inv(c)
                return tuple(f.mul(inv, x) for x in v)
        raise AssertionError

    points = []
    seen = set()
    for a in range(q):
        for b in range(q):
            for c in range(q):
                v = (a, b, c)
                if v == (0, 0, 0):
                    continue
                nv = normalize(v)
                if nv not in seen:
                    seen.add(nv)
                    points.append(nv)
    points.sort()
    pt_index = {v: i for i, v in enumerate(points)}

    shift = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    transvection = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    gens = []
    for m in (shift, transvection):
        gens.append(tuple(pt_index[normalize(matvec(m, v))] for v in points))
    return GroupPresentation(name, len(points), tuple(gens), default_field=(char, 1))


def _dotmod(row, v, f: Field) -> int:
    acc = 0
    for a, b in zip(row, v):
        acc = f.add(acc, f.mul(a, b))
    return acc


def catalog_names() -> list[str]:
    return ["C2", "C3", "C4", "3:2", "A4", "L3_2", "L3_3"]


def catalog_group(name: str) -> GroupPresentation:
    """Resolve a built-in name; Cn and p:q are accepted for any valid n, p, q."""
    if name == "A4":
        return _alternating4()
    if name == "L3_2":
        return _psl3(2, "L3_2", 2)
    if name == "L3_3":
        return _psl3(3, "L3_3", 2)
    if name.startswith("C") and name[1:].isdigit():
        n = int(name[1:])
        if n < 2:
            raise IngestionError("cyclic groups need n >= 2")
        return _cyclic(n)
    if ":" in name:
        left, _, right = name.partition(":")
        if left.isdigit() and right.isdigit():
            from .field import is_prime

            p, q = int(left), int(right)
            if not is_prime(p):
                raise IngestionError(f"{name}: p must be prime")
            return _metacyclic(p, q)
    raise IngestionError(f"unknown group name {name!r}")
