"""Rational generating-function calculus for dimension sequences.

Series are kept as an integer numerator polynomial over a product of
factors (1 - t^n), so expansion is exact integer recursion and the pole
order at t = 1 is read off after cancelling (1 - t) powers out of the
numerator.  The growth degree of a sequence is the least d with the
coefficients eventually bounded by a degree-d polynomial; for series in
this shape that is pole order minus one.
"""

from __future__ import annotations

from dataclasses import dataclass


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class RationalSeries:
    numerator: tuple[int, ...]  # coefficient of t^i at index i
    denominator_factors: tuple[int, ...]  # n_i for factors (1 - t^{n_i})

    def __post_init__(self):
        for n in self.denominator_factors:
            if n < 1:
                raise ValueError("denominator exponents must be positive")
        object.__setattr__(
            self, "denominator_factors", tuple(sorted(self.denominator_factors))
        )
        num = list(self.numerator)
        while num and num[-1] == 0:
            num.pop()
        object.__setattr__(self, "numerator", tuple(num))


def expand(s: RationalSeries, max_degree: int) -> list[int]:
    """Exact coefficients of degrees 0..max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out = [0] * (max_degree + 1)
    for i, c in enumerate(s.numerator[: max_degree + 1]):
        out[i] = c
    for n in s.denominator_factors:
        for d in range(n, max_degree + 1):
            out[d] += out[d - n]
    return out


@dataclass(frozen=True)
class GrowthReport:
    growth_degree: int
    g_codimension: int
    fitted: bool


def _one_minus_t_order(num: list[int]) -> int:
    """Multiplicity of t = 1 as a root of the numerator."""
    order = 0
    num = list(num)
    while num and sum(num) == 0:
        acc = 0
        quotient = []
        for c in num[:-1]:
            acc += c
            quotient.append(acc)
        num = quotient
        while num and num[-1] == 0:
            num.pop()
        order += 1
    return order


def growth_degree(s: RationalSeries) -> GrowthReport:
    """Exact growth from the rational form: pole order at t=1, minus one."""
    if not s.numerator:
        return GrowthReport(-1, 0, False)
    pole = len(s.denominator_factors) - _one_minus_t_order(list(s.numerator))
    g = pole - 1 if pole >= 1 else -1
    return GrowthReport(g, g + 1, False)


@dataclass(frozen=True)
class BoundCheck:
    ok: bool
    first_violation: int | None = None


def growth_bound_check(h_m: list[int], h_n: list[int], n: int) -> BoundCheck:
    """Coefficientwise test h_m <= h_n / (1 - t^|n|) on the common prefix,
    with the negative-shift case rearranged to a shifted positive one."""
    if n == 0:
        raise ValueError("shift must be nonzero")
    if len(h_m) != len(h_n):
        raise ValueError("prefixes must have equal length")
    length = len(h_m)
    if n < 0:
        shift = -n - 1
        h_n = [0] * shift + list(h_n[: length - shift])
        n = -n
    bound = list(h_n)
    for d in range(n, length):
        bound[d] += bound[d - n]
    for d in range(length):
        if h_m[d] > bound[d]:
            return BoundCheck(False, d)
    return BoundCheck(True, None)


@dataclass(frozen=True)
class CIPresentation:
    """Graded polynomial generators modulo a regular sequence, both recorded
    by codegree only."""

    generator_codegrees: tuple[int, ...]
    relation_codegrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "generator_codegrees", tuple(self.generator_codegrees))
        object.__setattr__(self, "relation_codegrees", tuple(self.relation_codegrees))
        for g in self.generator_codegrees:
            if g < 1:
                raise ValueError("generator codegrees must be positive")


def ci_loop_series(p: CIPresentation) -> RationalSeries:
    """Predicted loop-homology series for a complete-intersection cohomology
    ring: exterior generators one degree down, polynomial generators two
    degrees below each relation.  Valid when the relevant spectral sequence
    collapses; callers should surface it as a conditional prediction."""
    num = [1]
    for g in p.generator_codegrees:
        mono = [0] * g
        mono[0] = 1
        mono[g - 1] += 1  # 1 + t^(g-1); g = 1 gives the constant 2
        num = poly_mul(num, mono)
    factors = []
    for r in p.relation_codegrees:
        if r < 3:
            raise ValueError(f"relation codegree {r} < 3 has no loop generator")
        factors.append(r - 2)
    return RationalSeries(tuple(num), tuple(factors))


def ci_cohomology_series(p: CIPresentation) -> RationalSeries:
    """Hilbert series of the presented ring itself (relations regular)."""
    num = [1]
    for r in p.relation_codegrees:
        if r < 1:
            raise ValueError("relation codegrees must be positive")
        mono = [0] * (r + 1)
        mono[0] = 1
        mono[r] = -1
        num = poly_mul(num, mono)
    return RationalSeries(tuple(num), tuple(p.generator_codegrees))


@dataclass(frozen=True)
class Comparison:
    match: bool
    first_mismatch: int | None = None


def compare_prefix(a: list[int], b: list[int], upto: int) -> Comparison:
    """Exact integer comparison on degrees 0..upto."""
    if len(a) <= upto or len(b) <= upto:
        raise ValueError("sequences do not cover the requested range")
    for d in range(upto + 1):
        if a[d] != b[d]:
            return Comparison(False, d)
    return Comparison(True, None)


def _eventually_bounded(seq: list[int]) -> bool:
    half = len(seq) // 2
    head = max((abs(x) for x in seq[:half]), default=0)
    tail = max((abs(x) for x in seq[half:]), default=0)
    return tail <= max(head, 1)


def fit_growth(prefix: list[int]) -> GrowthReport:
    """Heuristic growth estimate from a finite prefix, by successive finite
    differencing; never a proof, always flagged fitted."""
    if len(prefix) < 8:
        raise ValueError("need at least 8 terms to fit")
    tail = prefix[-max(2, len(prefix) // 3):]
    if all(v == 0 for v in tail):
        return GrowthReport(-1, 0, True)
    seq = list(prefix)
    d = 0
    while len(seq) >= 4 and d < 8:
        if _eventually_bounded(seq):
            return GrowthReport(d, d + 1, True)
        seq = [b - a for a, b in zip(seq, seq[1:])]
        d += 1
    return GrowthReport(d, d + 1, True)
