"""Projective resolutions of the trivial module and their invariants.

Two flavours share one builder.  The minimal resolution covers the full
kernel at each step.  The squeezed variant first shrinks the kernel to its
trivial core: the smallest submodule whose quotient is an iterated
extension of trivial modules, found by repeatedly intersecting the kernels
of all maps to k.  The dimension differences between kernels and cores are
the loop-homology dimensions; isomorphism between cores at a fixed shift
yields a periodicity certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from random import Random

from .modules import (
    GModule,
    Iso,
    ModuleMap,
    SimpleRegistry,
    hom_space,
    identity_map,
    is_isomorphic,
    kernel_of_map,
    projective_cover,
    submodule,
)

COMPLETED = "completed"
STEP_LIMIT = "step_limit"
DIM_LIMIT = "dim_limit"


def trivial_core(n: GModule, reg: SimpleRegistry) -> tuple[GModule, ModuleMap]:
    """Smallest submodule M of n with n/M an iterated extension of trivials.

    Descends n > n1 > n2 > ... where each step intersects the kernels of
    every map to k; the chain strictly drops in dimension, so it stops."""
    cur = n
    incl = identity_map(n)
    while cur.dim:
        homs = hom_space(cur, reg.trivial)
        if not homs:
            break
        stacked = homs[0].matrix
        for h in homs[1:]:
            stacked = stacked.hstack(h.matrix)
        rows = stacked.left_kernel()
        if rows.nrows == cur.dim:
            break
        sub, step = submodule(cur, rows, check=False)
        incl = step.then(incl)
        cur = sub
    return cur, incl


@dataclass
class Term:
    module: GModule
    labels: list[tuple[int, int]]  # (simple index, multiplicity)

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class Syzygy:
    module: GModule
    inclusion: ModuleMap  # into the term it was cut from


@dataclass
class Resolution:
    kind: str  # "squeezed" | "minimal"
    terms: list[Term]
    diffs: list[ModuleMap]  # diffs[0] is the augmentation onto k
    syzygies: list[Syzygy]  # kernels N_i of diffs[i]
    cores: list[Syzygy] | None  # squeezed only: M_i inside N_i
    status: str
    registry: SimpleRegistry

    @property
    def steps(self) -> int:
        return len(self.terms) - 1

    def periodicity_modules(self) -> list[GModule]:
        if self.kind == "squeezed":
            return [c.module for c in self.cores]
        return [s.module for s in self.syzygies]


@dataclass
class DimSequence:
    values: list[int]
    provenance: str
    complete: bool = False  # True when all later entries are exactly zero

    def prefix(self, upto: int) -> list[int]:
        """Entries for degrees 0..upto; zero-padded only when complete."""
        if upto < len(self.values):
            return self.values[: upto + 1]
        if not self.complete:
            raise ValueError(
                f"sequence only computed to degree {len(self.values) - 1}"
            )
        return self.values + [0] * (upto + 1 - len(self.values))


def _build(
    kind: str,
    reg: SimpleRegistry,
    pims: list[tuple[int, GModule]],
    rng: Random,
    max_steps: int,
    max_dim: int,
    terms: list[Term] | None = None,
    diffs: list[ModuleMap] | None = None,
) -> Resolution:
    if terms is None:
        cover0 = projective_cover(reg.trivial, pims, reg, rng)
        terms = [Term(cover0.module, cover0.labels)]
        diffs = [cover0.map]
    syzygies: list[Syzygy] = []
    cores: list[Syzygy] | None = [] if kind == "squeezed" else None
    status = STEP_LIMIT
    while True:
        while len(syzygies) < len(terms):
            i = len(syzygies)
            n_mod, n_incl = kernel_of_map(diffs[i])
            n_mod.label = f"N{i}"
            syzygies.append(Syzygy(n_mod, n_incl))
            if kind == "squeezed":
                m_mod, m_incl = trivial_core(n_mod, reg)
                m_mod.label = f"M{i}"
                cores.append(Syzygy(m_mod, m_incl))
        i = len(terms) - 1
        if kind == "squeezed":
            target = cores[i].module
            into_term = cores[i].inclusion.then(syzygies[i].inclusion)
        else:
            target = syzygies[i].module
            into_term = syzygies[i].inclusion
        if target.dim == 0:
            status = COMPLETED
            break
        if i == max_steps:
            status = STEP_LIMIT
            break
        cover = projective_cover(target, pims, reg, rng)
        if cover.module.dim > max_dim:
            status = DIM_LIMIT
            break
        diffs.append(
            ModuleMap(cover.module, terms[i].module, cover.map.matrix.matmul(into_term.matrix))
        )
        terms.append(Term(cover.module, cover.labels))
    return Resolution(kind, terms, diffs, syzygies, cores, status, reg)


def squeezed_resolution(
    reg: SimpleRegistry,
    pims: list[tuple[int, GModule]],
    rng: Random,
    max_steps: int = 20,
    max_dim: int = 20000,
) -> Resolution:
    return _build("squeezed", reg, pims, rng, max_steps, max_dim)


def minimal_resolution(
    reg: SimpleRegistry,
    pims: list[tuple[int, GModule]],
    rng: Random,
    max_steps: int = 20,
    max_dim: int = 20000,
) -> Resolution:
    return _build("minimal", reg, pims, rng, max_steps, max_dim)


def continue_resolution(
    kind: str,
    reg: SimpleRegistry,
    pims: list[tuple[int, GModule]],
    rng: Random,
    terms: list[Term],
    diffs: list[ModuleMap],
    max_steps: int = 20,
    max_dim: int = 20000,
) -> Resolution:
    """Extend a resolution whose terms and differentials were reloaded from
    persistence; kernels and cores are recomputed from the differentials."""
    return _build(kind, reg, pims, rng, max_steps, max_dim, terms=list(terms), diffs=list(diffs))


def squeezed_homology(r: Resolution) -> DimSequence:
    """Loop-homology dimensions: degree 0 counts P0 modulo the first core,
    degree i counts kernel modulo core."""
    if r.kind != "squeezed":
        raise ValueError("homology dimensions need a squeezed resolution")
    values = []
    for i, syz in enumerate(r.syzygies):
        core_dim = r.cores[i].module.dim
        if i == 0:
            values.append(r.terms[0].dim - core_dim)
        else:
            values.append(syz.module.dim - core_dim)
    return DimSequence(values, "squeezed_homology", complete=(r.status == COMPLETED))


def cohomology_dims(r: Resolution) -> DimSequence:
    """Multiplicity of the trivial PIM in each term of a minimal resolution."""
    if r.kind != "minimal":
        raise ValueError("cohomology dimensions need a minimal resolution")
    values = []
    for t in r.terms:
        values.append(sum(m for idx, m in t.labels if idx == 0))
    return DimSequence(values, "cohomology", complete=(r.status == COMPLETED))


@dataclass
class PeriodicityCertificate:
    offset: int
    period: int
    witness: ModuleMap
    verified_pairs: int


@dataclass
class PeriodicityScan:
    certificate: PeriodicityCertificate | None
    unknown_pairs: list[tuple[int, int]] = dc_field(default_factory=list)
    syzygies_available: int = 0


def detect_periodicity(
    r: Resolution,
    max_period: int,
    rng: Random | None = None,
) -> PeriodicityScan:
    """Least (offset, period) whose syzygy isomorphism persists over the whole
    computed range; unknown isomorphism verdicts count as mismatches but are
    reported for budget tuning."""
    mods = r.periodicity_modules()
    if len(mods) < max_period + 2:
        raise ValueError(
            f"need at least {max_period + 2} syzygies, have {len(mods)}"
        )
    last = len(mods) - 1
    unknowns: list[tuple[int, int]] = []
    for offset in range(last):
        for period in range(1, max_period + 1):
            if offset + period > last:
                break
            verdict, witness = is_isomorphic(mods[offset], mods[offset + period], rng)
            if verdict == Iso.UNKNOWN:
                unknowns.append((offset, offset + period))
                continue
            if verdict == Iso.NO:
                continue
            pairs = 1
            persists = True
            for j in range(1, last - offset - period + 1):
                v2, _ = is_isomorphic(mods[offset + j], mods[offset + period + j], rng)
                if v2 == Iso.YES:
                    pairs += 1
                    continue
                if v2 == Iso.UNKNOWN:
                    unknowns.append((offset + j, offset + period + j))
                persists = False
                break
            if persists:
                return PeriodicityScan(
                    PeriodicityCertificate(offset, period, witness, pairs),
                    unknowns,
                    len(mods),
                )
    return PeriodicityScan(None, unknowns, len(mods))
