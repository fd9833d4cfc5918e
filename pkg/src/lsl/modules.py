"""Modules over a modular group algebra and the meataxe toolkit.

A module is given by one invertible action matrix per group generator; all
vectors are rows and matrices act on the right, matching the left-to-right
composition of the permutation layer.  Submodules are canonical rref bases
of invariant row spaces, so repeated runs produce identical objects.

Homomorphism spaces are computed by spinning the source from a greedy
generating set while recording every linear relation the spin discovers.
A homomorphism is then determined by the images of the generating vectors,
and each recorded relation cuts the candidate image space by a linear
condition.  This stays cheap even when the source is the regular module,
where the dense equivariance system would be far too large.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from random import Random

from .errors import (
    CoverLiftFailed,
    IncompleteRegistry,
    RandomnessExhausted,
    SplitBudgetExhausted,
)
from .field import Field
from .groups import GroupTable
from .matrix import (
    Echelon,
    Matrix,
    expand_in_rref_basis,
    raw_addmul,
    raw_is_zero,
    raw_unit,
)


class GModule:
    """Finite-dimensional module over kG, one action matrix per generator."""

    __slots__ = ("field", "dim", "action", "label", "_inv", "_tr")

    def __init__(self, field: Field, action: list[Matrix], label: str | None = None):
        self.field = field
        self.action = action
        self.label = label
        dims = {(a.nrows, a.ncols) for a in action}
        if len(dims) != 1:
            raise ValueError("action matrices must share one square shape")
        (r, c) = dims.pop()
        if r != c:
            raise ValueError("action matrices must be square")
        self.dim = r
        self._inv = None
        self._tr = None

    @property
    def ngens(self) -> int:
        return len(self.action)

    def apply(self, raw, g: int):
        return self.action[g].apply_row(raw)

    def action_inverses(self) -> list[Matrix]:
        if self._inv is None:
            self._inv = [a.inverse() for a in self.action]
        return self._inv

    def transposed_action(self) -> list[Matrix]:
        if self._tr is None:
            self._tr = [a.transpose() for a in self.action]
        return self._tr

    def __repr__(self) -> str:
        tag = self.label or "module"
        return f"GModule({tag}, dim={self.dim}, {self.field})"


@dataclass
class ModuleMap:
    """kG-linear map, applied to row vectors as v -> v @ matrix."""

    source: GModule
    target: GModule
    matrix: Matrix

    def __post_init__(self):
        if (self.matrix.nrows, self.matrix.ncols) != (self.source.dim, self.target.dim):
            raise ValueError("map shape does not match source/target dims")

    def is_equivariant(self) -> bool:
        for a, b in zip(self.source.action, self.target.action):
            if a.matmul(self.matrix) != self.matrix.matmul(b):
                return False
        return True

    def then(self, other: "ModuleMap") -> "ModuleMap":
        if other.source is not self.target and other.source.dim != self.target.dim:
            raise ValueError("maps do not compose")
        return ModuleMap(self.source, other.target, self.matrix.matmul(other.matrix))

    def rank(self) -> int:
        return self.matrix.rank()


def identity_map(m: GModule) -> ModuleMap:
    return ModuleMap(m, m, Matrix.identity(m.field, m.dim))


# -- constructions --------------------------------------------------------


def trivial_module(field: Field, ngens: int, label: str = "k") -> GModule:
    one = Matrix.identity(field, 1)
    return GModule(field, [one] * ngens, label=label)


def zero_module(field: Field, ngens: int) -> GModule:
    z = Matrix.zeros(field, 0, 0)
    return GModule(field, [z] * ngens, label="0")


def _perm_matrix(field: Field, images: list[int]) -> Matrix:
    n = len(images)
    if field.q == 2:
        rows = [1 << j for j in images]
    else:
        rows = []
        for j in images:
            row = [0] * n
            row[j] = 1
            rows.append(row)
    return Matrix(field, n, n, rows)


def regular_module(table: GroupTable, field: Field) -> GModule:
    """kG acting on itself: generators act by right translation."""
    action = [_perm_matrix(field, col) for col in table.gen_product]
    return GModule(field, action, label=f"k[{table.presentation.name}]")


def permutation_module(presentation, field: Field) -> GModule:
    action = [_perm_matrix(field, list(g)) for g in presentation.generators]
    return GModule(field, action, label=f"perm{presentation.degree}")


def direct_sum(field: Field, ngens: int, mods: list[GModule], label: str | None = None) -> GModule:
    if not mods:
        return zero_module(field, ngens)
    total = sum(m.dim for m in mods)
    action = []
    for g in range(ngens):
        if field.q == 2:
            rows = []
            off = 0
            for m in mods:
                rows.extend(r << off for r in m.action[g].raw_rows)
                off += m.dim
            action.append(Matrix(field, total, total, rows))
        else:
            rows = []
            off = 0
            for m in mods:
                for r in m.action[g].raw_rows:
                    row = [0] * total
                    row[off : off + m.dim] = r
                    rows.append(row)
                off += m.dim
            action.append(Matrix(field, total, total, rows))
    return GModule(field, action, label=label)


def tensor(m: GModule, n: GModule) -> GModule:
    if m.field != n.field or m.ngens != n.ngens:
        raise ValueError("tensor factors must share field and generator count")
    action = [a.kron(b) for a, b in zip(m.action, n.action)]
    return GModule(m.field, action, label=None)


def dual(m: GModule) -> GModule:
    action = [inv.transpose() for inv in m.action_inverses()]
    return GModule(m.field, action, label=None)


# -- submodules and quotients ---------------------------------------------


def spin_rows(m: GModule, raws: list) -> Matrix:
    """rref basis of the smallest submodule containing the given raw rows."""
    ech = Echelon(m.field, m.dim)
    work = []
    for r in raws:
        res, _ = ech.reduce(r)
        if not raw_is_zero(res):
            ech.insert(res)
            work.append(res)
    cursor = 0
    while cursor < len(work):
        v = work[cursor]
        cursor += 1
        for g in range(m.ngens):
            res, _ = ech.reduce(m.apply(v, g))
            if not raw_is_zero(res):
                ech.insert(res)
                work.append(res)
    return ech.basis_matrix()


def submodule(m: GModule, rows: Matrix, check: bool = True, label: str | None = None) -> tuple[GModule, ModuleMap]:
    """Module structure on an invariant row space, with its inclusion."""
    basis, rank, pivots = rows.rref()
    basis = basis.take_rows(range(rank))
    action = []
    for g in range(m.ngens):
        imaged = [m.apply(basis.raw_row(i), g) for i in range(rank)]
        if check:
            ech = Echelon(m.field, m.dim)
            for i in range(rank):
                ech.insert(basis.raw_row(i))
            for v in imaged:
                if not ech.contains(v):
                    raise ValueError("row space is not invariant under the action")
        coords = [expand_in_rref_basis(basis, pivots, v) for v in imaged]
        action.append(Matrix(m.field, rank, rank, coords))
    sub = GModule(m.field, action, label=label)
    return sub, ModuleMap(sub, m, basis)


def spin(m: GModule, vectors: Matrix) -> tuple[GModule, ModuleMap]:
    basis = spin_rows(m, list(vectors.raw_rows))
    return submodule(m, basis, check=False)


def quotient(m: GModule, sub: ModuleMap) -> tuple[GModule, ModuleMap]:
    """Quotient of m by a submodule inclusion, on the non-pivot coordinates."""
    if sub.target is not m and sub.target.dim != m.dim:
        raise ValueError("inclusion does not land in the module")
    rows, rank, pivots = sub.matrix.rref()
    rows = rows.take_rows(range(rank))
    ech = Echelon(m.field, m.dim)
    for i in range(rank):
        ech.insert(rows.raw_row(i))
    for i in range(rank):
        for g in range(m.ngens):
            if not ech.contains(m.apply(rows.raw_row(i), g)):
                raise ValueError("not a submodule: action leaves the row space")
    pivset = set(pivots)
    nonpiv = [c for c in range(m.dim) if c not in pivset]
    qdim = len(nonpiv)

    def residual_coords(raw):
        res, _ = ech.reduce(raw)
        if m.field.q == 2:
            out = 0
            for jj, c in enumerate(nonpiv):
                if (res >> c) & 1:
                    out |= 1 << jj
            return out
        return [res[c] for c in nonpiv]

    proj_rows = [residual_coords(raw_unit(m.field, m.dim, i)) for i in range(m.dim)]
    proj = Matrix(m.field, m.dim, qdim, proj_rows)
    action = []
    for g in range(m.ngens):
        arow = [residual_coords(m.apply(raw_unit(m.field, m.dim, c), g)) for c in nonpiv]
        action.append(Matrix(m.field, qdim, qdim, arow))
    quot = GModule(m.field, action)
    return quot, ModuleMap(m, quot, proj)


def kernel_of_map(f: ModuleMap) -> tuple[GModule, ModuleMap]:
    rows = f.matrix.left_kernel()
    return submodule(f.source, rows, check=False)


# -- homomorphism spaces ----------------------------------------------------


@dataclass
class _SpinTree:
    basis: list  # raw rows spanning the module, in discovery order
    seed_of: list[int]
    parent: list[tuple[int, int] | None]
    relations: list[tuple[int, int, dict[int, int]]]
    nseeds: int


def _spin_tree(m: GModule) -> _SpinTree:
    """Spanning spin from greedily chosen standard-basis seeds, recording the
    expression of every reducible product over earlier spin vectors."""
    f = m.field
    ech = Echelon(f, m.dim, track=True)
    basis: list = []
    seed_of: list[int] = []
    parent: list[tuple[int, int] | None] = []
    relations: list[tuple[int, int, dict[int, int]]] = []
    nseeds = 0
    cursor = 0
    unit = 0
    while ech.dim < m.dim:
        while unit < m.dim:
            v = raw_unit(f, m.dim, unit)
            unit += 1
            idx, _ = ech.insert(v)
            if idx is not None:
                assert idx == len(basis)
                basis.append(v)
                seed_of.append(nseeds)
                parent.append(None)
                nseeds += 1
                break
        while cursor < len(basis):
            j = basis[cursor]
            for g in range(m.ngens):
                v = m.apply(j, g)
                idx, combo = ech.insert(v)
                if idx is None:
                    relations.append((cursor, g, combo))
                else:
                    assert idx == len(basis)
                    basis.append(v)
                    seed_of.append(seed_of[cursor])
                    parent.append((cursor, g))
            cursor += 1
    return _SpinTree(basis, seed_of, parent, relations, nseeds)


def _raw_segment(field: Field, row, start: int, length: int):
    if isinstance(row, int):
        return (row >> start) & ((1 << length) - 1)
    return row[start : start + length]


def hom_space(m: GModule, n: GModule) -> list[ModuleMap]:
    """Basis of the space of kG-linear maps m -> n."""
    if m.ngens != n.ngens or m.field != n.field:
        raise ValueError("modules must share field and generator count")
    f = m.field
    if m.dim == 0 or n.dim == 0:
        return []
    tree = _spin_tree(m)
    nd = n.dim
    ident = Matrix.identity(f, nd)
    W: list[Matrix] = []
    for j in range(len(tree.basis)):
        par = tree.parent[j]
        if par is None:
            W.append(ident)
        else:
            pj, g = par
            W.append(W[pj].matmul(n.action[g]))
    s = tree.nseeds
    width = s * nd
    Q = Matrix.identity(f, width)
    zero_block = Matrix.zeros(f, nd, nd)
    for (j, g, combo) in tree.relations:
        blocks = [zero_block] * s
        tj = tree.seed_of[j]
        blocks[tj] = blocks[tj].add(W[j].matmul(n.action[g]))
        for i, c in combo.items():
            ti = tree.seed_of[i]
            blocks[ti] = blocks[ti].sub(W[i].scale(c))
        C = blocks[0]
        for b in blocks[1:]:
            C = C.vstack(b)
        if C.is_zero():
            continue
        D = Q.matmul(C)
        if D.is_zero():
            continue
        K = D.left_kernel()
        if K.nrows == 0:
            return []
        Q = K.matmul(Q)
    S = Matrix.from_raw_rows(f, m.dim, tree.basis)
    out = []
    for r in range(Q.nrows):
        qrow = Q.raw_row(r)
        frows = []
        for j in range(len(tree.basis)):
            w = _raw_segment(f, qrow, tree.seed_of[j] * nd, nd)
            frows.append(W[j].apply_row(w))
        f_spin = Matrix.from_raw_rows(f, nd, frows)
        out.append(ModuleMap(m, n, S.solve(f_spin)))
    return out


def hom_space_dense(m: GModule, n: GModule) -> list[ModuleMap]:
    """Reference implementation via the full equivariance system; exponential
    in nothing but far slower, kept for cross-checking the spin method."""
    f = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    rows = []
    for g in range(m.ngens):
        A = m.action[g]
        B = n.action[g]
        for i in range(dm):
            for b in range(dn):
                row = [0] * (dm * dn)
                for a in range(dm):
                    row[a * dn + b] = f.add(row[a * dn + b], A.entry(i, a))
                for bp in range(dn):
                    row[i * dn + bp] = f.sub(row[i * dn + bp], B.entry(bp, b))
                rows.append(row)
    system = Matrix.from_rows(f, rows, dm * dn)
    basis = system.kernel_basis()
    out = []
    for r in range(basis.nrows):
        flat = basis.row_list(r)
        mat = Matrix.from_rows(f, [flat[i * dn : (i + 1) * dn] for i in range(dm)], dn)
        out.append(ModuleMap(m, n, mat))
    return out


# -- registry, radical, socle ----------------------------------------------


class SimpleRegistry:
    """Pairwise non-isomorphic simple modules; index 0 is the trivial module."""

    def __init__(self, trivial: GModule):
        self.simples: list[GModule] = [trivial]
        self._end_dims: list[int | None] = [None]

    @property
    def trivial(self) -> GModule:
        return self.simples[0]

    def __len__(self) -> int:
        return len(self.simples)

    def end_dim(self, i: int) -> int:
        if self._end_dims[i] is None:
            self._end_dims[i] = len(hom_space(self.simples[i], self.simples[i]))
        return self._end_dims[i]

    def find_simple(self, m: GModule) -> int | None:
        """Index of the registered simple isomorphic to a given simple module.

        Relies on Schur: a nonzero map between simples is an isomorphism."""
        for i, s in enumerate(self.simples):
            if s.dim == m.dim and hom_space(m, s):
                return i
        return None

    def add(self, m: GModule) -> int:
        self.simples.append(m)
        self._end_dims.append(None)
        return len(self.simples) - 1

    def name(self, i: int) -> str:
        if i == 0:
            return "k"
        return f"S{i}({self.simples[i].dim})"


def _hom_kernel_rows(m: GModule, targets: list[GModule]) -> Matrix:
    """Common kernel of every map from m to any of the target modules."""
    mats = []
    for t in targets:
        mats.extend(h.matrix for h in hom_space(m, t))
    if not mats:
        return Matrix.identity(m.field, m.dim)
    stacked = mats[0]
    for extra in mats[1:]:
        stacked = stacked.hstack(extra)
    return stacked.left_kernel()


def radical(m: GModule, reg: SimpleRegistry) -> tuple[GModule, ModuleMap]:
    """Intersection of kernels of all maps to registered simples."""
    if m.dim == 0:
        sub, incl = submodule(m, Matrix.zeros(m.field, 0, 0), check=False)
        return sub, incl
    rows = _hom_kernel_rows(m, reg.simples)
    if rows.nrows == m.dim:
        raise IncompleteRegistry(
            f"module of dim {m.dim} admits no map to any registered simple"
        )
    return submodule(m, rows, check=False)


def socle(m: GModule, reg: SimpleRegistry) -> tuple[GModule, ModuleMap]:
    """Sum of images of all maps from registered simples into m."""
    rows: list = []
    for s in reg.simples:
        for h in hom_space(s, m):
            rows.extend(h.matrix.raw_rows)
    basis = Matrix.from_raw_rows(m.field, m.dim, rows).row_space()
    return submodule(m, basis, check=False)


def head_multiplicities(m: GModule, reg: SimpleRegistry) -> list[tuple[int, int]]:
    """Multiplicities of each simple in m / rad m, via hom dimensions."""
    out = []
    for i in range(len(reg)):
        h = len(hom_space(m, reg.simples[i]))
        if h:
            e = reg.end_dim(i)
            if h % e:
                raise AssertionError("hom dimension not divisible by End dimension")
            out.append((i, h // e))
    return out


# -- meataxe ---------------------------------------------------------------


def random_algebra_element(m: GModule, rng: Random) -> Matrix:
    """Sum of up to 4 random generator words (length <= 6) with random
    nonzero coefficients."""
    f = m.field
    total = Matrix.zeros(f, m.dim, m.dim)
    for _ in range(rng.randint(1, 4)):
        word = Matrix.identity(f, m.dim)
        for _ in range(rng.randint(1, 6)):
            word = word.matmul(m.action[rng.randrange(m.ngens)])
        c = rng.randrange(1, f.q)
        total = total.add(word.scale(c))
    return total


def _spin_with_matrices(field: Field, dim: int, mats: list[Matrix], seed) -> int:
    """Dimension of the closure of one raw row under the given matrices."""
    ech = Echelon(field, dim)
    work = []
    res, _ = ech.reduce(seed)
    if raw_is_zero(res):
        return 0
    ech.insert(res)
    work.append(res)
    cursor = 0
    while cursor < len(work):
        v = work[cursor]
        cursor += 1
        for mat in mats:
            res, _ = ech.reduce(mat.apply_row(v))
            if not raw_is_zero(res):
                ech.insert(res)
                work.append(res)
    return ech.dim


def _kernel_lines(field: Field, K: Matrix, cap: int = 32):
    """Representatives of the 1-dimensional subspaces of K's row space when
    there are at most cap of them (complete=True); otherwise just the basis
    rows (complete=False)."""
    nu = K.nrows
    q = field.q
    count = (q**nu - 1) // (q - 1)
    if nu == 1:
        return [K.raw_row(0)], True
    if count > cap:
        return [K.raw_row(i) for i in range(nu)], False
    reps = []
    for lead in range(nu):
        for tail in itertools.product(range(q), repeat=nu - lead - 1):
            v = K.raw_row(lead)
            for i, c in enumerate(tail, start=lead + 1):
                if c:
                    v = raw_addmul(field, v, K.raw_row(i), c)
            reps.append(v)
    return reps, True


def try_split(m: GModule, rng: Random, budget: int = 200) -> Matrix | None:
    """Find a proper nonzero submodule (returned as basis rows) or prove
    irreducibility (None).  Raises RandomnessExhausted past the budget.

    Uses the standard nullspace-spinning test: a singular algebra element
    whose kernel vectors all generate the whole module, and whose right
    kernel generates the whole transposed module, certifies irreducibility
    when every kernel line was checked."""
    if m.dim == 0:
        raise ValueError("cannot split the zero module")
    if m.dim == 1:
        return None
    f = m.field
    ident = Matrix.identity(f, m.dim)
    for _ in range(budget):
        theta = random_algebra_element(m, rng)
        for lam in range(f.q):
            cand = theta if lam == 0 else theta.sub(ident.scale(lam))
            K = cand.left_kernel()
            nu = K.nrows
            if nu == 0 or nu == m.dim:
                continue
            lines, complete = _kernel_lines(f, K)
            split_found = None
            for v in lines:
                w = spin_rows(m, [v])
                if w.nrows < m.dim:
                    split_found = w
                    break
            if split_found is not None:
                return split_found
            if not complete:
                continue
            U = cand.kernel_basis()
            u = U.raw_row(0)
            tr_dim = _spin_with_matrices(f, m.dim, m.transposed_action(), u)
            if tr_dim == m.dim:
                return None
            # proper invariant subspace of the transposed module: its
            # annihilator is a proper submodule here
            tr_basis = _spin_basis_with_matrices(f, m.dim, m.transposed_action(), u)
            ann = tr_basis.transpose().left_kernel()
            return ann
    raise RandomnessExhausted(
        f"no decision for module of dim {m.dim} within {budget} trials"
    )


def _spin_basis_with_matrices(field: Field, dim: int, mats: list[Matrix], seed) -> Matrix:
    ech = Echelon(field, dim)
    work = []
    res, _ = ech.reduce(seed)
    if not raw_is_zero(res):
        ech.insert(res)
        work.append(res)
    cursor = 0
    while cursor < len(work):
        v = work[cursor]
        cursor += 1
        for mat in mats:
            res, _ = ech.reduce(mat.apply_row(v))
            if not raw_is_zero(res):
                ech.insert(res)
                work.append(res)
    return ech.basis_matrix()


def chop(m: GModule, rng: Random, budget: int = 200) -> list[tuple[GModule, int]]:
    """Composition factors with multiplicities (Jordan-Hoelder)."""
    factors: list[GModule] = []

    def descend(mod: GModule) -> None:
        if mod.dim == 0:
            return
        rows = try_split(mod, rng, budget)
        if rows is None:
            factors.append(mod)
            return
        sub, incl = submodule(mod, rows, check=False)
        quot, _ = quotient(mod, incl)
        descend(sub)
        descend(quot)

    descend(m)
    merged: list[tuple[GModule, int]] = []
    for fac in factors:
        for i, (rep, count) in enumerate(merged):
            if rep.dim == fac.dim and hom_space(fac, rep):
                merged[i] = (rep, count + 1)
                break
        else:
            merged.append((fac, 1))
    return merged


def simples(
    table: GroupTable,
    field: Field,
    seeds: list[GModule],
    rng: Random,
    budget: int = 200,
    tensor_rounds: int = 0,
    tensor_cap: int = 2500,
) -> SimpleRegistry:
    """Registry of the pairwise non-isomorphic simples found in the seeds.

    With tensor_rounds > 0, pairwise tensor products of registered simples
    are chopped as extra seeds until a round finds nothing new; chopping the
    regular module makes this unnecessary, but permutation seeds for larger
    groups can miss whole blocks without it."""
    if not seeds:
        raise ValueError("at least one seed module is required")
    reg = SimpleRegistry(trivial_module(field, table.ngens))

    def absorb(module: GModule) -> bool:
        new = False
        for fac, _ in chop(module, rng, budget):
            if reg.find_simple(fac) is None:
                idx = reg.add(fac)
                fac.label = reg.name(idx)
                new = True
        return new

    for seed in seeds:
        absorb(seed)
    tried: set[tuple[int, int]] = set()
    for _ in range(tensor_rounds):
        advanced = False
        for i in range(len(reg)):
            for j in range(len(reg)):
                a, b = reg.simples[i], reg.simples[j]
                if (i, j) in tried or a.dim * b.dim > tensor_cap:
                    continue
                tried.add((i, j))
                if absorb(tensor(a, b)):
                    advanced = True
        if not advanced:
            break
    return reg


def default_seeds(table: GroupTable, field: Field, rng: Random) -> list[GModule]:
    """Regular module at desk scale; permutation module, its dual, tensor
    square, and factor tensors for larger groups."""
    if table.order <= 500:
        return [regular_module(table, field)]
    pm = permutation_module(table.presentation, field)
    seeds = [pm, dual(pm), tensor(pm, pm)]
    factors = [fac for fac, _ in chop(pm, rng)]
    for a in factors:
        for b in factors:
            if 1 < a.dim * b.dim <= 2500:
                seeds.append(tensor(a, b))
    return seeds


# -- isomorphism testing -----------------------------------------------------


class Iso(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def is_isomorphic(
    m: GModule,
    n: GModule,
    rng: Random | None = None,
    budget: int = 500,
) -> tuple[Iso, ModuleMap | None]:
    """Search the hom space for an invertible element.

    Exhaustive when the coefficient space is small enough to sweep, random
    otherwise; a nonzero hom space without a found unit downgrades to a chop
    comparison and returns UNKNOWN only if the factor multisets agree."""
    if m.field != n.field or m.ngens != n.ngens:
        raise ValueError("modules must share field and generator count")
    if m.dim != n.dim:
        return Iso.NO, None
    if m.dim == 0:
        return Iso.YES, ModuleMap(m, n, Matrix.zeros(m.field, 0, 0))
    homs = hom_space(m, n)
    if not homs:
        return Iso.NO, None
    f = m.field
    h = len(homs)

    def check(mat: Matrix) -> bool:
        return mat.rank() == m.dim

    for hom in homs:
        if check(hom.matrix):
            return Iso.YES, hom
    total = Matrix.zeros(f, m.dim, m.dim)
    for hom in homs:
        total = total.add(hom.matrix)
    if check(total):
        return Iso.YES, ModuleMap(m, n, total)
    if f.q**h <= 4096:
        for coeffs in itertools.product(range(f.q), repeat=h):
            if not any(coeffs):
                continue
            acc = Matrix.zeros(f, m.dim, m.dim)
            for c, hom in zip(coeffs, homs):
                if c:
                    acc = acc.add(hom.matrix.scale(c))
            if check(acc):
                return Iso.YES, ModuleMap(m, n, acc)
        # the whole hom space was swept: genuinely no isomorphism
        return Iso.NO, None
    rng = rng or Random(0)
    for _ in range(budget):
        acc = Matrix.zeros(f, m.dim, m.dim)
        for hom in homs:
            c = rng.randrange(f.q)
            if c:
                acc = acc.add(hom.matrix.scale(c))
        if check(acc):
            return Iso.YES, ModuleMap(m, n, acc)
    if _chop_multisets_differ(m, n, Random(0)):
        return Iso.NO, None
    return Iso.UNKNOWN, None


def _chop_multisets_differ(m: GModule, n: GModule, rng: Random) -> bool:
    fm = chop(m, rng)
    fn = chop(n, rng)
    dims_m = sorted(d for fac, cnt in fm for d in [fac.dim] * cnt)
    dims_n = sorted(d for fac, cnt in fn for d in [fac.dim] * cnt)
    if dims_m != dims_n:
        return True
    remaining = list(fn)
    for fac, count in fm:
        for i, (other, ocount) in enumerate(remaining):
            if other.dim == fac.dim and count == ocount and hom_space(fac, other):
                remaining.pop(i)
                break
        else:
            return True
    return bool(remaining)


# -- projective indecomposables ---------------------------------------------


def _random_left_multiplication(table: GroupTable, field: Field, rng: Random) -> Matrix:
    """Left multiplication by a short random group-algebra element, as a
    matrix on the regular module.  Generators act by right translation here,
    so left multiplications are exactly the endomorphisms available without
    solving any hom system."""
    n = table.order
    terms = []
    for _ in range(rng.randint(1, 4)):
        word = [rng.randrange(table.ngens) for _ in range(rng.randint(1, 6))]
        terms.append((table.word_index(word), rng.randrange(1, field.q)))
    if field.q == 2:
        rows = []
        for i in range(n):
            acc = 0
            for w, _ in terms:
                acc ^= 1 << table.product_index(w, i)
            rows.append(acc)
        return Matrix(field, n, n, rows)
    rows = []
    for i in range(n):
        row = [0] * n
        for w, c in terms:
            j = table.product_index(w, i)
            row[j] = field.add(row[j], c)
        rows.append(row)
    return Matrix(field, n, n, rows)


def _check_invariant_rows(m: GModule, rows: Matrix) -> None:
    ech = Echelon(m.field, m.dim)
    for i in range(rows.nrows):
        ech.insert(rows.raw_row(i))
    for g in range(m.ngens):
        for i in range(rows.nrows):
            if not ech.contains(m.apply(rows.raw_row(i), g)):
                raise AssertionError("split produced a non-invariant subspace")


def _fitting_split(phi: Matrix) -> tuple[Matrix, Matrix] | None:
    """Stabilize phi by squaring; return (kernel basis, image basis) of the
    stable power, or None if the split is trivial."""
    rank = phi.rank()
    d = phi.nrows
    if rank == 0 or rank == d:
        return None
    while True:
        phi2 = phi.matmul(phi)
        r2 = phi2.rank()
        if r2 == rank:
            break
        phi = phi2
        rank = r2
    if rank == 0 or rank == d:
        return None
    return phi.left_kernel(), phi.row_space()


def decompose_projectives(
    table: GroupTable,
    field: Field,
    reg: SimpleRegistry,
    rng: Random,
    budget: int = 200,
) -> list[tuple[int, GModule]]:
    """One projective indecomposable per registered simple, split off the
    regular module by Fitting decompositions of projected left
    multiplications.  A summand is accepted once its head is simple.

    Each summand carries its basis B (rows in regular coordinates) and the
    coordinate projection P of the current direct decomposition, so random
    endomorphisms restrict to it as B @ theta @ P without any hom solving.
    The radical restricts the same way: rad of a summand is the projection
    of rad(kG).  The registry must contain every simple, otherwise heads
    are measured against too small a radical and the error is raised."""
    regular = regular_module(table, field)
    n = regular.dim
    jrows = _hom_kernel_rows(regular, reg.simples)
    simple_dims = {s.dim for s in reg.simples}
    found: dict[int, GModule] = {}
    ident = Matrix.identity(field, n)
    work: list[tuple[Matrix, Matrix]] = [(ident, ident)]  # (basis B, projection P)
    while work and len(found) < len(reg):
        B, P = work.pop(0)
        d = B.nrows
        is_root = d == n
        rad_coords = jrows if is_root else jrows.matmul(P)
        rad_coords = rad_coords.row_space()
        head_dim = d - rad_coords.nrows
        if head_dim == 0:
            raise IncompleteRegistry(
                "projective summand with no visible head: registry incomplete"
            )
        if head_dim in simple_dims:
            umod = regular if is_root else GModule(
                field, [B.matmul(a).matmul(P) for a in regular.action]
            )
            subm, incl = submodule(umod, rad_coords, check=False)
            head, _ = quotient(umod, incl)
            if try_split(head, rng, budget) is None:
                idx = reg.find_simple(head)
                if idx is None:
                    raise IncompleteRegistry("PIM head missing from registry")
                if idx not in found:
                    umod.label = f"P({reg.name(idx)})"
                    found[idx] = umod
                continue
        for _ in range(budget):
            R = _random_left_multiplication(table, field, rng)
            theta = R if is_root else B.matmul(R).matmul(P)
            split = _fitting_split(theta)
            if split is None:
                continue
            K, Im = split
            a = K.nrows
            M = K.vstack(Im)
            Minv = M.inverse()
            Pa = Minv.take_cols(range(a))
            Pb = Minv.take_cols(range(a, d))
            if is_root:
                pieces = ((K, Pa), (Im, Pb))
            else:
                pieces = ((K.matmul(B), P.matmul(Pa)), (Im.matmul(B), P.matmul(Pb)))
            for piece in pieces:
                if n <= 1000:
                    _check_invariant_rows(regular, piece[0])
                work.append(piece)
            break
        else:
            raise SplitBudgetExhausted(
                f"could not split a projective summand of dim {d}"
            )
    if len(found) < len(reg):
        raise SplitBudgetExhausted("regular module exhausted before covering all simples")
    return [(i, found[i]) for i in sorted(found)]


# -- projective covers -------------------------------------------------------


@dataclass
class Cover:
    module: GModule
    map: ModuleMap  # surjection module -> target
    labels: list[tuple[int, int]]  # (simple index, multiplicity)


def projective_cover(
    m: GModule,
    pims: list[tuple[int, GModule]],
    reg: SimpleRegistry,
    rng: Random,
    budget: int = 200,
) -> Cover:
    """Minimal projective cover assembled PIM by PIM.

    Candidate maps come from the hom space of each PIM into the target; a
    candidate is kept when its image adds a full copy of the corresponding
    simple on top of the radical, which by Nakayama forces surjectivity."""
    if m.dim == 0:
        raise ValueError("the zero module has no projective cover here")
    pim_by_idx = dict(pims)
    mults = head_multiplicities(m, reg)
    for idx, _ in mults:
        if idx not in pim_by_idx:
            raise CoverLiftFailed(f"no PIM available for head factor {reg.name(idx)}")
    f = m.field
    rad_rows = _hom_kernel_rows(m, reg.simples)
    ech = Echelon(f, m.dim)
    for i in range(rad_rows.nrows):
        ech.insert(rad_rows.raw_row(i))

    chosen: list[tuple[int, Matrix]] = []
    for idx, mult in mults:
        pim = pim_by_idx[idx]
        sdim = reg.simples[idx].dim
        homs = hom_space(pim, m)

        def candidates():
            for h in homs:
                yield h.matrix
            for _ in range(budget):
                acc = Matrix.zeros(f, pim.dim, m.dim)
                for h in homs:
                    c = rng.randrange(f.q)
                    if c:
                        acc = acc.add(h.matrix.scale(c))
                yield acc

        needed = mult
        for cand in candidates():
            if needed == 0:
                break
            trial = ech.clone_untracked()
            gain = 0
            for i in range(cand.nrows):
                res, _ = trial.reduce(cand.raw_row(i))
                if not raw_is_zero(res):
                    trial.insert(res)
                    gain += 1
            if gain == sdim:
                chosen.append((idx, cand))
                for i in range(cand.nrows):
                    res, _ = ech.reduce(cand.raw_row(i))
                    if not raw_is_zero(res):
                        ech.insert(res)
                needed -= 1
        if needed:
            raise CoverLiftFailed(
                f"could not lift {mult} copies of {reg.name(idx)} onto the target"
            )
    parts = [pim_by_idx[idx] for idx, _ in chosen]
    total = direct_sum(f, m.ngens, parts)
    if chosen:
        stack = chosen[0][1]
        for _, mat in chosen[1:]:
            stack = stack.vstack(mat)
    else:
        raise CoverLiftFailed("target has empty head")
    cover_map = ModuleMap(total, m, stack)
    if cover_map.rank() != m.dim:
        raise CoverLiftFailed("assembled cover is not surjective")
    labels: dict[int, int] = {}
    for idx, _ in chosen:
        labels[idx] = labels.get(idx, 0) + 1
    return Cover(total, cover_map, sorted(labels.items()))
