import itertools
from random import Random

import pytest

from lsl.errors import NoSolutionError
from lsl.field import GF
from lsl.matrix import Echelon, Matrix, subspace_intersect, subspace_sum

FIELDS = [GF(2), GF(3), GF(2, 2)]


def random_matrix(f, rows, cols, rng):
    return Matrix.from_rows(f, [[rng.randrange(f.q) for _ in range(cols)] for _ in range(rows)], cols)


def all_vectors(f, n):
    return itertools.product(range(f.q), repeat=n)


def row_span(f, mat):
    """Brute-force row span as a set of tuples; only for tiny sizes."""
    span = set()
    rows = mat.rows_as_lists()
    for coeffs in all_vectors(f, mat.nrows):
        v = [0] * mat.ncols
        for c, row in zip(coeffs, rows):
            if c:
                v = [f.add(x, f.mul(c, y)) for x, y in zip(v, row)]
        span.add(tuple(v))
    return span


def test_rref_hand_example():
    m = Matrix.from_rows(GF(2), [[1, 1], [1, 1]])
    R, rank, pivots = m.rref()
    assert R.rows_as_lists() == [[1, 1], [0, 0]]
    assert rank == 1 and pivots == (0,)


def test_rref_identity_and_zero():
    f = GF(2)
    ident = Matrix.identity(f, 3)
    R, rank, _ = ident.rref()
    assert R == ident and rank == 3
    z = Matrix.zeros(f, 2, 5)
    R, rank, _ = z.rref()
    assert R == z and rank == 0


@pytest.mark.parametrize("f", FIELDS)
def test_rref_idempotent_and_rank_stable(f):
    rng = Random(7)
    for _ in range(25):
        m = random_matrix(f, rng.randrange(1, 6), rng.randrange(1, 6), rng)
        R, rank, _ = m.rref()
        R2, rank2, _ = R.rref()
        assert R2 == R and rank2 == rank


def test_kernel_hand_example():
    m = Matrix.from_rows(GF(2), [[1, 1]])
    k = m.kernel_basis()
    assert k.rows_as_lists() == [[1, 1]]
    # brute-force over the 4 vectors of GF(2)^2
    f = GF(2)
    sols = [v for v in all_vectors(f, 2) if all(
        not sum(f.mul(m.entry(i, j), v[j]) for j in range(2)) % 2 for i in range(1))]
    assert set(map(tuple, k.rows_as_lists())) <= set(sols)


def test_kernel_identity_and_zero():
    f = GF(3)
    assert Matrix.identity(f, 4).kernel_basis().nrows == 0
    assert Matrix.zeros(f, 1, 5).kernel_basis().nrows == 5


@pytest.mark.parametrize("f", FIELDS)
def test_kernel_properties(f):
    rng = Random(11)
    for _ in range(25):
        m = random_matrix(f, rng.randrange(1, 6), rng.randrange(1, 6), rng)
        k = m.kernel_basis()
        assert k.nrows + m.rank() == m.ncols
        if k.nrows:
            prod = m.matmul(k.transpose())
            assert prod.is_zero()


@pytest.mark.parametrize("f", FIELDS)
def test_left_kernel_properties(f):
    rng = Random(13)
    for _ in range(25):
        m = random_matrix(f, rng.randrange(1, 6), rng.randrange(1, 6), rng)
        k = m.left_kernel()
        assert k.nrows == m.nrows - m.rank()
        if k.nrows:
            assert k.matmul(m).is_zero()


def test_solve_hand_example():
    f = GF(2)
    a = Matrix.from_rows(f, [[1, 1], [0, 1]])
    b = Matrix.from_rows(f, [[0], [1]])
    x = a.solve(b)
    assert x.rows_as_lists() == [[1], [1]]


def test_solve_identity_and_inconsistent():
    f = GF(3)
    b = Matrix.from_rows(f, [[1, 2], [0, 1], [2, 2]])
    assert Matrix.identity(f, 3).solve(b) == b
    with pytest.raises(NoSolutionError):
        Matrix.zeros(f, 3, 2).solve(b)


@pytest.mark.parametrize("f", [GF(2), GF(3), GF(2, 2)])
def test_solve_exact_or_truly_unsolvable(f):
    rng = Random(17)
    for _ in range(30):
        rows, cols = rng.randrange(1, 5), rng.randrange(1, 4)
        a = random_matrix(f, rows, cols, rng)
        b = random_matrix(f, rows, 1, rng)
        try:
            x = a.solve(b)
            assert a.matmul(x) == b
        except NoSolutionError:
            # brute-force every candidate (cols <= 4, q <= 4)
            target = tuple(v[0] for v in b.rows_as_lists())
            for cand in all_vectors(f, cols):
                got = tuple(
                    _dot(f, a.row_list(i), cand) for i in range(rows)
                )
                assert got != target


def _dot(f, row, vec):
    acc = 0
    for x, y in zip(row, vec):
        acc = f.add(acc, f.mul(x, y))
    return acc


@pytest.mark.parametrize("f", FIELDS)
def test_matmul_against_schoolbook(f):
    rng = Random(23)
    for _ in range(20):
        a = random_matrix(f, rng.randrange(1, 5), rng.randrange(1, 5), rng)
        b = random_matrix(f, a.ncols, rng.randrange(1, 5), rng)
        prod = a.matmul(b)
        for i in range(a.nrows):
            for j in range(b.ncols):
                acc = 0
                for k in range(a.ncols):
                    acc = f.add(acc, f.mul(a.entry(i, k), b.entry(k, j)))
                assert prod.entry(i, j) == acc


@pytest.mark.parametrize("f", FIELDS)
def test_inverse_roundtrip(f):
    rng = Random(29)
    made = 0
    while made < 10:
        m = random_matrix(f, 4, 4, rng)
        if m.rank() < 4:
            continue
        made += 1
        inv = m.inverse()
        assert m.matmul(inv) == Matrix.identity(f, 4)


def test_subspace_sum_and_intersect_trivial():
    f = GF(2)
    u = Matrix.from_rows(f, [[1, 0], [0, 1]])
    assert subspace_sum(u, u).nrows == 2
    assert subspace_intersect(u, u).nrows == 2
    a = Matrix.from_rows(f, [[1, 0]])
    b = Matrix.from_rows(f, [[0, 1]])
    assert subspace_sum(a, b).nrows == 2
    assert subspace_intersect(a, b).nrows == 0


@pytest.mark.parametrize("f", [GF(2), GF(3)])
def test_subspace_modular_law_bruteforce(f):
    rng = Random(31)
    for _ in range(12):
        u = random_matrix(f, 3, 6, rng).row_space()
        v = random_matrix(f, 4, 6, rng).row_space()
        s = subspace_sum(u, v)
        i = subspace_intersect(u, v)
        assert s.nrows + i.nrows == u.nrows + v.nrows
        su, sv, ss, si = (row_span(f, m) for m in (u, v, s, i))
        assert si == su & sv
        assert ss == {tuple(f.add(a, b) for a, b in zip(x, y)) for x in su for y in sv}


def test_hstack_vstack_transpose():
    f = GF(2)
    a = Matrix.from_rows(f, [[1, 0], [0, 1]])
    b = Matrix.from_rows(f, [[1, 1], [0, 0]])
    assert a.hstack(b).rows_as_lists() == [[1, 0, 1, 1], [0, 1, 0, 0]]
    assert a.vstack(b).nrows == 4
    t = b.transpose()
    assert t.rows_as_lists() == [[1, 0], [1, 0]]


def test_kron_matches_blocks():
    f = GF(3)
    a = Matrix.from_rows(f, [[1, 2], [0, 1]])
    b = Matrix.from_rows(f, [[2, 0], [1, 1]])
    k = a.kron(b)
    for i in range(2):
        for j in range(2):
            for ii in range(2):
                for jj in range(2):
                    assert k.entry(2 * i + ii, 2 * j + jj) == f.mul(a.entry(i, j), b.entry(ii, jj))


@pytest.mark.parametrize("f", FIELDS)
def test_echelon_tracks_expressions(f):
    rng = Random(37)
    for _ in range(15):
        n = rng.randrange(2, 6)
        ech = Echelon(f, n, track=True)
        originals = []
        for _ in range(6):
            row = [rng.randrange(f.q) for _ in range(n)]
            from lsl.matrix import raw_from_list

            raw = raw_from_list(f, row)
            idx, combo = ech.insert(raw)
            if idx is not None:
                originals.append(row)
            else:
                # the reported combination must reconstruct the row exactly
                recon = [0] * n
                for i, c in combo.items():
                    recon = [f.add(x, f.mul(c, y)) for x, y in zip(recon, originals[i])]
                assert recon == row


def test_zero_dimensional_edges():
    f = GF(2)
    z = Matrix.zeros(f, 0, 0)
    R, rank, piv = z.rref()
    assert rank == 0 and piv == ()
    assert z.matmul(z) == z
    wide = Matrix.zeros(f, 0, 4)
    assert wide.kernel_basis().nrows == 4
    tall = Matrix.zeros(f, 4, 0)
    assert tall.left_kernel().nrows == 4
