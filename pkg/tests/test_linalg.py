import random
from fractions import Fraction

import pytest

from eqcohom.linalg import (
    Mat,
    Subspace,
    inverse,
    kernel_basis,
    quotient_dim,
    rat,
    rat_str,
    rref,
    solve,
    subspace_intersection,
    subspace_sum,
)


def fraction_free_rank(rows):
    """Independent oracle: Bareiss-style fraction-free elimination over the
    integers (after clearing denominators), returning the rank."""
    cleared = []
    for row in rows:
        denom = 1
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        cleared.append([int(x * denom) for x in row])
    a = [r[:] for r in cleared]
    m = len(a)
    n = len(a[0]) if a else 0
    rank = 0
    prev = 1
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def random_matrix(rng, rows, cols, denoms=(1, 1, 2, 3)):
    return Mat(
        [
            [Fraction(rng.randint(-4, 4), rng.choice(denoms)) for _ in range(cols)]
            for _ in range(rows)
        ],
        cols=cols,
    )


def test_rat_roundtrip():
    assert rat("3/4") == Fraction(3, 4)
    assert rat("-7") == Fraction(-7)
    assert rat_str(Fraction(3, 4)) == "3/4"
    assert rat_str(Fraction(-2, 1)) == "-2"
    with pytest.raises(TypeError):
        rat(1.5)


def test_rref_identity():
    ident = Mat.identity(2)
    red, pivots = rref(ident)
    assert red == ident
    assert pivots == [0, 1]


def test_rref_rank_one():
    red, pivots = rref(Mat([[1, 2], [2, 4]]))
    assert red == Mat([[1, 2], [0, 0]])
    assert pivots == [0]
    assert Subspace(2, [[1, 2], [2, 4]]).basis == Mat([[1, 2]])


def test_rref_rank_matches_fraction_free_oracle():
    rng = random.Random(42)
    for _ in range(30):
        m = random_matrix(rng, 5, 7)
        assert len(rref(m)[1]) == fraction_free_rank(m.data)


def test_kernel_identity():
    assert kernel_basis(Mat.identity(3)).dim == 0


def test_kernel_coordinate_projection():
    ker = kernel_basis(Mat([[1, 0]]))
    assert ker.basis == Mat([[0, 1]])


def test_rank_nullity():
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        assert len(rref(m)[1]) + kernel_basis(m).dim == cols


def test_kernel_vectors_annihilated():
    rng = random.Random(3)
    for _ in range(20):
        m = random_matrix(rng, 4, 5)
        for v in kernel_basis(m).basis_vectors():
            assert all(x == 0 for x in m.mulvec(v))


def test_solve_identity():
    assert solve(Mat.identity(3), [1, 2, 3]) == (
        Fraction(1),
        Fraction(2),
        Fraction(3),
    )


def test_solve_inconsistent():
    # x = 1 and x = 2 simultaneously.
    assert solve(Mat([[1], [1]]), [1, 2]) is None


def test_solve_exact_defining_property():
    rng = random.Random(11)
    for _ in range(30):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        target = [Fraction(rng.randint(-3, 3)) for _ in range(m.cols)]
        b = m.mulvec(target)
        x = solve(m, b)
        assert x is not None
        assert m.mulvec(x) == tuple(b)


def test_inverse():
    m = Mat([[2, 1], [1, 1]])
    assert m * inverse(m) == Mat.identity(2)
    with pytest.raises(ValueError):
        inverse(Mat([[1, 2], [2, 4]]))


def test_subspace_canonical_idempotent():
    rng = random.Random(5)
    for _ in range(20):
        m = random_matrix(rng, 3, 5)
        s = Subspace(5, m.data)
        if s.dim == 0:
            continue
        # Any basis of the same space canonicalizes identically.
        mixed = [
            [2 * a + b for a, b in zip(s.basis.data[0], s.basis.data[-1])]
        ] + [list(v) for v in reversed(s.basis.data)]
        assert Subspace(5, mixed) == s
        assert Subspace(5, s.basis.data) == s


def test_quotient_dim_equal_spaces():
    s = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    assert quotient_dim(s, s) == 0


def test_quotient_dim_requires_nesting():
    a = Subspace(2, [[1, 0]])
    b = Subspace(2, [[0, 1]])
    with pytest.raises(ValueError):
        quotient_dim(a, b)


def test_intersection_coordinate_subspaces():
    a = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    assert subspace_intersection(a, b) == Subspace(3, [[0, 1, 0]])


def test_grassmann_identity():
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(1, 6)
        a = Subspace(n, random_matrix(rng, rng.randint(0, n), n).data)
        b = Subspace(n, random_matrix(rng, rng.randint(0, n), n).data)
        lhs = a.dim + b.dim
        rhs = subspace_sum(a, b).dim + subspace_intersection(a, b).dim
        assert lhs == rhs


def test_containment():
    a = Subspace(3, [[1, 0, 0]])
    b = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    assert a.is_subspace_of(b)
    assert not b.is_subspace_of(a)
    assert b.contains([1, 2, 0])
    assert not b.contains([0, 0, 1])
