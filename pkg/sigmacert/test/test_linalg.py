import itertools
import random

from sympy import Matrix

from ..linalg import (
    IntMatrix,
    hermite_normal_form,
    integer_kernel,
    smith_normal_form,
    solve_linear,
    solve_sparse,
    xgcd,
)


def _random_matrix(rng, rows, cols, bound=3):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols)


def _assert_hermite(h):
    """Raises assertion errors if h is not in row-style Hermite normal form"""
    last_pivot = -1
    zero_rows = False
    for row in h.entries:
        nonzero = [j for j, x in enumerate(row) if x]
        if not nonzero:
            zero_rows = True
            continue
        assert not zero_rows, "nonzero row below a zero row"
        j = nonzero[0]
        assert j > last_pivot
        assert row[j] > 0
        for other in h.entries:
            if other is row:
                break
            assert 0 <= other[j] < row[j]
        last_pivot = j


def _box_solvable(matrix, rhs, bound=8):
    """Brute force search for a solution with entries in [-bound, bound] (meet in the middle)"""
    half = matrix.cols // 2
    values = range(-bound, bound + 1)
    left = set()
    for xs in itertools.product(values, repeat=half):
        left.add(tuple(sum(row[j] * xs[j] for j in range(half)) for row in matrix.entries))
    for ys in itertools.product(values, repeat=matrix.cols - half):
        partial = tuple(b - sum(row[half + j] * ys[j] for j in range(len(ys))) for row, b in zip(matrix.entries, rhs))
        if partial in left:
            return True
    return False


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, -5), (7, 0), (17, 5)]:
        x, y, g = xgcd(a, b)
        assert x * a + y * b == g
        assert g >= 0
    assert xgcd(12, 18)[2] == 6
    assert xgcd(0, -5)[2] == 5


def test_hermite_example():
    h, u = hermite_normal_form(IntMatrix([[2, 4], [6, 8]]))
    assert h == IntMatrix([[2, 0], [0, 4]])
    assert u @ IntMatrix([[2, 4], [6, 8]]) == h


def test_hermite_properties():
    rng = random.Random(1)
    for _ in range(50):
        a = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        h, u = hermite_normal_form(a)
        assert u @ a == h
        assert abs(Matrix(u.entries).det()) == 1
        _assert_hermite(h)


def test_hermite_is_unique_under_row_permutation():
    rng = random.Random(2)
    for _ in range(30):
        a = _random_matrix(rng, 4, 3)
        rows = a.to_list()
        rng.shuffle(rows)
        assert hermite_normal_form(a)[0] == hermite_normal_form(IntMatrix(rows, 3))[0]


def test_smith_examples():
    assert smith_normal_form(IntMatrix([[2, 0], [0, 3]])) == (1, 6)
    assert smith_normal_form(IntMatrix([[2, 4], [6, 8]])) == (2, 4)
    assert smith_normal_form(IntMatrix.zeros(3, 2)) == ()
    assert smith_normal_form(IntMatrix.identity(3)) == (1, 1, 1)
    assert smith_normal_form(IntMatrix([], 0)) == ()


def test_smith_properties():
    rng = random.Random(3)
    for _ in range(30):
        a = _random_matrix(rng, 4, 4)
        factors = smith_normal_form(a)
        for d1, d2 in zip(factors, factors[1:]):
            assert d2 % d1 == 0
        det = Matrix(a.entries).det()
        if det != 0:
            product = 1
            for d in factors:
                product *= d
            assert product == abs(det)
        assert len(factors) == Matrix(a.entries).rank()


def test_solve_examples():
    a = IntMatrix([[2, 0], [0, 3]])
    assert solve_linear(a, [4, 9]) == [2, 3]
    assert solve_linear(a, [1, 0]) is None
    x = solve_linear(IntMatrix([[1, 1]]), [5])
    assert sum(x) == 5
    assert solve_linear(IntMatrix([[2, 4]]), [3]) is None
    assert solve_linear(IntMatrix([[0, 0]]), [0]) == [0, 0]


def test_solve_against_box_search():
    rng = random.Random(4)
    for trial in range(100):
        a = _random_matrix(rng, 4, 6)
        if trial % 2:
            rhs = a.apply([rng.randint(-2, 2) for _ in range(6)])
        else:
            rhs = [rng.randint(-5, 5) for _ in range(4)]
        x = solve_linear(a, rhs)
        if x is not None:
            assert a.apply(x) == rhs
        if _box_solvable(a, rhs):
            assert x is not None
        if trial % 2:
            assert x is not None


def test_solve_sparse_with_kernel():
    columns = [{0: 1, 1: 1}, {0: 1}, {1: 1}]
    solution, kernel = solve_sparse(columns, {0: 2, 1: 1}, with_kernel=True)
    total = {}
    for j, c in solution.items():
        for i, v in columns[j].items():
            total[i] = total.get(i, 0) + c * v
    assert {i: v for i, v in total.items() if v} == {0: 2, 1: 1}
    assert len(kernel) == 1


def test_integer_kernel():
    rng = random.Random(5)
    for _ in range(30):
        a = _random_matrix(rng, 3, 5)
        kernel = integer_kernel(a)
        assert len(kernel) == 5 - Matrix(a.entries).rank()
        for v in kernel:
            assert a.apply(v) == [0, 0, 0]
    assert integer_kernel(IntMatrix([[1, 1]])) in ([[-1, 1]], [[1, -1]])
