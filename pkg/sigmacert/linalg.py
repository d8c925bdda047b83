"""
Exact integer linear algebra over Python integers.

Dense matrices are used for Hermite and Smith normal forms. Large boundary
systems coming from the witness search are solved with a sparse incremental
echelon form (vectors as dicts index -> nonzero coefficient).
"""

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors


class IntMatrix(object):
    """ Dense integer matrix stored as a list of rows """

    def __init__(self, entries, cols=None):
        self.entries = [[int(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
            if cols is not None and cols != self.cols:
                raise ValueError("column count does not match the entries")
        else:
            self.cols = cols or 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("all rows of a matrix must have the same length")

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, size):
        return cls([[int(i == j) for j in range(size)] for i in range(size)], size)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return False
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"IntMatrix({self.entries})"

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("matrix shapes do not match")
        columns = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in columns] for row in self.entries],
                         other.cols)

    def transpose(self):
        return IntMatrix([list(col) for col in zip(*self.entries)] if self.rows else [], self.rows)

    def apply(self, vector):
        if len(vector) != self.cols:
            raise ValueError("vector length does not match the matrix")
        return [sum(a * b for a, b in zip(row, vector)) for row in self.entries]

    def column(self, j):
        return [row[j] for row in self.entries]

    def to_list(self):
        return [row[:] for row in self.entries]


def xgcd(a, b):
    """Returns (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0"""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _combine_rows(rows, i, j, x, y, u, v):
    # (row_i, row_j) <- (x*row_i + y*row_j, u*row_i + v*row_j)
    ri, rj = rows[i], rows[j]
    rows[i] = [x * a + y * b for a, b in zip(ri, rj)]
    rows[j] = [u * a + v * b for a, b in zip(ri, rj)]


def hermite_normal_form(matrix):
    """
    Row-style Hermite normal form. Returns (H, U) with U unimodular and H == U @ A.
    Pivots of H are positive, entries above a pivot are in [0, pivot), and
    rows below the rank are zero.
    """
    h = matrix.to_list()
    u = IntMatrix.identity(matrix.rows).to_list()
    pivot_row = 0
    for j in range(matrix.cols):
        if pivot_row == matrix.rows:
            break
        for i in range(pivot_row + 1, matrix.rows):
            b = h[i][j]
            if b == 0:
                continue
            a = h[pivot_row][j]
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            _combine_rows(h, pivot_row, i, x, y, -bg, ag)
            _combine_rows(u, pivot_row, i, x, y, -bg, ag)
        pivot = h[pivot_row][j]
        if pivot == 0:
            continue
        if pivot < 0:
            h[pivot_row] = [-e for e in h[pivot_row]]
            u[pivot_row] = [-e for e in u[pivot_row]]
            pivot = -pivot
        for i in range(pivot_row):
            factor = h[i][j] // pivot
            if factor:
                h[i] = [a - factor * b for a, b in zip(h[i], h[pivot_row])]
                u[i] = [a - factor * b for a, b in zip(u[i], u[pivot_row])]
        pivot_row += 1
    return IntMatrix(h, matrix.cols), IntMatrix(u, matrix.rows)


def smith_normal_form(matrix):
    """Nonzero invariant factors d1 | d2 | ... (all positive); empty for the zero matrix"""
    if matrix.rows == 0 or matrix.cols == 0:
        return ()
    dm = DomainMatrix([[ZZ(e) for e in row] for row in matrix.entries], (matrix.rows, matrix.cols), ZZ)
    factors = [abs(int(f)) for f in invariant_factors(dm)]
    return tuple(sorted(f for f in factors if f))


def _axpy(target, factor, source):
    """target + factor * source for sparse vectors (new dict)"""
    result = dict(target)
    for index, value in source.items():
        entry = result.get(index, 0) + factor * value
        if entry:
            result[index] = entry
        else:
            result.pop(index, None)
    return result


def _combine(x, first, y, second):
    return _axpy({k: x * v for k, v in first.items()}, y, second) if x else {k: y * v for k, v in second.items() if y}


class SparseEchelon(object):
    """
    Incremental echelon basis of the lattice spanned by sparse integer vectors.

    Every basis vector has a distinct pivot (its smallest index) and tracks the
    combination of input vectors it came from. Inputs that reduce to zero give
    relations between the inputs, i.e. a basis of the kernel.
    """

    def __init__(self):
        self.basis = {}
        self.relations = []
        self.count = 0

    def add_vector(self, vector):
        vec = {k: v for k, v in vector.items() if v}
        combo = {self.count: 1}
        self.count += 1
        while vec:
            p = min(vec)
            if p not in self.basis:
                self.basis[p] = (vec, combo)
                return
            bvec, bcombo = self.basis[p]
            a, b = bvec[p], vec[p]
            if b % a == 0:
                f = b // a
                vec = _axpy(vec, -f, bvec)
                combo = _axpy(combo, -f, bcombo)
            else:
                x, y, g = xgcd(a, b)
                ag, mbg = a // g, -(b // g)
                self.basis[p] = (_combine(x, bvec, y, vec), _combine(x, bcombo, y, combo))
                vec, combo = _combine(mbg, bvec, ag, vec), _combine(mbg, bcombo, ag, combo)
        if combo:
            self.relations.append(combo)

    def rank(self):
        return len(self.basis)

    def solve(self, target):
        """Combination of inputs (dict input index -> coefficient) summing to target, or None"""
        residual = {k: v for k, v in target.items() if v}
        solution = {}
        for p in sorted(self.basis):
            if not residual:
                break
            if min(residual) < p:
                return None
            value = residual.get(p)
            if not value:
                continue
            bvec, bcombo = self.basis[p]
            if value % bvec[p]:
                return None
            f = value // bvec[p]
            residual = _axpy(residual, -f, bvec)
            solution = _axpy(solution, f, bcombo)
        if residual:
            return None
        return solution


def solve_sparse(columns, target, with_kernel=False):
    """
    Solves sum_j x_j * columns[j] == target over the integers.
    :param columns: list of sparse vectors (dict row -> coefficient)
    :param target: sparse vector
    :returns: (solution dict j -> x_j or None, kernel basis list of dicts)
    """
    echelon = SparseEchelon()
    for column in columns:
        echelon.add_vector(column)
    solution = echelon.solve(target)
    return solution, (echelon.relations if with_kernel else [])


def solve_linear(matrix, rhs):
    """Integer solution x of A x = b as a list, or None when there is none"""
    if len(rhs) != matrix.rows:
        raise ValueError("right-hand side length does not match the matrix")
    columns = [{i: matrix.entries[i][j] for i in range(matrix.rows) if matrix.entries[i][j]}
               for j in range(matrix.cols)]
    solution, _ = solve_sparse(columns, {i: b for i, b in enumerate(rhs) if b})
    if solution is None:
        return None
    return [solution.get(j, 0) for j in range(matrix.cols)]


def integer_kernel(matrix):
    """Basis (list of integer vectors) of the lattice of integer solutions of A x = 0"""
    columns = [{i: matrix.entries[i][j] for i in range(matrix.rows) if matrix.entries[i][j]}
               for j in range(matrix.cols)]
    echelon = SparseEchelon()
    for column in columns:
        echelon.add_vector(column)
    return [[relation.get(j, 0) for j in range(matrix.cols)] for relation in echelon.relations]
