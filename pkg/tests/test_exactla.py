from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklinv.exactla import Matrix, NonUnique, NoSolution, kernel_basis, rank, solve
from dunklinv.scalars import ParamSpace

F = Fraction


def test_identity_solve():
    b = [F(1, 2), F(-3), F(7)]
    assert list(solve(Matrix.identity(3), b)) == b


def test_symbolic_solve_records_pivot():
    sp = ParamSpace(("c",))
    c = sp.gen("c")
    sol = solve(Matrix([[c, 0], [0, 1]]), [c, 1])
    assert list(sol) == [1, 1]
    assert c in sol.pivots  # elimination divided by c, so c != 0 is the certificate


def test_inconsistent():
    with pytest.raises(NoSolution):
        solve(Matrix([[1, 1], [1, 1]]), [1, 0])


def test_underdetermined():
    with pytest.raises(NonUnique) as info:
        solve(Matrix([[1, 1], [2, 2]]), [1, 2])
    assert info.value.kernel == [[F(-1), F(1)]]


@pytest.mark.parametrize("A, dim", [
    (Matrix.zeros(2, 2), 2),
    (Matrix.identity(3), 0),
    (Matrix([[1, 1]]), 1),
])
def test_kernel_dimensions(A, dim):
    ker = kernel_basis(A)
    assert len(ker) == dim
    for v in ker:
        assert all(not x for x in A * v)


def test_kernel_of_row():
    assert kernel_basis(Matrix([[1, 1]])) == [[F(-1), F(1)]]


def test_inverse_and_rank():
    A = Matrix([[2, 1], [1, 1]])
    assert A * A.inverse() == Matrix.identity(2)
    assert rank(Matrix([[1, 2], [2, 4]])) == 1


def test_symbolic_inverse():
    sp = ParamSpace(("c",))
    c = sp.gen("c")
    A = Matrix([[1 - c, c], [c, 1 - c]])
    assert A * A.inverse() == Matrix.identity(2)


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                       min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(square, st.data())
def test_solve_or_kernel(rows, data):
    A = Matrix(rows)
    n = len(rows)
    b = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    r = rank(A)
    assert r + len(kernel_basis(A)) == n
    if r == n:
        x = solve(A, b)
        assert A * list(x) == [F(v) for v in b]
    else:
        with pytest.raises((NoSolution, NonUnique)):
            solve(A, b)
