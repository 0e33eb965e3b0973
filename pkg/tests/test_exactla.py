from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from toruscalc.exactla import (
    IntMatrix,
    LinearSolver,
    RatMatrix,
    is_direct_summand,
    matrix_rank,
    minors_gcd,
    rank_and_kernel,
    smith_normal_form,
)


def test_snf_identity():
    sf = smith_normal_form(IntMatrix.from_rows([[1, 0], [0, 1]]))
    assert sf.invariant_factors == (1, 1)
    assert sf.rank == 2


def test_snf_zero_matrix():
    sf = smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 0], [0, 0]]))
    assert sf.invariant_factors == ()
    assert sf.rank == 0


def test_snf_divisibility_example():
    # gcd of 1x1 minors is 2 and |det| = 8, so the factors are (2, 4).
    sf = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert sf.invariant_factors == (2, 4)


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=120, deadline=None)
@given(small_matrices)
def test_snf_matches_gcd_of_minors(rows):
    m = IntMatrix.from_rows(rows)
    sf = smith_normal_form(m)
    prod = 1
    for j, d in enumerate(sf.invariant_factors, start=1):
        prod *= d
        assert prod == minors_gcd(m, j)
    assert minors_gcd(m, sf.rank + 1) == 0


@settings(max_examples=120, deadline=None)
@given(small_matrices)
def test_snf_rank_equals_rational_rank(rows):
    m = IntMatrix.from_rows(rows)
    assert smith_normal_form(m).rank == matrix_rank(rows)


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_kernel_vectors_multiply_to_zero(rows):
    m = RatMatrix.from_rows(rows)
    rank, kernel = rank_and_kernel(m)
    assert rank + len(kernel) == m.cols
    for v in kernel:
        for row in m.entries:
            assert sum(a * b for a, b in zip(row, v)) == 0


def test_direct_summand_standard_basis_part():
    assert is_direct_summand([(1, 0, 0), (0, 1, 0)])


def test_direct_summand_rejects_imprimitive():
    assert not is_direct_summand([(2, 0)])


def test_direct_summand_rejects_index_two():
    # Determinant -2, so the minor gcd chain gives an invariant factor 2.
    assert not is_direct_summand([(1, 1), (1, -1)])


def test_direct_summand_empty_and_overfull():
    assert is_direct_summand([])
    assert not is_direct_summand([(1, 0), (0, 1), (1, 1)])


def test_rank_and_kernel_identity():
    rank, kernel = rank_and_kernel(RatMatrix.from_rows([[1, 0], [0, 1]]))
    assert rank == 2 and kernel == []


def test_rank_and_kernel_zero():
    rank, kernel = rank_and_kernel(RatMatrix.from_rows([[0, 0, 0, 0]] * 3))
    assert rank == 0 and len(kernel) == 4


def test_rank_and_kernel_dependent_rows():
    rank, kernel = rank_and_kernel(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert rank == 1
    assert len(kernel) == 1
    v = kernel[0]
    assert v[0] * 1 + v[1] * 2 == 0  # spanned by (-2, 1)
    assert v[1] != 0 and v[0] / v[1] == Fraction(-2)


def test_linear_solver_coordinates():
    solver = LinearSolver(3)
    solver.add([1, 0, 0])
    solver.add([1, 1, 0])
    solver.add([2, 1, 0])  # dependent
    coords = solver.coordinates([0, 2, 0])
    assert coords is not None
    vecs = [(1, 0, 0), (1, 1, 0), (2, 1, 0)]
    combo = [sum(c * v[i] for c, v in zip(coords, vecs)) for i in range(3)]
    assert combo == [0, 2, 0]
    assert solver.coordinates([0, 0, 1]) is None
    assert solver.rank == 2
