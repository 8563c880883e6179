import random

import pytest

from kproj.linalg import (
    FgAbelianGroup,
    IntegerMatrix,
    cokernel,
    content,
    groups_equal,
    is_isomorphism,
    kernel_basis,
    lattice_contains,
    smith_normal_form,
    solve_integer,
)

from oracles import (
    EnumeratedQuotient,
    chain_from_diagonal,
    det_cofactor,
    enumerated_cyclic_order,
    minors_gcd_invariant_factors,
    naive_diagonalize,
)


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return IntegerMatrix(rows, cols,
                         tuple(rng.randint(lo, hi) for _ in range(rows * cols)))


def random_unimodular(n, rng, steps=12):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        op = rng.randrange(3)
        if op == 0:
            c = rng.choice([-2, -1, 1, 2])
            for k in range(n):
                m[i][k] += c * m[j][k]
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            for k in range(n):
                m[i][k] = -m[i][k]
    return IntegerMatrix.from_rows(m, cols=n)


def check_smith_form(a):
    form = smith_normal_form(a)
    assert form.u @ a @ form.v == form.diagonal_matrix()
    assert abs(form.u.det()) == 1
    assert abs(form.v.det()) == 1
    assert all(d > 0 for d in form.d)
    for s, t in zip(form.d, form.d[1:]):
        assert t % s == 0
    return form


class TestSmithNormalForm:
    def test_identity(self):
        form = check_smith_form(IntegerMatrix.identity(2))
        assert form.d == (1, 1)
        assert form.u == IntegerMatrix.identity(2)
        assert form.v == IntegerMatrix.identity(2)

    def test_zero_matrix(self):
        form = check_smith_form(IntegerMatrix.zero(2, 3))
        assert form.d == ()
        assert form.u == IntegerMatrix.identity(2)
        assert form.v == IntegerMatrix.identity(3)

    def test_two_by_two(self):
        a = IntegerMatrix.from_rows([[2, 4], [6, 8]])
        form = check_smith_form(a)
        assert form.d == (2, 4)
        # frozen from the minors-gcd oracle and plain row/column reduction
        assert minors_gcd_invariant_factors([[2, 4], [6, 8]]) == [2, 4]
        assert chain_from_diagonal(naive_diagonalize([[2, 4], [6, 8]])) == [2, 4]

    def test_empty_shapes(self):
        for rows, cols in ((0, 0), (0, 3), (3, 0)):
            form = check_smith_form(IntegerMatrix.zero(rows, cols))
            assert form.d == ()

    def test_random_matrices_against_minors_oracle(self):
        rng = random.Random(421)
        for _ in range(500):
            rows = rng.randrange(0, 7)
            cols = rng.randrange(0, 7)
            a = random_matrix(rng, rows, cols)
            form = check_smith_form(a)
            chain = [d for d in minors_gcd_invariant_factors(a.row_lists())]
            assert list(form.d) == chain

    def test_invariant_under_unimodular_multiplication(self):
        rng = random.Random(91)
        for _ in range(50):
            rows = rng.randrange(1, 6)
            cols = rng.randrange(1, 6)
            a = random_matrix(rng, rows, cols, -5, 5)
            u = random_unimodular(rows, rng)
            w = random_unimodular(cols, rng)
            assert smith_normal_form(u @ a @ w).d == smith_normal_form(a).d

    def test_reduction_agrees_with_naive_elementary_ops(self):
        rng = random.Random(7)
        for _ in range(60):
            rows = rng.randrange(1, 5)
            cols = rng.randrange(1, 5)
            a = random_matrix(rng, rows, cols, -6, 6)
            expected = chain_from_diagonal(naive_diagonalize(a.row_lists()))
            got = [d for d in smith_normal_form(a).d if d > 1]
            assert got == expected


class TestCokernel:
    def test_single_relation(self):
        g = cokernel(IntegerMatrix.from_rows([[2]]))
        assert g == FgAbelianGroup(0, (2,))

    def test_no_relations(self):
        g = cokernel(IntegerMatrix.zero(0, 3))
        assert g == FgAbelianGroup(3, ())

    def test_crt_merge(self):
        g = cokernel(IntegerMatrix.from_rows([[2, 0], [0, 3]]))
        assert g == FgAbelianGroup(0, (6,))
        # the enumeration oracle sees a cyclic group of order 6
        assert enumerated_cyclic_order([[2, 0], [0, 3]], 2) == 6

    def test_groups_equal_on_cokernel(self):
        g = cokernel(IntegerMatrix.from_rows([[2, 0], [0, 3]]))
        assert groups_equal(g, FgAbelianGroup(0, (6,)))

    def test_order_matches_enumeration(self):
        rng = random.Random(5150)
        tested = 0
        while tested < 40:
            n = rng.randrange(1, 4)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            d = det_cofactor(rows)
            if d == 0 or abs(d) > 1000:
                continue
            tested += 1
            quotient = EnumeratedQuotient(rows, n)
            assert cokernel(IntegerMatrix.from_rows(rows, cols=n)).order() == quotient.size()


class TestKernelBasis:
    def test_identity_has_no_kernel(self):
        k = kernel_basis(IntegerMatrix.identity(3))
        assert k.cols == 0

    def test_zero_matrix_kernel_is_everything(self):
        k = kernel_basis(IntegerMatrix.zero(2, 2))
        assert k.cols == 2
        assert abs(k.det()) == 1

    def test_primitive_kernel_vector(self):
        a = IntegerMatrix.from_rows([[1, 1]])
        k = kernel_basis(a)
        assert k.cols == 1
        assert (a @ k).is_zero()
        assert content(k.column(0)) == 1
        assert k.column(0) in ((1, -1), (-1, 1))

    def test_random_kernels(self):
        rng = random.Random(33)
        for _ in range(100):
            rows = rng.randrange(0, 6)
            cols = rng.randrange(0, 6)
            a = random_matrix(rng, rows, cols, -6, 6)
            k = kernel_basis(a)
            assert (a @ k).is_zero()
            # full column rank and primitive columns
            assert len(smith_normal_form(k).d) == k.cols
            for j in range(k.cols):
                assert content(k.column(j)) == 1


class TestIsIsomorphism:
    def test_identity(self):
        assert is_isomorphism(IntegerMatrix.identity(4))

    def test_shear(self):
        assert is_isomorphism(IntegerMatrix.from_rows([[1, 1], [0, 1]]))

    def test_doubling_is_not(self):
        assert not is_isomorphism(IntegerMatrix.from_rows([[2]]))

    def test_rectangular_is_not(self):
        assert not is_isomorphism(IntegerMatrix.zero(2, 3))

    def test_det_against_cofactor_oracle(self):
        rng = random.Random(8)
        for _ in range(80):
            n = rng.randrange(0, 5)
            a = random_matrix(rng, n, n, -7, 7)
            assert a.det() == det_cofactor(a.row_lists())


class TestSolveInteger:
    def test_solvable_system(self):
        a = IntegerMatrix.from_rows([[2, 0], [0, 3]])
        b = IntegerMatrix.column_vector([4, 9])
        x = solve_integer(a, b)
        assert x is not None
        assert a @ x == b

    def test_unsolvable_by_divisibility(self):
        a = IntegerMatrix.from_rows([[2]])
        assert solve_integer(a, IntegerMatrix.column_vector([3])) is None

    def test_unsolvable_by_rank(self):
        a = IntegerMatrix.from_rows([[1, 1], [1, 1]])
        assert solve_integer(a, IntegerMatrix.column_vector([0, 1])) is None

    def test_lattice_contains(self):
        gens = IntegerMatrix.from_rows([[2, 0], [0, 3]]).transpose()
        assert lattice_contains(gens, IntegerMatrix.column_vector([2, 3]))
        assert not lattice_contains(gens, IntegerMatrix.column_vector([1, 0]))

    def test_random_roundtrip(self):
        rng = random.Random(77)
        for _ in range(60):
            rows = rng.randrange(1, 5)
            cols = rng.randrange(1, 5)
            a = random_matrix(rng, rows, cols, -5, 5)
            x = random_matrix(rng, cols, 2, -4, 4)
            b = a @ x
            got = solve_integer(a, b)
            assert got is not None
            assert a @ got == b


class TestFgAbelianGroup:
    def test_validation(self):
        with pytest.raises(ValueError):
            FgAbelianGroup(-1, ())
        with pytest.raises(ValueError):
            FgAbelianGroup(0, (1,))
        with pytest.raises(ValueError):
            FgAbelianGroup(0, (4, 2))

    def test_structural_equality(self):
        assert groups_equal(FgAbelianGroup(2, ()), FgAbelianGroup(2, ()))
        assert not groups_equal(FgAbelianGroup(0, (2, 4)), FgAbelianGroup(0, (8,)))

    def test_direct_sum_renormalizes(self):
        a = FgAbelianGroup(1, (4,))
        b = FgAbelianGroup(0, (2, 6))
        s = a.direct_sum(b)
        assert s.free_rank == 1
        assert s.torsion == (2, 2, 12)

    def test_order(self):
        assert FgAbelianGroup(0, (2, 4)).order() == 8
        assert FgAbelianGroup(1, ()).order() is None
        assert FgAbelianGroup.trivial().order() == 1

    def test_render(self):
        assert FgAbelianGroup.trivial().render() == "0"
        assert FgAbelianGroup(1, ()).render() == "Z"
        assert FgAbelianGroup(3, ()).render() == "Z^3"
        assert FgAbelianGroup(2, (2, 4)).render() == "Z^2 ⊕ Z/2 ⊕ Z/4"

    def test_parse_roundtrip(self):
        for g in (FgAbelianGroup.trivial(), FgAbelianGroup(1, ()),
                  FgAbelianGroup(4, ()), FgAbelianGroup(0, (3,)),
                  FgAbelianGroup(2, (2, 2, 4))):
            assert FgAbelianGroup.parse(g.render()) == g

    def test_element_arithmetic(self):
        g = FgAbelianGroup(1, (2, 4))
        a = g.normalize_element((3, 1, 5))
        assert a == (3, 1, 1)
        assert g.add_elements(a, (1, 1, 3)) == (4, 0, 0)
        assert g.negate_element((1, 1, 1)) == (-1, 1, 3)
        assert g.scale_element((1, 1, 1), 2) == (2, 0, 2)


class TestMatrixTextFormat:
    def test_roundtrip(self):
        a = IntegerMatrix.from_rows([[1, -2, 3], [0, 5, -6]])
        assert IntegerMatrix.from_text(a.to_text()) == a

    def test_zero_dimensions(self):
        a = IntegerMatrix.zero(0, 3)
        assert IntegerMatrix.from_text(a.to_text()) == a

    def test_malformed(self):
        with pytest.raises(ValueError):
            IntegerMatrix.from_text("2 2\n1 2 3")
