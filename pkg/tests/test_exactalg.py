import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import determinantal_factors, fraction_rank
from twistk.errors import IllFormedMap, ShapeError, TargetMismatch
from twistk.exactalg import (
    IntMatrix,
    ModuleMap,
    PresentedModule,
    cokernel,
    echelon_basis,
    fixed_submodule,
    hstack,
    index_in,
    induced_map_analysis,
    kernel_basis,
    lattice_contains,
    normalize_invariant_factors,
    smith_normal_form,
    solve,
    submodule_equal,
    submodule_inclusion,
    vstack,
)


@st.composite
def matrices(draw, max_rows=6, max_cols=6, lo=-9, hi=9):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c))
    return IntMatrix(r, c, tuple(entries))


def random_unimodular(n, rng, steps=12):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-3, 3)
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
    if n and rng.random() < 0.5:
        m[0] = [-x for x in m[0]]
    return IntMatrix.from_rows(m, n)


def check_snf(a: IntMatrix):
    dec = smith_normal_form(a)
    assert dec.u @ a @ dec.v == dec.d
    assert abs(dec.u.determinant()) == 1
    assert abs(dec.v.determinant()) == 1
    for i in range(dec.d.rows):
        for j in range(dec.d.cols):
            if i != j:
                assert dec.d[i, j] == 0
    diag = dec.diagonal
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0
    return dec


# -- matrices ---------------------------------------------------------------


def test_shape_validation():
    with pytest.raises(ShapeError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ShapeError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)


def test_serialization_round_trip():
    a = IntMatrix.from_rows([[1, -2, 3], [0, 4, 5]])
    d = a.to_dict()
    assert d == {"rows": 2, "cols": 3, "entries": [1, -2, 3, 0, 4, 5]}
    assert IntMatrix.from_dict(d) == a


def test_block_and_stacks():
    i2 = IntMatrix.identity(2)
    z = IntMatrix.zeros(2, 2)
    assert IntMatrix.block([[i2, z], [z, i2]]) == IntMatrix.identity(4)
    assert hstack([i2, z]).shape == (2, 4)
    assert vstack([i2, z]).shape == (4, 2)


def test_determinant_small():
    assert IntMatrix.from_rows([[2, 1], [7, 4]]).determinant() == 1
    assert IntMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).determinant() == 0


# -- Smith normal form ------------------------------------------------------


def test_snf_identity():
    dec = smith_normal_form(IntMatrix.identity(3))
    assert dec.u == dec.v == dec.d == IntMatrix.identity(3)


def test_snf_diag_2_3():
    dec = check_snf(IntMatrix.diagonal([2, 3]))
    assert dec.diagonal == [1, 6]


def test_snf_zero():
    dec = check_snf(IntMatrix.zeros(2, 2))
    assert dec.d.is_zero()


def test_snf_empty_shapes():
    for r, c in ((0, 0), (0, 3), (3, 0)):
        dec = check_snf(IntMatrix.zeros(r, c))
        assert dec.rank == 0


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_snf_properties(a):
    dec = check_snf(a)
    assert dec.rank == fraction_rank(a.to_rows())


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=4, lo=-6, hi=6))
def test_cokernel_against_determinantal_divisors(a):
    assert cokernel(a).invariant_factors == determinantal_factors(a.to_rows(), a.rows)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=5, max_cols=5), st.randoms(use_true_random=False))
def test_cokernel_invariant_under_unimodular_and_permutation(a, rng):
    base = cokernel(a).invariant_factors
    u = random_unimodular(a.rows, rng)
    v = random_unimodular(a.cols, rng)
    assert cokernel(u @ a @ v).invariant_factors == base
    rows = a.to_rows()
    rng.shuffle(rows)
    perm_cols = list(range(a.cols))
    rng.shuffle(perm_cols)
    shuffled = IntMatrix.from_rows([[r[j] for j in perm_cols] for r in rows], a.cols)
    assert cokernel(shuffled).invariant_factors == base


def test_normalization():
    assert normalize_invariant_factors([1, 2, 6, 0], 5) == (2, 6, 0, 0)
    assert normalize_invariant_factors([], 2) == (0, 0)


# -- kernels and solving ----------------------------------------------------


def test_kernel_examples():
    kb = kernel_basis(IntMatrix.from_rows([[1, 1], [1, 1]]))
    assert kb.cols == 1
    v = kb.column(0)
    assert v in ((1, -1), (-1, 1))
    assert kernel_basis(IntMatrix.identity(3)).cols == 0
    assert kernel_basis(IntMatrix.zeros(1, 2)) == IntMatrix.identity(2)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_kernel_properties(a):
    kb = kernel_basis(a)
    assert kb.rows == a.cols
    assert kb.cols == a.cols - fraction_rank(a.to_rows())
    assert (a @ kb).is_zero()


@settings(max_examples=200, deadline=None)
@given(matrices(max_rows=5, max_cols=5), st.data())
def test_solve_finds_preimages(a, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=a.cols, max_size=a.cols))
    b = a.apply(x)
    y = solve(a, b)
    assert y is not None and a.apply(y) == tuple(b)


def test_solve_no_integer_solution():
    assert solve(IntMatrix.from_rows([[2]]), [1]) is None


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=5, max_cols=5))
def test_echelon_basis_spans_same_lattice(a):
    basis = echelon_basis(a.columns(), a.rows)
    for c in a.columns():
        assert lattice_contains(basis, c)
    if basis:
        m = IntMatrix.from_columns(basis, a.rows)
        for v in basis:
            assert solve(a, v) is not None
        assert m.cols == fraction_rank(a.to_rows())


# -- presented modules ------------------------------------------------------


def test_cokernel_examples():
    m = cokernel(IntMatrix.diagonal([2, 3]))
    assert m.invariant_factors == (6,)
    assert cokernel(IntMatrix.identity(3)).is_trivial
    free = cokernel(IntMatrix.zeros(2, 0))
    assert free.invariant_factors == (0, 0)
    assert free.to_dict() == {"rank": 2, "torsion": []}


def test_describe():
    m = PresentedModule(3, IntMatrix.from_columns([[6, 0, 0]], 3))
    assert m.describe() == "Z^2 ⊕ Z/6"
    assert PresentedModule.free(0).describe() == "0"


# -- maps -------------------------------------------------------------------


def test_identity_analysis():
    m = PresentedModule(2, IntMatrix.from_columns([[4, 0]], 2))
    an = induced_map_analysis(ModuleMap.identity(m))
    assert an.is_injective and an.is_surjective


def test_times_two_on_z():
    z = PresentedModule.free(1)
    an = induced_map_analysis(ModuleMap(z, z, IntMatrix.from_rows([[2]])))
    assert an.is_injective and not an.is_surjective
    assert an.image.invariant_factors == (0,)


def test_times_two_on_z4():
    z4 = cokernel(IntMatrix.from_rows([[4]]))
    an = induced_map_analysis(ModuleMap(z4, z4, IntMatrix.from_rows([[2]])))
    # brute force: x -> 2x on Z/4 has kernel {0, 2} and image {0, 2}
    assert an.kernel.invariant_factors == (2,)
    assert an.image.invariant_factors == (2,)
    assert not an.is_injective and not an.is_surjective


def test_ill_defined_map():
    z2 = cokernel(IntMatrix.from_rows([[2]]))
    z3 = cokernel(IntMatrix.from_rows([[3]]))
    f = ModuleMap(z2, z3, IntMatrix.from_rows([[1]]))
    assert not f.is_well_defined()
    with pytest.raises(IllFormedMap):
        induced_map_analysis(f)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_identity_analysis_on_arbitrary_modules(rel):
    m = cokernel(rel)
    an = induced_map_analysis(ModuleMap.identity(m))
    assert an.is_injective and an.is_surjective
    assert an.image.invariant_factors == m.invariant_factors


def test_submodule_equal_examples():
    z = PresentedModule.free(1)
    two = ModuleMap(z, z, IntMatrix.from_rows([[2]]))
    assert submodule_equal(two, two)
    assert submodule_equal(two, ModuleMap(z, z, IntMatrix.from_rows([[-2]])))
    assert not submodule_equal(two, ModuleMap(z, z, IntMatrix.from_rows([[4]])))


def test_submodule_equal_target_mismatch():
    z = PresentedModule.free(1)
    z2 = PresentedModule.free(2)
    with pytest.raises(TargetMismatch):
        submodule_equal(ModuleMap.identity(z), ModuleMap(z, z2, IntMatrix.from_rows([[1], [0]])))


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=4), st.data())
def test_submodule_equal_properties(gens, data):
    t = PresentedModule.free(gens.rows)
    f = ModuleMap(PresentedModule.free(gens.cols), t, gens)
    assert submodule_equal(f, f)
    # redundant generators do not change the image
    extra = data.draw(st.lists(st.integers(-3, 3), min_size=gens.cols, max_size=gens.cols))
    redundant = hstack([gens, IntMatrix.from_columns([gens.apply(extra)], gens.rows)])
    g = ModuleMap(PresentedModule.free(redundant.cols), t, redundant)
    assert submodule_equal(f, g) and submodule_equal(g, f)


def test_compose_and_equals_mod_relations():
    z6 = cokernel(IntMatrix.from_rows([[6]]))
    f = ModuleMap(z6, z6, IntMatrix.from_rows([[5]]))
    assert f.compose(f).equals(ModuleMap.identity(z6))
    assert ModuleMap(z6, z6, IntMatrix.from_rows([[7]])).equals(ModuleMap.identity(z6))


def test_fixed_submodule_and_index():
    # swap on Z^2: fixed part spanned by (1, 1)
    z2 = PresentedModule.free(2)
    swap = ModuleMap(z2, z2, IntMatrix.from_rows([[0, 1], [1, 0]]))
    fixed = fixed_submodule(swap)
    assert fixed.source.invariant_factors == (0,)
    sub = submodule_inclusion([(3, 3)], z2)
    assert index_in(sub, fixed) == (3,)
    assert index_in(fixed, sub) is None
