# tests/test_semigroup.py

from __future__ import annotations

import itertools
from decimal import Decimal, getcontext

import pytest

from app.models.errors import (
    DegreeMismatchError,
    GuardExceededError,
    InputError,
    TruncatedSemigroupError,
)
from app.models.semigroup import TransformationSemigroup
from app.models.transformation import Transformation
from app.services.semigroup import (
    candidate_b,
    class_order,
    close,
    fixed_point_decomposition,
    floor_e_factorial,
    is_closed,
    is_strict_order,
    satisfies_definite_identity,
    satisfies_gendef_identity,
    theorem_bound,
)
from app.services.transformations import enumerate_np, is_nonpermutational
from tests.helpers import T


SWAP = T(2, 1)


# -------------------------
# close / is_closed
# -------------------------


def test_close_constants():
    S = close([T(2, 2), T(1, 1)])
    assert list(S) == [T(2, 2), T(1, 1)]
    assert S.generators == (T(2, 2), T(1, 1))
    assert not S.truncated


def test_close_identity():
    S = close([Transformation.identity(3)])
    assert len(S) == 1


def test_close_contains_product(fig_pair):
    f, g = fig_pair
    S = close([f, g])
    assert T(1, 2, 2) in S
    assert is_closed(S)


def test_close_discovery_order_follows_generators(fig_pair):
    f, g = fig_pair
    assert list(close([f, g]))[:2] == [f, g]
    assert list(close([g, f]))[:2] == [g, f]


def test_close_matches_naive_closure():
    gens = [T(2, 3, 4, 1), T(2, 1, 3, 4), T(1, 1, 3, 4)]
    S = close(gens)
    # T_4 породжується циклом, транспозицією та ідемпотентом рангу 3
    assert len(S) == 4 ** 4
    assert is_closed(S)


def test_close_cap_truncates():
    S = close([T(2, 3, 4, 1), T(2, 1, 3, 4)], cap=10)
    assert S.truncated
    assert len(S) == 10


def test_close_errors():
    with pytest.raises(InputError):
        close([])
    with pytest.raises(DegreeMismatchError):
        close([T(1, 1), T(1, 1, 1)])


def test_close_above_coded_degree():
    n = 17
    shift = Transformation(tuple((i + 1) % n for i in range(n)))
    S = close([shift])
    assert len(S) == n


def test_is_closed_examples(fig_pair):
    assert is_closed([T(1, 1), T(2, 2)])
    assert is_closed([T(2, 2, 2)])
    check = is_closed(list(fig_pair))
    assert not check
    f, g = check.witness
    assert f * g not in set(fig_pair)


# -------------------------
# identities
# -------------------------


def test_definite_identity():
    assert satisfies_definite_identity(close([T(2, 2), T(1, 1)]))
    assert satisfies_definite_identity(close([T(1, 1, 1)]))
    check = satisfies_definite_identity(close([SWAP]))
    assert not check
    assert check.witness == (SWAP, SWAP)


def test_gendef_identity():
    assert satisfies_gendef_identity(close([T(2, 2), T(1, 1)]))
    assert not satisfies_gendef_identity(close([SWAP]))
    B = candidate_b(3)
    assert satisfies_gendef_identity(B)
    assert satisfies_definite_identity(B)


def test_identities_refuse_truncated():
    S = close([T(2, 3, 4, 1), T(2, 1, 3, 4)], cap=5)
    with pytest.raises(TruncatedSemigroupError):
        satisfies_definite_identity(S)
    with pytest.raises(TruncatedSemigroupError):
        satisfies_gendef_identity(S)


def _closed_subsets(n):
    universe = [Transformation(images) for images in itertools.product(range(n), repeat=n)]
    seen = set()
    for size in (1, 2):
        for gens in itertools.combinations(universe, size):
            S = close(list(gens))
            key = frozenset(S)
            if key not in seen:
                seen.add(key)
                yield S


@pytest.mark.parametrize("n", [2, 3])
def test_all_nonpermutational_satisfies_definite_identity(n):
    for S in _closed_subsets(n):
        if all(is_nonpermutational(f) for f in S):
            assert satisfies_definite_identity(S), list(S)
        if satisfies_definite_identity(S):
            assert satisfies_gendef_identity(S), list(S)


def test_definite_identity_admits_permutational_idempotent():
    # Для довільної напівгрупи перетворень обернене не виконується
    S = close([T(1, 2, 2)])
    assert len(S) == 1
    assert not is_nonpermutational(T(1, 2, 2))
    assert satisfies_definite_identity(S)


# -------------------------
# fixed-point classes
# -------------------------


def test_fixed_point_decomposition_candidate_b3():
    d = fixed_point_decomposition(candidate_b(3))
    assert d.classes == {
        0: {T(1, 1, 1)},
        1: {T(2, 2, 2), T(3, 2, 2)},
        2: {T(2, 3, 3), T(3, 3, 3)},
    }
    assert d.residue == frozenset()


def test_fixed_point_decomposition_residue_and_empty_classes():
    d = fixed_point_decomposition(close([Transformation.identity(2)]))
    assert d.residue == {Transformation.identity(2)}
    assert d.classes == {0: frozenset(), 1: frozenset()}

    d = fixed_point_decomposition(close([T(2, 2), T(1, 1)]))
    assert d.sizes() == {0: 1, 1: 1}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_class_order_is_strict(n):
    B = candidate_b(n)
    for root in range(n):
        relation = class_order(B, root)
        assert is_strict_order(relation)
        assert all((j, root) in relation for j in range(n) if j != root)


def test_is_strict_order_detects_violations():
    assert not is_strict_order(frozenset({(0, 0)}))
    assert not is_strict_order(frozenset({(0, 1), (1, 2)}))
    assert is_strict_order(frozenset({(0, 1), (1, 2), (0, 2)}))


# -------------------------
# bounds and B
# -------------------------


def _floor_e_decimal(n: int) -> int:
    getcontext().prec = 50
    e = sum(Decimal(1) / Decimal(_fact(k)) for k in range(60))
    return int(e * _fact(n - 1))


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def test_floor_e_factorial_values():
    assert [floor_e_factorial(n) for n in (1, 3, 4, 5, 6, 7)] == [1, 5, 16, 65, 326, 1957]


# При n = 1 сума дорівнює 1, а ⌊e·0!⌋ = 2: залишок ряду вже не менший за 1
@pytest.mark.parametrize("n", range(2, 13))
def test_floor_e_factorial_matches_decimal(n):
    assert floor_e_factorial(n) == _floor_e_decimal(n)


def test_theorem_bound_values():
    assert theorem_bound(3) == 3
    assert theorem_bound(4) == 20
    assert theorem_bound(5) == 110
    with pytest.raises(InputError):
        theorem_bound(2)
    with pytest.raises(GuardExceededError):
        theorem_bound(21)


def test_candidate_b_examples():
    assert list(candidate_b(2)) == [T(1, 1), T(2, 2)]
    assert set(candidate_b(3)) == {T(1, 1, 1), T(2, 2, 2), T(3, 2, 2), T(2, 3, 3), T(3, 3, 3)}
    assert len(candidate_b(4)) == 16


@pytest.mark.parametrize("n", range(2, 8))
def test_candidate_b_invariants(n):
    B = candidate_b(n)
    assert len(B) == floor_e_factorial(n)
    assert is_closed(B)
    assert all(is_nonpermutational(f) for f in B)
    assert all(f(n - 2) == f(n - 1) for f in B)
    assert list(B) == sorted(B)
    if n <= 5:
        assert set(B) <= set(enumerate_np(n))


def test_candidate_b_guards():
    with pytest.raises(InputError):
        candidate_b(1)
    with pytest.raises(GuardExceededError):
        candidate_b(9)
    with pytest.raises(GuardExceededError):
        candidate_b(5, guard=4)


def test_semigroup_rejects_missing_generators():
    with pytest.raises(InputError):
        TransformationSemigroup(degree=2, elements=(T(1, 1),), generators=(T(2, 2),))
