# tests/test_search.py

from __future__ import annotations

import pytest

from app.models.errors import GuardExceededError, InputError
from app.services.automata import is_reduced
from app.services.classify import is_definite
from app.services.search import (
    certify,
    max_definite_syc,
    max_np_subsemigroup_bnb,
    max_np_subsemigroup_exact,
    realizing_automaton,
)
from app.services.semigroup import candidate_b, fixed_point_decomposition, theorem_bound
from tests.helpers import T


# -------------------------
# certify
# -------------------------


def test_certify_accepts_candidate_b():
    cert = certify(candidate_b(4))
    assert cert.valid and cert.size == 16


def test_certify_rejects_open_set(fig_pair):
    cert = certify(fig_pair)
    assert not cert
    f, g = cert.pair
    assert f * g not in set(fig_pair)


def test_certify_rejects_permutational_element():
    # (1,2,2) ідемпотентне: множина замкнена, але елемент переставний
    cert = certify([T(1, 2, 2)])
    assert not cert
    assert cert.element == T(1, 2, 2)


# -------------------------
# exact search
# -------------------------


def test_exact_small_degrees():
    two = max_np_subsemigroup_exact(2)
    assert two.best_size == 2 and two.exhaustive
    three = max_np_subsemigroup_exact(3)
    assert three.best_size == 5 and three.exhaustive
    assert certify(three.witness)


def test_exact_rejects_other_degrees():
    with pytest.raises(InputError):
        max_np_subsemigroup_exact(4)


# -------------------------
# branch and bound
# -------------------------


def test_bnb_matches_exact_for_three():
    result = max_np_subsemigroup_bnb(3, deterministic=True)
    assert result.exhaustive
    assert result.best_size == max_np_subsemigroup_exact(3).best_size


def test_bnb_budgeted_run_keeps_candidate():
    result = max_np_subsemigroup_bnb(4, budget_nodes=200, deterministic=True)
    assert result.best_size >= 16
    assert certify(result.witness)
    assert result.explored_nodes <= 201
    sizes = [len(S) for S in result.history]
    assert sizes == sorted(sizes)
    for root, members in fixed_point_decomposition(result.witness).classes.items():
        assert len(members) <= 6


@pytest.mark.parametrize("budget", [150, 3_000])
def test_bnb_deterministic_runs_repeat(budget):
    first = max_np_subsemigroup_bnb(4, budget_nodes=budget, deterministic=True)
    second = max_np_subsemigroup_bnb(4, budget_nodes=budget, deterministic=True)
    assert list(first.witness) == list(second.witness)
    assert first.explored_nodes == second.explored_nodes
    assert first.exhaustive == second.exhaustive
    assert [list(S) for S in first.history] == [list(S) for S in second.history]


def test_bnb_guard():
    with pytest.raises(GuardExceededError):
        max_np_subsemigroup_bnb(6)


@pytest.mark.slow
def test_bnb_four_respects_bound():
    result = max_np_subsemigroup_bnb(4, budget_nodes=2_000_000, deterministic=True)
    assert result.best_size >= 16
    if result.exhaustive:
        assert result.best_size <= theorem_bound(4)


@pytest.mark.slow
def test_bnb_parallel_workers():
    result = max_np_subsemigroup_bnb(4, budget_nodes=4_000, workers=2)
    assert result.budget.workers == 2
    assert result.best_size >= 16
    assert certify(result.witness)


# -------------------------
# realizable definite semigroups
# -------------------------


def test_max_definite_syc_two():
    result = max_definite_syc(2)
    assert result.best_size == 2
    assert result.realization.start == 0
    assert result.realization.finals == {0}


def test_max_definite_syc_three():
    result = max_definite_syc(3)
    assert result.best_size == 5
    assert set(result.witness) == set(candidate_b(3))
    assert any("2 і 3" in note for note in result.realization.notes)
    A = realizing_automaton(result.witness, result.realization)
    assert is_reduced(A)
    assert is_definite(A)


def test_max_definite_syc_guard():
    with pytest.raises(InputError):
        max_definite_syc(5)
