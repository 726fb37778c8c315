# tests/test_classify.py

from __future__ import annotations

import numpy as np
import pytest

from app.models.dfa import Dfa
from app.models.errors import NotReducedError
from app.services.automata import minimize, transition_semigroup
from app.services.classify import (
    SKIPPED_CAPPED,
    admits_pd,
    admits_pg,
    classify_report,
    definite_degree,
    is_definite,
    is_generalized_definite,
    satisfies_sink_criterion,
    two_fixed_point_word,
)
from app.services.generator import GeneratorConfig, generate_random_dfa
from app.services.semigroup import satisfies_definite_identity, satisfies_gendef_identity
from app.services.transformations import is_nonpermutational
from tests.helpers import random_dfa


# -------------------------
# patterns
# -------------------------


def test_admits_pd_examples(one_state, a_sigma_star, sigma_star_a):
    assert admits_pd(one_state) is None
    assert admits_pd(sigma_star_a) is None
    w = admits_pd(a_sigma_star)
    assert (w.p, w.q, w.x) == (1, 2, ("a",))
    assert w.replays(a_sigma_star)


def test_admits_pd_requires_reduced():
    A = Dfa(state_count=2, alphabet=("a",), delta=((1,), (1,)), finals={0, 1})
    with pytest.raises(NotReducedError):
        admits_pd(A)
    with pytest.raises(NotReducedError):
        admits_pg(A)


def test_admits_pg(parity, a_sigma_star, a_sigma_star_b):
    w = admits_pg(parity)
    assert w is not None and w.y is not None
    assert w.replays(parity)
    # стоки aΣ* взаємно недосяжні
    assert admits_pg(a_sigma_star) is None
    assert admits_pg(a_sigma_star_b) is None


# -------------------------
# definite / generalized definite
# -------------------------


def test_verdicts_on_fixtures(one_state, sigma_star_a, a_sigma_star, a_sigma_star_b, parity):
    assert is_definite(one_state) and is_generalized_definite(one_state)
    assert is_definite(sigma_star_a) and is_generalized_definite(sigma_star_a)
    assert not is_definite(a_sigma_star) and is_generalized_definite(a_sigma_star)
    assert not is_definite(a_sigma_star_b) and is_generalized_definite(a_sigma_star_b)
    assert not is_definite(parity) and not is_generalized_definite(parity)


def test_parity_rejected_at_step_five(parity):
    verdict = is_generalized_definite(parity)
    assert verdict.step == 5
    assert verdict.witness.replays(verdict.automaton)
    assert verdict.witness.x == ("a", "a")
    assert verdict.witness.y == ("a",)


def test_nontrivial_non_sink_rejected_at_step_three():
    # (ab)* у префіксі: цикл {0, 1} виходить у стік {2}
    A = Dfa(
        state_count=3,
        alphabet=("a", "b"),
        delta=((1, 2), (2, 0), (2, 2)),
        start=0,
        finals={0},
    )
    verdict = is_generalized_definite(A)
    assert not verdict
    assert verdict.step == 3
    w = verdict.witness
    M = verdict.automaton
    assert w.replays(M)
    assert w.y is not None


def test_sinks_only_square_agrees():
    rng = np.random.default_rng(17)
    for _ in range(80):
        A = random_dfa(rng, int(rng.integers(1, 8)))
        assert bool(is_generalized_definite(A, sinks_only=True)) == bool(is_generalized_definite(A, sinks_only=False))


def test_gendef_positive_generator_is_accepted():
    for seed in range(30):
        cfg = GeneratorConfig(seed=seed, state_count=int(2 + seed % 12), mode="gendef-positive")
        assert is_generalized_definite(generate_random_dfa(cfg))


# -------------------------
# supplementary characterizations
# -------------------------


def test_sink_criterion(parity, a_sigma_star_b, sigma_star_a):
    assert not satisfies_sink_criterion(parity)
    assert satisfies_sink_criterion(a_sigma_star_b)
    assert satisfies_sink_criterion(sigma_star_a)


def test_definite_degree(one_state, sigma_star_a, parity):
    assert definite_degree(one_state) == 0
    assert definite_degree(sigma_star_a) == 1
    assert definite_degree(parity) is None
    # Σ*ab: членство визначають дві останні літери
    A = Dfa(
        state_count=3,
        alphabet=("a", "b"),
        delta=((1, 0), (1, 2), (1, 0)),
        start=0,
        finals={2},
    )
    assert definite_degree(A) == 2


def test_two_fixed_point_word(a_sigma_star, sigma_star_a):
    w = two_fixed_point_word(a_sigma_star, 9)
    assert w is not None and w.replays(a_sigma_star)
    assert two_fixed_point_word(sigma_star_a, 4) is None


def test_bruteforce_word_agrees_with_pd():
    rng = np.random.default_rng(23)
    for _ in range(80):
        M, _ = minimize(random_dfa(rng, int(rng.integers(1, 6))))
        found = two_fixed_point_word(M, M.state_count ** 2)
        assert (found is None) == (admits_pd(M) is None)


# -------------------------
# report
# -------------------------


def test_report_fixture(a_sigma_star_b):
    report = classify_report(a_sigma_star_b, oracle=True, bruteforce=True)
    assert report.minimized_size == 4
    assert not report.definite
    assert report.generalized_definite
    assert report.pd_witness.p == 2 and report.pd_witness.q == 3
    assert report.syntactic_complexity == 4
    assert report.definite_degree is None
    assert report.oracle.definite_agrees and report.oracle.gendef_agrees
    assert report.oracle.sink_criterion is True
    assert report.bruteforce_pd_word is not None


def test_report_capped_oracle():
    A = Dfa(
        state_count=4,
        alphabet=("a", "b"),
        delta=((1, 1), (2, 0), (3, 2), (0, 3)),
        finals={0},
    )
    report = classify_report(A, oracle=True, cap=5)
    assert report.syntactic_complexity is None
    assert report.syntactic_complexity_capped
    assert report.oracle.definite_identity == SKIPPED_CAPPED
    assert report.oracle.definite_agrees is None


def _check_agreement(A: Dfa) -> None:
    report = classify_report(A, oracle=True)
    assert report.oracle.definite_agrees, A
    assert report.oracle.gendef_agrees, A
    assert report.oracle.sink_criterion == report.generalized_definite, A
    if report.definite:
        assert report.generalized_definite
    else:
        assert report.pd_witness is not None
    if not report.generalized_definite:
        assert report.pg_witness is not None


def test_oracles_agree_on_small_sample():
    rng = np.random.default_rng(2)
    for _ in range(60):
        _check_agreement(random_dfa(rng, int(rng.integers(1, 5))))


@pytest.mark.slow
def test_oracles_agree_on_random_automata():
    for seed in range(500):
        cfg = GeneratorConfig(seed=seed, state_count=1 + seed % 6, alphabet_size=2 + seed // 6 % 2)
        _check_agreement(generate_random_dfa(cfg))


@pytest.mark.slow
def test_oracles_agree_on_generated_gendef_automata():
    for seed in range(250):
        cfg = GeneratorConfig(seed=seed, state_count=2 + seed % 9, mode="gendef-positive")
        _check_agreement(generate_random_dfa(cfg))


def test_identity_oracles_on_minimal_definite():
    rng = np.random.default_rng(31)
    for _ in range(60):
        M, _ = minimize(random_dfa(rng, int(rng.integers(1, 5))))
        S = transition_semigroup(M)
        assert bool(satisfies_definite_identity(S)) == all(is_nonpermutational(f) for f in S)
        assert bool(satisfies_gendef_identity(S)) == bool(is_generalized_definite(M))
