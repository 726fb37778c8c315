# tests/test_generator.py

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from app.services.automata import minimize, reachable_part
from app.services.bench import bench_gendef
from app.services.classify import is_generalized_definite
from app.services.generator import GeneratorConfig, alphabet_names, generate_random_dfa


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(1, 20))
@settings(max_examples=50, deadline=None)
def test_same_seed_same_automaton(seed, n):
    cfg = GeneratorConfig(seed=seed, state_count=n)
    assert generate_random_dfa(cfg) == generate_random_dfa(cfg)


def test_different_seeds_differ():
    first = generate_random_dfa(GeneratorConfig(seed=1, state_count=12, alphabet_size=3))
    second = generate_random_dfa(GeneratorConfig(seed=2, state_count=12, alphabet_size=3))
    assert first != second


@given(st.integers(min_value=0, max_value=10_000), st.integers(2, 16), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_gendef_positive_mode(seed, n, k):
    cfg = GeneratorConfig(seed=seed, state_count=n, alphabet_size=k, mode="gendef-positive")
    A = generate_random_dfa(cfg)
    assert A.state_count == n
    prefix = n // 2
    for q in range(prefix):
        assert all(target > q for target in A.delta[q])
    assert is_generalized_definite(A)


def test_config_validation():
    with pytest.raises(ValidationError):
        GeneratorConfig(seed=-1, state_count=3)
    with pytest.raises(ValidationError):
        GeneratorConfig(state_count=0)
    with pytest.raises(ValidationError):
        GeneratorConfig(state_count=3, mode="sparse")
    with pytest.raises(ValidationError):
        GeneratorConfig(state_count=3, final_density=1.0)


def test_alphabet_names():
    assert alphabet_names(3) == ("a", "b", "c")
    assert alphabet_names(30)[-1] == "s30"


@pytest.mark.parametrize("n", [2, 7, 50, 301])
def test_gendef_positive_prefix_is_reachable(n):
    A = generate_random_dfa(GeneratorConfig(seed=3, state_count=n, mode="gendef-positive"))
    R, _ = reachable_part(A)
    assert R.state_count >= n // 2 + 1
    assert [A.delta[q][0] for q in range(n // 2)] == list(range(1, n // 2 + 1))


def test_gendef_positive_minimal_size_grows_with_n():
    minimal = {}
    for n in (50, 400):
        M, _ = minimize(generate_random_dfa(GeneratorConfig(seed=0, state_count=n, mode="gendef-positive")))
        minimal[n] = M.state_count
    assert minimal[400] > minimal[50]
    assert minimal[400] >= 400 // 4


def test_bench_table():
    table = bench_gendef([20, 40], repeats=1)
    assert list(table.columns) == ["n", "minimal", "ms", "ms_sinks_only", "ratio", "ratio_sinks_only"]
    assert table["n"].tolist() == [20, 40]
    assert (table["minimal"] > 2).all()
    assert (table["ms"] > 0).all()
    assert (table["ms_sinks_only"] > 0).all()
    assert math.isnan(table["ratio"].iloc[0])
    assert math.isnan(table["ratio_sinks_only"].iloc[0])


@pytest.mark.slow
def test_bench_scales_quadratically():
    sizes = [500, 1000, 2000, 4000]
    table = bench_gendef(sizes, repeats=3)
    assert table["minimal"].is_monotonic_increasing
    assert table["minimal"].iloc[-1] >= 1000
    assert (table["ratio_sinks_only"].iloc[1:] <= 5.0).all()
    assert table["ms_sinks_only"].iloc[-1] < 10_000.0
