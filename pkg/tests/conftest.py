# tests/conftest.py

from __future__ import annotations

import pytest

from app.config.settings import get_settings
from app.models.dfa import Dfa
from tests.helpers import T


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch):
    """Без файлового логу; налаштування перечитуються в кожному тесті."""
    monkeypatch.setenv("LOG_FILE", "")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


# -------------------------
# Фіксовані автомати (стани 0-базові, нумерація вже канонічна)
# -------------------------


@pytest.fixture
def sigma_star_a() -> Dfa:
    """Σ*a: a — константа в стан 1, b — константа в стан 0."""
    return Dfa(state_count=2, alphabet=("a", "b"), delta=((1, 0), (1, 0)), start=0, finals={1})


@pytest.fixture
def a_sigma_star() -> Dfa:
    """aΣ*: s=0, t=1 (приймальний стік), r=2 (мертвий стік)."""
    return Dfa(
        state_count=3,
        alphabet=("a", "b"),
        delta=((1, 2), (1, 1), (2, 2)),
        start=0,
        finals={1},
    )


@pytest.fixture
def a_sigma_star_b() -> Dfa:
    """aΣ*b: s=0, x=1 (остання не b), d=2 (мертвий), y=3 (остання b, приймальний)."""
    return Dfa(
        state_count=4,
        alphabet=("a", "b"),
        delta=((1, 2), (1, 3), (2, 2), (1, 3)),
        start=0,
        finals={3},
    )


@pytest.fixture
def parity() -> Dfa:
    """Парна кількість a: a — транспозиція станів."""
    return Dfa(state_count=2, alphabet=("a",), delta=((1,), (0,)), start=0, finals={0})


@pytest.fixture
def one_state() -> Dfa:
    return Dfa(state_count=1, alphabet=("a", "b"), delta=((0, 0),), start=0, finals={0})


@pytest.fixture
def fig_pair():
    """f = (2,3,3), g = (1,1,2): обидва непереставні, fg переставне."""
    return T(2, 3, 3), T(1, 1, 2)

