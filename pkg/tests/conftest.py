from __future__ import annotations

import pytest

from votingpower import engine, scenarios


@pytest.fixture(scope="session")
def eu27_result():
    return engine.compute_all(scenarios.scenario_game(scenarios.builtin_scenario("eu27")))


@pytest.fixture(scope="session")
def eu33_result():
    return engine.compute_all(scenarios.scenario_game(scenarios.builtin_scenario("eu33")))


@pytest.fixture(scope="session")
def eu36_result():
    return engine.compute_all(scenarios.scenario_game(scenarios.builtin_scenario("eu36")))


@pytest.fixture(scope="session")
def v4_result():
    return scenarios.bloc_power(scenarios.builtin_scenario("eu27"), "v4")


@pytest.fixture(scope="session")
def nordic_result():
    return scenarios.bloc_power(scenarios.builtin_scenario("eu27"), "nordic")
