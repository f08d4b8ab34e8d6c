import math
from pathlib import Path

import pytest

import cbm

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def component():
    return cbm.ComponentParams("c1", h1=0.00125, d=1.5, alpha=0.7, beta=0.3,
                               y_alpha=0.4, y_beta=1.0, w_mu=1.2, w_sigma=0.2)


def test_version():
    assert cbm.__version__


def test_special_functions():
    assert cbm.regularized_lower_gamma(7.5, 9.0) == pytest.approx(0.73733443932767779483, rel=1e-10)
    assert cbm.std_normal_cdf(1.5) == pytest.approx(0.933192798731141934, rel=1e-12)


def test_event_probabilities_sum_to_one():
    p = cbm.event_probabilities(component(), 2.5e-5, 0.05, 0.0003)
    assert p.safe + p.degraded + p.failed == pytest.approx(1.0, abs=1e-12)


def test_system_reliability_and_cost():
    system = cbm.SystemModel([component(), component()], shock_rate=2.5e-5)
    assert cbm.series_survival(system, 0.0, [0.00125, 0.00125]) == 1.0
    f1 = cbm.failure_time_cdf(system, 0.05)
    f2 = cbm.detection_time_cdf(system, 0.05, [0.0003, 0.0003])
    assert 0.0 < f1 <= f2 <= 1.0
    b = cbm.cost_rate(system, cbm.Policy(0.05, [0.0003, 0.0003]), cbm.CostParams(1.0, 20000.0, 100.0))
    assert b.e_k == pytest.approx(0.05 * b.e_ni, rel=1e-12)
    assert math.isfinite(b.cr) and b.cr > 0


def test_simulation_and_bad_input():
    system = cbm.SystemModel([component()], shock_rate=2.5e-5)
    est = cbm.estimate_cost_rate(system, cbm.Policy(0.05, [0.0]), cbm.CostParams(1.0, 0.0, 0.0),
                                 cbm.SimulationConfig(replications=200, seed=3))
    assert est.mean_inspections == 1.0
    total = est.preventive_fraction + est.hard_failure_fraction + est.soft_failure_fraction
    assert total == pytest.approx(1.0, abs=1e-12)
    assert est.mean_cycle_length == pytest.approx(0.05)
    with pytest.raises(ValueError):
        cbm.cost_rate(system, cbm.Policy(-1.0, [0.0]), cbm.CostParams(1.0, 1.0, 1.0))


def test_load_config():
    system, costs, policy = cbm.load_config(str(CONFIGS / "table2.json"))
    assert len(system.components) == 4
    assert costs.c_rho == 20000.0
    assert policy.tau == pytest.approx(44.7129)
