import math

import pytest

import plsim


def test_pareto_closed_forms():
    low = plsim.ParetoParams(1.04, 150)
    assert plsim.mean(low) == pytest.approx(3900.0)
    assert plsim.quantile(low, 0.5) == pytest.approx(292.11, abs=0.005)
    assert plsim.tail_fraction(low, 10000) == pytest.approx(0.01268, abs=5e-6)
    assert plsim.gini_from_alpha(1.12) == pytest.approx(0.80645, abs=1e-5)


def test_domain_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        plsim.ParetoParams(0.9, 150)
    with pytest.raises(ValueError):
        plsim.quantile(plsim.ParetoParams(1.5, 1), 1.0)


def test_population_and_drawing():
    pop = plsim.AccountPopulation([100.0, 200.0, 300.0, 400.0])
    schedule = plsim.PrizeSchedule(2, 1.0)
    assert plsim.expected_payout(pop, schedule) == 500.0
    assert plsim.worst_payout(pop, schedule, "random") == 700.0
    assert plsim.worst_payout(pop, schedule, "bracketed") == 600.0
    winners, payout = plsim.draw(pop, schedule, "bracketed", seed=3)
    assert len(set(winners)) == 2
    assert payout == sum(pop.balances[i] for i in winners)
    capped = plsim.apply_cap(plsim.AccountPopulation([100.0, 300.0, 900.0]), 500.0)
    assert capped.mean == 300.0


def test_generate_population_is_deterministic():
    params = plsim.ParetoParams(1.04, 150)
    a = plsim.generate_population(params, 1000, seed=5)
    b = plsim.generate_population(params, 1000, seed=5)
    assert a.balances == b.balances
    assert min(a.balances) >= 150


def test_risk_helpers():
    assert plsim.var_rank(10000, 0.05) == 9500
    assert plsim.var_approx(list(range(1, 1001)), 0.001) == 1000
    assert plsim.compare_percentage_higher([2, 3], [1, 4]) == 50.0
    assert plsim.relative_difference(2.044715, 1.864649) == pytest.approx(9.7, abs=0.05)
    assert plsim.std_dev([0.0, 2.0]) == pytest.approx(math.sqrt(2))


def test_small_experiments():
    config = plsim.ExperimentConfig()
    config.n_accounts = 1000
    config.draws_per_run = 50
    config.runs = 2
    config.schedules = [plsim.PrizeSchedule(10, 1.0)]
    result = plsim.run_bracketing(config)
    assert result["experiment"] == "bracketing"
    assert len(result["runs"]) == 2
    assert result == plsim.run_bracketing(config, threads=2)

    config.caps = [5000.0, 1000.0]
    config.var_levels = [0.05, 0.01]
    caps = plsim.run_caps(config)
    assert caps["monotonicity_violations"] == 0
    assert caps["drawings_checked"] == 100


def test_cpt():
    params = plsim.CptParams()
    assert plsim.value(params, -1.0) == pytest.approx(-2.25)
    assert plsim.weight_gain(params, 0.1) == pytest.approx(0.186302566377174, abs=1e-14)
    gain, loss, total = plsim.utility_dynamic(params, w=1.0, p=0.01, r=0.02, x=1000.0)
    assert gain > 0 > loss
    assert total == pytest.approx(gain + loss)
    assert plsim.CptParams(gamma=0.2).warnings()
