import math

import numpy as np
import pytest

from privdeg.links import LinkKind
from privdeg.noise import TwoSideHermite, hermite_budget_intensity
from privdeg.simulate import (CoverageReport, Scenario, default_pairs,
                              parse_scenario_file, qq_csv, qq_export,
                              report_csv, run_scenario, scenario_grid,
                              truth_vector)

LAM = hermite_budget_intensity(2.0)
HERM_CASES = [  # ordered by noise variance
    TwoSideHermite(0.01, (LAM - 0.01) / 4),
    TwoSideHermite(LAM - 0.01, 0.025),
    TwoSideHermite(4 * LAM / 5, LAM / 5),
]


def test_truth_vector_reference():
    assert truth_vector(4, 0.0) == pytest.approx([0, 0, 0, 0])
    t = truth_vector(100, -math.log(math.log(100)))
    assert t[-1] == pytest.approx(-1.52718, abs=5e-6)
    up = truth_vector(10, 1.5)
    assert np.all(np.diff(up) > 0)


def test_default_pairs():
    assert default_pairs(100) == ((1, 2), (50, 51), (99, 100))


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(LinkKind.LOG, 10, 0.5, None)      # log needs L < 0
    with pytest.raises(ValueError):
        Scenario(LinkKind.LOGIT, 10, 0.0, None, pairs=((1, 11),))
    with pytest.raises(ValueError):
        Scenario(LinkKind.LOGIT, 10, 0.0, None, replicates=0)


def test_exact_override_centers_intervals_at_truth():
    s = Scenario(LinkKind.LOGIT, 12, 0.8, TwoSideHermite(1.0, 0.5),
                 replicates=1, seed=5, exact=True)
    rep = run_scenario(s)
    assert rep.nonexistence_percent == 0.0
    for pr, summary in rep.per_pair.items():
        assert summary.coverage_percent == 100.0
        assert abs(rep.xi[pr][0]) < 1e-6


def test_report_is_worker_count_invariant():
    s = Scenario(LinkKind.LOGIT, 30, 0.4, TwoSideHermite(1.0, 0.5),
                 replicates=48, seed=123)
    reports = [run_scenario(s, workers=w) for w in (1, 3)]
    a, b = reports
    assert a.nonexistence_percent == b.nonexistence_percent
    for pr in s.pairs:
        assert a.per_pair[pr] == b.per_pair[pr]
        assert np.array_equal(a.xi[pr], b.xi[pr])
    assert report_csv([a]) == report_csv([b])


def test_qq_export_sorted_and_guarded():
    s = Scenario(LinkKind.LOGIT, 20, 0.0, None, replicates=40, seed=9)
    rep = run_scenario(s)
    pts = qq_export(rep, (1, 2))
    theo = [t for t, _ in pts]
    emp = [e for _, e in pts]
    assert theo == sorted(theo)
    assert emp == sorted(emp)
    with pytest.raises(LookupError):
        qq_export(rep, (3, 4))
    text = qq_csv(rep, (1, 2))
    assert text.startswith("theoretical,empirical\n")
    assert len(text.strip().splitlines()) == len(pts) + 1


def test_coverage_sanity_no_noise():
    s = Scenario(LinkKind.LOGIT, 200, 0.0, None, replicates=2000, seed=31)
    rep = run_scenario(s)
    assert rep.nonexistence_percent == 0.0
    for pr in s.pairs:
        assert 92.0 <= rep.per_pair[pr].coverage_percent <= 98.0


def test_nonexistence_monotone_in_noise_variance():
    # heavier noise never lowers the nonexistence rate (1 pp Monte Carlo slack)
    L = -math.log(math.log(100))
    rates = []
    for mech in HERM_CASES:
        s = Scenario(LinkKind.LOG, 100, L, mech, replicates=600, seed=77)
        rates.append(run_scenario(s).nonexistence_percent)
    assert rates[1] >= rates[0] - 1.0
    assert rates[2] >= rates[1] - 1.0


def test_degree_deviation_trend():
    # max_i |dtilde_i - E d_i| / sqrt(n log n) does not grow with n for a
    # fixed sub-Gamma noise mechanism (99th percentile over replicates)
    from privdeg.links import degrees, expected_degrees, sample_graph
    from privdeg.noise import sample
    mech = HERM_CASES[2]
    pcts = []
    for n in (50, 100, 200):
        rng = np.random.default_rng(4000 + n)
        truth = truth_vector(n, 1.0)
        want = expected_degrees(LinkKind.LOGIT, truth)
        stats_ = []
        for _ in range(400):
            d = degrees(sample_graph(LinkKind.LOGIT, truth, rng)).astype(float)
            d = d + np.asarray(sample(mech, rng, size=n))
            stats_.append(np.max(np.abs(d - want)) / math.sqrt(n * math.log(n)))
        pcts.append(float(np.quantile(stats_, 0.99)))
    assert pcts[1] <= pcts[0] and pcts[2] <= pcts[1]


def test_scenario_file_parsing_and_grid():
    text = """
    # cell grid
    link = logit
    n = 30
    L = 0.0, 0.5
    noise = herm2:a1=1.0,a2=0.5; none
    replicates = 8
    seed = 4
    pairs = 1,2; 29,30
    workers = 2
    """
    cfg = parse_scenario_file(text)
    cells = scenario_grid(cfg)
    assert len(cells) == 4
    assert cells[0].noise == TwoSideHermite(1.0, 0.5)
    assert cells[1].L == 0.5
    assert cells[2].noise is None
    assert all(c.pairs == ((1, 2), (29, 30)) for c in cells)
    reports = [run_scenario(c) for c in cells]
    csv = report_csv(reports)
    lines = csv.strip().splitlines()
    assert lines[0].startswith("link,n,replicates,noise,L,pair_i,pair_j")
    assert len(lines) == 1 + 4 * 2  # cells x pairs


def test_scenario_file_errors():
    from privdeg.netio import ParseError
    with pytest.raises(ParseError):
        parse_scenario_file("n = 10\n")            # missing link
    with pytest.raises(ParseError):
        parse_scenario_file("link = logit\nn = 10\npairs = 1-2\n")
    with pytest.raises(ValueError):
        parse_scenario_file("link = huh\nn = 10\n")
