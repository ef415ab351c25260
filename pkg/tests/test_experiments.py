import json

import pytest

from localdegree.ekl import EKLResult, ekl_class
from localdegree.errors import SamplingExhaustedError
from localdegree.experiments import (
    Audit,
    SurveyConfig,
    census_staircase,
    check_1dim,
    check_2dim_1,
    check_iterates,
    check_powers,
    check_rank9,
    draw_map,
    worked_suite,
    random_map,
    realizing_map,
    suite_to_json,
    survey,
)
from localdegree.field import GF, QQ
from localdegree.gw import QuadraticForm, invariants
from localdegree.poly import PolyMap, PolyRing


def test_random_map_is_deterministic():
    cfg = SurveyConfig(GF(5), n=2, max_degree=3, seed=9)
    assert random_map(cfg, 3).map == random_map(cfg, 3).map
    assert draw_map(cfg, 3, 1) == draw_map(cfg, 3, 1)
    assert draw_map(cfg, 3, 1) != draw_map(cfg, 4, 1)


def test_regression_snapshot():
    cfg = SurveyConfig(GF(3), n=2, max_degree=3, seed=42)
    s = random_map(cfg, 0)
    assert str(s.map) == "(-x^3 - x*y - x, x*y^2 + y^3 - x^2 - x*y - x + y)"
    assert s.attempts == 1
    res = ekl_class(s.map)
    assert res.rank == 1


def test_linear_maps_have_rank_one():
    cfg = SurveyConfig(GF(7), n=2, max_degree=1, samples=20, seed=3, k_cap=4)
    rep = survey(cfg)
    assert rep.accepted == 20
    assert set(rep.classes) == {1}


def test_survey_is_deterministic_and_consistent():
    cfg = SurveyConfig(GF(3), n=2, max_degree=2, samples=25, seed=17, k_cap=10)
    a, b = survey(cfg), survey(cfg)
    assert a.to_json() == b.to_json()
    d = a.to_dict()
    assert sum(info["count"] for info in d["ranks"].values()) == a.accepted
    for N, info in d["ranks"].items():
        assert sum(h["count"] for h in info["histogram"]) == info["count"]
    assert a.audit.ok and a.audit.checked == a.accepted
    json.loads(a.to_json())


def test_rank_two_is_always_hyperbolic():
    rep = survey(SurveyConfig(GF(5), n=2, max_degree=3, samples=40, seed=2, target_rank=2, retries=400))
    assert rep.accepted == 40
    assert set(rep.classes[2]) == {"1H"}


def test_rank_four_over_f5_shows_both_discriminants():
    rep = survey(SurveyConfig(GF(5), n=2, max_degree=3, samples=120, seed=1, target_rank=4, retries=400))
    assert {"2H", "1H + ⟨1, 2⟩"} <= set(rep.classes[4])
    assert rep.min_witt_index[4] == 1


def test_rank_five_survey_small():
    rep = survey(SurveyConfig(GF(3), n=2, max_degree=3, samples=20, seed=4, target_rank=5,
                              min_degree=2, retries=5000))
    assert rep.accepted == 20
    assert set(rep.classes[5]) <= {"2H + ⟨1⟩", "2H + ⟨-1⟩"}
    assert set(rep.staircases) <= {"2", "3", "4"}


def test_config_validation():
    with pytest.raises(ValueError):
        SurveyConfig(QQ)
    with pytest.raises(ValueError):
        SurveyConfig(GF(3), samples=0)
    with pytest.raises(ValueError):
        SurveyConfig(GF(3), min_degree=4, max_degree=3)
    assert SurveyConfig(GF(3), target_rank=5).effective_k_cap == 6


def test_sampling_exhausted():
    cfg = SurveyConfig(GF(3), n=2, max_degree=2, min_degree=2, target_rank=3, retries=20)
    with pytest.raises(SamplingExhaustedError):
        random_map(cfg, 0)
    rep = survey(SurveyConfig(GF(3), n=2, max_degree=2, min_degree=2, samples=2, target_rank=3, retries=20))
    assert rep.rejections["exhausted"] == 2


def test_census_swaps_coordinates():
    x, y = PolyRing(QQ, 2).gens()
    f = PolyMap([x * y - y**3, y**2 + x**3])
    assert census_staircase(f).label == 4


@pytest.mark.parametrize("p", [3, 5, 7])
def test_realizing_maps(p):
    K = GF(p)
    for rank in range(1, 9):
        for disc in (1, K.nonresidue):
            f = realizing_map(K, rank, disc)
            if f is None:
                assert rank == 2 and K.square_class(disc) != K.square_class(K(-1))
                continue
            inv = invariants(ekl_class(f).form)
            assert (inv.rank, inv.disc) == (rank, K.square_class(disc))


def test_audit_flags_violations():
    x, y = PolyRing(GF(3), 2).gens()
    f = PolyMap([x**2, y])
    real = ekl_class(f)
    audit = Audit()
    audit.record(f, real)
    assert audit.ok and audit.by_rule["h_summand_checked"] == 1
    # <1, 1> is anisotropic over F_3
    fake = EKLResult(real.algebra, real.socle, real.functional, real.gram,
                     QuadraticForm(GF(3), (1, 1)), real.transform)
    audit.record(f, fake)
    assert not audit.ok
    assert audit.by_rule["h_summand"] == 1
    assert audit.by_rule["elt"] == 2


def test_worked_example_checks():
    for check in (check_2dim_1, check_1dim, check_powers, check_rank9, check_iterates):
        result = check()
        assert result.passed, result.line()
        assert result.line().startswith("[PASS]")


def test_quick_suite_json():
    results = worked_suite(include_random=False)
    assert len(results) == 5 and all(r.passed for r in results)
    data = json.loads(suite_to_json(results))
    assert [d["passed"] for d in data] == [True] * 5
