import itertools
from dataclasses import replace

import pytest

from fuzzymodal.checks import SUITES, CheckConfig, CheckRow, _case, _expect, run_checks
from fuzzymodal.core import fol, modal
from fuzzymodal.generators import (
    ModelParams,
    case_rng,
    fol_pool,
    modal_corpus,
    nonexpansive_functions,
    random_model,
)
from fuzzymodal.metrics import depth_distance

SMALL = CheckConfig(models=4, functions=4, ef_models=3, formulas=3, chain_depth=2)


class TestGenerators:
    def test_models_are_deterministic(self):
        a = random_model(case_rng(1, "m", 0))
        b = random_model(case_rng(1, "m", 0))
        assert a == b

    def test_model_bounds(self):
        params = ModelParams(states=4, atoms=2, density=0.5, denominator=12)
        for i in range(50):
            m = random_model(case_rng(3, i), params)
            assert 1 <= len(m.states) <= 4 and 1 <= len(m.atoms) <= 2
            assert all(12 % v.denominator == 0 for v in m.values())

    @pytest.mark.parametrize("kwargs", [dict(states=0), dict(atoms=9), dict(density=1.5), dict(denominator=0)])
    def test_params_are_validated(self, kwargs):
        with pytest.raises(ValueError):
            ModelParams(**kwargs)

    def test_modal_corpus_rank_bound(self):
        corpus = modal_corpus(case_rng(0, "c"), ["p", "q"], 200, 2)
        assert max(modal.rank(phi) for phi in corpus) == 2

    def test_fol_pool(self):
        pool = fol_pool(["p"], ["x"], 2)
        assert max(fol.qrank(phi) for phi in pool) == 2
        assert all(fol.free_vars(phi) <= {"x"} for phi in pool)
        assert pool == fol_pool(["p"], ["x"], 2)

    def test_functions_are_non_expansive(self):
        for i in range(20):
            rng = case_rng(5, i)
            m = random_model(rng)
            for n in range(3):
                d = depth_distance(m, n)
                for _, f in nonexpansive_functions(rng, m, d, n, 8):
                    for a, b in itertools.combinations(m.states, 2):
                        assert abs(f[a] - f[b]) <= d[a, b]


class TestHarness:
    @pytest.mark.parametrize("suite", list(SUITES))
    def test_suite_passes(self, suite):
        rows = list(run_checks(SMALL, [suite]))
        assert rows and all(r.passed for r in rows), [str(r) for r in rows if not r.passed]

    def test_row_format(self):
        assert str(CheckRow("zero", "m001", True, "ok")) == "CHECK zero m001 PASS ok"
        assert str(CheckRow("zero", "m001", False)) == "CHECK zero m001 FAIL"

    def test_failures_become_rows(self):
        def broken():
            _expect(False, "gap 1/2")
            return ""

        assert str(_case("demo", "c1", broken)) == "CHECK demo c1 FAIL gap 1/2"

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="unknown suite"):
            list(run_checks(SMALL, ["nope"]))

    def test_rows_do_not_depend_on_suite_order(self):
        alone = [str(r) for r in run_checks(SMALL, ["translation"])]
        mixed = [str(r) for r in run_checks(SMALL, ["zero", "translation"]) if r.suite == "translation"]
        assert alone == mixed

    def test_seed_changes_cases(self):
        a = [str(r) for r in run_checks(SMALL, ["coincidence"])]
        b = [str(r) for r in run_checks(replace(SMALL, seed=7), ["coincidence"])]
        assert a != b
