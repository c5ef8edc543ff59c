"""Statistical harness: Wilson intervals, the Fool/Limit estimators on
clean and attacked words, locality auditing, and config handling."""

import json
import random
from fractions import Fraction

import pytest

from crldc.adversaries import strawman_key_substitution, worst_block_hamming
from crldc.bits import BitString
from crldc.errors import ConfigInvalid
from crldc.hamming import compute_hamming_params, enc_h
from crldc.harness import (ExperimentConfig, audit_locality,
                           default_probe_indices, estimate_fool,
                           estimate_limit, param_worksheet, report_to_csv,
                           report_to_json, wilson_interval)
from crldc.sigscheme import HashModulusScheme

LAM = 64


@pytest.fixture(scope="module")
def ham():
    params = compute_hamming_params(LAM, 256, 64, LAM, Fraction(1, 4), 2 / 3)
    scheme = HashModulusScheme(LAM)
    rng = random.Random(0)
    x = BitString.random(params.k, rng)
    codeword, debug = enc_h(x, params, scheme, rng)
    return params, scheme, x, codeword, debug


class TestWilson:
    def test_reference_values(self):
        # classic textbook case at 95% (z = 1.959964): 8 successes of 10
        lo, hi = wilson_interval(8, 10, z=1.959963984540054)
        assert abs(lo - 0.4901625) < 1e-4
        assert abs(hi - 0.9433178) < 1e-4

    def test_contains_point_estimate_and_shrinks(self):
        lo1, hi1 = wilson_interval(80, 100)
        lo2, hi2 = wilson_interval(800, 1000)
        assert lo1 < 0.8 < hi1
        assert hi2 - lo2 < hi1 - lo1

    def test_edges(self):
        lo, hi = wilson_interval(0, 50)
        assert lo == 0.0 and hi > 0
        lo, hi = wilson_interval(50, 50)
        assert hi == 1.0 and lo < 1
        with pytest.raises(ConfigInvalid):
            wilson_interval(1, 0)

    def test_simulated_coverage(self):
        # 99% interval should cover the true p in nearly all repetitions
        rng = random.Random(1)
        p = 0.7
        covered = 0
        reps = 300
        for _ in range(reps):
            succ = sum(rng.random() < p for _ in range(60))
            lo, hi = wilson_interval(succ, 60)
            covered += lo <= p <= hi
        assert covered / reps > 0.97


class TestEstimators:
    def test_clean_word_not_fooled_not_limited(self, ham):
        params, scheme, x, C, _ = ham
        fool = estimate_fool(C, x, params, scheme, trials=25, seed=2)
        assert not fool.fooled
        assert all(s.wrong == 0 for s in fool.per_index)
        limit = estimate_limit(C, x, params, scheme, trials=25, seed=2)
        assert not limit.limited
        assert limit.good_count == params.k

    def test_worst_block_attack_not_limited(self, ham):
        params, scheme, x, C, _ = ham
        bad, rec = worst_block_hamming(C, params.rho, params.bl, seed=3,
                                       rho_in=params.rho_in)
        limit = estimate_limit(bad, x, params, scheme, trials=25, seed=3)
        assert limit.good_count >= params.delta * params.k
        assert not limit.limited
        # destroyed blocks are exactly the non-good ones
        all_blocks = set(range(1, params.d + 1))
        assert all_blocks - set(limit.good_blocks) == set(
            rec.info["destroyed_blocks"])

    def test_strawman_does_not_fool_robust_decoder(self, ham):
        params, scheme, x, C, debug = ham
        bad, _ = strawman_key_substitution(C, debug, params, scheme, seed=4)
        fool = estimate_fool(bad, x, params, scheme, trials=25, seed=4,
                             probe_indices=[1, 2, params.r])
        assert not fool.fooled
        assert all(s.wrong == 0 for s in fool.per_index)

    def test_probe_defaults(self, ham):
        params, _, _, _, _ = ham
        probes = default_probe_indices(params, seed=0)
        blocks = {(j - 1) * params.r + 1 for j in range(1, params.d + 1)}
        assert blocks <= set(probes)
        assert all(1 <= i <= params.k for i in probes)

    def test_replayable(self, ham):
        params, scheme, x, C, _ = ham
        a = estimate_fool(C, x, params, scheme, trials=10, seed=5)
        b = estimate_fool(C, x, params, scheme, trials=10, seed=5)
        assert a.to_dict() == b.to_dict()


class TestLocalityAudit:
    def test_clean_within_bound(self, ham):
        params, scheme, x, C, _ = ham
        rep = audit_locality(C, params, scheme, runs=20, seed=6)
        assert rep.within_bound
        assert rep.max_queries == (params.mu + 1) * params.bl


class TestConfigAndReports:
    def test_config_round_trip(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"code": "insdel", "k": 512, "seed": 9}))
        cfg = ExperimentConfig.from_json(path)
        assert cfg.code == "insdel" and cfg.k == 512 and cfg.seed == 9
        assert cfg.trials == 200  # default

    def test_config_rejects_unknown_keys_and_codes(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"code": "hamming", "bogus": 1}))
        with pytest.raises(ConfigInvalid):
            ExperimentConfig.from_json(path)
        path.write_text(json.dumps({"code": "turbo"}))
        with pytest.raises(ConfigInvalid):
            ExperimentConfig.from_json(path)

    def test_report_serialization(self, ham, tmp_path):
        params, scheme, x, C, _ = ham
        rep = estimate_fool(C, x, params, scheme, trials=5, seed=7,
                            probe_indices=[1, 2])
        jpath = tmp_path / "rep.json"
        cpath = tmp_path / "rep.csv"
        report_to_json(rep, jpath)
        report_to_csv(rep, cpath)
        loaded = json.loads(jpath.read_text())
        assert loaded["fooled"] is False
        assert "sk" not in jpath.read_text()
        lines = cpath.read_text().strip().splitlines()
        assert len(lines) == 3  # header + two probed indices

    def test_worksheet_exact_fractions(self, ham):
        params, _, _, _, _ = ham
        sheet = param_worksheet(params)
        assert sheet["rho_in"]["exact"].count("/") == 1
        assert sheet["k"] == params.k
