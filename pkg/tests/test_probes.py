import json
import random

import pytest

from planelift.config import (bundled_config, circuits,
                              config_of_realisation, grid_config, qs_config)
from planelift.lifting import classify_lift
from planelift.probes import (MembershipReport, ProbeReport, SampleError,
                              SampleSpec, membership, probe_decomposition,
                              probe_tfae_grid, probe_tfae_qs, run_probe,
                              sample, sample_collinear, sample_grid,
                              sample_quadset)


class ConstantRandom(random.Random):
    """Degenerate generator: every randint call returns the same value,
    so every geometric draw collapses and rejection sampling must give
    up."""

    def randint(self, a, b):
        return b


def test_sample_is_deterministic():
    for spec in (SampleSpec("quadset", seed=5),
                 SampleSpec("grid", seed=5, rows=3, cols=3),
                 SampleSpec("collinear", seed=5, n=7),
                 SampleSpec("forest", seed=5,
                            config=bundled_config("forest_path10"))):
        assert sample(spec) == sample(spec)
    assert sample(SampleSpec("quadset", seed=1)) != \
        sample(SampleSpec("quadset", seed=2))


def test_sample_quadset_matches_config():
    r = sample(SampleSpec("quadset", seed=3))
    assert r.n == 6
    found = config_of_realisation(r)
    assert set(found.lines) == set(qs_config().lines)
    rep = membership(r, circuits(qs_config()))
    assert rep.realises
    assert rep.in_circuit_variety
    assert not rep.in_v0
    assert rep.violated_circuit is None
    assert rep.violated_independence is None


def test_sample_grid_matches_config():
    r = sample(SampleSpec("grid", seed=3))
    assert r.n == 12
    found = config_of_realisation(r)
    assert set(found.lines) == set(grid_config(3, 4).lines)
    r = sample(SampleSpec("grid", seed=4, rows=3, cols=3))
    found = config_of_realisation(r)
    assert set(found.lines) == set(grid_config(3, 3).lines)


def test_sample_collinear_lands_in_v0():
    r = sample(SampleSpec("collinear", seed=9, n=6))
    rep = membership(r, circuits(qs_config()))
    assert rep.in_v0
    assert rep.in_circuit_variety
    assert not rep.realises
    assert rep.violated_independence == (1, 2, 4)


def test_sample_forest_realises():
    c = bundled_config("forest_path10")
    r = sample(SampleSpec("forest", seed=2, config=c))
    assert classify_lift(c, r) == "realising"


def test_sample_errors():
    with pytest.raises(ValueError):
        sample(SampleSpec("forest", seed=1))
    with pytest.raises(ValueError):
        sample(SampleSpec("hexagon"))


def test_samplers_give_up_on_degenerate_randomness():
    with pytest.raises(SampleError):
        sample_quadset(ConstantRandom(), bound=3)
    with pytest.raises(SampleError):
        sample_grid(ConstantRandom(), bound=3)
    with pytest.raises(SampleError):
        sample_collinear(ConstantRandom(), 4, bound=3)


def test_membership_detects_swapped_points():
    r = sample(SampleSpec("quadset", seed=7))
    cols = r.columns()
    cols[0], cols[3] = cols[3], cols[0]
    from planelift.config import Realisation
    swapped = Realisation.from_columns(cols)
    rep = membership(swapped, circuits(qs_config()))
    assert not rep.in_circuit_variety
    assert not rep.realises
    assert rep.violated_circuit == (1, 2, 3)


def test_membership_size_mismatch():
    r = sample(SampleSpec("collinear", seed=1, n=5))
    with pytest.raises(ValueError):
        membership(r, circuits(qs_config()))


def test_membership_report_implications():
    # spot check the logical shape on a batch of assorted samples
    m = circuits(qs_config())
    for seed in range(6):
        for kind, kwargs in (("quadset", {}), ("collinear", {"n": 6})):
            r = sample(SampleSpec(kind, seed=seed, **kwargs))
            rep = membership(r, m)
            if rep.realises:
                assert rep.in_circuit_variety
            if rep.in_v0:
                assert rep.in_circuit_variety


def test_probe_report_bookkeeping():
    rep = ProbeReport("demo", 2)
    assert rep.check(True, "fine")
    assert not rep.check(False, "broken", "detail")
    rep.bump("hits")
    rep.bump("hits", 2)
    assert rep.passed == 1 and rep.failed == 1
    assert rep.counts == {"hits": 3}
    assert rep.witnesses == ["broken: detail"]
    d = rep.to_dict()
    assert json.loads(json.dumps(d)) == d
    assert d["suite"] == "demo"
    for _ in range(30):
        rep.check(False, "again")
    assert len(rep.witnesses) == 20


def test_probe_tfae_qs_small():
    rep = probe_tfae_qs(3, 0)
    assert rep.failed == 0
    assert rep.passed == 9
    assert rep.counts == {"qs-values-checked": 324,
                          "negative-rank-4": 3,
                          "negative-nonzero-witness": 3,
                          "negative-trials": 3}


def test_probe_tfae_grid_small():
    rep = probe_tfae_grid(1, 0, minors_on_first_trial=False)
    assert rep.failed == 0
    assert rep.passed == 3
    assert rep.counts == {"grid-values-checked": 212,
                          "negative-rank-10": 1,
                          "negative-nonzero-witness": 1,
                          "negative-trials": 1}
    assert "ten-minors-enumerated" not in rep.counts


def test_probe_decomposition_small():
    rep = probe_decomposition("qs", 2, 0)
    assert rep.failed == 0
    assert rep.passed == 12
    assert rep.counts["realisation-samples"] == 2
    assert rep.counts["scaled-lift-samples"] == 2
    assert rep.counts["nonmember-nonzero-witness"] == 2
    with pytest.raises(ValueError):
        probe_decomposition("fano", 1, 0)


def test_probe_decomposition_grid_small():
    rep = probe_decomposition("grid34", 1, 0)
    assert rep.failed == 0
    assert rep.counts["nonmember-nonzero-witness"] == 1


def test_run_probe_dispatch():
    rep = run_probe("tfae-qs", 1, 0)
    assert rep.suite == "tfae-qs"
    assert rep.failed == 0
    rep = run_probe("decomp-qs", 1, 0)
    assert rep.suite == "decomp-qs"
    assert rep.failed == 0
    with pytest.raises(ValueError):
        run_probe("tfae-heptad", 1, 0)


def test_membership_report_is_plain_data():
    rep = MembershipReport(True, False, True)
    assert rep.violated_circuit is None
    assert rep.violated_independence is None
