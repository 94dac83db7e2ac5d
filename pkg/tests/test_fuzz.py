import pytest

from realchip import errors, fuzz
from realchip.builders import example1
from realchip.config import Budget


def test_trial_seed():
    assert fuzz.trial_seed(0, 7) == 7
    assert fuzz.trial_seed(2, 5) == 2_000_005


def test_small_run_passes():
    names = ["gsa_constraints", "parity", "real_witness", "reduce_class_invariant"]
    report = fuzz.run_fuzz(seed=3, trials=5, max_vertices=6, max_edges=8, properties=names)
    assert report.ok
    assert report.passed == dict.fromkeys(names, 5)
    data = report.as_dict()
    assert data["ok"] is True
    assert data["failures"] == []
    assert data["trials"] == 5


def test_m_graph_properties():
    report = fuzz.run_fuzz(seed=1, trials=3, max_vertices=6, max_edges=8, properties=["totally_real", "g12"])
    assert report.ok
    assert sum(report.passed.values()) + sum(report.skipped.values()) == 6


def test_tiny_budget_skips():
    report = fuzz.run_fuzz(seed=0, trials=2, max_vertices=5, max_edges=7, properties=["real_rank"], budget=Budget(1))
    assert report.ok
    assert report.skipped.get("real_rank", 0) + report.passed.get("real_rank", 0) == 2


def test_unknown_property():
    with pytest.raises(errors.InvalidParameterError):
        fuzz.run_fuzz(trials=1, properties=["nope"])


def test_parallel_matches_serial():
    serial = fuzz.run_fuzz(seed=5, trials=4, max_vertices=5, max_edges=6, properties=["gsa_constraints"])
    parallel = fuzz.run_fuzz(seed=5, trials=4, max_vertices=5, max_edges=6, properties=["gsa_constraints"], jobs=2)
    assert serial.as_dict() == parallel.as_dict()


def _has_edges(G, rng, budget):
    return "graph has edges" if G.edges else None


def test_shrink_deletes_orbits():
    prop = fuzz.Property("has_edges", "general", _has_edges)
    G = example1(4, 3, 0)
    shrunk, message = fuzz.shrink(prop, G, 0, Budget())
    assert message == "graph has edges"
    assert shrunk.edges
    assert len(shrunk.edges) < len(G.edges)
    # every single orbit deletion either disconnects the graph or removes the last edges
    for candidate in fuzz._orbit_deletions(shrunk):
        assert not candidate.edges


def test_shrink_needs_a_failure():
    prop = fuzz.Property("never", "general", lambda G, rng, budget: None)
    with pytest.raises(ValueError):
        fuzz.shrink(prop, example1(1, 2, 0), 0, Budget())


def test_domain_errors_are_violations():
    def raises(G, rng, budget):
        raise errors.NotRealError("boom")

    prop = fuzz.Property("raises", "general", raises)
    assert fuzz._evaluate(prop, example1(1, 2, 0), 0, Budget()) == "NotRealError: boom"


def test_structural_and_metric_properties():
    names = ["subdivision", "edge_split", "metric_refinement"]
    report = fuzz.run_fuzz(seed=4, trials=6, max_vertices=6, max_edges=8, properties=names)
    assert report.ok
    assert all(report.passed.get(name, 0) + report.skipped.get(name, 0) == 6 for name in names)
