"""Connectivity predictors and the verification harness."""

import json
import random

import pytest

from fsglab.graphs import (
    MultiplicityGraph,
    SimpleGraph,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from fsglab.predictors import (
    PreconditionError,
    Verdict,
    double_multiplicity_bridge_probe,
    predict_multgraph_vs_star,
    predict_star_vs_multgraph,
    small_support_connectivity,
    verdicts_to_jsonl,
    verify_family,
)
from fsglab.statespace import build_components
from fsglab import families


def star_mults(k, leaves):
    return MultiplicityGraph(star_graph(1 + len(leaves)), (k,) + tuple(leaves))


# -- star positions, multiplicity labels ----------------------------------------

def test_star_vs_multgraph_examples():
    c4 = cycle_graph(4)
    assert not predict_star_vs_multgraph(MultiplicityGraph(c4, (1, 1, 1, 1)))
    assert predict_star_vs_multgraph(MultiplicityGraph(c4, (2, 1, 1, 1)))
    p3 = path_graph(3)
    assert not predict_star_vs_multgraph(MultiplicityGraph(p3, (1, 1, 1)))
    assert predict_star_vs_multgraph(MultiplicityGraph(p3, (1, 2, 1)))
    assert predict_star_vs_multgraph(MultiplicityGraph(complete_graph(4), (1, 1, 1, 1)))


def test_star_vs_multgraph_requires_connected():
    g = SimpleGraph(3, [(0, 1)])
    with pytest.raises(PreconditionError):
        predict_star_vs_multgraph(MultiplicityGraph(g, (1, 1, 1)))


def test_star_vs_multgraph_oracle_agreement_small():
    for x in families.multiplicity_graphs(4, 5, connected=True):
        rep = build_components(star_graph(x.total), x, variant="fsm")
        assert predict_star_vs_multgraph(x) == (rep.component_count == 1), x


# -- star labels on arbitrary positions -------------------------------------------

def test_multgraph_vs_star_examples():
    assert not predict_multgraph_vs_star(path_graph(5), star_mults(3, (1, 1)))
    # no blocking chain: a 4-cycle with a chord is fine with 2 blanks
    g = SimpleGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    assert predict_multgraph_vs_star(g, star_mults(2, (1, 1)))
    # cycles: connected exactly for a 3-vertex star with a unit leaf
    assert predict_multgraph_vs_star(cycle_graph(5), star_mults(2, (2, 1)))
    assert not predict_multgraph_vs_star(cycle_graph(6), star_mults(2, (2, 2)))


def test_multgraph_vs_star_path_is_disconnected_with_two_pebbles():
    # order of two distinct labels along a path cannot change
    star = star_mults(2, (1, 1))
    assert not predict_multgraph_vs_star(path_graph(4), star)
    rep = build_components(path_graph(4), star, variant="fsm")
    assert rep.component_count == 2


def test_multgraph_vs_star_preconditions():
    with pytest.raises(PreconditionError):
        predict_multgraph_vs_star(SimpleGraph(4, [(0, 1)]), star_mults(2, (1, 1)))
    with pytest.raises(PreconditionError):
        predict_multgraph_vs_star(path_graph(4), star_mults(1, (2, 1)))
    with pytest.raises(PreconditionError):
        # star on 2 vertices is out of scope
        predict_multgraph_vs_star(
            path_graph(4),
            MultiplicityGraph(SimpleGraph(2, [(0, 1)]), (2, 2)),
        )


def test_multgraph_vs_star_oracle_agreement_small():
    for n in range(4, 6):
        stars = families.star_mult_configs(n, centers=(2, 3), sizes=(3, 4))
        for x in families.graph_classes(n, connected=True):
            for s in stars:
                rep = build_components(x, s, variant="fsm")
                assert predict_multgraph_vs_star(x, s) == (rep.component_count == 1)


# -- small-support oracle ------------------------------------------------------------

def test_small_support_claw_connected():
    claw = star_graph(4)
    assert small_support_connectivity(claw, star_mults(2, (1, 1)))


def test_small_support_k4_connected():
    assert small_support_connectivity(complete_graph(4), star_mults(2, (1, 1)))


def test_small_support_path_disconnected():
    assert not small_support_connectivity(path_graph(4), star_mults(2, (1, 1)))


def test_small_support_always_connected_off_paths_and_cycles():
    # the support lemma: connected, not a path, not a cycle => connected
    for k in (2, 3):
        star = star_mults(k, (1, 1))
        n = k + 2
        for x in families.graph_classes(n, connected=True):
            if x.is_path_graph() or x.is_cycle_graph():
                continue
            assert small_support_connectivity(x, star), x


def test_small_support_size_mismatch():
    with pytest.raises(PreconditionError):
        small_support_connectivity(path_graph(5), star_mults(2, (1, 1)))


# -- double multiplicity probe ----------------------------------------------------------

def test_probe_reduces_to_single_multiplicity_when_units():
    x = MultiplicityGraph(path_graph(5), (1,) * 5)
    star = star_mults(3, (1, 1))
    v = double_multiplicity_bridge_probe(x, star)
    assert v.predicted is False and v.oracle is False and not v.asserted


def test_probe_with_repeated_bridge_label():
    x = MultiplicityGraph(path_graph(5), (1, 1, 2, 1, 1))
    star = star_mults(3, (2, 1))
    v = double_multiplicity_bridge_probe(x, star)
    assert v.predicted is True
    assert isinstance(v.oracle, bool)


def test_probe_vacuous_without_bridges():
    x = MultiplicityGraph(complete_graph(4), (1, 1, 1, 1))
    star = star_mults(2, (1, 1))
    v = double_multiplicity_bridge_probe(x, star)
    assert v.predicted is True


# -- harness -----------------------------------------------------------------------------

def test_verify_family_small_star():
    verdicts = verify_family({"family": "thm14-small", "max_n": 3, "total_max": 4})
    assert verdicts and all(v.agree for v in verdicts)


def test_verify_family_jsonl_roundtrip():
    verdicts = verify_family({"family": "thm51-small", "max_n": 2, "total_max": 3})
    text = verdicts_to_jsonl(verdicts)
    rows = [json.loads(line) for line in text.splitlines()]
    assert len(rows) == len(verdicts)
    assert all(set(r) == {"family", "instance", "predicted", "oracle",
                          "agree", "asserted"} for r in rows)


def test_verify_family_unknown_name():
    with pytest.raises(ValueError):
        verify_family("no-such-family")


def test_verdict_agree_property():
    v = Verdict(family="f", instance={}, predicted=2, oracle=3)
    assert not v.agree
