"""Executable connectivity predictors and the predictor-vs-oracle harness.

Each predictor answers a connectivity (or component-count) question about a
swap state space from graph structure alone; ``verify_family`` sweeps an
enumerated instance family and compares every prediction against the
brute-force component oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .graphs import (
    MultiplicityGraph,
    SimpleGraph,
    articulation_analysis,
    as_multiplicity,
    contingency_count,
    cyclic_order_count,
    find_blocking_chains,
    find_k_bridges,
    graph_to_json_dict,
    is_wilsonian,
    path_graph,
    cycle_graph,
    star_graph,
    star_center,
)
from .orientations import (
    coprime_forest_connected,
    predict_cycle_components,
    predict_path_components,
)
from .statespace import build_components
from . import families


class PreconditionError(ValueError):
    pass


@dataclass
class Verdict:
    family: str
    instance: dict
    predicted: object
    oracle: object
    asserted: bool = True

    @property
    def agree(self) -> bool:
        return self.predicted == self.oracle

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "instance": self.instance,
            "predicted": self.predicted,
            "oracle": self.oracle,
            "agree": self.agree,
            "asserted": self.asserted,
        }


# -- star-position connectivity (multiplicities on the label graph) ------------


def predict_star_vs_multgraph(x: MultiplicityGraph, n: Optional[int] = None) -> bool:
    """Connectivity of the swap space with star positions and multiplicity
    labels x: Wilsonian label graphs always connect; biconnected ones need
    some repeated label; otherwise every cut vertex must repeat."""
    if n is not None and n != x.total:
        raise ValueError("n must equal the total multiplicity")
    if not x.base.is_connected():
        raise PreconditionError("label graph must be connected")
    cuts, biconnected = articulation_analysis(x.base)
    if is_wilsonian(x.base):
        return True
    if biconnected:
        return any(c >= 2 for c in x.mult)
    return all(x.mult[v] >= 2 for v in cuts)


# -- multiplicity-star labels on an arbitrary position graph -------------------


def predict_multgraph_vs_star(x: SimpleGraph, star: MultiplicityGraph) -> bool:
    """Connectivity of the swap space with position graph x and star labels.

    Cycles follow the cyclic-order rule; otherwise connectivity fails exactly
    when the position graph contains a blocking chain as long as the blank
    count (k-bridges for k >= 3, a big-sided cut edge for k = 2).
    """
    if not x.is_connected():
        raise PreconditionError("position graph must be connected")
    m = star.base.n
    if m <= 2:
        raise PreconditionError("star must have more than 2 vertices")
    center = star_center(star.base)
    k = star.mult[center]
    if k < 2:
        raise PreconditionError("center multiplicity must be at least 2")
    if star.total != x.n:
        raise PreconditionError("total multiplicity must match |V(x)|")
    if x.is_cycle_graph():
        leaves = [star.mult[v] for v in range(m) if v != center]
        return m == 3 and min(leaves) == 1
    return not find_blocking_chains(x, k)


def small_support_connectivity(x: SimpleGraph, star: MultiplicityGraph) -> bool:
    """Oracle connectivity for a support of blank-count-plus-two vertices.

    Used to validate that any connected non-path non-cycle support of k+2
    vertices lets the two non-blank labels trade places.
    """
    center = star_center(star.base)
    k = star.mult[center]
    if x.n != k + 2:
        raise PreconditionError("support must have center-multiplicity + 2 vertices")
    report = build_components(x, star, variant="fsm")
    return report.component_count == 1


def double_multiplicity_bridge_probe(
    x: MultiplicityGraph, star: MultiplicityGraph, budget: Optional[int] = None
) -> Verdict:
    """Exploration probe for the double-multiplicity star question: predict
    connectivity by the absence of an all-unit-multiplicity bridge of length
    equal to the center multiplicity; record (never assert) the oracle."""
    if x.total != star.total:
        raise PreconditionError("totals must match")
    center = star_center(star.base)
    k = star.mult[center]
    bridges = find_k_bridges(x.base, k)
    predicted = not any(
        all(x.mult[a] == 1 for a in br) for br in bridges
    )
    report = build_components(x, star, budget=budget, variant="fsmm")
    return Verdict(
        family="double-multiplicity-star-probe",
        instance={
            "x": graph_to_json_dict(x),
            "star": graph_to_json_dict(star),
        },
        predicted=predicted,
        oracle=report.component_count == 1,
        asserted=False,
    )


# -- the sweep harness ----------------------------------------------------------


def _instance_dict(**kwargs) -> dict:
    out = {}
    for key, val in kwargs.items():
        if isinstance(val, (SimpleGraph, MultiplicityGraph)):
            out[key] = graph_to_json_dict(val)
        else:
            out[key] = val
    return out


def _star_family_verdicts(max_base_n: int, total_max: int) -> Iterator[Verdict]:
    for x in families.multiplicity_graphs(max_base_n, total_max, connected=True):
        predicted = predict_star_vs_multgraph(x)
        report = build_components(star_graph(x.total), x, variant="fsm")
        yield Verdict(
            family="star-positions",
            instance=_instance_dict(x=x, n=x.total),
            predicted=predicted,
            oracle=report.component_count == 1,
        )


def _bridge_family_verdicts(max_n: int, centers=(2, 3), sizes=(3, 4)) -> Iterator[Verdict]:
    for n in range(3, max_n + 1):
        stars = families.star_mult_configs(n, centers=centers, sizes=sizes)
        if not stars:
            continue
        for x in families.graph_classes(n, connected=True):
            for star in stars:
                predicted = predict_multgraph_vs_star(x, star)
                report = build_components(x, star, variant="fsm")
                yield Verdict(
                    family="star-labels",
                    instance=_instance_dict(x=x, star=star),
                    predicted=predicted,
                    oracle=report.component_count == 1,
                )


def _path_count_verdicts(max_base_n: int, total_max: int) -> Iterator[Verdict]:
    for x in families.multiplicity_graphs(max_base_n, total_max):
        predicted = predict_path_components(x)
        report = build_components(path_graph(x.total), x, variant="fsm")
        yield Verdict(
            family="path-count",
            instance=_instance_dict(x=x),
            predicted=predicted,
            oracle=report.component_count,
        )


def _cycle_count_verdicts(max_base_n: int, total_max: int) -> Iterator[Verdict]:
    for x in families.multiplicity_graphs(max_base_n, total_max):
        if x.total < 3:
            continue
        predicted = predict_cycle_components(x)
        report = build_components(cycle_graph(x.total), x, variant="fsm")
        yield Verdict(
            family="cycle-count",
            instance=_instance_dict(x=x),
            predicted=predicted,
            oracle=report.component_count,
        )


def _coprime_forest_verdicts(max_base_n: int, total_max: int) -> Iterator[Verdict]:
    for x in families.multiplicity_graphs(max_base_n, total_max):
        if x.total < 3:
            continue
        predicted = coprime_forest_connected(x)
        report = build_components(cycle_graph(x.total), x, variant="fsm")
        yield Verdict(
            family="cycle-connectivity",
            instance=_instance_dict(x=x),
            predicted=predicted,
            oracle=report.component_count == 1,
        )


def _cut_vertex_bound_verdicts(total_max: int) -> Iterator[Verdict]:
    """Lower bound via contingency tables: label graphs with a unit-multiplicity
    cut vertex against position graphs with a cut vertex."""
    for x in families.multiplicity_graphs(total_max, total_max, connected=True):
        base = x.base
        if base.n < 3:
            continue
        cuts, _ = articulation_analysis(base)
        unit_cuts = [v for v in cuts if x.mult[v] == 1]
        if not unit_cuts:
            continue
        n = x.total
        for y in families.graph_classes(n, connected=True):
            ycuts, _ = articulation_analysis(y)
            if not ycuts:
                continue
            report = build_components(y, x, variant="fsm")
            bound = 0
            for x0 in unit_cuts:
                for y0 in ycuts:
                    rows = _component_totals(x, x0)
                    cols = _component_sizes(y, y0)
                    bound = max(bound, contingency_count(rows, cols))
            yield Verdict(
                family="cut-vertex-bound",
                instance=_instance_dict(x=x, y=y),
                predicted=True,
                oracle=report.component_count >= bound,
            )


def _component_totals(x: MultiplicityGraph, x0: int) -> list[int]:
    rest, old = x.base.subgraph(set(range(x.base.n)) - {x0})
    return [
        sum(x.mult[old[i]] for i in comp)
        for comp in rest.connected_components()
    ]


def _component_sizes(y: SimpleGraph, y0: int) -> list[int]:
    rest, _ = y.subgraph(set(range(y.n)) - {y0})
    return [len(c) for c in rest.connected_components()]


def _probe_family_verdicts(max_n: int, total_max: int) -> Iterator[Verdict]:
    for n in range(4, max_n + 1):
        stars = families.star_mult_configs(n, centers=(2, 3), sizes=(3,))
        for base in families.graph_classes(n, connected=True):
            for mults in families.mult_lists(base.n, total_max):
                x = MultiplicityGraph(base, mults)
                for star in stars:
                    if star.total != x.total:
                        continue
                    yield double_multiplicity_bridge_probe(x, star)


FAMILY_BUILDERS = {
    "thm14-small": lambda: _star_family_verdicts(4, 6),
    "thm16-small": lambda: _bridge_family_verdicts(6),
    "thm51-small": lambda: _path_count_verdicts(4, 6),
    "thm55-small": lambda: _cycle_count_verdicts(4, 6),
    "cor511-small": lambda: _coprime_forest_verdicts(4, 6),
    "cut-bound-small": lambda: _cut_vertex_bound_verdicts(6),
    "double-mult-probe-small": lambda: _probe_family_verdicts(5, 6),
}


def verify_family(spec, limits: Optional[dict] = None) -> list[Verdict]:
    """Run a named (or dict-configured) instance family.

    A dict spec has the shape {"family": name, ...overrides}.  Disagreements
    are returned as data; callers decide whether they are fatal.
    """
    if isinstance(spec, str):
        name = spec
        overrides: dict = {}
    else:
        name = spec.get("family")
        overrides = {k: v for k, v in spec.items() if k != "family"}
    if limits:
        overrides.update(limits)
    if name not in FAMILY_BUILDERS:
        raise ValueError(f"unknown family {name!r}")
    if overrides:
        builder = _family_with_overrides(name, overrides)
    else:
        builder = FAMILY_BUILDERS[name]()
    return list(builder)


def _family_with_overrides(name: str, ov: dict):
    max_n = ov.get("max_n")
    total_max = ov.get("total_max")
    if name == "thm14-small":
        return _star_family_verdicts(max_n or 4, total_max or 6)
    if name == "thm16-small":
        return _bridge_family_verdicts(max_n or 6)
    if name == "thm51-small":
        return _path_count_verdicts(max_n or 4, total_max or 6)
    if name == "thm55-small":
        return _cycle_count_verdicts(max_n or 4, total_max or 6)
    if name == "cor511-small":
        return _coprime_forest_verdicts(max_n or 4, total_max or 6)
    if name == "cut-bound-small":
        return _cut_vertex_bound_verdicts(total_max or 6)
    if name == "double-mult-probe-small":
        return _probe_family_verdicts(max_n or 5, total_max or 6)
    raise ValueError(name)


def verdicts_to_jsonl(verdicts: Iterable[Verdict]) -> str:
    return "".join(
        json.dumps(v.to_json_dict(), sort_keys=True) + "\n" for v in verdicts
    )
