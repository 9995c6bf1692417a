"""Acyclic orientations, flips, equivalence classes, periods, predictors."""

import itertools
import math
import random

import pytest

from fsglab.graphs import (
    CliquePartition,
    MultiplicityGraph,
    SimpleGraph,
    complement,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    lift,
    path_graph,
)
from fsglab.orientations import (
    FlipError,
    Orientation,
    apply_block_permutation,
    complement_of_lift,
    coprime_forest_connected,
    enumerate_acyc,
    flip,
    induced_orientation,
    linear_extensions,
    partition_by,
    period_of_arrangement,
    period_of_orientation,
    period_profile,
    predict_cycle_components,
    predict_path_components,
)
from fsglab.statespace import build_components
from fsglab import families


X224 = MultiplicityGraph(path_graph(3), (2, 2, 4))
SIGMA = (0, 4, 2, 5, 1, 6, 3, 7)   # projects to u1,u3,u2,u3,u1,u3,u2,u3
TAU = (4, 0, 2, 5, 1, 6, 3, 7)     # projects to u3,u1,u2,u3,u1,u3,u2,u3


def test_induced_orientation_single_edge():
    host = complement(path_graph(3))  # single edge {0, 2}
    o = induced_orientation((0, 1, 2), host)
    assert o.directed_edges() == [(0, 2)]
    o2 = induced_orientation((2, 1, 0), host)
    assert o2.directed_edges() == [(2, 0)]


def test_enumerate_acyc_counts():
    assert len(enumerate_acyc(edgeless_graph(3))) == 1
    assert len(enumerate_acyc(SimpleGraph(2, [(0, 1)]))) == 2
    assert len(enumerate_acyc(complete_graph(3))) == 6
    # oracle: all direction vectors minus the two rotating triangles
    host = complete_graph(3)
    count = 0
    for dirs in itertools.product((0, 1), repeat=3):
        try:
            Orientation(host, dirs)
            count += 1
        except ValueError:
            pass
    assert count == 6


def test_flip_involution_and_errors():
    host = SimpleGraph(3, [(0, 1)])
    o = Orientation(host, (1,))
    assert flip(o, 0).dirs == (0,)
    assert flip(flip(o, 0), 0) == o
    assert flip(o, 2) == o  # isolated vertex flip is vacuous
    with pytest.raises(FlipError):
        host2 = path_graph(3)
        flip(Orientation(host2, (1, 1)), 1)  # middle vertex is neither


def test_class_partition_examples():
    host = SimpleGraph(2, [(0, 1)])
    cl = CliquePartition(((0,), (1,)))
    part = partition_by("toric", host, cl)
    assert part.class_count == 1 and len(part.classes[0]) == 2
    host2 = SimpleGraph(3, [(0, 1)])
    part2 = partition_by("double_flip", host2, CliquePartition(((0,), (1,), (2,))))
    assert part2.class_count == 1  # double flip pairing a real source with a vacuous sink
    host3 = edgeless_graph(3)
    part3 = partition_by("permutation", host3, CliquePartition(((0, 1, 2),)))
    assert part3.class_count == 1


def test_refinement_lattice_small_hosts():
    for x in families.multiplicity_graphs(3, 5):
        host, cl = complement_of_lift(x)
        parts = {
            rel: partition_by(rel, host, cl)
            for rel in ("toric", "double_flip", "permutation",
                        "toric_permutation", "double_flip_permutation")
        }

        def refines(fine, coarse):
            mapping = {}
            for o in enumerate_acyc(host):
                f = parts[fine].class_of[o.dirs]
                c = parts[coarse].class_of[o.dirs]
                if f in mapping and mapping[f] != c:
                    return False
                mapping[f] = c
            return True

        assert refines("double_flip", "toric")
        assert refines("toric", "toric_permutation")
        assert refines("double_flip", "double_flip_permutation")
        assert refines("double_flip_permutation", "toric_permutation")
        assert refines("permutation", "toric_permutation")
        assert refines("permutation", "double_flip_permutation")


def test_linear_extensions_counts():
    assert len(linear_extensions(Orientation(edgeless_graph(3), ()))) == 6
    assert len(linear_extensions(Orientation(SimpleGraph(2, [(0, 1)]), (1,)))) == 1
    host = SimpleGraph(3, [(0, 1)])
    assert len(linear_extensions(Orientation(host, (1,)))) == 3


def test_linear_extensions_induce_back():
    host = complement(lift(X224)[0])
    o = induced_orientation(SIGMA, host)
    for ext in linear_extensions(o)[:50]:
        assert induced_orientation(ext, host) == o


# -- periods -------------------------------------------------------------------

def test_period_golden_values():
    _, cl = lift(X224)
    assert period_of_arrangement(SIGMA, cl) == 4
    assert period_of_arrangement(TAU, cl) == 8
    host = complement(lift(X224)[0])
    alpha = induced_orientation(SIGMA, host)
    assert period_of_orientation(alpha, cl) == 4


def test_period_all_unit_mults_is_length():
    g = path_graph(4)
    _, cl = lift(MultiplicityGraph(g, (1,) * 4))
    for a in itertools.permutations(range(4)):
        assert period_of_arrangement(a, cl) == 4


def test_period_single_block_is_one():
    cl = CliquePartition(((0, 1, 2, 3),))
    assert period_of_arrangement((2, 0, 3, 1), cl) == 1


def test_period_divides_length():
    rng = random.Random(4)
    for _ in range(40):
        mults = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        base = edgeless_graph(len(mults))
        _, cl = lift(MultiplicityGraph(base, mults))
        n = sum(mults)
        a = list(range(n))
        rng.shuffle(a)
        p = period_of_arrangement(tuple(a), cl)
        assert n % p == 0


def test_period_structure_residue_classes():
    # residues mod the period map into single blocks; block sizes force the
    # count of classes each block receives (mult * period / length)
    _, cl = lift(X224)
    block_of = cl.block_of
    for a in (SIGMA, TAU):
        p = period_of_arrangement(a, cl)
        n = len(a)
        received = [0] * len(cl.blocks)
        for r in range(p):
            blocks = {block_of[a[i]] for i in range(r, n, p)}
            assert len(blocks) == 1
            received[blocks.pop()] += 1
        for b, cnt in enumerate(received):
            assert cnt * n == len(cl.blocks[b]) * p


def test_tree_component_oriented_from_root_has_full_period():
    # a tree oriented away from a root: period equals its size
    host = SimpleGraph(3, [(0, 1), (0, 2)])
    o = Orientation(host, (1, 1))  # 0 -> 1, 0 -> 2
    cl = CliquePartition(((0,), (1,), (2,)))
    assert period_of_orientation(o, cl) == 3


def test_period_profile_examples():
    # two trees of sizes 2 and 3 with singleton blocks: profile (2, 3), gcd 1
    host = SimpleGraph(5, [(0, 1), (2, 3), (3, 4)])
    o = Orientation(host, (1, 1, 1))
    cl = CliquePartition(tuple((i,) for i in range(5)))
    prof = period_profile(o, cl)
    assert tuple(prof) == (2, 3) and prof.delta == 1
    # isolated vertex forces delta 1
    host2 = SimpleGraph(3, [(0, 1)])
    prof2 = period_profile(Orientation(host2, (1,)),
                           CliquePartition(((0,), (1,), (2,))))
    assert prof2.delta == 1


def test_period_invariant_on_toric_permutation_classes():
    for x in families.multiplicity_graphs(3, 5, connected=True):
        host, cl = complement_of_lift(x)
        part = partition_by("toric_permutation", host, cl)
        for members in part.classes:
            periods = {period_of_orientation(o, cl) for o in members}
            assert len(periods) == 1, (x, periods)


def test_period_divides_every_extension_per_component():
    # on each connected component, the orientation period divides the
    # period of every linear extension of that component
    for x in families.multiplicity_graphs(3, 5):
        host, cl = complement_of_lift(x)
        for comp in host.connected_components():
            sub, old = host.subgraph(comp)
            sub_cl = cl.restricted(comp)
            for o in enumerate_acyc(sub):
                p_alpha = period_of_orientation(o, sub_cl)
                for ext in linear_extensions(o):
                    assert period_of_arrangement(ext, sub_cl) % p_alpha == 0


# -- predictors ----------------------------------------------------------------

def test_predict_path_components_examples():
    assert predict_path_components(MultiplicityGraph(SimpleGraph(2, [(0, 1)]), (1, 2))) == 1
    assert predict_path_components(MultiplicityGraph(path_graph(3), (1, 1, 1))) == 2
    one = MultiplicityGraph(SimpleGraph(1, []), (3,))
    assert predict_path_components(one) == 1


def test_predict_cycle_components_examples():
    assert predict_cycle_components(MultiplicityGraph(cycle_graph(4), (1,) * 4)) == 2
    assert predict_cycle_components(MultiplicityGraph(path_graph(3), (1, 1, 1))) == 1


def test_cycle_count_matches_all_unit_toric_formula():
    # with unit multiplicities the count equals (number of toric classes)
    # times the gcd of complement component sizes
    for x in families.graph_classes(4):
        m = MultiplicityGraph(x, (1,) * x.n)
        host, cl = complement_of_lift(m)
        toric = partition_by("toric", host, cl).class_count
        nu = 0
        for comp in host.connected_components():
            nu = math.gcd(nu, len(comp))
        assert predict_cycle_components(m) == toric * nu


def test_coprime_forest_examples():
    assert coprime_forest_connected(MultiplicityGraph(path_graph(3), (1, 1, 1)))
    assert not coprime_forest_connected(MultiplicityGraph(cycle_graph(4), (1,) * 4))
    assert not coprime_forest_connected(X224)  # complement of lift has a cycle


def test_rotation_relabeling_is_automorphism():
    # rotating cycle positions preserves adjacency of the swap space
    x = MultiplicityGraph(path_graph(3), (1, 1, 2))
    n = x.total
    from fsglab.statespace import space_for

    space = space_for(cycle_graph(n), x, "fsm")
    edges = set()
    for a in space.enumerate():
        for b in space.neighbors(a):
            edges.add((a, b))

    def rot(a):
        return tuple(a[(i + 1) % n] for i in range(n))

    assert all((rot(a), rot(b)) in edges for a, b in edges)
