import json
import random

import pytest

from hecke_branching import multiseg as ms
from hecke_branching.branching import (
    SimpleLabel,
    branching_socle,
    crystal_graph,
    label_translate,
    restriction_profile,
)
from hecke_branching.multipartition import MultiPartition, Multicharge
from hecke_branching.multiseg import Convention, DomainError, Multisegment
from hecke_branching.realizations import (
    FockRealization,
    KleshchevRealization,
    MultisegmentRealization,
    enumerate_flotw,
    f_v_embed,
    transport,
)

from strategies import multisegments
from hypothesis import given


def T(*segs, e=3):
    return Multisegment.from_tails(e, segs)


MP = MultiPartition.of


def test_socle_examples():
    assert branching_socle(T((2, 2)), 2) == T((1, 1))
    assert branching_socle(Multisegment.empty(3), 0) is None
    assert branching_socle(T((1, 1), (1, 2)), 1) == T((1, 2))


def test_socle_rejects_periodic():
    with pytest.raises(DomainError):
        branching_socle(T((1, 0), (1, 1), (1, 2)), 0)


def test_profile_examples():
    assert restriction_profile(Multisegment.empty(3)) == {0: None, 1: None, 2: None}
    assert restriction_profile(T((2, 2))) == {0: None, 1: None, 2: T((1, 1))}


@given(multisegments(aperiodic=True))
def test_profile_counts_and_sizes(psi):
    prof = restriction_profile(psi)
    nonnull = [x for x in prof.values() if x is not None]
    assert len(nonnull) == sum(1 for i in range(psi.e) if ms.epsilon(psi, i) > 0)
    assert all(x.size == psi.size - 1 for x in nonnull)
    if psi:
        assert nonnull


def test_translate_examples():
    v = Multicharge(3, (1, 2))
    mseg = MultisegmentRealization(3, Convention.TAIL)
    assert label_translate(SimpleLabel.of_uglov(MP((2,), ()), v), mseg).mseg == T((2, 2))
    assert label_translate(SimpleLabel.of_uglov(MP((1,), (1,)), v), mseg).mseg == T((1, 1), (1, 2))
    lab = SimpleLabel.of_uglov(MP((1,), (1,)), v)
    assert label_translate(lab, FockRealization(v)) == lab


def test_translate_back_from_multisegment():
    v = Multicharge(3, (1, 2))
    lab = SimpleLabel.of_mseg(T((2, 2)))
    assert label_translate(lab, FockRealization(v)).lam == MP((2,), ())
    with pytest.raises(DomainError, match="not a module over this cyclotomic quotient"):
        label_translate(SimpleLabel.of_mseg(T((1, 1), (1, 2))), FockRealization(Multicharge(3, (1,))))


def test_translate_to_kleshchev_level_one():
    lab = SimpleLabel.of_uglov(MP((2,)), Multicharge(3, (1,)))
    assert label_translate(lab, KleshchevRealization(3, (1,))).lam == MP((2,))


def test_label_validation():
    with pytest.raises(DomainError):
        SimpleLabel.of_mseg(T((1, 0), (1, 1), (1, 2)))
    with pytest.raises(DomainError):
        SimpleLabel.of_uglov(MP((1, 1)), Multicharge(2, (0,)))
    assert json.loads(json.dumps(SimpleLabel.of_mseg(T((2, 2))).to_json()))["kind"] == "mseg"


def test_graph_depth_zero():
    g = crystal_graph(FockRealization(Multicharge(2, (0,))), 0)
    assert g.vertices == (MP(()),) and g.edges == ()


def test_graph_small_example():
    g = crystal_graph(FockRealization(Multicharge(2, (0,))), 2)
    assert [str(x) for x in g.vertices] == ["∅", "(1)", "(2)"]
    assert g.edges == ((0, 0, 1), (1, 1, 2))
    dot = g.to_dot()
    assert dot.startswith("digraph") and 'v1 -> v2 [label="1"]' in dot
    assert g.to_json()["edges"] == [[0, 0, 1], [1, 1, 2]]


@pytest.mark.parametrize("e,charges", [(2, (0,)), (3, (0, 1)), (4, (0, 2)), (3, (0, 0))])
def test_graph_rank_counts(e, charges):
    v = Multicharge(e, charges)
    g = crystal_graph(FockRealization(v, "flotw"), 6)
    for n in range(7):
        assert sum(1 for x in g.vertices if x.rank == n) == len(enumerate_flotw(v, n))


def _relabel(graph, src, dst):
    image = [transport(x, src, dst) for x in graph.vertices]
    return set(image), {(image[a], i, image[b]) for a, i, b in graph.edges}


@pytest.mark.parametrize("e,charges", [(3, (1, 2)), (2, (0, 1)), (4, (0, 1))])
def test_graphs_isomorphic_across_realizations(e, charges):
    v = Multicharge(e, charges)
    depth = 6
    base = FockRealization(v, "flotw")
    g0 = crystal_graph(base, depth)
    for other in (FockRealization(Multicharge(e, tuple(c + e * k for k, c in enumerate(charges)))),
                  KleshchevRealization(e, v.residues)):
        g1 = crystal_graph(other, depth)
        verts, edges = _relabel(g0, base, other)
        assert verts == set(g1.vertices)
        assert edges == {(g1.vertices[a], i, g1.vertices[b]) for a, i, b in g1.edges}


def test_multisegment_graph_matches_enumeration():
    g = crystal_graph(MultisegmentRealization(2, Convention.TAIL), 4)
    for n in range(5):
        got = {x for x in g.vertices if x.size == n}
        assert got == set(ms.aperiodic_multisegments(2, n))


def test_socle_consistency_random():
    rng = random.Random(0)
    v = Multicharge(3, (0, 1))
    for lam in enumerate_flotw(v, 6):
        i = rng.randrange(3)
        r = FockRealization(v, "flotw").e_op(lam, i)
        if r is not None:
            assert f_v_embed(r, v) == branching_socle(f_v_embed(lam, v), i)
