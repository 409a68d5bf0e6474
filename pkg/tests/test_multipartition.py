import pytest
from hypothesis import given, strategies as st

from hecke_branching import multipartition as mp
from hecke_branching.multipartition import MultiPartition, Multicharge, Node
from hecke_branching.multiseg import DomainError, cartan_entry

from oracles import fock_f
from strategies import multipartitions

P = MultiPartition.of


class TestTypes:
    def test_validation(self):
        with pytest.raises(DomainError):
            P((1, 2))
        with pytest.raises(DomainError):
            Multicharge(3, ())
        with pytest.raises(DomainError):
            Multicharge(1, (0,))

    def test_zero_parts_dropped(self):
        assert P((2, 0, 0)) == P((2,))

    def test_str(self):
        assert str(P((2,), ())) == "((2),∅)"
        assert str(P((2, 1))) == "(2,1)"

    def test_json(self):
        lam = P((2, 1), (1,))
        assert lam.to_json() == {"components": [[2, 1], [1]]}
        assert MultiPartition.from_json(lam.to_json()) == lam
        assert Multicharge.from_json({"e": 4, "charges": [0, 1]}) == Multicharge(4, (0, 1))
        with pytest.raises(DomainError, match=r"components\[1\]"):
            MultiPartition.from_json({"components": [[1], "x"]})
        with pytest.raises(DomainError, match="charges"):
            Multicharge.from_json({"e": 4, "charges": "0,1"})

    def test_transpose(self):
        assert P((3, 1), (2, 2)).transpose() == P((2, 1, 1), (2, 2))


class TestContent:
    def test_examples(self):
        assert mp.content(Node(1, 1, 0), Multicharge(4, (0, 1))) == 0
        v = Multicharge(4, (0, 1))
        assert mp.content(Node(2, 1, 0), v) == -1 and mp.residue(Node(2, 1, 0), v) == 3
        v = Multicharge(3, (1, 2))
        assert mp.content(Node(1, 1, 1), v) == 2 and mp.residue(Node(1, 1, 1), v) == 2


class TestOrder:
    def test_tie_broken_by_component(self):
        v = Multicharge(3, (1, 2))
        assert mp.precedes(Node(1, 1, 1), Node(1, 2, 0), v)
        assert not mp.precedes(Node(1, 2, 0), Node(1, 1, 1), v)

    def test_irreflexive(self):
        v = Multicharge(3, (1, 2))
        assert not mp.precedes(Node(1, 1, 1), Node(1, 1, 1), v)

    def test_content_comparison(self):
        assert mp.precedes(Node(2, 1, 0), Node(1, 2, 0), Multicharge(2, (0,)))

    def test_residue_mismatch(self):
        with pytest.raises(DomainError):
            mp.precedes(Node(1, 1, 0), Node(1, 2, 0), Multicharge(3, (0,)))


class TestSignature:
    def test_empty(self):
        assert mp.signature_word(P(()), 0, Multicharge(2, (0,))) == [(Node(1, 1, 0), "A")]

    def test_tie(self):
        word = mp.signature_word(P((1,), ()), 2, Multicharge(3, (1, 2)))
        assert word == [(Node(1, 1, 1), "A"), (Node(1, 2, 0), "A")]

    def test_mixed(self):
        word = mp.signature_word(P((2,)), 1, Multicharge(2, (0,)))
        assert word == [(Node(2, 1, 0), "A"), (Node(1, 2, 0), "R")]

    @given(st.integers(2, 4), st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.data())
    def test_strictly_sorted(self, e, charges, data):
        v = Multicharge(e, tuple(charges))
        lam = data.draw(multipartitions(len(charges)))
        for i in range(e):
            keys = [(mp.content(n, v), -n.c) for n, _ in mp.signature_word(lam, i, v)]
            assert all(a < b for a, b in zip(keys, keys[1:]))


class TestRA:
    def test_examples(self):
        assert mp.ra_reduce(["R", "A"]) == []
        assert mp.ra_reduce(["A", "R"]) == ["A", "R"]
        assert mp.ra_reduce(["R", "R", "A", "A"]) == []

    @given(st.lists(st.sampled_from("AR"), max_size=12))
    def test_shape_and_idempotence(self, word):
        out = mp.ra_reduce(word)
        s = "".join(out)
        assert "RA" not in s
        assert mp.ra_reduce(out) == out
        # the fixed point of pairwise deletion
        t = "".join(word)
        while "RA" in t:
            t = t.replace("RA", "", 1)
        assert s == t


class TestFockCrystal:
    def test_worked_paths(self):
        v = Multicharge(3, (1, 2))
        empty = MultiPartition.empty(2)
        assert mp.tilde_f_fock(mp.tilde_f_fock(empty, 1, v), 2, v) == P((2,), ())
        assert mp.tilde_f_fock(mp.tilde_f_fock(empty, 2, v), 1, v) == P((1,), (1,))

    def test_e_on_empty(self):
        v = Multicharge(3, (1, 2))
        assert all(mp.tilde_e_fock(MultiPartition.empty(2), i, v) is None for i in range(3))

    def test_weight_examples(self):
        v = Multicharge(3, (1, 2))
        assert mp.wt_fock(MultiPartition.empty(2), v) == v.highest_weight()
        w = mp.wt_fock(P((2,), ()), v)
        assert w.level == (0, 1, 1) and w.root == (0, -1, -1)
        assert mp.phi_fock(P((1,), ()), 2, v) == 2

    @given(st.integers(2, 4), st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.data())
    def test_axioms(self, e, charges, data):
        v = Multicharge(e, tuple(charges))
        lam = data.draw(multipartitions(len(charges)))
        for i in range(e):
            up = mp.tilde_f_fock(lam, i, v)
            if up is not None:
                assert mp.tilde_e_fock(up, i, v) == lam
            down = mp.tilde_e_fock(lam, i, v)
            if down is not None:
                assert mp.tilde_f_fock(down, i, v) == lam
            k, x = 0, down
            while x is not None:
                k, x = k + 1, mp.tilde_e_fock(x, i, v)
            assert mp.epsilon_fock(lam, i, v) == k
            assert mp.phi_fock(lam, i, v) - mp.epsilon_fock(lam, i, v) == mp.wt_fock(lam, v).pairing(i)

    @given(st.integers(2, 4), st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.data())
    def test_f_matches_rewriting_oracle(self, e, charges, data):
        v = Multicharge(e, tuple(charges))
        lam = data.draw(multipartitions(len(charges)))
        for i in range(e):
            got = mp.tilde_f_fock(lam, i, v)
            want = fock_f(lam.components, v.charges, e, i)
            assert (got is None and want is None) or got.components == want


def test_pairing_uses_cartan_matrix():
    v = Multicharge(2, (0,))
    w = mp.wt_fock(P((1,)), v)
    assert w.pairing(0) == 1 - 2 and w.pairing(1) == 0 + 2
    assert cartan_entry(2, 0, 1) == -2


def test_multipartition_enumeration():
    assert sum(1 for _ in mp.multipartitions(2, 3)) == 10
    assert all(lam.rank == 4 for lam in mp.multipartitions(3, 4))
