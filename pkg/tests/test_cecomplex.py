from fractions import Fraction
from math import comb

import pytest

from configcohom import (assemble_blocks, build_generators, count_monomials,
                         differential_of_monomial, dump_complex,
                         enumerate_basis, homotopy_check, make_cpm,
                         reduce_complex)
from configcohom.cecomplex import in_reduction_ideal, make_monomial
from oracles import s4_ring, torus_ring


def mono(G, exps):
    """Monomial from a name -> exponent dict, e.g. {"v2": 2, "w3": 1}."""
    v = [0] * len(G.v_gens)
    w = [0] * len(G.w_gens)
    for name, e in exps.items():
        hit = False
        for i, g in enumerate(G.v_gens):
            if g.name == name:
                v[i] = e
                hit = True
        for i, g in enumerate(G.w_gens):
            if g.name == name:
                w[i] = e
                hit = True
        assert hit, name
    return make_monomial(G, v, w)


def diff_labels(G, m):
    return {out.label(G): q for out, q in differential_of_monomial(G, m)}


def test_enumerate_cp1_k2():
    G = build_generators(make_cpm(1))
    basis = enumerate_basis(G, 2)
    labels = {key: [m.label(G) for m in mons]
              for key, mons in basis.slices.items()}
    assert labels == {
        (0, 0): ["v0^2"], (2, 0): ["v0 v2"], (4, 0): ["v2^2"],
        (1, 1): ["w1"], (3, 1): ["w3"],
    }
    assert basis.total_dimension() == 5
    assert basis.degree_dimensions() == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}


def test_enumerate_edge_cases():
    G = build_generators(make_cpm(2))
    b0 = enumerate_basis(G, 0)
    assert b0.total_dimension() == 1
    assert b0.slice(0, 0)[0].label(G) == "1"
    b1 = enumerate_basis(G, 1)
    # k = 1 is just V itself
    assert b1.total_dimension() == 3
    assert all(w == 0 for _, w in b1.slices)
    with pytest.raises(ValueError):
        enumerate_basis(G, -1)


def test_count_matches_enumeration_and_closed_form():
    for m in (1, 2, 3):
        G = build_generators(make_cpm(m))
        for k in range(0, 9):
            basis = enumerate_basis(G, k)
            n = basis.total_dimension()
            assert n == count_monomials(G, k)
            # CP^m closed form: per weight, multichoose on V times
            # subsets of the odd W-generators
            expect = sum(
                comb(k - 2 * w + m, m) * comb(m + 1, w)
                for w in range(k // 2 + 1)
            )
            assert n == expect, (m, k)
    G = build_generators(torus_ring())
    for k in range(0, 6):
        assert enumerate_basis(G, k).total_dimension() == count_monomials(G, k)


def test_weights_partition_by_parity():
    G = build_generators(make_cpm(2))
    basis = enumerate_basis(G, 6)
    for (i, w), mons in basis.slices.items():
        for m in mons:
            assert m.weight == w
            assert m.degree == i
            assert m.v_length == 6 - 2 * w


def test_differential_of_v_monomial_is_zero():
    G = build_generators(make_cpm(2))
    assert differential_of_monomial(G, mono(G, {"v2": 3})) == []
    assert differential_of_monomial(G, mono(G, {"v0": 1, "v4": 1})) == []


def test_differential_single_w():
    G = build_generators(make_cpm(2))
    assert diff_labels(G, mono(G, {"w7": 1})) == {"v4^2": 1}
    assert diff_labels(G, mono(G, {"w5": 1})) == {"v2 v4": 2}
    assert diff_labels(G, mono(G, {"w3": 1})) == {"v0 v4": 2, "v2^2": 1}
    # multiplying by a closed prefix just carries it along
    assert diff_labels(G, mono(G, {"v2": 2, "w5": 1})) == {"v2^3 v4": 2}


def test_differential_leibniz_pair_of_ws():
    # d(w5 w7) = (d w5) w7 - w5 (d w7): the sign comes from sliding d
    # past the odd factor w5.
    G = build_generators(make_cpm(2))
    got = diff_labels(G, mono(G, {"w5": 1, "w7": 1}))
    assert got == {"v2 v4 w7": 2, "v4^2 w5": -1}


def test_differential_squares_to_zero_pointwise():
    for R in (make_cpm(1), make_cpm(2), torus_ring(), s4_ring()):
        G = build_generators(R)
        basis = enumerate_basis(G, 5)
        for mons in basis.slices.values():
            for m in mons:
                acc = {}
                for out, q in differential_of_monomial(G, m):
                    for out2, q2 in differential_of_monomial(G, out):
                        acc[out2] = acc.get(out2, Fraction(0)) + q * q2
                assert all(v == 0 for v in acc.values()), m.label(G)


def test_recomputed_two_w_differential_cp3():
    # The slice differential of v4^2 w7 w9 on CP^3: the term from
    # differentiating the second W-factor passes the prefix over w7
    # and picks up a minus sign.
    G = build_generators(make_cpm(3))
    got = diff_labels(G, mono(G, {"v4": 2, "w7": 1, "w9": 1}))
    assert got == {
        "v2 v4^2 v6 w9": 2,
        "v4^4 w9": 1,
        "v4^3 v6 w7": -2,
    }


def test_assemble_cp2_k2():
    G = build_generators(make_cpm(2))
    basis = enumerate_basis(G, 2)
    blocks = {b.source: b for b in assemble_blocks(G, basis)}
    assert set(blocks) == {(3, 1), (5, 1), (7, 1)}
    b = blocks[(3, 1)]
    assert b.target == (4, 0)
    # target slice in canonical order: v2^2 before v0 v4
    tgt = [m.label(G) for m in basis.slice(4, 0)]
    assert tgt == ["v2^2", "v0 v4"]
    assert b.matrix.to_dense() == [[Fraction(1)], [Fraction(2)]]
    assert blocks[(7, 1)].matrix.to_dense() == [[Fraction(1)]]


def test_blocks_shift_degree_and_weight():
    G = build_generators(torus_ring())
    basis = enumerate_basis(G, 4)
    for b in assemble_blocks(G, basis):
        (i, w) = b.source
        assert b.target == (i + 1, w - 1)
        assert b.matrix.n_cols == len(basis.slice(i, w))
        assert b.matrix.n_rows == len(basis.slice(i + 1, w - 1))


def test_reduce_cp1_k2_and_k3():
    G = build_generators(make_cpm(1))
    red2 = reduce_complex(G, enumerate_basis(G, 2))
    labels = sorted(m.label(G) for mons in red2.slices.values() for m in mons)
    assert labels == ["v0 v2", "v0^2", "w1"]
    red3 = reduce_complex(G, enumerate_basis(G, 3))
    labels3 = sorted(m.label(G) for mons in red3.slices.values() for m in mons)
    assert labels3 == ["v0 w1", "v0^2 v2", "v0^3", "v2 w1"]
    assert red3.mode == "reduced"


def test_reduced_top_degree():
    # for k >= 4 the reduced complex tops out at (2m-2)k + 3, witnessed
    # by v_{2m-2}^{k-3} v_{2m} w_{4m-3}; the full complex goes to 2mk
    for m in (1, 2, 3):
        G = build_generators(make_cpm(m))
        for k in (4, 5, 6, 7):
            full = enumerate_basis(G, k)
            red = reduce_complex(G, full)
            assert full.top_degree() == 2 * m * k
            assert red.top_degree() == (2 * m - 2) * k + 3
            top_mons = red.slice((2 * m - 2) * k + 3, 1)
            assert len(top_mons) == 1
            expect = {"v%d" % (2 * m - 2): k - 3, "v%d" % (2 * m): 1,
                      "w%d" % (4 * m - 3): 1}
            expect = {n: e for n, e in expect.items() if e}
            assert top_mons[0] == mono(G, expect)


def test_reduction_requires_cpm():
    G = build_generators(torus_ring())
    with pytest.raises(ValueError):
        reduce_complex(G, enumerate_basis(G, 2))


def test_ideal_membership():
    G = build_generators(make_cpm(2))
    assert in_reduction_ideal(G, mono(G, {"v4": 2}))
    assert in_reduction_ideal(G, mono(G, {"v0": 1, "w7": 1}))
    assert not in_reduction_ideal(G, mono(G, {"v4": 1, "w5": 1}))


def test_ideal_is_closed_under_differential():
    for m in (1, 2):
        G = build_generators(make_cpm(m))
        for k in (2, 3, 4, 5, 6):
            basis = enumerate_basis(G, k)
            for mons in basis.slices.values():
                for x in mons:
                    if not in_reduction_ideal(G, x):
                        continue
                    for out, _ in differential_of_monomial(G, x):
                        assert in_reduction_ideal(G, out), \
                            (x.label(G), out.label(G))


def test_homotopy_identity_small():
    for m in (1, 2, 3):
        G = build_generators(make_cpm(m))
        for k in (2, 3, 4, 5):
            ok, witness = homotopy_check(G, k)
            assert ok, (m, k, witness.label(G))


def test_homotopy_on_the_square_itself():
    # d(v4^2) = 0, so (dh + hd)(v4^2) = d(w7) = v4^2
    G = build_generators(make_cpm(2))
    sq = mono(G, {"v4": 2})
    assert diff_labels(G, mono(G, {"w7": 1})) == {sq.label(G): 1}


def test_dump_complex_shape():
    G = build_generators(make_cpm(1))
    basis = enumerate_basis(G, 2)
    blocks = assemble_blocks(G, basis)
    doc = dump_complex(G, basis, blocks)
    assert doc["k"] == 2 and doc["mode"] == "full"
    slices = {(s["degree"], s["weight"]): s["monomials"] for s in doc["slices"]}
    assert slices[(1, 1)] == ["w1"]
    blk = {tuple(b["source"]): b for b in doc["blocks"]}
    assert blk[(1, 1)]["entries"] == [[0, 0, "2"]]
