import json
from fractions import Fraction

import pytest

from configcohom import (InvalidRingError, RingSchemaError,
                         diagonal_comultiplication, load_ring, make_cpm,
                         ring_from_dict, validate_ring)
from oracles import cp2_ring_doc, s4_ring, torus_ring


def test_cpm_shape():
    R = make_cpm(2)
    assert R.basis_names == ("1", "x", "x^2")
    assert R.degrees == (0, 2, 4)
    assert R.manifold_dimension == 4
    assert R.unit_index == 0
    assert R.top_index == 2
    assert R.cpm == 2
    assert R.product(1, 1) == {2: Fraction(1)}
    assert R.product(1, 2) == {}


def test_cpm_validates_up_to_six():
    for m in range(1, 7):
        diag = validate_ring(make_cpm(m))
        assert diag.valid, diag.violations


def test_cpm_rejects_bad_m():
    for bad in (0, -1, "2", 1.5, True):
        with pytest.raises(ValueError):
            make_cpm(bad)


def test_cpm_is_memoized():
    assert make_cpm(3) is make_cpm(3)


def test_pairing_matrix_antidiagonal():
    R = make_cpm(2)
    P = R.pairing_matrix()
    expect = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert P == [[Fraction(v) for v in row] for row in expect]


def test_torus_and_s4_validate():
    assert validate_ring(torus_ring()).valid
    assert validate_ring(s4_ring()).valid


def test_diagonal_cpm_closed_form():
    # On CP^m the coproduct of the homology class dual to x^c is the
    # sum of h_a (x) h_b over ordered pairs with a + b = c.
    for m in range(1, 5):
        diag = diagonal_comultiplication(make_cpm(m))
        for c in range(m + 1):
            expect = tuple(((a, c - a), Fraction(1)) for a in range(c + 1))
            assert diag[c] == expect, (m, c)


def test_diagonal_matches_structure_constants():
    # <diag(h_c), e_a (x) e_b> must equal the coefficient of e_c in
    # e_a e_b, for every ring we can build.
    for R in (make_cpm(1), make_cpm(3), torus_ring(), s4_ring()):
        diag = diagonal_comultiplication(R)
        for c in range(R.n):
            got = dict(diag[c])
            for a in range(R.n):
                for b in range(R.n):
                    assert got.get((a, b), Fraction(0)) == \
                        R.product(a, b).get(c, Fraction(0))


def test_diagonal_torus_signs():
    # The interesting entry: diag of the fundamental class contains
    # a (x) b and b (x) a with opposite signs.
    T = torus_ring()
    top = dict(diagonal_comultiplication(T)[3])
    assert top[(1, 2)] == 1
    assert top[(2, 1)] == -1
    assert top[(0, 3)] == 1 and top[(3, 0)] == 1


def test_diagonal_refuses_invalid_ring():
    doc = cp2_ring_doc()
    doc["products"] = [p for p in doc["products"]
                       if (p["left"], p["right"]) != ("x", "x")]
    R = ring_from_dict(doc)
    with pytest.raises(InvalidRingError):
        diagonal_comultiplication(R)


def test_validate_missing_product_degenerates_pairing():
    doc = cp2_ring_doc()
    doc["products"] = [p for p in doc["products"]
                       if (p["left"], p["right"]) != ("x", "x")]
    diag = validate_ring(ring_from_dict(doc))
    assert not diag.valid
    assert any(rule == "pairing" for rule, _ in diag.violations)


def test_validate_bad_grading():
    doc = cp2_ring_doc()
    doc["basis"][1]["degree"] = 3
    diag = validate_ring(ring_from_dict(doc))
    assert not diag.valid
    assert any(rule == "grading" for rule, _ in diag.violations)


def test_validate_missing_top():
    doc = cp2_ring_doc()
    doc["basis"] = doc["basis"][:2]
    doc["products"] = doc["products"][:3]
    doc["top"] = None
    diag = validate_ring(ring_from_dict(doc))
    assert not diag.valid
    assert any(rule == "top" for rule, _ in diag.violations)


def test_validate_broken_commutativity():
    doc = cp2_ring_doc()
    for p in doc["products"]:
        if (p["left"], p["right"]) == ("x", "1"):
            p["result"][0]["coeff"] = "2"
    diag = validate_ring(ring_from_dict(doc))
    assert not diag.valid
    rules = {rule for rule, _ in diag.violations}
    assert "commutativity" in rules or "unit-law" in rules


def test_schema_errors():
    good = cp2_ring_doc()

    doc = dict(good)
    del doc["dimension"]
    with pytest.raises(RingSchemaError):
        ring_from_dict(doc)

    doc = json.loads(json.dumps(good))
    doc["products"][0]["left"] = "zz"
    with pytest.raises(RingSchemaError, match="zz"):
        ring_from_dict(doc)

    doc = json.loads(json.dumps(good))
    doc["products"][5]["result"][0]["coeff"] = "0.5"
    with pytest.raises(RingSchemaError):
        ring_from_dict(doc)

    doc = json.loads(json.dumps(good))
    doc["products"].append(doc["products"][5])
    with pytest.raises(RingSchemaError, match="duplicate"):
        ring_from_dict(doc)

    doc = json.loads(json.dumps(good))
    doc["basis"][1]["name"] = "1"
    with pytest.raises(RingSchemaError):
        ring_from_dict(doc)

    doc = json.loads(json.dumps(good))
    doc["dimension"] = 5
    with pytest.raises(RingSchemaError):
        ring_from_dict(doc)

    doc = json.loads(json.dumps(good))
    doc["top"] = "x"
    with pytest.raises(RingSchemaError):
        ring_from_dict(doc)


def test_json_round_trip(tmp_path):
    R = make_cpm(2)
    path = tmp_path / "cp2.json"
    path.write_text(json.dumps(R.to_dict()))
    S = load_ring(path)
    assert S.basis_names == R.basis_names
    assert S.degrees == R.degrees
    assert S.structure_constants == R.structure_constants
    assert validate_ring(S).valid


def test_load_ring_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(RingSchemaError):
        load_ring(path)
