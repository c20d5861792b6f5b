from __future__ import annotations

import numpy as np
import pytest

from artloc.algebra import (
    EdimTooSmallError,
    LocalAlgebra,
    NotLocalError,
    check_axioms,
    from_presentation,
    idealization,
    quotient_ring,
    tensor_product,
)
from artloc.catalog import dual_numbers, make_ring
from artloc.modules import matlis_dual, regular_module
from artloc.polyparse import InfiniteDimensionError, parse_polynomial

from oracles import hom_dim_kron, quotient_dim


def test_example1_invariants(example1):
    inv = example1.invariants()
    assert inv.length == 6
    assert inv.edim == 4
    assert inv.hilbert == (1, 4, 1)
    assert inv.socle_dim == 1
    assert inv.top_socle_degree == 2
    assert example1.labels == ("1", "x", "y", "z", "w", "yw")


def test_example1_classification(example1):
    cls = example1.classify()
    assert not cls.is_field
    assert not cls.is_hypersurface
    assert cls.is_gorenstein
    # length - edim = 2 and m^2 != 0, so the ring counts as stretched
    assert cls.is_stretched


def test_example1_multiplication_table(example1):
    x = example1.element_from_string("x")
    z = example1.element_from_string("z")
    yw = example1.element_from_string("yw")
    assert (example1.mult(x, z) == yw).all()
    assert not example1.mult(z, z).any()
    assert not example1.mult(x, yw).any()


def test_example1_annihilator_is_x_y_w(example1):
    x = example1.element_from_string("x")
    want = example1.ideal(
        [x, example1.element_from_string("y"), example1.element_from_string("w")]
    )
    assert example1.annihilator(x) == want
    assert want.dim == 4


def test_example1_socle_is_spanned_by_yw(example1):
    soc = example1.socle()
    assert soc.dim == 1
    assert soc.contains(example1.element_from_string("yw"))


def test_colon_ideal_by_ideal(example1):
    x = example1.element_from_string("x")
    m = example1.maxideal()
    # (0 : m) computed through colon agrees with the socle
    assert example1.colon(example1.zero_ideal(), m) == example1.socle()
    assert example1.colon(example1.principal_ideal(x), x).contains(example1.unit())


def test_maxideal_powers_chain(example1):
    powers = example1.maxideal_powers()
    assert [pw.dim for pw in powers] == [6, 5, 1, 0]
    assert powers[2].contains(example1.element_from_string("yw"))


def test_ideal_operations(example1):
    x = example1.element_from_string("x")
    y = example1.element_from_string("y")
    ix, iy = example1.principal_ideal(x), example1.principal_ideal(y)
    assert ix.dim == 2  # x and xz = yw
    assert iy.dim == 2  # y and yw
    assert ix.sum(iy).dim == 3
    assert ix.intersection(iy).dim == 1
    assert ix.product(iy).is_zero()
    assert ix.power(2).is_zero()


def test_stretched_ring_profile(stretched):
    inv = stretched.invariants()
    assert inv.length == 6
    assert inv.edim == 3
    assert inv.hilbert == (1, 3, 1, 1)
    assert inv.socle_dim == 1
    cls = stretched.classify()
    assert cls.is_gorenstein and cls.is_stretched
    x = stretched.element_from_string("x")
    cube = stretched.element_power(x, 3)
    assert (cube == stretched.element_from_string("y^2")).all()
    assert (cube == stretched.element_from_string("z^2")).all()


def test_orthogonal_pair_search(example1, pair, ci, dual):
    for A in (example1, pair):
        found = A.find_orthogonal_generator_pair()
        assert found is not None
        x, y = found
        assert not A.mult(x, y).any()
        assert not A.maxideal().power(2).contains(x)
        assert not A.maxideal().power(2).contains(y)
    assert ci.find_orthogonal_generator_pair() is None
    with pytest.raises(EdimTooSmallError):
        dual.find_orthogonal_generator_pair()


def test_check_axioms_accepts_corpus_rings(example1, stretched, pair):
    for A in (example1, stretched, pair):
        assert check_axioms(A) == []


def test_check_axioms_flags_tampered_table(pair):
    table = pair.table.copy()
    table[1, 2] = pair.basis_vector(0)  # make x*y a unit: breaks ideal closure
    with pytest.raises(NotLocalError):
        LocalAlgebra(pair.p, table, pair.labels)
    bad = LocalAlgebra(pair.p, table, pair.labels, validate=False)
    problems = check_axioms(bad)
    assert problems
    assert any("e_1" in msg or "span" in msg for msg in problems)


def test_from_presentation_rejects_non_primary_ideals():
    rels = [parse_polynomial("x^2", ("x", "y"), 2)]
    with pytest.raises((InfiniteDimensionError, NotLocalError)):
        from_presentation(("x", "y"), rels)


def test_from_presentation_rejects_unit_ideal():
    rels = [parse_polynomial("x+1", ("x",), 2), parse_polynomial("x^2", ("x",), 2)]
    with pytest.raises(NotLocalError):
        from_presentation(("x",), rels)


def test_element_from_string_respects_relations(example1):
    v = example1.element_from_string("xz + x")
    assert (v == (example1.element_from_string("yw") + example1.element_from_string("x")) % 2).all()
    assert example1.render_element(v) == "x + yw"
    assert example1.render_element(example1.zero()) == "0"


def test_render_element_with_coefficients(stretched):
    v = stretched.element_from_string("2x + z^2")
    assert stretched.render_element(v) == "2x + z^2"


def test_idealization_of_injective_hull(pair):
    hull = matlis_dual(regular_module(pair))
    A = idealization(pair, hull.action)
    inv = A.invariants()
    assert inv.length == 6
    assert inv.hilbert == (1, 4, 1)
    assert A.classify().is_gorenstein
    assert check_axioms(A) == []


def test_tensor_product_of_dual_numbers(ci):
    T = tensor_product(dual_numbers(2, "x"), dual_numbers(2, "y"))
    assert check_axioms(T) == []
    assert T.invariants() == ci.invariants()
    assert T.classify() == ci.classify()


def test_tensor_product_requires_matching_prime():
    with pytest.raises(ValueError):
        tensor_product(dual_numbers(2), dual_numbers(3))


def test_quotient_ring_of_example1(example1):
    x = example1.element_from_string("x")
    qr = quotient_ring(example1, example1.principal_ideal(x))
    assert qr.algebra.dim == 4
    assert qr.algebra.labels == ("[1]", "[y]", "[z]", "[w]")
    assert check_axioms(qr.algebra) == []
    # projection then lift is the identity on the quotient
    assert ((qr.proj.array @ qr.lift.array) % 2 == np.eye(4, dtype=np.int64)).all()


def test_quotient_ring_rejects_unit_ideal(example1):
    with pytest.raises(ValueError):
        quotient_ring(example1, example1.unit_ideal())


def test_quotient_dims_against_truncation_oracle():
    cases = [
        (["x^2", "xy", "y^2"], [{(2, 0): 1}, {(1, 1): 1}, {(0, 2): 1}], ("x", "y"), 2),
        (["x^3", "x^2y^2", "y^3"], [{(3, 0): 1}, {(2, 2): 1}, {(0, 3): 1}], ("x", "y"), 2),
        (["x^2+y^2", "x^3"], [{(2, 0): 1, (0, 2): 1}, {(3, 0): 1}], ("x", "y"), 3),
    ]
    for texts, dicts, variables, p in cases:
        A = make_ring(list(variables), texts, p)
        assert A.dim == quotient_dim(dicts, len(variables), p)


def test_hom_dim_kron_oracle_on_regular_module(pair):
    R = regular_module(pair)
    # End(R) = R for the regular module
    assert hom_dim_kron(R.action, R.action, pair.p) == pair.dim
