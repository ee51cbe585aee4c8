"""Quiver presentations and compilation to structure-constant algebras."""

import pytest

from taurec.errors import CompileError, DefinitionError
from taurec.quiver import QuiverPresentation, compile_quiver_algebra


def test_two_vertex_line_has_dimension_three(alg_a2):
    assert alg_a2.dim == 3
    assert set(alg_a2.basis_labels) == {"e_1", "e_2", "a"}
    assert alg_a2.vertex_labels == ("1", "2")


def test_three_vertex_line_with_zero_relation_has_dimension_five(alg_a3z):
    # the composite beta*alpha is killed, leaving 3 trivial paths + 2 arrows
    assert alg_a3z.dim == 5
    assert set(alg_a3z.basis_labels) == {"e_3", "e_4", "e_5", "alpha", "beta"}


def test_single_vertex_is_the_field():
    alg = compile_quiver_algebra(QuiverPresentation(["x"], []))
    assert alg.dim == 1
    assert alg.is_semisimple()


def test_three_vertex_line_without_relation_has_dimension_six():
    q = QuiverPresentation(
        ["3", "4", "5"], [("alpha", "3", "4"), ("beta", "4", "5")]
    )
    alg = compile_quiver_algebra(q)
    assert alg.dim == 6
    assert "beta*alpha" in alg.basis_labels


def test_product_convention_is_function_order(alg_a3z):
    # beta*alpha means "alpha then beta"; alpha*beta is not composable
    al = alg_a3z.basis_vector(alg_a3z.basis_labels.index("alpha"))
    be = alg_a3z.basis_vector(alg_a3z.basis_labels.index("beta"))
    assert alg_a3z.mult_vec(be, al) == alg_a3z.zero()  # relation
    assert alg_a3z.mult_vec(al, be) == alg_a3z.zero()  # non-composable


def test_trivial_paths_are_the_vertex_idempotents(alg_a2):
    e1 = alg_a2.idempotent("1")
    assert e1 == alg_a2.basis_vector(alg_a2.basis_labels.index("e_1"))
    assert alg_a2.mult_vec(e1, e1) == e1


def test_loop_with_square_zero_relation():
    q = QuiverPresentation(["v"], [("x", "v", "v")], relations=[[(1, ("x", "x"))]])
    alg = compile_quiver_algebra(q)
    assert alg.dim == 2


def test_loop_without_relation_is_detected_infinite():
    q = QuiverPresentation(["v"], [("x", "v", "v")])
    with pytest.raises(CompileError):
        compile_quiver_algebra(q, length_cap=16)


def test_commutative_square_identifies_the_two_diagonals():
    q = QuiverPresentation(
        ["1", "2", "3", "4"],
        [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        relations=[[(1, ("a", "b")), (-1, ("c", "d"))]],
    )
    alg = compile_quiver_algebra(q)
    # 4 trivial + 4 arrows + one length-2 class (the two composites agree)
    assert alg.dim == 9
    ab = [alg.basis_meta[lab]["arrows"] for lab in alg.basis_labels]
    assert (("a", "b") in ab) != (("c", "d") in ab)


def test_relation_terms_must_be_composable():
    with pytest.raises(DefinitionError):
        QuiverPresentation(["1", "2"], [("a", "1", "2")],
                           relations=[[(1, ("a", "a"))]])


def test_relation_terms_must_be_parallel():
    q = [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "1")]
    with pytest.raises(DefinitionError):
        QuiverPresentation(["1", "2", "3"], q,
                           relations=[[(1, ("a", "b")), (1, ("a", "c"))]])


def test_relation_terms_must_have_length_at_least_two():
    with pytest.raises(DefinitionError):
        QuiverPresentation(["1", "2"], [("a", "1", "2")],
                           relations=[[(1, ("a",))]])


def test_duplicate_labels_rejected():
    with pytest.raises(DefinitionError):
        QuiverPresentation(["1", "1"], [])
    with pytest.raises(DefinitionError):
        QuiverPresentation(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])


def test_prime_field_compile():
    q = QuiverPresentation(["1", "2"], [("a", "1", "2")], p=5)
    alg = compile_quiver_algebra(q)
    assert alg.dim == 3 and alg.p == 5
    assert alg.radical().cols == 1


def test_basis_meta_records_travel_order(alg_a3z):
    meta = alg_a3z.basis_meta["beta"]
    assert meta["source"] == "4" and meta["target"] == "5"
    assert meta["arrows"] == ("beta",)
