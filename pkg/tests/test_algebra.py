"""Structure-constant algebras: validation, radicals, quotients, opposites,
bimodules, and the triangular construction."""

import pytest

from taurec.algebra import (
    AlgebraMorphism,
    Bimodule,
    FdAlgebra,
    _quotient_by_ideal,
    algebra_radical,
    bimodule_from_morphism,
    opposite,
    quotient_by_vertices,
    triangular_algebra,
)
from taurec.errors import TaurecError, ValidationError
from taurec.linalg import Matrix, same_subspace
from taurec.quiver import QuiverPresentation, compile_quiver_algebra


def _span_of_labels(alg, labels):
    cols = [alg.basis_vector(alg.basis_labels.index(lab)) for lab in labels]
    return Matrix.from_cols(cols, alg.p) if cols else Matrix.zero(alg.dim, 0, alg.p)


# -- radical -----------------------------------------------------------


def test_radical_of_semisimple_algebra_is_zero():
    alg = compile_quiver_algebra(QuiverPresentation(["1", "2"], []))
    assert algebra_radical(alg).cols == 0


def test_radical_is_the_arrow_span(alg_a2, alg_a3z):
    assert same_subspace(algebra_radical(alg_a2), _span_of_labels(alg_a2, ["a"]))
    assert same_subspace(
        algebra_radical(alg_a3z), _span_of_labels(alg_a3z, ["alpha", "beta"])
    )


def test_radical_quotient_is_semisimple(alg_a2, alg_a3z, tri):
    for alg in (alg_a2, alg_a3z, tri.algebra):
        rad = algebra_radical(alg)
        semis, _ = _quotient_by_ideal(alg, rad, alg.vertex_labels)
        assert algebra_radical(semis).cols == 0


def test_radical_generators_of_line_algebras(alg_a3z):
    gens = alg_a3z.radical_generators()
    assert len(gens) == 2  # alpha and beta; rad^2 = 0 here


# -- construction validation -------------------------------------------


def test_broken_associativity_rejected(alg_a2):
    mult = [[list(vec) for vec in row] for row in alg_a2._mult]
    i = alg_a2.basis_labels.index("a")
    mult[i][i][0] = 1  # a*a := e_1, breaking associativity with the idempotents
    with pytest.raises(ValidationError):
        FdAlgebra(alg_a2.basis_labels, mult, alg_a2._idem,
                  alg_a2.vertex_labels, p=alg_a2.p)


def test_non_primitive_idempotent_rejected(alg_a2):
    # one idempotent for both vertices: e_1 + e_2 is not primitive
    e = [alg_a2.unit()]
    with pytest.raises(ValidationError):
        FdAlgebra(alg_a2.basis_labels, alg_a2._mult, e, ["w"], p=alg_a2.p)


# -- quotients ---------------------------------------------------------


def test_quotient_by_no_vertices_is_identity(alg_a3z):
    q, proj = quotient_by_vertices(alg_a3z, [])
    assert q == alg_a3z
    assert proj.is_unital


def test_quotient_of_line_by_source_vertex(alg_a2):
    q, _ = quotient_by_vertices(alg_a2, ["1"])
    assert q.dim == 1 and q.vertex_labels == ("2",)


def test_quotient_of_zero_relation_line_by_last_vertex(alg_a3z, alg_a2):
    q, proj = quotient_by_vertices(alg_a3z, ["5"])
    assert q.dim == 3
    assert q.vertex_labels == ("3", "4")
    # the surviving arrow alpha still multiplies like the length-one arrow
    al = q.basis_vector(q.basis_labels.index("alpha"))
    assert q.mult_vec(al, al) == q.zero()
    # projection is a surjective algebra map
    assert proj.matrix.rank() == q.dim


def test_quotient_by_all_vertices_is_an_error(alg_a2):
    with pytest.raises(TaurecError):
        quotient_by_vertices(alg_a2, ["1", "2"])


# -- opposite ----------------------------------------------------------


def test_opposite_is_involutive(alg_a3z):
    assert opposite(opposite(alg_a3z)) == alg_a3z


def test_opposite_reverses_products(alg_a2):
    op = opposite(alg_a2)
    a = alg_a2.basis_vector(alg_a2.basis_labels.index("a"))
    e1 = alg_a2.idempotent("1")
    # in the original, a·e_1 = a (a starts at vertex 1); reversed in the opposite
    assert alg_a2.mult_vec(a, e1) == a
    assert op.mult_vec(e1, a) == a
    assert op.mult_vec(a, e1) == op.zero()


def test_opposite_of_commutative_algebra_is_equal():
    alg = compile_quiver_algebra(
        QuiverPresentation(["v"], [("x", "v", "v")], relations=[[(1, ("x", "x"))]])
    )
    assert opposite(alg) == alg


# -- morphisms and bimodules -------------------------------------------


def test_morphism_images(phi, alg_a2, alg_a3z):
    assert phi.is_unital
    e3 = alg_a3z.idempotent("3")
    assert phi.apply(e3) == alg_a2.idempotent("1")
    e5 = alg_a3z.idempotent("5")
    assert phi.apply(e5) == alg_a2.zero()


def test_morphism_must_kill_relations(alg_a3z):
    free = compile_quiver_algebra(
        QuiverPresentation(["3", "4", "5"],
                           [("alpha", "3", "4"), ("beta", "4", "5")])
    )
    al = free.basis_vector(free.basis_labels.index("alpha"))
    be = free.basis_vector(free.basis_labels.index("beta"))
    with pytest.raises(ValidationError):
        AlgebraMorphism.from_generator_images(
            alg_a3z, free, {"3": "3", "4": "4", "5": "5"},
            {"alpha": al, "beta": be},
        )


def test_identity_morphism_gives_regular_bimodule(alg_a2):
    ident = AlgebraMorphism(alg_a2, alg_a2, Matrix.identity(alg_a2.dim, alg_a2.p))
    reg = bimodule_from_morphism(alg_a2, alg_a2, ident)
    assert reg.dim == alg_a2.dim
    a = alg_a2.basis_vector(alg_a2.basis_labels.index("a"))
    assert reg.act_left(a) == alg_a2.left_mult_matrix(a)
    assert reg.act_right(a) == alg_a2.right_mult_matrix(a)


def test_twisted_bimodule_kills_the_missing_vertex(bimod, alg_a3z):
    e5 = alg_a3z.idempotent("5")
    assert bimod.act_right(e5).is_zero()


def test_non_unital_morphism_rejected_for_bimodules(alg_a2, alg_a3z):
    zero_phi = AlgebraMorphism.from_generator_images(
        alg_a3z, alg_a2,
        {"3": None, "4": None, "5": None}, {"alpha": None, "beta": None},
    )
    assert not zero_phi.is_unital
    with pytest.raises(ValidationError):
        bimodule_from_morphism(alg_a2, alg_a3z, zero_phi)


# -- triangular algebra ------------------------------------------------


def test_triangular_dimension_is_additive(tri, alg_a2, alg_a3z, bimod):
    assert tri.algebra.dim == alg_a2.dim + bimod.dim + alg_a3z.dim == 11


def test_triangular_vertices_are_the_disjoint_union(tri):
    assert tri.algebra.vertex_labels == ("1", "2", "3", "4", "5")
    assert len(tri.algebra.vertex_labels) == 2 + 3


def test_triangular_with_zero_bimodule_is_the_product(alg_a2, alg_a3z):
    z = Bimodule.zero(alg_a2, alg_a3z)
    t = triangular_algebra(alg_a2, alg_a3z, z)
    assert t.algebra.dim == alg_a2.dim + alg_a3z.dim
    # cross products vanish
    x = t.embed_left(alg_a2.basis_vector(2))
    y = t.embed_right(alg_a3z.basis_vector(3))
    assert t.algebra.mult_vec(x, y) == t.algebra.zero()
    assert t.algebra.mult_vec(y, x) == t.algebra.zero()


def test_triangular_multiplication_uses_the_actions(tri, alg_a2, alg_a3z, bimod):
    # a · m picks out the left action, m · c the right action
    a = tri.embed_left(alg_a2.basis_vector(alg_a2.basis_labels.index("a")))
    alpha = tri.embed_right(
        alg_a3z.basis_vector(alg_a3z.basis_labels.index("alpha")))
    # a · m:e_1 = "e_1 then a" = a in the middle part
    m_e1 = tri.embed_m(alg_a2.idempotent("1"))
    left = tri.algebra.mult_vec(a, m_e1)
    assert tri.part_m(left) == alg_a2.basis_vector(alg_a2.basis_labels.index("a"))
    # m:e_2 · alpha = e_2 · phi(alpha) = e_2 · a = a
    m_e2 = tri.embed_m(alg_a2.idempotent("2"))
    right = tri.algebra.mult_vec(m_e2, alpha)
    assert tri.part_m(right) == alg_a2.basis_vector(alg_a2.basis_labels.index("a"))
    # the lower-triangular cross products vanish
    assert tri.algebra.mult_vec(alpha, m_e1) == tri.algebra.zero()


def test_triangular_radical_dimension(tri):
    # rad(Lambda) = rad(A) + M + rad(C): 1 + 3 + 2
    assert algebra_radical(tri.algebra).cols == 6
