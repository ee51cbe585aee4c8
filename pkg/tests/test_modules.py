"""Module calculus: homs, exact structure, covers, duality, tensor, and
the vertex bookkeeping that everything downstream leans on."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taurec.algebra import quotient_by_vertices
from taurec.errors import TaurecError, ValidationError
from taurec.linalg import Matrix
from taurec.modules import (
    Module,
    ModuleMap,
    cokernel,
    composition_factors,
    direct_sum,
    dualize,
    hom_basis,
    image,
    injective_module,
    is_generated_by,
    is_sincere,
    kernel,
    minimal_projective_presentation,
    projective_cover,
    projective_module,
    radical,
    regular_module,
    restrict_along,
    simple_module,
    socle,
    tensor_over,
    top,
    trace_of,
    view_over_quotient,
)


# -- construction ------------------------------------------------------


def test_action_must_respect_structure_constants(alg_a2):
    broken = [Matrix.zero(1, 1, 0) for _ in range(alg_a2.dim)]
    with pytest.raises(ValidationError):
        Module(alg_a2, broken)  # unit acts as zero


def test_module_map_must_intertwine(alg_a2):
    s1 = simple_module(alg_a2, "1")
    s2 = simple_module(alg_a2, "2")
    with pytest.raises(ValidationError):
        ModuleMap(s1, s2, Matrix.from_rows([[1]], 0))


def test_vertex_components_sum_to_dimension(tri):
    for v in tri.algebra.vertex_labels:
        m = projective_module(tri.algebra, v)
        assert sum(m.dim_vector()) == m.dim


# -- projectives, simples, injectives ----------------------------------


def test_projective_dim_vectors(alg_a2, alg_a3z):
    assert projective_module(alg_a2, "1").dim_vector() == (1, 1)
    assert projective_module(alg_a2, "2").dim_vector() == (0, 1)
    assert projective_module(alg_a3z, "3").dim_vector() == (1, 1, 0)
    assert projective_module(alg_a3z, "4").dim_vector() == (0, 1, 1)
    assert projective_module(alg_a3z, "5").dim_vector() == (0, 0, 1)


def test_triangular_projectives_glue_the_bimodule_on(tri):
    alg = tri.algebra
    assert projective_module(alg, "1").dim_vector() == (1, 1, 0, 0, 0)
    assert projective_module(alg, "2").dim_vector() == (0, 1, 0, 0, 0)
    assert projective_module(alg, "3").dim_vector() == (1, 1, 1, 1, 0)
    assert projective_module(alg, "4").dim_vector() == (0, 1, 0, 1, 1)
    assert projective_module(alg, "5").dim_vector() == (0, 0, 0, 0, 1)


def test_regular_module_is_the_sum_of_projectives(alg_a3z):
    reg = regular_module(alg_a3z)
    assert reg.dim == alg_a3z.dim
    total = [0] * 3
    for v in alg_a3z.vertex_labels:
        for i, d in enumerate(projective_module(alg_a3z, v).dim_vector()):
            total[i] += d
    assert tuple(total) == reg.dim_vector()


def test_injectives_over_the_line_algebras(alg_a2, alg_a3z):
    assert injective_module(alg_a2, "1").dim_vector() == (1, 0)   # = S(1)
    assert injective_module(alg_a2, "2").dim_vector() == (1, 1)   # = P(1)
    assert injective_module(alg_a3z, "3").dim_vector() == (1, 0, 0)
    assert injective_module(alg_a3z, "4").dim_vector() == (1, 1, 0)
    assert injective_module(alg_a3z, "5").dim_vector() == (0, 1, 1)


def test_socle_of_injective_is_the_matching_simple(alg_a3z):
    for v in alg_a3z.vertex_labels:
        soc, _ = socle(injective_module(alg_a3z, v))
        assert soc.dim_vector() == simple_module(alg_a3z, v).dim_vector()


# -- hom spaces --------------------------------------------------------


def test_hom_from_zero_is_empty(alg_a2):
    z = Module.zero(alg_a2)
    assert hom_basis(z, projective_module(alg_a2, "1")) == []


def test_hom_dims_over_the_two_vertex_line(alg_a2):
    p1 = projective_module(alg_a2, "1")
    assert len(hom_basis(p1, simple_module(alg_a2, "1"))) == 1
    assert len(hom_basis(p1, simple_module(alg_a2, "2"))) == 0
    assert len(hom_basis(p1, p1)) == 1


# -- kernels, images, cokernels ----------------------------------------


def _evaluation(alg):
    """The projection P(1) -> S(1) = top of P(1)."""
    p1 = projective_module(alg, "1")
    t, pr = top(p1)
    return p1, t, pr


def test_kernel_of_identity_is_zero(alg_a2):
    p1 = projective_module(alg_a2, "1")
    ker, _ = kernel(ModuleMap.identity(p1))
    assert ker.dim == 0


def test_cokernel_of_zero_map_is_the_target(alg_a2):
    p1 = projective_module(alg_a2, "1")
    z = Module.zero(alg_a2)
    cok, pr = cokernel(ModuleMap.zero(z, p1))
    assert cok.dim_vector() == p1.dim_vector()
    assert pr.rank() == p1.dim


def test_evaluation_map_exact_structure(alg_a2):
    p1, t, pr = _evaluation(alg_a2)
    ker, incl = kernel(pr)
    img, _ = image(pr)
    cok, _ = cokernel(pr)
    assert ker.dim_vector() == (0, 1)   # the radical S(2)
    assert img.dim_vector() == (1, 0)   # S(1)
    assert cok.dim == 0
    # rank-nullity, vertex by vertex
    for a, b, c in zip(ker.dim_vector(), img.dim_vector(), p1.dim_vector()):
        assert a + b == c
    assert incl.rank() == ker.dim


# -- top, radical, socle -----------------------------------------------


def test_top_and_radical_of_projectives(alg_a2, alg_a3z):
    t, _ = top(projective_module(alg_a2, "1"))
    r, _ = radical(projective_module(alg_a2, "1"))
    assert t.dim_vector() == (1, 0) and r.dim_vector() == (0, 1)
    t, _ = top(projective_module(alg_a3z, "3"))
    r, _ = radical(projective_module(alg_a3z, "3"))
    assert t.dim_vector() == (1, 0, 0) and r.dim_vector() == (0, 1, 0)


def test_radical_of_semisimple_module_vanishes(alg_a2):
    r, _ = radical(simple_module(alg_a2, "1"))
    assert r.dim == 0


# -- covers and presentations ------------------------------------------


def test_minimal_presentation_of_simples(alg_a2, alg_a3z):
    pres = minimal_projective_presentation(simple_module(alg_a2, "1"))
    assert pres.p0_vertices == ("1",)
    assert pres.p1_vertices == ("2",)
    pres = minimal_projective_presentation(simple_module(alg_a3z, "4"))
    assert pres.p0_vertices == ("4",)
    assert pres.p1_vertices == ("5",)


def test_presentation_of_a_projective_stops_immediately(alg_a3z):
    pres = minimal_projective_presentation(projective_module(alg_a3z, "4"))
    assert pres.p0_vertices == ("4",)
    assert pres.p1_module.dim == 0


def test_radical_of_glued_p4_is_projective(tri):
    # rad P(4) over the triangular algebra is P(2) ⊕ P(5)
    r, _ = radical(projective_module(tri.algebra, "4"))
    assert r.dim_vector() == (0, 1, 0, 0, 1)
    cover = projective_cover(r)
    assert sorted(cover.source._summand_vertices) == ["2", "5"]
    assert kernel(cover)[0].dim == 0


# -- duality -----------------------------------------------------------


def test_dualize_is_involutive_on_the_nose(alg_a2):
    p1 = projective_module(alg_a2, "1")
    assert dualize(dualize(p1)) is p1


def test_dualize_preserves_dimension(tri):
    for v in tri.algebra.vertex_labels:
        m = projective_module(tri.algebra, v)
        assert dualize(m).dim == m.dim
        assert sum(dualize(m).dim_vector()) == m.dim


# -- direct sums -------------------------------------------------------


def test_direct_sum_retractions(alg_a2):
    mods = [simple_module(alg_a2, "1"), projective_module(alg_a2, "1")]
    total, incls, projs = direct_sum(mods)
    assert total.dim_vector() == (2, 1)
    for m, i, pr in zip(mods, incls, projs):
        assert pr.compose(i).matrix == Matrix.identity(m.dim, 0)
    recomposed = None
    for i, pr in zip(incls, projs):
        part = i.compose(pr).matrix
        recomposed = part if recomposed is None else recomposed + part
    assert recomposed == Matrix.identity(total.dim, 0)


# -- trace and generation ----------------------------------------------


def test_trace_of_the_regular_module_is_everything(alg_a3z):
    reg = regular_module(alg_a3z)
    for v in alg_a3z.vertex_labels:
        m = injective_module(alg_a3z, v)
        sub, _ = trace_of(reg, m)
        assert sub.dim == m.dim


def test_trace_of_a_simple_with_no_maps_is_zero(alg_a2):
    sub, _ = trace_of(simple_module(alg_a2, "1"), projective_module(alg_a2, "1"))
    assert sub.dim == 0


def test_generation_is_an_epi_condition(alg_a2):
    p1 = projective_module(alg_a2, "1")
    s1 = simple_module(alg_a2, "1")
    assert is_generated_by(p1, s1)
    assert not is_generated_by(s1, p1)


# -- composition factors and sincerity ---------------------------------


def test_composition_factors_read_off_the_grading(tri):
    p3 = projective_module(tri.algebra, "3")
    assert composition_factors(p3) == {"1": 1, "2": 1, "3": 1, "4": 1}


def test_sincerity(tri):
    assert is_sincere(regular_module(tri.algebra))
    assert not is_sincere(projective_module(tri.algebra, "3"))


# -- restriction and quotient views ------------------------------------


def test_view_and_restrict_round_trip(alg_a3z):
    s4 = simple_module(alg_a3z, "4")
    viewed = view_over_quotient(s4, ["5"])
    assert viewed.dim_vector() == (0, 1)
    _, proj = quotient_by_vertices(alg_a3z, ["5"])
    back = restrict_along(proj, viewed)
    assert back.dim_vector() == (0, 1, 0)


def test_view_with_no_killed_vertices_keeps_the_algebra(alg_a3z):
    s4 = simple_module(alg_a3z, "4")
    viewed = view_over_quotient(s4, [])
    assert viewed.algebra == alg_a3z
    assert viewed.dim_vector() == s4.dim_vector()


def test_view_rejects_unannihilated_modules(alg_a3z):
    p4 = projective_module(alg_a3z, "4")  # nonzero at vertex 5
    with pytest.raises(TaurecError, match="nonzero component at vertex"):
        view_over_quotient(p4, ["5"])


# -- tensor products ---------------------------------------------------


def test_tensor_with_each_projective(bimod, alg_a3z):
    # M ⊗ P(v) = M·e_v: the bimodule columns over each vertex
    expected = {"3": (1, 1), "4": (0, 1), "5": (0, 0)}
    for v, dims in expected.items():
        res = tensor_over(bimod, projective_module(alg_a3z, v))
        assert res.module.dim_vector() == dims, v


def test_tensor_with_simples_and_the_regular_module(bimod, alg_a3z):
    assert tensor_over(bimod, simple_module(alg_a3z, "3")).module.dim_vector() == (1, 0)
    assert tensor_over(bimod, simple_module(alg_a3z, "4")).module.dim_vector() == (0, 1)
    assert tensor_over(bimod, regular_module(alg_a3z)).module.dim_vector() == (1, 2)


def test_tensor_right_exactness_on_a_cokernel(bimod, alg_a3z):
    # S(4) = coker(P(5) → P(4)); tensoring must give coker(M e5 → M e4)
    s4 = simple_module(alg_a3z, "4")
    res = tensor_over(bimod, s4)
    assert res.module.dim_vector() == (0, 1)


# -- randomized structure checks ---------------------------------------


def _random_cokernel(alg, mult_src, mult_tgt, coeffs):
    """A pseudorandom module: cokernel of a map between projective sums."""
    verts = alg.vertex_labels
    src_mods = [projective_module(alg, v) for v, k in zip(verts, mult_src)
                for _ in range(k)]
    tgt_mods = [projective_module(alg, v) for v, k in zip(verts, mult_tgt)
                for _ in range(k)]
    src, _, _ = direct_sum(src_mods, algebra=alg)
    tgt, _, _ = direct_sum(tgt_mods, algebra=alg)
    maps = hom_basis(src, tgt)
    mat = Matrix.zero(tgt.dim, src.dim, alg.p)
    for f, c in zip(maps, coeffs):
        mat = mat + f.matrix.scale(c)
    cok, _ = cokernel(ModuleMap(src, tgt, mat))
    return cok


@settings(max_examples=20, deadline=None)
@given(
    mult_src=st.lists(st.integers(0, 1), min_size=3, max_size=3),
    mult_tgt=st.lists(st.integers(0, 2), min_size=3, max_size=3),
    coeffs=st.lists(st.integers(-2, 2), min_size=12, max_size=12),
)
def test_duality_is_a_dimension_preserving_involution(alg_a3z, mult_src,
                                                      mult_tgt, coeffs):
    m = _random_cokernel(alg_a3z, mult_src, mult_tgt, coeffs)
    d = dualize(m)
    assert d.dim == m.dim
    assert dualize(d) is m


@settings(max_examples=20, deadline=None)
@given(
    mult_src=st.lists(st.integers(0, 1), min_size=3, max_size=3),
    mult_tgt=st.lists(st.integers(0, 2), min_size=3, max_size=3),
    coeffs=st.lists(st.integers(-2, 2), min_size=12, max_size=12),
)
def test_cover_kernels_sit_inside_the_radical(alg_a3z, mult_src, mult_tgt,
                                              coeffs):
    m = _random_cokernel(alg_a3z, mult_src, mult_tgt, coeffs)
    if m.dim == 0:
        return
    cover = projective_cover(m)   # asserts ker ⊆ rad internally
    assert cover.rank() == m.dim
    ker, _ = kernel(cover)
    assert ker.dim + m.dim == cover.source.dim
