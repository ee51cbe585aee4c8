"""The AR translate and its consumers: transpose, extensions, decomposition,
isomorphism testing, and stable homs through injectives."""

import pytest

from taurec.algebra import opposite
from taurec.errors import ValidationError
from taurec.homological import (
    basic_version,
    decompose,
    ext1_basis,
    ext1_dim,
    extension_module,
    hom_through_injectives,
    injective_envelope,
    is_indecomposable,
    is_isomorphic,
    num_summands,
    tau,
    tau_inverse,
    transpose_module,
)
from taurec.linalg import Matrix
from taurec.modules import (
    Module,
    dim_vector,
    direct_sum,
    dualize,
    hom_basis,
    injective_module,
    projective_module,
    radical,
    simple_module,
)


def _catalog_a2(alg):
    return [projective_module(alg, "1"), projective_module(alg, "2"),
            simple_module(alg, "1")]


def _catalog_a3z(alg):
    return [projective_module(alg, v) for v in ("3", "4", "5")] + [
        simple_module(alg, "3"), simple_module(alg, "4")]


# -- the translate -----------------------------------------------------


def test_tau_kills_exactly_the_projectives(alg_a2, alg_a3z):
    for alg, cat, projs in (
        (alg_a2, _catalog_a2(alg_a2), 2),
        (alg_a3z, _catalog_a3z(alg_a3z), 3),
    ):
        killed = [m for m in cat if tau(m).dim == 0]
        assert len(killed) == projs
        for m in killed:
            pres_ok = m.dim_vector() in [
                projective_module(alg, v).dim_vector()
                for v in alg.vertex_labels
            ]
            assert pres_ok


def test_tau_inverse_kills_exactly_the_injectives(alg_a2, alg_a3z):
    for alg, cat in ((alg_a2, _catalog_a2(alg_a2)),
                     (alg_a3z, _catalog_a3z(alg_a3z))):
        inj_dims = {injective_module(alg, v).dim_vector()
                    for v in alg.vertex_labels}
        for m in cat:
            assert (tau_inverse(m).dim == 0) == (m.dim_vector() in inj_dims)


def test_translate_of_the_remote_simple(alg_a2):
    t = tau(simple_module(alg_a2, "1"))
    assert t.dim_vector() == (0, 1)          # τS(1) = S(2)
    assert tau_inverse(simple_module(alg_a2, "2")).dim_vector() == (1, 0)


def test_translate_over_the_zero_relation_line(alg_a3z):
    assert tau(simple_module(alg_a3z, "4")).dim_vector() == (0, 0, 1)
    assert tau(simple_module(alg_a3z, "3")).dim_vector() == (0, 1, 0)


def test_translate_of_glued_simples(tri):
    alg = tri.algebra
    s = {v: simple_module(alg, v) for v in alg.vertex_labels}
    assert tau(s["2"]).dim == 0 and tau(s["5"]).dim == 0   # projective simples
    assert tau(s["1"]).dim_vector() == (0, 1, 0, 1, 0)
    assert tau(s["3"]).dim_vector() == (1, 0, 1, 1, 0)
    assert tau(s["4"]).dim_vector() == (1, 1, 0, 1, 1)


def test_both_translate_routes_agree(alg_a2, alg_a3z, tri):
    cats = [_catalog_a2(alg_a2), _catalog_a3z(alg_a3z),
            [simple_module(tri.algebra, v) for v in tri.algebra.vertex_labels]]
    for cat in cats:
        for m in cat:
            assert dim_vector(tau(m)) == dim_vector(dualize(transpose_module(m)))


def test_translate_round_trip_off_the_projectives(alg_a2, tri):
    s1 = simple_module(alg_a2, "1")
    assert is_isomorphic(tau_inverse(tau(s1)), s1)
    g1 = simple_module(tri.algebra, "1")
    assert is_isomorphic(tau_inverse(tau(g1)), g1)


def test_translate_is_additive(alg_a2):
    s1 = simple_module(alg_a2, "1")
    both, _, _ = direct_sum([s1, s1])
    assert tau(both).dim_vector() == (0, 2)


def test_transpose_lands_on_the_opposite_side(alg_a2):
    tr = transpose_module(simple_module(alg_a2, "1"))
    assert tr.algebra == opposite(alg_a2)


# -- extensions --------------------------------------------------------


def test_ext_vanishes_from_projectives(alg_a3z):
    for v in ("3", "4", "5"):
        p = projective_module(alg_a3z, v)
        for w in ("3", "4", "5"):
            assert ext1_dim(p, simple_module(alg_a3z, w) if w != "5"
                            else projective_module(alg_a3z, w)) == 0


def test_the_unique_extension_of_the_simples(alg_a2):
    s1 = simple_module(alg_a2, "1")
    s2 = simple_module(alg_a2, "2")
    assert ext1_dim(s1, s2) == 1
    assert ext1_dim(s2, s1) == 0
    basis = ext1_basis(s1, s2)
    assert len(basis) == 1
    middle = extension_module(s1, s2, basis[0])
    assert middle.dim_vector() == (1, 1)
    assert is_indecomposable(middle)
    assert is_isomorphic(middle, projective_module(alg_a2, "1"))


def test_zero_cocycle_gives_the_split_extension(alg_a2):
    s1 = simple_module(alg_a2, "1")
    s2 = simple_module(alg_a2, "2")
    split = extension_module(s1, s2, [0])
    assert split.dim_vector() == (1, 1)
    assert num_summands(split) == 2


def test_cocycle_outside_the_computed_space_is_rejected(alg_a2):
    s1 = simple_module(alg_a2, "1")
    s2 = simple_module(alg_a2, "2")
    with pytest.raises(ValidationError, match="cocycle outside the computed space"):
        extension_module(s1, s2, [1, 2])


def test_ar_formula_across_small_catalogs(alg_a2, alg_a3z):
    for cat in (_catalog_a2(alg_a2), _catalog_a3z(alg_a3z)):
        for m in cat:
            tm = tau(m)
            for n in cat:
                stable = len(hom_basis(n, tm)) - len(hom_through_injectives(n, tm))
                assert ext1_dim(m, n) == stable


# -- decomposition -----------------------------------------------------


def test_simples_and_projectives_are_indecomposable(tri):
    for v in tri.algebra.vertex_labels:
        assert is_indecomposable(simple_module(tri.algebra, v))
        assert is_indecomposable(projective_module(tri.algebra, v))


def test_zero_module_has_no_summands(alg_a2):
    assert decompose(Module.zero(alg_a2)) == []
    assert not is_indecomposable(Module.zero(alg_a2))


def test_decompose_splits_a_square(alg_a2):
    s1 = simple_module(alg_a2, "1")
    both, _, _ = direct_sum([s1, s1])
    parts = decompose(both)
    assert len(parts) == 2
    assert all(p.module.dim_vector() == (1, 0) for p in parts)


def test_decompose_reassembles_the_module(alg_a2):
    mods = [simple_module(alg_a2, "1"), projective_module(alg_a2, "1"),
            simple_module(alg_a2, "2")]
    total, _, _ = direct_sum(mods)
    parts = decompose(total)
    assert len(parts) == 3
    for p in parts:
        assert p.project.compose(p.include).matrix == Matrix.identity(p.module.dim, 0)
    recomposed = None
    for p in parts:
        term = p.include.compose(p.project).matrix
        recomposed = term if recomposed is None else recomposed + term
    assert recomposed == Matrix.identity(total.dim, 0)


def test_decompose_radical_of_glued_p4(tri):
    r, _ = radical(projective_module(tri.algebra, "4"))
    dims = sorted(s.module.dim_vector() for s in decompose(r))
    assert dims == [(0, 0, 0, 0, 1), (0, 1, 0, 0, 0)]


# -- isomorphism tests -------------------------------------------------


def test_isomorphism_is_reflexive(alg_a2, tri):
    for m in (projective_module(alg_a2, "1"),
              projective_module(tri.algebra, "4")):
        assert is_isomorphic(m, m)


def test_distinct_simples_are_not_isomorphic(alg_a2):
    assert not is_isomorphic(simple_module(alg_a2, "1"),
                             simple_module(alg_a2, "2"))


def test_same_dim_vector_is_not_enough(tri):
    alg = tri.algebra
    p4 = projective_module(alg, "4")
    loose, _, _ = direct_sum([simple_module(alg, v) for v in ("2", "4", "5")])
    assert loose.dim_vector() == p4.dim_vector()
    assert not is_isomorphic(p4, loose)


def test_basic_version_collapses_repeats(alg_a2):
    mods = [simple_module(alg_a2, "1"), simple_module(alg_a2, "1"),
            simple_module(alg_a2, "2")]
    total, _, _ = direct_sum(mods)
    b = basic_version(total)
    assert b.dim_vector() == (1, 1)
    assert num_summands(b) == 2


# -- stable homs -------------------------------------------------------


def test_injective_envelope_of_the_socle_simple(alg_a2):
    env = injective_envelope(simple_module(alg_a2, "2"))
    assert env.source.dim_vector() == (0, 1)
    assert env.target.dim_vector() == (1, 1)   # I(2) = P(1)
    assert env.rank() == 1


def test_everything_factors_through_an_injective_source(alg_a2):
    s1 = simple_module(alg_a2, "1")   # = I(1)
    assert len(hom_through_injectives(s1, s1)) == len(hom_basis(s1, s1)) == 1


def test_stable_endomorphisms_of_the_socle_simple(alg_a2):
    s2 = simple_module(alg_a2, "2")
    # Hom(S2, S2) is one-dimensional and nothing factors through P(1)
    assert len(hom_basis(s2, s2)) == 1
    assert hom_through_injectives(s2, s2) == []
