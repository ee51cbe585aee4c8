"""Knitting the AR quiver, catalog verification, and DOT export."""

import pytest

from taurec.catalog import (
    ARQuiver,
    IndCatalog,
    export_dot,
    knit_ar_quiver,
    load_catalog,
    verify_catalog,
)
from taurec.errors import KnittingError
from taurec.homological import tau_inverse
from taurec.modules import projective_module, simple_module

# Shorthand for the fifteen glued indecomposables, keyed by dim vector.
GLUED_NAMES = {
    (0, 0, 0, 0, 1): "0P5", (0, 1, 0, 1, 0): "S2S4", (1, 0, 0, 0, 0): "S10",
    (0, 0, 1, 1, 0): "0P3", (0, 1, 0, 1, 1): "S2P4", (1, 1, 0, 1, 0): "P1S4",
    (1, 1, 1, 1, 0): "P1P3", (1, 0, 1, 1, 0): "S1P3", (0, 0, 1, 0, 0): "0S3",
    (0, 1, 0, 0, 0): "S20", (1, 1, 0, 1, 1): "P1P4", (0, 0, 0, 1, 0): "0S4",
    (1, 0, 1, 0, 0): "S1S3", (1, 1, 0, 0, 0): "P10", (0, 0, 0, 1, 1): "0P4",
}

GLUED_ARROWS = [
    ("0P5", "S2P4"), ("S20", "S2P4"), ("S20", "P10"), ("S2P4", "S2S4"),
    ("S2P4", "P1P4"), ("P10", "P1P4"), ("S2S4", "P1S4"), ("P1P4", "P1S4"),
    ("P1P4", "0P4"), ("0P4", "0S4"), ("P1S4", "S10"), ("P1S4", "P1P3"),
    ("P1S4", "0S4"), ("0S4", "S1P3"), ("P1P3", "S1P3"), ("S10", "S1P3"),
    ("S1P3", "0P3"), ("S1P3", "S1S3"), ("S1S3", "0S3"), ("0P3", "0S3"),
]


def _ids_by_name(cat):
    return {GLUED_NAMES[m.dim_vector()]: i for i, m in enumerate(cat.modules)}


# -- knitting ----------------------------------------------------------


def test_two_vertex_line_has_three_indecomposables(knit_a2):
    quiver, cat = knit_a2
    assert len(cat) == 3
    assert sorted(cat.dim_vectors()) == [(0, 1), (1, 0), (1, 1)]
    assert len(quiver.arrows) == 2


def test_zero_relation_line_has_five_indecomposables(knit_a3z):
    _, cat = knit_a3z
    assert len(cat) == 5
    assert sorted(cat.dim_vectors()) == [
        (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0)]


def test_glued_algebra_has_fifteen_indecomposables(knit_tri):
    _, cat = knit_tri
    assert len(cat) == 15
    assert sorted(cat.dim_vectors()) == sorted(GLUED_NAMES)


def test_glued_arrow_set_is_exactly_the_twenty_meshes(knit_tri):
    quiver, cat = knit_tri
    ids = _ids_by_name(cat)
    want = {(ids[a], ids[b]) for a, b in GLUED_ARROWS}
    assert set(quiver.arrows) == want
    assert all(mult == 1 for mult in quiver.arrows.values())


def test_glued_translate_links(knit_tri):
    _, cat = knit_tri
    ids = _ids_by_name(cat)
    assert cat.tau_table[ids["S2S4"]] == ids["0P5"]
    assert cat.tau_table[ids["S1P3"]] == ids["P1S4"]
    assert cat.tau_table[ids["S1S3"]] == ids["0S4"]
    assert cat.tau_table[ids["0S3"]] == ids["S1P3"]
    for name in ("S20", "0P5", "P10", "S2P4", "P1P3"):
        assert cat.tau_table[ids[name]] is None


def test_glued_projective_and_injective_ids(knit_tri):
    _, cat = knit_tri
    ids = _ids_by_name(cat)
    assert sorted(cat.projective_ids) == sorted(
        ids[k] for k in ("S20", "0P5", "P10", "S2P4", "P1P3"))
    assert sorted(cat.injective_ids) == sorted(
        ids[k] for k in ("S1S3", "P1P3", "0S3", "0P3", "0P4"))


def test_mesh_dimension_identity_at_every_translated_node(knit_a2, knit_a3z,
                                                          knit_tri):
    for quiver, cat in (knit_a2, knit_a3z, knit_tri):
        injective = set(cat.injective_ids)
        for i, m in enumerate(cat.modules):
            if i in injective:
                continue
            middle = sum(mult * cat.modules[t].dim
                         for t, mult in quiver.successors(i))
            assert m.dim + tau_inverse(m).dim == middle


def test_knitting_respects_the_node_limit(tri):
    with pytest.raises(KnittingError, match="likely representation-infinite"):
        knit_ar_quiver(tri.algebra, max_nodes=6)


def test_knitting_respects_the_dimension_cap(tri):
    with pytest.raises(KnittingError, match="likely representation-infinite"):
        knit_ar_quiver(tri.algebra, max_dim=2)


# -- verification ------------------------------------------------------


def test_knitted_catalogs_verify_clean(knit_a2, knit_a3z, knit_tri):
    for _, cat in (knit_a2, knit_a3z, knit_tri):
        report = verify_catalog(cat)
        assert report.ok, report


def test_duplicated_entry_is_reported(alg_a2):
    p1 = projective_module(alg_a2, "1")
    cat, report = load_catalog(alg_a2, [p1, p1])
    assert not report.ok
    assert "pairwise-noniso" in report.failed_checks


def test_missing_injective_is_reported(alg_a2):
    # both projectives but not the injective S(1)
    mods = [projective_module(alg_a2, "1"), projective_module(alg_a2, "2")]
    cat, report = load_catalog(alg_a2, mods)
    assert not report.ok
    assert report.failed_checks == {"injectives-present"}


def test_loaded_full_catalog_passes(alg_a3z, knit_a3z):
    _, knitted = knit_a3z
    cat, report = load_catalog(alg_a3z, knitted.modules)
    assert report.ok, report
    assert len(cat) == 5


def test_decomposable_entry_is_reported(alg_a2):
    from taurec.modules import direct_sum

    s1 = simple_module(alg_a2, "1")
    both, _, _ = direct_sum([s1, s1])
    _, report = load_catalog(alg_a2, [both])
    assert "indecomposable" in report.failed_checks


# -- export ------------------------------------------------------------


def test_dot_export_of_the_two_vertex_line(knit_a2):
    quiver, _ = knit_a2
    dot = export_dot(quiver)
    assert dot.startswith("digraph AR {")
    assert dot.count('label="m') == 3
    assert dot.count("->") == 3           # two mesh arrows + one dashed
    assert dot.count("style=dashed") == 1


def test_dot_export_of_the_glued_quiver(knit_tri):
    quiver, _ = knit_tri
    dot = export_dot(quiver)
    assert dot.count('label="m') == 15
    assert dot.count("style=dashed") == 10   # one per non-projective


def test_dot_export_of_an_empty_quiver(alg_a2):
    cat = IndCatalog(alg_a2, [])
    dot = export_dot(ARQuiver(cat, {}))
    assert dot == "digraph AR {\n  rankdir=LR;\n}\n"
