"""Parsing of algebra/morphism/recollement definition files."""

import pytest

from taurec.defparse import parse_definition
from taurec.errors import DefinitionError

# The shipped example file, read once for the whole module.
EX51 = (
    'algebra "Lprime" {\n'
    '  field rational;\n'
    '  vertices 1 2;\n'
    '  arrow a 1 -> 2;\n'
    '}\n'
    'algebra "Ldouble" {\n'
    '  field rational;\n'
    '  vertices 3 4 5;\n'
    '  arrow alpha 3 -> 4;\n'
    '  arrow beta 4 -> 5;\n'
    '  relation beta*alpha;\n'
    '}\n'
    'morphism "phi" from "Ldouble" to "Lprime" {\n'
    '  vertex 3 -> 1;\n'
    '  vertex 4 -> 2;\n'
    '  vertex 5 -> 0;\n'
    '  arrow alpha -> a;\n'
    '  arrow beta -> 0;\n'
    '}\n'
    'recollement "ex51" {\n'
    '  left "Lprime";\n'
    '  right "Ldouble";\n'
    '  bimodule regular_twisted "phi";\n'
    '}\n'
)

# A commutative square with a scaled relation, used by coefficient tests.
SQUARE = (
    'algebra "Sq" {{\n'
    '  field {field};\n'
    '  vertices 1 2 3 4;\n'
    '  arrow a 1 -> 2;\n'
    '  arrow b 2 -> 4;\n'
    '  arrow c 1 -> 3;\n'
    '  arrow d 3 -> 4;\n'
    '  relation {relation};\n'
    '}}\n'
)


def _parse_square(relation, field="rational"):
    doc = parse_definition(SQUARE.format(field=field, relation=relation))
    return doc.algebra("Sq")


# -- whole-file parsing ------------------------------------------------


def test_the_shipped_example_file_parses():
    doc = parse_definition(EX51)
    assert set(doc.algebras) == {"Lprime", "Ldouble"}
    assert set(doc.morphisms) == {"phi"}
    assert set(doc.recollements) == {"ex51"}
    assert doc.algebra("Lprime").dim == 3
    assert doc.algebra("Ldouble").dim == 5


def test_the_recollement_block_records_its_pieces():
    rd = parse_definition(EX51).recollement("ex51")
    assert rd.left_name == "Lprime"
    assert rd.right_name == "Ldouble"
    assert rd.kind == "regular_twisted"
    assert rd.morphism_name == "phi"
    assert rd.bimodule.left is parse_definition  # placeholder, replaced below


def test_the_twisted_bimodule_connects_the_named_corners():
    doc = parse_definition(EX51)
    rd = doc.recollement("ex51")
    assert rd.bimodule.left is doc.algebra("Lprime")
    assert rd.bimodule.right is doc.algebra("Ldouble")
    assert rd.bimodule.dim == doc.algebra("Lprime").dim


def test_the_packaged_file_matches_the_inline_copy():
    from importlib import resources

    text = (resources.files("taurec") / "data" / "ex51.alg").read_text()
    doc = parse_definition(text)
    assert doc.algebra("Lprime").dim == 3
    assert doc.algebra("Ldouble").dim == 5
    assert doc.recollement("ex51").kind == "regular_twisted"


def test_empty_input_yields_an_empty_document():
    doc = parse_definition("")
    assert not doc.algebras
    assert not doc.morphisms
    assert not doc.recollements


def test_comments_and_whitespace_are_ignored():
    doc = parse_definition(
        "# a full-line comment\n"
        'algebra "A" {  # trailing comment\n'
        "  field rational; vertices 1; }\n"
    )
    assert doc.algebra("A").dim == 1


def test_zero_bimodule_recollements_need_no_morphism():
    doc = parse_definition(
        'algebra "A" { field rational; vertices 1; }\n'
        'algebra "B" { field rational; vertices 2; }\n'
        'recollement "R" { left "A"; right "B"; bimodule zero; }\n'
    )
    rd = doc.recollement("R")
    assert rd.kind == "zero"
    assert rd.morphism_name is None
    assert rd.bimodule.dim == 0


# -- relations and coefficients ----------------------------------------


def test_commutativity_relation_cuts_one_basis_path():
    # 4 vertices + 4 arrows + 2 parallel paths identified = dim 9.
    alg = _parse_square("b*a - d*c")
    assert alg.dim == 9


def test_fraction_coefficients_are_accepted():
    alg = _parse_square("1/2*b*a - 1/2*d*c")
    assert alg.dim == 9


def test_integer_coefficients_and_plus_signs_are_accepted():
    alg = _parse_square("2*b*a + 3*d*c")
    assert alg.dim == 9


def test_prime_fields_reduce_coefficients():
    # Over F_5 the coefficient 10 vanishes: only d*c is killed.
    alg = _parse_square("10*b*a + 1*d*c", field="fp 5")
    assert alg.p == 5
    assert alg.dim == 9


def test_paths_are_written_in_function_order():
    # beta*alpha means "alpha then beta"; alpha*beta does not compose.
    parse_definition(
        'algebra "A" { field rational; vertices 1 2 3;\n'
        "  arrow alpha 1 -> 2; arrow beta 2 -> 3; relation beta*alpha; }\n"
    )
    with pytest.raises(DefinitionError, match="non-composable"):
        parse_definition(
            'algebra "A" { field rational; vertices 1 2 3;\n'
            "  arrow alpha 1 -> 2; arrow beta 2 -> 3; relation alpha*beta; }\n"
        )


# -- rejected input, with source positions -----------------------------


def test_unknown_arrow_in_a_relation_is_located():
    with pytest.raises(DefinitionError) as err:
        parse_definition(
            'algebra "A" {\n'
            "  field rational;\n"
            "  vertices 1 2;\n"
            "  arrow a 1 -> 2;\n"
            "  relation b*a;\n"
            "}\n"
        )
    assert err.value.line == 5
    assert "unknown arrow 'b'" in str(err.value)


def test_non_parallel_relation_terms_are_rejected():
    # b*a runs 1 -> 4 but d alone runs 3 -> 4.
    with pytest.raises(DefinitionError, match="parallel"):
        _parse_square("b*a + d")


def test_single_arrow_relations_are_rejected():
    with pytest.raises(DefinitionError):
        parse_definition(
            'algebra "A" { field rational; vertices 1 2;\n'
            "  arrow a 1 -> 2; relation a; }\n"
        )


def test_arrows_must_use_declared_vertices():
    with pytest.raises(DefinitionError, match="unknown vertex"):
        parse_definition(
            'algebra "A" { field rational; vertices 1 2; arrow a 1 -> 9; }\n'
        )


def test_duplicate_arrow_labels_are_rejected():
    with pytest.raises(DefinitionError, match="duplicate"):
        parse_definition(
            'algebra "A" { field rational; vertices 1 2;\n'
            "  arrow a 1 -> 2; arrow a 2 -> 1; }\n"
        )


def test_duplicate_algebra_names_are_rejected():
    with pytest.raises(DefinitionError, match="duplicate"):
        parse_definition(
            'algebra "A" { field rational; vertices 1; }\n'
            'algebra "A" { field rational; vertices 2; }\n'
        )


def test_zero_denominators_are_rejected():
    with pytest.raises(DefinitionError):
        _parse_square("1/0*b*a")


def test_unterminated_blocks_are_rejected():
    with pytest.raises(DefinitionError):
        parse_definition('algebra "A" { field rational; vertices 1;\n')


def test_missing_algebras_raise_on_lookup():
    doc = parse_definition(EX51)
    with pytest.raises(DefinitionError, match="no algebra"):
        doc.algebra("nope")
    with pytest.raises(DefinitionError, match="no recollement"):
        doc.recollement("nope")


# -- morphism blocks ---------------------------------------------------


def test_morphisms_must_assign_every_source_vertex():
    with pytest.raises(DefinitionError, match="vertex"):
        parse_definition(
            'algebra "A" { field rational; vertices 1 2; arrow a 1 -> 2; }\n'
            'algebra "B" { field rational; vertices 1; }\n'
            'morphism "f" from "A" to "B" { vertex 1 -> 1; arrow a -> 0; }\n'
        )


def test_morphisms_check_their_endpoint_names():
    with pytest.raises(DefinitionError, match="no algebra"):
        parse_definition(
            'algebra "A" { field rational; vertices 1; }\n'
            'morphism "f" from "A" to "Missing" { vertex 1 -> 0; }\n'
        )


def test_structure_violating_images_are_rejected():
    # Sending a 1->2 to the idempotent at 1 breaks e2·a·e1 compatibility.
    with pytest.raises(DefinitionError, match="morphism .* rejected"):
        parse_definition(
            'algebra "A" { field rational; vertices 1 2; arrow a 1 -> 2; }\n'
            'algebra "B" { field rational; vertices 1; }\n'
            'morphism "f" from "A" to "B" {\n'
            "  vertex 1 -> 1; vertex 2 -> 1; arrow a -> 1; }\n"
        )


# -- recollement blocks ------------------------------------------------


def test_twisting_morphisms_must_run_right_to_left():
    # phi maps Ldouble to Lprime, so the corners cannot be swapped.
    text = EX51.replace('left "Lprime"', 'left "Ldouble"').replace(
        'right "Ldouble"', 'right "Lprime"')
    with pytest.raises(DefinitionError, match="must map"):
        parse_definition(text)


def test_recollements_check_their_morphism_name():
    text = EX51.replace('regular_twisted "phi"', 'regular_twisted "psi"')
    with pytest.raises(DefinitionError, match="psi"):
        parse_definition(text)


def test_recollements_require_all_three_entries():
    with pytest.raises(DefinitionError):
        parse_definition(
            'algebra "A" { field rational; vertices 1; }\n'
            'algebra "B" { field rational; vertices 2; }\n'
            'recollement "R" { left "A"; right "B"; }\n'
        )
