"""Shared fixtures: the running pair of path algebras, the gluing morphism
between them, and the triangular algebra they generate.

Session-scoped because construction revalidates associativity each time.
All objects are immutable, so sharing is safe.
"""

import pytest

from taurec.algebra import (
    AlgebraMorphism,
    Bimodule,
    bimodule_from_morphism,
    triangular_algebra,
)
from taurec.catalog import knit_ar_quiver
from taurec.quiver import QuiverPresentation, compile_quiver_algebra
from taurec.recollement import TriangularRecollement


@pytest.fixture(scope="session")
def alg_a2():
    """Path algebra of 1 --a--> 2 (dimension 3)."""
    q = QuiverPresentation(["1", "2"], [("a", "1", "2")], name="Lprime")
    return compile_quiver_algebra(q)


@pytest.fixture(scope="session")
def alg_a3z():
    """Path algebra of 3 --alpha--> 4 --beta--> 5 with beta*alpha = 0."""
    q = QuiverPresentation(
        ["3", "4", "5"],
        [("alpha", "3", "4"), ("beta", "4", "5")],
        relations=[[(1, ("alpha", "beta"))]],
        name="Ldouble",
    )
    return compile_quiver_algebra(q)


@pytest.fixture(scope="session")
def phi(alg_a2, alg_a3z):
    """The surjection alg_a3z -> alg_a2: 3,4 -> 1,2; 5 -> 0; alpha -> a; beta -> 0."""
    a_vec = alg_a2.basis_vector(alg_a2.basis_labels.index("a"))
    return AlgebraMorphism.from_generator_images(
        alg_a3z, alg_a2,
        {"3": "1", "4": "2", "5": None},
        {"alpha": a_vec, "beta": None},
    )


@pytest.fixture(scope="session")
def bimod(alg_a2, alg_a3z, phi):
    return bimodule_from_morphism(alg_a2, alg_a3z, phi)


@pytest.fixture(scope="session")
def tri(alg_a2, alg_a3z, bimod):
    """The dimension-11 triangular algebra on five vertices."""
    return triangular_algebra(alg_a2, alg_a3z, bimod)


@pytest.fixture(scope="session")
def knit_a2(alg_a2):
    """(quiver, catalog) for the two-vertex line."""
    return knit_ar_quiver(alg_a2)


@pytest.fixture(scope="session")
def knit_a3z(alg_a3z):
    return knit_ar_quiver(alg_a3z)


@pytest.fixture(scope="session")
def knit_tri(tri):
    """(quiver, catalog) for the glued five-vertex algebra: 15 nodes."""
    return knit_ar_quiver(tri.algebra)


@pytest.fixture(scope="session")
def rec(tri, knit_a2, knit_a3z, knit_tri):
    """The verified recollement of the five-vertex algebra."""
    return TriangularRecollement(
        tri, catalogs=(knit_a2[1], knit_a3z[1], knit_tri[1]))


@pytest.fixture(scope="session")
def rec_product(alg_a2, alg_a3z):
    """The recollement of the product algebra (zero bimodule)."""
    bundle = triangular_algebra(alg_a2, alg_a3z, Bimodule.zero(alg_a2, alg_a3z))
    return TriangularRecollement(bundle)
