"""AR translate, extensions, and direct-sum decomposition.

Everything here sits on top of minimal projective presentations.  The
translate τ is computed as the kernel of the Nakayama image ν(p1) of the
presentation map; the transpose/dual route ``dualize(transpose_module(M))``
is kept as an independent second path so the two can be cross-checked.
"""

from collections import namedtuple
from fractions import Fraction

from sympy import Poly, Rational, symbols

from taurec.algebra import (FdAlgebra, assert_family_nilpotent,
                            family_radical_coords, opposite)
from taurec.errors import (InconclusiveError, InternalConsistencyError,
                           ValidationError)
from taurec.linalg import (Matrix, column_space_basis, hstack, kernel_basis,
                           solve, subspace_contains)
from taurec.modules import (Module, ModuleMap, direct_sum, dualize,
                            dualize_map, hom_basis,
                            injective_module, kernel, cokernel,
                            minimal_projective_presentation, projective_cover,
                            projective_module)

_T = symbols("t")


# --------------------------------------------------------------------------
# the Nakayama functor on presentation maps


def _op_component_matrix(alg: FdAlgebra, x, pw_op: Module, pu_op: Module) -> Matrix:
    """Matrix of z ↦ x·z : P(w) over the opposite algebra → P(u) over it.

    ``x`` is an algebra element (ambient coordinates) sitting in e_u·A·e_w;
    left multiplication by x on paths-with-target-w is a map of opposite
    projectives, and its dual is the ν-image I(u) → I(w).
    """
    cols = []
    for j in range(pw_op.dim):
        y = pw_op._regular_cols.col_list(j)
        z = alg.mult_vec(x, y)
        c = solve(pu_op._regular_cols, Matrix.column(z, alg.p))
        if c is None:
            raise InternalConsistencyError(
                "presentation component leaves its projective")
        cols.append(c.col_list(0))
    out = Matrix.from_cols(cols, alg.p)
    if out.cols == 0:
        out = Matrix.zero(pu_op.dim, 0, alg.p)
    return out


def _presentation_blocks(m: Module):
    """Shared bookkeeping for ν and the transpose.

    Returns (presentation, opposite projectives of the P1 vertices,
    opposite projectives of the P0 vertices, block grid G[k][l]) where
    G[k][l] is the matrix of left multiplication by the (k,l) component of
    p1 on the opposite projectives.
    """
    alg = m.algebra
    op = opposite(alg)
    pres = minimal_projective_presentation(m)
    us = pres.p1_vertices
    ws = pres.p0_vertices
    pu_ops = [projective_module(op, u) for u in us]
    pw_ops = [projective_module(op, w) for w in ws]
    grid = []
    for k, pw in enumerate(pw_ops):
        row = []
        for l, pu in enumerate(pu_ops):
            x = pres.component_element(k, l)
            row.append(_op_component_matrix(alg, x, pw, pu))
        grid.append(row)
    return pres, pu_ops, pw_ops, grid


def tau(m: Module) -> Module:
    """The AR translate: kernel of ν(p1) for a minimal presentation.

    Zero exactly when ``m`` is projective.
    """
    cached = getattr(m, "_tau", None)
    if cached is not None:
        return cached
    alg = m.algebra
    if m.dim == 0:
        out = Module.zero(alg)
        m._tau = out
        return out
    pres, pu_ops, pw_ops, grid = _presentation_blocks(m)
    if pres.p1_module.dim == 0:
        out = Module.zero(alg)
        m._tau = out
        return out
    # ν turns each P(v) into I(v) and each component map into its dual.
    dom, _, _ = direct_sum([injective_module(alg, u) for u in pres.p1_vertices],
                           algebra=alg)
    cod, _, _ = direct_sum([injective_module(alg, w) for w in pres.p0_vertices],
                           algebra=alg)
    raw = Matrix.block([[g.transpose() for g in row] for row in grid], alg.p)
    nu_p1 = ModuleMap(dom, cod, cod.to_adapted * raw * dom.from_adapted)
    out, _ = kernel(nu_p1)
    out.label = f"tau({m.label})" if m.label else ""
    m._tau = out
    return out


def transpose_module(m: Module) -> Module:
    """The transpose Tr(M), a module over the opposite algebra.

    Cokernel of Hom(p1, A) between opposite projectives; zero exactly when
    ``m`` is projective.
    """
    alg = m.algebra
    op = opposite(alg)
    if m.dim == 0:
        return Module.zero(op)
    pres, pu_ops, pw_ops, grid = _presentation_blocks(m)
    if pres.p1_module.dim == 0:
        return Module.zero(op)
    dom, _, _ = direct_sum(pw_ops, algebra=op)
    cod, _, _ = direct_sum(pu_ops, algebra=op)
    # Hom(−, A) is contravariant: block (l, k) maps the w_k part into u_l.
    raw = Matrix.block([[grid[k][l] for k in range(len(pw_ops))]
                        for l in range(len(pu_ops))], alg.p)
    f = ModuleMap(dom, cod, cod.to_adapted * raw * dom.from_adapted)
    out, _ = cokernel(f)
    out.label = f"Tr({m.label})" if m.label else ""
    return out


def tau_inverse(m: Module) -> Module:
    """The inverse translate Tr∘D.  Zero exactly when ``m`` is injective."""
    cached = getattr(m, "_tau_inverse", None)
    if cached is not None:
        return cached
    out = transpose_module(dualize(m))
    if out.algebra is not m.algebra:
        raise InternalConsistencyError("transpose of the dual landed on the wrong side")
    out.label = f"tau^-1({m.label})" if m.label else ""
    m._tau_inverse = out
    return out


# --------------------------------------------------------------------------
# extensions


def ext1_dim(m: Module, n: Module) -> int:
    """dim Ext¹(M, N) = corank of Hom(P0, N) → Hom(ΩM, N)."""
    if m.dim == 0 or n.dim == 0:
        return 0
    pres = minimal_projective_presentation(m)
    if pres.omega.dim == 0:
        return 0
    target_maps = hom_basis(pres.omega, n)
    if not target_maps:
        return 0
    restricted = [f.compose(pres.omega_inclusion) for f in hom_basis(pres.p0_module, n)]
    return len(target_maps) - _span_dim_in(target_maps, restricted, n.algebra.p)


def ext1_basis(m: Module, n: Module):
    """Maps ΩM → N whose classes form a basis of Ext¹(M, N)."""
    if m.dim == 0 or n.dim == 0:
        return []
    pres = minimal_projective_presentation(m)
    if pres.omega.dim == 0:
        return []
    target_maps = hom_basis(pres.omega, n)
    if not target_maps:
        return []
    p = n.algebra.p
    k = len(target_maps)
    restricted = [f.compose(pres.omega_inclusion) for f in hom_basis(pres.p0_module, n)]
    if restricted:
        cols = Matrix.from_cols([_flat(f.matrix) for f in restricted], p)
        img = column_space_basis(_coords_in(target_maps, cols, p))
    else:
        img = Matrix.zero(k, 0, p)
    # standard vectors completing the image span give coset representatives
    extended = hstack(img, Matrix.identity(k, p))
    _, pivots = extended.rref_with_pivots()
    chosen = [j - img.cols for j in pivots if j >= img.cols]
    return [target_maps[j] for j in chosen]


def extension_module(m: Module, n: Module, cocycle) -> Module:
    """Middle term of the extension of M by N along a cocycle.

    ``cocycle`` is either a ModuleMap ΩM → N or a coefficient sequence over
    ``ext1_basis(m, n)``.  Built as the pushout (P0 ⊕ N)/{(ι w, −θ w)}.
    """
    pres = minimal_projective_presentation(m)
    p = m.algebra.p
    if isinstance(cocycle, ModuleMap):
        theta = cocycle
        if theta.source is not pres.omega or theta.target is not n:
            raise ValidationError(
                "cocycle outside the computed space: it must map the "
                "syzygy of the first module into the second")
    else:
        coeffs = list(cocycle)
        basis = ext1_basis(m, n)
        if len(coeffs) != len(basis):
            raise ValidationError(
                f"cocycle outside the computed space: expected "
                f"{len(basis)} coefficients, got {len(coeffs)}")
        mat = Matrix.zero(n.dim, pres.omega.dim, p)
        for c, b in zip(coeffs, basis):
            mat = mat + b.matrix.scale(c)
        theta = ModuleMap(pres.omega, n, mat)
    total, incls, _ = direct_sum([pres.p0_module, n])
    rel = incls[0].matrix * pres.omega_inclusion.matrix - incls[1].matrix * theta.matrix
    out, _ = total.quotient_by(column_space_basis(rel))
    if out.dim != m.dim + n.dim:
        raise InternalConsistencyError("pushout has the wrong dimension")
    return out


def _flat(mat: Matrix):
    return [mat[i, j] for i in range(mat.rows) for j in range(mat.cols)]


def _coords_in(basis_maps, cols: Matrix, p: int) -> Matrix:
    """Coordinates of the columns of ``cols`` in the flattened map basis."""
    amb = Matrix.from_cols([_flat(f.matrix) for f in basis_maps], p)
    coords = solve(amb, cols)
    if coords is None:
        raise InternalConsistencyError("maps left their own hom space")
    return coords


def _span_dim_in(basis_maps, maps, p: int) -> int:
    if not maps:
        return 0
    cols = Matrix.from_cols([_flat(f.matrix) for f in maps], p)
    return _coords_in(basis_maps, cols, p).rank()


# --------------------------------------------------------------------------
# endomorphism algebras and decomposition

Summand = namedtuple("Summand", ["module", "include", "project"])


def _end_data(m: Module):
    """Basis of End(M) with family structure constants and radical coords."""
    cached = getattr(m, "_end_cache", None)
    if cached is not None:
        return cached
    p = m.algebra.p
    ends = hom_basis(m, m)
    k = len(ends)
    flats = Matrix.from_cols([_flat(f.matrix) for f in ends], p)
    prods = Matrix.from_cols(
        [_flat(ends[i].matrix * ends[j].matrix) for i in range(k) for j in range(k)], p)
    prod_coords = {}
    if k:
        coords = solve(flats, prods)
        if coords is None:
            raise InternalConsistencyError("endomorphism space is not closed")
        for i in range(k):
            for j in range(k):
                prod_coords[i, j] = coords.col_list(i * k + j)
    rad = family_radical_coords(prod_coords, k, p)
    if p:
        assert_family_nilpotent(prod_coords, k, p, rad)
    m._end_cache = (ends, rad)
    return m._end_cache


def _min_poly(x: Matrix, p: int):
    """Monic minimal polynomial of a square matrix, highest coefficient first."""
    d = x.rows
    power = Matrix.identity(d, p)
    flats = [_flat(power)]
    while True:
        power = power * x
        flats.append(_flat(power))
        ker = kernel_basis(Matrix.from_cols(flats, p))
        if ker.cols:
            rel = ker.col_list(0)
            break
    lead = rel[-1]
    if p == 0:
        inv = 1 / Fraction(lead)
        coeffs = [Fraction(c) * inv for c in rel]
    else:
        inv = pow(int(lead), p - 2, p)
        coeffs = [(int(c) * inv) % p for c in rel]
    return list(reversed(coeffs))


def _sympy_poly(coeffs, p: int) -> Poly:
    if p:
        return Poly([int(c) for c in coeffs], _T, modulus=p)
    return Poly([Rational(c.numerator, c.denominator) for c in coeffs], _T, domain="QQ")


def _native_coeffs(poly: Poly, p: int):
    cs = poly.all_coeffs()
    if p:
        return [int(c) % p for c in cs]
    return [Fraction(int(c.p), int(c.q)) for c in cs]


def _eval_poly(coeffs, x: Matrix) -> Matrix:
    d = x.rows
    out = Matrix.zero(d, d, x.p)
    ident = Matrix.identity(d, x.p)
    for c in coeffs:
        out = out * x + ident.scale(c)
    return out


def _mat_pow(x: Matrix, e: int) -> Matrix:
    out = Matrix.identity(x.rows, x.p)
    for _ in range(e):
        out = out * x
    return out


def _split_along(m: Module, cols_a: Matrix, cols_b: Matrix):
    """Split M as the direct sum of two invariant subspaces."""
    sub_a, incl_a = m.submodule_on(column_space_basis(cols_a))
    sub_b, incl_b = m.submodule_on(column_space_basis(cols_b))
    change = solve(hstack(incl_a.matrix, incl_b.matrix),
                   Matrix.identity(m.dim, m.algebra.p))
    if change is None or sub_a.dim + sub_b.dim != m.dim:
        raise InternalConsistencyError("claimed splitting does not span")
    proj_a = ModuleMap(m, sub_a, change.submatrix(range(sub_a.dim), range(m.dim)))
    proj_b = ModuleMap(m, sub_b, change.submatrix(range(sub_a.dim, m.dim), range(m.dim)))
    return (sub_a, incl_a, proj_a), (sub_b, incl_b, proj_b)


def _end_candidates(ends):
    mats = [f.matrix for f in ends]
    for x in mats:
        yield x
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            yield mats[i] + mats[j]
    for i in range(len(mats)):
        for j in range(len(mats)):
            if i != j:
                yield mats[i] * mats[j]


def decompose(m: Module):
    """Split into indecomposable summands.

    Returns a list of ``Summand(module, include, project)`` with
    project∘include the identity on each part and Σ include∘project the
    identity on M.  Splitting is driven by minimal polynomials of
    endomorphisms: a coprime factorization gives an invariant-kernel
    splitting, and an irreducible minimal polynomial of full semisimple
    rank certifies that End/rad is a field, hence M indecomposable.
    Raises InconclusiveError rather than guessing.
    """
    cached = getattr(m, "_decomposition", None)
    if cached is not None:
        return cached
    if m.dim == 0:
        m._decomposition = []
        return m._decomposition
    p = m.algebra.p
    ends, rad = _end_data(m)
    s = len(ends) - rad.cols
    if s == 1:
        whole = [Summand(m, ModuleMap.identity(m), ModuleMap.identity(m))]
        m._decomposition = whole
        return whole
    for x in _end_candidates(ends):
        coeffs = _min_poly(x, p)
        factors = _sympy_poly(coeffs, p).factor_list()[1]
        if len(factors) > 1:
            g1, e1 = factors[0]
            first = _mat_pow(_eval_poly(_native_coeffs(g1, p), x), e1)
            rest = Matrix.identity(m.dim, p)
            for g, e in factors[1:]:
                rest = rest * _mat_pow(_eval_poly(_native_coeffs(g, p), x), e)
            part_a, part_b = _split_along(m, kernel_basis(first), kernel_basis(rest))
            out = []
            for sub, incl, proj in (part_a, part_b):
                for piece in decompose(sub):
                    out.append(Summand(piece.module,
                                       incl.compose(piece.include),
                                       piece.project.compose(proj)))
            m._decomposition = out
            return out
        poly, mult = factors[0]
        if mult == 1 and poly.degree() == s and poly.is_irreducible:
            whole = [Summand(m, ModuleMap.identity(m), ModuleMap.identity(m))]
            m._decomposition = whole
            return whole
    raise InconclusiveError(
        "cannot decide decomposability: the endomorphism algebra modulo its "
        f"radical has dimension {s} and no tested endomorphism either splits "
        "the module or certifies a field")


def is_indecomposable(m: Module) -> bool:
    return len(decompose(m)) == 1


def num_summands(m: Module) -> int:
    return len(decompose(m))


def _indecomposable_iso(x: Module, y: Module) -> bool:
    """Isomorphism test for indecomposables: some composition g∘f must
    escape the radical of End(x)."""
    if x.dim_vector() != y.dim_vector():
        return False
    fs = hom_basis(x, y)
    gs = hom_basis(y, x)
    if not fs or not gs:
        return False
    p = x.algebra.p
    ends, rad = _end_data(x)
    end_flats = Matrix.from_cols([_flat(f.matrix) for f in ends], p)
    rad_flats = end_flats * rad if rad.cols else Matrix.zero(end_flats.rows, 0, p)
    comps = Matrix.from_cols(
        [_flat(g.matrix * f.matrix) for g in gs for f in fs], p)
    return not subspace_contains(rad_flats, comps)


def is_isomorphic(m: Module, n: Module) -> bool:
    """Decompose both sides and match indecomposable factors."""
    if m.algebra is not n.algebra:
        return False
    if m.dim_vector() != n.dim_vector():
        return False
    if m.dim == 0:
        return True
    parts_m = [s.module for s in decompose(m)]
    parts_n = [s.module for s in decompose(n)]
    if len(parts_m) != len(parts_n):
        return False
    unused = list(range(len(parts_n)))
    for x in parts_m:
        hit = None
        for idx in unused:
            if _indecomposable_iso(x, parts_n[idx]):
                hit = idx
                break
        if hit is None:
            return False
        unused.remove(hit)
    return True


def basic_version(m: Module) -> Module:
    """One representative of each isomorphism class of summands."""
    if m.dim == 0:
        return m
    reps = []
    for s in decompose(m):
        if not any(_indecomposable_iso(s.module, r) for r in reps):
            reps.append(s.module)
    out, _, _ = direct_sum(reps, algebra=m.algebra)
    return out


# --------------------------------------------------------------------------
# stable homs through injectives


def injective_envelope(n: Module) -> ModuleMap:
    """The minimal embedding of N into an injective module.

    Dual of the projective cover of D(N) over the opposite algebra.
    """
    cover = projective_cover(dualize(n))
    emb = dualize_map(cover)
    if emb.source is not n:
        raise InternalConsistencyError("double dual failed to round-trip")
    return emb


def hom_through_injectives(n: Module, l: Module):
    """Basis of the subspace of Hom(N, L) of maps factoring through an
    injective module (equivalently, through the injective envelope)."""
    if n.dim == 0 or l.dim == 0:
        return []
    emb = injective_envelope(n)
    comps = [h.compose(emb) for h in hom_basis(emb.target, l)]
    if not comps:
        return []
    p = n.algebra.p
    cols = Matrix.from_cols([_flat(f.matrix) for f in comps], p)
    _, pivots = cols.rref_with_pivots()
    return [comps[j] for j in pivots]
