"""Finite-dimensional left modules over an :class:`FdAlgebra`, and the
first layer of the homological toolkit: Hom spaces, kernels and cokernels,
tops and socles, projective covers, duality, traces, and tensor products.

Every :class:`Module` normalizes its internal basis so the vertex
idempotents act as 0/1 diagonal projectors with the vertex blocks laid out
contiguously in vertex order ("adapted coordinates").  All matrices of
:class:`ModuleMap` are written with respect to these adapted coordinates,
which makes Hom computations block-structured and lets dim vectors be read
off directly.
"""

from __future__ import annotations

from fractions import Fraction

from taurec.algebra import FdAlgebra, AlgebraMorphism, Bimodule
from taurec.errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    TaurecError,
    ValidationError,
)
from taurec.linalg import (
    Matrix,
    column_space_basis,
    hstack,
    kernel_basis,
    kron,
    rref,
    solve,
    subspace_contains,
    vstack,
)


def _require_same_algebra(a: FdAlgebra, b: FdAlgebra):
    if a is not b and a != b:
        raise TaurecError("modules live over different algebras")


def _space_quotient(cols: Matrix):
    """Projection data for a coordinate space modulo the span of ``cols``.

    Returns ``(proj, kept)``: ``proj`` maps ambient coordinates onto the
    classes of the kept coordinate axes, and ``kept`` lists those axes.
    """
    n = cols.rows
    red, pivots = rref(cols.transpose())
    killed = list(pivots)
    kept = [j for j in range(n) if j not in set(killed)]
    proj = Matrix.zero(len(kept), n, cols.p).to_rows()
    for r, j in enumerate(kept):
        proj[r][j] = Fraction(1) if cols.p == 0 else 1
        for i, pc in enumerate(killed):
            c = red[i, j]
            if c != 0:
                proj[r][pc] = -c if cols.p == 0 else (-c) % cols.p
    if kept:
        return Matrix.from_rows(proj, cols.p), kept
    return Matrix.zero(0, n, cols.p), kept


def _inject_at(indices, ambient: int, p: int) -> Matrix:
    """The section matrix picking out the given coordinate axes."""
    cols = []
    for j in indices:
        v = [Fraction(0)] * ambient if p == 0 else [0] * ambient
        v[j] = Fraction(1) if p == 0 else 1
        cols.append(v)
    return Matrix.from_cols(cols, p) if cols else Matrix.zero(ambient, 0, p)


class Module:
    """A left module, stored as one action matrix per algebra basis element.

    Construction validates the action against the structure constants
    exhaustively and then conjugates everything into adapted coordinates.
    ``to_adapted`` / ``from_adapted`` record the change of basis from the
    coordinates the action was given in.
    """

    def __init__(self, algebra: FdAlgebra, action, *, validate: bool = True,
                 label: str = ""):
        self.algebra = algebra
        action = list(action)
        if len(action) != algebra.dim:
            raise DimensionMismatchError("one action matrix per basis element")
        self.dim = action[0].rows if action else 0
        for m in action:
            if m.shape != (self.dim, self.dim):
                raise DimensionMismatchError("action matrices must be square and equal-sized")
            if m.p != algebra.p:
                raise ValidationError("action matrix field tag differs from the algebra")
        self.label = label
        if validate:
            self._validate_raw(action)
        self._adapt(action)

    # -- construction internals ---------------------------------------

    def _validate_raw(self, action):
        alg = self.algebra
        ident = Matrix.identity(self.dim, alg.p)
        unit = Matrix.zero(self.dim, self.dim, alg.p)
        for i, c in enumerate(alg.unit()):
            if c != 0:
                unit = unit + action[i].scale(c)
        if unit != ident:
            raise ValidationError("unit does not act as the identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = action[i] * action[j]
                want = Matrix.zero(self.dim, self.dim, alg.p)
                for k, c in enumerate(alg._mult[i][j]):
                    if c != 0:
                        want = want + action[k].scale(c)
                if prod != want:
                    raise ValidationError(
                        "action violates the structure constants on "
                        f"({alg.basis_labels[i]}, {alg.basis_labels[j]})"
                    )

    def _adapt(self, action):
        alg = self.algebra
        blocks = []
        sizes = []
        for e in alg._idem:
            proj = Matrix.zero(self.dim, self.dim, alg.p)
            for i, c in enumerate(e):
                if c != 0:
                    proj = proj + action[i].scale(c)
            img = column_space_basis(proj)
            blocks.append(img)
            sizes.append(img.cols)
        if sum(sizes) != self.dim:
            raise ValidationError("idempotent images do not decompose the space")
        change = hstack(*blocks) if self.dim else Matrix.zero(0, 0, alg.p)
        inverse = solve(change, Matrix.identity(self.dim, alg.p))
        if inverse is None:
            raise ValidationError("idempotent images do not decompose the space")
        self.from_adapted = change
        self.to_adapted = inverse
        self.action = [inverse * m * change for m in action]
        ranges = []
        start = 0
        for s in sizes:
            ranges.append((start, start + s))
            start += s
        self.vertex_ranges = tuple(ranges)

    # -- basic queries -------------------------------------------------

    @classmethod
    def zero(cls, algebra: FdAlgebra) -> "Module":
        z = Matrix.zero(0, 0, algebra.p)
        return cls(algebra, [z] * algebra.dim, validate=False, label="0")

    def is_zero(self) -> bool:
        return self.dim == 0

    def dim_vector(self):
        return tuple(stop - start for start, stop in self.vertex_ranges)

    def vertex_range(self, vertex: str):
        return self.vertex_ranges[self.algebra.vertex_index(vertex)]

    def act_vec(self, avec) -> Matrix:
        """Matrix of the algebra element with the given coordinates."""
        out = Matrix.zero(self.dim, self.dim, self.algebra.p)
        for i, c in enumerate(avec):
            if c != 0:
                out = out + self.action[i].scale(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, Module):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.dim == other.dim
            and self.action == other.action
        )

    __hash__ = None

    def __repr__(self):
        tag = self.label or "Module"
        return f"<{tag}: dims {list(self.dim_vector())}>"

    # -- submodules and quotients -------------------------------------

    def submodule_on(self, cols: Matrix):
        """The submodule spanned by the given (adapted-coordinate) columns.

        Returns ``(sub, inclusion)``.  Raises if the span is not invariant.
        """
        alg = self.algebra
        basis = column_space_basis(cols)
        sub_action = []
        for m in self.action:
            coords = solve(basis, m * basis) if basis.cols else Matrix.zero(0, 0, alg.p)
            if coords is None:
                raise ValidationError("columns do not span an invariant subspace")
            sub_action.append(coords)
        sub = Module(alg, sub_action, validate=False)
        incl = ModuleMap(sub, self, basis * sub.from_adapted)
        return sub, incl

    def quotient_by(self, cols: Matrix):
        """The quotient by the submodule spanned by ``cols``.

        Returns ``(quotient, projection)``.
        """
        alg = self.algebra
        proj, kept = _space_quotient(cols)
        inject = _inject_at(kept, self.dim, alg.p)
        q_action = [proj * m * inject for m in self.action]
        quot = Module(alg, q_action, validate=False)
        pr = ModuleMap(self, quot, quot.to_adapted * proj)
        return quot, pr

    def radical_cols(self) -> Matrix:
        """Columns spanning (rad A)·M in adapted coordinates."""
        rad = self.algebra.radical()
        images = []
        for j in range(rad.cols):
            m = self.act_vec(rad.col_list(j))
            if not m.is_zero():
                images.append(m)
        if not images:
            return Matrix.zero(self.dim, 0, self.algebra.p)
        return column_space_basis(hstack(*images))

    def socle_cols(self) -> Matrix:
        """Columns spanning the annihilator of rad A."""
        rad = self.algebra.radical()
        if rad.cols == 0 or self.dim == 0:
            return Matrix.identity(self.dim, self.algebra.p)
        stacked = vstack(*[self.act_vec(rad.col_list(j)) for j in range(rad.cols)])
        return kernel_basis(stacked)


class ModuleMap:
    """A homomorphism of modules, as a matrix between adapted coordinates."""

    def __init__(self, source: Module, target: Module, matrix: Matrix,
                 *, validate: bool = True):
        _require_same_algebra(source.algebra, target.algebra)
        if matrix.shape != (target.dim, source.dim):
            raise DimensionMismatchError(
                f"map matrix {matrix.shape} does not match "
                f"{source.dim} -> {target.dim}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate:
            self._validate()

    def _validate(self):
        for i in range(self.source.algebra.dim):
            if self.matrix * self.source.action[i] != self.target.action[i] * self.matrix:
                raise ValidationError(
                    "map fails to intertwine "
                    f"{self.source.algebra.basis_labels[i]}"
                )

    @classmethod
    def identity(cls, module: Module) -> "ModuleMap":
        return cls(module, module, Matrix.identity(module.dim, module.algebra.p),
                   validate=False)

    @classmethod
    def zero(cls, source: Module, target: Module) -> "ModuleMap":
        return cls(source, target, Matrix.zero(target.dim, source.dim,
                                               source.algebra.p), validate=False)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other (apply ``other`` first)."""
        if other.target is not self.source and other.target != self.source:
            raise DimensionMismatchError("composition endpoints do not match")
        return ModuleMap(other.source, self.target, self.matrix * other.matrix,
                         validate=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix,
                         validate=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix.scale(c),
                         validate=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def rank(self) -> int:
        return self.matrix.rank()

    def apply(self, vec):
        return (self.matrix * Matrix.column(vec, self.matrix.p)).col_list(0)

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.matrix == other.matrix)

    __hash__ = None

    def __repr__(self):
        return f"<ModuleMap {self.source!r} -> {self.target!r}>"


# --------------------------------------------------------------------------
# Hom


def hom_basis(m: Module, n: Module):
    """A basis of Hom(m, n) as a list of ModuleMap.

    Adapted coordinates force any intertwiner to be vertex-block-diagonal,
    so only the block entries are unknowns; the linear conditions from the
    idempotents are thereby built in, and it suffices to impose the
    conditions of the radical generators (idempotents + radical generators
    generate the algebra — certified on first use).
    """
    _require_same_algebra(m.algebra, n.algebra)
    alg = m.algebra
    if m.dim == 0 or n.dim == 0:
        return []

    allowed = {}
    unknowns = []
    for (ms, me), (ns, ne) in zip(m.vertex_ranges, n.vertex_ranges):
        for r in range(ns, ne):
            for c in range(ms, me):
                allowed[(r, c)] = len(unknowns)
                unknowns.append((r, c))
    if not unknowns:
        return []

    gens = alg.radical_generators()
    rows = []
    zero_row = [Fraction(0)] * len(unknowns) if alg.p == 0 else [0] * len(unknowns)
    for g in gens:
        a_g = m.act_vec(g)
        b_g = n.act_vec(g)
        for r in range(n.dim):
            for c in range(m.dim):
                row = list(zero_row)
                nonzero = False
                for k in range(m.dim):
                    coeff = a_g[k, c]
                    if coeff != 0 and (r, k) in allowed:
                        idx = allowed[(r, k)]
                        row[idx] = row[idx] + coeff if alg.p == 0 else (row[idx] + coeff) % alg.p
                        nonzero = True
                for k in range(n.dim):
                    coeff = b_g[r, k]
                    if coeff != 0 and (k, c) in allowed:
                        idx = allowed[(k, c)]
                        row[idx] = row[idx] - coeff if alg.p == 0 else (row[idx] - coeff) % alg.p
                        nonzero = True
                if nonzero:
                    rows.append(row)

    if rows:
        sols = kernel_basis(Matrix.from_rows(rows, alg.p))
    else:
        sols = Matrix.identity(len(unknowns), alg.p)
    maps = []
    for j in range(sols.cols):
        flat = sols.col_list(j)
        grid = Matrix.zero(n.dim, m.dim, alg.p).to_rows()
        for idx, (r, c) in enumerate(unknowns):
            grid[r][c] = flat[idx]
        maps.append(ModuleMap(m, n, Matrix.from_rows(grid, alg.p)))
    return maps


def dim_hom(m: Module, n: Module) -> int:
    return len(hom_basis(m, n))


# --------------------------------------------------------------------------
# kernels, cokernels, images, sums


def kernel(f: ModuleMap):
    """Returns ``(ker, inclusion)``."""
    return f.source.submodule_on(kernel_basis(f.matrix))


def image(f: ModuleMap):
    """Returns ``(im, inclusion into the target)``."""
    return f.target.submodule_on(column_space_basis(f.matrix))


def cokernel(f: ModuleMap):
    """Returns ``(coker, projection)``."""
    return f.target.quotient_by(column_space_basis(f.matrix))


def direct_sum(modules, algebra: FdAlgebra | None = None):
    """Direct sum with its canonical maps.

    Returns ``(sum, inclusions, projections)``.  ``algebra`` is only needed
    when ``modules`` is empty.
    """
    modules = list(modules)
    if not modules:
        if algebra is None:
            raise TaurecError("empty direct sum needs an explicit algebra")
        z = Module.zero(algebra)
        return z, [], []
    alg = modules[0].algebra
    for m in modules[1:]:
        _require_same_algebra(alg, m.algebra)
    total = sum(m.dim for m in modules)
    offsets = []
    at = 0
    for m in modules:
        offsets.append(at)
        at += m.dim
    action = []
    for i in range(alg.dim):
        grid = [[None] * len(modules) for _ in modules]
        for a, ma in enumerate(modules):
            for b, mb in enumerate(modules):
                if a == b:
                    grid[a][b] = ma.action[i]
                else:
                    grid[a][b] = Matrix.zero(ma.dim, mb.dim, alg.p)
        action.append(Matrix.block(grid, alg.p))
    s = Module(alg, action, validate=False)
    inclusions = []
    projections = []
    for k, m in enumerate(modules):
        incl_raw = Matrix.zero(total, m.dim, alg.p).to_rows()
        for j in range(m.dim):
            incl_raw[offsets[k] + j][j] = Fraction(1) if alg.p == 0 else 1
        incl_raw = Matrix.from_rows(incl_raw, alg.p)
        inclusions.append(ModuleMap(m, s, s.to_adapted * incl_raw))
        proj_raw = Matrix.zero(m.dim, total, alg.p).to_rows()
        for j in range(m.dim):
            proj_raw[j][offsets[k] + j] = Fraction(1) if alg.p == 0 else 1
        proj_raw = Matrix.from_rows(proj_raw, alg.p)
        projections.append(ModuleMap(s, m, proj_raw * s.from_adapted))
    return s, inclusions, projections


# --------------------------------------------------------------------------
# dim vectors, factors, sincerity


def dim_vector(m: Module):
    return m.dim_vector()


def composition_factors(m: Module) -> dict:
    """Multiset of composition factors, keyed by vertex label.

    For a basic algebra the multiplicity of the simple at v equals the
    dimension of the vertex-v component.
    """
    return {
        v: d
        for v, d in zip(m.algebra.vertex_labels, m.dim_vector())
        if d
    }


def is_sincere(m: Module) -> bool:
    return all(d > 0 for d in m.dim_vector())


# --------------------------------------------------------------------------
# top, radical, socle


def radical(m: Module):
    """The submodule (rad A)·M with its inclusion."""
    return m.submodule_on(m.radical_cols())


def top(m: Module):
    """The semisimple quotient M/(rad A)M with its projection."""
    quot, pr = m.quotient_by(m.radical_cols())
    if not quot.radical_cols().is_zero():
        raise InternalConsistencyError("top failed to be semisimple")
    return quot, pr


def socle(m: Module):
    """The largest semisimple submodule (annihilator of rad A) with inclusion."""
    sub, incl = m.submodule_on(m.socle_cols())
    if not sub.radical_cols().is_zero():
        raise InternalConsistencyError("socle failed to be semisimple")
    return sub, incl


# --------------------------------------------------------------------------
# standard modules


def regular_module(alg: FdAlgebra) -> Module:
    cached = getattr(alg, "_regular_module", None)
    if cached is None:
        action = [alg.left_mult_matrix(alg.basis_vector(i)) for i in range(alg.dim)]
        cached = Module(alg, action, validate=False, label=alg.name or "A")
        alg._regular_module = cached
    return cached


def projective_module(alg: FdAlgebra, vertex: str) -> Module:
    """The indecomposable projective A·e_v.

    The returned module additionally records, for use by the Nakayama
    substitution, the algebra-element coordinates of its adapted basis
    (``_regular_cols``) and its distinguished generator e_v
    (``_gen_adapted``).
    """
    vertex = str(vertex)
    cache = getattr(alg, "_projective_modules", None)
    if cache is None:
        cache = alg._projective_modules = {}
    if vertex in cache:
        return cache[vertex]
    reg = regular_module(alg)
    e = alg.idempotent(vertex)
    span = column_space_basis(reg.to_adapted * alg.right_mult_matrix(e) * reg.from_adapted)
    sub, incl = reg.submodule_on(span)
    sub.label = f"P({vertex})"
    # algebra coordinates of each adapted basis vector of the submodule
    sub._regular_cols = reg.from_adapted * incl.matrix
    gen = solve(sub._regular_cols, Matrix.column(e, alg.p))
    if gen is None:
        raise InternalConsistencyError("generator e_v missing from A·e_v")
    sub._gen_adapted = gen
    sub._vertex = vertex
    cache[vertex] = sub
    return sub


def simple_module(alg: FdAlgebra, vertex: str) -> Module:
    vertex = str(vertex)
    cache = getattr(alg, "_simple_modules", None)
    if cache is None:
        cache = alg._simple_modules = {}
    if vertex in cache:
        return cache[vertex]
    p = projective_module(alg, vertex)
    t, _ = top(p)
    t.label = f"S({vertex})"
    cache[vertex] = t
    return t


def dualize(m: Module) -> Module:
    """The dual module over the opposite algebra (actions transposed).

    Involutive on the nose: dualizing a dual returns the original object.
    """
    existing = getattr(m, "_dual_of", None)
    if existing is not None:
        return existing
    cached = getattr(m, "_dual_cache", None)
    if cached is not None:
        return cached
    from taurec.algebra import opposite

    op = opposite(m.algebra)
    # adapted coordinates diagonalize the idempotents, so the transposed
    # action is already adapted and no further change of basis happens
    dual = Module(op, [a.transpose() for a in m.action], validate=False,
                  label=f"D({m.label})" if m.label else "")
    dual._dual_of = m
    m._dual_cache = dual
    return dual


def dualize_map(f: ModuleMap) -> ModuleMap:
    """D is contravariant: a map M → N dualizes to D(N) → D(M)."""
    return ModuleMap(dualize(f.target), dualize(f.source), f.matrix.transpose(),
                     validate=False)


def injective_module(alg: FdAlgebra, vertex: str) -> Module:
    """The indecomposable injective I(v) = D(P(v) over the opposite algebra)."""
    vertex = str(vertex)
    cache = getattr(alg, "_injective_modules", None)
    if cache is None:
        cache = alg._injective_modules = {}
    if vertex in cache:
        return cache[vertex]
    from taurec.algebra import opposite

    p_op = projective_module(opposite(alg), vertex)
    inj = dualize(p_op)
    inj.label = f"I({vertex})"
    cache[vertex] = inj
    return inj


# --------------------------------------------------------------------------
# projective covers and presentations


def projective_cover(m: Module) -> ModuleMap:
    """A minimal surjection from a direct sum of vertex projectives.

    The cover's source carries ``_summand_vertices`` (vertex label of each
    summand, in order) along with the summand inclusions/projections.
    """
    alg = m.algebra
    t, pr = top(m)
    summands = []
    vertex_of = []
    generators = []  # coordinate columns of M generating each summand's image
    for vi, v in enumerate(alg.vertex_labels):
        start, stop = m.vertex_ranges[vi]
        if start == stop:
            continue
        block = pr.matrix.submatrix(range(t.dim), range(start, stop))
        # pivot axes of the top images of the vertex-v coordinate axes:
        # these generate the v-part of the top, one projective P(v) each
        _, piv_cols = rref(block)
        for j in piv_cols:
            summands.append(projective_module(alg, v))
            vertex_of.append(v)
            generators.append(start + j)
    p0, incls, projs = direct_sum(summands, algebra=alg)
    comps = []
    for pv, gen_idx in zip(summands, generators):
        target_gen = gen_idx
        cols = []
        for j in range(pv.dim):
            x = pv._regular_cols.col_list(j)
            col = m.act_vec(x).col_list(target_gen)
            cols.append(col)
        comps.append(Matrix.from_cols(cols, alg.p) if cols
                     else Matrix.zero(m.dim, 0, alg.p))
    total = hstack(*comps) if comps else Matrix.zero(m.dim, 0, alg.p)
    cover = ModuleMap(p0, m, total * p0.from_adapted)
    if cover.rank() != m.dim:
        raise InternalConsistencyError("projective cover is not surjective")
    if not subspace_contains(p0.radical_cols(), kernel_basis(cover.matrix)):
        raise InternalConsistencyError("projective cover is not minimal")
    p0._summand_vertices = tuple(vertex_of)
    p0._summand_inclusions = tuple(incls)
    p0._summand_projections = tuple(projs)
    return cover


class ProjPresentation:
    """A minimal projective presentation P1 → P0 → M → 0."""

    def __init__(self, module, p0, p1, omega, omega_inclusion):
        self.module = module
        self.p0 = p0          # P0 -> M
        self.p1 = p1          # P1 -> P0
        self.omega = omega    # ker p0
        self.omega_inclusion = omega_inclusion  # omega -> P0
        self.p0_module = p0.source
        self.p1_module = p1.source

    @property
    def p0_vertices(self):
        return self.p0_module._summand_vertices

    @property
    def p1_vertices(self):
        return self.p1_module._summand_vertices

    def component_element(self, k: int, l: int):
        """The algebra element x with x = component (k-th P0 summand ←
        l-th P1 summand) of p1, as right multiplication by x ∈ e_u A e_w.
        """
        src = self.p1_module._summand_inclusions[l]
        tgt = self.p0_module._summand_projections[k]
        comp = tgt.matrix * self.p1.matrix * src.matrix
        pu = src.source
        pw = tgt.target
        img = comp * pu._gen_adapted  # image of the generator, in P(w) coords
        return (pw._regular_cols * img).col_list(0)


def minimal_projective_presentation(m: Module) -> ProjPresentation:
    cached = getattr(m, "_presentation", None)
    if cached is not None:
        return cached
    cover = projective_cover(m)
    omega, incl = kernel(cover)
    cover1 = projective_cover(omega)
    p1 = incl.compose(cover1)
    pres = ProjPresentation(m, cover, p1, omega, incl)
    m._presentation = pres
    return pres


# --------------------------------------------------------------------------
# trace and generation


def trace_of(t: Module, m: Module):
    """The trace of ``t`` in ``m``: the sum of images of all maps t → m.

    Returns ``(submodule, inclusion)``.
    """
    maps = hom_basis(t, m)
    if not maps:
        return m.submodule_on(Matrix.zero(m.dim, 0, m.algebra.p))
    return m.submodule_on(column_space_basis(hstack(*[f.matrix for f in maps])))


def is_generated_by(t: Module, m: Module) -> bool:
    """Does some finite power of ``t`` surject onto ``m``?"""
    sub, _ = trace_of(t, m)
    return sub.dim == m.dim


# --------------------------------------------------------------------------
# scalar restriction


def restrict_along(phi: AlgebraMorphism, m: Module) -> Module:
    """Pull a module over ``phi.target`` back to one over ``phi.source``."""
    if not phi.is_unital:
        raise ValidationError("restriction along a non-unital morphism")
    _require_same_algebra(phi.target, m.algebra)
    action = [m.act_vec(phi.apply(phi.source.basis_vector(i)))
              for i in range(phi.source.dim)]
    return Module(phi.source, action)


def _vertex_quotient(alg: FdAlgebra, subset):
    cache = getattr(alg, "_vertex_quotients", None)
    if cache is None:
        cache = alg._vertex_quotients = {}
    key = frozenset(str(v) for v in subset)
    if key not in cache:
        from taurec.algebra import quotient_by_vertices

        cache[key] = quotient_by_vertices(alg, sorted(key))
    return cache[key]


def view_over_quotient(m: Module, vertices) -> Module:
    """Regard a module annihilated by the given vertices as a module over
    the quotient algebra (cached per algebra and vertex set).
    """
    alg = m.algebra
    for v in vertices:
        start, stop = m.vertex_range(str(v))
        if stop > start:
            raise TaurecError(
                f"module has a nonzero component at vertex {v!r}; "
                "it is not a module over the quotient"
            )
    quot, proj = _vertex_quotient(alg, vertices)
    section = solve(proj.matrix, Matrix.identity(quot.dim, alg.p))
    if section is None:
        raise InternalConsistencyError("projection admits no linear section")
    action = [m.act_vec(section.col_list(i)) for i in range(quot.dim)]
    out = Module(quot, action, label=m.label)
    return out


# --------------------------------------------------------------------------
# tensor product over the right algebra of a bimodule


class TensorResult:
    """M ⊗ Y together with the balanced-map data.

    ``project`` sends raw coordinates (m-index ⊗ y-index, row-major) onto
    the quotient's kept axes; :meth:`pure` places a pure tensor into the
    resulting module's adapted coordinates.
    """

    def __init__(self, module: Module, project: Matrix, y_dim: int):
        self.module = module
        self.project = project
        self._y_dim = y_dim

    def pure(self, mvec, yvec):
        p = self.module.algebra.p
        raw = []
        for a in mvec:
            for b in yvec:
                raw.append(a * b if p == 0 else (a * b) % p)
        col = self.module.to_adapted * self.project * Matrix.column(raw, p)
        return col.col_list(0)


def tensor_over(bim: Bimodule, y: Module) -> TensorResult:
    """The left module M ⊗ Y over the bimodule's left algebra.

    Coordinates of the tensor-product space are reduced modulo the
    balancing relations m·a ⊗ y − m ⊗ a·y for every right-algebra basis
    element a.
    """
    _require_same_algebra(bim.right, y.algebra)
    left = bim.left
    p = left.p
    md, yd = bim.dim, y.dim
    relations = []
    for a_idx in range(bim.right.dim):
        ra = bim.right_action[a_idx]          # m ↦ m·a
        ya = y.action[a_idx]                  # y ↦ a·y
        for i in range(md):
            ra_col = ra.col_list(i)
            for j in range(yd):
                vec = [Fraction(0)] * (md * yd) if p == 0 else [0] * (md * yd)
                for r, c in enumerate(ra_col):
                    if c != 0:
                        vec[r * yd + j] = vec[r * yd + j] + c if p == 0 else (vec[r * yd + j] + c) % p
                ya_col = ya.col_list(j)
                for s, c in enumerate(ya_col):
                    if c != 0:
                        vec[i * yd + s] = vec[i * yd + s] - c if p == 0 else (vec[i * yd + s] - c) % p
                if any(c != 0 for c in vec):
                    relations.append(vec)
    rel_cols = (Matrix.from_cols(relations, p) if relations
                else Matrix.zero(md * yd, 0, p))
    proj, kept = _space_quotient(rel_cols)
    inject = _inject_at(kept, md * yd, p)
    y_ident = Matrix.identity(yd, p)
    action = []
    for i in range(left.dim):
        raw = kron(bim.left_action[i], y_ident)
        action.append(proj * raw * inject)
    module = Module(left, action)
    return TensorResult(module, proj, yd)
