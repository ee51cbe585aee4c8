"""Finite-dimensional basic algebras by structure constants.

An :class:`FdAlgebra` stores a basis, the multiplication table, and a
complete set of primitive orthogonal idempotents indexed by vertex labels.
Construction validates every structural axiom (associativity, unit,
orthogonality, primitivity), so downstream code can rely on the arithmetic
unconditionally.

Element coordinates are plain lists: :class:`fractions.Fraction` entries for
the rationals, integers in ``[0, p)`` for a prime field.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from taurec.errors import (
    DimensionMismatchError,
    FieldMismatchError,
    TaurecError,
    ValidationError,
)
from taurec.linalg import (
    Matrix,
    column_space_basis,
    kernel_basis,
    rref,
    solve,
    subspace_contains,
    subspace_sum,
)

# --------------------------------------------------------------------------
# coordinate-vector helpers


def coerce_scalar(value, p: int):
    """Normalize a scalar into the field: Fraction (p=0) or int in [0, p)."""
    f = Fraction(value)
    if p == 0:
        return f
    den_inv = pow(f.denominator % p, -1, p)
    return (f.numerator % p) * den_inv % p


def zero_vec(n: int, p: int):
    return [Fraction(0)] * n if p == 0 else [0] * n


def unit_vec(n: int, i: int, p: int):
    vec = zero_vec(n, p)
    vec[i] = Fraction(1) if p == 0 else 1
    return vec


def vec_add(x, y, p: int):
    if p:
        return [(a + b) % p for a, b in zip(x, y)]
    return [a + b for a, b in zip(x, y)]


def vec_sub(x, y, p: int):
    if p:
        return [(a - b) % p for a, b in zip(x, y)]
    return [a - b for a, b in zip(x, y)]


def vec_scale(x, c, p: int):
    if p:
        return [(c * a) % p for a in x]
    return [c * a for a in x]


def vec_is_zero(x) -> bool:
    return all(a == 0 for a in x)


def cols_matrix(vectors, ambient: int, p: int) -> Matrix:
    """Matrix whose columns are the given coordinate vectors."""
    if not vectors:
        return Matrix.zero(ambient, 0, p)
    return Matrix.from_cols(vectors, p)


def mat_vec(m: Matrix, vec):
    """Apply a matrix to a coordinate vector, returning a coordinate vector."""
    return (m * Matrix.column(vec, m.p)).col_list(0)


# --------------------------------------------------------------------------


class FdAlgebra:
    """A finite-dimensional algebra with a distinguished complete set of
    primitive orthogonal idempotents.

    Parameters
    ----------
    basis_labels:
        Names for the basis elements (display only, but kept unique).
    mult:
        ``mult[i][j]`` is the coordinate vector of ``b_i · b_j``, where the
        product ``x · y`` composes as "y then x".
    idempotents:
        One coordinate vector per vertex; their sum must be the unit.
    vertex_labels:
        Labels parallel to ``idempotents``.
    """

    def __init__(self, basis_labels, mult, idempotents, vertex_labels,
                 p: int = 0, *, basis_meta=None, name: str = "",
                 validate: bool = True):
        self.basis_labels = tuple(str(x) for x in basis_labels)
        self.dim = len(self.basis_labels)
        self.p = p
        self.name = name
        self.basis_meta = basis_meta
        self.vertex_labels = tuple(str(v) for v in vertex_labels)
        self._mult = tuple(
            tuple(tuple(coerce_scalar(c, p) for c in vec) for vec in row)
            for row in mult
        )
        self._idem = tuple(
            tuple(coerce_scalar(c, p) for c in vec) for vec in idempotents
        )
        self._radical = None
        self._radical_gens = None
        self._left_mats = None
        self._right_mats = None
        if validate:
            self._validate()

    # -- arithmetic ---------------------------------------------------

    def zero(self):
        return zero_vec(self.dim, self.p)

    def basis_vector(self, i: int):
        return unit_vec(self.dim, i, self.p)

    def unit(self):
        out = self.zero()
        for e in self._idem:
            out = vec_add(out, e, self.p)
        return out

    def idempotent(self, vertex: str):
        return list(self._idem[self.vertex_index(vertex)])

    def vertex_index(self, vertex: str) -> int:
        try:
            return self.vertex_labels.index(str(vertex))
        except ValueError:
            raise TaurecError(f"unknown vertex {vertex!r}") from None

    def mult_vec(self, x, y):
        """Coordinates of the product x · y ("y then x")."""
        out = self.zero()
        p = self.p
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self._mult[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj if p == 0 else (xi * yj) % p
                out = vec_add(out, vec_scale(row[j], c, p), p)
        return out

    def left_mult_matrix(self, x) -> Matrix:
        """Matrix of y ↦ x·y on coordinate columns."""
        cols = [self.mult_vec(x, self.basis_vector(j)) for j in range(self.dim)]
        return cols_matrix(cols, self.dim, self.p)

    def right_mult_matrix(self, x) -> Matrix:
        """Matrix of y ↦ y·x on coordinate columns."""
        cols = [self.mult_vec(self.basis_vector(j), x) for j in range(self.dim)]
        return cols_matrix(cols, self.dim, self.p)

    def _basis_left_mats(self):
        if self._left_mats is None:
            self._left_mats = [
                self.left_mult_matrix(self.basis_vector(i)) for i in range(self.dim)
            ]
        return self._left_mats

    def _basis_right_mats(self):
        if self._right_mats is None:
            self._right_mats = [
                self.right_mult_matrix(self.basis_vector(i)) for i in range(self.dim)
            ]
        return self._right_mats

    # -- validation ---------------------------------------------------

    def _validate(self):
        n = self.dim
        if len(set(self.basis_labels)) != n:
            raise ValidationError("duplicate basis labels")
        if len(self._mult) != n or any(len(row) != n for row in self._mult):
            raise DimensionMismatchError("multiplication table shape mismatch")
        for row in self._mult:
            for vec in row:
                if len(vec) != n:
                    raise DimensionMismatchError("structure constant vector length")
        if len(self._idem) != len(self.vertex_labels):
            raise DimensionMismatchError("one idempotent per vertex required")
        if len(set(self.vertex_labels)) != len(self.vertex_labels):
            raise ValidationError("duplicate vertex labels")

        # unit law
        u = self.unit()
        for i in range(n):
            b = self.basis_vector(i)
            if self.mult_vec(u, b) != b or self.mult_vec(b, u) != b:
                raise ValidationError(
                    f"the sum of idempotents is not a unit (fails on {self.basis_labels[i]})"
                )

        # orthogonal idempotents
        for a, ea in enumerate(self._idem):
            for b, eb in enumerate(self._idem):
                prod = self.mult_vec(ea, eb)
                want = list(ea) if a == b else self.zero()
                if prod != want:
                    raise ValidationError(
                        f"idempotents for vertices {self.vertex_labels[a]!r}, "
                        f"{self.vertex_labels[b]!r} are not orthogonal idempotents"
                    )
            if vec_is_zero(ea):
                raise ValidationError(
                    f"idempotent for vertex {self.vertex_labels[a]!r} is zero"
                )

        # associativity
        for i in range(n):
            for j in range(n):
                ij = self._mult[i][j]
                for k in range(n):
                    left = self.mult_vec(ij, self.basis_vector(k))
                    right = self.mult_vec(self.basis_vector(i), self._mult[j][k])
                    if left != right:
                        raise ValidationError(
                            "associativity fails on basis triple "
                            f"({self.basis_labels[i]}, {self.basis_labels[j]}, "
                            f"{self.basis_labels[k]})"
                        )

        # primitivity: each corner e·A·e has radical of codimension 1
        for v, e in zip(self.vertex_labels, self._idem):
            corner = []
            for i in range(n):
                w = self.mult_vec(e, self.mult_vec(self.basis_vector(i), e))
                if not vec_is_zero(w):
                    corner.append(w)
            basis = column_space_basis(cols_matrix(corner, n, self.p))
            k = basis.cols
            if k == 0:
                raise ValidationError(f"corner at vertex {v!r} is zero")
            rad_dim = _subspace_radical(self, basis).cols
            if k - rad_dim != 1:
                raise ValidationError(
                    f"idempotent at vertex {v!r} is not primitive "
                    f"(corner has semisimple part of dimension {k - rad_dim})"
                )

    # -- radical ------------------------------------------------------

    def radical(self) -> Matrix:
        """Columns form a basis of the Jacobson radical."""
        if self._radical is None:
            self._radical = _subspace_radical(self, Matrix.identity(self.dim, self.p))
        return self._radical

    def radical_generators(self):
        """Coordinate vectors spanning rad modulo rad², plus nothing else.

        Together with the idempotents these generate the algebra, which the
        method verifies once by closing the span under multiplication.
        """
        if self._radical_gens is not None:
            return self._radical_gens
        radm = self.radical()
        rad_vecs = [radm.col_list(j) for j in range(radm.cols)]
        sq = []
        for x in rad_vecs:
            for y in rad_vecs:
                w = self.mult_vec(x, y)
                if not vec_is_zero(w):
                    sq.append(w)
        sq_mat = cols_matrix(sq, self.dim, self.p)
        gens = []
        current = sq_mat
        for x in rad_vecs:
            cand = Matrix.column(x, self.p)
            if not subspace_contains(current, cand):
                gens.append(x)
                current = subspace_sum(current, cand)
        self._radical_gens = gens
        self._assert_generating(gens)
        return gens

    def _assert_generating(self, gens):
        from taurec.errors import InternalConsistencyError

        span_vecs = [list(e) for e in self._idem] + [list(g) for g in gens]
        span = column_space_basis(cols_matrix(span_vecs, self.dim, self.p))
        while True:
            grew = False
            cur = [span.col_list(j) for j in range(span.cols)]
            for x in cur:
                for y in cur:
                    w = self.mult_vec(x, y)
                    if not vec_is_zero(w) and not subspace_contains(
                        span, Matrix.column(w, self.p)
                    ):
                        span = subspace_sum(span, Matrix.column(w, self.p))
                        grew = True
            if not grew:
                break
        if span.cols != self.dim:
            raise InternalConsistencyError(
                "idempotents and radical generators fail to generate the algebra"
            )

    def is_semisimple(self) -> bool:
        return self.radical().cols == 0

    # -- misc ---------------------------------------------------------

    def to_dict(self) -> dict:
        def enc(vec):
            if self.p:
                return [int(c) for c in vec]
            return [[c.numerator, c.denominator] for c in vec]

        return {
            "name": self.name,
            "field": {"p": self.p},
            "basis": list(self.basis_labels),
            "vertices": list(self.vertex_labels),
            "mult": [[enc(vec) for vec in row] for row in self._mult],
            "idempotents": [enc(e) for e in self._idem],
        }

    def digest(self) -> str:
        blob = repr(
            (self.basis_labels, self.vertex_labels, self.p, self._mult, self._idem)
        ).encode()
        return hashlib.sha256(blob).hexdigest()[:12]

    def __eq__(self, other):
        if not isinstance(other, FdAlgebra):
            return NotImplemented
        return (
            self.p == other.p
            and self.basis_labels == other.basis_labels
            and self.vertex_labels == other.vertex_labels
            and self._mult == other._mult
            and self._idem == other._idem
        )

    def __repr__(self):
        tag = self.name or "FdAlgebra"
        return f"<{tag}: dim {self.dim}, vertices {list(self.vertex_labels)}>"


def family_radical_coords(prod_coords, k: int, p: int) -> Matrix:
    """Radical of an abstract associative algebra given by structure constants.

    ``prod_coords[i, j]`` holds the coordinates of the product of the i-th
    and j-th basis elements in the same basis.  Returns a k×r matrix whose
    columns are radical basis vectors in family coordinates.

    Uses the trace form of left multiplication (exact in characteristic 0);
    over a prime field the caller must certify the result with
    :func:`assert_family_nilpotent`, since the trace criterion may
    degenerate in small characteristic.
    """
    if k == 0:
        return Matrix.zero(0, 0, p)
    left_traces = []
    for t in range(k):
        tr = Fraction(0) if p == 0 else 0
        for j in range(k):
            c = prod_coords[t, j][j]
            tr = tr + c if p == 0 else (tr + c) % p
        left_traces.append(tr)
    form = []
    for i in range(k):
        row = []
        for j in range(k):
            val = Fraction(0) if p == 0 else 0
            for t in range(k):
                c = prod_coords[i, j][t]
                if c != 0:
                    term = c * left_traces[t]
                    val = val + term if p == 0 else (val + term) % p
            row.append(val)
        form.append(row)
    return kernel_basis(Matrix.from_rows(form, p))


def _family_mult(prod_coords, k: int, p: int, x, y):
    out = zero_vec(k, p)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            c = xi * yj if p == 0 else (xi * yj) % p
            out = vec_add(out, vec_scale(prod_coords[i, j], c, p), p)
    return out


def assert_family_nilpotent(prod_coords, k: int, p: int, rad: Matrix):
    """Certify that the columns of ``rad`` span a nilpotent ideal.

    Powers of an ideal decrease strictly in dimension until they hit zero;
    a nonzero fixed point means the ideal is not nilpotent and the trace
    form failed in this characteristic.
    """
    current = rad
    while current.cols:
        prods = []
        for i in range(current.cols):
            for j in range(rad.cols):
                w = _family_mult(prod_coords, k, p, current.col_list(i),
                                 rad.col_list(j))
                if not vec_is_zero(w):
                    prods.append(w)
        nxt = column_space_basis(cols_matrix(prods, k, p))
        if nxt.cols == current.cols:
            raise ValidationError(
                "cannot certify the radical over this prime field "
                "(trace form degenerates); use the rationals or a larger prime"
            )
        current = nxt


def _subspace_radical(alg: FdAlgebra, basis: Matrix) -> Matrix:
    """Radical of a multiplicatively closed subspace of ``alg``.

    Columns of ``basis`` must be closed under the algebra product (the whole
    algebra, or a corner eAe).
    """
    k = basis.cols
    if k == 0:
        return Matrix.zero(alg.dim, 0, alg.p)
    vecs = [basis.col_list(j) for j in range(k)]
    prod_coords = {}
    if k == alg.dim and basis == Matrix.identity(alg.dim, alg.p):
        for i in range(k):
            for j in range(k):
                prod_coords[i, j] = list(alg._mult[i][j])
    else:
        for i in range(k):
            for j in range(k):
                w = alg.mult_vec(vecs[i], vecs[j])
                x = solve(basis, Matrix.column(w, alg.p))
                if x is None:
                    raise ValidationError("subspace is not closed under multiplication")
                prod_coords[i, j] = x.col_list(0)
    ker = family_radical_coords(prod_coords, k, alg.p)
    if alg.p:
        assert_family_nilpotent(prod_coords, k, alg.p, ker)
    if ker.cols == 0:
        return Matrix.zero(alg.dim, 0, alg.p)
    return column_space_basis(basis * ker)


def algebra_radical(alg: FdAlgebra) -> Matrix:
    """Basis of the Jacobson radical, as matrix columns."""
    return alg.radical()


# --------------------------------------------------------------------------


class AlgebraMorphism:
    """A linear map between algebras that respects multiplication.

    The matrix sends source coordinates to target coordinates.  The unit
    need not map to the unit, but its image must be idempotent;
    ``is_unital`` records whether it is the full unit.
    """

    def __init__(self, source: FdAlgebra, target: FdAlgebra, matrix: Matrix,
                 *, validate: bool = True):
        if source.p != target.p:
            raise FieldMismatchError("morphism between different fields")
        if matrix.shape != (target.dim, source.dim):
            raise DimensionMismatchError(
                f"morphism matrix {matrix.shape} does not map "
                f"dim {source.dim} into dim {target.dim}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate:
            self._validate()
        img_unit = self.apply(source.unit())
        self.is_unital = img_unit == target.unit()

    def apply(self, vec):
        return mat_vec(self.matrix, vec)

    def _validate(self):
        src, tgt = self.source, self.target
        images = [self.apply(src.basis_vector(i)) for i in range(src.dim)]
        for i in range(src.dim):
            for j in range(src.dim):
                lhs = self.apply(src._mult[i][j])
                rhs = tgt.mult_vec(images[i], images[j])
                if lhs != rhs:
                    raise ValidationError(
                        "multiplicativity fails on basis pair "
                        f"({src.basis_labels[i]}, {src.basis_labels[j]})"
                    )
        e = self.apply(src.unit())
        if tgt.mult_vec(e, e) != e:
            raise ValidationError("image of the unit is not idempotent")

    @classmethod
    def from_generator_images(cls, source: FdAlgebra, target: FdAlgebra,
                              vertex_images: dict, arrow_images: dict):
        """Build a morphism of path-compiled algebras from images of the
        trivial paths and arrows.

        ``vertex_images[v]`` is a target vertex label or None (zero);
        ``arrow_images[a]`` is a target coordinate vector or None (zero).
        Every basis path is mapped to the product of its arrow images, and
        the result is validated — an assignment that fails to kill the
        relations is rejected here.
        """
        if source.basis_meta is None:
            raise TaurecError("source algebra does not carry path metadata")
        cols = []
        for label in source.basis_labels:
            meta = source.basis_meta[label]
            arrows = meta["arrows"]
            if not arrows:
                w = vertex_images.get(meta["source"])
                img = target.zero() if w is None else target.idempotent(w)
            else:
                img = None
                for a in arrows:  # travel order; accumulate "then"
                    step = arrow_images.get(a)
                    if step is None:
                        img = target.zero()
                        break
                    step = [coerce_scalar(c, target.p) for c in step]
                    img = step if img is None else target.mult_vec(step, img)
            cols.append(img)
        return cls(source, target, cols_matrix(cols, target.dim, target.p))


# --------------------------------------------------------------------------


def _quotient_by_ideal(alg: FdAlgebra, ideal_cols: Matrix, kept_vertices,
                       name: str = ""):
    """Quotient by a two-sided ideal given by spanning columns.

    Returns ``(quotient, projection)``.  ``kept_vertices`` lists the vertex
    labels whose idempotents survive; the rest must map to zero.
    """
    n = alg.dim
    red, pivots = rref(ideal_cols.transpose())
    killed = list(pivots)
    kept = [j for j in range(n) if j not in set(killed)]
    if not kept:
        raise TaurecError("quotient is the zero algebra")
    # projection: eliminate pivot coordinates using the rref rows
    proj = Matrix.zero(len(kept), n, alg.p).to_rows()
    for r, j in enumerate(kept):
        proj[r][j] = Fraction(1) if alg.p == 0 else 1
        for i, pc in enumerate(killed):
            c = red[i, j]
            if c != 0:
                proj[r][pc] = -c if alg.p == 0 else (-c) % alg.p
    proj = Matrix.from_rows(proj, alg.p)

    def project(vec):
        return mat_vec(proj, vec)

    mult = []
    for a in kept:
        row = []
        for b in kept:
            row.append(project(alg._mult[a][b]))
        mult.append(row)
    idem = [project(alg.idempotent(v)) for v in kept_vertices]
    labels = [alg.basis_labels[j] for j in kept]
    meta = None
    if alg.basis_meta is not None:
        meta = {lab: alg.basis_meta[lab] for lab in labels if lab in alg.basis_meta}
    quotient = FdAlgebra(labels, mult, idem, list(kept_vertices), p=alg.p,
                         basis_meta=meta, name=name)
    projection = AlgebraMorphism(alg, quotient, proj)
    return quotient, projection


def quotient_by_vertices(alg: FdAlgebra, vertices):
    """Quotient by the two-sided ideal generated by the given vertices'
    idempotents.  Returns ``(quotient, projection)``.
    """
    subset = [str(v) for v in vertices]
    for v in subset:
        alg.vertex_index(v)  # raises on unknown labels
    if set(subset) == set(alg.vertex_labels):
        raise TaurecError("quotient by every vertex is the zero algebra")
    e = alg.zero()
    for v in subset:
        e = vec_add(e, alg.idempotent(v), alg.p)
    prods = []
    for i in range(alg.dim):
        ei = alg.mult_vec(alg.basis_vector(i), e)
        if vec_is_zero(ei):
            continue
        for j in range(alg.dim):
            w = alg.mult_vec(ei, alg.basis_vector(j))
            if not vec_is_zero(w):
                prods.append(w)
    ideal = column_space_basis(cols_matrix(prods, alg.dim, alg.p))
    kept_vertices = [v for v in alg.vertex_labels if v not in set(subset)]
    name = f"{alg.name}/({','.join(subset)})" if alg.name else ""
    return _quotient_by_ideal(alg, ideal, kept_vertices, name=name)


def opposite(alg: FdAlgebra) -> FdAlgebra:
    """The opposite algebra: same space, reversed multiplication.

    Cached in both directions, so ``opposite(opposite(a)) is a`` and
    per-algebra module caches stay coherent.
    """
    cached = getattr(alg, "_opposite_cache", None)
    if cached is not None:
        return cached
    n = alg.dim
    mult = [[alg._mult[j][i] for j in range(n)] for i in range(n)]
    meta = None
    if alg.basis_meta is not None:
        meta = {
            lab: {
                "source": m["target"],
                "target": m["source"],
                "arrows": tuple(reversed(m["arrows"])),
            }
            for lab, m in alg.basis_meta.items()
        }
    name = alg.name[:-3] if alg.name.endswith("^op") else (
        f"{alg.name}^op" if alg.name else ""
    )
    out = FdAlgebra(alg.basis_labels, mult, alg._idem, alg.vertex_labels,
                    p=alg.p, basis_meta=meta, name=name)
    alg._opposite_cache = out
    out._opposite_cache = alg
    return out


# --------------------------------------------------------------------------


class Bimodule:
    """A (left, right)-bimodule on a finite-dimensional coordinate space.

    ``left_action[i]`` is the matrix of the i-th left-algebra basis element;
    ``right_action[j]`` the matrix of acting by the j-th right-algebra basis
    element on the right.  Both associativity laws, unitality, and the
    commutation of the two actions are checked on construction.
    """

    def __init__(self, left: FdAlgebra, right: FdAlgebra, dim: int,
                 left_action, right_action, *, labels=None, validate=True):
        if left.p != right.p:
            raise FieldMismatchError("bimodule between different fields")
        self.left = left
        self.right = right
        self.dim = dim
        self.p = left.p
        self.left_action = list(left_action)
        self.right_action = list(right_action)
        self.labels = tuple(labels) if labels is not None else tuple(
            f"m{k}" for k in range(dim)
        )
        if validate:
            self._validate()

    @classmethod
    def zero(cls, left: FdAlgebra, right: FdAlgebra) -> "Bimodule":
        return cls(left, right, 0,
                   [Matrix.zero(0, 0, left.p)] * left.dim,
                   [Matrix.zero(0, 0, left.p)] * right.dim)

    def act_left(self, x) -> Matrix:
        out = Matrix.zero(self.dim, self.dim, self.p)
        for i, c in enumerate(x):
            if c != 0:
                out = out + self.left_action[i].scale(c)
        return out

    def act_right(self, y) -> Matrix:
        out = Matrix.zero(self.dim, self.dim, self.p)
        for j, c in enumerate(y):
            if c != 0:
                out = out + self.right_action[j].scale(c)
        return out

    def _validate(self):
        d = self.dim
        if len(self.left_action) != self.left.dim:
            raise DimensionMismatchError("one action matrix per left basis element")
        if len(self.right_action) != self.right.dim:
            raise DimensionMismatchError("one action matrix per right basis element")
        for m in self.left_action + self.right_action:
            if m.shape != (d, d):
                raise DimensionMismatchError("action matrix shape mismatch")
            if m.p != self.p:
                raise FieldMismatchError("action matrix field tag mismatch")
        ident = Matrix.identity(d, self.p)
        if self.act_left(self.left.unit()) != ident:
            raise ValidationError("left unit does not act as the identity")
        if self.act_right(self.right.unit()) != ident:
            raise ValidationError("right unit does not act as the identity")
        for i in range(self.left.dim):
            for j in range(self.left.dim):
                want = self.act_left(self.left._mult[i][j])
                got = self.left_action[i] * self.left_action[j]
                if want != got:
                    raise ValidationError(
                        "left action fails associativity on "
                        f"({self.left.basis_labels[i]}, {self.left.basis_labels[j]})"
                    )
        for i in range(self.right.dim):
            for j in range(self.right.dim):
                # m·(xy) = (m·x)·y, so acting by a product composes reversed
                want = self.act_right(self.right._mult[i][j])
                got = self.right_action[j] * self.right_action[i]
                if want != got:
                    raise ValidationError(
                        "right action fails associativity on "
                        f"({self.right.basis_labels[i]}, {self.right.basis_labels[j]})"
                    )
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                a = self.left_action[i]
                c = self.right_action[j]
                if a * c != c * a:
                    raise ValidationError(
                        "left and right actions fail to commute on "
                        f"({self.left.basis_labels[i]}, {self.right.basis_labels[j]})"
                    )


def bimodule_from_morphism(left: FdAlgebra, right: FdAlgebra,
                           phi: AlgebraMorphism) -> Bimodule:
    """The left algebra as a bimodule, with the right action twisted
    through a unital morphism ``phi: right → left``: ``m · c = m φ(c)``.
    """
    if phi.source is not right and phi.source != right:
        raise TaurecError("morphism source must be the right-hand algebra")
    if phi.target is not left and phi.target != left:
        raise TaurecError("morphism target must be the left-hand algebra")
    if not phi.is_unital:
        raise ValidationError(
            "twisting morphism must be unital, otherwise the right unit "
            "fails to act as the identity"
        )
    left_action = [left.left_mult_matrix(left.basis_vector(i))
                   for i in range(left.dim)]
    right_action = [left.right_mult_matrix(phi.apply(right.basis_vector(j)))
                    for j in range(right.dim)]
    return Bimodule(left, right, left.dim, left_action, right_action,
                    labels=[f"m:{lab}" for lab in left.basis_labels])


# --------------------------------------------------------------------------


class TriangularAlgebra:
    """The 2×2 triangular algebra of a bimodule, with bookkeeping.

    Elements are triples (a, m, c) with product
    ``(a1,m1,c1)·(a2,m2,c2) = (a1a2, a1·m2 + m1·c2, c1c2)``.
    Holds the assembled :class:`FdAlgebra` plus the coordinate embeddings
    of the three parts and the vertex-label translation maps.
    """

    def __init__(self, algebra, left, right, bimodule, left_index, m_index,
                 right_index, left_vertex_map, right_vertex_map):
        self.algebra = algebra
        self.left = left
        self.right = right
        self.bimodule = bimodule
        self.left_index = tuple(left_index)
        self.m_index = tuple(m_index)
        self.right_index = tuple(right_index)
        self.left_vertex_map = dict(left_vertex_map)
        self.right_vertex_map = dict(right_vertex_map)

    # -- part embeddings / projections --------------------------------

    def embed_left(self, vec):
        out = self.algebra.zero()
        for pos, c in zip(self.left_index, vec):
            out[pos] = c
        return out

    def embed_m(self, vec):
        out = self.algebra.zero()
        for pos, c in zip(self.m_index, vec):
            out[pos] = c
        return out

    def embed_right(self, vec):
        out = self.algebra.zero()
        for pos, c in zip(self.right_index, vec):
            out[pos] = c
        return out

    def part_left(self, vec):
        return [vec[pos] for pos in self.left_index]

    def part_m(self, vec):
        return [vec[pos] for pos in self.m_index]

    def part_right(self, vec):
        return [vec[pos] for pos in self.right_index]


def _uniquify(groups):
    """Prefix labels per group only when they clash across groups."""
    flat = [lab for _, labs in groups for lab in labs]
    if len(set(flat)) == len(flat):
        return {g: list(labs) for g, labs in groups}
    return {g: [f"{g}.{lab}" for lab in labs] for g, labs in groups}


def triangular_algebra(left: FdAlgebra, right: FdAlgebra,
                       bimodule: Bimodule) -> TriangularAlgebra:
    """Assemble the triangular algebra of a bimodule.

    The result's vertex set is the disjoint union of the two vertex sets,
    and its dimension is ``left.dim + bimodule.dim + right.dim``.
    """
    if bimodule.left is not left and bimodule.left != left:
        raise TaurecError("bimodule's left algebra differs from the given one")
    if bimodule.right is not right and bimodule.right != right:
        raise TaurecError("bimodule's right algebra differs from the given one")
    if left.p != right.p:
        raise FieldMismatchError("triangular algebra between different fields")
    p = left.p
    nl, m, nr = left.dim, bimodule.dim, right.dim
    n = nl + m + nr
    left_index = list(range(nl))
    m_index = list(range(nl, nl + m))
    right_index = list(range(nl + m, n))

    base_labels = _uniquify([
        ("A", left.basis_labels), ("M", bimodule.labels), ("C", right.basis_labels),
    ])
    labels = base_labels["A"] + base_labels["M"] + base_labels["C"]
    vlabels = _uniquify([
        ("A", left.vertex_labels), ("C", right.vertex_labels),
    ])
    vertex_labels = vlabels["A"] + vlabels["C"]
    left_vertex_map = dict(zip(left.vertex_labels, vlabels["A"]))
    right_vertex_map = dict(zip(right.vertex_labels, vlabels["C"]))

    def embed(part, vec):
        out = zero_vec(n, p)
        offset = {"A": 0, "M": nl, "C": nl + m}[part]
        for k, c in enumerate(vec):
            out[offset + k] = c
        return out

    zero = zero_vec(n, p)
    mult = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < nl and j < nl:
                mult[i][j] = embed("A", left._mult[i][j])
            elif i >= nl + m and j >= nl + m:
                mult[i][j] = embed("C", right._mult[i - nl - m][j - nl - m])
            elif i < nl and nl <= j < nl + m:
                # a · m through the left action
                mult[i][j] = embed("M", bimodule.left_action[i].col_list(j - nl))
            elif nl <= i < nl + m and j >= nl + m:
                # m · c through the right action
                mult[i][j] = embed("M", bimodule.right_action[j - nl - m].col_list(i - nl))
            else:
                mult[i][j] = list(zero)

    idem = [embed("A", e) for e in left._idem] + [embed("C", e) for e in right._idem]
    name_l = left.name or "A"
    name_r = right.name or "C"
    algebra = FdAlgebra(labels, mult, idem, vertex_labels, p=p,
                        name=f"tri({name_l},{name_r})")
    return TriangularAlgebra(algebra, left, right, bimodule, left_index,
                             m_index, right_index, left_vertex_map,
                             right_vertex_map)
