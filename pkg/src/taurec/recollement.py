"""Recollements of module categories from triangular matrix algebras.

A triangular algebra built from (Λ′, Λ″, bimodule M) induces a recollement
of mod Λ between mod Λ′ and mod Λ″.  Modules over Λ are triples (X, Y, f)
with X over Λ′, Y over Λ″ and f: M ⊗ Y → X; the six functors of the
recollement act by closed formulas on triples.  This module provides the
triple translation, the functors on objects and maps, verification of the
recollement axioms on the catalogs, exactness certificates, and the gluing
and restriction constructions for torsion pairs and support τ-tilting
modules.
"""

from __future__ import annotations

from taurec.algebra import opposite
from taurec.catalog import knit_ar_quiver
from taurec.errors import (
    HypothesisRefused,
    InternalConsistencyError,
    ValidationError,
    VerificationMismatch,
)
from taurec.homological import (
    basic_version,
    decompose,
    ext1_basis,
    ext1_dim,
    extension_module,
    is_isomorphic,
    num_summands,
)
from taurec.linalg import Matrix, solve, vstack, kron
from taurec.modules import (
    Module,
    ModuleMap,
    cokernel,
    composition_factors,
    dim_hom,
    direct_sum,
    hom_basis,
    kernel,
    projective_cover,
    projective_module,
    radical,
    regular_module,
    simple_module,
    tensor_over,
    top,
)
from taurec.torsion import (
    SupportTauTiltingModule,
    TorsionClass,
    TorsionPair,
    _span_rank,
    ext_projectives,
    gen_class,
    is_functorially_finite,
    is_sincere_class,
    is_support_tau_tilting,
    is_tau_tilting,
    is_torsion_class,
    is_torsion_pair,
    left_approximation,
    perp_left,
    torsionfree_of,
)

#: The six functors, named left to right along the recollement diagram.
FUNCTOR_TAGS = ("i*", "i_*", "i^!", "j_!", "j^*", "j_*")

_TAG_ALIASES = {
    "i^*": "i*", "i_star_upper": "i*", "i_star": "i_*", "i_shriek": "i^!",
    "j_lower": "j_!", "j_star_upper": "j^*", "j_star": "j_*",
}

#: Conditions decidable on catalogs: composite endofunctor of mod Λ whose
#: image must stay inside the given class.
CONDITION_COMPOSITES = {
    "i_*i^!": ("i_*", "i^!"),
    "i_*i*": ("i_*", "i*"),
    "j_*j^*": ("j_*", "j^*"),
    "j_!j^*": ("j_!", "j^*"),
}


def _normalize_tag(tag: str) -> str:
    tag = _TAG_ALIASES.get(tag, tag)
    if tag not in FUNCTOR_TAGS:
        raise ValidationError(f"unknown functor tag {tag!r}")
    return tag


def _normalize_condition(condition: str) -> str:
    key = condition.split("(")[0].split("⊆")[0].strip()
    key = key.replace("i^*", "i*")
    if key not in CONDITION_COMPOSITES:
        raise ValidationError(f"unknown subset condition {condition!r}")
    return key


# --------------------------------------------------------------------------
# triples


class Triple:
    """A Λ-module in coordinates: X over Λ′, Y over Λ″, f: M ⊗ Y → X.

    ``tensor`` holds the M ⊗ Y construction that ``f`` is based on; ``f``
    is a validated map of Λ′-modules from ``tensor.module`` to ``x``.
    """

    def __init__(self, x: Module, y: Module, f: ModuleMap, tensor):
        if f.source is not tensor.module or f.target is not x:
            raise ValidationError("triple map must run from M ⊗ Y to X")
        self.x = x
        self.y = y
        self.f = f
        self.tensor = tensor

    def dim_vectors(self):
        return tuple(self.x.dim_vector()), tuple(self.y.dim_vector())

    def __repr__(self):
        return f"Triple(x={list(self.x.dim_vector())}, y={list(self.y.dim_vector())})"


def make_triple(rec, x: Module, y: Module, f: ModuleMap | None = None) -> Triple:
    """Assemble a triple; ``f = None`` means the zero map M ⊗ Y → X."""
    tri = rec.tri
    if x.algebra is not tri.left:
        raise ValidationError("triple X-component must live over the left algebra")
    if y.algebra is not tri.right:
        raise ValidationError("triple Y-component must live over the right algebra")
    tensor = tensor_over(tri.bimodule, y)
    if f is None:
        f = ModuleMap.zero(tensor.module, x)
    return Triple(x, y, f, tensor)


class TriangularRecollement:
    """The recollement of mod Λ induced by a triangular algebra.

    Holds the assembled algebra, its two corners, the bimodule, and the
    catalogs of indecomposables over all three algebras.  With
    ``verify=True`` the recollement axioms are checked on the catalogs at
    construction and a failure raises :class:`VerificationMismatch`.
    """

    def __init__(self, tri, *, catalogs=None, verify: bool = True,
                 max_nodes: int = 512, max_dim: int = 64):
        self.tri = tri
        self.algebra = tri.algebra
        self.left = tri.left
        self.right = tri.right
        self.bimodule = tri.bimodule
        if catalogs is None:
            _, cat_a = knit_ar_quiver(self.left, max_nodes=max_nodes, max_dim=max_dim)
            _, cat_c = knit_ar_quiver(self.right, max_nodes=max_nodes, max_dim=max_dim)
            _, cat_b = knit_ar_quiver(self.algebra, max_nodes=max_nodes, max_dim=max_dim)
            catalogs = (cat_a, cat_c, cat_b)
        self.catalog_left, self.catalog_right, self.catalog = catalogs
        self._objects = {}
        self._triples = {}
        self._entry_images = {}
        self._certificates = {}
        self.report = None
        if verify:
            self.report = verify_recollement_axioms(self)
            if not self.report.ok:
                raise VerificationMismatch(
                    f"recollement axioms failed: {self.report!r}")

    @property
    def left_vertex_map(self):
        return self.tri.left_vertex_map

    @property
    def right_vertex_map(self):
        return self.tri.right_vertex_map

    def part_slices(self, b: Module):
        """Adapted-coordinate indices of the X- and Y-slices of a Λ-module."""
        if b.algebra is not self.algebra:
            raise ValidationError("module does not live over the assembled algebra")
        xsl = []
        for v in self.left.vertex_labels:
            start, stop = b.vertex_range(self.left_vertex_map[v])
            xsl.extend(range(start, stop))
        ysl = []
        for v in self.right.vertex_labels:
            start, stop = b.vertex_range(self.right_vertex_map[v])
            ysl.extend(range(start, stop))
        if sorted(xsl + ysl) != list(range(b.dim)):
            raise InternalConsistencyError("vertex slices do not tile the module")
        return xsl, ysl

    def __repr__(self):
        return (f"TriangularRecollement({self.left.name or 'A'}, "
                f"{self.right.name or 'C'})")


# --------------------------------------------------------------------------
# triple <-> module translation


def module_to_triple(rec: TriangularRecollement, b: Module) -> Triple:
    """Read off (X, Y, f) from a Λ-module (cached per module object)."""
    key = id(b)
    hit = rec._triples.get(key)
    if hit is not None and hit[0] is b:
        return hit[1]
    tri = rec.tri
    p = b.algebra.p
    xsl, ysl = rec.part_slices(b)
    x = Module(tri.left,
               [b.action[tri.left_index[k]].submatrix(xsl, xsl)
                for k in range(tri.left.dim)])
    y = Module(tri.right,
               [b.action[tri.right_index[k]].submatrix(ysl, ysl)
                for k in range(tri.right.dim)])
    tensor = tensor_over(tri.bimodule, y)
    md, yd = tri.bimodule.dim, y.dim
    cols = []
    for i in range(md):
        block = x.to_adapted * b.action[tri.m_index[i]].submatrix(xsl, ysl) \
            * y.from_adapted
        for j in range(yd):
            cols.append(block.col_list(j))
    raw = (Matrix.from_cols(cols, p) if cols and x.dim
           else Matrix.zero(x.dim, md * yd, p))
    section = solve(tensor.project,
                    Matrix.identity(tensor.module.dim, p))
    if section is None:
        raise InternalConsistencyError("tensor projection admits no section")
    f = ModuleMap(tensor.module, x,
                  raw * section * tensor.module.from_adapted)
    t = Triple(x, y, f, tensor)
    rec._triples[key] = (b, t)
    return t


def triple_to_module(rec: TriangularRecollement, t: Triple) -> Module:
    """Assemble the Λ-module with underlying space X ⊕ Y.

    Λ′ acts on the X-block, Λ″ on the Y-block, and a bimodule basis element
    m acts by y ↦ f(m ⊗ y).
    """
    tri = rec.tri
    p = tri.algebra.p
    nx, ny = t.x.dim, t.y.dim
    md, yd = tri.bimodule.dim, t.y.dim
    lift = t.f.matrix * t.tensor.module.to_adapted * t.tensor.project
    fblocks = []
    for i in range(md):
        cols = [lift.col_list(i * yd + j) for j in range(yd)]
        fblocks.append(Matrix.from_cols(cols, p) if cols and nx
                       else Matrix.zero(nx, yd, p))
    action = []
    for b_idx in range(tri.algebra.dim):
        if b_idx in tri.left_index:
            k = tri.left_index.index(b_idx)
            mat = Matrix.block([[t.x.action[k], Matrix.zero(nx, ny, p)],
                                [Matrix.zero(ny, nx, p), Matrix.zero(ny, ny, p)]], p)
        elif b_idx in tri.m_index:
            i = tri.m_index.index(b_idx)
            mat = Matrix.block([[Matrix.zero(nx, nx, p), fblocks[i]],
                                [Matrix.zero(ny, nx, p), Matrix.zero(ny, ny, p)]], p)
        else:
            k = tri.right_index.index(b_idx)
            mat = Matrix.block([[Matrix.zero(nx, nx, p), Matrix.zero(nx, ny, p)],
                                [Matrix.zero(ny, nx, p), t.y.action[k]]], p)
        action.append(mat)
    label = f"({t.x.label or '?'},{t.y.label or '?'})"
    return Module(tri.algebra, action, label=label)


# --------------------------------------------------------------------------
# the six functors


def _functor_object(rec, tag, m):
    """apply_functor with a per-object cache, also returning the aux data."""
    key = (tag, id(m))
    hit = rec._objects.get(key)
    if hit is not None and hit[0] is m:
        return hit[1], hit[2]
    tri = rec.tri
    if tag == "i_*":
        if m.algebra is not tri.left:
            raise ValidationError("i_* expects a module over the left algebra")
        t = make_triple(rec, m, Module.zero(tri.right))
        out, aux = triple_to_module(rec, t), t
    elif tag == "j_*":
        if m.algebra is not tri.right:
            raise ValidationError("j_* expects a module over the right algebra")
        t = make_triple(rec, Module.zero(tri.left), m)
        out, aux = triple_to_module(rec, t), t
    elif tag == "j_!":
        if m.algebra is not tri.right:
            raise ValidationError("j_! expects a module over the right algebra")
        tensor = tensor_over(tri.bimodule, m)
        t = Triple(tensor.module, m, ModuleMap.identity(tensor.module), tensor)
        out, aux = triple_to_module(rec, t), t
    elif tag in ("i*", "i^!", "j^*"):
        if m.algebra is not tri.algebra:
            raise ValidationError(f"{tag} expects a module over the assembled algebra")
        t = module_to_triple(rec, m)
        if tag == "i^!":
            out, aux = t.x, t
        elif tag == "j^*":
            out, aux = t.y, t
        else:
            q, proj = cokernel(t.f)
            out, aux = q, (t, q, proj)
    else:
        raise ValidationError(f"unknown functor tag {tag!r}")
    rec._objects[key] = (m, out, aux)
    return out, aux


def apply_functor(rec: TriangularRecollement, tag: str, m: Module) -> Module:
    """One of i*, i_*, i^!, j_!, j^*, j_* applied to a module."""
    return _functor_object(rec, _normalize_tag(tag), m)[0]


def apply_functor_to_map(rec: TriangularRecollement, tag: str,
                         g: ModuleMap) -> ModuleMap:
    """The functor on morphisms; endpoints match ``apply_functor`` outputs."""
    tag = _normalize_tag(tag)
    p = rec.algebra.p
    src, src_aux = _functor_object(rec, tag, g.source)
    tgt, tgt_aux = _functor_object(rec, tag, g.target)
    if tag in ("i_*", "j_*"):
        # given coordinates of the assembled module are the adapted
        # coordinates of the only nonzero component
        mat = tgt.to_adapted * g.matrix * src.from_adapted
        return ModuleMap(src, tgt, mat)
    if tag == "j_!":
        ts, tt = src_aux.tensor, tgt_aux.tensor
        section = solve(ts.project, Matrix.identity(ts.module.dim, p))
        if section is None:
            raise InternalConsistencyError("tensor projection admits no section")
        descended = tt.project * kron(
            Matrix.identity(rec.bimodule.dim, p), g.matrix) * section
        xblock = tt.module.to_adapted * descended * ts.module.from_adapted
        grid = Matrix.block(
            [[xblock, Matrix.zero(tt.module.dim, src_aux.y.dim, p)],
             [Matrix.zero(tgt_aux.y.dim, ts.module.dim, p), g.matrix]], p)
        return ModuleMap(src, tgt, tgt.to_adapted * grid * src.from_adapted)
    if tag in ("i^!", "j^*"):
        ts, tt = src_aux, tgt_aux
        sl_s = rec.part_slices(g.source)[0 if tag == "i^!" else 1]
        sl_t = rec.part_slices(g.target)[0 if tag == "i^!" else 1]
        part = g.matrix.submatrix(sl_t, sl_s)
        return ModuleMap(src, tgt, tgt.to_adapted * part * src.from_adapted)
    # i*: the induced map on cokernels
    (ts, qs, proj_s) = src_aux
    (tt, qt, proj_t) = tgt_aux
    xs = rec.part_slices(g.source)[0]
    xt = rec.part_slices(g.target)[0]
    gx = tt.x.to_adapted * g.matrix.submatrix(xt, xs) * ts.x.from_adapted
    section = solve(proj_s.matrix, Matrix.identity(qs.dim, p))
    if section is None:
        raise InternalConsistencyError("cokernel projection admits no section")
    return ModuleMap(src, tgt, proj_t.matrix * gx * section)


def _decomposed_ids(cat, m: Module):
    if m.dim == 0:
        return ()
    ids = []
    for part in decompose(m):
        idx = cat.index_of(part.module)
        if idx < 0:
            raise InternalConsistencyError(
                "functor image has a summand outside the target catalog")
        ids.append(idx)
    return tuple(sorted(set(ids)))


def _source_catalog(rec, tag):
    if tag in ("i*", "i^!", "j^*"):
        return rec.catalog
    if tag == "i_*":
        return rec.catalog_left
    return rec.catalog_right


def _target_catalog(rec, tag):
    if tag == "i*" or tag == "i^!":
        return rec.catalog_left
    if tag == "j^*":
        return rec.catalog_right
    return rec.catalog


def _entry_image_ids(rec, tag, i):
    """Iso-classes of F(catalog entry i), as ids in the target catalog."""
    key = (tag, i)
    hit = rec._entry_images.get(key)
    if hit is None:
        m = _source_catalog(rec, tag).modules[i]
        hit = _decomposed_ids(_target_catalog(rec, tag), apply_functor(rec, tag, m))
        rec._entry_images[key] = hit
    return hit


def image_class(rec: TriangularRecollement, tag: str, cls) -> frozenset:
    """Iso-classes of the functor image of a class (zero summands dropped)."""
    tag = _normalize_tag(tag)
    ids = cls.ids if isinstance(cls, TorsionClass) else frozenset(cls)
    out = set()
    for i in ids:
        out.update(_entry_image_ids(rec, tag, i))
    return frozenset(out)


# --------------------------------------------------------------------------
# exactness certificates


class ExactnessCertificate:
    """Outcome of the bimodule-projectivity test for one functor."""

    def __init__(self, functor: str, exact: bool, reason: str,
                 witness: dict | None = None):
        self.functor = functor
        self.exact = exact
        self.reason = reason
        self.witness = witness

    def __bool__(self):
        return self.exact

    def __repr__(self):
        state = "exact" if self.exact else "not exact"
        return f"ExactnessCertificate({self.functor}: {state}; {self.reason})"


def _is_projective(m: Module) -> bool:
    if m.dim == 0:
        return True
    cover = projective_cover(m)
    ker, _ = kernel(cover)
    return ker.dim == 0


def _as_right_module(alg, action):
    """A right module as a left module over the opposite algebra."""
    return Module(opposite(alg), list(action))


def exactness_certificate(rec: TriangularRecollement, tag: str) -> ExactnessCertificate:
    """Decide exactness of i*, j_!, i^! or j_* by module-theoretic criteria.

    Each of the four is one-sided exact for free; full exactness is
    equivalent to projectivity of the module that represents the functor.
    A non-exact verdict is accompanied, when possible, by a short exact
    sequence from the family 0 → rad P → P → top P → 0 whose image fails.
    """
    tag = _normalize_tag(tag)
    if tag in ("i_*", "j^*"):
        raise ValidationError(f"{tag} is exact componentwise; "
                              "certificates cover i*, j_!, i^!, j_*")
    hit = rec._certificates.get(tag)
    if hit is not None:
        return hit
    tri = rec.tri
    p = rec.algebra.p
    if tag == "j_!":
        if rec.bimodule.dim == 0:
            cert = ExactnessCertificate(tag, True, "the bimodule is zero")
        else:
            m_right = _as_right_module(rec.right, rec.bimodule.right_action)
            good = _is_projective(m_right)
            reason = ("the bimodule is projective as a right module over the "
                      "right algebra" if good else
                      "the bimodule is not projective as a right module over "
                      "the right algebra")
            cert = ExactnessCertificate(tag, good, reason)
    elif tag == "i*":
        lam = rec.algebra
        nl = rec.left.dim
        action = []
        for b_idx in range(lam.dim):
            cols = [tri.part_left(lam._mult[tri.left_index[k]][b_idx])
                    for k in range(nl)]
            action.append(Matrix.from_cols(cols, p) if cols
                          else Matrix.zero(0, 0, p))
        corner = _as_right_module(lam, action)
        good = _is_projective(corner)
        reason = ("the left corner is projective as a right module over the "
                  "assembled algebra" if good else
                  "the left corner is not projective as a right module over "
                  "the assembled algebra")
        cert = ExactnessCertificate(tag, good, reason)
    elif tag == "i^!":
        image = apply_functor(rec, "i_*", regular_module(rec.left))
        good = _is_projective(image)
        reason = ("the left regular module pushes to a projective module"
                  if good else
                  "the left regular module pushes to a non-projective module")
        cert = ExactnessCertificate(tag, good, reason)
    else:  # j_*
        image = apply_functor(rec, "j^*", regular_module(rec.algebra))
        good = _is_projective(image)
        reason = ("the regular module restricts to a projective module"
                  if good else
                  "the regular module restricts to a non-projective module")
        cert = ExactnessCertificate(tag, good, reason)
    if not cert.exact:
        cert.witness = _exactness_witness(rec, tag)
    rec._certificates[tag] = cert
    return cert


def _exactness_witness(rec, tag):
    """Search 0 → rad P → P → top P → 0 for a sequence the functor breaks."""
    src_alg = rec.algebra if tag in ("i*", "i^!") else rec.right
    for v in src_alg.vertex_labels:
        proj_mod = projective_module(src_alg, v)
        rad_mod, incl = radical(proj_mod)
        top_mod, onto = top(proj_mod)
        if rad_mod.dim == 0:
            continue
        f_incl = apply_functor_to_map(rec, tag, incl)
        f_onto = apply_functor_to_map(rec, tag, onto)
        mono = f_incl.rank() == f_incl.source.dim
        epi = f_onto.rank() == f_onto.target.dim
        middle = (f_onto.compose(f_incl).is_zero()
                  and f_incl.rank() == f_incl.target.dim - f_onto.rank())
        if mono and epi and middle:
            continue
        lost = ("injectivity" if not mono
                else "surjectivity" if not epi else "middle exactness")
        return {
            "sequence": f"0 → rad P({v}) → P({v}) → top P({v}) → 0",
            "lost": lost,
        }
    return None


# --------------------------------------------------------------------------
# subset conditions


class ConditionReport:
    """Result of a catalog-level ``composite(class) ⊆ class`` check."""

    def __init__(self, condition, holds, image_ids, offenders, failing_sources):
        self.condition = condition
        self.holds = holds
        self.image_ids = tuple(sorted(image_ids))
        self.offenders = tuple(sorted(offenders))
        self.failing_sources = tuple(sorted(failing_sources))

    def __bool__(self):
        return self.holds

    def as_dict(self):
        return {
            "condition": self.condition,
            "holds": self.holds,
            "image_ids": list(self.image_ids),
            "offenders": list(self.offenders),
            "failing_sources": list(self.failing_sources),
        }

    def __repr__(self):
        state = "holds" if self.holds else f"fails at {list(self.offenders)}"
        return f"ConditionReport({self.condition}: {state})"


def check_condition(rec: TriangularRecollement, condition: str, cls) -> ConditionReport:
    """Apply a composite such as i_*i^! to every member of a class of
    Λ-modules and test whether all image summands stay inside the class."""
    key = _normalize_condition(condition)
    outer, inner = CONDITION_COMPOSITES[key]
    ids = cls.ids if isinstance(cls, TorsionClass) else frozenset(cls)
    cat = rec.catalog
    images = set()
    failing = []
    for i in sorted(ids):
        mid = apply_functor(rec, inner, cat.modules[i])
        out = apply_functor(rec, outer, mid)
        out_ids = _decomposed_ids(cat, out)
        images.update(out_ids)
        if any(j not in ids for j in out_ids):
            failing.append(i)
    offenders = {j for j in images if j not in ids}
    return ConditionReport(key, not offenders, images, offenders, failing)


# --------------------------------------------------------------------------
# axiom verification


class RecollementReport:
    """Named failures with witnesses, plus per-check instance counts."""

    def __init__(self):
        self.failures = []
        self.counts = {}

    def count(self, check: str, n: int = 1):
        self.counts[check] = self.counts.get(check, 0) + n

    def fail(self, check: str, detail: str):
        self.failures.append((check, detail))

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def failed_checks(self):
        return {check for check, _ in self.failures}

    def __repr__(self):
        if self.ok:
            return f"RecollementReport(ok, {sum(self.counts.values())} checks)"
        lines = "; ".join(f"{c}: {d}" for c, d in self.failures)
        return f"RecollementReport({lines})"


def _x_picker(rec, b, p):
    xsl, _ = rec.part_slices(b)
    return Matrix.identity(b.dim, p).submatrix(xsl, list(range(b.dim)))


def _y_picker(rec, b, p):
    _, ysl = rec.part_slices(b)
    return Matrix.identity(b.dim, p).submatrix(ysl, list(range(b.dim)))


def counit_j(rec: TriangularRecollement, b: Module) -> ModuleMap:
    """ε_B : j_!j^*(B) → B, the pair (f, id_Y) in triple coordinates."""
    t = module_to_triple(rec, b)
    p = b.algebra.p
    jj = triple_to_module(
        rec, Triple(t.tensor.module, t.y,
                    ModuleMap.identity(t.tensor.module), t.tensor))
    grid = Matrix.block(
        [[t.x.from_adapted * t.f.matrix, Matrix.zero(t.x.dim, t.y.dim, p)],
         [Matrix.zero(t.y.dim, t.tensor.module.dim, p), t.y.from_adapted]], p)
    return ModuleMap(jj, b, grid * jj.from_adapted)


def unit_i(rec: TriangularRecollement, b: Module) -> ModuleMap:
    """The unit B → i_*i^*(B), projecting X onto the cokernel of f."""
    p = b.algebra.p
    q, aux = _functor_object(rec, "i*", b)
    t, _, proj = aux
    iq = apply_functor(rec, "i_*", q)
    mat = iq.to_adapted * proj.matrix * t.x.to_adapted * _x_picker(rec, b, p)
    return ModuleMap(b, iq, mat)


def unit_lambda(rec: TriangularRecollement, b: Module) -> ModuleMap:
    """λ_B : i_*i^!(B) → B, the inclusion of the X-slice."""
    t = module_to_triple(rec, b)
    p = b.algebra.p
    ix = apply_functor(rec, "i_*", t.x)
    mat = vstack(t.x.from_adapted,
                 Matrix.zero(t.y.dim, t.x.dim, p)) * ix.from_adapted
    return ModuleMap(ix, b, mat)


def unit_eta(rec: TriangularRecollement, b: Module) -> ModuleMap:
    """η_B : B → j_*j^*(B), the projection onto the Y-slice."""
    t = module_to_triple(rec, b)
    p = b.algebra.p
    jy = apply_functor(rec, "j_*", t.y)
    mat = jy.to_adapted * t.y.to_adapted * _y_picker(rec, b, p)
    return ModuleMap(b, jy, mat)


def _c_part_dim(rec, m: Module) -> int:
    _, ysl = rec.part_slices(m)
    return len(ysl)


def _check_sequences(rec, report, i, b, certs):
    eps = counit_j(rec, b)
    u = unit_i(rec, b)
    if not u.compose(eps).is_zero():
        report.fail("four-term-upper", f"entry {i}: unit ∘ counit ≠ 0")
    if u.rank() != u.target.dim:
        report.fail("four-term-upper", f"entry {i}: B → i_*i^*(B) not epi")
    if eps.rank() != b.dim - u.target.dim:
        report.fail("four-term-upper", f"entry {i}: not exact at B")
    ker_eps, _ = kernel(eps)
    if _c_part_dim(rec, ker_eps) != 0:
        report.fail("four-term-upper",
                    f"entry {i}: ker ε leaves the image of i_*")
    lam = unit_lambda(rec, b)
    eta = unit_eta(rec, b)
    if not eta.compose(lam).is_zero():
        report.fail("four-term-lower", f"entry {i}: η ∘ λ ≠ 0")
    if lam.rank() != lam.source.dim:
        report.fail("four-term-lower", f"entry {i}: i_*i^!(B) → B not mono")
    if lam.rank() != b.dim - eta.rank():
        report.fail("four-term-lower", f"entry {i}: not exact at B")
    coker_eta, _ = cokernel(eta)
    if _c_part_dim(rec, coker_eta) != 0:
        report.fail("four-term-lower",
                    f"entry {i}: coker η leaves the image of i_*")
    report.count("four-term-upper", 4)
    report.count("four-term-lower", 4)
    if certs["i^!"].exact:
        if eta.rank() != eta.target.dim:
            report.fail("short-form-lower",
                        f"entry {i}: η not epi although i^! is exact")
        report.count("short-form-lower")
    if certs["i*"].exact:
        if eps.rank() != eps.source.dim:
            report.fail("short-form-upper",
                        f"entry {i}: ε not mono although i* is exact")
        report.count("short-form-upper")


def _check_serre(rec, report):
    """Spot-check that the image of i_* is closed under submodules,
    quotients and extensions, using radicals, tops and catalog Ext classes."""
    cat = rec.catalog
    embedded = [i for i, b in enumerate(cat.modules)
                if _c_part_dim(rec, b) == 0]
    for i in embedded:
        b = cat.modules[i]
        rad_mod, _ = radical(b)
        top_mod, _ = top(b)
        if _c_part_dim(rec, rad_mod) != 0 or _c_part_dim(rec, top_mod) != 0:
            report.fail("serre-closed", f"entry {i}: radical or top escapes")
        report.count("serre-closed", 2)
    for i in embedded:
        for j in embedded:
            for theta in ext1_basis(cat.modules[i], cat.modules[j]):
                middle = extension_module(cat.modules[i], cat.modules[j], theta)
                if _c_part_dim(rec, middle) != 0:
                    report.fail("serre-closed",
                                f"extension of {i} by {j} escapes")
                report.count("serre-closed")


def _check_lemma31(rec, report, certs):
    """Whenever i_*i^!(𝒯) ⊆ 𝒯 holds, i* and i^! agree on 𝒯 (and dually)."""
    cat = rec.catalog
    for i, b in enumerate(cat.modules):
        tcl = gen_class(cat, b)
        if check_condition(rec, "i_*i^!", tcl.ids).holds:
            if image_class(rec, "i*", tcl.ids) != image_class(rec, "i^!", tcl.ids):
                report.fail("functor-image-agreement",
                            f"gen class of entry {i}: i* and i^! images differ")
            report.count("functor-image-agreement")
        fre = torsionfree_of(cat, b)
        if check_condition(rec, "i_*i*", fre).holds:
            if image_class(rec, "i*", fre) != image_class(rec, "i^!", fre):
                report.fail("functor-image-agreement",
                            f"free class of entry {i}: i* and i^! images differ")
            report.count("functor-image-agreement")


def verify_recollement_axioms(rec: TriangularRecollement) -> RecollementReport:
    """Check the recollement axioms exhaustively over the three catalogs.

    Covers: triple round-trips, adjunction dimension identities for all
    four adjoint pairs, the unit/counit isomorphisms, the vanishing
    composites, Im i_* = Ker j^*, both four-term sequences (with their
    short forms under exactness certificates), closure of the embedded
    subcategory, Ext-dimension adjunctions under certificates, and the
    agreement of i* and i^! on stable classes.
    """
    report = RecollementReport()
    cat_a, cat_c, cat_b = rec.catalog_left, rec.catalog_right, rec.catalog
    certs = {tag: exactness_certificate(rec, tag)
             for tag in ("i*", "j_!", "i^!", "j_*")}

    for i, b in enumerate(cat_b.modules):
        back = triple_to_module(rec, module_to_triple(rec, b))
        if not is_isomorphic(back, b):
            report.fail("triple-roundtrip", f"entry {i} does not return")
        report.count("triple-roundtrip")

    lower_shriek = [apply_functor(rec, "j_!", y) for y in cat_c.modules]
    lower_star = [apply_functor(rec, "j_*", y) for y in cat_c.modules]
    push = [apply_functor(rec, "i_*", x) for x in cat_a.modules]
    upper = [apply_functor(rec, "i*", b) for b in cat_b.modules]
    shriek = [apply_functor(rec, "i^!", b) for b in cat_b.modules]
    restrict = [apply_functor(rec, "j^*", b) for b in cat_b.modules]

    for k, x in enumerate(cat_a.modules):
        for i, b in enumerate(cat_b.modules):
            if dim_hom(push[k], b) != dim_hom(x, shriek[i]):
                report.fail("adjunction-(i_*,i^!)", f"A-entry {k}, entry {i}")
            if dim_hom(b, push[k]) != dim_hom(upper[i], x):
                report.fail("adjunction-(i*,i_*)", f"A-entry {k}, entry {i}")
            report.count("adjunction-(i_*,i^!)")
            report.count("adjunction-(i*,i_*)")
    for k, y in enumerate(cat_c.modules):
        for i, b in enumerate(cat_b.modules):
            if dim_hom(lower_shriek[k], b) != dim_hom(y, restrict[i]):
                report.fail("adjunction-(j_!,j^*)", f"C-entry {k}, entry {i}")
            if dim_hom(b, lower_star[k]) != dim_hom(restrict[i], y):
                report.fail("adjunction-(j^*,j_*)", f"C-entry {k}, entry {i}")
            report.count("adjunction-(j_!,j^*)")
            report.count("adjunction-(j^*,j_*)")

    for k, y in enumerate(cat_c.modules):
        if apply_functor(rec, "i*", lower_shriek[k]).dim != 0:
            report.fail("vanishing-composites", f"i* j_! ≠ 0 at C-entry {k}")
        if apply_functor(rec, "i^!", lower_star[k]).dim != 0:
            report.fail("vanishing-composites", f"i^! j_* ≠ 0 at C-entry {k}")
        report.count("vanishing-composites", 2)
        if certs["i*"].exact and apply_functor(rec, "i^!", lower_shriek[k]).dim != 0:
            report.fail("vanishing-composites", f"i^! j_! ≠ 0 at C-entry {k}")
        if certs["i^!"].exact and apply_functor(rec, "i*", lower_star[k]).dim != 0:
            report.fail("vanishing-composites", f"i* j_* ≠ 0 at C-entry {k}")

    for k, x in enumerate(cat_a.modules):
        if not is_isomorphic(apply_functor(rec, "i*", push[k]), x):
            report.fail("unit-counit-iso", f"i* i_* at A-entry {k}")
        if not is_isomorphic(apply_functor(rec, "i^!", push[k]), x):
            report.fail("unit-counit-iso", f"i^! i_* at A-entry {k}")
        report.count("unit-counit-iso", 2)
    for k, y in enumerate(cat_c.modules):
        if not is_isomorphic(apply_functor(rec, "j^*", lower_shriek[k]), y):
            report.fail("unit-counit-iso", f"j^* j_! at C-entry {k}")
        if not is_isomorphic(apply_functor(rec, "j^*", lower_star[k]), y):
            report.fail("unit-counit-iso", f"j^* j_* at C-entry {k}")
        report.count("unit-counit-iso", 2)

    push_ids = set()
    for k, img in enumerate(push):
        idx = cat_b.index_of(img)
        if idx < 0:
            report.fail("image-equals-kernel", f"i_* of A-entry {k} not cataloged")
        else:
            push_ids.add(idx)
        report.count("image-equals-kernel")
    for i, b in enumerate(cat_b.modules):
        killed = restrict[i].dim == 0
        if killed != (i in push_ids):
            report.fail("image-equals-kernel",
                        f"entry {i}: j^*-kernel and i_*-image disagree")
        report.count("image-equals-kernel")

    for i, b in enumerate(cat_b.modules):
        _check_sequences(rec, report, i, b, certs)

    if certs["i*"].exact and not certs["j_!"].exact:
        report.fail("exactness-implications", "i* exact but j_! is not")
    if certs["i^!"].exact and not certs["j_*"].exact:
        report.fail("exactness-implications", "i^! exact but j_* is not")
    report.count("exactness-implications", 2)

    _check_serre(rec, report)

    if certs["i^!"].exact:
        for k, x in enumerate(cat_a.modules):
            for i, b in enumerate(cat_b.modules):
                if ext1_dim(push[k], b) != ext1_dim(x, shriek[i]):
                    report.fail("ext-adjunction-(i_*,i^!)",
                                f"A-entry {k}, entry {i}")
                report.count("ext-adjunction-(i_*,i^!)")
    if certs["i*"].exact:
        for i, b in enumerate(cat_b.modules):
            for k, x in enumerate(cat_a.modules):
                if ext1_dim(upper[i], x) != ext1_dim(b, push[k]):
                    report.fail("ext-adjunction-(i*,i_*)",
                                f"entry {i}, A-entry {k}")
                report.count("ext-adjunction-(i*,i_*)")
    if certs["j_!"].exact:
        for k, y in enumerate(cat_c.modules):
            for i, b in enumerate(cat_b.modules):
                if ext1_dim(lower_shriek[k], b) != ext1_dim(y, restrict[i]):
                    report.fail("ext-adjunction-(j_!,j^*)",
                                f"C-entry {k}, entry {i}")
                report.count("ext-adjunction-(j_!,j^*)")
    if certs["j_*"].exact:
        for i, b in enumerate(cat_b.modules):
            for k, y in enumerate(cat_c.modules):
                if ext1_dim(restrict[i], y) != ext1_dim(b, lower_star[k]):
                    report.fail("ext-adjunction-(j^*,j_*)",
                                f"entry {i}, C-entry {k}")
                report.count("ext-adjunction-(j^*,j_*)")

    _check_lemma31(rec, report, certs)
    return report


# --------------------------------------------------------------------------
# gluing


def _resolve_pair(cat, arg):
    """Accept a TorsionPair or an (ids, ids) tuple; verify it."""
    if isinstance(arg, TorsionPair):
        t_ids, f_ids = frozenset(arg.torsion.ids), frozenset(arg.free_ids)
    else:
        t_ids, f_ids = frozenset(arg[0]), frozenset(arg[1])
    if not is_torsion_pair(cat, t_ids, f_ids):
        raise ValidationError("input does not verify as a torsion pair")
    return t_ids, f_ids


def glue_torsion_pair(rec: TriangularRecollement, pair_left,
                      pair_right) -> TorsionPair:
    """Glue torsion pairs over the corners into one over Λ.

    Membership: B is torsion when i*(B) and j^*(B) land in the two torsion
    classes; torsionfree when i^!(B) and j^*(B) land in the free classes.
    """
    ta, fa = _resolve_pair(rec.catalog_left, pair_left)
    tc, fc = _resolve_pair(rec.catalog_right, pair_right)
    cat = rec.catalog
    t_ids, f_ids = set(), set()
    for i in range(len(cat)):
        ui = _entry_image_ids(rec, "i*", i)
        ri = _entry_image_ids(rec, "j^*", i)
        si = _entry_image_ids(rec, "i^!", i)
        if all(j in ta for j in ui) and all(j in tc for j in ri):
            t_ids.add(i)
        if all(j in fa for j in si) and all(j in fc for j in ri):
            f_ids.add(i)
    if not is_torsion_pair(cat, t_ids, f_ids):
        raise InternalConsistencyError(
            "glued classes do not form a torsion pair")
    return TorsionPair(TorsionClass(cat, t_ids, verified=True), f_ids)


def _induced_pair(cat, t: Module):
    """(Gen T, 𝓕(T)) for a support τ-tilting module."""
    return gen_class(cat, t).ids, torsionfree_of(cat, t)


def _as_module(arg):
    return arg.module if isinstance(arg, SupportTauTiltingModule) else arg


def _stt_from_class(cat, tclass: TorsionClass) -> SupportTauTiltingModule:
    """P(𝒯) packaged with its support bookkeeping."""
    t_mod = ext_projectives(cat, tclass)
    ok, killed = is_support_tau_tilting(t_mod)
    if not ok:
        raise InternalConsistencyError(
            "Ext-projectives of a torsion class are not support τ-tilting")
    ids = _decomposed_ids(cat, t_mod)
    cert = {"summands": len(ids), "killed": sorted(killed)}
    return SupportTauTiltingModule(t_mod, ids, killed, cert)


def glue_support_tau_tilting(rec: TriangularRecollement, t_left, t_right, *,
                             require_hypothesis: bool = True
                             ) -> SupportTauTiltingModule:
    """Glue support τ-tilting modules through their induced torsion pairs.

    The result exists when the glued torsion class is functorially
    finite.  Two sufficient hypotheses are tried first: (1) i^! exact
    with i_*i^!(𝒯) ⊆ 𝒯, and (2) i* exact with i_*i^*(ℱ) ⊆ ℱ.  When
    neither verifies, functorial finiteness is decided directly on the
    catalog by constructing approximations; only when that also fails
    does the call refuse (unless ``require_hypothesis`` is switched off,
    in which case the construction proceeds and the postcondition
    Gen P(𝒯) = 𝒯 is still checked honestly).  When both i* and i^! are
    exact the result is the direct image i_*(T′) ⊕ j_!(T″) itself.
    """
    t_left, t_right = _as_module(t_left), _as_module(t_right)
    for t, cat, side in ((t_left, rec.catalog_left, "left"),
                         (t_right, rec.catalog_right, "right")):
        ok, _ = is_support_tau_tilting(t)
        if not ok:
            raise ValidationError(
                f"{side} input is not a support τ-tilting module")
    ta, fa = _induced_pair(rec.catalog_left, t_left)
    tc, fc = _induced_pair(rec.catalog_right, t_right)
    pair = glue_torsion_pair(rec, (ta, fa), (tc, fc))
    cert_shriek = exactness_certificate(rec, "i^!")
    cert_upper = exactness_certificate(rec, "i*")
    cond_t = check_condition(rec, "i_*i^!", pair.torsion.ids)
    cond_f = check_condition(rec, "i_*i*", pair.free_ids)
    route = None
    if cert_shriek.exact and cond_t.holds:
        route = 1
    elif cert_upper.exact and cond_f.holds:
        route = 2
    hypothesis = {
        "route": route,
        "i^! exact": cert_shriek.exact,
        "i* exact": cert_upper.exact,
        "i_*i^!(T)⊆T": cond_t.as_dict(),
        "i_*i*(F)⊆F": cond_f.as_dict(),
    }
    if route is None:
        ff_ok, _, _ = is_functorially_finite(rec.catalog, pair.torsion.ids)
        hypothesis["functorially finite (direct)"] = ff_ok
        if ff_ok:
            route = "direct"
            hypothesis["route"] = route
        elif require_hypothesis:
            raise HypothesisRefused(
                "the glued torsion class could not be verified functorially "
                "finite: the sufficient conditions (i^! exact ∧ i_*i^!(𝒯)⊆𝒯) "
                "and (i* exact ∧ i_*i^*(ℱ)⊆ℱ) fail, and no direct "
                "verification succeeded", report=hypothesis)
    stt = _stt_from_class(rec.catalog, pair.torsion)
    if gen_class(rec.catalog, stt.module).ids != pair.torsion.ids:
        raise VerificationMismatch(
            "Ext-projectives fail to generate the glued torsion class")
    if torsionfree_of(rec.catalog, stt.module) != pair.free_ids:
        raise VerificationMismatch(
            "glued torsionfree class is not realized by the result")
    if cert_shriek.exact and cert_upper.exact:
        pushed, _, _ = direct_sum([apply_functor(rec, "i_*", t_left),
                                   apply_functor(rec, "j_!", t_right)],
                                  algebra=rec.algebra)
        if not is_isomorphic(basic_version(pushed), stt.module):
            raise VerificationMismatch(
                "direct image disagrees with the Ext-projectives of the "
                "glued class although i* and i^! are both exact")
    stt.certificate["hypothesis"] = hypothesis
    return stt


def glue_tau_tilting(rec: TriangularRecollement, t_left: Module,
                     t_right: Module, *,
                     require_hypothesis: bool = True) -> Module:
    """i_*(T′) ⊕ j_!(T″) for τ-tilting inputs, verified τ-tilting.

    Requires i^! and j_! exact and i_*i^!(𝒯) ⊆ 𝒯 for the glued torsion
    class.  Refuses when the hypothesis fails; forcing past the refusal
    still verifies the postconditions, so an invalid gluing surfaces as a
    :class:`VerificationMismatch` rather than a wrong module.
    """
    t_left, t_right = _as_module(t_left), _as_module(t_right)
    if not is_tau_tilting(t_left):
        raise ValidationError("left input is not a τ-tilting module")
    if not is_tau_tilting(t_right):
        raise ValidationError("right input is not a τ-tilting module")
    ta, fa = _induced_pair(rec.catalog_left, t_left)
    tc, fc = _induced_pair(rec.catalog_right, t_right)
    pair = glue_torsion_pair(rec, (ta, fa), (tc, fc))
    cert_shriek = exactness_certificate(rec, "i^!")
    cert_lower = exactness_certificate(rec, "j_!")
    cond = check_condition(rec, "i_*i^!", pair.torsion.ids)
    failed = []
    if not cert_shriek.exact:
        failed.append("i^! exact")
    if not cert_lower.exact:
        failed.append("j_! exact")
    if not cond.holds:
        failed.append("i_*i^!(𝒯)⊆𝒯")
    if failed and require_hypothesis:
        raise HypothesisRefused(
            "τ-tilting gluing hypothesis failed: " + ", ".join(failed),
            report={"failed": failed, "i_*i^!(T)⊆T": cond.as_dict()})
    glued, _, _ = direct_sum([apply_functor(rec, "i_*", t_left),
                              apply_functor(rec, "j_!", t_right)],
                             algebra=rec.algebra)
    if not is_tau_tilting(glued):
        raise VerificationMismatch("direct image is not a τ-tilting module")
    want = (len(rec.left.vertex_labels) + len(rec.right.vertex_labels))
    if num_summands(basic_version(glued)) != want:
        raise VerificationMismatch(
            "summand count differs from the sum of the corner ranks")
    if gen_class(rec.catalog, glued).ids != pair.torsion.ids:
        raise VerificationMismatch(
            "direct image does not generate the glued torsion class")
    return glued


# --------------------------------------------------------------------------
# restriction


def _resolve_lambda_input(rec, arg):
    """A Λ-side input: support τ-tilting module, pair, or id-set tuple.

    Returns (torsion ids, free ids, module or None).
    """
    cat = rec.catalog
    if isinstance(arg, (Module, SupportTauTiltingModule)):
        mod = _as_module(arg)
        ok, _ = is_support_tau_tilting(mod)
        if not ok:
            raise ValidationError("input is not a support τ-tilting module")
        t_ids, f_ids = _induced_pair(cat, mod)
        return t_ids, f_ids, mod
    t_ids, f_ids = _resolve_pair(cat, arg)
    return t_ids, f_ids, None


def restrict_to_A(rec: TriangularRecollement, arg, *,
                  assume_hypothesis: bool = False):
    """Restrict a torsion pair over Λ to one over the left corner.

    The implemented sufficient hypothesis is that i* and i^! are both
    exact; ``assume_hypothesis`` lets the caller assert the weaker
    adjoint-existence hypothesis instead, after which the conclusion is
    still verified and a failure raises :class:`VerificationMismatch`.
    Returns ``(pair, support τ-tilting module)`` over the left corner.
    """
    t_ids, f_ids, mod = _resolve_lambda_input(rec, arg)
    both = (exactness_certificate(rec, "i*").exact
            and exactness_certificate(rec, "i^!").exact)
    if not (both or assume_hypothesis):
        raise HypothesisRefused(
            "restriction to the left corner needs i* and i^! both exact "
            "(or an explicit hypothesis assertion)",
            report={"i* exact": exactness_certificate(rec, "i*").exact,
                    "i^! exact": exactness_certificate(rec, "i^!").exact})
    mismatch = VerificationMismatch if not both else InternalConsistencyError
    cat_a = rec.catalog_left
    ta = image_class(rec, "i*", t_ids)
    fa = image_class(rec, "i^!", f_ids)
    if not is_torsion_pair(cat_a, ta, fa):
        raise mismatch("restricted classes do not form a torsion pair "
                       "over the left corner")
    tclass = TorsionClass(cat_a, ta, verified=True)
    stt = _stt_from_class(cat_a, tclass)
    if gen_class(cat_a, stt.module).ids != ta or \
            torsionfree_of(cat_a, stt.module) != fa:
        raise mismatch("restricted pair is not realized by its "
                       "Ext-projectives")
    if both and mod is not None:
        direct = basic_version(apply_functor(rec, "i*", mod))
        if not is_isomorphic(direct, stt.module):
            raise mismatch("i* of the input does not realize the "
                           "restricted pair")
    return TorsionPair(tclass, fa), stt


def restrict_to_C(rec: TriangularRecollement, arg, strategy: str = "a"):
    """Restrict to the right corner by one of three routes.

    (a) needs j_*j^*(ℱ) ⊆ ℱ and returns the pair (j^*(𝒯), j^*(ℱ));
    (b) needs j_* exact and j_*j^*(𝒯) ⊆ 𝒯 and works from the torsion
    class j^*(𝒯); (c) needs j_! exact and j_!j^*(ℱ) ⊆ ℱ and works from
    the torsionfree class j^*(ℱ).  Routes (b) and (c) also compute the
    two sides of the equivalence "j_*j^*(ℱ) ⊆ ℱ iff the pair of T″ is
    (j^*(𝒯), j^*(ℱ))", which must agree.

    Returns ``(pair or class, support τ-tilting module, flags)``.
    """
    strategy = strategy.lower()
    if strategy not in ("a", "b", "c"):
        raise ValidationError(f"unknown restriction strategy {strategy!r}")
    t_ids, f_ids, mod = _resolve_lambda_input(rec, arg)
    cat_c = rec.catalog_right
    jt = image_class(rec, "j^*", t_ids)
    jf = image_class(rec, "j^*", f_ids)
    if strategy == "a":
        cond = check_condition(rec, "j_*j^*", f_ids)
        if not cond.holds:
            raise HypothesisRefused(
                "restriction (a) needs j_*j^*(ℱ) ⊆ ℱ",
                report={"j_*j^*(F)⊆F": cond.as_dict()})
        if not is_torsion_pair(cat_c, jt, jf):
            raise InternalConsistencyError(
                "restricted classes do not form a torsion pair")
        tclass = TorsionClass(cat_c, jt, verified=True)
        stt = _stt_from_class(cat_c, tclass)
        flags = {"free_condition": True}
        return TorsionPair(tclass, jf), stt, flags

    if strategy == "b":
        cert = exactness_certificate(rec, "j_*")
        cond = check_condition(rec, "j_*j^*", t_ids)
        failed = [name for name, ok in (("j_* exact", cert.exact),
                                        ("j_*j^*(𝒯)⊆𝒯", cond.holds)) if not ok]
        if failed:
            raise HypothesisRefused(
                "restriction (b) hypothesis failed: " + ", ".join(failed),
                report={"failed": failed, "j_*j^*(T)⊆T": cond.as_dict()})
        if not is_torsion_class(cat_c, jt):
            raise InternalConsistencyError(
                "j^*(𝒯) is not a torsion class under hypothesis (b)")
        tclass = TorsionClass(cat_c, jt, verified=True)
        stt = _stt_from_class(cat_c, tclass)
        returned_class = tclass
    else:
        cert = exactness_certificate(rec, "j_!")
        cond = check_condition(rec, "j_!j^*", f_ids)
        failed = [name for name, ok in (("j_! exact", cert.exact),
                                        ("j_!j^*(ℱ)⊆ℱ", cond.holds)) if not ok]
        if failed:
            raise HypothesisRefused(
                "restriction (c) hypothesis failed: " + ", ".join(failed),
                report={"failed": failed, "j_!j^*(F)⊆F": cond.as_dict()})
        up = perp_left(cat_c, jf)
        if not is_torsion_pair(cat_c, up, jf):
            raise InternalConsistencyError(
                "(^⊥(j^*ℱ), j^*ℱ) is not a torsion pair under hypothesis (c)")
        tclass = TorsionClass(cat_c, up, verified=True)
        stt = _stt_from_class(cat_c, tclass)
        returned_class = tclass

    free_condition = check_condition(rec, "j_*j^*", f_ids).holds
    pair_realized = (gen_class(cat_c, stt.module).ids == jt
                     and torsionfree_of(cat_c, stt.module) == jf)
    if free_condition != pair_realized:
        raise InternalConsistencyError(
            "the equivalence between j_*j^*(ℱ) ⊆ ℱ and the pair of T″ "
            f"broke: condition={free_condition}, realized={pair_realized}")
    flags = {"free_condition": free_condition, "pair_realized": pair_realized}
    if pair_realized and is_torsion_pair(cat_c, tclass.ids, jf):
        returned_class = TorsionPair(tclass, jf)
    if (mod is not None and strategy == "b"
            and exactness_certificate(rec, "j_!").exact):
        direct = basic_version(apply_functor(rec, "j^*", mod))
        if not is_isomorphic(direct, stt.module):
            raise InternalConsistencyError(
                "j^* of the input does not realize the restricted class "
                "although j_! and j_* are exact")
        flags["direct_image_realizes"] = True
    return returned_class, stt, flags


# --------------------------------------------------------------------------
# simples


class SimplesReport:
    """Match of the simple Λ-modules against the two corners."""

    def __init__(self, route, matches, counts, failures):
        self.route = route
        self.matches = dict(matches)
        self.counts = tuple(counts)
        self.failures = list(failures)

    @property
    def ok(self) -> bool:
        total, left, right = self.counts
        return not self.failures and total == left + right

    def __repr__(self):
        total, left, right = self.counts
        state = "ok" if self.ok else f"failures={self.failures}"
        return f"SimplesReport({total} = {left} + {right}, {state})"


def simples_check(rec: TriangularRecollement) -> SimplesReport:
    """Verify that every simple Λ-module comes from a corner simple.

    Needs i^! (then the right-corner simples push through j_*) or i*
    (then through j_!) to be exact.
    """
    shriek_exact = exactness_certificate(rec, "i^!").exact
    upper_exact = exactness_certificate(rec, "i*").exact
    if not (shriek_exact or upper_exact):
        raise HypothesisRefused(
            "the simples comparison needs i^! or i* exact",
            report={"i^! exact": shriek_exact, "i* exact": upper_exact})
    route = "j_*" if shriek_exact else "j_!"
    matches = {}
    failures = []
    candidates = []
    for v in rec.left.vertex_labels:
        candidates.append((("i_*", v),
                           apply_functor(rec, "i_*", simple_module(rec.left, v))))
    for v in rec.right.vertex_labels:
        candidates.append(((route, v),
                           apply_functor(rec, route, simple_module(rec.right, v))))
    for origin, m in candidates:
        rad_mod, _ = radical(m)
        if m.dim == 0 or rad_mod.dim != 0 or num_summands(m) != 1:
            failures.append(f"{origin[0]}(S({origin[1]})) is not simple")
    for w in rec.algebra.vertex_labels:
        s = simple_module(rec.algebra, w)
        found = [origin for origin, m in candidates if is_isomorphic(m, s)]
        if len(found) != 1:
            failures.append(f"simple at {w} matched {len(found)} corner simples")
        else:
            matches[w] = found[0]
    counts = (len(rec.algebra.vertex_labels), len(rec.left.vertex_labels),
              len(rec.right.vertex_labels))
    return SimplesReport(route, matches, counts, failures)


# --------------------------------------------------------------------------
# approximation transport


def transport_left_approximation(rec: TriangularRecollement, c: Module,
                                 cls) -> ModuleMap:
    """Turn a left 𝒯-approximation of j_!(C) into a left j^*(𝒯)-approximation.

    Returns j^*(f) ∘ γ_C with f the catalog approximation of j_!(C) and γ
    the unit of (j_!, j^*); the result is verified to be a left
    approximation into the image class.
    """
    if c.algebra is not rec.right:
        raise ValidationError("the module must live over the right corner")
    ids = cls.ids if isinstance(cls, TorsionClass) else frozenset(cls)
    p = rec.algebra.p
    jc = apply_functor(rec, "j_!", c)
    f = left_approximation(rec.catalog, jc, ids)
    t = module_to_triple(rec, jc)
    ny = t.y.dim
    inj = vstack(Matrix.zero(t.x.dim, ny, p), Matrix.identity(ny, p))
    gamma = ModuleMap(c, t.y,
                      t.y.to_adapted * _y_picker(rec, jc, p)
                      * jc.to_adapted * inj)
    out = apply_functor_to_map(rec, "j^*", f).compose(gamma)
    target_ids = image_class(rec, "j^*", ids)
    if any(rec.catalog_right.index_of(part.module) not in target_ids
           for part in decompose(out.target)):
        raise InternalConsistencyError(
            "transported approximation leaves the image class")
    for j in sorted(target_ids):
        z = rec.catalog_right.modules[j]
        want = hom_basis(c, z)
        if not want:
            continue
        through = [g.compose(out) for g in hom_basis(out.target, z)]
        if _span_rank(through, p) < len(want):
            raise InternalConsistencyError(
                "transported map is not a left approximation")
    return out


# --------------------------------------------------------------------------
# sincere wrappers


class SincerityReport:
    """Sincerity bookkeeping around a gluing or restriction."""

    def __init__(self, inputs_sincere, result_sincere, coverage):
        self.inputs_sincere = dict(inputs_sincere)
        self.result_sincere = result_sincere
        self.coverage = dict(coverage)

    @property
    def covered(self) -> bool:
        return all(self.coverage.values())

    @property
    def ok(self) -> bool:
        return (all(self.inputs_sincere.values()) and self.result_sincere
                and self.covered)

    def __repr__(self):
        return (f"SincerityReport(inputs={self.inputs_sincere}, "
                f"result={self.result_sincere}, covered={self.covered})")


class SincereRecollementOps:
    """The gluing/restriction operations with sincerity pre/postconditions.

    Each method refuses when an input torsion class fails sincerity, runs
    the base construction, verifies the result class is sincere, and
    records how the corner witnesses cover the composition factors."""

    def __init__(self, rec: TriangularRecollement):
        self.rec = rec

    def _class_sum(self, cat, ids):
        mods = [cat.modules[i] for i in sorted(ids)]
        total, _, _ = direct_sum(mods, algebra=cat.algebra)
        return total

    def _coverage(self, ta_ids, tc_ids):
        rec = self.rec
        route = ("j_*" if exactness_certificate(rec, "i^!").exact else "j_!")
        pushed = apply_functor(rec, "i_*",
                               self._class_sum(rec.catalog_left, ta_ids))
        carried = apply_functor(rec, route,
                                self._class_sum(rec.catalog_right, tc_ids))
        factors = composition_factors(pushed)
        for v, d in composition_factors(carried).items():
            factors[v] = factors.get(v, 0) + d
        return {v: factors.get(v, 0) > 0 for v in rec.algebra.vertex_labels}

    def _require_sincere(self, cat, ids, what):
        if not is_sincere_class(cat, ids):
            raise HypothesisRefused(f"{what} is not a sincere class",
                                    report={"class": sorted(ids)})

    def glue_support_tau_tilting(self, t_left, t_right, **kw):
        rec = self.rec
        ta, _ = _induced_pair(rec.catalog_left, _as_module(t_left))
        tc, _ = _induced_pair(rec.catalog_right, _as_module(t_right))
        self._require_sincere(rec.catalog_left, ta, "left torsion class")
        self._require_sincere(rec.catalog_right, tc, "right torsion class")
        stt = glue_support_tau_tilting(rec, t_left, t_right, **kw)
        glued = gen_class(rec.catalog, stt.module).ids
        result_sincere = is_sincere_class(rec.catalog, glued)
        report = SincerityReport({"left": True, "right": True},
                                 result_sincere, self._coverage(ta, tc))
        if not report.ok:
            raise InternalConsistencyError(
                "glued torsion class of sincere inputs failed sincerity")
        return stt, report

    def glue_tau_tilting(self, t_left, t_right, **kw):
        rec = self.rec
        ta, _ = _induced_pair(rec.catalog_left, _as_module(t_left))
        tc, _ = _induced_pair(rec.catalog_right, _as_module(t_right))
        self._require_sincere(rec.catalog_left, ta, "left torsion class")
        self._require_sincere(rec.catalog_right, tc, "right torsion class")
        glued = glue_tau_tilting(rec, t_left, t_right, **kw)
        ids = gen_class(rec.catalog, glued).ids
        result_sincere = is_sincere_class(rec.catalog, ids)
        report = SincerityReport({"left": True, "right": True},
                                 result_sincere, self._coverage(ta, tc))
        if not report.ok:
            raise InternalConsistencyError(
                "glued torsion class of sincere inputs failed sincerity")
        return glued, report

    def restrict_to_C(self, arg, strategy: str = "a"):
        rec = self.rec
        t_ids, _, _ = _resolve_lambda_input(rec, arg)
        self._require_sincere(rec.catalog, t_ids, "torsion class")
        result = restrict_to_C(rec, arg, strategy)
        stt = result[1]
        ids = gen_class(rec.catalog_right, stt.module).ids
        result_sincere = is_sincere_class(rec.catalog_right, ids)
        coverage = {v: d > 0 for v, d in zip(
            rec.right.vertex_labels,
            self._class_sum(rec.catalog_right,
                            image_class(rec, "j^*", t_ids)).dim_vector())}
        report = SincerityReport({"input": True}, result_sincere, coverage)
        return result, report

    def restrict_to_A(self, arg, **kw):
        rec = self.rec
        t_ids, _, _ = _resolve_lambda_input(rec, arg)
        self._require_sincere(rec.catalog, t_ids, "torsion class")
        pair, stt = restrict_to_A(rec, arg, **kw)
        result_sincere = is_sincere_class(rec.catalog_left, pair.torsion.ids)
        coverage = {v: d > 0 for v, d in zip(
            rec.left.vertex_labels,
            self._class_sum(rec.catalog_left, pair.torsion.ids).dim_vector())}
        report = SincerityReport({"input": True}, result_sincere, coverage)
        return (pair, stt), report


def sincere_glue_and_restrict(rec: TriangularRecollement) -> SincereRecollementOps:
    """Sincerity-checking wrappers around the gluing/restriction operations."""
    return SincereRecollementOps(rec)
