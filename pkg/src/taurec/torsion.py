"""Torsion pairs and (support) τ-tilting modules over a catalog.

Every class-level question is answered through Hom-vanishing against the
catalog's precomputed tables, so all tests are exact set computations:
a torsion class is a fixed point of the double perp, and the canonical
sequence of a torsion pair is realized by trace submodules.
"""

from taurec.errors import InternalConsistencyError, ValidationError
from taurec.homological import (_flat, basic_version, decompose, ext1_dim,
                                num_summands, tau)
from taurec.linalg import Matrix, column_space_basis, hstack, vstack
from taurec.modules import (Module, ModuleMap, direct_sum, hom_basis,
                            is_generated_by, is_sincere, view_over_quotient)

__all__ = [
    "TorsionClass", "TorsionPair", "SupportTauTiltingModule",
    "perp_right", "perp_left", "torsion_closure", "is_torsion_class",
    "is_torsion_pair", "gen_class", "cogen_class", "torsionfree_of",
    "ext_projectives", "is_tau_rigid", "is_tau_tilting",
    "is_support_tau_tilting", "enumerate_support_tau_tilting",
    "enumerate_torsion_classes", "left_approximation", "right_approximation",
    "is_functorially_finite", "basic_version", "num_summands",
    "is_sincere_class",
]


# --------------------------------------------------------------------------
# perp calculus on id sets (bitmask tables, cached on the catalog)


def _perp_masks(cat):
    cached = getattr(cat, "_perp_mask_cache", None)
    if cached is not None:
        return cached
    n = len(cat)
    right = []
    left = []
    for i in range(n):
        rm = 0
        lm = 0
        for j in range(n):
            if cat.hom_dim(i, j) == 0:
                rm |= 1 << j
            if cat.hom_dim(j, i) == 0:
                lm |= 1 << j
        right.append(rm)
        left.append(lm)
    cat._perp_mask_cache = (right, left)
    return cat._perp_mask_cache


def _mask(cat, ids):
    m = 0
    for i in ids:
        if not 0 <= i < len(cat):
            raise ValidationError(f"id {i} outside the catalog")
        m |= 1 << i
    return m


def _ids(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _right_perp_mask(cat, mask):
    right, _ = _perp_masks(cat)
    out = (1 << len(cat)) - 1
    i = 0
    while mask:
        if mask & 1:
            out &= right[i]
        mask >>= 1
        i += 1
    return out


def _left_perp_mask(cat, mask):
    _, left = _perp_masks(cat)
    out = (1 << len(cat)) - 1
    i = 0
    while mask:
        if mask & 1:
            out &= left[i]
        mask >>= 1
        i += 1
    return out


def perp_right(cat, ids):
    """{Y : Hom(X, Y) = 0 for every X in ids}."""
    return _ids(_right_perp_mask(cat, _mask(cat, ids)))


def perp_left(cat, ids):
    """{Y : Hom(Y, X) = 0 for every X in ids}."""
    return _ids(_left_perp_mask(cat, _mask(cat, ids)))


# --------------------------------------------------------------------------
# torsion classes and pairs


class TorsionClass:
    """A set of indecomposable ids; ``verified`` means double-perp closed."""

    def __init__(self, catalog, ids, verified=False):
        self.catalog = catalog
        self.ids = frozenset(ids)
        self.verified = verified

    def members(self):
        return [self.catalog.modules[i] for i in sorted(self.ids)]

    def __iter__(self):
        return iter(sorted(self.ids))

    def __len__(self):
        return len(self.ids)

    def __contains__(self, i):
        return i in self.ids

    def __eq__(self, other):
        return (isinstance(other, TorsionClass)
                and self.catalog is other.catalog and self.ids == other.ids)

    def __hash__(self):
        return hash(self.ids)

    def __repr__(self):
        return f"TorsionClass({sorted(self.ids)})"


class TorsionPair:
    """A torsion class with its torsionfree companion (both id sets)."""

    def __init__(self, torsion: TorsionClass, free_ids):
        self.torsion = torsion
        self.free_ids = frozenset(free_ids)

    def __repr__(self):
        return f"TorsionPair({sorted(self.torsion.ids)}, {sorted(self.free_ids)})"


def torsion_closure(cat, ids) -> TorsionClass:
    """The smallest torsion class containing the given ids: ^⊥(ids^⊥)."""
    closed = _left_perp_mask(cat, _right_perp_mask(cat, _mask(cat, ids)))
    return TorsionClass(cat, _ids(closed), verified=True)


def is_torsion_class(cat, ids) -> bool:
    return frozenset(ids) == torsion_closure(cat, ids).ids


def _class_sum(cat, ids) -> Module:
    mods = [cat.modules[i] for i in sorted(ids)]
    total, _, _ = direct_sum(mods, algebra=cat.algebra)
    return total


def is_torsion_pair(cat, t_ids, f_ids) -> bool:
    """Both perp identities plus the canonical sequence on every entry."""
    t_ids = frozenset(t_ids)
    f_ids = frozenset(f_ids)
    if perp_right(cat, t_ids) != f_ids or perp_left(cat, f_ids) != t_ids:
        return False
    gen = _class_sum(cat, t_ids)
    for b in cat.modules:
        cols = _trace_cols(gen, b)
        sub, _ = b.submodule_on(cols)
        quot, _ = b.quotient_by(cols)
        for part in decompose(sub):
            if cat.index_of(part.module) not in t_ids:
                return False
        for part in decompose(quot):
            if cat.index_of(part.module) not in f_ids:
                return False
    return True


def _trace_cols(t: Module, m: Module):
    maps = hom_basis(t, m)
    if not maps:
        return Matrix.zero(m.dim, 0, m.algebra.p)
    return column_space_basis(hstack(*[f.matrix for f in maps]))


def gen_class(cat, t: Module) -> TorsionClass:
    """Catalog entries generated by ``t`` (trace equals the whole module)."""
    ids = {i for i, x in enumerate(cat.modules) if is_generated_by(t, x)}
    return TorsionClass(cat, ids, verified=is_torsion_class(cat, ids))


def cogen_class(cat, t: Module):
    """Catalog entries that embed into a power of ``t``."""
    out = set()
    for i, x in enumerate(cat.modules):
        maps = hom_basis(x, t)
        if x.dim == 0:
            out.add(i)
            continue
        if not maps:
            continue
        stacked = vstack(*[f.matrix for f in maps])
        if stacked.rank() == x.dim:
            out.add(i)
    return frozenset(out)


def torsionfree_of(cat, t: Module):
    """𝓕(t) = {X : Hom(t, X) = 0}, computed through the summands of t."""
    ids = {cat.index_of(part.module) for part in decompose(t)}
    if -1 in ids:
        raise ValidationError("module has a summand outside the catalog")
    return perp_right(cat, ids)


def ext_projectives(cat, tclass: TorsionClass) -> Module:
    """P(𝒯): one copy of each Ext-projective indecomposable in 𝒯."""
    if not tclass.verified and not is_torsion_class(cat, tclass.ids):
        raise ValidationError("Ext-projectives are only defined over a "
                              "verified torsion class")
    keep = []
    for i in sorted(tclass.ids):
        if all(ext1_dim(cat.modules[i], cat.modules[j]) == 0
               for j in tclass.ids):
            keep.append(cat.modules[i])
    total, _, _ = direct_sum(keep, algebra=cat.algebra)
    return total


# --------------------------------------------------------------------------
# τ-rigidity and (support) τ-tilting


def is_tau_rigid(t: Module) -> bool:
    return not hom_basis(t, tau(t))


def is_tau_tilting(t: Module) -> bool:
    """τ-rigid with as many summand iso-classes as the algebra has vertices."""
    if not is_tau_rigid(t):
        return False
    return num_summands(basic_version(t)) == len(t.algebra.vertex_labels)


def _support_complement(t: Module):
    return frozenset(v for v, d in zip(t.algebra.vertex_labels, t.dim_vector())
                     if d == 0)


def is_support_tau_tilting(t: Module):
    """Decide by the quotient-algebra definition, cross-checked against the
    τ-rigidity count over the ambient algebra.

    Returns ``(flag, support complement E)``.
    """
    flag, killed, _ = _support_tau_certificate(t)
    return flag, killed


def _support_tau_certificate(t: Module):
    alg = t.algebra
    killed = _support_complement(t)
    classes = num_summands(basic_version(t)) if t.dim else 0
    by_count = is_tau_rigid(t) and classes == len(alg.vertex_labels) - len(killed)
    if t.dim == 0:
        # the zero module, supported nowhere: τ-tilting over the zero quotient
        if not by_count:
            raise InternalConsistencyError(
                "the zero module failed the counting characterization")
        return True, killed, {"summands": 0, "killed": sorted(killed)}
    viewed = view_over_quotient(t, killed)
    by_definition = is_tau_tilting(viewed)
    if by_definition != by_count:
        raise InternalConsistencyError(
            "support-τ-tilting paths disagree: quotient-algebra test says "
            f"{by_definition}, τ-rigidity count says {by_count}")
    cert = {"summands": classes, "killed": sorted(killed),
            "tau_tilting_over_quotient": by_definition}
    return by_definition, killed, cert


class SupportTauTiltingModule:
    """A basic support τ-tilting module with its support bookkeeping."""

    def __init__(self, module: Module, ids, support_complement, certificate):
        self.module = module
        self.ids = tuple(sorted(ids))
        self.support_complement = frozenset(support_complement)
        self.certificate = dict(certificate)

    def __repr__(self):
        killed = ",".join(sorted(self.support_complement)) or "-"
        return f"SupportTauTilting(ids={list(self.ids)}, killed={killed})"


def _rigid_masks(cat):
    """mask[i] = ids j with Hom(M_i, τM_j) = 0 = Hom(M_j, τM_i)."""
    cached = getattr(cat, "_rigid_mask_cache", None)
    if cached is not None:
        return cached
    n = len(cat)

    def hom_to_tau(i, j):
        link = cat.tau_table[j]
        if link is None:
            return 0
        if link < 0:
            return len(hom_basis(cat.modules[i], tau(cat.modules[j])))
        return cat.hom_dim(i, link)

    masks = []
    for i in range(n):
        m = 0
        for j in range(n):
            if hom_to_tau(i, j) == 0 and hom_to_tau(j, i) == 0:
                m |= 1 << j
        masks.append(m)
    cat._rigid_mask_cache = masks
    return masks


def _support_mask(cat):
    out = []
    for m in cat.modules:
        mask = 0
        for k, d in enumerate(m.dim_vector()):
            if d:
                mask |= 1 << k
        out.append(mask)
    return out


def _viewed_over(cat, i: int, killed):
    """Catalog entry ``i`` as a module over the quotient killing ``killed``."""
    cache = getattr(cat, "_viewed_cache", None)
    if cache is None:
        cache = cat._viewed_cache = {}
    key = (i, killed)
    if key not in cache:
        cache[key] = view_over_quotient(cat.modules[i], sorted(killed))
    return cache[key]


def _viewed_tau(cat, i: int, killed):
    cache = getattr(cat, "_viewed_tau_cache", None)
    if cache is None:
        cache = cat._viewed_tau_cache = {}
    key = (i, killed)
    if key not in cache:
        cache[key] = tau(_viewed_over(cat, i, killed))
    return cache[key]


def enumerate_support_tau_tilting(cat):
    """All basic support τ-tilting modules, smallest first.

    Subset scan against the pairwise rigidity table with the support-count
    rule; every survivor is re-checked summand by summand through the
    definitional quotient path (τ over the quotient algebra), and the two
    answers must agree.
    """
    n = len(cat)
    verts = list(cat.algebra.vertex_labels)
    rigid = _rigid_masks(cat)
    supports = _support_mask(cat)
    found = []
    for mask in range(1 << n):
        ok = True
        support = 0
        size = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                if mask & ~rigid[i]:
                    ok = False
                    break
                support |= supports[i]
                size += 1
            m >>= 1
            i += 1
        if not ok or size != bin(support).count("1"):
            continue
        ids = sorted(_ids(mask))
        killed = frozenset(v for k, v in enumerate(verts)
                           if not support & (1 << k))
        if ids:
            viewed = [_viewed_over(cat, i, killed) for i in ids]
            taus = [_viewed_tau(cat, i, killed) for i in ids]
            by_definition = all(
                not hom_basis(x, t) for x in viewed for t in taus if t.dim)
            if not by_definition:
                raise InternalConsistencyError(
                    "τ-rigidity over the ambient algebra accepted "
                    f"{ids} but the quotient-algebra definition rejects it")
        total = _class_sum(cat, ids)
        cert = {"summands": size, "killed": sorted(killed),
                "tau_tilting_over_quotient": True}
        found.append(SupportTauTiltingModule(total, ids, killed, cert))
    found.sort(key=lambda s: (len(s.ids), s.ids))
    return found


def enumerate_torsion_classes(cat):
    """All double-perp fixed points, smallest first."""
    n = len(cat)
    out = []
    for mask in range(1 << n):
        closed = _left_perp_mask(cat, _right_perp_mask(cat, mask))
        if closed == mask:
            out.append(TorsionClass(cat, _ids(mask), verified=True))
    out.sort(key=lambda t: (len(t.ids), sorted(t.ids)))
    return out


# --------------------------------------------------------------------------
# approximations


def left_approximation(cat, b: Module, ids) -> ModuleMap:
    """The canonical left approximation B → ⊕ X^{dim Hom(B, X)}."""
    pieces = []
    blocks = []
    for i in sorted(frozenset(ids)):
        x = cat.modules[i]
        for f in hom_basis(b, x):
            pieces.append(x)
            blocks.append(f.matrix)
    target, _, _ = direct_sum(pieces, algebra=cat.algebra)
    raw = vstack(*blocks) if blocks else Matrix.zero(0, b.dim, cat.algebra.p)
    approx = ModuleMap(b, target, target.to_adapted * raw)
    _assert_left_approximation(cat, approx, ids)
    return approx


def _assert_left_approximation(cat, approx: ModuleMap, ids):
    b = approx.source
    for i in sorted(frozenset(ids)):
        x = cat.modules[i]
        want = hom_basis(b, x)
        if not want:
            continue
        through = [g.compose(approx) for g in hom_basis(approx.target, x)]
        if _span_rank(through, x.algebra.p) < len(want):
            raise InternalConsistencyError(
                "canonical map is not a left approximation")


def right_approximation(cat, b: Module, ids) -> ModuleMap:
    """The canonical right approximation ⊕ X^{dim Hom(X, B)} → B."""
    pieces = []
    blocks = []
    for i in sorted(frozenset(ids)):
        x = cat.modules[i]
        for f in hom_basis(x, b):
            pieces.append(x)
            blocks.append(f.matrix)
    source, _, _ = direct_sum(pieces, algebra=cat.algebra)
    raw = hstack(*blocks) if blocks else Matrix.zero(b.dim, 0, cat.algebra.p)
    approx = ModuleMap(source, b, raw * source.from_adapted)
    for i in sorted(frozenset(ids)):
        x = cat.modules[i]
        want = hom_basis(x, b)
        if not want:
            continue
        through = [approx.compose(g) for g in hom_basis(x, source)]
        if _span_rank(through, x.algebra.p) < len(want):
            raise InternalConsistencyError(
                "canonical map is not a right approximation")
    return approx


def _span_rank(maps, p):
    if not maps:
        return 0
    return Matrix.from_cols([_flat(f.matrix) for f in maps], p).rank()


def is_functorially_finite(cat, ids):
    """Construct left and right approximations of every catalog entry.

    Returns ``(ok, left, right)`` with the approximations keyed by id.
    """
    left = {}
    right = {}
    for i, b in enumerate(cat.modules):
        left[i] = left_approximation(cat, b, ids)
        right[i] = right_approximation(cat, b, ids)
    return True, left, right


# --------------------------------------------------------------------------
# sincerity


def is_sincere_class(cat, ids) -> bool:
    """Does the class contain a sincere module?  At catalog scale this is
    sincerity of the direct sum of all members."""
    return is_sincere(_class_sum(cat, ids))
