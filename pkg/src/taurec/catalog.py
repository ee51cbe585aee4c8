"""Knitting the AR quiver of a representation-finite algebra.

Starts from the indecomposable projectives; a node is translated with
``tau_inverse`` once every arrow out of it is accounted for, and each mesh
is verified against the dimension identity before its new module is
admitted.  The result is a catalog of all indecomposables with stable ids
plus the arrow data of the AR quiver.
"""

from taurec.errors import KnittingError
from taurec.homological import (decompose, is_indecomposable, is_isomorphic,
                                ext1_dim, hom_through_injectives, tau,
                                tau_inverse)
from taurec.modules import (hom_basis, injective_module, projective_module,
                            radical)

DEFAULT_MAX_NODES = 512
DEFAULT_MAX_DIM = 64


class IndCatalog:
    """Indecomposable modules of one algebra, with stable integer ids.

    ``tau_table[i]`` is the id of τ(modules[i]), ``None`` when the module
    is projective, or ``-1`` when the translate matches no entry (a
    completeness failure that `verify_catalog` reports).
    """

    def __init__(self, algebra, modules, tau_table=None):
        self.algebra = algebra
        self.modules = list(modules)
        n = len(self.modules)
        self._hom = [[len(hom_basis(self.modules[i], self.modules[j]))
                      for j in range(n)] for i in range(n)]
        if tau_table is None:
            tau_table = []
            for m in self.modules:
                t = tau(m)
                tau_table.append(None if t.dim == 0 else self.index_of(t))
        self.tau_table = list(tau_table)

    def __len__(self):
        return len(self.modules)

    def hom_dim(self, i: int, j: int) -> int:
        return self._hom[i][j]

    def index_of(self, m):
        """Id of the entry isomorphic to ``m``, or -1 if there is none."""
        for i, x in enumerate(self.modules):
            if is_isomorphic(x, m):
                return i
        return -1

    def dim_vectors(self):
        return [m.dim_vector() for m in self.modules]

    @property
    def projective_ids(self):
        return [i for i, t in enumerate(self.tau_table) if t is None]

    @property
    def injective_ids(self):
        return [i for i, m in enumerate(self.modules) if tau_inverse(m).dim == 0]


class ARQuiver:
    """Arrow data over a catalog: ``arrows[(src, tgt)] = multiplicity``."""

    def __init__(self, catalog: IndCatalog, arrows):
        self.catalog = catalog
        self.arrows = dict(arrows)

    def successors(self, i: int):
        return sorted((t, m) for (s, t), m in self.arrows.items() if s == i)

    def predecessors(self, i: int):
        return sorted((s, m) for (s, t), m in self.arrows.items() if t == i)


def knit_ar_quiver(alg, *, max_nodes: int = DEFAULT_MAX_NODES,
                   max_dim: int = DEFAULT_MAX_DIM):
    """Build (ARQuiver, IndCatalog) by knitting from the projectives.

    Raises KnittingError when a mesh fails its dimension identity, when a
    limit is exceeded, or when the process stalls.
    """
    verts = list(alg.vertex_labels)
    projs = [projective_module(alg, v) for v in verts]
    rad_parts = []
    for pv in projs:
        r, _ = radical(pv)
        rad_parts.append([s.module for s in decompose(r)])

    mods = []            # knitting order; position = id
    arrows = {}
    tau_table = []
    inserted = set()     # indices into projs
    proj_node = {}       # projs index -> node id
    translated = set()
    injectives = set()
    tau_inv_node = {}    # node id -> id of its translate

    def add_node(m, tau_of=None):
        if len(mods) >= max_nodes:
            raise KnittingError(
                f"more than {max_nodes} nodes; likely representation-infinite")
        if m.dim > max_dim:
            raise KnittingError(
                f"module of dimension {m.dim} exceeds the cap {max_dim}; "
                "likely representation-infinite")
        mods.append(m)
        tau_table.append(tau_of)
        return len(mods) - 1

    def find_node(m):
        for i, x in enumerate(mods):
            if is_isomorphic(x, m):
                return i
        return None

    def out_arrows_complete(nid):
        # a pending projective whose radical contains this module will
        # add an arrow later
        for pidx in range(len(projs)):
            if pidx in inserted:
                continue
            if any(is_isomorphic(sm, mods[nid]) for sm in rad_parts[pidx]):
                return False
        # mesh arrows out of nid appear when each source of an in-arrow
        # is translated (or recognized injective)
        for (src, tgt) in arrows:
            if tgt == nid and src not in translated and src not in injectives:
                return False
        return True

    progress = True
    while progress:
        progress = False
        for pidx, pv in enumerate(projs):
            if pidx in inserted:
                continue
            sources = [find_node(sm) for sm in rad_parts[pidx]]
            if any(s is None for s in sources):
                continue
            nid = add_node(pv)
            proj_node[pidx] = nid
            for s in sources:
                arrows[s, nid] = arrows.get((s, nid), 0) + 1
            inserted.add(pidx)
            progress = True
        for nid in range(len(mods)):
            if nid in translated or nid in injectives:
                continue
            if tau_inverse(mods[nid]).dim == 0:
                injectives.add(nid)
                progress = True
                continue
            if not out_arrows_complete(nid):
                continue
            z = tau_inverse(mods[nid])
            middles = [(tgt, mlt) for (src, tgt), mlt in arrows.items()
                       if src == nid]
            mesh = sum(mlt * mods[tgt].dim for tgt, mlt in middles)
            if mods[nid].dim + z.dim != mesh:
                raise KnittingError(
                    f"knitting failed: mesh at node {nid} needs middle "
                    f"dimension {mods[nid].dim + z.dim}, arrows give {mesh}")
            zid = add_node(z, tau_of=nid)
            z.label = f"m{zid}"
            tau_inv_node[nid] = zid
            for tgt, mlt in middles:
                arrows[tgt, zid] = arrows.get((tgt, zid), 0) + mlt
            translated.add(nid)
            progress = True

    if len(inserted) < len(projs):
        missing = [verts[i] for i in range(len(projs)) if i not in inserted]
        raise KnittingError(
            f"knitting failed: projectives at {missing} never became "
            "reachable")
    pending = [i for i in range(len(mods))
               if i not in translated and i not in injectives]
    if pending:
        raise KnittingError(
            f"knitting failed: nodes {pending} still waiting on their meshes")

    cat = IndCatalog(alg, mods, tau_table)
    return ARQuiver(cat, arrows), cat


# --------------------------------------------------------------------------
# verification


class CatalogReport:
    """Outcome of `verify_catalog`: named failures with witnesses."""

    def __init__(self):
        self.failures = []

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
            return "CatalogReport(ok)"
        lines = "; ".join(f"{c}: {d}" for c, d in self.failures)
        return f"CatalogReport({lines})"


def verify_catalog(cat: IndCatalog) -> CatalogReport:
    """Re-check every catalog invariant from scratch, reporting witnesses."""
    report = CatalogReport()
    n = len(cat)
    alg = cat.algebra
    for i, m in enumerate(cat.modules):
        if not is_indecomposable(m):
            report.fail("indecomposable", f"entry {i} splits")
    for i in range(n):
        for j in range(i + 1, n):
            if is_isomorphic(cat.modules[i], cat.modules[j]):
                report.fail("pairwise-noniso", f"entries {i} and {j} coincide")
    for v in alg.vertex_labels:
        if cat.index_of(projective_module(alg, v)) < 0:
            report.fail("projectives-present", f"projective at {v} missing")
        if cat.index_of(injective_module(alg, v)) < 0:
            report.fail("injectives-present", f"injective at {v} missing")
    for i, m in enumerate(cat.modules):
        t = tau(m)
        link = cat.tau_table[i] if i < len(cat.tau_table) else None
        if link is None:
            if t.dim != 0:
                report.fail("tau-consistency",
                            f"entry {i} marked projective but has a translate")
        elif link < 0 or link >= n or not is_isomorphic(t, cat.modules[link]):
            report.fail("tau-consistency",
                        f"translate of entry {i} does not match its link")
        elif not is_isomorphic(tau_inverse(cat.modules[link]), m):
            report.fail("tau-consistency",
                        f"inverse translate fails to return to entry {i}")
    for i, m in enumerate(cat.modules):
        tm = tau(m)
        for j, x in enumerate(cat.modules):
            stable = len(hom_basis(x, tm)) - len(hom_through_injectives(x, tm))
            if ext1_dim(m, x) != stable:
                report.fail("ar-formula",
                            f"pair ({i}, {j}): ext {ext1_dim(m, x)} vs "
                            f"stable hom {stable}")
    return report


def load_catalog(alg, modules) -> tuple:
    """Assemble a user-supplied list of modules into a verified catalog.

    Completeness is the caller's claim; everything checkable is re-checked.
    Returns ``(catalog, report)``.
    """
    cat = IndCatalog(alg, modules)
    return cat, verify_catalog(cat)


# --------------------------------------------------------------------------
# export


def export_dot(q: ARQuiver) -> str:
    """The AR quiver as a DOT digraph; τ drawn dashed from each module to
    its translate."""
    lines = ["digraph AR {", "  rankdir=LR;"]
    for i, m in enumerate(q.catalog.modules):
        dims = ",".join(str(d) for d in m.dim_vector())
        lines.append(f'  m{i} [label="m{i} ({dims})"];')
    for (s, t), mlt in sorted(q.arrows.items()):
        suffix = f' [label="{mlt}"]' if mlt > 1 else ""
        lines.append(f"  m{s} -> m{t}{suffix};")
    for i, link in enumerate(q.catalog.tau_table):
        if link is not None and link >= 0:
            lines.append(f"  m{i} -> m{link} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
