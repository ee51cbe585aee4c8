"""Quivers with relations, and their compilation to structure-constant algebras.

Conventions fixed here once and used everywhere:

* A path stores its arrows in *travel order* (the first arrow traversed
  first).  The product ``q*p`` in written expressions means "p then q"
  (function order), so the composite of travel-order paths ``p`` then ``q``
  is labeled ``"q*p"``.
* The algebra product ``x · y`` of two path classes is "y then x"; it is
  nonzero only when ``target(y) == source(x)``.  Consequently a left module
  action satisfies ``act(x·y) = act(x) ∘ act(y)``.
"""

from __future__ import annotations

from collections import namedtuple
from fractions import Fraction

from taurec.errors import CompileError, DefinitionError
from taurec.linalg import Matrix, rref

Arrow = namedtuple("Arrow", ["label", "source", "target"])

#: One relation term: (coefficient, arrows in travel order).
RelationTerm = namedtuple("RelationTerm", ["coeff", "arrows"])


class QuiverPresentation:
    """A finite quiver with admissible relations.

    Parameters
    ----------
    vertices:
        Sequence of distinct vertex labels (strings).
    arrows:
        Sequence of :class:`Arrow` (label, source, target); labels distinct
        from each other and from vertex labels.
    relations:
        Each relation is a sequence of ``(coeff, arrows)`` pairs with arrows
        in travel order.  All terms of one relation must be parallel paths
        (same source and target) of length >= 2.
    p:
        Field tag: 0 for the rationals, a prime for F_p.
    """

    def __init__(self, vertices, arrows, relations=(), p: int = 0, name: str = ""):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple(Arrow(str(a[0]), str(a[1]), str(a[2])) for a in arrows)
        self.p = p
        self.name = name
        if len(set(self.vertices)) != len(self.vertices):
            raise DefinitionError("duplicate vertex labels")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise DefinitionError("duplicate arrow labels")
        if set(labels) & set(self.vertices):
            raise DefinitionError("arrow labels clash with vertex labels")
        vset = set(self.vertices)
        self._arrow_map = {}
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise DefinitionError(f"arrow {a.label}: unknown endpoint")
            self._arrow_map[a.label] = a
        self.relations = tuple(self._normalize_relation(r) for r in relations)
        self.relations = tuple(r for r in self.relations if r)

    def _normalize_relation(self, relation):
        combined: dict[tuple, Fraction] = {}
        endpoints = None
        for coeff, arrow_labels in relation:
            arrow_labels = tuple(arrow_labels)
            if len(arrow_labels) < 2:
                raise DefinitionError("relation terms must be paths of length >= 2")
            src, tgt = self._path_endpoints(arrow_labels)
            if endpoints is None:
                endpoints = (src, tgt)
            elif endpoints != (src, tgt):
                raise DefinitionError(
                    f"relation terms are not parallel: {endpoints} vs {(src, tgt)}"
                )
            combined[arrow_labels] = combined.get(arrow_labels, Fraction(0)) + Fraction(coeff)
        terms = tuple(
            RelationTerm(c, a) for a, c in sorted(combined.items()) if c != 0
        )
        return terms

    def _path_endpoints(self, arrow_labels):
        """Source and target of a travel-order arrow sequence; checks composability."""
        here = None
        src = None
        for label in arrow_labels:
            arrow = self._arrow_map.get(label)
            if arrow is None:
                raise DefinitionError(f"unknown arrow {label!r} in relation")
            if here is None:
                src = arrow.source
            elif arrow.source != here:
                raise DefinitionError(
                    f"non-composable product: {label!r} does not start where the previous arrow ends"
                )
            here = arrow.target
        return src, here

    def arrow(self, label: str) -> Arrow:
        return self._arrow_map[label]


Path = namedtuple("Path", ["source", "target", "arrows"])


def path_label(path: Path) -> str:
    if not path.arrows:
        return f"e_{path.source}"
    return "*".join(reversed(path.arrows))


def compile_quiver_algebra(q: QuiverPresentation, length_cap: int = 64,
                           max_paths: int = 8192):
    """Compile a quiver presentation to a finite-dimensional algebra.

    Enumerates paths by length, spans the two-sided ideal generated by the
    relations, and detects stabilization: the smallest length L such that
    every path of length >= L lies in the ideal.  Failing to stabilize below
    ``length_cap`` (or exceeding ``max_paths`` enumerated paths) raises
    :class:`CompileError` — the quotient is then likely infinite-dimensional.

    Returns an :class:`taurec.algebra.FdAlgebra` whose basis is the surviving
    path classes and whose vertex idempotents are the trivial paths.
    """
    from taurec.algebra import FdAlgebra  # local import to avoid a cycle

    arrows_by_source: dict[str, list[Arrow]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        arrows_by_source[a.source].append(a)

    homogeneous = all(
        len({len(t.arrows) for t in rel}) == 1 for rel in q.relations
    )

    # --- enumerate paths by length -----------------------------------
    paths: list[Path] = []
    by_length: list[list[int]] = []
    index_of: dict[tuple, int] = {}

    def add_path(p: Path) -> int:
        idx = len(paths)
        paths.append(p)
        index_of[(p.source, p.arrows)] = idx
        return idx

    by_length.append([add_path(Path(v, v, ())) for v in q.vertices])
    stabilized_at = None

    length = 0
    while True:
        frontier = by_length[length]
        next_level = []
        for idx in frontier:
            p = paths[idx]
            for a in arrows_by_source[p.target]:
                next_level.append(add_path(Path(p.source, a.target, p.arrows + (a.label,))))
        if len(paths) > max_paths:
            raise CompileError(
                f"more than {max_paths} paths enumerated; quotient looks infinite-dimensional"
            )
        if not next_level:
            stabilized_at = length + 1  # ran out of paths: finite for free
            break
        by_length.append(next_level)
        length += 1
        if homogeneous and q.relations:
            if _level_contained_in_ideal(q, paths, by_length[length]):
                stabilized_at = length
                break
        if length >= length_cap:
            raise CompileError(
                f"path classes do not stabilize below length {length_cap}; "
                "the algebra is likely infinite-dimensional (raise the cap to insist)"
            )

    # --- ideal span and surviving basis ------------------------------
    blocks: dict[tuple, list[int]] = {}
    for i, p in enumerate(paths):
        blocks.setdefault((p.source, p.target), []).append(i)
    # Column order: longer paths first so pivots eliminate the longest paths.
    for key in blocks:
        blocks[key].sort(key=lambda i: (-len(paths[i].arrows), paths[i].arrows))

    ideal_vectors = _ideal_vectors(q, paths, index_of, blocks)

    survivors: list[int] = []
    reduction: dict[int, list[tuple[int, Fraction]]] = {}
    for key, cols in blocks.items():
        vectors = ideal_vectors.get(key, [])
        if not vectors:
            survivors.extend(cols)
            continue
        mat = Matrix.from_rows(vectors, q.p)
        red, pivots = rref(mat)
        pivot_set = set(pivots)
        nonpivot = [j for j in range(len(cols)) if j not in pivot_set]
        for j in nonpivot:
            survivors.append(cols[j])
        for row, pc in enumerate(pivots):
            expansion = []
            for j in nonpivot:
                c = red[row, j]
                if c != 0:
                    expansion.append((cols[j], -c))
            reduction[cols[pc]] = expansion

    survivors.sort(key=lambda i: (len(paths[i].arrows), paths[i].arrows, paths[i].source))
    basis_pos = {idx: pos for pos, idx in enumerate(survivors)}
    n = len(survivors)

    def class_vector(path_idx: int):
        """Coordinates of a path class in the surviving basis."""
        vec = [Fraction(0)] * n
        if path_idx in basis_pos:
            vec[basis_pos[path_idx]] = Fraction(1)
        elif path_idx in reduction:
            for tgt, coeff in reduction[path_idx]:
                vec[basis_pos[tgt]] += coeff
        return vec

    # --- structure constants -----------------------------------------
    mult = [[None] * n for _ in range(n)]
    zero = [Fraction(0)] * n
    for i, pi in enumerate(survivors):
        x = paths[pi]
        for j, pj in enumerate(survivors):
            y = paths[pj]  # product x·y means "y then x"
            if y.target != x.source:
                mult[i][j] = list(zero)
                continue
            arrows = y.arrows + x.arrows
            if len(arrows) >= stabilized_at:
                mult[i][j] = list(zero)
                continue
            idx = index_of.get((y.source, arrows))
            if idx is None:
                mult[i][j] = list(zero)
            else:
                mult[i][j] = class_vector(idx)

    labels = [path_label(paths[i]) for i in survivors]
    meta = {
        path_label(paths[i]): {
            "source": paths[i].source,
            "target": paths[i].target,
            "arrows": paths[i].arrows,
        }
        for i in survivors
    }
    idempotents = []
    for v in q.vertices:
        vec = [Fraction(0)] * n
        vec[basis_pos[index_of[(v, ())]]] = Fraction(1)
        idempotents.append(vec)

    return FdAlgebra(
        labels, mult, idempotents, list(q.vertices), p=q.p,
        basis_meta=meta, name=q.name,
    )


def _level_contained_in_ideal(q, paths, level_indices) -> bool:
    """Does every path of the newest length lie in the span of the relations' multiples?

    Only used for homogeneous relations, where the relation ideal is graded
    by path length, so its degree-L component is spanned by products
    pre · relation · post of total length exactly L.  When every length-L
    path is in that span, every longer path follows (it extends one of
    these), and the enumeration can stop.
    """
    degree = len(paths[level_indices[0]].arrows)
    blocks: dict[tuple, list[int]] = {}
    for i in level_indices:
        p = paths[i]
        blocks.setdefault((p.source, p.target), []).append(i)

    by_block_vectors: dict[tuple, list[list[Fraction]]] = {}
    ends_at: dict[str, list[int]] = {}
    starts_at: dict[str, list[int]] = {}
    for i, p in enumerate(paths):
        ends_at.setdefault(p.target, []).append(i)
        starts_at.setdefault(p.source, []).append(i)

    pos_in_block = {
        key: {i: j for j, i in enumerate(idxs)} for key, idxs in blocks.items()
    }
    index_of = {(p.source, p.arrows): i for i, p in enumerate(paths)}

    for rel in q.relations:
        rel_len = len(rel[0].arrows)
        rel_src, rel_tgt = q._path_endpoints(rel[0].arrows)
        for pre in ends_at.get(rel_src, []):
            pre_p = paths[pre]
            rest = degree - rel_len - len(pre_p.arrows)
            if rest < 0:
                continue
            for post in starts_at.get(rel_tgt, []):
                post_p = paths[post]
                if len(post_p.arrows) != rest:
                    continue
                key = (pre_p.source, post_p.target)
                vec = [Fraction(0)] * len(blocks[key])
                for term in rel:
                    arrows = pre_p.arrows + term.arrows + post_p.arrows
                    idx = index_of[(pre_p.source, arrows)]
                    vec[pos_in_block[key][idx]] += term.coeff
                by_block_vectors.setdefault(key, []).append(vec)

    for key, idxs in blocks.items():
        vectors = by_block_vectors.get(key)
        if not vectors or Matrix.from_rows(vectors, q.p).rank() < len(idxs):
            return False
    return True


def _ideal_vectors(q, paths, index_of, blocks):
    """All two-sided relation multiples, as row vectors per (source, target) block.

    A product is included only when every one of its terms is an enumerated
    path (terms beyond the enumeration horizon would belong to classes that
    are zero anyway once the algebra stabilizes).
    """
    ends_at: dict[str, list[int]] = {}
    starts_at: dict[str, list[int]] = {}
    for i, p in enumerate(paths):
        ends_at.setdefault(p.target, []).append(i)
        starts_at.setdefault(p.source, []).append(i)
    pos_in_block = {
        key: {i: j for j, i in enumerate(idxs)} for key, idxs in blocks.items()
    }
    out: dict[tuple, list[list[Fraction]]] = {}
    for rel in q.relations:
        rel_src, rel_tgt = q._path_endpoints(rel[0].arrows)
        for pre in ends_at.get(rel_src, []):
            pre_p = paths[pre]
            for post in starts_at.get(rel_tgt, []):
                post_p = paths[post]
                key = (pre_p.source, post_p.target)
                if key not in blocks:
                    continue
                vec = [Fraction(0)] * len(blocks[key])
                ok = True
                for term in rel:
                    arrows = pre_p.arrows + term.arrows + post_p.arrows
                    idx = index_of.get((pre_p.source, arrows))
                    if idx is None:
                        ok = False
                        break
                    vec[pos_in_block[key][idx]] += term.coeff
                if ok and any(c != 0 for c in vec):
                    out.setdefault(key, []).append(vec)
    return out
